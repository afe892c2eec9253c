//! Abstract descent engine for unitriangular decomposition data along a
//! normal inclusion with cyclic quotient.
//!
//! Inputs are finite index sets of ordinary and Brauer labels for the big
//! group, a unitriangular decomposition matrix between them, the action
//! of the character group `A` of the cyclic quotient, and the fibers of
//! restriction down to the small group together with its decomposition
//! matrix on abstract tokens. Under the fiber-size hypothesis (H) the
//! engine constructs the induced injection Θ on the small group's Brauer
//! tokens and the order that makes its decomposition matrix
//! unitriangular, and re-checks every property it is supposed to have.
//!
//! Character sets at the small-group level are abstract tokens supplied
//! as input, never synthesized: this is a certified algorithm, not a
//! character-theory engine.

// relation matrices are scanned by index pairs throughout
#![allow(clippy::needless_range_loop)]

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{ell_part, ell_prime_part};
use crate::error::{Error, Result};

/// Rows, columns, matrix, column order and the unitriangular injection
/// for the big group.
#[derive(Debug, Clone)]
pub struct DecompositionData {
    pub irr: Vec<String>,
    pub ibr: Vec<String>,
    /// `d[row][column]`.
    pub d: Vec<Vec<u64>>,
    /// Reflexive-transitive `leq[i][j]` ⟺ column `i` ≤ column `j`.
    pub leq: Vec<Vec<bool>>,
    /// Column index → row index.
    pub theta: Vec<usize>,
}

/// Clifford data: cyclic action upstairs, restriction fibers downstairs.
#[derive(Debug, Clone)]
pub struct CliffordContext {
    pub ell: u64,
    pub a_order: u64,
    /// Generator of the cyclic `A`-action on rows / columns.
    pub a_on_irr: Vec<usize>,
    pub a_on_ibr: Vec<usize>,
    pub g_irr: Vec<String>,
    pub g_ibr: Vec<String>,
    /// Row / column index → constituent tokens downstairs.
    pub fibers_irr: Vec<Vec<usize>>,
    pub fibers_ibr: Vec<Vec<usize>>,
    /// Decomposition matrix on the small group's tokens.
    pub d_g: Vec<Vec<u64>>,
    /// Generator of the conjugation action of the big group downstairs.
    pub gtilde_on_g_irr: Vec<usize>,
    pub gtilde_on_g_ibr: Vec<usize>,
}

/// An additional action downstairs, for equivariance checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtraAction {
    pub on_g_irr: Vec<usize>,
    pub on_g_ibr: Vec<usize>,
}

/// Pass/fail with the individual violations spelled out.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn from_failures(failures: Vec<String>) -> Self {
        CheckReport {
            pass: failures.is_empty(),
            failures,
        }
    }
}

/// Output of [`build_theta_g`].
#[derive(Debug, Clone, Serialize)]
pub struct TransferOutcome {
    /// Minimal orbit representatives upstairs (column indices).
    pub reps: Vec<usize>,
    /// Token index in `g_ibr` → token index in `g_irr`.
    pub theta_g: Vec<usize>,
    /// The induced order on the small group's Brauer tokens.
    pub leq_g: Vec<Vec<bool>>,
    pub unitriangular: CheckReport,
    pub gtilde_equivariant: CheckReport,
}

fn is_permutation(perm: &[usize], len: usize) -> bool {
    perm.len() == len && {
        let mut seen = vec![false; len];
        perm.iter()
            .all(|&i| i < len && !std::mem::replace(&mut seen[i], true))
    }
}

fn is_identity(perm: &[usize]) -> bool {
    perm.iter().enumerate().all(|(i, &j)| i == j)
}

fn perm_pow(perm: &[usize], e: u64) -> Vec<usize> {
    let mut out: Vec<usize> = (0..perm.len()).collect();
    for _ in 0..e {
        out = out.iter().map(|&i| perm[i]).collect();
    }
    out
}

fn perm_orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut orbits = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut cur = perm[start];
        while cur != start {
            seen[cur] = true;
            orbit.push(cur);
            cur = perm[cur];
        }
        orbits.push(orbit);
    }
    orbits
}

impl DecompositionData {
    /// Both unitriangularity conditions: `d[θ(η)][η] = 1` and
    /// `d[θ(η)][η'] = 0` unless `η' ≤ η`.
    pub fn check_unitriangular(&self) -> CheckReport {
        let mut failures = Vec::new();
        for (col, &row) in self.theta.iter().enumerate() {
            if self.d[row][col] != 1 {
                failures.push(format!(
                    "d[{}][{}] = {} instead of 1",
                    self.irr[row], self.ibr[col], self.d[row][col]
                ));
            }
            for other in 0..self.ibr.len() {
                if self.d[row][other] != 0 && !self.leq[other][col] {
                    failures.push(format!(
                        "d[{}][{}] = {} but {} is not below {}",
                        self.irr[row],
                        self.ibr[other],
                        self.d[row][other],
                        self.ibr[other],
                        self.ibr[col]
                    ));
                }
            }
        }
        CheckReport::from_failures(failures)
    }

    /// Deterministic linear refinement of the column order: repeatedly
    /// take the smallest-index column all of whose strict predecessors
    /// are placed. Returns `rank[col]`.
    pub fn refinement_ranks(&self) -> Vec<usize> {
        let m = self.ibr.len();
        let mut rank = vec![usize::MAX; m];
        let mut placed = vec![false; m];
        for next_rank in 0..m {
            let pick = (0..m)
                .find(|&c| !placed[c] && (0..m).all(|o| o == c || !self.leq[o][c] || placed[o]))
                .expect("a partial order always has a minimal element");
            rank[pick] = next_rank;
            placed[pick] = true;
        }
        rank
    }
}

impl CliffordContext {
    /// Structural consistency of the Clifford data against the
    /// decomposition data.
    pub fn validate(&self, data: &DecompositionData) -> Result<()> {
        let err = |msg: String| Err(Error::InconsistentData(msg));
        if !is_permutation(&self.a_on_irr, data.irr.len())
            || !is_permutation(&self.a_on_ibr, data.ibr.len())
            || !is_permutation(&self.gtilde_on_g_irr, self.g_irr.len())
            || !is_permutation(&self.gtilde_on_g_ibr, self.g_ibr.len())
        {
            return err("an action is not a permutation of the right size".into());
        }
        if self.a_order == 0 {
            return err("a_order must be positive".into());
        }
        if !is_identity(&perm_pow(&self.a_on_irr, self.a_order))
            || !is_identity(&perm_pow(&self.a_on_ibr, self.a_order))
        {
            return err(format!(
                "the A generator does not have order dividing {}",
                self.a_order
            ));
        }
        // A_ell acts trivially on the Brauer side
        if !is_identity(&perm_pow(
            &self.a_on_ibr,
            ell_prime_part(self.a_order, self.ell),
        )) {
            return err("A_ell does not act trivially on the columns".into());
        }
        // d is A-equivariant
        for row in 0..data.irr.len() {
            for col in 0..data.ibr.len() {
                if data.d[row][col] != data.d[self.a_on_irr[row]][self.a_on_ibr[col]] {
                    return err(format!("d is not A-equivariant at ({row}, {col})"));
                }
            }
        }
        if self.fibers_irr.len() != data.irr.len() || self.fibers_ibr.len() != data.ibr.len() {
            return err("fiber tables do not match the index sets".into());
        }
        let in_range = |fibers: &[Vec<usize>], n: usize| fibers.iter().flatten().all(|&t| t < n);
        if !in_range(&self.fibers_irr, self.g_irr.len())
            || !in_range(&self.fibers_ibr, self.g_ibr.len())
        {
            return err("a fiber references an unknown token".into());
        }
        if self.d_g.len() != self.g_irr.len()
            || self.d_g.iter().any(|r| r.len() != self.g_ibr.len())
        {
            return err("d_g has the wrong shape".into());
        }
        // fibers along one A-orbit coincide (they are the restriction fibers)
        for (col, fiber) in self.fibers_ibr.iter().enumerate() {
            let mut image = self.a_on_ibr[col];
            while image != col {
                if sorted(fiber) != sorted(&self.fibers_ibr[image]) {
                    return err(format!(
                        "columns {col} and {image} are A-conjugate with different fibers"
                    ));
                }
                image = self.a_on_ibr[image];
            }
        }
        for (row, fiber) in self.fibers_irr.iter().enumerate() {
            let mut image = self.a_on_irr[row];
            while image != row {
                if sorted(fiber) != sorted(&self.fibers_irr[image]) {
                    return err(format!(
                        "rows {row} and {image} are A-conjugate with different fibers"
                    ));
                }
                image = self.a_on_irr[image];
            }
        }
        // d_g commutes with the conjugation action downstairs
        for x in 0..self.g_irr.len() {
            for y in 0..self.g_ibr.len() {
                if self.d_g[x][y] != self.d_g[self.gtilde_on_g_irr[x]][self.gtilde_on_g_ibr[y]] {
                    return err(format!("d_g is not conjugation-equivariant at ({x}, {y})"));
                }
            }
        }
        Ok(())
    }

    /// `A_{ell'}`-orbits on columns: orbits of the generator raised to
    /// the `ell`-part of the order of `A`.
    fn a_ell_prime_orbits(&self) -> Vec<Vec<usize>> {
        perm_orbits(&perm_pow(&self.a_on_ibr, ell_part(self.a_order, self.ell)))
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// One column per `A_{ell'}`-orbit: the minimal one in the deterministic
/// linear refinement of the column order.
pub fn minimal_orbit_reps(data: &DecompositionData, ctx: &CliffordContext) -> Result<Vec<usize>> {
    ctx.validate(data)?;
    let rank = data.refinement_ranks();
    let mut reps: Vec<usize> = ctx
        .a_ell_prime_orbits()
        .into_iter()
        .map(|orbit| orbit.into_iter().min_by_key(|&c| rank[c]).unwrap())
        .collect();
    reps.sort_unstable();
    Ok(reps)
}

/// Construct Θ for the small group and the order that makes its
/// decomposition matrix unitriangular. Errors when the input is not
/// unitriangular, when hypothesis (H) fails (with the divisibility
/// diagnostic), or when the fiber data is inconsistent.
pub fn build_theta_g(data: &DecompositionData, ctx: &CliffordContext) -> Result<TransferOutcome> {
    let unitri = data.check_unitriangular();
    if !unitri.pass {
        return Err(Error::InconsistentData(format!(
            "input decomposition matrix is not unitriangular: {}",
            unitri.failures.join("; ")
        )));
    }
    ctx.validate(data)?;

    // hypothesis (H): fiber sizes match along theta
    for (col, &row) in data.theta.iter().enumerate() {
        let kappa_col = ctx.fibers_ibr[col].len() as u64;
        let kappa_row = ctx.fibers_irr[row].len() as u64;
        if kappa_col != kappa_row {
            let diagnostic = if kappa_row != 0 && kappa_col.is_multiple_of(kappa_row) {
                format!(
                    "; the column count is the {}-fold multiple of the image count",
                    kappa_col / kappa_row
                )
            } else {
                "; the column count is not even a multiple of the image count".to_string()
            };
            return Err(Error::HypothesisViolation {
                column: data.ibr[col].clone(),
                kappa_column: kappa_col,
                kappa_image: kappa_row,
                diagnostic,
            });
        }
    }

    let rank = data.refinement_ranks();
    let reps = minimal_orbit_reps(data, ctx)?;

    // fiber-wise assignment: each Brauer token downstairs meets exactly
    // one ordinary token of the image fiber, with multiplicity one
    let mut theta_g = vec![usize::MAX; ctx.g_ibr.len()];
    let mut owner = vec![usize::MAX; ctx.g_ibr.len()];
    for &rep in &reps {
        let image_fiber = &ctx.fibers_irr[data.theta[rep]];
        for &y in &ctx.fibers_ibr[rep] {
            if owner[y] != usize::MAX {
                return Err(Error::InconsistentData(format!(
                    "token {} lies in the fibers of two representatives",
                    ctx.g_ibr[y]
                )));
            }
            owner[y] = rep;
            let hits: Vec<usize> = image_fiber
                .iter()
                .copied()
                .filter(|&x| ctx.d_g[x][y] != 0)
                .collect();
            match hits.as_slice() {
                [x] if ctx.d_g[*x][y] == 1 => theta_g[y] = *x,
                [] => {
                    return Err(Error::InconsistentData(format!(
                        "no ordinary constituent above token {}",
                        ctx.g_ibr[y]
                    )))
                }
                _ => {
                    return Err(Error::InconsistentData(format!(
                        "token {} does not meet the image fiber in a single multiplicity-one constituent",
                        ctx.g_ibr[y]
                    )))
                }
            }
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(Error::InconsistentData(
            "the representative fibers do not cover every Brauer token".into(),
        ));
    }
    // injectivity of the assembled map
    let mut hit = vec![false; ctx.g_irr.len()];
    for &x in &theta_g {
        if std::mem::replace(&mut hit[x], true) {
            return Err(Error::InconsistentData("theta is not injective".into()));
        }
    }

    // η ≤_G η' iff η = η' or their owners are strictly ordered in the
    // linear refinement
    let m = ctx.g_ibr.len();
    let mut leq_g = vec![vec![false; m]; m];
    for y in 0..m {
        for y2 in 0..m {
            leq_g[y][y2] = y == y2 || rank[owner[y]] < rank[owner[y2]];
        }
    }

    // unitriangularity downstairs
    let mut failures = Vec::new();
    for y in 0..m {
        let row = theta_g[y];
        if ctx.d_g[row][y] != 1 {
            failures.push(format!("d_g[{}][{}] ≠ 1", ctx.g_irr[row], ctx.g_ibr[y]));
        }
        for other in 0..m {
            if ctx.d_g[row][other] != 0 && !leq_g[other][y] {
                failures.push(format!(
                    "d_g[{}][{}] = {} but {} is not below {}",
                    ctx.g_irr[row],
                    ctx.g_ibr[other],
                    ctx.d_g[row][other],
                    ctx.g_ibr[other],
                    ctx.g_ibr[y]
                ));
            }
        }
    }
    let unitriangular = CheckReport::from_failures(failures);

    // conjugation-equivariance downstairs
    let mut failures = Vec::new();
    for y in 0..m {
        if theta_g[ctx.gtilde_on_g_ibr[y]] != ctx.gtilde_on_g_irr[theta_g[y]] {
            failures.push(format!(
                "theta is not conjugation-equivariant at {}",
                ctx.g_ibr[y]
            ));
        }
    }
    let gtilde_equivariant = CheckReport::from_failures(failures);

    Ok(TransferOutcome {
        reps,
        theta_g,
        leq_g,
        unitriangular,
        gtilde_equivariant,
    })
}

/// Verify `Θ(g·η) = g·Θ(η)` for an additional action, after asserting
/// that the action commutes with the decomposition matrix downstairs.
pub fn check_equivariance(
    ctx: &CliffordContext,
    theta_g: &[usize],
    extra: &ExtraAction,
) -> Result<CheckReport> {
    if !is_permutation(&extra.on_g_irr, ctx.g_irr.len())
        || !is_permutation(&extra.on_g_ibr, ctx.g_ibr.len())
    {
        return Err(Error::InconsistentData(
            "extra action is not a permutation".into(),
        ));
    }
    for x in 0..ctx.g_irr.len() {
        for y in 0..ctx.g_ibr.len() {
            if ctx.d_g[x][y] != ctx.d_g[extra.on_g_irr[x]][extra.on_g_ibr[y]] {
                return Err(Error::InconsistentData(
                    "extra action does not commute with d_g".into(),
                ));
            }
        }
    }
    let mut failures = Vec::new();
    for y in 0..ctx.g_ibr.len() {
        if theta_g[extra.on_g_ibr[y]] != extra.on_g_irr[theta_g[y]] {
            failures.push(format!(
                "equivariance fails at {}: Θ(g·η) = {} but g·Θ(η) = {}",
                ctx.g_ibr[y],
                ctx.g_irr[theta_g[extra.on_g_ibr[y]]],
                ctx.g_irr[extra.on_g_irr[theta_g[y]]]
            ));
        }
    }
    Ok(CheckReport::from_failures(failures))
}

/// Wire format for one engine run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransferInput {
    pub ell: u64,
    pub irr: Vec<String>,
    pub ibr: Vec<String>,
    pub d: Vec<Vec<u64>>,
    /// Pairs `[i, j]` declaring column `i ≤ j`; the reflexive-transitive
    /// closure is taken.
    pub order: Vec<(usize, usize)>,
    pub theta: Vec<usize>,
    pub a_order: u64,
    pub a_on_irr: Vec<usize>,
    pub a_on_ibr: Vec<usize>,
    pub g_irr: Vec<String>,
    pub g_ibr: Vec<String>,
    pub fibers_irr: Vec<Vec<usize>>,
    pub fibers_ibr: Vec<Vec<usize>>,
    pub d_g: Vec<Vec<u64>>,
    pub gtilde_on_g_irr: Vec<usize>,
    pub gtilde_on_g_ibr: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_action: Option<ExtraAction>,
}

impl TransferInput {
    pub fn into_parts(self) -> Result<(DecompositionData, CliffordContext, Option<ExtraAction>)> {
        let rows = self.irr.len();
        let cols = self.ibr.len();
        if self.d.len() != rows || self.d.iter().any(|r| r.len() != cols) {
            return Err(Error::InconsistentData("d has the wrong shape".into()));
        }
        if self.theta.len() != cols || self.theta.iter().any(|&r| r >= rows) {
            return Err(Error::InconsistentData("theta has the wrong shape".into()));
        }
        let mut leq = vec![vec![false; cols]; cols];
        for i in 0..cols {
            leq[i][i] = true;
        }
        for &(i, j) in &self.order {
            if i >= cols || j >= cols {
                return Err(Error::InconsistentData(format!(
                    "order pair ({i}, {j}) out of range"
                )));
            }
            leq[i][j] = true;
        }
        // Floyd–Warshall closure
        for k in 0..cols {
            for i in 0..cols {
                if leq[i][k] {
                    for j in 0..cols {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..cols {
            for j in 0..cols {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::InconsistentData(format!(
                        "order is not antisymmetric between {} and {}",
                        self.ibr[i], self.ibr[j]
                    )));
                }
            }
        }
        let data = DecompositionData {
            irr: self.irr,
            ibr: self.ibr,
            d: self.d,
            leq,
            theta: self.theta,
        };
        let ctx = CliffordContext {
            ell: self.ell,
            a_order: self.a_order,
            a_on_irr: self.a_on_irr,
            a_on_ibr: self.a_on_ibr,
            g_irr: self.g_irr,
            g_ibr: self.g_ibr,
            fibers_irr: self.fibers_irr,
            fibers_ibr: self.fibers_ibr,
            d_g: self.d_g,
            gtilde_on_g_irr: self.gtilde_on_g_irr,
            gtilde_on_g_ibr: self.gtilde_on_g_ibr,
        };
        Ok((data, ctx, self.extra_action))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trivial fibers: the small group equals the big one.
    fn identity_fixture(n: usize) -> (DecompositionData, CliffordContext) {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let mut d = vec![vec![0; n]; n];
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            d[i][i] = 1;
            for j in i..n {
                leq[i][j] = true;
                if j > i {
                    d[j][i] = 1; // lower-triangular noise
                }
            }
        }
        let data = DecompositionData {
            irr: names.clone(),
            ibr: names.clone(),
            d,
            leq,
            theta: (0..n).collect(),
        };
        let ctx = CliffordContext {
            ell: 3,
            a_order: 1,
            a_on_irr: (0..n).collect(),
            a_on_ibr: (0..n).collect(),
            g_irr: names.clone(),
            g_ibr: names,
            fibers_irr: (0..n).map(|i| vec![i]).collect(),
            fibers_ibr: (0..n).map(|i| vec![i]).collect(),
            d_g: {
                let mut d = vec![vec![0; n]; n];
                for (i, row) in d.iter_mut().enumerate() {
                    row[i] = 1;
                }
                d
            },
            gtilde_on_g_irr: (0..n).collect(),
            gtilde_on_g_ibr: (0..n).collect(),
        };
        (data, ctx)
    }

    #[test]
    fn unitriangular_check_examples() {
        let (data, _) = identity_fixture(1);
        assert!(data.check_unitriangular().pass);

        let (data, _) = identity_fixture(2);
        assert!(data.check_unitriangular().pass);

        let mut bad = data.clone();
        bad.d[bad.theta[0]][0] = 2;
        assert!(!bad.check_unitriangular().pass);
    }

    #[test]
    fn trivial_action_keeps_all_columns() {
        let (data, ctx) = identity_fixture(3);
        assert_eq!(minimal_orbit_reps(&data, &ctx).unwrap(), vec![0, 1, 2]);
        let outcome = build_theta_g(&data, &ctx).unwrap();
        assert_eq!(outcome.theta_g, vec![0, 1, 2]);
        assert!(outcome.unitriangular.pass);
        assert!(outcome.gtilde_equivariant.pass);
    }

    #[test]
    fn order_two_swap_picks_smaller_column() {
        // two columns in one A-orbit; both restrict to one token
        let data = DecompositionData {
            irr: vec!["X0".into(), "X1".into()],
            ibr: vec!["Y0".into(), "Y1".into()],
            d: vec![vec![1, 0], vec![0, 1]],
            leq: vec![vec![true, false], vec![false, true]],
            theta: vec![0, 1],
        };
        let ctx = CliffordContext {
            ell: 3,
            a_order: 2,
            a_on_irr: vec![1, 0],
            a_on_ibr: vec![1, 0],
            g_irr: vec!["x".into()],
            g_ibr: vec!["y".into()],
            fibers_irr: vec![vec![0], vec![0]],
            fibers_ibr: vec![vec![0], vec![0]],
            d_g: vec![vec![1]],
            gtilde_on_g_irr: vec![0],
            gtilde_on_g_ibr: vec![0],
        };
        assert_eq!(minimal_orbit_reps(&data, &ctx).unwrap(), vec![0]);
        let outcome = build_theta_g(&data, &ctx).unwrap();
        assert_eq!(outcome.theta_g, vec![0]);
        assert!(outcome.unitriangular.pass);
    }

    #[test]
    fn hypothesis_violation_reports_divisibility() {
        // ell = 2 and A of order 2: A_ell fixes the one column (fiber
        // size 2) while A moves its image row (fiber size 1)
        let data = DecompositionData {
            irr: vec!["X0".into(), "X1".into()],
            ibr: vec!["Y0".into()],
            d: vec![vec![1], vec![1]],
            leq: vec![vec![true]],
            theta: vec![0],
        };
        let ctx = CliffordContext {
            ell: 2,
            a_order: 2,
            a_on_irr: vec![1, 0],
            a_on_ibr: vec![0],
            g_irr: vec!["x".into()],
            g_ibr: vec!["y0".into(), "y1".into()],
            fibers_irr: vec![vec![0], vec![0]],
            fibers_ibr: vec![vec![0, 1]],
            d_g: vec![vec![1, 1]],
            gtilde_on_g_irr: vec![0],
            gtilde_on_g_ibr: vec![1, 0],
        };
        assert!(ctx.validate(&data).is_ok());
        let err = build_theta_g(&data, &ctx).unwrap_err();
        match err {
            Error::HypothesisViolation {
                kappa_column,
                kappa_image,
                diagnostic,
                ..
            } => {
                assert_eq!((kappa_column, kappa_image), (2, 1));
                assert!(diagnostic.contains("2-fold multiple"));
            }
            other => panic!("expected hypothesis violation, got {other}"),
        }
    }

    #[test]
    fn equivariance_pass_and_fail() {
        let (data, ctx) = identity_fixture(3);
        let outcome = build_theta_g(&data, &ctx).unwrap();

        let stay = ExtraAction {
            on_g_irr: vec![0, 1, 2],
            on_g_ibr: vec![0, 1, 2],
        };
        assert!(
            check_equivariance(&ctx, &outcome.theta_g, &stay)
                .unwrap()
                .pass
        );

        // moving only one side breaks commutation with d_g
        let broken = ExtraAction {
            on_g_irr: vec![1, 0, 2],
            on_g_ibr: vec![0, 1, 2],
        };
        assert!(check_equivariance(&ctx, &outcome.theta_g, &broken).is_err());
    }
}
