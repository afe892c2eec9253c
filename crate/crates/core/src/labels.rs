//! Labels for semisimple classes and irreducible characters.
//!
//! A semisimple class of `GL_n(εq)` is an F-stable spectrum with orbit
//! multiplicities; an irreducible character is a pair of such a label with
//! a multipartition, via Jordan decomposition. The unipotent-support map
//! and the series pre-order are computed here entirely on labels.
//!
//! Partition labels follow the convention in which `(1, ..., 1)` labels
//! the trivial character and `(n)` the Steinberg character; external
//! tables using the conjugate convention must be transposed with
//! [`crate::partitions::conjugate`] before comparison.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::cyclotomic::{FrobOrbit, GroupSpec, RootOfUnity};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

/// An F-stable spectrum with multiplicities: eigenvalue `ξ` occurs with
/// multiplicity `entries[orbit(ξ)]`. Multiplicity is attached to whole
/// orbits, so F-stability is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemisimpleClassLabel {
    entries: Vec<(FrobOrbit, u64)>,
}

impl SemisimpleClassLabel {
    pub fn new(mut entries: Vec<(FrobOrbit, u64)>) -> Result<Self> {
        entries.sort();
        if entries.iter().any(|(_, m)| *m == 0) {
            return Err(Error::InvalidSpec(
                "zero multiplicity in class label".into(),
            ));
        }
        let mut all = std::collections::BTreeSet::new();
        for (orbit, _) in &entries {
            for &e in orbit.elems() {
                if !all.insert(e) {
                    return Err(Error::InvalidSpec(format!(
                        "orbits in class label overlap at {e}"
                    )));
                }
            }
        }
        Ok(SemisimpleClassLabel { entries })
    }

    pub fn entries(&self) -> &[(FrobOrbit, u64)] {
        &self.entries
    }

    /// Weighted total Σ |orbit| · multiplicity; equals `n` for a valid
    /// label.
    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|(o, m)| o.len() as u64 * m).sum()
    }

    pub fn multiplicity(&self, orbit: &FrobOrbit) -> Option<u64> {
        self.entries
            .iter()
            .find(|(o, _)| o == orbit)
            .map(|(_, m)| *m)
    }

    /// Whether every eigenvalue order is coprime to `ell`.
    pub fn is_ell_prime(&self, ell: u64) -> bool {
        self.entries.iter().all(|(o, _)| o.rep().is_ell_prime(ell))
    }
}

impl fmt::Display for SemisimpleClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (orbit, mult)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{orbit}:{mult}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SsEntry {
    orbit: Vec<RootOfUnity>,
    mult: u64,
}

impl Serialize for SemisimpleClassLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (orbit, mult) in &self.entries {
            seq.serialize_element(&SsEntry {
                orbit: orbit.elems().to_vec(),
                mult: *mult,
            })?;
        }
        seq.end()
    }
}

/// A map assigning to each orbit of a companion class label a partition of
/// its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPartitionLabel {
    assign: Vec<(FrobOrbit, Partition)>,
}

impl MultiPartitionLabel {
    pub fn new(mut assign: Vec<(FrobOrbit, Partition)>) -> Self {
        assign.sort();
        MultiPartitionLabel { assign }
    }

    pub fn assign(&self) -> &[(FrobOrbit, Partition)] {
        &self.assign
    }

    pub fn partition_of(&self, orbit: &FrobOrbit) -> Option<&Partition> {
        self.assign.iter().find(|(o, _)| o == orbit).map(|(_, p)| p)
    }
}

impl fmt::Display for MultiPartitionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (orbit, part)) in self.assign.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{orbit}:{part}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MpEntry {
    orbit: Vec<RootOfUnity>,
    partition: Partition,
}

impl Serialize for MultiPartitionLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.assign.len()))?;
        for (orbit, partition) in &self.assign {
            seq.serialize_element(&MpEntry {
                orbit: orbit.elems().to_vec(),
                partition: partition.clone(),
            })?;
        }
        seq.end()
    }
}

/// Label of an irreducible character via Jordan decomposition: a
/// semisimple class label together with a multipartition in its `ℱ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IrrLabel {
    pub ss: SemisimpleClassLabel,
    pub mp: MultiPartitionLabel,
}

impl IrrLabel {
    pub fn new(ss: SemisimpleClassLabel, mp: MultiPartitionLabel) -> Result<Self> {
        if ss.entries.len() != mp.assign.len() {
            return Err(Error::InvalidSpec("multipartition domain mismatch".into()));
        }
        for ((o1, mult), (o2, part)) in ss.entries.iter().zip(mp.assign.iter()) {
            if o1 != o2 {
                return Err(Error::InvalidSpec("multipartition domain mismatch".into()));
            }
            if part.size() != *mult {
                return Err(Error::InvalidSpec(format!(
                    "partition {part} does not have size {mult}"
                )));
            }
        }
        Ok(IrrLabel { ss, mp })
    }
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ((orbit, mult), (_, part))) in self
            .ss
            .entries
            .iter()
            .zip(self.mp.assign.iter())
            .enumerate()
        {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{orbit}:{mult}:{part}")?;
        }
        Ok(())
    }
}

/// One `⟨F_ξ⟩`-orbit inside the spectrum of the `ell`-part over a fixed
/// eigenvalue `ξ` of the `ell'`-part, with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EllOrbitBlock {
    /// The orbit of `ω` under `F_ξ = F^{|⟨F⟩.ξ|}`, canonically ordered.
    pub omegas: Vec<RootOfUnity>,
    pub mult: u64,
}

/// The `ell`–`ell'` decomposition of a semisimple label: the `ell'`-part
/// `s` and, for each orbit of its spectrum (keyed by canonical
/// representative), the spectrum of the `ell`-part on the corresponding
/// eigenspace, partitioned into `⟨F_ξ⟩`-orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanSplit {
    pub s: SemisimpleClassLabel,
    pub blocks: Vec<(FrobOrbit, Vec<EllOrbitBlock>)>,
}

impl JordanSplit {
    /// Mass invariant: for each orbit of `spec(s)`,
    /// Σ |⟨F_ξ⟩.ω| · m(ω) equals the multiplicity in `s`.
    pub fn check_mass(&self) -> bool {
        self.blocks.iter().all(|(orbit, blocks)| {
            let total: u64 = blocks.iter().map(|b| b.omegas.len() as u64 * b.mult).sum();
            self.s.multiplicity(orbit) == Some(total)
        })
    }

    /// Whether the split is trivial (`u = 1`).
    pub fn is_ell_prime(&self) -> bool {
        self.blocks
            .iter()
            .all(|(_, blocks)| blocks.len() == 1 && blocks[0].omegas == [RootOfUnity::one()])
    }
}

/// Split every eigenvalue of `t` into its `ell'`- and `ell`-parts and
/// regroup: the `ell'`-parts form the spectrum of `s`; over each orbit
/// `⟨F⟩.ξ` of `spec(s)` the `ell`-parts form `spec(u_ξ)`, acted on by
/// `F_ξ = F^{|⟨F⟩.ξ|}`.
pub fn jordan_split(spec: &GroupSpec, t: &SemisimpleClassLabel) -> JordanSplit {
    let mut s_entries: std::collections::BTreeMap<FrobOrbit, u64> = Default::default();
    let mut blocks: std::collections::BTreeMap<FrobOrbit, Vec<EllOrbitBlock>> = Default::default();

    for (orbit_t, mult) in t.entries() {
        let big = orbit_t.len();
        let (s_rep, _) = spec.ell_split(orbit_t.rep());
        let s_orbit = spec.orbit_of(s_rep);
        let small = s_orbit.len();
        debug_assert_eq!(big % small, 0);
        *s_entries.entry(s_orbit.clone()).or_insert(0) += *mult * (big / small) as u64;

        // fiber of the ell'-projection over the canonical representative;
        // it is a single F_ξ-orbit of size |orbit_t| / |s_orbit|
        let xi = s_orbit.rep();
        let mut fiber: Vec<RootOfUnity> = orbit_t
            .elems()
            .iter()
            .filter_map(|&y| {
                let (sy, uy) = spec.ell_split(y);
                (sy == xi).then_some(uy)
            })
            .collect();
        debug_assert_eq!(fiber.len() as u32, big / small);
        // canonical orbit order: least element first, then F_ξ-images
        let least = *fiber.iter().min().unwrap();
        let mut ordered = vec![least];
        let mut cur = frobenius_iterate(spec, least, small);
        while cur != least {
            ordered.push(cur);
            cur = frobenius_iterate(spec, cur, small);
        }
        debug_assert_eq!(ordered.len(), fiber.len());
        fiber.sort();
        debug_assert!({
            let mut check = ordered.clone();
            check.sort();
            check == fiber
        });
        blocks.entry(s_orbit).or_default().push(EllOrbitBlock {
            omegas: ordered,
            mult: *mult,
        });
    }

    let s = SemisimpleClassLabel::new(s_entries.into_iter().collect())
        .expect("ell'-parts of disjoint orbits are disjoint");
    let blocks = blocks
        .into_iter()
        .map(|(orbit, mut list)| {
            list.sort();
            (orbit, list)
        })
        .collect();
    JordanSplit { s, blocks }
}

fn frobenius_iterate(spec: &GroupSpec, x: RootOfUnity, times: u32) -> RootOfUnity {
    (0..times).fold(x, |y, _| spec.frobenius_apply(y))
}

/// The unipotent support of a character label, as a multipartition over
/// the `ell'`-part of its semisimple label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesSupport {
    pub s: SemisimpleClassLabel,
    pub support: MultiPartitionLabel,
}

/// Compute the support: each orbit of `spec(t)` maps onto an orbit of
/// `spec(s)` and contributes its partition, multiplied by the fiber size
/// `|⟨F_ξ⟩.ω|`, to the part-wise sum over that orbit. Restricted to
/// labels with `ell'`-pure semisimple part this is the identity.
pub fn unipotent_support(spec: &GroupSpec, chi: &IrrLabel) -> SeriesSupport {
    let mut acc: std::collections::BTreeMap<FrobOrbit, Partition> = Default::default();
    for ((orbit_t, _), (_, delta)) in chi.ss.entries().iter().zip(chi.mp.assign()) {
        let (s_rep, _) = spec.ell_split(orbit_t.rep());
        let s_orbit = spec.orbit_of(s_rep);
        let fiber = (orbit_t.len() / s_orbit.len()) as u64;
        let term = delta.multiple(fiber);
        let entry = acc.entry(s_orbit).or_insert_with(Partition::empty);
        *entry = entry.sum(&term);
    }
    let s = jordan_split(spec, &chi.ss).s;
    let support = MultiPartitionLabel::new(acc.into_iter().collect());
    debug_assert!(s
        .entries()
        .iter()
        .all(|(o, m)| support.partition_of(o).map(|p| p.size()) == Some(*m)));
    SeriesSupport { s, support }
}

/// The pre-order on a series: `a ≤ b` iff the supports are dominated
/// orbit-wise. Errors when the two labels do not lie over one
/// `ell'`-part.
pub fn series_preorder_leq(spec: &GroupSpec, a: &IrrLabel, b: &IrrLabel) -> Result<bool> {
    let sa = unipotent_support(spec, a);
    let sb = unipotent_support(spec, b);
    if sa.s != sb.s {
        return Err(Error::SeriesMismatch);
    }
    for (orbit, pa) in sa.support.assign() {
        let pb = sb.support.partition_of(orbit).expect("same spectrum");
        if !pa.dominated_by(pb)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All semisimple class labels of weight `n`: every assignment of a
/// positive multiplicity to a set of pairwise disjoint orbits, with
/// weighted total `n`. With `ell_prime_only` the eigenvalue orders are
/// restricted to be coprime to `ell`.
pub fn enumerate_semisimple_classes(
    spec: &GroupSpec,
    ell_prime_only: bool,
) -> Result<Vec<SemisimpleClassLabel>> {
    let pool = spec.enumerate_orbits(spec.n, ell_prime_only)?;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    assign_weights(&pool, 0, spec.n as u64, &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn assign_weights(
    pool: &[FrobOrbit],
    idx: usize,
    remaining: u64,
    chosen: &mut Vec<(FrobOrbit, u64)>,
    out: &mut Vec<SemisimpleClassLabel>,
) {
    if remaining == 0 {
        out.push(SemisimpleClassLabel::new(chosen.clone()).expect("pool orbits are disjoint"));
        return;
    }
    if idx == pool.len() {
        return;
    }
    let w = pool[idx].len() as u64;
    assign_weights(pool, idx + 1, remaining, chosen, out);
    for m in 1..=remaining / w {
        chosen.push((pool[idx].clone(), m));
        assign_weights(pool, idx + 1, remaining - m * w, chosen, out);
        chosen.pop();
    }
}

/// All elements of `ℱ_t`: one partition of the multiplicity per orbit.
/// The count is the product of partition numbers of the multiplicities.
pub fn enumerate_multipartitions(t: &SemisimpleClassLabel) -> Vec<MultiPartitionLabel> {
    let per_orbit: Vec<(FrobOrbit, Vec<Partition>)> = t
        .entries()
        .iter()
        .map(|(o, m)| (o.clone(), enumerate_partitions(*m)))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    odometer(&per_orbit, 0, &mut current, &mut out);
    out
}

fn odometer(
    per_orbit: &[(FrobOrbit, Vec<Partition>)],
    idx: usize,
    current: &mut Vec<(FrobOrbit, Partition)>,
    out: &mut Vec<MultiPartitionLabel>,
) {
    if idx == per_orbit.len() {
        out.push(MultiPartitionLabel::new(current.clone()));
        return;
    }
    let (orbit, parts) = &per_orbit[idx];
    for p in parts {
        current.push((orbit.clone(), p.clone()));
        odometer(per_orbit, idx + 1, current, out);
        current.pop();
    }
}

/// All character labels: the Jordan-decomposition pairs `(t, λ ∈ ℱ_t)`
/// over every semisimple class label, in the global deterministic order.
pub fn enumerate_irr_labels(spec: &GroupSpec) -> Result<Vec<IrrLabel>> {
    let mut out = Vec::new();
    for ss in enumerate_semisimple_classes(spec, false)? {
        for mp in enumerate_multipartitions(&ss) {
            out.push(IrrLabel::new(ss.clone(), mp).expect("enumerated in ℱ_t"));
        }
    }
    Ok(out)
}

/// All conjugacy-class labels: pairs of a semisimple class label with the
/// Jordan type of a unipotent element of its centraliser. With
/// `ell_prime_only` these are exactly the classes of `ell'`-elements.
pub fn enumerate_class_labels(
    spec: &GroupSpec,
    ell_prime_only: bool,
) -> Result<Vec<(SemisimpleClassLabel, MultiPartitionLabel)>> {
    let mut out = Vec::new();
    for ss in enumerate_semisimple_classes(spec, ell_prime_only)? {
        for mu in enumerate_multipartitions(&ss) {
            out.push((ss.clone(), mu));
        }
    }
    Ok(out)
}
