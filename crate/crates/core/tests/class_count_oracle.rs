//! Brute-force conjugacy-class counts for the smallest groups, computed
//! from actual matrices, pinning the label enumeration.

use unitri_core::labels::{enumerate_class_labels, enumerate_irr_labels};
use unitri_core::GroupSpec;

/// A small finite field as explicit operation tables. Elements are
/// indices `0..q`; `0` and `1` are the additive and multiplicative
/// identities.
struct SmallField {
    q: usize,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
}

impl SmallField {
    fn prime(p: usize) -> Self {
        let add = (0..p)
            .map(|a| (0..p).map(|b| ((a + b) % p) as u8).collect())
            .collect();
        let mul = (0..p)
            .map(|a| (0..p).map(|b| ((a * b) % p) as u8).collect())
            .collect();
        SmallField { q: p, add, mul }
    }

    /// Quadratic extension of the prime field: elements `a + b·t` encoded
    /// as `a + b·p`, with `t² = t + 1` in characteristic 2 and `t² = -1`
    /// otherwise.
    fn quadratic(p: usize) -> Self {
        let q = p * p;
        let decode = |x: usize| (x % p, x / p);
        let add: Vec<Vec<u8>> = (0..q)
            .map(|x| {
                (0..q)
                    .map(|y| {
                        let (a1, b1) = decode(x);
                        let (a2, b2) = decode(y);
                        ((a1 + a2) % p + ((b1 + b2) % p) * p) as u8
                    })
                    .collect()
            })
            .collect();
        let mul: Vec<Vec<u8>> = (0..q)
            .map(|x| {
                (0..q)
                    .map(|y| {
                        let (a1, b1) = decode(x);
                        let (a2, b2) = decode(y);
                        let aa = a1 * a2 % p;
                        let bb = b1 * b2 % p;
                        let cross = (a1 * b2 + a2 * b1) % p;
                        let (a, b) = if p == 2 {
                            // t² = t + 1
                            ((aa + bb) % p, (cross + bb) % p)
                        } else {
                            // t² = -1
                            ((aa + (p - 1) * bb) % p, cross)
                        };
                        (a + b * p) as u8
                    })
                    .collect()
            })
            .collect();
        SmallField { q, add, mul }
    }

    fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    fn neg(&self, a: u8) -> u8 {
        (0..self.q as u8).find(|&b| self.add(a, b) == 0).unwrap()
    }

    fn inv(&self, a: u8) -> u8 {
        (0..self.q as u8).find(|&b| self.mul(a, b) == 1).unwrap()
    }

    /// Frobenius `x ↦ x^p` of the quadratic extension.
    fn conj(&self, a: u8) -> u8 {
        let p = (self.q as f64).sqrt() as usize;
        let mut acc = a;
        for _ in 1..p {
            acc = self.mul(acc, a);
        }
        acc
    }
}

type Mat = [u8; 4];

fn mat_mul(f: &SmallField, m: Mat, n: Mat) -> Mat {
    [
        f.add(f.mul(m[0], n[0]), f.mul(m[1], n[2])),
        f.add(f.mul(m[0], n[1]), f.mul(m[1], n[3])),
        f.add(f.mul(m[2], n[0]), f.mul(m[3], n[2])),
        f.add(f.mul(m[2], n[1]), f.mul(m[3], n[3])),
    ]
}

fn det(f: &SmallField, m: Mat) -> u8 {
    f.add(f.mul(m[0], m[3]), f.neg(f.mul(m[1], m[2])))
}

fn mat_inv(f: &SmallField, m: Mat) -> Mat {
    let di = f.inv(det(f, m));
    [
        f.mul(di, m[3]),
        f.mul(di, f.neg(m[1])),
        f.mul(di, f.neg(m[2])),
        f.mul(di, m[0]),
    ]
}

fn all_invertible(f: &SmallField) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..f.q as u8 {
        for b in 0..f.q as u8 {
            for c in 0..f.q as u8 {
                for d in 0..f.q as u8 {
                    let m = [a, b, c, d];
                    if det(f, m) != 0 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Isometries of the Hermitian form with antidiagonal Gram matrix:
/// `conj(M)^T · J · M = J`.
fn unitary_subgroup(f: &SmallField, candidates: &[Mat]) -> Vec<Mat> {
    let j: Mat = [0, 1, 1, 0];
    candidates
        .iter()
        .copied()
        .filter(|m| {
            let conj_t = [f.conj(m[0]), f.conj(m[2]), f.conj(m[1]), f.conj(m[3])];
            mat_mul(f, mat_mul(f, conj_t, j), *m) == j
        })
        .collect()
}

fn conjugacy_class_count(f: &SmallField, group: &[Mat]) -> usize {
    let mut seen = std::collections::HashSet::new();
    let mut classes = 0;
    for &m in group {
        if seen.contains(&m) {
            continue;
        }
        classes += 1;
        for &g in group {
            seen.insert(mat_mul(f, mat_mul(f, g, m), mat_inv(f, g)));
        }
    }
    classes
}

#[test]
fn gl2_class_counts_match_matrix_oracle() {
    for p in [2usize, 3] {
        let f = SmallField::prime(p);
        let group = all_invertible(&f);
        assert_eq!(group.len(), (p * p - 1) * (p * p - p), "|GL2({p})|");
        let oracle = conjugacy_class_count(&f, &group);
        assert_eq!(oracle, p * p - 1, "matrix oracle for GL2({p})");

        let spec = GroupSpec::new(2, p as u64, false, if p == 2 { 3 } else { 2 }).unwrap();
        assert_eq!(enumerate_class_labels(&spec, false).unwrap().len(), oracle);
        assert_eq!(enumerate_irr_labels(&spec).unwrap().len(), oracle);
    }
}

#[test]
fn gu2_2_class_count_matches_matrix_oracle() {
    let f = SmallField::quadratic(2);
    let group = unitary_subgroup(&f, &all_invertible(&f));
    assert_eq!(group.len(), 18, "|GU2(2)|");
    let oracle = conjugacy_class_count(&f, &group);
    assert_eq!(oracle, 9, "matrix oracle for GU2(2)");

    let spec = GroupSpec::new(2, 2, true, 3).unwrap();
    assert_eq!(enumerate_class_labels(&spec, false).unwrap().len(), oracle);
    assert_eq!(enumerate_irr_labels(&spec).unwrap().len(), oracle);
}

#[test]
fn gu2_3_class_count_matches_matrix_oracle() {
    let f = SmallField::quadratic(3);
    let group = unitary_subgroup(&f, &all_invertible(&f));
    assert_eq!(group.len(), 96, "|GU2(3)|");
    let oracle = conjugacy_class_count(&f, &group);
    assert_eq!(oracle, 16, "matrix oracle for GU2(3)");

    let spec = GroupSpec::new(2, 3, true, 2).unwrap();
    assert_eq!(enumerate_class_labels(&spec, false).unwrap().len(), oracle);
    assert_eq!(enumerate_irr_labels(&spec).unwrap().len(), oracle);
}

#[test]
fn gl2_label_counts_for_larger_q() {
    for q in [4u64, 5] {
        let spec = GroupSpec::new(2, q, false, 3).unwrap();
        assert_eq!(
            enumerate_class_labels(&spec, false).unwrap().len() as u64,
            q * q - 1,
            "GL2({q}) class labels"
        );
    }
}
