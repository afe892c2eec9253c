//! Exact arithmetic for eigenvalues of semisimple elements.
//!
//! Eigenvalues are roots of unity of order coprime to the defining
//! characteristic `p`. We encode them additively as reduced fractions in
//! ℚ/ℤ, so that multiplication of roots of unity is addition of fractions
//! and the Frobenius `x ↦ x^(±q)` is multiplication of the fraction by
//! `±q`. This keeps every action (Frobenius, central translation,
//! inversion, p-th power) a choice-free exact fraction operation: no
//! finite-field element arithmetic and no generator of F̄_q^× is ever
//! picked.
//!
//! All integer arithmetic is checked at 128-bit width; overflow is a hard
//! error, never a wrap.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Hard cap on moduli that enumeration loops are allowed to traverse.
const ENUMERATION_CAP: u128 = u32::MAX as u128;

/// `a * b mod m` without intermediate overflow (double-and-add).
pub(crate) fn mul_mod(mut a: u128, mut b: u128, m: u128) -> u128 {
    if m <= 1 {
        return 0;
    }
    a %= m;
    b %= m;
    if let Some(p) = a.checked_mul(b) {
        return p % m;
    }
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a + a) % m;
        b >>= 1;
    }
    acc
}

/// `a^e mod m` by square-and-multiply.
pub(crate) fn pow_mod(a: u128, mut e: u128, m: u128) -> u128 {
    if m <= 1 {
        return 0;
    }
    let mut base = a % m;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Largest power of `ell` dividing `x` (1 when `ell` does not divide `x`).
pub fn ell_part(mut x: u64, ell: u64) -> u64 {
    let mut part = 1;
    while x.is_multiple_of(ell) && x > 0 {
        part *= ell;
        x /= ell;
    }
    part
}

/// Cofactor of [`ell_part`]: the largest divisor of `x` coprime to `ell`.
pub fn ell_prime_part(x: u64, ell: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    x / ell_part(x, ell)
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The ambient group: `GL_n(q)`/`GU_n(q)` over its `SL`/`SU` subgroup,
/// together with the non-defining prime `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    /// Matrix size.
    pub n: u32,
    /// Field size, a power of `p`.
    pub q: u64,
    /// Defining characteristic.
    pub p: u64,
    /// Unitary (`GU`/`SU`) when true, linear (`GL`/`SL`) when false.
    pub twisted: bool,
    /// The prime of the modular system, coprime to `q`.
    pub ell: u64,
    #[serde(skip)]
    f: u32,
}

impl GroupSpec {
    pub fn new(n: u32, q: u64, twisted: bool, ell: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("n = {n} must be at least 2")));
        }
        if q < 2 {
            return Err(Error::InvalidSpec(format!("q = {q} must be at least 2")));
        }
        let p = (2..=q)
            .find(|d| q.is_multiple_of(*d))
            .expect("q >= 2 has a divisor");
        let mut f = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            f += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidSpec(format!("q = {q} is not a prime power")));
        }
        if !is_prime(ell) {
            return Err(Error::InvalidSpec(format!("ell = {ell} is not prime")));
        }
        if ell == p {
            return Err(Error::InvalidSpec(format!(
                "ell = {ell} equals the defining characteristic"
            )));
        }
        Ok(GroupSpec {
            n,
            q,
            p,
            twisted,
            ell,
            f,
        })
    }

    /// Exponent `f` with `q = p^f`.
    pub fn field_exponent(&self) -> u32 {
        self.f
    }

    /// `|Z(G̃)| = q - ε`: `q - 1` linear, `q + 1` unitary.
    pub fn center_order(&self) -> u64 {
        if self.twisted {
            self.q + 1
        } else {
            self.q - 1
        }
    }

    /// The annihilator `N_d = |(εq)^d - 1|` of the eigenvalues whose
    /// Frobenius orbit size divides `d`.
    pub fn frobenius_modulus(&self, d: u32) -> Result<u128> {
        assert!(d >= 1, "orbit size must be positive");
        let qd = (self.q as u128)
            .checked_pow(d)
            .ok_or_else(|| Error::Overflow(format!("q^d with q = {}, d = {d}", self.q)))?;
        if self.twisted && d % 2 == 1 {
            qd.checked_add(1)
                .ok_or_else(|| Error::Overflow(format!("q^{d} + 1")))
        } else {
            Ok(qd - 1)
        }
    }

    /// `F(x) = x^q` (linear) or `x^(-q)` (unitary), as a fraction operation.
    pub fn frobenius_apply(&self, x: RootOfUnity) -> RootOfUnity {
        let den = x.den;
        if den == 1 {
            return RootOfUnity::one();
        }
        debug_assert_eq!(
            (self.q as u128).gcd(&den),
            1,
            "denominator must be coprime to q"
        );
        let mut m = (self.q as u128) % den;
        if self.twisted {
            m = (den - m) % den;
        }
        RootOfUnity {
            num: mul_mod(m, x.num, den),
            den,
        }
    }

    /// The full `⟨F⟩`-orbit of `x`, canonically ordered: the element with
    /// the least numerator first, then its successive Frobenius images.
    pub fn orbit_of(&self, x: RootOfUnity) -> FrobOrbit {
        let mut seen = vec![x];
        let mut cur = self.frobenius_apply(x);
        while cur != x {
            seen.push(cur);
            cur = self.frobenius_apply(cur);
        }
        let start = seen
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| **r)
            .map(|(i, _)| i)
            .unwrap();
        seen.rotate_left(start);
        FrobOrbit { elems: seen }
    }

    /// All `⟨F⟩`-orbits of size at most `max_size` on roots of unity of
    /// p'-order, each exactly once, in ascending canonical order. With
    /// `ell_prime_only`, orbits whose element order is divisible by `ell`
    /// are dropped.
    pub fn enumerate_orbits(&self, max_size: u32, ell_prime_only: bool) -> Result<Vec<FrobOrbit>> {
        assert!(max_size >= 1);
        let mut seen = std::collections::BTreeSet::new();
        let mut out = std::collections::BTreeSet::new();
        for d in 1..=max_size {
            let nd = self.frobenius_modulus(d)?;
            if nd > ENUMERATION_CAP {
                return Err(Error::Overflow(format!(
                    "enumeration modulus {nd} exceeds the supported range"
                )));
            }
            for k in 0..nd {
                let x = RootOfUnity::reduced(k, nd);
                if !seen.insert(x) {
                    continue;
                }
                let orbit = self.orbit_of(x);
                for e in &orbit.elems {
                    seen.insert(*e);
                }
                if ell_prime_only && orbit.rep().den.is_multiple_of(self.ell as u128) {
                    continue;
                }
                out.insert(orbit);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Unique decomposition `x = x_ell' + x_ell` in ℚ/ℤ with the first
    /// summand of order coprime to `ell` and the second of `ell`-power
    /// order, computed by CRT on the denominator.
    pub fn ell_split(&self, x: RootOfUnity) -> (RootOfUnity, RootOfUnity) {
        let ell = self.ell as u128;
        let mut lv = 1u128;
        let mut m = x.den;
        while m.is_multiple_of(ell) {
            lv *= ell;
            m /= ell;
        }
        if lv == 1 {
            return (x, RootOfUnity::one());
        }
        if m == 1 {
            return (RootOfUnity::one(), x);
        }
        let a = mul_mod(x.num, inv_mod(lv, m), m);
        let b = mul_mod(x.num, inv_mod(m, lv), lv);
        (RootOfUnity::reduced(a, m), RootOfUnity::reduced(b, lv))
    }
}

/// Modular inverse; panics unless `gcd(a, m) = 1`.
fn inv_mod(a: u128, m: u128) -> u128 {
    let a = (a % m) as i128;
    let gcd = (a).extended_gcd(&(m as i128));
    assert_eq!(gcd.gcd, 1, "inverse of non-unit");
    gcd.x.rem_euclid(m as i128) as u128
}

/// A root of unity of order coprime to `p`, written additively as a
/// reduced fraction `num/den` in ℚ/ℤ. The identity is `0/1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u128,
    den: u128,
}

impl RootOfUnity {
    /// The identity element `0/1`.
    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn new(num: u128, den: u128) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidSpec("zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    /// Reduce `num/den` into canonical form.
    pub(crate) fn reduced(num: u128, den: u128) -> Self {
        let num = num % den;
        if num == 0 {
            return RootOfUnity { num: 0, den: 1 };
        }
        let g = num.gcd(&den);
        RootOfUnity {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    /// Multiplicative order of the root of unity.
    pub fn order(&self) -> u128 {
        self.den
    }

    /// Product of roots of unity = sum of fractions.
    #[allow(clippy::should_implement_trait)] // fallible, unlike ops::Add
    pub fn add(self, other: RootOfUnity) -> Result<RootOfUnity> {
        let den = (self.den / self.den.gcd(&other.den))
            .checked_mul(other.den)
            .ok_or_else(|| Error::Overflow("fraction addition".into()))?;
        let a = mul_mod(self.num, den / self.den, den);
        let b = mul_mod(other.num, den / other.den, den);
        Ok(RootOfUnity::reduced((a + b) % den, den))
    }

    /// Inverse root of unity = negated fraction.
    #[allow(clippy::should_implement_trait)] // named for the ℚ/ℤ picture
    pub fn neg(self) -> RootOfUnity {
        if self.num == 0 {
            self
        } else {
            RootOfUnity {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    /// Multiplication of the fraction by an integer (the `k`-th power of
    /// the root of unity).
    pub fn scale(self, k: u128) -> RootOfUnity {
        RootOfUnity::reduced(mul_mod(k % self.den, self.num, self.den), self.den)
    }

    /// Whether the order is coprime to `ell`.
    pub fn is_ell_prime(&self, ell: u64) -> bool {
        !self.den.is_multiple_of(ell as u128)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = s
            .split_once('/')
            .ok_or_else(|| Error::InvalidSpec(format!("malformed root of unity `{s}`")))?;
        let num: u128 = num
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("malformed numerator `{num}`")))?;
        let den: u128 = den
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("malformed denominator `{den}`")))?;
        RootOfUnity::new(num, den)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// A `⟨F⟩`-orbit of eigenvalues, the atom indexing multipartitions.
///
/// Elements are stored in canonical order: the lexicographically least
/// `(den, num)` first, followed by its successive Frobenius images. All
/// elements share one denominator, so the first entry simply has the
/// least numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrobOrbit {
    elems: Vec<RootOfUnity>,
}

impl FrobOrbit {
    /// Canonical representative (least element).
    pub fn rep(&self) -> RootOfUnity {
        self.elems[0]
    }

    pub fn len(&self) -> u32 {
        self.elems.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[RootOfUnity] {
        &self.elems
    }

    pub fn contains(&self, x: RootOfUnity) -> bool {
        self.elems.contains(&x)
    }
}

impl fmt::Display for FrobOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.elems {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for FrobOrbit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ru(num: u128, den: u128) -> RootOfUnity {
        RootOfUnity::new(num, den).unwrap()
    }

    fn gl(n: u32, q: u64, ell: u64) -> GroupSpec {
        GroupSpec::new(n, q, false, ell).unwrap()
    }

    fn gu(n: u32, q: u64, ell: u64) -> GroupSpec {
        GroupSpec::new(n, q, true, ell).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(GroupSpec::new(1, 2, false, 3).is_err());
        assert!(GroupSpec::new(2, 6, false, 5).is_err());
        assert!(GroupSpec::new(2, 4, false, 2).is_err());
        assert!(GroupSpec::new(2, 4, false, 9).is_err());
        let s = GroupSpec::new(3, 8, true, 3).unwrap();
        assert_eq!((s.p, s.field_exponent()), (2, 3));
        assert_eq!(s.center_order(), 9);
        assert_eq!(gl(2, 5, 2).center_order(), 4);
    }

    #[test]
    fn frobenius_apply_examples() {
        assert_eq!(gl(3, 4, 3).frobenius_apply(ru(1, 3)), ru(1, 3));
        assert_eq!(gu(3, 2, 5).frobenius_apply(ru(1, 3)), ru(1, 3));
        assert_eq!(gl(3, 2, 3).frobenius_apply(ru(1, 7)), ru(2, 7));
    }

    #[test]
    fn frobenius_modulus_examples() {
        assert_eq!(gu(2, 2, 5).frobenius_modulus(1).unwrap(), 3);
        assert_eq!(gu(2, 2, 5).frobenius_modulus(2).unwrap(), 3);
        assert_eq!(gl(2, 4, 3).frobenius_modulus(2).unwrap(), 15);
    }

    #[test]
    fn orbit_of_examples() {
        let o = gl(3, 2, 3).orbit_of(ru(1, 7));
        assert_eq!(o.elems(), &[ru(1, 7), ru(2, 7), ru(4, 7)]);

        let o = gu(2, 2, 3).orbit_of(ru(1, 5));
        assert_eq!(o.elems(), &[ru(1, 5), ru(3, 5), ru(4, 5), ru(2, 5)]);

        assert_eq!(gl(2, 9, 2).orbit_of(RootOfUnity::one()).len(), 1);
        assert_eq!(gu(2, 3, 2).orbit_of(RootOfUnity::one()).len(), 1);
    }

    #[test]
    fn enumerate_orbits_examples() {
        let orbits = gu(2, 2, 5).enumerate_orbits(1, false).unwrap();
        assert_eq!(orbits.len(), 3);
        assert_eq!(orbits[0].elems(), &[RootOfUnity::one()]);
        assert_eq!(orbits[1].elems(), &[ru(1, 3)]);
        assert_eq!(orbits[2].elems(), &[ru(2, 3)]);

        let orbits = gl(2, 2, 3).enumerate_orbits(1, false).unwrap();
        assert_eq!(orbits.len(), 1);

        let orbits = gl(2, 2, 3).enumerate_orbits(2, false).unwrap();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[1].elems(), &[ru(1, 3), ru(2, 3)]);

        // the ell filter drops order-3 eigenvalues
        let orbits = gl(2, 2, 3).enumerate_orbits(2, true).unwrap();
        assert_eq!(orbits.len(), 1);
    }

    #[test]
    fn ell_split_examples() {
        let s = gl(2, 2, 3);
        assert_eq!(s.ell_split(ru(1, 6)), (ru(1, 2), ru(2, 3)));
        assert_eq!(s.ell_split(ru(1, 2)), (ru(1, 2), RootOfUnity::one()));
        assert_eq!(s.ell_split(ru(1, 9)), (RootOfUnity::one(), ru(1, 9)));
    }

    #[test]
    fn fraction_parsing_round_trip() {
        let x: RootOfUnity = "3/9".parse().unwrap();
        assert_eq!(x, ru(1, 3));
        assert_eq!(x.to_string(), "1/3");
        assert!("7".parse::<RootOfUnity>().is_err());
        assert!("1/0".parse::<RootOfUnity>().is_err());
    }

    fn small_specs() -> Vec<GroupSpec> {
        let mut out = Vec::new();
        for &q in &[2u64, 3, 4, 5, 7, 8, 9] {
            for &tw in &[false, true] {
                for &ell in &[2u64, 3, 5, 7] {
                    if let Ok(s) = GroupSpec::new(3, q, tw, ell) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn frobenius_is_periodic_on_orbits(idx in 0usize..28, num in 0u128..200, den in 1u128..60) {
            let specs = small_specs();
            let spec = specs[idx % specs.len()];
            prop_assume!(den % (spec.p as u128) != 0);
            let x = RootOfUnity::reduced(num, den);
            let orbit = spec.orbit_of(x);
            let d = orbit.len();
            // composing F orbit-size times fixes every member
            for &e in orbit.elems() {
                let mut y = e;
                for _ in 0..d {
                    y = spec.frobenius_apply(y);
                }
                prop_assert_eq!(y, e);
            }
            // (εq)^d kills the orbit and no smaller power does; checked
            // modularly since q^d itself can exceed any fixed width
            let order = orbit.rep().order();
            if order > 1 {
                let mut mult = (spec.q as u128) % order;
                if spec.twisted {
                    mult = (order - mult) % order;
                }
                prop_assert_eq!(pow_mod(mult, d as u128, order), 1);
                for e in 1..d {
                    prop_assert!(pow_mod(mult, e as u128, order) != 1);
                }
            }
            // and the integer annihilator agrees whenever it fits
            if let Ok(nd) = spec.frobenius_modulus(d) {
                prop_assert_eq!(nd % order, 0);
            }
        }

        #[test]
        fn ell_split_recombines(idx in 0usize..28, num in 0u128..500, den in 1u128..120) {
            let specs = small_specs();
            let spec = specs[idx % specs.len()];
            prop_assume!(den % (spec.p as u128) != 0);
            let x = RootOfUnity::reduced(num, den);
            let (lp, le) = spec.ell_split(x);
            prop_assert!(lp.is_ell_prime(spec.ell));
            let mut o = le.order();
            while o % (spec.ell as u128) == 0 {
                o /= spec.ell as u128;
            }
            prop_assert_eq!(o, 1);
            prop_assert_eq!(lp.add(le).unwrap(), x);
            prop_assert_eq!(lp.order() * le.order(), x.order());
        }

        #[test]
        fn orbit_enumeration_is_complete(idx in 0usize..28, max in 1u32..4) {
            let specs = small_specs();
            let spec = specs[idx % specs.len()];
            let orbits = spec.enumerate_orbits(max, false).unwrap();
            // duplicate-free union
            let mut all = std::collections::BTreeSet::new();
            for o in &orbits {
                for &e in o.elems() {
                    prop_assert!(all.insert(e));
                }
            }
            // cardinality: elements of order dividing some N_d, counted once
            let mut expected = std::collections::BTreeSet::new();
            for d in 1..=max {
                let nd = spec.frobenius_modulus(d).unwrap();
                for k in 0..nd {
                    expected.insert(RootOfUnity::reduced(k, nd));
                }
            }
            prop_assert_eq!(all, expected);
        }
    }
}
