//! The action of `Z(G̃) ⋊ O(G̃)` on labels, stabilizer computations, and
//! the restriction-multiplicity formulas.
//!
//! `Z(G̃)` is cyclic of order `q - ε` and acts on eigenvalues by
//! translation; the outer group `O(G̃) = ⟨F_p, γ₀⟩` acts by `x ↦ px` and
//! negation. Both commute with the Frobenius on the relevant fractions,
//! so orbits map to orbits and the induced action on labels transports
//! the multipartition along the orbit bijection.
//!
//! The infinite group `O(G̃)` acts on any finite label set through a
//! finite quotient: with `M` the lcm of all denominators in sight, the
//! action factors through the subgroup of `(ℤ/M)^×` generated by `p` and
//! `-1`. Stabilizers are computed by exhaustive test over that quotient.

use num_integer::Integer;
use serde::Serialize;

use crate::cyclotomic::{ell_part, ell_prime_part, mul_mod, pow_mod, GroupSpec, RootOfUnity};
use crate::error::{Error, Result};
use crate::labels::{unipotent_support, IrrLabel, MultiPartitionLabel, SemisimpleClassLabel};

/// An element of the centre, encoded by its eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CentralElement {
    pub eigen: RootOfUnity,
}

impl CentralElement {
    pub fn identity() -> Self {
        CentralElement {
            eigen: RootOfUnity::one(),
        }
    }

    pub fn new(spec: &GroupSpec, eigen: RootOfUnity) -> Result<Self> {
        if !(spec.center_order() as u128).is_multiple_of(eigen.order()) {
            return Err(Error::InvalidSpec(format!(
                "central eigenvalue {eigen} has order not dividing {}",
                spec.center_order()
            )));
        }
        Ok(CentralElement { eigen })
    }
}

/// A word in the outer generators: `γ₀^inv F_p^fp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OuterElement {
    /// Exponent of the field automorphism `F_p`.
    pub fp: u64,
    /// Whether the transpose-inverse automorphism is applied.
    pub inv: bool,
}

impl OuterElement {
    pub fn identity() -> Self {
        OuterElement { fp: 0, inv: false }
    }

    fn apply(&self, spec: &GroupSpec, x: RootOfUnity) -> RootOfUnity {
        let y = if self.inv { x.neg() } else { x };
        let den = y.order();
        y.scale(pow_mod(spec.p as u128, self.fp as u128, den))
    }
}

/// An element `z·F₀` of `Z(G̃) ⋊ O(G̃)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ZOElement {
    pub z: CentralElement,
    #[serde(flatten)]
    pub f: OuterElement,
}

impl ZOElement {
    pub fn identity() -> Self {
        ZOElement {
            z: CentralElement::identity(),
            f: OuterElement::identity(),
        }
    }

    pub fn central(z: CentralElement) -> Self {
        ZOElement {
            z,
            f: OuterElement::identity(),
        }
    }

    pub fn outer(fp: u64, inv: bool) -> Self {
        ZOElement {
            z: CentralElement::identity(),
            f: OuterElement { fp, inv },
        }
    }

    /// Semidirect product: `(z₁F₁)(z₂F₂) = (z₁ + F₁(z₂)) (F₁F₂)`.
    pub fn compose(&self, spec: &GroupSpec, other: &ZOElement) -> ZOElement {
        let moved = self.f.apply(spec, other.z.eigen);
        let z = self
            .z
            .eigen
            .add(moved)
            .expect("central denominators are small");
        ZOElement {
            z: CentralElement { eigen: z },
            f: OuterElement {
                fp: self.f.fp + other.f.fp,
                inv: self.f.inv ^ other.f.inv,
            },
        }
    }
}

/// Apply `zF₀` to an eigenvalue: outer part first, then the central
/// translation, matching `zF₀(ξ) = z · F₀(ξ)`.
pub fn act_on_eigenvalue(spec: &GroupSpec, g: &ZOElement, x: RootOfUnity) -> RootOfUnity {
    let y = g.f.apply(spec, x);
    y.add(g.z.eigen).expect("eigenvalue denominators are small")
}

/// The induced action on character labels: the spectrum is translated and
/// twisted orbit-wise and the multipartition is transported along the
/// induced orbit bijection.
pub fn act_on_label(spec: &GroupSpec, g: &ZOElement, chi: &IrrLabel) -> IrrLabel {
    let mut entries = Vec::with_capacity(chi.ss.entries().len());
    let mut assign = Vec::with_capacity(entries.capacity());
    for ((orbit, mult), (_, part)) in chi.ss.entries().iter().zip(chi.mp.assign()) {
        let image = spec.orbit_of(act_on_eigenvalue(spec, g, orbit.rep()));
        entries.push((image.clone(), *mult));
        assign.push((image, part.clone()));
    }
    IrrLabel::new(
        SemisimpleClassLabel::new(entries)
            .expect("a bijection maps disjoint orbits to disjoint orbits"),
        MultiPartitionLabel::new(assign),
    )
    .expect("transport preserves the companion invariant")
}

/// Order (with its `ell`/`ell'` parts) of the stabilizer of a label under
/// the translation action of the centre. The fixed set is a subgroup of a
/// cyclic group, so the order determines it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZStabilizer {
    pub order: u64,
    pub ell_part: u64,
    pub ell_prime_part: u64,
}

pub fn stabilizer_in_z(spec: &GroupSpec, chi: &IrrLabel) -> ZStabilizer {
    let c = spec.center_order();
    let mut order = 0;
    for j in 0..c {
        let z = CentralElement {
            eigen: RootOfUnity::reduced(j as u128, c as u128),
        };
        if act_on_label(spec, &ZOElement::central(z), chi) == *chi {
            order += 1;
        }
    }
    ZStabilizer {
        order,
        ell_part: ell_part(order, spec.ell),
        ell_prime_part: ell_prime_part(order, spec.ell),
    }
}

/// `κ_G(χ̃)`: the number of irreducible constituents of the restriction
/// to the special subgroup. Restriction along a cyclic quotient is
/// multiplicity-free, so this is the order of the central stabilizer.
pub fn kappa_ordinary(spec: &GroupSpec, chi: &IrrLabel) -> u64 {
    stabilizer_in_z(spec, chi).order
}

/// `κ_G(η̃)` for the Brauer character behind a basic-set label: the
/// `ell'`-part comes from the central stabilizer of the label, the
/// `ell`-part from `gcd(q - ε, parts of the unipotent support)`.
pub fn kappa_brauer_of_basic(spec: &GroupSpec, chi: &IrrLabel) -> Result<u64> {
    if !chi.ss.is_ell_prime(spec.ell) {
        return Err(Error::NotEllPrime);
    }
    let stab = stabilizer_in_z(spec, chi);
    Ok(stab.ell_prime_part * ell_part(support_gcd(spec, chi), spec.ell))
}

/// `gcd(q - ε, all parts of all partitions of the unipotent support)`.
pub fn support_gcd(spec: &GroupSpec, chi: &IrrLabel) -> u64 {
    let sup = unipotent_support(spec, chi);
    sup.support
        .assign()
        .iter()
        .fold(spec.center_order(), |g, (_, p)| g.gcd(&p.gcd_parts()))
}

/// The finite quotient through which `Z(G̃) ⋊ O(G̃)` (or its
/// `ell'`-central variant) acts on a given set of labels.
#[derive(Debug, Clone)]
pub struct ZoQuotient {
    /// lcm of `q - ε` and every denominator in the label set.
    pub modulus: u128,
    /// Order of the central part (`q - ε`, or its `ell'`-part).
    pub central_order: u64,
    /// Distinct multipliers `±p^k mod M`, tagged with a canonical word.
    outer: Vec<OuterRep>,
}

#[derive(Debug, Clone, Copy)]
struct OuterRep {
    k: u64,
    inv: bool,
    multiplier: u128,
}

impl ZoQuotient {
    pub fn new(spec: &GroupSpec, labels: &[&IrrLabel], ell_prime_central: bool) -> Result<Self> {
        let mut modulus: u128 = spec.center_order() as u128;
        for chi in labels {
            for (orbit, _) in chi.ss.entries() {
                let den = orbit.rep().order();
                let g = modulus.gcd(&den);
                modulus = (modulus / g)
                    .checked_mul(den)
                    .ok_or_else(|| Error::Overflow("label denominator lcm".into()))?;
            }
        }
        let central_order = if ell_prime_central {
            ell_prime_part(spec.center_order(), spec.ell)
        } else {
            spec.center_order()
        };

        // multiplicative order of p mod M
        let p = spec.p as u128 % modulus;
        let mut r = 1u64;
        if modulus > 1 {
            let mut acc = p;
            while acc != 1 {
                acc = mul_mod(acc, p, modulus);
                r += 1;
            }
        }
        let mut outer = Vec::new();
        for k in 0..r {
            for inv in [false, true] {
                let mut m = pow_mod(p, k as u128, modulus);
                if inv {
                    m = (modulus - m) % modulus;
                }
                if modulus == 1 {
                    m = 0;
                }
                if !outer.iter().any(|o: &OuterRep| o.multiplier == m) {
                    outer.push(OuterRep {
                        k,
                        inv,
                        multiplier: m,
                    });
                }
            }
        }
        Ok(ZoQuotient {
            modulus,
            central_order,
            outer,
        })
    }

    pub fn order(&self) -> u64 {
        self.central_order * self.outer.len() as u64
    }

    /// Every element of the quotient, as concrete group elements.
    pub fn elements(&self) -> Vec<ZOElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        for o in &self.outer {
            for j in 0..self.central_order {
                out.push(ZOElement {
                    z: CentralElement {
                        eigen: RootOfUnity::reduced(j as u128, self.central_order as u128),
                    },
                    f: OuterElement {
                        fp: o.k,
                        inv: o.inv,
                    },
                });
            }
        }
        out
    }

    /// Generators of the quotient: the canonical central generator, `F_p`
    /// and `γ₀`.
    pub fn generators(&self) -> Vec<ZOElement> {
        let mut gens = Vec::new();
        if self.central_order > 1 {
            gens.push(ZOElement::central(CentralElement {
                eigen: RootOfUnity::reduced(1, self.central_order as u128),
            }));
        }
        gens.push(ZOElement::outer(1, false));
        gens.push(ZOElement::outer(0, true));
        gens
    }

    /// Exhaustive stabilizer of a label, as a canonical sorted element
    /// list. Equality of stabilizers of two labels is equality of these
    /// lists over a common quotient.
    pub fn stabilizer(&self, spec: &GroupSpec, chi: &IrrLabel) -> ZoStabilizer {
        let mut elements: Vec<ZOElement> = self
            .elements()
            .into_iter()
            .filter(|g| act_on_label(spec, g, chi) == *chi)
            .collect();
        elements.sort();
        ZoStabilizer {
            order: elements.len() as u64,
            elements,
        }
    }
}

/// A stabilizer inside a [`ZoQuotient`]: full sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZoStabilizer {
    pub order: u64,
    pub elements: Vec<ZOElement>,
}

/// Group-action law checks over every label of a spec, used by the
/// verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct ActionLawReport {
    pub labels_tested: usize,
    pub identity_ok: bool,
    pub composition_ok: bool,
    pub kappa_constant_on_orbits: bool,
    pub support_equivariant: bool,
    pub kappa_divides_center: bool,
    pub ell_stabilizer_trivial_on_ell_prime: bool,
}

impl ActionLawReport {
    pub fn pass(&self) -> bool {
        self.identity_ok
            && self.composition_ok
            && self.kappa_constant_on_orbits
            && self.support_equivariant
            && self.kappa_divides_center
            && self.ell_stabilizer_trivial_on_ell_prime
    }
}

/// Run the action-law suite on all labels of the spec: identity,
/// composition of generator pairs, constancy of `κ` along orbits,
/// equivariance of the unipotent support, and the divisibility facts.
pub fn check_action_laws(spec: &GroupSpec) -> Result<ActionLawReport> {
    let labels = crate::labels::enumerate_irr_labels(spec)?;
    let refs: Vec<&IrrLabel> = labels.iter().collect();
    let quotient = ZoQuotient::new(spec, &refs, false)?;
    let gens = quotient.generators();

    let mut report = ActionLawReport {
        labels_tested: labels.len(),
        identity_ok: true,
        composition_ok: true,
        kappa_constant_on_orbits: true,
        support_equivariant: true,
        kappa_divides_center: true,
        ell_stabilizer_trivial_on_ell_prime: true,
    };
    let id = ZOElement::identity();
    for chi in &labels {
        if act_on_label(spec, &id, chi) != *chi {
            report.identity_ok = false;
        }
        let kappa = kappa_ordinary(spec, chi);
        if !spec.center_order().is_multiple_of(kappa) {
            report.kappa_divides_center = false;
        }
        if chi.ss.is_ell_prime(spec.ell) && stabilizer_in_z(spec, chi).ell_part != 1 {
            report.ell_stabilizer_trivial_on_ell_prime = false;
        }
        for g in &gens {
            let image = act_on_label(spec, g, chi);
            if kappa_ordinary(spec, &image) != kappa {
                report.kappa_constant_on_orbits = false;
            }
            // support of the image = image of the support under the
            // ell'-part of the same element
            let sup = unipotent_support(spec, chi);
            let sup_img = unipotent_support(spec, &image);
            let (z_lp, _) = spec.ell_split(g.z.eigen);
            let g_lp = ZOElement {
                z: CentralElement { eigen: z_lp },
                f: g.f,
            };
            let transported = act_on_label(
                spec,
                &g_lp,
                &IrrLabel::new(sup.s, sup.support).expect("support is a valid label"),
            );
            if transported.ss != sup_img.s || transported.mp != sup_img.support {
                report.support_equivariant = false;
            }
            for h in &gens {
                let gh = g.compose(spec, h);
                if act_on_label(spec, &gh, chi)
                    != act_on_label(spec, g, &act_on_label(spec, h, chi))
                {
                    report.composition_ok = false;
                }
            }
        }
    }
    Ok(report)
}
