//! Ideals of the base ring: membership with certificates, φ-stability,
//! φ-stable closure, the univariate classification and central generation.
//!
//! Laurent generators `K_j^{±1}` are handled by working in
//! `𝔽[x, y] / (y·∏K_j − 1)`, so every ideal is an ordinary polynomial ideal
//! containing that relation.

mod central;
pub(crate) mod groebner;
mod univariate;

pub use central::central_generators;
pub use groebner::TermOrder;
pub use univariate::{
    classify_univariate, shift_regime_description, squarefree_part, t_tilde,
    univariate_affine_parts, UnivariateClassification, UnivariateRegime,
};

use crate::field::FieldElement;
use crate::ring::{Automorphism, Monomial, Ring, RingElement, RingError};
use groebner::{GroebnerBasis, Poly};
use std::fmt;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// Upper bound on rounds of `J ← J + Σ φ_i^{±1}(J)`.
pub const CLOSURE_ROUNDS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("ideal is not φ-stable: φ_{phi}({generator}) is not a member")]
    NotPhiStable { phi: usize, generator: String },
    #[error("φ-stable closure did not stabilise within {0} rounds")]
    ClosureDidNotStabilize(usize),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("automorphism is not of the form t ↦ αt + β")]
    NotAffine,
    #[error("α = 1: the shift regime has no t̃; use the shift description instead")]
    AlphaIsOne,
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

/// Expression `r = Σ cofactors[j]·generators[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub cofactors: Vec<RingElement>,
}

impl Certificate {
    /// Re-expands the combination and compares with `r`.
    pub fn verify(&self, r: &RingElement, generators: &[RingElement]) -> bool {
        if self.cofactors.len() != generators.len() {
            return false;
        }
        let sum = self
            .cofactors
            .iter()
            .zip(generators)
            .fold(r.ring().zero(), |acc, (c, g)| &acc + &(c * g));
        sum == *r
    }
}

/// Conversion between a (Laurent) ring and its polynomial model.
#[derive(Clone, Debug)]
pub(crate) struct PolyModel {
    pub ring: Ring,
    pub laurent: Vec<usize>,
}

impl PolyModel {
    pub fn new(ring: &Ring) -> PolyModel {
        PolyModel {
            ring: ring.clone(),
            laurent: (0..ring.nvars()).filter(|&i| ring.is_laurent(i)).collect(),
        }
    }

    /// Number of polynomial variables (one extra for the inverse of ∏K_j).
    pub fn nvars(&self) -> usize {
        self.ring.nvars() + usize::from(!self.laurent.is_empty())
    }

    pub fn to_exps(&self, m: &Monomial) -> Vec<i32> {
        let n = self.ring.nvars();
        let k = self
            .laurent
            .iter()
            .map(|&i| (-m.0[i]).max(0))
            .max()
            .unwrap_or(0);
        let mut e = m.0.clone();
        for &i in &self.laurent {
            e[i] += k;
        }
        if !self.laurent.is_empty() {
            e.push(k);
        }
        debug_assert_eq!(e.len(), self.nvars());
        debug_assert!(e[..n].iter().all(|&x| x >= 0));
        e
    }

    pub fn from_exps(&self, e: &[i32]) -> Monomial {
        let n = self.ring.nvars();
        let mut m = e[..n].to_vec();
        if !self.laurent.is_empty() {
            for &i in &self.laurent {
                m[i] -= e[n];
            }
        }
        Monomial(m)
    }

    pub fn to_poly(&self, r: &RingElement, order: TermOrder) -> Poly {
        Poly::from_terms(
            order,
            r.terms()
                .map(|(m, c)| (self.to_exps(m), c.clone()))
                .collect(),
        )
    }

    pub fn from_poly(&self, p: &Poly) -> RingElement {
        self.ring
            .from_terms(p.terms.iter().map(|(e, c)| (self.from_exps(e), c.clone())))
    }

    /// `y·∏K_j − 1`, when there are Laurent generators.
    pub fn relation(&self, order: TermOrder) -> Option<Poly> {
        if self.laurent.is_empty() {
            return None;
        }
        let mut e = vec![0; self.nvars()];
        for &i in &self.laurent {
            e[i] = 1;
        }
        e[self.ring.nvars()] = 1;
        let f = self.ring.field();
        Some(Poly::from_terms(
            order,
            vec![(e, f.one()), (vec![0; self.nvars()], -f.one())],
        ))
    }
}

/// An ideal of the base ring with its reduced Gröbner basis (degrevlex).
#[derive(Clone)]
pub struct Ideal {
    model: PolyModel,
    generators: Vec<RingElement>,
    gb: Arc<GroebnerBasis>,
    tracked: Arc<OnceLock<GroebnerBasis>>,
}

const ORDER: TermOrder = TermOrder::DegRevLex;

impl Ideal {
    pub fn new(ring: &Ring, generators: Vec<RingElement>) -> Result<Ideal, IdealError> {
        if generators.iter().any(|g| g.ring() != ring) {
            return Err(RingError::RingMismatch.into());
        }
        let model = PolyModel::new(ring);
        let polys = Self::input_polys(&model, &generators);
        let gb = GroebnerBasis::compute(ring.field(), model.nvars(), ORDER, polys, false);
        Ok(Ideal {
            model,
            generators,
            gb: Arc::new(gb),
            tracked: Arc::new(OnceLock::new()),
        })
    }

    fn input_polys(model: &PolyModel, generators: &[RingElement]) -> Vec<Poly> {
        let mut polys: Vec<Poly> = generators.iter().map(|g| model.to_poly(g, ORDER)).collect();
        polys.extend(model.relation(ORDER));
        polys
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("zero ideal")
    }

    pub fn ring(&self) -> &Ring {
        &self.model.ring
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.generators
    }

    pub(crate) fn model(&self) -> &PolyModel {
        &self.model
    }

    pub(crate) fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    fn tracked(&self) -> &GroebnerBasis {
        self.tracked.get_or_init(|| {
            let polys = Self::input_polys(&self.model, &self.generators);
            GroebnerBasis::compute(self.ring().field(), self.model.nvars(), ORDER, polys, true)
        })
    }

    /// Reduced Gröbner basis mapped back to the ring (a canonical generating set).
    pub fn basis(&self) -> Vec<RingElement> {
        self.gb
            .basis
            .iter()
            .map(|g| self.model.from_poly(&g.poly))
            .filter(|r| !r.is_zero())
            .map(|r| r.monic())
            .collect()
    }

    /// `basis()` with each generator divided by the largest monomial in the
    /// Laurent variables that divides it, duplicates removed. Used for display.
    pub fn display_generators(&self) -> Vec<RingElement> {
        let ring = self.ring();
        let mut out: Vec<RingElement> = Vec::new();
        for g in self.basis() {
            let shift: Vec<i32> = (0..ring.nvars())
                .map(|i| {
                    if ring.is_laurent(i) {
                        -g.terms().map(|(m, _)| m.0[i]).min().unwrap_or(0)
                    } else {
                        0
                    }
                })
                .collect();
            let h = g.shift(&Monomial(shift)).monic();
            if !out.contains(&h) {
                out.push(h);
            }
        }
        out
    }

    pub fn is_unit(&self) -> bool {
        self.gb.is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.basis().is_empty()
    }

    pub fn contains(&self, r: &RingElement) -> bool {
        self.gb.normal_form(&self.model.to_poly(r, ORDER)).is_zero()
    }

    /// Membership with an explicit combination of the input generators.
    pub fn membership(&self, r: &RingElement) -> Option<Certificate> {
        if !self.contains(r) {
            return None;
        }
        let cof = self.tracked().lift(&self.model.to_poly(r, ORDER))?;
        let cofactors = cof
            .iter()
            .take(self.generators.len())
            .map(|p| self.model.from_poly(p))
            .collect();
        Some(Certificate { cofactors })
    }

    /// Canonical representative of `r` modulo the ideal.
    pub fn normal_form(&self, r: &RingElement) -> RingElement {
        self.model
            .from_poly(&self.gb.normal_form(&self.model.to_poly(r, ORDER)))
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Basis monomials of `R/J` when it is finite-dimensional.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        self.gb
            .standard_monomials()
            .map(|v| v.iter().map(|e| self.model.from_exps(e)).collect())
    }

    /// Coordinates of `r mod J` in the basis of [`Ideal::standard_monomials`].
    pub fn coordinates(&self, r: &RingElement) -> Option<Vec<FieldElement>> {
        let std = self.gb.standard_monomials()?;
        let nf = self.gb.normal_form(&self.model.to_poly(r, ORDER));
        let f = self.ring().field();
        Some(
            std.iter()
                .map(|e| {
                    nf.terms
                        .iter()
                        .find(|(m, _)| m == e)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(|| f.zero())
                })
                .collect(),
        )
    }

    pub fn quotient_dimension(&self) -> Option<usize> {
        self.gb.standard_monomials().map(|v| v.len())
    }

    /// Sum with further generators.
    pub fn extend(&self, more: &[RingElement]) -> Result<Ideal, IdealError> {
        let mut g = self.basis();
        g.extend_from_slice(more);
        Ideal::new(self.ring(), g)
    }

    pub fn map(&self, phi: &Automorphism) -> Result<Ideal, IdealError> {
        Ideal::new(
            self.ring(),
            self.generators.iter().map(|g| phi.apply(g)).collect(),
        )
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.model.ring == other.model.ring
            && self.gb.basis.len() == other.gb.basis.len()
            && self
                .gb
                .basis
                .iter()
                .zip(&other.gb.basis)
                .all(|(a, b)| a.poly == b.poly)
    }
}
impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self
            .display_generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        write!(
            f,
            "({})",
            if b.is_empty() {
                "0".to_string()
            } else {
                b.join(", ")
            }
        )
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An ideal `Q` with `φ_i(Q) ⊆ Q` for every automorphism of the presentation.
#[derive(Clone, PartialEq, Eq)]
pub struct PhiStableIdeal {
    ideal: Ideal,
    phis: Vec<Automorphism>,
}

impl PhiStableIdeal {
    pub fn new(ideal: Ideal, phis: &[Automorphism]) -> Result<PhiStableIdeal, IdealError> {
        if let Some((phi, g)) = unstable_witness(&ideal, phis) {
            return Err(IdealError::NotPhiStable {
                phi,
                generator: g.to_string(),
            });
        }
        Ok(PhiStableIdeal {
            ideal,
            phis: phis.to_vec(),
        })
    }

    pub fn from_generators(
        ring: &Ring,
        gens: Vec<RingElement>,
        phis: &[Automorphism],
    ) -> Result<PhiStableIdeal, IdealError> {
        PhiStableIdeal::new(Ideal::new(ring, gens)?, phis)
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn phis(&self) -> &[Automorphism] {
        &self.phis
    }

    /// Membership witnesses `φ_i(g_j) = Σ c·g` for every generator and automorphism.
    pub fn stability_certificates(&self) -> Vec<Vec<Certificate>> {
        self.phis
            .iter()
            .map(|p| {
                self.ideal
                    .generators()
                    .iter()
                    .map(|g| {
                        self.ideal
                            .membership(&p.apply(g))
                            .expect("stability verified at construction")
                    })
                    .collect()
            })
            .collect()
    }
}

impl std::ops::Deref for PhiStableIdeal {
    type Target = Ideal;
    fn deref(&self) -> &Ideal {
        &self.ideal
    }
}

impl fmt::Display for PhiStableIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

impl fmt::Debug for PhiStableIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

fn unstable_witness<'a>(
    ideal: &'a Ideal,
    phis: &[Automorphism],
) -> Option<(usize, &'a RingElement)> {
    for (i, p) in phis.iter().enumerate() {
        for g in ideal.generators() {
            if !ideal.contains(&p.apply(g)) {
                return Some((i, g));
            }
        }
    }
    None
}

pub fn is_phi_stable(ideal: &Ideal, phis: &[Automorphism]) -> bool {
    unstable_witness(ideal, phis).is_none()
}

/// Smallest φ-stable ideal containing `gens`.
pub fn phi_stable_closure(
    ring: &Ring,
    gens: Vec<RingElement>,
    phis: &[Automorphism],
) -> Result<PhiStableIdeal, IdealError> {
    let mut ideal = Ideal::new(ring, gens)?;
    for _ in 0..CLOSURE_ROUNDS {
        let basis = ideal.basis();
        let mut new = Vec::new();
        for g in &basis {
            for p in phis {
                for img in [p.apply(g), p.apply_inverse(g)] {
                    if !ideal.contains(&img) {
                        new.push(img);
                    }
                }
            }
        }
        if new.is_empty() {
            let canonical = Ideal::new(ring, basis)?;
            return PhiStableIdeal::new(canonical, phis);
        }
        ideal = ideal.extend(&new)?;
    }
    Err(IdealError::ClosureDidNotStabilize(CLOSURE_ROUNDS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn laurent_membership_and_certificates() {
        let f = Field::rationals();
        let r = Ring::new(f.clone(), vec!["c".into(), "K".into()], vec![false, true]).unwrap();
        let (c, k) = (r.var(0), r.var(1));
        let kinv = k.inverse().unwrap();
        // (K^3 - 8): K^{-3} - 1/8 belongs.
        let j = Ideal::new(&r, vec![&k.pow(3) - &r.from_int(8)]).unwrap();
        let eighth = r.scalar(f.from_int(8).inv().unwrap());
        let target = &kinv.pow(3) - &eighth;
        let cert = j.membership(&target).expect("member");
        assert!(cert.verify(&target, j.generators()));
        assert!(!j.contains(&c));
        assert_eq!(j.quotient_dimension(), None);
        let jc = j.extend(std::slice::from_ref(&c)).unwrap();
        assert_eq!(jc.quotient_dimension(), Some(3));
        // K^{-1} and K^2/8 agree modulo the ideal.
        let k2 = k.pow(2).scale(&f.from_int(8).inv().unwrap());
        assert_eq!(j.normal_form(&kinv), j.normal_form(&k2));
    }

    #[test]
    fn closure_reaches_unit_in_weyl() {
        let f = Field::rationals();
        let r = Ring::polynomial(f, &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![&t - &r.one()]).unwrap();
        let j = phi_stable_closure(&r, vec![t.pow(2)], &[phi]).unwrap();
        assert!(j.is_unit());
    }

    #[test]
    fn rejects_unstable() {
        let f = Field::rationals();
        let r = Ring::polynomial(f.clone(), &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![t.scale(&f.from_int(2))]).unwrap();
        assert!(
            PhiStableIdeal::from_generators(&r, vec![t.pow(2)], std::slice::from_ref(&phi)).is_ok()
        );
        let bad = PhiStableIdeal::from_generators(&r, vec![&t - &r.one()], &[phi]);
        assert!(matches!(bad, Err(IdealError::NotPhiStable { phi: 0, .. })));
    }

    #[test]
    fn ideal_equality_is_canonical() {
        let f = Field::prime(5).unwrap();
        let r = Ring::polynomial(f, &["h", "c"]).unwrap();
        let (h, c) = (r.var(0), r.var(1));
        let a = Ideal::new(&r, vec![&c - &r.one(), &h.pow(5) - &h]).unwrap();
        let b = Ideal::new(
            &r,
            vec![&(&c - &r.one()) + &(&h.pow(5) - &h), &h.pow(5) - &h],
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(c+4, h^5-h)");
    }
}
