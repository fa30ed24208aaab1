//! φ-stable ideals of `𝔽[t]` under an affine automorphism `t ↦ αt + β`.
//!
//! With `t̃ = (α−1)t + β` one has `φ(t̃) = α·t̃`, so `(f)` is stable exactly when
//! `f(αs) ∈ 𝔽^*·f(s)` as a polynomial in `s = t̃`.

use super::IdealError;
use crate::field::{Field, FieldElement, FieldKind};
use crate::ring::{Automorphism, Monomial, Ring, RingElement};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly {
    field: Field,
    c: Vec<FieldElement>,
}

impl UPoly {
    pub fn new(field: &Field, mut c: Vec<FieldElement>) -> UPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly {
            field: field.clone(),
            c,
        }
    }

    pub fn from_ring(r: &RingElement) -> UPoly {
        let deg = r.degree_in(0).unwrap_or(0).max(0) as usize;
        let mut c = vec![r.field().zero(); deg + 1];
        for (m, v) in r.terms() {
            c[m.0[0] as usize] = v.clone();
        }
        UPoly::new(r.field(), c)
    }

    pub fn to_ring(&self, ring: &Ring) -> RingElement {
        ring.from_terms(
            self.c
                .iter()
                .enumerate()
                .map(|(i, v)| (Monomial(vec![i as i32]), v.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn lead(&self) -> &FieldElement {
        self.c.last().expect("nonzero")
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero lead");
        UPoly::new(&self.field, self.c.iter().map(|x| x * &inv).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        UPoly::new(
            &self.field,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::new(&self.field, vec![]);
        }
        let mut c = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UPoly::new(&self.field, c)
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv().expect("nonzero lead");
        let mut r = self.c.clone();
        let mut q = vec![self.field.zero(); self.c.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().expect("nonempty") * &inv;
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&f * b);
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (UPoly::new(&self.field, q), UPoly::new(&self.field, r))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            &self.field,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * &self.field.from_int(i as i64))
                .collect(),
        )
    }
}

/// Squarefree part (generator of the radical) of a univariate polynomial.
/// In characteristic `p` the factors of multiplicity divisible by `p` are
/// recovered through `p`-th roots, which are coefficientwise over `𝔽_p`.
pub fn squarefree_part(f: &RingElement) -> Result<RingElement, IdealError> {
    let ring = f.ring();
    if ring.nvars() != 1 || ring.has_laurent() {
        return Err(IdealError::UnsupportedRing(
            "radicals are computed in 𝔽[t] only".into(),
        ));
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    Ok(sqfree(&UPoly::from_ring(f)).to_ring(ring))
}

fn sqfree(f: &UPoly) -> UPoly {
    let one = UPoly::new(&f.field, vec![f.field.one()]);
    if f.degree().unwrap_or(0) == 0 {
        return one;
    }
    let d = f.derivative();
    if d.is_zero() {
        return sqfree(&pth_root(f));
    }
    let g = f.gcd(&d);
    let w = f.divrem(&g).0.monic();
    let mut u = g;
    loop {
        let c = u.gcd(&w);
        if c.degree() == Some(0) {
            break;
        }
        u = u.divrem(&c).0;
    }
    if u.degree().unwrap_or(0) == 0 {
        return w;
    }
    w.mul(&sqfree(&pth_root(&u))).monic()
}

/// `h` with `h(t)^p = f(t)`, for `f ∈ 𝔽_p[t^p]`.
fn pth_root(f: &UPoly) -> UPoly {
    let p = f.field.characteristic() as usize;
    UPoly::new(&f.field, f.c.iter().step_by(p).cloned().collect())
}

/// `(α, β)` with `φ(t) = αt + β`.
pub fn univariate_affine_parts(
    phi: &Automorphism,
) -> Result<(FieldElement, FieldElement), IdealError> {
    let ring = phi.ring();
    if ring.nvars() != 1 || ring.has_laurent() {
        return Err(IdealError::UnsupportedRing(format!(
            "expected 𝔽[t], got {} variables",
            ring.nvars()
        )));
    }
    let img = phi.image(0);
    if img.degree().unwrap_or(0) != 1 {
        return Err(IdealError::NotAffine);
    }
    let alpha = img.coeff(&Monomial(vec![1]));
    let beta = img.coeff(&Monomial(vec![0]));
    Ok((alpha, beta))
}

/// `t̃ = (α−1)t + β`, the eigenvector `φ(t̃) = α·t̃`.
pub fn t_tilde(phi: &Automorphism) -> Result<RingElement, IdealError> {
    let (alpha, beta) = univariate_affine_parts(phi)?;
    if alpha.is_one() {
        return Err(IdealError::AlphaIsOne);
    }
    let ring = phi.ring();
    Ok(&ring.var(0).scale(&(&alpha - &ring.field().one())) + &ring.scalar(beta))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnivariateRegime {
    /// `α` has infinite multiplicative order.
    NotRootOfUnity,
    /// `α` is a primitive `order`-th root of unity.
    RootOfUnity { order: u64 },
}

#[derive(Clone, Debug)]
pub struct UnivariateClassification {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub t_tilde: RingElement,
    pub regime: UnivariateRegime,
    /// The family of all φ-stable ideals, in terms of `t̃`.
    pub family: String,
    /// Monic generators of proper nonzero φ-stable ideals with degree at most `degree_bound`.
    pub listed: Vec<RingElement>,
    /// Whether `listed` is every such ideal (true for `𝔽_p` and for the non-root-of-unity regime).
    pub listing_complete: bool,
    /// Monic generators of maximal φ-stable ideals found within the bound.
    pub maximal: Vec<RingElement>,
    pub maximal_description: String,
    pub degree_bound: u32,
}

/// Cap on the number of candidates enumerated over a finite field.
const ENUMERATION_CAP: usize = 200_000;

pub fn classify_univariate(
    phi: &Automorphism,
    degree_bound: u32,
) -> Result<UnivariateClassification, IdealError> {
    let (alpha, beta) = univariate_affine_parts(phi)?;
    let tt = t_tilde(phi)?;
    let ring = phi.ring();
    let field = ring.field();
    let s = UPoly::from_ring(&tt);
    let pow_s = |n: u32| (0..n).fold(UPoly::new(field, vec![field.one()]), |acc, _| acc.mul(&s));
    let regime = match alpha.root_of_unity_order() {
        Some(l) => UnivariateRegime::RootOfUnity { order: l },
        None => UnivariateRegime::NotRootOfUnity,
    };
    let mut listed = Vec::new();
    let mut maximal = vec![tt.monic()];
    let (family, maximal_description, listing_complete) = match regime {
        UnivariateRegime::NotRootOfUnity => {
            listed.extend((1..=degree_bound).map(|n| pow_s(n).monic().to_ring(ring)));
            (
                "(0), (1) and (t̃^n) for n ≥ 1".to_string(),
                "(t̃)".to_string(),
                true,
            )
        }
        UnivariateRegime::RootOfUnity { order: l } => {
            let complete = match field.kind() {
                FieldKind::PrimeField(p) => enumerate_fp(
                    ring,
                    *p,
                    l as u32,
                    degree_bound,
                    &s,
                    &mut listed,
                    &mut maximal,
                ),
                _ => {
                    // Representative members only: t̃^n and t̃^n·(t̃^ℓ − 1)^k.
                    let one = UPoly::new(field, vec![field.one()]);
                    let g = pow_s(l as u32).sub(&one);
                    for n in 0..=degree_bound {
                        let mut h = pow_s(n);
                        let mut k = 0;
                        while h.degree().unwrap_or(0) as u32 <= degree_bound {
                            if h.degree().unwrap_or(0) > 0 {
                                listed.push(h.monic().to_ring(ring));
                            }
                            h = h.mul(&g);
                            k += 1;
                            if k > degree_bound {
                                break;
                            }
                        }
                    }
                    if l as u32 <= degree_bound {
                        maximal.push(g.monic().to_ring(ring));
                    }
                    false
                }
            };
            listed.sort_by_key(|g| (g.degree(), g.to_string()));
            listed.dedup();
            (
                format!("(0), (1) and (t̃^n·g(t̃^{l})) for n ≥ 0 and g with g(0) ≠ 0"),
                format!("(t̃) and (g(t̃^{l})) for g irreducible with g(0) ≠ 0"),
                complete,
            )
        }
    };
    Ok(UnivariateClassification {
        alpha,
        beta,
        t_tilde: tt,
        regime,
        family,
        listed,
        listing_complete,
        maximal,
        maximal_description,
        degree_bound,
    })
}

/// Lists every `t̃^n·g(t̃^ℓ)` over `𝔽_p` with `g` monic, `g(0) ≠ 0`, degree ≤ bound.
fn enumerate_fp(
    ring: &Ring,
    p: u64,
    l: u32,
    bound: u32,
    s: &UPoly,
    listed: &mut Vec<RingElement>,
    maximal: &mut Vec<RingElement>,
) -> bool {
    let field = ring.field();
    let max_m = bound / l;
    let count: u128 = (0..=max_m).map(|m| (p as u128).saturating_pow(m)).sum();
    if count * (bound as u128 + 1) > ENUMERATION_CAP as u128 {
        return false;
    }
    let s_l = (0..l).fold(UPoly::new(field, vec![field.one()]), |acc, _| acc.mul(s));
    for m in 0..=max_m {
        for g in monic_polys(field, p, m) {
            if m > 0 && g.c[0].is_zero() {
                continue;
            }
            let gs = compose(&g, &s_l);
            if m > 0 && is_irreducible(&g, p) {
                maximal.push(gs.monic().to_ring(ring));
            }
            let mut h = gs;
            while h.degree().unwrap_or(0) as u32 <= bound {
                if h.degree().unwrap_or(0) > 0 {
                    listed.push(h.monic().to_ring(ring));
                }
                h = h.mul(s);
            }
        }
    }
    true
}

fn compose(g: &UPoly, inner: &UPoly) -> UPoly {
    let mut acc = UPoly::new(&g.field, vec![]);
    for v in g.c.iter().rev() {
        acc = acc.mul(inner).sub(&UPoly::new(&g.field, vec![-v.clone()]));
    }
    acc
}

fn monic_polys(field: &Field, p: u64, m: u32) -> Vec<UPoly> {
    let total = p.pow(m);
    (0..total)
        .map(|mut k| {
            let mut c = Vec::with_capacity(m as usize + 1);
            for _ in 0..m {
                c.push(field.from_int((k % p) as i64));
                k /= p;
            }
            c.push(field.one());
            UPoly::new(field, c)
        })
        .collect()
}

fn is_irreducible(g: &UPoly, p: u64) -> bool {
    let d = g.degree().unwrap_or(0) as u32;
    (1..=d / 2).all(|k| {
        monic_polys(&g.field, p, k)
            .iter()
            .all(|h| !g.divrem(h).1.is_zero())
    })
}

/// Stable ideals when `α = 1` (`φ(t) = t + β`).
pub fn shift_regime_description(phi: &Automorphism) -> Result<String, IdealError> {
    let (alpha, beta) = univariate_affine_parts(phi)?;
    if !alpha.is_one() {
        return Err(IdealError::InternalConsistency("not a shift".into()));
    }
    let p = phi.ring().field().characteristic();
    Ok(if beta.is_zero() {
        "φ is the identity: every ideal is φ-stable".to_string()
    } else if p == 0 {
        "only (0) and (1)".to_string()
    } else {
        format!("(g(t^{p} − β^{}·t)) for g ∈ 𝔽[u], with β = {beta}", p - 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(f: &Field) -> Ring {
        Ring::polynomial(f.clone(), &["t"]).unwrap()
    }

    #[test]
    fn squarefree_char_zero_and_p() {
        let f = Field::rationals();
        let r = ring(&f);
        let t = r.var(0);
        let g = &(&t - &r.one()).pow(3) * &(&t + &r.from_int(2));
        assert_eq!(
            squarefree_part(&g).unwrap(),
            (&(&t - &r.one()) * &(&t + &r.from_int(2))).monic()
        );
        let f3 = Field::prime(3).unwrap();
        let r3 = ring(&f3);
        let t3 = r3.var(0);
        // (t^3 - t)^3 · (t+1)^4 has radical t^3 - t.
        let g = &(&t3.pow(3) - &t3).pow(3) * &(&t3 + &r3.one()).pow(4);
        assert_eq!(squarefree_part(&g).unwrap(), &t3.pow(3) - &t3);
    }

    #[test]
    fn quantum_plane_generic() {
        let f = Field::rational_functions("q").unwrap();
        let r = ring(&f);
        let q = f.generator().unwrap();
        let phi = Automorphism::new(&r, vec![r.var(0).scale(&q)]).unwrap();
        let c = classify_univariate(&phi, 3).unwrap();
        assert_eq!(c.regime, UnivariateRegime::NotRootOfUnity);
        assert_eq!(
            c.listed.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            ["t", "t^2", "t^3"]
        );
        assert!(c.listing_complete);
    }

    #[test]
    fn finite_field_enumeration_matches_brute_force() {
        let f = Field::prime(5).unwrap();
        let r = ring(&f);
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![&t.scale(&f.from_int(4)) + &r.from_int(1)]).unwrap();
        let c = classify_univariate(&phi, 4).unwrap();
        assert_eq!(c.regime, UnivariateRegime::RootOfUnity { order: 2 });
        assert!(c.listing_complete);
        // Brute force: every monic polynomial of degree 1..=4 with φ(f) ∈ 𝔽^*·f.
        let mut brute = Vec::new();
        for d in 1..=4u32 {
            for g in monic_polys(&f, 5, d) {
                let gr = g.to_ring(&r);
                let img = phi.apply(&gr);
                if img.monic() == gr {
                    brute.push(gr);
                }
            }
        }
        brute.sort_by_key(|g| (g.degree(), g.to_string()));
        assert_eq!(c.listed, brute);
    }

    #[test]
    fn alpha_one_rejected() {
        let f = Field::rationals();
        let r = ring(&f);
        let phi = Automorphism::new(&r, vec![&r.var(0) - &r.one()]).unwrap();
        assert!(matches!(
            classify_univariate(&phi, 2),
            Err(IdealError::AlphaIsOne)
        ));
        assert_eq!(shift_regime_description(&phi).unwrap(), "only (0) and (1)");
    }
}
