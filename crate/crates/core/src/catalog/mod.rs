//! Concrete algebra families and the explicit Whittaker modules attached to them.

mod facts;
mod theorems;

pub use facts::{
    brute_force_stable_ideals, is_centrally_generated, verify_family_facts, Fact, FactReport,
};
pub use theorems::{
    build_theorem_module, default_grid, Claim, ClaimsReport, TheoremId, TheoremModule, TheoremSpec,
};

use crate::field::{Field, FieldElement, FieldError};
use crate::gwa::{Gwa, GwaError};
use crate::ideals::IdealError;
use crate::ring::{Automorphism, Ring, RingElement, RingError};
use crate::whittaker::WhittakerError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("r(x+1) - r(x) = 2s(x) needs division by {needed}, impossible in characteristic {characteristic}")]
    TelescopingUnsolvable { needed: usize, characteristic: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Gwa(#[from] GwaError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Whittaker(#[from] WhittakerError),
}

/// A parameterised family of generalized Weyl algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `A_n`: `R = 𝔽[t_1..t_n]`, `φ_i(t_j) = t_j − δ_ij`.
    Weyl {
        field: Field,
        n: usize,
    },
    /// `R = 𝔽[t_1..t_n, c]`, `φ_i(t_j) = t_j − δ_ij c`.
    Heisenberg {
        field: Field,
        n: usize,
    },
    /// `φ(t) = q t`.
    QuantumPlane {
        q: FieldElement,
    },
    /// `A_{q,1}`: `φ(t) = q^{-1}(t − 1)`.
    QuantumWeyl {
        q: FieldElement,
    },
    /// `φ(t) = αt + β`.
    UnivariateAffine {
        alpha: FieldElement,
        beta: FieldElement,
    },
    /// `he − eh = e`, `hf − fh = −f`, `ef − fe = s(h)`; `s` by ascending coefficients.
    Smith {
        field: Field,
        s: Vec<FieldElement>,
    },
    /// `EF − FE = (K^m − K^{-m})/(q − q^{-1})`.
    QuantumSmith {
        m: u32,
        q: FieldElement,
    },
    Uqsl2 {
        q: FieldElement,
    },
}

impl FamilySpec {
    pub fn field(&self) -> Field {
        match self {
            FamilySpec::Weyl { field, .. }
            | FamilySpec::Heisenberg { field, .. }
            | FamilySpec::Smith { field, .. } => field.clone(),
            FamilySpec::QuantumPlane { q }
            | FamilySpec::QuantumWeyl { q }
            | FamilySpec::QuantumSmith { q, .. }
            | FamilySpec::Uqsl2 { q } => q.field().clone(),
            FamilySpec::UnivariateAffine { alpha, .. } => alpha.field().clone(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            FamilySpec::Weyl { n, .. } => format!("A_{n}"),
            FamilySpec::Heisenberg { n, .. } => format!("Heisenberg({n})"),
            FamilySpec::QuantumPlane { q } => format!("quantum plane(q={q})"),
            FamilySpec::QuantumWeyl { q } => format!("A_(q,1)(q={q})"),
            FamilySpec::UnivariateAffine { alpha, beta } => {
                format!("F[t], phi(t)={alpha}*t+{beta}")
            }
            FamilySpec::Smith { field, s } => {
                let ring = Ring::polynomial(field.clone(), &["h"]).expect("valid ring");
                format!("Smith(s={})", poly_in(&ring, 0, s))
            }
            FamilySpec::QuantumSmith { m, q } => format!("quantum Smith(m={m}, q={q})"),
            FamilySpec::Uqsl2 { q } => format!("U_q(sl2)(q={q})"),
        }
    }
}

/// `Σ c_k x_var^k`.
pub(crate) fn poly_in(ring: &Ring, var: usize, coeffs: &[FieldElement]) -> RingElement {
    let x = ring.var(var);
    coeffs
        .iter()
        .enumerate()
        .fold(ring.zero(), |acc, (k, c)| &acc + &x.pow(k as u32).scale(c))
}

/// `p(x)` evaluated at a field element.
pub(crate) fn eval_poly(coeffs: &[FieldElement], x: &FieldElement) -> FieldElement {
    coeffs
        .iter()
        .rev()
        .fold(x.field().zero(), |acc, c| &(&acc * x) + c)
}

fn binomial(f: &Field, n: usize, k: usize) -> FieldElement {
    let mut num = num_bigint::BigInt::from(1);
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    f.from_bigint(&num)
}

/// The unique `r` with `r(x+1) − r(x) = 2s(x)` and `r(0) = 0`.
pub fn smith_r(field: &Field, s: &[FieldElement]) -> Result<Vec<FieldElement>, CatalogError> {
    let d = s
        .len()
        .checked_sub(1)
        .ok_or_else(|| CatalogError::InvalidParameters("s is empty".into()))?;
    let p = field.characteristic();
    if p != 0 && (d as u64) + 1 >= p {
        return Err(CatalogError::TelescopingUnsolvable {
            needed: d + 1,
            characteristic: p,
        });
    }
    let two = field.from_int(2);
    let mut r = vec![field.zero(); d + 2];
    // Coefficient of x^j in r(x+1) − r(x) is Σ_{i>j} r_i C(i, j).
    for j in (0..=d).rev() {
        let mut rhs = &two * &s[j];
        for i in j + 2..=d + 1 {
            rhs = &rhs - &(&r[i] * &binomial(field, i, j));
        }
        r[j + 1] = rhs.checked_div(&field.from_int(j as i64 + 1))?;
    }
    Ok(r)
}

fn nonzero(x: &FieldElement, what: &str) -> Result<(), CatalogError> {
    if x.is_zero() {
        return Err(CatalogError::InvalidParameters(format!(
            "{what} must be nonzero"
        )));
    }
    Ok(())
}

fn odd_characteristic(f: &Field) -> Result<(), CatalogError> {
    if f.characteristic() == 2 {
        return Err(CatalogError::InvalidParameters(
            "characteristic 2 is excluded".into(),
        ));
    }
    Ok(())
}

/// Generators of `R^φ` for `φ(t) = αt + β` on `𝔽[t]`.
fn affine_invariants(ring: &Ring, alpha: &FieldElement, beta: &FieldElement) -> Vec<RingElement> {
    let t = ring.var(0);
    let f = ring.field();
    if alpha.is_one() {
        if beta.is_zero() {
            return vec![t];
        }
        return match f.characteristic() {
            0 => vec![],
            p => {
                let b = beta.pow(p as i64 - 1).expect("nonzero β");
                vec![&t.pow(p as u32) - &t.scale(&b)]
            }
        };
    }
    match alpha.root_of_unity_order() {
        Some(l) => {
            let tt = &t.scale(&(alpha - &f.one())) + &ring.scalar(beta.clone());
            vec![tt.pow(l as u32)]
        }
        None => vec![],
    }
}

/// Validated presentation for a family, with known invariant generators attached.
pub fn build_family(spec: &FamilySpec) -> Result<Gwa, CatalogError> {
    let f = spec.field();
    let gwa = match spec {
        FamilySpec::Weyl { n, .. } | FamilySpec::Heisenberg { n, .. } => {
            if *n == 0 {
                return Err(CatalogError::InvalidParameters(
                    "n must be at least 1".into(),
                ));
            }
            let heis = matches!(spec, FamilySpec::Heisenberg { .. });
            let mut names: Vec<String> = if *n == 1 {
                vec!["t".into()]
            } else {
                (1..=*n).map(|i| format!("t{i}")).collect()
            };
            if heis {
                names.push("c".into());
            }
            let ring = Ring::new(f.clone(), names.clone(), vec![false; names.len()])?;
            let shift = if heis { ring.var(*n) } else { ring.one() };
            let phis = (0..*n)
                .map(|i| {
                    let images = (0..ring.nvars())
                        .map(|j| {
                            if i == j {
                                &ring.var(j) - &shift
                            } else {
                                ring.var(j)
                            }
                        })
                        .collect();
                    Automorphism::new(&ring, images)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let ts = (0..*n).map(|i| ring.var(i)).collect();
            let p = f.characteristic();
            let mut inv: Vec<RingElement> = if heis { vec![ring.var(*n)] } else { vec![] };
            if p != 0 {
                for i in 0..*n {
                    let ti = ring.var(i);
                    let lin = if heis {
                        shift.pow(p as u32 - 1)
                    } else {
                        ring.one()
                    };
                    inv.push(&ti.pow(p as u32) - &(&lin * &ti));
                }
            }
            Gwa::new(ring, phis, ts)?.with_invariants(inv)
        }
        FamilySpec::QuantumPlane { q } => {
            nonzero(q, "q")?;
            if q.is_one() {
                return Err(CatalogError::InvalidParameters(
                    "q must differ from 1".into(),
                ));
            }
            affine(&f, q, &f.zero())?
        }
        FamilySpec::QuantumWeyl { q } => {
            nonzero(q, "q")?;
            let qi = q.inv()?;
            affine(&f, &qi, &-qi.clone())?
        }
        FamilySpec::UnivariateAffine { alpha, beta } => {
            nonzero(alpha, "alpha")?;
            affine(&f, alpha, beta)?
        }
        FamilySpec::Smith { s, .. } => {
            odd_characteristic(&f)?;
            if s.iter().all(|c| c.is_zero()) {
                return Err(CatalogError::InvalidParameters("s must be nonzero".into()));
            }
            let r = smith_r(&f, s)?;
            let ring = Ring::polynomial(f.clone(), &["h", "c"])?;
            let (h, c) = (ring.var(0), ring.var(1));
            let phi = Automorphism::new(&ring, vec![&h - &ring.one(), c.clone()])?;
            let r_h1 =
                poly_in(&ring, 0, &r).substitute(&[&h + &ring.one(), c.clone()], &[None, None]);
            let half = f.from_int(2).inv()?;
            let t = (&c - &r_h1).scale(&half);
            let mut inv = vec![c.clone()];
            if f.characteristic() != 0 {
                inv.push(&h.pow(f.characteristic() as u32) - &h);
            }
            Gwa::new(ring, vec![phi], vec![t])?.with_invariants(inv)
        }
        FamilySpec::QuantumSmith { m, q } => quantum_smith(&f, *m, q)?,
        FamilySpec::Uqsl2 { q } => {
            check_quantum(&f, 1, q)?;
            let ring = laurent_k_c(&f)?;
            let (k, c) = (ring.var(0), ring.var(1));
            let qi = q.inv()?;
            let d = (q - &qi).pow(2)?;
            let num = &k.scale(q) + &k.inverse()?.scale(&qi);
            let t = &c - &num.scale(&d.inv()?);
            let phi = Automorphism::new(&ring, vec![k.scale(&qi.pow(2)?), c.clone()])?;
            let inv = quantum_invariants(&ring, q);
            Gwa::new(ring, vec![phi], vec![t])?.with_invariants(inv)
        }
    };
    let mut gwa = gwa.with_label(spec.name());
    match spec {
        FamilySpec::QuantumPlane { q }
        | FamilySpec::QuantumWeyl { q }
        | FamilySpec::QuantumSmith { q, .. }
        | FamilySpec::Uqsl2 { q } => {
            gwa = gwa.with_parameter("q", q.clone());
        }
        FamilySpec::UnivariateAffine { alpha, beta } => {
            gwa = gwa
                .with_parameter("alpha", alpha.clone())
                .with_parameter("beta", beta.clone());
        }
        _ => {}
    }
    Ok(gwa)
}

fn affine(f: &Field, alpha: &FieldElement, beta: &FieldElement) -> Result<Gwa, CatalogError> {
    let ring = Ring::polynomial(f.clone(), &["t"])?;
    let t = ring.var(0);
    let phi = Automorphism::new(&ring, vec![&t.scale(alpha) + &ring.scalar(beta.clone())])?;
    let inv = affine_invariants(&ring, alpha, beta);
    Ok(Gwa::new(ring, vec![phi], vec![t])?.with_invariants(inv))
}

fn laurent_k_c(f: &Field) -> Result<Ring, RingError> {
    Ring::new(f.clone(), vec!["K".into(), "c".into()], vec![true, false])
}

fn check_quantum(f: &Field, m: u32, q: &FieldElement) -> Result<(), CatalogError> {
    odd_characteristic(f)?;
    if m == 0 {
        return Err(CatalogError::InvalidParameters(
            "m must be at least 1".into(),
        ));
    }
    nonzero(q, "q")?;
    if q.is_one() || (-q.clone()).is_one() {
        return Err(CatalogError::InvalidParameters(
            "q must differ from ±1".into(),
        ));
    }
    if q.pow(2 * m as i64)?.is_one() {
        return Err(CatalogError::InvalidParameters(format!(
            "q^2 must not be an {m}-th root of unity"
        )));
    }
    Ok(())
}

fn quantum_invariants(ring: &Ring, q: &FieldElement) -> Vec<RingElement> {
    let (k, c) = (ring.var(0), ring.var(1));
    let mut inv = vec![c];
    if let Some(l) = q.pow(2).ok().and_then(|q2| q2.root_of_unity_order()) {
        inv.push(k.pow(l as u32));
        inv.push(k.pow_i(-(l as i64)).expect("Laurent variable"));
    }
    inv
}

fn quantum_smith(f: &Field, m: u32, q: &FieldElement) -> Result<Gwa, CatalogError> {
    check_quantum(f, m, q)?;
    let ring = laurent_k_c(f)?;
    let (k, c) = (ring.var(0), ring.var(1));
    let mi = m as i64;
    let qi = q.inv()?;
    let (qm, qmi) = (q.pow(mi)?, q.pow(-mi)?);
    let d = &(&qm - &qmi) * &(q - &qi);
    let num = &k.pow(m).scale(&qm) + &k.pow_i(-mi)?.scale(&qmi);
    let t = &c - &num.scale(&d.inv()?);
    let phi = Automorphism::new(&ring, vec![k.scale(&qi.pow(2)?), c.clone()])?;
    let inv = quantum_invariants(&ring, q);
    Ok(Gwa::new(ring, vec![phi], vec![t])?.with_invariants(inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gwa::is_central;

    #[test]
    fn smith_r_telescopes() {
        let f = Field::rationals();
        let r = smith_r(&f, &[f.zero(), f.from_int(2)]).unwrap();
        assert_eq!(r, vec![f.zero(), f.from_int(-2), f.from_int(2)]);
        let r = smith_r(&f, &[f.from_int(-1)]).unwrap();
        assert_eq!(r, vec![f.zero(), f.from_int(-2)]);
        // Random cubic: r(x+1) − r(x) = 2 s(x) at many points.
        let s: Vec<_> = [3, -1, 4, 1].iter().map(|&c| f.from_int(c)).collect();
        let r = smith_r(&f, &s).unwrap();
        for x in -5..5 {
            let x = f.from_int(x);
            let lhs = &eval_poly(&r, &(&x + &f.one())) - &eval_poly(&r, &x);
            assert_eq!(lhs, &f.from_int(2) * &eval_poly(&s, &x));
        }
        let f3 = Field::prime(3).unwrap();
        assert!(matches!(
            smith_r(&f3, &[f3.zero(), f3.zero(), f3.one()]),
            Err(CatalogError::TelescopingUnsolvable { .. })
        ));
    }

    #[test]
    fn smith_sl2_shape() {
        let f = Field::rationals();
        let a = build_family(&FamilySpec::Smith {
            field: f.clone(),
            s: vec![f.zero(), f.from_int(2)],
        })
        .unwrap();
        assert_eq!(a.t(0).to_string(), "-h^2-h+1/2*c");
        let c = a.from_ring(a.ring().var(1));
        assert!(is_central(&c));
        // ef − fe = s(h) with e = X, f = Y.
        let ef = &(&a.x(0) * &a.y(0)) - &(&a.y(0) * &a.x(0));
        assert_eq!(ef, a.from_ring(a.ring().var(0).scale(&f.from_int(2))));
    }

    #[test]
    fn uqsl2_is_quantum_smith_one() {
        let f = Field::cyclotomic(6).unwrap();
        let q = f.root_of_unity(6).unwrap();
        let a = build_family(&FamilySpec::Uqsl2 { q: q.clone() }).unwrap();
        let b = build_family(&FamilySpec::QuantumSmith { m: 1, q }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.invariants().unwrap().len(), 3);
    }

    #[test]
    fn parameter_validation() {
        let f = Field::rationals();
        assert!(build_family(&FamilySpec::QuantumPlane { q: f.one() }).is_err());
        assert!(build_family(&FamilySpec::QuantumSmith { m: 1, q: -f.one() }).is_err());
        let f2 = Field::prime(2).unwrap();
        assert!(build_family(&FamilySpec::Smith {
            field: f2.clone(),
            s: vec![f2.one()]
        })
        .is_err());
        assert!(build_family(&FamilySpec::Weyl { field: f, n: 0 }).is_err());
    }
}
