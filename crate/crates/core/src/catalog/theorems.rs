//! Explicit Whittaker modules with their claims.
//!
//! Each module is assembled from the displayed basis and action, then every
//! claim is recomputed: relations as matrix identities, the Whittaker vector,
//! the annihilator (recovered independently), central scalars and simplicity.

use super::{build_family, eval_poly, smith_r, CatalogError, FamilySpec};
use crate::field::{Field, FieldElement};
use crate::gwa::{Gwa, GwaElement};
use crate::ideals::PhiStableIdeal;
use crate::linalg::Matrix;
use crate::ring::RingElement;
use crate::whittaker::{MatrixModel, Simplicity, WhittakerModule, WhittakerType};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T8_3,
    T8_5,
    T8_7,
    T8_9,
    T9,
    T10,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::T8_3,
        TheoremId::T8_5,
        TheoremId::T8_7,
        TheoremId::T8_9,
        TheoremId::T9,
        TheoremId::T10,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T8_3 => "T8.3",
            TheoremId::T8_5 => "T8.5",
            TheoremId::T8_7 => "T8.7",
            TheoremId::T8_9 => "T8.9",
            TheoremId::T9 => "T9",
            TheoremId::T10 => "T10",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown theorem id {s:?}; expected one of T8.3, T8.5, T8.7, T8.9, T9, T10")
            })
    }
}

/// Parameters of one explicit module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremSpec {
    /// `φ(t) = αt + β`, α not a root of unity, `Q = (t̃^n)`, basis `v_k = t̃^k w`.
    T8_3 {
        alpha: FieldElement,
        beta: FieldElement,
        zeta: FieldElement,
        n: u32,
    },
    /// α a primitive ℓ-th root of unity; `theta = Some(ϑ)` gives the ℓ-dimensional
    /// module with `Q = (t̃^ℓ − ϑ^ℓ)`, `None` the one-dimensional one with `Q = (t̃)`.
    T8_5 {
        alpha: FieldElement,
        beta: FieldElement,
        zeta: FieldElement,
        theta: Option<FieldElement>,
    },
    /// `φ(t) = t + β` in characteristic p.
    T8_7 {
        beta: FieldElement,
        lambda: FieldElement,
        zeta: FieldElement,
    },
    /// First Weyl algebra in characteristic p.
    T8_9 {
        lambda: FieldElement,
        zeta: FieldElement,
    },
    /// Smith algebra with polynomial `s` in characteristic p.
    T9 {
        s: Vec<FieldElement>,
        theta: FieldElement,
        lambda: FieldElement,
        zeta: FieldElement,
    },
    /// Quantum Smith algebra with `q²` a primitive ℓ-th root of unity, ℓ ≠ m.
    T10 {
        m: u32,
        q: FieldElement,
        theta: FieldElement,
        lambda: FieldElement,
        zeta: FieldElement,
    },
}

impl TheoremSpec {
    pub fn id(&self) -> TheoremId {
        match self {
            TheoremSpec::T8_3 { .. } => TheoremId::T8_3,
            TheoremSpec::T8_5 { .. } => TheoremId::T8_5,
            TheoremSpec::T8_7 { .. } => TheoremId::T8_7,
            TheoremSpec::T8_9 { .. } => TheoremId::T8_9,
            TheoremSpec::T9 { .. } => TheoremId::T9,
            TheoremSpec::T10 { .. } => TheoremId::T10,
        }
    }

    pub fn zeta(&self) -> &FieldElement {
        match self {
            TheoremSpec::T8_3 { zeta, .. }
            | TheoremSpec::T8_5 { zeta, .. }
            | TheoremSpec::T8_7 { zeta, .. }
            | TheoremSpec::T8_9 { zeta, .. }
            | TheoremSpec::T9 { zeta, .. }
            | TheoremSpec::T10 { zeta, .. } => zeta,
        }
    }

    pub fn field(&self) -> Field {
        self.zeta().field().clone()
    }

    pub fn parameters(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            p.insert(k.to_string(), v);
        };
        put("field", self.field().to_string());
        put("zeta", self.zeta().to_string());
        match self {
            TheoremSpec::T8_3 { alpha, beta, n, .. } => {
                put("alpha", alpha.to_string());
                put("beta", beta.to_string());
                put("n", n.to_string());
            }
            TheoremSpec::T8_5 {
                alpha, beta, theta, ..
            } => {
                put("alpha", alpha.to_string());
                put("beta", beta.to_string());
                put(
                    "theta",
                    theta.as_ref().map_or("none".into(), |t| t.to_string()),
                );
            }
            TheoremSpec::T8_7 { beta, lambda, .. } => {
                put("beta", beta.to_string());
                put("lambda", lambda.to_string());
            }
            TheoremSpec::T8_9 { lambda, .. } => put("lambda", lambda.to_string()),
            TheoremSpec::T9 {
                s, theta, lambda, ..
            } => {
                put(
                    "s",
                    s.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                );
                put("theta", theta.to_string());
                put("lambda", lambda.to_string());
            }
            TheoremSpec::T10 {
                m,
                q,
                theta,
                lambda,
                ..
            } => {
                put("m", m.to_string());
                put("q", q.to_string());
                put("theta", theta.to_string());
                put("lambda", lambda.to_string());
            }
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub name: String,
    pub statement: String,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimsReport {
    pub theorem: TheoremId,
    pub parameters: BTreeMap<String, String>,
    pub claims: Vec<Claim>,
}

impl ClaimsReport {
    pub fn all_green(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.holds)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem.as_str(),
            "parameters": self.parameters,
            "status": if self.all_green() { "green" } else { "red" },
            "claims": self.claims.iter().map(|c| {
                let mut v = json!({
                    "check": c.name,
                    "statement": c.statement,
                    "status": if c.holds { "pass" } else { "fail" },
                });
                if let Some(d) = &c.detail {
                    v["witness"] = Value::String(d.clone());
                }
                v
            }).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct TheoremModule {
    pub spec: TheoremSpec,
    pub module: WhittakerModule,
    /// Ideal `Q` as stated for the module.
    pub stated_q: PhiStableIdeal,
    pub claims: ClaimsReport,
}

struct Claims(Vec<Claim>);

impl Claims {
    fn push(
        &mut self,
        name: &str,
        statement: impl Into<String>,
        holds: bool,
        detail: Option<String>,
    ) {
        self.0.push(Claim {
            name: name.into(),
            statement: statement.into(),
            holds,
            detail,
        });
    }
}

fn violated(msg: impl Into<String>) -> CatalogError {
    CatalogError::HypothesisViolated(msg.into())
}

fn require_nonzero(x: &FieldElement, name: &str) -> Result<(), CatalogError> {
    if x.is_zero() {
        return Err(violated(format!("{name} ≠ 0")));
    }
    Ok(())
}

fn odd_prime_characteristic(f: &Field) -> Result<u64, CatalogError> {
    match f.characteristic() {
        p if p > 2 => Ok(p),
        _ => Err(violated("characteristic p > 2")),
    }
}

/// `d × d` matrix whose column `k` has the listed `(row, value)` entries.
fn by_columns(f: &Field, d: usize, col: impl Fn(usize) -> Vec<(usize, FieldElement)>) -> Matrix {
    let mut m = Matrix::zeros(f, d, d);
    for k in 0..d {
        for (i, v) in col(k) {
            let cur = m.get(i, k).clone();
            m.set(i, k, &cur + &v);
        }
    }
    m
}

fn diagonal(f: &Field, vals: &[FieldElement]) -> Matrix {
    by_columns(f, vals.len(), |k| vec![(k, vals[k].clone())])
}

fn scalar_matrix(f: &Field, d: usize, c: &FieldElement) -> Matrix {
    Matrix::identity(f, d).scale(c)
}

fn int(f: &Field, n: usize) -> FieldElement {
    f.from_int(n as i64)
}

fn t_tilde(gwa: &Gwa, alpha: &FieldElement, beta: &FieldElement) -> RingElement {
    let ring = gwa.ring();
    &ring.var(0).scale(&(alpha - &ring.field().one())) + &ring.scalar(beta.clone())
}

fn sum_vector(f: &Field, d: usize) -> Vec<FieldElement> {
    vec![f.one(); d]
}

pub fn build_theorem_module(
    spec: &TheoremSpec,
    degree: u32,
    seed: u64,
) -> Result<TheoremModule, CatalogError> {
    let f = spec.field();
    require_nonzero(spec.zeta(), "ζ")?;
    let zeta = spec.zeta().clone();
    let mut extra = Claims(Vec::new());
    let (gwa, model, stated_q, simple_expected) = match spec {
        TheoremSpec::T8_3 { alpha, beta, n, .. } => {
            require_nonzero(alpha, "α")?;
            if alpha.root_of_unity_order().is_some() {
                return Err(violated("α is not a root of unity"));
            }
            if *n == 0 {
                return Err(violated("n ≥ 1"));
            }
            let gwa = build_family(&FamilySpec::UnivariateAffine {
                alpha: alpha.clone(),
                beta: beta.clone(),
            })?;
            let d = *n as usize;
            let am1i = (alpha - &f.one()).inv()?;
            // (α−1)^{-1}(v_{k+1} − βv_k) with v_n = 0.
            let raise = |k: usize, scale: &FieldElement| {
                let mut e = vec![(k, -(beta * &am1i) * scale.clone())];
                if k + 1 < d {
                    e.push((k + 1, &am1i * scale));
                }
                e
            };
            let t = by_columns(&f, d, |k| raise(k, &f.one()));
            let x = diagonal(
                &f,
                &(0..d)
                    .map(|k| &alpha.pow(k as i64).unwrap() * &zeta)
                    .collect::<Vec<_>>(),
            );
            let y = by_columns(&f, d, |k| {
                raise(
                    k,
                    &(&zeta.inv().unwrap() * &alpha.pow(-(k as i64)).unwrap()),
                )
            });
            let model = MatrixModel {
                labels: (0..d).map(|k| format!("v{k}")).collect(),
                ring_mats: vec![t],
                ring_inv_mats: vec![None],
                xs: vec![x],
                ys: vec![y],
                w: unit(&f, d, 0),
            };
            let tt = t_tilde(&gwa, alpha, beta);
            let q = PhiStableIdeal::from_generators(gwa.ring(), vec![tt.pow(*n)], gwa.phis())?;
            (gwa, model, q, *n == 1)
        }
        TheoremSpec::T8_5 {
            alpha, beta, theta, ..
        } => {
            let l = match alpha.root_of_unity_order() {
                Some(l) if l >= 2 => l as usize,
                _ => return Err(violated("α is a primitive ℓ-th root of unity with ℓ ≥ 2")),
            };
            let gwa = build_family(&FamilySpec::UnivariateAffine {
                alpha: alpha.clone(),
                beta: beta.clone(),
            })?;
            let am1i = (alpha - &f.one()).inv()?;
            let zi = zeta.inv()?;
            let tt = t_tilde(&gwa, alpha, beta);
            match theta {
                Some(theta) => {
                    require_nonzero(theta, "ϑ")?;
                    // (α−1)^{-1}(ϑu_{k+1} − βu_k), subscripts mod ℓ.
                    let step = |k: usize, scale: &FieldElement| {
                        vec![
                            (k, -(beta * &am1i) * scale.clone()),
                            ((k + 1) % l, &(theta * &am1i) * scale),
                        ]
                    };
                    let t = by_columns(&f, l, |k| step(k, &f.one()));
                    let x = diagonal(
                        &f,
                        &(0..l)
                            .map(|k| &alpha.pow(k as i64).unwrap() * &zeta)
                            .collect::<Vec<_>>(),
                    );
                    let y = by_columns(&f, l, |k| {
                        step(k, &(&zi * &alpha.pow(-(k as i64)).unwrap()))
                    });
                    let model = MatrixModel {
                        labels: (0..l).map(|k| format!("u{k}")).collect(),
                        ring_mats: vec![t],
                        ring_inv_mats: vec![None],
                        xs: vec![x.clone()],
                        ys: vec![y.clone()],
                        w: unit(&f, l, 0),
                    };
                    let q = PhiStableIdeal::from_generators(
                        gwa.ring(),
                        vec![&tt.pow(l as u32) - &gwa.ring().scalar(theta.pow(l as i64)?)],
                        gwa.phis(),
                    )?;
                    let li = l as i64;
                    let xl = scalar_matrix(&f, l, &zeta.pow(li)?);
                    extra.push("X^l", "X^ℓ = ζ^ℓ·id", x.pow(l as u32) == xl, None);
                    let scalar = &(&(&zeta.pow(-li)? * &(alpha - &f.one()).pow(-li)?)
                        * &alpha.pow(-(li - 1) * li / 2)?)
                        * &(&theta.pow(li)? - &beta.pow(li)?);
                    extra.push(
                        "Y^l",
                        "Y^ℓ = ζ^{-ℓ}(α−1)^{-ℓ}α^{-(ℓ−1)ℓ/2}(ϑ^ℓ − β^ℓ)·id",
                        y.pow(l as u32) == scalar_matrix(&f, l, &scalar),
                        Some(format!("scalar {scalar}")),
                    );
                    (gwa, model, q, true)
                }
                None => {
                    let tw = -(&am1i * beta);
                    let model = MatrixModel {
                        labels: vec!["w".into()],
                        ring_mats: vec![scalar_matrix(&f, 1, &tw)],
                        ring_inv_mats: vec![None],
                        xs: vec![scalar_matrix(&f, 1, &zeta)],
                        ys: vec![scalar_matrix(&f, 1, &(&zi * &tw))],
                        w: vec![f.one()],
                    };
                    let q = PhiStableIdeal::from_generators(gwa.ring(), vec![tt], gwa.phis())?;
                    (gwa, model, q, true)
                }
            }
        }
        TheoremSpec::T8_7 { beta, lambda, .. } => {
            let p = odd_prime_characteristic(&f)?;
            require_nonzero(beta, "β")?;
            let gwa = build_family(&FamilySpec::UnivariateAffine {
                alpha: f.one(),
                beta: beta.clone(),
            })?;
            let eig = |k: usize| lambda - &(&int(&f, k) * beta);
            shift_module(&f, &gwa, p, &zeta, &eig, &mut extra, |k| {
                let prev = (k + p as usize - 1) % p as usize;
                vec![(
                    prev,
                    &zeta.inv().unwrap() * &(lambda - &(&(&int(&f, k) - &f.one()) * beta)),
                )]
            })
            .map(|(gwa, model)| {
                let t = gwa.ring().var(0);
                let bp = beta.pow(p as i64 - 1).unwrap();
                let c = &lambda.pow(p as i64).unwrap() - &(&bp * lambda);
                let gen = &(&t.pow(p as u32) - &t.scale(&bp)) - &gwa.ring().scalar(c.clone());
                let y = model.ys[0].pow(p as u32);
                extra.push(
                    "Y^p",
                    "Y^p = ζ^{-p}(λ^p − β^{p−1}λ)·id",
                    y == scalar_matrix(&f, p as usize, &(&zeta.pow(-(p as i64)).unwrap() * &c)),
                    None,
                );
                let q = PhiStableIdeal::from_generators(gwa.ring(), vec![gen], gwa.phis());
                (gwa, model, q)
            })
            .and_then(|(g, m, q)| Ok((g, m, q?, true)))?
        }
        TheoremSpec::T8_9 { lambda, .. } => {
            let p = odd_prime_characteristic(&f)?;
            let gwa = build_family(&FamilySpec::Weyl {
                field: f.clone(),
                n: 1,
            })?;
            let (gwa, model) = weyl_char_p(&f, &gwa, p, lambda, &zeta, &mut extra)?;
            let t = gwa.ring().var(0);
            let c = &lambda.pow(p as i64)? - lambda;
            let gen = &(&t.pow(p as u32) - &t) - &gwa.ring().scalar(c);
            let q = PhiStableIdeal::from_generators(gwa.ring(), vec![gen], gwa.phis())?;
            (gwa, model, q, true)
        }
        TheoremSpec::T9 {
            s, theta, lambda, ..
        } => {
            let p = odd_prime_characteristic(&f)?;
            let gwa = build_family(&FamilySpec::Smith {
                field: f.clone(),
                s: s.clone(),
            })?;
            let r = smith_r(&f, s)?;
            let d = p as usize;
            let half = f.from_int(2).inv()?;
            let zi = zeta.inv()?;
            let coef =
                |k: usize| &(&half * &zi) * &(theta - &eval_poly(&r, &(lambda + &int(&f, k))));
            let h = diagonal(
                &f,
                &(0..d).map(|k| lambda + &int(&f, k)).collect::<Vec<_>>(),
            );
            let c = scalar_matrix(&f, d, theta);
            let x = by_columns(&f, d, |k| vec![((k + 1) % d, zeta.clone())]);
            let y = by_columns(&f, d, |k| vec![((k + d - 1) % d, coef(k))]);
            let model = MatrixModel {
                labels: (0..d).map(|k| format!("v{k}")).collect(),
                ring_mats: vec![h, c],
                ring_inv_mats: vec![None, None],
                xs: vec![x.clone()],
                ys: vec![y.clone()],
                w: sum_vector(&f, d),
            };
            let pi = p as i64;
            extra.push(
                "X^p",
                "X^p = ζ^p·id",
                x.pow(p as u32) == scalar_matrix(&f, d, &zeta.pow(pi)?),
                None,
            );
            let prod = (0..d).fold(f.one(), |acc, k| {
                &acc * &(theta - &eval_poly(&r, &(lambda + &int(&f, k))))
            });
            let yp = &(&half * &zeta.pow(-pi)?) * &prod;
            extra.push(
                "Y^p",
                "Y^p = ½ζ^{-p}∏_k(ϑ − r(λ+k))·id",
                y.pow(p as u32) == scalar_matrix(&f, d, &yp),
                Some(format!("scalar {yp}")),
            );
            let ring = gwa.ring();
            let (hv, cv) = (ring.var(0), ring.var(1));
            let q = PhiStableIdeal::from_generators(
                ring,
                vec![
                    &cv - &ring.scalar(theta.clone()),
                    &(&hv.pow(p as u32) - &hv) - &ring.scalar(&lambda.pow(pi)? - lambda),
                ],
                gwa.phis(),
            )?;
            if s.len() == 1 && (-s[0].clone()).is_one() && theta.is_zero() {
                let holds = smith_weyl_correspondence(&f, p, lambda, &zeta, &model)?;
                extra.push(
                    "weyl correspondence",
                    "with s = −1, r = −2x, ϑ = 0 the module is the Weyl char-p module under t' = h+1, λ' = λ+1",
                    holds,
                    None,
                );
            }
            (gwa, model, q, true)
        }
        TheoremSpec::T10 {
            m,
            q,
            theta,
            lambda,
            ..
        } => {
            if f.characteristic() == 2 {
                return Err(violated("characteristic ≠ 2"));
            }
            require_nonzero(q, "q")?;
            require_nonzero(lambda, "λ")?;
            if q.is_one() || (-q.clone()).is_one() {
                return Err(violated("q ≠ ±1"));
            }
            let q2 = q.pow(2)?;
            let l = match q2.root_of_unity_order() {
                Some(l) if l >= 2 => l as usize,
                _ => return Err(violated("q² is a primitive ℓ-th root of unity")),
            };
            if l as u32 == *m {
                return Err(violated("ℓ ≠ m"));
            }
            if q2.pow(*m as i64)?.is_one() {
                return Err(violated("q² is not an m-th root of unity"));
            }
            let gwa = build_family(&FamilySpec::QuantumSmith {
                m: *m,
                q: q.clone(),
            })?;
            let mi = *m as i64;
            let qi = q.inv()?;
            let den = &(&q.pow(mi)? - &q.pow(-mi)?) * &(q - &qi);
            let zi = zeta.inv()?;
            // ϑ − (λ^m q^{e m} + λ^{-m} q^{-e m})/den
            let factor = |e: i64| -> FieldElement {
                let num = &(&lambda.pow(mi).unwrap() * &q.pow(e * mi).unwrap())
                    + &(&lambda.pow(-mi).unwrap() * &q.pow(-e * mi).unwrap());
                theta - &num.checked_div(&den).unwrap()
            };
            let kv: Vec<FieldElement> = (0..l)
                .map(|j| lambda * &q2.pow(j as i64).unwrap())
                .collect();
            let k = diagonal(&f, &kv);
            let kinv = diagonal(&f, &kv.iter().map(|v| v.inv().unwrap()).collect::<Vec<_>>());
            let c = scalar_matrix(&f, l, theta);
            let x = by_columns(&f, l, |j| vec![((j + 1) % l, zeta.clone())]);
            let y = by_columns(&f, l, |j| {
                vec![((j + l - 1) % l, &zi * &factor(2 * j as i64 - 1))]
            });
            let model = MatrixModel {
                labels: (0..l).map(|j| format!("v{j}")).collect(),
                ring_mats: vec![k.clone(), c],
                ring_inv_mats: vec![Some(kinv), None],
                xs: vec![x.clone()],
                ys: vec![y.clone()],
                w: sum_vector(&f, l),
            };
            let li = l as i64;
            extra.push(
                "X^l",
                "X^ℓ = ζ^ℓ·id",
                x.pow(l as u32) == scalar_matrix(&f, l, &zeta.pow(li)?),
                None,
            );
            let prod = (0..l as i64).fold(f.one(), |acc, j| &acc * &factor(2 * j + 1));
            let yl = &zeta.pow(-li)? * &prod;
            extra.push(
                "Y^l",
                "Y^ℓ = ζ^{-ℓ}∏_j(ϑ − (λ^m q^{(2j+1)m} + λ^{-m}q^{-(2j+1)m})/((q^m−q^{-m})(q−q^{-1})))·id",
                y.pow(l as u32) == scalar_matrix(&f, l, &yl),
                Some(format!("scalar {yl}")),
            );
            // v_0 = Σ λ^{-j} K^j w is a K-eigenvector and v_j = ζ^{-j} X^j v_0 has eigenvalue λq^{2j}.
            let w = sum_vector(&f, l);
            let mut v0 = vec![f.zero(); l];
            let mut kw = w.clone();
            for j in 0..l {
                let s = lambda.pow(-(j as i64))?;
                v0 = v0.iter().zip(&kw).map(|(a, b)| a + &(&s * b)).collect();
                kw = k.mul_vec(&kw);
            }
            let mut vj = v0.clone();
            let mut eigen_ok = v0.iter().any(|x| !x.is_zero());
            for j in 0..l {
                let want: Vec<FieldElement> = vj.iter().map(|x| x * &kv[j]).collect();
                eigen_ok &= k.mul_vec(&vj) == want;
                vj = x.mul_vec(&vj).iter().map(|a| a * &zi).collect();
            }
            extra.push(
                "eigenbasis",
                "v_0 = Σ_j λ^{-j}K^j w and v_j = ζ^{-j}X^j v_0 satisfy K v_j = λq^{2j} v_j",
                eigen_ok,
                None,
            );
            let ring = gwa.ring();
            let (kv_, cv) = (ring.var(0), ring.var(1));
            let q_ideal = PhiStableIdeal::from_generators(
                ring,
                vec![
                    &cv - &ring.scalar(theta.clone()),
                    &kv_.pow(l as u32) - &ring.scalar(lambda.pow(li)?),
                    &kv_.pow_i(-li)? - &ring.scalar(lambda.pow(-li)?),
                ],
                gwa.phis(),
            )?;
            (gwa, model, q_ideal, true)
        }
    };
    let zeta_type = WhittakerType::new(vec![zeta.clone()])?;
    let module = WhittakerModule::from_matrix_model(&gwa, zeta_type, model)?;
    let mut claims = Claims(Vec::new());
    standard_claims(
        &mut claims,
        &module,
        &stated_q,
        degree,
        simple_expected,
        seed,
    )?;
    claims.0.extend(extra.0);
    if let TheoremSpec::T8_3 { alpha, beta, n, .. } = spec {
        chain_claims(&mut claims, &module, alpha, beta, &zeta, *n, degree)?;
    }
    Ok(TheoremModule {
        spec: spec.clone(),
        module,
        stated_q,
        claims: ClaimsReport {
            theorem: spec.id(),
            parameters: spec.parameters(),
            claims: claims.0,
        },
    })
}

/// Parameter grid exercised by `verify` for each theorem.
pub fn default_grid(id: TheoremId) -> Vec<TheoremSpec> {
    let q = Field::rationals();
    let mut out = Vec::new();
    match id {
        TheoremId::T8_3 => {
            for beta in [0, 1] {
                for n in 1..=3 {
                    for zeta in [1, 3] {
                        out.push(TheoremSpec::T8_3 {
                            alpha: q.from_int(2),
                            beta: q.from_int(beta),
                            zeta: q.from_int(zeta),
                            n,
                        });
                    }
                }
            }
        }
        TheoremId::T8_5 => {
            let f = Field::cyclotomic(3).expect("cyclotomic field");
            let a = f.root_of_unity(3).expect("primitive cube root");
            for beta in [0, 1] {
                for theta in [1, 2] {
                    out.push(TheoremSpec::T8_5 {
                        alpha: a.clone(),
                        beta: f.from_int(beta),
                        zeta: f.from_int(2),
                        theta: Some(f.from_int(theta)),
                    });
                }
                out.push(TheoremSpec::T8_5 {
                    alpha: a.clone(),
                    beta: f.from_int(beta),
                    zeta: f.one(),
                    theta: None,
                });
            }
            // A_(q,1) at q = ζ_3: α = q^{-1}, β = −q^{-1}.
            let qi = a.inv().expect("unit");
            out.push(TheoremSpec::T8_5 {
                alpha: qi.clone(),
                beta: -qi,
                zeta: f.one(),
                theta: Some(f.one()),
            });
        }
        TheoremId::T8_7 => {
            for p in [3, 5] {
                let f = Field::prime(p).expect("prime");
                for lambda in [0, 1] {
                    for zeta in [1, 2] {
                        out.push(TheoremSpec::T8_7 {
                            beta: f.one(),
                            lambda: f.from_int(lambda),
                            zeta: f.from_int(zeta),
                        });
                    }
                }
            }
        }
        TheoremId::T8_9 => {
            for p in [3, 5, 7] {
                let f = Field::prime(p).expect("prime");
                for lambda in [0, 1] {
                    for zeta in [1, 2] {
                        out.push(TheoremSpec::T8_9 {
                            lambda: f.from_int(lambda),
                            zeta: f.from_int(zeta),
                        });
                    }
                }
            }
        }
        TheoremId::T9 => {
            for p in [3, 5] {
                let f = Field::prime(p).expect("prime");
                for theta in [0, 1] {
                    for lambda in [0, 1] {
                        for zeta in [1, 2] {
                            out.push(TheoremSpec::T9 {
                                s: vec![f.zero(), f.from_int(2)],
                                theta: f.from_int(theta),
                                lambda: f.from_int(lambda),
                                zeta: f.from_int(zeta),
                            });
                        }
                    }
                }
                out.push(TheoremSpec::T9 {
                    s: vec![f.from_int(-1)],
                    theta: f.zero(),
                    lambda: f.one(),
                    zeta: f.one(),
                });
            }
        }
        TheoremId::T10 => {
            let f = Field::cyclotomic(6).expect("cyclotomic field");
            let qq = f.root_of_unity(6).expect("primitive sixth root");
            for theta in [0, 1] {
                for lambda in [1, 2] {
                    for zeta in [1, 2] {
                        out.push(TheoremSpec::T10 {
                            m: 1,
                            q: qq.clone(),
                            theta: f.from_int(theta),
                            lambda: f.from_int(lambda),
                            zeta: f.from_int(zeta),
                        });
                    }
                }
            }
        }
    }
    out
}

fn unit(f: &Field, d: usize, i: usize) -> Vec<FieldElement> {
    (0..d)
        .map(|j| if i == j { f.one() } else { f.zero() })
        .collect()
}

/// `t v_k = eig(k) v_k`, `X v_k = ζ v_{k+1}`, `Y` by columns, `w = Σ v_k`.
fn shift_module(
    f: &Field,
    gwa: &Gwa,
    p: u64,
    zeta: &FieldElement,
    eig: &dyn Fn(usize) -> FieldElement,
    extra: &mut Claims,
    y_col: impl Fn(usize) -> Vec<(usize, FieldElement)>,
) -> Result<(Gwa, MatrixModel), CatalogError> {
    let d = p as usize;
    let t = diagonal(f, &(0..d).map(eig).collect::<Vec<_>>());
    let x = by_columns(f, d, |k| vec![((k + 1) % d, zeta.clone())]);
    let y = by_columns(f, d, y_col);
    extra.push(
        "X^p",
        "X^p = ζ^p·id",
        x.pow(p as u32) == scalar_matrix(f, d, &zeta.pow(p as i64)?),
        None,
    );
    let model = MatrixModel {
        labels: (0..d).map(|k| format!("v{k}")).collect(),
        ring_mats: vec![t],
        ring_inv_mats: vec![None],
        xs: vec![x],
        ys: vec![y],
        w: sum_vector(f, d),
    };
    Ok((gwa.clone(), model))
}

/// `t v_k = (λ+k)v_k`, `X v_k = ζv_{k+1}`, `Y v_k = ζ^{-1}(λ+k−1)v_{k−1}`.
fn weyl_char_p(
    f: &Field,
    gwa: &Gwa,
    p: u64,
    lambda: &FieldElement,
    zeta: &FieldElement,
    extra: &mut Claims,
) -> Result<(Gwa, MatrixModel), CatalogError> {
    let zi = zeta.inv()?;
    let d = p as usize;
    shift_module(f, gwa, p, zeta, &|k| lambda + &int(f, k), extra, |k| {
        vec![((k + d - 1) % d, &zi * &(&(lambda + &int(f, k)) - &f.one()))]
    })
}

/// Compares the Smith module (`s = −1`, `ϑ = 0`) with the Weyl char-p module for `λ' = λ + 1`.
fn smith_weyl_correspondence(
    f: &Field,
    p: u64,
    lambda: &FieldElement,
    zeta: &FieldElement,
    smith: &MatrixModel,
) -> Result<bool, CatalogError> {
    let weyl = build_family(&FamilySpec::Weyl {
        field: f.clone(),
        n: 1,
    })?;
    let mut scratch = Claims(Vec::new());
    let (_, w) = weyl_char_p(f, &weyl, p, &(lambda + &f.one()), zeta, &mut scratch)?;
    let t_prime = smith.ring_mats[0].add(&Matrix::identity(f, p as usize));
    Ok(t_prime == w.ring_mats[0] && smith.xs[0] == w.xs[0] && smith.ys[0] == w.ys[0])
}

fn standard_claims(
    claims: &mut Claims,
    module: &WhittakerModule,
    stated_q: &PhiStableIdeal,
    degree: u32,
    simple_expected: bool,
    seed: u64,
) -> Result<(), CatalogError> {
    let rel = module.relation_checks()?;
    let failed: Vec<&str> = rel
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.name.as_str())
        .collect();
    claims.push(
        "relations",
        "every defining relation of the algebra holds as a matrix identity",
        failed.is_empty(),
        (!failed.is_empty()).then(|| failed.join("; ")),
    );
    claims.push(
        "whittaker vector",
        "X w = ζ w",
        module.w_is_whittaker()?,
        None,
    );
    claims.push("cyclic", "V = R·w", module.w_generates()?, None);
    let recovered = module.q().ideal();
    claims.push(
        "annihilator",
        format!("Ann_R(w) = {stated_q}"),
        recovered == stated_q.ideal(),
        Some(format!("recovered {recovered}")),
    );
    let tr = module.ann_w_truncated(degree);
    claims.push(
        "Ann_A(w)",
        format!("Ann_A(w) = AQ + A(X − ζ) on normal-form degree ≤ {degree}"),
        tr.equal,
        Some(format!(
            "kernel {} / span {} of {} monomials",
            tr.kernel_dim, tr.span_dim, tr.monomials
        )),
    );
    let verdict = module.is_simple(seed);
    let holds = matches!(
        (&verdict, simple_expected),
        (Simplicity::Simple(_), true) | (Simplicity::NotSimple { .. }, false)
    );
    claims.push(
        "simplicity",
        if simple_expected {
            "V is simple"
        } else {
            "V is not simple"
        },
        holds,
        Some(verdict.label().to_string()),
    );
    Ok(())
}

/// `V_k = span{v_k..v_{n−1}}` are submodules with `v_k` Whittaker of type `α^kζ`,
/// and `Ann_A(V) = Σ_j A t̃^{n−j} ∏_{k<j}(X − α^kζ)`.
fn chain_claims(
    claims: &mut Claims,
    module: &WhittakerModule,
    alpha: &FieldElement,
    beta: &FieldElement,
    zeta: &FieldElement,
    n: u32,
    degree: u32,
) -> Result<(), CatalogError> {
    let m = module.matrix_model()?;
    let f = module.gwa().field().clone();
    let d = n as usize;
    let mut chain_ok = true;
    for k in 0..d {
        let v = unit(&f, d, k);
        let sub = m.submodule_closure(std::slice::from_ref(&v));
        let inside = sub.iter().all(|u| u[..k].iter().all(|x| x.is_zero()));
        let eig = &alpha.pow(k as i64)? * zeta;
        let whittaker = m.xs[0].mul_vec(&v) == v.iter().map(|x| x * &eig).collect::<Vec<_>>();
        chain_ok &= sub.len() == d - k && inside && whittaker;
    }
    claims.push(
        "submodule chain",
        format!("V = V_0 ⊋ V_1 ⊋ … ⊋ V_{n} = 0 with V_k = R v_k and v_k Whittaker of type α^k ζ"),
        chain_ok,
        None,
    );
    let gwa = module.gwa();
    let tt = gwa.from_ring(t_tilde(gwa, alpha, beta));
    let gens: Vec<GwaElement> = (0..=n)
        .map(|j| {
            let prod = (0..j).fold(gwa.one(), |acc, k| {
                &acc * &(&gwa.x(0) - &gwa.scalar(&alpha.pow(k as i64).unwrap() * zeta))
            });
            &tt.pow(n - j) * &prod
        })
        .collect();
    let report = module.ann_v_check(&gens, degree)?;
    claims.push(
        "Ann_A(V)",
        format!("Ann_A(V) = Σ_j A t̃^(n−j) ∏_(k<j)(X − α^k ζ) on normal-form degree ≤ {degree}"),
        report.generators_annihilate && report.truncated.equal,
        Some(format!(
            "kernel {} / span {} of {} monomials",
            report.truncated.kernel_dim, report.truncated.span_dim, report.truncated.monomials
        )),
    );
    Ok(())
}
