//! Whittaker modules `V_Q = R/Q` with cyclic vector `w = 1 + Q` satisfying
//! `X_i·w = ζ_i·w`.
//!
//! The universal module is `R` itself with
//! `X_i.r = ζ_i φ_i(r)` and `Y_i.r = ζ_i^{-1} φ_i^{-1}(r) t_i`.
//! When `R/Q` is finite-dimensional the module is realised by matrices on the
//! standard-monomial basis; otherwise elements are residues modulo `Q`.

mod annihilator;
mod simple;
mod vectors;

pub use annihilator::{AnnVReport, TruncatedEquality};
pub use simple::{SimpleCertificate, Simplicity};
pub use vectors::{EndoReport, WhittakerVectors};

use crate::field::FieldElement;
use crate::gwa::{Gwa, GwaElement, GwaError};
use crate::ideals::{IdealError, PhiStableIdeal};
use crate::linalg::{in_span, span_basis, Matrix};
use crate::ring::{Monomial, RingElement};
use serde_json::{json, Value};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WhittakerError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Gwa(#[from] GwaError),
    #[error("expected {expected} Whittaker parameters, got {got}")]
    ZetaCount { expected: usize, got: usize },
    #[error("ζ_{0} is zero")]
    ZeroZeta(usize),
    #[error("the unit ideal gives the zero module, so (V, w) is not a Whittaker pair")]
    NotAWhittakerPair,
    #[error("module and element belong to different presentations")]
    PresentationMismatch,
    #[error("operation needs a finite-dimensional matrix model")]
    NotMatrixModel,
    #[error("truncation degree {degree} too small: {detail}")]
    TruncationTooSmall { degree: u32, detail: String },
    #[error("matrix model is inconsistent: {0}")]
    Inconsistent(String),
}

/// The type `ζ = (ζ_1, …, ζ_n)` of a Whittaker vector, all entries nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerType(Vec<FieldElement>);

impl WhittakerType {
    pub fn new(zeta: Vec<FieldElement>) -> Result<WhittakerType, WhittakerError> {
        if let Some(i) = zeta.iter().position(|z| z.is_zero()) {
            return Err(WhittakerError::ZeroZeta(i));
        }
        Ok(WhittakerType(zeta))
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &FieldElement {
        &self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `a·r` in the universal module, by linearity from the monomial rules.
pub fn universal_act(
    a: &GwaElement,
    r: &RingElement,
    zeta: &WhittakerType,
) -> Result<RingElement, WhittakerError> {
    let gwa = a.gwa();
    if r.ring() != gwa.ring() {
        return Err(WhittakerError::PresentationMismatch);
    }
    if zeta.len() != gwa.rank() {
        return Err(WhittakerError::ZetaCount {
            expected: gwa.rank(),
            got: zeta.len(),
        });
    }
    let mut out = gwa.ring().zero();
    for (alpha, c) in a.terms() {
        let mut v = r.clone();
        for i in (0..alpha.len()).rev() {
            v = apply_z(gwa, zeta, i, alpha[i], v);
        }
        out = &out + &(c * &v);
    }
    Ok(out)
}

fn apply_z(gwa: &Gwa, zeta: &WhittakerType, i: usize, e: i32, mut v: RingElement) -> RingElement {
    let z = zeta.get(i);
    let zi = z.inv().expect("nonzero ζ");
    for _ in 0..e.unsigned_abs() {
        v = if e > 0 {
            gwa.phi(i).apply(&v).scale(z)
        } else {
            &gwa.phi(i).apply_inverse(&v).scale(&zi) * gwa.t(i)
        };
    }
    v
}

/// Finite-dimensional realisation: one matrix per generator of `R` (and per
/// inverse of a Laurent generator), per `X_i` and per `Y_i`, plus `w`.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub labels: Vec<String>,
    pub ring_mats: Vec<Matrix>,
    pub ring_inv_mats: Vec<Option<Matrix>>,
    pub xs: Vec<Matrix>,
    pub ys: Vec<Matrix>,
    pub w: Vec<FieldElement>,
}

impl MatrixModel {
    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn ring_matrix(&self, r: &RingElement) -> Matrix {
        let f = r.field();
        let d = self.dim();
        let mut cache: HashMap<(usize, i32), Matrix> = HashMap::new();
        let mut power = |i: usize, e: i32| {
            cache
                .entry((i, e))
                .or_insert_with(|| {
                    if e >= 0 {
                        self.ring_mats[i].pow(e as u32)
                    } else {
                        self.ring_inv_mats[i]
                            .as_ref()
                            .expect("inverse matrix for a Laurent generator")
                            .pow(e.unsigned_abs())
                    }
                })
                .clone()
        };
        r.eval_with(
            Matrix::zeros(f, d, d),
            Matrix::identity(f, d),
            |c, m| m.scale(c),
            |a, b| a.mul(b),
            |a, b| a.add(&b),
            &mut power,
        )
    }

    pub fn z_matrix(&self, alpha: &[i32]) -> Matrix {
        let f = self.field();
        let mut m = Matrix::identity(f, self.dim());
        for (i, &e) in alpha.iter().enumerate() {
            let g = if e > 0 { &self.xs[i] } else { &self.ys[i] };
            m = m.mul(&g.pow(e.unsigned_abs()));
        }
        m
    }

    pub fn act_matrix(&self, a: &GwaElement) -> Matrix {
        let d = self.dim();
        a.terms()
            .fold(Matrix::zeros(self.field(), d, d), |acc, (alpha, c)| {
                acc.add(&self.ring_matrix(c).mul(&self.z_matrix(alpha)))
            })
    }

    pub fn act_vec(&self, a: &GwaElement, v: &[FieldElement]) -> Vec<FieldElement> {
        let d = self.dim();
        let mut out = vec![self.field().zero(); d];
        for (alpha, c) in a.terms() {
            let mut u = v.to_vec();
            for (i, &e) in alpha.iter().enumerate().rev() {
                let g = if e > 0 { &self.xs[i] } else { &self.ys[i] };
                for _ in 0..e.unsigned_abs() {
                    u = g.mul_vec(&u);
                }
            }
            let u = self.ring_matrix(c).mul_vec(&u);
            out = out.iter().zip(&u).map(|(a, b)| a + b).collect();
        }
        out
    }

    fn field(&self) -> &crate::field::Field {
        self.w[0].field()
    }

    /// Every action matrix, in a fixed order.
    pub fn generators(&self) -> Vec<&Matrix> {
        let mut g: Vec<&Matrix> = self.ring_mats.iter().collect();
        g.extend(self.ring_inv_mats.iter().flatten());
        g.extend(self.xs.iter());
        g.extend(self.ys.iter());
        g
    }

    /// Smallest subspace containing `vs` and stable under every generator.
    pub fn submodule_closure(&self, vs: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
        invariant_closure(self.field(), self.dim(), &self.generators(), vs)
    }
}

/// Smallest subspace containing `vs` and stable under the matrices `gens`.
pub fn invariant_closure(
    f: &crate::field::Field,
    d: usize,
    gens: &[&Matrix],
    vs: &[Vec<FieldElement>],
) -> Vec<Vec<FieldElement>> {
    let mut basis = span_basis(f, d, vs);
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for g in gens {
                let u = g.mul_vec(v);
                if !in_span(f, d, &basis, &u) {
                    basis.push(u.clone());
                    basis = span_basis(f, d, &basis);
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    basis
}

#[derive(Clone, Debug)]
pub enum Realization {
    Matrix(MatrixModel),
    /// Residues modulo `Q`, for infinite-dimensional `R/Q`.
    Symbolic,
}

/// A Whittaker pair `(V, w)` with `Ann_R(w) = Q`.
#[derive(Clone, Debug)]
pub struct WhittakerModule {
    gwa: Gwa,
    zeta: WhittakerType,
    q: PhiStableIdeal,
    realization: Realization,
}

/// Name and outcome of one matrix identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

fn unit_vector(f: &crate::field::Field, d: usize, i: usize) -> Vec<FieldElement> {
    (0..d)
        .map(|j| if i == j { f.one() } else { f.zero() })
        .collect()
}

impl WhittakerModule {
    /// `V_Q = R/Q`; a matrix model when `R/Q` is finite-dimensional.
    pub fn build(
        gwa: &Gwa,
        q: PhiStableIdeal,
        zeta: WhittakerType,
    ) -> Result<WhittakerModule, WhittakerError> {
        if q.ring() != gwa.ring() || q.phis() != gwa.phis() {
            return Err(WhittakerError::PresentationMismatch);
        }
        if zeta.len() != gwa.rank() {
            return Err(WhittakerError::ZetaCount {
                expected: gwa.rank(),
                got: zeta.len(),
            });
        }
        if q.is_unit() {
            return Err(WhittakerError::NotAWhittakerPair);
        }
        let realization = match q.standard_monomials() {
            Some(std) => Realization::Matrix(Self::matrices(gwa, &q, &zeta, &std)),
            None => Realization::Symbolic,
        };
        Ok(WhittakerModule {
            gwa: gwa.clone(),
            zeta,
            q,
            realization,
        })
    }

    fn matrices(
        gwa: &Gwa,
        q: &PhiStableIdeal,
        zeta: &WhittakerType,
        std: &[Monomial],
    ) -> MatrixModel {
        let ring = gwa.ring();
        let f = ring.field();
        let basis: Vec<RingElement> = std.iter().map(|m| ring.monomial(m.clone())).collect();
        let matrix_of = |op: &dyn Fn(&RingElement) -> RingElement| {
            let cols: Vec<Vec<FieldElement>> = basis
                .iter()
                .map(|b| q.coordinates(&op(b)).expect("finite quotient"))
                .collect();
            Matrix::from_columns(f, basis.len(), &cols)
        };
        let ring_mats = (0..ring.nvars())
            .map(|j| matrix_of(&|b| &ring.var(j) * b))
            .collect();
        let ring_inv_mats = (0..ring.nvars())
            .map(|j| {
                ring.is_laurent(j).then(|| {
                    let inv = ring.var(j).inverse().expect("Laurent unit");
                    matrix_of(&|b| &inv * b)
                })
            })
            .collect();
        let xs = (0..gwa.rank())
            .map(|i| matrix_of(&|b| universal_act(&gwa.x(i), b, zeta).expect("compatible")))
            .collect();
        let ys = (0..gwa.rank())
            .map(|i| matrix_of(&|b| universal_act(&gwa.y(i), b, zeta).expect("compatible")))
            .collect();
        MatrixModel {
            labels: basis.iter().map(|b| b.to_string()).collect(),
            ring_mats,
            ring_inv_mats,
            xs,
            ys,
            w: q.coordinates(&ring.one()).expect("finite quotient"),
        }
    }

    /// Wraps an explicit matrix model; `Q` is recovered as `Ann_R(w)`.
    pub fn from_matrix_model(
        gwa: &Gwa,
        zeta: WhittakerType,
        model: MatrixModel,
    ) -> Result<WhittakerModule, WhittakerError> {
        let ring = gwa.ring();
        let d = model.dim();
        let ok_shape = d > 0
            && model.ring_mats.len() == ring.nvars()
            && model.ring_inv_mats.len() == ring.nvars()
            && model.xs.len() == gwa.rank()
            && model.ys.len() == gwa.rank()
            && model
                .generators()
                .iter()
                .all(|m| m.rows() == d && m.cols() == d)
            && (0..ring.nvars()).all(|j| ring.is_laurent(j) == model.ring_inv_mats[j].is_some());
        if !ok_shape {
            return Err(WhittakerError::Inconsistent(
                "matrix sizes do not match the presentation".into(),
            ));
        }
        if zeta.len() != gwa.rank() {
            return Err(WhittakerError::ZetaCount {
                expected: gwa.rank(),
                got: zeta.len(),
            });
        }
        let ann = annihilator::annihilator_of_vector(ring, &model, &model.w);
        let q = PhiStableIdeal::new(ann, gwa.phis())
            .map_err(|e| WhittakerError::Inconsistent(e.to_string()))?;
        Ok(WhittakerModule {
            gwa: gwa.clone(),
            zeta,
            q,
            realization: Realization::Matrix(model),
        })
    }

    pub fn gwa(&self) -> &Gwa {
        &self.gwa
    }

    pub fn zeta(&self) -> &WhittakerType {
        &self.zeta
    }

    pub fn q(&self) -> &PhiStableIdeal {
        &self.q
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn matrix_model(&self) -> Result<&MatrixModel, WhittakerError> {
        match &self.realization {
            Realization::Matrix(m) => Ok(m),
            Realization::Symbolic => Err(WhittakerError::NotMatrixModel),
        }
    }

    pub fn dimension(&self) -> Option<usize> {
        self.matrix_model().ok().map(|m| m.dim())
    }

    fn check_algebra(&self, a: &GwaElement) -> Result<(), WhittakerError> {
        if a.gwa() != &self.gwa {
            return Err(WhittakerError::PresentationMismatch);
        }
        Ok(())
    }

    /// `a·w` as a residue representative modulo `Q` (any realisation).
    pub fn act_on_w_residue(&self, a: &GwaElement) -> Result<RingElement, WhittakerError> {
        self.check_algebra(a)?;
        Ok(self
            .q
            .normal_form(&universal_act(a, &self.gwa.ring().one(), &self.zeta)?))
    }

    /// `a·w = 0`.
    pub fn ann_w_member(&self, a: &GwaElement) -> Result<bool, WhittakerError> {
        self.check_algebra(a)?;
        Ok(match &self.realization {
            Realization::Matrix(m) => m.act_vec(a, &m.w).iter().all(|x| x.is_zero()),
            Realization::Symbolic => self.act_on_w_residue(a)?.is_zero(),
        })
    }

    /// Generators of `Ann_A(w) = AQ + Σ A(X_i − ζ_i)`.
    pub fn ann_w_generators(&self) -> Vec<GwaElement> {
        let mut g: Vec<GwaElement> = self
            .q
            .basis()
            .into_iter()
            .map(|r| self.gwa.from_ring(r))
            .collect();
        for i in 0..self.gwa.rank() {
            g.push(&self.gwa.x(i) - &self.gwa.scalar(self.zeta.get(i).clone()));
        }
        g
    }

    /// The defining relations of the algebra as matrix identities.
    pub fn relation_checks(&self) -> Result<Vec<RelationCheck>, WhittakerError> {
        let m = self.matrix_model()?;
        let gwa = &self.gwa;
        let ring = gwa.ring();
        let d = m.dim();
        let id = Matrix::identity(ring.field(), d);
        let mut out = Vec::new();
        let mut push = |name: String, holds: bool| out.push(RelationCheck { name, holds });
        for i in 0..gwa.rank() {
            let (x, y) = (&m.xs[i], &m.ys[i]);
            let (xn, yn) = (gwa.generator_name(i, true), gwa.generator_name(i, false));
            push(
                format!("{yn}{xn} = t_{}", i + 1),
                y.mul(x) == m.ring_matrix(gwa.t(i)),
            );
            push(
                format!("{xn}{yn} = φ(t_{})", i + 1),
                x.mul(y) == m.ring_matrix(&gwa.phi(i).apply(gwa.t(i))),
            );
            for (j, v) in ring.vars().iter().enumerate() {
                let xj = ring.var(j);
                push(
                    format!("{xn}·{v} = φ({v})·{xn}"),
                    x.mul(&m.ring_mats[j]) == m.ring_matrix(&gwa.phi(i).apply(&xj)).mul(x),
                );
                push(
                    format!("{yn}·{v} = φ^-1({v})·{yn}"),
                    y.mul(&m.ring_mats[j]) == m.ring_matrix(&gwa.phi(i).apply_inverse(&xj)).mul(y),
                );
            }
            for k in i + 1..gwa.rank() {
                let (xk, yk) = (&m.xs[k], &m.ys[k]);
                for (a, an) in [(x, &xn), (y, &yn)] {
                    for (b, bn) in [
                        (xk, gwa.generator_name(k, true)),
                        (yk, gwa.generator_name(k, false)),
                    ] {
                        push(format!("{an}{bn} = {bn}{an}"), a.mul(b) == b.mul(a));
                    }
                }
            }
        }
        for (j, v) in ring.vars().iter().enumerate() {
            for (k, u) in ring.vars().iter().enumerate().skip(j + 1) {
                push(
                    format!("{v}{u} = {u}{v}"),
                    m.ring_mats[j].mul(&m.ring_mats[k]) == m.ring_mats[k].mul(&m.ring_mats[j]),
                );
            }
            if let Some(inv) = &m.ring_inv_mats[j] {
                push(format!("{v}·{v}^-1 = 1"), m.ring_mats[j].mul(inv) == id);
            }
        }
        Ok(out)
    }

    /// `X_i w = ζ_i w` for every `i`.
    pub fn w_is_whittaker(&self) -> Result<bool, WhittakerError> {
        let m = self.matrix_model()?;
        Ok((0..self.gwa.rank()).all(|i| {
            m.xs[i].mul_vec(&m.w) == m.w.iter().map(|v| v * self.zeta.get(i)).collect::<Vec<_>>()
        }))
    }

    /// `R·w = V`.
    pub fn w_generates(&self) -> Result<bool, WhittakerError> {
        let m = self.matrix_model()?;
        let mut gens: Vec<&Matrix> = m.ring_mats.iter().collect();
        gens.extend(m.ring_inv_mats.iter().flatten());
        Ok(
            invariant_closure(self.gwa.field(), m.dim(), &gens, std::slice::from_ref(&m.w)).len()
                == m.dim(),
        )
    }

    /// Matrix of `a` on `V` (matrix models only).
    pub fn act_matrix(&self, a: &GwaElement) -> Result<Matrix, WhittakerError> {
        self.check_algebra(a)?;
        Ok(self.matrix_model()?.act_matrix(a))
    }

    pub fn standard_basis_vector(&self, i: usize) -> Result<Vec<FieldElement>, WhittakerError> {
        let m = self.matrix_model()?;
        Ok(unit_vector(self.gwa.field(), m.dim(), i))
    }

    pub fn to_json(&self) -> Value {
        let mats = |ms: &[Matrix]| -> Vec<Value> { ms.iter().map(matrix_json).collect() };
        let zeta: Vec<String> = self.zeta.values().iter().map(|z| z.to_string()).collect();
        let q: Vec<String> = self
            .q
            .display_generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        match &self.realization {
            Realization::Matrix(m) => {
                let ring = self.gwa.ring();
                let ring_mats: serde_json::Map<String, Value> = ring
                    .vars()
                    .iter()
                    .zip(&m.ring_mats)
                    .map(|(v, mat)| (v.clone(), matrix_json(mat)))
                    .collect();
                json!({
                    "realization": "matrix",
                    "dimension": m.dim(),
                    "basis": m.labels,
                    "zeta": zeta,
                    "Q": q,
                    "w": m.w.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "ring_matrices": ring_mats,
                    "X": mats(&m.xs),
                    "Y": mats(&m.ys),
                })
            }
            Realization::Symbolic => json!({
                "realization": "symbolic",
                "zeta": zeta,
                "Q": q,
            }),
        }
    }
}

/// Row-major array of exact scalar strings.
pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|x| Value::String(x.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::{Automorphism, Ring};

    fn weyl(f: &Field) -> Gwa {
        let r = Ring::polynomial(f.clone(), &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![&t - &r.one()]).unwrap();
        Gwa::new(r, vec![phi], vec![t]).unwrap()
    }

    #[test]
    fn universal_action_examples() {
        let f = Field::rationals();
        let a = weyl(&f);
        let ring = a.ring().clone();
        let zeta = WhittakerType::new(vec![f.from_int(3)]).unwrap();
        let one = ring.one();
        assert_eq!(
            universal_act(&a.x(0), &one, &zeta).unwrap(),
            ring.from_int(3)
        );
        let third = f.from_int(3).inv().unwrap();
        assert_eq!(
            universal_act(&a.y(0), &one, &zeta).unwrap(),
            ring.var(0).scale(&third)
        );
        let t2 = ring.var(0).pow(2);
        assert_eq!(
            universal_act(&a.x(0), &t2, &zeta).unwrap(),
            (&ring.var(0) - &one).pow(2).scale(&f.from_int(3))
        );
        // Y − ζ^{-1}t annihilates w_u.
        let m = WhittakerModule::build(
            &a,
            PhiStableIdeal::from_generators(&ring, vec![], a.phis()).unwrap(),
            zeta,
        )
        .unwrap();
        let e = &a.y(0) - &a.from_ring(ring.var(0).scale(&third));
        assert!(m.ann_w_member(&e).unwrap());
        assert!(matches!(m.realization(), Realization::Symbolic));
    }

    #[test]
    fn char_p_weyl_quotient_is_a_module() {
        let f = Field::prime(3).unwrap();
        let a = weyl(&f);
        let ring = a.ring().clone();
        let t = ring.var(0);
        let q = PhiStableIdeal::from_generators(&ring, vec![&t.pow(3) - &t], a.phis()).unwrap();
        let m = WhittakerModule::build(&a, q.clone(), WhittakerType::new(vec![f.one()]).unwrap())
            .unwrap();
        assert_eq!(m.dimension(), Some(3));
        assert!(m.relation_checks().unwrap().iter().all(|c| c.holds));
        assert!(m.w_is_whittaker().unwrap());
        assert!(m.w_generates().unwrap());
        let again = WhittakerModule::from_matrix_model(
            &a,
            m.zeta().clone(),
            m.matrix_model().unwrap().clone(),
        )
        .unwrap();
        assert_eq!(again.q(), &q);
    }

    #[test]
    fn unit_ideal_rejected() {
        let f = Field::rationals();
        let a = weyl(&f);
        let ring = a.ring().clone();
        let q = PhiStableIdeal::from_generators(&ring, vec![ring.one()], a.phis()).unwrap();
        let err =
            WhittakerModule::build(&a, q, WhittakerType::new(vec![f.one()]).unwrap()).unwrap_err();
        assert_eq!(err, WhittakerError::NotAWhittakerPair);
    }
}
