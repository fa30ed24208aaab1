//! Annihilators: `Ann_R(w)` by FGLM on the matrix model, and truncated
//! comparisons of `Ann_A(w)` and `Ann_A(V)` with left ideals given by generators.

use super::{universal_act, MatrixModel, Realization, WhittakerError, WhittakerModule};
use crate::field::{Field, FieldElement};
use crate::gwa::{Alpha, GwaElement};
use crate::ideals::{Ideal, PhiStableIdeal, TermOrder};
use crate::linalg::Matrix;
use crate::ring::{Monomial, Ring, RingElement};
use std::collections::{BTreeMap, HashMap};

/// Extra degrees allowed for products `b·g` before intersecting with the
/// degree-`D` span.
const EXTRA_DEGREES: u32 = 5;

/// `{r ∈ R : r·v = 0}` computed by FGLM over the degrevlex order.
pub(crate) fn annihilator_of_vector(ring: &Ring, model: &MatrixModel, v: &[FieldElement]) -> Ideal {
    let field = ring.field();
    let laurent: Vec<usize> = (0..ring.nvars()).filter(|&i| ring.is_laurent(i)).collect();
    let d = model.dim();
    // Matrices of the polynomial model's variables: x_j, then y = ∏ K_j^{-1}.
    let mut var_mats: Vec<Matrix> = model.ring_mats.clone();
    if !laurent.is_empty() {
        let y = laurent.iter().fold(Matrix::identity(field, d), |acc, &j| {
            acc.mul(model.ring_inv_mats[j].as_ref().expect("Laurent inverse"))
        });
        var_mats.push(y);
    }
    let nv = var_mats.len();
    let mut standard: Vec<(Vec<i32>, Vec<FieldElement>)> = Vec::new();
    let mut leads: Vec<Vec<i32>> = Vec::new();
    let mut relations: Vec<RingElement> = Vec::new();
    let mut candidates: BTreeMap<CandKey, Vec<FieldElement>> = BTreeMap::new();
    candidates.insert(CandKey(vec![0; nv]), v.to_vec());
    let to_ring = |e: &[i32]| {
        let mut m = e[..ring.nvars()].to_vec();
        if !laurent.is_empty() {
            for &j in &laurent {
                m[j] -= e[ring.nvars()];
            }
        }
        Monomial(m)
    };
    while let Some((CandKey(m), vec)) = candidates.pop_first() {
        if leads.iter().any(|l| l.iter().zip(&m).all(|(a, b)| a <= b)) {
            continue;
        }
        let cols: Vec<Vec<FieldElement>> = standard.iter().map(|(_, u)| u.clone()).collect();
        let solution = if vec.iter().all(|x| x.is_zero()) {
            Some(vec![field.zero(); cols.len()])
        } else if cols.is_empty() {
            None
        } else {
            Matrix::from_columns(field, d, &cols).solve(&vec)
        };
        match solution {
            Some(c) => {
                let mut rel = ring.monomial(to_ring(&m));
                for ((s, _), ci) in standard.iter().zip(&c) {
                    rel = &rel - &ring.term(to_ring(s), ci.clone());
                }
                relations.push(rel);
                leads.push(m);
            }
            None => {
                for (k, mat) in var_mats.iter().enumerate() {
                    let mut n = m.clone();
                    n[k] += 1;
                    candidates
                        .entry(CandKey(n))
                        .or_insert_with(|| mat.mul_vec(&vec));
                }
                standard.push((m, vec));
            }
        }
    }
    Ideal::new(ring, relations).expect("annihilator ideal")
}

/// Exponent vector ordered by degrevlex, smallest first.
#[derive(Clone, PartialEq, Eq)]
struct CandKey(Vec<i32>);

impl Ord for CandKey {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        TermOrder::DegRevLex.cmp(&self.0, &o.0)
    }
}

impl PartialOrd for CandKey {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

/// Outcome of comparing `ker(a ↦ eval(a))` with the span of `b·g` at degree ≤ `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedEquality {
    pub degree: u32,
    /// Number of normal-form monomials of degree ≤ `degree`.
    pub monomials: usize,
    pub kernel_dim: usize,
    pub span_dim: usize,
    /// Extra degree used for the products before intersecting.
    pub extra_degree: u32,
    pub equal: bool,
}

type Key = (Alpha, Monomial);

fn expand(a: &GwaElement) -> Vec<(Key, FieldElement)> {
    a.terms()
        .flat_map(|(alpha, r)| {
            r.terms()
                .map(move |(m, c)| ((alpha.clone(), m.clone()), c.clone()))
        })
        .collect()
}

/// Compares `{a ∈ span B_D : eval(a) = 0}` with `span{b·g} ∩ span B_D`.
fn truncated_equality<K: Ord + Clone>(
    module: &WhittakerModule,
    degree: u32,
    gens: &[GwaElement],
    eval: impl Fn(&GwaElement) -> Vec<(K, FieldElement)>,
) -> TruncatedEquality {
    let gwa = module.gwa();
    let ring = gwa.ring();
    let f = ring.field().clone();
    let basis: Vec<GwaElement> = gwa
        .basis_up_to(degree)
        .into_iter()
        .map(|(a, m)| gwa.monomial(ring.monomial(m), a))
        .collect();
    let nb = basis.len();
    let index: HashMap<Key, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (expand(b)[0].0.clone(), i))
        .collect();
    // Kernel of evaluation.
    let evals: Vec<Vec<(K, FieldElement)>> = basis.iter().map(&eval).collect();
    let mut out_keys: BTreeMap<K, usize> = BTreeMap::new();
    for e in &evals {
        for (k, _) in e {
            let n = out_keys.len();
            out_keys.entry(k.clone()).or_insert(n);
        }
    }
    let mut em = Matrix::zeros(&f, out_keys.len().max(1), nb);
    for (j, e) in evals.iter().enumerate() {
        for (k, c) in e {
            em.set(out_keys[k], j, c.clone());
        }
    }
    let kernel = em.kernel();
    let kernel_dim = kernel.len();
    let mut last = None;
    for extra in 0..=EXTRA_DEGREES {
        let span = product_span(module, degree, extra, gens, &index, nb, &f);
        let span_dim = span.len();
        let mut both = kernel.clone();
        both.extend(span.iter().cloned());
        let joint = if both.is_empty() {
            0
        } else {
            Matrix::from_rows(&f, nb, both).rank()
        };
        let equal = joint == kernel_dim && joint == span_dim;
        let res = TruncatedEquality {
            degree,
            monomials: nb,
            kernel_dim,
            span_dim,
            extra_degree: extra,
            equal,
        };
        if equal {
            return res;
        }
        last = Some(res);
    }
    last.expect("at least one attempt")
}

/// Basis of `span{b·g : deg b + deg g ≤ D + extra} ∩ span B_D`, in `B_D` coordinates.
fn product_span(
    module: &WhittakerModule,
    degree: u32,
    extra: u32,
    gens: &[GwaElement],
    index: &HashMap<Key, usize>,
    nb: usize,
    f: &Field,
) -> Vec<Vec<FieldElement>> {
    let gwa = module.gwa();
    let ring = gwa.ring();
    let top = degree + extra;
    let mut products: Vec<Vec<(Key, FieldElement)>> = Vec::new();
    for g in gens {
        let dg = g.degree().unwrap_or(0);
        if dg > top {
            continue;
        }
        for (a, m) in gwa.basis_up_to(top - dg) {
            let b = gwa.monomial(ring.monomial(m), a);
            let p = &b * g;
            if !p.is_zero() {
                products.push(expand(&p));
            }
        }
    }
    let mut outside: HashMap<Key, usize> = HashMap::new();
    for p in &products {
        for (k, _) in p {
            if !index.contains_key(k) {
                let n = outside.len();
                outside.entry(k.clone()).or_insert(n);
            }
        }
    }
    let inside_vec = |p: &[(Key, FieldElement)]| {
        let mut v = vec![f.zero(); nb];
        for (k, c) in p {
            if let Some(&i) = index.get(k) {
                v[i] = c.clone();
            }
        }
        v
    };
    let vectors: Vec<Vec<FieldElement>> = if outside.is_empty() {
        products.iter().map(|p| inside_vec(p)).collect()
    } else {
        let mut om = Matrix::zeros(f, outside.len(), products.len());
        for (j, p) in products.iter().enumerate() {
            for (k, c) in p {
                if let Some(&i) = outside.get(k) {
                    om.set(i, j, c.clone());
                }
            }
        }
        let inside: Vec<Vec<FieldElement>> = products.iter().map(|p| inside_vec(p)).collect();
        om.kernel()
            .into_iter()
            .map(|comb| {
                (0..nb)
                    .map(|i| {
                        comb.iter()
                            .zip(&inside)
                            .filter(|(c, _)| !c.is_zero())
                            .fold(f.zero(), |acc, (c, v)| &acc + &(c * &v[i]))
                    })
                    .collect()
            })
            .collect()
    };
    crate::linalg::span_basis(f, nb, &vectors)
}

/// Verdict of `Ann_A(V)` against a candidate left ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnVReport {
    /// Each candidate generator acts as zero on `V`.
    pub generators_annihilate: bool,
    pub truncated: TruncatedEquality,
}

impl WhittakerModule {
    /// `Ann_R(w)` recomputed from the realisation.
    pub fn recover_annihilator(&self) -> Result<PhiStableIdeal, WhittakerError> {
        match self.realization() {
            Realization::Matrix(m) => {
                let ideal = annihilator_of_vector(self.gwa().ring(), m, &m.w);
                PhiStableIdeal::new(ideal, self.gwa().phis())
                    .map_err(|e| WhittakerError::Inconsistent(e.to_string()))
            }
            Realization::Symbolic => Ok(self.q().clone()),
        }
    }

    /// Residue coordinates of `a·w` (for any realisation).
    fn w_image(&self, a: &GwaElement) -> Vec<(Monomial, FieldElement)> {
        let r =
            universal_act(a, &self.gwa().ring().one(), self.zeta()).expect("compatible element");
        self.q()
            .normal_form(&r)
            .terms()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// `ker(a ↦ a·w) = AQ + Σ A(X_i − ζ_i)` on normal-form monomials of degree ≤ `degree`.
    pub fn ann_w_truncated(&self, degree: u32) -> TruncatedEquality {
        let gens = self.ann_w_generators();
        match self.realization() {
            Realization::Matrix(m) => truncated_equality(self, degree, &gens, |a| {
                m.act_vec(a, &m.w)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            }),
            Realization::Symbolic => truncated_equality(self, degree, &gens, |a| self.w_image(a)),
        }
    }

    /// Checks `A·candidate ⊆ Ann_A(V)` and equality on degree ≤ `degree`.
    /// Symbolic modules are probed on residues of degree ≤ `degree`.
    pub fn ann_v_check(
        &self,
        candidate: &[GwaElement],
        degree: u32,
    ) -> Result<AnnVReport, WhittakerError> {
        for g in candidate {
            if g.gwa() != self.gwa() {
                return Err(WhittakerError::PresentationMismatch);
            }
        }
        let ring = self.gwa().ring();
        match self.realization() {
            Realization::Matrix(m) => {
                let generators_annihilate = candidate.iter().all(|g| m.act_matrix(g).is_zero());
                let truncated = truncated_equality(self, degree, candidate, |a| {
                    let mat = m.act_matrix(a);
                    let d = m.dim();
                    (0..d * d)
                        .map(|k| (k, mat.get(k / d, k % d).clone()))
                        .filter(|(_, c)| !c.is_zero())
                        .collect()
                });
                Ok(AnnVReport {
                    generators_annihilate,
                    truncated,
                })
            }
            Realization::Symbolic => {
                let probes: Vec<RingElement> = ring
                    .monomials_up_to(degree)
                    .into_iter()
                    .map(|m| self.q().normal_form(&ring.monomial(m)))
                    .filter(|r| !r.is_zero())
                    .collect();
                let act = |a: &GwaElement| -> Vec<((usize, Monomial), FieldElement)> {
                    probes
                        .iter()
                        .enumerate()
                        .flat_map(|(i, r)| {
                            let img = self.q().normal_form(
                                &universal_act(a, r, self.zeta()).expect("compatible"),
                            );
                            img.terms()
                                .map(|(m, c)| ((i, m.clone()), c.clone()))
                                .collect::<Vec<_>>()
                        })
                        .collect()
                };
                let generators_annihilate = candidate.iter().all(|g| act(g).is_empty());
                let truncated = truncated_equality(self, degree, candidate, act);
                if generators_annihilate && !truncated.equal {
                    return Err(WhittakerError::TruncationTooSmall {
                        degree,
                        detail: format!(
                            "probe kernel has dimension {} but the candidate spans {}",
                            truncated.kernel_dim, truncated.span_dim
                        ),
                    });
                }
                Ok(AnnVReport {
                    generators_annihilate,
                    truncated,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::WhittakerType;
    use super::*;
    use crate::gwa::Gwa;
    use crate::ring::Automorphism;

    #[test]
    fn annihilator_equality_on_char_3_weyl() {
        let f = Field::prime(3).unwrap();
        let r = Ring::polynomial(f.clone(), &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![&t - &r.one()]).unwrap();
        let a = Gwa::new(r.clone(), vec![phi], vec![t.clone()]).unwrap();
        let q = PhiStableIdeal::from_generators(&r, vec![&t.pow(3) - &t], a.phis()).unwrap();
        let m = WhittakerModule::build(&a, q.clone(), WhittakerType::new(vec![f.one()]).unwrap())
            .unwrap();
        assert_eq!(m.recover_annihilator().unwrap(), q);
        let eq = m.ann_w_truncated(4);
        assert!(eq.equal, "{eq:?}");
        assert!(eq.kernel_dim > 0);
    }

    #[test]
    fn one_dimensional_module_annihilator() {
        // Quantum plane, φ(t) = 2t, Q = (t): V = 𝔽w with Xw = ζw, Yw = 0.
        let f = Field::rationals();
        let r = Ring::polynomial(f.clone(), &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![t.scale(&f.from_int(2))]).unwrap();
        let a = Gwa::new(r.clone(), vec![phi], vec![t.clone()]).unwrap();
        let q = PhiStableIdeal::from_generators(&r, vec![t.clone()], a.phis()).unwrap();
        let zeta = f.from_int(5);
        let m =
            WhittakerModule::build(&a, q, WhittakerType::new(vec![zeta.clone()]).unwrap()).unwrap();
        let cand = m.ann_w_generators();
        let rep = m.ann_v_check(&cand, 3).unwrap();
        assert!(rep.generators_annihilate);
        assert!(rep.truncated.equal, "{rep:?}");
        assert!(m.ann_w_member(&a.y(0)).unwrap());
    }
}
