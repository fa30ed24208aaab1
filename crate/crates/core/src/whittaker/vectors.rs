//! Whittaker vectors `Wh_η(V)` by two routes, and `End_A(V)` against `S/Q`.

use super::{universal_act, MatrixModel, Realization, WhittakerError, WhittakerModule};
use crate::field::{Field, FieldElement};
use crate::linalg::{intersect, span_basis, Matrix};
use crate::ring::{Monomial, RingElement};
use std::collections::BTreeMap;

/// `Wh_η(V) = {v : X_i v = η_i v}` computed on the `X`-matrices and, separately,
/// as `{r̄ : φ̄_i(r̄) = ζ_i^{-1}η_i r̄}` mapped through `r ↦ r·w`.
#[derive(Clone, Debug)]
pub struct WhittakerVectors {
    /// Basis in module coordinates (matrix models) from the `X`-eigenspace.
    pub vectors: Vec<Vec<FieldElement>>,
    /// Ring representatives `r` with `r·w` spanning the space (φ̄-eigenvector route).
    pub residues: Vec<RingElement>,
    pub dimension: usize,
    pub routes_agree: bool,
    /// False for symbolic modules, where only residues up to the given degree are searched.
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct EndoReport {
    pub commutant: Vec<Matrix>,
    /// Representatives of a basis of `S/Q`, `S = {s : s − φ_i(s) ∈ Q ∀i}`.
    pub s_over_q: Vec<RingElement>,
    pub dimension: usize,
    /// `π(S) = End_A(V)` as subspaces of `End(V)`.
    pub agree: bool,
}

fn flatten(m: &Matrix) -> Vec<FieldElement> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

fn same_span(f: &Field, dim: usize, a: &[Vec<FieldElement>], b: &[Vec<FieldElement>]) -> bool {
    let (a, b) = (span_basis(f, dim, a), span_basis(f, dim, b));
    a.len() == b.len() && intersect(f, dim, &a, &b).len() == a.len()
}

impl WhittakerModule {
    /// Residue basis of `R/Q` with the matrices of every `φ̄_i` on it.
    fn quotient_basis(&self) -> Option<(Vec<RingElement>, Vec<Matrix>)> {
        let ring = self.gwa().ring();
        let std: Vec<Monomial> = self.q().standard_monomials()?;
        let basis: Vec<RingElement> = std.iter().map(|m| ring.monomial(m.clone())).collect();
        let phis = self
            .gwa()
            .phis()
            .iter()
            .map(|p| {
                let cols: Vec<Vec<FieldElement>> = basis
                    .iter()
                    .map(|b| self.q().coordinates(&p.apply(b)).expect("finite quotient"))
                    .collect();
                Matrix::from_columns(ring.field(), basis.len(), &cols)
            })
            .collect();
        Some((basis, phis))
    }

    fn combine(basis: &[RingElement], c: &[FieldElement]) -> RingElement {
        basis
            .iter()
            .zip(c)
            .fold(basis[0].ring().zero(), |acc, (b, x)| &acc + &b.scale(x))
    }

    pub fn whittaker_vectors(
        &self,
        eta: &[FieldElement],
        degree: u32,
    ) -> Result<WhittakerVectors, WhittakerError> {
        let n = self.gwa().rank();
        if eta.len() != n {
            return Err(WhittakerError::ZetaCount {
                expected: n,
                got: eta.len(),
            });
        }
        match self.realization() {
            Realization::Matrix(m) => self.whittaker_vectors_matrix(m, eta),
            Realization::Symbolic => Ok(self.whittaker_vectors_symbolic(eta, degree)),
        }
    }

    fn whittaker_vectors_matrix(
        &self,
        m: &MatrixModel,
        eta: &[FieldElement],
    ) -> Result<WhittakerVectors, WhittakerError> {
        let f = self.gwa().field().clone();
        let d = m.dim();
        let id = Matrix::identity(&f, d);
        let stacked = (0..eta.len())
            .map(|i| m.xs[i].sub(&id.scale(&eta[i])))
            .reduce(|a, b| a.vstack(&b))
            .expect("rank ≥ 1");
        let vectors = span_basis(&f, d, &stacked.kernel());
        let (basis, phis) = self
            .quotient_basis()
            .ok_or(WhittakerError::NotMatrixModel)?;
        let k = basis.len();
        let idk = Matrix::identity(&f, k);
        let eig = phis
            .iter()
            .enumerate()
            .map(|(i, p)| {
                p.sub(&idk.scale(&(&self.zeta().get(i).inv().expect("nonzero ζ") * &eta[i])))
            })
            .reduce(|a, b| a.vstack(&b))
            .expect("rank ≥ 1");
        let residues: Vec<RingElement> = eig
            .kernel()
            .iter()
            .map(|c| Self::combine(&basis, c))
            .collect();
        let images: Vec<Vec<FieldElement>> = residues
            .iter()
            .map(|r| m.ring_matrix(r).mul_vec(&m.w))
            .collect();
        let routes_agree = same_span(&f, d, &vectors, &images);
        Ok(WhittakerVectors {
            dimension: vectors.len(),
            vectors,
            residues,
            routes_agree,
            exact: true,
        })
    }

    fn whittaker_vectors_symbolic(&self, eta: &[FieldElement], degree: u32) -> WhittakerVectors {
        let gwa = self.gwa();
        let ring = gwa.ring();
        let f = ring.field().clone();
        let q = self.q();
        let basis = residue_basis(q, &ring.monomials_up_to(degree));
        let solve = |map: &dyn Fn(&RingElement, usize) -> RingElement| -> Vec<RingElement> {
            let images: Vec<Vec<RingElement>> = basis
                .iter()
                .map(|b| (0..eta.len()).map(|i| q.normal_form(&map(b, i))).collect())
                .collect();
            let mut keys: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
            for row in &images {
                for (i, r) in row.iter().enumerate() {
                    for (m, _) in r.terms() {
                        let n = keys.len();
                        keys.entry((i, m.clone())).or_insert(n);
                    }
                }
            }
            let mut mat = Matrix::zeros(&f, keys.len().max(1), basis.len());
            for (j, row) in images.iter().enumerate() {
                for (i, r) in row.iter().enumerate() {
                    for (m, c) in r.terms() {
                        mat.set(keys[&(i, m.clone())], j, c.clone());
                    }
                }
            }
            mat.kernel()
                .iter()
                .map(|c| Self::combine(&basis, c))
                .collect()
        };
        let by_x = solve(&|b, i| {
            &universal_act(&gwa.x(i), b, self.zeta()).expect("compatible") - &b.scale(&eta[i])
        });
        let by_phi = solve(&|b, i| {
            let c = &self.zeta().get(i).inv().expect("nonzero ζ") * &eta[i];
            &gwa.phi(i).apply(b) - &b.scale(&c)
        });
        let all: Vec<RingElement> = by_x.iter().chain(&by_phi).cloned().collect();
        let (dim, cx) = coords_in(&all, &by_x);
        let (_, cp) = coords_in(&all, &by_phi);
        let routes_agree = same_span(&f, dim.max(1), &cx, &cp);
        WhittakerVectors {
            vectors: Vec::new(),
            dimension: by_x.len(),
            residues: by_phi,
            routes_agree,
            exact: false,
        }
    }

    /// `End_A(V)` as the commutant of the action, compared with `π(S)`.
    pub fn endo_ring(&self) -> Result<EndoReport, WhittakerError> {
        let m = self.matrix_model()?;
        let f = self.gwa().field().clone();
        let d = m.dim();
        // Unknown E (row-major); equations (EG − GE)_{ab} = 0.
        let mut rows = Vec::new();
        for g in m.generators() {
            for a in 0..d {
                for b in 0..d {
                    let mut row = vec![f.zero(); d * d];
                    for c in 0..d {
                        row[a * d + c] = &row[a * d + c] + g.get(c, b);
                        row[c * d + b] = &row[c * d + b] - g.get(a, c);
                    }
                    rows.push(row);
                }
            }
        }
        let commutant: Vec<Matrix> = Matrix::from_rows(&f, d * d, rows)
            .kernel()
            .into_iter()
            .map(|v| Matrix::from_rows(&f, d, v.chunks(d).map(|c| c.to_vec()).collect()))
            .collect();
        let (basis, phis) = self
            .quotient_basis()
            .ok_or(WhittakerError::NotMatrixModel)?;
        let k = basis.len();
        let idk = Matrix::identity(&f, k);
        let fixed = phis
            .iter()
            .map(|p| p.sub(&idk))
            .reduce(|a, b| a.vstack(&b))
            .expect("rank ≥ 1");
        let s_over_q: Vec<RingElement> = fixed
            .kernel()
            .iter()
            .map(|c| Self::combine(&basis, c))
            .collect();
        let pi_s: Vec<Vec<FieldElement>> = s_over_q
            .iter()
            .map(|s| flatten(&m.ring_matrix(s)))
            .collect();
        let comm: Vec<Vec<FieldElement>> = commutant.iter().map(flatten).collect();
        let agree = same_span(&f, d * d, &comm, &pi_s);
        Ok(EndoReport {
            dimension: commutant.len(),
            commutant,
            s_over_q,
            agree,
        })
    }
}

/// Coordinates of `rs` over the monomials of `universe`.
fn coords_in(universe: &[RingElement], rs: &[RingElement]) -> (usize, Vec<Vec<FieldElement>>) {
    let mut mons: Vec<Monomial> = universe
        .iter()
        .flat_map(|r| r.terms().map(|(m, _)| m.clone()))
        .collect();
    mons.sort();
    mons.dedup();
    (
        mons.len(),
        rs.iter()
            .map(|r| mons.iter().map(|m| r.coeff(m)).collect())
            .collect(),
    )
}

/// Linearly independent residues spanning the images of `monomials` in `R/Q`.
fn residue_basis(q: &crate::ideals::Ideal, monomials: &[Monomial]) -> Vec<RingElement> {
    let ring = q.ring();
    let nfs: Vec<RingElement> = monomials
        .iter()
        .map(|m| q.normal_form(&ring.monomial(m.clone())))
        .collect();
    let (dim, coords) = coords_in(&nfs, &nfs);
    let mut mons: Vec<Monomial> = nfs
        .iter()
        .flat_map(|r| r.terms().map(|(m, _)| m.clone()))
        .collect();
    mons.sort();
    mons.dedup();
    if dim == 0 {
        return Vec::new();
    }
    span_basis(ring.field(), dim, &coords)
        .into_iter()
        .map(|v| ring.from_terms(mons.iter().cloned().zip(v)))
        .collect()
}
