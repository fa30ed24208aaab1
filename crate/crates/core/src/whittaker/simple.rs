//! Simplicity of finite-dimensional modules.
//!
//! Order of attempts: the Burnside dimension count, then Norton's
//! irreducibility test on random algebra elements, then a search for proper
//! cyclic submodules. Anything else is reported as inconclusive.

use super::{invariant_closure, MatrixModel, Realization, WhittakerModule};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const BURNSIDE_MAX_DIM: usize = 12;
const NORTON_TRIALS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleCertificate {
    /// The action generates all of `End(V)`.
    Burnside { algebra_dimension: usize },
    /// `θ` has nullity one, and its null vectors generate `V` and `V*`.
    Norton { theta: Matrix },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple(SimpleCertificate),
    /// Basis of a proper nonzero submodule.
    NotSimple {
        submodule: Vec<Vec<FieldElement>>,
    },
    Inconclusive {
        reason: String,
    },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Simplicity::Simple(_) => "Simple",
            Simplicity::NotSimple { .. } => "NotSimple",
            Simplicity::Inconclusive { .. } => "Inconclusive",
        }
    }
}

/// Incrementally maintained row-echelon basis.
struct Echelon {
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl Echelon {
    fn new() -> Echelon {
        Echelon { rows: Vec::new() }
    }

    /// Adds `v` unless it is already in the span; returns whether it was new.
    fn insert(&mut self, mut v: Vec<FieldElement>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a = &*a - &(&c * b);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        let v: Vec<FieldElement> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (a, b) in row.iter_mut().zip(&v) {
                    *a = &*a - &(&c * b);
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    fn len(&self) -> usize {
        self.rows.len()
    }
}

fn flatten(m: &Matrix) -> Vec<FieldElement> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Dimension of the unital algebra generated by `gens`, stopping early at `d²`.
fn algebra_dimension(f: &Field, d: usize, gens: &[&Matrix]) -> usize {
    let mut ech = Echelon::new();
    let id = Matrix::identity(f, d);
    ech.insert(flatten(&id));
    let mut frontier = vec![id];
    while !frontier.is_empty() && ech.len() < d * d {
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let p = g.mul(m);
                if ech.insert(flatten(&p)) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    ech.len()
}

fn random_scalar(f: &Field, rng: &mut StdRng) -> FieldElement {
    f.from_int(rng.gen_range(-3i64..=3))
}

/// Random element of the algebra: a combination of short words in the generators.
fn random_element(f: &Field, d: usize, gens: &[&Matrix], rng: &mut StdRng) -> Matrix {
    let mut out = Matrix::zeros(f, d, d);
    for _ in 0..3 {
        let mut w = Matrix::identity(f, d);
        for _ in 0..rng.gen_range(1..=3) {
            w = gens[rng.gen_range(0..gens.len())].mul(&w);
        }
        out = out.add(&w.scale(&random_scalar(f, rng)));
    }
    out
}

impl WhittakerModule {
    pub fn is_simple(&self, seed: u64) -> Simplicity {
        match self.realization() {
            Realization::Matrix(m) => simplicity(m, seed),
            Realization::Symbolic => Simplicity::Inconclusive {
                reason: "the module is infinite-dimensional".into(),
            },
        }
    }
}

/// Simplicity test for a module given by action matrices.
pub fn simplicity(m: &MatrixModel, seed: u64) -> Simplicity {
    let f = m.w[0].field().clone();
    let d = m.dim();
    let gens = m.generators();
    if d == 1 {
        return Simplicity::Simple(SimpleCertificate::Burnside {
            algebra_dimension: 1,
        });
    }
    if d <= BURNSIDE_MAX_DIM {
        let n = algebra_dimension(&f, d, &gens);
        if n == d * d {
            return Simplicity::Simple(SimpleCertificate::Burnside {
                algebra_dimension: n,
            });
        }
    }
    let transposed: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    let transposed: Vec<&Matrix> = transposed.iter().collect();
    let proper = |v: &[FieldElement]| -> Option<Vec<Vec<FieldElement>>> {
        let s = invariant_closure(&f, d, &gens, &[v.to_vec()]);
        (!s.is_empty() && s.len() < d).then_some(s)
    };
    // Cheap candidates: basis vectors and null vectors of the generators.
    let mut candidates: Vec<Vec<FieldElement>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { f.one() } else { f.zero() })
                .collect()
        })
        .collect();
    for g in &gens {
        candidates.extend(g.kernel());
    }
    for v in &candidates {
        if let Some(s) = proper(v) {
            return Simplicity::NotSimple { submodule: s };
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..NORTON_TRIALS {
        let theta = random_element(&f, d, &gens, &mut rng);
        let null = theta.kernel();
        if null.is_empty() {
            continue;
        }
        for v in &null {
            if let Some(s) = proper(v) {
                return Simplicity::NotSimple { submodule: s };
            }
        }
        if null.len() == 1 {
            let dual = theta.transpose().kernel();
            if invariant_closure(&f, d, &transposed, &dual).len() == d {
                return Simplicity::Simple(SimpleCertificate::Norton { theta });
            }
            // A proper submodule of V* gives its annihilator in V.
            let sub = invariant_closure(&f, d, &transposed, &dual);
            let perp = Matrix::from_rows(&f, d, sub).kernel();
            return Simplicity::NotSimple { submodule: perp };
        }
    }
    Simplicity::Inconclusive {
        reason: format!("no certificate after {NORTON_TRIALS} random algebra elements"),
    }
}
