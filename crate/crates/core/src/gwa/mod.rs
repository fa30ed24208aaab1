//! Generalized Weyl algebras `A = R(φ, t)` and their normal forms
//! `Σ c_α Z^α` with coefficients on the left.

mod center;
mod parse;
mod quotient;
pub mod rewrite;

pub use center::{center_generators, is_central, CenterGenerators};
pub use parse::{parse_ring_element, parse_scalar, ParseError, ParseErrorKind};
pub use quotient::quotient_gwa;

use crate::field::{Field, FieldElement};
use crate::ring::{Automorphism, Monomial, Ring, RingElement, RingError};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GwaError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("expected {expected} automorphisms and elements t_i, got {phis} and {ts}")]
    CountMismatch {
        expected: usize,
        phis: usize,
        ts: usize,
    },
    #[error("t_{0} is zero")]
    ZeroT(usize),
    #[error("φ_{phi} does not fix t_{t}")]
    TNotFixed { phi: usize, t: usize },
    #[error("automorphism {0} acts on a different ring")]
    WrongRing(usize),
    #[error("generator name {0:?} is reserved for X_i, Y_i")]
    ReservedName(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("ideal is not φ-stable")]
    NotPhiStable,
    #[error("t_{0} lies in the ideal")]
    TiInIdeal(usize),
    #[error("quotient is not presentable: {0}")]
    NotPresentable(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Exponent vector α; positive entries are X-powers, negative ones Y-powers.
pub type Alpha = Vec<i32>;

/// The data `(R, φ_1..φ_n, t_1..t_n)` with pairwise commuting automorphisms.
pub struct GwaPresentation {
    ring: Ring,
    phis: Vec<Automorphism>,
    ts: Vec<RingElement>,
    label: Option<String>,
    invariants: Option<Vec<RingElement>>,
    parameters: BTreeMap<String, FieldElement>,
    powers: Mutex<HashMap<Alpha, Automorphism>>,
    collapses: Mutex<HashMap<(usize, i32, i32), RingElement>>,
}

/// Shared handle to a validated presentation.
#[derive(Clone)]
pub struct Gwa(Arc<GwaPresentation>);

impl PartialEq for Gwa {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring
                && self.0.phis == other.0.phis
                && self.0.ts == other.0.ts)
    }
}
impl Eq for Gwa {}

impl fmt::Debug for Gwa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Gwa({}, phis={:?}, ts={:?})",
            self.0.ring, self.0.phis, self.0.ts
        )
    }
}

fn reserved(name: &str) -> bool {
    let rest = |s: &str| s.is_empty() || s.chars().all(|c| c.is_ascii_digit());
    name.strip_prefix('X').is_some_and(rest) || name.strip_prefix('Y').is_some_and(rest)
}

impl Gwa {
    /// Validates commutation of the φ_i, `φ_i(t_j) = t_j` for `i ≠ j` and `t_i ≠ 0`.
    pub fn new(ring: Ring, phis: Vec<Automorphism>, ts: Vec<RingElement>) -> Result<Gwa, GwaError> {
        if phis.len() != ts.len() || phis.is_empty() {
            return Err(GwaError::CountMismatch {
                expected: phis.len().max(1),
                phis: phis.len(),
                ts: ts.len(),
            });
        }
        if let Some(v) = ring.vars().iter().find(|v| reserved(v)) {
            return Err(GwaError::ReservedName(v.clone()));
        }
        for (i, p) in phis.iter().enumerate() {
            if p.ring() != &ring {
                return Err(GwaError::WrongRing(i));
            }
        }
        for (i, t) in ts.iter().enumerate() {
            if t.ring() != &ring {
                return Err(RingError::RingMismatch.into());
            }
            if t.is_zero() {
                return Err(GwaError::ZeroT(i));
            }
        }
        for i in 0..phis.len() {
            for j in i + 1..phis.len() {
                if !phis[i].commutes_with(&phis[j]) {
                    return Err(RingError::NonCommutingAutomorphisms(i, j).into());
                }
            }
            for (j, t) in ts.iter().enumerate() {
                if i != j && !phis[i].fixes(t) {
                    return Err(GwaError::TNotFixed { phi: i, t: j });
                }
            }
        }
        Ok(Gwa(Arc::new(GwaPresentation {
            ring,
            phis,
            ts,
            label: None,
            invariants: None,
            parameters: BTreeMap::new(),
            powers: Mutex::new(HashMap::new()),
            collapses: Mutex::new(HashMap::new()),
        })))
    }

    fn rebuild(&self, f: impl FnOnce(&mut GwaPresentation)) -> Gwa {
        let p = &self.0;
        let mut out = GwaPresentation {
            ring: p.ring.clone(),
            phis: p.phis.clone(),
            ts: p.ts.clone(),
            label: p.label.clone(),
            invariants: p.invariants.clone(),
            parameters: p.parameters.clone(),
            powers: Mutex::new(HashMap::new()),
            collapses: Mutex::new(HashMap::new()),
        };
        f(&mut out);
        Gwa(Arc::new(out))
    }

    /// Attaches a descriptive family label.
    pub fn with_label(&self, label: impl Into<String>) -> Gwa {
        let label = label.into();
        self.rebuild(|p| p.label = Some(label))
    }

    /// Records generators of the fixed subring `R^φ` (known for catalog families).
    pub fn with_invariants(&self, gens: Vec<RingElement>) -> Gwa {
        self.rebuild(|p| p.invariants = Some(gens))
    }

    /// Binds a named scalar (such as `q`) usable in parsed expressions.
    pub fn with_parameter(&self, name: &str, value: FieldElement) -> Gwa {
        let name = name.to_string();
        self.rebuild(|p| {
            p.parameters.insert(name, value);
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn field(&self) -> &Field {
        self.0.ring.field()
    }

    pub fn rank(&self) -> usize {
        self.0.phis.len()
    }

    pub fn phis(&self) -> &[Automorphism] {
        &self.0.phis
    }

    pub fn phi(&self, i: usize) -> &Automorphism {
        &self.0.phis[i]
    }

    pub fn ts(&self) -> &[RingElement] {
        &self.0.ts
    }

    pub fn t(&self, i: usize) -> &RingElement {
        &self.0.ts[i]
    }

    pub fn label(&self) -> Option<&str> {
        self.0.label.as_deref()
    }

    pub fn invariants(&self) -> Option<&[RingElement]> {
        self.0.invariants.as_deref()
    }

    pub fn parameters(&self) -> &BTreeMap<String, FieldElement> {
        &self.0.parameters
    }

    /// `φ^α = ∏ φ_i^{α_i}`, memoised.
    pub fn phi_power(&self, alpha: &[i32]) -> Automorphism {
        if let Some(p) = self.0.powers.lock().unwrap().get(alpha) {
            return p.clone();
        }
        let out = self
            .0
            .phis
            .iter()
            .zip(alpha)
            .fold(Automorphism::identity(&self.0.ring), |acc, (p, &k)| {
                acc.compose(&p.power(k as i64))
            });
        self.0
            .powers
            .lock()
            .unwrap()
            .insert(alpha.to_vec(), out.clone());
        out
    }

    fn unit(&self, i: usize, k: i32) -> Alpha {
        let mut a = vec![0; self.rank()];
        a[i] = k;
        a
    }

    /// `φ_i^k(t_i)`.
    fn shifted_t(&self, i: usize, k: i32) -> RingElement {
        self.phi_power(&self.unit(i, k)).apply(&self.0.ts[i])
    }

    /// Ring coefficient `c` with `Z_i^a Z_i^b = c · Z_i^{a+b}`.
    pub fn collapse_coefficient(&self, i: usize, a: i32, b: i32) -> RingElement {
        if a == 0 || b == 0 || (a > 0) == (b > 0) {
            return self.0.ring.one();
        }
        if let Some(c) = self.0.collapses.lock().unwrap().get(&(i, a, b)) {
            return c.clone();
        }
        let one = self.0.ring.one();
        let c = if a > 0 {
            // X^a Y^k
            let k = -b;
            if a >= k {
                (1..=k).fold(one, |acc, j| &acc * &self.shifted_t(i, a - k + j))
            } else {
                (1..=a).fold(one, |acc, j| &acc * &self.shifted_t(i, j))
            }
        } else {
            // Y^k X^l
            let (k, l) = (-a, b);
            (1..=k.min(l)).fold(one, |acc, j| &acc * &self.shifted_t(i, -(k - j)))
        };
        self.0
            .collapses
            .lock()
            .unwrap()
            .insert((i, a, b), c.clone());
        c
    }

    /// `Y_i^k X_i^ℓ` in normal form.
    pub fn ykxl_collapse(&self, i: usize, k: u32, l: u32) -> GwaElement {
        let a = -(k as i32);
        let b = l as i32;
        let c = self.collapse_coefficient(i, a, b);
        self.monomial(c, self.unit(i, a + b))
    }

    pub fn zero(&self) -> GwaElement {
        GwaElement {
            gwa: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> GwaElement {
        self.from_ring(self.0.ring.one())
    }

    pub fn from_ring(&self, r: RingElement) -> GwaElement {
        self.monomial(r, vec![0; self.rank()])
    }

    pub fn scalar(&self, c: FieldElement) -> GwaElement {
        self.from_ring(self.0.ring.scalar(c))
    }

    pub fn monomial(&self, r: RingElement, alpha: Alpha) -> GwaElement {
        assert_eq!(alpha.len(), self.rank(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(alpha, r);
        }
        GwaElement {
            gwa: self.clone(),
            terms,
        }
    }

    pub fn z(&self, alpha: Alpha) -> GwaElement {
        self.monomial(self.0.ring.one(), alpha)
    }

    pub fn x(&self, i: usize) -> GwaElement {
        self.z(self.unit(i, 1))
    }

    pub fn y(&self, i: usize) -> GwaElement {
        self.z(self.unit(i, -1))
    }

    /// Name of generator `X_i` (or `Y_i`) as printed and parsed.
    pub fn generator_name(&self, i: usize, x: bool) -> String {
        let base = if x { "X" } else { "Y" };
        if self.rank() == 1 {
            base.to_string()
        } else {
            format!("{base}{}", i + 1)
        }
    }

    pub fn parse(&self, text: &str) -> Result<GwaElement, ParseError> {
        parse::parse_element(self, text)
    }

    /// All normal-form monomials `Z^α·m` with `|α| + deg m ≤ d`.
    pub fn basis_up_to(&self, d: u32) -> Vec<(Alpha, Monomial)> {
        let mut out = Vec::new();
        for alpha in alphas_up_to(self.rank(), d) {
            let used: u32 = alpha.iter().map(|a| a.unsigned_abs()).sum();
            for m in self.0.ring.monomials_up_to(d - used) {
                out.push((alpha.clone(), m));
            }
        }
        out
    }

    /// Product of two normal-form monomials `(r Z^α)(s Z^β)`.
    pub fn mul_monomials(
        &self,
        r: &RingElement,
        alpha: &[i32],
        s: &RingElement,
        beta: &[i32],
    ) -> (RingElement, Alpha) {
        let moved = if alpha.iter().all(|&a| a == 0) {
            s.clone()
        } else {
            self.phi_power(alpha).apply(s)
        };
        let mut coef = r * &moved;
        let n = self.rank();
        let mut gamma = vec![0; n];
        for i in 0..n {
            let c = self.collapse_coefficient(i, alpha[i], beta[i]);
            if !c.is_one() {
                let c = if gamma.iter().all(|&g| g == 0) {
                    c
                } else {
                    self.phi_power(&gamma).apply(&c)
                };
                coef = &coef * &c;
            }
            gamma[i] = alpha[i] + beta[i];
        }
        (coef, gamma)
    }
}

/// Exponent vectors in ℤ^n with `Σ|α_i| ≤ d`.
pub fn alphas_up_to(n: usize, d: u32) -> Vec<Alpha> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn rec(i: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Alpha>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in -left..=left {
            cur[i] = e;
            rec(i + 1, left - e.abs(), cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d as i32, &mut cur, &mut out);
    out
}

/// Element of a GWA in normal form `Σ c_α Z^α`.
#[derive(Clone)]
pub struct GwaElement {
    gwa: Gwa,
    terms: BTreeMap<Alpha, RingElement>,
}

impl PartialEq for GwaElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.gwa == other.gwa
    }
}
impl Eq for GwaElement {}

impl GwaElement {
    pub fn gwa(&self) -> &Gwa {
        &self.gwa
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Alpha, &RingElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[i32]) -> RingElement {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| self.gwa.ring().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The ring element, if the element has no X or Y part.
    pub fn ring_part(&self) -> Option<RingElement> {
        match self.terms.len() {
            0 => Some(self.gwa.ring().zero()),
            1 => self
                .terms
                .iter()
                .find(|(a, _)| a.iter().all(|&x| x == 0))
                .map(|(_, r)| r.clone()),
            _ => None,
        }
    }

    /// Filtration degree `max(|α| + deg c_α)`.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|(a, r)| a.iter().map(|x| x.unsigned_abs()).sum::<u32>() + r.degree().unwrap_or(0))
            .max()
    }

    fn add_term(&mut self, alpha: Alpha, r: RingElement) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &r;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(r);
            }
        }
    }

    pub fn checked_add(&self, o: &GwaElement) -> Result<GwaElement, GwaError> {
        if self.gwa != o.gwa {
            return Err(GwaError::AlgebraMismatch);
        }
        let mut out = self.clone();
        for (a, r) in &o.terms {
            out.add_term(a.clone(), r.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, o: &GwaElement) -> Result<GwaElement, GwaError> {
        if self.gwa != o.gwa {
            return Err(GwaError::AlgebraMismatch);
        }
        let mut out = self.gwa.zero();
        for (a, r) in &self.terms {
            for (b, s) in &o.terms {
                let (c, g) = self.gwa.mul_monomials(r, a, s, b);
                out.add_term(g, c);
            }
        }
        Ok(out)
    }

    /// Left multiplication by a ring element.
    pub fn left_scale(&self, r: &RingElement) -> GwaElement {
        let mut out = self.gwa.zero();
        for (a, c) in &self.terms {
            out.add_term(a.clone(), r * c);
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> GwaElement {
        let mut out = self.gwa.zero();
        for (a, r) in &self.terms {
            out.add_term(a.clone(), r.scale(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> GwaElement {
        (0..e).fold(self.gwa.one(), |acc, _| &acc * self)
    }

    pub fn commutator(&self, o: &GwaElement) -> GwaElement {
        &(self * o) - &(o * self)
    }

    fn format_alpha(&self, alpha: &[i32]) -> String {
        let parts: Vec<String> = alpha
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                let name = self.gwa.generator_name(i, e > 0);
                if e.abs() == 1 {
                    name
                } else {
                    format!("{name}^{}", e.abs())
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.terms.iter().map(|(alpha, r)| {
            if alpha.iter().all(|&a| a == 0) {
                return r.to_string();
            }
            let z = self.format_alpha(alpha);
            if r.is_one() {
                z
            } else if (-r).is_one() {
                format!("-{z}")
            } else if r.is_simple_term() {
                format!("{r}*{z}")
            } else {
                format!("({r})*{z}")
            }
        });
        write!(f, "{}", crate::ring::join_signed(parts))
    }
}

impl fmt::Debug for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&GwaElement> for &GwaElement {
    type Output = GwaElement;
    fn add(self, o: &GwaElement) -> GwaElement {
        self.checked_add(o).expect("operands share an algebra")
    }
}

impl Sub<&GwaElement> for &GwaElement {
    type Output = GwaElement;
    fn sub(self, o: &GwaElement) -> GwaElement {
        self.checked_add(&-o).expect("operands share an algebra")
    }
}

impl Mul<&GwaElement> for &GwaElement {
    type Output = GwaElement;
    fn mul(self, o: &GwaElement) -> GwaElement {
        self.checked_mul(o).expect("operands share an algebra")
    }
}

impl Neg for &GwaElement {
    type Output = GwaElement;
    fn neg(self) -> GwaElement {
        GwaElement {
            gwa: self.gwa.clone(),
            terms: self.terms.iter().map(|(a, r)| (a.clone(), -r)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<GwaElement> for GwaElement {
            type Output = GwaElement;
            fn $m(self, o: GwaElement) -> GwaElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&GwaElement> for GwaElement {
            type Output = GwaElement;
            fn $m(self, o: &GwaElement) -> GwaElement {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for GwaElement {
    type Output = GwaElement;
    fn neg(self) -> GwaElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl() -> Gwa {
        let r = Ring::polynomial(Field::rationals(), &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![&t - &r.one()]).unwrap();
        Gwa::new(r, vec![phi], vec![t]).unwrap()
    }

    #[test]
    fn basic_relations() {
        let a = weyl();
        let t = a.from_ring(a.ring().var(0));
        assert_eq!(&a.y(0) * &a.x(0), t);
        assert_eq!(&a.x(0) * &a.y(0), &t - &a.one());
        // X t = (t - 1) X
        assert_eq!(&a.x(0) * &t, &(&t - &a.one()) * &a.x(0));
        assert_eq!(
            a.ykxl_collapse(0, 2, 1),
            &a.from_ring(&a.ring().var(0) + &a.ring().one()) * &a.y(0)
        );
        assert_eq!(a.ykxl_collapse(0, 1, 2), &t * &a.x(0));
    }

    #[test]
    fn weyl_commutator() {
        // With φ(t) = t - 1 we get XY - YX = -1.
        let a = weyl();
        assert_eq!(a.x(0).commutator(&a.y(0)), -a.one());
    }

    #[test]
    fn display() {
        let a = weyl();
        let t = a.from_ring(a.ring().var(0));
        let e = &(&t * &a.x(0).pow(2)) + &(&a.y(0) * &a.from_ring(a.ring().from_int(3)));
        assert_eq!(e.to_string(), "3*Y+t*X^2");
        let f = &(&t + &a.one()) * &a.y(0);
        assert_eq!(f.to_string(), "(t+1)*Y");
    }

    #[test]
    fn validation() {
        let r = Ring::polynomial(Field::rationals(), &["t"]).unwrap();
        let phi = Automorphism::identity(&r);
        assert!(matches!(
            Gwa::new(r.clone(), vec![phi.clone()], vec![r.zero()]),
            Err(GwaError::ZeroT(0))
        ));
        let bad = Ring::polynomial(Field::rationals(), &["X2"]).unwrap();
        assert!(matches!(
            Gwa::new(
                bad.clone(),
                vec![Automorphism::identity(&bad)],
                vec![bad.var(0)]
            ),
            Err(GwaError::ReservedName(_))
        ));
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(alphas_up_to(1, 3).len(), 7);
        assert_eq!(alphas_up_to(2, 1).len(), 5);
        assert_eq!(weyl().basis_up_to(4).len(), 25);
    }
}
