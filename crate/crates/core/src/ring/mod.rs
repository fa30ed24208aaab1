//! Commutative base rings 𝔽[x_1, …, x_m] with optional Laurent generators,
//! and their automorphisms.

mod automorphism;

pub use automorphism::{auto_power, AffineOrder, Automorphism};

use crate::field::{is_identifier, Field, FieldElement, FieldError};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid automorphism: {0}")]
    BadAutomorphism(String),
    #[error("automorphisms {0} and {1} do not commute")]
    NonCommutingAutomorphisms(usize, usize),
}

#[derive(Debug, PartialEq, Eq)]
pub struct BaseRing {
    field: Field,
    vars: Vec<String>,
    laurent: Vec<bool>,
}

/// Shared handle to a [`BaseRing`].
#[derive(Clone, Debug)]
pub struct Ring(Arc<BaseRing>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Ring {}

/// Exponent vector. Ordered degree-lexicographically, so the last key of a
/// sorted map is the leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    /// Sum of absolute exponents; the filtration degree used for truncation.
    pub fn abs_degree(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ring {
    pub fn new(field: Field, vars: Vec<String>, laurent: Vec<bool>) -> Result<Ring, RingError> {
        if vars.len() != laurent.len() {
            return Err(RingError::InvalidRing(
                "vars and laurent flags differ in length".into(),
            ));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) || vars[..i].contains(v) {
                return Err(RingError::InvalidRing(format!(
                    "bad or duplicate variable {v:?}"
                )));
            }
        }
        Ok(Ring(Arc::new(BaseRing {
            field,
            vars,
            laurent,
        })))
    }

    /// Polynomial ring with no Laurent generators.
    pub fn polynomial(field: Field, vars: &[&str]) -> Result<Ring, RingError> {
        Ring::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            vec![false; vars.len()],
        )
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.0.laurent[i]
    }

    pub fn laurent_flags(&self) -> &[bool] {
        &self.0.laurent
    }

    pub fn has_laurent(&self) -> bool {
        self.0.laurent.iter().any(|&l| l)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> RingElement {
        self.scalar(self.field().one())
    }

    pub fn from_int(&self, n: i64) -> RingElement {
        self.scalar(self.field().from_int(n))
    }

    pub fn scalar(&self, c: FieldElement) -> RingElement {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn var(&self, i: usize) -> RingElement {
        self.term(Monomial::var(self.nvars(), i), self.field().one())
    }

    pub fn var_named(&self, name: &str) -> Option<RingElement> {
        self.var_index(name).map(|i| self.var(i))
    }

    pub fn term(&self, m: Monomial, c: FieldElement) -> RingElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RingElement {
            ring: self.clone(),
            terms,
        }
    }

    pub fn monomial(&self, m: Monomial) -> RingElement {
        self.term(m, self.field().one())
    }

    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> RingElement {
        let mut out = self.zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// All monomials of absolute degree at most `d`, negative exponents only on
    /// Laurent generators.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut cur = vec![0i32; n];
        fn rec(ring: &Ring, i: usize, left: u32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
            if i == cur.len() {
                out.push(Monomial(cur.clone()));
                return;
            }
            let lo = if ring.is_laurent(i) {
                -(left as i32)
            } else {
                0
            };
            for e in lo..=left as i32 {
                cur[i] = e;
                rec(ring, i + 1, left - e.unsigned_abs(), cur, out);
            }
            cur[i] = 0;
        }
        rec(self, 0, d, &mut cur, &mut out);
        out.sort_by(|a, b| a.abs_degree().cmp(&b.abs_degree()).then_with(|| a.cmp(b)));
        out
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .vars()
            .iter()
            .zip(self.laurent_flags())
            .map(|(v, &l)| if l { format!("{v}^±1") } else { v.clone() })
            .collect();
        write!(f, "{}[{}]", self.field(), vars.join(", "))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, FieldElement> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    /// The scalar value, if the element is constant.
    pub fn constant_value(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(self.field().zero()),
            1 => self
                .terms
                .iter()
                .find(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Maximal absolute degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::abs_degree).max()
    }

    /// Largest exponent of variable `i` over all terms.
    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] != 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check(&self, o: &RingElement) -> Result<(), RingError> {
        if self.ring == o.ring {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn checked_add(&self, o: &RingElement) -> Result<RingElement, RingError> {
        self.check(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, o: &RingElement) -> Result<RingElement, RingError> {
        self.check(o)?;
        let mut out = self.ring.zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> RingElement {
        if c.is_zero() {
            return self.ring.zero();
        }
        RingElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by a monomial; exact shift of exponents.
    pub fn shift(&self, m: &Monomial) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit: a nonzero scalar times a monomial in Laurent generators.
    pub fn inverse(&self) -> Result<RingElement, RingError> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let ok =
                m.0.iter()
                    .enumerate()
                    .all(|(i, &e)| e == 0 || self.ring.is_laurent(i));
            if ok {
                return Ok(self.ring.term(m.inverse(), c.inv()?));
            }
        }
        Err(RingError::NotInvertible(self.to_string()))
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_ok()
    }

    /// Integer power, negative exponents only for units.
    pub fn pow_i(&self, e: i64) -> Result<RingElement, RingError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs() as u32))
        }
    }

    /// Monic normalisation by the leading coefficient.
    pub fn monic(&self) -> RingElement {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Evaluates the polynomial by substituting ring elements (or anything
    /// supporting the closures) for generators.
    pub fn eval_with<T: Clone>(
        &self,
        zero: T,
        one: T,
        scalar: impl Fn(&FieldElement, T) -> T,
        mul: impl Fn(&T, &T) -> T,
        add: impl Fn(T, T) -> T,
        power: &mut dyn FnMut(usize, i32) -> T,
    ) -> T {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = one.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    t = mul(&t, &power(i, e));
                }
            }
            acc = add(acc, scalar(c, t));
        }
        acc
    }

    /// Substitutes `images[i]` for generator `i`; `inverse_images[i]` is used
    /// for negative exponents.
    pub fn substitute(
        &self,
        images: &[RingElement],
        inverse_images: &[Option<RingElement>],
    ) -> RingElement {
        let target = images
            .first()
            .map(|r| r.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut cache: std::collections::HashMap<(usize, i32), RingElement> = Default::default();
        let mut power = |i: usize, e: i32| -> RingElement {
            cache
                .entry((i, e))
                .or_insert_with(|| {
                    if e >= 0 {
                        images[i].pow(e as u32)
                    } else {
                        inverse_images[i]
                            .as_ref()
                            .expect("inverse image for a Laurent generator")
                            .pow(e.unsigned_abs())
                    }
                })
                .clone()
        };
        self.eval_with(
            target.zero(),
            target.one(),
            |c, t| t.scale(c),
            |a, b| a * b,
            |a, b| &a + &b,
            &mut power,
        )
    }

    /// Re-embeds into a ring with the same field whose variables are a
    /// superset, mapping variables by name.
    pub fn embed(&self, target: &Ring) -> Result<RingElement, RingError> {
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .ok_or_else(|| RingError::InvalidRing(format!("no variable {v} in target")))
            })
            .collect::<Result<_, _>>()?;
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] = x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Printed form of a single term's coefficient-free monomial.
    pub fn format_monomial(ring: &Ring, m: &Monomial) -> String {
        let parts: Vec<String> =
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        ring.vars()[i].clone()
                    } else {
                        format!("{}^{}", ring.vars()[i], e)
                    }
                })
                .collect();
        parts.join("*")
    }

    /// Single term whose coefficient prints as a signed number.
    pub fn is_simple_term(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.is_atomic())
    }
}

/// Formats `c * mono` where `mono` is non-empty, without a leading `+`.
pub(crate) fn format_scaled(c: &FieldElement, mono: &str) -> String {
    if c.is_one() {
        mono.to_string()
    } else if (-c).is_one() {
        format!("-{mono}")
    } else if c.is_atomic() {
        format!("{c}*{mono}")
    } else {
        format!("({c})*{mono}")
    }
}

/// Joins signed pieces with `+`, leaving explicit minus signs in place.
pub(crate) fn join_signed(parts: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for p in parts {
        if !out.is_empty() && !p.starts_with('-') {
            out.push('+');
        }
        out.push_str(&p);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.terms.iter().rev().map(|(m, c)| {
            if m.is_one() {
                let s = c.to_string();
                if c.is_atomic() || !s.contains(['+', '-']) {
                    s
                } else {
                    format!("({s})")
                }
            } else {
                format_scaled(c, &RingElement::format_monomial(&self.ring, m))
            }
        });
        write!(f, "{}", join_signed(parts))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&RingElement> for &RingElement {
    type Output = RingElement;
    fn add(self, o: &RingElement) -> RingElement {
        self.checked_add(o).expect("operands share a ring")
    }
}

impl Sub<&RingElement> for &RingElement {
    type Output = RingElement;
    fn sub(self, o: &RingElement) -> RingElement {
        self.checked_add(&-o).expect("operands share a ring")
    }
}

impl Mul<&RingElement> for &RingElement {
    type Output = RingElement;
    fn mul(self, o: &RingElement) -> RingElement {
        self.checked_mul(o).expect("operands share a ring")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<RingElement> for RingElement {
            type Output = RingElement;
            fn $m(self, o: RingElement) -> RingElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&RingElement> for RingElement {
            type Output = RingElement;
            fn $m(self, o: &RingElement) -> RingElement {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}
