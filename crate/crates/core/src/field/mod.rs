//! Exact coefficient fields: ℚ, 𝔽_p, cyclotomic fields ℚ(ζ_n) and the
//! rational-function field ℚ(q).

mod modular;
pub(crate) mod qpoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use qpoly::{cyclotomic_poly, fmt_rational, QPoly};
use rand::Rng;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

pub use modular::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{field} has no element of multiplicative order {order}")]
    NoSuchRoot { field: String, order: u64 },
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
    Cyclotomic(u32),
    RationalFunctions(String),
}

#[derive(Debug)]
struct FieldData {
    kind: FieldKind,
    modulus: Option<QPoly>,
}

/// A coefficient field. Cheap to clone; all elements carry their field.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField(p) => write!(f, "F_{p}"),
            FieldKind::Cyclotomic(n) => write!(f, "Q(zeta{n})"),
            FieldKind::RationalFunctions(q) => write!(f, "Q({q})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Rat(BigRational),
    Mod(u64),
    Cyc(QPoly),
    RatFn(QPoly, QPoly),
}

#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}
impl Eq for FieldElement {}

impl Field {
    pub fn new(kind: FieldKind) -> Result<Field, FieldError> {
        let modulus = match &kind {
            FieldKind::PrimeField(p) if !is_prime(*p) => return Err(FieldError::NotPrime(*p)),
            FieldKind::Cyclotomic(0) => {
                return Err(FieldError::Invalid(
                    "cyclotomic order must be positive".into(),
                ))
            }
            FieldKind::Cyclotomic(n) => Some(cyclotomic_poly(*n)),
            FieldKind::RationalFunctions(name) if !is_identifier(name) => {
                return Err(FieldError::Invalid(format!("bad generator name {name:?}")))
            }
            _ => None,
        };
        Ok(Field(Arc::new(FieldData { kind, modulus })))
    }

    pub fn rationals() -> Field {
        Field::new(FieldKind::Rationals).expect("always valid")
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(FieldKind::PrimeField(p))
    }

    pub fn cyclotomic(n: u32) -> Result<Field, FieldError> {
        Field::new(FieldKind::Cyclotomic(n))
    }

    pub fn rational_functions(name: &str) -> Result<Field, FieldError> {
        Field::new(FieldKind::RationalFunctions(name.to_string()))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    /// 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self.0.kind {
            FieldKind::PrimeField(p) => p,
            _ => 0,
        }
    }

    /// Name of the adjoined generator (`zeta12`, `q`), if any.
    pub fn generator_name(&self) -> Option<String> {
        match &self.0.kind {
            FieldKind::Cyclotomic(n) => Some(format!("zeta{n}")),
            FieldKind::RationalFunctions(q) => Some(q.clone()),
            _ => None,
        }
    }

    pub fn generator(&self) -> Option<FieldElement> {
        match &self.0.kind {
            FieldKind::Cyclotomic(_) => Some(self.cyc(QPoly::x())),
            FieldKind::RationalFunctions(_) => {
                Some(self.wrap(Value::RatFn(QPoly::x(), QPoly::one())))
            }
            _ => None,
        }
    }

    fn wrap(&self, value: Value) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    fn cyc(&self, p: QPoly) -> FieldElement {
        let m = self.0.modulus.as_ref().expect("cyclotomic modulus");
        self.wrap(Value::Cyc(p.rem(m)))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let r = BigRational::from_integer(n.clone());
        match &self.0.kind {
            FieldKind::Rationals => self.wrap(Value::Rat(r)),
            FieldKind::PrimeField(p) => self.wrap(Value::Mod(reduce_bigint(n, *p))),
            FieldKind::Cyclotomic(_) => self.cyc(QPoly::constant(r)),
            FieldKind::RationalFunctions(_) => {
                self.wrap(Value::RatFn(QPoly::constant(r), QPoly::one()))
            }
        }
    }

    /// Embeds a rational number; fails in 𝔽_p when p divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement, FieldError> {
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        n.checked_div(&d)
    }

    /// Primitive ℓ-th root of unity, when the field has one.
    pub fn root_of_unity(&self, order: u64) -> Result<FieldElement, FieldError> {
        let none = || FieldError::NoSuchRoot {
            field: self.to_string(),
            order,
        };
        if order == 0 {
            return Err(none());
        }
        match &self.0.kind {
            FieldKind::Rationals | FieldKind::RationalFunctions(_) => match order {
                1 => Ok(self.one()),
                2 => Ok(-self.one()),
                _ => Err(none()),
            },
            FieldKind::PrimeField(p) => {
                if (p - 1) % order != 0 {
                    return Err(none());
                }
                let g = modular::primitive_root(*p);
                Ok(self.wrap(Value::Mod(modular::pow_mod(g, (p - 1) / order, *p))))
            }
            FieldKind::Cyclotomic(n) => {
                let n = *n as u64;
                let zeta = self.generator().expect("cyclotomic generator");
                if n.is_multiple_of(order) {
                    zeta.pow((n / order) as i64)
                } else if n % 2 == 1 && (2 * n).is_multiple_of(order) {
                    (-zeta).pow((2 * n / order) as i64)
                } else {
                    Err(none())
                }
            }
        }
    }

    /// Random element with small coefficients, used by randomized searches and tests.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElement {
        match &self.0.kind {
            FieldKind::Rationals | FieldKind::PrimeField(_) => {
                self.from_int(rng.gen_range(-bound..=bound))
            }
            FieldKind::Cyclotomic(_) => {
                let d = self
                    .0
                    .modulus
                    .as_ref()
                    .and_then(|m| m.degree())
                    .unwrap_or(1);
                let c = (0..d)
                    .map(|_| qpoly::rat(rng.gen_range(-bound..=bound)))
                    .collect();
                self.cyc(QPoly::from_coeffs(c))
            }
            FieldKind::RationalFunctions(_) => {
                let num: Vec<BigRational> = (0..rng.gen_range(1..=3))
                    .map(|_| qpoly::rat(rng.gen_range(-bound..=bound)))
                    .collect();
                let num = self.wrap(Value::RatFn(QPoly::from_coeffs(num), QPoly::one()));
                if rng.gen_bool(0.3) {
                    let q = self.generator().unwrap();
                    let shift = self.from_int(rng.gen_range(1..=bound.max(1)));
                    num.checked_div(&(q + shift)).expect("nonzero denominator")
                } else {
                    num
                }
            }
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_zero(),
            Value::Mod(v) => *v == 0,
            Value::Cyc(p) => p.is_zero(),
            Value::RatFn(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_one(),
            Value::Mod(v) => *v == 1,
            Value::Cyc(p) => p.is_one(),
            Value::RatFn(n, d) => n.is_one() && d.is_one(),
        }
    }

    fn check(&self, o: &Self) -> Result<(), FieldError> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(
                self.field.to_string(),
                o.field.to_string(),
            ))
        }
    }

    fn same(&self, value: Value) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        let v = match (&self.value, &o.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Mod(a), Value::Mod(b)) => {
                let p = self.field.characteristic();
                Value::Mod(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Value::Cyc(a), Value::Cyc(b)) => Value::Cyc(a.add(b)),
            (Value::RatFn(n1, d1), Value::RatFn(n2, d2)) => {
                if d1.is_one() {
                    // `gcd(n1·d2 + n2, d2) = gcd(n2, d2) = 1`.
                    Value::RatFn(n1.mul(d2).add(n2), d2.clone())
                } else if d2.is_one() {
                    Value::RatFn(n2.mul(d1).add(n1), d1.clone())
                } else {
                    // With `d_i = g·e_i`, only factors of `g` can cancel.
                    let g = d1.gcd(d2);
                    let (e1, e2) = (d1.exact_div(&g), d2.exact_div(&g));
                    let num = n1.mul(&e2).add(&n2.mul(&e1));
                    if num.is_zero() {
                        Value::RatFn(QPoly::zero(), QPoly::one())
                    } else if g.is_one() {
                        Value::RatFn(num, d1.mul(d2))
                    } else {
                        let h = num.gcd(&g);
                        let num = num.exact_div(&h);
                        let den = g.exact_div(&h).mul(&e1).mul(&e2);
                        let l = den.lead().recip();
                        Value::RatFn(num.scale(&l), den.scale(&l))
                    }
                }
            }
            _ => unreachable!("matching fields have matching payloads"),
        };
        Ok(self.same(v))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, FieldError> {
        self.checked_add(&o.neg_ref())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        let v = match (&self.value, &o.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Mod(a), Value::Mod(b)) => {
                Value::Mod(modular::mul_mod(*a, *b, self.field.characteristic()))
            }
            (Value::Cyc(a), Value::Cyc(b)) => {
                let m = self.field.0.modulus.as_ref().expect("cyclotomic modulus");
                Value::Cyc(a.mul(b).rem(m))
            }
            (Value::RatFn(n1, d1), Value::RatFn(n2, d2)) => {
                if n1.is_zero() || n2.is_zero() {
                    Value::RatFn(QPoly::zero(), QPoly::one())
                } else if d1.is_one() && d2.is_one() {
                    Value::RatFn(n1.mul(n2), QPoly::one())
                } else {
                    let g1 = n1.gcd(d2);
                    let g2 = n2.gcd(d1);
                    let num = n1.exact_div(&g1).mul(&n2.exact_div(&g2));
                    let den = d1.exact_div(&g2).mul(&d2.exact_div(&g1));
                    let l = den.lead().recip();
                    Value::RatFn(num.scale(&l), den.scale(&l))
                }
            }
            _ => unreachable!("matching fields have matching payloads"),
        };
        Ok(self.same(v))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let v = match &self.value {
            Value::Rat(a) => Value::Rat(a.recip()),
            Value::Mod(a) => Value::Mod(modular::inv_mod(*a, self.field.characteristic())),
            Value::Cyc(a) => {
                let m = self.field.0.modulus.as_ref().expect("cyclotomic modulus");
                let (g, s) = a.ext_gcd(m);
                debug_assert!(g.is_one(), "cyclotomic polynomial is irreducible");
                Value::Cyc(s.rem(m))
            }
            Value::RatFn(n, d) => {
                let l = n.lead().recip();
                Value::RatFn(d.scale(&l), n.scale(&l))
            }
        };
        Ok(self.same(v))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        self.checked_mul(&o.inv()?)
    }

    fn neg_ref(&self) -> Self {
        let v = match &self.value {
            Value::Rat(a) => Value::Rat(-a),
            Value::Mod(a) => Value::Mod(if *a == 0 {
                0
            } else {
                self.field.characteristic() - a
            }),
            Value::Cyc(a) => Value::Cyc(a.neg()),
            Value::RatFn(n, d) => Value::RatFn(n.neg(), d.clone()),
        };
        self.same(v)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Exact multiplicative order if the element is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let small = |r: &BigRational| {
            if r.is_one() {
                Some(1)
            } else if (-r).is_one() {
                Some(2)
            } else {
                None
            }
        };
        match &self.value {
            Value::Rat(r) => small(r),
            Value::Mod(a) => Some(modular::order_mod(*a, self.field.characteristic())),
            Value::RatFn(n, d) => {
                if n.is_constant() && d.is_one() {
                    small(&n.coeff(0))
                } else {
                    None
                }
            }
            Value::Cyc(_) => {
                let FieldKind::Cyclotomic(n) = self.field.kind() else {
                    unreachable!()
                };
                let n = *n as u64;
                let big = n.lcm(&2);
                if !self.pow(big as i64).ok()?.is_one() {
                    return None;
                }
                (1..=big)
                    .filter(|d| big.is_multiple_of(*d))
                    .find(|&d| self.pow(d as i64).map(|x| x.is_one()).unwrap_or(false))
            }
        }
    }

    /// Least `k ≤ bound` with `x^k = 1`, or `None` when no such k exists.
    pub fn multiplicative_order(&self, bound: u64) -> Result<Option<u64>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        Ok(self.root_of_unity_order().filter(|&k| k <= bound))
    }

    /// The element as a rational number, when it lies in the prime subfield ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Rat(r) => Some(r.clone()),
            Value::Cyc(p) if p.is_constant() => Some(p.coeff(0)),
            Value::RatFn(n, d) if n.is_constant() && d.is_one() => Some(n.coeff(0)),
            _ => None,
        }
    }

    /// Canonical residue in `0..p` for prime-field elements.
    pub fn to_residue(&self) -> Option<u64> {
        match &self.value {
            Value::Mod(v) => Some(*v),
            _ => None,
        }
    }

    /// True when the printed form is a single signed number, so it can be
    /// juxtaposed with `*` without parentheses.
    pub fn is_atomic(&self) -> bool {
        self.to_rational().is_some() || matches!(self.value, Value::Mod(_))
    }

    /// True for printed forms beginning with a minus sign on a single number.
    pub fn is_negative_number(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_negative())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Value::Mod(v) => write!(f, "{v}"),
            Value::Cyc(p) => write!(f, "{}", p.format(&self.field.generator_name().unwrap())),
            Value::RatFn(n, d) => {
                let var = self.field.generator_name().unwrap();
                if d.is_one() {
                    return write!(f, "{}", n.format(&var));
                }
                let ns = n.format(&var);
                let ns = if n.term_count() > 1 {
                    format!("({ns})")
                } else {
                    ns
                };
                let ds = d.format(&var);
                if d.term_count() > 1 || !d.coeff(d.degree().unwrap()).is_one() {
                    write!(f, "{ns}/({ds})")
                } else {
                    write!(f, "{ns}/{ds}")
                }
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                self.$checked(o).expect("operands share a field")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}
