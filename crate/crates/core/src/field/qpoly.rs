use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Write;

/// Dense univariate polynomial over ℚ, coefficients stored low degree first,
/// never with a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![BigRational::one()])
    }

    pub fn x() -> Self {
        QPoly(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut v = vec![BigRational::zero(); deg + 1];
        v[deg] = c;
        QPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<BigRational>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        QPoly(v)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn term_count(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        QPoly::from_coeffs(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.lead().recip();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.0.iter().enumerate() {
                if !b.is_zero() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (QPoly::from_coeffs(q), QPoly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), o.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, s)` with `g = gcd(self, m)` monic and `s·self ≡ g (mod m)`.
    pub fn ext_gcd(&self, m: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (self.clone(), m.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv))
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                write!(out, "{}", fmt_rational(&a)).unwrap();
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                write!(out, "{}*{mono}", fmt_rational(&a)).unwrap();
            }
        }
        out
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// n-th cyclotomic polynomial, obtained by dividing `x^n - 1` by every
/// `Φ_d` with `d | n`, `d < n`.
pub(crate) fn cyclotomic_poly(n: u32) -> QPoly {
    let mut phis: Vec<(u32, QPoly)> = Vec::new();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let mut p = QPoly::monomial(BigRational::one(), d as usize).sub(&QPoly::one());
        for (e, pe) in &phis {
            if d % e == 0 {
                p = p.exact_div(pe);
            }
        }
        phis.push((d, p));
    }
    phis.pop().expect("n >= 1").1
}
