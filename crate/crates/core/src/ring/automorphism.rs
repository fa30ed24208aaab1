use super::{Monomial, Ring, RingElement, RingError};
use crate::field::FieldElement;
use num_integer::Integer;
use std::fmt;

/// Ring automorphism given by generator images, with the inverse stored
/// alongside so that `φ^{-1}` never has to be recomputed.
#[derive(Clone, PartialEq, Eq)]
pub struct Automorphism {
    ring: Ring,
    images: Vec<RingElement>,
    inverse_images: Vec<RingElement>,
}

/// Exactly determined order of an automorphism of affine shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ring
            .vars()
            .iter()
            .zip(&self.images)
            .map(|(v, img)| format!("{v} -> {img}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn laurent_inverse(ring: &Ring, r: &RingElement, i: usize) -> Result<RingElement, RingError> {
    if !ring.is_laurent(i) {
        return Ok(r.clone());
    }
    r.inverse().map_err(|_| {
        RingError::BadAutomorphism(format!(
            "image of Laurent generator {} is not a unit",
            ring.vars()[i]
        ))
    })
}

fn apply_images(
    ring: &Ring,
    images: &[RingElement],
    r: &RingElement,
) -> Result<RingElement, RingError> {
    let inv: Vec<Option<RingElement>> = (0..ring.nvars())
        .map(|i| {
            if ring.is_laurent(i) {
                laurent_inverse(ring, &images[i], i).map(Some)
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(r.substitute(images, &inv))
}

impl Automorphism {
    pub fn identity(ring: &Ring) -> Automorphism {
        let images: Vec<RingElement> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Automorphism {
            ring: ring.clone(),
            inverse_images: images.clone(),
            images,
        }
    }

    /// Builds an automorphism from generator images, solving for the inverse
    /// when each image has the triangular shape `a·x + b(other generators)`.
    pub fn new(ring: &Ring, images: Vec<RingElement>) -> Result<Automorphism, RingError> {
        let inverse = solve_inverse(ring, &images)?;
        Automorphism::with_inverse(ring, images, inverse)
    }

    /// Builds an automorphism from explicit forward and inverse images,
    /// checking the round trip on every generator.
    pub fn with_inverse(
        ring: &Ring,
        images: Vec<RingElement>,
        inverse_images: Vec<RingElement>,
    ) -> Result<Automorphism, RingError> {
        let n = ring.nvars();
        if images.len() != n || inverse_images.len() != n {
            return Err(RingError::BadAutomorphism(format!(
                "expected {n} generator images"
            )));
        }
        for img in images.iter().chain(&inverse_images) {
            if img.ring() != ring {
                return Err(RingError::RingMismatch);
            }
        }
        for i in 0..n {
            laurent_inverse(ring, &images[i], i)?;
            laurent_inverse(ring, &inverse_images[i], i)?;
        }
        let phi = Automorphism {
            ring: ring.clone(),
            images,
            inverse_images,
        };
        for i in 0..n {
            let x = ring.var(i);
            if phi.apply(&phi.apply_inverse(&x)) != x || phi.apply_inverse(&phi.apply(&x)) != x {
                return Err(RingError::BadAutomorphism(format!(
                    "stored inverse does not round-trip on {}",
                    ring.vars()[i]
                )));
            }
        }
        Ok(phi)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &RingElement {
        &self.images[i]
    }

    pub fn apply(&self, r: &RingElement) -> RingElement {
        apply_images(&self.ring, &self.images, r).expect("validated at construction")
    }

    pub fn apply_inverse(&self, r: &RingElement) -> RingElement {
        apply_images(&self.ring, &self.inverse_images, r).expect("validated at construction")
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            ring: self.ring.clone(),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let images = other.images.iter().map(|r| self.apply(r)).collect();
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|r| other.apply_inverse(r))
            .collect();
        Automorphism {
            ring: self.ring.clone(),
            images,
            inverse_images,
        }
    }

    pub fn power(&self, k: i64) -> Automorphism {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Automorphism::identity(&self.ring);
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.compose(&b);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, img)| *img == self.ring.var(i))
    }

    pub fn commutes_with(&self, other: &Automorphism) -> bool {
        self.compose(other) == other.compose(self)
    }

    pub fn fixes(&self, r: &RingElement) -> bool {
        self.apply(r) == *r
    }

    /// Least `k ≤ bound` with `φ^k = id`, found by iteration.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let mut cur = self.clone();
        for k in 1..=bound {
            if cur.is_identity() {
                return Some(k);
            }
            cur = cur.compose(self);
        }
        None
    }

    /// Exact order for maps where every generator goes to `a·x + b` with `a`
    /// a scalar and `b` fixed by the map. Returns `None` for other shapes.
    pub fn affine_order(&self) -> Option<AffineOrder> {
        let mut order: u64 = 1;
        for i in 0..self.ring.nvars() {
            let (a, b) = self.affine_parts(i)?;
            if !self.fixes(&b) {
                return None;
            }
            let k = if b.is_zero() {
                match a.root_of_unity_order() {
                    Some(k) => k,
                    None => return Some(AffineOrder::Infinite),
                }
            } else if a.is_one() {
                match self.ring.field().characteristic() {
                    0 => return Some(AffineOrder::Infinite),
                    p => p,
                }
            } else {
                match a.root_of_unity_order() {
                    Some(k) => k,
                    None => return Some(AffineOrder::Infinite),
                }
            };
            order = order.lcm(&k);
        }
        Some(AffineOrder::Finite(order))
    }

    /// Splits the image of generator `i` as `a·x_i + b` with `b` free of `x_i`.
    pub fn affine_parts(&self, i: usize) -> Option<(FieldElement, RingElement)> {
        split_affine(&self.ring, &self.images[i], i)
    }

    /// Indices of generators moved by the map.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.images[i] != self.ring.var(i))
            .collect()
    }
}

fn split_affine(ring: &Ring, img: &RingElement, i: usize) -> Option<(FieldElement, RingElement)> {
    let xi = Monomial::var(ring.nvars(), i);
    let a = img.coeff(&xi);
    if a.is_zero() {
        return None;
    }
    let b = img - &ring.term(xi, a.clone());
    if b.involves(i) {
        return None;
    }
    Some((a, b))
}

fn solve_inverse(ring: &Ring, images: &[RingElement]) -> Result<Vec<RingElement>, RingError> {
    let n = ring.nvars();
    if images.len() != n {
        return Err(RingError::BadAutomorphism(format!(
            "expected {n} generator images"
        )));
    }
    let mut parts = Vec::with_capacity(n);
    for (i, img) in images.iter().enumerate() {
        if img.ring() != ring {
            return Err(RingError::RingMismatch);
        }
        if ring.is_laurent(i) {
            // c·x^{±1}: the inverse is c^{-1}·x or c·x^{-1} respectively.
            let (m, c) = match img.terms().collect::<Vec<_>>().as_slice() {
                [(m, c)] => ((*m).clone(), (*c).clone()),
                _ => {
                    return Err(RingError::BadAutomorphism(format!(
                        "unsupported image {img} of Laurent generator"
                    )))
                }
            };
            let mut expect = Monomial::one(n);
            expect.0[i] = m.0[i];
            if m != expect || m.0[i].abs() != 1 {
                return Err(RingError::BadAutomorphism(format!(
                    "unsupported image {img} of Laurent generator"
                )));
            }
            parts.push(Err(if m.0[i] == 1 {
                ring.term(m, c.inv()?)
            } else {
                img.clone()
            }));
        } else {
            let (a, b) = split_affine(ring, img, i).ok_or_else(|| {
                RingError::BadAutomorphism(format!(
                    "cannot invert image {img}; supply the inverse explicitly"
                ))
            })?;
            parts.push(Ok((a, b)));
        }
    }
    let mut solved: Vec<Option<RingElement>> = vec![None; n];
    let mut visiting = vec![false; n];
    fn solve(
        i: usize,
        ring: &Ring,
        parts: &[Result<(FieldElement, RingElement), RingElement>],
        solved: &mut Vec<Option<RingElement>>,
        visiting: &mut Vec<bool>,
    ) -> Result<RingElement, RingError> {
        if let Some(s) = &solved[i] {
            return Ok(s.clone());
        }
        if visiting[i] {
            return Err(RingError::BadAutomorphism(
                "cyclic dependency between generator images".into(),
            ));
        }
        visiting[i] = true;
        let out = match &parts[i] {
            Err(direct) => direct.clone(),
            Ok((a, b)) => {
                let mut partial: Vec<RingElement> = Vec::with_capacity(ring.nvars());
                let mut partial_inv: Vec<Option<RingElement>> = Vec::with_capacity(ring.nvars());
                for j in 0..ring.nvars() {
                    if b.involves(j) {
                        let s = solve(j, ring, parts, solved, visiting)?;
                        partial_inv.push(if ring.is_laurent(j) {
                            Some(s.inverse()?)
                        } else {
                            None
                        });
                        partial.push(s);
                    } else {
                        partial.push(ring.var(j));
                        partial_inv.push(if ring.is_laurent(j) {
                            Some(ring.var(j).inverse()?)
                        } else {
                            None
                        });
                    }
                }
                let psi_b = b.substitute(&partial, &partial_inv);
                (&ring.var(i) - &psi_b).scale(&a.inv()?)
            }
        };
        visiting[i] = false;
        solved[i] = Some(out.clone());
        Ok(out)
    }
    (0..n)
        .map(|i| solve(i, ring, &parts, &mut solved, &mut visiting))
        .collect()
}

/// `φ^α = ∏ φ_i^{α_i}` for pairwise commuting automorphisms.
pub fn auto_power(phis: &[Automorphism], alpha: &[i64]) -> Result<Automorphism, RingError> {
    assert_eq!(phis.len(), alpha.len(), "one exponent per automorphism");
    for i in 0..phis.len() {
        for j in i + 1..phis.len() {
            if !phis[i].commutes_with(&phis[j]) {
                return Err(RingError::NonCommutingAutomorphisms(i, j));
            }
        }
    }
    let ring = phis.first().map(|p| p.ring.clone());
    let Some(ring) = ring else {
        return Err(RingError::BadAutomorphism("empty automorphism list".into()));
    };
    Ok(phis
        .iter()
        .zip(alpha)
        .fold(Automorphism::identity(&ring), |acc, (p, &k)| {
            acc.compose(&p.power(k))
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn shift_inverse_and_order() {
        let f = Field::prime(5).unwrap();
        let r = Ring::polynomial(f, &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![&t - &r.one()]).unwrap();
        assert_eq!(phi.apply_inverse(&t), &t + &r.one());
        assert_eq!(phi.order(10), Some(5));
        assert_eq!(phi.affine_order(), Some(AffineOrder::Finite(5)));
    }

    #[test]
    fn scaling_orders() {
        let q = Field::rationals();
        let r = Ring::polynomial(q, &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![t.scale(&r.field().from_int(2))]).unwrap();
        assert_eq!(phi.order(50), None);
        assert_eq!(phi.affine_order(), Some(AffineOrder::Infinite));
        let c3 = Field::cyclotomic(3).unwrap();
        let r3 = Ring::polynomial(c3.clone(), &["t"]).unwrap();
        let z = c3.generator().unwrap();
        let t3 = r3.var(0);
        let psi = Automorphism::new(&r3, vec![&t3.scale(&z) + &r3.one()]).unwrap();
        assert_eq!(psi.order(10), Some(3));
        assert_eq!(psi.affine_order(), Some(AffineOrder::Finite(3)));
    }

    #[test]
    fn heisenberg_shape_and_powers() {
        let r = Ring::polynomial(Field::rationals(), &["c", "t1", "t2"]).unwrap();
        let (c, t1, t2) = (r.var(0), r.var(1), r.var(2));
        let p1 = Automorphism::new(&r, vec![c.clone(), &t1 - &c, t2.clone()]).unwrap();
        let p2 = Automorphism::new(&r, vec![c.clone(), t1.clone(), &t2 - &c]).unwrap();
        let p = auto_power(&[p1.clone(), p2.clone()], &[2, -3]).unwrap();
        assert_eq!(p.apply(&t1), &t1 - &c.scale(&r.field().from_int(2)));
        assert_eq!(p.apply(&t2), &t2 + &c.scale(&r.field().from_int(3)));
        assert_eq!(p.compose(&p.inverse()), Automorphism::identity(&r));
    }

    #[test]
    fn laurent_scaling() {
        let f = Field::rational_functions("q").unwrap();
        let r = Ring::new(f.clone(), vec!["c".into(), "K".into()], vec![false, true]).unwrap();
        let q = f.generator().unwrap();
        let k = r.var(1);
        let phi = Automorphism::new(&r, vec![r.var(0), k.scale(&q.pow(-2).unwrap())]).unwrap();
        assert_eq!(
            phi.apply(&k.inverse().unwrap()),
            k.inverse().unwrap().scale(&q.pow(2).unwrap())
        );
        assert_eq!(phi.affine_order(), Some(AffineOrder::Infinite));
    }

    #[test]
    fn rejects_noninvertible() {
        let r = Ring::polynomial(Field::rationals(), &["t"]).unwrap();
        let t = r.var(0);
        assert!(Automorphism::new(&r, vec![&t * &t]).is_err());
        assert!(Automorphism::with_inverse(&r, vec![&t + &r.one()], vec![&t + &r.one()]).is_err());
    }
}
