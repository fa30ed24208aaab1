//! Reference normal forms by naive word rewriting.
//!
//! Words in ring letters and generators are rewritten leftmost-first with the
//! defining relations, one automorphism step at a time, until no rule applies.
//! This path shares nothing with the closed-form product in [`super::Gwa`],
//! so the two can check each other.

use super::{Gwa, GwaElement};
use crate::ring::RingElement;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rewriting did not terminate within {0} steps")]
    BudgetExhausted(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    Ring(RingElement),
    X(usize),
    Y(usize),
}

impl Letter {
    fn index(&self) -> Option<usize> {
        match self {
            Letter::Ring(_) => None,
            Letter::X(i) | Letter::Y(i) => Some(*i),
        }
    }
}

pub struct Rewriter {
    gwa: Gwa,
    budget: usize,
}

impl Rewriter {
    pub fn new(gwa: &Gwa) -> Rewriter {
        Rewriter {
            gwa: gwa.clone(),
            budget: 1_000_000,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Rewriter {
        self.budget = budget;
        self
    }

    /// One rewriting step at the leftmost applicable position.
    fn step(&self, w: &mut Vec<Letter>) -> bool {
        for p in 0..w.len().saturating_sub(1) {
            let replacement: Option<Vec<Letter>> = match (&w[p], &w[p + 1]) {
                (Letter::Ring(a), Letter::Ring(b)) => Some(vec![Letter::Ring(a * b)]),
                (Letter::X(i), Letter::Ring(r)) => {
                    Some(vec![Letter::Ring(self.gwa.phi(*i).apply(r)), Letter::X(*i)])
                }
                (Letter::Y(i), Letter::Ring(r)) => Some(vec![
                    Letter::Ring(self.gwa.phi(*i).apply_inverse(r)),
                    Letter::Y(*i),
                ]),
                (Letter::Y(i), Letter::X(j)) if i == j => {
                    Some(vec![Letter::Ring(self.gwa.t(*i).clone())])
                }
                (Letter::X(i), Letter::Y(j)) if i == j => {
                    Some(vec![Letter::Ring(self.gwa.phi(*i).apply(self.gwa.t(*i)))])
                }
                (a, b) => match (a.index(), b.index()) {
                    (Some(i), Some(j)) if i > j => Some(vec![b.clone(), a.clone()]),
                    _ => None,
                },
            };
            if let Some(rep) = replacement {
                w.splice(p..p + 2, rep);
                return true;
            }
        }
        false
    }

    /// Normal form of a word read as a product from left to right.
    pub fn normalize_word(&self, word: &[Letter]) -> Result<GwaElement, RewriteError> {
        let mut w = word.to_vec();
        let mut steps = 0;
        while self.step(&mut w) {
            steps += 1;
            if steps > self.budget {
                return Err(RewriteError::BudgetExhausted(self.budget));
            }
        }
        let mut coef = self.gwa.ring().one();
        let mut alpha = vec![0; self.gwa.rank()];
        for l in w {
            match l {
                Letter::Ring(r) => coef = r,
                Letter::X(i) => alpha[i] += 1,
                Letter::Y(i) => alpha[i] -= 1,
            }
        }
        Ok(self.gwa.monomial(coef, alpha))
    }

    fn words(&self, a: &GwaElement) -> Vec<Vec<Letter>> {
        a.terms()
            .map(|(alpha, r)| {
                let mut w = vec![Letter::Ring(r.clone())];
                for (i, &e) in alpha.iter().enumerate() {
                    let l = if e > 0 { Letter::X(i) } else { Letter::Y(i) };
                    w.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
                }
                w
            })
            .collect()
    }

    /// Product `a·b` computed by rewriting every pair of terms.
    pub fn product(&self, a: &GwaElement, b: &GwaElement) -> Result<GwaElement, RewriteError> {
        let mut out = self.gwa.zero();
        for u in self.words(a) {
            for v in self.words(b) {
                let mut w = u.clone();
                w.extend(v);
                out = &out + &self.normalize_word(&w)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::{Automorphism, Ring};

    #[test]
    fn rewrites_weyl_words() {
        let r = Ring::polynomial(Field::rationals(), &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![&t - &r.one()]).unwrap();
        let a = Gwa::new(r.clone(), vec![phi], vec![t.clone()]).unwrap();
        let rw = Rewriter::new(&a);
        let w = vec![Letter::Y(0), Letter::Y(0), Letter::X(0)];
        assert_eq!(
            rw.normalize_word(&w).unwrap(),
            a.monomial(&t + &r.one(), vec![-1])
        );
        let w = vec![Letter::X(0), Letter::Ring(t.clone()), Letter::Y(0)];
        // X t Y = (t-1) X Y = (t-1)^2
        assert_eq!(
            rw.normalize_word(&w).unwrap(),
            a.from_ring((&t - &r.one()).pow(2))
        );
        assert!(matches!(
            Rewriter::new(&a).with_budget(1).normalize_word(&w),
            Err(RewriteError::BudgetExhausted(1))
        ));
    }
}
