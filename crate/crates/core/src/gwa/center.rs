//! The center `Z(A) = ⊕_{φ^α = id} R^φ·Z^α`.
//!
//! An element `cZ^α` commutes with `R` iff `φ^α = id`, and then with every
//! `X_i, Y_i` iff `c ∈ R^φ`. Algebra generators are therefore generators of
//! `R^φ` together with `Z^α` for the indecomposable `α` of the lattice
//! `{α : φ^α = id}` in each orthant.

use super::{Alpha, Gwa, GwaElement};
use crate::linalg::{in_span, span_basis, Matrix};
use crate::ring::{AffineOrder, Monomial, RingElement};

/// Largest box enumerated when searching the lattice of `α` with `φ^α = id`.
const LATTICE_BOX_CAP: u64 = 200_000;

#[derive(Clone, Debug)]
pub struct CenterGenerators {
    /// Generators of the fixed ring `R^φ`.
    pub ring_generators: Vec<RingElement>,
    /// Indecomposable `α` per orthant with `φ^α = id`.
    pub lattice_generators: Vec<Alpha>,
    /// All generators as algebra elements.
    pub elements: Vec<GwaElement>,
    /// False when either part came from a bounded search.
    pub complete: bool,
}

pub fn center_generators(gwa: &Gwa, degree_bound: u32) -> CenterGenerators {
    let (ring_generators, ring_complete) = match gwa.invariants() {
        Some(inv) => (inv.to_vec(), true),
        None => (fixed_ring_search(gwa, degree_bound), false),
    };
    let (lattice_generators, lattice_complete) = lattice(gwa, degree_bound);
    let mut elements: Vec<GwaElement> = ring_generators
        .iter()
        .map(|r| gwa.from_ring(r.clone()))
        .collect();
    elements.extend(lattice_generators.iter().map(|a| gwa.z(a.clone())));
    CenterGenerators {
        ring_generators,
        lattice_generators,
        elements,
        complete: ring_complete && lattice_complete,
    }
}

/// Checks `[a, X_i] = [a, Y_i] = [a, x_j] = 0` for all generators.
pub fn is_central(a: &GwaElement) -> bool {
    let gwa = a.gwa();
    let ring = gwa.ring();
    (0..gwa.rank()).all(|i| a.commutator(&gwa.x(i)).is_zero() && a.commutator(&gwa.y(i)).is_zero())
        && (0..ring.nvars()).all(|j| a.commutator(&gwa.from_ring(ring.var(j))).is_zero())
}

fn order_of(gwa: &Gwa, i: usize, bound: u32) -> Option<Option<u64>> {
    match gwa.phi(i).affine_order() {
        Some(AffineOrder::Finite(k)) => Some(Some(k)),
        Some(AffineOrder::Infinite) => Some(None),
        None => gwa.phi(i).order(bound as u64).map(Some),
    }
}

/// Each `φ_i` maps its support into polynomials in its support, and supports are disjoint.
fn independent(gwa: &Gwa) -> bool {
    let supports: Vec<Vec<usize>> = gwa.phis().iter().map(|p| p.support()).collect();
    for (i, s) in supports.iter().enumerate() {
        for t in supports.iter().skip(i + 1) {
            if s.iter().any(|v| t.contains(v)) {
                return false;
            }
        }
        let p = gwa.phi(i);
        for &v in s {
            let others = (0..gwa.ring().nvars()).filter(|w| !s.contains(w));
            if others.into_iter().any(|w| p.image(v).involves(w)) {
                return false;
            }
        }
    }
    true
}

fn lattice(gwa: &Gwa, bound: u32) -> (Vec<Alpha>, bool) {
    let n = gwa.rank();
    let orders: Vec<Option<Option<u64>>> =
        (0..n).map(|i| order_of(gwa, i, bound.max(64))).collect();
    let unit = |i: usize, k: i32| {
        let mut a = vec![0; n];
        a[i] = k;
        a
    };
    if independent(gwa) && orders.iter().all(|o| o.is_some()) {
        let mut gens = Vec::new();
        for (i, o) in orders.iter().enumerate() {
            if let Some(Some(k)) = o {
                gens.push(unit(i, *k as i32));
                gens.push(unit(i, -(*k as i32)));
            }
        }
        return (gens, true);
    }
    // Box search: with finite orders o_i, indecomposables satisfy |α_i| ≤ o_i.
    let finite: Option<Vec<u64>> = orders.iter().map(|o| o.flatten()).collect();
    let (radii, exact) = match finite {
        Some(v) => (v, true),
        None => (vec![bound.max(1) as u64; n], false),
    };
    let size: u64 = radii.iter().map(|r| 2 * r + 1).product();
    let (radii, exact) = if size > LATTICE_BOX_CAP {
        (vec![bound.clamp(1, 4) as u64; n], false)
    } else {
        (radii, exact)
    };
    let mut found: Vec<Alpha> = Vec::new();
    let mut cur = vec![0i32; n];
    box_walk(&radii, 0, &mut cur, &mut |a| {
        if a.iter().any(|&x| x != 0) && gwa.phi_power(a).is_identity() {
            found.push(a.to_vec());
        }
    });
    let same_orthant = |a: &[i32], b: &[i32]| {
        a.iter()
            .zip(b)
            .all(|(x, y)| *y == 0 || x.signum() == y.signum())
    };
    let decomposable = |a: &Alpha| {
        found.iter().any(|b| {
            b != a
                && same_orthant(a, b)
                && b.iter().zip(a).all(|(y, x)| y.abs() <= x.abs())
                && found
                    .iter()
                    .any(|c| c.iter().zip(b).zip(a.iter()).all(|((c, b), a)| c + b == *a))
        })
    };
    let mut gens: Vec<Alpha> = found.iter().filter(|a| !decomposable(a)).cloned().collect();
    gens.sort_by_key(|a| (a.iter().map(|x| x.unsigned_abs()).sum::<u32>(), a.clone()));
    (gens, exact)
}

fn box_walk(radii: &[u64], i: usize, cur: &mut Vec<i32>, f: &mut impl FnMut(&[i32])) {
    if i == radii.len() {
        f(cur);
        return;
    }
    let r = radii[i] as i32;
    for k in -r..=r {
        cur[i] = k;
        box_walk(radii, i + 1, cur, f);
    }
    cur[i] = 0;
}

/// Algebra generators of the part of `R^φ` spanned by monomials of degree ≤ `bound`.
fn fixed_ring_search(gwa: &Gwa, bound: u32) -> Vec<RingElement> {
    let ring = gwa.ring();
    let field = ring.field();
    let basis: Vec<Monomial> = ring.monomials_up_to(bound);
    // Coordinates over every monomial that appears in some φ_i(m) − m.
    let diffs: Vec<Vec<RingElement>> = gwa
        .phis()
        .iter()
        .map(|p| {
            basis
                .iter()
                .map(|m| &p.apply(&ring.monomial(m.clone())) - &ring.monomial(m.clone()))
                .collect()
        })
        .collect();
    let mut support: Vec<Monomial> = Vec::new();
    for d in diffs.iter().flatten() {
        for (m, _) in d.terms() {
            if !support.contains(m) {
                support.push(m.clone());
            }
        }
    }
    let rows: Vec<Vec<_>> = diffs
        .iter()
        .flat_map(|ds| {
            support
                .iter()
                .map(move |m| ds.iter().map(|d| d.coeff(m)).collect::<Vec<_>>())
        })
        .collect();
    let kernel = if rows.is_empty() {
        (0..basis.len())
            .map(|j| {
                (0..basis.len())
                    .map(|k| if j == k { field.one() } else { field.zero() })
                    .collect()
            })
            .collect()
    } else {
        Matrix::from_rows(field, basis.len(), rows).kernel()
    };
    // Echelonise from the low-degree end so that lower-degree invariants come first.
    let rev: Vec<Vec<_>> = kernel
        .iter()
        .map(|v| v.iter().rev().cloned().collect())
        .collect();
    let mut fixed: Vec<RingElement> = span_basis(field, basis.len(), &rev)
        .into_iter()
        .map(|v| {
            ring.from_terms(v.into_iter().rev().zip(&basis).map(|(c, m)| (m.clone(), c)))
                .monic()
        })
        .filter(|r| r.constant_value().is_none())
        .collect();
    fixed.sort_by_key(|r| (r.degree(), r.to_string()));
    let coords = |r: &RingElement| basis.iter().map(|m| r.coeff(m)).collect::<Vec<_>>();
    let within = |r: &RingElement| r.terms().all(|(m, _)| basis.contains(m));
    let mut gens: Vec<RingElement> = Vec::new();
    let mut generated: Vec<Vec<_>> = vec![coords(&ring.one())];
    let mut products: Vec<RingElement> = vec![ring.one()];
    for r in fixed {
        if in_span(field, basis.len(), &generated, &coords(&r)) {
            continue;
        }
        gens.push(r.clone());
        let mut frontier = products.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let q = p * &r;
                if within(&q) && !q.is_zero() {
                    next.push(q);
                }
            }
            for q in &next {
                for g in &gens {
                    let s = q * g;
                    if within(&s) {
                        products.push(s);
                    }
                }
            }
            products.extend(next.iter().cloned());
            frontier = next;
        }
        generated = span_basis(
            field,
            basis.len(),
            &products.iter().map(&coords).collect::<Vec<_>>(),
        );
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::{Automorphism, Ring};

    #[test]
    fn weyl_in_char_p() {
        let f = Field::prime(3).unwrap();
        let r = Ring::polynomial(f, &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![&t - &r.one()]).unwrap();
        let a = Gwa::new(r.clone(), vec![phi], vec![t.clone()]).unwrap();
        let c = center_generators(&a, 4);
        assert_eq!(c.lattice_generators, vec![vec![3], vec![-3]]);
        assert_eq!(c.ring_generators, vec![&t.pow(3) - &t]);
        assert!(!c.complete);
        assert!(c.elements.iter().all(is_central));
        assert!(!is_central(&a.x(0)));
    }

    #[test]
    fn quantum_plane_generic_center_is_trivial() {
        let f = Field::rational_functions("q").unwrap();
        let r = Ring::polynomial(f.clone(), &["t"]).unwrap();
        let t = r.var(0);
        let phi = Automorphism::new(&r, vec![t.scale(&f.generator().unwrap())]).unwrap();
        let a = Gwa::new(r, vec![phi], vec![t]).unwrap();
        let c = center_generators(&a, 3);
        assert!(c.lattice_generators.is_empty());
        assert!(c.ring_generators.is_empty());
    }

    #[test]
    fn coupled_automorphisms_use_box_search() {
        // φ_1 = φ_2^{-1} on 𝔽_5[t]: lattice generated by (1, 1) in the ++ and −− orthants.
        let f = Field::prime(5).unwrap();
        let r = Ring::polynomial(f.clone(), &["t", "u"]).unwrap();
        let (t, u) = (r.var(0), r.var(1));
        let p1 = Automorphism::new(&r, vec![t.scale(&f.from_int(2)), u.clone()]).unwrap();
        let p2 = p1.inverse();
        let a = Gwa::new(r, vec![p1, p2], vec![u.clone(), u]).unwrap();
        let c = center_generators(&a, 2);
        assert!(c.lattice_generators.contains(&vec![1, 1]));
        assert!(c.lattice_generators.contains(&vec![-1, -1]));
        assert!(c.lattice_generators.contains(&vec![4, 0]));
        assert!(c
            .lattice_generators
            .iter()
            .all(|g| a.phi_power(g).is_identity()));
    }
}
