//! Generators of `J ∩ 𝔽[z_1, …, z_k]` for invariants `z_j`, by elimination.

use super::groebner::{GroebnerBasis, Poly, TermOrder};
use super::{Ideal, IdealError};
use crate::ring::RingElement;

/// Returns generators of `J ∩ 𝔽[z]` when they generate `J` as an ideal of the
/// base ring, and `None` otherwise. With `z` generating `R^φ`, `Some` means `J`
/// is generated by elements fixed by every `φ_i`.
pub fn central_generators(
    ideal: &Ideal,
    invariants: &[RingElement],
) -> Result<Option<Vec<RingElement>>, IdealError> {
    let ring = ideal.ring();
    let model = ideal.model();
    let m = model.nvars();
    let k = invariants.len();
    let order = TermOrder::Elimination(m);
    let pad = |e: &[i32], z: &[i32]| -> Vec<i32> { e.iter().chain(z).copied().collect() };
    let zeros = vec![0; k];
    let mut gens: Vec<Poly> = ideal
        .groebner()
        .basis
        .iter()
        .map(|g| {
            Poly::from_terms(
                order,
                g.poly
                    .terms
                    .iter()
                    .map(|(e, c)| (pad(e, &zeros), c.clone()))
                    .collect(),
            )
        })
        .collect();
    for (j, z) in invariants.iter().enumerate() {
        let mut zj = vec![0; k];
        zj[j] = 1;
        let mut terms = vec![(pad(&vec![0; m], &zj), ring.field().one())];
        for (e, c) in model.to_poly(z, TermOrder::DegRevLex).terms {
            terms.push((pad(&e, &zeros), -c));
        }
        gens.push(Poly::from_terms(order, terms));
    }
    let gb = GroebnerBasis::compute(ring.field(), m + k, order, gens, false);
    let mut cache: Vec<Vec<RingElement>> = vec![Vec::new(); k];
    let mut images = Vec::new();
    for g in gb.basis.iter().filter(|g| {
        g.poly
            .terms
            .iter()
            .all(|(e, _)| e[..m].iter().all(|&x| x == 0))
    }) {
        let mut acc = ring.zero();
        for (e, c) in &g.poly.terms {
            let mut term = ring.scalar(c.clone());
            for (j, &d) in e[m..].iter().enumerate() {
                let d = d as usize;
                while cache[j].len() <= d {
                    let next = match cache[j].last() {
                        Some(p) => p * &invariants[j],
                        None => ring.one(),
                    };
                    cache[j].push(next);
                }
                term = &term * &cache[j][d];
            }
            acc = &acc + &term;
        }
        images.push(acc);
    }
    let generated = Ideal::new(ring, images.clone())?;
    Ok((generated == *ideal).then_some(images))
}
