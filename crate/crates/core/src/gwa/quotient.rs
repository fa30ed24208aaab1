//! Presentations of `A/AQ ≅ (R/Q)(φ̄, t̄)` when `R/Q` is again a (Laurent)
//! polynomial ring, i.e. `Q` is generated by `c·x_j − p` eliminating variables.

use super::{Gwa, GwaError};
use crate::ideals::PhiStableIdeal;
use crate::ring::{Automorphism, Ring, RingElement};

/// Finds a non-Laurent variable occurring only linearly with constant coefficient.
fn eliminable(g: &RingElement) -> Option<usize> {
    let ring = g.ring();
    (0..ring.nvars()).find(|&j| {
        !ring.is_laurent(j)
            && g.degree_in(j) == Some(1)
            && g.terms().all(|(m, _)| {
                m.0[j] == 0
                    || (m.0[j] == 1 && m.0.iter().enumerate().all(|(k, &e)| k == j || e == 0))
            })
            && g.terms().all(|(m, _)| m.0[j] >= 0)
    })
}

pub fn quotient_gwa(gwa: &Gwa, q: &PhiStableIdeal) -> Result<Gwa, GwaError> {
    let ring = gwa.ring();
    if q.ring() != ring || q.phis() != gwa.phis() {
        return Err(GwaError::NotPhiStable);
    }
    if q.is_unit() {
        return Err(GwaError::NotPresentable(
            "the ideal is the whole ring".into(),
        ));
    }
    // images[j] expresses x_j in the surviving variables (still inside R).
    let n = ring.nvars();
    let mut images: Vec<RingElement> = (0..n).map(|j| ring.var(j)).collect();
    let mut eliminated = vec![false; n];
    let mut pending: Vec<RingElement> = q.basis();
    loop {
        pending.retain(|g| !g.is_zero());
        if pending.is_empty() {
            break;
        }
        let Some((idx, j)) = pending
            .iter()
            .enumerate()
            .find_map(|(i, g)| eliminable(g).map(|j| (i, j)))
        else {
            return Err(GwaError::NotPresentable(format!(
                "{} does not eliminate a polynomial variable",
                pending[0]
            )));
        };
        let g = pending.remove(idx);
        let c = g.coeff(&crate::ring::Monomial::var(n, j));
        let mut rest = g.clone();
        rest.add_term(crate::ring::Monomial::var(n, j), -c.clone());
        let value = rest.scale(&(-c.inv().map_err(crate::ring::RingError::from)?));
        let sub: Vec<RingElement> = (0..n)
            .map(|k| if k == j { value.clone() } else { ring.var(k) })
            .collect();
        let inv: Vec<Option<RingElement>> = (0..n)
            .map(|k| {
                ring.is_laurent(k)
                    .then(|| ring.var(k).inverse().expect("Laurent unit"))
            })
            .collect();
        for im in images.iter_mut() {
            *im = im.substitute(&sub, &inv);
        }
        images[j] = value;
        eliminated[j] = true;
        for p in pending.iter_mut() {
            *p = p.substitute(&sub, &inv);
        }
        if pending
            .iter()
            .any(|p| p.constant_value().is_some_and(|c| !c.is_zero()))
        {
            return Err(GwaError::NotPresentable(
                "the ideal is the whole ring".into(),
            ));
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&j| !eliminated[j]).collect();
    let target = Ring::new(
        ring.field().clone(),
        keep.iter().map(|&j| ring.vars()[j].clone()).collect(),
        keep.iter().map(|&j| ring.is_laurent(j)).collect(),
    )?;
    let mut to_target: Vec<RingElement> = vec![target.zero(); n];
    let mut to_target_inv: Vec<Option<RingElement>> = vec![None; n];
    for (new, &old) in keep.iter().enumerate() {
        to_target[old] = target.var(new);
        if target.is_laurent(new) {
            to_target_inv[old] = Some(target.var(new).inverse()?);
        }
    }
    let project = |r: &RingElement| -> RingElement {
        let inv: Vec<Option<RingElement>> = (0..n)
            .map(|k| {
                ring.is_laurent(k)
                    .then(|| ring.var(k).inverse().expect("Laurent unit"))
            })
            .collect();
        r.substitute(&images, &inv)
            .substitute(&to_target, &to_target_inv)
    };
    let mut phis = Vec::with_capacity(gwa.rank());
    for p in gwa.phis() {
        let fwd = keep.iter().map(|&j| project(p.image(j))).collect();
        let back = keep
            .iter()
            .map(|&j| project(&p.apply_inverse(&ring.var(j))))
            .collect();
        phis.push(Automorphism::with_inverse(&target, fwd, back)?);
    }
    let mut ts = Vec::with_capacity(gwa.rank());
    for (i, t) in gwa.ts().iter().enumerate() {
        let tb = project(t);
        if tb.is_zero() {
            return Err(GwaError::TiInIdeal(i));
        }
        ts.push(tb);
    }
    let mut out = Gwa::new(target, phis, ts)?;
    if let Some(l) = gwa.label() {
        out = out.with_label(format!("{l} / {q}"));
    }
    for (name, v) in gwa.parameters() {
        out = out.with_parameter(name, v.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn fixing_casimir_in_uqsl2_shape() {
        // R = 𝔽[c, K^{±1}], φ(c) = c, φ(K) = 2K, t = c + K. Quotient by (c − 3).
        let f = Field::rationals();
        let r = Ring::new(f.clone(), vec!["c".into(), "K".into()], vec![false, true]).unwrap();
        let (c, k) = (r.var(0), r.var(1));
        let phi = Automorphism::new(&r, vec![c.clone(), k.scale(&f.from_int(2))]).unwrap();
        let a = Gwa::new(r.clone(), vec![phi.clone()], vec![&c + &k]).unwrap();
        let q = PhiStableIdeal::from_generators(&r, vec![&c - &r.from_int(3)], &[phi]).unwrap();
        let b = quotient_gwa(&a, &q).unwrap();
        assert_eq!(b.ring().vars(), ["K"]);
        assert_eq!(b.t(0).to_string(), "K+3");
        assert_eq!(b.phi(0).image(0).to_string(), "2*K");
    }

    #[test]
    fn rejects_non_polynomial_quotient_and_t_in_ideal() {
        let f = Field::rationals();
        let r = Ring::polynomial(f.clone(), &["t", "c"]).unwrap();
        let (t, c) = (r.var(0), r.var(1));
        let phi = Automorphism::new(&r, vec![t.scale(&f.from_int(2)), c.clone()]).unwrap();
        let a = Gwa::new(r.clone(), vec![phi.clone()], vec![t.clone()]).unwrap();
        let q = PhiStableIdeal::from_generators(&r, vec![c.pow(2)], std::slice::from_ref(&phi))
            .unwrap();
        assert!(matches!(
            quotient_gwa(&a, &q),
            Err(GwaError::NotPresentable(_))
        ));
        let q = PhiStableIdeal::from_generators(&r, vec![t.clone()], &[phi]).unwrap();
        assert!(matches!(quotient_gwa(&a, &q), Err(GwaError::TiInIdeal(0))));
    }
}
