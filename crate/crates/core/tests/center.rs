mod common;

use common::{quantum_smith_root3, quantum_weyl_root3, shift_char_p, smith_2x, weyl};
use gwa_core::field::Field;
use gwa_core::gwa::{center_generators, Gwa, GwaElement};
use gwa_core::ring::RingElement;
use std::collections::BTreeSet;

/// `X_i`, `Y_i` and the ring generators (with inverses of Laurent variables).
fn algebra_generators(gwa: &Gwa) -> Vec<GwaElement> {
    let ring = gwa.ring();
    let mut gens: Vec<GwaElement> = (0..gwa.rank()).flat_map(|i| [gwa.x(i), gwa.y(i)]).collect();
    for j in 0..ring.nvars() {
        gens.push(gwa.from_ring(ring.var(j)));
        if ring.is_laurent(j) {
            gens.push(gwa.from_ring(ring.var(j).inverse().unwrap()));
        }
    }
    gens
}

fn assert_central(name: &str, gwa: &Gwa, z: &GwaElement) {
    for g in algebra_generators(gwa) {
        assert!(z.commutator(&g).is_zero(), "{name}: [{z}, {g}] != 0");
    }
}

fn check(name: &str, gwa: &Gwa, lattice: &[Vec<i32>], ring: &[RingElement]) {
    let c = center_generators(gwa, 6);
    for z in &c.elements {
        assert_central(name, gwa, z);
    }
    let got: BTreeSet<_> = c.lattice_generators.iter().cloned().collect();
    assert_eq!(got, lattice.iter().cloned().collect(), "{name}: lattice");
    let got: BTreeSet<String> = c.ring_generators.iter().map(|r| r.to_string()).collect();
    let want: BTreeSet<String> = ring.iter().map(|r| r.to_string()).collect();
    assert_eq!(got, want, "{name}: fixed ring");
    for r in ring {
        assert_central(name, gwa, &gwa.from_ring(r.clone()));
    }
    for alpha in lattice {
        assert_central(name, gwa, &gwa.z(alpha.clone()));
    }
    let x = gwa.x(0);
    assert!(
        algebra_generators(gwa)
            .iter()
            .any(|g| !x.commutator(g).is_zero()),
        "{name}: X is not central"
    );
}

#[test]
fn weyl_char_0_has_scalar_center() {
    for n in 1..=2 {
        let a = weyl(n);
        check(&format!("A_{n}"), &a, &[], &[]);
    }
}

#[test]
fn quantum_weyl_at_cube_root() {
    let a = quantum_weyl_root3();
    let ring = a.ring();
    let q = a.parameters()["q"].clone();
    // t̃ = (α − 1)t + β with α = q^{-1}, β = −q^{-1}.
    let qi = q.inv().unwrap();
    let tt = &ring.var(0).scale(&(&qi - &a.field().one())) + &ring.scalar(-qi);
    check("A_q1", &a, &[vec![3], vec![-3]], &[tt.pow(3)]);
}

#[test]
fn shift_char_p_center() {
    for p in [3u64, 5] {
        let a = shift_char_p(p);
        let t = a.ring().var(0);
        // β = 1, so β^{p−1} t = t.
        let pi = p as i32;
        check(
            &format!("shift p={p}"),
            &a,
            &[vec![pi], vec![-pi]],
            &[&t.pow(p as u32) - &t],
        );
    }
}

#[test]
fn smith_char_5_center() {
    let a = smith_2x(Field::prime(5).unwrap());
    let ring = a.ring();
    let (h, c) = (ring.var(0), ring.var(1));
    check("Smith F_5", &a, &[vec![5], vec![-5]], &[c, &h.pow(5) - &h]);
}

#[test]
fn quantum_smith_cube_root_center() {
    let a = quantum_smith_root3();
    let ring = a.ring();
    let (k, c) = (ring.var(0), ring.var(1));
    let k3 = k.pow(3);
    check(
        "quantum Smith",
        &a,
        &[vec![3], vec![-3]],
        &[c, k3.inverse().unwrap(), k3],
    );
}
