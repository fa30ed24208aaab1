#![allow(dead_code)]

use gwa_core::catalog::{build_family, FamilySpec};
use gwa_core::field::{Field, FieldElement};
use gwa_core::gwa::{Gwa, GwaElement};
use gwa_core::ring::{Ring, RingElement};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn weyl(n: usize) -> Gwa {
    build_family(&FamilySpec::Weyl {
        field: Field::rationals(),
        n,
    })
    .unwrap()
}

pub fn quantum_plane_generic() -> Gwa {
    let f = Field::rational_functions("q").unwrap();
    build_family(&FamilySpec::QuantumPlane {
        q: f.generator().unwrap(),
    })
    .unwrap()
}

pub fn quantum_weyl_generic() -> Gwa {
    let f = Field::rational_functions("q").unwrap();
    build_family(&FamilySpec::QuantumWeyl {
        q: f.generator().unwrap(),
    })
    .unwrap()
}

/// `A_{q,1}` with `q` a primitive cube root of unity.
pub fn quantum_weyl_root3() -> Gwa {
    let f = Field::cyclotomic(3).unwrap();
    build_family(&FamilySpec::QuantumWeyl {
        q: f.root_of_unity(3).unwrap(),
    })
    .unwrap()
}

pub fn smith_2x(field: Field) -> Gwa {
    let s = vec![field.zero(), field.from_int(2)];
    build_family(&FamilySpec::Smith { field, s }).unwrap()
}

/// Quantum Smith with `m = 1` and `q` a primitive sixth root, so `q²` has order 3.
pub fn quantum_smith_root3() -> Gwa {
    let f = Field::cyclotomic(6).unwrap();
    build_family(&FamilySpec::QuantumSmith {
        m: 1,
        q: f.root_of_unity(6).unwrap(),
    })
    .unwrap()
}

pub fn shift_char_p(p: u64) -> Gwa {
    let f = Field::prime(p).unwrap();
    build_family(&FamilySpec::UnivariateAffine {
        alpha: f.one(),
        beta: f.one(),
    })
    .unwrap()
}

/// The families of the normal-form and module-axiom suites.
pub fn families() -> Vec<(&'static str, Gwa)> {
    vec![
        ("A_1", weyl(1)),
        ("A_2", weyl(2)),
        ("quantum plane", quantum_plane_generic()),
        ("A_q1 generic", quantum_weyl_generic()),
        ("A_q1 l=3", quantum_weyl_root3()),
        ("Smith char 0", smith_2x(Field::rationals())),
        ("Smith char 5", smith_2x(Field::prime(5).unwrap())),
        ("quantum Smith l=3", quantum_smith_root3()),
    ]
}

pub fn random_scalar<R: Rng>(f: &Field, rng: &mut R) -> FieldElement {
    f.sample(rng, 5)
}

pub fn random_nonzero_scalar<R: Rng>(f: &Field, rng: &mut R) -> FieldElement {
    loop {
        let c = random_scalar(f, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Up to three terms with monomials of degree at most `degree`.
pub fn random_ring<R: Rng>(ring: &Ring, rng: &mut R, degree: u32) -> RingElement {
    let monomials = ring.monomials_up_to(degree);
    let terms = rng.gen_range(1..=3);
    (0..terms).fold(ring.zero(), |acc, _| {
        let m = monomials.choose(rng).unwrap().clone();
        &acc + &ring.term(m, random_scalar(ring.field(), rng))
    })
}

/// Up to three terms `r Z^α` with `|α| ≤ max_alpha` and `deg r ≤ degree`.
pub fn random_element<R: Rng>(gwa: &Gwa, rng: &mut R, max_alpha: u32, degree: u32) -> GwaElement {
    let terms = rng.gen_range(1..=3);
    (0..terms).fold(gwa.zero(), |acc, _| {
        let mut alpha = vec![0i32; gwa.rank()];
        let mut budget = rng.gen_range(0..=max_alpha) as i32;
        while budget > 0 {
            let i = rng.gen_range(0..gwa.rank());
            let step = rng.gen_range(1..=budget);
            let sign = if alpha[i] != 0 {
                alpha[i].signum()
            } else if rng.gen_bool(0.5) {
                1
            } else {
                -1
            };
            alpha[i] += sign * step;
            budget -= step;
        }
        &acc + &gwa.monomial(random_ring(gwa.ring(), rng, degree), alpha)
    })
}

/// Up to three terms `c·r Z^α` with `|α| + deg r ≤ degree`.
pub fn random_element_of_degree<R: Rng>(gwa: &Gwa, rng: &mut R, degree: u32) -> GwaElement {
    let basis = gwa.basis_up_to(degree);
    let terms = rng.gen_range(1..=3);
    (0..terms).fold(gwa.zero(), |acc, _| {
        let (alpha, m) = basis.choose(rng).unwrap().clone();
        let r = gwa.ring().term(m, random_nonzero_scalar(gwa.field(), rng));
        &acc + &gwa.monomial(r, alpha)
    })
}
