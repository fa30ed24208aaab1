mod common;

use common::{families, random_element_of_degree, random_nonzero_scalar, random_ring, rng};
use gwa_core::catalog::{build_theorem_module, default_grid, TheoremId, TheoremSpec};
use gwa_core::field::Field;
use gwa_core::gwa::Gwa;
use gwa_core::linalg::Matrix;
use gwa_core::whittaker::{universal_act, WhittakerType};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn family(name: &str) -> Gwa {
    families().into_iter().find(|(n, _)| *n == name).unwrap().1
}

/// `(ab)·r = a·(b·r)` in the universal module.
fn module_axiom(gwa: &Gwa, seed: u64) {
    let mut g = rng(seed);
    let zeta = WhittakerType::new(
        (0..gwa.rank())
            .map(|_| random_nonzero_scalar(gwa.field(), &mut g))
            .collect(),
    )
    .unwrap();
    let a = random_element_of_degree(gwa, &mut g, 3);
    let b = random_element_of_degree(gwa, &mut g, 3);
    let r = random_ring(gwa.ring(), &mut g, 4);
    let lhs = universal_act(&(&a * &b), &r, &zeta).unwrap();
    let rhs = universal_act(&a, &universal_act(&b, &r, &zeta).unwrap(), &zeta).unwrap();
    assert_eq!(lhs, rhs, "a = {a}, b = {b}, r = {r}");
}

macro_rules! axiom_suite {
    ($test:ident, $name:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]
            #[test]
            fn $test(seed in any::<u64>()) {
                module_axiom(&family($name), seed);
            }
        }
    };
}

axiom_suite!(universal_module_weyl_1, "A_1");
axiom_suite!(universal_module_weyl_2, "A_2");
axiom_suite!(universal_module_quantum_plane, "quantum plane");
axiom_suite!(universal_module_quantum_weyl_generic, "A_q1 generic");
axiom_suite!(universal_module_quantum_weyl_root3, "A_q1 l=3");
axiom_suite!(universal_module_smith_char_0, "Smith char 0");
axiom_suite!(universal_module_smith_char_5, "Smith char 5");
axiom_suite!(universal_module_quantum_smith_root3, "quantum Smith l=3");

/// `r ↦ r·w_u` is injective on ring elements of degree ≤ 6.
#[test]
fn universal_whittaker_vector_has_zero_ring_annihilator() {
    for (name, gwa) in families() {
        let ring = gwa.ring();
        let f = gwa.field();
        let zeta = WhittakerType::new(vec![f.one(); gwa.rank()]).unwrap();
        let monomials = ring.monomials_up_to(6);
        let images: Vec<_> = monomials
            .iter()
            .map(|m| {
                universal_act(&gwa.from_ring(ring.monomial(m.clone())), &ring.one(), &zeta).unwrap()
            })
            .collect();
        let index: BTreeSet<_> = images
            .iter()
            .flat_map(|img| img.terms().map(|(m, _)| m.clone()))
            .collect();
        let rows: Vec<Vec<_>> = images
            .iter()
            .map(|img| index.iter().map(|m| img.coeff(m)).collect())
            .collect();
        let rank = Matrix::from_rows(f, index.len(), rows).rank();
        assert_eq!(
            rank,
            monomials.len(),
            "{name}: a nonzero r with r·w_u = 0 exists"
        );
    }
}

#[test]
fn annihilator_of_w_matches_truncated_span() {
    let q = Field::rationals();
    let f3 = Field::prime(3).unwrap();
    let f5 = Field::prime(5).unwrap();
    let specs = [
        TheoremSpec::T8_3 {
            alpha: q.from_int(2),
            beta: q.one(),
            zeta: q.from_int(3),
            n: 2,
        },
        TheoremSpec::T8_9 {
            lambda: f3.one(),
            zeta: f3.from_int(2),
        },
        TheoremSpec::T9 {
            s: vec![f3.zero(), f3.from_int(2)],
            theta: f3.one(),
            lambda: f3.zero(),
            zeta: f3.one(),
        },
        TheoremSpec::T8_9 {
            lambda: f5.from_int(2),
            zeta: f5.from_int(3),
        },
        TheoremSpec::T8_7 {
            beta: f5.one(),
            lambda: f5.one(),
            zeta: f5.from_int(2),
        },
    ];
    for spec in specs {
        let tm = build_theorem_module(&spec, 4, 0).unwrap();
        let eq = tm.module.ann_w_truncated(4);
        assert!(
            eq.equal,
            "{:?}: kernel {} vs span {}",
            spec.parameters(),
            eq.kernel_dim,
            eq.span_dim
        );
        assert_eq!(eq.kernel_dim, eq.span_dim);
    }
}

#[test]
fn whittaker_vector_routes_agree_on_all_matrix_models() {
    for id in TheoremId::ALL {
        for spec in default_grid(id) {
            let tm = build_theorem_module(&spec, 4, 0).unwrap();
            let zeta = tm.module.zeta().values().to_vec();
            let wh = tm.module.whittaker_vectors(&zeta, 4).unwrap();
            assert!(wh.exact && wh.routes_agree, "{id} {:?}", spec.parameters());
            if tm.module.is_simple(0).is_simple() {
                assert_eq!(
                    wh.dimension,
                    1,
                    "{id} {:?}: simple module with dim Wh = {}",
                    spec.parameters(),
                    wh.dimension
                );
            }
        }
    }
}

#[test]
fn endomorphisms_are_the_image_of_s() {
    let q = Field::rationals();
    let f3 = Field::prime(3).unwrap();
    let specs = [
        TheoremSpec::T8_3 {
            alpha: q.from_int(2),
            beta: q.zero(),
            zeta: q.one(),
            n: 2,
        },
        TheoremSpec::T8_3 {
            alpha: q.from_int(2),
            beta: q.one(),
            zeta: q.from_int(3),
            n: 2,
        },
        TheoremSpec::T9 {
            s: vec![f3.zero(), f3.from_int(2)],
            theta: f3.zero(),
            lambda: f3.one(),
            zeta: f3.from_int(2),
        },
    ];
    for spec in specs {
        let tm = build_theorem_module(&spec, 4, 0).unwrap();
        let endo = tm.module.endo_ring().unwrap();
        assert!(endo.agree, "{:?}", spec.parameters());
        assert_eq!(endo.commutant.len(), endo.s_over_q.len());
    }
}
