use gwa_core::catalog::{
    build_family, build_theorem_module, default_grid, verify_family_facts, FamilySpec, TheoremId,
    TheoremModule, TheoremSpec,
};
use gwa_core::field::Field;
use gwa_core::whittaker::Simplicity;

const DEGREE: u32 = 4;

fn build(spec: &TheoremSpec) -> TheoremModule {
    build_theorem_module(spec, DEGREE, 1).unwrap_or_else(|e| panic!("{:?}: {e}", spec.parameters()))
}

/// Builds every grid point and checks that all claims hold, that the listed
/// claims are present, and that `Ann_R(w)` recomputed from the matrices is `Q`.
fn grid(id: TheoremId, required: &[&str]) -> Vec<TheoremModule> {
    let modules: Vec<TheoremModule> = default_grid(id).iter().map(build).collect();
    assert!(!modules.is_empty());
    for tm in &modules {
        let report = &tm.claims;
        let failures: Vec<String> = report
            .failures()
            .map(|c| format!("{} ({:?})", c.name, c.detail))
            .collect();
        assert!(
            report.all_green(),
            "{id} {:?}: {failures:?}",
            report.parameters
        );
        for name in required {
            assert!(report.claim(name).is_some(), "{id}: missing claim {name}");
        }
        let recovered = tm.module.recover_annihilator().unwrap();
        assert_eq!(
            recovered.ideal(),
            tm.stated_q.ideal(),
            "{id} {:?}",
            report.parameters
        );
    }
    modules
}

const STANDARD: [&str; 6] = [
    "relations",
    "whittaker vector",
    "cyclic",
    "annihilator",
    "Ann_A(w)",
    "simplicity",
];

fn with_standard(extra: &[&'static str]) -> Vec<&'static str> {
    STANDARD
        .iter()
        .copied()
        .chain(extra.iter().copied())
        .collect()
}

#[test]
fn affine_chain_modules_and_annihilator() {
    let modules = grid(
        TheoremId::T8_3,
        &with_standard(&["submodule chain", "Ann_A(V)"]),
    );
    let mut seen = std::collections::BTreeSet::new();
    for tm in &modules {
        let TheoremSpec::T8_3 { n, .. } = &tm.spec else {
            unreachable!()
        };
        seen.insert(*n);
        assert_eq!(tm.module.dimension(), Some(*n as usize));
        assert_eq!(tm.module.is_simple(1).is_simple(), *n == 1);
    }
    assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
}

#[test]
fn affine_root_of_unity_modules() {
    let modules = grid(TheoremId::T8_5, &STANDARD);
    for tm in &modules {
        let TheoremSpec::T8_5 { theta, .. } = &tm.spec else {
            unreachable!()
        };
        if theta.is_some() {
            assert_eq!(tm.module.dimension(), Some(3));
            for c in ["X^l", "Y^l"] {
                assert!(tm.claims.claim(c).is_some_and(|c| c.holds));
            }
        } else {
            assert_eq!(tm.module.dimension(), Some(1));
        }
        assert!(matches!(tm.module.is_simple(1), Simplicity::Simple(_)));
    }
}

#[test]
fn quantum_plane_and_quantum_weyl_facts() {
    let c3 = Field::cyclotomic(3).unwrap();
    let qq = Field::rational_functions("q").unwrap();
    let specs = [
        FamilySpec::QuantumPlane {
            q: c3.root_of_unity(3).unwrap(),
        },
        FamilySpec::QuantumWeyl {
            q: c3.root_of_unity(3).unwrap(),
        },
        FamilySpec::QuantumPlane {
            q: qq.generator().unwrap(),
        },
        FamilySpec::QuantumWeyl {
            q: qq.generator().unwrap(),
        },
    ];
    for spec in specs {
        let report = verify_family_facts(&spec, DEGREE).unwrap();
        assert!(report.all_green(), "{}: {:?}", spec.name(), report.facts);
        assert!(report
            .fact("one-dimensional module")
            .is_some_and(|f| f.holds));
    }
    let root = verify_family_facts(
        &FamilySpec::QuantumWeyl {
            q: c3.root_of_unity(3).unwrap(),
        },
        DEGREE,
    )
    .unwrap();
    assert!(root.fact("root-of-unity module").is_some_and(|f| f.holds));
}

#[test]
fn shift_modules_in_char_p() {
    let modules = grid(TheoremId::T8_7, &with_standard(&["X^p", "Y^p"]));
    for tm in &modules {
        let p = tm.spec.field().characteristic();
        assert!(p == 3 || p == 5);
        assert_eq!(tm.module.dimension(), Some(p as usize));
        assert!(matches!(tm.module.is_simple(1), Simplicity::Simple(_)));
    }
}

#[test]
fn weyl_modules_in_char_p() {
    let modules = grid(TheoremId::T8_9, &with_standard(&["X^p"]));
    for tm in &modules {
        let p = tm.spec.field().characteristic() as usize;
        assert_eq!(tm.module.dimension(), Some(p));
    }
}

#[test]
fn smith_modules_and_weyl_correspondence() {
    let modules = grid(TheoremId::T9, &with_standard(&["X^p", "Y^p"]));
    let mut correspondences = 0;
    for tm in &modules {
        let p = tm.spec.field().characteristic() as usize;
        assert_eq!(tm.module.dimension(), Some(p));
        if let Some(c) = tm.claims.claim("weyl correspondence") {
            assert!(c.holds);
            correspondences += 1;
        }
    }
    assert_eq!(
        correspondences, 2,
        "one correspondence check per characteristic"
    );
}

#[test]
fn quantum_smith_root_of_unity_modules() {
    let modules = grid(
        TheoremId::T10,
        &with_standard(&["X^l", "Y^l", "eigenbasis"]),
    );
    for tm in &modules {
        assert_eq!(tm.module.dimension(), Some(3));
    }
}

#[test]
fn uqsl2_is_quantum_smith_with_m_1() {
    let f = Field::cyclotomic(6).unwrap();
    let q = f.root_of_unity(6).unwrap();
    let u = build_family(&FamilySpec::Uqsl2 { q: q.clone() }).unwrap();
    let s = build_family(&FamilySpec::QuantumSmith { m: 1, q: q.clone() }).unwrap();
    assert_eq!(u.ring(), s.ring());
    assert_eq!(u.phis(), s.phis());
    assert_eq!(u.ts(), s.ts());
    let report = verify_family_facts(&FamilySpec::Uqsl2 { q }, DEGREE).unwrap();
    assert!(report.fact("quantum Smith m=1").is_some_and(|f| f.holds));
}
