use gwa_core::catalog::{build_family, FamilySpec};
use gwa_core::field::Field;
use gwa_core::ideals::{classify_univariate, is_phi_stable, Ideal, PhiStableIdeal};
use gwa_core::ring::RingElement;
use gwa_core::whittaker::{WhittakerModule, WhittakerType};
use std::collections::BTreeSet;

/// Every monic polynomial of degree 1..=4 over 𝔽_5, filtered by stability.
fn brute_force(gwa: &gwa_core::gwa::Gwa) -> BTreeSet<String> {
    let ring = gwa.ring();
    let f = ring.field();
    let t = ring.var(0);
    let mut out = BTreeSet::new();
    for deg in 1..=4u32 {
        for code in 0..5u32.pow(deg) {
            let mut c = code;
            let mut poly = t.pow(deg);
            for k in 0..deg {
                poly = &poly + &t.pow(k).scale(&f.from_int((c % 5) as i64));
                c /= 5;
            }
            let ideal = Ideal::new(ring, vec![poly.clone()]).unwrap();
            if is_phi_stable(&ideal, gwa.phis()) {
                out.insert(poly.to_string());
            }
        }
    }
    out
}

#[test]
fn classification_matches_brute_force_and_round_trips() {
    let f = Field::prime(5).unwrap();
    let gwa = build_family(&FamilySpec::UnivariateAffine {
        alpha: f.from_int(2),
        beta: f.zero(),
    })
    .unwrap();
    let cls = classify_univariate(gwa.phi(0), 4).unwrap();
    assert!(cls.listing_complete);
    let listed: BTreeSet<String> = cls.listed.iter().map(RingElement::to_string).collect();
    assert_eq!(listed, brute_force(&gwa));

    let zeta = WhittakerType::new(vec![f.from_int(3)]).unwrap();
    let mut recovered = BTreeSet::new();
    for g in &cls.listed {
        let q = PhiStableIdeal::new(Ideal::new(gwa.ring(), vec![g.clone()]).unwrap(), gwa.phis())
            .unwrap();
        let module = WhittakerModule::build(&gwa, q.clone(), zeta.clone()).unwrap();
        assert_eq!(module.dimension(), g.degree().map(|d| d as usize));
        let back = module.recover_annihilator().unwrap();
        assert_eq!(back.ideal(), q.ideal(), "Q = ({g})");
        recovered.insert(back.ideal().to_string());
    }
    assert_eq!(
        recovered.len(),
        cls.listed.len(),
        "distinct Q give distinct annihilators"
    );
}
