//! Per-family fact suites: centre, stable ideals and the small explicit modules.

use super::theorems::{build_theorem_module, TheoremSpec};
use super::{build_family, eval_poly, poly_in, smith_r, CatalogError, FamilySpec};
use crate::field::{Field, FieldElement};
use crate::gwa::{center_generators, is_central, Gwa};
use crate::ideals::{
    central_generators, classify_univariate, is_phi_stable, phi_stable_closure,
    shift_regime_description, univariate_affine_parts, Ideal, PhiStableIdeal,
};
use crate::linalg::Matrix;
use crate::ring::{Automorphism, Ring, RingElement};
use crate::whittaker::{MatrixModel, WhittakerModule, WhittakerType};
use serde_json::{json, Value};
use std::collections::BTreeSet;

/// Upper bound on brute-force enumeration of monic polynomials.
const BRUTE_FORCE_CAP: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub name: String,
    pub statement: String,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactReport {
    pub family: String,
    pub facts: Vec<Fact>,
}

impl FactReport {
    pub fn all_green(&self) -> bool {
        self.facts.iter().all(|f| f.holds)
    }

    pub fn fact(&self, name: &str) -> Option<&Fact> {
        self.facts.iter().find(|f| f.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "status": if self.all_green() { "green" } else { "red" },
            "facts": self.facts.iter().map(|f| {
                let mut v = json!({
                    "check": f.name,
                    "statement": f.statement,
                    "status": if f.holds { "pass" } else { "fail" },
                });
                if let Some(d) = &f.detail {
                    v["witness"] = Value::String(d.clone());
                }
                v
            }).collect::<Vec<_>>(),
        })
    }
}

struct Facts(Vec<Fact>);

impl Facts {
    fn push(
        &mut self,
        name: &str,
        statement: impl Into<String>,
        holds: bool,
        detail: Option<String>,
    ) {
        self.0.push(Fact {
            name: name.into(),
            statement: statement.into(),
            holds,
            detail,
        });
    }
}

/// Monic generators `f` with `1 ≤ deg f ≤ degree` of the φ-stable ideals of `𝔽_p[t]`.
pub fn brute_force_stable_ideals(
    ring: &Ring,
    phis: &[Automorphism],
    degree: u32,
) -> Result<Vec<RingElement>, CatalogError> {
    let f = ring.field();
    let p = f.characteristic();
    if p == 0 || f.generator().is_some() || ring.nvars() != 1 || ring.has_laurent() {
        return Err(CatalogError::InvalidParameters(
            "brute force needs F_p[t]".into(),
        ));
    }
    let total: u64 = (1..=degree).map(|d| p.saturating_pow(d)).sum();
    if total > BRUTE_FORCE_CAP {
        return Err(CatalogError::InvalidParameters(format!(
            "{total} candidates exceed the enumeration cap"
        )));
    }
    let mut out = Vec::new();
    for d in 1..=degree {
        for code in 0..p.pow(d) {
            let mut coeffs: Vec<FieldElement> = (0..d)
                .scan(code, |c, _| {
                    let digit = *c % p;
                    *c /= p;
                    Some(f.from_int(digit as i64))
                })
                .collect();
            coeffs.push(f.one());
            let g = poly_in(ring, 0, &coeffs);
            if is_phi_stable(&Ideal::new(ring, vec![g.clone()])?, phis) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Generators of `J ∩ R^φ` that generate `J`, for families whose invariant ring is known.
pub fn is_centrally_generated(
    gwa: &Gwa,
    j: &PhiStableIdeal,
) -> Result<Option<Vec<RingElement>>, CatalogError> {
    let inv = gwa.invariants().ok_or_else(|| {
        CatalogError::InvalidParameters("the family has no known invariant ring".into())
    })?;
    Ok(central_generators(j.ideal(), inv)?)
}

fn strings(v: &[RingElement]) -> BTreeSet<String> {
    v.iter().map(|r| r.monic().to_string()).collect()
}

/// Runs the full fact suite of a family; `degree` bounds every enumeration.
pub fn verify_family_facts(spec: &FamilySpec, degree: u32) -> Result<FactReport, CatalogError> {
    let gwa = build_family(spec)?;
    let f = spec.field();
    let mut facts = Facts(Vec::new());

    let center = center_generators(&gwa, degree);
    let bad: Vec<String> = center
        .elements
        .iter()
        .filter(|z| !is_central(z))
        .map(|z| z.to_string())
        .collect();
    facts.push(
        "center",
        "every returned centre generator commutes with all X_i, Y_i and ring generators",
        bad.is_empty(),
        Some(if bad.is_empty() {
            center
                .elements
                .iter()
                .map(|z| z.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        } else {
            format!("not central: {}", bad.join(", "))
        }),
    );

    if gwa.ring().nvars() == 1 && !gwa.ring().has_laurent() {
        univariate_facts(&mut facts, &gwa, degree)?;
    }
    match spec {
        FamilySpec::Weyl { n, .. } if f.characteristic() == 0 => {
            let ring = gwa.ring();
            let monomials: Vec<_> = ring
                .monomials_up_to(degree)
                .into_iter()
                .filter(|m| !m.is_one())
                .collect();
            let mut stuck = None;
            for m in &monomials {
                let c = phi_stable_closure(ring, vec![ring.monomial(m.clone())], gwa.phis())?;
                if !c.is_unit() {
                    stuck = Some(ring.monomial(m.clone()).to_string());
                    break;
                }
            }
            facts.push(
                "no stable ideals",
                format!(
                    "the φ-stable closure of every monomial of degree ≤ {degree} in A_{n} is (1)"
                ),
                stuck.is_none(),
                stuck.map(|s| format!("closure of ({s}) is proper")),
            );
        }
        FamilySpec::QuantumPlane { q } => quantum_plane_facts(&mut facts, &gwa, q)?,
        FamilySpec::QuantumWeyl { q } => quantum_weyl_facts(&mut facts, &gwa, q)?,
        FamilySpec::Smith { s, .. } => smith_facts(&mut facts, &gwa, s)?,
        FamilySpec::QuantumSmith { m, q } => quantum_smith_facts(&mut facts, &gwa, *m, q)?,
        FamilySpec::Uqsl2 { q } => {
            let qs = build_family(&FamilySpec::QuantumSmith { m: 1, q: q.clone() })?;
            let same = qs.ring() == gwa.ring() && qs.phis() == gwa.phis() && qs.ts() == gwa.ts();
            facts.push(
                "quantum Smith m=1",
                "U_q(sl2) has the presentation of the quantum Smith algebra with m = 1",
                same,
                None,
            );
            quantum_smith_facts(&mut facts, &gwa, 1, q)?;
        }
        _ => {}
    }
    Ok(FactReport {
        family: spec.name(),
        facts: facts.0,
    })
}

fn univariate_facts(facts: &mut Facts, gwa: &Gwa, degree: u32) -> Result<(), CatalogError> {
    let phi = gwa.phi(0);
    let ring = gwa.ring();
    let f = ring.field();
    let (alpha, beta) = univariate_affine_parts(phi)?;
    if alpha.is_one() {
        let desc = shift_regime_description(phi)?;
        facts.push("stable ideals", desc, true, None);
        let p = f.characteristic();
        if p != 0 && !beta.is_zero() {
            let t = ring.var(0);
            let z = &t.pow(p as u32) - &t.scale(&beta.pow(p as i64 - 1)?);
            let ok = (0..p.min(5)).all(|mu| {
                let g = &z - &ring.from_int(mu as i64);
                let j = Ideal::new(ring, vec![g]).expect("ideal");
                is_phi_stable(&j, gwa.phis())
                    && PhiStableIdeal::new(j, gwa.phis())
                        .ok()
                        .and_then(|j| is_centrally_generated(gwa, &j).ok().flatten())
                        .is_some()
            });
            facts.push(
                "central ideals",
                "(t^p − β^{p−1}t − μ) is φ-stable and centrally generated",
                ok,
                None,
            );
        }
        return Ok(());
    }
    let class = classify_univariate(phi, degree)?;
    let unstable: Vec<String> = class
        .listed
        .iter()
        .filter(|g| {
            !is_phi_stable(
                &Ideal::new(ring, vec![(*g).clone()]).expect("ideal"),
                gwa.phis(),
            )
        })
        .map(|g| g.to_string())
        .collect();
    facts.push(
        "classification stable",
        format!("every listed ideal is φ-stable: {}", class.family),
        unstable.is_empty(),
        (!unstable.is_empty()).then(|| unstable.join(", ")),
    );
    if f.characteristic() != 0 && f.generator().is_none() {
        let brute = brute_force_stable_ideals(ring, gwa.phis(), degree)?;
        let (a, b) = (strings(&class.listed), strings(&brute));
        facts.push(
            "classification complete",
            format!("the listed ideals of degree ≤ {degree} equal the brute-force enumeration"),
            a == b,
            Some(format!("{} listed, {} enumerated", a.len(), b.len())),
        );
        let zeta = WhittakerType::new(vec![f.one()])?;
        let mut failed = Vec::new();
        for g in &class.listed {
            let q = PhiStableIdeal::from_generators(ring, vec![g.clone()], gwa.phis())?;
            let m = WhittakerModule::build(gwa, q.clone(), zeta.clone())?;
            if m.recover_annihilator()?.ideal() != q.ideal() {
                failed.push(g.to_string());
            }
        }
        facts.push(
            "bijection",
            "Ann_R(w) of V_Q recovers Q for every listed ideal",
            failed.is_empty(),
            (!failed.is_empty()).then(|| failed.join(", ")),
        );
    }
    Ok(())
}

fn one_dim_model(f: &Field, t: FieldElement, x: FieldElement, y: FieldElement) -> MatrixModel {
    let s = |v: FieldElement| Matrix::from_rows(f, 1, vec![vec![v]]);
    MatrixModel {
        labels: vec!["w".into()],
        ring_mats: vec![s(t)],
        ring_inv_mats: vec![None],
        xs: vec![s(x)],
        ys: vec![s(y)],
        w: vec![f.one()],
    }
}

/// Relations hold and `Ann_R(w) = (t̃)`.
fn one_dim_fact(
    facts: &mut Facts,
    gwa: &Gwa,
    name: &str,
    statement: &str,
    t: FieldElement,
    y: FieldElement,
    zeta: &FieldElement,
) -> Result<(), CatalogError> {
    let f = gwa.field().clone();
    let model = one_dim_model(&f, t, zeta.clone(), y);
    let m =
        WhittakerModule::from_matrix_model(gwa, WhittakerType::new(vec![zeta.clone()])?, model)?;
    let relations = m.relation_checks()?.iter().all(|c| c.holds);
    let tt = crate::ideals::t_tilde(gwa.phi(0))?;
    let q = Ideal::new(gwa.ring(), vec![tt])?;
    facts.push(
        name,
        statement,
        relations && m.q().ideal() == &q,
        Some(format!("Ann_R(w) = {}", m.q())),
    );
    Ok(())
}

fn quantum_plane_facts(facts: &mut Facts, gwa: &Gwa, q: &FieldElement) -> Result<(), CatalogError> {
    let f = gwa.field().clone();
    let zeta = f.from_int(2);
    one_dim_fact(
        facts,
        gwa,
        "one-dimensional module",
        "X w = ζ w, Y w = 0, t w = 0",
        f.zero(),
        f.zero(),
        &zeta,
    )?;
    if q.root_of_unity_order().is_some() {
        let spec = TheoremSpec::T8_5 {
            alpha: q.clone(),
            beta: f.zero(),
            zeta,
            theta: Some(f.one()),
        };
        let r = build_theorem_module(&spec, 3, 0)?.claims;
        facts.push(
            "root-of-unity module",
            "the ℓ-dimensional module X u_k = ζα^k u_k, t u_k = (α−1)^{-1}ϑ u_{k+1} satisfies every claim",
            r.all_green(),
            None,
        );
    }
    Ok(())
}

fn quantum_weyl_facts(facts: &mut Facts, gwa: &Gwa, q: &FieldElement) -> Result<(), CatalogError> {
    let f = gwa.field().clone();
    let zeta = f.from_int(2);
    let u = (&f.one() - q).inv()?;
    one_dim_fact(
        facts,
        gwa,
        "one-dimensional module",
        "X w = ζ w, Y w = ζ^{-1}(1−q)^{-1} w, t w = (1−q)^{-1} w",
        u.clone(),
        &zeta.inv()? * &u,
        &zeta,
    )?;
    if q.root_of_unity_order().is_some() {
        let qi = q.inv()?;
        let theta = f.from_int(2);
        let spec = TheoremSpec::T8_5 {
            alpha: qi.clone(),
            beta: -qi.clone(),
            zeta: zeta.clone(),
            theta: Some(theta.clone()),
        };
        let tm = build_theorem_module(&spec, 3, 0)?;
        let m = tm.module.matrix_model()?;
        let l = m.dim();
        // X u_k = ζq^{-k}u_k, t u_k = q(1−q)^{-1}ϑu_{k+1} + (1−q)^{-1}u_k,
        // Y u_k = ζ^{-1}q^{k+1}(1−q)^{-1}(ϑu_{k+1} + q^{-1}u_k).
        let mut explicit = true;
        for k in 0..l {
            let next = (k + 1) % l;
            let qk1 = q.pow(k as i64 + 1)?;
            explicit &= m.xs[0].get(k, k) == &(&zeta * &q.pow(-(k as i64))?);
            explicit &= m.ring_mats[0].get(next, k) == &(&(q * &u) * &theta);
            explicit &= m.ring_mats[0].get(k, k) == &u;
            let yc = &(&zeta.inv()? * &qk1) * &u;
            explicit &= m.ys[0].get(next, k) == &(&yc * &theta);
            explicit &= m.ys[0].get(k, k) == &(&yc * &qi);
        }
        facts.push(
            "root-of-unity module",
            "the ℓ-dimensional module X u_k = ζq^{-k}u_k, t u_k = q(1−q)^{-1}ϑu_{k+1} + (1−q)^{-1}u_k satisfies every claim",
            tm.claims.all_green() && explicit,
            Some(format!("ℓ = {l}")),
        );
    }
    Ok(())
}

fn smith_facts(facts: &mut Facts, gwa: &Gwa, s: &[FieldElement]) -> Result<(), CatalogError> {
    let f = gwa.field().clone();
    let ring = gwa.ring();
    let r = smith_r(&f, s)?;
    let telescoping = (-4..=4).all(|x| {
        let x = f.from_int(x);
        &eval_poly(&r, &(&x + &f.one())) - &eval_poly(&r, &x) == &f.from_int(2) * &eval_poly(s, &x)
    }) && r[0].is_zero();
    facts.push(
        "telescoping",
        "s(x) = ½(r(x+1) − r(x)) with r(0) = 0",
        telescoping,
        None,
    );
    let (h, c) = (ring.var(0), ring.var(1));
    let (x, y) = (gwa.x(0), gwa.y(0));
    let r_h1 = poly_in(ring, 0, &r).substitute(&[&h + &ring.one(), c.clone()], &[None, None]);
    let casimir = &(&y * &x).scale(&f.from_int(2)) + &gwa.from_ring(r_h1);
    let cc = gwa.from_ring(c.clone());
    facts.push(
        "casimir",
        "2fe + r(h+1) = c and c commutes with e, f and h",
        casimir == cc && is_central(&cc),
        None,
    );
    let hh = gwa.from_ring(h.clone());
    let rel = hh.commutator(&x) == x
        && hh.commutator(&y) == -y.clone()
        && x.commutator(&y) == gwa.from_ring(poly_in(ring, 0, s));
    facts.push(
        "relations",
        "he − eh = e, hf − fh = −f, ef − fe = s(h)",
        rel,
        None,
    );
    let theta = f.from_int(3);
    let mut gens = vec![&c - &ring.scalar(theta)];
    let p = f.characteristic();
    if p != 0 {
        gens.push(&(&h.pow(p as u32) - &h) - &ring.one());
    }
    let j = PhiStableIdeal::from_generators(ring, gens, gwa.phis())?;
    let central = is_centrally_generated(gwa, &j)?;
    facts.push(
        "centrally generated",
        format!("{j} = R(J ∩ Z)"),
        central.is_some(),
        central.map(|g| {
            g.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        }),
    );
    Ok(())
}

fn quantum_smith_facts(
    facts: &mut Facts,
    gwa: &Gwa,
    m: u32,
    q: &FieldElement,
) -> Result<(), CatalogError> {
    let f = gwa.field().clone();
    let ring = gwa.ring();
    let (k, c) = (ring.var(0), ring.var(1));
    let (x, y) = (gwa.x(0), gwa.y(0));
    let kk = gwa.from_ring(k.clone());
    let q2 = q.pow(2)?;
    let mi = m as i64;
    let rhs = (&k.pow(m) - &k.pow_i(-mi)?).scale(&(q - &q.inv()?).inv()?);
    let rel = &kk * &x == (&x * &kk).scale(&q2)
        && &kk * &y == (&y * &kk).scale(&q2.inv()?)
        && x.commutator(&y) == gwa.from_ring(rhs);
    facts.push(
        "relations",
        "KE = q²EK, KF = q^{-2}FK, EF − FE = (K^m − K^{-m})/(q − q^{-1})",
        rel,
        None,
    );
    facts.push(
        "casimir",
        "c is central",
        is_central(&gwa.from_ring(c.clone())),
        None,
    );
    let theta = f.one();
    let lambda = f.from_int(2);
    let mut gens = vec![&c - &ring.scalar(theta)];
    if let Some(l) = q2.root_of_unity_order() {
        let li = l as i64;
        gens.push(&k.pow(l as u32) - &ring.scalar(lambda.pow(li)?));
        gens.push(&k.pow_i(-li)? - &ring.scalar(lambda.pow(-li)?));
    }
    let j = PhiStableIdeal::from_generators(ring, gens, gwa.phis())?;
    let central = is_centrally_generated(gwa, &j)?;
    facts.push(
        "centrally generated",
        format!("{j} = R(J ∩ Z)"),
        central.is_some(),
        central.map(|g| {
            g.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        }),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn green(spec: FamilySpec) -> FactReport {
        let r = verify_family_facts(&spec, 3).unwrap();
        for fact in r.facts.iter().filter(|f| !f.holds) {
            eprintln!("FAILED {}: {} {:?}", fact.name, fact.statement, fact.detail);
        }
        assert!(r.all_green(), "{}", r.family);
        r
    }

    #[test]
    fn brute_force_over_f5() {
        let f = Field::prime(5).unwrap();
        let gwa = build_family(&FamilySpec::UnivariateAffine {
            alpha: f.from_int(2),
            beta: f.zero(),
        })
        .unwrap();
        let all = brute_force_stable_ideals(gwa.ring(), gwa.phis(), 4).unwrap();
        // t, t², t³, t⁴ and t⁴ − ξ for the four units ξ.
        assert_eq!(all.len(), 8);
    }

    #[test]
    fn family_suites_are_green() {
        let q = Field::rationals();
        green(FamilySpec::Weyl {
            field: q.clone(),
            n: 1,
        });
        green(FamilySpec::Weyl {
            field: q.clone(),
            n: 2,
        });
        green(FamilySpec::Heisenberg {
            field: q.clone(),
            n: 1,
        });
        green(FamilySpec::QuantumPlane { q: q.from_int(3) });
        green(FamilySpec::QuantumWeyl { q: q.from_int(3) });
        green(FamilySpec::Smith {
            field: q.clone(),
            s: vec![q.zero(), q.from_int(2)],
        });
        let f5 = Field::prime(5).unwrap();
        green(FamilySpec::Smith {
            field: f5.clone(),
            s: vec![f5.zero(), f5.from_int(2)],
        });
        green(FamilySpec::UnivariateAffine {
            alpha: f5.from_int(2),
            beta: f5.one(),
        });
        green(FamilySpec::UnivariateAffine {
            alpha: f5.one(),
            beta: f5.one(),
        });
        let c3 = Field::cyclotomic(3).unwrap();
        let r = green(FamilySpec::QuantumWeyl {
            q: c3.root_of_unity(3).unwrap(),
        });
        assert!(r.fact("root-of-unity module").is_some());
        green(FamilySpec::QuantumPlane {
            q: c3.root_of_unity(3).unwrap(),
        });
        let c6 = Field::cyclotomic(6).unwrap();
        green(FamilySpec::QuantumSmith {
            m: 1,
            q: c6.root_of_unity(6).unwrap(),
        });
        green(FamilySpec::Uqsl2 {
            q: c6.root_of_unity(6).unwrap(),
        });
    }

    #[test]
    fn generic_quantum_weyl_over_rational_functions() {
        let f = Field::rational_functions("q").unwrap();
        let r = green(FamilySpec::QuantumWeyl {
            q: f.generator().unwrap(),
        });
        assert!(r.fact("one-dimensional module").unwrap().holds);
    }
}
