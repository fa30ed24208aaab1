use crate::config::{theorem_spec, Config};
use crate::error::{CliError, ExitCode};
use crate::{require_config, Cli, Command, IdealsAction, ModuleAction};
use gwa_core::catalog::{
    build_theorem_module, default_grid, verify_family_facts, ClaimsReport, TheoremId, TheoremModule,
};
use gwa_core::field::FieldElement;
use gwa_core::gwa::{
    center_generators, is_central, parse_ring_element, parse_scalar, Gwa, GwaElement,
};
use gwa_core::ideals::{
    classify_univariate, is_phi_stable, phi_stable_closure, shift_regime_description, Ideal,
    IdealError, PhiStableIdeal, UnivariateRegime,
};
use gwa_core::ring::RingElement;
use gwa_core::whittaker::{
    matrix_json, Realization, SimpleCertificate, Simplicity, WhittakerModule, WhittakerType,
};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write;

/// Result of a command: JSON payload, human text and exit code.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: ExitCode,
    /// Message for stderr when `code` is not `Ok`.
    pub failure: Option<String>,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output {
            json,
            text,
            code: ExitCode::Ok,
            failure: None,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Normalize { expression } => {
            normalize(&require_config(cli)?.algebra()?, expression)
        }
        Command::Ideals { action } => ideals(cli, &require_config(cli)?.algebra()?, action),
        Command::Module { q, zeta, action } => {
            let cfg = require_config(cli)?;
            let (module, theorem) = module_from(cli, &cfg, q.as_deref(), zeta.as_deref())?;
            module_action(cli, &module, theorem.as_ref(), action)
        }
        Command::Verify { theorem, params } => verify(cli, theorem, params),
        Command::Center => center(cli, &require_config(cli)?.algebra()?),
        Command::Facts => facts(cli, &require_config(cli)?),
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn parse_element(gwa: &Gwa, text: &str) -> Result<GwaElement, CliError> {
    gwa.parse(text)
        .map_err(|e| CliError::parse(format!("{text:?}"), e))
}

fn parse_ring(gwa: &Gwa, text: &str) -> Result<RingElement, CliError> {
    parse_ring_element(gwa.ring(), gwa.parameters(), text)
        .map_err(|e| CliError::parse(format!("{text:?}"), e))
}

fn parse_scalars(gwa: &Gwa, texts: &[String]) -> Result<Vec<FieldElement>, CliError> {
    texts
        .iter()
        .map(|t| {
            parse_scalar(gwa.field(), gwa.parameters(), t)
                .map_err(|e| CliError::parse(format!("{t:?}"), e))
        })
        .collect()
}

fn terms_json(a: &GwaElement) -> Value {
    Value::Array(
        a.terms()
            .map(|(alpha, r)| json!({ "alpha": alpha, "coefficient": r.to_string() }))
            .collect(),
    )
}

fn normalize(gwa: &Gwa, expression: &str) -> Result<Output, CliError> {
    let a = parse_element(gwa, expression)?;
    let nf = a.to_string();
    Ok(Output::ok(
        json!({ "input": expression, "normal_form": nf, "terms": terms_json(&a) }),
        format!("{nf}\n"),
    ))
}

fn ideal_text(g: &RingElement) -> String {
    format!("({g})")
}

fn ideals(cli: &Cli, gwa: &Gwa, action: &IdealsAction) -> Result<Output, CliError> {
    let ring = gwa.ring();
    match action {
        IdealsAction::Classify => {
            if gwa.rank() != 1 || ring.nvars() != 1 || ring.has_laurent() {
                return Err(CliError::UnsupportedRing(
                    "classification needs R = F[t] with one automorphism".into(),
                ));
            }
            let phi = gwa.phi(0);
            match classify_univariate(phi, cli.degree) {
                Err(IdealError::AlphaIsOne) => {
                    let d = shift_regime_description(phi)?;
                    Ok(Output::ok(
                        json!({ "regime": "shift", "description": d }),
                        format!("{d}\n"),
                    ))
                }
                Err(e) => Err(e.into()),
                Ok(c) => {
                    let regime = match c.regime {
                        UnivariateRegime::NotRootOfUnity => json!("not_root_of_unity"),
                        UnivariateRegime::RootOfUnity { order } => {
                            json!({ "root_of_unity": order })
                        }
                    };
                    let listed: Vec<String> = c.listed.iter().map(ideal_text).collect();
                    let maximal: Vec<String> = c.maximal.iter().map(ideal_text).collect();
                    let mut all = vec!["(0)".to_string(), "(1)".to_string()];
                    all.extend(listed.iter().cloned());
                    let mut text = format!("t~ = {}\nfamily: {}\n", c.t_tilde, c.family);
                    writeln!(
                        text,
                        "ideals of degree <= {}: {}",
                        c.degree_bound,
                        all.join(", ")
                    )
                    .ok();
                    writeln!(
                        text,
                        "maximal: {} ({})",
                        maximal.join(", "),
                        c.maximal_description
                    )
                    .ok();
                    if !c.listing_complete {
                        writeln!(text, "listing is not exhaustive over this field").ok();
                    }
                    Ok(Output::ok(
                        json!({
                            "t_tilde": c.t_tilde.to_string(),
                            "regime": regime,
                            "family": c.family,
                            "ideals": all,
                            "listed": listed,
                            "listing_complete": c.listing_complete,
                            "maximal": maximal,
                            "maximal_description": c.maximal_description,
                            "degree_bound": c.degree_bound,
                        }),
                        text,
                    ))
                }
            }
        }
        IdealsAction::StableCheck { generators } => {
            let gens = generators
                .iter()
                .map(|g| parse_ring(gwa, g))
                .collect::<Result<Vec<_>, _>>()?;
            let ideal = Ideal::new(ring, gens.clone())?;
            let stable = is_phi_stable(&ideal, gwa.phis());
            let mut witness = None;
            'outer: for g in &gens {
                for (i, p) in gwa.phis().iter().enumerate() {
                    for (label, img) in [("", p.apply(g)), ("^-1", p.apply_inverse(g))] {
                        if !ideal.contains(&img) {
                            witness = Some(format!(
                                "phi_{}{label}({g}) = {img} is not in {ideal}",
                                i + 1
                            ));
                            break 'outer;
                        }
                    }
                }
            }
            let certificates: Vec<Vec<Vec<String>>> = if stable {
                PhiStableIdeal::new(ideal.clone(), gwa.phis())?
                    .stability_certificates()
                    .iter()
                    .map(|per_phi| per_phi.iter().map(|c| strings(&c.cofactors)).collect())
                    .collect()
            } else {
                Vec::new()
            };
            let text = match &witness {
                None => format!("{ideal} is phi-stable\n"),
                Some(w) => format!("not phi-stable: {w}\n"),
            };
            Ok(Output::ok(
                json!({ "ideal": ideal.to_string(), "stable": stable, "witness": witness, "certificates": certificates }),
                text,
            ))
        }
        IdealsAction::Closure { generators } => {
            let gens = generators
                .iter()
                .map(|g| parse_ring(gwa, g))
                .collect::<Result<Vec<_>, _>>()?;
            let c = phi_stable_closure(ring, gens, gwa.phis())?;
            Ok(Output::ok(
                json!({ "closure": c.to_string(), "generators": strings(&c.display_generators()), "unit": c.is_unit() }),
                format!("{c}\n"),
            ))
        }
    }
}

fn module_from(
    cli: &Cli,
    cfg: &Config,
    q_flag: Option<&[String]>,
    zeta_flag: Option<&[String]>,
) -> Result<(WhittakerModule, Option<TheoremModule>), CliError> {
    let mcfg = cfg.module.as_ref();
    let base_field = cfg.field.is_some().then(|| cfg.field()).transpose()?;
    if let Some(spec) = mcfg.map(|m| m.theorem(base_field)).transpose()?.flatten() {
        if q_flag.is_some() || zeta_flag.is_some() {
            return Err(CliError::Config(
                "--q/--zeta cannot be combined with a theorem module".into(),
            ));
        }
        let tm = build_theorem_module(&spec, cli.degree, cli.seed)?;
        return Ok((tm.module.clone(), Some(tm)));
    }
    let gwa = cfg.algebra()?;
    let q = match q_flag {
        Some(gens) => gens
            .iter()
            .map(|g| parse_ring(&gwa, g))
            .collect::<Result<Vec<_>, _>>()?,
        None => mcfg
            .and_then(|m| m.q.as_ref())
            .map(|gens| {
                gens.iter()
                    .enumerate()
                    .map(|(i, g)| {
                        parse_ring_element(gwa.ring(), gwa.parameters(), g)
                            .map_err(|e| CliError::Config(format!("module.Q[{i}]: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?
            .unwrap_or_default(),
    };
    let zeta = match zeta_flag {
        Some(z) => parse_scalars(&gwa, z)?,
        None => match mcfg.and_then(|m| m.zeta.as_ref()) {
            Some(z) => {
                parse_scalars(&gwa, z).map_err(|e| CliError::Config(format!("module.zeta: {e}")))?
            }
            None => vec![gwa.field().one(); gwa.rank()],
        },
    };
    let q = PhiStableIdeal::from_generators(gwa.ring(), q, gwa.phis())?;
    let module = WhittakerModule::build(&gwa, q, WhittakerType::new(zeta)?)?;
    Ok((module, None))
}

fn vector_json(v: &[FieldElement]) -> Value {
    json!(strings(v))
}

fn module_action(
    cli: &Cli,
    module: &WhittakerModule,
    theorem: Option<&TheoremModule>,
    action: &ModuleAction,
) -> Result<Output, CliError> {
    let gwa = module.gwa();
    let matrix = matches!(module.realization(), Realization::Matrix(_));
    match action {
        ModuleAction::Build => {
            let mut j = module.to_json();
            let mut text = format!("Q = {}\n", module.q());
            match module.dimension() {
                Some(d) => writeln!(text, "dimension {d}").ok(),
                None => writeln!(text, "infinite-dimensional (residues of R/Q)").ok(),
            };
            if matrix {
                let rel = module.relation_checks()?;
                j["relations"] = json!(rel
                    .iter()
                    .map(|c| json!({ "relation": c.name, "holds": c.holds }))
                    .collect::<Vec<_>>());
                let bad = rel.iter().filter(|c| !c.holds).count();
                writeln!(text, "relations: {} checked, {bad} failing", rel.len()).ok();
                let m = module.matrix_model()?;
                for (name, mat) in gwa.ring().vars().iter().zip(&m.ring_mats) {
                    writeln!(text, "{name} = {}", matrix_json(mat)).ok();
                }
                for (i, (x, y)) in m.xs.iter().zip(&m.ys).enumerate() {
                    writeln!(text, "{} = {}", gwa.generator_name(i, true), matrix_json(x)).ok();
                    writeln!(
                        text,
                        "{} = {}",
                        gwa.generator_name(i, false),
                        matrix_json(y)
                    )
                    .ok();
                }
            }
            if let Some(tm) = theorem {
                j["claims"] = tm.claims.to_json();
                text.push_str(&claims_text(&tm.claims));
            }
            Ok(Output::ok(j, text))
        }
        ModuleAction::Act { expression } => {
            let a = parse_element(gwa, expression)?;
            if matrix {
                let m = module.act_matrix(&a)?;
                let mj = matrix_json(&m);
                Ok(Output::ok(
                    json!({ "element": a.to_string(), "matrix": mj }),
                    format!("{mj}\n"),
                ))
            } else {
                let r = module.act_on_w_residue(&a)?;
                Ok(Output::ok(
                    json!({ "element": a.to_string(), "a.w": r.to_string() }),
                    format!("{r}\n"),
                ))
            }
        }
        ModuleAction::WhittakerVectors { eta } => {
            let eta = match eta {
                Some(e) => parse_scalars(gwa, e)?,
                None => module.zeta().values().to_vec(),
            };
            let wv = module.whittaker_vectors(&eta, cli.degree)?;
            let mut text = format!(
                "dimension {}{}\n",
                wv.dimension,
                if wv.exact { "" } else { " (truncated)" }
            );
            for r in &wv.residues {
                writeln!(text, "  {r}").ok();
            }
            writeln!(text, "routes agree: {}", wv.routes_agree).ok();
            let code = if wv.routes_agree {
                ExitCode::Ok
            } else {
                ExitCode::Internal
            };
            Ok(Output {
                json: json!({
                    "eta": strings(&eta),
                    "dimension": wv.dimension,
                    "vectors": wv.vectors.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
                    "residues": strings(&wv.residues),
                    "routes_agree": wv.routes_agree,
                    "exact": wv.exact,
                }),
                text,
                code,
                failure: (!wv.routes_agree)
                    .then(|| "the two Whittaker-vector computations disagree".to_string()),
            })
        }
        ModuleAction::AnnW {
            expression: Some(e),
        } => {
            let a = parse_element(gwa, e)?;
            let member = module.ann_w_member(&a)?;
            Ok(Output::ok(
                json!({ "element": a.to_string(), "member": member }),
                format!("{member}\n"),
            ))
        }
        ModuleAction::AnnW { expression: None } => {
            let t = module.ann_w_truncated(cli.degree);
            let gens = strings(&module.ann_w_generators());
            let text = format!(
                "Ann_A(w) = A({}) up to degree {}: {} (kernel {}, span {}, {} monomials)\n",
                gens.join(", "),
                t.degree,
                if t.equal { "equal" } else { "NOT equal" },
                t.kernel_dim,
                t.span_dim,
                t.monomials
            );
            Ok(Output {
                json: json!({
                    "generators": gens,
                    "degree": t.degree,
                    "monomials": t.monomials,
                    "kernel_dim": t.kernel_dim,
                    "span_dim": t.span_dim,
                    "extra_degree": t.extra_degree,
                    "equal": t.equal,
                }),
                text,
                code: if t.equal {
                    ExitCode::Ok
                } else {
                    ExitCode::RedClaim
                },
                failure: (!t.equal).then(|| "truncated annihilator equality fails".to_string()),
            })
        }
        ModuleAction::Simple => {
            let verdict = module.is_simple(cli.seed);
            let mut j = json!({ "verdict": verdict.label() });
            match &verdict {
                Simplicity::Simple(SimpleCertificate::Burnside { algebra_dimension }) => {
                    j["certificate"] =
                        json!({ "burnside": { "algebra_dimension": algebra_dimension } });
                }
                Simplicity::Simple(SimpleCertificate::Norton { theta }) => {
                    j["certificate"] = json!({ "norton": { "theta": matrix_json(theta) } });
                }
                Simplicity::NotSimple { submodule } => {
                    j["submodule"] =
                        json!(submodule.iter().map(|v| vector_json(v)).collect::<Vec<_>>());
                }
                Simplicity::Inconclusive { reason } => j["reason"] = json!(reason),
            }
            Ok(Output::ok(j, format!("{}\n", verdict.label())))
        }
        ModuleAction::Endo => {
            let e = module.endo_ring()?;
            let text = format!(
                "dim End_A(V) = {}; equals pi(S/Q): {}\n",
                e.dimension, e.agree
            );
            Ok(Output {
                json: json!({
                    "dimension": e.dimension,
                    "agree": e.agree,
                    "commutant": e.commutant.iter().map(matrix_json).collect::<Vec<_>>(),
                    "s_over_q": strings(&e.s_over_q),
                }),
                text,
                code: if e.agree {
                    ExitCode::Ok
                } else {
                    ExitCode::Internal
                },
                failure: (!e.agree).then(|| "commutant and pi(S/Q) differ".to_string()),
            })
        }
    }
}

fn claims_text(r: &ClaimsReport) -> String {
    let params: Vec<String> = r
        .parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let mut text = format!(
        "[{}] {} {}\n",
        if r.all_green() { "green" } else { "RED" },
        r.theorem,
        params.join(" ")
    );
    for c in r.failures() {
        writeln!(
            text,
            "    failed {}: {}{}",
            c.name,
            c.statement,
            c.detail
                .as_ref()
                .map_or(String::new(), |d| format!(" ({d})"))
        )
        .ok();
    }
    text
}

/// Cartesian product of `key=v1,v2` lists.
fn parameter_grid(params: &[String]) -> Result<Vec<BTreeMap<String, String>>, CliError> {
    let mut lists: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--param expects KEY=VALUES, got {p:?}")))?;
        lists
            .entry(k.trim().to_string())
            .or_default()
            .extend(v.split(',').map(|s| s.trim().to_string()));
    }
    let mut grid = vec![BTreeMap::new()];
    for (k, vs) in lists {
        grid = grid
            .into_iter()
            .flat_map(|point| {
                let k = &k;
                vs.iter().map(move |v| {
                    let mut p = point.clone();
                    p.insert(k.clone(), v.clone());
                    p
                })
            })
            .collect();
    }
    Ok(grid)
}

fn verify(cli: &Cli, theorem: &str, params: &[String]) -> Result<Output, CliError> {
    let id: TheoremId = theorem.parse().map_err(CliError::Config)?;
    let specs = if params.is_empty() {
        default_grid(id)
    } else {
        parameter_grid(params)?
            .iter()
            .map(|p| theorem_spec(id, p, None))
            .collect::<Result<Vec<_>, _>>()?
    };
    let mut reports = Vec::new();
    for spec in &specs {
        reports.push(build_theorem_module(spec, cli.degree, cli.seed)?.claims);
    }
    let red = reports.iter().filter(|r| !r.all_green()).count();
    let text: String = reports.iter().map(claims_text).collect();
    let text = format!(
        "{text}{} of {} parameter points green\n",
        reports.len() - red,
        reports.len()
    );
    Ok(Output {
        json: json!({
            "theorem": id.as_str(),
            "status": if red == 0 { "green" } else { "red" },
            "points": reports.iter().map(ClaimsReport::to_json).collect::<Vec<_>>(),
        }),
        text,
        code: if red == 0 {
            ExitCode::Ok
        } else {
            ExitCode::RedClaim
        },
        failure: (red > 0).then(|| format!("{red} parameter point(s) with failing claims")),
    })
}

fn center(cli: &Cli, gwa: &Gwa) -> Result<Output, CliError> {
    let c = center_generators(gwa, cli.degree);
    let central: Vec<bool> = c.elements.iter().map(is_central).collect();
    let all = central.iter().all(|&b| b);
    let mut text = String::new();
    for (z, ok) in c.elements.iter().zip(&central) {
        writeln!(text, "{z}{}", if *ok { "" } else { "  (NOT central)" }).ok();
    }
    if c.elements.is_empty() {
        writeln!(text, "only scalars").ok();
    }
    if !c.complete {
        writeln!(
            text,
            "search bounded by degree {}; the list may be incomplete",
            cli.degree
        )
        .ok();
    }
    Ok(Output {
        json: json!({
            "ring_generators": strings(&c.ring_generators),
            "lattice_generators": c.lattice_generators,
            "elements": strings(&c.elements),
            "complete": c.complete,
            "all_central": all,
        }),
        text,
        code: if all {
            ExitCode::Ok
        } else {
            ExitCode::Internal
        },
        failure: (!all).then(|| "a returned generator is not central".to_string()),
    })
}

fn facts(cli: &Cli, cfg: &Config) -> Result<Output, CliError> {
    let spec = cfg
        .family_spec()?
        .ok_or_else(|| CliError::Config("facts needs a \"family\" in the config".into()))?;
    let r = verify_family_facts(&spec, cli.degree)?;
    let mut text = format!("{}\n", r.family);
    for f in &r.facts {
        writeln!(
            text,
            "  [{}] {}: {}",
            if f.holds { "pass" } else { "FAIL" },
            f.name,
            f.statement
        )
        .ok();
    }
    let green = r.all_green();
    Ok(Output {
        json: r.to_json(),
        text,
        code: if green {
            ExitCode::Ok
        } else {
            ExitCode::RedClaim
        },
        failure: (!green).then(|| "some facts fail".to_string()),
    })
}
