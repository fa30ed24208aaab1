//! JSON configuration: an algebra (explicit or by family) and an optional module.

use crate::error::CliError;
use gwa_core::catalog::{build_family, FamilySpec, TheoremId, TheoremSpec};
use gwa_core::field::{Field, FieldElement, FieldKind};
use gwa_core::gwa::{parse_ring_element, parse_scalar, Gwa};
use gwa_core::ring::{Automorphism, Ring};
use serde::Deserialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldConfig {
    Name(String),
    Object {
        kind: String,
        p: Option<u64>,
        n: Option<u32>,
        var: Option<String>,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    pub vars: Vec<String>,
    #[serde(default)]
    pub laurent: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleConfig {
    #[serde(rename = "Q", alias = "q")]
    pub q: Option<Vec<String>>,
    pub zeta: Option<Vec<String>>,
    /// Builds the explicit module of a theorem instead of `R/Q`.
    pub theorem: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub field: Option<FieldConfig>,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub m: Option<u32>,
    pub q: Option<String>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub s: Option<String>,
    pub ring: Option<RingConfig>,
    /// Images of the ring variables, one list per automorphism.
    pub phi: Option<Vec<Vec<String>>>,
    pub t: Option<Vec<String>>,
    /// Named scalars usable in every expression.
    #[serde(default)]
    pub parameters: BTreeMap<String, String>,
    pub module: Option<ModuleConfig>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Config::from_json(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn from_json(text: &str) -> Result<Config, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn field(&self) -> Result<Field, CliError> {
        match &self.field {
            None => Ok(Field::rationals()),
            Some(FieldConfig::Name(s)) => parse_field(s),
            Some(FieldConfig::Object { kind, p, n, var }) => {
                let missing =
                    |what: &str| CliError::Config(format!("field kind {kind:?} needs {what:?}"));
                Ok(match kind.to_ascii_lowercase().as_str() {
                    "rationals" | "q" => Field::rationals(),
                    "prime" => Field::prime(p.ok_or_else(|| missing("p"))?)?,
                    "cyclotomic" => Field::cyclotomic(n.ok_or_else(|| missing("n"))?)?,
                    "rational_functions" => {
                        Field::rational_functions(var.as_deref().unwrap_or("q"))?
                    }
                    other => return Err(CliError::Config(format!("unknown field kind {other:?}"))),
                })
            }
        }
    }

    /// The configured algebra.
    pub fn algebra(&self) -> Result<Gwa, CliError> {
        if let Some(family) = self.family_spec()? {
            return Ok(build_family(&family)?);
        }
        let field = self.field()?;
        let ring_cfg = self
            .ring
            .as_ref()
            .ok_or_else(|| CliError::Config("either \"family\" or \"ring\" is required".into()))?;
        for l in &ring_cfg.laurent {
            if !ring_cfg.vars.contains(l) {
                return Err(CliError::Config(format!(
                    "laurent variable {l:?} is not in \"vars\""
                )));
            }
        }
        let flags = ring_cfg
            .vars
            .iter()
            .map(|v| ring_cfg.laurent.contains(v))
            .collect();
        let ring = Ring::new(field.clone(), ring_cfg.vars.clone(), flags)?;
        let params = self.scalar_parameters(&field)?;
        let phis_cfg = self
            .phi
            .as_ref()
            .ok_or_else(|| CliError::Config("\"phi\" is required".into()))?;
        let ts_cfg = self
            .t
            .as_ref()
            .ok_or_else(|| CliError::Config("\"t\" is required".into()))?;
        let mut phis = Vec::new();
        for (i, images) in phis_cfg.iter().enumerate() {
            if images.len() != ring.nvars() {
                return Err(CliError::Config(format!(
                    "phi[{i}] lists {} images for {} variables",
                    images.len(),
                    ring.nvars()
                )));
            }
            let imgs = images
                .iter()
                .enumerate()
                .map(|(j, s)| ring_expr(&ring, &params, s, &format!("phi[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()?;
            phis.push(Automorphism::new(&ring, imgs)?);
        }
        let ts = ts_cfg
            .iter()
            .enumerate()
            .map(|(i, s)| ring_expr(&ring, &params, s, &format!("t[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut gwa = Gwa::new(ring, phis, ts)?;
        for (k, v) in params {
            gwa = gwa.with_parameter(&k, v);
        }
        Ok(gwa)
    }

    fn scalar_parameters(&self, field: &Field) -> Result<BTreeMap<String, FieldElement>, CliError> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.parameters {
            let x = parse_scalar(field, &out, v)
                .map_err(|e| CliError::Config(format!("parameters.{k}: {e}")))?;
            out.insert(k.clone(), x);
        }
        Ok(out)
    }

    pub fn family_spec(&self) -> Result<Option<FamilySpec>, CliError> {
        let Some(name) = &self.family else {
            return Ok(None);
        };
        let field = self.field()?;
        let params = self.scalar_parameters(&field)?;
        let scalar = |what: &str,
                      v: &Option<String>,
                      default: Option<&str>|
         -> Result<FieldElement, CliError> {
            let text = v
                .as_deref()
                .or(default)
                .ok_or_else(|| CliError::Config(format!("family {name:?} needs {what:?}")))?;
            parse_scalar(&field, &params, text)
                .map_err(|e| CliError::Config(format!("{what}: {e}")))
        };
        let n = self.n.unwrap_or(1);
        let spec = match name.to_ascii_lowercase().replace('-', "_").as_str() {
            "weyl" => FamilySpec::Weyl { field, n },
            "heisenberg" => FamilySpec::Heisenberg { field, n },
            "quantum_plane" => FamilySpec::QuantumPlane {
                q: scalar("q", &self.q, None)?,
            },
            "quantum_weyl" => FamilySpec::QuantumWeyl {
                q: scalar("q", &self.q, None)?,
            },
            "affine" | "univariate_affine" => FamilySpec::UnivariateAffine {
                alpha: scalar("alpha", &self.alpha, None)?,
                beta: scalar("beta", &self.beta, Some("0"))?,
            },
            "smith" => {
                let s = self.s.as_deref().unwrap_or("2*h");
                FamilySpec::Smith {
                    s: coefficients_in_h(&field, s, "s")?,
                    field,
                }
            }
            "quantum_smith" => FamilySpec::QuantumSmith {
                m: self.m.unwrap_or(1),
                q: scalar("q", &self.q, None)?,
            },
            "uqsl2" => FamilySpec::Uqsl2 {
                q: scalar("q", &self.q, None)?,
            },
            other => return Err(CliError::Config(format!("unknown family {other:?}"))),
        };
        Ok(Some(spec))
    }
}

fn ring_expr(
    ring: &Ring,
    params: &BTreeMap<String, FieldElement>,
    text: &str,
    context: &str,
) -> Result<gwa_core::ring::RingElement, CliError> {
    parse_ring_element(ring, params, text).map_err(|e| CliError::Config(format!("{context}: {e}")))
}

/// `Q`, `F_p`/`Fp`/`GF(p)`, `Q(zetaN)`, `Q(q)`.
pub fn parse_field(text: &str) -> Result<Field, CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Config(format!("unrecognised field {text:?}"));
    if matches!(s.as_str(), "Q" | "QQ" | "rationals") {
        return Ok(Field::rationals());
    }
    let prime = s
        .strip_prefix("F_")
        .or_else(|| s.strip_prefix('F'))
        .or_else(|| s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')));
    if let Some(p) = prime {
        return Ok(Field::prime(p.parse().map_err(|_| bad())?)?);
    }
    if let Some(inner) = s.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
        if let Some(n) = inner
            .strip_prefix("zeta_")
            .or_else(|| inner.strip_prefix("zeta"))
        {
            return Ok(Field::cyclotomic(n.parse().map_err(|_| bad())?)?);
        }
        return Ok(Field::rational_functions(inner)?);
    }
    Err(bad())
}

/// Ascending coefficients of a polynomial in `h`.
pub fn coefficients_in_h(
    field: &Field,
    text: &str,
    context: &str,
) -> Result<Vec<FieldElement>, CliError> {
    let ring = Ring::polynomial(field.clone(), &["h"])?;
    let p = ring_expr(&ring, &BTreeMap::new(), text, context)?;
    let deg = p.degree().unwrap_or(0) as usize;
    let h = ring.var(0);
    Ok((0..=deg)
        .map(|k| p.coeff(h.pow(k as u32).leading().expect("monomial").0))
        .collect())
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One theorem instance from `key → value` text parameters; unspecified keys take defaults.
/// The field comes from `field`/`p`/`ell` if given, then from `base_field`, then from the theorem's default.
pub fn theorem_spec(
    id: TheoremId,
    raw: &BTreeMap<String, String>,
    base_field: Option<Field>,
) -> Result<TheoremSpec, CliError> {
    let known: &[&str] = match id {
        TheoremId::T8_3 => &["field", "alpha", "beta", "zeta", "n"],
        TheoremId::T8_5 => &["field", "ell", "alpha", "beta", "zeta", "theta"],
        TheoremId::T8_7 => &["p", "beta", "lambda", "zeta"],
        TheoremId::T8_9 => &["p", "lambda", "zeta"],
        TheoremId::T9 => &["p", "s", "theta", "lambda", "zeta"],
        TheoremId::T10 => &["ell", "m", "q", "theta", "lambda", "zeta"],
    };
    if let Some(k) = raw.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(CliError::Config(format!(
            "{id} takes parameters {}; got {k:?}",
            known.join(", ")
        )));
    }
    let get = |k: &str| raw.get(k).map(String::as_str);
    let int = |k: &str, default: u64| -> Result<u64, CliError> {
        get(k).map_or(Ok(default), |v| {
            v.parse()
                .map_err(|_| CliError::Config(format!("{k} must be a positive integer, got {v:?}")))
        })
    };
    let explicit = match (id, get("field"), get("p"), get("ell")) {
        (TheoremId::T8_3 | TheoremId::T8_5, Some(f), _, _) => Some(parse_field(f)?),
        (TheoremId::T8_5, None, _, Some(_)) => Some(Field::cyclotomic(int("ell", 3)? as u32)?),
        (TheoremId::T8_7 | TheoremId::T8_9 | TheoremId::T9, _, Some(_), _) => {
            Some(Field::prime(int("p", 3)?)?)
        }
        (TheoremId::T10, _, _, Some(_)) => Some(Field::cyclotomic(2 * int("ell", 3)? as u32)?),
        _ => None,
    };
    let field = match explicit.or(base_field) {
        Some(f) => f,
        None => match id {
            TheoremId::T8_3 => Field::rationals(),
            TheoremId::T8_5 => Field::cyclotomic(3)?,
            TheoremId::T8_7 | TheoremId::T8_9 | TheoremId::T9 => Field::prime(3)?,
            TheoremId::T10 => Field::cyclotomic(6)?,
        },
    };
    let ell = match (get("ell"), field.kind()) {
        (None, FieldKind::Cyclotomic(n)) if id == TheoremId::T10 && n % 2 == 0 => (*n / 2) as u64,
        (None, FieldKind::Cyclotomic(n)) if id == TheoremId::T8_5 => *n as u64,
        _ => int("ell", 3)?,
    };
    let sc = |k: &str, default: &str| -> Result<FieldElement, CliError> {
        let text = get(k).unwrap_or(default);
        parse_scalar(&field, &BTreeMap::new(), text)
            .map_err(|e| CliError::Config(format!("{k}: {e}")))
    };
    let zeta = sc("zeta", "1")?;
    Ok(match id {
        TheoremId::T8_3 => TheoremSpec::T8_3 {
            alpha: sc("alpha", "2")?,
            beta: sc("beta", "0")?,
            zeta,
            n: int("n", 1)? as u32,
        },
        TheoremId::T8_5 => {
            let alpha = match get("alpha") {
                Some(_) => sc("alpha", "")?,
                None => field.root_of_unity(ell)?,
            };
            let theta = match get("theta") {
                Some("none") => None,
                _ => Some(sc("theta", "1")?),
            };
            TheoremSpec::T8_5 {
                alpha,
                beta: sc("beta", "0")?,
                zeta,
                theta,
            }
        }
        TheoremId::T8_7 => TheoremSpec::T8_7 {
            beta: sc("beta", "1")?,
            lambda: sc("lambda", "0")?,
            zeta,
        },
        TheoremId::T8_9 => TheoremSpec::T8_9 {
            lambda: sc("lambda", "0")?,
            zeta,
        },
        TheoremId::T9 => TheoremSpec::T9 {
            s: coefficients_in_h(&field, get("s").unwrap_or("2*h"), "s")?,
            theta: sc("theta", "0")?,
            lambda: sc("lambda", "0")?,
            zeta,
        },
        TheoremId::T10 => {
            let q = match get("q") {
                Some(_) => sc("q", "")?,
                None => field.root_of_unity(2 * ell)?,
            };
            TheoremSpec::T10 {
                m: int("m", 1)? as u32,
                q,
                theta: sc("theta", "0")?,
                lambda: sc("lambda", "1")?,
                zeta,
            }
        }
    })
}

impl ModuleConfig {
    pub fn theorem(&self, base_field: Option<Field>) -> Result<Option<TheoremSpec>, CliError> {
        let Some(id) = &self.theorem else {
            return Ok(None);
        };
        let id: TheoremId = id.parse().map_err(CliError::Config)?;
        let raw = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), value_text(v)))
            .collect();
        theorem_spec(id, &raw, base_field).map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_names() {
        assert_eq!(parse_field("Q").unwrap(), Field::rationals());
        assert_eq!(parse_field("F_5").unwrap(), Field::prime(5).unwrap());
        assert_eq!(parse_field("GF(7)").unwrap(), Field::prime(7).unwrap());
        assert_eq!(
            parse_field("Q(zeta6)").unwrap(),
            Field::cyclotomic(6).unwrap()
        );
        assert_eq!(
            parse_field("Q(q)").unwrap(),
            Field::rational_functions("q").unwrap()
        );
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn explicit_and_family_configs_agree() {
        let explicit =
            Config::from_json(r#"{"field":"Q","ring":{"vars":["t"]},"phi":[["t-1"]],"t":["t"]}"#)
                .unwrap()
                .algebra()
                .unwrap();
        let family = Config::from_json(r#"{"family":"weyl"}"#)
            .unwrap()
            .algebra()
            .unwrap();
        assert_eq!(explicit.phis(), family.phis());
        assert_eq!(explicit.ts(), family.ts());
    }

    #[test]
    fn config_errors_carry_positions() {
        let e = Config::from_json("{\"field\": \"Q\",\n \"rnig\": 1}").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = Config::from_json(r#"{"ring":{"vars":["t"]},"phi":[["t-"]],"t":["t"]}"#)
            .unwrap()
            .algebra()
            .unwrap_err();
        assert!(e.to_string().contains("phi[0][0]"), "{e}");
    }

    #[test]
    fn theorem_defaults() {
        let spec = theorem_spec(TheoremId::T9, &BTreeMap::new(), None).unwrap();
        match spec {
            TheoremSpec::T9 { s, .. } => assert_eq!(s.len(), 2),
            other => panic!("{other:?}"),
        }
        let raw = BTreeMap::from([("p".to_string(), "6".to_string())]);
        assert!(theorem_spec(TheoremId::T8_9, &raw, None).is_err());
    }

    #[test]
    fn theorem_field_precedence() {
        let f5 = Field::prime(5).unwrap();
        let spec = theorem_spec(TheoremId::T9, &BTreeMap::new(), Some(f5.clone())).unwrap();
        assert_eq!(spec.field(), f5);
        let raw = BTreeMap::from([("p".to_string(), "7".to_string())]);
        let spec = theorem_spec(TheoremId::T9, &raw, Some(f5)).unwrap();
        assert_eq!(spec.field(), Field::prime(7).unwrap());
        let spec = theorem_spec(
            TheoremId::T10,
            &BTreeMap::new(),
            Some(Field::cyclotomic(10).unwrap()),
        )
        .unwrap();
        match spec {
            TheoremSpec::T10 { q, .. } => assert_eq!(q.root_of_unity_order(), Some(10)),
            other => panic!("{other:?}"),
        }
    }
}
