//! Job configuration: a JSON file, command-line flags, or both (flags win).

use std::path::Path;

use cartesian_lcd::code::CartesianSpec;
use cartesian_lcd::field::{FieldElement, FieldSpec};
use cartesian_lcd::lcd::CartesianScalars;
use cartesian_lcd::mpoly::CartesianSet;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A validation failure naming the offending field.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(field: &str, msg: impl std::fmt::Display) -> ConfigError {
    ConfigError(format!("{field}: {msg}"))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ScalarsConfig {
    /// `"ones"`.
    Named(String),
    List(Vec<Value>),
    Product {
        product: Vec<Vec<Value>>,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct JobConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalars: Option<ScalarsConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_range: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad("--config", format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| bad("--config", e))
    }

    /// Overlay `other` on top of `self`.
    pub fn merged(mut self, other: JobConfig) -> Self {
        self.field = other.field.or(self.field);
        self.components = other.components.or(self.components);
        self.scalars = other.scalars.or(self.scalars);
        self.k = other.k.or(self.k);
        self.k_range = other.k_range.or(self.k_range);
        self.seed = other.seed.or(self.seed);
        self.budget = other.budget.or(self.budget);
        self
    }

    pub fn field(&self) -> Result<FieldSpec, ConfigError> {
        self.field
            .ok_or_else(|| bad("field", "missing (use --field)"))
    }

    pub fn set(&self) -> Result<CartesianSet, ConfigError> {
        let field = self.field()?;
        let comps = self
            .components
            .as_ref()
            .ok_or_else(|| bad("components", "missing (use --set)"))?;
        let comps = comps
            .iter()
            .map(|c| elements(field, c, "components"))
            .collect::<Result<Vec<_>, _>>()?;
        CartesianSet::new(comps).map_err(|e| bad("components", e))
    }

    pub fn scalars_for(&self, set: &CartesianSet) -> Result<Vec<FieldElement>, ConfigError> {
        let field = set.field();
        match self.scalars.as_ref() {
            None => Ok(vec![field.one(); set.len()]),
            Some(ScalarsConfig::Named(s)) if s == "ones" => Ok(vec![field.one(); set.len()]),
            Some(ScalarsConfig::Named(s)) => Err(bad("scalars", format!("unknown value {s:?}"))),
            Some(ScalarsConfig::List(v)) => elements(field, v, "scalars"),
            Some(ScalarsConfig::Product { product }) => {
                if product.len() != set.nvars() {
                    return Err(bad(
                        "scalars",
                        format!("{} factors for {} components", product.len(), set.nvars()),
                    ));
                }
                let factors = product
                    .iter()
                    .map(|c| elements(field, c, "scalars"))
                    .collect::<Result<Vec<_>, _>>()?;
                for (i, (f, c)) in factors.iter().zip(set.components()).enumerate() {
                    if f.len() != c.len() {
                        return Err(bad(
                            "scalars",
                            format!(
                                "factor {} has {} entries for {} points",
                                i + 1,
                                f.len(),
                                c.len()
                            ),
                        ));
                    }
                }
                Ok(CartesianScalars::new(factors)
                    .map_err(|e| bad("scalars", e))?
                    .product())
            }
        }
    }

    pub fn k(&self) -> Result<usize, ConfigError> {
        self.k.ok_or_else(|| bad("k", "missing (use --k)"))
    }

    /// `k` when given, otherwise `k_range`.
    pub fn ks(&self) -> Result<Vec<usize>, ConfigError> {
        match (self.k, self.k_range) {
            (Some(k), _) => Ok(vec![k]),
            (None, Some((lo, hi))) => Ok((lo..=hi).collect()),
            (None, None) => Err(bad("k", "missing (use --k or --k-range)")),
        }
    }

    pub fn spec_with_k(&self, k: usize) -> Result<CartesianSpec, ConfigError> {
        let set = self.set()?;
        let scalars = self.scalars_for(&set)?;
        CartesianSpec::new(set, scalars, k).map_err(|e| bad("spec", e))
    }

    pub fn spec(&self) -> Result<CartesianSpec, ConfigError> {
        self.spec_with_k(self.k()?)
    }
}

fn elements(
    field: FieldSpec,
    values: &[Value],
    name: &str,
) -> Result<Vec<FieldElement>, ConfigError> {
    values
        .iter()
        .map(|v| field.element_from_json(v).map_err(|e| bad(name, e)))
        .collect()
}

/// `"7"` or `"2^3"`, with an optional monic modulus (low to high).
pub fn parse_field(text: &str, modulus: Option<&str>) -> Result<FieldSpec, ConfigError> {
    let (p, e) = match text.split_once('^') {
        Some((p, e)) => (p.trim(), e.trim()),
        None => (text.trim(), "1"),
    };
    let p: u64 = p
        .parse()
        .map_err(|_| bad("--field", format!("bad characteristic {p:?}")))?;
    let e: u32 = e
        .parse()
        .map_err(|_| bad("--field", format!("bad exponent {e:?}")))?;
    match modulus {
        Some(m) => {
            let coeffs = parse_list(m, "--modulus")?
                .into_iter()
                .map(|c| u32::try_from(c).map_err(|_| bad("--modulus", "coefficient too large")))
                .collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() != e as usize + 1 {
                return Err(bad(
                    "--modulus",
                    format!(
                        "degree {} does not match exponent {e}",
                        coeffs.len().saturating_sub(1)
                    ),
                ));
            }
            FieldSpec::extension(p, &coeffs).map_err(|err| bad("--modulus", err))
        }
        None if e == 1 => FieldSpec::prime(p).map_err(|err| bad("--field", err)),
        None => FieldSpec::new(p, e).map_err(|err| bad("--field", err)),
    }
}

fn parse_list(text: &str, name: &str) -> Result<Vec<u64>, ConfigError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| bad(name, format!("bad integer {:?}", s.trim())))
        })
        .collect()
}

fn json_list(text: &str, name: &str) -> Result<Vec<Value>, ConfigError> {
    Ok(parse_list(text, name)?
        .into_iter()
        .map(Value::from)
        .collect())
}

/// `"0,1,2;0,1"`: components separated by semicolons.
pub fn parse_set(text: &str) -> Result<Vec<Vec<Value>>, ConfigError> {
    text.split(';').map(|c| json_list(c, "--set")).collect()
}

/// `ones`, `1,1,2` or `prod:1,2;1,3`.
pub fn parse_scalars(text: &str) -> Result<ScalarsConfig, ConfigError> {
    let text = text.trim();
    if text == "ones" {
        return Ok(ScalarsConfig::Named(text.to_string()));
    }
    if let Some(rest) = text.strip_prefix("prod:") {
        let product = rest
            .split(';')
            .map(|c| json_list(c, "--scalars"))
            .collect::<Result<_, _>>()?;
        return Ok(ScalarsConfig::Product { product });
    }
    Ok(ScalarsConfig::List(json_list(text, "--scalars")?))
}

/// `"a..b"` (inclusive).
pub fn parse_range(text: &str, name: &str) -> Result<(usize, usize), ConfigError> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| bad(name, format!("expected a..b, got {text:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .trim_start_matches('=')
            .parse::<usize>()
            .map_err(|_| bad(name, format!("bad bound {s:?}")))
    };
    Ok((parse(a)?, parse(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_flags() {
        assert_eq!(
            parse_field("7", None).unwrap(),
            FieldSpec::prime(7).unwrap()
        );
        assert_eq!(parse_field("2^2", None).unwrap().order(), 4);
        let f = parse_field("2^3", Some("1,1,0,1")).unwrap();
        assert_eq!(f.modulus(), Some(vec![1, 1, 0, 1]));
        assert!(parse_field("6", None).unwrap_err().0.starts_with("--field"));
        assert!(parse_field("2^3", Some("1,1,1"))
            .unwrap_err()
            .0
            .starts_with("--modulus"));
    }

    #[test]
    fn set_and_scalars() {
        let mut cfg = JobConfig {
            field: Some(FieldSpec::prime(7).unwrap()),
            components: Some(parse_set("0,1,2;3,4").unwrap()),
            scalars: Some(parse_scalars("prod:1,2,3;1,5").unwrap()),
            k: Some(2),
            ..Default::default()
        };
        let spec = cfg.spec().unwrap();
        assert_eq!(spec.length(), 6);
        let ints: Vec<u64> = spec.scalars().iter().map(|x| x.to_int()).collect();
        assert_eq!(ints, vec![1, 5, 2, 3, 3, 1]);
        cfg.scalars = Some(parse_scalars("1,2").unwrap());
        assert!(cfg.spec().unwrap_err().0.starts_with("spec"));
        cfg.scalars = Some(parse_scalars("zeros").unwrap_or(ScalarsConfig::Named("zeros".into())));
        assert!(cfg.spec().unwrap_err().0.starts_with("scalars"));
        assert!(parse_set("0,x").unwrap_err().0.starts_with("--set"));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..8", "--k-range").unwrap(), (1, 8));
        assert_eq!(parse_range("2..=3", "--k-range").unwrap(), (2, 3));
        assert!(parse_range("3", "--k-range").is_err());
    }

    #[test]
    fn config_round_trip() {
        let cfg = JobConfig {
            field: Some(FieldSpec::prime(13).unwrap()),
            components: Some(parse_set("0,2,3").unwrap()),
            scalars: Some(parse_scalars("ones").unwrap()),
            k_range: Some((1, 2)),
            ..Default::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        let back: JobConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }
}
