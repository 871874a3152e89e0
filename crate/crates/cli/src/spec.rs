//! TOML metric files: the six components, parameters and a base point.

use std::collections::BTreeMap;

use quasihom_core::exactalg::rational::{fmt_pq, parse_rational};
use quasihom_core::exactalg::Rational;
use quasihom_core::families::FamilyParams;
use quasihom_core::geometry::{Metric, Point};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A rational written either as a TOML integer or as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    pub fn parse(&self) -> Result<Rational, CliError> {
        match self {
            RationalText::Int(n) => Ok(Rational::from_integer((*n).into())),
            RationalText::Text(t) => parse_rational(t).map_err(|e| CliError::Input(format!("invalid rational `{}`", e.0))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricTable {
    pub gxx: String,
    pub gxh: String,
    pub gxz: String,
    pub ghh: String,
    pub ghz: String,
    pub gzz: String,
    #[serde(default = "origin_text")]
    pub base_point: Vec<RationalText>,
}

fn origin_text() -> Vec<RationalText> {
    vec![RationalText::Int(0); 3]
}

/// Contents of a spec file: `[metric]` with the six upper-triangle entries in
/// the coordinates `(x, h, z)`, and `[params]` binding names to rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    pub metric: MetricTable,
    #[serde(default)]
    pub params: BTreeMap<String, RationalText>,
}

impl MetricSpec {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Input(format!("malformed spec: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    /// The family member `g_{C,D}` written with parameters `C` and `D`.
    pub fn family(p: &FamilyParams) -> Self {
        let s = |t: &str| t.to_string();
        let mut params = BTreeMap::new();
        params.insert(s("C"), RationalText::Text(fmt_pq(&p.c)));
        params.insert(s("D"), RationalText::Text(fmt_pq(&p.d)));
        MetricSpec {
            metric: MetricTable {
                gxx: s("1"),
                gxh: s("D*z"),
                gxz: s("0"),
                ghh: s("C*z^2"),
                ghz: s("1"),
                gzz: s("0"),
                base_point: vec![RationalText::Text(s("0/1")); 3],
            },
            params,
        }
    }

    pub fn params(&self) -> Result<BTreeMap<String, Rational>, CliError> {
        self.params.iter().map(|(k, v)| Ok((k.clone(), v.parse()?))).collect()
    }

    pub fn base_point(&self) -> Result<Point, CliError> {
        let b = &self.metric.base_point;
        if b.len() != 3 {
            return Err(CliError::Input(format!("base_point needs 3 coordinates, got {}", b.len())));
        }
        Ok([b[0].parse()?, b[1].parse()?, b[2].parse()?])
    }

    pub fn to_metric(&self) -> Result<Metric, CliError> {
        let m = &self.metric;
        let exprs = [
            m.gxx.as_str(),
            m.gxh.as_str(),
            m.gxz.as_str(),
            m.ghh.as_str(),
            m.ghz.as_str(),
            m.gzz.as_str(),
        ];
        Metric::parse(exprs, &self.params()?, self.base_point()?).map_err(|e| CliError::Input(e.to_string()))
    }
}
