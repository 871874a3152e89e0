//! Report assembly. Struct field order fixes the JSON key order.

use quasihom_core::cartan::{self, adapted_frame, omega_of_killing};
use quasihom_core::exactalg::rational::{fmt_pq, int, rat};
use quasihom_core::exactalg::{Rate, RatFunc, Rational};
use quasihom_core::families::{self, FamilyParams, GeometryClass};
use quasihom_core::geometry::{self, Metric, Point};
use quasihom_core::killing::{self, KillingBasis, KillingError, VectorField};
use quasihom_core::liealg::classify_o21_element;
use serde::Serialize;
use serde_json::Value;

use crate::spec::MetricSpec;
use crate::CliError;

fn point_text(p: &Point) -> [String; 3] {
    [fmt_pq(&p[0]), fmt_pq(&p[1]), fmt_pq(&p[2])]
}

fn rate_text(r: &Rate) -> [String; 3] {
    point_text(&r.0)
}

fn ratfunc_text(f: &RatFunc) -> String {
    match f.as_constant() {
        Some(c) => fmt_pq(&c),
        None => f.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureSummary {
    /// `p/q`, or `none` when the curvature is not constant.
    pub constant_curvature: String,
    /// `(c1, c2, c3)` of `t³ − c1 t² + c2 t − c3` for the Ricci operator.
    pub ricci_char_poly: [String; 3],
    /// `(tr A, tr A², tr A³)`.
    pub scalar_invariants: [String; 3],
    pub invariants_constant: [bool; 3],
    /// `det g`; the metric volume factor is `√|det g|`.
    pub det_g: String,
}

pub fn curvature_summary(g: &Metric) -> CurvatureSummary {
    let r = geometry::riemann(g);
    let ricci = geometry::ricci_from(g, &r);
    let inv = geometry::invariants_of(&ricci);
    let cp = ricci.char_poly();
    CurvatureSummary {
        constant_curvature: geometry::constant_curvature_of(g, &r).map_or_else(|| "none".to_string(), |k| fmt_pq(&k)),
        ricci_char_poly: [ratfunc_text(&cp[0]), ratfunc_text(&cp[1]), ratfunc_text(&cp[2])],
        scalar_invariants: [
            ratfunc_text(&inv.traces[0]),
            ratfunc_text(&inv.traces[1]),
            ratfunc_text(&inv.traces[2]),
        ],
        invariants_constant: inv.constancy(),
        det_g: g.det().to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KillingSummary {
    pub max_degree: u32,
    pub exp_rates: Vec<[String; 3]>,
    pub dim: usize,
    pub fields: Vec<String>,
    pub algebra: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotropySummary {
    pub point: [String; 3],
    pub dim: usize,
    pub generators: Vec<String>,
    /// Conjugacy class in `o(2,1)` of each generator, read in an adapted frame.
    pub classes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSample {
    pub point: [String; 3],
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Degeneracy {
    /// Distinct nonzero `vol` determinants of triples of Killing fields; the
    /// orbit is degenerate on their common zero set.
    pub minors: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometrySummary {
    pub tag: String,
    pub parameter_tag: String,
    pub curvature: Option<String>,
    pub killing_dim: Option<usize>,
    pub algebra: Option<String>,
    pub ricci_spectrum: String,
    pub center_in_ricci_kernel: Option<bool>,
}

impl GeometrySummary {
    pub fn new(class: &GeometryClass, expected: families::GeometryTag) -> Self {
        let e = &class.evidence;
        GeometrySummary {
            tag: class.tag.name().to_string(),
            parameter_tag: expected.name().to_string(),
            curvature: e.curvature.as_ref().map(fmt_pq),
            killing_dim: e.killing_dim,
            algebra: e.algebra.as_ref().map(|a| a.to_string()),
            ricci_spectrum: e.spectrum.to_string(),
            center_in_ricci_kernel: e.center_in_ricci_kernel,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub spec: MetricSpec,
    pub curvature: CurvatureSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometrySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub killing: Option<KillingSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isotropy: Option<IsotropySummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub orbit_ranks: Vec<OrbitSample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<Degeneracy>,
}

fn killing_error(e: KillingError) -> CliError {
    match e {
        KillingError::DegreeTooLarge(_) => CliError::Input(e.to_string()),
        other => CliError::Analysis(other.to_string()),
    }
}

pub fn solve(g: &Metric, max_degree: u32, rates: &[Rate]) -> Result<(KillingBasis, KillingSummary), CliError> {
    let basis = killing::solve_killing(g, max_degree, rates).map_err(killing_error)?;
    let algebra = basis.algebra().map_err(killing_error)?;
    let mut all_rates = vec![Rate::zero()];
    for r in rates {
        if !all_rates.contains(r) {
            all_rates.push(r.clone());
        }
    }
    let summary = KillingSummary {
        max_degree,
        exp_rates: all_rates.iter().map(rate_text).collect(),
        dim: basis.dim(),
        fields: basis.fields().iter().map(ToString::to_string).collect(),
        algebra: algebra.classify().to_string(),
    };
    Ok((basis, summary))
}

fn isotropy_summary(g: &Metric, fields: &[VectorField]) -> Result<IsotropySummary, CliError> {
    let p = g.base_point().clone();
    let iso = killing::isotropy_subalgebra(fields, &p).map_err(killing_error)?;
    let frame = adapted_frame(g, &p).ok();
    let classes = iso
        .iter()
        .map(|x| {
            frame
                .as_ref()
                .and_then(|b| omega_of_killing(g, x, b).ok())
                .and_then(|w| classify_o21_element(&w.p_part).ok())
                .map_or_else(|| "unavailable".to_string(), |c| c.to_string())
        })
        .collect();
    Ok(IsotropySummary {
        point: point_text(&p),
        dim: iso.len(),
        generators: iso.iter().map(ToString::to_string).collect(),
        classes,
    })
}

fn orbit_samples(g: &Metric, fields: &[VectorField]) -> Vec<OrbitSample> {
    let mut points = vec![g.base_point().clone()];
    for p in [
        [int(0), int(0), int(1)],
        [int(1), int(1), int(1)],
        [rat(1, 2), int(-1), rat(1, 3)],
    ] {
        if !points.contains(&p) {
            points.push(p);
        }
    }
    points
        .iter()
        .map(|p| OrbitSample {
            point: point_text(p),
            rank: killing::evaluation_rank(fields, p),
        })
        .collect()
}

fn degeneracy(fields: &[VectorField]) -> Degeneracy {
    let mut minors: Vec<String> = Vec::new();
    let n = fields.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = killing::vol_determinant(&[fields[i].clone(), fields[j].clone(), fields[k].clone()]);
                if v.is_zero() {
                    continue;
                }
                let s = v.to_string();
                if !minors.contains(&s) {
                    minors.push(s);
                }
            }
        }
    }
    Degeneracy { minors }
}

/// Full analysis of a metric: curvature, Killing algebra, isotropy, orbits, degeneracy.
pub fn analyze(spec: MetricSpec, max_degree: u32, rates: &[Rate]) -> Result<Report, CliError> {
    let g = spec.to_metric()?;
    let mut report = Report {
        command: "analyze".into(),
        spec,
        curvature: curvature_summary(&g),
        geometry: None,
        killing: None,
        isotropy: None,
        orbit_ranks: Vec::new(),
        degeneracy: None,
    };
    fill_killing(&mut report, &g, max_degree, rates)?;
    Ok(report)
}

fn fill_killing(report: &mut Report, g: &Metric, max_degree: u32, rates: &[Rate]) -> Result<(), CliError> {
    let (basis, summary) = solve(g, max_degree, rates)?;
    report.killing = Some(summary);
    report.isotropy = Some(isotropy_summary(g, basis.fields())?);
    report.orbit_ranks = orbit_samples(g, basis.fields());
    report.degeneracy = Some(degeneracy(basis.fields()));
    Ok(())
}

/// Classification of `g_{C,D}`; `full` adds the Killing analysis.
pub fn family(p: &FamilyParams, full: bool) -> Result<Report, CliError> {
    let g = families::metric_gcd(p);
    let class = families::classify_family(p).map_err(|e| CliError::Analysis(e.to_string()))?;
    let mut report = Report {
        command: "family".into(),
        spec: MetricSpec::family(p),
        curvature: curvature_summary(&g),
        geometry: Some(GeometrySummary::new(&class, families::parameter_tag(p))),
        killing: None,
        isotropy: None,
        orbit_ranks: Vec::new(),
        degeneracy: None,
    };
    if full {
        fill_killing(&mut report, &g, families::FAMILY_DEGREE, &p.exp_rates())?;
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub command: String,
    pub spec: MetricSpec,
    pub killing: KillingSummary,
}

pub fn solve_killing(spec: MetricSpec, max_degree: u32, rates: &[Rate]) -> Result<SolveReport, CliError> {
    let g = spec.to_metric()?;
    let (_, killing) = solve(&g, max_degree, rates)?;
    Ok(SolveReport {
        command: "solve-killing".into(),
        spec,
        killing,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRowReport {
    pub name: String,
    pub image_matches: bool,
    pub i_symmetric: bool,
    pub bianchi: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CartanReport {
    pub command: String,
    pub rows: Vec<TableRowReport>,
    pub m_d_is_twice_identity: bool,
    /// Whether the commonly printed `m_eh` preimage also maps to an `𝕀`-symmetric endomorphism.
    pub printed_m_eh_preimage_i_symmetric: bool,
    pub all_passed: bool,
}

pub fn cartan_check() -> CartanReport {
    let t = cartan::verify_table();
    CartanReport {
        command: "cartan-check".into(),
        rows: t
            .rows
            .iter()
            .map(|r| TableRowReport {
                name: r.name.to_string(),
                image_matches: r.image_matches,
                i_symmetric: r.i_symmetric,
                bianchi: r.bianchi,
                passed: r.passed(),
            })
            .collect(),
        m_d_is_twice_identity: t.m_d_is_twice_identity,
        printed_m_eh_preimage_i_symmetric: cartan::is_i_symmetric(&cartan::phi(&cartan::m_eh_preimage_as_printed())),
        all_passed: t.all_passed(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepCell {
    pub c: String,
    pub d: String,
    pub tag: Option<String>,
    pub parameter_tag: String,
    pub algebra: Option<String>,
    pub killing_dim: Option<usize>,
    pub curvature: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub command: String,
    pub grid: Vec<String>,
    pub cells: Vec<SweepCell>,
    pub failures: usize,
}

pub fn sweep_cell(p: &FamilyParams) -> SweepCell {
    let expected = families::parameter_tag(p).name().to_string();
    let base = SweepCell {
        c: fmt_pq(&p.c),
        d: fmt_pq(&p.d),
        tag: None,
        parameter_tag: expected,
        algebra: None,
        killing_dim: None,
        curvature: None,
        error: None,
    };
    match families::classify_family(p) {
        Ok(class) => SweepCell {
            tag: Some(class.tag.name().to_string()),
            algebra: class.evidence.algebra.as_ref().map(|a| a.to_string()),
            killing_dim: class.evidence.killing_dim,
            curvature: class.evidence.curvature.as_ref().map(fmt_pq),
            ..base
        },
        Err(e) => SweepCell {
            error: Some(e.to_string()),
            ..base
        },
    }
}

/// `min, min + step, …, ≤ max`.
pub fn grid_values(min: &Rational, max: &Rational, step: &Rational) -> Result<Vec<Rational>, CliError> {
    if *step <= int(0) || max < min {
        return Err(CliError::Input("grid needs min <= max and step > 0".into()));
    }
    if (max - min) / step > int(10_000) {
        return Err(CliError::Input("grid has too many points".into()));
    }
    let mut out = Vec::new();
    let mut v = min.clone();
    while v <= *max {
        out.push(v.clone());
        v += step;
    }
    Ok(out)
}

/// Flattens a JSON report into `path: value` lines.
pub fn render_text(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
            }
            other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}
