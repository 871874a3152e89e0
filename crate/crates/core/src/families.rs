//! The two-parameter family `g_{C,D} = dx² + dh dz + C z² dh² + D z dx dh`,
//! its distinguished Killing fields and the classification of its local
//! geometry from computed evidence.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::linalg::{self, Matrix};
use crate::exactalg::rational::{exact_sqrt, fmt_compact, to_f64};
use crate::exactalg::{ExpPoly, Poly, Rate, RatFunc, Rational, Var};
use crate::geometry::{self, origin, Metric, Point};
use crate::killing::{self, KillingError, VectorField};
use crate::liealg::AlgebraClass;

/// Polynomial degree used by [`classify_family`] for the Killing ansatz.
pub const FAMILY_DEGREE: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub c: Rational,
    pub d: Rational,
}

impl FamilyParams {
    pub fn new(c: Rational, d: Rational) -> Self {
        FamilyParams { c, d }
    }

    /// The exponential rates of the Killing ansatz: `0` and `(−D, 0, 0)`.
    pub fn exp_rates(&self) -> Vec<Rate> {
        vec![Rate::zero(), Rate::new(-self.d.clone(), Rational::zero(), Rational::zero())]
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C = {}, D = {}", fmt_compact(&self.c), fmt_compact(&self.d))
    }
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// `g_xx = 1`, `g_hz = 1`, `g_hh = C z²`, `g_xh = D z`, based at the origin.
///
/// Mixed products such as `dh dz` stand for `dh ⊗ dz + dz ⊗ dh`, so
/// `det g = −1` for every `(C, D)`.
pub fn metric_gcd(p: &FamilyParams) -> Metric {
    let z = Poly::var(Var::Z);
    let upper = [
        Poly::one(),
        z.scale(&p.d),
        Poly::zero(),
        z.pow(2).scale(&p.c),
        Poly::one(),
        Poly::zero(),
    ];
    Metric::from_upper(upper, origin()).expect("g_{C,D} is Lorentzian at the origin")
}

/// `∂x`.
pub fn field_x() -> VectorField {
    VectorField::coordinate(Var::X)
}

/// `∂h`.
pub fn field_h() -> VectorField {
    VectorField::coordinate(Var::H)
}

/// `−h ∂h + z ∂z`.
pub fn field_y() -> VectorField {
    VectorField::from_polys([Poly::zero(), -Poly::var(Var::H), Poly::var(Var::Z)])
}

/// `T = D h ∂x + ½(D² − C) h² ∂h + ((C − D²) z h − 1) ∂z`.
pub fn extra_killing_t(p: &FamilyParams) -> VectorField {
    let h = Poly::var(Var::H);
    let z = Poly::var(Var::Z);
    let d2_minus_c = &p.d * &p.d - &p.c;
    VectorField::from_polys([
        h.scale(&p.d),
        h.pow(2).scale(&(&d2_minus_c * half())),
        &(&z * &h).scale(&-d2_minus_c) - &Poly::one(),
    ])
}

/// `T / D`, normalized so that `[∂h, T/D] = ∂x + (C/D − D) Y`; `None` when `D = 0`.
pub fn normalized_killing_t(p: &FamilyParams) -> Option<VectorField> {
    if p.d.is_zero() {
        return None;
    }
    Some(extra_killing_t(p).scale(&p.d.recip()))
}

/// `e^{−Dx} ∂z`, Killing when `C = 0`.
pub fn exp_killing_z(p: &FamilyParams) -> VectorField {
    let rate = Rate::new(-p.d.clone(), Rational::zero(), Rational::zero());
    VectorField::new([
        ExpPoly::zero(),
        ExpPoly::zero(),
        ExpPoly::with_rate(rate, Poly::one()),
    ])
}

/// Local model geometries of the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeometryTag {
    Minkowski,
    AdS3,
    RtimesDS2,
    LorentzHeisenberg,
    LeftInvariantSL2,
    Undetermined,
}

impl GeometryTag {
    pub fn name(self) -> &'static str {
        match self {
            GeometryTag::Minkowski => "Minkowski",
            GeometryTag::AdS3 => "AdS3",
            GeometryTag::RtimesDS2 => "RtimesDS2",
            GeometryTag::LorentzHeisenberg => "LorentzHeisenberg",
            GeometryTag::LeftInvariantSL2 => "LeftInvariantSL2",
            GeometryTag::Undetermined => "Undetermined",
        }
    }
}

impl fmt::Display for GeometryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shape of the spectrum of a Ricci operator with constant characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumShape {
    /// Characteristic polynomial `λ (λ − μ)²` with `μ ≠ 0`.
    ZeroDouble { mu: Rational },
    /// All eigenvalues zero.
    Nilpotent,
    /// Constant coefficients of some other shape.
    Other { c1: Rational, c2: Rational, c3: Rational },
    /// Coefficients that vary from point to point.
    NonConstant,
}

impl fmt::Display for SpectrumShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumShape::ZeroDouble { mu } => write!(f, "(0, {0}, {0})", fmt_compact(mu)),
            SpectrumShape::Nilpotent => write!(f, "(0, 0, 0)"),
            SpectrumShape::Other { c1, c2, c3 } => write!(
                f,
                "t^3 - ({})t^2 + ({})t - ({})",
                fmt_compact(c1),
                fmt_compact(c2),
                fmt_compact(c3)
            ),
            SpectrumShape::NonConstant => write!(f, "non-constant"),
        }
    }
}

/// Reads the spectrum shape off the coefficients `(c1, c2, c3)` of
/// `t³ − c1 t² + c2 t − c3`. `λ(λ − μ)²` means `c3 = 0`, `c1 = 2μ`, `c2 = μ²`.
pub fn spectrum_shape(char_poly: &[RatFunc; 3]) -> SpectrumShape {
    let consts: Option<Vec<Rational>> = char_poly.iter().map(RatFunc::as_constant).collect();
    let Some(c) = consts else {
        return SpectrumShape::NonConstant;
    };
    let (c1, c2, c3) = (c[0].clone(), c[1].clone(), c[2].clone());
    if c1.is_zero() && c2.is_zero() && c3.is_zero() {
        return SpectrumShape::Nilpotent;
    }
    let mu = &c1 * half();
    if c3.is_zero() && !mu.is_zero() && c2 == &mu * &mu {
        return SpectrumShape::ZeroDouble { mu };
    }
    SpectrumShape::Other { c1, c2, c3 }
}

/// The computed facts a [`GeometryClass`] is based on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub curvature: Option<Rational>,
    pub killing_dim: Option<usize>,
    pub algebra: Option<AlgebraClass>,
    pub spectrum: SpectrumShape,
    /// Whether the center of the Killing algebra lies in the Ricci kernel at the origin.
    pub center_in_ricci_kernel: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometryClass {
    pub tag: GeometryTag,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("computed geometry {evidence} disagrees with the parameter criteria ({parameters}) at {params}")]
    Mismatch {
        params: String,
        evidence: GeometryTag,
        parameters: GeometryTag,
    },
    #[error(transparent)]
    Killing(#[from] KillingError),
}

/// Expected geometry from `(C, D)` alone.
pub fn parameter_tag(p: &FamilyParams) -> GeometryTag {
    let (c, d) = (&p.c, &p.d);
    match (c.is_zero(), d.is_zero()) {
        (true, true) => GeometryTag::Minkowski,
        (false, true) => GeometryTag::RtimesDS2,
        (true, false) => GeometryTag::AdS3,
        (false, false) if *c == d * d => GeometryTag::LorentzHeisenberg,
        (false, false) => GeometryTag::LeftInvariantSL2,
    }
}

/// Classifies `g_{C,D}` from curvature and its Killing algebra, then checks
/// the answer against [`parameter_tag`].
pub fn classify_family(p: &FamilyParams) -> Result<GeometryClass, FamilyError> {
    let class = classify_metric(&metric_gcd(p), &p.exp_rates())?;
    let expected = parameter_tag(p);
    if class.tag != expected {
        return Err(FamilyError::Mismatch {
            params: p.to_string(),
            evidence: class.tag,
            parameters: expected,
        });
    }
    Ok(class)
}

/// The evidence-based decision tree, for any metric and exponential rates.
pub fn classify_metric(g: &Metric, rates: &[Rate]) -> Result<GeometryClass, KillingError> {
    let r = geometry::riemann(g);
    let curvature = geometry::constant_curvature_of(g, &r);
    let ricci = geometry::ricci_from(g, &r);
    let spectrum = spectrum_shape(&ricci.char_poly());
    let mut evidence = Evidence {
        curvature: curvature.clone(),
        killing_dim: None,
        algebra: None,
        spectrum,
        center_in_ricci_kernel: None,
    };
    if let Some(k) = curvature {
        let tag = if k.is_zero() {
            GeometryTag::Minkowski
        } else if k.is_negative() {
            GeometryTag::AdS3
        } else {
            GeometryTag::Undetermined
        };
        return Ok(GeometryClass { tag, evidence });
    }
    let basis = killing::solve_killing(g, FAMILY_DEGREE, rates)?;
    let algebra = basis.algebra()?;
    let class = algebra.classify();
    evidence.killing_dim = Some(basis.dim());
    evidence.algebra = Some(class.clone());
    let tag = match class {
        AlgebraClass::RsemidirectHeis => GeometryTag::LorentzHeisenberg,
        AlgebraClass::RplusSl2 => {
            let center = algebra.center();
            let base = g.base_point();
            let in_kernel = match (center.first(), ricci.at(base)) {
                (Some(cv), Some(a)) => {
                    let field = VectorField::combination(cv, basis.fields());
                    field
                        .eval_exact(base)
                        .map(|v| linalg::mat_vec(&a, &v).iter().all(Zero::is_zero))
                }
                _ => None,
            };
            evidence.center_in_ricci_kernel = in_kernel;
            let product = matches!(evidence.spectrum, SpectrumShape::ZeroDouble { .. }) && in_kernel == Some(true);
            if product {
                GeometryTag::RtimesDS2
            } else {
                GeometryTag::LeftInvariantSL2
            }
        }
        _ => GeometryTag::Undetermined,
    };
    Ok(GeometryClass { tag, evidence })
}

/// A vector `W` with `Ricci(u, u) = g(W, u)²`.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciRoot {
    /// Exact components when the needed square root is rational.
    pub exact: Option<[Rational; 3]>,
    pub numeric: [f64; 3],
    /// `g(W, W) = 0`, decided exactly.
    pub isotropic: bool,
}

/// Root of the Ricci quadratic form of `g` at `p`, when it has rank one and
/// is positive semidefinite.
pub fn rank_one_ricci_root(g: &Metric, p: &Point) -> Option<RicciRoot> {
    let ric = geometry::ricci_operator(g).ricci_at(p)?;
    rank_one_root(&ric, &g.at(p))
}

/// Same as [`rank_one_ricci_root`] from the Ricci and Gram matrices at a point.
/// With `Ric = ω ωᵀ` and `W = g⁻¹ ω`, `Ricci(u, u) = (ω·u)² = g(W, u)²`.
pub fn rank_one_root(ricci: &Matrix, gram: &Matrix) -> Option<RicciRoot> {
    if linalg::rank(ricci) != 1 {
        return None;
    }
    let i = (0..3).find(|&i| !ricci[i][i].is_zero())?;
    let rii = ricci[i][i].clone();
    if rii.is_negative() {
        return None;
    }
    let ginv = linalg::inverse(gram)?;
    // v = g⁻¹ Ric_i, so W = v / √Ric_ii.
    let v = linalg::mat_vec(&ginv, &ricci[i]);
    let sign = match v.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => -Rational::one(),
        _ => Rational::one(),
    };
    let v: Vec<Rational> = v.iter().map(|c| c * &sign).collect();
    let norm = linalg::mat_vec(gram, &v)
        .iter()
        .zip(&v)
        .map(|(a, b)| a * b)
        .sum::<Rational>();
    let exact = exact_sqrt(&rii).map(|s| [&v[0] / &s, &v[1] / &s, &v[2] / &s]);
    let root = to_f64(&rii).sqrt();
    Some(RicciRoot {
        exact,
        numeric: [to_f64(&v[0]) / root, to_f64(&v[1]) / root, to_f64(&v[2]) / root],
        isotropic: norm.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};
    use crate::liealg::form_i;

    fn params(c: i64, d: i64) -> FamilyParams {
        FamilyParams::new(int(c), int(d))
    }

    #[test]
    fn metric_components() {
        let g = metric_gcd(&params(0, 0));
        assert_eq!(g, Metric::minkowski());
        let g = metric_gcd(&params(2, 3));
        assert_eq!(g.det(), Poly::constant(int(-1)));
        assert_eq!(g.component(1, 1), &Poly::var(Var::Z).pow(2).scale(&int(2)));
        assert_eq!(g.component(0, 1), &Poly::var(Var::Z).scale(&int(3)));
    }

    #[test]
    fn extra_field_formula() {
        let expected = VectorField::from_polys([Poly::var(Var::H), Poly::zero(), -Poly::one()]);
        assert_eq!(extra_killing_t(&params(1, 1)), expected);
        let flat = VectorField::from_polys([Poly::zero(), Poly::zero(), -Poly::one()]);
        assert_eq!(extra_killing_t(&params(0, 0)), flat);
        for (c, d) in [(2, -1), (0, 3), (-5, 2)] {
            let t = extra_killing_t(&params(c, d));
            assert_eq!(t.eval_exact(&origin()), Some([int(0), int(0), int(-1)]));
        }
        assert!(normalized_killing_t(&params(1, 0)).is_none());
    }

    #[test]
    fn parameter_criteria() {
        assert_eq!(parameter_tag(&params(0, 0)), GeometryTag::Minkowski);
        assert_eq!(parameter_tag(&params(0, -1)), GeometryTag::AdS3);
        assert_eq!(parameter_tag(&params(4, 2)), GeometryTag::LorentzHeisenberg);
        assert_eq!(parameter_tag(&params(-1, 0)), GeometryTag::RtimesDS2);
        assert_eq!(parameter_tag(&params(3, 1)), GeometryTag::LeftInvariantSL2);
    }

    #[test]
    fn classification_from_evidence() {
        assert_eq!(classify_family(&params(0, 0)).unwrap().tag, GeometryTag::Minkowski);
        assert_eq!(classify_family(&params(1, 1)).unwrap().tag, GeometryTag::LorentzHeisenberg);
        let product = classify_family(&params(1, 0)).unwrap();
        assert_eq!(product.tag, GeometryTag::RtimesDS2);
        assert_eq!(product.evidence.spectrum, SpectrumShape::ZeroDouble { mu: int(1) });
        assert_eq!(product.evidence.center_in_ricci_kernel, Some(true));
        let sl2 = classify_family(&params(3, 1)).unwrap();
        assert_eq!(sl2.evidence.killing_dim, Some(4));
        assert_eq!(sl2.evidence.center_in_ricci_kernel, Some(false));
        let ads = classify_family(&params(0, 2)).unwrap();
        assert_eq!(ads.evidence.curvature, Some(int(-1)));
    }

    #[test]
    fn spectrum_shapes() {
        let c = |a: i64, b: i64, d: i64| [RatFunc::constant(int(a)), RatFunc::constant(int(b)), RatFunc::constant(int(d))];
        assert_eq!(spectrum_shape(&c(0, 0, 0)), SpectrumShape::Nilpotent);
        assert_eq!(spectrum_shape(&c(4, 4, 0)), SpectrumShape::ZeroDouble { mu: int(2) });
        assert!(matches!(spectrum_shape(&c(1, 0, 0)), SpectrumShape::Other { .. }));
        let nonconst = [RatFunc::from(Poly::var(Var::Z)), RatFunc::zero(), RatFunc::zero()];
        assert_eq!(spectrum_shape(&nonconst), SpectrumShape::NonConstant);
    }

    #[test]
    fn rank_one_roots() {
        assert!(rank_one_ricci_root(&Metric::minkowski(), &origin()).is_none());
        assert!(rank_one_ricci_root(&metric_gcd(&params(1, 0)), &origin()).is_none());
        // A = α e ⊗ f-coordinate in a 𝕀-frame: Ricci(u, u) = α u_f².
        let mut ric = linalg::zeros(3, 3);
        ric[2][2] = rat(9, 4);
        let root = rank_one_root(&ric, &form_i()).unwrap();
        assert_eq!(root.exact, Some([rat(3, 2), int(0), int(0)]));
        assert!(root.isotropic);
        ric[2][2] = int(2);
        let root = rank_one_root(&ric, &form_i()).unwrap();
        assert!(root.exact.is_none());
        assert!((root.numeric[0] - 2f64.sqrt()).abs() < 1e-12);
        ric[2][2] = int(-1);
        assert!(rank_one_root(&ric, &form_i()).is_none());
    }
}
