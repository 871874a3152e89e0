//! Levi-Civita connection and curvature of metrics on coordinates `(x, h, z)`.
//!
//! Index conventions: `gamma(k, i, j)` is `Γ^k_ij`, `riemann(l, i, j, k)` is
//! `R^l_ijk`, the `l` component of `R(∂_j, ∂_k)∂_i` with
//! `R(U, V) = ∇_U ∇_V − ∇_V ∇_U − ∇_[U,V]`. Ricci is `Ric_ij = R^k_ikj` and
//! the Ricci operator is `A = g⁻¹ Ric`.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::linalg::{self, Matrix};
use crate::exactalg::{parse_expr, ExpPoly, ParseError, Poly, RatFunc, Rational, Var};
use crate::killing::VectorField;

pub type Point = [Rational; 3];

/// Names of the six independent components in input order.
pub const COMPONENT_NAMES: [&str; 6] = ["gxx", "gxh", "gxz", "ghh", "ghz", "gzz"];

/// Upper-triangle index pairs matching [`COMPONENT_NAMES`].
pub const UPPER: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("metric is not symmetric in components ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("metric is degenerate at ({0})")]
    Degenerate(String),
    #[error("metric has signature ({pos}, {neg}) at the base point, expected (2, 1)")]
    WrongSignature { pos: usize, neg: usize },
    #[error("cannot parse {component}: {source}")]
    Parse {
        component: &'static str,
        source: ParseError,
    },
    #[error("Christoffel symbols are not polynomial; covariant derivatives of exponential fields are unsupported")]
    NonPolynomialConnection,
}

fn fmt_point(p: &Point) -> String {
    p.iter()
        .map(crate::exactalg::rational::fmt_compact)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Symmetric polynomial metric with a base point where it is Lorentzian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    g: [[Poly; 3]; 3],
    base_point: Point,
}

impl Metric {
    /// Validates symmetry, nondegeneracy and signature `(2, 1)` at `base_point`.
    pub fn new(g: [[Poly; 3]; 3], base_point: Point) -> Result<Self, GeometryError> {
        for i in 0..3 {
            for j in i + 1..3 {
                if g[i][j] != g[j][i] {
                    return Err(GeometryError::NotSymmetric(i, j));
                }
            }
        }
        let m = Metric { g, base_point };
        let (pos, neg) = m.signature_at(&m.base_point)?;
        if (pos, neg) != (2, 1) {
            return Err(GeometryError::WrongSignature { pos, neg });
        }
        Ok(m)
    }

    /// Builds a metric from its upper triangle in the order of [`COMPONENT_NAMES`].
    pub fn from_upper(upper: [Poly; 6], base_point: Point) -> Result<Self, GeometryError> {
        let mut g: [[Poly; 3]; 3] = Default::default();
        for ((i, j), p) in UPPER.into_iter().zip(upper) {
            g[j][i] = p.clone();
            g[i][j] = p;
        }
        Metric::new(g, base_point)
    }

    /// Parses the six upper-triangle expressions with the given parameters.
    pub fn parse(
        exprs: [&str; 6],
        params: &BTreeMap<String, Rational>,
        base_point: Point,
    ) -> Result<Self, GeometryError> {
        let mut upper: [Poly; 6] = Default::default();
        for (n, text) in exprs.iter().enumerate() {
            upper[n] = parse_expr(text, params).map_err(|source| GeometryError::Parse {
                component: COMPONENT_NAMES[n],
                source,
            })?;
        }
        Metric::from_upper(upper, base_point)
    }

    pub fn component(&self, i: usize, j: usize) -> &Poly {
        &self.g[i][j]
    }

    pub fn components(&self) -> &[[Poly; 3]; 3] {
        &self.g
    }

    pub fn upper(&self) -> [Poly; 6] {
        UPPER.map(|(i, j)| self.g[i][j].clone())
    }

    pub fn base_point(&self) -> &Point {
        &self.base_point
    }

    pub fn with_base_point(&self, p: Point) -> Result<Self, GeometryError> {
        Metric::new(self.g.clone(), p)
    }

    pub fn det(&self) -> Poly {
        let g = &self.g;
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&g[a][c] * &g[b][d]) - &(&g[a][d] * &g[b][c]);
        &(&(&g[0][0] * &minor(1, 2, 1, 2)) - &(&g[0][1] * &minor(1, 2, 0, 2))) + &(&g[0][2] * &minor(1, 2, 0, 1))
    }

    /// Adjugate over determinant.
    pub fn inverse(&self) -> [[RatFunc; 3]; 3] {
        let g = &self.g;
        let det = self.det();
        let mut inv: [[RatFunc; 3]; 3] = Default::default();
        for (i, row) in inv.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                // Cofactor of g[j][i].
                let r: Vec<usize> = (0..3).filter(|&r| r != j).collect();
                let c: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                let mut cof = &(&g[r[0]][c[0]] * &g[r[1]][c[1]]) - &(&g[r[0]][c[1]] * &g[r[1]][c[0]]);
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                *entry = RatFunc::new(cof, det.clone()).expect("determinant is not identically zero");
            }
        }
        inv
    }

    pub fn at(&self, p: &Point) -> Matrix {
        self.g
            .iter()
            .map(|row| row.iter().map(|c| c.eval(p)).collect())
            .collect()
    }

    pub fn at_f64(&self, p: &[f64; 3]) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.g[i][j].eval_f64(p);
            }
        }
        out
    }

    /// Inertia of `g(p)`, by exact congruence diagonalization.
    pub fn signature_at(&self, p: &Point) -> Result<(usize, usize), GeometryError> {
        signature_of(&self.at(p)).ok_or_else(|| GeometryError::Degenerate(fmt_point(p)))
    }

    /// `g(X, Y)` for vector fields.
    pub fn inner(&self, a: &VectorField, b: &VectorField) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for i in 0..3 {
            for j in 0..3 {
                if self.g[i][j].is_zero() {
                    continue;
                }
                out += &(&a.component(i).mul_poly(&self.g[i][j]) * b.component(j));
            }
        }
        out
    }
}

/// Signature `(positives, negatives)` of a nondegenerate symmetric matrix.
pub fn signature_of(m: &Matrix) -> Option<(usize, usize)> {
    let (pos, neg, zero) = linalg::inertia(m);
    (zero == 0).then_some((pos, neg))
}

/// Christoffel symbols `Γ^k_ij`, symmetric in `i, j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Christoffel {
    gamma: [[[RatFunc; 3]; 3]; 3],
}

impl Christoffel {
    pub fn get(&self, k: usize, i: usize, j: usize) -> &RatFunc {
        &self.gamma[k][i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().flatten().flatten().all(RatFunc::is_zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.gamma.iter().flatten().flatten().all(RatFunc::is_polynomial)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|k| (0..3).all(|i| (0..3).all(|j| self.gamma[k][i][j] == self.gamma[k][j][i])))
    }

    fn poly(&self, k: usize, i: usize, j: usize) -> Result<Poly, GeometryError> {
        self.gamma[k][i][j]
            .as_poly()
            .ok_or(GeometryError::NonPolynomialConnection)
    }

    /// `(∇_X Y)^k = X^i ∂_i Y^k + Γ^k_ij X^i Y^j`.
    pub fn covariant_derivative(&self, x: &VectorField, y: &VectorField) -> Result<VectorField, GeometryError> {
        let mut comps: [ExpPoly; 3] = Default::default();
        for (k, c) in comps.iter_mut().enumerate() {
            let mut acc = x.apply(y.component(k));
            for i in 0..3 {
                for j in 0..3 {
                    let gk = self.poly(k, i, j)?;
                    if gk.is_zero() {
                        continue;
                    }
                    acc += &(x.component(i) * y.component(j)).mul_poly(&gk);
                }
            }
            *c = acc;
        }
        Ok(VectorField::new(comps))
    }

    /// The endomorphism field `u ↦ ∇_u X`, as `m[k][i] = ∂_i X^k + Γ^k_ij X^j`.
    pub fn nabla(&self, x: &VectorField) -> Result<[[ExpPoly; 3]; 3], GeometryError> {
        let mut m: [[ExpPoly; 3]; 3] = Default::default();
        for (k, row) in m.iter_mut().enumerate() {
            for (i, entry) in row.iter_mut().enumerate() {
                let mut acc = x.component(k).derivative(Var::from_index(i));
                for j in 0..3 {
                    let gk = self.poly(k, i, j)?;
                    if !gk.is_zero() {
                        acc += &x.component(j).mul_poly(&gk);
                    }
                }
                *entry = acc;
            }
        }
        Ok(m)
    }
}

/// `Γ^k_ij = ½ g^{kl}(∂_i g_lj + ∂_j g_li − ∂_l g_ij)`.
pub fn christoffel(g: &Metric) -> Christoffel {
    let ginv = g.inverse();
    let c = g.components();
    let half = Rational::new(1.into(), 2.into());
    let d = |l: usize, i: usize, j: usize| c[i][j].derivative(Var::from_index(l));
    // First kind, indexed [l][i][j].
    let mut first: [[[Poly; 3]; 3]; 3] = Default::default();
    for (l, plane) in first.iter_mut().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                plane[i][j] = (&(&d(i, l, j) + &d(j, l, i)) - &d(l, i, j)).scale(&half);
            }
        }
    }
    let mut gamma: [[[RatFunc; 3]; 3]; 3] = Default::default();
    for (k, plane) in gamma.iter_mut().enumerate() {
        for i in 0..3 {
            for j in i..3 {
                let mut acc = RatFunc::zero();
                for l in 0..3 {
                    if !first[l][i][j].is_zero() && !ginv[k][l].is_zero() {
                        acc = acc + &ginv[k][l] * &RatFunc::from(first[l][i][j].clone());
                    }
                }
                plane[j][i] = acc.clone();
                plane[i][j] = acc;
            }
        }
    }
    Christoffel { gamma }
}

/// `(∇_X Y)` computed from a fresh connection of `g`.
pub fn covariant_derivative(g: &Metric, x: &VectorField, y: &VectorField) -> Result<VectorField, GeometryError> {
    christoffel(g).covariant_derivative(x, y)
}

/// Riemann tensor `R^l_ijk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannTensor {
    r: [[[[RatFunc; 3]; 3]; 3]; 3],
}

impl RiemannTensor {
    pub fn get(&self, l: usize, i: usize, j: usize, k: usize) -> &RatFunc {
        &self.r[l][i][j][k]
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().flatten().flatten().flatten().all(RatFunc::is_zero)
    }

    /// `R_lijk = g_lm R^m_ijk`.
    pub fn lowered(&self, g: &Metric) -> [[[[RatFunc; 3]; 3]; 3]; 3] {
        let mut out: [[[[RatFunc; 3]; 3]; 3]; 3] = Default::default();
        for l in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let mut acc = RatFunc::zero();
                        for m in 0..3 {
                            let glm = g.component(l, m);
                            if !glm.is_zero() && !self.r[m][i][j][k].is_zero() {
                                acc = acc + &RatFunc::from(glm.clone()) * &self.r[m][i][j][k];
                            }
                        }
                        out[l][i][j][k] = acc;
                    }
                }
            }
        }
        out
    }

    /// Descriptions of every violated curvature symmetry; empty when all hold.
    pub fn symmetry_violations(&self, g: &Metric) -> Vec<String> {
        let mut out = Vec::new();
        let r = &self.r;
        for l in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        if r[l][i][j][k] != -&r[l][i][k][j] {
                            out.push(format!("R^{l}_{i}{j}{k} not antisymmetric in the last pair"));
                        }
                        let cyc = &(&r[l][i][j][k] + &r[l][j][k][i]) + &r[l][k][i][j];
                        if !cyc.is_zero() {
                            out.push(format!("first Bianchi identity fails at R^{l}_{i}{j}{k}"));
                        }
                    }
                }
            }
        }
        let low = self.lowered(g);
        for l in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        if low[l][i][j][k] != -&low[i][l][j][k] {
                            out.push(format!("R_{l}{i}{j}{k} not antisymmetric in the first pair"));
                        }
                        if low[l][i][j][k] != low[j][k][l][i] {
                            out.push(format!("R_{l}{i}{j}{k} not symmetric under pair swap"));
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn riemann(g: &Metric) -> RiemannTensor {
    riemann_from(&christoffel(g))
}

/// `R^l_ijk = ∂_j Γ^l_ik − ∂_k Γ^l_ij + Γ^l_jm Γ^m_ik − Γ^l_km Γ^m_ij`.
pub fn riemann_from(gamma: &Christoffel) -> RiemannTensor {
    let g = &gamma.gamma;
    let mut r: [[[[RatFunc; 3]; 3]; 3]; 3] = Default::default();
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in j + 1..3 {
                    let mut acc = &g[l][i][k].derivative(Var::from_index(j)) - &g[l][i][j].derivative(Var::from_index(k));
                    for m in 0..3 {
                        if !g[l][j][m].is_zero() && !g[m][i][k].is_zero() {
                            acc = acc + &g[l][j][m] * &g[m][i][k];
                        }
                        if !g[l][k][m].is_zero() && !g[m][i][j].is_zero() {
                            acc = acc - &g[l][k][m] * &g[m][i][j];
                        }
                    }
                    r[l][i][k][j] = -&acc;
                    r[l][i][j][k] = acc;
                }
            }
        }
    }
    RiemannTensor { r }
}

/// Ricci tensor and Ricci operator `A = g⁻¹ Ric`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RicciOperator {
    ricci: [[RatFunc; 3]; 3],
    a: [[RatFunc; 3]; 3],
}

impl RicciOperator {
    /// `A^i_j`.
    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.a[i][j]
    }

    pub fn matrix(&self) -> &[[RatFunc; 3]; 3] {
        &self.a
    }

    pub fn ricci(&self) -> &[[RatFunc; 3]; 3] {
        &self.ricci
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(RatFunc::is_zero)
    }

    /// `g(Au, v) = g(u, Av)`, i.e. `g A` is symmetric, as an exact identity.
    pub fn is_g_symmetric(&self, g: &Metric) -> bool {
        let ga = mat_mul_rf(&poly_matrix(g.components()), &self.a);
        (0..3).all(|i| (0..3).all(|j| ga[i][j] == ga[j][i]))
    }

    /// Exact value of `A` at `p`; `None` where a denominator vanishes.
    pub fn at(&self, p: &Point) -> Option<Matrix> {
        self.a
            .iter()
            .map(|row| row.iter().map(|c| c.eval(p)).collect())
            .collect()
    }

    pub fn ricci_at(&self, p: &Point) -> Option<Matrix> {
        self.ricci
            .iter()
            .map(|row| row.iter().map(|c| c.eval(p)).collect())
            .collect()
    }

    /// Coefficients `(c1, c2, c3)` of `t³ − c1 t² + c2 t − c3`.
    pub fn char_poly(&self) -> [RatFunc; 3] {
        let a = &self.a;
        let c1 = trace_rf(a);
        let a2 = mat_mul_rf(a, a);
        let c2 = (&(&c1 * &c1) - &trace_rf(&a2)).scale(&Rational::new(1.into(), 2.into()));
        let c3 = det_rf(a);
        [c1, c2, c3]
    }
}

pub fn ricci_operator(g: &Metric) -> RicciOperator {
    ricci_from(g, &riemann(g))
}

pub fn ricci_from(g: &Metric, r: &RiemannTensor) -> RicciOperator {
    let mut ricci: [[RatFunc; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in i..3 {
            let mut acc = RatFunc::zero();
            for k in 0..3 {
                acc = acc + r.get(k, i, k, j);
            }
            ricci[j][i] = acc.clone();
            ricci[i][j] = acc;
        }
    }
    let a = mat_mul_rf(&g.inverse(), &ricci);
    RicciOperator { ricci, a }
}

/// `(tr A, tr A², tr A³)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarInvariants {
    pub traces: [RatFunc; 3],
}

impl ScalarInvariants {
    pub fn constancy(&self) -> [bool; 3] {
        self.traces.clone().map(|t| t.is_constant())
    }

    pub fn is_constant(&self) -> bool {
        self.constancy().iter().all(|&b| b)
    }

    pub fn constants(&self) -> Option<[Rational; 3]> {
        let [a, b, c] = &self.traces;
        Some([a.as_constant()?, b.as_constant()?, c.as_constant()?])
    }
}

pub fn scalar_invariants(g: &Metric) -> ScalarInvariants {
    invariants_of(&ricci_operator(g))
}

pub fn invariants_of(ric: &RicciOperator) -> ScalarInvariants {
    let a = ric.matrix();
    let a2 = mat_mul_rf(a, a);
    let a3 = mat_mul_rf(&a2, a);
    ScalarInvariants {
        traces: [trace_rf(a), trace_rf(&a2), trace_rf(&a3)],
    }
}

/// The `k` with `R_lijk = k (g_lj g_ik − g_lk g_ij)` identically, if any.
pub fn constant_curvature(g: &Metric) -> Option<Rational> {
    constant_curvature_of(g, &riemann(g))
}

pub fn constant_curvature_of(g: &Metric, r: &RiemannTensor) -> Option<Rational> {
    let low = r.lowered(g);
    let c = g.components();
    let model = |l: usize, i: usize, j: usize, k: usize| &(&c[l][j] * &c[i][k]) - &(&c[l][k] * &c[i][j]);
    let mut kappa: Option<Rational> = None;
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let rv = &low[l][i][j][k];
                    let m = model(l, i, j, k);
                    if kappa.is_none() {
                        if rv.is_zero() {
                            continue;
                        }
                        if m.is_zero() {
                            return None;
                        }
                        kappa = Some((rv / &RatFunc::from(m.clone())).as_constant()?);
                    }
                    let kv = kappa.as_ref().expect("set above");
                    if *rv != RatFunc::from(m.scale(kv)) {
                        return None;
                    }
                }
            }
        }
    }
    Some(kappa.unwrap_or_else(Rational::zero))
}

fn poly_matrix(m: &[[Poly; 3]; 3]) -> [[RatFunc; 3]; 3] {
    m.clone().map(|row| row.map(RatFunc::from))
}

pub(crate) fn mat_mul_rf(a: &[[RatFunc; 3]; 3], b: &[[RatFunc; 3]; 3]) -> [[RatFunc; 3]; 3] {
    let mut out: [[RatFunc; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = RatFunc::zero();
            for k in 0..3 {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc = acc + &a[i][k] * &b[k][j];
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

pub(crate) fn trace_rf(a: &[[RatFunc; 3]; 3]) -> RatFunc {
    &(&a[0][0] + &a[1][1]) + &a[2][2]
}

pub(crate) fn det_rf(a: &[[RatFunc; 3]; 3]) -> RatFunc {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| &(&a[r0][c0] * &a[r1][c1]) - &(&a[r0][c1] * &a[r1][c0]);
    &(&(&a[0][0] * &minor(1, 2, 1, 2)) - &(&a[0][1] * &minor(1, 2, 0, 2))) + &(&a[0][2] * &minor(1, 2, 0, 1))
}

impl Metric {
    /// Minkowski space `dx² + 2 dh dz`, based at the origin.
    pub fn minkowski() -> Self {
        let upper = [Poly::one(), Poly::zero(), Poly::zero(), Poly::zero(), Poly::one(), Poly::zero()];
        Metric::from_upper(upper, origin()).expect("Minkowski metric is Lorentzian")
    }
}

pub fn origin() -> Point {
    [Rational::zero(), Rational::zero(), Rational::zero()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};
    use crate::families::{field_x, metric_gcd, FamilyParams};

    fn family(c: i64, d: i64) -> Metric {
        metric_gcd(&FamilyParams::new(int(c), int(d)))
    }

    #[test]
    fn flat_metric_has_vanishing_connection_and_curvature() {
        let g = family(0, 0);
        assert!(christoffel(&g).is_zero());
        assert!(riemann(&g).is_zero());
        assert!(ricci_operator(&g).is_zero());
        assert_eq!(constant_curvature(&g), Some(int(0)));
        assert_eq!(scalar_invariants(&g).constants(), Some([int(0), int(0), int(0)]));
    }

    #[test]
    fn family_determinant_is_constant() {
        for (c, d) in [(1, 1), (3, -2), (0, 5)] {
            assert_eq!(family(c, d).det(), Poly::constant(int(-1)));
            assert!(christoffel(&family(c, d)).is_polynomial());
        }
    }

    #[test]
    fn constant_norm_killing_field_is_geodesic() {
        let g = family(3, 1);
        let x = field_x();
        assert!(covariant_derivative(&g, &x, &x).unwrap().is_zero());
    }

    #[test]
    fn anti_de_sitter_member_has_negative_constant_curvature() {
        assert_eq!(constant_curvature(&family(0, 1)), Some(rat(-1, 4)));
        assert_eq!(constant_curvature(&family(0, 2)), Some(int(-1)));
        let g = family(0, 1);
        let a = ricci_operator(&g);
        let expected = RatFunc::constant(rat(-1, 2));
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { expected.clone() } else { RatFunc::zero() };
                assert_eq!(a.get(i, j), &want);
            }
        }
    }

    #[test]
    fn product_member_has_zero_double_spectrum() {
        let g = family(1, 0);
        assert_eq!(constant_curvature(&g), None);
        let cp = ricci_operator(&g).char_poly();
        let consts: Vec<Rational> = cp.iter().map(|c| c.as_constant().unwrap()).collect();
        // λ(λ − 1)²
        assert_eq!(consts, vec![int(2), int(1), int(0)]);
    }

    #[test]
    fn curvature_symmetries_hold_for_family() {
        for (c, d) in [(1, 1), (3, 1), (-2, 2)] {
            let g = family(c, d);
            assert!(riemann(&g).symmetry_violations(&g).is_empty());
            assert!(ricci_operator(&g).is_g_symmetric(&g));
            assert!(scalar_invariants(&g).is_constant());
        }
    }

    #[test]
    fn perturbed_metric_loses_constancy() {
        let g = Metric::parse(["1", "0", "0", "z^3", "1", "0"], &BTreeMap::new(), origin()).unwrap();
        assert_eq!(constant_curvature(&g), None);
        assert!(!ricci_operator(&g).is_zero());
        let inv = scalar_invariants(&g);
        assert!(!inv.is_constant() || !riemann(&g).is_zero());
    }

    #[test]
    fn signatures() {
        let m = |rows: [[Rational; 3]; 3]| rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
        let (o, l) = (int(0), int(1));
        assert_eq!(
            signature_of(&m([[l.clone(), o.clone(), o.clone()], [o.clone(), l.clone(), o.clone()], [o.clone(), o.clone(), int(-1)]])),
            Some((2, 1))
        );
        let half = rat(1, 2);
        assert_eq!(
            signature_of(&m([[l.clone(), o.clone(), o.clone()], [o.clone(), o.clone(), half.clone()], [o.clone(), half, o.clone()]])),
            Some((2, 1))
        );
        let euclid = Metric::parse(["1", "0", "0", "1", "0", "1"], &BTreeMap::new(), origin());
        assert!(matches!(euclid, Err(GeometryError::WrongSignature { pos: 3, neg: 0 })));
    }

    #[test]
    fn parses_with_parameters() {
        let mut params = BTreeMap::new();
        params.insert("C".to_string(), int(2));
        params.insert("D".to_string(), rat(1, 3));
        let g = Metric::parse(["1", "D*z", "0", "C*z^2", "1", "0"], &params, origin()).unwrap();
        assert_eq!(g, metric_gcd(&FamilyParams::new(int(2), rat(1, 3))));
        let bad = Metric::parse(["1", "E*z", "0", "0", "1", "0"], &params, origin());
        assert!(matches!(bad, Err(GeometryError::Parse { component: "gxh", .. })));
    }
}
