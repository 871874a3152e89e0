//! Vector fields, the Killing equation and its finite-dimensional solver.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::linalg::{self, Matrix};
use crate::exactalg::rational::to_f64;
use crate::exactalg::{ExpPoly, Monomial, Poly, Rate, Rational, Var};
use crate::geometry::{Metric, Point};
use crate::liealg::{LieAlgebra, LieError};

/// Largest polynomial degree accepted by [`solve_killing`].
pub const MAX_SOLVER_DEGREE: u32 = 6;

/// Relative tolerance for ranks computed in floating point.
pub const NUMERIC_RANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KillingError {
    #[error("max degree {0} exceeds the solver limit {MAX_SOLVER_DEGREE}")]
    DegreeTooLarge(u32),
    #[error("exponential factors do not evaluate exactly at the point")]
    InexactEvaluation,
    #[error("bracket of basis fields {0} and {1} leaves the span of the basis")]
    NotClosed(usize, usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A vector field `α ∂x + β ∂h + γ ∂z` with exponential-polynomial components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VectorField {
    comps: [ExpPoly; 3],
}

impl VectorField {
    pub fn new(comps: [ExpPoly; 3]) -> Self {
        VectorField { comps }
    }

    pub fn from_polys(comps: [Poly; 3]) -> Self {
        VectorField::new(comps.map(ExpPoly::from))
    }

    pub fn zero() -> Self {
        VectorField::default()
    }

    /// The coordinate field `∂v`.
    pub fn coordinate(v: Var) -> Self {
        let mut f = VectorField::zero();
        f.comps[v.index()] = ExpPoly::from(Poly::one());
        f
    }

    pub fn component(&self, i: usize) -> &ExpPoly {
        &self.comps[i]
    }

    pub fn components(&self) -> &[ExpPoly; 3] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ExpPoly::is_zero)
    }

    /// Derivation `f ↦ X^i ∂_i f`.
    pub fn apply(&self, f: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.derivative(Var::from_index(i));
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField::new(self.comps.clone().map(|p| p.scale(c)))
    }

    /// `Σ c_i X_i`.
    pub fn combination(coeffs: &[Rational], fields: &[VectorField]) -> VectorField {
        let mut out = VectorField::zero();
        for (c, f) in coeffs.iter().zip(fields) {
            if !c.is_zero() {
                out = &out + &f.scale(c);
            }
        }
        out
    }

    /// Exact value at `p`; `None` when an exponential factor is irrational there.
    pub fn eval_exact(&self, p: &Point) -> Option<[Rational; 3]> {
        let [a, b, c] = &self.comps;
        Some([a.eval_exact(p)?, b.eval_exact(p)?, c.eval_exact(p)?])
    }

    pub fn eval_f64(&self, p: &[f64; 3]) -> [f64; 3] {
        self.comps.clone().map(|c| c.eval_f64(p))
    }

    /// Coefficient map keyed by `(component, rate, monomial)`.
    pub fn coefficients(&self) -> BTreeMap<(usize, Rate, Monomial), Rational> {
        let mut out = BTreeMap::new();
        for (i, c) in self.comps.iter().enumerate() {
            for ((r, m), v) in c.coefficients() {
                out.insert((i, r.clone(), *m), v.clone());
            }
        }
        out
    }
}

impl std::ops::Add<&VectorField> for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        let mut comps = self.comps.clone();
        for (c, r) in comps.iter_mut().zip(&rhs.comps) {
            *c += r;
        }
        VectorField::new(comps)
    }
}

impl std::ops::Sub<&VectorField> for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        let mut comps = self.comps.clone();
        for (c, r) in comps.iter_mut().zip(&rhs.comps) {
            *c -= r;
        }
        VectorField::new(comps)
    }
}

impl std::ops::Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField::new(self.comps.clone().map(|c| -c))
    }
}

impl fmt::Display for VectorField {
    /// `h*∂x - ∂z`, `(x + 1)*∂h`; `0` for the zero field.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = Var::from_index(i).name();
            let text = c.to_string();
            let simple = !text.contains(' ');
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            let term = if body == "1" {
                format!("∂{name}")
            } else if simple {
                format!("{body}*∂{name}")
            } else {
                format!("({body})*∂{name}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `[X, Y]^k = X^i ∂_i Y^k − Y^i ∂_i X^k`.
pub fn bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let mut comps: [ExpPoly; 3] = Default::default();
    for (k, c) in comps.iter_mut().enumerate() {
        *c = &x.apply(y.component(k)) - &y.apply(x.component(k));
    }
    VectorField::new(comps)
}

/// `(L_X g)_ij = X^k ∂_k g_ij + g_kj ∂_i X^k + g_ik ∂_j X^k`.
pub fn lie_derivative_metric(g: &Metric, x: &VectorField) -> [[ExpPoly; 3]; 3] {
    let mut out: [[ExpPoly; 3]; 3] = Default::default();
    let dx: [[ExpPoly; 3]; 3] =
        std::array::from_fn(|k| std::array::from_fn(|i| x.component(k).derivative(Var::from_index(i))));
    for i in 0..3 {
        for j in i..3 {
            let mut acc = x.apply(&ExpPoly::from(g.component(i, j).clone()));
            for k in 0..3 {
                let gkj = g.component(k, j);
                if !gkj.is_zero() {
                    acc += &dx[k][i].mul_poly(gkj);
                }
                let gik = g.component(i, k);
                if !gik.is_zero() {
                    acc += &dx[k][j].mul_poly(gik);
                }
            }
            out[j][i] = acc.clone();
            out[i][j] = acc;
        }
    }
    out
}

pub fn is_killing(g: &Metric, x: &VectorField) -> bool {
    lie_derivative_metric(g, x).iter().flatten().all(ExpPoly::is_zero)
}

/// Solutions of the Killing equation found by [`solve_killing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingBasis {
    fields: Vec<VectorField>,
    metric: Metric,
}

impl KillingBasis {
    /// Wraps fields already known to be Killing and independent.
    pub fn from_fields(metric: Metric, fields: Vec<VectorField>) -> Self {
        KillingBasis { fields, metric }
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.fields.len()
    }

    /// Structure constants `[X_i, X_j] = Σ c^k_ij X_k` in this basis.
    pub fn algebra(&self) -> Result<LieAlgebra, KillingError> {
        structure_constants(&self.fields)
    }
}

/// Structure constants `[X_i, X_j] = Σ c^k_ij X_k` of fields closed under bracket.
pub fn structure_constants(fields: &[VectorField]) -> Result<LieAlgebra, KillingError> {
    let n = fields.len();
    let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let b = bracket(&fields[i], &fields[j]);
            let coeffs = express_in(fields, &b).ok_or(KillingError::NotClosed(i, j))?;
            for (k, v) in coeffs.into_iter().enumerate() {
                c[j][i][k] = -v.clone();
                c[i][j][k] = v;
            }
        }
    }
    Ok(LieAlgebra::new(n, c)?)
}

/// Coefficients `c` with `target = Σ c_i fields_i`, if `target` lies in the span.
pub fn express_in(fields: &[VectorField], target: &VectorField) -> Option<Vec<Rational>> {
    let maps: Vec<_> = fields.iter().map(VectorField::coefficients).collect();
    let tmap = target.coefficients();
    let mut keys: Vec<_> = maps.iter().flat_map(|m| m.keys().cloned()).collect();
    keys.extend(tmap.keys().cloned());
    keys.sort();
    keys.dedup();
    let m: Matrix = keys
        .iter()
        .map(|k| maps.iter().map(|f| f.get(k).cloned().unwrap_or_else(Rational::zero)).collect())
        .collect();
    let b: Vec<Rational> = keys
        .iter()
        .map(|k| tmap.get(k).cloned().unwrap_or_else(Rational::zero))
        .collect();
    if keys.is_empty() {
        return Some(vec![Rational::zero(); fields.len()]);
    }
    linalg::solve(&m, &b)
}

/// Linear independence over the rationals of the coefficient vectors.
pub fn are_independent(fields: &[VectorField]) -> bool {
    let maps: Vec<_> = fields.iter().map(VectorField::coefficients).collect();
    let mut keys: Vec<_> = maps.iter().flat_map(|m| m.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let m: Matrix = keys
        .iter()
        .map(|k| maps.iter().map(|f| f.get(k).cloned().unwrap_or_else(Rational::zero)).collect())
        .collect();
    fields.is_empty() || linalg::rank(&m) == fields.len()
}

/// Killing fields of the form `Σ_r e^{r·(x,h,z)} P_r` with polynomial `P_r` of
/// degree at most `max_degree`, for each rate `r` in `exp_rates` (the zero
/// rate is always included). Sectors with different rates decouple because
/// the metric is polynomial, so each is solved separately; the basis lists
/// the zero-rate sector first, then the others in the given order.
pub fn solve_killing(g: &Metric, max_degree: u32, exp_rates: &[Rate]) -> Result<KillingBasis, KillingError> {
    if max_degree > MAX_SOLVER_DEGREE {
        return Err(KillingError::DegreeTooLarge(max_degree));
    }
    let mut rates = vec![Rate::zero()];
    for r in exp_rates {
        if !rates.contains(r) {
            rates.push(r.clone());
        }
    }
    let monos = Monomial::up_to_degree(max_degree);
    let mut fields = Vec::new();
    for rate in &rates {
        fields.extend(solve_sector(g, &monos, rate));
    }
    Ok(KillingBasis {
        fields,
        metric: g.clone(),
    })
}

fn solve_sector(g: &Metric, monos: &[Monomial], rate: &Rate) -> Vec<VectorField> {
    let pairs = crate::geometry::UPPER;
    let ncols = 3 * monos.len();
    // Column (k, m) is the unknown coefficient of e^{rate} m in component k.
    let mut rows: BTreeMap<(usize, Monomial), Vec<Rational>> = BTreeMap::new();
    for k in 0..3 {
        for (mi, m) in monos.iter().enumerate() {
            let col = k * monos.len() + mi;
            let p = Poly::monomial(*m, Rational::one());
            // ∂_i (e^{r·p} P) = e^{r·p} (∂_i P + r_i P).
            let d: [Poly; 3] = std::array::from_fn(|i| {
                let v = Var::from_index(i);
                &p.derivative(v) + &p.scale(rate.component(v))
            });
            for (pi, &(i, j)) in pairs.iter().enumerate() {
                let mut e = &p * &g.component(i, j).derivative(Var::from_index(k));
                e += &(g.component(k, j) * &d[i]);
                e += &(g.component(i, k) * &d[j]);
                for (mono, c) in e.terms() {
                    rows.entry((pi, *mono))
                        .or_insert_with(|| vec![Rational::zero(); ncols])[col] += c;
                }
            }
        }
    }
    let m: Matrix = rows.into_values().collect();
    linalg::nullspace(&m, ncols)
        .into_iter()
        .map(|v| {
            let comps: [ExpPoly; 3] = std::array::from_fn(|k| {
                let poly = Poly::from_terms(
                    monos
                        .iter()
                        .enumerate()
                        .map(|(mi, mono)| (*mono, v[k * monos.len() + mi].clone())),
                );
                ExpPoly::with_rate(rate.clone(), poly)
            });
            VectorField::new(comps)
        })
        .collect()
}

fn values_exact(fields: &[VectorField], p: &Point) -> Option<Matrix> {
    fields
        .iter()
        .map(|f| f.eval_exact(p).map(|v| v.to_vec()))
        .collect()
}

/// Rank of a floating-point matrix by partial pivoting, relative tolerance `tol`.
pub fn numeric_rank(mut m: Vec<Vec<f64>>, tol: f64) -> usize {
    let scale = m.iter().flatten().fold(1.0f64, |a, &b| a.max(b.abs()));
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some((p, best)) = (rank..m.len())
            .map(|i| (i, m[i][c].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            break;
        };
        if best <= tol * scale {
            continue;
        }
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            let f = m[i][c] / m[rank][c];
            for j in c..cols {
                m[i][j] -= f * m[rank][j];
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the span of the values of `fields` at `p`. Exact when every
/// exponential factor is rational at `p`, otherwise computed in `f64`.
pub fn evaluation_rank(fields: &[VectorField], p: &Point) -> usize {
    if fields.is_empty() {
        return 0;
    }
    if let Some(m) = values_exact(fields, p) {
        return linalg::rank(&m);
    }
    let pf = [to_f64(&p[0]), to_f64(&p[1]), to_f64(&p[2])];
    let m: Vec<Vec<f64>> = fields.iter().map(|f| f.eval_f64(&pf).to_vec()).collect();
    numeric_rank(m, NUMERIC_RANK_TOL)
}

/// Coefficient vectors of combinations of `fields` vanishing at `p`.
pub fn isotropy_coefficients(fields: &[VectorField], p: &Point) -> Result<Vec<Vec<Rational>>, KillingError> {
    let values = values_exact(fields, p).ok_or(KillingError::InexactEvaluation)?;
    // Columns are fields, rows are the three components.
    let m = linalg::transpose(&values);
    Ok(linalg::nullspace(&m, fields.len()))
}

/// Basis of the fields in the span of `fields` that vanish at `p`.
pub fn isotropy_subalgebra(fields: &[VectorField], p: &Point) -> Result<Vec<VectorField>, KillingError> {
    Ok(isotropy_coefficients(fields, p)?
        .iter()
        .map(|c| VectorField::combination(c, fields))
        .collect())
}

/// Determinant of the component matrix of three fields.
pub fn vol_determinant(fields: &[VectorField; 3]) -> ExpPoly {
    let a = |i: usize, j: usize| fields[i].component(j);
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| &(a(r0, c0) * a(r1, c1)) - &(a(r0, c1) * a(r1, c0));
    &(&(a(0, 0) * &minor(1, 2, 1, 2)) - &(a(0, 1) * &minor(1, 2, 0, 2))) + &(a(0, 2) * &minor(1, 2, 0, 1))
}
