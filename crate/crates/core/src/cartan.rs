//! Curvature of a Lorentz 3-metric seen on null frames, as a function with
//! values in `Λ²ℝ^{2,1*} ⊗ o(2,1)`.
//!
//! Frames are bases `(e, h, f)` with inner products given by the form `𝕀`
//! (`⟨e, f⟩ = ⟨h, h⟩ = 1`, all others zero). Covectors come from the form:
//! `w*(u) = ⟨w, u⟩`, so `e*` reads the `f`-coordinate and `f*` the
//! `e`-coordinate. `y* ⊗ z` is the endomorphism `u ↦ y*(u) z`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::linalg::{self, Matrix};
use crate::exactalg::rational::exact_sqrt;
use crate::exactalg::{Rational, Var};
use crate::geometry::{self, Metric, Point};
use crate::killing::{self, VectorField};
use crate::liealg::form_i;

pub type EndR3 = Matrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CartanError {
    #[error("matrix is not in o(2,1)")]
    NotInO21,
    #[error("matrix is not in O(2,1)")]
    NotInGroup,
    #[error("endomorphism is not 𝕀-symmetric")]
    NotISymmetric,
    #[error("frame does not satisfy bᵀ g(p) b = 𝕀")]
    NotAdapted,
    #[error("no rational adapted frame found at the point")]
    NoRationalFrame,
    #[error("curvature is not defined at the point")]
    Singular,
    #[error("vector field is not Killing: ∇X is not skew at the point")]
    NotKilling,
    #[error("field does not evaluate exactly at the point")]
    InexactEvaluation,
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
}

pub const E: usize = 0;
pub const H: usize = 1;
pub const F: usize = 2;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn mat(rows: [[i64; 3]; 3]) -> Matrix {
    rows.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect()
}

/// `E = e ⊗ h*`-type generator: `E h = −e`, `E f = h`.
pub fn gen_e() -> EndR3 {
    mat([[0, -1, 0], [0, 0, 1], [0, 0, 0]])
}

/// `H = diag(1, 0, −1)`.
pub fn gen_h() -> EndR3 {
    mat([[1, 0, 0], [0, 0, 0], [0, 0, -1]])
}

/// `F e = −h`, `F h = f`.
pub fn gen_f() -> EndR3 {
    mat([[0, 0, 0], [-1, 0, 0], [0, 1, 0]])
}

/// `E`, `H`, `F` in that order.
pub fn generators() -> [EndR3; 3] {
    [gen_e(), gen_h(), gen_f()]
}

pub fn basis_vector(i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 3];
    v[i] = Rational::one();
    v
}

/// `M 𝕀 + 𝕀 Mᵀ = 0`.
pub fn is_in_o21(m: &EndR3) -> bool {
    let i = form_i();
    linalg::is_zero_matrix(&linalg::mat_add(
        &linalg::mat_mul(m, &i),
        &linalg::mat_mul(&i, &linalg::transpose(m)),
    ))
}

/// `⟨M u, v⟩ = ⟨u, M v⟩`, i.e. `𝕀 M` is symmetric.
pub fn is_i_symmetric(m: &EndR3) -> bool {
    let im = linalg::mat_mul(&form_i(), m);
    im == linalg::transpose(&im)
}

/// `pᵀ 𝕀 p = 𝕀`.
pub fn is_in_group(p: &Matrix) -> bool {
    let i = form_i();
    linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(p), &i), p) == i
}

/// Coordinates `(a, b, c)` of `M = a E + b H + c F`.
pub fn o21_coords(m: &EndR3) -> Result<[Rational; 3], CartanError> {
    if !is_in_o21(m) {
        return Err(CartanError::NotInO21);
    }
    Ok([m[1][2].clone(), m[0][0].clone(), m[2][1].clone()])
}

pub fn from_o21_coords(c: &[Rational; 3]) -> EndR3 {
    let mut m = linalg::zeros(3, 3);
    for (coef, g) in c.iter().zip(generators()) {
        if !coef.is_zero() {
            m = linalg::mat_add(&m, &linalg::mat_scale(&g, coef));
        }
    }
    m
}

/// The covector `w*` as a row of coefficients on coordinates.
pub fn dual(w: &[Rational]) -> Vec<Rational> {
    linalg::mat_vec(&form_i(), w)
}

/// Matrix of `y* ⊗ z`.
pub fn tensor(y: &[Rational], z: &[Rational]) -> EndR3 {
    let ys = dual(y);
    z.iter()
        .map(|zi| ys.iter().map(|yj| zi * yj).collect())
        .collect()
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    linalg::mat_sub(&linalg::mat_mul(a, b), &linalg::mat_mul(b, a))
}

/// The basis 2-forms `e*∧h*`, `e*∧f*`, `h*∧f*`, by index pair.
pub const PAIRS: [(usize, usize); 3] = [(E, H), (E, F), (H, F)];

/// Element of `Λ²ℝ^{2,1*} ⊗ o(2,1)`: `coeffs[p][g]` multiplies
/// `PAIRS[p]` (as `a*∧b*`) tensored with generator `g` of `(E, H, F)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CurvatureModuleElement {
    pub coeffs: [[Rational; 3]; 3],
}

impl CurvatureModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `sign · a*∧b* ⊗ X_g` for arbitrary basis indices `a ≠ b`.
    pub fn simple(a: usize, b: usize, g: usize) -> Self {
        let mut out = Self::zero();
        let (p, sign) = match PAIRS.iter().position(|&pr| pr == (a, b)) {
            Some(p) => (p, Rational::one()),
            None => (
                PAIRS.iter().position(|&pr| pr == (b, a)).expect("distinct basis indices"),
                -Rational::one(),
            ),
        };
        out.coeffs[p][g] = sign;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CurvatureModuleElement {
            coeffs: self.coeffs.clone().map(|row| row.map(|x| x * c)),
        }
    }

    /// Value `κ(u, v) ∈ o(2,1)`.
    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> EndR3 {
        let du = dual(u);
        let dv = dual(v);
        // (a*∧b*)(u, v) = ⟨a, u⟩⟨b, v⟩ − ⟨a, v⟩⟨b, u⟩ and ⟨a, u⟩ = (𝕀u)_a.
        let mut m = linalg::zeros(3, 3);
        for (p, &(a, b)) in PAIRS.iter().enumerate() {
            let w = &du[a] * &dv[b] - &dv[a] * &du[b];
            if w.is_zero() {
                continue;
            }
            for (g, gen) in generators().iter().enumerate() {
                let c = &self.coeffs[p][g] * &w;
                if !c.is_zero() {
                    m = linalg::mat_add(&m, &linalg::mat_scale(gen, &c));
                }
            }
        }
        m
    }

    /// The element whose values on basis pairs are `k(a, b)`.
    ///
    /// `a*∧b*` is dual to the pair `(ā, b̄)` of `𝕀`-partners (`ē = f`, `h̄ = h`),
    /// so its coefficient is read off `k(ā, b̄)`.
    pub fn from_values(k: impl Fn(usize, usize) -> EndR3) -> Result<Self, CartanError> {
        let partner = |i: usize| 2 - i;
        let mut out = Self::zero();
        for (p, &(a, b)) in PAIRS.iter().enumerate() {
            out.coeffs[p] = o21_coords(&k(partner(a), partner(b)))?;
        }
        Ok(out)
    }

    /// `Σ_cyclic κ(u, v) w = 0` on basis vectors.
    pub fn satisfies_bianchi(&self) -> bool {
        let (e, h, f) = (basis_vector(E), basis_vector(H), basis_vector(F));
        let terms = [
            linalg::mat_vec(&self.eval(&e, &h), &f),
            linalg::mat_vec(&self.eval(&h, &f), &e),
            linalg::mat_vec(&self.eval(&f, &e), &h),
        ];
        (0..3).all(|i| (&terms[0][i] + &terms[1][i] + &terms[2][i]).is_zero())
    }
}

impl std::ops::Add<&CurvatureModuleElement> for &CurvatureModuleElement {
    type Output = CurvatureModuleElement;
    fn add(self, rhs: &CurvatureModuleElement) -> CurvatureModuleElement {
        let mut out = self.clone();
        for p in 0..3 {
            for g in 0..3 {
                out.coeffs[p][g] += &rhs.coeffs[p][g];
            }
        }
        out
    }
}

impl fmt::Display for CurvatureModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["e", "h", "f"];
        const GENS: [&str; 3] = ["E", "H", "F"];
        let mut first = true;
        for (p, &(a, b)) in PAIRS.iter().enumerate() {
            for g in 0..3 {
                let c = &self.coeffs[p][g];
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({c}) {}*^{}* ⊗ {}", NAMES[a], NAMES[b], GENS[g])?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `φ(v*∧w*⊗X) = (Xv)*⊗w − (Xw)*⊗v`, extended linearly.
pub fn phi(w: &CurvatureModuleElement) -> EndR3 {
    let mut out = linalg::zeros(3, 3);
    let gens = generators();
    for (p, &(a, b)) in PAIRS.iter().enumerate() {
        let (va, vb) = (basis_vector(a), basis_vector(b));
        for (g, x) in gens.iter().enumerate() {
            let c = &w.coeffs[p][g];
            if c.is_zero() {
                continue;
            }
            let term = linalg::mat_sub(
                &tensor(&linalg::mat_vec(x, &va), &vb),
                &tensor(&linalg::mat_vec(x, &vb), &va),
            );
            out = linalg::mat_add(&out, &linalg::mat_scale(&term, c));
        }
    }
    out
}

/// One row of the `E₀ ⊕ E₂` table: a name, the endomorphism, and a preimage under `φ`.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub name: &'static str,
    pub endomorphism: EndR3,
    pub preimage: CurvatureModuleElement,
}

fn sum(terms: &[(i64, usize, usize, usize)]) -> CurvatureModuleElement {
    terms.iter().fold(CurvatureModuleElement::zero(), |acc, &(c, a, b, g)| {
        &acc + &CurvatureModuleElement::simple(a, b, g).scale(&r(c))
    })
}

fn tensor_sum(terms: &[(i64, usize, usize)]) -> EndR3 {
    terms.iter().fold(linalg::zeros(3, 3), |acc, &(c, y, z)| {
        linalg::mat_add(&acc, &linalg::mat_scale(&tensor(&basis_vector(y), &basis_vector(z)), &r(c)))
    })
}

/// The basis of `E₀ ⊕ E₂` with preimages spanning the possible curvature values.
///
/// The `m_eh` preimage is `f*∧e*⊗E + e*∧h*⊗H`; see [`m_eh_preimage_as_printed`].
pub fn table() -> Vec<TableRow> {
    vec![
        TableRow {
            name: "m_d",
            endomorphism: tensor_sum(&[(2, F, E), (2, H, H), (2, E, F)]),
            preimage: sum(&[(1, H, E, F), (1, E, F, H), (1, F, H, E)]),
        },
        TableRow {
            name: "m_e2",
            endomorphism: tensor_sum(&[(1, E, E)]),
            preimage: sum(&[(1, E, H, E)]),
        },
        TableRow {
            name: "m_eh",
            endomorphism: tensor_sum(&[(1, H, E), (1, E, H)]),
            preimage: sum(&[(1, F, E, E), (1, E, H, H)]),
        },
        TableRow {
            name: "m_2h2-ef",
            endomorphism: tensor_sum(&[(2, H, H), (-1, F, E), (-1, E, F)]),
            preimage: sum(&[(2, F, E, H), (1, F, H, E), (1, H, E, F)]),
        },
        TableRow {
            name: "m_hf",
            endomorphism: tensor_sum(&[(1, F, H), (1, H, F)]),
            preimage: sum(&[(1, H, F, H), (1, F, E, F)]),
        },
        TableRow {
            name: "m_f2",
            endomorphism: tensor_sum(&[(1, F, F)]),
            preimage: sum(&[(1, H, F, F)]),
        },
    ]
}

/// The preimage `f*∧e*⊗E + f*∧h*⊗H` that is commonly printed for `m_eh`; its
/// image is `h*⊗e − f*⊗h`, which is not `𝕀`-symmetric.
pub fn m_eh_preimage_as_printed() -> CurvatureModuleElement {
    sum(&[(1, F, E, E), (1, F, H, H)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub name: &'static str,
    pub image_matches: bool,
    pub i_symmetric: bool,
    pub bianchi: bool,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.image_matches && self.i_symmetric && self.bianchi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub rows: Vec<RowCheck>,
    pub m_d_is_twice_identity: bool,
}

impl TableReport {
    pub fn all_passed(&self) -> bool {
        self.m_d_is_twice_identity && self.rows.iter().all(RowCheck::passed)
    }
}

/// Checks `φ(preimage) = endomorphism` for every row, plus `m_d = 2 Id`.
pub fn verify_table() -> TableReport {
    let rows = table();
    let m_d_is_twice_identity = rows[0].endomorphism == linalg::mat_scale(&linalg::identity(3), &r(2));
    let rows = rows
        .iter()
        .map(|row| RowCheck {
            name: row.name,
            image_matches: phi(&row.preimage) == row.endomorphism,
            i_symmetric: is_i_symmetric(&row.endomorphism),
            bianchi: row.preimage.satisfies_bianchi(),
        })
        .collect();
    TableReport {
        rows,
        m_d_is_twice_identity,
    }
}

/// `(p·κ)(u, v) = p κ(p⁻¹u, p⁻¹v) p⁻¹` for `p ∈ O(2,1)`.
pub fn act_group(p: &Matrix, w: &CurvatureModuleElement) -> Result<CurvatureModuleElement, CartanError> {
    if !is_in_group(p) {
        return Err(CartanError::NotInGroup);
    }
    let pinv = linalg::inverse(p).ok_or(CartanError::NotInGroup)?;
    CurvatureModuleElement::from_values(|a, b| {
        let u = linalg::mat_vec(&pinv, &basis_vector(a));
        let v = linalg::mat_vec(&pinv, &basis_vector(b));
        conj(p, &w.eval(&u, &v))
    })
}

/// `(A·κ)(u, v) = [A, κ(u, v)] − κ(Au, v) − κ(u, Av)` for `A ∈ o(2,1)`.
pub fn act_algebra(a: &EndR3, w: &CurvatureModuleElement) -> Result<CurvatureModuleElement, CartanError> {
    if !is_in_o21(a) {
        return Err(CartanError::NotInO21);
    }
    CurvatureModuleElement::from_values(|i, j| {
        let (u, v) = (basis_vector(i), basis_vector(j));
        let au = linalg::mat_vec(a, &u);
        let av = linalg::mat_vec(a, &v);
        let t = commutator(a, &w.eval(&u, &v));
        linalg::mat_sub(&linalg::mat_sub(&t, &w.eval(&au, &v)), &w.eval(&u, &av))
    })
}

/// `p M p⁻¹`.
pub fn conj(p: &Matrix, m: &EndR3) -> EndR3 {
    let pinv = linalg::inverse(p).expect("invertible");
    linalg::mat_mul(&linalg::mat_mul(p, m), &pinv)
}

/// `exp(tN) = I + tN + t²N²/2` for `N ∈ {E, F}`, which satisfy `N³ = 0`.
fn exp_nilpotent(n: &Matrix, t: &Rational) -> Matrix {
    let n2 = linalg::mat_mul(n, n);
    let half = Rational::new(1.into(), 2.into());
    linalg::mat_add(
        &linalg::mat_add(&linalg::identity(3), &linalg::mat_scale(n, t)),
        &linalg::mat_scale(&n2, &(t * t * half)),
    )
}

pub fn exp_e(t: &Rational) -> Matrix {
    exp_nilpotent(&gen_e(), t)
}

pub fn exp_f(t: &Rational) -> Matrix {
    exp_nilpotent(&gen_f(), t)
}

/// `diag(λ, 1, 1/λ)`, the torus generated by `H`.
pub fn torus(lambda: &Rational) -> Matrix {
    let mut m = linalg::identity(3);
    m[0][0] = lambda.clone();
    m[2][2] = lambda.recip();
    m
}

/// Splits an `𝕀`-symmetric `M` as `y m_d + (tracefree part)`, with
/// `y = tr M / 6` and tracefree part `M − 2y Id`.
///
/// Endomorphisms with a component in `o(2,1)` (the `𝕀`-antisymmetric part,
/// which is the complement of `E₀ ⊕ E₂` used here) are rejected.
pub fn decompose_ricci(m: &EndR3) -> Result<(Rational, EndR3), CartanError> {
    if !is_i_symmetric(m) {
        return Err(CartanError::NotISymmetric);
    }
    let y = linalg::trace(m) / r(6);
    let tracefree = linalg::mat_sub(m, &linalg::mat_scale(&linalg::identity(3), &(&y * r(2))));
    Ok((y, tracefree))
}

/// A frame `b` at `p` (columns are the images of `e, h, f`) with `bᵀ g(p) b = 𝕀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedFrame {
    b: Matrix,
    binv: Matrix,
    point: Point,
}

impl AdaptedFrame {
    pub fn new(g: &Metric, point: Point, b: Matrix) -> Result<Self, CartanError> {
        let gram = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&b), &g.at(&point)), &b);
        if gram != form_i() {
            return Err(CartanError::NotAdapted);
        }
        let binv = linalg::inverse(&b).ok_or(CartanError::NotAdapted)?;
        Ok(AdaptedFrame { b, binv, point })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.b
    }

    pub fn point(&self) -> &Point {
        &self.point
    }

    /// The frame `b p`, adapted whenever `p ∈ O(2,1)`.
    pub fn change(&self, g: &Metric, p: &Matrix) -> Result<Self, CartanError> {
        AdaptedFrame::new(g, self.point.clone(), linalg::mat_mul(&self.b, p))
    }

    /// Frame coordinates `b⁻¹ v` of a tangent vector.
    pub fn to_frame(&self, v: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.binv, v)
    }

    /// `b⁻¹ M b` for an endomorphism of the tangent space.
    pub fn conjugate(&self, m: &Matrix) -> Matrix {
        linalg::mat_mul(&linalg::mat_mul(&self.binv, m), &self.b)
    }
}

fn small_vectors() -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = (0..3).map(basis_vector).collect();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                let v = vec![r(a), r(b), r(c)];
                if v.iter().any(|x| !x.is_zero()) && !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn inner(g: &Matrix, u: &[Rational], v: &[Rational]) -> Rational {
    linalg::mat_vec(g, v).iter().zip(u).map(|(a, b)| a * b).sum()
}

/// Searches a rational frame with `bᵀ g(p) b = 𝕀`: a unit spacelike `h` from
/// the coordinate axes or small integer vectors, then the two null lines of
/// `h^⊥`, scaled so that `⟨e, f⟩ = 1`. Points that would need irrational
/// square roots are rejected.
pub fn adapted_frame(g: &Metric, p: &Point) -> Result<AdaptedFrame, CartanError> {
    let gp = g.at(p);
    for cand in small_vectors() {
        let n = inner(&gp, &cand, &cand);
        if !n.is_positive() {
            continue;
        }
        let Some(s) = exact_sqrt(&n) else { continue };
        let h: Vec<Rational> = cand.iter().map(|x| x / &s).collect();
        let row = vec![linalg::mat_vec(&gp, &h)];
        let plane = linalg::nullspace(&row, 3);
        let (a, b) = (&plane[0], &plane[1]);
        let (qa, qab, qb) = (inner(&gp, a, a), inner(&gp, a, b), inner(&gp, b, b));
        let disc = &qab * &qab - &qa * &qb;
        let Some(root) = exact_sqrt(&disc) else { continue };
        let comb = |s: &Rational, t: &Rational| -> Vec<Rational> {
            a.iter().zip(b).map(|(x, y)| s * x + t * y).collect()
        };
        // Null directions s a + t b solve qa s² + 2 qab s t + qb t² = 0.
        let (n1, n2) = if qa.is_zero() {
            (a.clone(), comb(&(-&qb / (r(2) * &qab)), &Rational::one()))
        } else {
            (
                comb(&(-&qab + &root), &qa),
                comb(&(-&qab - &root), &qa),
            )
        };
        let pairing = inner(&gp, &n1, &n2);
        if pairing.is_zero() {
            continue;
        }
        let f: Vec<Rational> = n2.iter().map(|x| x / &pairing).collect();
        let bm: Matrix = (0..3).map(|i| vec![n1[i].clone(), h[i].clone(), f[i].clone()]).collect();
        if let Ok(frame) = AdaptedFrame::new(g, p.clone(), bm) {
            return Ok(frame);
        }
    }
    Err(CartanError::NoRationalFrame)
}

/// Riemann endomorphisms `R(∂_j, ∂_k)` at `p`, as `[j][k]` matrices `(l, i)`.
fn curvature_at(g: &Metric, p: &Point) -> Result<Vec<Vec<Matrix>>, CartanError> {
    let rm = geometry::riemann(g);
    let mut out = vec![vec![linalg::zeros(3, 3); 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            for l in 0..3 {
                for i in 0..3 {
                    out[j][k][l][i] = rm.get(l, i, j, k).eval(p).ok_or(CartanError::Singular)?;
                }
            }
        }
    }
    Ok(out)
}

fn curvature_on(rk: &[Vec<Matrix>], u: &[Rational], v: &[Rational]) -> Matrix {
    let mut m = linalg::zeros(3, 3);
    for j in 0..3 {
        for k in 0..3 {
            let c = &u[j] * &v[k];
            if !c.is_zero() {
                m = linalg::mat_add(&m, &linalg::mat_scale(&rk[j][k], &c));
            }
        }
    }
    m
}

/// `κ_b(u, v) = b⁻¹ R(bu, bv) b`.
pub fn kappa_at_frame(g: &Metric, b: &AdaptedFrame) -> Result<CurvatureModuleElement, CartanError> {
    let rk = curvature_at(g, b.point())?;
    CurvatureModuleElement::from_values(|i, j| {
        let u = linalg::mat_vec(b.matrix(), &basis_vector(i));
        let v = linalg::mat_vec(b.matrix(), &basis_vector(j));
        b.conjugate(&curvature_on(&rk, &u, &v))
    })
}

/// The Ricci endomorphism in frame coordinates, with the trace convention
/// `⟨A v, w⟩ = tr R(v, ·) w`. This is `−b⁻¹ A b` for the operator of
/// [`geometry::ricci_operator`], whose convention is `Ric(v, w) = tr R(·, v) w`.
pub fn ricci_at_frame(g: &Metric, b: &AdaptedFrame) -> Result<EndR3, CartanError> {
    let a = geometry::ricci_operator(g).at(b.point()).ok_or(CartanError::Singular)?;
    Ok(linalg::mat_scale(&b.conjugate(&a), &-Rational::one()))
}

/// Element `(A, a)` of `o(2,1) ⋉ ℝ^{2,1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HElement {
    pub p_part: EndR3,
    pub translation: Vec<Rational>,
}

impl HElement {
    pub fn zero() -> Self {
        HElement {
            p_part: linalg::zeros(3, 3),
            translation: vec![Rational::zero(); 3],
        }
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_matrix(&self.p_part) && self.translation.iter().all(Zero::is_zero)
    }

    /// `[(A, a), (B, b)] = ([A, B], A b − B a)`.
    pub fn bracket(&self, other: &HElement) -> HElement {
        let t1 = linalg::mat_vec(&self.p_part, &other.translation);
        let t2 = linalg::mat_vec(&other.p_part, &self.translation);
        HElement {
            p_part: commutator(&self.p_part, &other.p_part),
            translation: t1.iter().zip(&t2).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn sub(&self, other: &HElement) -> HElement {
        HElement {
            p_part: linalg::mat_sub(&self.p_part, &other.p_part),
            translation: self
                .translation
                .iter()
                .zip(&other.translation)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// `ω_b(X) = (b⁻¹ (∇X)(p) b, b⁻¹ X(p))` for a Killing field `X`, where
/// `(∇X)(u) = ∇_u X`.
pub fn omega_of_killing(g: &Metric, x: &VectorField, b: &AdaptedFrame) -> Result<HElement, CartanError> {
    let gamma = geometry::christoffel(g);
    let nabla = gamma.nabla(x)?;
    let p = b.point();
    let mut m = linalg::zeros(3, 3);
    for k in 0..3 {
        for i in 0..3 {
            m[k][i] = nabla[k][i].eval_exact(p).ok_or(CartanError::InexactEvaluation)?;
        }
    }
    let p_part = b.conjugate(&m);
    if !is_in_o21(&p_part) {
        return Err(CartanError::NotKilling);
    }
    let value = x.eval_exact(p).ok_or(CartanError::InexactEvaluation)?;
    Ok(HElement {
        p_part,
        translation: b.to_frame(&value),
    })
}

/// `ω([X, Y]) − [ω(Y), ω(X)] − K(X, Y)`, which vanishes for Killing fields.
pub fn check_identity(
    g: &Metric,
    x: &VectorField,
    y: &VectorField,
    b: &AdaptedFrame,
) -> Result<HElement, CartanError> {
    let wx = omega_of_killing(g, x, b)?;
    let wy = omega_of_killing(g, y, b)?;
    let wxy = omega_of_killing(g, &killing::bracket(x, y), b)?;
    let kappa = kappa_at_frame(g, b)?;
    let k = HElement {
        p_part: kappa.eval(&wx.translation, &wy.translation),
        translation: vec![Rational::zero(); 3],
    };
    Ok(wxy.sub(&wy.bracket(&wx)).sub(&k))
}

/// Coordinates of `∂v` as a vector.
pub fn coordinate_vector(v: Var) -> Vec<Rational> {
    basis_vector(v.index())
}
