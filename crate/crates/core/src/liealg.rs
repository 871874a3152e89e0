//! Finite-dimensional real Lie algebras given by rational structure constants,
//! and the classifier for the algebras that occur as Killing algebras of
//! three-dimensional Lorentz metrics.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::linalg::{self, Matrix};
use crate::exactalg::rational::{exact_sqrt, fmt_compact};
use crate::exactalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("structure constants must have shape {0}x{0}x{0}")]
    Shape(usize),
    #[error("structure constants are not antisymmetric at [{0}, {1}]")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails for basis elements ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("the given vectors do not span a subalgebra")]
    NotSubalgebra,
    #[error("the given vectors are linearly dependent")]
    Dependent,
    #[error("matrix is not in o(2,1): M I + I M^T != 0")]
    NotInO21,
}

/// Lie algebra with basis `X_0..X_{n-1}` and `[X_i, X_j] = Σ_k c[i][j][k] X_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    /// Validates shape, antisymmetry and the Jacobi identity.
    pub fn new(dim: usize, c: Vec<Vec<Vec<Rational>>>) -> Result<Self, LieError> {
        if c.len() != dim || c.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(LieError::Shape(dim));
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(LieError::NotAntisymmetric(i, j));
                    }
                }
            }
        }
        let l = LieAlgebra { dim, c };
        if let Some((i, j, k)) = l.jacobi_violation() {
            return Err(LieError::Jacobi(i, j, k));
        }
        Ok(l)
    }

    /// Builds from the brackets `[X_i, X_j]` for `i < j`; unlisted brackets are zero.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<Rational>)]) -> Result<Self, LieError> {
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(LieError::Shape(dim));
            }
            for k in 0..dim {
                c[*i][*j][k] = v[k].clone();
                c[*j][*i][k] = -v[k].clone();
            }
        }
        LieAlgebra::new(dim, c)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::from_brackets(dim, &[]).expect("abelian algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_ij`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn constants(&self) -> &Vec<Vec<Vec<Rational>>> {
        &self.c
    }

    fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut s = Rational::zero();
                        for m in 0..n {
                            s += &self.c[i][j][m] * &self.c[m][k][l];
                            s += &self.c[j][k][m] * &self.c[m][i][l];
                            s += &self.c[k][i][m] * &self.c[m][j][l];
                        }
                        if !s.is_zero() {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        }
        None
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &f * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad X_i`: entry `(k, j)` is `c^k_ij`.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim;
        (0..n)
            .map(|k| (0..n).map(|j| self.c[i][j][k].clone()).collect())
            .collect()
    }

    /// Matrix of `ad u` for a coordinate vector `u`.
    pub fn ad_of(&self, u: &[Rational]) -> Matrix {
        let mut m = linalg::zeros(self.dim, self.dim);
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                m = linalg::mat_add(&m, &linalg::mat_scale(&self.ad(i), ui));
            }
        }
        m
    }

    /// `tr ad X = 0` for every `X`.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| linalg::trace(&self.ad(i)).is_zero())
    }

    /// Basis (in reduced echelon form) of `[g, g]`.
    pub fn derived_algebra(&self) -> Vec<Vec<Rational>> {
        let n = self.dim;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.c[i][j].clone();
                if v.iter().any(|x| !x.is_zero()) {
                    rows.push(v);
                }
            }
        }
        span_basis(&rows)
    }

    /// Dimensions of `g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ ...` until it stabilizes.
    pub fn derived_series_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.dim];
        let mut current = self.clone();
        loop {
            let d = current.derived_algebra();
            if d.len() == current.dim {
                break;
            }
            dims.push(d.len());
            if d.is_empty() {
                break;
            }
            current = current.subalgebra(&d).expect("derived algebra is a subalgebra");
        }
        dims
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<Rational>> {
        let n = self.dim;
        // u is central iff Σ_i u_i c^k_ij = 0 for all j, k.
        let m: Matrix = (0..n)
            .flat_map(|j| (0..n).map(move |k| (j, k)))
            .map(|(j, k)| (0..n).map(|i| self.c[i][j][k].clone()).collect())
            .collect();
        linalg::nullspace(&m, n)
    }

    /// `B_ij = tr(ad X_i ∘ ad X_j)`.
    pub fn killing_form(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.dim).map(|i| self.ad(i)).collect();
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| linalg::trace(&linalg::mat_mul(&ads[i], &ads[j])))
                    .collect()
            })
            .collect()
    }

    /// Coordinates of `v` in the span of `basis`, if it lies there.
    fn coords_in(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
        if basis.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let m = linalg::transpose(&basis.to_vec());
        linalg::solve(&m, v)
    }

    /// Structure constants of the subalgebra spanned by `basis`, in that basis.
    pub fn subalgebra(&self, basis: &[Vec<Rational>]) -> Result<LieAlgebra, LieError> {
        let d = basis.len();
        if d == 0 {
            return Ok(LieAlgebra::abelian(0));
        }
        if linalg::rank(&basis.to_vec()) != d {
            return Err(LieError::Dependent);
        }
        let mut c = vec![vec![vec![Rational::zero(); d]; d]; d];
        for a in 0..d {
            for b in a + 1..d {
                let v = self.bracket(&basis[a], &basis[b]);
                let coords = Self::coords_in(basis, &v).ok_or(LieError::NotSubalgebra)?;
                for k in 0..d {
                    c[b][a][k] = -coords[k].clone();
                    c[a][b][k] = coords[k].clone();
                }
            }
        }
        LieAlgebra::new(d, c)
    }

    /// The same algebra in the basis `X'_a = Σ_i p[a][i] X_i`; `p` must be invertible.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra, LieError> {
        if p.len() != self.dim {
            return Err(LieError::Shape(self.dim));
        }
        self.subalgebra(p)
    }

    pub fn is_ideal(&self, basis: &[Vec<Rational>]) -> bool {
        (0..self.dim).all(|i| {
            let mut e = vec![Rational::zero(); self.dim];
            e[i] = Rational::one();
            basis
                .iter()
                .all(|b| Self::coords_in(basis, &self.bracket(&e, b)).is_some())
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Eigenvalues of `ad t` on `[g, g]` for the first basis vector `t` outside
    /// the derived algebra, when the algebra is three-dimensional with a
    /// two-dimensional derived algebra and those eigenvalues are rational.
    pub fn complement_eigenvalues(&self) -> Option<(Rational, Rational)> {
        let (tr, det) = self.complement_action()?;
        let disc = &tr * &tr - Rational::from_integer(4.into()) * &det;
        let s = exact_sqrt(&disc)?;
        let two = Rational::from_integer(2.into());
        Some(((&tr + &s) / &two, (&tr - &s) / &two))
    }

    /// Trace and determinant of `ad t` restricted to a two-dimensional derived algebra.
    fn complement_action(&self) -> Option<(Rational, Rational)> {
        let phi = self.complement_matrix()?;
        let tr = &phi[0][0] + &phi[1][1];
        let det = &phi[0][0] * &phi[1][1] - &phi[0][1] * &phi[1][0];
        Some((tr, det))
    }

    fn complement_matrix(&self) -> Option<Matrix> {
        if self.dim != 3 {
            return None;
        }
        let d = self.derived_algebra();
        if d.len() != 2 {
            return None;
        }
        let t = (0..3)
            .map(|i| {
                let mut e = vec![Rational::zero(); 3];
                e[i] = Rational::one();
                e
            })
            .find(|e| Self::coords_in(&d, e).is_none())?;
        let cols: Vec<Vec<Rational>> = d
            .iter()
            .map(|b| Self::coords_in(&d, &self.bracket(&t, b)).expect("derived algebra is an ideal"))
            .collect();
        Some(linalg::transpose(&cols))
    }

    pub fn classify(&self) -> AlgebraClass {
        match self.dim {
            3 => self.classify3(),
            4 => self.classify4(),
            6 => self.classify6(),
            _ => AlgebraClass::Other,
        }
    }

    fn classify3(&self) -> AlgebraClass {
        let d = self.derived_algebra();
        match d.len() {
            0 => AlgebraClass::Abelian,
            1 => {
                let center = self.center();
                if Self::coords_in(&center, &d[0]).is_some() {
                    AlgebraClass::Heisenberg
                } else {
                    AlgebraClass::AffPlusR
                }
            }
            2 => self.classify_solvable(),
            _ => {
                let (pos, neg, zero) = linalg::inertia(&self.killing_form());
                if (pos, neg, zero) == (2, 1, 0) {
                    AlgebraClass::Sl2
                } else {
                    AlgebraClass::Other
                }
            }
        }
    }

    fn classify_solvable(&self) -> AlgebraClass {
        let d = self.derived_algebra();
        let derived = self.subalgebra(&d).expect("derived algebra is a subalgebra");
        if !derived.is_abelian() {
            return AlgebraClass::Other;
        }
        let phi = self.complement_matrix().expect("three-dimensional, derived dimension two");
        let (tr, det) = self.complement_action().expect("same preconditions");
        let disc = &tr * &tr - Rational::from_integer(4.into()) * &det;
        if disc.is_negative() {
            return AlgebraClass::Other;
        }
        if disc.is_zero() {
            let scalar = phi[0][1].is_zero() && phi[1][0].is_zero() && phi[0][0] == phi[1][1];
            return if scalar {
                AlgebraClass::Sol {
                    a: Rational::one(),
                    b: Rational::one(),
                }
            } else {
                AlgebraClass::Other
            };
        }
        if let Some((l1, l2)) = self.complement_eigenvalues() {
            let (small, big) = if l1.abs() <= l2.abs() { (l1, l2) } else { (l2, l1) };
            return AlgebraClass::Sol {
                a: Rational::one(),
                b: big / small,
            };
        }
        // Eigenvalues c ± √ρ with c = tr/2, ρ = disc/4; c ≠ 0 here, otherwise
        // they would be ±√ρ, proportional to (1, −1).
        let two = Rational::from_integer(2.into());
        let c = &tr / &two;
        let rho = &disc / Rational::from_integer(4.into());
        AlgebraClass::SolSurd {
            radicand: &rho / (&c * &c),
        }
    }

    fn classify4(&self) -> AlgebraClass {
        let d = self.derived_algebra();
        if d.len() != 3 {
            return AlgebraClass::Other;
        }
        let sub = self.subalgebra(&d).expect("derived algebra is a subalgebra");
        match sub.classify3() {
            AlgebraClass::Sl2 if self.center().len() == 1 => AlgebraClass::RplusSl2,
            AlgebraClass::Heisenberg => AlgebraClass::RsemidirectHeis,
            _ => AlgebraClass::Other,
        }
    }

    fn classify6(&self) -> AlgebraClass {
        let b = self.killing_form();
        match linalg::inertia(&b) {
            (4, 2, 0) => AlgebraClass::Sl2plusSl2,
            (2, 1, 3) => {
                let kernel = linalg::nullspace(&b, 6);
                let radical = self.subalgebra(&kernel);
                match radical {
                    Ok(r) if r.is_abelian() && self.is_ideal(&kernel) => AlgebraClass::Sl2semidirectR3,
                    _ => AlgebraClass::Other,
                }
            }
            _ => AlgebraClass::Other,
        }
    }
}

/// Row-reduced basis of the span of `rows`.
fn span_basis(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = linalg::rref(&rows.to_vec());
    r.into_iter().take(pivots.len()).collect()
}

/// Isomorphism types recognized by [`LieAlgebra::classify`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraClass {
    Abelian,
    Heisenberg,
    /// `aff(ℝ) ⊕ ℝ`.
    AffPlusR,
    /// `ℝ ⋉ ℝ²` with the generator acting by `diag(a, b)`, normalized to
    /// `a = 1`, `|b| ≥ 1`.
    Sol { a: Rational, b: Rational },
    /// `ℝ ⋉ ℝ²` with eigenvalues proportional to `1 ± √radicand`, irrational.
    SolSurd { radicand: Rational },
    Sl2,
    RplusSl2,
    RsemidirectHeis,
    Sl2plusSl2,
    Sl2semidirectR3,
    Other,
}

impl AlgebraClass {
    pub fn tag(&self) -> &'static str {
        match self {
            AlgebraClass::Abelian => "Abelian",
            AlgebraClass::Heisenberg => "Heisenberg",
            AlgebraClass::AffPlusR => "AffPlusR",
            AlgebraClass::Sol { .. } | AlgebraClass::SolSurd { .. } => "Sol",
            AlgebraClass::Sl2 => "Sl2",
            AlgebraClass::RplusSl2 => "RplusSl2",
            AlgebraClass::RsemidirectHeis => "RsemidirectHeis",
            AlgebraClass::Sl2plusSl2 => "Sl2plusSl2",
            AlgebraClass::Sl2semidirectR3 => "Sl2semidirectR3",
            AlgebraClass::Other => "Other",
        }
    }
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraClass::Sol { a, b } => write!(f, "Sol({}, {})", fmt_compact(a), fmt_compact(b)),
            AlgebraClass::SolSurd { radicand } => {
                write!(f, "Sol(1 + sqrt({0}), 1 - sqrt({0}))", fmt_compact(radicand))
            }
            other => f.write_str(other.tag()),
        }
    }
}

/// `ℝ ⋉ ℝ²` with basis `(t, e1, e2)`, `[t, e1] = a e1`, `[t, e2] = b e2`.
pub fn make_sol(a: Rational, b: Rational) -> LieAlgebra {
    let z = Rational::zero;
    LieAlgebra::from_brackets(3, &[(0, 1, vec![z(), a, z()]), (0, 2, vec![z(), z(), b])]).expect("sol is a Lie algebra")
}

/// Basis `(X, Y, Z)` with `[X, Y] = 0`, `[Y, Z] = X + γ Y`, `[X, Z] = γ X + r Y`,
/// so `ad Z` acts on `span{X, Y}` by `[[−γ, −1], [−r, −γ]]` in the basis `(X, Y)`.
pub fn make_unipotent_case(gamma: Rational, r: Rational) -> LieAlgebra {
    let z = Rational::zero;
    LieAlgebra::from_brackets(
        3,
        &[
            (1, 2, vec![Rational::one(), gamma.clone(), z()]),
            (0, 2, vec![gamma, r, z()]),
        ],
    )
    .expect("unipotent-case algebra is a Lie algebra")
}

/// Basis `(X, Y, Z)` with `[X, Y] = Z`.
pub fn heisenberg() -> LieAlgebra {
    let z = Rational::zero;
    LieAlgebra::from_brackets(3, &[(0, 1, vec![z(), z(), Rational::one()])]).expect("heis")
}

/// Basis `(Y, H, X)` with `[Y, H] = H` and `X` central.
pub fn aff_plus_r() -> LieAlgebra {
    let z = Rational::zero;
    LieAlgebra::from_brackets(3, &[(0, 1, vec![z(), Rational::one(), z()])]).expect("aff + R")
}

/// Basis `(Y, H, T)` with `[Y, H] = H`, `[Y, T] = −T`, `[H, T] = Y`.
pub fn sl2() -> LieAlgebra {
    let z = Rational::zero;
    let o = Rational::one;
    LieAlgebra::from_brackets(
        3,
        &[
            (0, 1, vec![z(), o(), z()]),
            (0, 2, vec![z(), z(), -o()]),
            (1, 2, vec![o(), z(), z()]),
        ],
    )
    .expect("sl2")
}

/// Conjugacy type of an element of `o(2,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsotropyClass {
    Zero,
    Elliptic,
    Semisimple,
    Unipotent,
}

impl IsotropyClass {
    pub fn tag(self) -> &'static str {
        match self {
            IsotropyClass::Zero => "Zero",
            IsotropyClass::Elliptic => "Elliptic",
            IsotropyClass::Semisimple => "Semisimple",
            IsotropyClass::Unipotent => "Unipotent",
        }
    }
}

impl fmt::Display for IsotropyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The form `𝕀` with `⟨e, f⟩ = ⟨h, h⟩ = 1` in the basis `(e, h, f)`.
pub fn form_i() -> Matrix {
    let mut m = linalg::zeros(3, 3);
    for i in 0..3 {
        m[i][2 - i] = Rational::one();
    }
    m
}

/// Classifies `M` with `M 𝕀 + 𝕀 Mᵀ = 0` by its characteristic polynomial `λ³ − qλ`.
pub fn classify_o21_element(m: &Matrix) -> Result<IsotropyClass, LieError> {
    let i = form_i();
    let s = linalg::mat_add(&linalg::mat_mul(m, &i), &linalg::mat_mul(&i, &linalg::transpose(m)));
    if !linalg::is_zero_matrix(&s) {
        return Err(LieError::NotInO21);
    }
    Ok(classify_by_char_poly(m))
}

/// Same classification for any skew endomorphism of a Lorentzian 3-space,
/// using only `q = −c2` of its characteristic polynomial.
pub fn classify_by_char_poly(m: &Matrix) -> IsotropyClass {
    let [_, c2, _] = linalg::char_poly3(m);
    let q = -c2;
    if q.is_positive() {
        IsotropyClass::Semisimple
    } else if q.is_negative() {
        IsotropyClass::Elliptic
    } else if linalg::is_zero_matrix(m) {
        IsotropyClass::Zero
    } else {
        IsotropyClass::Unipotent
    }
}
