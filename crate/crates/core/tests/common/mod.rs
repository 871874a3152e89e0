#![allow(clippy::needless_range_loop)]

//! Independent numeric oracles and random inputs shared by the integration tests.
#![allow(dead_code)]

use quasihom_core::exactalg::rational::{rat, to_f64};
use quasihom_core::exactalg::Rational;
use quasihom_core::geometry::{Metric, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Finite-difference step.
pub const STEP: f64 = 1.0 / 1024.0;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with denominator in `1..=den` and value in `[lo, hi]`.
pub fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    let q = rng.gen_range(1..=den);
    let p = rng.gen_range(lo * q..=hi * q);
    rat(p, q)
}

/// A point with coordinates in `[−1/4, 1/4]`.
pub fn random_point(rng: &mut ChaCha8Rng) -> Point {
    let mut c = || {
        let q = rng.gen_range(4..=64i64);
        let p = rng.gen_range(-(q / 4)..=q / 4);
        rat(p, q)
    };
    [c(), c(), c()]
}

pub fn to_f64_point(p: &Point) -> [f64; 3] {
    [to_f64(&p[0]), to_f64(&p[1]), to_f64(&p[2])]
}

type Gamma = [[[f64; 3]; 3]; 3];

/// Fourth-order central difference of `f` along coordinate `i`.
fn diff<const N: usize>(f: &dyn Fn([f64; 3]) -> [f64; N], p: [f64; 3], i: usize) -> [f64; N] {
    let shifted = |t: f64| {
        let mut q = p;
        q[i] += t;
        f(q)
    };
    let (a, b, c, d) = (shifted(2.0 * STEP), shifted(STEP), shifted(-STEP), shifted(-2.0 * STEP));
    let mut out = [0.0; N];
    for k in 0..N {
        out[k] = (-a[k] + 8.0 * b[k] - 8.0 * c[k] + d[k]) / (12.0 * STEP);
    }
    out
}

fn invert(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let mut inv = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, d) = ((i + 1) % 3, (i + 2) % 3);
            inv[i][j] = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det;
        }
    }
    inv
}

fn flat9(m: [[f64; 3]; 3]) -> [f64; 9] {
    let mut out = [0.0; 9];
    for i in 0..3 {
        for j in 0..3 {
            out[3 * i + j] = m[i][j];
        }
    }
    out
}

fn flat27(g: Gamma) -> [f64; 27] {
    let mut out = [0.0; 27];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                out[9 * k + 3 * i + j] = g[k][i][j];
            }
        }
    }
    out
}

/// `Γ^k_ij = ½ g^{kl}(∂_i g_lj + ∂_j g_li − ∂_l g_ij)` with numerically differentiated `g`.
pub fn christoffel_numeric(g: &Metric, p: [f64; 3]) -> Gamma {
    let metric = |q: [f64; 3]| flat9(g.at_f64(&q));
    let dg: Vec<[f64; 9]> = (0..3).map(|i| diff(&metric, p, i)).collect();
    let d = |i: usize, a: usize, b: usize| dg[i][3 * a + b];
    let ginv = invert(&g.at_f64(&p));
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for l in 0..3 {
                    s += ginv[k][l] * (d(i, l, j) + d(j, l, i) - d(l, i, j));
                }
                gamma[k][i][j] = 0.5 * s;
            }
        }
    }
    gamma
}

/// `R^l_ijk = ∂_j Γ^l_ik − ∂_k Γ^l_ij + Γ^l_jm Γ^m_ik − Γ^l_km Γ^m_ij`, as `[l][i][j][k]`.
pub fn riemann_numeric(g: &Metric, p: [f64; 3]) -> [[[[f64; 3]; 3]; 3]; 3] {
    let gamma_at = |q: [f64; 3]| flat27(christoffel_numeric(g, q));
    let dgamma: Vec<[f64; 27]> = (0..3).map(|i| diff(&gamma_at, p, i)).collect();
    let dg = |j: usize, l: usize, i: usize, k: usize| dgamma[j][9 * l + 3 * i + k];
    let gm = christoffel_numeric(g, p);
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut s = dg(j, l, i, k) - dg(k, l, i, j);
                    for m in 0..3 {
                        s += gm[l][j][m] * gm[m][i][k] - gm[l][k][m] * gm[m][i][j];
                    }
                    r[l][i][j][k] = s;
                }
            }
        }
    }
    r
}

/// `Ric_ij = R^k_ikj`.
pub fn ricci_numeric(g: &Metric, p: [f64; 3]) -> [[f64; 3]; 3] {
    let r = riemann_numeric(g, p);
    let mut ric = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            ric[i][j] = (0..3).map(|k| r[k][i][k][j]).sum();
        }
    }
    ric
}

/// Largest entrywise difference divided by the largest reference entry,
/// with the scale floored at 1 so vanishing tensors compare absolutely.
pub fn relative_error(exact: &[f64], numeric: &[f64]) -> f64 {
    let scale = exact.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let diff = exact
        .iter()
        .zip(numeric)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    diff / scale
}

/// Symbolic curvature data computed once per metric.
pub struct Symbolic {
    pub gamma: quasihom_core::geometry::Christoffel,
    pub riemann: quasihom_core::geometry::RiemannTensor,
    pub ricci: quasihom_core::geometry::RicciOperator,
}

impl Symbolic {
    pub fn new(g: &Metric) -> Self {
        use quasihom_core::geometry::{christoffel, ricci_from, riemann_from};
        let gamma = christoffel(g);
        let riemann = riemann_from(&gamma);
        let ricci = ricci_from(g, &riemann);
        Symbolic { gamma, riemann, ricci }
    }
}

/// Relative errors of the symbolic `(Γ, R, Ric)` against the numeric oracle at `p`.
pub fn oracle_errors(g: &Metric, s: &Symbolic, p: &Point) -> [f64; 3] {
    let pf = to_f64_point(p);
    let (gamma, rm, ric) = (&s.gamma, &s.riemann, &s.ricci);
    let ev = |v: Option<Rational>| to_f64(&v.expect("defined at sample point"));

    let mut sym = Vec::new();
    let mut num = Vec::new();
    let ng = christoffel_numeric(g, pf);
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                sym.push(ev(gamma.get(k, i, j).eval(p)));
                num.push(ng[k][i][j]);
            }
        }
    }
    let e_gamma = relative_error(&sym, &num);

    sym.clear();
    num.clear();
    let nr = riemann_numeric(g, pf);
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    sym.push(ev(rm.get(l, i, j, k).eval(p)));
                    num.push(nr[l][i][j][k]);
                }
            }
        }
    }
    let e_riemann = relative_error(&sym, &num);

    let exact_ric = ric.ricci_at(p).expect("defined at sample point");
    let nric = ricci_numeric(g, pf);
    let sym: Vec<f64> = exact_ric.iter().flatten().map(to_f64).collect();
    let num: Vec<f64> = nric.iter().flatten().copied().collect();
    let e_ricci = relative_error(&sym, &num);
    [e_gamma, e_riemann, e_ricci]
}

/// Metrics outside the family used to exercise the oracle comparisons.
pub fn extra_metrics() -> Vec<Metric> {
    use std::collections::BTreeMap;
    let none = BTreeMap::new();
    let origin = quasihom_core::geometry::origin();
    [
        ["1", "0", "0", "z^3", "1", "0"],
        ["1 + x^2", "0", "0", "1", "0", "-1"],
        ["1", "x*z", "0", "1 + x^2*z^2", "1", "-h^2"],
        ["1", "0", "0", "1", "0", "-1 - h^2"],
    ]
    .iter()
    .map(|e| Metric::parse(*e, &none, origin.clone()).expect("valid test metric"))
    .collect()
}

/// Proptest configuration with a fixed seed and no regression files.
pub fn fixed_config(cases: u32, seed: u64) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed),
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    }
}

/// Integer matrix with entries in `[−2, 2]` and determinant `±1`, by rejection.
pub fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> quasihom_core::exactalg::Matrix {
    use quasihom_core::exactalg::linalg::det;
    use quasihom_core::exactalg::rational::int;
    loop {
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let d = det(&m);
        if d == int(1) || d == int(-1) {
            return m;
        }
    }
}

/// Random product of the exact group generators `exp(tE)`, `exp(tF)`, `diag(λ, 1, 1/λ)`.
pub fn random_group_element(rng: &mut ChaCha8Rng) -> quasihom_core::exactalg::Matrix {
    use quasihom_core::cartan::{exp_e, exp_f, torus};
    use quasihom_core::exactalg::linalg::{identity, mat_mul};
    let mut p = identity(3);
    for _ in 0..rng.gen_range(1..=4) {
        let step = match rng.gen_range(0..3) {
            0 => exp_e(&random_rational(rng, -3, 3, 4)),
            1 => exp_f(&random_rational(rng, -3, 3, 4)),
            _ => {
                let mut l = random_rational(rng, -3, 3, 4);
                if l == quasihom_core::exactalg::rational::zero() {
                    l = quasihom_core::exactalg::rational::int(2);
                }
                torus(&l)
            }
        };
        p = mat_mul(&p, &step);
    }
    p
}
