//! Multivariate gcd over the rationals: content and primitive part with respect
//! to one variable, recursing on the remaining ones, and a primitive
//! pseudo-remainder sequence in the main variable.

use num_traits::One;

use super::poly::{Monomial, Poly, Var};

/// Coefficients of `p` as a polynomial in `v`; entry `k` multiplies `v^k` and
/// is free of `v`.
pub fn coefficients_in(p: &Poly, v: Var) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let k = m.exp(v) as usize;
        let mut rest = *m;
        rest.0[v.index()] = 0;
        out[k].add_term(rest, c.clone());
    }
    out
}

fn leading_coefficient_in(p: &Poly, v: Var) -> Poly {
    coefficients_in(p, v).pop().unwrap_or_default()
}

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn exact_div(a: &Poly, b: &Poly) -> Option<Poly> {
    let (lm_b, lc_b) = b.leading_term()?;
    let (lm_b, inv_lc_b) = (*lm_b, lc_b.recip());
    let mut rem = a.clone();
    let mut quot = Poly::zero();
    while let Some((lm_r, lc_r)) = rem.leading_term() {
        if !lm_b.divides(lm_r) {
            return None;
        }
        let t = Poly::monomial(lm_b.quotient_of(lm_r), lc_r * &inv_lc_b);
        rem -= &(&t * b);
        quot += &t;
    }
    Some(quot)
}

/// Pseudo-remainder of `f` by `g` in the variable `v`.
fn pseudo_remainder(f: &Poly, g: &Poly, v: Var) -> Poly {
    let n = g.degree_in(v);
    let lc = leading_coefficient_in(g, v);
    let mut r = f.clone();
    let mut steps = (f.degree_in(v) + 1).saturating_sub(n);
    while !r.is_zero() && r.degree_in(v) >= n {
        let dr = r.degree_in(v);
        let lr = leading_coefficient_in(&r, v);
        let shift = Monomial::var(v);
        let mut shifted = g.clone();
        for _ in 0..(dr - n) {
            shifted = shifted.mul_monomial(&shift);
        }
        r = &(&lc * &r) - &(&lr * &shifted);
        steps = steps.saturating_sub(1);
    }
    for _ in 0..steps {
        r = &lc * &r;
    }
    r
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Poly, v: Var) -> Poly {
    coefficients_in(p, v)
        .iter()
        .filter(|c| !c.is_zero())
        .fold(Poly::zero(), |acc, c| gcd(&acc, c))
}

fn primitive_part_in(p: &Poly, v: Var) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content_in(p, v);
    exact_div(p, &c).expect("content divides its polynomial")
}

/// Monic greatest common divisor (zero only when both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let v = *Var::ALL
        .iter()
        .rev()
        .find(|v| a.contains_var(**v) || b.contains_var(**v))
        .expect("non-constant polynomial has a variable");
    if !a.contains_var(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.contains_var(v) {
        return gcd(&content_in(a, v), b);
    }
    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let content = gcd(&ca, &cb);
    let pa = exact_div(a, &ca).expect("content divides");
    let pb = exact_div(b, &cb).expect("content divides");
    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !g.is_zero() {
        let r = pseudo_remainder(&f, &g, v);
        f = g;
        if r.is_zero() {
            break;
        }
        if !r.contains_var(v) {
            f = Poly::one();
            break;
        }
        g = primitive_part_in(&r, v).monic();
    }
    let prim = if f.is_one_poly() {
        f
    } else {
        primitive_part_in(&f, v)
    };
    (&content * &prim).monic()
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}
