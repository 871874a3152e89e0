//! Exponential polynomials: finite sums `Σ exp(λ·(x,h,z)) · p_λ(x,h,z)` with
//! rational rate vectors `λ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{Signed, Zero};

use super::poly::{forward_owned, Monomial, Poly, Var};
use super::rational::{fmt_compact, to_f64, Rational};

/// Rate vector `(λ_x, λ_h, λ_z)` of an exponential factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rate(pub [Rational; 3]);

impl Rate {
    pub fn zero() -> Self {
        Rate::default()
    }

    pub fn new(lx: Rational, lh: Rational, lz: Rational) -> Self {
        Rate([lx, lh, lz])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn component(&self, v: Var) -> &Rational {
        &self.0[v.index()]
    }

    pub fn dot(&self, p: &[Rational; 3]) -> Rational {
        self.0.iter().zip(p).map(|(a, b)| a * b).sum()
    }

    fn add(&self, other: &Rate) -> Rate {
        Rate([
            &self.0[0] + &other.0[0],
            &self.0[1] + &other.0[1],
            &self.0[2] + &other.0[2],
        ])
    }

    /// The exponent as a linear polynomial, e.g. `-2*x`.
    pub fn exponent(&self) -> Poly {
        Poly::from_terms(
            Var::ALL
                .iter()
                .map(|v| (Monomial::var(*v), self.component(*v).clone())),
        )
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_compact).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    sectors: BTreeMap<Rate, Poly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        ExpPoly::from(Poly::constant(c))
    }

    pub fn with_rate(rate: Rate, p: Poly) -> Self {
        let mut e = ExpPoly::zero();
        e.add_sector(rate, &p);
        e
    }

    fn add_sector(&mut self, rate: Rate, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let entry = self.sectors.entry(rate).or_default();
        *entry += p;
        if entry.is_zero() {
            self.sectors.retain(|_, q| !q.is_zero());
        }
    }

    pub fn sectors(&self) -> impl Iterator<Item = (&Rate, &Poly)> {
        self.sectors.iter()
    }

    pub fn sector(&self, rate: &Rate) -> Option<&Poly> {
        self.sectors.get(rate)
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }

    /// The polynomial part, when every sector has zero rate.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.sectors.len() {
            0 => Some(Poly::zero()),
            1 => self.sectors.get(&Rate::zero()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (r, p) in &self.sectors {
            out.add_sector(r.clone(), &p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, q: &Poly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (r, p) in &self.sectors {
            out.add_sector(r.clone(), &(p * q));
        }
        out
    }

    /// Partial derivative; the exponential factor contributes `λ_v · p`.
    pub fn derivative(&self, v: Var) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (r, p) in &self.sectors {
            let d = &p.scale(r.component(v)) + &p.derivative(v);
            out.add_sector(r.clone(), &d);
        }
        out
    }

    /// Exact value at `p`, available when every exponent vanishes there.
    pub fn eval_exact(&self, p: &[Rational; 3]) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (r, q) in &self.sectors {
            if !r.dot(p).is_zero() {
                return None;
            }
            acc += q.eval(p);
        }
        Some(acc)
    }

    pub fn eval_f64(&self, p: &[f64; 3]) -> f64 {
        self.sectors
            .iter()
            .map(|(r, q)| {
                let e: f64 = r.0.iter().zip(p).map(|(l, x)| to_f64(l) * x).sum();
                e.exp() * q.eval_f64(p)
            })
            .sum()
    }

    /// Coefficient map keyed by `(rate, monomial)`, used to set up linear systems.
    pub fn coefficients(&self) -> impl Iterator<Item = ((&Rate, &Monomial), &Rational)> {
        self.sectors
            .iter()
            .flat_map(|(r, p)| p.terms().map(move |(m, c)| ((r, m), c)))
    }
}

impl From<Poly> for ExpPoly {
    fn from(p: Poly) -> Self {
        ExpPoly::with_rate(Rate::zero(), p)
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (r, p)) in self.sectors.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if r.is_zero() {
                if k > 0 || self.sectors.len() > 1 {
                    write!(f, "({p})")?;
                } else {
                    write!(f, "{p}")?;
                }
            } else {
                let e = r.exponent();
                let coeff_is_one = p.as_constant().is_some_and(|c| c == num_traits::One::one());
                let neg_one = p
                    .as_constant()
                    .is_some_and(|c| c.is_negative() && c.abs() == num_traits::One::one());
                if coeff_is_one {
                    write!(f, "exp({e})")?;
                } else if neg_one {
                    write!(f, "-exp({e})")?;
                } else {
                    write!(f, "({p})*exp({e})")?;
                }
            }
        }
        Ok(())
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly {
            sectors: self.sectors.iter().map(|(r, p)| (r.clone(), -p)).collect(),
        }
    }
}

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        -&self
    }
}

impl AddAssign<&ExpPoly> for ExpPoly {
    fn add_assign(&mut self, rhs: &ExpPoly) {
        for (r, p) in &rhs.sectors {
            self.add_sector(r.clone(), p);
        }
    }
}

impl SubAssign<&ExpPoly> for ExpPoly {
    fn sub_assign(&mut self, rhs: &ExpPoly) {
        for (r, p) in &rhs.sectors {
            self.add_sector(r.clone(), &-p);
        }
    }
}

impl Add<&ExpPoly> for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&ExpPoly> for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&ExpPoly> for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (ra, pa) in &self.sectors {
            for (rb, pb) in &rhs.sectors {
                out.add_sector(ra.add(rb), &(pa * pb));
            }
        }
        out
    }
}

forward_owned!(ExpPoly, Add add, Sub sub, Mul mul);
