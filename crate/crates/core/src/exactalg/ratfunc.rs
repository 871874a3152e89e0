//! Rational functions `p / q` in `(x, h, z)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::{exact_div, gcd};
use super::poly::{forward_owned, Poly, Var};
use super::rational::Rational;

/// Reduced rational function: `gcd(num, den) = 1` and `den` is monic with
/// respect to the graded-lex leading term, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num / den`; `None` when `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = den.as_constant() {
            return RatFunc {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                exact_div(&num, &g).expect("gcd divides numerator"),
                exact_div(&den, &g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one);
        let inv = lc.recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from(Poly::constant(c))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<Poly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    /// Degree-0 rational functions are constants.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn recip(&self) -> Option<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn derivative(&self, v: Var) -> RatFunc {
        if self.den.is_constant() {
            return RatFunc::from(self.num.derivative(v));
        }
        let n = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        RatFunc::reduce(n, &self.den * &self.den)
    }

    /// Exact value at `p`; `None` if the denominator vanishes there.
    pub fn eval(&self, p: &[Rational; 3]) -> Option<Rational> {
        let d = self.den.eval(p);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(p) / d)
    }

    pub fn eval_f64(&self, p: &[f64; 3]) -> f64 {
        self.num.eval_f64(p) / self.den.eval_f64(p)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_constant() || rhs.den.is_constant() {
            return RatFunc::reduce(
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            );
        }
        // Over the lcm of the denominators.
        let g = gcd(&self.den, &rhs.den);
        let a = exact_div(&rhs.den, &g).expect("gcd divides denominator");
        let b = exact_div(&self.den, &g).expect("gcd divides denominator");
        RatFunc::reduce(&(&self.num * &a) + &(&rhs.num * &b), &self.den * &a)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by the zero function.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        let inv = rhs.recip().expect("division by zero rational function");
        self * &inv
    }
}

forward_owned!(RatFunc, Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    fn x() -> Poly {
        Poly::var(Var::X)
    }

    #[test]
    fn reduces_common_factors() {
        let one = Poly::one();
        let num = &(&x() - &one) * &(&x() + &one);
        let den = (&x() - &one).scale(&int(2));
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.numer(), &(&x() + &one).scale(&Rational::new(1.into(), 2.into())));
        assert_eq!(r.denom(), &Poly::one());
        assert!(r.is_polynomial());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_none());
    }

    #[test]
    fn quotient_rule() {
        let one = Poly::one();
        let r = RatFunc::new(one.clone(), &x() + &one).unwrap();
        let d = r.derivative(Var::X);
        let expected = RatFunc::new(-one.clone(), (&x() + &one).pow(2)).unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn field_identities() {
        let one = Poly::one();
        let a = RatFunc::new(x(), &x() + &one).unwrap();
        let b = RatFunc::new(&x() - &one, x()).unwrap();
        let lhs = &(&a + &b) * &a;
        let rhs = &(&a * &a) + &(&b * &a);
        assert_eq!(lhs, rhs);
        assert_eq!(&(&a / &a), &RatFunc::one());
        assert_eq!((&a - &a), RatFunc::zero());
    }
}
