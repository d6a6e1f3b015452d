//! Laurent polynomials in the formal size parameter `N`.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::scalar::{int, Rational, Scalar};

/// A finite sum `Σ c_e N^e` with rational `c_e` and integer `e`.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentScalar {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentScalar {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · N^e`.
    pub fn monomial(c: Rational, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentScalar { terms }
    }

    /// `N^e`.
    pub fn n_pow(e: i32) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// `N (N−1) ⋯ (N−m+1)`.
    pub fn falling_factorial(m: usize) -> Self {
        let mut acc = LaurentScalar::one();
        for j in 0..m {
            let factor = LaurentScalar::n_pow(1) - LaurentScalar::constant(int(j as i64));
            acc = acc * factor;
        }
        acc
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Whether the value is independent of `N`.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// The value as `N → ∞`, when it exists.
    pub fn limit(&self) -> Option<Rational> {
        match self.max_exp() {
            Some(e) if e > 0 => None,
            _ => Some(self.coeff(0)),
        }
    }

    /// Multiply by `N^e`.
    pub fn shift(&self, e: i32) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|(&x, c)| (x + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentScalar {
            terms: self.terms.iter().map(|(&x, v)| (x, v * c)).collect(),
        }
    }

    /// Evaluate at a concrete nonzero integer `N`.
    pub fn eval(&self, n: i64) -> Rational {
        let base = int(n);
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                num_traits::pow(base.clone(), e as usize)
            } else {
                num_traits::pow(base.clone(), (-e) as usize).recip()
            };
            acc += c * p;
        }
        acc
    }

    fn insert_add(&mut self, e: i32, c: Rational) {
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }
}

impl From<Rational> for LaurentScalar {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, o: &LaurentScalar) {
        for (&e, c) in &o.terms {
            self.insert_add(e, c.clone());
        }
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(mut self, o: LaurentScalar) -> LaurentScalar {
        self += &o;
        self
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, o: LaurentScalar) -> LaurentScalar {
        self + (-o)
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, o: LaurentScalar) -> LaurentScalar {
        &self * &o
    }
}

impl Mul<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, o: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &o.terms {
                out.insert_add(a + b, x * y);
            }
        }
        out
    }
}

impl Zero for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentScalar {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Scalar for LaurentScalar {
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Terms in increasing exponent order, e.g. `3*N^-1 + 1` or `-N^2 + 1/2*N`.
impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "N")?,
                (1, false) => write!(f, "{mag}*N")?,
                (_, true) => write!(f, "N^{e}")?,
                (_, false) => write!(f, "{mag}*N^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use alloc::string::ToString;

    #[test]
    fn display_forms() {
        let x = LaurentScalar::monomial(int(3), -1) + LaurentScalar::one();
        assert_eq!(x.to_string(), "3*N^-1 + 1");
        let y = LaurentScalar::monomial(int(-1), 2) + LaurentScalar::monomial(rat(1, 2), 1);
        assert_eq!(y.to_string(), "1/2*N - N^2");
        assert_eq!(LaurentScalar::zero().to_string(), "0");
        assert_eq!(LaurentScalar::n_pow(-2).to_string(), "N^-2");
    }

    #[test]
    fn limits() {
        let x = LaurentScalar::monomial(int(3), -1) + LaurentScalar::one();
        assert_eq!(x.limit(), Some(int(1)));
        assert_eq!(LaurentScalar::n_pow(1).limit(), None);
        assert_eq!(LaurentScalar::n_pow(-3).limit(), Some(int(0)));
    }

    #[test]
    fn falling_factorial_values() {
        let ff = LaurentScalar::falling_factorial(3);
        for n in 0..7i64 {
            assert_eq!(ff.eval(n.max(1)), int(n.max(1) * (n.max(1) - 1) * (n.max(1) - 2)));
        }
        assert_eq!(LaurentScalar::falling_factorial(0), LaurentScalar::one());
    }

    #[test]
    fn ring_laws() {
        let a = LaurentScalar::monomial(int(2), -1) + LaurentScalar::n_pow(1);
        let b = LaurentScalar::monomial(int(-1), 1) + LaurentScalar::one();
        assert_eq!(&a * &b, &b * &a);
        assert!((a.clone() - a.clone()).is_zero());
        assert_eq!((&a * &b).eval(5), a.eval(5) * b.eval(5));
    }
}
