//! Exact coefficient rings: rationals and polynomials in an auxiliary variable `t`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The operations every coefficient ring used by linear forms must support.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: Rational) -> Self;
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
}

/// A polynomial in `t` with rational coefficients; `coeffs[j]` multiplies `t^j`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TPoly {
    coeffs: Vec<Rational>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        TPoly::new(alloc::vec![c])
    }

    /// `c · t^j`.
    pub fn monomial(c: Rational, j: usize) -> Self {
        let mut v = alloc::vec![Rational::zero(); j + 1];
        v[j] = c;
        TPoly::new(v)
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Drop every power above `t^n`.
    pub fn truncate(&self, n: usize) -> TPoly {
        TPoly::new(self.coeffs.iter().take(n + 1).cloned().collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for TPoly {
    type Output = TPoly;
    fn add(self, o: TPoly) -> TPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        TPoly::new((0..n).map(|j| self.coeff(j) + o.coeff(j)).collect())
    }
}

impl Sub for TPoly {
    type Output = TPoly;
    fn sub(self, o: TPoly) -> TPoly {
        self + (-o)
    }
}

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for TPoly {
    type Output = TPoly;
    fn mul(self, o: TPoly) -> TPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return TPoly::default();
        }
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::new(out)
    }
}

impl Zero for TPoly {
    fn zero() -> Self {
        TPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for TPoly {
    fn one() -> Self {
        TPoly::constant(Rational::one())
    }
}

impl Scalar for TPoly {
    fn from_rational(r: Rational) -> Self {
        TPoly::constant(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn tpoly_ring() {
        let a = TPoly::new(alloc::vec![int(1), int(1)]);
        let sq = a.clone() * a.clone();
        assert_eq!(sq.coeffs(), &[int(1), int(2), int(1)]);
        assert_eq!(sq.truncate(1), TPoly::new(alloc::vec![int(1), int(2)]));
        assert!((a.clone() - a).is_zero());
        assert_eq!(TPoly::monomial(rat(1, 2), 2).to_string(), "1/2*t^2");
    }
}
