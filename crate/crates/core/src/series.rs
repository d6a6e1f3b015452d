//! Truncated power series and the free-probability `R`-transform.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::diagram::{cycles_unchecked, long_cycle, permutation, DiagramFamily};
use crate::error::{Error, Result};
use crate::forms::{LinearForm, Space};
use crate::geometry::defect_int;
use crate::diagram::identity;
use crate::orbit::permutations;
use crate::scalar::Rational;

/// `a_0 + a_1 z + … + a_n z^n`, known up to `z^n`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// The coefficients `a_0..=a_n`; the truncation order is `n`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        PowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut c = vec![Rational::zero(); order + 1];
        c[0] = Rational::one();
        PowerSeries { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|m| (0..=m).fold(Rational::zero(), |acc, j| acc + self.coeff(j) * other.coeff(m - j)))
            .collect();
        PowerSeries { coeffs }
    }

    /// `z · self`, keeping the same order.
    fn shift(&self) -> PowerSeries {
        let mut c = vec![Rational::zero()];
        c.extend(self.coeffs[..self.order()].iter().cloned());
        PowerSeries { coeffs: c }
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{j}")?,
            }
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// The series `C` with `C(z M(z)) = M(z)`.
///
/// Writing `C = 1 + Σ k_j w^j`, the coefficient of `z^n` gives
/// `k_n = a_n − Σ_{j<n} k_j [z^n](z M)^j`.
pub fn free_r_transform(m: &PowerSeries) -> Result<PowerSeries> {
    if !m.coeff(0).is_one() {
        return Err(Error::Invalid("the moment series must have constant term 1".into()));
    }
    let n = m.order();
    let zm = m.shift();
    // powers[j] = (z M)^j
    let mut powers = vec![PowerSeries::one(n)];
    for j in 1..=n {
        let next = powers[j - 1].mul(&zm);
        powers.push(next);
    }
    let mut k = vec![Rational::zero(); n + 1];
    k[0] = Rational::one();
    for t in 1..=n {
        let mut v = m.coeff(t);
        for (j, kj) in k.iter().enumerate().take(t).skip(1) {
            v -= kj.clone() * powers[j].coeff(t);
        }
        k[t] = v;
    }
    Ok(PowerSeries::new(k))
}

/// `Ψ(φ) = Σ_k φ((1, …, k)) z^k` up to the degree bound of the form.
pub fn psi(space: &Space, phi: &LinearForm) -> PowerSeries {
    PowerSeries::new(
        (0..=space.max_k())
            .map(|k| phi.get(space, &long_cycle(k)).expect("within the space").clone())
            .collect(),
    )
}

/// The character on `⊕ ℂ[P_k]` whose value on a `k`-cycle permutation is `a_k`
/// and which vanishes on every other irreducible diagram.
pub fn permutation_character(space: &Space, a: &PowerSeries) -> LinearForm {
    let f = LinearForm::from_fn(space, |k, i| {
        let l = space.level(k);
        if l.in_family(DiagramFamily::Permutations, i) && l.splits(i).len() == 2 {
            a.coeff(k)
        } else {
            Rational::zero()
        }
    });
    space.multiplicative_extension(&f)
}

/// Free cumulants computed inside the permutation groups: the values on
/// `(1, …, n)` of `R_𝔖` applied to `σ ↦ Π_{cycles c} a_{|c|}`.
///
/// Works directly on `𝔖_k` for `k ≤ order`, so it reaches orders beyond
/// [`Space`] bounds.
pub fn free_cumulants_by_permutations(m: &PowerSeries) -> PowerSeries {
    let n = m.order();
    let mut out = vec![Rational::one()];
    for k in 1..=n {
        let perms: Vec<_> = permutations(k)
            .iter()
            .map(|s| permutation(s).expect("permutation"))
            .collect();
        let id = identity(k);
        let value = |p: &crate::partition::Partition| {
            cycles_unchecked(p, k)
                .iter()
                .fold(Rational::one(), |acc, c| acc * m.coeff(c.len()))
        };
        // below[i]: permutations on a geodesic from id_k to perms[i]
        let below: Vec<Vec<usize>> = (0..perms.len())
            .map(|i| {
                (0..perms.len())
                    .filter(|&j| defect_int(&id, &perms[j], &perms[i]) == 0)
                    .collect()
            })
            .collect();
        let mut order: Vec<usize> = (0..perms.len()).collect();
        order.sort_by_key(|&i| below[i].len());
        let mut kappa = vec![Rational::zero(); perms.len()];
        for i in order {
            let mut v = value(&perms[i]);
            for &j in &below[i] {
                if j != i {
                    v -= kappa[j].clone();
                }
            }
            kappa[i] = v;
        }
        let target = long_cycle(k);
        let idx = perms.iter().position(|p| *p == target).expect("long cycle");
        out.push(kappa[idx].clone());
    }
    PowerSeries::new(out)
}
