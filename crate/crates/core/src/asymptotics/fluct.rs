//! The order-`n` development algebra `ℂ_(n)[P_k(N)]` and fluctuation moments and cumulants.
//!
//! Elements are combinations of symbols `p/X^i` with `i ≤ n`. An indexed
//! form on `P × {0..n}` is stored as a [`FluctForm`]: one [`LinearForm`]
//! per fluctuation order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::asymptotics::{cumulant, moment, twist, AlgebraElement};
use crate::diagram::{columns, compose_unchecked, extract, identity, show};
use crate::error::{Error, Result};
use crate::forms::{LinearForm, Space};
use crate::geometry::defect_int;
use crate::kreweras::eta_with;
use crate::laurent::LaurentScalar;
use crate::partition::Partition;
use crate::scalar::Rational;

/// `forms[i]` holds the values `φ(·, i)` for `i = 0..=n`.
pub type FluctForm = Vec<LinearForm>;

/// `Σ c_{p,i} p/X^i` with Laurent coefficients `c_{p,i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FluctElement {
    k: usize,
    n: usize,
    terms: BTreeMap<(Partition, usize), LaurentScalar>,
}

impl FluctElement {
    pub fn zero(k: usize, n: usize) -> Self {
        FluctElement {
            k,
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The symbol `p/X^i` in the algebra of order `n`.
    pub fn basis(p: &Partition, i: usize, n: usize) -> Result<Self> {
        Self::from_terms(columns(p)?, n, [((p.clone(), i), LaurentScalar::one())])
    }

    pub fn from_terms(
        k: usize,
        n: usize,
        terms: impl IntoIterator<Item = ((Partition, usize), LaurentScalar)>,
    ) -> Result<Self> {
        let mut e = Self::zero(k, n);
        for ((p, i), c) in terms {
            let kp = columns(&p)?;
            if kp != k {
                return Err(Error::KMismatch { left: k, right: kp });
            }
            if i > n {
                return Err(Error::OrderMismatch { left: i, right: n });
            }
            e.add_term(p, i, &c);
        }
        Ok(e)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The fluctuation order `n`.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, usize), &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Partition, i: usize) -> LaurentScalar {
        self.terms
            .get(&(p.clone(), i))
            .cloned()
            .unwrap_or_else(LaurentScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, p: Partition, i: usize, c: &LaurentScalar) {
        if c.is_zero() {
            return;
        }
        let key = (p, i);
        let entry = self.terms.entry(key.clone()).or_insert_with(LaurentScalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check(self, other)?;
        let mut out = self.clone();
        for ((p, i), c) in &other.terms {
            out.add_term(p.clone(), *i, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        let mut out = Self::zero(self.k, self.n);
        for ((p, i), v) in &self.terms {
            out.add_term(p.clone(), *i, &(v * c));
        }
        out
    }

    /// Coefficients of order below `n` are `N`-free and those of order `n` converge.
    pub fn converges(&self) -> bool {
        self.terms.iter().all(|((_, i), c)| {
            if *i < self.n {
                c.is_constant()
            } else {
                c.max_exp().is_none_or(|e| e <= 0)
            }
        })
    }

    /// Coefficient-wise `N → ∞`.
    pub fn limit(&self) -> Result<Self> {
        let mut out = Self::zero(self.k, self.n);
        for ((p, i), c) in &self.terms {
            let v = c.limit().ok_or_else(|| Error::Divergent {
                partition: show(p),
                exponent: c.max_exp().unwrap_or(0),
            })?;
            out.add_term(p.clone(), *i, &LaurentScalar::constant(v));
        }
        Ok(out)
    }
}

fn check(a: &FluctElement, b: &FluctElement) -> Result<()> {
    if a.k != b.k {
        return Err(Error::KMismatch { left: a.k, right: b.k });
    }
    if a.n != b.n {
        return Err(Error::OrderMismatch { left: a.n, right: b.n });
    }
    Ok(())
}

fn bilinear(
    a: &FluctElement,
    b: &FluctElement,
    rule: impl Fn(usize) -> Option<(LaurentScalar, usize)>,
) -> Result<FluctElement> {
    check(a, b)?;
    let id = identity(a.k);
    let mut out = FluctElement::zero(a.k, a.n);
    for ((p, i), x) in &a.terms {
        for ((q, j), y) in &b.terms {
            let c = compose_unchecked(p, q);
            let eta = eta_with(p, q, &c.product, c.loops, &id) as usize;
            if let Some((w, e)) = rule(i + j + eta) {
                out.add_term(c.product, e, &(&(x * y) * &w));
            }
        }
    }
    Ok(out)
}

/// `(p/X^i)(q/X^j) = N^{−max(e − n, 0)} (p ∘ q)/X^{min(e, n)}` with `e = i + j + η(p, q)`.
pub fn fluct_product(a: &FluctElement, b: &FluctElement) -> Result<FluctElement> {
    let n = a.n;
    bilinear(a, b, |e| {
        Some((LaurentScalar::n_pow(-(e.saturating_sub(n) as i32)), e.min(n)))
    })
}

/// The limit product `(p/X^i)(q/X^j) = δ_{e ≤ n} (p ∘ q)/X^e`.
pub fn fluct_limit_product(a: &FluctElement, b: &FluctElement) -> Result<FluctElement> {
    let n = a.n;
    bilinear(a, b, |e| (e <= n).then(|| (LaurentScalar::one(), e)))
}

/// The evaluation morphism `p/X^i ↦ N^{−i} N^{−(nc(p) − nc(p ∨ id_k))} p`.
pub fn evaluate(e: &FluctElement) -> AlgebraElement {
    let id = identity(e.k);
    let mut out = AlgebraElement::zero(e.k);
    for ((p, i), c) in &e.terms {
        out.add_term(p.clone(), &c.shift(-(*i as i32) - twist(p, &id)));
    }
    out
}

/// Splits a Laurent polynomial without positive powers into its `N^{−i}`
/// coefficients for `i < n` and the remainder multiplied by `N^n`.
fn develop(p: &Partition, c: &LaurentScalar, n: usize) -> Result<(Vec<Rational>, LaurentScalar)> {
    if let Some(e) = c.max_exp().filter(|&e| e > 0) {
        return Err(Error::Divergent {
            partition: show(p),
            exponent: e,
        });
    }
    let head = (0..n).map(|i| c.coeff(-(i as i32))).collect();
    let mut tail = LaurentScalar::zero();
    for (e, v) in c.terms() {
        if e <= -(n as i32) {
            tail += &LaurentScalar::monomial(v.clone(), e + n as i32);
        }
    }
    Ok((head, tail))
}

/// The lift of `E` to the algebra of order `n`: the cumulant of each `p`
/// is split into its first `n` coefficients in `1/N` and a convergent tail.
pub fn lift(e: &AlgebraElement, n: usize) -> Result<FluctElement> {
    let mut out = FluctElement::zero(e.k(), n);
    for (p, _) in e.terms() {
        let (head, tail) = develop(p, &cumulant(e, p)?, n)?;
        for (i, v) in head.into_iter().enumerate() {
            out.add_term(p.clone(), i, &LaurentScalar::constant(v));
        }
        out.add_term(p.clone(), n, &tail);
    }
    Ok(out)
}

fn check_space(space: &Space, k: usize) -> Result<()> {
    if k > space.max_k() {
        return Err(Error::SizeLimit {
            size: k,
            limit: space.max_k(),
        });
    }
    Ok(())
}

/// The limits `κ^i_p` of a convergent element, one form per order.
pub fn fluct_cumulants(space: &Space, e: &FluctElement) -> Result<FluctForm> {
    check_space(space, e.k)?;
    let mut out = vec![LinearForm::zero(space); e.n + 1];
    let level = space.level(e.k);
    for ((p, i), c) in &e.terms {
        if *i < e.n && !c.is_constant() {
            return Err(Error::Invalid(alloc::format!(
                "coefficient of {}/X^{i} depends on N",
                show(p)
            )));
        }
        let v = c.limit().ok_or_else(|| Error::Divergent {
            partition: show(p),
            exponent: c.max_exp().unwrap_or(0),
        })?;
        out[*i].set(e.k, level.index_of(p), v);
    }
    Ok(out)
}

/// The fluctuation moments `m^i_p` of `E`, read off the expansion of `m_p(E_N)` in `1/N`.
pub fn fluct_moments(space: &Space, e: &AlgebraElement, n: usize) -> Result<FluctForm> {
    check_space(space, e.k())?;
    let mut out: FluctForm = vec![LinearForm::zero(space); n + 1];
    for (j, p) in space.level(e.k()).parts().iter().enumerate() {
        let (head, tail) = develop(p, &moment(e, p)?, n)?;
        for (i, v) in head.into_iter().enumerate() {
            out[i].set(e.k(), j, v);
        }
        out[n].set(e.k(), j, tail.coeff(0));
    }
    Ok(out)
}

/// `df(q, p)` with base `id_k`, stored at `q · len + p`.
fn defect_table(space: &Space, k: usize) -> Vec<i64> {
    let parts = space.level(k).parts();
    let id = identity(k);
    let mut t = Vec::with_capacity(parts.len() * parts.len());
    for q in parts {
        for p in parts {
            t.push(defect_int(&id, q, p));
        }
    }
    t
}

/// `m^{i0}_p = Σ_{df(p', p) ≤ i0} κ^{i0 − df(p', p)}_{p'}`.
pub fn fluct_moments_from_cumulants(space: &Space, kappa: &FluctForm) -> FluctForm {
    let n = kappa.len().saturating_sub(1);
    let mut out = vec![LinearForm::zero(space); kappa.len()];
    for k in 0..=space.max_k() {
        let df = defect_table(space, k);
        let len = space.level(k).len();
        for (i0, form) in out.iter_mut().enumerate().take(n + 1) {
            for p in 0..len {
                let mut v = Rational::zero();
                for q in 0..len {
                    let d = df[q * len + p] as usize;
                    if d <= i0 {
                        v += kappa[i0 - d].at(k, q);
                    }
                }
                form.set(k, p, v);
            }
        }
    }
    out
}

/// Inverse of [`fluct_moments_from_cumulants`], solved order by order.
pub fn fluct_cumulants_from_moments(space: &Space, moments: &FluctForm) -> FluctForm {
    let mut out: FluctForm = Vec::with_capacity(moments.len());
    let tables: Vec<Vec<i64>> = (0..=space.max_k()).map(|k| defect_table(space, k)).collect();
    for i0 in 0..moments.len() {
        let mut rhs = moments[i0].clone();
        for (k, df) in tables.iter().enumerate() {
            let len = space.level(k).len();
            for p in 0..len {
                let mut v = rhs.at(k, p).clone();
                for q in 0..len {
                    let d = df[q * len + p] as usize;
                    if d >= 1 && d <= i0 {
                        v -= out[i0 - d].at(k, q);
                    }
                }
                rhs.set(k, p, v);
            }
        }
        out.push(space.r(&rhs));
    }
    out
}

/// Which side of a product carries moments in [`fluct_moment_product`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentSide {
    /// `m^{i0}_{p0}(EF) = Σ_p Σ_{i + j + df(p, p0) = i0} κ^i_p(E) m^j_{ᵗp ∘ p0}(F)`.
    Right,
    /// `m^{i0}_{p0}(EF) = Σ_p Σ_{i + j + df(p, p0) = i0} m^j_{p0 ∘ ᵗp}(E) κ^i_p(F)`.
    Left,
}

/// The fluctuation moments of a product from cumulants of one factor and moments of the other.
pub fn fluct_moment_product(space: &Space, side: MomentSide, a: &FluctForm, b: &FluctForm) -> FluctForm {
    let n = a.len().min(b.len()).saturating_sub(1);
    let mut out: FluctForm = vec![LinearForm::zero(space); n + 1];
    for k in 0..=space.max_k() {
        let l = space.level(k);
        let df = defect_table(space, k);
        let len = l.len();
        for p0 in 0..len {
            for p in 0..len {
                let d = df[p * len + p0] as usize;
                if d > n {
                    continue;
                }
                let tp = l.transposed(p);
                for i0 in d..=n {
                    let mut v = out[i0].at(k, p0).clone();
                    for i in 0..=i0 - d {
                        let j = i0 - d - i;
                        v += match side {
                            MomentSide::Right => {
                                a[i].at(k, p) * b[j].at(k, l.product(tp, p0).product)
                            }
                            MomentSide::Left => {
                                a[j].at(k, l.product(p0, tp).product) * b[i].at(k, p)
                            }
                        };
                    }
                    out[i0].set(k, p0, v);
                }
            }
        }
    }
    out
}

/// One element `(p1, p2, I)` of `𝔉₂(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// `p_I` as `(level, index)`.
    pub inside: (usize, usize),
    /// `p_{I^c}` as `(level, index)`.
    pub outside: (usize, usize),
    /// `I`, as sorted 0-based indices into the `2k` points.
    pub points: Vec<usize>,
}

/// All `(p_I, p_{I^c}, I)` with `nc(p_I) + nc(p_{I^c}) = nc(p)`, `I` ranging over sets of points.
pub fn factorizations(space: &Space, p: &Partition) -> Result<Vec<Factorization>> {
    let k = columns(p)?;
    check_space(space, k)?;
    let mut out = Vec::new();
    for mask in 0u32..1 << (2 * k) {
        let inside: Vec<usize> = (0..2 * k).filter(|&x| mask >> x & 1 == 1).collect();
        let outside: Vec<usize> = (0..2 * k).filter(|&x| mask >> x & 1 == 0).collect();
        let a = extract(p, &inside)?;
        let b = extract(p, &outside)?;
        if a.nc() + b.nc() == p.nc() {
            out.push(Factorization {
                inside: space.locate(&a)?,
                outside: space.locate(&b)?,
                points: inside,
            });
        }
    }
    Ok(out)
}

/// `⊞` on indexed forms: `Σ_{(p1, p2, I) ∈ 𝔉₂(p)} Σ_{i1 + i2 = i0} φ1(p1, i1) φ2(p2, i2)`.
pub fn fluct_boxplus(space: &Space, a: &FluctForm, b: &FluctForm) -> Result<FluctForm> {
    let n = a.len().min(b.len()).saturating_sub(1);
    let mut out: FluctForm = vec![LinearForm::zero(space); n + 1];
    for k in 0..=space.max_k() {
        for (idx, p) in space.level(k).parts().iter().enumerate() {
            let facts = factorizations(space, p)?;
            for (i0, form) in out.iter_mut().enumerate() {
                let mut v = Rational::zero();
                for f in &facts {
                    let ((k1, j1), (k2, j2)) = (f.inside, f.outside);
                    for i1 in 0..=i0 {
                        v += a[i1].at(k1, j1) * b[i0 - i1].at(k2, j2);
                    }
                }
                form.set(k, idx, v);
            }
        }
    }
    Ok(out)
}

/// `⊠` on indexed forms: `Σ_{p1 ∘ p2 = p0} Σ_{i1 + i2 + η(p1, p2) = i0} φ1(p1, i1) φ2(p2, i2)`.
pub fn fluct_boxtimes(space: &Space, a: &FluctForm, b: &FluctForm) -> FluctForm {
    let n = a.len().min(b.len()).saturating_sub(1);
    let mut out: FluctForm = vec![LinearForm::zero(space); n + 1];
    for k in 0..=space.max_k() {
        let l = space.level(k);
        for p1 in 0..l.len() {
            for p2 in 0..l.len() {
                let pr = l.product(p1, p2);
                let eta = pr.eta as usize;
                for i0 in eta..=n {
                    let mut v = out[i0].at(k, pr.product).clone();
                    for i1 in 0..=i0 - eta {
                        v += a[i1].at(k, p1) * b[i0 - eta - i1].at(k, p2);
                    }
                    out[i0].set(k, pr.product, v);
                }
            }
        }
    }
    out
}
