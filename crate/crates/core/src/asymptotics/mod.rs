//! The partition algebra `ℂ[P_k(N)]` with `N` kept symbolic, and its large-`N` limit.
//!
//! A sequence `(E_N)_N` is represented by one [`AlgebraElement`] whose
//! coefficients are Laurent polynomials in `N`. A sequence converges when
//! every cumulant coefficient has no positive power of `N`; the limit then
//! reads off the constant terms.

pub mod fluct;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::diagram::{columns, compose_unchecked, identity, show, transpose};
use crate::error::{Error, Result};
use crate::forms::{LinearForm, Space};
use crate::geometry::in_order_unchecked;
use crate::geometry::OrderKind;
use crate::kreweras::eta_with;
use crate::laurent::LaurentScalar;
use crate::partition::{is_finer_unchecked, nc_join, Partition};
use crate::scalar::{int, Rational};

/// `nc(p) − nc(p ∨ id_k)`.
pub(crate) fn twist(p: &Partition, id: &Partition) -> i32 {
    p.nc() as i32 - nc_join(p, id) as i32
}

/// `Σ_p E_p p` with `E_p` Laurent in `N`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    k: usize,
    terms: BTreeMap<Partition, LaurentScalar>,
}

impl AlgebraElement {
    pub fn zero(k: usize) -> Self {
        AlgebraElement {
            k,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `p`.
    pub fn basis(p: &Partition) -> Result<Self> {
        Self::from_terms(columns(p)?, [(p.clone(), LaurentScalar::one())])
    }

    /// `M_N(p) = N^{−(nc(p) − nc(p ∨ id_k))} p`, whose cumulants are `δ_p`.
    pub fn normalized(p: &Partition) -> Result<Self> {
        let k = columns(p)?;
        let t = twist(p, &identity(k));
        Self::from_terms(k, [(p.clone(), LaurentScalar::n_pow(-t))])
    }

    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (Partition, LaurentScalar)>) -> Result<Self> {
        let mut e = Self::zero(k);
        for (p, c) in terms {
            let kp = columns(&p)?;
            if kp != k {
                return Err(Error::KMismatch { left: k, right: kp });
            }
            e.add_term(p, &c);
        }
        Ok(e)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> LaurentScalar {
        self.terms.get(p).cloned().unwrap_or_else(LaurentScalar::zero)
    }

    pub(crate) fn add_term(&mut self, p: Partition, c: &LaurentScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p.clone()).or_insert_with(LaurentScalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_k(self.k, other.k)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentScalar::constant(int(-1))))
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        let mut out = Self::zero(self.k);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), &(v * c));
        }
        out
    }

    /// True when no coefficient involves `N`.
    pub fn is_n_free(&self) -> bool {
        self.terms.values().all(LaurentScalar::is_constant)
    }

    /// Coefficient-wise `N → ∞`.
    pub fn limit(&self) -> Result<Self> {
        let mut out = Self::zero(self.k);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), &LaurentScalar::constant(limit_of(p, c)?));
        }
        Ok(out)
    }

    /// The coefficients with `N` replaced by an integer.
    pub fn eval(&self, n: i64) -> BTreeMap<Partition, Rational> {
        self.terms
            .iter()
            .map(|(p, c)| (p.clone(), c.eval(n)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", show(p))?;
        }
        Ok(())
    }
}

fn same_k(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::KMismatch { left: a, right: b });
    }
    Ok(())
}

fn limit_of(p: &Partition, c: &LaurentScalar) -> Result<Rational> {
    c.limit().ok_or_else(|| Error::Divergent {
        partition: show(p),
        exponent: c.max_exp().unwrap_or(0),
    })
}

/// Bilinear extension of `p, q ↦ w(p, q, loops, η) · (p ∘ q)`.
fn bilinear(
    e: &AlgebraElement,
    f: &AlgebraElement,
    weight: impl Fn(usize, i64) -> Option<LaurentScalar>,
) -> Result<AlgebraElement> {
    same_k(e.k, f.k)?;
    let id = identity(e.k);
    let mut out = AlgebraElement::zero(e.k);
    for (p, a) in &e.terms {
        for (q, b) in &f.terms {
            let c = compose_unchecked(p, q);
            let eta = eta_with(p, q, &c.product, c.loops, &id);
            if let Some(w) = weight(c.loops, eta) {
                out.add_term(c.product, &(&(a * b) * &w));
            }
        }
    }
    Ok(out)
}

/// The product of `ℂ[P_k(N)]`: `p q = N^{κ(p,q)} (p ∘ q)`.
pub fn algebra_product(e: &AlgebraElement, f: &AlgebraElement) -> Result<AlgebraElement> {
    bilinear(e, f, |loops, _| Some(LaurentScalar::n_pow(loops as i32)))
}

/// `p ._N q = N^{−η(p,q)} (p ∘ q)`.
pub fn deformed_product(e: &AlgebraElement, f: &AlgebraElement) -> Result<AlgebraElement> {
    bilinear(e, f, |_, eta| Some(LaurentScalar::n_pow(-(eta as i32))))
}

/// `p ._∞ q = δ_{η(p,q) = 0} (p ∘ q)`.
pub fn limit_product(e: &AlgebraElement, f: &AlgebraElement) -> Result<AlgebraElement> {
    bilinear(e, f, |_, eta| (eta == 0).then(LaurentScalar::one))
}

fn rescale(e: &AlgebraElement, sign: i32) -> AlgebraElement {
    let id = identity(e.k);
    let mut out = AlgebraElement::zero(e.k);
    for (p, c) in &e.terms {
        out.add_term(p.clone(), &c.shift(sign * twist(p, &id)));
    }
    out
}

/// `M_N`, sending `p` to its normalized version.
pub fn m_n(e: &AlgebraElement) -> AlgebraElement {
    rescale(e, -1)
}

/// `M_N^{-1}`. The coefficients of `M_N^{-1}(E)` are the cumulants of `E`.
pub fn m_n_inverse(e: &AlgebraElement) -> AlgebraElement {
    rescale(e, 1)
}

fn check_k(e: &AlgebraElement, p: &Partition) -> Result<()> {
    same_k(e.k, columns(p)?)
}

/// `m_p(E) = Tr_N(E ᵗp) / Tr_N(p)`.
pub fn moment(e: &AlgebraElement, p: &Partition) -> Result<LaurentScalar> {
    check_k(e, p)?;
    let base = nc_join(p, &identity(e.k)) as i32;
    let mut out = LaurentScalar::zero();
    for (q, c) in &e.terms {
        out += &c.shift(nc_join(p, q) as i32 - base);
    }
    Ok(out)
}

/// `κ_p(E) = N^{nc(p) − nc(p ∨ id_k)} E_p`.
pub fn cumulant(e: &AlgebraElement, p: &Partition) -> Result<LaurentScalar> {
    check_k(e, p)?;
    Ok(e.coeff(p).shift(twist(p, &identity(e.k))))
}

/// `Σ_{q finer than p} E_q`, the coordinate of `E` on `p^c`.
fn exclusive_coordinate(e: &AlgebraElement, p: &Partition) -> LaurentScalar {
    let mut out = LaurentScalar::zero();
    for (q, c) in &e.terms {
        if is_finer_unchecked(q, p) {
            out += c;
        }
    }
    out
}

/// `m_{p^c}(E) = Tr_N(E ᵗp^c) / Tr_N(p)`, using `Tr_N(q ᵗp^c) = δ_{q ⊴ p} N!/(N − nc(p))!`.
pub fn exclusive_moment(e: &AlgebraElement, p: &Partition) -> Result<LaurentScalar> {
    check_k(e, p)?;
    let base = nc_join(p, &identity(e.k)) as i32;
    let falling = LaurentScalar::falling_factorial(p.nc()).shift(-base);
    Ok(&exclusive_coordinate(e, p) * &falling)
}

/// `κ_{p^c}(E) = N^{nc(p) − nc(p ∨ id_k)} (E)_{p^c}`.
pub fn exclusive_cumulant(e: &AlgebraElement, p: &Partition) -> Result<LaurentScalar> {
    check_k(e, p)?;
    Ok(exclusive_coordinate(e, p).shift(twist(p, &identity(e.k))))
}

/// Which family of limits [`limit_form`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitKind {
    Moment,
    Cumulant,
    ExclusiveMoment,
    ExclusiveCumulant,
}

impl LimitKind {
    pub const ALL: [LimitKind; 4] = [
        LimitKind::Moment,
        LimitKind::Cumulant,
        LimitKind::ExclusiveMoment,
        LimitKind::ExclusiveCumulant,
    ];

    /// The value at `p` for finite `N`.
    pub fn at(self, e: &AlgebraElement, p: &Partition) -> Result<LaurentScalar> {
        match self {
            LimitKind::Moment => moment(e, p),
            LimitKind::Cumulant => cumulant(e, p),
            LimitKind::ExclusiveMoment => exclusive_moment(e, p),
            LimitKind::ExclusiveCumulant => exclusive_cumulant(e, p),
        }
    }
}

fn space_holds(space: &Space, k: usize) -> Result<()> {
    if k > space.max_k() {
        return Err(Error::SizeLimit {
            size: k,
            limit: space.max_k(),
        });
    }
    Ok(())
}

/// The `N → ∞` limits of one family of moments or cumulants, as a form
/// supported on level `k` of `space`.
pub fn limit_form(space: &Space, e: &AlgebraElement, which: LimitKind) -> Result<LinearForm> {
    space_holds(space, e.k)?;
    let mut phi = LinearForm::zero(space);
    for (i, p) in space.level(e.k).parts().iter().enumerate() {
        let v = which.at(e, p)?;
        phi.set(e.k, i, limit_of(p, &v)?);
    }
    Ok(phi)
}

/// The cumulant form of a limit element written in cumulant coordinates.
pub fn kappa_form(space: &Space, e: &AlgebraElement) -> Result<LinearForm> {
    space_holds(space, e.k)?;
    let mut phi = LinearForm::zero(space);
    for (p, c) in &e.terms {
        let i = space.level(e.k).index_of(p);
        phi.set(e.k, i, limit_of(p, c)?);
    }
    Ok(phi)
}

/// The three descriptions of the limit of a product `E F`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitProductForms {
    /// `φ^κ_E ⊠ φ^κ_F`.
    pub kappa: LinearForm,
    /// `φ^κ_E ⊠^m_d φ^m_F`.
    pub moment_via_d: LinearForm,
    /// `φ^m_E ⊠^m_g φ^κ_F`.
    pub moment_via_g: LinearForm,
}

pub fn limit_product_forms(space: &Space, kappa_e: &LinearForm, kappa_f: &LinearForm) -> LimitProductForms {
    LimitProductForms {
        kappa: space.boxtimes(kappa_e, kappa_f),
        moment_via_d: space.boxtimes_md(kappa_e, &space.m(kappa_f)),
        moment_via_g: space.boxtimes_mg(&space.m(kappa_e), kappa_f),
    }
}

/// How [`semigroup_taylor`] multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemigroupMode {
    /// The product of `ℂ[P_k(N)]`; coefficients are elements in the usual basis.
    FiniteN,
    /// `._∞` on cumulant coordinates; coefficients are limits of `M_N^{-1}(C_j)`.
    Limit,
}

/// Taylor coefficients `C_j = H^j E_0 / j!` of `E_t = e^{tH} E_0`, for `j ≤ order`.
pub fn semigroup_taylor(
    h: &AlgebraElement,
    e0: &AlgebraElement,
    order: usize,
    mode: SemigroupMode,
) -> Result<Vec<AlgebraElement>> {
    same_k(h.k, e0.k)?;
    let (h, first) = match mode {
        SemigroupMode::FiniteN => (h.clone(), e0.clone()),
        SemigroupMode::Limit => (m_n_inverse(h).limit()?, m_n_inverse(e0).limit()?),
    };
    let mut out = Vec::with_capacity(order + 1);
    out.push(first);
    for j in 1..=order {
        let prev = &out[j - 1];
        let next = match mode {
            SemigroupMode::FiniteN => algebra_product(&h, prev)?,
            SemigroupMode::Limit => limit_product(&h, prev)?,
        };
        let inv = LaurentScalar::constant(Rational::one() / int(j as i64));
        out.push(next.scale(&inv));
    }
    Ok(out)
}

/// `Σ_{q ∈ K_{p'}(p1)} κ_q` summed over `p' ≤ p0`: the right side of the
/// identity `m_{ᵗp1 ∘ p0}(E) = Σ_{p' ≤ p0} κ_{K_{p'}(p1)}(E)` for `p1 ≤ p0`.
pub fn kreweras_moment_sum(space: &Space, kappa: &LinearForm, p1: &Partition, p0: &Partition) -> Result<Rational> {
    let k = columns(p0)?;
    same_k(k, columns(p1)?)?;
    space_holds(space, k)?;
    let l = space.level(k);
    let i1 = l.index_of(p1);
    let mut total = Rational::zero();
    for &pp in l.geo_below(l.index_of(p0)) {
        for &(a, b) in l.eta_zero_pairs(pp) {
            if a == i1 {
                total += kappa.at(k, b);
            }
        }
    }
    Ok(total)
}

/// `m_{ᵗp1 ∘ p0}` read from a moment form.
pub fn transposed_moment(space: &Space, moments: &LinearForm, p1: &Partition, p0: &Partition) -> Result<Rational> {
    let k = columns(p0)?;
    same_k(k, columns(p1)?)?;
    space_holds(space, k)?;
    let q = compose_unchecked(&transpose(p1)?, p0).product;
    Ok(moments.at(k, space.level(k).index_of(&q)).clone())
}

/// `p1 ≤ p0` for the geodesic order based at `id_k`.
pub fn geodesic_leq(p1: &Partition, p0: &Partition) -> Result<bool> {
    let k = columns(p0)?;
    same_k(k, columns(p1)?)?;
    Ok(in_order_unchecked(OrderKind::Geodesic, &identity(k), p1, p0))
}
