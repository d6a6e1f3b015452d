//! Linear forms on `⊕_{k ≤ K} ℂ[P_k]` and the operators acting on them.
//!
//! A [`Space`] precomputes, for every `k ≤ K`, the geodesic order with base
//! `id_k`, its coarser- and finer-compatible parts, the cycle splittings of
//! each diagram and the full composition table. Forms on the orbit algebra
//! are represented as conjugation-invariant forms on diagrams; every operator
//! here maps invariant forms to invariant forms.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::diagram::{
    columns, compose_unchecked, cycles_unchecked, extract_columns, family_contains, identity,
    structure, transpose, zero, DiagramFamily,
};
use crate::error::{Error, Result};
use crate::geometry::{distance_unchecked, in_order_unchecked, OrderKind};
use crate::halfint::HalfInt;
use crate::kreweras::eta_with;
use crate::orbit::orbit_unchecked;
use crate::partition::{Basis, GroundSet, Partition};
use crate::scalar::{int, Rational, Scalar, TPoly};

/// Largest degree bound a [`Space`] accepts. The composition table of `P_k`
/// has `Bell(2k)²` entries.
pub const MAX_SPACE_K: usize = 3;

/// One composition `p_i ∘ p_j` inside a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Product {
    pub product: usize,
    pub loops: usize,
    pub eta: i64,
}

/// A splitting of a diagram along a set of its cycles: `(|I|, index of p_I, |I^c|, index of p_{I^c})`.
pub type Split = (usize, usize, usize, usize);

/// Precomputed data for `P_k`.
pub struct Level {
    pub k: usize,
    basis: Basis,
    geo_below: Vec<Vec<usize>>,
    finer_below: Vec<Vec<usize>>,
    coarser_below: Vec<Vec<usize>>,
    splits: Vec<Vec<Split>>,
    products: Vec<Product>,
    eta_zero: Vec<Vec<(usize, usize)>>,
    transposed: Vec<usize>,
    orbit_rep: Vec<usize>,
    families: Vec<(DiagramFamily, Vec<bool>)>,
    id: usize,
    zero: usize,
}

impl Level {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn parts(&self) -> &[Partition] {
        self.basis.parts()
    }

    pub fn get(&self, i: usize) -> &Partition {
        self.basis.get(i)
    }

    pub fn index_of(&self, p: &Partition) -> usize {
        self.basis.index_of(p)
    }

    /// Indices `q` with `q ≤ p` for the geodesic order based at `id_k`.
    pub fn geo_below(&self, p: usize) -> &[usize] {
        &self.geo_below[p]
    }

    /// Indices `q` with `q ⊐ p`.
    pub fn finer_below(&self, p: usize) -> &[usize] {
        &self.finer_below[p]
    }

    /// Indices `q` with `q ⊣ p`.
    pub fn coarser_below(&self, p: usize) -> &[usize] {
        &self.coarser_below[p]
    }

    /// One entry per subset of the cycles of `p`.
    pub fn splits(&self, p: usize) -> &[Split] {
        &self.splits[p]
    }

    pub fn product(&self, i: usize, j: usize) -> Product {
        self.products[i * self.len() + j]
    }

    /// Pairs `(p1, p2)` with `p1 ∘ p2 = p` and `η(p1, p2) = 0`.
    pub fn eta_zero_pairs(&self, p: usize) -> &[(usize, usize)] {
        &self.eta_zero[p]
    }

    pub fn transposed(&self, p: usize) -> usize {
        self.transposed[p]
    }

    /// Index of the least conjugate of `p`.
    pub fn orbit_rep(&self, p: usize) -> usize {
        self.orbit_rep[p]
    }

    pub fn in_family(&self, f: DiagramFamily, p: usize) -> bool {
        self.families
            .iter()
            .find(|(g, _)| *g == f)
            .map(|(_, mask)| mask[p])
            .unwrap_or(true)
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    fn build(k: usize) -> Result<Level> {
        let basis = Basis::new(GroundSet::diagram(k))?;
        let parts = basis.parts();
        let n = parts.len();
        let idp = identity(k);
        let below = |kind: OrderKind| -> Vec<Vec<usize>> {
            (0..n)
                .map(|p| {
                    (0..n)
                        .filter(|&q| in_order_unchecked(kind, &idp, &parts[q], &parts[p]))
                        .collect()
                })
                .collect()
        };
        let geo_below = below(OrderKind::Geodesic);
        let finer_below = below(OrderKind::FinerCompatible);
        let coarser_below = below(OrderKind::CoarserCompatible);

        let mut products = Vec::with_capacity(n * n);
        let mut eta_zero = vec![Vec::new(); n];
        for (i, p) in parts.iter().enumerate() {
            for (j, q) in parts.iter().enumerate() {
                let c = compose_unchecked(p, q);
                let eta = eta_with(p, q, &c.product, c.loops, &idp);
                let product = basis.index_of(&c.product);
                if eta == 0 {
                    eta_zero[product].push((i, j));
                }
                products.push(Product {
                    product,
                    loops: c.loops,
                    eta,
                });
            }
        }
        let transposed = parts
            .iter()
            .map(|p| basis.index_of(&transpose(p).expect("diagram")))
            .collect();
        let orbit_rep = parts
            .iter()
            .map(|p| basis.index_of(&orbit_unchecked(p, k).rep))
            .collect();
        let families = DiagramFamily::ALL
            .iter()
            .map(|&f| {
                let mask = parts
                    .iter()
                    .map(|p| family_contains(f, p).expect("diagram"))
                    .collect();
                (f, mask)
            })
            .collect();
        let id = basis.index_of(&idp);
        let zero = basis.index_of(&zero(k));
        Ok(Level {
            k,
            basis,
            geo_below,
            finer_below,
            coarser_below,
            splits: Vec::new(),
            products,
            eta_zero,
            transposed,
            orbit_rep,
            families,
            id,
            zero,
        })
    }
}

/// The context every form and operator lives in: `P_0, …, P_K`.
pub struct Space {
    levels: Vec<Level>,
}

impl Space {
    pub fn new(max_k: usize) -> Result<Space> {
        if max_k > MAX_SPACE_K {
            return Err(Error::SizeLimit {
                size: max_k,
                limit: MAX_SPACE_K,
            });
        }
        let mut levels: Vec<Level> = (0..=max_k).map(Level::build).collect::<Result<_>>()?;
        // Splittings index into lower levels, so they are filled in afterwards.
        for k in 0..=max_k {
            let splits = levels[k]
                .parts()
                .iter()
                .map(|p| {
                    let cyc = cycles_unchecked(p, k);
                    (0u32..1 << cyc.len())
                        .map(|mask| {
                            let (mut inside, mut outside) = (Vec::new(), Vec::new());
                            for (c, cols) in cyc.iter().enumerate() {
                                if mask >> c & 1 == 1 {
                                    inside.extend_from_slice(cols);
                                } else {
                                    outside.extend_from_slice(cols);
                                }
                            }
                            inside.sort_unstable();
                            outside.sort_unstable();
                            let a = extract_columns(p, &inside);
                            let b = extract_columns(p, &outside);
                            (
                                inside.len(),
                                levels[inside.len()].index_of(&a),
                                outside.len(),
                                levels[outside.len()].index_of(&b),
                            )
                        })
                        .collect()
                })
                .collect();
            levels[k].splits = splits;
        }
        Ok(Space { levels })
    }

    pub fn max_k(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// `(k, index)` of a diagram.
    pub fn locate(&self, p: &Partition) -> Result<(usize, usize)> {
        let k = columns(p)?;
        if k > self.max_k() {
            return Err(Error::SizeLimit {
                size: k,
                limit: self.max_k(),
            });
        }
        Ok((k, self.levels[k].index_of(p)))
    }
}

/// A linear form on `⊕_{k ≤ K} ℂ[P_k]`, given by its values on diagrams.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<V = Rational> {
    values: Vec<Vec<V>>,
}

impl<V: Scalar> LinearForm<V> {
    pub fn zero(space: &Space) -> Self {
        Self::from_fn(space, |_, _| V::zero())
    }

    /// Build from a function of `(k, index)`.
    pub fn from_fn(space: &Space, mut f: impl FnMut(usize, usize) -> V) -> Self {
        let values = space
            .levels()
            .iter()
            .map(|l| (0..l.len()).map(|i| f(l.k, i)).collect())
            .collect();
        LinearForm { values }
    }

    /// Build from a function of the diagram.
    pub fn from_partitions(space: &Space, mut f: impl FnMut(&Partition) -> V) -> Self {
        Self::from_fn(space, |k, i| f(space.level(k).get(i)))
    }

    /// The coordinate form `p ↦ δ_{p = q}`.
    pub fn delta(space: &Space, q: &Partition) -> Result<Self> {
        let (k0, i0) = space.locate(q)?;
        Ok(Self::from_fn(space, |k, i| {
            if (k, i) == (k0, i0) {
                V::one()
            } else {
                V::zero()
            }
        }))
    }

    pub fn degree_bound(&self) -> usize {
        self.values.len() - 1
    }

    pub fn at(&self, k: usize, i: usize) -> &V {
        &self.values[k][i]
    }

    pub fn set(&mut self, k: usize, i: usize, v: V) {
        self.values[k][i] = v;
    }

    pub fn level(&self, k: usize) -> &[V] {
        &self.values[k]
    }

    pub fn get(&self, space: &Space, p: &Partition) -> Result<&V> {
        let (k, i) = space.locate(p)?;
        Ok(&self.values[k][i])
    }

    pub fn map<W: Scalar>(&self, mut f: impl FnMut(&V) -> W) -> LinearForm<W> {
        LinearForm {
            values: self.values.iter().map(|l| l.iter().map(&mut f).collect()).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&V, &V) -> V) -> Self {
        LinearForm {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &V) -> Self {
        self.map(|v| c.clone() * v.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_zero())
    }

    /// Keep the levels `k ≤ max_k` only.
    pub fn truncate_degree(&self, max_k: usize) -> Self {
        LinearForm {
            values: self.values.iter().take(max_k + 1).cloned().collect(),
        }
    }
}

impl LinearForm<TPoly> {
    /// The form of `t^j`-coefficients.
    pub fn t_coeff(&self, j: usize) -> LinearForm<Rational> {
        self.map(|v| v.coeff(j))
    }
}

/// The two convolution structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convolution {
    BoxPlus,
    BoxTimes,
}

/// The counit whose derivations define infinitesimal characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    /// `δ_{[∅]}`.
    BoxPlus,
    /// `δ_{id_k}` for every `k`.
    BoxTimes,
    /// `δ_{0_k}` for every `k`.
    Exclusive,
}

impl From<Convolution> for Unit {
    fn from(c: Convolution) -> Unit {
        match c {
            Convolution::BoxPlus => Unit::BoxPlus,
            Convolution::BoxTimes => Unit::BoxTimes,
        }
    }
}

/// Which transform of the moment family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    /// Sum over `≤`.
    M,
    /// Inverse of `M`.
    R,
    /// Sum over `⊐`.
    MToC,
    /// Sum over `⊣`.
    MCTo,
}

fn sum_below<'a, V: Scalar>(phi: &LinearForm<V>, below: impl Fn(usize, usize) -> &'a [usize]) -> LinearForm<V> {
    let values = phi
        .values
        .iter()
        .enumerate()
        .map(|(k, vals)| {
            (0..vals.len())
                .map(|p| {
                    below(k, p)
                        .iter()
                        .fold(V::zero(), |acc, &q| acc + vals[q].clone())
                })
                .collect()
        })
        .collect();
    LinearForm { values }
}

/// Solve `ψ(p) = Σ_{q ≼ p} φ(q)` for `φ`. A strictly smaller element has a
/// strictly shorter down-set, so sorting by down-set size is a linear extension.
fn solve_below<'a, V: Scalar>(psi: &LinearForm<V>, below: impl Fn(usize, usize) -> &'a [usize]) -> LinearForm<V> {
    let values = psi
        .values
        .iter()
        .enumerate()
        .map(|(k, vals)| {
            let n = vals.len();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&p| below(k, p).len());
            let mut out = vec![V::zero(); n];
            for p in order {
                let mut v = vals[p].clone();
                for &q in below(k, p) {
                    if q != p {
                        v = v - out[q].clone();
                    }
                }
                out[p] = v;
            }
            out
        })
        .collect();
    LinearForm { values }
}

/// Value of a counit at `(k, i)`.
fn unit_value<V: Scalar>(space: &Space, unit: Unit, k: usize, i: usize) -> V {
    let l = space.level(k);
    let hit = match unit {
        Unit::BoxPlus => k == 0,
        Unit::BoxTimes => i == l.id(),
        Unit::Exclusive => i == l.zero(),
    };
    if hit {
        V::one()
    } else {
        V::zero()
    }
}

impl Space {
    /// `ε_⊞`, `ε_⊠` or `ε^c_⊠` as a form.
    pub fn unit<V: Scalar>(&self, unit: Unit) -> LinearForm<V> {
        LinearForm::from_fn(self, |k, i| unit_value(self, unit, k, i))
    }

    pub fn transform<V: Scalar>(&self, which: Transform, phi: &LinearForm<V>) -> LinearForm<V> {
        match which {
            Transform::M => self.m(phi),
            Transform::R => self.r(phi),
            Transform::MToC => self.m_to_c(phi),
            Transform::MCTo => self.m_c_to(phi),
        }
    }

    /// `M(φ)(p) = Σ_{q ≤ p} φ(q)`.
    pub fn m<V: Scalar>(&self, phi: &LinearForm<V>) -> LinearForm<V> {
        sum_below(phi, |k, p| self.level(k).geo_below(p))
    }

    /// `R = M^{-1}`.
    pub fn r<V: Scalar>(&self, psi: &LinearForm<V>) -> LinearForm<V> {
        solve_below(psi, |k, p| self.level(k).geo_below(p))
    }

    /// `M^{→c}(φ)(p) = Σ_{q ⊐ p} φ(q)`.
    pub fn m_to_c<V: Scalar>(&self, phi: &LinearForm<V>) -> LinearForm<V> {
        sum_below(phi, |k, p| self.level(k).finer_below(p))
    }

    pub fn m_to_c_inverse<V: Scalar>(&self, psi: &LinearForm<V>) -> LinearForm<V> {
        solve_below(psi, |k, p| self.level(k).finer_below(p))
    }

    /// `M^{c→}(φ)(p) = Σ_{q ⊣ p} φ(q)`.
    pub fn m_c_to<V: Scalar>(&self, phi: &LinearForm<V>) -> LinearForm<V> {
        sum_below(phi, |k, p| self.level(k).coarser_below(p))
    }

    pub fn m_c_to_inverse<V: Scalar>(&self, psi: &LinearForm<V>) -> LinearForm<V> {
        solve_below(psi, |k, p| self.level(k).coarser_below(p))
    }

    pub fn convolve<V: Scalar>(&self, which: Convolution, a: &LinearForm<V>, b: &LinearForm<V>) -> LinearForm<V> {
        match which {
            Convolution::BoxPlus => self.boxplus(a, b),
            Convolution::BoxTimes => self.boxtimes(a, b),
        }
    }

    /// `(φ1 ⊞ φ2)(p) = Σ_{I ⊆ cycles(p)} φ1(p_I) φ2(p_{I^c})`.
    pub fn boxplus<V: Scalar>(&self, a: &LinearForm<V>, b: &LinearForm<V>) -> LinearForm<V> {
        LinearForm::from_fn(self, |k, p| {
            self.level(k)
                .splits(p)
                .iter()
                .fold(V::zero(), |acc, &(ki, i, kj, j)| {
                    acc + a.values[ki][i].clone() * b.values[kj][j].clone()
                })
        })
    }

    /// `(φ1 ⊠ φ2)(p) = Σ_{p1 ∘ p2 = p, η(p1,p2) = 0} φ1(p1) φ2(p2)`.
    pub fn boxtimes<V: Scalar>(&self, a: &LinearForm<V>, b: &LinearForm<V>) -> LinearForm<V> {
        LinearForm::from_fn(self, |k, p| {
            self.level(k)
                .eta_zero_pairs(p)
                .iter()
                .fold(V::zero(), |acc, &(i, j)| {
                    acc + a.values[k][i].clone() * b.values[k][j].clone()
                })
        })
    }

    /// `(φ1 ⊠^m_g φ2)(p) = Σ_{p1 ≤ p} φ1(p ∘ ᵗp1) φ2(p1)`.
    pub fn boxtimes_mg<V: Scalar>(&self, a: &LinearForm<V>, b: &LinearForm<V>) -> LinearForm<V> {
        LinearForm::from_fn(self, |k, p| {
            let l = self.level(k);
            l.geo_below(p).iter().fold(V::zero(), |acc, &p1| {
                let left = l.product(p, l.transposed(p1)).product;
                acc + a.values[k][left].clone() * b.values[k][p1].clone()
            })
        })
    }

    /// `(φ1 ⊠^m_d φ2)(p) = Σ_{p1 ≤ p} φ1(p1) φ2(ᵗp1 ∘ p)`.
    pub fn boxtimes_md<V: Scalar>(&self, a: &LinearForm<V>, b: &LinearForm<V>) -> LinearForm<V> {
        LinearForm::from_fn(self, |k, p| {
            let l = self.level(k);
            l.geo_below(p).iter().fold(V::zero(), |acc, &p1| {
                let right = l.product(l.transposed(p1), p).product;
                acc + a.values[k][p1].clone() * b.values[k][right].clone()
            })
        })
    }

    /// `φ^{⊡j}` for `j = 0..=n`, starting from the counit.
    pub fn powers<V: Scalar>(&self, which: Convolution, phi: &LinearForm<V>, n: usize) -> Vec<LinearForm<V>> {
        let mut out = vec![self.unit(which.into())];
        for j in 1..=n {
            let next = self.convolve(which, phi, &out[j - 1]);
            out.push(next);
        }
        out
    }

    /// `Σ_{j ≤ n} t^j φ^{⊡j} / j!`, the Taylor polynomial of `e^{⊡tφ}`.
    pub fn exp_convolution(&self, which: Convolution, phi: &LinearForm<Rational>, n: usize) -> LinearForm<TPoly> {
        let powers = self.powers(which, phi, n);
        let mut fact = Rational::one();
        let mut scaled = Vec::with_capacity(n + 1);
        for (j, pw) in powers.into_iter().enumerate() {
            if j > 0 {
                fact *= int(j as i64);
            }
            let inv = fact.recip();
            scaled.push(pw.map(|v| v.clone() * inv.clone()));
        }
        LinearForm::from_fn(self, |k, i| {
            TPoly::new(scaled.iter().map(|f| f.values[k][i].clone()).collect())
        })
    }

    /// `φ(σ p σ^{-1}) = φ(p)` for all `σ`.
    pub fn is_invariant<V: Scalar>(&self, phi: &LinearForm<V>) -> bool {
        self.levels.iter().all(|l| {
            (0..l.len()).all(|p| phi.values[l.k][p] == phi.values[l.k][l.orbit_rep(p)])
        })
    }

    /// Replace every value by the value at the orbit representative.
    pub fn orbit_form<V: Scalar>(&self, phi: &LinearForm<V>) -> LinearForm<V> {
        LinearForm::from_fn(self, |k, p| phi.values[k][self.level(k).orbit_rep(p)].clone())
    }

    /// Invariance plus `rel(φ(p), φ(p_I), φ(p_{I^c}), (k_I, i), (k_{I^c}, j))` over every cycle splitting.
    fn check_splits<V: Scalar>(
        &self,
        phi: &LinearForm<V>,
        rel: impl Fn(&V, &V, &V, (usize, usize), (usize, usize)) -> bool,
    ) -> bool {
        self.is_invariant(phi)
            && self.levels.iter().all(|l| {
                (0..l.len()).all(|p| {
                    l.splits(p).iter().all(|&(ki, i, kj, j)| {
                        rel(&phi.values[l.k][p], &phi.values[ki][i], &phi.values[kj][j], (ki, i), (kj, j))
                    })
                })
            })
    }

    /// `φ([∅]) = 1` and `φ(p1 ⊗ p2) = φ(p1) φ(p2)`.
    pub fn is_character<V: Scalar>(&self, phi: &LinearForm<V>) -> bool {
        phi.values[0][0].is_one() && self.check_splits(phi, |v, a, b, _, _| *v == a.clone() * b.clone())
    }

    /// [`Self::is_character`] with products compared modulo `t^{n+1}`.
    pub fn is_character_to_order(&self, phi: &LinearForm<TPoly>, n: usize) -> bool {
        phi.values[0][0].truncate(n).is_one()
            && self.check_splits(phi, |v, a, b, _, _| v.truncate(n) == (a.clone() * b.clone()).truncate(n))
    }

    /// `φ(p1 ⊗ p2) = φ(p1) + φ(p2)`.
    pub fn is_additive<V: Scalar>(&self, phi: &LinearForm<V>) -> bool {
        self.check_splits(phi, |v, a, b, _, _| *v == a.clone() + b.clone())
    }

    /// `φ(p1 ⊗ p2) = φ(p1) ε(p2) + ε(p1) φ(p2)` for the given counit `ε`.
    pub fn is_infinitesimal<V: Scalar>(&self, phi: &LinearForm<V>, unit: Unit) -> bool {
        self.check_splits(phi, |v, a, b, (ki, i), (kj, j)| {
            let ea: V = unit_value(self, unit, ki, i);
            let eb: V = unit_value(self, unit, kj, j);
            *v == a.clone() * eb + ea * b.clone()
        })
    }

    /// The character with `φ(p) = Π_{cycles c} f(p_c)`; only the values of `f`
    /// on irreducible diagrams are read.
    pub fn multiplicative_extension<V: Scalar>(&self, f: &LinearForm<V>) -> LinearForm<V> {
        self.extend_over_cycles(f, V::one(), |acc, v| acc * v)
    }

    /// The additive character with `φ(p) = Σ_{cycles c} f(p_c)`.
    pub fn additive_extension<V: Scalar>(&self, f: &LinearForm<V>) -> LinearForm<V> {
        self.extend_over_cycles(f, V::zero(), |acc, v| acc + v)
    }

    fn extend_over_cycles<V: Scalar>(&self, f: &LinearForm<V>, init: V, op: impl Fn(V, V) -> V) -> LinearForm<V> {
        let f = self.orbit_form(f);
        LinearForm::from_fn(self, |k, p| {
            let l = self.level(k);
            // Singleton-cycle splittings list each cycle once as `p_I` with `|cycles(p_I)| = 1`.
            l.splits(p)
                .iter()
                .filter(|&&(ki, i, _, _)| ki > 0 && self.level(ki).splits(i).len() == 2)
                .fold(init.clone(), |acc, &(ki, i, _, _)| op(acc, f.values[ki][i].clone()))
        })
    }

    /// The `⊡`-infinitesimal character determined by `f`.
    ///
    /// For `⊞` it is `f` on irreducible diagrams and zero elsewhere. For `⊠`
    /// it is `f(p_S)` on weakly irreducible `p` with irreducible support
    /// extraction `p_S`, `k · f(id_1)` on `id_k`, and zero elsewhere.
    pub fn infinitesimal_extension<V: Scalar>(&self, f: &LinearForm<V>, which: Convolution) -> LinearForm<V> {
        let f = self.orbit_form(f);
        LinearForm::from_fn(self, |k, p| {
            let l = self.level(k);
            let q = l.get(p);
            match which {
                Convolution::BoxPlus => {
                    if l.splits(p).len() == 2 {
                        f.values[k][p].clone()
                    } else {
                        V::zero()
                    }
                }
                Convolution::BoxTimes => {
                    if p == l.id() {
                        let one = if self.max_k() >= 1 {
                            f.values[1][self.level(1).id()].clone()
                        } else {
                            V::zero()
                        };
                        return (0..k).fold(V::zero(), |acc, _| acc + one.clone());
                    }
                    let s = structure(q).expect("diagram");
                    if s.is_weakly_irreducible {
                        let ks = s.support.len();
                        let i = self.level(ks).index_of(&extract_columns(q, &s.support));
                        f.values[ks][i].clone()
                    } else {
                        V::zero()
                    }
                }
            }
        })
    }

    /// `E_A ∘ R_A`: zero every value outside the family.
    pub fn erase_outside<V: Scalar>(&self, phi: &LinearForm<V>, family: DiagramFamily) -> LinearForm<V> {
        LinearForm::from_fn(self, |k, p| {
            if self.level(k).in_family(family, p) {
                phi.values[k][p].clone()
            } else {
                V::zero()
            }
        })
    }

    /// `M_A = R_A ∘ M ∘ E_A`, stored on `P_k` with zeros off the family.
    pub fn m_family<V: Scalar>(&self, phi: &LinearForm<V>, family: DiagramFamily) -> LinearForm<V> {
        let restricted = self.erase_outside(phi, family);
        self.erase_outside(&self.m(&restricted), family)
    }

    /// `R_A = M_A^{-1}` on forms supported by the family.
    pub fn r_family<V: Scalar>(&self, psi: &LinearForm<V>, family: DiagramFamily) -> LinearForm<V> {
        let below: Vec<Vec<Vec<usize>>> = self
            .levels
            .iter()
            .map(|l| {
                (0..l.len())
                    .map(|p| {
                        if l.in_family(family, p) {
                            l.geo_below(p).iter().copied().filter(|&q| l.in_family(family, q)).collect()
                        } else {
                            Vec::new()
                        }
                    })
                    .collect()
            })
            .collect();
        let restricted = self.erase_outside(psi, family);
        solve_below(&restricted, |k, p| &below[k][p])
    }

    /// Cumulant projection `C^κ_A = E_A ∘ R_A ∘ R_A ∘ M`.
    pub fn cumulant_projection<V: Scalar>(&self, phi: &LinearForm<V>, family: DiagramFamily) -> LinearForm<V> {
        self.r_family(&self.m(phi), family)
    }

    /// Moment projection `C^m_A = M ∘ C^κ_A ∘ R`.
    pub fn moment_projection<V: Scalar>(&self, phi: &LinearForm<V>, family: DiagramFamily) -> LinearForm<V> {
        self.m(&self.cumulant_projection(&self.r(phi), family))
    }

    /// Exclusive projection `C^{m^c}_A = M^{→c} ∘ C^κ_A ∘ (M^{→c})^{-1}`.
    pub fn exclusive_projection<V: Scalar>(&self, phi: &LinearForm<V>, family: DiagramFamily) -> LinearForm<V> {
        self.m_to_c(&self.cumulant_projection(&self.m_to_c_inverse(phi), family))
    }

    /// `h_⊞` or `h_⊠` of a pair of diagrams; the induction measure behind
    /// exponentials of infinitesimal characters.
    pub fn height(&self, which: Convolution, a: &Partition, b: &Partition) -> Result<HalfInt> {
        let (ka, kb) = (columns(a)?, columns(b)?);
        Ok(match which {
            Convolution::BoxPlus => HalfInt::from_int((ka + kb) as i64),
            Convolution::BoxTimes => distance_unchecked(&identity(ka), a) + distance_unchecked(&identity(kb), b),
        })
    }
}
