//! Partitions of `{1..k, 1'..k'}` viewed as diagrams: composition, tensor
//! product, transposition, extraction, special families and traces.
//!
//! Element `i` (top row) has index `i−1` and element `i'` (bottom row) has
//! index `k+i−1`. In `p ∘ q` the diagram of `q` is stacked above the one of
//! `p`: the bottom row of `q` is glued to the top row of `p`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::geometry::{admissible_splits, mu_refinement_int};
use crate::partition::{link_blocks, nc_join, Partition, UnionFind};

/// Number of columns of a diagram.
pub fn columns(p: &Partition) -> Result<usize> {
    if p.size() % 2 == 1 {
        return Err(Error::NotDiagram(p.size()));
    }
    Ok(p.size() / 2)
}

fn same_k(p: &Partition, q: &Partition) -> Result<usize> {
    let (a, b) = (columns(p)?, columns(q)?);
    if a != b {
        return Err(Error::KMismatch { left: a, right: b });
    }
    Ok(a)
}

/// `id_k = {{i, i'}}`.
pub fn identity(k: usize) -> Partition {
    let keys: Vec<usize> = (0..2 * k).map(|i| i % k.max(1)).collect();
    Partition::from_labels(&keys)
}

/// `0_k`, the one-block partition of `P_k`.
pub fn zero(k: usize) -> Partition {
    Partition::one_block(2 * k)
}

/// The permutation diagram `{{i, σ(i)'}}`; `images` is 0-based.
pub fn permutation(images: &[usize]) -> Result<Partition> {
    let k = images.len();
    let mut keys = vec![0usize; 2 * k];
    let mut hit = vec![false; k];
    for (i, &s) in images.iter().enumerate() {
        if s >= k || hit[s] {
            return Err(Error::Invalid(alloc::format!("{images:?} is not a permutation")));
        }
        hit[s] = true;
        keys[i] = i;
        keys[k + s] = i;
    }
    Ok(Partition::from_labels(&keys))
}

fn check_pair(k: usize, i: usize, j: usize) -> Result<()> {
    for x in [i, j] {
        if x == 0 || x > k {
            return Err(Error::IndexOutOfRange { index: x, k });
        }
    }
    if i == j {
        return Err(Error::Invalid("the two indices must differ".into()));
    }
    Ok(())
}

/// The transposition `(i, j)` (1-based).
pub fn transposition(k: usize, i: usize, j: usize) -> Result<Partition> {
    check_pair(k, i, j)?;
    let mut images: Vec<usize> = (0..k).collect();
    images.swap(i - 1, j - 1);
    permutation(&images)
}

/// The Weyl contraction `[i, j] = {{i, j}, {i', j'}} ∪ {{l, l'}}` (1-based).
pub fn contraction(k: usize, i: usize, j: usize) -> Result<Partition> {
    check_pair(k, i, j)?;
    let mut keys: Vec<usize> = (0..2 * k).map(|x| x % k).collect();
    keys[j - 1] = i - 1;
    keys[k + i - 1] = k + i - 1;
    keys[k + j - 1] = k + i - 1;
    Ok(Partition::from_labels(&keys))
}

/// The cycle `(1, …, k)` sending `i` to `i+1`.
pub fn long_cycle(k: usize) -> Partition {
    let images: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
    permutation(&images).expect("a cycle is a permutation")
}

/// `τ = (1, k+1)(2, k+2)⋯(k, 2k)` in `P_{2k}`.
pub fn tau(k: usize) -> Partition {
    let images: Vec<usize> = (0..2 * k).map(|i| (i + k) % (2 * k)).collect();
    permutation(&images).expect("τ is a permutation")
}

/// Which standard diagram [`standard_element`] should build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Identity,
    Zero,
    Transposition(usize, usize),
    Contraction(usize, usize),
    LongCycle,
    /// Lives in `P_{2k}`.
    Tau,
}

pub fn standard_element(kind: StandardKind, k: usize) -> Result<Partition> {
    match kind {
        StandardKind::Identity => Ok(identity(k)),
        StandardKind::Zero => Ok(zero(k)),
        StandardKind::Transposition(i, j) => transposition(k, i, j),
        StandardKind::Contraction(i, j) => contraction(k, i, j),
        StandardKind::LongCycle => Ok(long_cycle(k)),
        StandardKind::Tau => Ok(tau(k)),
    }
}

/// The result of stacking two diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeResult {
    pub product: Partition,
    /// Components living entirely in the middle row.
    pub loops: usize,
}

/// `p ∘ q` together with `κ(p, q)`.
pub fn compose(p: &Partition, q: &Partition) -> Result<ComposeResult> {
    same_k(p, q)?;
    Ok(compose_unchecked(p, q))
}

pub(crate) fn compose_unchecked(p: &Partition, q: &Partition) -> ComposeResult {
    let k = p.size() / 2;
    // Rows: q-top at 0..k, middle at k..2k, p-bottom at 2k..3k.
    // q's indices map to themselves, p's indices are shifted by k.
    let mut uf = UnionFind::new(3 * k);
    link_blocks(&mut uf, q, 0);
    link_blocks(&mut uf, p, k);
    let mut roots: Vec<usize> = Vec::with_capacity(2 * k);
    for i in (0..k).chain(2 * k..3 * k) {
        roots.push(uf.find(i));
    }
    let outer: BTreeSet<usize> = roots.iter().copied().collect();
    let mut middle: BTreeSet<usize> = BTreeSet::new();
    for i in k..2 * k {
        let r = uf.find(i);
        if !outer.contains(&r) {
            middle.insert(r);
        }
    }
    ComposeResult {
        product: Partition::from_labels(&roots),
        loops: middle.len(),
    }
}

/// `p ⊗ q`: the diagram of `q` placed to the right of the one of `p`.
pub fn tensor(p: &Partition, q: &Partition) -> Result<Partition> {
    let (k, l) = (columns(p)?, columns(q)?);
    let n = k + l;
    let mut keys = vec![0usize; 2 * n];
    for i in 0..k {
        keys[i] = p.label(i);
        keys[n + i] = p.label(k + i);
    }
    let shift = p.nc();
    for j in 0..l {
        keys[k + j] = shift + q.label(j);
        keys[n + k + j] = shift + q.label(l + j);
    }
    Ok(Partition::from_labels(&keys))
}

/// Swap the roles of the two rows.
pub fn transpose(p: &Partition) -> Result<Partition> {
    let k = columns(p)?;
    let perm: Vec<usize> = (0..2 * k).map(|i| (i + k) % (2 * k)).collect();
    Ok(p.permute(&perm))
}

/// Restriction of `p` to the columns meeting `points` (indices into the
/// `2k` elements), relabelled from left to right.
pub fn extract(p: &Partition, points: &[usize]) -> Result<Partition> {
    let k = columns(p)?;
    let mut cols: Vec<usize> = Vec::new();
    for &x in points {
        if x >= 2 * k {
            return Err(Error::IndexOutOfRange { index: x + 1, k: 2 * k });
        }
        cols.push(x % k);
    }
    cols.sort_unstable();
    cols.dedup();
    Ok(extract_columns(p, &cols))
}

/// Restriction to a sorted list of 0-based columns.
pub(crate) fn extract_columns(p: &Partition, cols: &[usize]) -> Partition {
    let k = p.size() / 2;
    let elements: Vec<usize> = cols.iter().copied().chain(cols.iter().map(|c| c + k)).collect();
    p.restrict(&elements)
}

/// Cycles, support and irreducibility data of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    /// Blocks of `p ∨ id_k`, each given by its sorted 0-based columns.
    pub cycles: Vec<Vec<usize>>,
    /// Columns `i` (0-based) such that `{i, i'}` is not a block of `p`.
    pub support: Vec<usize>,
    pub is_irreducible: bool,
    pub is_weakly_irreducible: bool,
    pub is_exclusive_irreducible: bool,
    /// The distinguished cycle when exactly one cycle can play that role.
    pub exclusive_support: Option<Vec<usize>>,
}

/// Blocks of `p ∨ id_k` as column sets.
pub fn cycles(p: &Partition) -> Result<Vec<Vec<usize>>> {
    let k = columns(p)?;
    Ok(cycles_unchecked(p, k))
}

pub(crate) fn cycles_unchecked(p: &Partition, k: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(2 * k);
    link_blocks(&mut uf, p, 0);
    for i in 0..k {
        uf.union(i, i + k);
    }
    let keys: Vec<usize> = (0..k).map(|i| uf.find(i)).collect();
    Partition::from_labels(&keys).blocks()
}

fn is_zero_diagram(p: &Partition) -> bool {
    p.nc() == 1
}

pub fn structure(p: &Partition) -> Result<Structure> {
    let k = columns(p)?;
    let cycles = cycles_unchecked(p, k);
    let support: Vec<usize> = (0..k)
        .filter(|&i| {
            let l = p.labels()[i];
            let mate = p.labels()[i + k];
            !(l == mate && p.labels().iter().filter(|&&x| x == l).count() == 2)
        })
        .collect();
    let is_irreducible = cycles.len() == 1;
    let restricted = extract_columns(p, &support);
    let is_weakly_irreducible = support.is_empty() || nc_join(&restricted, &identity(support.len())) == 1;
    let candidates: Vec<usize> = (0..cycles.len())
        .filter(|&c0| {
            cycles
                .iter()
                .enumerate()
                .all(|(c, cols)| c == c0 || is_zero_diagram(&extract_columns(p, cols)))
        })
        .collect();
    let is_exclusive_irreducible = !candidates.is_empty();
    let exclusive_support = if candidates.len() == 1 {
        Some(cycles[candidates[0]].clone())
    } else {
        None
    };
    Ok(Structure {
        cycles,
        support,
        is_irreducible,
        is_weakly_irreducible,
        is_exclusive_irreducible,
        exclusive_support,
    })
}

/// Subfamilies of `P_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagramFamily {
    /// Every block has one top and one bottom element.
    Permutations,
    /// Every block has two elements.
    Brauer,
    /// Every block has at most two elements.
    AtMostPairs,
    /// Every block has an even number of elements.
    EvenBlocks,
    /// Coarser than `id_k`.
    CoarserThanId,
    All,
}

impl DiagramFamily {
    pub const ALL: [DiagramFamily; 6] = [
        DiagramFamily::Permutations,
        DiagramFamily::Brauer,
        DiagramFamily::AtMostPairs,
        DiagramFamily::EvenBlocks,
        DiagramFamily::CoarserThanId,
        DiagramFamily::All,
    ];
}

pub fn family_contains(f: DiagramFamily, p: &Partition) -> Result<bool> {
    let k = columns(p)?;
    let blocks = p.blocks();
    Ok(match f {
        DiagramFamily::Permutations => blocks
            .iter()
            .all(|b| b.len() == 2 && b[0] < k && b[1] >= k),
        DiagramFamily::Brauer => blocks.iter().all(|b| b.len() == 2),
        DiagramFamily::AtMostPairs => blocks.iter().all(|b| b.len() <= 2),
        DiagramFamily::EvenBlocks => blocks.iter().all(|b| b.len() % 2 == 0),
        DiagramFamily::CoarserThanId => (0..k).all(|i| p.same_block(i, i + k)),
        DiagramFamily::All => true,
    })
}

/// `Tr_N(p) = N^{nc(p ∨ id_k)}`; returns the exponent.
pub fn trace_exponent(p: &Partition) -> Result<usize> {
    let k = columns(p)?;
    Ok(nc_join(p, &identity(k)))
}

/// `Tr_N(p ᵗq) = N^{nc(p ∨ q)}`; returns the exponent.
pub fn pair_trace_exponent(p: &Partition, q: &Partition) -> Result<usize> {
    same_k(p, q)?;
    Ok(nc_join(p, q))
}

/// Coefficients of `p^c = Σ_{p ⊴ p'} μ_f(p, p') p'`, sorted by partition.
pub fn exclusive_coeffs(p: &Partition) -> Vec<(Partition, i64)> {
    let mut out: Vec<(Partition, i64)> = p
        .coarsenings()
        .into_iter()
        .map(|q| {
            let m = mu_refinement_int(p, &q);
            (q, m)
        })
        .collect();
    out.sort();
    out
}

/// The unique element of `Sp_{id_k}(p)` lying in the family, if any.
pub fn mb(p: &Partition, family: DiagramFamily) -> Result<Option<Partition>> {
    let k = columns(p)?;
    let splits = admissible_splits(&identity(k), p)?;
    let mut found = None;
    for q in splits {
        if family_contains(family, &q)? {
            if found.is_some() {
                return Err(Error::Invalid("admissible splits meet the family twice".into()));
            }
            found = Some(q);
        }
    }
    Ok(found)
}

/// Conjugate `σ ∘ p ∘ σ^{-1}`: the same relabelling applied to both rows.
pub fn conjugate(p: &Partition, sigma: &[usize]) -> Partition {
    let k = sigma.len();
    let perm: Vec<usize> = (0..2 * k)
        .map(|i| if i < k { sigma[i] } else { k + sigma[i - k] })
        .collect();
    p.permute(&perm)
}

/// Parse the text format, e.g. `1 1' | 2' | 2 3'`.
///
/// When `k` is `None` it is inferred from the largest label. `∅` or an empty
/// string denotes the partition of `P_0`.
pub fn parse_diagram(text: &str, k: Option<usize>) -> Result<Partition> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "∅" {
        return match k {
            None | Some(0) => Ok(Partition::empty()),
            Some(k) => Err(Error::KMismatch { left: 0, right: k }),
        };
    }
    let mut blocks: Vec<Vec<(usize, bool)>> = Vec::new();
    for raw in trimmed.split('|') {
        let mut block = Vec::new();
        for token in raw.split_whitespace() {
            let (digits, primed) = match token.strip_suffix('\'') {
                Some(d) => (d, true),
                None => (token, false),
            };
            let value: usize = digits
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("bad element {token:?}")))?;
            if value == 0 {
                return Err(Error::Parse("elements are numbered from 1".into()));
            }
            block.push((value, primed));
        }
        if block.is_empty() {
            return Err(Error::Parse("empty block".into()));
        }
        blocks.push(block);
    }
    let inferred = blocks.iter().flatten().map(|&(v, _)| v).max().unwrap_or(0);
    let k = match k {
        None => inferred,
        Some(k) if inferred > k => return Err(Error::KMismatch { left: inferred, right: k }),
        Some(k) => k,
    };
    let mut owner = vec![usize::MAX; 2 * k];
    for (b, block) in blocks.iter().enumerate() {
        for &(v, primed) in block {
            let idx = if primed { k + v - 1 } else { v - 1 };
            if owner[idx] != usize::MAX {
                return Err(Error::Parse(alloc::format!("element {} appears twice", element_name(idx, k))));
            }
            owner[idx] = b;
        }
    }
    if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::Parse(alloc::format!("element {} is missing", element_name(missing, k))));
    }
    Ok(Partition::from_labels(&owner))
}

fn element_name(index: usize, k: usize) -> String {
    if index < k {
        alloc::format!("{}", index + 1)
    } else {
        alloc::format!("{}'", index - k + 1)
    }
}

/// Text-format display of a diagram.
pub struct DiagramDisplay<'a>(pub &'a Partition);

impl fmt::Display for DiagramDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.0;
        if p.size() == 0 {
            return write!(f, "∅");
        }
        let k = p.size() / 2;
        for (b, block) in p.blocks().iter().enumerate() {
            if b > 0 {
                write!(f, " | ")?;
            }
            for (j, &e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", element_name(e, k))?;
            }
        }
        Ok(())
    }
}

/// Shorthand for `DiagramDisplay(p).to_string()`.
pub fn show(p: &Partition) -> String {
    alloc::format!("{}", DiagramDisplay(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Partition {
        parse_diagram(s, None).unwrap()
    }

    #[test]
    fn parse_and_show_round_trip() {
        let p = d("1 1' | 2' | 2 3' 5' | 3 4 4' | 5");
        assert_eq!(p.size(), 10);
        assert_eq!(p.nc(), 5);
        assert_eq!(show(&p), "1 1' | 2 3' 5' | 3 4 4' | 5 | 2'");
        assert_eq!(d(&show(&p)), p);
        assert_eq!(d("1 1'|2 2'"), identity(2));
        assert_eq!(show(&Partition::empty()), "∅");
        assert_eq!(d("∅"), Partition::empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_diagram("1 1' | 1 2'", None), Err(Error::Parse(_))));
        assert!(matches!(parse_diagram("1 1' | 2", None), Err(Error::Parse(_))));
        assert!(matches!(parse_diagram("1 x", None), Err(Error::Parse(_))));
        assert!(matches!(parse_diagram("1 1' | 2 2'", Some(1)), Err(Error::KMismatch { .. })));
        assert!(matches!(parse_diagram("1 1' ||2 2'", None), Err(Error::Parse(_))));
    }

    #[test]
    fn standard_elements() {
        assert_eq!(show(&identity(1)), "1 1'");
        assert_eq!(transposition(2, 1, 2).unwrap(), d("1 2' | 2 1'"));
        assert_eq!(contraction(2, 1, 2).unwrap(), d("1 2 | 1' 2'"));
        assert_eq!(long_cycle(3), d("1 2' | 2 3' | 3 1'"));
        assert!(transposition(2, 1, 3).is_err());
        assert_eq!(tau(1), transposition(2, 1, 2).unwrap());
    }

    #[test]
    fn compose_examples() {
        let w = contraction(2, 1, 2).unwrap();
        let r = compose(&w, &w).unwrap();
        assert_eq!(r, ComposeResult { product: w.clone(), loops: 1 });
        let s = transposition(2, 1, 2).unwrap();
        assert_eq!(compose(&s, &s).unwrap().product, identity(2));
        // 0_2 ∘ singletons: the bottom row of 0_2 survives as one block.
        let r = compose(&zero(2), &Partition::singletons(4)).unwrap();
        assert_eq!(r.product, d("1 | 2 | 1' 2'"));
        assert_eq!(r.loops, 0);
        assert!(compose(&identity(1), &identity(2)).is_err());
    }

    #[test]
    fn compose_matches_function_composition() {
        // σ = (1 2 3) after ρ = (1 2): i ↦ σ(ρ(i)).
        let sigma = long_cycle(3);
        let rho = transposition(3, 1, 2).unwrap();
        let prod = compose(&sigma, &rho).unwrap().product;
        assert_eq!(prod, permutation(&[2, 1, 0]).unwrap());
    }

    #[test]
    fn transpose_and_tensor() {
        let p = d("1 1' 3' | 2 3 | 2'");
        assert_eq!(transpose(&p).unwrap(), d("1' 1 3 | 2' 3' | 2"));
        assert_eq!(tensor(&identity(1), &identity(1)).unwrap(), identity(2));
        assert_eq!(tensor(&p, &Partition::empty()).unwrap(), p);
    }

    #[test]
    fn extraction() {
        assert_eq!(extract(&identity(3), &[1]).unwrap(), identity(1));
        let p = d("1 2' | 2 1' | 3 | 3'");
        assert_eq!(extract(&p, &[2]).unwrap(), d("1 | 1'"));
        assert_eq!(extract(&p, &[0, 4]).unwrap(), transposition(2, 1, 2).unwrap());
    }

    #[test]
    fn structure_examples() {
        let s = structure(&identity(3)).unwrap();
        assert!(s.is_weakly_irreducible && s.support.is_empty());
        assert_eq!(s.cycles.len(), 3);
        let e = structure(&Partition::empty()).unwrap();
        assert!(!e.is_irreducible);
        let zz = tensor(&zero(1), &zero(1)).unwrap();
        let s = structure(&zz).unwrap();
        assert!(s.is_exclusive_irreducible);
        assert_eq!(s.exclusive_support, None);
        let s = structure(&d("1 2' | 2 1' | 3 3'")).unwrap();
        assert_eq!(s.support, vec![0, 1]);
        assert!(s.is_weakly_irreducible && !s.is_irreducible);
    }

    #[test]
    fn families_in_p2() {
        let parts: Vec<Partition> = crate::partition::rgs_iter(4).collect();
        let count = |f| parts.iter().filter(|p| family_contains(f, p).unwrap()).count();
        assert_eq!(count(DiagramFamily::Brauer), 3);
        assert_eq!(count(DiagramFamily::Permutations), 2);
        assert!(family_contains(DiagramFamily::CoarserThanId, &zero(3)).unwrap());
    }

    #[test]
    fn exclusive_coefficients() {
        assert_eq!(exclusive_coeffs(&zero(2)), vec![(zero(2), 1)]);
        let s = Partition::singletons(2);
        assert_eq!(exclusive_coeffs(&s), vec![(zero(1), -1), (s.clone(), 1)]);
    }

    #[test]
    fn mb_examples() {
        let b = contraction(2, 1, 2).unwrap();
        assert_eq!(mb(&b, DiagramFamily::Brauer).unwrap(), Some(b));
        assert_eq!(mb(&Partition::singletons(2), DiagramFamily::Permutations).unwrap(), None);
        assert!(mb(&zero(2), DiagramFamily::Brauer).unwrap().is_some());
    }

    #[test]
    fn traces() {
        assert_eq!(trace_exponent(&identity(3)).unwrap(), 3);
        assert_eq!(trace_exponent(&transposition(2, 1, 2).unwrap()).unwrap(), 1);
    }
}
