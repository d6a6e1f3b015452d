//! The matrices `ρ_N(p)` acting on `(ℂ^N)^{⊗k}`, used as an independent check.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::columns;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::partition::Partition;

/// Largest `N^k` accepted by default.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Integer matrix indexed by `k`-tuples over `{1..N}` in lexicographic order.
pub type DenseMatrix = Matrix<i64>;

fn dimension(k: usize, n: usize, limit: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..k {
        dim = dim.saturating_mul(n);
    }
    if dim > limit {
        return Err(Error::SizeLimit { size: dim, limit });
    }
    Ok(dim)
}

fn digits(mut x: usize, k: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = x % n;
        x /= n;
    }
    out
}

/// Entry `(out, in)` is 1 when the values on the top row (`in`) and bottom row
/// (`out`) are constant on blocks; with `exclusive`, distinct blocks must also
/// carry distinct values.
fn build(p: &Partition, n: usize, exclusive: bool, limit: usize) -> Result<DenseMatrix> {
    let k = columns(p)?;
    let dim = dimension(k, n, limit)?;
    let tuples: Vec<Vec<usize>> = (0..dim).map(|x| digits(x, k, n)).collect();
    let nc = p.nc();
    let mut block_value = vec![usize::MAX; nc];
    Ok(Matrix::from_fn(dim, dim, |row, col| {
        block_value.iter_mut().for_each(|v| *v = usize::MAX);
        let values = tuples[col].iter().chain(tuples[row].iter());
        for (e, &v) in values.enumerate() {
            let slot = &mut block_value[p.label(e)];
            if *slot == usize::MAX {
                *slot = v;
            } else if *slot != v {
                return 0;
            }
        }
        if exclusive {
            for a in 0..nc {
                for b in a + 1..nc {
                    if block_value[a] == block_value[b] {
                        return 0;
                    }
                }
            }
        }
        1
    }))
}

/// `ρ_N(p)`.
pub fn rho(p: &Partition, n: usize) -> Result<DenseMatrix> {
    build(p, n, false, DEFAULT_MAX_DIM)
}

/// `ρ̃_N(p)`, built from the exclusive delta function.
pub fn rho_exclusive(p: &Partition, n: usize) -> Result<DenseMatrix> {
    build(p, n, true, DEFAULT_MAX_DIM)
}

pub fn rho_bounded(p: &Partition, n: usize, exclusive: bool, limit: usize) -> Result<DenseMatrix> {
    build(p, n, exclusive, limit)
}
