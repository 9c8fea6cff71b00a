//! Closed-form size bounds, evaluated exactly in `u128`.

use serde::Serialize;

use super::ObstructionError;

/// A bound value; `swapped` records that `(k, ell)` were exchanged before
/// evaluation because the formula needs `k >= ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: u128,
    pub swapped: bool,
}

fn overflow(what: &str) -> ObstructionError {
    ObstructionError::BadParameters(format!("{what} overflows 128 bits"))
}

fn pow2(e: usize) -> Option<u128> {
    1u128.checked_shl(u32::try_from(e).ok()?)
}

/// `2^(k-1) (k+ell) (2k+3) + 1`, the largest possible order of a split minimal
/// obstruction. Requires `k >= ell`; otherwise evaluated at `(ell, k)`, which
/// bounds the complementary problem, and flagged.
pub fn split_bound(k: usize, ell: usize) -> Result<Bound, ObstructionError> {
    if k + ell == 0 {
        return Err(ObstructionError::BadParameters(
            "k + ell must be positive".into(),
        ));
    }
    let swapped = k < ell;
    let (k, ell) = if swapped { (ell, k) } else { (k, ell) };
    let value = pow2(k - 1)
        .and_then(|p| p.checked_mul((k + ell) as u128))
        .and_then(|p| p.checked_mul(2 * k as u128 + 3))
        .and_then(|p| p.checked_add(1))
        .ok_or_else(|| overflow("split_bound"))?;
    Ok(Bound { value, swapped })
}

/// `2^(2 ell) (k+ell) (2 ell+3)`, bounding bipartite minimal obstructions.
pub fn bipartite_bound(k: usize, ell: usize) -> Result<u128, ObstructionError> {
    if k + ell == 0 {
        return Err(ObstructionError::BadParameters(
            "k + ell must be positive".into(),
        ));
    }
    pow2(2 * ell)
        .and_then(|p| p.checked_mul((k + ell) as u128))
        .and_then(|p| p.checked_mul(2 * ell as u128 + 3))
        .ok_or_else(|| overflow("bipartite_bound"))
}

/// Order of the graph built by [`super::construct_large_split`]: `4n + 1 + C(2n, n)`.
pub fn large_split_size(n: usize) -> Result<u128, ObstructionError> {
    if n == 0 {
        return Err(ObstructionError::BadParameters(
            "n must be at least 1".into(),
        ));
    }
    binomial(2 * n, n)
        .and_then(|b| b.checked_add(4 * n as u128 + 1))
        .ok_or_else(|| overflow("large_split_size"))
}

/// `(k+1)(ell+1)`, the obstruction size bound for `*`-free matrices.
pub fn star_free_bound(k: usize, ell: usize) -> Result<u128, ObstructionError> {
    (k as u128 + 1)
        .checked_mul(ell as u128 + 1)
        .ok_or_else(|| overflow("star_free_bound"))
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: usize, r: usize) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc = 1u128;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) since acc = C(n, i)
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}
