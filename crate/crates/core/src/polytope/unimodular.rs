//! Exhaustive total-unimodularity test.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest square minor the exhaustive check will look at.
pub const MAX_MINOR: usize = 12;

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn determinant(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Ok(0);
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])
                    .zip(m[i][k].checked_mul(m[k][j]))
                    .and_then(|(a, b)| a.checked_sub(b))
                    .ok_or(Error::Overflow)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(if n == 0 { 1 } else { sign * m[n - 1][n - 1] })
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it returns `false`.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return true;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// True iff every square submatrix has determinant `0`, `1` or `-1`.
///
/// Matrices with an entry outside `{-1, 0, 1}` fail immediately. Otherwise all
/// minors are checked, which is exponential; square minors larger than
/// [`MAX_MINOR`] are refused with [`Error::CapExceeded`].
pub fn is_totally_unimodular(a: &[Vec<i64>]) -> Result<bool> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("ragged matrix".into()));
    }
    if a.iter().flatten().any(|&x| !(-1..=1).contains(&x)) {
        return Ok(false);
    }
    let largest = m.min(n);
    if largest > MAX_MINOR {
        return Err(Error::CapExceeded {
            what: "square minor size",
            count: largest as u128,
            cap: MAX_MINOR as u128,
        });
    }
    let mut failure = None;
    for size in 2..=largest {
        let ok = for_each_subset(m, size, |rows| {
            for_each_subset(n, size, |cols| {
                let sub = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect())
                    .collect();
                match determinant(sub) {
                    Ok(d) if d.abs() <= 1 => true,
                    Ok(_) => false,
                    Err(e) => {
                        failure = Some(e);
                        false
                    }
                }
            })
        });
        if let Some(e) = failure {
            return Err(e);
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
