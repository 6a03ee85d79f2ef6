//! Finite multisets on `{0, …, n-1}`, pushforwards and contingency tables.
//!
//! A matching between multisets `F` on `S` and `G` on `T` of the same
//! cardinality is a multiset on `S × T` projecting to `F` and `G`; as a matrix
//! it is a nonnegative integer table with row margins `F` and column margins `G`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// A multiset on `{0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteMultiset {
    counts: Vec<usize>,
}

impl FiniteMultiset {
    pub fn new(counts: Vec<usize>) -> Self {
        FiniteMultiset { counts }
    }

    pub fn zero(n: usize) -> Self {
        FiniteMultiset { counts: vec![0; n] }
    }

    pub fn index_size(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn get(&self, i: usize) -> usize {
        self.counts[i]
    }

    pub fn cardinality(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
    }

    /// `f_*(F)(j) = Σ_{f(i) = j} F(i)` for a map `f` into `{0, …, target_size-1}`.
    pub fn pushforward(&self, target_size: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        let mut counts = vec![0; target_size];
        for (i, &c) in self.counts.iter().enumerate() {
            let j = f(i);
            if j >= target_size {
                return Err(Error::Dimension(alloc::format!(
                    "map sends {i} to {j}, outside a target of size {target_size}"
                )));
            }
            counts[j] += c;
        }
        Ok(FiniteMultiset { counts })
    }

    /// Splits a multiset on `Z/sZ` into its restrictions to the classes
    /// `{x ≡ j mod d}`, each reindexed by `j + d·u ↦ u`.
    pub fn restrict_to_classes(&self, d: usize) -> Result<Vec<FiniteMultiset>> {
        let s = self.index_size();
        if d == 0 || !s.is_multiple_of(d) {
            return Err(Error::NotADivisor(d, s));
        }
        Ok((0..d)
            .map(|j| FiniteMultiset {
                counts: self.counts.iter().skip(j).step_by(d).copied().collect(),
            })
            .collect())
    }

    pub fn into_counts(self) -> Vec<usize> {
        self.counts
    }
}

impl From<crate::ResidueMultiset> for FiniteMultiset {
    fn from(r: crate::ResidueMultiset) -> Self {
        FiniteMultiset::new(r.into_counts())
    }
}

/// `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The number of multisets of cardinality `k` on an `n`-element set, `C(k + n - 1, k)`.
pub fn multichoose(n: u64, k: u64) -> BigUint {
    if n == 0 {
        return if k == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(k + n - 1, k)
}

/// The number of multisets whose pushforward is `g`, given the fibre sizes `#f⁻¹(j)`.
pub fn fibre_cardinality(g: &FiniteMultiset, fibre_sizes: &[usize]) -> Result<BigUint> {
    if g.index_size() != fibre_sizes.len() {
        return Err(Error::Dimension(alloc::format!(
            "{} fibre sizes for a multiset on {} points",
            fibre_sizes.len(),
            g.index_size()
        )));
    }
    Ok(g.counts
        .iter()
        .zip(fibre_sizes)
        .map(|(&c, &n)| multichoose(n as u64, c as u64))
        .product())
}

/// Iterator over all vectors of `parts` whole numbers summing to `total`,
/// in increasing lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Compositions {
    let next = match parts {
        0 if total == 0 => Some(Vec::new()),
        0 => None,
        _ => {
            let mut v = vec![0; parts];
            v[parts - 1] = total;
            Some(v)
        }
    };
    Compositions { next }
}

#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let n = current.len();
        // Move one unit from the last nonzero slot to the slot before it,
        // and sweep the rest of that slot to the end.
        if let Some(j) = current.iter().rposition(|&c| c > 0).filter(|&j| j > 0) {
            let mut v = current.clone();
            let tail = v[j];
            v[j] = 0;
            v[j - 1] += 1;
            v[n - 1] = tail - 1;
            self.next = Some(v);
        }
        Some(current)
    }
}

/// Row margins `r` and column margins `c` of a contingency-table problem.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarginPair {
    pub rows: Vec<u64>,
    pub cols: Vec<u64>,
}

impl MarginPair {
    pub fn new(rows: Vec<u64>, cols: Vec<u64>) -> Self {
        MarginPair { rows, cols }
    }

    pub fn total(&self) -> u64 {
        self.rows.iter().sum()
    }

    pub fn check_balanced(&self) -> Result<()> {
        let rows: u64 = self.rows.iter().sum();
        let cols: u64 = self.cols.iter().sum();
        if rows != cols {
            return Err(Error::UnbalancedMargins { rows, cols });
        }
        Ok(())
    }

    pub fn transpose(&self) -> MarginPair {
        MarginPair {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }
}

/// A nonnegative integer matrix, viewed as a matching between its margins.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    pub entries: Vec<Vec<u64>>,
}

impl Matching {
    pub fn margins(&self) -> MarginPair {
        let rows = self.entries.iter().map(|r| r.iter().sum()).collect();
        let ncols = self.entries.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| self.entries.iter().map(|r| r[j]).sum())
            .collect();
        MarginPair { rows, cols }
    }
}

/// The number of nonnegative integer matrices with the given margins, `M_{F,G}`.
///
/// Rows are filled one at a time; the count of ways to fill the remaining rows
/// depends only on the multiset of remaining column capacities, which keys the memo.
pub fn count_matchings(m: &MarginPair) -> Result<BigUint> {
    m.check_balanced()?;
    if m.rows.is_empty() {
        return Ok(BigUint::one());
    }
    let mut capacities = m.cols.clone();
    capacities.sort_unstable();
    let mut memo = BTreeMap::new();
    Ok(count_rows(&m.rows, capacities, &mut memo))
}

fn count_rows(
    rows: &[u64],
    capacities: Vec<u64>,
    memo: &mut BTreeMap<(usize, Vec<u64>), BigUint>,
) -> BigUint {
    // The margins balance, so the last row is forced.
    if rows.len() <= 1 {
        return BigUint::one();
    }
    let key = (rows.len(), capacities);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let capacities = key.1.clone();
    let mut total = BigUint::zero();
    let mut remaining = capacities.clone();
    let suffix = suffix_sums(&capacities);
    fill_row(rows[0], 0, &capacities, &suffix, &mut remaining, &mut |rest| {
        let mut next = rest.to_vec();
        next.sort_unstable();
        total += count_rows(&rows[1..], next, memo);
    });
    memo.insert(key, total.clone());
    total
}

fn suffix_sums(v: &[u64]) -> Vec<u64> {
    let mut out = vec![0; v.len() + 1];
    for j in (0..v.len()).rev() {
        out[j] = out[j + 1] + v[j];
    }
    out
}

/// Visits every way of writing `amount` as `x_j + … + x_{t-1}` with `x_i ≤ capacities[i]`,
/// passing the leftover capacities to `visit`. Entries are tried in increasing order.
fn fill_row(
    amount: u64,
    j: usize,
    capacities: &[u64],
    suffix: &[u64],
    remaining: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]),
) {
    if j == capacities.len() {
        if amount == 0 {
            visit(remaining);
        }
        return;
    }
    let hi = amount.min(capacities[j]);
    let lo = amount.saturating_sub(suffix[j + 1]);
    for x in lo..=hi {
        remaining[j] = capacities[j] - x;
        fill_row(amount - x, j + 1, capacities, suffix, remaining, visit);
    }
    remaining[j] = capacities[j];
}

/// Lists every matrix with the given margins in lexicographic row-major order.
///
/// Fails with [`Error::CapExceeded`] when there are more than `cap` of them.
pub fn enumerate_matchings(m: &MarginPair, cap: u64) -> Result<Vec<Matching>> {
    let count = count_matchings(m)?;
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "matchings",
            count: u128::try_from(&count).unwrap_or(u128::MAX),
            cap: cap.into(),
        });
    }
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(m.rows.len());
    enumerate_rows(&m.rows, &m.cols, &mut rows, &mut out);
    Ok(out)
}

fn enumerate_rows(
    margins: &[u64],
    capacities: &[u64],
    prefix: &mut Vec<Vec<u64>>,
    out: &mut Vec<Matching>,
) {
    let Some((&amount, rest)) = margins.split_first() else {
        out.push(Matching {
            entries: prefix.clone(),
        });
        return;
    };
    let suffix = suffix_sums(capacities);
    let mut remaining = capacities.to_vec();
    let mut fills = Vec::new();
    fill_row(amount, 0, capacities, &suffix, &mut remaining, &mut |left| {
        fills.push(left.to_vec());
    });
    for left in fills {
        let row = capacities.iter().zip(&left).map(|(c, l)| c - l).collect();
        prefix.push(row);
        enumerate_rows(rest, &left, prefix, out);
        prefix.pop();
    }
}
