//! Partitions and the β-set calculus.
//!
//! A partition `(a_1, …, a_ℓ)` is encoded by its β-set
//! `{a_1 + (ℓ-1), a_2 + (ℓ-2), …, a_ℓ}`, the first-column hook lengths of its
//! Young diagram. Removing a `t`-hook replaces some `x ≥ t` by `x - t`, so the
//! `t`-core only depends on the residues of the β-set modulo `t`: sliding all
//! beads on a `t`-runner abacus to the top gives the core.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::multiset::compositions;
use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty partition is allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A weakly decreasing sequence of whole numbers; trailing zeros are significant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pseudopartition {
    parts: Vec<usize>,
}

/// A finite set of whole numbers, stored in strictly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BetaSet {
    elements: Vec<usize>,
}

/// A multiset on `Z/tZ`, stored as the dense vector of multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueMultiset {
    counts: Vec<usize>,
}

fn is_weakly_decreasing(parts: &[usize]) -> bool {
    parts.windows(2).all(|w| w[0] >= w[1])
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if !is_weakly_decreasing(&parts) {
            return Err(Error::InvalidPartition(alloc::format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.last() == Some(&0) {
            return Err(Error::InvalidPartition(alloc::format!(
                "{parts:?} has a zero part"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The number of parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The set of first-column hook lengths.
    pub fn beta(&self) -> BetaSet {
        Pseudopartition::from(self.clone()).beta()
    }

    /// True iff the Young diagram contains a hook of length `t`.
    ///
    /// # Panics
    ///
    /// Panics if `t == 0`.
    pub fn has_hook(&self, t: usize) -> bool {
        self.beta().has_hook(t)
    }

    /// The `t`-core: what remains after removing `t`-hooks until none are left.
    ///
    /// # Panics
    ///
    /// Panics if `t == 0`.
    pub fn core(&self, t: usize) -> Partition {
        self.beta().core_set(t).to_pseudopartition().trim()
    }

    pub fn is_core(&self, t: usize) -> bool {
        !self.has_hook(t)
    }

    /// The residues mod `t` of the β-set of cardinality `k`, `H^k_{λ,t}`.
    ///
    /// Two partitions of length at most `k` have the same `t`-core iff these
    /// multisets coincide.
    pub fn core_multiset(&self, t: usize, k: usize) -> Result<ResidueMultiset> {
        if t == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(self.beta().pad_to(k)?.residues(t))
    }
}

impl Pseudopartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if !is_weakly_decreasing(&parts) {
            return Err(Error::InvalidPartition(alloc::format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Pseudopartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `β(a_1, …, a_ℓ) = {a_i + (ℓ - i)}`.
    pub fn beta(&self) -> BetaSet {
        let len = self.parts.len();
        BetaSet {
            elements: self
                .parts
                .iter()
                .enumerate()
                .map(|(i, &a)| a + (len - 1 - i))
                .collect(),
        }
    }

    /// Appends a trailing zero (the map `z`).
    pub fn push_zero(&self) -> Pseudopartition {
        let mut parts = self.parts.clone();
        parts.push(0);
        Pseudopartition { parts }
    }

    /// Pads with trailing zeros to length `k` (the map `u^k`).
    pub fn pad_to(&self, k: usize) -> Result<Pseudopartition> {
        if k < self.len() {
            return Err(Error::PadTooShort { len: self.len(), k });
        }
        let mut parts = self.parts.clone();
        parts.resize(k, 0);
        Ok(Pseudopartition { parts })
    }

    /// Strips all trailing zeros (the retraction `r`).
    pub fn trim(&self) -> Partition {
        let end = self.parts.iter().rposition(|&a| a > 0).map_or(0, |i| i + 1);
        Partition {
            parts: self.parts[..end].to_vec(),
        }
    }
}

impl From<Partition> for Pseudopartition {
    fn from(p: Partition) -> Self {
        Pseudopartition { parts: p.parts }
    }
}

impl BetaSet {
    pub fn empty() -> Self {
        BetaSet::default()
    }

    /// Elements in strictly decreasing order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search_by(|e| x.cmp(e)).is_ok()
    }

    /// `β⁻¹{h_1 > … > h_ℓ} = (h_1 - (ℓ-1), …, h_ℓ)`.
    pub fn to_pseudopartition(&self) -> Pseudopartition {
        let len = self.elements.len();
        Pseudopartition {
            parts: self
                .elements
                .iter()
                .enumerate()
                .map(|(i, &h)| h - (len - 1 - i))
                .collect(),
        }
    }

    /// `{x_1, …, x_ℓ} ↦ {x_1 + 1, …, x_ℓ + 1, 0}`, the image of `z` under `β`.
    pub fn add_trailing_zero(&self) -> BetaSet {
        let mut elements: Vec<usize> = self.elements.iter().map(|x| x + 1).collect();
        elements.push(0);
        BetaSet { elements }
    }

    /// The β-set of the same partition with cardinality `k`.
    pub fn pad_to(&self, k: usize) -> Result<BetaSet> {
        let len = self.len();
        if k < len {
            return Err(Error::PadTooShort { len, k });
        }
        let shift = k - len;
        let mut elements: Vec<usize> = self.elements.iter().map(|x| x + shift).collect();
        elements.extend((0..shift).rev());
        Ok(BetaSet { elements })
    }

    /// Removes `{0, …, m-1}` and subtracts `m`, where `m` is the least whole
    /// number missing from the set (the image of `r` under `β`).
    pub fn reduce(&self) -> BetaSet {
        // Elements are decreasing, so {0,…,m-1} is a suffix.
        let len = self.elements.len();
        let m = self
            .elements
            .iter()
            .rev()
            .enumerate()
            .take_while(|&(i, &x)| i == x)
            .count();
        BetaSet {
            elements: self.elements[..len - m].iter().map(|x| x - m).collect(),
        }
    }

    /// The pushforward along `x ↦ x mod t`.
    ///
    /// # Panics
    ///
    /// Panics if `t == 0`.
    pub fn residues(&self, t: usize) -> ResidueMultiset {
        assert!(t > 0, "modulus must be positive");
        let mut counts = alloc::vec![0; t];
        for &x in &self.elements {
            counts[x % t] += 1;
        }
        ResidueMultiset { counts }
    }

    /// True iff some `x ≥ t` has `x - t` missing, i.e. a `t`-hook can be removed.
    pub fn has_hook(&self, t: usize) -> bool {
        assert!(t > 0, "modulus must be positive");
        self.elements
            .iter()
            .any(|&x| x >= t && !self.contains(x - t))
    }

    /// `R(c_t(ρ_t(X)))`: slide the beads up and strip trailing zeros.
    pub fn core_set(&self, t: usize) -> BetaSet {
        self.residues(t).abacus_normal_form().reduce()
    }
}

impl FromIterator<usize> for BetaSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut elements: Vec<usize> = iter.into_iter().collect();
        elements.sort_unstable_by(|a, b| b.cmp(a));
        elements.dedup();
        BetaSet { elements }
    }
}

impl ResidueMultiset {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::ZeroModulus);
        }
        Ok(ResidueMultiset { counts })
    }

    pub fn zero(t: usize) -> Result<Self> {
        ResidueMultiset::new(alloc::vec![0; t])
    }

    pub fn modulus(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn get(&self, j: usize) -> usize {
        self.counts[j]
    }

    pub fn cardinality(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn into_counts(self) -> Vec<usize> {
        self.counts
    }

    /// The minimal section `c_t`: residue `i` with multiplicity `n`
    /// contributes `{i, t + i, …, (n-1)t + i}`.
    pub fn abacus_normal_form(&self) -> BetaSet {
        let t = self.modulus();
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| (0..n).map(move |a| a * t + i))
            .collect()
    }

    /// The unique `t`-core whose padded β-set has these residues.
    pub fn to_core(&self) -> Partition {
        self.abacus_normal_form().to_pseudopartition().trim()
    }
}

/// All `t`-cores of length at most `k`, one per multiset of cardinality `k` on `Z/tZ`.
///
/// The output follows the lexicographic order of the multiplicity vectors.
pub fn enumerate_cores(t: usize, k: usize) -> Result<Vec<Partition>> {
    if t == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok(compositions(k, t)
        .map(|counts| ResidueMultiset { counts }.to_core())
        .collect())
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        for (i, a) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"5,4,3,1"`; the empty partition is spelled `"-"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}
