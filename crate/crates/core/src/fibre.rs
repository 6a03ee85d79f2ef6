//! Fibre counts `N_{σ,τ}(k)`: `m`-cores of length at most `k` with `s`-core `σ`
//! and `t`-core `τ`.
//!
//! An `m`-core of length at most `k` is the same thing as a multiset of
//! cardinality `k` on `Z/m`. Its `s`- and `t`-cores are read off from the
//! pushforwards to `Z/s` and `Z/t`, so counting a fibre is counting
//! contingency tables once `s` and `t` are coprime, and a product of coprime
//! counts otherwise.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::multiset::{binomial, compositions, count_matchings, multichoose, FiniteMultiset, MarginPair};
use crate::partition::{Partition, ResidueMultiset};
use crate::polynomial::{ExactPolynomial, Quasipolynomial};
use crate::{Error, Result};

/// Default limit on the number of multisets a brute-force count may visit.
pub const DEFAULT_CAP: u128 = 5_000_000;

/// The data `(s, t, σ, τ)` of a fibre of `core_s × core_t` on `m`-cores.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FibreProblem {
    s: usize,
    t: usize,
    sigma: Partition,
    tau: Partition,
}

impl FibreProblem {
    pub fn new(s: usize, t: usize, sigma: Partition, tau: Partition) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::ZeroModulus);
        }
        if !sigma.is_core(s) {
            return Err(Error::NotACore(format!("{sigma} is not a {s}-core")));
        }
        if !tau.is_core(t) {
            return Err(Error::NotACore(format!("{tau} is not a {t}-core")));
        }
        Ok(FibreProblem { s, t, sigma, tau })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn sigma(&self) -> &Partition {
        &self.sigma
    }

    pub fn tau(&self) -> &Partition {
        &self.tau
    }

    pub fn d(&self) -> usize {
        self.s.gcd(&self.t)
    }

    pub fn m(&self) -> usize {
        self.s.lcm(&self.t)
    }

    /// `max(ℓ(σ), ℓ(τ))`, the first length at which the fibre can be nonempty.
    pub fn ell0(&self) -> usize {
        self.sigma.len().max(self.tau.len())
    }

    pub fn is_coprime(&self) -> bool {
        self.d() == 1
    }

    /// `core_d σ = core_d τ`; otherwise every fibre count vanishes.
    pub fn is_compatible(&self) -> bool {
        let d = self.d();
        self.sigma.core(d) == self.tau.core(d)
    }

    /// The index `i ∈ [ℓ₀, ℓ₀ + period)` with `i ≡ k`, and the quotient `(k - i) / period`.
    fn anchored(&self, k: usize, period: usize) -> Result<(usize, usize)> {
        let anchor = self.ell0();
        if k < anchor {
            return Err(Error::BelowAnchor { k, anchor });
        }
        let i = anchor + (k - anchor) % period;
        Ok((i, (k - i) / period))
    }
}

/// The pieces of a non-coprime fibre at anchored index `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredProblem {
    pub anchor: usize,
    /// `(σ_j, τ_j, ℓ_j)`: an `s/d`-core, a `t/d`-core and their common length index.
    pub pieces: Vec<(Partition, Partition, usize)>,
}

fn check_cap(what: &'static str, count: &BigUint, cap: u128) -> Result<()> {
    if *count > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what,
            count: u128::try_from(count).unwrap_or(u128::MAX),
            cap,
        });
    }
    Ok(())
}

/// `N_{σ,τ}(k)` by listing every `m`-core of length at most `k` and computing
/// its `s`- and `t`-cores directly.
pub fn count_brute(p: &FibreProblem, k: usize, cap: u128) -> Result<BigUint> {
    let m = p.m();
    check_cap("multisets", &multichoose(m as u64, k as u64), cap)?;
    let mut n = 0u64;
    for counts in compositions(k, m) {
        let lambda = ResidueMultiset::new(counts)?.to_core();
        if lambda.core(p.s) == p.sigma && lambda.core(p.t) == p.tau {
            n += 1;
        }
    }
    Ok(BigUint::from(n))
}

/// The same count as [`count_brute`], visiting only the multisets whose
/// residues mod `s` and mod `t` match those of `σ` and `τ`. Every multiset
/// visited is still checked by computing its cores directly.
///
/// `cap` bounds the number of multisets checked.
pub fn count_brute_pruned(p: &FibreProblem, k: usize, cap: u128) -> Result<BigUint> {
    if k < p.ell0() {
        // The length of a core never exceeds the length of the partition.
        return Ok(BigUint::zero());
    }
    let f = p.sigma.core_multiset(p.s, k)?.into_counts();
    let g = p.tau.core_multiset(p.t, k)?.into_counts();
    let mut search = Pruned {
        p,
        m: p.m(),
        rem_s: f,
        rem_t: g,
        counts: vec![0; p.m()],
        visited: 0,
        matches: 0,
        cap,
    };
    search.descend(0)?;
    Ok(BigUint::from(search.matches))
}

struct Pruned<'a> {
    p: &'a FibreProblem,
    m: usize,
    rem_s: Vec<usize>,
    rem_t: Vec<usize>,
    counts: Vec<usize>,
    visited: u128,
    matches: u64,
    cap: u128,
}

impl Pruned<'_> {
    fn descend(&mut self, r: usize) -> Result<()> {
        let (s, t) = (self.p.s, self.p.t);
        if r == self.m {
            self.visited += 1;
            if self.visited > self.cap {
                return Err(Error::CapExceeded {
                    what: "multisets",
                    count: self.visited,
                    cap: self.cap,
                });
            }
            let lambda = ResidueMultiset::new(self.counts.clone())?.to_core();
            if lambda.core(s) == self.p.sigma && lambda.core(t) == self.p.tau {
                self.matches += 1;
            }
            return Ok(());
        }
        let (a, b) = (r % s, r % t);
        let hi = self.rem_s[a].min(self.rem_t[b]);
        // The last residue of a class must use up what is left of it.
        let forced_s = (r + s >= self.m).then_some(self.rem_s[a]);
        let forced_t = (r + t >= self.m).then_some(self.rem_t[b]);
        let (lo, hi) = match (forced_s, forced_t) {
            (Some(x), Some(y)) if x != y => return Ok(()),
            (Some(x), _) | (_, Some(x)) if x > hi => return Ok(()),
            (Some(x), _) | (_, Some(x)) => (x, x),
            (None, None) => (0, hi),
        };
        for c in lo..=hi {
            self.counts[r] = c;
            self.rem_s[a] -= c;
            self.rem_t[b] -= c;
            let step = self.descend(r + 1);
            self.rem_s[a] += c;
            self.rem_t[b] += c;
            step?;
        }
        self.counts[r] = 0;
        Ok(())
    }
}

/// Every `m`-core of length at most `max_len`, bucketed by `(s-core, t-core)`
/// and by exact length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreCensus {
    pub s: usize,
    pub t: usize,
    pub max_len: usize,
    /// `buckets[(σ, τ)][ℓ]` counts the cores of length exactly `ℓ`.
    pub buckets: BTreeMap<(Partition, Partition), Vec<u64>>,
}

impl FibreCensus {
    /// One pass over the `C(max_len + m - 1, max_len)` cores.
    pub fn new(s: usize, t: usize, max_len: usize, cap: u128) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::ZeroModulus);
        }
        let m = s.lcm(&t);
        check_cap("multisets", &multichoose(m as u64, max_len as u64), cap)?;
        let mut buckets: BTreeMap<(Partition, Partition), Vec<u64>> = BTreeMap::new();
        for counts in compositions(max_len, m) {
            let lambda = ResidueMultiset::new(counts)?.to_core();
            let key = (lambda.core(s), lambda.core(t));
            buckets.entry(key).or_insert_with(|| vec![0; max_len + 1])[lambda.len()] += 1;
        }
        Ok(FibreCensus {
            s,
            t,
            max_len,
            buckets,
        })
    }

    /// `N_{σ,τ}(k)` for `k ≤ max_len`.
    pub fn count(&self, sigma: &Partition, tau: &Partition, k: usize) -> u64 {
        assert!(k <= self.max_len, "census only reaches length {}", self.max_len);
        self.buckets
            .get(&(sigma.clone(), tau.clone()))
            .map_or(0, |v| v[..=k].iter().sum())
    }

    /// Number of cores of length exactly `k` in the fibre.
    pub fn exact(&self, sigma: &Partition, tau: &Partition, k: usize) -> u64 {
        self.buckets
            .get(&(sigma.clone(), tau.clone()))
            .map_or(0, |v| v[k])
    }

    /// The pairs `(σ, τ)` that occur.
    pub fn pairs(&self) -> impl Iterator<Item = &(Partition, Partition)> {
        self.buckets.keys()
    }
}

/// Margins `H^i_{σ,s} + kt` and `H^i_{τ,t} + ks` whose matchings count
/// `N_{σ,τ}(i + stk)`.
pub fn margins_coprime(p: &FibreProblem, i: usize, k: usize) -> Result<MarginPair> {
    if !p.is_coprime() {
        return Err(Error::NotCoprime { s: p.s, t: p.t });
    }
    if i < p.ell0() {
        return Err(Error::BelowAnchor {
            k: i,
            anchor: p.ell0(),
        });
    }
    let shift = |h: ResidueMultiset, by: usize| -> Vec<u64> {
        h.counts().iter().map(|&x| (x + by * k) as u64).collect()
    };
    Ok(MarginPair::new(
        shift(p.sigma.core_multiset(p.s, i)?, p.t),
        shift(p.tau.core_multiset(p.t, i)?, p.s),
    ))
}

/// `N_{σ,τ}(k)` for coprime `s, t` as a count of contingency tables.
pub fn count_coprime(p: &FibreProblem, k: usize) -> Result<BigUint> {
    if !p.is_coprime() {
        return Err(Error::NotCoprime { s: p.s, t: p.t });
    }
    let (i, q) = p.anchored(k, p.s * p.t)?;
    count_matchings(&margins_coprime(p, i, q)?)
}

/// Splits the fibre at anchored index `i` into `d` coprime fibres of `s/d`- and `t/d`-cores.
pub fn factor_noncoprime(p: &FibreProblem, i: usize) -> Result<FactoredProblem> {
    if i < p.ell0() {
        return Err(Error::BelowAnchor {
            k: i,
            anchor: p.ell0(),
        });
    }
    if !p.is_compatible() {
        return Err(Error::CoreMismatch);
    }
    let d = p.d();
    let f = FiniteMultiset::from(p.sigma.core_multiset(p.s, i)?).restrict_to_classes(d)?;
    let g = FiniteMultiset::from(p.tau.core_multiset(p.t, i)?).restrict_to_classes(d)?;
    let pieces = f
        .into_iter()
        .zip(g)
        .map(|(fj, gj)| {
            let ell = fj.cardinality();
            debug_assert_eq!(ell, gj.cardinality());
            let sigma = ResidueMultiset::new(fj.into_counts())?.to_core();
            let tau = ResidueMultiset::new(gj.into_counts())?.to_core();
            Ok((sigma, tau, ell))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FactoredProblem { anchor: i, pieces })
}

impl FactoredProblem {
    /// The coprime problems `(s/d, t/d, σ_j, τ_j)`.
    pub fn problems(&self, s: usize, t: usize) -> Result<Vec<(FibreProblem, usize)>> {
        let d = s.gcd(&t);
        self.pieces
            .iter()
            .map(|(sigma, tau, ell)| {
                Ok((
                    FibreProblem::new(s / d, t / d, sigma.clone(), tau.clone())?,
                    *ell,
                ))
            })
            .collect()
    }
}

/// `N_{σ,τ}(k)` for any `s, t`, as a product of coprime counts.
pub fn count_general(p: &FibreProblem, k: usize) -> Result<BigUint> {
    let (i, q) = p.anchored(k, p.m())?;
    if !p.is_compatible() {
        return Ok(BigUint::zero());
    }
    let d = p.d();
    let step = p.m() / d;
    let mut product = BigUint::one();
    for (piece, ell) in factor_noncoprime(p, i)?.problems(p.s, p.t)? {
        product *= count_coprime(&piece, ell + step * q)?;
        if product.is_zero() {
            break;
        }
    }
    Ok(product)
}

/// `N_{σ,τ}(k)` for every `k ≥ 0`: the factorized count from `ℓ₀` on, brute force below.
pub fn count(p: &FibreProblem, k: usize, cap: u128) -> Result<BigUint> {
    if k < p.ell0() {
        count_brute(p, k, cap)
    } else {
        count_general(p, k)
    }
}

fn check_divisor(a: usize, b: usize, sigma: &Partition) -> Result<()> {
    if b == 0 {
        return Err(Error::ZeroModulus);
    }
    if a == 0 || !a.is_multiple_of(b) {
        return Err(Error::NotADivisor(b, a));
    }
    if !sigma.is_core(b) {
        return Err(Error::NotACore(format!("{sigma} is not a {b}-core")));
    }
    Ok(())
}

/// `#{λ ∈ C_a : core_b λ = σ, ℓ(λ) ≤ k}` by the binomial product formula.
pub fn divisor_fibre_count(a: usize, b: usize, sigma: &Partition, k: usize) -> Result<BigUint> {
    check_divisor(a, b, sigma)?;
    let anchor = sigma.len();
    if k < anchor {
        return Err(Error::BelowAnchor { k, anchor });
    }
    let c = (a / b) as u64;
    let i = anchor + (k - anchor) % b;
    let n = ((k - i) / b) as u64;
    let h = sigma.core_multiset(b, i)?;
    Ok(h.counts()
        .iter()
        .map(|&x| binomial(n + x as u64 + c - 1, c - 1))
        .product())
}

/// The same count by listing the `a`-cores of length at most `k`.
pub fn divisor_count_brute(
    a: usize,
    b: usize,
    sigma: &Partition,
    k: usize,
    cap: u128,
) -> Result<BigUint> {
    check_divisor(a, b, sigma)?;
    check_cap("multisets", &multichoose(a as u64, k as u64), cap)?;
    let mut n = 0u64;
    for counts in compositions(k, a) {
        if ResidueMultiset::new(counts)?.to_core().core(b) == *sigma {
            n += 1;
        }
    }
    Ok(BigUint::from(n))
}

/// The quasipolynomial of period `b` and degree `a - b` behind [`divisor_fibre_count`],
/// exact from `ℓ(σ)` on.
pub fn divisor_quasipoly(a: usize, b: usize, sigma: &Partition) -> Result<Quasipolynomial> {
    check_divisor(a, b, sigma)?;
    let anchor = sigma.len();
    let c = (a / b) as i64;
    let branches = (anchor..anchor + b)
        .map(|i| {
            let h = sigma.core_multiset(b, i)?;
            Ok(h.counts().iter().fold(ExactPolynomial::one(), |acc, &x| {
                &acc * &ExactPolynomial::binomial_in(x as i64 + c - 1, (c - 1) as u64)
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Quasipolynomial {
        period: b,
        anchor,
        threshold: anchor,
        branches,
        certified: None,
    })
}
