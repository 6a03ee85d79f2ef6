//! Counting lattice points of `P(A, bk + c)` as a polynomial in `k`, for
//! totally unimodular `A`, and the fibre quasipolynomials built on top.
//!
//! The counter slices on one nonzero offset at a time. If `c_r > 0`, the points
//! of `P(A, bk + c)` split into those with row `r` at most `b_r k` and those
//! with row `r` equal to `b_r k + ℓ` for `ℓ = 1, …, c_r`. The latter are
//! `n−1`-dimensional after solving for a pivot variable, and the pivoted matrix
//! is again totally unimodular. Offsets of zero leave a dilated lattice polytope,
//! whose Ehrhart polynomial is found by interpolation.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::fibre::{count, factor_noncoprime, margins_coprime, FibreProblem, DEFAULT_CAP};
use crate::multiset::MarginPair;
use crate::polynomial::{ExactPolynomial, Quasipolynomial};
use crate::polytope::{
    count_lattice_points, farkas_certificate, is_bounded, is_totally_unimodular,
    ConstraintSystem, ParametricSystem, TransportationSpec,
};
use crate::{Error, Result};

/// Thresholds are never searched beyond this value.
pub const THRESHOLD_CAP: usize = 64;

/// The outcome of [`count_parametric`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricCount {
    pub polynomial: ExactPolynomial,
    /// Smallest `k₀` such that the polynomial matches direct counts on the whole
    /// certificate range starting at `k₀`.
    pub threshold: usize,
    /// The threshold that the recursion proves.
    pub derived_threshold: usize,
    /// Inclusive range of `k` on which direct counts were compared.
    pub certificate: (usize, usize),
}

type Key = (Vec<Vec<i64>>, Vec<i64>, Vec<i64>);

/// The counting engine behind [`count_parametric`].
///
/// Subproblems and direct lattice-point counts are cached, so one counter
/// reused across related systems (the branches of a fibre quasipolynomial,
/// say) does much less work than separate calls.
#[derive(Debug, Default)]
pub struct ParametricCounter {
    memo: BTreeMap<Key, (ExactPolynomial, usize)>,
    direct: BTreeMap<(Vec<Vec<i64>>, Vec<i64>), u128>,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn at_least_zero(v: i64) -> usize {
    v.max(0) as usize
}

impl ParametricCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Direct count of `P(A, bk + c)`.
    fn direct(&mut self, a: &[Vec<i64>], b: &[i64], c: &[i64], n: usize, k: usize) -> Result<u128> {
        let sys = ParametricSystem::new(a.to_vec(), b.to_vec(), c.to_vec(), n)?.at(k as i64)?;
        let key = (a.to_vec(), sys.rhs().to_vec());
        if let Some(&v) = self.direct.get(&key) {
            return Ok(v);
        }
        let v = count_lattice_points(&sys)?;
        self.direct.insert(key, v);
        Ok(v)
    }

    fn count(&mut self, a: Vec<Vec<i64>>, b: Vec<i64>, c: Vec<i64>, n: usize) -> Result<(ExactPolynomial, usize)> {
        let key = (a, b, c);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let result = self.solve(&key.0, &key.1, &key.2, n)?;
        self.memo.insert(key, result.clone());
        Ok(result)
    }

    fn solve(&mut self, a: &[Vec<i64>], b: &[i64], c: &[i64], n: usize) -> Result<(ExactPolynomial, usize)> {
        // Empty for large k: a Farkas certificate y bounds the k with points.
        if let Some(y) = farkas_certificate(&ConstraintSystem::new(a.to_vec(), b.to_vec(), n)?)? {
            let yb: i128 = y.iter().zip(b).map(|(&y, &b)| y * b as i128).sum();
            let yc: i128 = y.iter().zip(c).map(|(&y, &c)| y * c as i128).sum();
            // Any point x gives 0 ≤ yAx ≤ k·yb + yc, and yb < 0.
            let k0 = if yc < 0 { 0 } else { yc / -yb + 1 };
            return Ok((ExactPolynomial::zero(), usize::try_from(k0).map_err(|_| Error::Overflow)?));
        }

        // Zero rows read 0 ≤ b_i k + c_i, and b_i ≥ 0 since P(A, b) is nonempty.
        let mut threshold = 0usize;
        let (mut a2, mut b2, mut c2) = (Vec::new(), Vec::new(), Vec::new());
        for ((row, &bi), &ci) in a.iter().zip(b).zip(c) {
            if row.iter().any(|&x| x != 0) {
                a2.push(row.clone());
                b2.push(bi);
                c2.push(ci);
            } else if ci < 0 {
                if bi == 0 {
                    return Ok((ExactPolynomial::zero(), 0));
                }
                threshold = threshold.max(at_least_zero(Integer::div_ceil(&-ci, &bi)));
            }
        }
        let (f, t) = if a2.len() < a.len() {
            self.count(a2, b2, c2, n)?
        } else if n == 0 {
            (ExactPolynomial::one(), 0)
        } else if n == 1 {
            base_case(a, b, c)?
        } else if c.iter().all(|&x| x == 0) {
            (self.ehrhart_interpolation(a, b, n)?, 0)
        } else {
            self.slice(a, b, c, n)?
        };
        Ok((f, threshold.max(t)))
    }

    /// `N(A, bk)` is the Ehrhart polynomial of the lattice polytope `P(A, b)`:
    /// interpolate at `k = 0, …, n` and check three more values.
    fn ehrhart_interpolation(&mut self, a: &[Vec<i64>], b: &[i64], n: usize) -> Result<ExactPolynomial> {
        let zeros = vec![0; b.len()];
        let values = (0..=n + 3)
            .map(|k| self.direct(a, b, &zeros, n, k).map(|v| BigRational::from_integer(BigInt::from(v))))
            .collect::<Result<Vec<_>>>()?;
        let f = ExactPolynomial::interpolate(0, &values[..=n]);
        for (k, v) in values.iter().enumerate().skip(n + 1) {
            if f.eval_int(k as i64) != *v {
                return Err(Error::ThresholdNotCertified {
                    cap: n + 3,
                    detail: alloc::format!("dilates of P(A, b) are not polynomial at k = {k}"),
                });
            }
        }
        Ok(f)
    }

    fn slice(&mut self, a: &[Vec<i64>], b: &[i64], c: &[i64], n: usize) -> Result<(ExactPolynomial, usize)> {
        let r = c.iter().position(|&x| x != 0).expect("some offset is nonzero");
        let p = a[r].iter().position(|&x| x != 0).expect("zero rows were removed");
        let pivot = a[r][p];
        if pivot.abs() != 1 {
            return Err(Error::NotTotallyUnimodular);
        }

        // Solve row r = b_r k + ℓ for x_p; x_p ≥ 0 becomes the new row r.
        let mut reduced = Vec::with_capacity(a.len());
        let mut slope = Vec::with_capacity(a.len());
        for (i, row) in a.iter().enumerate() {
            let factor = if i == r { 0 } else { row[p] * pivot };
            let new_row: Vec<i64> = (0..n)
                .filter(|&j| j != p)
                .map(|j| if i == r { pivot * a[r][j] } else { row[j] - factor * a[r][j] })
                .collect();
            if new_row.iter().any(|x| x.abs() > 1) {
                return Err(Error::NotTotallyUnimodular);
            }
            reduced.push(new_row);
            slope.push(if i == r { pivot * b[r] } else { b[i] - factor * b[r] });
        }
        let offset = |ell: i64| -> Vec<i64> {
            (0..a.len())
                .map(|i| if i == r { pivot * ell } else { c[i] - a[i][p] * pivot * ell })
                .collect()
        };

        let mut rest = c.to_vec();
        rest[r] = 0;
        let (mut f, mut threshold) = self.count(a.to_vec(), b.to_vec(), rest, n)?;
        let (range, sign) = if c[r] > 0 { (1..=c[r], 1) } else { (c[r] + 1..=0, -1) };
        for ell in range {
            let (g, t) = self.count(reduced.clone(), slope.clone(), offset(ell), n - 1)?;
            f = if sign > 0 { &f + &g } else { &f - &g };
            threshold = threshold.max(t);
        }
        Ok((f, threshold))
    }

    /// The polynomial `f` with `N(A, bk + c) = f(k)` for `k ≥ k₀`.
    ///
    /// `A` must be totally unimodular with a trivial characteristic cone. The
    /// derived threshold is checked against direct counts on `n + 3` consecutive
    /// values, moving up (at most to [`THRESHOLD_CAP`]) if they disagree, and the
    /// reported threshold is then lowered while direct counts keep agreeing.
    pub fn count_parametric(&mut self, ps: &ParametricSystem) -> Result<ParametricCount> {
        let n = ps.n;
        if !is_totally_unimodular(&ps.a)? {
            return Err(Error::NotTotallyUnimodular);
        }
        if !is_bounded(&ConstraintSystem::new(ps.a.clone(), vec![0; ps.a.len()], n)?)? {
            return Err(Error::Unbounded);
        }
        let (polynomial, derived) =
            self.count(ps.a.clone(), ps.slope.clone(), ps.offset.clone(), n)?;
        let mut agrees = |k: usize| -> Result<bool> {
            let v = self.direct(&ps.a, &ps.slope, &ps.offset, n, k)?;
            Ok(polynomial.eval_int(k as i64) == BigRational::from_integer(BigInt::from(v)))
        };
        let span = n + 3;
        let mut start = derived;
        loop {
            if start > THRESHOLD_CAP {
                return Err(Error::ThresholdNotCertified {
                    cap: THRESHOLD_CAP,
                    detail: alloc::format!("derived threshold {derived}, polynomial {polynomial}"),
                });
            }
            let mut miss = None;
            for k in start..start + span {
                if !agrees(k)? {
                    miss = Some(k);
                    break;
                }
            }
            match miss {
                Some(k) => start = k + 1,
                None => break,
            }
        }
        let end = start + span - 1;
        while start > 0 && agrees(start - 1)? {
            start -= 1;
        }
        Ok(ParametricCount {
            polynomial,
            threshold: start,
            derived_threshold: derived,
            certificate: (start, end),
        })
    }
}

/// One variable: `P(A, bk + c)` is the interval `[max_J(−b_j k − c_j), min_I(b_i k + c_i)]`.
fn base_case(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> Result<(ExactPolynomial, usize)> {
    // x ≥ 0 is the lower row (b, c) = (0, 0).
    let mut lower = vec![(0i64, 0i64)];
    let mut upper = Vec::new();
    for ((row, &bi), &ci) in a.iter().zip(b).zip(c) {
        match row[0] {
            1 => upper.push((bi, ci)),
            -1 => lower.push((-bi, -ci)),
            _ => return Err(Error::NotTotallyUnimodular),
        }
    }
    if upper.is_empty() {
        return Err(Error::Unbounded);
    }
    let b_lo = lower.iter().map(|x| x.0).max().expect("x ≥ 0 row");
    let b_hi = upper.iter().map(|x| x.0).min().expect("nonempty");
    let c_lo = lower.iter().filter(|x| x.0 == b_lo).map(|x| x.1).max().expect("attained");
    let c_hi = upper.iter().filter(|x| x.0 == b_hi).map(|x| x.1).min().expect("attained");

    // From k₀ on, the rows with the extreme slopes are the binding ones.
    let mut threshold = 0usize;
    for &(bj, cj) in &lower {
        if bj < b_lo {
            threshold = threshold.max(at_least_zero(Integer::div_ceil(&(cj - c_lo), &(b_lo - bj))));
        }
    }
    for &(bi, ci) in &upper {
        if bi > b_hi {
            threshold = threshold.max(at_least_zero(Integer::div_ceil(&(c_hi - ci), &(bi - b_hi))));
        }
    }
    let f = if b_hi > b_lo {
        // The interval length must not be negative either.
        let width = b_hi - b_lo;
        threshold = threshold.max(at_least_zero(Integer::div_ceil(&(c_lo - c_hi - 1), &width)));
        ExactPolynomial::new(vec![int(c_hi - c_lo + 1), int(width)])
    } else if b_hi == b_lo && c_hi >= c_lo {
        ExactPolynomial::constant(int(c_hi - c_lo + 1))
    } else {
        ExactPolynomial::zero()
    };
    Ok((f, threshold))
}

/// The polynomial `f` with `N(A, bk + c) = f(k)` for `k ≥ k₀`, computed by a
/// fresh [`ParametricCounter`].
pub fn count_parametric(ps: &ParametricSystem) -> Result<ParametricCount> {
    ParametricCounter::new().count_parametric(ps)
}

/// Margins `(t, …, t) / (s, …, s)`, the per-step increase of coprime fibre margins.
fn uniform_slope(s: usize, t: usize) -> MarginPair {
    MarginPair::new(vec![t as u64; s], vec![s as u64; t])
}

impl ParametricCounter {
    /// `(f, q₀)` with `N_{σ,τ}(i + st·q) = f(q)` for `q ≥ q₀`; `s, t` coprime.
    fn coprime_branch(&mut self, p: &FibreProblem, i: usize) -> Result<(ExactPolynomial, usize)> {
        let ps = ParametricSystem::transportation(
            &uniform_slope(p.s(), p.t()),
            &margins_coprime(p, i, 0)?,
        )?;
        let r = self.count_parametric(&ps)?;
        Ok((r.polynomial, r.threshold))
    }

    /// The branch at anchored index `i` as a polynomial in the quotient, with
    /// the smallest quotient from which it is certified.
    fn branch(&mut self, p: &FibreProblem, i: usize) -> Result<(ExactPolynomial, usize)> {
        if p.is_coprime() {
            return self.coprime_branch(p, i);
        }
        let mut f = ExactPolynomial::one();
        let mut q0 = 0;
        for (piece, ell) in factor_noncoprime(p, i)?.problems(p.s(), p.t())? {
            let (g, t) = self.coprime_branch(&piece, ell)?;
            f = &f * &g;
            q0 = q0.max(t);
        }
        Ok((f, q0))
    }

    /// [`symbolic_quasipolynomial`] on this counter.
    pub fn symbolic_quasipolynomial(&mut self, p: &FibreProblem) -> Result<Quasipolynomial> {
        let (m, anchor) = (p.m(), p.ell0());
        if !p.is_compatible() {
            let mut q = Quasipolynomial::zero(m, anchor);
            q.threshold = 0;
            return Ok(q);
        }
        let mut branches = Vec::with_capacity(m);
        let mut threshold = anchor;
        for r in 0..m {
            let i = anchor + r;
            let (f, q0) = self.branch(p, i)?;
            // Arguments i + m·q with q ≥ q₀ are exactly those above i + m(q₀ − 1).
            threshold = threshold.max((i + m * q0 + 1).saturating_sub(m));
            branches.push(f);
        }
        Ok(Quasipolynomial {
            period: m,
            anchor,
            threshold,
            branches,
            certified: None,
        })
    }

    /// [`fibre_quasipolynomial`] on this counter.
    pub fn fibre_quasipolynomial(&mut self, p: &FibreProblem) -> Result<Quasipolynomial> {
        let mut q = self.symbolic_quasipolynomial(p)?;
        let oracle = |n: usize| count(p, n, DEFAULT_CAP);
        let span = q.period * (q.degree().unwrap_or(0) + 3);
        let end = q.threshold + span - 1;
        let report = verify_quasipoly(&q, oracle, q.threshold..=end)?;
        if let Some(bad) = report.first_disagreement {
            return Err(Error::ThresholdNotCertified {
                cap: end,
                detail: alloc::format!(
                    "at n = {}: quasipolynomial {}, table count {}",
                    bad.n,
                    bad.expected,
                    bad.found
                ),
            });
        }
        while q.threshold > 0 {
            let n = q.threshold - 1;
            if q.eval(n) != BigRational::from_integer(oracle(n)?.into()) {
                break;
            }
            q.threshold = n;
        }
        q.certified = Some((q.threshold, end));
        Ok(q)
    }

    /// [`exact_length_quasipoly`] on this counter.
    pub fn exact_length_quasipoly(&mut self, p: &FibreProblem) -> Result<Quasipolynomial> {
        let q = self.fibre_quasipolynomial(p)?;
        let mut diff = q.difference();
        let oracle = |n: usize| -> Result<BigUint> {
            let below = if n == 0 {
                BigUint::zero()
            } else {
                count(p, n - 1, DEFAULT_CAP)?
            };
            Ok(count(p, n, DEFAULT_CAP)? - below)
        };
        let (lo, hi) = q.certified.expect("certified above");
        let lo = (lo + 1).min(hi);
        let report = verify_quasipoly(&diff, oracle, lo..=hi)?;
        if let Some(bad) = report.first_disagreement {
            return Err(Error::ThresholdNotCertified {
                cap: hi,
                detail: alloc::format!("difference disagrees at n = {}", bad.n),
            });
        }
        diff.threshold = lo;
        diff.certified = Some((lo, hi));
        Ok(diff)
    }
}

/// The fibre quasipolynomial with thresholds from the symbolic counter only.
///
/// Each branch is certified against lattice-point counts of its transportation
/// polytope, not against fibre counts; see [`fibre_quasipolynomial`].
pub fn symbolic_quasipolynomial(p: &FibreProblem) -> Result<Quasipolynomial> {
    ParametricCounter::new().symbolic_quasipolynomial(p)
}

/// The quasipolynomial of period `m` that agrees with `N_{σ,τ}` from its threshold on.
///
/// After the symbolic construction, every branch is compared with the
/// contingency-table count on `deg + 3` consecutive arguments past the
/// threshold, and the threshold is then lowered as far as the count keeps
/// agreeing. Below `ℓ₀` that count lists cores directly.
pub fn fibre_quasipolynomial(p: &FibreProblem) -> Result<Quasipolynomial> {
    ParametricCounter::new().fibre_quasipolynomial(p)
}

/// The quasipolynomial counting fibre elements of length exactly `n`.
pub fn exact_length_quasipoly(p: &FibreProblem) -> Result<Quasipolynomial> {
    ParametricCounter::new().exact_length_quasipoly(p)
}

/// The leading coefficient of the Ehrhart polynomial of the projected
/// transportation polytope: its relative volume when all margins are positive.
pub fn relative_volume(spec: &TransportationSpec) -> Result<BigRational> {
    let (s, t) = spec.shape();
    let zero = MarginPair::new(vec![0; s], vec![0; t]);
    let ps = ParametricSystem::transportation(&spec.margins(), &zero)?;
    let f = count_parametric(&ps)?.polynomial;
    Ok(if f.is_zero() {
        BigRational::zero()
    } else {
        f.leading_coefficient()
    })
}

/// `V_{s,t}`, the relative volume of the transportation polytope with uniform margins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeReport {
    pub s: usize,
    pub t: usize,
    pub volume: BigRational,
    pub dimension: usize,
}

pub fn volume_report(s: usize, t: usize) -> Result<VolumeReport> {
    let volume = relative_volume(&TransportationSpec::uniform(s, t)?)?;
    Ok(VolumeReport {
        s,
        t,
        volume,
        dimension: (s - 1) * (t - 1),
    })
}

/// A point where a quasipolynomial and its oracle differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub n: usize,
    pub expected: BigRational,
    pub found: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub range: RangeInclusive<usize>,
    pub first_disagreement: Option<Disagreement>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

/// Compares `q` with `oracle` on every argument in `range`, stopping at the first difference.
pub fn verify_quasipoly(
    q: &Quasipolynomial,
    mut oracle: impl FnMut(usize) -> Result<BigUint>,
    range: RangeInclusive<usize>,
) -> Result<VerifyReport> {
    for n in range.clone() {
        let found = oracle(n)?;
        let expected = q.eval(n);
        if expected != BigRational::from_integer(BigInt::from(found.clone())) {
            return Ok(VerifyReport {
                range,
                first_disagreement: Some(Disagreement { n, expected, found }),
            });
        }
    }
    Ok(VerifyReport {
        range,
        first_disagreement: None,
    })
}
