//! Polyhedra `P(A, b) = {x : Ax ≤ b, x ≥ 0}` and transportation polytopes.

mod fourier_motzkin;
mod unimodular;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::multiset::{MarginPair, Matching};
use crate::{Error, Result};
use fourier_motzkin::{feasibility, projections, system_rows, Projections, Row};

pub use unimodular::{is_totally_unimodular, MAX_MINOR};

/// The system `Ax ≤ b, x ≥ 0` with integer data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    a: Vec<Vec<i64>>,
    b: Vec<i64>,
    n: usize,
}

fn check_shape(a: &[Vec<i64>], m: usize, n: usize) -> Result<()> {
    if a.len() != m {
        return Err(Error::Dimension(format!(
            "{} rows in A but {m} right-hand sides",
            a.len()
        )));
    }
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::Dimension(format!(
            "row of length {} in a system with {n} variables",
            row.len()
        )));
    }
    Ok(())
}

impl ConstraintSystem {
    /// `n` is explicit so that systems without rows, or with zero columns, are expressible.
    pub fn new(a: Vec<Vec<i64>>, b: Vec<i64>, n: usize) -> Result<Self> {
        check_shape(&a, b.len(), n)?;
        Ok(ConstraintSystem { a, b, n })
    }

    /// Infers the number of variables from the first row.
    pub fn from_rows(a: Vec<Vec<i64>>, b: Vec<i64>) -> Result<Self> {
        let n = a.first().map_or(0, Vec::len);
        Self::new(a, b, n)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn rhs(&self) -> &[i64] {
        &self.b
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// True iff `x` is a nonnegative solution.
    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.n
            && x.iter().all(|&v| v >= 0)
            && self.a.iter().zip(&self.b).all(|(row, &b)| {
                row.iter().zip(x).map(|(&a, &v)| a as i128 * v as i128).sum::<i128>() <= b as i128
            })
    }

    fn rows_for_fm(&self, track: bool) -> Vec<Row> {
        system_rows(&self.a, &self.b, self.n, track)
    }
}

/// The family `P(A, b·k + c)` for integers `k ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricSystem {
    pub a: Vec<Vec<i64>>,
    pub slope: Vec<i64>,
    pub offset: Vec<i64>,
    pub n: usize,
}

impl ParametricSystem {
    pub fn new(a: Vec<Vec<i64>>, slope: Vec<i64>, offset: Vec<i64>, n: usize) -> Result<Self> {
        check_shape(&a, slope.len(), n)?;
        if offset.len() != slope.len() {
            return Err(Error::Dimension("slope and offset differ in length".into()));
        }
        Ok(ParametricSystem {
            a,
            slope,
            offset,
            n,
        })
    }

    /// The member of the family at `k`.
    pub fn at(&self, k: i64) -> Result<ConstraintSystem> {
        let b = self
            .slope
            .iter()
            .zip(&self.offset)
            .map(|(&s, &c)| s.checked_mul(k).and_then(|v| v.checked_add(c)))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Overflow)?;
        ConstraintSystem::new(self.a.clone(), b, self.n)
    }

    /// Projected transportation systems with margins `slope·k + offset`.
    ///
    /// Both margin pairs must have the same shape; only the sum `slope·k + offset`
    /// needs to be balanced, which holds for every `k` when each pair is.
    pub fn transportation(slope: &MarginPair, offset: &MarginPair) -> Result<Self> {
        let (s, t) = (slope.rows.len(), slope.cols.len());
        if offset.rows.len() != s || offset.cols.len() != t || s == 0 || t == 0 {
            return Err(Error::Dimension("margin shapes differ".into()));
        }
        slope.check_balanced()?;
        offset.check_balanced()?;
        let signed = |v: &[u64]| -> Result<Vec<i64>> {
            v.iter()
                .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow))
                .collect()
        };
        let a = transportation_matrix(s, t);
        let n = (s - 1) * (t - 1);
        Self::new(
            a,
            transportation_rhs(&signed(&slope.rows)?, &signed(&slope.cols)?),
            transportation_rhs(&signed(&offset.rows)?, &signed(&offset.cols)?),
            n,
        )
    }
}

/// Balanced row and column margins of a transportation polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportationSpec {
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl TransportationSpec {
    pub fn new(rows: Vec<u64>, cols: Vec<u64>) -> Result<Self> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Dimension("margins must be nonempty".into()));
        }
        MarginPair::new(rows.clone(), cols.clone()).check_balanced()?;
        Ok(TransportationSpec { rows, cols })
    }

    /// Uniform margins `(t, …, t)` (s times) and `(s, …, s)` (t times).
    pub fn uniform(s: usize, t: usize) -> Result<Self> {
        Self::new(vec![t as u64; s], vec![s as u64; t])
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn cols(&self) -> &[u64] {
        &self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn margins(&self) -> MarginPair {
        MarginPair::new(self.rows.clone(), self.cols.clone())
    }
}

impl TryFrom<MarginPair> for TransportationSpec {
    type Error = Error;

    fn try_from(m: MarginPair) -> Result<Self> {
        Self::new(m.rows, m.cols)
    }
}

/// Coefficient matrix of the projected transportation system for `s × t` margins.
///
/// Variables are the entries `x_ij` with `i < s−1`, `j < t−1`, in row-major
/// order. Rows: the `s−1` partial row sums, the `t−1` partial column sums, and
/// minus the total.
pub fn transportation_matrix(s: usize, t: usize) -> Vec<Vec<i64>> {
    let (p, q) = (s.saturating_sub(1), t.saturating_sub(1));
    let n = p * q;
    let mut a = Vec::with_capacity(s + t - 1);
    for i in 0..p {
        let mut row = vec![0; n];
        row[i * q..(i + 1) * q].fill(1);
        a.push(row);
    }
    for j in 0..q {
        let mut row = vec![0; n];
        for i in 0..p {
            row[i * q + j] = 1;
        }
        a.push(row);
    }
    a.push(vec![-1; n]);
    a
}

/// Right-hand side for margins `rows`, `cols`; linear in the margins.
pub fn transportation_rhs(rows: &[i64], cols: &[i64]) -> Vec<i64> {
    let (s, t) = (rows.len(), cols.len());
    let mut b: Vec<i64> = rows[..s - 1].to_vec();
    b.extend_from_slice(&cols[..t - 1]);
    b.push(rows[s - 1] - cols[..t - 1].iter().sum::<i64>());
    b
}

/// The full-dimensional model of the transportation polytope: forget the last
/// row and column.
pub fn transportation_projected(spec: &TransportationSpec) -> Result<ConstraintSystem> {
    let (s, t) = spec.shape();
    let signed = |v: &[u64]| -> Result<Vec<i64>> {
        v.iter()
            .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow))
            .collect()
    };
    let b = transportation_rhs(&signed(&spec.rows)?, &signed(&spec.cols)?);
    ConstraintSystem::new(transportation_matrix(s, t), b, (s - 1) * (t - 1))
}

/// Rebuilds the matrix whose top-left `(s−1) × (t−1)` block is `x`.
pub fn lift_point(spec: &TransportationSpec, x: &[i64]) -> Result<Matching> {
    let (s, t) = spec.shape();
    let q = t - 1;
    if x.len() != (s - 1) * q {
        return Err(Error::Dimension(format!(
            "expected {} coordinates, got {}",
            (s - 1) * q,
            x.len()
        )));
    }
    let mut m = vec![vec![0i128; t]; s];
    for i in 0..s - 1 {
        for j in 0..q {
            m[i][j] = x[i * q + j] as i128;
        }
        m[i][q] = spec.rows[i] as i128 - m[i][..q].iter().sum::<i128>();
    }
    for (j, &c) in spec.cols.iter().enumerate() {
        let above: i128 = m[..s - 1].iter().map(|row| row[j]).sum();
        m[s - 1][j] = c as i128 - above;
    }
    let entries = m
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| u64::try_from(v).map_err(|_| Error::NegativeEntry))
                .collect()
        })
        .collect::<Result<Vec<Vec<u64>>>>()?;
    Ok(Matching { entries })
}

/// Inverse of [`lift_point`]: the top-left block in row-major order.
pub fn project_matching(m: &Matching) -> Vec<i64> {
    let s = m.entries.len();
    let t = m.entries.first().map_or(0, Vec::len);
    m.entries[..s.saturating_sub(1)]
        .iter()
        .flat_map(|row| row[..t.saturating_sub(1)].iter().map(|&v| v as i64))
        .collect()
}

/// A Farkas certificate of emptiness: `y ≥ 0` with `yA ≥ 0` and `y·b < 0`.
pub fn farkas_certificate(sys: &ConstraintSystem) -> Result<Option<Vec<i128>>> {
    Ok(match feasibility(sys.rows_for_fm(true))? {
        Ok(()) => None,
        Err(mult) => Some(mult[..sys.rows()].to_vec()),
    })
}

/// True iff `P(A, b)` has no rational point.
pub fn is_empty(sys: &ConstraintSystem) -> Result<bool> {
    Ok(feasibility(sys.rows_for_fm(false))?.is_err())
}

/// True iff the characteristic cone `{y ≥ 0 : Ay ≤ 0}` is trivial. Empty
/// polytopes count as bounded.
pub fn is_bounded(sys: &ConstraintSystem) -> Result<bool> {
    if is_empty(sys)? {
        return Ok(true);
    }
    for j in 0..sys.n {
        let mut rows = system_rows(&sys.a, &vec![0; sys.rows()], sys.n, false);
        let mut coeffs = vec![0; sys.n];
        coeffs[j] = -1;
        rows.push(Row {
            coeffs,
            rhs: -1,
            mult: Vec::new(),
        });
        if feasibility(rows)?.is_ok() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn bounded_projections(sys: &ConstraintSystem) -> Result<Projections> {
    if !is_bounded(sys)? {
        return Err(Error::Unbounded);
    }
    projections(sys.rows_for_fm(false), sys.n)
}

/// All integer points, in lexicographic order.
pub fn lattice_points(sys: &ConstraintSystem, cap: usize) -> Result<Vec<Vec<i64>>> {
    let proj = bounded_projections(sys)?;
    let mut out = Vec::new();
    if proj.infeasible {
        return Ok(out);
    }
    let mut prefix = Vec::with_capacity(sys.n);
    collect_points(&proj, sys.n, &mut prefix, &mut out, cap)?;
    Ok(out)
}

fn collect_points(
    proj: &Projections,
    n: usize,
    prefix: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
    cap: usize,
) -> Result<()> {
    let j = prefix.len();
    if j == n {
        if out.len() == cap {
            return Err(Error::CapExceeded {
                what: "lattice points",
                count: cap as u128 + 1,
                cap: cap as u128,
            });
        }
        out.push(prefix.clone());
        return Ok(());
    }
    let Some((lo, hi)) = proj.bounds(j, prefix) else {
        return Ok(());
    };
    let hi = hi.ok_or(Error::Unbounded)?;
    for v in lo.max(0)..=hi {
        prefix.push(i64::try_from(v).map_err(|_| Error::Overflow)?);
        collect_points(proj, n, prefix, out, cap)?;
        prefix.pop();
    }
    Ok(())
}

/// Number of integer points.
///
/// The number of ways to complete a prefix `x_0, …, x_{j-1}` only depends on
/// the slack left in the rows that mention a later coordinate, so completions
/// are memoised on that slack; the last coordinate is counted as an interval.
pub fn count_lattice_points(sys: &ConstraintSystem) -> Result<u128> {
    let order = walk_order(&sys.a, sys.n);
    let permuted = ConstraintSystem {
        a: sys.a.iter().map(|row| order.iter().map(|&j| row[j]).collect()).collect(),
        b: sys.b.clone(),
        n: sys.n,
    };
    let sys = &permuted;
    let proj = bounded_projections(sys)?;
    if proj.infeasible {
        return Ok(0);
    }
    if sys.n == 0 {
        return Ok(1);
    }
    // Rows still open at level j: those whose last nonzero coordinate is ≥ j.
    let last: Vec<usize> = sys
        .a
        .iter()
        .map(|row| row.iter().rposition(|&x| x != 0).unwrap_or(0))
        .collect();
    let mut walk = Walk {
        sys,
        proj: &proj,
        last,
        prefix: Vec::with_capacity(sys.n),
        slack: sys.b.iter().map(|&b| b as i128).collect(),
        memo: BTreeMap::new(),
    };
    walk.count()
}

/// Orders beyond this many coordinates are not optimised.
const ORDER_SEARCH_MAX: usize = 16;

/// A coordinate order keeping few rows open at once: a row is open after a
/// prefix if it mentions coordinates both inside and outside the prefix. The
/// memoised walk has one state per distinct slack of the open rows, so fewer
/// open rows means far fewer states. The order minimises the largest number of
/// open rows over all prefixes, then their sum.
fn walk_order(a: &[Vec<i64>], n: usize) -> Vec<usize> {
    if n > ORDER_SEARCH_MAX {
        return (0..n).collect();
    }
    let support: Vec<u32> = a
        .iter()
        .map(|row| (0..n).filter(|&j| row[j] != 0).fold(0u32, |m, j| m | 1 << j))
        .collect();
    let open = |set: u32| {
        support
            .iter()
            .filter(|&&r| r & set != 0 && r & !set != 0)
            .count()
    };
    let full = (1u32 << n) - 1;
    // best[set] = (max, sum, last coordinate added) over orders of `set`.
    let mut best = vec![(usize::MAX, usize::MAX, 0usize); 1 << n];
    best[0] = (0, 0, 0);
    for set in 1..=full {
        let here = open(set);
        for j in (0..n).filter(|&j| set >> j & 1 == 1) {
            let (mx, sum, _) = best[(set & !(1 << j)) as usize];
            let cand = (mx.max(here), sum + here, j);
            if (cand.0, cand.1) < (best[set as usize].0, best[set as usize].1) {
                best[set as usize] = cand;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let j = best[set as usize].2;
        order.push(j);
        set &= !(1 << j);
    }
    order.reverse();
    order
}

struct Walk<'a> {
    sys: &'a ConstraintSystem,
    proj: &'a Projections,
    last: Vec<usize>,
    prefix: Vec<i64>,
    slack: Vec<i128>,
    memo: BTreeMap<(usize, Vec<i128>), u128>,
}

impl Walk<'_> {
    fn count(&mut self) -> Result<u128> {
        let j = self.prefix.len();
        let n = self.sys.n;
        let Some((lo, hi)) = self.proj.bounds(j, &self.prefix) else {
            return Ok(0);
        };
        let hi = hi.ok_or(Error::Unbounded)?;
        let lo = lo.max(0);
        if hi < lo {
            return Ok(0);
        }
        if j + 1 == n {
            return Ok((hi - lo + 1) as u128);
        }
        let key = (
            j,
            self.slack
                .iter()
                .zip(&self.last)
                .filter(|&(_, &l)| l >= j)
                .map(|(&s, _)| s)
                .collect::<Vec<_>>(),
        );
        if let Some(&hit) = self.memo.get(&key) {
            return Ok(hit);
        }
        let mut total = 0u128;
        for v in lo..=hi {
            self.prefix.push(i64::try_from(v).map_err(|_| Error::Overflow)?);
            self.shift_slack(j, v);
            let sub = self.count();
            self.shift_slack(j, -v);
            self.prefix.pop();
            total += sub?;
        }
        self.memo.insert(key, total);
        Ok(total)
    }

    fn shift_slack(&mut self, j: usize, v: i128) {
        for (s, row) in self.slack.iter_mut().zip(&self.sys.a) {
            *s -= row[j] as i128 * v;
        }
    }
}

/// Solves a square rational system; `None` when singular.
fn solve(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        let pivot_row = m[col].clone();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for (x, p) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
                let d = &f * &rhs[col];
                rhs[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Vertices of `P(A, b)` by basis enumeration, in sorted order.
pub fn vertices(sys: &ConstraintSystem) -> Vec<Vec<BigRational>> {
    let n = sys.n;
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    // All m + n inequalities as (coefficients, rhs).
    let mut ineqs: Vec<(Vec<BigRational>, BigRational)> = sys
        .a
        .iter()
        .zip(&sys.b)
        .map(|(row, &b)| (row.iter().map(|&v| int(v)).collect(), int(b)))
        .collect();
    for j in 0..n {
        let mut row = vec![BigRational::zero(); n];
        row[j] = -BigRational::one();
        ineqs.push((row, BigRational::zero()));
    }
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    unimodular::for_each_subset(ineqs.len(), n, |basis| {
        let m = basis.iter().map(|&i| ineqs[i].0.clone()).collect();
        let rhs = basis.iter().map(|&i| ineqs[i].1.clone()).collect();
        if let Some(x) = solve(m, rhs) {
            let feasible = ineqs.iter().all(|(row, b)| {
                let lhs: BigRational = row.iter().zip(&x).map(|(a, v)| a * v).sum();
                lhs <= *b
            });
            if feasible {
                out.push(x);
            }
        }
        true
    });
    out.sort();
    out.dedup();
    out
}

/// True iff every coordinate of every vertex is an integer.
pub fn is_integral(vertices: &[Vec<BigRational>]) -> bool {
    vertices.iter().flatten().all(|v| v.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::{count_matchings, enumerate_matchings};
    use alloc::string::ToString;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn sys(a: Vec<Vec<i64>>, b: Vec<i64>) -> ConstraintSystem {
        ConstraintSystem::from_rows(a, b).unwrap()
    }

    #[test]
    fn emptiness_examples() {
        assert!(is_empty(&sys(vec![vec![1]], vec![-1])).unwrap());
        assert!(!is_empty(&sys(vec![vec![1]], vec![0])).unwrap());
        let spec = TransportationSpec::new(vec![3, 3], vec![2, 2, 2]).unwrap();
        assert!(!is_empty(&transportation_projected(&spec).unwrap()).unwrap());
    }

    #[test]
    fn farkas_certificates_check_out() {
        let s = sys(vec![vec![1, 1], vec![-1, -1]], vec![2, -3]);
        let y = farkas_certificate(&s).unwrap().expect("empty");
        assert!(y.iter().all(|&v| v >= 0));
        for j in 0..2 {
            let col: i128 = (0..2).map(|i| y[i] * s.a[i][j] as i128).sum();
            assert!(col >= 0);
        }
        let yb: i128 = (0..2).map(|i| y[i] * s.b[i] as i128).sum();
        assert!(yb < 0);
        assert_eq!(farkas_certificate(&sys(vec![vec![1]], vec![0])).unwrap(), None);
    }

    #[test]
    fn boundedness_examples() {
        assert!(is_bounded(&sys(vec![vec![1]], vec![4])).unwrap());
        assert!(!is_bounded(&sys(vec![vec![-1]], vec![4])).unwrap());
        let spec = TransportationSpec::new(vec![3, 3], vec![2, 2, 2]).unwrap();
        assert!(is_bounded(&transportation_projected(&spec).unwrap()).unwrap());
        assert!(is_bounded(&sys(vec![vec![1]], vec![-1])).unwrap());
    }

    #[test]
    fn lattice_point_examples() {
        assert_eq!(
            lattice_points(&sys(vec![vec![1]], vec![3]), 100).unwrap(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        let spec = TransportationSpec::new(vec![3, 3], vec![2, 2, 2]).unwrap();
        let p = transportation_projected(&spec).unwrap();
        assert_eq!(lattice_points(&p, 100).unwrap().len(), 7);
        assert_eq!(count_lattice_points(&p).unwrap(), 7);
        assert!(lattice_points(&sys(vec![vec![1]], vec![-1]), 10)
            .unwrap()
            .is_empty());
        assert!(matches!(
            lattice_points(&sys(vec![vec![1]], vec![3]), 2),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(
            count_lattice_points(&sys(vec![vec![-1]], vec![0])),
            Err(Error::Unbounded)
        );
    }

    #[test]
    fn projected_system_shape() {
        let spec = TransportationSpec::new(vec![3, 3], vec![2, 2, 2]).unwrap();
        let p = transportation_projected(&spec).unwrap();
        assert_eq!(p.rows(), 4);
        assert_eq!(p.dimension(), 2);
        assert_eq!(p.rhs(), &[3, 2, 2, -1]);
        assert_eq!(
            p.matrix(),
            &[vec![1, 1], vec![1, 0], vec![0, 1], vec![-1, -1]]
        );

        let point = TransportationSpec::new(vec![5], vec![5]).unwrap();
        let p = transportation_projected(&point).unwrap();
        assert_eq!((p.rows(), p.dimension()), (1, 0));
        assert_eq!(lattice_points(&p, 10).unwrap(), vec![Vec::<i64>::new()]);
        assert_eq!(
            lift_point(&point, &[]).unwrap().entries,
            vec![vec![5]]
        );

        // The hexagon 1 ≤ x + y ≤ 3, 0 ≤ x, y ≤ 2.
        let hex = TransportationSpec::new(vec![2, 2, 2], vec![3, 3]).unwrap();
        let p = transportation_projected(&hex).unwrap();
        let two = |a: i64, b: i64| vec![BigRational::from_integer(a.into()), BigRational::from_integer(b.into())];
        assert_eq!(
            vertices(&p),
            vec![two(0, 1), two(0, 2), two(1, 0), two(1, 2), two(2, 0), two(2, 1)]
        );
    }

    #[test]
    fn lifting_examples() {
        let spec = TransportationSpec::new(vec![2, 2, 2], vec![3, 3]).unwrap();
        assert_eq!(
            lift_point(&spec, &[1, 1]).unwrap().entries,
            vec![vec![1, 1], vec![1, 1], vec![1, 1]]
        );
        assert_eq!(
            lift_point(&spec, &[2, 1]).unwrap().entries,
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(lift_point(&spec, &[2, 2]), Err(Error::NegativeEntry));
        assert_eq!(lift_point(&spec, &[0, 0]), Err(Error::NegativeEntry));
    }

    #[test]
    fn unbalanced_margins_rejected() {
        assert!(matches!(
            TransportationSpec::new(vec![1, 2], vec![4]),
            Err(Error::UnbalancedMargins { .. })
        ));
    }

    #[test]
    fn transportation_matrices_are_unimodular() {
        for s in 1..=4 {
            for t in 1..=4 {
                assert!(
                    is_totally_unimodular(&transportation_matrix(s, t)).unwrap(),
                    "{s}x{t}"
                );
            }
        }
    }

    fn margin_vectors(len: usize, max: u64) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=max).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Every balanced margin pair with `s, t ≤ 3` and entries `≤ max`.
    fn small_specs(max: u64) -> Vec<TransportationSpec> {
        let mut out = Vec::new();
        for s in 1..=3 {
            for t in 1..=3 {
                for rows in margin_vectors(s, max) {
                    for cols in margin_vectors(t, max) {
                        if let Ok(spec) = TransportationSpec::new(rows.clone(), cols) {
                            out.push(spec);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn lattice_points_match_matchings() {
        for spec in small_specs(5) {
            let p = transportation_projected(&spec).unwrap();
            let pts = lattice_points(&p, 1_000_000).unwrap();
            assert_eq!(
                BigUint::from(pts.len()),
                count_matchings(&spec.margins()).unwrap(),
                "{spec:?}"
            );
            assert_eq!(count_lattice_points(&p).unwrap(), pts.len() as u128);
            for x in &pts {
                let m = lift_point(&spec, x).unwrap();
                assert_eq!(m.margins(), spec.margins());
            }
        }
    }

    #[test]
    fn lift_inverts_projection() {
        for spec in small_specs(3) {
            for m in enumerate_matchings(&spec.margins(), 100_000).unwrap() {
                let x = project_matching(&m);
                assert!(transportation_projected(&spec).unwrap().contains(&x));
                assert_eq!(lift_point(&spec, &x).unwrap(), m);
            }
        }
    }

    #[test]
    fn transportation_vertices_are_integral() {
        for spec in small_specs(3) {
            let p = transportation_projected(&spec).unwrap();
            let v = vertices(&p);
            assert!(is_integral(&v), "{spec:?}");
            assert_eq!(v.is_empty(), is_empty(&p).unwrap());
        }
        // Integral right-hand sides that do not come from nonnegative margins.
        let a = transportation_matrix(3, 3);
        for b in margin_vectors(5, 2) {
            let b: Vec<i64> = b.iter().map(|&x| x as i64 - 1).collect();
            let p = ConstraintSystem::new(a.clone(), b, 4).unwrap();
            assert!(is_integral(&vertices(&p)));
        }
    }

    #[test]
    fn parametric_members() {
        let slope = MarginPair::new(vec![3, 3], vec![2, 2, 2]);
        let offset = MarginPair::new(vec![1, 0], vec![1, 0, 0]);
        let ps = ParametricSystem::transportation(&slope, &offset).unwrap();
        let p1 = ps.at(1).unwrap();
        assert_eq!(p1.rhs(), &[4, 3, 2, -2]);
        assert_eq!(count_lattice_points(&p1).unwrap(), 8);
        assert!(ConstraintSystem::new(vec![vec![1]], vec![], 1)
            .unwrap_err()
            .to_string()
            .contains("rows"));
    }

    proptest! {
        #[test]
        fn emptiness_agrees_with_rational_search(
            a in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 2), 1..4),
            b in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let b = b[..a.len()].to_vec();
            let p = ConstraintSystem::from_rows(a, b).unwrap();
            // Vertices exist iff P is nonempty (P lies in the orthant, so it is pointed).
            prop_assert_eq!(is_empty(&p).unwrap(), vertices(&p).is_empty());
            // Sample rationals with denominator 6 in a box.
            let witnessed = (0..=60).any(|x| (0..=60).any(|y| {
                p.a.iter().zip(&p.b).all(|(r, &b)| r[0] * x + r[1] * y <= 6 * b)
            }));
            if witnessed {
                prop_assert!(!is_empty(&p).unwrap());
            }
        }
    }
}
