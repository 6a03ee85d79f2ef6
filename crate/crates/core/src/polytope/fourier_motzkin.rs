//! Fourier–Motzkin elimination over the integers.
//!
//! Inequalities `a·x ≤ r` are kept with integer coefficients. Combining a row
//! with a positive coefficient on the eliminated variable and one with a
//! negative coefficient uses positive integer multipliers, so every derived row
//! is a nonnegative combination of the input rows; the combination is tracked
//! when a Farkas certificate is wanted.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Row {
    pub coeffs: Vec<i128>,
    pub rhs: i128,
    /// Multipliers over the input rows; empty when not tracked.
    pub mult: Vec<i128>,
}

/// How rows are normalised after each combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Exact over `Q`: divide by the gcd of every entry, multipliers included.
    Rational,
    /// Valid for integer points only: divide by the gcd of the coefficients and
    /// round the right-hand side down.
    Integer,
}

fn checked_lin(a: i128, x: i128, b: i128, y: i128) -> Result<i128> {
    a.checked_mul(x)
        .zip(b.checked_mul(y))
        .and_then(|(p, q)| p.checked_add(q))
        .ok_or(Error::Overflow)
}

impl Row {
    fn normalise(mut self, mode: Mode) -> Row {
        let g = self.coeffs.iter().fold(0i128, |g, c| g.gcd(c));
        match mode {
            Mode::Rational => {
                let g = self.mult.iter().fold(g.gcd(&self.rhs), |g, c| g.gcd(c));
                if g > 1 {
                    self.coeffs.iter_mut().for_each(|c| *c /= g);
                    self.mult.iter_mut().for_each(|c| *c /= g);
                    self.rhs /= g;
                }
            }
            Mode::Integer => {
                if g > 1 {
                    self.coeffs.iter_mut().for_each(|c| *c /= g);
                    self.rhs = Integer::div_floor(&self.rhs, &g);
                }
            }
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The rows of `{Ax ≤ b, x ≥ 0}`: the `m` rows of `A` followed by `-x_j ≤ 0`.
pub(crate) fn system_rows(a: &[Vec<i64>], b: &[i64], n: usize, track: bool) -> Vec<Row> {
    let m = a.len();
    let total = m + n;
    let unit = |i: usize| {
        if track {
            let mut v = vec![0; total];
            v[i] = 1;
            v
        } else {
            Vec::new()
        }
    };
    let mut rows: Vec<Row> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, &rhs))| Row {
            coeffs: row.iter().map(|&c| c as i128).collect(),
            rhs: rhs as i128,
            mult: unit(i),
        })
        .collect();
    for j in 0..n {
        let mut coeffs = vec![0; n];
        coeffs[j] = -1;
        rows.push(Row {
            coeffs,
            rhs: 0,
            mult: unit(m + j),
        });
    }
    rows
}

/// Outcome of pruning a row set.
pub(crate) enum Pruned {
    Rows(Vec<Row>),
    /// A constant row `0 ≤ r` with `r < 0`.
    Contradiction(Row),
}

/// Drops tautologies and keeps only the tightest row among rows with equal
/// coefficients.
pub(crate) fn prune(rows: Vec<Row>) -> Pruned {
    let mut best: BTreeMap<Vec<i128>, Row> = BTreeMap::new();
    for row in rows {
        if row.is_constant() {
            if row.rhs < 0 {
                return Pruned::Contradiction(row);
            }
            continue;
        }
        match best.get(&row.coeffs) {
            Some(kept) if kept.rhs <= row.rhs => {}
            _ => {
                best.insert(row.coeffs.clone(), row);
            }
        }
    }
    Pruned::Rows(best.into_values().collect())
}

/// Eliminates variable `var`; the result no longer mentions it.
pub(crate) fn eliminate(rows: &[Row], var: usize, mode: Mode) -> Result<Vec<Row>> {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for row in rows {
        match row.coeffs[var].signum() {
            1 => pos.push(row),
            -1 => neg.push(row),
            _ => out.push(row.clone()),
        }
    }
    for p in &pos {
        for q in &neg {
            let (ap, aq) = (p.coeffs[var], -q.coeffs[var]);
            let coeffs = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(&x, &y)| checked_lin(aq, x, ap, y))
                .collect::<Result<Vec<_>>>()?;
            let mult = p
                .mult
                .iter()
                .zip(&q.mult)
                .map(|(&x, &y)| checked_lin(aq, x, ap, y))
                .collect::<Result<Vec<_>>>()?;
            let rhs = checked_lin(aq, p.rhs, ap, q.rhs)?;
            out.push(Row { coeffs, rhs, mult }.normalise(mode));
        }
    }
    Ok(out)
}

/// Rational feasibility of a row set. On infeasibility returns the multipliers
/// of a nonnegative combination that reads `0 ≤ r` with `r < 0`.
pub(crate) fn feasibility(rows: Vec<Row>) -> Result<core::result::Result<(), Vec<i128>>> {
    let n = rows.first().map_or(0, |r| r.coeffs.len());
    let mut rows = match prune(rows) {
        Pruned::Rows(r) => r,
        Pruned::Contradiction(r) => return Ok(Err(r.mult)),
    };
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        // Eliminate the variable that creates the fewest new rows.
        let (idx, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| {
                let p = rows.iter().filter(|r| r.coeffs[v] > 0).count();
                let q = rows.iter().filter(|r| r.coeffs[v] < 0).count();
                p * q
            })
            .expect("nonempty");
        remaining.swap_remove(idx);
        rows = match prune(eliminate(&rows, var, Mode::Rational)?) {
            Pruned::Rows(r) => r,
            Pruned::Contradiction(r) => return Ok(Err(r.mult)),
        };
    }
    Ok(Ok(()))
}

/// The successive projections used to bound coordinates of integer points.
///
/// `levels[j]` holds the rows that mention `x_j` but no later coordinate.
#[derive(Debug, Clone)]
pub(crate) struct Projections {
    pub levels: Vec<Vec<Row>>,
    /// True when some constant row is violated, i.e. there are no integer points.
    pub infeasible: bool,
}

/// Eliminates `x_{n-1}, …, x_0` in turn, keeping the rows of each stage.
pub(crate) fn projections(rows: Vec<Row>, n: usize) -> Result<Projections> {
    let mut levels = vec![Vec::new(); n];
    let mut current = match prune(rows) {
        Pruned::Rows(r) => r,
        Pruned::Contradiction(_) => {
            return Ok(Projections {
                levels,
                infeasible: true,
            })
        }
    };
    for var in (0..n).rev() {
        levels[var] = current
            .iter()
            .filter(|r| r.coeffs[var] != 0)
            .cloned()
            .collect();
        current = match prune(eliminate(&current, var, Mode::Integer)?) {
            Pruned::Rows(r) => r,
            Pruned::Contradiction(_) => {
                return Ok(Projections {
                    levels,
                    infeasible: true,
                })
            }
        };
    }
    Ok(Projections {
        levels,
        infeasible: false,
    })
}

impl Projections {
    /// Integer bounds on `x_j` given the values of `x_0, …, x_{j-1}`; `None` for
    /// an empty range, and `hi == None` when `x_j` is unbounded above.
    pub fn bounds(&self, j: usize, prefix: &[i64]) -> Option<(i128, Option<i128>)> {
        let mut lo = i128::MIN;
        let mut hi: Option<i128> = None;
        for row in &self.levels[j] {
            let rest: i128 = row.rhs
                - row.coeffs[..j]
                    .iter()
                    .zip(prefix)
                    .map(|(&a, &x)| a * x as i128)
                    .sum::<i128>();
            let a = row.coeffs[j];
            if a > 0 {
                let bound = Integer::div_floor(&rest, &a);
                hi = Some(hi.map_or(bound, |h| h.min(bound)));
            } else {
                lo = lo.max(Integer::div_ceil(&rest, &a));
            }
        }
        match hi {
            Some(h) if h < lo => None,
            _ => Some((lo, hi)),
        }
    }
}
