//! Exact univariate polynomials over `Q` and quasipolynomials built from them.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A polynomial with rational coefficients, constant term first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        ExactPolynomial::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        ExactPolynomial::default()
    }

    pub fn constant(c: BigRational) -> Self {
        ExactPolynomial::new(vec![c])
    }

    pub fn one() -> Self {
        ExactPolynomial::constant(BigRational::one())
    }

    /// The polynomial `x + a`.
    pub fn linear(a: BigRational) -> Self {
        ExactPolynomial::new(vec![a, BigRational::one()])
    }

    /// `C(x + a, r) = (x + a)(x + a - 1)⋯(x + a - r + 1) / r!`.
    pub fn binomial_in(a: i64, r: u64) -> Self {
        let mut p = ExactPolynomial::one();
        for i in 0..r {
            let factor = ExactPolynomial::linear(rat(a - i as i64));
            p = &p * &factor;
            p = p.scale(&BigRational::new(BigInt::one(), BigInt::from(i + 1)));
        }
        p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ExactPolynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    /// `x ↦ p(x + a)`.
    pub fn shift(&self, a: i64) -> Self {
        let arg = ExactPolynomial::linear(rat(a));
        self.coeffs.iter().rev().fold(ExactPolynomial::zero(), |acc, c| {
            &(&acc * &arg) + &ExactPolynomial::constant(c.clone())
        })
    }

    /// The polynomial of degree below `values.len()` through `(x0 + i, values[i])`.
    pub fn interpolate(x0: i64, values: &[BigRational]) -> Self {
        // Newton forward differences in the shifted variable y = x - x0.
        let mut diffs = values.to_vec();
        let mut newton = Vec::with_capacity(values.len());
        while !diffs.is_empty() {
            newton.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        let mut p = ExactPolynomial::zero();
        for (j, d) in newton.iter().enumerate() {
            // d · C(y, j)
            p = &p + &ExactPolynomial::binomial_in(0, j as u64).scale(d);
        }
        p.shift(-x0)
    }

    /// True iff every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Renders in the variable `var`, highest degree first, e.g. `3k^2 + 3k + 1`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let unit = abs.is_one();
            if i == 0 || !unit {
                if abs.is_integer() {
                    let _ = write!(out, "{}", abs.numer());
                } else {
                    let _ = write!(out, "({}/{})", abs.numer(), abs.denom());
                }
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    let _ = write!(out, "{var}^{i}");
                }
            }
        }
        out
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("k"))
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        ExactPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn neg(self) -> ExactPolynomial {
        ExactPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ExactPolynomial::new(coeffs)
    }
}

/// A function on whole numbers that is polynomial on each residue class.
///
/// The branch for an argument `n` is the one anchored at the unique
/// `i ∈ [anchor, anchor + period)` with `i ≡ n (mod period)`, evaluated at the
/// quotient `(n - i) / period`. The branch variable is that quotient, not `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasipolynomial {
    pub period: usize,
    pub anchor: usize,
    /// Values agree with the counted function for every `n ≥ threshold`.
    pub threshold: usize,
    /// `branches[r]` governs the arguments `anchor + r + period·k`.
    pub branches: Vec<ExactPolynomial>,
    /// Arguments on which the branches were checked against direct counts.
    pub certified: Option<(usize, usize)>,
}

impl Quasipolynomial {
    pub fn zero(period: usize, anchor: usize) -> Self {
        Quasipolynomial {
            period,
            anchor,
            threshold: anchor,
            branches: vec![ExactPolynomial::zero(); period],
            certified: None,
        }
    }

    /// Anchored index of the branch that governs `n`, and the branch variable.
    pub fn locate(&self, n: usize) -> (usize, i64) {
        let p = self.period as i64;
        let offset = (n as i64 - self.anchor as i64).rem_euclid(p);
        let i = self.anchor as i64 + offset;
        (offset as usize, (n as i64 - i) / p)
    }

    pub fn branch_for(&self, n: usize) -> &ExactPolynomial {
        &self.branches[self.locate(n).0]
    }

    pub fn eval(&self, n: usize) -> BigRational {
        let (r, k) = self.locate(n);
        self.branches[r].eval_int(k)
    }

    /// The value at `n` if it is a whole number.
    pub fn value(&self, n: usize) -> Option<BigUint> {
        let v = self.eval(n);
        if v.is_integer() && !v.is_negative() {
            v.to_integer().to_biguint()
        } else {
            None
        }
    }

    /// The maximum branch degree; `None` when every branch is zero.
    pub fn degree(&self) -> Option<usize> {
        self.branches.iter().filter_map(ExactPolynomial::degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.branches.iter().all(ExactPolynomial::is_zero)
    }

    /// The common leading coefficient of the top-degree branches, if they share one.
    pub fn leading_coefficient(&self) -> Option<BigRational> {
        let deg = self.degree()?;
        let mut leads = self
            .branches
            .iter()
            .filter(|b| b.degree() == Some(deg))
            .map(ExactPolynomial::leading_coefficient);
        let first = leads.next()?;
        leads.all(|c| c == first).then_some(first)
    }

    /// `n ↦ Q(n) - Q(n - 1)`, valid from `threshold + 1` on.
    pub fn difference(&self) -> Quasipolynomial {
        let p = self.period;
        let branches = (0..p)
            .map(|r| {
                // n - 1 lies in branch r - 1 with the same quotient, except that the
                // first branch wraps around to the last one with quotient k - 1.
                let previous = if r > 0 {
                    self.branches[r - 1].clone()
                } else {
                    self.branches[p - 1].shift(-1)
                };
                &self.branches[r] - &previous
            })
            .collect();
        Quasipolynomial {
            period: p,
            anchor: self.anchor,
            threshold: self.threshold + 1,
            branches,
            certified: None,
        }
    }

    /// Renders one line per branch, e.g. `n = 6k + 1: 3k^2 + 4k + 1`.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for (r, b) in self.branches.iter().enumerate() {
            let _ = writeln!(out, "n = {}k + {}: {}", self.period, self.anchor + r, b);
        }
        out
    }
}

/// Converts a whole-number rational to `u128` when it fits.
pub fn rational_to_u128(r: &BigRational) -> Option<u128> {
    if r.is_integer() {
        r.to_integer().to_u128()
    } else {
        None
    }
}
