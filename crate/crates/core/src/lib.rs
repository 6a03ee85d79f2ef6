//! Exact enumeration of core partitions.
//!
//! Fix an `s`-core `σ` and a `t`-core `τ`, put `d = gcd(s, t)` and `m = lcm(s, t)`,
//! and let `N_{σ,τ}(k)` be the number of `m`-cores of length at most `k` whose
//! `s`-core is `σ` and whose `t`-core is `τ`. This crate counts these by brute
//! force over the abacus or by counting contingency tables, and assembles from
//! symbolic lattice-point counts the quasipolynomial of period `m` that agrees
//! with `N_{σ,τ}` for large `k`.
//!
//! The modules build on one another:
//!
//! - [`partition`]: partitions, β-sets and the abacus.
//! - [`multiset`]: finite multisets and contingency tables.
//! - [`fibre`]: the fibre counts `N_{σ,τ}(k)` and the divisor closed form.
//! - [`polytope`]: `P(A, b) = {x ≥ 0 : Ax ≤ b}`, feasibility by Fourier–Motzkin
//!   elimination, and transportation polytopes.
//! - [`polynomial`]: exact rational polynomials and quasipolynomials.
//! - [`ehrhart`]: counting lattice points of `P(A, bk + c)` as a polynomial in
//!   `k`, and the fibre quasipolynomials built from it.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ehrhart;
mod error;
pub mod fibre;
pub mod multiset;
pub mod partition;
pub mod polynomial;
pub mod polytope;

pub use error::{Error, Result};
pub use fibre::FibreProblem;
pub use multiset::{FiniteMultiset, MarginPair, Matching};
pub use partition::{BetaSet, Partition, Pseudopartition, ResidueMultiset};
pub use polynomial::{ExactPolynomial, Quasipolynomial};
pub use polytope::{ConstraintSystem, ParametricSystem, TransportationSpec};
