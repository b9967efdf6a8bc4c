//! Exact-rational calculator for the rank-1 free-boson vertex algebra
//! with deformed conformal structure, its singlet subalgebra, and the
//! Whittaker modules attached to non-degenerate eigenvalue tuples.
//!
//! Everything is computed over exact rationals — there is no floating
//! point anywhere — so every identity this crate checks either holds on
//! the nose or produces an explicit counterexample state.
//!
//! The main layers:
//!
//! - [`rational`], [`monomial`], [`state`]: exact scalars, canonical PBW
//!   monomials, and sparse states of the induced modules, with a
//!   versioned text format.
//! - [`engine`]: the mode calculus — generator modes, general
//!   vertex-operator modes via the iterate formula, normal ordering,
//!   commutators, truncation bounds.
//! - [`virasoro`]: the conformal element, its `L(n)` modes, and the
//!   bracket/vanishing checks built on them.
//! - [`singlet`]: the weight-`(2p-1)` generator, the screening operator,
//!   weight-graded kernels, and the structural relations between the two
//!   generators.
//! - [`whittaker`]: the type map, its two-to-one fiber involution, the
//!   generator spectrum on the cyclic vector, and the triangular
//!   eigenvalue recursion.
//! - [`checks`], [`report`], [`cli`]: the deterministic verification
//!   suites and the command-line driver with exact JSON reports.

pub mod checks;
pub mod cli;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod monomial;
pub mod rational;
pub mod report;
pub mod singlet;
pub mod state;
pub mod virasoro;
pub mod whittaker;

pub use engine::VaElement;
pub use error::{Error, Result};
pub use monomial::PbwMonomial;
pub use rational::Rational;
pub use state::{FockState, WhittakerParams};
