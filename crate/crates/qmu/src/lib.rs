//! Verified numerics for q-series built around the Ramanujan q-difference
//! equation: q-shifted factorials, Jacobi theta functions, unilateral and
//! bilateral basic hypergeometric series, q-Borel/q-Laplace summation, the
//! generalized and little mu-functions, q,t-Fibonacci sequences, the
//! Rogers-Ramanujan continued fraction, and Laplace-type q-difference
//! operators, together with a seeded identity suite that numerically
//! certifies the relations tying all of these together.
//!
//! Everything works in binary64 with |q| < 1 (the certified suite keeps
//! q real and <= 0.35). All evaluators are pure functions; values are freely
//! shareable across threads.
//!
//! Entry points:
//! - [`numerics`]: [`numerics::Modulus`], [`numerics::SummationPolicy`], the
//!   summation/product kernels.
//! - [`qcore`]: q-Pochhammer symbols, theta, q-binomials, Dedekind eta.
//! - [`hyper`]: generic `phi`/`psi` series and the named special series.
//! - [`formal`]: formal power series, q-Borel and q-Laplace transformations.
//! - [`mu`]: the little and generalized mu-functions, M_n, connection and
//!   Wronskian identities.
//! - [`fib`]: q,t-Fibonacci sequences by recursion and closed form.
//! - [`rr`]: Rogers-Ramanujan series, products, continued fraction.
//! - [`qde`]: Laplace-type q-difference operators and their solution catalog.
//! - [`suite`]: the identity registry behind `qmu suite` and the acceptance
//!   tests.

pub mod cli;
pub mod error;
pub mod fib;
pub mod formal;
pub mod hyper;
pub mod mu;
pub mod numerics;
pub mod qcore;
pub mod qde;
pub mod rr;
pub mod suite;

pub use error::{Direction, QError, Result};
pub use numerics::{CVal, Modulus, SummationPolicy, C64};
