//! Exact calculator for multiplier ideals of complex hyperplane arrangements.
//!
//! Everything is computed over the rationals with arbitrary-precision
//! arithmetic; there is no floating point anywhere in the pipeline.  The
//! crate is organized bottom-up:
//!
//! - [`ratio`]: the scalar type (`BigRational` re-exported as [`Rat`]) with
//!   strict `p/q` parsing and formatting;
//! - [`linalg`]: row-reduced echelon forms, canonical [`linalg::Subspace`]
//!   representations of linear subspaces by their defining forms, and the
//!   adapted coordinate changes used everywhere else;
//! - [`poly`]: sparse multivariate polynomials over the rationals together
//!   with the monomial orders (graded reverse-lex, lex, block elimination);
//! - [`ideal`]: a Buchberger-based ideal engine — Gröbner bases, normal
//!   forms, powers, products, intersections via an auxiliary elimination
//!   variable, membership, vanishing orders along subspaces, and an
//!   independent degree-by-degree linear-algebra intersection oracle;
//! - [`arrangement`]: arrangement input (numeric and symbolic file formats),
//!   built-in families, localization at a point, and essentialization;
//! - [`lattice`]: the intersection lattice of a central arrangement;
//! - [`multiplier`]: multiplier ideals, left limits, log canonical
//!   thresholds, jumping numbers (three independent detection methods), the
//!   set-theoretic variant, the generic closed-form oracle, and the
//!   codimension-three jumping criteria;
//! - [`verify`]: seeded oracle suites cross-checking independent routes to
//!   the same answers.

pub mod arrangement;
pub mod config;
pub mod error;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod multiplier;
pub mod poly;
pub mod ratio;
pub mod verify;

pub use config::EngineConfig;
pub use error::Error;
pub use ratio::Rat;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
