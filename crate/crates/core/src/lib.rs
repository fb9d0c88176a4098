//! Exact irreducibility test for quasi-ordinary Weierstrass polynomials.
//!
//! A monic polynomial `f(Y)` over a power-series ring in `X1..Xd` is tested by
//! computing the discriminant of `f(Y) - V`, its Newton polytope, the chain of
//! elementary summands of that polytope and a sequence of lattice indices.
//! The same crate builds Kuo-Lu tree models from explicit roots, generates
//! irreducible instances from characteristic exponents and computes the Fitting
//! discriminant of Y-regular power series at finite precision.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --example irreducibility_test
//! cargo run --example discriminant
//! cargo run --example newton_polytope
//! cargo run --example lattice_indices
//! cargo run --example kuo_lu_tree
//! cargo run --example generate_irreducible
//! cargo run --example fitting_discriminant
//! cargo run --example cross_validation
//! ```
//!
//! ```
//! use quasiord::{irreducibility::test_polynomial, poly::parse_weierstrass};
//!
//! let f = parse_weierstrass("Y^2 - X^3", Some(1)).unwrap();
//! let report = test_polynomial(&f).unwrap();
//! assert!(report.is_irreducible());
//! assert_eq!(report.char_exponents.unwrap()[0].to_string(), "3/2");
//! ```

pub mod cli;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod irreducibility;
pub mod lattice;
pub mod poly;
pub mod series;
pub mod tree;

pub use error::{Error, Result};
pub use exact::{Comparison, ExpVec, Height, Rat};
