//! Arithmetic cube complexes, metrized local systems on them, and numerical
//! certification of the Ramanujan property.
//!
//! The modules build on each other:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`quat`] | integer quaternions, generators, finite matrix groups mod `N1` |
//! | [`complex`] | regular cubical complexes, axioms, parities, link graphs |
//! | [`arith`] | the complexes `X(N)` from quaternion generators |
//! | [`girth`] | shortest non-contractible cycles via the universal cover |
//! | [`locsys`] | unitary local systems and the symmetric-power systems |
//! | [`harmonic`] | boundary operators, Laplacians, star spectra, cohomology |
//! | [`pipeline`] | configuration, runs and reports |
//!
//! # Quick start
//!
//! ```
//! use ramanujan_cubes::arith::{build_complex, ArithComplexConfig};
//! use ramanujan_cubes::harmonic::{classify_ramanujan, star_spectrum};
//! use ramanujan_cubes::locsys::LocalSystem;
//!
//! let x = build_complex(&ArithComplexConfig::new(vec![5], 7)).unwrap();
//! let l = LocalSystem::trivial(&x.complex, 1);
//! let eigs = star_spectrum(&x.complex, &l, 0, 0).unwrap();
//! let verdict = classify_ramanujan(&eigs, 6, 1e-8);
//! assert!(verdict.ramanujan);
//! ```

pub mod arith;
pub mod complex;
pub mod error;
pub mod export;
pub mod girth;
pub mod harmonic;
pub mod linalg;
pub mod locsys;
pub mod pipeline;
pub mod quat;

pub use error::{Error, Result};
