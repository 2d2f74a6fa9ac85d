//! Book chapters compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/quaternions.md")]
pub mod quaternions {}
#[doc = include_str!("../../../book/src/complexes.md")]
pub mod complexes {}
#[doc = include_str!("../../../book/src/arithmetic.md")]
pub mod arithmetic {}
#[doc = include_str!("../../../book/src/local-systems.md")]
pub mod local_systems {}
#[doc = include_str!("../../../book/src/harmonic.md")]
pub mod harmonic {}
#[doc = include_str!("../../../book/src/spectra.md")]
pub mod spectra {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
