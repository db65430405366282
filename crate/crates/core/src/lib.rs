//! Exact Chevalley–Eilenberg cohomology of finite-dimensional Lie algebras
//! over the rationals, with tools for subalgebra pairs and one-parameter
//! deformation families.
//!
//! ```
//! use liecoh::catalog::heisenberg;
//! use liecoh::complex::betti;
//!
//! let h3 = heisenberg(1).unwrap();
//! assert_eq!(betti(&h3), vec![1, 2, 2, 1]);
//! ```

pub mod catalog;
pub mod complex;
pub mod deform;
pub mod error;
pub mod format;
pub mod lie;
pub mod linalg;
pub mod pair;
pub mod poly;
pub mod rep;
pub mod report;

pub use error::{Error, Result};
pub use lie::LieAlgebra;
pub use linalg::{Matrix, Rational, Subspace};
pub use poly::Poly;
pub use rep::{Coefficients, Representation};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/lie-algebras.md")]
    mod lie_algebras {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/pairs.md")]
    mod pairs {}
    #[doc = include_str!("../../../book/src/deformations.md")]
    mod deformations {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/file-format.md")]
    mod file_format {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
