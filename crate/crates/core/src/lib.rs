//! Arithmetic matroids of elliptic arrangements.
//!
//! An elliptic curve `E = C / <1, tau>` with complex multiplication has endomorphism ring
//! `R = <1, N tau>`, an order in an imaginary quadratic field. A `k x n` matrix over `R`
//! defines `k` divisors in `E^n`; counting the connected components of their intersections
//! gives an arithmetic matroid. This crate computes that matroid exactly (ranks,
//! multiplicities, torsion structure), verifies the arithmetic-matroid axioms, builds duals
//! and minors, checks the GCD property, and evaluates the arithmetic Tutte polynomial, the
//! characteristic polynomial and the Euler characteristic of the complement.
//!
//! ```
//! use ellarr::{ArithmeticMatroid, CurveParams, EllipticArrangement, FieldParams, RingMatrix};
//!
//! // tau = sqrt(-3) = (-1 + 2 omega) / 1 with omega = (1 + sqrt(-3)) / 2
//! let curve = CurveParams::new(FieldParams::new(3)?, -1, 2, 1)?;
//! let a = RingMatrix::from_coords(curve, &[vec![(2, 0)], vec![(1, 1)]], 1)?;
//! let arr = EllipticArrangement::new(a)?;
//! let matroid = ArithmeticMatroid::from_arrangement(&arr)?;
//! assert_eq!(matroid.tutte().to_string(), "x + 2y + 5");
//! assert!(!matroid.gcd_property().holds);
//! # Ok::<(), ellarr::Error>(())
//! ```

pub mod arrangement;
pub mod error;
pub mod file_format;
mod json;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod quadratic_order;
pub mod random;
pub mod report;
pub mod subset;

pub use arrangement::{EllipticArrangement, SubsetReport};
pub use error::{Error, Result};
pub use linalg::{smith_form, torsion_order, IntMatrix, RingMatrix, SmithForm};
pub use matroid::{ArithmeticMatroid, AxiomReport, GcdCheck, Molecule, PositivityReport};
pub use poly::{BiPoly, Poly};
pub use quadratic_order::{CurveParams, FieldParams, IntQuadratic, OmegaCase, RingElement};
pub use subset::Subset;
