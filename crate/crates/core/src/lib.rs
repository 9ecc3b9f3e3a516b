//! Minimal projective resolutions over finite-dimensional quiver algebras,
//! eventual periodicity of bimodule syzygies, and Tate-Hochschild cohomology
//! of Gorenstein algebras through periodic complete resolutions.
//!
//! ```
//! use tate_syzygy::{algebra::BasisAlgebra, bundled, cohomology, module::shared, Rationals};
//!
//! let p = bundled::presentation("kx2", None).unwrap();
//! let a = shared(BasisAlgebra::from_presentation(&p, &Rationals, 30).unwrap());
//! let hh = cohomology::hh_dims(&a, 3, Default::default()).unwrap();
//! assert_eq!(hh, vec![2, 1, 1, 1]);
//! ```

pub mod algebra;
pub mod bardzell;
pub mod bundled;
pub mod cohomology;
pub mod complete;
pub mod error;
pub mod exec;
pub mod field;
pub mod linalg;
pub mod module;
pub mod presentation;
pub mod random;
pub mod resolution;
pub mod tensor_check;

pub use algebra::{AlgebraRef, BasisAlgebra};
pub use error::{Error, Result};
pub use exec::Exec;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use linalg::Matrix;
pub use module::{FdModule, ProjModule};
pub use presentation::{parse_presentation, Presentation};
pub use resolution::{minimal_resolution, PeriodicityCertificate, Resolution, SearchOptions};
