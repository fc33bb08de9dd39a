//! Exact Darboux integration of polynomial differential 1-forms over `Q` and `F_p`.
//!
//! The crate is layered bottom-up:
//!
//! - [`algebra`]: exact scalars, sparse multivariate polynomials, rational functions.
//! - [`exterior`]: differential forms, vector fields and the tensor operators `S`, `A`.
//! - [`dconst`]: the field of differential constants `K(z^p)` and dimension counts.
//! - [`linalg`]: fraction-free kernels over `K[y]`.
//! - [`darboux`]: invariance, cofactors, logarithmic forms and certified first integrals.
//! - [`residue`]: univariate Laurent series and logarithmic residues.
//! - [`search`]: exhaustive invariant-hypersurface search over small prime fields.
//! - [`parse`]: the expression grammar used by the command-line front end.

pub mod algebra;
pub mod darboux;
pub mod dconst;
pub mod exterior;
pub mod linalg;
pub mod parse;
pub mod residue;
pub mod sample;
pub mod search;

pub use algebra::{FieldSpec, MultiPoly, RatFunc, Scalar};
pub use exterior::{DiffForm, PolyForm, RatForm, VectorField};
