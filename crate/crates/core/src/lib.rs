//! Exact-arithmetic toolkit for mesh algebras of stable translation
//! quivers: structure constants, bimodule syzygies and twist data, Galois
//! coverings via smash products, closed-form Calabi-Yau/period oracles, and
//! the orbit-category sign calculus that cross-validates them.
//!
//! ```
//! use mesharc_core::algebra::mesh_algebra;
//! use mesharc_core::field::Rationals;
//! use mesharc_core::quiver::{build_dynkin, build_quotient_quiver, DynkinFamily,
//!                            QuotientSpec, RhoKind};
//!
//! // the doubled 2-chain: a 4-dimensional self-injective algebra
//! let a2 = build_dynkin(DynkinFamily::A, 2).unwrap();
//! let spec = QuotientSpec::new(a2, 1, RhoKind::None).unwrap();
//! let quiver = build_quotient_quiver(&spec).unwrap();
//! let alg = mesh_algebra(&quiver, Rationals, 3).unwrap();
//! assert_eq!(alg.dim(), 4);
//! assert_eq!(alg.loewy_length(), 2);
//! ```

pub mod algebra;
pub mod bimodule;
pub mod covering;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod orbit;
pub mod quiver;
pub mod report;
pub mod resolution;

pub use error::MeshError;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use quiver::{
    build_dynkin, build_quotient_quiver, generalized_preprojective_quiver, parse_quiver_spec,
    DynkinDatum, DynkinFamily, QuotientSpec, RhoKind, TranslationQuiver,
};
