//! Generalized combings, relative Cayley-graph geometry and certified
//! operator-norm bounds for elements of group algebras of free groups,
//! free products of cyclic groups and their direct products.

pub mod algebra;
pub mod combing;
pub mod group;
pub mod relative;
pub mod spectral;

pub use algebra::{AlgebraElement, AlgebraError, GroupAlgebra, Scalar, ScalarMode};
pub use combing::{
    audit_combing, AuditConfig, AuditReport, CertifiedGrowth, Combing, CombingError,
    DroppedEndpointCombing, GeodesicCombing, NeighbourhoodCombing, NeighbourhoodOptions,
    ProductCombing,
};
pub use group::{
    CyclicFactor, GroupDescription, GroupElement, GroupError, Order, Pseudolength, WordLength,
};
pub use relative::{GeneratingAlphabet, GeometryError, RelativeDistance};
pub use spectral::{spectral_report, SpectralError, SpectralOptions, SpectralReport};
