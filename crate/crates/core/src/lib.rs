//! Maps on surfaces, Jucys–Murphy coverings, and Plancherel/GUE edge statistics.
//!
//! Exact enumerations (polygon gluings, ribbon graphs, transposition words)
//! live next to the floating-point side (Airy kernel quadrature, GUE and
//! Plancherel sampling) so that each can serve as an oracle for the other.

pub mod coverings;
pub mod error;
pub mod maps;
pub mod partitions;
pub mod ribbon;
pub mod rng;
pub mod series;
pub mod spectral;
pub mod symgroup;

pub use coverings::{CoveringCensus, CoveringSolution};
pub use error::{Error, ImageViolation, Result};
pub use maps::{GluingCensus, PolygonGluing};
pub use partitions::{jm_trace_via_partitions, plancherel_mass, CornerRates, Partition};
pub use ribbon::{BoundaryMetric, Contraction, RibbonGraph};
pub use spectral::{EdgeSample, EdgeSource, GueModel, QuadratureSpec};
pub use symgroup::{compose, jm_trace_direct, verify_solution, ExponentVector, Permutation};
