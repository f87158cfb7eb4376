//! Spectral radii of r-uniform hypergraphs and the edge-count bound `f_r`.
//!
//! The crate computes `ρ(H)` through power iteration on the adjacency
//! tensor, evaluates the analytic bound `f_r(e)` that `ρ(H)` never exceeds,
//! builds and checks α-normal / α-subnormal weighted incidence labelings
//! that certify such bounds, and searches small hypergraph families for
//! spectral maximizers.

pub mod analytic;
pub mod error;
pub mod hypergraph;
pub mod labeling;
pub mod search;
pub mod spectral;

pub use analytic::{f_r, fr_value, lovasz_shadow_bound, p_r, p_r_inverse, FrEvaluation};
pub use error::{Error, Result};
pub use hypergraph::{binomial, Component, Edge, Hypergraph};
pub use labeling::{LabelingReport, Verdict, WeightedIncidence};
pub use search::{BoundCertificate, EqualityClass, SearchSpace};
pub use spectral::{spectral_radius, SolverOptions, SpectralSolution};
