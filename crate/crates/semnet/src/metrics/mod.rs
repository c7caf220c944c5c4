//! Structural analytics over induced graphs: degrees, power-law fitting,
//! components, clustering, cores, and shortest paths.

pub mod components;
pub mod cores;
pub mod degrees;
pub mod clustering;
pub mod paths;
pub mod powerlaw;

pub use components::{strong_components, weak_components, ComponentLabels};
pub use cores::{coreness, CoreFiltration, CoreLevel};
pub use degrees::{average_degree, degree_stats, DegreeStats, GraphForm};
pub use clustering::{clustering_avg, transitivity_global, ZeroDegreeMode};
pub use paths::{
    average_path_length, longest_geodesic, path_length_histogram, Geodesic, PathLengthHistogram,
};
pub use powerlaw::{powerlaw_fit, sample_discrete_power_law, Moments, PowerLawFit};
