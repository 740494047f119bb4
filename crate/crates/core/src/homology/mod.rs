//! Chain complexes and the homology pipelines: Borel-Moore, Čech, derived
//! colimits via projective resolutions, and barycentric subdivision.

mod bm;
mod cech;
mod chain;
mod crosscheck;
mod delta;
mod resolution;

pub use bm::{bm_complex, bm_homology};
pub use cech::{cech_complex, cech_homology_checked, vertex_cover_cech, CechOutcome};
pub use chain::{complex_counters, homology, ChainComplex, ComplexCounters, HomologyReport, Pipeline};
pub use crosscheck::{crosscheck, Mismatch, Verdict};
pub use delta::{delta_cosheaf, subdivision_homology};
pub use resolution::{derived_complex, derived_homology, derived_homology_with, projective_resolution, Resolution, ResolutionOptions, Stage};
