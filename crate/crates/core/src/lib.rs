//! Rigid linkages, forcing processes and the spectral bounds they control.

pub mod budget;
pub mod graph;
pub mod linkage;
pub mod forcing;
pub mod structure;
pub mod spectral;
pub mod families;
pub mod catalog;
