//! Block-level metrics and statistics for procedurally generated voxel
//! settlements.
//!
//! The crate is organized in four layers:
//!
//! - [`model`] — immutable grids, palettes, block catalogs, changesets and
//!   the surface-block primitive shared by the spatial metrics.
//! - [`io`] — text formats for grid snapshots, changesets, catalogs, recipe
//!   graphs, judge scores, metric samples and reports. Parsers report the
//!   byte offset or line of every fault.
//! - [`metrics`] — the per-settlement metric evaluations (categorical
//!   frequencies, block variety, crafting relation to environment, density,
//!   filling ratio, linearity, platform size, conditional entropies).
//! - [`stats`] — per-generator aggregation, information gain of metrics,
//!   Spearman rank correlation with permutation p-values, and correlation
//!   tables against human judge scores.
//!
//! Everything is deterministic: identical inputs produce identical outputs,
//! including the Monte-Carlo permutation p-values (fixed seeds).

pub mod defaults;
pub mod io;
pub mod metrics;
pub mod model;
pub mod stats;
