//! The fourteen per-settlement metric evaluations.
//!
//! Five categorical frequency metrics (light, defense, functional,
//! aesthetic, food), block type count, relation to environment (crafting
//! chains), density, filling ratio, linearity along X and Z, platform size,
//! and the level/settlement conditional entropies.
//!
//! Every metric is a pure function of (grid, changes, box, catalog,
//! recipes); evaluating the same settlement twice yields identical values.

mod entropy;
mod environment;
mod frequency;
mod terrain;

pub use entropy::{conditional_entropy, conditional_entropy_axes, EntropyScope};
pub use environment::relation_to_environment;
pub use frequency::{block_type_count, frequency_metric};
pub use terrain::{
    density, filling_ratio, linearity, platform_decomposition, platform_size, Axis, Platform,
};

use std::fmt;

use thiserror::Error;

use crate::model::{
    BlockCatalog, BlockFlags, BoundingBox, ChangeSet, ModelError, RecipeGraph, SurfaceScan,
    VoxelGrid,
};

/// Metric evaluation failures. Degenerate inputs are errors for the
/// individual operations; [`evaluate_all`] maps them to sentinel values with
/// warnings instead so batch tables stay rectangular.
#[derive(Debug, Error)]
pub enum MetricError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("settlement has no added blocks")]
    EmptySettlement,
    #[error("degenerate input for {0}: {1}")]
    Degenerate(&'static str, &'static str),
    #[error("no countable adjacent pairs for {0} entropy")]
    NoPairs(EntropyScope),
}

/// A generated settlement under analysis: the final grid, the generator's
/// edit log, and the evaluation region.
#[derive(Debug, Clone)]
pub struct Settlement {
    grid: VoxelGrid,
    changes: ChangeSet,
    bbox: BoundingBox,
    generator: String,
    sample: u32,
}

impl Settlement {
    /// The box must lie inside the grid and every edit inside the box.
    pub fn new(
        grid: VoxelGrid,
        changes: ChangeSet,
        bbox: BoundingBox,
        generator: impl Into<String>,
        sample: u32,
    ) -> Result<Self, ModelError> {
        bbox.check_within(&grid)?;
        for edit in changes.edits() {
            if !bbox.contains(edit.pos) {
                return Err(ModelError::EditOutsideBox {
                    x: edit.pos.x,
                    y: edit.pos.y,
                    z: edit.pos.z,
                });
            }
        }
        Ok(Self {
            grid,
            changes,
            bbox,
            generator: generator.into(),
            sample,
        })
    }

    pub fn grid(&self) -> &VoxelGrid {
        &self.grid
    }

    pub fn changes(&self) -> &ChangeSet {
        &self.changes
    }

    pub fn bbox(&self) -> BoundingBox {
        self.bbox
    }

    pub fn generator(&self) -> &str {
        &self.generator
    }

    pub fn sample(&self) -> u32 {
        self.sample
    }
}

/// Identifies one of the fourteen metrics; also the canonical column order
/// of every table the toolkit writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Light,
    Defense,
    Functional,
    Aesthetic,
    Food,
    BlockTypeCount,
    RelationToEnvironment,
    Density,
    FillingRatio,
    LinearityX,
    LinearityZ,
    PlatformSize,
    LevelEntropy,
    SettlementEntropy,
}

impl Metric {
    pub const ALL: [Metric; 14] = [
        Metric::Light,
        Metric::Defense,
        Metric::Functional,
        Metric::Aesthetic,
        Metric::Food,
        Metric::BlockTypeCount,
        Metric::RelationToEnvironment,
        Metric::Density,
        Metric::FillingRatio,
        Metric::LinearityX,
        Metric::LinearityZ,
        Metric::PlatformSize,
        Metric::LevelEntropy,
        Metric::SettlementEntropy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Light => "light",
            Metric::Defense => "defense",
            Metric::Functional => "functional",
            Metric::Aesthetic => "aesthetic",
            Metric::Food => "food",
            Metric::BlockTypeCount => "block_type_count",
            Metric::RelationToEnvironment => "relation_to_environment",
            Metric::Density => "density",
            Metric::FillingRatio => "filling_ratio",
            Metric::LinearityX => "linearity_x",
            Metric::LinearityZ => "linearity_z",
            Metric::PlatformSize => "platform_size",
            Metric::LevelEntropy => "level_entropy",
            Metric::SettlementEntropy => "settlement_entropy",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Metric::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One row of metric values for a settlement sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricVector {
    pub light: f64,
    pub defense: f64,
    pub functional: f64,
    pub aesthetic: f64,
    pub food: f64,
    pub block_type_count: u32,
    pub relation_to_environment: u32,
    pub density: f64,
    pub filling_ratio: f64,
    pub linearity_x: f64,
    pub linearity_z: f64,
    pub platform_size: f64,
    pub level_entropy: f64,
    pub settlement_entropy: f64,
}

impl MetricVector {
    pub fn value(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Light => self.light,
            Metric::Defense => self.defense,
            Metric::Functional => self.functional,
            Metric::Aesthetic => self.aesthetic,
            Metric::Food => self.food,
            Metric::BlockTypeCount => self.block_type_count as f64,
            Metric::RelationToEnvironment => self.relation_to_environment as f64,
            Metric::Density => self.density,
            Metric::FillingRatio => self.filling_ratio,
            Metric::LinearityX => self.linearity_x,
            Metric::LinearityZ => self.linearity_z,
            Metric::PlatformSize => self.platform_size,
            Metric::LevelEntropy => self.level_entropy,
            Metric::SettlementEntropy => self.settlement_entropy,
        }
    }

    pub fn values(&self) -> [f64; 14] {
        Metric::ALL.map(|m| self.value(m))
    }

    /// Inverse of [`values`](Self::values); integer fields are rounded.
    pub fn from_values(values: [f64; 14]) -> Self {
        Self {
            light: values[0],
            defense: values[1],
            functional: values[2],
            aesthetic: values[3],
            food: values[4],
            block_type_count: values[5].round() as u32,
            relation_to_environment: values[6].round() as u32,
            density: values[7],
            filling_ratio: values[8],
            linearity_x: values[9],
            linearity_z: values[10],
            platform_size: values[11],
            level_entropy: values[12],
            settlement_entropy: values[13],
        }
    }
}

/// Degenerate sub-results replaced by sentinels in [`evaluate_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricWarning {
    /// No added blocks; the five frequency metrics were set to 0.
    EmptySettlement,
    /// No surface blocks in the box; platform size was set to 0.
    NoSurfaceBlocks,
    /// Too few surface points (or no spread) to fit a line; set to 0.
    DegenerateLinearity(Axis),
    /// No countable adjacent pairs; the entropy was set to 0.
    NoEntropyPairs(EntropyScope),
}

impl MetricWarning {
    pub fn code(self) -> &'static str {
        match self {
            MetricWarning::EmptySettlement => "empty_settlement",
            MetricWarning::NoSurfaceBlocks => "no_surface_blocks",
            MetricWarning::DegenerateLinearity(Axis::X) => "linearity_x_degenerate",
            MetricWarning::DegenerateLinearity(Axis::Z) => "linearity_z_degenerate",
            MetricWarning::NoEntropyPairs(EntropyScope::Level) => "level_entropy_no_pairs",
            MetricWarning::NoEntropyPairs(EntropyScope::Settlement) => {
                "settlement_entropy_no_pairs"
            }
        }
    }
}

impl fmt::Display for MetricWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Result of a full evaluation: the metric vector, per-axis entropies for
/// verbose output, and any degeneracy warnings.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub vector: MetricVector,
    pub level_entropy_axes: [f64; 3],
    pub settlement_entropy_axes: [f64; 3],
    pub warnings: Vec<MetricWarning>,
}

/// Evaluate all fourteen metrics in one pass over the settlement.
///
/// Degenerate sub-results do not abort the evaluation: the affected field is
/// set to 0 and a warning recorded. Only input-level failures (unknown
/// palette names, invalid box) are errors.
pub fn evaluate_all(
    s: &Settlement,
    catalog: &BlockCatalog,
    recipes: &RecipeGraph,
) -> Result<Evaluation, MetricError> {
    let flags = BlockFlags::bind(s.grid().palette(), catalog)?;
    let mut warnings = Vec::new();

    let change_stats = frequency::scan_changes(s, &flags);
    let freq = if change_stats.added == 0 {
        warnings.push(MetricWarning::EmptySettlement);
        [0.0; 5]
    } else {
        change_stats.ratios()
    };
    let block_type_count = change_stats.distinct_types.len() as u32;
    let relation_to_environment =
        environment::relation_with(s, &flags, catalog, recipes, &change_stats.distinct_types);

    let scan = SurfaceScan::new(s.grid(), &flags);
    let surface = scan.collect(s.bbox());
    let volume = s.bbox().volume() as f64;
    let density = surface.len() as f64 / volume;
    let filling_ratio = terrain::filling_with(s.grid(), &flags, s.bbox());

    let linearity_x = match terrain::linearity_of_surface(&surface, Axis::X) {
        Ok(v) => v,
        Err(_) => {
            warnings.push(MetricWarning::DegenerateLinearity(Axis::X));
            0.0
        }
    };
    let linearity_z = match terrain::linearity_of_surface(&surface, Axis::Z) {
        Ok(v) => v,
        Err(_) => {
            warnings.push(MetricWarning::DegenerateLinearity(Axis::Z));
            0.0
        }
    };

    let platform_size = if surface.is_empty() {
        warnings.push(MetricWarning::NoSurfaceBlocks);
        0.0
    } else {
        let platforms = terrain::platforms_of_surface(&surface, s.bbox());
        surface.len() as f64 / platforms.len() as f64
    };

    let (level_axes, level_entropy) = match entropy::entropy_axes_with(s, &flags, EntropyScope::Level)
    {
        Ok(axes) => (axes, entropy::axis_mean(axes)),
        Err(_) => {
            warnings.push(MetricWarning::NoEntropyPairs(EntropyScope::Level));
            ([0.0; 3], 0.0)
        }
    };
    let (settlement_axes, settlement_entropy) =
        match entropy::entropy_axes_with(s, &flags, EntropyScope::Settlement) {
            Ok(axes) => (axes, entropy::axis_mean(axes)),
            Err(_) => {
                warnings.push(MetricWarning::NoEntropyPairs(EntropyScope::Settlement));
                ([0.0; 3], 0.0)
            }
        };

    Ok(Evaluation {
        vector: MetricVector {
            light: freq[0],
            defense: freq[1],
            functional: freq[2],
            aesthetic: freq[3],
            food: freq[4],
            block_type_count,
            relation_to_environment,
            density,
            filling_ratio,
            linearity_x,
            linearity_z,
            platform_size,
            level_entropy,
            settlement_entropy,
        },
        level_entropy_axes: level_axes,
        settlement_entropy_axes: settlement_axes,
        warnings,
    })
}
