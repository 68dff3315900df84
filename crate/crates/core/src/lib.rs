//! Exact computations on 2-coloured complete graphs: balanced red-clique
//! colourings, colour classes of pattern graphs, colour-exact embedding, and
//! per-order tonal thresholds by exhaustive search.

mod bits;
pub mod canonical;
pub mod catalogue;
pub mod embed;
pub mod error;
pub mod extremal;
pub mod format;
pub mod graph;
pub mod patterns;
pub mod report;
pub mod verify;

pub use canonical::{canonical_colouring, canonical_sizes, verify_obstructions, CanonicalSize, ObstructionReport};
pub use embed::{
    class_coverage, find_embedding, greedy_star_forest_embed, tone_coverage, CoverageLevel, CoverageReport, Embedding,
};
pub use error::{Error, Result};
pub use extremal::{ot_exact, ot_star_formula, tot_exact, tot_star_forest_bound, ExtremalResult, SearchOptions};
pub use graph::{Colour, ColouredHost, Graph, PatternColouring, Tone};
pub use patterns::{
    automorphisms, enumerate_pattern_classes, is_star_forest, patterns_equivalent, witness_pattern, PatternClass,
    VertexPermutation,
};
