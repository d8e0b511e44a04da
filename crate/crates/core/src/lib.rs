//! Sumsets, additive dimension and volume of small sets of integers, with
//! exhaustive searches for extremal sets of given cardinality and doubling.

pub mod conjecture;
pub mod dimension;
pub mod error;
pub mod grid;
pub mod hull;
pub mod intset;
pub mod lattice;
pub mod model;
pub mod rank;
pub mod report;
pub mod search;
pub mod segments;

pub use conjecture::{
    conjectured_vol, gen_as, params_from, segment_doubling_bound, segment_vol_bound, t_bounds,
    t_from_params, DoublingParams, Family,
};
pub use dimension::{dim_konyagin_lev, dim_segments, RelationMatrix, SegmentRelationMatrix};
pub use error::{Error, Result};
pub use grid::{AdditiveSet, AnySet, GridSet, Point};
pub use hull::hull_lattice_count;
pub use intset::{doubling, sumset, IntSet};
pub use model::{embed_full_dim, f2_isomorphic, volume, Certificate, VolumeResult};
pub use rank::{rank_exact, IntMatrix};
pub use segments::{decompose_segments, segment_sum_intervals, SegmentDecomposition};
