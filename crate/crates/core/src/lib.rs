//! Dimension analysis of non-uniform degree spline spaces on planar T-meshes.
//!
//! The crate builds validated T-meshes over exact rationals, decomposes a
//! degree-deficit distribution into nested active meshes, and assembles the
//! Euler characteristic together with lower/upper dimension bounds and a
//! stability certificate. An exact rank oracle computes the true dimension for
//! any concrete geometry.

pub mod active;
pub mod bidegree;
pub mod bounds;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod io;
pub mod linalg;
pub mod mesh;
pub mod oracle;
pub mod profile;
pub mod rational;
pub mod segments;
pub mod smoothness;

pub use active::{active_mesh, check_assumptions, relative_betti, ActiveLevel, AssumptionReport};
pub use bidegree::{Bidegree, Shift};
pub use bounds::{
    bounds, certify_stable, configuration1_holds, constant_complex_dims, euler_characteristic, level_orientations,
    Analysis, DimReport, LevelRow, SegmentWeight,
};
pub use error::{Error, Result};
pub use graded::{
    dim_edge_increment, dim_l, dim_m, dim_power_sum, dim_power_sum_in, dim_shift, dim_vertex_increment, Direction,
    LevelSel, PowerGen,
};
pub use mesh::{build_tmesh, Edge, Orientation, Point, Rect, TMesh, Vertex, VertexClass};
pub use oracle::{oracle_spline_dim, span_dim, Poly};
pub use profile::{build_profile, LeveledProfile};
pub use rational::Rational;
pub use segments::{
    contribution_sets, dim_d_contribution, h0_ideal_upper, maximal_segments, order_segments, segment_weight,
    ContributionSets, LevelContext, MaxSegment, OrderingStrategy, SegmentOrdering, SegmentSets,
};
pub use smoothness::{build_smoothness, Override, SmoothnessProfile};
