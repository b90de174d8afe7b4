//! Fixed-point combinatorics and the localization series engine: compass
//! assembly from component weight tables, weight-hull vertices, equivariant
//! Euler characteristics as truncated Laurent series, and the wall
//! computation for the movable cone.

mod compass;
mod series;
mod walls;

pub use compass::{
    assemble_compass, fixed_point_data, tail_hull_vertices, vertex_semigroup_generators,
    CompassError, ComponentGeometry, ComponentTables, FixedPointDatum,
};
pub use series::{
    double_generating_series, hilbert_weight_table, lrr_character_series, LaurentSeries,
    SeriesError,
};
pub use walls::movable_walls;
