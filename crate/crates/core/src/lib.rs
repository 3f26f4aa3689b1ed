//! Finite CAT(0) cube complexes.
//!
//! * [`complex`]: the combinatorial representation and flag-completion of cubes.
//! * [`curvature`]: vertex links, the no-bigon / no-triangle conditions, medians
//!   and the CAT(0) test.
//! * [`hyperplanes`]: walls and their half-spaces.
//! * [`metrics`]: the edge metric by search and by wall counting, and an upper
//!   approximation of the CAT(0) metric.
//! * [`kernel`]: conditionally negative kernels and the half-space identity.
//! * [`actions`]: finite cellular group actions, invariant kernels and fixed cubes.
//! * [`builders`] and [`format`]: example complexes and the text formats.

pub mod actions;
pub mod builders;
pub mod complex;
pub mod curvature;
pub mod error;
pub mod format;
pub mod hyperplanes;
pub mod kernel;
pub mod metrics;

pub use actions::{
    close_group, convex_hull, fixed_cube, invariant_kernel, orbit, validate_automorphism, Automorphism,
    FixedCubeResult, GroupAction, InvariantKernel, DEFAULT_CLOSURE_CAP,
};
pub use builders::{
    balanced_tree_parents, build_grid, build_grid_capped, build_hypercube, build_path, build_product,
    build_product_capped, build_tree, Family, PairRule, DEFAULT_SIZE_CAP,
};
pub use complex::{ComplexDescription, Cube, CubeComplex, VertexId};
pub use curvature::{
    cat0_check, link, median, npc_check, require_cat0, CurvatureReport, LinkEdge, LinkGraph, Verdict,
    Violation, ViolationKind,
};
pub use error::{BuildError, Decl, Error, Result};
pub use format::{
    parse_action, parse_complex, serialize_action, serialize_complex, ParseError, ParseErrorKind,
};
pub use hyperplanes::{chi, half_spaces, separating_walls, walls, HalfSpace, Side, Wall};
pub use kernel::{
    cnd_check, distance_kernel, kernel_growth_scan, quadratic_form, random_weights, seeded_probes,
    wall_identity_check, Counterexample, KernelMatrix, KernelProbe, KernelStatus, KernelValue, KernelVerdict,
    WallIdentity,
};
pub use metrics::{
    cat0_distance_upper, edge_distance, metric_comparison, wall_distance, MetricReport, TOLERANCE,
};
