//! Benchmark inputs shared by the criterion benches.

use cubecat_core::{
    balanced_tree_parents, build_grid, build_hypercube, build_product, build_tree, CubeComplex,
};

/// Named complexes of roughly a hundred vertices.
pub fn fixtures() -> Vec<(&'static str, CubeComplex)> {
    let tree = build_tree(&balanced_tree_parents(2, 3)).unwrap();
    vec![
        ("grid-4x4x4", build_grid(&[4, 4, 4]).unwrap()),
        ("Q6", build_hypercube(6).unwrap()),
        (
            "tree(2,3)xQ3",
            build_product(&tree, &build_hypercube(3).unwrap()).unwrap(),
        ),
    ]
}
