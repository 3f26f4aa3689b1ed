#![allow(dead_code)]

use cubecat_core::{
    balanced_tree_parents, build_grid, build_hypercube, build_path, build_product, build_tree,
    ComplexDescription, CubeComplex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub name: String,
    pub complex: CubeComplex,
}

fn inst(name: impl Into<String>, complex: CubeComplex) -> Instance {
    Instance {
        name: name.into(),
        complex,
    }
}

pub fn random_tree(n: usize, seed: u64) -> CubeComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parents: Vec<Option<usize>> = (0..n)
        .map(|i| if i == 0 { None } else { Some(rng.gen_range(0..i)) })
        .collect();
    build_tree(&parents).unwrap()
}

pub fn star(leaves: usize) -> CubeComplex {
    let parents: Vec<Option<usize>> = (0..=leaves)
        .map(|i| if i == 0 { None } else { Some(0) })
        .collect();
    build_tree(&parents).unwrap()
}

/// Paths up to 20, trees up to 50 vertices, grids up to 4x4x3, cubes up to
/// dimension 6 and two products.
pub fn builder_suite() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=20 {
        out.push(inst(format!("path({n})"), build_path(n).unwrap()));
    }
    out.push(inst("star(10)", star(10)));
    out.push(inst(
        "binary-tree(3)",
        build_tree(&balanced_tree_parents(2, 3)).unwrap(),
    ));
    out.push(inst(
        "ternary-tree(3)",
        build_tree(&balanced_tree_parents(3, 3)).unwrap(),
    ));
    out.push(inst("random-tree(50,1)", random_tree(50, 1)));
    out.push(inst("random-tree(50,2)", random_tree(50, 2)));
    for dims in [
        vec![4],
        vec![2, 3],
        vec![3, 3],
        vec![4, 4],
        vec![2, 2, 2],
        vec![4, 4, 3],
    ] {
        out.push(inst(format!("grid{dims:?}"), build_grid(&dims).unwrap()));
    }
    for n in 1..=6 {
        out.push(inst(format!("Q{n}"), build_hypercube(n).unwrap()));
    }
    let binary = build_tree(&balanced_tree_parents(2, 2)).unwrap();
    out.push(inst(
        "binary-tree(2) x path(3)",
        build_product(&binary, &build_path(3).unwrap()).unwrap(),
    ));
    out.push(inst(
        "star(3) x Q2",
        build_product(&star(3), &build_hypercube(2).unwrap()).unwrap(),
    ));
    out
}

/// A smaller suite for exhaustive all-triples checks in debug builds.
pub fn small_suite() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in [1, 2, 5] {
        out.push(inst(format!("path({n})"), build_path(n).unwrap()));
    }
    out.push(inst("star(4)", star(4)));
    out.push(inst("random-tree(12,3)", random_tree(12, 3)));
    for dims in [vec![2, 3], vec![3, 3], vec![2, 2, 1]] {
        out.push(inst(format!("grid{dims:?}"), build_grid(&dims).unwrap()));
    }
    for n in 1..=4 {
        out.push(inst(format!("Q{n}"), build_hypercube(n).unwrap()));
    }
    out.push(inst(
        "star(3) x path(2)",
        build_product(&star(3), &build_path(2).unwrap()).unwrap(),
    ));
    out
}

pub fn cycle(n: usize) -> CubeComplex {
    let mut d = ComplexDescription::new();
    for i in 0..n {
        d.vertex(format!("c{i}"))
            .edge(format!("c{i}"), format!("c{}", (i + 1) % n));
    }
    CubeComplex::build(&d).unwrap()
}

/// Two squares `v-a-c-b` and `v-a-cc-b` on the same pair of edges at `v`.
pub fn bigon_pair() -> CubeComplex {
    let mut d = ComplexDescription::new();
    for v in ["v", "a", "b", "c", "cc"] {
        d.vertex(v);
    }
    d.edge("v", "a")
        .edge("v", "b")
        .edge("a", "c")
        .edge("c", "b")
        .edge("a", "cc")
        .edge("cc", "b");
    d.square("v", "a", "c", "b").square("v", "a", "cc", "b");
    CubeComplex::build(&d).unwrap()
}

/// Three squares around `v` with no eighth vertex to close the cube.
pub fn cube_corner() -> CubeComplex {
    let mut d = ComplexDescription::new();
    for v in ["v", "a", "b", "c", "ab", "bc", "ac"] {
        d.vertex(v);
    }
    for (x, y) in [
        ("v", "a"),
        ("v", "b"),
        ("v", "c"),
        ("a", "ab"),
        ("b", "ab"),
        ("b", "bc"),
        ("c", "bc"),
        ("a", "ac"),
        ("c", "ac"),
    ] {
        d.edge(x, y);
    }
    d.square("v", "a", "ab", "b")
        .square("v", "b", "bc", "c")
        .square("v", "a", "ac", "c");
    CubeComplex::build(&d).unwrap()
}

/// All ordered index pairs.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (0..n).map(move |v| (u, v)))
}
