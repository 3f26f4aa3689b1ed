//! Canonical CAT(0) cube complexes: paths, trees, lattice windows,
//! hypercubes and products.

use crate::complex::{ComplexDescription, CubeComplex, VertexId};
use crate::error::BuildError;

/// Default limit on the number of vertices a builder may produce.
pub const DEFAULT_SIZE_CAP: usize = 20_000;

fn param(msg: impl Into<String>) -> BuildError {
    BuildError::InvalidParameter(msg.into())
}

fn check_cap(vertices: usize, cap: usize) -> Result<(), BuildError> {
    if vertices > cap {
        return Err(BuildError::SizeCapExceeded { vertices, cap });
    }
    Ok(())
}

/// Path `0 - 1 - .. - n`.
pub fn build_path(n: usize) -> Result<CubeComplex, BuildError> {
    if n == 0 {
        return Err(param("path length must be at least 1"));
    }
    let mut d = ComplexDescription::new();
    for i in 0..=n {
        d.vertex(i.to_string());
    }
    for i in 0..n {
        d.edge(i.to_string(), (i + 1).to_string());
    }
    CubeComplex::build(&d)
}

/// Tree from a parent list: `parents[i]` is the parent of node `i`, `None`
/// for the root. Nodes are named by their index.
pub fn build_tree(parents: &[Option<usize>]) -> Result<CubeComplex, BuildError> {
    let n = parents.len();
    if n == 0 {
        return Err(BuildError::Empty);
    }
    if let Some(p) = parents.iter().flatten().find(|&&p| p >= n) {
        return Err(param(format!("parent {p} out of range")));
    }
    let roots = parents.iter().filter(|p| p.is_none()).count();
    // Walking up from each node must reach a root within n steps.
    for start in 0..n {
        let mut node = start;
        let mut steps = 0;
        while let Some(p) = parents[node] {
            node = p;
            steps += 1;
            if steps > n {
                return Err(param(format!("cycle through node {start}")));
            }
        }
    }
    if roots != 1 {
        return Err(param(format!("tree is disconnected ({roots} roots)")));
    }
    let mut d = ComplexDescription::new();
    for i in 0..n {
        d.vertex(i.to_string());
    }
    for (i, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            d.edge(p.to_string(), i.to_string());
        }
    }
    CubeComplex::build(&d)
}

/// Complete `arity`-ary tree of the given depth, root `0`, breadth-first numbering.
pub fn balanced_tree_parents(arity: usize, depth: usize) -> Vec<Option<usize>> {
    let mut parents = vec![None];
    let mut level = vec![0];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &p in &level {
            for _ in 0..arity {
                next.push(parents.len());
                parents.push(Some(p));
            }
        }
        level = next;
    }
    parents
}

pub fn build_grid(extents: &[usize]) -> Result<CubeComplex, BuildError> {
    build_grid_capped(extents, DEFAULT_SIZE_CAP)
}

/// Window `[0, e_1] x .. x [0, e_k]` of the integer lattice with every unit
/// square declared. Vertices are named `x_y_z`.
pub fn build_grid_capped(extents: &[usize], cap: usize) -> Result<CubeComplex, BuildError> {
    if extents.is_empty() {
        return Err(param("grid needs at least one extent"));
    }
    let total = extents
        .iter()
        .try_fold(1usize, |acc, &e| acc.checked_mul(e + 1))
        .ok_or_else(|| param("grid size overflows"))?;
    check_cap(total, cap)?;

    let coords = |mut idx: usize| -> Vec<usize> {
        extents
            .iter()
            .map(|&e| {
                let c = idx % (e + 1);
                idx /= e + 1;
                c
            })
            .collect()
    };
    let name = |c: &[usize]| c.iter().map(usize::to_string).collect::<Vec<_>>().join("_");
    let step = |c: &[usize], axis: usize| {
        let mut c = c.to_vec();
        c[axis] += 1;
        c
    };

    let mut d = ComplexDescription::new();
    for idx in 0..total {
        let c = coords(idx);
        d.vertex(name(&c));
        for a in 0..extents.len() {
            if c[a] < extents[a] {
                d.edge(name(&c), name(&step(&c, a)));
                for b in a + 1..extents.len() {
                    if c[b] < extents[b] {
                        let ab = step(&step(&c, a), b);
                        d.square(name(&c), name(&step(&c, a)), name(&ab), name(&step(&c, b)));
                    }
                }
            }
        }
    }
    CubeComplex::build(&d)
}

/// The `n`-cube; vertices are bit strings of length `n`.
pub fn build_hypercube(n: usize) -> Result<CubeComplex, BuildError> {
    if !(1..=10).contains(&n) {
        return Err(param(format!("hypercube dimension {n} outside 1..=10")));
    }
    let name = |m: usize| {
        (0..n)
            .map(|i| if m >> (n - 1 - i) & 1 == 1 { '1' } else { '0' })
            .collect::<String>()
    };
    let mut d = ComplexDescription::new();
    for m in 0..1usize << n {
        d.vertex(name(m));
        for i in 0..n {
            if m & (1 << i) == 0 {
                d.edge(name(m), name(m | 1 << i));
                for j in i + 1..n {
                    if m & (1 << j) == 0 {
                        d.square(
                            name(m),
                            name(m | 1 << i),
                            name(m | 1 << i | 1 << j),
                            name(m | 1 << j),
                        );
                    }
                }
            }
        }
    }
    CubeComplex::build(&d)
}

pub fn build_product(x: &CubeComplex, y: &CubeComplex) -> Result<CubeComplex, BuildError> {
    build_product_capped(x, y, DEFAULT_SIZE_CAP)
}

/// Cartesian product; vertices are named `left|right`.
pub fn build_product_capped(x: &CubeComplex, y: &CubeComplex, cap: usize) -> Result<CubeComplex, BuildError> {
    let total = x
        .vertex_count()
        .checked_mul(y.vertex_count())
        .ok_or_else(|| param("product size overflows"))?;
    check_cap(total, cap)?;
    let pair = |a: &VertexId, b: &VertexId| format!("{a}|{b}");
    let (xn, yn) = (x.names(), y.names());

    let mut d = ComplexDescription::new();
    for a in xn {
        for b in yn {
            d.vertex(pair(a, b));
        }
    }
    for &(u, v) in x.edges() {
        for b in yn {
            d.edge(pair(&xn[u], b), pair(&xn[v], b));
        }
    }
    for a in xn {
        for &(u, v) in y.edges() {
            d.edge(pair(a, &yn[u]), pair(a, &yn[v]));
        }
    }
    for sq in x.squares() {
        for b in yn {
            let [p, q, r, s] = sq.map(|i| pair(&xn[i], b));
            d.square(p, q, r, s);
        }
    }
    for a in xn {
        for sq in y.squares() {
            let [p, q, r, s] = sq.map(|i| pair(a, &yn[i]));
            d.square(p, q, r, s);
        }
    }
    for &(u, v) in x.edges() {
        for &(s, t) in y.edges() {
            d.square(
                pair(&xn[u], &yn[s]),
                pair(&xn[v], &yn[s]),
                pair(&xn[v], &yn[t]),
                pair(&xn[u], &yn[t]),
            );
        }
    }
    CubeComplex::build(&d)
}

/// One-parameter families used by growth scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `build_path(k)`, designated pair: the endpoints.
    Path,
    /// `build_grid(&[k, k])`, designated pair: opposite corners.
    SquareGrid,
    /// `build_hypercube(k)`, designated pair: antipodes.
    Hypercube,
}

/// Which vertex pairs a growth scan maximises over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRule {
    Designated,
    AllPairs,
}

impl Family {
    /// Builds the member for `k` and returns it with its designated pair.
    pub fn instance(self, k: usize) -> Result<(CubeComplex, (VertexId, VertexId)), BuildError> {
        let id = |s: String| VertexId::new(s).expect("builder names are tokens");
        match self {
            Family::Path => Ok((build_path(k)?, (id("0".into()), id(k.to_string())))),
            Family::SquareGrid => {
                if k == 0 {
                    return Err(param("grid family needs k >= 1"));
                }
                Ok((build_grid(&[k, k])?, (id("0_0".into()), id(format!("{k}_{k}")))))
            }
            Family::Hypercube => Ok((build_hypercube(k)?, (id("0".repeat(k)), id("1".repeat(k))))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::cat0_check;
    use crate::hyperplanes::walls;

    #[test]
    fn paths() {
        assert_eq!(build_path(1).unwrap().edges().len(), 1);
        let p = build_path(2).unwrap();
        assert_eq!(p.vertex_count(), 3);
        assert!(build_path(0).is_err());
        let long = build_path(20).unwrap();
        assert_eq!(crate::metrics::edge_distance(&long, "0", "20").unwrap(), 20);
    }

    #[test]
    fn trees() {
        let star = build_tree(&[None, Some(0), Some(0), Some(0)]).unwrap();
        assert_eq!(walls(&star).unwrap().len(), 3);
        let binary = build_tree(&balanced_tree_parents(2, 3)).unwrap();
        assert_eq!(binary.vertex_count(), 15);
        assert!(cat0_check(&binary).passed());
        assert_eq!(walls(&binary).unwrap().len(), 14);
        assert!(build_tree(&[Some(1), Some(0)]).is_err());
        assert!(build_tree(&[None, None]).is_err());
        assert!(build_tree(&[None, Some(5)]).is_err());
    }

    #[test]
    fn grids() {
        let g = build_grid(&[2, 3]).unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(walls(&g).unwrap().len(), 5);
        assert_eq!(g.dimension(), 2);
        let q3 = build_grid(&[1, 1, 1]).unwrap();
        assert_eq!(q3.dimension(), 3);
        assert_eq!(build_grid(&[4]).unwrap().dimension(), 1);
        assert_eq!(build_grid(&[3, 0]).unwrap().dimension(), 1);
        assert!(matches!(
            build_grid_capped(&[10, 10], 100),
            Err(BuildError::SizeCapExceeded {
                vertices: 121,
                cap: 100
            })
        ));
        assert!(build_grid(&[]).is_err());
    }

    #[test]
    fn hypercubes() {
        let q = build_hypercube(3).unwrap();
        assert_eq!(q.vertex_count(), 8);
        assert_eq!(q.dimension(), 3);
        assert!(build_hypercube(0).is_err());
        assert!(build_hypercube(11).is_err());
    }

    #[test]
    fn products() {
        let e = build_path(1).unwrap();
        let sq = build_product(&e, &e).unwrap();
        assert_eq!(sq.vertex_count(), 4);
        assert_eq!(sq.squares().len(), 1);
        assert_eq!(sq.dimension(), 2);

        let q2 = build_hypercube(2).unwrap();
        let q3 = build_product(&q2, &e).unwrap();
        assert_eq!(q3.dimension(), 3);

        let mut d = ComplexDescription::new();
        d.vertex("pt");
        let point = CubeComplex::build(&d).unwrap();
        let same = build_product(&q2, &point).unwrap();
        assert_eq!(same.vertex_count(), 4);
        assert_eq!(same.edges().len(), 4);
        assert_eq!(same.squares().len(), 1);
        assert!(matches!(
            build_product_capped(&q2, &q2, 10),
            Err(BuildError::SizeCapExceeded { .. })
        ));
    }
}
