//! Walls (hyperplanes) and their half-spaces.
//!
//! A wall is a class of edges under the closure of "opposite sides of a
//! declared square". Deleting a wall's edges from a CAT(0) complex leaves
//! exactly two components, the half-spaces.

use std::collections::VecDeque;
use std::fmt;

use crate::complex::{CubeComplex, VertexId};
use crate::curvature::require_cat0;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub id: usize,
    /// Edges `(u, v)` with `u < v` in token order, sorted.
    pub edges: Vec<(VertexId, VertexId)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub wall: usize,
    pub side: Side,
    /// Member vertices in token order.
    pub members: Vec<VertexId>,
}

impl HalfSpace {
    pub fn contains(&self, v: &str) -> bool {
        self.members.binary_search_by(|m| m.as_str().cmp(v)).is_ok()
    }
}

/// Walls of a complex with their edge classes and the plus-side indicator.
#[derive(Debug, Clone)]
pub(crate) struct WallSystem {
    classes: Vec<Vec<usize>>,
    plus: Vec<Vec<bool>>,
}

impl WallSystem {
    fn develop(complex: &CubeComplex) -> Result<Self> {
        let edges = complex.edges();
        let mut dsu = DisjointSets::new(edges.len());
        for sq in complex.squares() {
            let e = |i: usize, j: usize| complex.edge_index(sq[i], sq[j]).expect("square side");
            dsu.union(e(0, 1), e(3, 2));
            dsu.union(e(1, 2), e(0, 3));
        }

        // Edges are visited in sorted order, so classes come out ordered by least edge.
        let mut root_to_wall = vec![usize::MAX; edges.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut edge_wall = vec![0; edges.len()];
        for (e, wall) in edge_wall.iter_mut().enumerate() {
            let r = dsu.find(e);
            if root_to_wall[r] == usize::MAX {
                root_to_wall[r] = classes.len();
                classes.push(Vec::new());
            }
            *wall = root_to_wall[r];
            classes[root_to_wall[r]].push(e);
        }

        let n = complex.vertex_count();
        let mut plus = Vec::with_capacity(classes.len());
        for (id, class) in classes.iter().enumerate() {
            let (seed, _) = edges[class[0]];
            let mut label = vec![usize::MAX; n];
            let mut components = 0;
            for start in std::iter::once(seed).chain(0..n) {
                if label[start] != usize::MAX {
                    continue;
                }
                label[start] = components;
                let mut queue = VecDeque::from([start]);
                while let Some(u) = queue.pop_front() {
                    for &w in complex.neighbors(u) {
                        let e = complex.edge_index(u, w).expect("adjacent");
                        if edge_wall[e] != id && label[w] == usize::MAX {
                            label[w] = components;
                            queue.push_back(w);
                        }
                    }
                }
                components += 1;
            }
            if components != 2 {
                return Err(Error::SeparationFailure { wall: id, components });
            }
            plus.push(label.iter().map(|&c| c == 0).collect());
        }
        Ok(WallSystem { classes, plus })
    }

    pub(crate) fn len(&self) -> usize {
        self.classes.len()
    }

    pub(crate) fn class(&self, wall: usize) -> &[usize] {
        &self.classes[wall]
    }

    /// Characteristic function of the `side` half-space of `wall` at vertex `v`.
    pub(crate) fn chi(&self, wall: usize, side: Side, v: usize) -> i64 {
        let on_plus = self.plus[wall][v];
        i64::from(on_plus == (side == Side::Plus))
    }

    pub(crate) fn separates(&self, wall: usize, u: usize, v: usize) -> bool {
        self.plus[wall][u] != self.plus[wall][v]
    }
}

/// The cached wall system; fails with [`Error::NotCat0`] on non-CAT(0) input.
pub(crate) fn wall_system(complex: &CubeComplex) -> Result<&WallSystem> {
    require_cat0(complex)?;
    complex
        .walls
        .get_or_init(|| WallSystem::develop(complex))
        .as_ref()
        .map_err(Clone::clone)
}

fn wall_from(complex: &CubeComplex, ws: &WallSystem, id: usize) -> Wall {
    let edges = ws
        .class(id)
        .iter()
        .map(|&e| {
            let (u, v) = complex.edges()[e];
            (complex.name(u).clone(), complex.name(v).clone())
        })
        .collect();
    Wall { id, edges }
}

pub fn walls(complex: &CubeComplex) -> Result<Vec<Wall>> {
    let ws = wall_system(complex)?;
    Ok((0..ws.len()).map(|id| wall_from(complex, ws, id)).collect())
}

/// `(plus, minus)`; the plus side holds the least vertex of the wall's least edge.
pub fn half_spaces(complex: &CubeComplex, wall: usize) -> Result<(HalfSpace, HalfSpace)> {
    let ws = wall_system(complex)?;
    if wall >= ws.len() {
        return Err(Error::UnknownWall(wall));
    }
    let side = |side: Side| HalfSpace {
        wall,
        side,
        members: (0..complex.vertex_count())
            .filter(|&v| ws.chi(wall, side, v) == 1)
            .map(|v| complex.name(v).clone())
            .collect(),
    };
    Ok((side(Side::Plus), side(Side::Minus)))
}

pub fn chi(complex: &CubeComplex, h: &HalfSpace, v: &str) -> Result<u8> {
    complex.index_of(v)?;
    Ok(u8::from(h.contains(v)))
}

pub fn separating_walls(complex: &CubeComplex, u: &str, v: &str) -> Result<Vec<Wall>> {
    let (iu, iv) = (complex.index_of(u)?, complex.index_of(v)?);
    let ws = wall_system(complex)?;
    Ok((0..ws.len())
        .filter(|&w| ws.separates(w, iu, iv))
        .map(|w| wall_from(complex, ws, w))
        .collect())
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so representatives are deterministic
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}
