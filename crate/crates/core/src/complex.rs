//! Combinatorial cube complexes.
//!
//! A complex is given by vertices, edges and explicitly declared squares.
//! Cubes of dimension three and higher are never declared: they are derived
//! by flag-completion, i.e. every vertex set spanning an induced hypercube
//! subgraph whose 2-faces are all declared squares is filled in.
//!
//! Vertices are addressed by [`VertexId`] at the API boundary and by a dense
//! index internally. Indices follow token order, so index order and name
//! order agree everywhere.

use std::borrow::Borrow;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::curvature::CurvatureReport;
use crate::error::{BuildError, Decl, Error, Result};
use crate::hyperplanes::WallSystem;

/// Name of a vertex: a nonempty token over `[A-Za-z0-9_.|-]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(name: impl Into<String>) -> Option<Self> {
        let name = name.into();
        is_token(&name).then_some(VertexId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-' | b'|'))
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for VertexId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Raw, unvalidated complex: what a file or a builder hands to
/// [`CubeComplex::build`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComplexDescription {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    /// Squares in cyclic order: `a-b-c-d-a`.
    pub squares: Vec<[String; 4]>,
}

impl ComplexDescription {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, v: impl Into<String>) -> &mut Self {
        self.vertices.push(v.into());
        self
    }

    pub fn edge(&mut self, u: impl Into<String>, v: impl Into<String>) -> &mut Self {
        self.edges.push((u.into(), v.into()));
        self
    }

    pub fn square(
        &mut self,
        a: impl Into<String>,
        b: impl Into<String>,
        c: impl Into<String>,
        d: impl Into<String>,
    ) -> &mut Self {
        self.squares.push([a.into(), b.into(), c.into(), d.into()]);
        self
    }
}

/// A cube of the complex together with a coordinate frame.
///
/// `frame[mask]` is the vertex with cube coordinates given by the bits of
/// `mask`; `frame[0]` is the least vertex of the cube and `frame[1 << i]`
/// are its neighbours inside the cube in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    frame: Vec<usize>,
    vertex_set: Vec<usize>,
}

impl Cube {
    fn from_frame(frame: Vec<usize>) -> Self {
        let mut vertex_set = frame.clone();
        vertex_set.sort_unstable();
        Cube { frame, vertex_set }
    }

    pub fn dim(&self) -> usize {
        self.frame.len().trailing_zeros() as usize
    }

    pub fn frame(&self) -> &[usize] {
        &self.frame
    }

    /// Vertex indices in increasing order.
    pub fn vertex_set(&self) -> &[usize] {
        &self.vertex_set
    }
}

/// All-pairs edge-path distances; `u32::MAX` marks unreachable pairs.
#[derive(Debug, Clone)]
pub(crate) struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub(crate) fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub(crate) fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }
}

pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// A validated cube complex. Immutable once built; lazily computed data
/// (distances, curvature verdict, walls) is cached behind [`OnceLock`]s.
#[derive(Debug, Clone)]
pub struct CubeComplex {
    names: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    squares: Vec<[usize; 4]>,
    square_by_set: HashMap<[usize; 4], usize>,
    /// For each vertex `z`: `(x, y, opposite)` for every square `z-x-opposite-y`, with `x < y`.
    squares_at: Vec<Vec<(usize, usize, usize)>>,
    cubes: Vec<Cube>,
    cube_by_set: HashMap<Vec<usize>, usize>,
    dimension: usize,
    pub(crate) distances: OnceLock<DistanceMatrix>,
    pub(crate) npc: OnceLock<CurvatureReport>,
    pub(crate) cat0: OnceLock<CurvatureReport>,
    pub(crate) walls: OnceLock<Result<WallSystem>>,
}

impl PartialEq for CubeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges && self.squares == other.squares
    }
}

impl Eq for CubeComplex {}

impl CubeComplex {
    /// Validates a description and derives the higher cubes.
    pub fn build(desc: &ComplexDescription) -> Result<Self, BuildError> {
        if desc.vertices.is_empty() {
            return Err(BuildError::Empty);
        }

        let mut seen: HashMap<&str, usize> = HashMap::new();
        for (i, name) in desc.vertices.iter().enumerate() {
            if !is_token(name) {
                return Err(BuildError::InvalidName {
                    name: name.clone(),
                    at: Decl::Vertex(i),
                });
            }
            if seen.insert(name.as_str(), i).is_some() {
                return Err(BuildError::DuplicateVertex {
                    name: name.clone(),
                    at: Decl::Vertex(i),
                });
            }
        }
        let mut names: Vec<VertexId> = desc.vertices.iter().map(|s| VertexId(s.clone())).collect();
        names.sort();
        let index: HashMap<VertexId, usize> = names.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let n = names.len();

        let lookup = |name: &str, at: Decl| {
            index.get(name).copied().ok_or_else(|| BuildError::UnknownVertex {
                name: name.to_string(),
                at,
            })
        };

        let mut edge_set: HashSet<(usize, usize)> = HashSet::new();
        let mut adjacency = vec![Vec::new(); n];
        for (i, (u, v)) in desc.edges.iter().enumerate() {
            let at = Decl::Edge(i);
            let (a, b) = (lookup(u, at)?, lookup(v, at)?);
            if a == b {
                return Err(BuildError::SelfLoop { name: u.clone(), at });
            }
            if !edge_set.insert((a.min(b), a.max(b))) {
                return Err(BuildError::DuplicateEdge {
                    u: u.clone(),
                    v: v.clone(),
                    at,
                });
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        adjacency.iter_mut().for_each(|nbrs| nbrs.sort_unstable());
        let mut edges: Vec<(usize, usize)> = edge_set.iter().copied().collect();
        edges.sort_unstable();

        let mut square_by_set = HashMap::new();
        let mut squares = Vec::with_capacity(desc.squares.len());
        for (i, sq) in desc.squares.iter().enumerate() {
            let at = Decl::Square(i);
            let mut cycle = [0usize; 4];
            for (slot, name) in cycle.iter_mut().zip(sq) {
                *slot = lookup(name, at)?;
            }
            for j in 0..4 {
                if cycle[..j].contains(&cycle[j]) {
                    return Err(BuildError::RepeatedSquareVertex {
                        name: sq[j].clone(),
                        at,
                    });
                }
            }
            for j in 0..4 {
                let (a, b) = (cycle[j], cycle[(j + 1) % 4]);
                if !edge_set.contains(&(a.min(b), a.max(b))) {
                    return Err(BuildError::SquareBoundaryNotEdge {
                        u: sq[j].clone(),
                        v: sq[(j + 1) % 4].clone(),
                        at,
                    });
                }
            }
            let mut key = cycle;
            key.sort_unstable();
            if square_by_set.insert(key, usize::MAX).is_some() {
                return Err(BuildError::DuplicateSquare {
                    vertices: sq.clone(),
                    at,
                });
            }
            squares.push(canonical_square(cycle));
        }
        squares.sort_unstable();
        for (i, sq) in squares.iter().enumerate() {
            let mut key = *sq;
            key.sort_unstable();
            square_by_set.insert(key, i);
        }

        let mut squares_at = vec![Vec::new(); n];
        for sq in &squares {
            for j in 0..4 {
                let z = sq[j];
                let (x, y) = (sq[(j + 1) % 4], sq[(j + 3) % 4]);
                squares_at[z].push((x.min(y), x.max(y), sq[(j + 2) % 4]));
            }
        }
        squares_at.iter_mut().for_each(|s| s.sort_unstable());

        let mut complex = CubeComplex {
            names,
            index,
            adjacency,
            edges,
            squares,
            square_by_set,
            squares_at,
            cubes: Vec::new(),
            cube_by_set: HashMap::new(),
            dimension: 0,
            distances: OnceLock::new(),
            npc: OnceLock::new(),
            cat0: OnceLock::new(),
            walls: OnceLock::new(),
        };
        complex.derive_cubes();
        Ok(complex)
    }

    /// Flag-completion: enumerate every cube from its least vertex.
    fn derive_cubes(&mut self) {
        let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        let mut dirs = Vec::new();
        for corner in 0..self.names.len() {
            found.insert(vec![corner], vec![corner]);
            self.explore_from(corner, &mut dirs, &mut found);
        }
        let mut cubes: Vec<Cube> = found.into_values().map(Cube::from_frame).collect();
        cubes.sort_by(|a, b| {
            a.dim()
                .cmp(&b.dim())
                .then_with(|| a.vertex_set.cmp(&b.vertex_set))
        });
        self.dimension = cubes.iter().map(Cube::dim).max().unwrap_or(0);
        self.cube_by_set = cubes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.vertex_set.clone(), i))
            .collect();
        self.cubes = cubes;
    }

    fn explore_from(
        &self,
        corner: usize,
        dirs: &mut Vec<usize>,
        found: &mut BTreeMap<Vec<usize>, Vec<usize>>,
    ) {
        let last = dirs.last().copied().unwrap_or(corner);
        for &a in &self.adjacency[corner] {
            if a <= last {
                continue;
            }
            if !dirs
                .iter()
                .all(|&d| self.square_opposites(corner, d, a).next().is_some())
            {
                continue;
            }
            dirs.push(a);
            let frames: Vec<Vec<usize>> = self
                .cube_frames(corner, dirs)
                .into_iter()
                .filter(|f| f.iter().all(|&v| v >= corner))
                .collect();
            if !frames.is_empty() {
                for frame in frames {
                    let mut key = frame.clone();
                    key.sort_unstable();
                    found.entry(key).or_insert(frame);
                }
                self.explore_from(corner, dirs, found);
            }
            dirs.pop();
        }
    }

    /// Every filled cube with the given corner and corner-neighbours.
    ///
    /// More than one frame is possible only when squares form bigons.
    pub(crate) fn cube_frames(&self, corner: usize, dirs: &[usize]) -> Vec<Vec<usize>> {
        if dirs.iter().any(|&d| !self.has_edge(corner, d)) {
            return Vec::new();
        }
        let mut frame = vec![usize::MAX; 1 << dirs.len()];
        frame[0] = corner;
        for (i, &d) in dirs.iter().enumerate() {
            frame[1 << i] = d;
        }
        let mut out = Vec::new();
        self.fill_frame(&mut frame, 1, &mut out);
        out
    }

    fn fill_frame(&self, frame: &mut Vec<usize>, mask: usize, out: &mut Vec<Vec<usize>>) {
        if mask == frame.len() {
            if self.is_filled_cube(frame) {
                out.push(frame.clone());
            }
            return;
        }
        if mask.count_ones() < 2 {
            return self.fill_frame(frame, mask + 1, out);
        }
        let i = mask.trailing_zeros();
        let j = (mask & (mask - 1)).trailing_zeros();
        let x = frame[mask ^ (1 << i)];
        let y = frame[mask ^ (1 << j)];
        let z = frame[mask ^ (1 << i) ^ (1 << j)];
        let opposites: Vec<usize> = self.square_opposites(z, x, y).collect();
        for opp in opposites {
            frame[mask] = opp;
            self.fill_frame(frame, mask + 1, out);
        }
        frame[mask] = usize::MAX;
    }

    fn is_filled_cube(&self, frame: &[usize]) -> bool {
        let k = frame.len().trailing_zeros() as usize;
        let mut set = frame.to_vec();
        set.sort_unstable();
        if set.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        for (mask, &v) in frame.iter().enumerate() {
            for i in 0..k {
                if mask & (1 << i) == 0 && !self.has_edge(v, frame[mask | (1 << i)]) {
                    return false;
                }
                for j in i + 1..k {
                    if mask & ((1 << i) | (1 << j)) != 0 {
                        continue;
                    }
                    let mut face = [
                        v,
                        frame[mask | (1 << i)],
                        frame[mask | (1 << j)],
                        frame[mask | (1 << i) | (1 << j)],
                    ];
                    face.sort_unstable();
                    if !self.square_by_set.contains_key(&face) {
                        return false;
                    }
                }
            }
        }
        let induced: usize = set
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter(|w| set.binary_search(w).is_ok())
                    .count()
            })
            .sum();
        induced == k << k
    }

    /// Fourth vertices of the squares containing the path `x - z - y`.
    pub(crate) fn square_opposites(&self, z: usize, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        let key = (x.min(y), x.max(y));
        let start = self.squares_at[z].partition_point(|&(a, b, _)| (a, b) < key);
        self.squares_at[z][start..]
            .iter()
            .take_while(move |&&(a, b, _)| (a, b) == key)
            .map(|&(_, _, opp)| opp)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Vertex names in token order; position is the vertex index.
    pub fn names(&self) -> &[VertexId] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &VertexId {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Declared squares in canonical cyclic order, sorted.
    pub fn squares(&self) -> &[[usize; 4]] {
        &self.squares
    }

    /// Index of the declared square on the given four vertices, in any order.
    pub fn square_on(&self, vertices: [usize; 4]) -> Option<usize> {
        let mut key = vertices;
        key.sort_unstable();
        self.square_by_set.get(&key).copied()
    }

    /// Squares at `z` as `(x, y, opposite)` with `x < y`.
    pub(crate) fn squares_at(&self, z: usize) -> &[(usize, usize, usize)] {
        &self.squares_at[z]
    }

    /// Every cube of every dimension, ordered by dimension then vertex set.
    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn cube_on(&self, sorted_vertices: &[usize]) -> Option<&Cube> {
        self.cube_by_set.get(sorted_vertices).map(|&i| &self.cubes[i])
    }

    /// Cubes of dimension three and above, grouped by dimension.
    pub fn derived_cubes(&self) -> BTreeMap<usize, Vec<Vec<VertexId>>> {
        let mut out: BTreeMap<usize, Vec<Vec<VertexId>>> = BTreeMap::new();
        for cube in self.cubes.iter().filter(|c| c.dim() >= 3) {
            out.entry(cube.dim())
                .or_default()
                .push(self.named(cube.vertex_set()));
        }
        out
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn named(&self, indices: &[usize]) -> Vec<VertexId> {
        indices.iter().map(|&i| self.names[i].clone()).collect()
    }

    /// The description this complex would serialize to: sorted vertices,
    /// sorted edges and canonical squares.
    pub fn description(&self) -> ComplexDescription {
        let name = |i: usize| self.names[i].0.clone();
        ComplexDescription {
            vertices: self.names.iter().map(|v| v.0.clone()).collect(),
            edges: self.edges.iter().map(|&(u, v)| (name(u), name(v))).collect(),
            squares: self.squares.iter().map(|sq| sq.map(name)).collect(),
        }
    }

    pub(crate) fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.names.len()];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub(crate) fn distance_matrix(&self) -> &DistanceMatrix {
        self.distances.get_or_init(|| {
            let n = self.names.len();
            let mut data = Vec::with_capacity(n * n);
            for s in 0..n {
                data.extend(self.bfs(s));
            }
            DistanceMatrix { n, data }
        })
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }
}

/// Least rotation or reflection of a 4-cycle.
pub(crate) fn canonical_square(cycle: [usize; 4]) -> [usize; 4] {
    let mut best = cycle;
    for start in 0..4 {
        let fwd = [0, 1, 2, 3].map(|k| cycle[(start + k) % 4]);
        let back = [0, 1, 2, 3].map(|k| cycle[(start + 4 - k) % 4]);
        best = best.min(fwd).min(back);
    }
    best
}
