//! The edge-path metric D, computed by breadth-first search and by counting
//! separating half-spaces, and an upper approximation of the CAT(0) metric d.
//!
//! The upper approximation runs Dijkstra on a sample graph: nodes are the
//! points of every cube whose coordinates are multiples of `1/k`, and any two
//! nodes sharing a cube are joined by the straight segment through it. Every
//! such path is a path in the complex, so the result bounds d from above, and
//! the 1-skeleton is part of the sample graph, so it never exceeds D.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use rayon::prelude::*;

use crate::complex::{CubeComplex, VertexId, UNREACHABLE};
use crate::curvature::require_cat0;
use crate::error::{Error, Result};
use crate::hyperplanes::{wall_system, Side};

/// Absolute tolerance for floating-point comparisons against D.
pub const TOLERANCE: f64 = 1e-9;

pub fn edge_distance(complex: &CubeComplex, u: &str, v: &str) -> Result<u32> {
    let (iu, iv) = (complex.index_of(u)?, complex.index_of(v)?);
    match complex.bfs(iu)[iv] {
        UNREACHABLE => Err(Error::Disconnected(u.to_string(), v.to_string())),
        d => Ok(d),
    }
}

/// Sum over both half-spaces of every wall of `chi_U(u) * (1 - chi_U(v))`.
pub fn wall_distance(complex: &CubeComplex, u: &str, v: &str) -> Result<u32> {
    let (iu, iv) = (complex.index_of(u)?, complex.index_of(v)?);
    Ok(wall_distance_by_index(complex, iu, iv)? as u32)
}

pub(crate) fn wall_distance_by_index(complex: &CubeComplex, u: usize, v: usize) -> Result<i64> {
    let ws = wall_system(complex)?;
    Ok((0..ws.len())
        .flat_map(|w| [Side::Plus, Side::Minus].map(|s| (w, s)))
        .map(|(w, s)| ws.chi(w, s, u) * (1 - ws.chi(w, s, v)))
        .sum())
}

pub fn cat0_distance_upper(complex: &CubeComplex, u: &str, v: &str, k: u32) -> Result<f64> {
    let (iu, iv) = (complex.index_of(u)?, complex.index_of(v)?);
    let graph = SampleGraph::new(complex, k)?;
    Ok(graph.distances_from(iu)[graph.vertex_node[iv]])
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub pair: (VertexId, VertexId),
    /// D, the edge-path distance.
    pub wall_distance: u32,
    pub d_upper: f64,
    pub dimension: usize,
    pub bounds_ok: bool,
}

/// `d_upper <= D <= sqrt(n) * d_upper` for every unordered vertex pair.
pub fn metric_comparison(complex: &CubeComplex, k: u32) -> Result<Vec<MetricReport>> {
    let graph = SampleGraph::new(complex, k)?;
    let n = complex.dimension();
    let root_n = (n as f64).sqrt();
    let count = complex.vertex_count();
    (0..count)
        .into_par_iter()
        .map(|u| {
            let dist = graph.distances_from(u);
            (u + 1..count)
                .map(|v| {
                    let d_big = wall_distance_by_index(complex, u, v)? as u32;
                    let d_upper = dist[graph.vertex_node[v]];
                    let big = f64::from(d_big);
                    Ok(MetricReport {
                        pair: (complex.name(u).clone(), complex.name(v).clone()),
                        wall_distance: d_big,
                        d_upper,
                        dimension: n,
                        bounds_ok: big <= root_n * d_upper + TOLERANCE && d_upper <= big + TOLERANCE,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<Vec<_>>>>()
        .map(|rows| rows.into_iter().flatten().collect())
}

struct SampleGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
    vertex_node: Vec<usize>,
}

impl SampleGraph {
    fn new(complex: &CubeComplex, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroSubdivision);
        }
        require_cat0(complex)?;
        let mut ids: HashMap<(Vec<usize>, Vec<u32>), usize> = HashMap::new();
        let mut adjacency: Vec<Vec<(usize, f64)>> = Vec::new();

        for cube in complex.cubes() {
            let m = cube.dim();
            let points = lattice(m, k);
            let nodes: Vec<usize> = points
                .iter()
                .map(|x| {
                    let key = carrier_key(complex, cube.frame(), x, k);
                    let next = ids.len();
                    *ids.entry(key).or_insert_with(|| {
                        adjacency.push(Vec::new());
                        next
                    })
                })
                .collect();
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    let sq: u64 = points[i]
                        .iter()
                        .zip(&points[j])
                        .map(|(&a, &b)| u64::from(a.abs_diff(b)).pow(2))
                        .sum();
                    let w = (sq as f64).sqrt() / f64::from(k);
                    adjacency[nodes[i]].push((nodes[j], w));
                    adjacency[nodes[j]].push((nodes[i], w));
                }
            }
        }

        let vertex_node = (0..complex.vertex_count())
            .map(|v| ids[&(vec![v], Vec::new())])
            .collect();
        Ok(SampleGraph {
            adjacency,
            vertex_node,
        })
    }

    fn distances_from(&self, vertex: usize) -> Vec<f64> {
        let source = self.vertex_node[vertex];
        let mut dist = vec![f64::INFINITY; self.adjacency.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(State {
            cost: 0.0,
            node: source,
        });
        while let Some(State { cost, node }) = heap.pop() {
            if cost > dist[node] {
                continue;
            }
            for &(next, w) in &self.adjacency[node] {
                let c = cost + w;
                if c < dist[next] {
                    dist[next] = c;
                    heap.push(State { cost: c, node: next });
                }
            }
        }
        dist
    }
}

/// All points of `{0, .., k}^m`.
fn lattice(m: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(m)];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |t| {
                    let mut q = p.clone();
                    q.push(t);
                    q
                })
            })
            .collect();
    }
    out
}

/// Identifies a lattice point globally: the vertex set of the smallest face
/// containing it, plus its coordinates in that face's own frame.
fn carrier_key(complex: &CubeComplex, frame: &[usize], x: &[u32], k: u32) -> (Vec<usize>, Vec<u32>) {
    let free: Vec<usize> = (0..x.len()).filter(|&i| x[i] != 0 && x[i] != k).collect();
    let base: usize = (0..x.len()).filter(|&i| x[i] == k).map(|i| 1 << i).sum();
    let free_mask: usize = free.iter().map(|&i| 1 << i).sum();

    let mut face_masks: Vec<usize> = Vec::with_capacity(1 << free.len());
    let mut sub = 0usize;
    loop {
        face_masks.push(base | sub);
        if sub == free_mask {
            break;
        }
        sub = (sub.wrapping_sub(free_mask)) & free_mask;
    }
    let mut set: Vec<usize> = face_masks.iter().map(|&m| frame[m]).collect();
    set.sort_unstable();
    let face = complex.cube_on(&set).expect("faces of cubes are cubes");

    let corner = face.frame()[0];
    let corner_mask = *face_masks
        .iter()
        .find(|&&m| frame[m] == corner)
        .expect("corner in face");
    let coords = (0..face.dim())
        .map(|j| {
            let target = face.frame()[1 << j];
            let i = *free
                .iter()
                .find(|&&i| frame[corner_mask ^ (1 << i)] == target)
                .expect("face direction");
            if corner_mask & (1 << i) != 0 {
                k - x[i]
            } else {
                x[i]
            }
        })
        .collect();
    (set, coords)
}

#[derive(Debug, Clone, Copy)]
struct State {
    cost: f64,
    node: usize,
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for State {}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for State {
    // min-heap on cost
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| self.node.cmp(&other.node))
    }
}
