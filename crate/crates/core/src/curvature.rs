//! Vertex links, the no-bigon / no-triangle conditions, medians, and the
//! combined CAT(0) test.
//!
//! Simple connectivity is not tested topologically. A cube complex whose
//! 1-skeleton is a median graph, whose 4-cycles all bound squares and whose
//! links are flag is CAT(0), and conversely; [`cat0_check`] tests exactly
//! those conditions.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::complex::{canonical_square, CubeComplex, VertexId, UNREACHABLE};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    Bigon,
    Triangle,
    NonMedianTriple,
    UnfilledFourCycle,
    Disconnected,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Bigon => "bigon",
            ViolationKind::Triangle => "triangle",
            ViolationKind::NonMedianTriple => "non-median-triple",
            ViolationKind::UnfilledFourCycle => "unfilled-4-cycle",
            ViolationKind::Disconnected => "disconnected",
        })
    }
}

/// A failed condition and the vertices exhibiting it.
///
/// Witness layouts: bigon `[v, a, b, c1, c2, ..]` (squares `v-a-ci-b`),
/// triangle `[v, a, b, c]`, unfilled 4-cycle `[a, b, c, d]` in cyclic order,
/// non-median triple `[u, v, w]`, disconnected `[reached, unreached]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<VertexId>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for v in &self.witness {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureReport {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
}

impl CurvatureReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        let verdict = if violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CurvatureReport { verdict, violations }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// One square through the base vertex, seen as an edge of the link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkEdge {
    pub a: VertexId,
    pub b: VertexId,
    /// Vertex of the square diagonal to the base.
    pub opposite: VertexId,
}

/// Link of a vertex: link vertices are the edges at the base (named by their
/// far endpoint), link edges are squares through the base, and link
/// triangles are triples of edges pairwise spanning squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pub base: VertexId,
    pub link_vertices: Vec<VertexId>,
    pub link_edges: Vec<LinkEdge>,
    pub link_triangles: Vec<[VertexId; 3]>,
}

pub fn link(complex: &CubeComplex, v: &str) -> Result<LinkGraph> {
    let base = complex.index_of(v)?;
    let name = |i: usize| complex.name(i).clone();
    Ok(LinkGraph {
        base: name(base),
        link_vertices: complex.neighbors(base).iter().map(|&i| name(i)).collect(),
        link_edges: complex
            .squares_at(base)
            .iter()
            .map(|&(a, b, opp)| LinkEdge {
                a: name(a),
                b: name(b),
                opposite: name(opp),
            })
            .collect(),
        link_triangles: link_triangles(complex, base)
            .into_iter()
            .map(|t| t.map(name))
            .collect(),
    })
}

fn link_triangles(complex: &CubeComplex, base: usize) -> Vec<[usize; 3]> {
    let mut pairs: Vec<(usize, usize)> = complex.squares_at(base).iter().map(|&(a, b, _)| (a, b)).collect();
    pairs.dedup();
    let spanning: HashSet<(usize, usize)> = pairs.iter().copied().collect();
    let mut out = Vec::new();
    for &(a, b) in &pairs {
        for &c in complex.neighbors(base) {
            if c > b && spanning.contains(&(a, c)) && spanning.contains(&(b, c)) {
                out.push([a, b, c]);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Gromov's link conditions at every vertex.
pub fn npc_check(complex: &CubeComplex) -> &CurvatureReport {
    complex
        .npc
        .get_or_init(|| CurvatureReport::from_violations(npc_violations(complex)))
}

fn npc_violations(complex: &CubeComplex) -> Vec<Violation> {
    let mut violations = Vec::new();
    for v in 0..complex.vertex_count() {
        let at = complex.squares_at(v);
        let mut i = 0;
        while i < at.len() {
            let (a, b, _) = at[i];
            let run = at[i..].iter().take_while(|&&(x, y, _)| (x, y) == (a, b)).count();
            if run > 1 {
                let mut witness = vec![v, a, b];
                witness.extend(at[i..i + run].iter().map(|&(_, _, opp)| opp));
                violations.push(Violation {
                    kind: ViolationKind::Bigon,
                    witness: complex.named(&witness),
                });
            }
            i += run;
        }
        for [a, b, c] in link_triangles(complex, v) {
            if complex.cube_frames(v, &[a, b, c]).is_empty() {
                violations.push(Violation {
                    kind: ViolationKind::Triangle,
                    witness: complex.named(&[v, a, b, c]),
                });
            }
        }
    }
    violations
}

/// The unique vertex lying on geodesics between each pair of `u`, `v`, `w`.
pub fn median(complex: &CubeComplex, u: &str, v: &str, w: &str) -> Result<VertexId> {
    let (iu, iv, iw) = (complex.index_of(u)?, complex.index_of(v)?, complex.index_of(w)?);
    let dm = complex.distance_matrix();
    for (x, y) in [(iu, iv), (iv, iw), (iu, iw)] {
        if dm.get(x, y) == UNREACHABLE {
            return Err(Error::Disconnected(
                complex.name(x).to_string(),
                complex.name(y).to_string(),
            ));
        }
    }
    let candidates = median_candidates(complex, iu, iv, iw);
    match candidates.as_slice() {
        [m] => Ok(complex.name(*m).clone()),
        [] => Err(Error::NoMedian(u.into(), v.into(), w.into())),
        many => Err(Error::AmbiguousMedian(u.into(), v.into(), w.into(), many.len())),
    }
}

fn median_candidates(complex: &CubeComplex, u: usize, v: usize, w: usize) -> Vec<usize> {
    let dm = complex.distance_matrix();
    let (ru, rv, rw) = (dm.row(u), dm.row(v), dm.row(w));
    (0..complex.vertex_count())
        .filter(|&z| ru[z] + rv[z] == ru[v] && rv[z] + rw[z] == rv[w] && ru[z] + rw[z] == ru[w])
        .collect()
}

/// Connectivity, link conditions, filled 4-cycles and unique medians.
pub fn cat0_check(complex: &CubeComplex) -> &CurvatureReport {
    complex
        .cat0
        .get_or_init(|| CurvatureReport::from_violations(cat0_violations(complex)))
}

/// `Ok` when the complex passes [`cat0_check`], else [`Error::NotCat0`].
pub fn require_cat0(complex: &CubeComplex) -> Result<()> {
    let report = cat0_check(complex);
    match report.violations.first() {
        None => Ok(()),
        Some(first) => Err(Error::NotCat0(format!(
            "{} violation(s), first: {first}",
            report.violations.len()
        ))),
    }
}

fn cat0_violations(complex: &CubeComplex) -> Vec<Violation> {
    let mut violations = Vec::new();
    let reach = complex.bfs(0);
    let connected = match reach.iter().position(|&d| d == UNREACHABLE) {
        Some(lost) => {
            violations.push(Violation {
                kind: ViolationKind::Disconnected,
                witness: complex.named(&[0, lost]),
            });
            false
        }
        None => true,
    };

    violations.extend(npc_check(complex).violations.iter().cloned());

    for a in 0..complex.vertex_count() {
        let nbrs = complex.neighbors(a);
        let start = nbrs.partition_point(|&x| x < a);
        for (i, &b) in nbrs[start..].iter().enumerate() {
            for &d in &nbrs[start + i + 1..] {
                for &c in complex.neighbors(b) {
                    if c <= a || c == d || !complex.has_edge(c, d) {
                        continue;
                    }
                    let cycle = [a, b, c, d];
                    let filled = complex
                        .square_on(cycle)
                        .is_some_and(|s| complex.squares()[s] == canonical_square(cycle));
                    if !filled {
                        violations.push(Violation {
                            kind: ViolationKind::UnfilledFourCycle,
                            witness: complex.named(&cycle),
                        });
                    }
                }
            }
        }
    }

    if connected {
        violations.extend(non_median_triples(complex));
    }
    violations
}

fn non_median_triples(complex: &CubeComplex) -> Vec<Violation> {
    let n = complex.vertex_count();
    let dm = complex.distance_matrix();
    let mut bad: Vec<[usize; 3]> = (0..n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let ru = dm.row(u);
            let mut found = Vec::new();
            for v in u + 1..n {
                let rv = dm.row(v);
                let interval: Vec<usize> = (0..n).filter(|&z| ru[z] + rv[z] == ru[v]).collect();
                for w in v + 1..n {
                    let rw = dm.row(w);
                    let count = interval
                        .iter()
                        .filter(|&&z| ru[z] + rw[z] == ru[w] && rv[z] + rw[z] == rv[w])
                        .count();
                    if count != 1 {
                        found.push([u, v, w]);
                    }
                }
            }
            found
        })
        .collect();
    bad.sort_unstable();
    bad.into_iter()
        .map(|t| Violation {
            kind: ViolationKind::NonMedianTriple,
            witness: complex.named(&t),
        })
        .collect()
}
