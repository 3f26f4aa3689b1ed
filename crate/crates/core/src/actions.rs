//! Cellular actions of finite groups on cube complexes.
//!
//! Groups are given by generating automorphisms and enumerated by closure.
//! For a finite action every orbit is bounded, so some cube is setwise
//! invariant (its barycenter is a global fixed point); [`fixed_cube`] finds
//! one inside the combinatorial convex hull of an orbit.

use std::collections::{HashMap, VecDeque};

use crate::complex::{canonical_square, CubeComplex, VertexId, UNREACHABLE};
use crate::error::{Error, Result};
use crate::hyperplanes::wall_system;
use crate::kernel::KernelMatrix;

/// Default bound on the number of group elements enumerated.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// A vertex permutation preserving edges and squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    images: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism {
            images: (0..n).collect(),
        }
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut images = vec![0; self.images.len()];
        for (v, &w) in self.images.iter().enumerate() {
            images[w] = v;
        }
        Automorphism { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Image of a vertex set, sorted.
    pub fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&v| self.images[v]).collect();
        out.sort_unstable();
        out
    }
}

/// Checks that `map` (pairs `from -> to`) is a cellular automorphism.
pub fn validate_automorphism<A, B>(
    complex: &CubeComplex,
    map: impl IntoIterator<Item = (A, B)>,
) -> Result<Automorphism>
where
    A: AsRef<str>,
    B: AsRef<str>,
{
    let n = complex.vertex_count();
    let mut images = vec![usize::MAX; n];
    for (from, to) in map {
        let (f, t) = (complex.index_of(from.as_ref())?, complex.index_of(to.as_ref())?);
        if images[f] != usize::MAX && images[f] != t {
            return Err(Error::ConflictingImage(from.as_ref().to_string()));
        }
        images[f] = t;
    }
    if let Some(v) = images.iter().position(|&i| i == usize::MAX) {
        return Err(Error::IncompleteMap(complex.name(v).to_string()));
    }
    let mut hit = vec![false; n];
    for &t in &images {
        if std::mem::replace(&mut hit[t], true) {
            return Err(Error::NotBijective(complex.name(t).to_string()));
        }
    }
    for &(u, v) in complex.edges() {
        if !complex.has_edge(images[u], images[v]) {
            return Err(Error::EdgeNotPreserved(
                complex.name(u).to_string(),
                complex.name(v).to_string(),
            ));
        }
    }
    for sq in complex.squares() {
        let image = sq.map(|v| images[v]);
        let preserved = complex
            .square_on(image)
            .is_some_and(|s| complex.squares()[s] == canonical_square(image));
        if !preserved {
            return Err(Error::SquareNotPreserved(sq.map(|v| complex.name(v).to_string())));
        }
    }
    Ok(Automorphism { images })
}

/// All products of the generators and their inverses, identity first.
pub fn close_group(
    complex: &CubeComplex,
    generators: &[Automorphism],
    cap: usize,
) -> Result<Vec<Automorphism>> {
    let labelled: Vec<(String, Automorphism)> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (format!("g{i}"), g.clone()))
        .collect();
    Ok(closure(complex, &labelled, cap)?
        .into_iter()
        .map(|(g, _)| g)
        .collect())
}

fn closure(
    complex: &CubeComplex,
    generators: &[(String, Automorphism)],
    cap: usize,
) -> Result<Vec<(Automorphism, String)>> {
    let n = complex.vertex_count();
    if let Some((_, g)) = generators.iter().find(|(_, g)| g.images.len() != n) {
        return Err(Error::ForeignAutomorphism {
            expected: n,
            found: g.images.len(),
        });
    }
    let mut steps: Vec<(String, Automorphism)> = Vec::new();
    for (name, g) in generators {
        steps.push((name.clone(), g.clone()));
        steps.push((format!("{name}^-1"), g.inverse()));
    }

    let identity = Automorphism::identity(n);
    let mut seen: HashMap<Automorphism, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![(identity, "e".to_string())];
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for (name, step) in &steps {
            let next = step.compose(&elements[i].0);
            if seen.contains_key(&next) {
                continue;
            }
            if elements.len() == cap {
                return Err(Error::CapExceeded(cap));
            }
            let word = if i == 0 {
                name.clone()
            } else {
                format!("{name}*{}", elements[i].1)
            };
            seen.insert(next.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push((next, word));
        }
    }
    Ok(elements)
}

/// A finite group acting on a complex, with its elements enumerated.
#[derive(Debug, Clone)]
pub struct GroupAction<'a> {
    complex: &'a CubeComplex,
    generators: Vec<(String, Automorphism)>,
    elements: Vec<Automorphism>,
    labels: Vec<String>,
    lookup: HashMap<Automorphism, usize>,
}

impl<'a> GroupAction<'a> {
    pub fn new(
        complex: &'a CubeComplex,
        generators: Vec<(String, Automorphism)>,
        cap: usize,
    ) -> Result<Self> {
        let (elements, labels): (Vec<_>, Vec<_>) = closure(complex, &generators, cap)?.into_iter().unzip();
        let lookup = elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        Ok(GroupAction {
            complex,
            generators,
            elements,
            labels,
            lookup,
        })
    }

    pub fn complex(&self) -> &'a CubeComplex {
        self.complex
    }

    pub fn generators(&self) -> &[(String, Automorphism)] {
        &self.generators
    }

    /// Group elements, identity first, in breadth-first order over words.
    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    /// A word in the generators for each element (`e` for the identity).
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, g: &Automorphism) -> Option<usize> {
        self.lookup.get(g).copied()
    }
}

pub fn orbit(action: &GroupAction<'_>, v: &str) -> Result<Vec<VertexId>> {
    let v = action.complex.index_of(v)?;
    Ok(action.complex.named(&orbit_indices(action, v)))
}

fn orbit_indices(action: &GroupAction<'_>, v: usize) -> Vec<usize> {
    let mut out: Vec<usize> = action.elements.iter().map(|g| g.apply(v)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantKernel {
    /// `f(g, h) = D(g v, h v)` indexed by group elements.
    pub matrix: KernelMatrix<i64>,
    /// Whether `f(kg, kh) = f(g, h)` held for every `k, g, h`.
    pub left_invariant: bool,
}

/// The kernel induced on the group by the edge metric along the orbit of `v`.
pub fn invariant_kernel(action: &GroupAction<'_>, v: &str) -> Result<InvariantKernel> {
    let complex = action.complex;
    let v = complex.index_of(v)?;
    let dm = complex.distance_matrix();
    let points: Vec<usize> = action.elements.iter().map(|g| g.apply(v)).collect();
    let size = points.len();
    let mut rows = vec![vec![0i64; size]; size];
    for (i, &p) in points.iter().enumerate() {
        for (j, &q) in points.iter().enumerate() {
            let d = dm.get(p, q);
            if d == UNREACHABLE {
                return Err(Error::Disconnected(
                    complex.name(p).to_string(),
                    complex.name(q).to_string(),
                ));
            }
            rows[i][j] = i64::from(d);
        }
    }

    let mut left_invariant = true;
    'outer: for k in &action.elements {
        let shifted: Vec<usize> = action
            .elements
            .iter()
            .map(|g| action.position(&k.compose(g)).expect("closure is closed"))
            .collect();
        for g in 0..size {
            for h in 0..size {
                if rows[shifted[g]][shifted[h]] != rows[g][h] {
                    left_invariant = false;
                    break 'outer;
                }
            }
        }
    }

    let matrix = KernelMatrix::new(action.labels.clone(), rows)?;
    Ok(InvariantKernel {
        matrix,
        left_invariant,
    })
}

/// Intersection of all half-spaces containing `set`.
pub fn convex_hull<S: AsRef<str>>(complex: &CubeComplex, set: &[S]) -> Result<Vec<VertexId>> {
    let idx = set
        .iter()
        .map(|s| complex.index_of(s.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let hull = hull_mask(complex, &idx)?;
    let members: Vec<usize> = (0..complex.vertex_count()).filter(|&v| hull[v]).collect();
    Ok(complex.named(&members))
}

fn hull_mask(complex: &CubeComplex, set: &[usize]) -> Result<Vec<bool>> {
    let (&first, rest) = set.split_first().ok_or(Error::EmptyHull)?;
    let ws = wall_system(complex)?;
    let mut hull = vec![true; complex.vertex_count()];
    for wall in 0..ws.len() {
        if rest.iter().all(|&s| !ws.separates(wall, first, s)) {
            for (v, keep) in hull.iter_mut().enumerate() {
                if ws.separates(wall, first, v) {
                    *keep = false;
                }
            }
        }
    }
    Ok(hull)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedCubeResult {
    /// Vertex set of the invariant cube, in token order.
    pub cube: Vec<VertexId>,
    pub dimension: usize,
    /// Largest D from a cube vertex to an orbit point.
    pub radius: u32,
}

/// A setwise-invariant cube inside the hull of the basepoint orbit, chosen
/// by least radius, then least dimension, then least vertex set.
///
/// The basepoint is the least vertex in token order.
pub fn fixed_cube(action: &GroupAction<'_>) -> Result<FixedCubeResult> {
    let complex = action.complex;
    let orbit = orbit_indices(action, 0);
    let hull = hull_mask(complex, &orbit)?;
    let dm = complex.distance_matrix();

    complex
        .cubes()
        .iter()
        .filter(|c| c.vertex_set().iter().all(|&v| hull[v]))
        .filter(|c| {
            action
                .generators
                .iter()
                .all(|(_, g)| g.image_of_set(c.vertex_set()) == c.vertex_set())
        })
        .map(|c| {
            let radius = c
                .vertex_set()
                .iter()
                .flat_map(|&x| orbit.iter().map(move |&o| dm.get(x, o)))
                .max()
                .unwrap_or(0);
            (radius, c)
        })
        .min_by(|(ra, a), (rb, b)| {
            ra.cmp(rb)
                .then(a.dim().cmp(&b.dim()))
                .then_with(|| a.vertex_set().cmp(b.vertex_set()))
        })
        .map(|(radius, c)| FixedCubeResult {
            cube: complex.named(c.vertex_set()),
            dimension: c.dim(),
            radius,
        })
        .ok_or(Error::NoInvariantCube)
}
