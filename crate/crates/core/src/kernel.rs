//! Conditionally negative kernels.
//!
//! A kernel `f` is conditionally negative when `sum_ij l_i l_j f(v_i, v_j) <= 0`
//! for every weight vector with `sum_i l_i = 0`. Weights here are integers and
//! all arithmetic on integer kernels is exact.

use std::fmt::Debug;

use num_traits::{Num, NumCast};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builders::{Family, PairRule};
use crate::complex::{CubeComplex, VertexId, UNREACHABLE};
use crate::error::{Error, Result};
use crate::hyperplanes::{wall_system, Side};
use crate::metrics::wall_distance_by_index;

/// Scalar type a kernel can take values in.
pub trait KernelValue: Num + NumCast + Copy + PartialOrd + Debug {}

impl<T: Num + NumCast + Copy + PartialOrd + Debug> KernelValue for T {}

/// Symmetric matrix with zero diagonal over a labelled point set.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix<T = i64> {
    points: Vec<String>,
    values: Vec<T>,
}

impl<T: KernelValue> KernelMatrix<T> {
    pub fn new(points: Vec<String>, rows: Vec<Vec<T>>) -> Result<Self> {
        let n = points.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidKernel(rows.len(), n));
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != T::zero() {
                return Err(Error::InvalidKernel(i, i));
            }
            for j in 0..i {
                if row[j] != rows[j][i] {
                    return Err(Error::InvalidKernel(i, j));
                }
            }
        }
        Ok(KernelMatrix {
            points,
            values: rows.into_iter().flatten().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.points.len() + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.values.chunks(self.points.len().max(1))
    }

    /// Largest entry (zero for a single point).
    pub fn sup(&self) -> T {
        self.values
            .iter()
            .copied()
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }
}

/// Finitely many points with integer weights summing to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelProbe<P = usize> {
    points: Vec<P>,
    weights: Vec<i64>,
}

impl<P> KernelProbe<P> {
    pub fn new(points: Vec<P>, weights: Vec<i64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::ProbeLength {
                points: points.len(),
                weights: weights.len(),
            });
        }
        if points.is_empty() {
            return Err(Error::EmptyProbe);
        }
        let sum: i64 = weights.iter().sum();
        if sum != 0 {
            return Err(Error::NonZeroWeightSum(sum));
        }
        Ok(KernelProbe { points, weights })
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn scaled(&self, c: i64) -> Self
    where
        P: Clone,
    {
        KernelProbe {
            points: self.points.clone(),
            weights: self.weights.iter().map(|w| w * c).collect(),
        }
    }
}

fn cast<T: KernelValue>(w: i64) -> T {
    T::from(w).expect("weight representable in kernel scalar type")
}

/// `sum_ij l_i l_j f(v_i, v_j)`.
pub fn quadratic_form<T: KernelValue>(kernel: &KernelMatrix<T>, probe: &KernelProbe) -> Result<T> {
    if let Some(&index) = probe.points.iter().find(|&&i| i >= kernel.len()) {
        return Err(Error::ProbeIndex {
            index,
            size: kernel.len(),
        });
    }
    Ok(form(kernel, &probe.points, &probe.weights))
}

fn form<T: KernelValue>(kernel: &KernelMatrix<T>, points: &[usize], weights: &[i64]) -> T {
    let mut total = T::zero();
    for (&i, &wi) in points.iter().zip(weights) {
        if wi == 0 {
            continue;
        }
        let mut row = T::zero();
        for (&j, &wj) in points.iter().zip(weights) {
            row = row + cast::<T>(wj) * kernel.get(i, j);
        }
        total = total + cast::<T>(wi) * row;
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelStatus {
    NoViolationFound,
    Violation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample<T> {
    pub probe: KernelProbe,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelVerdict<T> {
    pub status: KernelStatus,
    pub counterexample: Option<Counterexample<T>>,
    /// Probes evaluated, including the deterministic ones.
    pub trials: usize,
}

/// Largest kernel for which every three-point probe `e_i - 2 e_j + e_k` is
/// enumerated; bigger kernels get only the pair and random probes.
pub const THREE_POINT_LIMIT: usize = 256;

/// Bound on the random probe entries (before the last one is adjusted).
pub const RANDOM_WEIGHT_BOUND: i64 = 3;

/// Searches for a zero-sum weight vector with positive form value.
///
/// Probes are tried in a fixed order and the first positive one is returned:
/// every `e_i - e_j`, then every `e_i - 2 e_j + e_k` (small kernels only),
/// then `trials` random vectors drawn from `seed`.
pub fn cnd_check<T: KernelValue>(kernel: &KernelMatrix<T>, trials: usize, seed: u64) -> KernelVerdict<T> {
    let m = kernel.len();
    let mut evaluated = 0;
    let verdict = |points: Vec<usize>, weights: Vec<i64>, evaluated: usize| {
        let value = form(kernel, &points, &weights);
        (value > T::zero()).then_some(KernelVerdict {
            status: KernelStatus::Violation,
            counterexample: Some(Counterexample {
                probe: KernelProbe { points, weights },
                value,
            }),
            trials: evaluated,
        })
    };

    for i in 0..m {
        for j in i + 1..m {
            evaluated += 1;
            if let Some(v) = verdict(vec![i, j], vec![1, -1], evaluated) {
                return v;
            }
        }
    }
    if m <= THREE_POINT_LIMIT {
        for i in 0..m {
            for k in i + 1..m {
                for j in (0..m).filter(|&j| j != i && j != k) {
                    let mut probe = [(i, 1), (j, -2), (k, 1)];
                    probe.sort_unstable();
                    evaluated += 1;
                    if let Some(v) = verdict(
                        probe.iter().map(|p| p.0).collect(),
                        probe.iter().map(|p| p.1).collect(),
                        evaluated,
                    ) {
                        return v;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let weights = random_weights(&mut rng, m);
        evaluated += 1;
        if let Some(v) = verdict((0..m).collect(), weights, evaluated) {
            return v;
        }
    }
    KernelVerdict {
        status: KernelStatus::NoViolationFound,
        counterexample: None,
        trials: evaluated,
    }
}

/// `m` weights uniform in `[-3, 3]`, the last replaced to make the sum zero.
pub fn random_weights<R: Rng>(rng: &mut R, m: usize) -> Vec<i64> {
    let mut w: Vec<i64> = (0..m)
        .map(|_| rng.gen_range(-RANDOM_WEIGHT_BOUND..=RANDOM_WEIGHT_BOUND))
        .collect();
    if let Some(last) = m.checked_sub(1) {
        let rest: i64 = w[..last].iter().sum();
        w[last] = -rest;
    }
    w
}

/// Seeded probes on a complex: up to eight vertices drawn with replacement,
/// random zero-sum weights.
pub fn seeded_probes(complex: &CubeComplex, count: usize, seed: u64) -> Vec<KernelProbe<VertexId>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = complex.vertex_count();
    (0..count)
        .map(|_| {
            let m = rng.gen_range(1..=n.min(8));
            let points = (0..m)
                .map(|_| complex.name(rng.gen_range(0..n)).clone())
                .collect();
            let weights = random_weights(&mut rng, m);
            KernelProbe { points, weights }
        })
        .collect()
}

/// The edge-path metric D as a kernel on all vertices.
pub fn distance_kernel(complex: &CubeComplex) -> Result<KernelMatrix<i64>> {
    let dm = complex.distance_matrix();
    let n = complex.vertex_count();
    let mut rows = Vec::with_capacity(n);
    for u in 0..n {
        let row = dm.row(u);
        if let Some(v) = row.iter().position(|&d| d == UNREACHABLE) {
            return Err(Error::Disconnected(
                complex.name(u).to_string(),
                complex.name(v).to_string(),
            ));
        }
        rows.push(row.iter().map(|&d| <i64 as From<u32>>::from(d)).collect());
    }
    KernelMatrix::new(complex.names().iter().map(|v| v.to_string()).collect(), rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WallIdentity {
    /// `sum_ij l_i l_j D(u_i, u_j)`
    pub lhs: i64,
    /// `- sum_U (sum_i l_i chi_U(u_i))^2` over both half-spaces of every wall
    pub rhs: i64,
    pub equal: bool,
}

/// Evaluates both sides of the half-space decomposition of the D form.
pub fn wall_identity_check<P: AsRef<str>>(
    complex: &CubeComplex,
    probe: &KernelProbe<P>,
) -> Result<WallIdentity> {
    let ws = wall_system(complex)?;
    let idx = probe
        .points
        .iter()
        .map(|p| complex.index_of(p.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let dm = complex.distance_matrix();

    let mut lhs = 0i64;
    for (&i, &wi) in idx.iter().zip(&probe.weights) {
        for (&j, &wj) in idx.iter().zip(&probe.weights) {
            lhs += wi * wj * <i64 as From<u32>>::from(dm.get(i, j));
        }
    }

    let mut squares = 0i64;
    for wall in 0..ws.len() {
        for side in [Side::Plus, Side::Minus] {
            let s: i64 = idx
                .iter()
                .zip(&probe.weights)
                .map(|(&i, &w)| w * ws.chi(wall, side, i))
                .sum();
            squares += s * s;
        }
    }
    let rhs = -squares;
    Ok(WallIdentity {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// For each family parameter, the largest D over the pairs chosen by `rule`.
pub fn kernel_growth_scan(family: Family, params: &[usize], rule: PairRule) -> Result<Vec<(usize, u32)>> {
    params
        .iter()
        .map(|&p| {
            let (complex, (a, b)) = family.instance(p)?;
            let sup = match rule {
                PairRule::Designated => wall_distance_by_index(
                    &complex,
                    complex.index_of(a.as_str())?,
                    complex.index_of(b.as_str())?,
                )?,
                PairRule::AllPairs => {
                    let n = complex.vertex_count();
                    let mut best = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            best = best.max(wall_distance_by_index(&complex, u, v)?);
                        }
                    }
                    best
                }
            };
            Ok((p, sup as u32))
        })
        .collect()
}
