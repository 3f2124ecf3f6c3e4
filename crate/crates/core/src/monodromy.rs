//! Monodromy of `T_n` and the branch-sum necessary condition.
//!
//! Branches of `T_n^{-1}` on the plane cut along `(-∞, -1] ∪ [1, ∞)` are
//! labelled `T_{n,j}^{-1}(z) = cos((arccos z + 2πj)/n)`, `0 <= j < n`. Branch
//! `0` maps `(-1, 1)` onto `(cos(π/n), 1)`. Around `1`, `-1` and `∞` the
//! branches are permuted by
//!
//! * `π_1 = (1 n-1)(2 n-2)...`,
//! * `π_{-1} = (0 n-1)(1 n-2)...`,
//! * `π_∞ = (0 1 ... n-1)`,
//!
//! with `π_∞ π_{-1} π_1 = 1`.

use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numeric::{to_c64, BigComplex, NumCtx};
use crate::points::{PointPair, ValidPair};
use crate::poly_core::RatPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// `None` unless `images` is a bijection of `0..len`.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation { images: other.images.iter().map(|&j| self.images[j]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (j, &i) in self.images.iter().enumerate() {
            images[i] = j;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &i)| i == j)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.images[j] == j).collect()
    }

    /// Cycles of length at least 2, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|j| j.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyPerms {
    pub pi_1: Permutation,
    pub pi_minus_1: Permutation,
    pub pi_infinity: Permutation,
}

impl MonodromyPerms {
    /// `π_∞ π_{-1} π_1`.
    pub fn product(&self) -> Permutation {
        self.pi_infinity.compose(&self.pi_minus_1.compose(&self.pi_1))
    }
}

pub fn perms(n: usize) -> MonodromyPerms {
    assert!(n >= 1);
    MonodromyPerms {
        pi_1: Permutation { images: (0..n).map(|j| (n - j) % n).collect() },
        pi_minus_1: Permutation { images: (0..n).map(|j| n - 1 - j).collect() },
        pi_infinity: Permutation { images: (0..n).map(|j| (j + 1) % n).collect() },
    }
}

/// Order of the group generated by `gens`, by closure enumeration.
pub fn generated_group_order(gens: &[Permutation]) -> usize {
    let Some(first) = gens.first() else {
        return 1;
    };
    let start = Permutation::identity(first.len());
    let mut seen: HashSet<Permutation> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.len()
}

fn check_branch_point(z: Complex64) -> Result<()> {
    if z == Complex64::new(1.0, 0.0) || z == Complex64::new(-1.0, 0.0) {
        return Err(Error::BranchPoint(z.to_string()));
    }
    Ok(())
}

/// `T_{n,j}^{-1}(z)` in double precision.
pub fn branch_eval(n: usize, j: usize, z: Complex64) -> Result<Complex64> {
    check_branch_point(z)?;
    Ok(((z.acos() + 2.0 * PI * j as f64) / n as f64).cos())
}

/// `T_{n,j}^{-1}(z)` at the context's precision.
pub fn branch_eval_big(ctx: &mut NumCtx, n: usize, j: usize, z: &BigComplex) -> Result<BigComplex> {
    check_branch_point(to_c64(z))?;
    let theta = ctx.acos(z);
    let pi = BigComplex { re: ctx.pi(), im: ctx.real(0.0) };
    let shift = ctx.scale(&pi, &ctx.real(2.0 * j as f64));
    let angle = ctx.add(&theta, &shift);
    let scaled = ctx.div(&angle, &ctx.from_c64(Complex64::new(n as f64, 0.0)));
    Ok(ctx.cos(&scaled))
}

/// Value of branch `j` as `z -> 1` or `z -> -1`.
pub fn branch_limit(n: usize, j: usize, at_plus_one: bool) -> f64 {
    let k = if at_plus_one { 2 * j } else { 2 * j + 1 };
    (PI * k as f64 / n as f64).cos()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    A,
    B,
}

/// Labels of the branches sending points near `z0` to points near one endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSet {
    pub indices: Vec<usize>,
    pub endpoint: Endpoint,
}

fn node_branches(n: u64, p: i64) -> Vec<usize> {
    let m = 2 * n as i64;
    let mut j = p.rem_euclid(m);
    if j > n as i64 {
        j = m - j;
    }
    let (j, n) = (j as usize, n as usize);
    let mut set = if j % 2 == 0 {
        vec![j / 2, (n - j / 2) % n]
    } else {
        vec![(j - 1) / 2, n - (j - 1) / 2 - 1]
    };
    set.sort_unstable();
    set.dedup();
    set
}

/// Where the branch-sum sampling segment heads from `z0`.
fn sampling_target(z0: Complex64) -> Complex64 {
    if z0.norm() < 1e-9 {
        Complex64::new(0.5, 0.0)
    } else if z0.im.abs() <= 1e-12 && z0.re.abs() > 1.0 {
        // on the cut: leave it perpendicularly
        z0 + Complex64::new(0.0, 1.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

fn near_one(z: Complex64, sign: f64) -> bool {
    (z - Complex64::new(sign, 0.0)).norm() <= 1e-9
}

/// Branch values at `z0`, approached along the sampling segment.
fn branch_limits(n: usize, z0: Complex64) -> Vec<Complex64> {
    if near_one(z0, 1.0) || near_one(z0, -1.0) {
        let plus = near_one(z0, 1.0);
        return (0..n).map(|j| Complex64::new(branch_limit(n, j, plus), 0.0)).collect();
    }
    let target = sampling_target(z0);
    let z = z0 + 1e-13 * (target - z0);
    (0..n).map(|j| branch_eval(n, j, z).unwrap()).collect()
}

pub fn branch_sets(pair: &ValidPair) -> (BranchSet, BranchSet) {
    let n = pair.n();
    if let PointPair::Node { p, q, .. } = pair.pair() {
        return (
            BranchSet { indices: node_branches(n, *p), endpoint: Endpoint::A },
            BranchSet { indices: node_branches(n, *q), endpoint: Endpoint::B },
        );
    }
    let data = pair.endpoint_data();
    let (a, b) = pair.point_values_c64();
    let limits = branch_limits(n as usize, data.z0.to_c64());
    let closest = |x: Complex64, count: u8| {
        let mut order: Vec<usize> = (0..n as usize).collect();
        order.sort_by(|&i, &j| (limits[i] - x).norm().total_cmp(&(limits[j] - x).norm()));
        let mut set: Vec<usize> = order.into_iter().take(count as usize).collect();
        set.sort_unstable();
        set
    };
    (
        BranchSet { indices: closest(a, data.mult_a), endpoint: Endpoint::A },
        BranchSet { indices: closest(b, data.mult_b), endpoint: Endpoint::B },
    )
}

#[derive(Clone, Debug)]
pub struct Condition5Report {
    pub branches_a: BranchSet,
    pub branches_b: BranchSet,
    pub samples: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

fn eval_c64(q: &RatPoly, z: Complex64) -> Complex64 {
    q.coeffs()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
}

/// Residuals of `d_b Σ_{j∈A} Q(T_{n,j}^{-1}(z)) = d_a Σ_{j∈B} Q(T_{n,j}^{-1}(z))`
/// at `samples` interior points of the segment from `z0` toward the sampling
/// target (`0` unless `z0` is `0` or lies on the cut).
pub fn check_condition5(pair: &ValidPair, big_q: &RatPoly, samples: usize, precision: usize) -> Result<Condition5Report> {
    let n = pair.n() as usize;
    let (set_a, set_b) = branch_sets(pair);
    let z0 = pair.endpoint_data().z0.to_c64();
    let target = sampling_target(z0);
    let (da, db) = (set_a.indices.len() as f64, set_b.indices.len() as f64);
    let points: Vec<Complex64> = (1..=samples)
        .map(|s| z0 + (s as f64 / (samples + 1) as f64) * (target - z0))
        .collect();

    let mut residuals = Vec::with_capacity(samples);
    if precision <= 53 {
        for &z in &points {
            let side = |set: &BranchSet| -> Result<Complex64> {
                set.indices.iter().try_fold(Complex64::new(0.0, 0.0), |acc, &j| {
                    Ok(acc + eval_c64(big_q, branch_eval(n, j, z)?))
                })
            };
            let lhs = db * side(&set_a)?;
            let rhs = da * side(&set_b)?;
            residuals.push((lhs - rhs).norm());
        }
    } else {
        let mut ctx = NumCtx::new(precision);
        for &z in &points {
            let zb = ctx.from_c64(z);
            let mut sums = Vec::with_capacity(2);
            for set in [&set_a, &set_b] {
                let mut acc = ctx.zero();
                for &j in &set.indices {
                    let y = branch_eval_big(&mut ctx, n, j, &zb)?;
                    let v = ctx.eval_poly(big_q.coeffs(), &y);
                    acc = ctx.add(&acc, &v);
                }
                sums.push(acc);
            }
            let lhs = ctx.scale(&sums[0], &ctx.real(db));
            let rhs = ctx.scale(&sums[1], &ctx.real(da));
            residuals.push(ctx.abs_f64(&ctx.sub(&lhs, &rhs)));
        }
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(Condition5Report { branches_a: set_a, branches_b: set_b, samples: points, residuals, max_residual })
}

/// Permutation of branch labels produced by continuing every branch once
/// around the circle `|z - center| = radius`, starting at
/// `center + radius·e^{i start_angle}` (which must lie off the cut).
pub fn continue_around(n: usize, center: Complex64, radius: f64, start_angle: f64, clockwise: bool, steps: usize) -> Permutation {
    let point = |t: f64| {
        let angle = start_angle + if clockwise { -t } else { t } * 2.0 * PI;
        center + radius * Complex64::new(angle.cos(), angle.sin())
    };
    let all = |z: Complex64| -> Vec<Complex64> { (0..n).map(|j| branch_eval(n, j, z).unwrap()).collect() };
    let start = all(point(0.0));
    let mut current = start.clone();
    for s in 1..=steps {
        let candidates = all(point(s as f64 / steps as f64));
        current = current
            .iter()
            .map(|y| {
                *candidates
                    .iter()
                    .min_by(|u, v| (*u - y).norm().total_cmp(&(*v - y).norm()))
                    .unwrap()
            })
            .collect();
    }
    let images = current
        .iter()
        .map(|y| {
            (0..n)
                .min_by(|&i, &j| (start[i] - y).norm().total_cmp(&(start[j] - y).norm()))
                .unwrap()
        })
        .collect();
    Permutation::new(images).expect("continuation produced a bijection")
}
