//! Nearest points of finite convex hulls and the median-hyperplane
//! membership test.
//!
//! A target `xi` lies in `C = conv{p_i}` iff for every `eta` some `p_i`
//! satisfies `||p_i - xi|| <= ||p_i - eta||`. When `xi` is outside, the
//! projection `eta` of `xi` onto `C` is strictly closer to every `p_i`.
//! Operators enter through their Frobenius vectorization.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::ProbMeasure;
use crate::operator::{dist_sqr, norm_sqr, random_vector, CVec, Operator};
use crate::scalar::Real;

/// Default distance below which a target counts as a hull member.
pub const MEMBERSHIP_TOL: f64 = 1e-7;
/// Largest point set accepted by [`project_onto_hull`].
pub const MAX_HULL_POINTS: usize = 10_000;
/// Iteration cap shared by the Wolfe and Frank–Wolfe phases.
pub const ITERATION_CAP: usize = 10_000;
/// Slack in [`condition1_search`].
pub const CONDITION1_SLACK: f64 = 1e-12;

/// Finitely many points of a real Hilbert space `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSet<T> {
    ambient_dim: usize,
    points: Vec<Vec<T>>,
}

impl<T: Real> PointSet<T> {
    pub fn new(points: Vec<Vec<T>>) -> Result<Self> {
        let ambient_dim = points.first().ok_or(Error::Empty("point set"))?.len();
        if let Some(p) = points.iter().find(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: p.len() });
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(PointSet { ambient_dim, points })
    }

    /// Complex vectors viewed in `R^(2n)` (real parts, then imaginary parts),
    /// which preserves distances and the real part of inner products.
    pub fn from_complex(vectors: &[CVec<T>]) -> Result<Self> {
        Self::new(vectors.iter().map(|v| realify(v)).collect())
    }

    /// Operators in `R^(2d^2)` with the Frobenius geometry.
    pub fn from_operators(ops: &[Operator<T>]) -> Result<Self> {
        Self::new(ops.iter().map(Operator::vectorize).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i]
    }

    /// `sum_i weights[i] p_i`
    pub fn combine(&self, weights: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.ambient_dim];
        for (p, &w) in self.points.iter().zip(weights) {
            axpy(&mut out, w, p);
        }
        out
    }
}

pub fn realify<T: Real>(v: &[Complex<T>]) -> Vec<T> {
    v.iter().map(|z| z.re).chain(v.iter().map(|z| z.im)).collect()
}

pub fn complexify<T: Real>(v: &[T]) -> Result<CVec<T>> {
    if v.len() % 2 != 0 {
        return Err(Error::DimensionMismatch { expected: v.len() + 1, found: v.len() });
    }
    let n = v.len() / 2;
    Ok((0..n).map(|k| Complex::new(v[k], v[n + k])).collect())
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn dist<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum::<T>().sqrt()
}

fn axpy<T: Real>(y: &mut [T], a: T, x: &[T]) {
    for (u, &v) in y.iter_mut().zip(x) {
        *u += a * v;
    }
}

fn sub<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionMethod {
    Wolfe,
    FrankWolfe,
}

#[derive(Debug, Clone, Serialize)]
pub struct HullResult<T> {
    pub member: bool,
    pub distance: T,
    /// Convex weights over point indices, zeros included.
    pub weights: ProbMeasure<usize, T>,
    pub projection: Vec<T>,
    /// The projection again, present only when the target is outside.
    pub witness: Option<Vec<T>>,
    /// `max_i <p_i - projection, target - projection>`, which is `<= 0` at
    /// the exact nearest point.
    pub optimality_residual: T,
    pub method: ProjectionMethod,
    pub iterations: usize,
}

impl<T: Real> HullResult<T> {
    pub fn dense_weights(&self) -> &[T] {
        self.weights.weights()
    }
}

/// Nearest point of `conv(ps)` to `xi`.
///
/// The result is accepted only after the variational inequality holds at
/// every point and, when `xi` is outside (`distance > tol`), after the
/// projection is checked to be strictly closer than `xi` to every point.
pub fn project_onto_hull<T: Real>(ps: &PointSet<T>, xi: &[T], tol: T) -> Result<HullResult<T>> {
    if xi.len() != ps.ambient_dim {
        return Err(Error::DimensionMismatch { expected: ps.ambient_dim, found: xi.len() });
    }
    if ps.len() > MAX_HULL_POINTS {
        return Err(Error::TooManyElements { requested: ps.len(), cap: MAX_HULL_POINTS });
    }
    if !(tol > T::zero()) {
        return Err(Error::InvalidArgument("membership tolerance must be positive".into()));
    }
    let shifted: Vec<Vec<T>> = ps.points.iter().map(|p| sub(p, xi)).collect();
    let radius = shifted.iter().map(|q| dot(q, q)).fold(T::zero(), T::max);
    let vi_tol = T::epsilon().sqrt() * T::lit(1e-2) * (T::one() + radius);

    let (mut lambda, mut iterations) = match wolfe(&shifted, radius) {
        Some((l, it)) => (l, it),
        None => (nearest_vertex(&shifted), 0),
    };
    let mut method = ProjectionMethod::Wolfe;
    let mut residual = vi_residual(&shifted, &lambda);
    if !(residual <= vi_tol) {
        method = ProjectionMethod::FrankWolfe;
        let it = pairwise_frank_wolfe(&shifted, &mut lambda, vi_tol);
        iterations += it;
        residual = vi_residual(&shifted, &lambda);
        if !(residual <= vi_tol) {
            return Err(Error::NonConvergence(iterations));
        }
    }
    let total: T = lambda.iter().copied().sum();
    for w in &mut lambda {
        *w /= total;
    }
    let projection = ps.combine(&lambda);
    let distance = dist(&projection, xi);
    let member = distance <= tol;
    let witness = if member {
        None
    } else {
        let gap = dot(&sub(&projection, xi), &sub(&projection, xi));
        for (i, p) in ps.points.iter().enumerate() {
            let near = dot(&sub(p, &projection), &sub(p, &projection));
            let far = dot(&sub(p, xi), &sub(p, xi));
            if !(near < far && near + gap <= far + vi_tol) {
                return Err(Error::Certificate(format!("projection does not dominate point {i}")));
            }
        }
        Some(projection.clone())
    };
    let indices = (0..ps.len()).collect();
    Ok(HullResult {
        member,
        distance,
        weights: ProbMeasure::new(indices, lambda)?,
        projection,
        witness,
        optimality_residual: residual,
        method,
        iterations,
    })
}

fn nearest_vertex<T: Real>(q: &[Vec<T>]) -> Vec<T> {
    let j = argmin(q.iter().map(|v| dot(v, v)));
    let mut l = vec![T::zero(); q.len()];
    l[j] = T::one();
    l
}

fn argmin<T: Real>(it: impl Iterator<Item = T>) -> usize {
    let mut best = (0, T::infinity());
    for (i, v) in it.enumerate() {
        if v < best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// `max_i <q_i - x, -x>` with `x = sum lambda_i q_i`, in target-centred
/// coordinates.
fn vi_residual<T: Real>(q: &[Vec<T>], lambda: &[T]) -> T {
    let x = combine(q, lambda);
    let xx = dot(&x, &x);
    q.iter().map(|v| xx - dot(v, &x)).fold(T::neg_infinity(), T::max)
}

fn combine<T: Real>(q: &[Vec<T>], lambda: &[T]) -> Vec<T> {
    let mut x = vec![T::zero(); q[0].len()];
    for (v, &l) in q.iter().zip(lambda) {
        if l != T::zero() {
            axpy(&mut x, l, v);
        }
    }
    x
}

/// Wolfe's minimum-norm-point method on `conv(q)`. Returns dense weights,
/// or `None` when a corral turns out affinely dependent or the cap is hit.
fn wolfe<T: Real>(q: &[Vec<T>], radius: T) -> Option<(Vec<T>, usize)> {
    let z1 = T::epsilon() * T::lit(64.0) * (T::one() + radius);
    let z3 = T::epsilon() * T::lit(64.0);
    let first = argmin(q.iter().map(|v| dot(v, v)));
    let mut corral = vec![first];
    let mut lam = vec![T::one()];
    let mut x = q[first].clone();
    let mut iterations = 0;
    loop {
        iterations += 1;
        if iterations > ITERATION_CAP {
            return None;
        }
        let xx = dot(&x, &x);
        let j = argmin(q.iter().map(|v| dot(v, &x)));
        if xx - dot(&q[j], &x) <= z1 || corral.contains(&j) {
            break;
        }
        corral.push(j);
        lam.push(T::zero());
        loop {
            iterations += 1;
            if iterations > ITERATION_CAP {
                return None;
            }
            let alpha = affine_minimizer(q, &corral)?;
            if alpha.iter().all(|&a| a > z3) {
                lam = alpha;
                break;
            }
            let mut theta = T::one();
            for (&l, &a) in lam.iter().zip(&alpha) {
                if a <= z3 && l - a > T::zero() {
                    theta = theta.min(l / (l - a));
                }
            }
            for (l, &a) in lam.iter_mut().zip(&alpha) {
                *l = theta * a + (T::one() - theta) * *l;
            }
            let mut k = 0;
            while k < corral.len() {
                if lam[k] <= z3 {
                    corral.remove(k);
                    lam.remove(k);
                } else {
                    k += 1;
                }
            }
            if corral.is_empty() {
                return None;
            }
            let total: T = lam.iter().copied().sum();
            for l in &mut lam {
                *l /= total;
            }
        }
        x = vec![T::zero(); q[0].len()];
        for (&i, &l) in corral.iter().zip(&lam) {
            axpy(&mut x, l, &q[i]);
        }
    }
    let mut dense = vec![T::zero(); q.len()];
    for (&i, &l) in corral.iter().zip(&lam) {
        dense[i] = l;
    }
    Some((dense, iterations))
}

/// Weights of the point of minimum norm in the affine hull of the corral,
/// via Gram–Schmidt on the differences `q_k - q_0`.
fn affine_minimizer<T: Real>(q: &[Vec<T>], corral: &[usize]) -> Option<Vec<T>> {
    let base = &q[corral[0]];
    let m = corral.len() - 1;
    let mut basis: Vec<Vec<T>> = Vec::with_capacity(m);
    // r[k][j] with column k of the difference matrix = sum_j r[j][k] basis_j
    let mut r = vec![vec![T::zero(); m]; m];
    for k in 0..m {
        let mut v = sub(&q[corral[k + 1]], base);
        let norm0 = dot(&v, &v).sqrt();
        for _ in 0..2 {
            for (j, b) in basis.iter().enumerate() {
                let c = dot(b, &v);
                r[j][k] += c;
                axpy(&mut v, -c, b);
            }
        }
        let nv = dot(&v, &v).sqrt();
        if !(nv > T::lit(1e-10).max(T::epsilon().sqrt() * T::lit(1e-2)) * norm0) || nv == T::zero() {
            return None;
        }
        r[k][k] = nv;
        basis.push(v.into_iter().map(|c| c / nv).collect());
    }
    // minimize ||base + D beta||: R beta = -Q^T base
    let rhs: Vec<T> = basis.iter().map(|b| -dot(b, base)).collect();
    let mut beta = vec![T::zero(); m];
    for k in (0..m).rev() {
        let mut s = rhs[k];
        for j in k + 1..m {
            s -= r[k][j] * beta[j];
        }
        beta[k] = s / r[k][k];
    }
    let mut alpha = Vec::with_capacity(m + 1);
    alpha.push(T::one() - beta.iter().copied().sum::<T>());
    alpha.extend(beta);
    Some(alpha)
}

/// Pairwise Frank–Wolfe with exact line search, refining `lambda` in place.
fn pairwise_frank_wolfe<T: Real>(q: &[Vec<T>], lambda: &mut [T], gap_tol: T) -> usize {
    let mut x = combine(q, lambda);
    for it in 1..=ITERATION_CAP {
        let grads: Vec<T> = q.iter().map(|v| dot(v, &x)).collect();
        let s = argmin(grads.iter().copied());
        let xx = dot(&x, &x);
        if xx - grads[s] <= gap_tol {
            return it;
        }
        let mut v = s;
        for (i, &g) in grads.iter().enumerate() {
            if lambda[i] > T::zero() && (v == s || g > grads[v]) {
                v = i;
            }
        }
        if v == s {
            return it;
        }
        let d = sub(&q[s], &q[v]);
        let dd = dot(&d, &d);
        if dd == T::zero() {
            return it;
        }
        let gamma = (-dot(&x, &d) / dd).max(T::zero()).min(lambda[v]);
        lambda[s] += gamma;
        lambda[v] -= gamma;
        axpy(&mut x, gamma, &d);
    }
    ITERATION_CAP
}

/// First index with `||p_i - xi|| <= ||p_i - eta|| + 1e-12`.
pub fn condition1_search<T: Real>(ps: &PointSet<T>, xi: &[T], eta: &[T]) -> Result<Option<usize>> {
    for v in [xi, eta] {
        if v.len() != ps.ambient_dim {
            return Err(Error::DimensionMismatch { expected: ps.ambient_dim, found: v.len() });
        }
    }
    let slack = T::lit(CONDITION1_SLACK);
    Ok(ps.points.iter().position(|p| dist(p, xi) <= dist(p, eta) + slack))
}

/// Parameters of [`theorem21_equivalence_test`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EquivalenceConfig {
    pub trials: usize,
    pub n_max: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for EquivalenceConfig {
    fn default() -> Self {
        EquivalenceConfig { trials: 50, n_max: 3, tol: MEMBERSHIP_TOL, seed: 0 }
    }
}

/// Vectors `xi_1..xi_n` and `eta_1..eta_n` defeating every `x`:
/// `sum ||phi(x) xi_i - T xi_i||^2 > sum ||phi(x) xi_i - eta_i||^2`.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct RefutingFamily<T> {
    pub xi: Vec<CVec<T>>,
    pub eta: Vec<CVec<T>>,
    /// `lhs - rhs` for each `x`, all positive.
    pub margins: Vec<T>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct EquivalenceReport<T> {
    pub hull: HullResult<T>,
    pub member: bool,
    /// Random tuples tried (member case only).
    pub trials: usize,
    /// Tuples for which some `x` satisfied the inequality.
    pub witnesses: usize,
    /// Index of the first failing trial, if any.
    pub first_failure: Option<usize>,
    pub refuting_family: Option<RefutingFamily<T>>,
    /// Membership and the vector-level verdict agree.
    pub consistent: bool,
}

/// Decides whether `t` lies in `conv{ops}` and confronts the verdict with
/// the vector condition: random tuples must always find a good `x` when
/// `t` is inside, and an explicit family must defeat every `x` when it is
/// outside.
pub fn theorem21_equivalence_test<T: Real>(
    ops: &[Operator<T>],
    t: &Operator<T>,
    cfg: &EquivalenceConfig,
) -> Result<EquivalenceReport<T>> {
    let d = t.dim();
    if let Some(op) = ops.iter().find(|op| op.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: op.dim() });
    }
    if cfg.trials == 0 || cfg.n_max == 0 {
        return Err(Error::InvalidArgument("trials and n_max must be at least 1".into()));
    }
    let ps = PointSet::from_operators(ops)?;
    let hull = project_onto_hull(&ps, &t.vectorize(), T::lit(cfg.tol))?;
    let sums = |xi: &[CVec<T>], eta: &[CVec<T>], op: &Operator<T>| {
        let (mut lhs, mut rhs) = (T::zero(), T::zero());
        for (x, e) in xi.iter().zip(eta) {
            let v = op.apply(x);
            lhs += dist_sqr(&v, &t.apply(x));
            rhs += dist_sqr(&v, e);
        }
        (lhs, rhs)
    };
    if hull.member {
        // slack covers the distance between t and its projection
        let bound = ops.iter().map(Operator::op_norm).fold(t.op_norm(), T::max);
        let two = T::lit(2.0);
        let mut witnesses = 0;
        let mut first_failure = None;
        for trial in 0..cfg.trials {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(trial as u64);
            let n = 1 + (rand::Rng::random_range(&mut rng, 0..cfg.n_max));
            let xi: Vec<CVec<T>> = (0..n).map(|_| random_vector(d, &mut rng)).collect();
            let eta: Vec<CVec<T>> = (0..n).map(|_| random_vector(d, &mut rng)).collect();
            let mass: T = xi.iter().map(|v| norm_sqr(v)).sum();
            let slack = hull.distance * mass * (two * two * bound + two * hull.distance) + T::lit(CONDITION1_SLACK);
            if ops.iter().any(|op| {
                let (l, r) = sums(&xi, &eta, op);
                l <= r + slack
            }) {
                witnesses += 1;
            } else if first_failure.is_none() {
                first_failure = Some(trial);
            }
        }
        Ok(EquivalenceReport {
            member: true,
            trials: cfg.trials,
            witnesses,
            first_failure,
            refuting_family: None,
            consistent: witnesses == cfg.trials,
            hull,
        })
    } else {
        // xi_i = e_i stacks to the columns of each operator, so the stacked
        // geometry is the Frobenius one and eta_i are the columns of the
        // projected operator
        let p = Operator::from_vectorized(d, &hull.projection)?;
        let xi: Vec<CVec<T>> = (0..d)
            .map(|i| (0..d).map(|k| Complex::new(if k == i { T::one() } else { T::zero() }, T::zero())).collect())
            .collect();
        let eta: Vec<CVec<T>> = xi.iter().map(|e| p.apply(e)).collect();
        let margins: Vec<T> = ops
            .iter()
            .map(|op| {
                let (l, r) = sums(&xi, &eta, op);
                l - r
            })
            .collect();
        let defeated = margins.iter().all(|&m| m > T::zero());
        Ok(EquivalenceReport {
            member: false,
            trials: 0,
            witnesses: 0,
            first_failure: None,
            refuting_family: Some(RefutingFamily { xi, eta, margins }),
            consistent: defeated,
            hull,
        })
    }
}
