//! Averaging corrections of almost-multiplicative maps.
//!
//! For a finitely supported probability measure `mu` the averaged map is
//! `psi_mu(x) = sum_y mu(y) phi(xy) phi(y)*`. With `mu` invariant (the
//! uniform measure on a finite group) `psi_mu` is positive definite and lies
//! within the multiplicative defect of `phi`. The block operators
//! `phi_F(y) = diag(phi(xy) phi(y)*)_{x in F}` and `T = diag(psi(x))_{x in F}`
//! turn the witness search of [`check_condition5`] into a convex-hull
//! membership question for [`crate::convex`].

use std::collections::BTreeSet;

use num_complex::Complex;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{folner_box, FreeGroup, Group, Lattice, LatticePoint, ProbMeasure, Word};
use crate::operator::{dist_sqr, random_unit_vector, CVec, Operator, PsdReport, DEFAULT_PSD_TOL, MAX_MAP_DIM};
use crate::rep_maps::{gram_block, OperatorMap};
use crate::scalar::{Field, Real};

/// `psi_mu` on every domain element `x` for which all products `xy`
/// (`y` in the support) stay in the domain of `phi`.
pub fn average_map<G: Group, T: Real, W: Field>(
    phi: &OperatorMap<G, T>,
    mu: &ProbMeasure<G::Elem, W>,
) -> Result<OperatorMap<G, T>> {
    let g = phi.group();
    let out: Vec<G::Elem> = phi
        .domain()
        .iter()
        .filter(|x| mu.support().iter().all(|y| phi.contains(&g.mul(x, y))))
        .cloned()
        .collect();
    if out.is_empty() {
        return Err(Error::DomainEscape("no element keeps every product inside the domain".into()));
    }
    average_map_on(phi, mu, &out)
}

/// `psi_mu` on an explicit output domain; fails on the first `(x, y)` whose
/// product (or `y` itself) escapes the domain of `phi`.
pub fn average_map_on<G: Group, T: Real, W: Field>(
    phi: &OperatorMap<G, T>,
    mu: &ProbMeasure<G::Elem, W>,
    out: &[G::Elem],
) -> Result<OperatorMap<G, T>> {
    let g = phi.group();
    let weighted: Vec<(T, &G::Elem, Operator<T>)> = mu
        .iter()
        .map(|(y, w)| {
            let py = phi
                .get(y)
                .ok_or_else(|| Error::DomainEscape(format!("support element {y:?}")))?;
            Ok((T::lit(w.to_f64()), y, py.adjoint()))
        })
        .collect::<Result<_>>()?;
    let mut entries = Vec::with_capacity(out.len());
    for x in out {
        let mut acc = Operator::zeros(phi.dim());
        // sequential sum in support order: bit-stable for a given measure
        for (w, y, py_adj) in &weighted {
            let xy = g.mul(x, y);
            let pxy = phi
                .get(&xy)
                .ok_or_else(|| Error::DomainEscape(format!("product of {x:?} and {y:?}")))?;
            acc.add_scaled(*w, &(pxy * py_adj));
        }
        entries.push((x.clone(), acc));
    }
    OperatorMap::new(g.clone(), entries)
}

/// Average against the uniform measure of a finite group, its unique
/// invariant mean.
pub fn amenable_correction<G: Group, T: Real>(phi: &OperatorMap<G, T>) -> Result<OperatorMap<G, T>> {
    let elements = phi
        .group()
        .elements()
        .ok_or_else(|| Error::KindMismatch("amenable correction needs a finite group".into()))?;
    let mu: ProbMeasure<G::Elem, f64> = ProbMeasure::uniform(elements)?;
    average_map(phi, &mu)
}

/// Families `xi_1..xi_n : F -> C^d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VectorFamily<E, T> {
    points: Vec<E>,
    dim: usize,
    /// `vectors[i][k]` is `xi_i(points[k])`.
    vectors: Vec<Vec<CVec<T>>>,
}

impl<E: Clone + PartialEq, T: Real> VectorFamily<E, T> {
    pub fn new(points: Vec<E>, dim: usize, vectors: Vec<Vec<CVec<T>>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("finite set F"));
        }
        if vectors.is_empty() {
            return Err(Error::Empty("vector family"));
        }
        for row in &vectors {
            if row.len() != points.len() {
                return Err(Error::DimensionMismatch { expected: points.len(), found: row.len() });
            }
            if let Some(v) = row.iter().find(|v| v.len() != dim) {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
        Ok(VectorFamily { points, dim, vectors })
    }

    pub fn from_fn(points: Vec<E>, n: usize, dim: usize, mut f: impl FnMut(usize, &E) -> CVec<T>) -> Result<Self> {
        let vectors = (0..n).map(|i| points.iter().map(|x| f(i, x)).collect()).collect();
        Self::new(points, dim, vectors)
    }

    /// Random unit vectors.
    pub fn random<R: Rng + ?Sized>(points: Vec<E>, n: usize, dim: usize, rng: &mut R) -> Result<Self> {
        Self::from_fn(points, n, dim, |_, _| random_unit_vector(dim, rng))
    }

    pub fn points(&self) -> &[E] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, k: usize) -> &CVec<T> {
        &self.vectors[i][k]
    }

    /// `xi_i` stacked over `F` as one vector of `(C^d)^F`.
    pub fn stacked(&self, i: usize) -> CVec<T> {
        self.vectors[i].iter().flatten().copied().collect()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.points == other.points && self.dim == other.dim && self.n() == other.n()
    }
}

/// Outcome of the witness search for a single family.
#[derive(Debug, Clone, Serialize)]
pub struct Condition5Result<E, T> {
    /// First `y` in scan order with `lhs <= rhs`.
    pub witness_y: Option<E>,
    /// Both sums at the witness, or at the scanned `y` with the smallest
    /// excess `lhs - rhs` when there is none.
    pub lhs: T,
    pub rhs: T,
    pub scanned: Vec<E>,
}

/// Searches `scan` for `y` with
/// `sum_i sum_{x in F} ||phi(xy)phi(y)* xi_i(x) - psi(x) xi_i(x)||^2
///   <= sum_i sum_{x in F} ||phi(xy)phi(y)* xi_i(x) - zeta_i(x)||^2`.
pub fn check_condition5<G: Group, T: Real>(
    phi: &OperatorMap<G, T>,
    psi: &OperatorMap<G, T>,
    xi: &VectorFamily<G::Elem, T>,
    zeta: &VectorFamily<G::Elem, T>,
    scan: &[G::Elem],
) -> Result<Condition5Result<G::Elem, T>> {
    if scan.is_empty() {
        return Err(Error::Empty("scan"));
    }
    if !xi.compatible(zeta) {
        return Err(Error::InvalidArgument("xi and zeta families must share F, n and d".into()));
    }
    if xi.dim() != phi.dim() || psi.dim() != phi.dim() {
        return Err(Error::DimensionMismatch { expected: phi.dim(), found: xi.dim() });
    }
    let t_xi: Vec<Vec<CVec<T>>> = (0..xi.n())
        .map(|i| {
            xi.points()
                .iter()
                .enumerate()
                .map(|(k, x)| Ok(psi.value(x)?.apply(xi.get(i, k))))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let phi_f = build_phi_f(phi, xi.points());
    let mut best: Option<(T, T, T)> = None;
    for y in scan {
        let blocks = phi_f.blocks(y)?;
        let (mut lhs, mut rhs) = (T::zero(), T::zero());
        for i in 0..xi.n() {
            for (k, b) in blocks.iter().enumerate() {
                let v = b.apply(xi.get(i, k));
                lhs += dist_sqr(&v, &t_xi[i][k]);
                rhs += dist_sqr(&v, zeta.get(i, k));
            }
        }
        if lhs <= rhs {
            return Ok(Condition5Result { witness_y: Some(y.clone()), lhs, rhs, scanned: scan.to_vec() });
        }
        if best.is_none_or(|(excess, _, _)| lhs - rhs < excess) {
            best = Some((lhs - rhs, lhs, rhs));
        }
    }
    let (_, lhs, rhs) = best.expect("scan is nonempty");
    Ok(Condition5Result { witness_y: None, lhs, rhs, scanned: scan.to_vec() })
}

/// Sampling parameters for [`condition5_sweep`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepConfig {
    pub trials: usize,
    pub max_points: usize,
    pub max_vectors: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { trials: 200, max_points: 4, max_vectors: 3 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub trials: usize,
    pub witnesses: usize,
    pub witness_rate: f64,
    /// Trial indices that found no witness.
    pub failures: Vec<usize>,
}

/// Random trials of [`check_condition5`]: each trial draws `F` (at most
/// `max_points` elements of `candidates`), `n <= max_vectors`, unit `xi`
/// and unit `zeta`. Trial `k` uses its own ChaCha stream, so results depend
/// only on `seed`.
pub fn condition5_sweep<G: Group, T: Real>(
    phi: &OperatorMap<G, T>,
    psi: &OperatorMap<G, T>,
    candidates: &[G::Elem],
    scan: &[G::Elem],
    cfg: SweepConfig,
    seed: u64,
) -> Result<SweepReport> {
    if candidates.is_empty() || cfg.max_points == 0 || cfg.max_vectors == 0 {
        return Err(Error::InvalidArgument("sweep needs candidates, max_points >= 1 and max_vectors >= 1".into()));
    }
    let mut witnesses = 0;
    let mut failures = Vec::new();
    for trial in 0..cfg.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let size = rng.random_range(1..=cfg.max_points.min(candidates.len()));
        let mut idx = sample(&mut rng, candidates.len(), size).into_vec();
        idx.sort_unstable();
        let points: Vec<G::Elem> = idx.into_iter().map(|i| candidates[i].clone()).collect();
        let n = rng.random_range(1..=cfg.max_vectors);
        let xi = VectorFamily::random(points.clone(), n, phi.dim(), &mut rng)?;
        let zeta = VectorFamily::random(points, n, phi.dim(), &mut rng)?;
        if check_condition5(phi, psi, &xi, &zeta, scan)?.witness_y.is_some() {
            witnesses += 1;
        } else {
            failures.push(trial);
        }
    }
    let rate = if cfg.trials == 0 { 1.0 } else { witnesses as f64 / cfg.trials as f64 };
    Ok(SweepReport { trials: cfg.trials, witnesses, witness_rate: rate, failures })
}

/// `y -> phi_F(y)`, the block-diagonal operator on `(C^d)^F` with `x`-block
/// `phi(xy) phi(y)*`.
#[derive(Debug, Clone)]
pub struct PhiF<'a, G: Group, T> {
    phi: &'a OperatorMap<G, T>,
    points: Vec<G::Elem>,
}

pub fn build_phi_f<'a, G: Group, T: Real>(phi: &'a OperatorMap<G, T>, points: &[G::Elem]) -> PhiF<'a, G, T> {
    PhiF { phi, points: points.to_vec() }
}

impl<G: Group, T: Real> PhiF<'_, G, T> {
    pub fn points(&self) -> &[G::Elem] {
        &self.points
    }

    /// The diagonal blocks `phi(xy) phi(y)*`, in the order of `F`.
    pub fn blocks(&self, y: &G::Elem) -> Result<Vec<Operator<T>>> {
        let g = self.phi.group();
        let py_adj = self
            .phi
            .get(y)
            .ok_or_else(|| Error::DomainEscape(format!("{y:?}")))?
            .adjoint();
        self.points
            .iter()
            .map(|x| {
                let xy = g.mul(x, y);
                let pxy = self
                    .phi
                    .get(&xy)
                    .ok_or_else(|| Error::DomainEscape(format!("product of {x:?} and {y:?}")))?;
                Ok(pxy * &py_adj)
            })
            .collect()
    }

    pub fn at(&self, y: &G::Elem) -> Result<Operator<T>> {
        Operator::direct_sum(&self.blocks(y)?)
    }

    /// `||phi_F(y)|| = max_x ||phi(xy) phi(y)*||`
    pub fn norm_at(&self, y: &G::Elem) -> Result<T> {
        Ok(self.blocks(y)?.iter().map(Operator::op_norm).fold(T::zero(), T::max))
    }
}

/// `T = diag(psi(x))_{x in F}`.
pub fn build_t<G: Group, T: Real>(psi: &OperatorMap<G, T>, points: &[G::Elem]) -> Result<Operator<T>> {
    if points.is_empty() {
        return Err(Error::Empty("finite set F"));
    }
    let blocks = points.iter().map(|x| psi.value(x).cloned()).collect::<Result<Vec<_>>>()?;
    Operator::direct_sum(&blocks)
}

/// `x -> phi_1(x) (+) ... (+) phi_n(x)`, i.e. `sum_i U_i phi_i(x) U_i*`.
pub fn embed_direct_sum<G: Group, T: Real>(maps: &[OperatorMap<G, T>]) -> Result<OperatorMap<G, T>> {
    let first = maps.first().ok_or(Error::Empty("map list"))?;
    for m in &maps[1..] {
        if m.domain() != first.domain() {
            return Err(Error::InvalidArgument("direct sum needs identical domains".into()));
        }
    }
    let entries = first
        .domain()
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let blocks: Vec<Operator<T>> = maps.iter().map(|m| m.values()[k].clone()).collect();
            Ok((x.clone(), Operator::direct_sum(&blocks)?))
        })
        .collect::<Result<Vec<_>>>()?;
    OperatorMap::new(first.group().clone(), entries)
}

/// Largest deviation, over `x` and over a battery of test matrices `M`, in
/// `Phi_M(phi(x)* psi(x)) = sum_y mu(y) Phi_M(phi(x)* phi(xy) phi(y)*)` with
/// `psi = average_map(phi, mu)` and `Phi_M(A) = trace(M* A)`. The battery is
/// every matrix unit plus `extra` random Gaussian matrices.
pub fn predual_pairing_defect<G: Group, T: Real, W: Field>(
    phi: &OperatorMap<G, T>,
    mu: &ProbMeasure<G::Elem, W>,
    extra: usize,
    seed: u64,
) -> Result<T> {
    let psi = average_map(phi, mu)?;
    let d = phi.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut battery: Vec<Operator<T>> = Vec::with_capacity(d * d + extra);
    for i in 0..d {
        for j in 0..d {
            let mut m = Operator::zeros(d);
            m[(i, j)] = Complex::new(T::one(), T::zero());
            battery.push(m);
        }
    }
    battery.extend((0..extra).map(|_| Operator::random_gaussian(d, &mut rng)));
    let pair = |m: &Operator<T>, a: &Operator<T>| (&m.adjoint() * a).trace();

    let g = phi.group();
    let mut worst = T::zero();
    for (x, psi_x) in psi.iter() {
        let px_adj = phi.value(x)?.adjoint();
        let lhs_op = &px_adj * psi_x;
        let terms: Vec<(T, Operator<T>)> = mu
            .iter()
            .map(|(y, w)| {
                let inner = phi.value(&g.mul(x, y))? * &phi.value(y)?.adjoint();
                Ok((T::lit(w.to_f64()), &px_adj * &inner))
            })
            .collect::<Result<_>>()?;
        for m in &battery {
            let lhs = pair(m, &lhs_op);
            let rhs = terms
                .iter()
                .fold(Complex::new(T::zero(), T::zero()), |acc, (w, a)| acc + pair(m, a) * *w);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// One radius of a Følner averaging series.
#[derive(Debug, Clone, Serialize)]
pub struct FolnerRow<T> {
    pub radius: usize,
    /// `2 / (2r + 1)`, the l1 shift defect of the averaging box.
    pub shift_defect: f64,
    /// `max_{x in F0} ||psi_next(x) - psi_r(x)||` against the next radius;
    /// absent for the last radius.
    pub step: Option<T>,
    /// Cauchy increment `max_{r' > r} max_{x in F0} ||psi_r'(x) - psi_r(x)||`
    /// over the later radii of the list; absent for the last radius.
    pub increment: Option<T>,
    /// `||phi||^2 * |x|_inf * shift_defect` at the largest `|x|` in `F0`,
    /// which bounds how far `psi_r(x)` moves when the box is recentred at `x`.
    pub translation_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "E: Serialize, T: Real"))]
pub struct FolnerReport<E, T> {
    pub output_domain: Vec<E>,
    pub rows: Vec<FolnerRow<T>>,
    /// Averaged values on `F0` at the largest radius.
    pub final_values: Vec<Operator<T>>,
    /// Asymmetry `max |G - G*|` of the final Gram block.
    pub gram_asymmetry: T,
    /// Smallest eigenvalue of the Hermitian part of the final Gram block.
    pub gram_min_eig: T,
    /// Positive definiteness on the sample; `None` when the Gram block is
    /// not Hermitian within tolerance.
    pub pd: Option<PsdReport<T>>,
}

/// Averages `phi` (defined on a box of `Z^d`) against the Følner boxes
/// `[-r, r]^d` for each `r` in `radii`, and reports Cauchy increments on
/// `f0` plus positivity of the final average on `sample`. The averages are
/// evaluated on `f0` and on all differences of sample points.
pub fn folner_convergence_experiment<T: Real>(
    phi: &OperatorMap<Lattice, T>,
    radii: &[usize],
    f0: &[LatticePoint],
    sample: &[LatticePoint],
    tol: T,
) -> Result<FolnerReport<LatticePoint, T>> {
    if radii.is_empty() || f0.is_empty() {
        return Err(Error::Empty("radii or output domain"));
    }
    let z = phi.group();
    let mut domain: BTreeSet<LatticePoint> = f0.iter().cloned().collect();
    for x in sample {
        for y in sample {
            domain.insert(z.quotient(x, y));
        }
    }
    let domain: Vec<LatticePoint> = domain.into_iter().collect();
    let mut averaged = Vec::with_capacity(radii.len());
    for &r in radii {
        let mu: ProbMeasure<LatticePoint, f64> = folner_box(z.dim(), r)?;
        let psi = average_map_on(phi, &mu, &domain).map_err(|e| match e {
            Error::DomainEscape(what) => Error::DomainEscape(format!("ball too small for radius {r}: {what}")),
            other => other,
        })?;
        averaged.push(psi);
    }
    let reach = f0.iter().map(LatticePoint::sup_norm).max().unwrap_or(0) as f64;
    let bound = phi.uniform_bound().to_f64_lossy();
    let gap = |i: usize, j: usize| {
        f0.iter()
            .map(|x| (averaged[j].value(x).expect("on F0") - averaged[i].value(x).expect("on F0")).op_norm())
            .fold(T::zero(), T::max)
    };
    let rows = radii
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            let shift = 2.0 / (2 * r + 1) as f64;
            let step = (k + 1 < radii.len()).then(|| gap(k, k + 1));
            let increment = (k + 1 < radii.len()).then(|| (k + 1..radii.len()).map(|j| gap(k, j)).fold(T::zero(), T::max));
            FolnerRow { radius: r, shift_defect: shift, step, increment, translation_bound: bound * bound * shift * reach }
        })
        .collect();
    let last = averaged.last().expect("radii nonempty");
    let gram = gram_block(last, sample)?.matrix;
    let asym = gram.hermitian_defect();
    let min = gram.hermitian_part().psd_min_eig(tol)?.min_eigenvalue;
    let pd = gram.psd_min_eig(tol).ok();
    let final_values = f0.iter().map(|x| last.value(x).cloned()).collect::<Result<_>>()?;
    Ok(FolnerReport {
        output_domain: f0.to_vec(),
        rows,
        final_values,
        gram_asymmetry: asym,
        gram_min_eig: min,
        pd,
    })
}

/// The bounded non-representation `k -> e^{i alpha k^2}` on `[-radius, radius]`.
pub fn quadratic_phase_map<T: Real>(alpha: f64, radius: usize) -> Result<OperatorMap<Lattice, T>> {
    let z = Lattice::new(1)?;
    let ball = z.ball(radius)?;
    OperatorMap::from_fn(z, ball, |p| {
        let k = p.0[0] as f64;
        let phase = alpha * k * k;
        Operator::scalar(Complex::new(T::lit(phase.cos()), T::lit(phase.sin())))
    })
}


/// One trial of [`explore_condition4`].
#[derive(Debug, Clone, Serialize)]
pub struct ExplorationTrial {
    pub trial: usize,
    /// `max_x ||phi(x) - psi(x)|| / max_y ||phi(x)phi(y) - phi(xy)||` over
    /// `x` in the ball, `y` restricted to the ball.
    pub worst_ratio: f64,
    pub worst_element: Word,
    /// Smallest eigenvalue of the Hermitian part of the Gram block of `psi`
    /// on the half-radius ball.
    pub gram_min_eig: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition4Exploration {
    pub radius: usize,
    pub dim: usize,
    pub noise: f64,
    pub trials: Vec<ExplorationTrial>,
}

/// Probes the per-element proximity condition on a free-group ball: `phi`
/// is a perturbed unitary representation of `F_2` on `B_2r`, the candidate
/// `psi` its average against the uniform measure on `B_r`. Nothing is
/// asserted; the ratios show how far this candidate is from the bound.
pub fn explore_condition4(radius: usize, dim: usize, noise: f64, trials: usize, seed: u64) -> Result<Condition4Exploration> {
    if radius < 2 || dim == 0 || dim > MAX_MAP_DIM || !(noise >= 0.0) {
        return Err(Error::InvalidArgument("exploration needs radius >= 2, 1 <= dim <= 64, noise >= 0".into()));
    }
    let f2 = FreeGroup::f2();
    let outer = f2.ball(2 * radius)?;
    let inner = f2.ball(radius)?;
    let sample = f2.ball(radius / 2)?;
    let mu: ProbMeasure<Word, f64> = ProbMeasure::uniform(inner.clone())?;
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let gens = [Operator::<f64>::random_unitary(dim, &mut rng), Operator::random_unitary(dim, &mut rng)];
        let entries = outer
            .iter()
            .map(|w| {
                let mut pi = Operator::identity(dim);
                for l in w.letters() {
                    let g = &gens[l.gen as usize];
                    pi = if l.inverse { &pi * &g.adjoint() } else { &pi * g };
                }
                let mut bump = Operator::identity(dim);
                bump.add_scaled(noise, &Operator::random_gaussian(dim, &mut rng));
                let u = bump.polar_unitary().unwrap_or_else(|| Operator::identity(dim));
                (w.clone(), &pi * &u)
            })
            .collect();
        let phi = OperatorMap::new(f2.clone(), entries)?;
        let psi = average_map_on(&phi, &mu, &inner)?;
        let mut worst = (0.0, Word::identity());
        for x in &inner {
            let px = phi.value(x)?;
            let budget = inner
                .iter()
                .map(|y| Ok((&(px * phi.value(y)?) - phi.value(&f2.mul(x, y))?).op_norm()))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            let distance = (px - psi.value(x)?).op_norm();
            let ratio = if budget > 0.0 { distance / budget } else if distance > 0.0 { f64::INFINITY } else { 0.0 };
            if ratio > worst.0 {
                worst = (ratio, x.clone());
            }
        }
        let gram = gram_block(&psi, &sample)?.matrix.hermitian_part();
        let min = gram.psd_min_eig(DEFAULT_PSD_TOL)?.min_eigenvalue;
        out.push(ExplorationTrial { trial, worst_ratio: worst.0, worst_element: worst.1, gram_min_eig: min });
    }
    Ok(Condition4Exploration { radius, dim, noise, trials: out })
}
