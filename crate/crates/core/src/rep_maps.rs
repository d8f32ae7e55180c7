//! Operator-valued maps on groups: unitary representations, their
//! perturbations, multiplicative defects and positive definiteness tests.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, FreeGroup, Group, GroupDescriptor, Lattice};
use crate::operator::{Operator, PsdReport, MAX_MAP_DIM};
use crate::scalar::Real;

/// A map `x -> phi(x)` from a finite domain in a group to operators on `C^d`.
#[derive(Debug, Clone)]
pub struct OperatorMap<G: Group, T> {
    group: G,
    domain: Vec<G::Elem>,
    index: HashMap<G::Elem, usize>,
    values: Vec<Operator<T>>,
    dim: usize,
    bound: T,
}

impl<G: Group, T: Real> OperatorMap<G, T> {
    /// Builds a map from `(element, value)` pairs; the domain keeps the given
    /// order.
    pub fn new(group: G, entries: Vec<(G::Elem, Operator<T>)>) -> Result<Self> {
        let Some(dim) = entries.first().map(|(_, v)| v.dim()) else {
            return Err(Error::Empty("operator map"));
        };
        if dim > MAX_MAP_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let mut index = HashMap::with_capacity(entries.len());
        let mut domain = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        for (x, v) in entries {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
            }
            if index.insert(x.clone(), domain.len()).is_some() {
                return Err(Error::InvalidArgument(format!("element {x:?} listed twice")));
            }
            domain.push(x);
            values.push(v);
        }
        let bound = values.iter().map(Operator::op_norm).fold(T::zero(), T::max);
        Ok(OperatorMap { group, domain, index, values, dim, bound })
    }

    pub fn from_fn(group: G, domain: Vec<G::Elem>, f: impl Fn(&G::Elem) -> Operator<T>) -> Result<Self> {
        let entries = domain.into_iter().map(|x| {
            let v = f(&x);
            (x, v)
        });
        Self::new(group, entries.collect())
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn domain(&self) -> &[G::Elem] {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `sup_x ||phi(x)||` over the domain.
    pub fn uniform_bound(&self) -> T {
        self.bound
    }

    pub fn contains(&self, x: &G::Elem) -> bool {
        self.index.contains_key(x)
    }

    pub fn get(&self, x: &G::Elem) -> Option<&Operator<T>> {
        self.index.get(x).map(|&i| &self.values[i])
    }

    pub fn value(&self, x: &G::Elem) -> Result<&Operator<T>> {
        self.get(x).ok_or_else(|| Error::DomainEscape(format!("{x:?}")))
    }

    pub fn values(&self) -> &[Operator<T>] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&G::Elem, &Operator<T>)> {
        self.domain.iter().zip(&self.values)
    }

    /// `true` when every value is unitary within `tol`.
    pub fn is_unitary(&self, tol: T) -> bool {
        self.values.iter().all(|v| v.unitarity_defect() <= tol)
    }

    /// `phi(e) = I` within `tol`.
    pub fn is_unital(&self, tol: T) -> bool {
        self.get(&self.group.identity())
            .is_some_and(|v| v.max_abs_diff(&Operator::identity(self.dim)) <= tol)
    }

    /// Applies `f` valuewise, keeping the domain.
    pub fn map_values(&self, f: impl Fn(&Operator<T>) -> Operator<T>) -> Result<Self> {
        Self::new(self.group.clone(), self.iter().map(|(x, v)| (x.clone(), f(v))).collect())
    }

    /// `U_i* phi(x) U_i` for the coordinate slot `offset..offset+len`.
    pub fn compress(&self, offset: usize, len: usize) -> Result<Self> {
        let entries = self
            .iter()
            .map(|(x, v)| Ok((x.clone(), v.compress(offset, len)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.group.clone(), entries)
    }

    /// Largest `||phi(x) - psi(x)||` over a shared domain.
    pub fn max_distance(&self, other: &Self) -> Result<T> {
        proximity(self, other)
    }
}

/// Raw file shape `{group, dim, entries: [{element, operator}]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile<E, O> {
    group: GroupDescriptor,
    dim: usize,
    entries: Vec<MapEntry<E, O>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapEntry<E, O> {
    element: E,
    operator: O,
}

impl<G: Group, T: Real> Serialize for OperatorMap<G, T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapFile {
            group: self.group.descriptor(),
            dim: self.dim,
            entries: self
                .iter()
                .map(|(x, v)| MapEntry { element: x.clone(), operator: v.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

/// An operator map over whichever group family a file describes.
#[derive(Debug, Clone)]
pub enum AnyOperatorMap<T> {
    Finite(OperatorMap<FiniteGroup, T>),
    Free(OperatorMap<FreeGroup, T>),
    Lattice(OperatorMap<Lattice, T>),
}

impl<T: Real> AnyOperatorMap<T> {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MapFile<serde_json::Value, Operator<T>> = serde_json::from_str(text)?;
        let handle = raw.group.build()?;
        fn typed<G: Group, T: Real>(g: G, raw: MapFile<serde_json::Value, Operator<T>>) -> Result<OperatorMap<G, T>> {
            let dim = raw.dim;
            let entries = raw
                .entries
                .into_iter()
                .map(|e| Ok((serde_json::from_value::<G::Elem>(e.element)?, e.operator)))
                .collect::<Result<Vec<_>>>()?;
            let map = OperatorMap::new(g, entries)?;
            if map.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: map.dim() });
            }
            Ok(map)
        }
        use crate::group::GroupHandle;
        Ok(match handle {
            GroupHandle::Finite(g) => {
                let m = typed(g, raw)?;
                if let Some(bad) = m.domain().iter().find(|&&x| x >= m.group().order()) {
                    return Err(Error::ElementOutOfRange { element: *bad, order: m.group().order() });
                }
                AnyOperatorMap::Finite(m)
            }
            GroupHandle::Free(g) => {
                let m = typed(g, raw)?;
                for w in m.domain() {
                    g.validate(w)?;
                }
                AnyOperatorMap::Free(m)
            }
            GroupHandle::Lattice(g) => {
                let m = typed(g, raw)?;
                for p in m.domain() {
                    g.validate(p)?;
                }
                AnyOperatorMap::Lattice(m)
            }
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(match self {
            AnyOperatorMap::Finite(m) => serde_json::to_string_pretty(m)?,
            AnyOperatorMap::Free(m) => serde_json::to_string_pretty(m)?,
            AnyOperatorMap::Lattice(m) => serde_json::to_string_pretty(m)?,
        })
    }

    /// Values in domain order.
    pub fn values(&self) -> &[Operator<T>] {
        match self {
            AnyOperatorMap::Finite(m) => m.values(),
            AnyOperatorMap::Free(m) => m.values(),
            AnyOperatorMap::Lattice(m) => m.values(),
        }
    }

    /// Domain elements rendered as JSON values, in domain order.
    pub fn labels(&self) -> Vec<serde_json::Value> {
        fn go<G: Group, T: Real>(m: &OperatorMap<G, T>) -> Vec<serde_json::Value> {
            m.domain().iter().map(|x| serde_json::to_value(x).unwrap_or_default()).collect()
        }
        match self {
            AnyOperatorMap::Finite(m) => go(m),
            AnyOperatorMap::Free(m) => go(m),
            AnyOperatorMap::Lattice(m) => go(m),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyOperatorMap::Finite(m) => m.dim(),
            AnyOperatorMap::Free(m) => m.dim(),
            AnyOperatorMap::Lattice(m) => m.dim(),
        }
    }
}

/// Left regular representation of a finite group on `C^|G|`:
/// `pi(x) e_y = e_{xy}`.
pub fn regular_representation<T: Real>(g: &FiniteGroup) -> Result<OperatorMap<FiniteGroup, T>> {
    let n = g.order();
    if n > MAX_MAP_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    let one = Complex::new(T::one(), T::zero());
    OperatorMap::from_fn(g.clone(), (0..n).collect(), |&x| {
        let mut m = Operator::zeros(n);
        for y in 0..n {
            m[(g.mul(&x, &y), y)] = one;
        }
        m
    })
}

/// Which pairs `(x, y)` a defect scan visits.
#[derive(Debug, Clone)]
pub enum PairScan<E> {
    /// All pairs of domain elements.
    Domain,
    /// All pairs drawn from the given elements.
    Within(Vec<E>),
    Pairs(Vec<(E, E)>),
}

/// Result of a multiplicative defect scan.
#[derive(Debug, Clone, Serialize)]
pub struct DefectReport<E, T> {
    /// `max ||phi(xy) - phi(x) phi(y)||` over the scanned pairs.
    pub epsilon: T,
    pub argmax_pair: Option<(E, E)>,
    pub pairs_scanned: usize,
    pub pairs_excluded: usize,
    pub domain_note: String,
}

/// Multiplicative defect of `phi`. Pairs whose product leaves the domain
/// are skipped and counted in the report. Ties keep the first pair in scan
/// order.
pub fn defect<G: Group, T: Real>(phi: &OperatorMap<G, T>, scan: &PairScan<G::Elem>) -> Result<DefectReport<G::Elem, T>> {
    let pairs: Vec<(G::Elem, G::Elem)> = match scan {
        PairScan::Domain => cartesian(phi.domain()),
        PairScan::Within(els) => cartesian(els),
        PairScan::Pairs(p) => p.clone(),
    };
    let g = phi.group();
    let mut best = T::zero();
    let mut arg = None;
    let mut scanned = 0;
    let mut excluded = 0;
    let mut first_excluded = None;
    for (x, y) in pairs {
        let xy = g.mul(&x, &y);
        let (Some(px), Some(py), Some(pxy)) = (phi.get(&x), phi.get(&y), phi.get(&xy)) else {
            excluded += 1;
            first_excluded.get_or_insert_with(|| (x.clone(), y.clone()));
            continue;
        };
        scanned += 1;
        let e = (pxy - &(px * py)).op_norm();
        if arg.is_none() || e > best {
            best = e;
            arg = Some((x, y));
        }
    }
    let mut note = format!("{scanned} pairs scanned");
    if excluded > 0 {
        let _ = write!(
            note,
            "; {excluded} pairs excluded because the product leaves the domain (first: {:?})",
            first_excluded.expect("recorded")
        );
    }
    Ok(DefectReport { epsilon: best, argmax_pair: arg, pairs_scanned: scanned, pairs_excluded: excluded, domain_note: note })
}

fn cartesian<E: Clone>(els: &[E]) -> Vec<(E, E)> {
    els.iter().flat_map(|x| els.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

/// An epsilon-representation manufactured from a unitary representation.
#[derive(Debug, Clone)]
pub struct Perturbed<G: Group, T> {
    pub map: OperatorMap<G, T>,
    /// Measured defect over the full domain scan; never above the target.
    pub defect: T,
    /// Calibration constant multiplying the noise.
    pub scale: T,
}

/// Perturbs every non-identity value of the unitary map `pi` by
/// `scale * target_eps * R_x / ||R_x||` (Gaussian `R_x` drawn from `seed`)
/// and re-unitarises by polar projection. `scale` is bisected until the
/// measured defect lands in `[0.5, 1] * target_eps`; if that window cannot be
/// hit, the largest achieved defect not exceeding the target is returned.
pub fn perturb_representation<G: Group, T: Real>(
    pi: &OperatorMap<G, T>,
    target_eps: T,
    seed: u64,
) -> Result<Perturbed<G, T>> {
    if !(target_eps >= T::zero() && target_eps < T::one()) {
        return Err(Error::InvalidArgument("target defect must lie in [0, 1)".into()));
    }
    if !pi.is_unitary(T::lit(1e-8)) {
        return Err(Error::InvalidArgument("perturbation needs a unitary-valued map".into()));
    }
    let id = pi.group().identity();
    let dim = pi.dim();
    let base = pi.map_values(|v| v.clone())?;
    let base = OperatorMap::new(
        base.group().clone(),
        base.iter()
            .map(|(x, v)| (x.clone(), if *x == id { Operator::identity(dim) } else { v.clone() }))
            .collect(),
    )?;
    if target_eps == T::zero() {
        return Ok(Perturbed { map: base, defect: T::zero(), scale: T::zero() });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise: Vec<Operator<T>> = pi
        .domain()
        .iter()
        .map(|_| {
            let r = Operator::random_gaussian(dim, &mut rng);
            let n = r.op_norm();
            r.scale_real(T::one() / n)
        })
        .collect();

    let build = |scale: T| -> Option<OperatorMap<G, T>> {
        let step = scale * target_eps;
        let mut entries = Vec::with_capacity(base.domain().len());
        for ((x, v), r) in base.iter().zip(&noise) {
            let value = if *x == id {
                Operator::identity(dim)
            } else {
                let mut a = v.clone();
                a.add_scaled(step, r);
                a.polar_unitary()?
            };
            entries.push((x.clone(), value));
        }
        OperatorMap::new(base.group().clone(), entries).ok()
    };
    let measure = |m: &OperatorMap<G, T>| defect(m, &PairScan::Domain).map(|r| r.epsilon);

    let lower = target_eps * T::lit(0.5);
    let mut best = Perturbed { map: base.clone(), defect: measure(&base)?, scale: T::zero() };
    if best.defect > target_eps {
        return Err(Error::InvalidArgument("input map already exceeds the target defect".into()));
    }
    let (mut lo, mut hi) = (T::zero(), None::<T>);
    let mut scale = T::one();
    for _ in 0..80 {
        let (ok, eps) = match build(scale) {
            Some(m) => {
                let eps = measure(&m)?;
                if eps <= target_eps && eps >= best.defect {
                    best = Perturbed { map: m, defect: eps, scale };
                }
                (true, eps)
            }
            None => (false, T::infinity()),
        };
        if ok && eps <= target_eps && eps >= lower {
            break;
        }
        if eps > target_eps {
            hi = Some(scale);
        } else {
            lo = scale;
        }
        scale = match hi {
            Some(h) => (lo + h) / T::lit(2.0),
            None if scale < T::lit(1024.0) => scale * T::lit(2.0),
            None => break,
        };
    }
    Ok(best)
}

/// The block Gram matrix `[psi(x_i^-1 x_j)]_{ij}` of a sample.
#[derive(Debug, Clone)]
pub struct GramBlock<E, T> {
    pub sample: Vec<E>,
    pub matrix: Operator<T>,
}

pub fn gram_block<G: Group, T: Real>(psi: &OperatorMap<G, T>, sample: &[G::Elem]) -> Result<GramBlock<G::Elem, T>> {
    if sample.is_empty() {
        return Err(Error::Empty("sample"));
    }
    let g = psi.group();
    let d = psi.dim();
    let n = sample.len();
    let mut m = Operator::zeros(n * d);
    for (i, xi) in sample.iter().enumerate() {
        for (j, xj) in sample.iter().enumerate() {
            let q = g.quotient(xi, xj);
            let block = psi
                .get(&q)
                .ok_or_else(|| Error::DomainEscape(format!("quotient {xi:?}^-1 {xj:?} = {q:?}")))?;
            for a in 0..d {
                for b in 0..d {
                    m[(i * d + a, j * d + b)] = block[(a, b)];
                }
            }
        }
    }
    Ok(GramBlock { sample: sample.to_vec(), matrix: m })
}

/// Positive definiteness of `psi` on a sample: the smallest eigenvalue of
/// the block Gram matrix. A Gram matrix that is not Hermitian is rejected
/// ([`Error::NotHermitian`]); such a map is not positive definite.
pub fn pd_defect<G: Group, T: Real>(psi: &OperatorMap<G, T>, sample: &[G::Elem], tol: T) -> Result<PsdReport<T>> {
    gram_block(psi, sample)?.matrix.psd_min_eig(tol)
}

/// `sup_x ||phi(x) - psi(x)||` over the domain of `phi`.
pub fn proximity<G: Group, T: Real>(phi: &OperatorMap<G, T>, psi: &OperatorMap<G, T>) -> Result<T> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch { expected: phi.dim(), found: psi.dim() });
    }
    let mut sup = T::zero();
    for (x, a) in phi.iter() {
        let b = psi.value(x)?;
        sup = sup.max((a - b).op_norm());
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn z2_scalar(theta: f64) -> OperatorMap<FiniteGroup, f64> {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        OperatorMap::new(
            z2,
            vec![
                (0, Operator::scalar(Complex::new(1.0, 0.0))),
                (1, Operator::scalar(Complex::from_polar(1.0, theta))),
            ],
        )
        .unwrap()
    }

    fn z2_real(v0: f64, v1: f64) -> OperatorMap<FiniteGroup, f64> {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        OperatorMap::new(
            z2,
            vec![(0, Operator::scalar(Complex::new(v0, 0.0))), (1, Operator::scalar(Complex::new(v1, 0.0)))],
        )
        .unwrap()
    }

    #[test]
    fn regular_representation_examples() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let pi = regular_representation::<f64>(&z2).unwrap();
        assert_eq!(pi.value(&1).unwrap(), &Operator::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap());
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let pi6 = regular_representation::<f64>(&z6).unwrap();
        assert_eq!(defect(&pi6, &PairScan::Domain).unwrap().epsilon, 0.0);
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let pi3 = regular_representation::<f64>(&z3).unwrap();
        let p = pi3.value(&1).unwrap();
        assert_eq!(&(p * p) * p, Operator::identity(3));
        for g in [FiniteGroup::symmetric(3).unwrap(), FiniteGroup::dihedral(4).unwrap()] {
            let pi = regular_representation::<f64>(&g).unwrap();
            assert_eq!(defect(&pi, &PairScan::Domain).unwrap().epsilon, 0.0);
            assert!(pi.is_unitary(0.0));
        }
        assert!(regular_representation::<f64>(&FiniteGroup::cyclic(65).unwrap()).is_err());
    }

    #[test]
    fn scalar_defects() {
        // |1 - e^{2 i theta}| = 2 |sin theta|
        let r = defect(&z2_scalar(PI / 6.0), &PairScan::Domain).unwrap();
        assert!((r.epsilon - 1.0).abs() < 1e-12);
        assert_eq!(r.argmax_pair, Some((1, 1)));
        let r = defect(&z2_scalar(PI / 4.0), &PairScan::Domain).unwrap();
        assert!((r.epsilon - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn defect_equals_condition4_supremum() {
        let phi = z2_scalar(0.3);
        let g = phi.group().clone();
        let by_x = (0..2usize)
            .map(|x| {
                (0..2usize)
                    .map(|y| (&(phi.value(&x).unwrap() * phi.value(&y).unwrap()) - phi.value(&g.mul(&x, &y)).unwrap()).op_norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        assert_eq!(defect(&phi, &PairScan::Domain).unwrap().epsilon, by_x);
    }

    #[test]
    fn defect_scan_on_ball_records_truncation() {
        let z = Lattice::new(1).unwrap();
        let ball = z.ball(2).unwrap();
        let phi = OperatorMap::<_, f64>::from_fn(z, ball, |p| {
            Operator::scalar(Complex::from_polar(1.0, 0.1 * (p.0[0] * p.0[0]) as f64))
        })
        .unwrap();
        let r = defect(&phi, &PairScan::Domain).unwrap();
        assert!(r.pairs_excluded > 0);
        assert_eq!(r.pairs_scanned + r.pairs_excluded, 25);
        assert!(r.domain_note.contains("excluded"));
    }

    #[test]
    fn pd_examples() {
        let theta = 0.7f64;
        let r = pd_defect(&z2_real(1.0, theta.cos()), &[0, 1], 1e-9).unwrap();
        assert!((r.min_eigenvalue - (1.0 - theta.cos().abs())).abs() < 1e-12 && r.verdict);
        let r = pd_defect(&z2_real(1.0, 1.5), &[0, 1], 1e-9).unwrap();
        assert!((r.min_eigenvalue + 0.5).abs() < 1e-12 && !r.verdict);
        let g = FiniteGroup::dihedral(3).unwrap();
        let pi = regular_representation::<f64>(&g).unwrap();
        let r = pd_defect(&pi, &[0, 2, 3, 5], 1e-9).unwrap();
        assert!(r.verdict);
        // e^{i theta} on Z_2 is not Hermitian, so not positive definite
        assert!(matches!(pd_defect(&z2_scalar(0.5), &[0, 1], 1e-9), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn pd_scaling_and_interlacing() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let psi = OperatorMap::<_, f64>::from_fn(g, (0..5).collect(), |&k| {
            Operator::scalar(Complex::new(if k == 0 { 1.0 } else { 0.6 }, 0.0))
        })
        .unwrap();
        let small = pd_defect(&psi, &[0, 1], 1e-9).unwrap();
        let large = pd_defect(&psi, &[0, 1, 2, 3], 1e-9).unwrap();
        assert!(large.min_eigenvalue <= small.min_eigenvalue + 1e-9);
        let scaled = psi.map_values(|v| v.scale_real(3.0)).unwrap();
        assert_eq!(pd_defect(&scaled, &[0, 1, 2, 3], 1e-9).unwrap().verdict, large.verdict);
    }

    #[test]
    fn proximity_examples() {
        let theta = 0.4f64;
        let phi = z2_scalar(theta);
        assert_eq!(proximity(&phi, &phi).unwrap(), 0.0);
        let psi = z2_real(1.0, theta.cos());
        assert!((proximity(&phi, &psi).unwrap() - theta.sin()).abs() < 1e-12);
        let big = regular_representation::<f64>(&FiniteGroup::cyclic(2).unwrap()).unwrap();
        assert!(matches!(proximity(&phi, &big), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn perturbation_hits_window_and_is_deterministic() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let pi = regular_representation::<f64>(&g).unwrap();
        let zero = perturb_representation(&pi, 0.0, 1).unwrap();
        assert_eq!(proximity(&zero.map, &pi).unwrap(), 0.0);
        for eps in [0.01, 0.05, 0.1, 0.5] {
            let p = perturb_representation(&pi, eps, 7).unwrap();
            assert!(p.defect <= eps && p.defect >= 0.5 * eps, "eps {eps}: {}", p.defect);
            assert!(p.map.is_unitary(1e-10));
            assert!(p.map.is_unital(0.0));
            let again = perturb_representation(&pi, eps, 7).unwrap();
            assert_eq!(again.map.values(), p.map.values());
        }
        assert!(perturb_representation(&pi, 1.0, 1).is_err());
    }

    #[test]
    fn map_json_round_trip() {
        let phi = z2_scalar(0.25);
        let text = serde_json::to_string(&phi).unwrap();
        let back = AnyOperatorMap::<f64>::from_json(&text).unwrap();
        let AnyOperatorMap::Finite(m) = back else { panic!("expected finite map") };
        assert_eq!(m.values(), phi.values());
        let bad = text.replace("\"element\":1", "\"element\":5");
        assert!(AnyOperatorMap::<f64>::from_json(&bad).is_err());
    }
}
