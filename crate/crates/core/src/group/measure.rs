use std::collections::{BTreeMap, HashSet};
use std::hash::Hash;

use num_traits::Zero;
use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use super::Group;
use crate::error::{Error, Result};
use crate::scalar::{field_sum, is_unit_mass, Field};

/// A finitely supported probability measure on a group.
///
/// The weight type defaults to `f64`; exact rationals are supported for
/// identities that should hold without rounding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbMeasure<E, W = f64> {
    support: Vec<E>,
    weights: Vec<W>,
}

impl<E: Clone + Eq + Hash + Ord, W: Field> ProbMeasure<E, W> {
    /// Validates distinct support, nonnegative weights and unit total mass.
    pub fn new(support: Vec<E>, weights: Vec<W>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::Empty("measure support"));
        }
        if support.len() != weights.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} support points but {} weights",
                support.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidMeasure("negative weight".into()));
        }
        let total = field_sum(&weights);
        if !is_unit_mass(&total) {
            return Err(Error::InvalidMeasure(format!("total mass {} != 1", total.to_f64())));
        }
        let mut seen = HashSet::with_capacity(support.len());
        if !support.iter().all(|e| seen.insert(e)) {
            return Err(Error::InvalidMeasure("repeated support element".into()));
        }
        Ok(ProbMeasure { support, weights })
    }

    pub fn uniform(support: Vec<E>) -> Result<Self> {
        let n = support.len();
        if n == 0 {
            return Err(Error::Empty("measure support"));
        }
        let w = W::from_ratio(1, n as i64);
        Self::new(support, vec![w; n])
    }

    pub fn point_mass(e: E) -> Self {
        ProbMeasure { support: vec![e], weights: vec![W::one()] }
    }

    /// Left translate `s mu`, i.e. `(s mu)(z) = mu(s^-1 z)`.
    pub fn translate<G: Group<Elem = E>>(&self, group: &G, s: &E) -> Self {
        ProbMeasure {
            support: self.support.iter().map(|y| group.mul(s, y)).collect(),
            weights: self.weights.clone(),
        }
    }

    /// `sum_z |mu(z) - nu(z)|`
    pub fn l1_distance(&self, other: &Self) -> W {
        let mut diff: BTreeMap<&E, W> = BTreeMap::new();
        for (e, w) in self.iter() {
            *diff.entry(e).or_insert_with(W::zero) += w.clone();
        }
        for (e, w) in other.iter() {
            *diff.entry(e).or_insert_with(W::zero) -= w.clone();
        }
        diff.into_values().fold(W::zero(), |acc, v| acc + v.abs())
    }

    /// Mass of the set described by `pred`.
    pub fn mass_where(&self, mut pred: impl FnMut(&E) -> bool) -> W {
        self.iter()
            .filter(|(e, _)| pred(e))
            .fold(W::zero(), |acc, (_, w)| acc + w.clone())
    }

    pub fn weight_of(&self, e: &E) -> W {
        self.support
            .iter()
            .position(|s| s == e)
            .map_or_else(W::zero, |i| self.weights[i].clone())
    }
}

impl<E, W> ProbMeasure<E, W> {
    pub fn support(&self) -> &[E] {
        &self.support
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&E, &W)> {
        self.support.iter().zip(&self.weights)
    }
}

impl<E: Clone + Eq + Hash + Ord> ProbMeasure<E, f64> {
    /// Dirichlet(1, ..., 1) random measure on `support`.
    pub fn dirichlet<R: Rng + ?Sized>(support: Vec<E>, rng: &mut R) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::Empty("measure support"));
        }
        let draws: Vec<f64> = support.iter().map(|_| Exp1.sample(rng)).collect();
        let total: f64 = draws.iter().sum();
        let weights: Vec<f64> = draws.into_iter().map(|x| x / total).collect();
        // renormalising once more keeps the sum within rounding of 1
        let s: f64 = weights.iter().sum();
        Self::new(support, weights.into_iter().map(|w| w / s).collect())
    }

    /// Drops support points with zero weight.
    pub fn pruned(&self) -> Self {
        let (support, weights) = self
            .iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(e, w)| (e.clone(), *w))
            .unzip();
        ProbMeasure { support, weights }
    }
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn validation() {
        assert!(ProbMeasure::<usize, f64>::new(vec![0, 1], vec![0.5, 0.5]).is_ok());
        assert!(ProbMeasure::<usize, f64>::new(vec![0, 0], vec![0.5, 0.5]).is_err());
        assert!(ProbMeasure::<usize, f64>::new(vec![0, 1], vec![0.6, 0.5]).is_err());
        assert!(ProbMeasure::<usize, f64>::new(vec![0, 1], vec![1.5, -0.5]).is_err());
        assert!(ProbMeasure::<usize, f64>::new(vec![], vec![]).is_err());
        assert!(ProbMeasure::<usize, Rational64>::new(
            vec![0, 1, 2],
            vec![Rational64::new(1, 3); 3]
        )
        .is_ok());
    }

    #[test]
    fn uniform_on_finite_group_is_invariant() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let mu: ProbMeasure<usize, Rational64> = ProbMeasure::uniform((0..6).collect()).unwrap();
        for s in 0..6 {
            assert!(mu.translate(&g, &s).l1_distance(&mu).is_zero());
        }
    }

    #[test]
    fn dirichlet_is_a_probability_measure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mu = ProbMeasure::dirichlet((0..50usize).collect(), &mut rng).unwrap();
        let total: f64 = mu.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(mu.weights().iter().all(|&w| w >= 0.0));
    }
}
