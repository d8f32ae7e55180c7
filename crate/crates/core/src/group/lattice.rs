use serde::{Deserialize, Serialize};

use super::{check_cap, Group, GroupDescriptor, ProbMeasure};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A point of `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    /// The `axis`-th standard basis vector.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![0; dim];
        v[axis] = 1;
        LatticePoint(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sup_norm(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }
}

impl From<i64> for LatticePoint {
    fn from(k: i64) -> Self {
        LatticePoint(vec![k])
    }
}

/// The additive group `Z^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
}

impl Lattice {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("lattice dimension must be >= 1".into()));
        }
        Ok(Lattice { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn validate(&self, p: &LatticePoint) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        Ok(())
    }

    /// Unit vectors `e_1, ..., e_d`.
    pub fn generators(&self) -> Vec<LatticePoint> {
        (0..self.dim).map(|i| LatticePoint::unit(self.dim, i)).collect()
    }

    fn box_size(&self, r: usize) -> usize {
        (2 * r + 1).checked_pow(self.dim as u32).unwrap_or(usize::MAX)
    }

    /// The box `[-r, r]^d` in lexicographic order.
    pub fn ball(&self, r: usize) -> Result<Vec<LatticePoint>> {
        check_cap(self.box_size(r))?;
        let r = r as i64;
        let mut out = vec![Vec::with_capacity(self.dim)];
        for _ in 0..self.dim {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (-r..=r).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(LatticePoint).collect())
    }
}

impl Group for Lattice {
    type Elem = LatticePoint;

    fn identity(&self) -> LatticePoint {
        LatticePoint::origin(self.dim)
    }

    fn mul(&self, x: &LatticePoint, y: &LatticePoint) -> LatticePoint {
        LatticePoint(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
    }

    fn inv(&self, x: &LatticePoint) -> LatticePoint {
        LatticePoint(x.0.iter().map(|a| -a).collect())
    }

    fn elements(&self) -> Option<Vec<LatticePoint>> {
        None
    }

    fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor::Lattice { dim: self.dim }
    }
}

/// Uniform probability measure on the box `[-r, r]^d`.
pub fn folner_box<W: Field>(dim: usize, r: usize) -> Result<ProbMeasure<LatticePoint, W>> {
    let lattice = Lattice::new(dim)?;
    ProbMeasure::uniform(lattice.ball(r)?)
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;

    #[test]
    fn box_enumeration() {
        let z2 = Lattice::new(2).unwrap();
        let b = z2.ball(1).unwrap();
        assert_eq!(b.len(), 9);
        assert_eq!(b[0], LatticePoint(vec![-1, -1]));
        assert_eq!(b[4], LatticePoint::origin(2));
        assert!(b.windows(2).all(|p| p[0] < p[1]));
        assert!(b.iter().all(|p| p.sup_norm() <= 1));
    }

    #[test]
    fn folner_box_weights() {
        let mu: ProbMeasure<LatticePoint, f64> = folner_box(1, 1).unwrap();
        assert_eq!(mu.len(), 3);
        for (_, w) in mu.iter() {
            assert!((w - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn folner_shift_defect_is_exact() {
        // |B Δ (B + e_1)| = 2 (2r+1)^{d-1}, so the l1 defect is 2 / (2r + 1).
        for d in 1..=3 {
            let z = Lattice::new(d).unwrap();
            for r in 0..=3usize {
                let mu: ProbMeasure<LatticePoint, Rational64> = folner_box(d, r).unwrap();
                for g in z.generators() {
                    let shifted = mu.translate(&z, &g);
                    assert_eq!(shifted.l1_distance(&mu), Rational64::new(2, 2 * r as i64 + 1));
                }
            }
        }
        let z2 = Lattice::new(2).unwrap();
        let mu: ProbMeasure<LatticePoint, f64> = folner_box(2, 2).unwrap();
        assert!((mu.translate(&z2, &LatticePoint::unit(2, 0)).l1_distance(&mu) - 0.4).abs() < 1e-12);
        let delta: ProbMeasure<LatticePoint, f64> = folner_box(1, 0).unwrap();
        let z1 = Lattice::new(1).unwrap();
        assert_eq!(delta.translate(&z1, &LatticePoint::from(1)).l1_distance(&delta), 2.0);
    }

    #[test]
    fn lattice_cap() {
        let z3 = Lattice::new(3).unwrap();
        assert!(matches!(z3.ball(100), Err(Error::TooManyElements { .. })));
    }
}
