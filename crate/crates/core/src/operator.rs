//! Dense complex matrices acting on `C^d`, the finite-dimensional model of
//! bounded operators on a Hilbert space.
//!
//! The inner product is linear in the first slot and conjugate-linear in the
//! second: `<x, y> = sum_i x_i conj(y_i)`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::eigen::{hermitian_eigenvalues, hermitian_function};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest Hilbert-space dimension accepted for operator maps.
pub const MAX_MAP_DIM: usize = 64;

/// Default tolerance for positivity verdicts.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// Asymmetry beyond which `psd_min_eig` refuses its input.
pub const HERMITIAN_TOL: f64 = 1e-6;

pub type CVec<T> = Vec<Complex<T>>;

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// `<x, y>`, conjugate-linear in `y`.
pub fn inner<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Complex<T> {
    x.iter().zip(y).fold(czero(), |acc, (a, b)| acc + a * b.conj())
}

pub fn norm_sqr<T: Real>(x: &[Complex<T>]) -> T {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// `||x - y||^2`
pub fn dist_sqr<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> T {
    x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum()
}

/// Standard complex Gaussian vector.
pub fn random_vector<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVec<T> {
    (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect()
}

/// Uniformly random unit vector.
pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVec<T> {
    loop {
        let v = random_vector::<T, R>(dim, rng);
        let n = norm_sqr(&v).sqrt();
        if n > T::lit(1e-6) {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// Evidence object for a positive semidefiniteness check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdReport<T> {
    pub min_eigenvalue: T,
    pub tolerance: T,
    pub verdict: bool,
}

impl<T: Real> PsdReport<T> {
    pub fn new(min_eigenvalue: T, tolerance: T) -> Self {
        PsdReport { min_eigenvalue, tolerance, verdict: min_eigenvalue >= -tolerance }
    }
}

/// A `d x d` complex matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Operator<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be positive");
        Operator { dim, data: vec![czero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar_identity(dim, Complex::new(T::one(), T::zero()))
    }

    pub fn scalar_identity(dim: usize, c: Complex<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = c;
        }
        m
    }

    /// Builds from row-major entries, checking shape and finiteness.
    pub fn from_entries(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty("operator"));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Operator { dim, data })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Real matrix from rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            data.extend(row.iter().map(|&x| Complex::new(T::lit(x), T::zero())));
        }
        Self::from_entries(dim, data)
    }

    pub fn diag(entries: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// `1 x 1` operator.
    pub fn scalar(z: Complex<T>) -> Self {
        Operator { dim: 1, data: vec![z] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Operator { dim: self.dim, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn scale_real(&self, c: T) -> Self {
        Operator { dim: self.dim, data: self.data.iter().map(|z| z * c).collect() }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: T, other: &Self) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * c;
        }
    }

    pub fn apply(&self, x: &[Complex<T>]) -> CVec<T> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(x)
                    .fold(czero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    pub fn frobenius_norm(&self) -> T {
        norm_sqr(&self.data).sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Operator norm (largest singular value).
    pub fn op_norm(&self) -> T {
        if self.dim == 1 {
            return self.data[0].norm();
        }
        let gram = &self.adjoint() * self;
        let top = *hermitian_eigenvalues(gram.entries(), self.dim).last().expect("nonempty spectrum");
        top.max(T::zero()).sqrt()
    }

    /// `max |A - A*|` entrywise.
    pub fn hermitian_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// `(A + A*) / 2`
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    /// Smallest eigenvalue of the symmetrised operator with a verdict at
    /// tolerance `tol`. Inputs whose asymmetry exceeds `1e-6` (relative to
    /// the largest entry when that exceeds one) are rejected.
    pub fn psd_min_eig(&self, tol: T) -> Result<PsdReport<T>> {
        let scale = self.data.iter().map(|z| z.norm()).fold(T::one(), T::max);
        let asym = self.hermitian_defect();
        if asym > T::lit(HERMITIAN_TOL) * scale {
            return Err(Error::NotHermitian(asym.to_f64_lossy()));
        }
        let h = self.hermitian_part();
        let min = hermitian_eigenvalues(h.entries(), self.dim)[0];
        Ok(PsdReport::new(min, tol))
    }

    /// `max |U*U - I|` entrywise.
    pub fn unitarity_defect(&self) -> T {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim))
    }

    /// Unitary factor `A (A*A)^{-1/2}` of the polar decomposition. `None`
    /// when `A` is numerically singular.
    pub fn polar_unitary(&self) -> Option<Self> {
        let gram = &self.adjoint() * self;
        let ev = hermitian_eigenvalues(gram.entries(), self.dim);
        if ev[0] <= T::epsilon() * T::lit(1e3) * ev[ev.len() - 1].max(T::one()) {
            return None;
        }
        let inv_sqrt = hermitian_function(gram.entries(), self.dim, |l| T::one() / l.sqrt());
        let inv_sqrt = Operator { dim: self.dim, data: inv_sqrt };
        Some(self * &inv_sqrt)
    }

    /// Matrix of i.i.d. standard complex Gaussian entries.
    pub fn random_gaussian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        Operator { dim, data: random_vector(dim * dim, rng) }
    }

    /// Random unitary: polar factor of a Gaussian matrix.
    pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            if let Some(u) = Self::random_gaussian(dim, rng).polar_unitary() {
                return u;
            }
        }
    }

    /// Flattens into `R^(2 d^2)` (real parts then imaginary parts), an
    /// isometry for the Frobenius inner product.
    pub fn vectorize(&self) -> Vec<T> {
        self.data.iter().map(|z| z.re).chain(self.data.iter().map(|z| z.im)).collect()
    }

    pub fn from_vectorized(dim: usize, v: &[T]) -> Result<Self> {
        let n = dim * dim;
        if v.len() != 2 * n {
            return Err(Error::DimensionMismatch { expected: 2 * n, found: v.len() });
        }
        Self::from_entries(dim, (0..n).map(|k| Complex::new(v[k], v[n + k])).collect())
    }

    /// Block-diagonal sum of `blocks`.
    pub fn direct_sum(blocks: &[Self]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Empty("direct sum"));
        }
        let total: usize = blocks.iter().map(Operator::dim).sum();
        let mut out = Self::zeros(total);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    out[(offset + i, offset + j)] = b[(i, j)];
                }
            }
            offset += b.dim;
        }
        Ok(out)
    }

    /// `U_i* A U_i` for the coordinate inclusion `U_i` of `C^len` at
    /// `offset`.
    pub fn compress(&self, offset: usize, len: usize) -> Result<Self> {
        if len == 0 || offset + len > self.dim {
            return Err(Error::InvalidArgument(format!(
                "slot {offset}..{} outside dimension {}",
                offset + len,
                self.dim
            )));
        }
        Ok(Self::from_fn(len, |i, j| self[(offset + i, offset + j)]))
    }

    pub fn cast<U: Real>(&self) -> Operator<U> {
        Operator {
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(U::lit(z.re.to_f64_lossy()), U::lit(z.im.to_f64_lossy())))
                .collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Operator<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Operator<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Mul for &Operator<T> {
    type Output = Operator<T>;

    fn mul(self, rhs: &Operator<T>) -> Operator<T> {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        let n = self.dim;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &Operator<T> {
    type Output = Operator<T>;

    fn add(self, rhs: &Operator<T>) -> Operator<T> {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        Operator { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Real> Sub for &Operator<T> {
    type Output = Operator<T>;

    fn sub(self, rhs: &Operator<T>) -> Operator<T> {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        Operator { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// JSON shape `{dim, re[][], im[][]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorJson<T> {
    dim: usize,
    re: Vec<Vec<T>>,
    im: Vec<Vec<T>>,
}

impl<T: Real> Serialize for Operator<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = |f: fn(&Complex<T>) -> T| -> Vec<Vec<T>> {
            self.data.chunks(self.dim).map(|r| r.iter().map(f).collect()).collect()
        };
        OperatorJson { dim: self.dim, re: rows(|z| z.re), im: rows(|z| z.im) }.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for Operator<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = OperatorJson::<T>::deserialize(d)?;
        if j.re.len() != j.dim || j.im.len() != j.dim {
            return Err(D::Error::custom("row count does not match dim"));
        }
        let mut data = Vec::with_capacity(j.dim * j.dim);
        for (r, i) in j.re.iter().zip(&j.im) {
            if r.len() != j.dim || i.len() != j.dim {
                return Err(D::Error::custom("column count does not match dim"));
            }
            data.extend(r.iter().zip(i).map(|(&a, &b)| Complex::new(a, b)));
        }
        Operator::from_entries(j.dim, data).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn norm_examples() {
        for d in 1..5 {
            assert!((Operator::<f64>::identity(d).op_norm() - 1.0).abs() < 1e-12);
        }
        let a = Operator::diag(&[c(3.0, 0.0), c(-1.0, 0.0)]);
        assert!((a.op_norm() - 3.0).abs() < 1e-12);
        let nil = Operator::<f64>::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]).unwrap();
        assert!((nil.op_norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn psd_examples() {
        let id = Operator::<f64>::identity(3);
        let r = id.psd_min_eig(1e-9).unwrap();
        assert!((r.min_eigenvalue - 1.0).abs() < 1e-12 && r.verdict);
        let r = id.scale_real(-1.0).psd_min_eig(1e-9).unwrap();
        assert!((r.min_eigenvalue + 1.0).abs() < 1e-12 && !r.verdict);
        let cs = (std::f64::consts::PI / 3.0).cos();
        let m = Operator::<f64>::from_real_rows(&[vec![1.0, cs], vec![cs, 1.0]]).unwrap();
        assert!((m.psd_min_eig(1e-9).unwrap().min_eigenvalue - 0.5).abs() < 1e-12);
        let skew = Operator::<f64>::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(skew.psd_min_eig(1e-9), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn direct_sum_and_compress() {
        let s = Operator::direct_sum(&[Operator::<f64>::identity(2), Operator::identity(3)]).unwrap();
        assert_eq!(s, Operator::identity(5));
        let s = Operator::direct_sum(&[Operator::scalar(c(2.0, 0.0)), Operator::scalar(c(3.0, 0.0))]).unwrap();
        assert_eq!(s, Operator::diag(&[c(2.0, 0.0), c(3.0, 0.0)]));
        assert!((s.op_norm() - 3.0).abs() < 1e-12);
        assert!(Operator::<f64>::direct_sum(&[]).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = Operator::<f64>::random_gaussian(2, &mut rng);
        let b = Operator::<f64>::random_gaussian(2, &mut rng);
        let s = Operator::direct_sum(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(s.compress(0, 2).unwrap(), a);
        assert_eq!(s.compress(2, 2).unwrap(), b);
        assert!((s.op_norm() - a.op_norm().max(b.op_norm())).abs() < 1e-12);
        assert!(s.compress(3, 2).is_err());
    }

    #[test]
    fn polar_factor_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in [1, 2, 5, 8] {
            let u = Operator::<f64>::random_unitary(d, &mut rng);
            assert!(u.unitarity_defect() < 1e-12);
            assert!((u.op_norm() - 1.0).abs() < 1e-12);
        }
        assert!(Operator::<f64>::zeros(2).polar_unitary().is_none());
        // the polar factor of a unitary is itself
        let u = Operator::<f64>::random_unitary(4, &mut rng);
        assert!(u.polar_unitary().unwrap().max_abs_diff(&u) < 1e-12);
    }

    #[test]
    fn json_round_trip_shape() {
        let a = Operator::from_entries(2, vec![c(1.0, 0.5), c(0.0, -1.0), c(2.0, 0.0), c(0.0, 0.0)]).unwrap();
        let j = serde_json::to_value(&a).unwrap();
        assert_eq!(j["dim"], 2);
        assert_eq!(j["re"], serde_json::json!([[1.0, 0.0], [2.0, 0.0]]));
        assert_eq!(j["im"], serde_json::json!([[0.5, -1.0], [0.0, 0.0]]));
        let back: Operator<f64> = serde_json::from_value(j).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Operator<f64>>(r#"{"dim":2,"re":[[1]],"im":[[0]]}"#).is_err());
    }

    #[test]
    fn single_precision_operators() {
        let a = Operator::<f32>::diag(&[Complex::new(3.0, 0.0), Complex::new(0.0, -4.0)]);
        assert!((a.op_norm() - 4.0).abs() < 1e-5);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn norm_is_unitarily_invariant_and_submultiplicative(seed in any::<u64>(), d in 1usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Operator::<f64>::random_gaussian(d, &mut rng);
            let b = Operator::<f64>::random_gaussian(d, &mut rng);
            let u = Operator::<f64>::random_unitary(d, &mut rng);
            let v = Operator::<f64>::random_unitary(d, &mut rng);
            let uav = &(&u * &a) * &v;
            prop_assert!((uav.op_norm() - a.op_norm()).abs() < 1e-9);
            prop_assert!((&a * &b).op_norm() <= a.op_norm() * b.op_norm() + 1e-9);
        }

        #[test]
        fn psd_verdict_bounds_quadratic_form(seed in any::<u64>(), d in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = Operator::<f64>::random_gaussian(d, &mut rng);
            // B*B shifted by a random real amount may or may not be PSD
            let shift: f64 = rng.random_range(-1.0..0.5);
            let m = &(&g.adjoint() * &g) + &Operator::identity(d).scale_real(shift);
            let tol = 1e-9;
            let rep = m.psd_min_eig(tol).unwrap();
            if rep.verdict {
                for _ in 0..1000 {
                    let xi = random_vector::<f64, _>(d, &mut rng);
                    let q = inner(&m.apply(&xi), &xi).re;
                    prop_assert!(q >= -tol * norm_sqr(&xi) - 1e-12);
                }
            } else {
                prop_assert!(rep.min_eigenvalue < -tol);
            }
        }
    }
}
