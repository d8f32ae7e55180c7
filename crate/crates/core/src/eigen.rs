//! Dense real-symmetric eigensolver (Householder tridiagonalisation followed
//! by implicit QL), generic over [`Real`].
//!
//! Hermitian matrices `H = X + iY` are handled through the real symmetric
//! embedding `[[X, -Y], [Y, X]]`, whose spectrum is that of `H` with every
//! eigenvalue doubled.

use num_complex::Complex;

use crate::scalar::Real;

/// Eigen decomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    /// Eigenvalues in ascending order.
    pub values: Vec<T>,
    /// Column-major eigenvectors (`vectors[k*n + i]` is entry `i` of vector
    /// `k`), present only when requested.
    pub vectors: Option<Vec<T>>,
}

/// Eigenvalues (and optionally eigenvectors) of the symmetric `n x n`
/// row-major matrix `a`. Only the lower triangle is read.
pub fn symmetric_eigen<T: Real>(a: &[T], n: usize, want_vectors: bool) -> SymmetricEigen<T> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return SymmetricEigen { values: vec![], vectors: want_vectors.then(Vec::new) };
    }
    let mut v: Vec<Vec<T>> = (0..n).map(|i| a[i * n..(i + 1) * n].to_vec()).collect();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(&mut v, &mut d, &mut e, want_vectors);
    tql2(&mut v, &mut d, &mut e, want_vectors);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&k| d[k]).collect();
    let vectors = want_vectors.then(|| {
        let mut out = Vec::with_capacity(n * n);
        for &k in &order {
            out.extend((0..n).map(|i| v[i][k]));
        }
        out
    });
    SymmetricEigen { values, vectors }
}

/// Real symmetric embedding of a Hermitian row-major matrix.
pub(crate) fn hermitian_embedding<T: Real>(h: &[Complex<T>], n: usize) -> Vec<T> {
    let m = 2 * n;
    let mut out = vec![T::zero(); m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[i * n + j];
            out[i * m + j] = z.re;
            out[(i + n) * m + j + n] = z.re;
            out[(i + n) * m + j] = z.im;
            out[i * m + j + n] = -z.im;
        }
    }
    out
}

/// Ascending eigenvalues of a Hermitian matrix (lower triangle is read).
pub fn hermitian_eigenvalues<T: Real>(h: &[Complex<T>], n: usize) -> Vec<T> {
    let emb = hermitian_embedding(h, n);
    let all = symmetric_eigen(&emb, 2 * n, false).values;
    all.chunks(2).map(|p| (p[0] + p[1]) / T::lit(2.0)).collect()
}

/// `f(H)` for Hermitian `H`, computed spectrally through the embedding.
pub fn hermitian_function<T: Real>(h: &[Complex<T>], n: usize, f: impl Fn(T) -> T) -> Vec<Complex<T>> {
    let m = 2 * n;
    let emb = hermitian_embedding(h, n);
    let eig = symmetric_eigen(&emb, m, true);
    let vecs = eig.vectors.expect("vectors requested");
    let fv: Vec<T> = eig.values.iter().map(|&l| f(l)).collect();
    // F = V diag(f) V^T; the complex result is [[F11], [F21]] = Re, Im.
    let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
    for i in 0..n {
        for j in 0..n {
            let (mut re, mut im) = (T::zero(), T::zero());
            for k in 0..m {
                let vk = &vecs[k * m..(k + 1) * m];
                re += vk[i] * fv[k] * vk[j];
                im += vk[i + n] * fv[k] * vk[j];
            }
            out[i * n + j] = Complex::new(re, im);
        }
    }
    out
}

// Householder reduction to tridiagonal form (EISPACK tred2 as arranged in
// JAMA). On exit d holds the diagonal, e the subdiagonal in e[1..], and v the
// accumulated transformation when `vectors` is set.
fn tred2<T: Real>(v: &mut [Vec<T>], d: &mut [T], e: &mut [T], vectors: bool) {
    let n = d.len();
    for j in 0..n {
        d[j] = v[n - 1][j];
    }
    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = T::zero();
                v[j][i] = T::zero();
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for j in 0..i {
                e[j] = T::zero();
            }
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in (j + 1)..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    let t = f * e[k] + g * d[k];
                    v[k][j] -= t;
                }
                d[j] = v[i - 1][j];
                v[i][j] = T::zero();
            }
        }
        d[i] = h;
    }

    if vectors {
        for i in 0..n.saturating_sub(1) {
            v[n - 1][i] = v[i][i];
            v[i][i] = T::one();
            let h = d[i + 1];
            if h != T::zero() {
                for k in 0..=i {
                    d[k] = v[k][i + 1] / h;
                }
                for j in 0..=i {
                    let mut g = T::zero();
                    for k in 0..=i {
                        g += v[k][i + 1] * v[k][j];
                    }
                    for k in 0..=i {
                        let t = g * d[k];
                        v[k][j] -= t;
                    }
                }
            }
            for k in 0..=i {
                v[k][i + 1] = T::zero();
            }
        }
        for j in 0..n {
            d[j] = v[n - 1][j];
            v[n - 1][j] = T::zero();
        }
        v[n - 1][n - 1] = T::one();
    } else {
        // Without accumulation the diagonal still has to be read back from
        // the working rows, exactly as above.
        for i in 0..n.saturating_sub(1) {
            v[n - 1][i] = v[i][i];
        }
        for j in 0..n {
            d[j] = v[n - 1][j];
        }
    }
    e[0] = T::zero();
}

// Implicit QL iteration on the tridiagonal form.
fn tql2<T: Real>(v: &mut [Vec<T>], d: &mut [T], e: &mut [T], vectors: bool) {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let two = T::lit(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    let eps = T::epsilon();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        let m = m.min(n - 1);

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for i in (l + 2)..n {
                    d[i] -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if vectors {
                        for row in v.iter_mut() {
                            h = row[i + 1];
                            row[i + 1] = s * row[i] + c * h;
                            row[i] = c * row[i] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 || iter > 60 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Cyclic Jacobi rotations: an independent route to the spectrum.
    fn jacobi_eigenvalues(a: &[f64], n: usize) -> Vec<f64> {
        let mut m = a.to_vec();
        for _ in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| m[i * n + j] * m[i * n + j])
                .sum();
            if off < 1e-26 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[p * n + q];
                    if apq.abs() < 1e-300 {
                        continue;
                    }
                    let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (m[k * n + p], m[k * n + q]);
                        m[k * n + p] = c * akp - s * akq;
                        m[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (m[p * n + k], m[q * n + k]);
                        m[p * n + k] = c * apk - s * aqk;
                        m[q * n + k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut v: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    fn lcg_matrix(n: usize, seed: u64) -> Vec<f64> {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let x = next();
                a[i * n + j] = x;
                a[j * n + i] = x;
            }
        }
        a
    }

    #[test]
    fn matches_jacobi_on_random_symmetric() {
        for (n, seed) in [(1, 1), (2, 2), (5, 3), (9, 4), (16, 5)] {
            let a = lcg_matrix(n, seed);
            let ql = symmetric_eigen(&a, n, false).values;
            let jac = jacobi_eigenvalues(&a, n);
            for (x, y) in ql.iter().zip(&jac) {
                assert!((x - y).abs() < 1e-10, "n={n}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn eigenvectors_reconstruct() {
        let n = 7;
        let a = lcg_matrix(n, 11);
        let eig = symmetric_eigen(&a, n, true);
        let v = eig.vectors.unwrap();
        for i in 0..n {
            for j in 0..n {
                let r: f64 = (0..n).map(|k| v[k * n + i] * eig.values[k] * v[k * n + j]).sum();
                assert!((r - a[i * n + j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn vectors_and_values_agree_with_values_only() {
        let n = 12;
        let a = lcg_matrix(n, 17);
        let x = symmetric_eigen(&a, n, true).values;
        let y = symmetric_eigen(&a, n, false).values;
        for (p, q) in x.iter().zip(&y) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn hermitian_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let h = [
            Complex::new(2.0, 0.0),
            Complex::new(0.0, 1.0),
            Complex::new(0.0, -1.0),
            Complex::new(2.0, 0.0),
        ];
        let ev: Vec<f64> = hermitian_eigenvalues(&h, 2);
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
        let sq = hermitian_function(&h, 2, |x: f64| x.sqrt());
        // sqrt(H)^2 = H
        for i in 0..2 {
            for j in 0..2 {
                let z: Complex<f64> = (0..2).map(|k| sq[i * 2 + k] * sq[k * 2 + j]).sum();
                assert!((z - h[i * 2 + j]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn single_precision() {
        let a: Vec<f32> = vec![2.0, 1.0, 1.0, 2.0];
        let ev = symmetric_eigen(&a, 2, false).values;
        assert!((ev[0] - 1.0).abs() < 1e-6 && (ev[1] - 3.0).abs() < 1e-6);
    }
}
