//! Reference computations for integration tests, written without the
//! library's algorithms.
#![allow(dead_code)]

use num_complex::Complex64;
use ulam_lab::group::{FiniteGroup, Group, ProbMeasure};
use ulam_lab::rep_maps::OperatorMap;
use ulam_lab::Operator64;

type Mat = Vec<Vec<Complex64>>;

pub fn to_mat(op: &Operator64) -> Mat {
    let d = op.dim();
    (0..d).map(|i| (0..d).map(|j| op[(i, j)]).collect()).collect()
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `sum_y mu(y) phi(xy) phi(y)*` by explicit index loops.
pub fn naive_average(phi: &OperatorMap<FiniteGroup, f64>, mu: &ProbMeasure<usize, f64>, x: usize) -> Mat {
    let d = phi.dim();
    let g = phi.group();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for (y, w) in mu.iter() {
        let a = to_mat(phi.value(&g.mul(&x, y)).unwrap());
        let b = to_mat(phi.value(y).unwrap());
        for i in 0..d {
            for j in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    s += a[i][k] * b[j][k].conj();
                }
                out[i][j] += s * w;
            }
        }
    }
    out
}

/// Cholesky of the Hermitian part of `m` plus `shift * I`; succeeds iff
/// that matrix is positive definite (up to rounding).
pub fn cholesky_ok(m: &Operator64, shift: f64) -> bool {
    let n = m.dim();
    let h: Mat = (0..n)
        .map(|i| (0..n).map(|j| (m[(i, j)] + m[(j, i)].conj()) * 0.5).collect())
        .collect();
    let mut l = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        let mut diag = h[j][j].re + shift;
        for k in 0..j {
            diag -= l[j][k].norm_sqr();
        }
        if !(diag > 0.0) {
            return false;
        }
        let dj = diag.sqrt();
        l[j][j] = Complex64::new(dj, 0.0);
        for i in j + 1..n {
            let mut s = h[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k].conj();
            }
            l[i][j] = s / dj;
        }
    }
    true
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting;
/// `None` when a pivot falls below `1e-12` relative to the matrix scale.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())?;
        if a[p][c].abs() < 1e-12 * scale {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest point of `conv(points)` to `xi` by trying every subset of at
/// most `dim + 1` points: project onto its affine hull and keep the result
/// when the barycentric weights are nonnegative.
pub fn caratheodory_projection(points: &[Vec<f64>], xi: &[f64]) -> (f64, Vec<f64>) {
    let n = points.len();
    let dim = xi.len();
    let mut best = (f64::INFINITY, Vec::new());
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if idx.len() > dim + 1 {
            continue;
        }
        let p0 = &points[idx[0]];
        let diffs: Vec<Vec<f64>> = idx[1..].iter().map(|&i| points[i].iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
        let r: Vec<f64> = xi.iter().zip(p0).map(|(a, b)| a - b).collect();
        let m = diffs.len();
        let beta = if m == 0 {
            Some(vec![])
        } else {
            let gram = (0..m).map(|i| (0..m).map(|j| dot(&diffs[i], &diffs[j])).collect()).collect();
            solve(gram, diffs.iter().map(|d| dot(d, &r)).collect())
        };
        let Some(beta) = beta else { continue };
        let w0 = 1.0 - beta.iter().sum::<f64>();
        if w0 < -1e-12 || beta.iter().any(|&b| b < -1e-12) {
            continue;
        }
        let mut proj = p0.clone();
        for (d, b) in diffs.iter().zip(&beta) {
            for (p, v) in proj.iter_mut().zip(d) {
                *p += b * v;
            }
        }
        let dist = proj.iter().zip(xi).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        if dist < best.0 {
            best = (dist, proj);
        }
    }
    best
}

/// Free-group words as signed generator numbers: `1 = a`, `-1 = a^-1`,
/// `2 = b`, `-2 = b^-1`.
pub type Letters = Vec<i8>;

pub fn reduce(w: &[i8]) -> Letters {
    let mut out: Letters = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn times(x: &[i8], y: &[i8]) -> Letters {
    reduce(&[x, y].concat())
}

pub fn inverse(x: &[i8]) -> Letters {
    x.iter().rev().map(|l| -l).collect()
}

pub fn render(w: &[i8]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter()
        .map(|l| match l {
            1 => 'a',
            -1 => 'A',
            2 => 'b',
            -2 => 'B',
            _ => unreachable!(),
        })
        .collect()
}

/// All reduced words of length at most `r`, by brute force over strings.
pub fn f2_ball(r: usize) -> Vec<Letters> {
    let mut all = vec![vec![]];
    let mut frontier: Vec<Letters> = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &frontier {
            for l in [1, -1, 2, -2] {
                let v = times(w, &[l]);
                if v.len() == w.len() + 1 {
                    next.push(v);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// `||s mu - mu||_1` for a measure given as `(word, weight)` pairs.
pub fn shift_l1(mu: &[(Letters, f64)], s: &[i8]) -> f64 {
    use std::collections::HashMap;
    let mut diff: HashMap<Letters, f64> = HashMap::new();
    for (y, w) in mu {
        *diff.entry(times(s, y)).or_default() += w;
        *diff.entry(y.clone()).or_default() -= w;
    }
    diff.values().map(|v| v.abs()).sum()
}

/// Tarski defect of the first-letter decomposition, by direct set tests
/// over the pairs (translate, first letter of the piece).
pub fn first_letter_defect(mu: &[(Letters, f64)]) -> f64 {
    let families: [(&[i8], i8); 4] = [(&[], 1), (&[1], -1), (&[], 2), (&[2], -2)];
    let mass = |pred: &dyn Fn(&[i8]) -> bool| mu.iter().filter(|(w, _)| pred(w)).map(|(_, p)| p).sum::<f64>();
    families
        .iter()
        .map(|&(s, l)| {
            let moved = mass(&|w| times(&inverse(s), w).first() == Some(&l));
            (moved - mass(&|w| w.first() == Some(&l))).abs()
        })
        .sum()
}

/// `|B_r triangle (e_1 + B_r)| / |B_r|` for the box `[-r, r]^d`, by counting.
pub fn box_shift_defect(d: usize, r: i64) -> f64 {
    let side = 2 * r + 1;
    let total = side.pow(d as u32);
    // points of the box whose first coordinate is r leave under the shift
    let leaving = total / side;
    (2 * leaving) as f64 / total as f64
}

/// Følner average of `k -> exp(i alpha k^2)` at `x` in closed form:
/// `exp(i alpha x^2) * mean_{|y| <= r} exp(2 i alpha x y)`.
pub fn quadratic_average(alpha: f64, r: i64, x: i64) -> Complex64 {
    let xf = x as f64;
    let mut s = Complex64::new(0.0, 0.0);
    for y in -r..=r {
        s += Complex64::from_polar(1.0, 2.0 * alpha * xf * y as f64);
    }
    Complex64::from_polar(1.0, alpha * xf * xf) * s / (2 * r + 1) as f64
}
