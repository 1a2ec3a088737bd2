//! Lattice reduction in floating point: LLL with integral transforms,
//! Fincke–Pohst enumeration and reduction of real generating systems.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// LLL-reduces the real vectors `b` (rows) with parameter `delta`, returning
/// the unimodular transform `u` (rows of `u` times `b` give the reduced basis)
/// and the reduced vectors. Vectors whose Gram–Schmidt norm drops below
/// `drop_eps` are discarded, which turns the routine into MLLL for
/// generating systems; pass `0.0` for a genuine basis.
pub fn lll_float(b: &[Vec<f64>], delta: f64, drop_eps: f64) -> (Vec<Vec<i128>>, Vec<Vec<f64>>) {
    let mut v: Vec<Vec<f64>> = b.to_vec();
    let mut u: Vec<Vec<i128>> =
        (0..b.len()).map(|i| (0..b.len()).map(|j| i128::from(i == j)).collect()).collect();
    let mut k = 1usize;
    // Remove leading zero vectors.
    let mut guard = 0usize;
    loop {
        guard += 1;
        if guard > 200_000 {
            break;
        }
        let n = v.len();
        if n == 0 {
            break;
        }
        if k == 1 && dot(&v[0], &v[0]) <= drop_eps * drop_eps && drop_eps > 0.0 {
            v.remove(0);
            u.remove(0);
            if v.is_empty() {
                break;
            }
            continue;
        }
        if k >= n {
            break;
        }
        // Gram-Schmidt for the first k+1 vectors.
        let mut bstar: Vec<Vec<f64>> = Vec::with_capacity(k + 1);
        let mut mu = vec![vec![0.0f64; k + 1]; k + 1];
        let mut bn = vec![0.0f64; k + 1];
        for i in 0..=k {
            let mut w = v[i].clone();
            for j in 0..i {
                mu[i][j] = if bn[j] > 0.0 { dot(&v[i], &bstar[j]) / bn[j] } else { 0.0 };
                for (t, x) in w.iter_mut().enumerate() {
                    *x -= mu[i][j] * bstar[j][t];
                }
            }
            bn[i] = dot(&w, &w);
            bstar.push(w);
        }
        // Size-reduce v[k]; stop early if the transform would leave i128.
        let mut overflow = false;
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                if q.abs() > 1e30 {
                    overflow = true;
                    break;
                }
                let qi = q as i128;
                let row: Option<Vec<i128>> = u[k]
                    .iter()
                    .zip(&u[j])
                    .map(|(&a, &b)| qi.checked_mul(b).and_then(|x| a.checked_sub(x)))
                    .collect();
                let Some(row) = row else {
                    overflow = true;
                    break;
                };
                u[k] = row;
                for t in 0..v[k].len() {
                    v[k][t] -= q * v[j][t];
                }
                for i in 0..=j {
                    mu[k][i] -= q * if i == j { 1.0 } else { mu[j][i] };
                }
            }
        }
        if overflow {
            break;
        }
        // Recompute b*_k after size reduction.
        let mut w = v[k].clone();
        for j in 0..k {
            let m = if bn[j] > 0.0 { dot(&v[k], &bstar[j]) / bn[j] } else { 0.0 };
            mu[k][j] = m;
            for (t, x) in w.iter_mut().enumerate() {
                *x -= m * bstar[j][t];
            }
        }
        bn[k] = dot(&w, &w);
        if drop_eps > 0.0 && dot(&v[k], &v[k]) <= drop_eps * drop_eps {
            v.remove(k);
            u.remove(k);
            continue;
        }
        if bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1] {
            k += 1;
        } else {
            v.swap(k, k - 1);
            u.swap(k, k - 1);
            k = if k > 1 { k - 1 } else { 1 };
        }
    }
    (u, v)
}

/// LLL reduction of integral coordinate vectors with respect to the quadratic
/// form induced by `embed` (which maps exact coordinates to real vectors).
/// The reduction is repeated on exactly recomputed vectors until stable.
pub fn lll_integral<F>(coords: &[Vec<BigInt>], embed: F) -> Vec<Vec<BigInt>>
where
    F: Fn(&[BigInt]) -> Vec<f64>,
{
    let mut cur: Vec<Vec<BigInt>> = coords.to_vec();
    for _round in 0..8 {
        let vecs: Vec<Vec<f64>> = cur.iter().map(|c| embed(c)).collect();
        let (u, _) = lll_float(&vecs, 0.99, 0.0);
        let identity = u.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == i128::from(i == j)));
        if identity {
            break;
        }
        cur = u
            .iter()
            .map(|row| {
                let mut out = vec![BigInt::zero(); cur[0].len()];
                for (j, &c) in row.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let cb = BigInt::from(c);
                    for (t, x) in cur[j].iter().enumerate() {
                        out[t] += &cb * x;
                    }
                }
                out
            })
            .collect();
    }
    cur
}

/// All nonzero integer vectors `x` (up to sign) with `x^T G x <= bound`,
/// for a positive-definite Gram matrix `G`.
pub fn fincke_pohst(g: &[Vec<f64>], bound: f64, limit: usize) -> Vec<Vec<i64>> {
    let n = g.len();
    // Cholesky-like decomposition q[i][i] and q[i][j] (j > i).
    let mut q = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in i..n {
            q[i][j] = g[i][j];
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let mut t = vec![0.0f64; n];
    let mut u = vec![0.0f64; n];
    let mut upper = vec![0.0f64; n];
    let mut i = n - 1;
    t[i] = bound;
    u[i] = 0.0;
    let eps = 1e-9 * bound.max(1.0);
    let set_bounds = |i: usize, t: &[f64], u: &[f64], x: &mut [i64], upper: &mut [f64]| {
        let z = ((t[i] + eps) / q[i][i]).max(0.0).sqrt();
        upper[i] = (z - u[i]).floor();
        x[i] = (-z - u[i]).ceil() as i64 - 1;
    };
    set_bounds(i, &t, &u, &mut x, &mut upper);
    loop {
        x[i] += 1;
        if (x[i] as f64) > upper[i] {
            i += 1;
            if i >= n {
                break;
            }
            continue;
        }
        if i > 0 {
            let d = x[i] as f64 + u[i];
            t[i - 1] = t[i] - q[i][i] * d * d;
            i -= 1;
            u[i] = (i + 1..n).map(|j| q[i][j] * x[j] as f64).sum();
            set_bounds(i, &t, &u, &mut x, &mut upper);
        } else {
            if x.iter().all(|&c| c == 0) {
                continue;
            }
            // keep one of ±x: first nonzero from the top coordinate is positive
            let lead = x.iter().rev().find(|&&c| c != 0).copied().unwrap();
            if lead > 0 {
                out.push(x.clone());
                if out.len() >= limit {
                    break;
                }
            }
        }
    }
    out
}

/// Covolume of the lattice generated by real vectors in `R^m` (rank `r`),
/// together with a reduced basis. Vectors shorter than `eps` count as zero.
pub fn real_lattice(vectors: &[Vec<f64>], eps: f64) -> (f64, Vec<Vec<f64>>) {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        if dot(v, v).sqrt() <= eps {
            continue;
        }
        let mut gen = basis.clone();
        gen.push(v.clone());
        let (_, red) = lll_float(&gen, 0.75, eps);
        basis = red;
    }
    let r = basis.len();
    if r == 0 {
        return (1.0, basis);
    }
    let gram: Vec<Vec<f64>> = (0..r).map(|i| (0..r).map(|j| dot(&basis[i], &basis[j])).collect()).collect();
    (det_f64(&gram).abs().sqrt(), basis)
}

/// Determinant of a small real matrix.
pub fn det_f64(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().partial_cmp(&m[j][c].abs()).unwrap()).unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for i in c + 1..n {
            let f = m[i][c] / m[c][c];
            for j in c..n {
                m[i][j] -= f * m[c][j];
            }
        }
    }
    d
}

/// Converts an `i128` transform row to big integers.
pub fn row_to_big(r: &[i128]) -> Vec<BigInt> {
    r.iter().map(|&x| BigInt::from(x)).collect()
}

/// Euclidean norm helper for `BigInt` vectors via `f64`.
pub fn norm_f64(v: &[BigInt]) -> f64 {
    v.iter().map(|x| x.to_f64().unwrap().powi(2)).sum::<f64>().sqrt()
}

fn fixed_vec(v: &[BigInt], prec: u32) -> Vec<f64> {
    v.iter().map(|x| super::fixed::to_f64(x, prec)).collect()
}

/// Gram–Schmidt data of `b[0..=k]`: coefficients `mu` and squared norms.
fn gso(bf: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let k = bf.len();
    let mut star: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut mu = vec![vec![0.0; k]; k];
    let mut bn = vec![0.0; k];
    for i in 0..k {
        let mut v = bf[i].clone();
        for j in 0..i {
            mu[i][j] = if bn[j] > 0.0 { dot(&bf[i], &star[j]) / bn[j] } else { 0.0 };
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= mu[i][j] * y;
            }
        }
        bn[i] = dot(&v, &v);
        star.push(v);
    }
    (mu, bn)
}

/// MLLL on exact fixed-point vectors (scale `2^prec`) spanning a lattice in
/// `R^m`. Row operations are exact; floating point only steers them. Vectors
/// shorter than `eps` are dropped.
pub fn reduce_fixed_system(vectors: &[Vec<BigInt>], prec: u32, eps: f64) -> Vec<Vec<BigInt>> {
    let mut order: Vec<(f64, &Vec<BigInt>)> = vectors
        .iter()
        .map(|v| {
            let f = fixed_vec(v, prec);
            (dot(&f, &f).sqrt(), v)
        })
        .filter(|(n, _)| *n >= eps)
        .collect();
    order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut b: Vec<Vec<BigInt>> = Vec::new();
    for (_, v) in order {
        b.push(v.clone());
        mlll_exact(&mut b, prec, eps);
    }
    b
}

fn mlll_exact(b: &mut Vec<Vec<BigInt>>, prec: u32, eps: f64) {
    let norm = |v: &[BigInt]| {
        let f = fixed_vec(v, prec);
        dot(&f, &f).sqrt()
    };
    let mut k = 1usize;
    let mut steps = 0usize;
    while k < b.len() && steps < 1_000_000 {
        steps += 1;
        // size reduction, repeated until the coefficients are small
        for _ in 0..200 {
            let bf: Vec<Vec<f64>> = b[..=k].iter().map(|v| fixed_vec(v, prec)).collect();
            let (mu, _) = gso(&bf);
            let mut row = mu[k].clone();
            let mut changed = false;
            for j in (0..k).rev() {
                let m = row[j];
                if m.abs() > 0.51 {
                    let q = super::fixed::from_f64(m.round(), 0);
                    let bj = b[j].clone();
                    for (x, y) in b[k].iter_mut().zip(&bj) {
                        *x -= &q * y;
                    }
                    let qf = m.round();
                    for i in 0..j {
                        row[i] -= qf * mu[j][i];
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if norm(&b[k]) < eps {
            b.remove(k);
            continue;
        }
        let bf: Vec<Vec<f64>> = b[..=k].iter().map(|v| fixed_vec(v, prec)).collect();
        let (mu, bn) = gso(&bf);
        let m = mu[k][k - 1];
        if bn[k] < (0.99 - m * m) * bn[k - 1] {
            b.swap(k, k - 1);
            if norm(&b[k - 1]) < eps {
                b.remove(k - 1);
            }
            k = k.saturating_sub(1).max(1);
        } else {
            k += 1;
        }
    }
    if b.len() == 1 && norm(&b[0]) < eps {
        b.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_system_real_gcd() {
        use crate::arith::fixed::from_f64;
        let p = 300;
        let r = 1234.5678f64;
        let unit = from_f64(r, p);
        // multiples with huge coefficients and a second direction
        let big = BigInt::from(10u64).pow(22);
        let v1 = vec![&unit * (&big * 3 + 1), BigInt::zero()];
        let v2 = vec![&unit * (&big * 2 + 1), BigInt::zero()];
        let v3 = vec![&unit * 5, from_f64(0.75, p)];
        let v4 = vec![&unit * (&big * 7), from_f64(0.75, p) * 3];
        let b = reduce_fixed_system(&[v1, v2, v3, v4], p, 1e-6);
        assert_eq!(b.len(), 2);
        let f: Vec<Vec<f64>> = b.iter().map(|v| fixed_vec(v, p)).collect();
        let d = (f[0][0] * f[1][1] - f[0][1] * f[1][0]).abs();
        assert!((d - r * 0.75).abs() < 1e-6, "{d}");
    }

    #[test]
    fn lll_small() {
        let b = vec![vec![1.0, 1.0, 1.0], vec![-1.0, 0.0, 2.0], vec![3.0, 5.0, 6.0]];
        let (u, v) = lll_float(&b, 0.99, 0.0);
        assert_eq!(v.len(), 3);
        assert!(dot(&v[0], &v[0]) <= 3.0 + 1e-9);
        for (i, row) in u.iter().enumerate() {
            for t in 0..3 {
                let s: f64 = row.iter().enumerate().map(|(j, &c)| c as f64 * b[j][t]).sum();
                assert!((s - v[i][t]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn enumerate_z2() {
        let g = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let v = fincke_pohst(&g, 1.0, 100);
        assert_eq!(v.len(), 2);
        let v = fincke_pohst(&g, 2.0, 100);
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn covolume() {
        let l = 2f64.ln();
        let vs = vec![vec![3.0 * l, -3.0 * l], vec![5.0 * l, -5.0 * l], vec![0.0, 0.0]];
        let (c, b) = real_lattice(&vs, 1e-8);
        assert_eq!(b.len(), 1);
        assert!((c - l * 2f64.sqrt()).abs() < 1e-9);
    }
}
