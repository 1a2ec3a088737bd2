//! Polynomials and linear algebra over a prime field `F_p` (`p < 2^63`).
//!
//! Polynomials are coefficient vectors, lowest degree first, with no
//! trailing zeros (the zero polynomial is empty).

use num_bigint::BigUint;
use rand::Rng;

use super::int::{inv_mod, mul_mod, pow_mod};

pub type FpPoly = Vec<u64>;

pub fn trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn deg(a: &FpPoly) -> isize {
    a.len() as isize - 1
}

pub fn add(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut r: FpPoly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            let s = x + y;
            if s >= p {
                s - p
            } else {
                s
            }
        })
        .collect();
    trim(&mut r);
    r
}

pub fn sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut r: FpPoly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            if x >= y {
                x - y
            } else {
                x + p - y
            }
        })
        .collect();
    trim(&mut r);
    r
}

pub fn scale(a: &FpPoly, c: u64, p: u64) -> FpPoly {
    let mut r: FpPoly = a.iter().map(|&x| mul_mod(x, c, p)).collect();
    trim(&mut r);
    r
}

pub fn mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x as u128 * y as u128) % pp;
        }
    }
    let mut out: FpPoly = r.into_iter().map(|x| x as u64).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let inv = inv_mod(*b.last().unwrap(), p).unwrap();
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = mul_mod(r[i + db], inv, p);
        q[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let t = mul_mod(c, bj, p);
            r[i + j] = if r[i + j] >= t { r[i + j] - t } else { r[i + j] + p - t };
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    divrem(a, b, p).1
}

pub fn monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => vec![],
        Some(&lc) => scale(a, inv_mod(lc, p).unwrap(), p),
    }
}

/// Monic gcd.
pub fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn derivative(a: &FpPoly, p: u64) -> FpPoly {
    let mut r: FpPoly = a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect();
    trim(&mut r);
    r
}

pub fn eval(a: &FpPoly, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// `base^e mod f`.
pub fn powmod(base: &FpPoly, e: &BigUint, f: &FpPoly, p: u64) -> FpPoly {
    let mut r: FpPoly = vec![1];
    let b = rem(base, f, p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        r = rem(&mul(&r, &r, p), f, p);
        if e.bit(i) {
            r = rem(&mul(&r, &b, p), f, p);
        }
    }
    rem(&r, f, p)
}

pub fn powmod_u64(base: &FpPoly, e: u64, f: &FpPoly, p: u64) -> FpPoly {
    powmod(base, &BigUint::from(e), f, p)
}

/// Reduces integer coefficients modulo `p`.
pub fn from_bigints(c: &[num_bigint::BigInt], p: u64) -> FpPoly {
    let mut r: FpPoly = c.iter().map(|x| super::int::big_mod_u64(x, p)).collect();
    trim(&mut r);
    r
}

/// Distinct-degree factorisation of a squarefree monic `f`: pairs
/// `(g_d, d)` where `g_d` is the product of the degree-`d` irreducible factors.
pub fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while deg(&f) >= 2 * (d as isize + 1) {
        d += 1;
        h = powmod_u64(&h, p, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            out.push((g.clone(), d));
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    if deg(&f) > 0 {
        let n = deg(&f) as usize;
        out.push((f, n));
    }
    out
}

/// Degrees of the irreducible factors of a squarefree `f`, ascending.
pub fn degree_pattern(f: &FpPoly, p: u64) -> Vec<usize> {
    let mut v = Vec::new();
    for (g, d) in distinct_degree(&monic(f, p), p) {
        for _ in 0..(deg(&g) as usize / d) {
            v.push(d);
        }
    }
    v.sort_unstable();
    v
}

/// Splits a product of distinct degree-`d` irreducibles into its factors.
pub fn equal_degree<R: Rng>(f: &FpPoly, d: usize, p: u64, rng: &mut R) -> Vec<FpPoly> {
    let n = deg(f) as usize;
    if n == d {
        return vec![monic(f, p)];
    }
    loop {
        let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut a);
        if deg(&a) < 1 {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..d {
                t = rem(&mul(&t, &t, p), f, p);
                s = add(&s, &t, p);
            }
            s
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            sub(&powmod(&a, &e, f, p), &vec![1], p)
        };
        let g = gcd(&b, f, p);
        if deg(&g) > 0 && deg(&g) < n as isize {
            let h = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

/// Irreducible factors of a squarefree polynomial, monic, sorted by
/// `(degree, coefficients)`.
pub fn factor_squarefree<R: Rng>(f: &FpPoly, p: u64, rng: &mut R) -> Vec<FpPoly> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&monic(f, p), p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    out
}

/// Roots of a polynomial that splits into distinct linear factors.
pub fn roots_split<R: Rng>(f: &FpPoly, p: u64, rng: &mut R) -> Vec<u64> {
    if p < 64 {
        return (0..p).filter(|&x| eval(f, x, p) == 0).collect();
    }
    let mut r: Vec<u64> = equal_degree(&monic(f, p), 1, p, rng)
        .into_iter()
        .map(|g| (p - g[0]) % p)
        .collect();
    r.sort_unstable();
    r
}

/// Squarefreeness test.
pub fn is_squarefree(f: &FpPoly, p: u64) -> bool {
    deg(&gcd(f, &derivative(f, p), p)) == 0
}

/// Rank of a matrix over `F_p` (destroys the input).
pub fn rank_mod(m: &mut [Vec<u64>], p: u64) -> usize {
    echelon(m, p).len()
}

/// Reduced row echelon form in place; returns the pivot columns. Rows past
/// the rank are zero on return.
pub fn echelon(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, i);
        let inv = inv_mod(m[r][c], p).unwrap();
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pr = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in 0..cols {
                if pr[j] != 0 {
                    let t = mul_mod(f, pr[j], p);
                    row[j] = if row[j] >= t { row[j] - t } else { row[j] + p - t };
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the left kernel `{x : x M = 0}` of an `r x c` matrix.
pub fn left_kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    // Augment with identity and row-reduce on the first `cols` columns.
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..rows).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, i);
        let inv = inv_mod(a[r][c], p).unwrap();
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pr = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in 0..pr.len() {
                if pr[j] != 0 {
                    let t = mul_mod(f, pr[j], p);
                    row[j] = if row[j] >= t { row[j] - t } else { row[j] + p - t };
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut out: Vec<Vec<u64>> = a[r..].iter().map(|row| row[cols..].to_vec()).collect();
    echelon(&mut out, p);
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

/// Solves `x M = v` over `F_p`, if solvable.
pub fn solve_left(m: &[Vec<u64>], v: &[u64], p: u64) -> Option<Vec<u64>> {
    let rows = m.len();
    let cols = v.len();
    // Columns of the system: unknowns x_i; equations per column j.
    let mut sys: Vec<Vec<u64>> = (0..cols)
        .map(|j| {
            let mut e: Vec<u64> = (0..rows).map(|i| m[i][j]).collect();
            e.push(v[j]);
            e
        })
        .collect();
    let piv = echelon(&mut sys, p);
    if piv.contains(&rows) {
        return None;
    }
    let mut x = vec![0u64; rows];
    for (k, &c) in piv.iter().enumerate() {
        x[c] = sys[k][rows];
    }
    Some(x)
}

/// `a^e` in `F_p`.
pub fn pow(a: u64, e: u64, p: u64) -> u64 {
    pow_mod(a, e, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factor_x4_plus_1() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^4 + 1 splits completely mod 17 and into quadratics mod 3.
        let f: FpPoly = vec![1, 0, 0, 0, 1];
        assert_eq!(factor_squarefree(&f, 17, &mut rng).len(), 4);
        assert_eq!(degree_pattern(&vec![1, 0, 0, 0, 1], 3), vec![2, 2]);
        let fs = factor_squarefree(&vec![1, 0, 0, 0, 1], 3, &mut rng);
        let prod = fs.iter().fold(vec![1u64], |a, b| mul(&a, b, 3));
        assert_eq!(prod, vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn char2_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // x^3 - x over F_2 is x(x+1)... times; use (x^2+x+1)(x^3+x+1)
        let a = vec![1, 1, 1];
        let b = vec![1, 1, 0, 1];
        let f = mul(&a, &b, 2);
        let fs = factor_squarefree(&f, 2, &mut rng);
        assert_eq!(fs, vec![a, b]);
    }

    #[test]
    fn kernel_and_solve() {
        let p = 7;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let k = left_kernel(&m, p);
        assert_eq!(k.len(), 1);
        for c in 0..3 {
            let s: u64 = (0..3).map(|i| k[0][i] * m[i][c]).sum::<u64>() % p;
            assert_eq!(s, 0);
        }
        let x = solve_left(&m, &[1, 3, 4], p).unwrap();
        for c in 0..3 {
            let s: u64 = (0..3).map(|i| x[i] * m[i][c]).sum::<u64>() % p;
            assert_eq!(s, [1, 3, 4][c]);
        }
    }
}
