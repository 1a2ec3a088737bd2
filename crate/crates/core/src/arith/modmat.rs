//! Matrices over the local ring `Z/p^m`: canonical echelon (Howell) form and
//! Smith form with invertible transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int::{big_pow, inv_mod_big};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMat {
    pub p: u64,
    pub m: u32,
    modulus: BigInt,
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ModMat {
    pub fn zeros(p: u64, m: u32, rows: usize, cols: usize) -> Self {
        ModMat { p, m, modulus: big_pow(p, m), rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(p: u64, m: u32, n: usize) -> Self {
        let mut a = Self::zeros(p, m, n, n);
        for i in 0..n {
            a.data[i * n + i] = BigInt::one();
        }
        a
    }

    pub fn from_rows(p: u64, m: u32, rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut a = Self::zeros(p, m, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, x) in r.iter().enumerate() {
                a.data[i * cols + j] = x.mod_floor(&a.modulus);
            }
        }
        a
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[i * self.cols + j] = v.mod_floor(&self.modulus);
    }
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn rows_vec(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, o: &ModMat) -> ModMat {
        assert_eq!(self.cols, o.rows);
        let mut r = ModMat::zeros(self.p, self.m, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    r.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        for x in r.data.iter_mut() {
            *x = x.mod_floor(&self.modulus);
        }
        r
    }

    /// Valuation of an entry, `m` for zero.
    /// Inverse of a square matrix invertible over `Z/p^m`.
    pub fn inverse(&self) -> Option<ModMat> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let md = self.modulus.clone();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                r
            })
            .collect();
        for c in 0..n {
            let r = (c..n).find(|&r| !(&a[r][c] % BigInt::from(self.p)).is_zero())?;
            a.swap(c, r);
            let inv = inv_mod_big(&a[c][c], &md)?;
            for x in a[c].iter_mut() {
                *x = (&*x * &inv).mod_floor(&md);
            }
            let pr = a[c].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == c || row[c].is_zero() {
                    continue;
                }
                let q = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = (&*x - &q * y).mod_floor(&md);
                }
            }
        }
        let rows: Vec<Vec<BigInt>> = a.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(ModMat::from_rows(self.p, self.m, &rows, n))
    }

    pub fn val(&self, x: &BigInt) -> u32 {
        if x.is_zero() {
            return self.m;
        }
        let bp = BigInt::from(self.p);
        let mut y = x.clone();
        let mut v = 0;
        while (&y % &bp).is_zero() {
            y /= &bp;
            v += 1;
        }
        v
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let v = (&self.data[dst * self.cols + c] + q * s).mod_floor(&self.modulus);
            self.data[dst * self.cols + c] = v;
        }
    }
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.data[r * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let v = (&self.data[r * self.cols + dst] + q * s).mod_floor(&self.modulus);
            self.data[r * self.cols + dst] = v;
        }
    }
    fn scale_row(&mut self, i: usize, u: &BigInt) {
        for c in 0..self.cols {
            let v = (&self.data[i * self.cols + c] * u).mod_floor(&self.modulus);
            self.data[i * self.cols + c] = v;
        }
    }
}

/// Canonical echelon form over `Z/p^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellForm {
    /// Echelon rows; row `k` has pivot `p^{vals[k]}` at column `pivots[k]`.
    pub h: ModMat,
    pub pivots: Vec<usize>,
    pub vals: Vec<u32>,
}

impl HowellForm {
    /// Number of pivots with valuation below `m`.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row echelon (Howell) form of `a` over `Z/p^m`; unique for the row module.
pub fn hnf_mod(a: &ModMat) -> HowellForm {
    let (p, m, cols) = (a.p, a.m, a.cols);
    let modulus = a.modulus.clone();
    let mut pool: Vec<Vec<BigInt>> = a.rows_vec();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots = Vec::new();
    let mut vals = Vec::new();
    let probe = ModMat::zeros(p, m, 0, 0);
    for c in 0..cols {
        let mut best: Option<(usize, u32)> = None;
        for (i, r) in pool.iter().enumerate() {
            let v = probe.val(&r[c]);
            if v < m && best.map_or(true, |(_, bv)| v < bv) {
                best = Some((i, v));
            }
        }
        let Some((bi, v)) = best else { continue };
        let mut prow = pool.swap_remove(bi);
        let pv = big_pow(p, v);
        let unit = &prow[c] / &pv;
        let uinv = inv_mod_big(&unit, &modulus).unwrap();
        for x in prow.iter_mut() {
            *x = (&*x * &uinv).mod_floor(&modulus);
        }
        for r in pool.iter_mut() {
            if r[c].is_zero() {
                continue;
            }
            let q = &r[c] / &pv;
            for j in 0..cols {
                r[j] = (&r[j] - &q * &prow[j]).mod_floor(&modulus);
            }
        }
        if v > 0 {
            let f = big_pow(p, m - v);
            let extra: Vec<BigInt> = prow.iter().map(|x| (x * &f).mod_floor(&modulus)).collect();
            if extra.iter().any(|x| !x.is_zero()) {
                pool.push(extra);
            }
        }
        pool.retain(|r| r.iter().any(|x| !x.is_zero()));
        out.push(prow);
        pivots.push(c);
        vals.push(v);
    }
    for k in 0..out.len() {
        let c = pivots[k];
        let pv = big_pow(p, vals[k]);
        let pr = out[k].clone();
        for j in 0..k {
            let q = out[j][c].div_floor(&pv);
            if q.is_zero() {
                continue;
            }
            for t in 0..cols {
                out[j][t] = (&out[j][t] - &q * &pr[t]).mod_floor(&modulus);
            }
        }
    }
    HowellForm { h: ModMat::from_rows(p, m, &out, cols), pivots, vals }
}

/// Smith form over `Z/p^m`: `left * a * right = s` with `s` diagonal.
#[derive(Clone, Debug)]
pub struct SnfMod {
    pub s: ModMat,
    pub left: ModMat,
    pub right: ModMat,
    /// Valuations of the diagonal; `m` stands for a zero entry. Length `cols`:
    /// columns past the row count are reported as `m`.
    pub vals: Vec<u32>,
}

impl SnfMod {
    /// Number of diagonal entries with valuation below `m`.
    pub fn rank(&self) -> usize {
        self.vals.iter().filter(|&&v| v < self.s.m).count()
    }

    /// Orders `p^v` of the cyclic factors of the cokernel, ascending, trivial
    /// factors dropped.
    pub fn cokernel(&self) -> Vec<BigInt> {
        let mut f: Vec<BigInt> =
            self.vals.iter().filter(|&&v| v > 0).map(|&v| big_pow(self.s.p, v)).collect();
        f.sort();
        f
    }
}

pub fn snf_mod(a: &ModMat) -> SnfMod {
    let (p, m, rows, cols) = (a.p, a.m, a.rows, a.cols);
    let mut s = a.clone();
    let mut left = ModMat::identity(p, m, rows);
    let mut right = ModMat::identity(p, m, cols);
    let mut vals = vec![m; cols];
    let k = rows.min(cols);
    for t in 0..k {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = s.val(s.get(i, j));
                if v < m && best.map_or(true, |(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                    if v == 0 {
                        break;
                    }
                }
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
        }
        let Some((bi, bj, v)) = best else { break };
        s.swap_rows(t, bi);
        left.swap_rows(t, bi);
        s.swap_cols(t, bj);
        right.swap_cols(t, bj);
        let pv = big_pow(p, v);
        let unit = s.get(t, t) / &pv;
        let uinv = inv_mod_big(&unit, &s.modulus).unwrap();
        s.scale_row(t, &uinv);
        left.scale_row(t, &uinv);
        for i in t + 1..rows {
            if s.get(i, t).is_zero() {
                continue;
            }
            let q = -(s.get(i, t) / &pv);
            s.add_row(i, t, &q);
            left.add_row(i, t, &q);
        }
        for j in t + 1..cols {
            if s.get(t, j).is_zero() {
                continue;
            }
            let q = -(s.get(t, j) / &pv);
            s.add_col(j, t, &q);
            right.add_col(j, t, &q);
        }
        vals[t] = v;
    }
    SnfMod { s, left, right, vals }
}
