//! Dense integer matrices: Hermite and Smith normal forms, determinants,
//! kernels. Row operations performed during a Hermite reduction can be
//! mirrored onto companion data through [`RowOps`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        IntMat { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(&v, cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [BigInt] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn rows_vec(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn push_row(&mut self, r: &[BigInt]) {
        assert_eq!(r.len(), self.cols);
        self.data.extend(r.iter().cloned());
        self.rows += 1;
    }

    pub fn truncate_rows(&mut self, n: usize) {
        self.rows = n.min(self.rows);
        self.data.truncate(self.rows * self.cols);
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMat {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        IntMat::from_rows(&rows, self.cols)
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMat {
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        IntMat::from_rows(&rows, idx.len())
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMat) -> IntMat {
        assert_eq!(self.cols, o.rows);
        let mut r = IntMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        *r.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        r
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let b = self.get(i, j);
                if !b.is_zero() {
                    out[j] += a * b;
                }
            }
        }
        out
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }

    fn swap_rows_raw(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let c = self.cols;
        let (a, b) = (i.min(j), i.max(j));
        let (lo, hi) = self.data.split_at_mut(b * c);
        lo[a * c..(a + 1) * c].swap_with_slice(&mut hi[..c]);
    }

    /// `row[dst] += q * row[src]`, starting at column `from`.
    fn add_row_from(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for j in from..c {
            let s = &self.data[src * c + j];
            if s.is_zero() {
                continue;
            }
            let t = q * s;
            self.data[dst * c + j] += t;
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `col[dst] += q * col[src]`.
    pub fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = self.get(r, src);
            if s.is_zero() {
                continue;
            }
            let t = q * s;
            *self.get_mut(r, dst) += t;
        }
    }

    pub fn neg_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }

    /// Largest absolute value of an entry.
    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

/// Row operations mirrored from a reduction onto companion data.
pub trait RowOps {
    fn swap_rows(&mut self, i: usize, j: usize);
    /// `row[dst] += q * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt);
    fn neg_row(&mut self, i: usize);
}

impl RowOps for () {
    fn swap_rows(&mut self, _: usize, _: usize) {}
    fn add_row(&mut self, _: usize, _: usize, _: &BigInt) {}
    fn neg_row(&mut self, _: usize) {}
}

impl RowOps for IntMat {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.swap_rows_raw(i, j);
    }
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.add_row_from(dst, src, q, 0);
    }
    fn neg_row(&mut self, i: usize) {
        for x in self.row_mut(i) {
            *x = -&*x;
        }
    }
}

/// Real-valued companion rows (e.g. logarithmic embeddings of relations).
impl RowOps for Vec<Vec<f64>> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.swap(i, j);
    }
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        let qf = q.to_f64().unwrap();
        let s = self[src].clone();
        for (d, x) in self[dst].iter_mut().zip(s) {
            *d += qf * x;
        }
    }
    fn neg_row(&mut self, i: usize) {
        for x in self[i].iter_mut() {
            *x = -*x;
        }
    }
}

/// Integer rows reduced modulo a fixed modulus.
#[derive(Clone, Debug)]
pub struct ModRows {
    pub modulus: BigInt,
    pub rows: Vec<Vec<BigInt>>,
}

impl RowOps for ModRows {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        let s = self.rows[src].clone();
        for (d, x) in self.rows[dst].iter_mut().zip(s) {
            *d = (&*d + q * x).mod_floor(&self.modulus);
        }
    }
    fn neg_row(&mut self, i: usize) {
        for x in self.rows[i].iter_mut() {
            *x = (-&*x).mod_floor(&self.modulus);
        }
    }
}

impl<A: RowOps, B: RowOps> RowOps for (A, B) {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.0.swap_rows(i, j);
        self.1.swap_rows(i, j);
    }
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.0.add_row(dst, src, q);
        self.1.add_row(dst, src, q);
    }
    fn neg_row(&mut self, i: usize) {
        self.0.neg_row(i);
        self.1.neg_row(i);
    }
}

impl<T: RowOps> RowOps for &mut T {
    fn swap_rows(&mut self, i: usize, j: usize) {
        (**self).swap_rows(i, j);
    }
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        (**self).add_row(dst, src, q);
    }
    fn neg_row(&mut self, i: usize) {
        (**self).neg_row(i);
    }
}

/// In-place row Hermite normal form.
///
/// On return the first `r` rows form the HNF (upper echelon, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`), remaining rows are
/// zero, and every row operation has been mirrored onto `comp`. Returns the
/// pivot columns.
pub fn hnf_in_place<C: RowOps>(a: &mut IntMat, comp: &mut C) -> Vec<usize> {
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                let x = a.get(i, c);
                if !x.is_zero() {
                    match best {
                        Some(b) if a.get(b, c).magnitude() <= x.magnitude() => {}
                        _ => best = Some(i),
                    }
                }
            }
            let Some(b) = best else { break };
            if b != r {
                a.swap_rows_raw(r, b);
                comp.swap_rows(r, b);
            }
            let mut done = true;
            let piv = a.get(r, c).clone();
            for i in r + 1..rows {
                let x = a.get(i, c);
                if x.is_zero() {
                    continue;
                }
                let q = -(x / &piv);
                a.add_row_from(i, r, &q, c);
                comp.add_row(i, r, &q);
                if !a.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                if a.get(r, c).is_negative() {
                    for x in a.row_mut(r) {
                        *x = -&*x;
                    }
                    comp.neg_row(r);
                }
                let piv = a.get(r, c).clone();
                for i in 0..r {
                    let q = -a.get(i, c).div_floor(&piv);
                    a.add_row_from(i, r, &q, c);
                    comp.add_row(i, r, &q);
                }
                pivots.push(c);
                r += 1;
                break;
            }
        }
    }
    pivots
}

/// Row HNF of `a` with zero rows removed.
pub fn hnf(a: &IntMat) -> IntMat {
    let mut m = a.clone();
    let piv = hnf_in_place(&mut m, &mut ());
    m.truncate_rows(piv.len());
    m
}

/// HNF of the lattice spanned by the rows of `gens` together with `d Z^n`.
///
/// Entries are kept reduced modulo `d` during elimination; the result is the
/// `n x n` upper-triangular HNF.
pub fn hnf_modular(gens: &[Vec<BigInt>], n: usize, d: &BigInt) -> IntMat {
    let rows: Vec<Vec<BigInt>> =
        gens.iter().map(|g| g.iter().map(|x| x.mod_floor(d)).collect()).collect();
    let mut m = IntMat::from_rows(&rows, n);
    let nr = m.rows;
    let mut r = 0;
    for c in 0..n {
        if r == nr {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..nr {
                let x = m.get(i, c);
                if !x.is_zero() {
                    match best {
                        Some(b) if m.get(b, c) <= x => {}
                        _ => best = Some(i),
                    }
                }
            }
            let Some(b) = best else { break };
            m.swap_rows_raw(r, b);
            let piv = m.get(r, c).clone();
            let mut done = true;
            for i in r + 1..nr {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let q = -(m.get(i, c) / &piv);
                m.add_row_from(i, r, &q, c);
                for j in c..n {
                    let v = m.get(i, j).mod_floor(d);
                    m.set(i, j, v);
                }
                if !m.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    m.truncate_rows(r);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); n];
        row[i] = d.clone();
        m.push_row(&row);
    }
    hnf(&m)
}

/// Determinant by fraction-free Gaussian elimination.
pub fn det(a: &IntMat) -> BigInt {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows_raw(k, i);
            sign = !sign;
        }
        let akk = m.get(k, k).clone();
        for i in k + 1..n {
            let aik = m.get(i, k).clone();
            for j in k + 1..n {
                let v = (&akk * m.get(i, j) - &aik * m.get(k, j)) / &prev;
                m.set(i, j, v);
            }
            m.set(i, k, BigInt::zero());
        }
        prev = akk;
    }
    let d = m.get(n - 1, n - 1).clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Result of a Smith normal form computation: `left * a * right = diag`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub left: IntMat,
    pub right: IntMat,
    pub right_inv: IntMat,
}

/// Smith normal form of an arbitrary integer matrix with unimodular transforms.
///
/// `diag` has length `min(rows, cols)`, entries non-negative with
/// `diag[i] | diag[i+1]` (zeros last).
pub fn snf(a: &IntMat) -> Smith {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut left = IntMat::identity(rows);
    let mut right = IntMat::identity(cols);
    let mut rinv = IntMat::identity(cols);
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            // pick the smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = m.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if m.get(bi, bj).magnitude() <= x.magnitude() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap_rows_raw(t, bi);
            left.swap_rows_raw(t, bi);
            m.swap_cols(t, bj);
            right.swap_cols(t, bj);
            rinv.swap_rows_raw(t, bj);
            let piv = m.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let x = m.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = -(&x / &piv);
                m.add_row_from(i, t, &q, 0);
                left.add_row_from(i, t, &q, 0);
                if !m.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let x = m.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = -(&x / &piv);
                m.add_col(j, t, &q);
                right.add_col(j, t, &q);
                // inverse: row t of rinv -= q * row j
                let nq = -q;
                rinv.add_row_from(t, j, &nq, 0);
                if !m.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility condition
            let mut bad: Option<usize> = None;
            'search: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(m.get(i, j) % &piv).is_zero() {
                        bad = Some(i);
                        break 'search;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    m.add_row_from(t, i, &one, 0);
                    left.add_row_from(t, i, &one, 0);
                }
                None => break,
            }
        }
        if m.get(t, t).is_negative() {
            for x in m.row_mut(t) {
                *x = -&*x;
            }
            left.neg_row(t);
        }
    }
    let diag = (0..k).map(|i| m.get(i, i).clone()).collect();
    Smith { diag, left, right, right_inv: rinv }
}

/// Elementary divisors only (no transforms), via HNF followed by SNF of the
/// square part.
pub fn elementary_divisors(a: &IntMat) -> Vec<BigInt> {
    snf(&hnf(a)).diag
}

/// Rank over Q, computed modulo a large prime (exact with overwhelming
/// probability; exact whenever the result equals `min(rows, cols)`).
pub fn rank_mod_prime(a: &IntMat, p: u64) -> usize {
    let mut m: Vec<Vec<u64>> =
        (0..a.rows).map(|i| a.row(i).iter().map(|x| super::int::big_mod_u64(x, p)).collect()).collect();
    super::fp::rank_mod(&mut m, p)
}

/// Basis of the integer kernel `{x : x a = 0}` (left kernel), via HNF with
/// transform: returns rows of the transform corresponding to zero rows.
pub fn left_kernel(a: &IntMat) -> IntMat {
    let mut m = a.clone();
    let mut t = IntMat::identity(a.rows);
    let piv = hnf_in_place(&mut m, &mut t);
    let idx: Vec<usize> = (piv.len()..a.rows).collect();
    let k = t.select_rows(&idx);
    hnf(&k)
}

/// Solves `x H = v` for `H` in row HNF (full column rank on its pivots);
/// returns `None` when `v` is not in the row lattice.
pub fn solve_hnf(h: &IntMat, pivots: &[usize], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rem = v.to_vec();
    let mut x = vec![BigInt::zero(); h.rows];
    for (i, &c) in pivots.iter().enumerate() {
        let (q, r) = rem[c].div_rem(h.get(i, c));
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for j in c..h.cols {
                let t = &q * h.get(i, j);
                rem[j] -= t;
            }
        }
        x[i] = q;
    }
    if rem.iter().all(|z| z.is_zero()) {
        Some(x)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_basic() {
        let a = IntMat::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let h = hnf(&a);
        assert_eq!(h, IntMat::from_i64(&[&[2, 4, 4], &[0, 6, 0], &[0, 0, 12]]));
        assert_eq!(det(&a).abs(), BigInt::from(144));
    }

    #[test]
    fn snf_basic() {
        let a = IntMat::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = snf(&a);
        let d: Vec<i64> = s.diag.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        let prod = s.left.mul(&a).mul(&s.right);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(prod.get(i, j), &want);
            }
        }
        let id = s.right.mul(&s.right_inv);
        assert_eq!(id, IntMat::identity(3));
    }

    #[test]
    fn modular_hnf_matches() {
        let gens = vec![
            vec![BigInt::from(3), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(5), BigInt::from(2)],
        ];
        let d = BigInt::from(30);
        let h = hnf_modular(&gens, 3, &d);
        let mut all = IntMat::from_rows(&gens, 3);
        for i in 0..3 {
            let mut r = vec![BigInt::zero(); 3];
            r[i] = d.clone();
            all.push_row(&r);
        }
        assert_eq!(h, hnf(&all));
    }

    #[test]
    fn kernel() {
        let a = IntMat::from_i64(&[&[1, 2], &[2, 4], &[3, 7]]);
        let k = left_kernel(&a);
        assert_eq!(k.nrows(), 1);
        let z = k.mul(&a);
        assert!(z.is_zero_row(0));
    }
}
