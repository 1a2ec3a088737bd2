//! Orders of étale Q-algebras `Q[x]/(f)`, their p-maximalisation (Round 2)
//! and the splitting of `O/pO` into maximal ideals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::fp;
use crate::arith::int::{big_mod_u64, mul_mod};
use crate::arith::matrix::{det, hnf, hnf_modular, solve_hnf, IntMat};
use crate::arith::poly::{QPoly, ZPoly};

/// A full-rank order `O = Z ω_1 + ... + Z ω_n` in `Q[x]/(f)`, `f` monic.
///
/// `ω_i = (Σ_j basis[i][j] x^j) / den`. Multiplication uses the structure
/// constants `ω_i ω_j = Σ_k c_ijk ω_k`.
#[derive(Clone, Debug)]
pub struct Order {
    pub f: ZPoly,
    pub n: usize,
    pub basis: IntMat,
    pub den: BigInt,
    table: Vec<BigInt>,
    small: Option<Vec<i64>>,
    inv_num: IntMat,
    inv_den: BigInt,
    pub one: Vec<BigInt>,
}

fn inverse_rational(a: &IntMat) -> (IntMat, BigInt) {
    let n = a.nrows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> =
                a.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("singular basis");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pr = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..2 * n {
                row[j] = &row[j] - &f * &pr[j];
            }
        }
    }
    let den = m.iter().flat_map(|r| r[n..].iter()).fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut out = IntMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = (&m[i][n + j] * BigRational::from_integer(den.clone())).to_integer();
            out.set(i, j, v);
        }
    }
    (out, den)
}

fn poly_mulmod(a: &[BigInt], b: &[BigInt], f: &ZPoly) -> Vec<BigInt> {
    let pa = ZPoly::new(a.to_vec());
    let pb = ZPoly::new(b.to_vec());
    let (_, r) = pa.mul(&pb).divrem_monic(f);
    let n = f.degree() as usize;
    (0..n).map(|i| r.coeff(i)).collect()
}

impl Order {
    /// The equation order `Z[x]/(f)`.
    pub fn equation_order(f: &ZPoly) -> Order {
        let n = f.degree() as usize;
        Order::from_basis(f, IntMat::identity(n), BigInt::one())
    }

    /// Builds an order from a basis (rows: numerators in the power basis).
    pub fn from_basis(f: &ZPoly, basis: IntMat, den: BigInt) -> Order {
        let n = f.degree() as usize;
        // Remove common content between numerators and denominator.
        let g = basis.rows_vec().iter().flatten().fold(den.clone(), |g, x| g.gcd(x));
        let (basis, den) = if g.is_one() {
            (basis, den)
        } else {
            let rows: Vec<Vec<BigInt>> =
                basis.rows_vec().into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect();
            (IntMat::from_rows(&rows, n), den / &g)
        };
        let (inv_num, inv_den) = inverse_rational(&basis);
        let mut ord = Order {
            f: f.clone(),
            n,
            basis,
            den,
            table: vec![],
            small: None,
            inv_num,
            inv_den,
            one: vec![],
        };
        let mut table = vec![BigInt::zero(); n * n * n];
        for i in 0..n {
            for j in i..n {
                let prod = poly_mulmod(ord.basis.row(i), ord.basis.row(j), f);
                // prod / den^2 in power basis -> coordinates
                let (coords, d) = ord.power_to_coords_raw(&prod, &(&ord.den * &ord.den));
                assert!(d.is_one(), "basis does not span a ring");
                for k in 0..n {
                    table[(i * n + j) * n + k] = coords[k].clone();
                    table[(j * n + i) * n + k] = coords[k].clone();
                }
            }
        }
        let small = if table.iter().all(|x| x.bits() < 31) {
            Some(table.iter().map(|x| x.to_i64().unwrap()).collect())
        } else {
            None
        };
        ord.table = table;
        ord.small = small;
        let mut onep = vec![BigInt::zero(); n];
        onep[0] = BigInt::one();
        let (one, d) = ord.power_to_coords_raw(&onep, &BigInt::one());
        assert!(d.is_one());
        ord.one = one;
        ord
    }

    /// Coordinates of `(Σ c_j x^j) / d` as `(num, den)` with `den > 0` minimal.
    fn power_to_coords_raw(&self, c: &[BigInt], d: &BigInt) -> (Vec<BigInt>, BigInt) {
        // y = c / d * den * inv_num / inv_den
        let v = self.inv_num.vec_mul(c);
        let scale_num = &self.den;
        let scale_den = d * &self.inv_den;
        let v: Vec<BigInt> = v.into_iter().map(|x| x * scale_num).collect();
        let g = v.iter().fold(scale_den.clone(), |g, x| g.gcd(x));
        let mut dd = &scale_den / &g;
        let mut v: Vec<BigInt> = v.into_iter().map(|x| x / &g).collect();
        if dd.is_negative() {
            dd = -dd;
            v = v.into_iter().map(|x| -x).collect();
        }
        (v, dd)
    }

    /// Coordinates of a rational polynomial in `x`: `(numerators, denominator)`.
    pub fn from_qpoly(&self, q: &QPoly) -> (Vec<BigInt>, BigInt) {
        let (num, d) = q.to_zpoly_den();
        let (_, r) = num.divrem_monic(&self.f);
        let c: Vec<BigInt> = (0..self.n).map(|i| r.coeff(i)).collect();
        self.power_to_coords_raw(&c, &d)
    }

    /// Coordinates of an integral element given in the power basis (`Z[x]`).
    pub fn from_zpoly(&self, z: &ZPoly) -> Vec<BigInt> {
        let (v, d) = self.from_qpoly(&z.to_qpoly());
        assert!(d.is_one());
        v
    }

    /// Element as a rational polynomial in `x`.
    pub fn to_qpoly(&self, x: &[BigInt]) -> QPoly {
        let num = self.basis.vec_mul(x);
        QPoly::new(num.into_iter().map(|a| BigRational::new(a, self.den.clone())).collect())
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.table[(i * self.n + j) * self.n + k]
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        if let Some(small) = &self.small {
            let lim = 1i64 << 40;
            let sa: Option<Vec<i64>> = a.iter().map(|x| x.to_i64().filter(|v| v.abs() < lim)).collect();
            let sb: Option<Vec<i64>> = b.iter().map(|x| x.to_i64().filter(|v| v.abs() < lim)).collect();
            if let (Some(sa), Some(sb)) = (sa, sb) {
                let mut acc = vec![0i128; n];
                for i in 0..n {
                    if sa[i] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        if sb[j] == 0 {
                            continue;
                        }
                        let ab = sa[i] as i128 * sb[j] as i128;
                        let base = (i * n + j) * n;
                        for k in 0..n {
                            let c = small[base + k];
                            if c != 0 {
                                acc[k] += ab * c as i128;
                            }
                        }
                    }
                }
                return acc.into_iter().map(BigInt::from).collect();
            }
        }
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                let base = (i * n + j) * n;
                for k in 0..n {
                    let c = &self.table[base + k];
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    pub fn mul_mod(&self, a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        self.mul(a, b).into_iter().map(|x| x.mod_floor(m)).collect()
    }

    pub fn pow_mod(&self, a: &[BigInt], e: &BigUint, m: &BigInt) -> Vec<BigInt> {
        let mut r: Vec<BigInt> = self.one.iter().map(|x| x.mod_floor(m)).collect();
        let base: Vec<BigInt> = a.iter().map(|x| x.mod_floor(m)).collect();
        for i in (0..e.bits()).rev() {
            r = self.mul_mod(&r, &r, m);
            if e.bit(i) {
                r = self.mul_mod(&r, &base, m);
            }
        }
        r
    }

    pub fn pow(&self, a: &[BigInt], e: u64) -> Vec<BigInt> {
        let mut r = self.one.clone();
        let mut b = a.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scalar(&self, c: &BigInt) -> Vec<BigInt> {
        self.one.iter().map(|x| x * c).collect()
    }

    /// Matrix of multiplication by `x`: row `j` holds the coordinates of `x ω_j`.
    pub fn mult_matrix(&self, x: &[BigInt]) -> IntMat {
        let n = self.n;
        let mut m = IntMat::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                if x[i].is_zero() {
                    continue;
                }
                for k in 0..n {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *m.get_mut(j, k) += &x[i] * c;
                    }
                }
            }
        }
        m
    }

    /// Absolute norm of an integral element.
    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        let m = self.mult_matrix(x);
        if let Some(d) = det_i128(&m) {
            return d;
        }
        det(&m)
    }

    pub fn trace(&self, x: &[BigInt]) -> BigInt {
        let m = self.mult_matrix(x);
        (0..self.n).map(|i| m.get(i, i).clone()).sum()
    }

    /// Index `[O : Z[x]]`.
    pub fn index(&self) -> BigInt {
        let d = det(&self.basis).abs();
        num_traits::pow(self.den.clone(), self.n) / d
    }

    /// Discriminant of the order.
    pub fn discriminant(&self) -> BigInt {
        let i = self.index();
        self.f.discriminant() / (&i * &i)
    }

    /// Structure constants reduced modulo `p` (for `F_p`-algebra work).
    pub fn mod_p(&self, p: u64) -> AlgModP {
        AlgModP {
            n: self.n,
            p,
            table: self.table.iter().map(|x| big_mod_u64(x, p)).collect(),
            one: self.one.iter().map(|x| big_mod_u64(x, p)).collect(),
        }
    }

    /// Coordinates of `x` reduced modulo `p`.
    pub fn reduce_p(&self, x: &[BigInt], p: u64) -> Vec<u64> {
        x.iter().map(|c| big_mod_u64(c, p)).collect()
    }

    /// Round 2: the p-maximal overorder.
    pub fn p_maximal(&self, p: u64) -> Order {
        let mut ord = self.clone();
        loop {
            match ord.enlarge(p) {
                Some(o) => ord = o,
                None => return ord,
            }
        }
    }

    /// One Round 2 step: `None` if the order is p-maximal.
    fn enlarge(&self, p: u64) -> Option<Order> {
        let n = self.n;
        let alg = self.mod_p(p);
        let rad = alg.radical();
        let bp = BigInt::from(p);
        let rad_big: Vec<Vec<BigInt>> =
            rad.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let ib = hnf_modular(&rad_big, n, &bp);
        let piv: Vec<usize> = (0..n).collect();
        // Map y -> (y γ_k mod p I_p)_k
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            let mut row = Vec::with_capacity(n * n);
            for k in 0..n {
                let prod = self.mul(&e, ib.row(k));
                let y = solve_hnf(&ib, &piv, &prod).expect("radical is not an ideal");
                row.extend(y.iter().map(|c| big_mod_u64(c, p)));
            }
            rows.push(row);
        }
        let ker = fp::left_kernel(&rows, p);
        if ker.is_empty() {
            return None;
        }
        let ker_big: Vec<Vec<BigInt>> =
            ker.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let h = hnf_modular(&ker_big, n, &bp);
        // new basis = (h / p) in ω-coordinates
        let num = hnf(&h.mul(&self.basis));
        Some(Order::from_basis(&self.f, num, &self.den * &bp))
    }

    /// Reduces an `O`-basis with respect to a quadratic form given by
    /// `embed`, returning the order on the new basis.
    pub fn rebased(&self, new_coords: &[Vec<BigInt>]) -> Order {
        let m = IntMat::from_rows(new_coords, self.n);
        let num = m.mul(&self.basis);
        Order::from_basis(&self.f, num, self.den.clone())
    }
}

/// Determinant with `i128` arithmetic when entries are small; `None` on
/// possible overflow.
pub fn det_i128(m: &IntMat) -> Option<BigInt> {
    let n = m.nrows();
    if n == 0 {
        return Some(BigInt::one());
    }
    let maxbits = (0..n).flat_map(|i| m.row(i).iter()).map(|x| x.bits()).max().unwrap_or(0);
    // Hadamard-type bound: n * (maxbits + log2 n) must stay well inside i128
    let bound = (n as u64) * (maxbits + 1 + (64 - (n as u64).leading_zeros() as u64));
    if 2 * bound > 124 {
        return None;
    }
    let mut a: Vec<Vec<i128>> =
        (0..n).map(|i| m.row(i).iter().map(|x| x.to_i128().unwrap()).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(i) = (k + 1..n).find(|&i| a[i][k] != 0) else { return Some(BigInt::zero()) };
            a.swap(k, i);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Some(BigInt::from(sign * a[n - 1][n - 1]))
}

/// An order reduced modulo a prime: the finite `F_p`-algebra `O/pO`.
#[derive(Clone, Debug)]
pub struct AlgModP {
    pub n: usize,
    pub p: u64,
    table: Vec<u64>,
    pub one: Vec<u64>,
}

/// A subspace of `F_p^n` in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
    pub n: usize,
}

impl Subspace {
    pub fn new(mut rows: Vec<Vec<u64>>, n: usize, p: u64) -> Subspace {
        rows.retain(|r| r.iter().any(|&x| x != 0));
        if rows.is_empty() {
            return Subspace { rows, pivots: vec![], n };
        }
        let piv = fp::echelon(&mut rows, p);
        rows.truncate(piv.len());
        Subspace { rows, pivots: piv, n }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v` modulo the subspace.
    pub fn reduce(&self, v: &[u64], p: u64) -> Vec<u64> {
        let mut w = v.to_vec();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let f = w[c];
            if f == 0 {
                continue;
            }
            for j in 0..self.n {
                if r[j] != 0 {
                    let t = mul_mod(f, r[j], p);
                    w[j] = if w[j] >= t { w[j] - t } else { w[j] + p - t };
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64], p: u64) -> bool {
        self.reduce(v, p).iter().all(|&x| x == 0)
    }

    /// Indices of the coordinates spanning a complement.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|j| !self.pivots.contains(j)).collect()
    }

    pub fn sum(&self, o: &Subspace, p: u64) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(o.rows.iter().cloned());
        Subspace::new(rows, self.n, p)
    }

    pub fn intersect(&self, o: &Subspace, p: u64) -> Subspace {
        if self.dim() == 0 || o.dim() == 0 {
            return Subspace::new(vec![], self.n, p);
        }
        let mut m: Vec<Vec<u64>> = self.rows.clone();
        for r in &o.rows {
            m.push(r.iter().map(|&x| (p - x) % p).collect());
        }
        let ker = fp::left_kernel(&m, p);
        let rows: Vec<Vec<u64>> = ker
            .iter()
            .map(|k| {
                let mut v = vec![0u64; self.n];
                for (i, r) in self.rows.iter().enumerate() {
                    if k[i] == 0 {
                        continue;
                    }
                    for j in 0..self.n {
                        v[j] = (v[j] + mul_mod(k[i], r[j], p)) % p;
                    }
                }
                v
            })
            .collect();
        Subspace::new(rows, self.n, p)
    }
}

impl AlgModP {
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.n;
        let p = self.p;
        let mut acc = vec![0u128; n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let ab = mul_mod(a[i], b[j], p) as u128;
                let base = (i * n + j) * n;
                for k in 0..n {
                    let c = self.table[base + k];
                    if c != 0 {
                        acc[k] = (acc[k] + ab * c as u128) % p as u128;
                    }
                }
            }
        }
        acc.into_iter().map(|x| x as u64).collect()
    }

    pub fn pow(&self, a: &[u64], e: &BigUint) -> Vec<u64> {
        let mut r = self.one.clone();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    pub fn pow_u64(&self, a: &[u64], e: u64) -> Vec<u64> {
        self.pow(a, &BigUint::from(e))
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| if x >= y { x - y } else { x + self.p - y }).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        a.iter().map(|&x| mul_mod(x, c, self.p)).collect()
    }

    fn unit(&self, i: usize) -> Vec<u64> {
        let mut e = vec![0u64; self.n];
        e[i] = 1;
        e
    }

    /// The radical `{x : x^{p^j} = 0}` with `p^j >= n`, as row vectors.
    pub fn radical(&self) -> Vec<Vec<u64>> {
        let mut q = BigUint::from(self.p);
        while q < BigUint::from(self.n) {
            q *= self.p;
        }
        let rows: Vec<Vec<u64>> = (0..self.n).map(|i| self.pow(&self.unit(i), &q)).collect();
        fp::left_kernel(&rows, self.p)
    }

    /// The ideal generated by `x`: span of `x ω_k`.
    pub fn principal(&self, x: &[u64]) -> Subspace {
        let rows: Vec<Vec<u64>> = (0..self.n).map(|k| self.mul(x, &self.unit(k))).collect();
        Subspace::new(rows, self.n, self.p)
    }

    /// Product of two ideals.
    pub fn ideal_mul(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for x in &a.rows {
            for y in &b.rows {
                rows.push(self.mul(x, y));
            }
        }
        Subspace::new(rows, self.n, self.p)
    }

    /// Maximal ideals of the algebra, each containing the radical.
    pub fn maximal_ideals(&self) -> Vec<Subspace> {
        let rad = Subspace::new(self.radical(), self.n, self.p);
        let mut rng = ChaCha8Rng::seed_from_u64(0x0dd5 ^ self.p);
        let mut out = Vec::new();
        let mut stack = vec![rad];
        while let Some(i) = stack.pop() {
            let comp = i.complement();
            let d = comp.len();
            // Berlekamp subalgebra of A/I: kernel of x -> x^p - x.
            let rows: Vec<Vec<u64>> = comp
                .iter()
                .map(|&j| {
                    let e = self.unit(j);
                    let v = self.sub(&self.pow_u64(&e, self.p), &e);
                    let r = i.reduce(&v, self.p);
                    comp.iter().map(|&c| r[c]).collect()
                })
                .collect();
            let ker = fp::left_kernel(&rows, self.p);
            if ker.len() <= 1 {
                out.push(i);
                continue;
            }
            let lift = |c: &[u64]| -> Vec<u64> {
                let mut v = vec![0u64; self.n];
                for (t, &j) in comp.iter().enumerate() {
                    v[j] = c[t];
                }
                v
            };
            let one_red = i.reduce(&self.one, self.p);
            // pick a non-scalar element of the Berlekamp algebra
            let z = loop {
                let mut c = vec![0u64; d];
                for k in &ker {
                    let a = rng.gen_range(0..self.p);
                    for t in 0..d {
                        c[t] = (c[t] + mul_mod(a, k[t], self.p)) % self.p;
                    }
                }
                let z = lift(&c);
                let zr = i.reduce(&z, self.p);
                // scalar test: zr is a multiple of one_red
                let pos = one_red.iter().position(|&x| x != 0).unwrap();
                let s = mul_mod(zr[pos], crate::arith::int::inv_mod(one_red[pos], self.p).unwrap(), self.p);
                let diff = self.sub(&zr, &self.scale(&one_red, s));
                if diff.iter().any(|&x| x != 0) {
                    break z;
                }
            };
            // minimal polynomial of z modulo I
            let mut powers: Vec<Vec<u64>> = vec![one_red.clone()];
            let mut cur = one_red.clone();
            let minpoly: fp::FpPoly = loop {
                cur = i.reduce(&self.mul(&cur, &z), self.p);
                if let Some(c) = fp::solve_left(&powers, &cur, self.p) {
                    let mut mp: fp::FpPoly = c.iter().map(|&x| (self.p - x) % self.p).collect();
                    mp.push(1);
                    break mp;
                }
                powers.push(cur.clone());
            };
            let roots = fp::roots_split(&minpoly, self.p, &mut rng);
            for r in roots {
                let y = self.sub(&z, &self.scale(&self.one, r));
                let j = i.sum(&self.principal(&y), self.p);
                stack.push(j);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round2_quadratic() {
        // x^2 - 5: Z[(1+sqrt5)/2] has index 2.
        let f = ZPoly::from_i64(&[-5, 0, 1]);
        let o = Order::equation_order(&f).p_maximal(2);
        assert_eq!(o.index(), BigInt::from(2));
        assert_eq!(o.discriminant(), BigInt::from(5));
        // x^2 + 3 at 2
        let f = ZPoly::from_i64(&[3, 0, 1]);
        let o = Order::equation_order(&f).p_maximal(2);
        assert_eq!(o.discriminant(), BigInt::from(-3));
    }

    #[test]
    fn round2_biquadratic() {
        // Q(i, sqrt 11): x^4 - 20x^2 + 144, field discriminant 2^8 * 11^2 = 30976... (D = 16 * 44^2 / ...)
        let f = ZPoly::from_i64(&[144, 0, -20, 0, 1]);
        let mut o = Order::equation_order(&f);
        for p in [2u64, 3, 11] {
            o = o.p_maximal(p);
        }
        // disc(Q(i)) * disc(Q(sqrt 11)) * disc(Q(sqrt -11)) = (-4)(44)(-11) = 1936
        assert_eq!(o.discriminant(), BigInt::from(1936));
    }

    #[test]
    fn maximal_ideals_count() {
        // x^4 + 1 mod 17 splits completely
        let f = ZPoly::from_i64(&[1, 0, 0, 0, 1]);
        let o = Order::equation_order(&f);
        assert_eq!(o.mod_p(17).maximal_ideals().len(), 4);
        assert_eq!(o.mod_p(3).maximal_ideals().len(), 2);
        assert_eq!(o.mod_p(2).maximal_ideals().len(), 1);
    }

    #[test]
    fn norms() {
        let f = ZPoly::from_i64(&[1, 0, 1]);
        let o = Order::equation_order(&f);
        let x = vec![BigInt::from(2), BigInt::from(1)];
        assert_eq!(o.norm(&x), BigInt::from(5));
    }
}
