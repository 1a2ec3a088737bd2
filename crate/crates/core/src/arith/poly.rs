//! Polynomials over Z and Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fp;
use super::int::{big_mod_u64, big_pow, primes_up_to, sym_mod};
use super::matrix::{det, IntMat};
use crate::error::{Error, Result};

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degree; the zero polynomial has degree -1.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + a.to_f64().unwrap())
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * i).collect())
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.c.len().max(o.c.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.c.len().max(o.c.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::new(vec![]);
        }
        let mut r = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        ZPoly::new(r)
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        ZPoly::new(self.c.iter().map(|a| a * k).collect())
    }

    /// Division by a monic polynomial: `(q, r)` with `self = q d + r`.
    pub fn divrem_monic(&self, d: &ZPoly) -> (ZPoly, ZPoly) {
        assert!(d.is_monic());
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (ZPoly::new(vec![]), self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[i + j] -= &c * b;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (ZPoly::new(q), ZPoly::new(r))
    }

    /// Reduction of coefficients modulo `m` (non-negative residues).
    pub fn mod_coeffs(&self, m: &BigInt) -> ZPoly {
        ZPoly::new(self.c.iter().map(|a| a.mod_floor(m)).collect())
    }

    pub fn to_fp(&self, p: u64) -> fp::FpPoly {
        fp::from_bigints(&self.c, p)
    }

    pub fn from_fp(a: &fp::FpPoly) -> ZPoly {
        ZPoly::new(a.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
    }

    pub fn l2_norm_sq(&self) -> BigInt {
        self.c.iter().map(|a| a * a).sum()
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.c.iter().map(|a| BigRational::from_integer(a.clone())).collect())
    }

    /// Resultant via the Sylvester determinant.
    pub fn resultant(&self, o: &ZPoly) -> BigInt {
        let (m, n) = (self.degree(), o.degree());
        if m < 0 || n < 0 {
            return BigInt::zero();
        }
        let (m, n) = (m as usize, n as usize);
        if m + n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut s = IntMat::zeros(size, size);
        for i in 0..n {
            for (j, a) in self.c.iter().rev().enumerate() {
                s.set(i, i + j, a.clone());
            }
        }
        for i in 0..m {
            for (j, b) in o.c.iter().rev().enumerate() {
                s.set(n + i, i + j, b.clone());
            }
        }
        det(&s)
    }

    /// Discriminant of a monic polynomial.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        if n <= 0 {
            return BigInt::one();
        }
        let r = self.resultant(&self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        sign * r / self.lead()
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.c.len()).rev() {
            let a = &self.c[i];
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coef = !mag.is_one() || i == 0;
            if show_coef {
                write!(f, "{mag}")?;
            }
            if i > 0 {
                if show_coef {
                    write!(f, "*")?;
                }
                write!(f, "x")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Rational polynomial, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QPoly {
    c: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    /// `(numerator polynomial, common denominator)`.
    pub fn to_zpoly_den(&self) -> (ZPoly, BigInt) {
        let den = self.c.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
        let num = self.c.iter().map(|a| (a * BigRational::from_integer(den.clone())).to_integer()).collect();
        (ZPoly::new(num), den)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.to_zpoly_den();
        if den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/{den}")
        }
    }
}

/// Characteristic polynomial `det(x I - A)` (Berkowitz, division free).
/// Coefficients lowest degree first; if `modulus` is given all arithmetic is
/// reduced modulo it.
pub fn charpoly(a: &[Vec<BigInt>], modulus: Option<&BigInt>) -> Vec<BigInt> {
    let n = a.len();
    let red = |x: BigInt| match modulus {
        Some(m) => x.mod_floor(m),
        None => x,
    };
    if n == 0 {
        return vec![BigInt::one()];
    }
    // v holds coefficients highest degree first.
    let mut v: Vec<BigInt> = vec![BigInt::one(), red(-a[0][0].clone())];
    for r in 1..n {
        let mut t: Vec<BigInt> = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(red(-a[r][r].clone()));
        // column C = a[0..r][r], row R = a[r][0..r]
        let mut col: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc: BigInt = (0..r).map(|j| &a[r][j] * &col[j]).sum();
            t.push(red(-rc));
            let next: Vec<BigInt> =
                (0..r).map(|i| red((0..r).map(|j| &a[i][j] * &col[j]).sum())).collect();
            col = next;
        }
        let mut nv = vec![BigInt::zero(); r + 2];
        for i in 0..r + 2 {
            let mut s = BigInt::zero();
            for j in 0..=i.min(r) {
                if i - j < t.len() {
                    s += &t[i - j] * &v[j];
                }
            }
            nv[i] = red(s);
        }
        v = nv;
    }
    v.reverse();
    v
}

fn next_combination(idx: &mut [usize], r: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < r - k + i {
            idx[i] += 1;
            for t in i + 1..k {
                idx[t] = idx[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn subset_products(
    factors: &[ZPoly],
    f: &ZPoly,
    modulus: &BigInt,
) -> Option<ZPoly> {
    let r = factors.len();
    for size in 1..=r / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut g = ZPoly::from_i64(&[1]);
            for &i in &idx {
                g = g.mul(&factors[i]).mod_coeffs(modulus);
            }
            let g = ZPoly::new(g.coeffs().iter().map(|a| sym_mod(a, modulus)).collect());
            // cheap constant-term test before full division
            let ct = f.coeff(0);
            if g.coeff(0).is_zero() || (ct.is_zero() || (&ct % g.coeff(0)).is_zero()) {
                let (_, rem) = f.divrem_monic(&g);
                if rem.is_zero() {
                    return Some(g);
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
    }
    None
}

/// Lifts `f ≡ g h (mod p)` (all monic, `g`, `h` coprime mod `p`) to a
/// factorisation modulo `p^k`.
pub fn hensel_lift_pair(f: &ZPoly, g: &fp::FpPoly, h: &fp::FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    // s g + t h = 1 mod p
    let (s, t) = ext_gcd_fp(g, h, p);
    let mut gz = ZPoly::from_fp(g);
    let mut hz = ZPoly::from_fp(h);
    let bp = BigInt::from(p);
    let mut pj = bp.clone();
    for _ in 1..k {
        let e = f.sub(&gz.mul(&hz));
        let e = ZPoly::new(e.coeffs().iter().map(|a| a / &pj).collect());
        let ef = e.to_fp(p);
        let (q, a) = fp::divrem(&fp::mul(&ef, &t, p), g, p);
        let b = fp::rem(&fp::add(&fp::mul(&ef, &s, p), &fp::mul(&q, h, p), p), h, p);
        gz = gz.add(&ZPoly::from_fp(&a).scale(&pj));
        hz = hz.add(&ZPoly::from_fp(&b).scale(&pj));
        pj *= &bp;
    }
    (gz.mod_coeffs(&pj), hz.mod_coeffs(&pj))
}

/// `(s, t)` with `s a + t b = 1` over `F_p`.
pub fn ext_gcd_fp(a: &fp::FpPoly, b: &fp::FpPoly, p: u64) -> (fp::FpPoly, fp::FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (fp::FpPoly, fp::FpPoly) = (vec![1], vec![]);
    let (mut t0, mut t1): (fp::FpPoly, fp::FpPoly) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp::divrem(&r0, &r1, p);
        let s2 = fp::sub(&s0, &fp::mul(&q, &s1, p), p);
        let t2 = fp::sub(&t0, &fp::mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = super::int::inv_mod(r0[0], p).expect("polynomials not coprime");
    (fp::scale(&s0, inv, p), fp::scale(&t0, inv, p))
}

/// Checks irreducibility over Q of a monic integer polynomial (degree >= 1).
///
/// Returns an error carrying a nontrivial factor when `f` is reducible.
pub fn check_irreducible(f: &ZPoly) -> Result<()> {
    if !f.is_monic() || f.degree() < 1 {
        return Err(Error::InvalidPolynomial);
    }
    let n = f.degree() as usize;
    if n == 1 {
        return Ok(());
    }
    let disc = f.discriminant();
    if disc.is_zero() {
        return Err(Error::ReduciblePolynomial(format!("{f} has a repeated factor")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // Possible factor degrees: intersect subset-sum sets over several primes.
    let mut possible: Vec<bool> = vec![true; n + 1];
    let mut best: Option<(u64, usize)> = None;
    let mut tried = 0;
    for p in primes_up_to(2000) {
        if big_mod_u64(&disc, p) == 0 {
            continue;
        }
        let fp_ = f.to_fp(p);
        let pat = fp::degree_pattern(&fp_, p);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &d in &pat {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for s in 0..=n {
            possible[s] &= sums[s];
        }
        if best.map_or(true, |(_, c)| pat.len() < c) {
            best = Some((p, pat.len()));
        }
        tried += 1;
        if (1..n).all(|s| !possible[s]) {
            return Ok(());
        }
        if tried >= 12 {
            break;
        }
    }
    let (p, _) = best.unwrap();
    let factors = fp::factor_squarefree(&f.to_fp(p), p, &mut rng);
    // Mignotte-type bound on factor coefficients.
    let norm = f.l2_norm_sq().sqrt() + 1;
    let bound = (BigInt::one() << n) * norm * 2;
    let mut k = 1;
    while big_pow(p, k) <= bound {
        k += 1;
    }
    let modulus = big_pow(p, k);
    let mut lifted = Vec::new();
    let mut rest = f.mod_coeffs(&modulus);
    let mut rest_fp = f.to_fp(p);
    for (i, g) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            lifted.push(rest.clone());
            break;
        }
        let h = fp::divrem(&rest_fp, g, p).0;
        let (gl, hl) = hensel_lift_pair(&rest, g, &h, p, k);
        lifted.push(gl);
        rest = hl;
        rest_fp = h;
    }
    match subset_products(&lifted, f, &modulus) {
        Some(g) => Err(Error::ReduciblePolynomial(format!("{f} is divisible by {g}"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(ZPoly::from_i64(&[52, -12, 13, 0, 1]).to_string(), "x^4 + 13*x^2 - 12*x + 52");
        assert_eq!(ZPoly::from_i64(&[-1, 1]).to_string(), "x - 1");
    }

    #[test]
    fn disc() {
        assert_eq!(ZPoly::from_i64(&[1, 0, 1]).discriminant(), BigInt::from(-4));
        assert_eq!(ZPoly::from_i64(&[-2, 0, 0, 1]).discriminant(), BigInt::from(-108));
        assert_eq!(ZPoly::from_i64(&[1, 1, 1, 1, 1]).discriminant(), BigInt::from(125));
    }

    #[test]
    fn irreducibility() {
        assert!(check_irreducible(&ZPoly::from_i64(&[1, 0, 1])).is_ok());
        assert!(check_irreducible(&ZPoly::from_i64(&[52, -12, 13, 0, 1])).is_ok());
        // biquadratic: reducible mod every prime yet irreducible over Q
        assert!(check_irreducible(&ZPoly::from_i64(&[144, 0, -20, 0, 1])).is_ok());
        assert!(check_irreducible(&ZPoly::from_i64(&[1, 0, 0, 0, 1])).is_ok());
        // (x^2+1)(x^2-2)
        let r = check_irreducible(&ZPoly::from_i64(&[-2, 0, -1, 0, 1]));
        assert!(matches!(r, Err(Error::ReduciblePolynomial(_))));
        // (x^2 + x + 1)(x^3 - 5)
        let g = ZPoly::from_i64(&[1, 1, 1]).mul(&ZPoly::from_i64(&[-5, 0, 0, 1]));
        assert!(check_irreducible(&g).is_err());
    }

    #[test]
    fn berkowitz() {
        let a = vec![
            vec![BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3)],
        ];
        let c = charpoly(&a, None);
        assert_eq!(c, vec![BigInt::from(5), BigInt::from(-5), BigInt::from(1)]);
        let b: Vec<Vec<BigInt>> = (0..4)
            .map(|i| (0..4).map(|j| BigInt::from(((i * 7 + j * 3) % 5) as i64 - 2)).collect())
            .collect();
        let cb = charpoly(&b, None);
        let m = IntMat::from_rows(&b, 4);
        assert_eq!(cb[0], det(&m));
    }
}
