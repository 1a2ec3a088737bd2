//! Fixed-precision p-adic integers and the Iwasawa logarithm.
//!
//! A [`PadicInt`] is an element of `Z_p` known modulo `p^prec`. Precision is
//! absolute: sums and products carry the minimum of the input precisions,
//! exact division by `p^v` lowers it by `v`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int::{big_pow, inv_mod_big};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    prec: u32,
    value: BigInt,
}

impl PadicInt {
    /// Reduces `value` modulo `p^prec`.
    pub fn new(p: u64, prec: u32, value: &BigInt) -> Self {
        let m = big_pow(p, prec);
        PadicInt { p, prec, value: value.mod_floor(&m) }
    }

    pub fn from_i64(p: u64, prec: u32, v: i64) -> Self {
        Self::new(p, prec, &BigInt::from(v))
    }

    pub fn zero(p: u64, prec: u32) -> Self {
        PadicInt { p, prec, value: BigInt::zero() }
    }

    pub fn one(p: u64, prec: u32) -> Self {
        Self::from_i64(p, prec, 1)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Canonical residue in `[0, p^prec)`.
    pub fn residue(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> BigInt {
        big_pow(self.p, self.prec)
    }

    /// True when the element vanishes at the current precision.
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Valuation, or `None` when the element is zero modulo `p^prec`.
    pub fn valuation(&self) -> Option<u32> {
        if self.value.is_zero() {
            return None;
        }
        let bp = BigInt::from(self.p);
        let mut v = 0;
        let mut m = self.value.clone();
        while (&m % &bp).is_zero() {
            m /= &bp;
            v += 1;
        }
        Some(v)
    }

    /// Valuation with zero reported as the precision.
    pub fn valuation_capped(&self) -> u32 {
        self.valuation().unwrap_or(self.prec)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Lowers the precision to `prec` (no-op if already lower).
    pub fn reduce(&self, prec: u32) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::new(self.p, prec, &self.value)
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "p-adic operands over different primes");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let k = self.prec.min(o.prec);
        Self::new(self.p, k, &(&self.value + &o.value))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let k = self.prec.min(o.prec);
        Self::new(self.p, k, &(&self.value - &o.value))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.prec, &(-&self.value))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let k = self.prec.min(o.prec);
        Self::new(self.p, k, &(&self.value * &o.value))
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        Self::new(self.p, self.prec, &(&self.value * c))
    }

    pub fn pow(&self, e: u64) -> Self {
        let m = self.modulus();
        PadicInt { p: self.p, prec: self.prec, value: self.value.modpow(&BigInt::from(e), &m) }
    }

    /// Inverse of a unit.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnit);
        }
        let m = self.modulus();
        Ok(PadicInt { p: self.p, prec: self.prec, value: inv_mod_big(&self.value, &m).unwrap() })
    }

    /// Splits `x = p^v u` with `u` a unit known to precision `prec - v`.
    pub fn unit_part(&self) -> Result<(u32, Self)> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::InsufficientPrecision("element vanishes at working precision".into()))?;
        let u = &self.value / big_pow(self.p, v);
        Ok((v, Self::new(self.p, self.prec - v, &u)))
    }

    /// Exact quotient `self / o` in `Z_p`; fails if it is not integral.
    ///
    /// The result has precision `min(prec(self), prec(o)) - v(o)` (with the
    /// precision of `o` taken relative to its valuation).
    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o);
        let (vo, uo) = o.unit_part()?;
        let inv = uo.inv()?;
        let k = self.prec.min(o.prec);
        if k < vo {
            return Err(Error::InsufficientPrecision("divisor valuation exceeds precision".into()));
        }
        let out_prec = (k - vo).min(uo.prec);
        match self.valuation() {
            Some(va) if va < vo => Err(Error::NotIntegral),
            None if self.prec < vo => Err(Error::NotIntegral),
            _ => {
                let q = &self.value / big_pow(self.p, vo);
                Ok(Self::new(self.p, out_prec, &q).mul(&inv.reduce(out_prec)))
            }
        }
    }

    /// Symmetric integer representative in `(-p^k/2, p^k/2]`.
    pub fn to_symmetric(&self) -> BigInt {
        super::int::sym_mod(&self.value, &self.modulus())
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.value, self.p, self.prec)
    }
}

/// `log(1+z)` modulo `p^k` for `z` with `v_p(z) >= 1` (`>= 2` when `p = 2`).
fn log1p_mod(z: &BigInt, p: u64, k: u32) -> BigInt {
    let m = big_pow(p, k);
    let z = z.mod_floor(&m);
    if z.is_zero() {
        return BigInt::zero();
    }
    let bp = BigInt::from(p);
    let mut vz = 0u32;
    {
        let mut t = z.clone();
        while (&t % &bp).is_zero() {
            t /= &bp;
            vz += 1;
        }
    }
    // Largest n with n*vz - floor(log_p n) < k.
    let mut n_max = 1u64;
    loop {
        let n = n_max + 1;
        let lg = (n as f64).log(p as f64).floor() as u64 + 1;
        if n * vz as u64 >= k as u64 + lg + 1 {
            break;
        }
        n_max = n;
    }
    let mut vmax = 0u32;
    {
        let mut q = p;
        while q <= n_max {
            vmax += 1;
            q = q.saturating_mul(p);
        }
    }
    let big_m = big_pow(p, k + vmax);
    let mut sum = BigInt::zero();
    let mut zn = BigInt::one();
    for n in 1..=n_max {
        zn = (&zn * &z) % &big_m;
        let mut vn = 0u32;
        let mut u = n;
        while u % p == 0 {
            u /= p;
            vn += 1;
        }
        let term = (&zn / big_pow(p, vn)) * inv_mod_big(&BigInt::from(u), &m).unwrap();
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum.mod_floor(&m)
}

/// The projection `<u>` of a nonzero `a = p^v u` onto the principal units
/// `1 + 2pZ_p`: `u / omega(u)` for odd `p`, `±u ≡ 1 (mod 4)` for `p = 2`.
pub fn angle_projection(a: &PadicInt) -> Result<PadicInt> {
    let (_, u) = a.unit_part()?;
    let p = u.p;
    let k = u.prec;
    if k == 0 {
        return Err(Error::InsufficientPrecision("unit part unknown".into()));
    }
    if p == 2 {
        if k < 2 {
            return Ok(PadicInt::one(2, k));
        }
        let r = u.value.mod_floor(&BigInt::from(4));
        return Ok(if r.is_one() { u } else { u.neg() });
    }
    let mut w = u.clone();
    for _ in 0..k {
        w = w.pow(p);
    }
    Ok(u.mul(&w.inv()?))
}

/// Iwasawa logarithm `Log_p(a)` of a nonzero element of `Z_p` (so `Log_p(p) = 0`).
///
/// The output precision equals the precision of the unit part of `a`.
pub fn iwasawa_log(a: &PadicInt) -> Result<PadicInt> {
    let (_, u) = a.unit_part()?;
    let p = u.p;
    let k = u.prec;
    if k == 0 {
        return Err(Error::InsufficientPrecision("unit part unknown".into()));
    }
    if p == 2 {
        let r = u.value.mod_floor(&BigInt::from(4));
        let w = if r.is_one() { u.value.clone() } else { -&u.value };
        let z = w - 1;
        return Ok(PadicInt::new(2, k, &log1p_mod(&z, 2, k)));
    }
    let m = u.modulus();
    let w = u.value.modpow(&BigInt::from(p - 1), &m);
    let l = log1p_mod(&(w - 1), p, k);
    let inv = inv_mod_big(&BigInt::from(p - 1), &m).unwrap();
    Ok(PadicInt::new(p, k, &(l * inv)))
}

/// Iwasawa logarithm of a nonzero rational integer, to precision `k`.
pub fn log_of_int(n: &BigInt, p: u64, k: u32) -> Result<PadicInt> {
    let (v, _) = super::int::split_val(n, &BigInt::from(p));
    iwasawa_log(&PadicInt::new(p, k + v, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_kills_p_and_torsion() {
        for p in [2u64, 3, 5, 7] {
            let lp = iwasawa_log(&PadicInt::from_i64(p, 20, p as i64)).unwrap();
            assert!(lp.is_zero());
            let m1 = iwasawa_log(&PadicInt::from_i64(p, 20, -1)).unwrap();
            assert!(m1.is_zero());
        }
    }

    #[test]
    fn log_additive() {
        for p in [2u64, 3, 5, 7, 613] {
            for (a, b) in [(3i64, 11i64), (17, 19), (-5, 101), (1 + p as i64, 2)] {
                if a % p as i64 == 0 || b % p as i64 == 0 {
                    continue;
                }
                let x = PadicInt::from_i64(p, 15, a);
                let y = PadicInt::from_i64(p, 15, b);
                let l = iwasawa_log(&x.mul(&y)).unwrap();
                let r = iwasawa_log(&x).unwrap().add(&iwasawa_log(&y).unwrap());
                assert_eq!(l, r, "p={p} a={a} b={b}");
            }
        }
    }

    #[test]
    fn log_valuation_known_case() {
        // Log_5(9) has valuation exactly 1.
        let l = iwasawa_log(&PadicInt::from_i64(5, 10, 9)).unwrap();
        assert_eq!(l.valuation(), Some(1));
        // Log_2(5) has valuation exactly 2.
        let l = iwasawa_log(&PadicInt::from_i64(2, 10, 5)).unwrap();
        assert_eq!(l.valuation(), Some(2));
    }

    #[test]
    fn division_precision() {
        let a = PadicInt::from_i64(3, 10, 18);
        let b = PadicInt::from_i64(3, 10, 9);
        let q = a.div(&b).unwrap();
        assert_eq!(q.precision(), 8);
        assert_eq!(q.residue(), &BigInt::from(2));
        let c = PadicInt::from_i64(3, 10, 27);
        assert_eq!(b.div(&c), Err(Error::NotIntegral));
    }

    #[test]
    fn angle_is_principal() {
        for p in [3u64, 5, 7] {
            let a = angle_projection(&PadicInt::from_i64(p, 12, 2)).unwrap();
            assert_eq!(a.residue() % BigInt::from(p), BigInt::one());
        }
        let a = angle_projection(&PadicInt::from_i64(2, 12, 7)).unwrap();
        assert_eq!(a.residue() % BigInt::from(4), BigInt::one());
    }
}
