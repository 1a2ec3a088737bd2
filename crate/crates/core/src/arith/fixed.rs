//! Binary fixed-point reals and complexes on top of `BigInt`.
//!
//! A value `x` at precision `prec` is stored as the integer `round(x 2^prec)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::ZPoly;

pub fn from_f64(x: f64, prec: u32) -> BigInt {
    let (m, e, s) = num_traits::float::FloatCore::integer_decode(x);
    let mut v = BigInt::from(m);
    let sh = e as i64 + prec as i64;
    if sh >= 0 {
        v <<= sh as usize;
    } else {
        v >>= (-sh) as usize;
    }
    if s < 0 {
        -v
    } else {
        v
    }
}

pub fn to_f64(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits();
    if bits > 1000 {
        let sh = bits - 900;
        return (x >> sh as usize).to_f64().unwrap() * 2f64.powi(sh as i32 - prec as i32);
    }
    x.to_f64().unwrap() * 2f64.powi(-(prec as i32))
}

pub fn from_int(n: &BigInt, prec: u32) -> BigInt {
    n << prec as usize
}

pub fn mul(a: &BigInt, b: &BigInt, prec: u32) -> BigInt {
    (a * b) >> prec as usize
}

pub fn div(a: &BigInt, b: &BigInt, prec: u32) -> BigInt {
    (a << prec as usize).div_floor(b)
}

/// `2 atanh(t)` for a fixed-point `0 <= t <= 1/3`.
fn two_atanh(t: &BigInt, prec: u32) -> BigInt {
    let t2 = mul(t, t, prec);
    let mut term = t.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        sum += &term / k;
        term = mul(&term, &t2, prec);
        k += 2;
    }
    sum << 1
}

pub fn ln2(prec: u32) -> BigInt {
    let p = prec + 16;
    let third = (BigInt::one() << p as usize) / 3;
    two_atanh(&third, p) >> 16
}

/// Natural logarithm of a positive fixed-point number.
pub fn ln(y: &BigInt, prec: u32) -> BigInt {
    assert!(y.is_positive(), "logarithm of a non-positive number");
    let g = 24u32;
    let p = prec + g;
    let yy = y << g as usize;
    // yy = m 2^k with m in [1, 2) at precision p
    let k = yy.bits() as i64 - 1 - p as i64;
    let m = if k >= 0 { &yy >> k as usize } else { &yy << (-k) as usize };
    let one = BigInt::one() << p as usize;
    let t = div(&(&m - &one), &(&m + &one), p);
    let r = two_atanh(&t, p) + ln2(p) * k;
    r >> g as usize
}

/// Fixed-point complex number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFixed {
    pub re: BigInt,
    pub im: BigInt,
}

impl CFixed {
    pub fn zero() -> CFixed {
        CFixed { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_c64(z: Complex64, prec: u32) -> CFixed {
        CFixed { re: from_f64(z.re, prec), im: from_f64(z.im, prec) }
    }

    pub fn to_c64(&self, prec: u32) -> Complex64 {
        Complex64::new(to_f64(&self.re, prec), to_f64(&self.im, prec))
    }

    pub fn add(&self, o: &CFixed) -> CFixed {
        CFixed { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &CFixed) -> CFixed {
        CFixed { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn scale_int(&self, c: &BigInt) -> CFixed {
        CFixed { re: &self.re * c, im: &self.im * c }
    }

    pub fn div_int(&self, c: &BigInt) -> CFixed {
        CFixed { re: self.re.div_floor(c), im: self.im.div_floor(c) }
    }

    pub fn mul(&self, o: &CFixed, prec: u32) -> CFixed {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        CFixed { re: re >> prec as usize, im: im >> prec as usize }
    }

    /// `|z|^2`.
    pub fn norm_sq(&self, prec: u32) -> BigInt {
        (&self.re * &self.re + &self.im * &self.im) >> prec as usize
    }

    pub fn div(&self, o: &CFixed, prec: u32) -> CFixed {
        let d = &o.re * &o.re + &o.im * &o.im;
        let re = (&self.re * &o.re + &self.im * &o.im) << prec as usize;
        let im = (&self.im * &o.re - &self.re * &o.im) << prec as usize;
        CFixed { re: re.div_floor(&d), im: im.div_floor(&d) }
    }
}

/// Horner evaluation of an integer polynomial at a fixed-point complex.
pub fn eval_poly(f: &ZPoly, z: &CFixed, prec: u32) -> CFixed {
    let mut acc = CFixed::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(z, prec);
        acc.re += c << prec as usize;
    }
    acc
}

/// Newton refinement of an approximate simple root of `f` to `prec` bits.
pub fn refine_root(f: &ZPoly, z0: Complex64, prec: u32) -> CFixed {
    let df = f.derivative();
    let mut z = CFixed::from_c64(z0, prec);
    let tol = BigInt::from(1u32) << 4;
    for _ in 0..200 {
        let fz = eval_poly(f, &z, prec);
        let dz = eval_poly(&df, &z, prec);
        if dz.re.is_zero() && dz.im.is_zero() {
            break;
        }
        let step = fz.div(&dz, prec);
        z = z.sub(&step);
        if step.re.abs() <= tol && step.im.abs() <= tol {
            break;
        }
    }
    if z0.im == 0.0 {
        z.im = BigInt::zero();
    }
    z
}
