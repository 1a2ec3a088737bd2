//! Global arithmetic of a number field `F = Q[x]/(f)`: maximal order,
//! places, ideals, class group and (S-)units.

pub mod classgroup;
pub mod ideal;
pub mod units;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::fixed::{self, refine_root, CFixed};
use crate::arith::int::{factor_bigint, is_prime_u64};
use crate::arith::lll::lll_integral;
use crate::arith::poly::{check_irreducible, QPoly, ZPoly};
use crate::arith::real::{count_real_roots, embeddings};
use crate::error::{Error, Result};
use crate::localfield::{decompose as decompose_order, LocalField, Order, PrimeData};

pub use classgroup::{ClassGroup, ClassGroupOptions};
pub use ideal::Ideal;

/// A prime ideal of the maximal order, with its two-element generators
/// `(p, Θ(α))`.
#[derive(Clone, Debug)]
pub struct PrimePlace {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    /// Position among the primes above `p` (the matching local factor).
    pub index: usize,
    pub data: PrimeData,
}

impl PrimePlace {
    pub fn norm(&self) -> BigInt {
        self.data.norm()
    }

    pub fn norm_u64(&self) -> Option<u64> {
        self.norm().to_u64()
    }

    /// `Θ` as a polynomial in the generating root.
    pub fn theta(&self, ctx: &FieldContext) -> QPoly {
        ctx.order.to_qpoly(&self.data.theta)
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::from_hnf(self.data.hnf.clone())
    }
}

/// Everything known about a number field, built once.
#[derive(Debug)]
pub struct FieldContext {
    pub poly: ZPoly,
    pub n: usize,
    pub r1: usize,
    pub r2: usize,
    pub disc: BigInt,
    /// Maximal order on a T2-reduced integral basis.
    pub order: Order,
    real_roots: Vec<f64>,
    complex_roots: Vec<Complex64>,
    /// `basis_values[i]` = values of `ω_i` at the `r1 + r2` embeddings.
    basis_values: Vec<Vec<Complex64>>,
    places: Mutex<HashMap<u64, Arc<Vec<PrimePlace>>>>,
    fixed_basis: Mutex<HashMap<u32, Arc<Vec<Vec<CFixed>>>>>,
}

impl Clone for FieldContext {
    fn clone(&self) -> Self {
        FieldContext {
            poly: self.poly.clone(),
            n: self.n,
            r1: self.r1,
            r2: self.r2,
            disc: self.disc.clone(),
            order: self.order.clone(),
            real_roots: self.real_roots.clone(),
            complex_roots: self.complex_roots.clone(),
            basis_values: self.basis_values.clone(),
            places: Mutex::new(self.places.lock().unwrap().clone()),
            fixed_basis: Mutex::new(HashMap::new()),
        }
    }
}

fn eval_element(order: &Order, x: &[BigInt], z: Complex64) -> Complex64 {
    let q = order.to_qpoly(x);
    let mut acc = Complex64::new(0.0, 0.0);
    for c in q.coeffs().iter().rev() {
        acc = acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
    }
    acc
}

/// Builds the maximal order of `Q[x]/(poly)` (Round 2 at every prime whose
/// square divides the polynomial discriminant) on a T2-reduced basis.
pub fn maximal_order(poly: &ZPoly) -> Result<FieldContext> {
    check_irreducible(poly)?;
    let n = poly.degree() as usize;
    let dpoly = poly.discriminant();
    let mut order = Order::equation_order(poly);
    for (p, e) in factor_bigint(&dpoly)? {
        if e >= 2 {
            let p = p.to_u64().ok_or_else(|| Error::FactorisationFailed(format!("prime {p} too large")))?;
            order = order.p_maximal(p);
        }
    }
    let r1 = count_real_roots(poly);
    let r2 = (n - r1) / 2;
    let (real_roots, complex_roots) = embeddings(poly);
    let roots: Vec<Complex64> =
        real_roots.iter().map(|&r| Complex64::new(r, 0.0)).chain(complex_roots.iter().copied()).collect();
    let t2 = |ord: &Order, x: &[BigInt]| -> Vec<f64> {
        let mut v = Vec::with_capacity(n);
        for (k, &z) in roots.iter().enumerate() {
            let y = eval_element(ord, x, z);
            if k < r1 {
                v.push(y.re);
            } else {
                v.push(y.re * std::f64::consts::SQRT_2);
                v.push(y.im * std::f64::consts::SQRT_2);
            }
        }
        v
    };
    let ident: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let reduced = lll_integral(&ident, |x| t2(&order, x));
    let order = order.rebased(&reduced);
    let disc = order.discriminant();
    let basis_values: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            roots.iter().map(|&z| eval_element(&order, &e, z)).collect()
        })
        .collect();
    Ok(FieldContext {
        poly: poly.clone(),
        n,
        r1,
        r2,
        disc,
        order,
        real_roots,
        complex_roots,
        basis_values,
        places: Mutex::new(HashMap::new()),
        fixed_basis: Mutex::new(HashMap::new()),
    })
}

impl FieldContext {
    pub fn new(poly: &ZPoly) -> Result<FieldContext> {
        maximal_order(poly)
    }

    /// Number of archimedean places.
    pub fn infinite_places(&self) -> usize {
        self.r1 + self.r2
    }

    pub fn unit_rank(&self) -> usize {
        self.r1 + self.r2 - 1
    }

    pub fn real_roots(&self) -> &[f64] {
        &self.real_roots
    }

    pub fn complex_roots(&self) -> &[Complex64] {
        &self.complex_roots
    }

    /// The primes above `p`, cached.
    pub fn places(&self, p: u64) -> Arc<Vec<PrimePlace>> {
        if let Some(v) = self.places.lock().unwrap().get(&p) {
            return v.clone();
        }
        debug_assert!(is_prime_u64(p));
        let v: Vec<PrimePlace> = decompose_order(&self.order, p)
            .into_iter()
            .enumerate()
            .map(|(index, data)| PrimePlace { p, e: data.e, f: data.f, index, data })
            .collect();
        let v = Arc::new(v);
        self.places.lock().unwrap().insert(p, v.clone());
        v
    }

    /// Completion at a place with `prec` digits of working precision.
    pub fn local_field(&self, place: &PrimePlace, prec: u32) -> Result<LocalField> {
        LocalField::new(&self.order, &place.data, prec)
    }

    pub fn one(&self) -> Vec<BigInt> {
        self.order.one.clone()
    }

    /// Coordinates of an integral element given in the power basis.
    pub fn from_zpoly(&self, z: &ZPoly) -> Result<Vec<BigInt>> {
        let (v, d) = self.order.from_qpoly(&z.to_qpoly());
        if !d.is_one() {
            return Err(Error::NotIntegral);
        }
        Ok(v)
    }

    /// Coordinates `(num, den)` of an arbitrary field element.
    pub fn from_qpoly(&self, q: &QPoly) -> (Vec<BigInt>, BigInt) {
        self.order.from_qpoly(q)
    }

    pub fn to_qpoly(&self, x: &[BigInt]) -> QPoly {
        self.order.to_qpoly(x)
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.order.mul(a, b)
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.order.norm(x)
    }

    /// Values of `x` at the `r1 + r2` embeddings.
    pub fn embed(&self, x: &[BigInt]) -> Vec<Complex64> {
        let k = self.r1 + self.r2;
        let mut out = vec![Complex64::new(0.0, 0.0); k];
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64().unwrap();
            for (o, v) in out.iter_mut().zip(&self.basis_values[i]) {
                *o += v * cf;
            }
        }
        out
    }

    /// Logarithmic embedding `(log|σ_i(x)|)` with complex places weighted by 2.
    pub fn log_embedding(&self, x: &[BigInt]) -> Vec<f64> {
        self.embed(x)
            .iter()
            .enumerate()
            .map(|(i, z)| if i < self.r1 { z.norm().ln() } else { 2.0 * z.norm().ln() })
            .collect()
    }

    /// Values of the integral basis at the archimedean places, to `prec` bits.
    fn basis_fixed(&self, prec: u32) -> Arc<Vec<Vec<CFixed>>> {
        if let Some(v) = self.fixed_basis.lock().unwrap().get(&prec) {
            return v.clone();
        }
        let wp = prec + 32;
        let roots: Vec<CFixed> = self
            .real_roots
            .iter()
            .map(|&r| Complex64::new(r, 0.0))
            .chain(self.complex_roots.iter().copied())
            .map(|z| refine_root(&self.poly, z, wp))
            .collect();
        let vals: Vec<Vec<CFixed>> = (0..self.n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); self.n];
                e[i] = BigInt::one();
                let (num, den) = self.order.to_qpoly(&e).to_zpoly_den();
                roots
                    .iter()
                    .map(|z| {
                        let v = fixed::eval_poly(&num, z, wp).div_int(&den);
                        CFixed { re: v.re >> 32usize, im: v.im >> 32usize }
                    })
                    .collect()
            })
            .collect();
        let v = Arc::new(vals);
        self.fixed_basis.lock().unwrap().insert(prec, v.clone());
        v
    }

    /// Logarithmic embedding (complex places weighted by 2) as fixed-point
    /// integers at `prec` bits.
    pub fn log_embedding_fixed(&self, x: &[BigInt], prec: u32) -> Vec<BigInt> {
        let bv = self.basis_fixed(prec);
        let k = self.r1 + self.r2;
        (0..k)
            .map(|j| {
                let mut z = CFixed::zero();
                for (i, c) in x.iter().enumerate() {
                    if !c.is_zero() {
                        z = z.add(&bv[i][j].scale_int(c));
                    }
                }
                let l = fixed::ln(&z.norm_sq(prec), prec);
                if j < self.r1 {
                    l >> 1usize
                } else {
                    l
                }
            })
            .collect()
    }

    /// Real vector whose squared length is `T2(x)`.
    pub fn t2_vector(&self, x: &[BigInt]) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.n);
        for (i, z) in self.embed(x).iter().enumerate() {
            if i < self.r1 {
                v.push(z.re);
            } else {
                v.push(z.re * std::f64::consts::SQRT_2);
                v.push(z.im * std::f64::consts::SQRT_2);
            }
        }
        v
    }

    /// Gram matrix of T2 on the integral basis.
    pub fn t2_gram(&self) -> Vec<Vec<f64>> {
        let vs: Vec<Vec<f64>> = (0..self.n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); self.n];
                e[i] = BigInt::one();
                self.t2_vector(&e)
            })
            .collect();
        (0..self.n).map(|i| (0..self.n).map(|j| vs[i].iter().zip(&vs[j]).map(|(a, b)| a * b).sum()).collect()).collect()
    }

    /// `v_P(x)` for a nonzero integral element.
    pub fn valuation(&self, place: &PrimePlace, x: &[BigInt]) -> u32 {
        place.data.valuation(&self.order, x)
    }

    /// Valuations of a nonzero integral element at every prime above `p`.
    pub fn valuations_at(&self, p: u64, x: &[BigInt]) -> Vec<u32> {
        self.places(p).iter().map(|pl| self.valuation(pl, x)).collect()
    }

    /// Minkowski bound `(4/π)^{r2} n!/n^n sqrt|D|`.
    pub fn minkowski_bound(&self) -> f64 {
        let n = self.n as f64;
        let mut fact = 1.0;
        for k in 1..=self.n {
            fact *= k as f64;
        }
        (4.0 / std::f64::consts::PI).powi(self.r2 as i32) * fact / n.powi(self.n as i32)
            * self.disc.abs().to_f64().unwrap().sqrt()
    }

    /// Bach bound `12 log^2 |D|` (valid under GRH).
    pub fn bach_bound(&self) -> f64 {
        let l = self.disc.abs().to_f64().unwrap().ln();
        12.0 * l * l
    }

    pub fn disc_abs_f64(&self) -> f64 {
        self.disc.abs().to_f64().unwrap()
    }

    /// Whether `x` is a root of unity (exact check `x^k = 1` for the given `k`).
    pub fn is_one(&self, x: &[BigInt]) -> bool {
        x == self.order.one.as_slice()
    }

    pub fn is_negative_disc(&self) -> bool {
        self.disc.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_discriminants() {
        let c = maximal_order(&ZPoly::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(c.disc, BigInt::from(-4));
        let c = maximal_order(&ZPoly::from_i64(&[-1173, 0, 1])).unwrap();
        assert_eq!(c.disc, BigInt::from(1173));
        let c = maximal_order(&ZPoly::from_i64(&[-12, 0, 1])).unwrap();
        assert_eq!(c.disc, BigInt::from(12));
    }

    #[test]
    fn quartic_discriminant_identity() {
        let f = ZPoly::from_i64(&[52, -12, 13, 0, 1]);
        let c = maximal_order(&f).unwrap();
        let idx = c.order.index();
        assert_eq!(&c.disc * &idx * &idx, f.discriminant());
        assert_eq!((c.r1, c.r2), (0, 2));
    }

    #[test]
    fn place_counts() {
        // Q(i, sqrt 11): 5 splits completely.
        let c = maximal_order(&ZPoly::from_i64(&[144, 0, -20, 0, 1])).unwrap();
        let ps = c.places(5);
        assert_eq!(ps.len(), 4);
        // Q(i, sqrt 78): 2 is totally ramified.
        let c = maximal_order(&ZPoly::from_i64(&[79 * 79, 0, -154, 0, 1])).unwrap();
        let ps = c.places(2);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].e, 4);
    }

    #[test]
    fn reducible_rejected() {
        let r = maximal_order(&ZPoly::from_i64(&[-1, 0, 1]));
        assert!(matches!(r, Err(Error::ReduciblePolynomial(_))));
    }
}
