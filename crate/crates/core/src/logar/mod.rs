//! Logarithmic ramification, logarithmic valuations and logarithmic divisors.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::int::{big_pow, factor_bigint, val_big};
use crate::arith::padic::{iwasawa_log, log_of_int, PadicInt};
use crate::error::{Error, Result};
use crate::localfield::LocalField;
use crate::numberfield::{FieldContext, PrimePlace};

/// `deg_ℓ p`: `Log_ℓ p` for `p ≠ ℓ`, `ℓ` for `p = ℓ ≠ 2` and `4` for `p = ℓ = 2`.
pub fn deg_ell(p: u64, ell: u64, prec: u32) -> PadicInt {
    if p != ell {
        log_of_int(&BigInt::from(p), ell, prec).expect("logarithm of a nonzero integer")
    } else if ell == 2 {
        PadicInt::from_i64(2, prec, 4)
    } else {
        PadicInt::new(ell, prec, &BigInt::from(ell))
    }
}

/// Logarithmic ramification index and inertia degree `(ẽ, f̃)` of a place.
///
/// The `p`-part of `ẽ` is the index `[h_p(F_P^×) : Z_p]` where
/// `h_p(x) = Log_p N(x) / ([F_P:Q_p] deg_p p)`; the other parts agree with `e`.
pub fn log_ramification(ctx: &FieldContext, place: &PrimePlace) -> Result<(u64, u64)> {
    let p = place.p;
    let (e, f) = (u64::from(place.e), u64::from(place.f));
    let ef = e * f;
    if ef % p != 0 {
        return Ok((e, f));
    }
    let v_ef = val_big(&BigInt::from(ef), p);
    let v_deg = if p == 2 { 2 } else { 1 };
    let base = v_ef + v_deg;
    let mut guard = 6u32;
    loop {
        let lf = ctx.local_field(place, base + guard + 2)?;
        let k = base + guard;
        let mut c: Option<i64> = None;
        for g in lf.unit_group_generators()? {
            let n = lf.norm_component(&g).reduce(k + lf.f * valuation_or_zero(&lf, &g));
            let Ok(l) = iwasawa_log(&n) else { continue };
            if let Some(v) = l.valuation() {
                let cv = i64::from(v) - i64::from(base);
                c = Some(c.map_or(cv, |x: i64| x.min(cv)));
            }
        }
        match c {
            Some(c) if c <= 0 => {
                let pe = big_pow(p, (-c) as u32).to_u64().unwrap();
                let e_other = e / p.pow(val_big(&BigInt::from(e), p));
                let et = pe * e_other;
                if ef % et != 0 {
                    return Err(Error::Inconsistent(format!("ẽ = {et} does not divide ef = {ef}")));
                }
                return Ok((et, ef / et));
            }
            Some(c) => {
                return Err(Error::Inconsistent(format!("logarithmic image not containing Z_p (c = {c})")));
            }
            None if guard < 40 => guard *= 2,
            None => return Err(Error::InsufficientPrecision("all local logarithms vanish".into())),
        }
    }
}

fn valuation_or_zero(lf: &LocalField, g: &[BigInt]) -> u32 {
    lf.valuation(g).unwrap_or(0)
}

/// A place together with its logarithmic invariants relative to `ℓ`.
#[derive(Clone, Debug)]
pub struct LogPlace {
    pub place: PrimePlace,
    pub ell: u64,
    pub prec: u32,
    pub e_tilde: u64,
    pub f_tilde: u64,
    /// `deg_F P = f̃ deg_ℓ p`.
    pub deg: PadicInt,
    /// Completion at `P` (only for places above `ℓ`).
    local: Option<Arc<LocalField>>,
}

impl LogPlace {
    pub fn new(ctx: &FieldContext, place: &PrimePlace, ell: u64, prec: u32) -> Result<LogPlace> {
        let (e_tilde, f_tilde) = log_ramification(ctx, place)?;
        let deg = deg_ell(place.p, ell, prec).mul_int(&BigInt::from(f_tilde));
        let local = if place.p == ell {
            let extra = deg.valuation().unwrap_or(prec) + 4;
            Some(Arc::new(ctx.local_field(place, prec + extra)?))
        } else {
            None
        };
        Ok(LogPlace { place: place.clone(), ell, prec, e_tilde, f_tilde, deg, local })
    }

    pub fn above_ell(&self) -> bool {
        self.place.p == self.ell
    }

    /// `λ = ẽ / e` as an element of `Z_ℓ`.
    pub fn lambda(&self) -> Result<PadicInt> {
        let num = PadicInt::new(self.ell, self.prec, &BigInt::from(self.e_tilde));
        let den = PadicInt::new(self.ell, self.prec, &BigInt::from(self.place.e));
        num.div(&den)
    }

    /// `ṽ_P(x)` for a nonzero integral element.
    pub fn valuation(&self, ctx: &FieldContext, x: &[BigInt]) -> Result<PadicInt> {
        if x.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidInput("logarithmic valuation of zero".into()));
        }
        match &self.local {
            None => {
                let v = ctx.valuation(&self.place, x);
                Ok(self.lambda()?.mul_int(&BigInt::from(v)))
            }
            Some(lf) => {
                let v = ctx.valuation(&self.place, x);
                let need = self.prec + self.deg.valuation().unwrap_or(self.prec) + lf.f * v + 2;
                let lf = if need > lf.prec { Arc::new(ctx.local_field(&self.place, need)?) } else { lf.clone() };
                let n = lf.norm(x);
                let l = iwasawa_log(&n)?;
                let deg = deg_ell(self.place.p, self.ell, need).mul_int(&BigInt::from(self.f_tilde));
                let q = l.div(&deg).map_err(|_| Error::Inconsistent("Log N(x) / deg not integral".into()))?;
                if q.precision() < self.prec {
                    return Err(Error::InsufficientPrecision("logarithmic valuation".into()));
                }
                Ok(q.neg().reduce(self.prec))
            }
        }
    }

    /// `ṽ_P(num / den)` for an integral `num` and a nonzero rational integer `den`.
    pub fn valuation_frac(&self, ctx: &FieldContext, num: &[BigInt], den: &BigInt) -> Result<PadicInt> {
        let a = self.valuation(ctx, num)?;
        if den.abs().is_one() {
            return Ok(a);
        }
        let b = self.valuation(ctx, &ctx.order.scalar(den))?;
        Ok(a.sub(&b))
    }
}

/// Logarithmic places above `ℓ`, in decomposition order.
pub fn places_above(ctx: &FieldContext, ell: u64, prec: u32) -> Result<Vec<LogPlace>> {
    ctx.places(ell).iter().map(|pl| LogPlace::new(ctx, pl, ell, prec)).collect()
}

/// `ṽ_P(α)` at an arbitrary place.
pub fn log_valuation(ctx: &FieldContext, place: &LogPlace, alpha: &[BigInt]) -> Result<PadicInt> {
    place.valuation(ctx, alpha)
}

/// A logarithmic divisor `Σ n_P P` with coefficients in `Z/ℓ^prec`.
#[derive(Clone, Debug)]
pub struct LogDivisor {
    pub ell: u64,
    pub prec: u32,
    pub terms: Vec<(LogPlace, PadicInt)>,
}

impl LogDivisor {
    pub fn zero(ell: u64, prec: u32) -> LogDivisor {
        LogDivisor { ell, prec, terms: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_zero())
    }

    fn key(p: &LogPlace) -> (u64, usize) {
        (p.place.p, p.place.index)
    }

    pub fn coefficient(&self, place: &PrimePlace) -> PadicInt {
        self.terms
            .iter()
            .find(|(p, _)| Self::key(p) == (place.p, place.index))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| PadicInt::zero(self.ell, self.prec))
    }

    /// `a·self + other`.
    pub fn scale_add(&self, a: &PadicInt, other: &LogDivisor) -> LogDivisor {
        let mut terms: Vec<(LogPlace, PadicInt)> = self.terms.iter().map(|(p, c)| (p.clone(), c.mul(a))).collect();
        for (p, c) in &other.terms {
            match terms.iter_mut().find(|(q, _)| Self::key(q) == Self::key(p)) {
                Some((_, d)) => *d = d.add(c),
                None => terms.push((p.clone(), c.clone())),
            }
        }
        LogDivisor { ell: self.ell, prec: self.prec, terms }
    }
}

/// `deg_F(Σ n_P P) = Σ n_P deg_F P`.
pub fn divisor_degree(d: &LogDivisor) -> PadicInt {
    d.terms.iter().fold(PadicInt::zero(d.ell, d.prec), |acc, (p, c)| acc.add(&c.mul(&p.deg.reduce(d.prec))))
}

/// The principal logarithmic divisor of a nonzero integral element: its
/// support is the support of `(α)` together with all places above `ℓ`.
pub fn div_map(ctx: &FieldContext, ell: u64, prec: u32, alpha: &[BigInt]) -> Result<LogDivisor> {
    let nx = ctx.norm(alpha);
    if nx.is_zero() {
        return Err(Error::InvalidInput("div of zero".into()));
    }
    let mut terms = Vec::new();
    for lp in places_above(ctx, ell, prec)? {
        let c = lp.valuation(ctx, alpha)?;
        terms.push((lp, c));
    }
    for (q, _) in factor_bigint(&nx.abs())? {
        let q = q.to_u64().ok_or_else(|| Error::FactorisationFailed("prime above u64".into()))?;
        if q == ell {
            continue;
        }
        for pl in ctx.places(q).iter() {
            if ctx.valuation(pl, alpha) > 0 {
                let lp = LogPlace::new(ctx, pl, ell, prec)?;
                let c = lp.valuation(ctx, alpha)?;
                terms.push((lp, c));
            }
        }
    }
    Ok(LogDivisor { ell, prec, terms })
}

/// `Log_ℓ N(P)` for a place not above `ℓ`; equals `λ_P deg_F P`.
pub fn log_norm(place: &PrimePlace, ell: u64, prec: u32) -> PadicInt {
    log_of_int(&place.norm(), ell, prec).expect("logarithm of a prime power")
}

/// Sum of `ẽ f̃` over the places above `p`, which equals the degree.
pub fn check_places(places: &[LogPlace], n: usize) -> bool {
    places.iter().map(|p| p.e_tilde * p.f_tilde).sum::<u64>() == n as u64
        && places.iter().all(|p| (p.e_tilde * p.f_tilde) == u64::from(p.place.e * p.place.f))
}

/// Checks that the `q`-parts of `ẽ` and `e` agree for every prime `q ≠ p`.
pub fn other_parts_agree(place: &LogPlace) -> bool {
    let p = BigInt::from(place.place.p);
    let strip = |mut x: BigInt| {
        while x.is_multiple_of(&p) {
            x /= &p;
        }
        x
    };
    strip(BigInt::from(place.e_tilde)) == strip(BigInt::from(place.place.e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::ZPoly;
    use crate::numberfield::maximal_order;

    #[test]
    fn ell_adic_degrees() {
        assert_eq!(deg_ell(3, 3, 10), PadicInt::from_i64(3, 10, 3));
        assert_eq!(deg_ell(2, 2, 10), PadicInt::from_i64(2, 10, 4));
        assert_eq!(deg_ell(7, 2, 20).valuation(), Some(3));
    }

    #[test]
    fn gaussian_dyadic_place() {
        let ctx = maximal_order(&ZPoly::from_i64(&[1, 0, 1])).unwrap();
        let pl = ctx.places(2)[0].clone();
        assert_eq!(log_ramification(&ctx, &pl).unwrap(), (2, 1));
        let q = maximal_order(&ZPoly::from_i64(&[-2, 0, 1])).unwrap();
        let pl = q.places(3)[0].clone();
        assert_eq!(log_ramification(&q, &pl).unwrap(), (1, 2));
    }

    #[test]
    fn principal_divisors_have_degree_zero() {
        let ctx = maximal_order(&ZPoly::from_i64(&[1, 0, 1])).unwrap();
        for ell in [2u64, 5] {
            for x in [[2i64, 1], [3, 4], [7, 0], [1, 10]] {
                let a: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
                let d = div_map(&ctx, ell, 12, &a).unwrap();
                assert!(divisor_degree(&d).is_zero(), "ℓ={ell} x={x:?}");
            }
        }
    }
}
