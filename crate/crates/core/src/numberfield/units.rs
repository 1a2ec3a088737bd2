//! Roots of unity and unit utilities.

use num_bigint::BigInt;
use num_traits::One;

use super::FieldContext;
use crate::arith::lll::fincke_pohst;
use crate::error::{Error, Result};

/// The torsion subgroup `μ(F)`: its order and a generator.
#[derive(Clone, Debug)]
pub struct Torsion {
    pub w: u64,
    pub generator: Vec<BigInt>,
}

fn euler_phi(mut m: u64) -> u64 {
    let mut r = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

/// Multiplicative order of `x`, if it is a root of unity of order at most `limit`.
fn root_order(ctx: &FieldContext, x: &[BigInt], limit: u64) -> Option<u64> {
    let one = &ctx.order.one;
    let mut y = x.to_vec();
    for k in 1..=limit {
        if &y == one {
            return Some(k);
        }
        y = ctx.mul(&y, x);
    }
    None
}

/// Roots of unity: every root of unity has `T2 = n`, so enumerate
/// `T2 <= n + 1/2` and test exactly.
pub fn torsion(ctx: &FieldContext) -> Result<Torsion> {
    let n = ctx.n as u64;
    if ctx.r1 > 0 {
        return Ok(Torsion { w: 2, generator: ctx.order.scalar(&-BigInt::one()) });
    }
    let limit = (1..=4 * n * n + 2).filter(|&m| n % euler_phi(m) == 0).max().unwrap_or(2);
    let gram = ctx.t2_gram();
    let cands = fincke_pohst(&gram, n as f64 + 0.5, 100_000);
    let mut best = (2u64, ctx.order.scalar(&-BigInt::one()));
    let mut count = 0u64;
    for c in cands {
        let x: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
        if let Some(k) = root_order(ctx, &x, limit) {
            count += 1;
            let neg: Vec<BigInt> = x.iter().map(|v| -v).collect();
            let k2 = root_order(ctx, &neg, limit).unwrap_or(k);
            for (kk, el) in [(k, x), (k2, neg)] {
                if kk > best.0 {
                    best = (kk, el);
                }
            }
        }
    }
    let w = 2 * count;
    if w != best.0 {
        return Err(Error::Inconsistent(format!("found {w} roots of unity but generator of order {}", best.0)));
    }
    Ok(Torsion { w, generator: best.1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::ZPoly;
    use crate::numberfield::maximal_order;

    fn w_of(f: &[i64]) -> u64 {
        torsion(&maximal_order(&ZPoly::from_i64(f)).unwrap()).unwrap().w
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(w_of(&[1, 0, 1]), 4);
        assert_eq!(w_of(&[1, 1, 1]), 6);
        assert_eq!(w_of(&[5, 0, 1]), 2);
        assert_eq!(w_of(&[-2, 0, 1]), 2);
        assert_eq!(w_of(&[1, 0, 0, 0, 1]), 8);
        assert_eq!(w_of(&[1, 1, 1, 1, 1]), 10);
        // Q(i, sqrt 3) contains ζ12
        assert_eq!(w_of(&[16, 0, -4, 0, 1]), 12);
    }
}
