//! Integral ideals as row-HNF matrices on the integral basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::FieldContext;
use crate::arith::lll::lll_integral;
use crate::arith::matrix::{hnf_modular, solve_hnf, IntMat};

/// An integral ideal: the rows of `hnf` form a Z-basis (upper triangular,
/// positive diagonal, entries above the diagonal reduced).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    hnf: IntMat,
}

impl Ideal {
    pub fn from_hnf(hnf: IntMat) -> Ideal {
        Ideal { hnf }
    }

    pub fn unit(n: usize) -> Ideal {
        Ideal { hnf: IntMat::identity(n) }
    }

    /// Ideal generated by the given elements together with `d`, where `d` is
    /// a nonzero integer known to lie in the ideal.
    pub fn from_generators(ctx: &FieldContext, gens: &[Vec<BigInt>], d: &BigInt) -> Ideal {
        let n = ctx.n;
        let mut rows = Vec::new();
        for g in gens {
            let m = ctx.order.mult_matrix(g);
            rows.extend(m.rows_vec());
        }
        Ideal { hnf: hnf_modular(&rows, n, &d.abs()) }
    }

    /// The principal ideal `xO` of a nonzero integral element.
    pub fn principal(ctx: &FieldContext, x: &[BigInt]) -> Ideal {
        let nx = ctx.norm(x).abs();
        Ideal::from_generators(ctx, &[x.to_vec()], &nx)
    }

    pub fn hnf(&self) -> &IntMat {
        &self.hnf
    }

    pub fn norm(&self) -> BigInt {
        (0..self.hnf.nrows()).map(|i| self.hnf.get(i, i).clone()).product()
    }

    /// The positive generator of `I ∩ Z`.
    pub fn min_integer(&self) -> BigInt {
        let n = self.hnf.nrows();
        let mut x = vec![BigInt::zero(); n];
        // exponent of the additive group O/I
        let mut l = BigInt::one();
        for i in 0..n {
            x.iter_mut().for_each(|c| *c = BigInt::zero());
            x[i] = BigInt::one();
            l = l.lcm(&self.order_of(&x));
        }
        l
    }

    /// Additive order of an element in `O/I`.
    fn order_of(&self, x: &[BigInt]) -> BigInt {
        let n = self.hnf.nrows();
        let mut k = BigInt::one();
        let mut rem = x.to_vec();
        for c in 0..n {
            let piv = self.hnf.get(c, c);
            let g = rem[c].gcd(piv);
            let t = if g.is_zero() { BigInt::one() } else { piv / &g };
            if !t.is_one() {
                k *= &t;
                for r in rem.iter_mut() {
                    *r *= &t;
                }
            }
            let q = &rem[c] / piv;
            if !q.is_zero() {
                for j in c..n {
                    let s = &q * self.hnf.get(c, j);
                    rem[j] -= s;
                }
            }
        }
        k
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        let piv: Vec<usize> = (0..self.hnf.nrows()).collect();
        solve_hnf(&self.hnf, &piv, x).is_some()
    }

    pub fn mul(&self, ctx: &FieldContext, o: &Ideal) -> Ideal {
        let n = ctx.n;
        let d = self.norm() * o.norm();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                rows.push(ctx.mul(self.hnf.row(i), o.hnf.row(j)).into_iter().map(|x| x.mod_floor(&d)).collect());
            }
        }
        Ideal { hnf: hnf_modular(&rows, n, &d) }
    }

    pub fn pow(&self, ctx: &FieldContext, k: u32) -> Ideal {
        let mut r = Ideal::unit(ctx.n);
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(ctx, &b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(ctx, &b);
            }
        }
        r
    }

    /// A T2-reduced Z-basis of the ideal (coordinates on the integral basis).
    pub fn reduced_basis(&self, ctx: &FieldContext) -> Vec<Vec<BigInt>> {
        lll_integral(&self.hnf.rows_vec(), |x| ctx.t2_vector(x))
    }

    /// A basis reduced for T2 with the archimedean place `i` scaled by
    /// `exp(weights[i])`; skewed weights surface unbalanced elements.
    pub fn reduced_basis_weighted(&self, ctx: &FieldContext, weights: &[f64]) -> Vec<Vec<BigInt>> {
        let scale: Vec<f64> = weights.iter().map(|w| w.exp()).collect();
        lll_integral(&self.hnf.rows_vec(), |x| {
            let mut v = ctx.t2_vector(x);
            let mut k = 0;
            for (i, s) in scale.iter().enumerate() {
                let width = if i < ctx.r1 { 1 } else { 2 };
                for c in &mut v[k..k + width] {
                    *c *= s;
                }
                k += width;
            }
            v
        })
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::ZPoly;
    use crate::numberfield::maximal_order;

    #[test]
    fn prime_products() {
        let c = maximal_order(&ZPoly::from_i64(&[1, 0, 1])).unwrap();
        let ps = c.places(5);
        let a = ps[0].ideal();
        let b = ps[1].ideal();
        let ab = a.mul(&c, &b);
        assert_eq!(ab, Ideal::principal(&c, &c.order.scalar(&BigInt::from(5))));
        assert_eq!(a.pow(&c, 3).norm(), BigInt::from(125));
        assert_eq!(a.min_integer(), BigInt::from(5));
        let two = c.places(2)[0].ideal();
        assert_eq!(two.pow(&c, 2), Ideal::principal(&c, &c.order.scalar(&BigInt::from(2))));
        assert_eq!(two.min_integer(), BigInt::from(2));
    }
}
