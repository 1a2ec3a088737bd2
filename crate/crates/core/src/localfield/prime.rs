//! Primes of a p-maximal order above a rational prime `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::order::{AlgModP, Order, Subspace};
use crate::arith::fp;
use crate::arith::int::{big_pow, sym_mod};
use crate::arith::matrix::{hnf_modular, IntMat};

/// A prime ideal `P | p` of an order that is maximal at `p`.
#[derive(Clone, Debug)]
pub struct PrimeData {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    /// `P / pO` inside `O/pO`.
    pub ideal_mod_p: Subspace,
    /// `(P^e + pO) / pO`, the kernel of the projection onto the other components.
    pub stable: Subspace,
    /// HNF of `P` in `O`-coordinates.
    pub hnf: IntMat,
    /// An element of `P \ P^2`.
    pub uniformizer: Vec<BigInt>,
    /// `Θ` with `v_P(Θ) = 1` and `Θ` a unit at the other primes above `p`.
    pub theta: Vec<BigInt>,
    /// `τ` with `v_P(τ) = e - 1` and `v_Q(τ) >= e_Q` for `Q ≠ P`.
    pub tau: Vec<BigInt>,
    /// The idempotent of `O/pO` attached to `P`.
    pub idem_p: Vec<u64>,
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn stable_power(alg: &AlgModP, m: &Subspace) -> Subspace {
    let mut cur = m.clone();
    loop {
        let next = alg.ideal_mul(&cur, m);
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

/// Lifts an idempotent of `O/pO` to an idempotent modulo `p^k`.
pub fn lift_idempotent(order: &Order, e0: &[BigInt], p: u64, k: u32) -> Vec<BigInt> {
    let m = big_pow(p, k);
    let mut e: Vec<BigInt> = e0.iter().map(|x| x.mod_floor(&m)).collect();
    loop {
        let e2 = order.mul_mod(&e, &e, &m);
        if e2 == e {
            return e;
        }
        let e3 = order.mul_mod(&e2, &e, &m);
        e = e2
            .iter()
            .zip(&e3)
            .map(|(a, b)| (BigInt::from(3) * a - BigInt::from(2) * b).mod_floor(&m))
            .collect();
    }
}

/// All primes above `p`. The order must be p-maximal.
pub fn decompose(order: &Order, p: u64) -> Vec<PrimeData> {
    let n = order.n;
    let alg = order.mod_p(p);
    let mut maxs = alg.maximal_ideals();
    maxs.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.rows.cmp(&b.rows)));
    let stables: Vec<Subspace> = maxs.iter().map(|m| stable_power(&alg, m)).collect();
    let bp = BigInt::from(p);
    let p2 = &bp * &bp;
    let mut out = Vec::with_capacity(maxs.len());
    for (i, m) in maxs.iter().enumerate() {
        let f = (n - m.dim()) as u32;
        let e = ((n - stables[i].dim()) as u32) / f;
        // idempotent: ε ∈ ∩_{j≠i} S_j, 1 - ε ∈ S_i
        let idem_p: Vec<u64> = if maxs.len() == 1 {
            alg.one.clone()
        } else {
            let mut others = Subspace::new((0..n).map(|k| unit_vec(n, k)).collect(), n, p);
            for (j, s) in stables.iter().enumerate() {
                if j != i {
                    others = others.intersect(s, p);
                }
            }
            let mut rows = others.rows.clone();
            rows.extend(stables[i].rows.iter().cloned());
            let c = fp::solve_left(&rows, &alg.one, p).expect("stable powers are not coprime");
            let mut eps = vec![0u64; n];
            for (t, r) in others.rows.iter().enumerate() {
                eps = alg.add(&eps, &alg.scale(r, c[t]));
            }
            eps
        };
        let gens: Vec<Vec<BigInt>> = m.rows.iter().map(|r| to_big(r)).collect();
        let hnf = hnf_modular(&gens, n, &bp);
        let uniformizer = if e == 1 {
            order.scalar(&bp)
        } else {
            let m2 = alg.ideal_mul(m, m);
            let r = m.rows.iter().find(|r| !m2.contains(r, p)).expect("P equals P^2");
            to_big(r)
        };
        let e_lift = lift_idempotent(order, &to_big(&idem_p), p, 2);
        let one_minus: Vec<BigInt> = order.one.iter().zip(&e_lift).map(|(a, b)| a - b).collect();
        let theta_raw = order.add(&order.mul(&e_lift, &uniformizer), &one_minus);
        let theta: Vec<BigInt> = theta_raw.iter().map(|x| sym_mod(x, &p2)).collect();
        let tpow = order.pow(&theta, u64::from(e - 1));
        let tau: Vec<BigInt> = order.mul(&to_big(&idem_p), &tpow).iter().map(|x| sym_mod(x, &bp)).collect();
        out.push(PrimeData {
            p,
            e,
            f,
            ideal_mod_p: m.clone(),
            stable: stables[i].clone(),
            hnf,
            uniformizer,
            theta,
            tau,
            idem_p,
        });
    }
    out
}

fn unit_vec(n: usize, k: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    v[k] = 1;
    v
}

impl PrimeData {
    /// Norm `p^f`.
    pub fn norm(&self) -> BigInt {
        big_pow(self.p, self.f)
    }

    /// Whether an integral element lies in `P`.
    pub fn contains(&self, order: &Order, x: &[BigInt]) -> bool {
        self.ideal_mod_p.contains(&order.reduce_p(x, self.p), self.p)
    }

    /// `v_P(x)` for a nonzero integral element.
    pub fn valuation(&self, order: &Order, x: &[BigInt]) -> u32 {
        let bp = BigInt::from(self.p);
        let g = x.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        assert!(!g.is_zero(), "valuation of zero");
        let mut v = 0u32;
        let mut x: Vec<BigInt> = x.to_vec();
        let mut gg = g;
        while (&gg % &bp).is_zero() {
            gg /= &bp;
            v += self.e;
            for c in x.iter_mut() {
                *c /= &bp;
            }
        }
        loop {
            let y = order.mul(&x, &self.tau);
            if y.iter().all(|c| (c % &bp).is_zero()) {
                x = y.into_iter().map(|c| c / &bp).collect();
                v += 1;
            } else {
                return v;
            }
        }
    }

    /// `v_P(num / den)` for an element given with a rational denominator.
    pub fn valuation_frac(&self, order: &Order, num: &[BigInt], den: &BigInt) -> i64 {
        let vd = crate::arith::int::val_big(den, self.p) as i64;
        self.valuation(order, num) as i64 - vd * self.e as i64
    }

    /// Whether `P` equals the ideal with the given HNF.
    pub fn same_ideal(&self, hnf: &IntMat) -> bool {
        &self.hnf == hnf
    }

    /// The two-element generator `Θ` as an element reduced modulo `p^2`.
    pub fn generator(&self) -> &[BigInt] {
        &self.theta
    }

    /// True when the order has only this prime above `p`.
    pub fn is_only_prime(&self, n: usize) -> bool {
        (self.e * self.f) as usize == n
    }
}

/// Checks `Σ e f = n` and that the primes multiply to `pO` up to the
/// computed exponents (via the dimension count of the stable powers).
pub fn check_decomposition(order: &Order, primes: &[PrimeData]) -> bool {
    let s: u32 = primes.iter().map(|q| q.e * q.f).sum();
    s as usize == order.n && primes.iter().all(|q| q.stable.dim() + (q.e * q.f) as usize == order.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::ZPoly;

    #[test]
    fn gaussian_primes() {
        let f = ZPoly::from_i64(&[1, 0, 1]);
        let o = Order::equation_order(&f);
        let ps = decompose(&o, 2);
        assert_eq!(ps.len(), 1);
        assert_eq!((ps[0].e, ps[0].f), (2, 1));
        let x = o.from_zpoly(&ZPoly::from_i64(&[1, 1]));
        assert_eq!(ps[0].valuation(&o, &x), 1);
        assert_eq!(ps[0].valuation(&o, &o.scalar(&BigInt::from(8))), 6);
        let ps = decompose(&o, 5);
        assert_eq!(ps.len(), 2);
        let x = o.from_zpoly(&ZPoly::from_i64(&[2, 1]));
        let vs: Vec<u32> = ps.iter().map(|q| q.valuation(&o, &x)).collect();
        assert_eq!(vs.iter().sum::<u32>(), 1);
        let ps = decompose(&o, 3);
        assert_eq!((ps[0].e, ps[0].f), (1, 2));
        assert!(check_decomposition(&o, &ps));
    }

    #[test]
    fn valuations_sum_to_norm() {
        // x^4 + 13x^2 - 12x + 52 over its maximal order at small primes
        let f = ZPoly::from_i64(&[52, -12, 13, 0, 1]);
        let mut o = Order::equation_order(&f);
        for p in [2u64, 3, 5, 7, 13] {
            o = o.p_maximal(p);
        }
        let x = o.from_zpoly(&ZPoly::from_i64(&[3, 1, 1]));
        let nx = o.norm(&x);
        for p in [2u64, 3, 5, 7] {
            let ps = decompose(&o, p);
            assert!(check_decomposition(&o, &ps));
            let s: u32 = ps.iter().map(|q| q.f * q.valuation(&o, &x)).sum();
            assert_eq!(s, crate::arith::int::val_big(&nx, p), "p={p}");
            for q in &ps {
                assert_eq!(q.valuation(&o, &q.theta), 1);
                for r in &ps {
                    if !std::ptr::eq(q, r) {
                        assert_eq!(r.valuation(&o, &q.theta), 0);
                    }
                }
                assert_eq!(q.valuation(&o, &o.one), 0);
            }
        }
    }
}
