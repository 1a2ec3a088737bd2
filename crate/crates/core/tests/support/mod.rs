//! Independent reference computations shared by the integration tests.
//!
//! The oracles in this file do not call into the library: class groups come
//! from binary quadratic forms, fundamental units from continued fractions and
//! p-adic logarithms from exact rational power series. `checks` holds the
//! sweeps comparing the library against them.

#![allow(dead_code)]

pub mod checks;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Form = (i64, i64, i64);

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, x, y) = egcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

/// Fundamental discriminant of `Q(√d)` for squarefree `d`.
pub fn fundamental_discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Composition of primitive forms with positive first coefficient.
fn compose(f1: Form, f2: Form, disc: i64) -> Form {
    let (mut f1, mut f2) = (f1, f2);
    if f1.0 > f2.0 {
        std::mem::swap(&mut f1, &mut f2);
    }
    let (a1, b1, _) = f1;
    let (a2, b2, c2) = f2;
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (d, y1) = if a2 % a1 == 0 {
        (a1, 0)
    } else {
        let (d, u, _) = egcd(a2, a1);
        (d, u)
    };
    let (d1, x2, y2) = if s % d == 0 {
        (d, 0, -1)
    } else {
        let (d1, u, v) = egcd(s, d);
        (d1, u, -v)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = ((y1 as i128 * y2 as i128 * n as i128 - x2 as i128 * c2 as i128).rem_euclid(v1 as i128)) as i64;
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = ((b3 as i128 * b3 as i128 - disc as i128) / (4 * a3 as i128)) as i64;
    (a3, b3, c3)
}

fn reduce_definite(f: Form, disc: i64) -> Form {
    let (mut a, mut b, mut c) = f;
    loop {
        if b > a || b <= -a {
            let k = (a - b).div_euclid(2 * a);
            b += 2 * k * a;
            c = (b * b - disc) / (4 * a);
        }
        if a > c {
            (a, b, c) = (c, -b, a);
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return (a, b, c);
    }
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// A finite abelian group given by elements and a multiplication oracle.
struct Group {
    elems: Vec<Form>,
    index: HashMap<Form, usize>,
    identity: usize,
}

fn power(g: usize, mut e: u64, mul: &dyn Fn(usize, usize) -> usize, identity: usize) -> usize {
    let mut acc = identity;
    let mut b = g;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors (ascending, each `> 1`) of the quotient of a group of
/// order `order` by the subgroup `sub`, read off from element orders.
fn structure(order: u64, sub: &[usize], mul: &dyn Fn(usize, usize) -> usize, identity: usize) -> Vec<u64> {
    let q = order / sub.len() as u64;
    if q == 1 {
        return vec![];
    }
    let in_sub = |x: usize| sub.contains(&x);
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for (p, e) in prime_factors(q) {
        // counts[k] = #{x : x^(p^k) ∈ sub}
        let mut counts = vec![0u64; e as usize + 1];
        for x in 0..order as usize {
            let cofactor = q / p.pow(e);
            let y = power(x, cofactor, mul, identity);
            let mut z = y;
            for k in 0..=e as usize {
                if in_sub(z) {
                    counts[k] += 1;
                }
                z = power(z, p, mul, identity);
            }
        }
        // number of cyclic p-factors of order >= p^k is log_p(counts[k]/counts[k-1])
        let mut ge = vec![0u32; e as usize + 2];
        for k in 1..=e as usize {
            let mut ratio = counts[k] / counts[k - 1];
            let mut r = 0;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            ge[k] = r;
        }
        let mut factors = Vec::new();
        for k in 1..=e as usize {
            for _ in 0..(ge[k] - ge[k + 1]) {
                factors.push(p.pow(k as u32));
            }
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(factors);
    }
    let len = per_prime.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut out: Vec<u64> =
        (0..len).map(|i| per_prime.iter().map(|f| f.get(i).copied().unwrap_or(1)).product()).collect();
    out.reverse();
    out
}

/// Class group of the imaginary quadratic field of discriminant `disc < 0`.
pub fn imaginary_class_group(disc: i64) -> Vec<u64> {
    assert!(disc < 0);
    let mut elems = Vec::new();
    let amax = isqrt(-disc / 3);
    for a in 1..=amax {
        for b in -a + 1..=a {
            if (b * b - disc) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - disc) / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            elems.push((a, b, c));
        }
    }
    let index: HashMap<Form, usize> = elems.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let b0 = disc.rem_euclid(2);
    let identity = index[&reduce_definite((1, b0, (b0 * b0 - disc) / 4), disc)];
    let g = Group { elems, index, identity };
    let mul = |x: usize, y: usize| g.index[&reduce_definite(compose(g.elems[x], g.elems[y], disc), disc)];
    structure(g.elems.len() as u64, &[g.identity], &mul, g.identity)
}

struct Indefinite {
    disc: i64,
    s: i64,
}

impl Indefinite {
    fn lt_sqrt(&self, x: i64) -> bool {
        x < 0 || x * x < self.disc
    }

    fn gt_sqrt(&self, x: i64) -> bool {
        x > 0 && x * x > self.disc
    }

    fn is_reduced(&self, (a, b, _): Form) -> bool {
        b > 0 && self.lt_sqrt(b) && self.gt_sqrt(b + 2 * a.abs()) && self.lt_sqrt(2 * a.abs() - b)
    }

    fn rho(&self, (_, b, c): Form) -> Form {
        let m = 2 * c.abs();
        let nb = if self.gt_sqrt(c.abs()) {
            let mut x = (-b).rem_euclid(m);
            if x > c.abs() {
                x -= m;
            }
            x
        } else {
            self.s - (self.s + b).rem_euclid(m)
        };
        (c, nb, (nb * nb - self.disc) / (4 * c))
    }

    fn reduce(&self, mut f: Form) -> Form {
        let mut guard = 0;
        while !self.is_reduced(f) {
            f = self.rho(f);
            guard += 1;
            assert!(guard < 10_000, "reduction did not terminate");
        }
        f
    }
}

/// Class group (in the wide sense) of the real quadratic field of
/// discriminant `disc > 0`: cycles of reduced indefinite forms, modulo the
/// class of the negated principal form.
pub fn real_class_group(disc: i64) -> Vec<u64> {
    assert!(disc > 0);
    let ind = Indefinite { disc, s: isqrt(disc) };
    let mut reduced = Vec::new();
    for b in 1..=ind.s {
        if (disc - b * b) % 4 != 0 {
            continue;
        }
        let m = (disc - b * b) / 4;
        if m == 0 {
            continue;
        }
        for a in 1..=m.min(ind.s) {
            if m % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let f = (sa, b, -m / sa);
                if ind.is_reduced(f) {
                    reduced.push(f);
                }
            }
        }
    }
    // cycle id for each reduced form, plus a representative with a > 0
    let mut cycle_of: HashMap<Form, usize> = HashMap::new();
    let mut reps: Vec<Form> = Vec::new();
    for &f in &reduced {
        if cycle_of.contains_key(&f) {
            continue;
        }
        let id = reps.len();
        let mut g = f;
        let mut rep = None;
        loop {
            cycle_of.insert(g, id);
            if g.0 > 0 && rep.is_none() {
                rep = Some(g);
            }
            g = ind.rho(g);
            if g == f {
                break;
            }
        }
        reps.push(rep.expect("cycles alternate in sign"));
    }
    let cls = |f: Form| cycle_of[&ind.reduce(f)];
    let b0 = disc.rem_euclid(2);
    let c0 = (b0 * b0 - disc) / 4;
    let identity = cls((1, b0, c0));
    let negated = cls((-1, b0, -c0));
    let mul = |x: usize, y: usize| cls(compose(reps[x], reps[y], disc));
    let mut sub = vec![identity];
    if negated != identity {
        sub.push(negated);
    }
    structure(reps.len() as u64, &sub, &mul, identity)
}

/// Class group of `Q(√d)` for squarefree `d ≠ 0, 1`.
pub fn quadratic_class_group(d: i64) -> Vec<u64> {
    let disc = fundamental_discriminant(d);
    if disc < 0 {
        imaginary_class_group(disc)
    } else {
        real_class_group(disc)
    }
}

/// Regulator of the real quadratic field `Q(√d)` from the continued fraction
/// of `ω`, where `O = Z[ω]`.
pub fn quadratic_regulator(d: i64) -> f64 {
    assert!(d > 1);
    // ω = (P0 + √D) / Q0 with Q0 | D - P0²
    let (dd, p0, q0, omega_conj) = if d.rem_euclid(4) == 1 {
        (d, 1i64, 2i64, (1.0 - (d as f64).sqrt()) / 2.0)
    } else {
        (d, 0, 1, -(d as f64).sqrt())
    };
    let s = isqrt(dd);
    let (mut p, mut q) = (BigInt::from(p0), BigInt::from(q0));
    // convergents h/k
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let tr = if d.rem_euclid(4) == 1 { BigInt::one() } else { BigInt::zero() };
    let nm = if d.rem_euclid(4) == 1 { BigInt::from((1 - d) / 4) } else { BigInt::from(-d) };
    for _ in 0..100_000 {
        let a = (&p + BigInt::from(s)).div_floor(&q);
        let h_new = &a * &h + &h_prev;
        let k_new = &a * &k + &k_prev;
        (h_prev, h) = (h, h_new);
        (k_prev, k) = (k, k_new);
        // N(h - kω) = h² - hk Tr ω + k² N ω
        let norm = &h * &h - &h * &k * &tr + &k * &k * &nm;
        if norm.abs().is_one() {
            let hf = h.to_f64().unwrap();
            let kf = k.to_f64().unwrap();
            return (hf - kf * omega_conj).ln();
        }
        p = &a * &q - &p;
        q = (BigInt::from(dd) - &p * &p) / &q;
    }
    panic!("continued fraction did not close");
}

/// `p^k`.
pub fn pk(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

/// Iwasawa logarithm of a nonzero integer modulo `p^digits`, by summing the
/// series `log(1 + t)` exactly over the rationals.
pub fn series_log(a: &BigInt, p: u64, digits: u32) -> BigInt {
    let pb = BigInt::from(p);
    let mut u = a.clone();
    while (&u % &pb).is_zero() {
        u /= &pb;
    }
    // u^m ≡ 1 (mod p), resp. (mod 8) for p = 2
    let m: u32 = if p == 2 { 2 } else { (p - 1) as u32 };
    let t = u.pow(m) - 1u32;
    let vt = {
        let mut v = 0u32;
        let mut x = t.clone();
        if x.is_zero() {
            return BigInt::zero();
        }
        while (&x % &pb).is_zero() {
            x /= &pb;
            v += 1;
        }
        v
    };
    let extra = if p == 2 { 1 } else { 0 };
    let target = digits + extra + 2;
    let mut sum = BigRational::zero();
    let mut tn = BigRational::from_integer(BigInt::one());
    let tr = BigRational::from_integer(t);
    let mut n = 1u32;
    loop {
        tn *= &tr;
        let term = &tn / BigRational::from_integer(BigInt::from(n));
        sum = if n % 2 == 1 { sum + term } else { sum - term };
        n += 1;
        // the next term has valuation at least n·v(t) - log_p(n)
        if n * vt - (n as u64).ilog(p) > target {
            break;
        }
    }
    // log(u^m) = m log(u)
    let modulus = pk(p, digits + extra);
    let num = sum.numer().mod_floor(&modulus);
    let den = sum.denom().mod_floor(&modulus);
    let inv = den.modinv(&modulus).expect("denominator prime to p");
    let total = (num * inv).mod_floor(&modulus);
    let result = if p == 2 {
        assert!((&total % 2u32).is_zero());
        (total / 2u32).mod_floor(&pk(p, digits))
    } else {
        let mm = pk(p, digits);
        let minv = BigInt::from(m).modinv(&mm).unwrap();
        (total * minv).mod_floor(&mm)
    };
    result
}

/// Order of the class of the form `f` in the class group of discriminant
/// `disc < 0`.
pub fn imaginary_form_order(disc: i64, f: Form) -> u64 {
    let f = reduce_definite(f, disc);
    let b0 = disc.rem_euclid(2);
    let one = reduce_definite((1, b0, (b0 * b0 - disc) / 4), disc);
    let mut g = f;
    let mut k = 1;
    while g != one {
        g = reduce_definite(compose(g, f, disc), disc);
        k += 1;
    }
    k
}
