//! Complex roots of integer polynomials and real-root counting.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::ZPoly;

/// Number of distinct real roots of a squarefree polynomial (Sturm).
pub fn count_real_roots(f: &ZPoly) -> usize {
    let to_q = |p: &ZPoly| -> Vec<BigRational> {
        p.coeffs().iter().map(|a| BigRational::from_integer(a.clone())).collect()
    };
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
    };
    let rem = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        while r.len() > db && !r.is_empty() {
            let c = r.last().unwrap() / b.last().unwrap();
            let off = r.len() - 1 - db;
            for (j, bj) in b.iter().enumerate() {
                r[off + j] = &r[off + j] - &c * bj;
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        r
    };
    let mut seq: Vec<Vec<BigRational>> = vec![to_q(f), to_q(&f.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let mut r = rem(&seq[n - 2], &seq[n - 1]);
        trim(&mut r);
        if r.is_empty() {
            break;
        }
        let neg: Vec<BigRational> = r.iter().map(|x| -x).collect();
        seq.push(neg);
    }
    let changes = |signs: Vec<i32>| -> usize {
        let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_pos: Vec<i32> = seq.iter().map(|p| if p.last().unwrap().is_positive() { 1 } else { -1 }).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|p| {
            let s = if p.last().unwrap().is_positive() { 1 } else { -1 };
            if (p.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    changes(at_neg) - changes(at_pos)
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots (Aberth–Ehrlich iteration followed by Newton polishing).
pub fn complex_roots(f: &ZPoly) -> Vec<Complex64> {
    let n = f.degree() as usize;
    let c: Vec<Complex64> = f
        .coeffs()
        .iter()
        .map(|a| Complex64::new(a.to_f64().unwrap(), 0.0))
        .collect();
    let lead = c[n].re;
    let c: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    // Cauchy bound
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let r0 = radius.min(
        c[..n]
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm().powf(1.0 / (n - i) as f64))
            .fold(0.0, f64::max)
            * 2.0,
    );
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0.max(1e-3), 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..5 {
            let (p, dp) = horner(&c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    z
}

/// Roots split into the `r1` real roots (ascending) and `r2` complex roots
/// with positive imaginary part (sorted by real part).
pub fn embeddings(f: &ZPoly) -> (Vec<f64>, Vec<Complex64>) {
    let n = f.degree() as usize;
    let r1 = count_real_roots(f);
    let mut roots = complex_roots(f);
    roots.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap());
    let mut real: Vec<f64> = roots[..r1].iter().map(|z| z.re).collect();
    real.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut cpx: Vec<Complex64> = roots[r1..].iter().filter(|z| z.im > 0.0).copied().collect();
    cpx.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    assert_eq!(r1 + 2 * cpx.len(), n, "root classification failed");
    (real, cpx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm() {
        assert_eq!(count_real_roots(&ZPoly::from_i64(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots(&ZPoly::from_i64(&[-2, 0, 1])), 2);
        assert_eq!(count_real_roots(&ZPoly::from_i64(&[-2, 0, 0, 1])), 1);
        assert_eq!(count_real_roots(&ZPoly::from_i64(&[52, -12, 13, 0, 1])), 0);
    }

    #[test]
    fn roots() {
        let f = ZPoly::from_i64(&[-2, 0, 0, 1]);
        let (r, c) = embeddings(&f);
        assert!((r[0] - 2f64.cbrt()).abs() < 1e-12);
        assert_eq!(c.len(), 1);
        let f = ZPoly::from_i64(&[1, 0, -10, 0, 1]);
        let (r, c) = embeddings(&f);
        assert_eq!(r.len(), 4);
        assert!(c.is_empty());
        assert!((r[3] - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
    }
}
