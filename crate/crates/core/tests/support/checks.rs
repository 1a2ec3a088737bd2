//! Property sweeps over small reference fields. Each returns the number of
//! cases examined, or a description of the first counterexample.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use logclass_core::arith::int::{is_squarefree_i64, primes_up_to};
use logclass_core::arith::padic::log_of_int;
use logclass_core::logar::{check_places, div_map, divisor_degree, other_parts_agree, places_above, LogPlace};
use logclass_core::logclass::{log_class_group_from, precision_profile, LogClassOptions};
use logclass_core::numberfield::{maximal_order, ClassGroup, ClassGroupOptions, FieldContext};
use logclass_core::ZPoly;

pub type Outcome = Result<usize, String>;

/// Minimum number of cases each sweep must reach.
pub const MIN_CASES: usize = 100;

/// Working precision of the logarithmic valuations, in `ℓ`-adic digits.
pub const PREC: u32 = 20;

/// Relative tolerance on regulators.
pub const REGULATOR_TOL: f64 = 1e-9;

/// Digits of the p-adic logarithm comparison.
pub const LOG_DIGITS: u32 = 30;

/// Offsets above `m` at which the group is recomputed.
pub const STABILITY_OFFSETS: [u32; 3] = [0, 2, 4];

/// Small fields from the reference table, with the primes studied there.
const FIELDS: &[(&[i64], &[u64])] = &[
    (&[521951, 0, 1], &[2]),
    (&[144, 0, -20, 0, 1], &[5]),
    (&[6241, 0, -154, 0, 1], &[2]),
    (&[207_936, 0, -908, 0, 1], &[2]),
    (&[52, -12, 13, 0, 1], &[2, 3, 7]),
    (&[93636, 0, -600, 0, 1], &[2, 3, 7]),
];

pub struct Field {
    pub ctx: FieldContext,
    cg: OnceLock<ClassGroup>,
    pub ells: &'static [u64],
}

impl Field {
    pub fn class_group(&self) -> &ClassGroup {
        self.cg.get_or_init(|| ClassGroup::compute(&self.ctx, &ClassGroupOptions::default()).unwrap())
    }
}

pub fn fields() -> &'static [Field] {
    static F: OnceLock<Vec<Field>> = OnceLock::new();
    F.get_or_init(|| {
        FIELDS
            .iter()
            .map(|(poly, ells)| Field {
                ctx: maximal_order(&ZPoly::from_i64(poly)).unwrap(),
                cg: OnceLock::new(),
                ells,
            })
            .collect()
    })
}

fn random_element(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<BigInt> {
    loop {
        let x: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-range..=range))).collect();
        if x.iter().any(|c| !c.is_zero()) {
            return x;
        }
    }
}

fn enough(cases: usize) -> Outcome {
    if cases >= MIN_CASES {
        Ok(cases)
    } else {
        Err(format!("only {cases} cases"))
    }
}

/// `ṽ(αβ) = ṽ(α) + ṽ(β)` at places above `ℓ` and above a few other primes.
pub fn log_valuation_additive() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cases = 0;
    for f in fields() {
        for &ell in f.ells {
            let mut places: Vec<LogPlace> = places_above(&f.ctx, ell, PREC).map_err(|e| e.to_string())?;
            for q in [3u64, 5, 11] {
                if q == ell {
                    continue;
                }
                for pl in f.ctx.places(q).iter() {
                    places.push(LogPlace::new(&f.ctx, pl, ell, PREC).map_err(|e| e.to_string())?);
                }
            }
            for _ in 0..12 {
                let a = random_element(&mut rng, f.ctx.n, 12);
                let b = random_element(&mut rng, f.ctx.n, 12);
                let ab = f.ctx.mul(&a, &b);
                for lp in &places {
                    let v = |x: &[BigInt]| lp.valuation(&f.ctx, x).map_err(|e| e.to_string());
                    if v(&ab)? != v(&a)?.add(&v(&b)?) {
                        return Err(format!("{} at a place above {} (ell {ell}): {a:?}, {b:?}", f.ctx.poly, lp.place.p));
                    }
                }
                cases += 1;
            }
        }
    }
    enough(cases)
}

/// Principal logarithmic divisors have degree zero.
pub fn principal_degree_zero() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut cases = 0;
    for f in fields() {
        for &ell in f.ells {
            for _ in 0..12 {
                let a = random_element(&mut rng, f.ctx.n, 9);
                let d = div_map(&f.ctx, ell, PREC, &a).map_err(|e| e.to_string())?;
                if !divisor_degree(&d).is_zero() {
                    return Err(format!("deg div({a:?}) ≠ 0 in {} at {ell}", f.ctx.poly));
                }
                cases += 1;
            }
        }
    }
    enough(cases)
}

/// `ẽf̃ = ef`, prime-to-`p` parts of `ẽ` and `e` agree, and `λ = ẽ/e` is an
/// `ℓ`-adic unit at places not above `ℓ`.
pub fn ramification_invariants() -> Outcome {
    let mut cases = 0;
    for f in fields() {
        for p in primes_up_to(60) {
            let places = places_above(&f.ctx, p, PREC).map_err(|e| e.to_string())?;
            if !check_places(&places, f.ctx.n) {
                return Err(format!("e~f~ ≠ ef above {p} in {}", f.ctx.poly));
            }
            for lp in &places {
                if !other_parts_agree(lp) {
                    return Err(format!("prime-to-{p} parts of e~ and e differ in {}", f.ctx.poly));
                }
                for ell in [2u64, 3, 5, 7] {
                    if ell == p {
                        continue;
                    }
                    let lp = LogPlace::new(&f.ctx, &lp.place, ell, PREC).map_err(|e| e.to_string())?;
                    if !lp.lambda().map_err(|e| e.to_string())?.is_unit() {
                        return Err(format!("lambda not a unit above {p} for ell {ell} in {}", f.ctx.poly));
                    }
                }
            }
            cases += 1;
        }
    }
    enough(cases)
}

/// `Log(ab) = Log a + Log b`, `Log ℓ = 0` and `Log(-1) = 0`.
pub fn iwasawa_log_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut cases = 0;
    for ell in [2u64, 3, 5, 7, 11, 13] {
        let log = |x: &BigInt| log_of_int(x, ell, 40).map_err(|e| e.to_string());
        if !log(&BigInt::from(ell))?.is_zero() || !log(&BigInt::from(-1))?.is_zero() {
            return Err(format!("Log_{ell} of {ell} or -1 is nonzero"));
        }
        for _ in 0..20 {
            let a = BigInt::from(rng.gen_range(1i64..10_000_000));
            let b = BigInt::from(rng.gen_range(1i64..10_000_000));
            if log(&(&a * &b))? != log(&a)?.add(&log(&b)?) {
                return Err(format!("Log_{ell}({a}·{b})"));
            }
            cases += 1;
        }
    }
    enough(cases)
}

/// The group is unchanged at the offsets above `m`, and the θ identity holds,
/// for the first twenty primes on five fields.
pub fn precision_stability() -> Outcome {
    let ells = primes_up_to(72);
    let opts = LogClassOptions::default();
    let mut cases = 0;
    for f in &fields()[..5] {
        let cg = f.class_group();
        for &ell in &ells[..20] {
            let prof = precision_profile(&f.ctx, cg, ell, &opts, &STABILITY_OFFSETS).map_err(|e| e.to_string())?;
            if !prof.windows(2).all(|w| w[0] == w[1]) {
                return Err(format!("{} at {ell}: {prof:?}", f.ctx.poly));
            }
            let r = log_class_group_from(&f.ctx, cg, ell, &opts).map_err(|e| e.to_string())?;
            if r.cyclic != prof[0] || !r.theta_consistent {
                return Err(format!("{} at {ell}: result disagrees with profile or theta identity", f.ctx.poly));
            }
            cases += 1;
        }
    }
    enough(cases)
}

fn library_quadratic(d: i64) -> Result<ClassGroup, String> {
    let ctx = maximal_order(&ZPoly::from_i64(&[-d, 0, 1])).map_err(|e| e.to_string())?;
    ClassGroup::compute(&ctx, &ClassGroupOptions::default()).map_err(|e| format!("d = {d}: {e}"))
}

/// Class group structures of `Q(√d)` for squarefree `0 < |d| ≤ max` against
/// reduced binary quadratic forms.
pub fn quadratic_class_groups(max: i64) -> Outcome {
    let ds: Vec<i64> = (2..=max).filter(|&d| is_squarefree_i64(d)).flat_map(|d| [d, -d]).chain([-1]).collect();
    let bad: Vec<String> = ds
        .par_iter()
        .filter_map(|&d| {
            let ours: Vec<u64> = match library_quadratic(d) {
                Ok(cg) => cg.cyclic.iter().map(|x| u64::try_from(x).unwrap()).collect(),
                Err(e) => return Some(e),
            };
            let theirs = super::quadratic_class_group(d);
            (ours != theirs).then(|| format!("d = {d}: {ours:?} vs {theirs:?}"))
        })
        .collect();
    if bad.is_empty() {
        Ok(ds.len())
    } else {
        Err(format!("{} mismatches, e.g. {:?}", bad.len(), &bad[..bad.len().min(5)]))
    }
}

/// Regulators of real quadratic fields `Q(√d)`, `2 ≤ d ≤ max`, against
/// continued fractions.
pub fn quadratic_regulators(max: i64) -> Outcome {
    let ds: Vec<i64> = (2..=max).filter(|&d| is_squarefree_i64(d)).collect();
    let bad: Vec<String> = ds
        .par_iter()
        .filter_map(|&d| {
            let ours = match library_quadratic(d) {
                Ok(cg) => cg.regulator,
                Err(e) => return Some(e),
            };
            let theirs = super::quadratic_regulator(d);
            ((ours - theirs).abs() > REGULATOR_TOL * theirs.max(1.0)).then(|| format!("d = {d}: {ours} vs {theirs}"))
        })
        .collect();
    if bad.is_empty() {
        Ok(ds.len())
    } else {
        Err(format!("{} mismatches, e.g. {:?}", bad.len(), &bad[..bad.len().min(5)]))
    }
}

/// `Log_p` of random integers, some divisible by `p` or negative, against
/// the rational series, for `p ∈ {2, 3, 5, 7}`.
pub fn padic_logs(per_prime: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c6f67);
    let mut cases = 0;
    for p in [2u64, 3, 5, 7] {
        for _ in 0..per_prime {
            let mut a: i64 = rng.gen_range(1..1_000_000);
            if rng.gen_bool(0.2) {
                a *= p as i64;
            }
            if rng.gen_bool(0.3) {
                a = -a;
            }
            let a = BigInt::from(a);
            let ours = log_of_int(&a, p, LOG_DIGITS).map_err(|e| e.to_string())?;
            let theirs = super::series_log(&a, p, LOG_DIGITS);
            if ours.residue() != &theirs {
                return Err(format!("Log_{p}({a})"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// Transform identities of the integer and modular Hermite and Smith forms on
/// random matrices of size up to 6×6.
pub fn matrix_identities(cases: usize) -> Outcome {
    use logclass_core::arith::matrix::{det, hnf_in_place, snf, IntMat};
    use logclass_core::arith::modmat::{snf_mod, ModMat};
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let unimodular = |m: &IntMat| {
        let d = det(m);
        d == BigInt::from(1) || d == BigInt::from(-1)
    };
    for case in 0..cases {
        let (r, c) = (rng.gen_range(1..=6usize), rng.gen_range(1..=6usize));
        let rows: Vec<Vec<BigInt>> =
            (0..r).map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-30i64..=30))).collect()).collect();
        let a = IntMat::from_rows(&rows, c);
        let s = snf(&a);
        let d = s.left.mul(&a).mul(&s.right);
        let diagonal = (0..r).all(|i| (0..c).all(|j| i == j || d.get(i, j).is_zero()))
            && (0..r.min(c)).all(|i| d.get(i, i) == &s.diag[i]);
        if !unimodular(&s.left) || !unimodular(&s.right) || !diagonal {
            return Err(format!("Smith form, case {case}"));
        }
        let mut h = a.clone();
        let mut u = IntMat::identity(r);
        hnf_in_place(&mut h, &mut u);
        if !unimodular(&u) || u.mul(&a) != h {
            return Err(format!("Hermite form, case {case}"));
        }
        let am = ModMat::from_rows(3, 4, &rows, c);
        let sm = snf_mod(&am);
        if sm.left.inverse().is_none() || sm.right.inverse().is_none() || sm.left.mul(&am).mul(&sm.right) != sm.s {
            return Err(format!("modular Smith form, case {case}"));
        }
    }
    enough(cases)
}
