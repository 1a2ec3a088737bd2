//! Ideal class group by relation search over a factor base.
//!
//! Relations are principal ideals `(x)` whose support lies in the factor
//! base. Their exponent vectors span a sublattice `L'` of the relation
//! lattice `L`; the kernel of the exponent map yields units. The product
//! `h' R'` computed from `L'` is compared with an Euler-product estimate of
//! `h R`; agreement within the band means `L' = L` and the units are
//! fundamental. Primes between the factor-base bound and the Minkowski (or
//! Bach) bound are shown to lie in the subgroup generated by smaller primes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ideal::Ideal;
use super::units::{torsion, Torsion};
use super::{FieldContext, PrimePlace};
use crate::arith::fp;
use crate::arith::int::{big_mod_u64, factor_u64, primes_up_to};
use crate::arith::lll::{det_f64, reduce_fixed_system};
use crate::arith::matrix::{hnf_in_place, snf, IntMat, RowOps};
use crate::error::{Error, Result};
use crate::localfield::decompose as decompose_order;

/// Tunables for the class group computation.
#[derive(Clone, Debug)]
pub struct ClassGroupOptions {
    /// Use the Bach bound instead of the Minkowski bound.
    pub grh: bool,
    /// Largest generation bound accepted without `grh`.
    pub budget: u64,
    pub seed: u64,
    /// Accepted band `[1/band, band]` for `h'R' / hR`.
    pub band: f64,
}

impl Default for ClassGroupOptions {
    fn default() -> Self {
        ClassGroupOptions { grh: false, budget: 2_000_000, seed: 1, band: std::f64::consts::SQRT_2 }
    }
}

/// A principal ideal `(elem)` supported on the factor base.
#[derive(Clone, Debug)]
pub struct Relation {
    pub elem: Vec<BigInt>,
    /// Exponents on the factor base.
    pub row: Vec<i64>,
    pub logs: Vec<f64>,
}

/// A finitely generated abelian group `Z^k / rows(relations)`, with
/// generators given as exponent vectors on the factor base.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    pub gens: Vec<Vec<BigInt>>,
    pub relations: IntMat,
    /// Cyclic factors (`> 1`), each dividing the next.
    pub cyclic: Vec<BigInt>,
}

impl AbelianPresentation {
    pub fn order(&self) -> BigInt {
        self.cyclic.iter().product()
    }
}

#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub fb: Vec<PrimePlace>,
    index: HashMap<(u64, usize), usize>,
    pub relations: Vec<Relation>,
    /// Square HNF of the relation lattice.
    pub hnf: IntMat,
    pub h: BigInt,
    pub cyclic: Vec<BigInt>,
    /// Generators of the cyclic factors as factor-base exponent vectors.
    pub gens: Vec<Vec<BigInt>>,
    pub regulator: f64,
    /// Logarithmic embeddings of a basis of the units modulo torsion.
    pub unit_logs: Vec<Vec<f64>>,
    pub torsion: Torsion,
    /// Factor-base bound and generation bound.
    pub b1: u64,
    pub bound: u64,
    pub grh: bool,
    /// Ratio `h'R' / (hR estimate)` at acceptance.
    pub euler_ratio: f64,
}

fn place_key(p: &PrimePlace) -> (u64, usize) {
    (p.p, p.index)
}

/// Factor `n` over `primes`; `None` if a cofactor remains.
fn smooth_factor(n: &BigInt, primes: &[u64]) -> Option<Vec<(u64, u32)>> {
    let mut m = n.abs();
    if m.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    if let Some(mut v) = m.to_u64() {
        for &p in primes {
            if v == 1 {
                break;
            }
            if p.saturating_mul(p) > v {
                if v <= *primes.last().unwrap() && primes.binary_search(&v).is_ok() {
                    out.push((v, 1));
                    v = 1;
                }
                break;
            }
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
        }
        return if v == 1 { Some(out) } else { None };
    }
    for &p in primes {
        let mut e = 0;
        while big_mod_u64(&m, p) == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        if m.is_one() {
            return Some(out);
        }
    }
    if m.is_one() {
        Some(out)
    } else {
        None
    }
}

/// Euler-product estimate of the residue of `ζ_F` at `s = 1`, using primes
/// up to `x`.
pub fn euler_residue(ctx: &FieldContext, x: u64) -> f64 {
    let dpoly = ctx.poly.discriminant();
    let primes = primes_up_to(x);
    let logs: Vec<f64> = primes
        .par_iter()
        .map(|&p| {
            let mut s = (1.0 - 1.0 / p as f64).ln();
            if big_mod_u64(&dpoly, p) == 0 {
                for pl in ctx.places(p).iter() {
                    s -= (1.0 - (p as f64).powi(-(pl.f as i32))).ln();
                }
            } else {
                for d in fp::degree_pattern(&ctx.poly.to_fp(p), p) {
                    s -= (1.0 - (p as f64).powi(-(d as i32))).ln();
                }
            }
            s
        })
        .collect();
    logs.iter().sum::<f64>().exp()
}

/// `hR` estimate `w sqrt|D| Res / (2^{r1} (2π)^{r2})`.
pub fn hr_estimate(ctx: &FieldContext, w: u64, x: u64) -> f64 {
    let res = euler_residue(ctx, x);
    w as f64 * ctx.disc_abs_f64().sqrt() * res
        / (2f64.powi(ctx.r1 as i32) * (2.0 * std::f64::consts::PI).powi(ctx.r2 as i32))
}

fn euler_cutoff(ctx: &FieldContext) -> u64 {
    let s = ctx.disc_abs_f64().sqrt() * 4.0;
    s.clamp(20_000.0, 300_000.0) as u64
}

/// Prime ideals of norm at most `b`, ordered by (norm, p, index).
fn primes_of_norm_up_to(ctx: &FieldContext, b: u64) -> Vec<PrimePlace> {
    let mut out = Vec::new();
    for p in primes_up_to(b) {
        for pl in ctx.places(p).iter() {
            if pl.norm_u64().is_some_and(|nq| nq <= b) {
                out.push(pl.clone());
            }
        }
    }
    out.sort_by_key(|pl| (pl.norm_u64().unwrap(), pl.p, pl.index));
    out
}

impl ClassGroup {
    /// Computes the class group with the given options.
    pub fn compute(ctx: &FieldContext, opts: &ClassGroupOptions) -> Result<ClassGroup> {
        let tor = torsion(ctx)?;
        let mink = ctx.minkowski_bound();
        let bound_f = if opts.grh { ctx.bach_bound().min(mink) } else { mink };
        let bound = bound_f.ceil().max(2.0) as u64;
        if !opts.grh && bound > opts.budget {
            return Err(Error::BoundTooLarge { bound, budget: opts.budget });
        }
        let l = ctx.disc_abs_f64().ln();
        let b1 = ((l * l).min(bound as f64).max(20.0)).ceil() as u64;
        let b1 = b1.max(bound.min(60));
        let fb = primes_of_norm_up_to(ctx, b1);
        let mut cg = ClassGroup {
            index: fb.iter().enumerate().map(|(i, p)| (place_key(p), i)).collect(),
            fb,
            relations: Vec::new(),
            hnf: IntMat::zeros(0, 0),
            h: BigInt::one(),
            cyclic: vec![],
            gens: vec![],
            regulator: 1.0,
            unit_logs: vec![],
            torsion: tor,
            b1,
            bound,
            grh: opts.grh,
            euler_ratio: 0.0,
        };
        let hr = hr_estimate(ctx, cg.torsion.w, euler_cutoff(ctx));
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x636c_6173_7367);
        cg.trivial_relations(ctx);
        let nfb = cg.fb.len();
        let r = ctx.unit_rank();
        let mut target = nfb + r + 10;
        let mut last_err = String::new();
        for round in 0..40 {
            cg.search_relations(ctx, &mut rng, target, round);
            match cg.evaluate(ctx, hr, opts.band) {
                Ok(()) => {
                    cg.extend_to_bound(ctx)?;
                    return Ok(cg);
                }
                Err(msg) => last_err = msg,
            }
            target = cg.relations.len() + nfb / 2 + r + 10;
        }
        Err(Error::Certification(last_err))
    }

    fn trivial_relations(&mut self, ctx: &FieldContext) {
        let mut seen = std::collections::BTreeSet::new();
        for pl in &self.fb {
            seen.insert(pl.p);
        }
        for p in seen {
            let places = ctx.places(p);
            if places.iter().all(|q| self.index.contains_key(&place_key(q))) {
                let mut row = vec![0i64; self.fb.len()];
                for q in places.iter() {
                    row[self.index[&place_key(q)]] = i64::from(q.e);
                }
                let elem = ctx.order.scalar(&BigInt::from(p));
                let logs = ctx.log_embedding(&elem);
                self.relations.push(Relation { elem, row, logs });
            }
        }
    }

    pub fn fb_index(&self, place: &PrimePlace) -> Option<usize> {
        self.index.get(&place_key(place)).copied()
    }

    fn fb_primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.fb.iter().map(|p| p.p).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Exponent vector of `(x)` on the factor base, if `(x)` is supported on it.
    pub fn factor_element(&self, ctx: &FieldContext, x: &[BigInt]) -> Option<Vec<i64>> {
        let nx = ctx.norm(x);
        let fac = smooth_factor(&nx, &self.fb_primes())?;
        let mut row = vec![0i64; self.fb.len()];
        for (p, _) in fac {
            for pl in ctx.places(p).iter() {
                let v = ctx.valuation(pl, x);
                if v == 0 {
                    continue;
                }
                let i = self.fb_index(pl)?;
                row[i] = i64::from(v);
            }
        }
        Some(row)
    }

    fn try_add(&mut self, ctx: &FieldContext, x: Vec<BigInt>) -> bool {
        if x.iter().all(|c| c.is_zero()) {
            return false;
        }
        match self.factor_element(ctx, &x) {
            Some(row) => {
                let logs = ctx.log_embedding(&x);
                self.relations.push(Relation { elem: x, row, logs });
                true
            }
            None => false,
        }
    }

    fn search_relations(&mut self, ctx: &FieldContext, rng: &mut ChaCha8Rng, target: usize, round: u32) {
        let n = ctx.n;
        let nfb = self.fb.len();
        let places = ctx.r1 + ctx.r2;
        let skew = 3.0 * f64::from(1u32 << round.min(3));
        // small elements of O itself
        if self.relations.len() < target {
            let basis: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    let mut e = vec![BigInt::zero(); n];
                    e[i] = BigInt::one();
                    e
                })
                .collect();
            for _ in 0..(4 * n) {
                let x = random_combination(&basis, rng, 2);
                self.try_add(ctx, x);
            }
        }
        let mut attempts = 0usize;
        while self.relations.len() < target && attempts < 200 * target + 2000 {
            attempts += 1;
            let k = rng.gen_range(1..=3usize.min(nfb));
            let mut ideal = Ideal::unit(n);
            for _ in 0..k {
                let i = rng.gen_range(0..nfb);
                let e = rng.gen_range(1..=2u32);
                ideal = ideal.mul(ctx, &self.fb[i].ideal().pow(ctx, e));
            }
            let red = if ctx.unit_rank() > 0 && attempts % 2 == 0 {
                let mut w: Vec<f64> = (0..places).map(|_| rng.gen_range(-skew..=skew)).collect();
                let mean = w.iter().sum::<f64>() / places as f64;
                w.iter_mut().for_each(|x| *x -= mean);
                ideal.reduced_basis_weighted(ctx, &w)
            } else {
                ideal.reduced_basis(ctx)
            };
            for v in red.iter().take(2) {
                self.try_add(ctx, v.clone());
            }
            for _ in 0..3 {
                let x = random_combination(&red, rng, 1);
                self.try_add(ctx, x);
            }
        }
    }

    /// HNF, unit lattice and Euler-product check of the current relations.
    fn evaluate(&mut self, ctx: &FieldContext, hr: f64, band: f64) -> std::result::Result<(), String> {
        let nfb = self.fb.len();
        let rows: Vec<Vec<BigInt>> =
            self.relations.iter().map(|r| r.row.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let r = ctx.unit_rank();
        let mut prec = 256u32;
        let (mut m, reg, basis) = loop {
            let mut m = IntMat::from_rows(&rows, nfb);
            let logs: Vec<Vec<BigInt>> = self
                .relations
                .par_iter()
                .map(|rel| {
                    let mut l = ctx.log_embedding_fixed(&rel.elem, prec);
                    l.truncate(r);
                    l
                })
                .collect();
            let mut logs = IntMat::from_rows(&logs, r);
            let mut err = ErrBound(vec![0.0; rows.len()]);
            let piv = hnf_in_place(&mut m, &mut (&mut logs, &mut err));
            if piv.len() < nfb {
                return Err(format!("relation rank {} below factor base size {}", piv.len(), nfb));
            }
            let emax = err.0[nfb..].iter().fold(0.0f64, |a, &b| a.max(b));
            let need = (2.0 * emax).ceil() as u32 + 64;
            if need > prec {
                prec = need.next_multiple_of(64);
                continue;
            }
            if r == 0 {
                break (m, 1.0, vec![]);
            }
            let ker: Vec<Vec<BigInt>> = (nfb..rows.len()).map(|i| logs.row(i).to_vec()).collect();
            let red = reduce_fixed_system(&ker, prec, 1e-4);
            let bf: Vec<Vec<f64>> =
                red.iter().map(|v| v.iter().map(|x| crate::arith::fixed::to_f64(x, prec)).collect()).collect();
            let reg = if bf.len() == r { det_f64(&bf).abs() } else { 0.0 };
            break (m, reg, bf);
        };
        if basis.len() < r {
            return Err(format!("unit rank {} below {}", basis.len(), r));
        }
        m.truncate_rows(nfb);
        let h: BigInt = (0..nfb).map(|i| m.get(i, i).clone()).product();
        let ratio = h.to_f64().unwrap() * reg / hr;
        self.euler_ratio = ratio;
        if ratio > band {
            return Err(format!("h'R'/hR = {ratio:.4} outside band"));
        }
        if ratio < 1.0 / band {
            return Err(format!("h'R'/hR = {ratio:.4} below band; Euler estimate unreliable"));
        }
        let sm = snf(&m);
        let mut cyclic = Vec::new();
        let mut gens = Vec::new();
        for (i, d) in sm.diag.iter().enumerate() {
            if d > &BigInt::one() {
                cyclic.push(d.clone());
                gens.push(sm.right_inv.row(i).to_vec());
            }
        }
        self.hnf = m;
        self.h = h;
        self.cyclic = cyclic;
        self.gens = gens;
        self.regulator = reg;
        // full log vectors of the reduced unit basis
        self.unit_logs = unit_full_logs(&basis, ctx);
        Ok(())
    }

    /// Shows that every prime of norm in `(b1, bound]` lies in the subgroup
    /// generated by primes of smaller norm.
    fn extend_to_bound(&self, ctx: &FieldContext) -> Result<()> {
        if self.bound <= self.b1 {
            return Ok(());
        }
        let primes: Vec<u64> = primes_up_to(self.bound).into_iter().filter(|&p| p > self.b1 || p > 1).collect();
        let failures: Vec<String> = primes
            .par_iter()
            .filter_map(|&p| {
                let places = if p <= self.b1 { ctx.places(p).as_ref().clone() } else { places_uncached(ctx, p) };
                for pl in places {
                    let Some(np) = pl.norm_u64() else { continue };
                    if np <= self.b1 || np > self.bound {
                        continue;
                    }
                    if !prove_generated(ctx, &pl, np) {
                        return Some(format!("prime of norm {np} above {p}"));
                    }
                }
                None
            })
            .collect();
        if let Some(f) = failures.first() {
            return Err(Error::Certification(format!("could not express {f} by smaller primes")));
        }
        Ok(())
    }

    /// Adds the given places to the factor base (each with one relation
    /// `(x) = P · (factor-base part)`), keeping the class group unchanged.
    pub fn with_places(&self, ctx: &FieldContext, places: &[PrimePlace]) -> Result<ClassGroup> {
        let mut cg = self.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(0x706c_6163 ^ places.len() as u64);
        for pl in places {
            if cg.fb_index(pl).is_some() {
                continue;
            }
            let new = cg.fb.len();
            cg.index.insert(place_key(pl), new);
            cg.fb.push(pl.clone());
            for r in cg.relations.iter_mut() {
                r.row.push(0);
            }
            let basis = pl.ideal().reduced_basis(ctx);
            let mut found = false;
            for attempt in 0..5000 {
                let x = if attempt < basis.len() { basis[attempt].clone() } else { random_combination(&basis, &mut rng, 2) };
                if x.iter().all(|c| c.is_zero()) || ctx.valuation(pl, &x) != 1 {
                    continue;
                }
                if let Some(row) = cg.factor_element(ctx, &x) {
                    let logs = ctx.log_embedding(&x);
                    cg.relations.push(Relation { elem: x, row, logs });
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::Certification("no relation for an added place".into()));
            }
            // extend the HNF: the new column has a pivot 1 in its own row
            let k = cg.fb.len();
            let mut h = IntMat::zeros(k, k);
            for i in 0..k - 1 {
                for j in 0..k - 1 {
                    h.set(i, j, cg.hnf.get(i, j).clone());
                }
            }
            let last = &cg.relations.last().unwrap().row;
            for j in 0..k {
                h.set(k - 1, j, BigInt::from(last[j]));
            }
            // move the new row to echelon position: it is the only row with
            // an entry in column k-1, so the lattice HNF is obtained by
            // recomputing.
            let mut hh = h;
            hnf_in_place(&mut hh, &mut ());
            cg.hnf = hh;
            cg.gens = cg.gens.iter().map(|g| g.iter().cloned().chain(std::iter::once(BigInt::zero())).collect()).collect();
        }
        Ok(cg)
    }

    /// Column indices of the given places in the factor base.
    pub fn columns_of(&self, places: &[PrimePlace]) -> Vec<usize> {
        places.iter().filter_map(|p| self.fb_index(p)).collect()
    }

    /// Presentation of `Cl / ⟨classes of the given columns⟩`.
    pub fn quotient_by(&self, cols: &[usize]) -> AbelianPresentation {
        let keep: Vec<usize> = (0..self.fb.len()).filter(|c| !cols.contains(c)).collect();
        let a = self.hnf.select_cols(&keep);
        let mut a2 = a.clone();
        let piv = hnf_in_place(&mut a2, &mut ());
        a2.truncate_rows(piv.len());
        let sm = snf(&a2);
        let mut cyclic = Vec::new();
        let mut gens = Vec::new();
        for (i, d) in sm.diag.iter().enumerate() {
            if d > &BigInt::one() {
                cyclic.push(d.clone());
                let mut g = vec![BigInt::zero(); self.fb.len()];
                for (t, &c) in keep.iter().enumerate() {
                    g[c] = sm.right_inv.get(i, t).clone();
                }
                gens.push(g);
            }
        }
        AbelianPresentation { gens, relations: a2, cyclic }
    }

    pub fn presentation(&self) -> AbelianPresentation {
        AbelianPresentation { gens: self.gens.clone(), relations: self.hnf.clone(), cyclic: self.cyclic.clone() }
    }

    /// Exponent of the class group.
    pub fn exponent(&self) -> BigInt {
        self.cyclic.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// The relation matrix (rows = relations, columns = factor base).
    pub fn relation_matrix(&self) -> IntMat {
        let rows: Vec<Vec<BigInt>> =
            self.relations.iter().map(|r| r.row.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntMat::from_rows(&rows, self.fb.len())
    }

    /// Whether a product of factor-base primes (given by its exponent
    /// vector) is principal, i.e. lies in the relation lattice.
    pub fn is_principal(&self, v: &[BigInt]) -> bool {
        let piv: Vec<usize> = (0..self.fb.len()).collect();
        crate::arith::matrix::solve_hnf(&self.hnf, &piv, v).is_some()
    }
}

/// Running bound on the size of the combination each row represents.
/// Base-2 logarithms of bounds on the accumulated error of each row.
struct ErrBound(Vec<f64>);

impl RowOps for ErrBound {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.0.swap(i, j);
    }
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        let (a, b) = (self.0[dst], q.bits() as f64 + self.0[src]);
        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
        self.0[dst] = hi + (1.0 + (lo - hi).exp2()).log2();
    }
    fn neg_row(&mut self, _: usize) {}
}

fn unit_full_logs(basis: &[Vec<f64>], ctx: &FieldContext) -> Vec<Vec<f64>> {
    // the last coordinate is determined by the product formula
    let k = ctx.infinite_places();
    basis
        .iter()
        .map(|b| {
            let s: f64 = b.iter().sum();
            let mut v = b.clone();
            v.truncate(k - 1);
            v.push(-s);
            v
        })
        .collect()
}

fn places_uncached(ctx: &FieldContext, p: u64) -> Vec<PrimePlace> {
    decompose_order(&ctx.order, p)
        .into_iter()
        .enumerate()
        .map(|(index, data)| PrimePlace { p, e: data.e, f: data.f, index, data })
        .collect()
}

fn random_combination(basis: &[Vec<BigInt>], rng: &mut ChaCha8Rng, range: i64) -> Vec<BigInt> {
    let n = basis[0].len();
    let mut x = vec![BigInt::zero(); n];
    for b in basis {
        let c = rng.gen_range(-range..=range);
        if c != 0 {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += bi * c;
            }
        }
    }
    x
}

/// Finds `x ∈ P` with `v_P(x) = 1` whose remaining prime factors all have
/// norm below `N(P)`.
fn prove_generated(ctx: &FieldContext, pl: &PrimePlace, np: u64) -> bool {
    let basis = pl.ideal().reduced_basis(ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(np ^ 0x65_7874);
    let npb = BigInt::from(np);
    for attempt in 0..400 {
        let x = if attempt < basis.len() { basis[attempt].clone() } else { random_combination(&basis, &mut rng, 1 + attempt as i64 / 100) };
        if x.iter().all(|c| c.is_zero()) {
            continue;
        }
        let nx = ctx.norm(&x).abs();
        let (m, r) = nx.div_rem(&npb);
        if !r.is_zero() || (&m % &npb).is_zero() && ctx.valuation(pl, &x) != 1 {
            continue;
        }
        if ctx.valuation(pl, &x) != 1 {
            continue;
        }
        let Some(mu) = m.to_u64() else { continue };
        let fac = factor_u64(mu);
        let ok = fac.iter().all(|&(q, _)| {
            if q >= np {
                return false;
            }
            let places = if q == pl.p { places_uncached(ctx, q) } else { places_uncached_small(ctx, q) };
            places.iter().all(|qq| {
                if qq.p == pl.p && qq.index == pl.index {
                    return true;
                }
                let v = ctx.valuation(qq, &x);
                v == 0 || qq.norm_u64().is_some_and(|nq| nq < np)
            })
        });
        if ok {
            return true;
        }
    }
    false
}

fn places_uncached_small(ctx: &FieldContext, q: u64) -> Vec<PrimePlace> {
    if q < 5000 {
        ctx.places(q).as_ref().clone()
    } else {
        places_uncached(ctx, q)
    }
}
