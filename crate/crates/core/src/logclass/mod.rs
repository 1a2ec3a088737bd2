//! The logarithmic ℓ-class group.
//!
//! Classes are presented on two families of generators. The first comes from
//! the ℓ-part of `Cl' = Cl / ⟨places above ℓ⟩`, as products of factor-base
//! primes coprime to ℓ. The second is one class per place `P_i` above ℓ,
//! represented by an element `α_i` with `ṽ_{P_j}(α_i) = δ_ij`. Relations come
//! from the relations of `Cl'` (corrected by the logarithmic valuations of the
//! principal ideals behind them) and from the ℓ-units. The degree-zero
//! subgroup is cut out by eliminating the generator whose degree has the
//! smallest ℓ-adic valuation.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::int::{big_pow, is_prime_u64, val_big};
use crate::arith::matrix::{hnf_in_place, snf, ModRows};
use crate::arith::modmat::{snf_mod, ModMat, SnfMod};
use crate::arith::padic::{iwasawa_log, PadicInt};
use crate::error::{Error, Result};
use crate::logar::{deg_ell, log_norm, places_above, LogPlace};
use crate::numberfield::classgroup::{ClassGroup, ClassGroupOptions};
use crate::numberfield::{FieldContext, PrimePlace};

#[derive(Clone, Debug)]
pub struct LogClassOptions {
    pub class_group: ClassGroupOptions,
    /// The precision search aborts once `m > m' + precision_cap`.
    pub precision_cap: u32,
    /// Recompute at `m + 2` and `m + 4` and through the direct route.
    pub verify: bool,
    /// Construct the elements `α_i` explicitly.
    pub alphas: bool,
}

impl Default for LogClassOptions {
    fn default() -> Self {
        LogClassOptions { class_group: ClassGroupOptions::default(), precision_cap: 64, verify: true, alphas: true }
    }
}

/// How the working precision was chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionReport {
    /// `v_ℓ` of the exponent of `Cl'`.
    pub m_prime: u32,
    /// `v_ℓ` of the exponent of the subgroup generated by places above ℓ.
    pub m_tilde: u32,
    /// `m' + m̃`; the exponent of the group divides `ℓ^m`.
    pub m: u32,
    pub bound: BigInt,
    /// Precision at which the ℓ-unit matrix first reached full rank.
    pub search_precision: u32,
    /// Precision carried by the logarithmic valuations.
    pub working: u32,
}

/// A generator of the presentation before passing to degree zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseGenerator {
    /// Product of factor-base primes coprime to ℓ: `(factor-base index, exponent)`.
    Ideal(Vec<(usize, BigInt)>),
    /// The class of `α_i` for the `i`-th place above ℓ.
    Place(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceSummary {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub e_tilde: u64,
    pub f_tilde: u64,
    pub deg_valuation: u32,
}

#[derive(Clone, Debug)]
pub struct LogClassResult {
    pub ell: u64,
    /// Orders of the cyclic factors, ascending; empty for the trivial group.
    pub cyclic: Vec<BigInt>,
    /// Generators of the cyclic factors as `Z_ℓ`-combinations of `base`.
    pub generators: Vec<Vec<BigInt>>,
    pub base: Vec<BaseGenerator>,
    /// Echelon form of the degree-zero relation matrix modulo `ℓ^m`.
    pub relations: ModMat,
    pub precision: PrecisionReport,
    pub class_group: Vec<BigInt>,
    pub cl_prime: Vec<BigInt>,
    /// The subgroup generated by the places above ℓ.
    pub cl_ell_places: Vec<BigInt>,
    pub coker_theta: Vec<BigInt>,
    /// Whether `|C̃ℓ(ℓ)| |Cl'_ℓ| = |C̃ℓ| |Coker θ|`.
    pub theta_consistent: bool,
    /// Number of cyclic factors when `F` contains the `2ℓ`-th roots of unity.
    pub wild_rank: Option<usize>,
    /// Index in `base` of the eliminated generator (absent when every degree vanishes).
    pub eliminated: Option<usize>,
    pub places: Vec<PlaceSummary>,
    pub alphas: Vec<Vec<BigInt>>,
    /// Degrees of the base generators modulo `ℓ^m`.
    pub base_degrees: Vec<BigInt>,
    /// Number of ℓ-unit relations used.
    pub l_unit_relations: usize,
}

impl LogClassResult {
    pub fn order(&self) -> BigInt {
        self.cyclic.iter().product()
    }
}

/// Renders a list of cyclic factors as `[a,b]`, with `[1]` for the trivial group.
pub fn render_group(cyclic: &[BigInt]) -> String {
    if cyclic.is_empty() {
        return "[1]".into();
    }
    let parts: Vec<String> = cyclic.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn modp(x: &BigInt, md: &BigInt) -> BigInt {
    x.mod_floor(md)
}

/// Everything derived from the class group with a fixed precision for the
/// logarithmic valuations.
struct Workspace<'a> {
    ctx: &'a FieldContext,
    ell: u64,
    wv: u32,
    places: Vec<LogPlace>,
    /// Full `Cl'` invariants.
    cl_prime: Vec<BigInt>,
    /// Kept `Cl'` generators: exponent vectors over the factor base.
    ideal_gens: Vec<Vec<BigInt>>,
    /// Their orders in `Cl'` (divisible by ℓ).
    ideal_orders: Vec<BigInt>,
    /// `ṽ` at the places above ℓ of the principal ideal behind each kept relation.
    ideal_c: Vec<Vec<BigInt>>,
    /// `ṽ` of a generating set of the ℓ-units modulo torsion.
    units: Vec<Vec<BigInt>>,
    /// Degrees of the base generators modulo `ℓ^wv`.
    degrees: Vec<BigInt>,
}

impl<'a> Workspace<'a> {
    fn build(ctx: &'a FieldContext, cg: &'a ClassGroup, ell: u64, wv: u32) -> Result<Workspace<'a>> {
        let modulus = big_pow(ell, wv);
        let places = places_above(ctx, ell, wv)?;
        let prime_places: Vec<PrimePlace> = places.iter().map(|p| p.place.clone()).collect();
        let ell_cols = cg.columns_of(&prime_places);
        if ell_cols.len() != places.len() {
            return Err(Error::Inconsistent("places above ℓ missing from the factor base".into()));
        }
        let keep: Vec<usize> = (0..cg.fb.len()).filter(|c| !ell_cols.contains(c)).collect();

        let vt: Vec<Vec<BigInt>> = cg
            .relations
            .par_iter()
            .map(|r| places.iter().map(|lp| lp.valuation(ctx, &r.elem).map(|v| v.residue().clone())).collect())
            .collect::<Result<Vec<_>>>()?;

        let mut a = cg.relation_matrix().select_cols(&keep);
        let mut ride = ModRows { modulus: modulus.clone(), rows: vt };
        let piv = hnf_in_place(&mut a, &mut ride);
        if piv.len() != keep.len() {
            return Err(Error::Inconsistent("relations do not have full rank away from ℓ".into()));
        }
        let r = piv.len();
        let mut h = a;
        h.truncate_rows(r);
        let w_h = &ride.rows[..r];
        let units: Vec<Vec<BigInt>> = ride.rows[r..].iter().filter(|row| row.iter().any(|x| !x.is_zero())).cloned().collect();

        let sm = snf(&h);
        let mut cl_prime = Vec::new();
        let mut ideal_gens = Vec::new();
        let mut ideal_orders = Vec::new();
        let mut ideal_c = Vec::new();
        for (i, d) in sm.diag.iter().enumerate() {
            if d > &BigInt::one() {
                cl_prime.push(d.clone());
            }
            if d.is_zero() || val_big(d, ell) == 0 {
                continue;
            }
            let mut g = vec![BigInt::zero(); cg.fb.len()];
            for (t, &c) in keep.iter().enumerate() {
                g[c] = sm.right_inv.get(i, t).clone();
            }
            let mut c = vec![BigInt::zero(); places.len()];
            for (k, wrow) in w_h.iter().enumerate() {
                let u = sm.left.get(i, k);
                if u.is_zero() {
                    continue;
                }
                for (cc, x) in c.iter_mut().zip(wrow) {
                    *cc += u * x;
                }
            }
            ideal_gens.push(g);
            ideal_orders.push(d.clone());
            ideal_c.push(c.iter().map(|x| modp(x, &modulus)).collect());
        }

        let mut degrees = Vec::new();
        for g in &ideal_gens {
            let mut acc = BigInt::zero();
            for (k, e) in g.iter().enumerate() {
                if !e.is_zero() {
                    acc += e * log_norm(&cg.fb[k], ell, wv).residue();
                }
            }
            degrees.push(modp(&acc, &modulus));
        }
        for lp in &places {
            degrees.push(modp(&-lp.deg.residue(), &modulus));
        }

        Ok(Workspace { ctx, ell, wv, places, cl_prime, ideal_gens, ideal_orders, ideal_c, units, degrees })
    }

    fn s(&self) -> usize {
        self.places.len()
    }

    fn t(&self) -> usize {
        self.ideal_gens.len()
    }

    fn m_prime(&self) -> u32 {
        self.ideal_orders.iter().map(|d| val_big(d, self.ell)).max().unwrap_or(0)
    }

    fn val(&self, x: &BigInt) -> u32 {
        if x.is_zero() {
            self.wv
        } else {
            val_big(x, self.ell).min(self.wv)
        }
    }

    /// Smallest-exponent search for the bound `ℓ^{m' + m̃}`. Returns `None`
    /// when the valuations are not known to enough digits.
    fn precision_bound(&self, cap: u32) -> Result<Option<(PrecisionReport, Vec<BigInt>)>> {
        let m_prime = self.m_prime();
        let s = self.s();
        let report = |m_tilde: u32, search: u32| PrecisionReport {
            m_prime,
            m_tilde,
            m: m_prime + m_tilde,
            bound: big_pow(self.ell, m_prime + m_tilde),
            search_precision: search,
            working: self.wv,
        };
        if s == 1 {
            return Ok(Some((report(0, 0), vec![])));
        }
        let first = (0..s).min_by_key(|&i| self.places[i].deg.valuation_capped()).unwrap();
        let cols: Vec<usize> = (0..s).filter(|&i| i != first).collect();
        let mut m = m_prime.max(4);
        loop {
            if m > m_prime + cap {
                return Err(Error::GrossCapExceeded { m });
            }
            if m > self.wv {
                return Ok(None);
            }
            let rows: Vec<Vec<BigInt>> = self.units.iter().map(|u| cols.iter().map(|&c| u[c].clone()).collect()).collect();
            let a = ModMat::from_rows(self.ell, m, &rows, cols.len());
            let sn = snf_mod(&a);
            if sn.rank() == cols.len() {
                let m_tilde = sn.vals.iter().copied().max().unwrap_or(0);
                return Ok(Some((report(m_tilde, m), sn.cokernel())));
            }
            m += 2;
        }
    }

    fn eliminated(&self) -> Option<usize> {
        self.minimal_indices().first().copied()
    }

    /// Indices of the base generators whose degree has minimal valuation
    /// (empty when every degree vanishes).
    fn minimal_indices(&self) -> Vec<usize> {
        let Some(v) = self.degrees.iter().map(|d| self.val(d)).min() else { return vec![] };
        if v >= self.wv {
            return vec![];
        }
        (0..self.degrees.len()).filter(|&i| self.val(&self.degrees[i]) == v).collect()
    }

    /// Full relation matrix on the base generators modulo `ℓ^w`.
    fn full_relations(&self, w: u32) -> Vec<Vec<BigInt>> {
        let (t, s) = (self.t(), self.s());
        let md = big_pow(self.ell, w);
        let mut rows = Vec::new();
        for i in 0..t {
            let mut r = vec![BigInt::zero(); t + s];
            r[i] = modp(&self.ideal_orders[i], &md);
            for k in 0..s {
                r[t + k] = modp(&-&self.ideal_c[i][k], &md);
            }
            rows.push(r);
        }
        for u in &self.units {
            let mut r = vec![BigInt::zero(); t];
            r.extend(u.iter().map(|x| modp(x, &md)));
            rows.push(r);
        }
        rows
    }

    /// `deg(x_i) / deg(x_j)` modulo `ℓ^w`.
    fn ratios(&self, j: usize, w: u32) -> Result<Vec<BigInt>> {
        let vj = self.val(&self.degrees[j]);
        if w + vj > self.wv {
            return Err(Error::InsufficientPrecision("degree ratios".into()));
        }
        let p = self.wv;
        let dj = PadicInt::new(self.ell, p, &self.degrees[j]);
        self.degrees
            .iter()
            .map(|d| {
                let q = PadicInt::new(self.ell, p, d).div(&dj)?;
                Ok(modp(q.residue(), &big_pow(self.ell, w)))
            })
            .collect()
    }

    /// The degree-zero group modulo `ℓ^w`: Smith form of the relation matrix
    /// with the eliminated column removed.
    fn group_at(&self, w: u32, j: Option<usize>) -> (SnfMod, ModMat, Vec<usize>) {
        let n = self.t() + self.s();
        let cols: Vec<usize> = match j {
            Some(j) => (0..n).filter(|&c| c != j).collect(),
            None => (0..n).collect(),
        };
        let rows: Vec<Vec<BigInt>> =
            self.full_relations(w).iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        let a = ModMat::from_rows(self.ell, w, &rows, cols.len());
        (snf_mod(&a), a, cols)
    }

    fn cyclic_at(&self, w: u32) -> Vec<BigInt> {
        self.group_at(w, self.eliminated()).0.cokernel()
    }

    /// Torsion of the cokernel of the full relation matrix, which must agree
    /// with the degree-zero computation.
    fn direct_route(&self, w: u32) -> Result<Vec<BigInt>> {
        let rows = self.full_relations(w);
        let a = ModMat::from_rows(self.ell, w, &rows, self.t() + self.s());
        let mut vals = snf_mod(&a).vals;
        vals.sort();
        let free = vals.iter().rposition(|&v| v == w).ok_or_else(|| {
            Error::Inconsistent("relation matrix has no free part".into())
        })?;
        vals.remove(free);
        let mut f: Vec<BigInt> = vals.iter().filter(|&&v| v > 0).map(|&v| big_pow(self.ell, v)).collect();
        f.sort();
        Ok(f)
    }

    /// `Cl'_ℓ` modulo the image of the degree-zero group.
    fn coker_theta(&self, ratios: Option<&[BigInt]>, j: Option<usize>) -> Vec<BigInt> {
        let t = self.t();
        if t == 0 {
            return vec![];
        }
        let w = self.m_prime() + 1;
        let mut rows = Vec::new();
        for (i, d) in self.ideal_orders.iter().enumerate() {
            let mut r = vec![BigInt::zero(); t];
            r[i] = big_pow(self.ell, val_big(d, self.ell));
            rows.push(r);
        }
        let n = t + self.s();
        for k in 0..n {
            if Some(k) == j {
                continue;
            }
            let mut r = vec![BigInt::zero(); t];
            if k < t {
                r[k] = BigInt::one();
            }
            if let (Some(j), Some(d)) = (j, ratios) {
                if j < t {
                    r[j] -= &d[k];
                }
            }
            rows.push(r);
        }
        snf_mod(&ModMat::from_rows(self.ell, w, &rows, t)).cokernel()
    }

    fn base(&self) -> Vec<BaseGenerator> {
        let mut out: Vec<BaseGenerator> = self
            .ideal_gens
            .iter()
            .map(|g| {
                BaseGenerator::Ideal(
                    g.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(k, e)| (k, e.clone())).collect(),
                )
            })
            .collect();
        out.extend((0..self.s()).map(BaseGenerator::Place));
        out
    }

    /// `α_i` for every place above ℓ, accurate modulo `ℓ^w`.
    fn alpha_system(&self, w: u32) -> Result<Vec<Vec<BigInt>>> {
        self.places.iter().map(|lp| alpha_for(self.ctx, lp, w)).collect()
    }
}

/// `ṽ_P` of an element of the completion at `P` (a component element).
fn local_tilde(lf: &crate::localfield::LocalField, lp: &LogPlace, x: &[BigInt]) -> Result<PadicInt> {
    let n = lf.norm_component(x);
    let l = iwasawa_log(&n)?;
    let deg = deg_ell(lp.place.p, lp.ell, lf.prec).mul_int(&BigInt::from(lp.f_tilde));
    Ok(l.div(&deg)?.neg())
}

/// A global element `α` with `ṽ_P(α) = 1` and `α ≡ 1` at the other places
/// above ℓ, modulo `ℓ^w`.
fn alpha_for(ctx: &FieldContext, lp: &LogPlace, w: u32) -> Result<Vec<BigInt>> {
    let vd = lp.deg.valuation_capped();
    let k = w + 2 * vd + 8 + lp.place.f;
    let lf = ctx.local_field(&lp.place, k)?;
    let gens = lf.unit_group_generators()?;
    let vals: Vec<PadicInt> = gens.iter().map(|g| local_tilde(&lf, lp, g)).collect::<Result<_>>()?;
    let to_exp = |x: &PadicInt| -> BigUint { x.residue().to_biguint().unwrap() };
    let eta = if let Some(i) = (1..gens.len()).find(|&i| vals[i].is_unit()) {
        lf.pow(&gens[i], &to_exp(&vals[i].inv()?))
    } else {
        let a = &vals[0];
        if !a.is_unit() {
            return Err(Error::Inconsistent("logarithmic valuation is not surjective".into()));
        }
        let (kmin, umin) = (1..gens.len())
            .filter_map(|i| vals[i].valuation().map(|v| (i, v)))
            .min_by_key(|&(_, v)| v)
            .ok_or_else(|| Error::Inconsistent("no unit with nonzero logarithmic valuation".into()))?;
        let md = big_pow(lp.ell, umin);
        let ainv = crate::arith::int::inv_mod_big(&modp(a.residue(), &md), &md).unwrap();
        let e_pi = if ainv.is_zero() { md.clone() } else { ainv };
        let rem = PadicInt::one(lp.ell, a.precision()).sub(&a.mul_int(&e_pi));
        let c = rem.div(&vals[kmin])?;
        let p1 = lf.pow(&gens[0], &e_pi.to_biguint().unwrap());
        lf.mul(&p1, &lf.pow(&gens[kmin], &to_exp(&c)))
    };
    let one = ctx.one();
    let md = lf.modulus().clone();
    let alpha: Vec<BigInt> =
        eta.iter().zip(one.iter().zip(lf.one())).map(|(x, (o, e))| modp(&(x + o - e), &md)).collect();
    if alpha.iter().all(|x| x.is_zero()) {
        return Err(Error::Inconsistent("α vanished".into()));
    }
    Ok(alpha)
}

/// Result of the precision search alone.
pub fn precision_bound(ctx: &FieldContext, cg: &ClassGroup, ell: u64, cap: u32) -> Result<PrecisionReport> {
    let cgp = with_ell_places(ctx, cg, ell)?;
    let mut wv = 32;
    loop {
        let ws = Workspace::build(ctx, &cgp, ell, wv)?;
        if let Some((r, _)) = ws.precision_bound(cap)? {
            return Ok(r);
        }
        wv *= 2;
    }
}

fn with_ell_places(ctx: &FieldContext, cg: &ClassGroup, ell: u64) -> Result<ClassGroup> {
    if !is_prime_u64(ell) {
        return Err(Error::InvalidInput(format!("{ell} is not prime")));
    }
    let places: Vec<PrimePlace> = ctx.places(ell).to_vec();
    cg.with_places(ctx, &places)
}

/// Builds the workspace at a precision sufficient for the bound and the
/// degree-zero computation at `m + 4`.
fn prepare<'a>(
    ctx: &'a FieldContext,
    cgp: &'a ClassGroup,
    ell: u64,
    opts: &LogClassOptions,
) -> Result<(Workspace<'a>, PrecisionReport, Vec<BigInt>)> {
    let mut wv = 32u32;
    loop {
        let ws = Workspace::build(ctx, cgp, ell, wv)?;
        match ws.precision_bound(opts.precision_cap)? {
            Some((r, cl)) => {
                let vj = ws.eliminated().map_or(0, |j| ws.val(&ws.degrees[j]));
                let need = r.m + 4 + vj + 1;
                if need <= wv {
                    return Ok((ws, r, cl));
                }
                wv = need.next_power_of_two().max(2 * wv);
            }
            None => wv *= 2,
        }
    }
}

/// Cyclic factors of the group computed modulo `ℓ^{m + k}` for each offset `k`.
pub fn precision_profile(
    ctx: &FieldContext,
    cg: &ClassGroup,
    ell: u64,
    opts: &LogClassOptions,
    offsets: &[u32],
) -> Result<Vec<Vec<BigInt>>> {
    let cgp = with_ell_places(ctx, cg, ell)?;
    let (ws, report, _) = prepare(ctx, &cgp, ell, opts)?;
    let w = report.m.max(1);
    offsets
        .iter()
        .map(|&k| {
            if w + k + 1 > ws.wv {
                return Err(Error::InsufficientPrecision(format!("offset {k}")));
            }
            Ok(ws.cyclic_at(w + k))
        })
        .collect()
}

/// Computes the class group and then the logarithmic ℓ-class group.
pub fn log_class_group(ctx: &FieldContext, ell: u64, opts: &LogClassOptions) -> Result<LogClassResult> {
    let cg = ClassGroup::compute(ctx, &opts.class_group)?;
    log_class_group_from(ctx, &cg, ell, opts)
}

/// The logarithmic ℓ-class group from an already computed class group.
pub fn log_class_group_from(
    ctx: &FieldContext,
    cg: &ClassGroup,
    ell: u64,
    opts: &LogClassOptions,
) -> Result<LogClassResult> {
    let cgp = with_ell_places(ctx, cg, ell)?;
    let (ws, report, cl_ell_places) = prepare(ctx, &cgp, ell, opts)?;
    let w = report.m.max(1);
    let (sn, rel, cols) = ws.group_at(w, ws.eliminated());
    let cyclic = sn.cokernel();
    if opts.verify {
        for j in ws.minimal_indices().into_iter().skip(1) {
            let alt = ws.group_at(w, Some(j)).0.cokernel();
            if alt != cyclic {
                return Err(Error::Inconsistent(format!(
                    "eliminating generator {j} gives {} instead of {}",
                    render_group(&alt),
                    render_group(&cyclic)
                )));
            }
        }
        for w2 in [w + 2, w + 4] {
            let c2 = ws.cyclic_at(w2);
            if c2 != cyclic {
                return Err(Error::Inconsistent(format!(
                    "group changed with precision: {} at {w}, {} at {w2}",
                    render_group(&cyclic),
                    render_group(&c2)
                )));
            }
        }
        let direct = ws.direct_route(w + 2)?;
        if direct != cyclic {
            return Err(Error::Inconsistent(format!(
                "direct route gives {} instead of {}",
                render_group(&direct),
                render_group(&cyclic)
            )));
        }
    }

    let j = ws.eliminated();
    let ratios = match j {
        Some(j) => Some(ws.ratios(j, w)?),
        None => None,
    };
    let n = ws.t() + ws.s();
    let md = big_pow(ell, w);
    let rinv = sn.right.inverse().ok_or_else(|| Error::Inconsistent("singular Smith transform".into()))?;
    let mut generators = Vec::new();
    for (i, &v) in sn.vals.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let mut g = vec![BigInt::zero(); n];
        for (t, &c) in cols.iter().enumerate() {
            g[c] = rinv.get(i, t).clone();
        }
        if let (Some(j), Some(d)) = (j, &ratios) {
            let mut acc = BigInt::zero();
            for (t, &c) in cols.iter().enumerate() {
                acc += rinv.get(i, t) * &d[c];
            }
            g[j] = modp(&-acc, &md);
        }
        generators.push((v, g));
    }
    generators.sort_by_key(|(v, _)| *v);
    let generators: Vec<Vec<BigInt>> = generators.into_iter().map(|(_, g)| g).collect();
    let base_degrees: Vec<BigInt> = ws.degrees.iter().map(|d| modp(d, &md)).collect();
    if opts.verify {
        for g in &generators {
            let deg: BigInt = g.iter().zip(&base_degrees).map(|(a, b)| a * b).sum();
            if !modp(&deg, &md).is_zero() {
                return Err(Error::Inconsistent("generator of nonzero degree".into()));
            }
        }
    }

    let coker_theta = ws.coker_theta(ratios.as_deref(), j);
    let cl_ell_part: BigInt = ws.ideal_orders.iter().map(|d| big_pow(ell, val_big(d, ell))).product();
    let lhs: BigInt = cl_ell_places.iter().product::<BigInt>() * cl_ell_part;
    let rhs: BigInt = cyclic.iter().product::<BigInt>() * coker_theta.iter().product::<BigInt>();
    let theta_consistent = lhs == rhs;

    let wild = cg.torsion.w % (2 * ell) == 0;
    let wild_rank = wild.then_some(cyclic.len());

    let alphas = if opts.alphas { ws.alpha_system(w)? } else { vec![] };
    if opts.verify && opts.alphas {
        let md = big_pow(ell, w);
        for (i, a) in alphas.iter().enumerate() {
            for (k, lp) in ws.places.iter().enumerate() {
                let v = modp(lp.valuation(ctx, a)?.residue(), &md);
                let expect = if i == k { BigInt::one() } else { BigInt::zero() };
                if v != modp(&expect, &md) {
                    return Err(Error::Inconsistent(format!("ṽ of α_{i} at place {k} is {v}")));
                }
            }
        }
    }

    let places = ws
        .places
        .iter()
        .map(|lp| PlaceSummary {
            p: lp.place.p,
            e: lp.place.e,
            f: lp.place.f,
            e_tilde: lp.e_tilde,
            f_tilde: lp.f_tilde,
            deg_valuation: lp.deg.valuation_capped(),
        })
        .collect();

    Ok(LogClassResult {
        ell,
        cyclic,
        generators,
        base: ws.base(),
        relations: crate::arith::modmat::hnf_mod(&rel).h,
        precision: report,
        class_group: cg.cyclic.clone(),
        cl_prime: ws.cl_prime.clone(),
        cl_ell_places,
        coker_theta,
        theta_consistent,
        wild_rank,
        eliminated: j,
        places,
        alphas,
        l_unit_relations: ws.units.len(),
        base_degrees,
    })
}

/// `ṽ` at the places above ℓ of a generating set of the ℓ-units modulo torsion.
pub fn l_unit_valuations(ctx: &FieldContext, cg: &ClassGroup, ell: u64, prec: u32) -> Result<Vec<Vec<BigInt>>> {
    let cgp = with_ell_places(ctx, cg, ell)?;
    let ws = Workspace::build(ctx, &cgp, ell, prec)?;
    Ok(ws.units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::ZPoly;
    use crate::numberfield::maximal_order;

    fn run(f: &[i64], ell: u64) -> LogClassResult {
        let ctx = maximal_order(&ZPoly::from_i64(f)).unwrap();
        log_class_group(&ctx, ell, &LogClassOptions::default()).unwrap()
    }

    #[test]
    fn rendering() {
        assert_eq!(render_group(&[]), "[1]");
        assert_eq!(render_group(&[BigInt::from(2), BigInt::from(4)]), "[2,4]");
    }

    #[test]
    fn gaussian_field_is_trivial() {
        for ell in [2, 3, 5, 7] {
            let r = run(&[1, 0, 1], ell);
            assert!(r.cyclic.is_empty(), "ℓ = {ell}: {:?}", r.cyclic);
            assert!(r.theta_consistent);
        }
    }

    #[test]
    fn quadratic_with_large_two_part() {
        let r = run(&[521951, 0, 1], 2);
        assert_eq!(render_group(&r.cyclic), "[2,4]");
        assert_eq!(r.precision.bound, BigInt::from(8));
        assert!(r.theta_consistent);
    }
}
