//! Completions `F_P` of a number field at primes above `p`.
//!
//! A completion is realised as the component `E·(O ⊗ Z/p^K)` cut out by the
//! lifted idempotent `E` of `P`. Elements are kept as global `O`-coordinates
//! reduced modulo `p^K`; the component carries an explicit `Z/p^K`-basis so
//! that local norms and characteristic polynomials are determinants over
//! that basis.

pub mod order;
pub mod prime;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::fp;
use crate::arith::int::{big_mod_u64, big_pow, factor_bigint, inv_mod_big};
use crate::arith::padic::PadicInt;
use crate::arith::poly::{charpoly, QPoly, ZPoly};
use crate::error::{Error, Result};
pub use order::{AlgModP, Order, Subspace};
pub use prime::{decompose, PrimeData};

/// A monic polynomial over `Z_p` known modulo `p^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicPoly {
    pub p: u64,
    pub prec: u32,
    /// Coefficients, lowest degree first.
    pub coeffs: Vec<PadicInt>,
}

impl PadicPoly {
    pub fn from_zpoly(f: &ZPoly, p: u64, prec: u32) -> PadicPoly {
        PadicPoly { p, prec, coeffs: f.coeffs().iter().map(|c| PadicInt::new(p, prec, c)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Integer representatives in `[0, p^prec)`.
    pub fn to_zpoly(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| c.residue().clone()).collect())
    }

    pub fn mul(&self, o: &PadicPoly) -> PadicPoly {
        let k = self.prec.min(o.prec);
        let prod = self.to_zpoly().mul(&o.to_zpoly());
        PadicPoly::from_zpoly(&prod, self.p, k)
    }
}

/// An irreducible factor of a polynomial over `Z_p` with its certificates.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub phi: PadicPoly,
    pub e: u32,
    pub f: u32,
    /// `Γ(α)` reduces to a generator of the residue field.
    pub gamma: QPoly,
    /// `Π(α)` has valuation `1/e`.
    pub pi: QPoly,
}

impl LocalFactor {
    pub fn degree(&self) -> u32 {
        self.e * self.f
    }
}

/// The completion of a number field at a prime `P` above `p`.
#[derive(Clone, Debug)]
pub struct LocalField {
    pub p: u64,
    pub prec: u32,
    pub e: u32,
    pub f: u32,
    order: Order,
    prime: PrimeData,
    modulus: BigInt,
    idem: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    /// Uniformiser, as an element of the component.
    pub pi: Vec<BigInt>,
    /// `ε` with `p = -π^e ε`; known modulo `p^{prec-1}`.
    pub eps: Vec<BigInt>,
}

/// Solves `c M = v` modulo `p^k` for a matrix with unit determinant.
fn solve_unit_system(m: &[Vec<BigInt>], v: &[BigInt], modulus: &BigInt, p: u64) -> Result<Vec<BigInt>> {
    let n = m.len();
    // Transpose: equations M^T c = v.
    let mut a: Vec<Vec<BigInt>> =
        (0..n).map(|j| (0..n).map(|i| m[i][j].clone()).chain(std::iter::once(v[j].clone())).collect()).collect();
    for c in 0..n {
        let r = (c..n).find(|&r| big_mod_u64(&a[r][c], p) != 0).ok_or(Error::NonUnit)?;
        a.swap(c, r);
        let inv = inv_mod_big(&a[c][c], modulus).ok_or(Error::NonUnit)?;
        for x in a[c].iter_mut() {
            *x = (&*x * &inv).mod_floor(modulus);
        }
        let pr = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let q = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pr) {
                *x = (&*x - &q * y).mod_floor(modulus);
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n].clone()).collect())
}

impl LocalField {
    /// Builds the completion at `prime` with working precision `prec`.
    /// The order must be maximal at `p`.
    pub fn new(order: &Order, prime: &PrimeData, prec: u32) -> Result<LocalField> {
        let p = prime.p;
        let n = order.n;
        let prec = prec.max(2);
        let modulus = big_pow(p, prec);
        let idem_p: Vec<BigInt> = prime.idem_p.iter().map(|&x| BigInt::from(x)).collect();
        let idem = prime::lift_idempotent(order, &idem_p, p, prec);
        // Z/p^K-basis of the component with unit pivots.
        let mut rows: Vec<Vec<BigInt>> = (0..n)
            .map(|k| {
                let mut e = vec![BigInt::zero(); n];
                e[k] = BigInt::one();
                order.mul_mod(&idem, &e, &modulus)
            })
            .collect();
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        let d = (prime.e * prime.f) as usize;
        while basis.len() < d {
            let found = rows
                .iter()
                .enumerate()
                .find_map(|(i, r)| r.iter().position(|x| big_mod_u64(x, p) != 0).map(|c| (i, c)));
            let (i, c) = found.ok_or_else(|| Error::Inconsistent("component is not free".into()))?;
            let mut r = rows.swap_remove(i);
            let inv = inv_mod_big(&r[c], &modulus).unwrap();
            for x in r.iter_mut() {
                *x = (&*x * &inv).mod_floor(&modulus);
            }
            for other in rows.iter_mut().chain(basis.iter_mut()) {
                if other[c].is_zero() {
                    continue;
                }
                let q = other[c].clone();
                for (x, y) in other.iter_mut().zip(&r) {
                    *x = (&*x - &q * y).mod_floor(&modulus);
                }
            }
            basis.push(r);
            pivots.push(c);
        }
        if rows.iter().any(|r| r.iter().any(|x| !x.is_zero())) {
            return Err(Error::Inconsistent("component rank exceeds e*f".into()));
        }
        let pi = order.mul_mod(&idem, &prime.theta, &modulus);
        let mut lf = LocalField {
            p,
            prec,
            e: prime.e,
            f: prime.f,
            order: order.clone(),
            prime: prime.clone(),
            modulus,
            idem,
            basis,
            pivots,
            pi,
            eps: vec![],
        };
        // ε = -(π^e / p)^{-1}
        let pe = lf.pow(&lf.pi, &BigUint::from(lf.e));
        let bp = BigInt::from(p);
        if pe.iter().any(|x| !(x % &bp).is_zero()) {
            return Err(Error::Inconsistent("π^e is not divisible by p".into()));
        }
        let w: Vec<BigInt> = pe.iter().map(|x| x / &bp).collect();
        let w = lf.embed(&w);
        let winv = lf.inverse(&w)?;
        lf.eps = winv.iter().map(|x| (-x).mod_floor(&lf.modulus)).collect();
        Ok(lf)
    }

    pub fn degree(&self) -> u32 {
        self.e * self.f
    }

    pub fn prime_data(&self) -> &PrimeData {
        &self.prime
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// The identity of the component (the idempotent `E`).
    pub fn one(&self) -> &[BigInt] {
        &self.idem
    }

    /// Projects a global integral element into the component.
    pub fn embed(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.order.mul_mod(&self.idem, x, &self.modulus)
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.order.mul_mod(a, b, &self.modulus)
    }

    pub fn pow(&self, a: &[BigInt], e: &BigUint) -> Vec<BigInt> {
        let mut r = self.idem.clone();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| (x + y).mod_floor(&self.modulus)).collect()
    }

    /// Coordinates of a component element on the local basis.
    pub fn coords(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.pivots.iter().map(|&c| y[c].clone()).collect()
    }

    /// Matrix of multiplication by `x` on the local basis.
    pub fn mult_matrix(&self, x: &[BigInt]) -> Vec<Vec<BigInt>> {
        self.basis.iter().map(|b| self.coords(&self.mul(x, b))).collect()
    }

    /// Inverse of a unit of the component.
    pub fn inverse(&self, u: &[BigInt]) -> Result<Vec<BigInt>> {
        let m = self.mult_matrix(u);
        let c = solve_unit_system(&m, &self.coords(&self.idem), &self.modulus, self.p)?;
        let n = self.order.n;
        let mut y = vec![BigInt::zero(); n];
        for (ct, b) in c.iter().zip(&self.basis) {
            for (yy, bb) in y.iter_mut().zip(b) {
                *yy += ct * bb;
            }
        }
        Ok(y.into_iter().map(|x| x.mod_floor(&self.modulus)).collect())
    }

    /// Local norm `N_{F_P/Q_p}` of a component element, modulo `p^prec`.
    pub fn norm_component(&self, x: &[BigInt]) -> PadicInt {
        let m = self.mult_matrix(x);
        let cp = charpoly(&m, Some(&self.modulus));
        let d = if m.len() % 2 == 0 { cp[0].clone() } else { -cp[0].clone() };
        PadicInt::new(self.p, self.prec, &d)
    }

    /// Local norm of a global integral element.
    pub fn norm(&self, x: &[BigInt]) -> PadicInt {
        self.norm_component(&self.embed(x))
    }

    /// Characteristic polynomial of a component element, coefficients in `[0, p^prec)`.
    pub fn charpoly_of(&self, x: &[BigInt]) -> ZPoly {
        ZPoly::new(charpoly(&self.mult_matrix(x), Some(&self.modulus)))
    }

    /// Residue of an element: coordinates on the residue-field basis.
    pub fn residue(&self, x: &[BigInt]) -> Vec<u64> {
        let m = &self.prime.ideal_mod_p;
        let r = m.reduce(&self.order.reduce_p(x, self.p), self.p);
        m.complement().iter().map(|&c| r[c]).collect()
    }

    /// Representatives `ω_1 .. ω_f` of an `F_p`-basis of the residue field.
    pub fn residue_basis(&self) -> Vec<Vec<BigInt>> {
        let n = self.order.n;
        self.prime
            .ideal_mod_p
            .complement()
            .iter()
            .map(|&c| {
                let mut e = vec![BigInt::zero(); n];
                e[c] = BigInt::one();
                self.embed(&e)
            })
            .collect()
    }

    fn residue_elem(&self, coeffs: &[u64]) -> Vec<BigInt> {
        let n = self.order.n;
        let mut v = vec![BigInt::zero(); n];
        for (&c, &a) in self.prime.ideal_mod_p.complement().iter().zip(coeffs) {
            v[c] = BigInt::from(a);
        }
        v
    }

    /// Matrix over `F_p` of `h_2 : a ↦ a^p - ε a` on the residue basis.
    fn h2_matrix(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let alg = self.order.mod_p(p);
        let eps = self.order.reduce_p(&self.eps, p);
        let m = &self.prime.ideal_mod_p;
        let comp = m.complement();
        comp.iter()
            .map(|&c| {
                let mut a = vec![0u64; self.order.n];
                a[c] = 1;
                let v = alg.sub(&alg.pow_u64(&a, p), &alg.mul(&eps, &a));
                let r = m.reduce(&v, p);
                comp.iter().map(|&t| r[t]).collect()
            })
            .collect()
    }

    /// Whether `h_2` is bijective on the residue field.
    pub fn h2_is_isomorphism(&self) -> bool {
        let mut m = self.h2_matrix();
        fp::rank_mod(&mut m, self.p) == self.f as usize
    }

    /// The fundamental levels `ν` with `0 < ν < pe/(p-1)` and `p ∤ ν`.
    pub fn fundamental_levels(&self) -> Vec<u32> {
        let p = self.p;
        let e = u64::from(self.e);
        (1..)
            .take_while(|&nu: &u64| nu * (p - 1) < p * e)
            .filter(|nu| nu % p != 0)
            .map(|nu| nu as u32)
            .collect()
    }

    /// A residue element generating the multiplicative group of the residue
    /// field, as a global element.
    pub fn residue_generator(&self) -> Result<Vec<BigInt>> {
        let p = self.p;
        let q = big_pow(p, self.f);
        let qm1 = &q - 1u32;
        if qm1.is_one() {
            return Ok(self.order.one.clone());
        }
        let primes: Vec<BigInt> = factor_bigint(&qm1)?.into_iter().map(|(r, _)| r).collect();
        let alg = self.order.mod_p(p);
        let m = &self.prime.ideal_mod_p;
        let one_res = m.reduce(&alg.one, p);
        let mut rng = ChaCha8Rng::seed_from_u64(0x7e1c ^ p);
        let f = self.f as usize;
        for _ in 0..10_000 {
            let c: Vec<u64> = (0..f).map(|_| rng.gen_range(0..p)).collect();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            let g = self.residue_elem(&c);
            let gp = self.order.reduce_p(&g, p);
            let ok = primes.iter().all(|r| {
                let ex: BigUint = (&qm1 / r).to_biguint().unwrap();
                m.reduce(&alg.pow(&gp, &ex), p) != one_res
            });
            if ok {
                return Ok(g);
            }
        }
        Err(Error::Inconsistent("no residue field generator found".into()))
    }

    /// Teichmüller lift of a residue element.
    pub fn teichmuller(&self, g: &[BigInt]) -> Vec<BigInt> {
        let q = BigUint::from(self.p).pow(self.f);
        let mut t = self.embed(g);
        for _ in 0..self.prec {
            t = self.pow(&t, &q);
        }
        t
    }

    /// Generators of `F_P^×`: `π`, a Teichmüller generator of the residue
    /// units, and the principal-unit generators `1 + ω_i π^ν` (with the
    /// extra generator when `h_2` fails to be bijective).
    pub fn unit_group_generators(&self) -> Result<Vec<Vec<BigInt>>> {
        let mut out = vec![self.pi.clone()];
        let g = self.residue_generator()?;
        out.push(self.teichmuller(&g));
        let omegas = self.residue_basis();
        for nu in self.fundamental_levels() {
            let pn = self.pow(&self.pi, &BigUint::from(nu));
            for w in &omegas {
                out.push(self.add(&self.idem, &self.mul(w, &pn)));
            }
        }
        if let Some(w) = self.omega_star() {
            let e = u64::from(self.e);
            let level = self.p * e / (self.p - 1);
            let pn = self.pow(&self.pi, &BigUint::from(level));
            out.push(self.add(&self.idem, &self.mul(&w, &pn)));
        }
        Ok(out)
    }

    /// The residue representative `ω_*` outside the image of `h_2`, present
    /// exactly when `(p-1) | e` and `h_2` is not bijective.
    pub fn omega_star(&self) -> Option<Vec<BigInt>> {
        if u64::from(self.e) % (self.p - 1) != 0 || self.h2_is_isomorphism() {
            return None;
        }
        let img = Subspace::new(self.h2_matrix(), self.f as usize, self.p);
        let t = (0..self.f as usize).find(|&t| {
            let mut v = vec![0u64; self.f as usize];
            v[t] = 1;
            !img.contains(&v, self.p)
        })?;
        Some(self.residue_basis()[t].clone())
    }

    /// `v_P` of a component element (or global element).
    pub fn valuation(&self, x: &[BigInt]) -> Option<u32> {
        if x.iter().all(|c| c.is_zero()) {
            return None;
        }
        Some(self.prime.valuation(&self.order, x))
    }
}

/// Factors `Φ` over `Z_p` into irreducible factors modulo `p^{prec}`, each
/// with its ramification data and certificates `(Γ, Π)`.
pub fn factor_local(phi: &PadicPoly) -> Result<Vec<LocalFactor>> {
    let f = phi.to_zpoly();
    let p = phi.p;
    if f.degree() < 1 || !f.is_monic() {
        return Err(Error::InvalidPolynomial);
    }
    if f.discriminant().is_zero() {
        return Err(Error::InvalidInput("polynomial is not squarefree".into()));
    }
    let order = Order::equation_order(&f).p_maximal(p);
    let x = order.from_zpoly(&ZPoly::from_i64(&[0, 1]));
    let mut out = Vec::new();
    for pd in decompose(&order, p) {
        let lf = LocalField::new(&order, &pd, phi.prec)?;
        let cp = lf.charpoly_of(&lf.embed(&x));
        let g = lf.residue_generator()?;
        out.push(LocalFactor {
            phi: PadicPoly::from_zpoly(&cp, p, phi.prec),
            e: pd.e,
            f: pd.f,
            gamma: order.to_qpoly(&g),
            pi: order.to_qpoly(&pd.theta),
        });
    }
    out.sort_by(|a, b| (a.f, a.e, a.phi.to_zpoly().coeffs().to_vec()).cmp(&(b.f, b.e, b.phi.to_zpoly().coeffs().to_vec())));
    Ok(out)
}

/// Local norm of an element given as a rational polynomial in the generator,
/// computed on the completion `lf`. Fails if the norm is not a p-adic integer.
pub fn local_norm(lf: &LocalField, x: &QPoly) -> Result<PadicInt> {
    let (num, den) = lf.order().from_qpoly(x);
    if num.iter().all(|c| c.is_zero()) {
        return Err(Error::InsufficientPrecision("zero element".into()));
    }
    let n = lf.norm(&num);
    if den.is_one() {
        return Ok(n);
    }
    let d = PadicInt::new(lf.p, lf.prec, &den).pow(u64::from(lf.degree()));
    n.div(&d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf_for(f: &[i64], p: u64, prec: u32) -> Vec<LocalField> {
        let f = ZPoly::from_i64(f);
        let o = Order::equation_order(&f).p_maximal(p);
        decompose(&o, p).iter().map(|pd| LocalField::new(&o, pd, prec).unwrap()).collect()
    }

    #[test]
    fn factor_x2_plus_1() {
        let f = ZPoly::from_i64(&[1, 0, 1]);
        let r = factor_local(&PadicPoly::from_zpoly(&f, 5, 10)).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|t| t.e == 1 && t.f == 1));
        let prod = r[0].phi.mul(&r[1].phi);
        assert_eq!(prod, PadicPoly::from_zpoly(&f, 5, 10));
        let r = factor_local(&PadicPoly::from_zpoly(&f, 3, 10)).unwrap();
        assert_eq!((r.len(), r[0].e, r[0].f), (1, 1, 2));
        let r = factor_local(&PadicPoly::from_zpoly(&f, 2, 10)).unwrap();
        assert_eq!((r.len(), r[0].e, r[0].f), (1, 2, 1));
    }

    #[test]
    fn gaussian_2adic() {
        let lf = &lf_for(&[1, 0, 1], 2, 20)[0];
        let one_plus_i = QPoly::new(vec![BigInt::one().into(), BigInt::one().into()]);
        assert_eq!(local_norm(lf, &one_plus_i).unwrap(), PadicInt::from_i64(2, 20, 2));
        // ε is a unit and p = -π^2 ε
        let pe = lf.mul(&lf.pow(&lf.pi, &BigUint::from(2u32)), &lf.eps);
        let two = lf.embed(&lf.order().scalar(&BigInt::from(-2)));
        let m = big_pow(2, 19);
        assert!(pe.iter().zip(&two).all(|(a, b)| ((a - b) % &m).is_zero()));
        assert!(!lf.h2_is_isomorphism());
        assert_eq!(lf.fundamental_levels(), vec![1, 3]);
        assert_eq!(lf.unit_group_generators().unwrap().len(), 2 + 2 + 1);
    }

    #[test]
    fn qp_generators() {
        let lf = &lf_for(&[-2, 1], 7, 10)[0];
        let gens = lf.unit_group_generators().unwrap();
        assert_eq!(gens.len(), 3);
        let lf = &lf_for(&[-3, 1], 2, 10)[0];
        assert!(!lf.h2_is_isomorphism());
        assert_eq!(lf.unit_group_generators().unwrap().len(), 4);
    }

    #[test]
    fn h2_depends_on_eps() {
        // Q_2(ζ_3): ε ≡ 1 and a ↦ a^2 - a has kernel F_2.
        let lf = &lf_for(&[1, 1, 1], 2, 10)[0];
        assert_eq!((lf.e, lf.f), (1, 2));
        assert!(!lf.h2_is_isomorphism());
        assert!(lf.omega_star().is_some());
        // y^4 - 6y^2 + 18: y^2 = 3(1+i) over Q_3, residue field F_9, and
        // ε = -1/(1+i) is a non-square there, so a ↦ a^3 - ε a is bijective.
        let lf = &lf_for(&[18, 0, -6, 0, 1], 3, 10)[0];
        assert_eq!((lf.e, lf.f), (2, 2));
        assert!(lf.h2_is_isomorphism());
        assert!(lf.omega_star().is_none());
    }

    #[test]
    fn norm_multiplicative() {
        let lfs = lf_for(&[52, -12, 13, 0, 1], 3, 12);
        let o = lfs[0].order().clone();
        let a = o.from_zpoly(&ZPoly::from_i64(&[2, 1, 1]));
        let b = o.from_zpoly(&ZPoly::from_i64(&[-1, 3, 0, 1]));
        for lf in &lfs {
            let l = lf.norm(&o.mul(&a, &b));
            let r = lf.norm(&a).mul(&lf.norm(&b));
            assert_eq!(l, r);
        }
        let prod: PadicInt = lfs.iter().map(|lf| lf.norm(&a)).reduce(|x, y| x.mul(&y)).unwrap();
        assert_eq!(prod, PadicInt::new(3, 12, &o.norm(&a)));
    }

    #[test]
    fn teichmuller_has_order_q_minus_1() {
        let lf = &lf_for(&[1, 0, 1], 3, 8)[0];
        let g = lf.residue_generator().unwrap();
        let t = lf.teichmuller(&g);
        assert_eq!(lf.pow(&t, &BigUint::from(8u32)), lf.one().to_vec());
        assert_ne!(lf.pow(&t, &BigUint::from(4u32)), lf.one().to_vec());
    }
}
