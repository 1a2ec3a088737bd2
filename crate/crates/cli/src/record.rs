//! Serialisable result records.
//!
//! Records are written with sorted keys and integers rendered in decimal
//! strings, so equal records serialise to identical bytes.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use logclass_core::corpus::splitting_shape;
use logclass_core::logclass::{render_group, BaseGenerator, LogClassResult};
use logclass_core::numberfield::{ClassGroup, FieldContext};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    /// Coefficients, leading term first.
    pub poly: Vec<String>,
    pub ell: u64,
    pub grh: bool,
    pub precision_cap: u32,
}

impl JobSpec {
    pub fn new(coeffs_ascending: &[BigInt], ell: u64, grh: bool, precision_cap: u32) -> JobSpec {
        JobSpec { poly: coeffs_ascending.iter().rev().map(|c| c.to_string()).collect(), ell, grh, precision_cap }
    }

    pub fn coeffs_ascending(&self) -> Vec<BigInt> {
        self.poly.iter().rev().map(|c| c.parse().expect("canonical integer")).collect()
    }

    /// Cache key: everything that determines the result, plus the toolkit version.
    pub fn key(&self) -> String {
        format!("{}|ell={}|grh={}|cap={}|v={}", self.poly.join(","), self.ell, self.grh, self.precision_cap, VERSION)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceRow {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub e_tilde: u64,
    pub f_tilde: u64,
    /// `v_ℓ(deg_F P)`.
    pub deg_valuation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub spec: JobSpec,
    pub version: String,
    pub field: String,
    /// Rendered logarithmic class group, e.g. `[2,4]`.
    pub group: String,
    pub cyclic: Vec<String>,
    pub class_group: Vec<String>,
    pub cl_prime: Vec<String>,
    pub cl_ell_places: Vec<String>,
    pub coker_theta: Vec<String>,
    pub theta_consistent: bool,
    pub splitting: String,
    pub bound: String,
    pub m: u32,
    pub m_prime: u32,
    pub m_tilde: u32,
    pub wild_rank: Option<usize>,
    pub places: Vec<PlaceRow>,
    /// The base generators: ideals as products of `P(p,k)`, places as `A_i`.
    pub base: Vec<String>,
    /// Generators of the cyclic factors as coefficient vectors over `base`.
    pub generators: Vec<Vec<String>>,
    /// Echelon form of the relation matrix modulo `ℓ^m`.
    pub relations: Vec<Vec<String>>,
    pub regulator: String,
    pub millis: u64,
}

fn strs(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

impl ResultRecord {
    pub fn build(
        spec: JobSpec,
        ctx: &FieldContext,
        cg: &ClassGroup,
        r: &LogClassResult,
        millis: u64,
    ) -> ResultRecord {
        let base = r
            .base
            .iter()
            .map(|b| match b {
                BaseGenerator::Ideal(terms) => terms
                    .iter()
                    .map(|(k, e)| format!("P({},{})^{}", cg.fb[*k].p, cg.fb[*k].index, e))
                    .collect::<Vec<_>>()
                    .join("*"),
                BaseGenerator::Place(i) => format!("A{}", i + 1),
            })
            .collect();
        ResultRecord {
            version: VERSION.to_string(),
            field: ctx.poly.to_string(),
            group: render_group(&r.cyclic),
            cyclic: strs(&r.cyclic),
            class_group: strs(&r.class_group),
            cl_prime: strs(&r.cl_prime),
            cl_ell_places: strs(&r.cl_ell_places),
            coker_theta: strs(&r.coker_theta),
            theta_consistent: r.theta_consistent,
            splitting: splitting_shape(ctx, spec.ell),
            bound: r.precision.bound.to_string(),
            m: r.precision.m,
            m_prime: r.precision.m_prime,
            m_tilde: r.precision.m_tilde,
            wild_rank: r.wild_rank,
            places: r
                .places
                .iter()
                .map(|p| PlaceRow {
                    p: p.p,
                    e: p.e,
                    f: p.f,
                    e_tilde: p.e_tilde,
                    f_tilde: p.f_tilde,
                    deg_valuation: p.deg_valuation,
                })
                .collect(),
            base,
            generators: r.generators.iter().map(|g| strs(g)).collect(),
            relations: r.relations.rows_vec().iter().map(|row| strs(row)).collect(),
            regulator: format!("{:.12}", cg.regulator),
            millis,
            spec,
        }
    }

    /// Canonical JSON: keys sorted, no insignificant whitespace.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("record serialises");
        serde_json::to_string(&v).expect("value serialises")
    }

    pub fn from_json(s: &str) -> serde_json::Result<ResultRecord> {
        serde_json::from_str(s)
    }

    /// Plain-text report.
    pub fn human(&self) -> String {
        let mut s = String::new();
        let ell = self.spec.ell;
        let grp = |v: &[String]| {
            if v.is_empty() {
                "[1]".to_string()
            } else {
                format!("[{}]", v.join(","))
            }
        };
        s += &format!("field            {}\n", self.field);
        s += &format!("ell              {ell}\n");
        s += &format!("class group      {}\n", grp(&self.class_group));
        s += &format!("({ell})              {}\n", self.splitting);
        s += &format!("Cl'              {}\n", grp(&self.cl_prime));
        s += &format!("bound            {} (m' = {}, m~ = {})\n", self.bound, self.m_prime, self.m_tilde);
        s += &format!("Cl~({ell})           {}\n", grp(&self.cl_ell_places));
        s += &format!("coker theta      {}\n", grp(&self.coker_theta));
        s += &format!("theta identity   {}\n", if self.theta_consistent { "holds" } else { "FAILS" });
        s += &format!(
            "wild rank        {}\n",
            self.wild_rank.map_or("not applicable".to_string(), |r| r.to_string())
        );
        s += &format!("log class group  {}\n", self.group);
        s += "places above ell:\n     p   e   f  e~  f~  v(deg)\n";
        for p in &self.places {
            s += &format!("{:>6}{:>4}{:>4}{:>4}{:>4}{:>8}\n", p.p, p.e, p.f, p.e_tilde, p.f_tilde, p.deg_valuation);
        }
        s
    }
}
