//! Reference fields with their published invariants, and the comparison of a
//! computed result against a row.

use num_bigint::BigInt;

use crate::arith::int::val_big;
use crate::arith::poly::ZPoly;
use crate::logclass::{render_group, LogClassResult};
use crate::numberfield::FieldContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    /// Unconditional class groups, degree at most 4.
    Mandatory,
    /// Degree 5 and above; run with the GRH bound.
    Stretch,
}

#[derive(Clone, Debug)]
pub struct CorpusRow {
    pub field: &'static str,
    /// Coefficients, constant term first.
    pub poly: &'static [i64],
    pub ell: u64,
    /// Decomposition of `(ℓ)`, e.g. `p1^2p2^2`.
    pub splitting: &'static str,
    pub cl: &'static [u64],
    pub cl_prime: &'static [u64],
    pub bound: u64,
    pub expected: &'static [u64],
    pub coker_theta: Option<&'static [u64]>,
    pub wild_rank: Option<usize>,
    pub tier: Tier,
}

impl CorpusRow {
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn zpoly(&self) -> ZPoly {
        ZPoly::from_i64(self.poly)
    }

    pub fn grh(&self) -> bool {
        self.tier == Tier::Stretch
    }
}

const QA: &[i64] = &[52, -12, 13, 0, 1];
const ZETA3_303: &[i64] = &[93636, 0, -600, 0, 1];
const BIG_BIQUAD: &[i64] = &[1_524_187_776_400, 0, -2_469_148, 0, 1];
const QB: &[i64] = &[59049, 17, 34, 18, 2, 1];
const ZETA5_5029: &[i64] =
    &[639_753_851_422_541, -254_476_422_024, -508_725_216_422, 151_745_050, 151_719_906, -30_170, -20_113, 2, 1];
const I11_499: &[i64] = &[67_145_765_625, 0, 506_497_204, 0, 1_474_734, 0, 1956, 0, 1];
const I11_GAMMA: &[i64] =
    &[576_295_625, 433_739_280, 137_223_052, 21_467_212, 1_094_426, -55_260, 136_146, 23_676, 3873, 80, 2, 12, 1];

#[allow(clippy::too_many_arguments)]
const fn row(
    field: &'static str,
    poly: &'static [i64],
    ell: u64,
    splitting: &'static str,
    cl: &'static [u64],
    cl_prime: &'static [u64],
    bound: u64,
    expected: &'static [u64],
    tier: Tier,
) -> CorpusRow {
    CorpusRow { field, poly, ell, splitting, cl, cl_prime, bound, expected, coker_theta: None, wild_rank: None, tier }
}

/// The reference table.
pub fn paper_rows() -> Vec<CorpusRow> {
    use Tier::*;
    let mut rows = vec![
        row("Q(sqrt(-521951))", &[521951, 0, 1], 2, "p1p2", &[1024], &[4], 8, &[2, 4], Mandatory),
        row("Q(i,sqrt(11))", &[144, 0, -20, 0, 1], 5, "p1p2p3p4", &[], &[], 5, &[5], Mandatory),
        row("Q(i,sqrt(78))", &[6241, 0, -154, 0, 1], 2, "p1^4", &[2, 2], &[2], 2, &[], Mandatory),
        row("Q(i,sqrt(455))", &[207_936, 0, -908, 0, 1], 2, "p1^2p2^2", &[2, 2, 10], &[2, 2], 512, &[2, 512], Mandatory),
        row("Q(i,sqrt(1173))", &[1_378_276, 0, -2344, 0, 1], 2, "p1^2", &[2, 2, 6], &[2, 2, 2], 2, &[2, 2, 2], Mandatory),
        row("Q(i,sqrt(1227))", &[1_507_984, 0, -2452, 0, 1], 613, "p1p2p3p4", &[4, 4], &[4, 4], 613, &[613], Mandatory),
        row("Q(alpha)", QA, 2, "p1^2p2^2", &[14], &[], 1, &[], Mandatory),
        row("Q(alpha)", QA, 3, "p1^2p2^2", &[14], &[], 3, &[3], Mandatory),
        row("Q(alpha)", QA, 7, "p1", &[14], &[14], 7, &[7], Mandatory),
        row("Q(sqrt(1234577),sqrt(-3))", BIG_BIQUAD, 2, "p1p2", &[273], &[273], 4, &[4, 4], Mandatory),
        row("Q(sqrt(1234577),sqrt(-3))", BIG_BIQUAD, 3, "p1^2", &[273], &[273], 3, &[3], Mandatory),
        row("Q(sqrt(1234577),sqrt(-3))", BIG_BIQUAD, 13, "p1p2", &[273], &[273], 169, &[13, 13], Mandatory),
        row("Q(zeta3,sqrt(303))", ZETA3_303, 2, "p1^2", &[14], &[14], 2, &[2], Mandatory),
        row("Q(zeta3,sqrt(303))", ZETA3_303, 3, "p1^2p2^2", &[14], &[], 9, &[9], Mandatory),
        row("Q(zeta3,sqrt(303))", ZETA3_303, 7, "p1p2p3p4", &[14], &[], 1, &[], Mandatory),
        row("Q(beta)", QB, 2, "p1p2", &[2, 6, 6], &[2, 2, 6], 2, &[2, 2, 2], Stretch),
        row("Q(beta)", QB, 3, "p1p2p3p4", &[2, 6, 6], &[6], 3, &[3], Stretch),
        row("Q(zeta5,sqrt(5029))", ZETA5_5029, 2, "p1p2", &[15, 150], &[3, 150], 4, &[2, 2], Stretch),
        row("Q(zeta5,sqrt(5029))", ZETA5_5029, 3, "p1p2", &[15, 150], &[15, 150], 3, &[3, 3], Stretch),
        row("Q(zeta5,sqrt(5029))", ZETA5_5029, 5, "p1p2", &[15, 150], &[3, 150], 25, &[5, 25], Stretch),
        row("Q(i,sqrt(11),sqrt(-499))", I11_499, 5, "p1p2p3p4p5p6p7p8", &[3, 105], &[3], 25, &[5, 5, 25], Stretch),
        row("Q(i,sqrt(11),gamma)", I11_GAMMA, 2, "p1^2", &[2, 2, 2, 6], &[2, 2, 2, 6], 2, &[2, 2, 2, 2], Stretch),
        row("Q(i,sqrt(11),gamma)", I11_GAMMA, 3, "p1p2", &[2, 2, 2, 6], &[2, 2, 2, 6], 9, &[3, 3], Stretch),
        row(
            "Q(i,sqrt(11),gamma)",
            I11_GAMMA,
            5,
            "p1p2p3p4p5p6p7p8p9p10p11p12",
            &[2, 2, 2, 6],
            &[2],
            5,
            &[5, 5],
            Stretch,
        ),
    ];
    rows[2].coker_theta = Some(&[2]);
    rows[4].wild_rank = Some(3);
    rows
}

/// Renders the decomposition of `(p)` as `p1^e1p2^e2...`, exponents in
/// ascending order and omitted when 1.
pub fn splitting_shape(ctx: &FieldContext, p: u64) -> String {
    let mut es: Vec<u32> = ctx.places(p).iter().map(|pl| pl.e).collect();
    es.sort();
    es.iter()
        .enumerate()
        .map(|(i, &e)| if e == 1 { format!("p{}", i + 1) } else { format!("p{}^{e}", i + 1) })
        .collect()
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).filter(|x| x > &BigInt::from(1)).collect()
}

/// `ℓ`-parts of a list of cyclic orders.
pub fn ell_part(v: &[BigInt], ell: u64) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v
        .iter()
        .filter(|x| *x > &BigInt::from(1))
        .map(|x| crate::arith::int::big_pow(ell, val_big(x, ell)))
        .filter(|x| x > &BigInt::from(1))
        .collect();
    out.sort();
    out
}

/// One comparison of a row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.expected == self.actual
    }
}

/// Compares a result with a row. `Cl'` is compared through its `ℓ`-part,
/// which is the only part entering the logarithmic class group.
pub fn check_row(row: &CorpusRow, ctx: &FieldContext, r: &LogClassResult) -> Vec<Check> {
    let mut out = vec![
        Check { name: "group", expected: render_group(&big(row.expected)), actual: render_group(&r.cyclic) },
        Check { name: "class group", expected: render_group(&big(row.cl)), actual: render_group(&r.class_group) },
        Check {
            name: "Cl' l-part",
            expected: render_group(&ell_part(&big(row.cl_prime), row.ell)),
            actual: render_group(&ell_part(&r.cl_prime, row.ell)),
        },
        Check { name: "splitting", expected: row.splitting.to_string(), actual: splitting_shape(ctx, row.ell) },
        Check { name: "bound", expected: row.bound.to_string(), actual: r.precision.bound.to_string() },
        Check { name: "theta identity", expected: "true".into(), actual: r.theta_consistent.to_string() },
    ];
    if let Some(c) = row.coker_theta {
        out.push(Check { name: "coker theta", expected: render_group(&big(c)), actual: render_group(&r.coker_theta) });
    }
    if let Some(w) = row.wild_rank {
        out.push(Check {
            name: "wild rank",
            expected: w.to_string(),
            actual: r.wild_rank.map_or("n/a".into(), |x| x.to_string()),
        });
    }
    out
}

/// Row filter: comma-separated conjunction of `degree<=N`, `degree=N`,
/// `ell=N`, `tier=mandatory|stretch` and `field~TEXT`.
pub fn parse_filter(spec: &str) -> Result<Vec<Filter>, String> {
    spec.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let num = |s: &str| s.trim().parse::<u64>().map_err(|_| format!("bad number in filter term '{t}'"));
            if let Some(v) = t.strip_prefix("degree<=") {
                Ok(Filter::DegreeAtMost(num(v)? as usize))
            } else if let Some(v) = t.strip_prefix("degree=") {
                Ok(Filter::Degree(num(v)? as usize))
            } else if let Some(v) = t.strip_prefix("ell=") {
                Ok(Filter::Ell(num(v)?))
            } else if let Some(v) = t.strip_prefix("tier=") {
                match v {
                    "mandatory" => Ok(Filter::Tier(Tier::Mandatory)),
                    "stretch" => Ok(Filter::Tier(Tier::Stretch)),
                    _ => Err(format!("unknown tier '{v}'")),
                }
            } else if let Some(v) = t.strip_prefix("field~") {
                Ok(Filter::Field(v.to_string()))
            } else {
                Err(format!("unknown filter term '{t}'"))
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filter {
    DegreeAtMost(usize),
    Degree(usize),
    Ell(u64),
    Tier(Tier),
    Field(String),
}

impl Filter {
    pub fn accepts(&self, row: &CorpusRow) -> bool {
        match self {
            Filter::DegreeAtMost(d) => row.degree() <= *d,
            Filter::Degree(d) => row.degree() == *d,
            Filter::Ell(l) => row.ell == *l,
            Filter::Tier(t) => row.tier == *t,
            Filter::Field(s) => row.field.contains(s.as_str()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::maximal_order;

    #[test]
    fn filters() {
        let f = parse_filter("degree<=2").unwrap();
        let rows: Vec<CorpusRow> = paper_rows().into_iter().filter(|r| f.iter().all(|x| x.accepts(r))).collect();
        assert_eq!(rows.len(), 1);
        assert!(parse_filter("colour=red").is_err());
        assert_eq!(parse_filter("tier=stretch,ell=5").unwrap().len(), 2);
    }

    #[test]
    fn mandatory_splitting_shapes() {
        for r in paper_rows().iter().filter(|r| r.tier == Tier::Mandatory) {
            let ctx = maximal_order(&r.zpoly()).unwrap();
            assert_eq!(splitting_shape(&ctx, r.ell), r.splitting, "{} at {}", r.field, r.ell);
        }
    }
}
