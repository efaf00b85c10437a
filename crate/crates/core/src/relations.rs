//! Multiplicative relations expressing sums of theta-coefficients of a
//! lambency through twisted series `H^(ℓ')_{g,r}` of a smaller lambency.

use crate::catalog::{lookup, HData};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::jacobi::CoeffTable;
use crate::report::{Case, Report, Status};
use crate::series::{fmt_exp, Exp, QSeries};

/// `ζ · Σ_{n<count} H^(ℓ)_{mult·r + step·n}(tτ + s) = factor · H^(ℓ')_{g,r}(τ + s')`
/// for each `r` in `residues`. A `zeta` of `None` marks a printed cyclotomic
/// prefactor that is resolved from the data instead.
#[derive(Clone, Debug)]
pub struct MultRelation {
    pub lambency: &'static str,
    pub target: &'static str,
    pub class: &'static str,
    pub residues: Vec<i64>,
    pub mult: i64,
    pub step: i64,
    pub count: i64,
    pub rescale: Exp,
    pub shift: Exp,
    pub factor: i64,
    pub target_shift: Exp,
    pub zeta: Option<Exp>,
    /// The printed prefactor, kept for reporting when `zeta` is resolved.
    pub printed: &'static str,
}

impl MultRelation {
    pub fn key(&self) -> String {
        format!("{} / {} {}", self.lambency, self.target, self.class)
    }
}

#[allow(clippy::too_many_arguments)]
fn sum_rel(
    lambency: &'static str,
    target: &'static str,
    class: &'static str,
    residues: &[i64],
    step: i64,
    count: i64,
    t: i64,
    factor: i64,
) -> MultRelation {
    MultRelation {
        lambency,
        target,
        class,
        residues: residues.to_vec(),
        mult: 1,
        step,
        count,
        rescale: Exp::from_integer(t),
        shift: Exp::from_integer(0),
        factor,
        target_shift: Exp::from_integer(0),
        zeta: Some(Exp::from_integer(0)),
        printed: "",
    }
}

/// All relation rows, in table order.
pub fn mult_relations() -> Vec<MultRelation> {
    let half = Exp::new(1, 2);
    vec![
        sum_rel("15+5", "3", "5A", &[1, 2], 6, 5, 5, 2),
        sum_rel("20+4", "5", "2C", &[1, 3], 10, 2, 4, 1),
        MultRelation {
            mult: 2,
            count: 1,
            target_shift: half,
            zeta: None,
            printed: "ex(r^2/160)",
            ..sum_rel("20+4", "5", "2C", &[2, 4], 0, 1, 1, 1)
        },
        sum_rel("21+3", "7", "3AB", &[1, 2, 3, 4, 5, 6], 14, 3, 3, 2),
        sum_rel("24+8", "3", "8CD", &[1, 2], 12, 4, 8, 1),
        sum_rel("28+7", "4", "7AB", &[1, 2, 3], 8, 7, 7, 2),
        sum_rel("33+11", "3", "11AB", &[1, 2], 6, 11, 11, 2),
        sum_rel("36+4", "3", "6C", &[1], 12, 6, 12, 1),
        MultRelation {
            shift: Exp::new(3, 2),
            zeta: None,
            printed: "ex(1/6)",
            ..sum_rel("36+4", "3", "6C", &[2], 12, 3, 3, 1)
        },
        sum_rel("36+4", "9", "2B", &[3], 18, 4, 4, 1),
        MultRelation {
            mult: 2,
            target_shift: half,
            ..sum_rel("36+4", "9", "2B", &[6], 0, 1, 1, -1)
        },
        sum_rel(
            "60+12,15,20",
            "30+6,10,15",
            "2A",
            &(1..30).collect::<Vec<_>>(),
            60,
            2,
            2,
            1,
        ),
    ]
}

fn lhs_series(rel: &MultRelation, t: &CoeffTable, r: i64) -> Result<QSeries> {
    let mut acc = QSeries::zero();
    for n in 0..rel.count {
        acc = acc.add(&t.theta_coefficient(rel.mult * r + rel.step * n)?);
    }
    Ok(acc.half_shift(rel.shift).rescale(rel.rescale))
}

/// Finds `k/n` with `c = ex(k/n)`, if `c` is a root of unity.
pub fn root_of_unity_exponent(c: &CycNum) -> Option<Exp> {
    let n = 2 * c.conductor() as i64;
    (0..n)
        .find(|&k| CycNum::root_of_unity(k, n) == *c)
        .map(|k| Exp::new(k, n))
}

/// Checks one relation for every residue against `rhs`, the ingested
/// twisted table of the target lambency.
pub fn verify_mult_relation(rel: &MultRelation, lhs: &CoeffTable, rhs: &CoeffTable) -> Vec<Case> {
    let suite = "mult-relations";
    rel.residues
        .iter()
        .map(|&r| {
            let key = format!("{} r={r}", rel.key());
            let sides = lhs_series(rel, lhs, r).and_then(|l| {
                let g = rhs
                    .theta_coefficient(r)?
                    .half_shift(rel.target_shift)
                    .scale(&CycNum::from_int(rel.factor));
                Ok((l, g))
            });
            let (l, g) = match sides {
                Ok(x) => x,
                Err(e) => return Case::new(suite, key, Status::skipped(e.to_string())),
            };
            let (zeta, detail) = match rel.zeta {
                _ if l.is_zero() || g.is_zero() => (CycNum::one(), String::new()),
                Some(z) => (CycNum::root_of_unity(*z.numer(), *z.denom()), String::new()),
                None => match (l.leading(), g.leading()) {
                    (Some((x, a)), Some((y, b))) if x == y => {
                        let lam = b * &a.inv();
                        let label = root_of_unity_exponent(&lam)
                            .map_or(lam.to_string(), |e| format!("ex({})", fmt_exp(e)));
                        (lam, format!("prefactor resolved to {label} (printed {})", rel.printed))
                    }
                    _ => {
                        return Case::new(
                            suite,
                            key,
                            Status::fail("leading term", "aligned supports", "misaligned"),
                        )
                    }
                },
            };
            let l = l.scale(&zeta);
            let status = match l.first_mismatch(&g) {
                None => Status::pass(format!(
                    "q^{}",
                    l.common_order(&g).map_or("inf".into(), fmt_exp)
                )),
                Some(x) => Status::fail(
                    format!("q^{}", fmt_exp(x)),
                    g.coeff(x).to_string(),
                    l.coeff(x).to_string(),
                ),
            };
            Case::new(suite, key, status).with_detail(detail)
        })
        .collect()
}

/// Runs every relation whose twisted series is present in `h`; the rest
/// are reported skipped.
pub fn verify_mult_relations(h: Option<&HData>) -> Report {
    let mut rep = Report::default();
    for rel in mult_relations() {
        let lhs = lookup(rel.lambency)
            .ok()
            .and_then(|l| l.fixture.as_ref())
            .expect("relation sources carry fixtures");
        match h.and_then(|h| h.get(rel.target, rel.class)) {
            Some(rhs) => rep.cases.extend(verify_mult_relation(&rel, lhs, rhs)),
            None => rep.push(Case::new(
                "mult-relations",
                rel.key(),
                Status::skipped(
                    Error::MissingSource(format!("{} class {}", rel.target, rel.class)).to_string(),
                ),
            )),
        }
    }
    rep
}
