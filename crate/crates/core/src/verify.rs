//! The named verification suites driven by the command line.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::borcherds::{borcherds_case, FIXTURE_CASES};
use crate::catalog::{
    averaging_source, check_positivity_phi, check_positivity_sigma, construct_averaged,
    load_catalog, lookup, HData, Lambency,
};
use crate::cyclotomic::CycNum;
use crate::error::Error;
use crate::eta::{eta_dlog, eta_expand, verify_fricke_constant};
use crate::jacobi::{ez_apply, shadow_kernel, sz_lift, CoeffTable};
use crate::mocktheta::{
    averaged_row, internal_rows, theta_rows, verify_andrews_hickerson, verify_theta_row,
    verify_watson, ThetaRow,
};
use crate::relations::verify_mult_relations;
use crate::report::{Case, Report, Status};
use crate::series::{fmt_exp, Exp};

/// Default order for series identities.
pub const SERIES_ORDER: i64 = 100;
/// Default depth for shadow-lift comparisons (`n < 200`).
pub const LIFT_ORDER: i64 = 200;
/// Discriminant depth for the `K`-invariance of shadows.
pub const SHADOW_DEPTH: i64 = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Fricke,
    ShadowLift,
    Fixtures,
    MockTheta,
    Positivity,
    MultRelations,
    Borcherds,
    All,
}

impl Suite {
    pub const NAMED: [Suite; 7] = [
        Suite::Fricke,
        Suite::ShadowLift,
        Suite::Fixtures,
        Suite::MockTheta,
        Suite::Positivity,
        Suite::MultRelations,
        Suite::Borcherds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fricke => "fricke",
            Suite::ShadowLift => "shadow-lift",
            Suite::Fixtures => "fixtures",
            Suite::MockTheta => "mocktheta",
            Suite::Positivity => "positivity",
            Suite::MultRelations => "mult-relations",
            Suite::Borcherds => "borcherds",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::NAMED
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s}")))
    }
}

/// Runs a suite. `order` overrides the suite's default depth.
pub fn run_suite(suite: Suite, order: Option<i64>, h: Option<&HData>) -> Report {
    match suite {
        Suite::Fricke => fricke(order.unwrap_or(SERIES_ORDER)),
        Suite::ShadowLift => shadow_lift(order.unwrap_or(LIFT_ORDER)),
        Suite::Fixtures => fixtures(h),
        Suite::MockTheta => mocktheta(order.unwrap_or(SERIES_ORDER), h),
        Suite::Positivity => positivity(h),
        Suite::MultRelations => verify_mult_relations(h),
        Suite::Borcherds => borcherds(),
        Suite::All => {
            let mut rep = Report::default();
            for s in Suite::NAMED {
                rep.extend(run_suite(s, order, h));
            }
            rep
        }
    }
}

fn per_lambency<F>(f: F) -> Report
where
    F: Fn(&'static Lambency) -> Vec<Case> + Sync + Send,
{
    Report {
        cases: load_catalog().par_iter().flat_map_iter(f).collect(),
    }
}

fn error_case(suite: &str, key: impl Into<String>, e: &Error) -> Case {
    Case::new(suite, key, Status::fail("computation", "success", e.to_string()))
}

/// `T = q⁻¹ + O(1)` and `T·(T|W_m)` constant, per lambency.
pub fn fricke(order: i64) -> Report {
    let suite = "fricke";
    per_lambency(|l| {
        let t = eta_expand(&l.eta, order);
        let lead = t.leading();
        if lead.as_ref().map(|(x, c)| (*x, (*c).clone()))
            != Some((Exp::from_integer(-1), CycNum::one()))
        {
            let got = lead.map_or("0".into(), |(x, c)| format!("{c} q^{}", fmt_exp(x)));
            return vec![Case::new(suite, &l.symbol, Status::fail("leading term", "q^-1", got))];
        }
        let dlog0 = eta_dlog(&l.eta, 2).coeff_int(0);
        if dlog0 != -CycNum::one() {
            return vec![Case::new(
                suite,
                &l.symbol,
                Status::fail("dlog constant term", "-1", dlog0.to_string()),
            )];
        }
        vec![match verify_fricke_constant(&l.eta, l.m, order) {
            Ok(c) => Case::new(suite, &l.symbol, Status::pass(format!("q^{order}")))
                .with_detail(format!("T|W_m constant {c}")),
            Err(e) => error_case(suite, &l.symbol, &e),
        }]
    })
}

/// Shadow–lift identity `S_{1,1}(σ̂) = c · dlog T` for `1 ≤ n < order`,
/// one shared `c`, and `K`-invariance of `σ̂`.
pub fn shadow_lift(order: i64) -> Report {
    let suite = "shadow-lift";
    let mut rep = per_lambency(|l| {
        let depth = (order - 1).max(SHADOW_DEPTH.isqrt() + 1).pow(2);
        let kernel = match shadow_kernel(&l.eta, l.m, depth) {
            Ok(k) => k,
            Err(e) => return vec![error_case(suite, &l.symbol, &e)],
        };
        let lift_case = match sz_lift(&kernel.table, 1, 1, 2, order) {
            Err(e) => error_case(suite, &l.symbol, &e),
            Ok(lift) => {
                let dlog = eta_dlog(&l.eta, order);
                let c = (1..order).find_map(|n| {
                    let d = dlog.coeff_int(n);
                    (!d.is_zero()).then(|| &lift.coeff_int(n) * &d.inv())
                });
                match c {
                    None => Case::new(suite, &l.symbol, Status::fail("q^1", "nonzero dlog", "0")),
                    Some(c) => {
                        let bad = (1..order)
                            .find(|&n| lift.coeff_int(n) != &dlog.coeff_int(n) * &c);
                        match bad {
                            None => Case::new(suite, &l.symbol, Status::pass(format!("q^{order}")))
                                .with_detail(format!("c = {c}")),
                            Some(n) => Case::new(
                                suite,
                                &l.symbol,
                                Status::fail(
                                    format!("q^{n}"),
                                    (&dlog.coeff_int(n) * &c).to_string(),
                                    lift.coeff_int(n).to_string(),
                                ),
                            ),
                        }
                    }
                }
            }
        };
        let key = format!("{} K-invariance", l.symbol);
        let mut small = CoeffTable::new(l.m, kernel.table.parity());
        let inv_case = (|| {
            for (d, r, v) in kernel.table.entries() {
                if d <= SHADOW_DEPTH {
                    small.set(d, r, v)?;
                }
            }
            for r in 0..=l.m as i64 {
                small.set_known(r, crate::jacobi::Span::new(None, Some(SHADOW_DEPTH)));
            }
            for &a in &l.k {
                let image = ez_apply(&small, a)?;
                if let Some((d, r)) = image.first_disagreement(&small) {
                    return Ok(Case::new(
                        suite,
                        &key,
                        Status::fail(
                            format!("a = {a}, C({d}, {r})"),
                            small.get(d, r)?.to_string(),
                            image.get(d, r)?.to_string(),
                        ),
                    ));
                }
            }
            Ok(Case::new(suite, &key, Status::pass(format!("D <= {SHADOW_DEPTH}"))))
        })()
        .unwrap_or_else(|e: Error| error_case(suite, &key, &e));
        vec![lift_case, inv_case]
    });
    let constants: std::collections::BTreeSet<&str> = rep
        .cases
        .iter()
        .filter_map(|c| c.detail.strip_prefix("c = "))
        .collect();
    let shared = match constants.len() {
        1 => Status::pass("all lambencies"),
        _ => Status::fail("lift constants", "one value", constants.into_iter().collect::<Vec<_>>().join(", ")),
    };
    rep.push(Case::new(suite, "shared constant", shared));
    rep
}

fn fixture_checks(l: &Lambency, t: &CoeffTable) -> Vec<Case> {
    let suite = "fixtures";
    let mut out = Vec::new();
    let c11 = t.get(1, 1).map(|c| c.to_string()).unwrap_or_else(|e| e.to_string());
    out.push(Case::new(
        suite,
        format!("{} C(1,1)", l.symbol),
        if c11 == "-2" { Status::pass("D = 1") } else { Status::fail("C(1,1)", "-2", c11) },
    ));
    let key = format!("{} K-invariance", l.symbol);
    let mut inv = Status::pass(format!("n <= {}", l.fixture_depth.unwrap_or(0)));
    for &a in &l.k {
        match ez_apply(t, a) {
            Ok(image) => {
                if let Some((d, r)) = image.first_disagreement(t) {
                    inv = Status::fail(
                        format!("a = {a}, C({d}, {r})"),
                        t.get(d, r).map(|c| c.to_string()).unwrap_or_default(),
                        image.get(d, r).map(|c| c.to_string()).unwrap_or_default(),
                    );
                    break;
                }
            }
            Err(e) => {
                inv = Status::fail("computation", "success", e.to_string());
                break;
            }
        }
    }
    out.push(Case::new(suite, key, inv));
    let two_m = 2 * l.m as i64;
    let bad = (0..two_m).find(|&r| {
        t.is_admissible(1, r)
            && t.get(1, r).is_ok_and(|c| !c.is_zero())
            && !(l.k.contains(&r) || l.k.contains(&(two_m - r)))
    });
    out.push(Case::new(
        suite,
        format!("{} support", l.symbol),
        match bad {
            None => Status::pass("D = 1"),
            Some(r) => Status::fail(format!("C(1, {r})"), "0", t.get(1, r).unwrap().to_string()),
        },
    ));
    out
}

/// Printed tables: `C(1,1) = -2`, `K`-invariance, polar support; and, with
/// data, the averaged constructions against the printed tables.
pub fn fixtures(h: Option<&HData>) -> Report {
    per_lambency(|l| {
        let Some(t) = &l.fixture else { return Vec::new() };
        let mut out = fixture_checks(l, t);
        if averaging_source(&l.symbol).is_some() {
            let key = format!("{} averaging", l.symbol);
            let status = match h.map(|h| construct_averaged(&l.symbol, h)) {
                None => Status::skipped("no ingested data"),
                Some(Err(e @ Error::MissingSource(_))) => Status::skipped(e.to_string()),
                Some(Err(e)) => Status::fail("computation", "success", e.to_string()),
                Some(Ok(built)) => match restricted_disagreement(&built, t) {
                    None => Status::pass("printed depth"),
                    Some((d, r)) => Status::fail(
                        format!("C({d}, {r})"),
                        t.get(d, r).map(|c| c.to_string()).unwrap_or_default(),
                        built.get(d, r).map(|c| c.to_string()).unwrap_or_default(),
                    ),
                },
            };
            out.push(Case::new("fixtures", key, status));
        }
        out
    })
}

/// First entry known on both sides where the tables differ.
fn restricted_disagreement(a: &CoeffTable, b: &CoeffTable) -> Option<(i64, i64)> {
    let mut keys: Vec<(i64, i64)> = a
        .entries()
        .into_iter()
        .chain(b.entries())
        .map(|(d, r, _)| (d, r))
        .collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find(|&(d, r)| match (a.get(d, r), b.get(d, r)) {
        (Ok(x), Ok(y)) => x != y,
        _ => false,
    })
}

fn row_case(key: String, row: &ThetaRow, t: &CoeffTable) -> Case {
    let suite = "mocktheta";
    match verify_theta_row(row, t) {
        Err(e) => error_case(suite, key, &e),
        Ok(o) => {
            let detail = format!("offset {}, {} coefficients", fmt_exp(o.offset), o.compared);
            match (o.agreed_below, o.mismatch) {
                (Some(w), _) => Case::new(suite, key, Status::pass(format!("q^{}", fmt_exp(w)))),
                (_, Some((x, exp, got))) => {
                    Case::new(suite, key, Status::fail(format!("q^{}", fmt_exp(x)), exp, got))
                }
                _ => Case::new(suite, key, Status::fail("window", "agreement", "none")),
            }
            .with_detail(detail)
        }
    }
}

/// Mock theta rows against printed or ingested tables, and the two
/// self-contained identities at `order`.
pub fn mocktheta(order: i64, h: Option<&HData>) -> Report {
    let internal: Vec<&str> = internal_rows().iter().map(|r| r.name).collect();
    let rows = theta_rows();
    let mut cases: Vec<Case> = rows
        .par_iter()
        .flat_map_iter(|row| {
            let key = format!("{} / {}", row.name, row.source);
            let mut out = Vec::new();
            let fixture = lookup(row.source).ok().and_then(|l| l.fixture.as_ref());
            match (fixture, h.and_then(|h| h.get(row.source, "1A"))) {
                (Some(t), _) | (None, Some(t)) => out.push(row_case(key, row, t)),
                (None, None) => out.push(Case::new(
                    "mocktheta",
                    key,
                    Status::skipped(format!("needs ingested {} data", row.source)),
                )),
            }
            if let Some(av) = averaged_row(row) {
                let t = lookup(av.source).ok().and_then(|l| l.fixture.as_ref()).expect("printed");
                out.push(row_case(format!("{} / {} (averaged)", av.name, av.source), &av, t));
            }
            out
        })
        .collect();
    debug_assert!(internal.iter().all(|n| rows.iter().any(|r| r.name == *n)));
    for (name, r) in [
        ("watson", verify_watson(order)),
        ("andrews-hickerson", verify_andrews_hickerson(order)),
    ] {
        match r {
            Ok(rep) => cases.extend(rep.cases.into_iter().map(|mut c| {
                c.key = format!("{} {}", c.suite, c.key);
                c.suite = "mocktheta".into();
                c
            })),
            Err(e) => cases.push(error_case("mocktheta", name, &e)),
        }
    }
    Report { cases }
}

/// Sign patterns: `σ̂` positivity exactly on lambencies with root systems,
/// `φ` positivity failing on the other printed tables and, with data,
/// holding on ingested root-system tables.
pub fn positivity(h: Option<&HData>) -> Report {
    let suite = "positivity";
    per_lambency(|l| {
        let mut out = Vec::new();
        let sigma = check_positivity_sigma(l);
        let expect = l.in_l1_plus();
        let label = |b: bool| if b { "holds" } else { "fails" };
        out.push(
            Case::new(
                suite,
                format!("{} sigma", l.symbol),
                if sigma == expect {
                    Status::pass("0 < D < m^2")
                } else {
                    Status::fail("sign pattern", label(expect), label(sigma))
                },
            )
            .with_detail(format!("{} as expected", label(sigma))),
        );
        if let Some(t) = &l.fixture {
            let phi = check_positivity_phi(t);
            out.push(Case::new(
                suite,
                format!("{} phi", l.symbol),
                if phi == expect {
                    Status::pass("printed depth")
                } else {
                    Status::fail("sign pattern", label(expect), label(phi))
                },
            ));
        } else if expect {
            let key = format!("{} phi", l.symbol);
            out.push(match h.and_then(|h| h.get(&l.symbol, "1A")) {
                None => Case::new(suite, key, Status::skipped("no ingested data")),
                Some(t) if check_positivity_phi(t) => {
                    Case::new(suite, key, Status::pass("ingested depth"))
                }
                Some(_) => Case::new(suite, key, Status::fail("sign pattern", "holds", "fails")),
            });
        }
        out
    })
}

/// Rationality of `Ψ_{D,r}` in `T` for the printed-table cases.
pub fn borcherds() -> Report {
    let suite = "borcherds";
    Report {
        cases: FIXTURE_CASES
            .par_iter()
            .map(|&(sym, d, r)| {
                let key = format!("{sym} D={d} r={r}");
                let l = lookup(sym).expect("catalog symbol");
                let t = l.fixture.as_ref().expect("printed table");
                match borcherds_case(l, t, d, r, None) {
                    Ok(c) => Case::new(suite, key, Status::pass(format!("q^{}", c.window)))
                        .with_detail(format!(
                            "degree {} (bound {}), surplus {}, field {}",
                            c.fit.degree, c.degree_bound, c.fit.surplus, c.fit.field
                        )),
                    Err(e) => error_case(suite, key, &e),
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::NAMED.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fricke_suite() {
        let rep = fricke(30);
        assert_eq!((rep.passes(), rep.cases.len()), (39, 39));
    }

    #[test]
    fn fixtures_suite() {
        let rep = fixtures(None);
        assert!(rep.ok(), "{}", rep.render_human());
        assert_eq!(rep.passes(), 48);
        assert_eq!(rep.skips(), 5);
    }

    #[test]
    fn positivity_suite() {
        let rep = positivity(None);
        assert!(rep.ok(), "{}", rep.render_human());
        let holds = rep.cases.iter().filter(|c| c.key.ends_with("sigma") && c.detail.starts_with("holds")).count();
        assert_eq!(holds, 23);
    }

    #[test]
    fn mocktheta_suite() {
        let rep = mocktheta(40, None);
        assert!(rep.ok(), "{}", rep.render_human());
        for n in internal_rows() {
            assert!(rep.cases.iter().any(|c| c.key.starts_with(n.name) && c.status.is_pass()));
        }
        assert!(rep.skips() > 0);
    }

    #[test]
    fn shadow_suite_small() {
        let rep = shadow_lift(20);
        assert!(rep.ok(), "{}", rep.render_human());
        assert!(rep.cases.iter().any(|c| c.detail == "c = -2"));
    }
}
