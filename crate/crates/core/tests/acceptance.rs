//! Acceptance criteria 1–10, one line each. Every check is exact
//! (tolerance 0); only wall-time limits carry a budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mockjac::arith::kronecker;
use mockjac::borcherds::enumerate_heegner;
use mockjac::catalog::{check_positivity_phi, ingest_hdata, load_catalog, HData};
use mockjac::mocktheta::{internal_rows, verify_theta_row};
use mockjac::relations::verify_mult_relations;
use mockjac::report::Report;
use mockjac::verify::{self, SERIES_ORDER};
use mockjac::{CycNum, QSeries};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn within(t: Duration, limit_s: u64, what: String) -> Verdict {
    if t.as_secs_f64() <= limit_s as f64 {
        Verdict::Pass(format!("{what}; {:.2}s (limit {limit_s}s)", t.as_secs_f64()))
    } else {
        Verdict::Fail(format!("{what}; {:.2}s exceeds {limit_s}s", t.as_secs_f64()))
    }
}

fn first_fail(rep: &Report) -> String {
    rep.cases
        .iter()
        .find(|c| c.status.is_fail())
        .map_or_else(String::new, |c| format!("{}: {}", c.key, c.status))
}

fn c1() -> Verdict {
    let t = Instant::now();
    let rep = verify::fricke(SERIES_ORDER);
    if rep.passes() != 39 {
        return Verdict::Fail(format!("{}/39 exact; {}", rep.passes(), first_fail(&rep)));
    }
    within(t.elapsed(), 10, format!("39/39 exact to q^{SERIES_ORDER}"))
}

fn shadow() -> (Report, Duration) {
    let t = Instant::now();
    let rep = verify::shadow_lift(verify::LIFT_ORDER);
    (rep, t.elapsed())
}

fn c2(rep: &Report, t: Duration) -> Verdict {
    let lifts: Vec<_> = rep
        .cases
        .iter()
        .filter(|c| !c.key.ends_with("K-invariance") && c.key != "shared constant")
        .collect();
    let ok = lifts.iter().filter(|c| c.status.is_pass()).count();
    let shared = rep.cases.iter().find(|c| c.key == "shared constant").expect("summary case");
    let c = lifts.first().map_or("", |c| c.detail.as_str());
    if ok != 39 || !shared.status.is_pass() {
        return Verdict::Fail(format!("{ok}/39, shared constant {}; {}", shared.status, first_fail(rep)));
    }
    within(t, 60, format!("39/39 exact for 1 <= n < {}, observed {c}", verify::LIFT_ORDER))
}

fn c3(rep: &Report) -> Verdict {
    let inv: Vec<_> = rep.cases.iter().filter(|c| c.key.ends_with("K-invariance")).collect();
    let ok = inv.iter().filter(|c| c.status.is_pass()).count();
    if ok == 39 {
        Verdict::Pass(format!("39/39 fixed by every a in K to D <= {}", verify::SHADOW_DEPTH))
    } else {
        Verdict::Fail(format!("{ok}/39; {}", first_fail(rep)))
    }
}

fn c4() -> Verdict {
    let rep = verify::fixtures(None);
    let n = load_catalog().iter().filter(|l| l.fixture.is_some()).count();
    if rep.ok() && rep.passes() == 3 * n {
        Verdict::Pass(format!("{n} tables: C(1,1) = -2, K-invariance, polar support"))
    } else {
        Verdict::Fail(first_fail(&rep))
    }
}

fn c5() -> Verdict {
    let rows = internal_rows();
    let mut min_compared = usize::MAX;
    for row in &rows {
        let t = mockjac::catalog::lookup(row.source)
            .ok()
            .and_then(|l| l.fixture.as_ref())
            .expect("printed source");
        match verify_theta_row(row, t) {
            Ok(o) if o.mismatch.is_none() && o.agreed_below.is_some() => {
                min_compared = min_compared.min(o.compared)
            }
            Ok(o) => return Verdict::Fail(format!("{}: {:?}", row.name, o.mismatch)),
            Err(e) => return Verdict::Fail(format!("{}: {e}", row.name)),
        }
    }
    Verdict::Pass(format!("{}/{} rows exact, at least {min_compared} coefficients each", rows.len(), rows.len()))
}

fn c6() -> Verdict {
    let t = Instant::now();
    let mut rep = Report::default();
    for r in [
        mockjac::mocktheta::verify_watson(SERIES_ORDER),
        mockjac::mocktheta::verify_andrews_hickerson(SERIES_ORDER),
    ] {
        match r {
            Ok(x) => rep.extend(x),
            Err(e) => return Verdict::Fail(e.to_string()),
        }
    }
    if !rep.ok() || rep.passes() != rep.cases.len() {
        return Verdict::Fail(first_fail(&rep));
    }
    within(t.elapsed(), 10, format!("{} identities exact to q^{SERIES_ORDER}", rep.cases.len()))
}

fn c7() -> Verdict {
    let rep = verify::positivity(None);
    let holds = rep
        .cases
        .iter()
        .filter(|c| c.key.ends_with("sigma") && c.detail.starts_with("holds"))
        .count();
    let phi_fail = load_catalog()
        .iter()
        .filter_map(|l| l.fixture.as_ref().map(|t| (l, t)))
        .filter(|(l, _)| !l.in_l1_plus())
        .all(|(_, t)| !check_positivity_phi(t));
    if rep.ok() && holds == 23 && phi_fail {
        Verdict::Pass("sigma positive on 23, not on 16; phi fails on every printed table".into())
    } else {
        Verdict::Fail(format!("sigma holds on {holds}; {}", first_fail(&rep)))
    }
}

fn c8() -> Verdict {
    let rep = verify::borcherds();
    let ok = rep.passes();
    let details: Vec<String> = rep
        .cases
        .iter()
        .filter(|c| c.status.is_pass())
        .map(|c| format!("{} [{}]", c.key, c.detail))
        .collect();
    if ok >= 3 && rep.ok() {
        Verdict::Pass(format!("{ok} cases rational in T with zero residual: {}", details.join("; ")))
    } else {
        Verdict::Fail(format!("{ok} cases; {}", first_fail(&rep)))
    }
}

fn level_one_classes(d: i64) -> usize {
    let mut n = 0;
    for a in 1..=(-d) {
        for b in -a + 1..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if [a, b.abs(), c].into_iter().fold(0, num_integer::gcd) == 1 {
                n += 1;
            }
        }
    }
    n
}

fn c9() -> Verdict {
    // Kronecker against the square-mod-4p rule
    for d in -100i64..=100 {
        if d == 0 || !matches!(d.rem_euclid(4), 0 | 1) {
            continue;
        }
        for p in (2i64..=100).filter(|&p| (2..p).all(|q| p % q != 0)) {
            let rule = if d % p == 0 {
                0
            } else if (0..4 * p).any(|x| (x * x - d).rem_euclid(4 * p) == 0) {
                1
            } else {
                -1
            };
            if kronecker(d, p) != Ok(rule) {
                return Verdict::Fail(format!("({d}/{p})"));
            }
        }
    }
    // Heegner classes at level m against level 1
    let mut runner = TestRunner::deterministic();
    let mut pairs = 0;
    let mut attempts = 0;
    while pairs < 10 {
        attempts += 1;
        if attempts > 10_000 {
            return Verdict::Fail("could not draw 10 coprime (m, D) pairs".into());
        }
        let (m, k) = proptest::strategy::ValueTree::current(
            &(2u64..40, 1i64..120).new_tree(&mut runner).expect("strategy"),
        );
        let d = -(4 * k + 3);
        let sqfree = (2..).take_while(|p| p * p <= -d).all(|p| d % (p * p) != 0);
        if !sqfree || num_integer::gcd(d, 4 * m as i64) != 1 {
            continue;
        }
        let Some(r) = (0..2 * m as i64).find(|r| (d - r * r).rem_euclid(4 * m as i64) == 0) else {
            continue;
        };
        if enumerate_heegner(m, d, r).len() != level_one_classes(d) {
            return Verdict::Fail(format!("class count m = {m}, D = {d}"));
        }
        pairs += 1;
    }
    // series ring axioms on random sparse operands
    let coeff = prop_oneof![
        (-5i64..=5).prop_map(CycNum::from_int),
        (0i64..12).prop_map(|k| CycNum::root_of_unity(k, 12)),
    ];
    let series = (
        prop::sample::select(vec![1i64, 2, 3]),
        prop::collection::vec((-3i64..20, coeff), 0..6),
        prop::option::of(3i64..25),
    )
        .prop_map(|(d, t, o)| QSeries::from_terms(d, t, o));
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let res = runner.run(&(series.clone(), series.clone(), series), |(a, b, c)| {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)).first_mismatch(&a.mul(&b).add(&a.mul(&c))), None);
        Ok(())
    });
    match res {
        Ok(()) => Verdict::Pass(
            "Kronecker |D|, p <= 100; 10 Heegner (m, D) pairs; ring axioms on 1000 triples".into(),
        ),
        Err(e) => Verdict::Fail(format!("ring axioms: {e}")),
    }
}

fn c10(h: Option<&HData>) -> Verdict {
    let Some(h) = h else {
        return Verdict::Skip("no ingested data (set MOCKJAC_DATA)".into());
    };
    let mut rep = verify::fixtures(Some(h));
    rep.extend(verify_mult_relations(Some(h)));
    rep.extend(verify::positivity(Some(h)));
    if rep.ok() {
        Verdict::Pass(format!("{} passed, {} skipped", rep.passes(), rep.skips()))
    } else {
        Verdict::Fail(first_fail(&rep))
    }
}

fn main() -> ExitCode {
    let data = std::env::var_os("MOCKJAC_DATA").map(|p| ingest_hdata(std::path::Path::new(&p)));
    let data = match data {
        Some(Err(e)) => {
            println!("criterion 10: FAIL ingestion: {e}");
            return ExitCode::FAILURE;
        }
        Some(Ok(h)) => Some(h),
        None => None,
    };
    let (shadow_rep, shadow_t) = shadow();
    let verdicts = [
        c1(),
        c2(&shadow_rep, shadow_t),
        c3(&shadow_rep),
        c4(),
        c5(),
        c6(),
        c7(),
        c8(),
        c9(),
        c10(data.as_ref()),
    ];
    let mut failed = false;
    for (i, v) in verdicts.iter().enumerate() {
        match v {
            Verdict::Pass(s) => println!("criterion {}: PASS {s}", i + 1),
            Verdict::Skip(s) => println!("criterion {}: SKIP {s}", i + 1),
            Verdict::Fail(s) => {
                failed = true;
                println!("criterion {}: FAIL {s}", i + 1)
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
