//! Eulerian series for the classical mock theta functions and their
//! expressions through theta-coefficients of optimal mock Jacobi forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::catalog::{averaging_source, load_catalog};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::jacobi::{om_group, CoeffTable};
use crate::report::{Case, Report, Status};
use crate::series::{fmt_exp, Exp, QSeries};

/// `(a; x)_n = Π_{k<n} (1 - a x^k)` for monomials `a = c·q^α`, `x = q^β`;
/// `n = None` is the infinite product, which needs `β > 0`.
pub fn pochhammer(c: &CycNum, alpha: Exp, beta: Exp, n: Option<usize>, order: i64) -> Result<QSeries> {
    let ord = Exp::from_integer(order);
    let mut acc = QSeries::one().truncate(ord);
    let mut k = 0usize;
    loop {
        if n.is_some_and(|n| k >= n) {
            break;
        }
        let e = alpha + beta * Exp::from_integer(k as i64);
        if n.is_none() {
            if beta <= Exp::zero() {
                return Err(Error::Divergent);
            }
            if e >= ord {
                break;
            }
        }
        acc = acc.mul_binomial(c, e).truncate(ord);
        k += 1;
    }
    Ok(acc)
}

/// `(c·q^{a0 + a1 n}; q^b)_{l0 + l1 n}` raised to `pow`.
#[derive(Clone, Copy, Debug)]
struct Poch {
    c: i64,
    a0: i64,
    a1: i64,
    b: i64,
    l0: i64,
    l1: i64,
    pow: u32,
}

const fn p(c: i64, a0: i64, b: i64, l0: i64, l1: i64) -> Poch {
    Poch { c, a0, a1: 0, b, l0, l1, pow: 1 }
}

const fn p2(c: i64, a0: i64, b: i64, l0: i64, l1: i64) -> Poch {
    Poch { c, a0, a1: 0, b, l0, l1, pow: 2 }
}

/// `(q^{n+1}; q)_{l0 + n}`.
const fn pn(l0: i64) -> Poch {
    Poch { c: 1, a0: 1, a1: 1, b: 1, l0, l1: 1, pow: 1 }
}

/// `const + coef · Σ_n (±1)^n q^{(e2 n² + e1 n + e0)/ediv} · num / den`.
struct Eulerian {
    name: &'static str,
    alternating: bool,
    coef: i64,
    constant: i64,
    e: [i64; 4],
    num: &'static [Poch],
    den: &'static [Poch],
}

const SQ: [i64; 4] = [1, 0, 0, 1];
const SQ1: [i64; 4] = [1, 2, 1, 1];
const PRONIC: [i64; 4] = [1, 1, 0, 1];
const TRI: [i64; 4] = [1, 1, 0, 2];
const TRI1: [i64; 4] = [1, 3, 2, 2];
const LIN: [i64; 4] = [0, 1, 0, 1];

const fn eul(name: &'static str, e: [i64; 4], num: &'static [Poch], den: &'static [Poch]) -> Eulerian {
    Eulerian { name, alternating: false, coef: 1, constant: 0, e, num, den }
}

const fn alt(name: &'static str, e: [i64; 4], num: &'static [Poch], den: &'static [Poch]) -> Eulerian {
    Eulerian { name, alternating: true, coef: 1, constant: 0, e, num, den }
}

static EULERIAN: &[Eulerian] = &[
    eul("3:psi", SQ1, &[], &[p(1, 1, 2, 1, 1)]),
    eul("3:nu", PRONIC, &[], &[p(-1, 1, 2, 1, 1)]),
    eul("3:f", SQ, &[], &[p2(-1, 1, 1, 0, 1)]),
    eul("3:phi", SQ, &[], &[p(-1, 2, 2, 0, 1)]),
    eul("3:chi", SQ, &[p(-1, 1, 1, 0, 1)], &[p(-1, 3, 3, 0, 1)]),
    eul("3:omega", [2, 2, 0, 1], &[], &[p2(1, 1, 2, 1, 1)]),
    eul("3:rho", [2, 2, 0, 1], &[p(1, 1, 2, 1, 1)], &[p(1, 3, 6, 1, 1)]),
    eul("5:psi0", TRI1, &[p(-1, 1, 1, 0, 1)], &[]),
    eul("5:psi1", TRI, &[p(-1, 1, 1, 0, 1)], &[]),
    eul("5:chi0", LIN, &[], &[pn(0)]),
    eul("5:chi1", LIN, &[], &[pn(1)]),
    eul("5:phi0", SQ, &[p(-1, 1, 2, 0, 1)], &[]),
    eul("5:phi1", SQ1, &[p(-1, 1, 2, 0, 1)], &[]),
    eul("5:F0", [2, 0, 0, 1], &[], &[p(1, 1, 2, 0, 1)]),
    eul("5:F1", [2, 2, 0, 1], &[], &[p(1, 1, 2, 1, 1)]),
    eul("5:f0", SQ, &[], &[p(-1, 1, 1, 0, 1)]),
    eul("5:f1", PRONIC, &[], &[p(-1, 1, 1, 0, 1)]),
    eul("6:sigma", TRI1, &[p(-1, 1, 1, 0, 1)], &[p(1, 1, 2, 1, 1)]),
    alt("6:psi", SQ1, &[p(1, 1, 2, 0, 1)], &[p(-1, 1, 1, 1, 2)]),
    alt("6:phi", SQ, &[p(1, 1, 2, 0, 1)], &[p(-1, 1, 1, 0, 2)]),
    eul("6:gamma", SQ, &[p(1, 1, 1, 0, 1)], &[p(1, 3, 3, 0, 1)]),
    eul("6:rho", TRI, &[p(-1, 1, 1, 0, 1)], &[p(1, 1, 2, 1, 1)]),
    alt("6:lambda", LIN, &[p(1, 1, 2, 0, 1)], &[p(-1, 1, 1, 0, 1)]),
    Eulerian {
        name: "6:2mu",
        alternating: true,
        coef: 1,
        constant: 1,
        e: [0, 1, 1, 1],
        num: &[Poch { c: -1, a0: 0, a1: 1, b: 1, l0: 1, l1: 0, pow: 1 }, p(1, 1, 2, 0, 1)],
        den: &[p(-1, 1, 1, 1, 1)],
    },
    eul("7:F0", SQ, &[], &[pn(0)]),
    eul("7:F1", SQ1, &[], &[pn(1)]),
    eul("7:F2", PRONIC, &[], &[pn(1)]),
    eul("10:phi", TRI, &[], &[p(1, 1, 2, 1, 1)]),
    eul("10:psi", TRI1, &[], &[p(1, 1, 2, 1, 1)]),
    alt("10:X", SQ, &[], &[p(-1, 1, 1, 0, 2)]),
    alt("10:chi", SQ1, &[], &[p(-1, 1, 1, 1, 2)]),
    alt("2:mu", SQ, &[p(1, 1, 2, 0, 1)], &[p2(-1, 2, 2, 0, 1)]),
    eul("2:A", [0, 1, 1, 1], &[p(-1, 2, 2, 0, 1)], &[p(1, 1, 2, 1, 1)]),
    eul("2:B", LIN, &[p(-1, 1, 2, 0, 1)], &[p(1, 1, 2, 1, 1)]),
    eul("8:S0", SQ, &[p(-1, 1, 2, 0, 1)], &[p(-1, 2, 2, 0, 1)]),
    eul("8:S1", [1, 2, 0, 1], &[p(-1, 1, 2, 0, 1)], &[p(-1, 2, 2, 0, 1)]),
    eul("8:T0", [1, 3, 2, 1], &[p(-1, 2, 2, 0, 1)], &[p(-1, 1, 2, 1, 1)]),
    eul("8:T1", PRONIC, &[p(-1, 2, 2, 0, 1)], &[p(-1, 1, 2, 1, 1)]),
    eul("8:U0", SQ, &[p(-1, 1, 2, 0, 1)], &[p(-1, 4, 4, 0, 1)]),
    eul("8:U1", SQ1, &[p(-1, 1, 2, 0, 1)], &[p(-1, 2, 4, 0, 1)]),
    Eulerian {
        name: "8:V0",
        alternating: false,
        coef: 2,
        constant: -1,
        e: SQ,
        num: &[p(-1, 1, 2, 0, 1)],
        den: &[p(1, 1, 2, 0, 1)],
    },
    eul("8:V1", SQ1, &[p(-1, 1, 2, 0, 1)], &[p(1, 1, 2, 1, 1)]),
];

/// Registered Eulerian series names.
pub fn eulerian_names() -> impl Iterator<Item = &'static str> {
    EULERIAN.iter().map(|e| e.name)
}

fn canonical_name(name: &str) -> &str {
    match name {
        "f0" => "5:f0",
        "f1" => "5:f1",
        "2mu" => "6:2mu",
        other => other,
    }
}

/// Multiplies a dense series by `(1 - c q^e)`.
fn mul_factor(f: &mut [BigInt], c: i64, e: usize) {
    if e == 0 {
        let s = BigInt::from(1 - c);
        f.iter_mut().for_each(|x| *x *= &s);
        return;
    }
    for i in (e..f.len()).rev() {
        let t = &f[i - e] * c;
        f[i] -= t;
    }
}

/// Divides a dense series by `(1 - c q^e)` with `e > 0`.
fn div_factor(f: &mut [BigInt], c: i64, e: usize) {
    assert!(e > 0, "eulerian denominators have positive exponents");
    for i in e..f.len() {
        let t = &f[i - e] * c;
        f[i] += t;
    }
}

fn apply(f: &mut [BigInt], pc: &Poch, n: i64, divide: bool) {
    let len = pc.l0 + pc.l1 * n;
    for _ in 0..pc.pow {
        for k in 0..len {
            let e = pc.a0 + pc.a1 * n + pc.b * k;
            if e as usize >= f.len() && e > 0 {
                break;
            }
            if divide {
                div_factor(f, pc.c, e as usize);
            } else {
                mul_factor(f, pc.c, e as usize);
            }
        }
    }
}

/// The Eulerian series `name` known below `q^order`.
pub fn eulerian(name: &str, order: i64) -> Result<QSeries> {
    let key = canonical_name(name);
    let entry = EULERIAN
        .iter()
        .find(|e| e.name == key)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let len = order.max(0) as usize;
    let mut total = vec![BigInt::zero(); len];
    if len > 0 {
        total[0] += entry.constant;
    }
    let [e2, e1, e0, ed] = entry.e;
    let mut n = 0i64;
    loop {
        let ex = (e2 * n * n + e1 * n + e0) / ed;
        if ex >= order {
            break;
        }
        let mut term = vec![BigInt::zero(); len - ex as usize];
        term[0] = BigInt::one();
        for pc in entry.num {
            apply(&mut term, pc, n, false);
        }
        for pc in entry.den {
            apply(&mut term, pc, n, true);
        }
        let mut s = BigInt::from(entry.coef);
        if entry.alternating && n % 2 == 1 {
            s = -s;
        }
        for (i, t) in term.into_iter().enumerate() {
            total[ex as usize + i] += &s * t;
        }
        n += 1;
    }
    Ok(QSeries::from_terms(
        1,
        total
            .into_iter()
            .enumerate()
            .map(|(i, c)| (i as i64, CycNum::from_bigint(c))),
        Some(order),
    ))
}

/// `(coefficient, residue, extra root of unity ex(num/den))`.
pub type RowTerm = (i64, i64, Option<(i64, i64)>);

/// One row of the mock theta tables: `constant + scale · Σ c_i H_{r_i}`,
/// sliced, rescaled and shifted in `τ`.
#[derive(Clone, Debug)]
pub struct ThetaRow {
    pub name: &'static str,
    pub source: &'static str,
    pub terms: Vec<RowTerm>,
    pub scale: Exp,
    /// Slice offset; `ambiguous` means `±offset`, resolved by alignment.
    pub offset: Exp,
    pub ambiguous: bool,
    pub modulus: Exp,
    pub rescale: Exp,
    pub tau_shift: Exp,
    pub constant: i64,
}

fn e(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

#[allow(clippy::too_many_arguments)]
fn row(
    name: &'static str,
    source: &'static str,
    terms: &[(i64, i64)],
    scale: Exp,
    offset: Exp,
    ambiguous: bool,
    modulus: Exp,
    rescale: Exp,
) -> ThetaRow {
    ThetaRow {
        name,
        source,
        terms: terms.iter().map(|&(c, r)| (c, r, None)).collect(),
        scale,
        offset,
        ambiguous,
        modulus,
        rescale,
        tau_shift: Exp::zero(),
        constant: 0,
    }
}

fn pm(name: &'static str, source: &'static str, terms: &[(i64, i64)], scale: Exp, a: Exp) -> ThetaRow {
    row(name, source, terms, scale, a, true, Exp::one(), Exp::one())
}

fn sum_k(count: i64, step: i64, starts: &[i64], alternate: Option<i64>) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for &s in starts {
        for k in 0..count {
            let c = match alternate {
                Some(base) => base * if k % 2 == 0 { 1 } else { -1 },
                None => 1,
            };
            out.push((c, s + step * k));
        }
    }
    out
}

/// The table rows, in table order.
pub fn theta_rows() -> Vec<ThetaRow> {
    let half = e(1, 2);
    let mhalf = e(-1, 2);
    let quarter = e(1, 4);
    let one = Exp::one();
    let mut rows = vec![
        pm("3:psi", "24+8", &[(1, 2)], half, e(1, 24)),
        {
            let mut r = pm("3:nu", "24+8", &[(1, 8)], half, e(1, 3));
            r.tau_shift = e(-1, 2);
            r
        },
        pm("3:f", "6", &[(1, 5), (-1, 1)], half, e(1, 24)),
        row("3:phi", "24+8", &sum_k(4, 12, &[1], Some(-1)), half, e(-1, 96), false, quarter, e(4, 1)),
        row("3:chi", "18", &sum_k(3, 12, &[1, 7], None), mhalf, e(-1, 72), false, e(1, 3), e(3, 1)),
        row("3:omega", "6", &[(1, 2), (1, 4)], quarter, e(1, 3), false, half, e(2, 1)),
        row("3:rho", "18", &sum_k(3, 12, &[2, 4], None), mhalf, e(1, 9), false, e(1, 6), e(6, 1)),
        pm("5:psi0", "60+12,15,20", &[(1, 2)], half, e(1, 60)),
        pm("5:psi1", "60+12,15,20", &[(1, 14)], half, e(11, 60)),
        {
            let mut r = pm("5:chi0", "30+6,10,15", &[(1, 1)], half, e(1, 120));
            r.constant = 2;
            r
        },
        pm("5:chi1", "30+6,10,15", &[(1, 7)], half, e(71, 120)),
        row("5:phi0", "60+12,15,20", &[(1, 1), (-1, 11)], mhalf, e(-1, 240), false, half, e(2, 1)),
        row("5:phi1", "60+12,15,20", &[(1, 7), (-1, 13)], half, e(-49, 240), false, half, e(2, 1)),
        {
            let mut r = row("5:F0", "60+12,15,20", &[(1, 2)], half, e(-1, 60), false, e(2, 1), half);
            r.constant = 1;
            r
        },
        row("5:F1", "60+12,15,20", &[(1, 14)], half, e(71, 60), false, e(2, 1), half),
        pm("6:sigma", "12", &[(1, 2)], half, e(1, 12)),
        row("6:psi", "12", &[(1, 3), (-1, 9)], mhalf, e(-3, 16), false, half, e(2, 1)),
        row("6:phi", "12", &sum_k(2, 12, &[1, 5], None), mhalf, e(-1, 48), false, half, e(2, 1)),
        row("6:gamma", "18", &sum_k(3, 12, &[1, 5], None), mhalf, e(-1, 72), false, e(1, 3), e(3, 1)),
        pm("7:F0", "42+6,14,21", &[(1, 1)], mhalf, e(1, 168)),
        pm("7:F1", "42+6,14,21", &[(1, 5)], half, e(25, 168)),
        pm("7:F2", "42+6,14,21", &[(1, 11)], half, e(47, 168)),
        row("10:phi", "10", &sum_k(2, 10, &[4], Some(1)), half, e(1, 10), false, half, e(2, 1)),
        row("10:psi", "10", &sum_k(2, 10, &[2], Some(1)), half, e(-1, 10), false, half, e(2, 1)),
        pm("10:X", "10", &sum_k(2, 10, &[1], None), mhalf, e(1, 40)),
        pm("10:chi", "10", &sum_k(2, 10, &[3], None), mhalf, e(9, 40)),
        row("2:mu", "8", &sum_k(4, 4, &[1], None), mhalf, e(-1, 32), false, quarter, e(4, 1)),
        pm("2:A", "8", &[(1, 2)], quarter, e(1, 8)),
        pm("2:B", "8", &[(1, 4)], quarter, e(1, 2)),
        row("8:S0", "16", &sum_k(4, 8, &[1], None), mhalf, e(-1, 64), false, quarter, e(4, 1)),
        row("8:S1", "16", &sum_k(4, 8, &[3], None), half, e(-7, 64), false, quarter, e(4, 1)),
        {
            let mut r = pm("8:T0", "16", &[(1, 2)], half, e(1, 16));
            r.tau_shift = half;
            r
        },
        {
            let mut r = pm("8:T1", "16", &[(1, 10)], half, e(7, 16));
            r.tau_shift = half;
            r
        },
        row("8:U0", "16", &sum_k(8, 4, &[1], None), mhalf, e(-1, 64), false, e(1, 8), e(8, 1)),
        {
            let mut r = row("8:U1", "16", &[(1, 2), (1, 10)], half, e(-1, 16), false, half, e(2, 1));
            r.terms[1].2 = Some((-1, 4));
            r.tau_shift = half;
            r
        },
        row("8:V0", "16", &[(1, 8)], one, Exp::zero(), false, one, one),
        pm("8:V1", "16", &[(1, 4)], half, e(1, 4)),
    ];
    rows.iter_mut().for_each(|r| r.terms.sort_by_key(|t| t.1));
    rows
}

/// Rows whose source tables are printed, hence verifiable without
/// external data.
pub fn internal_rows() -> Vec<ThetaRow> {
    let internal = ["24+8", "42+6,14,21", "60+12,15,20"];
    theta_rows()
        .into_iter()
        .filter(|r| internal.contains(&r.source))
        .collect()
}

/// Rewrites a row over a lambency `ℓ` as a row over an averaged lambency
/// `ℓ + n` with a printed table, when the row's combination is fixed by
/// `r ↦ r·a(n)`: then `Σ c_r H_r = ½ Σ c_r (H_r + H_{ra})`.
pub fn averaged_row(row: &ThetaRow) -> Option<ThetaRow> {
    if row.terms.iter().any(|t| t.2.is_some()) {
        return None;
    }
    let target = load_catalog().iter().find(|l| {
        l.fixture.is_some() && averaging_source(&l.symbol).is_some_and(|(s, _)| s == row.source)
    })?;
    let (_, n) = averaging_source(&target.symbol)?;
    let m = target.m as i64;
    let a = om_group(target.m).a_of(n)?;
    let parity = target.fixture.as_ref()?.parity() as i64;
    let fold = |r: i64| {
        let r = r.rem_euclid(2 * m);
        if r <= m {
            (r, 1)
        } else {
            (2 * m - r, parity)
        }
    };
    let coords = |mult: i64| {
        let mut v = std::collections::BTreeMap::new();
        for &(c, r, _) in &row.terms {
            let (f, s) = fold(r * mult);
            *v.entry(f).or_insert(0) += c * s;
        }
        v.retain(|_, c| *c != 0);
        v
    };
    if coords(1) != coords(a) {
        return None;
    }
    let mut out = row.clone();
    out.source = load_catalog()
        .iter()
        .find(|l| l.symbol == target.symbol)
        .map(|l| l.symbol.as_str())?;
    out.scale /= Exp::from_integer(2);
    Some(out)
}

/// Outcome of a row check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowOutcome {
    /// Resolved slice offset.
    pub offset: Exp,
    /// Window of exact agreement (exclusive), when it held.
    pub agreed_below: Option<Exp>,
    /// Number of compared integer exponents.
    pub compared: usize,
    pub mismatch: Option<(Exp, String, String)>,
}

/// Combination `Σ c_i H_{r_i}` from the theta-coefficients of `t`.
fn combine_h(row: &ThetaRow, t: &CoeffTable) -> Result<QSeries> {
    let mut acc: Option<QSeries> = None;
    for &(c, r, zeta) in &row.terms {
        let mut h = t.theta_coefficient(r)?.scale(&CycNum::from_int(c));
        if let Some((n, d)) = zeta {
            h = h.scale(&CycNum::root_of_unity(n, d));
        }
        acc = Some(match acc {
            None => h,
            Some(a) => a.add(&h),
        });
    }
    Ok(acc.unwrap_or_else(QSeries::zero))
}

fn transform(row: &ThetaRow, h: &QSeries, offset: Exp) -> QSeries {
    h.slice(offset, row.modulus)
        .half_shift(row.tau_shift)
        .rescale(row.rescale)
        .scale(&CycNum::from_rational(num_rational::BigRational::new(
            (*row.scale.numer()).into(),
            (*row.scale.denom()).into(),
        )))
        .add(&QSeries::monomial(CycNum::from_int(row.constant), Exp::zero()))
}

/// Checks one row against the coefficient table of its source lambency.
pub fn verify_theta_row(row: &ThetaRow, source: &CoeffTable) -> Result<RowOutcome> {
    let h = combine_h(row, source)?;
    let candidates: Vec<Exp> = if row.ambiguous {
        vec![row.offset, -row.offset]
    } else {
        vec![row.offset]
    };
    let probe_order = 4i64;
    let lhs_probe = eulerian(row.name, probe_order)?;
    let mut chosen = Vec::new();
    for &s in &candidates {
        let rhs = transform(row, &h, s);
        if rhs.is_zero() {
            continue;
        }
        let aligned = match (rhs.leading(), lhs_probe.leading()) {
            (Some((x, c)), Some((y, d))) => x == y && c == d,
            _ => false,
        };
        if aligned || !row.ambiguous {
            chosen.push((s, rhs));
        }
    }
    if chosen.len() != 1 {
        return Err(Error::UnresolvableShift(format!(
            "{} (offsets {})",
            row.name,
            candidates.iter().map(|c| fmt_exp(*c)).collect::<Vec<_>>().join(", ")
        )));
    }
    let (offset, rhs) = chosen.pop().expect("one candidate");
    let window = rhs.order().ok_or(Error::Unbounded)?;
    let order = window.ceil().to_integer();
    let lhs = eulerian(row.name, order)?.truncate(window);
    let compared = (0..order).filter(|&n| Exp::from_integer(n) < window).count();
    Ok(match rhs.first_mismatch(&lhs) {
        None => RowOutcome {
            offset,
            agreed_below: Some(window),
            compared,
            mismatch: None,
        },
        Some(x) => RowOutcome {
            offset,
            agreed_below: None,
            compared,
            mismatch: Some((x, lhs.coeff(x).to_string(), rhs.coeff(x).to_string())),
        },
    })
}

fn compare_case(suite: &str, key: &str, lhs: &QSeries, rhs: &QSeries) -> Case {
    match lhs.first_mismatch(rhs) {
        None => Case::new(
            suite,
            key,
            Status::pass(format!(
                "q^{}",
                lhs.common_order(rhs).map_or("inf".into(), fmt_exp)
            )),
        ),
        Some(x) => Case::new(
            suite,
            key,
            Status::fail(
                format!("q^{}", fmt_exp(x)),
                lhs.coeff(x).to_string(),
                rhs.coeff(x).to_string(),
            ),
        ),
    }
}

/// `f0(q) = -ψ0(-q) + φ0(-q²)` and `f1(q) = ψ1(-q) - q⁻¹φ1(-q²)`.
pub fn verify_watson(order: i64) -> Result<Report> {
    let mut rep = Report::default();
    let ord = Exp::from_integer(order);
    let f0 = eulerian("5:f0", order)?;
    let rhs0 = eulerian("5:psi0", order)?
        .negate_q()
        .neg()
        .add(&eulerian("5:phi0", order)?.negate_q().rescale(Exp::from_integer(2)));
    rep.push(compare_case("watson", "f0", &f0, &rhs0.truncate(ord)));
    let f1 = eulerian("5:f1", order)?;
    let rhs1 = eulerian("5:psi1", order)?.negate_q().sub(
        &eulerian("5:phi1", order + 2)?
            .negate_q()
            .rescale(Exp::from_integer(2))
            .shift(Exp::from_integer(-1)),
    );
    rep.push(compare_case("watson", "f1", &f1, &rhs1.truncate(ord)));
    Ok(rep)
}

/// The two order-6 product identities.
pub fn verify_andrews_hickerson(order: i64) -> Result<Report> {
    let mut rep = Report::default();
    let ord = Exp::from_integer(order);
    let one = CycNum::one();
    let m1 = -CycNum::one();
    let i = Exp::from_integer;
    let poch = |c: &CycNum, a: i64, b: i64| pochhammer(c, i(a), i(b), None, order);
    // (-q;q²)²(-q;q⁶)(-q⁵;q⁶)(q⁶;q⁶)
    let mq = poch(&m1, 1, 2)?;
    let p1 = mq
        .mul(&mq)
        .mul(&poch(&m1, 1, 6)?)
        .mul(&poch(&m1, 5, 6)?)
        .mul(&poch(&one, 6, 6)?)
        .truncate(ord);
    // (-q;q²)²(-q³;q⁶)²(q⁶;q⁶)
    let m3 = poch(&m1, 3, 6)?;
    let p2 = mq
        .mul(&mq)
        .mul(&m3)
        .mul(&m3)
        .mul(&poch(&one, 6, 6)?)
        .truncate(ord);
    let psi_q2 = eulerian("6:psi", order + 2)?.rescale(i(2)).shift(i(-1));
    let rho = eulerian("6:rho", order)?;
    let lam = eulerian("6:lambda", order)?.negate_q();
    let two = CycNum::from_int(2);
    rep.push(compare_case(
        "andrews-hickerson",
        "q^-1 psi(q^2) + rho(q)",
        &psi_q2.add(&rho).truncate(ord),
        &p1,
    ));
    rep.push(compare_case(
        "andrews-hickerson",
        "2q^-1 psi(q^2) + lambda(-q)",
        &psi_q2.scale(&two).add(&lam).truncate(ord),
        &p1,
    ));
    let phi_q2 = eulerian("6:phi", order)?.rescale(i(2));
    let sigma = eulerian("6:sigma", order)?;
    let mu2 = eulerian("6:2mu", order)?.negate_q();
    rep.push(compare_case(
        "andrews-hickerson",
        "phi(q^2) + 2 sigma(q)",
        &phi_q2.add(&sigma.scale(&two)).truncate(ord),
        &p2,
    ));
    rep.push(compare_case(
        "andrews-hickerson",
        "2 phi(q^2) - 2mu(-q)",
        &phi_q2.scale(&two).sub(&mu2).truncate(ord),
        &p2,
    ));
    Ok(rep)
}
