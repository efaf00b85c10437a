//! The 39 lambencies, their printed coefficient tables, ingestion of external
//! umbral data, and the sign-pattern audits.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::Path;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::eta::EtaQuotient;
use crate::jacobi::{ez_apply, om_group, shadow_kernel, star, CoeffTable, Span};

const CATALOG_CSV: &str = include_str!("../data/catalog.csv");

/// One catalog entry `m+n,n',…`.
#[derive(Clone, Debug)]
pub struct Lambency {
    pub symbol: String,
    pub m: u64,
    /// Exact divisors generating `K` (closed under `∗`, includes 1).
    pub k_divisors: Vec<u64>,
    /// `K ⊂ O_m` as residues mod `2m`, sorted.
    pub k: Vec<i64>,
    pub eta: EtaQuotient,
    pub root_system: Option<String>,
    pub fixture: Option<CoeffTable>,
    /// Printed depth in `n` of the fixture rows.
    pub fixture_depth: Option<i64>,
    /// Residues printed as table rows.
    pub fixture_rows: Vec<i64>,
}

impl Lambency {
    /// Whether the lambency carries a Niemeier root system.
    pub fn in_l1_plus(&self) -> bool {
        self.root_system.is_some()
    }

    pub fn level(&self) -> u64 {
        self.m
    }

    /// Whether `C(D, r)` is forced to vanish by `K`-invariance and parity.
    pub fn forced_zero(&self, r: i64) -> bool {
        let two_m = 2 * self.m as i64;
        self.k
            .iter()
            .any(|&a| (r * a + r).rem_euclid(two_m) == 0)
    }
}

/// Parses `m+n,n',…` into the level and the listed divisors.
pub fn parse_symbol(s: &str) -> Result<(u64, Vec<u64>)> {
    let bad = || Error::UnknownLambency(s.to_string());
    let (m, rest) = match s.split_once('+') {
        Some((m, rest)) => (m, Some(rest)),
        None => (s, None),
    };
    let m: u64 = m.trim().parse().map_err(|_| bad())?;
    let mut ns = Vec::new();
    if let Some(rest) = rest {
        for t in rest.split(',') {
            ns.push(t.trim().parse::<u64>().map_err(|_| bad())?);
        }
    }
    if m == 0 || ns.iter().any(|&n| n == 0 || !m.is_multiple_of(n)) {
        return Err(bad());
    }
    Ok((m, ns))
}

/// Closure of `{1} ∪ ns` under `n ∗ n'`.
fn k_closure(m: u64, ns: &[u64]) -> Vec<u64> {
    let mut set: BTreeSet<u64> = BTreeSet::from([1]);
    set.extend(ns.iter().copied());
    loop {
        let cur: Vec<u64> = set.iter().copied().collect();
        let before = set.len();
        for &a in &cur {
            for &b in &cur {
                set.insert(star(a, b));
            }
        }
        if set.len() == before {
            break;
        }
    }
    debug_assert!(set.iter().all(|&n| m.is_multiple_of(n)));
    set.into_iter().collect()
}

/// `ε_m(r)`: +1 on `1..m-1`, -1 on `m+1..2m-1`, 0 at `0` and `m` (mod `2m`).
pub fn epsilon_m(m: u64, r: i64) -> i8 {
    let m = m as i64;
    let r = r.rem_euclid(2 * m);
    if r == 0 || r == m {
        0
    } else if r < m {
        1
    } else {
        -1
    }
}

/// A parsed coefficient record with its 1-based source line.
#[derive(Clone, Debug)]
struct Record {
    line: usize,
    lambency: String,
    class: String,
    r: i64,
    d: i64,
    coeff: BigInt,
}

enum Row {
    Meta {
        symbol: String,
        eta: String,
        root: String,
        depth: String,
    },
    Data(Record),
}

/// Splits CSV rows, rejoining a lambency symbol that itself contains commas
/// (`30+3,5,15`) by counting fixed fields from the right.
fn parse_rows(text: &str, allow_meta: bool) -> Result<Vec<Row>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    let mut seen_header = false;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::ParseError {
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let fields: Vec<&str> = rec.iter().collect();
        if fields.iter().all(|f| f.is_empty()) {
            continue;
        }
        if !seen_header {
            if fields == ["lambency", "class", "r", "D", "coeff"] {
                seen_header = true;
                continue;
            }
            return Err(Error::ParseError {
                line,
                msg: "expected header lambency,class,r,D,coeff".into(),
            });
        }
        let err = |msg: &str| Error::ParseError {
            line,
            msg: msg.to_string(),
        };
        if fields[0] == "meta" {
            if !allow_meta || fields.len() < 5 {
                return Err(err("unexpected metadata line"));
            }
            let n = fields.len();
            out.push(Row::Meta {
                symbol: fields[1..n - 3].join(","),
                eta: fields[n - 3].to_string(),
                root: fields[n - 2].to_string(),
                depth: fields[n - 1].to_string(),
            });
            continue;
        }
        if fields.len() < 5 {
            return Err(err("expected 5 fields"));
        }
        let n = fields.len();
        let r: i64 = fields[n - 3].parse().map_err(|_| err("bad r"))?;
        let d: i64 = fields[n - 2].parse().map_err(|_| err("bad D"))?;
        let coeff: BigInt = fields[n - 1].parse().map_err(|_| err("bad coeff"))?;
        let class = fields[n - 4].to_string();
        if class.is_empty() {
            return Err(err("empty class"));
        }
        out.push(Row::Data(Record {
            line,
            lambency: fields[..n - 4].join(","),
            class,
            r,
            d,
            coeff,
        }));
    }
    Ok(out)
}

/// Builds a `K`-invariant odd table from printed rows, spreading each row
/// over its `±K` orbit. Residues in no printed orbit stay unknown unless
/// forced to vanish.
fn build_fixture(l: &Lambency, recs: &[Record], depth: i64) -> Result<CoeffTable> {
    let m = l.m as i64;
    let mut t = CoeffTable::new(l.m, -1);
    let mut lo: BTreeMap<i64, i64> = BTreeMap::new();
    for rec in recs {
        for &a in &l.k {
            let r2 = (rec.r * a).rem_euclid(2 * m);
            let f = r2.min(2 * m - r2);
            let row_lo = rec.r * rec.r - 4 * m * depth;
            let e = lo.entry(f).or_insert(row_lo);
            *e = (*e).min(row_lo);
        }
    }
    for (&f, &l0) in &lo {
        t.set_known(f, Span::new(Some(l0), None));
    }
    for f in 0..=m {
        if l.forced_zero(f) {
            t.set_known(f, Span::ALL);
        }
    }
    for rec in recs {
        let v = CycNum::from_bigint(rec.coeff.clone());
        for &a in &l.k {
            let r2 = rec.r * a;
            let prev = t.get(rec.d, r2)?;
            if !prev.is_zero() && prev != v {
                return Err(Error::ParseError {
                    line: rec.line,
                    msg: format!("row conflicts with K-image at r = {}", r2.rem_euclid(2 * m)),
                });
            }
            t.set(rec.d, r2, v.clone())?;
        }
    }
    Ok(t)
}

fn parse_catalog() -> Result<Vec<Lambency>> {
    let rows = parse_rows(CATALOG_CSV, true)?;
    let mut out: Vec<Lambency> = Vec::new();
    let mut recs: BTreeMap<String, Vec<Record>> = BTreeMap::new();
    for row in rows {
        match row {
            Row::Meta {
                symbol,
                eta,
                root,
                depth,
            } => {
                let (m, ns) = parse_symbol(&symbol)?;
                let k_divisors = k_closure(m, &ns);
                let g = om_group(m);
                let mut k: Vec<i64> = k_divisors
                    .iter()
                    .map(|&n| g.a_of(n).expect("exact divisor"))
                    .collect();
                k.sort();
                out.push(Lambency {
                    symbol,
                    m,
                    k_divisors,
                    k,
                    eta: eta.parse()?,
                    root_system: (!root.is_empty()).then_some(root),
                    fixture: None,
                    fixture_depth: depth.parse().ok(),
                    fixture_rows: Vec::new(),
                });
            }
            Row::Data(r) => recs.entry(r.lambency.clone()).or_default().push(r),
        }
    }
    for l in &mut out {
        if let (Some(rs), Some(depth)) = (recs.get(&l.symbol), l.fixture_depth) {
            l.fixture = Some(build_fixture(l, rs, depth)?);
            let rows: BTreeSet<i64> = rs.iter().map(|r| r.r).collect();
            l.fixture_rows = rows.into_iter().collect();
        }
    }
    Ok(out)
}

/// The 39 lambencies in catalog order.
pub fn load_catalog() -> &'static [Lambency] {
    static CAT: OnceLock<Vec<Lambency>> = OnceLock::new();
    CAT.get_or_init(|| parse_catalog().expect("embedded catalog is well formed"))
}

pub fn lookup(symbol: &str) -> Result<&'static Lambency> {
    let key: String = symbol.chars().filter(|c| !c.is_whitespace()).collect();
    load_catalog()
        .iter()
        .find(|l| l.symbol == key)
        .ok_or_else(|| Error::UnknownLambency(symbol.to_string()))
}

/// Ingested coefficient tables keyed by `(lambency, class)`.
#[derive(Clone, Debug, Default)]
pub struct HData {
    pub provenance: String,
    pub tables: BTreeMap<(String, String), CoeffTable>,
}

impl HData {
    pub fn get(&self, lambency: &str, class: &str) -> Option<&CoeffTable> {
        self.tables.get(&(lambency.to_string(), class.to_string()))
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Parses ingestion CSV text. Each residue with records is authoritative
    /// from its lowest recorded `D` upward.
    pub fn parse(text: &str, provenance: &str) -> Result<HData> {
        let rows = parse_rows(text, false)?;
        let mut seen: BTreeMap<(String, String, i64, i64), usize> = BTreeMap::new();
        let mut grouped: BTreeMap<(String, String), Vec<Record>> = BTreeMap::new();
        for row in rows {
            let Row::Data(rec) = row else { unreachable!() };
            let l = lookup(&rec.lambency)?;
            let m = l.m as i64;
            if rec.r < 0 || rec.r >= 2 * m {
                return Err(Error::ParseError {
                    line: rec.line,
                    msg: format!("r = {} outside 0..{}", rec.r, 2 * m),
                });
            }
            if (rec.d - rec.r * rec.r).rem_euclid(4 * m) != 0 {
                return Err(Error::CongruenceViolation {
                    line: rec.line,
                    d: rec.d,
                    r: rec.r,
                    modulus: 4 * m,
                });
            }
            let key = (l.symbol.clone(), rec.class.clone(), rec.r, rec.d);
            if seen.insert(key, rec.line).is_some() {
                return Err(Error::DuplicateRecord {
                    line: rec.line,
                    lambency: l.symbol.clone(),
                    class: rec.class.clone(),
                    r: rec.r,
                    d: rec.d,
                });
            }
            grouped
                .entry((l.symbol.clone(), rec.class.clone()))
                .or_default()
                .push(Record {
                    lambency: l.symbol.clone(),
                    ..rec
                });
        }
        let mut tables = BTreeMap::new();
        for (key, recs) in grouped {
            let m = lookup(&key.0)?.m;
            let mi = m as i64;
            let mut t = CoeffTable::new(m, -1);
            let mut lo: BTreeMap<i64, i64> = BTreeMap::new();
            for rec in &recs {
                let f = rec.r.min(2 * mi - rec.r);
                let e = lo.entry(f).or_insert(rec.d);
                *e = (*e).min(rec.d);
            }
            t.set_known(0, Span::ALL);
            t.set_known(mi, Span::ALL);
            for (&f, &l0) in &lo {
                t.set_known(f, Span::new(Some(l0), None));
            }
            let mut values: BTreeMap<(i64, i64), (usize, CycNum)> = BTreeMap::new();
            for rec in &recs {
                let (f, v) = if rec.r <= mi {
                    (rec.r, CycNum::from_bigint(rec.coeff.clone()))
                } else {
                    (2 * mi - rec.r, -CycNum::from_bigint(rec.coeff.clone()))
                };
                if let Some((_, prev)) = values.get(&(rec.d, f)) {
                    if *prev != v {
                        return Err(Error::ParseError {
                            line: rec.line,
                            msg: format!("C(D,-r) != -C(D,r) at D = {}, r = {}", rec.d, rec.r),
                        });
                    }
                }
                values.insert((rec.d, f), (rec.line, v));
            }
            for ((d, f), (line, v)) in values {
                t.set(d, f, v).map_err(|e| Error::ParseError {
                    line,
                    msg: e.to_string(),
                })?;
            }
            tables.insert(key, t);
        }
        Ok(HData {
            provenance: provenance.to_string(),
            tables,
        })
    }
}

/// Reads and validates an ingestion file.
pub fn ingest_hdata(path: &Path) -> Result<HData> {
    let mut text = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Error::MissingSource(format!("{}: {e}", path.display())))?;
    HData::parse(&text, &path.display().to_string())
}

/// Source lambency and Eichler–Zagier divisor for the averaged constructions.
pub fn averaging_source(symbol: &str) -> Option<(&'static str, u64)> {
    match symbol {
        "6+2" => Some(("6", 2)),
        "10+2" => Some(("10", 2)),
        "12+3" => Some(("12", 3)),
        "18+2" => Some(("18", 2)),
        "30+3,5,15" => Some(("30+15", 3)),
        _ => None,
    }
}

/// `φ^(ℓ) = φ^(ℓ') + φ^(ℓ')|W_m(n)`. The sum is not halved: with the
/// umbral normalization `C(1,1) = -2` on both sides, halving would give -1.
pub fn construct_averaged(symbol: &str, h: &HData) -> Result<CoeffTable> {
    let (src, n) =
        averaging_source(symbol).ok_or_else(|| Error::UnknownLambency(symbol.to_string()))?;
    let t = h
        .get(src, "1A")
        .ok_or_else(|| Error::MissingSource(format!("{src} class 1A")))?;
    let a = om_group(t.index()).a_of(n).expect("exact divisor");
    let image = ez_apply(t, a)?;
    Ok(CoeffTable::combine(
        t.index(),
        t.parity(),
        &[(CycNum::one(), t), (CycNum::one(), &image)],
    ))
}

/// Whether all nonzero `C_σ̂(k², r)` with `0 < k, r < m` share one sign
/// relative to `ε_m(k)ε_m(r)`.
pub fn check_positivity_sigma(l: &Lambency) -> bool {
    let m = l.m as i64;
    let s = shadow_kernel(&l.eta, l.m, (m - 1) * (m - 1)).expect("catalog levels divide");
    let mut sign = 0i8;
    for k in 1..m {
        for r in 1..m {
            let c = s.table.get(k * k, r).expect("within depth");
            let sg = sign_of(&c);
            if sg == 0 {
                continue;
            }
            let rel = sg * epsilon_m(l.m, k) * epsilon_m(l.m, r);
            if sign == 0 {
                sign = rel;
            } else if rel != sign {
                return false;
            }
        }
    }
    true
}

/// Whether every known `C(D, r)` with `D < 0` has sign `s·ε_m(r)` for one
/// global `s`.
pub fn check_positivity_phi(t: &CoeffTable) -> bool {
    let mut sign = 0i8;
    for (d, r, c) in t.entries() {
        if d >= 0 {
            continue;
        }
        let sg = sign_of(&c);
        let e = epsilon_m(t.index(), r);
        if e == 0 {
            return false;
        }
        let rel = sg * e;
        if sign == 0 {
            sign = rel;
        } else if rel != sign {
            return false;
        }
    }
    true
}

fn sign_of(c: &CycNum) -> i8 {
    let q = c.as_rational().expect("integral tables");
    if q.is_negative() {
        -1
    } else if q.is_zero() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let cat = load_catalog();
        assert_eq!(cat.len(), 39);
        assert_eq!(cat.iter().filter(|l| l.in_l1_plus()).count(), 23);
        assert_eq!(cat.iter().filter(|l| l.fixture.is_some()).count(), 16);
        let l2 = lookup("2").unwrap();
        assert_eq!(l2.eta.to_string(), "1^24/2^24");
        assert_eq!(l2.root_system.as_deref(), Some("A1^24"));
        assert!(l2.fixture.is_none());
        let l = lookup("6+2").unwrap();
        assert_eq!(l.eta, "1^4 2^4/3^4 6^4".parse().unwrap());
        assert_eq!(l.k, vec![1, 7]);
        let t = l.fixture.as_ref().unwrap();
        let row: Vec<i64> = (0..6)
            .map(|n| i64::try_from(t.get(1 - 24 * n, 1).unwrap().as_integer().unwrap()).unwrap())
            .collect();
        assert_eq!(row, vec![-2, -2, 4, -6, 6, -6]);
        assert_eq!(lookup("30+3,5,15").unwrap().k, vec![1, 29, 41, 49]);
        for l in cat {
            let g = om_group(l.m);
            assert!(!l.k.contains(&(2 * l.m as i64 - 1)), "{} is Fricke", l.symbol);
            for &a in &l.k {
                for &b in &l.k {
                    assert!(l.k.contains(&g.mul(a, b)));
                }
            }
            assert_eq!(l.eta.twice_weight(), 0);
        }
    }

    #[test]
    fn ingest_examples() {
        let ok = HData::parse("lambency,class,r,D,coeff\n2,1A,1,-7,4488\n", "t").unwrap();
        assert_eq!(ok.get("2", "1A").unwrap().get(-7, 1).unwrap(), CycNum::from_int(4488));
        assert!(matches!(
            HData::parse("lambency,class,r,D,coeff\n2,1A,1,2,5\n", "t"),
            Err(Error::CongruenceViolation { line: 2, .. })
        ));
        assert!(HData::parse("", "t").unwrap().is_empty());
        assert!(matches!(
            HData::parse("lambency,class,r,D,coeff\n99+1,1A,1,1,1\n", "t"),
            Err(Error::UnknownLambency(_))
        ));
        assert!(matches!(
            HData::parse("lambency,class,r,D,coeff\n2,1A,1,1,-2\n2,1A,1,1,-2\n", "t"),
            Err(Error::DuplicateRecord { line: 3, .. })
        ));
        assert!(matches!(
            HData::parse("lambency,class,r,D,coeff\n2,1A,x,1,-2\n", "t"),
            Err(Error::ParseError { line: 2, .. })
        ));
        let multi =
            HData::parse("lambency,class,r,D,coeff\n30+6,10,15,2A,1,1,-2\n", "t").unwrap();
        assert!(multi.get("30+6,10,15", "2A").is_some());
    }

    #[test]
    fn epsilon_def() {
        let v: Vec<i8> = (0..12).map(|r| epsilon_m(6, r)).collect();
        assert_eq!(v, vec![0, 1, 1, 1, 1, 1, 0, -1, -1, -1, -1, -1]);
    }

    #[test]
    fn positivity() {
        let cat = load_catalog();
        for l in cat {
            assert_eq!(check_positivity_sigma(l), l.in_l1_plus(), "{}", l.symbol);
            if let Some(t) = &l.fixture {
                assert!(!check_positivity_phi(t), "{}", l.symbol);
            }
        }
        assert!(check_positivity_phi(&CoeffTable::new(5, -1)));
    }
}
