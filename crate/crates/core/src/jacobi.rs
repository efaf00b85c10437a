//! Index-`m` coefficient tables `C(D, r)` and the operators acting on them:
//! Eichler–Zagier involutions, `O_m` characters, Hecke operators, the
//! Skoruppa–Zagier lift and the theta-type shadow kernel.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use crate::arith::{crt, divisors, exact_sqrt, factorize, is_fundamental, kronecker_unchecked};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::eta::EtaQuotient;
use crate::series::QSeries;

/// Inclusive range of discriminants; `None` means unbounded on that side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Span {
    pub const ALL: Span = Span { lo: None, hi: None };

    pub fn new(lo: Option<i64>, hi: Option<i64>) -> Self {
        Span { lo, hi }
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo.is_none_or(|l| d >= l) && self.hi.is_none_or(|h| d <= h)
    }

    pub fn intersect(&self, o: &Span) -> Span {
        let lo = match (self.lo, o.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Span { lo, hi }
    }

    /// The span of `D` such that `D·num/den` lies in `self`.
    fn pull_back(&self, num: i64, den: i64) -> Span {
        Span {
            lo: self.lo.map(|l| Integer::div_ceil(&(l * den), &num)),
            hi: self.hi.map(|h| Integer::div_floor(&(h * den), &num)),
        }
    }
}

/// Fourier coefficients `C(D, r)` of an index-`m` form, supported on
/// `D ≡ r² mod 4m`, with `C(D, -r) = parity · C(D, r)`.
///
/// Only residues `0 ≤ r ≤ m` are stored; the rest are synthesized from the
/// parity. Each residue carries a span of discriminants where the table is
/// authoritative (absent entries there are zero); reads outside it fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    m: i64,
    parity: i8,
    entries: BTreeMap<(i64, i64), CycNum>,
    known: BTreeMap<i64, Span>,
}

impl CoeffTable {
    pub fn new(m: u64, parity: i8) -> Self {
        assert!(m >= 1 && (parity == 1 || parity == -1));
        CoeffTable {
            m: m as i64,
            parity,
            entries: BTreeMap::new(),
            known: BTreeMap::new(),
        }
    }

    pub fn index(&self) -> u64 {
        self.m as u64
    }

    pub fn parity(&self) -> i8 {
        self.parity
    }

    /// Canonical residue in `0..2m`.
    pub fn canon(&self, r: i64) -> i64 {
        r.rem_euclid(2 * self.m)
    }

    /// Fundamental representative and the sign relating it to `r`.
    fn fold(&self, r: i64) -> (i64, i8) {
        let r = self.canon(r);
        if r <= self.m {
            (r, 1)
        } else {
            (2 * self.m - r, self.parity)
        }
    }

    pub fn is_admissible(&self, d: i64, r: i64) -> bool {
        (d - r * r).rem_euclid(4 * self.m) == 0
    }

    /// Marks residue `±r` as known on `span`.
    pub fn set_known(&mut self, r: i64, span: Span) {
        let (f, _) = self.fold(r);
        self.known.insert(f, span);
    }

    pub fn known_span(&self, r: i64) -> Option<Span> {
        self.known.get(&self.fold(r).0).copied()
    }

    pub fn is_known(&self, d: i64, r: i64) -> bool {
        self.known_span(r).is_some_and(|s| s.contains(d))
    }

    /// Records `C(D, r) = v` (and implicitly `C(D, -r)`).
    pub fn set(&mut self, d: i64, r: i64, v: CycNum) -> Result<()> {
        if !self.is_admissible(d, r) {
            return Err(Error::Invalid(format!(
                "D = {d} is not r^2 mod {} for r = {r}",
                4 * self.m
            )));
        }
        let (f, s) = self.fold(r);
        if self.parity == -1 && (f == 0 || f == self.m) && !v.is_zero() {
            return Err(Error::Invalid(format!(
                "odd table cannot be nonzero at r = {f}"
            )));
        }
        let v = if s == 1 { v } else { -v };
        if v.is_zero() {
            self.entries.remove(&(d, f));
        } else {
            self.entries.insert((d, f), v);
        }
        Ok(())
    }

    /// Reads `C(D, r)`; zero off the support, an error beyond the depth.
    pub fn get(&self, d: i64, r: i64) -> Result<CycNum> {
        if !self.is_admissible(d, r) {
            return Ok(CycNum::zero());
        }
        if !self.is_known(d, r) {
            return Err(Error::InsufficientDepth {
                d,
                r: self.canon(r),
            });
        }
        let (f, s) = self.fold(r);
        Ok(match self.entries.get(&(d, f)) {
            None => CycNum::zero(),
            Some(v) if s == 1 => v.clone(),
            Some(v) => -v,
        })
    }

    /// Theta-coefficient `H_r = Σ_D C(D, r) q^{-D/4m}`, known below the
    /// first discriminant past the residue's span.
    pub fn theta_coefficient(&self, r: i64) -> Result<QSeries> {
        let (f, s) = self.fold(r);
        let span = match self.known.get(&f) {
            Some(sp) if sp.hi.is_none() => *sp,
            _ => {
                return Err(Error::InsufficientDepth {
                    d: r * r,
                    r: self.canon(r),
                })
            }
        };
        let sign = CycNum::from_int(s as i64);
        let terms = self
            .entries
            .iter()
            .filter(|(&(d, g), _)| g == f && span.contains(d))
            .map(|(&(d, _), v)| (-d, v * &sign))
            .collect::<Vec<_>>();
        let order = span.lo.map(|lo| 4 * self.m - lo);
        Ok(QSeries::from_terms(4 * self.m, terms, order))
    }

    /// All nonzero entries `(D, r, C)` with `r` in `0..2m`, sorted by `(r, D)`.
    pub fn entries(&self) -> Vec<(i64, i64, CycNum)> {
        let mut out = Vec::with_capacity(2 * self.entries.len());
        for (&(d, f), v) in &self.entries {
            out.push((d, f, v.clone()));
            if f != 0 && f != self.m {
                let v2 = if self.parity == 1 { v.clone() } else { -v };
                out.push((d, 2 * self.m - f, v2));
            }
        }
        out.sort_by_key(|&(d, r, _)| (r, d));
        out
    }

    /// Stored nonzero entries in the fundamental domain `0 ≤ r ≤ m`.
    pub fn fundamental_entries(&self) -> impl Iterator<Item = (i64, i64, &CycNum)> + '_ {
        self.entries.iter().map(|(&(d, r), v)| (d, r, v))
    }

    pub fn known_residues(&self) -> impl Iterator<Item = (i64, Span)> + '_ {
        self.known.iter().map(|(&r, &s)| (r, s))
    }

    /// First `(D, r)` where both tables are authoritative and disagree.
    pub fn first_disagreement(&self, other: &CoeffTable) -> Option<(i64, i64)> {
        if self.m != other.m {
            return Some((0, 0));
        }
        let mut keys: BTreeSet<(i64, i64)> = BTreeSet::new();
        for (d, r, _) in self.entries().into_iter().chain(other.entries()) {
            keys.insert((r, d));
        }
        keys.into_iter()
            .map(|(r, d)| (d, r))
            .find(|&(d, r)| {
                self.is_known(d, r)
                    && other.is_known(d, r)
                    && self.get(d, r).ok() != other.get(d, r).ok()
            })
    }

    /// Exact linear combination `Σ c_i t_i` over the common known spans.
    pub fn combine(m: u64, parity: i8, terms: &[(CycNum, &CoeffTable)]) -> CoeffTable {
        let mut out = CoeffTable::new(m, parity);
        let mut spans: BTreeMap<i64, Span> = BTreeMap::new();
        for f in 0..=(m as i64) {
            let mut acc = Some(Span::ALL);
            for (_, t) in terms {
                acc = match (acc, t.known_span(f)) {
                    (Some(a), Some(b)) => Some(a.intersect(&b)),
                    _ => None,
                };
            }
            if let Some(s) = acc {
                spans.insert(f, s);
            }
        }
        out.known = spans;
        let mut keys = BTreeSet::new();
        for (_, t) in terms {
            for (d, r, _) in t.fundamental_entries() {
                keys.insert((d, r));
            }
        }
        for (d, f) in keys {
            if !out.is_known(d, f) {
                continue;
            }
            let mut acc = CycNum::zero();
            for (c, t) in terms {
                let v = t.get(d, f).expect("span checked");
                if !v.is_zero() {
                    acc += &(c * &v);
                }
            }
            out.set(d, f, acc).expect("admissible by construction");
        }
        out
    }
}

/// `θ^{k-1}_{m,r} = Σ_{ℓ ≡ r mod 2m} ℓ^{k-1} q^{ℓ²/4m}` below `q^order`.
pub fn theta_nullwert(m: u64, r: i64, k: u32, order: i64) -> QSeries {
    assert!(k == 1 || k == 2, "thetanullwert weight must be 1 or 2");
    let m = m as i64;
    let four_m = 4 * m;
    let bound = four_m * order;
    let mut terms: BTreeMap<i64, i64> = BTreeMap::new();
    let r0 = r.rem_euclid(2 * m);
    let mut l = r0;
    while l * l < bound {
        *terms.entry(l * l).or_default() += if k == 1 { 1 } else { l };
        l += 2 * m;
    }
    let mut l = r0 - 2 * m;
    while l * l < bound {
        *terms.entry(l * l).or_default() += if k == 1 { 1 } else { l };
        l -= 2 * m;
    }
    QSeries::from_terms(
        four_m,
        terms.into_iter().map(|(e, c)| (e, CycNum::from_int(c))),
        Some(bound.max(0)),
    )
}

/// The group `O_m` of residues `a mod 2m` with `a² ≡ 1 mod 4m`, identified
/// with the exact divisors of `m` under `n ↦ a(n)`.
#[derive(Clone, Debug)]
pub struct OmGroup {
    m: u64,
    elements: Vec<i64>,
    exact_divisors: Vec<u64>,
    a_of: BTreeMap<u64, i64>,
    n_of: BTreeMap<i64, u64>,
    prime_powers: Vec<u64>,
}

/// A character `O_m → {±1}`, given by the prime powers `p^e ‖ m` it is
/// nontrivial on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub nontrivial_on: Vec<u64>,
}

impl Character {
    pub fn trivial() -> Self {
        Character {
            nontrivial_on: Vec::new(),
        }
    }
}

/// `n ∗ n' = nn'/(n, n')²`.
pub fn star(n: u64, n2: u64) -> u64 {
    let g = n.gcd(&n2);
    n / g * (n2 / g)
}

pub fn om_group(m: u64) -> OmGroup {
    assert!(m >= 1);
    let mi = m as i64;
    let elements: Vec<i64> = (0..2 * mi)
        .filter(|a| (a * a - 1).rem_euclid(4 * mi) == 0)
        .collect();
    let prime_powers: Vec<u64> = factorize(m).iter().map(|&(p, e)| p.pow(e)).collect();
    let exact_divisors: Vec<u64> = divisors(m)
        .into_iter()
        .filter(|&n| n.gcd(&(m / n)) == 1)
        .collect();
    let mut a_of = BTreeMap::new();
    let mut n_of = BTreeMap::new();
    for &n in &exact_divisors {
        let n_i = n as i64;
        let a = crt(-1, 2 * n_i, 1, 2 * mi / n_i).expect("compatible mod 2");
        let a = a.rem_euclid(2 * mi);
        a_of.insert(n, a);
        n_of.insert(a, n);
    }
    debug_assert_eq!(elements.len(), exact_divisors.len());
    OmGroup {
        m,
        elements,
        exact_divisors,
        a_of,
        n_of,
        prime_powers,
    }
}

impl OmGroup {
    pub fn index(&self) -> u64 {
        self.m
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn exact_divisors(&self) -> &[u64] {
        &self.exact_divisors
    }

    pub fn a_of(&self, n: u64) -> Option<i64> {
        self.a_of.get(&n).copied()
    }

    pub fn n_of(&self, a: i64) -> Option<u64> {
        self.n_of.get(&a.rem_euclid(2 * self.m as i64)).copied()
    }

    pub fn contains(&self, a: i64) -> bool {
        self.n_of(a).is_some()
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        (a * b).rem_euclid(2 * self.m as i64)
    }

    /// All `2^ω(m)` characters.
    pub fn characters(&self) -> Vec<Character> {
        let k = self.prime_powers.len();
        (0..1u32 << k)
            .map(|mask| Character {
                nontrivial_on: (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.prime_powers[i])
                    .collect(),
            })
            .collect()
    }

    pub fn char_value(&self, chi: &Character, a: i64) -> Result<i8> {
        let n = self.n_of(a).ok_or(Error::NotInOm { a, m: self.m })?;
        let flips = chi.nontrivial_on.iter().filter(|&&q| n % q == 0).count();
        Ok(if flips % 2 == 0 { 1 } else { -1 })
    }
}

/// `Ω_m(n)`: entry `(r, r')` is 1 iff `r ≡ -r' mod 2n` and `r ≡ r' mod 2m/n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaMatrix {
    m: u64,
    n: u64,
}

impl OmegaMatrix {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if n == 0 || !m.is_multiple_of(n) {
            return Err(Error::LevelMismatch { n, m });
        }
        Ok(OmegaMatrix { m, n })
    }

    pub fn get(&self, r: i64, r2: i64) -> u8 {
        let (m, n) = (self.m as i64, self.n as i64);
        u8::from((r + r2).rem_euclid(2 * n) == 0 && (r - r2).rem_euclid(2 * m / n) == 0)
    }

    pub fn dense(&self) -> Vec<Vec<u8>> {
        let s = 2 * self.m as i64;
        (0..s).map(|r| (0..s).map(|c| self.get(r, c)).collect()).collect()
    }
}

/// `φ·a`: `C'(D, r) = C(D, r·a)` (`a` is its own inverse in `O_m`).
pub fn ez_apply(t: &CoeffTable, a: i64) -> Result<CoeffTable> {
    let m = t.m;
    if (a * a - 1).rem_euclid(4 * m) != 0 {
        return Err(Error::NotInOm { a, m: m as u64 });
    }
    let mut out = CoeffTable::new(m as u64, t.parity);
    for f in 0..=m {
        if let Some(s) = t.known_span(f * a) {
            out.set_known(f, s);
        }
    }
    for (d, r, v) in t.entries() {
        let r2 = (r * a).rem_euclid(2 * m);
        if r2 <= m {
            out.set(d, r2, v)?;
        }
    }
    Ok(out)
}

/// `P^α φ = |O_m|^{-1} Σ_a α(a) φ·a`.
pub fn project_alpha(t: &CoeffTable, alpha: &Character) -> Result<CoeffTable> {
    let g = om_group(t.index());
    let size = g.elements().len() as i64;
    let images = g
        .elements()
        .iter()
        .map(|&a| Ok((CycNum::from_ratio(g.char_value(alpha, a)? as i64, size), ez_apply(t, a)?)))
        .collect::<Result<Vec<_>>>()?;
    let terms: Vec<(CycNum, &CoeffTable)> = images.iter().map(|(c, x)| (c.clone(), x)).collect();
    Ok(CoeffTable::combine(t.index(), t.parity, &terms))
}

/// `ε_D(d) = g·((D/g²)/(d/g²))` when `(d, D) = g²` and `D/g² ≡ 0, 1 mod 4`,
/// otherwise 0.
pub fn epsilon(d_disc: i64, d: i64) -> i64 {
    let g2 = d.gcd(&d_disc);
    let Some(g) = exact_sqrt(g2) else { return 0 };
    let q = d_disc / g2;
    if !matches!(q.rem_euclid(4), 0 | 1) {
        return 0;
    }
    g * kronecker_unchecked(q, d / g2) as i64
}

/// `d^e` as an exact rational.
fn int_pow(d: i64, e: i64) -> CycNum {
    if e >= 0 {
        CycNum::from_int(d.pow(e as u32))
    } else {
        CycNum::from_ratio(1, d.pow((-e) as u32))
    }
}

/// The unique `r' mod 2m` with `nr ≡ dr' mod 2m(n,d)` and `(nr)² ≡ (dr')² mod 4m`.
fn hecke_partner(m: i64, n: i64, d: i64, r: i64) -> Option<i64> {
    let g = n.gcd(&d);
    (0..2 * m).find(|&r2| {
        (n * r - d * r2).rem_euclid(2 * m * g) == 0
            && ((n * r) * (n * r) - (d * r2) * (d * r2)).rem_euclid(4 * m) == 0
    })
}

/// Hecke operator `T_n` for `(n, m) = 1` on weight-`k` coefficients.
pub fn hecke_tn(t: &CoeffTable, n: u64, k: i64) -> Result<CoeffTable> {
    let m = t.m;
    if n.gcd(&(m as u64)) != 1 {
        return Err(Error::LevelNotCoprime { n, m: m as u64 });
    }
    let n = n as i64;
    let n2 = n * n;
    let ds: Vec<i64> = divisors(n2 as u64).into_iter().map(|d| d as i64).collect();
    let mut out = CoeffTable::new(m as u64, t.parity);
    // partner[f][i] = source residue for output residue f and divisor ds[i]
    let mut partner: BTreeMap<(i64, i64), Option<i64>> = BTreeMap::new();
    for f in 0..=m {
        let mut span = Some(Span::ALL);
        for &d in &ds {
            let p = hecke_partner(m, n, d, f);
            partner.insert((f, d), p);
            if let Some(r2) = p {
                span = match (span, t.known_span(r2)) {
                    (Some(s), Some(src)) => Some(s.intersect(&src.pull_back(n2, d * d))),
                    _ => None,
                };
            }
        }
        if let Some(s) = span {
            out.set_known(f, s);
        }
    }
    let mut keys = BTreeSet::new();
    for (d_src, _, _) in t.entries() {
        for &d in &ds {
            if (d_src * d * d) % n2 == 0 {
                let dd = d_src * d * d / n2;
                for f in 0..=m {
                    if out.is_admissible(dd, f) && out.is_known(dd, f) {
                        keys.insert((dd, f));
                    }
                }
            }
        }
    }
    for (dd, f) in keys {
        let mut acc = CycNum::zero();
        for &d in &ds {
            if (n2 * dd) % (d * d) != 0 {
                continue;
            }
            let Some(r2) = partner[&(f, d)] else { continue };
            let eps = epsilon(dd, d);
            if eps == 0 {
                continue;
            }
            let c = t.get(n2 * dd / (d * d), r2)?;
            if !c.is_zero() {
                acc += &(&(&int_pow(d, k - 2) * &CycNum::from_int(eps)) * &c);
            }
        }
        out.set(dd, f, acc)?;
    }
    Ok(out)
}

/// `U_d`: index `md²`, `C'(D, r) = C(D/d², r/d)` when `d | r`, else 0.
pub fn hecke_ud(t: &CoeffTable, d: u64) -> Result<CoeffTable> {
    let m = t.m;
    let d = d as i64;
    let m2 = m * d * d;
    let mut out = CoeffTable::new(m2 as u64, t.parity);
    for f in 0..=m2 {
        if f % d != 0 {
            out.set_known(f, Span::ALL);
        } else if let Some(s) = t.known_span(f / d) {
            out.set_known(f, s.pull_back(1, d * d));
        }
    }
    for (dd, r, v) in t.entries() {
        for j in 0..d {
            let r2 = d * (r + 2 * m * j);
            let r2 = r2.rem_euclid(2 * m2);
            if r2 <= m2 {
                out.set(dd * d * d, r2, v.clone())?;
            }
        }
    }
    Ok(out)
}

/// `V_ℓ`: index `mℓ`, `C'(D, r) = Σ_{d | ((r²-D)/4mℓ, r, ℓ)} d^{k-1} C(D/d², r/d)`.
pub fn hecke_vl(t: &CoeffTable, l: u64, k: i64) -> Result<CoeffTable> {
    let m = t.m;
    let l = l as i64;
    let ml = m * l;
    let mut out = CoeffTable::new(ml as u64, t.parity);
    let ls: Vec<i64> = divisors(l as u64).into_iter().map(|d| d as i64).collect();
    for f in 0..=ml {
        let mut span = Some(Span::ALL);
        for &d in &ls {
            if f % d != 0 {
                continue;
            }
            span = match (span, t.known_span(f / d)) {
                (Some(s), Some(src)) => Some(s.intersect(&src.pull_back(1, d * d))),
                _ => None,
            };
        }
        if let Some(s) = span {
            out.set_known(f, s);
        }
    }
    let mut keys = BTreeSet::new();
    for (dd, r, _) in t.entries() {
        for &d in &ls {
            for j in 0..(l / d) {
                let r2 = (d * r + 2 * m * d * j).rem_euclid(2 * ml);
                let d2 = dd * d * d;
                if r2 <= ml && out.is_admissible(d2, r2) && out.is_known(d2, r2) {
                    keys.insert((d2, r2));
                }
            }
        }
    }
    for (dd, f) in keys {
        let nn = (f * f - dd) / (4 * ml);
        let g = nn.gcd(&f).gcd(&l);
        let mut acc = CycNum::zero();
        for d in divisors(g as u64) {
            let d = d as i64;
            if dd % (d * d) != 0 {
                continue;
            }
            let c = t.get(dd / (d * d), f / d)?;
            if !c.is_zero() {
                acc += &(&int_pow(d, k - 1) * &c);
            }
        }
        out.set(dd, f, acc)?;
    }
    Ok(out)
}

/// Skoruppa–Zagier lift `S_{D,r}` for fundamental `D`: the coefficient of
/// `q^n` is `Σ_{d|n} d^{k-2} (D/d) C(n²D/d², nr/d)` for `1 ≤ n < order`.
/// The constant term is not computed and is left at zero.
pub fn sz_lift(t: &CoeffTable, disc: i64, r: i64, k: i64, order: i64) -> Result<QSeries> {
    if !is_fundamental(disc) {
        return Err(Error::NotFundamental(disc));
    }
    if !t.is_admissible(disc, r) {
        return Err(Error::Invalid(format!(
            "D = {disc} is not r^2 mod {} for r = {r}",
            4 * t.m
        )));
    }
    let mut terms = Vec::new();
    for n in 1..order.max(1) {
        let mut acc = CycNum::zero();
        for d in divisors(n as u64) {
            let d = d as i64;
            let chi = kronecker_unchecked(disc, d);
            if chi == 0 {
                continue;
            }
            let c = t.get(n * n / (d * d) * disc, n / d * r)?;
            if !c.is_zero() {
                acc += &(&(&int_pow(d, k - 2) * &CycNum::from_int(chi as i64)) * &c);
            }
        }
        terms.push((n, acc));
    }
    Ok(QSeries::from_terms(1, terms, Some(order.max(1))))
}

/// The theta-type kernel `σ̂ = Σ_{r,r'} θ̄¹_{m,r} Ω_{r,r'} θ_{m,r'}` built from
/// `Ω = Σ d_i Ω_m(n_i)`.
#[derive(Clone, Debug)]
pub struct ShadowKernel {
    pub m: u64,
    pub omega_combo: Vec<(u64, i64)>,
    pub table: CoeffTable,
}

impl ShadowKernel {
    /// The dense matrix `Σ d_i Ω_m(n_i)`.
    pub fn omega(&self) -> Vec<Vec<i64>> {
        omega_combo(self.m, &self.omega_combo)
    }
}

fn omega_combo(m: u64, combo: &[(u64, i64)]) -> Vec<Vec<i64>> {
    let s = 2 * m as usize;
    let mut out = vec![vec![0i64; s]; s];
    for &(n, d) in combo {
        let om = OmegaMatrix { m, n };
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x += d * om.get(i as i64, j as i64) as i64;
            }
        }
    }
    out
}

/// Builds `σ̂` for the principal modulus `e` at level `m`, recording
/// `C(k², r) = Σ_{r'} θ¹coef(k, r') Ω_{r', r}` for all `D ≤ depth`.
pub fn shadow_kernel(e: &EtaQuotient, m: u64, depth: i64) -> Result<ShadowKernel> {
    for &(n, _) in e.factors() {
        if !m.is_multiple_of(n) {
            return Err(Error::LevelMismatch { n, m });
        }
    }
    let combo = e.factors().to_vec();
    let om = omega_combo(m, &combo);
    let mi = m as i64;
    let mut table = CoeffTable::new(m, -1);
    for f in 0..=mi {
        table.set_known(f, Span::new(None, Some(depth)));
    }
    let mut k = 1i64;
    while k * k <= depth {
        let a = k.rem_euclid(2 * mi) as usize;
        let b = (-k).rem_euclid(2 * mi) as usize;
        if a != b {
            for f in 0..=mi {
                let v = k * (om[a][f as usize] - om[b][f as usize]);
                if v != 0 {
                    table.set(k * k, f, CycNum::from_int(v))?;
                }
            }
        }
        k += 1;
    }
    Ok(ShadowKernel {
        m,
        omega_combo: combo,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2() -> ShadowKernel {
        shadow_kernel(&"1^24/2^24".parse().unwrap(), 2, 400).unwrap()
    }

    #[test]
    fn nullwert_examples() {
        let s = theta_nullwert(1, 0, 1, 10);
        assert_eq!(s, QSeries::from_dense(0, &[1i64, 2, 0, 0, 2, 0, 0, 0, 0, 2]).truncate(crate::series::exp(10, 1)));
        assert!(theta_nullwert(2, 2, 2, 20).is_zero());
        let s = theta_nullwert(2, 1, 2, 8);
        let c: Vec<i64> = s.terms().map(|(_, c)| c.as_integer().unwrap().try_into().unwrap()).collect();
        assert_eq!(c, vec![1, -3, 5, -7]);
    }

    #[test]
    fn om_examples() {
        let g = om_group(6);
        assert_eq!(g.exact_divisors(), &[1, 2, 3, 6]);
        assert_eq!((g.a_of(2), g.a_of(3), g.a_of(6)), (Some(7), Some(5), Some(11)));
        assert_eq!(om_group(1).elements(), &[1]);
        assert_eq!(om_group(30).a_of(15), Some(29));
        for m in 1..60u64 {
            let g = om_group(m);
            for &n in g.exact_divisors() {
                for &n2 in g.exact_divisors() {
                    let ab = g.mul(g.a_of(n).unwrap(), g.a_of(n2).unwrap());
                    assert_eq!(Some(ab), g.a_of(star(n, n2)));
                }
            }
            assert_eq!(g.elements().len(), 1 << factorize(m).len());
        }
    }

    #[test]
    fn shadow_t2() {
        let s = t2();
        assert_eq!(s.table.get(1, 1).unwrap(), CycNum::from_int(48));
        assert_eq!(s.table.get(1, 3).unwrap(), CycNum::from_int(-48));
        assert!(s.table.get(2, 1).unwrap().is_zero());
        assert!(s.table.get(16, 0).unwrap().is_zero());
        assert!(matches!(s.table.get(441, 1), Err(Error::InsufficientDepth { .. })));
    }

    #[test]
    fn lift_t2() {
        let s = t2();
        let lift = sz_lift(&s.table, 1, 1, 2, 5).unwrap();
        let c: Vec<i64> = (1..5)
            .map(|n| lift.coeff_int(n).as_integer().unwrap().try_into().unwrap())
            .collect();
        assert_eq!(c, vec![48, 48, 192, 48]);
        assert!(matches!(sz_lift(&s.table, 4, 0, 2, 3), Err(Error::NotFundamental(4))));
    }

    #[test]
    fn hecke_identities() {
        let s = t2().table;
        assert_eq!(hecke_tn(&s, 1, 2).unwrap(), s);
        assert!(matches!(hecke_tn(&s, 2, 2), Err(Error::LevelNotCoprime { .. })));
        assert_eq!(hecke_ud(&s, 1).unwrap(), s);
        assert_eq!(hecke_vl(&s, 1, 2).unwrap(), s);
        let u = hecke_ud(&s, 2).unwrap();
        assert!(u.entries().iter().all(|&(_, r, _)| r % 2 == 0));
        for l in 1..6 {
            let v = hecke_vl(&s, l, 2).unwrap();
            assert_eq!(v.get(1, 1).unwrap(), s.get(1, 1).unwrap());
        }
        let t3 = hecke_tn(&s, 3, 2).unwrap();
        let t5 = hecke_tn(&s, 5, 2).unwrap();
        let t15 = hecke_tn(&s, 15, 2).unwrap();
        let a = hecke_tn(&t3, 5, 2).unwrap();
        let b = hecke_tn(&t5, 3, 2).unwrap();
        assert_eq!(a.first_disagreement(&t15), None);
        assert_eq!(b.first_disagreement(&t15), None);
    }

    #[test]
    fn epsilon_d1() {
        assert_eq!((1..=4).map(|d| epsilon(1, d)).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        assert_eq!(epsilon(-4, 2), 0);
        assert_eq!(epsilon(-4, 4), 0);
        assert_eq!(epsilon(-4, 3), -1);
        assert_eq!(epsilon(-3, 4), 1);
    }

    #[test]
    fn ez_and_projection() {
        let e: EtaQuotient = "1^4 2^4/3^4 6^4".parse().unwrap();
        let s = shadow_kernel(&e, 6, 400).unwrap().table;
        let fixed = ez_apply(&s, 7).unwrap();
        assert_eq!(fixed.first_disagreement(&s), None);
        assert_eq!(ez_apply(&s, 1).unwrap(), s);
        let g = om_group(6);
        for chi in g.characters() {
            let p = project_alpha(&s, &chi).unwrap();
            assert_eq!(project_alpha(&p, &chi).unwrap(), p);
            for other in g.characters() {
                if other != chi {
                    let z = project_alpha(&p, &other).unwrap();
                    assert!(z.entries().is_empty());
                }
            }
        }
        assert!(ez_apply(&s, 3).is_err());
    }
}
