//! Quadratic forms, Heegner classes, genus characters and the twisted
//! Borcherds products `Ψ_{D,r}`, with an exact rational-function fit
//! against the principal modulus.

use std::fmt;

use num_integer::Integer;

use crate::arith::{gcd, is_fundamental, kronecker, kronecker_unchecked};
use crate::catalog::Lambency;
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::eta::eta_expand;
use crate::jacobi::CoeffTable;
use crate::series::{Exp, QSeries};

/// The integral binary quadratic form `Ax² + Bxy + Cy²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// `Q∘γ` for `γ = [[p, q], [r, s]]`, i.e. `(x, y) ↦ Q(px + qy, rx + sy)`.
    pub fn act(&self, [p, q, r, s]: [i64; 4]) -> QuadForm {
        QuadForm {
            a: self.eval(p, r),
            b: 2 * self.a * p * q + self.b * (p * s + q * r) + 2 * self.c * r * s,
            c: self.eval(q, s),
        }
    }

    pub fn content(&self) -> i64 {
        gcd(gcd(self.a, self.b), self.c)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// Reduced positive definite forms of discriminant `d < 0`
/// (`|b| ≤ a ≤ c`, `b ≥ 0` on the boundary), primitive or not.
pub fn reduced_forms(d: i64) -> Vec<QuadForm> {
    assert!(d < 0);
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            out.push(QuadForm::new(a, b, c));
        }
        a += 1;
    }
    out
}

/// Generator of the `SL₂(ℤ)` stabilizer of a reduced form, with its order.
fn level_one_stabilizer(q: &QuadForm) -> (Option<[i64; 4]>, usize) {
    if q.b == 0 && q.a == q.c {
        (Some([0, -1, 1, 0]), 4)
    } else if q.b == q.a && q.a == q.c {
        (Some([0, -1, 1, 1]), 6)
    } else {
        (None, 2)
    }
}

/// Points of `P¹(ℤ/m)`, each as its least representative up to units.
fn projective_line(m: i64) -> Vec<(i64, i64)> {
    let units: Vec<i64> = (1..=m).filter(|&u| gcd(u, m) == 1).collect();
    let norm = |x: i64, y: i64| {
        units
            .iter()
            .map(|&u| ((u * x).rem_euclid(m), (u * y).rem_euclid(m)))
            .min()
            .expect("at least one unit")
    };
    let mut pts: Vec<(i64, i64)> = (0..m)
        .flat_map(|x| (0..m).map(move |y| (x, y)))
        .filter(|&(x, y)| gcd(gcd(x, y), m) == 1)
        .map(|(x, y)| norm(x, y))
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

/// An element of `SL₂(ℤ)` whose first column reduces to `(x, y)` mod `m`.
fn lift_column(x: i64, y: i64, m: i64) -> [i64; 4] {
    for k in 0.. {
        for i in 0..=k {
            let (xx, yy) = (x + i * m, y + (k - i) * m);
            let e = xx.extended_gcd(&yy);
            if e.gcd == 1 {
                return [xx, -e.y, yy, e.x];
            }
        }
    }
    unreachable!()
}

/// A `Γ₀(m)`-class in `𝒬(m, D, r)` with its stabilizer order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegnerClass {
    pub form: QuadForm,
    pub stabilizer: usize,
}

/// One representative per `Γ₀(m)`-class of positive definite forms
/// `[A, B, C]` with `m | A`, `B ≡ r mod 2m` and `B² - 4AC = D`. Classes are
/// reached as `Q∘γ` for reduced level-one `Q` and cosets `γΓ₀(m)`; the
/// representative uses the least coset in each stabilizer orbit.
pub fn enumerate_heegner(m: u64, d: i64, r: i64) -> Vec<HeegnerClass> {
    let mi = m as i64;
    if d >= 0 || (d - r * r).rem_euclid(4 * mi) != 0 {
        return Vec::new();
    }
    let pts = projective_line(mi);
    let canon = |x: i64, y: i64| {
        pts.iter()
            .copied()
            .find(|&(px, py)| {
                (1..=mi).any(|u| {
                    gcd(u, mi) == 1
                        && ((u * px - x).rem_euclid(mi), (u * py - y).rem_euclid(mi)) == (0, 0)
                })
            })
            .expect("point of P1")
    };
    let mut out = Vec::new();
    for q in reduced_forms(d) {
        let (gen, order) = level_one_stabilizer(&q);
        let mut seen = std::collections::BTreeSet::new();
        for &(x, y) in &pts {
            if seen.contains(&(x, y)) {
                continue;
            }
            let mut orbit = vec![(x, y)];
            if let Some([p, qq, rr, s]) = gen {
                let (mut cx, mut cy) = (x, y);
                loop {
                    let next = canon(p * cx + qq * cy, rr * cx + s * cy);
                    if next == (x, y) {
                        break;
                    }
                    orbit.push(next);
                    (cx, cy) = next;
                }
            }
            orbit.sort();
            orbit.dedup();
            seen.extend(orbit.iter().copied());
            let g = lift_column(x, y, mi);
            let f = q.act(g);
            if f.a.rem_euclid(mi) == 0 && (f.b - r).rem_euclid(2 * mi) == 0 {
                out.push(HeegnerClass {
                    form: f,
                    stabilizer: order / orbit.len(),
                });
            }
        }
    }
    out
}

/// Degree of the divisor of `Ψ_{D,r}` seen from `T`: `Σ 4/|Γ₀(m)_Q|`,
/// rounded up.
pub fn heegner_degree(m: u64, d: i64, r: i64) -> usize {
    let twelfths: usize = enumerate_heegner(m, d, r)
        .iter()
        .map(|c| 48 / c.stabilizer)
        .sum();
    twelfths.div_ceil(12)
}

/// Default bound on values searched by `genus_char`.
pub const GENUS_SEARCH_BOUND: i64 = 10_000;

/// `χ_D(Q)` through the form `[A/n, B, Cn]` for a divisor `n | m`.
pub fn genus_char_via(q: &QuadForm, d: i64, m: u64, n: u64) -> Result<i8> {
    let (mi, ni) = (m as i64, n as i64);
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let disc = q.disc();
    if disc % d != 0 || !matches!((disc / d).rem_euclid(4), 0 | 1) {
        return Err(Error::BadDiscriminant(disc));
    }
    if q.a % mi != 0 || mi % ni != 0 {
        return Err(Error::Invalid(format!("{q} is not a level-{m} form for n = {n}")));
    }
    if gcd(gcd(q.a / mi, q.b), gcd(q.c, d)) != 1 {
        return Ok(0);
    }
    let f = QuadForm::new(q.a / ni, q.b, q.c * ni);
    let radius = (GENUS_SEARCH_BOUND as f64).sqrt() as i64;
    for k in 1..=radius {
        for x in -k..=k {
            for y in [-k, k] {
                for (x, y) in [(x, y), (y, x)] {
                    if gcd(x, y) != 1 {
                        continue;
                    }
                    let v = f.eval(x, y);
                    if v != 0 && v.abs() <= GENUS_SEARCH_BOUND && gcd(v, d) == 1 {
                        return kronecker(d, v);
                    }
                }
            }
        }
    }
    Err(Error::NoRepresentativeFound(GENUS_SEARCH_BOUND))
}

/// The generalized genus character `χ_D(Q)` of a level-`m` form.
pub fn genus_char(q: &QuadForm, d: i64, m: u64) -> Result<i8> {
    genus_char_via(q, d, m, 1)
}

/// Rejects `D` that is not a negative fundamental discriminant, and
/// `D = -3` at levels 7, 13 and 21.
pub fn check_discriminant(m: u64, d: i64) -> Result<()> {
    if !is_fundamental(d) || d >= 0 {
        return Err(Error::NotFundamental(d));
    }
    if d == -3 && matches!(m, 7 | 13 | 21) {
        return Err(Error::ExcludedDiscriminant { d, m });
    }
    Ok(())
}

/// `Ψ_{D,r} = Π_{n>0} Π_{b mod |D|} (1 - ex(b/D) qⁿ)^{(D/b)·C(Dn², rn)}`,
/// computed through its logarithm. The window ends where the table does.
pub fn psi_expand(table: &CoeffTable, d: i64, r: i64, order: i64) -> Result<QSeries> {
    let m = table.index();
    check_discriminant(m, d)?;
    if !table.is_admissible(d, r) {
        return Err(Error::Invalid(format!("D = {d} is not r^2 mod {} for r = {r}", 4 * m)));
    }
    let mut exps = vec![0i64];
    for n in 1..order {
        match table.get(d * n * n, r * n) {
            Ok(c) => exps.push(
                i64::try_from(c.as_integer().ok_or_else(|| {
                    Error::Invalid(format!("C({}, {}) = {c} is not an integer", d * n * n, r * n))
                })?)
                .map_err(|_| Error::Invalid("coefficient overflow".into()))?,
            ),
            Err(e) if n == 1 => return Err(e),
            Err(_) => break,
        }
    }
    let len = exps.len();
    let gauss: Vec<CycNum> = (0..len as i64)
        .map(|k| {
            let mut g = CycNum::zero();
            for b in 0..d.abs() {
                match kronecker_unchecked(d, b) {
                    1 => g += &CycNum::root_of_unity(b * k, d),
                    -1 => g -= &CycNum::root_of_unity(b * k, d),
                    _ => {}
                }
            }
            g
        })
        .collect();
    // log Ψ = -Σ_n C_n Σ_k G_k q^{nk} / k
    let mut log = vec![CycNum::zero(); len];
    for (n, &c) in exps.iter().enumerate().skip(1) {
        if c == 0 {
            continue;
        }
        for k in 1..len {
            if n * k >= len {
                break;
            }
            let t = &gauss[k] * &CycNum::from_ratio(-c, k as i64);
            log[n * k] += &t;
        }
    }
    Ok(QSeries::from_terms(1, exp_series(&log).into_iter().enumerate().map(|(i, c)| (i as i64, c)), Some(len as i64)))
}

/// `exp` of a power series with zero constant term.
fn exp_series(l: &[CycNum]) -> Vec<CycNum> {
    let mut f = vec![CycNum::zero(); l.len()];
    if f.is_empty() {
        return f;
    }
    f[0] = CycNum::one();
    for j in 1..l.len() {
        let mut acc = CycNum::zero();
        for i in 1..=j {
            if !l[i].is_zero() && !f[j - i].is_zero() {
                let t = &CycNum::from_int(i as i64) * &l[i];
                acc += &(&t * &f[j - i]);
            }
        }
        f[j] = &acc * &CycNum::from_ratio(1, j as i64);
    }
    f
}

/// A rational function `P(T)/Q(T)` fitted to a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFit {
    pub degree: usize,
    /// Coefficients of `P` and of monic `Q`, constant term first.
    pub p: Vec<CycNum>,
    pub q: Vec<CycNum>,
    /// Equations consumed by the solve and the further ones it reproduces.
    pub used: usize,
    pub surplus: usize,
    /// Smallest cyclotomic field containing the coefficients.
    pub field: String,
}

/// Incremental reduced row echelon form.
struct Echelon {
    cols: usize,
    rows: Vec<(usize, Vec<CycNum>)>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new() }
    }

    /// Adds an equation; returns whether the rank grew.
    fn push(&mut self, mut v: Vec<CycNum>) -> bool {
        for (pc, row) in &self.rows {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inv();
        v.iter_mut().for_each(|x| *x = &*x * &inv);
        for (_, row) in self.rows.iter_mut() {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        self.rows.push((pc, v));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The kernel vector when the kernel is one-dimensional.
    fn kernel_vector(&self) -> Vec<CycNum> {
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        let free = (0..self.cols).find(|c| !pivots.contains(c)).expect("nontrivial kernel");
        let mut v = vec![CycNum::zero(); self.cols];
        v[free] = CycNum::one();
        for (pc, row) in &self.rows {
            v[*pc] = -&row[free];
        }
        v
    }
}

fn poly_in(coeffs: &[CycNum], powers: &[QSeries]) -> QSeries {
    coeffs
        .iter()
        .zip(powers)
        .fold(QSeries::zero(), |acc, (c, p)| acc.add(&p.scale(c)))
}

/// Finds `P, Q` of minimal degree `≤ max_deg` with `ψ·Q(T) = P(T)` on the
/// known window, solving with as few equations as pin the solution and
/// checking all remaining ones.
pub fn fit_rational(psi: &QSeries, t: &QSeries, max_deg: usize) -> Result<RationalFit> {
    let window = psi.order().ok_or(Error::Unbounded)?;
    if !window.is_integer() || psi.denom() != 1 || t.denom() != 1 {
        return Err(Error::Invalid("fit needs integral exponents".into()));
    }
    let have = window.to_integer().max(0) as usize;
    for d in 0..=max_deg {
        let cols = 2 * d + 2;
        if have < cols {
            return Err(Error::Underdetermined { have, need: cols, deg: d });
        }
        let mut powers = vec![QSeries::one()];
        for i in 1..=d {
            let next = powers[i - 1].mul(t);
            powers.push(next);
        }
        let trunc = window - Exp::from_integer(d as i64);
        let psi_pow: Vec<QSeries> = powers.iter().map(|p| psi.mul(p).truncate(trunc)).collect();
        let t_pow: Vec<QSeries> = powers.iter().map(|p| p.truncate(trunc)).collect();
        if t_pow.iter().chain(&psi_pow).any(|s| s.order().is_some_and(|o| o < trunc)) {
            return Err(Error::Invalid("principal modulus known to too low an order".into()));
        }
        let mut ech = Echelon::new(cols);
        let mut used = None;
        let mut consistent = true;
        for k in 0..have {
            let e = Exp::from_integer(k as i64 - d as i64);
            let mut row: Vec<CycNum> = t_pow.iter().map(|p| -p.coeff(e)).collect();
            row.extend(psi_pow.iter().map(|p| p.coeff(e)));
            if ech.push(row) {
                if ech.rank() == cols {
                    consistent = false;
                    break;
                }
                if ech.rank() == cols - 1 {
                    used = Some(k + 1);
                }
            }
        }
        if !consistent {
            continue;
        }
        let Some(used) = used else {
            return Err(Error::Underdetermined { have, need: cols, deg: d });
        };
        let v = ech.kernel_vector();
        let (p, q) = v.split_at(d + 1);
        let top = q
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(Error::NoSolutionWithinDegree(d))?;
        let inv = q[top].inv();
        let p: Vec<CycNum> = p.iter().map(|c| c * &inv).collect();
        let q: Vec<CycNum> = q[..=top].iter().map(|c| c * &inv).collect();
        let residual = psi.mul(&poly_in(&q, &powers)).sub(&poly_in(&p, &powers)).truncate(trunc);
        if !residual.is_zero() {
            return Err(Error::Invalid(format!("fit residual nonzero at degree {d}")));
        }
        let conductor = p.iter().chain(&q).map(|c| c.conductor()).max().unwrap_or(1);
        let field = CycNum::root_of_unity(1, conductor as i64).field_label();
        return Ok(RationalFit {
            degree: d,
            p,
            q,
            used,
            surplus: have - used,
            field: if conductor <= 2 { "Q".into() } else { field },
        });
    }
    Err(Error::NoSolutionWithinDegree(max_deg))
}

/// Outcome of the full pipeline for one `(ℓ, D, r)`.
#[derive(Clone, Debug)]
pub struct BorcherdsCase {
    pub lambency: String,
    pub d: i64,
    pub r: i64,
    pub window: usize,
    pub degree_bound: usize,
    pub fit: RationalFit,
}

/// Expands `Ψ^(ℓ)_{D,r}` from `table` and fits it against `T^(ℓ)` with the
/// Heegner degree (or `max_deg`) as bound.
pub fn borcherds_case(
    l: &Lambency,
    table: &CoeffTable,
    d: i64,
    r: i64,
    max_deg: Option<usize>,
) -> Result<BorcherdsCase> {
    let psi = psi_expand(table, d, r, 1000)?;
    let window = psi.order().map_or(0, |o| o.to_integer() as usize);
    let bound = max_deg.unwrap_or_else(|| heegner_degree(l.m, d, r));
    let t = eta_expand(&l.eta, window as i64 + bound as i64 + 1);
    let fit = fit_rational(&psi, &t, bound)?;
    Ok(BorcherdsCase {
        lambency: l.symbol.clone(),
        d,
        r,
        window,
        degree_bound: bound,
        fit,
    })
}

/// `(ℓ, D, r)` triples whose products are determined by the printed tables
/// far enough to overdetermine the fit.
pub const FIXTURE_CASES: &[(&str, i64, i64)] = &[
    ("6+2", -8, 4),
    ("10+2", -4, 6),
    ("15+5", -11, 7),
    ("18+2", -8, 8),
    ("28+7", -7, 21),
    ("30+3,5,15", -15, 15),
    ("33+11", -8, 16),
    ("33+11", -11, 11),
    ("78+6,26,39", -23, 17),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn fixture(sym: &str) -> (&'static Lambency, &'static CoeffTable) {
        let l = lookup(sym).unwrap();
        (l, l.fixture.as_ref().unwrap())
    }

    /// `h(D)` from the class number formula `-(1/|D|) Σ a (D/a)`.
    fn class_number(d: i64) -> i64 {
        let s: i64 = (1..-d).map(|a| a * kronecker_unchecked(d, a) as i64).sum();
        -s / -d
    }

    #[test]
    fn heegner_counts() {
        assert_eq!(enumerate_heegner(1, -4, 0).len(), 1);
        assert_eq!(enumerate_heegner(1, -4, 0)[0].stabilizer, 4);
        for d in [-7, -15, -23, -31, -39, -47, -71] {
            assert_eq!(enumerate_heegner(1, d, 1).len() as i64, class_number(d), "{d}");
            for m in [2u64, 3, 5, 6, 10] {
                if gcd(d, 4 * m as i64) != 1 {
                    continue;
                }
                for r in 0..2 * m as i64 {
                    if (d - r * r).rem_euclid(4 * m as i64) == 0 {
                        assert_eq!(enumerate_heegner(m, d, r).len() as i64, class_number(d));
                    }
                }
            }
        }
        assert!(enumerate_heegner(6, -8, 1).is_empty());
        for c in enumerate_heegner(6, -23, 1) {
            assert_eq!(c.form.a % 6, 0);
            assert_eq!((c.form.b - 1).rem_euclid(12), 0);
            assert_eq!(c.form.disc(), -23);
        }
    }

    #[test]
    fn heegner_counts_invariant_under_om() {
        for (m, d) in [(6u64, -23i64), (10, -31), (15, -11), (30, -71)] {
            let g = crate::jacobi::om_group(m);
            for r in 0..2 * m as i64 {
                if (d - r * r).rem_euclid(4 * m as i64) != 0 {
                    continue;
                }
                let base = enumerate_heegner(m, d, r).len();
                for &a in g.elements() {
                    assert_eq!(enumerate_heegner(m, d, r * a).len(), base, "m={m} r={r} a={a}");
                }
            }
        }
    }

    #[test]
    fn degrees_match_cases() {
        assert_eq!(heegner_degree(10, -4, 6), 1);
        assert_eq!(heegner_degree(6, -8, 4), 2);
        assert_eq!(heegner_degree(78, -23, 17), 6);
        assert_eq!(heegner_degree(30, -15, 15), 4);
        assert_eq!(heegner_degree(6, -20, 2), 4);
    }

    #[test]
    fn genus_character() {
        let q = QuadForm::new(1, 1, 1);
        assert_eq!(genus_char(&q, 1, 1).unwrap(), 1);
        // level-6 forms of discriminant -20·33, with B ≡ ±2·3 mod 12
        let mut checked = 0;
        for a in (6..=60).step_by(6) {
            for b in -60i64..=60 {
                let num = b * b + 660;
                if num % (4 * a) != 0 || (b.abs() - 6).rem_euclid(12) != 0 {
                    continue;
                }
                let f = QuadForm::new(a, b, num / (4 * a));
                let v = genus_char(&f, -20, 6).unwrap();
                for n in [2u64, 3, 6] {
                    assert_eq!(genus_char_via(&f, -20, 6, n).unwrap(), v, "{f} n={n}");
                }
                for g in [[1, 1, 0, 1], [1, 0, 6, 1], [5, 2, 12, 5], [1, -3, 6, -17]] {
                    assert_eq!(genus_char(&f.act(g), -20, 6).unwrap(), v, "{f}");
                }
                checked += 1;
            }
        }
        assert!(checked > 5);
        assert_eq!(genus_char(&QuadForm::new(30, 10, 5), -20, 6).unwrap(), 0);
        assert_eq!(genus_char(&q, -12, 1), Err(Error::NotFundamental(-12)));
    }

    #[test]
    fn psi_examples() {
        let (_, t) = fixture("6+2");
        let psi = psi_expand(t, -20, 2, 100).unwrap();
        assert_eq!(t.get(-20, 2).unwrap(), CycNum::from_int(16));
        assert_eq!(t.get(-80, 4).unwrap(), CycNum::from_int(80));
        assert!(psi.order().unwrap() >= Exp::from_integer(3));
        let empty = CoeffTable::new(6, -1);
        let mut zero = empty.clone();
        for r in 0..=6 {
            zero.set_known(r, crate::jacobi::Span::ALL);
        }
        assert_eq!(psi_expand(&zero, -20, 2, 10).unwrap(), QSeries::one().truncate(Exp::from_integer(10)));
        assert!(matches!(psi_expand(&empty, -20, 2, 10), Err(Error::InsufficientDepth { .. })));
        let (_, t21) = fixture("21+3");
        assert_eq!(
            psi_expand(t21, -3, 9, 10),
            Err(Error::ExcludedDiscriminant { d: -3, m: 21 })
        );
    }

    /// Direct product over `n` and `b`, an oracle for the exp-log route.
    fn psi_direct(t: &CoeffTable, d: i64, r: i64, len: i64) -> QSeries {
        let mut acc = QSeries::one().truncate(Exp::from_integer(len));
        for n in 1..len {
            let c = t.get(d * n * n, r * n).unwrap().as_integer().unwrap();
            let c = i64::try_from(c).unwrap();
            for b in 0..d.abs() {
                let e = kronecker_unchecked(d, b) as i64 * c;
                let z = CycNum::root_of_unity(b, d);
                for _ in 0..e.abs() {
                    acc = if e > 0 {
                        acc.mul_binomial(&z, Exp::from_integer(n))
                    } else {
                        acc.div_binomial(&z, Exp::from_integer(n)).unwrap()
                    };
                }
            }
        }
        acc
    }

    #[test]
    fn psi_matches_direct_product() {
        let (_, t) = fixture("6+2");
        let psi = psi_expand(t, -8, 4, 5).unwrap();
        assert_eq!(psi, psi_direct(t, -8, 4, 5));
        let (_, t) = fixture("15+5");
        let psi = psi_expand(t, -11, 7, 4).unwrap();
        assert_eq!(psi, psi_direct(t, -11, 7, 4));
    }

    #[test]
    fn psi_times_conjugate_is_one() {
        for &(sym, d, r) in FIXTURE_CASES {
            let (_, t) = fixture(sym);
            let psi = psi_expand(t, d, r, 1000).unwrap();
            let conj = QSeries::from_terms(
                1,
                psi.terms().map(|(e, c)| (e.to_integer(), c.conj())),
                psi.order().map(|o| o.to_integer()),
            );
            let prod = psi.mul(&conj);
            assert_eq!(prod, QSeries::one().truncate(psi.order().unwrap()), "{sym}");
        }
    }

    #[test]
    fn trivial_fits() {
        let l = lookup("6+2").unwrap();
        let t = eta_expand(&l.eta, 12);
        let f = fit_rational(&t.truncate(Exp::from_integer(8)), &t, 3).unwrap();
        assert_eq!(f.degree, 1);
        assert_eq!(f.p, vec![CycNum::zero(), CycNum::one()]);
        assert_eq!(f.q, vec![CycNum::one()]);
        let c = QSeries::monomial(CycNum::from_int(5), Exp::from_integer(0)).truncate(Exp::from_integer(6));
        let f = fit_rational(&c, &t, 3).unwrap();
        assert_eq!((f.degree, f.p.clone(), f.q.len()), (0, vec![CycNum::from_int(5)], 1));
        assert_eq!(f.field, "Q");
        let short = c.truncate(Exp::from_integer(1));
        assert!(matches!(fit_rational(&short, &t, 3), Err(Error::Underdetermined { .. })));
    }

    #[test]
    fn fixture_products_are_rational_in_t() {
        for &(sym, d, r) in FIXTURE_CASES {
            let (l, t) = fixture(sym);
            let case = borcherds_case(l, t, d, r, None).unwrap();
            assert!(case.fit.surplus >= 2, "{sym} {d} {r}: {:?}", case.fit);
            assert!(case.fit.degree <= case.degree_bound);
        }
    }

    #[test]
    fn fit_shapes() {
        // (window N + 1, degree, surplus) from an independent prototype
        let expect = [
            (7, 2, 2),
            (12, 1, 9),
            (10, 2, 5),
            (11, 2, 6),
            (15, 2, 10),
            (11, 4, 2),
            (16, 2, 11),
            (14, 2, 9),
            (17, 6, 4),
        ];
        for (&(sym, d, r), &(w, deg, surplus)) in FIXTURE_CASES.iter().zip(&expect) {
            let (l, t) = fixture(sym);
            let c = borcherds_case(l, t, d, r, None).unwrap();
            assert_eq!((c.window, c.fit.degree, c.fit.surplus), (w, deg, surplus), "{sym} {d} {r}");
        }
    }

    #[test]
    fn short_window_is_underdetermined() {
        let (l, t) = fixture("6+2");
        assert!(matches!(
            borcherds_case(l, t, -20, 2, None),
            Err(Error::Underdetermined { .. })
        ));
    }

    #[test]
    fn corrupted_product_has_no_fit() {
        let (l, t) = fixture("10+2");
        let psi = psi_expand(t, -4, 6, 1000).unwrap();
        let bad = psi.add(&QSeries::monomial(CycNum::one(), Exp::from_integer(8)));
        let tt = eta_expand(&l.eta, 20);
        assert!(matches!(fit_rational(&bad, &tt, 1), Err(Error::NoSolutionWithinDegree(1))));
    }
}
