//! Sparse truncated series in fractional powers of `q`.
//!
//! A [`QSeries`] stores exponents as integer numerators over a per-series
//! denominator `N`, so the term `c·q^{k/N}` is the map entry `k ↦ c`. The
//! optional `order` numerator bounds the window of known coefficients: every
//! coefficient with exponent numerator below `order` is known (absent means
//! zero), nothing above is claimed. `order = None` marks an exact finite sum.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// Exact rational exponent.
pub type Exp = Ratio<i64>;

pub fn exp(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    denom: i64,
    order: Option<i64>,
    coeffs: BTreeMap<i64, CycNum>,
}

impl QSeries {
    /// The exact zero series.
    pub fn zero() -> Self {
        QSeries {
            denom: 1,
            order: None,
            coeffs: BTreeMap::new(),
        }
    }

    /// The exact series `1`.
    pub fn one() -> Self {
        QSeries::monomial(CycNum::one(), Exp::zero())
    }

    /// Zero known only for exponents below `order`, i.e. `O(q^order)`.
    pub fn big_o(order: Exp) -> Self {
        QSeries {
            denom: *order.denom(),
            order: Some(*order.numer()),
            coeffs: BTreeMap::new(),
        }
    }

    /// The exact monomial `c·q^e`.
    pub fn monomial(c: CycNum, e: Exp) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(*e.numer(), c);
        }
        QSeries {
            denom: *e.denom(),
            order: None,
            coeffs,
        }
        .normalized()
    }

    /// Builds a series from `(numerator, coefficient)` pairs over `denom`,
    /// with optional truncation numerator. Terms at or beyond the window are
    /// dropped and repeated exponents are summed.
    pub fn from_terms<I>(denom: i64, terms: I, order: Option<i64>) -> Self
    where
        I: IntoIterator<Item = (i64, CycNum)>,
    {
        assert!(denom > 0, "exponent denominator must be positive");
        let mut coeffs: BTreeMap<i64, CycNum> = BTreeMap::new();
        for (k, c) in terms {
            if order.is_some_and(|o| k >= o) {
                continue;
            }
            match coeffs.get_mut(&k) {
                Some(v) => *v += &c,
                None => {
                    coeffs.insert(k, c);
                }
            }
        }
        QSeries {
            denom,
            order,
            coeffs,
        }
        .normalized()
    }

    /// Integer-exponent series from a dense slice starting at `q^start`,
    /// known below `q^{start + len}`.
    pub fn from_dense<T: Into<CycNum> + Clone>(start: i64, vals: &[T]) -> Self {
        QSeries::from_terms(
            1,
            vals.iter()
                .enumerate()
                .map(|(i, v)| (start + i as i64, v.clone().into())),
            Some(start + vals.len() as i64),
        )
    }

    fn normalized(mut self) -> Self {
        self.coeffs.retain(|_, c| !c.is_zero());
        let mut g = self.denom;
        for k in self.coeffs.keys() {
            g = g.gcd(k);
            if g == 1 {
                break;
            }
        }
        if let Some(o) = self.order {
            g = g.gcd(&o);
        }
        if g > 1 {
            self.denom /= g;
            self.order = self.order.map(|o| o / g);
            self.coeffs = std::mem::take(&mut self.coeffs)
                .into_iter()
                .map(|(k, c)| (k / g, c))
                .collect();
        }
        self
    }

    /// Re-expresses exponents over denominator `n`, a multiple of `denom`.
    fn lifted(&self, n: i64) -> (Option<i64>, BTreeMap<i64, CycNum>) {
        let s = n / self.denom;
        debug_assert_eq!(n % self.denom, 0);
        let coeffs = self.coeffs.iter().map(|(k, c)| (k * s, c.clone())).collect();
        (self.order.map(|o| o * s), coeffs)
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Truncation bound as an exponent; `None` for exact series.
    pub fn order(&self) -> Option<Exp> {
        self.order.map(|o| Exp::new(o, self.denom))
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Lowest exponent numerator present, or the order when no term is known.
    pub fn lo(&self) -> Option<i64> {
        self.coeffs.keys().next().copied().or(self.order)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Exp> {
        self.coeffs
            .keys()
            .next()
            .map(|&k| Exp::new(k, self.denom))
    }

    /// Leading term `(exponent, coefficient)`.
    pub fn leading(&self) -> Option<(Exp, &CycNum)> {
        self.coeffs
            .iter()
            .next()
            .map(|(&k, c)| (Exp::new(k, self.denom), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether the coefficient at `e` lies inside the known window.
    pub fn is_known(&self, e: Exp) -> bool {
        match self.order() {
            None => true,
            Some(o) => e < o,
        }
    }

    /// Coefficient at exponent `e` (zero when absent). Callers check
    /// [`QSeries::is_known`] when `e` may lie beyond the window.
    pub fn coeff(&self, e: Exp) -> CycNum {
        let scaled = e * self.denom;
        if !scaled.is_integer() {
            return CycNum::zero();
        }
        self.coeffs
            .get(&scaled.to_integer())
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient at an integer exponent.
    pub fn coeff_int(&self, n: i64) -> CycNum {
        self.coeff(Exp::from_integer(n))
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp, &CycNum)> + '_ {
        let d = self.denom;
        self.coeffs.iter().map(move |(&k, c)| (Exp::new(k, d), c))
    }

    /// Raw `(numerator, coefficient)` pairs over [`QSeries::denom`].
    pub fn raw_terms(&self) -> impl Iterator<Item = (i64, &CycNum)> + '_ {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    /// Narrows the window to exponents below `order`.
    pub fn truncate(&self, order: Exp) -> Self {
        let cur = self.order();
        let new = match cur {
            Some(o) if o <= order => return self.clone(),
            _ => order,
        };
        let n = self.denom.lcm(new.denom());
        let (_, coeffs) = self.lifted(n);
        let on = *new.numer() * (n / new.denom());
        QSeries::from_terms(n, coeffs.into_iter().filter(|(k, _)| *k < on), Some(on))
    }

    /// `self + rhs`; the window is the intersection of both windows.
    pub fn add(&self, rhs: &QSeries) -> QSeries {
        let n = self.denom.lcm(&rhs.denom);
        let (oa, mut acc) = self.lifted(n);
        let (ob, cb) = rhs.lifted(n);
        let order = min_order(oa, ob);
        for (k, c) in cb {
            match acc.get_mut(&k) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(k, c);
                }
            }
        }
        QSeries::from_terms(n, acc, order)
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            denom: self.denom,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &QSeries) -> QSeries {
        self.add(&rhs.neg())
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &CycNum) -> QSeries {
        QSeries {
            denom: self.denom,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
        .normalized()
    }

    /// Multiplies by `q^e`, shifting the window with it.
    pub fn shift(&self, e: Exp) -> QSeries {
        let n = self.denom.lcm(e.denom());
        let (o, coeffs) = self.lifted(n);
        let s = *e.numer() * (n / e.denom());
        QSeries::from_terms(
            n,
            coeffs.into_iter().map(|(k, c)| (k + s, c)),
            o.map(|o| o + s),
        )
    }

    /// Cauchy product over the sparse supports.
    pub fn mul(&self, rhs: &QSeries) -> QSeries {
        let n = self.denom.lcm(&rhs.denom);
        let (oa, ca) = self.lifted(n);
        let (ob, cb) = rhs.lifted(n);
        if (ca.is_empty() && oa.is_none()) || (cb.is_empty() && ob.is_none()) {
            return QSeries::zero();
        }
        // Valuation of a factor: its lowest term, or its order when empty.
        let va = ca.keys().next().copied().or(oa);
        let vb = cb.keys().next().copied().or(ob);
        let order = min_order(
            oa.map(|o| o + vb.expect("valuation")),
            ob.map(|o| o + va.expect("valuation")),
        );
        let mut acc: BTreeMap<i64, CycNum> = BTreeMap::new();
        for (i, x) in &ca {
            for (j, y) in &cb {
                let k = i + j;
                if order.is_some_and(|o| k >= o) {
                    break;
                }
                let p = x * y;
                match acc.get_mut(&k) {
                    Some(v) => *v += &p,
                    None => {
                        acc.insert(k, p);
                    }
                }
            }
        }
        QSeries::from_terms(n, acc, order)
    }

    /// Reciprocal. Requires a known nonzero leading term; the result is
    /// exact only for exact monomials.
    pub fn inverse(&self) -> Result<QSeries> {
        let (&v, c0) = self
            .coeffs
            .iter()
            .next()
            .ok_or(Error::NonInvertibleLeadingTerm)?;
        let c0inv = c0.inv();
        let rel = match self.order {
            Some(o) => o - v,
            None if self.coeffs.len() == 1 => {
                return Ok(QSeries {
                    denom: self.denom,
                    order: None,
                    coeffs: BTreeMap::from([(-v, c0inv)]),
                });
            }
            None => return Err(Error::Unbounded),
        };
        // Unit part u = self / (c0 q^v) = 1 + Σ u_j q^j.
        let u: Vec<(i64, CycNum)> = self
            .coeffs
            .iter()
            .skip(1)
            .map(|(&k, c)| (k - v, c * &c0inv))
            .collect();
        let mut g: BTreeMap<i64, CycNum> = BTreeMap::new();
        let mut pending: BTreeSet<i64> = BTreeSet::from([0]);
        while let Some(k) = pending.pop_first() {
            if k >= rel {
                break;
            }
            let mut val = if k == 0 { CycNum::one() } else { CycNum::zero() };
            for (j, uj) in &u {
                if *j > k {
                    break;
                }
                if let Some(gk) = g.get(&(k - j)) {
                    val -= &(uj * gk);
                }
            }
            if !val.is_zero() {
                for (j, _) in &u {
                    if k + j < rel {
                        pending.insert(k + j);
                    }
                }
                g.insert(k, val);
            }
        }
        Ok(QSeries::from_terms(
            self.denom,
            g.into_iter().map(|(k, c)| (k - v, &c * &c0inv)),
            Some(rel - v),
        ))
    }

    /// `self^e` for any integer `e`; negative powers go through
    /// [`QSeries::inverse`].
    pub fn pow(&self, e: i64) -> Result<QSeries> {
        if e == 0 {
            return Ok(QSeries::one());
        }
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QSeries::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Substitutes `q → q^t` for positive rational `t`.
    pub fn rescale(&self, t: Exp) -> QSeries {
        assert!(t > Exp::zero(), "rescale factor must be positive");
        let (p, d) = (*t.numer(), *t.denom());
        QSeries::from_terms(
            self.denom * d,
            self.coeffs.iter().map(|(&k, c)| (k * p, c.clone())),
            self.order.map(|o| o * p),
        )
    }

    /// Substitutes `τ → τ + s`: the coefficient at `q^x` gains `ex(s·x)`.
    pub fn half_shift(&self, s: Exp) -> QSeries {
        let (sn, sd) = (*s.numer(), *s.denom());
        QSeries {
            denom: self.denom,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| (k, c * &CycNum::root_of_unity(sn * k, sd * self.denom)))
                .collect(),
        }
        .normalized()
    }

    /// `f|[a;b]`: keeps the terms at exponents `≡ a mod b` and shifts them
    /// down by `a`.
    pub fn slice(&self, a: Exp, b: Exp) -> QSeries {
        assert!(b > Exp::zero(), "slice modulus must be positive");
        let n = self.denom.lcm(a.denom()).lcm(b.denom());
        let (o, coeffs) = self.lifted(n);
        let an = *a.numer() * (n / a.denom());
        let bn = *b.numer() * (n / b.denom());
        QSeries::from_terms(
            n,
            coeffs
                .into_iter()
                .filter(|(k, _)| (k - an).rem_euclid(bn) == 0)
                .map(|(k, c)| (k - an, c)),
            o.map(|o| o - an),
        )
    }

    /// Substitutes `q → -q` on an integer-exponent series, i.e. the
    /// half-shift by `1/2`.
    pub fn negate_q(&self) -> QSeries {
        self.half_shift(Exp::new(1, 2))
    }

    /// Multiplies by `(1 - c·q^e)`, exactly.
    pub fn mul_binomial(&self, c: &CycNum, e: Exp) -> QSeries {
        self.sub(&self.mul(&QSeries::monomial(c.clone(), e)))
    }

    /// Divides by `(1 - c·q^e)` for `e > 0`, using the recurrence
    /// `g_x = f_x + c·g_{x-e}`. The window is unchanged.
    pub fn div_binomial(&self, c: &CycNum, e: Exp) -> Result<QSeries> {
        assert!(e > Exp::zero(), "binomial exponent must be positive");
        let n = self.denom.lcm(e.denom());
        let (o, coeffs) = self.lifted(n);
        let o = o.ok_or(Error::Unbounded)?;
        let en = *e.numer() * (n / e.denom());
        let mut g: BTreeMap<i64, CycNum> = BTreeMap::new();
        let mut pending: BTreeSet<i64> = coeffs.keys().copied().collect();
        while let Some(k) = pending.pop_first() {
            if k >= o {
                break;
            }
            let mut val = coeffs.get(&k).cloned().unwrap_or_default();
            if let Some(prev) = g.get(&(k - en)) {
                val += &(c * prev);
            }
            if !val.is_zero() {
                if k + en < o {
                    pending.insert(k + en);
                }
                g.insert(k, val);
            }
        }
        Ok(QSeries::from_terms(n, g, Some(o)))
    }

    /// Compares two series on their common window. Returns the first
    /// exponent at which they differ.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<Exp> {
        let d = self.sub(other);
        d.valuation()
    }

    /// Common known window of two series.
    pub fn common_order(&self, other: &QSeries) -> Option<Exp> {
        match (self.order(), other.order()) {
            (None, o) | (o, None) => o,
            (Some(a), Some(b)) => Some(a.min(b)),
        }
    }

    /// Whether every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.coeffs.values().all(|c| c.is_rational())
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.as_integer().is_some())
    }
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

pub fn fmt_exp(e: Exp) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let cs = if c.is_rational() { cs } else { format!("({cs})") };
            if e.is_zero() {
                write!(f, "{cs}")?;
            } else if c.is_one() {
                write!(f, "q^{}", fmt_exp(e))?;
            } else {
                write!(f, "{cs}*q^{}", fmt_exp(e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(o) = self.order() {
            write!(f, " + O(q^{})", fmt_exp(o))?;
        }
        Ok(())
    }
}

impl Default for QSeries {
    fn default() -> Self {
        QSeries::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(start: i64, v: &[i64]) -> QSeries {
        QSeries::from_dense(start, v)
    }

    fn poly(terms: &[(i64, i64)]) -> QSeries {
        QSeries::from_terms(1, terms.iter().map(|&(k, c)| (k, CycNum::from_int(c))), None)
    }

    #[test]
    fn add_examples() {
        let s = poly(&[(-1, 1)]).add(&QSeries::one());
        assert_eq!(s, poly(&[(-1, 1), (0, 1)]));
        let f = ints(0, &[1, 2, 3]);
        assert_eq!(f.add(&QSeries::zero()), f);
        assert_eq!(poly(&[(0, 1), (1, -1)]).add(&poly(&[(1, 1)])), QSeries::one());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            poly(&[(-1, 1), (0, 1)]).mul(&poly(&[(1, 1)])),
            poly(&[(0, 1), (1, 1)])
        );
        let f = ints(0, &[1, 2, 3]);
        assert_eq!(f.mul(&QSeries::one()), f);
        assert_eq!(
            poly(&[(0, 1), (1, 1)]).mul(&poly(&[(0, 1), (1, -1)])),
            poly(&[(0, 1), (2, -1)])
        );
    }

    #[test]
    fn mul_window() {
        // (q + O(q^3)) * (1 + O(q^2)) = q + O(q^3)
        let a = ints(1, &[1, 0]);
        let b = ints(0, &[1, 0]);
        assert_eq!(a.mul(&b).order(), Some(Exp::from_integer(3)));
    }

    #[test]
    fn pow_examples() {
        let g = poly(&[(0, 1), (1, -1)]).truncate(exp(6, 1)).pow(-1).unwrap();
        assert_eq!(g, ints(0, &[1, 1, 1, 1, 1, 1]));
        assert_eq!(ints(0, &[3, 4]).pow(0).unwrap(), QSeries::one());
        assert_eq!(poly(&[(0, 1), (1, 1)]).pow(2).unwrap(), poly(&[(0, 1), (1, 2), (2, 1)]));
        assert!(matches!(
            QSeries::big_o(exp(3, 1)).pow(-1),
            Err(Error::NonInvertibleLeadingTerm)
        ));
    }

    #[test]
    fn inverse_of_shifted_series() {
        // (q^-1 - 1 + O(q^4))^-1 = q/(1 - q) = q + q^2 + ... known below q^6
        let a = ints(-1, &[1, -1, 0, 0, 0]);
        let inv = a.pow(-1).unwrap();
        assert_eq!(inv.order(), Some(exp(6, 1)));
        assert_eq!(inv, ints(0, &[0, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn rescale_examples() {
        assert_eq!(poly(&[(1, 1), (2, 1)]).rescale(exp(2, 1)), poly(&[(2, 1), (4, 1)]));
        let f = ints(0, &[1, 5]);
        assert_eq!(f.rescale(exp(1, 1)), f);
        let m = QSeries::monomial(CycNum::one(), exp(1, 8));
        assert_eq!(m.rescale(exp(4, 1)), QSeries::monomial(CycNum::one(), exp(1, 2)));
    }

    #[test]
    fn half_shift_examples() {
        assert_eq!(poly(&[(1, 1)]).half_shift(exp(1, 2)), poly(&[(1, -1)]));
        let f = poly(&[(0, 1), (2, 1)]);
        assert_eq!(f.half_shift(exp(1, 2)), f);
        let m = QSeries::monomial(CycNum::one(), exp(1, 3)).half_shift(exp(1, 2));
        assert_eq!(m, QSeries::monomial(CycNum::root_of_unity(1, 6), exp(1, 3)));
    }

    #[test]
    fn slice_examples() {
        let f = poly(&[(0, 1), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(f.slice(exp(0, 1), exp(2, 1)), poly(&[(0, 1), (2, 1)]));
        let g = QSeries::from_terms(
            24,
            [(-1, CycNum::one()), (23, CycNum::from_int(5))],
            None,
        );
        assert_eq!(g.slice(exp(-1, 24), exp(1, 1)), poly(&[(0, 1), (1, 5)]));
    }

    #[test]
    fn binomials() {
        let f = ints(0, &[1, 0, 0, 0, 0, 0, 0, 0]);
        let c = CycNum::one();
        let g = f.div_binomial(&c, exp(2, 1)).unwrap();
        assert_eq!(g, ints(0, &[1, 0, 1, 0, 1, 0, 1, 0]));
        assert_eq!(g.mul_binomial(&c, exp(2, 1)), f);
    }

    #[test]
    fn display() {
        let s = ints(-1, &[1, -24, 276]);
        assert_eq!(s.to_string(), "q^-1 + -24 + 276*q^1 + O(q^2)");
    }
}
