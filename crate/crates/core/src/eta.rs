//! Dedekind eta quotients `Π η(n_i τ)^{d_i}`: expansion, logarithmic
//! derivative and the symbolic Fricke involution.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, factorize, sigma};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::series::{fmt_exp, Exp, QSeries};

/// A formal product `Π η(n_i τ)^{d_i}` with distinct `n_i`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EtaQuotient {
    factors: Vec<(u64, i64)>,
}

impl EtaQuotient {
    /// Builds a quotient, merging repeated `n` and dropping zero exponents.
    pub fn new<I: IntoIterator<Item = (u64, i64)>>(factors: I) -> Result<Self> {
        let mut map: BTreeMap<u64, i64> = BTreeMap::new();
        for (n, d) in factors {
            if n == 0 {
                return Err(Error::Invalid("eta factor index must be positive".into()));
            }
            *map.entry(n).or_default() += d;
        }
        Ok(EtaQuotient {
            factors: map.into_iter().filter(|&(_, d)| d != 0).collect(),
        })
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    /// Twice the weight, `Σ d_i`.
    pub fn twice_weight(&self) -> i64 {
        self.factors.iter().map(|&(_, d)| d).sum()
    }

    /// The weight `½ Σ d_i`.
    pub fn weight(&self) -> Exp {
        Exp::new(self.twice_weight(), 2)
    }

    /// Leading exponent `Σ n_i d_i / 24`.
    pub fn leading_exponent(&self) -> Exp {
        Exp::new(
            self.factors.iter().map(|&(n, d)| n as i64 * d).sum::<i64>(),
            24,
        )
    }

    /// Product of two quotients.
    pub fn times(&self, other: &EtaQuotient) -> EtaQuotient {
        EtaQuotient::new(self.factors.iter().chain(&other.factors).copied())
            .expect("factors already validated")
    }

    /// Coefficients `L_k` of `q d/dq log Π (q^{n_i}; q^{n_i})_∞^{d_i}` for
    /// `1 ≤ k < len` (index 0 unused).
    fn lambert(&self, len: usize) -> Vec<i64> {
        let mut l = vec![0i64; len];
        for &(n, d) in &self.factors {
            let n = n as usize;
            let mut j = 1;
            while n * j < len {
                l[n * j] -= d * n as i64 * sigma(j as u64) as i64;
                j += 1;
            }
        }
        l
    }

    /// Integer coefficients of `Π (q^{n_i}; q^{n_i})_∞^{d_i}` below `q^len`,
    /// from the recurrence `k f_k = Σ_{j ≤ k} L_j f_{k-j}`.
    pub fn product_coeffs(&self, len: usize) -> Vec<BigInt> {
        let l = self.lambert(len);
        let mut f: Vec<BigInt> = Vec::with_capacity(len);
        if len == 0 {
            return f;
        }
        f.push(BigInt::one());
        let nonzero: Vec<usize> = (1..len).filter(|&j| l[j] != 0).collect();
        for k in 1..len {
            let mut acc = BigInt::zero();
            for &j in &nonzero {
                if j > k {
                    break;
                }
                if !f[k - j].is_zero() {
                    acc += &f[k - j] * l[j];
                }
            }
            debug_assert!((&acc % k).is_zero());
            f.push(acc / k);
        }
        f
    }
}

impl fmt::Display for EtaQuotient {
    /// Paper shorthand, e.g. `1^4 2^4/3^4 6^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self
            .factors
            .iter()
            .filter(|&&(_, d)| d > 0)
            .map(|&(n, d)| format!("{n}^{d}"))
            .collect();
        let den: Vec<String> = self
            .factors
            .iter()
            .filter(|&&(_, d)| d < 0)
            .map(|&(n, d)| format!("{n}^{}", -d))
            .collect();
        match (num.is_empty(), den.is_empty()) {
            (true, true) => Ok(()),
            (_, true) => write!(f, "{}", num.join(" ")),
            (true, _) => write!(f, "1/{}", den.join(" ")),
            _ => write!(f, "{}/{}", num.join(" "), den.join(" ")),
        }
    }
}

impl FromStr for EtaQuotient {
    type Err = Error;

    /// Parses `1^24/2^24`, `1^4 2^4 / 3^4 6^4`, `1^4.2^4/3^4.6^4` or
    /// `1^1 2^-1`. A bare `n` means exponent 1; the empty string is the empty
    /// quotient.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::ParseError {
            line: 0,
            msg: format!("eta quotient {s:?}: {msg}"),
        };
        let mut parts = s.split('/');
        let num = parts.next().unwrap_or("");
        let den = parts.next();
        if parts.next().is_some() {
            return Err(bad("more than one '/'"));
        }
        let mut factors = Vec::new();
        for (chunk, sign) in [(num, 1i64), (den.unwrap_or(""), -1)] {
            for tok in chunk.split(|c: char| c.is_whitespace() || c == '.' || c == '*') {
                if tok.is_empty() {
                    continue;
                }
                let (n, d) = match tok.split_once('^') {
                    Some((n, d)) => (n, d),
                    None => (tok, "1"),
                };
                let n: u64 = n.trim().parse().map_err(|_| bad("bad index"))?;
                let d: i64 = d.trim().parse().map_err(|_| bad("bad exponent"))?;
                if n == 0 {
                    return Err(bad("index must be positive"));
                }
                factors.push((n, sign * d));
            }
        }
        EtaQuotient::new(factors)
    }
}

/// Expands the quotient: `q^{Σ n_i d_i/24} Π (q^{n_i}; q^{n_i})_∞^{d_i}`,
/// known for exponents below `order`.
pub fn eta_expand(e: &EtaQuotient, order: i64) -> QSeries {
    let lead = e.leading_exponent();
    let len = (Exp::from_integer(order) - lead).ceil().to_integer().max(0) as usize;
    let coeffs = e.product_coeffs(len);
    let (ln, ld) = (*lead.numer(), *lead.denom());
    QSeries::from_terms(
        ld,
        coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| (ln + k as i64 * ld, CycNum::from_bigint(c))),
        Some(ln + len as i64 * ld),
    )
    .truncate(Exp::from_integer(order))
}

/// `(1/2πi) d/dτ log` of the quotient, known below `q^order`:
/// `Σ n_i d_i/24 - Σ_i d_i Σ_k n_i k q^{n_i k}/(1 - q^{n_i k})`.
pub fn eta_dlog(e: &EtaQuotient, order: i64) -> QSeries {
    let len = order.max(0) as usize;
    let l = e.lambert(len);
    let lead = e.leading_exponent();
    let mut terms = Vec::with_capacity(len);
    if len > 0 {
        terms.push((0, CycNum::from_ratio(*lead.numer(), *lead.denom())));
    }
    for (k, &v) in l.iter().enumerate().skip(1) {
        terms.push((k as i64, CycNum::from_int(v)));
    }
    QSeries::from_terms(1, terms, Some(order.max(0)))
}

/// An exact positive scalar `c · Π p^{e_p/2}` with rational `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub rational: BigRational,
    /// Twice the exponent of each prime.
    pub half_powers: BTreeMap<u64, i64>,
}

impl Multiplier {
    pub fn one() -> Self {
        Multiplier {
            rational: BigRational::one(),
            half_powers: BTreeMap::new(),
        }
    }

    /// `(num/den)^{k/2}`.
    fn ratio_half_power(num: u64, den: u64, k: i64) -> Self {
        let mut m = Multiplier::one();
        for (p, e) in factorize(num) {
            *m.half_powers.entry(p).or_default() += k * e as i64;
        }
        for (p, e) in factorize(den) {
            *m.half_powers.entry(p).or_default() -= k * e as i64;
        }
        m.reduce()
    }

    /// Moves whole powers into the rational part.
    fn reduce(mut self) -> Self {
        let mut rest = BTreeMap::new();
        for (p, e) in std::mem::take(&mut self.half_powers) {
            let whole = e.div_euclid(2);
            let frac = e.rem_euclid(2);
            let pb = BigRational::from_integer(BigInt::from(p));
            if whole >= 0 {
                self.rational *= num_traits::pow(pb, whole as usize);
            } else {
                self.rational /= num_traits::pow(pb, (-whole) as usize);
            }
            if frac != 0 {
                rest.insert(p, frac);
            }
        }
        self.half_powers = rest;
        self
    }

    pub fn times(&self, other: &Multiplier) -> Multiplier {
        let mut hp = self.half_powers.clone();
        for (p, e) in &other.half_powers {
            *hp.entry(*p).or_default() += e;
        }
        Multiplier {
            rational: &self.rational * &other.rational,
            half_powers: hp,
        }
        .reduce()
    }

    pub fn scaled(&self, q: &BigRational) -> Multiplier {
        Multiplier {
            rational: &self.rational * q,
            half_powers: self.half_powers.clone(),
        }
    }

    /// The value when it is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.half_powers.is_empty().then_some(&self.rational)
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = self.rational.to_f64().unwrap_or(f64::NAN);
        for (p, e) in &self.half_powers {
            v *= (*p as f64).powf(*e as f64 / 2.0);
        }
        v
    }
}

impl fmt::Display for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.rational;
        let rs = if r.is_integer() {
            r.to_integer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        };
        if self.half_powers.is_empty() {
            return write!(f, "{rs}");
        }
        let rad: u64 = self.half_powers.keys().product();
        if r.is_one() {
            write!(f, "sqrt({rad})")
        } else if r.abs() == BigRational::one() {
            write!(f, "-sqrt({rad})")
        } else {
            write!(f, "{rs}*sqrt({rad})")
        }
    }
}

/// The Fricke image `e|W_m = multiplier · Π η((m/n_i) τ)^{d_i}`.
pub fn eta_fricke(e: &EtaQuotient, m: u64) -> Result<(EtaQuotient, Multiplier)> {
    let w = e.twice_weight();
    if w != 0 {
        return Err(Error::WeightNotZero(w));
    }
    let mut mult = Multiplier::one();
    let mut factors = Vec::new();
    for &(n, d) in e.factors() {
        if !m.is_multiple_of(n) {
            return Err(Error::LevelMismatch { n, m });
        }
        factors.push((m / n, d));
        mult = mult.times(&Multiplier::ratio_half_power(m / n, 1, d));
    }
    Ok((EtaQuotient::new(factors)?, mult))
}

/// Checks that `e · (e|W_m)` is constant to the given order and returns the
/// constant.
pub fn verify_fricke_constant(e: &EtaQuotient, m: u64, order: i64) -> Result<Multiplier> {
    let (image, mult) = eta_fricke(e, m)?;
    let product = e.times(&image);
    let series = eta_expand(&product, order);
    let mut constant = None;
    for (x, c) in series.terms() {
        if !x.is_zero() {
            return Err(Error::NotConstant(fmt_exp(x)));
        }
        constant = Some(c.clone());
    }
    let c = constant.ok_or_else(|| Error::NotConstant("0".into()))?;
    let c = c
        .as_rational()
        .cloned()
        .expect("eta products have integer coefficients");
    Ok(mult.scaled(&c))
}

/// Divisor helper exposed for oracles: `Σ_{d | n} d`.
pub fn divisor_sum(n: u64) -> u64 {
    divisors(n).iter().sum()
}
