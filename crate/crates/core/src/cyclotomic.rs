//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` of a primitive
//! `N`-th root of unity `ζ = ex(1/N)`, reduced modulo the cyclotomic polynomial.
//! Binary operations embed both operands into the field of conductor
//! `lcm(N₁, N₂)`. A value that turns out to be rational is stored with
//! conductor 1.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest conductor accepted by the field tables.
pub const MAX_CONDUCTOR: u64 = 4096;

/// Reduction data for one conductor.
#[derive(Debug)]
struct Field {
    phi: usize,
    /// `powers[k]` is `ζ^k` in the power basis, for `0 ≤ k < N`.
    powers: Vec<Vec<i64>>,
}

fn field(n: u64) -> Arc<Field> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("field cache poisoned").get(&n) {
        return f.clone();
    }
    let f = Arc::new(build_field(n));
    cache
        .lock()
        .expect("field cache poisoned")
        .entry(n)
        .or_insert(f)
        .clone()
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    let qlen = rem.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn] / lead;
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn build_field(n: u64) -> Field {
    let phi_poly = cyclotomic_poly(n);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by ζ and reduce using ζ^φ = -Σ c_i ζ^i
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * phi_poly[i];
            }
        }
    }
    Field { phi, powers }
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// An element of a cyclotomic field with exact rational coordinates.
#[derive(Clone, Debug)]
pub struct CycNum {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        CycNum::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        CycNum::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        CycNum::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        CycNum::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The root of unity `ex(num/den) = exp(2πi·num/den)`.
    pub fn root_of_unity(num: i64, den: i64) -> Self {
        assert!(den != 0, "root of unity with zero denominator");
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        let den = den as u64;
        assert!(den <= MAX_CONDUCTOR, "conductor {den} exceeds supported range");
        let k = num.rem_euclid(den as i64) as usize;
        let f = field(den);
        let coeffs = f.powers[k]
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        CycNum::normalized(den, coeffs)
    }

    /// Builds an element from power-basis coordinates for conductor `n`.
    pub fn from_coords(n: u64, coords: Vec<BigRational>) -> Self {
        assert!((1..=MAX_CONDUCTOR).contains(&n));
        let f = field(n);
        assert_eq!(coords.len(), f.phi, "coordinate vector must have length φ(N)");
        CycNum::normalized(n, coords)
    }

    fn normalized(n: u64, coeffs: Vec<BigRational>) -> Self {
        if n > 1 && coeffs.iter().skip(1).all(|c| c.is_zero()) {
            return CycNum::from_rational(coeffs.into_iter().next().unwrap_or_else(BigRational::zero));
        }
        CycNum {
            conductor: n,
            coeffs,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coordinates.
    pub fn coords(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.conductor == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Re-expresses the value in the field of conductor `n`, a multiple of
    /// the current conductor.
    fn embed(&self, n: u64) -> Vec<BigRational> {
        if n == self.conductor {
            return self.coeffs.clone();
        }
        debug_assert_eq!(n % self.conductor, 0);
        let f = field(n);
        let step = (n / self.conductor) as usize;
        let mut out = vec![BigRational::zero(); f.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[j * step]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
        out
    }

    fn common(&self, other: &CycNum) -> u64 {
        let n = self.conductor.lcm(&other.conductor);
        assert!(n <= MAX_CONDUCTOR, "conductor {n} exceeds supported range");
        n
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics on zero.
    pub fn inv(&self) -> CycNum {
        assert!(!self.is_zero(), "inverse of zero");
        if let Some(q) = self.as_rational() {
            return CycNum::from_rational(q.recip());
        }
        // Solve x · self = 1 via the multiplication matrix.
        let n = self.conductor;
        let phi = self.coeffs.len();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(phi);
        for j in 0..phi {
            let basis = CycNum::root_of_unity(j as i64, n as i64);
            cols.push((self * &basis).embed(n));
        }
        // Augmented rows: matrix M with M[i][j] = cols[j][i], rhs e_0.
        let mut rows: Vec<Vec<BigRational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..phi).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for c in 0..phi {
            let p = (c..phi)
                .find(|&r| !rows[r][c].is_zero())
                .expect("singular multiplication matrix");
            rows.swap(c, p);
            let piv = rows[c][c].clone();
            for v in rows[c].iter_mut() {
                *v /= &piv;
            }
            let pivot_row = rows[c].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != c && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (v, pv) in row.iter_mut().zip(&pivot_row) {
                        *v -= &f * pv;
                    }
                }
            }
        }
        CycNum::normalized(n, rows.into_iter().map(|r| r[phi].clone()).collect())
    }

    pub fn pow(&self, e: i64) -> CycNum {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate (`ζ ↦ ζ⁻¹`).
    pub fn conj(&self) -> CycNum {
        if self.conductor == 1 {
            return self.clone();
        }
        let n = self.conductor as usize;
        let f = field(self.conductor);
        let mut out = vec![BigRational::zero(); f.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[(n - j) % n]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
        CycNum::normalized(self.conductor, out)
    }

    /// Numerical value at `ζ = exp(2πi/N)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * j as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Smallest conductor of a cyclotomic field containing every coordinate
    /// actually used; an upper bound on the field of definition.
    pub fn field_label(&self) -> String {
        if self.conductor == 1 {
            "Q".to_string()
        } else {
            format!("Q(z{})", self.conductor)
        }
    }
}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let n = self.common(other);
        self.embed(n) == other.embed(n)
    }
}

impl Eq for CycNum {}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

impl From<BigInt> for CycNum {
    fn from(n: BigInt) -> Self {
        CycNum::from_bigint(n)
    }
}

impl From<BigRational> for CycNum {
    fn from(q: BigRational) -> Self {
        CycNum::from_rational(q)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.conductor == 1 && rhs.conductor == 1 {
            return CycNum::from_rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let n = self.common(rhs);
        let mut a = self.embed(n);
        for (x, y) in a.iter_mut().zip(rhs.embed(n)) {
            *x += y;
        }
        CycNum::normalized(n, a)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        if self.conductor == 1 && rhs.conductor == 1 {
            return CycNum::from_rational(&self.coeffs[0] - &rhs.coeffs[0]);
        }
        let n = self.common(rhs);
        let mut a = self.embed(n);
        for (x, y) in a.iter_mut().zip(rhs.embed(n)) {
            *x -= y;
        }
        CycNum::normalized(n, a)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.conductor == 1 {
            let s = &self.coeffs[0];
            if s.is_zero() {
                return CycNum::zero();
            }
            let coeffs = rhs.coeffs.iter().map(|c| c * s).collect();
            return CycNum {
                conductor: rhs.conductor,
                coeffs,
            };
        }
        if rhs.conductor == 1 {
            return rhs * self;
        }
        let n = self.common(rhs);
        let a = self.embed(n);
        let b = rhs.embed(n);
        let f = field(n);
        let nn = n as usize;
        // Convolution over exponents mod N, then reduce through the power table.
        let mut acc = vec![BigRational::zero(); nn];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[(i + j) % nn] += x * y;
            }
        }
        let mut out = vec![BigRational::zero(); f.phi];
        for (k, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < f.phi {
                out[k] += c;
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[k]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
        CycNum::normalized(n, out)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if self.conductor == 1 && rhs.conductor == 1 {
            self.coeffs[0] += &rhs.coeffs[0];
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        if self.conductor == 1 && rhs.conductor == 1 {
            self.coeffs[0] -= &rhs.coeffs[0];
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycNum {
    /// Rationals print plainly; other values print as a power-basis sum in
    /// `zN = ex(1/N)`, e.g. `1/2 - 3*z8^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", fmt_rational(q));
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let z = match j {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, j),
            };
            if j == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{z}")?;
            } else {
                write!(f, "{}*{z}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}
