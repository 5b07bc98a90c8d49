//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! A [`CycNum`] stores one rational coefficient per power `ζ_m^0 .. ζ_m^{m-1}`.
//! Values are always kept in canonical form: every power `ζ^k` with
//! `k >= φ(m)` is folded back using the m-th cyclotomic polynomial, so the
//! coefficients at indices `φ(m)..m` are zero and two values are equal exactly
//! when their coefficient vectors are.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Reduction data for one cyclotomic order.
struct FieldTables {
    degree: usize,
    /// `folds[k - degree]` holds `x^k mod Φ_m` for `k` in `degree..m`.
    folds: Vec<Vec<BigInt>>,
}

thread_local! {
    static TABLES: RefCell<HashMap<usize, Rc<FieldTables>>> = RefCell::new(HashMap::new());
}

fn tables(m: usize) -> Rc<FieldTables> {
    TABLES.with(|cell| {
        if let Some(t) = cell.borrow().get(&m) {
            return Rc::clone(t);
        }
        let t = Rc::new(build_tables(m));
        cell.borrow_mut().insert(m, Rc::clone(&t));
        t
    })
}

fn build_tables(m: usize) -> FieldTables {
    let phi = cyclotomic_polynomial(m as u32);
    let degree = phi.len() - 1;
    let mut folds = Vec::with_capacity(m - degree);
    // x^degree ≡ -(Φ - x^degree)
    let mut r: Vec<BigInt> = phi[..degree].iter().map(|c| -c).collect();
    for _ in degree..m {
        folds.push(r.clone());
        // multiply by x and fold the overflow coefficient
        let top = r.pop().unwrap_or_else(BigInt::zero);
        r.insert(0, BigInt::zero());
        if !top.is_zero() {
            for (i, c) in phi[..degree].iter().enumerate() {
                r[i] -= &top * c;
            }
        }
    }
    FieldTables { degree, folds }
}

/// Integer coefficients (low to high) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic order must be positive");
    let m = m as usize;
    let mut num: Vec<BigInt> = vec![BigInt::one()];
    let mut den: Vec<BigInt> = vec![BigInt::one()];
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        let mut xd = vec![BigInt::zero(); d + 1];
        xd[0] = -BigInt::one();
        xd[d] = BigInt::one();
        match mobius(m / d) {
            1 => num = int_poly_mul(&num, &xd),
            -1 => den = int_poly_mul(&den, &xd),
            _ => {}
        }
    }
    int_poly_div_exact(&num, &den)
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient, i.e. the degree of `Q(ζ_m)` over `Q`.
pub fn totient(m: u32) -> usize {
    tables(m as usize).degree
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Exact element of the cyclotomic field `Q(ζ_m)`.
#[derive(Clone, Debug)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    /// Builds a value from raw coefficients of `ζ_m^k`, `k = 0..m-1`. Shorter
    /// vectors are zero-padded; the result is canonicalized.
    pub fn new(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "cyclotomic order must be positive".into(),
            ));
        }
        if coeffs.len() > order as usize {
            return Err(Error::Parse(format!(
                "{} coefficients given for order {}",
                coeffs.len(),
                order
            )));
        }
        let mut raw = coeffs;
        raw.resize(order as usize, Rational::zero());
        Ok(Self::from_raw(order, raw))
    }

    fn from_raw(order: u32, mut raw: Vec<Rational>) -> Self {
        let t = tables(order as usize);
        let m = order as usize;
        for k in (t.degree..m).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[k], Rational::zero());
            for (i, f) in t.folds[k - t.degree].iter().enumerate() {
                if !f.is_zero() {
                    raw[i] += &c * Rational::from_integer(f.clone());
                }
            }
        }
        CycNum { order, coeffs: raw }
    }

    pub fn zero(order: u32) -> Self {
        CycNum {
            order,
            coeffs: vec![Rational::zero(); order as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, q: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); order as usize];
        coeffs[0] = q;
        CycNum { order, coeffs }
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(n.into()))
    }

    pub fn from_frac(order: u32, p: i64, q: i64) -> Self {
        Self::from_rational(order, Rational::new(p.into(), q.into()))
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let m = order as usize;
        let mut raw = vec![Rational::zero(); m];
        raw[k.rem_euclid(order as i64) as usize] = Rational::one();
        Self::from_raw(order, raw)
    }

    pub fn zeta(order: u32) -> Self {
        Self::zeta_pow(order, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the value in `Q(ζ_target)`; `target` must be a multiple of
    /// the current order.
    pub fn lift(&self, target: u32) -> Self {
        assert!(
            target.is_multiple_of(self.order),
            "cannot lift order {} to {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut raw = vec![Rational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[k * step] = c.clone();
            }
        }
        Self::from_raw(target, raw)
    }

    fn aligned(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let l = lcm(a.order, b.order);
        (a.lift(l), b.lift(l))
    }

    fn add_ref(&self, other: &CycNum) -> CycNum {
        if self.order != other.order {
            let (a, b) = Self::aligned(self, other);
            return a.add_ref(&b);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        CycNum {
            order: self.order,
            coeffs,
        }
    }

    fn mul_ref(&self, other: &CycNum) -> CycNum {
        if self.order != other.order {
            let (a, b) = Self::aligned(self, other);
            return a.mul_ref(&b);
        }
        let m = self.order as usize;
        let mut raw = vec![Rational::zero(); m];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                raw[(i + j) % m] += x * y;
            }
        }
        Self::from_raw(self.order, raw)
    }

    pub fn scale(&self, q: &Rational) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn permute_exponents(&self, n: i64) -> CycNum {
        let m = self.order as i64;
        let mut raw = vec![Rational::zero(); self.order as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(k as i64 * n).rem_euclid(m) as usize] += c;
            }
        }
        Self::from_raw(self.order, raw)
    }

    /// Complex conjugation, `ζ_m ↦ ζ_m^{-1}`.
    pub fn conj(&self) -> CycNum {
        self.permute_exponents(-1)
    }

    /// The Galois automorphism `ζ_m ↦ ζ_m^n`.
    pub fn galois(&self, n: i64) -> Result<CycNum> {
        let m = self.order as i64;
        if n.rem_euclid(m).gcd(&m) != 1 {
            return Err(Error::NotCoprime {
                n,
                modulus: self.order as u64,
            });
        }
        Ok(self.permute_exponents(n))
    }

    /// Multiplicative inverse, by solving the linear system for
    /// multiplication-by-`self` on the power basis of the field.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.order));
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(self.order, q.recip()));
        }
        let deg = tables(self.order as usize).degree;
        // columns: self * ζ^j in canonical coordinates
        let mut a: Vec<Vec<Rational>> = vec![vec![Rational::zero(); deg + 1]; deg];
        for j in 0..deg {
            let col = self.mul_ref(&Self::zeta_pow(self.order, j as i64));
            for (i, row) in a.iter_mut().enumerate() {
                row[j] = col.coeffs[i].clone();
            }
        }
        a[0][deg] = Rational::one();
        let x = solve_rational(a).ok_or(Error::DivisionByZero(self.order))?;
        let mut raw = x;
        raw.resize(self.order as usize, Rational::zero());
        Ok(CycNum {
            order: self.order,
            coeffs: raw,
        })
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycNum::one(self.order);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Float embedding via `ζ_m ↦ exp(2πi/m)`.
    pub fn embed(&self) -> Complex64 {
        let m = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / m;
                Complex64::from_polar(rat_to_f64(c), angle)
            })
            .sum()
    }

    /// Multiplicative order if the value is a root of unity.
    ///
    /// Roots of unity in `Q(ζ_m)` have order dividing `lcm(2, m)`, so a
    /// bounded scan of powers decides the question.
    pub fn as_root_of_unity(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let bound = lcm(2, self.order);
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    /// The exponent `k` in `0..modulus` with `self = ζ_modulus^k`, if any.
    pub fn root_exponent(&self, modulus: u32) -> Option<u32> {
        let z = CycNum::zeta(modulus);
        let mut p = CycNum::one(modulus);
        for k in 0..modulus {
            if &p == self {
                return Some(k);
            }
            p = &p * &z;
        }
        None
    }

    /// Certified sign of a real value: exact for rationals, otherwise the
    /// float embedding is trusted only when it clears its rounding bound.
    pub fn real_sign(&self) -> Option<Ordering> {
        if self != &self.conj() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(q.cmp(&Rational::zero()));
        }
        let v = self.embed().re;
        let mass: f64 = self.coeffs.iter().map(|c| rat_to_f64(c).abs()).sum();
        let bound = 1e-9 * (1.0 + mass);
        if v.abs() > bound {
            Some(v.partial_cmp(&0.0).unwrap_or(Ordering::Equal))
        } else {
            None
        }
    }

    /// Exact real part `(a + ā)/2`.
    pub fn re_part(&self) -> CycNum {
        (self + &self.conj()).scale(&Rational::new(1.into(), 2.into()))
    }

    /// Exact `(a - ā)/2`, i.e. `i·Im(a)`.
    pub fn im_part_times_i(&self) -> CycNum {
        (self - &self.conj()).scale(&Rational::new(1.into(), 2.into()))
    }
}

pub(crate) fn rat_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // fall back on numerator/denominator when the direct conversion overflows
        q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// Solves a square system given as an augmented `n × (n+1)` matrix.
pub(crate) fn solve_rational(mut a: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v -= &f * p;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycNum {}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
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

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, k),
            };
            if k == 0 {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", power)?;
            } else {
                write!(f, "{}*{}", abs, power)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational literal: {:?}", s)))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {:?}", s)));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// One coefficient in a textual literal: an integer or a `"p/q"` string.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CoeffLiteral {
    Int(i64),
    Text(String),
}

impl CoeffLiteral {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            CoeffLiteral::Int(n) => Ok(Rational::from_integer((*n).into())),
            CoeffLiteral::Text(s) => parse_rational(s),
        }
    }
}

/// A cyclotomic value in a spec file: either a bare rational or the
/// coefficient array `[c0, c1, …]` of powers of `ζ_m`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CycLiteral {
    Scalar(CoeffLiteral),
    Coeffs(Vec<CoeffLiteral>),
}

impl CycLiteral {
    pub fn to_cyc(&self, order: u32) -> Result<CycNum> {
        match self {
            CycLiteral::Scalar(c) => Ok(CycNum::from_rational(order, c.to_rational()?)),
            CycLiteral::Coeffs(cs) => {
                let coeffs = cs
                    .iter()
                    .map(CoeffLiteral::to_rational)
                    .collect::<Result<_>>()?;
                CycNum::new(order, coeffs)
            }
        }
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CycNum", 2)?;
        st.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u32,
            coeffs: Vec<CoeffLiteral>,
        }
        let raw = Raw::deserialize(deserializer)?;
        CycLiteral::Coeffs(raw.coeffs)
            .to_cyc(raw.order)
            .map_err(de::Error::custom)
    }
}
