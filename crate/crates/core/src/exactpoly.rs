//! Laurent polynomials in `v` over the integers, with `q = v^2`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Element of `Z[v, v^-1]`.
///
/// Terms are kept sorted by exponent and no stored coefficient is zero, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact ring operation on two Laurent polynomials.
pub fn arith(a: &LaurentPoly, b: &LaurentPoly, op: ArithOp) -> LaurentPoly {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    pub fn monomial(c: BigInt, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: alloc::vec![(exp, c)] }
        }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(BigInt::one(), exp)
    }

    /// `q^k = v^{2k}`.
    pub fn q_pow(k: i32) -> Self {
        Self::v_pow(2 * k)
    }

    /// `q`.
    pub fn q() -> Self {
        Self::v_pow(2)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// summing repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<i32, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c.into();
        }
        Self::from_map(acc)
    }

    fn from_map(map: BTreeMap<i32, BigInt>) -> Self {
        Self { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Re-establishes canonical form; a no-op on values built through the
    /// public constructors.
    pub fn normalized(&self) -> Self {
        Self::from_terms(self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + ExactSizeIterator {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Whether `v^shift * self` lies in `Z[v^2] = Z[q]`.
    pub fn shift_membership(&self, shift: i32) -> bool {
        self.terms.iter().all(|(e, _)| {
            let s = e + shift;
            s >= 0 && s % 2 == 0
        })
    }

    /// Value at `v = 1` (equivalently `q = 1`).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Exact value at `v = sqrt_q`; `q` is passed alongside to guard against
    /// inconsistent pairs.
    pub fn eval(&self, q: &BigRational, sqrt_q: &BigRational) -> Result<BigRational> {
        if sqrt_q.is_zero() {
            return Err(Error::InvalidInput("evaluation point v = 0".into()));
        }
        if &(sqrt_q * sqrt_q) != q {
            return Err(Error::InvalidInput(alloc::format!("sqrt_q^2 = {} does not equal q = {}", sqrt_q * sqrt_q, q)));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(sqrt_q.clone(), *e as usize)
            } else {
                num_traits::pow(sqrt_q.recip(), (-*e) as usize)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        Self { terms }
    }

    /// Gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    fn div_exact_scalar(&self, c: &BigInt) -> Self {
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x / c)).collect() }
    }

    /// Rendering as a polynomial in `q`, with an explicit prefix power
    /// `q^(k)` or `q^(k/2)` when the exponents in `v` are shifted.
    ///
    /// `v^-2 + 1 + v^2` renders as `q^(-1)*(1 + q + q^2)` and
    /// `v^-1 + v` as `q^(-1/2)*(1 + q)`. Polynomials mixing odd and even
    /// exponents fall back to the `v` form.
    pub fn to_q_string(&self) -> String {
        let Some(lo) = self.min_exp() else {
            return String::from("0");
        };
        if self.terms.iter().any(|(e, _)| (e - lo) % 2 != 0) {
            return alloc::format!("{self}");
        }
        let mut body = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let k = (e - lo) / 2;
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    body.push('-');
                }
            } else {
                body.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => String::from("q"),
                k => alloc::format!("q^{k}"),
            };
            if mono.is_empty() {
                let _ = write!(body, "{mag}");
            } else if mag.is_one() {
                body.push_str(&mono);
            } else {
                let _ = write!(body, "{mag}*{mono}");
            }
        }
        if lo == 0 {
            return body;
        }
        let prefix = if lo % 2 == 0 { alloc::format!("q^({})", lo / 2) } else { alloc::format!("q^({}/2)", lo) };
        if self.terms.len() == 1 && self.terms[0].1.is_one() {
            prefix
        } else {
            alloc::format!("{prefix}*({body})")
        }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }
}

fn merge(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let take_a = j >= b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0);
        let take_b = i >= a.terms.len() || (j < b.terms.len() && b.terms[j].0 < a.terms[i].0);
        if take_a {
            out.push(a.terms[i].clone());
            i += 1;
        } else if take_b {
            let (e, c) = &b.terms[j];
            out.push((*e, if negate_b { -c } else { c.clone() }));
            j += 1;
        } else {
            let e = a.terms[i].0;
            let c = if negate_b { &a.terms[i].1 - &b.terms[j].1 } else { &a.terms[i].1 + &b.terms[j].1 };
            if !c.is_zero() {
                out.push((e, c));
            }
            i += 1;
            j += 1;
        }
    }
    LaurentPoly { terms: out }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, false)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, true)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.scale(c).shift(*e);
        }
        let mut acc: BTreeMap<i32, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                *acc.entry(ea + eb).or_default() += ca * cb;
            }
        }
        LaurentPoly::from_map(acc)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -core::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(self, rhs, false);
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self = merge(self, &rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(self, rhs, true);
    }
}

impl core::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc: BTreeMap<i32, BigInt> = BTreeMap::new();
        for p in iter {
            for (e, c) in p.terms {
                *acc.entry(e).or_default() += c;
            }
        }
        Self::from_map(acc)
    }
}

/// `c*v^e + ...` with exponents descending; `0` for the zero polynomial.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (e, true) => write!(f, "v^{e}")?,
                (e, false) => write!(f, "{mag}*v^{e}")?,
            }
        }
        Ok(())
    }
}

/// Parses the `Display` form (also accepts `v` for `v^1`).
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(alloc::format!("cannot parse Laurent polynomial `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        // Split into signed terms; a '-' directly after '^' belongs to an exponent.
        let mut pieces: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') && !cur.is_empty() {
                pieces.push(core::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        pieces.push(cur);
        let mut terms = Vec::new();
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let (coeff, exp) = if let Some(idx) = body.find('v') {
                let cpart = &body[..idx];
                let coeff = if cpart.is_empty() {
                    BigInt::one()
                } else {
                    cpart.strip_suffix('*').ok_or_else(bad)?.parse::<BigInt>().map_err(|_| bad())?
                };
                let epart = &body[idx + 1..];
                let exp = if epart.is_empty() {
                    1
                } else {
                    epart.strip_prefix('^').ok_or_else(bad)?.parse::<i32>().map_err(|_| bad())?
                };
                (coeff, exp)
            } else {
                (body.parse::<BigInt>().map_err(|_| bad())?, 0)
            };
            terms.push((exp, coeff * sign));
        }
        Ok(Self::from_terms(terms))
    }
}

/// Quotient of two Laurent polynomials, reduced only by integer content and
/// powers of `v`. Used for the parahoric idempotents `P_f(q)^{-1} sum T_w`.
#[derive(Clone, Debug)]
pub struct PolyFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl PolyFraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let mut f = Self { num, den };
        f.reduce();
        Ok(f)
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        let g = self.num.content().gcd(&self.den.content());
        let lead_neg = self.den.terms.last().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let g = if lead_neg { -g } else { g };
        if !g.is_one() {
            self.num = self.num.div_exact_scalar(&g);
            self.den = self.den.div_exact_scalar(&g);
        }
        let lo = self.den.min_exp().unwrap_or(0);
        if lo != 0 {
            self.num = self.num.shift(-lo);
            self.den = self.den.shift(-lo);
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Multiplies by a polynomial; returns the exact polynomial when the
    /// denominator is a unit afterwards.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut f = Self { num: &self.num * p, den: self.den.clone() };
        f.reduce();
        f
    }

    pub fn as_poly(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }
}

impl PartialEq for PolyFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for PolyFraction {}

impl Add<&PolyFraction> for &PolyFraction {
    type Output = PolyFraction;
    fn add(self, rhs: &PolyFraction) -> PolyFraction {
        let mut f = if self.den == rhs.den {
            PolyFraction { num: &self.num + &rhs.num, den: self.den.clone() }
        } else {
            PolyFraction { num: &self.num * &rhs.den + &rhs.num * &self.den, den: &self.den * &rhs.den }
        };
        f.reduce();
        f
    }
}

impl Mul<&PolyFraction> for &PolyFraction {
    type Output = PolyFraction;
    fn mul(self, rhs: &PolyFraction) -> PolyFraction {
        let mut f = PolyFraction { num: &self.num * &rhs.num, den: &self.den * &rhs.den };
        f.reduce();
        f
    }
}

impl fmt::Display for PolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
