//! Exact arithmetic over Q and the biquadratic extension Q(√d1, √d2).
//!
//! A [`QuadScalar`] stores `q0 + q1·√d1 + q2·√d2 + q3·√(d1·d2)` with rational
//! coordinates. Values are kept canonical: a base slot whose radicand is a
//! rational square (or is spanned by the other slot) is folded away and set
//! to `1`, so `1, √d1, √d2, √(d1·d2)` are linearly independent over Q and a
//! value is zero exactly when all four coordinates are zero.
//!
//! Signs are decided exactly by nested squaring inside `Q(√d1)`; floating
//! point is only used for display.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("negative radicand {0}")]
    NegativeBase(String),
    #[error("bases ({0}) and ({1}) do not fit in a common biquadratic field")]
    IncompatibleBases(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed number {0:?}: expected an integer or num/den")]
    Parse(String),
}

/// Builds a rational from two machine integers. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

fn is_square(x: &Rational) -> bool {
    rational_sqrt(x).is_some()
}

/// Renders `n` or `n/d`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses an integer literal or `num/den`. No decimals, no whitespace inside.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::Parse(s.to_string());
    let t = s.trim();
    let int = |p: &str| -> Result<BigInt, ScalarError> {
        let digits = p.strip_prefix('-').unwrap_or(p);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(p).map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Rational::from_integer(int(t)?)),
        Some((n, d)) => {
            let n = int(n)?;
            let d = int(d)?;
            if !d.is_positive() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `u + v·√d` with `d` a positive non-square (or `1`, in which case `v` is ignored).
struct Quadratic<'a> {
    u: Rational,
    v: Rational,
    d: &'a Rational,
}

impl Quadratic<'_> {
    fn sign(&self) -> i8 {
        if self.d.is_one() {
            return sign_of(&(&self.u + &self.v));
        }
        let su = sign_of(&self.u);
        let sv = sign_of(&self.v);
        if sv == 0 || su == sv {
            return su;
        }
        if su == 0 {
            return sv;
        }
        let diff = &self.u * &self.u - &self.v * &self.v * self.d;
        su * sign_of(&diff)
    }
}

/// Exact element `q0 + q1·√d1 + q2·√d2 + q3·√(d1·d2)` of a biquadratic field.
#[derive(Clone, Debug)]
pub struct QuadScalar {
    base: [Rational; 2],
    coords: [Rational; 4],
}

/// Projects `Σ coeff·√radicand` onto the basis `1, √b1, √b2, √(b1·b2)`.
fn project<'a, I>(terms: I, base: &[Rational; 2]) -> Option<[Rational; 4]>
where
    I: IntoIterator<Item = (&'a Rational, Rational)>,
{
    let slots = [Rational::one(), base[0].clone(), base[1].clone(), &base[0] * &base[1]];
    let mut out: [Rational; 4] = Default::default();
    'terms: for (coeff, radicand) in terms {
        if coeff.is_zero() || radicand.is_zero() {
            continue;
        }
        for (slot, r) in slots.iter().enumerate() {
            if let Some(t) = rational_sqrt(&(&radicand / r)) {
                out[slot] += coeff * t;
                continue 'terms;
            }
        }
        return None;
    }
    Some(out)
}

fn spanned(slots: &[Rational; 2], g: &Rational) -> bool {
    [
        Rational::one(),
        slots[0].clone(),
        slots[1].clone(),
        &slots[0] * &slots[1],
    ]
    .iter()
    .any(|r| is_square(&(g / r)))
}

/// Smallest extension of `left` that also contains the generators of `right`.
fn join_bases(left: &[Rational; 2], right: &[Rational; 2]) -> Option<[Rational; 2]> {
    let mut slots = left.clone();
    for g in right {
        if g.is_one() || spanned(&slots, g) {
            continue;
        }
        if slots[0].is_one() {
            slots[0] = g.clone();
        } else if slots[1].is_one() {
            slots[1] = g.clone();
        } else {
            return None;
        }
    }
    Some(slots)
}

fn base_string(base: &[Rational; 2]) -> String {
    format!("{},{}", format_rational(&base[0]), format_rational(&base[1]))
}

impl QuadScalar {
    /// Canonical element `q0 + q1√d1 + q2√d2 + q3√(d1d2)`.
    pub fn new(
        q0: Rational,
        q1: Rational,
        q2: Rational,
        q3: Rational,
        d1: Rational,
        d2: Rational,
    ) -> Result<Self, ScalarError> {
        for d in [&d1, &d2] {
            if d.is_negative() {
                return Err(ScalarError::NegativeBase(format_rational(d)));
            }
        }
        let s1 = if is_square(&d1) { Rational::one() } else { d1.clone() };
        let s2 = if is_square(&d2) || (!s1.is_one() && is_square(&(&d2 / &s1))) {
            Rational::one()
        } else {
            d2.clone()
        };
        let base = [s1, s2];
        let d12 = &d1 * &d2;
        let coords = project([(&q0, Rational::one()), (&q1, d1), (&q2, d2), (&q3, d12)], &base)
            .expect("a canonical base spans its own generators");
        Ok(QuadScalar { base, coords })
    }

    pub fn from_rational(r: Rational) -> Self {
        QuadScalar {
            base: [Rational::one(), Rational::one()],
            coords: [r, Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `√r` for a non-negative rational `r`.
    pub fn sqrt_of(r: &Rational) -> Result<Self, ScalarError> {
        Self::new(
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            r.clone(),
            Rational::one(),
        )
    }

    pub fn base(&self) -> &[Rational; 2] {
        &self.base
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coords[0])
    }

    /// Base with slots whose coordinates are all zero reset to `1`.
    fn used_base(&self) -> [Rational; 2] {
        let c = &self.coords;
        let keep1 = !(c[1].is_zero() && c[3].is_zero());
        let keep2 = !(c[2].is_zero() && c[3].is_zero());
        [
            if keep1 { self.base[0].clone() } else { Rational::one() },
            if keep2 { self.base[1].clone() } else { Rational::one() },
        ]
    }

    fn terms(&self) -> [(&Rational, Rational); 4] {
        let [b1, b2] = &self.base;
        [
            (&self.coords[0], Rational::one()),
            (&self.coords[1], b1.clone()),
            (&self.coords[2], b2.clone()),
            (&self.coords[3], b1 * b2),
        ]
    }

    /// Re-expresses this value over `base`, which must contain its generators.
    fn rebased(&self, base: &[Rational; 2]) -> Option<[Rational; 4]> {
        project(self.terms(), base)
    }

    /// Both operands' coordinates over a shared base.
    fn align(&self, other: &Self) -> Result<AlignedPair, ScalarError> {
        if self.base == other.base {
            return Ok(AlignedPair {
                base: self.base.clone(),
                left: self.coords.clone(),
                right: other.coords.clone(),
            });
        }
        let lift = |r: &Rational| [r.clone(), Rational::zero(), Rational::zero(), Rational::zero()];
        if let Some(r) = other.as_rational() {
            return Ok(AlignedPair {
                base: self.base.clone(),
                left: self.coords.clone(),
                right: lift(r),
            });
        }
        if let Some(r) = self.as_rational() {
            return Ok(AlignedPair {
                base: other.base.clone(),
                left: lift(r),
                right: other.coords.clone(),
            });
        }
        let base = join_bases(&self.base, &other.base)
            .or_else(|| join_bases(&self.used_base(), &other.used_base()))
            .ok_or_else(|| ScalarError::IncompatibleBases(base_string(&self.base), base_string(&other.base)))?;
        let left = self.rebased(&base).expect("joined base spans left operand");
        let right = other.rebased(&base).expect("joined base spans right operand");
        Ok(AlignedPair { base, left, right })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let AlignedPair { base, left, right } = self.align(other)?;
        let coords = std::array::from_fn(|i| &left[i] + &right[i]);
        Ok(QuadScalar { base, coords })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let AlignedPair { base, left, right } = self.align(other)?;
        let coords = std::array::from_fn(|i| &left[i] - &right[i]);
        Ok(QuadScalar { base, coords })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        if let (Some(x), Some(y)) = (self.as_rational(), other.as_rational()) {
            let mut out = if self.base == other.base {
                self.clone()
            } else {
                self.align(other).map(|p| QuadScalar {
                    base: p.base,
                    coords: Default::default(),
                })?
            };
            out.coords = [x * y, Rational::zero(), Rational::zero(), Rational::zero()];
            return Ok(out);
        }
        let AlignedPair {
            base,
            left: a,
            right: b,
        } = self.align(other)?;
        let [d1, d2] = &base;
        let d12 = d1 * d2;
        let coords = [
            &a[0] * &b[0] + &a[1] * &b[1] * d1 + &a[2] * &b[2] * d2 + &a[3] * &b[3] * &d12,
            &a[0] * &b[1] + &a[1] * &b[0] + (&a[2] * &b[3] + &a[3] * &b[2]) * d2,
            &a[0] * &b[2] + &a[2] * &b[0] + (&a[1] * &b[3] + &a[3] * &b[1]) * d1,
            &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1],
        ];
        Ok(QuadScalar { base, coords })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        let inv = other.recip()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let [d1, d2] = &self.base;
        let c = &self.coords;
        // x = A + B√d2 with A = c0 + c1√d1, B = c2 + c3√d1.
        // 1/x = (A − B√d2) / N,  N = A² − B²·d2 = n0 + n1√d1.
        let n0 = &c[0] * &c[0] + &c[1] * &c[1] * d1 - d2 * (&c[2] * &c[2] + &c[3] * &c[3] * d1);
        let n1 = Rational::from_integer(BigInt::from(2)) * (&c[0] * &c[1] - d2 * &c[2] * &c[3]);
        // 1/N = (n0 − n1√d1) / (n0² − n1²·d1).
        let norm = &n0 * &n0 - &n1 * &n1 * d1;
        let m0 = &n0 / &norm;
        let m1 = -&n1 / &norm;
        // (c0 + c1√d1 − c2√d2 − c3√d1d2)(m0 + m1√d1)
        let coords = [
            &c[0] * &m0 + &c[1] * &m1 * d1,
            &c[0] * &m1 + &c[1] * &m0,
            -(&c[2] * &m0 + &c[3] * &m1 * d1),
            -(&c[2] * &m1 + &c[3] * &m0),
        ];
        Ok(QuadScalar {
            base: self.base.clone(),
            coords,
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QuadScalar {
            base: self.base.clone(),
            coords: [Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()],
        };
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign of the real value: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        let [d1, d2] = &self.base;
        let c = &self.coords;
        let a = Quadratic {
            u: c[0].clone(),
            v: c[1].clone(),
            d: d1,
        };
        let b = Quadratic {
            u: c[2].clone(),
            v: c[3].clone(),
            d: d1,
        };
        let sa = a.sign();
        let sb = if d2.is_one() { 0 } else { b.sign() };
        if sb == 0 || sa == sb {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare A² with B²·d2 inside Q(√d1).
        let two = Rational::from_integer(BigInt::from(2));
        let a2 = (&c[0] * &c[0] + &c[1] * &c[1] * d1, &two * &c[0] * &c[1]);
        let b2 = ((&c[2] * &c[2] + &c[3] * &c[3] * d1) * d2, &two * &c[2] * &c[3] * d2);
        let diff = Quadratic {
            u: a2.0 - b2.0,
            v: a2.1 - b2.1,
            d: d1,
        };
        sa * diff.sign()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison; fails only when the two bases cannot be joined.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, ScalarError> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        let [d1, d2] = &self.base;
        let (s1, s2) = (f(d1).sqrt(), f(d2).sqrt());
        f(&self.coords[0]) + f(&self.coords[1]) * s1 + f(&self.coords[2]) * s2 + f(&self.coords[3]) * s1 * s2
    }

    /// Advisory decimal rendering with 12 significant digits.
    pub fn to_decimal(&self) -> String {
        format_decimal(self.to_f64())
    }
}

struct AlignedPair {
    base: [Rational; 2],
    left: [Rational; 4],
    right: [Rational; 4],
}

/// Fixed-format decimal with 12 significant digits, trailing zeros trimmed.
pub fn format_decimal(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_finite() { "0".into() } else { v.to_string() };
    }
    let sci = format!("{:.11e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1;
    let mut s = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if negative {
        s.insert(0, '-');
    }
    s
}

impl PartialEq for QuadScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.base == other.base {
            return self.coords == other.coords;
        }
        // Values in fields that cannot be joined differ in some radical.
        match self.align(other) {
            Ok(p) => p.left == p.right,
            Err(_) => false,
        }
    }
}

impl Eq for QuadScalar {}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl From<Rational> for QuadScalar {
    fn from(r: Rational) -> Self {
        QuadScalar::from_rational(r)
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        QuadScalar::from_int(n)
    }
}

impl From<i32> for QuadScalar {
    fn from(n: i32) -> Self {
        QuadScalar::from_int(n.into())
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.coords[0]));
        }
        let [d1, d2] = &self.base;
        let c = &self.coords;
        write!(
            f,
            "{} + {}*sqrt({}) + {}*sqrt({}) + {}*sqrt({}*{})",
            format_rational(&c[0]),
            format_rational(&c[1]),
            format_rational(d1),
            format_rational(&c[2]),
            format_rational(d2),
            format_rational(&c[3]),
            format_rational(d1),
            format_rational(d2),
        )
    }
}

impl FromStr for QuadScalar {
    type Err = ScalarError;

    /// Accepts a rational literal or the four-term form produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScalarError::Parse(s.to_string());
        let parts: Vec<&str> = s.trim().split(" + ").collect();
        match parts.as_slice() {
            [single] => Ok(QuadScalar::from_rational(parse_rational(single)?)),
            [q0, t1, t2, t3] => {
                let term = |t: &str| -> Result<(Rational, String), ScalarError> {
                    let (coef, rest) = t.split_once("*sqrt(").ok_or_else(bad)?;
                    let rad = rest.strip_suffix(')').ok_or_else(bad)?;
                    Ok((parse_rational(coef)?, rad.to_string()))
                };
                let (q1, d1) = term(t1)?;
                let (q2, d2) = term(t2)?;
                let (q3, d12) = term(t3)?;
                if d12 != format!("{}*{}", d1, d2) {
                    return Err(bad());
                }
                QuadScalar::new(
                    parse_rational(q0)?,
                    q1,
                    q2,
                    q3,
                    parse_rational(&d1)?,
                    parse_rational(&d2)?,
                )
            }
            _ => Err(bad()),
        }
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            base: self.base.clone(),
            coords: std::array::from_fn(|i| -&self.coords[i]),
        }
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

// Operators panic on incompatible bases; use the `checked_*` methods where
// operands may come from unrelated fields.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("{} failed: {}", stringify!($method), e))
            }
        }
        impl $trait<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl std::iter::Sum for QuadScalar {
    fn sum<I: Iterator<Item = QuadScalar>>(iter: I) -> Self {
        iter.fold(QuadScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a QuadScalar> for QuadScalar {
    fn sum<I: Iterator<Item = &'a QuadScalar>>(iter: I) -> Self {
        iter.fold(QuadScalar::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for QuadScalar {
    fn product<I: Iterator<Item = QuadScalar>>(iter: I) -> Self {
        iter.fold(QuadScalar::one(), |acc, x| acc * x)
    }
}
