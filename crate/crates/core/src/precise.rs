//! Rigorous high-precision evaluation of the few irrational quantities the
//! bounds need: n-th roots and natural logarithms.
//!
//! Rather than rounding through floating point, every irrational value is
//! carried as an [`Interval`] with exact rational endpoints that provably
//! bracket the true value. Arithmetic on intervals keeps that guarantee, so a
//! comparison against a rational either has a definite answer or honestly
//! reports that the enclosure is too wide. Root enclosures come from integer
//! n-th roots of scaled numerators; logarithms come from the atanh series
//! with an explicit tail bound.

use std::cmp::Ordering;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_int, Rat};

/// A closed interval with exact rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    /// An interval that is a single exact point.
    pub fn exact(v: Rat) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value if the interval is a point.
    pub fn as_exact(&self) -> Option<&Rat> {
        if self.is_exact() {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn add_rat(&self, v: &Rat) -> Interval {
        Interval {
            lo: &self.lo + v,
            hi: &self.hi + v,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn mul_rat(&self, v: &Rat) -> Interval {
        if v.is_negative() {
            Interval {
                lo: &self.hi * v,
                hi: &self.lo * v,
            }
        } else {
            Interval {
                lo: &self.lo * v,
                hi: &self.hi * v,
            }
        }
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> Interval {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn div(&self, other: &Interval) -> Interval {
        self.mul(&other.recip())
    }

    /// Pointwise maximum with a rational (max is monotone, so mapping the
    /// endpoints is a valid enclosure).
    pub fn max_rat(&self, v: &Rat) -> Interval {
        Interval {
            lo: self.lo.clone().max(v.clone()),
            hi: self.hi.clone().max(v.clone()),
        }
    }

    /// Compares the enclosed value against a rational. `None` means the
    /// interval straddles `v` without being a point, so the comparison is
    /// genuinely undecided at this precision.
    pub fn cmp_rat(&self, v: &Rat) -> Option<Ordering> {
        if &self.lo > v {
            Some(Ordering::Greater)
        } else if &self.hi < v {
            Some(Ordering::Less)
        } else if self.is_exact() && &self.lo == v {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// True only when the whole enclosure is strictly above `v`.
    pub fn definitely_gt(&self, v: &Rat) -> bool {
        self.lo > *v
    }

    /// True only when the whole enclosure is strictly below `v`.
    pub fn definitely_lt(&self, v: &Rat) -> bool {
        self.hi < *v
    }

    /// Renders the midpoint to `sig` significant digits. For a point interval
    /// this is the exact value rounded; otherwise callers are responsible for
    /// computing with enough working precision that the width is far below
    /// the last rendered digit.
    pub fn to_decimal(&self, sig: u32) -> String {
        decimal_string(&self.midpoint(), sig)
    }
}

/// Enclosure of `x^(1/k)` for `x >= 0`.
///
/// If `x` is an exact k-th power of a rational the result is a point
/// interval. Otherwise the enclosure has relative width at most
/// `10^-(digits-1)`.
pub fn nth_root(x: &Rat, k: u32, digits: u32) -> Result<Interval> {
    if k == 0 {
        return Err(Error::invalid("0th root is undefined"));
    }
    if x.is_negative() {
        return Err(Error::invalid("nth_root requires a non-negative argument"));
    }
    if x.is_zero() {
        return Ok(Interval::exact(Rat::zero()));
    }
    if k == 1 {
        return Ok(Interval::exact(x.clone()));
    }

    // Exact k-th powers stay exact: check numerator and denominator.
    let num_root = x.numer().nth_root(k);
    let den_root = x.denom().nth_root(k);
    if num_root.pow(k) == *x.numer() && den_root.pow(k) == *x.denom() {
        return Ok(Interval::exact(Rat::new(num_root, den_root)));
    }

    // floor(x^(1/k) * 10^p) = floor(floor(x * 10^(k*p))^(1/k)), so an integer
    // root of the scaled numerator gives a one-ulp enclosure. Retry with more
    // digits if x is small enough that the scaled root loses leading digits.
    let mut p = digits;
    for _ in 0..8 {
        let scale = BigInt::from(10u32).pow(p);
        let scaled = (x.numer() * scale.pow(k)) / x.denom();
        let a = scaled.nth_root(k);
        if a >= BigInt::from(10u32).pow(digits.saturating_sub(1)) {
            let lo = Rat::new(a.clone(), scale.clone());
            let hi = Rat::new(a + BigInt::one(), scale);
            return Ok(Interval::new(lo, hi));
        }
        p *= 2;
    }
    Err(Error::invalid(
        "nth_root argument too small for the requested precision",
    ))
}

/// Enclosure of `x^(p/q)` for `x > 0` (or `x = 0` with `p > 0`).
pub fn pow_frac(x: &Rat, p: i64, q: u32, digits: u32) -> Result<Interval> {
    if q == 0 {
        return Err(Error::invalid("rational exponent with zero denominator"));
    }
    if x.is_zero() {
        return match p.cmp(&0) {
            Ordering::Greater => Ok(Interval::exact(Rat::zero())),
            Ordering::Equal => Ok(Interval::exact(Rat::one())),
            Ordering::Less => Err(Error::invalid("zero to a negative power")),
        };
    }
    if x.is_negative() {
        return Err(Error::invalid("pow_frac requires a non-negative base"));
    }
    if p == 0 {
        return Ok(Interval::exact(Rat::one()));
    }
    let base = if p < 0 { x.recip() } else { x.clone() };
    let powered = pow_rat(&base, p.unsigned_abs());
    nth_root(&powered, q, digits)
}

fn pow_rat(x: &Rat, e: u64) -> Rat {
    let mut acc = Rat::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Exact ceiling of `x^(1/q)` for `x > 0`.
///
/// Exact roots resolve immediately; irrational roots cannot sit on an
/// integer, so tightening the enclosure always settles the ceiling.
pub fn ceil_root(x: &Rat, q: u32, digits: u32) -> Result<BigInt> {
    let mut p = digits;
    for _ in 0..16 {
        let root = nth_root(x, q, p)?;
        if let Some(v) = root.as_exact() {
            return Ok(v.ceil().to_integer());
        }
        let lo_ceil = root.lo().ceil().to_integer();
        let hi_ceil = root.hi().ceil().to_integer();
        if lo_ceil == hi_ceil {
            return Ok(lo_ceil);
        }
        p *= 2;
    }
    Err(Error::invalid("ceil_root failed to converge"))
}

/// Enclosure of `ln x` for `x > 0` with absolute width below
/// `10^-(digits)` times a small constant.
///
/// The argument is reduced to `m * 2^e` with `m` in `[1, 2)`, then
/// `ln m = 2 atanh((m-1)/(m+1))` is summed with an explicit geometric tail
/// bound; all arithmetic is exact rational.
pub fn ln(x: &Rat, digits: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::invalid("ln requires a positive argument"));
    }
    if x.is_one() {
        return Ok(Interval::exact(Rat::zero()));
    }
    if *x < Rat::one() {
        return Ok(ln(&x.recip(), digits)?.neg());
    }

    // find e with x / 2^e in [1, 2)
    let mut e = (x.numer().bits() as i64 - x.denom().bits() as i64).max(0);
    let mut m = x / pow_rat(&rat_int(2), e as u64);
    while m >= rat_int(2) {
        m /= rat_int(2);
        e += 1;
    }
    while m < Rat::one() {
        m *= rat_int(2);
        e -= 1;
    }
    debug_assert!(e >= 0);

    let ratio = (&m - Rat::one()) / (&m + Rat::one());
    let ln_m = atanh_twice(&ratio, digits);
    if e == 0 {
        return Ok(ln_m);
    }
    let ln2 = atanh_twice(&Rat::new(BigInt::one(), BigInt::from(3)), digits);
    Ok(ln2.mul_rat(&rat_int(e)).add(&ln_m))
}

/// Enclosure of `2 * atanh(y)` for `0 <= y <= 1/3` via the odd power series,
/// with the tail bounded by a geometric series.
fn atanh_twice(y: &Rat, digits: u32) -> Interval {
    debug_assert!(!y.is_negative() && *y <= Rat::new(BigInt::one(), BigInt::from(3)));
    if y.is_zero() {
        return Interval::exact(Rat::zero());
    }
    // terms shrink at least by y^2 <= 1/9 each step; run until the bound on
    // the next term is below 10^-(digits+3)
    let eps = Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits + 3));
    let y2 = y * y;
    let mut power = y.clone(); // y^(2j+1)
    let mut sum = Rat::zero();
    let mut j = 0u64;
    loop {
        sum += &power / rat_int((2 * j + 1) as i64);
        power *= &y2;
        j += 1;
        // next term is power / (2j+1); stop once the full remaining tail
        // power/(2j+1) * 1/(1-y^2) is small enough
        let tail = &power / rat_int((2 * j + 1) as i64) / (Rat::one() - &y2);
        if tail < eps {
            let lo = &sum * rat_int(2);
            let hi = (&sum + &tail) * rat_int(2);
            return Interval::new(lo, hi);
        }
        assert!(j < 20_000, "atanh series failed to converge");
    }
}

/// Deterministically renders a rational to `sig` significant digits
/// (round half away from zero), using plain decimal notation for moderate
/// exponents and scientific notation otherwise.
pub fn decimal_string(v: &Rat, sig: u32) -> String {
    assert!(sig >= 1);
    if v.is_zero() {
        return "0".to_string();
    }
    let negative = v.is_negative();
    let v = v.abs();

    // decimal exponent: 10^e <= v < 10^(e+1)
    let mut e = v.numer().to_string().len() as i64 - v.denom().to_string().len() as i64;
    while pow10(e + 1) <= v {
        e += 1;
    }
    while pow10(e) > v {
        e -= 1;
    }

    // mantissa rounded to sig digits: round(v * 10^(sig-1-e))
    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        v * Rat::from_integer(BigInt::from(10u32).pow(shift as u32))
    } else {
        v / Rat::from_integer(BigInt::from(10u32).pow((-shift) as u32))
    };
    let two = BigInt::from(2);
    let mut mantissa =
        ((scaled.numer() * &two + scaled.denom()) / (scaled.denom() * &two)).to_string();
    if mantissa.len() as u32 > sig {
        // rounding overflowed into the next decade (e.g. 9.99 -> 10.0)
        e += 1;
        mantissa.truncate(sig as usize);
    }
    debug_assert_eq!(mantissa.len() as u32, sig);

    let body = if (-6..=40).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if int_len >= mantissa.len() {
                let zeros = "0".repeat(int_len - mantissa.len());
                format!("{mantissa}{zeros}")
            } else {
                format!("{}.{}", &mantissa[..int_len], &mantissa[int_len..])
            }
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            format!("0.{zeros}{mantissa}")
        }
    } else {
        let head = &mantissa[..1];
        let rest = &mantissa[1..];
        if rest.is_empty() {
            format!("{head}e{e}")
        } else {
            format!("{head}.{rest}e{e}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn pow10(e: i64) -> Rat {
    if e >= 0 {
        Rat::from_integer(BigInt::from(10u32).pow(e as u32))
    } else {
        Rat::new(BigInt::one(), BigInt::from(10u32).pow((-e) as u32))
    }
}

/// Parses a plain decimal string (`12`, `0.5`, `-3.25`) into an exact
/// rational. Used for CLI parameters so user-supplied constants stay exact.
pub fn parse_decimal(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1i64, r),
        None => (1, s),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::invalid(format!("`{s}` is not a decimal number")));
    }
    let digits_ok = |p: &str| p.chars().all(|c| c.is_ascii_digit());
    if !digits_ok(int_part) || !digits_ok(frac_part) {
        return Err(Error::invalid(format!("`{s}` is not a decimal number")));
    }
    let joined = format!("{int_part}{frac_part}");
    let numer: BigInt = joined.parse().map_err(|_| {
        Error::invalid(format!("`{s}` is not a decimal number"))
    })?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Rat::new(BigInt::from(sign) * numer, denom))
}
