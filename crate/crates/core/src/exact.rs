//! Exact combinatorics: arbitrary-precision rationals, binomial machinery,
//! and verifiers for the closed-form identities used by the probability
//! formulas in [`crate::perm`].
//!
//! Everything in this module is exact. No floating point enters any value;
//! equality checks are true equality of reduced rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Shorthand for the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `numer/denom` (or just `numer` when integral).
pub fn rat_to_string(v: &Rat) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient over the integers.
///
/// Out-of-range arguments evaluate to zero rather than erroring, matching the
/// usual summation conventions: `binom(n, k) = 0` for `k < 0` or `k > n >= 0`.
/// The one negative-`n` value the identity sums rely on is `binom(-1, 0) = 1`,
/// which falls out of `k == 0` being an empty product.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if k == 0 {
        return BigInt::one();
    }
    if n < 0 || k > n {
        return BigInt::zero();
    }
    // Multiply ascending so every partial product is itself a binomial
    // coefficient and the division stays exact.
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Multinomial coefficient `(parts[0] + ... + parts[m-1])! / (parts[0]! * ...)`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    let mut acc = factorial(total);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}

/// `base^exp` as a big integer.
pub fn pow_int(base: i64, exp: u64) -> BigInt {
    BigInt::from(base).pow(exp as u32)
}

/// Fractional binomial coefficient `C(d + 1/t, a)` defined as
///
/// ```text
/// (t*d + 1) * (t*(d-1) + 1) * ... * (t*(d-a+1) + 1)
/// -------------------------------------------------
///                   a! * t^a
/// ```
///
/// The empty product makes the value 1 at `a = 0`, and at `t = 1` the
/// definition collapses to the ordinary binomial `C(d + 1, a)`. Factors with
/// `d - j < 0` go negative or vanish, so just like the ordinary binomial the
/// value is 0 for `a > d + 1` when `t = 1`.
pub fn frac_binom(d: u64, t: u64, a: u64) -> Result<Rat> {
    if t == 0 {
        return Err(Error::invalid("frac_binom requires t >= 1"));
    }
    let mut numer = BigInt::one();
    for j in 0..a {
        let factor = t as i128 * (d as i128 - j as i128) + 1;
        numer *= BigInt::from(factor);
    }
    let denom = factorial(a) * pow_int(t as i64, a);
    Ok(Rat::new(numer, denom))
}

/// Generalized binomial `C(x, a) = x * (x-1) * ... * (x-a+1) / a!` for
/// rational `x`.
pub fn general_binom(x: &Rat, a: u64) -> Rat {
    let mut numer = Rat::one();
    for j in 0..a {
        numer *= x - rat_int(j as i64);
    }
    numer / Rat::from_integer(factorial(a))
}

/// Outcome of evaluating both sides of an identity exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: Rat,
    pub rhs: Rat,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Checks the alternating-sum identity
///
/// ```text
/// sum_{r=0}^{d} (-1)^r C(d, r) / (t*r + 1)  =  1 / C(d + 1/t, d)
/// ```
///
/// The left side is the inclusion-exclusion count of orderings of a star in
/// which no edge lies fully before its center; the right side is the closed
/// form the probability engine uses.
pub fn verify_alternating_sum(d: u64, t: u64) -> Result<IdentityCheck> {
    if t == 0 {
        return Err(Error::invalid("verify_alternating_sum requires t >= 1"));
    }
    let mut lhs = Rat::zero();
    for r in 0..=d {
        let term = Rat::new(binom(d as i64, r as i64), BigInt::from(t * r + 1));
        if r % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let rhs = frac_binom(d, t, d)?.recip();
    Ok(IdentityCheck { lhs, rhs })
}

/// Checks the unit-sum identity behind the at-least-`a` inclusion-exclusion:
///
/// ```text
/// sum_{i=0}^{b} (-1)^i C(a + b, a + i) C(a + i - 1, i)  =  1
/// ```
///
/// for all `a, b >= 0`. At `a = 0` the `i = 0` term is `C(-1, 0) = 1` and all
/// later terms vanish, consistent with [`binom`]'s conventions.
pub fn verify_mpie_unit(a: u64, b: u64) -> IdentityCheck {
    let mut lhs = Rat::zero();
    for i in 0..=b {
        let term = binom((a + b) as i64, (a + i) as i64) * binom((a + i) as i64 - 1, i as i64);
        let term = Rat::from_integer(term);
        if i % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    IdentityCheck {
        lhs,
        rhs: Rat::one(),
    }
}

/// Checks the tail-sum identity that turns the at-least-`a` inclusion-
/// exclusion into a closed form:
///
/// ```text
/// sum_{r=0}^{d-a} (-1)^r C(d, r+a) C(a+r-1, r) / (t*(r+a) + 1)
///     =  1 - (a*t / (t*a + 1)) * C(d, a) / C(d + 1/t, d - a)
/// ```
pub fn verify_tail_closed_form(d: u64, a: u64, t: u64) -> Result<IdentityCheck> {
    if t == 0 {
        return Err(Error::invalid("verify_tail_closed_form requires t >= 1"));
    }
    if a > d {
        return Err(Error::invalid("verify_tail_closed_form requires a <= d"));
    }
    let mut lhs = Rat::zero();
    for r in 0..=(d - a) {
        let numer = binom(d as i64, (r + a) as i64) * binom((a + r) as i64 - 1, r as i64);
        let term = Rat::new(numer, BigInt::from(t * (r + a) + 1));
        if r % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let correction = Rat::new(
        BigInt::from(a * t) * binom(d as i64, a as i64),
        BigInt::from(t * a + 1),
    ) / frac_binom(d, t, d - a)?;
    let rhs = Rat::one() - correction;
    Ok(IdentityCheck { lhs, rhs })
}

/// Checks the positive-sum form of the same tail probability:
///
/// ```text
/// (1 / (t*a + 1)) * sum_{r=0}^{d-a} C(a-1+r, a-1) / C(a + 1/t + r, r)
///     =  1 - (t*a / (t*a + 1)) * C(d, a) / C(d + 1/t, d - a)
/// ```
///
/// where the denominator binomial is [`general_binom`] at the rational
/// argument `a + 1/t + r`. Unlike the alternating form every term here is
/// positive, which is what makes the partial sums monotone.
pub fn verify_positive_tail(d: u64, a: u64, t: u64) -> Result<IdentityCheck> {
    if t == 0 {
        return Err(Error::invalid("verify_positive_tail requires t >= 1"));
    }
    if a == 0 || a > d {
        return Err(Error::invalid("verify_positive_tail requires 1 <= a <= d"));
    }
    let one_over_t = Rat::new(BigInt::one(), BigInt::from(t));
    let mut sum = Rat::zero();
    for r in 0..=(d - a) {
        let x = rat_int((a + r) as i64) + &one_over_t;
        let numer = Rat::from_integer(binom((a - 1 + r) as i64, (a - 1) as i64));
        sum += numer / general_binom(&x, r);
    }
    let lhs = sum / rat_int((t * a + 1) as i64);
    let correction = Rat::new(
        BigInt::from(t * a) * binom(d as i64, a as i64),
        BigInt::from(t * a + 1),
    ) / frac_binom(d, t, d - a)?;
    let rhs = Rat::one() - correction;
    Ok(IdentityCheck { lhs, rhs })
}

/// Result of checking the generalized inclusion-exclusion count against a
/// direct tally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpieCheck {
    /// Elements of the universe lying in at least `a` of the sets, counted
    /// directly.
    pub direct: u64,
    /// The same count via `sum_i (-1)^i C(a+i-1, i) N_{a+i}` where `N_j` sums
    /// intersection sizes over all `j`-subsets of the family.
    pub formula: Rat,
}

impl MpieCheck {
    pub fn holds(&self) -> bool {
        self.formula == rat_int(self.direct as i64)
    }
}

/// Counts elements in at least `a` of `sets` two ways: directly, and through
/// the alternating intersection formula. The universe is `0..universe`; every
/// set must be a subset of it. `N_0` is the size of the whole universe, which
/// is why the universe has to be explicit (for `a = 0` both routes count all
/// of it).
pub fn verify_mpie(universe: u32, sets: &[Vec<u32>], a: usize) -> Result<MpieCheck> {
    if sets.len() > 63 {
        return Err(Error::invalid("verify_mpie supports at most 63 sets"));
    }
    let masks: Vec<Vec<bool>> = sets
        .iter()
        .map(|s| {
            let mut mask = vec![false; universe as usize];
            for &x in s {
                if x >= universe {
                    return Err(Error::invalid(format!(
                        "set element {x} outside universe 0..{universe}"
                    )));
                }
                mask[x as usize] = true;
            }
            Ok(mask)
        })
        .collect::<Result<_>>()?;

    let d = sets.len();
    let mut membership = vec![0usize; universe as usize];
    for mask in &masks {
        for (x, &in_set) in mask.iter().enumerate() {
            if in_set {
                membership[x] += 1;
            }
        }
    }
    let direct = membership.iter().filter(|&&c| c >= a).count() as u64;

    // N_j: total intersection size over all j-subsets of the family.
    let mut n_j = vec![BigInt::zero(); d + 1];
    n_j[0] = BigInt::from(universe);
    for subset in 1u64..(1u64 << d) {
        let j = subset.count_ones() as usize;
        let count = (0..universe as usize)
            .filter(|&x| {
                (0..d).all(|i| subset & (1 << i) == 0 || masks[i][x])
            })
            .count();
        n_j[j] += count;
    }

    let mut formula = Rat::zero();
    for i in 0..=(d.saturating_sub(a)) {
        let coeff = binom((a + i) as i64 - 1, i as i64);
        let term = Rat::from_integer(coeff * &n_j[a + i]);
        if i % 2 == 0 {
            formula += term;
        } else {
            formula -= term;
        }
    }
    Ok(MpieCheck { direct, formula })
}

/// The permutation-counting identities: each equates a weighted sum over
/// vertex arrangements with a closed form, and each left side divided by
/// `(t*d + 1)!` is the probability that a degree-`d` star center sees at
/// most `a_max` of its edges fully behind it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountingIdentity {
    /// Two vertices per edge besides the center (`t = 2`), threshold `a_max`:
    ///
    /// ```text
    /// sum_{a=0}^{a_max} sum_{i=0}^{d-a} C(d, a+i) C(a+i, i) 2^i (2d-2a-i)! (2a+i)!
    ///     =  (d!)^2 4^(d - a_max) (a_max + 1) C(2 a_max + 1, a_max)
    /// ```
    BackwardThreshold { d: u64, a_max: u64 },
    /// The `a_max = 0` specialization of the above:
    ///
    /// ```text
    /// sum_{i=0}^{d} C(d, i) 2^i (2d-i)! i!  =  (d! 2^d)^2
    /// ```
    FactorialSquare { d: u64 },
    /// The previous sum renormalized term by term:
    ///
    /// ```text
    /// sum_{i=0}^{d} C(d+i, d) 2^{-i}  =  2^d
    /// ```
    HalvedBinomial { d: u64 },
    /// General `t >= 2`, summing over how many of the `t` co-vertices of each
    /// partially-backward edge precede the center:
    ///
    /// ```text
    /// sum_{a=0}^{a_max} sum_{i=0}^{d-a} sum_{i_1+...+i_{t-1} = i}
    ///   C(d, a+i) * (a+i; a, i_1, ..., i_{t-1}) * prod_j C(t, j)^{i_j}
    ///   * (t*a + sum_j j*i_j)! * (t*d - t*a - sum_j j*i_j)!
    ///     =  (t*d + 1)! * (1 + 1/(t*a_max + t))^{-1}
    ///        * C(d, a_max + 1) / C(d + 1/t, d - a_max - 1)
    /// ```
    MultinomialThreshold { d: u64, a_max: u64, t: u64 },
}

/// Evaluates both sides of a counting identity exactly.
pub fn verify_counting_identity(id: CountingIdentity) -> Result<IdentityCheck> {
    match id {
        CountingIdentity::BackwardThreshold { d, a_max } => {
            if a_max > d {
                return Err(Error::invalid("BackwardThreshold requires a_max <= d"));
            }
            let mut lhs = BigInt::zero();
            for a in 0..=a_max {
                for i in 0..=(d - a) {
                    let term = binom(d as i64, (a + i) as i64)
                        * binom((a + i) as i64, i as i64)
                        * pow_int(2, i)
                        * factorial(2 * d - 2 * a - i)
                        * factorial(2 * a + i);
                    lhs += term;
                }
            }
            let df = factorial(d);
            let rhs = &df * &df
                * pow_int(4, d - a_max)
                * BigInt::from(a_max + 1)
                * binom((2 * a_max + 1) as i64, a_max as i64);
            Ok(IdentityCheck {
                lhs: Rat::from_integer(lhs),
                rhs: Rat::from_integer(rhs),
            })
        }
        CountingIdentity::FactorialSquare { d } => {
            let mut lhs = BigInt::zero();
            for i in 0..=d {
                lhs += binom(d as i64, i as i64)
                    * pow_int(2, i)
                    * factorial(2 * d - i)
                    * factorial(i);
            }
            let side = factorial(d) * pow_int(2, d);
            Ok(IdentityCheck {
                lhs: Rat::from_integer(lhs),
                rhs: Rat::from_integer(&side * &side),
            })
        }
        CountingIdentity::HalvedBinomial { d } => {
            let mut lhs = Rat::zero();
            for i in 0..=d {
                lhs += Rat::new(binom((d + i) as i64, d as i64), pow_int(2, i));
            }
            Ok(IdentityCheck {
                lhs,
                rhs: Rat::from_integer(pow_int(2, d)),
            })
        }
        CountingIdentity::MultinomialThreshold { d, a_max, t } => {
            if t < 2 {
                return Err(Error::invalid("MultinomialThreshold requires t >= 2"));
            }
            if a_max + 1 > d {
                return Err(Error::invalid("MultinomialThreshold requires a_max + 1 <= d"));
            }
            let mut lhs = BigInt::zero();
            for a in 0..=a_max {
                for i in 0..=(d - a) {
                    for_each_composition(i, (t - 1) as usize, &mut |parts| {
                        // weight = how many of the t co-vertices of each edge
                        // precede the center, summed with multiplicity
                        let before: u64 = parts
                            .iter()
                            .enumerate()
                            .map(|(idx, &c)| (idx as u64 + 1) * c)
                            .sum();
                        let mut mparts = vec![a];
                        mparts.extend_from_slice(parts);
                        let mut term = binom(d as i64, (a + i) as i64) * multinomial(&mparts);
                        for (idx, &c) in parts.iter().enumerate() {
                            term *= binom(t as i64, idx as i64 + 1).pow(c as u32);
                        }
                        term *= factorial(t * a + before) * factorial(t * d - t * a - before);
                        lhs += term;
                    });
                }
            }
            let a1 = a_max + 1;
            let prefactor = Rat::new(BigInt::from(t * a1), BigInt::from(t * a1 + 1));
            let rhs = Rat::from_integer(factorial(t * d + 1))
                * prefactor
                * Rat::from_integer(binom(d as i64, a1 as i64))
                / frac_binom(d, t, d - a1)?;
            Ok(IdentityCheck {
                lhs: Rat::from_integer(lhs),
                rhs,
            })
        }
    }
}

/// Calls `f` with every way to write `total` as an ordered sum of `parts`
/// non-negative integers.
fn for_each_composition(total: u64, parts: usize, f: &mut impl FnMut(&[u64])) {
    fn rec(remaining: u64, parts: usize, buf: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if buf.len() + 1 == parts {
            buf.push(remaining);
            f(buf);
            buf.pop();
            return;
        }
        for v in 0..=remaining {
            buf.push(v);
            rec(remaining - v, parts, buf, f);
            buf.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = Vec::with_capacity(parts);
    rec(total, parts, &mut buf, f);
}

/// True when the rational is an integer that fits comfortably in the sum
/// conventions (used by sanity checks in tests).
pub fn is_nonnegative_integer(v: &Rat) -> bool {
    v.is_integer() && !v.is_negative()
}
