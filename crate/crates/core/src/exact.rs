//! Exact scalars: big rationals, and positive reals of the form
//! `∏ bᵢ^{eᵢ}` with rational bases `bᵢ > 0` and rational exponents `eᵢ`.
//!
//! `ExactReal` is the comparison medium for every bound in the crate. A
//! comparison raises the quotient `a / b` to the lcm `L` of all exponent
//! denominators, which turns it into a single exact rational, and checks it
//! against 1. Nothing on that path touches floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest intermediate (in bits) an exact comparison may build.
pub const DEFAULT_MAX_BITS: u64 = 1_000_000;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` (optional leading sign, `q ≠ 0`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn bits(n: &BigInt) -> u64 {
    n.bits().max(1)
}

/// Decimal digits of a positive integer.
fn decimal_len(n: &BigInt) -> usize {
    n.magnitude().to_string().len()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactReal {
    // Sorted by base, bases ≠ 1, exponents ≠ 0.
    factors: Vec<(Rational, Rational)>,
}

impl ExactReal {
    pub fn one() -> Self {
        ExactReal { factors: Vec::new() }
    }

    /// `base^exponent`; panics if `base ≤ 0`.
    pub fn pow_of(base: Rational, exponent: Rational) -> Self {
        assert!(base.is_positive(), "ExactReal bases must be positive");
        Self::from_factors(vec![(base, exponent)])
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::pow_of(r, Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// `r^{1/2}`.
    pub fn sqrt_of(r: Rational) -> Self {
        Self::pow_of(r, rat(1, 2))
    }

    pub fn from_factors(factors: Vec<(Rational, Rational)>) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(factors.len());
        for (b, e) in factors {
            assert!(b.is_positive(), "ExactReal bases must be positive");
            let (b, e) = reduce_root(b, e);
            if e.is_zero() || b.is_one() {
                continue;
            }
            out.push((b, e));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(out.len());
        for (b, e) in out {
            match merged.last_mut() {
                Some(last) if last.0 == b => last.1 += e,
                _ => merged.push((b, e)),
            }
        }
        merged.retain(|(_, e)| !e.is_zero());
        ExactReal { factors: merged }
    }

    pub fn factors(&self) -> &[(Rational, Rational)] {
        &self.factors
    }

    pub fn mul(&self, other: &ExactReal) -> ExactReal {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        Self::from_factors(f)
    }

    pub fn div(&self, other: &ExactReal) -> ExactReal {
        self.mul(&other.recip())
    }

    pub fn recip(&self) -> ExactReal {
        self.pow(&-Rational::one())
    }

    pub fn pow(&self, e: &Rational) -> ExactReal {
        Self::from_factors(self.factors.iter().map(|(b, x)| (b.clone(), x * e)).collect())
    }

    pub fn powi(&self, e: i64) -> ExactReal {
        self.pow(&int(e))
    }

    /// The exact value when every exponent is an integer.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.factors.iter().all(|(_, e)| e.is_integer()) {
            let mut acc = Rational::one();
            for (b, e) in &self.factors {
                acc *= pow_rational(b, e.to_integer().to_i64()?);
            }
            Some(acc)
        } else {
            None
        }
    }

    /// `self^L` as a single rational, `L` the lcm of the exponent
    /// denominators.
    fn cleared(&self, max_bits: u64) -> Result<(BigInt, Rational)> {
        let l = self
            .factors
            .iter()
            .fold(BigInt::one(), |acc, (_, e)| acc.lcm(e.denom()));
        let mut size: u64 = 0;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut pending = Vec::with_capacity(self.factors.len());
        for (b, e) in &self.factors {
            let k = e * Rational::from_integer(l.clone());
            let k = k.to_integer();
            let mag = k.abs().to_u64().ok_or(Error::SizeGuard { limit: max_bits })?;
            size = size
                .saturating_add(mag.saturating_mul(bits(b.numer()) + bits(b.denom())));
            if size > max_bits {
                return Err(Error::SizeGuard { limit: max_bits });
            }
            pending.push((b, k.is_positive(), mag));
        }
        for (b, positive, mag) in pending {
            let p = mag as u32;
            let bn = num_traits::pow(b.numer().clone(), p as usize);
            let bd = num_traits::pow(b.denom().clone(), p as usize);
            if positive {
                num *= bn;
                den *= bd;
            } else {
                num *= bd;
                den *= bn;
            }
        }
        Ok((l, Rational::new(num, den)))
    }

    pub fn compare_with_limit(&self, other: &ExactReal, max_bits: u64) -> Result<Ordering> {
        let q = self.div(other);
        if q.factors.is_empty() {
            return Ok(Ordering::Equal);
        }
        let (_, r) = q.cleared(max_bits)?;
        Ok(r.cmp(&Rational::one()))
    }

    /// `floor(self · 10^k)`.
    fn floor_scaled(&self, k: u32, max_bits: u64) -> Result<BigInt> {
        let (l, r) = self.cleared(max_bits)?;
        let l = l.to_u32().ok_or(Error::SizeGuard { limit: max_bits })?;
        let scale = num_traits::pow(BigInt::from(10), (k as usize) * (l as usize));
        let floor = (r.numer() * scale).div_floor(r.denom());
        Ok(floor.nth_root(l))
    }

    /// Truncated fixed-point rendering with `frac_digits` decimals.
    pub fn to_fixed(&self, frac_digits: u32) -> String {
        match self.floor_scaled(frac_digits, DEFAULT_MAX_BITS) {
            Ok(n) => insert_point(&n, frac_digits as usize),
            Err(_) => "overflow".to_string(),
        }
    }

    /// Decimal with `digits` significant digits, either `"… (exact)"` when
    /// the value is a terminating decimal that fits, or `"≈…"` truncated
    /// toward zero otherwise.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if let Some(r) = self.rational_value() {
            if let Some(s) = exact_decimal(&r, digits) {
                return format!("{s} (exact)");
            }
        }
        match self.approx_digits(digits) {
            Ok(s) => format!("≈{s}"),
            Err(_) => "≈overflow".to_string(),
        }
    }

    fn approx_digits(&self, digits: usize) -> Result<String> {
        let ip = self.floor_scaled(0, DEFAULT_MAX_BITS)?;
        let k = if ip.is_positive() {
            digits.saturating_sub(decimal_len(&ip))
        } else {
            let mut j = 1u32;
            loop {
                if self.floor_scaled(j, DEFAULT_MAX_BITS)?.is_positive() {
                    break;
                }
                j += 1;
            }
            j as usize + digits - 1
        };
        let n = self.floor_scaled(k as u32, DEFAULT_MAX_BITS)?;
        Ok(insert_point(&n, k))
    }

    /// The value as a rational when it is one (e.g. `4^{1/2}`), with a
    /// size guard.
    pub fn rational_value(&self) -> Option<Rational> {
        if let Some(r) = self.as_rational() {
            return Some(r);
        }
        let (l, r) = self.cleared(DEFAULT_MAX_BITS).ok()?;
        let l = l.to_u32()?;
        let n = r.numer().nth_root(l);
        let d = r.denom().nth_root(l);
        if num_traits::pow(n.clone(), l as usize) == *r.numer()
            && num_traits::pow(d.clone(), l as usize) == *r.denom()
        {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }
}

/// Exact order of the represented values, under the default size guard.
pub fn exact_compare(a: &ExactReal, b: &ExactReal) -> Result<Ordering> {
    a.compare_with_limit(b, DEFAULT_MAX_BITS)
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        exact_compare(self, other).ok()
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|(b, e)| render_power(b, e)).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// `b^{e}` in certificate notation; `(p/q)` is parenthesized under a power.
pub fn render_power(base: &Rational, exponent: &Rational) -> String {
    if exponent.is_one() {
        return format_rational(base);
    }
    let b = if base.is_integer() && !base.is_negative() {
        format_rational(base)
    } else {
        format!("({})", format_rational(base))
    };
    format!("{b}^{{{}}}", format_rational(exponent))
}

pub fn pow_rational(b: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(b.clone(), e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

/// Rewrites `b^{p/q}` as `c^{p t / q}` when `b = c^t` for some `t | q`.
fn reduce_root(b: Rational, e: Rational) -> (Rational, Rational) {
    let q = match e.denom().to_u32() {
        Some(q) if q > 1 => q,
        _ => return (b, e),
    };
    if bits(b.numer()) + bits(b.denom()) > 4096 {
        return (b, e);
    }
    let mut t = q;
    while t > 1 {
        if q % t == 0 {
            let n = b.numer().nth_root(t);
            let d = b.denom().nth_root(t);
            if num_traits::pow(n.clone(), t as usize) == *b.numer()
                && num_traits::pow(d.clone(), t as usize) == *b.denom()
            {
                return (Rational::new(n, d), e * int(t as i64));
            }
        }
        t -= 1;
    }
    (b, e)
}

fn insert_point(n: &BigInt, frac: usize) -> String {
    let neg = n.sign() == Sign::Minus;
    let mut s = n.magnitude().to_string();
    if frac > 0 {
        if s.len() <= frac {
            s = format!("{}{}", "0".repeat(frac + 1 - s.len()), s);
        }
        s.insert(s.len() - frac, '.');
    }
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

/// Terminating decimal expansion of `r` if it has at most `digits`
/// significant digits.
fn exact_decimal(r: &Rational, digits: usize) -> Option<String> {
    let mut d = r.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    let frac = twos.max(fives);
    let scaled = r.numer() * num_traits::pow(BigInt::from(10), frac) / r.denom();
    let sig = if scaled.is_zero() {
        1
    } else {
        let s = scaled.magnitude().to_string();
        let trailing = if frac > 0 { 0 } else { s.len() - s.trim_end_matches('0').len() };
        s.trim_start_matches('0').len() - trailing
    };
    if sig > digits {
        return None;
    }
    Some(insert_point(&scaled, frac))
}

/// Signed rational rendering in the same decimal format.
pub fn rational_to_decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0 (exact)".to_string();
    }
    let s = ExactReal::from_rational(r.abs()).to_decimal(digits);
    if r.is_negative() {
        match s.strip_prefix('≈') {
            Some(rest) => format!("≈-{rest}"),
            None => format!("-{s}"),
        }
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sqrt2_below_three_halves() {
        let a = ExactReal::sqrt_of(int(2));
        let b = ExactReal::from_rational(rat(3, 2));
        assert_eq!(exact_compare(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(exact_compare(&b, &a).unwrap(), Ordering::Greater);
    }

    #[test]
    fn root_of_perfect_square_is_equal() {
        let a = ExactReal::sqrt_of(int(4));
        assert_eq!(exact_compare(&a, &ExactReal::from_int(2)).unwrap(), Ordering::Equal);
        assert_eq!(a.to_string(), "2");
    }

    #[test]
    fn integer_power_of_fraction() {
        let a = ExactReal::pow_of(rat(1, 2), int(3));
        let b = ExactReal::from_rational(rat(1, 8));
        assert_eq!(exact_compare(&a, &b).unwrap(), Ordering::Equal);
    }

    #[test]
    fn cancellation_drops_factors() {
        let a = ExactReal::sqrt_of(int(2)).mul(&ExactReal::pow_of(int(2), rat(-1, 2)));
        assert_eq!(a, ExactReal::one());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(ExactReal::sqrt_of(int(2)).to_decimal(5), "≈1.4142");
        assert_eq!(ExactReal::from_rational(rat(1, 4)).to_decimal(3), "0.25 (exact)");
        let a = ExactReal::sqrt_of(int(3)).mul(&ExactReal::from_int(2));
        assert_eq!(a.to_decimal(4), "≈3.464");
        assert_eq!(ExactReal::from_rational(rat(1, 3)).to_decimal(3), "≈0.333");
        assert_eq!(ExactReal::from_rational(rat(1, 800)).to_decimal(2), "≈0.0012");
        assert_eq!(ExactReal::from_int(128).to_fixed(12), "128.000000000000");
        assert_eq!(rational_to_decimal(&rat(-5, 2), 4), "-2.5 (exact)");
        assert_eq!(rational_to_decimal(&rat(-1, 3), 2), "≈-0.33");
    }

    #[test]
    fn rendering_of_factored_bounds() {
        let v = ExactReal::from_factors(vec![
            (int(2), rat(1, 2)),
            (int(3), int(1)),
            (rat(5, 2), int(3)),
        ]);
        // canonical order is by base value
        assert_eq!(v.to_string(), "2^{1/2} * (5/2)^{3} * 3");
    }

    #[test]
    fn size_guard_fires() {
        let a = ExactReal::pow_of(int(3), int(1_000_000));
        let b = ExactReal::from_int(2);
        assert_eq!(
            a.compare_with_limit(&b, 1000),
            Err(Error::SizeGuard { limit: 1000 })
        );
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("-2/5"), Some(rat(-2, 5)));
        assert_eq!(parse_rational("6/3"), Some(int(2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rat(-4, 6)), "-2/3");
        assert_eq!(format_rational(&int(7)), "7");
    }

    fn small_pos() -> impl Strategy<Value = Rational> {
        (1i64..60, 1i64..60).prop_map(|(n, d)| rat(n, d))
    }

    fn small_exp() -> impl Strategy<Value = Rational> {
        (-6i64..7, 1i64..4).prop_map(|(n, d)| rat(n, d))
    }

    fn exact_real() -> impl Strategy<Value = ExactReal> {
        proptest::collection::vec((small_pos(), small_exp()), 0..4)
            .prop_map(ExactReal::from_factors)
    }

    proptest! {
        #[test]
        fn rational_field_roundtrip(a in (-500i64..500, 1i64..500), b in (-500i64..500, 1i64..500)) {
            let a = rat(a.0, a.1);
            let b = rat(b.0, b.1);
            prop_assert_eq!((&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b) / &b, a);
            }
        }

        #[test]
        fn compare_consistent_with_multiplication(a in exact_real(), b in exact_real(), c in exact_real()) {
            let ab = exact_compare(&a, &b).unwrap();
            let acbc = exact_compare(&a.mul(&c), &b.mul(&c)).unwrap();
            prop_assert_eq!(ab, acbc);
        }

        #[test]
        fn compare_is_antisymmetric(a in exact_real(), b in exact_real()) {
            prop_assert_eq!(exact_compare(&a, &b).unwrap(), exact_compare(&b, &a).unwrap().reverse());
        }

        #[test]
        fn integer_exponents_agree_with_rational_order(
            f in proptest::collection::vec((small_pos(), -4i64..5), 0..4),
            r in small_pos(),
        ) {
            let a = ExactReal::from_factors(f.iter().map(|(b, e)| (b.clone(), int(*e))).collect());
            let collapsed = f.iter().fold(Rational::one(), |acc, (b, e)| acc * pow_rational(b, *e));
            let expected = collapsed.cmp(&r);
            prop_assert_eq!(exact_compare(&a, &ExactReal::from_rational(r)).unwrap(), expected);
            prop_assert_eq!(a.as_rational(), Some(collapsed));
        }

        #[test]
        fn fixed_rendering_brackets_value(n in 1i64..10_000, d in 1i64..10_000) {
            // floor(√(n/d) · 10^6) squared never exceeds n/d · 10^12.
            let v = ExactReal::sqrt_of(rat(n, d));
            let s = v.to_fixed(6).replace('.', "");
            let t: BigInt = s.parse().unwrap();
            let lo = Rational::from_integer(&t * &t);
            let hi = Rational::from_integer((&t + 1) * (&t + 1));
            let target = rat(n, d) * big(num_traits::pow(BigInt::from(10), 12));
            prop_assert!(lo <= target && target < hi);
        }
    }
}
