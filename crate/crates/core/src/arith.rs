// Copyright 2026 The voterbloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Exact rational helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn pow10(exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), exp as usize)
}

/// Renders `value` with exactly `places` decimals, truncating toward zero.
pub fn truncated_decimal(value: &Rational, places: u32) -> String {
    let scale = pow10(places);
    let scaled = (value * Rational::from_integer(scale.clone())).trunc().to_integer();
    let negative = scaled.is_negative();
    let (whole, frac) = scaled.abs().div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>width$}", width = places as usize)
    }
}

/// Parses a decimal (`"12.5"`), fraction (`"1/3"`) or integer literal exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mantissa: BigInt = format!("{whole}{frac}").parse().ok()?;
    let value = Rational::new(mantissa, pow10(frac.len() as u32));
    Some(if neg { -value } else { value })
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Smallest multiple of `1/denominator` that is `>= value`.
pub fn ceil_to(value: &Rational, denominator: &BigInt) -> Rational {
    let d = Rational::from_integer(denominator.clone());
    Rational::new((value * &d).ceil().to_integer(), denominator.clone())
}

pub fn clamp_unit(value: Rational) -> Rational {
    if value > Rational::one() {
        Rational::one()
    } else if value.is_negative() {
        Rational::zero()
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_goes_toward_zero() {
        assert_eq!(truncated_decimal(&ratio(2, 3), 5), "0.66666");
        assert_eq!(truncated_decimal(&ratio(-2, 3), 5), "-0.66666");
        assert_eq!(truncated_decimal(&int(833), 5), "833.00000");
        assert_eq!(truncated_decimal(&ratio(7, 2), 0), "3");
        assert_eq!(truncated_decimal(&ratio(1, 200_000), 5), "0.00000");
    }

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("0.01"), Some(ratio(1, 100)));
        assert_eq!(parse_rational("1/333"), Some(ratio(1, 333)));
        assert_eq!(parse_rational("-2"), Some(int(-2)));
        assert_eq!(parse_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn ceiling_grid() {
        let d = pow10(2);
        assert_eq!(ceil_to(&ratio(1, 3), &d), ratio(34, 100));
        assert_eq!(ceil_to(&ratio(1, 4), &d), ratio(1, 4));
    }
}
