//! Exact rationals and their JSON rendering.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num / den` in canonical form. Panics on a zero denominator.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn from_int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

pub fn from_biguint(value: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, value.clone()))
}

/// `"p/q"`, or just `"p"` for integers.
pub fn display(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering rounded to `digits` significant digits. Display only.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    assert!(digits > 0);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let num = r.numer().abs().to_biguint().expect("absolute value");
    let den = r.denom().to_biguint().expect("positive denominator");

    // exponent e with 10^e <= num/den < 10^(e+1)
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    if scaled_ge(&num, &den, exp) {
        while scaled_ge(&num, &den, exp + 1) {
            exp += 1;
        }
    } else {
        while !scaled_ge(&num, &den, exp) {
            exp -= 1;
        }
    }

    // mantissa = round(num/den * 10^(digits-1-exp))
    let shift = digits as i64 - 1 - exp;
    let (n, d) = if shift >= 0 {
        (num * pow10(shift as u32), den)
    } else {
        (num, den * pow10((-shift) as u32))
    };
    let (mut q, rem) = n.div_rem(&d);
    if rem * 2u32 >= d {
        q += 1u32;
    }
    let mut mantissa = q.to_string();
    if mantissa.len() > digits {
        mantissa.pop();
        exp += 1;
    }

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-6..digits as i64).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            out.push_str(&mantissa[..int_len]);
            let frac = mantissa[int_len..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        } else {
            out.push_str("0.");
            out.push_str(&"0".repeat((-exp - 1) as usize));
            out.push_str(mantissa.trim_end_matches('0'));
        }
    } else {
        out.push_str(&mantissa[..1]);
        let frac = mantissa[1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out.push_str(&format!("e{exp}"));
    }
    out
}

fn pow10(e: u32) -> BigUint {
    BigUint::from(10u32).pow(e)
}

// num/den >= 10^exp
fn scaled_ge(num: &BigUint, den: &BigUint, exp: i64) -> bool {
    if exp >= 0 {
        *num >= den * pow10(exp as u32)
    } else {
        num * pow10((-exp) as u32) >= *den
    }
}

/// Lossy conversion for display and tolerance checks on finite-n ratios.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn json_int(value: &BigInt) -> serde_json::Number {
    match value.to_i64() {
        Some(v) => v.into(),
        None => serde_json::Number::from_string_unchecked(value.to_string()),
    }
}

/// Serializes a rational as `{"num": .., "den": .., "decimal": ".."}`.
/// Integers are exact JSON numbers of any size.
pub mod json {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 3)?;
        st.serialize_field("num", &json_int(r.numer()))?;
        st.serialize_field("den", &json_int(r.denom()))?;
        st.serialize_field("decimal", &to_decimal(r, 12))?;
        st.end()
    }
}

pub mod json_biguint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        json_int(&BigInt::from_biguint(Sign::Plus, v.clone())).serialize(s)
    }
}

/// Newtype for places where a rational is a collection element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        json::serialize(&self.0, s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JsonBigUint(pub BigUint);

impl Serialize for JsonBigUint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        json_biguint::serialize(&self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = ratio(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(display(&ratio(4, 2)), "2");
        assert_eq!(display(&ratio(216, 625)), "216/625");
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&ratio(5, 9), 12), "0.555555555556");
        assert_eq!(to_decimal(&ratio(1, 4), 12), "0.25");
        assert_eq!(to_decimal(&ratio(409, 625), 12), "0.6544");
        assert_eq!(to_decimal(&ratio(-2, 3), 3), "-0.667");
        assert_eq!(to_decimal(&ratio(999_999, 1_000_000), 3), "1");
        assert_eq!(to_decimal(&from_int(1234), 12), "1234");
        assert_eq!(to_decimal(&ratio(1, 1_000_000_000), 12), "1e-9");
        assert_eq!(to_decimal(&ratio(1, 3_000_000), 4), "3.333e-7");
        assert_eq!(to_decimal(&Rational::zero(), 12), "0");
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(JsonRational(ratio(5, 9))).unwrap();
        assert_eq!(v["num"], 5);
        assert_eq!(v["den"], 9);
        let huge = BigUint::from(2u32).pow(100);
        let text = serde_json::to_string(&JsonBigUint(huge.clone())).unwrap();
        assert_eq!(text, huge.to_string());
    }
}
