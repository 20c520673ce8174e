//! Exact rational scalars and vectors.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt::Write;

use crate::error::{HoroError, Result};

/// Exact rational number.
pub type Q = BigRational;
/// Dense vector of exact rationals.
pub type QVec = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn zeros(n: usize) -> QVec {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> QVec {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(s: &Q, a: &[Q]) -> QVec {
    a.iter().map(|x| s * x).collect()
}

pub fn neg(a: &[Q]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"0.25"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let err = || HoroError::Config {
        field: "rational".into(),
        message: format!("cannot parse `{s}` as a rational"),
    };
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let negative = ip.trim_start().starts_with('-');
        let ipv: BigInt = if ip.is_empty() || ip == "-" || ip == "+" {
            BigInt::zero()
        } else {
            ip.parse().map_err(|_| err())?
        };
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let den = num::pow(BigInt::from(10), fp.len());
        let fv: BigInt = if fp.is_empty() { BigInt::zero() } else { fp.parse().map_err(|_| err())? };
        let frac = Q::new(fv, den);
        let ipq = Q::from_integer(ipv);
        return Ok(if negative { ipq - frac } else { ipq + frac });
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Q::from_integer(n))
}

/// Canonical `"p/q"` (or `"p"` for integers) string.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_qvec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(", "))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn to_f64_vec(v: &[Q]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

/// Decimal rendering with 12 significant digits, computed exactly from the
/// rational so that output never depends on floating-point rounding.
pub fn decimal12(x: &Q) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let digits = 12usize;
    let neg = x.is_negative();
    let a = x.abs();
    // find exponent e with 10^e <= a < 10^(e+1)
    let ten = Q::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < Q::one() {
        scaled *= &ten;
        e -= 1;
    }
    // scaled in [1,10): take round(scaled * 10^(digits-1))
    let m = scaled * Q::from_integer(num::pow(BigInt::from(10), digits - 1));
    let mut mant = (m + qr(1, 2)).floor().to_integer();
    if mant >= num::pow(BigInt::from(10), digits) {
        mant /= BigInt::from(10);
        e += 1;
    }
    let s = mant.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-5..digits as i64).contains(&e) {
        if e >= 0 {
            let ip = (e + 1) as usize;
            out.push_str(&s[..ip]);
            let frac = s[ip..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        } else {
            out.push_str("0.");
            for _ in 0..(-e - 1) {
                out.push('0');
            }
            out.push_str(s.trim_end_matches('0'));
        }
    } else {
        out.push_str(&s[..1]);
        let frac = s[1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        let _ = write!(out, "e{e}");
    }
    out
}

/// Least common multiple of the denominators of `v`.
pub fn common_denominator(v: &[Q]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()))
}

/// Rescales a nonzero rational vector to the unique primitive integer vector
/// pointing in the same direction.
pub fn primitive_direction(v: &[Q]) -> Vec<BigInt> {
    let d = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(d.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| num::integer::gcd(acc, x.clone()));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
