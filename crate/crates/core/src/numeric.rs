//! Exact rational helpers shared by the measure-valued parts of the crate.
//!
//! Masses, weights and volumes are exact [`Rational`]s; lengths are `f64`.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

pub type Rational = Ratio<i64>;

/// Parses `"3"`, `"-0.125"`, `"7/4"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Ratio::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.len() > 18 {
        return None;
    }
    let den = 10i64.checked_pow(frac_part.len() as u32)?;
    let int_value: i64 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
    let frac_value: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().ok()? };
    let num = int_value.checked_mul(den)?.checked_add(frac_value)?;
    let q = Ratio::new(num, den);
    Some(if negative { -q } else { q })
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact decimal expansion when the denominator divides a power of ten,
/// otherwise `num/den`.
pub fn format_decimal(q: &Rational) -> String {
    let mut den = *q.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while den % 2 == 0 {
        den /= 2;
        twos += 1;
    }
    while den % 5 == 0 {
        den /= 5;
        fives += 1;
    }
    if den != 1 {
        return format_rational(q);
    }
    let digits = twos.max(fives);
    let Some(scale) = 10i128.checked_pow(digits) else {
        return format_rational(q);
    };
    let scaled = *q.numer() as i128 * (scale / *q.denom() as i128);
    if digits == 0 {
        return scaled.to_string();
    }
    let sign = if scaled < 0 { "-" } else { "" };
    let abs = scaled.unsigned_abs();
    let int = abs / scale as u128;
    let frac = abs % scale as u128;
    format!("{sign}{int}.{frac:0width$}", width = digits as usize)
}

/// Sum of the selected entries of `values`.
pub fn sum_at(values: &[Rational], indices: impl IntoIterator<Item = usize>) -> Rational {
    // common-denominator accumulation; falls back to reduced addition on overflow
    let mut num: i128 = 0;
    let mut den: i128 = 1;
    let mut slow = Rational::zero();
    for i in indices {
        let q = &values[i];
        let (qn, qd) = (*q.numer() as i128, *q.denom() as i128);
        if qd == den {
            match num.checked_add(qn) {
                Some(v) => num = v,
                None => slow += *q,
            }
            continue;
        }
        let l = (den / num_integer::gcd(den, qd)).checked_mul(qd);
        let scaled = l.and_then(|l| Some((l, num.checked_mul(l / den)?, qn.checked_mul(l / qd)?)));
        match scaled.and_then(|(l, a, b)| Some((l, a.checked_add(b)?))) {
            Some((l, v)) if l <= i64::MAX as i128 => {
                den = l;
                num = v;
            }
            _ => slow += *q,
        }
    }
    let g = num_integer::gcd(num, den).max(1);
    let (n, d) = (num / g, den / g);
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) => slow + Ratio::new(n, d),
        _ => panic!("rational sum overflows 64 bits"),
    }
}

/// Exact comparison `q < x` for a finite float `x`.
pub fn rational_lt_f64(q: &Rational, x: f64) -> bool {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    match BigRational::from_float(x) {
        Some(bx) => {
            let bq = BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()));
            bq < bx
        }
        None => x == f64::INFINITY,
    }
}
