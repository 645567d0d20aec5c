//! Number formatting shared by the CSV writers.

/// Plain decimal rendering of `x` rounded to `digits` significant digits,
/// with trailing zeros removed. No exponent notation, no grouping.
pub fn significant(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent form");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let raw: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    // raw holds `digits` digits with the decimal point after the first one.
    let point = 1 + exponent;
    let mut body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), raw)
    } else if point as usize >= raw.len() {
        format!("{}{}", raw, "0".repeat(point as usize - raw.len()))
    } else {
        let (int_part, frac_part) = raw.split_at(point as usize);
        format!("{int_part}.{frac_part}")
    };
    if body.contains('.') {
        body = body.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if negative {
        format!("-{body}")
    } else {
        body
    }
}
