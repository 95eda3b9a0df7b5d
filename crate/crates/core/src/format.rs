//! Deterministic number formatting for reports.

/// Significant digits used when no precision is requested.
pub const DEFAULT_PRECISION: usize = 6;

/// Formats like C's `%.{digits}g`: `digits` significant digits, trailing
/// zeros dropped, scientific notation outside `[1e-4, 10^digits)`.
/// Non-finite values print as `inf`, `-inf` and `nan`.
pub fn number(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa), sign, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}")).to_string()
    }
}

/// Serializes finite values as JSON numbers and the rest as the `inf`,
/// `-inf` and `nan` tokens, which JSON cannot represent.
pub fn json_number<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(&number(*x, 1))
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::number;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.5, "0.5"),
            (3.5, "3.5"),
            (2.0, "2"),
            (1.0 / 3.0, "0.333333"),
            (123456.0, "123456"),
            (1234567.0, "1.23457e+06"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (-2.5, "-2.5"),
            (0.620115, "0.620115"),
            (999999.5, "1e+06"),
            (f64::INFINITY, "inf"),
            (f64::NEG_INFINITY, "-inf"),
            (-0.0, "0"),
        ];
        for (x, want) in cases {
            assert_eq!(number(x, 6), want, "{x}");
        }
        assert_eq!(number(std::f64::consts::PI, 3), "3.14");
        assert_eq!(number(std::f64::consts::PI, 12), "3.14159265359");
    }
}
