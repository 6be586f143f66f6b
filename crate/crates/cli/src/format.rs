//! Number formatting for CSV output.

/// Scientific notation with `digits` digits after the point and a signed,
/// at least two-digit exponent: `sci(3.7312e-6, 2) == "3.73e-06"`.
pub fn sci(value: f64, digits: usize) -> String {
    if !value.is_finite() {
        return format!("{value}");
    }
    let raw = format!("{value:.digits$e}");
    let (mantissa, exponent) = raw.split_once('e').expect("exponent in {:e} output");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let sign = if exponent < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exponent.abs())
}

/// Three significant digits, the precision of the published error tables.
pub fn sci3(value: f64) -> String {
    sci(value, 2)
}

/// Enough digits to round-trip an `f64`.
pub fn sci_full(value: f64) -> String {
    sci(value, 16)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pads_exponents() {
        assert_eq!(sci3(3.7312e-6), "3.73e-06");
        assert_eq!(sci3(0.0), "0.00e+00");
        assert_eq!(sci3(-1234.5), "-1.23e+03");
        assert_eq!(sci3(1e-100), "1.00e-100");
        assert_eq!(sci3(f64::NAN), "NaN");
    }

    #[test]
    fn full_precision_round_trips() {
        for v in [0.1, 1.0 / 3.0, 6.02214076e23, -2.2250738585072014e-308, 5e-324] {
            assert_eq!(sci_full(v).parse::<f64>().unwrap(), v);
        }
    }
}
