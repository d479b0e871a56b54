/// Significant digits used for every real number the CLI prints.
pub const SIG_DIGITS: usize = 12;

/// Formats `v` with [`SIG_DIGITS`] significant digits, trailing zeros
/// removed; plain notation for exponents in `[-5, 12)`, scientific otherwise.
/// Both zeros print as `0`.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();

    if !(-5..SIG_DIGITS as i32).contains(&exp) {
        let m = trim_fraction(mantissa);
        return format!("{sign}{m}e{exp}");
    }
    let (int_part, frac_part) = if exp >= 0 {
        let split = exp as usize + 1;
        (digits[..split].to_string(), digits[split..].to_string())
    } else {
        (
            "0".to_string(),
            format!("{}{}", "0".repeat((-exp - 1) as usize), digits),
        )
    };
    let frac = frac_part.trim_end_matches('0');
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

fn trim_fraction(m: &str) -> &str {
    if m.contains('.') {
        m.trim_end_matches('0').trim_end_matches('.')
    } else {
        m
    }
}

/// `v` rounded to what [`fmt_sig`] prints.
pub fn round_sig(v: f64) -> f64 {
    fmt_sig(v).parse().unwrap_or(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(0.75), "0.75");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(-0.125), "-0.125");
        assert_eq!(fmt_sig(5.0 / 11.0), "0.454545454545");
        assert_eq!(fmt_sig(123456.789), "123456.789");
        assert_eq!(fmt_sig(2.0 / 3.0 * 1e-3), "0.000666666666667");
        assert_eq!(fmt_sig(-1.5e-9), "-1.5e-9");
        assert_eq!(fmt_sig(1e15), "1e15");
        assert_eq!(fmt_sig(9.999999999999999), "10");
    }

    #[test]
    fn round_trip_is_stable() {
        for v in [1.0 / 3.0, 0.1 + 0.2, -7.25e-11, 0.6666666666666666, 3.0] {
            let once = fmt_sig(v);
            assert_eq!(fmt_sig(once.parse().unwrap()), once);
        }
    }
}
