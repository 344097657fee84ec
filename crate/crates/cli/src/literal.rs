use num_complex::Complex64;

/// Parses `a`, `a+bi` or `a-bi` (decimal floats, no spaces, `i` suffix required
/// on the imaginary part).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let bad = |why: &str| format!("malformed complex literal {text:?}: {why}");
    if text.is_empty() {
        return Err(bad("empty"));
    }
    if text.chars().any(char::is_whitespace) {
        return Err(bad("spaces are not allowed"));
    }
    let Some(body) = text.strip_suffix('i') else {
        return real_part(text)
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|e| bad(&e));
    };
    // the sign that starts the imaginary part: last +/- not at position 0 and not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'))
        .ok_or_else(|| bad("expected a real part before the imaginary part"))?;
    let (re, im) = body.split_at(split);
    if im.len() < 2 {
        return Err(bad("missing imaginary coefficient"));
    }
    let re = real_part(re).map_err(|e| bad(&e))?;
    let im = real_part(im).map_err(|e| bad(&e))?;
    Ok(Complex64::new(re, im))
}

fn real_part(text: &str) -> Result<f64, String> {
    let ok = text
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | '+' | '-' | 'e' | 'E'));
    if !ok || !text.chars().any(|c| c.is_ascii_digit()) {
        return Err(format!("{text:?} is not a decimal number"));
    }
    text.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("{text:?} is not a finite decimal number"))
}

/// Inverse of [`parse_complex`] for display.
pub fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_complex("2.5").unwrap(), Complex64::new(2.5, 0.0));
        assert_eq!(parse_complex("2.5+0i").unwrap(), Complex64::new(2.5, 0.0));
        assert_eq!(parse_complex("3+2i").unwrap(), Complex64::new(3.0, 2.0));
        assert_eq!(
            parse_complex("-1-2.5i").unwrap(),
            Complex64::new(-1.0, -2.5)
        );
        assert_eq!(
            parse_complex("1e-3+2E+1i").unwrap(),
            Complex64::new(1e-3, 20.0)
        );
        assert_eq!(parse_complex("-4").unwrap(), Complex64::new(-4.0, 0.0));
    }

    #[test]
    fn rejected_forms() {
        for t in [
            "", "2.5+", "2.5+i", "2i", "3 + 2i", "3+2j", "inf", "nan+1i", "1+nani", "abc", "1+2",
            "+i",
        ] {
            assert!(parse_complex(t).is_err(), "{t:?} should be rejected");
        }
    }

    #[test]
    fn format_round_trips() {
        for z in [
            Complex64::new(3.0, 2.0),
            Complex64::new(-0.5, -1e-7),
            Complex64::new(4.0, 0.0),
        ] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }
}
