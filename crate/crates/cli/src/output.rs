use std::io::Write;

use serde_json::Value;

const JSON_DIGITS: usize = 17;
const CSV_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// `x` rounded to `digits` significant digits, trailing zeros trimmed.
/// Plain notation for moderate exponents, scientific otherwise.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mant),
    };
    let ds: String = mant.chars().filter(|c| *c != '.').collect();
    let ds = ds.trim_end_matches('0');
    let ds = if ds.is_empty() { "0" } else { ds };
    if !(-5..=15).contains(&exp) {
        let (head, tail) = ds.split_at(1);
        let tail = if tail.is_empty() {
            String::new()
        } else {
            format!(".{tail}")
        };
        return format!("{sign}{head}{tail}e{exp}");
    }
    if exp < 0 {
        return format!("{sign}0.{}{ds}", "0".repeat((-exp - 1) as usize));
    }
    let int_len = exp as usize + 1;
    if ds.len() <= int_len {
        format!("{sign}{ds}{}", "0".repeat(int_len - ds.len()))
    } else {
        format!("{sign}{}.{}", &ds[..int_len], &ds[int_len..])
    }
}

/// JSON number with 17 significant digits (`null` for non-finite values).
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    serde_json::from_str(&sig(x, JSON_DIGITS)).expect("valid JSON number")
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn csv_num(x: f64) -> String {
    if x.is_finite() {
        sig(x, CSV_DIGITS)
    } else {
        String::new()
    }
}

/// Writes either the JSON document or the CSV table to stdout. A closed
/// pipe (`epi ... | head`) is not an error.
pub fn emit(format: Format, json: &Value, header: &[&str], rows: &[Vec<String>]) {
    let mut out = std::io::stdout().lock();
    let _ = match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(json).expect("serializable")
        ),
        Format::Csv => std::iter::once(header.join(","))
            .chain(rows.iter().map(|row| row.join(",")))
            .try_for_each(|line| writeln!(out, "{line}")),
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(0.16, 17), "0.16");
        assert_eq!(sig(0.1 + 0.2, 17), "0.30000000000000004");
        assert_eq!(sig(4.0, 17), "4");
        assert_eq!(sig(-2.0, 12), "-2");
        assert_eq!(sig(123456.5, 17), "123456.5");
        assert_eq!(sig(2f64.powi(-23), 17), "1.1920928955078125e-7");
        assert_eq!(sig(1.5e-7, 17), "1.4999999999999999e-7");
        assert_eq!(sig(2.5e20, 12), "2.5e20");
        assert_eq!(sig(0.000123, 12), "0.000123");
        assert_eq!(sig(1.0 / 3.0, 12), "0.333333333333");
    }

    #[test]
    fn json_round_trips_doubles() {
        for &x in &[
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI,
            -1e-300,
            6.02e23,
            f64::MIN_POSITIVE,
        ] {
            let v = num(x);
            assert_eq!(v.as_f64().unwrap(), x);
            let back: f64 = serde_json::from_str(&v.to_string()).unwrap();
            assert_eq!(back, x);
        }
        assert!(num(f64::NAN).is_null());
    }
}
