//! Text formatting for CSV output.

/// Formats `v` with at most 15 significant digits, '.' as decimal separator
/// and no exponent for magnitudes in [1e-5, 1e15).
pub fn sig15(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim(format!("{v:.decimals$}"))
    } else {
        let s = format!("{v:.14e}");
        let (mantissa, e) = s.split_once('e').expect("exponent");
        format!("{}e{e}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

/// Quotes a CSV field when it contains a separator, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
