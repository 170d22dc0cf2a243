//! Complex number literals: `0.5`, `-2e-3`, `i`, `-0.25i`, `0.3+0.1i`,
//! optionally wrapped in one pair of parentheses.

use crate::linalg::{c64, C64};

/// Scans an unsigned decimal number (`12`, `0.5`, `.5`, `1e-3`, `2.E4`)
/// starting at `start`. Returns the value and the index one past its end.
pub(crate) fn scan_unsigned(s: &[u8], start: usize) -> Option<(f64, usize)> {
    let mut i = start;
    let mut digits = 0;
    while i < s.len() && s[i].is_ascii_digit() {
        i += 1;
        digits += 1;
    }
    if i < s.len() && s[i] == b'.' {
        i += 1;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
            digits += 1;
        }
    }
    if digits == 0 {
        return None;
    }
    if i < s.len() && (s[i] == b'e' || s[i] == b'E') {
        let mut j = i + 1;
        if j < s.len() && (s[j] == b'+' || s[j] == b'-') {
            j += 1;
        }
        let exp_start = j;
        while j < s.len() && s[j].is_ascii_digit() {
            j += 1;
        }
        if j > exp_start {
            i = j;
        }
    }
    let text = std::str::from_utf8(&s[start..i]).ok()?;
    text.parse::<f64>().ok().map(|v| (v, i))
}

/// Scans an optionally signed complex literal without surrounding
/// whitespace or parentheses, e.g. `-1.5e-3+2i`. Returns the value and the
/// end index.
pub(crate) fn scan_complex(s: &[u8], start: usize) -> Option<(C64, usize)> {
    let mut i = start;
    let sign = |i: &mut usize| -> f64 {
        if *i < s.len() && (s[*i] == b'+' || s[*i] == b'-') {
            let neg = s[*i] == b'-';
            *i += 1;
            if neg {
                -1.0
            } else {
                1.0
            }
        } else {
            1.0
        }
    };
    let s1 = sign(&mut i);
    // Pure imaginary unit: `i`, `-i`.
    if i < s.len() && s[i] == b'i' {
        return Some((c64(0.0, s1), i + 1));
    }
    let (v1, after) = scan_unsigned(s, i)?;
    i = after;
    if i < s.len() && s[i] == b'i' {
        return Some((c64(0.0, s1 * v1), i + 1));
    }
    if i < s.len() && (s[i] == b'+' || s[i] == b'-') {
        let mut j = i;
        let s2 = sign(&mut j);
        if j < s.len() && s[j] == b'i' {
            return Some((c64(s1 * v1, s2), j + 1));
        }
        if let Some((v2, after2)) = scan_unsigned(s, j) {
            if after2 < s.len() && s[after2] == b'i' {
                return Some((c64(s1 * v1, s2 * v2), after2 + 1));
            }
        }
    }
    Some((c64(s1 * v1, 0.0), i))
}

/// Parses a whole string as a complex literal.
pub fn parse_complex(text: &str) -> Result<C64, String> {
    let t = text.trim();
    let inner = match t.strip_prefix('(') {
        Some(rest) => rest
            .strip_suffix(')')
            .ok_or_else(|| format!("unbalanced parenthesis in complex literal `{text}`"))?
            .trim(),
        None => t,
    };
    let bytes = inner.as_bytes();
    match scan_complex(bytes, 0) {
        Some((z, end)) if end == bytes.len() => Ok(z),
        _ => Err(format!("invalid complex literal `{text}`")),
    }
}

/// Lossless rendering with 17 significant digits: `re+imi`.
pub fn format_complex(z: C64) -> String {
    format!("{:.16e}{}i", z.re, signed_exp(z.im))
}

fn signed_exp(v: f64) -> String {
    if v.is_sign_negative() {
        format!("{v:.16e}")
    } else {
        format!("+{v:.16e}")
    }
}

/// Short human rendering (`0.5`, `(0.3+0.1i)`), used in relation text.
pub fn format_coefficient(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im.is_sign_negative() {
        format!("({}-{}i)", z.re, -z.im)
    } else {
        format!("({}+{}i)", z.re, z.im)
    }
}
