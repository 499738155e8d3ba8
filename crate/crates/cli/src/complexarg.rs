//! Parsing of complex amplitudes from command-line strings.
//!
//! Accepted forms: `1.5`, `-2`, `2i`, `-i`, `1+2i`, `0.5-0.5i`, `1e-3+2e-4i`.

use num_complex::Complex64 as C64;

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let s = s.trim().replace(' ', "");
    if s.is_empty() {
        return Err("empty complex number".to_string());
    }
    if !s.ends_with('i') && !s.ends_with('I') {
        return s
            .parse::<f64>()
            .map(|re| C64::new(re, 0.0))
            .map_err(|_| format!("cannot parse `{s}` as a real number"));
    }
    let body = &s[..s.len() - 1];
    // Find the sign splitting re from im: last +/- that is not the leading
    // sign and not part of an exponent.
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let b = bytes[idx];
        if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let (re_str, im_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str
            .parse::<f64>()
            .map_err(|_| format!("cannot parse real part `{re_str}` of `{s}`"))?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other
            .parse::<f64>()
            .map_err(|_| format!("cannot parse imaginary part `{other}` of `{s}`"))?,
    };
    Ok(C64::new(re, im))
}
