//! Parsing of inline and file-based inputs.

use std::fs;
use std::path::Path;

use nilcone::gf::{FieldDesc, FieldElem};
use nilcone::quadform::{form_dim, QuadForm};

/// One field element. Over a prime field any integer is accepted and reduced
/// mod `p`; over `F_{p^k}` the value must be an encoding in `0..q`.
fn element(f: &FieldDesc, token: &str) -> Result<FieldElem, String> {
    let t = token.trim();
    if f.degree() == 1 {
        let n: i64 = t.parse().map_err(|_| format!("'{t}' is not an integer"))?;
        Ok(f.from_int(n))
    } else {
        let n: u32 = t.parse().map_err(|_| format!("'{t}' is not a field element encoding"))?;
        f.elem(n).map_err(|e| e.to_string())
    }
}

/// Comma-separated upper-triangular coefficients `q_11, q_12, …, q_nn` in
/// row-major order.
pub fn parse_form(f: &FieldDesc, n: usize, text: &str) -> Result<QuadForm, String> {
    let coeffs = text
        .split(',')
        .map(|t| element(f, t))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() != form_dim(n) {
        return Err(format!(
            "expected {} coefficients for {n} variables, got {}",
            form_dim(n),
            coeffs.len()
        ));
    }
    Ok(QuadForm::from_coeffs(f, n, coeffs))
}

/// One form per line; blank lines and lines starting with `#` are skipped.
pub fn read_forms(f: &FieldDesc, n: usize, path: &Path) -> Result<Vec<(String, QuadForm)>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            parse_form(f, n, l)
                .map(|q| (l.to_string(), q))
                .map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))
        })
        .collect()
}

/// Comma-separated integer degrees of the standard basis vectors.
pub fn parse_degrees(n: usize, text: &str) -> Result<Vec<i32>, String> {
    let deg = text
        .split(',')
        .map(|t| t.trim().parse::<i32>().map_err(|_| format!("'{}' is not an integer degree", t.trim())))
        .collect::<Result<Vec<_>, _>>()?;
    if deg.len() != n {
        return Err(format!("expected {n} degrees, got {}", deg.len()));
    }
    Ok(deg)
}

/// Comma-separated field element encodings.
pub fn format_vector(v: &[FieldElem]) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use nilcone::gf::make_field;

    #[test]
    fn forms() {
        let f = make_field(3, 1).unwrap();
        let q = parse_form(&f, 2, "1, -1,4").unwrap();
        assert_eq!(q.coeffs(), &[f.from_int(1), f.from_int(2), f.from_int(1)]);
        assert!(parse_form(&f, 2, "1,0").is_err());
        let f4 = make_field(2, 2).unwrap();
        assert!(parse_form(&f4, 2, "3,0,0").is_ok());
        assert!(parse_form(&f4, 2, "4,0,0").is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(parse_degrees(2, "-1,1").unwrap(), vec![-1, 1]);
        assert!(parse_degrees(3, "-1,1").is_err());
    }
}
