//! Plain-text Hamiltonian files.
//!
//! One term per line as `<coefficient> <pauli-string>`. Text after `#` is
//! a comment; blank lines are skipped. Letters are case-insensitive and
//! the string may carry a leading sign, which is folded into the
//! coefficient. Comment lines of the form `# name: ...` or
//! `# encoding: ...` are kept as metadata.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliTerm};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct HamiltonianFile {
    pub n: usize,
    pub terms: Vec<PauliTerm>,
    pub source: Option<String>,
    pub metadata: BTreeMap<String, String>,
}

const META_KEYS: [&str; 2] = ["name", "encoding"];

pub fn parse_hamiltonian(text: &str) -> Result<HamiltonianFile> {
    let mut h = HamiltonianFile::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| Error::Parse { line, message };
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (raw, None),
        };
        if let Some((key, value)) = comment.and_then(|c| c.split_once(':')) {
            let key = key.trim().to_ascii_lowercase();
            if body.trim().is_empty() && META_KEYS.contains(&key.as_str()) {
                h.metadata.insert(key, value.trim().to_string());
            }
        }
        let mut fields = body.split_whitespace();
        let Some(coeff) = fields.next() else { continue };
        let pauli = fields
            .next()
            .ok_or_else(|| err("expected '<coefficient> <pauli-string>'".into()))?;
        if let Some(extra) = fields.next() {
            return Err(err(format!("unexpected token '{extra}'")));
        }
        let coeff: f64 = coeff
            .parse()
            .map_err(|_| err(format!("invalid coefficient '{coeff}'")))?;
        if !coeff.is_finite() {
            return Err(err(format!("non-finite coefficient '{coeff}'")));
        }
        let (neg, letters) = match pauli.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, pauli.strip_prefix('+').unwrap_or(pauli)),
        };
        if letters.is_empty() {
            return Err(err("empty Pauli string".into()));
        }
        let letters = letters
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| err(format!("invalid Pauli letter '{c}'"))))
            .collect::<Result<Vec<_>>>()?;
        if h.terms.is_empty() {
            h.n = letters.len();
        } else if letters.len() != h.n {
            return Err(err(format!(
                "length mismatch: expected {} qubits, found {}",
                h.n,
                letters.len()
            )));
        }
        let term = PauliTerm::new(letters, if neg { -coeff } else { coeff })
            .map_err(|e| err(e.to_string()))?;
        h.terms.push(term);
    }
    Ok(h)
}

pub fn read_hamiltonian(path: &Path) -> Result<HamiltonianFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let mut h = parse_hamiltonian(&text)?;
    h.source = Some(path.display().to_string());
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let h = parse_hamiltonian("0.5 XXIZ\n-0.25 ZZII").unwrap();
        assert_eq!(h.n, 4);
        assert_eq!(h.terms.len(), 2);
        assert_eq!(h.terms[1].coeff, -0.25);
    }

    #[test]
    fn comments_blanks_case_and_sign() {
        let text = "# name: demo\n\n  1.0 -zyxz  # trailing\n2 +iXyZ\n";
        let h = parse_hamiltonian(text).unwrap();
        assert_eq!(h.metadata.get("name").map(String::as_str), Some("demo"));
        assert_eq!(h.terms[0].coeff, -1.0);
        assert_eq!(h.terms[0].label(), "ZYXZ");
        assert_eq!(h.terms[1].label(), "IXYZ");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_hamiltonian("0.1 XY\n0.2 XYZ").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_hamiltonian("\n0.1 XQ").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_hamiltonian("abc XX").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_hamiltonian("inf XX").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        assert!(parse_hamiltonian("1.0").is_err());
        assert!(parse_hamiltonian("1.0 XX YY").is_err());
    }

    #[test]
    fn empty_input() {
        let h = parse_hamiltonian("# nothing\n\n").unwrap();
        assert_eq!(h.n, 0);
        assert!(h.terms.is_empty());
    }
}
