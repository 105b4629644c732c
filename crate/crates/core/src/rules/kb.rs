use thiserror::Error;

use crate::logic::{parse_sequent, Sequent};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}: {source}")]
pub struct KbError {
    pub line: usize,
    #[source]
    pub source: crate::logic::ParseError,
}

/// Knowledge-base files: one `lhs |- rhs` or `lhs |~ rhs` per line, `#`
/// comments, blank lines ignored.
pub fn parse_kb(text: &str) -> Result<Vec<Sequent>, KbError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        match parse_sequent(line) {
            Ok(s) => out.push(s),
            Err(source) => return Err(KbError { line: i + 1, source }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::SequentKind;

    #[test]
    fn parses_sequents_and_skips_comments() {
        let kb = parse_kb("# herbivores\nC1 |~ C2\n\nC1 & C3 |- C1   # trailing note\n").unwrap();
        assert_eq!(kb.len(), 2);
        assert_eq!(kb[0].kind, SequentKind::Defeasible);
        assert_eq!(kb[1].kind, SequentKind::Strict);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_kb("C1 |~ C2\nC1 & |~ C3\n").unwrap_err();
        assert_eq!(err.line, 2);
    }
}
