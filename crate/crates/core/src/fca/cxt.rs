//! Burmeister CXT reader/writer.
//!
//! Layout: a `B` header line, a blank line, the object count, the attribute
//! count, another blank line, one object name per line, one attribute name
//! per line, then one `.`/`X` row per object. The writer reproduces this
//! layout exactly, so parse→write round-trips byte-for-byte.

use std::path::Path;

use thiserror::Error;

use super::context::FormalContext;

#[derive(Debug, Error)]
pub enum CxtError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Context(#[from] super::context::ContextError),
}

fn syntax(line: usize, message: impl Into<String>) -> CxtError {
    CxtError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_cxt(text: &str) -> Result<FormalContext, CxtError> {
    let lines: Vec<&str> = text.split('\n').map(|l| l.trim_end_matches('\r')).collect();
    let get = |i: usize| -> Result<&str, CxtError> {
        lines
            .get(i)
            .copied()
            .ok_or_else(|| syntax(i + 1, "unexpected end of file"))
    };

    if get(0)? != "B" {
        return Err(syntax(1, format!("expected header `B`, found `{}`", get(0)?)));
    }
    if !get(1)?.is_empty() {
        return Err(syntax(2, "expected blank line after header"));
    }
    let object_count: usize = get(2)?
        .trim()
        .parse()
        .map_err(|_| syntax(3, format!("invalid object count `{}`", get(2).unwrap_or(""))))?;
    let attribute_count: usize = get(3)?
        .trim()
        .parse()
        .map_err(|_| syntax(4, format!("invalid attribute count `{}`", get(3).unwrap_or(""))))?;
    if !get(4)?.is_empty() {
        return Err(syntax(5, "expected blank line after counts"));
    }

    let mut line = 5;
    let mut objects = Vec::with_capacity(object_count);
    for _ in 0..object_count {
        objects.push(get(line)?.to_string());
        line += 1;
    }
    let mut attributes = Vec::with_capacity(attribute_count);
    for _ in 0..attribute_count {
        attributes.push(get(line)?.to_string());
        line += 1;
    }

    let mut incidence = Vec::with_capacity(object_count);
    for _ in 0..object_count {
        let row = get(line)?;
        if row.chars().count() != attribute_count {
            return Err(syntax(
                line + 1,
                format!(
                    "incidence row has {} characters, expected {}",
                    row.chars().count(),
                    attribute_count
                ),
            ));
        }
        let mut bits = Vec::with_capacity(attribute_count);
        for ch in row.chars() {
            match ch {
                'X' => bits.push(true),
                '.' => bits.push(false),
                other => {
                    return Err(syntax(
                        line + 1,
                        format!("invalid incidence character `{other}` (expected `.` or `X`)"),
                    ))
                }
            }
        }
        incidence.push(bits);
        line += 1;
    }

    for (i, rest) in lines.iter().enumerate().skip(line) {
        if !rest.is_empty() {
            return Err(syntax(i + 1, format!("trailing content `{rest}`")));
        }
    }

    Ok(FormalContext::new(objects, attributes, incidence)?)
}

pub fn write_cxt(ctx: &FormalContext) -> String {
    let mut out = String::from("B\n\n");
    out.push_str(&format!("{}\n{}\n\n", ctx.object_count(), ctx.attribute_count()));
    for o in ctx.objects() {
        out.push_str(o);
        out.push('\n');
    }
    for a in ctx.attributes() {
        out.push_str(a);
        out.push('\n');
    }
    for row in ctx.incidence_rows() {
        for &bit in row {
            out.push(if bit { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

pub fn read_cxt_file(path: &Path) -> Result<FormalContext, CxtError> {
    let text = std::fs::read_to_string(path).map_err(|source| CxtError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_cxt(&text)
}
