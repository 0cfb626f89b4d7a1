//! Burmeister `.cxt` reading and writing.

use crate::context::{bitset, FormalContext};
use crate::error::{Error, Result};

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a Burmeister context. Accepts `\n` and `\r\n` line endings.
///
/// The second line is normally blank; a context name there is tolerated.
pub fn parse(text: &str) -> Result<FormalContext> {
    let lines: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    let get = |i: usize| -> Result<&str> {
        lines
            .get(i)
            .copied()
            .ok_or_else(|| err(i + 1, 1, "unexpected end of input"))
    };
    if get(0)?.trim() != "B" {
        return Err(err(1, 1, "expected 'B'"));
    }
    let count = |i: usize, what: &str| -> Result<usize> {
        let l = get(i)?.trim();
        l.parse::<usize>()
            .map_err(|_| err(i + 1, 1, format!("expected {what} count, found `{l}`")))
    };
    let n = count(2, "object")?;
    let m = count(3, "attribute")?;
    if !get(4)?.trim().is_empty() {
        return Err(err(5, 1, "expected blank line"));
    }
    let mut at = 5;
    let mut objects = Vec::with_capacity(n);
    for _ in 0..n {
        objects.push(get(at)?.to_string());
        at += 1;
    }
    let mut attributes = Vec::with_capacity(m);
    for _ in 0..m {
        attributes.push(get(at)?.to_string());
        at += 1;
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = get(at)?.trim_end();
        let mut row = Vec::with_capacity(m);
        for (col, c) in line.chars().enumerate() {
            match c {
                'X' | 'x' => row.push(col),
                '.' => {}
                _ => return Err(err(at + 1, col + 1, format!("unexpected character `{c}`"))),
            }
        }
        let width = line.chars().count();
        if width != m {
            return Err(err(
                at + 1,
                width.min(m) + 1,
                format!("row has {width} entries, expected {m}"),
            ));
        }
        rows.push(bitset(m, row));
        at += 1;
    }
    if lines[at..].iter().any(|l| !l.trim().is_empty()) {
        return Err(err(at + 1, 1, "trailing content after the incidence rows"));
    }
    FormalContext::from_rows(objects, attributes, rows)
}

/// Serializes a context in Burmeister format with `\n` line endings.
pub fn to_string(ctx: &FormalContext) -> String {
    let mut out = format!("B\n\n{}\n{}\n\n", ctx.n_objects(), ctx.n_attributes());
    for o in ctx.objects() {
        out.push_str(o);
        out.push('\n');
    }
    for a in ctx.attributes() {
        out.push_str(a);
        out.push('\n');
    }
    for g in 0..ctx.n_objects() {
        for m in 0..ctx.n_attributes() {
            out.push(if ctx.incident(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}
