//! Line-oriented text format for structures.
//!
//! ```text
//! context gp|gpds|gpcirc
//! carrier N
//! names n_0 ... n_{N-1}          # optional
//! objects K                      # gpds only, followed by
//! src i_0 ... i_{N-1}
//! tgt i_0 ... i_{N-1}
//! id j_0 ... j_{K-1}
//! op NAME ARITY
//! <table rows>
//! ```
//!
//! Unary tables are one row of `N` entries, binary tables `N` rows of `N`
//! entries. In `gpds` binary tables list `a b c` triples for the defined
//! entries only and end with a line `end`. `#` starts a comment. When
//! `N = 0` the table rows are omitted.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Context, FiniteStructure, GroupoidData, Operation, Table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug, Clone)]
struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.number, column, message: message.into() }
    }

    fn end_column(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.column + t.text.chars().count())
    }

    fn keyword(&self) -> &str {
        self.tokens[0].text
    }

    fn numbers(&self, skip: usize, expected: usize, bound: usize) -> Result<Vec<usize>, ParseError> {
        let values = &self.tokens[skip..];
        if values.len() != expected {
            let column = values.get(expected).map_or(self.end_column(), |t| t.column);
            return Err(self.err(
                column,
                format!("expected {expected} entries, found {}", values.len()),
            ));
        }
        values.iter().map(|t| number(self, t, bound)).collect()
    }
}

fn number(line: &Line<'_>, token: &Token<'_>, bound: usize) -> Result<usize, ParseError> {
    let v: usize = token
        .text
        .parse()
        .map_err(|_| line.err(token.column, format!("expected a number, found `{}`", token.text)))?;
    if v >= bound {
        return Err(line.err(token.column, format!("{v} is out of range (must be below {bound})")));
    }
    Ok(v)
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in content.char_indices().enumerate() {
            if ch.is_whitespace() {
                if let Some((s, c)) = start.take() {
                    tokens.push(Token { text: &content[s..byte], column: c + 1 });
                }
            } else if start.is_none() {
                start = Some((byte, col));
            }
        }
        if let Some((s, c)) = start {
            tokens.push(Token { text: &content[s..], column: c + 1 });
        }
        if !tokens.is_empty() {
            lines.push(Line { number: i + 1, tokens });
        }
    }
    lines
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<Line<'a>, ParseError> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok(l.clone())
            }
            None => Err(ParseError {
                line: self.last_line + 1,
                column: 1,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn keyword_line(&mut self, keyword: &str) -> Result<Line<'a>, ParseError> {
        let line = self.next(&format!("`{keyword}`"))?;
        if line.keyword() != keyword {
            return Err(line.err(
                line.tokens[0].column,
                format!("expected `{keyword}`, found `{}`", line.keyword()),
            ));
        }
        Ok(line)
    }

    fn scalar(&mut self, keyword: &str) -> Result<usize, ParseError> {
        let line = self.keyword_line(keyword)?;
        Ok(line.numbers(1, 1, usize::MAX)?[0])
    }
}

/// Parses a structure document. Only the shape is checked here; see
/// [`super::validate_structure`] for the axioms.
pub fn load_structure(text: &str) -> Result<FiniteStructure, ParseError> {
    let lines = tokenize(text);
    let last_line = text.lines().count();
    let mut cur = Cursor { lines, pos: 0, last_line };

    let ctx_line = cur.keyword_line("context")?;
    if ctx_line.tokens.len() != 2 {
        return Err(ctx_line.err(ctx_line.end_column(), "expected `context gp|gpds|gpcirc`"));
    }
    let context = Context::from_keyword(ctx_line.tokens[1].text).ok_or_else(|| {
        ctx_line.err(
            ctx_line.tokens[1].column,
            format!("unknown context `{}`", ctx_line.tokens[1].text),
        )
    })?;
    let size = cur.scalar("carrier")?;

    let mut names = None;
    if cur.peek().is_some_and(|l| l.keyword() == "names") {
        let line = cur.next("names")?;
        if line.tokens.len() - 1 != size {
            return Err(line.err(
                line.end_column(),
                format!("expected {size} names, found {}", line.tokens.len() - 1),
            ));
        }
        names = Some(line.tokens[1..].iter().map(|t| t.text.to_string()).collect::<Vec<_>>());
    }

    let groupoid = if context == Context::GpdS {
        let objects = cur.scalar("objects")?;
        let src = cur.keyword_line("src")?.numbers(1, size, objects)?;
        let tgt = cur.keyword_line("tgt")?.numbers(1, size, objects)?;
        let ids = cur.keyword_line("id")?.numbers(1, objects, size)?;
        Some(GroupoidData { objects, src, tgt, ids })
    } else {
        None
    };

    let mut ops: Vec<Operation> = Vec::new();
    while let Some(header) = cur.peek().cloned() {
        cur.pos += 1;
        if header.keyword() != "op" {
            return Err(header.err(
                header.tokens[0].column,
                format!("expected `op`, found `{}`", header.keyword()),
            ));
        }
        if header.tokens.len() != 3 {
            return Err(header.err(header.end_column(), "expected `op NAME ARITY`"));
        }
        let name = header.tokens[1].text.to_string();
        if ops.iter().any(|o| o.name == name) {
            return Err(header.err(header.tokens[1].column, format!("duplicate operation `{name}`")));
        }
        let arity_tok = &header.tokens[2];
        let table = match arity_tok.text {
            "1" => {
                let row = if size == 0 { Vec::new() } else { cur.next("a table row")?.numbers(0, size, size)? };
                Table::Unary(row)
            }
            "2" if context == Context::GpdS => {
                let mut table = vec![None; size * size];
                loop {
                    let row = cur.next("a composition triple or `end`")?;
                    if row.keyword() == "end" {
                        if row.tokens.len() != 1 {
                            return Err(row.err(row.tokens[1].column, "unexpected tokens after `end`"));
                        }
                        break;
                    }
                    let t = row.numbers(0, 3, size)?;
                    let slot = &mut table[t[0] * size + t[1]];
                    if slot.is_some() {
                        return Err(row.err(
                            row.tokens[0].column,
                            format!("composite of {} and {} given twice", t[0], t[1]),
                        ));
                    }
                    *slot = Some(t[2]);
                }
                Table::Binary(table)
            }
            "2" => {
                let mut table = Vec::with_capacity(size * size);
                for _ in 0..size {
                    let row = cur.next("a table row")?;
                    table.extend(row.numbers(0, size, size)?.into_iter().map(Some));
                }
                Table::Binary(table)
            }
            other => {
                return Err(header.err(arity_tok.column, format!("unsupported arity `{other}`")))
            }
        };
        ops.push(Operation { name, table });
    }

    let structure = FiniteStructure::new(context, size, ops, groupoid)
        .map_err(|e| ParseError { line: last_line.max(1), column: 1, message: e.to_string() })?;
    match names {
        Some(names) => Ok(structure.with_names(names).expect("name count checked")),
        None => Ok(structure),
    }
}

fn join_row(values: impl IntoIterator<Item = usize>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Writes the canonical document for `x`; [`load_structure`] inverts it.
pub fn save_structure(x: &FiniteStructure) -> String {
    let n = x.size();
    let mut out = String::new();
    let _ = writeln!(out, "context {}", x.context().keyword());
    let _ = writeln!(out, "carrier {n}");
    if let Some(names) = x.names() {
        let _ = writeln!(out, "names {}", names.join(" "));
    }
    if let Some(g) = x.groupoid() {
        let _ = writeln!(out, "objects {}", g.objects);
        let _ = writeln!(out, "src {}", join_row(g.src.iter().copied()).trim_end());
        let _ = writeln!(out, "tgt {}", join_row(g.tgt.iter().copied()).trim_end());
        let _ = writeln!(out, "id {}", join_row(g.ids.iter().copied()).trim_end());
    }
    for op in x.ops() {
        let _ = writeln!(out, "op {} {}", op.name, op.arity());
        match &op.table {
            Table::Unary(t) => {
                if n > 0 {
                    let _ = writeln!(out, "{}", join_row(t.iter().copied()));
                }
            }
            Table::Binary(t) if x.context() == Context::GpdS => {
                for a in 0..n {
                    for b in 0..n {
                        if let Some(c) = t[a * n + b] {
                            let _ = writeln!(out, "{a} {b} {c}");
                        }
                    }
                }
                let _ = writeln!(out, "end");
            }
            Table::Binary(t) => {
                for row in t.chunks(n.max(1)).take(n) {
                    let _ = writeln!(out, "{}", join_row(row.iter().map(|e| e.expect("total table"))));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4: &str = "\
# cyclic group of order 4
context gp
carrier 4
op mul 2
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
op inv 1
0 3 2 1
";

    #[test]
    fn parses_z4() {
        let x = load_structure(Z4).unwrap();
        assert_eq!(x.size(), 4);
        assert_eq!(x.context(), Context::Gp);
        assert_eq!(x.mul(3, 2), Some(1));
        assert_eq!(x.inv(1), Some(3));
        assert_eq!(save_structure(&x), Z4.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
    }

    #[test]
    fn parses_empty_gpcirc() {
        let x = load_structure("context gpcirc\ncarrier 0\nop mul 2\nop inv 1\n").unwrap();
        assert_eq!(x.size(), 0);
        assert!(x.is_empty());
        assert_eq!(load_structure(&save_structure(&x)).unwrap(), x);
    }

    #[test]
    fn short_row_is_reported_with_position() {
        let bad = Z4.replace("2 3 0 1\n", "2 3 0\n");
        let err = load_structure(&bad).unwrap_err();
        assert_eq!(err.line, 7);
        assert!(err.message.contains("expected 4 entries, found 3"), "{err}");
    }

    #[test]
    fn entry_out_of_range() {
        let bad = Z4.replace("0 3 2 1", "0 3 2 9");
        let err = load_structure(&bad).unwrap_err();
        assert_eq!((err.line, err.column), (10, 7));
    }

    #[test]
    fn unknown_context_and_arity() {
        assert!(load_structure("context ring\ncarrier 1\n").unwrap_err().message.contains("unknown context"));
        let err = load_structure("context gp\ncarrier 1\nop f 3\n0\n").unwrap_err();
        assert!(err.message.contains("arity"));
        let err = load_structure("context gp\n").unwrap_err();
        assert!(err.message.contains("end of input"));
    }

    #[test]
    fn groupoid_document() {
        // two objects joined by an isomorphism, trivial vertex groups
        let doc = "\
context gpds
carrier 4
objects 2
src 0 0 1 1
tgt 0 1 0 1
id 0 3
op comp 2
0 0 0
0 1 1
1 2 0
1 3 1
2 0 2
2 1 3
3 2 2
3 3 3
end
op inv 1
0 2 1 3
";
        let x = load_structure(doc).unwrap();
        assert_eq!(x.mul(1, 2), Some(0));
        assert_eq!(x.mul(1, 1), None);
        assert_eq!(save_structure(&x), doc);
        let err = load_structure(&doc.replace("end\n", "")).unwrap_err();
        assert_eq!((err.line, err.column), (16, 1), "{err}");
    }

    #[test]
    fn names_round_trip() {
        let doc = "context gp\ncarrier 2\nnames e a\nop mul 2\n0 1\n1 0\nop inv 1\n0 1\n";
        let x = load_structure(doc).unwrap();
        assert_eq!(x.names().unwrap(), ["e", "a"]);
        assert_eq!(save_structure(&x), doc);
    }
}
