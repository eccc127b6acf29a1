//! Text formats.
//!
//! `pc1` (colorings): a header `pc1 m=<m> n=<n> k=<k>` followed by the colors
//! `1..=k` of all vertices in canonical order, whitespace separated.
//!
//! `code1` (codes): a header `code1 m=<m> n=<n>` followed by the sorted
//! canonical indices of the codewords.
//!
//! Lines starting with `#` are comments and may appear anywhere.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::GraphSpec;

use super::{Code, Coloring};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Header {
    magic: String,
    fields: Vec<(String, u64)>,
    line: usize,
}

impl Header {
    fn field(&self, key: &str) -> Result<u64> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| parse_err(self.line, format!("header lacks {key}=")))
    }
}

/// Splits into the header and the remaining tokens with their line numbers.
fn tokenize(text: &str) -> Result<(Header, Vec<(usize, &str)>)> {
    let mut header = None;
    let mut tokens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if header.is_none() {
            let mut parts = line.split_whitespace();
            let magic = parts.next().unwrap().to_string();
            let mut fields = Vec::new();
            for p in parts {
                let (k, v) = p.split_once('=').ok_or_else(|| parse_err(i + 1, format!("bad header field {p:?}")))?;
                let v = v.parse::<u64>().map_err(|_| parse_err(i + 1, format!("bad header value {p:?}")))?;
                fields.push((k.to_string(), v));
            }
            header = Some(Header { magic, fields, line: i + 1 });
            continue;
        }
        tokens.extend(line.split_whitespace().map(|t| (i + 1, t)));
    }
    let header = header.ok_or_else(|| parse_err(1, "missing header"))?;
    Ok((header, tokens))
}

fn spec_of(h: &Header) -> Result<GraphSpec> {
    let m = h.field("m")? as u32;
    let n = h.field("n")? as u32;
    GraphSpec::new(m, n).map_err(|e| parse_err(h.line, e.to_string()))
}

/// Which format a file holds.
pub enum Object {
    Coloring(Coloring),
    Code(Code),
}

pub fn parse(text: &str) -> Result<Object> {
    let (h, _) = tokenize(text)?;
    match h.magic.as_str() {
        "pc1" => parse_pc1(text).map(Object::Coloring),
        "code1" => parse_code1(text).map(Object::Code),
        other => Err(parse_err(h.line, format!("unknown format {other:?}"))),
    }
}

pub fn parse_pc1(text: &str) -> Result<Coloring> {
    let (h, tokens) = tokenize(text)?;
    if h.magic != "pc1" {
        return Err(parse_err(h.line, format!("expected pc1, found {:?}", h.magic)));
    }
    let spec = spec_of(&h)?;
    let k = h.field("k")? as usize;
    if tokens.len() as u64 != spec.num_vertices() {
        return Err(parse_err(
            tokens.last().map_or(h.line, |t| t.0),
            format!("{} colors for {} vertices", tokens.len(), spec.num_vertices()),
        ));
    }
    let mut colors = Vec::with_capacity(tokens.len());
    for (line, t) in tokens {
        let c: usize = t.parse().map_err(|_| parse_err(line, format!("bad color {t:?}")))?;
        if c == 0 || c > k {
            return Err(parse_err(line, format!("color {c} outside 1..={k}")));
        }
        colors.push((c - 1) as u16);
    }
    Coloring::new(spec, k, colors)
}

pub fn parse_code1(text: &str) -> Result<Code> {
    let (h, tokens) = tokenize(text)?;
    if h.magic != "code1" {
        return Err(parse_err(h.line, format!("expected code1, found {:?}", h.magic)));
    }
    let spec = spec_of(&h)?;
    let mut prev: Option<u64> = None;
    let mut idx = Vec::with_capacity(tokens.len());
    for (line, t) in tokens {
        let v: u64 = t.parse().map_err(|_| parse_err(line, format!("bad index {t:?}")))?;
        if v >= spec.num_vertices() {
            return Err(parse_err(line, format!("index {v} out of range")));
        }
        if prev.is_some_and(|p| p >= v) {
            return Err(parse_err(line, "indices must be strictly increasing"));
        }
        prev = Some(v);
        idx.push(v);
    }
    Code::from_indices(spec, idx)
}

fn comment_block(comments: &[String]) -> String {
    comments.iter().map(|c| format!("# {c}\n")).collect()
}

pub fn format_pc1(c: &Coloring, comments: &[String]) -> String {
    let s = c.spec();
    let mut out = comment_block(comments);
    writeln!(out, "pc1 m={} n={} k={}", s.m(), s.n(), c.k()).unwrap();
    // one line per 16 vertices keeps the files diffable
    for chunk in c.colors().chunks(16) {
        let line: Vec<String> = chunk.iter().map(|&x| (x + 1).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_code1(c: &Code, comments: &[String]) -> String {
    let s = c.spec();
    let mut out = comment_block(comments);
    writeln!(out, "code1 m={} n={}", s.m(), s.n()).unwrap();
    for v in c.iter() {
        writeln!(out, "{v}").unwrap();
    }
    out
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::Precondition(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pc1_round_trip() {
        let s = GraphSpec::new(1, 0).unwrap();
        let c = Coloring::from_closure(s, 3, |v| (v % 3) as usize).unwrap();
        let text = format_pc1(&c, &["test".into()]);
        assert!(text.starts_with("# test\npc1 m=1 n=0 k=3\n"));
        assert_eq!(parse_pc1(&text).unwrap(), c);
    }

    #[test]
    fn code1_round_trip() {
        let s = GraphSpec::new(0, 3).unwrap();
        let c = Code::from_indices(s, [0, 21, 42, 63]).unwrap();
        let text = format_code1(&c, &[]);
        assert_eq!(parse_code1(&text).unwrap(), c);
        assert!(matches!(parse(&text).unwrap(), Object::Code(_)));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_pc1("pc1 m=0 n=1 k=2\n1 2 2").is_err());
        assert!(parse_pc1("pc1 m=0 n=1 k=2\n1 2 2 3").is_err());
        assert!(parse_pc1("pc1 m=0 n=1\n1 2 2 2").is_err());
        assert!(parse_code1("code1 m=0 n=1\n2 1").is_err());
        assert!(parse_code1("code1 m=0 n=1\n4").is_err());
        assert!(parse("xyz m=0 n=1").is_err());
        let ok = parse_pc1("# c\npc1 m=0 n=1 k=2\n# mid\n1 2\n2 2\n").unwrap();
        assert_eq!(ok.colors(), &[0, 1, 1, 1]);
    }

    #[test]
    fn atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.pc1");
        write_atomic(&p, "hello").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "hello");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
