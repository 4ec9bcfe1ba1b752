//! Plain-text formats for polytopes, lattices and gain assignments.
//!
//! ```text
//! polytope d=2          lattice d=2          # gain file
//! name=square           1 0                  (0,0) ; (1,0) ; 1
//! -1/2 -1/2             0 1                  (1,0) ; (0,0) ; -1
//! ...
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Diagnostics carry
//! 1-based line and column numbers.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gain::GainAssignment;
use crate::polytope::{canonical_form, dual_description, Polytope};
use crate::ratlin::{hnf, parse_rat, Lattice, QMat, QVec, Rat};

/// A significant line: 1-based number, content with the comment stripped.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn significant_lines(input: &str) -> impl Iterator<Item = Line<'_>> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let text = raw.split('#').next().unwrap_or("");
        (!text.trim().is_empty()).then_some(Line { number: i + 1, text })
    })
}

/// Whitespace-separated tokens with their 1-based character column.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out.into_iter()
        .map(|(byte, tok)| (text[..byte].chars().count() + 1, tok))
        .collect()
}

fn literal(line: usize, column: usize, tok: &str) -> Result<Rat> {
    parse_rat(tok).map_err(|off| {
        Error::parse(
            line,
            column + tok[..off.min(tok.len())].chars().count(),
            format!("invalid rational literal {tok:?}"),
        )
    })
}

fn rational_row(line: &Line<'_>, d: usize) -> Result<QVec> {
    let toks = tokens(line.text);
    if toks.len() != d {
        let column = toks.get(d).map_or(line.text.chars().count() + 1, |t| t.0);
        return Err(Error::parse(
            line.number,
            column,
            format!("expected {d} coordinates, found {}", toks.len()),
        ));
    }
    let coords = toks
        .iter()
        .map(|&(c, t)| literal(line.number, c, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(QVec::new(coords))
}

/// Parses `<keyword> d=<int>` and returns `d`.
fn header(line: Option<Line<'_>>, keyword: &str) -> Result<usize> {
    let line = line.ok_or_else(|| Error::parse(1, 1, format!("missing \"{keyword} d=<int>\" header")))?;
    let toks = tokens(line.text);
    let bad = |col: usize| Error::parse(line.number, col, format!("expected \"{keyword} d=<int>\""));
    match toks.as_slice() {
        [(_, kw), (c, dim)] if *kw == keyword => {
            let n = dim.strip_prefix("d=").ok_or_else(|| bad(*c))?;
            match n.parse::<usize>() {
                Ok(d) if d >= 1 => Ok(d),
                _ => Err(bad(c + 2)),
            }
        }
        [(c, _), ..] => Err(bad(*c)),
        [] => Err(bad(1)),
    }
}

/// Reads a polytope; the vertex list may contain non-extreme points, which
/// are dropped by the hull computation.
pub fn read_polytope(input: &str) -> Result<Polytope> {
    let mut lines = significant_lines(input).peekable();
    let d = header(lines.next(), "polytope")?;
    let mut name = None;
    if let Some(l) = lines.peek() {
        if let Some(n) = l.text.trim().strip_prefix("name=") {
            name = Some(n.trim().to_string());
            lines.next();
        }
    }
    let mut points = Vec::new();
    let mut last_line = 1;
    for line in lines {
        last_line = line.number;
        points.push(rational_row(&line, d)?);
    }
    if points.is_empty() {
        return Err(Error::parse(last_line + 1, 1, "no vertices"));
    }
    let mut p = dual_description(&points)?;
    p.name = name;
    Ok(p)
}

/// Writes the canonical form: centered at the origin, vertices sorted.
pub fn write_polytope(p: &Polytope) -> String {
    let c = canonical_form(p);
    let mut s = format!("polytope d={}\n", c.dim());
    if let Some(n) = &p.name {
        let _ = writeln!(s, "name={n}");
    }
    for v in c.vertices() {
        let row: Vec<String> = v.iter().map(|a| a.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Reads basis rows and returns their lattice in Hermite normal form.
pub fn read_lattice(input: &str) -> Result<Lattice> {
    let mut lines = significant_lines(input);
    let d = header(lines.next(), "lattice")?;
    let mut rows = Vec::new();
    let mut last_line = 1;
    for line in lines {
        last_line = line.number;
        if rows.len() == d {
            return Err(Error::parse(line.number, 1, format!("more than {d} basis rows")));
        }
        rows.push(rational_row(&line, d)?);
    }
    if rows.is_empty() {
        return Err(Error::parse(last_line + 1, 1, "no basis rows"));
    }
    Ok(hnf(&QMat::new(d, rows)?))
}

pub fn write_lattice(l: &Lattice) -> String {
    let mut s = format!("lattice d={}\n", l.ambient_dim());
    for r in l.basis().rows() {
        let row: Vec<String> = r.iter().map(|a| a.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Parses `(a,b,...)` starting at 1-based `column`.
fn tuple(line: usize, column: usize, field: &str) -> Result<QVec> {
    let lead = field.len() - field.trim_start().len();
    let col = column + field[..lead].chars().count();
    let t = field.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::parse(line, col, "expected a tuple \"(a,b,...)\""))?;
    let mut coords = Vec::new();
    let mut offset = col + 1;
    for part in inner.split(',') {
        let lead = part.len() - part.trim_start().len();
        coords.push(literal(line, offset + part[..lead].chars().count(), part.trim())?);
        offset += part.chars().count() + 1;
    }
    Ok(QVec::new(coords))
}

/// Reads `λ₁ ; λ₂ ; value` lines. Tuples must all have dimension `d`.
pub fn read_gain(input: &str, d: usize) -> Result<GainAssignment> {
    let mut g = GainAssignment::new();
    for line in significant_lines(input) {
        let fields: Vec<&str> = line.text.split(';').collect();
        if fields.len() != 3 {
            return Err(Error::parse(line.number, 1, "expected \"λ1 ; λ2 ; value\""));
        }
        let mut col = 1;
        let mut cols = Vec::new();
        for f in &fields {
            cols.push(col);
            col += f.chars().count() + 1;
        }
        let a = tuple(line.number, cols[0], fields[0])?;
        let b = tuple(line.number, cols[1], fields[1])?;
        for (v, c) in [(&a, cols[0]), (&b, cols[1])] {
            if v.dim() != d {
                return Err(Error::parse(
                    line.number,
                    c,
                    format!("expected a {d}-dimensional lattice vector"),
                ));
            }
        }
        let vf = fields[2];
        let lead = vf.len() - vf.trim_start().len();
        let value = literal(line.number, cols[2] + vf[..lead].chars().count(), vf.trim())?;
        if g.insert((a, b), value).is_some() {
            return Err(Error::parse(line.number, 1, "duplicate entry"));
        }
    }
    Ok(g)
}

pub fn write_gain(g: &GainAssignment) -> String {
    let mut s = String::new();
    for ((a, b), v) in g {
        let _ = writeln!(s, "{a} ; {b} ; {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ratlin::{int, rat};

    fn parse_err(r: Result<impl std::fmt::Debug>) -> (usize, usize) {
        match r {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn polytope_round_trip() {
        for p in catalog::parallelohedra() {
            let text = write_polytope(&p);
            let q = read_polytope(&text).unwrap();
            assert_eq!(q, canonical_form(&p));
            assert_eq!(write_polytope(&q), text);
        }
    }

    #[test]
    fn polytope_with_comments_and_offset() {
        let text = "# unit square\npolytope d=2\nname=sq\n\n0 0\n1 0  # corner\n0 1\n1 1\n1/2 1/2\n";
        let p = read_polytope(text).unwrap();
        assert_eq!(p.name.as_deref(), Some("sq"));
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(
            write_polytope(&p),
            "polytope d=2\nname=sq\n-1/2 -1/2\n-1/2 1/2\n1/2 -1/2\n1/2 1/2\n"
        );
    }

    #[test]
    fn polytope_diagnostics() {
        assert_eq!(parse_err(read_polytope("")), (1, 1));
        assert_eq!(parse_err(read_polytope("polytop d=2\n")), (1, 1));
        assert_eq!(parse_err(read_polytope("polytope d=x\n")), (1, 12));
        assert_eq!(parse_err(read_polytope("polytope d=2\n0 0\n1 1.5\n")), (3, 4));
        assert_eq!(parse_err(read_polytope("polytope d=2\n0 0\n  1 0 0\n")), (3, 7));
        assert_eq!(parse_err(read_polytope("polytope d=2\n0 0\n1\n")), (3, 2));
        assert_eq!(parse_err(read_polytope("polytope d=2\n")), (2, 1));
        assert!(matches!(
            read_polytope("polytope d=2\n0 0\n1 1\n2 2\n"),
            Err(Error::NotFullDimensional { .. })
        ));
    }

    #[test]
    fn lattice_round_trip() {
        for (_, l) in catalog::lattices() {
            let text = write_lattice(&l);
            assert_eq!(read_lattice(&text).unwrap(), l);
        }
        let l = read_lattice("lattice d=2\n2 0\n1 1\n").unwrap();
        assert_eq!(write_lattice(&l), "lattice d=2\n1 1\n0 2\n");
        assert_eq!(parse_err(read_lattice("lattice d=1\n1\n2\n")), (3, 1));
        assert_eq!(parse_err(read_lattice("lattice d=2\n1 -/2\n")), (2, 4));
    }

    #[test]
    fn gain_round_trip() {
        let text = "# increments\n(0,0) ; (3/2,1) ; 1\n( 3/2, 1 ) ; (0,0) ; -1\n";
        let g = read_gain(text, 2).unwrap();
        assert_eq!(g[&(QVec::zeros(2), QVec::from_fracs(&[(3, 2), (1, 1)]))], int(1));
        assert_eq!(read_gain(&write_gain(&g), 2).unwrap(), g);
        let g2: GainAssignment = [((QVec::zeros(1), QVec::from_ints(&[1])), rat(-7, 3))].into_iter().collect();
        assert_eq!(write_gain(&g2), "(0) ; (1) ; -7/3\n");
        assert_eq!(parse_err(read_gain("(0,0) ; (1,0)\n", 2)), (1, 1));
        assert_eq!(parse_err(read_gain("(0,0) ; (1,0) ; 1/0\n", 2)), (1, 19));
        assert_eq!(parse_err(read_gain("(0,0) ; 1,0 ; 1\n", 2)), (1, 9));
        assert_eq!(parse_err(read_gain("(0,0) ; (1,x) ; 1\n", 2)), (1, 12));
        assert_eq!(parse_err(read_gain("(0,0) ; (1) ; 1\n", 2)), (1, 8));
    }
}
