//! Reader and writer for the line-oriented ice-quiver-with-potential format.
//!
//! ```text
//! field Q                      # or: field Fp 32003
//! vertices 1 2 3
//! frozen_vertices 1 2
//! arrows
//!   a1: 1 -> 2 [frozen]
//!   a2: 2 -> 3
//!   a3: 3 -> 1
//! potential
//!   a3 a2 a1                   # one cycle per line, composed right to left
//! ```

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{parse_rational, Field, DEFAULT_PRIME};
use crate::potential::Potential;
use crate::quiver::{compose, Arrow, IceQuiver, Path, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn label(&self) -> String {
        match self {
            FieldSpec::Rational => "Q".into(),
            FieldSpec::Prime(p) => format!("Fp {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrow `{0}` is a loop")]
    LoopArrow(String),
    #[error("frozen arrow `{0}` has an unfrozen endpoint")]
    FrozenArrowEndpoint(String),
    #[error("potential term is not a cycle")]
    NotACycle,
    #[error("potential term is not a composable path")]
    NotComposable,
    #[error("coefficient vanishes or is undefined in the chosen field")]
    BadCoefficient,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// A parsed input file. Potential coefficients are kept as rationals until a
/// field is chosen with [`QpFile::potential`].
#[derive(Clone, Debug)]
pub struct QpFile {
    pub field: FieldSpec,
    pub quiver: IceQuiver,
    pub terms: Vec<(Path, BigRational)>,
    /// Source position of each potential term, for diagnostics.
    term_lines: Vec<usize>,
}

impl QpFile {
    pub fn potential<F: Field>(&self) -> Result<Potential<F>, ParseError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for ((p, c), &line) in self.terms.iter().zip(&self.term_lines) {
            let c = F::from_rational(c).ok_or(ParseError {
                line,
                column: 1,
                kind: ParseErrorKind::BadCoefficient,
            })?;
            terms.push((p.clone(), c));
        }
        Potential::new(&self.quiver, terms).map_err(|e| ParseError {
            line: 0,
            column: 0,
            kind: ParseErrorKind::Invalid(e.to_string()),
        })
    }
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum Section {
    Header,
    Arrows,
    Potential,
}

struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok { text: &line[s..i], col: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok { text: &line[s..], col: s + 1 });
    }
    out
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    err(line, column, ParseErrorKind::Syntax(msg.into()))
}

const KEYWORDS: [&str; 5] = ["field", "vertices", "frozen_vertices", "arrows", "potential"];

/// Parses and validates a quiver file.
pub fn parse_ice_qp(text: &str) -> Result<QpFile, ParseError> {
    let mut field = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut vertices_line = 0;
    let mut frozen_names: Vec<(String, usize, usize)> = Vec::new();
    let mut arrows: Vec<(Arrow, bool, usize, usize)> = Vec::new();
    let mut raw_terms: Vec<(usize, Vec<Tok>)> = Vec::new();
    let mut section = Section::Header;

    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokenize(line);
        let Some(first) = toks.first() else { continue };

        if KEYWORDS.contains(&first.text) {
            match first.text {
                "field" => {
                    if field.is_some() {
                        return Err(syntax(ln, first.col, "field declared twice"));
                    }
                    field = Some(match toks.get(1).map(|t| t.text) {
                        Some("Q") if toks.len() == 2 => FieldSpec::Rational,
                        Some("Fp") if toks.len() <= 3 => {
                            let p = match toks.get(2) {
                                None => DEFAULT_PRIME,
                                Some(t) => t.text.parse::<u64>().map_err(|_| {
                                    syntax(ln, t.col, "expected a prime after `Fp`")
                                })?,
                            };
                            FieldSpec::Prime(p)
                        }
                        _ => return Err(syntax(ln, first.col, "expected `field Q` or `field Fp <prime>`")),
                    });
                    section = Section::Header;
                }
                "vertices" => {
                    if !vertices.is_empty() {
                        return Err(syntax(ln, first.col, "vertices declared twice"));
                    }
                    for t in &toks[1..] {
                        if vertices.iter().any(|v| v == t.text) {
                            return Err(err(ln, t.col, ParseErrorKind::Invalid(format!("vertex `{}` declared twice", t.text))));
                        }
                        vertices.push(t.text.to_string());
                    }
                    vertices_line = ln;
                    section = Section::Header;
                }
                "frozen_vertices" => {
                    for t in &toks[1..] {
                        frozen_names.push((t.text.to_string(), ln, t.col));
                    }
                    section = Section::Header;
                }
                "arrows" => {
                    if toks.len() != 1 {
                        return Err(syntax(ln, toks[1].col, "`arrows` takes no arguments"));
                    }
                    section = Section::Arrows;
                }
                "potential" => {
                    if toks.len() != 1 {
                        return Err(syntax(ln, toks[1].col, "`potential` takes no arguments"));
                    }
                    section = Section::Potential;
                }
                _ => unreachable!(),
            }
            continue;
        }

        match section {
            Section::Header => {
                return Err(syntax(ln, first.col, format!("unexpected `{}`", first.text)));
            }
            Section::Arrows => {
                arrows.push(parse_arrow_line(&toks, ln, &vertices)?);
            }
            Section::Potential => raw_terms.push((ln, toks)),
        }
    }

    let field = field.unwrap_or(FieldSpec::Rational);
    if vertices.is_empty() {
        return Err(syntax(1, 1, "missing `vertices` line"));
    }
    let mut frozen_v = vec![false; vertices.len()];
    for (name, ln, col) in &frozen_names {
        let v = vertices
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| err(*ln, *col, ParseErrorKind::UnknownVertex(name.clone())))?;
        frozen_v[v] = true;
    }

    let mut arrow_list = Vec::new();
    let mut frozen_a = Vec::new();
    for (a, fr, ln, col) in &arrows {
        if arrow_list.iter().any(|b: &Arrow| b.name == a.name) {
            return Err(err(*ln, *col, ParseErrorKind::Invalid(format!("arrow `{}` declared twice", a.name))));
        }
        if a.tail == a.head {
            return Err(err(*ln, *col, ParseErrorKind::LoopArrow(a.name.clone())));
        }
        if *fr && !(frozen_v[a.tail] && frozen_v[a.head]) {
            return Err(err(*ln, *col, ParseErrorKind::FrozenArrowEndpoint(a.name.clone())));
        }
        arrow_list.push(a.clone());
        frozen_a.push(*fr);
    }
    let quiver = IceQuiver::new(vertices, arrow_list, frozen_v, frozen_a).map_err(|e| {
        let kind = match e.0.first() {
            Some(Violation::LoopArrow { arrow, .. }) => ParseErrorKind::LoopArrow(arrow.clone()),
            Some(Violation::FrozenArrowEndpoint { arrow }) => ParseErrorKind::FrozenArrowEndpoint(arrow.clone()),
            _ => ParseErrorKind::Invalid(e.to_string()),
        };
        err(vertices_line, 1, kind)
    })?;

    let mut terms = Vec::new();
    let mut term_lines = Vec::new();
    for (ln, toks) in raw_terms {
        let (path, c) = parse_term(&toks, ln, &quiver)?;
        terms.push((path, c));
        term_lines.push(ln);
    }
    Ok(QpFile {
        field,
        quiver,
        terms,
        term_lines,
    })
}

fn parse_arrow_line(toks: &[Tok], ln: usize, vertices: &[String]) -> Result<(Arrow, bool, usize, usize), ParseError> {
    // name: tail -> head [frozen]
    let first = &toks[0];
    let (name, rest_start) = if let Some(n) = first.text.strip_suffix(':') {
        (n, 1)
    } else if toks.get(1).map(|t| t.text) == Some(":") {
        (first.text, 2)
    } else {
        return Err(syntax(ln, first.col, "expected `<name>: <tail> -> <head>`"));
    };
    if name.is_empty() || KEYWORDS.contains(&name) {
        return Err(syntax(ln, first.col, "invalid arrow name"));
    }
    let rest = &toks[rest_start..];
    if rest.len() < 3 || rest[1].text != "->" {
        return Err(syntax(ln, rest.first().map_or(first.col, |t| t.col), "expected `<tail> -> <head>`"));
    }
    let find = |t: &Tok| {
        vertices
            .iter()
            .position(|v| v == t.text)
            .ok_or_else(|| err(ln, t.col, ParseErrorKind::UnknownVertex(t.text.to_string())))
    };
    let tail = find(&rest[0])?;
    let head = find(&rest[2])?;
    let frozen = match rest.get(3) {
        None => false,
        Some(t) if t.text == "[frozen]" || t.text == "frozen" => true,
        Some(t) => return Err(syntax(ln, t.col, format!("unexpected `{}`", t.text))),
    };
    if let Some(t) = rest.get(4) {
        return Err(syntax(ln, t.col, format!("unexpected `{}`", t.text)));
    }
    Ok((
        Arrow {
            name: name.to_string(),
            tail,
            head,
        },
        frozen,
        ln,
        first.col,
    ))
}

fn looks_numeric(s: &str) -> bool {
    let s = s.strip_prefix(['+', '-']).unwrap_or(s);
    s.chars().next().is_some_and(|c| c.is_ascii_digit())
}

fn parse_term(toks: &[Tok], ln: usize, quiver: &IceQuiver) -> Result<(Path, BigRational), ParseError> {
    let mut idx = 0;
    let mut coeff = BigRational::one();
    if toks[0].text == "+" || toks[0].text == "-" {
        if toks[0].text == "-" {
            coeff = -coeff;
        }
        idx = 1;
    }
    if let Some(t) = toks.get(idx) {
        if looks_numeric(t.text) {
            let c = parse_rational(t.text).ok_or_else(|| syntax(ln, t.col, "malformed coefficient"))?;
            coeff *= c;
            idx += 1;
        }
    }
    let names = &toks[idx..];
    if names.is_empty() {
        return Err(syntax(ln, toks.last().unwrap().col, "potential term has no arrows"));
    }
    if coeff.is_zero() {
        return Err(err(ln, toks[0].col, ParseErrorKind::BadCoefficient));
    }
    let mut path: Option<Path> = None;
    // names are written right to left
    for t in names.iter().rev() {
        let a = quiver
            .arrow_index(t.text)
            .ok_or_else(|| err(ln, t.col, ParseErrorKind::UnknownArrow(t.text.to_string())))?;
        let ap = quiver.arrow_path(a);
        path = Some(match path {
            None => ap,
            Some(p) => compose(&ap, &p).ok_or_else(|| err(ln, t.col, ParseErrorKind::NotComposable))?,
        });
    }
    let path = path.unwrap();
    if !path.is_cycle() {
        return Err(err(ln, names[0].col, ParseErrorKind::NotACycle));
    }
    Ok((path, coeff))
}

/// Renders a quiver and potential in the input format.
pub fn print_ice_qp<F: Field>(field: FieldSpec, quiver: &IceQuiver, w: &Potential<F>) -> String {
    let mut s = String::new();
    match field {
        FieldSpec::Rational => s.push_str("field Q\n"),
        FieldSpec::Prime(p) => {
            let _ = writeln!(s, "field Fp {p}");
        }
    }
    let _ = writeln!(s, "vertices {}", quiver.vertex_names().join(" "));
    let frozen: Vec<&str> = quiver.frozen_vertices().iter().map(|&v| quiver.vertex_name(v)).collect();
    if !frozen.is_empty() {
        let _ = writeln!(s, "frozen_vertices {}", frozen.join(" "));
    }
    s.push_str("arrows\n");
    for (i, a) in quiver.arrows().iter().enumerate() {
        let _ = write!(
            s,
            "  {}: {} -> {}",
            a.name,
            quiver.vertex_name(a.tail),
            quiver.vertex_name(a.head)
        );
        if quiver.is_frozen_arrow(i) {
            s.push_str(" [frozen]");
        }
        s.push('\n');
    }
    s.push_str("potential\n");
    for (p, c) in w.terms() {
        let txt = c.to_string();
        let _ = writeln!(s, "  {} {}", txt, quiver.display_path(p));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    const TRIANGLE: &str = "field Q
vertices 1 2 3
frozen_vertices 1 2
arrows
  a1: 1 -> 2 [frozen]
  a2: 2 -> 3
  a3: 3 -> 1
potential
  a3 a2 a1
";

    #[test]
    fn parses_triangle() {
        let f = parse_ice_qp(TRIANGLE).unwrap();
        assert_eq!(f.field, FieldSpec::Rational);
        assert_eq!(f.quiver.num_vertices(), 3);
        assert_eq!(f.quiver.frozen_vertices(), vec![0, 1]);
        assert_eq!(f.quiver.frozen_arrows(), vec![0]);
        let w = f.potential::<Q>().unwrap();
        assert_eq!(w.terms().len(), 1);
        let (p, c) = w.terms().iter().next().unwrap();
        assert!(c.is_one());
        assert_eq!(f.quiver.display_path(p), "a3 a2 a1");
    }

    #[test]
    fn empty_potential_is_zero() {
        let src = TRIANGLE.replace("  a3 a2 a1\n", "");
        let f = parse_ice_qp(&src).unwrap();
        assert!(f.potential::<Q>().unwrap().is_zero());
    }

    #[test]
    fn non_cycle_term_rejected() {
        let src = TRIANGLE.replace("  a3 a2 a1", "  a2 a1");
        let e = parse_ice_qp(&src).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NotACycle);
        assert_eq!(e.line, 9);
    }

    #[test]
    fn non_composable_term_rejected() {
        let src = TRIANGLE.replace("  a3 a2 a1", "  a1 a2 a3");
        let e = parse_ice_qp(&src).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NotComposable);
    }

    #[test]
    fn loop_and_frozen_endpoint_errors() {
        let src = TRIANGLE.replace("a2: 2 -> 3", "a2: 2 -> 2");
        assert!(matches!(parse_ice_qp(&src).unwrap_err().kind, ParseErrorKind::LoopArrow(_)));
        let src = TRIANGLE.replace("a2: 2 -> 3", "a2: 2 -> 3 [frozen]");
        let e = parse_ice_qp(&src).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::FrozenArrowEndpoint("a2".into()));
        assert_eq!((e.line, e.column), (6, 3));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let src = TRIANGLE.replace("a3: 3 -> 1", "a3: 3 => 1");
        let e = parse_ice_qp(&src).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.line, 7);
    }

    #[test]
    fn signed_and_fractional_coefficients() {
        let src = TRIANGLE.replace("  a3 a2 a1", "  - 3/2 a3 a2 a1\n  + 2 a2 a1 a3");
        let f = parse_ice_qp(&src).unwrap();
        let w = f.potential::<Q>().unwrap();
        // both terms are rotations of one cycle: -3/2 + 2 = 1/2
        assert_eq!(w.terms().len(), 1);
        assert_eq!(w.terms().values().next().unwrap(), &parse_rational("1/2").unwrap());
    }

    #[test]
    fn prime_field_header() {
        let src = TRIANGLE.replace("field Q", "field Fp 101");
        assert_eq!(parse_ice_qp(&src).unwrap().field, FieldSpec::Prime(101));
    }
}
