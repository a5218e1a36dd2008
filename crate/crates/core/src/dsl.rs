//! The line-oriented problem file format.
//!
//! ```text
//! # the square with one commutativity relation
//! vertex v1 v2 v3 v4
//! arrow a : v1 -> v2
//! arrow b : v2 -> v4
//! arrow c : v1 -> v3
//! arrow d : v3 -> v4
//! relation r : v1 -> v4 = a*b - c*d
//! m = 3
//! option max_len = 6
//! ```
//!
//! Arrows take an optional `deg <int>` (default 0). Relation terms are an
//! optional rational coefficient (`2`, `-1/3`, also `2*a*b`) followed by a
//! path of arrow ids joined by `*`, composed left to right. A relation body
//! of `0` is the zero relation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num::{BigInt, One, Zero};

use crate::ginzburg::RelationSequence;
use crate::linalg::Rational;
use crate::path_algebra::PathElement;
use crate::quiver::{Arrow, GradedQuiver, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    Lexical,
    Reference,
    Type,
    Structural,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticKind::Lexical => "lexical error",
            DiagnosticKind::Reference => "reference error",
            DiagnosticKind::Type => "type error",
            DiagnosticKind::Structural => "structural error",
        })
    }
}

/// A located parse error; lines and columns start at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.line, self.col, self.kind, self.message
        )
    }
}

/// A parsed problem: quiver, relations, optional `m` and free-form options.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub quiver: Arc<GradedQuiver>,
    pub relations: RelationSequence,
    pub m: Option<i64>,
    pub options: BTreeMap<String, String>,
}

impl PartialEq for ProblemFile {
    fn eq(&self, other: &Self) -> bool {
        *self.quiver == *other.quiver
            && self.relations == other.relations
            && self.m == other.m
            && self.options == other.options
    }
}

impl ProblemFile {
    pub fn option_usize(&self, key: &str) -> Option<usize> {
        self.options.get(key).and_then(|v| v.parse().ok())
    }

    pub fn option_u64(&self, key: &str) -> Option<u64> {
        self.options.get(key).and_then(|v| v.parse().ok())
    }

    /// Whether every arrow has degree 0.
    pub fn is_ungraded(&self) -> bool {
        self.quiver.arrows().iter().all(|a| a.degree == 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Colon,
    Arrow,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '^' | '\'' | '.')
}

/// Tokens with their 1-based columns.
fn lex(line: &str, lineno: usize) -> Result<Vec<(usize, Tok)>, Diagnostic> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            ':' => Some(Tok::Colon),
            '=' => Some(Tok::Eq),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(t) = single {
            out.push((col, t));
            i += 1;
        } else if c == '-' {
            if chars.get(i + 1) == Some(&'>') {
                out.push((col, Tok::Arrow));
                i += 2;
            } else {
                out.push((col, Tok::Minus));
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && is_ident_char(chars[i]) && !chars[i].is_ascii_digit() {
                // identifiers may start with digits (vertex names such as `1a`)
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((col, Tok::Ident(chars[start..i].iter().collect())));
            } else {
                let s: String = chars[start..i].iter().collect();
                out.push((col, Tok::Int(s.parse().unwrap())));
            }
        } else if is_ident_char(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(Diagnostic {
                line: lineno,
                col,
                kind: DiagnosticKind::Lexical,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn err(&self, kind: DiagnosticKind, message: String) -> Diagnostic {
        Diagnostic {
            line: self.line,
            col: self.col(),
            kind,
            message,
        }
    }

    fn describe(&self) -> String {
        self.peek()
            .map_or_else(|| "end of line".to_string(), |t| t.to_string())
    }

    fn ident(&mut self, what: &str) -> Result<(usize, String), Diagnostic> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let col = self.col();
                self.pos += 1;
                Ok((col, s.clone()))
            }
            Some(Tok::Int(n)) => {
                let col = self.col();
                self.pos += 1;
                Ok((col, n.to_string()))
            }
            _ => Err(self.err(
                DiagnosticKind::Lexical,
                format!("expected {what}, found {}", self.describe()),
            )),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), Diagnostic> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(
                DiagnosticKind::Lexical,
                format!("expected {t}, found {}", self.describe()),
            ))
        }
    }

    fn int(&mut self) -> Result<i64, Diagnostic> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek() {
            Some(Tok::Int(n)) => {
                let v: i64 = n.try_into().map_err(|_| {
                    self.err(DiagnosticKind::Type, format!("integer {n} out of range"))
                })?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err(
                DiagnosticKind::Type,
                format!("expected an integer, found {}", self.describe()),
            )),
        }
    }

    fn done(&self) -> Result<(), Diagnostic> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(DiagnosticKind::Lexical, format!("unexpected {t}"))),
        }
    }
}

struct RelationDecl {
    line: usize,
    label_col: usize,
    label: String,
    src: (usize, String),
    dst: (usize, String),
    expr_start: usize,
    toks: Vec<(usize, Tok)>,
    end_col: usize,
}

/// One parsed term: coefficient and arrow ids with columns.
type Term = (Rational, Vec<(usize, String)>);

fn parse_expr(c: &mut Cursor<'_>) -> Result<Vec<Term>, Diagnostic> {
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = Rational::one();
        match c.peek() {
            Some(Tok::Plus) if !first => c.pos += 1,
            Some(Tok::Minus) => {
                c.pos += 1;
                sign = -sign;
            }
            None if first => return Err(c.err(DiagnosticKind::Lexical, "empty expression".into())),
            _ if first => {}
            None => break,
            Some(_) => {
                return Err(c.err(
                    DiagnosticKind::Lexical,
                    format!("expected `+` or `-`, found {}", c.describe()),
                ))
            }
        }
        first = false;
        let mut coeff = Rational::one();
        if let Some(Tok::Int(n)) = c.peek() {
            let num = n.clone();
            let coeff_col = c.col();
            c.pos += 1;
            let mut q = Rational::from_integer(num);
            if c.peek() == Some(&Tok::Slash) {
                c.pos += 1;
                match c.peek() {
                    Some(Tok::Int(d)) if !d.is_zero() => {
                        q /= Rational::from_integer(d.clone());
                        c.pos += 1;
                    }
                    _ => {
                        return Err(c.err(
                            DiagnosticKind::Type,
                            format!("expected a nonzero denominator, found {}", c.describe()),
                        ))
                    }
                }
            }
            coeff = q;
            if c.peek() == Some(&Tok::Star) {
                c.pos += 1;
            }
            if !matches!(c.peek(), Some(Tok::Ident(_))) {
                if coeff.is_zero() && terms.is_empty() && c.peek().is_none() && sign.is_one() {
                    return Ok(Vec::new());
                }
                return Err(Diagnostic {
                    line: c.line,
                    col: coeff_col,
                    kind: DiagnosticKind::Type,
                    message: "a coefficient must be followed by a path".into(),
                });
            }
        }
        let mut path = Vec::new();
        loop {
            match c.peek() {
                Some(Tok::Ident(s)) => {
                    path.push((c.col(), s.clone()));
                    c.pos += 1;
                }
                _ => {
                    return Err(c.err(
                        DiagnosticKind::Lexical,
                        format!("expected an arrow, found {}", c.describe()),
                    ))
                }
            }
            if c.peek() == Some(&Tok::Star) {
                c.pos += 1;
            } else {
                break;
            }
        }
        terms.push((sign * coeff, path));
    }
    Ok(terms)
}

fn diag(line: usize, col: usize, kind: DiagnosticKind, message: String) -> Diagnostic {
    Diagnostic {
        line,
        col,
        kind,
        message,
    }
}

/// Parses a problem file; on failure returns every diagnostic found.
pub fn parse(text: &str) -> Result<ProblemFile, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut vertices: Vec<(usize, usize, String)> = Vec::new();
    let mut arrows: Vec<(usize, usize, Arrow, usize, usize)> = Vec::new();
    let mut relations: Vec<RelationDecl> = Vec::new();
    let mut m: Option<(usize, i64)> = None;
    let mut options = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = match lex(raw, line) {
            Ok(t) => t,
            Err(d) => {
                diags.push(d);
                continue;
            }
        };
        if toks.is_empty() {
            continue;
        }
        let end_col = raw.chars().count() + 1;
        let mut c = Cursor {
            toks: &toks,
            pos: 0,
            line,
            end_col,
        };
        let res: Result<(), Diagnostic> = (|| {
            let (kcol, keyword) = c.ident("a keyword")?;
            match keyword.as_str() {
                "vertex" => {
                    if c.peek().is_none() {
                        return Err(c.err(DiagnosticKind::Lexical, "expected a vertex id".into()));
                    }
                    while c.peek().is_some() {
                        let (col, v) = c.ident("a vertex id")?;
                        vertices.push((line, col, v));
                    }
                }
                "arrow" => {
                    if let Some(Tok::Int(n)) = c.peek() {
                        return Err(c.err(
                            DiagnosticKind::Lexical,
                            format!("arrow id `{n}` reads as a number"),
                        ));
                    }
                    let (col, id) = c.ident("an arrow id")?;
                    c.expect(Tok::Colon)?;
                    let (scol, s) = c.ident("a source vertex")?;
                    c.expect(Tok::Arrow)?;
                    let (tcol, t) = c.ident("a target vertex")?;
                    let mut deg = 0;
                    if c.peek().is_some() {
                        let (_, kw) = c.ident("`deg`")?;
                        if kw != "deg" {
                            return Err(diag(
                                line,
                                c.col() - kw.len(),
                                DiagnosticKind::Lexical,
                                format!("expected `deg`, found `{kw}`"),
                            ));
                        }
                        deg = c.int()?;
                    }
                    c.done()?;
                    arrows.push((line, col, Arrow::new(&id, &s, &t, deg), scol, tcol));
                }
                "relation" => {
                    let (label_col, label) = c.ident("a relation label")?;
                    c.expect(Tok::Colon)?;
                    let src = c.ident("a source vertex")?;
                    c.expect(Tok::Arrow)?;
                    let dst = c.ident("a target vertex")?;
                    c.expect(Tok::Eq)?;
                    relations.push(RelationDecl {
                        line,
                        label_col,
                        label,
                        src,
                        dst,
                        expr_start: c.pos,
                        toks: toks.clone(),
                        end_col,
                    });
                }
                "m" => {
                    c.expect(Tok::Eq)?;
                    let v = c.int()?;
                    c.done()?;
                    if m.is_some() {
                        return Err(diag(
                            line,
                            kcol,
                            DiagnosticKind::Structural,
                            "`m` is set twice".into(),
                        ));
                    }
                    m = Some((line, v));
                }
                "option" => {
                    let (_, key) = c.ident("an option name")?;
                    c.expect(Tok::Eq)?;
                    let start = c.col();
                    let value = raw
                        .chars()
                        .skip(start - 1)
                        .take_while(|&ch| ch != '#')
                        .collect::<String>()
                        .trim()
                        .to_string();
                    if value.is_empty() {
                        return Err(
                            c.err(DiagnosticKind::Lexical, "expected an option value".into())
                        );
                    }
                    if options.insert(key.clone(), value).is_some() {
                        return Err(diag(
                            line,
                            kcol,
                            DiagnosticKind::Structural,
                            format!("option `{key}` is set twice"),
                        ));
                    }
                }
                other => {
                    return Err(diag(
                        line,
                        kcol,
                        DiagnosticKind::Lexical,
                        format!("unknown keyword `{other}`"),
                    ));
                }
            }
            Ok(())
        })();
        if let Err(d) = res {
            diags.push(d);
        }
    }

    // quiver
    let vertex_ids: Vec<String> = vertices.iter().map(|(_, _, v)| v.clone()).collect();
    let arrow_list: Vec<Arrow> = arrows.iter().map(|(_, _, a, _, _)| a.clone()).collect();
    let mut quiver_ok = true;
    if let Err(violations) = crate::quiver::validate(&vertex_ids, &arrow_list) {
        quiver_ok = false;
        for v in violations {
            diags.push(match &v {
                Violation::DuplicateVertex(id) => {
                    let hits: Vec<_> = vertices.iter().filter(|(_, _, x)| x == id).collect();
                    let (l, c, _) = hits.get(1).copied().unwrap_or(hits[0]);
                    diag(*l, *c, DiagnosticKind::Structural, v.to_string())
                }
                Violation::DuplicateArrow(id) => {
                    let hits: Vec<_> = arrows
                        .iter()
                        .filter(|(_, _, a, _, _)| &a.id == id)
                        .collect();
                    let (l, c, _, _, _) = hits.get(1).copied().unwrap_or(hits[0]);
                    diag(*l, *c, DiagnosticKind::Structural, v.to_string())
                }
                Violation::UndeclaredSource { arrow, .. } => {
                    let (l, _, _, s, _) = arrows
                        .iter()
                        .find(|(_, _, a, _, _)| &a.id == arrow)
                        .unwrap();
                    diag(*l, *s, DiagnosticKind::Reference, v.to_string())
                }
                Violation::UndeclaredTarget { arrow, .. } => {
                    let (l, _, _, _, t) = arrows
                        .iter()
                        .find(|(_, _, a, _, _)| &a.id == arrow)
                        .unwrap();
                    diag(*l, *t, DiagnosticKind::Reference, v.to_string())
                }
            });
        }
    }
    if !quiver_ok {
        diags.sort_by_key(|d| (d.line, d.col));
        return Err(diags);
    }
    let quiver = Arc::new(GradedQuiver::new(vertex_ids, arrow_list).expect("validated"));

    // relations
    let mut seq = RelationSequence::new(&quiver);
    let mut labels: HashMap<String, usize> = HashMap::new();
    for decl in &relations {
        let res: Result<(), Diagnostic> = (|| {
            if labels.insert(decl.label.clone(), decl.line).is_some() {
                return Err(diag(
                    decl.line,
                    decl.label_col,
                    DiagnosticKind::Structural,
                    format!("relation `{}` is declared twice", decl.label),
                ));
            }
            let s = quiver.vertex_index(&decl.src.1).map_err(|_| {
                diag(
                    decl.line,
                    decl.src.0,
                    DiagnosticKind::Reference,
                    format!("unknown vertex `{}`", decl.src.1),
                )
            })?;
            let t = quiver.vertex_index(&decl.dst.1).map_err(|_| {
                diag(
                    decl.line,
                    decl.dst.0,
                    DiagnosticKind::Reference,
                    format!("unknown vertex `{}`", decl.dst.1),
                )
            })?;
            let mut c = Cursor {
                toks: &decl.toks,
                pos: decl.expr_start,
                line: decl.line,
                end_col: decl.end_col,
            };
            let terms = parse_expr(&mut c)?;
            let mut body = PathElement::zero(&quiver);
            for (coeff, path) in terms {
                let mut ixs = Vec::with_capacity(path.len());
                for (col, id) in &path {
                    let a = quiver.arrow_index(id).map_err(|_| {
                        diag(
                            decl.line,
                            *col,
                            DiagnosticKind::Reference,
                            format!("unknown arrow `{id}`"),
                        )
                    })?;
                    if quiver.degree(a) != 0 {
                        return Err(diag(
                            decl.line,
                            *col,
                            DiagnosticKind::Type,
                            format!(
                                "arrow `{id}` has degree {}; relations must have degree 0",
                                quiver.degree(a)
                            ),
                        ));
                    }
                    ixs.push(a);
                }
                let col0 = path[0].0;
                let p = quiver.path(&ixs).map_err(|_| {
                    diag(
                        decl.line,
                        col0,
                        DiagnosticKind::Structural,
                        format!(
                            "`{}` is not a path",
                            path.iter()
                                .map(|(_, x)| x.as_str())
                                .collect::<Vec<_>>()
                                .join("*")
                        ),
                    )
                })?;
                if p.base() != s || quiver.path_target(&p) != t {
                    return Err(diag(
                        decl.line,
                        col0,
                        DiagnosticKind::Structural,
                        format!(
                            "`{}` does not run from `{}` to `{}`",
                            quiver.format_path(&p),
                            decl.src.1,
                            decl.dst.1
                        ),
                    ));
                }
                body = body
                    .add(&PathElement::from_path(&quiver, p).scale(&coeff))
                    .expect("same quiver");
            }
            seq.push_ix(&decl.label, s, t, body).map_err(|e| {
                diag(
                    decl.line,
                    decl.label_col,
                    DiagnosticKind::Structural,
                    e.to_string(),
                )
            })
        })();
        if let Err(d) = res {
            diags.push(d);
        }
    }
    if !diags.is_empty() {
        diags.sort_by_key(|d| (d.line, d.col));
        return Err(diags);
    }
    Ok(ProblemFile {
        quiver,
        relations: seq,
        m: m.map(|(_, v)| v),
        options,
    })
}

/// Writes a problem file in the canonical layout accepted by [`parse`].
pub fn serialize(p: &ProblemFile) -> String {
    let q = &p.quiver;
    let mut out = String::new();
    if q.num_vertices() > 0 {
        out.push_str("vertex ");
        out.push_str(&q.vertices().join(" "));
        out.push('\n');
    }
    for a in q.arrows() {
        out.push_str(&format!("arrow {} : {} -> {}", a.id, a.source, a.target));
        if a.degree != 0 {
            out.push_str(&format!(" deg {}", a.degree));
        }
        out.push('\n');
    }
    for r in p.relations.entries() {
        out.push_str(&format!(
            "relation {} : {} -> {} = {}\n",
            r.label,
            q.vertex_id(r.source),
            q.vertex_id(r.target),
            r.body
        ));
    }
    if let Some(m) = p.m {
        out.push_str(&format!("m = {m}\n"));
    }
    for (k, v) in &p.options {
        out.push_str(&format!("option {k} = {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "\
# commutative square
vertex v1 v2 v3 v4
arrow a : v1 -> v2
arrow b : v2 -> v4
arrow c : v1 -> v3
arrow d : v3 -> v4
relation r1 : v1 -> v4 = a*b - c*d
";

    fn first(text: &str) -> Diagnostic {
        parse(text).unwrap_err().remove(0)
    }

    #[test]
    fn minimal_file() {
        let p = parse("vertex v\n").unwrap();
        assert_eq!(p.quiver.num_vertices(), 1);
        assert_eq!(p.quiver.num_arrows(), 0);
        assert!(p.relations.is_empty());
        assert_eq!(p.m, None);
    }

    #[test]
    fn square_file() {
        let p = parse(SQUARE).unwrap();
        assert_eq!(p.quiver.num_vertices(), 4);
        let r = &p.relations.entries()[0];
        assert_eq!(r.label, "r1");
        let want = PathElement::path(&p.quiver, &["a", "b"])
            .unwrap()
            .sub(&PathElement::path(&p.quiver, &["c", "d"]).unwrap())
            .unwrap();
        assert_eq!(r.body, want);
    }

    #[test]
    fn coefficients_and_zero() {
        let text = "vertex v\narrow x : v -> v\narrow y : v -> v\n\
                    relation r : v -> v = 2 x*y - 1/3*y*x + x*x - x*x\n\
                    relation z : v -> v = 0\nm = 4\noption max_len = 7\n";
        let p = parse(text).unwrap();
        assert_eq!(p.relations.entries()[0].body.to_string(), "2 x*y - 1/3 y*x");
        assert!(p.relations.entries()[1].body.is_zero());
        assert_eq!(p.m, Some(4));
        assert_eq!(p.option_usize("max_len"), Some(7));
    }

    #[test]
    fn graded_arrows() {
        let p = parse("vertex v\narrow e : v -> v deg -2\n").unwrap();
        assert_eq!(p.quiver.degree(0), -2);
        let d = first("vertex v\narrow e : v -> v deg -2\nrelation r : v -> v = e*e\n");
        assert_eq!((d.line, d.col, d.kind), (3, 23, DiagnosticKind::Type));
    }

    #[test]
    fn undeclared_arrow() {
        let d = first(&format!("{SQUARE}relation r2 : v1 -> v4 = a*q\n"));
        assert_eq!(d.kind, DiagnosticKind::Reference);
        assert_eq!((d.line, d.col), (8, 28));
        assert!(d.message.contains("`q`"));
    }

    #[test]
    fn undeclared_vertex() {
        let d = first("vertex v\narrow a : v -> w\n");
        assert_eq!((d.line, d.col, d.kind), (2, 16, DiagnosticKind::Reference));
    }

    #[test]
    fn lexical_errors() {
        let d = first("vertex v\narrow a : v => v\n");
        assert_eq!((d.line, d.kind), (2, DiagnosticKind::Lexical));
        let d = first("vertex v$\n");
        assert_eq!((d.line, d.col, d.kind), (1, 9, DiagnosticKind::Lexical));
        let d = first("vertex v\narrow 7 : v -> v\n");
        assert_eq!((d.line, d.col, d.kind), (2, 7, DiagnosticKind::Lexical));
        let d = first("frobnicate v\n");
        assert_eq!((d.line, d.col, d.kind), (1, 1, DiagnosticKind::Lexical));
    }

    #[test]
    fn type_errors() {
        let d = first("vertex v\narrow x : v -> v\nrelation r : v -> v = 2/0 x\n");
        assert_eq!(d.kind, DiagnosticKind::Type);
        let d = first("vertex v\nm = x\n");
        assert_eq!(d.kind, DiagnosticKind::Type);
        let d = first("vertex v\narrow x : v -> v\nrelation r : v -> v = 3\n");
        assert_eq!(d.kind, DiagnosticKind::Type);
    }

    #[test]
    fn structural_errors() {
        let d = first(&format!("{SQUARE}relation r2 : v1 -> v4 = a*b - c\n"));
        assert_eq!((d.line, d.col, d.kind), (8, 32, DiagnosticKind::Structural));
        let d = first(&format!("{SQUARE}relation r2 : v1 -> v4 = b*a\n"));
        assert_eq!(d.kind, DiagnosticKind::Structural);
        let d = first("vertex v v\n");
        assert_eq!((d.line, d.col, d.kind), (1, 10, DiagnosticKind::Structural));
        let d = first(&format!("{SQUARE}relation r1 : v1 -> v4 = a*b\n"));
        assert_eq!(d.kind, DiagnosticKind::Structural);
    }

    #[test]
    fn collects_all_diagnostics() {
        let all = parse("vertex v\nbogus\narrow a : v -> v\nrelation r : v -> v = a*z\nrelation s : v -> v = y\n").unwrap_err();
        assert_eq!(all.len(), 3);
        assert!(all.windows(2).all(|w| w[0].line <= w[1].line));
    }

    #[test]
    fn round_trip() {
        let text = format!("{SQUARE}relation z : v2 -> v2 = 0\nm = 3\noption seed = 7\n");
        let p = parse(&text).unwrap();
        let again = parse(&serialize(&p)).unwrap();
        assert_eq!(p, again);
    }
}
