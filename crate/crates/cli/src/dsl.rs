//! Text format for quivers with relations and weights.
//!
//! ```text
//! quiver triangle {
//!   vertices: v0 v1 v2;
//!   arrows:
//!     a0: v0 -> v1;
//!     a1: v1 -> v2;
//!     a2: v2 -> v0;
//!   relations: a2 a1 a0;
//! }
//! ```
//!
//! Relation words are written leftmost-applied-last, which is also the
//! letter order of [`Word`].

use std::collections::BTreeMap;
use std::fmt;

use qrep_core::toric::MAX_WEIGHT;
use qrep_core::word::ViolationKind;
use qrep_core::{Arrow, Quiver, RelationSet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Lexical,
    Syntax,
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub stage: Stage,
    pub span: Span,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stage = match self.stage {
            Stage::Lexical => "lexical",
            Stage::Syntax => "syntax",
            Stage::Semantic => "semantic",
        };
        write!(f, "{}: {stage} error: {}", self.span, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Colon,
    Semi,
    Comma,
    Arrow,
    LBrace,
    RBrace,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<(Vec<(Tok, Span)>, Span), Diagnostic> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = Span { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        match c {
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while chars.peek().is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_') {
                    s.push(bump(&mut chars));
                }
                out.push((Tok::Ident(s), span));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    s.push(bump(&mut chars));
                }
                let n = s.parse().map_err(|_| Diagnostic {
                    stage: Stage::Lexical,
                    span,
                    message: format!("integer `{s}` is too large"),
                })?;
                out.push((Tok::Int(n), span));
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push((Tok::Arrow, span));
                } else {
                    return Err(Diagnostic {
                        stage: Stage::Lexical,
                        span,
                        message: "expected `->`".into(),
                    });
                }
            }
            _ => {
                bump(&mut chars);
                let tok = match c {
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => {
                        return Err(Diagnostic {
                            stage: Stage::Lexical,
                            span,
                            message: format!("unexpected character {c:?}"),
                        })
                    }
                };
                out.push((tok, span));
            }
        }
    }
    Ok((out, Span { line, column }))
}

/// Per-arrow weights `(mu, nu)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Weights {
    pub mu: BTreeMap<String, u64>,
    pub nu: BTreeMap<String, u64>,
}

impl Weights {
    pub fn unit(q: &Quiver) -> Self {
        let ones: BTreeMap<String, u64> = q.arrow_ids().map(|a| (a.to_string(), 1)).collect();
        Weights {
            mu: ones.clone(),
            nu: ones,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Spans {
    pub vertices: BTreeMap<String, Span>,
    pub arrows: BTreeMap<String, Span>,
    /// Indexed like the document's relations.
    pub relations: Vec<Span>,
    pub weights: BTreeMap<String, Span>,
}

#[derive(Debug, Clone)]
pub struct QuiverDocument {
    pub name: Option<String>,
    pub quiver: Quiver,
    /// Kept in canonical (printed) order.
    pub relations: RelationSet,
    /// `None` when the document has no weights section.
    pub weights: Option<Weights>,
    pub spans: Spans,
}

impl PartialEq for QuiverDocument {
    /// Content equality; source positions are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.quiver == other.quiver
            && self.relations == other.relations
            && self.weights == other.weights
    }
}

impl QuiverDocument {
    pub fn new(name: Option<String>, quiver: Quiver, relations: RelationSet) -> Self {
        let mut relations = relations.relations;
        relations.sort_by_key(word_text);
        QuiverDocument {
            name,
            quiver,
            relations: RelationSet::new(relations),
            weights: None,
            spans: Spans::default(),
        }
    }

    /// Explicit weights, or `(1, 1)` on every arrow.
    pub fn weights_or_unit(&self) -> Weights {
        self.weights.clone().unwrap_or_else(|| Weights::unit(&self.quiver))
    }
}

fn word_text(w: &Word) -> String {
    w.to_string()
}

struct Parser<'a> {
    toks: &'a [(Tok, Span)],
    pos: usize,
    end: Span,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        let found = self.peek().map_or("end of input".to_string(), Tok::describe);
        Err(Diagnostic {
            stage: Stage::Syntax,
            span: self.span(),
            message: format!("expected {expected}, found {found}"),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if self.peek() == Some(&tok) {
            let s = self.span();
            self.pos += 1;
            Ok(s)
        } else {
            self.error(&tok.describe())
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let out = (s.clone(), self.span());
                self.pos += 1;
                Ok(out)
            }
            _ => self.error("an identifier"),
        }
    }

    fn int(&mut self) -> PResult<u64> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("an integer"),
        }
    }

    fn at_ident(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)))
    }

    fn at_arrow_decl(&self) -> bool {
        matches!(
            (self.peek(), self.peek_at(1), self.peek_at(2), self.peek_at(3)),
            (Some(Tok::Ident(_)), Some(Tok::Colon), Some(Tok::Ident(_)), Some(Tok::Arrow))
        )
    }
}

#[derive(Default)]
struct Raw {
    name: Option<String>,
    vertices: Vec<(String, Span)>,
    arrows: Vec<(String, Span, (String, Span), (String, Span))>,
    relations: Vec<Vec<(String, Span)>>,
    weights: Option<Vec<(String, Span, u64, u64)>>,
}

fn parse_raw(p: &mut Parser) -> PResult<Raw> {
    let mut raw = Raw::default();
    match p.peek() {
        Some(Tok::Ident(s)) if s == "quiver" => p.pos += 1,
        _ => return p.error("`quiver`"),
    }
    if p.at_ident() {
        raw.name = Some(p.ident()?.0);
    }
    p.expect(Tok::LBrace)?;
    let mut sections = 0;
    loop {
        if p.peek() == Some(&Tok::RBrace) && sections > 0 {
            p.pos += 1;
            break;
        }
        let section = match p.peek() {
            Some(Tok::Ident(s)) if ["vertices", "arrows", "relations", "weights"].contains(&s.as_str()) => s.clone(),
            _ => return p.error("a section (`vertices`, `arrows`, `relations` or `weights`)"),
        };
        p.pos += 1;
        p.expect(Tok::Colon)?;
        sections += 1;
        match section.as_str() {
            "vertices" => {
                raw.vertices.push(p.ident()?);
                while p.at_ident() {
                    raw.vertices.push(p.ident()?);
                }
                p.expect(Tok::Semi)?;
            }
            "arrows" => {
                if !p.at_arrow_decl() {
                    return p.error("an arrow declaration `id: tail -> head;`");
                }
                while p.at_arrow_decl() {
                    let (id, span) = p.ident()?;
                    p.expect(Tok::Colon)?;
                    let tail = p.ident()?;
                    p.expect(Tok::Arrow)?;
                    let head = p.ident()?;
                    p.expect(Tok::Semi)?;
                    raw.arrows.push((id, span, tail, head));
                }
            }
            "relations" => {
                loop {
                    let mut word = vec![p.ident()?];
                    while p.at_ident() {
                        word.push(p.ident()?);
                    }
                    raw.relations.push(word);
                    if p.peek() == Some(&Tok::Comma) {
                        p.pos += 1;
                    } else {
                        break;
                    }
                }
                p.expect(Tok::Semi)?;
            }
            _ => {
                let list = raw.weights.get_or_insert_with(Vec::new);
                if !p.at_ident() {
                    return p.error("a weight `id(mu, nu)`");
                }
                while p.at_ident() {
                    let (id, span) = p.ident()?;
                    p.expect(Tok::LParen)?;
                    let mu = p.int()?;
                    p.expect(Tok::Comma)?;
                    let nu = p.int()?;
                    p.expect(Tok::RParen)?;
                    list.push((id, span, mu, nu));
                }
                p.expect(Tok::Semi)?;
            }
        }
    }
    if p.peek().is_some() {
        return p.error("end of input");
    }
    Ok(raw)
}

fn semantic(span: Span, message: String) -> Diagnostic {
    Diagnostic {
        stage: Stage::Semantic,
        span,
        message,
    }
}

fn resolve(raw: Raw) -> Result<QuiverDocument, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut spans = Spans::default();
    for (v, s) in &raw.vertices {
        if let Some(first) = spans.vertices.get(v) {
            diags.push(semantic(*s, format!("duplicate vertex `{v}` (first declared at {first})")));
        } else {
            spans.vertices.insert(v.clone(), *s);
        }
    }
    if raw.vertices.is_empty() {
        diags.push(semantic(Span { line: 1, column: 1 }, "a quiver needs at least one vertex".into()));
    }
    let mut arrows = Vec::new();
    for (id, s, (t, ts), (h, hs)) in &raw.arrows {
        if let Some(first) = spans.arrows.get(id) {
            diags.push(semantic(*s, format!("duplicate arrow `{id}` (first declared at {first})")));
            continue;
        }
        spans.arrows.insert(id.clone(), *s);
        for (v, vs) in [(t, ts), (h, hs)] {
            if !spans.vertices.contains_key(v) {
                diags.push(semantic(*vs, format!("arrow `{id}` uses undeclared vertex `{v}`")));
            }
        }
        arrows.push(Arrow::new(id.clone(), t.clone(), h.clone()));
    }
    let mut words = Vec::new();
    for word in &raw.relations {
        let mut ok = true;
        for (a, s) in word {
            if !spans.arrows.contains_key(a) {
                diags.push(semantic(*s, format!("relation uses unknown arrow `{a}`")));
                ok = false;
            }
        }
        if ok {
            let ids: Vec<&str> = word.iter().map(|(a, _)| a.as_str()).collect();
            words.push((Word::path(&ids), word[0].1, word.iter().map(|x| x.1).collect::<Vec<_>>()));
        }
    }
    let weights = raw.weights.as_ref().map(|list| {
        let mut w = Weights::default();
        for (id, s, mu, nu) in list {
            if !spans.arrows.contains_key(id) {
                diags.push(semantic(*s, format!("weight for unknown arrow `{id}`")));
            } else if spans.weights.contains_key(id) {
                diags.push(semantic(*s, format!("duplicate weight for arrow `{id}`")));
            } else if *mu > MAX_WEIGHT || *nu > MAX_WEIGHT {
                diags.push(semantic(*s, format!("weight of arrow `{id}` exceeds {MAX_WEIGHT}")));
            } else {
                spans.weights.insert(id.clone(), *s);
                w.mu.insert(id.clone(), *mu);
                w.nu.insert(id.clone(), *nu);
            }
        }
        w
    });
    if !diags.is_empty() {
        return Err(diags);
    }
    let quiver = Quiver::new(raw.vertices.iter().map(|v| v.0.clone()).collect::<Vec<_>>(), arrows)
        .map_err(|e| vec![semantic(Span { line: 1, column: 1 }, e.to_string())])?;
    if let Some(w) = &weights {
        let missing: Vec<&str> = quiver.arrow_ids().filter(|a| !w.mu.contains_key(*a)).collect();
        if !missing.is_empty() {
            let span = raw.weights.as_ref().and_then(|l| l.first()).map_or(Span { line: 1, column: 1 }, |x| x.1);
            return Err(vec![semantic(span, format!("missing weights for arrows {}", missing.join(", ")))]);
        }
    }
    let rs = RelationSet::new(words.iter().map(|w| w.0.clone()).collect());
    if let Err(violations) = rs.validate(&quiver) {
        return Err(violations
            .into_iter()
            .map(|v| {
                let (_, first, letters) = &words[v.relation];
                let span = v.letter.and_then(|i| letters.get(i).copied()).unwrap_or(*first);
                let why = match v.reason {
                    ViolationKind::NotComposable => "letters do not compose",
                    ViolationKind::NotClosed => "relation is not a cycle",
                    ViolationKind::UnknownArrow => "unknown arrow",
                    ViolationKind::NotPositive => "relation must be positive",
                    ViolationKind::Empty => "empty relation",
                };
                semantic(span, format!("relation `{}`: {why}", words[v.relation].0))
            })
            .collect());
    }
    let mut rel: Vec<(Word, Span)> = words.into_iter().map(|(w, s, _)| (w, s)).collect();
    rel.sort_by_key(|(w, _)| word_text(w));
    spans.relations = rel.iter().map(|r| r.1).collect();
    Ok(QuiverDocument {
        name: raw.name,
        quiver,
        relations: RelationSet::new(rel.into_iter().map(|r| r.0).collect()),
        weights,
        spans,
    })
}

pub fn parse(text: &str) -> Result<QuiverDocument, Vec<Diagnostic>> {
    let (toks, end) = lex(text).map_err(|d| vec![d])?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end,
    };
    let raw = parse_raw(&mut p).map_err(|d| vec![d])?;
    resolve(raw)
}

/// Canonical text: sections in fixed order, entries sorted, empty
/// relations omitted.
pub fn print(doc: &QuiverDocument) -> String {
    let mut out = String::from("quiver");
    if let Some(n) = &doc.name {
        out.push(' ');
        out.push_str(n);
    }
    out.push_str(" {\n  vertices:");
    for v in doc.quiver.vertices() {
        out.push(' ');
        out.push_str(v);
    }
    out.push_str(";\n");
    if doc.quiver.num_arrows() > 0 {
        out.push_str("  arrows:\n");
        for a in doc.quiver.arrows() {
            out.push_str(&format!("    {}: {} -> {};\n", a.id, a.tail, a.head));
        }
    }
    if !doc.relations.is_empty() {
        let mut words: Vec<String> = doc.relations.relations.iter().map(word_text).collect();
        words.sort();
        out.push_str(&format!("  relations: {};\n", words.join(", ")));
    }
    if let Some(w) = &doc.weights {
        if doc.quiver.num_arrows() > 0 {
            let items: Vec<String> = doc
                .quiver
                .arrow_ids()
                .map(|a| format!("{a}({},{})", w.mu[a], w.nu[a]))
                .collect();
            out.push_str(&format!("  weights: {};\n", items.join(" ")));
        }
    }
    out.push_str("}\n");
    out
}
