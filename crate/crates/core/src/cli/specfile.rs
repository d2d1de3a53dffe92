//! Line-oriented input format.
//!
//! ```text
//! space M dim=3 coords=x1,x2,x3
//! bivector L on M
//!   1 2: x3
//! endo n on M
//!   1 1: 1
//! vector X on M
//!   1: x2
//! check algebroid L n
//! check groupoid L n convention=left
//! check correspondence L n
//! check oracle trials=100 seed=7
//! ```
//!
//! `#` starts a comment. Indices are 1-based; bivector entries need `i < j`;
//! endo entries are `row column`. Omitted components are zero.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::pairgroupoid::Convention;
use crate::symexpr::{is_identifier, parse_expr, ChartSpace, SymError};
use crate::tensorcalc::{Bivector, EndoField, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub kind: SpecErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("duplicate {kind} '{name}'")]
    Duplicate { kind: &'static str, name: String },
    #[error("unknown {kind} '{name}'")]
    UnknownReference { kind: &'static str, name: String },
    #[error("{0}")]
    Index(String),
    #[error("{0}")]
    Expression(SymError),
    #[error("{0}")]
    Mismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    Bivector,
    Endo,
    Vector,
}

impl TensorKind {
    pub fn keyword(self) -> &'static str {
        match self {
            TensorKind::Bivector => "bivector",
            TensorKind::Endo => "endo",
            TensorKind::Vector => "vector",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorValue {
    Bivector(Bivector),
    Endo(EndoField),
    Vector(VectorField),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceDecl {
    pub name: String,
    pub chart: Arc<ChartSpace>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorDecl {
    pub name: String,
    pub space: String,
    pub value: TensorValue,
}

impl TensorDecl {
    pub fn kind(&self) -> TensorKind {
        match self.value {
            TensorValue::Bivector(_) => TensorKind::Bivector,
            TensorValue::Endo(_) => TensorKind::Endo,
            TensorValue::Vector(_) => TensorKind::Vector,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebroid,
    Groupoid,
    Correspondence,
}

impl Suite {
    pub fn keyword(self) -> &'static str {
        match self {
            Suite::Algebroid => "algebroid",
            Suite::Groupoid => "groupoid",
            Suite::Correspondence => "correspondence",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckDecl {
    Structure {
        suite: Suite,
        bivector: String,
        endo: String,
        /// Ignored by the algebroid suite, which does not take one.
        convention: Option<Convention>,
    },
    Oracle {
        trials: Option<usize>,
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Space(SpaceDecl),
    Tensor(TensorDecl),
}

/// A parsed and fully resolved input file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecFile {
    pub decls: Vec<Decl>,
    pub checks: Vec<CheckDecl>,
}

impl SpecFile {
    pub fn spaces(&self) -> impl Iterator<Item = &SpaceDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Space(s) => Some(s),
            Decl::Tensor(_) => None,
        })
    }

    pub fn tensors(&self) -> impl Iterator<Item = &TensorDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Tensor(t) => Some(t),
            Decl::Space(_) => None,
        })
    }

    pub fn space(&self, name: &str) -> Option<&SpaceDecl> {
        self.spaces().find(|s| s.name == name)
    }

    pub fn bivector(&self, name: &str) -> Option<&Bivector> {
        self.tensors().find_map(|t| match &t.value {
            TensorValue::Bivector(b) if t.name == name => Some(b),
            _ => None,
        })
    }

    pub fn endo(&self, name: &str) -> Option<&EndoField> {
        self.tensors().find_map(|t| match &t.value {
            TensorValue::Endo(e) if t.name == name => Some(e),
            _ => None,
        })
    }
}

/// Whitespace-separated token with its 1-based character column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push(Token { text: &line[b..byte], col: c + 1 });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push(Token { text: &line[b..], col: c + 1 });
    }
    out
}

fn char_col(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

struct OpenTensor {
    decl_index: usize,
    dim: usize,
    kind: TensorKind,
    /// Entries seen so far, to reject duplicates.
    seen: BTreeMap<Vec<usize>, usize>,
}

struct Parser {
    spec: SpecFile,
    open: Option<OpenTensor>,
    /// `(line, bivector, column, endo, column)` of each structure check.
    pending: Vec<(usize, String, usize, String, usize)>,
}

impl Parser {
    fn err(line: usize, column: usize, kind: SpecErrorKind) -> SpecError {
        SpecError { line, column, kind }
    }

    fn syntax(line: usize, column: usize, msg: impl Into<String>) -> SpecError {
        Self::err(line, column, SpecErrorKind::Syntax(msg.into()))
    }

    fn top_level(&mut self, lno: usize, line: &str, toks: &[Token<'_>]) -> Result<(), SpecError> {
        self.open = None;
        let head = toks[0];
        match head.text {
            "space" => self.space(lno, line, toks),
            "bivector" | "endo" | "vector" => self.tensor(lno, line, toks),
            "check" => self.check(lno, line, toks),
            other => Err(Self::syntax(lno, head.col, format!("unknown directive '{other}'"))),
        }
    }

    fn name(lno: usize, tok: Option<&Token<'_>>, line: &str, what: &str) -> Result<String, SpecError> {
        match tok {
            Some(t) if is_identifier(t.text) => Ok(t.text.to_string()),
            Some(t) => Err(Self::syntax(lno, t.col, format!("invalid {what} name '{}'", t.text))),
            None => Err(Self::syntax(lno, line.chars().count() + 1, format!("expected {what} name"))),
        }
    }

    fn option<'a>(lno: usize, tok: &Token<'a>, key: &str) -> Result<&'a str, SpecError> {
        match tok.text.split_once('=') {
            Some((k, v)) if k == key && !v.is_empty() => Ok(v),
            _ => Err(Self::syntax(lno, tok.col, format!("expected {key}=<value>, found '{}'", tok.text))),
        }
    }

    fn space(&mut self, lno: usize, line: &str, toks: &[Token<'_>]) -> Result<(), SpecError> {
        let name = Self::name(lno, toks.get(1), line, "space")?;
        if self.spec.space(&name).is_some() {
            return Err(Self::err(lno, toks[1].col, SpecErrorKind::Duplicate { kind: "space", name }));
        }
        if toks.len() != 4 {
            let col = toks.get(4).map_or(line.chars().count() + 1, |t| t.col);
            return Err(Self::syntax(lno, col, "expected: space <name> dim=<n> coords=<c1,...,cn>"));
        }
        let dim_text = Self::option(lno, &toks[2], "dim")?;
        let dim: usize = dim_text
            .parse()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| Self::syntax(lno, toks[2].col + 4, format!("dimension must be a positive integer, found '{dim_text}'")))?;
        let coords: Vec<&str> = Self::option(lno, &toks[3], "coords")?.split(',').collect();
        let coords_col = toks[3].col + "coords=".len();
        if coords.len() != dim {
            return Err(Self::err(
                lno,
                coords_col,
                SpecErrorKind::Mismatch(format!("dim={dim} but {} coordinate names given", coords.len())),
            ));
        }
        let chart = ChartSpace::new(&coords).map_err(|e| Self::err(lno, coords_col, SpecErrorKind::Expression(e)))?;
        self.spec.decls.push(Decl::Space(SpaceDecl { name, chart }));
        Ok(())
    }

    fn tensor(&mut self, lno: usize, line: &str, toks: &[Token<'_>]) -> Result<(), SpecError> {
        let kind = match toks[0].text {
            "bivector" => TensorKind::Bivector,
            "endo" => TensorKind::Endo,
            _ => TensorKind::Vector,
        };
        let name = Self::name(lno, toks.get(1), line, kind.keyword())?;
        if self.spec.tensors().any(|t| t.name == name && t.kind() == kind) {
            return Err(Self::err(lno, toks[1].col, SpecErrorKind::Duplicate { kind: kind.keyword(), name }));
        }
        match toks.get(2) {
            Some(t) if t.text == "on" => {}
            Some(t) => return Err(Self::syntax(lno, t.col, format!("expected 'on', found '{}'", t.text))),
            None => return Err(Self::syntax(lno, line.chars().count() + 1, "expected 'on <space>'")),
        }
        let space_name = Self::name(lno, toks.get(3), line, "space")?;
        if let Some(t) = toks.get(4) {
            return Err(Self::syntax(lno, t.col, format!("unexpected '{}'", t.text)));
        }
        let chart = match self.spec.space(&space_name) {
            Some(s) => Arc::clone(&s.chart),
            None => {
                return Err(Self::err(
                    lno,
                    toks[3].col,
                    SpecErrorKind::UnknownReference { kind: "space", name: space_name },
                ))
            }
        };
        let value = match kind {
            TensorKind::Bivector => TensorValue::Bivector(Bivector::zero(&chart)),
            TensorKind::Endo => TensorValue::Endo(EndoField::zero(&chart)),
            TensorKind::Vector => TensorValue::Vector(VectorField::zero(&chart)),
        };
        self.spec.decls.push(Decl::Tensor(TensorDecl { name, space: space_name, value }));
        self.open = Some(OpenTensor {
            decl_index: self.spec.decls.len() - 1,
            dim: chart.dim(),
            kind,
            seen: BTreeMap::new(),
        });
        Ok(())
    }

    fn entry(&mut self, lno: usize, line: &str) -> Result<(), SpecError> {
        let Some(open) = self.open.as_mut() else {
            let col = line.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(Self::syntax(lno, col, "indented line outside a tensor block"));
        };
        let Some(colon) = line.find(':') else {
            let col = line.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(Self::syntax(lno, col, "expected '<indices>: <expr>'"));
        };
        let index_toks = tokens(&line[..colon]);
        let arity = if open.kind == TensorKind::Vector { 1 } else { 2 };
        if index_toks.len() != arity {
            let col = index_toks.first().map_or(char_col(line, colon), |t| t.col);
            let want = if arity == 1 { "'<i>: <expr>'" } else { "'<i> <j>: <expr>'" };
            return Err(Self::syntax(lno, col, format!("expected {want}")));
        }
        let mut idx = Vec::with_capacity(arity);
        for t in &index_toks {
            let i: usize = t
                .text
                .parse()
                .map_err(|_| Self::syntax(lno, t.col, format!("expected an index, found '{}'", t.text)))?;
            if i == 0 || i > open.dim {
                return Err(Self::err(
                    lno,
                    t.col,
                    SpecErrorKind::Index(format!("index {i} out of range 1..={}", open.dim)),
                ));
            }
            idx.push(i - 1);
        }
        if open.kind == TensorKind::Bivector && idx[0] >= idx[1] {
            return Err(Self::err(
                lno,
                index_toks[0].col,
                SpecErrorKind::Index(format!(
                    "bivector entry {} {} must have i < j (write the upper-triangle entry)",
                    idx[0] + 1,
                    idx[1] + 1
                )),
            ));
        }
        if let Some(prev) = open.seen.insert(idx.clone(), lno) {
            return Err(Self::err(
                lno,
                index_toks[0].col,
                SpecErrorKind::Duplicate { kind: "entry", name: format!("{} (first on line {prev})", line[..colon].trim()) },
            ));
        }

        let expr = &line[colon + 1..];
        let expr_col = char_col(line, colon + 1);
        let decl = match &mut self.spec.decls[open.decl_index] {
            Decl::Tensor(t) => t,
            Decl::Space(_) => unreachable!("open block is a tensor"),
        };
        let chart = match &decl.value {
            TensorValue::Bivector(b) => Arc::clone(b.space()),
            TensorValue::Endo(e) => Arc::clone(e.space()),
            TensorValue::Vector(v) => Arc::clone(v.space()),
        };
        if expr.trim().is_empty() {
            return Err(Self::syntax(lno, expr_col, "missing expression"));
        }
        let p = parse_expr(expr, &chart).map_err(|e| {
            let offset = match &e {
                SymError::Syntax { pos, .. } | SymError::UnknownIdentifier { pos, .. } | SymError::BadExponent { pos } => {
                    *pos
                }
                _ => 1,
            };
            Self::err(lno, expr_col + offset - 1, SpecErrorKind::Expression(e))
        })?;
        match &mut decl.value {
            TensorValue::Bivector(b) => b.set(idx[0], idx[1], p).expect("validated indices"),
            TensorValue::Endo(e) => e.set(idx[0], idx[1], p).expect("validated indices"),
            TensorValue::Vector(v) => {
                let mut comps = v.components().to_vec();
                comps[idx[0]] = p;
                *v = VectorField::new(&chart, comps).expect("same dimension");
            }
        }
        Ok(())
    }

    fn check(&mut self, lno: usize, line: &str, toks: &[Token<'_>]) -> Result<(), SpecError> {
        let Some(suite_tok) = toks.get(1) else {
            return Err(Self::syntax(lno, line.chars().count() + 1, "expected a suite name"));
        };
        let suite = match suite_tok.text {
            "algebroid" => Suite::Algebroid,
            "groupoid" => Suite::Groupoid,
            "correspondence" => Suite::Correspondence,
            "oracle" => return self.oracle(lno, &toks[2..]),
            other => {
                return Err(Self::syntax(
                    lno,
                    suite_tok.col,
                    format!("unknown suite '{other}' (expected algebroid|groupoid|correspondence|oracle)"),
                ))
            }
        };
        let bivector = Self::name(lno, toks.get(2), line, "bivector")?;
        let endo = Self::name(lno, toks.get(3), line, "endo")?;
        let mut convention = None;
        for t in &toks[4..] {
            if suite == Suite::Algebroid {
                return Err(Self::syntax(lno, t.col, format!("unexpected '{}'", t.text)));
            }
            if convention.is_some() {
                return Err(Self::syntax(lno, t.col, "convention given twice"));
            }
            let v = Self::option(lno, t, "convention")?;
            convention = Some(v.parse().map_err(|e: String| Self::syntax(lno, t.col + "convention=".len(), e))?);
        }
        self.pending.push((lno, bivector.clone(), toks[2].col, endo.clone(), toks[3].col));
        self.spec.checks.push(CheckDecl::Structure { suite, bivector, endo, convention });
        Ok(())
    }

    fn oracle(&mut self, lno: usize, opts: &[Token<'_>]) -> Result<(), SpecError> {
        let (mut trials, mut seed) = (None, None);
        for t in opts {
            let Some((key, value)) = t.text.split_once('=') else {
                return Err(Self::syntax(lno, t.col, format!("expected trials=<k> or seed=<s>, found '{}'", t.text)));
            };
            let vcol = t.col + key.chars().count() + 1;
            match key {
                "trials" if trials.is_none() => {
                    trials = Some(
                        value
                            .parse::<usize>()
                            .ok()
                            .filter(|&k| k > 0)
                            .ok_or_else(|| Self::syntax(lno, vcol, "trials must be a positive integer"))?,
                    )
                }
                "seed" if seed.is_none() => {
                    seed = Some(value.parse().map_err(|_| Self::syntax(lno, vcol, "seed must be a nonnegative integer"))?)
                }
                "trials" | "seed" => return Err(Self::syntax(lno, t.col, format!("{key} given twice"))),
                other => return Err(Self::syntax(lno, t.col, format!("unknown option '{other}'"))),
            }
        }
        self.spec.checks.push(CheckDecl::Oracle { trials, seed });
        Ok(())
    }

    /// Check references may point forward, so they are resolved last.
    fn resolve(&self) -> Result<(), SpecError> {
        for (lno, b, bcol, e, ecol) in &self.pending {
            let bv = self.spec.tensors().find(|t| &t.name == b && t.kind() == TensorKind::Bivector);
            let ev = self.spec.tensors().find(|t| &t.name == e && t.kind() == TensorKind::Endo);
            let Some(bv) = bv else {
                return Err(Self::err(*lno, *bcol, SpecErrorKind::UnknownReference { kind: "bivector", name: b.clone() }));
            };
            let Some(ev) = ev else {
                return Err(Self::err(*lno, *ecol, SpecErrorKind::UnknownReference { kind: "endo", name: e.clone() }));
            };
            if bv.space != ev.space {
                return Err(Self::err(
                    *lno,
                    *ecol,
                    SpecErrorKind::Mismatch(format!("'{b}' is on {} but '{e}' is on {}", bv.space, ev.space)),
                ));
            }
        }
        Ok(())
    }
}

/// Parses and resolves an input file.
pub fn parse_specfile(text: &str) -> Result<SpecFile, SpecError> {
    let mut p = Parser { spec: SpecFile::default(), open: None, pending: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let lno = i + 1;
        let line = raw.split_once('#').map_or(raw, |(code, _)| code);
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with(char::is_whitespace) {
            p.entry(lno, line)?;
        } else {
            let toks = tokens(line);
            p.top_level(lno, line, &toks)?;
        }
    }
    p.resolve()?;
    Ok(p.spec)
}

fn write_entries(f: &mut fmt::Formatter<'_>, value: &TensorValue) -> fmt::Result {
    match value {
        TensorValue::Bivector(b) => {
            for (i, j, p) in b.upper_entries() {
                if !p.is_zero() {
                    writeln!(f, "  {} {}: {p}", i + 1, j + 1)?;
                }
            }
        }
        TensorValue::Endo(e) => {
            for (i, row) in e.rows().iter().enumerate() {
                for (j, p) in row.iter().enumerate() {
                    if !p.is_zero() {
                        writeln!(f, "  {} {}: {p}", i + 1, j + 1)?;
                    }
                }
            }
        }
        TensorValue::Vector(v) => {
            for (i, p) in v.components().iter().enumerate() {
                if !p.is_zero() {
                    writeln!(f, "  {}: {p}", i + 1)?;
                }
            }
        }
    }
    Ok(())
}

/// Canonical form: declarations in file order, nonzero entries in index
/// order with canonical expressions, comments dropped.
impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            match d {
                Decl::Space(s) => {
                    writeln!(f, "space {} dim={} coords={}", s.name, s.chart.dim(), s.chart.names().join(","))?
                }
                Decl::Tensor(t) => {
                    writeln!(f, "{} {} on {}", t.kind().keyword(), t.name, t.space)?;
                    write_entries(f, &t.value)?;
                }
            }
        }
        if !self.checks.is_empty() && !self.decls.is_empty() {
            writeln!(f)?;
        }
        for c in &self.checks {
            match c {
                CheckDecl::Structure { suite, bivector, endo, convention } => {
                    write!(f, "check {} {bivector} {endo}", suite.keyword())?;
                    if let Some(conv) = convention {
                        write!(f, " convention={conv}")?;
                    }
                    writeln!(f)?;
                }
                CheckDecl::Oracle { trials, seed } => {
                    write!(f, "check oracle")?;
                    if let Some(t) = trials {
                        write!(f, " trials={t}")?;
                    }
                    if let Some(s) = seed {
                        write!(f, " seed={s}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}
