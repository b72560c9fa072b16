//! Syntax tree for `.sesq` files.
//!
//! Every declaration keeps the source position it came from, so both the
//! parser and the resolver can point at the offending line.  Identifiers
//! stay unresolved strings here; [`crate::elaborate`] turns them into core
//! structures.

use std::fmt;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn new(line: usize, col: usize) -> Self {
        Span { line, col }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagKind {
    Parse,
    Resolve,
}

/// A problem tied to a source position; parsing and resolution collect
/// these instead of stopping at the first one.
#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub span: Span,
    pub kind: DiagKind,
    pub message: String,
}

impl Diagnostic {
    pub fn parse(span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            span,
            kind: DiagKind::Parse,
            message: message.into(),
        }
    }

    pub fn resolve(span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            span,
            kind: DiagKind::Resolve,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DiagKind::Parse => "parse error",
            DiagKind::Resolve => "resolve error",
        };
        write!(
            f,
            "{}:{}: {kind}: {}",
            self.span.line, self.span.col, self.message
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpecDocument {
    pub blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Block {
    Category(CategoryBlock),
    Cells(CellsBlock),
    Group(GroupBlock),
    Xmod(XmodBlock),
    Complex(ComplexBlock),
    Intcat(IntcatBlock),
    Pseudocat(PseudocatBlock),
    Derive(DeriveDirective),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CategoryBlock {
    pub span: Span,
    pub decls: Vec<CatDecl>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CatDecl {
    /// `object A`
    Object { span: Span, name: String },
    /// `morphism f : A -> B`
    Morphism {
        span: Span,
        name: String,
        dom: String,
        cod: String,
    },
    /// `id A = idA`; declares the morphism and marks it as the identity.
    Identity {
        span: Span,
        object: String,
        name: String,
    },
    /// `compose g . f = h`, with `f` applied first.
    Compose {
        span: Span,
        g: String,
        f: String,
        result: String,
    },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CellsBlock {
    pub span: Span,
    pub decls: Vec<CellDecl>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellDecl {
    /// `cell u : f => g`
    Cell {
        span: Span,
        name: String,
        dom: String,
        cod: String,
    },
    /// `zero f = zf`
    Zero {
        span: Span,
        morphism: String,
        name: String,
    },
    /// `plus v + u = w`, defined when dom(v) = cod(u).
    Plus {
        span: Span,
        left: String,
        right: String,
        result: String,
    },
    /// `lwhisk g . u = u2`
    Lwhisk {
        span: Span,
        morphism: String,
        cell: String,
        result: String,
    },
    /// `rwhisk u . h = u3`
    Rwhisk {
        span: Span,
        cell: String,
        morphism: String,
        result: String,
    },
}

/// One table row: a keyword's worth of identifiers.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub span: Span,
    pub items: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupBlock {
    pub span: Span,
    pub name: String,
    /// `elem` row naming the carrier in order.
    pub elems: Option<Row>,
    /// `mul` rows, one per element, giving the table row by row.
    pub mul: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct XmodBlock {
    pub span: Span,
    pub name: String,
    /// `x <group>`: the group being acted on.
    pub top: Option<(Span, String)>,
    /// `b <group>`: the acting group.
    pub base: Option<(Span, String)>,
    /// `diff` row: image in `b` of each element of `x`.
    pub diff: Option<Row>,
    /// `act` rows, one per element of `b`, listing images of `x` elements.
    pub act: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexBlock {
    pub span: Span,
    pub name: String,
    /// `level <g0> <g1> <g2>`: group names for levels 0, 1, 2.
    pub levels: Option<Row>,
    /// `diff2` row: image in level 1 of each element of level 2.
    pub diff2: Option<Row>,
    /// `diff1` row: image in level 0 of each element of level 1.
    pub diff1: Option<Row>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntcatBlock {
    pub span: Span,
    pub name: String,
    /// `elem0` row: object-of-objects carrier names.
    pub elem0: Option<Row>,
    /// `elem1` row: object-of-morphisms carrier names.
    pub elem1: Option<Row>,
    /// `d`, `c` rows: images in elem0 of each elem1 entry.
    pub d: Option<Row>,
    pub c: Option<Row>,
    /// `e` row: image in elem1 of each elem0 entry.
    pub e: Option<Row>,
    /// `m u . v = w` rows over composable pairs.
    pub m: Vec<MRule>,
}

/// `m u . v = w`: composite of `u` after `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct MRule {
    pub span: Span,
    pub left: String,
    pub right: String,
    pub result: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PseudocatBlock {
    pub span: Span,
    pub c0: Option<(Span, String)>,
    pub c1: Option<(Span, String)>,
    pub d: Option<(Span, String)>,
    pub c: Option<(Span, String)>,
    pub e: Option<(Span, String)>,
    pub m: Option<(Span, String)>,
    /// `C2 = (P, p1, p2)`: the declared pullback of (d, c).
    pub c2: Option<(Span, [String; 3])>,
    /// `C3 = (Q, q1, q2)`: the declared pullback one stage up.
    pub c3: Option<(Span, [String; 3])>,
    pub alpha: Option<(Span, String)>,
    pub lambda: Option<(Span, String)>,
    pub rho: Option<(Span, String)>,
}

/// `<key> <values...>` row in a derive body.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyRow {
    pub span: Span,
    pub key: String,
    pub values: Vec<String>,
}

/// `derive <builder> <args...>`, optionally with a `{ }` body of keyed
/// rows, invoking a library construction from inside the file.
#[derive(Debug, Clone, PartialEq)]
pub struct DeriveDirective {
    pub span: Span,
    pub builder: String,
    pub args: Vec<String>,
    pub rows: Vec<KeyRow>,
}

impl Default for Span {
    fn default() -> Self {
        Span { line: 0, col: 0 }
    }
}
