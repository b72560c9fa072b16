//! Line-oriented parser for `.sesq` text.
//!
//! Each line is tokenized and matched against the grammar of the block it
//! sits in; a bad line yields one diagnostic and parsing continues on the
//! next, so a single pass collects every syntax problem.  `#` starts a
//! comment; blank lines are ignored; identifiers are `[A-Za-z0-9_]+`.

use crate::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Equals,
    Plus,
    Dot,
    Arrow,
    DArrow,
}

impl<'a> Tok<'a> {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`=>`".into(),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits one line into (column, token) pairs, or reports the first bad
/// character.
fn tokenize(line: &str, line_no: usize) -> Result<Vec<(usize, Tok<'_>)>, Diagnostic> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' => {
                out.push((col, Tok::LBrace));
                chars.next();
            }
            '}' => {
                out.push((col, Tok::RBrace));
                chars.next();
            }
            '(' => {
                out.push((col, Tok::LParen));
                chars.next();
            }
            ')' => {
                out.push((col, Tok::RParen));
                chars.next();
            }
            ',' => {
                out.push((col, Tok::Comma));
                chars.next();
            }
            ':' => {
                out.push((col, Tok::Colon));
                chars.next();
            }
            '+' => {
                out.push((col, Tok::Plus));
                chars.next();
            }
            '.' => {
                out.push((col, Tok::Dot));
                chars.next();
            }
            '=' => {
                chars.next();
                if matches!(chars.peek(), Some(&(_, '>'))) {
                    chars.next();
                    out.push((col, Tok::DArrow));
                } else {
                    out.push((col, Tok::Equals));
                }
            }
            '-' => {
                chars.next();
                if matches!(chars.peek(), Some(&(_, '>'))) {
                    chars.next();
                    out.push((col, Tok::Arrow));
                } else {
                    return Err(Diagnostic::parse(
                        Span::new(line_no, col),
                        "stray `-`; did you mean `->`?",
                    ));
                }
            }
            c if is_ident_char(c) => {
                let start = i;
                let mut end = i + c.len_utf8();
                chars.next();
                while let Some(&(j, d)) = chars.peek() {
                    if is_ident_char(d) {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((col, Tok::Ident(&line[start..end])));
            }
            other => {
                return Err(Diagnostic::parse(
                    Span::new(line_no, col),
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    Ok(out)
}

/// Cursor over one line's tokens with expected-token error messages.
struct Line<'a> {
    toks: &'a [(usize, Tok<'a>)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Line<'a> {
    fn new(toks: &'a [(usize, Tok<'a>)], line: usize, len: usize) -> Self {
        Line {
            toks,
            pos: 0,
            line,
            end_col: len + 1,
        }
    }

    fn here(&self) -> Span {
        match self.toks.get(self.pos) {
            Some(&(col, _)) => Span::new(self.line, col),
            None => Span::new(self.line, self.end_col),
        }
    }

    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|&(_, t)| t)
    }

    fn bump(&mut self) -> Option<Tok<'a>> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> Diagnostic {
        let found = match self.toks.get(self.pos) {
            Some(&(_, t)) => t.describe(),
            None => "end of line".into(),
        };
        Diagnostic::parse(self.here(), format!("expected {expected}, found {found}"))
    }

    fn ident(&mut self, what: &str) -> Result<String, Diagnostic> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s.to_string())
            }
            _ => Err(self.err(what)),
        }
    }

    fn expect(&mut self, t: Tok<'_>, what: &str) -> Result<(), Diagnostic> {
        if self.peek() == Some(t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    fn finish(&self) -> Result<(), Diagnostic> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("end of line"))
        }
    }

    /// Remaining tokens as identifiers; at least one when `required`.
    fn idents_to_end(&mut self, required: bool, what: &str) -> Result<Vec<String>, Diagnostic> {
        let mut out = Vec::new();
        while self.peek().is_some() {
            out.push(self.ident(what)?);
        }
        if required && out.is_empty() {
            return Err(self.err(what));
        }
        Ok(out)
    }
}

enum Ctx {
    Top,
    Category(CategoryBlock),
    Cells(CellsBlock),
    Group(GroupBlock),
    Xmod(XmodBlock),
    Complex(ComplexBlock),
    Intcat(IntcatBlock),
    Pseudocat(PseudocatBlock),
    Derive(DeriveDirective),
}

impl Ctx {
    fn block_kind(&self) -> &'static str {
        match self {
            Ctx::Top => "top level",
            Ctx::Category(_) => "category",
            Ctx::Cells(_) => "cells",
            Ctx::Group(_) => "group",
            Ctx::Xmod(_) => "xmod",
            Ctx::Complex(_) => "complex",
            Ctx::Intcat(_) => "intcat",
            Ctx::Pseudocat(_) => "pseudocat",
            Ctx::Derive(_) => "derive",
        }
    }

    fn close(self, doc: &mut SpecDocument) {
        match self {
            Ctx::Top => {}
            Ctx::Category(b) => doc.blocks.push(Block::Category(b)),
            Ctx::Cells(b) => doc.blocks.push(Block::Cells(b)),
            Ctx::Group(b) => doc.blocks.push(Block::Group(b)),
            Ctx::Xmod(b) => doc.blocks.push(Block::Xmod(b)),
            Ctx::Complex(b) => doc.blocks.push(Block::Complex(b)),
            Ctx::Intcat(b) => doc.blocks.push(Block::Intcat(b)),
            Ctx::Pseudocat(b) => doc.blocks.push(Block::Pseudocat(b)),
            Ctx::Derive(b) => doc.blocks.push(Block::Derive(b)),
        }
    }
}

/// Parses a whole file.  Returns the document, or every diagnostic found.
pub fn parse(text: &str) -> Result<SpecDocument, Vec<Diagnostic>> {
    let mut doc = SpecDocument::default();
    let mut diags = Vec::new();
    let mut ctx = Ctx::Top;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = match tokenize(raw, line_no) {
            Ok(t) => t,
            Err(d) => {
                diags.push(d);
                continue;
            }
        };
        if toks.is_empty() {
            continue;
        }
        let mut line = Line::new(&toks, line_no, raw.chars().count());
        let span = line.here();
        if line.peek() == Some(Tok::RBrace) {
            line.bump();
            if let Err(d) = line.finish() {
                diags.push(d);
                continue;
            }
            if matches!(ctx, Ctx::Top) {
                diags.push(Diagnostic::parse(span, "`}` with no open block"));
            } else {
                std::mem::replace(&mut ctx, Ctx::Top).close(&mut doc);
            }
            continue;
        }
        let result = match &mut ctx {
            Ctx::Top => match top_line(&mut line, span) {
                Ok(TopLine::Open(new_ctx)) => {
                    ctx = new_ctx;
                    Ok(())
                }
                Ok(TopLine::Done(block)) => {
                    doc.blocks.push(block);
                    Ok(())
                }
                Err(d) => Err(d),
            },
            Ctx::Category(b) => category_line(&mut line, span, b),
            Ctx::Cells(b) => cells_line(&mut line, span, b),
            Ctx::Group(b) => group_line(&mut line, span, b),
            Ctx::Xmod(b) => xmod_line(&mut line, span, b),
            Ctx::Complex(b) => complex_line(&mut line, span, b),
            Ctx::Intcat(b) => intcat_line(&mut line, span, b),
            Ctx::Pseudocat(b) => pseudocat_line(&mut line, span, b),
            Ctx::Derive(b) => derive_line(&mut line, span, b),
        };
        if let Err(d) = result {
            diags.push(d);
        }
    }
    if !matches!(ctx, Ctx::Top) {
        let line = text.lines().count();
        diags.push(Diagnostic::parse(
            Span::new(line.max(1), 1),
            format!("unclosed {} block (missing `}}`)", ctx.block_kind()),
        ));
        ctx.close(&mut doc);
    }
    if diags.is_empty() {
        Ok(doc)
    } else {
        Err(diags)
    }
}

enum TopLine {
    Open(Ctx),
    Done(Block),
}

fn top_line(line: &mut Line<'_>, span: Span) -> Result<TopLine, Diagnostic> {
    let keyword = line.ident("a block keyword")?;
    match keyword.as_str() {
        "category" => {
            line.expect(Tok::LBrace, "`{` after `category`")?;
            line.finish()?;
            Ok(TopLine::Open(Ctx::Category(CategoryBlock {
                span,
                decls: Vec::new(),
            })))
        }
        "cells" => {
            line.expect(Tok::LBrace, "`{` after `cells`")?;
            line.finish()?;
            Ok(TopLine::Open(Ctx::Cells(CellsBlock {
                span,
                decls: Vec::new(),
            })))
        }
        "pseudocat" => {
            line.expect(Tok::LBrace, "`{` after `pseudocat`")?;
            line.finish()?;
            Ok(TopLine::Open(Ctx::Pseudocat(PseudocatBlock {
                span,
                ..Default::default()
            })))
        }
        "group" => {
            let name = line.ident("a group name")?;
            line.expect(Tok::LBrace, "`{` after the group name")?;
            line.finish()?;
            Ok(TopLine::Open(Ctx::Group(GroupBlock {
                span,
                name,
                elems: None,
                mul: Vec::new(),
            })))
        }
        "xmod" => {
            let name = line.ident("a crossed-module name")?;
            line.expect(Tok::LBrace, "`{` after the name")?;
            line.finish()?;
            Ok(TopLine::Open(Ctx::Xmod(XmodBlock {
                span,
                name,
                top: None,
                base: None,
                diff: None,
                act: Vec::new(),
            })))
        }
        "complex" => {
            let name = line.ident("a complex name")?;
            line.expect(Tok::LBrace, "`{` after the name")?;
            line.finish()?;
            Ok(TopLine::Open(Ctx::Complex(ComplexBlock {
                span,
                name,
                levels: None,
                diff2: None,
                diff1: None,
            })))
        }
        "intcat" => {
            let name = line.ident("an internal-category name")?;
            line.expect(Tok::LBrace, "`{` after the name")?;
            line.finish()?;
            Ok(TopLine::Open(Ctx::Intcat(IntcatBlock {
                span,
                name,
                elem0: None,
                elem1: None,
                d: None,
                c: None,
                e: None,
                m: Vec::new(),
            })))
        }
        "derive" => {
            let builder = line.ident("a builder name")?;
            let mut args = Vec::new();
            loop {
                match line.peek() {
                    Some(Tok::Ident(s)) => {
                        args.push(s.to_string());
                        line.bump();
                    }
                    Some(Tok::LBrace) => {
                        line.bump();
                        line.finish()?;
                        return Ok(TopLine::Open(Ctx::Derive(DeriveDirective {
                            span,
                            builder,
                            args,
                            rows: Vec::new(),
                        })));
                    }
                    Some(_) => return Err(line.err("a builder argument or `{`")),
                    None => {
                        return Ok(TopLine::Done(Block::Derive(DeriveDirective {
                            span,
                            builder,
                            args,
                            rows: Vec::new(),
                        })))
                    }
                }
            }
        }
        other => Err(Diagnostic::parse(
            span,
            format!(
                "unknown top-level keyword `{other}`; expected category, cells, group, xmod, \
                 complex, intcat, pseudocat, or derive"
            ),
        )),
    }
}

fn category_line(line: &mut Line<'_>, span: Span, b: &mut CategoryBlock) -> Result<(), Diagnostic> {
    let keyword = line.ident("a category declaration")?;
    let decl = match keyword.as_str() {
        "object" => {
            let name = line.ident("an object name")?;
            CatDecl::Object { span, name }
        }
        "morphism" => {
            let name = line.ident("a morphism name")?;
            line.expect(Tok::Colon, "`:` after the morphism name")?;
            let dom = line.ident("the domain object")?;
            line.expect(Tok::Arrow, "`->` between domain and codomain")?;
            let cod = line.ident("the codomain object")?;
            CatDecl::Morphism {
                span,
                name,
                dom,
                cod,
            }
        }
        "id" => {
            let object = line.ident("an object name")?;
            line.expect(Tok::Equals, "`=` after the object name")?;
            let name = line.ident("the identity morphism's name")?;
            CatDecl::Identity { span, object, name }
        }
        "compose" => {
            let g = line.ident("the outer morphism")?;
            line.expect(Tok::Dot, "`.` between the morphisms")?;
            let f = line.ident("the inner morphism")?;
            line.expect(Tok::Equals, "`=` before the composite")?;
            let result = line.ident("the composite's name")?;
            CatDecl::Compose { span, g, f, result }
        }
        other => {
            return Err(Diagnostic::parse(
                span,
                format!("unknown declaration `{other}` in a category block"),
            ))
        }
    };
    line.finish()?;
    b.decls.push(decl);
    Ok(())
}

fn cells_line(line: &mut Line<'_>, span: Span, b: &mut CellsBlock) -> Result<(), Diagnostic> {
    let keyword = line.ident("a cells declaration")?;
    let decl = match keyword.as_str() {
        "cell" => {
            let name = line.ident("a cell name")?;
            line.expect(Tok::Colon, "`:` after the cell name")?;
            let dom = line.ident("the domain morphism")?;
            line.expect(Tok::DArrow, "`=>` between the boundary morphisms")?;
            let cod = line.ident("the codomain morphism")?;
            CellDecl::Cell {
                span,
                name,
                dom,
                cod,
            }
        }
        "zero" => {
            let morphism = line.ident("a morphism name")?;
            line.expect(Tok::Equals, "`=` after the morphism")?;
            let name = line.ident("the zero cell's name")?;
            CellDecl::Zero {
                span,
                morphism,
                name,
            }
        }
        "plus" => {
            let left = line.ident("the upper cell")?;
            line.expect(Tok::Plus, "`+` between the cells")?;
            let right = line.ident("the lower cell")?;
            line.expect(Tok::Equals, "`=` before the sum")?;
            let result = line.ident("the sum's name")?;
            CellDecl::Plus {
                span,
                left,
                right,
                result,
            }
        }
        "lwhisk" => {
            let morphism = line.ident("the whiskering morphism")?;
            line.expect(Tok::Dot, "`.` between morphism and cell")?;
            let cell = line.ident("the cell")?;
            line.expect(Tok::Equals, "`=` before the result")?;
            let result = line.ident("the result's name")?;
            CellDecl::Lwhisk {
                span,
                morphism,
                cell,
                result,
            }
        }
        "rwhisk" => {
            let cell = line.ident("the cell")?;
            line.expect(Tok::Dot, "`.` between cell and morphism")?;
            let morphism = line.ident("the whiskering morphism")?;
            line.expect(Tok::Equals, "`=` before the result")?;
            let result = line.ident("the result's name")?;
            CellDecl::Rwhisk {
                span,
                cell,
                morphism,
                result,
            }
        }
        other => {
            return Err(Diagnostic::parse(
                span,
                format!("unknown declaration `{other}` in a cells block"),
            ))
        }
    };
    line.finish()?;
    b.decls.push(decl);
    Ok(())
}

fn set_once<T>(slot: &mut Option<T>, value: T, span: Span, what: &str) -> Result<(), Diagnostic> {
    if slot.is_some() {
        return Err(Diagnostic::parse(span, format!("duplicate {what}")));
    }
    *slot = Some(value);
    Ok(())
}

fn group_line(line: &mut Line<'_>, span: Span, b: &mut GroupBlock) -> Result<(), Diagnostic> {
    let keyword = line.ident("`elem` or `mul`")?;
    match keyword.as_str() {
        "elem" => {
            let items = line.idents_to_end(true, "an element name")?;
            set_once(&mut b.elems, Row { span, items }, span, "`elem` row")
        }
        "mul" => {
            let items = line.idents_to_end(true, "an element name")?;
            b.mul.push(Row { span, items });
            Ok(())
        }
        other => Err(Diagnostic::parse(
            span,
            format!("unknown declaration `{other}` in a group block"),
        )),
    }
}

fn xmod_line(line: &mut Line<'_>, span: Span, b: &mut XmodBlock) -> Result<(), Diagnostic> {
    let keyword = line.ident("`x`, `b`, `diff`, or `act`")?;
    match keyword.as_str() {
        "x" => {
            let name = line.ident("a group name")?;
            line.finish()?;
            set_once(&mut b.top, (span, name), span, "`x` row")
        }
        "b" => {
            let name = line.ident("a group name")?;
            line.finish()?;
            set_once(&mut b.base, (span, name), span, "`b` row")
        }
        "diff" => {
            let items = line.idents_to_end(true, "an element name")?;
            set_once(&mut b.diff, Row { span, items }, span, "`diff` row")
        }
        "act" => {
            let items = line.idents_to_end(true, "an element name")?;
            b.act.push(Row { span, items });
            Ok(())
        }
        other => Err(Diagnostic::parse(
            span,
            format!("unknown declaration `{other}` in an xmod block"),
        )),
    }
}

fn complex_line(line: &mut Line<'_>, span: Span, b: &mut ComplexBlock) -> Result<(), Diagnostic> {
    let keyword = line.ident("`level`, `diff2`, or `diff1`")?;
    match keyword.as_str() {
        "level" => {
            let items = line.idents_to_end(true, "a group name")?;
            set_once(&mut b.levels, Row { span, items }, span, "`level` row")
        }
        "diff2" => {
            let items = line.idents_to_end(false, "an element name")?;
            set_once(&mut b.diff2, Row { span, items }, span, "`diff2` row")
        }
        "diff1" => {
            let items = line.idents_to_end(false, "an element name")?;
            set_once(&mut b.diff1, Row { span, items }, span, "`diff1` row")
        }
        other => Err(Diagnostic::parse(
            span,
            format!("unknown declaration `{other}` in a complex block"),
        )),
    }
}

fn intcat_line(line: &mut Line<'_>, span: Span, b: &mut IntcatBlock) -> Result<(), Diagnostic> {
    let keyword = line.ident("`elem0`, `elem1`, `d`, `c`, `e`, or `m`")?;
    match keyword.as_str() {
        "elem0" => {
            let items = line.idents_to_end(true, "an element name")?;
            set_once(&mut b.elem0, Row { span, items }, span, "`elem0` row")
        }
        "elem1" => {
            let items = line.idents_to_end(true, "an element name")?;
            set_once(&mut b.elem1, Row { span, items }, span, "`elem1` row")
        }
        "d" => {
            let items = line.idents_to_end(true, "an element name")?;
            set_once(&mut b.d, Row { span, items }, span, "`d` row")
        }
        "c" => {
            let items = line.idents_to_end(true, "an element name")?;
            set_once(&mut b.c, Row { span, items }, span, "`c` row")
        }
        "e" => {
            let items = line.idents_to_end(true, "an element name")?;
            set_once(&mut b.e, Row { span, items }, span, "`e` row")
        }
        "m" => {
            let left = line.ident("the outer element")?;
            line.expect(Tok::Dot, "`.` between the elements")?;
            let right = line.ident("the inner element")?;
            line.expect(Tok::Equals, "`=` before the composite")?;
            let result = line.ident("the composite")?;
            line.finish()?;
            b.m.push(MRule {
                span,
                left,
                right,
                result,
            });
            Ok(())
        }
        other => Err(Diagnostic::parse(
            span,
            format!("unknown declaration `{other}` in an intcat block"),
        )),
    }
}

fn pseudocat_line(line: &mut Line<'_>, span: Span, b: &mut PseudocatBlock) -> Result<(), Diagnostic> {
    let keyword = line.ident("a pseudocat entry")?;
    line.expect(Tok::Equals, "`=` after the entry name")?;
    let simple = |line: &mut Line<'_>| -> Result<(Span, String), Diagnostic> {
        let v = line.ident("a name")?;
        line.finish()?;
        Ok((span, v))
    };
    let triple = |line: &mut Line<'_>| -> Result<(Span, [String; 3]), Diagnostic> {
        line.expect(Tok::LParen, "`(`")?;
        let a = line.ident("the apex object")?;
        line.expect(Tok::Comma, "`,`")?;
        let p1 = line.ident("the first projection")?;
        line.expect(Tok::Comma, "`,`")?;
        let p2 = line.ident("the second projection")?;
        line.expect(Tok::RParen, "`)`")?;
        line.finish()?;
        Ok((span, [a, p1, p2]))
    };
    match keyword.as_str() {
        "C0" => set_once(&mut b.c0, simple(line)?, span, "`C0` entry"),
        "C1" => set_once(&mut b.c1, simple(line)?, span, "`C1` entry"),
        "d" => set_once(&mut b.d, simple(line)?, span, "`d` entry"),
        "c" => set_once(&mut b.c, simple(line)?, span, "`c` entry"),
        "e" => set_once(&mut b.e, simple(line)?, span, "`e` entry"),
        "m" => set_once(&mut b.m, simple(line)?, span, "`m` entry"),
        "C2" => set_once(&mut b.c2, triple(line)?, span, "`C2` entry"),
        "C3" => set_once(&mut b.c3, triple(line)?, span, "`C3` entry"),
        "alpha" => set_once(&mut b.alpha, simple(line)?, span, "`alpha` entry"),
        "lambda" => set_once(&mut b.lambda, simple(line)?, span, "`lambda` entry"),
        "rho" => set_once(&mut b.rho, simple(line)?, span, "`rho` entry"),
        other => Err(Diagnostic::parse(
            span,
            format!("unknown pseudocat entry `{other}`"),
        )),
    }
}

fn derive_line(line: &mut Line<'_>, span: Span, b: &mut DeriveDirective) -> Result<(), Diagnostic> {
    let key = line.ident("a data row keyword")?;
    let values = line.idents_to_end(false, "a name")?;
    b.rows.push(KeyRow { span, key, values });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_category_block_parses() {
        let doc = parse("category {\n}\n").unwrap();
        assert_eq!(doc.blocks.len(), 1);
        match &doc.blocks[0] {
            Block::Category(b) => assert!(b.decls.is_empty()),
            other => panic!("unexpected block {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let doc = parse("# header\n\ncategory { # trailing\n  object A\n}\n").unwrap();
        match &doc.blocks[0] {
            Block::Category(b) => assert_eq!(b.decls.len(), 1),
            other => panic!("unexpected block {other:?}"),
        }
    }

    #[test]
    fn diagnostics_carry_positions_and_parsing_continues() {
        let err = parse("category {\n  object\n  morphism f A -> B\n}\n").unwrap_err();
        assert_eq!(err.len(), 2);
        assert_eq!((err[0].span.line, err[0].span.col), (2, 9));
        assert!(err[0].message.contains("expected an object name"));
        assert_eq!(err[1].span.line, 3);
        assert!(err[1].message.contains("`:`"));
    }

    #[test]
    fn unclosed_block_is_reported() {
        let err = parse("group g {\n  elem 0\n").unwrap_err();
        assert!(err[0].message.contains("unclosed group block"), "{err:?}");
    }

    #[test]
    fn stray_close_is_reported() {
        let err = parse("}\n").unwrap_err();
        assert!(err[0].message.contains("no open block"));
    }

    #[test]
    fn derive_takes_inline_args_or_a_body() {
        let doc = parse("derive conjugation z3\nderive additive {\n  a f\n}\n").unwrap();
        assert_eq!(doc.blocks.len(), 2);
        match (&doc.blocks[0], &doc.blocks[1]) {
            (Block::Derive(one), Block::Derive(two)) => {
                assert_eq!(one.args, vec!["z3"]);
                assert!(one.rows.is_empty());
                assert_eq!(two.rows.len(), 1);
                assert_eq!(two.rows[0].key, "a");
            }
            other => panic!("unexpected blocks {other:?}"),
        }
    }

    #[test]
    fn pseudocat_entries_parse_in_any_order() {
        let src = "pseudocat {\n  alpha = a\n  C2 = (P, p1, p2)\n  C0 = X\n}\n";
        let doc = parse(src).unwrap();
        match &doc.blocks[0] {
            Block::Pseudocat(b) => {
                assert_eq!(b.alpha.as_ref().unwrap().1, "a");
                assert_eq!(b.c2.as_ref().unwrap().1[2], "p2");
                assert!(b.c1.is_none());
            }
            other => panic!("unexpected block {other:?}"),
        }
    }

    #[test]
    fn duplicate_rows_are_rejected() {
        let err = parse("group g {\n  elem 0\n  elem 1\n}\n").unwrap_err();
        assert!(err[0].message.contains("duplicate `elem` row"));
    }

    #[test]
    fn arbitrary_bytes_never_panic() {
        let junk = "\u{0}\u{1}weird { ] ) move \u{7f}\nid = =\n}}}}\n-\n--\n";
        let _ = parse(junk);
    }
}
