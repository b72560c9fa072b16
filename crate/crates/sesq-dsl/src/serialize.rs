//! Canonical text form.
//!
//! Serialization is deterministic: blocks are ordered by kind and then
//! name, declaration lists inside `category`, `cells`, and `intcat`
//! blocks are sorted, table rows keep their positional order, lines are
//! LF-terminated, and indentation is two spaces.  Composites forced by an
//! identity (`id . f = f`, `f . id = f`) are left implicit, since
//! elaboration restores them.  Serializing a parse of canonical text
//! reproduces it byte for byte.

use std::collections::HashSet;
use std::fmt::Write;

use crate::ast::*;

pub fn serialize(doc: &SpecDocument) -> String {
    let mut blocks: Vec<&Block> = doc.blocks.iter().collect();
    blocks.sort_by_key(|b| sort_key(b));
    let mut out = String::new();
    for (i, b) in blocks.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write_block(&mut out, b);
    }
    out
}

/// Kind rank, then name, then (for derive) the argument list.
fn sort_key(b: &Block) -> (u8, String, String) {
    match b {
        Block::Group(g) => (0, g.name.clone(), String::new()),
        Block::Complex(c) => (1, c.name.clone(), String::new()),
        Block::Xmod(x) => (2, x.name.clone(), String::new()),
        Block::Intcat(i) => (3, i.name.clone(), String::new()),
        Block::Category(_) => (4, String::new(), String::new()),
        Block::Cells(_) => (5, String::new(), String::new()),
        Block::Pseudocat(_) => (6, String::new(), String::new()),
        Block::Derive(d) => (7, d.builder.clone(), d.args.join(" ")),
    }
}

fn write_block(out: &mut String, b: &Block) {
    match b {
        Block::Group(g) => {
            let _ = writeln!(out, "group {} {{", g.name);
            if let Some(elems) = &g.elems {
                row(out, "elem", &elems.items);
            }
            for r in &g.mul {
                row(out, "mul", &r.items);
            }
            out.push_str("}\n");
        }
        Block::Complex(c) => {
            let _ = writeln!(out, "complex {} {{", c.name);
            if let Some(r) = &c.levels {
                row(out, "level", &r.items);
            }
            if let Some(r) = &c.diff2 {
                row(out, "diff2", &r.items);
            }
            if let Some(r) = &c.diff1 {
                row(out, "diff1", &r.items);
            }
            out.push_str("}\n");
        }
        Block::Xmod(x) => {
            let _ = writeln!(out, "xmod {} {{", x.name);
            if let Some((_, name)) = &x.top {
                let _ = writeln!(out, "  x {name}");
            }
            if let Some((_, name)) = &x.base {
                let _ = writeln!(out, "  b {name}");
            }
            if let Some(r) = &x.diff {
                row(out, "diff", &r.items);
            }
            for r in &x.act {
                row(out, "act", &r.items);
            }
            out.push_str("}\n");
        }
        Block::Intcat(i) => {
            let _ = writeln!(out, "intcat {} {{", i.name);
            for (key, r) in [
                ("elem0", &i.elem0),
                ("elem1", &i.elem1),
                ("d", &i.d),
                ("c", &i.c),
                ("e", &i.e),
            ] {
                if let Some(r) = r {
                    row(out, key, &r.items);
                }
            }
            let mut rules: Vec<&MRule> = i.m.iter().collect();
            rules.sort_by(|a, b| (&a.left, &a.right).cmp(&(&b.left, &b.right)));
            for r in rules {
                let _ = writeln!(out, "  m {} . {} = {}", r.left, r.right, r.result);
            }
            out.push_str("}\n");
        }
        Block::Category(c) => write_category(out, c),
        Block::Cells(c) => write_cells(out, c),
        Block::Pseudocat(p) => write_pseudocat(out, p),
        Block::Derive(d) => write_derive(out, d),
    }
}

fn row(out: &mut String, key: &str, items: &[String]) {
    let _ = writeln!(out, "  {key} {}", items.join(" "));
}

fn write_category(out: &mut String, c: &CategoryBlock) {
    out.push_str("category {\n");
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut ids = Vec::new();
    let mut composes = Vec::new();
    let mut id_names: HashSet<&str> = HashSet::new();
    for d in &c.decls {
        match d {
            CatDecl::Object { name, .. } => objects.push(name),
            CatDecl::Morphism {
                name, dom, cod, ..
            } => morphisms.push((name, dom, cod)),
            CatDecl::Identity { object, name, .. } => {
                id_names.insert(name);
                ids.push((object, name));
            }
            CatDecl::Compose { g, f, result, .. } => composes.push((g, f, result)),
        }
    }
    objects.sort();
    morphisms.sort();
    ids.sort();
    // Composites determined by an identity are implicit in canonical form.
    composes.retain(|(g, f, h)| {
        !(id_names.contains(g.as_str()) && h == f) && !(id_names.contains(f.as_str()) && h == g)
    });
    composes.sort();
    for name in objects {
        let _ = writeln!(out, "  object {name}");
    }
    for (name, dom, cod) in morphisms {
        let _ = writeln!(out, "  morphism {name} : {dom} -> {cod}");
    }
    for (object, name) in ids {
        let _ = writeln!(out, "  id {object} = {name}");
    }
    for (g, f, h) in composes {
        let _ = writeln!(out, "  compose {g} . {f} = {h}");
    }
    out.push_str("}\n");
}

fn write_cells(out: &mut String, c: &CellsBlock) {
    out.push_str("cells {\n");
    let mut cells = Vec::new();
    let mut zeros = Vec::new();
    let mut sums = Vec::new();
    let mut lw = Vec::new();
    let mut rw = Vec::new();
    for d in &c.decls {
        match d {
            CellDecl::Cell {
                name, dom, cod, ..
            } => cells.push((name, dom, cod)),
            CellDecl::Zero {
                morphism, name, ..
            } => zeros.push((morphism, name)),
            CellDecl::Plus {
                left,
                right,
                result,
                ..
            } => sums.push((left, right, result)),
            CellDecl::Lwhisk {
                morphism,
                cell,
                result,
                ..
            } => lw.push((morphism, cell, result)),
            CellDecl::Rwhisk {
                cell,
                morphism,
                result,
                ..
            } => rw.push((cell, morphism, result)),
        }
    }
    cells.sort();
    zeros.sort();
    sums.sort();
    lw.sort();
    rw.sort();
    for (name, dom, cod) in cells {
        let _ = writeln!(out, "  cell {name} : {dom} => {cod}");
    }
    for (morphism, name) in zeros {
        let _ = writeln!(out, "  zero {morphism} = {name}");
    }
    for (left, right, result) in sums {
        let _ = writeln!(out, "  plus {left} + {right} = {result}");
    }
    for (morphism, cell, result) in lw {
        let _ = writeln!(out, "  lwhisk {morphism} . {cell} = {result}");
    }
    for (cell, morphism, result) in rw {
        let _ = writeln!(out, "  rwhisk {cell} . {morphism} = {result}");
    }
    out.push_str("}\n");
}

fn write_pseudocat(out: &mut String, p: &PseudocatBlock) {
    out.push_str("pseudocat {\n");
    for (key, slot) in [
        ("C0", &p.c0),
        ("C1", &p.c1),
        ("d", &p.d),
        ("c", &p.c),
        ("e", &p.e),
        ("m", &p.m),
    ] {
        if let Some((_, v)) = slot {
            let _ = writeln!(out, "  {key} = {v}");
        }
    }
    for (key, slot) in [("C2", &p.c2), ("C3", &p.c3)] {
        if let Some((_, [a, p1, p2])) = slot {
            let _ = writeln!(out, "  {key} = ({a}, {p1}, {p2})");
        }
    }
    for (key, slot) in [("alpha", &p.alpha), ("lambda", &p.lambda), ("rho", &p.rho)] {
        if let Some((_, v)) = slot {
            let _ = writeln!(out, "  {key} = {v}");
        }
    }
    out.push_str("}\n");
}

const DERIVE_ROW_ORDER: [&str; 11] = [
    "a", "b", "bd0", "bd1", "bd2", "lam1", "lam2", "rho1", "rho2", "eta1", "eta2",
];

fn write_derive(out: &mut String, d: &DeriveDirective) {
    out.push_str("derive ");
    out.push_str(&d.builder);
    for a in &d.args {
        out.push(' ');
        out.push_str(a);
    }
    if d.rows.is_empty() {
        out.push('\n');
        return;
    }
    out.push_str(" {\n");
    let mut rows: Vec<&KeyRow> = d.rows.iter().collect();
    let rank = |k: &str| {
        DERIVE_ROW_ORDER
            .iter()
            .position(|&c| c == k)
            .unwrap_or(DERIVE_ROW_ORDER.len())
    };
    rows.sort_by_key(|r| rank(&r.key));
    for r in rows {
        if r.values.is_empty() {
            let _ = writeln!(out, "  {}", r.key);
        } else {
            row(out, &r.key, &r.values);
        }
    }
    out.push_str("}\n");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn serialization_is_idempotent_and_sorted() {
        let src = "cells {\n  cell b : g => g\n  cell a : f => f\n}\ncategory {\n  object B\n  object A\n  morphism g : A -> B\n  morphism f : A -> B\n}\n";
        let one = serialize(&parse(src).unwrap());
        let two = serialize(&parse(&one).unwrap());
        assert_eq!(one, two);
        let cat = one.find("category").unwrap();
        let cells = one.find("cells").unwrap();
        assert!(cat < cells);
        assert!(one.find("object A").unwrap() < one.find("object B").unwrap());
        assert!(one.find("cell a").unwrap() < one.find("cell b").unwrap());
    }

    #[test]
    fn identity_composites_stay_implicit() {
        let src = "category {\n  object A\n  id A = i\n  morphism f : A -> A\n  compose i . f = f\n  compose f . f = i\n}\n";
        let out = serialize(&parse(src).unwrap());
        assert!(!out.contains("compose i . f"));
        assert!(out.contains("compose f . f = i"));
    }

    #[test]
    fn derive_rows_take_canonical_order() {
        let src = "derive additive_pseudocat {\n  b cb\n  a ca\n  lam1 x\n  bd0 y\n}\n";
        let out = serialize(&parse(src).unwrap());
        let pos = |s: &str| out.find(s).unwrap();
        assert!(pos("  a ca") < pos("  b cb"));
        assert!(pos("  b cb") < pos("  bd0 y"));
        assert!(pos("  bd0 y") < pos("  lam1 x"));
    }
}
