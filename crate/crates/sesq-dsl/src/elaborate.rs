//! Resolves a parsed document into `sesq-core` values.
//!
//! Elaboration is name resolution plus the typing needed to fill tables;
//! it does not run the axiom validators, so a resolved model may still
//! fail `validate_category` or `validate_structure`.  Anything that
//! cannot be resolved (unknown ids, duplicates, rows of the wrong length,
//! operations on mismatched boundaries) is reported with its span, and
//! all problems in a document are collected in one pass.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use sesq_core::algebra::{ComplexCarrier, GroupTable, IntCatCarrier, XModPresentation};
use sesq_core::cellstruct::{TableCells, TwoCellStructure};
use sesq_core::constructions;
use sesq_core::fincat::{FiniteCategory, MorId, ObjId, TableCatBuilder};
use sesq_core::pseudocat::additive::{build_additive_pseudocategory, HomotopyData};
use sesq_core::pseudocat::group::build_group_pseudocategory;
use sesq_core::pseudocat::{induced_maps, Association, PseudocategoryData};

use crate::ast::*;

/// Everything a document can define.  `cat`, `structure`, and `pseudo`
/// are single slots: a document may define at most one of each, whether
/// through explicit blocks or through `derive`.
#[derive(Debug, Default)]
pub struct Model {
    pub groups: BTreeMap<String, GroupTable>,
    pub complexes: BTreeMap<String, ComplexCarrier>,
    pub xmods: BTreeMap<String, XModPresentation>,
    pub intcats: BTreeMap<String, IntCatCarrier>,
    pub cat: Option<Arc<FiniteCategory>>,
    pub structure: Option<TwoCellStructure>,
    pub pseudo: Option<PseudocategoryData>,
}

/// Resolves `doc` bottom-up: algebraic presentations first, then the
/// category, its cells, `derive` directives in document order, and the
/// pseudocat block last.  Returns every diagnostic when anything fails.
pub fn elaborate(doc: &SpecDocument) -> Result<Model, Vec<Diagnostic>> {
    let mut e = Elab::default();
    for b in &doc.blocks {
        if let Block::Group(g) = b {
            e.group(g);
        }
    }
    for b in &doc.blocks {
        if let Block::Complex(c) = b {
            e.complex(c);
        }
    }
    for b in &doc.blocks {
        if let Block::Xmod(x) = b {
            e.xmod(x);
        }
    }
    for b in &doc.blocks {
        if let Block::Intcat(i) = b {
            e.intcat(i);
        }
    }
    for b in &doc.blocks {
        if let Block::Category(c) = b {
            e.category(c);
        }
    }
    for b in &doc.blocks {
        if let Block::Cells(c) = b {
            e.cells(c);
        }
    }
    for b in &doc.blocks {
        if let Block::Derive(d) = b {
            e.derive(d);
        }
    }
    for b in &doc.blocks {
        if let Block::Pseudocat(p) = b {
            e.pseudocat(p);
        }
    }
    if e.diags.is_empty() {
        Ok(e.model)
    } else {
        e.diags.sort_by_key(|d| (d.span.line, d.span.col));
        Err(e.diags)
    }
}

#[derive(Default)]
struct Elab {
    model: Model,
    diags: Vec<Diagnostic>,
    // Set when a block of that kind was seen, even if it failed; used
    // both for duplicate detection and to suppress cascade errors.
    saw_category: bool,
    saw_cells: bool,
}

/// Positions of `row.items` in `names`, after checking the length.
fn row_indices(
    diags: &mut Vec<Diagnostic>,
    row: &Row,
    names: &[String],
    expected: usize,
    what: &str,
) -> Option<Vec<usize>> {
    if row.items.len() != expected {
        diags.push(Diagnostic::resolve(
            row.span,
            format!("expected {expected} entries, found {}", row.items.len()),
        ));
        return None;
    }
    let mut out = Vec::with_capacity(expected);
    for item in &row.items {
        match names.iter().position(|n| n == item) {
            Some(i) => out.push(i),
            None => {
                diags.push(Diagnostic::resolve(
                    row.span,
                    format!("unknown {what} `{item}`"),
                ));
                return None;
            }
        }
    }
    Some(out)
}

fn check_distinct(diags: &mut Vec<Diagnostic>, span: Span, items: &[String], what: &str) -> bool {
    for (i, a) in items.iter().enumerate() {
        if items[..i].contains(a) {
            diags.push(Diagnostic::resolve(span, format!("duplicate {what} `{a}`")));
            return false;
        }
    }
    true
}

impl Elab {
    fn err(&mut self, span: Span, msg: impl Into<String>) {
        self.diags.push(Diagnostic::resolve(span, msg.into()));
    }

    fn group(&mut self, b: &GroupBlock) {
        if self.model.groups.contains_key(&b.name) {
            return self.err(b.span, format!("duplicate group `{}`", b.name));
        }
        let Some(elems) = &b.elems else {
            return self.err(b.span, format!("group `{}` needs an `elem` row", b.name));
        };
        if !check_distinct(&mut self.diags, elems.span, &elems.items, "element") {
            return;
        }
        let n = elems.items.len();
        if b.mul.len() != n {
            return self.err(
                b.span,
                format!(
                    "group `{}` needs {n} `mul` rows, one per element in `elem` order; found {}",
                    b.name,
                    b.mul.len()
                ),
            );
        }
        let mut mul = Vec::with_capacity(n);
        for row in &b.mul {
            match row_indices(&mut self.diags, row, &elems.items, n, "element") {
                Some(r) => mul.push(r),
                None => return,
            }
        }
        match GroupTable::new(mul, elems.items.clone()) {
            Ok(g) => {
                self.model.groups.insert(b.name.clone(), g);
            }
            Err(e) => self.err(b.span, format!("group `{}`: {e}", b.name)),
        }
    }

    fn complex(&mut self, b: &ComplexBlock) {
        if self.model.complexes.contains_key(&b.name) {
            return self.err(b.span, format!("duplicate complex `{}`", b.name));
        }
        let Some(levels) = &b.levels else {
            return self.err(
                b.span,
                format!("complex `{}` needs a `level` row with three groups", b.name),
            );
        };
        if levels.items.len() != 3 {
            return self.err(
                levels.span,
                format!("`level` takes three groups, found {}", levels.items.len()),
            );
        }
        let mut level = Vec::with_capacity(3);
        for name in &levels.items {
            match self.model.groups.get(name) {
                Some(g) => level.push(g.clone()),
                None => return self.err(levels.span, format!("unknown group `{name}`")),
            }
        }
        let level: [GroupTable; 3] = level.try_into().unwrap();
        let Some(diff2) = &b.diff2 else {
            return self.err(b.span, format!("complex `{}` needs a `diff2` row", b.name));
        };
        let Some(diff1) = &b.diff1 else {
            return self.err(b.span, format!("complex `{}` needs a `diff1` row", b.name));
        };
        let Some(d2) = row_indices(
            &mut self.diags,
            diff2,
            &level[1].names,
            level[2].n,
            "element",
        ) else {
            return;
        };
        let Some(d1) = row_indices(
            &mut self.diags,
            diff1,
            &level[0].names,
            level[1].n,
            "element",
        ) else {
            return;
        };
        match ComplexCarrier::new(level, d2, d1) {
            Ok(c) => {
                self.model.complexes.insert(b.name.clone(), c);
            }
            Err(e) => self.err(b.span, format!("complex `{}`: {e}", b.name)),
        }
    }

    fn xmod(&mut self, b: &XmodBlock) {
        if self.model.xmods.contains_key(&b.name) {
            return self.err(b.span, format!("duplicate xmod `{}`", b.name));
        }
        let mut group = |slot: &Option<(Span, String)>, key: &str| match slot {
            Some((span, name)) => match self.model.groups.get(name) {
                Some(g) => Some(g.clone()),
                None => {
                    self.diags
                        .push(Diagnostic::resolve(*span, format!("unknown group `{name}`")));
                    None
                }
            },
            None => {
                self.diags.push(Diagnostic::resolve(
                    b.span,
                    format!("xmod `{}` needs an `{key}` row", b.name),
                ));
                None
            }
        };
        let top = group(&b.top, "x");
        let base = group(&b.base, "b");
        let (Some(top), Some(base)) = (top, base) else {
            return;
        };
        let Some(diff) = &b.diff else {
            return self.err(b.span, format!("xmod `{}` needs a `diff` row", b.name));
        };
        let Some(d) = row_indices(&mut self.diags, diff, &base.names, top.n, "element") else {
            return;
        };
        if b.act.len() != base.n {
            return self.err(
                b.span,
                format!(
                    "xmod `{}` needs {} `act` rows, one per base element; found {}",
                    b.name,
                    base.n,
                    b.act.len()
                ),
            );
        }
        let mut act = Vec::with_capacity(base.n);
        for row in &b.act {
            match row_indices(&mut self.diags, row, &top.names, top.n, "element") {
                Some(r) => act.push(r),
                None => return,
            }
        }
        match XModPresentation::new(top, base, d, act) {
            Ok(x) => {
                self.model.xmods.insert(b.name.clone(), x);
            }
            Err(e) => self.err(b.span, format!("xmod `{}`: {e}", b.name)),
        }
    }

    fn intcat(&mut self, b: &IntcatBlock) {
        if self.model.intcats.contains_key(&b.name) {
            return self.err(b.span, format!("duplicate intcat `{}`", b.name));
        }
        let required = |slot: &Option<Row>, key: &str, diags: &mut Vec<Diagnostic>| match slot {
            Some(r) => Some(r.clone()),
            None => {
                diags.push(Diagnostic::resolve(
                    b.span,
                    format!("intcat `{}` needs an `{key}` row", b.name),
                ));
                None
            }
        };
        let elem0 = required(&b.elem0, "elem0", &mut self.diags);
        let elem1 = required(&b.elem1, "elem1", &mut self.diags);
        let (Some(elem0), Some(elem1)) = (elem0, elem1) else {
            return;
        };
        if !check_distinct(&mut self.diags, elem0.span, &elem0.items, "element")
            || !check_distinct(&mut self.diags, elem1.span, &elem1.items, "element")
        {
            return;
        }
        let (c0, c1) = (elem0.items.len(), elem1.items.len());
        let d = required(&b.d, "d", &mut self.diags);
        let c = required(&b.c, "c", &mut self.diags);
        let e = required(&b.e, "e", &mut self.diags);
        let (Some(d), Some(c), Some(e)) = (d, c, e) else {
            return;
        };
        let d = row_indices(&mut self.diags, &d, &elem0.items, c1, "element");
        let c = row_indices(&mut self.diags, &c, &elem0.items, c1, "element");
        let e = row_indices(&mut self.diags, &e, &elem1.items, c0, "element");
        let (Some(d), Some(c), Some(e)) = (d, c, e) else {
            return;
        };
        let mut m = BTreeMap::new();
        for rule in &b.m {
            let resolve = |x: &str, diags: &mut Vec<Diagnostic>| {
                let i = elem1.items.iter().position(|n| n == x);
                if i.is_none() {
                    diags.push(Diagnostic::resolve(
                        rule.span,
                        format!("unknown element `{x}`"),
                    ));
                }
                i
            };
            let u = resolve(&rule.left, &mut self.diags);
            let v = resolve(&rule.right, &mut self.diags);
            let w = resolve(&rule.result, &mut self.diags);
            let (Some(u), Some(v), Some(w)) = (u, v, w) else {
                return;
            };
            if m.insert((u, v), w).is_some() {
                return self.err(
                    rule.span,
                    format!("duplicate composite `{} . {}`", rule.left, rule.right),
                );
            }
        }
        match IntCatCarrier::new(c0, c1, d, c, e, m, elem0.items, elem1.items) {
            Ok(ic) => {
                self.model.intcats.insert(b.name.clone(), ic);
            }
            Err(e) => self.err(b.span, format!("intcat `{}`: {e}", b.name)),
        }
    }

    fn category(&mut self, b: &CategoryBlock) {
        if self.saw_category {
            return self.err(b.span, "a category block is already present");
        }
        self.saw_category = true;
        let before = self.diags.len();
        let mut builder = TableCatBuilder::new();
        let mut objs: HashMap<&str, ObjId> = HashMap::new();
        let mut mors: HashMap<&str, MorId> = HashMap::new();
        for decl in &b.decls {
            if let CatDecl::Object { span, name } = decl {
                if objs.contains_key(name.as_str()) {
                    self.err(*span, format!("duplicate object `{name}`"));
                } else {
                    objs.insert(name, builder.object(name));
                }
            }
        }
        for decl in &b.decls {
            let (span, name, dom, cod, id_of) = match decl {
                CatDecl::Morphism {
                    span,
                    name,
                    dom,
                    cod,
                } => (*span, name, dom, cod, None),
                CatDecl::Identity { span, object, name } => (*span, name, object, object, Some(object)),
                _ => continue,
            };
            if mors.contains_key(name.as_str()) {
                self.err(span, format!("duplicate morphism `{name}`"));
                continue;
            }
            let (Some(&dm), Some(&cm)) = (objs.get(dom.as_str()), objs.get(cod.as_str())) else {
                let missing = if objs.contains_key(dom.as_str()) { cod } else { dom };
                self.err(span, format!("unknown object `{missing}`"));
                continue;
            };
            let m = builder.morphism(name, dm, cm);
            mors.insert(name, m);
            if id_of.is_some() {
                builder.mark_identity(dm, m);
            }
        }
        let mut seen: HashMap<(MorId, MorId), ()> = HashMap::new();
        for decl in &b.decls {
            if let CatDecl::Compose { span, g, f, result } = decl {
                let mor = |x: &String, diags: &mut Vec<Diagnostic>| {
                    let m = mors.get(x.as_str()).copied();
                    if m.is_none() {
                        diags.push(Diagnostic::resolve(*span, format!("unknown morphism `{x}`")));
                    }
                    m
                };
                let g = mor(g, &mut self.diags);
                let f = mor(f, &mut self.diags);
                let h = mor(result, &mut self.diags);
                let (Some(g), Some(f), Some(h)) = (g, f, h) else {
                    continue;
                };
                if seen.insert((g, f), ()).is_some() {
                    self.err(*span, "duplicate composition rule for this pair");
                    continue;
                }
                builder.compose_rule(g, f, h);
            }
        }
        if self.diags.len() == before {
            self.model.cat = Some(Arc::new(builder.build()));
        }
    }

    fn cells(&mut self, b: &CellsBlock) {
        if self.saw_cells {
            return self.err(b.span, "a cells block is already present");
        }
        self.saw_cells = true;
        let Some(cat) = self.model.cat.clone() else {
            if !self.saw_category {
                self.err(b.span, "a cells block needs a category block");
            }
            return;
        };
        let before = self.diags.len();
        let mut t = TableCells::default();
        let mut idx: HashMap<&str, usize> = HashMap::new();
        for decl in &b.decls {
            if let CellDecl::Cell {
                span,
                name,
                dom,
                cod,
            } = decl
            {
                if idx.contains_key(name.as_str()) {
                    self.err(*span, format!("duplicate cell `{name}`"));
                    continue;
                }
                let dm = cat.morphism_named(dom);
                let cm = cat.morphism_named(cod);
                let (Some(dm), Some(cm)) = (dm, cm) else {
                    let missing = if dm.is_none() { dom } else { cod };
                    self.err(*span, format!("unknown morphism `{missing}`"));
                    continue;
                };
                if cat.dom(dm) != cat.dom(cm) || cat.cod(dm) != cat.cod(cm) {
                    self.err(
                        *span,
                        format!("cell `{name}`: the boundary morphisms `{dom}` and `{cod}` are not parallel"),
                    );
                    continue;
                }
                idx.insert(name, t.names.len());
                t.names.push(name.clone());
                t.src.push(cat.dom(dm).0);
                t.dst.push(cat.cod(dm).0);
                t.dom.push(dm);
                t.cod.push(cm);
            }
        }
        for decl in &b.decls {
            match decl {
                CellDecl::Cell { .. } => {}
                CellDecl::Zero {
                    span,
                    morphism,
                    name,
                } => {
                    let Some(f) = cat.morphism_named(morphism) else {
                        self.err(*span, format!("unknown morphism `{morphism}`"));
                        continue;
                    };
                    let Some(&z) = idx.get(name.as_str()) else {
                        self.err(*span, format!("unknown cell `{name}`"));
                        continue;
                    };
                    if t.dom[z] != f || t.cod[z] != f {
                        self.err(
                            *span,
                            format!("the zero cell on `{morphism}` must go from it to itself"),
                        );
                        continue;
                    }
                    if t.zero.insert(f.0, z).is_some() {
                        self.err(*span, format!("duplicate zero for `{morphism}`"));
                    }
                }
                CellDecl::Plus {
                    span,
                    left,
                    right,
                    result,
                } => {
                    let cell = |x: &String, diags: &mut Vec<Diagnostic>| {
                        let i = idx.get(x.as_str()).copied();
                        if i.is_none() {
                            diags.push(Diagnostic::resolve(*span, format!("unknown cell `{x}`")));
                        }
                        i
                    };
                    let v = cell(left, &mut self.diags);
                    let u = cell(right, &mut self.diags);
                    let w = cell(result, &mut self.diags);
                    let (Some(v), Some(u), Some(w)) = (v, u, w) else {
                        continue;
                    };
                    if t.dom[v] != t.cod[u] {
                        self.err(
                            *span,
                            format!(
                                "`{left} + {right}` is undefined: the domain of `{left}` is `{}` but the codomain of `{right}` is `{}`",
                                cat.morphism_name(t.dom[v]),
                                cat.morphism_name(t.cod[u]),
                            ),
                        );
                        continue;
                    }
                    if t.vsum.insert((v, u), w).is_some() {
                        self.err(*span, format!("duplicate sum `{left} + {right}`"));
                    }
                }
                CellDecl::Lwhisk {
                    span,
                    morphism,
                    cell,
                    result,
                } => {
                    let Some(g) = cat.morphism_named(morphism) else {
                        self.err(*span, format!("unknown morphism `{morphism}`"));
                        continue;
                    };
                    let u = idx.get(cell.as_str()).copied();
                    let r = idx.get(result.as_str()).copied();
                    let (Some(u), Some(r)) = (u, r) else {
                        let missing = if u.is_none() { cell } else { result };
                        self.err(*span, format!("unknown cell `{missing}`"));
                        continue;
                    };
                    if cat.dom(g).0 != t.dst[u] {
                        self.err(
                            *span,
                            format!(
                                "`{morphism} . {cell}` is undefined: `{morphism}` does not start at the cell's target object"
                            ),
                        );
                        continue;
                    }
                    if t.lwhisk.insert((g.0, u), r).is_some() {
                        self.err(*span, format!("duplicate whisker `{morphism} . {cell}`"));
                    }
                }
                CellDecl::Rwhisk {
                    span,
                    cell,
                    morphism,
                    result,
                } => {
                    let Some(f) = cat.morphism_named(morphism) else {
                        self.err(*span, format!("unknown morphism `{morphism}`"));
                        continue;
                    };
                    let u = idx.get(cell.as_str()).copied();
                    let r = idx.get(result.as_str()).copied();
                    let (Some(u), Some(r)) = (u, r) else {
                        let missing = if u.is_none() { cell } else { result };
                        self.err(*span, format!("unknown cell `{missing}`"));
                        continue;
                    };
                    if cat.cod(f).0 != t.src[u] {
                        self.err(
                            *span,
                            format!(
                                "`{cell} . {morphism}` is undefined: `{morphism}` does not end at the cell's source object"
                            ),
                        );
                        continue;
                    }
                    if t.rwhisk.insert((u, f.0), r).is_some() {
                        self.err(*span, format!("duplicate whisker `{cell} . {morphism}`"));
                    }
                }
            }
        }
        if self.diags.len() == before {
            self.model.structure = Some(TwoCellStructure::from_table(cat, t));
        }
    }

    /// True when the slots a builder wants to fill are free.
    fn claim(&mut self, span: Span, cat: bool, structure: bool, pseudo: bool) -> bool {
        if cat && (self.model.cat.is_some() || self.saw_category) {
            self.err(span, "a category is already present; this builder makes its own");
            return false;
        }
        if structure && (self.model.structure.is_some() || self.saw_cells) {
            self.err(span, "a 2-cell structure is already present");
            return false;
        }
        if pseudo && self.model.pseudo.is_some() {
            self.err(span, "pseudocategory data is already present");
            return false;
        }
        true
    }

    fn derive(&mut self, d: &DeriveDirective) {
        if d.builder != "additive_pseudocat" && !d.rows.is_empty() {
            return self.err(
                d.rows[0].span,
                format!("builder `{}` takes no data rows", d.builder),
            );
        }
        match d.builder.as_str() {
            "discrete" | "codiscrete" => {
                if !d.args.is_empty() {
                    return self.err(d.span, format!("builder `{}` takes no arguments", d.builder));
                }
                let Some(cat) = self.model.cat.clone() else {
                    if !self.saw_category {
                        self.err(d.span, format!("builder `{}` needs a category block", d.builder));
                    }
                    return;
                };
                if !self.claim(d.span, false, true, false) {
                    return;
                }
                let built = if d.builder == "discrete" {
                    constructions::discrete(cat)
                } else {
                    constructions::codiscrete(cat)
                };
                match built {
                    Ok(h) => self.model.structure = Some(h),
                    Err(e) => self.err(d.span, e.to_string()),
                }
            }
            "conjugation" => {
                let Some(groups) = self.arg_list(d, &|m: &Model, n| m.groups.get(n).cloned(), "group")
                else {
                    return;
                };
                if !self.claim(d.span, true, true, false) {
                    return;
                }
                self.pair(d.span, constructions::grp_conjugation(&groups));
            }
            "derivations" => {
                let Some(xmods) = self.arg_list(d, &|m: &Model, n| m.xmods.get(n).cloned(), "xmod")
                else {
                    return;
                };
                if !self.claim(d.span, true, true, false) {
                    return;
                }
                self.pair(d.span, constructions::xmod_derivations(&xmods));
            }
            "homotopies" => {
                let Some(cs) = self.arg_list(d, &|m: &Model, n| m.complexes.get(n).cloned(), "complex")
                else {
                    return;
                };
                if !self.claim(d.span, true, true, false) {
                    return;
                }
                self.pair(d.span, constructions::chain_homotopies(&cs));
            }
            "internal" => {
                let Some(ics) = self.arg_list(d, &|m: &Model, n| m.intcats.get(n).cloned(), "intcat")
                else {
                    return;
                };
                if !self.claim(d.span, true, true, false) {
                    return;
                }
                self.pair(d.span, constructions::internal_transformations(&ics));
            }
            "group_pseudocat" => self.group_pseudocat(d),
            "additive_pseudocat" => self.additive_pseudocat(d),
            other => self.err(
                d.span,
                format!(
                    "unknown builder `{other}`; expected discrete, codiscrete, conjugation, \
                     derivations, homotopies, internal, group_pseudocat, or additive_pseudocat"
                ),
            ),
        }
    }

    fn arg_list<T>(
        &mut self,
        d: &DeriveDirective,
        get: &dyn Fn(&Model, &str) -> Option<T>,
        what: &str,
    ) -> Option<Vec<T>> {
        if d.args.is_empty() {
            self.err(
                d.span,
                format!("builder `{}` needs at least one {what}", d.builder),
            );
            return None;
        }
        let mut out = Vec::with_capacity(d.args.len());
        for a in &d.args {
            match get(&self.model, a) {
                Some(v) => out.push(v),
                None => {
                    self.err(d.span, format!("unknown {what} `{a}`"));
                    return None;
                }
            }
        }
        Some(out)
    }

    fn pair(
        &mut self,
        span: Span,
        built: sesq_core::report::Result<(Arc<FiniteCategory>, TwoCellStructure)>,
    ) {
        match built {
            Ok((cat, h)) => {
                self.model.cat = Some(cat);
                self.model.structure = Some(h);
            }
            Err(e) => self.err(span, e.to_string()),
        }
    }

    fn group_pseudocat(&mut self, d: &DeriveDirective) {
        let [xm_name, delta_name] = d.args.as_slice() else {
            return self.err(
                d.span,
                "builder `group_pseudocat` takes a crossed module and an element of its top group",
            );
        };
        let Some(xm) = self.model.xmods.get(xm_name).cloned() else {
            return self.err(d.span, format!("unknown xmod `{xm_name}`"));
        };
        let Some(delta) = xm.x.names.iter().position(|n| n == delta_name) else {
            return self.err(
                d.span,
                format!("unknown element `{delta_name}` of the top group"),
            );
        };
        if !self.claim(d.span, true, true, true) {
            return;
        }
        match build_group_pseudocategory(&xm, delta) {
            Ok((cat, h, data)) => {
                self.model.cat = Some(cat);
                self.model.structure = Some(h);
                self.model.pseudo = Some(data);
            }
            Err(e) => self.err(d.span, e.to_string()),
        }
    }

    fn additive_pseudocat(&mut self, d: &DeriveDirective) {
        if !d.args.is_empty() {
            return self.err(
                d.span,
                "builder `additive_pseudocat` takes no arguments; use data rows",
            );
        }
        let mut rows: HashMap<&str, &KeyRow> = HashMap::new();
        const KEYS: [&str; 11] = [
            "a", "b", "bd0", "bd1", "bd2", "lam1", "lam2", "rho1", "rho2", "eta1", "eta2",
        ];
        for row in &d.rows {
            if !KEYS.contains(&row.key.as_str()) {
                return self.err(row.span, format!("unknown data row `{}`", row.key));
            }
            if rows.insert(&row.key, row).is_some() {
                return self.err(row.span, format!("duplicate data row `{}`", row.key));
            }
        }
        let mut complex = |key: &str| -> Option<ComplexCarrier> {
            let Some(row) = rows.get(key) else {
                self.diags.push(Diagnostic::resolve(
                    d.span,
                    format!("builder `additive_pseudocat` needs an `{key}` row"),
                ));
                return None;
            };
            let [name] = row.values.as_slice() else {
                self.diags.push(Diagnostic::resolve(
                    row.span,
                    format!("`{key}` takes one complex name"),
                ));
                return None;
            };
            let c = self.model.complexes.get(name).cloned();
            if c.is_none() {
                self.diags
                    .push(Diagnostic::resolve(row.span, format!("unknown complex `{name}`")));
            }
            c
        };
        let a = complex("a");
        let b = complex("b");
        let (Some(a), Some(b)) = (a, b) else {
            return;
        };
        // Omitted map rows mean the zero map; that is the only omission
        // the format allows, and only under `derive`.
        let mut map = |key: &str, src: &GroupTable, dst: &GroupTable| -> Option<Vec<usize>> {
            match rows.get(key) {
                None => Some(vec![dst.unit; src.n]),
                Some(row) => {
                    let r = Row {
                        span: row.span,
                        items: row.values.clone(),
                    };
                    row_indices(&mut self.diags, &r, &dst.names, src.n, "element")
                }
            }
        };
        let bd0 = map("bd0", &a.level[0], &b.level[0]);
        let bd1 = map("bd1", &a.level[1], &b.level[1]);
        let bd2 = map("bd2", &a.level[2], &b.level[2]);
        let lam1 = map("lam1", &a.level[0], &a.level[1]);
        let lam2 = map("lam2", &a.level[1], &a.level[2]);
        let rho1 = map("rho1", &a.level[0], &a.level[1]);
        let rho2 = map("rho2", &a.level[1], &a.level[2]);
        let eta1 = map("eta1", &b.level[0], &a.level[1]);
        let eta2 = map("eta2", &b.level[1], &a.level[2]);
        let (Some(bd0), Some(bd1), Some(bd2)) = (bd0, bd1, bd2) else {
            return;
        };
        let (Some(t), Some(u), Some(v), Some(w), Some(x), Some(y)) =
            (lam1, lam2, rho1, rho2, eta1, eta2)
        else {
            return;
        };
        if !self.claim(d.span, true, true, true) {
            return;
        }
        let built = build_additive_pseudocategory(
            &a,
            &b,
            &[bd0, bd1, bd2],
            &HomotopyData { t1: t, t2: u },
            &HomotopyData { t1: v, t2: w },
            &HomotopyData { t1: x, t2: y },
        );
        match built {
            Ok((cat, h, data)) => {
                self.model.cat = Some(cat);
                self.model.structure = Some(h);
                self.model.pseudo = Some(data);
            }
            Err(e) => self.err(d.span, e.to_string()),
        }
    }

    fn pseudocat(&mut self, b: &PseudocatBlock) {
        if self.model.structure.is_none() {
            if !self.saw_cells && self.model.pseudo.is_none() {
                self.err(b.span, "a pseudocat block needs a 2-cell structure");
            }
            return;
        }
        if self.model.pseudo.is_some() {
            return self.err(b.span, "pseudocategory data is already present");
        }
        let h = self.model.structure.as_ref().unwrap();
        let resolved = resolve_pseudocat(h, b, &mut self.diags);
        if resolved.is_some() {
            self.model.pseudo = resolved;
        }
    }
}

fn resolve_pseudocat(
    h: &TwoCellStructure,
    b: &PseudocatBlock,
    diags: &mut Vec<Diagnostic>,
) -> Option<PseudocategoryData> {
    let cat = &h.cat;
    let missing: Vec<&str> = [
        ("C0", b.c0.is_some()),
        ("C1", b.c1.is_some()),
        ("d", b.d.is_some()),
        ("c", b.c.is_some()),
        ("e", b.e.is_some()),
        ("m", b.m.is_some()),
        ("C2", b.c2.is_some()),
        ("C3", b.c3.is_some()),
        ("alpha", b.alpha.is_some()),
        ("lambda", b.lambda.is_some()),
        ("rho", b.rho.is_some()),
    ]
    .into_iter()
    .filter(|(_, present)| !present)
    .map(|(key, _)| key)
    .collect();
    if !missing.is_empty() {
        diags.push(Diagnostic::resolve(
            b.span,
            format!("pseudocat block is missing `{}`", missing.join("`, `")),
        ));
        return None;
    }
    let object = |slot: &Option<(Span, String)>, diags: &mut Vec<Diagnostic>| {
        let (span, name) = slot.as_ref().unwrap();
        let o = cat.object_named(name);
        if o.is_none() {
            diags.push(Diagnostic::resolve(*span, format!("unknown object `{name}`")));
        }
        o
    };
    let morphism = |slot: &Option<(Span, String)>, diags: &mut Vec<Diagnostic>| {
        let (span, name) = slot.as_ref().unwrap();
        let m = cat.morphism_named(name);
        if m.is_none() {
            diags.push(Diagnostic::resolve(*span, format!("unknown morphism `{name}`")));
        }
        m
    };
    let cell = |slot: &Option<(Span, String)>, diags: &mut Vec<Diagnostic>| {
        let (span, name) = slot.as_ref().unwrap();
        let found = h
            .table()
            .ok()
            .and_then(|t| t.names.iter().position(|n| n == name))
            .and_then(|i| h.cell(i).ok());
        if found.is_none() {
            diags.push(Diagnostic::resolve(*span, format!("unknown cell `{name}`")));
        }
        found
    };
    let c0 = object(&b.c0, diags);
    let c1 = object(&b.c1, diags);
    let dm = morphism(&b.d, diags);
    let cm = morphism(&b.c, diags);
    let em = morphism(&b.e, diags);
    let mm = morphism(&b.m, diags);
    let alpha = cell(&b.alpha, diags);
    let lambda = cell(&b.lambda, diags);
    let rho = cell(&b.rho, diags);
    let (c0, c1, dm, cm, em, mm) = (c0?, c1?, dm?, cm?, em?, mm?);
    let (alpha, lambda, rho) = (alpha?, lambda?, rho?);
    if cat.dom(dm) != c1 || cat.cod(dm) != c0 {
        diags.push(Diagnostic::resolve(
            b.d.as_ref().unwrap().0,
            "`d` must go from the declared `C1` to the declared `C0`",
        ));
        return None;
    }
    let maps = match induced_maps(cat, Association::LeftNested, dm, cm, em, mm) {
        Ok(m) => m,
        Err(e) => {
            diags.push(Diagnostic::resolve(b.span, e.to_string()));
            return None;
        }
    };
    let square = |declared: &Option<(Span, [String; 3])>,
                      apex: ObjId,
                      p1: MorId,
                      p2: MorId,
                      key: &str,
                      diags: &mut Vec<Diagnostic>|
     -> bool {
        let (span, [da, dp1, dp2]) = declared.as_ref().unwrap();
        let got_apex = cat.object_named(da);
        let got_p1 = cat.morphism_named(dp1);
        let got_p2 = cat.morphism_named(dp2);
        let (Some(ga), Some(g1), Some(g2)) = (got_apex, got_p1, got_p2) else {
            let name = if got_apex.is_none() {
                da
            } else if got_p1.is_none() {
                dp1
            } else {
                dp2
            };
            diags.push(Diagnostic::resolve(*span, format!("unknown id `{name}`")));
            return false;
        };
        if (ga, g1, g2) != (apex, p1, p2) {
            diags.push(Diagnostic::resolve(
                *span,
                format!("declared `{key}` differs from the computed pullback"),
            ));
            return false;
        }
        true
    };
    let ok2 = square(&b.c2, maps.sq2.apex, maps.sq2.p1, maps.sq2.p2, "C2", diags);
    let ok3 = square(&b.c3, maps.sq3.apex, maps.sq3.p1, maps.sq3.p2, "C3", diags);
    if !(ok2 && ok3) {
        return None;
    }
    Some(PseudocategoryData {
        d: dm,
        c: cm,
        e: em,
        m: mm,
        association: Association::LeftNested,
        maps,
        alpha,
        lambda,
        rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn run(src: &str) -> Result<Model, Vec<Diagnostic>> {
        elaborate(&parse(src).expect("parse"))
    }

    #[test]
    fn groups_resolve_by_element_name() {
        let m = run("group z2 {\n  elem e a\n  mul e a\n  mul a e\n}\n").unwrap();
        let g = &m.groups["z2"];
        assert_eq!(g.n, 2);
        assert_eq!(g.unit, 0);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn category_and_cells_build_a_table_structure() {
        let src = "category {\n  object A\n  id A = idA\n}\n\
                   cells {\n  cell z : idA => idA\n  zero idA = z\n  plus z + z = z\n\
                   lwhisk idA . z = z\n  rwhisk z . idA = z\n}\n";
        let m = run(src).unwrap();
        let h = m.structure.unwrap();
        let t = h.table().unwrap();
        assert_eq!(t.names, vec!["z"]);
        assert_eq!(t.zero.len(), 1);
        assert!(sesq_core::cellstruct::validate_structure(&h).unwrap().ok());
    }

    #[test]
    fn mismatched_sum_is_a_resolve_error() {
        let src = "category {\n  object A\n  object B\n  id A = idA\n  id B = idB\n  morphism f : A -> B\n}\n\
                   cells {\n  cell z : idA => idA\n  cell y : f => f\n  plus y + z = y\n}\n";
        let err = run(src).unwrap_err();
        assert_eq!(err.len(), 1);
        assert!(err[0].message.contains("undefined"), "{}", err[0].message);
        assert_eq!(err[0].span.line, 11);
    }

    #[test]
    fn unknown_ids_are_reported_with_spans() {
        let err = run("category {\n  object A\n  morphism f : A -> Q\n}\n").unwrap_err();
        assert!(err[0].message.contains("unknown object `Q`"));
        assert_eq!(err[0].span.line, 3);
    }

    #[test]
    fn derive_conjugation_builds_category_and_cells() {
        let m = run("group z2 {\n  elem e a\n  mul e a\n  mul a e\n}\nderive conjugation z2\n")
            .unwrap();
        assert!(m.cat.is_some());
        let h = m.structure.unwrap();
        assert_eq!(h.all_cells().unwrap().len(), 2 * 2);
    }

    #[test]
    fn two_sources_for_the_category_conflict() {
        let err = run(
            "group z2 {\n  elem e a\n  mul e a\n  mul a e\n}\ncategory {\n  object A\n  id A = idA\n}\nderive conjugation z2\n",
        )
        .unwrap_err();
        assert!(err[0].message.contains("already present"));
    }

    #[test]
    fn group_pseudocat_derivation_carries_pseudo_data() {
        let src = "group z3 {\n  elem 0 1 2\n  mul 0 1 2\n  mul 1 2 0\n  mul 2 0 1\n}\n\
                   group z1 {\n  elem e\n  mul e\n}\n\
                   xmod k {\n  x z3\n  b z1\n  diff e e e\n  act 0 1 2\n}\n\
                   derive group_pseudocat k 1\n";
        let m = run(src).unwrap();
        assert!(m.pseudo.is_some());
        assert!(m.structure.is_some());
    }
}
