//! Builds documents out of `sesq-core` values.
//!
//! Carrier names are free-form strings in the core but identifiers here,
//! so every emitter renames through [`sanitize_all`]: non-identifier
//! characters become `_` and collisions get a numeric suffix, in carrier
//! order, which keeps the renaming deterministic.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use sesq_core::algebra::{ComplexCarrier, GroupTable, IntCatCarrier, XModPresentation};
use sesq_core::cellstruct::TwoCellStructure;
use sesq_core::fincat::{FiniteCategory, MorId};
use sesq_core::report::Result;

use crate::ast::*;

/// Identifier-safe, pairwise distinct renamings of `names`, in order.
pub fn sanitize_all(names: &[String]) -> Vec<String> {
    let mut seen = HashSet::new();
    names
        .iter()
        .map(|n| {
            let mut base: String = n
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
                .collect();
            if base.is_empty() {
                base.push('_');
            }
            let mut pick = base.clone();
            let mut k = 2;
            while !seen.insert(pick.clone()) {
                pick = format!("{base}_{k}");
                k += 1;
            }
            pick
        })
        .collect()
}

fn row(items: Vec<String>) -> Row {
    Row {
        span: Span::default(),
        items,
    }
}

pub fn group_block(name: &str, g: &GroupTable) -> Block {
    let names = sanitize_all(&g.names);
    Block::Group(GroupBlock {
        span: Span::default(),
        name: name.to_string(),
        elems: Some(row(names.clone())),
        mul: g
            .mul
            .iter()
            .map(|r| row(r.iter().map(|&v| names[v].clone()).collect()))
            .collect(),
    })
}

/// The complex and, before it, the three groups it is built from, named
/// `{name}_0`, `{name}_1`, `{name}_2` by level.
pub fn complex_blocks(name: &str, c: &ComplexCarrier) -> Vec<Block> {
    let level_names: Vec<String> = (0..3).map(|l| format!("{name}_{l}")).collect();
    let mut blocks: Vec<Block> = (0..3)
        .map(|l| group_block(&level_names[l], &c.level[l]))
        .collect();
    let elem = |l: usize| sanitize_all(&c.level[l].names);
    let (e0, e1) = (elem(0), elem(1));
    blocks.push(Block::Complex(ComplexBlock {
        span: Span::default(),
        name: name.to_string(),
        levels: Some(row(level_names)),
        diff2: Some(row(c.d2.iter().map(|&v| e1[v].clone()).collect())),
        diff1: Some(row(c.d1.iter().map(|&v| e0[v].clone()).collect())),
    }));
    blocks
}

/// The crossed module and, before it, its two groups, named `{name}_x`
/// and `{name}_b`.
pub fn xmod_blocks(name: &str, x: &XModPresentation) -> Vec<Block> {
    let (top_name, base_name) = (format!("{name}_x"), format!("{name}_b"));
    let top_elems = sanitize_all(&x.x.names);
    let base_elems = sanitize_all(&x.b.names);
    vec![
        group_block(&top_name, &x.x),
        group_block(&base_name, &x.b),
        Block::Xmod(XmodBlock {
            span: Span::default(),
            name: name.to_string(),
            top: Some((Span::default(), top_name)),
            base: Some((Span::default(), base_name)),
            diff: Some(row(x.d.iter().map(|&v| base_elems[v].clone()).collect())),
            act: x
                .act
                .iter()
                .map(|r| row(r.iter().map(|&v| top_elems[v].clone()).collect()))
                .collect(),
        }),
    ]
}

pub fn intcat_block(name: &str, ic: &IntCatCarrier) -> Block {
    let e0 = sanitize_all(&ic.names0);
    let e1 = sanitize_all(&ic.names1);
    Block::Intcat(IntcatBlock {
        span: Span::default(),
        name: name.to_string(),
        elem0: Some(row(e0.clone())),
        elem1: Some(row(e1.clone())),
        d: Some(row(ic.d.iter().map(|&v| e0[v].clone()).collect())),
        c: Some(row(ic.c.iter().map(|&v| e0[v].clone()).collect())),
        e: Some(row(ic.e.iter().map(|&v| e1[v].clone()).collect())),
        m: ic
            .m
            .iter()
            .map(|(&(u, v), &w)| MRule {
                span: Span::default(),
                left: e1[u].clone(),
                right: e1[v].clone(),
                result: e1[w].clone(),
            })
            .collect(),
    })
}

/// Morphism list and composition entries of `cat`, whatever its backend.
/// Table categories are read off directly; extensional ones are walked
/// through their hom sets, which interns every morphism.
fn category_tables(cat: &Arc<FiniteCategory>) -> Result<(Vec<MorId>, Vec<(MorId, MorId, MorId)>)> {
    if let Ok(entries) = cat.composition_entries() {
        return Ok((cat.morphisms(), entries));
    }
    let objects = cat.objects();
    let mut mors = Vec::new();
    for &a in &objects {
        for &b in &objects {
            mors.extend(cat.hom(a, b)?);
        }
    }
    mors.sort();
    let mut entries = Vec::new();
    for &f in &mors {
        for &g in &mors {
            if cat.dom(g) == cat.cod(f) {
                entries.push((g, f, cat.compose(g, f)?));
            }
        }
    }
    Ok((mors, entries))
}

/// A two-block document (`category`, `cells`) presenting an enumerated
/// structure explicitly.  Re-elaborating it rebuilds the same tables up
/// to the identifier renaming.
pub fn structure_document(h: &TwoCellStructure) -> Result<SpecDocument> {
    let cat = &h.cat;
    let t = h.table()?;
    let (mors, entries) = category_tables(cat)?;
    let objects = cat.objects();
    let obj_names = sanitize_all(
        &objects
            .iter()
            .map(|&o| cat.object_name(o))
            .collect::<Vec<_>>(),
    );
    let raw_mor_names: Vec<String> = mors.iter().map(|&m| cat.morphism_name(m)).collect();
    let clean = sanitize_all(&raw_mor_names);
    let mor_name: HashMap<MorId, &String> = mors.iter().copied().zip(clean.iter()).collect();
    let sp = Span::default();
    let mut decls = Vec::new();
    for name in &obj_names {
        decls.push(CatDecl::Object {
            span: sp,
            name: name.clone(),
        });
    }
    for &m in &mors {
        if cat.is_identity(m) {
            continue;
        }
        decls.push(CatDecl::Morphism {
            span: sp,
            name: mor_name[&m].clone(),
            dom: obj_names[cat.dom(m).0].clone(),
            cod: obj_names[cat.cod(m).0].clone(),
        });
    }
    for (&o, name) in objects.iter().zip(&obj_names) {
        if let Ok(i) = cat.identity(o) {
            decls.push(CatDecl::Identity {
                span: sp,
                object: name.clone(),
                name: mor_name[&i].clone(),
            });
        }
    }
    for (g, f, h2) in entries {
        decls.push(CatDecl::Compose {
            span: sp,
            g: mor_name[&g].clone(),
            f: mor_name[&f].clone(),
            result: mor_name[&h2].clone(),
        });
    }
    let cell_names = sanitize_all(&t.names);
    let mut cdecls = Vec::new();
    for i in 0..t.names.len() {
        cdecls.push(CellDecl::Cell {
            span: sp,
            name: cell_names[i].clone(),
            dom: mor_name[&t.dom[i]].clone(),
            cod: mor_name[&t.cod[i]].clone(),
        });
    }
    for (&f, &z) in &t.zero {
        cdecls.push(CellDecl::Zero {
            span: sp,
            morphism: mor_name[&MorId(f)].clone(),
            name: cell_names[z].clone(),
        });
    }
    for (&(v, u), &w) in &t.vsum {
        cdecls.push(CellDecl::Plus {
            span: sp,
            left: cell_names[v].clone(),
            right: cell_names[u].clone(),
            result: cell_names[w].clone(),
        });
    }
    for (&(g, u), &r) in &t.lwhisk {
        cdecls.push(CellDecl::Lwhisk {
            span: sp,
            morphism: mor_name[&MorId(g)].clone(),
            cell: cell_names[u].clone(),
            result: cell_names[r].clone(),
        });
    }
    for (&(u, f), &r) in &t.rwhisk {
        cdecls.push(CellDecl::Rwhisk {
            span: sp,
            cell: cell_names[u].clone(),
            morphism: mor_name[&MorId(f)].clone(),
            result: cell_names[r].clone(),
        });
    }
    Ok(SpecDocument {
        blocks: vec![
            Block::Category(CategoryBlock { span: sp, decls }),
            Block::Cells(CellsBlock {
                span: sp,
                decls: cdecls,
            }),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elaborate::elaborate;
    use crate::serialize::serialize;
    use sesq_core::cellstruct::validate_structure;
    use sesq_core::constructions::fixtures;

    #[test]
    fn sanitization_is_stable_and_collision_free() {
        let names: Vec<String> = ["(01)", "_01_", "(0 1)", "e", ""]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let clean = sanitize_all(&names);
        assert_eq!(clean, vec!["_01_", "_01__2", "_0_1_", "e", "_"]);
    }

    #[test]
    fn an_emitted_structure_reelaborates_to_valid_tables() {
        let h = fixtures::f1();
        let doc = structure_document(&h).unwrap();
        let text = serialize(&doc);
        let reparsed = crate::parse::parse(&text).unwrap();
        let model = elaborate(&reparsed).unwrap();
        let h2 = model.structure.unwrap();
        assert_eq!(h2.all_cells().unwrap().len(), h.all_cells().unwrap().len());
        assert!(validate_structure(&h2).unwrap().ok());
        let again = serialize(&reparsed);
        assert_eq!(text, again);
    }

    #[test]
    fn emitted_group_round_trips_through_elaboration() {
        let doc = SpecDocument {
            blocks: vec![group_block("s3", &sesq_core::algebra::presets::s3())],
        };
        let text = serialize(&doc);
        let model = elaborate(&crate::parse::parse(&text).unwrap()).unwrap();
        let g = &model.groups["s3"];
        assert_eq!(g.n, 6);
        assert!(!g.is_abelian());
    }
}
