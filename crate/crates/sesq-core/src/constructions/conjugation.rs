//! Conjugation cells on categories of groups.
//!
//! A cell `(t, f): f => g` between homomorphisms `f, g: A -> B` is an
//! element `t` of `B` with `g = t f(-) t^{-1}`. The sum stacks
//! translations, `(t', g) + (t, f) = (t' t, f)`; whiskering post- or
//! pre-composes the base and pushes `t` through the left factor.

use std::sync::Arc;

use crate::algebra::GroupTable;
use crate::cellstruct::{Cell, CellValue, LazyCells, TableCells, TwoCellStructure};
use crate::fincat::{ExtMor, ExtObject, FiniteCategory, MorId, ObjId, PullbackSquare};
use crate::report::{Result, SesqError};

fn conj_graph(b: &GroupTable, t: usize, f: &[usize]) -> Vec<usize> {
    f.iter().map(|&v| b.conj(t, v)).collect()
}

/// The category of the given groups with all homomorphisms between them,
/// together with its conjugation cells, both fully enumerated.
pub fn grp_conjugation(
    groups: &[GroupTable],
) -> Result<(Arc<FiniteCategory>, TwoCellStructure)> {
    if groups.is_empty() {
        return Err(SesqError::InvalidPresentation("no groups given".into()));
    }
    let names: Vec<String> = (0..groups.len()).map(|i| format!("G{i}")).collect();
    let ec = super::enumerated_category(
        &names,
        |a, b| crate::algebra::enumerate_group_homs(&groups[a], &groups[b]),
        |g: &Vec<usize>, f: &Vec<usize>| f.iter().map(|&v| g[v]).collect(),
        |a| (0..groups[a].n).collect(),
        "f",
    )?;
    let mut t = TableCells::default();
    let mut idx = std::collections::HashMap::new();
    for m in ec.cat.morphisms() {
        let (a, b, ref graph) = ec.data[m.0];
        let bg = &groups[b];
        for tr in 0..bg.n {
            let cod = ec
                .lookup(a, b, &conj_graph(bg, tr, graph))
                .expect("conjugate of a homomorphism is a homomorphism");
            let i = t.names.len();
            idx.insert((m.0, tr), i);
            t.names.push(format!(
                "({},{})",
                bg.names[tr],
                ec.cat.morphism_name(m)
            ));
            t.src.push(a);
            t.dst.push(b);
            t.dom.push(m);
            t.cod.push(cod);
            if tr == bg.unit {
                t.zero.insert(m.0, i);
            }
        }
    }
    for (&(f, tr), &u) in &idx {
        let b = t.dst[u];
        let bg = &groups[b];
        let cod = t.cod[u].0;
        for tr2 in 0..bg.n {
            let v = idx[&(cod, tr2)];
            t.vsum.insert((v, u), idx[&(f, bg.mul(tr2, tr))]);
        }
        for g in ec.cat.morphisms() {
            let (ga, gb, ref ggraph) = ec.data[g.0];
            if ga == b {
                let gf = ec.cat.compose(g, MorId(f))?;
                t.lwhisk.insert((g.0, u), idx[&(gf.0, ggraph[tr])]);
            }
            if gb == t.src[u] {
                let fg = ec.cat.compose(MorId(f), g)?;
                t.rwhisk.insert((u, g.0), idx[&(fg.0, tr)]);
            }
        }
    }
    let h = TwoCellStructure::from_table(ec.cat.clone(), t);
    Ok((ec.cat, h))
}

fn elem_parts(cell: &Cell) -> Result<(usize, MorId)> {
    match cell.value {
        CellValue::Elem { t, base } => Ok((t, base)),
        _ => Err(SesqError::ShapeMismatch(
            "expected a conjugation cell".into(),
        )),
    }
}

fn group_at(cat: &FiniteCategory, o: ObjId) -> Result<GroupTable> {
    match cat.ext_object(o)? {
        ExtObject::Group(g) => Ok(g),
        other => Err(SesqError::TypeMismatch(format!(
            "conjugation cells need group carriers, object is {}",
            other.kind()
        ))),
    }
}

fn graph_of(cat: &FiniteCategory, m: MorId) -> Result<Vec<usize>> {
    match cat.ext_mor(m)? {
        ExtMor::Fn(g) => Ok(g),
        _ => Err(SesqError::ShapeMismatch(
            "morphism is not a carrier function".into(),
        )),
    }
}

/// Lazy evaluator for conjugation cells over an extensional category of
/// groups.
#[derive(Debug)]
pub struct ConjEngine;

impl ConjEngine {
    fn cell(t: usize, base: MorId, src: ObjId, dst: ObjId) -> Cell {
        Cell {
            src,
            dst,
            value: CellValue::Elem { t, base },
        }
    }
}

impl LazyCells for ConjEngine {
    fn backend_name(&self) -> &'static str {
        "conjugation"
    }

    fn contains(&self, cat: &FiniteCategory, cell: &Cell) -> Result<bool> {
        let (t, base) = elem_parts(cell)?;
        let b = group_at(cat, cell.dst)?;
        Ok(cat.dom(base) == cell.src && cat.cod(base) == cell.dst && t < b.n)
    }

    fn dom(&self, _cat: &FiniteCategory, cell: &Cell) -> Result<MorId> {
        Ok(elem_parts(cell)?.1)
    }

    fn cod(&self, cat: &FiniteCategory, cell: &Cell) -> Result<MorId> {
        let (t, base) = elem_parts(cell)?;
        let b = group_at(cat, cell.dst)?;
        let graph = conj_graph(&b, t, &graph_of(cat, base)?);
        cat.intern_morphism(
            &format!("cj[{}]{}", b.names[t], cat.morphism_name(base)),
            cell.src,
            cell.dst,
            ExtMor::Fn(graph),
        )
    }

    fn zero(&self, cat: &FiniteCategory, f: MorId) -> Result<Cell> {
        let b = group_at(cat, cat.cod(f))?;
        Ok(Self::cell(b.unit, f, cat.dom(f), cat.cod(f)))
    }

    fn vsum(&self, cat: &FiniteCategory, v: &Cell, u: &Cell) -> Result<Cell> {
        let (t2, _) = elem_parts(v)?;
        let (t1, base) = elem_parts(u)?;
        let b = group_at(cat, u.dst)?;
        Ok(Self::cell(b.mul(t2, t1), base, u.src, u.dst))
    }

    fn lwhisk(&self, cat: &FiniteCategory, g: MorId, y: &Cell) -> Result<Cell> {
        let (t, base) = elem_parts(y)?;
        let graph = graph_of(cat, g)?;
        Ok(Self::cell(
            graph[t],
            cat.compose(g, base)?,
            y.src,
            cat.cod(g),
        ))
    }

    fn rwhisk(&self, cat: &FiniteCategory, x: &Cell, f: MorId) -> Result<Cell> {
        let (t, base) = elem_parts(x)?;
        Ok(Self::cell(t, cat.compose(base, f)?, cat.dom(f), x.dst))
    }

    fn inverse(&self, cat: &FiniteCategory, x: &Cell) -> Result<Cell> {
        let (t, _) = elem_parts(x)?;
        let b = group_at(cat, x.dst)?;
        Ok(Self::cell(b.inv(t), self.cod(cat, x)?, x.src, x.dst))
    }

    fn describe(&self, cat: &FiniteCategory, cell: &Cell) -> String {
        match elem_parts(cell) {
            Ok((t, base)) => {
                let tn = group_at(cat, cell.dst)
                    .map(|g| g.names[t].clone())
                    .unwrap_or_else(|_| t.to_string());
                format!("({},{})", tn, cat.morphism_name(base))
            }
            Err(_) => format!("{:?}", cell.value),
        }
    }

    fn pair_into_pullback(
        &self,
        cat: &FiniteCategory,
        sq: &PullbackSquare,
        x: &Cell,
        y: &Cell,
    ) -> Result<Cell> {
        let (tx, bx) = elem_parts(x)?;
        let (ty, by) = elem_parts(y)?;
        let base = cat.pair_into(sq, bx, by)?;
        let pairs = cat.pullback_pairs(sq)?;
        let t = pairs
            .iter()
            .position(|&(l, r)| l == tx && r == ty)
            .ok_or_else(|| {
                SesqError::TypeMismatch(
                    "translation components do not meet in the pullback carrier".into(),
                )
            })?;
        Ok(Self::cell(t, base, x.src, sq.apex))
    }
}

/// Conjugation cells evaluated on demand over an extensional category
/// whose objects are groups.
pub fn conjugation_over(cat: Arc<FiniteCategory>) -> Result<TwoCellStructure> {
    for o in cat.objects() {
        group_at(&cat, o)?;
    }
    Ok(TwoCellStructure::from_lazy(cat, Box::new(ConjEngine)))
}
