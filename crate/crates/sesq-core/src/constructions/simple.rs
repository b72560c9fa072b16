//! Discrete and codiscrete cell structures.
//!
//! Discrete: exactly the zero cell on every morphism. Codiscrete: exactly
//! one cell between every ordered pair of parallel morphisms. Both exist
//! over any base category; the table builders require a table category,
//! the lazy variants work over extensional ones too.

use std::sync::Arc;

use crate::cellstruct::{Cell, CellValue, LazyCells, TableCells, TwoCellStructure};
use crate::fincat::{FiniteCategory, MorId, PullbackSquare};
use crate::report::{Result, SesqError};

fn require_table(cat: &FiniteCategory) -> Result<()> {
    if cat.is_ext() {
        return Err(SesqError::UnsupportedBackend(
            "enumerated cells need a table category; use the lazy variant".into(),
        ));
    }
    Ok(())
}

/// The structure whose only cells are the zero cells.
pub fn discrete(cat: Arc<FiniteCategory>) -> Result<TwoCellStructure> {
    require_table(&cat)?;
    let mut t = TableCells::default();
    let n = cat.morphism_count();
    for i in 0..n {
        let f = MorId(i);
        t.names.push(format!("0[{}]", cat.morphism_name(f)));
        t.src.push(cat.dom(f).0);
        t.dst.push(cat.cod(f).0);
        t.dom.push(f);
        t.cod.push(f);
        t.zero.insert(i, i);
        t.vsum.insert((i, i), i);
    }
    for g in cat.morphisms() {
        for f in cat.morphisms() {
            if cat.cod(f) != cat.dom(g) {
                continue;
            }
            let gf = cat.compose(g, f)?;
            t.lwhisk.insert((g.0, f.0), gf.0);
            t.rwhisk.insert((g.0, f.0), gf.0);
        }
    }
    Ok(TwoCellStructure::from_table(cat, t))
}

/// The structure with one cell between each ordered pair of parallel
/// morphisms.
pub fn codiscrete(cat: Arc<FiniteCategory>) -> Result<TwoCellStructure> {
    require_table(&cat)?;
    let mut t = TableCells::default();
    let mut idx = std::collections::HashMap::new();
    for a in cat.objects() {
        for b in cat.objects() {
            for lower in cat.hom(a, b)? {
                for upper in cat.hom(a, b)? {
                    let i = t.names.len();
                    idx.insert((lower, upper), i);
                    t.names.push(format!(
                        "[{}=>{}]",
                        cat.morphism_name(lower),
                        cat.morphism_name(upper)
                    ));
                    t.src.push(a.0);
                    t.dst.push(b.0);
                    t.dom.push(lower);
                    t.cod.push(upper);
                    if lower == upper {
                        t.zero.insert(lower.0, i);
                    }
                }
            }
        }
    }
    for (&(l1, u1), &u) in &idx {
        for (&(l2, u2), &v) in &idx {
            if l2 == u1 && cat.dom(l1) == cat.dom(l2) && cat.cod(l1) == cat.cod(l2) {
                t.vsum.insert((v, u), idx[&(l1, u2)]);
            }
        }
        for g in cat.morphisms() {
            if cat.dom(g) == cat.cod(u1) {
                let w = idx[&(cat.compose(g, l1)?, cat.compose(g, u1)?)];
                t.lwhisk.insert((g.0, u), w);
            }
            if cat.cod(g) == cat.dom(u1) {
                let w = idx[&(cat.compose(l1, g)?, cat.compose(u1, g)?)];
                t.rwhisk.insert((u, g.0), w);
            }
        }
    }
    Ok(TwoCellStructure::from_table(cat, t))
}

fn on_mor(cell: &Cell) -> Result<MorId> {
    match cell.value {
        CellValue::OnMor(f) => Ok(f),
        _ => Err(SesqError::ShapeMismatch(
            "expected a discrete cell".into(),
        )),
    }
}

fn pair_parts(cell: &Cell) -> Result<(MorId, MorId)> {
    match cell.value {
        CellValue::Pair { lower, upper } => Ok((lower, upper)),
        _ => Err(SesqError::ShapeMismatch(
            "expected a codiscrete cell".into(),
        )),
    }
}

fn mor_cell(cat: &FiniteCategory, f: MorId) -> Cell {
    Cell {
        src: cat.dom(f),
        dst: cat.cod(f),
        value: CellValue::OnMor(f),
    }
}

fn pair_cell_value(cat: &FiniteCategory, lower: MorId, upper: MorId) -> Cell {
    Cell {
        src: cat.dom(lower),
        dst: cat.cod(lower),
        value: CellValue::Pair { lower, upper },
    }
}

/// Lazy evaluator for discrete cells.
#[derive(Debug)]
pub struct DiscreteEngine;

impl LazyCells for DiscreteEngine {
    fn backend_name(&self) -> &'static str {
        "discrete"
    }

    fn contains(&self, cat: &FiniteCategory, cell: &Cell) -> Result<bool> {
        let f = on_mor(cell)?;
        Ok(cat.dom(f) == cell.src && cat.cod(f) == cell.dst)
    }

    fn dom(&self, _cat: &FiniteCategory, cell: &Cell) -> Result<MorId> {
        on_mor(cell)
    }

    fn cod(&self, _cat: &FiniteCategory, cell: &Cell) -> Result<MorId> {
        on_mor(cell)
    }

    fn zero(&self, cat: &FiniteCategory, f: MorId) -> Result<Cell> {
        Ok(mor_cell(cat, f))
    }

    fn vsum(&self, _cat: &FiniteCategory, v: &Cell, _u: &Cell) -> Result<Cell> {
        Ok(v.clone())
    }

    fn lwhisk(&self, cat: &FiniteCategory, g: MorId, y: &Cell) -> Result<Cell> {
        Ok(mor_cell(cat, cat.compose(g, on_mor(y)?)?))
    }

    fn rwhisk(&self, cat: &FiniteCategory, x: &Cell, f: MorId) -> Result<Cell> {
        Ok(mor_cell(cat, cat.compose(on_mor(x)?, f)?))
    }

    fn inverse(&self, _cat: &FiniteCategory, x: &Cell) -> Result<Cell> {
        Ok(x.clone())
    }

    fn describe(&self, cat: &FiniteCategory, cell: &Cell) -> String {
        match on_mor(cell) {
            Ok(f) => format!("0[{}]", cat.morphism_name(f)),
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
        let m = cat.pair_into(sq, on_mor(x)?, on_mor(y)?)?;
        Ok(mor_cell(cat, m))
    }
}

/// Lazy evaluator for codiscrete cells.
#[derive(Debug)]
pub struct CodiscreteEngine;

impl LazyCells for CodiscreteEngine {
    fn backend_name(&self) -> &'static str {
        "codiscrete"
    }

    fn contains(&self, cat: &FiniteCategory, cell: &Cell) -> Result<bool> {
        let (l, u) = pair_parts(cell)?;
        Ok(cat.dom(l) == cell.src
            && cat.cod(l) == cell.dst
            && cat.dom(u) == cell.src
            && cat.cod(u) == cell.dst)
    }

    fn dom(&self, _cat: &FiniteCategory, cell: &Cell) -> Result<MorId> {
        Ok(pair_parts(cell)?.0)
    }

    fn cod(&self, _cat: &FiniteCategory, cell: &Cell) -> Result<MorId> {
        Ok(pair_parts(cell)?.1)
    }

    fn zero(&self, cat: &FiniteCategory, f: MorId) -> Result<Cell> {
        Ok(pair_cell_value(cat, f, f))
    }

    fn vsum(&self, cat: &FiniteCategory, v: &Cell, u: &Cell) -> Result<Cell> {
        let (l1, _) = pair_parts(u)?;
        let (_, u2) = pair_parts(v)?;
        Ok(pair_cell_value(cat, l1, u2))
    }

    fn lwhisk(&self, cat: &FiniteCategory, g: MorId, y: &Cell) -> Result<Cell> {
        let (l, u) = pair_parts(y)?;
        Ok(pair_cell_value(cat, cat.compose(g, l)?, cat.compose(g, u)?))
    }

    fn rwhisk(&self, cat: &FiniteCategory, x: &Cell, f: MorId) -> Result<Cell> {
        let (l, u) = pair_parts(x)?;
        Ok(pair_cell_value(cat, cat.compose(l, f)?, cat.compose(u, f)?))
    }

    fn inverse(&self, cat: &FiniteCategory, x: &Cell) -> Result<Cell> {
        let (l, u) = pair_parts(x)?;
        Ok(pair_cell_value(cat, u, l))
    }

    fn describe(&self, cat: &FiniteCategory, cell: &Cell) -> String {
        match pair_parts(cell) {
            Ok((l, u)) => format!("[{}=>{}]", cat.morphism_name(l), cat.morphism_name(u)),
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
        let (xl, xu) = pair_parts(x)?;
        let (yl, yu) = pair_parts(y)?;
        let lower = cat.pair_into(sq, xl, yl)?;
        let upper = cat.pair_into(sq, xu, yu)?;
        Ok(pair_cell_value(cat, lower, upper))
    }
}

/// Discrete cells evaluated on demand; works over extensional categories.
pub fn discrete_lazy(cat: Arc<FiniteCategory>) -> TwoCellStructure {
    TwoCellStructure::from_lazy(cat, Box::new(DiscreteEngine))
}

/// Codiscrete cells evaluated on demand; works over extensional categories.
pub fn codiscrete_lazy(cat: Arc<FiniteCategory>) -> TwoCellStructure {
    TwoCellStructure::from_lazy(cat, Box::new(CodiscreteEngine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellstruct::validate_structure;
    use crate::constructions::fixtures;
    use crate::fincat::{ExtObject, TableCatBuilder};

    fn one_object_z2_monoid() -> Arc<FiniteCategory> {
        let mut b = TableCatBuilder::new();
        let o = b.object("*");
        let e = b.identity(o);
        let s = b.morphism("s", o, o);
        b.compose_rule(s, s, e);
        b.close_identities();
        Arc::new(b.build())
    }

    #[test]
    fn discrete_validates_and_only_has_zeros() {
        let h = fixtures::diamond_discrete();
        let r = validate_structure(&h).unwrap();
        assert!(r.ok(), "{:?}", r.findings);
        assert_eq!(h.all_cells().unwrap().len(), h.cat.morphism_count());
        assert!(h.is_invertible_structure().unwrap());
    }

    #[test]
    fn codiscrete_validates_on_parallel_morphisms() {
        let cat = one_object_z2_monoid();
        let h = codiscrete(cat).unwrap();
        let r = validate_structure(&h).unwrap();
        assert!(r.ok(), "{:?}", r.findings);
        assert_eq!(h.all_cells().unwrap().len(), 4);
        assert!(h.is_invertible_structure().unwrap());
    }

    #[test]
    fn lazy_discrete_matches_table_on_operations() {
        let cat = one_object_z2_monoid();
        let table = discrete(cat.clone()).unwrap();
        let lazy = discrete_lazy(cat.clone());
        for f in cat.morphisms() {
            let zt = table.zero(f).unwrap();
            let zl = lazy.zero(f).unwrap();
            assert_eq!(table.dom(&zt).unwrap(), lazy.dom(&zl).unwrap());
            for g in cat.morphisms() {
                if cat.dom(g) == cat.cod(f) {
                    let wt = table.lwhisker(g, &zt).unwrap();
                    let wl = lazy.lwhisker(g, &zl).unwrap();
                    assert_eq!(table.dom(&wt).unwrap(), lazy.dom(&wl).unwrap());
                }
            }
        }
    }

    #[test]
    fn lazy_codiscrete_works_over_extensional_sets() {
        let cat = Arc::new(FiniteCategory::ext(vec![(
            "A".into(),
            ExtObject::Set(2),
        )]));
        let a = cat.objects()[0];
        let swap = cat
            .intern_morphism("swap", a, a, crate::fincat::ExtMor::Fn(vec![1, 0]))
            .unwrap();
        let ida = cat.identity(a).unwrap();
        let h = codiscrete_lazy(cat.clone());
        let c = Cell {
            src: a,
            dst: a,
            value: CellValue::Pair {
                lower: ida,
                upper: swap,
            },
        };
        assert!(h.lazy().unwrap().contains(&cat, &c).unwrap());
        assert_eq!(h.dom(&c).unwrap(), ida);
        assert_eq!(h.cod(&c).unwrap(), swap);
        let i = h.inverse(&c).unwrap();
        assert_eq!(h.dom(&i).unwrap(), swap);
        let z = h.vcomp(&c, &i).unwrap();
        assert_eq!(h.dom(&z).unwrap(), swap);
        assert_eq!(h.cod(&z).unwrap(), swap);
    }

    #[test]
    fn table_builders_reject_extensional_categories() {
        let cat = Arc::new(FiniteCategory::ext(vec![(
            "A".into(),
            ExtObject::Set(1),
        )]));
        assert!(matches!(
            discrete(cat.clone()),
            Err(SesqError::UnsupportedBackend(_))
        ));
        assert!(matches!(
            codiscrete(cat),
            Err(SesqError::UnsupportedBackend(_))
        ));
    }
}
