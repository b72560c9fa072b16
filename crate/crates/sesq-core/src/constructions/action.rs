//! Cell structures built from translation monoids acting on hom-sets.
//!
//! Data: a monoid T(A,B) per ordered object pair and a map D with
//! `D(x, f)` parallel to `f`. Cells over (A,B) are pairs `(x, f)` with
//! dom `f` and cod `D(x, f)`; the sum is `(x', D(x, f)) + (x, f) =
//! (x' + x, f)`. The two action laws `D(0, f) = f` and `D(x' + x, f) =
//! D(x', D(x, f))` are checked here; everything else (including whisker
//! compatibility) is left to `validate_structure`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::MonoidTable;
use crate::cellstruct::{TableCells, TwoCellStructure};
use crate::fincat::{FiniteCategory, MorId, ObjId, TableCatBuilder};
use crate::report::{Result, SesqError};

/// Input data for `from_action`.
#[derive(Debug, Clone, Default)]
pub struct ActionSpec {
    /// Translation monoid per ordered object pair.
    pub monoids: BTreeMap<(usize, usize), MonoidTable>,
    /// `(f, x) -> D(x, f)`, keyed by morphism id and translation index.
    pub d: BTreeMap<(usize, usize), usize>,
    /// `(a, g, x) -> x'`: how the morphism `g: B -> C` carries a
    /// translation over (A,B) to one over (A,C). Missing entries default
    /// to `x` itself.
    pub lmap: BTreeMap<(usize, usize, usize), usize>,
    /// `(b, h, x) -> x'` for `h: A' -> A`, carrying (A,B) to (A',B).
    pub rmap: BTreeMap<(usize, usize, usize), usize>,
}

fn act(spec: &ActionSpec, f: MorId, x: usize) -> Result<usize> {
    spec.d.get(&(f.0, x)).copied().ok_or_else(|| {
        SesqError::InvalidPresentation(format!(
            "action undefined on translation {x} at morphism {}",
            f.0
        ))
    })
}

/// Builds the cell structure of a translation action, checking the two
/// action laws first.
pub fn from_action(cat: Arc<FiniteCategory>, spec: &ActionSpec) -> Result<TwoCellStructure> {
    if cat.is_ext() {
        return Err(SesqError::UnsupportedBackend(
            "translation actions are enumerated; the base must be a table category".into(),
        ));
    }
    let mut t = TableCells::default();
    let mut idx: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(a, b), m) in &spec.monoids {
        if a >= cat.object_count() || b >= cat.object_count() {
            return Err(SesqError::UnknownId(format!("object pair ({a},{b})")));
        }
        for f in cat.hom(ObjId(a), ObjId(b))? {
            // Law 1: the unit translation fixes every morphism.
            if act(spec, f, m.unit)? != f.0 {
                return Err(SesqError::ActionAxiomViolation(format!(
                    "unit translation moves {}",
                    cat.morphism_name(f)
                )));
            }
            for x in 0..m.n {
                let fx = MorId(act(spec, f, x)?);
                if cat.dom(fx) != ObjId(a) || cat.cod(fx) != ObjId(b) {
                    return Err(SesqError::InvalidPresentation(format!(
                        "D({}, {}) is not parallel to its argument",
                        m.names[x],
                        cat.morphism_name(f)
                    )));
                }
                // Law 2: acting by a sum is acting twice.
                for x2 in 0..m.n {
                    if act(spec, f, m.mul(x2, x))? != act(spec, fx, x2)? {
                        return Err(SesqError::ActionAxiomViolation(format!(
                            "D({} + {}, {}) differs from D({}, D({}, {}))",
                            m.names[x2],
                            m.names[x],
                            cat.morphism_name(f),
                            m.names[x2],
                            m.names[x],
                            cat.morphism_name(f)
                        )));
                    }
                }
                let i = t.names.len();
                idx.insert((f.0, x), i);
                t.names
                    .push(format!("({},{})", m.names[x], cat.morphism_name(f)));
                t.src.push(a);
                t.dst.push(b);
                t.dom.push(f);
                t.cod.push(fx);
                if x == m.unit {
                    t.zero.insert(f.0, i);
                }
            }
        }
    }
    for (&(f, x), &u) in &idx {
        let m = &spec.monoids[&(t.src[u], t.dst[u])];
        let fx = t.cod[u].0;
        for x2 in 0..m.n {
            if let Some(&v) = idx.get(&(fx, x2)) {
                t.vsum.insert((v, u), idx[&(f, m.mul(x2, x))]);
            }
        }
        let (a, b) = (t.src[u], t.dst[u]);
        let fm = MorId(f);
        for g in cat.morphisms() {
            if cat.dom(g) == ObjId(b) {
                let gx = spec.lmap.get(&(a, g.0, x)).copied().unwrap_or(x);
                if let Some(&w) = idx.get(&(cat.compose(g, fm)?.0, gx)) {
                    t.lwhisk.insert((g.0, u), w);
                }
            }
            if cat.cod(g) == ObjId(a) {
                let hx = spec.rmap.get(&(b, g.0, x)).copied().unwrap_or(x);
                if let Some(&w) = idx.get(&(cat.compose(fm, g)?.0, hx)) {
                    t.rwhisk.insert((u, g.0), w);
                }
            }
        }
    }
    Ok(TwoCellStructure::from_table(cat, t))
}

/// One object whose morphisms form the monoid `m`, cells over the single
/// pair forming the monoid `cells`, acting on morphisms through `d`
/// (`d[x][f]` is the morphism `x` sends `f` to). Whiskering leaves the
/// translation component alone, so the result satisfies the axioms exactly
/// when `d` commutes with composition on both sides.
pub fn one_object(
    m: &MonoidTable,
    cells: &MonoidTable,
    d: &[Vec<usize>],
) -> Result<TwoCellStructure> {
    if d.len() != cells.n || d.iter().any(|row| row.len() != m.n) {
        return Err(SesqError::InvalidPresentation(
            "action table dimensions disagree with the monoids".into(),
        ));
    }
    let mut b = TableCatBuilder::new();
    let o = b.object("*");
    let mut ms = Vec::new();
    for name in &m.names {
        ms.push(b.morphism(name, o, o));
    }
    b.mark_identity(o, ms[m.unit]);
    for g in 0..m.n {
        for f in 0..m.n {
            b.compose_rule(ms[g], ms[f], ms[m.mul(g, f)]);
        }
    }
    let cat = Arc::new(b.build());
    let mut spec = ActionSpec::default();
    spec.monoids.insert((0, 0), cells.clone());
    for x in 0..cells.n {
        for f in 0..m.n {
            spec.d.insert((f, x), d[x][f]);
        }
    }
    from_action(cat, &spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets;
    use crate::cellstruct::validate_structure;
    use crate::constructions::fixtures;

    #[test]
    fn one_object_group_fixtures_validate() {
        for h in [fixtures::f1(), fixtures::f2()] {
            let r = validate_structure(&h).unwrap();
            assert!(r.ok(), "{:?}", r.findings);
            assert!(h.is_invertible_structure().unwrap());
        }
        assert_eq!(fixtures::f2().all_cells().unwrap().len(), 6);
    }

    #[test]
    fn monoid_cells_need_not_be_invertible() {
        // 0 is the unit; a + a = a, b absorbs into a from the left.
        let cells = MonoidTable::new(
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 1]],
            vec!["0".into(), "a".into(), "b".into()],
        )
        .unwrap();
        let d = vec![vec![0], vec![0], vec![0]];
        let h = one_object(&MonoidTable::trivial(), &cells, &d).unwrap();
        let r = validate_structure(&h).unwrap();
        assert!(r.ok(), "{:?}", r.findings);
        assert!(!h.is_invertible_structure().unwrap());
    }

    #[test]
    fn action_law_violations_are_rejected() {
        // Z2 cells pretending to act on a 2-element monoid but with a
        // non-involutive move table.
        let m = MonoidTable::new(
            vec![vec![0, 1], vec![1, 1]],
            vec!["e".into(), "s".into()],
        )
        .unwrap();
        let z2 = presets::cyclic(2).as_monoid();
        let bad = vec![vec![0, 1], vec![1, 1]];
        match one_object(&m, &z2, &bad) {
            Err(SesqError::ActionAxiomViolation(_)) => {}
            other => panic!("expected an action axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn nontrivial_action_on_morphisms() {
        // Morphisms: the 2-element group; cells: Z2 swapping the two
        // morphisms. d commutes with composition, so this validates.
        let m = presets::cyclic(2).as_monoid();
        let z2 = presets::cyclic(2).as_monoid();
        let d = vec![vec![0, 1], vec![1, 0]];
        let h = one_object(&m, &z2, &d).unwrap();
        let r = validate_structure(&h).unwrap();
        assert!(r.ok(), "{:?}", r.findings);
        assert_eq!(h.all_cells().unwrap().len(), 4);
        let z = h.zero(crate::fincat::MorId(0)).unwrap();
        assert_eq!(h.dom(&z).unwrap(), h.cod(&z).unwrap());
    }
}
