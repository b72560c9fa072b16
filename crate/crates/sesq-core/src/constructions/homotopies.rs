//! Chain homotopy cells on categories of three-level complexes.
//!
//! A cell out of a chain map `f: A -> B` is a pair of homomorphisms
//! `t1: A0 -> B1`, `t2: A1 -> B2`; its codomain is the chain map
//! `(t2 d + f2, t1 d + d t2 + f1, d t1 + f0)`. Sums are pointwise, and
//! whiskering composes the components with the outer map's levels.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{enumerate_group_homs, ComplexCarrier};
use crate::cellstruct::{Cell, CellValue, LazyCells, TableCells, TwoCellStructure};
use crate::fincat::{ExtMor, ExtObject, FiniteCategory, MorId, ObjId, PullbackSquare};
use crate::report::{Result, SesqError};

type Levels = [Vec<usize>; 3];

fn chain_maps(a: &ComplexCarrier, b: &ComplexCarrier) -> Vec<Levels> {
    let h0 = enumerate_group_homs(&a.level[0], &b.level[0]);
    let h1 = enumerate_group_homs(&a.level[1], &b.level[1]);
    let h2 = enumerate_group_homs(&a.level[2], &b.level[2]);
    let mut out = Vec::new();
    for f2 in &h2 {
        for f1 in &h1 {
            if (0..a.level[2].n).any(|x| b.d2[f2[x]] != f1[a.d2[x]]) {
                continue;
            }
            for f0 in &h0 {
                if (0..a.level[1].n).any(|x| b.d1[f1[x]] != f0[a.d1[x]]) {
                    continue;
                }
                out.push([f0.clone(), f1.clone(), f2.clone()]);
            }
        }
    }
    out
}

fn compose_levels(g: &Levels, f: &Levels) -> Levels {
    [0usize, 1, 2].map(|i| f[i].iter().map(|&v| g[i][v]).collect())
}

fn cod_levels(
    a: &ComplexCarrier,
    b: &ComplexCarrier,
    f: &Levels,
    t1: &[usize],
    t2: &[usize],
) -> Levels {
    let g0 = (0..a.level[0].n)
        .map(|x| b.level[0].mul(b.d1[t1[x]], f[0][x]))
        .collect();
    let g1 = (0..a.level[1].n)
        .map(|x| {
            b.level[1]
                .mul(t1[a.d1[x]], b.level[1].mul(b.d2[t2[x]], f[1][x]))
        })
        .collect();
    let g2 = (0..a.level[2].n)
        .map(|x| b.level[2].mul(t2[a.d2[x]], f[2][x]))
        .collect();
    [g0, g1, g2]
}

/// The category of the given complexes with all chain maps, together with
/// its homotopy cells, fully enumerated.
pub fn chain_homotopies(
    complexes: &[ComplexCarrier],
) -> Result<(Arc<FiniteCategory>, TwoCellStructure)> {
    if complexes.is_empty() {
        return Err(SesqError::InvalidPresentation("no complexes given".into()));
    }
    let names: Vec<String> = (0..complexes.len()).map(|i| format!("C{i}")).collect();
    let ec = super::enumerated_category(
        &names,
        |a, b| chain_maps(&complexes[a], &complexes[b]),
        compose_levels,
        |a| [0usize, 1, 2].map(|i| (0..complexes[a].level[i].n).collect()),
        "f",
    )?;
    let mut t = TableCells::default();
    let mut idx: HashMap<(usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();
    let mut parts: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut by_base: HashMap<usize, Vec<usize>> = HashMap::new();
    for m in ec.cat.morphisms() {
        let (a, b, ref f) = ec.data[m.0];
        let (src, dst) = (&complexes[a], &complexes[b]);
        for t1 in enumerate_group_homs(&src.level[0], &dst.level[1]) {
            for t2 in enumerate_group_homs(&src.level[1], &dst.level[2]) {
                let cod = ec
                    .lookup(a, b, &cod_levels(src, dst, f, &t1, &t2))
                    .expect("homotopy endpoint is a chain map");
                let i = t.names.len();
                idx.insert((m.0, t1.clone(), t2.clone()), i);
                by_base.entry(m.0).or_default().push(i);
                t.names.push(format!(
                    "(t1{:?},t2{:?})@{}",
                    t1,
                    t2,
                    ec.cat.morphism_name(m)
                ));
                parts.push((t1.clone(), t2.clone()));
                t.src.push(a);
                t.dst.push(b);
                t.dom.push(m);
                t.cod.push(cod);
                if t1.iter().all(|&v| v == dst.level[1].unit)
                    && t2.iter().all(|&v| v == dst.level[2].unit)
                {
                    t.zero.insert(m.0, i);
                }
            }
        }
    }
    for u in 0..t.names.len() {
        let dst = &complexes[t.dst[u]];
        let (f, cod) = (t.dom[u], t.cod[u]);
        let (t1, t2) = parts[u].clone();
        if let Some(vs) = by_base.get(&cod.0) {
            for &v in vs {
                let (s1, s2) = &parts[v];
                let sum1: Vec<usize> = (0..t1.len())
                    .map(|w| dst.level[1].mul(s1[w], t1[w]))
                    .collect();
                let sum2: Vec<usize> = (0..t2.len())
                    .map(|w| dst.level[2].mul(s2[w], t2[w]))
                    .collect();
                t.vsum.insert((v, u), idx[&(f.0, sum1, sum2)]);
            }
        }
        for g in ec.cat.morphisms() {
            let (ga, gb, ref gp) = ec.data[g.0];
            if ga == t.dst[u] {
                let gf = ec.cat.compose(g, f)?;
                let m1: Vec<usize> = t1.iter().map(|&v| gp[1][v]).collect();
                let m2: Vec<usize> = t2.iter().map(|&v| gp[2][v]).collect();
                t.lwhisk.insert((g.0, u), idx[&(gf.0, m1, m2)]);
            }
            if gb == t.src[u] {
                let fg = ec.cat.compose(f, g)?;
                let m1: Vec<usize> = gp[0].iter().map(|&v| t1[v]).collect();
                let m2: Vec<usize> = gp[1].iter().map(|&v| t2[v]).collect();
                t.rwhisk.insert((u, g.0), idx[&(fg.0, m1, m2)]);
            }
        }
    }
    let h = TwoCellStructure::from_table(ec.cat.clone(), t);
    Ok((ec.cat, h))
}

fn homotopy_parts(cell: &Cell) -> Result<(MorId, &[usize], &[usize])> {
    match &cell.value {
        CellValue::Homotopy { base, t1, t2 } => Ok((*base, t1, t2)),
        _ => Err(SesqError::ShapeMismatch("expected a homotopy cell".into())),
    }
}

fn complex_at(cat: &FiniteCategory, o: ObjId) -> Result<ComplexCarrier> {
    match cat.ext_object(o)? {
        ExtObject::Complex(c) => Ok(c),
        other => Err(SesqError::TypeMismatch(format!(
            "homotopy cells need complex carriers, object is {}",
            other.kind()
        ))),
    }
}

fn levels_of(cat: &FiniteCategory, m: MorId) -> Result<Levels> {
    match cat.ext_mor(m)? {
        ExtMor::Chain(f) => Ok(f),
        _ => Err(SesqError::ShapeMismatch("morphism is not a chain map".into())),
    }
}

fn homotopy_cell(base: MorId, t1: Vec<usize>, t2: Vec<usize>, src: ObjId, dst: ObjId) -> Cell {
    Cell {
        src,
        dst,
        value: CellValue::Homotopy { base, t1, t2 },
    }
}

/// Lazy evaluator for homotopy cells over an extensional category of
/// complexes.
#[derive(Debug)]
pub struct HomotopyEngine;

impl LazyCells for HomotopyEngine {
    fn backend_name(&self) -> &'static str {
        "homotopy"
    }

    fn contains(&self, cat: &FiniteCategory, cell: &Cell) -> Result<bool> {
        let (base, t1, t2) = homotopy_parts(cell)?;
        let a = complex_at(cat, cell.src)?;
        let b = complex_at(cat, cell.dst)?;
        Ok(cat.dom(base) == cell.src
            && cat.cod(base) == cell.dst
            && a.level[0].is_hom_into(&b.level[1], t1)
            && a.level[1].is_hom_into(&b.level[2], t2))
    }

    fn dom(&self, _cat: &FiniteCategory, cell: &Cell) -> Result<MorId> {
        Ok(homotopy_parts(cell)?.0)
    }

    fn cod(&self, cat: &FiniteCategory, cell: &Cell) -> Result<MorId> {
        let (base, t1, t2) = homotopy_parts(cell)?;
        let a = complex_at(cat, cell.src)?;
        let b = complex_at(cat, cell.dst)?;
        let f = levels_of(cat, base)?;
        let g = cod_levels(&a, &b, &f, t1, t2);
        cat.intern_morphism(
            &format!("hend[{}]", cat.morphism_name(base)),
            cell.src,
            cell.dst,
            ExtMor::Chain(g),
        )
    }

    fn zero(&self, cat: &FiniteCategory, f: MorId) -> Result<Cell> {
        let a = complex_at(cat, cat.dom(f))?;
        let b = complex_at(cat, cat.cod(f))?;
        Ok(homotopy_cell(
            f,
            vec![b.level[1].unit; a.level[0].n],
            vec![b.level[2].unit; a.level[1].n],
            cat.dom(f),
            cat.cod(f),
        ))
    }

    fn vsum(&self, cat: &FiniteCategory, v: &Cell, u: &Cell) -> Result<Cell> {
        let (_, s1, s2) = homotopy_parts(v)?;
        let (base, t1, t2) = homotopy_parts(u)?;
        let b = complex_at(cat, u.dst)?;
        let sum1 = (0..t1.len()).map(|w| b.level[1].mul(s1[w], t1[w])).collect();
        let sum2 = (0..t2.len()).map(|w| b.level[2].mul(s2[w], t2[w])).collect();
        Ok(homotopy_cell(base, sum1, sum2, u.src, u.dst))
    }

    fn lwhisk(&self, cat: &FiniteCategory, g: MorId, y: &Cell) -> Result<Cell> {
        let (base, t1, t2) = homotopy_parts(y)?;
        let gl = levels_of(cat, g)?;
        Ok(homotopy_cell(
            cat.compose(g, base)?,
            t1.iter().map(|&v| gl[1][v]).collect(),
            t2.iter().map(|&v| gl[2][v]).collect(),
            y.src,
            cat.cod(g),
        ))
    }

    fn rwhisk(&self, cat: &FiniteCategory, x: &Cell, f: MorId) -> Result<Cell> {
        let (base, t1, t2) = homotopy_parts(x)?;
        let fl = levels_of(cat, f)?;
        Ok(homotopy_cell(
            cat.compose(base, f)?,
            fl[0].iter().map(|&v| t1[v]).collect(),
            fl[1].iter().map(|&v| t2[v]).collect(),
            cat.dom(f),
            x.dst,
        ))
    }

    fn inverse(&self, cat: &FiniteCategory, x: &Cell) -> Result<Cell> {
        let (_, t1, t2) = homotopy_parts(x)?;
        let b = complex_at(cat, x.dst)?;
        let cod = self.cod(cat, x)?;
        Ok(homotopy_cell(
            cod,
            t1.iter().map(|&v| b.level[1].inv(v)).collect(),
            t2.iter().map(|&v| b.level[2].inv(v)).collect(),
            x.src,
            x.dst,
        ))
    }

    fn describe(&self, cat: &FiniteCategory, cell: &Cell) -> String {
        match homotopy_parts(cell) {
            Ok((base, t1, t2)) => {
                format!("(t1{:?},t2{:?})@{}", t1, t2, cat.morphism_name(base))
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
        let (bx, x1, x2) = homotopy_parts(x)?;
        let (by, y1, y2) = homotopy_parts(y)?;
        let base = cat.pair_into(sq, bx, by)?;
        let level_pairs = cat.pullback_level_pairs(sq)?;
        let find = |level: usize, l: usize, r: usize| -> Result<usize> {
            level_pairs[level]
                .iter()
                .position(|&p| p == (l, r))
                .ok_or_else(|| {
                    SesqError::TypeMismatch(
                        "homotopy components do not meet in the pullback carrier".into(),
                    )
                })
        };
        let t1 = (0..x1.len())
            .map(|w| find(1, x1[w], y1[w]))
            .collect::<Result<Vec<usize>>>()?;
        let t2 = (0..x2.len())
            .map(|w| find(2, x2[w], y2[w]))
            .collect::<Result<Vec<usize>>>()?;
        Ok(homotopy_cell(base, t1, t2, x.src, sq.apex))
    }
}

/// Homotopy cells evaluated on demand over an extensional category whose
/// objects are complexes.
pub fn homotopies_over(cat: Arc<FiniteCategory>) -> Result<TwoCellStructure> {
    for o in cat.objects() {
        complex_at(&cat, o)?;
    }
    Ok(TwoCellStructure::from_lazy(cat, Box::new(HomotopyEngine)))
}

/// Closed form of the commutator of two composable homotopy cells
/// `x: (B,C)`, `y: (A,B)`: the endo-cell on `cod(x) . cod(y)` with
/// components `d t2 s1` and `-(t2 s1 d)`.
pub fn homotopy_commutator_closed_form(
    h: &TwoCellStructure,
    x: &Cell,
    y: &Cell,
) -> Result<Cell> {
    let (_, _, t2) = homotopy_parts(x)?;
    let (_, s1, _) = homotopy_parts(y)?;
    let a = complex_at(&h.cat, y.src)?;
    let c = complex_at(&h.cat, x.dst)?;
    let base = h.cat.compose(h.cod(x)?, h.cod(y)?)?;
    let t2s1: Vec<usize> = s1.iter().map(|&v| t2[v]).collect();
    let comp1: Vec<usize> = t2s1.iter().map(|&v| c.d2[v]).collect();
    let comp2: Vec<usize> = (0..a.level[1].n)
        .map(|w| c.level[2].inv(t2s1[a.d1[w]]))
        .collect();
    Ok(homotopy_cell(base, comp1, comp2, y.src, x.dst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets;
    use crate::cellstruct::validate_structure;
    use crate::naturality;

    #[test]
    fn f3_table_counts_and_validation() {
        let (cat, h) = super::super::fixtures::f3();
        let r = validate_structure(&h).unwrap();
        assert!(r.ok(), "{:?}", r.findings);
        assert_eq!(cat.morphism_count(), 4);
        assert_eq!(h.all_cells().unwrap().len(), 16);
        assert!(h.is_invertible_structure().unwrap());
        assert!(!naturality::is_two_category(&h).unwrap());
    }

    #[test]
    fn closed_form_matches_generic_commutator_on_f3() {
        let cx = presets::complex_z2_id_zero();
        let cat = Arc::new(FiniteCategory::ext(vec![(
            "C0".into(),
            ExtObject::Complex(cx.clone()),
        )]));
        let h = homotopies_over(cat.clone()).unwrap();
        let o = cat.objects()[0];
        let bases: Vec<MorId> = cat.hom(o, o).unwrap();
        let homs01 = enumerate_group_homs(&cx.level[0], &cx.level[1]);
        let homs12 = enumerate_group_homs(&cx.level[1], &cx.level[2]);
        let mut cells = Vec::new();
        for &b in &bases {
            for t1 in &homs01 {
                for t2 in &homs12 {
                    cells.push(homotopy_cell(b, t1.clone(), t2.clone(), o, o));
                }
            }
        }
        assert_eq!(cells.len(), 16);
        let mut nonzero = 0;
        for x in &cells {
            for y in &cells {
                let generic = naturality::commutator(&h, x, y).unwrap();
                let closed = homotopy_commutator_closed_form(&h, x, y).unwrap();
                assert_eq!(generic, closed, "x={:?} y={:?}", x.value, y.value);
                let zero = h.zero(h.dom(&generic).unwrap()).unwrap();
                if generic != zero {
                    nonzero += 1;
                }
            }
        }
        assert!(nonzero > 0);
    }

    #[test]
    fn identity_components_give_nonzero_commutator_on_f3() {
        let cx = presets::complex_z2_id_zero();
        let cat = Arc::new(FiniteCategory::ext(vec![(
            "C0".into(),
            ExtObject::Complex(cx),
        )]));
        let h = homotopies_over(cat.clone()).unwrap();
        let o = cat.objects()[0];
        let id = cat.identity(o).unwrap();
        let x = homotopy_cell(id, vec![0, 1], vec![0, 1], o, o);
        let k = naturality::commutator(&h, &x, &x).unwrap();
        let zero = h.zero(h.dom(&k).unwrap()).unwrap();
        assert_ne!(k, zero);
        match &k.value {
            CellValue::Homotopy { t1, t2, .. } => {
                assert_eq!(t1, &vec![0, 1]);
                assert_eq!(t2, &vec![0, 0]);
            }
            other => panic!("unexpected value {other:?}"),
        }
    }
}
