//! Transformation cells between internal functors.
//!
//! A cell `h => k` between functors of internal categories is a component
//! map `t` sending each source object `w` to a target arrow
//! `t(w): h0(w) -> k0(w)`. Naturality is not part of membership; it is the
//! separate condition `m(k1(u), t(d u)) = m(t(c u), h1(u))`, which is
//! exactly ordinary naturality against the cell of the arrow carrier.

use std::sync::Arc;

use crate::algebra::{IntCatCarrier, ENUM_CAP};
use crate::cellstruct::{Cell, CellValue, LazyCells, TwoCellStructure};
use crate::fincat::{ExtMor, ExtObject, FiniteCategory, MorId, ObjId, PullbackSquare};
use crate::report::{Result, SesqError};

fn internal_parts(cell: &Cell) -> Result<(MorId, &[usize], MorId)> {
    match &cell.value {
        CellValue::Internal { k, t, h } => Ok((*k, t, *h)),
        _ => Err(SesqError::ShapeMismatch(
            "expected an internal transformation cell".into(),
        )),
    }
}

fn intcat_at(cat: &FiniteCategory, o: ObjId) -> Result<IntCatCarrier> {
    match cat.ext_object(o)? {
        ExtObject::IntCat(c) => Ok(c),
        other => Err(SesqError::TypeMismatch(format!(
            "transformation cells need internal-category carriers, object is {}",
            other.kind()
        ))),
    }
}

fn functor_of(cat: &FiniteCategory, m: MorId) -> Result<(Vec<usize>, Vec<usize>)> {
    match cat.ext_mor(m)? {
        ExtMor::Functor { f1, f0 } => Ok((f1, f0)),
        _ => Err(SesqError::ShapeMismatch(
            "morphism is not an internal functor".into(),
        )),
    }
}

fn internal_cell(k: MorId, t: Vec<usize>, h: MorId, src: ObjId, dst: ObjId) -> Cell {
    Cell {
        src,
        dst,
        value: CellValue::Internal { k, t, h },
    }
}

/// Lazy evaluator for transformation cells over an extensional category of
/// internal categories.
#[derive(Debug)]
pub struct IntTransEngine;

impl LazyCells for IntTransEngine {
    fn backend_name(&self) -> &'static str {
        "internal-transformations"
    }

    fn contains(&self, cat: &FiniteCategory, cell: &Cell) -> Result<bool> {
        let (k, t, h) = internal_parts(cell)?;
        let a = intcat_at(cat, cell.src)?;
        let b = intcat_at(cat, cell.dst)?;
        if cat.dom(h) != cell.src
            || cat.cod(h) != cell.dst
            || cat.dom(k) != cell.src
            || cat.cod(k) != cell.dst
        {
            return Ok(false);
        }
        let (_, h0) = functor_of(cat, h)?;
        let (_, k0) = functor_of(cat, k)?;
        Ok(t.len() == a.c0
            && t.iter().all(|&u| u < b.c1)
            && (0..a.c0).all(|w| b.d[t[w]] == h0[w] && b.c[t[w]] == k0[w]))
    }

    fn dom(&self, _cat: &FiniteCategory, cell: &Cell) -> Result<MorId> {
        Ok(internal_parts(cell)?.2)
    }

    fn cod(&self, _cat: &FiniteCategory, cell: &Cell) -> Result<MorId> {
        Ok(internal_parts(cell)?.0)
    }

    fn zero(&self, cat: &FiniteCategory, f: MorId) -> Result<Cell> {
        let b = intcat_at(cat, cat.cod(f))?;
        let (_, f0) = functor_of(cat, f)?;
        let t = f0.iter().map(|&w| b.e[w]).collect();
        Ok(internal_cell(f, t, f, cat.dom(f), cat.cod(f)))
    }

    fn vsum(&self, cat: &FiniteCategory, v: &Cell, u: &Cell) -> Result<Cell> {
        let (k, tv, _) = internal_parts(v)?;
        let (_, tu, l) = internal_parts(u)?;
        let b = intcat_at(cat, u.dst)?;
        let t = (0..tu.len())
            .map(|w| {
                b.m.get(&(tv[w], tu[w])).copied().ok_or_else(|| {
                    SesqError::NotComposable(format!(
                        "target arrows at object {w} do not compose"
                    ))
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(internal_cell(k, t, l, u.src, u.dst))
    }

    fn lwhisk(&self, cat: &FiniteCategory, g: MorId, y: &Cell) -> Result<Cell> {
        let (k, t, h) = internal_parts(y)?;
        let (g1, _) = functor_of(cat, g)?;
        Ok(internal_cell(
            cat.compose(g, k)?,
            t.iter().map(|&u| g1[u]).collect(),
            cat.compose(g, h)?,
            y.src,
            cat.cod(g),
        ))
    }

    fn rwhisk(&self, cat: &FiniteCategory, x: &Cell, f: MorId) -> Result<Cell> {
        let (k, t, h) = internal_parts(x)?;
        let (_, f0) = functor_of(cat, f)?;
        Ok(internal_cell(
            cat.compose(k, f)?,
            f0.iter().map(|&w| t[w]).collect(),
            cat.compose(h, f)?,
            cat.dom(f),
            x.dst,
        ))
    }

    fn inverse(&self, cat: &FiniteCategory, x: &Cell) -> Result<Cell> {
        let (k, t, h) = internal_parts(x)?;
        let b = intcat_at(cat, x.dst)?;
        let mut inv = Vec::with_capacity(t.len());
        for &u in t {
            let candidate = (0..b.c1).find(|&v| {
                b.m.get(&(v, u)).copied() == Some(b.e[b.d[u]])
                    && b.m.get(&(u, v)).copied() == Some(b.e[b.c[u]])
            });
            match candidate {
                Some(v) => inv.push(v),
                None => {
                    return Err(SesqError::NotInvertible(format!(
                        "component arrow {u} has no inverse"
                    )))
                }
            }
        }
        Ok(internal_cell(h, inv, k, x.src, x.dst))
    }

    fn describe(&self, cat: &FiniteCategory, cell: &Cell) -> String {
        match internal_parts(cell) {
            Ok((k, t, h)) => format!(
                "({}=>{};t{:?})",
                cat.morphism_name(h),
                cat.morphism_name(k),
                t
            ),
            Err(_) => format!("{:?}", cell.value),
        }
    }

    fn pair_into_pullback(
        &self,
        _cat: &FiniteCategory,
        _sq: &PullbackSquare,
        _x: &Cell,
        _y: &Cell,
    ) -> Result<Cell> {
        Err(SesqError::UnsupportedBackend(
            "pairing into pullbacks is not available for transformation cells".into(),
        ))
    }
}

/// The extensional category of the given internal categories with all
/// internal functors, with transformation cells evaluated on demand.
pub fn internal_transformations(
    cats: &[IntCatCarrier],
) -> Result<(Arc<FiniteCategory>, TwoCellStructure)> {
    if cats.is_empty() {
        return Err(SesqError::InvalidPresentation(
            "no internal categories given".into(),
        ));
    }
    let objects: Vec<(String, ExtObject)> = cats
        .iter()
        .enumerate()
        .map(|(i, c)| (format!("A{i}"), ExtObject::IntCat(c.clone())))
        .collect();
    let cat = Arc::new(FiniteCategory::ext(objects));
    let h = TwoCellStructure::from_lazy(cat.clone(), Box::new(IntTransEngine));
    Ok((cat, h))
}

/// Finds or registers the arrow carrier of `a` and returns the cell whose
/// naturality test reproduces internal naturality.
pub fn arrow_cell(h: &TwoCellStructure, a: ObjId) -> Result<Cell> {
    let cat = &h.cat;
    let carrier = intcat_at(cat, a)?;
    let arrow = carrier.arrow_category();
    let arrow_obj = ExtObject::IntCat(arrow.clone());
    let existing = cat
        .objects()
        .into_iter()
        .find(|&o| cat.ext_object(o).ok().as_ref() == Some(&arrow_obj));
    let ao = match existing {
        Some(o) => o,
        None => cat.add_ext_object(&format!("{}~arrow", cat.object_name(a)), arrow_obj)?,
    };
    let dl = cat.intern_morphism(
        &format!("{}~dom", cat.object_name(a)),
        ao,
        a,
        ExtMor::Functor {
            f1: carrier.d.iter().map(|&w| carrier.e[w]).collect(),
            f0: carrier.d.clone(),
        },
    )?;
    let cl = cat.intern_morphism(
        &format!("{}~cod", cat.object_name(a)),
        ao,
        a,
        ExtMor::Functor {
            f1: carrier.c.iter().map(|&w| carrier.e[w]).collect(),
            f0: carrier.c.clone(),
        },
    )?;
    Ok(internal_cell(cl, (0..carrier.c1).collect(), dl, ao, a))
}

/// The internal naturality equation for a transformation cell:
/// both pastings of the component map against the carriers' composition
/// agree on every source arrow.
pub fn is_internal_natural(h: &TwoCellStructure, cell: &Cell) -> Result<bool> {
    let (k, t, hm) = internal_parts(cell)?;
    let a = intcat_at(&h.cat, cell.src)?;
    let b = intcat_at(&h.cat, cell.dst)?;
    let (h1, _) = functor_of(&h.cat, hm)?;
    let (k1, _) = functor_of(&h.cat, k)?;
    for u in 0..a.c1 {
        let left = b.m.get(&(k1[u], t[a.d[u]])).copied();
        let right = b.m.get(&(t[a.c[u]], h1[u])).copied();
        if left.is_none() || left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Enumerates every transformation cell between two carriers. The lazy
/// backend never enumerates on its own; this is the construction-specific
/// listing used by exhaustive checks.
pub fn all_internal_cells(h: &TwoCellStructure, a: ObjId, b: ObjId) -> Result<Vec<Cell>> {
    let cat = &h.cat;
    let ca = intcat_at(cat, a)?;
    let cb = intcat_at(cat, b)?;
    let total = (cb.c1 as u64)
        .checked_pow(ca.c0 as u32)
        .unwrap_or(u64::MAX);
    if total > ENUM_CAP {
        return Err(SesqError::TooLarge(format!(
            "{}^{} component maps exceed the enumeration cap",
            cb.c1, ca.c0
        )));
    }
    let functors = cat.hom(a, b)?;
    let mut out = Vec::new();
    for &hm in &functors {
        let (_, h0) = functor_of(cat, hm)?;
        for &k in &functors {
            let (_, k0) = functor_of(cat, k)?;
            // Componentwise choices: t(w) ranges over arrows h0(w) -> k0(w).
            let choices: Vec<Vec<usize>> = (0..ca.c0)
                .map(|w| {
                    (0..cb.c1)
                        .filter(|&u| cb.d[u] == h0[w] && cb.c[u] == k0[w])
                        .collect()
                })
                .collect();
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            let mut stack = vec![Vec::new()];
            for w in 0..ca.c0 {
                let prev = std::mem::take(&mut stack);
                for t in prev {
                    for &u in &choices[w] {
                        let mut t2 = t.clone();
                        t2.push(u);
                        stack.push(t2);
                    }
                }
            }
            for t in stack {
                out.push(internal_cell(k, t, hm, a, b));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets;
    use crate::naturality;

    #[test]
    fn z2_loop_transformations_match_group_conjugation() {
        let (cat, h) = internal_transformations(&[presets::intcat_z2_loop()]).unwrap();
        let o = cat.objects()[0];
        // Endofunctors of the one-object Z2 groupoid are the two group
        // endomorphisms; component maps pick one group element each.
        let endos = cat.hom(o, o).unwrap();
        assert_eq!(endos.len(), 2);
        let cells = all_internal_cells(&h, o, o).unwrap();
        assert_eq!(cells.len(), 8);
        for c in &cells {
            assert!(h.lazy().unwrap().contains(&cat, c).unwrap());
            // One-object groupoid: every transformation has an inverse.
            h.inverse(c).unwrap();
        }
        // Cells whose endpoints agree as the conjugation structure forces
        // (Z2 is abelian, so cod = dom there) biject with the conjugation
        // cells: one per (group element, endomorphism) pair.
        let (_gcat, gh) = super::super::grp_conjugation(&[presets::cyclic(2)]).unwrap();
        let conj_cells = gh.all_cells().unwrap();
        assert!(conj_cells
            .iter()
            .all(|c| gh.dom(c).unwrap() == gh.cod(c).unwrap()));
        let matching: Vec<&Cell> = cells
            .iter()
            .filter(|c| h.dom(c).unwrap() == h.cod(c).unwrap())
            .collect();
        assert_eq!(matching.len(), conj_cells.len());
        assert_eq!(matching.len(), 4);
    }

    #[test]
    fn arrow_cell_naturality_matches_internal_naturality() {
        let (cat, h) = internal_transformations(&[presets::intcat_z2_loop()]).unwrap();
        let o = cat.objects()[0];
        let ac = arrow_cell(&h, o).unwrap();
        assert!(h.lazy().unwrap().contains(&cat, &ac).unwrap());
        let cells = all_internal_cells(&h, o, o).unwrap();
        let mut natural = 0;
        for x in &cells {
            let direct = is_internal_natural(&h, x).unwrap();
            let via_arrow = naturality::natural_wrt(&h, x, &ac).unwrap();
            assert_eq!(direct, via_arrow, "{}", h.cell_name(x));
            if direct {
                natural += 1;
            }
        }
        // Naturality over the abelian loop forces equal endpoints, and any
        // component then works: half the cells qualify.
        assert_eq!(natural, 4);
    }

    #[test]
    fn walking_arrow_has_nonnatural_candidates_filtered_by_shape() {
        let (cat, h) = internal_transformations(&[presets::intcat_arrow()]).unwrap();
        let o = cat.objects()[0];
        let cells = all_internal_cells(&h, o, o).unwrap();
        assert!(!cells.is_empty());
        let ac = arrow_cell(&h, o).unwrap();
        for x in &cells {
            assert_eq!(
                is_internal_natural(&h, x).unwrap(),
                naturality::natural_wrt(&h, x, &ac).unwrap()
            );
        }
    }

    #[test]
    fn arrow_object_is_registered_once() {
        let (cat, h) = internal_transformations(&[presets::intcat_z2_loop()]).unwrap();
        let o = cat.objects()[0];
        let a1 = arrow_cell(&h, o).unwrap();
        let before = cat.object_count();
        let a2 = arrow_cell(&h, o).unwrap();
        assert_eq!(before, cat.object_count());
        assert_eq!(a1, a2);
    }
}
