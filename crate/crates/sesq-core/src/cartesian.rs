//! Cartesianness of a 2-cell structure: whiskering by the projections of
//! a chosen pullback square must identify H(D, apex) with the compatible
//! pairs in H(D, A) x H(D, B), naturally in D. Product cells are the
//! mediators this bijection produces.

use std::collections::HashMap;

use crate::cellstruct::{Cell, TwoCellStructure};
use crate::fincat::PullbackSquare;
use crate::report::{Result, SesqError, ValidationReport};

/// The cell into the apex of `sq` whose projections are `x` and `y`.
/// Requires the compatibility `f.x = g.y`; on a table backend the cell is
/// found by exhaustive search and must be unique.
pub fn pair_cell(
    h: &TwoCellStructure,
    sq: &PullbackSquare,
    x: &Cell,
    y: &Cell,
) -> Result<Cell> {
    if x.src != y.src {
        return Err(SesqError::TypeMismatch(
            "paired cells must share their source object".into(),
        ));
    }
    let fx = h.lwhisker(sq.f, x)?;
    let gy = h.lwhisker(sq.g, y)?;
    if fx != gy {
        return Err(SesqError::TypeMismatch(format!(
            "cells do not agree over the cospan: {} vs {}",
            h.cell_name(&fx),
            h.cell_name(&gy)
        )));
    }
    if h.is_lazy() {
        return h.lazy()?.pair_into_pullback(&h.cat, sq, x, y);
    }
    let mut found = None;
    for u in h.cells_between(x.src, sq.apex)? {
        if &h.lwhisker(sq.p1, &u)? == x && &h.lwhisker(sq.p2, &u)? == y {
            if found.is_some() {
                return Err(SesqError::NotCartesian(format!(
                    "several cells project to ({}, {})",
                    h.cell_name(x),
                    h.cell_name(y)
                )));
            }
            found = Some(u);
        }
    }
    found.ok_or_else(|| {
        SesqError::NotCartesian(format!(
            "no cell projects to ({}, {})",
            h.cell_name(x),
            h.cell_name(y)
        ))
    })
}

/// Checks the pullback-preservation property for every object and every
/// cospan of the base category: projection whiskering out of each chosen
/// pullback square must be a bijection onto the compatible pairs,
/// commuting with restriction. Cospans without a pullback are reported,
/// not fatal. Requires an enumerated backend.
pub fn is_cartesian(h: &TwoCellStructure) -> Result<ValidationReport> {
    let cat = &h.cat;
    let mut report = ValidationReport::new();
    let _ = h.table()?;
    for f in cat.morphisms() {
        for g in cat.morphisms() {
            if cat.cod(f) != cat.cod(g) {
                continue;
            }
            let sq = match cat.pullback(f, g) {
                Ok(sq) => sq,
                Err(SesqError::NoPullback(w)) => {
                    report.push(
                        "missing-pullback",
                        vec![cat.morphism_name(f), cat.morphism_name(g)],
                        format!("cospan has no pullback: {w}"),
                    );
                    continue;
                }
                Err(e) => return Err(e),
            };
            check_square(h, &sq, &mut report)?;
        }
    }
    Ok(report)
}

fn check_square(
    h: &TwoCellStructure,
    sq: &PullbackSquare,
    report: &mut ValidationReport,
) -> Result<()> {
    let cat = &h.cat;
    let square_name = format!(
        "({}; {}, {} over {}, {})",
        cat.object_name(sq.apex),
        cat.morphism_name(sq.p1),
        cat.morphism_name(sq.p2),
        cat.morphism_name(sq.f),
        cat.morphism_name(sq.g)
    );
    let a = cat.dom(sq.f);
    let b = cat.dom(sq.g);
    for d in cat.objects() {
        let mut image: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for u in h.cells_between(d, sq.apex)? {
            let px = h.lwhisker(sq.p1, &u)?;
            let py = h.lwhisker(sq.p2, &u)?;
            image
                .entry((px.idx()?, py.idx()?))
                .or_default()
                .push(u.idx()?);
        }
        for us in image.values() {
            if us.len() > 1 {
                report.push(
                    "pair-injective",
                    vec![
                        square_name.clone(),
                        cat.object_name(d),
                        h.cell_name(&h.cell(us[0])?),
                        h.cell_name(&h.cell(us[1])?),
                    ],
                    "distinct cells share both projections".into(),
                );
            }
        }
        for x in h.cells_between(d, a)? {
            for y in h.cells_between(d, b)? {
                if h.lwhisker(sq.f, &x)? != h.lwhisker(sq.g, &y)? {
                    continue;
                }
                let key = (x.idx()?, y.idx()?);
                let Some(us) = image.get(&key) else {
                    report.push(
                        "pair-missing",
                        vec![
                            square_name.clone(),
                            cat.object_name(d),
                            h.cell_name(&x),
                            h.cell_name(&y),
                        ],
                        "no cell into the apex projects to this compatible pair".into(),
                    );
                    continue;
                };
                // The mediator must commute with restriction along every
                // morphism into d.
                let u = h.cell(us[0])?;
                for m in cat.morphisms() {
                    if cat.cod(m) != d {
                        continue;
                    }
                    let uh = h.rwhisker(&u, m)?;
                    if h.lwhisker(sq.p1, &uh)? != h.rwhisker(&x, m)?
                        || h.lwhisker(sq.p2, &uh)? != h.rwhisker(&y, m)?
                    {
                        report.push(
                            "pair-natural",
                            vec![
                                square_name.clone(),
                                cat.object_name(d),
                                cat.morphism_name(m),
                                h.cell_name(&u),
                            ],
                            "restricting the mediator differs from mediating the restrictions"
                                .into(),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

/// The induced cell between pullback apexes: for `x` in `H(A',A)`,
/// `y` in `H(B',B)` and `z` in `H(C',C)` compatible with the two squares
/// (`f.x = z.f'` and `g.y = z.g'`), the unique `w` with `p1.w = x.p1'`
/// and `p2.w = y.p2'`.
pub fn product_cell(
    h: &TwoCellStructure,
    sq: &PullbackSquare,
    sq_prime: &PullbackSquare,
    x: &Cell,
    z: &Cell,
    y: &Cell,
) -> Result<Cell> {
    let cat = &h.cat;
    let typing = [
        (cat.dom(sq.f), x.dst),
        (cat.dom(sq.g), y.dst),
        (cat.cod(sq.f), z.dst),
        (cat.dom(sq_prime.f), x.src),
        (cat.dom(sq_prime.g), y.src),
        (cat.cod(sq_prime.f), z.src),
    ];
    if typing.iter().any(|(have, want)| have != want) {
        return Err(SesqError::TypeMismatch(
            "cells are not typed by the two squares".into(),
        ));
    }
    if h.lwhisker(sq.f, x)? != h.rwhisker(z, sq_prime.f)? {
        return Err(SesqError::TypeMismatch(
            "left compatibility f.x = z.f' fails".into(),
        ));
    }
    if h.lwhisker(sq.g, y)? != h.rwhisker(z, sq_prime.g)? {
        return Err(SesqError::TypeMismatch(
            "right compatibility g.y = z.g' fails".into(),
        ));
    }
    let xp = h.rwhisker(x, sq_prime.p1)?;
    let yp = h.rwhisker(y, sq_prime.p2)?;
    pair_cell(h, sq, &xp, &yp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellstruct::{TableCells, TwoCellStructure};
    use crate::constructions::fixtures::{diamond_discrete, diamond_poset};
    use crate::constructions::{codiscrete, discrete};
    use crate::fincat::{FiniteCategory, TableCatBuilder};
    use std::collections::HashMap;
    use std::sync::Arc;

    #[test]
    fn discrete_over_diamond_is_cartesian() {
        let h = diamond_discrete();
        let report = is_cartesian(&h).unwrap();
        assert!(report.ok(), "{report}");
    }

    #[test]
    fn codiscrete_over_diamond_is_cartesian() {
        let h = codiscrete(Arc::new(diamond_poset())).unwrap();
        let report = is_cartesian(&h).unwrap();
        assert!(report.ok(), "{report}");
    }

    fn cospan_without_apex() -> Arc<FiniteCategory> {
        let mut b = TableCatBuilder::new();
        let a = b.object("A");
        let bb = b.object("B");
        let c = b.object("C");
        for o in [a, bb, c] {
            b.identity(o);
        }
        b.morphism("f", a, c);
        b.morphism("g", bb, c);
        b.close_identities();
        Arc::new(b.build())
    }

    #[test]
    fn missing_pullbacks_are_reported_not_fatal() {
        let cat = cospan_without_apex();
        let h = discrete(cat).unwrap();
        let report = is_cartesian(&h).unwrap();
        assert!(!report.ok());
        assert!(report.findings.iter().any(|f| f.axiom == "missing-pullback"
            && f.witnesses == vec!["f".to_string(), "g".to_string()]));
        // Every finding is about the absent apex, not a bijection failure.
        assert!(report
            .findings
            .iter()
            .all(|f| f.axiom == "missing-pullback"));
    }

    /// Discrete cells over the diamond with the cell on `id_bot` removed.
    /// `bot` is the chosen pullback apex of the cospan `(lt, rt)`, so the
    /// compatible pair of cells on `(bl, br)` loses its mediator.
    fn diamond_discrete_without_bottom_cell() -> TwoCellStructure {
        let cat = Arc::new(diamond_poset());
        let id_bot = cat.identity(cat.object_named("bot").unwrap()).unwrap();
        let mut cells = TableCells::default();
        let mut kept: HashMap<usize, usize> = HashMap::new();
        for m in cat.morphisms() {
            if m == id_bot {
                continue;
            }
            let i = cells.names.len();
            kept.insert(m.0, i);
            cells.names.push(format!("0_{}", cat.morphism_name(m)));
            cells.src.push(cat.dom(m).0);
            cells.dst.push(cat.cod(m).0);
            cells.dom.push(m);
            cells.cod.push(m);
            cells.zero.insert(m.0, i);
            cells.vsum.insert((i, i), i);
        }
        for f in cat.morphisms() {
            for g in cat.morphisms() {
                if cat.cod(f) != cat.dom(g) {
                    continue;
                }
                let gf = cat.compose(g, f).unwrap();
                let Some(&cgf) = kept.get(&gf.0) else {
                    continue;
                };
                if let Some(&cf) = kept.get(&f.0) {
                    cells.lwhisk.insert((g.0, cf), cgf);
                }
                if let Some(&cg) = kept.get(&g.0) {
                    cells.rwhisk.insert((cg, f.0), cgf);
                }
            }
        }
        TwoCellStructure::from_table(cat, cells)
    }

    #[test]
    fn deleted_apex_cell_breaks_cartesianness_with_witness() {
        let h = diamond_discrete_without_bottom_cell();
        let report = is_cartesian(&h).unwrap();
        let missing: Vec<_> = report
            .findings
            .iter()
            .filter(|f| f.axiom == "pair-missing")
            .collect();
        assert!(!missing.is_empty());
        assert!(missing
            .iter()
            .any(|f| f.witnesses.iter().any(|w| w.contains("0_bl"))
                && f.witnesses.iter().any(|w| w.contains("0_br"))));
    }

    #[test]
    fn pair_cell_is_the_unique_mediator_and_restricts_well() {
        let h = diamond_discrete();
        let cat = &h.cat;
        let lt = cat.morphism_named("lt").unwrap();
        let rt = cat.morphism_named("rt").unwrap();
        let sq = cat.pullback(lt, rt).unwrap();
        let bl = cat.morphism_named("bl").unwrap();
        let br = cat.morphism_named("br").unwrap();
        let x = h.zero(bl).unwrap();
        let y = h.zero(br).unwrap();
        let u = pair_cell(&h, &sq, &x, &y).unwrap();
        assert_eq!(h.lwhisker(sq.p1, &u).unwrap(), x);
        assert_eq!(h.lwhisker(sq.p2, &u).unwrap(), y);
        // Uniqueness: every other cell into the apex misses the pair.
        for v in h.cells_between(x.src, sq.apex).unwrap() {
            if v != u {
                assert!(
                    h.lwhisker(sq.p1, &v).unwrap() != x || h.lwhisker(sq.p2, &v).unwrap() != y
                );
            }
        }
    }

    #[test]
    fn product_cell_rejects_incompatible_cells() {
        let h = diamond_discrete();
        let cat = &h.cat;
        let lt = cat.morphism_named("lt").unwrap();
        let rt = cat.morphism_named("rt").unwrap();
        let sq = cat.pullback(lt, rt).unwrap();
        let bl = cat.morphism_named("bl").unwrap();
        let x = h.zero(bl).unwrap();
        let z = h.zero(cat.morphism_named("bt").unwrap()).unwrap();
        let err = product_cell(&h, &sq, &sq, &x, &z, &x).unwrap_err();
        assert!(matches!(err, SesqError::TypeMismatch(_)));
    }

    #[test]
    fn product_cell_of_homotopies_matches_brute_force_search() {
        use crate::algebra::{presets, GroupTable};
        use crate::cellstruct::{Cell, CellValue};
        use crate::constructions::homotopies_over;
        use crate::fincat::{ExtMor, ExtObject};

        let cat = Arc::new(FiniteCategory::ext(vec![(
            "C".into(),
            ExtObject::Complex(presets::complex_z2_id_zero()),
        )]));
        let h = homotopies_over(cat.clone()).unwrap();
        assert!(is_cartesian(&h).is_err(), "lazy backends are not enumerable");

        let c = cat.objects()[0];
        let id = cat.identity(c).unwrap();
        let z0 = cat
            .intern_morphism("z", c, c, ExtMor::Chain([vec![0, 0], vec![0, 0], vec![0, 0]]))
            .unwrap();
        let sq = cat.pullback(z0, z0).unwrap();

        let cell = |base, t1, t2| Cell {
            src: c,
            dst: c,
            value: CellValue::Homotopy { base, t1, t2 },
        };
        let x = cell(id, vec![0, 1], vec![0, 0]);
        let y = cell(id, vec![0, 0], vec![0, 1]);
        let z = h.zero(z0).unwrap();
        let w = product_cell(&h, &sq, &sq, &x, &z, &y).unwrap();
        let xp = h.rwhisker(&x, sq.p1).unwrap();
        let yp = h.rwhisker(&y, sq.p2).unwrap();
        assert_eq!(h.lwhisker(sq.p1, &w).unwrap(), xp);
        assert_eq!(h.lwhisker(sq.p2, &w).unwrap(), yp);

        // Independent uniqueness check: enumerate every homotopy cell on
        // the apex and count those with the same projections.
        let ExtObject::Complex(cp) = cat.ext_object(sq.apex).unwrap() else {
            panic!("apex carries a complex");
        };
        let homs = |a: &GroupTable, b: &GroupTable| crate::algebra::enumerate_group_homs(a, b);
        let mut bases = Vec::new();
        for f2 in homs(&cp.level[2], &cp.level[2]) {
            for f1 in homs(&cp.level[1], &cp.level[1]) {
                if (0..cp.level[2].n).any(|v| f1[cp.d2[v]] != cp.d2[f2[v]]) {
                    continue;
                }
                for f0 in homs(&cp.level[0], &cp.level[0]) {
                    if (0..cp.level[1].n).any(|v| f0[cp.d1[v]] != cp.d1[f1[v]]) {
                        continue;
                    }
                    let m = cat
                        .intern_morphism(
                            "cand",
                            sq.apex,
                            sq.apex,
                            ExtMor::Chain([f0.clone(), f1.clone(), f2.clone()]),
                        )
                        .unwrap();
                    bases.push(m);
                }
            }
        }
        let mut hits = Vec::new();
        for &base in &bases {
            for t1 in homs(&cp.level[0], &cp.level[1]) {
                for t2 in homs(&cp.level[1], &cp.level[2]) {
                    let u = Cell {
                        src: sq.apex,
                        dst: sq.apex,
                        value: CellValue::Homotopy {
                            base,
                            t1: t1.clone(),
                            t2: t2.clone(),
                        },
                    };
                    if h.lwhisker(sq.p1, &u).unwrap() == xp
                        && h.lwhisker(sq.p2, &u).unwrap() == yp
                    {
                        hits.push(u);
                    }
                }
            }
        }
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0], w);
    }

    #[test]
    fn product_cell_on_discrete_diamond_is_the_paired_zero() {
        let h = diamond_discrete();
        let cat = &h.cat;
        let lt = cat.morphism_named("lt").unwrap();
        let rt = cat.morphism_named("rt").unwrap();
        let sq = cat.pullback(lt, rt).unwrap();
        let id_l = cat.identity(cat.object_named("l").unwrap()).unwrap();
        let id_r = cat.identity(cat.object_named("r").unwrap()).unwrap();
        let id_top = cat.identity(cat.object_named("top").unwrap()).unwrap();
        let x = h.zero(id_l).unwrap();
        let y = h.zero(id_r).unwrap();
        let z = h.zero(id_top).unwrap();
        let w = product_cell(&h, &sq, &sq, &x, &z, &y).unwrap();
        // dom of the product is the mediator of the restricted doms.
        let expect = cat
            .pair_into(
                &sq,
                cat.compose(h.dom(&x).unwrap(), sq.p1).unwrap(),
                cat.compose(h.dom(&y).unwrap(), sq.p2).unwrap(),
            )
            .unwrap();
        assert_eq!(h.dom(&w).unwrap(), expect);
        assert_eq!(h.cod(&w).unwrap(), expect);
    }
}
