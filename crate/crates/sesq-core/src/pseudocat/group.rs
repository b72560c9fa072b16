//! Pseudocategory built from a crossed-module presentation.
//!
//! Given a crossed module `(X, B, bd, act)` and a central element `delta`
//! of `X` killed by the boundary, the construction puts the semidirect
//! product `X x| B` over `B` as an object of morphisms, with multiplication
//! twisted by `delta`:
//!
//! `m((x', a), (x, b)) = (x' * x * delta^-1 * (b . delta), b)`.
//!
//! For `delta` the unit this is the strict internal category of the
//! crossed module; other choices bend the unit laws, and the conjugation
//! cell by `(delta, 1)` corrects both of them.  The associator stays zero
//! because `b . delta` is central for every `b`.

use std::sync::Arc;

use super::{assemble, induced_maps, Association, PseudocategoryData};
use crate::algebra::{GroupTable, XModPresentation};
use crate::cellstruct::{Cell, CellValue, TwoCellStructure};
use crate::constructions::conjugation_over;
use crate::fincat::{ExtMor, ExtObject, FiniteCategory};
use crate::report::{Result, SesqError};

/// Builds the pseudocategory of a crossed-module presentation twisted by
/// `delta`, over the conjugation cell structure of the ambient category.
///
/// Rejects `delta` outside the kernel of the boundary or outside the
/// centre of `X` with `BuildRejected`; the presentation itself is
/// revalidated afterwards so hand-assembled records cannot smuggle in a
/// broken action.
pub fn build_group_pseudocategory(
    xm: &XModPresentation,
    delta: usize,
) -> Result<(Arc<FiniteCategory>, TwoCellStructure, PseudocategoryData)> {
    let x = &xm.x;
    let b = &xm.b;
    if delta >= x.n {
        return Err(SesqError::UnknownId(format!(
            "delta index {delta} is out of range for a group of order {}",
            x.n
        )));
    }
    if xm.d.get(delta).copied() != Some(b.unit) {
        return Err(SesqError::BuildRejected(format!(
            "delta {} is not in the kernel of the boundary",
            x.names[delta]
        )));
    }
    if (0..x.n).any(|y| x.mul(delta, y) != x.mul(y, delta)) {
        return Err(SesqError::BuildRejected(format!(
            "delta {} is not central",
            x.names[delta]
        )));
    }
    XModPresentation::new(x.clone(), b.clone(), xm.d.clone(), xm.act.clone())?;

    let g = GroupTable::semidirect(x, b, &xm.act)?;
    let bn = b.n;
    let idx = |xe: usize, be: usize| xe * bn + be;
    let cat = Arc::new(FiniteCategory::ext(vec![
        ("B".to_string(), ExtObject::Group(b.clone())),
        ("G".to_string(), ExtObject::Group(g)),
    ]));
    let b_obj = cat.object_named("B").expect("object was just added");
    let g_obj = cat.object_named("G").expect("object was just added");
    let n1 = x.n * bn;
    let d_graph: Vec<usize> = (0..n1).map(|i| i % bn).collect();
    let c_graph: Vec<usize> = (0..n1).map(|i| b.mul(xm.d[i / bn], i % bn)).collect();
    let e_graph: Vec<usize> = (0..bn).map(|be| idx(x.unit, be)).collect();
    let d = cat.intern_morphism("d", g_obj, b_obj, ExtMor::Fn(d_graph))?;
    let c = cat.intern_morphism("c", g_obj, b_obj, ExtMor::Fn(c_graph))?;
    let e = cat.intern_morphism("e", b_obj, g_obj, ExtMor::Fn(e_graph))?;
    let sq2 = cat.pullback(d, c)?;
    // The twist lands back in the same fibre: both delta factors are
    // central, so the graph is still a homomorphism.
    let m_graph: Vec<usize> = cat
        .pullback_pairs(&sq2)?
        .iter()
        .map(|&(l, r)| {
            let xo = l / bn;
            let (xi, bi) = (r / bn, r % bn);
            let prod = x.mul(x.mul(x.mul(xo, xi), x.inv(delta)), xm.act[bi][delta]);
            idx(prod, bi)
        })
        .collect();
    let m = cat.intern_morphism("m", sq2.apex, g_obj, ExtMor::Fn(m_graph))?;

    let h = conjugation_over(cat.clone())?;
    let maps = induced_maps(&cat, Association::LeftNested, d, c, e, m)?;
    let mm1 = cat.compose(m, maps.m1)?;
    let me1 = cat.compose(m, maps.e1)?;
    let me2 = cat.compose(m, maps.e2)?;
    let alpha = h.zero(mm1)?;
    let corrector = |base| Cell {
        src: g_obj,
        dst: g_obj,
        value: CellValue::Elem {
            t: idx(delta, b.unit),
            base,
        },
    };
    let data = assemble(&h, d, c, e, m, alpha, corrector(me2), corrector(me1))?;
    Ok((cat, h, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naturality::eval_chain;
    use crate::pseudocat::{check_pseudocategory, CheckMode};
    use crate::algebra::presets;

    #[test]
    fn zero_delta_gives_a_strict_internal_category() {
        let xm = presets::xmod_by_name("z2triv").unwrap();
        let (_, h, data) = build_group_pseudocategory(&xm, xm.x.unit).unwrap();
        let zero = h.zero(h.cat.identity(data.maps.c1).unwrap()).unwrap();
        assert_eq!(data.lambda, zero);
        assert_eq!(data.rho, zero);
        let probes = [data.lambda.clone(), data.rho.clone()];
        for mode in [CheckMode::Natural, CheckMode::NonNatural] {
            let report = check_pseudocategory(&h, &data, mode, &probes).unwrap();
            assert!(report.ok(), "{mode:?}: {report}");
        }
    }

    #[test]
    fn central_twist_of_z2_checks() {
        let xm = presets::xmod_by_name("z2triv").unwrap();
        let (_, h, data) = build_group_pseudocategory(&xm, 1).unwrap();
        let zero = h.zero(h.cat.identity(data.maps.c1).unwrap()).unwrap();
        assert_ne!(data.lambda, zero, "the twist must show up in the unit cells");
        let report = check_pseudocategory(&h, &data, CheckMode::NonNatural, &[]).unwrap();
        assert!(report.ok(), "{report}");
    }

    #[test]
    fn inversion_twist_of_z3_checks_and_bends_the_units() {
        let xm = presets::xmod_by_name("z3inv").unwrap();
        let (cat, h, data) = build_group_pseudocategory(&xm, 1).unwrap();
        let me1 = cat.compose(data.m, data.maps.e1).unwrap();
        let id1 = cat.identity(data.maps.c1).unwrap();
        assert_ne!(me1, id1, "the unit composite must move");
        match cat.ext_mor(me1).unwrap() {
            ExtMor::Fn(graph) => {
                // In the nontrivial fibre the composite adds the twist:
                // (x, 1) -> (x + 1, 1).
                let bn = xm.b.n;
                for xe in 0..xm.x.n {
                    assert_eq!(graph[xe * bn + 1], ((xe + 1) % 3) * bn + 1);
                    assert_eq!(graph[xe * bn], xe * bn);
                }
            }
            other => panic!("expected a function graph, got {other:?}"),
        }
        let probes = [data.lambda.clone(), data.rho.clone()];
        for mode in [CheckMode::Natural, CheckMode::NonNatural] {
            let report = check_pseudocategory(&h, &data, mode, &probes).unwrap();
            assert!(report.ok(), "{mode:?}: {report}");
        }
    }

    #[test]
    fn unit_cells_determine_the_associator() {
        let xm = presets::xmod_by_name("z3inv").unwrap();
        let (_, h, data) = build_group_pseudocategory(&xm, 1).unwrap();
        let maps = &data.maps;
        let a_i0 = h.rwhisker(&data.alpha, maps.i0).unwrap();
        let rhs = eval_chain(
            &h,
            &[
                h.inverse(&super::super::m_after_cell_times_unit(&h, &data, &data.rho).unwrap())
                    .unwrap(),
                super::super::m_after_unit_times_cell(&h, &data, &data.lambda).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a_i0, rhs);
        let a_i2 = h.rwhisker(&data.alpha, maps.i2).unwrap();
        let rhs = eval_chain(
            &h,
            &[
                h.inverse(&super::super::m_after_cell_times_unit(&h, &data, &data.lambda).unwrap())
                    .unwrap(),
                h.rwhisker(&data.lambda, data.m).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a_i2, rhs);
        let a_i1 = h.rwhisker(&data.alpha, maps.i1).unwrap();
        let rhs = eval_chain(
            &h,
            &[
                h.inverse(&h.rwhisker(&data.rho, data.m).unwrap()).unwrap(),
                super::super::m_after_unit_times_cell(&h, &data, &data.rho).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a_i1, rhs);
    }

    #[test]
    fn non_central_delta_is_rejected() {
        let s3 = presets::s3();
        let one = presets::cyclic(1);
        let act = presets::trivial_action(&one, &s3);
        // Hand-assembled so the constructor's own Peiffer check cannot get
        // in the way first: rejection must come from the centrality test.
        let xm = XModPresentation {
            d: vec![one.unit; s3.n],
            x: s3,
            b: one,
            act,
        };
        let delta = (1..xm.x.n)
            .find(|&t| (0..xm.x.n).any(|y| xm.x.mul(t, y) != xm.x.mul(y, t)))
            .expect("s3 has non-central elements");
        let err = build_group_pseudocategory(&xm, delta).unwrap_err();
        match err {
            SesqError::BuildRejected(msg) => assert!(msg.contains("central"), "{msg}"),
            other => panic!("expected BuildRejected, got {other:?}"),
        }
    }

    #[test]
    fn delta_outside_the_kernel_is_rejected() {
        let z2 = presets::cyclic(2);
        let xm = XModPresentation::new(
            z2.clone(),
            z2.clone(),
            vec![0, 1],
            presets::trivial_action(&z2, &z2),
        )
        .unwrap();
        let err = build_group_pseudocategory(&xm, 1).unwrap_err();
        match err {
            SesqError::BuildRejected(msg) => assert!(msg.contains("kernel"), "{msg}"),
            other => panic!("expected BuildRejected, got {other:?}"),
        }
    }
}
