//! Pseudocategory built from chain-complex data.
//!
//! Given three-level complexes `A` and `B`, a chain map `bd: A -> B`, and
//! three homotopy components (`lam`, `rho` from `A` to itself, `eta` from
//! `B` into `A`, each one level up), the construction puts `A (+) B` over
//! `B`: the domain projects away `A`, the codomain adds `bd` of the
//! `A`-part, the unit embeds `B`, and multiplication mixes the summands by
//!
//! `m((a', b'), (a, b)) = ((1 - D rho)(a') + (1 - D lam)(a) - (D eta)(b), b)`
//!
//! with `D t = d t + t d` the boundary of a homotopy.  The unit cells are
//! built from `lam`, `rho`, `eta`; the associator's components are fixed
//! combinations of their composites.  [`bracket_identities`] evaluates the
//! five identities whose conjunction is equivalent to the pentagon for
//! that associator.
//!
//! Each homotopy must vanish after postcomposing with `bd`; builds that
//! break this are rejected, since the multiplication would no longer
//! commute with the codomain.

use std::sync::Arc;

use super::{assemble, induced_maps, Association, PseudocategoryData};
use crate::algebra::{ComplexCarrier, GroupTable};
use crate::cellstruct::{Cell, CellValue, TwoCellStructure};
use crate::constructions::homotopies_over;
use crate::fincat::{ExtMor, ExtObject, FiniteCategory};
use crate::report::{Result, SesqError};

/// Homotopy components one level up: `t1` out of level 0, `t2` out of
/// level 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyData {
    pub t1: Vec<usize>,
    pub t2: Vec<usize>,
}

fn comp(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&v| g[v]).collect()
}

fn add(gt: &GroupTable, f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().zip(g).map(|(&x, &y)| gt.mul(x, y)).collect()
}

fn sub(gt: &GroupTable, f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().zip(g).map(|(&x, &y)| gt.mul(x, gt.inv(y))).collect()
}

fn neg(gt: &GroupTable, f: &[usize]) -> Vec<usize> {
    f.iter().map(|&v| gt.inv(v)).collect()
}

fn ident(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn is_zero(gt: &GroupTable, f: &[usize]) -> bool {
    f.iter().all(|&v| v == gt.unit)
}

/// Levelwise boundary `(d t1, t1 d + d t2, t2 d)` of homotopy components
/// out of `src` into `dst`.
fn boundary(src: &ComplexCarrier, dst: &ComplexCarrier, t: &HomotopyData) -> [Vec<usize>; 3] {
    [
        comp(&dst.d1, &t.t1),
        add(&dst.level[1], &comp(&t.t1, &src.d1), &comp(&dst.d2, &t.t2)),
        comp(&t.t2, &src.d2),
    ]
}

/// Graded commutator `D x . y - x . D y` of homotopy components, for `x`
/// an endo-homotopy of the complex `y` lands in.
fn bracket(
    dst: &ComplexCarrier,
    x: &HomotopyData,
    dx: &[Vec<usize>; 3],
    y: &HomotopyData,
    dy: &[Vec<usize>; 3],
) -> [Vec<usize>; 2] {
    [
        sub(&dst.level[1], &comp(&dx[1], &y.t1), &comp(&x.t1, &dy[0])),
        sub(&dst.level[2], &comp(&dx[2], &y.t2), &comp(&x.t2, &dy[1])),
    ]
}

fn validate(
    a: &ComplexCarrier,
    b: &ComplexCarrier,
    bd: &[Vec<usize>; 3],
    lam: &HomotopyData,
    rho: &HomotopyData,
    eta: &HomotopyData,
) -> Result<()> {
    // The carriers have public fields, so revalidate them.
    ComplexCarrier::new(a.level.clone(), a.d2.clone(), a.d1.clone())?;
    ComplexCarrier::new(b.level.clone(), b.d2.clone(), b.d1.clone())?;
    if !a.is_chain_map_into(b, bd) {
        return Err(SesqError::InvalidPresentation(
            "the structural map is not a chain map".into(),
        ));
    }
    let endo_ok = |t: &HomotopyData| {
        a.level[0].is_hom_into(&a.level[1], &t.t1) && a.level[1].is_hom_into(&a.level[2], &t.t2)
    };
    if !endo_ok(lam) || !endo_ok(rho) {
        return Err(SesqError::InvalidPresentation(
            "lambda and rho components must be homomorphisms one level up".into(),
        ));
    }
    if !b.level[0].is_hom_into(&a.level[1], &eta.t1)
        || !b.level[1].is_hom_into(&a.level[2], &eta.t2)
    {
        return Err(SesqError::InvalidPresentation(
            "eta components must be homomorphisms one level up".into(),
        ));
    }
    for (name, t) in [("lambda", lam), ("rho", rho), ("eta", eta)] {
        if !is_zero(&b.level[1], &comp(&bd[1], &t.t1))
            || !is_zero(&b.level[2], &comp(&bd[2], &t.t2))
        {
            return Err(SesqError::BuildRejected(format!(
                "{name} must vanish under the structural map"
            )));
        }
    }
    Ok(())
}

/// Builds the pseudocategory of the data `(A, B, bd, lam, rho, eta)` over
/// the homotopy cell structure of the ambient category of complexes.
pub fn build_additive_pseudocategory(
    a: &ComplexCarrier,
    b: &ComplexCarrier,
    bd: &[Vec<usize>; 3],
    lam: &HomotopyData,
    rho: &HomotopyData,
    eta: &HomotopyData,
) -> Result<(Arc<FiniteCategory>, TwoCellStructure, PseudocategoryData)> {
    validate(a, b, bd, lam, rho, eta)?;
    let total = a.direct_sum(b);
    let cat = Arc::new(FiniteCategory::ext(vec![
        ("B".to_string(), ExtObject::Complex(b.clone())),
        ("E".to_string(), ExtObject::Complex(total)),
    ]));
    let b_obj = cat.object_named("B").expect("object was just added");
    let e_obj = cat.object_named("E").expect("object was just added");

    let mut d_levels: [Vec<usize>; 3] = Default::default();
    let mut c_levels: [Vec<usize>; 3] = Default::default();
    let mut e_levels: [Vec<usize>; 3] = Default::default();
    for l in 0..3 {
        let (an, bn) = (a.level[l].n, b.level[l].n);
        d_levels[l] = (0..an * bn).map(|i| i % bn).collect();
        c_levels[l] = (0..an * bn)
            .map(|i| b.level[l].mul(bd[l][i / bn], i % bn))
            .collect();
        e_levels[l] = (0..bn).map(|be| a.level[l].unit * bn + be).collect();
    }
    let d = cat.intern_morphism("d", e_obj, b_obj, ExtMor::Chain(d_levels))?;
    let c = cat.intern_morphism("c", e_obj, b_obj, ExtMor::Chain(c_levels))?;
    let e = cat.intern_morphism("e", b_obj, e_obj, ExtMor::Chain(e_levels))?;
    let sq2 = cat.pullback(d, c)?;
    let sq2_pairs = cat.pullback_level_pairs(&sq2)?;

    let dl = boundary(a, a, lam);
    let dr = boundary(a, a, rho);
    let de = boundary(b, a, eta);
    let f: [Vec<usize>; 3] =
        std::array::from_fn(|l| sub(&a.level[l], &ident(a.level[l].n), &dr[l]));
    let g: [Vec<usize>; 3] =
        std::array::from_fn(|l| sub(&a.level[l], &ident(a.level[l].n), &dl[l]));

    let mut m_levels: [Vec<usize>; 3] = Default::default();
    for l in 0..3 {
        let bnl = b.level[l].n;
        let al = &a.level[l];
        m_levels[l] = sq2_pairs[l]
            .iter()
            .map(|&(left, right)| {
                let ao = left / bnl;
                let (ai, be) = (right / bnl, right % bnl);
                let val = al.mul(al.mul(f[l][ao], g[l][ai]), al.inv(de[l][be]));
                val * bnl + be
            })
            .collect();
    }
    let m = cat.intern_morphism("m", sq2.apex, e_obj, ExtMor::Chain(m_levels))?;

    let h = homotopies_over(cat.clone())?;
    let maps = induced_maps(&cat, Association::LeftNested, d, c, e, m)?;
    let mm1 = cat.compose(m, maps.m1)?;
    let me1 = cat.compose(m, maps.e1)?;
    let me2 = cat.compose(m, maps.e2)?;

    let unit_component = |l: usize, ta: &[usize]| -> Vec<usize> {
        let bn = b.level[l].n;
        (0..a.level[l].n * bn)
            .map(|i| {
                let (ae, be) = (i / bn, i % bn);
                let et = if l == 0 { &eta.t1 } else { &eta.t2 };
                let v = a.level[l + 1].mul(ta[ae], et[be]);
                v * b.level[l + 1].n + b.level[l + 1].unit
            })
            .collect()
    };
    let unit_cell = |t: &HomotopyData, base| Cell {
        src: e_obj,
        dst: e_obj,
        value: CellValue::Homotopy {
            base,
            t1: unit_component(0, &t.t1),
            t2: unit_component(1, &t.t2),
        },
    };
    let lambda = unit_cell(lam, me2);
    let rho_cell = unit_cell(rho, me1);

    // Associator components, one per composition slot plus the shared
    // base coordinate.
    let pick = |t: &HomotopyData, i: usize| if i == 0 { t.t1.clone() } else { t.t2.clone() };
    let col1: [Vec<usize>; 2] =
        std::array::from_fn(|i| neg(&a.level[i + 1], &comp(&f[i + 1], &pick(rho, i))));
    let col2: [Vec<usize>; 2] = std::array::from_fn(|i| {
        let l = i + 1;
        sub(
            &a.level[l],
            &comp(&dr[l], &pick(lam, i)),
            &comp(&dl[l], &pick(rho, i)),
        )
    });
    let col3: [Vec<usize>; 2] = std::array::from_fn(|i| {
        let l = i + 1;
        sub(
            &a.level[l],
            &comp(&g[l], &pick(lam, i)),
            &comp(&comp(&f[l], &pick(eta, i)), &bd[i]),
        )
    });
    let col0: [Vec<usize>; 2] = std::array::from_fn(|i| {
        let l = i + 1;
        sub(
            &a.level[l],
            &comp(&g[l], &pick(eta, i)),
            &comp(&f[l], &pick(eta, i)),
        )
    });

    let sq3_pairs = cat.pullback_level_pairs(&maps.sq3)?;
    let [alpha_t1, alpha_t2]: [Vec<usize>; 2] = std::array::from_fn(|i| {
        let l = i + 1;
        let bni = b.level[i].n;
        let al = &a.level[l];
        sq3_pairs[i]
            .iter()
            .map(|&(u, v)| {
                let (p, q) = sq2_pairs[i][u];
                let (_, r) = sq2_pairs[i][v];
                let (a1, a2, a3, be) = (p / bni, q / bni, r / bni, r % bni);
                let val = al.mul(
                    al.mul(col1[i][a1], col2[i][a2]),
                    al.mul(col3[i][a3], col0[i][be]),
                );
                val * b.level[l].n + b.level[l].unit
            })
            .collect()
    });
    let alpha = Cell {
        src: maps.sq3.apex,
        dst: e_obj,
        value: CellValue::Homotopy {
            base: mm1,
            t1: alpha_t1,
            t2: alpha_t2,
        },
    };
    let data = assemble(&h, d, c, e, m, alpha, lambda, rho_cell)?;
    Ok((cat, h, data))
}

/// Evaluates, over levels 0 and 1, the five identities
///
/// 1. `(1 - Dr) [r,r] = 0`
/// 2. `Dl [r,r] = Dr [l,r] + (1 - Dr) [r,l]`
/// 3. `(1 - Dl) [l,r] + Dl [r,l] = Dr [l,l] + (1 - Dr) [r,e] bd`
/// 4. `(1 - Dl) [l,l] = (1 - Dl) [l,e] bd`
/// 5. `(1 - Dr - Dl) [l,e] = (1 - Dr - Dl) [r,e]`
///
/// where `l`, `r`, `e` are the given homotopies, `D` their boundary, and
/// `[x,y] = Dx y - x Dy`.  Their conjunction is equivalent to the pentagon
/// holding for the associator of [`build_additive_pseudocategory`] on the
/// same data.
pub fn bracket_identities(
    a: &ComplexCarrier,
    b: &ComplexCarrier,
    bd: &[Vec<usize>; 3],
    lam: &HomotopyData,
    rho: &HomotopyData,
    eta: &HomotopyData,
) -> Result<[bool; 5]> {
    validate(a, b, bd, lam, rho, eta)?;
    let dl = boundary(a, a, lam);
    let dr = boundary(a, a, rho);
    let de = boundary(b, a, eta);
    let f: [Vec<usize>; 3] =
        std::array::from_fn(|l| sub(&a.level[l], &ident(a.level[l].n), &dr[l]));
    let g: [Vec<usize>; 3] =
        std::array::from_fn(|l| sub(&a.level[l], &ident(a.level[l].n), &dl[l]));
    let s: [Vec<usize>; 3] = std::array::from_fn(|l| sub(&a.level[l], &f[l], &dl[l]));
    let rr = bracket(a, rho, &dr, rho, &dr);
    let lr = bracket(a, lam, &dl, rho, &dr);
    let rl = bracket(a, rho, &dr, lam, &dl);
    let ll = bracket(a, lam, &dl, lam, &dl);
    let le = bracket(a, lam, &dl, eta, &de);
    let re = bracket(a, rho, &dr, eta, &de);
    let id1 = (0..2).all(|i| is_zero(&a.level[i + 1], &comp(&f[i + 1], &rr[i])));
    let id2 = (0..2).all(|i| {
        let l = i + 1;
        comp(&dl[l], &rr[i]) == add(&a.level[l], &comp(&dr[l], &lr[i]), &comp(&f[l], &rl[i]))
    });
    let id3 = (0..2).all(|i| {
        let l = i + 1;
        add(&a.level[l], &comp(&g[l], &lr[i]), &comp(&dl[l], &rl[i]))
            == add(
                &a.level[l],
                &comp(&dr[l], &ll[i]),
                &comp(&comp(&f[l], &re[i]), &bd[i]),
            )
    });
    let id4 = (0..2).all(|i| {
        let l = i + 1;
        comp(&g[l], &ll[i]) == comp(&comp(&g[l], &le[i]), &bd[i])
    });
    let id5 = (0..2).all(|i| {
        let l = i + 1;
        comp(&s[l], &le[i]) == comp(&s[l], &re[i])
    });
    Ok([id1, id2, id3, id4, id5])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets;
    use crate::pseudocat::{check_pseudocategory, CheckMode};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scalar(p: usize, k: usize) -> Vec<usize> {
        (0..p).map(|i| (i * k) % p).collect()
    }

    fn zp_complex(p: usize, k2: usize, k1: usize) -> ComplexCarrier {
        let g = presets::cyclic(p);
        ComplexCarrier::new([g.clone(), g.clone(), g], scalar(p, k2), scalar(p, k1)).unwrap()
    }

    fn hd(p: usize, k1: usize, k2: usize) -> HomotopyData {
        HomotopyData {
            t1: scalar(p, k1),
            t2: scalar(p, k2),
        }
    }

    fn zero_bd(p: usize) -> [Vec<usize>; 3] {
        [scalar(p, 0), scalar(p, 0), scalar(p, 0)]
    }

    #[test]
    fn zero_homotopies_give_a_strict_internal_category() {
        let a = zp_complex(2, 0, 0);
        let b = zp_complex(2, 0, 0);
        let zero = hd(2, 0, 0);
        let (_, h, data) =
            build_additive_pseudocategory(&a, &b, &zero_bd(2), &zero, &zero, &zero).unwrap();
        let z = h.zero(h.cat.identity(data.maps.c1).unwrap()).unwrap();
        assert_eq!(data.lambda, z);
        assert_eq!(data.rho, z);
        let probes = [data.lambda.clone(), data.rho.clone()];
        for mode in [CheckMode::Natural, CheckMode::NonNatural] {
            let report = check_pseudocategory(&h, &data, mode, &probes).unwrap();
            assert!(report.ok(), "{mode:?}: {report}");
        }
    }

    #[test]
    fn homotopies_meeting_the_structural_map_are_rejected() {
        let a = zp_complex(2, 0, 0);
        let b = zp_complex(2, 0, 0);
        let bd = [scalar(2, 1), scalar(2, 1), scalar(2, 1)];
        let lam = hd(2, 1, 0);
        let zero = hd(2, 0, 0);
        let err = build_additive_pseudocategory(&a, &b, &bd, &lam, &zero, &zero).unwrap_err();
        match err {
            SesqError::BuildRejected(msg) => assert!(msg.contains("vanish"), "{msg}"),
            other => panic!("expected BuildRejected, got {other:?}"),
        }
    }

    #[test]
    fn the_middle_unit_equation_is_forced_by_the_columns() {
        // The slot next to the unit never sees the middle associator
        // component, so this equation holds whatever the homotopies are.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = 3;
        let a = zp_complex(p, 1, 0);
        let b = zp_complex(p, 0, 0);
        let bd = [scalar(p, 1), scalar(p, 0), scalar(p, 0)];
        for _ in 0..6 {
            let mut draw = || hd(p, rng.gen_range(0..p), rng.gen_range(0..p));
            let (lam, rho, eta) = (draw(), draw(), draw());
            let (_, h, data) =
                build_additive_pseudocategory(&a, &b, &bd, &lam, &rho, &eta).unwrap();
            let report = check_pseudocategory(&h, &data, CheckMode::NonNatural, &[]).unwrap();
            assert!(
                report.with_axiom("unit-middle").is_empty(),
                "lam {lam:?} rho {rho:?} eta {eta:?}: {report}"
            );
        }
    }

    #[test]
    fn pentagon_verdict_matches_the_bracket_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = 3;
        let mut verdicts = [0usize; 2];
        for case in 0..20 {
            let (k2, k1) = loop {
                let k2 = rng.gen_range(0..p);
                let k1 = rng.gen_range(0..p);
                if (k1 * k2) % p == 0 {
                    break (k2, k1);
                }
            };
            let a = zp_complex(p, k2, k1);
            let b = a.clone();
            let bd = zero_bd(p);
            let mut draw = || hd(p, rng.gen_range(0..p), rng.gen_range(0..p));
            let (lam, rho, eta) = if case == 0 {
                (hd(p, 0, 0), hd(p, 0, 0), hd(p, 0, 0))
            } else {
                (draw(), draw(), draw())
            };
            let ids = bracket_identities(&a, &b, &bd, &lam, &rho, &eta).unwrap();
            let (_, h, data) =
                build_additive_pseudocategory(&a, &b, &bd, &lam, &rho, &eta).unwrap();
            let report = check_pseudocategory(&h, &data, CheckMode::NonNatural, &[]).unwrap();
            let pentagon_ok = report.with_axiom("pentagon").is_empty();
            assert_eq!(
                pentagon_ok,
                ids.iter().all(|&ok| ok),
                "case {case}: identities {ids:?}, report {report}"
            );
            verdicts[usize::from(pentagon_ok)] += 1;
            if report.with_axiom("unit-naturality").is_empty() {
                assert!(report.ok(), "case {case}: {report}");
            }
        }
        assert!(
            verdicts[0] > 0 && verdicts[1] > 0,
            "want both verdicts represented, got {verdicts:?}"
        );
    }

    #[test]
    fn nonvanishing_first_identity_trips_the_pentagon() {
        let p = 3;
        let a = zp_complex(p, 1, 0);
        let b = a.clone();
        let lam = hd(p, 1, 2);
        let eta = hd(p, 0, 0);
        let ids = bracket_identities(&a, &b, &zero_bd(p), &lam, &lam, &eta).unwrap();
        assert!(!ids[0], "{ids:?}");
        let (_, h, data) =
            build_additive_pseudocategory(&a, &b, &zero_bd(p), &lam, &lam, &eta).unwrap();
        let report = check_pseudocategory(&h, &data, CheckMode::NonNatural, &[]).unwrap();
        assert!(!report.with_axiom("pentagon").is_empty(), "{report}");
    }

    #[test]
    fn vanishing_brackets_give_a_clean_report() {
        let p = 3;
        let a = zp_complex(p, 1, 0);
        let b = a.clone();
        let lam = hd(p, 1, 0);
        let eta = hd(p, 0, 0);
        let ids = bracket_identities(&a, &b, &zero_bd(p), &lam, &lam, &eta).unwrap();
        assert!(ids.iter().all(|&ok| ok), "{ids:?}");
        let (_, h, data) =
            build_additive_pseudocategory(&a, &b, &zero_bd(p), &lam, &lam, &eta).unwrap();
        let z = h.zero(h.cat.identity(data.maps.c1).unwrap()).unwrap();
        assert_ne!(data.lambda, z, "the unit cells must be nontrivial here");
        let probes = [data.lambda.clone(), data.rho.clone()];
        for mode in [CheckMode::Natural, CheckMode::NonNatural] {
            let report = check_pseudocategory(&h, &data, mode, &probes).unwrap();
            assert!(report.ok(), "{mode:?}: {report}");
        }
    }
}
