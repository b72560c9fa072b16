//! Derivation cells on categories of crossed modules.
//!
//! A morphism (X,B,d,.) -> (X',B',d',.) is a pair of homomorphisms
//! commuting with the boundaries and the actions. A cell `(t, f)` out of
//! `f = (f1, f0)` is a function `t: B -> X'` with
//! `t(b b') = t(b) + f0(b).t(b')` whose endpoint `(t d + f1, d' t + f0)`
//! is again a morphism; that endpoint is the cell's codomain.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{enumerate_group_homs, XModPresentation, ENUM_CAP};
use crate::cellstruct::{TableCells, TwoCellStructure};
use crate::fincat::FiniteCategory;
use crate::report::{Result, SesqError};

type Pair = (Vec<usize>, Vec<usize>);

fn xmod_morphisms(a: &XModPresentation, b: &XModPresentation) -> Vec<Pair> {
    let mut out = Vec::new();
    for fx in enumerate_group_homs(&a.x, &b.x) {
        for fb in enumerate_group_homs(&a.b, &b.b) {
            let boundary = (0..a.x.n).all(|x| b.d[fx[x]] == fb[a.d[x]]);
            let equivariant = (0..a.b.n)
                .all(|be| (0..a.x.n).all(|x| fx[a.act[be][x]] == b.act[fb[be]][fx[x]]));
            if boundary && equivariant {
                out.push((fx.clone(), fb.clone()));
            }
        }
    }
    out
}

fn compose_pair(g: &Pair, f: &Pair) -> Pair {
    (
        f.0.iter().map(|&v| g.0[v]).collect(),
        f.1.iter().map(|&v| g.1[v]).collect(),
    )
}

/// All functions `dom -> 0..n` in lexicographic order.
fn all_maps(dom: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    let total = (n as u64).checked_pow(dom as u32).unwrap_or(u64::MAX);
    if total > ENUM_CAP {
        return Err(SesqError::TooLarge(format!(
            "{n}^{dom} candidate maps exceed the enumeration cap"
        )));
    }
    let mut out = vec![vec![0usize; dom]];
    if n == 0 && dom > 0 {
        return Ok(Vec::new());
    }
    for pos in (0..dom).rev() {
        let prev = std::mem::take(&mut out);
        for m in prev {
            for v in 0..n {
                let mut m2 = m.clone();
                m2[pos] = v;
                out.push(m2);
            }
        }
    }
    Ok(out)
}

/// The category of the given crossed modules with its derivation cells,
/// fully enumerated.
pub fn xmod_derivations(
    xmods: &[XModPresentation],
) -> Result<(Arc<FiniteCategory>, TwoCellStructure)> {
    if xmods.is_empty() {
        return Err(SesqError::InvalidPresentation(
            "no crossed modules given".into(),
        ));
    }
    let names: Vec<String> = (0..xmods.len()).map(|i| format!("M{i}")).collect();
    let ec = super::enumerated_category(
        &names,
        |a, b| xmod_morphisms(&xmods[a], &xmods[b]),
        compose_pair,
        |a| {
            (
                (0..xmods[a].x.n).collect(),
                (0..xmods[a].b.n).collect(),
            )
        },
        "m",
    )?;
    let mut t = TableCells::default();
    let mut idx: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut tr_of: Vec<Vec<usize>> = Vec::new();
    let mut by_base: HashMap<usize, Vec<usize>> = HashMap::new();
    for m in ec.cat.morphisms() {
        let (a, b, ref f) = ec.data[m.0];
        let (src, dst) = (&xmods[a], &xmods[b]);
        for tr in all_maps(src.b.n, dst.x.n)? {
            let derivation = (0..src.b.n).all(|b1| {
                (0..src.b.n).all(|b2| {
                    tr[src.b.mul(b1, b2)]
                        == dst.x.mul(tr[b1], dst.act[f.1[b1]][tr[b2]])
                })
            });
            if !derivation {
                continue;
            }
            let g1: Vec<usize> = (0..src.x.n)
                .map(|x| dst.x.mul(tr[src.d[x]], f.0[x]))
                .collect();
            let g0: Vec<usize> = (0..src.b.n)
                .map(|b1| dst.b.mul(dst.d[tr[b1]], f.1[b1]))
                .collect();
            let Some(cod) = ec.lookup(a, b, &(g1, g0)) else {
                continue;
            };
            let i = t.names.len();
            idx.insert((m.0, tr.clone()), i);
            by_base.entry(m.0).or_default().push(i);
            t.names.push(format!("(t{:?},{})", tr, ec.cat.morphism_name(m)));
            tr_of.push(tr.clone());
            t.src.push(a);
            t.dst.push(b);
            t.dom.push(m);
            t.cod.push(cod);
            if tr.iter().all(|&v| v == dst.x.unit) {
                t.zero.insert(m.0, i);
            }
        }
    }
    for u in 0..t.names.len() {
        let dst = &xmods[t.dst[u]];
        let (f, cod) = (t.dom[u], t.cod[u]);
        let tr_u = tr_of[u].clone();
        if let Some(vs) = by_base.get(&cod.0) {
            for &v in vs {
                let sum: Vec<usize> = (0..tr_u.len())
                    .map(|b1| dst.x.mul(tr_of[v][b1], tr_u[b1]))
                    .collect();
                t.vsum.insert((v, u), idx[&(f.0, sum)]);
            }
        }
        for g in ec.cat.morphisms() {
            let (ga, gb, ref gp) = ec.data[g.0];
            if ga == t.dst[u] {
                let gf = ec.cat.compose(g, f)?;
                let moved: Vec<usize> = tr_u.iter().map(|&v| gp.0[v]).collect();
                if let Some(&w) = idx.get(&(gf.0, moved)) {
                    t.lwhisk.insert((g.0, u), w);
                }
            }
            if gb == t.src[u] {
                let fg = ec.cat.compose(f, g)?;
                let moved: Vec<usize> = (0..gp.1.len()).map(|b1| tr_u[gp.1[b1]]).collect();
                if let Some(&w) = idx.get(&(fg.0, moved)) {
                    t.rwhisk.insert((u, g.0), w);
                }
            }
        }
    }
    let h = TwoCellStructure::from_table(ec.cat.clone(), t);
    Ok((ec.cat, h))
}
