//! Reflection of a 2-cell structure onto its largest natural quotient.
//!
//! Cells are identified by the smallest congruence that relates the two
//! sides of every naturality condition and is compatible with vertical
//! sums and both whisker actions. The quotient is natural by
//! construction, and the family of class maps is a structure morphism.

use std::collections::HashMap;

use crate::cellstruct::{CellMap, TableCells, TwoCellStructure};
use crate::report::{Result, SesqError};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut walk = i;
        while self.parent[walk] != root {
            walk = std::mem::replace(&mut self.parent[walk], root);
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Smaller root wins so class representatives are stable.
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// Quotients `h` by the naturality congruence. Returns the quotient
/// structure over the same base category and the map sending each cell to
/// its class.
pub fn naturalize(h: &TwoCellStructure) -> Result<(TwoCellStructure, CellMap)> {
    let t = h.table()?;
    let n = t.names.len();
    let mut uf = UnionFind::new(n);

    // Seed: both sides of every naturality condition.
    for x in h.all_cells()? {
        for obj in h.cat.objects() {
            for z in h.cells_between(obj, x.src)? {
                let lhs = h.vcomp(
                    &h.lwhisker(h.cod(&x)?, &z)?,
                    &h.rwhisker(&x, h.dom(&z)?)?,
                )?;
                let rhs = h.vcomp(
                    &h.rwhisker(&x, h.cod(&z)?)?,
                    &h.lwhisker(h.dom(&x)?, &z)?,
                )?;
                uf.union(lhs.idx()?, rhs.idx()?);
            }
        }
    }

    // Close under the operation tables: entries whose arguments have been
    // identified must have identified results.
    loop {
        let mut changed = false;
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (&(v, u), &w) in &t.vsum {
            let key = (uf.find(v), uf.find(u));
            let w = uf.find(w);
            match seen.get(&key) {
                Some(&w2) if w2 != w => changed |= uf.union(w, w2),
                Some(_) => {}
                None => {
                    seen.insert(key, w);
                }
            }
        }
        seen.clear();
        for (&(g, y), &w) in &t.lwhisk {
            let key = (g, uf.find(y));
            let w = uf.find(w);
            match seen.get(&key) {
                Some(&w2) if w2 != w => changed |= uf.union(w, w2),
                Some(_) => {}
                None => {
                    seen.insert(key, w);
                }
            }
        }
        seen.clear();
        for (&(x, f), &w) in &t.rwhisk {
            let key = (uf.find(x), f);
            let w = uf.find(w);
            match seen.get(&key) {
                Some(&w2) if w2 != w => changed |= uf.union(w, w2),
                Some(_) => {}
                None => {
                    seen.insert(key, w);
                }
            }
        }
        if !changed {
            break;
        }
    }

    // Number the classes in order of their smallest member.
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut phi: CellMap = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = uf.find(i);
        let next = members.len();
        let class = *class_of_root.entry(root).or_insert(next);
        if class == members.len() {
            members.push(Vec::new());
        }
        members[class].push(i);
        phi.insert(i, class);
    }

    // dom, cod and the object pair must be constant on every class; a
    // failure means the input violated the structure axioms.
    let mut q = TableCells::default();
    for m in &members {
        let lead = m[0];
        for &i in m {
            if t.src[i] != t.src[lead]
                || t.dst[i] != t.dst[lead]
                || t.dom[i] != t.dom[lead]
                || t.cod[i] != t.cod[lead]
            {
                return Err(SesqError::QuotientIllTyped(format!(
                    "cells {} and {} are identified but differ in endpoints",
                    t.names[lead], t.names[i]
                )));
            }
        }
        q.names.push(format!("[{}]", t.names[lead]));
        q.src.push(t.src[lead]);
        q.dst.push(t.dst[lead]);
        q.dom.push(t.dom[lead]);
        q.cod.push(t.cod[lead]);
    }
    for (&m, &z) in &t.zero {
        q.zero.insert(m, phi[&z]);
    }
    for (&(v, u), &w) in &t.vsum {
        q.vsum.insert((phi[&v], phi[&u]), phi[&w]);
    }
    for (&(g, y), &w) in &t.lwhisk {
        q.lwhisk.insert((g, phi[&y]), phi[&w]);
    }
    for (&(x, f), &w) in &t.rwhisk {
        q.rwhisk.insert((phi[&x], f), phi[&w]);
    }
    Ok((TwoCellStructure::from_table(h.cat.clone(), q), phi))
}

/// Does `psi` factor uniquely through the naturalization of `h`? True
/// exactly when `psi` is constant on every congruence class and the
/// induced map on classes is a structure morphism into `n`.
pub fn check_reflection_property(
    h: &TwoCellStructure,
    n: &TwoCellStructure,
    psi: &CellMap,
) -> Result<bool> {
    let t = h.table()?;
    let (h_nat, phi) = naturalize(h)?;
    let mut induced: CellMap = HashMap::new();
    for i in 0..t.names.len() {
        let Some(&target) = psi.get(&i) else {
            return Ok(false);
        };
        match induced.get(&phi[&i]) {
            Some(&other) if other != target => return Ok(false),
            Some(_) => {}
            None => {
                induced.insert(phi[&i], target);
            }
        }
    }
    Ok(crate::cellstruct::check_structure_morphism(&induced, &h_nat, n)?.ok())
}
