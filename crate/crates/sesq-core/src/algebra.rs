//! Finite algebraic carriers: monoids, groups, bounded chain complexes,
//! internal categories in finite sets, and crossed modules.
//!
//! Everything is presented by explicit tables over carrier indices
//! `0..n`. Constructors validate the defining axioms and derive units and
//! inverses rather than trusting the caller.

use crate::report::{Result, SesqError};
use std::collections::BTreeMap;

/// Cap on `|codomain| ^ |domain|` when enumerating structure-preserving
/// maps by exhaustive assignment. Keeps brute force honest about its limits.
pub const ENUM_CAP: u64 = 40_000_000;

/// A finite monoid given by its multiplication table. `mul[a][b]` is `a*b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidTable {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
    pub unit: usize,
    pub names: Vec<String>,
}

impl MonoidTable {
    /// Builds a monoid from a table, locating the two-sided unit and
    /// checking associativity.
    pub fn new(mul: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(SesqError::InvalidPresentation("empty carrier".into()));
        }
        if names.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(SesqError::InvalidPresentation(
                "table dimensions disagree with carrier size".into(),
            ));
        }
        for (a, row) in mul.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(SesqError::InvalidPresentation(format!(
                        "product {}*{} out of range",
                        names[a], names[b]
                    )));
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| SesqError::InvalidPresentation("no two-sided unit".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(SesqError::InvalidPresentation(format!(
                            "not associative at ({},{},{})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(MonoidTable { n, mul, unit, names })
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        MonoidTable {
            n: 1,
            mul: vec![vec![0]],
            unit: 0,
            names: vec!["1".into()],
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }
}

/// A finite group given by its multiplication table; unit and inverses are
/// derived and the group axioms checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
    pub unit: usize,
    pub inv: Vec<usize>,
    pub names: Vec<String>,
}

impl GroupTable {
    pub fn new(mul: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let m = MonoidTable::new(mul, names)?;
        let mut inv = vec![usize::MAX; m.n];
        for a in 0..m.n {
            match (0..m.n).find(|&b| m.mul[a][b] == m.unit && m.mul[b][a] == m.unit) {
                Some(b) => inv[a] = b,
                None => {
                    return Err(SesqError::InvalidPresentation(format!(
                        "{} has no inverse",
                        m.names[a]
                    )))
                }
            }
        }
        Ok(GroupTable {
            n: m.n,
            mul: m.mul,
            unit: m.unit,
            inv,
            names: m.names,
        })
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn as_monoid(&self) -> MonoidTable {
        MonoidTable {
            n: self.n,
            mul: self.mul.clone(),
            unit: self.unit,
            names: self.names.clone(),
        }
    }

    /// Conjugation `t a t^-1` as a carrier permutation.
    pub fn conj(&self, t: usize, a: usize) -> usize {
        self.mul(self.mul(t, a), self.inv(t))
    }

    /// Is `map` (a carrier function into `other`) a homomorphism?
    pub fn is_hom_into(&self, other: &GroupTable, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&v| v < other.n)
            && (0..self.n)
                .all(|a| (0..self.n).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }

    /// Direct product, with pair elements ordered lexicographically.
    pub fn product(&self, other: &GroupTable) -> GroupTable {
        let n = self.n * other.n;
        let idx = |a: usize, b: usize| a * other.n + b;
        let mut mul = vec![vec![0; n]; n];
        for a1 in 0..self.n {
            for b1 in 0..other.n {
                for a2 in 0..self.n {
                    for b2 in 0..other.n {
                        mul[idx(a1, b1)][idx(a2, b2)] = idx(self.mul(a1, a2), other.mul(b1, b2));
                    }
                }
            }
        }
        let names = (0..self.n)
            .flat_map(|a| {
                (0..other.n)
                    .map(move |b| format!("({},{})", self.names[a], other.names[b]))
                    .collect::<Vec<_>>()
            })
            .collect();
        GroupTable::new(mul, names).expect("product of groups is a group")
    }

    /// Semidirect product `X x| B` for a left action of `B` on `X` by
    /// automorphisms: `(x,b)(x',b') = (x * (b.x'), b b')`.
    pub fn semidirect(x: &GroupTable, b: &GroupTable, act: &[Vec<usize>]) -> Result<GroupTable> {
        check_action_by_automorphisms(b, x, act)?;
        let n = x.n * b.n;
        let idx = |xe: usize, be: usize| xe * b.n + be;
        let mut mul = vec![vec![0; n]; n];
        for x1 in 0..x.n {
            for b1 in 0..b.n {
                for x2 in 0..x.n {
                    for b2 in 0..b.n {
                        mul[idx(x1, b1)][idx(x2, b2)] =
                            idx(x.mul(x1, act[b1][x2]), b.mul(b1, b2));
                    }
                }
            }
        }
        let names = (0..x.n)
            .flat_map(|xe| {
                (0..b.n)
                    .map(move |be| format!("({},{})", x.names[xe], b.names[be]))
                    .collect::<Vec<_>>()
            })
            .collect();
        GroupTable::new(mul, names)
    }
}

/// Checks that `act[b][x]` is a left action of `actor` on `target` by group
/// automorphisms.
pub fn check_action_by_automorphisms(
    actor: &GroupTable,
    target: &GroupTable,
    act: &[Vec<usize>],
) -> Result<()> {
    if act.len() != actor.n || act.iter().any(|r| r.len() != target.n) {
        return Err(SesqError::InvalidPresentation(
            "action table dimensions disagree with the groups".into(),
        ));
    }
    for x in 0..target.n {
        if act[actor.unit][x] != x {
            return Err(SesqError::InvalidPresentation(
                "unit does not act as the identity".into(),
            ));
        }
    }
    for b1 in 0..actor.n {
        for b2 in 0..actor.n {
            for x in 0..target.n {
                if act[actor.mul(b1, b2)][x] != act[b1][act[b2][x]] {
                    return Err(SesqError::InvalidPresentation(format!(
                        "action not multiplicative at ({},{})",
                        actor.names[b1], actor.names[b2]
                    )));
                }
            }
        }
        for x in 0..target.n {
            for y in 0..target.n {
                if act[b1][target.mul(x, y)] != target.mul(act[b1][x], act[b1][y]) {
                    return Err(SesqError::InvalidPresentation(format!(
                        "{} does not act by an endomorphism",
                        actor.names[b1]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Enumerates all group homomorphisms `a -> b` as carrier functions, by
/// backtracking over element images with incremental consistency pruning.
pub fn enumerate_group_homs(a: &GroupTable, b: &GroupTable) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; a.n];
    map[a.unit] = b.unit;
    // Assign images in carrier order, skipping the unit which is forced.
    let order: Vec<usize> = (0..a.n).filter(|&x| x != a.unit).collect();
    fn consistent(a: &GroupTable, b: &GroupTable, map: &[usize]) -> bool {
        for x in 0..a.n {
            if map[x] == usize::MAX {
                continue;
            }
            for y in 0..a.n {
                if map[y] == usize::MAX {
                    continue;
                }
                let z = a.mul(x, y);
                if map[z] != usize::MAX && map[z] != b.mul(map[x], map[y]) {
                    return false;
                }
            }
        }
        true
    }
    fn rec(
        a: &GroupTable,
        b: &GroupTable,
        order: &[usize],
        pos: usize,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == order.len() {
            if a.is_hom_into(b, map) {
                out.push(map.clone());
            }
            return;
        }
        let x = order[pos];
        for img in 0..b.n {
            map[x] = img;
            if consistent(a, b, map) {
                rec(a, b, order, pos + 1, map, out);
            }
        }
        map[x] = usize::MAX;
    }
    rec(a, b, &order, 0, &mut map, &mut out);
    out.sort();
    out
}

/// A chain complex `A2 -d2-> A1 -d1-> A0` of finite abelian groups with
/// `d1 . d2 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexCarrier {
    /// Levels indexed 0, 1, 2.
    pub level: [GroupTable; 3],
    /// Graph of `d2: A2 -> A1`.
    pub d2: Vec<usize>,
    /// Graph of `d1: A1 -> A0`.
    pub d1: Vec<usize>,
}

impl ComplexCarrier {
    pub fn new(level: [GroupTable; 3], d2: Vec<usize>, d1: Vec<usize>) -> Result<Self> {
        for g in &level {
            if !g.is_abelian() {
                return Err(SesqError::InvalidPresentation(
                    "complex levels must be abelian".into(),
                ));
            }
        }
        if !level[2].is_hom_into(&level[1], &d2) || !level[1].is_hom_into(&level[0], &d1) {
            return Err(SesqError::InvalidPresentation(
                "differential is not a homomorphism".into(),
            ));
        }
        for x in 0..level[2].n {
            if d1[d2[x]] != level[0].unit {
                return Err(SesqError::InvalidPresentation(format!(
                    "d1(d2({})) is nonzero",
                    level[2].names[x]
                )));
            }
        }
        Ok(ComplexCarrier { level, d2, d1 })
    }

    pub fn diff(&self, from_level: usize) -> &[usize] {
        match from_level {
            2 => &self.d2,
            1 => &self.d1,
            _ => panic!("no differential out of level {from_level}"),
        }
    }

    /// Is `(f2, f1, f0)` a chain map into `other`?
    pub fn is_chain_map_into(&self, other: &ComplexCarrier, f: &[Vec<usize>; 3]) -> bool {
        (0..3).all(|i| self.level[i].is_hom_into(&other.level[i], &f[i]))
            && (0..self.level[2].n).all(|x| other.d2[f[2][x]] == f[1][self.d2[x]])
            && (0..self.level[1].n).all(|x| other.d1[f[1][x]] == f[0][self.d1[x]])
    }

    /// Levelwise direct sum.
    pub fn direct_sum(&self, other: &ComplexCarrier) -> ComplexCarrier {
        let level = [
            self.level[0].product(&other.level[0]),
            self.level[1].product(&other.level[1]),
            self.level[2].product(&other.level[2]),
        ];
        let pair = |i: usize, a: usize, b: usize, other_n: usize| {
            let _ = i;
            a * other_n + b
        };
        let mut d2 = vec![0; level[2].n];
        for a in 0..self.level[2].n {
            for b in 0..other.level[2].n {
                d2[pair(2, a, b, other.level[2].n)] =
                    pair(1, self.d2[a], other.d2[b], other.level[1].n);
            }
        }
        let mut d1 = vec![0; level[1].n];
        for a in 0..self.level[1].n {
            for b in 0..other.level[1].n {
                d1[pair(1, a, b, other.level[1].n)] =
                    pair(0, self.d1[a], other.d1[b], other.level[0].n);
            }
        }
        ComplexCarrier::new(level, d2, d1).expect("direct sum of complexes is a complex")
    }
}

/// An internal category in finite sets: carriers `C0`, `C1` with structure
/// maps satisfying the unit, domain/codomain, and associativity laws. The
/// composite `m(u, v)` is "u after v" and is defined when `d(u) = c(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntCatCarrier {
    pub c0: usize,
    pub c1: usize,
    pub d: Vec<usize>,
    pub c: Vec<usize>,
    pub e: Vec<usize>,
    pub m: BTreeMap<(usize, usize), usize>,
    pub names0: Vec<String>,
    pub names1: Vec<String>,
}

impl IntCatCarrier {
    pub fn new(
        c0: usize,
        c1: usize,
        d: Vec<usize>,
        c: Vec<usize>,
        e: Vec<usize>,
        m: BTreeMap<(usize, usize), usize>,
        names0: Vec<String>,
        names1: Vec<String>,
    ) -> Result<Self> {
        let cat = IntCatCarrier {
            c0,
            c1,
            d,
            c,
            e,
            m,
            names0,
            names1,
        };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(SesqError::InvalidPresentation(msg));
        if self.d.len() != self.c1
            || self.c.len() != self.c1
            || self.e.len() != self.c0
            || self.names0.len() != self.c0
            || self.names1.len() != self.c1
        {
            return bad("carrier table dimensions disagree".into());
        }
        for x in 0..self.c0 {
            let ex = self.e[x];
            if ex >= self.c1 || self.d[ex] != x || self.c[ex] != x {
                return bad(format!("unit arrow of {} ill-typed", self.names0[x]));
            }
        }
        for u in 0..self.c1 {
            for v in 0..self.c1 {
                let defined = self.m.contains_key(&(u, v));
                let composable = self.d[u] == self.c[v];
                if defined != composable {
                    return bad(format!(
                        "composition defined on exactly the composable pairs fails at ({},{})",
                        self.names1[u], self.names1[v]
                    ));
                }
                if let Some(&w) = self.m.get(&(u, v)) {
                    if w >= self.c1 || self.d[w] != self.d[v] || self.c[w] != self.c[u] {
                        return bad(format!(
                            "composite of ({},{}) ill-typed",
                            self.names1[u], self.names1[v]
                        ));
                    }
                }
            }
        }
        for u in 0..self.c1 {
            if self.m[&(self.e[self.c[u]], u)] != u || self.m[&(u, self.e[self.d[u]])] != u {
                return bad(format!("unit law fails at {}", self.names1[u]));
            }
        }
        for u in 0..self.c1 {
            for v in 0..self.c1 {
                if self.d[u] != self.c[v] {
                    continue;
                }
                for w in 0..self.c1 {
                    if self.d[v] != self.c[w] {
                        continue;
                    }
                    let uv_w = self.m[&(self.m[&(u, v)], w)];
                    let u_vw = self.m[&(u, self.m[&(v, w)])];
                    if uv_w != u_vw {
                        return bad(format!(
                            "composition not associative at ({},{},{})",
                            self.names1[u], self.names1[v], self.names1[w]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The arrow category: objects are the arrows of `self`, and every
    /// carrier map is the identity. Used to probe naturality.
    pub fn arrow_category(&self) -> IntCatCarrier {
        let n = self.c1;
        let idgraph: Vec<usize> = (0..n).collect();
        let mut m = BTreeMap::new();
        for u in 0..n {
            m.insert((u, u), u);
        }
        IntCatCarrier {
            c0: n,
            c1: n,
            d: idgraph.clone(),
            c: idgraph.clone(),
            e: idgraph,
            m,
            names0: self.names1.clone(),
            names1: self.names1.clone(),
        }
    }

    /// Is `(f1, f0)` an internal functor into `other`?
    pub fn is_functor_into(&self, other: &IntCatCarrier, f1: &[usize], f0: &[usize]) -> bool {
        if f1.len() != self.c1 || f0.len() != self.c0 {
            return false;
        }
        if f1.iter().any(|&v| v >= other.c1) || f0.iter().any(|&v| v >= other.c0) {
            return false;
        }
        for u in 0..self.c1 {
            if other.d[f1[u]] != f0[self.d[u]] || other.c[f1[u]] != f0[self.c[u]] {
                return false;
            }
        }
        for x in 0..self.c0 {
            if f1[self.e[x]] != other.e[f0[x]] {
                return false;
            }
        }
        for (&(u, v), &w) in &self.m {
            if other.m.get(&(f1[u], f1[v])) != Some(&f1[w]) {
                return false;
            }
        }
        true
    }
}

/// A crossed module: `d: X -> B` with a left action of `B` on `X` by
/// automorphisms, satisfying equivariance `d(b.x) = b d(x) b^-1` and the
/// Peiffer identity `d(x).y = x y x^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XModPresentation {
    pub x: GroupTable,
    pub b: GroupTable,
    pub d: Vec<usize>,
    /// `act[b][x]` is `b.x`.
    pub act: Vec<Vec<usize>>,
}

impl XModPresentation {
    pub fn new(x: GroupTable, b: GroupTable, d: Vec<usize>, act: Vec<Vec<usize>>) -> Result<Self> {
        if !x.is_hom_into(&b, &d) {
            return Err(SesqError::InvalidPresentation(
                "boundary is not a homomorphism".into(),
            ));
        }
        check_action_by_automorphisms(&b, &x, &act)?;
        for be in 0..b.n {
            for xe in 0..x.n {
                if d[act[be][xe]] != b.mul(b.mul(be, d[xe]), b.inv(be)) {
                    return Err(SesqError::InvalidPresentation(format!(
                        "equivariance fails at ({},{})",
                        b.names[be], x.names[xe]
                    )));
                }
            }
        }
        for xe in 0..x.n {
            for ye in 0..x.n {
                if act[d[xe]][ye] != x.mul(x.mul(xe, ye), x.inv(xe)) {
                    return Err(SesqError::InvalidPresentation(format!(
                        "Peiffer identity fails at ({},{})",
                        x.names[xe], x.names[ye]
                    )));
                }
            }
        }
        Ok(XModPresentation { x, b, d, act })
    }
}

/// Named small-group presets used by fixtures, tests, and the CLI.
pub mod presets {
    use super::*;

    /// Cyclic group of order `n`, written additively.
    pub fn cyclic(n: usize) -> GroupTable {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|a| format!("{a}")).collect();
        GroupTable::new(mul, names).expect("cyclic group table")
    }

    /// Symmetric group on 3 letters. Elements are the permutations of
    /// `{0,1,2}` in lexicographic one-line order; the product `a*b` acts as
    /// "b first, then a".
    pub fn s3() -> GroupTable {
        perm_group(3)
    }

    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out.sort();
        out
    }

    fn perm_name(p: &[usize]) -> String {
        // Cycle notation; identity prints as "e".
        let n = p.len();
        let mut seen = vec![false; n];
        let mut s = String::new();
        for start in 0..n {
            if seen[start] || p[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = p[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = p[cur];
            }
            s.push('(');
            for v in cyc {
                s.push_str(&v.to_string());
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push('e');
        }
        s
    }

    /// The full symmetric group on `n` letters as a table.
    pub fn perm_group(n: usize) -> GroupTable {
        let ps = perms(n);
        let index: BTreeMap<Vec<usize>, usize> =
            ps.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let m = ps.len();
        let mut mul = vec![vec![0; m]; m];
        for (i, a) in ps.iter().enumerate() {
            for (j, b) in ps.iter().enumerate() {
                // (a*b)(x) = a(b(x))
                let prod: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                mul[i][j] = index[&prod];
            }
        }
        let names = ps.iter().map(|p| perm_name(p)).collect();
        GroupTable::new(mul, names).expect("permutation group table")
    }

    /// Dihedral group of order 8: symmetries of the square, elements
    /// `r^i s^j` with `i in 0..4`, `j in 0..2`, encoded as `i + 4j`.
    pub fn d4() -> GroupTable {
        let idx = |i: usize, j: usize| i + 4 * j;
        let mut mul = vec![vec![0; 8]; 8];
        for i1 in 0..4 {
            for j1 in 0..2 {
                for i2 in 0..4 {
                    for j2 in 0..2 {
                        // (r^i1 s^j1)(r^i2 s^j2): s r = r^-1 s.
                        let i = if j1 == 0 { (i1 + i2) % 4 } else { (i1 + 4 - i2 % 4) % 4 };
                        let j = (j1 + j2) % 2;
                        mul[idx(i1, j1)][idx(i2, j2)] = idx(i, j);
                    }
                }
            }
        }
        let names = (0..8)
            .map(|k| {
                let (i, j) = (k % 4, k / 4);
                match (i, j) {
                    (0, 0) => "e".into(),
                    (_, 0) => format!("r{i}"),
                    (0, _) => "s".into(),
                    (_, _) => format!("r{i}s"),
                }
            })
            .collect();
        GroupTable::new(mul, names).expect("dihedral group table")
    }

    /// Quaternion group of order 8: `{1,-1,i,-i,j,-j,k,-k}` encoded as
    /// `0..8` in that order.
    pub fn q8() -> GroupTable {
        // Represent elements as (sign, axis) with axis in {1,i,j,k}.
        // Multiplication driven by the quaternion relations.
        let enc = |sign: usize, axis: usize| axis * 2 + sign; // 1,-1,i,-i,j,-j,k,-k
        let axis_mul = |a: usize, b: usize| -> (usize, usize) {
            // Returns (sign, axis) of the product of two basis axes.
            match (a, b) {
                (0, x) => (0, x),
                (x, 0) => (0, x),
                (1, 1) => (1, 0),
                (2, 2) => (1, 0),
                (3, 3) => (1, 0),
                (1, 2) => (0, 3),
                (2, 1) => (1, 3),
                (2, 3) => (0, 1),
                (3, 2) => (1, 1),
                (3, 1) => (0, 2),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            }
        };
        let mut mul = vec![vec![0; 8]; 8];
        for s1 in 0..2 {
            for a1 in 0..4 {
                for s2 in 0..2 {
                    for a2 in 0..4 {
                        let (s, a) = axis_mul(a1, a2);
                        mul[enc(s1, a1)][enc(s2, a2)] = enc((s1 + s2 + s) % 2, a);
                    }
                }
            }
        }
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        GroupTable::new(mul, names).expect("quaternion group table")
    }

    /// Klein four-group.
    pub fn klein() -> GroupTable {
        cyclic(2).product(&cyclic(2))
    }

    /// Looks a preset group up by name.
    pub fn group_by_name(name: &str) -> Option<GroupTable> {
        match name {
            "z1" => Some(cyclic(1)),
            "z2" => Some(cyclic(2)),
            "z3" => Some(cyclic(3)),
            "z4" => Some(cyclic(4)),
            "z5" => Some(cyclic(5)),
            "z6" => Some(cyclic(6)),
            "s3" => Some(s3()),
            "d4" => Some(d4()),
            "q8" => Some(q8()),
            "v4" => Some(klein()),
            _ => None,
        }
    }

    /// The complex `Z2 -id-> Z2 -0-> Z2`.
    pub fn complex_z2_id_zero() -> ComplexCarrier {
        let z2 = cyclic(2);
        ComplexCarrier::new([z2.clone(), z2.clone(), z2], vec![0, 1], vec![0, 0])
            .expect("complex preset")
    }

    /// The complex `Z4 -mul2-> Z4 -mul2-> Z4` (doubling has square zero on Z4).
    pub fn complex_z4_double() -> ComplexCarrier {
        let z4 = cyclic(4);
        let dbl: Vec<usize> = (0..4).map(|a| (2 * a) % 4).collect();
        ComplexCarrier::new([z4.clone(), z4.clone(), z4], dbl.clone(), dbl)
            .expect("complex preset")
    }

    /// The zero complex.
    pub fn complex_zero() -> ComplexCarrier {
        let z1 = cyclic(1);
        ComplexCarrier::new([z1.clone(), z1.clone(), z1], vec![0], vec![0])
            .expect("complex preset")
    }

    /// Looks a preset complex up by name.
    pub fn complex_by_name(name: &str) -> Option<ComplexCarrier> {
        match name {
            "f3" => Some(complex_z2_id_zero()),
            "z4dbl" => Some(complex_z4_double()),
            "zero" => Some(complex_zero()),
            _ => None,
        }
    }

    /// A one-object groupoid with arrow group Z2, as an internal category in
    /// finite sets.
    pub fn intcat_z2_loop() -> IntCatCarrier {
        let mut m = BTreeMap::new();
        for u in 0..2 {
            for v in 0..2 {
                m.insert((u, v), (u + v) % 2);
            }
        }
        IntCatCarrier::new(
            1,
            2,
            vec![0, 0],
            vec![0, 0],
            vec![0],
            m,
            vec!["*".into()],
            vec!["e".into(), "t".into()],
        )
        .expect("intcat preset")
    }

    /// The walking arrow `0 -> 1` as an internal category in finite sets.
    pub fn intcat_arrow() -> IntCatCarrier {
        // C0 = {0,1}; C1 = {id0, id1, s} with s: 0 -> 1.
        let mut m = BTreeMap::new();
        m.insert((0, 0), 0);
        m.insert((1, 1), 1);
        m.insert((2, 0), 2); // s . id0
        m.insert((1, 2), 2); // id1 . s
        IntCatCarrier::new(
            2,
            3,
            vec![0, 1, 0],
            vec![0, 1, 1],
            vec![0, 1],
            m,
            vec!["0".into(), "1".into()],
            vec!["id0".into(), "id1".into(), "s".into()],
        )
        .expect("intcat preset")
    }

    /// Looks a preset internal category up by name.
    pub fn intcat_by_name(name: &str) -> Option<IntCatCarrier> {
        match name {
            "z2loop" => Some(intcat_z2_loop()),
            "arrow" => Some(intcat_arrow()),
            _ => None,
        }
    }

    /// Crossed module `0: X -> B` with a chosen action (trivial boundary).
    pub fn xmod_zero_boundary(
        x: GroupTable,
        b: GroupTable,
        act: Vec<Vec<usize>>,
    ) -> Result<XModPresentation> {
        let d = vec![b.unit; x.n];
        XModPresentation::new(x, b, d, act)
    }

    /// Trivial action table of `actor` on `target`.
    pub fn trivial_action(actor: &GroupTable, target: &GroupTable) -> Vec<Vec<usize>> {
        vec![(0..target.n).collect(); actor.n]
    }

    /// Z2 acting on Z3 (or any abelian group) by inversion.
    pub fn inversion_action(target: &GroupTable) -> Vec<Vec<usize>> {
        vec![(0..target.n).collect(), target.inv.clone()]
    }

    /// Looks a preset crossed module up by name.
    pub fn xmod_by_name(name: &str) -> Option<XModPresentation> {
        match name {
            // Z2 -0-> Z2 with trivial action.
            "z2triv" => {
                let z2 = cyclic(2);
                let act = trivial_action(&z2, &z2);
                xmod_zero_boundary(z2.clone(), z2, act).ok()
            }
            // Z3 -0-> Z2 with Z2 acting by inversion.
            "z3inv" => {
                let z3 = cyclic(3);
                let z2 = cyclic(2);
                let act = inversion_action(&z3);
                xmod_zero_boundary(z3, z2, act).ok()
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    #[test]
    fn cyclic_groups_are_groups() {
        for n in 1..=6 {
            let g = cyclic(n);
            assert_eq!(g.unit, 0);
            assert!(g.is_abelian());
        }
    }

    #[test]
    fn s3_has_six_elements_and_is_nonabelian() {
        let g = s3();
        assert_eq!(g.n, 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn d4_q8_orders_and_centers() {
        let d4 = d4();
        let q8 = q8();
        assert_eq!(d4.n, 8);
        assert_eq!(q8.n, 8);
        let center = |g: &GroupTable| {
            (0..g.n)
                .filter(|&a| (0..g.n).all(|b| g.mul(a, b) == g.mul(b, a)))
                .count()
        };
        assert_eq!(center(&d4), 2);
        assert_eq!(center(&q8), 2);
    }

    #[test]
    fn hom_enumeration_counts() {
        let z2 = cyclic(2);
        let z3 = cyclic(3);
        let z4 = cyclic(4);
        let s3 = s3();
        assert_eq!(enumerate_group_homs(&z2, &z2).len(), 2);
        assert_eq!(enumerate_group_homs(&z2, &z3).len(), 1);
        assert_eq!(enumerate_group_homs(&z4, &z2).len(), 2);
        // Homs Z2 -> S3: unit plus one per transposition.
        assert_eq!(enumerate_group_homs(&z2, &s3).len(), 4);
        // Endomorphisms of S3: trivial, 3 sign-like maps onto a 2-element
        // subgroup, 6 automorphisms.
        assert_eq!(enumerate_group_homs(&s3, &s3).len(), 10);
    }

    #[test]
    fn complex_presets_validate() {
        let f3 = complex_z2_id_zero();
        assert_eq!(f3.level[1].n, 2);
        let z4c = complex_z4_double();
        assert_eq!(z4c.d2[1], 2);
    }

    #[test]
    fn intcat_presets_validate() {
        let loopcat = intcat_z2_loop();
        assert_eq!(loopcat.c1, 2);
        let arrow = loopcat.arrow_category();
        assert_eq!(arrow.c0, 2);
        let walking = intcat_arrow();
        assert_eq!(walking.c1, 3);
    }

    #[test]
    fn semidirect_z3_z2_is_s3_sized() {
        let z3 = cyclic(3);
        let z2 = cyclic(2);
        let g = GroupTable::semidirect(&z3, &z2, &inversion_action(&z3)).unwrap();
        assert_eq!(g.n, 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn xmod_rejects_noncentral_peiffer_failure() {
        // S3 -0-> Z1 with trivial action: Peiffer demands S3 abelian.
        let s3 = s3();
        let z1 = cyclic(1);
        let act = trivial_action(&z1, &s3);
        assert!(xmod_zero_boundary(s3, z1, act).is_err());
    }
}
