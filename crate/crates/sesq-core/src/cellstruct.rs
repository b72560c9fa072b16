//! 2-cell structures over a finite category.
//!
//! A structure attaches to each ordered object pair (A,B) a set H(A,B) of
//! cells with dom/cod morphisms A -> B, a zero cell per morphism, a partial
//! vertical sum, and whisker actions by morphisms on both sides. Two
//! backends exist: `Table` enumerates every cell and stores all operation
//! tables (fully validatable), `Lazy` evaluates operations on demand for
//! canonical constructions over extensional categories whose cell-sets are
//! too large or inconvenient to enumerate.

use crate::fincat::{FiniteCategory, MorId, ObjId, PullbackSquare};
use crate::report::{Result, SesqError, ValidationReport};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Backend-specific identity of a cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CellValue {
    /// Index into the cell list of a table backend.
    Idx(usize),
    /// The unique cell sitting on a morphism (discrete structures).
    OnMor(MorId),
    /// The unique cell from `lower` to `upper` (codiscrete structures).
    Pair { lower: MorId, upper: MorId },
    /// A translation element `t` of the target carrier acting on `base`
    /// (conjugation structures on groups).
    Elem { t: usize, base: MorId },
    /// A chain homotopy out of the chain map `base`: `t1` maps level 0 to
    /// level 1, `t2` maps level 1 to level 2 of the target.
    Homotopy {
        base: MorId,
        t1: Vec<usize>,
        t2: Vec<usize>,
    },
    /// An internal transformation `h => k` with component map `t` from
    /// source objects to target arrows.
    Internal { k: MorId, t: Vec<usize>, h: MorId },
}

/// A cell of a 2-cell structure, tagged with its object pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    pub src: ObjId,
    pub dst: ObjId,
    pub value: CellValue,
}

impl Cell {
    pub fn idx(&self) -> Result<usize> {
        match self.value {
            CellValue::Idx(i) => Ok(i),
            _ => Err(SesqError::UnsupportedBackend(
                "cell does not belong to a table backend".into(),
            )),
        }
    }
}

/// Fully enumerated cell data. All tables are explicit; the builder is
/// permissive, so a `TableCells` may violate the axioms until
/// `validate_structure` has said otherwise.
#[derive(Debug, Clone, Default)]
pub struct TableCells {
    pub names: Vec<String>,
    /// Object pair of each cell.
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub dom: Vec<MorId>,
    pub cod: Vec<MorId>,
    /// morphism id -> cell index.
    pub zero: HashMap<usize, usize>,
    /// (v, u) -> v + u.
    pub vsum: HashMap<(usize, usize), usize>,
    /// (g, y) -> g.y for g a morphism out of y's target object.
    pub lwhisk: HashMap<(usize, usize), usize>,
    /// (x, f) -> x.f for f a morphism into x's source object.
    pub rwhisk: HashMap<(usize, usize), usize>,
}

/// Evaluator interface of a lazy backend. Every method receives the base
/// category; engines keep no state beyond what the category's carriers
/// provide. Enumeration is deliberately absent: constructions that can
/// enumerate their cells expose that separately.
pub trait LazyCells: fmt::Debug + Send + Sync {
    fn backend_name(&self) -> &'static str;
    fn contains(&self, cat: &FiniteCategory, cell: &Cell) -> Result<bool>;
    fn dom(&self, cat: &FiniteCategory, cell: &Cell) -> Result<MorId>;
    fn cod(&self, cat: &FiniteCategory, cell: &Cell) -> Result<MorId>;
    fn zero(&self, cat: &FiniteCategory, f: MorId) -> Result<Cell>;
    /// Value of `v + u`; the wrapper has already checked dom(v) = cod(u).
    fn vsum(&self, cat: &FiniteCategory, v: &Cell, u: &Cell) -> Result<Cell>;
    fn lwhisk(&self, cat: &FiniteCategory, g: MorId, y: &Cell) -> Result<Cell>;
    fn rwhisk(&self, cat: &FiniteCategory, x: &Cell, f: MorId) -> Result<Cell>;
    fn inverse(&self, cat: &FiniteCategory, x: &Cell) -> Result<Cell>;
    fn describe(&self, cat: &FiniteCategory, cell: &Cell) -> String;
    /// The cell into a pullback apex induced by a compatible pair of cells
    /// into the legs, for structures that support it.
    fn pair_into_pullback(
        &self,
        cat: &FiniteCategory,
        sq: &PullbackSquare,
        x: &Cell,
        y: &Cell,
    ) -> Result<Cell>;
}

#[derive(Debug)]
enum Backend {
    Table(TableCells),
    Lazy(Box<dyn LazyCells>),
}

/// A 2-cell structure over a finite category.
#[derive(Debug)]
pub struct TwoCellStructure {
    pub cat: Arc<FiniteCategory>,
    backend: Backend,
}

/// Targeted single-entry edits of a table backend, for mutation testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMutation {
    Vsum { v: usize, u: usize, new: usize },
    Lwhisk { g: usize, y: usize, new: usize },
    Rwhisk { x: usize, f: usize, new: usize },
    Zero { f: usize, new: usize },
    Dom { x: usize, new: MorId },
    Cod { x: usize, new: MorId },
}

impl TwoCellStructure {
    pub fn from_table(cat: Arc<FiniteCategory>, cells: TableCells) -> Self {
        TwoCellStructure {
            cat,
            backend: Backend::Table(cells),
        }
    }

    pub fn from_lazy(cat: Arc<FiniteCategory>, engine: Box<dyn LazyCells>) -> Self {
        TwoCellStructure {
            cat,
            backend: Backend::Lazy(engine),
        }
    }

    pub fn is_lazy(&self) -> bool {
        matches!(self.backend, Backend::Lazy(_))
    }

    pub fn backend_name(&self) -> &'static str {
        match &self.backend {
            Backend::Table(_) => "table",
            Backend::Lazy(e) => e.backend_name(),
        }
    }

    /// Read access to the enumerated tables.
    pub fn table(&self) -> Result<&TableCells> {
        match &self.backend {
            Backend::Table(t) => Ok(t),
            Backend::Lazy(e) => Err(SesqError::UnsupportedBackend(format!(
                "operation needs an enumerated backend, structure is lazy ({})",
                e.backend_name()
            ))),
        }
    }

    pub fn lazy(&self) -> Result<&dyn LazyCells> {
        match &self.backend {
            Backend::Lazy(e) => Ok(e.as_ref()),
            Backend::Table(_) => Err(SesqError::UnsupportedBackend(
                "structure is enumerated, not lazy".into(),
            )),
        }
    }

    /// The `i`-th cell of a table backend.
    pub fn cell(&self, i: usize) -> Result<Cell> {
        let t = self.table()?;
        if i >= t.names.len() {
            return Err(SesqError::UnknownId(format!("cell #{i}")));
        }
        Ok(Cell {
            src: ObjId(t.src[i]),
            dst: ObjId(t.dst[i]),
            value: CellValue::Idx(i),
        })
    }

    /// All cells of a table backend.
    pub fn all_cells(&self) -> Result<Vec<Cell>> {
        let t = self.table()?;
        (0..t.names.len()).map(|i| self.cell(i)).collect()
    }

    /// Cells of a table backend over the object pair (a, b).
    pub fn cells_between(&self, a: ObjId, b: ObjId) -> Result<Vec<Cell>> {
        let t = self.table()?;
        (0..t.names.len())
            .filter(|&i| t.src[i] == a.0 && t.dst[i] == b.0)
            .map(|i| self.cell(i))
            .collect()
    }

    pub fn cell_name(&self, cell: &Cell) -> String {
        match &self.backend {
            Backend::Table(t) => match cell.value {
                CellValue::Idx(i) if i < t.names.len() => t.names[i].clone(),
                _ => format!("{:?}", cell.value),
            },
            Backend::Lazy(e) => e.describe(&self.cat, cell),
        }
    }

    pub fn dom(&self, cell: &Cell) -> Result<MorId> {
        match &self.backend {
            Backend::Table(t) => Ok(t.dom[cell.idx()?]),
            Backend::Lazy(e) => e.dom(&self.cat, cell),
        }
    }

    pub fn cod(&self, cell: &Cell) -> Result<MorId> {
        match &self.backend {
            Backend::Table(t) => Ok(t.cod[cell.idx()?]),
            Backend::Lazy(e) => e.cod(&self.cat, cell),
        }
    }

    pub fn zero(&self, f: MorId) -> Result<Cell> {
        match &self.backend {
            Backend::Table(t) => {
                let i = *t.zero.get(&f.0).ok_or_else(|| {
                    SesqError::InvalidPresentation(format!(
                        "no zero cell declared for {}",
                        self.cat.morphism_name(f)
                    ))
                })?;
                self.cell(i)
            }
            Backend::Lazy(e) => e.zero(&self.cat, f),
        }
    }

    /// Vertical composite `v + u`, defined when dom(v) = cod(u) over the
    /// same object pair.
    pub fn vcomp(&self, v: &Cell, u: &Cell) -> Result<Cell> {
        if v.src != u.src || v.dst != u.dst || self.dom(v)? != self.cod(u)? {
            return Err(SesqError::NotVerticallyComposable(format!(
                "{} + {}",
                self.cell_name(v),
                self.cell_name(u)
            )));
        }
        match &self.backend {
            Backend::Table(t) => {
                let key = (v.idx()?, u.idx()?);
                let w = *t.vsum.get(&key).ok_or_else(|| {
                    SesqError::InvalidPresentation(format!(
                        "vsum entry missing for {} + {}",
                        self.cell_name(v),
                        self.cell_name(u)
                    ))
                })?;
                self.cell(w)
            }
            Backend::Lazy(e) => e.vsum(&self.cat, v, u),
        }
    }

    /// Left whisker `g . y` for `g` out of y's target object.
    pub fn lwhisker(&self, g: MorId, y: &Cell) -> Result<Cell> {
        if self.cat.dom(g) != y.dst {
            return Err(SesqError::NotWhiskerable(format!(
                "{} . {}",
                self.cat.morphism_name(g),
                self.cell_name(y)
            )));
        }
        match &self.backend {
            Backend::Table(t) => {
                let key = (g.0, y.idx()?);
                let w = *t.lwhisk.get(&key).ok_or_else(|| {
                    SesqError::InvalidPresentation(format!(
                        "lwhisk entry missing for {} . {}",
                        self.cat.morphism_name(g),
                        self.cell_name(y)
                    ))
                })?;
                self.cell(w)
            }
            Backend::Lazy(e) => e.lwhisk(&self.cat, g, y),
        }
    }

    /// Right whisker `x . f` for `f` into x's source object.
    pub fn rwhisker(&self, x: &Cell, f: MorId) -> Result<Cell> {
        if self.cat.cod(f) != x.src {
            return Err(SesqError::NotWhiskerable(format!(
                "{} . {}",
                self.cell_name(x),
                self.cat.morphism_name(f)
            )));
        }
        match &self.backend {
            Backend::Table(t) => {
                let key = (x.idx()?, f.0);
                let w = *t.rwhisk.get(&key).ok_or_else(|| {
                    SesqError::InvalidPresentation(format!(
                        "rwhisk entry missing for {} . {}",
                        self.cell_name(x),
                        self.cat.morphism_name(f)
                    ))
                })?;
                self.cell(w)
            }
            Backend::Lazy(e) => e.rwhisk(&self.cat, x, f),
        }
    }

    /// The vertical inverse of `x`: the unique `-x` with
    /// `x + (-x) = 0_{cod x}` and `(-x) + x = 0_{dom x}`.
    pub fn inverse(&self, x: &Cell) -> Result<Cell> {
        match &self.backend {
            Backend::Table(_) => {
                let zc = self.zero(self.cod(x)?)?;
                let zd = self.zero(self.dom(x)?)?;
                for cand in self.cells_between(x.src, x.dst)? {
                    if self.dom(&cand)? == self.cod(x)?
                        && self.cod(&cand)? == self.dom(x)?
                        && self.vcomp(x, &cand).ok().as_ref() == Some(&zc)
                        && self.vcomp(&cand, x).ok().as_ref() == Some(&zd)
                    {
                        return Ok(cand);
                    }
                }
                Err(SesqError::NotInvertible(self.cell_name(x)))
            }
            Backend::Lazy(e) => e.inverse(&self.cat, x),
        }
    }

    /// True when every cell has a vertical inverse.
    pub fn is_invertible_structure(&self) -> Result<bool> {
        for c in self.all_cells()? {
            if self.inverse(&c).is_err() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Copy of the structure with one table entry replaced.
    pub fn mutated(&self, m: TableMutation) -> Result<TwoCellStructure> {
        let mut t = self.table()?.clone();
        match m {
            TableMutation::Vsum { v, u, new } => {
                t.vsum.insert((v, u), new);
            }
            TableMutation::Lwhisk { g, y, new } => {
                t.lwhisk.insert((g, y), new);
            }
            TableMutation::Rwhisk { x, f, new } => {
                t.rwhisk.insert((x, f), new);
            }
            TableMutation::Zero { f, new } => {
                t.zero.insert(f, new);
            }
            TableMutation::Dom { x, new } => {
                t.dom[x] = new;
            }
            TableMutation::Cod { x, new } => {
                t.cod[x] = new;
            }
        }
        Ok(TwoCellStructure::from_table(Arc::clone(&self.cat), t))
    }
}

/// Checks the full axiom system of an enumerated structure and reports
/// every violated instance. An empty report is exactly the statement that
/// the data is a 2-cell structure over its base.
pub fn validate_structure(h: &TwoCellStructure) -> Result<ValidationReport> {
    let t = h.table()?;
    let cat = h.cat.as_ref();
    let mut r = ValidationReport::new();
    let n = t.names.len();
    let cname = |i: usize| t.names[i].clone();
    let mname = |m: MorId| cat.morphism_name(m);

    // Cell endpoints: dom/cod are morphisms src -> dst.
    for i in 0..n {
        for (which, m) in [("dom", t.dom[i]), ("cod", t.cod[i])] {
            if cat.dom(m) != ObjId(t.src[i]) || cat.cod(m) != ObjId(t.dst[i]) {
                r.push(
                    "cell-endpoints",
                    vec![cname(i), mname(m)],
                    format!("{which} of cell {} is not a morphism of its object pair", cname(i)),
                );
            }
        }
    }

    // Zero cells: total over morphisms, correctly placed, dom = cod = f.
    for m in cat.morphisms() {
        match t.zero.get(&m.0) {
            None => r.push(
                "zero-total",
                vec![mname(m)],
                format!("no zero cell declared for morphism {}", mname(m)),
            ),
            Some(&z) => {
                if z >= n {
                    r.push(
                        "zero-total",
                        vec![mname(m)],
                        format!("zero cell of {} is out of range", mname(m)),
                    );
                    continue;
                }
                if t.src[z] != cat.dom(m).0 || t.dst[z] != cat.cod(m).0 {
                    r.push(
                        "zero-total",
                        vec![mname(m), cname(z)],
                        format!("zero cell of {} lies over the wrong object pair", mname(m)),
                    );
                }
                if t.dom[z] != m || t.cod[z] != m {
                    r.push(
                        "zero-dom-cod",
                        vec![mname(m), cname(z)],
                        format!("zero cell of {} must have dom = cod = {}", mname(m), mname(m)),
                    );
                }
            }
        }
    }

    // Vertical sum: defined exactly on matching pairs, with the
    // category-object laws (dom/cod, units, associativity).
    for v in 0..n {
        for u in 0..n {
            let matches = t.src[v] == t.src[u] && t.dst[v] == t.dst[u] && t.dom[v] == t.cod[u];
            match t.vsum.get(&(v, u)) {
                None if matches => r.push(
                    "vsum-total",
                    vec![cname(v), cname(u)],
                    format!("vsum undefined for composable pair {} + {}", cname(v), cname(u)),
                ),
                Some(_) if !matches => r.push(
                    "vsum-partiality",
                    vec![cname(v), cname(u)],
                    format!("vsum defined for non-composable pair {} + {}", cname(v), cname(u)),
                ),
                Some(&w) if w >= n => r.push(
                    "vsum-total",
                    vec![cname(v), cname(u)],
                    "vsum entry out of range".to_string(),
                ),
                Some(&w) => {
                    if t.src[w] != t.src[v] || t.dst[w] != t.dst[v] {
                        r.push(
                            "vsum-dom",
                            vec![cname(v), cname(u), cname(w)],
                            format!("{} + {} lies over the wrong object pair", cname(v), cname(u)),
                        );
                    } else {
                        if t.dom[w] != t.dom[u] {
                            r.push(
                                "vsum-dom",
                                vec![cname(v), cname(u), cname(w)],
                                format!("dom({} + {}) differs from dom({})", cname(v), cname(u), cname(u)),
                            );
                        }
                        if t.cod[w] != t.cod[v] {
                            r.push(
                                "vsum-cod",
                                vec![cname(v), cname(u), cname(w)],
                                format!("cod({} + {}) differs from cod({})", cname(v), cname(u), cname(v)),
                            );
                        }
                    }
                }
                None => {}
            }
        }
    }
    let vs = |a: usize, b: usize| t.vsum.get(&(a, b)).copied();
    for x in 0..n {
        if let Some(&zc) = t.zero.get(&t.cod[x].0) {
            if let Some(w) = vs(zc, x) {
                if w != x {
                    r.push(
                        "vsum-unit",
                        vec![cname(x)],
                        format!("0 + {} is {} instead of {}", cname(x), cname(w), cname(x)),
                    );
                }
            }
        }
        if let Some(&zd) = t.zero.get(&t.dom[x].0) {
            if let Some(w) = vs(x, zd) {
                if w != x {
                    r.push(
                        "vsum-unit",
                        vec![cname(x)],
                        format!("{} + 0 is {} instead of {}", cname(x), cname(w), cname(x)),
                    );
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = match vs(x, y) {
                Some(w) => w,
                None => continue,
            };
            for z in 0..n {
                let yz = match vs(y, z) {
                    Some(w) => w,
                    None => continue,
                };
                if let (Some(l), Some(rr)) = (vs(xy, z), vs(x, yz)) {
                    if l != rr {
                        r.push(
                            "vsum-assoc",
                            vec![cname(x), cname(y), cname(z)],
                            format!(
                                "({} + {}) + {} = {} but {} + ({} + {}) = {}",
                                cname(x), cname(y), cname(z), cname(l),
                                cname(x), cname(y), cname(z), cname(rr)
                            ),
                        );
                    }
                }
            }
        }
    }

    // Whisker actions: totality, endpoints, compatibility with zero and
    // vsum, functoriality in the morphism argument, unit action.
    let ms = cat.morphisms();
    for &g in &ms {
        for y in 0..n {
            let applicable = cat.dom(g).0 == t.dst[y];
            match t.lwhisk.get(&(g.0, y)) {
                None if applicable => r.push(
                    "lwhisk-total",
                    vec![mname(g), cname(y)],
                    format!("left whisker undefined for {} . {}", mname(g), cname(y)),
                ),
                Some(_) if !applicable => r.push(
                    "lwhisk-total",
                    vec![mname(g), cname(y)],
                    format!("left whisker defined for non-matching {} . {}", mname(g), cname(y)),
                ),
                Some(&w) if w >= n => r.push(
                    "lwhisk-total",
                    vec![mname(g), cname(y)],
                    "left whisker entry out of range".to_string(),
                ),
                Some(&w) => {
                    if t.src[w] != t.src[y] || t.dst[w] != cat.cod(g).0 {
                        r.push(
                            "whisk-dom",
                            vec![mname(g), cname(y), cname(w)],
                            format!("{} . {} lies over the wrong object pair", mname(g), cname(y)),
                        );
                    } else {
                        let expect_dom = cat.compose(g, t.dom[y]);
                        let expect_cod = cat.compose(g, t.cod[y]);
                        if expect_dom.ok() != Some(t.dom[w]) {
                            r.push(
                                "whisk-dom",
                                vec![mname(g), cname(y)],
                                format!("dom({} . {}) is not {} . dom({})", mname(g), cname(y), mname(g), cname(y)),
                            );
                        }
                        if expect_cod.ok() != Some(t.cod[w]) {
                            r.push(
                                "whisk-cod",
                                vec![mname(g), cname(y)],
                                format!("cod({} . {}) is not {} . cod({})", mname(g), cname(y), mname(g), cname(y)),
                            );
                        }
                    }
                }
                None => {}
            }
        }
        for x in 0..n {
            let applicable = cat.cod(g).0 == t.src[x];
            match t.rwhisk.get(&(x, g.0)) {
                None if applicable => r.push(
                    "rwhisk-total",
                    vec![cname(x), mname(g)],
                    format!("right whisker undefined for {} . {}", cname(x), mname(g)),
                ),
                Some(_) if !applicable => r.push(
                    "rwhisk-total",
                    vec![cname(x), mname(g)],
                    format!("right whisker defined for non-matching {} . {}", cname(x), mname(g)),
                ),
                Some(&w) if w >= n => r.push(
                    "rwhisk-total",
                    vec![cname(x), mname(g)],
                    "right whisker entry out of range".to_string(),
                ),
                Some(&w) => {
                    if t.src[w] != cat.dom(g).0 || t.dst[w] != t.dst[x] {
                        r.push(
                            "whisk-dom",
                            vec![cname(x), mname(g), cname(w)],
                            format!("{} . {} lies over the wrong object pair", cname(x), mname(g)),
                        );
                    } else {
                        let expect_dom = cat.compose(t.dom[x], g);
                        let expect_cod = cat.compose(t.cod[x], g);
                        if expect_dom.ok() != Some(t.dom[w]) {
                            r.push(
                                "whisk-dom",
                                vec![cname(x), mname(g)],
                                format!("dom({} . {}) is not dom({}) . {}", cname(x), mname(g), cname(x), mname(g)),
                            );
                        }
                        if expect_cod.ok() != Some(t.cod[w]) {
                            r.push(
                                "whisk-cod",
                                vec![cname(x), mname(g)],
                                format!("cod({} . {}) is not cod({}) . {}", cname(x), mname(g), cname(x), mname(g)),
                            );
                        }
                    }
                }
                None => {}
            }
        }
    }
    let lw = |g: MorId, y: usize| t.lwhisk.get(&(g.0, y)).copied();
    let rw = |x: usize, f: MorId| t.rwhisk.get(&(x, f.0)).copied();
    // Whiskers preserve zero cells: g.0_f = 0_{g f} and 0_g.f = 0_{g f}.
    for &g in &ms {
        for &f in &ms {
            let gf = match cat.compose(g, f) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let (zf, zg, zgf) = match (
                t.zero.get(&f.0),
                t.zero.get(&g.0),
                t.zero.get(&gf.0),
            ) {
                (Some(&a), Some(&b), Some(&c)) => (a, b, c),
                _ => continue,
            };
            if let Some(w) = lw(g, zf) {
                if w != zgf {
                    r.push(
                        "whisk-zero",
                        vec![mname(g), mname(f)],
                        format!("{} . 0 is {} instead of the zero cell of {}", mname(g), cname(w), mname(gf)),
                    );
                }
            }
            if let Some(w) = rw(zg, f) {
                if w != zgf {
                    r.push(
                        "whisk-zero",
                        vec![mname(g), mname(f)],
                        format!("0 . {} is {} instead of the zero cell of {}", mname(f), cname(w), mname(gf)),
                    );
                }
            }
        }
    }
    // Whiskers distribute over vsum.
    for (&(v, u), &w) in &t.vsum {
        for &g in &ms {
            if cat.dom(g).0 == t.dst[v] {
                if let (Some(gv), Some(gu), Some(gw)) = (lw(g, v), lw(g, u), lw(g, w)) {
                    if vs(gv, gu) != Some(gw) {
                        r.push(
                            "whisk-vsum",
                            vec![mname(g), cname(v), cname(u)],
                            format!("{} . ({} + {}) differs from {} . {} + {} . {}",
                                mname(g), cname(v), cname(u), mname(g), cname(v), mname(g), cname(u)),
                        );
                    }
                }
            }
            if cat.cod(g).0 == t.src[v] {
                if let (Some(vg), Some(ug), Some(wg)) = (rw(v, g), rw(u, g), rw(w, g)) {
                    if vs(vg, ug) != Some(wg) {
                        r.push(
                            "whisk-vsum",
                            vec![cname(v), cname(u), mname(g)],
                            format!("({} + {}) . {} differs from {} . {} + {} . {}",
                                cname(v), cname(u), mname(g), cname(v), mname(g), cname(u), mname(g)),
                        );
                    }
                }
            }
        }
    }
    // Functoriality of the actions and the unit action.
    for x in 0..n {
        for &g in &ms {
            if cat.dom(g).0 != t.dst[x] {
                continue;
            }
            for &g2 in &ms {
                if cat.dom(g2) != cat.cod(g) {
                    continue;
                }
                let g2g = match cat.compose(g2, g) {
                    Ok(m) => m,
                    Err(_) => continue,
                };
                let step = lw(g, x).and_then(|w| lw(g2, w));
                let once = lw(g2g, x);
                if let (Some(a), Some(b)) = (step, once) {
                    if a != b {
                        r.push(
                            "whisk-assoc",
                            vec![mname(g2), mname(g), cname(x)],
                            format!("{} . ({} . {}) differs from ({} . {}) . {}",
                                mname(g2), mname(g), cname(x), mname(g2), mname(g), cname(x)),
                        );
                    }
                }
            }
        }
        for &f in &ms {
            if cat.cod(f).0 != t.src[x] {
                continue;
            }
            for &f2 in &ms {
                if cat.cod(f2) != cat.dom(f) {
                    continue;
                }
                let ff2 = match cat.compose(f, f2) {
                    Ok(m) => m,
                    Err(_) => continue,
                };
                let step = rw(x, f).and_then(|w| rw(w, f2));
                let once = rw(x, ff2);
                if let (Some(a), Some(b)) = (step, once) {
                    if a != b {
                        r.push(
                            "whisk-assoc",
                            vec![cname(x), mname(f), mname(f2)],
                            format!("({} . {}) . {} differs from {} . ({} . {})",
                                cname(x), mname(f), mname(f2), cname(x), mname(f), mname(f2)),
                        );
                    }
                }
            }
        }
        // Mixed associativity g.(x.f) = (g.x).f.
        for &g in &ms {
            if cat.dom(g).0 != t.dst[x] {
                continue;
            }
            for &f in &ms {
                if cat.cod(f).0 != t.src[x] {
                    continue;
                }
                let left = rw(x, f).and_then(|w| lw(g, w));
                let right = lw(g, x).and_then(|w| rw(w, f));
                if let (Some(a), Some(b)) = (left, right) {
                    if a != b {
                        r.push(
                            "whisk-mixed",
                            vec![mname(g), cname(x), mname(f)],
                            format!("{} . ({} . {}) differs from ({} . {}) . {}",
                                mname(g), cname(x), mname(f), mname(g), cname(x), mname(f)),
                        );
                    }
                }
            }
        }
        if let Ok(i) = cat.identity(ObjId(t.dst[x])) {
            if let Some(w) = lw(i, x) {
                if w != x {
                    r.push(
                        "whisk-unit",
                        vec![cname(x)],
                        format!("identity whisker changes {} into {}", cname(x), cname(w)),
                    );
                }
            }
        }
        if let Ok(i) = cat.identity(ObjId(t.src[x])) {
            if let Some(w) = rw(x, i) {
                if w != x {
                    r.push(
                        "whisk-unit",
                        vec![cname(x)],
                        format!("identity whisker changes {} into {}", cname(x), cname(w)),
                    );
                }
            }
        }
    }
    Ok(r)
}

/// A family of cell maps H(A,B) -> H'(A,B) over a shared base category,
/// given on table backends as a total map of cell indices.
pub type CellMap = HashMap<usize, usize>;

/// Checks that `phi` is a morphism of 2-cell structures: it preserves
/// dom, cod, zero, vsum, and both whisker actions.
pub fn check_structure_morphism(
    phi: &CellMap,
    h: &TwoCellStructure,
    h2: &TwoCellStructure,
) -> Result<ValidationReport> {
    let t = h.table()?;
    let t2 = h2.table()?;
    if !Arc::ptr_eq(&h.cat, &h2.cat) {
        return Err(SesqError::ShapeMismatch(
            "structures live over different base categories".into(),
        ));
    }
    let n = t.names.len();
    let n2 = t2.names.len();
    for i in 0..n {
        match phi.get(&i) {
            None => {
                return Err(SesqError::ShapeMismatch(format!(
                    "map undefined on cell {}",
                    t.names[i]
                )))
            }
            Some(&j) if j >= n2 => {
                return Err(SesqError::ShapeMismatch(format!(
                    "image of cell {} is out of range",
                    t.names[i]
                )))
            }
            Some(&j) => {
                if t.src[i] != t2.src[j] || t.dst[i] != t2.dst[j] {
                    return Err(SesqError::ShapeMismatch(format!(
                        "image of cell {} lies over a different object pair",
                        t.names[i]
                    )));
                }
            }
        }
    }
    let mut r = ValidationReport::new();
    let p = |i: usize| phi[&i];
    let cat = h.cat.as_ref();
    for i in 0..n {
        if t2.dom[p(i)] != t.dom[i] {
            r.push(
                "morphism-dom",
                vec![t.names[i].clone()],
                format!("map does not preserve dom of {}", t.names[i]),
            );
        }
        if t2.cod[p(i)] != t.cod[i] {
            r.push(
                "morphism-cod",
                vec![t.names[i].clone()],
                format!("map does not preserve cod of {}", t.names[i]),
            );
        }
    }
    for m in cat.morphisms() {
        if let (Some(&z), Some(&z2)) = (t.zero.get(&m.0), t2.zero.get(&m.0)) {
            if p(z) != z2 {
                r.push(
                    "morphism-zero",
                    vec![cat.morphism_name(m)],
                    format!("zero cell of {} is not sent to a zero cell", cat.morphism_name(m)),
                );
            }
        }
    }
    for (&(v, u), &w) in &t.vsum {
        match t2.vsum.get(&(p(v), p(u))) {
            Some(&w2) if w2 == p(w) => {}
            _ => r.push(
                "morphism-vsum",
                vec![t.names[v].clone(), t.names[u].clone()],
                format!("map does not commute with {} + {}", t.names[v], t.names[u]),
            ),
        }
    }
    for (&(g, y), &w) in &t.lwhisk {
        match t2.lwhisk.get(&(g, p(y))) {
            Some(&w2) if w2 == p(w) => {}
            _ => r.push(
                "morphism-whisk",
                vec![cat.morphism_name(MorId(g)), t.names[y].clone()],
                format!(
                    "map does not commute with {} . {}",
                    cat.morphism_name(MorId(g)),
                    t.names[y]
                ),
            ),
        }
    }
    for (&(x, f), &w) in &t.rwhisk {
        match t2.rwhisk.get(&(p(x), f)) {
            Some(&w2) if w2 == p(w) => {}
            _ => r.push(
                "morphism-whisk",
                vec![t.names[x].clone(), cat.morphism_name(MorId(f))],
                format!(
                    "map does not commute with {} . {}",
                    t.names[x],
                    cat.morphism_name(MorId(f))
                ),
            ),
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::TableCatBuilder;

    /// One object, identity morphism, cells = Z2 written additively.
    pub fn z2_one_object() -> TwoCellStructure {
        let mut b = TableCatBuilder::new();
        let star = b.object("*");
        let id = b.identity(star);
        let cat = Arc::new(b.build());
        let mut t = TableCells::default();
        for name in ["c0", "c1"] {
            t.names.push(name.into());
            t.src.push(0);
            t.dst.push(0);
            t.dom.push(id);
            t.cod.push(id);
        }
        t.zero.insert(id.0, 0);
        for v in 0..2usize {
            for u in 0..2usize {
                t.vsum.insert((v, u), (v + u) % 2);
            }
        }
        for c in 0..2usize {
            t.lwhisk.insert((id.0, c), c);
            t.rwhisk.insert((c, id.0), c);
        }
        TwoCellStructure::from_table(cat, t)
    }

    #[test]
    fn z2_structure_validates_clean() {
        let h = z2_one_object();
        let r = validate_structure(&h).unwrap();
        assert!(r.ok(), "unexpected findings:\n{r}");
        assert!(h.is_invertible_structure().unwrap());
    }

    #[test]
    fn corrupting_vsum_is_detected() {
        let h = z2_one_object();
        let bad = h
            .mutated(TableMutation::Vsum { v: 0, u: 1, new: 0 })
            .unwrap();
        let r = validate_structure(&bad).unwrap();
        assert!(!r.ok());
        assert!(r.findings.iter().any(|f| f.axiom == "vsum-unit"));
    }

    #[test]
    fn some_mutations_break_no_axiom() {
        // Rewiring 1 + 1 to 1 turns Z2's sum into Boolean OR, which is a
        // perfectly good commutative monoid: the validator must stay quiet.
        let h = z2_one_object();
        let or = h
            .mutated(TableMutation::Vsum { v: 1, u: 1, new: 1 })
            .unwrap();
        let r = validate_structure(&or).unwrap();
        assert!(r.ok(), "unexpected findings:\n{r}");
        assert!(!or.is_invertible_structure().unwrap());
    }

    #[test]
    fn vcomp_and_inverse_follow_the_tables() {
        let h = z2_one_object();
        let c1 = h.cell(1).unwrap();
        let sum = h.vcomp(&c1, &c1).unwrap();
        assert_eq!(sum, h.cell(0).unwrap());
        assert_eq!(h.inverse(&c1).unwrap(), c1);
    }

    #[test]
    fn vcomp_refuses_wrong_endpoints() {
        // Two parallel endocells over distinct dom/cod pairs: build a
        // two-morphism category and one non-zero cell between them.
        let mut b = TableCatBuilder::new();
        let star = b.object("*");
        let id = b.identity(star);
        let f = b.morphism("f", star, star);
        b.compose_rule(f, f, id);
        let cat = Arc::new(b.build());
        let mut t = TableCells::default();
        for (name, d, c) in [("z_id", id, id), ("z_f", f, f), ("u", id, f)] {
            t.names.push(name.into());
            t.src.push(0);
            t.dst.push(0);
            t.dom.push(d);
            t.cod.push(c);
        }
        t.zero.insert(id.0, 0);
        t.zero.insert(f.0, 1);
        let h = TwoCellStructure::from_table(cat, t);
        let u = h.cell(2).unwrap();
        let zid = h.cell(0).unwrap();
        // dom(u) = id = cod(z_id): composable. dom(z_id) = id != cod(u) = f.
        assert!(h.vcomp(&zid, &u).is_err());
        assert!(matches!(
            h.vcomp(&u, &u),
            Err(SesqError::NotVerticallyComposable(_))
        ));
    }

    #[test]
    fn identity_cell_map_is_a_morphism() {
        let h = z2_one_object();
        let h2 = z2_one_object();
        // Same base category required: rebuild h2 over h's category.
        let t2 = h2.table().unwrap().clone();
        let h2 = TwoCellStructure::from_table(Arc::clone(&h.cat), t2);
        let phi: CellMap = (0..2).map(|i| (i, i)).collect();
        let r = check_structure_morphism(&phi, &h, &h2).unwrap();
        assert!(r.ok());
        // Swapping the zero cell breaks several equations.
        let swap: CellMap = vec![(0, 1), (1, 0)].into_iter().collect();
        let r = check_structure_morphism(&swap, &h, &h2).unwrap();
        assert!(r.findings.iter().any(|f| f.axiom == "morphism-zero"));
    }
}
