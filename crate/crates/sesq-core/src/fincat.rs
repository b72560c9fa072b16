//! Finite categories in two presentations.
//!
//! A `Table` category stores objects, morphisms, identities, and a
//! composition table explicitly; everything is enumerable and nothing is
//! trusted until `validate_category` has passed. An `Ext` category holds
//! structured carriers (finite sets, groups, chain complexes, internal
//! categories) whose morphisms are concrete structure-preserving maps,
//! interned on demand so equality of `MorId`s is equality of maps.
//!
//! Convention: `compose(g, f)` is "g after f" and is defined when
//! `dom(g) == cod(f)`.

use crate::algebra::{ComplexCarrier, GroupTable, IntCatCarrier, ENUM_CAP};
use crate::report::{Result, SesqError, ValidationReport};
use std::collections::HashMap;
use std::sync::RwLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub usize);

/// A commuting square `f . p1 = g . p2` chosen as the pullback of the
/// cospan `(f, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PullbackSquare {
    pub apex: ObjId,
    pub p1: MorId,
    pub p2: MorId,
    pub f: MorId,
    pub g: MorId,
}

/// Structured carrier of an extensional object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtObject {
    /// A finite set with elements `0..n`.
    Set(usize),
    Group(GroupTable),
    Complex(ComplexCarrier),
    IntCat(IntCatCarrier),
}

impl ExtObject {
    pub fn kind(&self) -> &'static str {
        match self {
            ExtObject::Set(_) => "set",
            ExtObject::Group(_) => "group",
            ExtObject::Complex(_) => "complex",
            ExtObject::IntCat(_) => "intcat",
        }
    }
}

/// Underlying data of an extensional morphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtMor {
    /// Graph of a function between set carriers (a homomorphism when the
    /// endpoints are groups).
    Fn(Vec<usize>),
    /// Level maps of a chain map, indexed 0, 1, 2.
    Chain([Vec<usize>; 3]),
    /// An internal functor, as its arrow and object components.
    Functor { f1: Vec<usize>, f0: Vec<usize> },
}

#[derive(Debug, Clone)]
struct MorRec {
    name: String,
    dom: usize,
    cod: usize,
    data: ExtMor,
}

#[derive(Debug, Clone)]
enum PbProv {
    Flat(Vec<(usize, usize)>),
    Levels([Vec<(usize, usize)>; 3]),
}

#[derive(Debug, Clone)]
struct PbRecord {
    square: PullbackSquare,
    prov: PbProv,
}

#[derive(Debug, Default)]
struct ExtInner {
    objects: Vec<(String, ExtObject)>,
    mors: Vec<MorRec>,
    index: HashMap<(usize, usize, ExtMor), usize>,
    identities: Vec<usize>,
    pullbacks: HashMap<(usize, usize), usize>,
    pb_records: Vec<PbRecord>,
}

#[derive(Debug)]
pub struct ExtCat {
    inner: RwLock<ExtInner>,
}

#[derive(Debug, Clone)]
struct TableInner {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    /// Identity morphism per object, if assigned.
    ids: Vec<Option<usize>>,
    comp: HashMap<(usize, usize), usize>,
}

#[derive(Debug)]
pub struct TableCat {
    t: TableInner,
    pb_cache: RwLock<HashMap<(usize, usize), Option<PullbackSquare>>>,
}

#[derive(Debug)]
enum CatBackend {
    Table(TableCat),
    Ext(ExtCat),
}

/// A finite category, by table or by structured carriers.
#[derive(Debug)]
pub struct FiniteCategory {
    backend: CatBackend,
}

/// Incremental builder for table categories. Deliberately permissive: a
/// built category may violate the axioms, which `validate_category` will
/// then report. Mutation tests depend on this.
#[derive(Debug, Default, Clone)]
pub struct TableCatBuilder {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    ids: Vec<Option<usize>>,
    comp: HashMap<(usize, usize), usize>,
}

impl TableCatBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> ObjId {
        self.obj_names.push(name.to_string());
        self.ids.push(None);
        ObjId(self.obj_names.len() - 1)
    }

    /// Adds a morphism and returns its id. Identities are ordinary
    /// morphisms marked via `identity`.
    pub fn morphism(&mut self, name: &str, dom: ObjId, cod: ObjId) -> MorId {
        self.mor_names.push(name.to_string());
        self.dom.push(dom.0);
        self.cod.push(cod.0);
        MorId(self.mor_names.len() - 1)
    }

    /// Adds a morphism and marks it as the identity of its object.
    pub fn identity(&mut self, obj: ObjId) -> MorId {
        let name = format!("id_{}", self.obj_names[obj.0]);
        let m = self.morphism(&name, obj, obj);
        self.ids[obj.0] = Some(m.0);
        m
    }

    /// Marks an already-added morphism as the identity of `obj`.
    pub fn mark_identity(&mut self, obj: ObjId, m: MorId) {
        self.ids[obj.0] = Some(m.0);
    }

    /// Declares `compose(g, f) = h`.
    pub fn compose_rule(&mut self, g: MorId, f: MorId, h: MorId) {
        self.comp.insert((g.0, f.0), h.0);
    }

    /// Fills in every composite that is forced by identities: `id . f = f`
    /// and `f . id = f` for all `f`. Explicit rules take precedence.
    pub fn close_identities(&mut self) {
        for m in 0..self.mor_names.len() {
            if let Some(i) = self.ids[self.cod[m]] {
                self.comp.entry((i, m)).or_insert(m);
            }
            if let Some(i) = self.ids[self.dom[m]] {
                self.comp.entry((m, i)).or_insert(m);
            }
        }
    }

    pub fn build(mut self) -> FiniteCategory {
        self.close_identities();
        FiniteCategory {
            backend: CatBackend::Table(TableCat {
                t: TableInner {
                    obj_names: self.obj_names,
                    mor_names: self.mor_names,
                    dom: self.dom,
                    cod: self.cod,
                    ids: self.ids,
                    comp: self.comp,
                },
                pb_cache: RwLock::new(HashMap::new()),
            }),
        }
    }
}

fn check_ext_data(dom: &ExtObject, cod: &ExtObject, data: &ExtMor) -> Result<()> {
    let bad = |msg: String| Err(SesqError::TypeMismatch(msg));
    match (dom, cod, data) {
        (ExtObject::Set(n), ExtObject::Set(m), ExtMor::Fn(f)) => {
            if f.len() != *n || f.iter().any(|&v| v >= *m) {
                return bad("function graph does not fit its endpoints".into());
            }
            Ok(())
        }
        (ExtObject::Group(a), ExtObject::Group(b), ExtMor::Fn(f)) => {
            if !a.is_hom_into(b, f) {
                return bad("carrier map is not a group homomorphism".into());
            }
            Ok(())
        }
        (ExtObject::Complex(a), ExtObject::Complex(b), ExtMor::Chain(f)) => {
            if !a.is_chain_map_into(b, f) {
                return bad("level maps are not a chain map".into());
            }
            Ok(())
        }
        (ExtObject::IntCat(a), ExtObject::IntCat(b), ExtMor::Functor { f1, f0 }) => {
            if !a.is_functor_into(b, f1, f0) {
                return bad("component maps are not an internal functor".into());
            }
            Ok(())
        }
        _ => bad(format!(
            "morphism data does not match object kinds {} -> {}",
            dom.kind(),
            cod.kind()
        )),
    }
}

fn ext_identity_data(obj: &ExtObject) -> ExtMor {
    match obj {
        ExtObject::Set(n) => ExtMor::Fn((0..*n).collect()),
        ExtObject::Group(g) => ExtMor::Fn((0..g.n).collect()),
        ExtObject::Complex(c) => ExtMor::Chain([
            (0..c.level[0].n).collect(),
            (0..c.level[1].n).collect(),
            (0..c.level[2].n).collect(),
        ]),
        ExtObject::IntCat(c) => ExtMor::Functor {
            f1: (0..c.c1).collect(),
            f0: (0..c.c0).collect(),
        },
    }
}

fn ext_compose_data(g: &ExtMor, f: &ExtMor) -> ExtMor {
    let comp = |gv: &[usize], fv: &[usize]| fv.iter().map(|&x| gv[x]).collect::<Vec<_>>();
    match (g, f) {
        (ExtMor::Fn(gv), ExtMor::Fn(fv)) => ExtMor::Fn(comp(gv, fv)),
        (ExtMor::Chain(gv), ExtMor::Chain(fv)) => ExtMor::Chain([
            comp(&gv[0], &fv[0]),
            comp(&gv[1], &fv[1]),
            comp(&gv[2], &fv[2]),
        ]),
        (
            ExtMor::Functor { f1: g1, f0: g0 },
            ExtMor::Functor { f1, f0 },
        ) => ExtMor::Functor {
            f1: comp(g1, f1),
            f0: comp(g0, f0),
        },
        _ => unreachable!("composable morphisms share a sort"),
    }
}

impl ExtCat {
    fn new(objects: Vec<(String, ExtObject)>) -> Self {
        let cat = ExtCat {
            inner: RwLock::new(ExtInner::default()),
        };
        {
            let mut inner = cat.inner.write().unwrap();
            for (name, obj) in objects {
                Self::push_object(&mut inner, name, obj);
            }
        }
        cat
    }

    fn push_object(inner: &mut ExtInner, name: String, obj: ExtObject) -> usize {
        let idx = inner.objects.len();
        let id_data = ext_identity_data(&obj);
        inner.objects.push((name.clone(), obj));
        let mid = Self::push_mor(inner, format!("id_{name}"), idx, idx, id_data);
        inner.identities.push(mid);
        idx
    }

    fn push_mor(inner: &mut ExtInner, name: String, dom: usize, cod: usize, data: ExtMor) -> usize {
        let key = (dom, cod, data.clone());
        if let Some(&m) = inner.index.get(&key) {
            return m;
        }
        let m = inner.mors.len();
        inner.mors.push(MorRec {
            name,
            dom,
            cod,
            data,
        });
        inner.index.insert(key, m);
        m
    }
}

impl FiniteCategory {
    /// Builds an extensional category over the given carriers. Identities
    /// are interned immediately; further morphisms via `intern_morphism`.
    pub fn ext(objects: Vec<(String, ExtObject)>) -> Self {
        FiniteCategory {
            backend: CatBackend::Ext(ExtCat::new(objects)),
        }
    }

    pub fn is_ext(&self) -> bool {
        matches!(self.backend, CatBackend::Ext(_))
    }

    pub fn object_count(&self) -> usize {
        match &self.backend {
            CatBackend::Table(t) => t.t.obj_names.len(),
            CatBackend::Ext(e) => e.inner.read().unwrap().objects.len(),
        }
    }

    pub fn objects(&self) -> Vec<ObjId> {
        (0..self.object_count()).map(ObjId).collect()
    }

    pub fn object_name(&self, o: ObjId) -> String {
        match &self.backend {
            CatBackend::Table(t) => t.t.obj_names[o.0].clone(),
            CatBackend::Ext(e) => e.inner.read().unwrap().objects[o.0].0.clone(),
        }
    }

    pub fn object_named(&self, name: &str) -> Option<ObjId> {
        self.objects().into_iter().find(|&o| self.object_name(o) == name)
    }

    /// Carrier of an extensional object.
    pub fn ext_object(&self, o: ObjId) -> Result<ExtObject> {
        match &self.backend {
            CatBackend::Ext(e) => Ok(e.inner.read().unwrap().objects[o.0].1.clone()),
            CatBackend::Table(_) => Err(SesqError::UnsupportedBackend(
                "table objects have no carrier".into(),
            )),
        }
    }

    /// Adds a carrier object to an extensional category.
    pub fn add_ext_object(&self, name: &str, obj: ExtObject) -> Result<ObjId> {
        match &self.backend {
            CatBackend::Ext(e) => {
                let mut inner = e.inner.write().unwrap();
                Ok(ObjId(ExtCat::push_object(&mut inner, name.to_string(), obj)))
            }
            CatBackend::Table(_) => Err(SesqError::UnsupportedBackend(
                "cannot add carrier objects to a table category".into(),
            )),
        }
    }

    /// Interns a structure-preserving map, validating it against its
    /// endpoints. Returns the existing id when the same map was interned
    /// before, so `MorId` equality is map equality.
    pub fn intern_morphism(
        &self,
        name: &str,
        dom: ObjId,
        cod: ObjId,
        data: ExtMor,
    ) -> Result<MorId> {
        match &self.backend {
            CatBackend::Ext(e) => {
                let (dobj, cobj) = {
                    let inner = e.inner.read().unwrap();
                    (
                        inner.objects[dom.0].1.clone(),
                        inner.objects[cod.0].1.clone(),
                    )
                };
                check_ext_data(&dobj, &cobj, &data)?;
                let mut inner = e.inner.write().unwrap();
                Ok(MorId(ExtCat::push_mor(
                    &mut inner,
                    name.to_string(),
                    dom.0,
                    cod.0,
                    data,
                )))
            }
            CatBackend::Table(_) => Err(SesqError::UnsupportedBackend(
                "table categories have no extensional morphisms".into(),
            )),
        }
    }

    /// Underlying data of an extensional morphism.
    pub fn ext_mor(&self, m: MorId) -> Result<ExtMor> {
        match &self.backend {
            CatBackend::Ext(e) => Ok(e.inner.read().unwrap().mors[m.0].data.clone()),
            CatBackend::Table(_) => Err(SesqError::UnsupportedBackend(
                "table morphisms carry no map data".into(),
            )),
        }
    }

    pub fn morphism_count(&self) -> usize {
        match &self.backend {
            CatBackend::Table(t) => t.t.mor_names.len(),
            CatBackend::Ext(e) => e.inner.read().unwrap().mors.len(),
        }
    }

    /// All morphisms of a table category. For an extensional category this
    /// is only the interned ones, which is not an enumeration; use `hom`.
    pub fn morphisms(&self) -> Vec<MorId> {
        (0..self.morphism_count()).map(MorId).collect()
    }

    pub fn morphism_name(&self, m: MorId) -> String {
        match &self.backend {
            CatBackend::Table(t) => t.t.mor_names[m.0].clone(),
            CatBackend::Ext(e) => e.inner.read().unwrap().mors[m.0].name.clone(),
        }
    }

    pub fn morphism_named(&self, name: &str) -> Option<MorId> {
        self.morphisms()
            .into_iter()
            .find(|&m| self.morphism_name(m) == name)
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        match &self.backend {
            CatBackend::Table(t) => ObjId(t.t.dom[m.0]),
            CatBackend::Ext(e) => ObjId(e.inner.read().unwrap().mors[m.0].dom),
        }
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        match &self.backend {
            CatBackend::Table(t) => ObjId(t.t.cod[m.0]),
            CatBackend::Ext(e) => ObjId(e.inner.read().unwrap().mors[m.0].cod),
        }
    }

    pub fn identity(&self, o: ObjId) -> Result<MorId> {
        match &self.backend {
            CatBackend::Table(t) => t.t.ids[o.0].map(MorId).ok_or_else(|| {
                SesqError::InvalidPresentation(format!(
                    "object {} has no identity",
                    t.t.obj_names[o.0]
                ))
            }),
            CatBackend::Ext(e) => Ok(MorId(e.inner.read().unwrap().identities[o.0])),
        }
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        match &self.backend {
            CatBackend::Table(t) => t.t.ids[t.t.dom[m.0]] == Some(m.0) && t.t.dom[m.0] == t.t.cod[m.0],
            CatBackend::Ext(e) => {
                let inner = e.inner.read().unwrap();
                let rec = &inner.mors[m.0];
                rec.dom == rec.cod && inner.identities[rec.dom] == m.0
            }
        }
    }

    /// `g` after `f`.
    pub fn compose(&self, g: MorId, f: MorId) -> Result<MorId> {
        if self.dom(g) != self.cod(f) {
            return Err(SesqError::NotComposable(format!(
                "{} . {}",
                self.morphism_name(g),
                self.morphism_name(f)
            )));
        }
        match &self.backend {
            CatBackend::Table(t) => t.t.comp.get(&(g.0, f.0)).copied().map(MorId).ok_or_else(|| {
                SesqError::InvalidPresentation(format!(
                    "missing composite {} . {}",
                    t.t.mor_names[g.0], t.t.mor_names[f.0]
                ))
            }),
            CatBackend::Ext(e) => {
                let (gdat, fdat, dom, cod, gname, fname) = {
                    let inner = e.inner.read().unwrap();
                    let gr = &inner.mors[g.0];
                    let fr = &inner.mors[f.0];
                    (
                        gr.data.clone(),
                        fr.data.clone(),
                        fr.dom,
                        gr.cod,
                        gr.name.clone(),
                        fr.name.clone(),
                    )
                };
                let data = ext_compose_data(&gdat, &fdat);
                let mut inner = e.inner.write().unwrap();
                Ok(MorId(ExtCat::push_mor(
                    &mut inner,
                    format!("({gname}.{fname})"),
                    dom,
                    cod,
                    data,
                )))
            }
        }
    }

    /// Composes a chain right to left: `chain([h, g, f])` is `h . g . f`.
    pub fn compose_chain(&self, chain: &[MorId]) -> Result<MorId> {
        let (&last, rest) = chain
            .split_last()
            .ok_or_else(|| SesqError::InvalidPresentation("empty composition chain".into()))?;
        let mut acc = last;
        for &m in rest.iter().rev() {
            acc = self.compose(m, acc)?;
        }
        Ok(acc)
    }

    /// All morphisms from `a` to `b`. Table: a filter. Ext: a full
    /// enumeration of the structure-preserving maps, interned.
    pub fn hom(&self, a: ObjId, b: ObjId) -> Result<Vec<MorId>> {
        match &self.backend {
            CatBackend::Table(t) => Ok((0..t.t.mor_names.len())
                .filter(|&m| t.t.dom[m] == a.0 && t.t.cod[m] == b.0)
                .map(MorId)
                .collect()),
            CatBackend::Ext(_) => {
                let da = self.ext_object(a)?;
                let db = self.ext_object(b)?;
                let maps = enumerate_ext_maps(&da, &db)?;
                let mut out = Vec::with_capacity(maps.len());
                for (i, data) in maps.into_iter().enumerate() {
                    out.push(self.intern_morphism(
                        &format!("h{}_{}_{}", a.0, b.0, i),
                        a,
                        b,
                        data,
                    )?);
                }
                Ok(out)
            }
        }
    }

    /// Ordered composable pairs `(g, f)` with `dom(g) = cod(f)`, table only.
    pub fn composable_pairs(&self) -> Vec<(MorId, MorId)> {
        let ms = self.morphisms();
        let mut out = Vec::new();
        for &g in &ms {
            for &f in &ms {
                if self.dom(g) == self.cod(f) {
                    out.push((g, f));
                }
            }
        }
        out
    }

    /// The chosen pullback of the cospan `(f, g)`. Extensional categories
    /// construct the pair carrier and memoize it; table categories search
    /// for a square with the universal property and cache the canonical
    /// (lexicographically least) choice.
    pub fn pullback(&self, f: MorId, g: MorId) -> Result<PullbackSquare> {
        if self.cod(f) != self.cod(g) {
            return Err(SesqError::TypeMismatch(format!(
                "{} and {} are not a cospan",
                self.morphism_name(f),
                self.morphism_name(g)
            )));
        }
        match &self.backend {
            CatBackend::Table(t) => self.table_pullback(t, f, g),
            CatBackend::Ext(e) => self.ext_pullback(e, f, g),
        }
    }

    fn table_pullback(&self, t: &TableCat, f: MorId, g: MorId) -> Result<PullbackSquare> {
        if let Some(cached) = t.pb_cache.read().unwrap().get(&(f.0, g.0)) {
            return cached.ok_or_else(|| SesqError::NoPullback(format!(
                "({}, {})",
                self.morphism_name(f),
                self.morphism_name(g)
            )));
        }
        let a = self.dom(f);
        let b = self.dom(g);
        let mut found: Option<PullbackSquare> = None;
        'apex: for p in self.objects() {
            for p1 in self.hom(p, a)? {
                for p2 in self.hom(p, b)? {
                    if self.compose(f, p1)? != self.compose(g, p2)? {
                        continue;
                    }
                    if self.square_is_universal(p, p1, p2, f, g)? {
                        found = Some(PullbackSquare {
                            apex: p,
                            p1,
                            p2,
                            f,
                            g,
                        });
                        break 'apex;
                    }
                }
            }
        }
        t.pb_cache.write().unwrap().insert((f.0, g.0), found);
        found.ok_or_else(|| SesqError::NoPullback(format!(
            "({}, {})",
            self.morphism_name(f),
            self.morphism_name(g)
        )))
    }

    fn square_is_universal(
        &self,
        p: ObjId,
        p1: MorId,
        p2: MorId,
        f: MorId,
        g: MorId,
    ) -> Result<bool> {
        let a = self.dom(f);
        let b = self.dom(g);
        for w in self.objects() {
            let into_p = self.hom(w, p)?;
            for x in self.hom(w, a)? {
                for y in self.hom(w, b)? {
                    if self.compose(f, x)? != self.compose(g, y)? {
                        continue;
                    }
                    let mediators = into_p
                        .iter()
                        .filter(|&&u| {
                            self.compose(p1, u).ok() == Some(x)
                                && self.compose(p2, u).ok() == Some(y)
                        })
                        .count();
                    if mediators != 1 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn ext_pullback(&self, e: &ExtCat, f: MorId, g: MorId) -> Result<PullbackSquare> {
        if let Some(&rec) = e.inner.read().unwrap().pullbacks.get(&(f.0, g.0)) {
            return Ok(e.inner.read().unwrap().pb_records[rec].square);
        }
        let a = self.dom(f);
        let b = self.dom(g);
        let (da, db) = (self.ext_object(a)?, self.ext_object(b)?);
        let (fd, gd) = (self.ext_mor(f)?, self.ext_mor(g)?);
        let pb_name = format!(
            "pb({},{})",
            self.morphism_name(f),
            self.morphism_name(g)
        );
        let (apex_obj, prov, p1_data, p2_data) = build_ext_pullback(&da, &db, &fd, &gd)?;
        let apex = self.add_ext_object(&pb_name, apex_obj)?;
        let p1 = self.intern_morphism(&format!("{pb_name}.p1"), apex, a, p1_data)?;
        let p2 = self.intern_morphism(&format!("{pb_name}.p2"), apex, b, p2_data)?;
        let square = PullbackSquare {
            apex,
            p1,
            p2,
            f,
            g,
        };
        let mut inner = e.inner.write().unwrap();
        let rec = inner.pb_records.len();
        inner.pb_records.push(PbRecord { square, prov });
        inner.pullbacks.insert((f.0, g.0), rec);
        Ok(square)
    }

    /// The mediator into a chosen pullback: the unique `u` with
    /// `p1 . u = x` and `p2 . u = y`, given `f . x = g . y`.
    pub fn pair_into(&self, sq: &PullbackSquare, x: MorId, y: MorId) -> Result<MorId> {
        if self.dom(x) != self.dom(y) {
            return Err(SesqError::TypeMismatch(
                "span legs have different sources".into(),
            ));
        }
        if self.compose(sq.f, x)? != self.compose(sq.g, y)? {
            return Err(SesqError::TypeMismatch(
                "span does not commute with the cospan".into(),
            ));
        }
        match &self.backend {
            CatBackend::Table(_) => {
                let w = self.dom(x);
                let mut mediator = None;
                for u in self.hom(w, sq.apex)? {
                    if self.compose(sq.p1, u)? == x && self.compose(sq.p2, u)? == y {
                        mediator = Some(u);
                        break;
                    }
                }
                mediator.ok_or_else(|| SesqError::NoPullback(format!(
                    "({}, {})",
                    self.morphism_name(sq.f),
                    self.morphism_name(sq.g)
                )))
            }
            CatBackend::Ext(e) => {
                let prov = {
                    let inner = e.inner.read().unwrap();
                    let rec = inner
                        .pullbacks
                        .get(&(sq.f.0, sq.g.0))
                        .copied()
                        .ok_or_else(|| SesqError::NoPullback(format!(
                            "({}, {})",
                            self.morphism_name(sq.f),
                            self.morphism_name(sq.g)
                        )))?;
                    inner.pb_records[rec].prov.clone()
                };
                let xd = self.ext_mor(x)?;
                let yd = self.ext_mor(y)?;
                let data = ext_mediator_data(&prov, &xd, &yd)?;
                self.intern_morphism(
                    &format!(
                        "<{},{}>",
                        self.morphism_name(x),
                        self.morphism_name(y)
                    ),
                    self.dom(x),
                    sq.apex,
                    data,
                )
            }
        }
    }

    /// Pair provenance of an extensional pullback apex: element `i` of the
    /// apex carrier is the pair `pairs[i]`. Flat objects only.
    pub fn pullback_pairs(&self, sq: &PullbackSquare) -> Result<Vec<(usize, usize)>> {
        match &self.backend {
            CatBackend::Ext(e) => {
                let inner = e.inner.read().unwrap();
                let rec = inner
                    .pullbacks
                    .get(&(sq.f.0, sq.g.0))
                    .copied()
                    .ok_or_else(|| SesqError::NoPullback(format!(
                        "({}, {})",
                        self.morphism_name(sq.f),
                        self.morphism_name(sq.g)
                    )))?;
                match &inner.pb_records[rec].prov {
                    PbProv::Flat(p) => Ok(p.clone()),
                    PbProv::Levels(_) => Err(SesqError::UnsupportedBackend(
                        "levelwise pullback has no flat pair list".into(),
                    )),
                }
            }
            CatBackend::Table(_) => Err(SesqError::UnsupportedBackend(
                "table pullbacks carry no pair provenance".into(),
            )),
        }
    }

    /// Level-indexed pair provenance of an extensional pullback of chain
    /// maps.
    pub fn pullback_level_pairs(&self, sq: &PullbackSquare) -> Result<[Vec<(usize, usize)>; 3]> {
        match &self.backend {
            CatBackend::Ext(e) => {
                let inner = e.inner.read().unwrap();
                let rec = inner
                    .pullbacks
                    .get(&(sq.f.0, sq.g.0))
                    .copied()
                    .ok_or_else(|| SesqError::NoPullback(format!(
                        "({}, {})",
                        self.morphism_name(sq.f),
                        self.morphism_name(sq.g)
                    )))?;
                match &inner.pb_records[rec].prov {
                    PbProv::Levels(l) => Ok(l.clone()),
                    PbProv::Flat(_) => Err(SesqError::UnsupportedBackend(
                        "flat pullback has no level-indexed pair lists".into(),
                    )),
                }
            }
            CatBackend::Table(_) => Err(SesqError::UnsupportedBackend(
                "table pullbacks carry no pair provenance".into(),
            )),
        }
    }

    /// Copy of a table category with one composition entry replaced, for
    /// mutation testing. The new category shares nothing with the old one.
    pub fn mutated_composite(&self, g: MorId, f: MorId, h: MorId) -> Result<FiniteCategory> {
        match &self.backend {
            CatBackend::Table(t) => {
                let mut inner = t.t.clone();
                inner.comp.insert((g.0, f.0), h.0);
                Ok(FiniteCategory {
                    backend: CatBackend::Table(TableCat {
                        t: inner,
                        pb_cache: RwLock::new(HashMap::new()),
                    }),
                })
            }
            CatBackend::Ext(_) => Err(SesqError::UnsupportedBackend(
                "extensional composition cannot be mutated".into(),
            )),
        }
    }

    /// Declared composition entries of a table category, as (g, f, h)
    /// triples with h = g . f.
    pub fn composition_entries(&self) -> Result<Vec<(MorId, MorId, MorId)>> {
        match &self.backend {
            CatBackend::Table(t) => Ok(t
                .t
                .comp
                .iter()
                .map(|(&(g, f), &h)| (MorId(g), MorId(f), MorId(h)))
                .collect()),
            CatBackend::Ext(_) => Err(SesqError::UnsupportedBackend(
                "extensional categories have no composition table".into(),
            )),
        }
    }

    /// A terminal object of a table category, if one exists.
    pub fn find_terminal(&self) -> Option<ObjId> {
        self.objects()
            .into_iter()
            .find(|&t| {
                self.objects()
                    .iter()
                    .all(|&w| self.hom(w, t).map(|h| h.len() == 1).unwrap_or(false))
            })
    }
}

fn pair_lookup(pairs: &[(usize, usize)], a: usize, b: usize) -> Result<usize> {
    pairs
        .iter()
        .position(|&(x, y)| x == a && y == b)
        .ok_or_else(|| SesqError::TypeMismatch("value pair escapes the pullback carrier".into()))
}

fn ext_mediator_data(prov: &PbProv, x: &ExtMor, y: &ExtMor) -> Result<ExtMor> {
    match (prov, x, y) {
        (PbProv::Flat(pairs), ExtMor::Fn(xv), ExtMor::Fn(yv)) => {
            let mut out = Vec::with_capacity(xv.len());
            for i in 0..xv.len() {
                out.push(pair_lookup(pairs, xv[i], yv[i])?);
            }
            Ok(ExtMor::Fn(out))
        }
        (PbProv::Levels(levels), ExtMor::Chain(xv), ExtMor::Chain(yv)) => {
            let mut out: [Vec<usize>; 3] = Default::default();
            for l in 0..3 {
                for i in 0..xv[l].len() {
                    out[l].push(pair_lookup(&levels[l], xv[l][i], yv[l][i])?);
                }
            }
            Ok(ExtMor::Chain(out))
        }
        _ => Err(SesqError::TypeMismatch(
            "mediator legs do not match the pullback sort".into(),
        )),
    }
}

fn build_ext_pullback(
    da: &ExtObject,
    db: &ExtObject,
    fd: &ExtMor,
    gd: &ExtMor,
) -> Result<(ExtObject, PbProv, ExtMor, ExtMor)> {
    match (da, db, fd, gd) {
        (ExtObject::Set(na), ExtObject::Set(nb), ExtMor::Fn(fv), ExtMor::Fn(gv)) => {
            let mut pairs = Vec::new();
            for a in 0..*na {
                for b in 0..*nb {
                    if fv[a] == gv[b] {
                        pairs.push((a, b));
                    }
                }
            }
            let p1 = ExtMor::Fn(pairs.iter().map(|&(a, _)| a).collect());
            let p2 = ExtMor::Fn(pairs.iter().map(|&(_, b)| b).collect());
            Ok((
                ExtObject::Set(pairs.len()),
                PbProv::Flat(pairs),
                p1,
                p2,
            ))
        }
        (ExtObject::Group(ga), ExtObject::Group(gb), ExtMor::Fn(fv), ExtMor::Fn(gv)) => {
            let mut pairs = Vec::new();
            for a in 0..ga.n {
                for b in 0..gb.n {
                    if fv[a] == gv[b] {
                        pairs.push((a, b));
                    }
                }
            }
            let group = pair_subgroup(ga, gb, &pairs)?;
            let p1 = ExtMor::Fn(pairs.iter().map(|&(a, _)| a).collect());
            let p2 = ExtMor::Fn(pairs.iter().map(|&(_, b)| b).collect());
            Ok((ExtObject::Group(group), PbProv::Flat(pairs), p1, p2))
        }
        (
            ExtObject::Complex(ca),
            ExtObject::Complex(cb),
            ExtMor::Chain(fv),
            ExtMor::Chain(gv),
        ) => {
            let mut levels: [Vec<(usize, usize)>; 3] = Default::default();
            for l in 0..3 {
                for a in 0..ca.level[l].n {
                    for b in 0..cb.level[l].n {
                        if fv[l][a] == gv[l][b] {
                            levels[l].push((a, b));
                        }
                    }
                }
            }
            let lv = |l: usize| -> Result<GroupTable> {
                pair_subgroup(&ca.level[l], &cb.level[l], &levels[l])
            };
            let glv = [lv(0)?, lv(1)?, lv(2)?];
            let restrict = |from: usize, to: usize| -> Result<Vec<usize>> {
                let mut out = Vec::with_capacity(levels[from].len());
                for &(a, b) in &levels[from] {
                    let img = (ca.diff(from)[a], cb.diff(from)[b]);
                    out.push(pair_lookup(&levels[to], img.0, img.1)?);
                }
                Ok(out)
            };
            let d2 = restrict(2, 1)?;
            let d1 = restrict(1, 0)?;
            let apex = ComplexCarrier::new(glv, d2, d1)
                .map_err(|e| SesqError::TypeMismatch(format!("pullback complex invalid: {e}")))?;
            let p1 = ExtMor::Chain([
                levels[0].iter().map(|&(a, _)| a).collect(),
                levels[1].iter().map(|&(a, _)| a).collect(),
                levels[2].iter().map(|&(a, _)| a).collect(),
            ]);
            let p2 = ExtMor::Chain([
                levels[0].iter().map(|&(_, b)| b).collect(),
                levels[1].iter().map(|&(_, b)| b).collect(),
                levels[2].iter().map(|&(_, b)| b).collect(),
            ]);
            Ok((ExtObject::Complex(apex), PbProv::Levels(levels), p1, p2))
        }
        _ => Err(SesqError::UnsupportedBackend(format!(
            "no pullback construction for {} carriers",
            da.kind()
        ))),
    }
}

fn pair_subgroup(
    ga: &GroupTable,
    gb: &GroupTable,
    pairs: &[(usize, usize)],
) -> Result<GroupTable> {
    let n = pairs.len();
    let mut mul = vec![vec![0; n]; n];
    for (i, &(a1, b1)) in pairs.iter().enumerate() {
        for (j, &(a2, b2)) in pairs.iter().enumerate() {
            mul[i][j] = pair_lookup(pairs, ga.mul(a1, a2), gb.mul(b1, b2))?;
        }
    }
    let names = pairs
        .iter()
        .map(|&(a, b)| format!("({},{})", ga.names[a], gb.names[b]))
        .collect();
    GroupTable::new(mul, names)
        .map_err(|e| SesqError::TypeMismatch(format!("pullback carrier is not a group: {e}")))
}

fn enumerate_ext_maps(da: &ExtObject, db: &ExtObject) -> Result<Vec<ExtMor>> {
    match (da, db) {
        (ExtObject::Set(n), ExtObject::Set(m)) => {
            let total = (*m as u64).checked_pow(*n as u32).unwrap_or(u64::MAX);
            if total > ENUM_CAP {
                return Err(SesqError::TooLarge(format!(
                    "{m}^{n} functions exceed the enumeration cap"
                )));
            }
            Ok(all_functions(*n, *m).into_iter().map(ExtMor::Fn).collect())
        }
        (ExtObject::Group(a), ExtObject::Group(b)) => Ok(
            crate::algebra::enumerate_group_homs(a, b)
                .into_iter()
                .map(ExtMor::Fn)
                .collect(),
        ),
        (ExtObject::Complex(a), ExtObject::Complex(b)) => {
            let per_level: Vec<Vec<Vec<usize>>> = (0..3)
                .map(|l| crate::algebra::enumerate_group_homs(&a.level[l], &b.level[l]))
                .collect();
            let mut out = Vec::new();
            for f0 in &per_level[0] {
                for f1 in &per_level[1] {
                    for f2 in &per_level[2] {
                        let f = [f0.clone(), f1.clone(), f2.clone()];
                        if a.is_chain_map_into(b, &f) {
                            out.push(ExtMor::Chain(f));
                        }
                    }
                }
            }
            Ok(out)
        }
        (ExtObject::IntCat(a), ExtObject::IntCat(b)) => {
            let total = (b.c0 as u64)
                .checked_pow(a.c0 as u32)
                .and_then(|x| x.checked_mul((b.c1 as u64).checked_pow(a.c1 as u32)?))
                .unwrap_or(u64::MAX);
            if total > ENUM_CAP {
                return Err(SesqError::TooLarge(
                    "too many candidate functors to enumerate".into(),
                ));
            }
            let obj_maps = all_functions(a.c0, b.c0);
            let arr_maps = all_functions(a.c1, b.c1);
            let mut out = Vec::new();
            for f0 in &obj_maps {
                for f1 in &arr_maps {
                    if a.is_functor_into(b, f1, f0) {
                        out.push(ExtMor::Functor {
                            f1: f1.clone(),
                            f0: f0.clone(),
                        });
                    }
                }
            }
            Ok(out)
        }
        _ => Err(SesqError::TypeMismatch(
            "cannot enumerate maps between different carrier kinds".into(),
        )),
    }
}

fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        while i < n {
            cur[i] += 1;
            if cur[i] < m {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out
}

/// Checks the category axioms of a table category: identities exist and
/// are neutral, composites exist exactly for composable pairs and are
/// typed correctly, and composition is associative.
pub fn validate_category(cat: &FiniteCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    let t = match &cat.backend {
        CatBackend::Table(t) => t,
        CatBackend::Ext(_) => return report,
    };
    let nm = |m: usize| t.t.mor_names[m].clone();
    for (o, name) in t.t.obj_names.iter().enumerate() {
        match t.t.ids[o] {
            None => report.push(
                "identity-exists",
                vec![name.clone()],
                format!("object {name} has no identity morphism"),
            ),
            Some(i) => {
                if t.t.dom[i] != o || t.t.cod[i] != o {
                    report.push(
                        "identity-endpoints",
                        vec![name.clone(), nm(i)],
                        format!("identity of {name} is not an endomorphism of {name}"),
                    );
                }
            }
        }
    }
    let n = t.t.mor_names.len();
    for g in 0..n {
        for f in 0..n {
            let composable = t.t.dom[g] == t.t.cod[f];
            match t.t.comp.get(&(g, f)) {
                None if composable => report.push(
                    "composition-total",
                    vec![nm(g), nm(f)],
                    format!("no composite declared for {} . {}", nm(g), nm(f)),
                ),
                Some(&h) if !composable => report.push(
                    "composition-typed",
                    vec![nm(g), nm(f), nm(h)],
                    format!("composite declared for non-composable pair {} . {}", nm(g), nm(f)),
                ),
                Some(&h) => {
                    if t.t.dom[h] != t.t.dom[f] || t.t.cod[h] != t.t.cod[g] {
                        report.push(
                            "composition-typed",
                            vec![nm(g), nm(f), nm(h)],
                            format!("composite {} of {} . {} has wrong endpoints", nm(h), nm(g), nm(f)),
                        );
                    }
                }
                None => {}
            }
        }
    }
    // Unit and associativity laws only make sense where composites exist.
    let comp = |g: usize, f: usize| t.t.comp.get(&(g, f)).copied();
    for m in 0..n {
        if let Some(i) = t.t.ids[t.t.cod[m]] {
            if let Some(h) = comp(i, m) {
                if h != m {
                    report.push(
                        "unit-law",
                        vec![nm(m)],
                        format!("id . {} is {} instead of {}", nm(m), nm(h), nm(m)),
                    );
                }
            }
        }
        if let Some(i) = t.t.ids[t.t.dom[m]] {
            if let Some(h) = comp(m, i) {
                if h != m {
                    report.push(
                        "unit-law",
                        vec![nm(m)],
                        format!("{} . id is {} instead of {}", nm(m), nm(h), nm(m)),
                    );
                }
            }
        }
    }
    for h in 0..n {
        for g in 0..n {
            if t.t.dom[h] != t.t.cod[g] {
                continue;
            }
            for f in 0..n {
                if t.t.dom[g] != t.t.cod[f] {
                    continue;
                }
                let left = comp(h, g).and_then(|hg| comp(hg, f));
                let right = comp(g, f).and_then(|gf| comp(h, gf));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        report.push(
                            "associativity",
                            vec![nm(h), nm(g), nm(f)],
                            format!(
                                "({} . {}) . {} = {} but {} . ({} . {}) = {}",
                                nm(h), nm(g), nm(f), nm(l), nm(h), nm(g), nm(f), nm(r)
                            ),
                        );
                    }
                }
            }
        }
    }
    report
}

/// A functor between table categories, as object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableFunctor {
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

/// Enumerates all functors between two table categories by backtracking
/// over morphism images.
pub fn enumerate_functors(src: &FiniteCategory, dst: &FiniteCategory) -> Result<Vec<TableFunctor>> {
    let (s, d) = match (&src.backend, &dst.backend) {
        (CatBackend::Table(s), CatBackend::Table(d)) => (s, d),
        _ => {
            return Err(SesqError::UnsupportedBackend(
                "functor enumeration needs table categories".into(),
            ))
        }
    };
    let total = (d.t.mor_names.len() as u64)
        .checked_pow(s.t.mor_names.len() as u32)
        .unwrap_or(u64::MAX);
    if total > ENUM_CAP {
        return Err(SesqError::TooLarge(
            "too many candidate functors to enumerate".into(),
        ));
    }
    let n_obj = s.t.obj_names.len();
    let n_mor = s.t.mor_names.len();
    let mut out = Vec::new();
    let mut obj_map = vec![usize::MAX; n_obj];
    let mut mor_map = vec![usize::MAX; n_mor];

    fn assign_obj(obj_map: &mut [usize], o: usize, v: usize) -> std::result::Result<bool, ()> {
        // Ok(true) when newly assigned, Ok(false) when already equal.
        if obj_map[o] == usize::MAX {
            obj_map[o] = v;
            Ok(true)
        } else if obj_map[o] == v {
            Ok(false)
        } else {
            Err(())
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        s: &TableInner,
        d: &TableInner,
        m: usize,
        obj_map: &mut Vec<usize>,
        mor_map: &mut Vec<usize>,
        out: &mut Vec<TableFunctor>,
    ) {
        let n_mor = s.mor_names.len();
        if m == n_mor {
            // Endpoint maps are forced by morphism images; objects with no
            // morphisms at all (impossible once identities exist) get 0.
            if obj_map.iter().any(|&v| v == usize::MAX) {
                return;
            }
            // Identities and composites must be preserved.
            for (o, &io) in s.ids.iter().enumerate() {
                let i = match io {
                    Some(i) => i,
                    None => return,
                };
                if d.ids[obj_map[o]] != Some(mor_map[i]) {
                    return;
                }
            }
            for (&(g, f), &h) in &s.comp {
                match d.comp.get(&(mor_map[g], mor_map[f])) {
                    Some(&dh) if dh == mor_map[h] => {}
                    _ => return,
                }
            }
            out.push(TableFunctor {
                obj_map: obj_map.clone(),
                mor_map: mor_map.clone(),
            });
            return;
        }
        for img in 0..d.mor_names.len() {
            let mut undo = Vec::new();
            let ok = (|| {
                match assign_obj(obj_map, s.dom[m], d.dom[img]) {
                    Ok(true) => undo.push(s.dom[m]),
                    Ok(false) => {}
                    Err(()) => return false,
                }
                match assign_obj(obj_map, s.cod[m], d.cod[img]) {
                    Ok(true) => undo.push(s.cod[m]),
                    Ok(false) => {}
                    Err(()) => return false,
                }
                true
            })();
            if ok {
                mor_map[m] = img;
                rec(s, d, m + 1, obj_map, mor_map, out);
                mor_map[m] = usize::MAX;
            }
            for o in undo {
                obj_map[o] = usize::MAX;
            }
        }
    }
    rec(&s.t, &d.t, 0, &mut obj_map, &mut mor_map, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets;

    fn two_arrows() -> FiniteCategory {
        // A -f-> B -g-> C plus the composite and identities.
        let mut b = TableCatBuilder::new();
        let a = b.object("A");
        let bb = b.object("B");
        let c = b.object("C");
        b.identity(a);
        b.identity(bb);
        b.identity(c);
        let f = b.morphism("f", a, bb);
        let g = b.morphism("g", bb, c);
        let gf = b.morphism("gf", a, c);
        b.compose_rule(g, f, gf);
        b.build()
    }

    #[test]
    fn table_category_validates_and_composes() {
        let cat = two_arrows();
        assert!(validate_category(&cat).findings.is_empty());
        let f = MorId(3);
        let g = MorId(4);
        assert_eq!(cat.morphism_name(f), "f");
        let gf = cat.compose(g, f).unwrap();
        assert_eq!(cat.morphism_name(gf), "gf");
        assert!(cat.compose(f, g).is_err());
    }

    #[test]
    fn validator_flags_missing_composite() {
        let mut b = TableCatBuilder::new();
        let a = b.object("A");
        b.identity(a);
        let f = b.morphism("f", a, a);
        let _ = f;
        // f . f never declared.
        let cat = b.build();
        let report = validate_category(&cat);
        assert!(report
            .findings
            .iter()
            .any(|x| x.axiom == "composition-total"));
    }

    #[test]
    fn validator_flags_broken_associativity() {
        // One object, morphisms id, f, g with f.f = g, f.g = g.f = f, g.g = g.
        // (f.f).f = g.f = f, f.(f.f) = f.g = f: fine. Break it directly.
        let mut b = TableCatBuilder::new();
        let a = b.object("A");
        let i = b.identity(a);
        let f = b.morphism("f", a, a);
        let g = b.morphism("g", a, a);
        b.compose_rule(f, f, g);
        b.compose_rule(f, g, f);
        b.compose_rule(g, f, i); // breaks associativity
        b.compose_rule(g, g, g);
        let cat = b.build();
        let report = validate_category(&cat);
        assert!(report.findings.iter().any(|x| x.axiom == "associativity"));
    }

    #[test]
    fn ext_set_pullback_pairs() {
        let cat = FiniteCategory::ext(vec![
            ("A".into(), ExtObject::Set(2)),
            ("B".into(), ExtObject::Set(3)),
            ("C".into(), ExtObject::Set(2)),
        ]);
        let f = cat
            .intern_morphism("f", ObjId(0), ObjId(2), ExtMor::Fn(vec![0, 1]))
            .unwrap();
        let g = cat
            .intern_morphism("g", ObjId(1), ObjId(2), ExtMor::Fn(vec![0, 0, 1]))
            .unwrap();
        let sq = cat.pullback(f, g).unwrap();
        let pairs = cat.pullback_pairs(&sq).unwrap();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 2)]);
        // Mediator for the span picking (1,2) constantly from a 1-point set.
        let w = cat.add_ext_object("W", ExtObject::Set(1)).unwrap();
        let x = cat
            .intern_morphism("x", w, ObjId(0), ExtMor::Fn(vec![1]))
            .unwrap();
        let y = cat
            .intern_morphism("y", w, ObjId(1), ExtMor::Fn(vec![2]))
            .unwrap();
        let u = cat.pair_into(&sq, x, y).unwrap();
        assert_eq!(cat.ext_mor(u).unwrap(), ExtMor::Fn(vec![2]));
    }

    #[test]
    fn ext_group_pullback_is_a_group() {
        let z4 = presets::cyclic(4);
        let z2 = presets::cyclic(2);
        let cat = FiniteCategory::ext(vec![
            ("Z4".into(), ExtObject::Group(z4)),
            ("Z2".into(), ExtObject::Group(z2)),
        ]);
        // mod-2 reduction and the identity, over Z2.
        let r = cat
            .intern_morphism("r", ObjId(0), ObjId(1), ExtMor::Fn(vec![0, 1, 0, 1]))
            .unwrap();
        let id = cat.identity(ObjId(1)).unwrap();
        let sq = cat.pullback(r, id).unwrap();
        match cat.ext_object(sq.apex).unwrap() {
            ExtObject::Group(g) => assert_eq!(g.n, 4),
            other => panic!("expected a group, got {}", other.kind()),
        }
    }

    #[test]
    fn ext_interning_is_canonical() {
        let cat = FiniteCategory::ext(vec![("A".into(), ExtObject::Set(2))]);
        let f1 = cat
            .intern_morphism("swap", ObjId(0), ObjId(0), ExtMor::Fn(vec![1, 0]))
            .unwrap();
        let f2 = cat
            .intern_morphism("other-name", ObjId(0), ObjId(0), ExtMor::Fn(vec![1, 0]))
            .unwrap();
        assert_eq!(f1, f2);
        let id = cat.identity(ObjId(0)).unwrap();
        let ff = cat.compose(f1, f1).unwrap();
        assert_eq!(ff, id);
    }

    #[test]
    fn table_pullback_in_a_poset() {
        // Diamond: bot <= l, r <= top.
        let mut b = TableCatBuilder::new();
        let bot = b.object("bot");
        let l = b.object("l");
        let r = b.object("r");
        let top = b.object("top");
        for o in [bot, l, r, top] {
            b.identity(o);
        }
        let bl = b.morphism("bl", bot, l);
        let br = b.morphism("br", bot, r);
        let lt = b.morphism("lt", l, top);
        let rt = b.morphism("rt", r, top);
        let bt = b.morphism("bt", bot, top);
        b.compose_rule(lt, bl, bt);
        b.compose_rule(rt, br, bt);
        let cat = b.build();
        assert!(validate_category(&cat).findings.is_empty());
        let sq = cat.pullback(lt, rt).unwrap();
        assert_eq!(sq.apex, bot);
        assert_eq!(cat.find_terminal(), Some(top));
    }

    #[test]
    fn functor_enumeration_counts_monoid_maps() {
        // One-object category on Z2 mapped to itself: functors = monoid
        // endomorphisms = 2.
        let z2 = presets::cyclic(2);
        let mut b = TableCatBuilder::new();
        let a = b.object("*");
        let e = b.identity(a);
        let t = b.morphism("t", a, a);
        b.compose_rule(t, t, e);
        b.compose_rule(t, e, t);
        b.compose_rule(e, t, t);
        let cat = b.build();
        assert!(validate_category(&cat).findings.is_empty());
        let fs = enumerate_functors(&cat, &cat).unwrap();
        assert_eq!(fs.len(), z2.n);
    }

    #[test]
    fn ext_hom_enumeration() {
        let cat = FiniteCategory::ext(vec![
            ("A".into(), ExtObject::Set(2)),
            ("B".into(), ExtObject::Set(3)),
        ]);
        assert_eq!(cat.hom(ObjId(0), ObjId(1)).unwrap().len(), 9);
        let z2loop = presets::intcat_z2_loop();
        let cat2 = FiniteCategory::ext(vec![(
            "G".into(),
            ExtObject::IntCat(z2loop),
        )]);
        // Internal endofunctors of the one-object Z2 groupoid: the two
        // group endomorphisms.
        assert_eq!(cat2.hom(ObjId(0), ObjId(0)).unwrap().len(), 2);
    }
}
