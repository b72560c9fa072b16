//! Canonical 2-cell structures: discrete and codiscrete cells, monoid
//! actions, conjugation cells on group homomorphisms, derivation cells on
//! crossed module morphisms, chain homotopies, and transformations between
//! internal functors.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::fincat::{FiniteCategory, MorId, ObjId, TableCatBuilder};
use crate::report::SesqError;

mod action;
mod conjugation;
mod derivations;
mod homotopies;
mod internal;
mod simple;

pub use action::{from_action, one_object, ActionSpec};
pub use conjugation::{conjugation_over, grp_conjugation};
pub use derivations::xmod_derivations;
pub use homotopies::{chain_homotopies, homotopies_over, homotopy_commutator_closed_form};
pub use internal::{
    all_internal_cells, arrow_cell, internal_transformations, is_internal_natural,
};
pub use simple::{codiscrete, codiscrete_lazy, discrete, discrete_lazy};

/// A table category whose morphisms are an enumerated family of payloads
/// (function graphs, pairs of graphs, ...), with composition computed on
/// payloads and looked up by value.
pub(crate) struct EnumeratedCat<P> {
    pub cat: Arc<FiniteCategory>,
    /// Per morphism id: (dom object, cod object, payload).
    pub data: Vec<(usize, usize, P)>,
    pub index: HashMap<(usize, usize, P), MorId>,
}

impl<P: Clone + Eq + Hash> EnumeratedCat<P> {
    pub fn lookup(&self, a: usize, b: usize, p: &P) -> Option<MorId> {
        self.index.get(&(a, b, p.clone())).copied()
    }
}

/// Builds a table category from one payload list per ordered object pair.
/// The identity payload must appear in `hom(a, a)` and composition must be
/// closed over the enumeration; both are rechecked here.
pub(crate) fn enumerated_category<P>(
    obj_names: &[String],
    hom: impl Fn(usize, usize) -> Vec<P>,
    compose: impl Fn(&P, &P) -> P,
    identity: impl Fn(usize) -> P,
    prefix: &str,
) -> Result<EnumeratedCat<P>, SesqError>
where
    P: Clone + Eq + Hash,
{
    let n = obj_names.len();
    let mut b = TableCatBuilder::new();
    for name in obj_names {
        b.object(name);
    }
    let mut data: Vec<(usize, usize, P)> = Vec::new();
    let mut index: HashMap<(usize, usize, P), MorId> = HashMap::new();
    for a in 0..n {
        for c in 0..n {
            for (k, p) in hom(a, c).into_iter().enumerate() {
                if index.contains_key(&(a, c, p.clone())) {
                    continue;
                }
                let m = b.morphism(&format!("{prefix}{a}to{c}n{k}"), ObjId(a), ObjId(c));
                index.insert((a, c, p.clone()), m);
                data.push((a, c, p));
            }
        }
    }
    for a in 0..n {
        let idp = identity(a);
        let m = index.get(&(a, a, idp)).copied().ok_or_else(|| {
            SesqError::BuildRejected(format!("identity map on object {a} missing from hom enumeration"))
        })?;
        b.mark_identity(ObjId(a), m);
    }
    let total = data.len();
    for g in 0..total {
        for f in 0..total {
            let (fa, fb, ref fp) = data[f];
            let (ga, gb, ref gp) = data[g];
            if fb != ga {
                continue;
            }
            let comp = compose(gp, fp);
            let target = index.get(&(fa, gb, comp)).copied().ok_or_else(|| {
                SesqError::BuildRejected(format!(
                    "composite of morphisms {g} and {f} falls outside the enumeration"
                ))
            })?;
            b.compose_rule(MorId(g), MorId(f), target);
        }
    }
    let cat = Arc::new(b.build());
    Ok(EnumeratedCat { cat, data, index })
}

/// Shared fixtures used across tests and the command-line examples.
pub mod fixtures {
    use std::sync::Arc;

    use crate::algebra::{presets, GroupTable, MonoidTable};
    use crate::cellstruct::TwoCellStructure;
    use crate::fincat::{FiniteCategory, TableCatBuilder};

    /// One object, identity only, cells the two-element group.
    pub fn f1() -> TwoCellStructure {
        one_object_group(&presets::cyclic(2))
    }

    /// One object, identity only, cells the symmetric group on three letters.
    pub fn f2() -> TwoCellStructure {
        one_object_group(&presets::s3())
    }

    /// One object, identity only, cells `g` with trivial whiskering.
    pub fn one_object_group(g: &GroupTable) -> TwoCellStructure {
        let m = MonoidTable::trivial();
        let d: Vec<Vec<usize>> = (0..g.n).map(|_| vec![0]).collect();
        super::one_object(&m, &g.as_monoid(), &d).expect("trivial action is valid")
    }

    /// Chain homotopy cells over the single complex with invertible top
    /// differential and zero bottom differential.
    pub fn f3() -> (Arc<FiniteCategory>, TwoCellStructure) {
        super::chain_homotopies(&[presets::complex_z2_id_zero()]).expect("valid complex")
    }

    /// The poset bot < l, r < top viewed as a category; `l` and `r` are
    /// incomparable, so (bot; l, r, top) is its one interesting pullback.
    pub fn diamond_poset() -> FiniteCategory {
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
        b.close_identities();
        b.build()
    }

    /// Discrete cells on the diamond poset.
    pub fn diamond_discrete() -> TwoCellStructure {
        super::discrete(Arc::new(diamond_poset())).expect("table category")
    }
}
