//! Isomorphism search between finite categories, and skeletons.
//!
//! The search first compares cheap invariants (object and morphism counts,
//! per-object hom-size profiles), then backtracks over object bijections in
//! input order, and finally over morphism bijections hom-set by hom-set.
//! Equivalence of categories is tested by skeletonizing both sides first.

use std::sync::Arc;

use crate::category::{find_iso, FinCat, Mor, Obj};
use crate::error::{Error, Result};
use crate::functor::{validate_functor, FunctorData};

/// Default node budget of the isomorphism search.
pub const DEFAULT_ISO_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Isomorphic {
        forward: FunctorData,
        backward: FunctorData,
    },
    NotIsomorphic,
    /// The node budget ran out before the search space was exhausted.
    Inconclusive { explored: u64 },
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic { .. })
    }

    pub fn witness(&self) -> Option<(&FunctorData, &FunctorData)> {
        match self {
            IsoOutcome::Isomorphic { forward, backward } => Some((forward, backward)),
            _ => None,
        }
    }
}

/// Looks for an isomorphism of categories `c → d` within `budget` search nodes.
pub fn categories_isomorphic(c: &Arc<FinCat>, d: &Arc<FinCat>, budget: u64) -> Result<IsoOutcome> {
    isomorphism_search(c, d, None, budget)
}

/// Like [`categories_isomorphic`], but the isomorphism must also preserve a
/// label attached to every morphism (e.g. model-class membership bits).
pub fn labeled_isomorphism(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    c_labels: &[u32],
    d_labels: &[u32],
    budget: u64,
) -> Result<IsoOutcome> {
    if c_labels.len() != c.morphism_count() || d_labels.len() != d.morphism_count() {
        return Err(Error::Structural("label vector length mismatch".into()));
    }
    isomorphism_search(c, d, Some((c_labels, d_labels)), budget)
}

fn isomorphism_search(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    labels: Option<(&[u32], &[u32])>,
    budget: u64,
) -> Result<IsoOutcome> {
    if budget == 0 {
        return Err(Error::Rejected("isomorphism budget must be positive".into()));
    }
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let c_sig: Vec<Signature> = c.objects().map(|x| signature(c, x, labels.map(|l| l.0))).collect();
    let d_sig: Vec<Signature> = d.objects().map(|x| signature(d, x, labels.map(|l| l.1))).collect();
    let mut sorted_c = c_sig.clone();
    let mut sorted_d = d_sig.clone();
    sorted_c.sort();
    sorted_d.sort();
    if sorted_c != sorted_d {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    if let Some((lc, ld)) = labels {
        let mut a = lc.to_vec();
        let mut b = ld.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(IsoOutcome::NotIsomorphic);
        }
    }

    let mut search = Search {
        c,
        d,
        labels,
        c_sig,
        d_sig,
        budget,
        explored: 0,
        obj_map: vec![None; c.object_count()],
        obj_used: vec![false; d.object_count()],
        mor_map: vec![None; c.morphism_count()],
        mor_used: vec![false; d.morphism_count()],
        order: Vec::new(),
    };
    match search.objects(0) {
        Ok(true) => {
            let object_map: Vec<Obj> = search.obj_map.iter().map(|o| o.unwrap()).collect();
            let morphism_map: Vec<Mor> = search.mor_map.iter().map(|m| m.unwrap()).collect();
            let mut inv_obj = vec![Obj(0); d.object_count()];
            for (i, y) in object_map.iter().enumerate() {
                inv_obj[y.index()] = Obj(i as u32);
            }
            let mut inv_mor = vec![Mor(0); d.morphism_count()];
            for (i, g) in morphism_map.iter().enumerate() {
                inv_mor[g.index()] = Mor(i as u32);
            }
            let forward = FunctorData::new(c.clone(), d.clone(), object_map, morphism_map)?;
            let backward = FunctorData::new(d.clone(), c.clone(), inv_obj, inv_mor)?;
            debug_assert!(validate_functor(&backward)?.is_empty());
            Ok(IsoOutcome::Isomorphic { forward, backward })
        }
        Ok(false) => Ok(IsoOutcome::NotIsomorphic),
        Err(BudgetExhausted) => Ok(IsoOutcome::Inconclusive {
            explored: search.explored,
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    endo: usize,
    endo_labels: Vec<u32>,
    out_sizes: Vec<usize>,
    in_sizes: Vec<usize>,
}

fn signature(c: &FinCat, x: Obj, labels: Option<&[u32]>) -> Signature {
    let mut out_sizes: Vec<usize> = c.objects().map(|y| c.hom(x, y).len()).collect();
    let mut in_sizes: Vec<usize> = c.objects().map(|y| c.hom(y, x).len()).collect();
    out_sizes.sort_unstable();
    in_sizes.sort_unstable();
    let mut endo_labels: Vec<u32> = match labels {
        Some(l) => c.hom(x, x).iter().map(|m| l[m.index()]).collect(),
        None => Vec::new(),
    };
    endo_labels.sort_unstable();
    Signature {
        endo: c.hom(x, x).len(),
        endo_labels,
        out_sizes,
        in_sizes,
    }
}

struct BudgetExhausted;

struct Search<'a> {
    c: &'a FinCat,
    d: &'a FinCat,
    labels: Option<(&'a [u32], &'a [u32])>,
    c_sig: Vec<Signature>,
    d_sig: Vec<Signature>,
    budget: u64,
    explored: u64,
    obj_map: Vec<Option<Obj>>,
    obj_used: Vec<bool>,
    mor_map: Vec<Option<Mor>>,
    mor_used: Vec<bool>,
    order: Vec<Mor>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), BudgetExhausted> {
        self.explored += 1;
        if self.explored > self.budget {
            Err(BudgetExhausted)
        } else {
            Ok(())
        }
    }

    fn hom_labels(&self, side: usize, x: Obj, y: Obj) -> Vec<u32> {
        let (cat, labels) = if side == 0 {
            (self.c, self.labels.map(|l| l.0))
        } else {
            (self.d, self.labels.map(|l| l.1))
        };
        let mut v: Vec<u32> = match labels {
            Some(l) => cat.hom(x, y).iter().map(|m| l[m.index()]).collect(),
            None => vec![0; cat.hom(x, y).len()],
        };
        v.sort_unstable();
        v
    }

    fn compatible(&self, x: Obj, y: Obj) -> bool {
        for x2 in self.c.objects() {
            let Some(y2) = self.obj_map[x2.index()] else {
                continue;
            };
            if self.hom_labels(0, x, x2) != self.hom_labels(1, y, y2)
                || self.hom_labels(0, x2, x) != self.hom_labels(1, y2, y)
            {
                return false;
            }
        }
        self.hom_labels(0, x, x) == self.hom_labels(1, y, y)
    }

    fn objects(&mut self, i: usize) -> Result<bool, BudgetExhausted> {
        if i == self.c.object_count() {
            self.order = self.c.morphisms().filter(|&f| !self.c.is_identity(f)).collect();
            for x in self.c.objects() {
                let y = self.obj_map[x.index()].unwrap();
                self.mor_map[self.c.identity(x).index()] = Some(self.d.identity(y));
                self.mor_used[self.d.identity(y).index()] = true;
            }
            let found = self.morphisms(0)?;
            if !found {
                for x in self.c.objects() {
                    let y = self.obj_map[x.index()].unwrap();
                    self.mor_map[self.c.identity(x).index()] = None;
                    self.mor_used[self.d.identity(y).index()] = false;
                }
            }
            return Ok(found);
        }
        let x = Obj(i as u32);
        for y in self.d.objects() {
            if self.obj_used[y.index()] || self.c_sig[x.index()] != self.d_sig[y.index()] {
                continue;
            }
            self.tick()?;
            if !self.compatible(x, y) {
                continue;
            }
            self.obj_map[i] = Some(y);
            self.obj_used[y.index()] = true;
            if self.objects(i + 1)? {
                return Ok(true);
            }
            self.obj_map[i] = None;
            self.obj_used[y.index()] = false;
        }
        Ok(false)
    }

    fn consistent(&self, f: Mor) -> bool {
        let (c, d) = (self.c, self.d);
        let g = self.mor_map[f.index()].unwrap();
        for &h in c.outgoing(c.cod(f)) {
            if let (Some(hm), Some(k)) = (self.mor_map[h.index()], self.mor_map[c.comp(h, f).index()]) {
                if d.comp(hm, g) != k {
                    return false;
                }
            }
        }
        for &h in c.incoming(c.dom(f)) {
            if let (Some(hm), Some(k)) = (self.mor_map[h.index()], self.mor_map[c.comp(f, h).index()]) {
                if d.comp(g, hm) != k {
                    return false;
                }
            }
        }
        true
    }

    fn morphisms(&mut self, i: usize) -> Result<bool, BudgetExhausted> {
        if i == self.order.len() {
            return Ok(self.full_check());
        }
        let f = self.order[i];
        let (x, y) = (self.c.dom(f), self.c.cod(f));
        let (fx, fy) = (self.obj_map[x.index()].unwrap(), self.obj_map[y.index()].unwrap());
        let candidates: Vec<Mor> = self.d.hom(fx, fy).to_vec();
        for g in candidates {
            if self.mor_used[g.index()] {
                continue;
            }
            if let Some((lc, ld)) = self.labels {
                if lc[f.index()] != ld[g.index()] {
                    continue;
                }
            }
            self.tick()?;
            self.mor_map[f.index()] = Some(g);
            self.mor_used[g.index()] = true;
            if self.consistent(f) && self.morphisms(i + 1)? {
                return Ok(true);
            }
            self.mor_map[f.index()] = None;
            self.mor_used[g.index()] = false;
        }
        Ok(false)
    }

    fn full_check(&self) -> bool {
        let (c, d) = (self.c, self.d);
        c.morphisms().all(|f| {
            let g = self.mor_map[f.index()].unwrap();
            c.outgoing(c.cod(f)).iter().all(|&h| {
                let hm = self.mor_map[h.index()].unwrap();
                self.mor_map[c.comp(h, f).index()].unwrap() == d.comp(hm, g)
            })
        })
    }
}

/// A skeleton of a finite category: one representative per isomorphism class,
/// chosen first in input order, with the inclusion and the retraction that
/// conjugates morphisms by chosen isomorphisms.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub category: Arc<FinCat>,
    pub representatives: Vec<Obj>,
    /// Skeleton → original.
    pub inclusion: FunctorData,
    /// Original → skeleton.
    pub retraction: FunctorData,
    /// For every original object x, the chosen isomorphism x → rep(x).
    pub to_representative: Vec<Mor>,
}

pub fn skeletonize(c: &Arc<FinCat>) -> Result<Skeleton> {
    let mut representatives: Vec<Obj> = Vec::new();
    let mut rep_index = vec![0usize; c.object_count()];
    let mut to_rep = vec![Mor(0); c.object_count()];
    let mut from_rep = vec![Mor(0); c.object_count()];
    for x in c.objects() {
        let hit = representatives
            .iter()
            .enumerate()
            .find_map(|(k, &r)| find_iso(c, x, r).map(|isos| (k, isos)));
        match hit {
            Some((k, (there, back))) => {
                rep_index[x.index()] = k;
                to_rep[x.index()] = there;
                from_rep[x.index()] = back;
            }
            None => {
                rep_index[x.index()] = representatives.len();
                representatives.push(x);
                to_rep[x.index()] = c.identity(x);
                from_rep[x.index()] = c.identity(x);
            }
        }
    }
    let (sub, kept) = c.full_subcategory(&representatives)?;
    let sub = Arc::new(sub);
    let mut position = vec![None; c.morphism_count()];
    for (i, &f) in kept.iter().enumerate() {
        position[f.index()] = Some(Mor(i as u32));
    }
    let inclusion = FunctorData::new(sub.clone(), c.clone(), representatives.clone(), kept.clone())?;
    let object_map: Vec<Obj> = c.objects().map(|x| Obj(rep_index[x.index()] as u32)).collect();
    let morphism_map: Vec<Mor> = c
        .morphisms()
        .map(|f| {
            let (x, y) = (c.dom(f), c.cod(f));
            let conj = c.comp(to_rep[y.index()], c.comp(f, from_rep[x.index()]));
            position[conj.index()].expect("conjugate lies between representatives")
        })
        .collect();
    let retraction = FunctorData::new(c.clone(), sub.clone(), object_map, morphism_map)?;
    Ok(Skeleton {
        category: sub,
        representatives,
        inclusion,
        retraction,
        to_representative: to_rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::CategoryBuilder;

    fn chain(n: usize) -> Arc<FinCat> {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Arc::new(FinCat::from_preorder(&refs, |i, j| i <= j).unwrap())
    }

    #[test]
    fn p2_is_isomorphic_to_itself_via_identity() {
        let p2 = chain(2);
        let out = categories_isomorphic(&p2, &p2, DEFAULT_ISO_BUDGET).unwrap();
        let (fwd, bwd) = out.witness().unwrap();
        assert_eq!(fwd.object_map, vec![Obj(0), Obj(1)]);
        assert_eq!(bwd.morphism_map, fwd.morphism_map);
    }

    #[test]
    fn p2_is_not_the_discrete_pair() {
        let p2 = chain(2);
        let discrete = Arc::new(FinCat::from_preorder(&["0", "1"], |i, j| i == j).unwrap());
        assert!(matches!(
            categories_isomorphic(&p2, &discrete, DEFAULT_ISO_BUDGET).unwrap(),
            IsoOutcome::NotIsomorphic
        ));
    }

    #[test]
    fn reversed_chain_is_found_and_witness_inverts() {
        let c = chain(3);
        let r = Arc::new(FinCat::from_preorder(&["c", "b", "a"], |i, j| i >= j).unwrap());
        let out = categories_isomorphic(&c, &r, DEFAULT_ISO_BUDGET).unwrap();
        let (fwd, bwd) = out.witness().unwrap();
        assert!(validate_functor(fwd).unwrap().is_empty());
        assert!(validate_functor(bwd).unwrap().is_empty());
        let round = fwd.then(bwd).unwrap();
        assert_eq!(round.morphism_map, c.morphisms().collect::<Vec<_>>());
    }

    #[test]
    fn tiny_budget_is_inconclusive_not_negative() {
        let c = chain(4);
        let r = Arc::new(FinCat::from_preorder(&["d", "c", "b", "a"], |i, j| i >= j).unwrap());
        assert!(matches!(
            categories_isomorphic(&c, &r, 1).unwrap(),
            IsoOutcome::Inconclusive { .. }
        ));
        assert!(categories_isomorphic(&c, &r, 0).is_err());
    }

    #[test]
    fn non_thin_isomorphism_respects_composition() {
        // two parallel arrows followed by a coequalizing fold, in two orders
        let build = |order: [&str; 2]| {
            let mut b = CategoryBuilder::new();
            for o in ["A", "B", "T"] {
                b.object(o).unwrap();
            }
            for name in order {
                b.morphism(name, "A", "B").unwrap();
            }
            b.morphism("q", "B", "T").unwrap();
            b.morphism("w", "A", "T").unwrap();
            b.compose("q", "u", "w").unwrap();
            b.compose("q", "v", "w").unwrap();
            Arc::new(b.build().unwrap())
        };
        let c = build(["u", "v"]);
        let d = build(["v", "u"]);
        assert!(categories_isomorphic(&c, &d, DEFAULT_ISO_BUDGET).unwrap().is_isomorphic());
    }

    #[test]
    fn labels_restrict_the_search() {
        let p2 = chain(2);
        let a = [0, 0, 1];
        let b = [0, 0, 2];
        assert!(matches!(
            labeled_isomorphism(&p2, &p2, &a, &b, DEFAULT_ISO_BUDGET).unwrap(),
            IsoOutcome::NotIsomorphic
        ));
        assert!(labeled_isomorphism(&p2, &p2, &a, &a, DEFAULT_ISO_BUDGET)
            .unwrap()
            .is_isomorphic());
    }

    #[test]
    fn skeleton_of_codiscrete_pair_is_a_point() {
        let c = Arc::new(FinCat::from_preorder(&["X", "Y"], |_, _| true).unwrap());
        let s = skeletonize(&c).unwrap();
        assert_eq!(s.category.object_count(), 1);
        assert_eq!(s.category.morphism_count(), 1);
        assert!(validate_functor(&s.retraction).unwrap().is_empty());
        assert!(validate_functor(&s.inclusion).unwrap().is_empty());
    }
}
