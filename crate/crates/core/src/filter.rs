//! The preorder of discrete homotopically subterminal objects, filters on it,
//! product stability of morphism classes, and filters on finite powersets.

use std::fmt;

use serde::Serialize;

use crate::category::{Obj, PowerCategory};
use crate::error::{Error, Inconclusive, Result};
use crate::model::{is_discrete_homotopically_subterminal, ClassKind, ModelStructure};
use crate::universal::{find_initial, find_terminal};

/// Discrete homotopically subterminal objects, preordered by the existence
/// of a morphism, with one representative per isomorphism class.
#[derive(Clone, Debug)]
pub struct SubterminalPreorder {
    pub elements: Vec<Obj>,
    /// Objects whose membership could not be decided, with the reason.
    pub excluded: Vec<(Obj, String)>,
    /// Representatives, first in object order within each class.
    pub skeleton: Vec<Obj>,
    /// Skeleton index of every element, indexed by object.
    class_of: Vec<Option<usize>>,
    leq: Vec<bool>,
    pub top: usize,
}

impl SubterminalPreorder {
    pub fn len(&self) -> usize {
        self.skeleton.len()
    }

    pub fn is_empty(&self) -> bool {
        self.skeleton.is_empty()
    }

    /// `skeleton[a] ≤ skeleton[b]`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    /// Skeleton index of an element of the preorder.
    pub fn class_of(&self, x: Obj) -> Option<usize> {
        self.class_of.get(x.index()).copied().flatten()
    }

    pub fn representative(&self, x: Obj) -> Option<Obj> {
        self.class_of(x).map(|k| self.skeleton[k])
    }

    pub fn up_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq(a, b)).collect()
    }
}

pub fn build_subfib(m: &ModelStructure) -> Result<SubterminalPreorder, Inconclusive> {
    let c = &*m.base;
    let t = find_terminal(c).ok_or_else(|| Inconclusive("no terminal object".into()))?;
    let mut elements = Vec::new();
    let mut excluded = Vec::new();
    for x in c.objects() {
        match is_discrete_homotopically_subterminal(m, x) {
            Ok(true) => elements.push(x),
            Ok(false) => {}
            Err(e) => excluded.push((x, e.0)),
        }
    }
    let nonempty = |x: Obj, y: Obj| !c.hom(x, y).is_empty();
    let mut skeleton: Vec<Obj> = Vec::new();
    let mut class_of = vec![None; c.object_count()];
    for &x in &elements {
        match skeleton
            .iter()
            .position(|&r| nonempty(x, r) && nonempty(r, x))
        {
            Some(k) => class_of[x.index()] = Some(k),
            None => {
                class_of[x.index()] = Some(skeleton.len());
                skeleton.push(x);
            }
        }
    }
    let k = skeleton.len();
    let mut leq = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            leq[a * k + b] = nonempty(skeleton[a], skeleton[b]);
        }
    }
    let top = class_of[t.index()]
        .ok_or_else(|| Inconclusive("terminal object is not discrete homotopically subterminal".into()))?;
    Ok(SubterminalPreorder {
        elements,
        excluded,
        skeleton,
        class_of,
        leq,
        top,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum FilterViolation {
    NonEmptiness,
    UpwardClosure { lower: String, upper: String },
    Directedness { x: String, y: String },
}

impl fmt::Display for FilterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterViolation::NonEmptiness => write!(f, "non-emptiness fails: the filter is empty"),
            FilterViolation::UpwardClosure { lower, upper } => {
                write!(f, "upward closure fails at ({lower} ≤ {upper}): {upper} missing")
            }
            FilterViolation::Directedness { x, y } => {
                write!(f, "directedness fails: no member below both {x} and {y}")
            }
        }
    }
}

fn check_members(s: &SubterminalPreorder, members: &[usize]) -> Result<()> {
    if let Some(&bad) = members.iter().find(|&&a| a >= s.len()) {
        return Err(Error::Structural(format!(
            "filter element {bad} outside the subterminal skeleton"
        )));
    }
    Ok(())
}

/// Lists every violated filter axiom over the skeleton indices `members`.
pub fn validate_filter(
    c: &crate::category::FinCat,
    s: &SubterminalPreorder,
    members: &[usize],
) -> Result<Vec<FilterViolation>> {
    check_members(s, members)?;
    let name = |a: usize| c.object_name(s.skeleton[a]).to_string();
    let mut inside = vec![false; s.len()];
    for &a in members {
        inside[a] = true;
    }
    let mut out = Vec::new();
    if members.is_empty() {
        out.push(FilterViolation::NonEmptiness);
    }
    for a in (0..s.len()).filter(|&a| inside[a]) {
        for b in 0..s.len() {
            if s.leq(a, b) && !inside[b] {
                out.push(FilterViolation::UpwardClosure {
                    lower: name(a),
                    upper: name(b),
                });
            }
        }
    }
    for a in (0..s.len()).filter(|&a| inside[a]) {
        for b in (a + 1..s.len()).filter(|&b| inside[b]) {
            if !(0..s.len()).any(|z| inside[z] && s.leq(z, a) && s.leq(z, b)) {
                out.push(FilterViolation::Directedness {
                    x: name(a),
                    y: name(b),
                });
            }
        }
    }
    Ok(out)
}

/// A validated filter over the skeleton of a [`SubterminalPreorder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filter {
    members: Vec<usize>,
    minimum: usize,
}

impl Filter {
    pub fn new(c: &crate::category::FinCat, s: &SubterminalPreorder, members: &[usize]) -> Result<Filter> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let violations = validate_filter(c, s, &members)?;
        if let Some(v) = violations.first() {
            return Err(Error::Rejected(format!("not a filter: {v}")));
        }
        let minimum = *members
            .iter()
            .find(|&&z| members.iter().all(|&a| s.leq(z, a)))
            .expect("finite directed sets have a minimum");
        Ok(Filter { members, minimum })
    }

    /// The principal filter `↑a`.
    pub fn principal(c: &crate::category::FinCat, s: &SubterminalPreorder, a: usize) -> Result<Filter> {
        check_members(s, &[a])?;
        Filter::new(c, s, &s.up_set(a))
    }

    /// Skeleton indices, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn minimum(&self) -> usize {
        self.minimum
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn objects(&self, s: &SubterminalPreorder) -> Vec<Obj> {
        self.members.iter().map(|&a| s.skeleton[a]).collect()
    }

    pub fn minimum_object(&self, s: &SubterminalPreorder) -> Obj {
        s.skeleton[self.minimum]
    }

    pub fn names(&self, c: &crate::category::FinCat, s: &SubterminalPreorder) -> Vec<String> {
        self.objects(s)
            .into_iter()
            .map(|x| c.object_name(x).to_string())
            .collect()
    }
}

/// Resolves object names to skeleton indices. Names of non-representatives
/// are canonicalized; the returned notices record each replacement.
pub fn resolve_filter_names(
    c: &crate::category::FinCat,
    s: &SubterminalPreorder,
    names: &[String],
) -> Result<(Vec<usize>, Vec<String>)> {
    let mut members = Vec::new();
    let mut notices = Vec::new();
    for n in names {
        let x = c.lookup_object(n)?;
        let k = s.class_of(x).ok_or_else(|| {
            Error::Structural(format!(
                "`{n}` is not a discrete homotopically subterminal object"
            ))
        })?;
        if s.skeleton[k] != x {
            notices.push(format!(
                "`{n}` replaced by its representative `{}`",
                c.object_name(s.skeleton[k])
            ));
        }
        members.push(k);
    }
    Ok((members, notices))
}

/// All filters on the skeleton, ordered by their membership bitmask (bit `i`
/// for skeleton element `i`). Finite filters are principal, so these are the
/// up-sets of single elements.
pub fn enumerate_filters(c: &crate::category::FinCat, s: &SubterminalPreorder) -> Vec<Filter> {
    let mut out: Vec<Filter> = Vec::new();
    for a in 0..s.len() {
        let f = Filter::principal(c, s, a).expect("principal up-sets are filters");
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out.sort_by(|x, y| mask_cmp(x.members(), y.members()));
    out
}

fn mask_cmp(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    let mut a: Vec<usize> = a.to_vec();
    let mut b: Vec<usize> = b.to_vec();
    a.reverse();
    b.reverse();
    for (x, y) in a.iter().zip(&b) {
        if x != y {
            return x.cmp(y);
        }
    }
    a.len().cmp(&b.len())
}

/// A morphism `f` of the class and a member `U` with `f × U` outside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityFailure {
    pub morphism: String,
    pub object: String,
    pub product: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub class: ClassKind,
    pub instances: usize,
    pub failures: Vec<StabilityFailure>,
    pub inconclusive: Vec<String>,
}

impl StabilityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.inconclusive.is_empty()
    }
}

/// Checks `f × U ∈ S` for every `f ∈ S` and every `U` in the filter.
pub fn is_product_stable(
    m: &ModelStructure,
    kind: ClassKind,
    s: &SubterminalPreorder,
    phi: &Filter,
) -> StabilityReport {
    let c = &*m.base;
    let mut report = StabilityReport {
        class: kind,
        instances: 0,
        failures: vec![],
        inconclusive: vec![],
    };
    for f in m.class(kind).iter() {
        for u in phi.objects(s) {
            report.instances += 1;
            match m.products().times_object(f, u) {
                Ok(fu) => {
                    if !m.in_class(kind, fu) {
                        report.failures.push(StabilityFailure {
                            morphism: c.morphism_name(f).to_string(),
                            object: c.object_name(u).to_string(),
                            product: c.morphism_name(fu).to_string(),
                        });
                    }
                }
                Err(e) => report.inconclusive.push(e.to_string()),
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelFilterReport {
    pub cofibrations: StabilityReport,
    pub weak_equivalences: StabilityReport,
    /// Members that are not discrete homotopically subterminal.
    pub not_discrete: Vec<String>,
}

impl ModelFilterReport {
    pub fn holds(&self) -> bool {
        self.cofibrations.holds() && self.weak_equivalences.holds() && self.not_discrete.is_empty()
    }
}

pub fn is_model_filter(m: &ModelStructure, s: &SubterminalPreorder, phi: &Filter) -> ModelFilterReport {
    let not_discrete = phi
        .objects(s)
        .into_iter()
        .filter(|&u| is_discrete_homotopically_subterminal(m, u) != Ok(true))
        .map(|u| m.base.object_name(u).to_string())
        .collect();
    ModelFilterReport {
        cofibrations: is_product_stable(m, ClassKind::Cofibration, s, phi),
        weak_equivalences: is_product_stable(m, ClassKind::WeakEquivalence, s, phi),
        not_discrete,
    }
}

/// A filter on the powerset of a finite index set. Subsets are bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexFilter {
    pub labels: Vec<String>,
    sets: Vec<u64>,
}

impl IndexFilter {
    pub fn new(labels: Vec<String>, sets: impl IntoIterator<Item = u64>) -> Result<Self> {
        let n = labels.len();
        if n > 16 {
            return Err(Error::Rejected("index sets are limited to 16 labels".into()));
        }
        let full = (1u64 << n) - 1;
        let mut sets: Vec<u64> = sets.into_iter().collect();
        sets.sort_unstable();
        sets.dedup();
        if let Some(bad) = sets.iter().find(|&&j| j & !full != 0) {
            return Err(Error::Structural(format!("subset {bad:#b} outside the index set")));
        }
        if sets.is_empty() {
            return Err(Error::Rejected("not a filter: non-emptiness fails".into()));
        }
        for &j in &sets {
            for &k in &sets {
                if sets.binary_search(&(j & k)).is_err() {
                    return Err(Error::Rejected(format!(
                        "not a filter: directedness fails at {} and {}",
                        subset_name(&labels, j),
                        subset_name(&labels, k)
                    )));
                }
            }
            let mut sup = j;
            loop {
                sup = (sup + 1) | j;
                if sup > full {
                    break;
                }
                if sets.binary_search(&sup).is_err() {
                    return Err(Error::Rejected(format!(
                        "not a filter: upward closure fails at {} ⊆ {}",
                        subset_name(&labels, j),
                        subset_name(&labels, sup)
                    )));
                }
            }
        }
        Ok(IndexFilter { labels, sets })
    }

    /// All supersets of `j0`.
    pub fn principal(labels: Vec<String>, j0: u64) -> Result<Self> {
        let full = (1u64 << labels.len()) - 1;
        IndexFilter::new(labels, (0..=full).filter(|&j| j & j0 == j0))
    }

    pub fn sets(&self) -> &[u64] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn minimum(&self) -> u64 {
        self.sets.iter().fold((1u64 << self.labels.len()) - 1, |acc, &j| acc & j)
    }

    pub fn subset_name(&self, j: u64) -> String {
        subset_name(&self.labels, j)
    }
}

pub fn subset_name(labels: &[String], j: u64) -> String {
    let parts: Vec<&str> = labels
        .iter()
        .enumerate()
        .filter(|(k, _)| j >> k & 1 == 1)
        .map(|(_, l)| l.as_str())
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Every filter on the powerset of `labels`, found by testing all families
/// of subsets.
pub fn enumerate_index_filters(labels: &[String]) -> Result<Vec<IndexFilter>> {
    let n = labels.len();
    if n > 4 {
        return Err(Error::Rejected(
            "exhaustive index-filter enumeration is limited to 4 labels".into(),
        ));
    }
    let subsets = 1u64 << n;
    let mut out = Vec::new();
    for family in 1u64..(1u64 << subsets) {
        let sets = (0..subsets).filter(|&j| family >> j & 1 == 1);
        if let Ok(f) = IndexFilter::new(labels.to_vec(), sets) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Sends `J` to the tuple that is terminal on `J` and initial elsewhere, and
/// closes the image upwards in the subterminal skeleton of the power.
///
/// Requires a strict initial object not isomorphic to the terminal object.
pub fn embed_powerset_filter(
    power: &PowerCategory,
    m: &ModelStructure,
    s: &SubterminalPreorder,
    iphi: &IndexFilter,
) -> Result<Filter> {
    if iphi.len() != power.arity {
        return Err(Error::Structural(format!(
            "index filter has {} labels but the power has {} factors",
            iphi.len(),
            power.arity
        )));
    }
    let factor = &*power.factor;
    let t = find_terminal(factor).ok_or_else(|| Error::Rejected("no terminal object".into()))?;
    let i = find_initial(factor).ok_or_else(|| Error::Rejected("no initial object".into()))?;
    if factor.incoming(i).len() != 1 {
        return Err(Error::Rejected(format!(
            "initial object {} is not strict",
            factor.object_name(i)
        )));
    }
    if !factor.hom(t, i).is_empty() {
        return Err(Error::Rejected(format!(
            "initial object {} is isomorphic to the terminal object {}",
            factor.object_name(i),
            factor.object_name(t)
        )));
    }
    let mut image = Vec::new();
    for &j in iphi.sets() {
        let coords: Vec<Obj> = (0..power.arity)
            .map(|k| if j >> k & 1 == 1 { t } else { i })
            .collect();
        let x = power.tuple(&coords);
        let k = s.class_of(x).ok_or_else(|| {
            Error::Rejected(format!(
                "{} is not discrete homotopically subterminal",
                m.base.object_name(x)
            ))
        })?;
        image.push(k);
    }
    let closure: Vec<usize> = (0..s.len())
        .filter(|&b| image.iter().any(|&a| s.leq(a, b)))
        .collect();
    Filter::new(&m.base, s, &closure)
}

/// The skeleton index of the tuple for the subset `j`.
pub fn powerset_tuple(power: &PowerCategory, j: u64) -> Option<Obj> {
    let factor = &*power.factor;
    let t = find_terminal(factor)?;
    let i = find_initial(factor)?;
    let coords: Vec<Obj> = (0..power.arity)
        .map(|k| if j >> k & 1 == 1 { t } else { i })
        .collect();
    Some(power.tuple(&coords))
}
