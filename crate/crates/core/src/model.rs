//! Model structures on finite categories and the exhaustive check of the
//! lifting, factorization, retract and 2-of-3 axioms.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{is_iso, is_mono, product_of, FinCat, Mor, Obj};
use crate::error::{Error, Inconclusive, Result};
use crate::universal::{
    find_initial, find_terminal, pushout_product, search_limit, Diagram, Products,
    PushoutProduct, View,
};

/// A set of morphisms of a fixed category, stored as a membership vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismSet(Vec<bool>);

impl MorphismSet {
    pub fn empty(len: usize) -> Self {
        MorphismSet(vec![false; len])
    }

    pub fn full(len: usize) -> Self {
        MorphismSet(vec![true; len])
    }

    pub fn contains(&self, f: Mor) -> bool {
        self.0[f.index()]
    }

    pub fn insert(&mut self, f: Mor) {
        self.0[f.index()] = true;
    }

    pub fn remove(&mut self, f: Mor) {
        self.0[f.index()] = false;
    }

    pub fn iter(&self) -> impl Iterator<Item = Mor> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Mor(i as u32))
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    Cofibration,
    Fibration,
    WeakEquivalence,
}

impl ClassKind {
    pub const ALL: [ClassKind; 3] = [
        ClassKind::Cofibration,
        ClassKind::Fibration,
        ClassKind::WeakEquivalence,
    ];

    pub fn plural(self) -> &'static str {
        match self {
            ClassKind::Cofibration => "cofibrations",
            ClassKind::Fibration => "fibrations",
            ClassKind::WeakEquivalence => "weak-equivalences",
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            ClassKind::Cofibration => 1,
            ClassKind::Fibration => 2,
            ClassKind::WeakEquivalence => 4,
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassKind::Cofibration => "cofibration",
            ClassKind::Fibration => "fibration",
            ClassKind::WeakEquivalence => "weak equivalence",
        };
        f.write_str(s)
    }
}

/// Three classes of morphisms over a finite category. Identities are always
/// members of every class.
#[derive(Clone, Debug)]
pub struct ModelStructure {
    pub base: Arc<FinCat>,
    cofibrations: MorphismSet,
    fibrations: MorphismSet,
    weak_equivalences: MorphismSet,
    products: Arc<Products>,
}

impl PartialEq for ModelStructure {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.cofibrations == other.cofibrations
            && self.fibrations == other.fibrations
            && self.weak_equivalences == other.weak_equivalences
    }
}

impl ModelStructure {
    pub fn new(
        base: Arc<FinCat>,
        cofibrations: impl IntoIterator<Item = Mor>,
        fibrations: impl IntoIterator<Item = Mor>,
        weak_equivalences: impl IntoIterator<Item = Mor>,
    ) -> Result<Self> {
        let n = base.morphism_count();
        let mut sets = Vec::with_capacity(3);
        for members in [
            cofibrations.into_iter().collect::<Vec<_>>(),
            fibrations.into_iter().collect(),
            weak_equivalences.into_iter().collect(),
        ] {
            let mut set = MorphismSet::empty(n);
            for f in members {
                base.check_morphism(f)?;
                set.insert(f);
            }
            for x in base.objects() {
                set.insert(base.identity(x));
            }
            sets.push(set);
        }
        let weak_equivalences = sets.pop().unwrap();
        let fibrations = sets.pop().unwrap();
        let cofibrations = sets.pop().unwrap();
        Ok(ModelStructure {
            products: Arc::new(Products::new(base.clone())),
            base,
            cofibrations,
            fibrations,
            weak_equivalences,
        })
    }

    pub fn from_sets(base: Arc<FinCat>, c: MorphismSet, f: MorphismSet, w: MorphismSet) -> Result<Self> {
        let n = base.morphism_count();
        if c.universe() != n || f.universe() != n || w.universe() != n {
            return Err(Error::Structural("class size does not match the category".into()));
        }
        Self::new(base, c.iter().collect::<Vec<_>>(), f.iter().collect::<Vec<_>>(), w.iter().collect::<Vec<_>>())
    }

    pub fn from_names(base: Arc<FinCat>, c: &[&str], f: &[&str], w: &[&str]) -> Result<Self> {
        let look = |names: &[&str]| -> Result<Vec<Mor>> {
            names.iter().map(|n| base.lookup_morphism(n)).collect()
        };
        let (c, f, w) = (look(c)?, look(f)?, look(w)?);
        Self::new(base, c, f, w)
    }

    /// Every morphism a cofibration and a fibration; only identities are weak
    /// equivalences.
    pub fn trivial(base: Arc<FinCat>) -> Self {
        let all: Vec<Mor> = base.morphisms().collect();
        Self::new(base, all.clone(), all, []).expect("morphisms of the base")
    }

    /// Replaces the base category's product cache, e.g. to share one cache
    /// between structures on the same category.
    pub fn with_products(mut self, products: Arc<Products>) -> Result<Self> {
        if *products.category() != self.base {
            return Err(Error::Structural("product cache belongs to another category".into()));
        }
        self.products = products;
        Ok(self)
    }

    pub fn products(&self) -> &Arc<Products> {
        &self.products
    }

    pub fn class(&self, kind: ClassKind) -> &MorphismSet {
        match kind {
            ClassKind::Cofibration => &self.cofibrations,
            ClassKind::Fibration => &self.fibrations,
            ClassKind::WeakEquivalence => &self.weak_equivalences,
        }
    }

    pub fn is_cofibration(&self, f: Mor) -> bool {
        self.cofibrations.contains(f)
    }

    pub fn is_fibration(&self, f: Mor) -> bool {
        self.fibrations.contains(f)
    }

    pub fn is_weak_equivalence(&self, f: Mor) -> bool {
        self.weak_equivalences.contains(f)
    }

    pub fn is_trivial_cofibration(&self, f: Mor) -> bool {
        self.is_cofibration(f) && self.is_weak_equivalence(f)
    }

    pub fn is_trivial_fibration(&self, f: Mor) -> bool {
        self.is_fibration(f) && self.is_weak_equivalence(f)
    }

    pub fn in_class(&self, kind: ClassKind, f: Mor) -> bool {
        self.class(kind).contains(f)
    }

    /// Class membership as a bit pattern (see [`ClassKind::bit`]).
    pub fn label(&self, f: Mor) -> u32 {
        ClassKind::ALL
            .iter()
            .filter(|k| self.in_class(**k, f))
            .map(|k| k.bit())
            .sum()
    }

    pub fn labels(&self) -> Vec<u32> {
        self.base.morphisms().map(|f| self.label(f)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    #[serde(rename = "lifting")]
    Lifting,
    #[serde(rename = "factorization")]
    Factorization,
    #[serde(rename = "retract")]
    Retract,
    #[serde(rename = "2-of-3")]
    TwoOutOfThree,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [
        Axiom::Lifting,
        Axiom::Factorization,
        Axiom::Retract,
        Axiom::TwoOutOfThree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Lifting => "lifting",
            Axiom::Factorization => "factorization",
            Axiom::Retract => "retract",
            Axiom::TwoOutOfThree => "2-of-3",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The first instance (in enumeration order) at which an axiom fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    /// A commutative square `right∘top = bottom∘left` without a diagonal filler.
    Lifting {
        left: String,
        right: String,
        top: String,
        bottom: String,
    },
    Factorization {
        morphism: String,
        pattern: &'static str,
    },
    /// `morphism` is a retract of `of`, which is in `class`, but is not itself.
    Retract {
        morphism: String,
        of: String,
        class: ClassKind,
    },
    TwoOutOfThree {
        g: String,
        f: String,
        composite: String,
        outside: String,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Lifting {
                left,
                right,
                top,
                bottom,
            } => write!(
                fm,
                "no lift in the square {left} / {right} with top {top} and bottom {bottom}"
            ),
            Counterexample::Factorization { morphism, pattern } => {
                write!(fm, "{morphism} has no factorization as {pattern}")
            }
            Counterexample::Retract { morphism, of, class } => {
                write!(fm, "{morphism} is a retract of the {class} {of} but not a {class}")
            }
            Counterexample::TwoOutOfThree {
                g,
                f,
                composite,
                outside,
            } => write!(
                fm,
                "two of {f}, {g}, {composite} = {g}∘{f} are weak equivalences but {outside} is not"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    /// Number of instances inspected (squares, morphisms, retract diagrams or
    /// composable pairs).
    pub instances: usize,
    pub counterexample: Option<Counterexample>,
}

impl AxiomVerdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub verdicts: Vec<AxiomVerdict>,
}

impl ModelReport {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(AxiomVerdict::holds)
    }

    pub fn verdict(&self, axiom: Axiom) -> &AxiomVerdict {
        self.verdicts.iter().find(|v| v.axiom == axiom).expect("all axioms reported")
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        self.verdicts.iter().filter(|v| !v.holds()).map(|v| v.axiom).collect()
    }
}

pub fn verify_model_structure(m: &ModelStructure) -> ModelReport {
    ModelReport {
        verdicts: vec![
            check_lifting(m),
            check_factorization(m),
            check_retract(m),
            check_two_of_three(m),
        ],
    }
}

/// Lifting: every square with left leg a cofibration and right leg a
/// fibration, one of them trivial, has a filler.
pub fn check_lifting(m: &ModelStructure) -> AxiomVerdict {
    let c = &*m.base;
    let name = |f: Mor| c.morphism_name(f).to_string();
    let mut instances = 0;
    let mut counterexample = None;
    for i in m.cofibrations.iter() {
        for p in m.fibrations.iter() {
            if !m.is_weak_equivalence(i) && !m.is_weak_equivalence(p) {
                continue;
            }
            let (a, b, x, y) = (c.dom(i), c.cod(i), c.dom(p), c.cod(p));
            for &u in c.hom(a, x) {
                let pu = c.comp(p, u);
                for &v in c.hom(b, y) {
                    if c.comp(v, i) != pu {
                        continue;
                    }
                    instances += 1;
                    if counterexample.is_some() {
                        continue;
                    }
                    let filled = c
                        .hom(b, x)
                        .iter()
                        .any(|&h| c.comp(h, i) == u && c.comp(p, h) == v);
                    if !filled {
                        counterexample = Some(Counterexample::Lifting {
                            left: name(i),
                            right: name(p),
                            top: name(u),
                            bottom: name(v),
                        });
                    }
                }
            }
        }
    }
    AxiomVerdict {
        axiom: Axiom::Lifting,
        instances,
        counterexample,
    }
}

pub const PATTERN_C_TF: &str = "cofibration then trivial fibration";
pub const PATTERN_TC_F: &str = "trivial cofibration then fibration";

fn factors(m: &ModelStructure, f: Mor, first: impl Fn(Mor) -> bool, second: impl Fn(Mor) -> bool) -> bool {
    let c = &*m.base;
    let (x, y) = (c.dom(f), c.cod(f));
    c.objects().any(|z| {
        c.hom(x, z).iter().any(|&i| {
            first(i) && c.hom(z, y).iter().any(|&p| second(p) && c.comp(p, i) == f)
        })
    })
}

pub fn check_factorization(m: &ModelStructure) -> AxiomVerdict {
    let c = &*m.base;
    let mut counterexample = None;
    for f in c.morphisms() {
        let pattern = if !factors(m, f, |i| m.is_cofibration(i), |p| m.is_trivial_fibration(p)) {
            Some(PATTERN_C_TF)
        } else if !factors(m, f, |i| m.is_trivial_cofibration(i), |p| m.is_fibration(p)) {
            Some(PATTERN_TC_F)
        } else {
            None
        };
        if let Some(pattern) = pattern {
            counterexample = Some(Counterexample::Factorization {
                morphism: c.morphism_name(f).to_string(),
                pattern,
            });
            break;
        }
    }
    AxiomVerdict {
        axiom: Axiom::Factorization,
        instances: c.morphism_count(),
        counterexample,
    }
}

/// Pairs `(s, r)` with `s: a → b`, `r: b → a`, `r∘s = id_a`.
fn retractions(c: &FinCat, a: Obj, b: Obj) -> Vec<(Mor, Mor)> {
    let id = c.identity(a);
    let mut out = Vec::new();
    for &s in c.hom(a, b) {
        for &r in c.hom(b, a) {
            if c.comp(r, s) == id {
                out.push((s, r));
            }
        }
    }
    out
}

/// Retract: if `g` is a retract of `f` in the arrow category, `g` inherits
/// every class of `f`. Only pairs where `f` has a class `g` lacks can fail,
/// and only those are enumerated.
pub fn check_retract(m: &ModelStructure) -> AxiomVerdict {
    let c = &*m.base;
    let n = c.object_count();
    let mut pairs: Vec<Option<Vec<(Mor, Mor)>>> = vec![None; n * n];
    let mut get_pairs = |a: Obj, b: Obj| -> Vec<(Mor, Mor)> {
        pairs[a.index() * n + b.index()]
            .get_or_insert_with(|| retractions(c, a, b))
            .clone()
    };
    let labels = m.labels();
    let mut instances = 0;
    for g in c.morphisms() {
        let (a2, b2) = (c.dom(g), c.cod(g));
        for f in c.morphisms() {
            let missing = labels[f.index()] & !labels[g.index()];
            if missing == 0 {
                continue;
            }
            let (a, b) = (c.dom(f), c.cod(f));
            let sr_dom = get_pairs(a2, a);
            if sr_dom.is_empty() {
                continue;
            }
            let sr_cod = get_pairs(b2, b);
            for &(s1, r1) in &sr_dom {
                for &(s2, r2) in &sr_cod {
                    instances += 1;
                    if c.comp(f, s1) == c.comp(s2, g) && c.comp(g, r1) == c.comp(r2, f) {
                        let class = ClassKind::ALL
                            .into_iter()
                            .find(|k| missing & k.bit() != 0)
                            .unwrap();
                        return AxiomVerdict {
                            axiom: Axiom::Retract,
                            instances,
                            counterexample: Some(Counterexample::Retract {
                                morphism: c.morphism_name(g).to_string(),
                                of: c.morphism_name(f).to_string(),
                                class,
                            }),
                        };
                    }
                }
            }
        }
    }
    AxiomVerdict {
        axiom: Axiom::Retract,
        instances,
        counterexample: None,
    }
}

pub fn check_two_of_three(m: &ModelStructure) -> AxiomVerdict {
    let c = &*m.base;
    let mut instances = 0;
    let mut counterexample = None;
    for f in c.morphisms() {
        for &g in c.outgoing(c.cod(f)) {
            instances += 1;
            if counterexample.is_some() {
                continue;
            }
            let gf = c.comp(g, f);
            let trio = [
                (f, m.is_weak_equivalence(f)),
                (g, m.is_weak_equivalence(g)),
                (gf, m.is_weak_equivalence(gf)),
            ];
            if trio.iter().filter(|t| t.1).count() == 2 {
                let outside = trio.iter().find(|t| !t.1).unwrap().0;
                counterexample = Some(Counterexample::TwoOutOfThree {
                    g: c.morphism_name(g).to_string(),
                    f: c.morphism_name(f).to_string(),
                    composite: c.morphism_name(gf).to_string(),
                    outside: c.morphism_name(outside).to_string(),
                });
            }
        }
    }
    AxiomVerdict {
        axiom: Axiom::TwoOutOfThree,
        instances,
        counterexample,
    }
}

/// Morphisms iso-conjugate to a member of some class without being members,
/// as `(class, member, conjugate)`.
pub fn iso_closure_violations(m: &ModelStructure) -> Vec<(ClassKind, Mor, Mor)> {
    let c = &*m.base;
    let isos: Vec<Mor> = c
        .morphisms()
        .filter(|&f| is_iso(c, f).ok().flatten().is_some())
        .collect();
    let mut out = Vec::new();
    for kind in ClassKind::ALL {
        for f in m.class(kind).iter() {
            for &a in isos.iter().filter(|&&a| c.dom(a) == c.cod(f)) {
                for &b in isos.iter().filter(|&&b| c.cod(b) == c.dom(f)) {
                    let g = c.comp(a, c.comp(f, b));
                    if !m.in_class(kind, g) {
                        out.push((kind, f, g));
                    }
                }
            }
        }
    }
    out
}

pub fn terminal_object(m: &ModelStructure) -> Result<Obj, Inconclusive> {
    find_terminal(&m.base).ok_or_else(|| Inconclusive("no terminal object".into()))
}

pub fn initial_object(m: &ModelStructure) -> Result<Obj, Inconclusive> {
    find_initial(&m.base).ok_or_else(|| Inconclusive("no initial object".into()))
}

pub fn is_fibrant(m: &ModelStructure, x: Obj) -> Result<bool, Inconclusive> {
    let t = terminal_object(m)?;
    Ok(m.is_fibration(m.base.hom(x, t)[0]))
}

pub fn is_cofibrant(m: &ModelStructure, x: Obj) -> Result<bool, Inconclusive> {
    let i = initial_object(m)?;
    Ok(m.is_cofibration(m.base.hom(i, x)[0]))
}

/// Fibrant with diagonal `U → U×U` a weak equivalence.
pub fn is_homotopically_subterminal(m: &ModelStructure, u: Obj) -> Result<bool, Inconclusive> {
    if !is_fibrant(m, u)? {
        return Ok(false);
    }
    let d = m
        .products
        .diagonal(u)
        .map_err(|e| Inconclusive(e.to_string()))?;
    Ok(m.is_weak_equivalence(d))
}

/// Homotopically subterminal, and `U → 1` is a monomorphism.
pub fn is_discrete_homotopically_subterminal(m: &ModelStructure, u: Obj) -> Result<bool, Inconclusive> {
    let t = terminal_object(m)?;
    if !is_fibrant(m, u)? {
        return Ok(false);
    }
    if !is_mono(&m.base, m.base.hom(u, t)[0]).expect("morphism of the base") {
        return Ok(false);
    }
    is_homotopically_subterminal(m, u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// One square whose base change of a weak equivalence is not a weak equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperFailure {
    /// The fibration (right) or cofibration (left) changed along.
    pub along: String,
    pub weak_equivalence: String,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropernessReport {
    pub side: Side,
    pub instances: usize,
    pub failures: Vec<ProperFailure>,
    pub inconclusive: Vec<String>,
}

impl PropernessReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.inconclusive.is_empty()
    }
}

/// Right: the pullback of a weak equivalence along a fibration is a weak
/// equivalence. Left: the pushout of a weak equivalence along a cofibration is.
pub fn check_properness(m: &ModelStructure, side: Side) -> PropernessReport {
    let c = &*m.base;
    let mut report = PropernessReport {
        side,
        instances: 0,
        failures: vec![],
        inconclusive: vec![],
    };
    for p in c.morphisms() {
        let along_ok = match side {
            Side::Right => m.is_fibration(p),
            Side::Left => m.is_cofibration(p),
        };
        if !along_ok {
            continue;
        }
        for f in m.weak_equivalences.iter() {
            let (diagram, view) = match side {
                Side::Right if c.cod(f) == c.cod(p) => (Diagram::cospan(c, p, f), View::new(c)),
                Side::Left if c.dom(f) == c.dom(p) => (Diagram::span(c, p, f), View::op(c)),
                _ => continue,
            };
            report.instances += 1;
            match search_limit(view, &diagram) {
                None => report.inconclusive.push(format!(
                    "no {} of {} and {}",
                    if side == Side::Right { "pullback" } else { "pushout" },
                    c.morphism_name(p),
                    c.morphism_name(f)
                )),
                Some(w) => {
                    let changed = w.legs[0];
                    if !m.is_weak_equivalence(changed) {
                        report.failures.push(ProperFailure {
                            along: c.morphism_name(p).to_string(),
                            weak_equivalence: c.morphism_name(f).to_string(),
                            result: c.morphism_name(changed).to_string(),
                        });
                    }
                }
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushoutProductFailure {
    pub i: String,
    pub j: String,
    pub result: String,
    pub expected: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushoutProductReport {
    pub instances: usize,
    pub failures: Vec<PushoutProductFailure>,
    pub inconclusive: Vec<String>,
}

impl PushoutProductReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.inconclusive.is_empty()
    }
}

/// For cofibrations `i`, `j`: `i□j` is a cofibration, trivial when `i` or `j` is.
pub fn check_pushout_product_axiom(m: &ModelStructure) -> PushoutProductReport {
    let c = &*m.base;
    let mut report = PushoutProductReport {
        instances: 0,
        failures: vec![],
        inconclusive: vec![],
    };
    for i in m.cofibrations.iter() {
        for j in m.cofibrations.iter() {
            report.instances += 1;
            match pushout_product(&m.products, i, j).expect("morphisms of the base") {
                PushoutProduct::Inconclusive { missing } => report.inconclusive.push(format!(
                    "{}□{}: missing {missing}",
                    c.morphism_name(i),
                    c.morphism_name(j)
                )),
                PushoutProduct::Found(w) => {
                    let k = w.induced;
                    let trivial = m.is_weak_equivalence(i) || m.is_weak_equivalence(j);
                    let expected = if !m.is_cofibration(k) {
                        Some("cofibration")
                    } else if trivial && !m.is_weak_equivalence(k) {
                        Some("trivial cofibration")
                    } else {
                        None
                    };
                    if let Some(expected) = expected {
                        report.failures.push(PushoutProductFailure {
                            i: c.morphism_name(i).to_string(),
                            j: c.morphism_name(j).to_string(),
                            result: c.morphism_name(k).to_string(),
                            expected,
                        });
                    }
                }
            }
        }
    }
    report
}

/// Componentwise model structure on the product of the bases: a tuple is in a
/// class iff every component is.
pub fn product_model(factors: &[&ModelStructure]) -> Result<ModelStructure> {
    let cats: Vec<&FinCat> = factors.iter().map(|m| m.base.as_ref()).collect();
    let base = Arc::new(product_of(&cats)?);
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let radix: Vec<usize> = cats.iter().map(|c| c.morphism_count()).collect();
    let mut classes = vec![Vec::new(), Vec::new(), Vec::new()];
    for f in base.morphisms() {
        let mut idx = f.index();
        let mut comps = vec![Mor(0); radix.len()];
        for k in (0..radix.len()).rev() {
            comps[k] = Mor((idx % radix[k]) as u32);
            idx /= radix[k];
        }
        for (slot, kind) in ClassKind::ALL.into_iter().enumerate() {
            if comps.iter().zip(factors).all(|(&g, m)| m.in_class(kind, g)) {
                classes[slot].push(f);
            }
        }
    }
    let w = classes.pop().unwrap();
    let fib = classes.pop().unwrap();
    let cof = classes.pop().unwrap();
    ModelStructure::new(base, cof, fib, w)
}
