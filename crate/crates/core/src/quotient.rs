//! Filter quotient categories.
//!
//! A morphism `X → Y` of `C_Φ` is a class of morphisms `X×U → Y`, `U ∈ Φ`,
//! where two representatives are identified when they agree after
//! restriction to some common lower bound in `Φ`. The classes are computed
//! directly from that relation by [`build_quotient`]; [`collapse_oracle`]
//! builds the category `C_{W0}` with `Hom(X, Y) = Hom(X×W0, Y×W0)` at the
//! minimum `W0` of `Φ` by an independent route.
//!
//! Every class is stored with its restriction to `W0` (a morphism
//! `X×W0 → Y`) and its normal form `⟨restriction, π2⟩: X×W0 → Y×W0`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::category::{identity_name, is_iso, is_mono, FinCat, MorphismInfo, Mor, Obj};
use crate::error::{Error, Inconclusive, Result};
use crate::filter::{is_model_filter, Filter, SubterminalPreorder};
use crate::functor::FunctorData;
use crate::model::{
    verify_model_structure, ClassKind, ModelStructure, MorphismSet,
};
use crate::universal::{
    exponential, find_initial, find_terminal, pushout_product, search_limit, verify_exponential,
    verify_limit, verify_pushout_product, Diagram, Exponential, LimitWitness, ProductCone,
    Products, PushoutProduct, View,
};

/// One morphism of a filter quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMorphism {
    pub dom: Obj,
    pub cod: Obj,
    /// `X×W0 → Y`.
    pub restriction: Mor,
    /// `X×W0 → Y×W0`.
    pub normal_form: Mor,
    /// Every representative `(U, f: X×U → Y)` of the class.
    pub members: Vec<(Obj, Mor)>,
}

/// A filter quotient `C_Φ` together with its projection `P_Φ: C → C_Φ`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub base: Arc<FinCat>,
    pub category: Arc<FinCat>,
    pub projection: FunctorData,
    /// Members of `Φ`, in filter order.
    pub filter: Vec<Obj>,
    pub w0: Obj,
    pub top: Obj,
    pub morphisms: Vec<QuotientMorphism>,
    products: Arc<Products>,
    inclusions: HashMap<(Obj, Obj), Mor>,
    by_restriction: HashMap<(Obj, Mor), Mor>,
}

impl Quotient {
    pub fn products(&self) -> &Arc<Products> {
        &self.products
    }

    /// The unique morphism `W → U` between members with `W ≤ U`.
    pub fn inclusion(&self, w: Obj, u: Obj) -> Option<Mor> {
        self.inclusions.get(&(w, u)).copied()
    }

    /// `f ∘ (X×ι): X×W → Y` for a representative `f: X×U → Y` and `W ≤ U`.
    pub fn restrict(&self, x: Obj, u: Obj, f: Mor, w: Obj) -> Result<Mor> {
        let iota = self.inclusion(w, u).ok_or_else(|| {
            Error::Structural(format!(
                "{} is not below {} in the filter",
                self.base.object_name(w),
                self.base.object_name(u)
            ))
        })?;
        let x_iota = self.products.times(self.base.identity(x), iota)?;
        Ok(self.base.comp(f, x_iota))
    }

    /// The class of the representative `(U, f: X×U → Y)`.
    pub fn class_of(&self, x: Obj, u: Obj, f: Mor) -> Result<Mor> {
        let r = self.restrict(x, u, f, self.w0)?;
        self.by_restriction.get(&(x, r)).copied().ok_or_else(|| {
            Error::Structural(format!(
                "{} is not a representative over {}",
                self.base.morphism_name(f),
                self.base.object_name(x)
            ))
        })
    }

    /// The class `X → Y` whose normal form is `n: X×W0 → Y×W0`.
    pub fn class_of_normal_form(&self, x: Obj, y: Obj, n: Mor) -> Result<Mor> {
        let yw0 = self.products.require(y, self.w0)?;
        if self.base.cod(n) != yw0.apex {
            return Err(Error::Structural("normal form has the wrong codomain".into()));
        }
        self.class_of(x, self.w0, self.base.comp(yw0.p1, n))
    }

    /// `P_Φ(π1): X×U → X`, an isomorphism of the quotient.
    pub fn theta(&self, x: Obj, u: Obj) -> Result<Mor> {
        Ok(self.projection.mor(self.products.require(x, u)?.p1))
    }
}

/// Builds the filter quotient along a filter of the subterminal preorder.
pub fn build_quotient(products: &Arc<Products>, s: &SubterminalPreorder, phi: &Filter) -> Result<Quotient> {
    build_quotient_on(products, &phi.objects(s))
}

/// Builds the filter quotient along an explicit list of subterminal objects
/// forming a filter under "there is a morphism".
pub fn build_quotient_on(products: &Arc<Products>, filter: &[Obj]) -> Result<Quotient> {
    let c = products.category().clone();
    let top = find_terminal(&c).ok_or_else(|| Error::Missing("terminal object".into()))?;
    if filter.is_empty() {
        return Err(Error::Rejected("filter is empty".into()));
    }
    for &u in filter {
        c.check_object(u)?;
        if !is_mono(&c, c.hom(u, top)[0])? {
            return Err(Error::Rejected(format!(
                "{} is not subterminal",
                c.object_name(u)
            )));
        }
    }
    let mut inclusions = HashMap::new();
    for &w in filter {
        for &u in filter {
            if let Some(&i) = c.hom(w, u).first() {
                inclusions.insert((w, u), i);
            }
        }
    }
    let leq = |w: Obj, u: Obj| inclusions.contains_key(&(w, u));
    let w0 = *filter
        .iter()
        .find(|&&z| filter.iter().all(|&u| leq(z, u)))
        .ok_or_else(|| Error::Rejected("filter has no minimum".into()))?;
    if !filter.contains(&top) {
        return Err(Error::Rejected("filter does not contain the terminal object".into()));
    }
    for x in c.objects() {
        for &u in filter {
            products.require(x, u)?;
        }
    }
    let x_iota = |x: Obj, w: Obj, u: Obj| -> Mor {
        products
            .times(c.identity(x), inclusions[&(w, u)])
            .expect("products checked above")
    };

    // classes of representatives, by the defining relation
    let equivalent = |x: Obj, (u, f): (Obj, Mor), (v, g): (Obj, Mor)| -> bool {
        filter.iter().any(|&w| {
            leq(w, u) && leq(w, v) && c.comp(f, x_iota(x, w, u)) == c.comp(g, x_iota(x, w, v))
        })
    };
    let mut raw: Vec<QuotientMorphism> = Vec::new();
    for x in c.objects() {
        for y in c.objects() {
            let mut classes: Vec<Vec<(Obj, Mor)>> = Vec::new();
            for &u in filter {
                let xu = products.get(x, u).unwrap().apex;
                for &f in c.hom(xu, y) {
                    match classes.iter_mut().find(|cl| equivalent(x, cl[0], (u, f))) {
                        Some(cl) => cl.push((u, f)),
                        None => classes.push(vec![(u, f)]),
                    }
                }
            }
            let xw0 = *products.get(x, w0).unwrap();
            let yw0 = *products.get(y, w0).unwrap();
            for members in classes {
                let (u, f) = members[0];
                let restriction = c.comp(f, x_iota(x, w0, u));
                let normal_form = yw0
                    .pair(&c, restriction, xw0.p2)
                    .expect("product is universal");
                raw.push(QuotientMorphism {
                    dom: x,
                    cod: y,
                    restriction,
                    normal_form,
                    members,
                });
            }
        }
    }
    let mut raw_key: HashMap<(Obj, Mor), usize> = HashMap::new();
    for (k, q) in raw.iter().enumerate() {
        if raw_key.insert((q.dom, q.restriction), k).is_some() {
            return Err(Error::Structural(
                "two classes share a restriction to the filter minimum".into(),
            ));
        }
    }
    let raw_class = |x: Obj, u: Obj, f: Mor| -> usize {
        raw_key[&(x, c.comp(f, x_iota(x, w0, u)))]
    };

    // projection of base morphisms: [(1, f∘π1)]
    let project_raw: Vec<usize> = c
        .morphisms()
        .map(|f| {
            let x1 = products.get(c.dom(f), top).unwrap();
            raw_class(c.dom(f), top, c.comp(f, x1.p1))
        })
        .collect();
    let identity_raw: Vec<usize> = c.objects().map(|x| project_raw[c.identity(x).index()]).collect();

    // order: identities, then classes by first preimage, then the rest
    let mut order: Vec<usize> = identity_raw.clone();
    let mut placed = vec![false; raw.len()];
    for &k in &order {
        placed[k] = true;
    }
    let mut preimage_name: Vec<Option<Mor>> = vec![None; raw.len()];
    for f in c.morphisms() {
        let k = project_raw[f.index()];
        if !c.is_identity(f) && preimage_name[k].is_none() {
            preimage_name[k] = Some(f);
        }
        if !placed[k] {
            placed[k] = true;
            order.push(k);
        }
    }
    for k in 0..raw.len() {
        if !placed[k] {
            placed[k] = true;
            order.push(k);
        }
    }
    let mut position = vec![0usize; raw.len()];
    for (i, &k) in order.iter().enumerate() {
        position[k] = i;
    }

    let mut used: HashSet<String> = HashSet::new();
    let mut infos = Vec::with_capacity(raw.len());
    for (i, &k) in order.iter().enumerate() {
        let q = &raw[k];
        let mut name = if i < c.object_count() {
            identity_name(c.object_name(q.dom))
        } else if let Some(f) = preimage_name[k] {
            c.morphism_name(f).to_string()
        } else {
            let (u, f) = q.members[0];
            format!("{}@{}", c.morphism_name(f), c.object_name(u))
        };
        while used.contains(&name) {
            name.push('\'');
        }
        used.insert(name.clone());
        infos.push(MorphismInfo {
            name,
            dom: q.dom,
            cod: q.cod,
        });
    }
    let morphisms: Vec<QuotientMorphism> = order.iter().map(|&k| raw[k].clone()).collect();

    // composition through the first common lower bound of the representatives' levels
    let compose = |g: Mor, f: Mor| -> Result<Mor> {
        let (qf, qg) = (&morphisms[f.index()], &morphisms[g.index()]);
        let (x, y) = (qf.dom, qf.cod);
        let (u, fr) = qf.members[0];
        let (v, gr) = qg.members[0];
        let w = *filter
            .iter()
            .find(|&&w| leq(w, u) && leq(w, v))
            .expect("w0 is below every member");
        let xw = products.get(x, w).unwrap();
        let yw = products.get(y, w).unwrap();
        let f_w = c.comp(fr, x_iota(x, w, u));
        let lifted = yw.pair(&c, f_w, xw.p2).expect("product is universal");
        let h = c.comp(gr, c.comp(x_iota(y, w, v), lifted));
        let k = raw_class(x, w, h);
        Ok(Mor(position[k] as u32))
    };
    let objects: Vec<String> = c.objects().map(|x| c.object_name(x).to_string()).collect();
    let identities: Vec<Mor> = (0..c.object_count()).map(|i| Mor(i as u32)).collect();
    let category = Arc::new(FinCat::from_parts(objects, infos, identities, compose)?);

    let projection = FunctorData::new(
        c.clone(),
        category.clone(),
        c.objects().collect(),
        project_raw.iter().map(|&k| Mor(position[k] as u32)).collect(),
    )?;
    let by_restriction = morphisms
        .iter()
        .enumerate()
        .map(|(i, q)| ((q.dom, q.restriction), Mor(i as u32)))
        .collect();
    Ok(Quotient {
        base: c,
        category,
        projection,
        filter: filter.to_vec(),
        w0,
        top,
        morphisms,
        products: products.clone(),
        inclusions,
        by_restriction,
    })
}

/// The category `C_{W0}`: same objects, `Hom(X, Y) = Hom_C(X×W0, Y×W0)`,
/// composition and identities from `C`.
pub fn collapse_oracle(products: &Products, w0: Obj) -> Result<FinCat> {
    collapse_oracle_indexed(products, w0).map(|(c, _)| c)
}

/// [`collapse_oracle`] together with the lookup `(X, Y, m) ↦ morphism`.
pub fn collapse_oracle_indexed(products: &Products, w0: Obj) -> Result<(FinCat, HashMap<(Obj, Obj, Mor), Mor>)> {
    let c = products.category();
    let mut apex = Vec::with_capacity(c.object_count());
    for x in c.objects() {
        apex.push(products.require(x, w0)?.apex);
    }
    let mut infos = Vec::new();
    let mut underlying = Vec::new();
    let mut index: HashMap<(Obj, Obj, Mor), Mor> = HashMap::new();
    let mut identities = vec![Mor(0); c.object_count()];
    for x in c.objects() {
        for y in c.objects() {
            for &m in c.hom(apex[x.index()], apex[y.index()]) {
                let id = Mor(infos.len() as u32);
                let name = if x == y && m == c.identity(apex[x.index()]) {
                    identities[x.index()] = id;
                    identity_name(c.object_name(x))
                } else {
                    format!("{}:{}>{}", c.morphism_name(m), c.object_name(x), c.object_name(y))
                };
                infos.push(MorphismInfo { name, dom: x, cod: y });
                underlying.push(m);
                index.insert((x, y, m), id);
            }
        }
    }
    let objects = c.objects().map(|x| c.object_name(x).to_string()).collect();
    let doms: Vec<Obj> = infos.iter().map(|i| i.dom).collect();
    let cods: Vec<Obj> = infos.iter().map(|i| i.cod).collect();
    let cat = FinCat::from_parts(objects, infos, identities, |g, f| {
        let m = c.comp(underlying[g.index()], underlying[f.index()]);
        Ok(index[&(doms[f.index()], cods[g.index()], m)])
    })?;
    Ok((cat, index))
}

/// The canonical comparison `C_Φ → C_{W0}` sending a class to its normal form.
pub fn normal_form_functor(q: &Quotient) -> Result<FunctorData> {
    let (oracle, index) = collapse_oracle_indexed(&q.products, q.w0)?;
    let morphism_map = q
        .morphisms
        .iter()
        .map(|qm| index[&(qm.dom, qm.cod, qm.normal_form)])
        .collect();
    FunctorData::new(
        q.category.clone(),
        Arc::new(oracle),
        q.category.objects().collect(),
        morphism_map,
    )
}

/// Whether the class lists of `S_Φ` are to be computed for a non-model filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterCheck {
    Require,
    Override,
}

/// A class where the normal-form test and the existential test disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassDisagreement {
    pub class: ClassKind,
    pub morphism: String,
    pub normal_form: bool,
    pub existential: bool,
}

#[derive(Clone, Debug)]
pub struct InducedClasses {
    pub cofibrations: MorphismSet,
    pub fibrations: MorphismSet,
    pub weak_equivalences: MorphismSet,
    /// Empty whenever the filter is a model filter; otherwise the classes
    /// may be ill-defined and every disagreement is listed.
    pub disagreements: Vec<ClassDisagreement>,
}

impl InducedClasses {
    pub fn class(&self, kind: ClassKind) -> &MorphismSet {
        match kind {
            ClassKind::Cofibration => &self.cofibrations,
            ClassKind::Fibration => &self.fibrations,
            ClassKind::WeakEquivalence => &self.weak_equivalences,
        }
    }

    pub fn well_defined(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Membership through the normal form at `W0`.
pub fn in_induced_class_fast(m: &ModelStructure, q: &Quotient, kind: ClassKind, f: Mor) -> bool {
    m.in_class(kind, q.morphisms[f.index()].normal_form)
}

/// Membership by the definition: some representative `f: X×U → Y` has
/// `⟨f, π2⟩: X×U → Y×U` in the class.
pub fn in_induced_class_slow(m: &ModelStructure, q: &Quotient, kind: ClassKind, f: Mor) -> bool {
    let c = &*q.base;
    let qm = &q.morphisms[f.index()];
    qm.members.iter().any(|&(u, rep)| {
        let xu = q.products.get(qm.dom, u).unwrap();
        let yu = q.products.get(qm.cod, u).unwrap();
        let lifted = yu.pair(c, rep, xu.p2).expect("product is universal");
        m.in_class(kind, lifted)
    })
}

pub fn induced_classes(
    m: &ModelStructure,
    s: &SubterminalPreorder,
    phi: &Filter,
    q: &Quotient,
    check: FilterCheck,
) -> Result<InducedClasses> {
    if check == FilterCheck::Require {
        let report = is_model_filter(m, s, phi);
        if !report.holds() {
            return Err(Error::Rejected(
                "not a model filter; induced classes need the override".into(),
            ));
        }
    }
    Ok(induced_classes_unchecked(m, q))
}

pub fn induced_classes_unchecked(m: &ModelStructure, q: &Quotient) -> InducedClasses {
    let n = q.category.morphism_count();
    let mut sets = [
        MorphismSet::empty(n),
        MorphismSet::empty(n),
        MorphismSet::empty(n),
    ];
    let mut disagreements = Vec::new();
    for f in q.category.morphisms() {
        for (slot, kind) in ClassKind::ALL.into_iter().enumerate() {
            let fast = in_induced_class_fast(m, q, kind, f);
            let slow = in_induced_class_slow(m, q, kind, f);
            if fast {
                sets[slot].insert(f);
            }
            if fast != slow {
                disagreements.push(ClassDisagreement {
                    class: kind,
                    morphism: q.category.morphism_name(f).to_string(),
                    normal_form: fast,
                    existential: slow,
                });
            }
        }
    }
    let [cofibrations, fibrations, weak_equivalences] = sets;
    InducedClasses {
        cofibrations,
        fibrations,
        weak_equivalences,
        disagreements,
    }
}

/// How the axioms of the quotient structure were obtained from the base, one
/// construction per axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProofCertificate {
    /// Squares whose filler was built at level `W0` in the base and projected.
    pub lifts_constructed: usize,
    pub lift_failures: Vec<String>,
    /// Factorizations of a `W0` representative in the base, transported
    /// along `P_Φ(π1): X×W0 → X`.
    pub factorizations_constructed: usize,
    pub factorization_failures: Vec<String>,
    /// Composable pairs on which taking normal forms commutes with
    /// composition; retracts and 2-of-3 are decided at level `W0` through it.
    pub normal_form_pairs: usize,
    pub normal_form_failures: Vec<String>,
}

impl ProofCertificate {
    pub fn holds(&self) -> bool {
        self.lift_failures.is_empty()
            && self.factorization_failures.is_empty()
            && self.normal_form_failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct QuotientModel {
    pub quotient: Quotient,
    pub model: ModelStructure,
    pub certificate: ProofCertificate,
}

/// The model structure `(C_Φ, F_Φ, W_Φ)` on the quotient along a model filter.
pub fn build_quotient_model(m: &ModelStructure, s: &SubterminalPreorder, phi: &Filter) -> Result<QuotientModel> {
    let (q, model) = quotient_model_uncertified(m, s, phi)?;
    let certificate = certify(m, &q, &model);
    Ok(QuotientModel {
        quotient: q,
        model,
        certificate,
    })
}

/// [`build_quotient_model`] without the proof certificate.
pub fn quotient_model_uncertified(
    m: &ModelStructure,
    s: &SubterminalPreorder,
    phi: &Filter,
) -> Result<(Quotient, ModelStructure)> {
    let report = is_model_filter(m, s, phi);
    if !report.holds() {
        return Err(Error::Rejected(model_filter_reason(&report)));
    }
    let q = build_quotient(m.products(), s, phi)?;
    let classes = induced_classes_unchecked(m, &q);
    if !classes.well_defined() {
        return Err(Error::Structural(
            "induced classes depend on the representative".into(),
        ));
    }
    let model = ModelStructure::from_sets(
        q.category.clone(),
        classes.cofibrations,
        classes.fibrations,
        classes.weak_equivalences,
    )?;
    Ok((q, model))
}

pub fn model_filter_reason(r: &crate::filter::ModelFilterReport) -> String {
    if let Some(f) = r.cofibrations.failures.first() {
        return format!(
            "cofibrations are not product stable: {} × {} = {} is not a cofibration",
            f.morphism, f.object, f.product
        );
    }
    if let Some(f) = r.weak_equivalences.failures.first() {
        return format!(
            "weak equivalences are not product stable: {} × {} = {} is not a weak equivalence",
            f.morphism, f.object, f.product
        );
    }
    if let Some(u) = r.not_discrete.first() {
        return format!("{u} is not discrete homotopically subterminal");
    }
    let missing = r
        .cofibrations
        .inconclusive
        .iter()
        .chain(&r.weak_equivalences.inconclusive)
        .next()
        .cloned()
        .unwrap_or_default();
    format!("product stability undecided: {missing}")
}

fn certify(m: &ModelStructure, q: &Quotient, qm: &ModelStructure) -> ProofCertificate {
    let c = &*q.base;
    let d = &*q.category;
    let nf = |f: Mor| q.morphisms[f.index()].normal_form;
    let mut cert = ProofCertificate::default();

    // lifting at level W0
    for i in qm.class(ClassKind::Cofibration).iter() {
        for p in qm.class(ClassKind::Fibration).iter() {
            if !qm.is_weak_equivalence(i) && !qm.is_weak_equivalence(p) {
                continue;
            }
            let (a, b, x, y) = (d.dom(i), d.cod(i), d.dom(p), d.cod(p));
            for &u in d.hom(a, x) {
                for &v in d.hom(b, y) {
                    if d.comp(p, u) != d.comp(v, i) {
                        continue;
                    }
                    let (ni, np, nu, nv) = (nf(i), nf(p), nf(u), nf(v));
                    let filler = c
                        .hom(c.cod(ni), c.dom(np))
                        .iter()
                        .copied()
                        .find(|&h| c.comp(h, ni) == nu && c.comp(np, h) == nv);
                    let lifted = filler.and_then(|h| q.class_of_normal_form(b, x, h).ok());
                    match lifted {
                        Some(h) if d.comp(h, i) == u && d.comp(p, h) == v => cert.lifts_constructed += 1,
                        _ => cert.lift_failures.push(format!(
                            "{} / {} with top {} and bottom {}",
                            d.morphism_name(i),
                            d.morphism_name(p),
                            d.morphism_name(u),
                            d.morphism_name(v)
                        )),
                    }
                }
            }
        }
    }

    // factorization of the W0 representative, transported along θ
    for f in d.morphisms() {
        let rep = &q.morphisms[f.index()];
        let g = rep.restriction;
        let (src, tgt) = (c.dom(g), c.cod(g));
        let Ok(theta) = q.theta(rep.dom, q.w0) else {
            cert.factorization_failures.push(d.morphism_name(f).to_string());
            continue;
        };
        let theta_inv = is_iso(d, theta).ok().flatten();
        for (first, second) in [
            (
                (|m: &ModelStructure, h: Mor| m.is_cofibration(h)) as fn(&ModelStructure, Mor) -> bool,
                (|m: &ModelStructure, h: Mor| m.is_trivial_fibration(h)) as fn(&ModelStructure, Mor) -> bool,
            ),
            (
                |m: &ModelStructure, h: Mor| m.is_trivial_cofibration(h),
                |m: &ModelStructure, h: Mor| m.is_fibration(h),
            ),
        ] {
            let found = c.objects().find_map(|z| {
                c.hom(src, z).iter().find_map(|&i| {
                    if !first(m, i) {
                        return None;
                    }
                    c.hom(z, tgt)
                        .iter()
                        .find(|&&p| second(m, p) && c.comp(p, i) == g)
                        .map(|&p| (i, p))
                })
            });
            let ok = match (found, theta_inv) {
                (Some((i, p)), Some(t_inv)) => {
                    let i_q = d.comp(q.projection.mor(i), t_inv);
                    let p_q = q.projection.mor(p);
                    d.comp(p_q, i_q) == f && first(qm, i_q) && second(qm, p_q)
                }
                _ => false,
            };
            if ok {
                cert.factorizations_constructed += 1;
            } else {
                cert.factorization_failures.push(d.morphism_name(f).to_string());
            }
        }
    }

    // normal forms respect composition
    for f in d.morphisms() {
        for &g in d.outgoing(d.cod(f)) {
            cert.normal_form_pairs += 1;
            if nf(d.comp(g, f)) != c.comp(nf(g), nf(f)) {
                cert.normal_form_failures.push(format!(
                    "({},{})",
                    d.morphism_name(g),
                    d.morphism_name(f)
                ));
            }
        }
    }
    cert
}

/// One re-verified image of a base witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreservationFailure {
    pub construction: String,
    pub instance: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub checked: usize,
    pub failures: Vec<PreservationFailure>,
    pub inconclusive: Vec<String>,
}

impl PreservationReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.inconclusive.is_empty()
    }

    fn record(&mut self, ok: bool, construction: &str, instance: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(PreservationFailure {
                construction: construction.to_string(),
                instance: instance(),
            });
        }
    }
}

/// The image of a witness under a functor.
pub fn map_witness(f: &FunctorData, w: &LimitWitness) -> LimitWitness {
    LimitWitness {
        apex: f.obj(w.apex),
        legs: w.legs.iter().map(|&l| f.mor(l)).collect(),
        diagram: Diagram {
            vertices: w.diagram.vertices.iter().map(|&x| f.obj(x)).collect(),
            arrows: w.diagram.arrows.iter().map(|&(s, t, m)| (s, t, f.mor(m))).collect(),
        },
        colimit: w.colimit,
    }
}

fn map_cone(f: &FunctorData, p: &ProductCone) -> ProductCone {
    ProductCone {
        left: f.obj(p.left),
        right: f.obj(p.right),
        apex: f.obj(p.apex),
        p1: f.mor(p.p1),
        p2: f.mor(p.p2),
    }
}

/// Every finite (co)limit, exponential and pushout-product witness of the
/// base, pushed along `P_Φ`, is re-verified in the quotient; so is class
/// preservation when a quotient model is supplied.
pub fn verify_projection_preservation(
    m: &ModelStructure,
    q: &Quotient,
    qm: Option<&ModelStructure>,
) -> PreservationReport {
    let c = &*q.base;
    let d = &*q.category;
    let p = &q.projection;
    let mut r = PreservationReport::default();
    let name = |f: Mor| c.morphism_name(f).to_string();
    let oname = |x: Obj| c.object_name(x).to_string();

    let shapes = limit_diagrams(c);
    for (construction, view, diagram, label) in &shapes {
        let Some(w) = search_limit(View { cat: c, dual: *view }, diagram) else {
            continue;
        };
        let image = map_witness(p, &w);
        r.record(verify_limit(d, &image), construction, || label.clone());
    }

    let qproducts = Products::new(q.category.clone());
    for k in c.objects() {
        for y in c.objects() {
            match exponential(q.products(), k, y) {
                Exponential::Found(w) => {
                    let mut image = w.clone();
                    image.object = p.obj(w.object);
                    image.product = map_cone(p, &w.product);
                    image.evaluation = p.mor(w.evaluation);
                    r.record(verify_exponential(&qproducts, &image), "exponential", || {
                        format!("{}^{}", oname(y), oname(k))
                    });
                }
                Exponential::Absent => {}
                Exponential::Inconclusive { missing } => r
                    .inconclusive
                    .push(format!("exponential {}^{}: missing {missing}", oname(y), oname(k))),
            }
        }
    }

    for i in c.morphisms() {
        for j in c.morphisms() {
            match pushout_product(q.products(), i, j) {
                Ok(PushoutProduct::Found(w)) => {
                    let mut image = (*w).clone();
                    image.i = p.mor(w.i);
                    image.j = p.mor(w.j);
                    image.ac = map_cone(p, &w.ac);
                    image.ad = map_cone(p, &w.ad);
                    image.bc = map_cone(p, &w.bc);
                    image.bd = map_cone(p, &w.bd);
                    image.corner = map_witness(p, &w.corner);
                    image.induced = p.mor(w.induced);
                    r.record(verify_pushout_product(d, &image), "pushout-product", || {
                        format!("{}□{}", name(i), name(j))
                    });
                }
                Ok(PushoutProduct::Inconclusive { missing }) => r
                    .inconclusive
                    .push(format!("pushout product {}□{}: missing {missing}", name(i), name(j))),
                Err(e) => r.inconclusive.push(e.to_string()),
            }
        }
    }

    if let Some(qm) = qm {
        for kind in ClassKind::ALL {
            for f in m.class(kind).iter() {
                r.record(qm.in_class(kind, p.mor(f)), kind.plural(), || name(f));
            }
        }
    }
    r
}

/// Every terminal/initial, binary (co)product, pullback/pushout and
/// (co)equalizer diagram of a category, with a label. The flag selects colimits.
pub fn limit_diagrams(c: &FinCat) -> Vec<(String, bool, Diagram, String)> {
    let name = |f: Mor| c.morphism_name(f).to_string();
    let oname = |x: Obj| c.object_name(x).to_string();
    let mut out = vec![
        ("terminal".to_string(), false, Diagram::empty(), "1".to_string()),
        ("initial".to_string(), true, Diagram::empty(), "0".to_string()),
    ];
    for x in c.objects() {
        for y in c.objects() {
            let label = format!("{}, {}", oname(x), oname(y));
            out.push(("product".into(), false, Diagram::pair(x, y), label.clone()));
            out.push(("coproduct".into(), true, Diagram::pair(x, y), label));
        }
    }
    for f in c.morphisms() {
        for g in c.morphisms() {
            let label = format!("{}, {}", name(f), name(g));
            if c.cod(f) == c.cod(g) {
                out.push(("pullback".into(), false, Diagram::cospan(c, f, g), label.clone()));
            }
            if c.dom(f) == c.dom(g) {
                out.push(("pushout".into(), true, Diagram::span(c, f, g), label.clone()));
            }
            if f < g && c.dom(f) == c.dom(g) && c.cod(f) == c.cod(g) {
                out.push(("equalizer".into(), false, Diagram::parallel(c, f, g), label.clone()));
                out.push(("coequalizer".into(), true, Diagram::parallel(c, f, g), label));
            }
        }
    }
    out
}

/// The side condition of left properness for a member `U`: `U × −` sends
/// every pushout square of the base to a pushout square.
pub fn product_preserves_pushouts(products: &Products, u: Obj) -> Result<bool, Inconclusive> {
    let c = &**products.category();
    let times = |f: Mor| {
        products
            .times_object(f, u)
            .map_err(|e| Inconclusive(e.to_string()))
    };
    for f in c.morphisms() {
        for g in c.morphisms() {
            if c.dom(f) != c.dom(g) {
                continue;
            }
            let Some(w) = search_limit(View::op(c), &Diagram::span(c, f, g)) else {
                continue;
            };
            let obj = |x: Obj| products.require(x, u).map(|p| p.apex).map_err(|e| Inconclusive(e.to_string()));
            let image = LimitWitness {
                apex: obj(w.apex)?,
                legs: w.legs.iter().map(|&l| times(l)).collect::<Result<_, _>>()?,
                diagram: Diagram {
                    vertices: w.diagram.vertices.iter().map(|&x| obj(x)).collect::<Result<_, _>>()?,
                    arrows: w
                        .diagram
                        .arrows
                        .iter()
                        .map(|&(s, t, m)| times(m).map(|m| (s, t, m)))
                        .collect::<Result<_, _>>()?,
                },
                colimit: true,
            };
            if !verify_limit(c, &image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A quotient model plus the outcome of re-running the axiom check on it.
pub fn verify_quotient_model(qm: &QuotientModel) -> crate::model::ModelReport {
    verify_model_structure(&qm.model)
}

/// Whether the base is pointed (its initial and terminal objects are
/// isomorphic).
pub fn is_pointed(c: &FinCat) -> bool {
    match (find_initial(c), find_terminal(c)) {
        (Some(i), Some(t)) => !c.hom(t, i).is_empty(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_category;
    use crate::filter::build_subfib;
    use crate::functor::validate_functor;
    use crate::iso::{categories_isomorphic, DEFAULT_ISO_BUDGET};

    fn p2() -> Arc<FinCat> {
        Arc::new(FinCat::from_preorder(&["0", "1"], |i, j| i <= j).unwrap())
    }

    fn setup(c: Arc<FinCat>, members: &[usize]) -> (ModelStructure, SubterminalPreorder, Filter) {
        let m = ModelStructure::trivial(c);
        let s = build_subfib(&m).unwrap();
        let phi = Filter::new(&m.base, &s, members).unwrap();
        (m, s, phi)
    }

    #[test]
    fn principal_at_top_is_the_base() {
        let (m, s, phi) = setup(p2(), &[1]);
        let q = build_quotient(m.products(), &s, &phi).unwrap();
        assert_eq!(*q.category, *m.base);
        assert_eq!(q.projection.morphism_map, m.base.morphisms().collect::<Vec<_>>());
    }

    #[test]
    fn whole_p2_collapses_to_codiscrete() {
        let (m, s, phi) = setup(p2(), &[0, 1]);
        let q = build_quotient(m.products(), &s, &phi).unwrap();
        assert!(validate_category(&q.category).is_empty());
        assert_eq!(q.category.morphism_count(), 4);
        for x in q.category.objects() {
            for y in q.category.objects() {
                assert_eq!(q.category.hom(x, y).len(), 1);
            }
        }
        assert!(validate_functor(&q.projection).unwrap().is_empty());
        let codiscrete = Arc::new(FinCat::from_preorder(&["X", "Y"], |_, _| true).unwrap());
        assert!(categories_isomorphic(&q.category, &codiscrete, DEFAULT_ISO_BUDGET)
            .unwrap()
            .is_isomorphic());
    }

    #[test]
    fn oracle_matches_direct_construction() {
        let (m, s, phi) = setup(p2(), &[0, 1]);
        let q = build_quotient(m.products(), &s, &phi).unwrap();
        let oracle = Arc::new(collapse_oracle(m.products(), q.w0).unwrap());
        assert!(validate_category(&oracle).is_empty());
        let nf = normal_form_functor(&q).unwrap();
        assert!(validate_functor(&nf).unwrap().is_empty());
        assert!(categories_isomorphic(&q.category, &oracle, DEFAULT_ISO_BUDGET)
            .unwrap()
            .is_isomorphic());
    }

    #[test]
    fn quotient_model_of_p2() {
        for members in [&[1][..], &[0, 1][..]] {
            let (m, s, phi) = setup(p2(), members);
            let qm = build_quotient_model(&m, &s, &phi).unwrap();
            assert!(verify_model_structure(&qm.model).holds());
            assert!(qm.certificate.holds(), "{:?}", qm.certificate);
            let r = verify_projection_preservation(&m, &qm.quotient, Some(&qm.model));
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn everything_is_trivial_at_the_bottom() {
        let (m, s, phi) = setup(p2(), &[0, 1]);
        let q = build_quotient(m.products(), &s, &phi).unwrap();
        let classes = induced_classes(&m, &s, &phi, &q, FilterCheck::Require).unwrap();
        assert!(classes.well_defined());
        for kind in ClassKind::ALL {
            assert_eq!(classes.class(kind).len(), q.category.morphism_count());
        }
    }

    #[test]
    fn pushouts_are_preserved_by_products_in_p2() {
        let p = p2();
        let products = Products::new(p.clone());
        assert!(product_preserves_pushouts(&products, Obj(0)).unwrap());
        assert!(product_preserves_pushouts(&products, Obj(1)).unwrap());
    }
}
