//! Filter products over finite index sets, induced functors and adjunctions
//! on filter quotients, and the transfer of Quillen adjunctions.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{find_iso, FinCat, Mor, Obj, PowerCategory};
use crate::error::{Error, Result};
use crate::filter::{
    build_subfib, embed_powerset_filter, is_model_filter, Filter, IndexFilter, ModelFilterReport,
    SubterminalPreorder,
};
use crate::functor::{validate_functor, FunctorData};
use crate::iso::{labeled_isomorphism, skeletonize, IsoOutcome};
use crate::model::{ClassKind, ModelStructure};
use crate::quotient::{
    build_quotient_model, map_witness, model_filter_reason, quotient_model_uncertified,
    limit_diagrams, Quotient, QuotientModel,
};
use crate::universal::{search_limit, verify_limit, View};

/// The power `∏_I M` with componentwise classes, its subterminal preorder and
/// the filter induced by a filter on the powerset of `I`.
#[derive(Clone, Debug)]
pub struct FilterProduct {
    pub factor: ModelStructure,
    pub power: PowerCategory,
    pub model: ModelStructure,
    pub subfib: SubterminalPreorder,
    pub index: IndexFilter,
    pub filter: Filter,
    pub model_filter: ModelFilterReport,
}

/// `∏_I M` with a tuple in a class iff every component is.
pub fn power_model(power: &PowerCategory, m: &ModelStructure) -> Result<ModelStructure> {
    if *power.factor != *m.base {
        return Err(Error::Structural("power of a different category".into()));
    }
    let c = &power.category;
    let mut classes = [Vec::new(), Vec::new(), Vec::new()];
    for f in c.morphisms() {
        let comps = power.morphism_coordinates(f);
        for (slot, kind) in ClassKind::ALL.into_iter().enumerate() {
            if comps.iter().all(|&g| m.in_class(kind, g)) {
                classes[slot].push(f);
            }
        }
    }
    let [cof, fib, weq] = classes;
    ModelStructure::new(c.clone(), cof, fib, weq)
}

pub fn build_filter_product(m: &ModelStructure, iphi: &IndexFilter) -> Result<FilterProduct> {
    let power = PowerCategory::new(m.base.clone(), iphi.len())?;
    let model = power_model(&power, m)?;
    let subfib = build_subfib(&model).map_err(|e| Error::Rejected(e.to_string()))?;
    let filter = embed_powerset_filter(&power, &model, &subfib, iphi)?;
    let model_filter = is_model_filter(&model, &subfib, &filter);
    Ok(FilterProduct {
        factor: m.clone(),
        power,
        model,
        subfib,
        index: iphi.clone(),
        filter,
        model_filter,
    })
}

/// The diagonal `M → ∏_I M`.
pub fn diagonal(power: &PowerCategory) -> Result<FunctorData> {
    let c = &power.factor;
    let object_map = c
        .objects()
        .map(|x| power.tuple(&vec![x; power.arity]))
        .collect();
    let morphism_map = c
        .morphisms()
        .map(|f| power.morphism_tuple(&vec![f; power.arity]))
        .collect();
    FunctorData::new(c.clone(), power.category.clone(), object_map, morphism_map)
}

/// The filter product `∏_Φ M` as a quotient model.
pub fn filter_product_quotient(fp: &FilterProduct) -> Result<(Quotient, ModelStructure)> {
    quotient_model_uncertified(&fp.model, &fp.subfib, &fp.filter)
}

/// `π_Φ = P_Φ ∘ Δ: M → ∏_Φ M`.
pub fn pi_phi(fp: &FilterProduct, q: &Quotient) -> Result<FunctorData> {
    diagonal(&fp.power)?.then(&q.projection)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PiPhiReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PiPhiReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `π_Φ` is a functor, preserves the three classes and sends every finite
/// (co)limit witness of `M` to one of the quotient.
pub fn pi_phi_preservation(fp: &FilterProduct, q: &Quotient, qm: &ModelStructure) -> Result<PiPhiReport> {
    let pi = pi_phi(fp, q)?;
    let m = &fp.factor;
    let c = &*m.base;
    let mut r = PiPhiReport::default();
    for v in validate_functor(&pi)? {
        r.failures.push(format!("not a functor: {v}"));
    }
    for kind in ClassKind::ALL {
        for f in m.class(kind).iter() {
            r.checked += 1;
            if !qm.in_class(kind, pi.mor(f)) {
                r.failures
                    .push(format!("{} is not sent to a {kind}", c.morphism_name(f)));
            }
        }
    }
    for (construction, dual, diagram, label) in limit_diagrams(c) {
        let Some(w) = search_limit(View { cat: c, dual }, &diagram) else {
            continue;
        };
        r.checked += 1;
        if !verify_limit(&q.category, &map_witness(&pi, &w)) {
            r.failures.push(format!("{construction} of {label} not preserved"));
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollapseOutcome {
    Isomorphic,
    NotIsomorphic,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    /// The minimum `J0` of the index filter, as a set of labels.
    pub minimum: String,
    pub quotient_objects: usize,
    pub skeleton_objects: usize,
    pub target_objects: usize,
    pub outcome: CollapseOutcome,
    pub explored: u64,
}

/// Checks `∏_Φ M ≅ ∏_{J0} M` as model structures: the skeleta of both
/// sides are isomorphic by a functor matching class membership.
pub fn principal_collapse_check(fp: &FilterProduct, q: &Quotient, qm: &ModelStructure, budget: u64) -> Result<CollapseReport> {
    let j0 = fp.index.minimum();
    let arity = j0.count_ones() as usize;
    let target_power = PowerCategory::new(fp.factor.base.clone(), arity)?;
    let target = power_model(&target_power, &fp.factor)?;

    let sq = skeletonize(&q.category)?;
    let st = skeletonize(&target.base)?;
    let lq: Vec<u32> = sq.inclusion.morphism_map.iter().map(|&f| qm.label(f)).collect();
    let lt: Vec<u32> = st.inclusion.morphism_map.iter().map(|&f| target.label(f)).collect();
    let outcome = labeled_isomorphism(&sq.category, &st.category, &lq, &lt, budget)?;
    let (outcome, explored) = match outcome {
        IsoOutcome::Isomorphic { .. } => (CollapseOutcome::Isomorphic, 0),
        IsoOutcome::NotIsomorphic => (CollapseOutcome::NotIsomorphic, 0),
        IsoOutcome::Inconclusive { explored } => (CollapseOutcome::Inconclusive, explored),
    };
    Ok(CollapseReport {
        minimum: fp.index.subset_name(j0),
        quotient_objects: q.category.object_count(),
        skeleton_objects: sq.category.object_count(),
        target_objects: st.category.object_count(),
        outcome,
        explored,
    })
}

/// An adjunction `F ⊣ G` between finite categories, with the components of
/// the unit `η_X: X → GFX` and counit `ε_Y: FGY → Y`.
#[derive(Clone, Debug)]
pub struct AdjunctionData {
    pub left: FunctorData,
    pub right: FunctorData,
    pub unit: Vec<Mor>,
    pub counit: Vec<Mor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AdjunctionViolation {
    Functor { side: &'static str, detail: String },
    Mismatch { detail: String },
    UnitType { object: String },
    CounitType { object: String },
    UnitNaturality { morphism: String },
    CounitNaturality { morphism: String },
    LeftTriangle { object: String },
    RightTriangle { object: String },
}

impl fmt::Display for AdjunctionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjunctionViolation::Functor { side, detail } => write!(f, "{side} adjoint: {detail}"),
            AdjunctionViolation::Mismatch { detail } => f.write_str(detail),
            AdjunctionViolation::UnitType { object } => write!(f, "unit at {object} is mistyped"),
            AdjunctionViolation::CounitType { object } => {
                write!(f, "counit at {object} is mistyped")
            }
            AdjunctionViolation::UnitNaturality { morphism } => {
                write!(f, "unit is not natural at {morphism}")
            }
            AdjunctionViolation::CounitNaturality { morphism } => {
                write!(f, "counit is not natural at {morphism}")
            }
            AdjunctionViolation::LeftTriangle { object } => {
                write!(f, "triangle identity εF∘Fη = id fails at {object}")
            }
            AdjunctionViolation::RightTriangle { object } => {
                write!(f, "triangle identity Gε∘ηG = id fails at {object}")
            }
        }
    }
}

/// Functoriality, naturality of unit and counit, and both triangle identities.
pub fn validate_adjunction(adj: &AdjunctionData) -> Result<Vec<AdjunctionViolation>> {
    let (f, g) = (&adj.left, &adj.right);
    let (c, d) = (&*f.source, &*f.target);
    let mut out = Vec::new();
    if *g.source != *d || *g.target != *c {
        out.push(AdjunctionViolation::Mismatch {
            detail: "the adjoints do not run between the same categories".into(),
        });
        return Ok(out);
    }
    if adj.unit.len() != c.object_count() || adj.counit.len() != d.object_count() {
        return Err(Error::Structural("unit or counit does not cover every object".into()));
    }
    for (side, functor) in [("left", f), ("right", g)] {
        for v in validate_functor(functor)? {
            out.push(AdjunctionViolation::Functor {
                side,
                detail: v.to_string(),
            });
        }
    }
    if !out.is_empty() {
        return Ok(out);
    }
    for &m in adj.unit.iter() {
        c.check_morphism(m)?;
    }
    for &m in adj.counit.iter() {
        d.check_morphism(m)?;
    }
    let mut typed = true;
    for x in c.objects() {
        let eta = adj.unit[x.index()];
        if c.dom(eta) != x || c.cod(eta) != g.obj(f.obj(x)) {
            typed = false;
            out.push(AdjunctionViolation::UnitType {
                object: c.object_name(x).to_string(),
            });
        }
    }
    for y in d.objects() {
        let eps = adj.counit[y.index()];
        if d.dom(eps) != f.obj(g.obj(y)) || d.cod(eps) != y {
            typed = false;
            out.push(AdjunctionViolation::CounitType {
                object: d.object_name(y).to_string(),
            });
        }
    }
    if !typed {
        return Ok(out);
    }
    let eta = |x: Obj| adj.unit[x.index()];
    let eps = |y: Obj| adj.counit[y.index()];
    for h in c.morphisms() {
        let (x, x2) = (c.dom(h), c.cod(h));
        if c.comp(g.mor(f.mor(h)), eta(x)) != c.comp(eta(x2), h) {
            out.push(AdjunctionViolation::UnitNaturality {
                morphism: c.morphism_name(h).to_string(),
            });
        }
    }
    for k in d.morphisms() {
        let (y, y2) = (d.dom(k), d.cod(k));
        if d.comp(k, eps(y)) != d.comp(eps(y2), f.mor(g.mor(k))) {
            out.push(AdjunctionViolation::CounitNaturality {
                morphism: d.morphism_name(k).to_string(),
            });
        }
    }
    for x in c.objects() {
        let fx = f.obj(x);
        if d.comp(eps(fx), f.mor(eta(x))) != d.identity(fx) {
            out.push(AdjunctionViolation::LeftTriangle {
                object: c.object_name(x).to_string(),
            });
        }
    }
    for y in d.objects() {
        let gy = g.obj(y);
        if c.comp(g.mor(eps(y)), eta(gy)) != c.identity(gy) {
            out.push(AdjunctionViolation::RightTriangle {
                object: d.object_name(y).to_string(),
            });
        }
    }
    Ok(out)
}

/// The functor `C_Φ → D_Ψ` induced by `F: C → D`.
///
/// Side conditions, checked first: every `F(U)`, `U ∈ Φ`, is isomorphic to a
/// member of `Ψ`, and the comparison `F(X×U) → F(X)×F(U)` is an isomorphism.
/// The image of a class is computed from every representative and must not
/// depend on the choice.
pub fn induced_functor(f: &FunctorData, q_src: &Quotient, q_tgt: &Quotient) -> Result<FunctorData> {
    if *f.source != *q_src.base || *f.target != *q_tgt.base {
        return Err(Error::Structural("functor does not run between the quotient bases".into()));
    }
    let (c, d) = (&*q_src.base, &*q_tgt.base);
    let (pc, pd) = (q_src.products(), q_tgt.products());

    // F(U) ≅ V ∈ Ψ, with the chosen iso φ_U: F(U) → V
    let mut level = Vec::new();
    for &u in &q_src.filter {
        let fu = f.obj(u);
        let hit = q_tgt
            .filter
            .iter()
            .find_map(|&v| find_iso(d, fu, v).map(|(phi, phi_inv)| (v, phi, phi_inv)));
        match hit {
            Some(h) => level.push((u, h)),
            None => {
                return Err(Error::Rejected(format!(
                    "F({}) = {} is not in the target filter",
                    c.object_name(u),
                    d.object_name(fu)
                )))
            }
        }
    }

    // comparison isos F(X×U) → FX×FU, and their inverses
    let mut inverse_comparison = std::collections::HashMap::new();
    for x in c.objects() {
        for &u in &q_src.filter {
            let xu = pc.require(x, u)?;
            let target = pd.require(f.obj(x), f.obj(u))?;
            let cmp = target
                .pair(d, f.mor(xu.p1), f.mor(xu.p2))
                .expect("product is universal");
            let inv = crate::category::is_iso(d, cmp)?.ok_or_else(|| {
                Error::Rejected(format!(
                    "F({}×{}) → F({})×F({}) is not an isomorphism",
                    c.object_name(x),
                    c.object_name(u),
                    c.object_name(x),
                    c.object_name(u)
                ))
            })?;
            inverse_comparison.insert((x, u), inv);
        }
    }

    let image_of = |x: Obj, u: Obj, rep: Mor| -> Result<Mor> {
        let (_, (v, _phi, phi_inv)) = *level.iter().find(|(w, _)| *w == u).unwrap();
        let fx = f.obj(x);
        // FX×V → FX×FU by id × φ⁻¹
        let shift = pd.times(d.identity(fx), phi_inv)?;
        let rep_t = d.comp(f.mor(rep), d.comp(inverse_comparison[&(x, u)], shift));
        q_tgt.class_of(fx, v, rep_t)
    };

    let mut morphism_map = Vec::with_capacity(q_src.morphisms.len());
    for (k, qm) in q_src.morphisms.iter().enumerate() {
        let mut image = None;
        for &(u, rep) in &qm.members {
            let img = image_of(qm.dom, u, rep)?;
            match image {
                None => image = Some(img),
                Some(prev) if prev != img => {
                    return Err(Error::Rejected(format!(
                        "image of {} depends on the representative",
                        q_src.category.morphism_name(Mor(k as u32))
                    )))
                }
                _ => {}
            }
        }
        morphism_map.push(image.expect("classes are non-empty"));
    }
    let induced = FunctorData::new(
        q_src.category.clone(),
        q_tgt.category.clone(),
        f.object_map.clone(),
        morphism_map,
    )?;
    if let Some(v) = validate_functor(&induced)?.first() {
        return Err(Error::Rejected(format!("induced maps are not a functor: {v}")));
    }
    Ok(induced)
}

/// The adjunction between quotients with unit and counit the classes of the
/// original components; both triangle identities are re-verified.
pub fn induced_adjunction(adj: &AdjunctionData, q_src: &Quotient, q_tgt: &Quotient) -> Result<AdjunctionData> {
    let left = induced_functor(&adj.left, q_src, q_tgt)?;
    let right = induced_functor(&adj.right, q_tgt, q_src)?;
    let induced = AdjunctionData {
        left,
        right,
        unit: adj.unit.iter().map(|&m| q_src.projection.mor(m)).collect(),
        counit: adj.counit.iter().map(|&m| q_tgt.projection.mor(m)).collect(),
    };
    if let Some(v) = validate_adjunction(&induced)?.first() {
        return Err(Error::Rejected(format!("induced adjunction fails: {v}")));
    }
    Ok(induced)
}

/// Whether `F` sends cofibrations to cofibrations and trivial cofibrations to
/// trivial cofibrations; the first offending morphism otherwise.
pub fn left_quillen_failure(f: &FunctorData, src: &ModelStructure, tgt: &ModelStructure) -> Option<String> {
    let c = &*src.base;
    for m in src.class(ClassKind::Cofibration).iter() {
        let fm = f.mor(m);
        if !tgt.is_cofibration(fm) {
            return Some(format!(
                "F({}) = {} is not a cofibration",
                c.morphism_name(m),
                tgt.base.morphism_name(fm)
            ));
        }
        if src.is_weak_equivalence(m) && !tgt.is_weak_equivalence(fm) {
            return Some(format!(
                "F({}) = {} is not a trivial cofibration",
                c.morphism_name(m),
                tgt.base.morphism_name(fm)
            ));
        }
    }
    None
}

/// Unit components `η_X` (source objects) and counit components `ε_Y`
/// (target objects) claimed to be weak equivalences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceClaims {
    pub unit: Vec<Obj>,
    pub counit: Vec<Obj>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferStage {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    /// Stages in order; the first failing stage ends the check.
    pub stages: Vec<TransferStage>,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.stages.iter().all(|s| s.passed)
    }

    pub fn refused_at(&self) -> Option<&TransferStage> {
        self.stages.iter().find(|s| !s.passed)
    }
}

/// The inputs of a transfer check: both sides with their filters.
pub struct TransferInput<'a> {
    pub adjunction: &'a AdjunctionData,
    pub source: &'a ModelStructure,
    pub target: &'a ModelStructure,
    pub source_filter: (&'a SubterminalPreorder, &'a Filter),
    pub target_filter: (&'a SubterminalPreorder, &'a Filter),
    pub claims: &'a EquivalenceClaims,
}

/// The full chain: source Quillen adjunction, model filters on both sides,
/// induced adjunction on the quotients, left Quillen in the quotients, and
/// supplied equivalence claims in source and quotient.
pub fn check_quillen_transfer(input: &TransferInput) -> Result<TransferReport> {
    let mut stages = Vec::new();
    let stage = |stages: &mut Vec<TransferStage>, name, passed, detail: String| {
        stages.push(TransferStage { name, passed, detail });
        passed
    };
    let adj = input.adjunction;
    let violations = validate_adjunction(adj)?;
    let ok = violations.is_empty();
    let detail = violations.first().map(|v| v.to_string()).unwrap_or_else(|| "unit, counit natural; triangle identities hold".into());
    if !stage(&mut stages, "source adjunction", ok, detail) {
        return Ok(TransferReport { stages });
    }
    let failure = left_quillen_failure(&adj.left, input.source, input.target);
    let ok = failure.is_none();
    if !stage(
        &mut stages,
        "source left Quillen",
        ok,
        failure.unwrap_or_else(|| "F preserves cofibrations and trivial cofibrations".into()),
    ) {
        return Ok(TransferReport { stages });
    }
    let mut quotient_models: Vec<QuotientModel> = Vec::new();
    for (name, m, (s, phi)) in [
        ("source model filter", input.source, input.source_filter),
        ("target model filter", input.target, input.target_filter),
    ] {
        let report = is_model_filter(m, s, phi);
        if !report.holds() {
            stage(&mut stages, name, false, model_filter_reason(&report));
            return Ok(TransferReport { stages });
        }
        let qm = build_quotient_model(m, s, phi)?;
        stage(
            &mut stages,
            name,
            true,
            format!("filter {{{}}} is a model filter", phi.names(&m.base, s).join(",")),
        );
        quotient_models.push(qm);
    }
    let (qs, qt) = (&quotient_models[0], &quotient_models[1]);
    let induced = match induced_adjunction(adj, &qs.quotient, &qt.quotient) {
        Ok(a) => {
            stage(
                &mut stages,
                "induced adjunction",
                true,
                "triangle identities hold in the quotients".into(),
            );
            a
        }
        Err(e) => {
            stage(&mut stages, "induced adjunction", false, e.to_string());
            return Ok(TransferReport { stages });
        }
    };
    let failure = left_quillen_failure(&induced.left, &qs.model, &qt.model);
    let ok = failure.is_none();
    if !stage(
        &mut stages,
        "quotient left Quillen",
        ok,
        failure.unwrap_or_else(|| "induced F preserves cofibrations and trivial cofibrations".into()),
    ) {
        return Ok(TransferReport { stages });
    }
    let claims = input.claims;
    if !claims.unit.is_empty() || !claims.counit.is_empty() {
        let mut problems = Vec::new();
        let (c, d) = (&*input.source.base, &*input.target.base);
        for &x in &claims.unit {
            let eta = adj.unit[x.index()];
            if !input.source.is_weak_equivalence(eta) {
                problems.push(format!("unit at {} is not a weak equivalence", c.object_name(x)));
            } else if !qs.model.is_weak_equivalence(induced.unit[x.index()]) {
                problems.push(format!(
                    "unit at {} is not a weak equivalence in the quotient",
                    c.object_name(x)
                ));
            }
        }
        for &y in &claims.counit {
            let eps = adj.counit[y.index()];
            if !input.target.is_weak_equivalence(eps) {
                problems.push(format!("counit at {} is not a weak equivalence", d.object_name(y)));
            } else if !qt.model.is_weak_equivalence(induced.counit[y.index()]) {
                problems.push(format!(
                    "counit at {} is not a weak equivalence in the quotient",
                    d.object_name(y)
                ));
            }
        }
        let ok = problems.is_empty();
        stage(
            &mut stages,
            "derived equivalence",
            ok,
            problems
                .into_iter()
                .next()
                .unwrap_or_else(|| "claimed components remain weak equivalences".into()),
        );
    }
    Ok(TransferReport { stages })
}

/// `Δ ⊣ ∧` between a finite lattice `L` (as a thin category) and `L × L`.
pub fn diagonal_meet_adjunction(lattice: &Arc<FinCat>, square: &PowerCategory) -> Result<AdjunctionData> {
    if square.arity != 2 || *square.factor != **lattice {
        return Err(Error::Structural("expected the square of the lattice".into()));
    }
    let c = &**lattice;
    let d = &*square.category;
    let left = diagonal(square)?;
    let meet = |a: Obj, b: Obj| -> Result<Obj> {
        crate::universal::binary_product(c, a, b)
            .map(|p| p.apex)
            .ok_or_else(|| Error::Missing("binary meet".into()))
    };
    let mut object_map = Vec::new();
    for y in d.objects() {
        let xy = square.coordinates(y);
        object_map.push(meet(xy[0], xy[1])?);
    }
    let morphism_map = d
        .morphisms()
        .map(|k| {
            let (a, b) = (object_map[d.dom(k).index()], object_map[d.cod(k).index()]);
            c.hom(a, b).first().copied().ok_or_else(|| Error::Rejected("not a lattice".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let right = FunctorData::new(square.category.clone(), lattice.clone(), object_map, morphism_map)?;
    let unit = c
        .objects()
        .map(|x| c.hom(x, right.obj(left.obj(x)))[0])
        .collect();
    let counit = d
        .objects()
        .map(|y| d.hom(left.obj(right.obj(y)), y)[0])
        .collect();
    Ok(AdjunctionData {
        left,
        right,
        unit,
        counit,
    })
}
