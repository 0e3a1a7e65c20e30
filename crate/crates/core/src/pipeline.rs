//! The command pipeline behind the `fqcat` binary.
//!
//! Every command reads its inputs, runs a fixed sequence of checks and
//! returns a [`Report`]. Exit status: 0 when every check passes, 1 on any
//! failed check, 2 on unreadable, unparsable or structurally invalid input,
//! 3 when nothing failed but some check was inconclusive.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::category::{validate_category, FinCat, Obj};
use crate::error::{Error, Result};
use crate::filter::{
    build_subfib, enumerate_filters, is_model_filter, is_product_stable, resolve_filter_names, validate_filter, Filter,
    IndexFilter, SubterminalPreorder,
};
use crate::functor::validate_functor;
use crate::io::{digest, parse_adjunction, parse_presentation, to_fcat, Presentation, Report, Status};
use crate::iso::{categories_isomorphic, IsoOutcome, DEFAULT_ISO_BUDGET};
use crate::model::{verify_model_structure, ClassKind, ModelStructure};
use crate::quotient::{
    build_quotient_model, build_quotient_on, collapse_oracle, limit_diagrams, model_filter_reason, normal_form_functor,
    verify_projection_preservation, Quotient,
};
use crate::transfer::{
    build_filter_product, check_quillen_transfer, filter_product_quotient, pi_phi_preservation,
    principal_collapse_check, CollapseOutcome, TransferInput,
};
use crate::universal::{exponential, search_limit, Exponential, Products, View};

pub const DEFAULT_MAX_MORPHISMS: usize = 64;

/// Upper bound on the size of `∏_I M` built by `product`.
pub const MAX_POWER_MORPHISMS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub json: bool,
    pub iso_budget: u64,
    pub max_morphisms: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            iso_budget: DEFAULT_ISO_BUDGET,
            max_morphisms: DEFAULT_MAX_MORPHISMS,
        }
    }
}

/// How a filter on the powerset of the index set is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexFilterSpec {
    /// The principal filter of supersets of these labels.
    Minimum(Vec<String>),
    /// The listed subsets, which must already form a filter.
    Sets(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate { file: PathBuf },
    ModelCheck { file: PathBuf },
    Subterminals { file: PathBuf },
    Filters { file: PathBuf, enumerate: bool },
    CheckModelFilter { file: PathBuf, filter: Option<Vec<String>> },
    Quotient { file: PathBuf, filter: Option<Vec<String>>, oracle: bool, emit: Option<PathBuf> },
    Product { file: PathBuf, index: Vec<String>, filter: IndexFilterSpec, emit: Option<PathBuf> },
    Transfer {
        left: PathBuf,
        right: PathBuf,
        adjunction: PathBuf,
        left_filter: Option<Vec<String>>,
        right_filter: Option<Vec<String>>,
    },
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(command: &Command, opts: &Options) -> Outcome {
    match execute(command, opts) {
        Ok(report) => Outcome {
            code: report.exit_code(),
            stdout: if opts.json { report.to_json() } else { report.to_text() },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs a command and returns its report; `Err` maps to exit status 2.
pub fn execute(command: &Command, opts: &Options) -> Result<Report> {
    match command {
        Command::Validate { file } => validate(&load(file, opts)?),
        Command::ModelCheck { file } => model_check(&load(file, opts)?),
        Command::Subterminals { file } => subterminals(&load(file, opts)?),
        Command::Filters { file, enumerate } => filters(&load(file, opts)?, *enumerate),
        Command::CheckModelFilter { file, filter } => check_model_filter(&load(file, opts)?, filter.as_deref()),
        Command::Quotient {
            file,
            filter,
            oracle,
            emit,
        } => quotient(&load(file, opts)?, filter.as_deref(), *oracle, emit.as_deref(), opts),
        Command::Product {
            file,
            index,
            filter,
            emit,
        } => product(&load(file, opts)?, index, filter, emit.as_deref(), opts),
        Command::Transfer {
            left,
            right,
            adjunction,
            left_filter,
            right_filter,
        } => {
            let l = load(left, opts)?;
            let r = load(right, opts)?;
            let text = read(adjunction)?;
            transfer(&l, &r, &text, adjunction, left_filter.as_deref(), right_filter.as_deref())
        }
    }
}

/// A parsed input file with the digest of its canonical text.
pub struct Loaded {
    pub path: PathBuf,
    pub presentation: Presentation,
    pub canonical: String,
}

impl Loaded {
    pub fn from_text(path: &Path, text: &str, opts: &Options) -> Result<Self> {
        let presentation = parse_presentation(text).map_err(|e| locate(path, e))?;
        let n = presentation.category.morphism_count();
        if n > opts.max_morphisms {
            return Err(Error::Rejected(format!(
                "{}: {n} morphisms exceed the limit of {} (raise --max-morphisms)",
                path.display(),
                opts.max_morphisms
            )));
        }
        let canonical = to_fcat(&presentation)?;
        Ok(Loaded {
            path: path.to_path_buf(),
            presentation,
            canonical,
        })
    }

    fn category(&self) -> &Arc<FinCat> {
        &self.presentation.category
    }

    fn report(&self) -> Report {
        Report::new(digest(&[&self.canonical]))
    }

    fn model(&self) -> Result<ModelStructure> {
        self.presentation
            .model()
            .ok_or_else(|| Error::Rejected(format!("{}: no model section", self.path.display())))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn locate(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(d) => Error::Rejected(format!("{}:{d}", path.display())),
        other => other,
    }
}

pub fn load(path: &Path, opts: &Options) -> Result<Loaded> {
    Loaded::from_text(path, &read(path)?, opts)
}

/// Splits a comma-separated list, ignoring commas inside parentheses.
pub fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    let out: Vec<String> = out.into_iter().map(|t| t.trim().to_string()).collect();
    if out.len() == 1 && out[0].is_empty() {
        Vec::new()
    } else {
        out
    }
}

/// Parses `a;a,b` into sets of labels; `{}` or an empty part is the empty set.
pub fn split_sets(s: &str) -> Vec<Vec<String>> {
    s.split(';')
        .map(|part| {
            let part = part.trim();
            if part == "{}" {
                Vec::new()
            } else {
                split_list(part.trim_start_matches('{').trim_end_matches('}'))
            }
        })
        .collect()
}

fn inventory(report: &mut Report, c: &FinCat) {
    let mut missing: Vec<(String, Vec<String>)> = Vec::new();
    for (construction, dual, diagram, label) in limit_diagrams(c) {
        let absent = search_limit(View { cat: c, dual }, &diagram).is_none();
        let slot = match missing.iter().position(|(k, _)| *k == construction) {
            Some(k) => k,
            None => {
                missing.push((construction.clone(), Vec::new()));
                missing.len() - 1
            }
        };
        if absent {
            missing[slot].1.push(label);
        }
    }
    for (construction, labels) in missing {
        if labels.is_empty() {
            report.push(format!("{construction} exists"), Status::Pass, "every instance");
        } else {
            report.push(
                format!("{construction} exists"),
                Status::Inconclusive,
                json!({ "missing": labels }),
            );
        }
    }
    let products = Products::new(Arc::new(c.clone()));
    let mut absent = Vec::new();
    let mut undecided = Vec::new();
    for k in c.objects() {
        for y in c.objects() {
            let label = format!("{}^{}", c.object_name(y), c.object_name(k));
            match exponential(&products, k, y) {
                Exponential::Found(_) => {}
                Exponential::Absent => absent.push(label),
                Exponential::Inconclusive { missing } => undecided.push(format!("{label}: missing limit {missing}")),
            }
        }
    }
    if absent.is_empty() && undecided.is_empty() {
        report.push("exponential exists", Status::Pass, "every instance");
    } else {
        report.push(
            "exponential exists",
            Status::Inconclusive,
            json!({ "absent": absent, "undecided": undecided }),
        );
    }
}

fn validate(input: &Loaded) -> Result<Report> {
    let c = input.category();
    let mut r = input.report();
    r.push(
        "parse",
        Status::Pass,
        json!({ "objects": c.object_count(), "morphisms": c.morphism_count() }),
    );
    let laws = validate_category(c);
    r.push(
        "category laws",
        Status::from_bool(laws.is_empty()),
        laws.first().map(|v| v.to_string()).unwrap_or_else(|| "identity, associativity".into()),
    );
    if !laws.is_empty() {
        return Ok(r);
    }
    if let Some(m) = input.presentation.model() {
        r.push(
            "model classes",
            Status::Pass,
            json!({
                "cofibrations": m.class(ClassKind::Cofibration).len(),
                "fibrations": m.class(ClassKind::Fibration).len(),
                "weak-equivalences": m.class(ClassKind::WeakEquivalence).len(),
            }),
        );
        if let Some(names) = input.presentation.filter_names() {
            match build_subfib(&m) {
                Ok(s) => {
                    filter_record(&mut r, &m, &s, &names)?;
                }
                Err(e) => r.push("filter", Status::Inconclusive, e.to_string()),
            }
        }
    } else if input.presentation.filter.is_some() {
        r.push("filter", Status::Inconclusive, "no model section to define Subfib");
    }
    inventory(&mut r, c);
    Ok(r)
}

/// Records whether `names` form a filter; returns the filter when they do.
fn filter_record(r: &mut Report, m: &ModelStructure, s: &SubterminalPreorder, names: &[String]) -> Result<Option<Filter>> {
    let (members, notices) = match resolve_filter_names(&m.base, s, names) {
        Ok(x) => x,
        Err(e @ Error::Structural(_)) => {
            r.push("filter", Status::Fail, e.to_string());
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let violations = validate_filter(&m.base, s, &members)?;
    if let Some(v) = violations.first() {
        r.push("filter", Status::Fail, json!({ "violation": v.to_string(), "notices": notices }));
        return Ok(None);
    }
    let phi = Filter::new(&m.base, s, &members)?;
    r.push(
        "filter",
        Status::Pass,
        json!({ "members": phi.names(&m.base, s), "minimum": m.base.object_name(phi.minimum_object(s)), "notices": notices }),
    );
    Ok(Some(phi))
}

fn model_check(input: &Loaded) -> Result<Report> {
    let m = input.model()?;
    let mut r = input.report();
    let laws = validate_category(&m.base);
    if let Some(v) = laws.first() {
        r.push("category laws", Status::Fail, v.to_string());
        return Ok(r);
    }
    for v in verify_model_structure(&m).verdicts {
        let witness = match &v.counterexample {
            Some(cx) => json!({ "instances": v.instances, "counterexample": cx.to_string(), "detail": cx }),
            None => json!({ "instances": v.instances }),
        };
        r.push(format!("axiom {}", v.axiom), Status::from_bool(v.holds()), witness);
    }
    for (name, outcome) in [
        ("finite limits", crate::universal::finitely_complete(&m.base)),
        ("finite colimits", crate::universal::finitely_cocomplete(&m.base)),
    ] {
        match outcome {
            Ok(()) => r.push(name, Status::Pass, "terminal, products, equalizers"),
            Err(missing) => r.push(name, Status::Fail, json!({ "missing": missing })),
        }
    }
    Ok(r)
}

fn subfib_or_report(r: &mut Report, m: &ModelStructure) -> Option<SubterminalPreorder> {
    match build_subfib(m) {
        Ok(s) => Some(s),
        Err(e) => {
            r.push("subfib", Status::Inconclusive, e.to_string());
            None
        }
    }
}

fn describe_subfib(c: &FinCat, s: &SubterminalPreorder) -> Value {
    let names = |xs: &[Obj]| xs.iter().map(|&x| c.object_name(x).to_string()).collect::<Vec<_>>();
    let mut order = Vec::new();
    for a in 0..s.len() {
        for b in 0..s.len() {
            if a != b && s.leq(a, b) {
                order.push(format!(
                    "{} <= {}",
                    c.object_name(s.skeleton[a]),
                    c.object_name(s.skeleton[b])
                ));
            }
        }
    }
    json!({
        "elements": names(&s.elements),
        "skeleton": names(&s.skeleton),
        "order": order,
        "top": c.object_name(s.skeleton[s.top]),
    })
}

fn subterminals(input: &Loaded) -> Result<Report> {
    let m = input.model()?;
    let mut r = input.report();
    let Some(s) = subfib_or_report(&mut r, &m) else {
        return Ok(r);
    };
    r.push("subfib", Status::Pass, describe_subfib(&m.base, &s));
    for (x, why) in &s.excluded {
        r.push(format!("subterminal {}", m.base.object_name(*x)), Status::Inconclusive, why.clone());
    }
    Ok(r)
}

fn filters(input: &Loaded, enumerate: bool) -> Result<Report> {
    let m = input.model()?;
    let mut r = input.report();
    let Some(s) = subfib_or_report(&mut r, &m) else {
        return Ok(r);
    };
    let all = enumerate_filters(&m.base, &s);
    r.push("filters", Status::Pass, json!({ "count": all.len() }));
    if enumerate {
        for phi in &all {
            let model = is_model_filter(&m, &s, phi).holds();
            r.push(
                format!("filter {{{}}}", phi.names(&m.base, &s).join(",")),
                Status::Pass,
                json!({
                    "minimum": m.base.object_name(phi.minimum_object(&s)),
                    "model_filter": model,
                }),
            );
        }
    }
    Ok(r)
}

fn chosen_filter(input: &Loaded, filter: Option<&[String]>) -> Result<Vec<String>> {
    match filter {
        Some(f) => Ok(f.to_vec()),
        None => input.presentation.filter_names().ok_or_else(|| {
            Error::Rejected(format!("{}: no --filter given and no filter section", input.path.display()))
        }),
    }
}

fn stability_records(r: &mut Report, m: &ModelStructure, s: &SubterminalPreorder, phi: &Filter) -> bool {
    let report = is_model_filter(m, s, phi);
    let fib = is_product_stable(m, ClassKind::Fibration, s, phi);
    for (name, st) in [
        ("cofibrations product-stable", &report.cofibrations),
        ("weak-equivalences product-stable", &report.weak_equivalences),
        ("fibrations product-stable", &fib),
    ] {
        let status = if !st.failures.is_empty() {
            Status::Fail
        } else if !st.inconclusive.is_empty() {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        let witness = match st.failures.first() {
            Some(f) => json!({
                "instances": st.instances,
                "counterexample": format!("{} × {} = {} is not in the class", f.morphism, f.object, f.product),
            }),
            None => json!({ "instances": st.instances, "inconclusive": st.inconclusive }),
        };
        r.push(name, status, witness);
    }
    r.push(
        "members discrete homotopically subterminal",
        Status::from_bool(report.not_discrete.is_empty()),
        json!({ "not_discrete": report.not_discrete }),
    );
    report.holds()
}

fn check_model_filter(input: &Loaded, filter: Option<&[String]>) -> Result<Report> {
    let m = input.model()?;
    let names = chosen_filter(input, filter)?;
    let mut r = input.report();
    let Some(s) = subfib_or_report(&mut r, &m) else {
        return Ok(r);
    };
    let Some(phi) = filter_record(&mut r, &m, &s, &names)? else {
        return Ok(r);
    };
    stability_records(&mut r, &m, &s, &phi);
    Ok(r)
}

fn iso_record(r: &mut Report, name: &str, outcome: IsoOutcome) {
    match outcome {
        IsoOutcome::Isomorphic { .. } => r.push(name, Status::Pass, "isomorphism found"),
        IsoOutcome::NotIsomorphic => r.push(name, Status::Fail, "no isomorphism exists"),
        IsoOutcome::Inconclusive { explored } => r.push(
            name,
            Status::Inconclusive,
            json!({ "explored": explored, "note": "search budget exhausted" }),
        ),
    }
}

fn oracle_records(r: &mut Report, q: &Quotient, budget: u64) -> Result<()> {
    let oracle = Arc::new(collapse_oracle(q.products(), q.w0)?);
    iso_record(r, "oracle isomorphism", categories_isomorphic(&q.category, &oracle, budget)?);
    let nf = normal_form_functor(q)?;
    let violations = validate_functor(&nf)?;
    let bijective = {
        let mut seen = vec![false; oracle.morphism_count()];
        nf.morphism_map.iter().all(|g| !std::mem::replace(&mut seen[g.index()], true))
            && nf.morphism_map.len() == oracle.morphism_count()
    };
    r.push(
        "oracle normal-form functor",
        Status::from_bool(violations.is_empty() && bijective),
        match violations.first() {
            Some(v) => json!(v.to_string()),
            None if !bijective => json!("not bijective on morphisms"),
            None => json!("functor, bijective on morphisms"),
        },
    );
    Ok(())
}

fn emit(path: &Path, p: &Presentation) -> Result<()> {
    let text = to_fcat(p)?;
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn model_records(r: &mut Report, prefix: &str, m: &ModelStructure) -> bool {
    let report = verify_model_structure(m);
    for v in &report.verdicts {
        r.push(
            format!("{prefix} axiom {}", v.axiom),
            Status::from_bool(v.holds()),
            match &v.counterexample {
                Some(cx) => json!({ "instances": v.instances, "counterexample": cx.to_string() }),
                None => json!({ "instances": v.instances }),
            },
        );
    }
    report.holds()
}

fn preservation_record(r: &mut Report, name: &str, p: &crate::quotient::PreservationReport) {
    let status = if !p.failures.is_empty() {
        Status::Fail
    } else if !p.inconclusive.is_empty() {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    r.push(
        name,
        status,
        json!({ "checked": p.checked, "failures": p.failures, "inconclusive": p.inconclusive }),
    );
}

fn quotient(input: &Loaded, filter: Option<&[String]>, oracle: bool, out: Option<&Path>, opts: &Options) -> Result<Report> {
    let names = chosen_filter(input, filter)?;
    let mut r = input.report();
    let Some(m) = input.presentation.model() else {
        // bare categorical quotient along subterminal objects
        let c = input.category();
        let objs = names.iter().map(|n| c.lookup_object(n)).collect::<Result<Vec<_>>>()?;
        let products = Arc::new(Products::new(c.clone()));
        let q = build_quotient_on(&products, &objs)?;
        quotient_category_records(&mut r, &q);
        if oracle {
            oracle_records(&mut r, &q, opts.iso_budget)?;
        }
        if let Some(path) = out {
            emit(path, &Presentation::new(q.category.clone(), None, None)?)?;
        }
        return Ok(r);
    };
    let Some(s) = subfib_or_report(&mut r, &m) else {
        return Ok(r);
    };
    let Some(phi) = filter_record(&mut r, &m, &s, &names)? else {
        return Ok(r);
    };
    let report = is_model_filter(&m, &s, &phi);
    if !report.holds() {
        r.push("model filter", Status::Fail, model_filter_reason(&report));
        return Ok(r);
    }
    r.push("model filter", Status::Pass, "cofibrations and weak equivalences product-stable");
    let qm = build_quotient_model(&m, &s, &phi)?;
    quotient_category_records(&mut r, &qm.quotient);
    model_records(&mut r, "quotient", &qm.model);
    r.push("proof certificate", Status::from_bool(qm.certificate.holds()), &qm.certificate);
    preservation_record(
        &mut r,
        "projection preservation",
        &verify_projection_preservation(&m, &qm.quotient, Some(&qm.model)),
    );
    if oracle {
        oracle_records(&mut r, &qm.quotient, opts.iso_budget)?;
    }
    if let Some(path) = out {
        emit(path, &Presentation::new(qm.quotient.category.clone(), Some(&qm.model), None)?)?;
    }
    Ok(r)
}

fn quotient_category_records(r: &mut Report, q: &Quotient) {
    let c = &q.category;
    let laws = validate_category(c);
    r.push(
        "quotient category laws",
        Status::from_bool(laws.is_empty()),
        match laws.first() {
            Some(v) => json!(v.to_string()),
            None => json!({
                "objects": c.object_count(),
                "morphisms": c.morphism_count(),
                "w0": q.base.object_name(q.w0),
            }),
        },
    );
    let violations = validate_functor(&q.projection).unwrap_or_default();
    r.push(
        "projection functor",
        Status::from_bool(violations.is_empty()),
        violations.first().map(|v| v.to_string()).unwrap_or_else(|| "functor".into()),
    );
}

fn index_filter(index: &[String], spec: &IndexFilterSpec) -> Result<IndexFilter> {
    let mask = |labels: &[String]| -> Result<u64> {
        let mut m = 0u64;
        for l in labels {
            let k = index.iter().position(|x| x == l).ok_or_else(|| Error::Lookup {
                kind: "index label",
                name: l.clone(),
            })?;
            m |= 1 << k;
        }
        Ok(m)
    };
    match spec {
        IndexFilterSpec::Minimum(labels) => IndexFilter::principal(index.to_vec(), mask(labels)?),
        IndexFilterSpec::Sets(sets) => {
            let masks = sets.iter().map(|s| mask(s)).collect::<Result<Vec<_>>>()?;
            IndexFilter::new(index.to_vec(), masks)
        }
    }
}

fn product(input: &Loaded, index: &[String], spec: &IndexFilterSpec, out: Option<&Path>, opts: &Options) -> Result<Report> {
    let m = input.model()?;
    let iphi = index_filter(index, spec)?;
    let size = (m.base.morphism_count() as u128).checked_pow(index.len() as u32).unwrap_or(u128::MAX);
    if size > MAX_POWER_MORPHISMS as u128 {
        return Err(Error::Rejected(format!(
            "the power has {size} morphisms, more than {MAX_POWER_MORPHISMS}"
        )));
    }
    let mut r = input.report();
    r.push(
        "index filter",
        Status::Pass,
        json!({
            "sets": iphi.sets().iter().map(|&j| iphi.subset_name(j)).collect::<Vec<_>>(),
            "minimum": iphi.subset_name(iphi.minimum()),
        }),
    );
    let fp = build_filter_product(&m, &iphi)?;
    r.push(
        "embedded filter",
        Status::Pass,
        json!({ "members": fp.filter.names(&fp.model.base, &fp.subfib) }),
    );
    if !fp.model_filter.holds() {
        r.push("model filter", Status::Fail, model_filter_reason(&fp.model_filter));
        return Ok(r);
    }
    r.push("model filter", Status::Pass, "cofibrations and weak equivalences product-stable");
    let (q, qm) = filter_product_quotient(&fp)?;
    quotient_category_records(&mut r, &q);
    model_records(&mut r, "filter product", &qm);
    let pi = pi_phi_preservation(&fp, &q, &qm)?;
    r.push(
        "diagonal projection preservation",
        Status::from_bool(pi.holds()),
        json!({ "checked": pi.checked, "failures": pi.failures }),
    );
    let collapse = principal_collapse_check(&fp, &q, &qm, opts.iso_budget)?;
    let status = match collapse.outcome {
        CollapseOutcome::Isomorphic => Status::Pass,
        CollapseOutcome::NotIsomorphic => Status::Fail,
        CollapseOutcome::Inconclusive => Status::Inconclusive,
    };
    r.push("principal collapse", status, &collapse);
    if let Some(path) = out {
        emit(path, &Presentation::new(q.category.clone(), Some(&qm), None)?)?;
    }
    Ok(r)
}

fn side_filter(
    r: &mut Report,
    side: &str,
    input: &Loaded,
    m: &ModelStructure,
    names: Option<&[String]>,
) -> Result<Option<(SubterminalPreorder, Filter)>> {
    let s = match build_subfib(m) {
        Ok(s) => s,
        Err(e) => {
            r.push(format!("{side} subfib"), Status::Inconclusive, e.to_string());
            return Ok(None);
        }
    };
    let names = match names {
        Some(n) => n.to_vec(),
        None => input
            .presentation
            .filter_names()
            .unwrap_or_else(|| vec![m.base.object_name(s.skeleton[s.top]).to_string()]),
    };
    let mut scratch = Report::new(String::new());
    let phi = filter_record(&mut scratch, m, &s, &names)?;
    for c in scratch.checks {
        r.checks.push(crate::io::Check {
            name: format!("{side} {}", c.name),
            ..c
        });
    }
    Ok(phi.map(|phi| (s, phi)))
}

fn transfer(
    left: &Loaded,
    right: &Loaded,
    adj_text: &str,
    adj_path: &Path,
    left_filter: Option<&[String]>,
    right_filter: Option<&[String]>,
) -> Result<Report> {
    let ml = left.model()?;
    let mr = right.model()?;
    let (adj, claims) = parse_adjunction(adj_text, left.category(), right.category()).map_err(|e| locate(adj_path, e))?;
    let canonical_adj = crate::io::to_fadj(&adj, &claims);
    let mut r = Report::new(digest(&[&left.canonical, &right.canonical, &canonical_adj]));
    let Some((sl, pl)) = side_filter(&mut r, "source", left, &ml, left_filter)? else {
        return Ok(r);
    };
    let Some((sr, pr)) = side_filter(&mut r, "target", right, &mr, right_filter)? else {
        return Ok(r);
    };
    let report = check_quillen_transfer(&TransferInput {
        adjunction: &adj,
        source: &ml,
        target: &mr,
        source_filter: (&sl, &pl),
        target_filter: (&sr, &pr),
        claims: &claims,
    })?;
    for stage in report.stages {
        r.push(stage.name, Status::from_bool(stage.passed), stage.detail);
    }
    Ok(r)
}
