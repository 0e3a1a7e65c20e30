use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::category::{identity_name, CategoryBuilder, FinCat, Mor, Obj};
use crate::error::{Error, Result};
use crate::model::{ClassKind, ModelStructure};

use super::lex::{self, at, diag, end_of, shape, valid_name};

/// A parsed `.fcat` file.
///
/// ```text
/// fcat 1
/// objects 0 1
/// morphism a : 0 -> 1
/// cofibrations a
/// fibrations a
/// weak-equivalences
/// ```
///
/// Identities `id_X` are implicit, composites with them default to the unit
/// laws, and every other composable pair needs a `compose g . f = h` line.
/// The class lists are all present or all absent; identities belong to every
/// class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub category: Arc<FinCat>,
    /// Cofibrations, fibrations and weak equivalences without identities,
    /// sorted.
    pub classes: Option<[Vec<Mor>; 3]>,
    pub filter: Option<Vec<Obj>>,
}

impl Presentation {
    pub fn new(category: Arc<FinCat>, model: Option<&ModelStructure>, filter: Option<Vec<Obj>>) -> Result<Self> {
        let classes = match model {
            Some(m) => {
                if *m.base != *category {
                    return Err(Error::Structural("model structure on another category".into()));
                }
                Some(ClassKind::ALL.map(|kind| {
                    m.class(kind)
                        .iter()
                        .filter(|&f| !category.is_identity(f))
                        .collect()
                }))
            }
            None => None,
        };
        if let Some(objs) = &filter {
            for &x in objs {
                category.check_object(x)?;
            }
        }
        Ok(Presentation {
            category,
            classes,
            filter,
        })
    }

    pub fn model(&self) -> Option<ModelStructure> {
        let [c, f, w] = self.classes.as_ref()?;
        Some(
            ModelStructure::new(self.category.clone(), c.clone(), f.clone(), w.clone())
                .expect("classes were resolved against the category"),
        )
    }

    pub fn filter_names(&self) -> Option<Vec<String>> {
        self.filter.as_ref().map(|objs| {
            objs.iter()
                .map(|&x| self.category.object_name(x).to_string())
                .collect()
        })
    }
}

const WHAT_OBJECT: &str = "object id";
const WHAT_MORPHISM: &str = "morphism id";

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let lines = lex::lines(text);
    lex::header(&lines, "fcat", text)?;
    let mut b = CategoryBuilder::new();
    // line of declaration of each morphism, identities included
    let mut declared_at: Vec<usize> = Vec::new();
    let mut classes: [Option<(usize, Vec<Mor>)>; 3] = [None, None, None];
    let mut filter: Option<(usize, Vec<Obj>)> = None;

    for line in &lines[1..] {
        let head = &line.tokens[0];
        let n = line.number;
        match head.text {
            "objects" => {
                for t in &line.tokens[1..] {
                    if !valid_name(t.text) {
                        return Err(diag(n, t.column, format!("`{}` is not a valid id", t.text), Some(WHAT_OBJECT)));
                    }
                    b.object(t.text).map_err(|e| at(t, n, plain(e)))?;
                    declared_at.push(n);
                }
            }
            "morphism" => {
                let t = shape(line, &[None, None, Some(":"), None, Some("->"), None], WHAT_MORPHISM)?;
                let (name, dom, cod) = (&t[1], &t[3], &t[5]);
                for o in [dom, cod] {
                    if !b.has_object(o.text) {
                        return Err(at(o, n, format!("unknown object `{}`", o.text)));
                    }
                }
                b.morphism(name.text, dom.text, cod.text)
                    .map_err(|e| at(name, n, plain(e)))?;
                declared_at.push(n);
            }
            "compose" => {
                let t = shape(line, &[None, None, Some("."), None, Some("="), None], WHAT_MORPHISM)?;
                let (g, f, h) = (&t[1], &t[3], &t[5]);
                for m in [g, f, h] {
                    if !b.has_morphism(m.text) {
                        return Err(at(m, n, format!("unknown morphism `{}`", m.text)));
                    }
                }
                b.compose(g.text, f.text, h.text).map_err(|e| at(g, n, plain(e)))?;
            }
            "cofibrations" | "fibrations" | "weak-equivalences" => {
                let slot = match head.text {
                    "cofibrations" => 0,
                    "fibrations" => 1,
                    _ => 2,
                };
                if let Some((first, _)) = classes[slot] {
                    return Err(at(head, n, format!("`{}` already given on line {first}", head.text)));
                }
                let mut members = Vec::new();
                for t in &line.tokens[1..] {
                    let f = b
                        .lookup_morphism(t.text)
                        .map_err(|_| at(t, n, format!("unknown morphism `{}`", t.text)))?;
                    if members.contains(&f) {
                        return Err(at(t, n, format!("`{}` listed twice", t.text)));
                    }
                    members.push(f);
                }
                classes[slot] = Some((n, members));
            }
            "filter" => {
                if let Some((first, _)) = filter {
                    return Err(at(head, n, format!("`filter` already given on line {first}")));
                }
                let mut members = Vec::new();
                for t in &line.tokens[1..] {
                    let x = b
                        .lookup_object(t.text)
                        .map_err(|_| at(t, n, format!("unknown object `{}`", t.text)))?;
                    if members.contains(&x) {
                        return Err(at(t, n, format!("`{}` listed twice", t.text)));
                    }
                    members.push(x);
                }
                filter = Some((n, members));
            }
            other => {
                return Err(diag(
                    n,
                    head.column,
                    format!("unknown keyword `{other}`"),
                    Some("objects, morphism, compose, cofibrations, fibrations, weak-equivalences or filter"),
                ))
            }
        }
    }

    if let Some((g, f)) = b.missing_entries().into_iter().next() {
        let line = [&g, &f]
            .iter()
            .map(|m| declared_at[b.lookup_morphism(m).unwrap().index()])
            .max()
            .unwrap();
        return Err(diag(
            line,
            1,
            format!("composition table not total: missing `compose {g} . {f} = ...`"),
            None,
        ));
    }
    let present = classes.iter().filter(|c| c.is_some()).count();
    if present != 0 && present != 3 {
        let missing = ["cofibrations", "fibrations", "weak-equivalences"]
            .iter()
            .zip(&classes)
            .find(|(_, c)| c.is_none())
            .map(|(k, _)| *k)
            .unwrap();
        return Err(diag(end_of(text), 1, format!("model section incomplete: no `{missing}` line"), Some(missing)));
    }
    let category = Arc::new(b.build().map_err(|e| diag(end_of(text), 1, plain(e), None))?);
    let classes = (present == 3).then(|| {
        classes.map(|c| {
            let mut v: Vec<Mor> = c
                .unwrap()
                .1
                .into_iter()
                .filter(|&f| !category.is_identity(f))
                .collect();
            v.sort();
            v
        })
    });
    Ok(Presentation {
        category,
        classes,
        filter: filter.map(|(_, v)| v),
    })
}

fn plain(e: Error) -> String {
    match e {
        Error::Structural(s) => s,
        other => other.to_string(),
    }
}

/// Canonical text of a presentation: declaration order, one morphism per
/// line, only composites not implied by the unit laws.
pub fn to_fcat(p: &Presentation) -> Result<String> {
    let c = &*p.category;
    let mut reserved_ids = HashMap::new();
    for x in c.objects() {
        let name = c.object_name(x);
        if !valid_name(name) {
            return Err(Error::Structural(format!("object id `{name}` cannot be written")));
        }
        let id = c.identity(x);
        if c.morphism_name(id) != identity_name(name) {
            return Err(Error::Structural(format!(
                "identity of `{name}` is named `{}`, not `{}`",
                c.morphism_name(id),
                identity_name(name)
            )));
        }
        reserved_ids.insert(identity_name(name), x);
    }
    let mut out = String::from("fcat 1\n");
    out.push_str("objects");
    for x in c.objects() {
        write!(out, " {}", c.object_name(x)).unwrap();
    }
    out.push('\n');
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        let name = c.morphism_name(f);
        if !valid_name(name) || reserved_ids.contains_key(name) {
            return Err(Error::Structural(format!("morphism id `{name}` cannot be written")));
        }
        writeln!(
            out,
            "morphism {name} : {} -> {}",
            c.object_name(c.dom(f)),
            c.object_name(c.cod(f))
        )
        .unwrap();
    }
    for g in c.morphisms() {
        for &f in c.incoming(c.dom(g)) {
            let h = c.comp(g, f);
            let implied = (c.is_identity(g) && h == f) || (c.is_identity(f) && h == g);
            if !implied {
                writeln!(
                    out,
                    "compose {} . {} = {}",
                    c.morphism_name(g),
                    c.morphism_name(f),
                    c.morphism_name(h)
                )
                .unwrap();
            }
        }
    }
    if let Some(classes) = &p.classes {
        for (kind, members) in ["cofibrations", "fibrations", "weak-equivalences"]
            .iter()
            .zip(classes)
        {
            out.push_str(kind);
            for &f in members {
                write!(out, " {}", c.morphism_name(f)).unwrap();
            }
            out.push('\n');
        }
    }
    if let Some(filter) = &p.filter {
        out.push_str("filter");
        for &x in filter {
            write!(out, " {}", c.object_name(x)).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}
