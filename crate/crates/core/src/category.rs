//! Finite categories given by explicit object lists, morphism lists and a
//! total composition table.
//!
//! Objects and morphisms are addressed by dense indices ([`Obj`], [`Mor`])
//! into the order in which they were declared. Every search in the crate runs
//! in that order, so results are reproducible across runs.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Obj(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Mor(pub u32);

impl Obj {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Mor {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismInfo {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
}

/// Name given to the identity morphism of the object `object`.
pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

/// A finite category.
///
/// The composition table is total on composable pairs by construction; the
/// category laws are *not* enforced on construction and are checked by
/// [`validate_category`].
#[derive(Clone, Debug)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismInfo>,
    identities: Vec<Mor>,
    hom: Vec<Vec<Mor>>,
    outgoing: Vec<Vec<Mor>>,
    incoming: Vec<Vec<Mor>>,
    // position of each morphism inside `outgoing[dom]`
    out_pos: Vec<u32>,
    // row of `comp` for a first factor f; the row is indexed by `out_pos` of
    // the second factor, which must start at cod(f)
    comp_offset: Vec<usize>,
    comp: Vec<Mor>,
    object_index: HashMap<String, Obj>,
    morphism_index: HashMap<String, Mor>,
}

impl FinCat {
    /// Assembles a category from raw parts. `compose(g, f)` is queried once
    /// for every composable pair (cod f = dom g) and must return g∘f.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<MorphismInfo>,
        identities: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Result<Mor>,
    ) -> Result<FinCat> {
        let n_obj = objects.len();
        let n_mor = morphisms.len();
        if n_obj > u32::MAX as usize || n_mor > u32::MAX as usize {
            return Err(Error::Structural("category too large".into()));
        }
        let mut object_index = HashMap::with_capacity(n_obj);
        for (i, name) in objects.iter().enumerate() {
            if object_index.insert(name.clone(), Obj(i as u32)).is_some() {
                return Err(Error::Structural(format!("duplicate object id `{name}`")));
            }
        }
        let mut morphism_index = HashMap::with_capacity(n_mor);
        for (i, info) in morphisms.iter().enumerate() {
            if morphism_index.insert(info.name.clone(), Mor(i as u32)).is_some() {
                return Err(Error::Structural(format!(
                    "duplicate morphism id `{}`",
                    info.name
                )));
            }
            if info.dom.index() >= n_obj || info.cod.index() >= n_obj {
                return Err(Error::Structural(format!(
                    "morphism `{}` has an endpoint outside the object list",
                    info.name
                )));
            }
        }
        if identities.len() != n_obj {
            return Err(Error::Structural(
                "identity table does not cover every object".into(),
            ));
        }
        for (x, id) in identities.iter().enumerate() {
            let info = morphisms.get(id.index()).ok_or_else(|| {
                Error::Structural(format!("identity of `{}` is out of range", objects[x]))
            })?;
            if info.dom.index() != x || info.cod.index() != x {
                return Err(Error::Structural(format!(
                    "identity `{}` of `{}` is not an endomorphism of it",
                    info.name, objects[x]
                )));
            }
        }

        let mut hom = vec![Vec::new(); n_obj * n_obj];
        let mut outgoing = vec![Vec::new(); n_obj];
        let mut incoming = vec![Vec::new(); n_obj];
        let mut out_pos = vec![0u32; n_mor];
        for (i, info) in morphisms.iter().enumerate() {
            let m = Mor(i as u32);
            hom[info.dom.index() * n_obj + info.cod.index()].push(m);
            out_pos[i] = outgoing[info.dom.index()].len() as u32;
            outgoing[info.dom.index()].push(m);
            incoming[info.cod.index()].push(m);
        }
        let mut comp_offset = Vec::with_capacity(n_mor);
        let mut total = 0usize;
        for info in &morphisms {
            comp_offset.push(total);
            total += outgoing[info.cod.index()].len();
        }
        let mut comp = Vec::with_capacity(total);
        for info in &morphisms {
            let f = morphism_index[&info.name];
            for &g in &outgoing[info.cod.index()] {
                let h = compose(g, f)?;
                if h.index() >= n_mor {
                    return Err(Error::Structural(format!(
                        "composite of ({},{}) is out of range",
                        morphisms[g.index()].name, info.name
                    )));
                }
                comp.push(h);
            }
        }
        Ok(FinCat {
            objects,
            morphisms,
            identities,
            hom,
            outgoing,
            incoming,
            out_pos,
            comp_offset,
            comp,
            object_index,
            morphism_index,
        })
    }

    /// Thin category of a preorder on `names`; the morphism `x → y` is named
    /// `x<y`.
    pub fn from_preorder(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> Result<FinCat> {
        let mut b = CategoryBuilder::new();
        for name in names {
            b.object(name)?;
        }
        for (i, x) in names.iter().enumerate() {
            for (j, y) in names.iter().enumerate() {
                if i != j && leq(i, j) {
                    b.morphism(&format!("{x}<{y}"), x, y)?;
                }
            }
        }
        b.build_thin()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len() as u32).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len() as u32).map(Mor)
    }

    pub fn object_name(&self, x: Obj) -> &str {
        &self.objects[x.index()]
    }

    pub fn morphism_name(&self, f: Mor) -> &str {
        &self.morphisms[f.index()].name
    }

    pub fn info(&self, f: Mor) -> &MorphismInfo {
        &self.morphisms[f.index()]
    }

    pub fn object(&self, name: &str) -> Option<Obj> {
        self.object_index.get(name).copied()
    }

    pub fn morphism(&self, name: &str) -> Option<Mor> {
        self.morphism_index.get(name).copied()
    }

    pub fn lookup_object(&self, name: &str) -> Result<Obj> {
        self.object(name).ok_or_else(|| Error::Lookup {
            kind: "object",
            name: name.to_string(),
        })
    }

    pub fn lookup_morphism(&self, name: &str) -> Result<Mor> {
        self.morphism(name).ok_or_else(|| Error::Lookup {
            kind: "morphism",
            name: name.to_string(),
        })
    }

    pub fn check_morphism(&self, f: Mor) -> Result<()> {
        if f.index() < self.morphisms.len() {
            Ok(())
        } else {
            Err(Error::Lookup {
                kind: "morphism",
                name: format!("#{}", f.0),
            })
        }
    }

    pub fn check_object(&self, x: Obj) -> Result<()> {
        if x.index() < self.objects.len() {
            Ok(())
        } else {
            Err(Error::Lookup {
                kind: "object",
                name: format!("#{}", x.0),
            })
        }
    }

    #[inline]
    pub fn dom(&self, f: Mor) -> Obj {
        self.morphisms[f.index()].dom
    }

    #[inline]
    pub fn cod(&self, f: Mor) -> Obj {
        self.morphisms[f.index()].cod
    }

    #[inline]
    pub fn identity(&self, x: Obj) -> Mor {
        self.identities[x.index()]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identities[self.dom(f).index()] == f
    }

    #[inline]
    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.hom[x.index() * self.objects.len() + y.index()]
    }

    pub fn outgoing(&self, x: Obj) -> &[Mor] {
        &self.outgoing[x.index()]
    }

    pub fn incoming(&self, x: Obj) -> &[Mor] {
        &self.incoming[x.index()]
    }

    /// g∘f, or `None` when cod f ≠ dom g.
    #[inline]
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.cod(f) != self.dom(g) {
            return None;
        }
        Some(self.comp[self.comp_offset[f.index()] + self.out_pos[g.index()] as usize])
    }

    /// g∘f for a pair known to be composable.
    #[inline]
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        match self.compose(g, f) {
            Some(h) => h,
            None => panic!(
                "composing non-composable pair ({}, {})",
                self.morphism_name(g),
                self.morphism_name(f)
            ),
        }
    }

    /// Composite of a path given in diagrammatic order (first morphism first).
    pub fn comp_path(&self, path: &[Mor]) -> Option<Mor> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    /// Full subcategory on `objects`, which keep their relative order.
    pub fn full_subcategory(&self, objects: &[Obj]) -> Result<(FinCat, Vec<Mor>)> {
        let mut new_obj = vec![None; self.object_count()];
        for (i, &x) in objects.iter().enumerate() {
            self.check_object(x)?;
            new_obj[x.index()] = Some(Obj(i as u32));
        }
        let mut kept = Vec::new();
        let mut new_mor = vec![None; self.morphism_count()];
        let mut infos = Vec::new();
        for f in self.morphisms() {
            if let (Some(d), Some(c)) = (new_obj[self.dom(f).index()], new_obj[self.cod(f).index()]) {
                new_mor[f.index()] = Some(Mor(kept.len() as u32));
                kept.push(f);
                infos.push(MorphismInfo {
                    name: self.morphism_name(f).to_string(),
                    dom: d,
                    cod: c,
                });
            }
        }
        let names = objects.iter().map(|&x| self.object_name(x).to_string()).collect();
        let ids = objects
            .iter()
            .map(|&x| new_mor[self.identity(x).index()].expect("identity kept"))
            .collect();
        let sub = FinCat::from_parts(names, infos, ids, |g, f| {
            let h = self.comp(kept[g.index()], kept[f.index()]);
            Ok(new_mor[h.index()].expect("full subcategory closed under composition"))
        })?;
        Ok((sub, kept))
    }
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.comp_offset == other.comp_offset
            && self.comp == other.comp
    }
}

impl Eq for FinCat {}

/// Incremental, name-based construction of a [`FinCat`]. Declaring an object
/// also declares its identity `id_<object>`; composites with identities
/// default to the unit laws unless given explicitly.
#[derive(Debug, Default, Clone)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<MorphismInfo>,
    identities: Vec<Mor>,
    object_index: HashMap<String, Obj>,
    morphism_index: HashMap<String, Mor>,
    entries: HashMap<(Mor, Mor), Mor>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> Result<Obj> {
        if self.object_index.contains_key(name) {
            return Err(Error::Structural(format!("duplicate object id `{name}`")));
        }
        let x = Obj(self.objects.len() as u32);
        let id = identity_name(name);
        if self.morphism_index.contains_key(&id) {
            return Err(Error::Structural(format!("duplicate morphism id `{id}`")));
        }
        self.objects.push(name.to_string());
        self.object_index.insert(name.to_string(), x);
        let m = Mor(self.morphisms.len() as u32);
        self.morphisms.push(MorphismInfo {
            name: id.clone(),
            dom: x,
            cod: x,
        });
        self.morphism_index.insert(id, m);
        self.identities.push(m);
        Ok(x)
    }

    pub fn morphism(&mut self, name: &str, dom: &str, cod: &str) -> Result<Mor> {
        if self.morphism_index.contains_key(name) {
            return Err(Error::Structural(format!("duplicate morphism id `{name}`")));
        }
        let dom = self.lookup_object(dom)?;
        let cod = self.lookup_object(cod)?;
        let m = Mor(self.morphisms.len() as u32);
        self.morphisms.push(MorphismInfo {
            name: name.to_string(),
            dom,
            cod,
        });
        self.morphism_index.insert(name.to_string(), m);
        Ok(m)
    }

    /// Records `g . f = h`, i.e. g∘f = h.
    pub fn compose(&mut self, g: &str, f: &str, h: &str) -> Result<()> {
        let g = self.lookup_morphism(g)?;
        let f = self.lookup_morphism(f)?;
        let h = self.lookup_morphism(h)?;
        let (gi, fi) = (&self.morphisms[g.index()], &self.morphisms[f.index()]);
        if fi.cod != gi.dom {
            return Err(Error::Structural(format!(
                "composition entry on non-composable pair ({},{})",
                gi.name, fi.name
            )));
        }
        if self.entries.insert((g, f), h).is_some() {
            return Err(Error::Structural(format!(
                "duplicate composition entry for ({},{})",
                gi.name, fi.name
            )));
        }
        Ok(())
    }

    pub fn lookup_object(&self, name: &str) -> Result<Obj> {
        self.object_index.get(name).copied().ok_or_else(|| Error::Lookup {
            kind: "object",
            name: name.to_string(),
        })
    }

    pub fn lookup_morphism(&self, name: &str) -> Result<Mor> {
        self.morphism_index.get(name).copied().ok_or_else(|| Error::Lookup {
            kind: "morphism",
            name: name.to_string(),
        })
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.object_index.contains_key(name)
    }

    pub fn has_morphism(&self, name: &str) -> bool {
        self.morphism_index.contains_key(name)
    }

    fn is_identity(&self, f: Mor) -> bool {
        self.identities[self.morphisms[f.index()].dom.index()] == f
    }

    fn entry(&self, g: Mor, f: Mor) -> Option<Mor> {
        if let Some(&h) = self.entries.get(&(g, f)) {
            return Some(h);
        }
        if self.is_identity(g) {
            Some(f)
        } else if self.is_identity(f) {
            Some(g)
        } else {
            None
        }
    }

    /// Composable pairs (g, f) of non-identity morphisms with no entry, as
    /// names, in declaration order of f then g.
    pub fn missing_entries(&self) -> Vec<(String, String)> {
        let mut missing = Vec::new();
        for f in &self.morphisms {
            let fm = self.morphism_index[&f.name];
            for g in &self.morphisms {
                let gm = self.morphism_index[&g.name];
                if g.dom == f.cod && self.entry(gm, fm).is_none() {
                    missing.push((g.name.clone(), f.name.clone()));
                }
            }
        }
        missing
    }

    pub fn build(self) -> Result<FinCat> {
        let CategoryBuilder {
            objects,
            morphisms,
            identities,
            ..
        } = self.clone();
        FinCat::from_parts(objects, morphisms, identities, |g, f| {
            self.entry(g, f).ok_or_else(|| {
                Error::Structural(format!(
                    "composition table not total: missing ({},{})",
                    self.morphisms[g.index()].name,
                    self.morphisms[f.index()].name
                ))
            })
        })
    }

    /// Builds a thin category: every missing composite is the unique
    /// morphism between its endpoints.
    pub fn build_thin(self) -> Result<FinCat> {
        let CategoryBuilder {
            objects,
            morphisms,
            identities,
            ..
        } = self.clone();
        let mut between: HashMap<(usize, usize), Mor> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if between
                .insert((m.dom.index(), m.cod.index()), Mor(i as u32))
                .is_some()
            {
                return Err(Error::Structural(format!(
                    "thin category has two morphisms ending in `{}`",
                    m.name
                )));
            }
        }
        FinCat::from_parts(objects, morphisms.clone(), identities, |g, f| {
            if let Some(h) = self.entry(g, f) {
                return Ok(h);
            }
            let key = (morphisms[f.index()].dom.index(), morphisms[g.index()].cod.index());
            between.get(&key).copied().ok_or_else(|| {
                Error::Structural(format!(
                    "relation is not transitive at ({},{})",
                    morphisms[g.index()].name,
                    morphisms[f.index()].name
                ))
            })
        })
    }
}

/// A violated category law, with the morphisms witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawViolation {
    Coherence { g: String, f: String, result: String },
    LeftIdentity { f: String },
    RightIdentity { f: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for LawViolation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawViolation::Coherence { g, f, result } => {
                write!(fm, "dom/cod coherence at ({g},{f}) = {result}")
            }
            LawViolation::LeftIdentity { f } => write!(fm, "left identity law at {f}"),
            LawViolation::RightIdentity { f } => write!(fm, "right identity law at {f}"),
            LawViolation::Associativity { h, g, f } => write!(fm, "associativity at ({h},{g},{f})"),
        }
    }
}

/// Lists every violated identity, associativity and dom/cod coherence law.
/// Empty iff `c` is a category.
pub fn validate_category(c: &FinCat) -> Vec<LawViolation> {
    let name = |m: Mor| c.morphism_name(m).to_string();
    let mut out = Vec::new();
    let mut coherent = true;
    for f in c.morphisms() {
        for &g in c.outgoing(c.cod(f)) {
            let h = c.comp(g, f);
            if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) {
                coherent = false;
                out.push(LawViolation::Coherence {
                    g: name(g),
                    f: name(f),
                    result: name(h),
                });
            }
        }
    }
    for f in c.morphisms() {
        if c.comp(c.identity(c.cod(f)), f) != f {
            out.push(LawViolation::LeftIdentity { f: name(f) });
        }
        if c.comp(f, c.identity(c.dom(f))) != f {
            out.push(LawViolation::RightIdentity { f: name(f) });
        }
    }
    if !coherent {
        // composites may land outside their hom-set, so associativity is not
        // even well-typed
        return out;
    }
    for f in c.morphisms() {
        for &g in c.outgoing(c.cod(f)) {
            let gf = c.comp(g, f);
            for &h in c.outgoing(c.cod(g)) {
                if c.comp(h, gf) != c.comp(c.comp(h, g), f) {
                    out.push(LawViolation::Associativity {
                        h: name(h),
                        g: name(g),
                        f: name(f),
                    });
                }
            }
        }
    }
    out
}

/// Whether `f` is left-cancellable.
pub fn is_mono(c: &FinCat, f: Mor) -> Result<bool> {
    c.check_morphism(f)?;
    let x = c.dom(f);
    let mut seen = Vec::new();
    for z in c.objects() {
        seen.clear();
        for &g in c.hom(z, x) {
            let fg = c.comp(f, g);
            if seen.contains(&fg) {
                return Ok(false);
            }
            seen.push(fg);
        }
    }
    Ok(true)
}

/// Whether `f` is right-cancellable.
pub fn is_epi(c: &FinCat, f: Mor) -> Result<bool> {
    c.check_morphism(f)?;
    let y = c.cod(f);
    let mut seen = Vec::new();
    for z in c.objects() {
        seen.clear();
        for &g in c.hom(y, z) {
            let gf = c.comp(g, f);
            if seen.contains(&gf) {
                return Ok(false);
            }
            seen.push(gf);
        }
    }
    Ok(true)
}

/// The inverse of `f`, if it has one.
pub fn is_iso(c: &FinCat, f: Mor) -> Result<Option<Mor>> {
    c.check_morphism(f)?;
    let (x, y) = (c.dom(f), c.cod(f));
    Ok(c
        .hom(y, x)
        .iter()
        .copied()
        .find(|&g| c.comp(g, f) == c.identity(x) && c.comp(f, g) == c.identity(y)))
}

/// First isomorphism `x → y` in hom order.
pub fn find_iso(c: &FinCat, x: Obj, y: Obj) -> Option<(Mor, Mor)> {
    c.hom(x, y).iter().find_map(|&f| {
        c.hom(y, x)
            .iter()
            .copied()
            .find(|&g| c.comp(g, f) == c.identity(x) && c.comp(f, g) == c.identity(y))
            .map(|g| (f, g))
    })
}

fn tuple_name(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

/// Product of a list of categories with componentwise composition. Objects and
/// morphisms are ordered lexicographically, first factor most significant.
/// A single factor is returned with its names unchanged; the empty product is
/// the one-object category `()`.
pub fn product_of(factors: &[&FinCat]) -> Result<FinCat> {
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let obj_radix: Vec<usize> = factors.iter().map(|c| c.object_count()).collect();
    let mor_radix: Vec<usize> = factors.iter().map(|c| c.morphism_count()).collect();
    let n_obj: usize = obj_radix.iter().product();
    let n_mor: usize = mor_radix.iter().product();

    let decode = |mut idx: usize, radix: &[usize]| -> Vec<usize> {
        let mut out = vec![0; radix.len()];
        for k in (0..radix.len()).rev() {
            out[k] = idx % radix[k];
            idx /= radix[k];
        }
        out
    };
    let encode = |digits: &[usize], radix: &[usize]| -> usize {
        digits.iter().zip(radix).fold(0, |acc, (&d, &r)| acc * r + d)
    };

    let mut objects = Vec::with_capacity(n_obj);
    for i in 0..n_obj {
        let digits = decode(i, &obj_radix);
        let parts: Vec<&str> = digits
            .iter()
            .zip(factors)
            .map(|(&d, c)| c.object_name(Obj(d as u32)))
            .collect();
        objects.push(tuple_name(&parts));
    }
    let mut morphisms = Vec::with_capacity(n_mor);
    for i in 0..n_mor {
        let digits = decode(i, &mor_radix);
        let comps: Vec<Mor> = digits.iter().map(|&d| Mor(d as u32)).collect();
        let dom: Vec<usize> = comps.iter().zip(factors).map(|(&m, c)| c.dom(m).index()).collect();
        let cod: Vec<usize> = comps.iter().zip(factors).map(|(&m, c)| c.cod(m).index()).collect();
        let dom = encode(&dom, &obj_radix);
        let cod = encode(&cod, &obj_radix);
        let is_id = comps.iter().zip(factors).all(|(&m, c)| c.is_identity(m));
        let name = if is_id {
            identity_name(&objects[dom])
        } else {
            let parts: Vec<&str> = comps
                .iter()
                .zip(factors)
                .map(|(&m, c)| c.morphism_name(m))
                .collect();
            tuple_name(&parts)
        };
        morphisms.push(MorphismInfo {
            name,
            dom: Obj(dom as u32),
            cod: Obj(cod as u32),
        });
    }
    let identities = (0..n_obj)
        .map(|i| {
            let digits = decode(i, &obj_radix);
            let ids: Vec<usize> = digits
                .iter()
                .zip(factors)
                .map(|(&d, c)| c.identity(Obj(d as u32)).index())
                .collect();
            Mor(encode(&ids, &mor_radix) as u32)
        })
        .collect();
    FinCat::from_parts(objects, morphisms, identities, |g, f| {
        let gd = decode(g.index(), &mor_radix);
        let fd = decode(f.index(), &mor_radix);
        let hd: Vec<usize> = gd
            .iter()
            .zip(&fd)
            .zip(factors)
            .map(|((&g, &f), c)| c.comp(Mor(g as u32), Mor(f as u32)).index())
            .collect();
        Ok(Mor(encode(&hd, &mor_radix) as u32))
    })
}

/// Binary product category `c × d`.
pub fn product_category(c: &FinCat, d: &FinCat) -> Result<FinCat> {
    product_of(&[c, d])
}

/// The power `∏_{i<arity} factor` together with its coordinate bookkeeping.
#[derive(Clone, Debug)]
pub struct PowerCategory {
    pub factor: Arc<FinCat>,
    pub arity: usize,
    pub category: Arc<FinCat>,
}

impl PowerCategory {
    pub fn new(factor: Arc<FinCat>, arity: usize) -> Result<Self> {
        let factors = vec![factor.as_ref(); arity];
        let category = Arc::new(product_of(&factors)?);
        Ok(PowerCategory {
            factor,
            arity,
            category,
        })
    }

    pub fn tuple(&self, coords: &[Obj]) -> Obj {
        debug_assert_eq!(coords.len(), self.arity);
        let r = self.factor.object_count();
        Obj(coords.iter().fold(0usize, |acc, x| acc * r + x.index()) as u32)
    }

    pub fn coordinates(&self, x: Obj) -> Vec<Obj> {
        let r = self.factor.object_count();
        let mut idx = x.index();
        let mut out = vec![Obj(0); self.arity];
        for k in (0..self.arity).rev() {
            out[k] = Obj((idx % r) as u32);
            idx /= r;
        }
        out
    }

    pub fn morphism_tuple(&self, comps: &[Mor]) -> Mor {
        let r = self.factor.morphism_count();
        Mor(comps.iter().fold(0usize, |acc, m| acc * r + m.index()) as u32)
    }

    pub fn morphism_coordinates(&self, f: Mor) -> Vec<Mor> {
        let r = self.factor.morphism_count();
        let mut idx = f.index();
        let mut out = vec![Mor(0); self.arity];
        for k in (0..self.arity).rev() {
            out[k] = Mor((idx % r) as u32);
            idx /= r;
        }
        out
    }
}
