//! Finite limits and colimits, exponentials and pushout products.
//!
//! Every construction returns a witness (apex plus legs) that can be
//! re-checked by [`verify_limit`], which enumerates all competing cones and
//! counts mediating morphisms. Colimits are limits in the opposite category,
//! accessed through a [`View`] rather than by building `C^op`.
//!
//! The witness chosen is always the first apex in object order, with the first
//! universal cone in hom-set order.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::category::{FinCat, Mor, Obj};
use crate::error::{Error, Result};

/// A category read either as itself or as its opposite.
#[derive(Clone, Copy)]
pub struct View<'a> {
    pub cat: &'a FinCat,
    pub dual: bool,
}

impl<'a> View<'a> {
    pub fn new(cat: &'a FinCat) -> Self {
        View { cat, dual: false }
    }

    pub fn op(cat: &'a FinCat) -> Self {
        View { cat, dual: true }
    }

    fn hom(&self, x: Obj, y: Obj) -> &'a [Mor] {
        if self.dual {
            self.cat.hom(y, x)
        } else {
            self.cat.hom(x, y)
        }
    }

    fn comp(&self, g: Mor, f: Mor) -> Mor {
        if self.dual {
            self.cat.comp(f, g)
        } else {
            self.cat.comp(g, f)
        }
    }
}

/// A finite diagram in a category: vertex images and arrows `(source, target,
/// morphism)` between vertex positions, with `morphism: D_source → D_target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagram {
    pub vertices: Vec<Obj>,
    pub arrows: Vec<(usize, usize, Mor)>,
}

impl Diagram {
    pub fn empty() -> Self {
        Diagram {
            vertices: vec![],
            arrows: vec![],
        }
    }

    pub fn pair(x: Obj, y: Obj) -> Self {
        Diagram {
            vertices: vec![x, y],
            arrows: vec![],
        }
    }

    /// `X --f--> Z <--g-- Y`, vertices `[X, Y, Z]`.
    pub fn cospan(c: &FinCat, f: Mor, g: Mor) -> Self {
        Diagram {
            vertices: vec![c.dom(f), c.dom(g), c.cod(f)],
            arrows: vec![(0, 2, f), (1, 2, g)],
        }
    }

    /// `X <--f-- Z --g--> Y`, vertices `[X, Y, Z]`.
    pub fn span(c: &FinCat, f: Mor, g: Mor) -> Self {
        Diagram {
            vertices: vec![c.cod(f), c.cod(g), c.dom(f)],
            arrows: vec![(2, 0, f), (2, 1, g)],
        }
    }

    /// `f, g: X ⇉ Y`, vertices `[X, Y]`.
    pub fn parallel(c: &FinCat, f: Mor, g: Mor) -> Self {
        Diagram {
            vertices: vec![c.dom(f), c.cod(f)],
            arrows: vec![(0, 1, f), (0, 1, g)],
        }
    }

    pub fn check(&self, c: &FinCat) -> Result<()> {
        for &x in &self.vertices {
            c.check_object(x)?;
        }
        for &(s, t, m) in &self.arrows {
            c.check_morphism(m)?;
            if s >= self.vertices.len() || t >= self.vertices.len() {
                return Err(Error::Structural(format!(
                    "diagram arrow {} refers to a missing vertex",
                    c.morphism_name(m)
                )));
            }
            if c.dom(m) != self.vertices[s] || c.cod(m) != self.vertices[t] {
                return Err(Error::Structural(format!(
                    "diagram arrow {} does not match its vertices",
                    c.morphism_name(m)
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitShape {
    Terminal,
    BinaryProduct(Obj, Obj),
    Pullback(Mor, Mor),
    Equalizer(Mor, Mor),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColimitShape {
    Initial,
    BinaryCoproduct(Obj, Obj),
    Pushout(Mor, Mor),
    Coequalizer(Mor, Mor),
}

impl LimitShape {
    pub fn diagram(&self, c: &FinCat) -> Result<Diagram> {
        let d = match *self {
            LimitShape::Terminal => Diagram::empty(),
            LimitShape::BinaryProduct(x, y) => Diagram::pair(x, y),
            LimitShape::Pullback(f, g) => {
                check_pair(c, f, g, |c, f, g| c.cod(f) == c.cod(g), "cospan")?;
                Diagram::cospan(c, f, g)
            }
            LimitShape::Equalizer(f, g) => {
                check_pair(c, f, g, parallel, "parallel pair")?;
                Diagram::parallel(c, f, g)
            }
        };
        d.check(c)?;
        Ok(d)
    }
}

impl ColimitShape {
    pub fn diagram(&self, c: &FinCat) -> Result<Diagram> {
        let d = match *self {
            ColimitShape::Initial => Diagram::empty(),
            ColimitShape::BinaryCoproduct(x, y) => Diagram::pair(x, y),
            ColimitShape::Pushout(f, g) => {
                check_pair(c, f, g, |c, f, g| c.dom(f) == c.dom(g), "span")?;
                Diagram::span(c, f, g)
            }
            ColimitShape::Coequalizer(f, g) => {
                check_pair(c, f, g, parallel, "parallel pair")?;
                Diagram::parallel(c, f, g)
            }
        };
        d.check(c)?;
        Ok(d)
    }
}

fn parallel(c: &FinCat, f: Mor, g: Mor) -> bool {
    c.dom(f) == c.dom(g) && c.cod(f) == c.cod(g)
}

fn check_pair(
    c: &FinCat,
    f: Mor,
    g: Mor,
    ok: impl Fn(&FinCat, Mor, Mor) -> bool,
    what: &str,
) -> Result<()> {
    c.check_morphism(f)?;
    c.check_morphism(g)?;
    if !ok(c, f, g) {
        return Err(Error::Structural(format!(
            "({}, {}) is not a {what}",
            c.morphism_name(f),
            c.morphism_name(g)
        )));
    }
    Ok(())
}

/// A limit cone (or, with `colimit`, a colimit cocone) over `diagram`.
/// `legs[i]` runs between the apex and `diagram.vertices[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitWitness {
    pub apex: Obj,
    pub legs: Vec<Mor>,
    pub diagram: Diagram,
    pub colimit: bool,
}

impl LimitWitness {
    fn view<'a>(&self, c: &'a FinCat) -> View<'a> {
        View {
            cat: c,
            dual: self.colimit,
        }
    }
}

fn arrow_ends(view: &View, s: usize, t: usize) -> (usize, usize) {
    if view.dual {
        (t, s)
    } else {
        (s, t)
    }
}

fn is_cone(view: &View, d: &Diagram, legs: &[Mor]) -> bool {
    d.arrows.iter().all(|&(s, t, m)| {
        let (s, t) = arrow_ends(view, s, t);
        view.comp(m, legs[s]) == legs[t]
    })
}

/// All cones over `d` with apex `z`, in lexicographic hom-set order.
pub fn cones(view: View, d: &Diagram, z: Obj) -> Vec<Vec<Mor>> {
    let mut out = Vec::new();
    let mut legs = Vec::with_capacity(d.vertices.len());
    cone_step(&view, d, z, &mut legs, &mut out);
    out
}

fn cone_step(view: &View, d: &Diagram, z: Obj, legs: &mut Vec<Mor>, out: &mut Vec<Vec<Mor>>) {
    let i = legs.len();
    if i == d.vertices.len() {
        out.push(legs.clone());
        return;
    }
    for &m in view.hom(z, d.vertices[i]) {
        legs.push(m);
        let ok = d.arrows.iter().all(|&(s, t, a)| {
            let (s, t) = arrow_ends(view, s, t);
            s.max(t) != i || view.comp(a, legs[s]) == legs[t]
        });
        if ok {
            cone_step(view, d, z, legs, out);
        }
        legs.pop();
    }
}

/// First universal cone over `d` in `view`.
pub fn search_limit(view: View, d: &Diagram) -> Option<LimitWitness> {
    let c = view.cat;
    let counts: Vec<usize> = c.objects().map(|z| cones(view, d, z).len()).collect();
    for p in c.objects() {
        if c.objects().any(|z| view.hom(z, p).len() != counts[z.index()]) {
            continue;
        }
        for legs in cones(view, d, p) {
            let injective = c.objects().all(|z| {
                let mut seen = HashSet::new();
                view.hom(z, p).iter().all(|&m| {
                    let image: Vec<Mor> = legs.iter().map(|&l| view.comp(l, m)).collect();
                    seen.insert(image)
                })
            });
            if injective {
                return Some(LimitWitness {
                    apex: p,
                    legs,
                    diagram: d.clone(),
                    colimit: view.dual,
                });
            }
        }
    }
    None
}

/// Independent re-check of a witness: the legs form a cone, and every
/// competing cone factors through it by exactly one morphism.
pub fn verify_limit(c: &FinCat, w: &LimitWitness) -> bool {
    if w.diagram.check(c).is_err() || w.legs.len() != w.diagram.vertices.len() {
        return false;
    }
    let view = w.view(c);
    for (i, &l) in w.legs.iter().enumerate() {
        let (from, to) = if view.dual {
            (w.diagram.vertices[i], w.apex)
        } else {
            (w.apex, w.diagram.vertices[i])
        };
        if c.check_morphism(l).is_err() || c.dom(l) != from || c.cod(l) != to {
            return false;
        }
    }
    if !is_cone(&view, &w.diagram, &w.legs) {
        return false;
    }
    c.objects().all(|z| {
        cones(view, &w.diagram, z).iter().all(|competitor| {
            view.hom(z, w.apex)
                .iter()
                .filter(|&&m| {
                    w.legs
                        .iter()
                        .zip(competitor)
                        .all(|(&l, &k)| view.comp(l, m) == k)
                })
                .count()
                == 1
        })
    })
}

/// The unique morphism from a cone (or to a cocone) `competitor` at `z` into
/// the witness, if `competitor` is a cone and the witness is universal for it.
pub fn mediate(c: &FinCat, w: &LimitWitness, z: Obj, competitor: &[Mor]) -> Option<Mor> {
    let view = w.view(c);
    view.hom(z, w.apex).iter().copied().find(|&m| {
        w.legs
            .iter()
            .zip(competitor)
            .all(|(&l, &k)| view.comp(l, m) == k)
    })
}

pub fn finite_limit(c: &FinCat, shape: LimitShape) -> Result<Option<LimitWitness>> {
    let d = shape.diagram(c)?;
    Ok(search_limit(View::new(c), &d))
}

pub fn finite_colimit(c: &FinCat, shape: ColimitShape) -> Result<Option<LimitWitness>> {
    let d = shape.diagram(c)?;
    Ok(search_limit(View::op(c), &d))
}

/// First object receiving exactly one morphism from every object.
pub fn find_terminal(c: &FinCat) -> Option<Obj> {
    c.objects()
        .find(|&t| c.objects().all(|x| c.hom(x, t).len() == 1))
}

pub fn find_initial(c: &FinCat) -> Option<Obj> {
    c.objects()
        .find(|&i| c.objects().all(|x| c.hom(i, x).len() == 1))
}

/// The initial object, flagged strict when its identity is the only morphism
/// into it.
pub fn find_strict_initial(c: &FinCat) -> Option<(Obj, bool)> {
    find_initial(c).map(|i| (i, c.incoming(i).len() == 1))
}

/// The unique morphism `x → 1`.
pub fn to_terminal(c: &FinCat, t: Obj, x: Obj) -> Mor {
    c.hom(x, t)[0]
}

/// A binary product `apex` with projections `p1: apex → X`, `p2: apex → Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCone {
    pub left: Obj,
    pub right: Obj,
    pub apex: Obj,
    pub p1: Mor,
    pub p2: Mor,
}

impl ProductCone {
    pub fn witness(&self) -> LimitWitness {
        LimitWitness {
            apex: self.apex,
            legs: vec![self.p1, self.p2],
            diagram: Diagram::pair(self.left, self.right),
            colimit: false,
        }
    }

    /// `⟨a, b⟩: Z → apex`.
    pub fn pair(&self, c: &FinCat, a: Mor, b: Mor) -> Option<Mor> {
        if c.dom(a) != c.dom(b) || c.cod(a) != self.left || c.cod(b) != self.right {
            return None;
        }
        c.hom(c.dom(a), self.apex)
            .iter()
            .copied()
            .find(|&m| c.comp(self.p1, m) == a && c.comp(self.p2, m) == b)
    }
}

pub fn binary_product(c: &FinCat, x: Obj, y: Obj) -> Option<ProductCone> {
    search_limit(View::new(c), &Diagram::pair(x, y)).map(|w| ProductCone {
        left: x,
        right: y,
        apex: w.apex,
        p1: w.legs[0],
        p2: w.legs[1],
    })
}

/// Lazily computed canonical binary products of one category.
#[derive(Debug)]
pub struct Products {
    cat: Arc<FinCat>,
    cells: Vec<OnceLock<Option<ProductCone>>>,
}

impl Products {
    pub fn new(cat: Arc<FinCat>) -> Self {
        let n = cat.object_count();
        Products {
            cat,
            cells: (0..n * n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn category(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn get(&self, x: Obj, y: Obj) -> Option<&ProductCone> {
        let n = self.cat.object_count();
        self.cells[x.index() * n + y.index()]
            .get_or_init(|| binary_product(&self.cat, x, y))
            .as_ref()
    }

    pub fn require(&self, x: Obj, y: Obj) -> Result<&ProductCone> {
        self.get(x, y).ok_or_else(|| {
            Error::Missing(format!(
                "product {}×{}",
                self.cat.object_name(x),
                self.cat.object_name(y)
            ))
        })
    }

    /// `f × g: X×U → Y×V`.
    pub fn times(&self, f: Mor, g: Mor) -> Result<Mor> {
        let c = &*self.cat;
        let src = *self.require(c.dom(f), c.dom(g))?;
        let tgt = *self.require(c.cod(f), c.cod(g))?;
        Ok(tgt
            .pair(c, c.comp(f, src.p1), c.comp(g, src.p2))
            .expect("product is universal"))
    }

    /// `f × U = f × id_U`.
    pub fn times_object(&self, f: Mor, u: Obj) -> Result<Mor> {
        self.times(f, self.cat.identity(u))
    }

    /// The diagonal `U → U×U`.
    pub fn diagonal(&self, u: Obj) -> Result<Mor> {
        let p = *self.require(u, u)?;
        let id = self.cat.identity(u);
        Ok(p.pair(&self.cat, id, id).expect("product is universal"))
    }
}

/// Outcome of an exponential search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Exponential {
    Found(ExponentialWitness),
    Absent,
    /// A product `Z×K` needed to state the universal property is missing.
    Inconclusive { missing: String },
}

/// `Y^K` with its evaluation `ev: Y^K × K → Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentialWitness {
    pub base: Obj,
    pub target: Obj,
    pub object: Obj,
    pub product: ProductCone,
    pub evaluation: Mor,
}

fn product_column(products: &Products, k: Obj) -> Result<Vec<ProductCone>, String> {
    let c = products.category();
    c.objects()
        .map(|z| {
            products.get(z, k).copied().ok_or_else(|| {
                format!("product {}×{}", c.object_name(z), c.object_name(k))
            })
        })
        .collect()
}

/// Searches for `Y^K`: the first object `E` with an evaluation such that
/// `m ↦ ev∘(m×K)` is a bijection `Hom(Z,E) → Hom(Z×K, Y)` for every `Z`.
pub fn exponential(products: &Products, k: Obj, y: Obj) -> Exponential {
    let c = &**products.category();
    let column = match product_column(products, k) {
        Ok(col) => col,
        Err(missing) => return Exponential::Inconclusive { missing },
    };
    let target_sizes: Vec<usize> = column.iter().map(|zk| c.hom(zk.apex, y).len()).collect();
    for e in c.objects() {
        if c.objects().any(|z| c.hom(z, e).len() != target_sizes[z.index()]) {
            continue;
        }
        let ek = column[e.index()];
        for &ev in c.hom(ek.apex, y) {
            let ok = c.objects().all(|z| {
                let zk = column[z.index()];
                let mut seen = HashSet::new();
                c.hom(z, e).iter().all(|&m| {
                    let mk = ek.pair(c, c.comp(m, zk.p1), zk.p2).expect("product is universal");
                    seen.insert(c.comp(ev, mk))
                })
            });
            if ok {
                return Exponential::Found(ExponentialWitness {
                    base: k,
                    target: y,
                    object: e,
                    product: ek,
                    evaluation: ev,
                });
            }
        }
    }
    Exponential::Absent
}

/// Re-checks an exponential witness by counting, for every `g: Z×K → Y`, the
/// morphisms `m: Z → E` with `ev∘(m×K) = g`.
pub fn verify_exponential(products: &Products, w: &ExponentialWitness) -> bool {
    let c = &**products.category();
    let ek = w.product;
    if !verify_limit(c, &ek.witness())
        || ek.left != w.object
        || ek.right != w.base
        || c.dom(w.evaluation) != ek.apex
        || c.cod(w.evaluation) != w.target
    {
        return false;
    }
    c.objects().all(|z| {
        let Some(zk) = products.get(z, w.base).copied() else {
            return false;
        };
        if !verify_limit(c, &zk.witness()) {
            return false;
        }
        c.hom(zk.apex, w.target).iter().all(|&g| {
            c.hom(z, w.object)
                .iter()
                .filter(|&&m| {
                    let mk = ek.pair(c, c.comp(m, zk.p1), zk.p2);
                    mk.map(|mk| c.comp(w.evaluation, mk)) == Some(g)
                })
                .count()
                == 1
        })
    })
}

/// `i□j: A×D ⊔_{A×C} B×C → B×D` for `i: A → B`, `j: C → D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushoutProductWitness {
    pub i: Mor,
    pub j: Mor,
    pub ac: ProductCone,
    pub ad: ProductCone,
    pub bc: ProductCone,
    pub bd: ProductCone,
    /// Pushout of `A×D ← A×C → B×C`; legs `[to A×D side, to B×C side, from A×C]`.
    pub corner: LimitWitness,
    pub induced: Mor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PushoutProduct {
    Found(Box<PushoutProductWitness>),
    Inconclusive { missing: String },
}

pub fn pushout_product(products: &Products, i: Mor, j: Mor) -> Result<PushoutProduct> {
    let c = &**products.category();
    c.check_morphism(i)?;
    c.check_morphism(j)?;
    let (a, b, cc, d) = (c.dom(i), c.cod(i), c.dom(j), c.cod(j));
    let mut cones = Vec::with_capacity(4);
    for (x, y) in [(a, cc), (a, d), (b, cc), (b, d)] {
        match products.get(x, y) {
            Some(p) => cones.push(*p),
            None => {
                return Ok(PushoutProduct::Inconclusive {
                    missing: format!("product {}×{}", c.object_name(x), c.object_name(y)),
                })
            }
        }
    }
    let (ac, ad, bc, bd) = (cones[0], cones[1], cones[2], cones[3]);
    let a_j = products.times(c.identity(a), j)?;
    let i_c = products.times(i, c.identity(cc))?;
    let i_d = products.times(i, c.identity(d))?;
    let b_j = products.times(c.identity(b), j)?;
    let span = Diagram::span(c, a_j, i_c);
    let Some(corner) = search_limit(View::op(c), &span) else {
        return Ok(PushoutProduct::Inconclusive {
            missing: format!(
                "pushout of {} and {}",
                c.morphism_name(a_j),
                c.morphism_name(i_c)
            ),
        });
    };
    let competitor = [i_d, b_j, c.comp(i_d, a_j)];
    let induced = mediate(c, &corner, bd.apex, &competitor).expect("pushout is universal");
    Ok(PushoutProduct::Found(Box::new(PushoutProductWitness {
        i,
        j,
        ac,
        ad,
        bc,
        bd,
        corner,
        induced,
    })))
}

/// Re-checks a pushout-product witness: all four products and the corner are
/// universal and the induced map commutes with both injections.
pub fn verify_pushout_product(c: &FinCat, w: &PushoutProductWitness) -> bool {
    [w.ac, w.ad, w.bc, w.bd]
        .iter()
        .all(|p| verify_limit(c, &p.witness()))
        && verify_limit(c, &w.corner)
        && w.corner.legs.len() == 3
        && c.dom(w.induced) == w.corner.apex
        && c.cod(w.induced) == w.bd.apex
        && {
            let i_d = w.bd.pair(c, c.comp(w.i, w.ad.p1), w.ad.p2);
            let b_j = w.bd.pair(c, w.bc.p1, c.comp(w.j, w.bc.p2));
            i_d == Some(c.comp(w.induced, w.corner.legs[0]))
                && b_j == Some(c.comp(w.induced, w.corner.legs[1]))
        }
}

/// Terminal object, all binary products and all equalizers.
pub fn finitely_complete(c: &FinCat) -> std::result::Result<(), String> {
    completeness(View::new(c))
}

/// Initial object, all binary coproducts and all coequalizers.
pub fn finitely_cocomplete(c: &FinCat) -> std::result::Result<(), String> {
    completeness(View::op(c))
}

fn completeness(view: View) -> std::result::Result<(), String> {
    let c = view.cat;
    let (lim, pair_word, eq_word) = if view.dual {
        ("initial object", "coproduct", "coequalizer")
    } else {
        ("terminal object", "product", "equalizer")
    };
    if search_limit(view, &Diagram::empty()).is_none() {
        return Err(format!("no {lim}"));
    }
    for x in c.objects() {
        for y in c.objects() {
            if search_limit(view, &Diagram::pair(x, y)).is_none() {
                return Err(format!(
                    "no {pair_word} of {} and {}",
                    c.object_name(x),
                    c.object_name(y)
                ));
            }
        }
    }
    for x in c.objects() {
        for y in c.objects() {
            let hom = c.hom(x, y);
            for (k, &f) in hom.iter().enumerate() {
                for &g in &hom[k + 1..] {
                    if search_limit(view, &Diagram::parallel(c, f, g)).is_none() {
                        return Err(format!(
                            "no {eq_word} of {} and {}",
                            c.morphism_name(f),
                            c.morphism_name(g)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{product_category, CategoryBuilder};

    fn p2() -> Arc<FinCat> {
        Arc::new(FinCat::from_preorder(&["0", "1"], |i, j| i <= j).unwrap())
    }

    fn b2() -> Arc<FinCat> {
        let p = p2();
        Arc::new(product_category(&p, &p).unwrap())
    }

    fn c2() -> Arc<FinCat> {
        let mut b = CategoryBuilder::new();
        for o in ["A", "B", "T"] {
            b.object(o).unwrap();
        }
        b.morphism("u", "A", "B").unwrap();
        b.morphism("v", "A", "B").unwrap();
        b.morphism("q", "B", "T").unwrap();
        b.morphism("w", "A", "T").unwrap();
        b.compose("q", "u", "w").unwrap();
        b.compose("q", "v", "w").unwrap();
        Arc::new(b.build().unwrap())
    }

    fn o(c: &FinCat, n: &str) -> Obj {
        c.object(n).unwrap()
    }

    fn m(c: &FinCat, n: &str) -> Mor {
        c.morphism(n).unwrap()
    }

    #[test]
    fn terminal_objects() {
        assert_eq!(find_terminal(&p2()), Some(Obj(1)));
        let b = b2();
        assert_eq!(find_terminal(&b), Some(o(&b, "(1,1)")));
        let discrete = FinCat::from_preorder(&["x", "y"], |i, j| i == j).unwrap();
        assert_eq!(find_terminal(&discrete), None);
    }

    #[test]
    fn strict_initial_objects() {
        assert_eq!(find_strict_initial(&p2()), Some((Obj(0), true)));
        let point = FinCat::from_preorder(&["*"], |_, _| true).unwrap();
        assert_eq!(find_strict_initial(&point), Some((Obj(0), true)));
        let mut b = CategoryBuilder::new();
        b.object("z").unwrap();
        b.object("X").unwrap();
        b.morphism("i", "z", "X").unwrap();
        b.morphism("t", "X", "z").unwrap();
        b.morphism("e", "X", "X").unwrap();
        b.compose("t", "i", "id_z").unwrap();
        b.compose("i", "t", "e").unwrap();
        b.compose("e", "e", "e").unwrap();
        b.compose("e", "i", "i").unwrap();
        b.compose("t", "e", "t").unwrap();
        let pointed = b.build().unwrap();
        assert_eq!(find_strict_initial(&pointed), Some((Obj(0), false)));
    }

    #[test]
    fn lattice_products_and_coproducts() {
        let b = b2();
        let (x, y) = (o(&b, "(1,0)"), o(&b, "(0,1)"));
        let prod = finite_limit(&b, LimitShape::BinaryProduct(x, y)).unwrap().unwrap();
        assert_eq!(prod.apex, o(&b, "(0,0)"));
        assert!(verify_limit(&b, &prod));
        let coprod = finite_colimit(&b, ColimitShape::BinaryCoproduct(x, y)).unwrap().unwrap();
        assert_eq!(coprod.apex, o(&b, "(1,1)"));
        assert!(verify_limit(&b, &coprod));
    }

    #[test]
    fn chain_pullback_and_pushout() {
        let p = p2();
        let a = m(&p, "0<1");
        let pb = finite_limit(&p, LimitShape::Pullback(a, a)).unwrap().unwrap();
        assert_eq!(pb.apex, Obj(0));
        let po = finite_colimit(&p, ColimitShape::Pushout(a, a)).unwrap().unwrap();
        assert_eq!(po.apex, Obj(1));
        assert!(verify_limit(&p, &pb) && verify_limit(&p, &po));
    }

    #[test]
    fn fold_has_coequalizer_but_no_equalizer() {
        let c = c2();
        let (u, v) = (m(&c, "u"), m(&c, "v"));
        assert_eq!(finite_limit(&c, LimitShape::Equalizer(u, v)).unwrap(), None);
        let coeq = finite_colimit(&c, ColimitShape::Coequalizer(u, v)).unwrap().unwrap();
        assert_eq!(coeq.apex, o(&c, "T"));
        assert!(verify_limit(&c, &coeq));
    }

    #[test]
    fn malformed_shapes_are_structural() {
        let c = c2();
        let (u, q) = (m(&c, "u"), m(&c, "q"));
        assert!(finite_limit(&c, LimitShape::Equalizer(u, q)).is_err());
        assert!(finite_limit(&c, LimitShape::Pullback(u, q)).is_err());
    }

    #[test]
    fn heyting_implication_in_square() {
        let b = b2();
        let products = Products::new(b.clone());
        match exponential(&products, o(&b, "(1,0)"), o(&b, "(0,1)")) {
            Exponential::Found(w) => {
                assert_eq!(w.object, o(&b, "(0,1)"));
                assert!(verify_exponential(&products, &w));
            }
            other => panic!("{other:?}"),
        }
        let top = o(&b, "(1,1)");
        for y in b.objects() {
            match exponential(&products, top, y) {
                Exponential::Found(w) => assert_eq!(w.object, y),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn exponential_without_products_is_inconclusive() {
        let c = c2();
        let products = Products::new(c.clone());
        assert!(matches!(
            exponential(&products, o(&c, "B"), o(&c, "T")),
            Exponential::Inconclusive { .. }
        ));
    }

    #[test]
    fn pushout_product_of_independent_atoms_is_identity() {
        let b = b2();
        let products = Products::new(b.clone());
        let i = m(&b, "(0<1,id_0)");
        let j = m(&b, "(id_0,0<1)");
        let PushoutProduct::Found(w) = pushout_product(&products, i, j).unwrap() else {
            panic!("missing pieces")
        };
        assert_eq!(w.corner.apex, o(&b, "(0,0)"));
        assert_eq!(w.induced, b.identity(o(&b, "(0,0)")));
        assert!(verify_pushout_product(&b, &w));
    }

    #[test]
    fn pushout_product_in_chain() {
        let p = p2();
        let products = Products::new(p.clone());
        let a = m(&p, "0<1");
        let PushoutProduct::Found(w) = pushout_product(&products, a, a).unwrap() else {
            panic!("missing pieces")
        };
        assert_eq!(w.corner.apex, Obj(0));
        assert_eq!(w.induced, a);
        // i□(0→1) is i itself, as 0 is strict initial
        let PushoutProduct::Found(w) = pushout_product(&products, p.identity(Obj(1)), a).unwrap()
        else {
            panic!("missing pieces")
        };
        assert!(p.is_identity(w.induced));
    }

    #[test]
    fn completeness_of_fixtures() {
        assert!(finitely_complete(&b2()).is_ok());
        assert!(finitely_cocomplete(&b2()).is_ok());
        assert!(finitely_complete(&c2()).is_err());
    }
}
