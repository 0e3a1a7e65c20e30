use std::fmt;
use std::sync::Arc;

use crate::category::{FinCat, Mor, Obj};
use crate::error::{Error, Result};

/// An object map and a morphism map between two finite categories.
#[derive(Clone, Debug)]
pub struct FunctorData {
    pub source: Arc<FinCat>,
    pub target: Arc<FinCat>,
    pub object_map: Vec<Obj>,
    pub morphism_map: Vec<Mor>,
}

impl FunctorData {
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        object_map: Vec<Obj>,
        morphism_map: Vec<Mor>,
    ) -> Result<Self> {
        let f = FunctorData {
            source,
            target,
            object_map,
            morphism_map,
        };
        f.check_shape()?;
        Ok(f)
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        FunctorData {
            object_map: c.objects().collect(),
            morphism_map: c.morphisms().collect(),
            source: c.clone(),
            target: c,
        }
    }

    /// Builds a functor from name pairs. Identities not listed are sent to
    /// the identity of the image object.
    pub fn from_names(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        objects: &[(String, String)],
        morphisms: &[(String, String)],
    ) -> Result<Self> {
        let mut object_map = vec![None; source.object_count()];
        for (x, y) in objects {
            let x = source.lookup_object(x)?;
            if object_map[x.index()].is_some() {
                return Err(Error::Structural(format!(
                    "object `{}` mapped twice",
                    source.object_name(x)
                )));
            }
            object_map[x.index()] = Some(target.lookup_object(y)?);
        }
        let object_map = object_map
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                y.ok_or_else(|| {
                    Error::Structural(format!(
                        "object `{}` has no image",
                        source.object_name(Obj(i as u32))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut morphism_map = vec![None; source.morphism_count()];
        for (f, g) in morphisms {
            let f = source.lookup_morphism(f)?;
            if morphism_map[f.index()].is_some() {
                return Err(Error::Structural(format!(
                    "morphism `{}` mapped twice",
                    source.morphism_name(f)
                )));
            }
            morphism_map[f.index()] = Some(target.lookup_morphism(g)?);
        }
        let morphism_map = morphism_map
            .into_iter()
            .enumerate()
            .map(|(i, g)| {
                let f = Mor(i as u32);
                match g {
                    Some(g) => Ok(g),
                    None if source.is_identity(f) => {
                        Ok(target.identity(object_map[source.dom(f).index()]))
                    }
                    None => Err(Error::Structural(format!(
                        "morphism `{}` has no image",
                        source.morphism_name(f)
                    ))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FunctorData::new(source, target, object_map, morphism_map)
    }

    fn check_shape(&self) -> Result<()> {
        if self.object_map.len() != self.source.object_count()
            || self.morphism_map.len() != self.source.morphism_count()
        {
            return Err(Error::Structural(
                "functor maps do not cover the source category".into(),
            ));
        }
        for &y in &self.object_map {
            self.target.check_object(y)?;
        }
        for &g in &self.morphism_map {
            self.target.check_morphism(g)?;
        }
        Ok(())
    }

    #[inline]
    pub fn obj(&self, x: Obj) -> Obj {
        self.object_map[x.index()]
    }

    #[inline]
    pub fn mor(&self, f: Mor) -> Mor {
        self.morphism_map[f.index()]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &FunctorData) -> Result<FunctorData> {
        if !Arc::ptr_eq(&self.target, &then.source) && *self.target != *then.source {
            return Err(Error::Structural(
                "functors are not composable: target and source differ".into(),
            ));
        }
        Ok(FunctorData {
            source: self.source.clone(),
            target: then.target.clone(),
            object_map: self.object_map.iter().map(|&x| then.obj(x)).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| then.mor(f)).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    Domain { f: String },
    Codomain { f: String },
    Identity { object: String },
    Composition { g: String, f: String },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Domain { f } => write!(fm, "domain of {f} not preserved"),
            FunctorViolation::Codomain { f } => write!(fm, "codomain of {f} not preserved"),
            FunctorViolation::Identity { object } => {
                write!(fm, "identity of {object} not preserved")
            }
            FunctorViolation::Composition { g, f } => {
                write!(fm, "composite ({g},{f}) not preserved")
            }
        }
    }
}

/// Empty iff the maps preserve dom/cod, identities and composition.
pub fn validate_functor(functor: &FunctorData) -> Result<Vec<FunctorViolation>> {
    functor.check_shape()?;
    let (c, d) = (&functor.source, &functor.target);
    let name = |f: Mor| c.morphism_name(f).to_string();
    let mut out = Vec::new();
    let mut typed = true;
    for f in c.morphisms() {
        let g = functor.mor(f);
        if d.dom(g) != functor.obj(c.dom(f)) {
            typed = false;
            out.push(FunctorViolation::Domain { f: name(f) });
        }
        if d.cod(g) != functor.obj(c.cod(f)) {
            typed = false;
            out.push(FunctorViolation::Codomain { f: name(f) });
        }
    }
    for x in c.objects() {
        if functor.mor(c.identity(x)) != d.identity(functor.obj(x)) {
            out.push(FunctorViolation::Identity {
                object: c.object_name(x).to_string(),
            });
        }
    }
    if typed {
        for f in c.morphisms() {
            for &g in c.outgoing(c.cod(f)) {
                if functor.mor(c.comp(g, f)) != d.comp(functor.mor(g), functor.mor(f)) {
                    out.push(FunctorViolation::Composition {
                        g: name(g),
                        f: name(f),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::product_category;

    fn p2() -> Arc<FinCat> {
        Arc::new(FinCat::from_preorder(&["0", "1"], |i, j| i <= j).unwrap())
    }

    #[test]
    fn identity_functor_is_valid() {
        let c = p2();
        assert!(validate_functor(&FunctorData::identity(c)).unwrap().is_empty());
    }

    #[test]
    fn diagonal_into_square_is_valid() {
        let c = p2();
        let b2 = Arc::new(product_category(&c, &c).unwrap());
        let delta = FunctorData::from_names(
            c.clone(),
            b2,
            &[("0".into(), "(0,0)".into()), ("1".into(), "(1,1)".into())],
            &[("0<1".into(), "(0<1,0<1)".into())],
        )
        .unwrap();
        assert!(validate_functor(&delta).unwrap().is_empty());
    }

    #[test]
    fn swapping_objects_breaks_typing() {
        let c = p2();
        let swap = FunctorData::from_names(
            c.clone(),
            c.clone(),
            &[("0".into(), "1".into()), ("1".into(), "0".into())],
            &[("0<1".into(), "0<1".into())],
        )
        .unwrap();
        let report = validate_functor(&swap).unwrap();
        assert!(report.contains(&FunctorViolation::Domain { f: "0<1".into() }));
    }

    #[test]
    fn short_maps_are_structural() {
        let c = p2();
        let bad = FunctorData {
            source: c.clone(),
            target: c,
            object_map: vec![Obj(0)],
            morphism_map: vec![],
        };
        assert!(validate_functor(&bad).is_err());
    }
}
