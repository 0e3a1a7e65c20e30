//! The shipped fixtures.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filter::{build_subfib, enumerate_filters, Filter, SubterminalPreorder};
use crate::io::{parse_adjunction, parse_presentation, Presentation};
use crate::model::{Axiom, ClassKind, ModelStructure};
use crate::transfer::{AdjunctionData, EquivalenceClaims};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// A valid model structure.
    Model,
    /// A category without a model section.
    CategoryOnly,
    /// Classes violating exactly the given axiom.
    Mutation(Axiom),
    /// A valid model structure with a filter under which the given class is
    /// not product stable.
    UnstableFilter(ClassKind),
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    pub role: Role,
}

impl Fixture {
    pub fn file_name(&self) -> String {
        format!("{}.fcat", self.name)
    }

    pub fn load(&self) -> Presentation {
        parse_presentation(self.text).expect("shipped fixtures parse")
    }

    pub fn model(&self) -> Option<ModelStructure> {
        self.load().model()
    }
}

macro_rules! fixture {
    ($name:literal, $role:expr) => {
        Fixture {
            name: $name,
            text: include_str!(concat!("../corpus/", $name, ".fcat")),
            role: $role,
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("p2", Role::Model),
    fixture!("p2_fibrant_top", Role::Model),
    fixture!("p2_cofibrant_bottom", Role::Model),
    fixture!("b2", Role::Model),
    fixture!("b2_mixed", Role::Model),
    fixture!("chain3", Role::Model),
    fixture!("chain3_fib", Role::Model),
    fixture!("pointed", Role::Model),
    fixture!("codiscrete2", Role::Model),
    fixture!("c2fold", Role::CategoryOnly),
    fixture!("chain3_cof_unstable", Role::UnstableFilter(ClassKind::Cofibration)),
    fixture!("b2_weq_unstable", Role::UnstableFilter(ClassKind::WeakEquivalence)),
    fixture!("mut_factorization", Role::Mutation(Axiom::Factorization)),
    fixture!("mut_lifting", Role::Mutation(Axiom::Lifting)),
    fixture!("mut_two_of_three", Role::Mutation(Axiom::TwoOutOfThree)),
];

/// Adjunction from `p2` to `b2`: the diagonal left adjoint to the meet.
pub const DELTA_MEET: &str = include_str!("../corpus/delta_meet.fadj");

pub fn fixture(name: &str) -> Result<&'static Fixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Lookup {
            kind: "fixture",
            name: name.to_string(),
        })
}

/// The shipped adjunction with the categories it runs between.
pub fn delta_meet() -> (Presentation, Presentation, AdjunctionData, EquivalenceClaims) {
    let p2 = fixture("p2").unwrap().load();
    let b2 = fixture("b2").unwrap().load();
    let (adj, claims) = parse_adjunction(DELTA_MEET, &p2.category, &b2.category).expect("shipped adjunction parses");
    (p2, b2, adj, claims)
}

/// A model fixture together with one of its filters.
#[derive(Clone, Debug)]
pub struct CorpusPair {
    pub fixture: &'static Fixture,
    pub model: ModelStructure,
    pub subfib: Arc<SubterminalPreorder>,
    pub filter: Filter,
}

impl CorpusPair {
    pub fn label(&self) -> String {
        format!(
            "{} / {{{}}}",
            self.fixture.name,
            self.filter.names(&self.model.base, &self.subfib).join(",")
        )
    }
}

/// Every filter on the Subfib preorder of every valid model fixture.
pub fn corpus_pairs() -> Vec<CorpusPair> {
    let mut out = Vec::new();
    for f in FIXTURES.iter().filter(|f| f.role == Role::Model) {
        let model = f.model().expect("model fixtures carry classes");
        let subfib = Arc::new(build_subfib(&model).expect("model fixtures decide subterminality"));
        for filter in enumerate_filters(&model.base, &subfib) {
            out.push(CorpusPair {
                fixture: f,
                model: model.clone(),
                subfib: subfib.clone(),
                filter,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::verify_model_structure;

    #[test]
    fn roles_match_the_axiom_checker() {
        for f in FIXTURES {
            let p = f.load();
            match f.role {
                Role::CategoryOnly => assert!(p.classes.is_none()),
                Role::Model | Role::UnstableFilter(_) => {
                    let r = verify_model_structure(&p.model().unwrap());
                    assert!(r.holds(), "{}: {:?}", f.name, r.failed_axioms());
                }
                Role::Mutation(axiom) => {
                    let r = verify_model_structure(&p.model().unwrap());
                    assert_eq!(r.failed_axioms(), vec![axiom], "{}", f.name);
                }
            }
        }
    }

    #[test]
    fn unstable_fixtures_carry_their_filter() {
        for f in FIXTURES {
            assert_eq!(matches!(f.role, Role::UnstableFilter(_)), f.load().filter.is_some(), "{}", f.name);
        }
    }

    #[test]
    fn enough_pairs() {
        assert!(corpus_pairs().len() >= 8);
    }

    #[test]
    fn delta_meet_loads() {
        let (_, _, adj, claims) = delta_meet();
        assert_eq!(adj.unit.len(), 2);
        assert_eq!(claims.unit.len(), 2);
    }
}
