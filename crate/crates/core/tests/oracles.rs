//! Cross-checks of engine results against naive recomputation.
//!
//! The helpers here re-derive values from the raw composition tables by
//! brute force (order relations, meets, subsets, 4-tuples of morphisms)
//! without calling the engine's searches.

use std::sync::Arc;

use fqcat::category::{product_category, FinCat, Mor, Obj, PowerCategory};
use fqcat::corpus::{fixture, FIXTURES};
use fqcat::filter::{build_subfib, embed_powerset_filter, enumerate_filters, is_model_filter, IndexFilter};
use fqcat::model::{check_lifting, verify_model_structure, ClassKind, ModelStructure};
use fqcat::quotient::{build_quotient, build_quotient_model, induced_classes_unchecked};
use fqcat::transfer::power_model;
use fqcat::universal::{
    binary_product, exponential, find_initial, find_terminal, finite_colimit, finite_limit, pushout_product,
    ColimitShape, Exponential, LimitShape, Products, PushoutProduct,
};

fn load(name: &str) -> ModelStructure {
    fixture(name).unwrap().model().unwrap()
}

fn category(name: &str) -> Arc<FinCat> {
    fixture(name).unwrap().load().category
}

fn leq(c: &FinCat, x: Obj, y: Obj) -> bool {
    !c.hom(x, y).is_empty()
}

fn is_thin(c: &FinCat) -> bool {
    c.objects().all(|x| c.objects().all(|y| c.hom(x, y).len() <= 1))
}

/// Greatest lower bound by scanning all objects.
fn meet(c: &FinCat, x: Obj, y: Obj) -> Option<Obj> {
    let lower: Vec<Obj> = c.objects().filter(|&z| leq(c, z, x) && leq(c, z, y)).collect();
    lower.iter().copied().find(|&m| lower.iter().all(|&z| leq(c, z, m)))
}

fn join(c: &FinCat, x: Obj, y: Obj) -> Option<Obj> {
    let upper: Vec<Obj> = c.objects().filter(|&z| leq(c, x, z) && leq(c, y, z)).collect();
    upper.iter().copied().find(|&m| upper.iter().all(|&z| leq(c, m, z)))
}

fn obj(c: &FinCat, name: &str) -> Obj {
    c.object(name).unwrap()
}

fn mor(c: &FinCat, name: &str) -> Mor {
    c.morphism(name).unwrap()
}

#[test]
fn b2_counts_and_validity() {
    let p2 = category("p2");
    let b2 = product_category(&p2, &p2).unwrap();
    assert_eq!(b2.object_count(), p2.object_count() * p2.object_count());
    assert_eq!(b2.morphism_count(), p2.morphism_count() * p2.morphism_count());
    assert!(fqcat::category::validate_category(&b2).is_empty());
}

#[test]
fn fold_is_not_mono_by_parallel_pairs() {
    let c = category("c2fold");
    let q = mor(&c, "q");
    let mut witnesses = 0;
    for x in c.morphisms() {
        for y in c.morphisms() {
            if x != y && c.cod(x) == c.dom(q) && c.cod(y) == c.dom(q) && c.dom(x) == c.dom(y) && c.comp(q, x) == c.comp(q, y) {
                witnesses += 1;
            }
        }
    }
    assert!(witnesses > 0);
    assert!(!fqcat::category::is_mono(&c, q).unwrap());
}

#[test]
fn codiscrete_inverse_by_table_search() {
    let c = category("codiscrete2");
    let f = mor(&c, "f");
    let inverse: Vec<Mor> = c
        .morphisms()
        .filter(|&g| c.compose(g, f) == Some(c.identity(c.dom(f))) && c.compose(f, g) == Some(c.identity(c.cod(f))))
        .collect();
    assert_eq!(inverse, vec![mor(&c, "g")]);
    assert_eq!(fqcat::category::is_iso(&c, f).unwrap(), Some(inverse[0]));
}

#[test]
fn terminal_and_initial_by_hom_counts() {
    for f in FIXTURES {
        let c = f.load().category;
        let terminal = c.objects().find(|&t| c.objects().all(|x| c.hom(x, t).len() == 1));
        let initial = c.objects().find(|&i| c.objects().all(|x| c.hom(i, x).len() == 1));
        assert_eq!(find_terminal(&c), terminal, "{}", f.name);
        assert_eq!(find_initial(&c), initial, "{}", f.name);
    }
    let b2 = category("b2");
    assert_eq!(find_terminal(&b2), Some(obj(&b2, "(1,1)")));
    let pointed = category("pointed");
    let z = obj(&pointed, "z");
    assert_eq!(find_initial(&pointed), Some(z));
    assert_eq!(find_terminal(&pointed), Some(z));
    // z is not strict: X → z exists
    assert!(!pointed.hom(obj(&pointed, "X"), z).is_empty());
    assert_eq!(fqcat::universal::find_strict_initial(&pointed), Some((z, false)));
}

#[test]
fn poset_products_are_meets_and_coproducts_joins() {
    for f in FIXTURES {
        let c = f.load().category;
        if !is_thin(&c) {
            continue;
        }
        for x in c.objects() {
            for y in c.objects() {
                assert_eq!(binary_product(&c, x, y).map(|p| p.apex), meet(&c, x, y), "{}", f.name);
                let co = finite_colimit(&c, ColimitShape::BinaryCoproduct(x, y)).unwrap();
                assert_eq!(co.map(|w| w.apex), join(&c, x, y), "{}", f.name);
            }
        }
    }
}

#[test]
fn pullbacks_pushouts_equalizers_by_cone_enumeration() {
    let p2 = category("p2");
    let a = mor(&p2, "a");
    // cones over a ← ? → a: objects below 0 in both directions are just 0
    let apexes: Vec<Obj> = p2.objects().filter(|&z| leq(&p2, z, obj(&p2, "0"))).collect();
    assert_eq!(apexes, vec![obj(&p2, "0")]);
    let pb = finite_limit(&p2, LimitShape::Pullback(a, a)).unwrap().unwrap();
    assert_eq!(pb.apex, obj(&p2, "0"));
    let po = finite_colimit(&p2, ColimitShape::Pushout(a, a)).unwrap().unwrap();
    assert_eq!(po.apex, obj(&p2, "1"));

    let c = category("c2fold");
    let (u, v) = (mor(&c, "u"), mor(&c, "v"));
    // no morphism into A equalizes u and v, and A has no incoming morphism but its identity
    let equalizing: Vec<Mor> = c
        .morphisms()
        .filter(|&e| c.cod(e) == c.dom(u) && c.comp(u, e) == c.comp(v, e))
        .collect();
    assert!(equalizing.is_empty());
    assert!(finite_limit(&c, LimitShape::Equalizer(u, v)).unwrap().is_none());
    // coequalizing arrows out of B: only q, through which everything factors
    let coequalizing: Vec<Mor> = c
        .morphisms()
        .filter(|&e| c.dom(e) == c.cod(u) && c.comp(e, u) == c.comp(e, v))
        .collect();
    assert_eq!(coequalizing, vec![mor(&c, "q")]);
    let coeq = finite_colimit(&c, ColimitShape::Coequalizer(u, v)).unwrap().unwrap();
    assert_eq!(coeq.apex, obj(&c, "T"));
}

#[test]
fn heyting_implication_in_b2() {
    let b2 = category("b2");
    let products = Products::new(b2.clone());
    for k in b2.objects() {
        for y in b2.objects() {
            // largest E with E ∧ K ≤ Y
            let candidates: Vec<Obj> = b2
                .objects()
                .filter(|&e| leq(&b2, meet(&b2, e, k).unwrap(), y))
                .collect();
            let largest = candidates
                .iter()
                .copied()
                .find(|&e| candidates.iter().all(|&z| leq(&b2, z, e)))
                .unwrap();
            match exponential(&products, k, y) {
                Exponential::Found(w) => assert_eq!(w.object, largest),
                other => panic!("{other:?}"),
            }
        }
    }
    let Exponential::Found(w) = exponential(&products, obj(&b2, "(1,0)"), obj(&b2, "(0,1)")) else {
        panic!()
    };
    assert_eq!(w.object, obj(&b2, "(0,1)"));
}

#[test]
fn c2_exponentials_with_base_b_are_not_found() {
    let c = category("c2fold");
    let products = Products::new(c.clone());
    let b = obj(&c, "B");
    // B×B has no apex: hom counts from A would have to be 4 into one object
    let from_a = |z: Obj| c.hom(obj(&c, "A"), z).len();
    assert!(c.objects().all(|z| from_a(z) != 4));
    for y in c.objects() {
        assert!(!matches!(exponential(&products, b, y), Exponential::Found(_)));
    }
}

#[test]
fn pushout_products_from_meets_and_joins() {
    let b2 = category("b2");
    let products = Products::new(b2.clone());
    let i = mor(&b2, "(a,id_0)");
    let j = mor(&b2, "(id_0,a)");
    let PushoutProduct::Found(w) = pushout_product(&products, i, j).unwrap() else {
        panic!()
    };
    let (a, b, cc, d) = (b2.dom(i), b2.cod(i), b2.dom(j), b2.cod(j));
    let corner = join(&b2, meet(&b2, a, d).unwrap(), meet(&b2, b, cc).unwrap()).unwrap();
    assert_eq!(w.corner.apex, corner);
    assert_eq!(corner, obj(&b2, "(0,0)"));
    assert_eq!(w.induced, b2.identity(corner));

    let p2 = category("p2");
    let products = Products::new(p2.clone());
    let a = mor(&p2, "a");
    let PushoutProduct::Found(w) = pushout_product(&products, a, a).unwrap() else {
        panic!()
    };
    assert_eq!(w.corner.apex, obj(&p2, "0"));
    assert_eq!(w.induced, a);
}

/// Counts commuting squares `v∘i = p∘u` with `i` a cofibration, `p` a
/// fibration and one of them a weak equivalence, over all 4-tuples.
fn naive_lifting_squares(m: &ModelStructure) -> usize {
    let c = &*m.base;
    let all: Vec<Mor> = c.morphisms().collect();
    let mut n = 0;
    for &i in &all {
        for &p in &all {
            if !(m.is_cofibration(i) && m.is_fibration(p)) {
                continue;
            }
            if !(m.is_weak_equivalence(i) || m.is_weak_equivalence(p)) {
                continue;
            }
            for &u in &all {
                for &v in &all {
                    let typed = c.dom(u) == c.dom(i) && c.cod(u) == c.dom(p) && c.dom(v) == c.cod(i) && c.cod(v) == c.cod(p);
                    if typed && c.comp(v, i) == c.comp(p, u) {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

#[test]
fn lifting_square_counts_match_naive_count() {
    for f in FIXTURES {
        let Some(m) = f.model() else { continue };
        if m.base.morphism_count() > 12 {
            continue;
        }
        assert_eq!(check_lifting(&m).instances, naive_lifting_squares(&m), "{}", f.name);
    }
}

#[test]
fn small_model_structures_on_p2() {
    assert!(verify_model_structure(&load("p2")).holds());
    assert!(verify_model_structure(&load("p2_fibrant_top")).holds());
    let mutated = verify_model_structure(&load("mut_factorization"));
    assert_eq!(mutated.failed_axioms(), vec![fqcat::model::Axiom::Factorization]);
    // the only non-identity map a has exactly the factorizations id∘a and a∘id
    let m = load("mut_factorization");
    let a = mor(&m.base, "a");
    let tc_then_f = [(m.base.identity(obj(&m.base, "0")), a), (a, m.base.identity(obj(&m.base, "1")))]
        .iter()
        .any(|&(i, p)| m.is_trivial_cofibration(i) && m.is_fibration(p));
    assert!(!tc_then_f);
}

/// In a poset, discrete homotopically subterminal = fibrant, since every
/// map is mono and every diagonal is an identity.
fn naive_poset_subfib(m: &ModelStructure) -> Vec<Obj> {
    let c = &*m.base;
    let top = c.objects().find(|&t| c.objects().all(|x| leq(c, x, t))).unwrap();
    c.objects()
        .filter(|&x| m.is_fibration(c.hom(x, top)[0]))
        .collect()
}

/// Non-empty, upward closed, downward directed subsets by bitmask.
fn naive_filters(c: &FinCat, elements: &[Obj]) -> Vec<Vec<Obj>> {
    let n = elements.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let set: Vec<Obj> = (0..n).filter(|&k| mask >> k & 1 == 1).map(|k| elements[k]).collect();
        let up = set.iter().all(|&x| elements.iter().all(|&y| !leq(c, x, y) || set.contains(&y)));
        let directed = set
            .iter()
            .all(|&x| set.iter().all(|&y| set.iter().any(|&z| leq(c, z, x) && leq(c, z, y))));
        if up && directed {
            out.push(set);
        }
    }
    out
}

#[test]
fn subfib_and_filters_by_subset_enumeration() {
    for f in FIXTURES {
        let Some(m) = f.model() else { continue };
        if !is_thin(&m.base) || verify_model_structure(&m).failed_axioms().len() > 0 {
            continue;
        }
        let s = build_subfib(&m).unwrap();
        let naive = naive_poset_subfib(&m);
        assert_eq!(s.elements, naive, "{}", f.name);
        let filters: Vec<Vec<Obj>> = enumerate_filters(&m.base, &s).iter().map(|phi| phi.objects(&s)).collect();
        let reps: Vec<Obj> = naive
            .iter()
            .enumerate()
            .filter(|&(k, &x)| naive[..k].iter().all(|&y| !(leq(&m.base, x, y) && leq(&m.base, y, x))))
            .map(|(_, &x)| x)
            .collect();
        assert_eq!(s.skeleton, reps, "{}", f.name);
        assert_eq!(filters, naive_filters(&m.base, &reps), "{}", f.name);
    }
    let p2 = load("p2");
    let s = build_subfib(&p2).unwrap();
    let names: Vec<Vec<String>> = enumerate_filters(&p2.base, &s).iter().map(|f| f.names(&p2.base, &s)).collect();
    assert_eq!(names, vec![vec!["1".to_string()], vec!["0".into(), "1".into()]]);
    let fib_top = load("p2_fibrant_top");
    assert_eq!(build_subfib(&fib_top).unwrap().elements, vec![obj(&fib_top.base, "1")]);
    let b2 = load("b2");
    let s = build_subfib(&b2).unwrap();
    assert_eq!(enumerate_filters(&b2.base, &s).len(), 4);
}

#[test]
fn stability_by_meets_in_posets() {
    for f in FIXTURES {
        let Some(m) = f.model() else { continue };
        if !is_thin(&m.base) || !verify_model_structure(&m).holds() {
            continue;
        }
        let c = &*m.base;
        let s = build_subfib(&m).unwrap();
        for phi in enumerate_filters(c, &s) {
            let stable = |kind: ClassKind| {
                m.class(kind).iter().all(|g| {
                    phi.objects(&s).iter().all(|&u| {
                        let (x, y) = (meet(c, c.dom(g), u).unwrap(), meet(c, c.cod(g), u).unwrap());
                        m.in_class(kind, c.hom(x, y)[0])
                    })
                })
            };
            let r = is_model_filter(&m, &s, &phi);
            assert_eq!(r.cofibrations.holds(), stable(ClassKind::Cofibration), "{}", f.name);
            assert_eq!(r.weak_equivalences.holds(), stable(ClassKind::WeakEquivalence), "{}", f.name);
            assert!(stable(ClassKind::Fibration), "{}", f.name);
        }
    }
}

/// In a poset quotient at minimum `W0`, `Hom(X,Y)` is a singleton exactly
/// when `X ∧ W0 ≤ Y`.
#[test]
fn poset_quotient_homs_by_meets() {
    for f in FIXTURES {
        let Some(m) = f.model() else { continue };
        if !is_thin(&m.base) || !verify_model_structure(&m).holds() {
            continue;
        }
        let c = &*m.base;
        let s = build_subfib(&m).unwrap();
        for phi in enumerate_filters(c, &s) {
            let q = build_quotient(m.products(), &s, &phi).unwrap();
            let w0 = phi.minimum_object(&s);
            for x in c.objects() {
                for y in c.objects() {
                    let expected = usize::from(leq(c, meet(c, x, w0).unwrap(), y));
                    assert_eq!(q.category.hom(x, y).len(), expected, "{} {x:?} {y:?}", f.name);
                }
            }
            // induced classes: membership of the normal form X∧W0 → Y∧W0
            let classes = induced_classes_unchecked(&m, &q);
            for g in q.category.morphisms() {
                let (x, y) = (q.category.dom(g), q.category.cod(g));
                let nf = c.hom(meet(c, x, w0).unwrap(), meet(c, y, w0).unwrap())[0];
                for kind in ClassKind::ALL {
                    assert_eq!(classes.class(kind).contains(g), m.in_class(kind, nf));
                }
            }
        }
    }
}

#[test]
fn p2_quotient_at_bottom_is_codiscrete_with_total_classes() {
    let m = load("p2");
    let s = build_subfib(&m).unwrap();
    let phi = fqcat::filter::Filter::new(&m.base, &s, &[0, 1]).unwrap();
    let qm = build_quotient_model(&m, &s, &phi).unwrap();
    let q = &qm.quotient.category;
    assert!(q.objects().all(|x| q.objects().all(|y| q.hom(x, y).len() == 1)));
    for kind in ClassKind::ALL {
        assert_eq!(qm.model.class(kind).len(), q.morphism_count());
    }
}

#[test]
fn filter_product_carrier_by_tuples() {
    let m = load("p2");
    let labels: Vec<String> = vec!["a".into(), "b".into()];
    let power = PowerCategory::new(m.base.clone(), 2).unwrap();
    let pm = power_model(&power, &m).unwrap();
    let s = build_subfib(&pm).unwrap();
    let iphi = IndexFilter::principal(labels, 0b01).unwrap();
    let phi = embed_powerset_filter(&power, &pm, &s, &iphi).unwrap();
    // tuples that are 1 on a set of the filter and 0 elsewhere, closed upward
    let (zero, one) = (obj(&m.base, "0"), obj(&m.base, "1"));
    let mut expected = Vec::new();
    for &j in iphi.sets() {
        let t = power.tuple(&[if j & 1 == 1 { one } else { zero }, if j & 2 == 2 { one } else { zero }]);
        expected.push(power.category.object_name(t).to_string());
    }
    assert_eq!(phi.names(&pm.base, &s), expected);
    assert_eq!(expected, vec!["(1,0)", "(1,1)"]);
    assert!(is_model_filter(&pm, &s, &phi).holds());
}
