use std::sync::Arc;

use proptest::prelude::*;

use fqcat::category::{find_iso, is_iso, is_mono, product_category, validate_category, FinCat, Obj, PowerCategory};
use fqcat::corpus::{fixture, Role, FIXTURES};
use fqcat::filter::{build_subfib, enumerate_filters, enumerate_index_filters, is_model_filter, is_product_stable, Filter};
use fqcat::io::{parse_adjunction, parse_presentation, to_fcat, Presentation};
use fqcat::iso::{categories_isomorphic, DEFAULT_ISO_BUDGET};
use fqcat::model::{
    is_discrete_homotopically_subterminal, iso_closure_violations, terminal_object, verify_model_structure, ClassKind,
    ModelStructure,
};
use fqcat::pipeline::{run, Command, Options};
use fqcat::quotient::{build_quotient, limit_diagrams};
use fqcat::transfer::{
    build_filter_product, diagonal, diagonal_meet_adjunction, filter_product_quotient, induced_adjunction, pi_phi,
    validate_adjunction,
};
use fqcat::universal::{cones, pushout_product, search_limit, verify_limit, Diagram, Products, PushoutProduct, View};

/// Down-sets of a random poset on `k` points, ordered by inclusion.
fn lattice(k: usize, relation: &[bool]) -> Arc<FinCat> {
    let mut below = vec![vec![false; k]; k];
    for i in 0..k {
        below[i][i] = true;
        for j in i + 1..k {
            below[i][j] = relation[i * k + j];
        }
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if below[i][m] && below[m][j] {
                    below[i][j] = true;
                }
            }
        }
    }
    let downsets: Vec<u32> = (0u32..1 << k)
        .filter(|&s| (0..k).all(|j| s >> j & 1 == 0 || (0..k).all(|i| !below[i][j] || s >> i & 1 == 1)))
        .collect();
    let names: Vec<String> = downsets
        .iter()
        .map(|&s| format!("d{}", (0..k).filter(|&i| s >> i & 1 == 1).map(|i| i.to_string()).collect::<String>()))
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Arc::new(FinCat::from_preorder(&refs, |a, b| downsets[a] & !downsets[b] == 0).unwrap())
}

fn arb_lattice() -> impl Strategy<Value = Arc<FinCat>> {
    (1usize..=3)
        .prop_flat_map(|k| (Just(k), proptest::collection::vec(any::<bool>(), k * k)))
        .prop_map(|(k, r)| lattice(k, &r))
}

/// One of the three structures every finite lattice carries.
fn structure(c: Arc<FinCat>, which: u8) -> ModelStructure {
    let all: Vec<_> = c.morphisms().collect();
    match which % 3 {
        0 => ModelStructure::trivial(c),
        1 => ModelStructure::new(c, [], all.clone(), all).unwrap(),
        _ => ModelStructure::new(c, all.clone(), [], all).unwrap(),
    }
}

fn arb_model() -> impl Strategy<Value = ModelStructure> {
    (arb_lattice(), any::<u8>()).prop_map(|(c, w)| structure(c, w))
}

fn valid_fixture_models() -> Vec<ModelStructure> {
    FIXTURES
        .iter()
        .filter(|f| matches!(f.role, Role::Model | Role::UnstableFilter(_)))
        .map(|f| f.model().unwrap())
        .collect()
}

fn fixture_categories() -> Vec<Arc<FinCat>> {
    let base: Vec<Arc<FinCat>> = FIXTURES.iter().map(|f| f.load().category).collect();
    let mut out = base.clone();
    for name in ["c2fold", "codiscrete2", "p2"] {
        let c = fixture(name).unwrap().load().category;
        out.push(Arc::new(product_category(&c, &c).unwrap()));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattices_products_and_powers_are_categories(c in arb_lattice(), n in 1usize..=2) {
        let p2 = fixture("p2").unwrap().load().category;
        let prod = Arc::new(product_category(&c, &p2).unwrap());
        let power = PowerCategory::new(c.clone(), n).unwrap();
        for d in [c.clone(), prod, power.category.clone()] {
            prop_assert!(validate_category(&d).is_empty());
            for x in d.objects() {
                let id = d.identity(x);
                prop_assert_eq!(is_iso(&d, id).unwrap(), Some(id));
            }
        }
        for x in power.category.objects() {
            prop_assert_eq!(power.tuple(&power.coordinates(x)), x);
        }
    }

    #[test]
    fn isomorphism_search_is_symmetric(c in arb_lattice(), seed in any::<u64>()) {
        // the same lattice with objects listed in a shuffled order
        let n = c.object_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let names: Vec<String> = perm.iter().map(|&i| format!("r{}", c.object_name(Obj(i as u32)))).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let d = Arc::new(FinCat::from_preorder(&refs, |a, b| !c.hom(Obj(perm[a] as u32), Obj(perm[b] as u32)).is_empty()).unwrap());
        let there = categories_isomorphic(&c, &d, DEFAULT_ISO_BUDGET).unwrap();
        let back = categories_isomorphic(&d, &c, DEFAULT_ISO_BUDGET).unwrap();
        let (f, g) = there.witness().unwrap();
        prop_assert!(back.is_isomorphic());
        let round = f.then(g).unwrap();
        prop_assert_eq!(&round.object_map, &c.objects().collect::<Vec<_>>());
        prop_assert_eq!(&round.morphism_map, &c.morphisms().collect::<Vec<_>>());
    }

    #[test]
    fn limit_witnesses_recheck(c in arb_lattice()) {
        for (_, dual, diagram, _) in limit_diagrams(&c) {
            let w = search_limit(View { cat: &c, dual }, &diagram);
            prop_assert!(w.is_some(), "lattices are finitely bicomplete");
            prop_assert!(verify_limit(&c, &w.unwrap()));
        }
    }

    #[test]
    fn pushout_products_are_symmetric_up_to_iso(c in arb_lattice(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let products = Products::new(c.clone());
        let all: Vec<_> = c.morphisms().collect();
        let (i, j) = (*a.get(&all), *b.get(&all));
        let (PushoutProduct::Found(x), PushoutProduct::Found(y)) =
            (pushout_product(&products, i, j).unwrap(), pushout_product(&products, j, i).unwrap())
        else {
            return Err(TestCaseError::fail("lattices have pushout products"));
        };
        prop_assert!(find_iso(&c, x.corner.apex, y.corner.apex).is_some());
        prop_assert_eq!(c.cod(x.induced), c.cod(y.induced));
    }

    #[test]
    fn random_lattice_structures_are_closed(m in arb_model()) {
        prop_assert!(verify_model_structure(&m).holds());
        prop_assert!(iso_closure_violations(&m).is_empty());
        let t = terminal_object(&m).unwrap();
        prop_assert_eq!(is_discrete_homotopically_subterminal(&m, t), Ok(true));
    }

    #[test]
    fn filters_on_random_structures(m in arb_model()) {
        let s = build_subfib(&m).unwrap();
        let top = Filter::principal(&m.base, &s, s.top).unwrap();
        prop_assert_eq!(top.minimum(), s.top);
        prop_assert!(is_model_filter(&m, &s, &top).holds());
        for phi in enumerate_filters(&m.base, &s) {
            prop_assert!(phi.contains(s.top));
            prop_assert!(phi.members().iter().all(|&a| s.leq(phi.minimum(), a)));
            prop_assert!(is_product_stable(&m, ClassKind::Fibration, &s, &phi).holds());
        }
    }

    #[test]
    fn pi_phi_is_projection_after_diagonal(which in 0usize..2, n in 1usize..=2, pick in any::<prop::sample::Index>()) {
        let m = fixture(["p2", "b2"][which]).unwrap().model().unwrap();
        let m = ModelStructure::trivial(m.base.clone());
        let labels: Vec<String> = ["a", "b"][..n].iter().map(|s| s.to_string()).collect();
        let filters = enumerate_index_filters(&labels).unwrap();
        let fp = build_filter_product(&m, pick.get(&filters)).unwrap();
        let (q, _) = filter_product_quotient(&fp).unwrap();
        let pi = pi_phi(&fp, &q).unwrap();
        let delta = diagonal(&fp.power).unwrap();
        for x in m.base.objects() {
            prop_assert_eq!(pi.obj(x), q.projection.obj(delta.obj(x)));
        }
        for f in m.base.morphisms() {
            prop_assert_eq!(pi.mor(f), q.projection.mor(delta.mor(f)));
        }
    }

    #[test]
    fn induced_diagonal_meet_satisfies_triangles(c in arb_lattice(), pick in any::<prop::sample::Index>()) {
        let sq = PowerCategory::new(c.clone(), 2).unwrap();
        let adj = diagonal_meet_adjunction(&c, &sq).unwrap();
        let ms = ModelStructure::trivial(c.clone());
        let mt = ModelStructure::trivial(sq.category.clone());
        let ss = build_subfib(&ms).unwrap();
        let st = build_subfib(&mt).unwrap();
        let filters = enumerate_filters(&c, &ss);
        let fs = pick.get(&filters);
        let w0 = fs.minimum_object(&ss);
        let ft = Filter::principal(&mt.base, &st, st.class_of(sq.tuple(&[w0, w0])).unwrap()).unwrap();
        let qs = build_quotient(ms.products(), &ss, fs).unwrap();
        let qt = build_quotient(mt.products(), &st, &ft).unwrap();
        let induced = induced_adjunction(&adj, &qs, &qt).unwrap();
        prop_assert!(validate_adjunction(&induced).unwrap().is_empty());
    }

    #[test]
    fn canonical_text_is_a_fixed_point(m in arb_model(), with_filter in any::<bool>()) {
        let s = build_subfib(&m).unwrap();
        let filter = with_filter.then(|| Filter::principal(&m.base, &s, s.top).unwrap().objects(&s));
        let p = Presentation::new(m.base.clone(), Some(&m), filter).unwrap();
        let text = to_fcat(&p).unwrap();
        let back = parse_presentation(&text).unwrap();
        prop_assert_eq!(to_fcat(&back).unwrap(), text.clone());
        prop_assert!(categories_isomorphic(&m.base, &back.category, DEFAULT_ISO_BUDGET).unwrap().is_isomorphic());
    }

    #[test]
    fn parser_never_panics_on_token_soup(words in proptest::collection::vec(
        prop::sample::select(vec![
            "fcat", "1", "2", "objects", "morphism", "compose", "cofibrations", "fibrations",
            "weak-equivalences", "filter", "a", "b", "x", "id_x", ":", "->", ".", "=", "\n", "#", "(", ")", "\t",
        ]),
        0..60,
    )) {
        let text = words.join(" ");
        let _ = parse_presentation(&text);
        let _ = parse_presentation(&format!("fcat 1\n{text}"));
    }

    #[test]
    fn parser_never_panics_on_mutated_fixtures(f in prop::sample::select(FIXTURES.to_vec()), cut in any::<prop::sample::Index>(), byte in any::<u8>()) {
        let mut bytes = f.text.as_bytes().to_vec();
        let k = cut.index(bytes.len());
        bytes[k] = byte;
        let text = String::from_utf8_lossy(&bytes);
        if let Ok(p) = parse_presentation(&text) {
            prop_assert!(validate_category(&p.category).is_empty());
        }
        let truncated = String::from_utf8_lossy(&f.text.as_bytes()[..k]);
        let _ = parse_presentation(&truncated);
        let p2 = fixture("p2").unwrap().load();
        let b2 = fixture("b2").unwrap().load();
        let _ = parse_adjunction(&text, &p2.category, &b2.category);
    }

    #[test]
    fn reports_are_deterministic(m in arb_model()) {
        let p = Presentation::new(m.base.clone(), Some(&m), None).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("m.fcat");
        std::fs::write(&file, to_fcat(&p).unwrap()).unwrap();
        for json in [false, true] {
            let opts = Options { json, ..Options::default() };
            let cmd = Command::ModelCheck { file: file.clone() };
            let a = run(&cmd, &opts);
            let b = run(&cmd, &opts);
            prop_assert_eq!(a.code, 0);
            prop_assert_eq!(a.stdout, b.stdout);
        }
    }
}

#[test]
fn valid_fixtures_are_iso_closed_with_subterminal_terminal() {
    for m in valid_fixture_models() {
        assert!(verify_model_structure(&m).holds());
        assert!(iso_closure_violations(&m).is_empty());
        let t = terminal_object(&m).unwrap();
        assert_eq!(is_discrete_homotopically_subterminal(&m, t), Ok(true));
    }
}

#[test]
fn monos_compose_on_every_fixture() {
    for c in fixture_categories() {
        for f in c.morphisms() {
            for g in c.outgoing(c.cod(f)).to_vec() {
                if is_mono(&c, f).unwrap() && is_mono(&c, g).unwrap() {
                    assert!(is_mono(&c, c.comp(g, f)).unwrap());
                }
            }
        }
    }
}

#[test]
fn identities_are_isos_on_every_fixture() {
    for c in fixture_categories() {
        assert!(validate_category(&c).is_empty());
        for x in c.objects() {
            assert!(is_iso(&c, c.identity(x)).unwrap().is_some());
        }
    }
}

/// Every cone over a pair that is itself a limit has an apex isomorphic to
/// the canonical one.
#[test]
fn product_apexes_agree_up_to_iso() {
    for c in fixture_categories() {
        for x in c.objects() {
            for y in c.objects() {
                let d = Diagram::pair(x, y);
                let Some(canonical) = search_limit(View::new(&c), &d) else { continue };
                for z in c.objects() {
                    for legs in cones(View::new(&c), &d, z) {
                        let mut w = canonical.clone();
                        w.apex = z;
                        w.legs = legs;
                        if verify_limit(&c, &w) {
                            assert!(find_iso(&c, z, canonical.apex).is_some());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn fibrations_stable_on_every_fixture_filter() {
    for m in valid_fixture_models() {
        let s = build_subfib(&m).unwrap();
        for phi in enumerate_filters(&m.base, &s) {
            assert!(is_product_stable(&m, ClassKind::Fibration, &s, &phi).holds());
            assert!(phi.contains(s.top));
        }
        let top = Filter::principal(&m.base, &s, s.top).unwrap();
        assert!(is_model_filter(&m, &s, &top).holds());
    }
}
