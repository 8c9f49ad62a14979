use std::sync::Arc;

use proptest::prelude::*;

use subword_hall::category::{compose, morphisms};
use subword_hall::f1rep::{f1_basis, f1_hall_product, F1Class};
use subword_hall::hall::{self, HallElement};
use subword_hall::quiver::{sx_basis, sx_classes, sx_hall_product, LabeledQuiver};
use subword_hall::subword::facets;
use subword_hall::{CoxeterSystem, Quadruple, Root};

/// A random facet of a random word in a small type-A or type-D system.
fn quadruple(max_rank: usize, max_len: usize) -> impl Strategy<Value = Quadruple> {
    (1..=max_rank, any::<bool>())
        .prop_flat_map(move |(n, d)| {
            let sys = if d && n >= 4 {
                CoxeterSystem::type_d(n).unwrap()
            } else {
                CoxeterSystem::type_a(n)
            };
            (Just(sys), prop::collection::vec(0..n, n..=max_len.max(n)), any::<prop::sample::Index>())
        })
        .prop_map(|(sys, word, pick)| {
            let pi = sys.demazure_product(&word).unwrap();
            let all = facets(&sys, &word, &pi).unwrap();
            let face = all[pick.index(all.len())].clone();
            Quadruple::new(sys, word, face, Some(pi)).unwrap()
        })
}

/// Irreducible quadruples, the objects of the category.
fn object(max_rank: usize, max_len: usize) -> impl Strategy<Value = Quadruple> {
    quadruple(max_rank, max_len).prop_filter("irreducible", |x| x.is_irreducible())
}

/// The same object with its generators renamed by a random permutation.
fn relabel(x: &Quadruple, perm: &[usize]) -> Quadruple {
    // new generator k is old generator perm[k]
    let mut inverse = vec![0; perm.len()];
    for (k, &old) in perm.iter().enumerate() {
        inverse[old] = k;
    }
    let sys = x.system().relabeled(perm);
    let word = x.word().iter().map(|&g| inverse[g]).collect();
    Quadruple::new(sys, word, x.face().to_vec(), None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bilinear_form_is_w_invariant(
        n in 2usize..=4,
        u in prop::collection::vec(-3i64..=3, 4),
        v in prop::collection::vec(-3i64..=3, 4),
        s in 0usize..4,
    ) {
        let sys = CoxeterSystem::type_a(n);
        let s = s % n;
        let (u, v) = (Root(u[..n].to_vec()), Root(v[..n].to_vec()));
        let su = sys.act_on_root(&[s], &u).unwrap();
        let sv = sys.act_on_root(&[s], &v).unwrap();
        prop_assert_eq!(sys.bilinear_form(&su, &sv).unwrap(), sys.bilinear_form(&u, &v).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent(x in quadruple(4, 8)) {
        let c = x.canonical_form();
        prop_assert_eq!(c.canonical_key(), x.canonical_key());
        prop_assert_eq!(c.canonical_form(), c.clone());
        prop_assert!(x.is_equivalent(&c));
    }

    #[test]
    fn canonical_form_ignores_generator_names(
        x in quadruple(4, 8),
        perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let perm: Vec<usize> = perm.into_iter().filter(|&g| g < x.rank()).collect();
        let y = relabel(&x, &perm);
        prop_assert_eq!(y.canonical_key(), x.canonical_key());
    }

    #[test]
    fn root_function_is_positive_off_the_face(x in quadruple(4, 8)) {
        // the letters outside the face spell pi reducedly, so their roots are
        // inversions of pi
        let roots = x.root_function();
        for p in 1..=x.len() {
            prop_assert!(!roots.root(p).is_zero());
            if !x.is_folded(p) {
                prop_assert!(roots.root(p).is_positive(), "position {}", p);
            }
        }
    }

    #[test]
    fn coproduct_has_one_term_per_subset_when_root_independent(x in object(3, 7)) {
        prop_assume!(x.is_root_independent());
        let total: i64 = HallElement::<i64>::class(&x).coproduct().values().sum();
        prop_assert_eq!(total, 1i64 << x.face().len());
    }

    #[test]
    fn hopf_axioms_on_small_objects(x in object(3, 6)) {
        let key = x.canonical_key();
        prop_assert!(hall::counit_check(&key));
        prop_assert!(hall::coassociativity_check(&key, 1_000_000).unwrap());
        prop_assert!(hall::bialgebra_compat_check(&key, &key, 1_000_000).unwrap());
    }

    #[test]
    fn hall_product_is_commutative(x in object(2, 5), y in object(2, 5)) {
        let a = HallElement::<i64>::class(&x);
        let b = HallElement::<i64>::class(&y);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&hall::unit(1)), a.clone());
    }
}

fn small_trees() -> Vec<LabeledQuiver> {
    vec![
        LabeledQuiver::path(3),
        LabeledQuiver::new(vec![1, 2, 3], vec![(2, 1), (2, 3)]).unwrap(),
        LabeledQuiver::new(vec![1, 2, 3], vec![(1, 2), (3, 2)]).unwrap(),
        LabeledQuiver::new(vec![1, 2, 4, 5], vec![(1, 2), (4, 2), (2, 5)]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subquiver_product_is_associative(t in 0usize..4, i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let q = &small_trees()[t];
        let classes = sx_classes(q, 2);
        let (a, b, c) = (
            sx_basis(&classes[i % classes.len()]),
            sx_basis(&classes[j % classes.len()]),
            sx_basis(&classes[k % classes.len()]),
        );
        let left = sx_hall_product(q, &sx_hall_product(q, &a, &b).unwrap(), &c).unwrap();
        let right = sx_hall_product(q, &a, &sx_hall_product(q, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn f1_product_is_associative(t in 0usize..4, i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let q = &small_trees()[t];
        let ind: Vec<F1Class> = subword_hall::f1rep::indecomposables(q).unwrap();
        let (a, b, c) = (
            f1_basis(&ind[i % ind.len()]),
            f1_basis(&ind[j % ind.len()]),
            f1_basis(&ind[k % ind.len()]),
        );
        let left = f1_hall_product(q, &f1_hall_product(q, &a, &b).unwrap(), &c).unwrap();
        let right = f1_hall_product(q, &a, &f1_hall_product(q, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_is_associative_and_unital(x in object(3, 6)) {
        let x = Arc::new(x);
        let ends = morphisms(&x, &x).unwrap();
        let id = subword_hall::category::Morphism::identity(x.clone());
        for f in ends.iter().take(6) {
            prop_assert_eq!(&compose(&id, f).unwrap(), f);
            prop_assert_eq!(&compose(f, &id).unwrap(), f);
            for g in ends.iter().take(6) {
                for h in ends.iter().take(6) {
                    let left = compose(&compose(h, g).unwrap(), f).unwrap();
                    let right = compose(h, &compose(g, f).unwrap()).unwrap();
                    prop_assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn subquiver_products_count_distinguishable_components() {
    let q = LabeledQuiver::path(1);
    let s = sx_basis(&sx_classes(&q, 1)[1]);
    let p = sx_hall_product(&q, &s, &s).unwrap();
    let (obj, coef) = p.iter().next().unwrap();
    assert_eq!((obj.components().len(), *coef), (2, 2));
    assert_eq!(p.len(), 1);
}
