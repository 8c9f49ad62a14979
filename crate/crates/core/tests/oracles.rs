//! Engine results against independent brute-force computations.

use std::collections::BTreeSet;

use subword_hall::category::admissible_sequences;
use subword_hall::flats::{irreducible_flats, is_flat, span_dim};
use subword_hall::subword::facets;
use subword_hall::{CoxeterSystem, Error, GroupElement, Quadruple};

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|k| m >> k & 1 == 1).collect())
}

/// Product and length of the subword at `positions` (0-based).
fn product(sys: &CoxeterSystem, word: &[usize], positions: &[usize]) -> (GroupElement, usize) {
    let letters: Vec<usize> = positions.iter().map(|&p| word[p]).collect();
    (sys.element(&letters).unwrap(), letters.len())
}

/// Facets as complements of reduced subwords for `pi`, by exhaustion.
fn brute_facets(sys: &CoxeterSystem, word: &[usize], pi: &GroupElement) -> Vec<Vec<usize>> {
    let n = word.len();
    let mut out = Vec::new();
    for keep in subsets(n) {
        let (w, len) = product(sys, word, &keep);
        if len == pi.length() && w == *pi {
            let face: Vec<usize> = (1..=n).filter(|p| !keep.contains(&(p - 1))).collect();
            out.push(face);
        }
    }
    out.sort();
    out
}

/// The Demazure product is the unique element of maximal length among
/// products of subwords.
fn brute_demazure(sys: &CoxeterSystem, word: &[usize]) -> GroupElement {
    let mut best: Option<GroupElement> = None;
    for keep in subsets(word.len()) {
        let (w, _) = product(sys, word, &keep);
        if best.as_ref().is_none_or(|b| w.length() > b.length()) {
            best = Some(w);
        }
    }
    let best = best.unwrap();
    for keep in subsets(word.len()) {
        let (w, _) = product(sys, word, &keep);
        if w.length() == best.length() {
            assert_eq!(w, best, "two maximal subword products");
        }
    }
    best
}

fn words(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..rank).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

#[test]
fn demazure_and_facets_match_exhaustion_in_a2() {
    let sys = CoxeterSystem::type_a(2);
    for w in words(2, 7) {
        let pi = sys.demazure_product(&w).unwrap();
        assert_eq!(pi, brute_demazure(&sys, &w), "word {w:?}");
        assert_eq!(facets(&sys, &w, &pi).unwrap(), brute_facets(&sys, &w, &pi), "word {w:?}");
    }
}

#[test]
fn facets_for_smaller_pi_match_exhaustion() {
    let sys = CoxeterSystem::type_a(3);
    for w in words(3, 5) {
        for target in [vec![0], vec![1, 0], vec![0, 2], vec![1, 2, 1]] {
            let pi = sys.element(&target).unwrap();
            let got = match facets(&sys, &w, &pi) {
                Ok(f) => f,
                Err(Error::NoFacets) => Vec::new(),
                Err(e) => panic!("{e}"),
            };
            assert_eq!(got, brute_facets(&sys, &w, &pi), "word {w:?} pi {target:?}");
            assert_eq!(
                sys.contains_reduced_expression(&w, &pi).unwrap(),
                !got.is_empty(),
                "word {w:?} pi {target:?}"
            );
        }
    }
}

#[test]
fn b2_and_g2_demazure_products() {
    for sys in [CoxeterSystem::type_b(2).unwrap(), CoxeterSystem::type_g2()] {
        for w in words(2, 7) {
            assert_eq!(sys.demazure_product(&w).unwrap(), brute_demazure(&sys, &w));
        }
    }
}

/// A set of positions is a flat when adding any other position raises the
/// dimension of the span of its roots.
#[test]
fn irreducible_flats_are_flats() {
    let sys = CoxeterSystem::type_a(3);
    let word = [0, 1, 2, 0, 1, 1, 2];
    let x = Quadruple::new(sys, word.to_vec(), vec![1, 2, 3, 5, 7], None).unwrap();
    let flats = irreducible_flats(&x);
    assert!(!flats.is_empty());
    for f in &flats {
        assert!(is_flat(&x, f.positions()));
        let d = span_dim(&x, f.positions());
        for p in 1..=x.len() {
            if !f.contains(p) {
                let mut bigger = f.positions().to_vec();
                bigger.push(p);
                assert_eq!(span_dim(&x, &bigger), d + 1, "{f} plus {p}");
            }
        }
    }
    let unique: BTreeSet<_> = flats.iter().collect();
    assert_eq!(unique.len(), flats.len());
}

/// For root-independent objects every subset of the face splits into an
/// admissible sequence, so there are exactly `2^|I|` of them.
#[test]
fn admissible_sequence_count_for_root_independent_objects() {
    let sys = CoxeterSystem::type_a(3);
    let word = vec![0, 1, 2, 0, 1, 2, 0, 1, 0];
    let pi = sys.demazure_product(&word).unwrap();
    let mut seen = 0;
    for f in facets(&sys, &word, &pi).unwrap() {
        let x = Quadruple::new(sys.clone(), word.clone(), f, Some(pi.clone())).unwrap();
        if x.is_root_independent() {
            assert_eq!(admissible_sequences(&x).len(), 1 << x.face().len(), "{x}");
            seen += 1;
        }
    }
    assert!(seen > 0);
}
