//! Morphisms between quadruples, admissible sequences, pushouts and
//! pullbacks among root-independent objects, and flips.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::flats::{
    complements, flat_of_subspace, induced_quadruple, irreducible_flats, is_flat,
    is_irreducible_flat, span_dim, Flat,
};
use crate::subword::{CanonicalKey, Quadruple};

/// A morphism `(F1, F2)` with `X_{F1}` equivalent to `Y_{F2}`.
///
/// `gamma[k]` is the position of the target matched with the `k`-th position
/// of `f1`. Equality only looks at the endpoints and the two flats.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Arc<Quadruple>,
    target: Arc<Quadruple>,
    f1: Flat,
    f2: Flat,
    gamma: Vec<usize>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.f1 == other.f1
            && self.f2 == other.f2
            && same_object(&self.source, &other.source)
            && same_object(&self.target, &other.target)
    }
}

impl Eq for Morphism {}

fn same_object(a: &Arc<Quadruple>, b: &Arc<Quadruple>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

impl Morphism {
    /// Validates the flats and computes `gamma` from canonical forms.
    pub fn new(source: Arc<Quadruple>, target: Arc<Quadruple>, f1: Flat, f2: Flat) -> Result<Self> {
        for (x, f) in [(&source, &f1), (&target, &f2)] {
            if !is_flat(x, f.positions()) {
                return Err(Error::NotAFlat(f.positions().to_vec()));
            }
            if !is_irreducible_flat(x, f) {
                return Err(Error::NotIrreducible(f.positions().to_vec()));
            }
        }
        let a = induced_quadruple(&source, &f1)?;
        let b = induced_quadruple(&target, &f2)?;
        let local = a.equivalence_to(&b).ok_or_else(|| {
            Error::InvalidMorphism(format!(
                "subobjects at {f1} and {f2} are not equivalent"
            ))
        })?;
        let gamma = local.iter().map(|&k| f2.positions()[k - 1]).collect();
        Ok(Morphism {
            source,
            target,
            f1,
            f2,
            gamma,
        })
    }

    pub fn identity(x: Arc<Quadruple>) -> Morphism {
        let full = Flat::full(x.len());
        Morphism {
            gamma: full.positions().to_vec(),
            f1: full.clone(),
            f2: full,
            source: x.clone(),
            target: x,
        }
    }

    pub fn zero(source: Arc<Quadruple>, target: Arc<Quadruple>) -> Morphism {
        Morphism {
            source,
            target,
            f1: Flat::empty(),
            f2: Flat::empty(),
            gamma: Vec::new(),
        }
    }

    /// `i_F = ([n_{X_F}], F) : X_F -> X`.
    pub fn canonical_embedding(x: Arc<Quadruple>, flat: &Flat) -> Result<Morphism> {
        let sub = Arc::new(induced_quadruple(&x, flat)?);
        if !is_irreducible_flat(&x, flat) {
            return Err(Error::NotIrreducible(flat.positions().to_vec()));
        }
        Ok(Morphism {
            f1: Flat::full(sub.len()),
            f2: flat.clone(),
            gamma: flat.positions().to_vec(),
            source: sub,
            target: x,
        })
    }

    /// `r_F = (F, [n_{X_F}]) : X -> X_F`.
    pub fn canonical_retraction(x: Arc<Quadruple>, flat: &Flat) -> Result<Morphism> {
        let sub = Arc::new(induced_quadruple(&x, flat)?);
        if !is_irreducible_flat(&x, flat) {
            return Err(Error::NotIrreducible(flat.positions().to_vec()));
        }
        Ok(Morphism {
            f1: flat.clone(),
            f2: Flat::full(sub.len()),
            gamma: (1..=sub.len()).collect(),
            source: x,
            target: sub,
        })
    }

    pub fn source(&self) -> &Arc<Quadruple> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Quadruple> {
        &self.target
    }

    pub fn f1(&self) -> &Flat {
        &self.f1
    }

    pub fn f2(&self) -> &Flat {
        &self.f2
    }

    /// Target position matched with source position `p` of `f1`.
    pub fn gamma(&self, p: usize) -> Option<usize> {
        self.f1.index_of(p).map(|k| self.gamma[k - 1])
    }

    fn gamma_inverse(&self, q: usize) -> Option<usize> {
        self.gamma
            .iter()
            .position(|&x| x == q)
            .map(|k| self.f1.positions()[k])
    }

    pub fn is_mono(&self) -> bool {
        self.f1.len() == self.source.len()
    }

    pub fn is_epi(&self) -> bool {
        self.f2.len() == self.target.len()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_empty() && self.f2.is_empty()
    }
}

/// `g ∘ f` for `f : X -> Y` and `g : Y -> Z`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if !same_object(&f.target, &g.source) {
        return Err(Error::NotComposable);
    }
    let y = &f.target;
    let shared: Vec<usize> = f
        .f2
        .positions()
        .iter()
        .copied()
        .filter(|&p| g.f1.contains(p) && y.is_folded(p))
        .collect();
    let pre: Vec<usize> = shared
        .iter()
        .map(|&q| f.gamma_inverse(q).expect("shared position lies in f2"))
        .collect();
    let post: Vec<usize> = shared
        .iter()
        .map(|&q| g.gamma(q).expect("shared position lies in g.f1"))
        .collect();
    let g1 = flat_of_subspace(&f.source, &pre);
    let g2 = flat_of_subspace(&g.target, &post);
    let gamma: Option<Vec<usize>> = g1
        .positions()
        .iter()
        .map(|&p| f.gamma(p).and_then(|q| g.gamma(q)))
        .collect();
    match gamma {
        Some(gamma) if {
            let mut img = gamma.clone();
            img.sort_unstable();
            img == g2.positions()
        } =>
        {
            Ok(Morphism {
                source: f.source.clone(),
                target: g.target.clone(),
                f1: g1,
                f2: g2,
                gamma,
            })
        }
        _ => Morphism::new(f.source.clone(), g.target.clone(), g1, g2),
    }
}

/// Keys of induced quadruples, per irreducible flat.
fn flat_classes(x: &Quadruple) -> Result<Vec<(Flat, CanonicalKey)>> {
    irreducible_flats(x)
        .into_iter()
        .map(|f| {
            let key = induced_quadruple(x, &f)?.canonical_key();
            Ok((f, key))
        })
        .collect()
}

/// Every morphism `x -> y`, ordered by `(F1, F2)`.
pub fn morphisms(x: &Arc<Quadruple>, y: &Arc<Quadruple>) -> Result<Vec<Morphism>> {
    let xs = flat_classes(x)?;
    let mut by_key: BTreeMap<CanonicalKey, Vec<Flat>> = BTreeMap::new();
    for (f, k) in flat_classes(y)? {
        by_key.entry(k).or_default().push(f);
    }
    let mut out = Vec::new();
    for (f1, key) in xs {
        if let Some(targets) = by_key.get(&key) {
            for f2 in targets {
                out.push(Morphism::new(x.clone(), y.clone(), f1.clone(), f2.clone())?);
            }
        }
    }
    Ok(out)
}

/// A flat together with one of its complements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdmissibleSequence {
    pub sub: Flat,
    pub quot: Flat,
}

/// All `(F, F⊥)` with `F` irreducible and `F⊥` a complement of `F`.
pub fn admissible_sequences(x: &Quadruple) -> Vec<AdmissibleSequence> {
    let mut out = Vec::new();
    for f in irreducible_flats(x) {
        for c in complements(x, &f) {
            out.push(AdmissibleSequence {
                sub: f.clone(),
                quot: c,
            });
        }
    }
    out
}

fn require_d(b: &Quadruple) -> Result<()> {
    if b.is_root_independent() {
        Ok(())
    } else {
        Err(Error::NotInD)
    }
}

/// The flat of `sub = X_F` matching positions `ps` of `x` (inside `F`).
fn local_flat(x: &Quadruple, flat: &Flat, ps: &[usize]) -> Flat {
    let sub = induced_quadruple(x, flat).expect("flat of a valid object");
    let local: Vec<usize> = ps.iter().filter_map(|&p| flat.index_of(p)).collect();
    flat_of_subspace(&sub, &local)
}

/// Completes a mono `f : A -> B` and an epi `g : A -> C` to a square
/// `h : C -> D`, `k : B -> D` with `D = B_{f((I_B \ J) ∪ H)}`.
pub fn pushout_in_d(f: &Morphism, g: &Morphism) -> Result<(Morphism, Morphism)> {
    let b = f.target.clone();
    require_d(&b)?;
    if !f.is_mono() || !g.is_epi() || !same_object(&f.source, &g.source) {
        return Err(Error::InvalidMorphism(
            "pushout needs a mono and an epi with a common source".into(),
        ));
    }
    let j: Vec<usize> = f.f2.folded_part(&b);
    let h_set: Vec<usize> = g
        .f1
        .folded_part(&f.source)
        .iter()
        .map(|&p| f.gamma(p).expect("mono covers its source"))
        .collect();
    let mut l: Vec<usize> = b.face().iter().copied().filter(|p| !j.contains(p)).collect();
    l.extend_from_slice(&h_set);
    let l_flat = flat_of_subspace(&b, &l);
    let k = Morphism::canonical_retraction(b.clone(), &l_flat)?;
    let d = k.target.clone();
    let h_in_d = local_flat(&b, &l_flat, &h_set);
    let h = Morphism::new(g.target.clone(), d, Flat::full(g.target.len()), h_in_d)?;
    Ok((h, k))
}

/// Completes an epi `k : B -> D` and a mono `h : C -> D` to a square
/// `i : A -> B`, `j : A -> C` with `A = B_{f(H ∪ (I_B \ J'))}`.
pub fn pullback_in_d(k: &Morphism, h: &Morphism) -> Result<(Morphism, Morphism)> {
    let b = k.source.clone();
    require_d(&b)?;
    if !k.is_epi() || !h.is_mono() || !same_object(&k.target, &h.target) {
        return Err(Error::InvalidMorphism(
            "pullback needs an epi and a mono with a common target".into(),
        ));
    }
    let j_prime: Vec<usize> = k.f1.folded_part(&b);
    let h_set: Vec<usize> = h
        .f2
        .folded_part(&k.target)
        .iter()
        .map(|&q| k.gamma_inverse(q).expect("epi covers its target"))
        .collect();
    let mut l: Vec<usize> = b
        .face()
        .iter()
        .copied()
        .filter(|p| !j_prime.contains(p))
        .collect();
    l.extend_from_slice(&h_set);
    let a_flat = flat_of_subspace(&b, &l);
    let i = Morphism::canonical_embedding(b.clone(), &a_flat)?;
    let a = i.source.clone();
    let h_in_a = local_flat(&b, &a_flat, &h_set);
    let j = Morphism::new(a, h.source.clone(), h_in_a, Flat::full(h.source.len()))?;
    Ok((i, j))
}

/// Whether the square `k ∘ f = h ∘ g` commutes and is a pushout with respect
/// to every cone into one of `tests`.
pub fn is_pushout(
    f: &Morphism,
    g: &Morphism,
    k: &Morphism,
    h: &Morphism,
    tests: &[Arc<Quadruple>],
) -> Result<bool> {
    if compose(k, f)? != compose(h, g)? {
        return Ok(false);
    }
    for t in tests {
        let from_b = morphisms(&k.source, t)?;
        let from_c = morphisms(&h.source, t)?;
        let from_d = morphisms(&k.target, t)?;
        for kp in &from_b {
            let kf = compose(kp, f)?;
            for hp in &from_c {
                if compose(hp, g)? != kf {
                    continue;
                }
                let mut count = 0;
                for psi in &from_d {
                    if compose(psi, k)? == *kp && compose(psi, h)? == *hp {
                        count += 1;
                    }
                }
                if count != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether the square `k ∘ i = h ∘ j` commutes and is a pullback with
/// respect to every cone out of one of `tests`.
pub fn is_pullback(
    i: &Morphism,
    j: &Morphism,
    k: &Morphism,
    h: &Morphism,
    tests: &[Arc<Quadruple>],
) -> Result<bool> {
    if compose(k, i)? != compose(h, j)? {
        return Ok(false);
    }
    for t in tests {
        let to_b = morphisms(t, &k.source)?;
        let to_c = morphisms(t, &h.source)?;
        let to_a = morphisms(t, &i.source)?;
        for x in &to_b {
            let kx = compose(k, x)?;
            for y in &to_c {
                if compose(h, y)? != kx {
                    continue;
                }
                let mut count = 0;
                for t_map in &to_a {
                    if compose(i, t_map)? == *x && compose(j, t_map)? == *y {
                        count += 1;
                    }
                }
                if count != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Rank-one irreducible flats holding exactly one traversing position,
/// paired with that position.
pub fn flippable_flats(x: &Quadruple) -> Vec<(Flat, usize)> {
    irreducible_flats(x)
        .into_iter()
        .filter(|f| span_dim(x, f.positions()) == 1)
        .filter_map(|f| {
            let trav: Vec<usize> = f
                .positions()
                .iter()
                .copied()
                .filter(|&p| !x.is_folded(p))
                .collect();
            match trav.as_slice() {
                [t] => Some((f.clone(), *t)),
                _ => None,
            }
        })
        .collect()
}

/// Swaps the folded position `i` of a flippable flat for its traversing one.
pub fn flip(x: &Quadruple, flat: &Flat, i: usize) -> Result<Quadruple> {
    let t = flippable_flats(x)
        .into_iter()
        .find(|(f, _)| f == flat)
        .map(|(_, t)| t)
        .ok_or_else(|| Error::NotFlippable(format!("{flat} is not a flippable flat")))?;
    if !flat.contains(i) || !x.is_folded(i) {
        return Err(Error::NotFlippable(format!(
            "{i} is not a folded position of {flat}"
        )));
    }
    let mut face: Vec<usize> = x.face().iter().copied().filter(|&p| p != i).collect();
    face.push(t);
    face.sort_unstable();
    Quadruple::new(x.system().clone(), x.word().to_vec(), face, Some(x.pi().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn example_b() -> Arc<Quadruple> {
        Arc::new(
            Quadruple::new(
                CoxeterSystem::type_a(2),
                vec![0, 1, 1, 0, 0, 1],
                vec![1, 2, 5],
                None,
            )
            .unwrap(),
        )
    }

    fn flat(v: &[usize]) -> Flat {
        Flat::from_positions(v.to_vec())
    }

    #[test]
    fn identity_is_neutral() {
        let b = example_b();
        let f = Morphism::canonical_embedding(b.clone(), &flat(&[1, 6])).unwrap();
        let id = Morphism::identity(b.clone());
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert!(id.is_iso());
        assert!(f.is_mono() && !f.is_epi());
    }

    #[test]
    fn example_b_composites_vanish() {
        let b = example_b();
        let f = Morphism::canonical_embedding(b.clone(), &flat(&[1, 6])).unwrap();
        let h = Morphism::canonical_retraction(b.clone(), &flat(&[2, 3])).unwrap();
        let hp = Morphism::canonical_retraction(b.clone(), &flat(&[4, 5])).unwrap();
        assert!(compose(&h, &f).unwrap().is_zero());
        assert!(compose(&hp, &f).unwrap().is_zero());
    }

    #[test]
    fn embedding_then_retraction_is_idempotent() {
        let b = example_b();
        let f = flat(&[1, 6]);
        let i = Morphism::canonical_embedding(b.clone(), &f).unwrap();
        let r = Morphism::canonical_retraction(b.clone(), &f).unwrap();
        let e = compose(&i, &r).unwrap();
        assert_eq!(e.f1(), &f);
        assert_eq!(e.f2(), &f);
        assert_eq!(compose(&e, &e).unwrap(), e);
    }

    #[test]
    fn zero_is_not_epi() {
        let b = example_b();
        let z = Morphism::zero(b.clone(), b.clone());
        assert!(!z.is_epi());
        assert!(!z.is_mono());
    }

    #[test]
    fn admissible_sequences_of_example_b() {
        let seqs = admissible_sequences(&example_b());
        let sub16: Vec<&AdmissibleSequence> =
            seqs.iter().filter(|s| s.sub == flat(&[1, 6])).collect();
        assert_eq!(sub16.len(), 2);
        assert_eq!(admissible_sequences(&Quadruple::zero()).len(), 1);
    }

    #[test]
    fn flips_of_s2() {
        let x = Quadruple::new(CoxeterSystem::type_a(1), vec![0, 0], vec![1], None).unwrap();
        let ff = flippable_flats(&x);
        assert_eq!(ff, vec![(flat(&[1, 2]), 2)]);
        let y = flip(&x, &flat(&[1, 2]), 1).unwrap();
        assert_eq!(y.face(), &[2]);
        let empty = Quadruple::new(CoxeterSystem::type_a(1), vec![0], vec![], None).unwrap();
        assert!(flippable_flats(&empty).is_empty());
    }
}
