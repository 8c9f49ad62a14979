//! The dual Hall Hopf algebra spanned by equivalence classes of quadruples.
//!
//! Product is the direct sum; the coproduct sums `[X_F] ⊗ [X_{F⊥}]` over
//! admissible sequences. Structure constants are counts, so coefficients
//! live in any commutative ring implementing [`Coefficient`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Num;

use crate::category::admissible_sequences;
use crate::error::{Error, Result};
use crate::flats::{flat_of_subspace, induced_quadruple, Flat};
use crate::par;
use crate::subword::{CanonicalKey, Quadruple};

/// Scalars usable as Hall coefficients.
pub trait Coefficient: Num + Clone + Send + Sync + fmt::Debug + fmt::Display {}

impl<T: Num + Clone + Send + Sync + fmt::Debug + fmt::Display> Coefficient for T {}

/// `n · 1` in the coefficient ring.
pub fn from_count<R: Coefficient>(n: u64) -> R {
    let mut acc = R::zero();
    for _ in 0..n {
        acc = acc + R::one();
    }
    acc
}

pub type Tensor2<R> = BTreeMap<(CanonicalKey, CanonicalKey), R>;
pub type Tensor3<R> = BTreeMap<(CanonicalKey, CanonicalKey, CanonicalKey), R>;

/// Finite formal sum of canonical classes with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement<R = i64> {
    terms: BTreeMap<CanonicalKey, R>,
}

impl<R: Coefficient> Default for HallElement<R> {
    fn default() -> Self {
        HallElement::zero()
    }
}

impl<R: Coefficient> HallElement<R> {
    pub fn zero() -> Self {
        HallElement {
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector of a class.
    pub fn from_key(key: CanonicalKey) -> Self {
        let mut e = HallElement::zero();
        e.add_term(key, R::one());
        e
    }

    /// `[X]`.
    pub fn class(x: &Quadruple) -> Self {
        HallElement::from_key(x.canonical_key())
    }

    /// `u(lambda) = lambda · [0]`.
    pub fn unit(lambda: R) -> Self {
        let mut e = HallElement::zero();
        e.add_term(Quadruple::zero().canonical_key(), lambda);
        e
    }

    pub fn add_term(&mut self, key: CanonicalKey, coef: R) {
        add_into(&mut self.terms, key, coef);
    }

    pub fn terms(&self) -> &BTreeMap<CanonicalKey, R> {
        &self.terms
    }

    pub fn coefficient(&self, key: &CanonicalKey) -> R {
        self.terms.get(key).cloned().unwrap_or_else(R::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = HallElement::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Product, extended bilinearly from `[X]·[Y] = [X ⊕ Y]`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = HallElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(class_product(a, b), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Coproduct, extended linearly.
    pub fn coproduct(&self) -> Tensor2<R> {
        let mut out = Tensor2::new();
        for (k, c) in &self.terms {
            for ((a, b), n) in class_coproduct(k).iter() {
                add_into(&mut out, (a.clone(), b.clone()), c.clone() * from_count::<R>(*n));
            }
        }
        out
    }

    /// `epsilon`: the coefficient of the zero class.
    pub fn counit(&self) -> R {
        self.coefficient(&Quadruple::zero().canonical_key())
    }

    /// Text form: one `coefficient<TAB>key` line per term, sorted by key.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, c) in &self.terms {
            s.push_str(&format!("{c}\t{k}\n"));
        }
        s
    }
}

pub(crate) fn add_into<K: Ord, R: Coefficient>(map: &mut BTreeMap<K, R>, key: K, coef: R) {
    if coef.is_zero() {
        return;
    }
    let entry = map.entry(key);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coef);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get().clone() + coef;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

type Cache<K, V> = OnceLock<RwLock<HashMap<K, V>>>;

static REPRESENTATIVES: Cache<CanonicalKey, Arc<Quadruple>> = OnceLock::new();
type ClassCoproduct = Arc<BTreeMap<(CanonicalKey, CanonicalKey), u64>>;

static COPRODUCTS: Cache<CanonicalKey, ClassCoproduct> = OnceLock::new();

fn cached<K, V, F>(cache: &Cache<K, V>, key: &K, make: F) -> V
where
    K: std::hash::Hash + Eq + Clone,
    V: Clone,
    F: FnOnce() -> V,
{
    let lock = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = lock.read().expect("cache lock").get(key) {
        return v.clone();
    }
    let v = make();
    lock.write()
        .expect("cache lock")
        .entry(key.clone())
        .or_insert(v)
        .clone()
}

/// Shared representative quadruple of a class.
pub fn representative(key: &CanonicalKey) -> Arc<Quadruple> {
    cached(&REPRESENTATIVES, key, || Arc::new(key.to_quadruple()))
}

/// Class of the direct sum of two representatives.
pub fn class_product(a: &CanonicalKey, b: &CanonicalKey) -> CanonicalKey {
    representative(a)
        .direct_sum(&representative(b))
        .canonical_key()
}

/// Counts `g^X_{AC}` of admissible sequences with end classes `(A, C)`.
pub fn class_coproduct(key: &CanonicalKey) -> Arc<BTreeMap<(CanonicalKey, CanonicalKey), u64>> {
    cached(&COPRODUCTS, key, || {
        let x = representative(key);
        let seqs = admissible_sequences(&x);
        let pairs = par::map(&seqs, |s| {
            let a = induced_quadruple(&x, &s.sub).expect("admissible flats are flats");
            let c = induced_quadruple(&x, &s.quot).expect("admissible flats are flats");
            (a.canonical_key(), c.canonical_key())
        });
        let mut out = BTreeMap::new();
        for p in pairs {
            *out.entry(p).or_insert(0) += 1;
        }
        Arc::new(out)
    })
}

pub fn hall_product<R: Coefficient>(a: &HallElement<R>, b: &HallElement<R>) -> HallElement<R> {
    a.mul(b)
}

pub fn hall_coproduct<R: Coefficient>(x: &HallElement<R>) -> Tensor2<R> {
    x.coproduct()
}

pub fn unit<R: Coefficient>(lambda: R) -> HallElement<R> {
    HallElement::unit(lambda)
}

pub fn counit<R: Coefficient>(x: &HallElement<R>) -> R {
    x.counit()
}

/// `(Δ ⊗ id) Δ [x]`.
pub fn left_iterated_coproduct(key: &CanonicalKey) -> Tensor3<i64> {
    let mut out = Tensor3::new();
    for ((a, c), n) in class_coproduct(key).iter() {
        for ((a1, a2), m) in class_coproduct(a).iter() {
            add_into(
                &mut out,
                (a1.clone(), a2.clone(), c.clone()),
                (*n * *m) as i64,
            );
        }
    }
    out
}

/// `(id ⊗ Δ) Δ [x]`.
pub fn right_iterated_coproduct(key: &CanonicalKey) -> Tensor3<i64> {
    let mut out = Tensor3::new();
    for ((a, c), n) in class_coproduct(key).iter() {
        for ((c1, c2), m) in class_coproduct(c).iter() {
            add_into(
                &mut out,
                (a.clone(), c1.clone(), c2.clone()),
                (*n * *m) as i64,
            );
        }
    }
    out
}

/// Three flats `(A, B, C)` of `X` cut out by a two-step filtration, with the
/// middle flat (`Y` or `Z`) that produced them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Diagram {
    middle: Flat,
    a: Flat,
    b: Flat,
    c: Flat,
}

fn lift(outer: &Flat, inner: &Flat) -> Flat {
    Flat::from_positions(
        inner
            .positions()
            .iter()
            .map(|&k| outer.positions()[k - 1])
            .collect(),
    )
}

fn lower(outer: &Flat, inner: &Flat) -> Option<Flat> {
    inner
        .positions()
        .iter()
        .map(|&p| outer.index_of(p))
        .collect::<Option<Vec<_>>>()
        .map(Flat::from_positions)
}

/// Diagrams `A ↪ Y ↠ B` inside `Y ↪ X ↠ C`.
fn sub_first_diagrams(x: &Quadruple, budget: usize) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    for s in admissible_sequences(x) {
        let y = induced_quadruple(x, &s.sub)?;
        for t in admissible_sequences(&y) {
            out.push(Diagram {
                middle: s.sub.clone(),
                a: lift(&s.sub, &t.sub),
                b: lift(&s.sub, &t.quot),
                c: s.quot.clone(),
            });
            if out.len() > budget {
                return Err(Error::BudgetExceeded(budget));
            }
        }
    }
    Ok(out)
}

/// Diagrams `B ↪ Z ↠ C` inside `A ↪ X ↠ Z`.
fn quot_first_diagrams(x: &Quadruple, budget: usize) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    for s in admissible_sequences(x) {
        let z = induced_quadruple(x, &s.quot)?;
        for t in admissible_sequences(&z) {
            out.push(Diagram {
                middle: s.quot.clone(),
                a: s.sub.clone(),
                b: lift(&s.quot, &t.sub),
                c: lift(&s.quot, &t.quot),
            });
            if out.len() > budget {
                return Err(Error::BudgetExceeded(budget));
            }
        }
    }
    Ok(out)
}

fn folded_union(x: &Quadruple, a: &Flat, b: &Flat) -> Vec<usize> {
    let mut v = a.folded_part(x);
    v.extend(b.folded_part(x));
    v
}

/// Checks coassociativity on `[x]`, both as an identity of triple tensors
/// and through the completion of each filtration diagram to the other kind.
pub fn coassociativity_check(key: &CanonicalKey, budget: usize) -> Result<bool> {
    if left_iterated_coproduct(key) != right_iterated_coproduct(key) {
        return Ok(false);
    }
    let x = representative(key);
    let firsts = sub_first_diagrams(&x, budget)?;
    let seconds = quot_first_diagrams(&x, budget)?;
    if firsts.len() != seconds.len() {
        return Ok(false);
    }
    let mut seconds_sorted = seconds.clone();
    seconds_sorted.sort();
    let completions_ok = par::all(&firsts, |d| {
        // Z = F(V(I ∩ (B ∪ C))), and back again Y = F(V(I ∩ (A ∪ B)))
        let z = flat_of_subspace(&x, &folded_union(&x, &d.b, &d.c));
        let image = Diagram {
            middle: z,
            a: d.a.clone(),
            b: d.b.clone(),
            c: d.c.clone(),
        };
        let y = flat_of_subspace(&x, &folded_union(&x, &d.a, &d.b));
        seconds_sorted.binary_search(&image).is_ok() && y == d.middle
    });
    if !completions_ok {
        return Ok(false);
    }
    let mut images: Vec<Diagram> = firsts
        .iter()
        .map(|d| Diagram {
            middle: flat_of_subspace(&x, &folded_union(&x, &d.b, &d.c)),
            a: d.a.clone(),
            b: d.b.clone(),
            c: d.c.clone(),
        })
        .collect();
    images.sort();
    images.dedup();
    let reverse_ok = seconds.iter().all(|d| {
        let y = flat_of_subspace(&x, &folded_union(&x, &d.a, &d.b));
        lower(&y, &d.a).is_some() && lower(&y, &d.b).is_some()
    });
    Ok(images.len() == firsts.len() && reverse_ok)
}

/// Counit axioms `(ε ⊗ id)Δ = id = (id ⊗ ε)Δ` on a class.
pub fn counit_check(key: &CanonicalKey) -> bool {
    let zero = Quadruple::zero().canonical_key();
    let mut left = HallElement::<i64>::zero();
    let mut right = HallElement::<i64>::zero();
    for ((a, c), n) in class_coproduct(key).iter() {
        if *a == zero {
            left.add_term(c.clone(), *n as i64);
        }
        if *c == zero {
            right.add_term(a.clone(), *n as i64);
        }
    }
    let id = HallElement::from_key(key.clone());
    left == id && right == id
}

fn tensor_product(s: &Tensor2<i64>, t: &Tensor2<i64>) -> Tensor2<i64> {
    let mut out = Tensor2::new();
    for ((a, b), m) in s {
        for ((c, d), n) in t {
            add_into(&mut out, (class_product(a, c), class_product(b, d)), m * n);
        }
    }
    out
}

/// `Δ(xy) = Δ(x)Δ(y)` for two classes.
pub fn bialgebra_compat_check(x: &CanonicalKey, y: &CanonicalKey, budget: usize) -> Result<bool> {
    let dx = HallElement::<i64>::from_key(x.clone()).coproduct();
    let dy = HallElement::<i64>::from_key(y.clone()).coproduct();
    if dx.len().saturating_mul(dy.len()) > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let lhs = HallElement::<i64>::from_key(class_product(x, y)).coproduct();
    Ok(lhs == tensor_product(&dx, &dy))
}

/// Text form of a tensor: `coefficient<TAB>left<TAB>right` per line.
pub fn tensor_to_text<R: Coefficient>(t: &Tensor2<R>) -> String {
    let mut s = String::new();
    for ((a, b), c) in t {
        s.push_str(&format!("{c}\t{a}\t{b}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn s2(face: &[usize]) -> Quadruple {
        Quadruple::new(CoxeterSystem::type_a(1), vec![0, 0], face.to_vec(), None).unwrap()
    }

    #[test]
    fn unit_is_neutral() {
        let x = HallElement::<i64>::class(&s2(&[1]));
        assert_eq!(x.mul(&unit(1)), x);
        assert_eq!(counit(&unit::<i64>(3)), 3);
        assert_eq!(counit(&x), 0);
    }

    #[test]
    fn product_commutes() {
        let x = HallElement::<i64>::class(&s2(&[1]));
        let y = HallElement::<i64>::class(&s2(&[2]));
        assert_eq!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn square_of_s2() {
        let x = HallElement::<i64>::class(&s2(&[1]));
        let expected = Quadruple::new(
            CoxeterSystem::from_orders(&[vec![1, 2], vec![2, 1]]).unwrap(),
            vec![0, 0, 1, 1],
            vec![1, 3],
            None,
        )
        .unwrap();
        assert_eq!(x.mul(&x), HallElement::class(&expected));
    }

    #[test]
    fn coproduct_of_zero() {
        let z = HallElement::<i64>::unit(1);
        let d = z.coproduct();
        let zk = Quadruple::zero().canonical_key();
        assert_eq!(d.len(), 1);
        assert_eq!(d.get(&(zk.clone(), zk)), Some(&1));
    }

    #[test]
    fn rational_coefficients() {
        use crate::linalg::Rational;
        let x = HallElement::<Rational>::class(&s2(&[1])).scale(&Rational::new(1, 2));
        let sq = x.mul(&x);
        assert_eq!(sq.terms().values().next(), Some(&Rational::new(1, 4)));
    }
}
