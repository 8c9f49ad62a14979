//! Quadruples `(W, Q, pi, I)`, facets, root functions and canonical forms.
//!
//! Word letters are 0-based generator indices; positions and faces are
//! 1-based.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::coxeter::{Bond, CoxeterSystem, GroupElement, Root};
use crate::error::{Error, Result};
use crate::linalg::rank;

/// An object `(W, Q, pi, I)` with `I` a facet of the subword complex.
#[derive(Clone, Debug)]
pub struct Quadruple {
    system: CoxeterSystem,
    word: Vec<usize>,
    face: Vec<usize>,
    pi: GroupElement,
    ambient: Option<Vec<Root>>,
    canon: OnceLock<Arc<Canonical>>,
}

/// Equality ignores the ambient realization.
impl PartialEq for Quadruple {
    fn eq(&self, other: &Self) -> bool {
        self.system == other.system && self.word == other.word && self.face == other.face
    }
}

impl Eq for Quadruple {}

impl Quadruple {
    /// Validates that `face` is a facet. When `pi` is omitted it is read off
    /// the complement of the face.
    pub fn new(
        system: CoxeterSystem,
        word: Vec<usize>,
        face: Vec<usize>,
        pi: Option<GroupElement>,
    ) -> Result<Self> {
        system.check_word(&word)?;
        let n = word.len();
        for w in face.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::NotAFacet(format!(
                    "face positions must be strictly increasing, found {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&p) = face.iter().find(|&&p| p == 0 || p > n) {
            return Err(Error::NotAFacet(format!(
                "position {p} outside 1..={n}"
            )));
        }
        let complement = complement_letters(&word, &face);
        if !system.is_reduced(&complement)? {
            return Err(Error::NotAFacet(
                "complement of the face is not a reduced word".into(),
            ));
        }
        let spelled = system.element(&complement)?;
        let pi = match pi {
            Some(pi) => {
                if pi.rank() != system.rank() {
                    return Err(Error::DimensionMismatch {
                        expected: system.rank(),
                        got: pi.rank(),
                    });
                }
                if pi != spelled {
                    return Err(Error::NotAFacet(format!(
                        "complement has length {} and does not spell pi (length {})",
                        spelled.length(),
                        pi.length()
                    )));
                }
                pi
            }
            None => spelled,
        };
        Ok(Quadruple {
            system,
            word,
            face,
            pi,
            ambient: None,
            canon: OnceLock::new(),
        })
    }

    /// The zero object `(W_triv, empty, e, empty)`.
    pub fn zero() -> Self {
        Quadruple::new(CoxeterSystem::trivial(), Vec::new(), Vec::new(), None)
            .expect("zero object is valid")
    }

    /// Attaches images of the simple roots in an ambient lattice.
    pub fn with_ambient(mut self, simple_images: Vec<Root>) -> Result<Self> {
        if simple_images.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: simple_images.len(),
            });
        }
        self.ambient = Some(simple_images);
        Ok(self)
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn face(&self) -> &[usize] {
        &self.face
    }

    pub fn pi(&self) -> &GroupElement {
        &self.pi
    }

    pub fn ambient(&self) -> Option<&[Root]> {
        self.ambient.as_deref()
    }

    /// Number of letters `n`.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn is_folded(&self, position: usize) -> bool {
        self.face.binary_search(&position).is_ok()
    }

    /// Positions outside the face, in increasing order.
    pub fn traversing(&self) -> Vec<usize> {
        (1..=self.len()).filter(|p| !self.is_folded(*p)).collect()
    }

    /// `r(l)` for every position `l`.
    pub fn root_function(&self) -> RootConfiguration {
        let mut prefix = self.system.identity();
        let mut roots = Vec::with_capacity(self.len());
        for (idx, &s) in self.word.iter().enumerate() {
            roots.push(prefix.image_of_simple(s));
            if !self.is_folded(idx + 1) {
                prefix = prefix.mul_generator(&self.system, s);
            }
        }
        RootConfiguration {
            all_roots: roots,
            face: self.face.clone(),
        }
    }

    /// Root function expressed in the ambient lattice, or in the simple
    /// root basis when no ambient realization is attached.
    pub fn ambient_root_function(&self) -> Vec<Root> {
        let roots = self.root_function().all_roots;
        match &self.ambient {
            None => roots,
            Some(images) => roots.iter().map(|r| embed(images, r)).collect(),
        }
    }

    pub fn is_irreducible(&self) -> bool {
        let rc = self.root_function();
        let conf = rc.configuration();
        rank(self.rank(), conf.iter().map(|r| r.coords())) == self.rank()
    }

    /// Irreducible with exactly `rank` folded positions.
    pub fn is_root_independent(&self) -> bool {
        self.face.len() == self.rank() && self.is_irreducible()
    }

    /// Block sum: concatenated words with `other`'s generators shifted.
    pub fn direct_sum(&self, other: &Quadruple) -> Quadruple {
        let shift = self.rank();
        let n = self.len();
        let system = self.system.direct_sum(&other.system);
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|s| s + shift));
        let mut face = self.face.clone();
        face.extend(other.face.iter().map(|p| p + n));
        let pi = self.pi.direct_sum(&other.pi);
        Quadruple {
            system,
            word,
            face,
            pi,
            ambient: None,
            canon: OnceLock::new(),
        }
    }

    /// Canonical form under generator relabeling and commutation moves,
    /// memoized per value.
    pub fn canonical(&self) -> Arc<Canonical> {
        self.canon
            .get_or_init(|| Arc::new(canonicalize(self)))
            .clone()
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        self.canonical().key.clone()
    }

    pub fn is_equivalent(&self, other: &Quadruple) -> bool {
        self.canonical().key == other.canonical().key
    }

    /// Position bijection `gamma` (1-based, indexed by `self` positions) of
    /// the equivalence chosen through the canonical forms.
    pub fn equivalence_to(&self, other: &Quadruple) -> Option<Vec<usize>> {
        let (a, b) = (self.canonical(), other.canonical());
        if a.key != b.key {
            return None;
        }
        let mut gamma = vec![0; self.len()];
        for (k, &p) in a.positions.iter().enumerate() {
            gamma[p - 1] = b.positions[k];
        }
        Some(gamma)
    }

    /// The representative quadruple of the canonical class.
    pub fn canonical_form(&self) -> Quadruple {
        self.canonical().key.to_quadruple_with(Some(&self.system))
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(rank {}, word {}, face {})",
            self.rank(),
            fmt_list(self.word.iter().map(|s| s + 1)),
            fmt_list(self.face.iter().copied())
        )
    }
}

pub(crate) fn fmt_list<I: IntoIterator<Item = usize>>(it: I) -> String {
    let parts: Vec<String> = it.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn complement_letters(word: &[usize], face: &[usize]) -> Vec<usize> {
    word.iter()
        .enumerate()
        .filter(|(i, _)| face.binary_search(&(i + 1)).is_err())
        .map(|(_, &s)| s)
        .collect()
}

pub(crate) fn embed(images: &[Root], r: &Root) -> Root {
    let dim = images.first().map_or(0, Root::len);
    let mut out = vec![0i64; dim];
    for (img, &c) in images.iter().zip(r.coords()) {
        if c != 0 {
            for (o, x) in out.iter_mut().zip(img.coords()) {
                *o += c * x;
            }
        }
    }
    Root(out)
}

/// Roots `r(1..n)` together with the face that selects the configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootConfiguration {
    pub all_roots: Vec<Root>,
    pub face: Vec<usize>,
}

impl RootConfiguration {
    /// `r(l)` for a 1-based position.
    pub fn root(&self, position: usize) -> &Root {
        &self.all_roots[position - 1]
    }

    /// Roots at the face positions.
    pub fn configuration(&self) -> Vec<Root> {
        self.face.iter().map(|&p| self.all_roots[p - 1].clone()).collect()
    }
}

/// All facets of the subword complex of `word` over `pi`, sorted.
pub fn facets(system: &CoxeterSystem, word: &[usize], pi: &GroupElement) -> Result<Vec<Vec<usize>>> {
    if !system.contains_reduced_expression(word, pi)? {
        return Err(Error::NoFacets);
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    facet_search(system, word, word.len(), pi.clone(), &mut chosen, &mut out);
    let n = word.len();
    let mut facets: Vec<Vec<usize>> = out
        .into_iter()
        .map(|complement: Vec<usize>| (1..=n).filter(|p| !complement.contains(p)).collect())
        .collect();
    facets.sort();
    Ok(facets)
}

/// Right-to-left search for reduced subwords of `word[..end]` spelling `u`.
fn facet_search(
    system: &CoxeterSystem,
    word: &[usize],
    end: usize,
    u: GroupElement,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if u.length() == 0 {
        out.push(chosen.clone());
        return;
    }
    if end < u.length() {
        return;
    }
    if !system
        .contains_reduced_expression(&word[..end], &u)
        .expect("word already validated")
    {
        return;
    }
    let p = end - 1;
    let s = word[p];
    if u.has_right_descent(s) {
        chosen.push(p + 1);
        facet_search(system, word, p, u.mul_generator(system, s), chosen, out);
        chosen.pop();
    }
    facet_search(system, word, p, u, chosen, out);
}

/// Serialized canonical class: relabeled Coxeter matrix, word and face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub rank: usize,
    pub word: Vec<usize>,
    pub face: Vec<usize>,
    pub coxeter: Vec<Vec<Bond>>,
}

impl CanonicalKey {
    /// Rebuilds a representative with an automatically chosen Cartan lift.
    pub fn to_quadruple(&self) -> Quadruple {
        self.to_quadruple_with(None)
    }

    fn to_quadruple_with(&self, fallback: Option<&CoxeterSystem>) -> Quadruple {
        let system = CoxeterSystem::new(self.coxeter.clone(), None)
            .or_else(|e| match fallback {
                Some(orig) => {
                    let canon = canonicalize_system_only(orig, &self.coxeter);
                    canon.ok_or(e)
                }
                None => Err(e),
            })
            .expect("canonical Coxeter matrix comes from a valid system");
        Quadruple::new(system, self.word.clone(), self.face.clone(), None)
            .expect("canonical form of a valid quadruple is valid")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .coxeter
            .iter()
            .map(|row| row.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(
            f,
            "rank={} word={} face={} m=[{}]",
            self.rank,
            fmt_list(self.word.iter().map(|s| s + 1)),
            fmt_list(self.face.iter().copied()),
            rows.join(";")
        )
    }
}

/// A canonical form together with the data tying it to the original.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub key: CanonicalKey,
    /// `positions[k]` is the original 1-based position of canonical position `k + 1`.
    pub positions: Vec<usize>,
    /// `relabel[a]` is the original generator behind canonical generator `a`.
    pub relabel: Vec<usize>,
}

/// Finds a relabeling of `orig` whose Coxeter matrix equals `target` and
/// returns the relabeled system with its own Cartan matrix.
fn canonicalize_system_only(orig: &CoxeterSystem, target: &[Vec<Bond>]) -> Option<CoxeterSystem> {
    let n = orig.rank();
    let mut perm = Vec::new();
    let mut used = vec![false; n];
    fn go(
        orig: &CoxeterSystem,
        target: &[Vec<Bond>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let k = perm.len();
        if k == orig.rank() {
            return true;
        }
        for c in 0..orig.rank() {
            if !used[c] && (0..=k).all(|j| {
                let pj = if j == k { c } else { perm[j] };
                target[k][j] == orig.bond(c, pj)
            }) {
                used[c] = true;
                perm.push(c);
                if go(orig, target, perm, used) {
                    return true;
                }
                perm.pop();
                used[c] = false;
            }
        }
        false
    }
    go(orig, target, &mut perm, &mut used).then(|| orig.relabeled(&perm))
}

struct CanonSearch<'a> {
    q: &'a Quadruple,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    best: Option<Vec<(usize, bool)>>,
    best_runs: Vec<(Vec<usize>, Vec<Option<usize>>)>,
}

impl CanonSearch<'_> {
    fn run(
        &mut self,
        indeg: &mut [usize],
        used: &mut [bool],
        labels: &mut Vec<Option<usize>>,
        next: usize,
        seq: &mut Vec<(usize, bool)>,
        order: &mut Vec<usize>,
    ) {
        let n = self.q.len();
        let depth = seq.len();
        // `tight` means the prefix so far equals the best sequence's prefix
        let tight = match &self.best {
            None => false,
            Some(best) => match seq.as_slice().cmp(&best[..depth]) {
                std::cmp::Ordering::Greater => return,
                std::cmp::Ordering::Equal => true,
                std::cmp::Ordering::Less => false,
            },
        };
        if depth == n {
            let better = match &self.best {
                None => true,
                Some(best) => seq.as_slice() < best.as_slice(),
            };
            if better {
                self.best = Some(seq.clone());
                self.best_runs.clear();
            }
            self.best_runs.push((order.clone(), labels.clone()));
            return;
        }
        let avail: Vec<usize> = (0..n).filter(|&p| !used[p] && indeg[p] == 0).collect();
        let value = |p: usize, labels: &[Option<usize>]| {
            let s = self.q.word[p];
            (labels[s].unwrap_or(next), self.q.is_folded(p + 1))
        };
        let min = avail
            .iter()
            .map(|&p| value(p, labels))
            .min()
            .expect("heap always has a minimal element");
        if tight && min > self.best.as_ref().expect("tight implies a best")[depth] {
            return;
        }
        let choices: Vec<usize> = avail
            .into_iter()
            .filter(|&p| value(p, labels) == min)
            .collect();
        for p in choices {
            let s = self.q.word[p];
            let fresh = labels[s].is_none();
            if fresh {
                labels[s] = Some(next);
            }
            used[p] = true;
            for &q in &self.succs[p] {
                indeg[q] -= 1;
            }
            seq.push(min);
            order.push(p + 1);
            self.run(
                indeg,
                used,
                labels,
                if fresh { next + 1 } else { next },
                seq,
                order,
            );
            order.pop();
            seq.pop();
            for &q in &self.succs[p] {
                indeg[q] += 1;
            }
            used[p] = false;
            if fresh {
                labels[s] = None;
            }
        }
    }
}

fn canonicalize(q: &Quadruple) -> Canonical {
    let n = q.len();
    let sys = &q.system;
    let mut preds = vec![Vec::new(); n];
    let mut succs = vec![Vec::new(); n];
    for (b, &y) in q.word.iter().enumerate() {
        for (a, &x) in q.word[..b].iter().enumerate() {
            if x == y || !sys.bond(x, y).commutes() {
                preds[b].push(a);
                succs[a].push(b);
            }
        }
    }
    let mut indeg: Vec<usize> = preds.iter().map(Vec::len).collect();
    let mut search = CanonSearch {
        q,
        preds,
        succs,
        best: None,
        best_runs: Vec::new(),
    };
    let mut used = vec![false; n];
    let mut labels = vec![None; sys.rank()];
    let mut seq = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);
    search.run(&mut indeg, &mut used, &mut labels, 0, &mut seq, &mut order);
    debug_assert!(search.preds.len() == n);
    let seq = search.best.clone().unwrap_or_default();

    // (relabeled matrix, word, face) of the smallest candidate so far
    type Candidate = (Vec<Vec<Bond>>, Vec<usize>, Vec<usize>);
    let mut best: Option<Candidate> = None;
    for (order, labels) in &search.best_runs {
        let used_count = labels.iter().filter(|l| l.is_some()).count();
        let unused: Vec<usize> = (0..sys.rank()).filter(|&s| labels[s].is_none()).collect();
        for perm in permutations(unused.len()) {
            let mut relabel = vec![usize::MAX; sys.rank()];
            for (s, l) in labels.iter().enumerate() {
                if let Some(l) = l {
                    relabel[*l] = s;
                }
            }
            for (k, &pk) in perm.iter().enumerate() {
                relabel[used_count + k] = unused[pk];
            }
            let m: Vec<Vec<Bond>> = (0..sys.rank())
                .map(|a| (0..sys.rank()).map(|b| sys.bond(relabel[a], relabel[b])).collect())
                .collect();
            let better = match &best {
                None => true,
                Some((bm, _, _)) => m < *bm,
            };
            if better {
                best = Some((m, order.clone(), relabel));
            }
        }
    }
    let (coxeter, positions, relabel) = best.unwrap_or_else(|| (Vec::new(), Vec::new(), Vec::new()));
    let word = seq.iter().map(|&(l, _)| l).collect();
    let face = seq
        .iter()
        .enumerate()
        .filter(|(_, &(_, folded))| folded)
        .map(|(k, _)| k + 1)
        .collect();
    Canonical {
        key: CanonicalKey {
            rank: sys.rank(),
            word,
            face,
            coxeter,
        },
        positions,
        relabel,
    }
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    if k == 0 {
        return vec![Vec::new()];
    }
    (0..k).permutations(k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2(face: &[usize]) -> Quadruple {
        Quadruple::new(CoxeterSystem::type_a(1), vec![0, 0], face.to_vec(), None).unwrap()
    }

    pub(crate) fn a3_standard() -> Quadruple {
        Quadruple::new(
            CoxeterSystem::type_a(3),
            vec![0, 1, 2, 0, 1, 2, 0, 1, 0],
            vec![1, 2, 3],
            None,
        )
        .unwrap()
    }

    #[test]
    fn facets_of_ss() {
        let a1 = CoxeterSystem::type_a(1);
        let s = a1.element(&[0]).unwrap();
        assert_eq!(facets(&a1, &[0, 0], &s).unwrap(), vec![vec![1], vec![2]]);
        assert_eq!(
            facets(&a1, &[0, 0], &a1.identity()).unwrap(),
            vec![vec![1, 2]]
        );
        assert_eq!(facets(&a1, &[], &s), Err(Error::NoFacets));
    }

    #[test]
    fn standard_facet_present() {
        let x = a3_standard();
        let all = facets(x.system(), x.word(), x.pi()).unwrap();
        assert!(all.contains(&vec![1, 2, 3]));
        for f in &all {
            assert_eq!(f.len(), 3);
            Quadruple::new(x.system().clone(), x.word().to_vec(), f.clone(), Some(x.pi().clone()))
                .unwrap();
        }
    }

    #[test]
    fn rejects_non_facet() {
        let a3 = CoxeterSystem::type_a(3);
        let err = Quadruple::new(a3, vec![0, 1, 2, 0, 1, 2, 0, 1, 0], vec![1, 2], None);
        assert!(matches!(err, Err(Error::NotAFacet(_))));
    }

    #[test]
    fn first_root_is_simple() {
        let x = a3_standard();
        assert_eq!(x.root_function().root(1), &Root::simple(3, 0));
    }

    #[test]
    fn s2_faces_not_equivalent() {
        assert_ne!(s2(&[1]).canonical_key(), s2(&[2]).canonical_key());
    }

    #[test]
    fn commutation_is_equivalence() {
        let a3 = CoxeterSystem::type_a(3);
        let x = Quadruple::new(a3.clone(), vec![0, 2, 1], vec![1], None).unwrap();
        let y = Quadruple::new(a3, vec![2, 0, 1], vec![2], None).unwrap();
        assert!(x.is_equivalent(&y));
        assert_eq!(x.equivalence_to(&y).unwrap(), vec![2, 1, 3]);
    }

    #[test]
    fn relabeling_is_equivalence() {
        let a2 = CoxeterSystem::type_a(2);
        let x = Quadruple::new(a2.clone(), vec![0, 1, 0, 1], vec![1, 2], None).unwrap();
        let y = Quadruple::new(a2, vec![1, 0, 1, 0], vec![1, 2], None).unwrap();
        assert!(x.is_equivalent(&y));
    }

    #[test]
    fn zero_object() {
        let z = Quadruple::zero();
        assert!(z.is_irreducible());
        assert!(z.is_root_independent());
        assert_eq!(z.canonical_key().word.len(), 0);
    }

    #[test]
    fn direct_sum_shape() {
        let x = s2(&[1]).direct_sum(&s2(&[1]));
        assert_eq!(x.rank(), 2);
        assert_eq!(x.len(), 4);
        assert_eq!(x.face(), &[1, 3]);
        assert!(x.direct_sum(&Quadruple::zero()).is_equivalent(&x));
    }

    #[test]
    fn not_irreducible_example() {
        let sys = CoxeterSystem::from_orders(&[vec![1, 2], vec![2, 1]]).unwrap();
        let x = Quadruple::new(sys, vec![0], vec![1], None).unwrap();
        assert!(!x.is_irreducible());
    }
}
