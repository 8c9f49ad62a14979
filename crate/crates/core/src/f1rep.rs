//! Representations of tree quivers over the field with one element.
//!
//! A representation is held concretely: a finite set of basis elements, each
//! sitting over a vertex, and for every arrow a partial injection between
//! the elements over its endpoints. Subrepresentations are element subsets
//! closed under the arrow maps. This engine shares no counting code with the
//! subquiver Hall algebra in [`crate::quiver`]; the two are compared in
//! [`psi_iso_check`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::matrix_rank;
use crate::par;
use crate::quiver::{root_configuration_quiver, LabeledQuiver};
use crate::subword::Quadruple;

/// Isomorphism class: the sorted multiset of supports of the indecomposable
/// summands (Krull-Schmidt).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F1Class(Vec<Vec<usize>>);

impl F1Class {
    pub fn zero() -> Self {
        F1Class(Vec::new())
    }

    /// Validates that each support is a connected vertex set of `q`.
    pub fn new(q: &LabeledQuiver, mut summands: Vec<Vec<usize>>) -> Result<Self> {
        for s in &mut summands {
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) || !q.is_connected_subset(s) {
                return Err(Error::Validation(format!(
                    "{s:?} is not a connected subquiver"
                )));
            }
        }
        summands.sort();
        Ok(F1Class(summands))
    }

    /// The simple representation at `v`.
    pub fn simple(v: usize) -> Self {
        F1Class(vec![vec![v]])
    }

    pub fn summands(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.0.len() == 1
    }

    pub fn dimension_vector(&self) -> BTreeMap<usize, usize> {
        let mut d = BTreeMap::new();
        for s in &self.0 {
            for &v in s {
                *d.entry(v).or_insert(0) += 1;
            }
        }
        d
    }

    pub fn direct_sum(&self, other: &F1Class) -> F1Class {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        F1Class(v)
    }
}

impl fmt::Display for F1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| {
                let vs: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                format!("M{{{}}}", vs.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Formal integer combination of F1 classes.
pub type F1Element = BTreeMap<F1Class, i64>;

fn add_term(e: &mut F1Element, k: F1Class, c: i64) {
    if c == 0 {
        return;
    }
    let v = e.entry(k.clone()).or_insert(0);
    *v += c;
    if *v == 0 {
        e.remove(&k);
    }
}

/// A concrete pointed-set representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F1Rep {
    /// Vertex over which each basis element sits.
    labels: Vec<usize>,
    /// Element-level arrow maps `(from, to)`, each lying over a quiver arrow.
    edges: Vec<(usize, usize)>,
}

impl F1Rep {
    /// Direct sum of the indecomposables with the given supports; each has one
    /// element per vertex and identity maps along every arrow inside it.
    pub fn from_class(q: &LabeledQuiver, class: &F1Class) -> F1Rep {
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        for support in &class.0 {
            let base = labels.len();
            labels.extend_from_slice(support);
            let index = |v: usize| base + support.iter().position(|&u| u == v).unwrap();
            for &(a, b) in q.arrows() {
                if support.contains(&a) && support.contains(&b) {
                    edges.push((index(a), index(b)));
                }
            }
        }
        F1Rep { labels, edges }
    }

    pub fn new(q: &LabeledQuiver, labels: Vec<usize>, edges: Vec<(usize, usize)>) -> Result<F1Rep> {
        for &(e, f) in &edges {
            if e >= labels.len() || f >= labels.len() || !q.has_arrow(labels[e], labels[f]) {
                return Err(Error::Validation(format!("edge {e}->{f} lies over no arrow")));
            }
        }
        // partial injection per arrow: no element has two images or two preimages
        for (k, &(e, f)) in edges.iter().enumerate() {
            for &(e2, f2) in &edges[k + 1..] {
                let same_arrow = labels[e] == labels[e2] && labels[f] == labels[f2];
                if same_arrow && (e == e2 || f == f2) {
                    return Err(Error::Validation("arrow map is not a partial injection".into()));
                }
            }
        }
        Ok(F1Rep { labels, edges })
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Whether the element subset is closed under the arrow maps.
    pub fn is_subrepresentation(&self, sub: &[bool]) -> bool {
        self.edges.iter().all(|&(e, f)| !sub[e] || sub[f])
    }

    /// All subrepresentations as element masks.
    pub fn subrepresentations(&self) -> Vec<Vec<bool>> {
        let n = self.labels.len();
        (0u64..1 << n)
            .map(|m| (0..n).map(|k| m >> k & 1 == 1).collect::<Vec<bool>>())
            .filter(|s| self.is_subrepresentation(s))
            .collect()
    }

    fn keep(&self, keep: &[bool]) -> F1Rep {
        let mut new_index = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (k, &l) in self.labels.iter().enumerate() {
            if keep[k] {
                new_index[k] = labels.len();
                labels.push(l);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(e, f)| keep[e] && keep[f])
            .map(|&(e, f)| (new_index[e], new_index[f]))
            .collect();
        F1Rep { labels, edges }
    }

    /// The subrepresentation on `sub`.
    pub fn restrict(&self, sub: &[bool]) -> F1Rep {
        self.keep(sub)
    }

    /// `M/N`: the elements outside `N`; maps landing in `N` become zero.
    pub fn quotient(&self, sub: &[bool]) -> F1Rep {
        let rest: Vec<bool> = sub.iter().map(|b| !b).collect();
        self.keep(&rest)
    }

    /// Element sets of the connected components of the element graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for &(e, f) in &self.edges {
            let (a, b) = (find(&mut parent, e), find(&mut parent, f));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..n {
            let r = find(&mut parent, k);
            groups.entry(r).or_default().push(k);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Isomorphism class. Over a tree each component is supported on a
    /// connected vertex set with one element per vertex.
    pub fn decompose(&self) -> Result<F1Class> {
        let mut summands = Vec::new();
        for comp in self.components() {
            let mut support: Vec<usize> = comp.iter().map(|&k| self.labels[k]).collect();
            support.sort_unstable();
            if support.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NotDecomposable(format!(
                    "component over {support:?} repeats a vertex"
                )));
            }
            summands.push(support);
        }
        summands.sort();
        Ok(F1Class(summands))
    }
}

/// Connected subquivers of a forest, i.e. the supports of indecomposables.
pub fn indecomposables(q: &LabeledQuiver) -> Result<Vec<F1Class>> {
    if !q.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(q.connected_subsets().into_iter().map(|s| F1Class(vec![s])).collect())
}

/// Classes with the given dimension vector.
pub fn classes_with_dimension(q: &LabeledQuiver, dim: &BTreeMap<usize, usize>) -> Vec<F1Class> {
    let conn = q.connected_subsets();
    let mut out = Vec::new();
    fn go(
        start: usize,
        rest: &mut BTreeMap<usize, usize>,
        conn: &[Vec<usize>],
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<F1Class>,
    ) {
        if rest.values().all(|&d| d == 0) {
            out.push(F1Class(cur.clone()));
            return;
        }
        for k in start..conn.len() {
            if conn[k].iter().all(|v| rest.get(v).copied().unwrap_or(0) > 0) {
                for v in &conn[k] {
                    *rest.get_mut(v).unwrap() -= 1;
                }
                cur.push(conn[k].clone());
                go(k, rest, conn, cur, out);
                cur.pop();
                for v in &conn[k] {
                    *rest.get_mut(v).unwrap() += 1;
                }
            }
        }
    }
    go(0, &mut dim.clone(), &conn, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn sum_dims(a: &F1Class, c: &F1Class) -> BTreeMap<usize, usize> {
    let mut d = a.dimension_vector();
    for (v, n) in c.dimension_vector() {
        *d.entry(v).or_insert(0) += n;
    }
    d
}

/// `[A]·[C] = Σ_K #{N ⊆ K : N ≅ A, K/N ≅ C} [K]`.
pub fn f1_class_product(q: &LabeledQuiver, a: &F1Class, c: &F1Class) -> Result<F1Element> {
    if !q.is_tree() {
        return Err(Error::NotATree);
    }
    let middles = classes_with_dimension(q, &sum_dims(a, c));
    let counts = par::try_map(&middles, |k| -> Result<i64> {
        let rep = F1Rep::from_class(q, k);
        let mut n = 0;
        for sub in rep.subrepresentations() {
            if rep.restrict(&sub).decompose()? == *a && rep.quotient(&sub).decompose()? == *c {
                n += 1;
            }
        }
        Ok(n)
    })?;
    let mut out = F1Element::new();
    for (k, n) in middles.into_iter().zip(counts) {
        add_term(&mut out, k, n);
    }
    Ok(out)
}

pub fn f1_hall_product(q: &LabeledQuiver, a: &F1Element, b: &F1Element) -> Result<F1Element> {
    let mut out = F1Element::new();
    for (x, cx) in a {
        for (y, cy) in b {
            for (k, n) in f1_class_product(q, x, y)? {
                add_term(&mut out, k, cx * cy * n);
            }
        }
    }
    Ok(out)
}

pub fn f1_basis(x: &F1Class) -> F1Element {
    BTreeMap::from([(x.clone(), 1)])
}

/// One summand of a decomposed sequence `K_i ↪ M_i ↠ M_i/K_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandSequence {
    pub sub: F1Class,
    pub middle: F1Class,
    pub quot: F1Class,
}

/// Splits `N ↪ M ↠ M/N` along the indecomposable summands of `M` and checks
/// that the pieces sum back to the original end terms.
pub fn decomposition_check(m: &F1Rep, sub: &[bool]) -> Result<Vec<SummandSequence>> {
    if !m.is_subrepresentation(sub) {
        return Err(Error::Validation("not a subrepresentation".into()));
    }
    let mut pieces = Vec::new();
    let mut total_sub = F1Class::zero();
    let mut total_quot = F1Class::zero();
    for comp in m.components() {
        let in_comp: Vec<bool> = (0..m.dimension()).map(|k| comp.contains(&k)).collect();
        let mi = m.restrict(&in_comp);
        let sub_i: Vec<bool> = comp.iter().map(|&k| sub[k]).collect();
        if !mi.is_subrepresentation(&sub_i) {
            return Err(Error::NotDecomposable(
                "summand part is not a subrepresentation".into(),
            ));
        }
        let piece = SummandSequence {
            sub: mi.restrict(&sub_i).decompose()?,
            middle: mi.decompose()?,
            quot: mi.quotient(&sub_i).decompose()?,
        };
        if !piece.middle.is_indecomposable() {
            return Err(Error::NotDecomposable("summand is decomposable".into()));
        }
        total_sub = total_sub.direct_sum(&piece.sub);
        total_quot = total_quot.direct_sum(&piece.quot);
        pieces.push(piece);
    }
    if total_sub != m.restrict(sub).decompose()? || total_quot != m.quotient(sub).decompose()? {
        return Err(Error::NotDecomposable(
            "summand sequences do not add up".into(),
        ));
    }
    Ok(pieces)
}

/// Mismatch between the two Hall algebras on one pair of classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoMismatch {
    pub left: F1Class,
    pub right: F1Class,
    pub sx: F1Element,
    pub f1: F1Element,
}

#[derive(Clone, Debug, Default)]
pub struct IsoReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<IsoMismatch>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn to_sx(q: &LabeledQuiver, c: &F1Class) -> crate::quiver::SXObject {
    crate::quiver::SXObject::new(q, c.0.clone()).expect("supports are vertex sets of q")
}

fn from_sx(x: &crate::quiver::SXObject) -> F1Class {
    F1Class(x.components().to_vec())
}

/// Compares the structure constants of both Hall algebras through `Ψ` on all
/// pairs of classes with at most `|I|` vertices in total.
pub fn psi_iso_check_quiver(q: &LabeledQuiver) -> Result<IsoReport> {
    if !q.is_tree() {
        return Err(Error::NotATree);
    }
    let n = q.vertices().len();
    let classes: Vec<F1Class> = crate::quiver::sx_classes(q, n).iter().map(from_sx).collect();
    let pairs: Vec<(F1Class, F1Class)> = classes
        .iter()
        .flat_map(|a| {
            classes
                .iter()
                .filter(move |c| a.dimension_vector().values().sum::<usize>() + c.dimension_vector().values().sum::<usize>() <= n)
                .map(move |c| (a.clone(), c.clone()))
        })
        .collect();
    let results = par::try_map(&pairs, |(a, c)| -> Result<Option<IsoMismatch>> {
        let sx: F1Element = crate::quiver::sx_class_product(q, &to_sx(q, a), &to_sx(q, c))?
            .into_iter()
            .map(|(k, v)| (from_sx(&k), v))
            .collect();
        let f1 = f1_class_product(q, a, c)?;
        Ok((sx != f1).then(|| IsoMismatch {
            left: a.clone(),
            right: c.clone(),
            sx,
            f1,
        }))
    })?;
    Ok(IsoReport {
        pairs_checked: pairs.len(),
        mismatches: results.into_iter().flatten().collect(),
    })
}

pub fn psi_iso_check(x: &Quadruple) -> Result<IsoReport> {
    psi_iso_check_quiver(&root_configuration_quiver(x)?)
}

/// Words in the simple classes of a fixed multidegree.
fn words_of_degree(dim: &BTreeMap<usize, usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(rest: &mut BTreeMap<usize, usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let verts: Vec<usize> = rest.iter().filter(|(_, &d)| d > 0).map(|(&v, _)| v).collect();
        if verts.is_empty() {
            out.push(cur.clone());
            return;
        }
        for v in verts {
            *rest.get_mut(&v).unwrap() -= 1;
            cur.push(v);
            go(rest, cur, out);
            cur.pop();
            *rest.get_mut(&v).unwrap() += 1;
        }
    }
    go(&mut dim.clone(), &mut Vec::new(), &mut out);
    out
}

/// Product of simples `e_{w1} e_{w2} ...`.
pub fn evaluate_word(q: &LabeledQuiver, word: &[usize]) -> Result<F1Element> {
    let mut acc = f1_basis(&F1Class::zero());
    for &v in word {
        acc = f1_hall_product(q, &acc, &f1_basis(&F1Class::simple(v)))?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Default)]
pub struct FlipAutomorphismReport {
    pub degrees_checked: usize,
    /// The words in the simples satisfy the same linear relations on both sides.
    pub relations_agree: bool,
    /// The simples span every checked degree on both sides.
    pub generated: bool,
    /// Whether relabeling classes directly is already multiplicative.
    pub naive_relabel_multiplicative: bool,
}

/// Checks that `e_v ↦ e_{relabel(v)}` extends to an algebra isomorphism
/// `H(qx) -> H(qy)` on all degrees with total dimension at most `max_total`.
pub fn flip_automorphism_check(
    qx: &LabeledQuiver,
    qy: &LabeledQuiver,
    relabel: impl Fn(usize) -> usize + Sync,
    max_total: usize,
) -> Result<FlipAutomorphismReport> {
    if !qx.is_tree() || !qy.is_tree() {
        return Err(Error::NotATree);
    }
    let mut report = FlipAutomorphismReport {
        relations_agree: true,
        generated: true,
        ..Default::default()
    };
    let verts = qx.vertices().to_vec();
    let mut dims: Vec<BTreeMap<usize, usize>> = Vec::new();
    fn go(k: usize, left: usize, verts: &[usize], cur: &mut BTreeMap<usize, usize>, out: &mut Vec<BTreeMap<usize, usize>>) {
        if k == verts.len() {
            if cur.values().any(|&d| d > 0) {
                out.push(cur.iter().filter(|(_, &d)| d > 0).map(|(&v, &d)| (v, d)).collect());
            }
            return;
        }
        for d in 0..=left {
            cur.insert(verts[k], d);
            go(k + 1, left - d, verts, cur, out);
        }
        cur.remove(&verts[k]);
    }
    go(0, max_total, &verts, &mut BTreeMap::new(), &mut dims);
    for dim in &dims {
        let words = words_of_degree(dim);
        let dim_y: BTreeMap<usize, usize> = dim.iter().map(|(&v, &d)| (relabel(v), d)).collect();
        let basis_x = classes_with_dimension(qx, dim);
        let basis_y = classes_with_dimension(qy, &dim_y);
        let rows_x = par::try_map(&words, |w| evaluate_word(qx, w))?;
        let rows_y = par::try_map(&words, |w| {
            evaluate_word(qy, &w.iter().map(|&v| relabel(v)).collect::<Vec<_>>())
        })?;
        let mx: Vec<Vec<i64>> = rows_x
            .iter()
            .map(|r| basis_x.iter().map(|b| r.get(b).copied().unwrap_or(0)).collect())
            .collect();
        let my: Vec<Vec<i64>> = rows_y
            .iter()
            .map(|r| basis_y.iter().map(|b| r.get(b).copied().unwrap_or(0)).collect())
            .collect();
        let joint: Vec<Vec<i64>> = mx.iter().zip(&my).map(|(a, b)| [a.clone(), b.clone()].concat()).collect();
        let (rx, ry, rj) = (matrix_rank(&mx), matrix_rank(&my), matrix_rank(&joint));
        report.relations_agree &= rx == ry && ry == rj;
        report.generated &= rx == basis_x.len() && ry == basis_y.len();
        report.degrees_checked += 1;
    }
    // relabel classes directly and compare products of simples
    let mut naive = true;
    'pairs: for &a in &verts {
        for &b in &verts {
            let px = f1_class_product(qx, &F1Class::simple(a), &F1Class::simple(b))?;
            let moved: F1Element = px
                .into_iter()
                .map(|(k, c)| {
                    let mut s: Vec<Vec<usize>> = k
                        .0
                        .iter()
                        .map(|sup| {
                            let mut sup: Vec<usize> = sup.iter().map(|&v| relabel(v)).collect();
                            sup.sort_unstable();
                            sup
                        })
                        .collect();
                    s.sort();
                    (F1Class(s), c)
                })
                .collect();
            let py = f1_class_product(qy, &F1Class::simple(relabel(a)), &F1Class::simple(relabel(b)))?;
            if moved != py {
                naive = false;
                break 'pairs;
            }
        }
    }
    report.naive_relabel_multiplicative = naive;
    Ok(report)
}

/// Serre relations for the simples of the equioriented path with `n` vertices.
pub fn serre_check(n: usize) -> Result<bool> {
    let q = LabeledQuiver::path(n);
    let e = |v: usize| f1_basis(&F1Class::simple(v));
    let mul = |a: &F1Element, b: &F1Element| f1_hall_product(&q, a, b);
    let lin = |terms: &[(i64, &F1Element)]| {
        let mut out = F1Element::new();
        for (c, x) in terms {
            for (k, v) in x.iter() {
                add_term(&mut out, k.clone(), c * v);
            }
        }
        out
    };
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let (ei, ej) = (e(i), e(j));
            if i.abs_diff(j) == 1 {
                let a = mul(&mul(&ei, &ei)?, &ej)?;
                let b = mul(&mul(&ei, &ej)?, &ei)?;
                let c = mul(&mul(&ej, &ei)?, &ei)?;
                if !lin(&[(1, &a), (-2, &b), (1, &c)]).is_empty() {
                    return Ok(false);
                }
            } else if mul(&ei, &ej)? != mul(&ej, &ei)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `[a, b] = ab - ba`; fails if the result touches a decomposable class.
pub fn primitive_lie_bracket(q: &LabeledQuiver, a: &F1Class, b: &F1Class) -> Result<F1Element> {
    if !a.is_indecomposable() || !b.is_indecomposable() {
        return Err(Error::Validation("bracket arguments must be connected".into()));
    }
    let mut out = f1_class_product(q, a, b)?;
    for (k, c) in f1_class_product(q, b, a)? {
        add_term(&mut out, k, -c);
    }
    if let Some(k) = out.keys().find(|k| !k.is_indecomposable()) {
        return Err(Error::Validation(format!("bracket has decomposable term {k}")));
    }
    Ok(out)
}

/// Morphisms of representations: per-element images (or `None` for zero)
/// over the same vertex, injective away from zero, commuting with arrows.
pub fn morphisms(m: &F1Rep, n: &F1Rep) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    fn go(k: usize, m: &F1Rep, n: &F1Rep, cur: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        if k == m.labels.len() {
            if commutes(m, n, cur) {
                out.push(cur.clone());
            }
            return;
        }
        cur.push(None);
        go(k + 1, m, n, cur, out);
        cur.pop();
        for t in 0..n.labels.len() {
            if n.labels[t] == m.labels[k] && !cur.contains(&Some(t)) {
                cur.push(Some(t));
                go(k + 1, m, n, cur, out);
                cur.pop();
            }
        }
    }
    fn image(r: &F1Rep, e: usize, target_vertex: usize) -> Option<usize> {
        r.edges
            .iter()
            .find(|&&(a, b)| a == e && r.labels[b] == target_vertex)
            .map(|&(_, b)| b)
    }
    fn commutes(m: &F1Rep, n: &F1Rep, f: &[Option<usize>]) -> bool {
        // check f_w ∘ m_a = n_a ∘ f_v for every arrow a: v -> w and element over v
        let arrows: Vec<(usize, usize)> = m
            .edges
            .iter()
            .map(|&(a, b)| (m.labels[a], m.labels[b]))
            .chain(n.edges.iter().map(|&(a, b)| (n.labels[a], n.labels[b])))
            .collect();
        (0..m.labels.len()).all(|e| {
            arrows.iter().filter(|(v, _)| *v == m.labels[e]).all(|&(_, w)| {
                let left = image(m, e, w).and_then(|x| f[x]);
                let right = f[e].and_then(|y| image(n, y, w));
                left == right
            })
        })
    }
    go(0, m, n, &mut Vec::new(), &mut out);
    out
}

/// Over `1 -> 2 -> 3`, the epimorphism `M{1,2,3} ↠ M{1,2}` has no section
/// among F1 morphisms. Returns the number of sections found (zero expected).
pub fn no_retraction_witness() -> Result<usize> {
    let q = LabeledQuiver::path(3);
    let big = F1Rep::from_class(&q, &F1Class::new(&q, vec![vec![1, 2, 3]])?);
    // quotient by the subrepresentation {3}
    let sub: Vec<bool> = big.labels.iter().map(|&v| v == 3).collect();
    let small = big.quotient(&sub);
    let kept: Vec<usize> = (0..big.dimension()).filter(|&k| !sub[k]).collect();
    let sections = morphisms(&small, &big)
        .into_iter()
        .filter(|r| {
            // p ∘ r = id, where p sends kept elements to their quotient index
            (0..small.dimension()).all(|k| {
                r[k].and_then(|t| kept.iter().position(|&x| x == t)) == Some(k)
            })
        })
        .count();
    Ok(sections)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(q: &LabeledQuiver, v: &[&[usize]]) -> F1Class {
        F1Class::new(q, v.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn indecomposables_of_path() {
        assert_eq!(indecomposables(&LabeledQuiver::path(3)).unwrap().len(), 6);
        assert_eq!(indecomposables(&LabeledQuiver::path(1)).unwrap().len(), 1);
        let d4 = LabeledQuiver::new(vec![1, 2, 4, 5], vec![(1, 2), (4, 2), (2, 5)]).unwrap();
        assert_eq!(indecomposables(&d4).unwrap().len(), 11);
    }

    #[test]
    fn subrepresentations_of_m12() {
        let q = LabeledQuiver::path(2);
        let m = F1Rep::from_class(&q, &class(&q, &[&[1, 2]]));
        let subs = m.subrepresentations();
        assert_eq!(subs.len(), 3);
        assert!(!subs.contains(&vec![true, false]));
    }

    #[test]
    fn products_over_a2() {
        let q = LabeledQuiver::path(2);
        let (s1, s2) = (F1Class::simple(1), F1Class::simple(2));
        assert_eq!(
            f1_class_product(&q, &s2, &s1).unwrap(),
            BTreeMap::from([(class(&q, &[&[1], &[2]]), 1), (class(&q, &[&[1, 2]]), 1)])
        );
        assert_eq!(
            f1_class_product(&q, &s1, &s2).unwrap(),
            BTreeMap::from([(class(&q, &[&[1], &[2]]), 1)])
        );
        assert_eq!(f1_class_product(&q, &s1, &F1Class::zero()).unwrap(), f1_basis(&s1));
    }

    #[test]
    fn brackets() {
        let q = LabeledQuiver::path(3);
        let b = primitive_lie_bracket(&q, &F1Class::simple(2), &F1Class::simple(1)).unwrap();
        assert_eq!(b, BTreeMap::from([(class(&q, &[&[1, 2]]), 1)]));
        assert!(primitive_lie_bracket(&q, &F1Class::simple(1), &F1Class::simple(3))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn serre_small() {
        assert!(serre_check(2).unwrap());
        assert!(serre_check(3).unwrap());
    }

    #[test]
    fn decomposition_of_mixed_middle() {
        let q = LabeledQuiver::path(3);
        let m = F1Rep::from_class(&q, &class(&q, &[&[1, 2], &[3]]));
        for sub in m.subrepresentations() {
            let pieces = decomposition_check(&m, &sub).unwrap();
            assert_eq!(pieces.len(), 2);
        }
    }

    #[test]
    fn retraction_witness() {
        assert_eq!(no_retraction_witness().unwrap(), 0);
    }

    #[test]
    fn iso_on_path() {
        let r = psi_iso_check_quiver(&LabeledQuiver::path(3)).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
    }
}
