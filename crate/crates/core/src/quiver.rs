//! Root configuration quivers and the subquiver category `S_X`.
//!
//! Vertices are labeled by face positions (1-based). Vertex sets are handled
//! as `u64` bitmasks over label values internally, so labels must stay below 64.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::category::flip;
use crate::error::{Error, Result};
use crate::flats::{flat_of_subspace, induced_quadruple, irreducible_flats};
use crate::par;
use crate::subword::Quadruple;

const MAX_LABEL: usize = 63;

pub(crate) fn mask_of(vs: &[usize]) -> u64 {
    vs.iter().fold(0u64, |m, &v| m | 1u64 << v)
}

pub(crate) fn labels_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// A quiver whose vertices carry integer labels; no loops, no parallel arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledQuiver {
    vertices: Vec<usize>,
    arrows: Vec<(usize, usize)>,
}

impl LabeledQuiver {
    pub fn new(mut vertices: Vec<usize>, mut arrows: Vec<(usize, usize)>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&v) = vertices.iter().find(|&&v| v > MAX_LABEL) {
            return Err(Error::Validation(format!(
                "vertex label {v} exceeds {MAX_LABEL}"
            )));
        }
        arrows.sort_unstable();
        if arrows.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("parallel arrows".into()));
        }
        for &(a, b) in &arrows {
            if a == b {
                return Err(Error::Validation(format!("loop at {a}")));
            }
            if vertices.binary_search(&a).is_err() || vertices.binary_search(&b).is_err() {
                return Err(Error::Validation(format!(
                    "arrow {a}->{b} leaves the vertex set"
                )));
            }
        }
        Ok(LabeledQuiver { vertices, arrows })
    }

    pub fn empty() -> Self {
        LabeledQuiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
        }
    }

    /// The equioriented path `1 -> 2 -> ... -> n`.
    pub fn path(n: usize) -> Self {
        LabeledQuiver::new((1..=n).collect(), (1..n).map(|v| (v, v + 1)).collect())
            .expect("path quiver is valid")
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn has_arrow(&self, a: usize, b: usize) -> bool {
        self.arrows.binary_search(&(a, b)).is_ok()
    }

    /// Vertices joined to `v` by an arrow in either direction, sorted.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .arrows
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn vertex_mask(&self) -> u64 {
        mask_of(&self.vertices)
    }

    fn successor_mask(&self, v: usize) -> u64 {
        self.arrows
            .iter()
            .filter(|&&(a, _)| a == v)
            .fold(0, |m, &(_, b)| m | 1u64 << b)
    }

    fn neighbour_mask(&self, v: usize) -> u64 {
        mask_of(&self.neighbours(v))
    }

    /// The full subquiver on `subset` (labels outside the quiver are ignored).
    pub fn induced(&self, subset: &[usize]) -> LabeledQuiver {
        let m = mask_of(subset) & self.vertex_mask();
        self.induced_mask(m)
    }

    fn induced_mask(&self, m: u64) -> LabeledQuiver {
        LabeledQuiver {
            vertices: labels_of(m),
            arrows: self
                .arrows
                .iter()
                .copied()
                .filter(|&(a, b)| m >> a & 1 == 1 && m >> b & 1 == 1)
                .collect(),
        }
    }

    /// Connected components of the induced subgraph on `m`, in increasing
    /// order of their smallest label.
    pub(crate) fn component_masks(&self, m: u64) -> Vec<u64> {
        let mut rest = m;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.neighbour_mask(v) & m & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    pub(crate) fn is_connected_mask(&self, m: u64) -> bool {
        m != 0 && self.component_masks(m).len() == 1
    }

    pub fn components_of(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        self.component_masks(mask_of(subset) & self.vertex_mask())
            .into_iter()
            .map(labels_of)
            .collect()
    }

    pub fn is_connected_subset(&self, subset: &[usize]) -> bool {
        let m = mask_of(subset);
        m & !self.vertex_mask() == 0 && self.is_connected_mask(m)
    }

    /// Whether the underlying undirected graph is acyclic (a forest).
    pub fn is_tree(&self) -> bool {
        let mut edges: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        if edges.len() != self.arrows.len() {
            // a 2-cycle a->b->a
            return false;
        }
        let comps = self.component_masks(self.vertex_mask()).len();
        edges.len() + comps == self.vertices.len()
    }

    /// All nonempty connected vertex subsets, sorted.
    pub fn connected_subsets(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = submasks(self.vertex_mask())
            .filter(|&m| self.is_connected_mask(m))
            .map(labels_of)
            .collect();
        out.sort();
        out
    }

    /// Reverses every arrow at `v` and renames `v` to `new_label`.
    pub fn reflected_at(&self, v: usize, new_label: usize) -> Result<LabeledQuiver> {
        let rename = |x: usize| if x == v { new_label } else { x };
        let arrows = self
            .arrows
            .iter()
            .map(|&(a, b)| {
                if a == v || b == v {
                    (rename(b), rename(a))
                } else {
                    (a, b)
                }
            })
            .collect();
        LabeledQuiver::new(self.vertices.iter().map(|&x| rename(x)).collect(), arrows)
    }

    /// Text form in the Graphviz `digraph` language: sorted vertices, then
    /// sorted edges.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for v in &self.vertices {
            s.push_str(&format!("  {v};\n"));
        }
        for (a, b) in &self.arrows {
            s.push_str(&format!("  {a} -> {b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for LabeledQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arrows.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `Γ_X`: vertices `I`, arrow `i -> j` iff `(i - j) · B(r(i), r(j)) > 0`.
pub fn root_configuration_quiver(x: &Quadruple) -> Result<LabeledQuiver> {
    if !x.is_root_independent() {
        return Err(Error::NotInD);
    }
    let roots = x.root_function();
    let sys = x.system();
    let face = x.face();
    let mut arrows = Vec::new();
    for &i in face {
        for &j in face {
            if i == j {
                continue;
            }
            let b = sys.form(roots.root(i).coords(), roots.root(j).coords());
            let sign = if i > j { 1 } else { -1 };
            if (b * sign as i64) > num_rational::Ratio::from_integer(0) {
                arrows.push((i, j));
            }
        }
    }
    LabeledQuiver::new(face.to_vec(), arrows)
}

/// `a ⪯ b` iff there is a path from `b` to `a`, on a forest quiver.
#[derive(Clone, Debug)]
pub struct TreeOrder {
    /// `below[v]`: mask of everything reachable from `v`, including `v`.
    below: BTreeMap<usize, u64>,
}

impl TreeOrder {
    pub fn new(q: &LabeledQuiver) -> Result<Self> {
        if !q.is_tree() {
            return Err(Error::NotATree);
        }
        Ok(TreeOrder {
            below: reachability(q, q.vertex_mask()),
        })
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below.get(&b).is_some_and(|m| m >> a & 1 == 1)
    }

    /// `{b : b ⪯ a}`.
    pub fn lower_ideal(&self, a: usize) -> Vec<usize> {
        self.below.get(&a).map(|&m| labels_of(m)).unwrap_or_default()
    }

    /// `{b : a ⪯ b}`.
    pub fn upper_ideal(&self, a: usize) -> Vec<usize> {
        self.below
            .iter()
            .filter(|(_, &m)| m >> a & 1 == 1)
            .map(|(&b, _)| b)
            .collect()
    }
}

/// Reachability inside the induced subquiver on `within`.
fn reachability(q: &LabeledQuiver, within: u64) -> BTreeMap<usize, u64> {
    let succ: BTreeMap<usize, u64> = labels_of(within)
        .into_iter()
        .map(|v| (v, q.successor_mask(v) & within))
        .collect();
    succ.keys()
        .map(|&v| {
            let mut seen = 1u64 << v;
            let mut frontier = seen;
            while frontier != 0 {
                let u = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = succ[&u] & !seen;
                seen |= new;
                frontier |= new;
            }
            (v, seen)
        })
        .collect()
}

/// Order data of the induced subquiver on one vertex set, for fast ideal tests.
struct InducedOrder {
    below: BTreeMap<usize, u64>,
}

impl InducedOrder {
    fn new(q: &LabeledQuiver, h: u64) -> Self {
        InducedOrder {
            below: reachability(q, h),
        }
    }

    /// Every `a ∈ j` has its lower ideal inside `j`.
    fn lower_closed(&self, j: u64) -> bool {
        labels_of(j).iter().all(|a| self.below[a] & !j == 0)
    }

    /// Every `a ∈ k` has its upper ideal inside `k`.
    fn upper_closed(&self, k: u64) -> bool {
        self.below
            .iter()
            .all(|(&b, &m)| k >> b & 1 == 1 || m & k == 0)
    }
}

fn check_subset(q: &LabeledQuiver, small: &[usize], big: &[usize]) -> Result<(u64, u64)> {
    if !q.is_tree() {
        return Err(Error::NotATree);
    }
    let (s, b) = (mask_of(small), mask_of(big));
    if b & !q.vertex_mask() != 0 || s & !b != 0 {
        return Err(Error::Validation(format!(
            "expected nested vertex sets, got {small:?} and {big:?}"
        )));
    }
    Ok((s, b))
}

/// Whether `τ_{J,H}` is a basic admissible monomorphism.
pub fn admissible_mono_check(q: &LabeledQuiver, j: &[usize], h: &[usize]) -> Result<bool> {
    let (j, h) = check_subset(q, j, h)?;
    Ok(InducedOrder::new(q, h).lower_closed(j))
}

/// Whether `β_{H,K}` is a basic admissible epimorphism.
pub fn admissible_epi_check(q: &LabeledQuiver, k: &[usize], h: &[usize]) -> Result<bool> {
    let (k, h) = check_subset(q, k, h)?;
    Ok(InducedOrder::new(q, h).upper_closed(k))
}

fn basic_partitions_mask(q: &LabeledQuiver, h: u64) -> Vec<(u64, u64)> {
    let order = InducedOrder::new(q, h);
    let mut out: Vec<(u64, u64)> = submasks(h)
        .filter(|&j| order.lower_closed(j) && order.upper_closed(h & !j))
        .map(|j| (j, h & !j))
        .collect();
    out.sort_unstable();
    out
}

/// Ordered partitions `H = J ⊔ K` with `τ_{J,H}` and `β_{H,K}` admissible.
pub fn basic_admissible_sequences(q: &LabeledQuiver, h: &[usize]) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let (_, h) = check_subset(q, &[], h)?;
    Ok(basic_partitions_mask(q, h)
        .into_iter()
        .map(|(j, k)| (labels_of(j), labels_of(k)))
        .collect())
}

/// A finite disjoint union of connected full subquivers of `Γ_X`, stored as
/// a sorted multiset of vertex sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SXObject {
    components: Vec<Vec<usize>>,
}

impl SXObject {
    pub fn empty() -> Self {
        SXObject::default()
    }

    /// Splits each given vertex set into its connected components.
    pub fn new(q: &LabeledQuiver, subsets: Vec<Vec<usize>>) -> Result<Self> {
        let mut components = Vec::new();
        for s in subsets {
            let m = mask_of(&s);
            if m & !q.vertex_mask() != 0 || m.count_ones() as usize != s.len() {
                return Err(Error::Validation(format!(
                    "{s:?} is not a set of vertices of the quiver"
                )));
            }
            components.extend(q.component_masks(m).into_iter().map(labels_of));
        }
        components.sort();
        Ok(SXObject { components })
    }

    pub(crate) fn from_masks(mut masks: Vec<u64>) -> Self {
        masks.sort_unstable_by_key(|&m| labels_of(m));
        SXObject {
            components: masks.into_iter().map(labels_of).collect(),
        }
    }

    pub(crate) fn masks(&self) -> Vec<u64> {
        self.components.iter().map(|c| mask_of(c)).collect()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn vertex_multiset(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for c in &self.components {
            for &v in c {
                *m.entry(v).or_insert(0) += 1;
            }
        }
        m
    }

    pub fn disjoint_union(&self, other: &SXObject) -> SXObject {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        components.sort();
        SXObject { components }
    }

    pub fn relabeled(&self, f: impl Fn(usize) -> usize) -> SXObject {
        let mut components: Vec<Vec<usize>> = self
            .components
            .iter()
            .map(|c| {
                let mut c: Vec<usize> = c.iter().map(|&v| f(v)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        components.sort();
        SXObject { components }
    }

    /// Number of label-preserving automorphisms: permutations of equal
    /// components, so 1 exactly when no component repeats.
    pub fn automorphism_count(&self) -> u64 {
        let mut counts: BTreeMap<&Vec<usize>, u64> = BTreeMap::new();
        for c in &self.components {
            *counts.entry(c).or_insert(0) += 1;
        }
        counts.values().map(|&m| (1..=m).product::<u64>()).product()
    }
}

impl fmt::Display for SXObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let vs: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", vs.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Formal integer combination of `S_X` classes.
pub type SxElement = BTreeMap<SXObject, i64>;

pub fn sx_basis(x: &SXObject) -> SxElement {
    BTreeMap::from([(x.clone(), 1)])
}

pub(crate) fn add_term<K: Ord>(e: &mut BTreeMap<K, i64>, k: K, c: i64) {
    if c == 0 {
        return;
    }
    let v = e.entry(k).or_insert(0);
    *v += c;
    // drop cancelled terms lazily below
    if *v == 0 {
        e.retain(|_, c| *c != 0);
    }
}

pub fn element_to_text<K: fmt::Display>(e: &BTreeMap<K, i64>) -> String {
    e.iter().map(|(k, c)| format!("{c}\t{k}\n")).collect()
}

/// Set partitions of `0..n` as restricted growth strings.
pub(crate) fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            go(i + 1, n, cur, max.max(b), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        let mut cur = vec![0];
        go(1, n, &mut cur, 0, &mut out);
    }
    out
}

/// Middles `K` that can carry a sequence with these end components: every
/// component of `K` is a disjoint union of some of them.
fn candidate_middles(q: &LabeledQuiver, pieces: &[u64]) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    'outer: for p in set_partitions(pieces.len()) {
        let blocks = p.iter().copied().max().map_or(0, |m| m + 1);
        let mut unions = vec![0u64; blocks];
        for (k, &b) in p.iter().enumerate() {
            if unions[b] & pieces[k] != 0 {
                continue 'outer;
            }
            unions[b] |= pieces[k];
        }
        if !unions.iter().all(|&u| q.is_connected_mask(u)) {
            continue;
        }
        unions.sort_unstable();
        out.insert(unions);
    }
    out
}

fn sorted_masks(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

/// Number of admissible sequences `A ↪ K ↠ C` with the given middle, counted
/// componentwise from basic partitions.
fn count_sequences(q: &LabeledQuiver, middle: &[u64], a: &[u64], c: &[u64]) -> u64 {
    let options: Vec<Vec<(Vec<u64>, Vec<u64>)>> = middle
        .iter()
        .map(|&h| {
            basic_partitions_mask(q, h)
                .into_iter()
                .map(|(j, k)| (q.component_masks(j), q.component_masks(k)))
                .collect()
        })
        .collect();
    let mut count = 0;
    let mut stack_sub = Vec::new();
    let mut stack_quot = Vec::new();
    fn go(
        i: usize,
        options: &[Vec<(Vec<u64>, Vec<u64>)>],
        sub: &mut Vec<u64>,
        quot: &mut Vec<u64>,
        a: &[u64],
        c: &[u64],
        count: &mut u64,
    ) {
        if sub.len() > a.len() || quot.len() > c.len() {
            return;
        }
        if i == options.len() {
            if sorted_masks(sub.clone()) == a && sorted_masks(quot.clone()) == c {
                *count += 1;
            }
            return;
        }
        for (j, k) in &options[i] {
            let (ls, lq) = (sub.len(), quot.len());
            sub.extend_from_slice(j);
            quot.extend_from_slice(k);
            go(i + 1, options, sub, quot, a, c, count);
            sub.truncate(ls);
            quot.truncate(lq);
        }
    }
    go(0, &options, &mut stack_sub, &mut stack_quot, a, c, &mut count);
    count
}

/// `[A]·[C] = Σ_K g^K_{AC} [K]`, where `g` counts subobjects `N ≅ A` of `K`
/// with `K/N ≅ C` along admissible sequences.
pub fn sx_class_product(q: &LabeledQuiver, a: &SXObject, c: &SXObject) -> Result<SxElement> {
    if !q.is_tree() {
        return Err(Error::NotATree);
    }
    let (am, cm) = (sorted_masks(a.masks()), sorted_masks(c.masks()));
    let mut pieces = am.clone();
    pieces.extend_from_slice(&cm);
    let middles: Vec<Vec<u64>> = candidate_middles(q, &pieces).into_iter().collect();
    let counts = par::map(&middles, |k| count_sequences(q, k, &am, &cm));
    let mut out = SxElement::new();
    for (k, n) in middles.into_iter().zip(counts) {
        if n > 0 {
            add_term(&mut out, SXObject::from_masks(k), n as i64);
        }
    }
    Ok(out)
}

pub fn sx_hall_product(q: &LabeledQuiver, a: &SxElement, b: &SxElement) -> Result<SxElement> {
    let mut out = SxElement::new();
    for (x, cx) in a {
        for (y, cy) in b {
            for (k, n) in sx_class_product(q, x, y)? {
                add_term(&mut out, k, cx * cy * n);
            }
        }
    }
    Ok(out)
}

/// `Δ[Γ] = Σ [Γ1] ⊗ [Γ2]` over distinct splittings of the component multiset.
pub fn sx_coproduct(x: &SXObject) -> BTreeMap<(SXObject, SXObject), i64> {
    let mut groups: Vec<(Vec<usize>, usize)> = Vec::new();
    for c in &x.components {
        match groups.last_mut() {
            Some((g, m)) if g == c => *m += 1,
            _ => groups.push((c.clone(), 1)),
        }
    }
    let mut out = BTreeMap::new();
    let mut choice = vec![0usize; groups.len()];
    loop {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for ((c, m), &k) in groups.iter().zip(&choice) {
            left.extend(std::iter::repeat_n(c.clone(), k));
            right.extend(std::iter::repeat_n(c.clone(), m - k));
        }
        out.insert(
            (
                SXObject { components: left },
                SXObject { components: right },
            ),
            1,
        );
        // odometer over 0..=m per group
        let mut i = 0;
        loop {
            if i == groups.len() {
                return out;
            }
            if choice[i] < groups[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// All classes with at most `max_vertices` vertices counted with multiplicity.
pub fn sx_classes(q: &LabeledQuiver, max_vertices: usize) -> Vec<SXObject> {
    let conn = q.connected_subsets();
    let mut out = Vec::new();
    fn go(
        start: usize,
        left: usize,
        conn: &[Vec<usize>],
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<SXObject>,
    ) {
        out.push(SXObject {
            components: cur.clone(),
        });
        for k in start..conn.len() {
            if conn[k].len() <= left {
                cur.push(conn[k].clone());
                go(k, left - conn[k].len(), conn, cur, out);
                cur.pop();
            }
        }
    }
    go(0, max_vertices, &conn, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The traversing position `i'` with `{i, i'}` a flippable flat.
pub fn partner_position(x: &Quadruple, i: usize) -> Result<usize> {
    if !x.is_folded(i) {
        return Err(Error::NoPartner(i));
    }
    let flat = flat_of_subspace(x, &[i]);
    let trav: Vec<usize> = flat
        .positions()
        .iter()
        .copied()
        .filter(|&p| !x.is_folded(p))
        .collect();
    match trav.as_slice() {
        [t] if flat.folded_part(x) == [i] => Ok(*t),
        _ => Err(Error::NoPartner(i)),
    }
}

/// All neighbours of `i` in `Γ_X` lie inside the reflection interval
/// `[min(i,i'), max(i,i')]`, or all lie outside it.
pub fn is_special_vertex(x: &Quadruple, i: usize) -> Result<bool> {
    let partner = partner_position(x, i)?;
    let q = root_configuration_quiver(x)?;
    let (lo, hi) = (i.min(partner), i.max(partner));
    let inside: Vec<bool> = q
        .neighbours(i)
        .iter()
        .map(|&v| lo <= v && v <= hi)
        .collect();
    Ok(inside.iter().all(|&b| b) || inside.iter().all(|&b| !b))
}

/// Outcome of flipping at a special vertex.
#[derive(Clone, Debug)]
pub struct FlipReport {
    pub y: Quadruple,
    pub vertex: usize,
    pub partner: usize,
    pub quiver_x: LabeledQuiver,
    pub quiver_y: LabeledQuiver,
    /// `Γ_X` with the arrows at the vertex reversed and the vertex renamed.
    pub expected: LabeledQuiver,
    pub matches: bool,
    pub pi_is_longest: bool,
}

pub fn flip_reflection(x: &Quadruple, i: usize) -> Result<FlipReport> {
    if !is_special_vertex(x, i)? {
        return Err(Error::NotSpecial(i));
    }
    let partner = partner_position(x, i)?;
    let flat = flat_of_subspace(x, &[i]);
    let y = flip(x, &flat, i)?;
    let quiver_x = root_configuration_quiver(x)?;
    let quiver_y = root_configuration_quiver(&y)?;
    let expected = quiver_x.reflected_at(i, partner)?;
    Ok(FlipReport {
        matches: quiver_y == expected,
        pi_is_longest: x.pi().is_longest(),
        y,
        vertex: i,
        partner,
        quiver_x,
        quiver_y,
        expected,
    })
}

/// For every irreducible flat `F`, `Γ_{X_F}` relabeled by `F` is the full
/// subquiver of `Γ_X` on `F ∩ I`.
pub fn subquiver_correspondence_check(x: &Quadruple) -> Result<bool> {
    let gx = root_configuration_quiver(x)?;
    for f in irreducible_flats(x) {
        let sub = induced_quadruple(x, &f)?;
        let g = root_configuration_quiver(&sub)?;
        let lift = |v: usize| f.positions()[v - 1];
        let relabeled = LabeledQuiver::new(
            g.vertices().iter().map(|&v| lift(v)).collect(),
            g.arrows().iter().map(|&(a, b)| (lift(a), lift(b))).collect(),
        )?;
        if relabeled != gx.induced(&f.folded_part(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Results of checking (PE1)-(PE5) on the category of full subquivers of a
/// tree, where a morphism `S -> T` is a vertex set `P ⊆ S ∩ T` and
/// composition is intersection.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProtoExactReport {
    pub pe1: bool,
    pub pe2: bool,
    pub pe3: bool,
    pub pe4: bool,
    pub pe5: bool,
    pub squares_checked: usize,
}

impl ProtoExactReport {
    pub fn all_pass(&self) -> bool {
        self.pe1 && self.pe2 && self.pe3 && self.pe4 && self.pe5
    }
}

/// Morphism `source -> target` carried by `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Arrow {
    source: u64,
    target: u64,
    p: u64,
}

fn arrow(source: u64, target: u64, p: u64) -> Arrow {
    debug_assert!(p & !(source & target) == 0);
    Arrow { source, target, p }
}

fn then(f: Arrow, g: Arrow) -> Arrow {
    debug_assert_eq!(f.target, g.source);
    arrow(f.source, g.target, f.p & g.p)
}

struct SubquiverCategory<'a> {
    q: &'a LabeledQuiver,
    all: u64,
}

impl SubquiverCategory<'_> {
    fn objects(&self) -> impl Iterator<Item = u64> {
        submasks(self.all)
    }

    fn homs(&self, s: u64, t: u64) -> impl Iterator<Item = Arrow> {
        submasks(s & t).map(move |p| arrow(s, t, p))
    }

    fn is_mono(&self, f: Arrow) -> bool {
        f.p == f.source
            && f.source & !f.target == 0
            && InducedOrder::new(self.q, f.target).lower_closed(f.source)
    }

    fn is_epi(&self, f: Arrow) -> bool {
        f.p == f.target
            && f.target & !f.source == 0
            && InducedOrder::new(self.q, f.source).upper_closed(f.target)
    }

    fn is_iso(&self, f: Arrow) -> bool {
        self.homs(f.target, f.source).any(|g| {
            then(f, g) == arrow(f.source, f.source, f.source)
                && then(g, f) == arrow(f.target, f.target, f.target)
        })
    }

    /// Square `i: A -> B`, `j: A -> C`, `j': B -> D`, `i': C -> D`.
    fn commutes(&self, i: Arrow, j: Arrow, jp: Arrow, ip: Arrow) -> bool {
        then(i, jp) == then(j, ip)
    }

    fn is_cartesian(&self, i: Arrow, j: Arrow, jp: Arrow, ip: Arrow) -> bool {
        self.objects().all(|t| {
            self.homs(t, i.target).all(|u| {
                self.homs(t, j.target).all(|v| {
                    if then(u, jp) != then(v, ip) {
                        return true;
                    }
                    let lifts = self
                        .homs(t, i.source)
                        .filter(|&w| then(w, i) == u && then(w, j) == v)
                        .count();
                    lifts == 1
                })
            })
        })
    }

    fn is_cocartesian(&self, i: Arrow, j: Arrow, jp: Arrow, ip: Arrow) -> bool {
        self.objects().all(|t| {
            self.homs(i.target, t).all(|u| {
                self.homs(j.target, t).all(|v| {
                    if then(i, u) != then(j, v) {
                        return true;
                    }
                    let lifts = self
                        .homs(jp.target, t)
                        .filter(|&w| then(jp, w) == u && then(ip, w) == v)
                        .count();
                    lifts == 1
                })
            })
        })
    }

    fn bicartesian(&self, i: Arrow, j: Arrow, jp: Arrow, ip: Arrow) -> bool {
        self.commutes(i, j, jp, ip)
            && self.is_cartesian(i, j, jp, ip)
            && self.is_cocartesian(i, j, jp, ip)
    }
}

/// Exhaustive check of (PE1)-(PE5); `budget` caps the number of vertices
/// (the work grows like `32^n`).
pub fn proto_exact_check(q: &LabeledQuiver, max_vertices: usize) -> Result<ProtoExactReport> {
    if !q.is_tree() {
        return Err(Error::NotATree);
    }
    if q.vertices().len() > max_vertices {
        return Err(Error::BudgetExceeded(max_vertices));
    }
    let cat = SubquiverCategory {
        q,
        all: q.vertex_mask(),
    };
    let objects: Vec<u64> = cat.objects().collect();
    let mut report = ProtoExactReport {
        pe1: objects.iter().all(|&s| {
            let into: Vec<Arrow> = cat.homs(0, s).collect();
            let out: Vec<Arrow> = cat.homs(s, 0).collect();
            into.len() == 1 && out.len() == 1 && cat.is_mono(into[0]) && cat.is_epi(out[0])
        }),
        ..Default::default()
    };

    report.pe2 = objects.iter().all(|&s| {
        objects.iter().all(|&t| {
            cat.homs(s, t).all(|f| {
                let iso_ok = !cat.is_iso(f) || (cat.is_mono(f) && cat.is_epi(f));
                iso_ok
                    && objects.iter().all(|&u| {
                        cat.homs(t, u).all(|g| {
                            let h = then(f, g);
                            (!(cat.is_mono(f) && cat.is_mono(g)) || cat.is_mono(h))
                                && (!(cat.is_epi(f) && cat.is_epi(g)) || cat.is_epi(h))
                        })
                    })
            })
        })
    });

    // admissible monos and epis, listed once
    let monos: Vec<Arrow> = objects
        .iter()
        .flat_map(|&a| submasks(cat.all).map(move |b| (a, b)))
        .filter(|&(a, b)| a & !b == 0)
        .map(|(a, b)| arrow(a, b, a))
        .filter(|&f| cat.is_mono(f))
        .collect();
    let epis: Vec<Arrow> = objects
        .iter()
        .flat_map(|&a| submasks(a).map(move |c| arrow(a, c, c)))
        .filter(|&f| cat.is_epi(f))
        .collect();

    let squares: Vec<(Arrow, Arrow, Arrow, Arrow)> = monos
        .iter()
        .flat_map(|&i| {
            let epis = &epis;
            epis.iter()
                .filter(move |j| j.source == i.source)
                .flat_map(move |&j| {
                    epis.iter()
                        .filter(move |jp| jp.source == i.target)
                        .map(move |&jp| (i, j, jp))
                })
        })
        .flat_map(|(i, j, jp)| {
            monos
                .iter()
                .filter(move |ip| ip.source == j.target && ip.target == jp.target)
                .map(move |&ip| (i, j, jp, ip))
        })
        .filter(|&(i, j, jp, ip)| cat.commutes(i, j, jp, ip))
        .collect();
    report.squares_checked = squares.len();
    report.pe3 = par::all(&squares, |&(i, j, jp, ip)| {
        cat.is_cartesian(i, j, jp, ip) == cat.is_cocartesian(i, j, jp, ip)
    });

    // B -j'-> D <-i'- C completes to a bicartesian square
    let cospans: Vec<(Arrow, Arrow)> = epis
        .iter()
        .flat_map(|&jp| {
            monos
                .iter()
                .filter(move |ip| ip.target == jp.target)
                .map(move |&ip| (jp, ip))
        })
        .collect();
    report.pe4 = par::all(&cospans, |&(jp, ip)| {
        monos.iter().filter(|i| i.target == jp.source).any(|&i| {
            epis.iter()
                .filter(|j| j.source == i.source && j.target == ip.source)
                .any(|&j| cat.bicartesian(i, j, jp, ip))
        })
    });

    // C <-j- A -i-> B completes to a bicartesian square
    let spans: Vec<(Arrow, Arrow)> = monos
        .iter()
        .flat_map(|&i| {
            epis.iter()
                .filter(move |j| j.source == i.source)
                .map(move |&j| (i, j))
        })
        .collect();
    report.pe5 = par::all(&spans, |&(i, j)| {
        epis.iter().filter(|jp| jp.source == i.target).any(|&jp| {
            monos
                .iter()
                .filter(|ip| ip.source == j.target && ip.target == jp.target)
                .any(|&ip| cat.bicartesian(i, j, jp, ip))
        })
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn a3_standard() -> Quadruple {
        Quadruple::new(
            CoxeterSystem::type_a(3),
            vec![0, 1, 2, 0, 1, 2, 0, 1, 0],
            vec![1, 2, 3],
            None,
        )
        .unwrap()
    }

    fn obj(q: &LabeledQuiver, v: &[&[usize]]) -> SXObject {
        SXObject::new(q, v.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn a3_quiver_is_path() {
        assert_eq!(root_configuration_quiver(&a3_standard()).unwrap(), LabeledQuiver::path(3));
    }

    #[test]
    fn tree_detection() {
        assert!(LabeledQuiver::path(3).is_tree());
        let tri = LabeledQuiver::new(vec![1, 3, 4], vec![(1, 4), (3, 4), (3, 1)]).unwrap();
        assert!(!tri.is_tree());
        assert!(LabeledQuiver::new(vec![5], vec![]).unwrap().is_tree());
    }

    #[test]
    fn mono_checks_on_path() {
        let q = LabeledQuiver::path(3);
        assert!(admissible_mono_check(&q, &[3], &[2, 3]).unwrap());
        assert!(!admissible_mono_check(&q, &[1], &[1, 2]).unwrap());
        assert!(admissible_mono_check(&q, &[1, 2], &[1, 2]).unwrap());
        assert!(admissible_epi_check(&q, &[1], &[1, 2]).unwrap());
    }

    #[test]
    fn basic_sequences() {
        let q = LabeledQuiver::path(3);
        let s = basic_admissible_sequences(&q, &[1, 2]).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(&(vec![2], vec![1])));
        assert!(!s.contains(&(vec![1], vec![2])));
        assert_eq!(basic_admissible_sequences(&q, &[]).unwrap(), vec![(vec![], vec![])]);
        assert_eq!(basic_admissible_sequences(&q, &[1, 3]).unwrap().len(), 4);
    }

    #[test]
    fn products_on_path() {
        let q = LabeledQuiver::path(3);
        let (s1, s2) = (obj(&q, &[&[1]]), obj(&q, &[&[2]]));
        let p = sx_class_product(&q, &s2, &s1).unwrap();
        assert_eq!(
            p,
            BTreeMap::from([(obj(&q, &[&[1], &[2]]), 1), (obj(&q, &[&[1, 2]]), 1)])
        );
        let p = sx_class_product(&q, &s1, &s2).unwrap();
        assert_eq!(p, BTreeMap::from([(obj(&q, &[&[1], &[2]]), 1)]));
        let p = sx_class_product(&q, &s1, &s1).unwrap();
        assert_eq!(p, BTreeMap::from([(obj(&q, &[&[1], &[1]]), 2)]));
        let p = sx_class_product(&q, &s1, &SXObject::empty()).unwrap();
        assert_eq!(p, sx_basis(&s1));
    }

    #[test]
    fn coproduct_terms() {
        let q = LabeledQuiver::path(3);
        assert_eq!(sx_coproduct(&obj(&q, &[&[1], &[2]])).len(), 4);
        assert_eq!(sx_coproduct(&obj(&q, &[&[1, 2]])).len(), 2);
        assert_eq!(sx_coproduct(&SXObject::empty()).len(), 1);
        assert_eq!(sx_coproduct(&obj(&q, &[&[1], &[1]])).len(), 3);
    }

    #[test]
    fn flip_on_a3() {
        let x = a3_standard();
        assert_eq!(partner_position(&x, 3).unwrap(), 9);
        assert!(is_special_vertex(&x, 3).unwrap());
        let r = flip_reflection(&x, 3).unwrap();
        assert_eq!(r.y.face(), &[1, 2, 9]);
        assert!(r.matches);
        assert_eq!(
            r.quiver_y,
            LabeledQuiver::new(vec![1, 2, 9], vec![(1, 2), (9, 2)]).unwrap()
        );
    }

    #[test]
    fn proto_exact_on_small_trees() {
        let r = proto_exact_check(&LabeledQuiver::path(3), 4).unwrap();
        assert!(r.all_pass(), "{r:?}");
        let star = LabeledQuiver::new(vec![1, 2, 3], vec![(1, 2), (3, 2)]).unwrap();
        assert!(proto_exact_check(&star, 4).unwrap().all_pass());
    }

    #[test]
    fn correspondence_on_a3() {
        assert!(subquiver_correspondence_check(&a3_standard()).unwrap());
    }

    #[test]
    fn dot_output() {
        assert_eq!(LabeledQuiver::empty().to_dot(), "digraph quiver {\n}\n");
        assert!(LabeledQuiver::path(2).to_dot().contains("  1 -> 2;\n"));
    }
}
