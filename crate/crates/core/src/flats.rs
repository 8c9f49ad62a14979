//! Flats of a quadruple and the quadruples they induce.

use std::fmt;

use crate::coxeter::{CoxeterSystem, Root};
use crate::error::{Error, Result};
use crate::linalg::{rank, Span};
use crate::subword::{embed, fmt_list, Quadruple};

/// A sorted set of 1-based positions closed under span membership.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat(Vec<usize>);

impl Flat {
    /// Wraps positions without checking closure; they are sorted and deduplicated.
    pub fn from_positions(mut positions: Vec<usize>) -> Flat {
        positions.sort_unstable();
        positions.dedup();
        Flat(positions)
    }

    pub fn empty() -> Flat {
        Flat(Vec::new())
    }

    /// All positions `1..=n`.
    pub fn full(n: usize) -> Flat {
        Flat((1..=n).collect())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    /// 1-based index of `p` inside the flat (the map `b_F`).
    pub fn index_of(&self, p: usize) -> Option<usize> {
        self.0.binary_search(&p).ok().map(|k| k + 1)
    }

    pub fn intersection(&self, other: &[usize]) -> Vec<usize> {
        self.0.iter().copied().filter(|p| other.contains(p)).collect()
    }

    /// Positions of the flat that lie in the face of `x`.
    pub fn folded_part(&self, x: &Quadruple) -> Vec<usize> {
        self.0.iter().copied().filter(|&p| x.is_folded(p)).collect()
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn roots_of(x: &Quadruple) -> Vec<Root> {
    x.root_function().all_roots
}

fn span_of(x: &Quadruple, roots: &[Root], positions: &[usize]) -> Span {
    Span::from_vectors(x.rank(), positions.iter().map(|&p| roots[p - 1].coords()))
}

/// `F(V(H))`: positions whose root lies in the span of the roots at `generators`.
pub fn flat_of_subspace(x: &Quadruple, generators: &[usize]) -> Flat {
    let roots = roots_of(x);
    let span = span_of(x, &roots, generators);
    Flat(
        (1..=x.len())
            .filter(|&p| span.contains(roots[p - 1].coords()))
            .collect(),
    )
}

/// Dimension of `V(F)`.
pub fn span_dim(x: &Quadruple, positions: &[usize]) -> usize {
    let roots = roots_of(x);
    rank(x.rank(), positions.iter().map(|&p| roots[p - 1].coords()))
}

pub fn is_flat(x: &Quadruple, positions: &[usize]) -> bool {
    if positions.iter().any(|&p| p == 0 || p > x.len()) {
        return false;
    }
    flat_of_subspace(x, positions).positions() == sorted(positions).as_slice()
}

/// `F = F(V(F ∩ I))`.
pub fn is_irreducible_flat(x: &Quadruple, flat: &Flat) -> bool {
    flat_of_subspace(x, &flat.folded_part(x)) == *flat
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// All subsets of `items`, in binary counting order.
pub(crate) fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0u64..1u64 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    })
}

/// Irreducible flats, one per distinct `F(V(J))` with `J ⊆ I`, sorted.
pub fn irreducible_flats(x: &Quadruple) -> Vec<Flat> {
    let roots = roots_of(x);
    let mut out: Vec<Flat> = subsets(x.face())
        .map(|j| {
            let span = span_of(x, &roots, &j);
            Flat(
                (1..=x.len())
                    .filter(|&p| span.contains(roots[p - 1].coords()))
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The quadruple `X_F` carried by the roots `beta_F`.
///
/// The result keeps the `beta` vectors as its ambient realization, expressed
/// in the coordinates of `x`'s own ambient lattice when `x` has one.
pub fn induced_quadruple(x: &Quadruple, flat: &Flat) -> Result<Quadruple> {
    if !is_flat(x, flat.positions()) {
        return Err(Error::NotAFlat(flat.positions().to_vec()));
    }
    let sys = x.system();
    let word = x.word();
    let mut prefix = sys.identity();
    let mut betas: Vec<Root> = Vec::with_capacity(flat.len());
    for p in 1..=x.len() {
        let s = word[p - 1];
        if flat.contains(p) {
            betas.push(prefix.image_of_simple(s));
        } else if !x.is_folded(p) {
            prefix = prefix.mul_generator(sys, s);
        }
    }
    let mut simple: Vec<Root> = Vec::new();
    let mut letters = Vec::with_capacity(betas.len());
    for b in &betas {
        let k = match simple.iter().position(|r| r == b) {
            Some(k) => k,
            None => {
                simple.push(b.clone());
                simple.len() - 1
            }
        };
        letters.push(k);
    }
    if let Some(bad) = simple.iter().find(|b| !b.is_positive()) {
        return Err(Error::Validation(format!(
            "induced simple root {bad} is not positive"
        )));
    }
    let dim = span_dim(x, flat.positions());
    if rank(x.rank(), simple.iter().map(Root::coords)) != simple.len() || simple.len() != dim {
        return Err(Error::Validation(format!(
            "induced roots of flat {flat} do not form a basis of its span"
        )));
    }
    let r = simple.len();
    let mut coxeter = vec![vec![crate::coxeter::Bond::Finite(1); r]; r];
    let mut cartan = vec![vec![2i64; r]; r];
    for a in 0..r {
        for b in 0..r {
            if a == b {
                continue;
            }
            coxeter[a][b] = sys.coxeter_order_from_roots(&simple[a], &simple[b])?;
            let ab = sys.form(simple[a].coords(), simple[b].coords());
            let aa = sys.form(simple[a].coords(), simple[a].coords());
            let c = crate::linalg::Rational::from_integer(2) * ab / aa;
            if !c.is_integer() {
                return Err(Error::NotCrystallographicPair(c.to_string()));
            }
            cartan[a][b] = c.to_integer();
        }
    }
    let subsystem = CoxeterSystem::new(coxeter, Some(cartan))?;
    let face: Vec<usize> = flat
        .positions()
        .iter()
        .enumerate()
        .filter(|(_, &p)| x.is_folded(p))
        .map(|(k, _)| k + 1)
        .collect();
    let images = match x.ambient() {
        Some(parent) => simple.iter().map(|b| embed(parent, b)).collect(),
        None => simple,
    };
    Quadruple::new(subsystem, letters, face, None)?.with_ambient(images)
}

/// Irreducible flats `F'` with `V(F) ⊕ V(F') = V_X`.
pub fn complements(x: &Quadruple, flat: &Flat) -> Vec<Flat> {
    let d = span_dim(x, flat.positions());
    let total = span_dim(x, &(1..=x.len()).collect::<Vec<_>>());
    irreducible_flats(x)
        .into_iter()
        .filter(|g| {
            let dg = span_dim(x, g.positions());
            if d + dg != total {
                return false;
            }
            let mut union = flat.positions().to_vec();
            union.extend_from_slice(g.positions());
            span_dim(x, &union) == total
        })
        .collect()
}

/// For a root-independent quadruple: the flat `f(J)` generated by `J ⊆ I`.
pub fn flat_of_folded(x: &Quadruple, j: &[usize]) -> Flat {
    flat_of_subspace(x, j)
}

impl Flat {
    /// Debug-friendly list form used in reports.
    pub fn to_list(&self) -> String {
        fmt_list(self.0.iter().copied())
    }
}
