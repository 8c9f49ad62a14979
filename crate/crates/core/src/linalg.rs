//! Exact linear algebra over the rationals.
//!
//! Everything here works on small dense vectors; no floating point is used
//! anywhere in span membership or rank computations.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i64>;

/// Reduced row-echelon basis of a subspace of `Q^dim`.
///
/// Each stored row has a leading 1 at its pivot column and zeros at the
/// pivot columns of all other rows.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I>(dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a [i64]>,
    {
        let mut span = Span::new(dim);
        for v in vectors {
            span.insert(v);
        }
        span
    }

    /// Dimension of the spanned subspace.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[i64]) -> Vec<Rational> {
        debug_assert_eq!(v.len(), self.dim);
        let mut w: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x)).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if !c.is_zero() {
                for (wk, rk) in w.iter_mut().zip(row) {
                    *wk -= c * rk;
                }
            }
        }
        w
    }

    /// Adds `v` to the spanning set. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = w[p];
        for x in w.iter_mut() {
            *x /= lead;
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                for (rk, wk) in row.iter_mut().zip(&w) {
                    *rk -= c * wk;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Rank of a family of integer vectors of common length `dim`.
pub fn rank<'a, I>(dim: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = &'a [i64]>,
{
    Span::from_vectors(dim, vectors).rank()
}

/// Rank of an integer matrix given by rows, computed with 128-bit fractions.
///
/// Used for structure-constant matrices whose entries grow faster than root
/// coordinates do.
pub fn matrix_rank(rows: &[Vec<i64>]) -> usize {
    type Q = Ratio<i128>;
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let lead = m[rank][col];
        for x in m[rank].iter_mut() {
            *x /= lead;
        }
        debug_assert!(m[rank][col].is_one());
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let c = m[r][col];
                let (pivot_row, other) = if r < rank {
                    let (a, b) = m.split_at_mut(rank);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[rank], &mut b[0])
                };
                for (o, p) in other.iter_mut().zip(pivot_row.iter()) {
                    *o -= c * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_membership() {
        let span = Span::from_vectors(3, [&[1i64, 1, 0][..], &[0, 1, 1][..]]);
        assert_eq!(span.rank(), 2);
        assert!(span.contains(&[1, 0, -1]));
        assert!(span.contains(&[0, 0, 0]));
        assert!(!span.contains(&[0, 0, 1]));
    }

    #[test]
    fn dependent_insert_does_not_grow() {
        let mut span = Span::new(2);
        assert!(span.insert(&[2, 4]));
        assert!(!span.insert(&[-1, -2]));
        assert!(!span.insert(&[0, 0]));
        assert_eq!(span.rank(), 1);
    }

    #[test]
    fn matrix_rank_basic() {
        assert_eq!(matrix_rank(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
        assert_eq!(matrix_rank(&[]), 0);
        assert_eq!(matrix_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(matrix_rank(&[vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
    }
}
