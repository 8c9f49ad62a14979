//! Crystallographic Coxeter systems, roots and group elements.
//!
//! Generators are 0-based internally. A word `[a, b, c]` spells the product
//! `s_a s_b s_c`, which acts on a vector by applying `s_c` first.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Off-diagonal entry of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn commutes(self) -> bool {
        self == Bond::Finite(2)
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => f.write_str("inf"),
        }
    }
}

/// Integer vector in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn zero(rank: usize) -> Root {
        Root(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x <= 0)
    }

    pub fn scaled(&self, c: i64) -> Root {
        Root(self.0.iter().map(|x| x * c).collect())
    }
}

impl Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.into_iter().map(|x| -x).collect())
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Prints as a combination of simple roots, e.g. `a1+a2` or `-a3`.
impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// Coxeter matrix with an integer Cartan realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    coxeter: Vec<Vec<Bond>>,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<Rational>,
}

fn bond_product(m: Bond) -> Option<i64> {
    match m {
        Bond::Finite(2) => Some(0),
        Bond::Finite(3) => Some(1),
        Bond::Finite(4) => Some(2),
        Bond::Finite(6) => Some(3),
        _ => None,
    }
}

/// Default Cartan entries `(A(i,j), A(j,i))` for `i < j`.
fn default_lift(m: Bond) -> (i64, i64) {
    match m {
        Bond::Finite(3) => (-1, -1),
        Bond::Finite(4) => (-1, -2),
        Bond::Finite(6) => (-1, -3),
        Bond::Infinite => (-2, -2),
        _ => (0, 0),
    }
}

impl CoxeterSystem {
    /// Builds a system from a Coxeter matrix, lifting it to a Cartan matrix
    /// when `cartan` is `None`.
    pub fn new(coxeter: Vec<Vec<Bond>>, cartan: Option<Vec<Vec<i64>>>) -> Result<Self> {
        let n = coxeter.len();
        for (i, row) in coxeter.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if row[i] != Bond::Finite(1) {
                return Err(Error::InvalidSystem(format!(
                    "diagonal entry m({0},{0}) must be 1",
                    i + 1
                )));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if m != coxeter[j][i] {
                    return Err(Error::InvalidSystem(format!(
                        "matrix is not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
                if m != Bond::Infinite && bond_product(m).is_none() {
                    return Err(Error::InvalidSystem(format!(
                        "m({},{}) = {m} is not crystallographic",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let cartan = match cartan {
            Some(c) => c,
            None => {
                let mut c = vec![vec![0i64; n]; n];
                for i in 0..n {
                    c[i][i] = 2;
                    for j in i + 1..n {
                        let (a, b) = default_lift(coxeter[i][j]);
                        c[i][j] = a;
                        c[j][i] = b;
                    }
                }
                c
            }
        };
        if cartan.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: cartan.len(),
            });
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if row[i] != 2 {
                return Err(Error::InvalidSystem(format!(
                    "Cartan diagonal entry A({0},{0}) must be 2",
                    i + 1
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (cartan[i][j], cartan[j][i]);
                let ok = a <= 0
                    && b <= 0
                    && match bond_product(coxeter[i][j]) {
                        Some(p) => a * b == p && ((a == 0) == (b == 0)),
                        None => a * b >= 4,
                    };
                if !ok {
                    return Err(Error::InvalidSystem(format!(
                        "Cartan entries A({i1},{j1})={a}, A({j1},{i1})={b} do not realize m={m}",
                        i1 = i + 1,
                        j1 = j + 1,
                        m = coxeter[i][j]
                    )));
                }
            }
        }
        let symmetrizer = solve_symmetrizer(&cartan)?;
        Ok(CoxeterSystem {
            coxeter,
            cartan,
            symmetrizer,
        })
    }

    /// Builds a system from Coxeter matrix entries written as integers, with
    /// `0` standing for infinity.
    pub fn from_orders(orders: &[Vec<u32>]) -> Result<Self> {
        let coxeter = orders
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&m| if m == 0 { Bond::Infinite } else { Bond::Finite(m) })
                    .collect()
            })
            .collect();
        CoxeterSystem::new(coxeter, None)
    }

    /// The rank-0 system.
    pub fn trivial() -> Self {
        CoxeterSystem {
            coxeter: Vec::new(),
            cartan: Vec::new(),
            symmetrizer: Vec::new(),
        }
    }

    /// Type `A_n`: a path of simple bonds.
    pub fn type_a(n: usize) -> Self {
        let mut m = vec![vec![Bond::Finite(2); n]; n];
        for i in 0..n {
            m[i][i] = Bond::Finite(1);
            if i + 1 < n {
                m[i][i + 1] = Bond::Finite(3);
                m[i + 1][i] = Bond::Finite(3);
            }
        }
        CoxeterSystem::new(m, None).expect("type A is valid")
    }

    /// Type `B_n` (`n >= 2`) with the short simple root last.
    pub fn type_b(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSystem("type B needs rank at least 2".into()));
        }
        let mut m = CoxeterSystem::type_a(n).coxeter;
        m[n - 2][n - 1] = Bond::Finite(4);
        m[n - 1][n - 2] = Bond::Finite(4);
        CoxeterSystem::new(m, None)
    }

    /// Type `D_n` (`n >= 4`): generators `n-1` and `n` both attach to `n-2`.
    pub fn type_d(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidSystem("type D needs rank at least 4".into()));
        }
        let mut m = CoxeterSystem::type_a(n).coxeter;
        m[n - 2][n - 1] = Bond::Finite(2);
        m[n - 1][n - 2] = Bond::Finite(2);
        m[n - 3][n - 1] = Bond::Finite(3);
        m[n - 1][n - 3] = Bond::Finite(3);
        CoxeterSystem::new(m, None)
    }

    /// Type `G_2`.
    pub fn type_g2() -> Self {
        CoxeterSystem::from_orders(&[vec![1, 6], vec![6, 1]]).expect("G2 is valid")
    }

    /// Affine type `~A_n` (`n >= 2`): a cycle of `n + 1` simple bonds.
    pub fn affine_a(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSystem(
                "affine type A needs rank parameter at least 2".into(),
            ));
        }
        let k = n + 1;
        let mut m = CoxeterSystem::type_a(k).coxeter;
        m[0][k - 1] = Bond::Finite(3);
        m[k - 1][0] = Bond::Finite(3);
        CoxeterSystem::new(m, None)
    }

    /// Looks up a named preset such as `A3`, `B2`, `D4`, `G2`, `~A2`
    /// (also spelled `affineA2`) or `trivial`.
    pub fn preset(name: &str) -> Result<Self> {
        let name = name.trim();
        if name.eq_ignore_ascii_case("trivial") {
            return Ok(CoxeterSystem::trivial());
        }
        if name.eq_ignore_ascii_case("G2") {
            return Ok(CoxeterSystem::type_g2());
        }
        let bad = || Error::InvalidSystem(format!("unknown preset `{name}`"));
        let (family, digits) = if let Some(rest) = name
            .strip_prefix('~')
            .or_else(|| name.strip_prefix("affine"))
        {
            let mut chars = rest.chars();
            let fam = chars.next().ok_or_else(bad)?;
            (format!("~{}", fam.to_ascii_uppercase()), chars.as_str())
        } else {
            let mut chars = name.chars();
            let fam = chars.next().ok_or_else(bad)?;
            (fam.to_ascii_uppercase().to_string(), chars.as_str())
        };
        let n: usize = digits.parse().map_err(|_| bad())?;
        match family.as_str() {
            "A" => Ok(CoxeterSystem::type_a(n)),
            "B" => CoxeterSystem::type_b(n),
            "D" => CoxeterSystem::type_d(n),
            "~A" => CoxeterSystem::affine_a(n),
            _ => Err(bad()),
        }
    }

    pub fn rank(&self) -> usize {
        self.coxeter.len()
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.coxeter[i][j]
    }

    pub fn coxeter_matrix(&self) -> &[Vec<Bond>] {
        &self.coxeter
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[Rational] {
        &self.symmetrizer
    }

    pub fn check_generator(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::InvalidGenerator {
                index: i,
                rank: self.rank(),
            })
        }
    }

    pub fn check_word(&self, word: &[usize]) -> Result<()> {
        word.iter().try_for_each(|&s| self.check_generator(s))
    }

    fn check_root(&self, v: &Root) -> Result<()> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: v.len(),
            })
        }
    }

    /// Applies the simple reflection `s_i` in place.
    pub fn reflect_simple(&self, i: usize, v: &mut [i64]) {
        let c: i64 = self.cartan[i].iter().zip(v.iter()).map(|(a, x)| a * x).sum();
        v[i] -= c;
    }

    /// Applies the element spelled by `word` to `v`.
    pub fn act_on_root(&self, word: &[usize], v: &Root) -> Result<Root> {
        self.check_word(word)?;
        self.check_root(v)?;
        let mut out = v.0.clone();
        for &s in word.iter().rev() {
            self.reflect_simple(s, &mut out);
        }
        Ok(Root(out))
    }

    /// Symmetrized form `B(u, v) = sum_ij u_i d_i A(i,j) v_j`.
    pub fn bilinear_form(&self, u: &Root, v: &Root) -> Result<Rational> {
        self.check_root(u)?;
        self.check_root(v)?;
        Ok(self.form(u.coords(), v.coords()))
    }

    /// Unchecked form on raw coordinates.
    pub fn form(&self, u: &[i64], v: &[i64]) -> Rational {
        let mut total = Rational::zero();
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let inner: i64 = self.cartan[i].iter().zip(v).map(|(a, x)| a * x).sum();
            total += self.symmetrizer[i] * Rational::from_integer(ui * inner);
        }
        total
    }

    /// Reflection of `v` along the real root `beta`.
    pub fn reflect_along(&self, beta: &Root, v: &Root) -> Result<Root> {
        self.check_root(beta)?;
        self.check_root(v)?;
        let bb = self.form(beta.coords(), beta.coords());
        if bb.is_zero() || bb.is_negative() {
            return Err(Error::Validation(format!("{beta} is not a real root")));
        }
        let c = Rational::from_integer(2) * self.form(beta.coords(), v.coords()) / bb;
        if !c.is_integer() {
            return Err(Error::Validation(format!(
                "reflection along {beta} is not integral on {v}"
            )));
        }
        Ok(v - &beta.scaled(c.to_integer()))
    }

    /// Order of `s_u s_v` for two non-proportional real roots.
    pub fn coxeter_order_from_roots(&self, u: &Root, v: &Root) -> Result<Bond> {
        let uv = self.bilinear_form(u, v)?;
        let uu = self.form(u.coords(), u.coords());
        let vv = self.form(v.coords(), v.coords());
        if !uu.is_positive() || !vv.is_positive() {
            return Err(Error::Validation("roots must have positive norm".into()));
        }
        let k = Rational::from_integer(4) * uv * uv / (uu * vv);
        if k >= Rational::from_integer(4) {
            return Ok(Bond::Infinite);
        }
        if !k.is_integer() {
            return Err(Error::NotCrystallographicPair(k.to_string()));
        }
        Ok(match k.to_integer() {
            0 => Bond::Finite(2),
            1 => Bond::Finite(3),
            2 => Bond::Finite(4),
            3 => Bond::Finite(6),
            _ => unreachable!("k is an integer in [0, 4)"),
        })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.rank())
    }

    /// The group element spelled by `word`, with its length.
    pub fn element(&self, word: &[usize]) -> Result<GroupElement> {
        self.check_word(word)?;
        let mut w = self.identity();
        for &s in word {
            w = w.mul_generator(self, s);
        }
        Ok(w)
    }

    pub fn is_reduced(&self, word: &[usize]) -> Result<bool> {
        self.check_word(word)?;
        let mut w = self.identity();
        for &s in word {
            if w.has_right_descent(s) {
                return Ok(false);
            }
            w = w.mul_generator(self, s);
        }
        Ok(true)
    }

    /// Demazure product: multiply by each letter only when the length grows.
    pub fn demazure_product(&self, word: &[usize]) -> Result<GroupElement> {
        self.check_word(word)?;
        let mut w = self.identity();
        for &s in word {
            if !w.has_right_descent(s) {
                w = w.mul_generator(self, s);
            }
        }
        Ok(w)
    }

    /// Whether some subword of `word` is a reduced expression of `target`.
    ///
    /// Scans the word from the right, peeling a letter off the target
    /// whenever that letter is a right descent of what remains.
    pub fn contains_reduced_expression(
        &self,
        word: &[usize],
        target: &GroupElement,
    ) -> Result<bool> {
        self.check_word(word)?;
        if target.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: target.rank(),
            });
        }
        let mut u = target.clone();
        for &s in word.iter().rev() {
            if u.length() == 0 {
                break;
            }
            if u.has_right_descent(s) {
                u = u.mul_generator(self, s);
            }
        }
        Ok(u.length() == 0)
    }

    /// Generator permutations preserving the Coxeter matrix, in
    /// lexicographic order.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.extend_automorphism(&mut perm, &mut used, &mut out);
        out
    }

    fn extend_automorphism(&self, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let k = perm.len();
        if k == self.rank() {
            out.push(perm.clone());
            return;
        }
        for c in 0..self.rank() {
            if used[c] {
                continue;
            }
            if (0..k).all(|j| self.coxeter[k][j] == self.coxeter[c][perm[j]]) {
                used[c] = true;
                perm.push(c);
                self.extend_automorphism(perm, used, out);
                perm.pop();
                used[c] = false;
            }
        }
    }

    /// Block-diagonal product system; `other`'s generators come after ours.
    pub fn direct_sum(&self, other: &CoxeterSystem) -> CoxeterSystem {
        let (a, b) = (self.rank(), other.rank());
        let n = a + b;
        let mut coxeter = vec![vec![Bond::Finite(2); n]; n];
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i < a && j < a {
                    coxeter[i][j] = self.coxeter[i][j];
                    cartan[i][j] = self.cartan[i][j];
                } else if i >= a && j >= a {
                    coxeter[i][j] = other.coxeter[i - a][j - a];
                    cartan[i][j] = other.cartan[i - a][j - a];
                }
            }
        }
        let mut symmetrizer = self.symmetrizer.clone();
        symmetrizer.extend_from_slice(&other.symmetrizer);
        CoxeterSystem {
            coxeter,
            cartan,
            symmetrizer,
        }
    }

    /// Relabels generators: new generator `k` is old generator `order[k]`.
    pub fn relabeled(&self, order: &[usize]) -> CoxeterSystem {
        let n = self.rank();
        debug_assert_eq!(order.len(), n);
        let coxeter = (0..n)
            .map(|i| (0..n).map(|j| self.coxeter[order[i]][order[j]]).collect())
            .collect();
        let cartan = (0..n)
            .map(|i| (0..n).map(|j| self.cartan[order[i]][order[j]]).collect())
            .collect();
        let symmetrizer = order.iter().map(|&i| self.symmetrizer[i]).collect();
        CoxeterSystem {
            coxeter,
            cartan,
            symmetrizer,
        }
    }
}

/// Solves `d_i A(i,j) = d_j A(j,i)` by propagating along nonzero entries.
fn solve_symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<Rational>> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::from_integer(1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].expect("visited");
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = di * Rational::new(cartan[i][j], cartan[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::InvalidSystem(
                            "Cartan matrix is not symmetrizable".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(d.into_iter().map(|x| x.expect("all visited")).collect())
}

/// Element of the Coxeter group, stored by its action on simple roots.
///
/// Column `j` of the action matrix is `w(alpha_j)`.
#[derive(Clone, Debug)]
pub struct GroupElement {
    columns: Vec<Vec<i64>>,
    length: usize,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.columns == other.columns
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.columns.hash(state);
    }
}

impl GroupElement {
    pub fn identity(rank: usize) -> Self {
        GroupElement {
            columns: (0..rank).map(|j| Root::simple(rank, j).0).collect(),
            length: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Row-major action matrix.
    pub fn action_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.columns[j][i]).collect())
            .collect()
    }

    pub fn image_of_simple(&self, j: usize) -> Root {
        Root(self.columns[j].clone())
    }

    pub fn apply(&self, v: &Root) -> Root {
        let mut out = vec![0i64; self.rank()];
        for (col, &c) in self.columns.iter().zip(v.coords()) {
            if c != 0 {
                for (o, x) in out.iter_mut().zip(col) {
                    *o += c * x;
                }
            }
        }
        Root(out)
    }

    /// `s` is a right descent iff `w(alpha_s)` is negative.
    pub fn has_right_descent(&self, s: usize) -> bool {
        self.columns[s].iter().any(|&x| x < 0)
    }

    /// Right multiplication `w s`.
    pub fn mul_generator(&self, system: &CoxeterSystem, s: usize) -> GroupElement {
        let descent = self.has_right_descent(s);
        let col_s = self.columns[s].clone();
        let columns = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, col)| {
                let a = system.cartan[s][j];
                if a == 0 {
                    col.clone()
                } else {
                    col.iter().zip(&col_s).map(|(x, y)| x - a * y).collect()
                }
            })
            .collect();
        GroupElement {
            columns,
            length: if descent { self.length - 1 } else { self.length + 1 },
        }
    }

    /// Every simple root is sent to a negative root: the longest element.
    pub fn is_longest(&self) -> bool {
        (0..self.rank()).all(|s| self.has_right_descent(s))
    }

    /// A reduced word for this element (lexicographically smallest letters
    /// peeled from the right).
    pub fn reduced_word(&self, system: &CoxeterSystem) -> Vec<usize> {
        let mut u = self.clone();
        let mut rev = Vec::with_capacity(self.length);
        while u.length > 0 {
            let s = (0..u.rank())
                .find(|&s| u.has_right_descent(s))
                .expect("non-identity element has a descent");
            rev.push(s);
            u = u.mul_generator(system, s);
        }
        rev.reverse();
        rev
    }

    /// Block product of elements of two systems, matching
    /// [`CoxeterSystem::direct_sum`].
    pub fn direct_sum(&self, other: &GroupElement) -> GroupElement {
        let (a, b) = (self.rank(), other.rank());
        let mut columns = Vec::with_capacity(a + b);
        for col in &self.columns {
            let mut c = col.clone();
            c.resize(a + b, 0);
            columns.push(c);
        }
        for col in &other.columns {
            let mut c = vec![0; a];
            c.extend_from_slice(col);
            columns.push(c);
        }
        GroupElement {
            columns,
            length: self.length + other.length,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Root {
        Root(v.to_vec())
    }

    #[test]
    fn simple_reflection_negates() {
        let a1 = CoxeterSystem::type_a(1);
        assert_eq!(a1.act_on_root(&[0], &r(&[1])).unwrap(), r(&[-1]));
        let a3 = CoxeterSystem::type_a(3);
        assert_eq!(a3.act_on_root(&[], &r(&[0, 1, 0])).unwrap(), r(&[0, 1, 0]));
    }

    #[test]
    fn five_letter_word_sends_alpha1_to_alpha3() {
        let a3 = CoxeterSystem::type_a(3);
        let img = a3.act_on_root(&[0, 1, 2, 0, 1], &r(&[1, 0, 0])).unwrap();
        assert_eq!(img, r(&[0, 0, 1]));
    }

    #[test]
    fn invalid_generator_rejected() {
        let a2 = CoxeterSystem::type_a(2);
        assert_eq!(
            a2.act_on_root(&[2], &r(&[1, 0])),
            Err(Error::InvalidGenerator { index: 2, rank: 2 })
        );
    }

    #[test]
    fn reducedness() {
        let a1 = CoxeterSystem::type_a(1);
        assert!(!a1.is_reduced(&[0, 0]).unwrap());
        assert!(CoxeterSystem::type_a(2).is_reduced(&[0, 1, 0]).unwrap());
        let a3 = CoxeterSystem::type_a(3);
        assert!(a3.is_reduced(&[0, 1, 2, 0, 1, 0]).unwrap());
        let w0 = a3.element(&[0, 1, 2, 0, 1, 0]).unwrap();
        assert_eq!(w0.length(), 6);
        assert!(w0.is_longest());
    }

    #[test]
    fn demazure_examples() {
        let a1 = CoxeterSystem::type_a(1);
        assert_eq!(a1.demazure_product(&[0, 0]).unwrap(), a1.element(&[0]).unwrap());
        assert!(a1.demazure_product(&[]).unwrap().is_identity());
        let a3 = CoxeterSystem::type_a(3);
        let d = a3.demazure_product(&[0, 1, 2, 0, 1, 2, 0, 1, 0]).unwrap();
        assert!(d.is_longest());
        assert_eq!(d.length(), 6);
    }

    #[test]
    fn contains_reduced_expression_examples() {
        let a1 = CoxeterSystem::type_a(1);
        let s = a1.element(&[0]).unwrap();
        assert!(a1.contains_reduced_expression(&[0, 0], &s).unwrap());
        assert!(!a1.contains_reduced_expression(&[], &s).unwrap());
        let a2 = CoxeterSystem::type_a(2);
        let s2s1 = a2.element(&[1, 0]).unwrap();
        assert!(!a2.contains_reduced_expression(&[0, 1], &s2s1).unwrap());
    }

    #[test]
    fn form_values() {
        let a3 = CoxeterSystem::type_a(3);
        let f = |u: &[i64], v: &[i64]| a3.bilinear_form(&r(u), &r(v)).unwrap();
        assert_eq!(f(&[1, 0, 0], &[0, 0, 1]), Rational::from_integer(0));
        assert_eq!(f(&[1, 0, 0], &[0, 1, 0]), Rational::from_integer(-1));
        assert_eq!(f(&[1, 1, 0], &[0, 1, 0]), Rational::from_integer(1));
    }

    #[test]
    fn orders_from_roots() {
        let a3 = CoxeterSystem::type_a(3);
        assert_eq!(
            a3.coxeter_order_from_roots(&r(&[1, 0, 0]), &r(&[0, 0, 1])).unwrap(),
            Bond::Finite(2)
        );
        let a2 = CoxeterSystem::type_a(2);
        assert_eq!(
            a2.coxeter_order_from_roots(&r(&[1, 0]), &r(&[0, 1])).unwrap(),
            Bond::Finite(3)
        );
        assert_eq!(
            a2.coxeter_order_from_roots(&r(&[1, 1]), &r(&[0, 1])).unwrap(),
            Bond::Finite(3)
        );
        let b2 = CoxeterSystem::type_b(2).unwrap();
        assert_eq!(
            b2.coxeter_order_from_roots(&r(&[1, 0]), &r(&[0, 1])).unwrap(),
            Bond::Finite(4)
        );
        let aff = CoxeterSystem::affine_a(2).unwrap();
        assert_eq!(
            aff.coxeter_order_from_roots(&r(&[1, 0, 0]), &r(&[0, 1, 1])).unwrap(),
            Bond::Infinite
        );
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(CoxeterSystem::type_a(1).diagram_automorphisms().len(), 1);
        let a3 = CoxeterSystem::type_a(3).diagram_automorphisms();
        assert_eq!(a3, vec![vec![0, 1, 2], vec![2, 1, 0]]);
        assert_eq!(CoxeterSystem::type_d(4).unwrap().diagram_automorphisms().len(), 6);
    }

    #[test]
    fn presets_parse() {
        assert_eq!(CoxeterSystem::preset("A3").unwrap().rank(), 3);
        assert_eq!(CoxeterSystem::preset("~A2").unwrap().rank(), 3);
        assert_eq!(CoxeterSystem::preset("affineA2").unwrap().rank(), 3);
        assert_eq!(CoxeterSystem::preset("trivial").unwrap().rank(), 0);
        assert!(CoxeterSystem::preset("E9x").is_err());
        let d4 = CoxeterSystem::preset("D4").unwrap();
        // centre node is generator 2 (0-based 1)
        assert_eq!(d4.bond(1, 0), Bond::Finite(3));
        assert_eq!(d4.bond(1, 2), Bond::Finite(3));
        assert_eq!(d4.bond(1, 3), Bond::Finite(3));
        assert_eq!(d4.bond(2, 3), Bond::Finite(2));
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(CoxeterSystem::from_orders(&[vec![1, 5], vec![5, 1]]).is_err());
        assert!(CoxeterSystem::from_orders(&[vec![1, 3], vec![4, 1]]).is_err());
        assert!(CoxeterSystem::new(
            vec![vec![Bond::Finite(1), Bond::Finite(3)], vec![Bond::Finite(3), Bond::Finite(1)]],
            Some(vec![vec![2, -1], vec![-2, 2]])
        )
        .is_err());
    }

    #[test]
    fn symmetrizer_of_b2() {
        let b2 = CoxeterSystem::type_b(2).unwrap();
        let d = b2.symmetrizer();
        assert_eq!(d[0] * Rational::from_integer(-1), d[1] * Rational::from_integer(-2));
    }
}
