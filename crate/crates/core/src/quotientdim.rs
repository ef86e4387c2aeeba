//! Dimensions of the simple `Q_n(l)`-modules and of `Q_n(l)` itself: the one-step
//! tridiagonal recursion, its parity-block squares, seed vectors and closed forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cellrep::simple_dim_altsum;
use crate::combinatorics::{cell_dim, IdentityCheck};
use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[&[T]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|x| x.clone().into()));
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let idx = r * o.cols + c;
                    out.data[idx] += a * o.get(k, c);
                }
            }
        }
        out
    }

    /// `self^e` by iterated multiplication.
    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum()).collect()
    }

    /// Restriction to the given rows and columns.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(idx.len(), idx.len());
        for (i, &r) in idx.iter().enumerate() {
            for (j, &c) in idx.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Parity of the labels `t` (equivalently of `n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

fn check_level(level: u32) -> Result<usize> {
    if level < 4 {
        return Err(Error::InvalidLevel(level));
    }
    Ok(level as usize)
}

/// The `(l-1) x (l-1)` 0/1 tridiagonal matrix taking `(l_0, ..., l_{l-2})(n)` to `n+1`.
pub fn one_step_matrix(level: u32) -> Result<IntMatrix> {
    let l = check_level(level)?;
    let m = l - 1;
    let mut a = IntMatrix::zeros(m, m);
    for i in 0..m - 1 {
        a.set(i, i + 1, BigInt::one());
        a.set(i + 1, i, BigInt::one());
    }
    Ok(a)
}

/// Applies the one-step recursion to `(l_0, ..., l_{l-2})(n)`; valid for `n >= l-1`.
pub fn one_step(level: u32, n: usize, current: &[BigInt]) -> Result<Vec<BigInt>> {
    let l = check_level(level)?;
    if n + 1 < l {
        return Err(Error::Dimension(format!("one-step recursion needs n >= {}", l - 1)));
    }
    if current.len() != l - 1 {
        return Err(Error::Dimension(format!("expected {} entries, got {}", l - 1, current.len())));
    }
    Ok(one_step_matrix(level)?.apply(current))
}

/// Labels `t <= l-2` of the given parity, in increasing order.
pub fn parity_labels(level: u32, parity: Parity) -> Vec<usize> {
    (parity.bit()..=(level as usize).saturating_sub(2)).step_by(2).collect()
}

/// The square of the one-step matrix restricted to one parity block.
pub fn parity_square(level: u32, parity: Parity) -> Result<IntMatrix> {
    let a = one_step_matrix(level)?;
    Ok(a.mul(&a).submatrix(&parity_labels(level, parity)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecursionKind {
    M11,
    M22,
    M12,
    M21,
}

impl RecursionKind {
    fn corners(self) -> (i64, i64) {
        match self {
            RecursionKind::M11 => (1, 1),
            RecursionKind::M22 => (2, 2),
            RecursionKind::M12 => (1, 2),
            RecursionKind::M21 => (2, 1),
        }
    }
}

impl fmt::Display for RecursionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RecursionKind::M11 => "M11",
            RecursionKind::M22 => "M22",
            RecursionKind::M12 => "M12",
            RecursionKind::M21 => "M21",
        };
        f.write_str(s)
    }
}

/// Symmetric tridiagonal matrix: interior diagonal 2, off-diagonals 1, corner
/// diagonal entries set by the kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionMatrix {
    kind: RecursionKind,
    matrix: IntMatrix,
}

impl RecursionMatrix {
    /// The general pattern; needs `m >= 2` so that the two corners are distinct.
    pub fn new(kind: RecursionKind, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Dimension(format!("{kind}({m}) is only defined for m >= 2")));
        }
        let mut a = IntMatrix::zeros(m, m);
        for i in 0..m {
            a.set(i, i, BigInt::from(2));
            if i + 1 < m {
                a.set(i, i + 1, BigInt::one());
                a.set(i + 1, i, BigInt::one());
            }
        }
        let (first, last) = kind.corners();
        a.set(0, 0, BigInt::from(first));
        a.set(m - 1, m - 1, BigInt::from(last));
        Ok(Self { kind, matrix: a })
    }

    fn literal(kind: RecursionKind, rows: &[&[i64]]) -> Self {
        Self { kind, matrix: IntMatrix::from_rows(rows) }
    }

    pub fn kind(&self) -> RecursionKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

/// The two-step recursion matrix for one parity block of labels.
///
/// `l = 4, 5` have blocks too small for the general pattern and are listed explicitly.
pub fn two_step(level: u32, parity: Parity) -> Result<RecursionMatrix> {
    use RecursionKind::*;
    let l = check_level(level)?;
    let kind = match (l % 2, parity) {
        (0, Parity::Even) => M11,
        (0, Parity::Odd) => M22,
        (_, Parity::Even) => M12,
        (_, Parity::Odd) => M21,
    };
    Ok(match (l, kind) {
        (4, M11) => RecursionMatrix::literal(M11, &[&[1, 1], &[1, 1]]),
        (4, _) => RecursionMatrix::literal(M22, &[&[2]]),
        // labels (0, 2) and (1, 3)
        (5, M12) => RecursionMatrix::literal(M12, &[&[1, 1], &[1, 2]]),
        (5, _) => RecursionMatrix::literal(M21, &[&[2, 1], &[1, 1]]),
        _ => RecursionMatrix::new(kind, parity_labels(level, parity).len())?,
    })
}

/// Simple dimensions `l_t(n)` for the labels of one parity class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimVector {
    pub n: usize,
    pub parity: Parity,
    pub labels: Vec<usize>,
    pub entries: Vec<BigInt>,
}

impl DimVector {
    pub fn get(&self, t: usize) -> BigInt {
        self.labels.iter().position(|&s| s == t).map_or_else(BigInt::zero, |i| self.entries[i].clone())
    }

    pub fn sum_of_squares(&self) -> BigInt {
        self.entries.iter().map(|x| x * x).sum()
    }
}

/// The seed `n` of a parity class: whichever of `l-2`, `l-3` has that parity.
pub fn seed_n(level: u32, parity: Parity) -> usize {
    let l = level as usize;
    if Parity::of(l - 2) == parity {
        l - 2
    } else {
        l - 3
    }
}

/// Seed vector `(w_t(seed_n))_t` over the labels of one parity.
pub fn seed_vector(level: u32, parity: Parity) -> Result<DimVector> {
    check_level(level)?;
    let n = seed_n(level, parity);
    let labels = parity_labels(level, parity);
    let entries = labels.iter().map(|&t| cell_dim(t as i64, n as i64)).collect();
    Ok(DimVector { n, parity, labels, entries })
}

/// `(l_t(n))_{t <= l-2, t = n mod 2}` by powers of the two-step matrix.
///
/// Below the seed the algebra is semisimple and `l_t(n) = w_t(n)`.
pub fn dims_by_matrix(level: u32, n: usize) -> Result<DimVector> {
    let parity = Parity::of(n);
    let seed = seed_vector(level, parity)?;
    if n < seed.n {
        let entries = seed.labels.iter().map(|&t| cell_dim(t as i64, n as i64)).collect();
        return Ok(DimVector { n, parity, labels: seed.labels, entries });
    }
    let e = ((n - seed.n) / 2) as u32;
    let m = two_step(level, parity)?;
    let entries = m.matrix().pow(e).apply(&seed.entries);
    Ok(DimVector { n, parity, labels: seed.labels, entries })
}

/// `dim Q_n(l)` as the quadratic form `w^T M^(n - seed) w` in the seed vector.
pub fn dim_q(level: u32, n: usize) -> Result<BigInt> {
    let parity = Parity::of(n);
    let seed = seed_vector(level, parity)?;
    if n < seed.n {
        return dims_by_matrix(level, n).map(|v| v.sum_of_squares());
    }
    let m = two_step(level, parity)?;
    let mw = m.matrix().pow((n - seed.n) as u32).apply(&seed.entries);
    Ok(seed.entries.iter().zip(&mw).map(|(a, b)| a * b).sum())
}

/// `F_0 = 0, F_1 = 1, ...`
pub fn fibonacci(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// `(a_n, b_n)` read off `[[2,1],[1,1]]^n = [[a_n + b_n, a_n], [a_n, b_n]]`.
pub fn fibonacci_bridge(n: u32) -> Result<(BigInt, BigInt)> {
    if n == 0 {
        return Err(Error::Dimension("fibonacci_bridge needs n >= 1".into()));
    }
    let p = IntMatrix::from_rows::<i64>(&[&[2, 1], &[1, 1]]).pow(n);
    Ok((p.get(0, 1).clone(), p.get(1, 1).clone()))
}

fn pow3(e: usize) -> BigInt {
    num_traits::pow(BigInt::from(3), e)
}

/// Closed forms of `dim Q_n(l)` for `l = 4, 5, 6`.
pub fn closed_form_dim_q(level: u32, n: usize) -> Option<BigInt> {
    match (level, n) {
        (4, n) if n >= 1 => Some(BigInt::one() << (n - 1)),
        (5, n) if n >= 1 => Some(fibonacci(2 * n as u64 - 1)),
        (6, n) if n >= 2 => Some((pow3(n - 1) + 1) / 2),
        _ => None,
    }
}

/// Closed forms of the simple dimensions `(t, l_t(n))` for `l = 4, 5, 6`, `n >= 1`.
pub fn closed_form_simple_dims(level: u32, n: usize) -> Option<Vec<(usize, BigInt)>> {
    if n == 0 {
        return None;
    }
    let h = n / 2;
    let even = n % 2 == 0;
    Some(match (level, even) {
        (4, true) => {
            let v = BigInt::one() << (h - 1);
            vec![(0, v.clone()), (2, v)]
        }
        (4, false) => vec![(1, BigInt::one() << h)],
        (5, true) => vec![(0, fibonacci(2 * h as u64 - 1)), (2, fibonacci(2 * h as u64))],
        (5, false) => vec![(1, fibonacci(2 * h as u64 + 1)), (3, fibonacci(2 * h as u64))],
        (6, true) => {
            let p = pow3(h - 1);
            vec![(0, (&p + 1) / 2), (2, p.clone()), (4, (p - 1) / 2)]
        }
        (6, false) => {
            let p = pow3(h);
            vec![(1, (&p + 1) / 2), (3, (p - 1) / 2)]
        }
        _ => return None,
    })
}

/// The three branches of the one-step recursion (generic `t`, `t = 0`, `t = l-2`),
/// checked on `n = 0..=max_n` against tables of alternating sums.
pub fn branch_identity_checks(level: u32, max_n: usize) -> Result<Vec<IdentityCheck>> {
    let l = check_level(level)?;
    let lt = |t: usize, n: usize| -> Result<BigInt> {
        if t > n || (n - t) % 2 != 0 {
            return Ok(BigInt::zero());
        }
        simple_dim_altsum(t, n, level)
    };
    let (mut generic, mut zero, mut top) = (true, true, true);
    for n in 0..max_n {
        for t in 1..l - 2 {
            if (n + 1) % 2 == t % 2 {
                generic &= lt(t, n + 1)? == lt(t - 1, n)? + lt(t + 1, n)?;
            }
        }
        if n % 2 == 1 {
            zero &= lt(0, n + 1)? == lt(1, n)?;
        }
        if (n + 1) % 2 == l % 2 {
            top &= lt(l - 2, n + 1)? == lt(l - 3, n)?;
        }
    }
    Ok(vec![
        IdentityCheck::new("interior-branch", generic),
        IdentityCheck::new("zero-branch", zero),
        IdentityCheck::new("top-branch", top),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn one_step_example() {
        assert_eq!(one_step(4, 4, &ints(&[2, 0, 2])).unwrap(), ints(&[0, 4, 0]));
        let next = one_step(5, 7, &ints(&[3, 0, 5, 0])).unwrap();
        assert_eq!(next[0], BigInt::from(0));
        let v = ints(&[0, 8, 0, 5]);
        let next = one_step(5, 7, &v).unwrap();
        assert_eq!(next[0], v[1]);
        assert_eq!(next[3], v[2]);
        assert!(one_step(5, 2, &v).is_err());
    }

    #[test]
    fn two_step_matches_square() {
        for l in 4..=10 {
            for p in [Parity::Even, Parity::Odd] {
                let m = two_step(l, p).unwrap();
                assert!(m.matrix().is_symmetric());
                assert_eq!(m.matrix(), &parity_square(l, p).unwrap(), "l={l} {p:?}");
            }
        }
        let m6 = two_step(6, Parity::Even).unwrap();
        assert_eq!(m6.kind(), RecursionKind::M11);
        assert_eq!(m6.matrix(), &IntMatrix::from_rows::<i64>(&[&[1, 1, 0], &[1, 2, 1], &[0, 1, 1]]));
        assert_eq!(two_step(4, Parity::Odd).unwrap().matrix(), &IntMatrix::from_rows::<i64>(&[&[2]]));
        assert!(RecursionMatrix::new(RecursionKind::M12, 1).is_err());
    }

    #[test]
    fn closed_forms_agree_with_matrix_route() {
        for l in 4..=6 {
            for n in 1..=20 {
                if let Some(c) = closed_form_dim_q(l, n) {
                    assert_eq!(dim_q(l, n).unwrap(), c, "l={l} n={n}");
                }
                let v = dims_by_matrix(l, n).unwrap();
                assert_eq!(dim_q(l, n).unwrap(), v.sum_of_squares());
                for (t, d) in closed_form_simple_dims(l, n).unwrap() {
                    assert_eq!(v.get(t), d, "l={l} n={n} t={t}");
                }
            }
        }
    }

    #[test]
    fn fibonacci_bridge_values() {
        assert_eq!(fibonacci_bridge(1).unwrap(), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(fibonacci_bridge(2).unwrap(), (BigInt::from(3), BigInt::from(2)));
        for n in 1..=15u32 {
            let (a, b) = fibonacci_bridge(n).unwrap();
            assert_eq!(a, fibonacci(2 * n as u64));
            assert_eq!(b, fibonacci(2 * n as u64 - 1));
            let (_, b2) = fibonacci_bridge(2 * n).unwrap();
            assert_eq!(&a * &a + &b * &b, b2);
        }
    }

    #[test]
    fn branches_hold() {
        for l in 4..=10 {
            for c in branch_identity_checks(l, 24).unwrap() {
                assert!(c.passed, "l={l}: {}", c.name);
            }
        }
    }
}
