//! Dimension combinatorics of cell modules: `w(t,k) = dim W_t(t+2k)`, its
//! closed form `F(t,k)`, Catalan numbers and truncated generating functions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `c(n) = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    let n = n as i64;
    let (q, r) = binomial(2 * n, n).div_rem(&BigInt::from(n + 1));
    debug_assert!(r.is_zero());
    q
}

/// `c(n) = sum_{k=1}^n c(k-1) c(n-k)`, `c(0) = 1`, for `0..=max`.
pub fn catalan_recursive(max: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for n in 1..=max {
        let s = (1..=n).map(|k| &c[k - 1] * &c[n - k]).sum();
        c.push(s);
    }
    c
}

/// `F(t,k) = binom(t+2k, k) - binom(t+2k, k-1)`; zero when `t < 0` or `k < 0`.
pub fn f_closed(t: i64, k: i64) -> BigInt {
    if t < 0 || k < 0 {
        return BigInt::zero();
    }
    binomial(t + 2 * k, k) - binomial(t + 2 * k, k - 1)
}

/// `F(t,k) = (t+1)/(t+k+1) binom(t+2k, k)`, or `None` if the division were not exact.
pub fn f_closed_ratio(t: i64, k: i64) -> Option<BigInt> {
    if t < 0 || k < 0 {
        return Some(BigInt::zero());
    }
    let (q, r) = (BigInt::from(t + 1) * binomial(t + 2 * k, k)).div_rem(&BigInt::from(t + k + 1));
    r.is_zero().then_some(q)
}

/// Table of `w(t,k)` over `t + 2k <= max_points`, built from the recursion
/// `w(t,k+1) = w(t-1,k+1) + w(t+1,k)` with `w(t,0) = 1` and `w(-1,.) = 0`.
///
/// The empty diagram is counted as a morphism `0 -> 0`, so `w(0,0) = 1` and
/// `w(0,k) = c(k)`.
#[derive(Clone, Debug)]
pub struct DimFunctionTable {
    max_points: usize,
    values: HashMap<(i64, i64), BigInt>,
}

/// `w(0,0)`: the single convention override, see [`DimFunctionTable`].
pub const W_ZERO_ZERO: u32 = 1;

impl DimFunctionTable {
    pub fn build(max_points: usize) -> Self {
        let mut values = HashMap::new();
        let max = max_points as i64;
        for t in 0..=max {
            values.insert((t, 0), BigInt::one());
        }
        values.insert((0, 0), BigInt::from(W_ZERO_ZERO));
        for k in 0..max / 2 {
            for t in 0..=(max - 2 * (k + 1)) {
                let left = if t == 0 { BigInt::zero() } else { values[&(t - 1, k + 1)].clone() };
                let right = values[&(t + 1, k)].clone();
                values.insert((t, k + 1), left + right);
            }
        }
        Self { max_points, values }
    }

    pub fn max_points(&self) -> usize {
        self.max_points
    }

    /// `w(t,k)`; zero for negative arguments.
    ///
    /// # Panics
    /// If `t + 2k` exceeds the table bound.
    pub fn w(&self, t: i64, k: i64) -> BigInt {
        if t < 0 || k < 0 {
            return BigInt::zero();
        }
        assert!(t + 2 * k <= self.max_points as i64, "w({t},{k}) is outside the table");
        self.values[&(t, k)].clone()
    }

    /// `w_t(n)`, zero unless `0 <= t <= n` and `t = n mod 2`.
    pub fn w_tn(&self, t: i64, n: i64) -> BigInt {
        if t < 0 || t > n || (n - t) % 2 != 0 {
            return BigInt::zero();
        }
        self.w(t, (n - t) / 2)
    }
}

/// `w(t,k)` by the recursion (memoised in a fresh table).
pub fn w_recursive(t: u64, k: u64) -> BigInt {
    DimFunctionTable::build((t + 2 * k) as usize).w(t as i64, k as i64)
}

/// `w_t(n)` by the closed form.
pub fn cell_dim(t: i64, n: i64) -> BigInt {
    if t < 0 || t > n || (n - t) % 2 != 0 {
        return BigInt::zero();
    }
    f_closed(t, (n - t) / 2)
}

/// Power series in `x` truncated after degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeriesTrunc {
    coeffs: Vec<BigInt>,
}

impl PowerSeriesTrunc {
    pub fn new(order: usize, mut coeffs: Vec<BigInt>) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![BigInt::one()])
    }

    pub fn x(order: usize) -> Self {
        Self::new(order, vec![BigInt::zero(), BigInt::one()])
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let k = self.order();
        let mut out = vec![BigInt::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(k + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

impl IdentityCheck {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self { name: name.into(), passed }
    }
}

/// Checks the Catalan generating function identities modulo `x^(order+1)`
/// (and `y^(order+1)` for the bivariate one):
///
/// * `x c(x)^2 - c(x) + 1 = 0`
/// * `sum_k w(t,k) x^k = c(x)^(t+1)` for `t <= order`
/// * `(1 - y c(x)) W(x,y) = c(x)` where `W(x,y) = sum w(t,k) y^t x^k`
/// * `w(t,k) = sum_j w(t-1,j) c(k-j)` for `1 <= t <= order`
pub fn series_identities(order: usize) -> Vec<IdentityCheck> {
    let table = DimFunctionTable::build(3 * order + 2);
    let cat: Vec<BigInt> = (0..=order as u64).map(catalan).collect();
    let c = PowerSeriesTrunc::new(order, cat.clone());
    let x = PowerSeriesTrunc::x(order);
    let one = PowerSeriesTrunc::one(order);

    let quadratic = x.mul(&c).mul(&c).sub(&c).add(&one).is_zero();

    let powers = (0..=order).all(|t| {
        let wt = PowerSeriesTrunc::new(order, (0..=order).map(|k| table.w(t as i64, k as i64)).collect());
        c.pow(t as u32 + 1) == wt
    });

    // y^t coefficient of (1 - y c) W is W_t - c W_{t-1}
    let row = |t: usize| PowerSeriesTrunc::new(order, (0..=order).map(|k| table.w(t as i64, k as i64)).collect());
    let bivariate = (0..=order).all(|t| {
        let lhs = if t == 0 { row(0) } else { row(t).sub(&c.mul(&row(t - 1))) };
        let rhs = if t == 0 { c.clone() } else { PowerSeriesTrunc::new(order, vec![]) };
        lhs == rhs
    });

    let convolution = (1..=order as i64).all(|t| {
        (0..=order as i64).all(|k| {
            let s: BigInt = (0..=k).map(|j| table.w(t - 1, j) * &cat[(k - j) as usize]).sum();
            s == table.w(t, k)
        })
    });

    vec![
        IdentityCheck { name: "catalan-quadratic".into(), passed: quadratic },
        IdentityCheck { name: "cell-series-power".into(), passed: powers },
        IdentityCheck { name: "bivariate-series".into(), passed: bivariate },
        IdentityCheck { name: "catalan-convolution".into(), passed: convolution },
    ]
}

/// Checks `w_t(n+2) = w_{t-2}(n) + 2 w_t(n) + w_{t+2}(n)` for `t >= 1` and
/// `w_0(n+2) = w_0(n) + w_2(n)` for all `0 <= t <= n <= max_n`.
pub fn two_step_recursion_check(max_n: usize) -> Vec<IdentityCheck> {
    let table = DimFunctionTable::build(max_n + 2);
    let w = |t: i64, n: i64| table.w_tn(t, n);
    let mut general = true;
    let mut zero_branch = true;
    for n in 0..=max_n as i64 {
        for t in 0..=n {
            if t == 0 {
                zero_branch &= w(0, n + 2) == w(0, n) + w(2, n);
            } else {
                general &= w(t, n + 2) == w(t - 2, n) + BigInt::from(2) * w(t, n) + w(t + 2, n);
            }
        }
    }
    vec![
        IdentityCheck { name: "two-step-general".into(), passed: general },
        IdentityCheck { name: "two-step-t0".into(), passed: zero_branch },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn recursion_examples() {
        for t in 0..10 {
            assert_eq!(w_recursive(t, 0), b(1));
        }
        for t in 1..10 {
            assert_eq!(w_recursive(t, 1), b(t as i64 + 1));
        }
        assert_eq!(w_recursive(1, 1), b(2));
        assert_eq!(w_recursive(0, 0), b(1));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(f_closed(2, 1), b(3));
        for t in 0..20 {
            assert_eq!(f_closed(t, 0), b(1));
        }
        for k in 0..20 {
            assert_eq!(f_closed(0, k), catalan(k as u64));
        }
        assert_eq!(f_closed(-1, 3), b(0));
        assert_eq!(f_closed(3, -1), b(0));
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), b(1));
        assert_eq!(catalan(3), b(5));
        assert_eq!(catalan(4), b(14));
        let rec = catalan_recursive(40);
        for (n, c) in rec.iter().enumerate() {
            assert_eq!(*c, catalan(n as u64));
        }
        // beyond 64 bits
        assert!(catalan(40) > b(i64::MAX) / b(1_000_000_000));
    }

    #[test]
    fn closed_forms_agree_and_are_integral() {
        for t in 0..=60 {
            for k in 0..=60 {
                assert_eq!(f_closed_ratio(t, k), Some(f_closed(t, k)), "t={t} k={k}");
            }
        }
    }

    #[test]
    fn lemma_recursion_for_f() {
        for t in 0..=30 {
            for k in 0..=30 {
                assert_eq!(f_closed(t, k + 1), f_closed(t - 1, k + 1) + f_closed(t + 1, k));
            }
        }
    }

    #[test]
    fn series_small_orders() {
        assert!(series_identities(1).iter().all(|c| c.passed));
        let c = PowerSeriesTrunc::new(8, (0..=8).map(catalan).collect());
        assert_eq!(*c.pow(2).coeff(3), b(14));
        assert_eq!(w_recursive(1, 3), b(14));
    }

    #[test]
    fn two_step_examples() {
        let t = DimFunctionTable::build(20);
        assert_eq!(t.w_tn(0, 4), t.w_tn(0, 2) + t.w_tn(2, 2));
        assert_eq!(t.w_tn(0, 4), b(2));
        assert_eq!(t.w_tn(2, 6), b(9));
        assert_eq!(t.w_tn(1, 5), b(5));
        assert!(two_step_recursion_check(18).iter().all(|c| c.passed));
    }
}
