//! The even Clifford algebra `C_n^0` at `l = 4`, the map `phi_n: TL_n -> C_n^0`,
//! its constant-term trace and the spin-representation check for `so(n)`.
//!
//! Generators satisfy `g_i g_j + g_j g_i = delta_ij`, so `g_i^2 = 1/2`. A blade
//! `g_J = g_{j1} ... g_{jk}` (`j1 < ... < jk`) is stored as the bitmask of `J`,
//! bit `i-1` standing for `g_i`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::exactnum::{CycField, CycNum, ModpEmbedding, ModpMatrix};
use crate::tlalg::{reduced_words, TLElement};

/// Largest supported generator count (blades are `u32` masks).
pub const MAX_GENERATORS: usize = 31;

fn ratio(field: &Arc<CycField>, a: i64, b: i64) -> CycNum {
    field.from_rational(&BigRational::new(a.into(), b.into()))
}

fn check_field(field: &Arc<CycField>) -> Result<()> {
    if field.level() != 4 {
        return Err(Error::LevelMismatch { left: 4, right: field.level() });
    }
    Ok(())
}

/// Sign and contraction count of `g_a g_b`, as `(negative, result mask, contractions)`.
pub fn blade_product(a: u32, b: u32) -> (bool, u32, u32) {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    (swaps % 2 == 1, a ^ b, (a & b).count_ones())
}

/// Element of the Clifford algebra on `n` generators over `Q(zeta_8)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BladeElement {
    n: usize,
    field: Arc<CycField>,
    terms: BTreeMap<u32, CycNum>,
}

impl BladeElement {
    pub fn zero(field: &Arc<CycField>, n: usize) -> Result<Self> {
        check_field(field)?;
        if n > MAX_GENERATORS {
            return Err(Error::ResourceLimit(format!("at most {MAX_GENERATORS} Clifford generators")));
        }
        Ok(Self { n, field: Arc::clone(field), terms: BTreeMap::new() })
    }

    pub fn scalar(field: &Arc<CycField>, n: usize, c: CycNum) -> Result<Self> {
        Self::blade(field, n, 0, c)
    }

    pub fn one(field: &Arc<CycField>, n: usize) -> Result<Self> {
        Self::scalar(field, n, field.one())
    }

    /// `c g_J` for the subset `J` encoded by `mask`.
    pub fn blade(field: &Arc<CycField>, n: usize, mask: u32, c: CycNum) -> Result<Self> {
        let mut out = Self::zero(field, n)?;
        if n < 32 && mask >> n != 0 {
            return Err(Error::GeneratorIndex { index: 32 - mask.leading_zeros() as usize, strands: n });
        }
        out.add_term(mask, c);
        Ok(out)
    }

    /// The generator `g_i`, `1 <= i <= n`.
    pub fn gamma(field: &Arc<CycField>, n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::GeneratorIndex { index: i, strands: n });
        }
        Self::blade(field, n, 1 << (i - 1), field.one())
    }

    pub fn add_term(&mut self, mask: u32, c: CycNum) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&mask) {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(mask, s);
        }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &CycNum)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, mask: u32) -> CycNum {
        self.terms.get(&mask).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Every blade has even length.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("{} vs {} Clifford generators", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-other.field.one()))
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        let mut out = Self { n: self.n, field: Arc::clone(&self.field), terms: BTreeMap::new() };
        for (&m, c) in &self.terms {
            out.add_term(m, c * s);
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let half = ratio(&self.field, 1, 2);
        let halves: Vec<CycNum> = (0..=self.n as u64).map(|k| half.pow(k)).collect();
        let mut out = Self { n: self.n, field: Arc::clone(&self.field), terms: BTreeMap::new() };
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                let (neg, m, k) = blade_product(a, b);
                let mut c = &(ca * cb) * &halves[k as usize];
                if neg {
                    c = -c;
                }
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// Coordinates on the even blades, ordered by mask.
    fn even_coordinates(&self, emb: &ModpEmbedding) -> Result<Vec<u64>> {
        let masks = even_masks(self.n);
        masks.iter().map(|m| emb.reduce(&self.coeff(*m))).collect()
    }
}

fn even_masks(n: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() % 2 == 0).collect()
}

/// `phi(f_j) = delta^-1 (1 + 2i g_j g_{j+1})` with `i = q^2`, `delta = sqrt 2`.
pub fn phi_generator(field: &Arc<CycField>, n: usize, j: usize) -> Result<BladeElement> {
    check_field(field)?;
    if j == 0 || j >= n {
        return Err(Error::GeneratorIndex { index: j, strands: n });
    }
    let d_inv = field.delta().inv().expect("delta is nonzero at l = 4");
    let two_i = field.q_squared().scale_int(2);
    let mut out = BladeElement::scalar(field, n, d_inv.clone())?;
    out.add_term(0b11 << (j - 1), &two_i * &d_inv);
    Ok(out)
}

/// `x * phi(f_j)`, exploiting that `phi(f_j)` has only two terms.
fn right_mul_phi_generator(x: &BladeElement, j: usize, d_inv: &CycNum, two_i_d_inv: &CycNum) -> BladeElement {
    let pair = 0b11u32 << (j - 1);
    let half = ratio(&x.field, 1, 2);
    let mut out = x.scale(d_inv);
    for (&a, c) in &x.terms {
        let (neg, m, k) = blade_product(a, pair);
        let mut v = c * two_i_d_inv;
        for _ in 0..k {
            v = &v * &half;
        }
        if neg {
            v = -v;
        }
        out.add_term(m, v);
    }
    out
}

/// `phi` of a single diagram, via a reduced word in the generators.
pub fn phi_word(field: &Arc<CycField>, n: usize, word: &[usize]) -> Result<BladeElement> {
    check_field(field)?;
    let d_inv = field.delta().inv().expect("delta is nonzero at l = 4");
    let two_i_d_inv = &field.q_squared().scale_int(2) * &d_inv;
    let mut x = BladeElement::one(field, n)?;
    for &j in word {
        if j == 0 || j >= n {
            return Err(Error::GeneratorIndex { index: j, strands: n });
        }
        x = right_mul_phi_generator(&x, j, &d_inv, &two_i_d_inv);
    }
    Ok(x)
}

/// `phi(D)` for every diagram of `TL_n`.
pub fn phi_table(field: &Arc<CycField>, n: usize) -> Result<BTreeMap<Diagram, BladeElement>> {
    check_field(field)?;
    reduced_words(n)
        .into_par_iter()
        .map(|(d, w)| phi_word(field, n, &w).map(|x| (d, x)))
        .collect()
}

/// The homomorphism `phi_n` on a TL element at `l = 4`.
pub fn phi(x: &TLElement) -> Result<BladeElement> {
    let field = x.field();
    check_field(field)?;
    let n = x.strands();
    let words = reduced_words(n);
    let mut out = BladeElement::zero(field, n)?;
    for (d, c) in x.terms() {
        let img = phi_word(field, n, &words[d])?;
        out = out.add(&img.scale(c))?;
    }
    Ok(out)
}

/// Dimension of `phi(TL_n)` inside the `2^(n-1)`-dimensional even subalgebra.
pub fn image_dimension(field: &Arc<CycField>, n: usize) -> Result<usize> {
    if n > 12 {
        return Err(Error::ResourceLimit(format!("image_dimension supports n <= 12, got {n}")));
    }
    let table = phi_table(field, n)?;
    let mut best = 0;
    for emb in ModpEmbedding::standard_pair(4) {
        let rows: Vec<Vec<u64>> =
            table.values().collect::<Vec<_>>().par_iter().map(|x| x.even_coordinates(&emb)).collect::<Result<_>>()?;
        let width = 1usize << n.saturating_sub(1);
        let mut m = ModpMatrix::zeros(*emb.prime_field(), rows.len(), width);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        best = best.max(m.rank());
    }
    Ok(best)
}

/// The canonical trace: coefficient of `1`.
pub fn constant_term_trace(a: &BladeElement) -> CycNum {
    a.coeff(0)
}

/// `omega_ij = (g_i g_j - g_j g_i) / 2`, `i != j`.
pub fn omega(field: &Arc<CycField>, n: usize, i: usize, j: usize) -> Result<BladeElement> {
    let gi = BladeElement::gamma(field, n, i)?;
    let gj = BladeElement::gamma(field, n, j)?;
    Ok(gi.commutator(&gj)?.scale(&ratio(&field, 1, 2)))
}

/// Outcome of checking the `so(n)` relations
/// `[J_ij, J_kl] = d_jk J_il - d_jl J_ik - d_ik J_jl + d_il J_jk` on the `omega_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoReport {
    pub n: usize,
    pub quadruples_checked: usize,
    pub failures: Vec<(usize, usize, usize, usize)>,
    pub omega_is_product: bool,
}

impl SoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.omega_is_product
    }
}

pub fn so_commutators(field: &Arc<CycField>, n: usize) -> Result<SoReport> {
    if n < 2 {
        return Err(Error::Dimension("so(n) needs n >= 2".into()));
    }
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut om = BTreeMap::new();
    let mut omega_is_product = true;
    for &(i, j) in &pairs {
        let w = omega(field, n, i, j)?;
        let prod = BladeElement::gamma(field, n, i)?.multiply(&BladeElement::gamma(field, n, j)?)?;
        omega_is_product &= w == prod;
        om.insert((i, j), w);
    }
    let zero = BladeElement::zero(field, n)?;
    let j_of = |a: usize, b: usize| if a == b { zero.clone() } else { om[&(a, b)].clone() };
    let quads: Vec<_> = pairs.iter().flat_map(|&p| pairs.iter().map(move |&q| (p, q))).collect();
    let failures = quads
        .par_iter()
        .filter_map(|&((i, j), (k, l))| {
            let lhs = om[&(i, j)].commutator(&om[&(k, l)]).ok()?;
            let mut rhs = zero.clone();
            for (on, a, b, sign) in [(j == k, i, l, 1), (j == l, i, k, -1), (i == k, j, l, -1), (i == l, j, k, 1)] {
                if on {
                    let t = j_of(a, b);
                    rhs = if sign > 0 { rhs.add(&t).ok()? } else { rhs.sub(&t).ok()? };
                }
            }
            (lhs != rhs).then_some((i, j, k, l))
        })
        .collect();
    Ok(SoReport { n, quadruples_checked: quads.len(), failures, omega_is_product })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tlalg::jones_wenzl;

    fn k4() -> Arc<CycField> {
        CycField::new(4).unwrap()
    }

    #[test]
    fn blade_examples() {
        let k = k4();
        let g1 = BladeElement::gamma(&k, 3, 1).unwrap();
        let g2 = BladeElement::gamma(&k, 3, 2).unwrap();
        assert_eq!(g1.multiply(&g1).unwrap(), BladeElement::scalar(&k, 3, ratio(&k, 1, 2)).unwrap());
        let g12 = g1.multiply(&g2).unwrap();
        assert_eq!(g12.multiply(&g12).unwrap(), BladeElement::scalar(&k, 3, ratio(&k, -1, 4)).unwrap());
        assert_eq!(g2.multiply(&g1).unwrap(), g12.scale(&-k.one()));
        assert!(BladeElement::gamma(&k, 3, 4).is_err());
        assert!(BladeElement::zero(&CycField::new(5).unwrap(), 3).is_err());
    }

    #[test]
    fn phi_examples() {
        let k = k4();
        for n in 2..=5 {
            for j in 1..n {
                let p = phi_generator(&k, n, j).unwrap();
                assert!(p.is_even());
                assert_eq!(p.multiply(&p).unwrap(), p.scale(&k.delta()));
                assert_eq!(constant_term_trace(&p), k.delta().inv().unwrap());
            }
        }
        let e3 = jones_wenzl(&k).unwrap().into_element();
        assert!(phi(&e3).unwrap().is_zero());
        assert_eq!(phi(&TLElement::identity(&k, 4)).unwrap(), BladeElement::one(&k, 4).unwrap());
    }

    #[test]
    fn image_dimensions() {
        let k = k4();
        assert_eq!(image_dimension(&k, 3).unwrap(), 4);
        assert_eq!(image_dimension(&k, 4).unwrap(), 8);
        assert_eq!(image_dimension(&k, 5).unwrap(), 16);
    }

    #[test]
    fn so_examples() {
        let k = k4();
        let o = |i, j| omega(&k, 4, i, j).unwrap();
        assert!(o(1, 2).commutator(&o(3, 4)).unwrap().is_zero());
        assert_eq!(o(1, 2).commutator(&o(2, 3)).unwrap(), o(1, 3));
        for n in 2..=5 {
            assert!(so_commutators(&k, n).unwrap().passed());
        }
    }
}
