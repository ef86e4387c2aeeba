//! Cell modules `W_t(n)`, their invariant forms, simple dimensions `l_t(n)` and
//! the simple modules of the Jones quotient.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinatorics::cell_dim;
use crate::diagram::{enumerate_monic, Diagram};
use crate::error::{Error, Result};
use crate::exactnum::{CycField, CycNum, ExactMatrix, PowerMatrix};
use crate::tlalg::{jones_wenzl, TLElement};

/// `t` is a valid cell label for `n`: `0 <= t <= n`, `t = n mod 2`.
pub fn is_cell_label(t: usize, n: usize) -> bool {
    t <= n && (n - t) % 2 == 0
}

/// The labels `T(n) = {t : 0 <= t <= n, t + n even}`.
pub fn cell_labels(n: usize) -> Vec<usize> {
    (n % 2..=n).step_by(2).collect()
}

/// The cell module `W_t(n)` with its monic diagram basis.
#[derive(Clone, Debug)]
pub struct CellModule {
    t: usize,
    n: usize,
    field: Arc<CycField>,
    basis: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
}

impl CellModule {
    pub fn new(field: &Arc<CycField>, t: usize, n: usize) -> Result<Self> {
        if !is_cell_label(t, n) {
            return Err(Error::InvalidLabel(t));
        }
        let basis = enumerate_monic(t, n);
        let index = basis.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        Ok(Self { t, n, field: Arc::clone(field), basis, index })
    }

    pub fn through_strands(&self) -> usize {
        self.t
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Diagram] {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> CellVector {
        CellVector::from_diagram(&self.field, self.basis[i].clone())
    }

    pub fn coordinates(&self, v: &CellVector) -> Result<Vec<CycNum>> {
        if v.t != self.t || v.n != self.n {
            return Err(Error::Dimension(format!("vector in W_{}({}) used in W_{}({})", v.t, v.n, self.t, self.n)));
        }
        let mut out = vec![self.field.zero(); self.dim()];
        for (d, c) in &v.terms {
            out[self.index[d]] = c.clone();
        }
        Ok(out)
    }

    /// Gram matrix of the cell form as loop-value powers.
    pub fn gram_pattern(&self) -> PowerMatrix {
        let m = self.dim();
        let mut exps = vec![None; m * m];
        for (r, d1) in self.basis.iter().enumerate() {
            let d1s = d1.star();
            for (c, d2) in self.basis.iter().enumerate().skip(r) {
                let e = pairing_exponent(&d1s, d2);
                exps[r * m + c] = e;
                exps[c * m + r] = e;
            }
        }
        PowerMatrix::new(self.field.delta(), m, m, exps)
    }
}

/// `D1* D2` is `delta^k id_t`: returns `Some(k)`, else `None`.
fn pairing_exponent(d1_star: &Diagram, d2: &Diagram) -> Option<i32> {
    let (p, loops) = d2.compose(d1_star).expect("matching boundaries");
    p.is_monic().then_some(loops as i32)
}

/// Linear combination of monic `t -> n` diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellVector {
    t: usize,
    n: usize,
    field: Arc<CycField>,
    terms: BTreeMap<Diagram, CycNum>,
}

impl CellVector {
    pub fn zero(field: &Arc<CycField>, t: usize, n: usize) -> Self {
        Self { t, n, field: Arc::clone(field), terms: BTreeMap::new() }
    }

    pub fn from_diagram(field: &Arc<CycField>, d: Diagram) -> Self {
        assert!(d.is_monic(), "cell vectors are spanned by monic diagrams");
        let mut v = Self::zero(field, d.src(), d.dst());
        v.add_term(d, field.one());
        v
    }

    pub fn add_term(&mut self, d: Diagram, c: CycNum) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&d) {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(d, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        let mut out = Self::zero(&self.field, self.t, self.n);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c * s);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &Diagram) -> CycNum {
        self.terms.get(d).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn through_strands(&self) -> usize {
        self.t
    }

    pub fn strands(&self) -> usize {
        self.n
    }
}

/// `x . v`: stack each diagram of `x` on top of each diagram of `v`, weight closed
/// loops by `delta`, and drop composites with fewer than `t` through strands.
pub fn cell_action(x: &TLElement, v: &CellVector) -> Result<CellVector> {
    if x.strands() != v.n {
        return Err(Error::StrandMismatch { left: x.strands(), right: v.n });
    }
    if x.level() != v.field.level() {
        return Err(Error::LevelMismatch { left: x.level(), right: v.field.level() });
    }
    let delta = v.field.delta();
    let mut out = CellVector::zero(&v.field, v.t, v.n);
    for (dv, cv) in &v.terms {
        for (dx, cx) in x.terms() {
            let (p, loops) = dv.compose(dx)?;
            if !p.is_monic() {
                continue;
            }
            out.add_term(p, &(cx * cv) * &delta.pow(loops as u64));
        }
    }
    Ok(out)
}

/// The bilinear cell form `phi_t(v, w)`.
pub fn cell_form(v: &CellVector, w: &CellVector) -> Result<CycNum> {
    if v.t != w.t || v.n != w.n {
        return Err(Error::Dimension("cell form of vectors in different modules".into()));
    }
    let delta = v.field.delta();
    let mut acc = v.field.zero();
    for (d1, c1) in &v.terms {
        let d1s = d1.star();
        for (d2, c2) in &w.terms {
            if let Some(k) = pairing_exponent(&d1s, d2) {
                acc = &acc + &(&(c1 * c2) * &delta.pow(k as u64));
            }
        }
    }
    Ok(acc)
}

/// Gram matrix of `phi_t` on the monic basis of `W_t(n)`.
pub fn gram_matrix(field: &Arc<CycField>, t: usize, n: usize) -> Result<ExactMatrix> {
    CellModule::new(field, t, n)?.gram_pattern().to_exact()
}

/// `l_t(n) = dim L_t(n)`, the rank of the cell form; zero when `t` is not a label of `n`.
pub fn simple_dim_rank(field: &Arc<CycField>, t: usize, n: usize) -> Result<usize> {
    if !is_cell_label(t, n) {
        return Ok(0);
    }
    Ok(CellModule::new(field, t, n)?.gram_pattern().rank())
}

/// The reflection `g` on `N' = {i : i != -1 mod l}`:
/// `g(a l + b) = (a+1) l + l - 2 - b` for `0 <= b <= l-2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GFunction {
    level: u32,
}

impl GFunction {
    pub fn new(level: u32) -> Result<Self> {
        if level < 3 {
            return Err(Error::InvalidLevel(level));
        }
        Ok(Self { level })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn in_domain(&self, t: usize) -> bool {
        let l = self.level as usize;
        t % l != l - 1
    }

    pub fn apply(&self, t: usize) -> Result<usize> {
        let l = self.level as usize;
        let (a, b) = (t / l, t % l);
        if b == l - 1 {
            return Err(Error::GUndefined { t, level: self.level });
        }
        Ok((a + 1) * l + l - 2 - b)
    }

    /// `t, g(t), g^2(t), ...` while the values stay `<= bound`.
    pub fn orbit(&self, t: usize, bound: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = t;
        self.apply(t)?;
        while cur <= bound {
            out.push(cur);
            cur = self.apply(cur)?;
        }
        Ok(out)
    }
}

/// `l_t(n) = sum_i (-1)^i w_{g^i(t)}(n)`.
pub fn simple_dim_altsum(t: usize, n: usize, level: u32) -> Result<BigInt> {
    let g = GFunction::new(level)?;
    let mut acc = BigInt::zero();
    for (i, s) in g.orbit(t, n)?.into_iter().enumerate() {
        let w = cell_dim(s as i64, n as i64);
        if i % 2 == 0 {
            acc += w;
        } else {
            acc -= w;
        }
    }
    Ok(acc)
}

/// Labels of the simple `Q_n(l)`-modules: `t in T(n)` with `t <= l - 2`.
pub fn simple_q_modules(n: usize, level: u32) -> Vec<usize> {
    cell_labels(n).into_iter().filter(|&t| t + 2 <= level as usize).collect()
}

/// Whether `E_{l-1} (x) I^(n-l+1)` maps `W_t(n)` into the radical of the cell form,
/// checked exactly on the basis: `phi_t(E D1, D2) = 0` for all basis `D1, D2`.
pub fn annihilation_check(field: &Arc<CycField>, t: usize, n: usize) -> Result<bool> {
    let level = field.level() as usize;
    if n + 1 < level {
        return Err(Error::Dimension(format!("E_{} does not act on {n} strands", level - 1)));
    }
    let module = CellModule::new(field, t, n)?;
    let e = jones_wenzl(field)?.into_element().embed(n)?;
    let stars: Vec<Diagram> = module.basis().iter().map(Diagram::star).collect();
    let delta = field.delta();
    let max_loops = n;
    let dpow: Vec<CycNum> = (0..=2 * max_loops).map(|k| delta.pow(k as u64)).collect();
    for d1 in module.basis() {
        let image = cell_action(&e, &CellVector::from_diagram(field, d1.clone()))?;
        for d2s in &stars {
            let mut acc = field.zero();
            for (d, c) in image.terms() {
                if let Some(k) = pairing_exponent(d2s, d) {
                    acc = &acc + &(c * &dpow[k as usize]);
                }
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
