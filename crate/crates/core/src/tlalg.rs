//! The Temperley-Lieb algebra `TL_n` over the cyclotomic field of a level,
//! the Jones trace, the Jones-Wenzl idempotent and the ideal it generates.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::diagram::{hook_poly, tl_basis, Diagram};
use crate::error::{Error, Result};
use crate::exactnum::{quantum_int_at_q, CycField, CycNum, EchelonBasis, ExactMatrix, ModpEmbedding, PowerMatrix};

/// Finite linear combination of `n -> n` diagrams.
#[derive(Clone, PartialEq, Eq)]
pub struct TLElement {
    n: usize,
    field: Arc<CycField>,
    terms: BTreeMap<Diagram, CycNum>,
}

impl TLElement {
    pub fn zero(field: &Arc<CycField>, n: usize) -> Self {
        Self { n, field: Arc::clone(field), terms: BTreeMap::new() }
    }

    pub fn identity(field: &Arc<CycField>, n: usize) -> Self {
        Self::from_diagram(field, Diagram::identity(n), field.one())
    }

    pub fn from_diagram(field: &Arc<CycField>, d: Diagram, coeff: CycNum) -> Self {
        assert_eq!(d.src(), d.dst(), "algebra elements are n -> n");
        let mut x = Self::zero(field, d.src());
        x.add_term(d, coeff);
        x
    }

    /// The generator `f_i`, `1 <= i <= n-1`.
    pub fn generator(field: &Arc<CycField>, n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_diagram(field, Diagram::generator(n, i)?, field.one()))
    }

    /// Builds an element from `(diagram, coefficient)` pairs.
    pub fn from_terms(field: &Arc<CycField>, n: usize, terms: impl IntoIterator<Item = (Diagram, CycNum)>) -> Result<Self> {
        let mut x = Self::zero(field, n);
        for (d, c) in terms {
            if d.src() != n || d.dst() != n {
                return Err(Error::StrandMismatch { left: n, right: d.src().max(d.dst()) });
            }
            c.try_same_field(&field.one())?;
            x.add_term(d, c);
        }
        Ok(x)
    }

    pub fn add_term(&mut self, d: Diagram, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(slot) => {
                let s = &*slot + &c;
                if s.is_zero() {
                    self.terms.remove(&d);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.field.level()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &Diagram) -> CycNum {
        self.terms.get(d).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::StrandMismatch { left: self.n, right: other.n });
        }
        if self.level() != other.level() {
            return Err(Error::LevelMismatch { left: self.level(), right: other.level() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.from_int(-1)))
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        let mut out = Self::zero(&self.field, self.n);
        for (d, c) in self.terms() {
            out.add_term(d.clone(), c * s);
        }
        out
    }

    /// Product `self * other`: `other` is applied first (stacked below) and each
    /// closed loop contributes a factor `delta`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let delta_pows = delta_powers(&self.field, self.n);
        // Group by (diagram, loops) before scaling by delta powers.
        let mut acc: HashMap<Diagram, Vec<CycNum>> = HashMap::new();
        for (db, cb) in other.terms() {
            for (da, ca) in self.terms() {
                let (d, loops) = db.compose(da)?;
                let slot = acc.entry(d).or_insert_with(|| vec![self.field.zero(); self.n + 1]);
                slot[loops] = &slot[loops] + &(ca * cb);
            }
        }
        let mut out = Self::zero(&self.field, self.n);
        for (d, by_loops) in acc {
            let mut c = self.field.zero();
            for (k, v) in by_loops.iter().enumerate() {
                if !v.is_zero() {
                    c = &c + &(v * &delta_pows[k]);
                }
            }
            out.add_term(d, c);
        }
        Ok(out)
    }

    /// Linear extension of the diagram reflection; an anti-automorphism.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(&self.field, self.n);
        for (d, c) in self.terms() {
            out.add_term(d.star(), c.clone());
        }
        out
    }

    /// `x (x) I^(n-m)`: juxtaposes identity strands on the right.
    pub fn embed(&self, n: usize) -> Result<Self> {
        if self.n > n {
            return Err(Error::StrandMismatch { left: self.n, right: n });
        }
        let pad = Diagram::identity(n - self.n);
        let mut out = Self::zero(&self.field, n);
        for (d, c) in self.terms() {
            out.add_term(d.tensor(&pad), c.clone());
        }
        Ok(out)
    }

    /// The Jones (Markov) trace, normalised so `tr(1) = 1`: each diagram contributes
    /// `delta^(loops in its closure - n)`.
    pub fn jones_trace(&self) -> CycNum {
        let delta = self.field.delta();
        let delta_inv = delta.inv().expect("delta is nonzero at level >= 3");
        let mut acc = self.field.zero();
        for (d, c) in self.terms() {
            let loops = d.closure_loops().expect("square diagram");
            let e = loops as i64 - self.n as i64;
            let w = if e >= 0 { delta.pow(e as u64) } else { delta_inv.pow(e.unsigned_abs()) };
            acc = &acc + &(c * &w);
        }
        acc
    }
}

fn delta_powers(field: &Arc<CycField>, max: usize) -> Vec<CycNum> {
    let delta = field.delta();
    let mut out = Vec::with_capacity(max + 1);
    let mut cur = field.one();
    for _ in 0..=max {
        out.push(cur.clone());
        cur = &cur * &delta;
    }
    out
}

impl fmt::Debug for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TLElement[n={}, l={}]{{", self.n, self.level())?;
        for (i, (d, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({c}) [{d}]")?;
        }
        write!(f, "}}")
    }
}

/// The Jones-Wenzl idempotent `E_{l-1}` in `TL_{l-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JWIdempotent {
    level: u32,
    element: TLElement,
}

impl JWIdempotent {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn element(&self) -> &TLElement {
        &self.element
    }

    pub fn into_element(self) -> TLElement {
        self.element
    }
}

/// `E_{l-1} = sum_D h_{F(flat D)}(q) D` over the diagram basis of `TL_{l-1}`,
/// where `F(flat D)` is the arc-nesting forest of the rotated diagram and `h` the
/// forest hook quotient.
pub fn jones_wenzl(field: &Arc<CycField>) -> Result<JWIdempotent> {
    let level = field.level();
    let n = level as usize - 1;
    for m in 1..=level - 1 {
        if quantum_int_at_q(field, m).is_zero() {
            return Err(Error::Invariant(format!("[{m}]_q vanishes at level {level}")));
        }
    }
    let q = field.q();
    let terms: Result<Vec<(Diagram, CycNum)>> = tl_basis(n)
        .into_par_iter()
        .map(|d| {
            let forest = d.rotate_to_flat().nesting_forest()?;
            let h = hook_poly(&forest)?;
            Ok((d, h.eval(&q)))
        })
        .collect();
    let element = TLElement::from_terms(field, n, terms?)?;
    Ok(JWIdempotent { level, element })
}

/// Diagram basis of `TL_n` with a position index.
#[derive(Clone, Debug)]
pub struct TLBasis {
    n: usize,
    diagrams: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
}

impl TLBasis {
    pub fn new(n: usize) -> Self {
        let diagrams = tl_basis(n);
        let index = diagrams.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        Self { n, diagrams, index }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// `(target index, loops)` for `f_i * D_j` (`left = true`) or `D_j * f_i`.
    fn generator_table(&self, i: usize, left: bool) -> Vec<(u32, u8)> {
        let g = Diagram::generator(self.n, i).expect("valid generator");
        self.diagrams
            .iter()
            .map(|d| {
                let (p, loops) = if left { d.compose(&g) } else { g.compose(d) }.expect("square diagrams");
                (self.index[&p] as u32, loops as u8)
            })
            .collect()
    }

    /// Coordinates of an element in this basis.
    pub fn coordinates(&self, x: &TLElement) -> Result<Vec<CycNum>> {
        if x.strands() != self.n {
            return Err(Error::StrandMismatch { left: self.n, right: x.strands() });
        }
        let mut v = vec![x.field().zero(); self.len()];
        for (d, c) in x.terms() {
            v[self.index[d]] = c.clone();
        }
        Ok(v)
    }
}

/// A word `i_1 i_2 ... i_k` with `D = f_{i_1} f_{i_2} ... f_{i_k}` (no loops) for
/// every basis diagram of `TL_n`; the identity gets the empty word.
pub fn reduced_words(n: usize) -> HashMap<Diagram, Vec<usize>> {
    let mut words: HashMap<Diagram, Vec<usize>> = HashMap::new();
    let id = Diagram::identity(n);
    words.insert(id.clone(), Vec::new());
    let mut queue = VecDeque::from([id]);
    let gens: Vec<Diagram> = (1..n).map(|i| Diagram::generator(n, i).expect("valid")).collect();
    while let Some(d) = queue.pop_front() {
        for (k, g) in gens.iter().enumerate() {
            // d * f_i: f_i is applied first
            let (p, loops) = g.compose(&d).expect("square");
            if loops == 0 && !words.contains_key(&p) {
                let mut w = words[&d].clone();
                w.push(k + 1);
                words.insert(p.clone(), w);
                queue.push_back(p);
            }
        }
    }
    words
}

/// Gram matrix of the Jones trace on the diagram basis: entry `tr(D D')`, i.e.
/// `delta^(loops(D D') + closure loops - n)`.
pub fn trace_gram_matrix(field: &Arc<CycField>, n: usize) -> PowerMatrix {
    let basis = tl_basis(n);
    let size = basis.len();
    let exps: Vec<Option<i32>> = (0..size * size)
        .into_par_iter()
        .map(|k| {
            let (r, c) = (k / size, k % size);
            let (p, loops) = basis[c].compose(&basis[r]).expect("square");
            let closure = p.closure_loops().expect("square");
            Some((loops + closure) as i32 - n as i32)
        })
        .collect();
    PowerMatrix::new(field.delta(), size, size, exps)
}

/// Rank of the Jones trace form on `TL_n`.
pub fn trace_form_rank(field: &Arc<CycField>, n: usize) -> usize {
    trace_gram_matrix(field, n).rank()
}

/// Default strand cap for the ideal computations.
pub const DEFAULT_MAX_IDEAL_N: usize = 8;

/// Dimension of the two-sided ideal `J_l = TL_n E_{l-1} TL_n`.
///
/// `J_l` is the smallest subspace containing `E_{l-1} (x) I` that is closed under
/// left and right multiplication by the generators; it is computed by that closure
/// over two prime-field reductions. For `n < l - 1` the idempotent does not live in
/// `TL_n` and the ideal is zero (`Q_n = TL_n`).
pub fn ideal_dimension(field: &Arc<CycField>, n: usize, max_n: usize) -> Result<usize> {
    let level = field.level() as usize;
    if n < level - 1 {
        return Ok(0);
    }
    if n > max_n {
        return Err(Error::ResourceLimit(format!("ideal dimension for n = {n} exceeds the cap n <= {max_n}")));
    }
    let e = jones_wenzl(field)?.into_element().embed(n)?;
    let basis = TLBasis::new(n);
    let tables: Vec<(Vec<(u32, u8)>, Vec<(u32, u8)>)> =
        (1..n).map(|i| (basis.generator_table(i, true), basis.generator_table(i, false))).collect();
    let coords = basis.coordinates(&e)?;
    let dims: Result<Vec<usize>> = ModpEmbedding::standard_pair(field.level())
        .par_iter()
        .map(|emb| {
            let f = *emb.prime_field();
            let delta = emb.reduce(&field.delta())?;
            let start: Vec<u64> = coords.iter().map(|c| emb.reduce(c)).collect::<Result<_>>()?;
            let mut span = EchelonBasis::new(f, basis.len());
            let mut queue = VecDeque::new();
            if span.insert(start) {
                queue.push_back(span.last_row().expect("inserted").to_vec());
            }
            while let Some(v) = queue.pop_front() {
                for (left, right) in &tables {
                    for table in [left, right] {
                        let mut w = vec![0u64; v.len()];
                        for (j, &x) in v.iter().enumerate() {
                            if x == 0 {
                                continue;
                            }
                            let (k, loops) = table[j];
                            let y = if loops == 0 { x } else { f.mul(x, delta) };
                            w[k as usize] = f.add(w[k as usize], y);
                        }
                        if span.insert(w) {
                            queue.push_back(span.last_row().expect("inserted").to_vec());
                        }
                    }
                }
            }
            Ok(span.rank())
        })
        .collect();
    Ok(dims?.into_iter().max().unwrap_or(0))
}

/// Dimension of `J_l` as the exact rank of the explicit spanning set
/// `{D1 (E (x) I) D2}` over the diagram basis. Only for small `n`.
pub fn ideal_dimension_spanning(field: &Arc<CycField>, n: usize) -> Result<usize> {
    let level = field.level() as usize;
    if n < level - 1 {
        return Ok(0);
    }
    let e = jones_wenzl(field)?.into_element().embed(n)?;
    let basis = TLBasis::new(n);
    let singles: Vec<TLElement> = basis.diagrams().iter().map(|d| TLElement::from_diagram(field, d.clone(), field.one())).collect();
    let left: Vec<TLElement> = singles.iter().map(|a| a.multiply(&e)).collect::<Result<_>>()?;
    let mut rows: HashSet<Vec<CycNum>> = HashSet::new();
    for l in &left {
        for b in &singles {
            let prod = l.multiply(b)?;
            if prod.is_zero() {
                continue;
            }
            // normalise by the leading coefficient so scalar multiples collapse
            let coords = basis.coordinates(&prod)?;
            let lead = coords.iter().find(|c| !c.is_zero()).expect("nonzero").inv().expect("nonzero");
            rows.insert(coords.iter().map(|c| c * &lead).collect());
        }
    }
    let mut rows: Vec<Vec<CycNum>> = rows.into_iter().collect();
    rows.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    let m = ExactMatrix::from_fn(field, rows.len(), basis.len(), |r, c| rows[r][c].clone());
    Ok(m.rank_exact())
}

/// `dim Q_n(l) = Catalan(n) - dim J_l`.
pub fn quotient_dimension_by_ideal(field: &Arc<CycField>, n: usize, max_n: usize) -> Result<usize> {
    let total = TLBasis::new(n).len();
    Ok(total - ideal_dimension(field, n, max_n)?)
}
