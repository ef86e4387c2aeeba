//! Planar Temperley-Lieb diagrams `t -> n`.
//!
//! Boundary points are labelled `0..t` along the bottom (left to right) and
//! `t..t+n` along the top (left to right). A diagram is a fixed-point-free
//! involution on those labels. Planarity is checked in the flat picture obtained
//! by rotating the bottom line up to the left of the top line, which reverses
//! the bottom labels: bottom point `i` sits at flat position `t-1-i` and top
//! point `j` at flat position `t+j`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{quantum_factorial, quantum_int, LaurentPolyZ};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    src: u8,
    dst: u8,
    partner: Box<[u8]>,
}

/// A boundary point of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Bottom(usize),
    Top(usize),
}

fn flat_pos(t: usize, label: usize) -> usize {
    if label < t {
        t - 1 - label
    } else {
        label
    }
}

fn is_noncrossing(flat: &[u8]) -> bool {
    let mut stack: Vec<usize> = Vec::with_capacity(flat.len() / 2);
    for (i, &p) in flat.iter().enumerate() {
        let p = p as usize;
        if p > i {
            stack.push(i);
        } else if stack.pop() != Some(p) {
            return false;
        }
    }
    stack.is_empty()
}

impl Diagram {
    /// Builds a diagram from its partner table, validating the involution and planarity.
    pub fn new(src: usize, dst: usize, partner: Vec<usize>) -> Result<Self> {
        let m = src + dst;
        if m > u8::MAX as usize {
            return Err(Error::InvalidDiagram(format!("{m} boundary points is too many")));
        }
        if partner.len() != m {
            return Err(Error::InvalidDiagram(format!("expected {m} partners, got {}", partner.len())));
        }
        if m % 2 != 0 {
            return Err(Error::InvalidDiagram(format!("{src} + {dst} boundary points is odd")));
        }
        for (i, &p) in partner.iter().enumerate() {
            if p >= m || p == i || partner[p] != i {
                return Err(Error::InvalidDiagram(format!("partner table is not a perfect matching at {i}")));
            }
        }
        let d = Self { src: src as u8, dst: dst as u8, partner: partner.iter().map(|&p| p as u8).collect() };
        if !is_noncrossing(&d.flat_partners()) {
            return Err(Error::InvalidDiagram("arcs cross".into()));
        }
        Ok(d)
    }

    /// Builds a diagram from a list of arcs between boundary points.
    pub fn from_arcs(src: usize, dst: usize, arcs: &[(Point, Point)]) -> Result<Self> {
        let label = |p: Point| -> Result<usize> {
            match p {
                Point::Bottom(i) if i < src => Ok(i),
                Point::Top(j) if j < dst => Ok(src + j),
                _ => Err(Error::InvalidDiagram(format!("{p:?} is off the boundary"))),
            }
        };
        let m = src + dst;
        let mut partner = vec![usize::MAX; m];
        for &(a, b) in arcs {
            let (a, b) = (label(a)?, label(b)?);
            if partner[a] != usize::MAX || partner[b] != usize::MAX || a == b {
                return Err(Error::InvalidDiagram("point used twice".into()));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::InvalidDiagram("unmatched boundary point".into()));
        }
        Self::new(src, dst, partner)
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        Self::new(n, n, partner).expect("identity is planar")
    }

    /// The cup-cap diagram `f_i` on `n` strands, `1 <= i <= n-1`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::GeneratorIndex { index: i, strands: n });
        }
        let mut partner: Vec<usize> = (0..2 * n).map(|k| if k < n { k + n } else { k - n }).collect();
        let (a, b) = (i - 1, i);
        partner[a] = b;
        partner[b] = a;
        partner[n + a] = n + b;
        partner[n + b] = n + a;
        Self::new(n, n, partner)
    }

    /// The cup `0 -> 2`.
    pub fn cup() -> Self {
        Self::new(0, 2, vec![1, 0]).expect("cup")
    }

    /// The cap `2 -> 0`.
    pub fn cap() -> Self {
        Self::new(2, 0, vec![1, 0]).expect("cap")
    }

    pub fn src(&self) -> usize {
        self.src as usize
    }

    pub fn dst(&self) -> usize {
        self.dst as usize
    }

    pub fn partner(&self, label: usize) -> usize {
        self.partner[label] as usize
    }

    pub fn partners(&self) -> impl Iterator<Item = usize> + '_ {
        self.partner.iter().map(|&p| p as usize)
    }

    pub fn point(&self, label: usize) -> Point {
        if label < self.src() {
            Point::Bottom(label)
        } else {
            Point::Top(label - self.src())
        }
    }

    /// Number of arcs joining a bottom point to a top point.
    pub fn through_strands(&self) -> usize {
        let t = self.src();
        (0..t).filter(|&i| self.partner(i) >= t).count()
    }

    /// Every source point is joined to a target point.
    pub fn is_monic(&self) -> bool {
        self.through_strands() == self.src()
    }

    /// Stacks `self: t -> m` below `other: m -> n`. Returns the composite `t -> n`
    /// and the number of closed loops removed.
    pub fn compose(&self, other: &Diagram) -> Result<(Diagram, usize)> {
        let (t, m, n) = (self.src(), self.dst(), other.dst());
        if other.src() != m {
            return Err(Error::BoundaryMismatch { left: m, right: other.src() });
        }
        let mut out = vec![usize::MAX; t + n];
        let mut seen_mid = vec![false; m];
        // Walk from an outer point until the path exits on the outer boundary.
        // `in_lower` says which diagram the current middle point is about to be
        // resolved in.
        let walk = |start_lower: bool, start: usize, seen_mid: &mut Vec<bool>| -> usize {
            let (mut lower, mut label) = (start_lower, start);
            loop {
                if lower {
                    let p = self.partner(label);
                    if p < t {
                        return p;
                    }
                    let k = p - t;
                    seen_mid[k] = true;
                    lower = false;
                    label = k;
                } else {
                    let p = other.partner(label);
                    if p >= m {
                        return t + (p - m);
                    }
                    seen_mid[p] = true;
                    lower = true;
                    label = t + p;
                }
            }
        };
        for i in 0..t {
            if out[i] == usize::MAX {
                let end = walk(true, i, &mut seen_mid);
                out[i] = end;
                out[end] = i;
            }
        }
        for j in 0..n {
            if out[t + j] == usize::MAX {
                let end = walk(false, m + j, &mut seen_mid);
                out[t + j] = end;
                out[end] = t + j;
            }
        }
        let mut loops = 0;
        for k in 0..m {
            if seen_mid[k] {
                continue;
            }
            loops += 1;
            let mut cur = k;
            loop {
                seen_mid[cur] = true;
                let up = other.partner(cur);
                seen_mid[up] = true;
                let down = self.partner(t + up) - t;
                if down == k {
                    break;
                }
                cur = down;
            }
        }
        let d = Diagram {
            src: t as u8,
            dst: n as u8,
            partner: out.into_iter().map(|p| p as u8).collect(),
        };
        Ok((d, loops))
    }

    /// Reflection in a horizontal line: `t -> n` becomes `n -> t`.
    pub fn star(&self) -> Diagram {
        let (t, n) = (self.src(), self.dst());
        let relabel = |l: usize| if l < t { n + l } else { l - t };
        let mut partner = vec![0u8; t + n];
        for l in 0..t + n {
            partner[relabel(l)] = relabel(self.partner(l)) as u8;
        }
        Diagram { src: n as u8, dst: t as u8, partner: partner.into() }
    }

    /// Side-by-side juxtaposition, `self` on the left.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let (t1, n1, t2, n2) = (self.src(), self.dst(), other.src(), other.dst());
        let tt = t1 + t2;
        let map_l = |l: usize| if l < t1 { l } else { tt + (l - t1) };
        let map_r = |l: usize| if l < t2 { t1 + l } else { tt + n1 + (l - t2) };
        let mut partner = vec![0u8; tt + n1 + n2];
        for l in 0..t1 + n1 {
            partner[map_l(l)] = map_l(self.partner(l)) as u8;
        }
        for l in 0..t2 + n2 {
            partner[map_r(l)] = map_r(other.partner(l)) as u8;
        }
        Diagram { src: tt as u8, dst: (n1 + n2) as u8, partner: partner.into() }
    }

    /// Partner table in flat positions.
    fn flat_partners(&self) -> Vec<u8> {
        let t = self.src();
        let mut flat = vec![0u8; self.partner.len()];
        for l in 0..self.partner.len() {
            flat[flat_pos(t, l)] = flat_pos(t, self.partner(l)) as u8;
        }
        flat
    }

    /// The `0 -> t+n` diagram obtained by rotating the bottom line up to the left.
    pub fn rotate_to_flat(&self) -> Diagram {
        Diagram { src: 0, dst: self.src + self.dst, partner: self.flat_partners().into() }
    }

    /// Inverse of [`Diagram::rotate_to_flat`]: reads the first `t` points of a
    /// `0 -> m` diagram as the (reversed) bottom line.
    pub fn unrotate(flat: &Diagram, t: usize) -> Result<Diagram> {
        if flat.src() != 0 || t > flat.dst() {
            return Err(Error::InvalidDiagram("expected a 0 -> m diagram with m >= t".into()));
        }
        let m = flat.dst();
        let mut partner = vec![0u8; m];
        for pos in 0..m {
            // flat_pos is an involution on labels
            partner[flat_pos(t, pos)] = flat_pos(t, flat.partner(pos)) as u8;
        }
        Ok(Diagram { src: t as u8, dst: (m - t) as u8, partner: partner.into() })
    }

    /// Number of closed loops in the trace closure of an `n -> n` diagram, which
    /// joins top point `k` to bottom point `k` around the right-hand side.
    pub fn closure_loops(&self) -> Result<usize> {
        let n = self.src();
        if self.dst() != n {
            return Err(Error::BoundaryMismatch { left: n, right: self.dst() });
        }
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut cur = start;
            loop {
                seen[cur] = true;
                let p = self.partner(cur);
                seen[p] = true;
                let next = if p < n { p + n } else { p - n };
                if next == start {
                    break;
                }
                cur = next;
            }
        }
        Ok(loops)
    }

    /// Arc-nesting forest of a `0 -> m` diagram.
    pub fn nesting_forest(&self) -> Result<Forest> {
        if self.src() != 0 {
            return Err(Error::InvalidDiagram("nesting forests are defined for 0 -> m diagrams".into()));
        }
        let mut arcs = Vec::new();
        let mut parent = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        for pos in 0..self.dst() {
            let p = self.partner(pos);
            if p > pos {
                let node = arcs.len();
                arcs.push((pos, p));
                parent.push(stack.last().copied());
                stack.push(node);
            } else {
                stack.pop();
            }
        }
        Ok(Forest { arcs, parent })
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({}->{}: {})", self.src, self.dst, self)
    }
}

/// Arc list, e.g. `b0-t0 b1-b2 t1-t2`.
impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.partner.is_empty() {
            return write!(f, "empty");
        }
        let name = |l: usize| match self.point(l) {
            Point::Bottom(i) => format!("b{i}"),
            Point::Top(j) => format!("t{j}"),
        };
        let mut first = true;
        for l in 0..self.partner.len() {
            let p = self.partner(l);
            if p > l {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{}-{}", name(l), name(p))?;
            }
        }
        Ok(())
    }
}

/// Poset of arcs of a `0 -> m` diagram ordered by nesting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    /// Arcs as `(left, right)` flat positions, sorted by left endpoint.
    arcs: Vec<(usize, usize)>,
    /// Innermost arc strictly enclosing each arc.
    parent: Vec<Option<usize>>,
}

impl Forest {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.parent[i].is_none())
    }

    pub fn children(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.parent[i] == Some(node))
    }

    /// `|F_{<= a}|` for every node `a`: the arc itself plus everything nested inside it.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        // arcs nested in (l, r) have both endpoints strictly inside
        self.arcs.iter().map(|&(l, r)| (r - l + 1) / 2).collect()
    }
}

/// `[|F|]! / prod_a [|F_{<= a}|]` as an exact Laurent polynomial.
pub fn hook_poly(forest: &Forest) -> Result<LaurentPolyZ> {
    let num = quantum_factorial(forest.len() as u32);
    let den = forest
        .subtree_sizes()
        .into_iter()
        .fold(LaurentPolyZ::one(), |acc, s| &acc * &quantum_int(s as u32));
    num.div_exact(&den)
        .ok_or_else(|| Error::Invariant(format!("hook quotient {num} / {den} is not a Laurent polynomial")))
}

/// All non-crossing perfect matchings of `m` flat points in which no arc has both
/// endpoints among the first `guard` positions.
fn flat_matchings(m: usize, guard: usize) -> Vec<Vec<u8>> {
    fn rec(pos: usize, m: usize, guard: usize, stack: &mut Vec<usize>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if pos == m {
            if stack.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        let remaining = m - pos;
        // open a new arc
        if stack.len() < remaining {
            stack.push(pos);
            rec(pos + 1, m, guard, stack, cur, out);
            stack.pop();
        }
        // close the innermost open arc
        if let Some(&open) = stack.last() {
            if pos >= guard {
                stack.pop();
                cur[open] = pos as u8;
                cur[pos] = open as u8;
                rec(pos + 1, m, guard, stack, cur, out);
                stack.push(open);
            }
        }
    }
    if m % 2 != 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(0, m, guard, &mut Vec::new(), &mut vec![0; m], &mut out);
    out
}

fn from_flat_table(t: usize, n: usize, flat: &[u8]) -> Diagram {
    let mut partner = vec![0u8; t + n];
    for pos in 0..t + n {
        partner[flat_pos(t, pos)] = flat_pos(t, flat[pos] as usize) as u8;
    }
    Diagram { src: t as u8, dst: n as u8, partner: partner.into() }
}

/// Every diagram `t -> n`, in canonical (lexicographic partner-table) order.
pub fn enumerate_all(t: usize, n: usize) -> Vec<Diagram> {
    if (t + n) % 2 != 0 || t + n > u8::MAX as usize {
        return Vec::new();
    }
    let mut out: Vec<Diagram> = flat_matchings(t + n, 0).iter().map(|f| from_flat_table(t, n, f)).collect();
    out.sort();
    out
}

/// Monic diagrams `t -> n` (every source point on a through strand), in canonical order.
/// Empty when `t > n` or `t + n` is odd.
pub fn enumerate_monic(t: usize, n: usize) -> Vec<Diagram> {
    if t > n || (t + n) % 2 != 0 || t + n > u8::MAX as usize {
        return Vec::new();
    }
    // In flat positions the source points are the first t; a monic diagram has no
    // arc with both ends there.
    let mut out: Vec<Diagram> = flat_matchings(t + n, t).iter().map(|f| from_flat_table(t, n, f)).collect();
    out.sort();
    out
}

/// Diagram basis of `TL_n`.
pub fn tl_basis(n: usize) -> Vec<Diagram> {
    enumerate_all(n, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Point::{Bottom as B, Top as T};

    #[test]
    fn monic_counts_from_examples() {
        assert_eq!(enumerate_monic(1, 3).len(), 2);
        assert_eq!(enumerate_monic(2, 4).len(), 3);
        assert_eq!(enumerate_monic(0, 0).len(), 1);
        for n in 0..6 {
            assert_eq!(enumerate_monic(n, n), vec![Diagram::identity(n)]);
        }
        assert!(enumerate_monic(3, 2).is_empty());
        assert!(enumerate_monic(1, 4).is_empty());
    }

    #[test]
    fn catalan_counts() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, &c) in catalan.iter().enumerate() {
            assert_eq!(enumerate_monic(0, 2 * n).len(), c);
            assert_eq!(tl_basis(n).len(), c);
        }
    }

    #[test]
    fn compose_identity_and_loops() {
        let f1 = Diagram::generator(3, 1).unwrap();
        let (d, loops) = Diagram::identity(3).compose(&f1).unwrap();
        assert_eq!((d, loops), (f1.clone(), 0));
        let (d, loops) = Diagram::cup().compose(&Diagram::cap()).unwrap();
        assert_eq!(d, Diagram::identity(0));
        assert_eq!(loops, 1);
        let g = Diagram::generator(2, 1).unwrap();
        assert_eq!(g.compose(&g).unwrap(), (g.clone(), 1));
        assert!(Diagram::cup().compose(&Diagram::identity(3)).is_err());
    }

    #[test]
    fn temperley_lieb_relations_on_diagrams() {
        let n = 4;
        let f = |i| Diagram::generator(n, i).unwrap();
        for i in 1..n - 1 {
            let (a, l1) = f(i).compose(&f(i + 1)).unwrap();
            let (b, l2) = a.compose(&f(i)).unwrap();
            assert_eq!((b, l1 + l2), (f(i), 0));
        }
        let (x, _) = f(1).compose(&f(3)).unwrap();
        let (y, _) = f(3).compose(&f(1)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn star_examples() {
        assert_eq!(Diagram::identity(4).star(), Diagram::identity(4));
        assert_eq!(Diagram::cap().star(), Diagram::cup());
        for n in 2..=6 {
            for i in 1..n {
                let g = Diagram::generator(n, i).unwrap();
                assert_eq!(g.star(), g);
            }
        }
        for d in enumerate_all(2, 4) {
            assert_eq!(d.star().star(), d);
        }
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(Diagram::identity(1).rotate_to_flat(), Diagram::cup());
        let flats: Vec<Diagram> = tl_basis(2).iter().map(Diagram::rotate_to_flat).collect();
        let mut expect = enumerate_all(0, 4);
        let mut got = flats.clone();
        got.sort();
        expect.sort();
        assert_eq!(got, expect);
        for d in enumerate_all(3, 5) {
            assert_eq!(Diagram::unrotate(&d.rotate_to_flat(), 3).unwrap(), d);
        }
    }

    #[test]
    fn forest_examples() {
        let single = Diagram::cup().nesting_forest().unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.subtree_sizes(), vec![1]);

        let nested = Diagram::new(0, 4, vec![3, 2, 1, 0]).unwrap().nesting_forest().unwrap();
        assert_eq!(nested.subtree_sizes(), vec![2, 1]);
        assert_eq!(nested.parent(1), Some(0));

        let side = Diagram::new(0, 4, vec![1, 0, 3, 2]).unwrap().nesting_forest().unwrap();
        assert_eq!(side.subtree_sizes(), vec![1, 1]);
        assert_eq!(side.roots().count(), 2);
    }

    #[test]
    fn hook_examples() {
        let f = |p: Vec<usize>| hook_poly(&Diagram::new(0, p.len(), p).unwrap().nesting_forest().unwrap()).unwrap();
        assert_eq!(f(vec![1, 0]), LaurentPolyZ::one());
        assert_eq!(f(vec![3, 2, 1, 0]), LaurentPolyZ::one());
        assert_eq!(f(vec![1, 0, 3, 2]), quantum_int(2));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(Diagram::new(0, 4, vec![2, 3, 0, 1]).is_err()); // crossing
        assert!(Diagram::new(1, 2, vec![1, 0, 2]).is_err());
        assert!(Diagram::new(1, 1, vec![0, 1]).is_err());
        assert!(Diagram::generator(3, 3).is_err());
        assert!(Diagram::from_arcs(1, 1, &[(B(0), T(0))]).is_ok());
        assert!(Diagram::from_arcs(1, 1, &[(B(0), T(1))]).is_err());
    }

    #[test]
    fn closure_loops_basic() {
        assert_eq!(Diagram::identity(3).closure_loops().unwrap(), 3);
        assert_eq!(Diagram::generator(2, 1).unwrap().closure_loops().unwrap(), 1);
        assert_eq!(Diagram::generator(3, 2).unwrap().closure_loops().unwrap(), 2);
    }
}
