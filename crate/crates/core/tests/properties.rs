mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::blade_oracle;
use tl_core::clifford::blade_product;
use tl_core::combinatorics::{f_closed, f_closed_ratio, w_recursive};
use tl_core::diagram::{enumerate_all, tl_basis};
use tl_core::exactnum::{CycField, CycNum, ExactMatrix};

fn cyc(field: &Arc<CycField>, coeffs: &[(i64, i64)]) -> CycNum {
    let c: Vec<BigRational> =
        coeffs.iter().take(field.degree()).map(|&(a, b)| BigRational::new(a.into(), b.into())).collect();
    field.from_coeffs(&c)
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 8)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(level in 3u32..=9, a in coeffs(), b in coeffs(), c in coeffs()) {
        let k = CycField::new(level).unwrap();
        let (a, b, c) = (cyc(&k, &a), cyc(&k, &b), cyc(&k, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &b, -&(&b - &a));
        if !b.is_zero() {
            let q = a.checked_div(&b).unwrap();
            prop_assert_eq!(&q * &b, a);
        }
    }

    #[test]
    fn zeta_has_order_twice_the_level(level in 3u32..=12, k in -40i64..40) {
        let f = CycField::new(level).unwrap();
        let z = f.zeta_pow(k);
        prop_assert_eq!(z.pow(2 * level as u64), f.one());
        prop_assert_eq!(f.zeta_pow(k + 2 * level as i64), z);
    }

    #[test]
    fn star_reverses_composition(parity in 0usize..2, a in 0usize..4, b in 0usize..4, c in 0usize..4, pick in any::<(u16, u16)>()) {
        let (s0, s1, s2) = (parity + 2 * a, parity + 2 * b, parity + 2 * c);
        let xs = enumerate_all(s0, s1);
        let ys = enumerate_all(s1, s2);
        let x = &xs[pick.0 as usize % xs.len()];
        let y = &ys[pick.1 as usize % ys.len()];
        let (xy, loops) = x.compose(y).unwrap();
        let (yx_star, loops_star) = y.star().compose(&x.star()).unwrap();
        prop_assert_eq!(xy.star(), yx_star);
        prop_assert_eq!(loops, loops_star);
        prop_assert_eq!(x.star().star(), x.clone());
    }

    #[test]
    fn closure_of_square_diagrams_is_star_invariant(n in 1usize..=7, pick in any::<u16>()) {
        let basis = tl_basis(n);
        let d = &basis[pick as usize % basis.len()];
        prop_assert_eq!(d.closure_loops().unwrap(), d.star().closure_loops().unwrap());
        prop_assert!(d.closure_loops().unwrap() >= 1);
    }

    #[test]
    fn blade_products_match_oracle(a in 0u32..1024, b in 0u32..1024) {
        let idx = |x: u32| (1..=10).filter(|i| x >> (i - 1) & 1 == 1).collect::<Vec<usize>>();
        let (neg, m, c) = blade_product(a, b);
        let (coef, word) = blade_oracle(&idx(a), &idx(b));
        let mag = BigRational::new(1.into(), BigInt::from(1u64 << c));
        prop_assert_eq!(coef, if neg { -mag } else { mag });
        prop_assert_eq!(word, idx(m));
    }

    #[test]
    fn dimension_forms_agree(t in 0u64..30, k in 0u64..30) {
        let closed = f_closed(t as i64, k as i64);
        prop_assert_eq!(w_recursive(t, k), closed.clone());
        prop_assert_eq!(f_closed_ratio(t as i64, k as i64), Some(closed));
    }

    #[test]
    fn rank_is_transpose_invariant(level in 3u32..=6, rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(coeffs(), 16)) {
        let k = CycField::new(level).unwrap();
        let m = ExactMatrix::from_fn(&k, rows, cols, |r, c| cyc(&k, &entries[r * 4 + c]));
        let r = m.rank_exact();
        prop_assert_eq!(m.transpose().rank_exact(), r);
        prop_assert_eq!(m.rank_exact_colpivot(), r);
        prop_assert_eq!(m.rank(), r);
    }
}
