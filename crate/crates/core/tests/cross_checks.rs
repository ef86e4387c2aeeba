//! Cross-checks between independent routes through the library.

mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use tl_core::cellrep::{
    cell_action, cell_form, cell_labels, simple_dim_altsum, simple_dim_rank, CellModule, CellVector, GFunction,
};
use tl_core::clifford::{blade_product, phi_table, BladeElement};
use tl_core::combinatorics::{cell_dim, DimFunctionTable};
use tl_core::diagram::{enumerate_monic, Diagram, Point};
use tl_core::exactnum::CycField;
use tl_core::quotientdim::{dims_by_matrix, seed_vector, Parity};
use tl_core::tlalg::{jones_wenzl, TLElement};

fn field(l: u32) -> Arc<CycField> {
    CycField::new(l).unwrap()
}

#[test]
fn rank_matches_alternating_sum() {
    for l in [4u32, 5, 6] {
        let k = field(l);
        let g = GFunction::new(l).unwrap();
        for n in 0..=12 {
            for t in cell_labels(n).into_iter().filter(|&t| g.in_domain(t)) {
                let rank = BigInt::from(simple_dim_rank(&k, t, n).unwrap());
                assert_eq!(rank, simple_dim_altsum(t, n, l).unwrap(), "l={l} n={n} t={t}");
            }
        }
    }
}

#[test]
fn composition_factors_of_cell_modules() {
    for l in [4u32, 5, 6] {
        let k = field(l);
        let g = GFunction::new(l).unwrap();
        for n in 0..=10 {
            for t in cell_labels(n) {
                let w = cell_dim(t as i64, n as i64);
                let lt = BigInt::from(simple_dim_rank(&k, t, n).unwrap());
                let partner = g.in_domain(t).then(|| g.apply(t).unwrap()).filter(|&s| s <= n);
                let want = match partner {
                    Some(s) => lt + BigInt::from(simple_dim_rank(&k, s, n).unwrap()),
                    None => lt,
                };
                assert_eq!(w, want, "l={l} n={n} t={t}");
            }
        }
    }
}

fn random_cell_vector(rng: &mut ChaCha8Rng, module: &CellModule) -> CellVector {
    let k = module.field();
    let mut v = CellVector::zero(k, module.through_strands(), module.strands());
    for _ in 0..3 {
        let i = rng.gen_range(0..module.dim());
        v.add_term(module.basis()[i].clone(), random_cyc(rng, k));
    }
    v
}

#[test]
fn jones_wenzl_is_self_adjoint_on_the_cell_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for l in 4..=6u32 {
        let k = field(l);
        let n = l as usize;
        let e = jones_wenzl(&k).unwrap().into_element().embed(n).unwrap();
        let module = CellModule::new(&k, l as usize - 2, n).unwrap();
        for _ in 0..20 {
            let v = random_cell_vector(&mut rng, &module);
            let w = random_cell_vector(&mut rng, &module);
            let ev = cell_action(&e, &v).unwrap();
            let ew = cell_action(&e, &w).unwrap();
            assert_eq!(cell_form(&ev, &w).unwrap(), cell_form(&ev, &ew).unwrap());
        }
    }
}

#[test]
fn cell_action_is_a_module_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for l in [4u32, 5, 7] {
        let k = field(l);
        for _ in 0..30 {
            let n = rng.gen_range(2..=6);
            let labels = cell_labels(n);
            let t = labels[rng.gen_range(0..labels.len())];
            let module = CellModule::new(&k, t, n).unwrap();
            let v = random_cell_vector(&mut rng, &module);
            let (x, y) = (random_tl(&mut rng, &k, n, 2), random_tl(&mut rng, &k, n, 2));
            let lhs = cell_action(&x.multiply(&y).unwrap(), &v).unwrap();
            let rhs = cell_action(&x, &cell_action(&y, &v).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(cell_action(&TLElement::identity(&k, n), &v).unwrap(), v);
        }
    }
}

#[test]
fn jones_wenzl_fixes_cell_vectors_through_its_strands() {
    // E_{l-1} (x) I acting on I_{l-1} (x) D' keeps I_{l-1} (x) D' with coefficient 1
    for l in 4..=6u32 {
        let k = field(l);
        let m = l as usize - 1;
        let e = jones_wenzl(&k).unwrap().into_element();
        for extra in [0usize, 2] {
            let n = m + extra;
            let cup_part = if extra == 0 { Diagram::identity(0) } else { Diagram::cup() };
            let v = Diagram::identity(m).tensor(&cup_part);
            let out = cell_action(&e.embed(n).unwrap(), &CellVector::from_diagram(&k, v.clone())).unwrap();
            assert!(out.coeff(&v).is_one(), "l={l} n={n}");
        }
    }
}

#[test]
fn generator_on_cup_vector_anchor() {
    // f_1 on the W_1(3) vector with through strand at top 0 and a cup on top 1,2
    let k = field(4);
    let v = Diagram::from_arcs(1, 3, &[(Point::Bottom(0), Point::Top(0)), (Point::Top(1), Point::Top(2))]).unwrap();
    let out = cell_action(&TLElement::generator(&k, 3, 1).unwrap(), &CellVector::from_diagram(&k, v)).unwrap();
    let want = Diagram::from_arcs(1, 3, &[(Point::Bottom(0), Point::Top(2)), (Point::Top(0), Point::Top(1))]).unwrap();
    assert_eq!(out, CellVector::from_diagram(&k, want));
}

#[test]
fn matrix_route_matches_ranks() {
    for l in [4u32, 5, 6] {
        let k = field(l);
        for n in (l as usize - 2)..=12 {
            let v = dims_by_matrix(l, n).unwrap();
            for (&t, d) in v.labels.iter().zip(&v.entries) {
                assert_eq!(*d, BigInt::from(simple_dim_rank(&k, t, n).unwrap()), "l={l} n={n} t={t}");
            }
        }
    }
}

#[test]
fn seed_vectors_are_cell_dimensions() {
    let table = DimFunctionTable::build(20);
    for l in 4..=10u32 {
        for p in [Parity::Even, Parity::Odd] {
            let s = seed_vector(l, p).unwrap();
            assert!(s.n == l as usize - 2 || s.n == l as usize - 3);
            for (&t, w) in s.labels.iter().zip(&s.entries) {
                assert_eq!(*w, table.w_tn(t as i64, s.n as i64));
            }
        }
    }
}

#[test]
fn generator_relations() {
    for l in 3..=8u32 {
        let k = field(l);
        let d = k.delta();
        for n in 2..=8usize {
            let f: Vec<TLElement> = (1..n).map(|i| TLElement::generator(&k, n, i).unwrap()).collect();
            for i in 0..n - 1 {
                assert_eq!(f[i].multiply(&f[i]).unwrap(), f[i].scale(&d));
                if i + 1 < n - 1 {
                    assert_eq!(f[i].multiply(&f[i + 1]).unwrap().multiply(&f[i]).unwrap(), f[i]);
                    assert_eq!(f[i + 1].multiply(&f[i]).unwrap().multiply(&f[i + 1]).unwrap(), f[i + 1]);
                }
                for j in i + 2..n - 1 {
                    assert_eq!(f[i].multiply(&f[j]).unwrap(), f[j].multiply(&f[i]).unwrap());
                }
            }
        }
    }
}

#[test]
fn monic_enumeration_has_closed_form_size() {
    for n in 0..=12 {
        for t in cell_labels(n) {
            assert_eq!(BigInt::from(enumerate_monic(t, n).len()), cell_dim(t as i64, n as i64));
        }
    }
}

#[test]
fn blade_sign_rule_matches_transposition_oracle() {
    let idx = |x: u32| (1..=6).filter(|i| x >> (i - 1) & 1 == 1).collect::<Vec<usize>>();
    for a in 0u32..64 {
        for b in 0u32..64 {
            let (neg, m, c) = blade_product(a, b);
            let (coef, word) = blade_oracle(&idx(a), &idx(b));
            let mag = num_rational::BigRational::new(1.into(), BigInt::from(1u32 << c));
            assert_eq!(coef, if neg { -mag } else { mag });
            assert_eq!(word, idx(m));
        }
    }
}

#[test]
fn phi_is_multiplicative() {
    let k = field(4);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for n in 2..=8usize {
        let table = phi_table(&k, n).unwrap();
        let phi = |x: &TLElement| {
            let mut acc = BladeElement::zero(&k, n).unwrap();
            for (d, c) in x.terms() {
                acc = acc.add(&table[d].scale(c)).unwrap();
            }
            acc
        };
        for _ in 0..100 {
            let (a, b) = (random_tl(&mut rng, &k, n, 2), random_tl(&mut rng, &k, n, 2));
            let lhs = phi(&a.multiply(&b).unwrap());
            let rhs = phi(&a).multiply(&phi(&b)).unwrap();
            assert_eq!(lhs, rhs, "n={n}");
        }
    }
}
