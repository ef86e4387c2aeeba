//! Test-side oracles, written independently of the library routes they check.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tl_core::diagram::{tl_basis, Diagram};
use tl_core::exactnum::{CycField, CycNum};
use tl_core::tlalg::TLElement;

pub const SEED: u64 = 0x7e3a_11c0_5eed;

/// Counts of top-boundary words over `{open, close, through}` with balanced arcs
/// and no through strand under an arc, indexed by number of through strands.
/// Brute force over all `3^n` words.
pub fn brute_force_monic_counts(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    let total = 3u64.pow(n as u32);
    'word: for code in 0..total {
        let mut c = code;
        let (mut depth, mut through) = (0i32, 0usize);
        for _ in 0..n {
            match c % 3 {
                0 => depth += 1,
                1 => {
                    depth -= 1;
                    if depth < 0 {
                        continue 'word;
                    }
                }
                _ => {
                    if depth > 0 {
                        continue 'word;
                    }
                    through += 1;
                }
            }
            c /= 3;
        }
        if depth == 0 {
            counts[through] += 1;
        }
    }
    counts
}

/// Chebyshev values `D_0 = 1, D_1 = delta, D_{k+1} = delta D_k - D_{k-1}`.
pub fn chebyshev(field: &Arc<CycField>, upto: usize) -> Vec<CycNum> {
    let d = field.delta();
    let mut out = vec![field.one(), d.clone()];
    while out.len() <= upto {
        let k = out.len();
        let next = &(&d * &out[k - 1]) - &out[k - 2];
        out.push(next);
    }
    out.truncate(upto + 1);
    out
}

/// `E_m` by the Wenzl recursion
/// `E_{k+1} = E_k (x) 1 - (D_{k-1}/D_k) (E_k (x) 1) f_k (E_k (x) 1)`.
pub fn wenzl_projector(field: &Arc<CycField>, m: usize) -> TLElement {
    let cheb = chebyshev(field, m);
    let mut e = TLElement::identity(field, 1);
    for k in 1..m {
        let ek = e.embed(k + 1).unwrap();
        let fk = TLElement::generator(field, k + 1, k).unwrap();
        let ratio = cheb[k - 1].checked_div(&cheb[k]).expect("D_k is nonzero below the level");
        let sandwich = ek.multiply(&fk).unwrap().multiply(&ek).unwrap();
        e = ek.sub(&sandwich.scale(&ratio)).unwrap();
    }
    e
}

/// Blade product on explicit index lists by adjacent transpositions:
/// `g_i g_j = -g_j g_i` for `i != j` and `g_i g_i = 1/2`.
pub fn blade_oracle(a: &[usize], b: &[usize]) -> (BigRational, Vec<usize>) {
    let mut word: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut coeff = BigRational::one();
    let half = BigRational::new(1.into(), 2.into());
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                coeff = -coeff;
                changed = true;
            } else if word[i] == word[i + 1] {
                word.drain(i..i + 2);
                coeff *= &half;
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            return (coeff, word);
        }
    }
}

pub fn fibonacci_oracle(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

pub fn pow_big(base: u32, e: u32) -> BigInt {
    (0..e).fold(BigInt::one(), |acc, _| acc * base)
}

pub fn random_cyc(rng: &mut ChaCha8Rng, field: &Arc<CycField>) -> CycNum {
    let coeffs: Vec<BigRational> = (0..field.degree())
        .map(|_| BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into()))
        .collect();
    field.from_coeffs(&coeffs)
}

pub fn random_nonzero_cyc(rng: &mut ChaCha8Rng, field: &Arc<CycField>) -> CycNum {
    loop {
        let x = random_cyc(rng, field);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_diagram(rng: &mut ChaCha8Rng, basis: &[Diagram]) -> Diagram {
    basis[rng.gen_range(0..basis.len())].clone()
}

/// A random `src -> dst` diagram among all planar ones.
pub fn random_morphism(rng: &mut ChaCha8Rng, src: usize, dst: usize) -> Diagram {
    let all = tl_core::diagram::enumerate_all(src, dst);
    all[rng.gen_range(0..all.len())].clone()
}

pub fn random_tl(rng: &mut ChaCha8Rng, field: &Arc<CycField>, n: usize, terms: usize) -> TLElement {
    let basis = tl_basis(n);
    let mut x = TLElement::zero(field, n);
    for _ in 0..terms {
        let c = BigRational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into());
        x.add_term(random_diagram(rng, &basis), field.from_rational(&c));
    }
    x
}
