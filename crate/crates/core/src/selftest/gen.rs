//! Random instance generators. Every generator draws only from the RNG it
//! is given, so a fixed seed reproduces the whole corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{int, rat, Rational};
use crate::heights::VectorQ;
use crate::linalg::{MatrixQ, Subspace};
use crate::polynomial::MultiPoly;

/// Independent stream per criterion under one seed.
pub fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

pub fn nonzero_int(rng: &mut impl Rng, bound: i64) -> i64 {
    let x = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        -x
    } else {
        x
    }
}

/// `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn rational(rng: &mut impl Rng, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn nonzero_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    rat(nonzero_int(rng, bound), rng.gen_range(1..=bound))
}

pub fn rational_vector(rng: &mut impl Rng, n: usize, bound: i64) -> VectorQ {
    VectorQ((0..n).map(|_| rational(rng, bound)).collect())
}

pub fn int_vector(rng: &mut impl Rng, n: usize, bound: i64) -> VectorQ {
    VectorQ((0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect())
}

pub fn int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> MatrixQ {
    let data = (0..rows * cols).map(|_| int(rng.gen_range(-bound..=bound))).collect();
    MatrixQ::new(rows, cols, data).expect("shape")
}

/// Random exponent vector of total degree exactly `d`.
fn exponent(rng: &mut impl Rng, n: usize, d: u32) -> Vec<u32> {
    let mut e = vec![0; n];
    if n == 0 {
        return e;
    }
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    e
}

/// Up to `max_terms` terms of degree `≤ max_deg`, nonzero integer
/// coefficients in `[-coeff, coeff]`. May cancel to zero.
pub fn poly(rng: &mut impl Rng, n: usize, max_deg: u32, coeff: i64, max_terms: usize) -> MultiPoly {
    let t = rng.gen_range(1..=max_terms);
    let terms: Vec<(Vec<u32>, Rational)> = (0..t)
        .map(|_| {
            let d = if n == 0 { 0 } else { rng.gen_range(0..=max_deg) };
            (exponent(rng, n, d), int(nonzero_int(rng, coeff)))
        })
        .collect();
    MultiPoly::from_terms(n, terms)
}

pub fn nonzero_poly(rng: &mut impl Rng, n: usize, max_deg: u32, coeff: i64, max_terms: usize) -> MultiPoly {
    loop {
        let p = poly(rng, n, max_deg, coeff, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Nonzero multilinear form of degree `g` in `n` variables.
pub fn multilinear_form(rng: &mut impl Rng, n: usize, g: usize, coeff: i64, max_terms: usize) -> MultiPoly {
    let vars: Vec<usize> = (0..n).collect();
    loop {
        let t = rng.gen_range(1..=max_terms);
        let terms: Vec<(Vec<u32>, Rational)> = (0..t)
            .map(|_| {
                let mut e = vec![0u32; n];
                for &i in vars.choose_multiple(rng, g) {
                    e[i] = 1;
                }
                (e, int(nonzero_int(rng, coeff)))
            })
            .collect();
        let f = MultiPoly::from_terms(n, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Span of `gens` random integer vectors; never the zero subspace.
pub fn subspace(rng: &mut impl Rng, n: usize, gens: usize, bound: i64) -> Subspace {
    loop {
        let g: Vec<VectorQ> = (0..gens).map(|_| int_vector(rng, n, bound)).collect();
        let v = Subspace::span(n, &g).expect("same ambient dimension");
        if v.dim() > 0 {
            return v;
        }
    }
}

/// Subspace of exact dimension `m`.
pub fn subspace_of_dim(rng: &mut impl Rng, n: usize, m: usize, bound: i64) -> Subspace {
    loop {
        let v = subspace(rng, n, m, bound);
        if v.dim() == m {
            return v;
        }
    }
}
