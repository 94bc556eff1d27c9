//! Integer lattices: the saturated lattice `V ∩ ℤⁿ` of a rational subspace
//! and exact LLL reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{big, Rational};
use crate::heights::VectorQ;
use crate::linalg::{normalize_sign, Subspace};

pub const LLL_DELTA: (i64, i64) = (3, 4);

/// Basis of `{x ∈ ℤⁿ : Bx = 0}` for integer rows `B`.
///
/// Unimodular column operations (extended gcd) bring `B` to lower column
/// echelon form while the same operations are applied to the identity;
/// the transformed identity columns that end up under zero columns of `B`
/// span the kernel lattice.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut b: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut c = 0;
    for i in 0..b.len() {
        if c == n {
            break;
        }
        for j in c + 1..n {
            if b[i][j].is_zero() {
                continue;
            }
            if b[i][c].is_zero() {
                swap_cols(&mut b, &mut u, c, j);
                continue;
            }
            let (x, y) = (b[i][c].clone(), b[i][j].clone());
            let e = x.extended_gcd(&y);
            // [c j] ← [c j]·[[s, -y/g], [t, x/g]], determinant 1
            let (s, t) = (e.x, e.y);
            let (yg, xg) = (&y / &e.gcd, &x / &e.gcd);
            combine_cols(&mut b, c, j, &s, &t, &yg, &xg);
            combine_cols(&mut u, c, j, &s, &t, &yg, &xg);
        }
        if !b[i][c].is_zero() {
            c += 1;
        }
    }
    (c..n).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}

fn swap_cols(b: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], c: usize, j: usize) {
    for row in b.iter_mut().chain(u.iter_mut()) {
        row.swap(c, j);
    }
}

fn combine_cols(m: &mut [Vec<BigInt>], c: usize, j: usize, s: &BigInt, t: &BigInt, yg: &BigInt, xg: &BigInt) {
    for row in m.iter_mut() {
        let (a, b) = (row[c].clone(), row[j].clone());
        row[c] = s * &a + t * &b;
        row[j] = xg * &b - yg * &a;
    }
}

/// Rows of `V`'s dual description with denominators cleared.
fn integral_dual_rows(v: &Subspace) -> Vec<Vec<BigInt>> {
    v.dual_rows()
        .iter()
        .map(|r| r.primitive().expect("dual basis vectors are nonzero"))
        .collect()
}

/// A basis of the saturated lattice `V ∩ ℤⁿ`.
pub fn saturated_basis(v: &Subspace) -> Vec<Vec<BigInt>> {
    integer_kernel(&integral_dual_rows(v), v.ambient_dim())
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct GramSchmidt {
    mu: Vec<Vec<Rational>>,
    norms: Vec<Rational>,
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> GramSchmidt {
    let m = b.len();
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut mu = vec![vec![Rational::zero(); m]; m];
    let mut norms = Vec::with_capacity(m);
    for i in 0..m {
        let mut v: Vec<Rational> = b[i].iter().map(|x| big(x.clone())).collect();
        for j in 0..i {
            let num: Rational = b[i].iter().zip(&star[j]).map(|(x, y)| big(x.clone()) * y).sum();
            let coeff = num / &norms[j];
            for (vk, sk) in v.iter_mut().zip(&star[j]) {
                *vk -= &coeff * sk;
            }
            mu[i][j] = coeff;
        }
        norms.push(v.iter().map(|x| x * x).sum::<Rational>());
        star.push(v);
    }
    GramSchmidt { mu, norms }
}

fn round_half_up(r: &Rational) -> BigInt {
    (r + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Exact LLL reduction with `δ = 3/4` of linearly independent integer rows.
pub fn lll_reduce(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let m = b.len();
    if m < 2 {
        return b;
    }
    let delta = Rational::new(BigInt::from(LLL_DELTA.0), BigInt::from(LLL_DELTA.1));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut gs = gram_schmidt(&b);
    let mut k = 1;
    while k < m {
        for j in (0..k).rev() {
            if gs.mu[k][j].abs() > half {
                let q = round_half_up(&gs.mu[k][j]);
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                let qr = big(q);
                for l in 0..j {
                    let t = &qr * &gs.mu[j][l];
                    gs.mu[k][l] -= t;
                }
                gs.mu[k][j] -= &qr;
            }
        }
        let lhs = gs.norms[k].clone();
        let rhs = (&delta - &gs.mu[k][k - 1] * &gs.mu[k][k - 1]) * &gs.norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            gs = gram_schmidt(&b);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Whether `b` is LLL-reduced with `δ = 3/4`.
pub fn is_lll_reduced(b: &[Vec<BigInt>]) -> bool {
    let gs = gram_schmidt(b);
    let delta = Rational::new(BigInt::from(LLL_DELTA.0), BigInt::from(LLL_DELTA.1));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for i in 0..b.len() {
        for j in 0..i {
            if gs.mu[i][j].abs() > half {
                return false;
            }
        }
        if i > 0 && gs.norms[i] < (&delta - &gs.mu[i][i - 1] * &gs.mu[i][i - 1]) * &gs.norms[i - 1] {
            return false;
        }
    }
    true
}

/// LLL-reduced basis of `V ∩ ℤⁿ`, signs normalized.
pub fn reduced_lattice_basis(v: &Subspace) -> Vec<VectorQ> {
    let mut b = lll_reduce(saturated_basis(v));
    for x in b.iter_mut() {
        normalize_sign(x);
    }
    b.iter().map(|x| VectorQ::from_bigints(x)).collect()
}

/// `gcd` of the maximal minors of an integer basis; 1 exactly when the
/// basis spans a saturated lattice.
pub fn minor_content(basis: &[Vec<BigInt>], n: usize) -> BigInt {
    let m = basis.len();
    crate::linalg::combinations(n, m)
        .into_iter()
        .map(|rows| {
            let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| basis.iter().map(|c| c[i].clone()).collect()).collect();
            crate::linalg::integer_determinant(sub)
        })
        .fold(BigInt::zero(), |acc, d| acc.gcd(&d))
}

pub fn squared_norm(v: &[BigInt]) -> BigInt {
    dot(v, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_single_row() {
        let k = integer_kernel(&[ints(&[3, 1])], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(dot(&k[0], &ints(&[3, 1])), BigInt::zero());
        assert_eq!(minor_content(&k, 2), BigInt::one());
    }

    #[test]
    fn saturation_beats_scaled_generators() {
        // span{(2,4,6)} meets ℤ³ in multiples of (1,2,3)
        let v = Subspace::span(3, &[VectorQ::from_ints(&[2, 4, 6])]).unwrap();
        assert_eq!(reduced_lattice_basis(&v), vec![VectorQ::from_ints(&[1, 2, 3])]);
    }

    #[test]
    fn lll_textbook_example() {
        let b = lll_reduce(vec![ints(&[1, 1, 1]), ints(&[-1, 0, 2]), ints(&[3, 5, 6])]);
        assert!(is_lll_reduced(&b));
        assert_eq!(b[0], ints(&[0, 1, 0]));
    }

    proptest! {
        #[test]
        fn kernel_lattice_is_saturated(rows in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 5), 1..4)) {
            let b: Vec<Vec<BigInt>> = rows.iter().map(|r| ints(r)).collect();
            let k = integer_kernel(&b, 5);
            let rank = crate::linalg::MatrixQ::from_int_rows(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>()).unwrap().rank();
            prop_assert_eq!(k.len(), 5 - rank);
            for v in &k {
                for r in &b {
                    prop_assert!(dot(v, r).is_zero());
                }
            }
            if !k.is_empty() {
                prop_assert_eq!(minor_content(&k, 5), BigInt::one());
            }
        }

        #[test]
        fn lll_output_is_reduced_and_same_lattice(gens in proptest::collection::vec(proptest::collection::vec(-10i64..=10, 4), 1..4)) {
            let v = Subspace::span(4, &gens.iter().map(|g| VectorQ::from_ints(g)).collect::<Vec<_>>()).unwrap();
            prop_assume!(v.dim() > 0);
            let raw = saturated_basis(&v);
            let red = lll_reduce(raw.clone());
            prop_assert!(is_lll_reduced(&red));
            prop_assert_eq!(minor_content(&red, 4), BigInt::one());
            let span = Subspace::from_basis(4, red.iter().map(|x| VectorQ::from_bigints(x)).collect()).unwrap();
            prop_assert_eq!(span.plucker(), v.plucker());
        }
    }
}
