//! Hand-traced instances through the public API.

use std::cmp::Ordering;

use heightforge::exact::{int, rat};
use heightforge::heights::{height_euclidean, height_projective};
use heightforge::linalg::kernel_of_rows;
use heightforge::polynomial::parse_poly;
use heightforge::siegel::{small_basis, sparse_basis};
use heightforge::solvers::{multilinear_zero, solve_on_line, solve_single_avoiding, solve_system, SystemProblem};
use heightforge::{exact_compare, ExactReal, FieldContext, MultiPoly, SearchOptions, Subspace, VectorQ};

fn poly(s: &str, n: usize) -> MultiPoly {
    parse_poly(s, n).unwrap()
}

#[test]
fn hyperbola_system() {
    let c = solve_system(&SystemProblem::new(vec![poly("x1*x2 - 1", 2)], vec![0]), &SearchOptions::default()).unwrap();
    assert_eq!(c.witness_vector(), Some(&VectorQ::from_ints(&[-1, -1])));
    let b = c.bound.as_ref().unwrap();
    assert_eq!(b.expression(), "1 * 2^{5} * 4");
    assert_eq!(b.value.as_rational(), Some(int(128)));
    assert!(c.is_satisfied());
}

#[test]
fn avoiding_zero_three_variables() {
    let c = solve_single_avoiding(&poly("x3 + x1*x2", 3), 2, &poly("x1", 3), &SearchOptions::default()).unwrap();
    assert_eq!(c.witness_vector(), Some(&VectorQ::from_ints(&[-1, -1, -1])));
    assert_eq!(c.bound.unwrap().value.as_rational(), Some(rat(125, 4)));
}

#[test]
fn line_zero_bound_is_twenty_root_two() {
    let v = Subspace::span(2, &[VectorQ::from_ints(&[1, 2])]).unwrap();
    let c = solve_on_line(&poly("x1*x2 - 2", 2), &poly("x1 + 1", 2), &v, &FieldContext::rationals(), &SearchOptions::default())
        .unwrap();
    let expect = ExactReal::sqrt_of(int(2)).mul(&ExactReal::from_int(20));
    assert_eq!(exact_compare(&c.bound.unwrap().value, &expect).unwrap(), Ordering::Equal);
}

#[test]
fn sparse_basis_of_sum_zero_hyperplane() {
    let v = kernel_of_rows(&[VectorQ::from_ints(&[1, 1, 1, 1])], 4);
    let (basis, cert) = sparse_basis(&v, &FieldContext::rationals(), &SearchOptions::default()).unwrap();
    assert_eq!(basis.len(), 3);
    assert!(basis.iter().all(|x| x.support_size() <= 2 && x.0.iter().sum::<heightforge::Rational>() == int(0)));
    assert!(cert.is_satisfied());
}

#[test]
fn small_basis_product_against_subspace_height() {
    let v = Subspace::span(3, &[VectorQ::from_ints(&[1, 2, 3]), VectorQ::from_ints(&[4, 5, 6])]).unwrap();
    let (basis, cert) = small_basis(&v, &FieldContext::rationals(), &SearchOptions::default()).unwrap();
    assert_eq!(basis.len(), 2);
    assert_eq!(cert.bound.unwrap().value, ExactReal::sqrt_of(int(6)));
}

#[test]
fn multilinear_zero_stays_below_form_height() {
    let f = poly("3*x1*x2 - 2*x1*x4 + 5*x3*x4 + x2*x3", 4);
    let c = multilinear_zero(&f).unwrap();
    let z = c.witness_vector().unwrap();
    assert!(f.evaluate(z).unwrap() == int(0));
    assert!(height_projective(z).unwrap().as_rational().unwrap() <= int(5));
}

#[test]
fn pythagorean_heights() {
    let v = VectorQ::from_ints(&[3, 4]);
    assert_eq!(height_projective(&v).unwrap().as_rational(), Some(int(4)));
    assert_eq!(height_euclidean(&v).unwrap().as_rational(), Some(int(5)));
}
