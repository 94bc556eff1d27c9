//! Zeros of multilinear forms, globally and on subspaces, and of linear
//! forms on subspaces.

use num_traits::Zero;

use crate::certificate::{BoundFormula, Certificate, Claim, Witness};
use crate::enumerate::SearchOptions;
use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::heights::{height_projective, FieldContext, VectorQ};
use crate::linalg::{intersect, kernel_of_rows, subspace_height_squared, Subspace};
use crate::polynomial::{is_multilinear_form, MultiPoly};
use crate::siegel::{small_basis, sparse_basis};

use super::bounds;

/// The inductive construction: peel off the first variable whose
/// complement part is nonzero, recurse, and put 0 in its slot.
fn inductive_zero(f: &MultiPoly, g: u32, trace: &mut Vec<String>, labels: &[usize]) -> Vec<Rational> {
    let n = f.nvars();
    if n == 2 {
        if g == 1 {
            let (a, b) = (f.coefficient(&[1, 0]), f.coefficient(&[0, 1]));
            trace.push(format!("base: {a}*x{} + {b}*x{} vanishes at (-b, a)", labels[0] + 1, labels[1] + 1));
            return vec![-b, a];
        }
        trace.push(format!("base: monomial in x{}, x{} vanishes at (0, 1)", labels[0] + 1, labels[1] + 1));
        return vec![Rational::zero(), int(1)];
    }
    if n as u32 == g {
        trace.push("every variable occurs in every term: last unit vector".into());
        let mut z = vec![Rational::zero(); n];
        z[n - 1] = int(1);
        return z;
    }
    for i in 0..n {
        let (_, f2) = f.split_linear(i).expect("multilinear");
        if f2.is_zero() {
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        trace.push(format!("x{} := 0, recurse on {f2}", labels[i] + 1));
        let sub_labels: Vec<usize> = keep.iter().map(|&j| labels[j]).collect();
        let mut z = inductive_zero(&f2.restrict_to(&keep), g, trace, &sub_labels);
        z.insert(i, Rational::zero());
        return z;
    }
    unreachable!("n > g leaves a variable missing from some term")
}

/// Nonzero zero of a multilinear form with `H(z) ≤ H(F)`.
pub fn multilinear_zero(f: &MultiPoly) -> Result<Certificate> {
    if f.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let g = is_multilinear_form(f).ok_or(Error::NotMultilinear)?;
    let n = f.nvars();
    if g == 0 || n < 2 {
        return Err(Error::NotMultilinear);
    }
    let mut trace = Vec::new();
    let labels: Vec<usize> = (0..n).collect();
    let z = VectorQ(inductive_zero(f, g, &mut trace, &labels));
    let hf = f.projective_height()?;
    let bound = BoundFormula::new("H(F)").param("H(F)", hf.as_rational().expect("rational")).factor(
        hf.as_rational().expect("rational"),
    );
    let mut cert = Certificate::new(Claim::MultilinearZero, Witness::Vector(z.clone()));
    cert = cert.step(format!("(n, g) = ({n}, {g})"));
    for t in trace {
        cert = cert.step(t);
    }
    let cert = cert
        .step(format!("z = {z}"))
        .with_bound(height_projective(&z)?, bound)?
        .fact("F(z) = 0", f.evaluate(&z)?.is_zero());
    // the base case ax1 + bx2 is the one zero with full support
    Ok(if n > 2 && n as u32 > g { cert.fact("z has at most n-1 nonzero coordinates", z.support_size() < n) } else { cert })
}

/// Sparse basis of `V` made of zeros of `F`, or with `P` the first of them
/// off `Z(P)`; each under `√2 m |Δ|^{(m+1)/2d} 𝓗(V)`.
pub fn multilinear_zero_on_subspace(
    f: &MultiPoly,
    v: &Subspace,
    p: Option<&MultiPoly>,
    ctx: &FieldContext,
    opts: &SearchOptions,
) -> Result<Certificate> {
    if f.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let g = is_multilinear_form(f).ok_or(Error::NotMultilinear)? as usize;
    let n = f.nvars();
    if v.ambient_dim() != n || p.is_some_and(|p| p.nvars() != n) {
        return Err(Error::DimMismatch("F, V and P must share the ambient dimension".into()));
    }
    let m = v.dim();
    if m == 0 {
        return Err(Error::EmptySubspace);
    }
    if m + g <= n + 1 || g <= 1 {
        return Err(Error::HypothesisFailed(format!("need m + g - 1 > n and g > 1 (m = {m}, g = {g}, n = {n})")));
    }
    let (basis, _) = sparse_basis(v, ctx, opts)?;
    let bound = bounds::sparse_zero(m as u64, &subspace_height_squared(v), ctx);
    let values: Vec<Rational> = basis.iter().map(|x| f.evaluate(x)).collect::<Result<_>>()?;
    let head = Certificate::new(Claim::MultilinearSubspaceZero, Witness::None)
        .step(format!("(n, g) = ({n}, {g}), dim V = {m}, sparsity {}", n - m + 1));
    match p {
        None => {
            let worst = basis.iter().max_by_key(|x| height_projective(x).ok().and_then(|h| h.as_rational())).expect("m >= 1");
            let mut cert = Certificate { witness: Witness::Basis(basis.clone()), ..head }
                .step(format!("sparse basis: {}", render(&basis)))
                .with_bound(height_projective(worst)?, bound.clone())?;
            for (i, (x, fx)) in basis.iter().zip(&values).enumerate() {
                cert = cert
                    .check_le(format!("H(x_{}) <= bound", i + 1), height_projective(x)?.value, bound.clone())?
                    .fact(format!("F(x_{}) = 0", i + 1), fx.is_zero());
            }
            let spans = Subspace::span(n, &basis).map(|s| s.dim() == m && s.plucker() == v.plucker()).unwrap_or(false);
            Ok(cert.fact("vectors are independent and span V", spans))
        }
        Some(p) => {
            let idx = basis
                .iter()
                .position(|x| p.evaluate(x).map(|y| !y.is_zero()).unwrap_or(false))
                .ok_or_else(|| {
                    Error::AvoidanceFailed("P vanishes on the whole sparse basis; D(P, V) < m may fail".into())
                })?;
            let z = basis[idx].clone();
            Ok(Certificate { witness: Witness::Vector(z.clone()), ..head }
                .step(format!("sparse basis: {}", render(&basis)))
                .step(format!("first basis vector off Z(P): x_{} = {z}", idx + 1))
                .with_bound(height_projective(&z)?, bound)?
                .fact("F(z) = 0", values[idx].is_zero())
                .fact("P(z) != 0", !p.evaluate(&z)?.is_zero()))
        }
    }
}

fn render(vs: &[VectorQ]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

/// Nonzero zero of a linear form on `V` (dim `m ≥ 2`), certified against
/// `C^{1/2d} (√n 𝓗(V) H(F))^{1/(m−1)}`, or with `P` against
/// `√n C^{(m−1)/2d} 𝓗(V) H(F)`.
pub fn linear_form_zero_on_subspace(
    f: &MultiPoly,
    v: &Subspace,
    p: Option<&MultiPoly>,
    ctx: &FieldContext,
    opts: &SearchOptions,
) -> Result<Certificate> {
    if f.is_zero() {
        return Err(Error::ZeroPoly);
    }
    if is_multilinear_form(f) != Some(1) {
        return Err(Error::NotLinearForm);
    }
    let n = f.nvars();
    if v.ambient_dim() != n || p.is_some_and(|p| p.nvars() != n) {
        return Err(Error::DimMismatch("F, V and P must share the ambient dimension".into()));
    }
    let m = v.dim();
    if m < 2 {
        return Err(Error::HypothesisFailed(format!("need dim V >= 2, got {m}")));
    }
    let coeffs = VectorQ((0..n).map(|i| f.coefficient(&unit_exponent(n, i))).collect());
    let u = kernel_of_rows(std::slice::from_ref(&coeffs), n);
    let w = intersect(v, &u)?;
    let (mut basis, _) = small_basis(&w, ctx, opts)?;
    basis.sort_by_key(|x| height_projective(x).ok().and_then(|h| h.as_rational()));
    let hcal_sq = subspace_height_squared(v);
    let proj_f = f.projective_height()?.as_rational().expect("rational");
    let mut head = Certificate::new(Claim::LinearFormSubspaceZero, Witness::None)
        .step(format!("U(F) = kernel of {coeffs}"))
        .step(format!("dim V = {m}, dim(V ∩ U(F)) = {}", w.dim()))
        .step(format!("small basis of V ∩ U(F): {}", render(&basis)));
    if w.dim() == m {
        head = head.note("DEGENERATE: V lies inside U(F), every vector of V is a zero");
    }
    let (z, bound) = match p {
        None => (basis[0].clone(), bounds::linear_form_free(n as u64, m as u64, &hcal_sq, &proj_f, ctx)),
        Some(p) => {
            let z = basis
                .iter()
                .find(|x| p.evaluate(x).map(|y| !y.is_zero()).unwrap_or(false))
                .cloned()
                .ok_or_else(|| Error::AvoidanceFailed("P vanishes on every basis vector of V ∩ U(F)".into()))?;
            (z, bounds::linear_form_avoiding(n as u64, m as u64, &hcal_sq, &proj_f, ctx))
        }
    };
    let mut cert = Certificate { witness: Witness::Vector(z.clone()), ..head }
        .step(format!("z = {z}"))
        .with_bound(height_projective(&z)?, bound)?
        .fact("F(z) = 0", f.evaluate(&z)?.is_zero())
        .fact("z lies in V", v.contains(&z));
    if let Some(p) = p {
        cert = cert.fact("P(z) != 0", !p.evaluate(&z)?.is_zero());
    }
    Ok(cert)
}

fn unit_exponent(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kernel;
    use crate::linalg::MatrixQ;
    use crate::polynomial::parse_poly;
    use proptest::prelude::*;

    fn poly(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, n).unwrap()
    }

    fn vq(x: &[i64]) -> VectorQ {
        VectorQ::from_ints(x)
    }

    fn q() -> FieldContext {
        FieldContext::rationals()
    }

    #[test]
    fn inductive_examples() {
        let c = multilinear_zero(&poly("3*x1 + 5*x2", 2)).unwrap();
        assert_eq!(c.witness_vector().unwrap(), &vq(&[-5, 3]));
        assert!(c.is_satisfied());
        let c = multilinear_zero(&poly("7*x1*x2", 2)).unwrap();
        assert_eq!(c.witness_vector().unwrap(), &vq(&[0, 1]));
        let c = multilinear_zero(&poly("x1*x2 + x1*x3 + x2*x3", 3)).unwrap();
        assert_eq!(c.witness_vector().unwrap(), &vq(&[0, 0, 1]));
        assert!(c.is_satisfied());
    }

    #[test]
    fn inductive_rejects() {
        assert_eq!(multilinear_zero(&poly("x1^2", 2)).unwrap_err().code(), "NOT_MULTILINEAR");
        assert_eq!(multilinear_zero(&poly("x1 + x2*x3", 3)).unwrap_err().code(), "NOT_MULTILINEAR");
        assert_eq!(multilinear_zero(&MultiPoly::zero(2)).unwrap_err().code(), "ZERO_POLY");
    }

    #[test]
    fn cubic_on_plane() {
        let v = kernel(&MatrixQ::from_int_rows(&[&[1, 1, 1]]).unwrap());
        let c = multilinear_zero_on_subspace(&poly("x1*x2*x3", 3), &v, None, &q(), &SearchOptions::default()).unwrap();
        let b = c.witness_basis().unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|x| x.support_size() <= 2));
        assert!(c.is_satisfied());
        let c = multilinear_zero_on_subspace(&poly("x1*x2*x3", 3), &v, Some(&poly("x1", 3)), &q(), &SearchOptions::default())
            .unwrap();
        assert_eq!(c.witness_vector().unwrap(), &vq(&[1, -1, 0]));
        assert!(c.is_satisfied());
    }

    #[test]
    fn product_on_plane() {
        let c = multilinear_zero_on_subspace(&poly("x1*x2", 2), &Subspace::full(2), None, &q(), &SearchOptions::default())
            .unwrap();
        assert_eq!(c.witness_basis().unwrap(), &[vq(&[1, 0]), vq(&[0, 1])]);
        let e = multilinear_zero_on_subspace(&poly("x1*x2", 3), &Subspace::coordinate(3, &[0, 1]), None, &q(), &SearchOptions::default())
            .unwrap_err();
        assert_eq!(e.code(), "HYPOTHESIS_FAILED");
    }

    #[test]
    fn linear_form_examples() {
        let o = SearchOptions::default();
        let c = linear_form_zero_on_subspace(&poly("x1 + x2 + x3", 3), &Subspace::full(3), None, &q(), &o).unwrap();
        let z = c.witness_vector().unwrap();
        assert_eq!(height_projective(z).unwrap().as_rational(), Some(int(1)));
        assert!(c.is_satisfied());
        let v = Subspace::span(2, &[vq(&[1, 1]), vq(&[1, -1])]).unwrap();
        let c = linear_form_zero_on_subspace(&poly("x1 - x2", 2), &v, None, &q(), &o).unwrap();
        assert_eq!(c.witness_vector().unwrap(), &vq(&[1, 1]));
        let v = Subspace::coordinate(3, &[1, 2]);
        let c = linear_form_zero_on_subspace(&poly("x1", 3), &v, None, &q(), &o).unwrap();
        assert_eq!(c.witness_vector().unwrap(), &vq(&[0, 1, 0]));
        assert!(c.notes.iter().any(|s| s.starts_with("DEGENERATE")));
        assert!(c.is_satisfied());
    }

    proptest! {
        #[test]
        fn inductive_zero_is_small(coeffs in proptest::collection::vec(-20i64..=20, 6)) {
            // quadratic multilinear form in 4 variables
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let terms = pairs.iter().zip(&coeffs).map(|(&(i, j), &c)| {
                let mut e = vec![0u32; 4];
                e[i] = 1;
                e[j] = 1;
                (e, int(c))
            });
            let f = MultiPoly::from_terms(4, terms);
            prop_assume!(!f.is_zero());
            let c = multilinear_zero(&f).unwrap();
            prop_assert!(c.is_satisfied());
            prop_assert!(c.witness_vector().unwrap().support_size() <= 3);
        }
    }
}
