//! Zeros of a single polynomial: one linear variable with an avoidance
//! polynomial, and restriction to a rational line.

use num_traits::{Signed, Zero};

use crate::certificate::{BoundFormula, Certificate, Claim, Witness};
use crate::enumerate::SearchOptions;
use crate::error::{Error, Result};
use crate::exact::{int, rat, ExactReal, Rational};
use crate::heights::{height_inhomogeneous, inhomogeneous_rational, FieldContext, VectorQ};
use crate::linalg::{subspace_height_squared, MatrixQ, Subspace};
use crate::polynomial::{rational_roots, substitute_linear, MultiPoly};
use crate::siegel::{first_nonvanishing, small_basis};

use super::bounds;

/// `Q(x′) = P(x′, −F₂/F₁) F₁^m` with `m = deg P`, in the ring of `F`.
fn cleared_avoidance(p: &MultiPoly, j: usize, f1: &MultiPoly, f2: &MultiPoly) -> MultiPoly {
    let n = p.nvars();
    let m = p.degree();
    let neg_f2 = f2.neg();
    let mut q = MultiPoly::zero(n);
    for (e, c) in p.terms() {
        let ej = e[j];
        let mut rest = e.to_vec();
        rest[j] = 0;
        let mono = MultiPoly::from_terms(n, [(rest, c.clone())]);
        q = q.add(&mono.mul(&neg_f2.pow(ej)).mul(&f1.pow(m - ej)));
    }
    q
}

/// Zero of `F = x_j F₁ + F₂` outside `Z(P)`, certified against
/// `𝒩(F) ((m(2g−1)+2)/2)^{g+1} h(F)`, or `𝒩(F) h(F)` for constant `P`.
pub fn solve_single_avoiding(f: &MultiPoly, j: usize, p: &MultiPoly, opts: &SearchOptions) -> Result<Certificate> {
    let n = f.nvars();
    if p.nvars() != n {
        return Err(Error::DimMismatch(format!("F has {n} variables, P has {}", p.nvars())));
    }
    if j >= n {
        return Err(Error::DimMismatch(format!("x{} is not among the {n} variables", j + 1)));
    }
    if f.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let (f1, f2) = f.split_linear(j).ok_or(Error::NotLinearInVar(j + 1))?;
    if f1.is_zero() {
        return Err(Error::NotLinearInVar(j + 1));
    }
    let (g, m) = (f.degree() as u64, p.degree() as u64);
    let q = cleared_avoidance(p, j, &f1, &f2);
    let qf1 = q.mul(&f1);
    if qf1.is_zero() {
        return Err(Error::AvoidanceImpossible("Q F1 vanishes identically, so P vanishes on every zero of F".into()));
    }
    let rest: Vec<usize> = (0..n).filter(|&i| i != j).collect();
    let radius = opts.radius((qf1.degree() as u64 + 2) / 2);
    let (shell, zr) = first_nonvanishing(&qf1.restrict_to(&rest), radius).ok_or(Error::SearchExhausted { radius })?;
    let mut z = VectorQ::zeros(n);
    for (&i, &x) in rest.iter().zip(&zr) {
        z.0[i] = int(x);
    }
    let zj = -(f2.evaluate(&z)? / f1.evaluate(&z)?);
    z.0[j] = zj.clone();

    let (fz, pz) = (f.evaluate(&z)?, p.evaluate(&z)?);
    let bound = bounds::avoiding_zero(f.num_terms() as u64, g, m, &f.height());
    let mut cert = Certificate::new(Claim::AvoidingZero, Witness::Vector(z.clone()))
        .step(format!("F = x{} * ({f1}) + ({f2})", j + 1))
        .step(format!("Q = {q}"))
        .step(format!("deg(Q F1) = {}, search radius {radius}", qf1.degree()))
        .step(format!("z' = {} in shell {shell}, z{} = {zj}", VectorQ::from_ints(&zr), j + 1))
        .with_bound(height_inhomogeneous(&z), bound)?
        .fact("F(z) = 0", fz.is_zero())
        .fact("P(z) != 0", !pz.is_zero());
    // the lemma guarantees a point within (deg Q + 2)/2; F1 raises the degree
    let theorem_radius = (m * (2 * g).saturating_sub(1) + 2) / 2;
    if shell > theorem_radius {
        cert = cert.note(format!("z' lies beyond sup-norm {theorem_radius}"));
    }
    Ok(cert)
}

fn rational_height(a: &Rational) -> Rational {
    inhomogeneous_rational(&VectorQ(vec![a.clone()]))
}

/// Zero of `F` on the line `V` avoiding `P`, certified against
/// `C^{(m+1)/2d} 𝒩(F)^{3/2} h(F) 𝓗(V)^{m+1}` with `m = deg P`.
pub fn solve_on_line(
    f: &MultiPoly,
    p: &MultiPoly,
    v: &Subspace,
    ctx: &FieldContext,
    opts: &SearchOptions,
) -> Result<Certificate> {
    let n = f.nvars();
    if p.nvars() != n || v.ambient_dim() != n {
        return Err(Error::DimMismatch(format!(
            "F has {n} variables, P has {}, V lives in dimension {}",
            p.nvars(),
            v.ambient_dim()
        )));
    }
    if v.dim() != 1 {
        return Err(Error::DimMismatch(format!("V must be a line, got dimension {}", v.dim())));
    }
    if f.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let (basis, _) = small_basis(v, ctx, opts)?;
    let y = basis[0].clone();
    let (fv, _) = substitute_linear(f, &MatrixQ::from_columns(std::slice::from_ref(&y))?)?;
    if fv.is_zero() {
        return Err(Error::NotApplicable("F vanishes identically on V".into()));
    }
    let roots = rational_roots(&fv)?;
    let mut candidates: Vec<Rational> = roots.iter().filter(|a| !a.is_zero()).cloned().collect();
    candidates.dedup();
    candidates.sort_by(|a, b| rational_height(a).cmp(&rational_height(b)).then(b.is_positive().cmp(&a.is_positive())));
    if candidates.is_empty() {
        return Err(Error::NoRationalZero(format!("F(t y) = {fv} has no nonzero rational root")));
    }
    let alpha = candidates
        .iter()
        .find(|a| p.evaluate(&y.scale(a)).map(|x| !x.is_zero()).unwrap_or(false))
        .cloned()
        .ok_or_else(|| Error::AvoidanceFailed("P vanishes at every rational zero of F on V".into()))?;
    let z = y.scale(&alpha);

    let m = p.degree() as u64;
    let nf = f.num_terms() as i64;
    let hcal_sq = subspace_height_squared(v);
    let root_product: Rational = roots.iter().map(rational_height).product();
    let (fz, pz) = (f.evaluate(&z)?, p.evaluate(&z)?);
    let rendered: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
    Certificate::new(Claim::LineZero, Witness::Vector(z.clone()))
        .step(format!("y = {y}"))
        .step(format!("F(t y) = {fv}"))
        .step(format!("rational roots: {}", rendered.join(", ")))
        .step(format!("alpha = {alpha}, z = {z}"))
        .with_bound(height_inhomogeneous(&z), bounds::line_zero(m, nf as u64, &f.height(), &hcal_sq, ctx))?
        .fact("F(z) = 0", fz.is_zero())
        .fact("P(z) != 0", !pz.is_zero())
        .fact("z lies in V", v.contains(&z))
        .check_le(
            "prod h(alpha_i) <= sqrt(N(F)) h(F_V)",
            ExactReal::from_rational(root_product),
            BoundFormula::new("sqrt(N(F)) h(F_V)").term(int(nf), rat(1, 2)).factor(fv.height()),
        )?
        .check_le(
            "h(F_V) <= N(F) h(F) h(y)^deg F",
            ExactReal::from_rational(fv.height()),
            BoundFormula::new("N(F) h(F) h(y)^deg F")
                .factor(int(nf))
                .factor(f.height())
                .term(inhomogeneous_rational(&y), int(f.degree() as i64)),
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    fn poly(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, n).unwrap()
    }

    fn line(x: &[i64]) -> Subspace {
        Subspace::span(x.len(), &[VectorQ::from_ints(x)]).unwrap()
    }

    #[test]
    fn avoiding_first_variable() {
        let c = solve_single_avoiding(&poly("x3 + x1*x2", 3), 2, &poly("x1", 3), &SearchOptions::default()).unwrap();
        assert_eq!(c.witness_vector().unwrap(), &VectorQ::from_ints(&[-1, -1, -1]));
        assert_eq!(c.bound.as_ref().unwrap().value.as_rational(), Some(rat(125, 4)));
        assert!(c.is_satisfied());
    }

    #[test]
    fn avoiding_with_cleared_denominator() {
        let c = solve_single_avoiding(&poly("x1*x2 - 1", 2), 0, &poly("x1 - 1", 2), &SearchOptions::default()).unwrap();
        assert_eq!(c.witness_vector().unwrap(), &VectorQ::from_ints(&[-1, -1]));
        assert!(c.is_satisfied());
    }

    #[test]
    fn constant_avoidance_uses_short_bound() {
        let c = solve_single_avoiding(&poly("x1 + x2", 2), 0, &poly("1", 2), &SearchOptions::default()).unwrap();
        let z = c.witness_vector().unwrap();
        assert_eq!(z, &VectorQ::from_ints(&[0, 0]));
        assert_eq!(c.bound.as_ref().unwrap().expression(), "2 * 1");
        assert!(c.is_satisfied());
    }

    #[test]
    fn avoiding_errors() {
        let o = SearchOptions::default();
        let e = solve_single_avoiding(&poly("x1^2 + x2", 2), 0, &poly("1", 2), &o).unwrap_err();
        assert_eq!(e.code(), "NOT_LINEAR_IN_VAR");
        // P = F vanishes on all of Z(F)
        let e = solve_single_avoiding(&poly("x1*x2 - 1", 2), 0, &poly("x1*x2 - 1", 2), &o).unwrap_err();
        assert_eq!(e.code(), "AVOIDANCE_IMPOSSIBLE");
    }

    #[test]
    fn line_trace() {
        let q = FieldContext::rationals();
        let c = solve_on_line(&poly("x1*x2 - 2", 2), &poly("x1 + 1", 2), &line(&[1, 2]), &q, &SearchOptions::default())
            .unwrap();
        assert_eq!(c.witness_vector().unwrap(), &VectorQ::from_ints(&[1, 2]));
        let expect = ExactReal::sqrt_of(int(2)).mul(&ExactReal::from_int(20));
        let b = &c.bound.as_ref().unwrap().value;
        assert_eq!(crate::exact::exact_compare(b, &expect).unwrap(), std::cmp::Ordering::Equal);
        assert!(c.is_satisfied());
    }

    #[test]
    fn line_errors() {
        let q = FieldContext::rationals();
        let o = SearchOptions::default();
        let e = solve_on_line(&poly("x1 - x2", 2), &poly("1", 2), &line(&[1, 1]), &q, &o).unwrap_err();
        assert_eq!(e.code(), "NOT_APPLICABLE");
        let e = solve_on_line(&poly("x1^2 - 4*x2^2", 2), &poly("1", 2), &line(&[1, 1]), &q, &o).unwrap_err();
        assert_eq!(e.code(), "NO_RATIONAL_ZERO");
        let e = solve_on_line(&poly("x1*x2 - 2", 2), &poly("x1^2 - 1", 2), &line(&[1, 2]), &q, &o).unwrap_err();
        assert_eq!(e.code(), "AVOIDANCE_FAILED");
    }
}
