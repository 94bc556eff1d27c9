//! Closed-form height bounds, one constructor per statement. Factors are
//! kept in the order the formulas are usually written; small integer
//! powers are folded into a single rational factor.

use crate::certificate::BoundFormula;
use crate::exact::{int, pow_rational, rat, Rational};
use crate::heights::FieldContext;
use crate::siegel::siegel_field_constant;

/// `k^{k+1} |Δ|^{1/d} ((D+2)/2)^{2km+1} (𝒩𝔥)^{2k}`.
pub fn system_zero(k: u64, big_d: u64, m: u64, n_terms: u64, hh: &Rational, ctx: &FieldContext) -> BoundFormula {
    let (k, big_d, m) = (k as i64, big_d as i64, m as i64);
    let nh = int(n_terms as i64) * hh;
    BoundFormula::new("k^(k+1) |disc|^(1/d) ((D+2)/2)^(2km+1) (N hF)^(2k)")
        .param("k", int(k))
        .param("D", int(big_d))
        .param("m", int(m))
        .param("N", int(n_terms as i64))
        .param("hF", hh.clone())
        .factor(pow_rational(&int(k), k + 1))
        .term_unless_one(ctx.disc(), rat(1, ctx.degree as i64))
        .term(rat(big_d + 2, 2), int(2 * k * m + 1))
        .factor(pow_rational(&nh, 2 * k))
}

/// `𝒩(F) ((m(2g−1)+2)/2)^{g+1} h(F)`; for constant `P` (`m = 0`) this is
/// `𝒩(F) h(F)` and is rendered that way.
pub fn avoiding_zero(n_terms: u64, g: u64, m: u64, h_f: &Rational) -> BoundFormula {
    let (g, m) = (g as i64, m as i64);
    let b = BoundFormula::new(if m == 0 {
        "N(F) h(F)"
    } else {
        "N(F) ((m(2g-1)+2)/2)^(g+1) h(F)"
    })
    .param("N(F)", int(n_terms as i64))
    .param("g", int(g))
    .param("m", int(m))
    .param("h(F)", h_f.clone())
    .factor(int(n_terms as i64));
    let b = if m == 0 { b } else { b.term(rat(m * (2 * g - 1) + 2, 2), int(g + 1)) };
    b.factor(h_f.clone())
}

/// `C^{(m+1)/2d} 𝒩(F)^{3/2} h(F) 𝓗(V)^{m+1}` with `C = (2/π)^{2r₂}|Δ|`.
pub fn line_zero(m: u64, n_terms: u64, h_f: &Rational, hcal_sq: &Rational, ctx: &FieldContext) -> BoundFormula {
    let m = m as i64;
    BoundFormula::new("C^((m+1)/2d) N(F)^(3/2) h(F) Hcal(V)^(m+1)")
        .param("m", int(m))
        .param("N(F)", int(n_terms as i64))
        .param("h(F)", h_f.clone())
        .param("Hcal(V)^2", hcal_sq.clone())
        .term_unless_one(siegel_field_constant(ctx), rat(m + 1, 2 * ctx.degree as i64))
        .term(int(n_terms as i64), rat(3, 2))
        .factor(h_f.clone())
        .term(hcal_sq.clone(), rat(m + 1, 2))
}

/// `√2 m |Δ|^{(m+1)/2d} 𝓗(V)`.
pub fn sparse_zero(m: u64, hcal_sq: &Rational, ctx: &FieldContext) -> BoundFormula {
    let m = m as i64;
    BoundFormula::new("sqrt(2) m |disc|^((m+1)/2d) Hcal(V)")
        .param("m", int(m))
        .param("Hcal(V)^2", hcal_sq.clone())
        .term(int(2), rat(1, 2))
        .factor(int(m))
        .term_unless_one(ctx.disc(), rat(m + 1, 2 * ctx.degree as i64))
        .term(hcal_sq.clone(), rat(1, 2))
}

/// `C^{1/2d} (√n 𝓗(V) H(F))^{1/(m−1)}`.
pub fn linear_form_free(n: u64, m: u64, hcal_sq: &Rational, proj_f: &Rational, ctx: &FieldContext) -> BoundFormula {
    let (n, m) = (n as i64, m as i64);
    let e = m - 1;
    BoundFormula::new("C^(1/2d) (sqrt(n) Hcal(V) H(F))^(1/(m-1))")
        .param("n", int(n))
        .param("m", int(m))
        .param("Hcal(V)^2", hcal_sq.clone())
        .param("H(F)", proj_f.clone())
        .term_unless_one(siegel_field_constant(ctx), rat(1, 2 * ctx.degree as i64))
        .term(int(n), rat(1, 2 * e))
        .term(hcal_sq.clone(), rat(1, 2 * e))
        .term(proj_f.clone(), rat(1, e))
}

/// `√n C^{(m−1)/2d} 𝓗(V) H(F)`.
pub fn linear_form_avoiding(n: u64, m: u64, hcal_sq: &Rational, proj_f: &Rational, ctx: &FieldContext) -> BoundFormula {
    let (n, m) = (n as i64, m as i64);
    BoundFormula::new("sqrt(n) C^((m-1)/2d) Hcal(V) H(F)")
        .param("n", int(n))
        .param("m", int(m))
        .param("Hcal(V)^2", hcal_sq.clone())
        .param("H(F)", proj_f.clone())
        .term(int(n), rat(1, 2))
        .term_unless_one(siegel_field_constant(ctx), rat(m - 1, 2 * ctx.degree as i64))
        .term(hcal_sq.clone(), rat(1, 2))
        .factor(proj_f.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{exact_compare, ExactReal};
    use std::cmp::Ordering;

    #[test]
    fn worked_system_bound() {
        let b = system_zero(1, 2, 2, 2, &int(1), &FieldContext::rationals());
        assert_eq!(b.expression(), "1 * 2^{5} * 4");
        assert_eq!(b.value.as_rational(), Some(int(128)));
        assert_eq!(b.value.to_fixed(12), "128.000000000000");
    }

    #[test]
    fn worked_avoiding_bound() {
        let b = avoiding_zero(2, 2, 1, &int(1));
        assert_eq!(b.value.as_rational(), Some(rat(125, 4)));
        assert_eq!(b.expression(), "2 * (5/2)^{3} * 1");
        let b = avoiding_zero(2, 1, 0, &int(1));
        assert_eq!(b.expression(), "2 * 1");
    }

    #[test]
    fn worked_line_bound() {
        let b = line_zero(1, 2, &int(2), &int(5), &FieldContext::rationals());
        let expect = ExactReal::sqrt_of(int(2)).mul(&ExactReal::from_int(20));
        assert_eq!(exact_compare(&b.value, &expect).unwrap(), Ordering::Equal);
    }

    #[test]
    fn worked_linear_form_bound() {
        let b = linear_form_free(3, 3, &int(1), &int(1), &FieldContext::rationals());
        assert_eq!(exact_compare(&b.value, &ExactReal::pow_of(int(3), rat(1, 4))).unwrap(), Ordering::Equal);
    }
}
