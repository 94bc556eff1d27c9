//! Simultaneous zeros of a system that is jointly linear in the variables
//! `x_I`.
//!
//! Writing `F_l = Σⱼ x_{iⱼ} F_{l,j}(x_{I′}) + F_{l,k+1}(x_{I′})` turns the
//! system into `𝓕(x_{I′}) x_I = f(x_{I′})`. A point `z_{I′}` where
//! `det 𝓕` does not vanish fixes `z_I` by Cramer's rule; the nonvanishing
//! search keeps `h(z_{I′})` small and the height of the inverse keeps
//! `h(z_I)` small.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::{BoundFormula, Certificate, Claim, Witness};
use crate::enumerate::SearchOptions;
use crate::error::{Error, Result};
use crate::exact::{int, rat, ExactReal, Rational};
use crate::heights::{height_inhomogeneous, inhomogeneous_rational, FieldContext, VectorQ};
use crate::linalg::{combinations, MatrixQ};
use crate::polynomial::{decompose_i_separated, poly_matrix_det, MultiPoly};
use crate::siegel::first_nonvanishing;

use super::bounds;

/// `F_1 … F_k` in `n` variables, each linear jointly in `x_I` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemProblem {
    pub polys: Vec<MultiPoly>,
    pub index_set: Vec<usize>,
    pub ctx: FieldContext,
}

impl SystemProblem {
    pub fn new(polys: Vec<MultiPoly>, index_set: Vec<usize>) -> Self {
        SystemProblem { polys, index_set, ctx: FieldContext::rationals() }
    }
}

/// Points tried before falling back to symbolic rank confirmation.
const RANK_PROBES: usize = 3;
const PROBE_RANGE: i64 = 1000;

/// Entries of `𝓕` at an integer point of the `I′` ring.
fn evaluate_block(m: &[Vec<MultiPoly>], rows: &[usize], cols: &[usize], z: &[i64]) -> MatrixQ {
    let data = rows.iter().flat_map(|&r| cols.iter().map(move |&c| m[r][c].evaluate_ints(z))).collect();
    MatrixQ::new(rows.len(), cols.len(), data).expect("shape matches")
}

fn sub_det(m: &[Vec<MultiPoly>], rows: &[usize], cols: &[usize]) -> Result<MultiPoly> {
    let block: Vec<Vec<MultiPoly>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
    poly_matrix_det(&block)
}

/// First `r×r` minor (rows, then columns, lexicographic) that is not
/// identically zero.
fn first_nonzero_minor(m: &[Vec<MultiPoly>], r: usize) -> Result<Option<(Vec<usize>, Vec<usize>, MultiPoly)>> {
    let k_rows = m.len();
    let k_cols = m[0].len();
    for rows in combinations(k_rows, r) {
        for cols in combinations(k_cols, r) {
            let d = sub_det(m, &rows, &cols)?;
            if !d.is_zero() {
                return Ok(Some((rows, cols, d)));
            }
        }
    }
    Ok(None)
}

/// Generic rank of `𝓕`: random evaluations give a lower bound, symbolic
/// minors confirm it and raise it when a probe was unlucky.
fn generic_rank(m: &[Vec<MultiPoly>], nvars: usize) -> Result<usize> {
    let k = m.len();
    let all: Vec<usize> = (0..k).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut r = 0;
    for _ in 0..RANK_PROBES {
        let z: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-PROBE_RANGE..=PROBE_RANGE)).collect();
        r = r.max(evaluate_block(m, &all, &all, &z).rank());
        if r == k {
            return Ok(k);
        }
    }
    while r < k && first_nonzero_minor(m, r + 1)?.is_some() {
        r += 1;
    }
    Ok(r)
}

/// Simultaneous zero with the certificate
/// `h(z) ≤ k^{k+1} |Δ|^{1/d} ((D+2)/2)^{2km+1} (𝒩𝔥)^{2k}`.
pub fn solve_system(p: &SystemProblem, opts: &SearchOptions) -> Result<Certificate> {
    let k = p.polys.len();
    if k == 0 {
        return Err(Error::DimMismatch("empty system".into()));
    }
    let n = p.polys[0].nvars();
    if p.polys.iter().any(|f| f.nvars() != n) {
        return Err(Error::DimMismatch("polynomials use different variable counts".into()));
    }
    if p.index_set.len() != k {
        return Err(Error::DimMismatch(format!("{k} polynomials but {} separated variables", p.index_set.len())));
    }
    if k >= n {
        return Err(Error::HypothesisFailed(format!("need fewer separated variables than variables (k = {k}, n = {n})")));
    }
    if p.polys.iter().all(MultiPoly::is_zero) {
        return Err(Error::ZeroPoly);
    }
    let forms = p
        .polys
        .iter()
        .map(|f| decompose_i_separated(f, &p.index_set))
        .collect::<Result<Vec<_>>>()?;
    let index_set = forms[0].index_set.clone();
    let complement = forms[0].complement.clone();
    let nc = complement.len();
    let fmat: Vec<Vec<MultiPoly>> = forms.iter().map(|s| s.coefficients.clone()).collect();
    let rhs: Vec<MultiPoly> = forms.iter().map(|s| s.tail.neg()).collect();

    let big_d: u64 = p.polys.iter().map(|f| f.degree() as u64).sum();
    let m = p.polys.iter().map(MultiPoly::degree).max().unwrap_or(0) as u64;
    let nn = p.polys.iter().map(MultiPoly::num_terms).max().unwrap_or(0) as u64;
    let hh = p.polys.iter().map(MultiPoly::height).max().expect("nonempty");
    let radius = opts.radius((big_d + 2) / 2);

    let one_based = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
    let mut cert_steps = vec![
        format!("I = {{{}}}, I' = {{{}}}", one_based(&index_set), one_based(&complement)),
        format!("D = {big_d}, m = {m}, N = {nn}, h = {hh}"),
    ];
    let mut notes = Vec::new();

    let r = generic_rank(&fmat, nc)?;
    let (rows, cols, det) = if r == 0 {
        (Vec::new(), Vec::new(), MultiPoly::one(nc))
    } else if r == k {
        let all: Vec<usize> = (0..k).collect();
        (all.clone(), all, poly_matrix_det(&fmat)?)
    } else {
        first_nonzero_minor(&fmat, r)?.ok_or_else(|| Error::Internal("rank minor vanished".into()))?
    };
    if r == k {
        cert_steps.push(format!("P = det F(x_I') = {det}"));
    } else {
        cert_steps.push(format!(
            "det F(x_I') is identically 0; generic rank {r}, minor rows {{{}}} columns {{{}}}, det = {det}",
            one_based(&rows),
            one_based(&cols)
        ));
        let dropped: Vec<usize> = (0..k).filter(|c| !cols.contains(c)).map(|c| index_set[c]).collect();
        notes.push(format!("rank-deficient system: x_{{{}}} set to 0", one_based(&dropped)));
    }

    let (shell, z_c) = first_nonvanishing(&det, radius).ok_or(Error::SearchExhausted { radius })?;
    cert_steps.push(format!("z_I' = {} (shell {shell}, radius {radius})", VectorQ::from_ints(&z_c)));

    let mut z_i = vec![Rational::zero(); k];
    if r > 0 {
        let a = evaluate_block(&fmat, &rows, &cols, &z_c);
        let b = VectorQ(rows.iter().map(|&l| rhs[l].evaluate_ints(&z_c)).collect());
        let sol = a.inverse()?.mul_vec(&b)?;
        for (&c, x) in cols.iter().zip(sol.0) {
            z_i[c] = x;
        }
    }
    let z_i = VectorQ(z_i);
    cert_steps.push(format!("z_I = {z_i}"));

    let mut z = VectorQ::zeros(n);
    for (&i, x) in index_set.iter().zip(&z_i.0) {
        z.0[i] = x.clone();
    }
    for (&i, &x) in complement.iter().zip(&z_c) {
        z.0[i] = int(x);
    }

    // rank of [𝓕 | f] against rank of 𝓕 at the witness
    let all: Vec<usize> = (0..k).collect();
    let at = evaluate_block(&fmat, &all, &all, &z_c);
    let mut aug_rows = Vec::with_capacity(k);
    for l in 0..k {
        let mut row = at.row(l).0;
        row.push(rhs[l].evaluate_ints(&z_c));
        aug_rows.push(row);
    }
    let (rank_f, rank_aug) = (at.rank(), MatrixQ::from_rows(&aug_rows)?.rank());
    let values: Vec<Rational> = p.polys.iter().map(|f| f.evaluate(&z)).collect::<Result<_>>()?;
    if rank_aug != rank_f || values.iter().any(|v| !v.is_zero()) {
        return Err(Error::RankHypothesisFailed(format!(
            "at z_I' = {} the coefficient matrix has rank {rank_f} and the augmented matrix rank {rank_aug}",
            VectorQ::from_ints(&z_c)
        )));
    }
    cert_steps.push(format!("z = {z}"));

    let z_c_q = VectorQ::from_ints(&z_c);
    let (h_i, h_c) = (inhomogeneous_rational(&z_i), inhomogeneous_rational(&z_c_q));
    let mut cert = Certificate::new(Claim::SystemZero, Witness::Vector(z.clone()));
    for s in cert_steps {
        cert = cert.step(s);
    }
    for s in notes {
        cert = cert.note(s);
    }
    cert = cert.with_bound(height_inhomogeneous(&z), bounds::system_zero(k as u64, big_d, m, nn, &hh, &p.ctx))?;
    for (l, v) in values.iter().enumerate() {
        cert = cert.fact(format!("F{}(z) = 0", l + 1), v.is_zero());
    }
    cert = cert
        .fact("rank [F | f] = rank F at z_I'", rank_aug == rank_f)
        .check_le(
            "h(z_I') <= (D+2)/2",
            ExactReal::from_rational(h_c.clone()),
            BoundFormula::new("(D+2)/2").param("D", int(big_d as i64)).factor(rat(big_d as i64 + 2, 2)),
        )?
        .check_le(
            "h(z) <= h(z_I) h(z_I')",
            ExactReal::from_rational(inhomogeneous_rational(&z)),
            BoundFormula::new("h(z_I) h(z_I')").factor(h_i).factor(h_c),
        )?;
    if det.is_constant() && det.constant_term().is_one() {
        cert = cert.note("coefficient determinant is 1");
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    fn system(polys: &[&str], n: usize, idx: &[usize]) -> SystemProblem {
        SystemProblem::new(polys.iter().map(|s| parse_poly(s, n).unwrap()).collect(), idx.to_vec())
    }

    #[test]
    fn hyperbola_trace() {
        let c = solve_system(&system(&["x1*x2 - 1"], 2, &[0]), &SearchOptions::default()).unwrap();
        assert_eq!(c.witness_vector().unwrap(), &VectorQ::from_ints(&[-1, -1]));
        let b = c.bound.as_ref().unwrap();
        assert_eq!(b.expression(), "1 * 2^{5} * 4");
        assert_eq!(b.value.as_rational(), Some(int(128)));
        assert!(c.is_satisfied());
    }

    #[test]
    fn unit_determinant_pair() {
        let c = solve_system(&system(&["x1 + x2*x3", "x2 + x3"], 3, &[0, 1]), &SearchOptions::default()).unwrap();
        assert_eq!(c.witness_vector().unwrap(), &VectorQ::from_ints(&[0, 0, 0]));
        assert!(c.is_satisfied());
        assert_eq!(c.bound.as_ref().unwrap().param_value("D"), Some(&int(3)));
    }

    #[test]
    fn affine_single_variable() {
        let c = solve_system(&system(&["x1 + 1"], 2, &[0]), &SearchOptions::default()).unwrap();
        assert_eq!(c.witness_vector().unwrap(), &VectorQ::from_ints(&[-1, 0]));
        assert!(c.is_satisfied());
    }

    #[test]
    fn rank_deficient_reduction() {
        // second equation is twice the first
        let c = solve_system(&system(&["x1*x3 + x2 - x3", "2*x1*x3 + 2*x2 - 2*x3"], 3, &[0, 1]), &SearchOptions::default())
            .unwrap();
        assert!(c.is_satisfied());
        assert!(c.notes.iter().any(|s| s.contains("rank-deficient")));
    }

    #[test]
    fn inconsistent_system_is_rejected() {
        let e = solve_system(&system(&["x1*x3 + x2", "x1*x3 + x2 - 1"], 3, &[0, 1]), &SearchOptions::default()).unwrap_err();
        assert_eq!(e.code(), "RANK_HYPOTHESIS_FAILED");
    }

    #[test]
    fn shape_errors() {
        let e = solve_system(&system(&["x1^2 + x2"], 2, &[0]), &SearchOptions::default()).unwrap_err();
        assert_eq!(e.code(), "NOT_I_SEPARATED");
        let e = solve_system(&system(&["x1 + x2", "x1 - x2"], 2, &[0, 1]), &SearchOptions::default()).unwrap_err();
        assert_eq!(e.code(), "HYPOTHESIS_FAILED");
    }
}
