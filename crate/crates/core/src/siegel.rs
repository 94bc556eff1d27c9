//! Small-height points and bases of rational subspaces.
//!
//! * [`nonvanishing_witness`]: first integer point in shell order where a
//!   polynomial does not vanish.
//! * [`small_basis`]: LLL-reduced basis of `V ∩ ℤⁿ`, checked against
//!   `∏ h(xᵢ) ≤ 𝓗(V)`, with enumeration fallbacks.
//! * [`avoid_subspaces`]: a small vector of `V` outside finitely many
//!   subspaces.
//! * [`sparse_basis`]: a basis of `(n−m+1)`-sparse vectors built from the
//!   coordinate subspaces `ℍ_I`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::certificate::{BoundFormula, Certificate, Claim, Witness};
use crate::enumerate::{points_up_to, SearchOptions, Shell};
use crate::error::{Error, Result};
use crate::exact::{int, rat, ExactReal, Rational};
use crate::heights::{height_inhomogeneous, inhomogeneous_rational, FieldContext, VectorQ};
use crate::lattice::{minor_content, reduced_lattice_basis};
use crate::linalg::{combinations, intersect, rref, subspace_height_squared, Subspace};
use crate::polynomial::MultiPoly;

/// `span{eᵢ : i ∈ members}`; members are 0-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSubset {
    pub ambient: usize,
    pub members: Vec<usize>,
}

impl IndexSubset {
    pub fn new(ambient: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&i| i >= ambient) {
            return Err(Error::DimMismatch(format!("index outside 1..{ambient}")));
        }
        Ok(IndexSubset { ambient, members })
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::coordinate(self.ambient, &self.members)
    }
}

/// `(2/π)^{2r₂} |Δ|` with `2/π` replaced by the smaller `226/355`, so that
/// a bound built from it is never larger than the true one.
pub fn siegel_field_constant(ctx: &FieldContext) -> Rational {
    let two_over_pi_low = rat(226, 355);
    let mut c = ctx.disc();
    for _ in 0..2 * ctx.complex_pairs {
        c *= &two_over_pi_low;
    }
    c
}

fn hcal_term(b: BoundFormula, v: &Subspace) -> BoundFormula {
    b.term(subspace_height_squared(v), rat(1, 2))
}

/// First point of `ℤⁿ` in shell order with `P(z) ≠ 0`, and the check
/// `h(z) ≤ (m+2)/2`.
pub fn nonvanishing_witness(p: &MultiPoly, opts: &SearchOptions) -> Result<(VectorQ, Certificate)> {
    if p.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let m = p.degree() as i64;
    let radius = opts.radius(((m + 2) / 2) as u64);
    let (shell, z) = first_nonvanishing(p, radius).ok_or(Error::SearchExhausted { radius })?;
    let z = VectorQ::from_ints(&z);
    let bound = BoundFormula::new("(m+2)/2").param("m", int(m)).factor(rat(m + 2, 2));
    let value = p.evaluate(&z)?;
    let cert = Certificate::new(Claim::Nonvanishing, Witness::Vector(z.clone()))
        .step(format!("degree m = {m}, search radius {radius}"))
        .step(format!("first nonvanishing point in shell {shell}: z = {z}, P(z) = {value}"))
        .with_bound(height_inhomogeneous(&z), bound)?
        .fact("P(z) != 0", !value.is_zero());
    Ok((z, cert))
}

/// Shell-ordered scan for a point where `p` does not vanish.
pub fn first_nonvanishing(p: &MultiPoly, radius: u64) -> Option<(u64, Vec<i64>)> {
    points_up_to(p.nvars(), radius).find(|(_, z)| !p.evaluate_ints(z).is_zero())
}

fn integral_sup(v: &VectorQ) -> Rational {
    inhomogeneous_rational(v)
}

fn product_of_heights(basis: &[VectorQ]) -> Rational {
    basis.iter().map(integral_sup).product()
}

fn small_basis_bound(v: &Subspace, ctx: &FieldContext) -> BoundFormula {
    let m = v.dim() as i64;
    let c = siegel_field_constant(ctx);
    let b = BoundFormula::new("((2/pi)^(2 r2) |disc|)^(m/2d) Hcal(V)")
        .param("m", int(m))
        .param("Hcal(V)^2", subspace_height_squared(v))
        .term_unless_one(c, rat(m, 2 * ctx.degree as i64));
    hcal_term(b, v)
}

fn fits(lhs: &Rational, bound: &BoundFormula) -> Result<bool> {
    Ok(crate::exact::exact_compare(&ExactReal::from_rational(lhs.clone()), &bound.value)? != std::cmp::Ordering::Greater)
}

/// Integer vectors of `V ∩ ℤⁿ` grouped by sup-norm, produced through the
/// pivot coordinates of the reduced row echelon basis of `V`.
struct LatticePoints {
    rows: Vec<VectorQ>,
    pivots: Vec<usize>,
    next_shell: u64,
    buckets: BTreeMap<u64, Vec<Vec<BigInt>>>,
}

impl LatticePoints {
    fn new(v: &Subspace) -> Self {
        let (rows, pivots) = rref(v.basis(), v.ambient_dim());
        let rows = rows.into_iter().take(pivots.len()).collect();
        LatticePoints { rows, pivots, next_shell: 1, buckets: BTreeMap::new() }
    }

    /// Nonzero lattice vectors of sup-norm exactly `s`, lexicographically.
    fn with_sup(&mut self, s: u64) -> Vec<Vec<BigInt>> {
        while self.next_shell <= s {
            let t = self.next_shell;
            for c in Shell::new(self.pivots.len(), t) {
                let mut x = VectorQ::zeros(self.rows[0].dim());
                for (ci, r) in c.iter().zip(&self.rows) {
                    if *ci != 0 {
                        x = x.add(&r.scale(&int(*ci)));
                    }
                }
                if !x.is_integral() {
                    continue;
                }
                let ints: Vec<BigInt> = x.0.iter().map(|q| q.numer().clone()).collect();
                let sup = ints.iter().map(|q| q.abs()).max().and_then(|q| q.to_u64()).unwrap_or(u64::MAX);
                self.buckets.entry(sup).or_default().push(ints);
            }
            self.next_shell += 1;
        }
        let mut out = self.buckets.remove(&s).unwrap_or_default();
        out.sort();
        out
    }
}

fn is_primitive_set(set: &[Vec<BigInt>], n: usize) -> bool {
    minor_content(set, n).is_one()
}

fn independent(set: &[VectorQ], n: usize) -> bool {
    Subspace::span(n, set).map(|s| s.dim() == set.len()).unwrap_or(false)
}

/// Greedy basis from lattice vectors in increasing sup-norm. With
/// `keep_primitive` the chosen vectors always extend to a lattice basis.
fn greedy_basis(v: &Subspace, radius: u64, keep_primitive: bool) -> Option<Vec<VectorQ>> {
    let n = v.ambient_dim();
    let m = v.dim();
    let mut pts = LatticePoints::new(v);
    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
    for s in 1..=radius {
        for x in pts.with_sup(s) {
            let mut trial = chosen.clone();
            trial.push(x);
            let as_q: Vec<VectorQ> = trial.iter().map(|y| VectorQ::from_bigints(y)).collect();
            if !independent(&as_q, n) {
                continue;
            }
            if keep_primitive && !is_primitive_set(&trial, n) {
                continue;
            }
            chosen = trial;
            if chosen.len() == m {
                return Some(chosen.iter().map(|y| VectorQ::from_bigints(y).canonical()).collect());
            }
        }
    }
    None
}

fn sort_by_height(basis: &mut [VectorQ]) {
    basis.sort_by_key(integral_sup);
}

/// Small basis of `V` with the certificate `∏ h(xᵢ) ≤ C^{m/2d} 𝓗(V)`.
pub fn small_basis(v: &Subspace, ctx: &FieldContext, opts: &SearchOptions) -> Result<(Vec<VectorQ>, Certificate)> {
    if v.dim() == 0 {
        return Err(Error::EmptySubspace);
    }
    let n = v.ambient_dim();
    let bound = small_basis_bound(v, ctx);
    let mut trace = Vec::new();
    let mut basis = reduced_lattice_basis(v);
    sort_by_height(&mut basis);
    trace.push(format!("LLL basis of V ∩ Z^{n}: {}", render_list(&basis)));
    let mut method = "lll";
    if !fits(&product_of_heights(&basis), &bound)? {
        let hsq = subspace_height_squared(v);
        // successive minima never exceed 𝓗(V)
        let derived = hsq.to_integer().sqrt().to_u64().unwrap_or(u64::MAX);
        let radius = opts.radius(derived.max(1));
        trace.push(format!("LLL product exceeds the bound; enumerating lattice vectors up to sup-norm {radius}"));
        let mut found = None;
        if let Some(b) = greedy_basis(v, radius, true) {
            if fits(&product_of_heights(&b), &bound)? {
                found = Some((b, "greedy lattice basis"));
            }
        }
        if found.is_none() {
            if let Some(b) = greedy_basis(v, radius, false) {
                found = Some((b, "successive minima"));
            }
        }
        let (b, how) = found.ok_or(Error::SearchExhausted { radius })?;
        basis = b;
        sort_by_height(&mut basis);
        method = how;
        trace.push(format!("{how} basis: {}", render_list(&basis)));
    }
    let product = product_of_heights(&basis);
    let ints: Vec<Vec<BigInt>> = basis.iter().map(|x| x.primitive().expect("nonzero")).collect();
    let spans = Subspace::span(n, &basis).map(|s| s.plucker() == v.plucker()).unwrap_or(false);
    let mut cert = Certificate::new(Claim::SmallBasis, Witness::Basis(basis.clone()));
    for t in trace {
        cert = cert.step(t);
    }
    cert = cert
        .step(format!("method: {method}"))
        .check_le("prod h(x_i) <= bound", ExactReal::from_rational(product), bound.clone())?;
    cert.bound = Some(bound);
    cert = cert.fact("basis spans V", spans);
    if minor_content(&ints, n).is_one() {
        cert = cert.note("basis of the saturated lattice V ∩ Z^n");
    } else {
        cert = cert.note("basis of V generating a sublattice of V ∩ Z^n");
    }
    Ok((basis, cert))
}

fn render_list(vs: &[VectorQ]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn avoid_bound(v: &Subspace, k: usize, ctx: &FieldContext) -> BoundFormula {
    let m = v.dim() as i64;
    let d = ctx.degree as i64;
    let b = BoundFormula::new("sqrt(2) m |disc|^((m+1)/2d) k^(1/d) Hcal(V)")
        .param("m", int(m))
        .param("k", int(k as i64))
        .param("Hcal(V)^2", subspace_height_squared(v))
        .term(int(2), rat(1, 2))
        .factor(int(m))
        .term_unless_one(ctx.disc(), rat(m + 1, 2 * d))
        .term_unless_one(int(k as i64), rat(1, d));
    hcal_term(b, v)
}

/// A vector of `V` in none of the `Uᵢ`, certified against
/// `h(x) ≤ √2 m |Δ|^{(m+1)/2d} k^{1/d} 𝓗(V)`.
pub fn avoid_subspaces(
    v: &Subspace,
    us: &[Subspace],
    ctx: &FieldContext,
    opts: &SearchOptions,
) -> Result<(VectorQ, Certificate)> {
    if v.dim() == 0 {
        return Err(Error::EmptySubspace);
    }
    for (i, u) in us.iter().enumerate() {
        if u.ambient_dim() != v.ambient_dim() {
            return Err(Error::DimMismatch(format!("U{} lives in a different ambient space", i + 1)));
        }
        if u.contains_subspace(v) {
            return Err(Error::HypothesisViolated(format!("V is contained in U{}", i + 1)));
        }
    }
    let avoids = |x: &VectorQ| us.iter().all(|u| !u.contains(x));
    let mut basis = reduced_lattice_basis(v);
    sort_by_height(&mut basis);
    let k = us.len();
    let mut found = basis.iter().find(|x| avoids(x)).cloned().map(|x| (x, "lattice basis vector".to_string()));
    if found.is_none() {
        // a product of k linear forms on the coefficient space does not
        // vanish somewhere with coefficients of sup-norm ⌊(k+2)/2⌋
        let radius = opts.radius(((k + 2) / 2) as u64);
        'outer: for s in 1..=radius {
            for c in Shell::new(basis.len(), s) {
                let mut x = VectorQ::zeros(v.ambient_dim());
                for (ci, b) in c.iter().zip(&basis) {
                    x = x.add(&b.scale(&int(*ci)));
                }
                if !x.is_zero() && avoids(&x) {
                    found = Some((x.canonical(), format!("coefficients {c:?} in shell {s}")));
                    break 'outer;
                }
            }
        }
        if found.is_none() {
            return Err(Error::SearchExhausted { radius });
        }
    }
    let (x, how) = found.expect("set above");
    let bound = avoid_bound(v, k, ctx);
    let cert = Certificate::new(Claim::Avoidance, Witness::Vector(x.clone()))
        .step(format!("dim V = {}, avoiding {k} subspaces", v.dim()))
        .step(format!("witness from {how}: {x}"))
        .with_bound(height_inhomogeneous(&x), bound)?
        .fact("x lies in V", v.contains(&x))
        .fact("x avoids every U_i", avoids(&x));
    Ok((x, cert))
}

fn sparse_bound(v: &Subspace, ctx: &FieldContext) -> BoundFormula {
    let m = v.dim() as i64;
    let b = BoundFormula::new("sqrt(2) m |disc|^((m+1)/2d) Hcal(V)")
        .param("m", int(m))
        .param("Hcal(V)^2", subspace_height_squared(v))
        .term(int(2), rat(1, 2))
        .factor(int(m))
        .term_unless_one(ctx.disc(), rat(m + 1, 2 * ctx.degree as i64));
    hcal_term(b, v)
}

/// Basis of `(n−m+1)`-sparse vectors, each with
/// `h(xᵢ) ≤ √2 m |Δ|^{(m+1)/2d} 𝓗(V)`.
pub fn sparse_basis(v: &Subspace, ctx: &FieldContext, opts: &SearchOptions) -> Result<(Vec<VectorQ>, Certificate)> {
    let (n, m) = (v.ambient_dim(), v.dim());
    if m == 0 {
        return Err(Error::EmptySubspace);
    }
    let t = n - m + 1;
    let bound = sparse_bound(v, ctx);
    let mut chosen: Vec<VectorQ> = Vec::new();
    let mut span = Subspace::zero(n);
    let mut trace = vec![format!("n = {n}, m = {m}, sparsity t = {t}")];
    for members in combinations(n, t) {
        if chosen.len() == m {
            break;
        }
        let h_i = Subspace::coordinate(n, &members);
        let w = intersect(v, &h_i)?;
        if w.dim() == 0 || span.contains_subspace(&w) {
            continue;
        }
        let (candidates, _) = small_basis(&w, ctx, opts)?;
        let label: Vec<String> = members.iter().map(|i| (i + 1).to_string()).collect();
        let pick = candidates.iter().find(|x| !span.contains(x)).cloned();
        let x = match pick {
            Some(x) if fits(&integral_sup(&x), &bound)? => x,
            _ => {
                let (x, _) = avoid_subspaces(&w, std::slice::from_ref(&span), ctx, opts)?;
                x
            }
        };
        trace.push(format!("I = {{{}}}: dim(V ∩ H_I) = {}, picked {x}", label.join(","), w.dim()));
        span = span.extend(&x)?;
        chosen.push(x);
    }
    if chosen.len() < m {
        return Err(Error::Internal(format!("found only {} of {m} sparse basis vectors", chosen.len())));
    }
    let worst = chosen.iter().max_by_key(|x| integral_sup(x)).cloned().expect("m >= 1");
    let mut cert = Certificate::new(Claim::SparseBasis, Witness::Basis(chosen.clone()));
    for line in trace {
        cert = cert.step(line);
    }
    cert = cert.with_bound(height_inhomogeneous(&worst), bound.clone())?;
    for (i, x) in chosen.iter().enumerate() {
        cert = cert
            .check_le(format!("h(x_{}) <= bound", i + 1), ExactReal::from_rational(integral_sup(x)), bound.clone())?
            .fact(format!("x_{} is {t}-sparse", i + 1), x.support_size() <= t);
    }
    let spans = Subspace::span(n, &chosen).map(|s| s.plucker() == v.plucker()).unwrap_or(false);
    cert = cert.fact("vectors are independent and span V", spans && independent(&chosen, n));
    Ok((chosen, cert))
}

/// `∏ h(xᵢ)` for a basis, exposed for oracles.
pub fn height_product(basis: &[VectorQ]) -> Rational {
    product_of_heights(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kernel, MatrixQ};
    use crate::polynomial::parse_poly;
    use proptest::prelude::*;

    fn vq(x: &[i64]) -> VectorQ {
        VectorQ::from_ints(x)
    }

    fn q() -> FieldContext {
        FieldContext::rationals()
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn nonvanishing_examples() {
        let (z, c) = nonvanishing_witness(&parse_poly("x1^2 - 1", 1).unwrap(), &opts()).unwrap();
        assert_eq!(z, vq(&[0]));
        assert!(c.is_satisfied());
        let (z, c) = nonvanishing_witness(&parse_poly("x1", 1).unwrap(), &opts()).unwrap();
        assert_eq!(z, vq(&[-1]));
        assert_eq!(c.bound.as_ref().unwrap().value.as_rational(), Some(rat(3, 2)));
        let (z, c) = nonvanishing_witness(&parse_poly("x1*x2*(x1 - 1)", 2).unwrap(), &opts()).unwrap();
        assert_eq!(z, vq(&[-1, -1]));
        assert!(c.is_satisfied());
        assert_eq!(
            nonvanishing_witness(&MultiPoly::zero(2), &opts()).unwrap_err(),
            Error::ZeroPoly
        );
    }

    #[test]
    fn small_basis_examples() {
        let (b, c) = small_basis(&Subspace::full(2), &q(), &opts()).unwrap();
        assert_eq!(b, vec![vq(&[1, 0]), vq(&[0, 1])]);
        assert!(c.is_satisfied());

        let v = Subspace::from_basis(3, vec![vq(&[1, 0, 1]), vq(&[0, 1, 1])]).unwrap();
        let (b, c) = small_basis(&v, &q(), &opts()).unwrap();
        assert!(b.iter().all(|x| integral_sup(x) == int(1)));
        assert!(c.is_satisfied());

        let v = kernel(&MatrixQ::from_int_rows(&[&[3, 1]]).unwrap());
        let (b, c) = small_basis(&v, &q(), &opts()).unwrap();
        assert_eq!(b, vec![vq(&[1, -3])]);
        assert!(c.is_satisfied());

        assert_eq!(small_basis(&Subspace::zero(2), &q(), &opts()).unwrap_err(), Error::EmptySubspace);
    }

    #[test]
    fn avoidance_examples() {
        let e1 = Subspace::coordinate(2, &[0]);
        let e2 = Subspace::coordinate(2, &[1]);
        let (x, c) = avoid_subspaces(&Subspace::full(2), std::slice::from_ref(&e1), &q(), &opts()).unwrap();
        assert_eq!(x, vq(&[0, 1]));
        assert!(c.is_satisfied());
        let (x, c) = avoid_subspaces(&Subspace::full(2), &[e1.clone(), e2], &q(), &opts()).unwrap();
        assert_eq!(x, vq(&[1, 1]));
        assert!(c.is_satisfied());

        let v = Subspace::from_basis(3, vec![vq(&[1, 0, 1]), vq(&[0, 1, 1])]).unwrap();
        let u = Subspace::from_basis(3, vec![vq(&[1, 0, 1])]).unwrap();
        let (x, c) = avoid_subspaces(&v, std::slice::from_ref(&u), &q(), &opts()).unwrap();
        assert!(v.contains(&x) && !u.contains(&x));
        assert_eq!(integral_sup(&x), int(1));
        assert!(c.is_satisfied());

        assert!(matches!(
            avoid_subspaces(&u, &[v], &q(), &opts()),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn sparse_examples() {
        let v = kernel(&MatrixQ::from_int_rows(&[&[1, 1, 1, 1]]).unwrap());
        let (b, c) = sparse_basis(&v, &q(), &opts()).unwrap();
        assert_eq!(b, vec![vq(&[1, -1, 0, 0]), vq(&[1, 0, -1, 0]), vq(&[1, 0, 0, -1])]);
        assert!(c.is_satisfied());
        // √2·3·2
        let expect = ExactReal::sqrt_of(int(2)).mul(&ExactReal::from_int(6));
        assert_eq!(crate::exact::exact_compare(&c.bound.as_ref().unwrap().value, &expect).unwrap(), std::cmp::Ordering::Equal);

        let (b, c) = sparse_basis(&Subspace::full(3), &q(), &opts()).unwrap();
        assert_eq!(b, vec![vq(&[1, 0, 0]), vq(&[0, 1, 0]), vq(&[0, 0, 1])]);
        assert!(c.is_satisfied());

        let v = Subspace::from_basis(3, vec![vq(&[1, 0, 1]), vq(&[0, 1, 1])]).unwrap();
        let (b, c) = sparse_basis(&v, &q(), &opts()).unwrap();
        assert_eq!(b, vec![vq(&[1, -1, 0]), vq(&[1, 0, 1])]);
        assert!(b.iter().all(|x| x.support_size() <= 2));
        assert!(c.is_satisfied());
    }

    fn arb_subspace() -> impl Strategy<Value = Subspace> {
        (2usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-10i64..=10, n), 1..=n).prop_filter_map(
                "nonzero span",
                move |gens| {
                    let v = Subspace::span(n, &gens.iter().map(|g| vq(g)).collect::<Vec<_>>()).ok()?;
                    (v.dim() > 0).then_some(v)
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn small_basis_meets_the_bound(v in arb_subspace()) {
            let (b, c) = small_basis(&v, &q(), &opts()).unwrap();
            prop_assert!(c.is_satisfied(), "{:?}", c);
            prop_assert_eq!(b.len(), v.dim());
        }

        #[test]
        fn sparse_basis_is_sparse_and_small(v in arb_subspace()) {
            let (b, c) = sparse_basis(&v, &q(), &opts()).unwrap();
            prop_assert!(c.is_satisfied());
            let t = v.ambient_dim() - v.dim() + 1;
            prop_assert!(b.iter().all(|x| x.support_size() <= t && v.contains(x)));
        }

        #[test]
        fn nonvanishing_is_first_in_order(coeffs in proptest::collection::vec((proptest::collection::vec(0u32..=3, 2), -9i64..=9), 1..5)) {
            let p = MultiPoly::from_terms(2, coeffs.into_iter().map(|(e, c)| (e, int(c))));
            prop_assume!(!p.is_zero());
            let (z, c) = nonvanishing_witness(&p, &opts()).unwrap();
            prop_assert!(c.is_satisfied());
            for (_, y) in points_up_to(2, 3) {
                let yq = VectorQ::from_ints(&y);
                if yq == z { break; }
                prop_assert!(p.evaluate(&yq).unwrap().is_zero());
            }
        }
    }
}
