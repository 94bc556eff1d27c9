//! Property suites behind the acceptance criteria. Each criterion draws a
//! seeded random corpus, runs the library on it and compares the result
//! exactly against independent computations from [`oracle`].
//!
//! The seed comes from `HEIGHTFORGE_SEED` when set.

pub mod gen;
pub mod oracle;

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;

use crate::certificate::Certificate;
use crate::enumerate::SearchOptions;
use crate::error::Error;
use crate::exact::{exact_compare, int, pow_rational, rat, ExactReal, Rational};
use crate::heights::{projective_height_via_places, verify_product_formula, FieldContext, VectorQ};
use crate::lattice::minor_content;
use crate::linalg::{
    basis_product_certificate, intersect_with_certificate, inverse_with_certificate, kernel,
    kernel_with_certificate, subspace_height_squared, MatrixQ, Subspace,
};
use crate::polynomial::{poly_image_height_certificate, poly_matrix_det, substitute_linear, MultiPoly};
use crate::siegel::{nonvanishing_witness, small_basis, sparse_basis};
use crate::solvers::{multilinear_zero, multilinear_zero_on_subspace, solve_single_avoiding, solve_system, SystemProblem};

use oracle::{affine_height, euclidean_height_sq, sup_height, ZeroQuery};

pub const DEFAULT_SEED: u64 = 0x4846_5345_4544;
pub const SEED_VAR: &str = "HEIGHTFORGE_SEED";

/// Criteria checked inside the library; the CLI corpus is the eleventh.
pub const LIBRARY_CRITERIA: [u32; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

/// `HEIGHTFORGE_SEED` (decimal or `0x` hex), else [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| {
            let s = s.trim();
            match s.strip_prefix("0x") {
                Some(h) => u64::from_str_radix(h, 16).ok(),
                None => s.parse().ok(),
            }
        })
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// First few failure descriptions.
    pub examples: Vec<String>,
    pub elapsed: Duration,
    pub limit: Duration,
    pub detail: String,
}

impl CriterionReport {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0 && self.within_limit()
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "criterion {:>2} {} | {} | {} cases, {} failures | {:.2}s (limit {}s)",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.cases,
            self.failures,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        );
        if !self.detail.is_empty() {
            s.push_str(" | ");
            s.push_str(&self.detail);
        }
        if !self.within_limit() {
            s.push_str(" | runtime limit exceeded");
        }
        s
    }
}

const MAX_EXAMPLES: usize = 5;

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
    examples: Vec<String>,
    detail: Vec<String>,
}

impl Tally {
    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    /// Records a failure that belongs to the case already counted.
    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(what);
        }
    }
}

fn le(a: &ExactReal, b: &ExactReal) -> bool {
    exact_compare(a, b).map(|o| o != std::cmp::Ordering::Greater).unwrap_or(false)
}

/// Runs one library criterion; `None` for ids outside 1..=10.
pub fn run_criterion(id: u32, seed: u64) -> Option<CriterionReport> {
    let (title, limit_secs, f): (&'static str, u64, fn(u64) -> Tally) = match id {
        1 => ("height axioms and product formula", 10, height_axioms),
        2 => ("duality of subspace heights", 10, duality),
        3 => ("inequality lemmas", 60, inequality_lemmas),
        4 => ("nonvanishing witness", 30, nonvanishing),
        5 => ("small basis", 60, small_bases),
        6 => ("sparse basis", 60, sparse_bases),
        7 => ("system solver", 120, systems),
        8 => ("single polynomial avoiding P", 60, single_avoiding),
        9 => ("multilinear zeros", 60, multilinear),
        10 => ("brute-force cross-check", 600, brute_force_cross_check),
        _ => return None,
    };
    let start = Instant::now();
    let t = f(seed);
    Some(CriterionReport {
        id,
        title,
        cases: t.cases,
        failures: t.failures,
        examples: t.examples,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(limit_secs),
        detail: t.detail.join(", "),
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    LIBRARY_CRITERIA.iter().filter_map(|&id| run_criterion(id, seed)).collect()
}

fn height_axioms(seed: u64) -> Tally {
    let mut rng = gen::stream(seed, 1);
    let mut t = Tally::default();
    let mut done = 0;
    while done < 1000 {
        let n = rng.gen_range(1..=6);
        let v = gen::rational_vector(&mut rng, n, 100);
        if v.is_zero() {
            continue;
        }
        done += 1;
        let h = sup_height(&v.0);
        let hsq = euclidean_height_sq(&v.0);
        let places = projective_height_via_places(&v);
        let lib = crate::heights::projective_rational(&v);
        let ok = &h * &h <= hsq
            && hsq <= int(n as i64) * &h * &h
            && h >= Rational::one()
            && places.as_ref() == Ok(&h)
            && lib.as_ref() == Ok(&h);
        t.case(ok, || format!("height axioms fail for {v}"));
    }
    for _ in 0..500 {
        let x = gen::nonzero_rational(&mut rng, 1_000_000);
        let ok = matches!(verify_product_formula(&x), Ok((true, _)));
        t.case(ok, || format!("product formula fails for {x}"));
    }
    t
}

/// `Σ minor² = det(AᵀA)` for an integer basis matrix `A`, so the primitive
/// Plücker vector satisfies `𝓗(V)² · content² = det(AᵀA)`.
fn cauchy_binet_ok(a: &MatrixQ, v: &Subspace) -> bool {
    let gram = a.transpose().mul(a).and_then(|g| g.determinant());
    let Ok(gram) = gram else { return false };
    let ints: Vec<Vec<num_bigint::BigInt>> =
        a.columns().iter().map(|c| c.0.iter().map(|x| x.to_integer()).collect()).collect();
    let content = minor_content(&ints, a.rows());
    let c = Rational::from_integer(content);
    subspace_height_squared(v) * &c * &c == gram
}

fn duality(seed: u64) -> Tally {
    let mut rng = gen::stream(seed, 2);
    let mut t = Tally::default();
    let mut done = 0;
    while done < 200 {
        let n = rng.gen_range(2..=6);
        let r = rng.gen_range(1..=n);
        let a = gen::int_matrix(&mut rng, n, r, 9);
        if a.rank() < r {
            continue;
        }
        done += 1;
        let v = Subspace::from_matrix_columns(&a).expect("full column rank");
        let w = kernel(&a.transpose());
        let cert = kernel_with_certificate(&a.transpose()).map(|(_, c)| c.is_satisfied()).unwrap_or(false);
        let ok = subspace_height_squared(&v) == subspace_height_squared(&w) && cert && cauchy_binet_ok(&a, &v);
        t.case(ok, || format!("duality fails for column space of {a}"));
    }
    t
}

fn satisfied(c: crate::error::Result<Certificate>) -> bool {
    c.map(|c| c.is_satisfied()).unwrap_or(false)
}

fn inequality_lemmas(seed: u64) -> Tally {
    let mut rng = gen::stream(seed, 3);
    let mut t = Tally::default();
    let q = FieldContext::rationals();
    for _ in 0..200 {
        let n = rng.gen_range(2..=5);
        let g1 = rng.gen_range(1..=n);
        let g2 = rng.gen_range(1..=n);
        let u1 = gen::subspace(&mut rng, n, g1, 6);
        let u2 = gen::subspace(&mut rng, n, g2, 6);
        let ok = intersect_with_certificate(&u1, &u2)
            .map(|(w, c)| c.is_satisfied() && u1.contains_subspace(&w) && u2.contains_subspace(&w))
            .unwrap_or(false);
        t.case(ok, || format!("intersection lemma fails for {:?} and {:?}", u1.basis(), u2.basis()));
    }
    let mut done = 0;
    while done < 200 {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=n);
        let basis: Vec<VectorQ> = (0..m).map(|_| gen::rational_vector(&mut rng, n, 9)).collect();
        if Subspace::span(n, &basis).map(|s| s.dim()).unwrap_or(0) != m {
            continue;
        }
        done += 1;
        let ok = satisfied(basis_product_certificate(&basis));
        t.case(ok, || format!("basis product fails for {basis:?}"));
    }
    let mut done = 0;
    while done < 200 {
        let n = rng.gen_range(1..=4);
        let a = gen::int_matrix(&mut rng, n, n, 9);
        if a.rank() < n {
            continue;
        }
        done += 1;
        let ok = inverse_with_certificate(&a, &q)
            .map(|(inv, c)| c.is_satisfied() && a.mul(&inv).ok() == Some(MatrixQ::identity(n)))
            .unwrap_or(false);
        t.case(ok, || format!("inverse bounds fail for {a}"));
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let fs: Vec<MultiPoly> = (0..k).map(|_| gen::nonzero_poly(&mut rng, n, 4, 9, 4)).collect();
        let z = gen::rational_vector(&mut rng, n, 20);
        let ok = satisfied(poly_image_height_certificate(&fs, &z));
        t.case(ok, || format!("polynomial image bound fails at {z}"));
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let f = gen::nonzero_poly(&mut rng, n, 3, 9, 4);
        let a = MatrixQ::new(n, k, (0..n * k).map(|_| gen::rational(&mut rng, 6)).collect()).expect("shape");
        let y = gen::rational_vector(&mut rng, k, 7);
        let ok = substitute_linear(&f, &a)
            .map(|(g, c)| {
                let ay = a.mul_vec(&y).expect("shape");
                c.is_satisfied() && g.evaluate(&y).ok() == f.evaluate(&ay).ok()
            })
            .unwrap_or(false);
        t.case(ok, || format!("linear substitution fails for {f} and {a}"));
    }
    t
}

fn nonvanishing(seed: u64) -> Tally {
    let mut rng = gen::stream(seed, 4);
    let mut t = Tally::default();
    for _ in 0..300 {
        let n = rng.gen_range(1..=3);
        let p = gen::nonzero_poly(&mut rng, n, 5, 9, 5);
        let m = p.degree() as i64;
        let ok = match nonvanishing_witness(&p, &SearchOptions::default()) {
            Ok((z, c)) => {
                let expected = oracle::first_nonvanishing_by_sorting(&p, (m + 2) / 2);
                let zi: Vec<i64> = z.0.iter().map(|x| i64::try_from(x.to_integer()).unwrap_or(i64::MAX)).collect();
                c.is_satisfied()
                    && int(2) * affine_height(&z.0) <= int(m + 2)
                    && !p.evaluate(&z).map(|v| v.is_zero()).unwrap_or(true)
                    && expected.as_deref() == Some(&zi[..])
            }
            Err(_) => false,
        };
        t.case(ok, || format!("nonvanishing witness wrong for {p}"));
    }
    t
}

/// Shared corpus for the small and sparse basis criteria.
fn basis_corpus(seed: u64) -> Vec<Subspace> {
    let mut rng = gen::stream(seed, 5);
    (0..100)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            let g = rng.gen_range(1..=n);
            gen::subspace(&mut rng, n, g, 10)
        })
        .collect()
}

fn spans_exactly(n: usize, basis: &[VectorQ], v: &Subspace) -> bool {
    basis.len() == v.dim()
        && basis.iter().all(|x| v.contains(x))
        && Subspace::span(n, basis).map(|s| s.dim() == v.dim()).unwrap_or(false)
}

fn small_bases(seed: u64) -> Tally {
    let q = FieldContext::rationals();
    let mut t = Tally::default();
    let mut saturated = 0;
    for v in basis_corpus(seed) {
        let n = v.ambient_dim();
        let ok = match small_basis(&v, &q, &SearchOptions::default()) {
            Ok((b, c)) => {
                let ints: Vec<Vec<num_bigint::BigInt>> =
                    b.iter().filter(|x| x.is_integral()).map(|x| x.0.iter().map(|y| y.to_integer()).collect()).collect();
                let lattice = ints.len() == b.len();
                let sat = lattice && minor_content(&ints, n).is_one();
                if sat {
                    saturated += 1;
                }
                let prod_sq: Rational = b.iter().map(|x| affine_height(&x.0)).map(|h| &h * &h).product();
                c.is_satisfied() && spans_exactly(n, &b, &v) && sat && prod_sq <= subspace_height_squared(&v)
            }
            Err(_) => false,
        };
        t.case(ok, || format!("small basis fails for {:?}", v.basis()));
    }
    t.detail.push(format!("{saturated} saturated lattice bases"));
    t
}

fn sparse_bases(seed: u64) -> Tally {
    let q = FieldContext::rationals();
    let mut t = Tally::default();
    for v in basis_corpus(seed) {
        let (n, m) = (v.ambient_dim(), v.dim());
        let ok = match sparse_basis(&v, &q, &SearchOptions::default()) {
            Ok((b, c)) => {
                let limit = int(2 * (m * m) as i64) * subspace_height_squared(&v);
                c.is_satisfied()
                    && spans_exactly(n, &b, &v)
                    && b.iter().all(|x| {
                        let h = affine_height(&x.0);
                        x.support_size() <= n - m + 1 && &h * &h <= limit
                    })
            }
            Err(_) => false,
        };
        t.case(ok, || format!("sparse basis fails for {:?}", v.basis()));
    }
    t
}

/// `k^{k+1} ((D+2)/2)^{2km+1} (𝒩𝔥)^{2k}` recomputed from the system.
fn system_bound(p: &SystemProblem) -> Rational {
    let k = p.polys.len() as i64;
    let d: i64 = p.polys.iter().map(|f| f.degree() as i64).sum();
    let m = p.polys.iter().map(|f| f.degree() as i64).max().unwrap_or(0);
    let nn = p.polys.iter().map(|f| f.num_terms() as i64).max().unwrap_or(0);
    let hh = p.polys.iter().map(|f| affine_height(&f.coefficient_vector().0)).max().expect("nonempty");
    pow_rational(&int(k), k + 1) * pow_rational(&rat(d + 2, 2), 2 * k * m + 1) * pow_rational(&(int(nn) * hh), 2 * k)
}

/// Random systems jointly linear in `x_I`, with `det 𝓕 ≢ 0`.
fn system_corpus(seed: u64) -> Vec<SystemProblem> {
    let mut rng = gen::stream(seed, 7);
    let mut out = vec![SystemProblem::new(vec![crate::polynomial::parse_poly("x1*x2 - 1", 2).expect("valid")], vec![0])];
    while out.len() < 100 {
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=2.min(n - 1));
        let mut vars: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(&mut vars[..], &mut rng);
        let mut idx = vars[..k].to_vec();
        idx.sort_unstable();
        let rest: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
        let mut fmat = Vec::new();
        let mut polys = Vec::new();
        for _ in 0..k {
            let row: Vec<MultiPoly> = (0..k).map(|_| gen::poly(&mut rng, n - k, 2, 5, 3)).collect();
            let tail = gen::poly(&mut rng, n - k, 3, 5, 3);
            let mut f = tail.embed(n, &rest);
            for (&i, c) in idx.iter().zip(&row) {
                f = f.add(&MultiPoly::var(n, i).mul(&c.embed(n, &rest)));
            }
            fmat.push(row);
            polys.push(f);
        }
        let det = poly_matrix_det(&fmat).expect("square");
        if det.is_zero() || polys.iter().any(MultiPoly::is_zero) {
            continue;
        }
        out.push(SystemProblem::new(polys, idx));
    }
    out
}

fn systems(seed: u64) -> Tally {
    let mut t = Tally::default();
    for (i, p) in system_corpus(seed).iter().enumerate() {
        let ok = match solve_system(p, &SearchOptions::default()) {
            Ok(c) => {
                let z = c.witness_vector().cloned().unwrap_or_else(|| VectorQ::zeros(0));
                let zeros = p.polys.iter().all(|f| f.evaluate(&z).map(|v| v.is_zero()).unwrap_or(false));
                let mut ok = c.is_satisfied() && zeros && affine_height(&z.0) <= system_bound(p);
                if i == 0 {
                    ok &= z == VectorQ::from_ints(&[-1, -1])
                        && c.bound.as_ref().and_then(|b| b.value.as_rational()) == Some(int(128));
                }
                ok
            }
            Err(_) => false,
        };
        t.case(ok, || format!("system solver fails on {:?}", p.polys.iter().map(|f| f.to_string()).collect::<Vec<_>>()));
    }
    t
}

pub struct SingleInstance {
    pub f: MultiPoly,
    pub j: usize,
    pub p: MultiPoly,
}

fn single_corpus(seed: u64) -> Vec<(SingleInstance, crate::error::Result<Certificate>)> {
    let mut rng = gen::stream(seed, 8);
    let mut out = Vec::new();
    while out.len() < 100 {
        let n = rng.gen_range(1..=3);
        let j = rng.gen_range(0..n);
        let g = rng.gen_range(1..=3);
        let rest: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let f1 = gen::nonzero_poly(&mut rng, n - 1, g - 1, 5, 3).embed(n, &rest);
        let f2 = gen::poly(&mut rng, n - 1, g, 5, 3).embed(n, &rest);
        let f = MultiPoly::var(n, j).mul(&f1).add(&f2);
        let p = if rng.gen_bool(0.25) {
            MultiPoly::one(n)
        } else {
            gen::nonzero_poly(&mut rng, n, 2, 5, 3)
        };
        let r = solve_single_avoiding(&f, j, &p, &SearchOptions::default());
        if matches!(r, Err(Error::AvoidanceImpossible(_))) {
            continue;
        }
        out.push((SingleInstance { f, j, p }, r));
    }
    out
}

fn single_avoiding(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut constant = 0;
    for (inst, r) in single_corpus(seed) {
        let (f, p) = (&inst.f, &inst.p);
        let ok = match r {
            Ok(c) => {
                let z = c.witness_vector().cloned().unwrap_or_else(|| VectorQ::zeros(0));
                let g = f.degree() as i64;
                let m = p.degree() as i64;
                let nf = int(f.num_terms() as i64);
                let hf = affine_height(&f.coefficient_vector().0);
                let hz = affine_height(&z.0);
                let bound = &nf * pow_rational(&rat(m * (2 * g - 1) + 2, 2), g + 1) * &hf;
                let mut ok = c.is_satisfied()
                    && f.evaluate(&z).map(|v| v.is_zero()).unwrap_or(false)
                    && p.evaluate(&z).map(|v| !v.is_zero()).unwrap_or(false)
                    && hz <= bound;
                if p.is_constant() {
                    constant += 1;
                    ok &= hz <= &nf * &hf;
                }
                ok
            }
            Err(_) => false,
        };
        t.case(ok, || format!("avoiding solver fails on F = {f}, x{}, P = {p}", inst.j + 1));
    }
    t.detail.push(format!("{constant} with constant P"));
    t
}

fn multilinear_corpus(seed: u64) -> Vec<MultiPoly> {
    let mut rng = gen::stream(seed, 9);
    (0..100)
        .map(|_| {
            let n = rng.gen_range(2..=6);
            let g = rng.gen_range(1..=n);
            gen::multilinear_form(&mut rng, n, g, 9, 4)
        })
        .collect()
}

fn multilinear(seed: u64) -> Tally {
    let mut t = Tally::default();
    let q = FieldContext::rationals();
    for f in multilinear_corpus(seed) {
        let ok = match multilinear_zero(&f) {
            Ok(c) => {
                let z = c.witness_vector().cloned().unwrap_or_else(|| VectorQ::zeros(0));
                c.is_satisfied()
                    && !z.is_zero()
                    && f.evaluate(&z).map(|v| v.is_zero()).unwrap_or(false)
                    && sup_height(&z.0) <= sup_height(&f.coefficient_vector().0)
            }
            Err(_) => false,
        };
        t.case(ok, || format!("multilinear zero fails for {f}"));
    }
    let mut rng = gen::stream(seed, 90);
    for _ in 0..50 {
        let n = rng.gen_range(2..=5);
        let g = rng.gen_range(2..=n);
        let m = rng.gen_range(n + 2 - g..=n);
        let v = gen::subspace_of_dim(&mut rng, n, m, 5);
        let f = gen::multilinear_form(&mut rng, n, g, 9, 4);
        let ok = match multilinear_zero_on_subspace(&f, &v, None, &q, &SearchOptions::default()) {
            Ok(c) => {
                let b = c.witness_basis().map(<[VectorQ]>::to_vec).unwrap_or_default();
                let limit = int(2 * (m * m) as i64) * subspace_height_squared(&v);
                c.is_satisfied()
                    && spans_exactly(n, &b, &v)
                    && b.iter().all(|x| {
                        let h = sup_height(&x.0);
                        f.evaluate(x).map(|y| y.is_zero()).unwrap_or(false) && &h * &h <= limit
                    })
            }
            Err(_) => false,
        };
        t.case(ok, || format!("multilinear subspace zeros fail for {f} on {:?}", v.basis()));
    }
    t
}

const BRUTE_LIMIT: i64 = 50;

fn brute_force_cross_check(seed: u64) -> Tally {
    let mut t = Tally::default();
    let fifty = ExactReal::from_int(BRUTE_LIMIT);
    let mut scanned = 0u64;
    let mut check = |t: &mut Tally, label: String, q: &ZeroQuery<'_>, n: usize, c: &Certificate| {
        let Some(bound) = c.bound.as_ref() else { return };
        if !le(&bound.value, &fifty) {
            return;
        }
        let z = c.witness_vector().cloned().unwrap_or_else(|| VectorQ::zeros(0));
        let limit = floor_of(&bound.value);
        let r = oracle::brute_force(q, n, limit);
        scanned += r.scanned;
        let returned_ok = q.accepts(&z) && le(&ExactReal::from_rational(q.height(&z)), &bound.value);
        let exists = r.found.is_some_and(|w| q.accepts(&w) && int(limit as i64) >= q.height(&w));
        t.case(returned_ok && exists, || format!("brute force disagrees on {label}"));
    };
    for p in system_corpus(seed) {
        if let Ok(c) = solve_system(&p, &SearchOptions::default()) {
            let q = ZeroQuery { vanish: &p.polys, avoid: None, projective: false };
            check(&mut t, format!("system {:?}", p.polys.iter().map(|f| f.to_string()).collect::<Vec<_>>()), &q, p.polys[0].nvars(), &c);
        }
    }
    for (inst, r) in single_corpus(seed) {
        if let Ok(c) = r {
            let fs = [inst.f.clone()];
            let q = ZeroQuery { vanish: &fs, avoid: Some(&inst.p), projective: false };
            check(&mut t, format!("F = {}, P = {}", inst.f, inst.p), &q, inst.f.nvars(), &c);
        }
    }
    for f in multilinear_corpus(seed) {
        if let Ok(c) = multilinear_zero(&f) {
            let fs = [f.clone()];
            let q = ZeroQuery { vanish: &fs, avoid: None, projective: true };
            check(&mut t, format!("multilinear {f}"), &q, f.nvars(), &c);
        }
    }
    t.detail.push(format!("{scanned} points scanned"));
    t
}

/// `⌊x⌋` for a positive exact real below 2⁶³.
fn floor_of(x: &ExactReal) -> u64 {
    let mut lo = 0u64;
    let mut hi = 1u64;
    while le(&ExactReal::from_int(hi as i64), x) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if le(&ExactReal::from_int(mid as i64), x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_of_square_root() {
        assert_eq!(floor_of(&ExactReal::sqrt_of(int(50))), 7);
        assert_eq!(floor_of(&ExactReal::from_int(32)), 32);
    }

    #[test]
    fn corpus_is_seed_deterministic() {
        let a: Vec<String> = system_corpus(7).iter().map(|p| format!("{:?}", p.polys)).collect();
        let b: Vec<String> = system_corpus(7).iter().map(|p| format!("{:?}", p.polys)).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
    }

    #[test]
    fn report_line_format() {
        let r = CriterionReport {
            id: 3,
            title: "demo",
            cases: 2,
            failures: 0,
            examples: vec![],
            elapsed: Duration::from_millis(10),
            limit: Duration::from_secs(1),
            detail: String::new(),
        };
        assert!(r.line().starts_with("criterion  3 PASS | demo | 2 cases, 0 failures"));
    }
}
