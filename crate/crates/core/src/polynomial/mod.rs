//! Sparse multivariate polynomials over ℚ.
//!
//! Terms are kept in graded lexicographic order with `x1 > x2 > …`; the
//! coefficient vector in that order (largest monomial first) defines the
//! polynomial heights. Variable indices in the API are 0-based; text
//! renders them as `x1 … xn`.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::certificate::{BoundFormula, Certificate, Claim, Witness};
use crate::error::{Error, Result};
use crate::exact::{big, format_rational, int, pow_rational, Rational};
use crate::factor::divisors;
use crate::heights::{height_inhomogeneous, height_projective, inhomogeneous_rational, HeightValue, VectorQ};
use crate::linalg::MatrixQ;

pub use parse::{parse_poly, PolyParseError};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    /// Linear form `Σ aᵢ xᵢ`.
    pub fn linear_form(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = Monomial(e);
        let remove = match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(key, c);
                false
            }
        };
        if remove {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial(vec![0; self.nvars])).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().rev().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(&Monomial(e.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map(Monomial::degree).unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// `𝒩(F)`, the number of nonzero monomials.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_vector(&self) -> VectorQ {
        VectorQ(self.terms().map(|(_, c)| c.clone()).collect())
    }

    /// `h(F)`; 1 for the zero polynomial.
    pub fn height(&self) -> Rational {
        inhomogeneous_rational(&self.coefficient_vector())
    }

    pub fn height_value(&self) -> HeightValue {
        height_inhomogeneous(&self.coefficient_vector())
    }

    /// `H(F)`.
    pub fn projective_height(&self) -> Result<HeightValue> {
        if self.is_zero() {
            return Err(Error::ZeroPoly);
        }
        height_projective(&self.coefficient_vector())
    }

    pub fn mentions(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.mentions(i)).collect()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.0.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut p = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<u32> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn evaluate(&self, z: &VectorQ) -> Result<Rational> {
        if z.dim() != self.nvars {
            return Err(Error::DimMismatch(format!(
                "polynomial in {} variables evaluated at a point of length {}",
                self.nvars,
                z.dim()
            )));
        }
        Ok(self.eval_unchecked(&z.0))
    }

    fn eval_unchecked(&self, z: &[Rational]) -> Rational {
        let maxdeg: Vec<u32> = (0..self.nvars).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<Rational>> = z
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = vec![Rational::one()];
                for k in 1..=d as usize {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn evaluate_ints(&self, z: &[i64]) -> Rational {
        let zq: Vec<Rational> = z.iter().map(|&x| int(x)).collect();
        self.eval_unchecked(&zq)
    }

    /// Replaces every variable `xᵢ` by `subs[i]`, all in a common ring.
    pub fn compose(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars, "one substitute per variable");
        let target = subs.first().map(MultiPoly::nvars).unwrap_or(0);
        let maxdeg: Vec<u32> = (0..self.nvars).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .zip(&maxdeg)
            .map(|(s, &d)| {
                let mut v = vec![MultiPoly::one(target)];
                for k in 1..=d as usize {
                    let next = v[k - 1].mul(s);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes the constant `value` for `xᵢ`, keeping the variable count.
    pub fn substitute_value(&self, i: usize, value: &Rational) -> MultiPoly {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] = 0;
            p.add_term(e, c * pow_rational(value, k as i64));
        }
        p
    }

    /// Keeps only the listed variables (in that order); all others must be
    /// absent.
    pub fn restrict_to(&self, keep: &[usize]) -> MultiPoly {
        let mut p = Self::zero(keep.len());
        for (m, c) in &self.terms {
            debug_assert!((0..self.nvars).all(|i| keep.contains(&i) || m.0[i] == 0));
            p.add_term(keep.iter().map(|&i| m.0[i]).collect(), c.clone());
        }
        p
    }

    /// Places the variables of `self` at slots `slots` of an `n`-variable ring.
    pub fn embed(&self, n: usize, slots: &[usize]) -> MultiPoly {
        assert_eq!(slots.len(), self.nvars, "one slot per variable");
        let mut p = Self::zero(n);
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            for (j, &s) in slots.iter().enumerate() {
                e[s] = m.0[j];
            }
            p.add_term(e, c.clone());
        }
        p
    }

    /// `F = xᵢ·F₁ + F₂` with `F₁, F₂` free of `xᵢ` (same ring), or `None`
    /// if `xᵢ` occurs with exponent above 1.
    pub fn split_linear(&self, i: usize) -> Option<(MultiPoly, MultiPoly)> {
        let mut f1 = Self::zero(self.nvars);
        let mut f2 = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            match m.0[i] {
                0 => f2.add_term(m.0.clone(), c.clone()),
                1 => {
                    let mut e = m.0.clone();
                    e[i] = 0;
                    f1.add_term(e, c.clone());
                }
                _ => return None,
            }
        }
        Some((f1, f2))
    }

    /// Primitive integer coefficient multiple, preserving the sign of the
    /// leading term.
    fn integer_coefficients(&self) -> Vec<(Vec<u32>, BigInt)> {
        let l = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<(Vec<u32>, BigInt)> =
            self.terms.iter().map(|(m, c)| (m.0.clone(), c.numer() * (&l / c.denom()))).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
        ints.into_iter().map(|(m, x)| (m, x / &g)).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `F = Σⱼ x_{iⱼ} Fⱼ(x_{I′}) + F_{k+1}(x_{I′})`; the `Fⱼ` live in the ring
/// of the complementary variables `I′`, listed in `complement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ISeparatedForm {
    pub nvars: usize,
    pub index_set: Vec<usize>,
    pub complement: Vec<usize>,
    pub coefficients: Vec<MultiPoly>,
    pub tail: MultiPoly,
}

impl ISeparatedForm {
    pub fn reassemble(&self) -> MultiPoly {
        let mut p = self.tail.embed(self.nvars, &self.complement);
        for (&i, fj) in self.index_set.iter().zip(&self.coefficients) {
            p = p.add(&MultiPoly::var(self.nvars, i).mul(&fj.embed(self.nvars, &self.complement)));
        }
        p
    }
}

pub fn decompose_i_separated(f: &MultiPoly, index_set: &[usize]) -> Result<ISeparatedForm> {
    let n = f.nvars();
    let mut idx = index_set.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.is_empty() || idx.len() >= n || idx.iter().any(|&i| i >= n) || idx.len() != index_set.len() {
        return Err(Error::NotISeparated(format!(
            "index set must be a nonempty proper subset of the {n} variables"
        )));
    }
    let complement: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
    let m = complement.len();
    let mut coefficients = vec![MultiPoly::zero(m); idx.len()];
    let mut tail = MultiPoly::zero(m);
    for (e, c) in f.terms() {
        let hits: Vec<usize> = idx.iter().enumerate().filter(|(_, &i)| e[i] > 0).map(|(j, _)| j).collect();
        let reduced: Vec<u32> = complement.iter().map(|&i| e[i]).collect();
        match hits.as_slice() {
            [] => tail.add_term(reduced, c.clone()),
            [j] if e[idx[*j]] == 1 => coefficients[*j].add_term(reduced, c.clone()),
            _ => {
                return Err(Error::NotISeparated(format!(
                    "monomial {} is not linear in the separated variables",
                    MultiPoly::from_terms(n, [(e.to_vec(), Rational::one())])
                )))
            }
        }
    }
    Ok(ISeparatedForm { nvars: n, index_set: idx, complement, coefficients, tail })
}

/// Determinant by cofactor expansion along the first row.
pub fn poly_matrix_det(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let k = m.len();
    if k == 0 || m.iter().any(|r| r.len() != k) {
        return Err(Error::DimMismatch("polynomial matrix must be square and nonempty".into()));
    }
    let n = m[0][0].nvars();
    if m.iter().flatten().any(|p| p.nvars() != n) {
        return Err(Error::DimMismatch("entries use different variable counts".into()));
    }
    let rows: Vec<usize> = (0..k).collect();
    let cols: Vec<usize> = (0..k).collect();
    Ok(cofactor(m, &rows, &cols, n))
}

fn cofactor(m: &[Vec<MultiPoly>], rows: &[usize], cols: &[usize], n: usize) -> MultiPoly {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc = MultiPoly::zero(n);
    for (j, &c) in cols.iter().enumerate() {
        let entry = &m[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor(m, &rows[1..], &rest, n);
        let t = entry.mul(&minor);
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// `G(y) = F(A y)` for an `n×k` matrix `A`, with the certificate
/// `h(G) ≤ k^m 𝒩(F) h(F) h(A)^m`.
pub fn substitute_linear(f: &MultiPoly, a: &MatrixQ) -> Result<(MultiPoly, Certificate)> {
    if a.rows() != f.nvars() {
        return Err(Error::DimMismatch(format!(
            "substitution matrix has {} rows for {} variables",
            a.rows(),
            f.nvars()
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let k = a.cols();
    let subs: Vec<MultiPoly> = (0..a.rows()).map(|i| MultiPoly::linear_form(&a.row(i).0)).collect();
    let g = if f.nvars() == 0 { MultiPoly::zero(k) } else { f.compose(&subs) };
    let m = f.degree() as i64;
    let ha = inhomogeneous_rational(&a.flatten());
    let bound = BoundFormula::new("k^m N(F) h(F) h(A)^m")
        .param("k", int(k as i64))
        .param("m", int(m))
        .param("N(F)", int(f.num_terms() as i64))
        .param("h(F)", f.height())
        .param("h(A)", ha.clone())
        .factor(pow_rational(&int(k as i64), m))
        .factor(int(f.num_terms() as i64))
        .factor(f.height())
        .term(ha, int(m));
    let cert = Certificate::new(Claim::LinearSubstitutionHeight, Witness::Polynomial(g.clone()))
        .step(format!("G(y) = F(A y) = {g}"))
        .with_bound(g.height_value(), bound)?
        .fact("deg G <= deg F", g.degree() <= f.degree());
    Ok((g, cert))
}

/// `h(F₁(z), …, F_k(z)) ≤ 𝒩 𝔥 h(z)^m` with maxima over the family.
pub fn poly_image_height_certificate(fs: &[MultiPoly], z: &VectorQ) -> Result<Certificate> {
    if fs.is_empty() {
        return Err(Error::DimMismatch("empty polynomial family".into()));
    }
    if fs.iter().all(MultiPoly::is_zero) {
        return Err(Error::ZeroPoly);
    }
    let values: Vec<Rational> = fs.iter().map(|f| f.evaluate(z)).collect::<Result<_>>()?;
    let image = VectorQ(values);
    let nn = fs.iter().map(MultiPoly::num_terms).max().unwrap_or(0) as i64;
    let hh = fs.iter().map(MultiPoly::height).max().expect("nonempty");
    let m = fs.iter().map(MultiPoly::degree).max().unwrap_or(0) as i64;
    let hz = inhomogeneous_rational(z);
    let bound = BoundFormula::new("N hF h(z)^m")
        .param("N", int(nn))
        .param("hF", hh.clone())
        .param("m", int(m))
        .factor(int(nn))
        .factor(hh)
        .term(hz, int(m));
    Certificate::new(Claim::PolynomialImageHeight, Witness::Vector(image.clone()))
        .step(format!("image = {image}"))
        .with_bound(height_inhomogeneous(&image), bound)
}

/// `Some(g)` when `F` is a nonzero homogeneous form of degree `g` with
/// every exponent at most 1.
pub fn is_multilinear_form(f: &MultiPoly) -> Option<u32> {
    let g = f.degree();
    if f.is_zero() {
        return None;
    }
    let ok = f.terms().all(|(e, _)| e.iter().sum::<u32>() == g && e.iter().all(|&k| k <= 1));
    ok.then_some(g)
}

/// Rational roots with multiplicity, ascending.
pub fn rational_roots(f: &MultiPoly) -> Result<Vec<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPoly);
    }
    if f.nvars() != 1 && (f.used_vars().len() > 1 || f.nvars() == 0) {
        return Err(Error::NotUnivariate);
    }
    let var = f.used_vars().first().copied().unwrap_or(0);
    // dense integer coefficients c[0..=d]
    let d = f.degree_in(var) as usize;
    let mut c = vec![BigInt::zero(); d + 1];
    for (e, x) in f.integer_coefficients() {
        c[e[var] as usize] = x;
    }
    let mut roots = Vec::new();
    let lead = c.iter().position(|x| !x.is_zero()).expect("nonzero");
    roots.extend(std::iter::repeat_n(Rational::zero(), lead));
    let mut c: Vec<BigInt> = c[lead..].to_vec();
    while c.len() > 1 {
        let a0 = c[0].abs().to_biguint().expect("nonnegative");
        let an = c[c.len() - 1].abs().to_biguint().expect("nonnegative");
        let mut found = None;
        'search: for p in divisors(&a0) {
            for q in divisors(&an) {
                if p.gcd(&q) != BigUint::one() {
                    continue;
                }
                for sign in [1i32, -1] {
                    let r = Rational::new(BigInt::from(p.clone()) * sign, BigInt::from(q.clone()));
                    if horner(&c, &r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        let Some(r) = found else { break };
        c = deflate(&c, &r);
        roots.push(r);
    }
    roots.sort();
    Ok(roots)
}

fn horner(c: &[BigInt], r: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, x| acc * r + big(x.clone()))
}

/// Divides by `(q x - p)` where `r = p/q` is a root, keeping integer
/// coefficients.
fn deflate(c: &[BigInt], r: &Rational) -> Vec<BigInt> {
    let (p, q) = (r.numer().clone(), r.denom().clone());
    let d = c.len() - 1;
    let mut out = vec![BigInt::zero(); d];
    // c(x) = (q x - p) b(x); solve from the top
    let mut carry = BigInt::zero();
    for i in (0..d).rev() {
        let top = &c[i + 1] + &carry;
        let b = &top / &q;
        debug_assert!((&top % &q).is_zero());
        out[i] = b.clone();
        carry = &b * &p;
    }
    out
}
