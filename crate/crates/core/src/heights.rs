//! Heights over ℚ.
//!
//! For a nonzero `v ∈ ℚⁿ` let `p` be its primitive integer representative
//! (denominators cleared, content divided out, first nonzero entry
//! positive). Then
//!
//! * `H(v) = max |pᵢ|` (projective, sup-norm at the archimedean place),
//! * `𝓗(v) = (Σ pᵢ²)^{1/2}` (Euclidean at the archimedean place),
//! * `h(v) = H(1, v)` (inhomogeneous).
//!
//! The shortcut agrees with the product over all places; the slower
//! place-by-place computation is kept as [`projective_height_via_places`]
//! for cross-checking.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{big, int, ExactReal, Rational};
use crate::factor::{factorize, valuation};

/// Field constants `(d, r₁, r₂, |Δ_K|)` entering the bound formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldContext {
    pub degree: u32,
    pub real_embeddings: u32,
    pub complex_pairs: u32,
    pub abs_discriminant: BigUint,
}

impl FieldContext {
    pub fn rationals() -> Self {
        FieldContext {
            degree: 1,
            real_embeddings: 1,
            complex_pairs: 0,
            abs_discriminant: BigUint::one(),
        }
    }

    pub fn new(degree: u32, real_embeddings: u32, complex_pairs: u32, abs_discriminant: u64) -> Result<Self> {
        if degree == 0 || degree != real_embeddings + 2 * complex_pairs || abs_discriminant == 0 {
            return Err(Error::HypothesisFailed(format!(
                "field constants must satisfy d = r1 + 2 r2 with d, |disc| >= 1 (got d={degree}, r1={real_embeddings}, r2={complex_pairs})"
            )));
        }
        Ok(FieldContext {
            degree,
            real_embeddings,
            complex_pairs,
            abs_discriminant: BigUint::from(abs_discriminant),
        })
    }

    pub fn is_rationals(&self) -> bool {
        *self == Self::rationals()
    }

    pub fn disc(&self) -> Rational {
        big(BigInt::from(self.abs_discriminant.clone()))
    }
}

impl Default for FieldContext {
    fn default() -> Self {
        Self::rationals()
    }
}

/// Dense rational vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorQ(pub Vec<Rational>);

impl VectorQ {
    pub fn new(entries: Vec<Rational>) -> Self {
        VectorQ(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        VectorQ(entries.iter().map(|&x| int(x)).collect())
    }

    pub fn from_bigints(entries: &[BigInt]) -> Self {
        VectorQ(entries.iter().map(|x| big(x.clone())).collect())
    }

    pub fn zeros(n: usize) -> Self {
        VectorQ(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> VectorQ {
        VectorQ(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &VectorQ) -> VectorQ {
        VectorQ(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn dot(&self, other: &VectorQ) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// `(1, v₁, …, vₙ)`.
    pub fn prepend_one(&self) -> VectorQ {
        let mut e = Vec::with_capacity(self.dim() + 1);
        e.push(Rational::one());
        e.extend(self.0.iter().cloned());
        VectorQ(e)
    }

    /// Canonical primitive integer multiple; `None` for the zero vector.
    pub fn primitive(&self) -> Option<Vec<BigInt>> {
        primitive_integer_form(&self.0)
    }

    pub fn canonical(&self) -> VectorQ {
        match self.primitive() {
            Some(p) => VectorQ::from_bigints(&p),
            None => self.clone(),
        }
    }
}

impl fmt::Display for VectorQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(crate::exact::format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Clears denominators, divides out the content and makes the first
/// nonzero entry positive.
pub fn primitive_integer_form(v: &[Rational]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let first_negative = ints.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    let g = if first_negative { -g } else { g };
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    Some(ints)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeightKind {
    /// Projective sup-norm height `H`.
    Projective,
    /// Euclidean-archimedean height `𝓗`.
    Euclidean,
    /// Inhomogeneous (Weil) height `h`.
    Inhomogeneous,
}

impl HeightKind {
    pub fn symbol(self) -> &'static str {
        match self {
            HeightKind::Projective => "H",
            HeightKind::Euclidean => "Hcal",
            HeightKind::Inhomogeneous => "h",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightValue {
    pub kind: HeightKind,
    pub value: ExactReal,
    /// `value²`, always present for `𝓗`.
    pub squared: Option<Rational>,
}

impl HeightValue {
    fn rational(kind: HeightKind, r: Rational) -> Self {
        HeightValue {
            kind,
            squared: Some(&r * &r),
            value: ExactReal::from_rational(r),
        }
    }

    /// `H` and `h` over ℚ are rational; `𝓗` may be a square root.
    pub fn as_rational(&self) -> Option<Rational> {
        self.value.rational_value()
    }

    pub fn squared(&self) -> Rational {
        match &self.squared {
            Some(s) => s.clone(),
            None => self
                .value
                .powi(2)
                .as_rational()
                .expect("squares of heights over Q are rational"),
        }
    }
}

fn sup_norm(p: &[BigInt]) -> BigInt {
    p.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

pub fn height_projective(v: &VectorQ) -> Result<HeightValue> {
    let p = v.primitive().ok_or(Error::ZeroVector)?;
    Ok(HeightValue::rational(HeightKind::Projective, big(sup_norm(&p))))
}

pub fn height_euclidean(v: &VectorQ) -> Result<HeightValue> {
    let p = v.primitive().ok_or(Error::ZeroVector)?;
    let sq: BigInt = p.iter().map(|x| x * x).sum();
    let sq = big(sq);
    Ok(HeightValue {
        kind: HeightKind::Euclidean,
        value: ExactReal::sqrt_of(sq.clone()),
        squared: Some(sq),
    })
}

pub fn height_inhomogeneous(v: &VectorQ) -> HeightValue {
    let p = v.prepend_one().primitive().expect("(1, v) is nonzero");
    HeightValue::rational(HeightKind::Inhomogeneous, big(sup_norm(&p)))
}

/// `H` as a rational, for internal arithmetic.
pub fn projective_rational(v: &VectorQ) -> Result<Rational> {
    let p = v.primitive().ok_or(Error::ZeroVector)?;
    Ok(big(sup_norm(&p)))
}

/// `h` as a rational.
pub fn inhomogeneous_rational(v: &VectorQ) -> Rational {
    let p = v.prepend_one().primitive().expect("(1, v) is nonzero");
    big(sup_norm(&p))
}

/// `𝓗²` as a rational.
pub fn euclidean_squared(v: &VectorQ) -> Result<Rational> {
    let p = v.primitive().ok_or(Error::ZeroVector)?;
    Ok(big(p.iter().map(|x| x * x).sum::<BigInt>()))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "p={p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

/// `|x|_p = p^{-v_p(x)}`, normalized for the product formula over ℚ.
fn p_adic_abs(x: &Rational, p: &BigUint) -> Rational {
    let vn = valuation(x.numer().magnitude(), p) as i64;
    let vd = valuation(x.denom().magnitude(), p) as i64;
    let pb = big(BigInt::from_biguint(Sign::Plus, p.clone()));
    crate::exact::pow_rational(&pb, vd - vn)
}

/// Every finite place with `|x|_p ≠ 1`, then the archimedean place, and
/// whether the values multiply to exactly 1.
pub fn verify_product_formula(x: &Rational) -> Result<(bool, Vec<(Place, Rational)>)> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut primes: Vec<BigUint> = factorize(x.numer().magnitude())
        .into_iter()
        .chain(factorize(x.denom().magnitude()))
        .map(|(p, _)| p)
        .collect();
    primes.sort();
    primes.dedup();
    let mut table: Vec<(Place, Rational)> = primes
        .into_iter()
        .map(|p| {
            let a = p_adic_abs(x, &p);
            (Place::Finite(p), a)
        })
        .collect();
    table.push((Place::Infinite, x.abs()));
    let product: Rational = table.iter().map(|(_, a)| a.clone()).product();
    Ok((product.is_one(), table))
}

/// `H(v)` as the product over places of the local sup-norms. Independent
/// of the primitive-representative shortcut.
pub fn projective_height_via_places(v: &VectorQ) -> Result<Rational> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut primes: Vec<BigUint> = Vec::new();
    for x in v.0.iter().filter(|x| !x.is_zero()) {
        primes.extend(factorize(x.numer().magnitude()).into_iter().map(|(p, _)| p));
        primes.extend(factorize(x.denom().magnitude()).into_iter().map(|(p, _)| p));
    }
    primes.sort();
    primes.dedup();
    let mut h = v.0.iter().map(|x| x.abs()).max().expect("nonempty");
    for p in primes {
        let local = v
            .0
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| p_adic_abs(x, &p))
            .max()
            .expect("some nonzero entry");
        h *= local;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{exact_compare, rat};
    use proptest::prelude::*;
    use std::cmp::Ordering;

    fn v(xs: &[(i64, i64)]) -> VectorQ {
        VectorQ(xs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn projective_examples() {
        assert_eq!(height_projective(&VectorQ::from_ints(&[2, 4])).unwrap().as_rational(), Some(int(2)));
        assert_eq!(height_projective(&VectorQ::from_ints(&[0, 1])).unwrap().as_rational(), Some(int(1)));
        assert_eq!(height_projective(&v(&[(1, 2), (1, 3)])).unwrap().as_rational(), Some(int(3)));
        assert_eq!(height_projective(&VectorQ::zeros(3)), Err(Error::ZeroVector));
    }

    #[test]
    fn place_decomposition_of_two_four() {
        // v = 2 contributes 1/2, the archimedean place 4
        assert_eq!(projective_height_via_places(&VectorQ::from_ints(&[2, 4])).unwrap(), int(2));
    }

    #[test]
    fn euclidean_examples() {
        let h = height_euclidean(&VectorQ::from_ints(&[3, 4])).unwrap();
        assert_eq!(h.squared, Some(int(25)));
        assert_eq!(h.as_rational(), Some(int(5)));
        assert_eq!(height_euclidean(&VectorQ::from_ints(&[1, 0, 0])).unwrap().as_rational(), Some(int(1)));
        let h = height_euclidean(&VectorQ::from_ints(&[1, 1])).unwrap();
        assert_eq!(h.squared, Some(int(2)));
        assert_eq!(exact_compare(&h.value, &ExactReal::sqrt_of(int(2))).unwrap(), Ordering::Equal);
        assert_eq!(height_euclidean(&VectorQ::zeros(2)), Err(Error::ZeroVector));
    }

    #[test]
    fn inhomogeneous_examples() {
        assert_eq!(height_inhomogeneous(&v(&[(3, 2)])).as_rational(), Some(int(3)));
        assert_eq!(height_inhomogeneous(&VectorQ::zeros(3)).as_rational(), Some(int(1)));
        assert_eq!(height_inhomogeneous(&VectorQ::from_ints(&[2, 4])).as_rational(), Some(int(4)));
    }

    #[test]
    fn product_formula_examples() {
        let (ok, table) = verify_product_formula(&rat(6, 5)).unwrap();
        assert!(ok);
        let expected = vec![
            (Place::Finite(BigUint::from(2u32)), rat(1, 2)),
            (Place::Finite(BigUint::from(3u32)), rat(1, 3)),
            (Place::Finite(BigUint::from(5u32)), int(5)),
            (Place::Infinite, rat(6, 5)),
        ];
        assert_eq!(table, expected);

        let (ok, table) = verify_product_formula(&int(1)).unwrap();
        assert!(ok);
        assert_eq!(table, vec![(Place::Infinite, int(1))]);

        let (ok, table) = verify_product_formula(&int(-8)).unwrap();
        assert!(ok);
        assert_eq!(
            table,
            vec![(Place::Finite(BigUint::from(2u32)), rat(1, 8)), (Place::Infinite, int(8))]
        );
        assert_eq!(verify_product_formula(&int(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn field_context_validation() {
        assert!(FieldContext::rationals().is_rationals());
        assert!(FieldContext::new(2, 0, 1, 4).is_ok());
        assert!(FieldContext::new(2, 1, 1, 4).is_err());
    }

    fn rational_vec() -> impl Strategy<Value = VectorQ> {
        proptest::collection::vec((-100i64..=100, 1i64..=100), 1..=6)
            .prop_map(|xs| VectorQ(xs.into_iter().map(|(n, d)| rat(n, d)).collect()))
            .prop_filter("nonzero", |v| !v.is_zero())
    }

    proptest! {
        #[test]
        fn height_chain_on_squares(v in rational_vec()) {
            let h = projective_rational(&v).unwrap();
            let e2 = euclidean_squared(&v).unwrap();
            let n = int(v.dim() as i64);
            prop_assert!(h >= int(1));
            prop_assert!(&h * &h <= e2);
            prop_assert!(e2 <= n * &h * &h);
            prop_assert!(inhomogeneous_rational(&v) >= h);
        }

        #[test]
        fn shortcut_matches_places(v in rational_vec()) {
            prop_assert_eq!(projective_rational(&v).unwrap(), projective_height_via_places(&v).unwrap());
        }

        #[test]
        fn scaling_and_permutation_invariance(v in rational_vec(), c in (-50i64..=50, 1i64..=50), rot in 0usize..6) {
            prop_assume!(c.0 != 0);
            let c = rat(c.0, c.1);
            let w = v.scale(&c);
            prop_assert_eq!(projective_rational(&v).unwrap(), projective_rational(&w).unwrap());
            prop_assert_eq!(euclidean_squared(&v).unwrap(), euclidean_squared(&w).unwrap());
            let mut p = v.0.clone();
            let k = rot % p.len();
            p.rotate_left(k);
            let p = VectorQ(p);
            prop_assert_eq!(projective_rational(&v).unwrap(), projective_rational(&p).unwrap());
            prop_assert_eq!(euclidean_squared(&v).unwrap(), euclidean_squared(&p).unwrap());
            prop_assert_eq!(inhomogeneous_rational(&v), inhomogeneous_rational(&p));
        }
    }
}
