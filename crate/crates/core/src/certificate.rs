//! Proof-carrying results: a witness, its exact height, the exact bound it
//! is claimed to satisfy, every auxiliary check, and a step log.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;

use crate::error::Result;
use crate::exact::{exact_compare, format_rational, render_power, ExactReal, Rational};
use crate::heights::{HeightValue, VectorQ};
use crate::linalg::MatrixQ;
use crate::polynomial::MultiPoly;

/// Which statement a certificate vouches for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    Height,
    ProductFormula,
    Duality,
    InverseHeight,
    IntersectionHeight,
    BasisProductHeight,
    PolynomialImageHeight,
    LinearSubstitutionHeight,
    Nonvanishing,
    SmallBasis,
    Avoidance,
    SparseBasis,
    SystemZero,
    AvoidingZero,
    LineZero,
    MultilinearZero,
    MultilinearSubspaceZero,
    LinearFormSubspaceZero,
}

impl Claim {
    pub fn tag(self) -> &'static str {
        match self {
            Claim::Height => "height",
            Claim::ProductFormula => "product-formula",
            Claim::Duality => "duality",
            Claim::InverseHeight => "inverse-height",
            Claim::IntersectionHeight => "intersection-height",
            Claim::BasisProductHeight => "basis-product-height",
            Claim::PolynomialImageHeight => "polynomial-image-height",
            Claim::LinearSubstitutionHeight => "linear-substitution-height",
            Claim::Nonvanishing => "nonvanishing",
            Claim::SmallBasis => "small-basis",
            Claim::Avoidance => "avoidance",
            Claim::SparseBasis => "sparse-basis",
            Claim::SystemZero => "system-zero",
            Claim::AvoidingZero => "avoiding-zero",
            Claim::LineZero => "line-zero",
            Claim::MultilinearZero => "multilinear-zero",
            Claim::MultilinearSubspaceZero => "multilinear-subspace-zero",
            Claim::LinearFormSubspaceZero => "linear-form-subspace-zero",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Satisfied,
    Violated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Satisfied => "SATISFIED",
            Verdict::Violated => "VIOLATED",
        }
    }

    fn of(holds: bool) -> Self {
        if holds {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One factor `base^exponent` of a closed-form bound, kept in formula order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTerm {
    pub base: Rational,
    pub exponent: Rational,
}

/// A closed-form bound: the named parameters it was built from, its factors
/// in the order the formula states them, and the exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundFormula {
    pub name: String,
    pub params: Vec<(String, Rational)>,
    pub terms: Vec<BoundTerm>,
    pub value: ExactReal,
}

impl BoundFormula {
    pub fn new(name: impl Into<String>) -> Self {
        BoundFormula {
            name: name.into(),
            params: Vec::new(),
            terms: Vec::new(),
            value: ExactReal::one(),
        }
    }

    pub fn param(mut self, name: &str, value: impl Into<Rational>) -> Self {
        self.params.push((name.to_string(), value.into()));
        self
    }

    /// Multiplies in `base^exponent`.
    pub fn term(mut self, base: Rational, exponent: Rational) -> Self {
        self.value = self.value.mul(&ExactReal::pow_of(base.clone(), exponent.clone()));
        self.terms.push(BoundTerm { base, exponent });
        self
    }

    pub fn factor(self, base: Rational) -> Self {
        self.term(base, Rational::one())
    }

    /// Multiplies in `base^exponent` only when `base ≠ 1`.
    pub fn term_unless_one(self, base: Rational, exponent: Rational) -> Self {
        if base.is_one() {
            self
        } else {
            self.term(base, exponent)
        }
    }

    pub fn expression(&self) -> String {
        if self.terms.is_empty() {
            return "1".to_string();
        }
        self.terms
            .iter()
            .map(|t| render_power(&t.base, &t.exponent))
            .collect::<Vec<_>>()
            .join(" * ")
    }

    pub fn param_value(&self, name: &str) -> Option<&Rational> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub lhs: Option<ExactReal>,
    pub rhs: Option<BoundFormula>,
    pub holds: bool,
}

impl Check {
    pub fn verdict(&self) -> Verdict {
        Verdict::of(self.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    Vector(VectorQ),
    Basis(Vec<VectorQ>),
    Matrix(MatrixQ),
    Polynomial(MultiPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub claim: Claim,
    pub witness: Witness,
    pub witness_height: Option<HeightValue>,
    pub bound: Option<BoundFormula>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub trace: Vec<String>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(claim: Claim, witness: Witness) -> Self {
        Certificate {
            claim,
            witness,
            witness_height: None,
            bound: None,
            checks: Vec::new(),
            verdict: Verdict::Satisfied,
            trace: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Sets the headline inequality `witness_height ≤ bound`.
    pub fn with_bound(mut self, height: HeightValue, bound: BoundFormula) -> Result<Self> {
        let holds = exact_compare(&height.value, &bound.value)? != Ordering::Greater;
        self.checks.insert(
            0,
            Check {
                label: format!("{} <= bound", height.kind.symbol()),
                lhs: Some(height.value.clone()),
                rhs: Some(bound.clone()),
                holds,
            },
        );
        self.witness_height = Some(height);
        self.bound = Some(bound);
        Ok(self.settle())
    }

    pub fn check_le(mut self, label: impl Into<String>, lhs: ExactReal, rhs: BoundFormula) -> Result<Self> {
        let holds = exact_compare(&lhs, &rhs.value)? != Ordering::Greater;
        self.checks.push(Check {
            label: label.into(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            holds,
        });
        Ok(self.settle())
    }

    pub fn fact(mut self, label: impl Into<String>, holds: bool) -> Self {
        self.checks.push(Check {
            label: label.into(),
            lhs: None,
            rhs: None,
            holds,
        });
        self.settle()
    }

    pub fn step(mut self, line: impl Into<String>) -> Self {
        self.trace.push(line.into());
        self
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }

    fn settle(mut self) -> Self {
        self.verdict = Verdict::of(self.checks.iter().all(|c| c.holds));
        self
    }

    pub fn is_satisfied(&self) -> bool {
        self.verdict == Verdict::Satisfied
    }

    pub fn witness_vector(&self) -> Option<&VectorQ> {
        match &self.witness {
            Witness::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn witness_basis(&self) -> Option<&[VectorQ]> {
        match &self.witness {
            Witness::Basis(b) => Some(b),
            _ => None,
        }
    }
}

/// `"name=value"` list for trace lines.
pub fn describe_params(params: &[(String, Rational)]) -> String {
    params
        .iter()
        .map(|(n, v)| format!("{n}={}", format_rational(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::heights::height_inhomogeneous;

    #[test]
    fn expression_keeps_formula_order() {
        let b = BoundFormula::new("demo")
            .term(int(2), rat(1, 2))
            .factor(int(3))
            .term(rat(5, 2), int(3));
        assert_eq!(b.expression(), "2^{1/2} * 3 * (5/2)^{3}");
        assert_eq!(b.value.to_fixed(3), "66.291");
    }

    #[test]
    fn verdict_tracks_every_check() {
        let z = VectorQ::from_ints(&[-1, -1]);
        let bound = BoundFormula::new("b").factor(int(1));
        let c = Certificate::new(Claim::Height, Witness::Vector(z.clone()))
            .with_bound(height_inhomogeneous(&z), bound)
            .unwrap();
        assert!(c.is_satisfied());
        let c = c.fact("something false", false);
        assert_eq!(c.verdict, Verdict::Violated);
    }
}
