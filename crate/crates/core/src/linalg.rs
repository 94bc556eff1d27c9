//! Exact rational linear algebra and subspace geometry.
//!
//! Subspaces carry their canonical Plücker vector: the maximal minors of a
//! basis matrix in lexicographic order of row subsets, scaled to a
//! primitive integer vector with first nonzero entry positive. Two bases
//! of the same subspace give the same vector, so `𝓗(V)` and the duality
//! `𝓗(V) = 𝓗(V^⊥)` become exact equality tests.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::certificate::{BoundFormula, Certificate, Claim, Witness};
use crate::error::{Error, Result};
use crate::exact::{big, int, rat, ExactReal, Rational};
use crate::heights::{
    euclidean_squared, height_euclidean, height_inhomogeneous, height_projective, primitive_integer_form,
    FieldContext, HeightValue, VectorQ,
};

/// Most Plücker coordinates we are willing to enumerate.
pub const MAX_PLUCKER_LEN: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatrixQ {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows * cols != data.len() {
            return Err(Error::DimMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(MatrixQ { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().cloned().collect())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[VectorQ]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map(VectorQ::dim).unwrap_or(0);
        if cols.iter().any(|v| v.dim() != r) {
            return Err(Error::DimMismatch("columns of different lengths".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col.0[i].clone());
            }
        }
        Self::new(r, c, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        MatrixQ { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> VectorQ {
        VectorQ(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<VectorQ> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> VectorQ {
        VectorQ((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<VectorQ> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        MatrixQ { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch("matrix product".into()));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                data.push(acc);
            }
        }
        MatrixQ::new(self.rows, other.cols, data)
    }

    pub fn mul_vec(&self, v: &VectorQ) -> Result<VectorQ> {
        if self.cols != v.dim() {
            return Err(Error::DimMismatch("matrix-vector product".into()));
        }
        Ok(VectorQ((0..self.rows).map(|i| self.row(i).dot(v)).collect()))
    }

    /// Row-major flattening, the vector whose heights are the matrix heights.
    pub fn flatten(&self) -> VectorQ {
        VectorQ(self.data.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        bareiss(rows_to_integers(&self.row_vectors()), self.cols).rank
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimMismatch("determinant of a non-square matrix".into()));
        }
        let rows = self.row_vectors();
        let mut scale = Rational::one();
        let ints: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                let l = r.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= big(l.clone());
                r.0.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        Ok(big(integer_determinant(ints)) / scale)
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<MatrixQ> {
        if self.rows != self.cols {
            return Err(Error::DimMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).0).collect();
        let mut inv: Vec<Vec<Rational>> = (0..n).map(|i| VectorQ::unit(n, i).0).collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(c, p);
            inv.swap(c, p);
            let pivot = a[c][c].clone();
            for j in 0..n {
                a[c][j] = &a[c][j] / &pivot;
                inv[c][j] = &inv[c][j] / &pivot;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        let t = &f * &a[c][j];
                        a[r][j] -= t;
                        let t = &f * &inv[c][j];
                        inv[r][j] -= t;
                    }
                }
            }
        }
        MatrixQ::from_rows(&inv)
    }
}

impl fmt::Display for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.row_vectors().iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn rows_to_integers(rows: &[VectorQ]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = r.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.0.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

struct Echelon {
    rank: usize,
    // last pivot with the sign of the row permutation; the determinant
    // when the matrix is square and nonsingular
    signed_last_pivot: BigInt,
}

/// Fraction-free (Bareiss) elimination on an integer matrix.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut k = 0;
    let mut sign = 1i32;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(p) = (k..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..rows {
            for j in c + 1..cols {
                let v = (&a[k][c] * &a[i][j] - &a[i][c] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[k][c].clone();
        k += 1;
    }
    let last = if sign < 0 { -prev } else { prev };
    Echelon { rank: k, signed_last_pivot: last }
}

pub(crate) fn integer_determinant(a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let e = bareiss(a, n);
    if e.rank < n {
        BigInt::zero()
    } else {
        e.signed_last_pivot
    }
}

/// Reduced row echelon form of the given rows and the pivot columns.
pub fn rref(rows: &[VectorQ], cols: usize) -> (Vec<VectorQ>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..cols {
        if k == a.len() {
            break;
        }
        let Some(p) = (k..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(k, p);
        let pivot = a[k][c].clone();
        for x in a[k].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..a.len() {
            if r != k && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in c..cols {
                    let t = &f * &a[k][j];
                    a[r][j] -= t;
                }
            }
        }
        pivots.push(c);
        k += 1;
    }
    (a.into_iter().map(VectorQ).collect(), pivots)
}

/// Right kernel of the matrix with the given rows, as a list of basis
/// vectors (one per free column).
pub fn kernel_basis(rows: &[VectorQ], n: usize) -> Vec<VectorQ> {
    let (r, pivots) = rref(rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = VectorQ::zeros(n);
            v.0[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v.0[p] = -r[i].0[f].clone();
            }
            v
        })
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Subsets of `{0, …, n-1}` of size `k` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Canonical Plücker vector of the column span of `a`.
pub fn plucker_coordinates(a: &MatrixQ) -> Result<VectorQ> {
    let (n, m) = (a.rows(), a.cols());
    if m > n {
        return Err(Error::RankDeficient);
    }
    plucker_of_columns(&a.columns(), n)
}

fn plucker_of_columns(cols: &[VectorQ], n: usize) -> Result<VectorQ> {
    let m = cols.len();
    if m == 0 {
        return Ok(VectorQ::from_ints(&[1]));
    }
    if binomial(n as u64, m as u64) > MAX_PLUCKER_LEN {
        return Err(Error::TooLarge(format!("C({n},{m}) Plücker coordinates")));
    }
    // Column scaling multiplies every minor by the same constant.
    let int_cols = rows_to_integers(cols);
    let minors: Vec<Rational> = combinations(n, m)
        .into_iter()
        .map(|rows| {
            let sub: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|&i| int_cols.iter().map(|c| c[i].clone()).collect())
                .collect();
            big(integer_determinant(sub))
        })
        .collect();
    let p = primitive_integer_form(&minors).ok_or(Error::RankDeficient)?;
    Ok(VectorQ::from_bigints(&p))
}

/// A rational subspace of `ℚⁿ` with a basis and its canonical Plücker
/// vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<VectorQ>,
    plucker: VectorQ,
}

impl Subspace {
    /// Subspace spanned by linearly independent vectors.
    pub fn from_basis(ambient: usize, basis: Vec<VectorQ>) -> Result<Self> {
        if basis.iter().any(|v| v.dim() != ambient) {
            return Err(Error::DimMismatch(format!("basis vectors must have length {ambient}")));
        }
        if basis.len() > ambient {
            return Err(Error::RankDeficient);
        }
        let plucker = plucker_of_columns(&basis, ambient)?;
        Ok(Subspace { ambient, basis, plucker })
    }

    /// Span of arbitrary generators; the stored basis is their reduced
    /// row echelon form.
    pub fn span(ambient: usize, generators: &[VectorQ]) -> Result<Self> {
        if generators.iter().any(|v| v.dim() != ambient) {
            return Err(Error::DimMismatch(format!("generators must have length {ambient}")));
        }
        let (r, pivots) = rref(generators, ambient);
        let basis: Vec<VectorQ> = r.into_iter().take(pivots.len()).collect();
        Self::from_basis(ambient, basis)
    }

    pub fn from_matrix_columns(a: &MatrixQ) -> Result<Self> {
        Self::from_basis(a.rows(), a.columns())
    }

    pub fn full(n: usize) -> Self {
        Self::from_basis(n, (0..n).map(|i| VectorQ::unit(n, i)).collect()).expect("standard basis")
    }

    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Vec::new(),
            plucker: VectorQ::from_ints(&[1]),
        }
    }

    /// `span{eᵢ : i ∈ members}` with 0-based members.
    pub fn coordinate(n: usize, members: &[usize]) -> Self {
        Self::from_basis(n, members.iter().map(|&i| VectorQ::unit(n, i)).collect()).expect("distinct units")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[VectorQ] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Option<MatrixQ> {
        MatrixQ::from_columns(&self.basis).ok()
    }

    pub fn plucker(&self) -> &VectorQ {
        &self.plucker
    }

    pub fn contains(&self, v: &VectorQ) -> bool {
        if v.is_zero() {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        bareiss(rows_to_integers(&rows), self.ambient).rank == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Rows `B` with `V = ker B`, a basis of the orthogonal complement.
    pub fn dual_rows(&self) -> Vec<VectorQ> {
        kernel_basis(&self.basis, self.ambient)
    }

    /// Adds `v` to the basis if it is not already in the subspace.
    pub fn extend(&self, v: &VectorQ) -> Result<Subspace> {
        if self.contains(v) {
            return Ok(self.clone());
        }
        let mut b = self.basis.clone();
        b.push(v.clone());
        Self::from_basis(self.ambient, b)
    }
}

pub fn subspace_height(v: &Subspace) -> HeightValue {
    height_euclidean(&v.plucker).expect("Plücker vectors are nonzero")
}

/// `𝓗(V)²`.
pub fn subspace_height_squared(v: &Subspace) -> Rational {
    euclidean_squared(&v.plucker).expect("Plücker vectors are nonzero")
}

/// `𝓗(span(rows))` as a subspace, for the duality check.
fn row_space(rows: &[VectorQ], n: usize) -> Result<Subspace> {
    Subspace::span(n, rows)
}

pub fn kernel(b: &MatrixQ) -> Subspace {
    kernel_of_rows(&b.row_vectors(), b.cols())
}

pub fn kernel_of_rows(rows: &[VectorQ], n: usize) -> Subspace {
    Subspace::from_basis(n, kernel_basis(rows, n)).expect("kernel basis is independent")
}

/// Kernel of `B` plus a certificate that `𝓗(ker B) = 𝓗(row space of B)`.
pub fn kernel_with_certificate(b: &MatrixQ) -> Result<(Subspace, Certificate)> {
    let k = kernel(b);
    let rs = row_space(&b.row_vectors(), b.cols())?;
    let hk = subspace_height_squared(&k);
    let hr = subspace_height_squared(&rs);
    let cert = Certificate::new(Claim::Duality, Witness::Basis(k.basis().to_vec()))
        .step(format!("kernel dimension {} in Q^{}", k.dim(), b.cols()))
        .step(format!("Hcal(kernel)^2 = {}, Hcal(row space)^2 = {}", hk, hr))
        .fact("Hcal(kernel)^2 = Hcal(row space)^2", hk == hr);
    Ok((k, cert))
}

/// Intersection through stacked dual descriptions, with the certificate
/// `𝓗(U₁ ∩ U₂)² ≤ 𝓗(U₁)² 𝓗(U₂)²`.
pub fn intersect_with_certificate(u1: &Subspace, u2: &Subspace) -> Result<(Subspace, Certificate)> {
    let w = intersect(u1, u2)?;
    let lhs = subspace_height_squared(&w);
    let a = subspace_height_squared(u1);
    let b = subspace_height_squared(u2);
    let bound = BoundFormula::new("Hcal(U1)^2 * Hcal(U2)^2").factor(a.clone()).factor(b.clone());
    let mut cert = Certificate::new(Claim::IntersectionHeight, Witness::Basis(w.basis().to_vec()))
        .step(format!("dim U1 = {}, dim U2 = {}, dim U1∩U2 = {}", u1.dim(), u2.dim(), w.dim()))
        .check_le("Hcal(U1∩U2)^2 <= Hcal(U1)^2 Hcal(U2)^2", ExactReal::from_rational(lhs), bound)?;
    if w.dim() == 0 {
        cert = cert.note("intersection is trivial; the bound holds vacuously");
    }
    Ok((w, cert))
}

pub fn intersect(u1: &Subspace, u2: &Subspace) -> Result<Subspace> {
    if u1.ambient_dim() != u2.ambient_dim() {
        return Err(Error::DimMismatch("subspaces live in different ambient spaces".into()));
    }
    let mut rows = u1.dual_rows();
    rows.extend(u2.dual_rows());
    Ok(kernel_of_rows(&rows, u1.ambient_dim()))
}

/// Exact inverse with both inverse-height inequalities:
/// `H(A⁻¹) ≤ (√n H(A))^{n-1}` and `h(A⁻¹) ≤ nⁿ |Δ|^{1/d} h(A)^{2n-1}`.
pub fn inverse_with_certificate(a: &MatrixQ, ctx: &FieldContext) -> Result<(MatrixQ, Certificate)> {
    let inv = a.inverse()?;
    let n = a.rows() as i64;
    let ha = height_projective(&a.flatten())?.as_rational().expect("rational");
    let h_inv = height_projective(&inv.flatten())?;
    let proj_bound = BoundFormula::new("(sqrt(n) H(A))^(n-1)")
        .param("n", int(n))
        .param("H(A)", ha.clone())
        .term(int(n), rat(n - 1, 2))
        .term(ha.clone(), int(n - 1));
    let inh_a = height_inhomogeneous(&a.flatten()).as_rational().expect("rational");
    let inh_inv = height_inhomogeneous(&inv.flatten());
    let inh_bound = BoundFormula::new("n^n |disc|^(1/d) h(A)^(2n-1)")
        .param("n", int(n))
        .param("h(A)", inh_a.clone())
        .term(int(n), int(n))
        .term_unless_one(ctx.disc(), rat(1, ctx.degree as i64))
        .term(inh_a, int(2 * n - 1));
    let cert = Certificate::new(Claim::InverseHeight, Witness::Matrix(inv.clone()))
        .step(format!("A^-1 = {inv}"))
        .with_bound(h_inv, proj_bound)?
        .check_le("h(A^-1) <= n^n |disc|^(1/d) h(A)^(2n-1)", inh_inv.value, inh_bound)?;
    Ok((inv, cert))
}

/// Reduced column echelon form; zero columns trail.
pub fn reduced_column_echelon(x: &MatrixQ) -> MatrixQ {
    let (r, _) = rref(&x.columns(), x.rows());
    let cols: Vec<VectorQ> = r;
    MatrixQ::from_columns(&cols).expect("same shape")
}

/// `𝓗(V)² ≤ ∏ 𝓗(xᵢ)²` for the given basis of `V`.
pub fn basis_product_certificate(basis: &[VectorQ]) -> Result<Certificate> {
    let n = basis.first().map(VectorQ::dim).ok_or(Error::EmptySubspace)?;
    let v = Subspace::from_basis(n, basis.to_vec())?;
    let mut bound = BoundFormula::new("prod Hcal(x_i)^2");
    for x in basis {
        bound = bound.factor(euclidean_squared(x)?);
    }
    Certificate::new(Claim::BasisProductHeight, Witness::Basis(basis.to_vec()))
        .check_le(
            "Hcal(V)^2 <= prod Hcal(x_i)^2",
            ExactReal::from_rational(subspace_height_squared(&v)),
            bound,
        )
}

/// Integer matrix rows as rationals.
pub fn int_rows(rows: &[Vec<BigInt>]) -> Vec<VectorQ> {
    rows.iter().map(|r| VectorQ::from_bigints(r)).collect()
}

/// Sign-normalizes a primitive integer vector (first nonzero positive).
pub fn normalize_sign(v: &mut [BigInt]) {
    if v.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}
