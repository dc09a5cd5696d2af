//! Polynomial matrices and exponential matrices.
//!
//! An exponential matrix satisfies `A(T)·A(T′) = A(T+T′)` and `A(0) = I`.
//! [`is_exponential`] checks this twice: once by expanding the bivariate
//! product, once through the coproduct identity
//! `a_ij(T⊗1 + 1⊗T) = Σ_l a_il(T) ⊗ a_lj(T)` on dense coefficient grids with
//! binomial weights. The two routes share no code beyond field arithmetic.

use std::fmt;

use crate::birat::ProjMap;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::mpoly::MPoly;
use crate::poly::Poly;

/// Square matrix with entries in `k[T]`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    n: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(field: &Field, rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix must be square and nonempty".into()));
        }
        if rows.iter().flatten().any(|p| p.field() != field) {
            return Err(Error::MixedFields);
        }
        Ok(PolyMatrix { field: field.clone(), n, entries: rows.into_iter().flatten().collect() })
    }

    /// Entries given as integer coefficient lists, low to high.
    pub fn from_int_coeffs(field: &Field, rows: &[&[&[i64]]]) -> Result<PolyMatrix> {
        let rows = rows.iter().map(|r| r.iter().map(|c| Poly::from_ints(field, c)).collect()).collect();
        PolyMatrix::new(field, rows)
    }

    pub fn identity(field: &Field, n: usize) -> PolyMatrix {
        PolyMatrix::constant(&Matrix::identity(field, n))
    }

    pub fn constant(m: &Matrix) -> PolyMatrix {
        assert!(m.is_square());
        let f = m.field();
        let entries = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| Poly::constant(f, m.get(i, j).clone()))
            .collect();
        PolyMatrix { field: f.clone(), n: m.rows(), entries }
    }

    /// `Σ_k M_k T^k`.
    pub fn from_coefficient_matrices(field: &Field, n: usize, mats: &[Matrix]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(Poly::new(field, mats.iter().map(|m| m.get(i, j).clone()).collect()));
            }
        }
        PolyMatrix { field: field.clone(), n, entries }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.n).map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    /// Largest entry degree, `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// `(M_0, …, M_d)` with `A = Σ M_k T^k`.
    pub fn coefficient_matrices(&self) -> Vec<Matrix> {
        let d = self.max_degree().map_or(0, |d| d + 1);
        (0..d)
            .map(|k| {
                let rows = (0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j).coeff(k)).collect()).collect();
                Matrix::from_rows(&self.field, rows)
            })
            .collect()
    }

    pub fn eval(&self, t: &Elem) -> Matrix {
        let rows = (0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j).eval(t)).collect()).collect();
        Matrix::from_rows(&self.field, rows)
    }

    pub fn is_identity(&self) -> bool {
        *self == PolyMatrix::identity(&self.field, self.n)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(&self.field);
                for l in 0..n {
                    acc = &acc + &(self.entry(i, l) * other.entry(l, j));
                }
                entries.push(acc);
            }
        }
        PolyMatrix { field: self.field.clone(), n, entries }
    }

    pub fn scale(&self, c: &Elem) -> PolyMatrix {
        PolyMatrix { field: self.field.clone(), n: self.n, entries: self.entries.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.entry(j, i).clone());
            }
        }
        out
    }

    /// `P · A · P⁻¹`.
    pub fn conjugate(&self, p: &Matrix) -> Result<PolyMatrix> {
        if p.rows() != self.n || !p.is_square() {
            return Err(Error::DimensionMismatch("conjugator size differs from matrix size".into()));
        }
        if p.field() != &self.field {
            return Err(Error::MixedFields);
        }
        let inv = p.inverse()?;
        let mats: Vec<Matrix> = self.coefficient_matrices().iter().map(|m| p.mul(m).mul(&inv)).collect();
        Ok(PolyMatrix::from_coefficient_matrices(&self.field, self.n, &mats))
    }

    /// Block sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.n + other.n;
        let mut rows = vec![vec![Poly::zero(&self.field); n]; n];
        for i in 0..self.n {
            for j in 0..self.n {
                rows[i][j] = self.entry(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                rows[self.n + i][self.n + j] = other.entry(i, j).clone();
            }
        }
        PolyMatrix::new(&self.field, rows).expect("square by construction")
    }

    pub fn derivative(&self) -> PolyMatrix {
        PolyMatrix { field: self.field.clone(), n: self.n, entries: self.entries.iter().map(Poly::derivative).collect() }
    }

    /// Determinant by cofactor expansion (sizes here stay small).
    pub fn det(&self) -> Poly {
        fn go(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Poly {
            if rows.len() == 1 {
                return m.entry(rows[0], cols[0]).clone();
            }
            let mut acc = Poly::zero(&m.field);
            for (k, &c) in cols.iter().enumerate() {
                let a = m.entry(rows[0], c);
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = a * &go(m, &rows[1..], &rest);
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
        let idx: Vec<usize> = (0..self.n).collect();
        go(self, &idx, &idx)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}] over {}", rows.join(", "), self.field)
    }
}

/// Which exponential axiom a check concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `A(0) = I`
    AtZero,
    /// `A(T)·A(T′) = A(T+T′)`, checked by the bivariate product.
    Product,
    /// The same identity checked on coefficient grids.
    Coproduct,
    /// `det A = 1`
    Determinant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub condition: Condition,
    /// 1-based `(row, column)`.
    pub entry: (usize, usize),
    /// `A(T+T′) − Σ_l a_il(T) a_lj(T′)` (or the analogous difference) in `k[T, T′]`.
    pub residual: MPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub at_zero: Option<Failure>,
    pub product: Option<Failure>,
    pub coproduct: Option<Failure>,
    pub determinant: Option<Failure>,
}

impl VerifyReport {
    pub fn valid(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.at_zero.as_ref().or(self.product.as_ref()).or(self.coproduct.as_ref()).or(self.determinant.as_ref())
    }

    /// Whether the two independent routes reached the same verdict.
    pub fn routes_agree(&self) -> bool {
        self.product.is_none() == self.coproduct.is_none()
    }
}

/// `A(0) = I`.
pub fn check_at_zero(a: &PolyMatrix) -> Option<Failure> {
    let f = a.field();
    for i in 0..a.n() {
        for j in 0..a.n() {
            let want = if i == j { f.one() } else { f.zero() };
            let got = a.entry(i, j).coeff(0);
            if got != want {
                return Some(Failure {
                    condition: Condition::AtZero,
                    entry: (i + 1, j + 1),
                    residual: MPoly::constant(f, 2, f.sub(&got, &want)),
                });
            }
        }
    }
    None
}

/// `A(T+T′) − A(T)·A(T′)` entry by entry, via expansion in `k[T, T′]`.
pub fn check_product(a: &PolyMatrix) -> Option<Failure> {
    let n = a.n();
    let left: Vec<MPoly> = a.entries.iter().map(|p| p.to_mpoly(2, 0)).collect();
    let right: Vec<MPoly> = a.entries.iter().map(|p| p.to_mpoly(2, 1)).collect();
    for i in 0..n {
        for j in 0..n {
            let mut residual = a.entry(i, j).bivariate_shift();
            for l in 0..n {
                residual = &residual - &(&left[i * n + l] * &right[l * n + j]);
            }
            if !residual.is_zero() {
                return Some(Failure { condition: Condition::Product, entry: (i + 1, j + 1), residual });
            }
        }
    }
    None
}

/// The coproduct identity on dense grids: the coefficient of `T^a ⊗ T^b` in
/// `Δ(a_ij)` is `C(a+b, a)·c_{a+b}`, and in `Σ_l a_il ⊗ a_lj` it is
/// `Σ_l c^{il}_a c^{lj}_b`.
pub fn check_coproduct(a: &PolyMatrix) -> Option<Failure> {
    let f = a.field();
    let n = a.n();
    let d = a.max_degree().unwrap_or(0);
    let binom = pascal(f, d);
    for i in 0..n {
        for j in 0..n {
            let mut grid = vec![vec![f.zero(); d + 1]; d + 1];
            let target = a.entry(i, j);
            for (s, c) in target.coeffs().iter().enumerate() {
                for u in 0..=s {
                    grid[u][s - u] = f.mul(&binom[s][u], c);
                }
            }
            for l in 0..n {
                let (x, y) = (a.entry(i, l), a.entry(l, j));
                for (u, cu) in x.coeffs().iter().enumerate() {
                    for (v, cv) in y.coeffs().iter().enumerate() {
                        grid[u][v] = f.sub(&grid[u][v], &f.mul(cu, cv));
                    }
                }
            }
            if grid.iter().flatten().any(|c| !f.is_zero(c)) {
                let mut residual = MPoly::zero(f, 2);
                for (u, row) in grid.into_iter().enumerate() {
                    for (v, c) in row.into_iter().enumerate() {
                        if !f.is_zero(&c) {
                            residual.add_term(vec![u as u32, v as u32], c);
                        }
                    }
                }
                return Some(Failure { condition: Condition::Coproduct, entry: (i + 1, j + 1), residual });
            }
        }
    }
    None
}

/// Binomial coefficients `C(s, u)` for `s ≤ d` as field elements.
fn pascal(f: &Field, d: usize) -> Vec<Vec<Elem>> {
    let mut rows: Vec<Vec<Elem>> = vec![vec![f.one()]];
    for s in 1..=d {
        let prev = &rows[s - 1];
        let mut row = vec![f.one(); s + 1];
        for u in 1..s {
            row[u] = f.add(&prev[u - 1], &prev[u]);
        }
        rows.push(row);
    }
    rows
}

fn check_determinant(a: &PolyMatrix) -> Option<Failure> {
    let det = a.det();
    if det.is_one() {
        return None;
    }
    let f = a.field();
    let residual = &det.to_mpoly(2, 0) - &MPoly::one(f, 2);
    Some(Failure { condition: Condition::Determinant, entry: (1, 1), residual })
}

/// Runs every check and reports each outcome.
pub fn verify(a: &PolyMatrix) -> VerifyReport {
    VerifyReport {
        at_zero: check_at_zero(a),
        product: check_product(a),
        coproduct: check_coproduct(a),
        determinant: check_determinant(a),
    }
}

/// A polynomial matrix that passed [`verify`].
#[derive(Clone, PartialEq, Eq)]
pub struct ExpMatrix {
    matrix: PolyMatrix,
}

impl ExpMatrix {
    pub fn new(matrix: PolyMatrix) -> Result<ExpMatrix> {
        is_exponential(&matrix).map_err(|r| {
            let fail = r.first_failure().expect("rejected report has a failure");
            Error::NotExponential(format!("{:?} fails at entry {:?}", fail.condition, fail.entry))
        })
    }

    pub fn identity(field: &Field, n: usize) -> ExpMatrix {
        ExpMatrix { matrix: PolyMatrix::identity(field, n) }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.matrix
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Conjugates by `P`; the result is exponential again, and is rechecked.
    pub fn conjugate(&self, p: &Matrix) -> Result<ExpMatrix> {
        ExpMatrix::new(self.matrix.conjugate(p)?)
    }
}

impl fmt::Debug for ExpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// The validated matrix, or the report naming what failed.
pub fn is_exponential(a: &PolyMatrix) -> std::result::Result<ExpMatrix, VerifyReport> {
    let report = verify(a);
    if report.valid() {
        Ok(ExpMatrix { matrix: a.clone() })
    } else {
        Err(report)
    }
}

/// Square matrix with `N^n = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NilMatrix {
    m: Matrix,
}

impl NilMatrix {
    pub fn new(m: Matrix) -> Result<NilMatrix> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch("nilpotent matrix must be square".into()));
        }
        if !m.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        Ok(NilMatrix { m })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn field(&self) -> &Field {
        self.m.field()
    }
}

fn require_char0(f: &Field) -> Result<()> {
    if f.characteristic() == 0 {
        Ok(())
    } else {
        Err(Error::WrongCharacteristic("this operation needs characteristic 0".into()))
    }
}

/// `Σ_{i<n} (1/i!) Tⁱ Nⁱ`.
pub fn exp_nilpotent(nil: &NilMatrix) -> Result<ExpMatrix> {
    let f = nil.field();
    require_char0(f)?;
    let n = nil.n();
    let mut mats = Vec::with_capacity(n);
    let mut power = Matrix::identity(f, n);
    let mut fact = f.one();
    for i in 0..n {
        if i > 0 {
            power = power.mul(nil.matrix());
            fact = f.mul(&fact, &f.from_int(i as i64));
        }
        mats.push(power.scale(&f.inv(&fact)?));
    }
    let a = PolyMatrix::from_coefficient_matrices(f, n, &mats);
    is_exponential(&a).map_err(|_| Error::InternalInconsistency("exponential of a nilpotent matrix failed verification".into()))
}

/// The unique `N` with `A = Exp_N`, read off as `A′(0)`.
pub fn log_exponential(a: &ExpMatrix) -> Result<NilMatrix> {
    let f = a.field();
    require_char0(f)?;
    let n = a.n();
    let derivative = a.matrix().coefficient_matrices().get(1).cloned().unwrap_or_else(|| Matrix::zeros(f, n, n));
    let nil = NilMatrix::new(derivative).map_err(|_| Error::InternalInconsistency("A′(0) is not nilpotent".into()))?;
    if exp_nilpotent(&nil)? != *a {
        return Err(Error::InternalInconsistency("Exp(A′(0)) differs from A".into()));
    }
    Ok(nil)
}

/// Lower-shift nilpotent Jordan form: `P·N·P⁻¹ = J`, `J` block diagonal with
/// ones just below the diagonal inside each block, blocks in decreasing size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanForm {
    pub p: Matrix,
    pub j: NilMatrix,
    pub blocks: Vec<usize>,
}

pub fn nilpotent_jordan(nil: &NilMatrix) -> Result<JordanForm> {
    let f = nil.field();
    let n = nil.n();
    let nm = nil.matrix();

    let mut powers = vec![Matrix::identity(f, n)];
    while !powers.last().unwrap().is_zero() {
        let next = powers.last().unwrap().mul(nm);
        powers.push(next);
    }
    let height = powers.len() - 1;
    let ranks: Vec<usize> = powers.iter().map(Matrix::rank).collect();
    // number of blocks of size ≥ k is rank(N^{k-1}) − rank(N^k)
    let at_least = |k: usize| ranks[k - 1] - ranks[k];
    let exactly = |k: usize| at_least(k) - if k < height { at_least(k + 1) } else { 0 };

    // (top vector, chain length), longest first
    let mut tops: Vec<(Vec<Elem>, usize)> = Vec::new();
    for d in (1..=height).rev() {
        let need = exactly(d);
        if need == 0 {
            continue;
        }
        let mut span: Vec<Vec<Elem>> = powers[d - 1].kernel();
        for (u, len) in &tops {
            span.push(powers[len - d].mul_vec(u));
        }
        let mut rank = crate::linalg::rank_of(f, &span);
        let mut found = 0;
        for v in powers[d].kernel() {
            if found == need {
                break;
            }
            span.push(v.clone());
            let r = crate::linalg::rank_of(f, &span);
            if r > rank {
                rank = r;
                tops.push((v, d));
                found += 1;
            } else {
                span.pop();
            }
        }
        if found != need {
            return Err(Error::InternalInconsistency("Jordan chain construction fell short".into()));
        }
    }

    let mut columns = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for (top, len) in &tops {
        let mut v = top.clone();
        for _ in 0..*len {
            columns.push(v.clone());
            v = nm.mul_vec(&v);
        }
        blocks.push(*len);
    }
    let s = Matrix::from_columns(f, &columns);
    let p = s.inverse().map_err(|_| Error::InternalInconsistency("Jordan basis is singular".into()))?;
    let j = p.mul(nm).mul(&s);
    if j != jordan_matrix(f, &blocks) {
        return Err(Error::InternalInconsistency("conjugated matrix is not in Jordan form".into()));
    }
    Ok(JordanForm { p, j: NilMatrix { m: j }, blocks })
}

/// Block diagonal lower-shift matrix with the given block sizes.
pub fn jordan_matrix(f: &Field, blocks: &[usize]) -> Matrix {
    let n = blocks.iter().sum();
    let mut m = Matrix::zeros(f, n, n);
    let mut start = 0;
    for &b in blocks {
        for k in 1..b {
            m.set(start + k, start + k - 1, f.one());
        }
        start += b;
    }
    m
}

/// `(1/det A)·A` for a matrix with nonzero constant determinant.
pub fn det_normalize(a: &PolyMatrix) -> Result<PolyMatrix> {
    let det = a.det();
    if det.is_zero() || !det.is_constant() {
        return Err(Error::NonConstantDeterminant);
    }
    let f = a.field();
    Ok(a.scale(&f.inv(&det.coeff(0))?))
}

/// The action `x ↦ x·ᵗA(T)`: component `j` is `Σ_i x_i a_ji(T)`, as a map in
/// the variables `x_0, …, x_{n−1}, T`.
pub fn action_of(a: &ExpMatrix) -> ProjMap {
    action_of_matrix(a.matrix())
}

pub fn action_of_matrix(a: &PolyMatrix) -> ProjMap {
    let f = a.field();
    let n = a.n();
    let nv = n + 1;
    let components = (0..n)
        .map(|j| {
            let mut c = MPoly::zero(f, nv);
            for i in 0..n {
                c = &c + &(&MPoly::var(f, nv, i) * &a.entry(j, i).to_mpoly(nv, n));
            }
            c
        })
        .collect();
    ProjMap::new(f, n, true, components).expect("linear components of equal degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn verify_examples() {
        let b = PolyMatrix::from_int_coeffs(&q(), &[&[&[1], &[0, 1]], &[&[], &[1]]]).unwrap();
        assert!(is_exponential(&b).is_ok());

        let sq = PolyMatrix::from_int_coeffs(&q(), &[&[&[1], &[0, 0, 1]], &[&[], &[1]]]).unwrap();
        let report = is_exponential(&sq).unwrap_err();
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.entry, (1, 2));
        assert_eq!(fail.residual, MPoly::from_terms(&q(), 2, vec![(vec![1, 1], q().from_int(2))]));
        assert!(report.routes_agree());

        let f2 = Field::prime(2).unwrap();
        let sq2 = PolyMatrix::from_int_coeffs(&f2, &[&[&[1], &[0, 0, 1]], &[&[], &[1]]]).unwrap();
        assert!(is_exponential(&sq2).is_ok());

        for n in 1..5 {
            assert!(is_exponential(&PolyMatrix::identity(&q(), n)).is_ok());
        }
    }

    #[test]
    fn at_zero_failure_detected() {
        let a = PolyMatrix::from_int_coeffs(&q(), &[&[&[1], &[1, 1]], &[&[], &[1]]]).unwrap();
        let r = verify(&a);
        assert_eq!(r.at_zero.as_ref().unwrap().entry, (1, 2));
        assert!(!r.valid());
    }

    #[test]
    fn exp_examples() {
        let f = q();
        let z = NilMatrix::new(Matrix::zeros(&f, 3, 3)).unwrap();
        assert!(exp_nilpotent(&z).unwrap().is_identity());

        let n2 = NilMatrix::new(Matrix::from_ints(&f, &[&[0, 1], &[0, 0]])).unwrap();
        let b = PolyMatrix::from_int_coeffs(&f, &[&[&[1], &[0, 1]], &[&[], &[1]]]).unwrap();
        assert_eq!(*exp_nilpotent(&n2).unwrap().matrix(), b);

        let n3 = NilMatrix::new(Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])).unwrap();
        let e = exp_nilpotent(&n3).unwrap();
        let half = f.from_ratio(1, 2).unwrap();
        assert_eq!(*e.matrix().entry(0, 2), Poly::new(&f, vec![f.zero(), f.zero(), half]));
        assert_eq!(log_exponential(&e).unwrap(), n3);
        assert_eq!(log_exponential(&ExpMatrix::identity(&f, 3)).unwrap().matrix(), &Matrix::zeros(&f, 3, 3));

        assert_eq!(NilMatrix::new(Matrix::identity(&f, 2)), Err(Error::NotNilpotent));
        let f3 = Field::prime(3).unwrap();
        let nz = NilMatrix::new(Matrix::zeros(&f3, 2, 2)).unwrap();
        assert!(matches!(exp_nilpotent(&nz), Err(Error::WrongCharacteristic(_))));
    }

    #[test]
    fn jordan_examples() {
        let f = q();
        let j = jordan_matrix(&f, &[2, 1]);
        let form = nilpotent_jordan(&NilMatrix::new(j.clone()).unwrap()).unwrap();
        assert!(form.p.is_identity());
        assert_eq!(form.blocks, vec![2, 1]);

        let n = Matrix::from_ints(&f, &[&[0, 1], &[0, 0]]);
        let form = nilpotent_jordan(&NilMatrix::new(n).unwrap()).unwrap();
        assert_eq!(form.p, Matrix::from_ints(&f, &[&[0, 1], &[1, 0]]));
        assert_eq!(form.j.matrix(), &Matrix::from_ints(&f, &[&[0, 0], &[1, 0]]));

        // a 2-block hidden in a permuted basis
        let n = Matrix::from_ints(&f, &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        let form = nilpotent_jordan(&NilMatrix::new(n.clone()).unwrap()).unwrap();
        assert_eq!(form.blocks, vec![2, 1]);
        assert_eq!(form.p.mul(&n).mul(&form.p.inverse().unwrap()), *form.j.matrix());
    }

    #[test]
    fn det_normalize_examples() {
        let f = q();
        let b = PolyMatrix::from_int_coeffs(&f, &[&[&[1], &[0, 1]], &[&[], &[1]]]).unwrap();
        assert_eq!(det_normalize(&b).unwrap(), b);
        let two = PolyMatrix::from_int_coeffs(&f, &[&[&[2], &[]], &[&[], &[2]]]).unwrap();
        let half = f.from_ratio(1, 2).unwrap();
        assert_eq!(det_normalize(&two).unwrap(), PolyMatrix::identity(&f, 2).scale(&half));
        let t = PolyMatrix::from_int_coeffs(&f, &[&[&[0, 1], &[]], &[&[], &[1]]]).unwrap();
        assert_eq!(det_normalize(&t), Err(Error::NonConstantDeterminant));
    }

    #[test]
    fn action_examples() {
        let f = q();
        let b = ExpMatrix::new(PolyMatrix::from_int_coeffs(&f, &[&[&[1], &[0, 1]], &[&[], &[1]]]).unwrap()).unwrap();
        let act = action_of(&b);
        let x0 = MPoly::var(&f, 3, 0);
        let x1 = MPoly::var(&f, 3, 1);
        let t = MPoly::var(&f, 3, 2);
        assert_eq!(act.components()[0], &x0 + &(&t * &x1));
        assert_eq!(act.components()[1], x1);

        let id = action_of(&ExpMatrix::identity(&f, 3));
        for (i, c) in id.components().iter().enumerate() {
            assert_eq!(*c, MPoly::var(&f, 4, i));
        }
    }

    #[test]
    fn action_of_last_column_family() {
        // [[1,0,α₂],[0,1,α₁],[0,0,1]] acts as (x₀ + α₂x₂ : x₁ + α₁x₂ : x₂)
        let f = Field::prime(2).unwrap();
        let a = ExpMatrix::new(PolyMatrix::from_int_coeffs(&f, &[&[&[1], &[], &[0, 0, 1]], &[&[], &[1], &[0, 1]], &[&[], &[], &[1]]]).unwrap()).unwrap();
        let act = action_of(&a);
        let x = |i| MPoly::var(&f, 4, i);
        let t = x(3);
        assert_eq!(act.components()[0], &x(0) + &(&(&t * &t) * &x(2)));
        assert_eq!(act.components()[1], &x(1) + &(&t * &x(2)));
        assert_eq!(act.components()[2], x(2));
    }
}
