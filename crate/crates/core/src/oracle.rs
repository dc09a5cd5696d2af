//! Exhaustive ground truth over small finite fields: family enumeration and
//! brute-force searches for conjugators and `GL(2)` tuple equivalences.
//!
//! Every search walks candidates in a fixed order (matrix entries read as
//! base-`q` digits, row-major, first entry fastest) and returns the first hit,
//! so results do not depend on the execution strategy.

use crate::classify::{match_family, Family, FamilyForm};
use crate::error::{Error, Result};
use crate::exec::{find_first_index, Strategy};
use crate::expmat::{ExpMatrix, PolyMatrix};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::ppoly::{enumerate_ppolys, PPoly};

/// Default ceiling on enumerated matrices.
pub const ENUM_CEILING: u64 = 10_000_000;
/// Default ceiling on search candidates.
pub const SEARCH_CEILING: u64 = 100_000_000;
/// No override may exceed this.
pub const HARD_CEILING: u64 = 100_000_000;
pub const CEILING_ENV: &str = "EXPMAT_MAX_CANDIDATES";

/// The ceiling in force: `EXPMAT_MAX_CANDIDATES` if set (capped at
/// [`HARD_CEILING`]), else `default`.
pub fn ceiling(default: u64) -> u64 {
    std::env::var(CEILING_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .map_or(default, |v| v.min(HARD_CEILING))
}

fn check_size(candidates: u128, ceiling: u64) -> Result<u64> {
    if candidates > ceiling as u128 {
        Err(Error::TooLarge { candidates, ceiling })
    } else {
        Ok(candidates as u64)
    }
}

fn field_order(field: &Field) -> Result<u64> {
    field.order().ok_or(Error::NotFiniteField)
}

#[derive(Debug, Clone)]
pub struct EnumSpec {
    pub field: Field,
    pub n: usize,
    pub family: Option<Family>,
    /// Largest index `i` of a term `T^{pⁱ}`.
    pub degree_bound: usize,
}

impl EnumSpec {
    pub fn new(field: &Field, n: usize, family: Option<Family>, degree_bound: usize) -> EnumSpec {
        EnumSpec { field: field.clone(), n, family, degree_bound }
    }

    /// The families enumerated, in order.
    pub fn families(&self) -> Result<Vec<Family>> {
        let p = self.field.characteristic();
        let fams = match (self.n, self.family) {
            (2, None) | (2, Some(Family::Upper2)) => vec![Family::Upper2],
            (3, None) if p == 2 => vec![Family::A12, Family::A21],
            (3, None) => vec![Family::A12, Family::A21, Family::J3],
            (3, Some(Family::J3)) if p == 2 => return Err(Error::WrongCharacteristic("J3 needs an odd characteristic".into())),
            (3, Some(f)) if f != Family::Upper2 => vec![f],
            _ => return Err(Error::DimensionMismatch(format!("no family of size {} matches the filter", self.n))),
        };
        Ok(fams)
    }

    /// Number of matrices [`enumerate_family`] would produce.
    pub fn count(&self) -> Result<u128> {
        let q = field_order(&self.field)? as u128;
        let per = q.checked_pow(self.degree_bound as u32 + 1).ok_or(Error::TooLarge { candidates: u128::MAX, ceiling: ENUM_CEILING })?;
        let mut total = 0u128;
        for fam in self.families()? {
            total += match fam {
                Family::Upper2 | Family::A11 => per,
                Family::A12 | Family::A21 => per * per,
                Family::J3 => (per - 1) * per,
            };
        }
        Ok(total)
    }
}

/// Every family matrix with parameters of index `≤ degree_bound`, parameter
/// tuples in lexicographic order (first parameter outermost).
pub fn enumerate_family(spec: &EnumSpec) -> Result<Vec<ExpMatrix>> {
    if spec.degree_bound > 3 {
        return Err(Error::Unsupported("degree bound above 3".into()));
    }
    check_size(spec.count()?, ceiling(ENUM_CEILING))?;
    let ppolys = enumerate_ppolys(&spec.field, spec.degree_bound)?;
    let mut out = Vec::new();
    for fam in spec.families()? {
        let mut push = |params: Vec<PPoly>| -> Result<()> {
            let form = FamilyForm::new(fam, params)?;
            let m = ExpMatrix::new(form.matrix())
                .map_err(|e| Error::InternalInconsistency(format!("enumerated {fam} matrix is not exponential: {e}")))?;
            out.push(m);
            Ok(())
        };
        match fam.arity() {
            1 => {
                for a in &ppolys {
                    push(vec![a.clone()])?;
                }
            }
            _ => {
                for a in &ppolys {
                    if fam == Family::J3 && a.is_zero() {
                        continue;
                    }
                    for b in &ppolys {
                        push(vec![a.clone(), b.clone()])?;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The `code`-th `rows × cols` matrix in search order.
pub fn matrix_from_code(field: &Field, rows: usize, cols: usize, mut code: u64) -> Matrix {
    let q = field.order().expect("finite field");
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, field.from_code(code % q));
            code /= q;
        }
    }
    m
}

fn search_space(field: &Field, entries: u32) -> Result<u64> {
    let q = field_order(field)? as u128;
    let total = q.checked_pow(entries).unwrap_or(u128::MAX);
    check_size(total, ceiling(SEARCH_CEILING))
}

fn padded(mats: &[Matrix], k: usize, zero: &Matrix) -> Matrix {
    mats.get(k).cloned().unwrap_or_else(|| zero.clone())
}

/// The first invertible `P` with `P·A = B·P` coefficientwise, i.e.
/// `P·A·P⁻¹ = B`. The identity is tried first.
pub fn brute_linear_equiv(a: &PolyMatrix, b: &PolyMatrix, strategy: Strategy) -> Result<Option<Matrix>> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch("matrices of different sizes".into()));
    }
    if a.field() != b.field() {
        return Err(Error::MixedFields);
    }
    let f = a.field();
    let n = a.n();
    let total = search_space(f, (n * n) as u32)?;
    if a == b {
        return Ok(Some(Matrix::identity(f, n)));
    }
    let (am, bm) = (a.coefficient_matrices(), b.coefficient_matrices());
    if am.len() != bm.len() {
        // conjugation preserves the degree
        return Ok(None);
    }
    let zero = Matrix::zeros(f, n, n);
    let hit = find_first_index(strategy, total, |code| {
        let p = matrix_from_code(f, n, n, code);
        (0..am.len()).all(|k| p.mul(&padded(&am, k, &zero)) == padded(&bm, k, &zero).mul(&p)) && p.inverse().is_ok()
    });
    Ok(hit.map(|code| matrix_from_code(f, n, n, code)))
}

/// The first invertible `Q` with `(α₁ α₂) = (β₁ β₂)·Q`.
pub fn brute_gl2_tuple_equiv(alpha: &[PPoly; 2], beta: &[PPoly; 2], strategy: Strategy) -> Result<Option<Matrix>> {
    let f = alpha[0].field();
    if alpha.iter().chain(beta).any(|x| x.field() != f) {
        return Err(Error::MixedFields);
    }
    let total = search_space(f, 4)?;
    let hit = find_first_index(strategy, total, |code| {
        let q = matrix_from_code(f, 2, 2, code);
        (0..2).all(|j| {
            let combo = beta[0].scale(q.get(0, j)).add(&beta[1].scale(q.get(1, j))).expect("shared field");
            combo == alpha[j]
        }) && q.inverse().is_ok()
    });
    Ok(hit.map(|code| matrix_from_code(f, 2, 2, code)))
}

/// The first `P ∈ GL(3, F_q)` with `P·A·P⁻¹` in a family shape.
pub fn brute_conjugate_to_family(a: &ExpMatrix, strategy: Strategy) -> Result<(Matrix, FamilyForm)> {
    let f = a.field();
    if a.n() != 3 {
        return Err(Error::DimensionMismatch("family search is for 3×3 matrices".into()));
    }
    if field_order(f)? > 4 {
        return Err(Error::TooLarge { candidates: (field_order(f)? as u128).pow(9), ceiling: 4u64.pow(9) });
    }
    conjugate_to_family_unchecked(a.matrix(), strategy)
}

/// As [`brute_conjugate_to_family`], without requiring the input to be
/// exponential. The identity is tried before the enumeration order.
pub fn conjugate_to_family_unchecked(a: &PolyMatrix, strategy: Strategy) -> Result<(Matrix, FamilyForm)> {
    let f = a.field();
    if let Some(form) = match_family(a) {
        return Ok((Matrix::identity(f, 3), form));
    }
    let total = search_space(f, 9)?;
    let hit = find_first_index(strategy, total, |code| {
        let p = matrix_from_code(f, 3, 3, code);
        match a.conjugate(&p) {
            Ok(c) => match_family(&c).is_some(),
            Err(_) => false,
        }
    });
    let code = hit.ok_or(Error::NotFound)?;
    let p = matrix_from_code(f, 3, 3, code);
    let form = match_family(&a.conjugate(&p)?).expect("found by the search");
    Ok((p, form))
}
