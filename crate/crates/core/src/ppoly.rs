//! Additive polynomials `Σ cᵢ T^{pⁱ}` and their Ore composition.
//!
//! Besides the ring operations this module holds the two combinatorial
//! engines of the 3×3 classification: the degree-lowering reduction of a pair
//! of additive polynomials by shears, and the reduced row-echelon canonical
//! form of the span of a tuple.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::poly::Poly;

/// `Σ cᵢ T^{pⁱ}` stored as `(c₀, …, c_e)`, trailing zeros stripped.
#[derive(Clone, PartialEq, Eq)]
pub struct PPoly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PPoly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Result<PPoly> {
        if !field.is_finite() {
            return Err(Error::WrongCharacteristic("additive polynomials need characteristic p > 0".into()));
        }
        let mut p = PPoly { field: field.clone(), coeffs };
        p.trim();
        Ok(p)
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Result<PPoly> {
        PPoly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Result<PPoly> {
        PPoly::new(field, Vec::new())
    }

    /// `c · T^{p^i}`.
    pub fn monomial(field: &Field, c: Elem, i: usize) -> Result<PPoly> {
        let mut coeffs = vec![field.zero(); i + 1];
        coeffs[i] = c;
        PPoly::new(field, coeffs)
    }

    /// The identity `T`.
    pub fn t(field: &Field) -> Result<PPoly> {
        PPoly::monomial(field, field.one(), 0)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    /// Validates that `f` only has terms `T^{pⁱ}`.
    pub fn from_poly(f: &Poly) -> Result<PPoly> {
        let field = f.field();
        let p = field.characteristic();
        if p == 0 {
            return Err(Error::WrongCharacteristic("additive polynomials need characteristic p > 0".into()));
        }
        let mut coeffs = Vec::new();
        for (k, c) in f.coeffs().iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            let i = power_index(k as u64, p).ok_or(Error::NotAdditive { exponent: k })?;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, field.zero());
            }
            coeffs[i] = c.clone();
        }
        PPoly::new(field, coeffs)
    }

    pub fn to_poly(&self) -> Poly {
        let p = self.field.characteristic() as usize;
        let Some(e) = self.degree() else {
            return Poly::zero(&self.field);
        };
        let mut coeffs = vec![self.field.zero(); p.pow(e as u32) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[p.pow(i as u32)] = c.clone();
        }
        Poly::new(&self.field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index `e` of the leading term `c_e T^{p^e}`, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as an ordinary polynomial.
    pub fn poly_degree(&self) -> Option<u64> {
        self.degree().map(|e| self.field.characteristic().pow(e as u32))
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    fn check(&self, other: &PPoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &PPoly) -> Result<PPoly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        PPoly::new(f, (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &PPoly) -> Result<PPoly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        PPoly::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn scale(&self, c: &Elem) -> PPoly {
        let f = &self.field;
        let mut p = PPoly { field: f.clone(), coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect() };
        p.trim();
        p
    }

    /// `self ∘ inner`, i.e. `self(inner(T))`. The coefficient of `T^{p^{i+j}}`
    /// collects `aᵢ · bⱼ^{pⁱ}`.
    pub fn compose(&self, inner: &PPoly) -> Result<PPoly> {
        self.check(inner)?;
        let f = &self.field;
        if self.is_zero() || inner.is_zero() {
            return PPoly::zero(f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + inner.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in inner.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let twisted = f.frobenius_iter(b, i);
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, &twisted));
            }
        }
        PPoly::new(f, coeffs)
    }

    /// `(leading coefficient, monic multiple)`; `None` for zero.
    pub fn monic(&self) -> Option<(Elem, PPoly)> {
        let lc = self.leading()?.clone();
        let inv = self.field.inv(&lc).expect("leading coefficient is nonzero");
        Some((lc, self.scale(&inv)))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }
}

/// `Some(i)` when `k = p^i`.
fn power_index(k: u64, p: u64) -> Option<usize> {
    let mut v = 1u64;
    let mut i = 0;
    while v < k {
        v *= p;
        i += 1;
    }
    (v == k).then_some(i)
}

impl fmt::Display for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().format_in("T"))
    }
}

impl fmt::Debug for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PPoly({self} over {})", self.field)
    }
}

/// Slot of a pair `(α₁, α₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    First,
    Second,
}

impl Slot {
    pub fn other(self) -> Slot {
        match self {
            Slot::First => Slot::Second,
            Slot::Second => Slot::First,
        }
    }
}

/// Which of the degree comparisons `deg α₁ <, =, > deg α₂` a step handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReduceCase {
    /// `deg α₁ < deg α₂`
    I,
    /// `deg α₁ = deg α₂`
    II,
    /// `deg α₁ > deg α₂`
    III,
}

/// One elementary move `target ← target − λ ∘ other`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shear {
    pub target: Slot,
    pub lambda: PPoly,
}

impl Shear {
    pub fn apply(&self, pair: &(PPoly, PPoly)) -> Result<(PPoly, PPoly)> {
        let (a1, a2) = pair;
        Ok(match self.target {
            Slot::First => (a1.sub(&self.lambda.compose(a2)?)?, a2.clone()),
            Slot::Second => (a1.clone(), a2.sub(&self.lambda.compose(a1)?)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReduceStep {
    pub case: ReduceCase,
    pub input: (PPoly, PPoly),
    /// One shear, or two in the equal-degree case when the first leaves both
    /// entries nonzero.
    pub shears: Vec<Shear>,
    pub output: (PPoly, PPoly),
}

impl ReduceStep {
    /// The multiplier of the first shear.
    pub fn lambda(&self) -> &PPoly {
        &self.shears[0].lambda
    }

    /// Pairs before and after every shear, starting with the input.
    pub fn states(&self) -> Result<Vec<(PPoly, PPoly)>> {
        let mut out = vec![self.input.clone()];
        for s in &self.shears {
            let next = s.apply(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn is_terminal(&self) -> bool {
        self.output.0.is_zero() || self.output.1.is_zero()
    }
}

/// Multiplier `(d / c^{p^{f-e}}) T^{p^{f-e}}` cancelling the leading term
/// `d T^{p^f}` of `target` against the leading term `c T^{p^e}` of `source`.
fn eliminator(target: &PPoly, source: &PPoly) -> Result<PPoly> {
    let f = target.field();
    let (tf, se) = (target.degree().unwrap(), source.degree().unwrap());
    debug_assert!(tf >= se);
    let shift = tf - se;
    let c = f.frobenius_iter(source.leading().unwrap(), shift);
    let ratio = f.div(target.leading().unwrap(), &c)?;
    PPoly::monomial(f, ratio, shift)
}

/// One reduction step on a pair of nonzero additive polynomials. Afterwards
/// either one entry vanishes or both are nonzero and the larger degree has
/// strictly dropped.
pub fn reduce_step(a1: &PPoly, a2: &PPoly) -> Result<ReduceStep> {
    a1.check(a2)?;
    if a1.is_zero() || a2.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (e, f) = (a1.degree().unwrap(), a2.degree().unwrap());
    let input = (a1.clone(), a2.clone());
    let case = match e.cmp(&f) {
        std::cmp::Ordering::Less => ReduceCase::I,
        std::cmp::Ordering::Equal => ReduceCase::II,
        std::cmp::Ordering::Greater => ReduceCase::III,
    };
    let mut shears = Vec::new();
    let mut state = input.clone();
    match case {
        ReduceCase::I | ReduceCase::II => {
            let shear = Shear { target: Slot::Second, lambda: eliminator(a2, a1)? };
            state = shear.apply(&state)?;
            shears.push(shear);
            if case == ReduceCase::II && !state.1.is_zero() {
                // the untouched first entry still has the old top degree
                let shear = Shear { target: Slot::First, lambda: eliminator(&state.0, &state.1)? };
                state = shear.apply(&state)?;
                shears.push(shear);
            }
        }
        ReduceCase::III => {
            let shear = Shear { target: Slot::First, lambda: eliminator(a1, a2)? };
            state = shear.apply(&state)?;
            shears.push(shear);
        }
    }
    Ok(ReduceStep { case, input, shears, output: state })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReduceTrace {
    /// The surviving nonzero entry.
    pub gamma: PPoly,
    pub slot: Slot,
    pub steps: Vec<ReduceStep>,
}

/// Iterates [`reduce_step`] until one entry vanishes.
pub fn reduce_loop(a1: &PPoly, a2: &PPoly) -> Result<ReduceTrace> {
    if a1.is_zero() || a2.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut steps = Vec::new();
    let mut pair = (a1.clone(), a2.clone());
    loop {
        let step = reduce_step(&pair.0, &pair.1)?;
        pair = step.output.clone();
        steps.push(step);
        if pair.1.is_zero() {
            return Ok(ReduceTrace { gamma: pair.0, slot: Slot::First, steps });
        }
        if pair.0.is_zero() {
            return Ok(ReduceTrace { gamma: pair.1, slot: Slot::Second, steps });
        }
    }
}

/// Coefficient rows of a tuple, columns ordered from the highest index `E`
/// down to 0.
fn coefficient_matrix(field: &Field, tuple: &[PPoly]) -> (Matrix, usize) {
    let top = tuple.iter().filter_map(PPoly::degree).max().unwrap_or(0);
    let rows = tuple.iter().map(|a| (0..=top).map(|j| a.coeff(top - j)).collect()).collect();
    (Matrix::from_rows(field, rows), top)
}

/// Reduced row-echelon basis of the span, sorted by increasing degree. Each
/// basis element is monic and vanishes at the leading index of every other.
pub fn span_basis(field: &Field, tuple: &[PPoly]) -> Result<Vec<PPoly>> {
    for a in tuple {
        if a.field() != field {
            return Err(Error::MixedFields);
        }
    }
    if tuple.is_empty() {
        return Ok(Vec::new());
    }
    let (m, top) = coefficient_matrix(field, tuple);
    let (r, pivots) = m.rref();
    let mut basis = Vec::with_capacity(pivots.len());
    for row in (0..pivots.len()).rev() {
        let coeffs = (0..=top).map(|i| r.get(row, top - i).clone()).collect();
        basis.push(PPoly::new(field, coeffs)?);
    }
    Ok(basis)
}

/// Canonical representative of the GL-orbit of a tuple: its echelon basis,
/// which must have the expected dimension.
pub fn span_canonical(field: &Field, tuple: &[PPoly], dim_expected: usize) -> Result<Vec<PPoly>> {
    let basis = span_basis(field, tuple)?;
    if basis.len() != dim_expected {
        return Err(Error::DimensionMismatch(format!("span has dimension {}, expected {dim_expected}", basis.len())));
    }
    Ok(basis)
}

/// Matrix `Q` with `tuple = basis · Q`, for a basis from [`span_basis`].
pub fn coordinates(field: &Field, tuple: &[PPoly], basis: &[PPoly]) -> Result<Matrix> {
    let mut q = Matrix::zeros(field, basis.len(), tuple.len());
    for (i, b) in basis.iter().enumerate() {
        let lead = b.degree().ok_or(Error::ZeroInput)?;
        for (j, a) in tuple.iter().enumerate() {
            q.set(i, j, a.coeff(lead));
        }
    }
    for (j, a) in tuple.iter().enumerate() {
        let mut combo = PPoly::zero(field)?;
        for (i, b) in basis.iter().enumerate() {
            combo = combo.add(&b.scale(q.get(i, j)))?;
        }
        if combo != *a {
            return Err(Error::DimensionMismatch("tuple is not in the span of the basis".into()));
        }
    }
    Ok(q)
}

/// Whether the entries are linearly independent, and the span dimension.
pub fn linear_independent(field: &Field, tuple: &[PPoly]) -> Result<(bool, usize)> {
    let dim = span_basis(field, tuple)?.len();
    Ok((dim == tuple.len(), dim))
}

/// All additive polynomials with indices `≤ max_index` over a finite field, in
/// lexicographic coefficient order (`c₀` fastest).
pub fn enumerate_ppolys(field: &Field, max_index: usize) -> Result<Vec<PPoly>> {
    let q = field.order().ok_or(Error::NotFiniteField)?;
    let len = max_index + 1;
    let total = q.checked_pow(len as u32).ok_or(Error::TooLarge { candidates: u128::MAX, ceiling: u64::MAX })?;
    (0..total)
        .map(|mut code| {
            let coeffs = (0..len)
                .map(|_| {
                    let c = field.from_code(code % q);
                    code /= q;
                    c
                })
                .collect();
            PPoly::new(field, coeffs)
        })
        .collect()
}
