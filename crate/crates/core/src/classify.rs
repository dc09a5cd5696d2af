//! Birational classification of exponential matrices.
//!
//! * characteristic 0, any size: the identity, or the class of
//!   `[[1,T],[0,1]] ⊕ I`;
//! * characteristic p, 2×2: the identity, or a monic additive polynomial;
//! * characteristic p, 3×3: the identity, a monic additive polynomial (a
//!   line), or an echelon pair of independent ones (a plane).
//!
//! Every classification comes with a witness chain from the input to a
//! canonical matrix of its class.

use std::fmt;

use crate::birat::{sigma_gl2, sigma_jordan_to_a21, sigma_reduce, sigma_scaling, Witness, WitnessStep};
use crate::error::{Error, Result};
use crate::exec::{map_collect, Strategy};
use crate::expmat::{log_exponential, nilpotent_jordan, ExpMatrix, PolyMatrix};
use crate::field::{Elem, Field};
use crate::linalg::{rank_of, Matrix};
use crate::lnd::LinDerivation;
use crate::poly::Poly;
use crate::ppoly::{coordinates, reduce_step, span_basis, PPoly};

/// The matrix shapes the classifier works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `[[1,α₁,α₂],[0,1,0],[0,0,1]]`
    A12,
    /// `[[1,0,α₂],[0,1,α₁],[0,0,1]]`
    A21,
    /// `[[1,α₁,½α₁²+α₂],[0,1,α₁],[0,0,1]]`, odd `p`, `α₁ ≠ 0`
    J3,
    /// `[[1,0,α],[0,1,0],[0,0,1]]`
    A11,
    /// `[[1,α],[0,1]]`
    Upper2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A12 => "A12",
            Family::A21 => "A21",
            Family::J3 => "J3",
            Family::A11 => "A11",
            Family::Upper2 => "Upper2",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        [Family::A12, Family::A21, Family::J3, Family::A11, Family::Upper2].into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }

    pub fn size(self) -> usize {
        if self == Family::Upper2 {
            2
        } else {
            3
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::A11 | Family::Upper2 => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyForm {
    pub family: Family,
    /// `(α₁, α₂)` for the two-parameter shapes, `(α)` otherwise.
    pub params: Vec<PPoly>,
}

impl FamilyForm {
    pub fn new(family: Family, params: Vec<PPoly>) -> Result<FamilyForm> {
        if params.len() != family.arity() {
            return Err(Error::DimensionMismatch(format!("{family} takes {} parameters", family.arity())));
        }
        if family == Family::J3 {
            let p = params[0].field().characteristic();
            if p == 2 {
                return Err(Error::WrongCharacteristic("J3 needs an odd characteristic".into()));
            }
            if params[0].is_zero() {
                return Err(Error::ZeroInput);
            }
        }
        Ok(FamilyForm { family, params })
    }

    pub fn matrix(&self) -> PolyMatrix {
        let f = self.params[0].field();
        let ps: Vec<Poly> = self.params.iter().map(PPoly::to_poly).collect();
        let (z, o) = (Poly::zero(f), Poly::one(f));
        let rows = match self.family {
            Family::Upper2 => vec![vec![o.clone(), ps[0].clone()], vec![z, o]],
            Family::A11 => vec![vec![o.clone(), z.clone(), ps[0].clone()], vec![z.clone(), o.clone(), z.clone()], vec![z.clone(), z, o]],
            Family::A12 => vec![vec![o.clone(), ps[0].clone(), ps[1].clone()], vec![z.clone(), o.clone(), z.clone()], vec![z.clone(), z, o]],
            Family::A21 => vec![vec![o.clone(), z.clone(), ps[1].clone()], vec![z.clone(), o.clone(), ps[0].clone()], vec![z.clone(), z, o]],
            Family::J3 => {
                let half = f.inv(&f.from_int(2)).expect("odd characteristic");
                let corner = &(&ps[0] * &ps[0]).scale(&half) + &ps[1];
                vec![vec![o.clone(), ps[0].clone(), corner], vec![z.clone(), o.clone(), ps[0].clone()], vec![z.clone(), z, o]]
            }
        };
        PolyMatrix::new(f, rows).expect("square by construction")
    }
}

fn additive(p: &Poly) -> Option<PPoly> {
    PPoly::from_poly(p).ok()
}

/// Matches the displayed shapes literally, checking `A12`, then `A21`, then
/// `J3` (and `Upper2` for 2×2). `A11` inputs come back as `A12` with `α₁ = 0`.
pub fn match_family(a: &PolyMatrix) -> Option<FamilyForm> {
    let f = a.field();
    if f.characteristic() == 0 {
        return None;
    }
    let e = |i, j| a.entry(i, j);
    let zero = |i, j| e(i, j).is_zero();
    let one = |i, j| e(i, j).is_one();
    match a.n() {
        2 => {
            if one(0, 0) && one(1, 1) && zero(1, 0) {
                return Some(FamilyForm { family: Family::Upper2, params: vec![additive(e(0, 1))?] });
            }
            None
        }
        3 => {
            if !(one(0, 0) && one(1, 1) && one(2, 2) && zero(1, 0) && zero(2, 0) && zero(2, 1)) {
                return None;
            }
            if zero(1, 2) {
                return Some(FamilyForm { family: Family::A12, params: vec![additive(e(0, 1))?, additive(e(0, 2))?] });
            }
            if zero(0, 1) {
                return Some(FamilyForm { family: Family::A21, params: vec![additive(e(1, 2))?, additive(e(0, 2))?] });
            }
            if e(0, 1) == e(1, 2) && f.characteristic() != 2 {
                let a1 = e(0, 1);
                let half = f.inv(&f.from_int(2)).ok()?;
                let a2 = e(0, 2) - &(a1 * a1).scale(&half);
                return FamilyForm::new(Family::J3, vec![additive(a1)?, additive(&a2)?]).ok();
            }
            None
        }
        _ => None,
    }
}

/// A family form together with the conjugator `P` (`P·A·P⁻¹` = form matrix)
/// that produced it, `None` when the input already had the shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub form: FamilyForm,
    pub conjugator: Option<Matrix>,
}

/// Brings a 2×2 or 3×3 exponential matrix in positive characteristic into
/// one of the family shapes.
///
/// Inputs already in shape are accepted as they are. Otherwise the matrix is
/// conjugated to upper unitriangular form along a flag of common invariant
/// subspaces, and the 3×3 case with both superdiagonal entries nonzero is
/// rescaled into the `J3` shape.
pub fn recognize_family(a: &ExpMatrix) -> Result<Recognition> {
    let m = a.matrix();
    if m.field().characteristic() == 0 {
        return Err(Error::WrongCharacteristic("family shapes are defined in characteristic p".into()));
    }
    if !(2..=3).contains(&m.n()) {
        return Err(Error::Unsupported(format!("family shapes exist for sizes 2 and 3, not {}", m.n())));
    }
    if let Some(form) = match_family(m) {
        return Ok(Recognition { form, conjugator: None });
    }
    let p = triangularize(m)?;
    let u = m.conjugate(&p)?;
    if let Some(form) = match_family(&u) {
        return Ok(Recognition { form, conjugator: Some(p) });
    }
    // 3×3 with a = u01, c = u12 both nonzero: c = κ·a, and diag(1,1,κ)
    // equalises them
    let f = m.field();
    let (a01, c12) = (u.entry(0, 1), u.entry(1, 2));
    let lead = a01.degree().ok_or(Error::NotNormalized)?;
    let kappa = f.div(&c12.coeff(lead), &a01.coeff(lead))?;
    if f.is_zero(&kappa) || a01.scale(&kappa) != *c12 {
        return Err(Error::NotNormalized);
    }
    let d = Matrix::diagonal(f, &[f.one(), f.one(), kappa]);
    let p2 = d.mul(&p);
    let u2 = m.conjugate(&p2)?;
    let form = match_family(&u2).ok_or(Error::NotNormalized)?;
    Ok(Recognition { form, conjugator: Some(p2) })
}

/// `P` with `P·A·P⁻¹` upper unitriangular. Built from a flag `V_1 ⊂ V_2 ⊂ …`
/// where each step adds a vector that every coefficient of `A − I` sends into
/// the previous subspace.
pub fn triangularize(a: &PolyMatrix) -> Result<Matrix> {
    let f = a.field();
    let n = a.n();
    let mut nils = a.coefficient_matrices();
    if nils.is_empty() {
        return Err(Error::TriangularizationFailed);
    }
    nils[0] = nils[0].add(&Matrix::identity(f, n).scale(&f.from_int(-1)));
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    while basis.len() < n {
        // rows spanning the annihilator of the current subspace
        let ann: Vec<Vec<Elem>> = if basis.is_empty() {
            Matrix::identity(f, n).to_rows()
        } else {
            Matrix::from_rows(f, basis.clone()).kernel()
        };
        let mut stacked = Vec::new();
        for nk in &nils {
            let prod = Matrix::from_rows(f, ann.clone()).mul(nk);
            stacked.extend(prod.to_rows());
        }
        let candidates = Matrix::from_rows(f, stacked).kernel();
        let rank = rank_of(f, &basis);
        let next = candidates.into_iter().find(|v| {
            let mut ext = basis.clone();
            ext.push(v.clone());
            rank_of(f, &ext) > rank
        });
        match next {
            Some(v) => basis.push(v),
            None => return Err(Error::TriangularizationFailed),
        }
    }
    let s = Matrix::from_columns(f, &basis);
    s.inverse().map_err(|_| Error::TriangularizationFailed)
}

/// The invariant of a birational class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BirClass {
    Identity,
    Char0Standard,
    /// Monic additive polynomial.
    Line(PPoly),
    /// Echelon pair of independent additive polynomials, increasing degree.
    Plane(PPoly, PPoly),
}

impl BirClass {
    pub fn kind(&self) -> &'static str {
        match self {
            BirClass::Identity => "identity",
            BirClass::Char0Standard => "char0-standard",
            BirClass::Line(_) => "line",
            BirClass::Plane(..) => "plane",
        }
    }

    /// The canonical matrix of the class among `n × n` matrices.
    pub fn canonical_matrix(&self, field: &Field, n: usize) -> Result<PolyMatrix> {
        match self {
            BirClass::Identity => Ok(PolyMatrix::identity(field, n)),
            BirClass::Char0Standard => {
                if n < 2 {
                    return Err(Error::DimensionMismatch("the standard class needs n ≥ 2".into()));
                }
                Ok(standard_matrix(field, n))
            }
            BirClass::Line(g) => match n {
                2 => Ok(FamilyForm::new(Family::Upper2, vec![g.clone()])?.matrix()),
                3 => Ok(FamilyForm::new(Family::A11, vec![g.clone()])?.matrix()),
                _ => Err(Error::DimensionMismatch("line classes live in sizes 2 and 3".into())),
            },
            BirClass::Plane(g1, g2) => {
                if n != 3 {
                    return Err(Error::DimensionMismatch("plane classes live in size 3".into()));
                }
                Ok(FamilyForm::new(Family::A12, vec![g1.clone(), g2.clone()])?.matrix())
            }
        }
    }
}

impl fmt::Display for BirClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BirClass::Identity => f.write_str("Identity"),
            BirClass::Char0Standard => f.write_str("Char0Standard"),
            BirClass::Line(g) => write!(f, "Line({g})"),
            BirClass::Plane(a, b) => write!(f, "Plane({a}, {b})"),
        }
    }
}

/// `[[1,T],[0,1]] ⊕ I_{n−2}`.
pub fn standard_matrix(field: &Field, n: usize) -> PolyMatrix {
    let mut m = PolyMatrix::identity(field, n);
    m.set(0, 1, Poly::t(field));
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: BirClass,
    pub canonical: PolyMatrix,
    /// From the input to `canonical`.
    pub witness: Witness,
    /// Whether the witness was re-verified after construction.
    pub verified: bool,
}

/// Accumulates witness steps while walking a pipeline.
struct Chain {
    witness: Witness,
}

impl Chain {
    fn new(a: &PolyMatrix) -> Chain {
        Chain { witness: Witness::trivial(a) }
    }

    fn current(&self) -> &PolyMatrix {
        &self.witness.target
    }

    fn conjugate(&mut self, p: &Matrix) -> Result<()> {
        if p.is_identity() {
            return Ok(());
        }
        let step = WitnessStep::conjugation(self.current(), p)?;
        self.witness.push(step);
        Ok(())
    }

    fn birational(&mut self, to: PolyMatrix, sigma: crate::birat::ProjMap, sigma_inv: crate::birat::ProjMap) {
        if to == *self.current() && sigma.is_projective_identity() {
            return;
        }
        let step = WitnessStep::birational(self.current(), &to, sigma, sigma_inv);
        self.witness.push(step);
    }

    fn finish(self, class: BirClass, verify: bool) -> Result<Classification> {
        let canonical = self.witness.target.clone();
        if verify {
            self.witness.verify()?;
        }
        Ok(Classification { class, canonical, witness: self.witness, verified: verify })
    }
}

/// Characteristic 0: `Identity` for `I_n`, otherwise `Char0Standard`, with
/// the chain `A → P·A·P⁻¹ = Exp_J → (straightened action) → [[1,T],[0,1]] ⊕ I`.
pub fn classify_char0(a: &ExpMatrix, verify: bool) -> Result<Classification> {
    let f = a.field();
    if f.characteristic() != 0 {
        return Err(Error::WrongCharacteristic("expected characteristic 0".into()));
    }
    let n = a.n();
    let mut chain = Chain::new(a.matrix());
    if a.is_identity() {
        return chain.finish(BirClass::Identity, verify);
    }
    let target = standard_matrix(f, n);
    if *a.matrix() == target {
        return chain.finish(BirClass::Char0Standard, verify);
    }
    let nil = log_exponential(a)?;
    let jordan = nilpotent_jordan(&nil)?;
    chain.conjugate(&jordan.p)?;
    let d = LinDerivation::from_matrix(jordan.j.matrix())?;
    let (sigma, sigma_inv) = d.straightening_map()?;
    let mut lower = PolyMatrix::identity(f, n);
    lower.set(1, 0, Poly::t(f));
    chain.birational(lower, sigma, sigma_inv);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, 1);
    chain.conjugate(&Matrix::permutation(f, &perm))?;
    debug_assert_eq!(*chain.current(), target);
    chain.finish(BirClass::Char0Standard, verify)
}

/// Characteristic p, 2×2: triangularize, then rescale the corner to monic.
pub fn classify_2x2(a: &ExpMatrix, verify: bool) -> Result<Classification> {
    let f = a.field();
    if f.characteristic() == 0 {
        return Err(Error::WrongCharacteristic("expected positive characteristic".into()));
    }
    if a.n() != 2 {
        return Err(Error::DimensionMismatch("expected a 2×2 matrix".into()));
    }
    let mut chain = Chain::new(a.matrix());
    if a.is_identity() {
        return chain.finish(BirClass::Identity, verify);
    }
    let rec = recognize_family(a)?;
    if let Some(p) = &rec.conjugator {
        chain.conjugate(p)?;
    }
    let alpha = &rec.form.params[0];
    let (lc, gamma) = alpha.monic().ok_or(Error::InternalInconsistency("nonidentity matrix with zero corner".into()))?;
    scale_corner(&mut chain, f, &lc, 1, 2, FamilyForm::new(Family::Upper2, vec![gamma.clone()])?.matrix())?;
    chain.finish(BirClass::Line(gamma), verify)
}

/// Appends `(…: λ x_slot :…)` carrying the current matrix to `to`.
fn scale_corner(chain: &mut Chain, f: &Field, lc: &Elem, slot: usize, n: usize, to: PolyMatrix) -> Result<()> {
    if f.is_one(lc) {
        return Ok(());
    }
    let sigma = sigma_scaling(lc, slot, n, f)?;
    let sigma_inv = sigma_scaling(&f.inv(lc)?, slot, n, f)?;
    chain.birational(to, sigma, sigma_inv);
    Ok(())
}

/// Characteristic p, 3×3.
pub fn classify_3x3(a: &ExpMatrix, verify: bool) -> Result<Classification> {
    let f = a.field().clone();
    if f.characteristic() == 0 {
        return Err(Error::WrongCharacteristic("expected positive characteristic".into()));
    }
    if a.n() != 3 {
        return Err(Error::DimensionMismatch("expected a 3×3 matrix".into()));
    }
    let mut chain = Chain::new(a.matrix());
    if a.is_identity() {
        return chain.finish(BirClass::Identity, verify);
    }
    let rec = recognize_family(a)?;
    if let Some(p) = &rec.conjugator {
        chain.conjugate(p)?;
    }
    let params = rec.form.params.clone();
    let class = match rec.form.family {
        Family::A12 => classify_row(&mut chain, &f, &params[0], &params[1])?,
        Family::A21 => classify_column(&mut chain, &f, &params[0], &params[1])?,
        Family::J3 => {
            let (sigma, sigma_inv) = sigma_jordan_to_a21(&f)?;
            let to = FamilyForm::new(Family::A21, params.clone())?.matrix();
            chain.birational(to, sigma, sigma_inv);
            classify_column(&mut chain, &f, &params[0], &params[1])?
        }
        Family::A11 => classify_single(&mut chain, &f, &params[0])?,
        Family::Upper2 => unreachable!("3×3 input"),
    };
    chain.finish(class, verify)
}

/// `[[1,α₁,α₂],[0,1,0],[0,0,1]]`.
fn classify_row(chain: &mut Chain, f: &Field, a1: &PPoly, a2: &PPoly) -> Result<BirClass> {
    let tuple = [a1.clone(), a2.clone()];
    let basis = span_basis(f, &tuple)?;
    match basis.len() {
        0 => Ok(BirClass::Identity),
        1 => {
            // α = (a·γ, b·γ); move the row (0, a, b) to (0, 0, 1)
            let gamma = basis[0].clone();
            let q = coordinates(f, &tuple, &basis)?;
            let (ca, cb) = (q.get(0, 0).clone(), q.get(0, 1).clone());
            let middle = if f.is_zero(&ca) { [f.zero(), f.one(), f.zero()] } else { [f.zero(), f.zero(), f.one()] };
            let p = Matrix::from_rows(
                f,
                vec![vec![f.one(), f.zero(), f.zero()], middle.to_vec(), vec![f.zero(), ca, cb]],
            );
            chain.conjugate(&p)?;
            debug_assert_eq!(*chain.current(), FamilyForm::new(Family::A11, vec![gamma.clone()])?.matrix());
            Ok(BirClass::Line(gamma))
        }
        _ => {
            let q = coordinates(f, &tuple, &basis)?;
            if !q.is_identity() {
                let sigma = sigma_gl2(&q)?;
                let sigma_inv = sigma_gl2(&q.inverse()?)?;
                let to = FamilyForm::new(Family::A12, basis.clone())?.matrix();
                chain.birational(to, sigma, sigma_inv);
            }
            Ok(BirClass::Plane(basis[0].clone(), basis[1].clone()))
        }
    }
}

/// `[[1,0,α₂],[0,1,α₁],[0,0,1]]`: shear until one entry vanishes.
fn classify_column(chain: &mut Chain, f: &Field, a1: &PPoly, a2: &PPoly) -> Result<BirClass> {
    let mut pair = (a1.clone(), a2.clone());
    while !pair.0.is_zero() && !pair.1.is_zero() {
        let step = reduce_step(&pair.0, &pair.1)?;
        let states = step.states()?;
        for (shear, next) in step.shears.iter().zip(&states[1..]) {
            let (sigma, sigma_inv) = sigma_reduce(&shear.lambda, shear.target)?;
            let to = FamilyForm::new(Family::A21, vec![next.0.clone(), next.1.clone()])?.matrix();
            chain.birational(to, sigma, sigma_inv);
        }
        pair = step.output;
    }
    match (pair.0.is_zero(), pair.1.is_zero()) {
        (true, true) => Ok(BirClass::Identity),
        // [[1,0,α₂],[0,1,0],[0,0,1]] is already the single-entry shape
        (true, false) => classify_single(chain, f, &pair.1),
        (false, true) => {
            let swap = Matrix::permutation(f, &[1, 0, 2]);
            chain.conjugate(&swap)?;
            classify_single(chain, f, &pair.0)
        }
        (false, false) => unreachable!(),
    }
}

/// `[[1,0,α],[0,1,0],[0,0,1]]`: rescale to monic.
fn classify_single(chain: &mut Chain, f: &Field, alpha: &PPoly) -> Result<BirClass> {
    let Some((lc, gamma)) = alpha.monic() else {
        return Ok(BirClass::Identity);
    };
    scale_corner(chain, f, &lc, 2, 3, FamilyForm::new(Family::A11, vec![gamma.clone()])?.matrix())?;
    Ok(BirClass::Line(gamma))
}

/// Dispatches on characteristic and size.
pub fn classify(a: &ExpMatrix, verify: bool) -> Result<Classification> {
    let f = a.field();
    let n = a.n();
    if n == 1 {
        return Chain::new(a.matrix()).finish(BirClass::Identity, verify);
    }
    if f.characteristic() == 0 {
        return classify_char0(a, verify);
    }
    match n {
        2 => classify_2x2(a, verify),
        3 => classify_3x3(a, verify),
        _ => Err(Error::Unsupported(format!("{n}×{n} matrices in positive characteristic"))),
    }
}

pub fn classify_batch(items: &[ExpMatrix], verify: bool, strategy: Strategy) -> Vec<Result<Classification>> {
    map_collect(strategy, items, |a| classify(a, verify))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub left: Classification,
    pub right: Classification,
    /// From the first matrix to the second, when equivalent.
    pub witness: Option<Witness>,
}

/// Compares the classes of `a` and `b`; when they agree, joins the two
/// chains through the shared canonical matrix.
pub fn equiv_bir(a: &ExpMatrix, b: &ExpMatrix, verify: bool) -> Result<Equivalence> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch("matrices of different sizes".into()));
    }
    if a.field() != b.field() {
        return Err(Error::MixedFields);
    }
    let left = classify(a, verify)?;
    let right = classify(b, verify)?;
    let equivalent = left.class == right.class;
    let witness = if equivalent { Some(left.witness.then(&right.witness.reverse())?) } else { None };
    if let (true, Some(w)) = (verify, &witness) {
        w.verify()?;
    }
    Ok(Equivalence { equivalent, left, right, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expmat::{exp_nilpotent, jordan_matrix, NilMatrix};

    fn pp(f: &Field, c: &[i64]) -> PPoly {
        PPoly::from_ints(f, c).unwrap()
    }

    fn exp(m: PolyMatrix) -> ExpMatrix {
        ExpMatrix::new(m).unwrap()
    }

    fn fam(family: Family, params: Vec<PPoly>) -> ExpMatrix {
        exp(FamilyForm::new(family, params).unwrap().matrix())
    }

    #[test]
    fn recognize_examples() {
        let f3 = Field::prime(3).unwrap();
        let a = fam(Family::A12, vec![pp(&f3, &[1]), pp(&f3, &[0, 1])]);
        let r = recognize_family(&a).unwrap();
        assert_eq!(r.form, FamilyForm::new(Family::A12, vec![pp(&f3, &[1]), pp(&f3, &[0, 1])]).unwrap());
        assert!(r.conjugator.is_none());

        let f2 = Field::prime(2).unwrap();
        let m = PolyMatrix::from_int_coeffs(&f2, &[&[&[1], &[], &[0, 1]], &[&[], &[1], &[0, 1]], &[&[], &[], &[1]]]).unwrap();
        let r = recognize_family(&exp(m)).unwrap();
        assert_eq!(r.form.family, Family::A21);
        assert_eq!(r.form.params, vec![pp(&f2, &[1]), pp(&f2, &[1])]);

        let half = f3.inv(&f3.from_int(2)).unwrap();
        let t = Poly::t(&f3);
        let (z, o) = (Poly::zero(&f3), Poly::one(&f3));
        let m = PolyMatrix::new(&f3, vec![vec![o.clone(), t.clone(), (&t * &t).scale(&half)], vec![z.clone(), o.clone(), t.clone()], vec![z.clone(), z, o]]).unwrap();
        let r = recognize_family(&exp(m)).unwrap();
        assert_eq!(r.form.family, Family::J3);
        assert_eq!(r.form.params, vec![pp(&f3, &[1]), PPoly::zero(&f3).unwrap()]);
    }

    #[test]
    fn recognize_after_conjugation() {
        let f3 = Field::prime(3).unwrap();
        let p = Matrix::from_ints(&f3, &[&[1, 2, 0], &[0, 1, 1], &[1, 0, 2]]);
        for form in [
            FamilyForm::new(Family::A12, vec![pp(&f3, &[1]), pp(&f3, &[0, 1])]).unwrap(),
            FamilyForm::new(Family::A21, vec![pp(&f3, &[2, 1]), pp(&f3, &[0, 1])]).unwrap(),
            FamilyForm::new(Family::J3, vec![pp(&f3, &[1, 1]), pp(&f3, &[0, 2])]).unwrap(),
        ] {
            let a = exp(form.matrix().conjugate(&p).unwrap());
            let r = recognize_family(&a).unwrap();
            let q = r.conjugator.unwrap();
            assert_eq!(a.matrix().conjugate(&q).unwrap(), r.form.matrix());
            let c1 = classify(&a, true).unwrap();
            let c2 = classify(&exp(form.matrix()), true).unwrap();
            assert_eq!(c1.class, c2.class);
        }
    }

    #[test]
    fn char0_examples() {
        let q = Field::rationals();
        let c = classify_char0(&ExpMatrix::identity(&q, 4), true).unwrap();
        assert_eq!(c.class, BirClass::Identity);
        let c = classify_char0(&exp(standard_matrix(&q, 3)), true).unwrap();
        assert_eq!(c.class, BirClass::Char0Standard);
        assert!(c.witness.steps.is_empty());
        let a = exp_nilpotent(&NilMatrix::new(Matrix::from_ints(&q, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])).unwrap()).unwrap();
        let c = classify_char0(&a, true).unwrap();
        assert_eq!(c.class, BirClass::Char0Standard);
        assert_eq!(c.canonical, standard_matrix(&q, 3));
        let a = exp_nilpotent(&NilMatrix::new(jordan_matrix(&q, &[2, 2])).unwrap()).unwrap();
        assert_eq!(classify_char0(&a, true).unwrap().class, BirClass::Char0Standard);
    }

    #[test]
    fn two_by_two_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(classify_2x2(&ExpMatrix::identity(&f5, 2), true).unwrap().class, BirClass::Identity);
        let c = classify_2x2(&fam(Family::Upper2, vec![pp(&f5, &[3])]), true).unwrap();
        assert_eq!(c.class, BirClass::Line(pp(&f5, &[1])));

        let f4 = Field::gf(2, 2).unwrap();
        let base = PPoly::new(&f4, vec![f4.one(), f4.one()]).unwrap();
        let c = f4.generator();
        let a = classify_2x2(&fam(Family::Upper2, vec![base.clone()]), true).unwrap();
        let b = classify_2x2(&fam(Family::Upper2, vec![base.scale(&c)]), true).unwrap();
        assert_eq!(a.class, b.class);

        let lower = exp(PolyMatrix::from_int_coeffs(&f5, &[&[&[1], &[]], &[&[0, 2], &[1]]]).unwrap());
        assert_eq!(classify_2x2(&lower, true).unwrap().class, BirClass::Line(pp(&f5, &[1])));
    }

    #[test]
    fn three_by_three_examples() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(classify_3x3(&ExpMatrix::identity(&f2, 3), true).unwrap().class, BirClass::Identity);
        let c = classify_3x3(&fam(Family::A21, vec![pp(&f2, &[1]), pp(&f2, &[0, 1])]), true).unwrap();
        assert_eq!(c.class, BirClass::Line(pp(&f2, &[1])));
        let c = classify_3x3(&fam(Family::A12, vec![pp(&f2, &[1]), pp(&f2, &[0, 1])]), true).unwrap();
        assert_eq!(c.class, BirClass::Plane(pp(&f2, &[1]), pp(&f2, &[0, 1])));

        let f3 = Field::prime(3).unwrap();
        let j = classify_3x3(&fam(Family::J3, vec![pp(&f3, &[1]), pp(&f3, &[0, 1])]), true).unwrap();
        let a = classify_3x3(&fam(Family::A21, vec![pp(&f3, &[1]), pp(&f3, &[0, 1])]), true).unwrap();
        assert_eq!(j.class, a.class);
        assert_eq!(j.class, BirClass::Line(pp(&f3, &[1])));
    }

    #[test]
    fn equivalence_examples() {
        let f2 = Field::prime(2).unwrap();
        let a = fam(Family::A21, vec![pp(&f2, &[1]), pp(&f2, &[0, 1])]);
        let e = equiv_bir(&a, &a, true).unwrap();
        assert!(e.equivalent);

        let line = fam(Family::A11, vec![pp(&f2, &[0, 1])]);
        let plane = fam(Family::A12, vec![pp(&f2, &[1]), pp(&f2, &[0, 1])]);
        assert!(!equiv_bir(&line, &plane, true).unwrap().equivalent);

        let x = fam(Family::A21, vec![pp(&f2, &[1]), pp(&f2, &[0, 0, 1])]);
        let y = fam(Family::A21, vec![pp(&f2, &[1, 1]), pp(&f2, &[0, 0, 1])]);
        let e = equiv_bir(&x, &y, true).unwrap();
        assert!(e.equivalent);
        assert_eq!(e.left.class, BirClass::Line(pp(&f2, &[1])));
        e.witness.unwrap().verify().unwrap();
    }

    #[test]
    fn dependent_rows_become_single_entry() {
        let f3 = Field::prime(3).unwrap();
        let g = pp(&f3, &[1, 2]);
        for (a, b) in [(1, 0), (0, 2), (2, 1)] {
            let m = fam(Family::A12, vec![g.scale(&f3.from_int(a)), g.scale(&f3.from_int(b))]);
            let c = classify(&m, true).unwrap();
            assert_eq!(c.class, BirClass::Line(pp(&f3, &[2, 1])));
        }
    }

    #[test]
    fn large_sizes_in_positive_characteristic_are_unsupported() {
        let f2 = Field::prime(2).unwrap();
        assert!(matches!(classify(&ExpMatrix::identity(&f2, 4), true), Err(Error::Unsupported(_))));
    }
}
