//! Projective rational maps, the equivariance check, and the explicit
//! birational witnesses between exponential matrices.
//!
//! A map on `ℙ^{n−1}` is a tuple of `n` homogeneous polynomials of equal
//! degree in `x_0, …, x_{n−1}`. Maps that describe an action carry one extra
//! variable `T`, always the last one. Two tuples define the same map when all
//! cross products `f_i g_j − f_j g_i` vanish.

use std::fmt;

use crate::error::{Error, Result};
use crate::expmat::{action_of_matrix, is_exponential, PolyMatrix};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::mpoly::MPoly;
use crate::ppoly::{PPoly, Slot};

#[derive(Clone, PartialEq, Eq)]
pub struct ProjMap {
    field: Field,
    n: usize,
    with_t: bool,
    degree: u64,
    components: Vec<MPoly>,
}

impl ProjMap {
    pub fn new(field: &Field, n: usize, with_t: bool, components: Vec<MPoly>) -> Result<ProjMap> {
        let nvars = n + usize::from(with_t);
        if components.len() != n {
            return Err(Error::DimensionMismatch(format!("{} components for ℙ^{}", components.len(), n as i64 - 1)));
        }
        if components.iter().any(|c| c.nvars() != nvars) {
            return Err(Error::DimensionMismatch(format!("components must have {nvars} variables")));
        }
        if components.iter().any(|c| c.field() != field) {
            return Err(Error::MixedFields);
        }
        let mask: Vec<bool> = (0..nvars).map(|i| i < n).collect();
        let mut degree = None;
        for c in components.iter().filter(|c| !c.is_zero()) {
            let d = c
                .homogeneous_degree(&mask)
                .ok_or_else(|| Error::DimensionMismatch("component is not homogeneous".into()))?;
            if degree.is_some_and(|e| e != d) {
                return Err(Error::DimensionMismatch("components have different degrees".into()));
            }
            degree = Some(d);
        }
        let degree = degree.ok_or(Error::ZeroInput)?;
        Ok(ProjMap { field: field.clone(), n, with_t, degree, components })
    }

    pub fn identity(field: &Field, n: usize) -> ProjMap {
        let comps = (0..n).map(|i| MPoly::var(field, n, i)).collect();
        ProjMap::new(field, n, false, comps).expect("identity map")
    }

    /// The linear map `x ↦ x·M`.
    pub fn linear(m: &Matrix) -> Result<ProjMap> {
        let f = m.field();
        let n = m.rows();
        let comps = (0..n)
            .map(|j| {
                let mut c = MPoly::zero(f, n);
                for i in 0..n {
                    c = &c + &MPoly::var(f, n, i).scale(m.get(i, j));
                }
                c
            })
            .collect();
        ProjMap::new(f, n, false, comps)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_t(&self) -> bool {
        self.with_t
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.n + usize::from(self.with_t)
    }

    pub fn components(&self) -> &[MPoly] {
        &self.components
    }

    /// The same map with a (possibly unused) parameter `T` appended.
    pub fn with_parameter(&self) -> ProjMap {
        if self.with_t {
            return self.clone();
        }
        let comps = self.components.iter().map(|c| c.with_nvars(self.n + 1)).collect();
        ProjMap { with_t: true, components: comps, ..self.clone() }
    }

    /// `self ∘ inner`. The parameter `T`, if present in either map, is kept.
    pub fn compose(&self, inner: &ProjMap) -> Result<ProjMap> {
        if self.n != inner.n {
            return Err(Error::DimensionMismatch("composing maps on different spaces".into()));
        }
        if self.field != inner.field {
            return Err(Error::MixedFields);
        }
        let with_t = self.with_t || inner.with_t;
        let (outer, inner) = if with_t { (self.with_parameter(), inner.with_parameter()) } else { (self.clone(), inner.clone()) };
        let mut images = inner.components.clone();
        if with_t {
            images.push(MPoly::var(&self.field, self.n + 1, self.n));
        }
        let comps = outer.components.iter().map(|c| c.substitute(&images)).collect();
        ProjMap::new(&self.field, self.n, with_t, comps).map(|m| m.strip_content())
    }

    /// Divides all components by their common monomial factor in the `x`.
    pub fn strip_content(&self) -> ProjMap {
        let nvars = self.nvars();
        let mut content: Option<Vec<u32>> = None;
        for c in self.components.iter().filter(|c| !c.is_zero()) {
            let m = c.monomial_content();
            content = Some(match content {
                None => m,
                Some(g) => g.iter().zip(&m).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        let mut content = content.unwrap_or_else(|| vec![0; nvars]);
        if self.with_t {
            content[self.n] = 0;
        }
        if content.iter().all(|&e| e == 0) {
            return self.clone();
        }
        let comps: Vec<MPoly> = self.components.iter().map(|c| c.div_monomial(&content)).collect();
        ProjMap::new(&self.field, self.n, self.with_t, comps).expect("stripping keeps homogeneity")
    }

    /// The first nonzero cross product `(i, j, f_i g_j − f_j g_i)`, if any.
    pub fn cross_check(&self, other: &ProjMap) -> Result<Option<(usize, usize, MPoly)>> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::DimensionMismatch("comparing maps on different spaces".into()));
        }
        let (a, b) = if self.with_t || other.with_t { (self.with_parameter(), other.with_parameter()) } else { (self.clone(), other.clone()) };
        for i in 0..self.n {
            for j in i + 1..self.n {
                let r = &(&a.components[i] * &b.components[j]) - &(&a.components[j] * &b.components[i]);
                if !r.is_zero() {
                    return Ok(Some((i, j, r)));
                }
            }
        }
        Ok(None)
    }

    pub fn projectively_equal(&self, other: &ProjMap) -> bool {
        matches!(self.cross_check(other), Ok(None))
    }

    pub fn is_projective_identity(&self) -> bool {
        let id = ProjMap::identity(&self.field, self.n);
        self.projectively_equal(&id)
    }

    pub fn eval(&self, point: &[Elem]) -> Vec<Elem> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn variable_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (0..self.n).map(|i| format!("x{i}")).collect();
        if self.with_t {
            names.push("T".into());
        }
        names
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.variable_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let parts: Vec<String> = self.components.iter().map(|c| c.format_with(&refs)).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjMap{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub holds: bool,
    /// First nonzero cross product between `σ∘μ_A` and `μ_B∘σ`.
    pub residual: Option<(usize, usize, MPoly)>,
}

/// Checks `σ ∘ μ_A = μ_B ∘ σ` projectively, as maps in `x` and `T`.
pub fn verify_equivariance(sigma: &ProjMap, a: &PolyMatrix, b: &PolyMatrix) -> Result<EquivarianceReport> {
    if a.n() != sigma.n() || b.n() != sigma.n() {
        return Err(Error::DimensionMismatch("map and matrices act on different spaces".into()));
    }
    if a.field() != sigma.field() || b.field() != sigma.field() {
        return Err(Error::MixedFields);
    }
    let left = sigma.compose(&action_of_matrix(a))?;
    let right = action_of_matrix(b).compose(sigma)?;
    let residual = left.cross_check(&right)?;
    Ok(EquivarianceReport { holds: residual.is_none(), residual })
}

/// Diagonal map scaling coordinate `slot` by `λ`.
pub fn sigma_scaling(lambda: &Elem, slot: usize, n: usize, field: &Field) -> Result<ProjMap> {
    if field.is_zero(lambda) {
        return Err(Error::ZeroScalar);
    }
    if slot >= n {
        return Err(Error::DimensionMismatch(format!("slot {slot} outside 0..{n}")));
    }
    let mut diag = vec![field.one(); n];
    diag[slot] = lambda.clone();
    ProjMap::linear(&Matrix::diagonal(field, &diag))
}

/// Shear on `ℙ²` realising one reduction move on matrices
/// `[[1,0,α₂],[0,1,α₁],[0,0,1]]`, together with its inverse.
///
/// With `target` = second the map is `(x₀/x₂ − λ(x₁/x₂) : x₁/x₂ : 1)`, which
/// turns `α₂` into `α₂ − λ∘α₁`; with `target` = first it is
/// `(x₀/x₂ : x₁/x₂ − λ(x₀/x₂) : 1)`, turning `α₁` into `α₁ − λ∘α₂`. Both are
/// homogenised by `x₂^{deg λ}`.
pub fn sigma_reduce(lambda: &PPoly, target: Slot) -> Result<(ProjMap, ProjMap)> {
    let f = lambda.field();
    let forward = shear_map(lambda, target, true)?;
    let backward = shear_map(lambda, target, false)?;
    debug_assert_eq!(forward.field(), f);
    Ok((forward, backward))
}

fn shear_map(lambda: &PPoly, target: Slot, subtract: bool) -> Result<ProjMap> {
    let f = lambda.field();
    let d = lambda.poly_degree().unwrap_or(1) as u32;
    let x2_pow = |e: u32| {
        let mut v = vec![0u32; 3];
        v[2] = e;
        v
    };
    let homog = |i: usize| MPoly::var(f, 3, i).mul_monomial(&x2_pow(d - 1));
    let (src, dst) = match target {
        Slot::Second => (1, 0),
        Slot::First => (0, 1),
    };
    let mut shift = MPoly::zero(f, 3);
    let p = f.characteristic();
    for (i, c) in lambda.coeffs().iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let e = p.pow(i as u32) as u32;
        let mut exps = x2_pow(d - e);
        exps[src] = e;
        shift.add_term(exps, c.clone());
    }
    let mut comps = vec![homog(0), homog(1), MPoly::var(f, 3, 2).mul_monomial(&x2_pow(d - 1))];
    comps[dst] = if subtract { &comps[dst] - &shift } else { &comps[dst] + &shift };
    ProjMap::new(f, 3, false, comps)
}

/// `(x₀ : x₁ : x₂) ↦ (x₀ : (x₁, x₂)·ᵗQ)`. Relates `[[1,α₁,α₂],[0,1,0],[0,0,1]]`
/// to the same shape with `β` whenever `(α₁ α₂) = (β₁ β₂)·Q`.
pub fn sigma_gl2(q: &Matrix) -> Result<ProjMap> {
    if q.rows() != 2 || q.cols() != 2 {
        return Err(Error::DimensionMismatch("expected a 2×2 matrix".into()));
    }
    q.inverse()?;
    let f = q.field();
    let mut m = Matrix::identity(f, 3);
    for i in 0..2 {
        for j in 0..2 {
            m.set(i + 1, j + 1, q.get(j, i).clone());
        }
    }
    ProjMap::linear(&m)
}

/// `(x₀x₂ − ½x₁² : x₁x₂ : x₂²)` and its inverse with `+½`. Carries
/// `[[1,α₁,½α₁²+α₂],[0,1,α₁],[0,0,1]]` to `[[1,0,α₂],[0,1,α₁],[0,0,1]]`.
pub fn sigma_jordan_to_a21(field: &Field) -> Result<(ProjMap, ProjMap)> {
    let p = field.characteristic();
    if p == 0 || p == 2 {
        return Err(Error::WrongCharacteristic("the quadratic map needs an odd prime characteristic".into()));
    }
    let half = field.inv(&field.from_int(2))?;
    let make = |sign: &Elem| {
        let c0 = MPoly::from_terms(field, 3, vec![(vec![1, 0, 1], field.one()), (vec![0, 2, 0], field.mul(sign, &half))]);
        let c1 = MPoly::monomial(field, vec![0, 1, 1], field.one());
        let c2 = MPoly::monomial(field, vec![0, 0, 2], field.one());
        ProjMap::new(field, 3, false, vec![c0, c1, c2])
    };
    Ok((make(&field.from_int(-1))?, make(&field.one())?))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StepKind {
    /// `P·from·P⁻¹ = to`.
    Conjugation { p: Matrix, p_inv: Matrix },
    /// `σ ∘ μ_from = μ_to ∘ σ` with an explicit inverse.
    Birational { sigma: ProjMap, sigma_inv: ProjMap },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessStep {
    pub from: PolyMatrix,
    pub to: PolyMatrix,
    pub kind: StepKind,
}

impl WitnessStep {
    pub fn conjugation(from: &PolyMatrix, p: &Matrix) -> Result<WitnessStep> {
        let to = from.conjugate(p)?;
        Ok(WitnessStep { from: from.clone(), to, kind: StepKind::Conjugation { p: p.clone(), p_inv: p.inverse()? } })
    }

    pub fn birational(from: &PolyMatrix, to: &PolyMatrix, sigma: ProjMap, sigma_inv: ProjMap) -> WitnessStep {
        WitnessStep { from: from.clone(), to: to.clone(), kind: StepKind::Birational { sigma, sigma_inv } }
    }

    /// Re-checks the step from its stored data alone.
    pub fn verify(&self) -> Result<()> {
        let reject = |msg: String| Err(Error::WitnessRejected(msg));
        if self.from.n() != self.to.n() || self.from.field() != self.to.field() {
            return reject("endpoints live in different spaces".into());
        }
        if is_exponential(&self.from).is_err() {
            return reject("source matrix is not exponential".into());
        }
        if is_exponential(&self.to).is_err() {
            return reject("target matrix is not exponential".into());
        }
        match &self.kind {
            StepKind::Conjugation { p, p_inv } => {
                let n = self.from.n();
                if p.rows() != n || p_inv.rows() != n || !p.is_square() || !p_inv.is_square() {
                    return reject("conjugator has the wrong size".into());
                }
                if !p.mul(p_inv).is_identity() {
                    return reject("stored inverse does not invert the conjugator".into());
                }
                let lhs: Vec<Matrix> = self.from.coefficient_matrices().iter().map(|m| p.mul(m)).collect();
                let rhs: Vec<Matrix> = self.to.coefficient_matrices().iter().map(|m| m.mul(p)).collect();
                let zero = Matrix::zeros(p.field(), n, n);
                for k in 0..lhs.len().max(rhs.len()) {
                    if lhs.get(k).unwrap_or(&zero) != rhs.get(k).unwrap_or(&zero) {
                        return reject(format!("P·A ≠ B·P in the coefficient of T^{k}"));
                    }
                }
                Ok(())
            }
            StepKind::Birational { sigma, sigma_inv } => {
                if sigma.has_t() || sigma_inv.has_t() {
                    return reject("witness maps must not depend on T".into());
                }
                let report = verify_equivariance(sigma, &self.from, &self.to)?;
                if let Some((i, j, _)) = report.residual {
                    return reject(format!("equivariance fails in cross product ({i}, {j})"));
                }
                if !sigma.compose(sigma_inv)?.is_projective_identity() {
                    return reject("σ∘σ⁻¹ is not the identity".into());
                }
                if !sigma_inv.compose(sigma)?.is_projective_identity() {
                    return reject("σ⁻¹∘σ is not the identity".into());
                }
                Ok(())
            }
        }
    }

    /// The same step read backwards.
    pub fn reverse(&self) -> WitnessStep {
        let kind = match &self.kind {
            StepKind::Conjugation { p, p_inv } => StepKind::Conjugation { p: p_inv.clone(), p_inv: p.clone() },
            StepKind::Birational { sigma, sigma_inv } => StepKind::Birational { sigma: sigma_inv.clone(), sigma_inv: sigma.clone() },
        };
        WitnessStep { from: self.to.clone(), to: self.from.clone(), kind }
    }
}

/// A chain of steps from `source` to `target`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub source: PolyMatrix,
    pub target: PolyMatrix,
    pub steps: Vec<WitnessStep>,
}

impl Witness {
    pub fn trivial(a: &PolyMatrix) -> Witness {
        Witness { source: a.clone(), target: a.clone(), steps: Vec::new() }
    }

    pub fn push(&mut self, step: WitnessStep) {
        debug_assert_eq!(step.from, self.target);
        self.target = step.to.clone();
        self.steps.push(step);
    }

    /// Checks linkage and every step.
    pub fn verify(&self) -> Result<()> {
        let mut cur = &self.source;
        for (k, step) in self.steps.iter().enumerate() {
            if &step.from != cur {
                return Err(Error::WitnessRejected(format!("step {k} does not start where the previous one ended")));
            }
            step.verify().map_err(|e| Error::WitnessRejected(format!("step {k}: {e}")))?;
            cur = &step.to;
        }
        if cur != &self.target {
            return Err(Error::WitnessRejected("chain does not end at the declared target".into()));
        }
        if self.steps.is_empty() && is_exponential(&self.source).is_err() {
            return Err(Error::WitnessRejected("source matrix is not exponential".into()));
        }
        Ok(())
    }

    pub fn reverse(&self) -> Witness {
        Witness {
            source: self.target.clone(),
            target: self.source.clone(),
            steps: self.steps.iter().rev().map(WitnessStep::reverse).collect(),
        }
    }

    /// `self` followed by `other`; `other` must start at `self.target`.
    pub fn then(&self, other: &Witness) -> Result<Witness> {
        if self.target != other.source {
            return Err(Error::WitnessRejected("chains do not meet".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Ok(Witness { source: self.source.clone(), target: other.target.clone(), steps })
    }
}
