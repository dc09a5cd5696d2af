//! Triangular linear derivations in characteristic 0, their flows, and the
//! birational map that straightens the induced action on projective space.
//!
//! Variables are `x_0, …, x_{n−1}`. A derivation here has `D(x_0) = 0`,
//! `D(x_1) = x_0`, and each `D(x_i)` a linear form in `x_0, …, x_{i−1}`.
//! Polynomials may carry extra variables after the first `n`; `D` treats
//! them as constants, which is how flow parameters such as `T` enter.

use crate::birat::ProjMap;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::mpoly::{LocElem, MPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinDerivation {
    field: Field,
    n: usize,
    images: Vec<MPoly>,
}

impl LinDerivation {
    /// Validates the triangular shape. Images live in `n` variables.
    pub fn new(field: &Field, images: Vec<MPoly>) -> Result<LinDerivation> {
        if field.characteristic() != 0 {
            return Err(Error::WrongCharacteristic("derivations are handled in characteristic 0".into()));
        }
        let n = images.len();
        if n < 2 {
            return Err(Error::BadDerivationShape("need at least two variables".into()));
        }
        for (i, img) in images.iter().enumerate() {
            if img.nvars() != n {
                return Err(Error::BadDerivationShape(format!("image of x{i} has the wrong number of variables")));
            }
            for (exps, _) in img.terms() {
                let deg: u32 = exps.iter().sum();
                if deg != 1 || exps[i..].iter().any(|&e| e > 0) {
                    return Err(Error::BadDerivationShape(format!("D(x{i}) must be linear in x0..x{}", i as i64 - 1)));
                }
            }
        }
        if !images[0].is_zero() {
            return Err(Error::BadDerivationShape("D(x0) must vanish".into()));
        }
        if images[1] != MPoly::var(field, n, 0) {
            return Err(Error::BadDerivationShape("D(x1) must equal x0".into()));
        }
        Ok(LinDerivation { field: field.clone(), n, images })
    }

    /// `D(x_j) = Σ_i J[j][i] x_i`, the derivation whose flow is the action of
    /// `Exp_J`.
    pub fn from_matrix(j: &Matrix) -> Result<LinDerivation> {
        let f = j.field();
        let n = j.rows();
        let images = (0..n)
            .map(|r| {
                let mut img = MPoly::zero(f, n);
                for c in 0..n {
                    img = &img + &MPoly::var(f, n, c).scale(j.get(r, c));
                }
                img
            })
            .collect();
        LinDerivation::new(f, images)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn images(&self) -> &[MPoly] {
        &self.images
    }

    /// `D(f)` by the Leibniz rule.
    pub fn derive(&self, f: &MPoly) -> MPoly {
        assert!(f.nvars() >= self.n, "polynomial has fewer variables than the derivation");
        let mut out = MPoly::zero(&self.field, f.nvars());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let partial = f.partial_derivative(i);
            if partial.is_zero() {
                continue;
            }
            out = &out + &(&partial * &img.with_nvars(f.nvars()));
        }
        out
    }

    /// `D(a / x_0^ℓ) = D(a) / x_0^ℓ`, valid because `D(x_0) = 0`.
    pub fn derive_loc(&self, f: &LocElem) -> LocElem {
        f.map_numerator(|a| self.derive(a))
    }

    /// `D^k(f)` for `k = 0, 1, …` until it vanishes.
    pub fn iterates(&self, f: &MPoly) -> Vec<MPoly> {
        let mut out = Vec::new();
        let mut cur = f.clone();
        while !cur.is_zero() {
            let next = self.derive(&cur);
            out.push(cur);
            cur = next;
        }
        out
    }

    /// Whether every variable is killed by `D^{n}`.
    pub fn is_locally_nilpotent(&self) -> bool {
        (0..self.n).all(|i| self.iterates(&MPoly::var(&self.field, self.n, i)).len() <= self.n)
    }

    /// `φ_{D,t}(f) = Σ_k D^k(f) t^k / k!`, with `t` a polynomial in the same
    /// ring as `f` that `D` treats as a constant.
    pub fn flow(&self, f: &MPoly, t: &MPoly) -> Result<MPoly> {
        if t.nvars() != f.nvars() {
            return Err(Error::DimensionMismatch("flow parameter lives in a different ring".into()));
        }
        if (0..self.n).any(|i| t.degree_in(i).unwrap_or(0) > 0) {
            return Err(Error::DimensionMismatch("flow parameter must not involve the derived variables".into()));
        }
        let fld = &self.field;
        let mut acc = MPoly::zero(fld, f.nvars());
        let mut t_pow = MPoly::one(fld, f.nvars());
        let mut fact = fld.one();
        for (k, term) in self.iterates(f).into_iter().enumerate() {
            if k > 0 {
                t_pow = &t_pow * t;
                fact = fld.mul(&fact, &fld.from_int(k as i64));
            }
            acc = &acc + &(&term * &t_pow).scale(&fld.inv(&fact)?);
        }
        Ok(acc)
    }

    /// The flow on the localization at `x_0`, with a parameter that may itself
    /// have `x_0` in its denominator.
    pub fn flow_loc(&self, f: &LocElem, t: &LocElem) -> Result<LocElem> {
        let fld = &self.field;
        let mut acc = LocElem::from_poly(MPoly::zero(fld, f.nvars()));
        let mut t_pow = LocElem::from_poly(MPoly::one(fld, f.nvars()));
        let mut fact = fld.one();
        let mut cur = f.clone();
        let mut k = 0i64;
        while !cur.is_zero() {
            if k > 0 {
                t_pow = &t_pow * t;
                fact = fld.mul(&fact, &fld.from_int(k));
            }
            acc = &acc + &(&cur * &t_pow).scale(&fld.inv(&fact)?);
            cur = self.derive_loc(&cur);
            k += 1;
        }
        Ok(acc)
    }

    /// The birational map `(1 : s : φ_{D,−s}(x_2/x_0) : … : φ_{D,−s}(x_{n−1}/x_0))`
    /// with `s = x_1/x_0`, cleared of denominators, and its inverse.
    ///
    /// It carries the action `x ↦ x·ᵗExp_J(t)` of the matrix `J` behind `D`
    /// to the action `(y_0 : y_1 + t·y_0 : y_2 : …)`.
    pub fn straightening_map(&self) -> Result<(ProjMap, ProjMap)> {
        let f = &self.field;
        let n = self.n;
        let s = LocElem::ratio(f, n, 1);
        let minus_s = s.scale(&f.from_int(-1));
        let mut forward = vec![LocElem::from_poly(MPoly::one(f, n)), s.clone()];
        for i in 2..n {
            forward.push(self.flow_loc(&LocElem::ratio(f, n, i), &minus_s)?);
        }
        let sigma = homogenize(f, n, &forward)?;

        // Inverse on the chart y_0 = 1: x_i = Σ_j (D^j x_i)(y_0, 0, y_2, …) s^j / j!
        // with s = y_1, the expansion of x_i around the slice x_1 = 0.
        let mut kill_x1: Vec<MPoly> = (0..n).map(|i| MPoly::var(f, n, i)).collect();
        kill_x1[1] = MPoly::zero(f, n);
        let mut backward = vec![LocElem::from_poly(MPoly::one(f, n)), s.clone()];
        for i in 2..n {
            let mut acc = LocElem::from_poly(MPoly::zero(f, n));
            let mut s_pow = LocElem::from_poly(MPoly::one(f, n));
            let mut fact = f.one();
            for (j, term) in self.iterates(&MPoly::var(f, n, i)).into_iter().enumerate() {
                if j > 0 {
                    s_pow = &s_pow * &s;
                    fact = f.mul(&fact, &f.from_int(j as i64));
                }
                let on_slice = LocElem::new(term.substitute(&kill_x1), 1);
                acc = &acc + &(&on_slice * &s_pow).scale(&f.inv(&fact)?);
            }
            backward.push(acc);
        }
        let sigma_inv = homogenize(f, n, &backward)?;
        Ok((sigma, sigma_inv))
    }
}

/// Clears the common `x_0` denominator and strips monomial content.
fn homogenize(f: &Field, n: usize, comps: &[LocElem]) -> Result<ProjMap> {
    let top = comps.iter().map(LocElem::power).max().unwrap_or(0);
    let polys = comps.iter().map(|c| c.numerator_over(top)).collect();
    Ok(ProjMap::new(f, n, false, polys)?.strip_content())
}

/// The map of [`LinDerivation::straightening_map`], forward direction only.
pub fn sigma_straighten(d: &LinDerivation) -> Result<ProjMap> {
    Ok(d.straightening_map()?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birat::verify_equivariance;
    use crate::expmat::{exp_nilpotent, jordan_matrix, NilMatrix, PolyMatrix};
    use crate::poly::Poly;

    fn q() -> Field {
        Field::rationals()
    }

    fn shift3() -> LinDerivation {
        LinDerivation::from_matrix(&jordan_matrix(&q(), &[3])).unwrap()
    }

    fn standard(f: &Field, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::identity(f, n);
        m.set(1, 0, Poly::t(f));
        m
    }

    #[test]
    fn derive_examples() {
        let f = q();
        let d = LinDerivation::from_matrix(&jordan_matrix(&f, &[2])).unwrap();
        assert!(d.derive(&MPoly::var(&f, 2, 0)).is_zero());
        let x1 = MPoly::var(&f, 2, 1);
        let want = MPoly::monomial(&f, vec![1, 1], f.from_int(2));
        assert_eq!(d.derive(&(&x1 * &x1)), want);
        let r = d.derive_loc(&LocElem::ratio(&f, 2, 1));
        assert_eq!(r, LocElem::from_poly(MPoly::one(&f, 2)));
    }

    #[test]
    fn shape_is_enforced() {
        let f = q();
        let bad = LinDerivation::new(&f, vec![MPoly::zero(&f, 2), MPoly::var(&f, 2, 1)]);
        assert!(matches!(bad, Err(Error::BadDerivationShape(_))));
        let f3 = Field::prime(3).unwrap();
        assert!(matches!(LinDerivation::from_matrix(&jordan_matrix(&f3, &[2])), Err(Error::WrongCharacteristic(_))));
        assert!(shift3().is_locally_nilpotent());
    }

    #[test]
    fn flow_examples() {
        let f = q();
        let d = LinDerivation::from_matrix(&jordan_matrix(&f, &[2])).unwrap();
        // variables x0, x1, T
        let x = |i| MPoly::var(&f, 3, i);
        assert_eq!(d.flow(&x(0), &x(2)).unwrap(), x(0));
        assert_eq!(d.flow(&x(1), &x(2)).unwrap(), &x(1) + &(&x(2) * &x(0)));
    }

    #[test]
    fn flow_group_law() {
        let f = q();
        for blocks in [vec![2], vec![3], vec![2, 1], vec![4], vec![3, 2], vec![2, 2, 1]] {
            let d = LinDerivation::from_matrix(&jordan_matrix(&f, &blocks)).unwrap();
            let n = d.n();
            let nv = n + 2;
            let (t, t2) = (MPoly::var(&f, nv, n), MPoly::var(&f, nv, n + 1));
            for i in 0..n {
                let xi = MPoly::var(&f, nv, i);
                let joint = d.flow(&xi, &(&t + &t2)).unwrap();
                // φ_{T}(φ_{T′}(x_i)): apply φ_{T′} then substitute every x_l by φ_T(x_l)
                let inner = d.flow(&xi, &t2).unwrap();
                let mut images: Vec<MPoly> = (0..n).map(|l| d.flow(&MPoly::var(&f, nv, l), &t).unwrap()).collect();
                images.push(t.clone());
                images.push(t2.clone());
                assert_eq!(inner.substitute(&images), joint);
            }
        }
    }

    #[test]
    fn flow_is_a_ring_homomorphism() {
        let f = q();
        let d = shift3();
        let x = |i| MPoly::var(&f, 4, i);
        let a = &(&x(0) * &x(2)) + &x(1).scale(&f.from_int(3));
        let b = &(&x(1) * &x(1)) - &x(2);
        let t = x(3);
        let fa = d.flow(&a, &t).unwrap();
        let fb = d.flow(&b, &t).unwrap();
        assert_eq!(d.flow(&(&a * &b), &t).unwrap(), &fa * &fb);
        assert_eq!(d.flow(&(&a + &b), &t).unwrap(), &fa + &fb);
        assert_eq!(d.flow(&a, &MPoly::zero(&f, 4)).unwrap(), a);
    }

    #[test]
    fn straightening_examples() {
        let f = q();
        let d2 = LinDerivation::from_matrix(&jordan_matrix(&f, &[2])).unwrap();
        assert!(sigma_straighten(&d2).unwrap().is_projective_identity());

        let (s, s_inv) = shift3().straightening_map().unwrap();
        let x = |i| MPoly::var(&f, 3, i);
        let half = f.from_ratio(1, 2).unwrap();
        let third = &(&x(0) * &x(2)) - &(&x(1) * &x(1)).scale(&half);
        assert_eq!(s.components()[2], third);
        assert!(s.compose(&s_inv).unwrap().is_projective_identity());
        assert!(s_inv.compose(&s).unwrap().is_projective_identity());

        let j = NilMatrix::new(jordan_matrix(&f, &[3])).unwrap();
        let a = exp_nilpotent(&j).unwrap();
        let r = verify_equivariance(&s, a.matrix(), &standard(&f, 3)).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn straightening_for_several_partitions() {
        let f = q();
        for blocks in [vec![2, 1], vec![2, 2], vec![4], vec![3, 1], vec![3, 2], vec![2, 1, 1]] {
            let jm = jordan_matrix(&f, &blocks);
            let d = LinDerivation::from_matrix(&jm).unwrap();
            let (s, s_inv) = d.straightening_map().unwrap();
            let a = exp_nilpotent(&NilMatrix::new(jm).unwrap()).unwrap();
            let n = d.n();
            assert!(verify_equivariance(&s, a.matrix(), &standard(&f, n)).unwrap().holds, "{blocks:?}");
            assert!(s.compose(&s_inv).unwrap().is_projective_identity(), "{blocks:?}");
            assert!(s_inv.compose(&s).unwrap().is_projective_identity(), "{blocks:?}");
        }
    }
}
