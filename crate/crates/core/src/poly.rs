//! Dense univariate polynomials in `T`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::mpoly::MPoly;

/// A polynomial in `T`, coefficients low-to-high with trailing zeros stripped.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Poly {
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The indeterminate `T`.
    pub fn t(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: Elem, degree: usize) -> Poly {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `T^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// Degree, `None` standing for −∞.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn checked_compose(&self, inner: &Poly) -> Result<Poly> {
        self.check(inner)?;
        Ok(self.compose(inner))
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// `self(inner(T))`, by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(&self.field, c.clone());
        }
        acc
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn pow(&self, mut exp: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f(T + T')` as a polynomial in the two variables `(T, T')`.
    pub fn bivariate_shift(&self) -> MPoly {
        let f = &self.field;
        let sum = &MPoly::var(f, 2, 0) + &MPoly::var(f, 2, 1);
        let mut acc = MPoly::zero(f, 2);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &sum) + &MPoly::constant(f, 2, c.clone());
        }
        acc
    }

    /// This polynomial viewed as a polynomial in variable `var` of a ring with
    /// `nvars` variables.
    pub fn to_mpoly(&self, nvars: usize, var: usize) -> MPoly {
        let mut out = MPoly::zero(&self.field, nvars);
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let mut exps = vec![0u32; nvars];
            exps[var] = i as u32;
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Renders with the given variable name.
    pub fn format_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let coeff = f.format(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (i, coeff.as_str()) {
                (0, _) => coeff,
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{coeff}*{mono}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("T"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {})", self.field)
    }
}

fn assert_same(a: &Field, b: &Field) {
    assert!(a == b, "polynomials over different fields: {a} vs {b}");
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_same(&self.field, &rhs.field);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_same(&self.field, &rhs.field);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn freshmans_dream_gf2() {
        let f = Field::prime(2).unwrap();
        let t1 = Poly::from_ints(&f, &[1, 1]);
        assert_eq!(&t1 * &t1, Poly::from_ints(&f, &[1, 0, 1]));
    }

    #[test]
    fn shift_examples() {
        let q = Field::rationals();
        let t = Poly::t(&q);
        let sum = &MPoly::var(&q, 2, 0) + &MPoly::var(&q, 2, 1);
        assert_eq!(t.bivariate_shift(), sum);

        let t2 = Poly::from_ints(&q, &[0, 0, 1]);
        let expected = MPoly::from_terms(&q, 2, vec![(vec![2, 0], q.one()), (vec![1, 1], q.from_int(2)), (vec![0, 2], q.one())]);
        assert_eq!(t2.bivariate_shift(), expected);

        let f2 = Field::prime(2).unwrap();
        let t2 = Poly::from_ints(&f2, &[0, 0, 1]);
        let expected = MPoly::from_terms(&f2, 2, vec![(vec![2, 0], f2.one()), (vec![0, 2], f2.one())]);
        assert_eq!(t2.bivariate_shift(), expected);

        let t4 = Poly::monomial(&f2, f2.one(), 4);
        let expected = MPoly::from_terms(&f2, 2, vec![(vec![4, 0], f2.one()), (vec![0, 4], f2.one())]);
        assert_eq!(t4.bivariate_shift(), expected);
    }

    #[test]
    fn shift_restricts_back() {
        let q = Field::rationals();
        let p = Poly::from_ints(&q, &[3, -1, 0, 7, 2]);
        let shifted = p.bivariate_shift();
        let back = shifted.substitute(&[Poly::t(&q).to_mpoly(1, 0), MPoly::zero(&q, 1)]);
        assert_eq!(back, p.to_mpoly(1, 0));
    }

    #[test]
    fn degree_of_zero_is_minus_infinity() {
        let q = Field::rationals();
        assert_eq!(Poly::zero(&q).degree(), None);
        assert_eq!(Poly::from_ints(&q, &[0, 0, 0]).degree(), None);
        assert_eq!(Poly::from_ints(&q, &[1, 2]).degree(), Some(1));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Poly::t(&Field::prime(2).unwrap());
        let b = Poly::t(&Field::prime(3).unwrap());
        assert_eq!(a.checked_add(&b), Err(Error::MixedFields));
        assert_eq!(a.checked_mul(&b), Err(Error::MixedFields));
    }

    #[test]
    fn display() {
        let q = Field::rationals();
        assert_eq!(Poly::from_ints(&q, &[1, -1, 0, 2]).to_string(), "2*T^3 - T + 1");
    }
}
