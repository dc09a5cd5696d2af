//! Exact scalars: the rationals and the finite fields GF(p^m).
//!
//! A [`Field`] is a cheap, shareable handle on a [`FieldCtx`]. Field elements
//! are stored as bare [`Elem`] values and interpreted through the field that
//! owns them; polynomials and matrices carry the field once and keep their
//! coefficients as `Elem`s. [`Scalar`] pairs an element with its field for
//! the checked, user-facing arithmetic.
//!
//! Elements of GF(p^m) are encoded as the integer `Σ cᵢ pⁱ`, where
//! `c₀ + c₁a + … + c_{m-1}a^{m-1}` is the reduced representative modulo the
//! field's irreducible modulus and `a` is the class of the indeterminate.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported finite field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const MAX_DEGREE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    FiniteField,
}

/// Static description of a field.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    characteristic: u32,
    degree: u32,
    /// Monic modulus, low-to-high, present only for proper extensions.
    modulus: Option<Vec<u32>>,
    /// p^i for 0 <= i <= degree.
    powers: Vec<u64>,
}

/// Shared handle on a field.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

/// A bare field element. Meaningful only together with its [`Field`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    Fin(u32),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.characteristic(), self.degree()) {
            (0, _) => write!(f, "Q"),
            (p, 1) => write!(f, "GF({p})"),
            (p, m) => write!(f, "GF({p}^{m})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Small dense polynomials over GF(p), used only to validate and search moduli.

fn gfp_trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn gfp_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    gfp_trim(&mut r);
    let dg = g.len() - 1;
    let lead_inv = pow_mod(g[dg], p - 2, p);
    while r.len() > dg {
        let top = r.len() - 1;
        let factor = r[top] * lead_inv % p;
        let shift = top - dg;
        for (i, &gi) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - factor * gi % p) % p;
        }
        gfp_trim(&mut r);
    }
    r
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial over GF(p) by trial division with
/// every monic polynomial of degree at most half its degree.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if gfp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// The field of rational numbers.
    pub fn rationals() -> Field {
        Field(Arc::new(FieldCtx { characteristic: 0, degree: 1, modulus: None, powers: vec![1] }))
    }

    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::finite(p, 1, None)
    }

    /// GF(p^m) with the first irreducible monic modulus in coefficient order
    /// (for GF(4), GF(8), GF(9), GF(27) this gives x²+x+1, x³+x+1, x²+1,
    /// x³+2x+1).
    pub fn gf(p: u64, m: u32) -> Result<Field> {
        if m <= 1 {
            return Field::prime(p);
        }
        check_order(p, m)?;
        let m_us = m as usize;
        let count = p.pow(m);
        for code in 0..count {
            let mut f = Vec::with_capacity(m_us + 1);
            let mut c = code;
            for _ in 0..m_us {
                f.push(c % p);
                c /= p;
            }
            f.push(1);
            if f[0] != 0 && is_irreducible(&f, p) {
                let modulus: Vec<u32> = f.iter().map(|&c| c as u32).collect();
                return Field::finite(p, m, Some(modulus));
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {m} over GF({p})")))
    }

    /// GF(p^m) from an explicit modulus (coefficients low-to-high, degree m).
    pub fn extension(p: u64, modulus: &[i64]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        let mut f: Vec<u64> = modulus.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        gfp_trim(&mut f);
        if f.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        let m = (f.len() - 1) as u32;
        let lead_inv = pow_mod(*f.last().unwrap(), p - 2, p);
        for c in f.iter_mut() {
            *c = *c * lead_inv % p;
        }
        if m == 1 {
            return Field::prime(p);
        }
        check_order(p, m)?;
        if !is_irreducible(&f, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over GF({p})")));
        }
        Field::finite(p, m, Some(f.iter().map(|&c| c as u32).collect()))
    }

    fn finite(p: u64, m: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        check_order(p, m)?;
        let powers = (0..=m).map(|i| p.pow(i)).collect();
        Ok(Field(Arc::new(FieldCtx { characteristic: p as u32, degree: m, modulus, powers })))
    }

    pub fn kind(&self) -> FieldKind {
        if self.0.characteristic == 0 {
            FieldKind::Rationals
        } else {
            FieldKind::FiniteField
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.0.characteristic != 0
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.0.powers[self.0.degree as usize])
    }

    pub fn zero(&self) -> Elem {
        if self.is_finite() {
            Elem::Fin(0)
        } else {
            Elem::Rat(BigRational::zero())
        }
    }

    pub fn one(&self) -> Elem {
        if self.is_finite() {
            Elem::Fin(1)
        } else {
            Elem::Rat(BigRational::one())
        }
    }

    pub fn from_int(&self, n: i64) -> Elem {
        if self.is_finite() {
            Elem::Fin(n.rem_euclid(self.characteristic() as i64) as u32)
        } else {
            Elem::Rat(BigRational::from_integer(BigInt::from(n)))
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        if self.is_finite() {
            let p = BigInt::from(self.characteristic());
            Elem::Fin(n.mod_floor(&p).to_u32().expect("residue fits"))
        } else {
            Elem::Rat(BigRational::from_integer(n.clone()))
        }
    }

    /// The element `num / den`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Elem> {
        self.div(&self.from_int(num), &self.from_int(den))
    }

    /// Element of GF(p^m) from its coefficients in the generator, low-to-high.
    pub fn from_digits(&self, digits: &[i64]) -> Result<Elem> {
        if !self.is_finite() {
            return Err(Error::NotFiniteField);
        }
        if digits.len() > self.0.degree as usize {
            return Err(Error::Parse(format!(
                "element has {} coefficients but the field has degree {}",
                digits.len(),
                self.0.degree
            )));
        }
        let p = self.characteristic() as i64;
        let code = digits
            .iter()
            .enumerate()
            .map(|(i, &d)| d.rem_euclid(p) as u64 * self.0.powers[i])
            .sum::<u64>();
        Ok(Elem::Fin(code as u32))
    }

    /// Coefficients of a finite-field element in the generator, low-to-high,
    /// always of length `degree`.
    pub fn digits(&self, a: &Elem) -> Vec<u32> {
        let code = self.code(a);
        let p = self.characteristic() as u32;
        let mut c = code;
        (0..self.0.degree)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    /// Integer code of a finite-field element.
    pub fn code(&self, a: &Elem) -> u32 {
        match a {
            Elem::Fin(c) => *c,
            Elem::Rat(_) => panic!("code() on a rational element"),
        }
    }

    /// Element with the given integer code (finite fields only).
    pub fn from_code(&self, code: u64) -> Elem {
        debug_assert!(self.order().is_some_and(|q| code < q));
        Elem::Fin(code as u32)
    }

    /// All elements of a finite field in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        let q = self.order().unwrap_or(0);
        (0..q).map(|c| Elem::Fin(c as u32))
    }

    /// The class of the indeterminate of the modulus (a primitive-looking
    /// generator for extensions, 1 otherwise).
    pub fn generator(&self) -> Elem {
        if self.is_finite() && self.0.degree > 1 {
            Elem::Fin(self.characteristic() as u32)
        } else {
            self.one()
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::Fin(c) => *c == 0,
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_one(),
            Elem::Fin(c) => *c == 1,
        }
    }

    fn decode(&self, code: u32, out: &mut [u64; MAX_DEGREE]) {
        let p = self.characteristic();
        let mut c = code as u64;
        for slot in out.iter_mut().take(self.0.degree as usize) {
            *slot = c % p;
            c /= p;
        }
    }

    fn encode(&self, digits: &[u64]) -> u32 {
        digits.iter().zip(&self.0.powers).map(|(d, w)| d * w).sum::<u64>() as u32
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Elem::Fin(x), Elem::Fin(y)) => {
                let p = self.characteristic();
                if self.0.degree == 1 {
                    return Elem::Fin(((*x as u64 + *y as u64) % p) as u32);
                }
                let (mut da, mut db) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
                self.decode(*x, &mut da);
                self.decode(*y, &mut db);
                let m = self.0.degree as usize;
                for i in 0..m {
                    da[i] = (da[i] + db[i]) % p;
                }
                Elem::Fin(self.encode(&da[..m]))
            }
            _ => panic!("mixed element representations"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::Fin(x) => {
                let p = self.characteristic();
                if self.0.degree == 1 {
                    return Elem::Fin(((p - *x as u64) % p) as u32);
                }
                let mut da = [0u64; MAX_DEGREE];
                self.decode(*x, &mut da);
                let m = self.0.degree as usize;
                for d in da.iter_mut().take(m) {
                    *d = (p - *d) % p;
                }
                Elem::Fin(self.encode(&da[..m]))
            }
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Elem::Fin(x), Elem::Fin(y)) => {
                let p = self.characteristic();
                if self.0.degree == 1 {
                    return Elem::Fin((*x as u64 * *y as u64 % p) as u32);
                }
                if *x == 0 || *y == 0 {
                    return Elem::Fin(0);
                }
                let m = self.0.degree as usize;
                let (mut da, mut db) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
                self.decode(*x, &mut da);
                self.decode(*y, &mut db);
                let mut prod = [0u64; 2 * MAX_DEGREE];
                for i in 0..m {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..m {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                let modulus = self.0.modulus.as_ref().expect("extension modulus");
                for top in (m..2 * m - 1).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    // a^m = -(m_0 + ... + m_{m-1} a^{m-1})
                    for (i, &mi) in modulus.iter().take(m).enumerate() {
                        let slot = top - m + i;
                        prod[slot] = (prod[slot] + p * p - c * mi as u64 % p) % p;
                    }
                }
                Elem::Fin(self.encode(&prod[..m]))
            }
            _ => panic!("mixed element representations"),
        }
    }

    pub fn pow(&self, a: &Elem, mut exp: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Elem::Rat(x) => Elem::Rat(x.recip()),
            Elem::Fin(_) => {
                let q = self.order().expect("finite");
                self.pow(a, q - 2)
            }
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// a ↦ a^p.
    pub fn frobenius(&self, a: &Elem) -> Elem {
        self.pow(a, self.characteristic())
    }

    /// The unique b with b^p = a, computed as a^{p^{m-1}}.
    pub fn inverse_frobenius(&self, a: &Elem) -> Elem {
        let m = self.0.degree as usize;
        self.pow(a, self.0.powers[m - 1])
    }

    /// a ↦ a^{p^k}.
    pub fn frobenius_iter(&self, a: &Elem, k: usize) -> Elem {
        let m = self.0.degree as usize;
        let k = k % m;
        if k == 0 {
            return a.clone();
        }
        self.pow(a, self.0.powers[k])
    }

    /// Human-readable rendering. Extension elements use `a` for the generator.
    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Rat(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Fin(c) if self.0.degree == 1 => c.to_string(),
            Elem::Fin(_) => {
                let digits = self.digits(a);
                let terms: Vec<String> = digits
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d != 0)
                    .map(|(i, &d)| match (i, d) {
                        (0, d) => d.to_string(),
                        (1, 1) => "a".to_string(),
                        (1, d) => format!("{d}a"),
                        (i, 1) => format!("a^{i}"),
                        (i, d) => format!("{d}a^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else if terms.len() == 1 {
                    terms[0].clone()
                } else {
                    format!("({})", terms.join("+"))
                }
            }
        }
    }

    /// Parses an integer or a fraction `n/d` into the field.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_finite() {
            self.div(&self.from_bigint(&num), &self.from_bigint(&den))
        } else {
            Ok(Elem::Rat(BigRational::new(num, den)))
        }
    }

    /// Exact rational value of an element of ℚ.
    pub fn as_rational<'a>(&self, a: &'a Elem) -> Option<&'a BigRational> {
        match a {
            Elem::Rat(r) => Some(r),
            Elem::Fin(_) => None,
        }
    }

    /// Whether a rational element is an integer of absolute value at most `bound`.
    pub fn is_small_integer(&self, a: &Elem, bound: i64) -> bool {
        match a {
            Elem::Rat(r) => r.is_integer() && r.numer().abs() <= BigInt::from(bound),
            Elem::Fin(_) => true,
        }
    }
}

fn check_order(p: u64, m: u32) -> Result<()> {
    let order = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if order > MAX_FIELD_ORDER as u128 || m as usize > MAX_DEGREE {
        return Err(Error::InvalidField(format!("GF({p}^{m}) exceeds the supported order 2^20")));
    }
    Ok(())
}

/// Arithmetic operations of [`Scalar::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A field element bundled with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    elem: Elem,
}

impl Scalar {
    pub fn new(field: &Field, elem: Elem) -> Scalar {
        Scalar { field: field.clone(), elem }
    }

    pub fn from_int(field: &Field, n: i64) -> Scalar {
        Scalar::new(field, field.from_int(n))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> &Elem {
        &self.elem
    }

    pub fn into_elem(self) -> Elem {
        self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.elem)
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let f = &self.field;
        let elem = match op {
            ArithOp::Add => f.add(&self.elem, &other.elem),
            ArithOp::Sub => f.sub(&self.elem, &other.elem),
            ArithOp::Mul => f.mul(&self.elem, &other.elem),
            ArithOp::Div => f.div(&self.elem, &other.elem)?,
        };
        Ok(Scalar::new(f, elem))
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.arith(other, ArithOp::Add)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.arith(other, ArithOp::Div)
    }

    pub fn frobenius(&self, direction: Direction) -> Result<Scalar> {
        if !self.field.is_finite() {
            return Err(Error::NotFiniteField);
        }
        let elem = match direction {
            Direction::Forward => self.field.frobenius(&self.elem),
            Direction::Inverse => self.field.inverse_frobenius(&self.elem),
        };
        Ok(Scalar::new(&self.field, elem))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format(&self.elem), self.field)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.elem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf9() -> Field {
        Field::extension(3, &[1, 0, 1]).unwrap()
    }

    #[test]
    fn gf2_one_plus_one() {
        let f = Field::prime(2).unwrap();
        let one = Scalar::from_int(&f, 1);
        assert!(one.add(&one).unwrap().is_zero());
    }

    #[test]
    fn rational_fraction_sum() {
        let q = Field::rationals();
        let a = Scalar::new(&q, q.parse("1/3").unwrap());
        let b = Scalar::new(&q, q.parse("1/6").unwrap());
        assert_eq!(a.add(&b).unwrap().to_string(), "1/2");
    }

    #[test]
    fn gf9_generator_squared() {
        let f = gf9();
        let x = Scalar::new(&f, f.generator());
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.elem(), &f.from_int(2));
        assert_eq!(sq.elem(), &f.from_int(-1));
    }

    #[test]
    fn frobenius_examples() {
        let f2 = Field::prime(2).unwrap();
        let one = Scalar::from_int(&f2, 1);
        assert_eq!(one.frobenius(Direction::Forward).unwrap(), one);

        let f = gf9();
        let x = Scalar::new(&f, f.generator());
        let two_x = Scalar::new(&f, f.from_digits(&[0, 2]).unwrap());
        assert_eq!(x.frobenius(Direction::Forward).unwrap(), two_x);
        assert_eq!(two_x.frobenius(Direction::Inverse).unwrap(), x);
    }

    #[test]
    fn frobenius_on_rationals_is_an_error() {
        let q = Field::rationals();
        assert_eq!(Scalar::from_int(&q, 2).frobenius(Direction::Forward), Err(Error::NotFiniteField));
    }

    #[test]
    fn mixed_fields_and_division_by_zero() {
        let a = Scalar::from_int(&Field::prime(2).unwrap(), 1);
        let b = Scalar::from_int(&Field::prime(3).unwrap(), 1);
        assert_eq!(a.add(&b), Err(Error::MixedFields));
        let z = Scalar::from_int(a.field(), 0);
        assert_eq!(a.div(&z), Err(Error::DivisionByZero));
    }

    #[test]
    fn default_moduli() {
        assert_eq!(Field::gf(2, 2).unwrap().modulus(), Some(&[1, 1, 1][..]));
        assert_eq!(Field::gf(2, 3).unwrap().modulus(), Some(&[1, 1, 0, 1][..]));
        assert_eq!(Field::gf(3, 2).unwrap().modulus(), Some(&[1, 0, 1][..]));
        assert_eq!(Field::gf(3, 3).unwrap().modulus(), Some(&[1, 2, 0, 1][..]));
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Field::prime(4).is_err());
        assert!(Field::extension(2, &[1, 0, 1]).is_err()); // (x+1)^2
        assert!(Field::gf(2, 21).is_err());
    }

    #[test]
    fn frobenius_round_trip_exhaustive() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2), (2, 6), (3, 4)] {
            let f = Field::gf(p, m).unwrap();
            assert!(f.order().unwrap() <= 81);
            for a in f.elements() {
                assert_eq!(f.inverse_frobenius(&f.frobenius(&a)), a, "{f}");
            }
        }
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for f in [Field::gf(2, 4).unwrap(), Field::gf(5, 2).unwrap(), Field::prime(13).unwrap()] {
            for a in f.elements().skip(1) {
                assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
        }
    }

    fn field_axioms(f: &Field, a: &Elem, b: &Elem, c: &Elem) {
        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        assert_eq!(f.add(a, b), f.add(b, a));
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert!(f.is_zero(&f.add(a, &f.neg(a))));
        if !f.is_zero(a) {
            assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn axioms_gf9(a in 0u64..9, b in 0u64..9, c in 0u64..9) {
            let f = gf9();
            field_axioms(&f, &f.from_code(a), &f.from_code(b), &f.from_code(c));
        }

        #[test]
        fn axioms_gf256(a in 0u64..256, b in 0u64..256, c in 0u64..256) {
            let f = Field::gf(2, 8).unwrap();
            field_axioms(&f, &f.from_code(a), &f.from_code(b), &f.from_code(c));
        }

        #[test]
        fn axioms_gf7(a in 0u64..7, b in 0u64..7, c in 0u64..7) {
            let f = Field::prime(7).unwrap();
            field_axioms(&f, &f.from_code(a), &f.from_code(b), &f.from_code(c));
        }

        #[test]
        fn axioms_rationals(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20, e in -9i64..9) {
            let f = Field::rationals();
            let x = f.from_ratio(a, b).unwrap();
            let y = f.from_ratio(c, d).unwrap();
            let z = f.from_int(e);
            field_axioms(&f, &x, &y, &z);
        }
    }
}
