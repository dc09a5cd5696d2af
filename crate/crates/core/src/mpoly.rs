//! Sparse multivariate polynomials and the localization at the first variable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{Elem, Field};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then lexicographically with the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl MPoly {
    pub fn zero(field: &Field, nvars: usize) -> MPoly {
        MPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: Elem) -> MPoly {
        let mut p = MPoly::zero(field, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(field: &Field, nvars: usize) -> MPoly {
        MPoly::constant(field, nvars, field.one())
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> MPoly {
        assert!(i < nvars, "variable index {i} out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = MPoly::zero(field, nvars);
        p.add_term(exps, field.one());
        p
    }

    pub fn monomial(field: &Field, exps: Vec<u32>, c: Elem) -> MPoly {
        let mut p = MPoly::zero(field, exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(field: &Field, nvars: usize, terms: Vec<(Vec<u32>, Elem)>) -> MPoly {
        let mut p = MPoly::zero(field, nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c · x^exps` in place.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Elem) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if self.field.is_zero(&c) {
            return;
        }
        let key = Monomial(exps);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = self.field.add(existing, &c);
                if self.field.is_zero(&sum) {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &Elem)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Elem {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Highest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    /// Degree restricted to the variables selected by `mask`, if every term
    /// has the same such degree.
    pub fn homogeneous_degree(&self, mask: &[bool]) -> Option<u64> {
        let mut degs = self.terms.keys().map(|m| {
            m.0.iter().zip(mask).filter(|(_, &on)| on).map(|(&e, _)| e as u64).sum::<u64>()
        });
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Elem) -> MPoly {
        let f = &self.field;
        if f.is_zero(c) {
            return MPoly::zero(f, self.nvars);
        }
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn mul_monomial(&self, exps: &[u32]) -> MPoly {
        MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.0.iter().zip(exps).map(|(a, b)| a + b).collect()), c.clone()))
                .collect(),
        }
    }

    /// Greatest common monomial divisor of all terms (zero vector for zero).
    pub fn monomial_content(&self) -> Vec<u32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut g = first.0.clone();
        for m in it {
            for (gi, &e) in g.iter_mut().zip(&m.0) {
                *gi = (*gi).min(e);
            }
        }
        g
    }

    /// Divides by `x^exps`; every term must be divisible.
    pub fn div_monomial(&self, exps: &[u32]) -> MPoly {
        MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = m.0.iter().zip(exps).map(|(a, b)| a.checked_sub(*b).expect("monomial divides")).collect();
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> MPoly {
        let f = &self.field;
        let mut out = MPoly::zero(f, self.nvars);
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            out.add_term(e, f.mul(c, &f.from_int(k as i64)));
        }
        out
    }

    /// Raises every coefficient to the `p^k`-th power and multiplies every
    /// exponent by `p^k`; this is `self^{p^k}` in characteristic `p`.
    fn frobenius_power(&self, k: u32) -> MPoly {
        let f = &self.field;
        let q = f.characteristic().pow(k) as u32;
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.0.iter().map(|e| e * q).collect()), f.frobenius_iter(c, k as usize)))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u64) -> MPoly {
        let p = self.field.characteristic();
        if exp == 0 {
            return MPoly::one(&self.field, self.nvars);
        }
        if p == 0 || self.terms.len() <= 1 {
            return self.binary_pow(exp);
        }
        // base-p expansion: f^e = Π_k (f^{p^k})^{d_k}
        let mut acc = MPoly::one(&self.field, self.nvars);
        let mut e = exp;
        let mut k = 0;
        while e > 0 {
            let d = e % p;
            if d > 0 {
                acc = &acc * &self.frobenius_power(k).binary_pow(d);
            }
            e /= p;
            k += 1;
        }
        acc
    }

    fn binary_pow(&self, mut exp: u64) -> MPoly {
        let mut acc = MPoly::one(&self.field, self.nvars);
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

    /// Replaces variable `i` by `images[i]`. All images share a variable count,
    /// which becomes the variable count of the result.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let out_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        let f = &self.field;
        let mut cache: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut out = MPoly::zero(f, out_vars);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(f, out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let power = cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u64));
                term = &term * power;
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        out
    }

    pub fn eval(&self, point: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v = f.mul(&v, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &v);
        }
        acc
    }

    /// Re-embeds into a ring with `nvars` variables, keeping the first ones.
    /// Dropped variables must not occur.
    pub fn with_nvars(&self, nvars: usize) -> MPoly {
        let mut out = MPoly::zero(&self.field, nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            if nvars < e.len() {
                assert!(e[nvars..].iter().all(|&x| x == 0), "dropping a variable that occurs");
            }
            e.resize(nvars, 0);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Renders with the given variable names, highest term first.
    pub fn format_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let name = names.get(i).copied().map(str::to_string).unwrap_or_else(|| format!("v{i}"));
                        if e == 1 {
                            name
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
                let coeff = f.format(c);
                match (mono.is_empty(), coeff.as_str()) {
                    (true, _) => coeff,
                    (false, "1") => mono.join("*"),
                    (false, "-1") => format!("-{}", mono.join("*")),
                    (false, _) => format!("{coeff}*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ").replace("+ -", "- ")
    }

    fn default_names(&self) -> Vec<String> {
        (0..self.nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.format_with(&refs))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

fn assert_compatible(a: &MPoly, b: &MPoly) {
    assert!(a.field == b.field, "polynomials over different fields");
    assert_eq!(a.nvars, b.nvars, "polynomials in different rings");
}

impl Add for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        assert_compatible(self, rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        let f = &self.field;
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        assert_compatible(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), self.field.neg(c));
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_compatible(self, rhs);
        let f = &self.field;
        let mut acc: HashMap<Vec<u32>, Elem> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                let prod = f.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(slot) => *slot = f.add(slot, &prod),
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !f.is_zero(c)).map(|(e, c)| (Monomial(e), c)).collect(),
        }
    }
}

/// An element `numerator / x₀^ℓ` of the localization at the first variable,
/// with `ℓ` minimal.
#[derive(Clone, PartialEq, Eq)]
pub struct LocElem {
    numerator: MPoly,
    power: u32,
}

impl LocElem {
    pub fn new(numerator: MPoly, power: u32) -> LocElem {
        let mut e = LocElem { numerator, power };
        e.normalize();
        e
    }

    pub fn from_poly(p: MPoly) -> LocElem {
        LocElem { numerator: p, power: 0 }
    }

    /// `x_i / x₀`.
    pub fn ratio(field: &Field, nvars: usize, i: usize) -> LocElem {
        LocElem::new(MPoly::var(field, nvars, i), 1)
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.power = 0;
            return;
        }
        let strip = self.numerator.monomial_content()[0].min(self.power);
        if strip > 0 {
            let mut e = vec![0; self.numerator.nvars()];
            e[0] = strip;
            self.numerator = self.numerator.div_monomial(&e);
            self.power -= strip;
        }
    }

    pub fn numerator(&self) -> &MPoly {
        &self.numerator
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn field(&self) -> &Field {
        self.numerator.field()
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    /// Numerator after multiplying through by `x₀^target` (`target ≥ power`).
    pub fn numerator_over(&self, target: u32) -> MPoly {
        let mut e = vec![0; self.nvars()];
        e[0] = target - self.power;
        self.numerator.mul_monomial(&e)
    }

    pub fn scale(&self, c: &Elem) -> LocElem {
        LocElem::new(self.numerator.scale(c), self.power)
    }

    /// Applies `g` to the numerator, keeping the denominator. Valid whenever
    /// `g` is additive and commutes with multiplication by `x₀`.
    pub fn map_numerator(&self, g: impl FnOnce(&MPoly) -> MPoly) -> LocElem {
        LocElem::new(g(&self.numerator), self.power)
    }

    pub fn pow(&self, exp: u32) -> LocElem {
        LocElem::new(self.numerator.pow(exp as u64), self.power * exp)
    }
}

impl Add for &LocElem {
    type Output = LocElem;

    fn add(self, rhs: &LocElem) -> LocElem {
        let target = self.power.max(rhs.power);
        LocElem::new(&self.numerator_over(target) + &rhs.numerator_over(target), target)
    }
}

impl Sub for &LocElem {
    type Output = LocElem;

    fn sub(self, rhs: &LocElem) -> LocElem {
        let target = self.power.max(rhs.power);
        LocElem::new(&self.numerator_over(target) - &rhs.numerator_over(target), target)
    }
}

impl Neg for &LocElem {
    type Output = LocElem;

    fn neg(self) -> LocElem {
        LocElem { numerator: -&self.numerator, power: self.power }
    }
}

impl Mul for &LocElem {
    type Output = LocElem;

    fn mul(self, rhs: &LocElem) -> LocElem {
        LocElem::new(&self.numerator * &rhs.numerator, self.power + rhs.power)
    }
}

impl fmt::Debug for LocElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / x0^{}", self.numerator, self.power)
        }
    }
}
