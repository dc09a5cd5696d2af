#![allow(dead_code)]

use expmat::expmat::jordan_matrix;
use expmat::linalg::Matrix;
use expmat::ppoly::PPoly;
use expmat::{Elem, Field};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let k = rng.gen_range(1..=left);
        parts.push(k);
        left -= k;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub fn random_elem(rng: &mut ChaCha8Rng, f: &Field) -> Elem {
    match f.order() {
        Some(q) => f.from_code(rng.gen_range(0..q)),
        None => f.from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)).unwrap(),
    }
}

pub fn random_invertible(rng: &mut ChaCha8Rng, f: &Field, n: usize) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| random_elem(rng, f)).collect()).collect();
        let m = Matrix::from_rows(f, rows);
        if !f.is_zero(&m.determinant()) {
            return m;
        }
    }
}

/// `P·J·P⁻¹` with `J` the Jordan matrix of `parts`.
pub fn nilpotent_with(rng: &mut ChaCha8Rng, f: &Field, parts: &[usize]) -> Matrix {
    let n = parts.iter().sum();
    let p = random_invertible(rng, f, n);
    p.mul(&jordan_matrix(f, parts)).mul(&p.inverse().unwrap())
}

pub fn random_ppoly(rng: &mut ChaCha8Rng, f: &Field, max_index: usize, nonzero: bool) -> PPoly {
    loop {
        let coeffs = (0..=max_index).map(|_| random_elem(rng, f)).collect();
        let a = PPoly::new(f, coeffs).unwrap();
        if !nonzero || !a.is_zero() {
            return a;
        }
    }
}
