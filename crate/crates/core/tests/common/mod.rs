//! Independent dense builders used as oracles: Hamiltonians assembled from
//! Kronecker products of 2x2 Pauli matrices, without the crate's bit tricks.

#![allow(dead_code)]

use nalgebra::DMatrix;
use spinchain_core::Complex64;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn pauli(axis: char) -> DMatrix<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    match axis {
        'I' => DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(1.0)]),
        'X' => DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]),
        'Y' => DMatrix::from_row_slice(2, 2, &[c(0.0), -i, i, c(0.0)]),
        'Z' => DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]),
        _ => panic!("unknown axis {axis}"),
    }
}

/// Operator on `n` spins with `ops` on the given sites; spin `j` is bit `j`
/// of the basis index, so the Kronecker product runs from spin `n-1` down.
pub fn operator(n: usize, ops: &[(usize, char)]) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(1, 1, c(1.0));
    for site in (0..n).rev() {
        let axis = ops.iter().find(|o| o.0 == site).map_or('I', |o| o.1);
        m = m.kronecker(&pauli(axis));
    }
    m
}

/// Ashkin-Teller chain of `m` sites in the computational frame,
/// σ_j on spin 2(j-1), τ_j on spin 2(j-1)+1.
pub fn at_dense(m: usize, delta: f64, beta: f64) -> DMatrix<Complex64> {
    let n = 2 * m;
    let s = |j: usize| 2 * (j % m);
    let t = |j: usize| 2 * (j % m) + 1;
    let mut h = DMatrix::zeros(1 << n, 1 << n);
    for j in 0..m {
        h -= operator(n, &[(s(j), 'X')]);
        h -= operator(n, &[(t(j), 'X')]);
        h -= operator(n, &[(s(j), 'X'), (t(j), 'X')]) * c(delta);
        let zz_s = operator(n, &[(s(j), 'Z'), (s(j + 1), 'Z')]);
        let zz_t = operator(n, &[(t(j), 'Z'), (t(j + 1), 'Z')]);
        h -= (&zz_s + &zz_t + &zz_s * &zz_t * c(delta)) * c(beta);
    }
    h
}

/// Staggered XXZ chain of `2m` spins.
pub fn xxz_dense(m: usize, delta: f64, beta: f64) -> DMatrix<Complex64> {
    let n = 2 * m;
    let mut h = DMatrix::zeros(1 << n, 1 << n);
    for i in 0..n {
        let (a, b) = (i, (i + 1) % n);
        let coupling = if i % 2 == 0 { 1.0 } else { beta };
        let bond = operator(n, &[(a, 'X'), (b, 'X')]) + operator(n, &[(a, 'Y'), (b, 'Y')])
            - operator(n, &[(a, 'Z'), (b, 'Z')]) * c(delta);
        h -= bond * c(coupling);
    }
    h
}

/// Transverse-field Ising ring `-Σ σ^x - β Σ σ^z σ^z` on `m` spins.
pub fn ising_dense(m: usize, beta: f64) -> DMatrix<Complex64> {
    let mut h = DMatrix::zeros(1 << m, 1 << m);
    for j in 0..m {
        h -= operator(m, &[(j, 'X')]);
        h -= operator(m, &[(j, 'Z'), ((j + 1) % m, 'Z')]) * c(beta);
    }
    h
}

pub fn eigenvalues(h: DMatrix<Complex64>) -> Vec<f64> {
    let mut v: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
