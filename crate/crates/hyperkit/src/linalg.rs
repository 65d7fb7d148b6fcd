//! Small dense complex linear algebra helpers: eigenpairs via a complex Schur
//! decomposition, least-squares decomposition in a given basis, and numerical
//! nullspaces. Everything here works at desk scale (matrices up to ~100x100).

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;

/// Eigenvalues and right eigenvectors of a complex matrix with (numerically)
/// distinct eigenvalues. Returns `None` when the Schur iteration fails or two
/// eigenvalues collide within `gap_tol`.
pub fn eigenpairs_distinct(
    m: &DMatrix<Complex64>,
    gap_tol: f64,
) -> Option<Vec<(Complex64, DVector<Complex64>)>> {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    let schur = m.clone().try_schur(1e-14, 10_000)?;
    let (q, t) = schur.unpack();
    let eigenvalues: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if (eigenvalues[i] - eigenvalues[j]).norm() < gap_tol {
                return None;
            }
        }
    }
    let mut pairs = Vec::with_capacity(n);
    for i in 0..n {
        // Back-substitution on the triangular factor: (T - lambda I) y = 0
        // with y[i] = 1 and y[j] = 0 for j > i.
        let lambda = eigenvalues[i];
        let mut y = DVector::<Complex64>::zeros(n);
        y[i] = Complex64::new(1.0, 0.0);
        for j in (0..i).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in (j + 1)..=i {
                acc += t[(j, k)] * y[k];
            }
            y[j] = -acc / (t[(j, j)] - lambda);
        }
        let mut v = &q * y;
        let norm = v.norm();
        v /= Complex64::new(norm, 0.0);
        pairs.push((lambda, v));
    }
    Some(pairs)
}

/// Least-squares coefficients expressing `target` in the span of `basis`
/// columns, together with the residual norm of the fit.
pub fn decompose_in_basis(
    basis: &[DVector<Complex64>],
    target: &DVector<Complex64>,
) -> Option<(Vec<Complex64>, f64)> {
    let k = basis.len();
    if k == 0 {
        return Some((vec![], target.norm()));
    }
    let mut gram = DMatrix::<Complex64>::zeros(k, k);
    let mut rhs = DVector::<Complex64>::zeros(k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = basis[i].dotc(&basis[j]);
        }
        rhs[i] = basis[i].dotc(target);
    }
    let coeffs = gram.lu().solve(&rhs)?;
    let mut fit = DVector::<Complex64>::zeros(target.len());
    for (c, b) in coeffs.iter().zip(basis) {
        fit += b * *c;
    }
    let residual = (target - fit).norm();
    Some((coeffs.iter().copied().collect(), residual))
}

/// Orthonormal basis of the nullspace of `a`, with rank decided at `tol`.
pub fn nullspace(a: &DMatrix<Complex64>, tol: f64) -> Vec<DVector<Complex64>> {
    let mut m = a.clone();
    let rows = m.nrows();
    let cols = m.ncols();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        // Partial pivot by modulus.
        let (best_row, best_val) = (row..rows)
            .map(|r| (r, m[(r, col)].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if best_val <= tol {
            continue;
        }
        m.swap_rows(row, best_row);
        let pivot = m[(row, col)];
        for c in col..cols {
            m[(row, c)] /= pivot;
        }
        for r in 0..rows {
            if r != row {
                let factor = m[(r, col)];
                if factor.norm() > 0.0 {
                    for c in col..cols {
                        let sub = factor * m[(row, c)];
                        m[(r, c)] -= sub;
                    }
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = DVector::<Complex64>::zeros(cols);
        v[free] = Complex64::new(1.0, 0.0);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[(r, free)];
        }
        basis.push(v);
    }
    // Modified Gram-Schmidt.
    let mut ortho: Vec<DVector<Complex64>> = Vec::with_capacity(basis.len());
    for mut v in basis {
        for u in &ortho {
            let proj = u.dotc(&v);
            v -= u * proj;
        }
        let norm = v.norm();
        if norm > tol {
            v /= Complex64::new(norm, 0.0);
            ortho.push(v);
        }
    }
    ortho
}

/// B^H A B for an orthonormal column set B spanning an A-invariant subspace.
pub fn restrict_to_subspace(
    a: &DMatrix<Complex64>,
    basis: &[DVector<Complex64>],
) -> DMatrix<Complex64> {
    let k = basis.len();
    let mut out = DMatrix::<Complex64>::zeros(k, k);
    let images: Vec<DVector<Complex64>> = basis.iter().map(|b| a * b).collect();
    for (j, img) in images.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            out[(i, j)] = b.dotc(img);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigenpairs_of_diagonalizable_matrix() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), c(3.0, 0.0)]);
        let pairs = eigenpairs_distinct(&m, 1e-8).unwrap();
        let mut eigs: Vec<f64> = pairs.iter().map(|(l, _)| l.re).collect();
        eigs.sort_by(f64::total_cmp);
        assert!((eigs[0] - 1.0).abs() < 1e-10 && (eigs[1] - 2.0).abs() < 1e-10);
        for (l, v) in &pairs {
            assert!((&m * v - v * *l).norm() < 1e-10);
        }
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = DMatrix::from_row_slice(2, 3, &[
            c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0),
            c(2.0, 0.0), c(4.0, 0.0), c(6.0, 0.0),
        ]);
        let ns = nullspace(&m, 1e-10);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((&m * v).norm() < 1e-10);
        }
    }

    #[test]
    fn decompose_exact_combination() {
        let b1 = DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let b2 = DVector::from_vec(vec![c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let target = &b1 * c(2.0, 0.0) + &b2 * c(0.0, -1.0);
        let (coeffs, residual) = decompose_in_basis(&[b1, b2], &target).unwrap();
        assert!(residual < 1e-12);
        assert!((coeffs[0] - c(2.0, 0.0)).norm() < 1e-12);
        assert!((coeffs[1] - c(0.0, -1.0)).norm() < 1e-12);
    }
}
