//! Exact Gaussian elimination over Q.

use crate::{Q, Z};
use num_traits::{One, Zero};

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row.
pub fn rref(mat: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let inv = Q::one() / mat[row][col].clone();
        for c in col..cols {
            mat[row][c] = &mat[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..cols {
                    let delta = &mat[row][c] * &f;
                    mat[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the right kernel, integer-scaled.
pub fn nullspace_basis(mat: &mut [Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let pivots = rref(mat);
    let pivot_row_of: std::collections::HashMap<usize, usize> = pivots
        .iter()
        .enumerate()
        .map(|(r, &c)| (c, r))
        .collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_row_of.contains_key(&free) {
            continue;
        }
        let mut x = vec![Q::zero(); cols];
        x[free] = Q::one();
        for (&col, &r) in pivot_row_of.iter() {
            x[col] = -mat[r][free].clone();
        }
        let mut den_lcm = Z::one();
        for q in &x {
            den_lcm = num_integer::Integer::lcm(&den_lcm, q.denom());
        }
        let scale = Q::from_integer(den_lcm);
        basis.push(x.into_iter().map(|q| q * &scale).collect());
    }
    basis
}
