//! Cauchy interpolation of univariate rational functions over Q.

use super::poly::{MPoly, Var};
use crate::{Q, Z};
use num_traits::{One, Zero};

/// Reconstruct `n(t)/d(t)` with `deg n <= num_bound`, `deg d <= den_bound`
/// from samples `(t_i, value_i)` with distinct `t_i`. Returns the reduced
/// pair `(n, d)` with `d` canonical, or `None` when no nonzero solution
/// interpolates the data.
///
/// The homogeneous linear system `n(t_i) - value_i * d(t_i) = 0` is solved
/// exactly; a kernel vector with `d != 0` is reduced by the gcd.
pub fn cauchy_interpolate(
    samples: &[(Q, Q)],
    num_bound: usize,
    den_bound: usize,
    var: Var,
) -> Option<(MPoly, MPoly)> {
    let cols = num_bound + den_bound + 2;
    let rows = samples.len();
    assert!(
        rows >= num_bound + den_bound + 1,
        "not enough samples for the degree bounds"
    );
    let mut mat = vec![vec![Q::zero(); cols]; rows];
    for (r, (t, val)) in samples.iter().enumerate() {
        let mut p = Q::one();
        for c in 0..=num_bound {
            mat[r][c] = p.clone();
            p *= t;
        }
        let mut p = Q::one();
        for c in 0..=den_bound {
            mat[r][num_bound + 1 + c] = -(val * &p);
            p *= t;
        }
    }
    let kernel = kernel_vector(&mut mat, cols)?;
    let num = MPoly::from_coeffs_wrt(
        var,
        &kernel[..=num_bound]
            .iter()
            .cloned()
            .map(MPoly::constant)
            .collect::<Vec<_>>(),
    );
    let den = MPoly::from_coeffs_wrt(
        var,
        &kernel[num_bound + 1..]
            .iter()
            .cloned()
            .map(MPoly::constant)
            .collect::<Vec<_>>(),
    );
    if den.is_zero() {
        return None;
    }
    let g = super::gcd::gcd_poly(&num, &den, var);
    let num = num.exact_div(&g).unwrap();
    let den = den.exact_div(&g).unwrap();
    // canonical denominator
    let (unit, den) = den.normalized();
    let num = num.scale(&(Q::one() / unit));
    Some((num, den))
}

/// One kernel vector of the row system, by fraction-free-ish Gaussian
/// elimination over Q. `None` only when the kernel is trivial.
fn kernel_vector(mat: &mut [Vec<Q>], cols: usize) -> Option<Vec<Q>> {
    let rows = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let pivot = (row..rows).find(|&r| !mat[r][col].is_zero());
        let Some(p) = pivot else { continue };
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
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    let free_col = (0..cols).rev().find(|&c| pivot_of_col[c].is_none())?;
    let mut x = vec![Q::zero(); cols];
    x[free_col] = Q::one();
    for col in 0..cols {
        if let Some(r) = pivot_of_col[col] {
            x[col] = -mat[r][free_col].clone();
        }
    }
    // clear denominators
    let mut den_lcm = Z::one();
    for q in &x {
        den_lcm = num_integer::Integer::lcm(&den_lcm, q.denom());
    }
    let scale = Q::from_integer(den_lcm);
    Some(x.into_iter().map(|q| q * &scale).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Var::T;

    fn q(n: i64, d: i64) -> Q {
        Q::new(Z::from(n), Z::from(d))
    }

    #[test]
    fn reconstructs_rational_function() {
        // f(t) = (t^2 + 1) / (2t - 3)
        let f = |t: &Q| (t * t + Q::one()) / (t + t - q(3, 1));
        let samples: Vec<(Q, Q)> = (5..14).map(|i| (q(i, 1), f(&q(i, 1)))).collect();
        let (num, den) = cauchy_interpolate(&samples, 3, 3, T).unwrap();
        let t = MPoly::var(T);
        assert_eq!(den, t.scale(&q(2, 1)).sub(&MPoly::from_int(3)).primitive());
        // num/den == f up to the canonical unit: cross-check at a fresh point
        let fresh = q(99, 1);
        let lhs = num.eval(T, &fresh).as_constant().unwrap()
            / den.eval(T, &fresh).as_constant().unwrap();
        assert_eq!(lhs, f(&fresh));
    }

    #[test]
    fn reconstructs_polynomial_and_zero() {
        let f = |t: &Q| t * t - q(7, 2);
        let samples: Vec<(Q, Q)> = (1..10).map(|i| (q(i, 1), f(&q(i, 1)))).collect();
        let (num, den) = cauchy_interpolate(&samples, 4, 4, T).unwrap();
        assert!(den.is_constant());
        let fresh = q(31, 1);
        assert_eq!(
            num.eval(T, &fresh).as_constant().unwrap()
                / den.eval(T, &fresh).as_constant().unwrap(),
            f(&fresh)
        );

        let zeros: Vec<(Q, Q)> = (1..8).map(|i| (q(i, 1), Q::zero())).collect();
        let (num, _den) = cauchy_interpolate(&zeros, 3, 3, T).unwrap();
        assert!(num.is_zero());
    }
}
