//! Squarefree decomposition by Yun's algorithm.

use super::gcd::{content_wrt, gcd_multi};
use super::poly::{MPoly, Var};
use crate::Q;


/// `unit * prod b_k^k` reconstructs the input; the `b_k` are pairwise
/// coprime, squarefree and canonical.
#[derive(Debug, Clone)]
pub struct SquarefreeDecomposition {
    pub unit: Q,
    pub factors: Vec<(MPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> MPoly {
        let mut p = MPoly::constant(self.unit.clone());
        for (b, k) in &self.factors {
            p = p.mul(&b.pow(*k));
        }
        p
    }
}

/// Squarefree decomposition of a nonzero polynomial. Content with respect
/// to the main variable is decomposed recursively, so primitive bivariate
/// inputs are fine.
pub fn squarefree(p: &MPoly) -> SquarefreeDecomposition {
    assert!(!p.is_zero(), "squarefree decomposition of 0");
    if let Some(c) = p.as_constant() {
        return SquarefreeDecomposition {
            unit: c,
            factors: Vec::new(),
        };
    }
    let v = p.vars_present()[0];
    let cont = content_wrt(p, v);
    let pp = p.exact_div(&cont).expect("content divides");
    let (unit_pp, pp) = pp.normalized();
    let mut dec = yun(&pp, v);
    dec.unit *= unit_pp;
    if !cont.is_constant() {
        let cont_dec = squarefree(&cont);
        dec.unit *= cont_dec.unit;
        for (b, k) in cont_dec.factors {
            merge_factor(&mut dec.factors, b, k);
        }
    } else {
        dec.unit *= cont.as_constant().unwrap();
    }
    dec.factors.sort_by(|a, b| a.1.cmp(&b.1));
    dec
}

/// Insert a factor, multiplying into an existing one of equal multiplicity
/// (factors from content and primitive part are coprime).
fn merge_factor(factors: &mut Vec<(MPoly, u32)>, b: MPoly, k: u32) {
    for (f, m) in factors.iter_mut() {
        if *m == k {
            *f = f.mul(&b);
            return;
        }
    }
    factors.push((b, k));
}

/// Yun's algorithm on a canonical polynomial, `v`-primitive content-wise.
fn yun(p: &MPoly, v: Var) -> SquarefreeDecomposition {
    let deriv = p.derivative(v);
    let a0 = gcd_multi(p, &deriv);
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let mut c = deriv.exact_div(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative(v));
    let mut factors = Vec::new();
    let mut i = 1u32;
    while !b.is_constant() {
        let ai = gcd_multi(&b, &d);
        if !ai.is_constant() {
            factors.push((ai.clone(), i));
        }
        b = b.exact_div(&ai).expect("gcd divides");
        c = d.exact_div(&ai).expect("gcd divides");
        d = c.sub(&b.derivative(v));
        i += 1;
    }
    // The product of canonical factors can differ from p by a rational unit.
    let mut prod = MPoly::one();
    for (f, k) in &factors {
        prod = prod.mul(&f.pow(*k));
    }
    let unit = p
        .exact_div(&prod)
        .expect("squarefree factors reconstruct input")
        .as_constant()
        .expect("unit must be constant");
    SquarefreeDecomposition { unit, factors }
}
