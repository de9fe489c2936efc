//! Resultants by the subresultant pseudo-remainder sequence.

use super::gcd::{content_wrt, pseudo_divrem};
use super::poly::{MPoly, Var};

/// Full content of `p` with respect to `v`, including the rational unit, so
/// that `p = full_content * primitive` holds exactly with a canonical
/// primitive part.
fn full_content_wrt(p: &MPoly, v: Var) -> (MPoly, MPoly) {
    let c = content_wrt(p, v);
    let quotient = p.exact_div(&c).expect("content divides");
    let (unit, prim) = quotient.normalized();
    (c.scale(&unit), prim)
}

/// Sylvester resultant of `p` and `q` eliminating `v`.
///
/// Degenerate conventions: `Res(0, q) = 0`; for `p`, `q` both constant in
/// `v` the resultant is 1; for `p` constant it is `p^deg(q)`.
pub fn resultant(p: &MPoly, q: &MPoly, v: Var) -> MPoly {
    if p.is_zero() || q.is_zero() {
        return MPoly::zero();
    }
    let m = p.degree_or0(v);
    let n = q.degree_or0(v);
    if m == 0 && n == 0 {
        return MPoly::one();
    }
    if m == 0 {
        return p.pow(n as u32);
    }
    if n == 0 {
        return q.pow(m as u32);
    }
    let mut sign_flip = false;
    let (mut a_poly, mut b_poly) = (p.clone(), q.clone());
    if m < n {
        std::mem::swap(&mut a_poly, &mut b_poly);
        if m % 2 == 1 && n % 2 == 1 {
            sign_flip = !sign_flip;
        }
    }
    let (ca, mut a) = full_content_wrt(&a_poly, v);
    let (cb, mut b) = full_content_wrt(&b_poly, v);
    let t = ca
        .pow(b.degree_or0(v) as u32)
        .mul(&cb.pow(a.degree_or0(v) as u32));
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let da = a.degree_or0(v);
        let db = b.degree_or0(v);
        if da % 2 == 1 && db % 2 == 1 {
            sign_flip = !sign_flip;
        }
        let delta = da - db;
        let (_, r) = pseudo_divrem(&a, &b, v);
        a = b;
        if r.is_zero() {
            // positive-degree common factor
            return MPoly::zero();
        }
        let denom = g.mul(&h.pow(delta as u32));
        b = r.exact_div(&denom).expect("subresultant division is exact");
        g = a.lc_wrt(v);
        h = if delta == 0 {
            h
        } else if delta == 1 {
            g.clone()
        } else {
            g.pow(delta as u32)
                .exact_div(&h.pow(delta as u32 - 1))
                .expect("subresultant h-update is exact")
        };
        if b.degree_or0(v) == 0 {
            break;
        }
    }
    let da = a.degree_or0(v);
    // h <- lc(B)^(deg A) / h^(deg A - 1)
    let h_final = if da == 0 {
        unreachable!("loop maintains deg a >= 1")
    } else if da == 1 {
        b
    } else {
        b.pow(da as u32)
            .exact_div(&h.pow(da as u32 - 1))
            .expect("final subresultant division is exact")
    };
    let res = t.mul(&h_final);
    if sign_flip {
        res.neg()
    } else {
        res
    }
}
