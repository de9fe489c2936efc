//! Multivariate gcd by subresultant pseudo-remainder sequences with
//! recursive content extraction.

use super::poly::{MPoly, Var};


/// Pseudo-division of `a` by `b` with respect to `v`:
/// `lc_v(b)^(deg a - deg b + 1) * a = q*b + r` with `deg_v r < deg_v b`.
pub fn pseudo_divrem(a: &MPoly, b: &MPoly, v: Var) -> (MPoly, MPoly) {
    assert!(!b.is_zero(), "pseudo-division by zero");
    let db = b.degree_or0(v);
    let lb = b.lc_wrt(v);
    let mut r = a.clone();
    let mut q = MPoly::zero();
    let da = a.degree_or0(v);
    if a.is_zero() || da < db {
        return (MPoly::zero(), a.clone());
    }
    let mut steps_left = (da - db + 1) as i32;
    while !r.is_zero() && r.degree_or0(v) >= db {
        let dr = r.degree_or0(v);
        let lr = r.lc_wrt(v);
        let shift = MPoly::var_pow(v, dr - db);
        let t = lr.mul(&shift);
        q = q.mul(&lb).add(&t);
        r = r.mul(&lb).sub(&t.mul(b));
        steps_left -= 1;
    }
    // pad with remaining powers of lb so the multiplier is always lb^(da-db+1)
    for _ in 0..steps_left {
        q = q.mul(&lb);
        r = r.mul(&lb);
    }
    (q, r)
}

/// Content of `p` with respect to `v`: canonical gcd of the `v`-coefficients.
pub fn content_wrt(p: &MPoly, v: Var) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let mut c = MPoly::zero();
    for coeff in p.coeffs_wrt(v) {
        if coeff.is_zero() {
            continue;
        }
        c = gcd_multi(&c, &coeff);
        if c.is_constant() {
            return MPoly::one();
        }
    }
    c
}

/// `p` divided by its `v`-content, in canonical form.
pub fn primitive_part_wrt(p: &MPoly, v: Var) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let c = content_wrt(p, v);
    p.exact_div(&c)
        .expect("content must divide the polynomial")
        .primitive()
}

/// Canonical gcd with an automatically chosen main variable.
pub fn gcd_multi(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() {
        return q.primitive();
    }
    if q.is_zero() {
        return p.primitive();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::one();
    }
    let vp = p.vars_present();
    let vq = q.vars_present();
    if let Some(&v) = vp.iter().find(|v| vq.contains(v)) {
        return sr_gcd(p, q, v);
    }
    // No shared variable: the gcd is constant.
    MPoly::one()
}

/// Canonical gcd computed with `main_var` as the outer variable.
/// `gcd(0, 0) = 0`, `gcd(p, 0)` is the primitive form of `p`.
pub fn gcd_poly(p: &MPoly, q: &MPoly, main_var: Var) -> MPoly {
    if p.is_zero() {
        return q.primitive();
    }
    if q.is_zero() {
        return p.primitive();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::one();
    }
    if p.involves(main_var) && q.involves(main_var) {
        sr_gcd(p, q, main_var)
    } else {
        gcd_multi(p, q)
    }
}

/// Subresultant PRS gcd; both inputs involve `v`.
fn sr_gcd(p: &MPoly, q: &MPoly, v: Var) -> MPoly {
    let cp = content_wrt(p, v);
    let cq = content_wrt(q, v);
    let cont_gcd = gcd_multi(&cp, &cq);
    let mut a = p.exact_div(&cp).unwrap().primitive();
    let mut b = q.exact_div(&cq).unwrap().primitive();
    if a.degree_or0(v) < b.degree_or0(v) {
        std::mem::swap(&mut a, &mut b);
    }
    if !b.involves(v) {
        // b constant in v after content removal: primitive parts are coprime
        return cont_gcd;
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let delta = a.degree_or0(v) - b.degree_or0(v);
        let (_, r) = pseudo_divrem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_or0(v) == 0 || !r.involves(v) {
            // coprime primitive parts
            return cont_gcd;
        }
        a = b;
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
    }
    cont_gcd.mul(&primitive_part_wrt(&b, v)).primitive()
}

/// Exact division as a free function (`None` when not divisible).
pub fn exact_div(p: &MPoly, d: &MPoly) -> Option<MPoly> {
    p.exact_div(d)
}
