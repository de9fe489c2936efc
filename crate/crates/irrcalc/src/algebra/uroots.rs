//! Exact real-root isolation (Sturm) and complete rational-root extraction
//! for univariate polynomials over Q.

use super::poly::{MPoly, Var};
use crate::{Q, Z};
use num_traits::{One, Signed, Zero};

/// Dense coefficient vector (ascending powers) of a polynomial univariate
/// in `v`. Panics when other variables occur.
pub fn dense_coeffs(p: &MPoly, v: Var) -> Vec<Q> {
    p.coeffs_wrt(v)
        .into_iter()
        .map(|c| c.as_constant().expect("polynomial is not univariate"))
        .collect()
}

fn trim(c: &mut Vec<Q>) {
    while c.last().is_some_and(|q| q.is_zero()) {
        c.pop();
    }
}

pub fn eval_dense(c: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for k in c.iter().rev() {
        acc = acc * x + k;
    }
    acc
}

fn derivative_dense(c: &[Q]) -> Vec<Q> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, q)| q * Q::from_integer(Z::from(i)))
        .collect()
}

/// Remainder of dense division, normalized to positive content so signs are
/// those of the true Sturm sequence.
fn neg_rem_primitive(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let factor = lr / &lb;
        for i in 0..db {
            let delta = &b[i] * &factor;
            r[shift + i] -= delta;
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            return r;
        }
    }
    // negate and scale by positive content
    let mut content = Q::zero();
    for q in &r {
        if !q.is_zero() {
            let a = q.abs();
            content = if content.is_zero() {
                a
            } else {
                gcd_q(&content, &a)
            };
        }
    }
    if content.is_zero() {
        return Vec::new();
    }
    r.iter().map(|q| -(q / &content)).collect()
}

fn gcd_q(a: &Q, b: &Q) -> Q {
    use num_integer::Integer;
    Q::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(p: &[Q]) -> Vec<Vec<Q>> {
    let mut chain = vec![p.to_vec(), derivative_dense(p)];
    loop {
        let n = chain.len();
        let last = &chain[n - 1];
        if last.is_empty() || last.len() == 1 {
            break;
        }
        let next = neg_rem_primitive(&chain[n - 2], last);
        if next.is_empty() {
            break;
        }
        chain.push(next);
    }
    chain
}

fn sign_variations_at(chain: &[Vec<Q>], x: &Q) -> usize {
    let mut count = 0;
    let mut prev: Option<bool> = None;
    for c in chain {
        let val = eval_dense(c, x);
        if val.is_zero() {
            continue;
        }
        let neg = val.is_negative();
        if let Some(p) = prev {
            if p != neg {
                count += 1;
            }
        }
        prev = Some(neg);
    }
    count
}

/// Cauchy bound: all real roots lie in (-M, M).
fn root_bound(c: &[Q]) -> Q {
    let lc = c.last().unwrap().abs();
    let mut m = Q::zero();
    for q in &c[..c.len() - 1] {
        let r = q.abs() / &lc;
        if r > m {
            m = r;
        }
    }
    m + Q::one() + Q::one()
}

/// The rational with smallest denominator strictly inside `(lo, hi)`.
fn simplest_in(lo: &Q, hi: &Q) -> Q {
    assert!(lo < hi);
    let fl = lo.floor();
    let candidate = fl.clone() + Q::one();
    if &candidate < hi {
        return candidate; // an integer fits
    }
    if lo == &fl {
        // interval (n, hi) with hi <= n+1: take n + 1/k for minimal k
        let inv = Q::one() / (hi - lo);
        let k = inv.floor() + Q::one();
        return lo + Q::one() / k;
    }
    let sub = simplest_in(&(Q::one() / (hi - &fl)), &(Q::one() / (lo - &fl)));
    fl + Q::one() / sub
}

/// All rational roots of a nonzero univariate polynomial, exactly.
///
/// Sturm isolation shrinks each root interval below the minimal gap
/// `1/(2 lc^2)` between denominator-bounded rationals; the Stern-Brocot
/// representative of the interval is then the only possible rational root
/// and is verified by exact evaluation.
pub fn rational_roots(p: &MPoly, v: Var) -> Vec<Q> {
    let mut c = dense_coeffs(p, v);
    trim(&mut c);
    assert!(!c.is_empty(), "rational_roots of 0");
    let mut roots = Vec::new();
    // factor out the root at 0
    let ord = c.iter().take_while(|q| q.is_zero()).count();
    if ord > 0 {
        roots.push(Q::zero());
        c.drain(..ord);
    }
    if c.len() <= 1 {
        return roots;
    }
    // squarefree part over Q
    let sf = {
        let var_poly = MPoly::from_coeffs_wrt(v, &c.iter().cloned().map(MPoly::constant).collect::<Vec<_>>());
        let d = var_poly.derivative(v);
        let g = super::gcd::gcd_poly(&var_poly, &d, v);
        let q = var_poly.exact_div(&g).unwrap();
        let mut dc = dense_coeffs(&q, v);
        trim(&mut dc);
        dc
    };
    if sf.len() <= 1 {
        return roots;
    }
    // integer-primitive scaling for the denominator bound
    let mut den_lcm = Z::one();
    for q in &sf {
        den_lcm = num_integer::Integer::lcm(&den_lcm, q.denom());
    }
    let int_coeffs: Vec<Q> = sf
        .iter()
        .map(|q| q * Q::from_integer(den_lcm.clone()))
        .collect();
    let lc_abs = int_coeffs.last().unwrap().numer().abs();
    // width below which at most one denominator-bounded rational fits
    let eps = Q::new(Z::one(), Z::from(2) * &lc_abs * &lc_abs + Z::one());
    let chain = sturm_chain(&sf);
    let bound = root_bound(&sf);
    let mut intervals = Vec::new();
    isolate(&chain, &sf, &(-bound.clone()), &bound, &mut intervals, &mut roots);
    for (mut a, mut b) in intervals {
        // bisect to width < eps; exact sign tests
        let fa_neg = eval_dense(&sf, &a).is_negative();
        while &b - &a >= eps {
            let mid = (&a + &b) / Q::from_integer(Z::from(2));
            let fm = eval_dense(&sf, &mid);
            if fm.is_zero() {
                a = mid.clone();
                b = mid;
                break;
            }
            if fm.is_negative() == fa_neg {
                a = mid;
            } else {
                b = mid;
            }
        }
        if a == b {
            roots.push(a);
            continue;
        }
        let cand = simplest_in(&a, &b);
        if eval_dense(&sf, &cand).is_zero() {
            roots.push(cand);
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Recursive Sturm bisection; exact roots hit at endpoints are recorded
/// immediately, open intervals with exactly one root are pushed.
fn isolate(
    chain: &[Vec<Q>],
    p: &[Q],
    a: &Q,
    b: &Q,
    intervals: &mut Vec<(Q, Q)>,
    roots: &mut Vec<Q>,
) {
    let n_roots = sign_variations_at(chain, a) as i64 - sign_variations_at(chain, b) as i64;
    if n_roots <= 0 {
        return;
    }
    if n_roots == 1 {
        if eval_dense(p, b).is_zero() {
            roots.push(b.clone());
        } else {
            intervals.push((a.clone(), b.clone()));
        }
        return;
    }
    let mid = (a + b) / Q::from_integer(Z::from(2));
    isolate(chain, p, a, &mid, intervals, roots);
    isolate(chain, p, &mid, b, intervals, roots);
}

/// Multiplicity of the root `c` in `p` (0 when not a root).
pub fn multiplicity_at(p: &MPoly, v: Var, c: &Q) -> u32 {
    assert!(!p.is_zero());
    let mut coeffs = dense_coeffs(p, v);
    trim(&mut coeffs);
    let mut k = 0;
    loop {
        if coeffs.is_empty() || !eval_dense(&coeffs, c).is_zero() {
            return k;
        }
        // synthetic division by (v - c)
        let mut out = vec![Q::zero(); coeffs.len() - 1];
        let mut carry = Q::zero();
        for i in (0..coeffs.len()).rev() {
            let val = &coeffs[i] + &carry * c;
            if i == 0 {
                debug_assert!(val.is_zero());
            } else {
                out[i - 1] = val.clone();
                carry = val;
            }
        }
        coeffs = out;
        k += 1;
        if coeffs.is_empty() {
            return k;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Var::S;

    fn s() -> MPoly {
        MPoly::var(S)
    }
    fn q(n: i64, d: i64) -> Q {
        Q::new(Z::from(n), Z::from(d))
    }

    #[test]
    fn rational_roots_complete() {
        // (s - 1/2)(s + 3)(s^2 - 2) * s
        let p = s()
            .sub(&MPoly::constant(q(1, 2)))
            .mul(&s().add(&MPoly::from_int(3)))
            .mul(&s().pow(2).sub(&MPoly::from_int(2)))
            .mul(&s());
        let mut roots = rational_roots(&p, S);
        roots.sort();
        assert_eq!(roots, vec![q(-3, 1), q(0, 1), q(1, 2)]);
    }

    #[test]
    fn no_rational_roots() {
        let p = s().pow(2).add(&MPoly::one()); // s^2+1
        assert!(rational_roots(&p, S).is_empty());
        let p = s().pow(2).sub(&MPoly::from_int(3));
        assert!(rational_roots(&p, S).is_empty());
    }

    #[test]
    fn close_roots_separated() {
        // roots 1/3 and 1/3 + 1/1000
        let a = s().scale(&q(3, 1)).sub(&MPoly::one());
        let b = s()
            .scale(&q(3000, 1))
            .sub(&MPoly::constant(q(1003, 1)));
        let p = a.mul(&b);
        let mut roots = rational_roots(&p, S);
        roots.sort();
        assert_eq!(roots, vec![q(1, 3), q(1003, 3000)]);
    }

    #[test]
    fn multiplicities() {
        let p = s().sub(&MPoly::one()).pow(3).mul(&s().add(&MPoly::one()));
        assert_eq!(multiplicity_at(&p, S, &q(1, 1)), 3);
        assert_eq!(multiplicity_at(&p, S, &q(-1, 1)), 1);
        assert_eq!(multiplicity_at(&p, S, &q(2, 1)), 0);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_in(&q(1, 3), &q(1, 2)), q(2, 5));
        assert_eq!(simplest_in(&q(-1, 2), &q(1, 2)), q(0, 1));
        assert_eq!(simplest_in(&q(5, 2), &q(7, 2)), q(3, 1));
    }
}
