//! Sparse multivariate polynomials over Q.
//!
//! Monomials are exponent vectors over a fixed variable universe; terms are
//! kept in a BTreeMap keyed by monomial, so every polynomial has one
//! canonical representation. The term order is lex with the variable
//! priority `s > t > x > y > tau > u > v > w > z0 > ... > z7`.

use crate::{Q, Z};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Number of variables in the fixed universe.
pub const NVARS: usize = 16;

/// Variable symbols. The discriminant lives in `(s, t)`, inputs in `(x, y)`,
/// boundary parametrizations in `tau`, chart coordinates in `(u, v, w)` and
/// `z0..z7` are internal algebraic-extension generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Var {
    S = 0,
    T = 1,
    X = 2,
    Y = 3,
    Tau = 4,
    U = 5,
    V = 6,
    W = 7,
    Z0 = 8,
    Z1 = 9,
    Z2 = 10,
    Z3 = 11,
    Z4 = 12,
    Z5 = 13,
    Z6 = 14,
    Z7 = 15,
}

impl Var {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        use Var::*;
        [S, T, X, Y, Tau, U, V, W, Z0, Z1, Z2, Z3, Z4, Z5, Z6, Z7][i]
    }

    /// Extension generator for tower level `k`.
    pub fn ext(k: usize) -> Var {
        assert!(k < 8, "extension tower deeper than 8 levels");
        Var::from_index(8 + k)
    }

    pub fn name(self) -> &'static str {
        use Var::*;
        match self {
            S => "s",
            T => "t",
            X => "x",
            Y => "y",
            Tau => "tau",
            U => "u",
            V => "v",
            W => "w",
            Z0 => "z0",
            Z1 => "z1",
            Z2 => "z2",
            Z3 => "z3",
            Z4 => "z4",
            Z5 => "z5",
            Z6 => "z6",
            Z7 => "z7",
        }
    }
}

/// Exponent vector over the fixed variable universe.
pub type Mono = [u16; NVARS];

pub const MONO_ONE: Mono = [0; NVARS];

/// Lex comparison with `Var` priority (index 0 most significant).
pub fn lex_cmp(a: &Mono, b: &Mono) -> Ordering {
    for i in 0..NVARS {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut r = [0u16; NVARS];
    for i in 0..NVARS {
        r[i] = a[i]
            .checked_add(b[i])
            .expect("monomial exponent overflow");
    }
    r
}

/// Componentwise division; `None` when not divisible.
pub fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    let mut r = [0u16; NVARS];
    for i in 0..NVARS {
        if a[i] < b[i] {
            return None;
        }
        r[i] = a[i] - b[i];
    }
    Some(r)
}

/// A sparse polynomial over Q. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<LexMono, Q>,
}

/// Wrapper giving BTreeMap the lex order above.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct LexMono(pub Mono);

impl Ord for LexMono {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(&self.0, &other.0)
    }
}
impl PartialOrd for LexMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl fmt::Debug for LexMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(LexMono(MONO_ONE), c);
        }
        MPoly { terms }
    }

    pub fn from_int(n: i64) -> MPoly {
        MPoly::constant(Q::from_integer(Z::from(n)))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> MPoly {
        let mut m = MONO_ONE;
        m[v.index()] = e;
        MPoly::from_term(m, Q::one())
    }

    pub fn from_term(m: Mono, c: Q) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(LexMono(m), c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Q)>) -> MPoly {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(&m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.0 == MONO_ONE)
    }

    /// The constant term (coefficient of the trivial monomial).
    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&LexMono(MONO_ONE))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// As a constant, when it is one.
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter().map(|(m, c)| (&m.0, c))
    }

    pub fn add_term(&mut self, m: &Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        let k = LexMono(*m);
        match self.terms.get_mut(&k) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    /// Leading term in the global lex order.
    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back().map(|(m, c)| (&m.0, c))
    }

    pub fn degree(&self, v: Var) -> Option<u16> {
        self.terms.keys().map(|m| m.0[v.index()]).max()
    }

    /// Degree in `v`, with deg(0) = 0 by convention.
    pub fn degree_or0(&self, v: Var) -> u16 {
        self.degree(v).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u16 {
        self.terms
            .keys()
            .map(|m| m.0.iter().sum::<u16>())
            .max()
            .unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.0[v.index()] > 0)
    }

    pub fn vars_present(&self) -> Vec<Var> {
        (0..NVARS)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(Var::from_index)
            .collect()
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in other.terms.iter() {
            r.add_term(&m.0, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in other.terms.iter() {
            r.add_term(&m.0, -c.clone());
        }
        r
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                r.add_term(&mono_mul(&m1.0, &m2.0), c1 * c2);
            }
        }
        r
    }

    pub fn mul_term(&self, m: &Mono, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m1, c1)| (LexMono(mono_mul(&m1.0, m)), c1 * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        self.mul_term(&MONO_ONE, c)
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut r = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let i = v.index();
        let mut r = MPoly::zero();
        for (m, c) in self.terms.iter() {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.0;
                m2[i] = e - 1;
                r.add_term(&m2, c * Q::from_integer(Z::from(e)));
            }
        }
        r
    }

    /// Coefficients of `v^0, v^1, ..., v^deg` as polynomials in the
    /// remaining variables.
    pub fn coeffs_wrt(&self, v: Var) -> Vec<MPoly> {
        let d = self.degree_or0(v) as usize;
        let i = v.index();
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in self.terms.iter() {
            let e = m.0[i] as usize;
            let mut m2 = m.0;
            m2[i] = 0;
            out[e].add_term(&m2, c.clone());
        }
        out
    }

    pub fn from_coeffs_wrt(v: Var, coeffs: &[MPoly]) -> MPoly {
        let i = v.index();
        let mut r = MPoly::zero();
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in p.terms.iter() {
                let mut m2 = m.0;
                m2[i] = m2[i]
                    .checked_add(e as u16)
                    .expect("monomial exponent overflow");
                r.add_term(&m2, c.clone());
            }
        }
        r
    }

    /// Leading coefficient with respect to `v` (zero polynomial for input 0).
    pub fn lc_wrt(&self, v: Var) -> MPoly {
        match self.degree(v) {
            None => MPoly::zero(),
            Some(d) => {
                let i = v.index();
                let mut r = MPoly::zero();
                for (m, c) in self.terms.iter() {
                    if m.0[i] == d {
                        let mut m2 = m.0;
                        m2[i] = 0;
                        r.add_term(&m2, c.clone());
                    }
                }
                r
            }
        }
    }

    /// Substitute a polynomial for a variable.
    pub fn subst(&self, v: Var, val: &MPoly) -> MPoly {
        let coeffs = self.coeffs_wrt(v);
        // Horner
        let mut r = MPoly::zero();
        for c in coeffs.iter().rev() {
            r = r.mul(val).add(c);
        }
        r
    }

    /// Substitute a rational value for a variable.
    pub fn eval(&self, v: Var, val: &Q) -> MPoly {
        let i = v.index();
        let mut r = MPoly::zero();
        for (m, c) in self.terms.iter() {
            let e = m.0[i];
            let mut m2 = m.0;
            m2[i] = 0;
            let mut scaled = c.clone();
            if e > 0 {
                scaled *= pow_q(val, e as u32);
            }
            r.add_term(&m2, scaled);
        }
        r
    }

    /// Full evaluation at a point given per-variable; variables not listed
    /// must not occur.
    pub fn eval_all(&self, vals: &[(Var, Q)]) -> Q {
        let mut p = self.clone();
        for (v, q) in vals {
            p = p.eval(*v, q);
        }
        p.as_constant()
            .expect("eval_all left free variables behind")
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(Q::one() / c)));
        }
        let (dm, dc) = d.leading().unwrap();
        let dm = *dm;
        let dc = dc.clone();
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((rm, rc)) = r.leading() {
            let tm = mono_div(rm, &dm)?;
            let tc = rc / &dc;
            q.add_term(&tm, tc.clone());
            r = r.sub(&d.mul_term(&tm, &tc));
        }
        Some(q)
    }

    /// Rational content: the positive rational `c` such that `self / c` has
    /// coprime integer coefficients. Zero for the zero polynomial.
    pub fn rational_content(&self) -> Q {
        if self.is_zero() {
            return Q::zero();
        }
        let mut num_gcd = Z::zero();
        let mut den_lcm = Z::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Q::new(num_gcd, den_lcm)
    }

    /// Canonical form: integer coprime coefficients, positive leading
    /// coefficient in lex order. Returns the unit `u` with
    /// `self = u * normalized`.
    pub fn normalized(&self) -> (Q, MPoly) {
        if self.is_zero() {
            return (Q::one(), MPoly::zero());
        }
        let mut c = self.rational_content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        let inv = Q::one() / c.clone();
        (c, self.scale(&inv))
    }

    /// Canonical primitive form, dropping the unit.
    pub fn primitive(&self) -> MPoly {
        self.normalized().1
    }

    /// Monic in the univariate sense: leading lex coefficient 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => {
                let inv = Q::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Largest power of `v` dividing `self` (0 for the zero polynomial).
    pub fn ord_at_var(&self, v: Var) -> u16 {
        let i = v.index();
        self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)
    }

    /// Divide out `v^k`.
    pub fn shift_down(&self, v: Var, k: u16) -> MPoly {
        let i = v.index();
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m2 = m.0;
                    assert!(m2[i] >= k);
                    m2[i] -= k;
                    (LexMono(m2), c.clone())
                })
                .collect(),
        }
    }

    /// Rename a variable (target must be absent).
    pub fn rename_var(&self, from: Var, to: Var) -> MPoly {
        assert!(!self.involves(to) || from == to);
        if from == to {
            return self.clone();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m2 = m.0;
                    m2[to.index()] = m2[from.index()];
                    m2[from.index()] = 0;
                    (LexMono(m2), c.clone())
                })
                .collect(),
        }
    }
}

pub fn pow_q(q: &Q, e: u32) -> Q {
    let mut r = Q::one();
    let mut base = q.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r *= base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    r
}

fn fmt_coeff(c: &Q) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest lex term first
        for (m, c) in self.terms.iter().rev() {
            let mut parts: Vec<String> = Vec::new();
            for i in 0..NVARS {
                let e = m.0[i];
                if e == 1 {
                    parts.push(Var::from_index(i).name().to_string());
                } else if e > 1 {
                    parts.push(format!("{}^{}", Var::from_index(i).name(), e));
                }
            }
            let abs = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if parts.is_empty() {
                write!(f, "{}", fmt_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_coeff(&abs), parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(Z::from(n))
    }

    #[test]
    fn arithmetic_basics() {
        let x = MPoly::var(Var::X);
        let y = MPoly::var(Var::Y);
        let p = x.mul(&x).sub(&y.mul(&y)); // x^2 - y^2
        let s = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p, s);
        assert_eq!(p.degree(Var::X), Some(2));
        assert_eq!(p.total_degree(), 2);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn exact_division() {
        let x = MPoly::var(Var::X);
        let y = MPoly::var(Var::Y);
        let a = x.add(&y);
        let b = x.sub(&y).add(&MPoly::one());
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a).unwrap(), b);
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert!(p.add(&MPoly::one()).exact_div(&a).is_none());
    }

    #[test]
    fn substitution_and_eval() {
        let x = MPoly::var(Var::X);
        let y = MPoly::var(Var::Y);
        let p = x.mul(&y).add(&x); // xy + x
        let v = p.eval(Var::Y, &q(3));
        assert_eq!(v, x.scale(&q(4)));
        let s = p.subst(Var::X, &y); // y^2 + y
        assert_eq!(s, y.mul(&y).add(&y));
    }

    #[test]
    fn normal_form() {
        let x = MPoly::var(Var::X);
        let p = x.scale(&Q::new(Z::from(-4), Z::from(6)));
        let (u, n) = p.normalized();
        assert_eq!(n, x);
        assert_eq!(u, Q::new(Z::from(-2), Z::from(3)));
    }

    #[test]
    fn display_roundtrippable_shape() {
        let x = MPoly::var(Var::X);
        let y = MPoly::var(Var::Y);
        let p = y.add(&x.mul(&y.mul(&y))); // y + x*y^2
        assert_eq!(p.to_string(), "x*y^2 + y");
    }
}
