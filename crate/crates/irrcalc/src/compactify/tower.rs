//! Triangular towers of squarefree extensions of Q with dynamic splitting.
//!
//! Blow-up centers at infinity are usually irrational. Rather than factor
//! over number fields, a center "all roots of h at once" adjoins one
//! generator with the squarefree modulus `h`; the quotient is then a
//! product of fields. Whenever a computation needs to invert a zero
//! divisor, the gcd it exposes is returned as a `Split` and the caller
//! reruns the computation over both factors.

use crate::algebra::poly::{MPoly, Var};
use crate::Q;
use num_traits::One;

/// A proper factor of `moduli[level]` exposed by a failed inversion.
#[derive(Debug, Clone)]
pub struct Split {
    pub level: usize,
    pub factor: MPoly,
}

pub type TRes<T> = Result<T, Split>;

/// `moduli[k]` is monic in `Var::ext(k)` with coefficients reduced modulo
/// the lower levels, and squarefree over them.
#[derive(Debug, Clone, Default)]
pub struct Tower {
    pub moduli: Vec<MPoly>,
}

impl Tower {
    pub fn empty() -> Tower {
        Tower { moduli: Vec::new() }
    }

    pub fn levels(&self) -> usize {
        self.moduli.len()
    }

    /// Number of conjugate branches the tower bundles.
    pub fn family_size(&self) -> u64 {
        self.moduli
            .iter()
            .enumerate()
            .map(|(k, m)| m.degree_or0(Var::ext(k)) as u64)
            .product()
    }

    fn nf_upto(&self, p: &MPoly, lv: usize) -> MPoly {
        let mut r = p.clone();
        for k in (0..lv).rev() {
            let z = Var::ext(k);
            if r.degree_or0(z) >= self.moduli[k].degree_or0(z) {
                r = divrem_by_monic(&r, &self.moduli[k], z).1;
            }
        }
        r
    }

    /// Canonical normal form modulo the whole tower.
    pub fn nf(&self, p: &MPoly) -> MPoly {
        self.nf_upto(p, self.levels())
    }

    pub fn is_zero(&self, p: &MPoly) -> bool {
        self.nf(p).is_zero()
    }

    /// Inverse of a tower element (a polynomial in the `z` variables).
    /// `Ok(None)` for zero; `Err(Split)` when the element is a zero
    /// divisor, carrying the factor of the modulus it exposes.
    pub fn invert(&self, e: &MPoly) -> TRes<Option<MPoly>> {
        let e = self.nf(e);
        if e.is_zero() {
            return Ok(None);
        }
        self.inv_rec(&e, self.levels())
    }

    fn inv_rec(&self, e: &MPoly, lv: usize) -> TRes<Option<MPoly>> {
        if e.is_zero() {
            return Ok(None);
        }
        if lv == 0 {
            let c = e
                .as_constant()
                .expect("tower element contains non-extension variables");
            return Ok(Some(MPoly::constant(Q::one() / c)));
        }
        let z = Var::ext(lv - 1);
        if e.degree_or0(z) == 0 {
            return self.inv_rec(e, lv - 1);
        }
        let m = &self.moduli[lv - 1];
        // half-extended Euclid: track s with s*e = r (mod m, lower levels)
        let mut r0 = m.clone();
        let mut s0 = MPoly::zero();
        let mut r1 = e.clone();
        let mut s1 = MPoly::one();
        while !r1.is_zero() {
            let lc = r1.coeffs_wrt(z).pop().unwrap();
            let lci = match self.inv_rec(&self.nf_upto(&lc, lv - 1), lv - 1)? {
                Some(i) => i,
                None => unreachable!("leading coefficient of a nonzero normal form"),
            };
            r1 = self.nf_upto(&r1.mul(&lci), lv - 1);
            s1 = self.nf_upto(&s1.mul(&lci), lv - 1);
            let (q, r) = divrem_by_monic(&r0, &r1, z);
            let r_new = self.nf_upto(&r, lv - 1);
            let s_new = self.nf_upto(&s0.sub(&q.mul(&s1)), lv - 1);
            r0 = r1;
            s0 = s1;
            r1 = r_new;
            s1 = s_new;
        }
        let d = r0.degree_or0(z);
        if d == 0 {
            let gi = match self.inv_rec(&r0, lv - 1)? {
                Some(i) => i,
                None => unreachable!("gcd of nonzero elements is nonzero"),
            };
            return Ok(Some(self.nf(&s0.mul(&gi))));
        }
        debug_assert!(d < m.degree_or0(z), "element not reduced modulo the tower");
        Err(Split {
            level: lv - 1,
            factor: r0,
        })
    }

    /// True when at least one of `elems` is nonzero in every branch of the
    /// tower; false when all are identically zero. A branch-dependent
    /// answer surfaces as a `Split`.
    pub fn nonzero_somewhere_in_every_branch(&self, elems: &[MPoly]) -> TRes<bool> {
        let nz: Vec<MPoly> = elems
            .iter()
            .map(|e| self.nf(e))
            .filter(|e| !e.is_zero())
            .collect();
        if nz.is_empty() {
            return Ok(false);
        }
        self.nonzero_rec(&nz, self.levels())
    }

    fn nonzero_rec(&self, elems: &[MPoly], lv: usize) -> TRes<bool> {
        if lv == 0 {
            // rational constants, at least one nonzero
            return Ok(true);
        }
        let z = Var::ext(lv - 1);
        let m = &self.moduli[lv - 1];
        let mut g = m.clone();
        for e in elems {
            if g.degree_or0(z) == 0 {
                break;
            }
            g = self.gcd_univ_upto(&g, e, z, lv - 1)?;
        }
        let d = g.degree_or0(z);
        if d == 0 {
            return Ok(true);
        }
        if d == m.degree_or0(z) {
            // all elements vanish on the whole level: recurse into their
            // z-free content? cannot happen for normal forms
            unreachable!("normal forms cannot vanish on the full modulus");
        }
        Err(Split {
            level: lv - 1,
            factor: g,
        })
    }

    /// Monic gcd of univariate polynomials in `v` over the tower.
    pub fn gcd_univ(&self, a: &MPoly, b: &MPoly, v: Var) -> TRes<MPoly> {
        self.gcd_univ_upto(a, b, v, self.levels())
    }

    fn gcd_univ_upto(&self, a: &MPoly, b: &MPoly, v: Var, lv: usize) -> TRes<MPoly> {
        let mut a = self.nf_upto(a, lv);
        let mut b = self.nf_upto(b, lv);
        loop {
            if b.is_zero() {
                if a.is_zero() {
                    return Ok(MPoly::zero());
                }
                return self.make_monic_upto(&a, v, lv);
            }
            b = self.make_monic_upto(&b, v, lv)?;
            if b.degree_or0(v) == 0 {
                return Ok(MPoly::one());
            }
            let (_, r) = divrem_by_monic(&a, &b, v);
            let r = self.nf_upto(&r, lv);
            a = b;
            b = r;
        }
    }

    /// Scale a univariate polynomial over the tower so its leading
    /// coefficient is 1. Splits when the apparent leading coefficient is a
    /// zero divisor (the degree differs between branches).
    pub fn make_monic(&self, p: &MPoly, v: Var) -> TRes<MPoly> {
        self.make_monic_upto(p, v, self.levels())
    }

    fn make_monic_upto(&self, p: &MPoly, v: Var, lv: usize) -> TRes<MPoly> {
        let p = self.nf_upto(p, lv);
        assert!(!p.is_zero(), "make_monic of zero");
        let lc = p.coeffs_wrt(v).pop().unwrap();
        match self.inv_rec(&self.nf_upto(&lc, lv), lv)? {
            Some(i) => Ok(self.nf_upto(&p.mul(&i), lv)),
            None => unreachable!("leading coefficient of a normal form is nonzero"),
        }
    }

    /// Degree of `p` in `v`, guaranteed uniform across branches (the
    /// leading coefficient must survive in every branch). `None` for 0.
    pub fn uniform_degree(&self, p: &MPoly, v: Var) -> TRes<Option<u16>> {
        let p = self.nf(p);
        if p.is_zero() {
            return Ok(None);
        }
        let d = p.degree_or0(v);
        let lc = p.lc_wrt(v);
        let elems = non_ext_coefficients(&lc);
        match self.nonzero_somewhere_in_every_branch(&elems)? {
            true => Ok(Some(d)),
            false => unreachable!("leading coefficient of a normal form is nonzero"),
        }
    }

    /// Smallest power of `v` dividing `p`, uniform across branches.
    pub fn uniform_ord(&self, p: &MPoly, v: Var) -> TRes<u16> {
        let p = self.nf(p);
        assert!(!p.is_zero(), "order of zero polynomial");
        let k = p.ord_at_var(v);
        let low = p.coeffs_wrt(v)[k as usize].clone();
        let elems = non_ext_coefficients(&low);
        match self.nonzero_somewhere_in_every_branch(&elems)? {
            true => Ok(k),
            false => unreachable!("trailing coefficient is nonzero by construction"),
        }
    }

    /// Adjoin the squarefree part of `h(v)` as a new level; returns the
    /// extended tower. `h` must be nonconstant in `v`.
    pub fn adjoin_squarefree(&self, h: &MPoly, v: Var) -> TRes<Tower> {
        let z = Var::ext(self.levels());
        let h = self.nf(&h.rename_var(v, z));
        let h = self.make_monic(&h, z)?;
        let dh = h.derivative(z);
        let g = self.gcd_univ(&h, &dh, z)?;
        let hsf = if g.degree_or0(z) == 0 {
            h
        } else {
            let (q, r) = divrem_by_monic(&h, &g, z);
            debug_assert!(self.is_zero(&r));
            self.nf(&q)
        };
        assert!(hsf.degree_or0(z) >= 1, "modulus must be nonconstant");
        let mut moduli = self.moduli.clone();
        moduli.push(hsf);
        Ok(Tower { moduli })
    }

    /// Fork the tower along a split: the factor branch and the cofactor
    /// branch.
    pub fn fork(&self, split: &Split) -> (Tower, Tower) {
        let z = Var::ext(split.level);
        let m = &self.moduli[split.level];
        let (cof, rem) = divrem_by_monic(m, &split.factor, z);
        let sub = Tower {
            moduli: self.moduli[..split.level].to_vec(),
        };
        debug_assert!(sub.is_zero(&rem), "split factor must divide the modulus");
        let build = |new_mod: MPoly| {
            let mut moduli = self.moduli[..split.level].to_vec();
            moduli.push(new_mod);
            let mut t = Tower { moduli };
            for k in split.level + 1..self.levels() {
                let reduced = t.nf(&self.moduli[k]);
                t.moduli.push(reduced);
            }
            t
        };
        (build(split.factor.clone()), build(sub.nf(&cof)))
    }

    /// Reduce arbitrary data into this (possibly forked) tower.
    pub fn reduce(&self, p: &MPoly) -> MPoly {
        self.nf(p)
    }
}

/// The coefficients of `p` grouped by non-extension monomial: the list of
/// tower elements whose simultaneous vanishing makes `p` vanish.
pub fn non_ext_coefficients(p: &MPoly) -> Vec<MPoly> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<crate::algebra::poly::LexMono, MPoly> = BTreeMap::new();
    for (m, c) in p.iter_terms() {
        let mut key = *m;
        let mut zpart = crate::algebra::poly::MONO_ONE;
        for k in 8..crate::algebra::poly::NVARS {
            zpart[k] = key[k];
            key[k] = 0;
        }
        groups
            .entry(crate::algebra::poly::LexMono(key))
            .or_insert_with(MPoly::zero)
            .add_term(&zpart, c.clone());
    }
    groups.into_values().collect()
}

/// Division by a polynomial monic in `v` (literal leading coefficient 1).
pub fn divrem_by_monic(a: &MPoly, b: &MPoly, v: Var) -> (MPoly, MPoly) {
    let db = b.degree_or0(v);
    debug_assert!(
        b.lc_wrt(v).is_constant() && b.lc_wrt(v).as_constant().unwrap().is_one(),
        "divisor must be monic"
    );
    let mut r = a.clone();
    let mut q = MPoly::zero();
    while !r.is_zero() && r.degree_or0(v) >= db {
        let dr = r.degree_or0(v);
        let lr = r.lc_wrt(v);
        let t = lr.mul(&MPoly::var_pow(v, dr - db));
        q = q.add(&t);
        r = r.sub(&t.mul(b));
    }
    (q, r)
}
