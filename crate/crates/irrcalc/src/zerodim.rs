//! Zero-dimensional ideal engine over Q[x,y]: Buchberger bases, quotient
//! algebras with multiplication matrices, and division-free characteristic
//! polynomials. Eigenvalue multiplicities of multiplication by `p` are the
//! local intersection multiplicities of the ideal's points, which is what
//! makes the pushforward cycles multiplicity-correct.

use crate::algebra::poly::{lex_cmp, MPoly, Mono, Var, MONO_ONE, NVARS};
use crate::Q;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::GrevLex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {
                        // reverse lex: the monomial with the smaller exponent
                        // in the least significant variable is larger
                        for i in (0..NVARS).rev() {
                            match a[i].cmp(&b[i]) {
                                Ordering::Equal => {}
                                o => return o.reverse(),
                            }
                        }
                        Ordering::Equal
                    }
                    o => o,
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("pair budget exceeded in Buchberger loop ({0} pairs)")]
    PairBudget(usize),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
}

/// A reduced Groebner basis: inter-reduced, monic generators.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub generators: Vec<MPoly>,
    pub order: MonomialOrder,
}

fn leading_mono(p: &MPoly, order: MonomialOrder) -> Mono {
    let mut best: Option<Mono> = None;
    for (m, _) in p.iter_terms() {
        match &best {
            None => best = Some(*m),
            Some(b) => {
                if order.cmp(m, b) == Ordering::Greater {
                    best = Some(*m);
                }
            }
        }
    }
    best.expect("leading monomial of zero")
}

fn leading_coeff(p: &MPoly, lm: &Mono) -> Q {
    p.iter_terms()
        .find(|(m, _)| *m == lm)
        .map(|(_, c)| c.clone())
        .unwrap()
}

/// Full normal form modulo a list of (monic-lead) reducers.
fn normal_form(p: &MPoly, reducers: &[(Mono, Q, MPoly)], order: MonomialOrder) -> MPoly {
    let mut rem = MPoly::zero();
    let mut work = p.clone();
    'outer: while !work.is_zero() {
        let lm = leading_mono(&work, order);
        let lc = leading_coeff(&work, &lm);
        for (rm, rc, rp) in reducers {
            if let Some(q) = crate::algebra::poly::mono_div(&lm, rm) {
                let factor = &lc / rc;
                work = work.sub(&rp.mul_term(&q, &factor));
                continue 'outer;
            }
        }
        // move the irreducible leading term to the remainder
        rem.add_term(&lm, lc.clone());
        work.add_term(&lm, -lc);
    }
    rem
}

fn prepare_reducers(gens: &[MPoly], order: MonomialOrder) -> Vec<(Mono, Q, MPoly)> {
    gens.iter()
        .map(|g| {
            let lm = leading_mono(g, order);
            let lc = leading_coeff(g, &lm);
            (lm, lc, g.clone())
        })
        .collect()
}

fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    let mut r = MONO_ONE;
    for i in 0..NVARS {
        r[i] = a[i].max(b[i]);
    }
    r
}

pub const DEFAULT_PAIR_BUDGET: usize = 20_000;

pub fn groebner(gens: &[MPoly]) -> Result<GroebnerBasis, SolverError> {
    groebner_with(gens, MonomialOrder::GrevLex, DEFAULT_PAIR_BUDGET)
}

/// Buchberger with the sugar selection strategy and the coprime-lead
/// criterion. Membership of every input generator is re-verified by
/// reduction to zero before returning.
pub fn groebner_with(
    gens: &[MPoly],
    order: MonomialOrder,
    pair_budget: usize,
) -> Result<GroebnerBasis, SolverError> {
    let mut basis: Vec<MPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.primitive())
        .collect();
    assert!(!basis.is_empty(), "groebner of the zero ideal");
    // sugar of a generator: its total degree
    let mut sugar: Vec<u32> = basis.iter().map(|g| g.total_degree() as u32).collect();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = pair_sugar(&basis, &sugar, i, j, order);
            pairs.insert((s, i, j));
        }
    }
    let mut processed = 0usize;
    while let Some(&(s, i, j)) = pairs.iter().next() {
        pairs.remove(&(s, i, j));
        processed += 1;
        if processed > pair_budget {
            return Err(SolverError::PairBudget(pair_budget));
        }
        let lmi = leading_mono(&basis[i], order);
        let lmj = leading_mono(&basis[j], order);
        // Buchberger's coprime criterion
        if (0..NVARS).all(|k| lmi[k] == 0 || lmj[k] == 0) {
            continue;
        }
        let lcm = mono_lcm(&lmi, &lmj);
        let ci = leading_coeff(&basis[i], &lmi);
        let cj = leading_coeff(&basis[j], &lmj);
        let mi = crate::algebra::poly::mono_div(&lcm, &lmi).unwrap();
        let mj = crate::algebra::poly::mono_div(&lcm, &lmj).unwrap();
        let spoly = basis[i]
            .mul_term(&mi, &(Q::one() / ci))
            .sub(&basis[j].mul_term(&mj, &(Q::one() / cj)));
        let reducers = prepare_reducers(&basis, order);
        let nf = normal_form(&spoly, &reducers, order);
        if !nf.is_zero() {
            let k = basis.len();
            let s_new = nf.total_degree() as u32;
            basis.push(nf.primitive());
            sugar.push(s_new);
            for idx in 0..k {
                pairs.insert((pair_sugar(&basis, &sugar, idx, k, order), idx, k));
            }
        }
    }
    // inter-reduce and make monic
    let mut reduced: Vec<MPoly> = Vec::new();
    let lms: Vec<Mono> = basis.iter().map(|g| leading_mono(g, order)).collect();
    for (i, g) in basis.iter().enumerate() {
        // drop g when another kept generator has a strictly smaller lead,
        // or an equal lead with smaller index (keep one representative)
        let minimal = lms.iter().enumerate().all(|(j, lm)| {
            j == i
                || crate::algebra::poly::mono_div(&lms[i], lm).is_none()
                || (lm == &lms[i] && j > i)
        });
        if minimal {
            reduced.push(g.clone());
        }
    }
    let mut final_basis = Vec::new();
    for i in 0..reduced.len() {
        let others: Vec<MPoly> = reduced
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let nf = if others.is_empty() {
            reduced[i].clone()
        } else {
            let reducers = prepare_reducers(&others, order);
            normal_form(&reduced[i], &reducers, order)
        };
        if !nf.is_zero() {
            let lm = leading_mono(&nf, order);
            let lc = leading_coeff(&nf, &lm);
            final_basis.push(nf.scale(&(Q::one() / lc)));
        }
    }
    final_basis.sort_by(|a, b| order.cmp(&leading_mono(a, order), &leading_mono(b, order)));
    let gb = GroebnerBasis {
        generators: final_basis,
        order,
    };
    // re-verify membership of the inputs
    let reducers = prepare_reducers(&gb.generators, order);
    for g in gens {
        assert!(
            normal_form(g, &reducers, order).is_zero(),
            "input generator does not reduce to zero modulo the basis"
        );
    }
    Ok(gb)
}

fn pair_sugar(basis: &[MPoly], sugar: &[u32], i: usize, j: usize, order: MonomialOrder) -> u32 {
    let lmi = leading_mono(&basis[i], order);
    let lmj = leading_mono(&basis[j], order);
    let lcm = mono_lcm(&lmi, &lmj);
    let deg = |m: &Mono| m.iter().map(|&e| e as u32).sum::<u32>();
    (sugar[i] + deg(&lcm) - deg(&lmi)).max(sugar[j] + deg(&lcm) - deg(&lmj))
}

/// The quotient algebra Q[x,y]/I for a zero-dimensional ideal: staircase
/// monomial basis and multiplication matrices.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    pub basis: Vec<Mono>,
    pub dim: usize,
    gb: GroebnerBasis,
}

impl QuotientAlgebra {
    /// Matrix of multiplication by `p`, columns indexed by the basis.
    pub fn mult_matrix(&self, p: &MPoly) -> Vec<Vec<Q>> {
        let reducers = prepare_reducers(&self.gb.generators, self.gb.order);
        let index: std::collections::HashMap<Mono, usize> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i))
            .collect();
        let mut mat = vec![vec![Q::zero(); self.dim]; self.dim];
        for (col, m) in self.basis.iter().enumerate() {
            let prod = p.mul_term(m, &Q::one());
            let nf = normal_form(&prod, &reducers, self.gb.order);
            for (mono, c) in nf.iter_terms() {
                let row = *index
                    .get(mono)
                    .expect("normal form lies in the staircase basis");
                mat[row][col] = c.clone();
            }
        }
        mat
    }

    pub fn mult_x(&self) -> Vec<Vec<Q>> {
        self.mult_matrix(&MPoly::var(Var::X))
    }

    pub fn mult_y(&self) -> Vec<Vec<Q>> {
        self.mult_matrix(&MPoly::var(Var::Y))
    }
}

/// Build the quotient algebra; fails with `NotZeroDimensional` when the
/// staircase is infinite.
pub fn quotient_algebra(gb: &GroebnerBasis) -> Result<QuotientAlgebra, SolverError> {
    let lms: Vec<Mono> = gb
        .generators
        .iter()
        .map(|g| leading_mono(g, gb.order))
        .collect();
    // unit ideal: empty algebra
    if gb
        .generators
        .iter()
        .any(|g| g.is_constant() && !g.is_zero())
    {
        return Ok(QuotientAlgebra {
            basis: Vec::new(),
            dim: 0,
            gb: gb.clone(),
        });
    }
    let pure_power = |v: Var| -> Option<u16> {
        lms.iter()
            .filter(|m| (0..NVARS).all(|i| i == v.index() || m[i] == 0) && m[v.index()] > 0)
            .map(|m| m[v.index()])
            .min()
    };
    let (Some(bx), Some(by)) = (pure_power(Var::X), pure_power(Var::Y)) else {
        return Err(SolverError::NotZeroDimensional);
    };
    let mut basis = Vec::new();
    for i in 0..bx {
        for j in 0..by {
            let mut m = MONO_ONE;
            m[Var::X.index()] = i;
            m[Var::Y.index()] = j;
            if lms
                .iter()
                .all(|lm| crate::algebra::poly::mono_div(&m, lm).is_none())
            {
                basis.push(m);
            }
        }
    }
    basis.sort_by(|a, b| gb.order.cmp(a, b));
    let dim = basis.len();
    Ok(QuotientAlgebra {
        basis,
        dim,
        gb: gb.clone(),
    })
}

/// Division-free characteristic polynomial (Berkowitz): coefficients of
/// `det(sI - M)` in descending powers, leading 1.
pub fn berkowitz(mat: &[Vec<Q>]) -> Vec<Q> {
    let n = mat.len();
    let mut poly = vec![Q::one()];
    if n == 0 {
        return poly;
    }
    poly.push(-mat[0][0].clone());
    for i in 1..n {
        // R = row i over columns 0..i, C = column i over rows 0..i, corner d
        let d = mat[i][i].clone();
        let r: Vec<Q> = (0..i).map(|k| mat[i][k].clone()).collect();
        let c: Vec<Q> = (0..i).map(|k| mat[k][i].clone()).collect();
        // q_l = R * A^l * C for the leading principal submatrix A
        let mut qs = Vec::with_capacity(i);
        let mut vec_c = c.clone();
        for l in 0..i {
            if l > 0 {
                let mut next = vec![Q::zero(); i];
                for (row, item) in next.iter_mut().enumerate() {
                    let mut acc = Q::zero();
                    for col in 0..i {
                        if !mat[row][col].is_zero() && !vec_c[col].is_zero() {
                            acc += &mat[row][col] * &vec_c[col];
                        }
                    }
                    *item = acc;
                }
                vec_c = next;
            }
            let mut acc = Q::zero();
            for k in 0..i {
                if !r[k].is_zero() && !vec_c[k].is_zero() {
                    acc += &r[k] * &vec_c[k];
                }
            }
            qs.push(acc);
        }
        let mut next_poly = vec![Q::zero(); i + 2];
        for (j, item) in next_poly.iter_mut().enumerate() {
            let mut acc = Q::zero();
            for (k, pk) in poly.iter().enumerate() {
                if j == k {
                    acc += pk;
                } else if j == k + 1 {
                    acc -= &d * pk;
                } else if j > k + 1 {
                    let q = &qs[j - k - 2];
                    if !q.is_zero() {
                        acc -= q * pk;
                    }
                }
            }
            *item = acc;
        }
        poly = next_poly;
    }
    poly
}

/// Characteristic polynomial of multiplication by `p` on the quotient
/// algebra, as a monic polynomial in `s`. By the eigenvalue principle this
/// is the pushforward 0-cycle `prod (s - p(P))^(mult P)`.
pub fn charpoly_of(alg: &QuotientAlgebra, p: &MPoly) -> MPoly {
    let mat = alg.mult_matrix(p);
    let coeffs = berkowitz(&mat);
    let n = coeffs.len() - 1;
    let mut poly = MPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let mut m = MONO_ONE;
            m[Var::S.index()] = (n - k) as u16;
            poly.add_term(&m, c.clone());
        }
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Var::{S, X, Y};
    use crate::Z;

    fn x() -> MPoly {
        MPoly::var(X)
    }
    fn y() -> MPoly {
        MPoly::var(Y)
    }
    fn s() -> MPoly {
        MPoly::var(S)
    }
    fn q(n: i64) -> Q {
        Q::from_integer(Z::from(n))
    }

    #[test]
    fn trivial_bases() {
        let gb = groebner(&[x(), y()]).unwrap();
        assert_eq!(gb.generators, vec![y(), x()]);
        let gb = groebner(&[y().pow(2).sub(&x()), y()]).unwrap();
        assert_eq!(gb.generators, vec![y(), x()]);
    }

    #[test]
    fn hand_solved_system() {
        // (1 + 2xy, y + xy^2 - 1): unique solution (-1/4, 2), multiplicity 1
        let g1 = MPoly::one().add(&x().mul(&y()).scale(&q(2)));
        let g2 = y().add(&x().mul(&y().pow(2))).sub(&MPoly::one());
        let gb = groebner(&[g1, g2]).unwrap();
        let alg = quotient_algebra(&gb).unwrap();
        assert_eq!(alg.dim, 1);
        assert_eq!(alg.basis, vec![crate::algebra::poly::MONO_ONE]);
        let cp = charpoly_of(&alg, &x());
        assert_eq!(
            cp,
            s().add(&MPoly::constant(Q::new(Z::from(1), Z::from(4))))
        );
    }

    #[test]
    fn staircase_dimensions_and_eigenvalues() {
        let gb = groebner(&[x().pow(2), y()]).unwrap();
        let alg = quotient_algebra(&gb).unwrap();
        assert_eq!(alg.dim, 2);
        // nilpotent multiplication: charpoly s^2
        assert_eq!(charpoly_of(&alg, &x()), s().pow(2));

        // ((x-1)(x-2), y-3): M_x eigenvalues {1,2}
        let g1 = x().sub(&MPoly::one()).mul(&x().sub(&MPoly::from_int(2)));
        let g2 = y().sub(&MPoly::from_int(3));
        let gb = groebner(&[g1, g2]).unwrap();
        let alg = quotient_algebra(&gb).unwrap();
        assert_eq!(alg.dim, 2);
        let cp = charpoly_of(&alg, &x());
        let expected = s().sub(&MPoly::one()).mul(&s().sub(&MPoly::from_int(2)));
        assert_eq!(cp, expected);
        // charpoly of y is (s-3)^2
        assert_eq!(charpoly_of(&alg, &y()), s().sub(&MPoly::from_int(3)).pow(2));
    }

    #[test]
    fn commuting_multiplication_matrices() {
        let g1 = x().pow(3).sub(&y()).add(&MPoly::one());
        let g2 = y().pow(2).add(&x()).sub(&MPoly::from_int(2));
        let gb = groebner(&[g1, g2]).unwrap();
        let alg = quotient_algebra(&gb).unwrap();
        let mx = alg.mult_x();
        let my = alg.mult_y();
        let prod = |a: &Vec<Vec<Q>>, b: &Vec<Vec<Q>>| -> Vec<Vec<Q>> {
            let n = a.len();
            let mut r = vec![vec![Q::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        r[i][j] += &a[i][k] * &b[k][j];
                    }
                }
            }
            r
        };
        assert_eq!(prod(&mx, &my), prod(&my, &mx));
        // Bezout bound
        assert!(alg.dim <= 6);
        // constant charpoly: (s - c)^dim
        let cp = charpoly_of(&alg, &MPoly::from_int(5));
        assert_eq!(cp, s().sub(&MPoly::from_int(5)).pow(alg.dim as u32));
    }

    #[test]
    fn split_system_charpoly() {
        // prod (x - a_i), y - b: charpoly of M_x = prod (s - a_i)
        let a = [1i64, -2, 5];
        let mut px = MPoly::one();
        for ai in a {
            px = px.mul(&x().sub(&MPoly::from_int(ai)));
        }
        let gb = groebner(&[px, y().sub(&MPoly::from_int(7))]).unwrap();
        let alg = quotient_algebra(&gb).unwrap();
        let cp = charpoly_of(&alg, &x());
        let mut expected = MPoly::one();
        for ai in a {
            expected = expected.mul(&s().sub(&MPoly::from_int(ai)));
        }
        assert_eq!(cp, expected);
    }

    #[test]
    fn trace_linearity() {
        let g1 = x().pow(2).add(&y().pow(2)).sub(&MPoly::from_int(4));
        let g2 = x().mul(&y()).sub(&MPoly::one());
        let gb = groebner(&[g1, g2]).unwrap();
        let alg = quotient_algebra(&gb).unwrap();
        let trace = |m: &Vec<Vec<Q>>| -> Q {
            let mut acc = Q::zero();
            for (i, row) in m.iter().enumerate() {
                acc += &row[i];
            }
            acc
        };
        let p = x().pow(2).sub(&y());
        let qq = y().mul(&x()).add(&MPoly::from_int(3));
        let tp = trace(&alg.mult_matrix(&p));
        let tq = trace(&alg.mult_matrix(&qq));
        let tpq = trace(&alg.mult_matrix(&p.add(&qq)));
        assert_eq!(tpq, tp + tq);
        // degree of charpoly is always dim
        assert_eq!(
            charpoly_of(&alg, &p.add(&qq)).degree_or0(S) as usize,
            alg.dim
        );
    }

    #[test]
    fn not_zero_dimensional_detected() {
        let gb = groebner(&[x().mul(&y())]).unwrap();
        assert_eq!(
            quotient_algebra(&gb).unwrap_err(),
            SolverError::NotZeroDimensional
        );
    }

    #[test]
    fn unit_ideal_empty_algebra() {
        let gb = groebner(&[x(), x().add(&MPoly::one())]).unwrap();
        let alg = quotient_algebra(&gb).unwrap();
        assert_eq!(alg.dim, 0);
        assert_eq!(charpoly_of(&alg, &x()), MPoly::one());
    }
}
