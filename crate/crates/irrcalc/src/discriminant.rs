//! Affine discriminant cycle of an independent pair `(f, g)`: the Jacobian
//! critical divisor, its pushforward polynomial `R(s,t)` under `(f,g)`, and
//! the finite-place intersection germs at `t = infinity`.
//!
//! `R` is reconstructed from monic fiber characteristic polynomials at
//! sampled values `g = t0` by rational-function interpolation; horizontal
//! components (critical components inside `g`-fibers) never meet the
//! samples and are deliberately dropped, vertical components end up in the
//! `s`-content and are removed when taking germs, which matches the
//! deletion of `{c} x C` before closure.

use crate::algebra::gcd::{content_wrt, gcd_multi};
use crate::algebra::interp::cauchy_interpolate;
use crate::algebra::place::{order_at_place, Place};
use crate::algebra::poly::{MPoly, Var};
use crate::algebra::squarefree::squarefree;
use crate::algebra::uroots::rational_roots;
use crate::zerodim::{charpoly_of, groebner, quotient_algebra, SolverError};
use crate::{Q, Z};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `J = f_x g_y - f_y g_x`.
pub fn jacobian(f: &MPoly, g: &MPoly) -> MPoly {
    let fx = f.derivative(Var::X);
    let fy = f.derivative(Var::Y);
    let gx = g.derivative(Var::X);
    let gy = g.derivative(Var::Y);
    fx.mul(&gy).sub(&fy.mul(&gx))
}

/// Algebraic dependence is equivalent to a vanishing Jacobian in
/// characteristic zero.
pub fn dependence_test(j: &MPoly) -> bool {
    j.is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiberError {
    #[error("bad sample: critical divisor shares a component with the fiber")]
    BadSample,
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Pushforward of the 0-cycle `div J . div(g - t0)` along `f`:
/// the monic polynomial `prod (s - f(P))^(mult P)`.
pub fn fiber_charpoly(f: &MPoly, g: &MPoly, j: &MPoly, t0: &Q) -> Result<MPoly, FiberError> {
    let fiber = g.sub(&MPoly::constant(t0.clone()));
    if !gcd_multi(j, &fiber).is_constant() {
        return Err(FiberError::BadSample);
    }
    let gb = match groebner(&[j.clone(), fiber]) {
        Ok(gb) => gb,
        Err(e @ SolverError::PairBudget(_)) => return Err(FiberError::Solver(e)),
        Err(SolverError::NotZeroDimensional) => return Err(FiberError::BadSample),
    };
    let alg = match quotient_algebra(&gb) {
        Ok(a) => a,
        Err(SolverError::NotZeroDimensional) => return Err(FiberError::BadSample),
        Err(e) => return Err(FiberError::Solver(e)),
    };
    Ok(charpoly_of(&alg, f))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PushforwardError {
    #[error("could not find enough good samples (20 consecutive rejections)")]
    TooManyBadSamples,
    #[error("interpolated pushforward failed fresh-sample validation")]
    ValidationFailure,
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Defining polynomial of the affine discriminant cycle, with the degree
/// bounds and samples that produced it.
#[derive(Debug, Clone)]
pub struct Pushforward {
    pub r: MPoly,
    pub deg_bounds: (u16, u16),
    pub samples_used: Vec<Q>,
}

#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub seed: u64,
    pub lo: i64,
    pub hi: i64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 0,
            lo: 1_000,
            hi: 1_000_000,
        }
    }
}

impl SampleConfig {
    pub fn with_seed(seed: u64) -> Self {
        SampleConfig {
            seed,
            ..Default::default()
        }
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    lo: i64,
    hi: i64,
    used: std::collections::BTreeSet<i64>,
}

impl Sampler {
    fn new(cfg: &SampleConfig) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            lo: cfg.lo,
            hi: cfg.hi,
            used: Default::default(),
        }
    }

    fn next(&mut self) -> Q {
        loop {
            let v = self.rng.gen_range(self.lo..=self.hi);
            if self.used.insert(v) {
                return Q::from_integer(Z::from(v));
            }
        }
    }
}

pub fn pushforward_polynomial(
    f: &MPoly,
    g: &MPoly,
    j: &MPoly,
) -> Result<Pushforward, PushforwardError> {
    pushforward_with_config(f, g, j, &SampleConfig::default())
}

pub fn pushforward_with_config(
    f: &MPoly,
    g: &MPoly,
    j: &MPoly,
    cfg: &SampleConfig,
) -> Result<Pushforward, PushforwardError> {
    assert!(!j.is_zero(), "pushforward needs an independent pair");
    let ds = j.total_degree() * g.total_degree();
    let dt = j.total_degree() * f.total_degree();
    let mut sampler = Sampler::new(cfg);
    match try_reconstruct(f, g, j, ds, dt, &mut sampler) {
        Ok(p) => Ok(p),
        Err(PushforwardError::ValidationFailure) => {
            // escalate the bounds once
            try_reconstruct(f, g, j, ds * 2, dt * 2, &mut sampler)
        }
        Err(e) => Err(e),
    }
}

fn good_sample(
    f: &MPoly,
    g: &MPoly,
    j: &MPoly,
    sampler: &mut Sampler,
) -> Result<(Q, MPoly), PushforwardError> {
    let mut rejections = 0;
    loop {
        let t0 = sampler.next();
        match fiber_charpoly(f, g, j, &t0) {
            Ok(cp) => return Ok((t0, cp)),
            Err(FiberError::BadSample) => {
                rejections += 1;
                if rejections >= 20 {
                    return Err(PushforwardError::TooManyBadSamples);
                }
            }
            Err(FiberError::Solver(e)) => return Err(PushforwardError::Solver(e)),
        }
    }
}

fn try_reconstruct(
    f: &MPoly,
    g: &MPoly,
    j: &MPoly,
    ds: u16,
    dt: u16,
    sampler: &mut Sampler,
) -> Result<Pushforward, PushforwardError> {
    let needed = 2 * dt as usize + 2;
    let mut samples: Vec<(Q, MPoly)> = Vec::new();
    for _ in 0..needed + 3 {
        samples.push(good_sample(f, g, j, sampler)?);
    }
    // Keep the majority fiber degree; degenerate samples are re-drawn.
    for _ in 0..4 {
        let mut counts = std::collections::BTreeMap::<u16, usize>::new();
        for (_, cp) in &samples {
            *counts.entry(cp.degree_or0(Var::S)).or_default() += 1;
        }
        let (&n_major, _) = counts.iter().max_by_key(|(_, c)| **c).unwrap();
        samples.retain(|(_, cp)| cp.degree_or0(Var::S) == n_major);
        if samples.len() >= needed {
            break;
        }
        while samples.len() < needed + 3 {
            samples.push(good_sample(f, g, j, sampler)?);
        }
    }
    let n = samples[0].1.degree_or0(Var::S);
    if samples.len() < needed || samples.iter().any(|(_, cp)| cp.degree_or0(Var::S) != n) {
        return Err(PushforwardError::ValidationFailure);
    }
    if n > ds {
        // Bezout violation: the degree bound itself is wrong
        return Err(PushforwardError::ValidationFailure);
    }
    if n == 0 {
        return Ok(Pushforward {
            r: MPoly::one(),
            deg_bounds: (ds, dt),
            samples_used: samples.into_iter().map(|(t, _)| t).collect(),
        });
    }
    // interpolate each monic coefficient as a rational function of t
    let mut numerators = Vec::new();
    let mut denominators = Vec::new();
    for deg_s in 0..n {
        let pts: Vec<(Q, Q)> = samples
            .iter()
            .take(needed)
            .map(|(t, cp)| {
                let coeff = cp
                    .coeffs_wrt(Var::S)
                    .get(deg_s as usize)
                    .cloned()
                    .unwrap_or_else(MPoly::zero)
                    .as_constant()
                    .expect("fiber charpoly is univariate in s");
                (t.clone(), coeff)
            })
            .collect();
        let Some((num, den)) = cauchy_interpolate(&pts, dt as usize, dt as usize, Var::T) else {
            return Err(PushforwardError::ValidationFailure);
        };
        numerators.push(num);
        denominators.push(den);
    }
    // common denominator: the leading s-coefficient of R
    let mut lcm = MPoly::one();
    for d in &denominators {
        let g_ = gcd_multi(&lcm, d);
        lcm = lcm.mul(d).exact_div(&g_).unwrap();
    }
    let mut r = MPoly::var_pow(Var::S, n).mul(&lcm);
    for (deg_s, (num, den)) in numerators.iter().zip(&denominators).enumerate() {
        let factor = lcm.exact_div(den).expect("lcm divisible by denominator");
        let term = MPoly::var_pow(Var::S, deg_s as u16).mul(&num.mul(&factor));
        r = r.add(&term);
    }
    let r = r.primitive();
    if r.degree_or0(Var::T) > dt {
        return Err(PushforwardError::ValidationFailure);
    }
    // validate at 3 fresh samples: R(s, t*) = lc_s(R)(t*) * charpoly
    let lc_s = r.lc_wrt(Var::S);
    for _ in 0..3 {
        let (t_star, cp) = good_sample(f, g, j, sampler)?;
        let unit = lc_s.eval(Var::T, &t_star).as_constant().unwrap();
        if unit.is_zero() {
            continue; // degenerate validation point, draw another
        }
        let specialized = r.eval(Var::T, &t_star);
        if specialized != cp.scale(&unit) {
            return Err(PushforwardError::ValidationFailure);
        }
    }
    Ok(Pushforward {
        r,
        deg_bounds: (ds, dt),
        samples_used: samples.into_iter().map(|(t, _)| t).collect(),
    })
}

/// Content of `r` as a polynomial in `t`: the product of its vertical-line
/// components `(s - a)^m`.
pub fn t_content(r: &MPoly) -> MPoly {
    content_wrt(r, Var::T)
}

/// `r` with vertical components removed.
pub fn primitive_part_t(r: &MPoly) -> MPoly {
    if r.is_zero() {
        return MPoly::zero();
    }
    r.exact_div(&t_content(r)).unwrap().primitive()
}

/// Leading `t`-coefficient of the `t`-primitive part, a polynomial in `s`.
/// Its vanishing order at `s = c` is the finite-place germ number.
pub fn germ_numerator(r: &MPoly) -> MPoly {
    primitive_part_t(r).lc_wrt(Var::T)
}

/// `I_{(c, infinity)}(Delta_1, P^1 x {infinity})` at a finite place: a
/// branch with Puiseux contact of order `k` over `s = c` contributes `k`
/// to the vanishing of the leading `t`-coefficient.
pub fn delta1_finite_germ(r: &MPoly, place: &Place) -> u32 {
    assert!(!r.is_zero());
    assert!(!place.is_infinity(), "finite germ asked at infinity");
    let w = germ_numerator(r);
    if w.is_constant() {
        return 0;
    }
    order_at_place(&w, place).expect("finite place")
}

/// One finite-place entry of the profile. `Delta_2` does not pass through
/// `(c, infinity)` for finite `c`, so `ir = delta1` and `delta2 = 0`.
pub fn irregularity_finite(r: &MPoly, place: &Place) -> (u32, u32, u32) {
    let d1 = delta1_finite_germ(r, place);
    (d1, d1, 0)
}

/// All finite places with nonzero irregularity, from the squarefree
/// decomposition of the leading `t`-coefficient. Rational roots become
/// rational places; the remaining factor of each multiplicity is reported
/// as one monic squarefree minimal-polynomial place.
pub fn profile_finite(r: &MPoly) -> Vec<(Place, u32)> {
    let w = germ_numerator(r);
    if w.is_constant() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (b, k) in squarefree(&w).factors {
        if !b.involves(Var::S) {
            continue;
        }
        let mut residual = b.clone();
        let mut roots = rational_roots(&b, Var::S);
        roots.sort();
        for c in roots {
            let lin = MPoly::var(Var::S).sub(&MPoly::constant(c.clone()));
            residual = residual.exact_div(&lin).expect("root divides");
            out.push((Place::Rational(c), k));
        }
        if residual.degree_or0(Var::S) >= 1 {
            debug_assert!(residual.degree_or0(Var::S) >= 2);
            out.push((Place::Algebraic(residual.monic()), k));
        }
    }
    out.sort_by_key(|e| place_sort_key(&e.0));
    out
}

pub(crate) fn place_sort_key(p: &Place) -> (u8, String) {
    match p {
        Place::Rational(q) => (0, format!("{:>24}", q)),
        Place::Algebraic(m) => (1, m.to_string()),
        Place::Infinity => (2, String::new()),
    }
}

/// Total finite irregularity vs. the degree of the germ numerator.
pub fn finite_sum_rule(r: &MPoly) -> (u32, u32) {
    let total: u32 = profile_finite(r)
        .iter()
        .map(|(p, k)| match p {
            Place::Rational(_) => *k,
            Place::Algebraic(m) => *k * m.degree_or0(Var::S) as u32,
            Place::Infinity => 0,
        })
        .sum();
    (total, germ_numerator(r).degree_or0(Var::S) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Var::{S, T, X, Y};

    fn x() -> MPoly {
        MPoly::var(X)
    }
    fn y() -> MPoly {
        MPoly::var(Y)
    }
    fn s() -> MPoly {
        MPoly::var(S)
    }
    fn t() -> MPoly {
        MPoly::var(T)
    }
    fn q(n: i64, d: i64) -> Q {
        Q::new(Z::from(n), Z::from(d))
    }

    #[test]
    fn jacobian_cases() {
        assert_eq!(jacobian(&x(), &y()), MPoly::one());
        // (x, y + x y^2) -> 1 + 2xy
        let g = y().add(&x().mul(&y().pow(2)));
        assert_eq!(
            jacobian(&x(), &g),
            MPoly::one().add(&x().mul(&y()).scale(&q(2, 1)))
        );
        // dependent pair
        let p = x().pow(2).add(&y().pow(3));
        assert!(jacobian(&p, &p).is_zero());
        assert!(dependence_test(&jacobian(&x().pow(2), &x().pow(3))));
        assert!(!dependence_test(&jacobian(&x(), &y())));
    }

    #[test]
    fn fiber_charpoly_cases() {
        let g = y().add(&x().mul(&y().pow(2)));
        let j = jacobian(&x(), &g);
        // hand-solved: {1+2xy=0, y+xy^2=1} has the unique solution (-1/4, 2)
        let cp = fiber_charpoly(&x(), &g, &j, &q(1, 1)).unwrap();
        assert_eq!(cp, s().add(&MPoly::constant(q(1, 4))));
        // empty critical locus
        let j2 = jacobian(&x(), &y());
        assert_eq!(
            fiber_charpoly(&x(), &y(), &j2, &q(5, 1)).unwrap(),
            MPoly::one()
        );
        // inconsistent system {x = 0, xy = 1}
        let g3 = x().mul(&y());
        let j3 = jacobian(&x(), &g3);
        assert_eq!(j3, x());
        assert_eq!(
            fiber_charpoly(&x(), &g3, &j3, &q(1, 1)).unwrap(),
            MPoly::one()
        );
    }

    #[test]
    fn pushforward_basic_curve() {
        // f=x, g=y+xy^2: critical locus x=s, y=-1/(2s) maps onto 4st+1=0
        let g = y().add(&x().mul(&y().pow(2)));
        let j = jacobian(&x(), &g);
        let p = pushforward_polynomial(&x(), &g, &j).unwrap();
        let expected = s().mul(&t()).scale(&q(4, 1)).add(&MPoly::one());
        assert_eq!(p.r, expected);
    }

    #[test]
    fn pushforward_trivial_and_two_point() {
        let j = jacobian(&x(), &y());
        let p = pushforward_polynomial(&x(), &y(), &j).unwrap();
        assert_eq!(p.r, MPoly::one());

        // g = y + x(x-1)y^2: lc_t proportional to s(s-1)
        let g = y().add(&x().mul(&x().sub(&MPoly::one())).mul(&y().pow(2)));
        let j = jacobian(&x(), &g);
        let p = pushforward_polynomial(&x(), &g, &j).unwrap();
        let lc = germ_numerator(&p.r);
        let expected = s().mul(&s().sub(&MPoly::one()));
        assert_eq!(lc.primitive(), expected.primitive());
    }

    #[test]
    fn finite_germs_and_profile() {
        let r = s().mul(&t()).scale(&q(4, 1)).add(&MPoly::one());
        assert_eq!(delta1_finite_germ(&r, &Place::Rational(q(0, 1))), 1);
        assert_eq!(delta1_finite_germ(&r, &Place::Rational(q(1, 1))), 0);
        assert_eq!(
            delta1_finite_germ(&MPoly::one(), &Place::Rational(q(0, 1))),
            0
        );
        let profile = profile_finite(&r);
        assert_eq!(profile, vec![(Place::Rational(q(0, 1)), 1)]);
        assert!(profile_finite(&MPoly::one()).is_empty());
        let (lhs, rhs) = finite_sum_rule(&r);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn vertical_component_removed() {
        // f = x^2, g = y: critical divisor 2{x=0}, image is the vertical
        // line s=0, which must disappear from every finite germ.
        let f = x().pow(2);
        let j = jacobian(&f, &y());
        assert_eq!(j.primitive(), x());
        let p = pushforward_polynomial(&f, &y(), &j).unwrap();
        assert_eq!(p.r, s());
        assert!(profile_finite(&p.r).is_empty());
        assert_eq!(delta1_finite_germ(&p.r, &Place::Rational(q(0, 1))), 0);
    }

    #[test]
    fn two_point_profile_exact() {
        let g = y().add(&x().mul(&x().sub(&MPoly::one())).mul(&y().pow(2)));
        let j = jacobian(&x(), &g);
        let p = pushforward_polynomial(&x(), &g, &j).unwrap();
        let profile = profile_finite(&p.r);
        assert_eq!(
            profile,
            vec![
                (Place::Rational(q(0, 1)), 1),
                (Place::Rational(q(1, 1)), 1)
            ]
        );
    }

    #[test]
    fn twist_translation_invariance() {
        // replacing g by g + lambda leaves every finite-place germ unchanged
        let g = y().add(&x().mul(&y().pow(2)));
        let j = jacobian(&x(), &g);
        let base = profile_finite(&pushforward_polynomial(&x(), &g, &j).unwrap().r);
        for lambda in [1i64, -3, 7] {
            let g2 = g.add(&MPoly::from_int(lambda));
            let j2 = jacobian(&x(), &g2);
            let p2 = pushforward_with_config(&x(), &g2, &j2, &SampleConfig::with_seed(1)).unwrap();
            assert_eq!(profile_finite(&p2.r), base);
        }
    }
}
