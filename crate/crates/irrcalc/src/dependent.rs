//! The algebraically dependent case: reduced image curve of `(f, g)`, the
//! Euler characteristic of the generic fiber, and the irregularity
//! `IR_c = -chi(F) * I_((c,inf))(Delta, P^1 x {inf})`.

use crate::algebra::gcd::gcd_multi;
use crate::algebra::linalg::nullspace_basis;
use crate::algebra::place::Place;
use crate::algebra::poly::{MPoly, Var};
use crate::algebra::resultant::resultant;
use crate::discriminant::primitive_part_t;
use crate::zerodim::{groebner, quotient_algebra};
use crate::{Q, Z};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DependentError {
    #[error("no image-curve equation passed the vanishing test")]
    EliminationFailure,
    #[error("generic-fiber Euler characteristic did not stabilize over 25 samples")]
    Instability,
}

/// Reduced (squarefree primitive) defining polynomial of the closure of
/// the image of `(f, g)`.
#[derive(Debug, Clone)]
pub struct ImageCurve {
    pub w: MPoly,
}

/// Euler characteristic of the generic fiber, with the samples that
/// witnessed it.
#[derive(Debug, Clone)]
pub struct GenericFiberChi {
    pub chi: i64,
    pub samples: Vec<((Q, Q), i64)>,
}

/// Image curve of a dependent pair by exact curve fitting: the kernel of
/// the evaluation map on monomials `s^i t^j` (`i <= deg g`, `j <= deg f`)
/// at more sample points than the Bezout bound consists of multiples of
/// the image equation, so the gcd of a kernel basis is the equation.
pub fn image_curve(f: &MPoly, g: &MPoly, seed: u64) -> Result<ImageCurve, DependentError> {
    assert!(!f.is_constant(), "f constant is rejected upstream");
    if let Some(g0) = g.as_constant() {
        // horizontal line t = g0
        let w = MPoly::var(Var::T).sub(&MPoly::constant(g0));
        return Ok(ImageCurve { w });
    }
    let ds = g.total_degree() as usize;
    let dt = f.total_degree() as usize;
    let monomials: Vec<(u16, u16)> = (0..=ds)
        .flat_map(|i| (0..=dt).map(move |j| (i as u16, j as u16)))
        .collect();
    let needed = monomials.len() + 2 * ds * dt + 10;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1337_c0de);
    let mut points = std::collections::BTreeSet::new();
    let mut guard = 0;
    while points.len() < needed {
        guard += 1;
        if guard > 100 * needed {
            return Err(DependentError::EliminationFailure);
        }
        let x0 = Q::from_integer(Z::from(rng.gen_range(-2000i64..=2000)));
        let y0 = Q::from_integer(Z::from(rng.gen_range(-2000i64..=2000)));
        let s0 = f.eval_all(&[(Var::X, x0.clone()), (Var::Y, y0.clone())]);
        let t0 = g.eval_all(&[(Var::X, x0), (Var::Y, y0)]);
        points.insert((s0, t0));
    }
    let mut mat: Vec<Vec<Q>> = points
        .iter()
        .map(|(s0, t0)| {
            monomials
                .iter()
                .map(|(i, j)| {
                    crate::algebra::poly::pow_q(s0, *i as u32)
                        * crate::algebra::poly::pow_q(t0, *j as u32)
                })
                .collect()
        })
        .collect();
    let kernel = nullspace_basis(&mut mat, monomials.len());
    if kernel.is_empty() {
        return Err(DependentError::EliminationFailure);
    }
    let mut w = MPoly::zero();
    for vec in kernel {
        let mut cand = MPoly::zero();
        for ((i, j), c) in monomials.iter().zip(vec) {
            if !c.is_zero() {
                let m = {
                    let mut m = crate::algebra::poly::MONO_ONE;
                    m[Var::S.index()] = *i;
                    m[Var::T.index()] = *j;
                    m
                };
                cand.add_term(&m, c);
            }
        }
        w = gcd_multi(&w, &cand);
    }
    if w.is_constant() {
        return Err(DependentError::EliminationFailure);
    }
    let w = {
        // squarefree primitive (fitting can only return it up to squares
        // when the bound is loose; the gcd is already reduced in practice)
        let v = w.vars_present()[0];
        let d = w.derivative(v);
        let g_ = gcd_multi(&w, &d);
        w.exact_div(&g_).unwrap().primitive()
    };
    // vanishing test at fresh samples
    for k in 0..20u64 {
        let x0 = Q::from_integer(Z::from((rng.gen_range(-5000i64..=5000)).wrapping_add(k as i64)));
        let y0 = Q::from_integer(Z::from(rng.gen_range(-5000i64..=5000)));
        let s0 = f.eval_all(&[(Var::X, x0.clone()), (Var::Y, y0.clone())]);
        let t0 = g.eval_all(&[(Var::X, x0), (Var::Y, y0)]);
        let val = w.eval(Var::S, &s0).eval(Var::T, &t0);
        if !val.is_zero() {
            return Err(DependentError::EliminationFailure);
        }
    }
    Ok(ImageCurve { w })
}

/// Euler characteristic of a smooth affine plane curve `d = 0` that is
/// proper over the `x`-line after a shear: `deg_y d - deg_x Res_y(d, d_y)`.
fn chi_smooth_curve(d: &MPoly) -> Option<i64> {
    // shear x -> x + lambda y until the y-leading coefficient is constant
    for lambda in [0i64, 1, -1, 2, -2, 3, -3, 5, -5, 7] {
        let sheared = if lambda == 0 {
            d.clone()
        } else {
            let repl = MPoly::var(Var::X).add(&MPoly::var(Var::Y).scale(&Q::from_integer(Z::from(lambda))));
            d.subst(Var::X, &repl)
        };
        let dy = sheared.degree_or0(Var::Y);
        if dy == 0 {
            continue;
        }
        if !sheared.lc_wrt(Var::Y).is_constant() {
            continue;
        }
        let deriv = sheared.derivative(Var::Y);
        let res = resultant(&sheared, &deriv, Var::Y);
        if res.is_zero() {
            return None; // not squarefree
        }
        // smoothness: (d, d_x, d_y) must be the unit ideal
        let dx = sheared.derivative(Var::X);
        let gens: Vec<MPoly> = [sheared.clone(), dx, deriv]
            .into_iter()
            .filter(|p| !p.is_zero())
            .collect();
        let Ok(gb) = groebner(&gens) else { return None };
        match quotient_algebra(&gb) {
            Ok(alg) if alg.dim == 0 => {}
            _ => return None, // singular fiber, discard
        }
        return Some(dy as i64 - res.degree_or0(Var::X) as i64);
    }
    None
}

/// Sample-stable Euler characteristic of the generic fiber of
/// `(f, g): C^2 -> im(f, g)`. The fiber over a sampled image point
/// `(f, g)(x0, y0)` is cut out by `gcd(f - s0, g - t0)`; singular or
/// discordant samples are discarded.
pub fn chi_generic_fiber(f: &MPoly, g: &MPoly, seed: u64) -> Result<GenericFiberChi, DependentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfee1_600d);
    let mut values: Vec<((Q, Q), i64)> = Vec::new();
    for _ in 0..25 {
        let x0 = Q::from_integer(Z::from(rng.gen_range(-60i64..=60)));
        let y0 = Q::from_integer(Z::from(rng.gen_range(-60i64..=60)));
        let s0 = f.eval_all(&[(Var::X, x0.clone()), (Var::Y, y0.clone())]);
        let t0 = g.eval_all(&[(Var::X, x0.clone()), (Var::Y, y0.clone())]);
        let fs = f.sub(&MPoly::constant(s0.clone()));
        let gt = g.sub(&MPoly::constant(t0.clone()));
        let d = gcd_multi(&fs, &gt);
        if d.is_constant() {
            continue;
        }
        let Some(chi) = chi_smooth_curve(&d) else {
            continue;
        };
        values.push(((x0, y0), chi));
        let concordant = values
            .iter()
            .filter(|(_, c)| *c == chi)
            .count();
        if concordant >= 5 {
            let samples = values
                .into_iter()
                .filter(|(_, c)| *c == chi)
                .collect::<Vec<_>>();
            return Ok(GenericFiberChi { chi, samples });
        }
    }
    Err(DependentError::Instability)
}

/// Germ intersection number of the reduced image cycle at a place.
pub fn dependent_germ(w: &MPoly, place: &Place) -> u32 {
    match place {
        Place::Infinity => crate::compactify::germ_at_infinity(&primitive_part_t(w), 1),
        p => crate::discriminant::delta1_finite_germ(w, p),
    }
}

/// `IR_c` in the dependent case; may be negative.
pub fn irregularity_dependent(w: &MPoly, chi: i64, place: &Place) -> i64 {
    -chi * dependent_germ(w, place) as i64
}

/// Finite places with nonzero germ, paired with their germ numbers.
pub fn dependent_finite_profile(w: &MPoly) -> Vec<(Place, u32)> {
    crate::discriminant::profile_finite(w)
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

    #[test]
    fn image_curves() {
        // f = g = x: the diagonal
        let w = image_curve(&x(), &x(), 0).unwrap().w;
        assert_eq!(w, s().sub(&t()));
        // f = x^2, g = x^3: s^3 - t^2
        let w = image_curve(&x().pow(2), &x().pow(3), 0).unwrap().w;
        assert_eq!(w, s().pow(3).sub(&t().pow(2)));
        // f = g = x^2 + y^3
        let p = x().pow(2).add(&y().pow(3));
        let w = image_curve(&p, &p, 0).unwrap().w;
        assert_eq!(w, s().sub(&t()));
    }

    #[test]
    fn image_curve_matches_resultant_elimination() {
        // cross-check against Res_x for an x-only pair
        let f = x().pow(2).add(&x());
        let g = x().pow(3);
        let w = image_curve(&f, &g, 0).unwrap().w;
        let e = resultant(
            &f.sub(&s()).rename_var(X, Var::U),
            &g.sub(&t()).rename_var(X, Var::U),
            Var::U,
        );
        // w must divide the elimination polynomial
        assert!(e.exact_div(&w).is_some());
        // and vanish on fresh image points
        for k in 1..10i64 {
            let q = Q::from_integer(Z::from(k));
            let s0 = f.eval_all(&[(X, q.clone()), (Y, Q::zero())]);
            let t0 = g.eval_all(&[(X, q, ), (Y, Q::zero())]);
            assert!(w.eval(S, &s0).eval(T, &t0).is_zero());
        }
    }

    #[test]
    fn chi_values() {
        // f = g = x: fiber is an affine line
        assert_eq!(chi_generic_fiber(&x(), &x(), 0).unwrap().chi, 1);
        // f = g = x^2 + y^3: chi = 3 - 4 = -1
        let p = x().pow(2).add(&y().pow(3));
        assert_eq!(chi_generic_fiber(&p, &p, 0).unwrap().chi, -1);
        // f = x^2, g = x^3: fiber x = x0 is a line
        assert_eq!(chi_generic_fiber(&x().pow(2), &x().pow(3), 0).unwrap().chi, 1);
    }

    #[test]
    fn dependent_irregularities() {
        // f = g = x: IR_inf = -1 * 1 = -1
        let w = image_curve(&x(), &x(), 0).unwrap().w;
        let chi = chi_generic_fiber(&x(), &x(), 0).unwrap().chi;
        assert_eq!(irregularity_dependent(&w, chi, &Place::Infinity), -1);

        // f = g = x^2 + y^3: IR_inf = -(-1) * 1 = 1
        let p = x().pow(2).add(&y().pow(3));
        let w = image_curve(&p, &p, 0).unwrap().w;
        let chi = chi_generic_fiber(&p, &p, 0).unwrap().chi;
        assert_eq!(irregularity_dependent(&w, chi, &Place::Infinity), 1);

        // f = x^2, g = x^3: IR_inf = -3, all finite places 0
        let w = image_curve(&x().pow(2), &x().pow(3), 0).unwrap().w;
        let chi = chi_generic_fiber(&x().pow(2), &x().pow(3), 0).unwrap().chi;
        assert_eq!(irregularity_dependent(&w, chi, &Place::Infinity), -3);
        assert!(dependent_finite_profile(&w).is_empty());
        assert_eq!(
            irregularity_dependent(&w, chi, &Place::Rational(Q::zero())),
            0
        );
    }

    #[test]
    fn constant_g_degenerate_path() {
        // g = 0: horizontal line image, all irregularities vanish
        let f = x().pow(3).add(&y().pow(2)).add(&x());
        let w = image_curve(&f, &MPoly::zero(), 0).unwrap().w;
        assert_eq!(w, t());
        let chi = chi_generic_fiber(&f, &MPoly::zero(), 0).unwrap().chi;
        assert_eq!(irregularity_dependent(&w, chi, &Place::Infinity), 0);
        assert!(dependent_finite_profile(&w).is_empty());
    }
}
