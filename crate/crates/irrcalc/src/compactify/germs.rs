//! Per-component germ data: restrictions of `(F, G)` to a boundary
//! component, criticality order, multiplicity-correct image cycles by
//! implicitization, and intersection germs at `(infinity, infinity)`.

use super::tower::{divrem_by_monic, non_ext_coefficients, TRes, Tower};
use crate::algebra::poly::{MPoly, Var};
use crate::algebra::resultant::resultant;
use crate::Q;
use num_traits::Zero;

/// Everything needed to analyze one boundary-component family: the reduced
/// map pairs of its creation chart, where the component is the axis `u = 0`
/// parametrized by `v`.
#[derive(Debug, Clone)]
pub struct ComponentSeed {
    pub id: usize,
    pub label: String,
    pub created_in: usize,
    pub tower: Tower,
    pub f_num: MPoly,
    pub f_den: MPoly,
    pub g_num: MPoly,
    pub g_den: MPoly,
}

/// Image type of a boundary component under `(F, G)`.
#[derive(Debug, Clone)]
pub enum ImageKind {
    /// Both restrictions constant: contributes nothing.
    Point,
    /// `F` or `G` identically infinite: the image lies inside the boundary
    /// of `P^1 x P^1` and is removed by the intersection with `C^2`.
    BoundaryLine,
    /// `F` constant finite: the vertical line is removed by the deletion
    /// of `{c} x C` before closure.
    VerticalLine,
    /// `G` constant finite: never passes through `(c, infinity)`.
    HorizontalLine,
    /// An honest curve with affine equation `w` (tower coefficients), of
    /// the recorded bidegree; `w` is the implicit equation raised to the
    /// mapping degree, so germ numbers of `w` are multiplicity-correct.
    Curve { w: MPoly, deg_s: u16, deg_t: u16 },
}

impl ImageKind {
    pub fn describe(&self) -> String {
        match self {
            ImageKind::Point => "point".into(),
            ImageKind::BoundaryLine => "inside boundary".into(),
            ImageKind::VerticalLine => "vertical line".into(),
            ImageKind::HorizontalLine => "horizontal line".into(),
            ImageKind::Curve { w, .. } => format!("curve {}", w),
        }
    }
}

/// Final germ data of one (sub)family of conjugate boundary components.
#[derive(Debug, Clone)]
pub struct ComponentOutcome {
    pub id: usize,
    pub label: String,
    pub family_size: u64,
    pub pole_f: u32,
    pub pole_g: u32,
    pub crit_mult: u32,
    pub image: ImageKind,
    /// Germ of the image cycle at `(infinity, infinity)`, per branch.
    pub germ_infinity: u32,
    pub f_restricted: String,
    pub g_restricted: String,
}

/// `I_((inf,inf))(div w, P^1 x {inf})` for a `t`-primitive `w`: the total
/// intersection with `t = inf` is `deg_s w` and the finite places absorb
/// `deg_s lc_t(w)`.
pub fn germ_at_infinity(w: &MPoly, mult: u32) -> u32 {
    assert!(!w.is_zero());
    let ds = w.degree_or0(Var::S) as u32;
    let ds_lc = w.lc_wrt(Var::T).degree_or0(Var::S) as u32;
    mult * (ds - ds_lc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictionClass {
    Infinite,
    Constant,
    NonConstant,
}

/// Restriction of one coordinate of the map to the component: substitute
/// `u = 0`, rename the parameter to `tau`, reduce the fraction.
fn restrict(t: &Tower, num: &MPoly, den: &MPoly) -> TRes<(MPoly, MPoly, RestrictionClass)> {
    let mut n = t.nf(&num.eval(Var::U, &Q::zero()).rename_var(Var::V, Var::Tau));
    let mut d = t.nf(&den.eval(Var::U, &Q::zero()).rename_var(Var::V, Var::Tau));
    for p in [&n, &d] {
        if !p.is_zero() {
            // branch-uniform nonvanishing before trusting degrees
            t.nonzero_somewhere_in_every_branch(&non_ext_coefficients(p))?;
        }
    }
    if d.is_zero() {
        return Ok((n, d, RestrictionClass::Infinite));
    }
    if n.is_zero() {
        return Ok((n, d, RestrictionClass::Constant));
    }
    let g = t.gcd_univ(&n, &d, Var::Tau)?;
    if g.degree_or0(Var::Tau) >= 1 {
        let (qn, rn) = divrem_by_monic(&n, &g, Var::Tau);
        let (qd, rd) = divrem_by_monic(&d, &g, Var::Tau);
        debug_assert!(t.is_zero(&rn) && t.is_zero(&rd));
        n = t.nf(&qn);
        d = t.nf(&qd);
    }
    let dn = t.uniform_degree(&n, Var::Tau)?.unwrap_or(0);
    let dd = t.uniform_degree(&d, Var::Tau)?.unwrap_or(0);
    let class = if dn == 0 && dd == 0 {
        RestrictionClass::Constant
    } else {
        RestrictionClass::NonConstant
    };
    Ok((n, d, class))
}

/// Image of a parametrized rational curve `tau -> (fn/fd, gn/gd)` as a
/// cycle. For two nonconstant restrictions, `Res_tau(fn - s fd, gn - t gd)`
/// is the implicit equation raised to the mapping degree. Returns the kind
/// and the germ at `(inf, inf)`.
pub fn image_cycle(
    t: &Tower,
    f_res: (&MPoly, &MPoly, RestrictionClass),
    g_res: (&MPoly, &MPoly, RestrictionClass),
) -> TRes<(ImageKind, u32)> {
    use RestrictionClass as C;
    let (fn_, fd, fc) = f_res;
    let (gn, gd, gc) = g_res;
    match (fc, gc) {
        (C::Infinite, _) | (_, C::Infinite) => Ok((ImageKind::BoundaryLine, 0)),
        (C::Constant, C::Constant) => Ok((ImageKind::Point, 0)),
        (C::Constant, C::NonConstant) => Ok((ImageKind::VerticalLine, 0)),
        (C::NonConstant, C::Constant) => Ok((ImageKind::HorizontalLine, 0)),
        (C::NonConstant, C::NonConstant) => {
            let a = fn_.sub(&MPoly::var(Var::S).mul(fd));
            let b = gn.sub(&MPoly::var(Var::T).mul(gd));
            // the resultant commutes with reduction modulo the tower as
            // long as the tau-leading coefficients survive in every branch
            for p in [&a, &b] {
                let lc = p.lc_wrt(Var::Tau);
                t.nonzero_somewhere_in_every_branch(&non_ext_coefficients(&lc))?;
            }
            let w = t.nf(&resultant(&a, &b, Var::Tau));
            assert!(
                !w.is_zero(),
                "implicitization of a nonconstant parametrization vanished"
            );
            let ds = t.uniform_degree(&w, Var::S)?.unwrap_or(0);
            let dt = t.uniform_degree(&w, Var::T)?.unwrap_or(0);
            let lc_t = w.lc_wrt(Var::T);
            let ds_lc = t.uniform_degree(&lc_t, Var::S)?.unwrap_or(0);
            let germ = (ds - ds_lc) as u32;
            Ok((
                ImageKind::Curve {
                    w,
                    deg_s: ds,
                    deg_t: dt,
                },
                germ,
            ))
        }
    }
}

fn analyze_component(seed: &ComponentSeed, t: &Tower) -> TRes<ComponentOutcome> {
    let (f_num, f_den) =
        super::reduce_monomial_pair(&t.nf(&seed.f_num), &t.nf(&seed.f_den));
    let (g_num, g_den) =
        super::reduce_monomial_pair(&t.nf(&seed.g_num), &t.nf(&seed.g_den));

    // generic orders along the component of the four pair entries
    let ord = |p: &MPoly| -> TRes<u16> { t.uniform_ord(p, Var::U) };
    let o_fn = ord(&f_num)?;
    let o_fd = ord(&f_den)?;
    let o_gn = ord(&g_num)?;
    let o_gd = ord(&g_den)?;
    let pole_f = (o_fd as i64 - o_fn as i64).max(0) as u32;
    let pole_g = (o_gd as i64 - o_gn as i64).max(0) as u32;

    // order along the component of the Jacobian determinant of (F, G),
    // corrected into target-adapted coordinates where F or G is infinite
    let d_u = |p: &MPoly| p.derivative(Var::U);
    let d_v = |p: &MPoly| p.derivative(Var::V);
    let num_f_u = d_u(&f_num).mul(&f_den).sub(&f_num.mul(&d_u(&f_den)));
    let num_f_v = d_v(&f_num).mul(&f_den).sub(&f_num.mul(&d_v(&f_den)));
    let num_g_u = d_u(&g_num).mul(&g_den).sub(&g_num.mul(&d_u(&g_den)));
    let num_g_v = d_v(&g_num).mul(&g_den).sub(&g_num.mul(&d_v(&g_den)));
    let jac_num = t.nf(&num_f_u.mul(&num_g_v).sub(&num_f_v.mul(&num_g_u)));
    assert!(
        !jac_num.is_zero(),
        "Jacobian vanished identically: dependent pair reached the resolution"
    );
    let o_jac = t.uniform_ord(&jac_num, Var::U)? as i64;
    let crit =
        o_jac - 2 * o_fd as i64 - 2 * o_gd as i64 + 2 * pole_f as i64 + 2 * pole_g as i64;
    assert!(crit >= 0, "criticality order must be nonnegative");

    let f_res = restrict(t, &f_num, &f_den)?;
    let g_res = restrict(t, &g_num, &g_den)?;
    let f_str = format!("({}) / ({})", f_res.0, f_res.1);
    let g_str = format!("({}) / ({})", g_res.0, g_res.1);
    let (image, germ) = image_cycle(
        t,
        (&f_res.0, &f_res.1, f_res.2),
        (&g_res.0, &g_res.1, g_res.2),
    )?;

    Ok(ComponentOutcome {
        id: seed.id,
        label: seed.label.clone(),
        family_size: t.family_size(),
        pole_f,
        pole_g,
        crit_mult: crit as u32,
        image,
        germ_infinity: germ,
        f_restricted: f_str,
        g_restricted: g_str,
    })
}

/// Analyze a component family, forking the tower whenever a computation
/// exposes a zero divisor.
pub(crate) fn run_component(seed: &ComponentSeed) -> Result<Vec<ComponentOutcome>, String> {
    let mut stack = vec![seed.tower.clone()];
    let mut out = Vec::new();
    let mut fuel = 400usize;
    while let Some(t) = stack.pop() {
        fuel = fuel
            .checked_sub(1)
            .ok_or_else(|| format!("component {}: split fuel exhausted", seed.label))?;
        match analyze_component(seed, &t) {
            Ok(o) => out.push(o),
            Err(split) => {
                let (a, b) = t.fork(&split);
                stack.push(a);
                stack.push(b);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Var::{S, T, Tau};

    fn tau() -> MPoly {
        MPoly::var(Tau)
    }
    fn s() -> MPoly {
        MPoly::var(S)
    }
    fn t_() -> MPoly {
        MPoly::var(T)
    }

    #[test]
    fn germ_at_infinity_formula() {
        // 4st + 1: closure meets t=inf only over the finite place s=0
        let w = s()
            .mul(&t_())
            .scale(&Q::from_integer(4.into()))
            .add(&MPoly::one());
        assert_eq!(germ_at_infinity(&w, 1), 0);
        // s^3 - t^2: all three sheets land at (inf, inf)
        let w = s().pow(3).sub(&t_().pow(2));
        assert_eq!(germ_at_infinity(&w, 1), 3);
        // the diagonal meets t=inf once, at (inf, inf)
        let w = s().sub(&t_());
        assert_eq!(germ_at_infinity(&w, 1), 1);
        assert_eq!(germ_at_infinity(&w, 3), 3);
    }

    #[test]
    fn implicitization_of_parametrized_images() {
        let tw = Tower::empty();
        let one = MPoly::one();
        // tau -> (tau, tau^2): the parabola, mapping degree 1
        let (kind, germ) = image_cycle(
            &tw,
            (&tau(), &one, RestrictionClass::NonConstant),
            (&tau().pow(2), &one, RestrictionClass::NonConstant),
        )
        .unwrap();
        match kind {
            ImageKind::Curve { w, .. } => {
                assert_eq!(w.primitive(), s().pow(2).sub(&t_()).primitive());
            }
            other => panic!("expected a curve, got {:?}", other),
        }
        assert_eq!(germ, 2);

        // tau -> (tau^2, tau^4): degree-2 cover of the parabola
        let (kind, _) = image_cycle(
            &tw,
            (&tau().pow(2), &one, RestrictionClass::NonConstant),
            (&tau().pow(4), &one, RestrictionClass::NonConstant),
        )
        .unwrap();
        match kind {
            ImageKind::Curve { w, .. } => {
                let sq = s().pow(2).sub(&t_()).pow(2);
                assert_eq!(w.primitive(), sq.primitive());
            }
            other => panic!("expected a curve, got {:?}", other),
        }

        // constant F, nonconstant G: vertical line, contributes nothing
        let (kind, germ) = image_cycle(
            &tw,
            (&MPoly::from_int(5), &one, RestrictionClass::Constant),
            (&tau(), &one, RestrictionClass::NonConstant),
        )
        .unwrap();
        assert!(matches!(kind, ImageKind::VerticalLine));
        assert_eq!(germ, 0);
    }
}
