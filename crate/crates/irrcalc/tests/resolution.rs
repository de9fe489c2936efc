//! End-to-end checks of the blow-up resolution and the infinity germs.

use irrcalc::algebra::poly::Var::{X, Y};
use irrcalc::compactify::{irregularity_at_infinity, resolve, ImageKind, ResolveConfig};
use irrcalc::discriminant::{jacobian, pushforward_polynomial};
use irrcalc::{MPoly, Q};

fn x() -> MPoly {
    MPoly::var(X)
}
fn y() -> MPoly {
    MPoly::var(Y)
}

fn infinity_ir(f: &MPoly, g: &MPoly) -> (i64, u64, u64, u64) {
    let j = jacobian(f, g);
    let p = pushforward_polynomial(f, g, &j).unwrap();
    let b = irregularity_at_infinity(f, g, &p.r, &ResolveConfig::default()).unwrap();
    (b.ir, b.delta1_affine, b.delta1_boundary, b.delta2)
}

#[test]
fn coordinate_pair_resolves_into_boundary() {
    // (x, y): every boundary component maps into the boundary of P^1xP^1
    // or to a point; nothing contributes.
    let res = resolve(&x(), &y(), &ResolveConfig::default()).unwrap();
    assert!(res.blowups >= 2);
    for c in &res.components {
        match &c.image {
            ImageKind::Curve { .. } => panic!(
                "component {} has an affine image curve: {}",
                c.label,
                c.image.describe()
            ),
            _ => assert_eq!(c.germ_infinity, 0),
        }
    }
    let (ir, d1a, d1b, d2) = infinity_ir(&x(), &y());
    assert_eq!((ir, d1a, d1b, d2), (0, 0, 0, 0));
}

#[test]
fn monomial_pair_is_annulus_like() {
    // (x, xy): the fiber over large rho is an annulus, IR_inf = 0
    let g = x().mul(&y());
    let (ir, ..) = infinity_ir(&x(), &g);
    assert_eq!(ir, 0);
}

#[test]
fn finite_distance_example_has_no_infinity_term() {
    // (x, y + x y^2): IR_0 = 1 but IR_inf = 0
    let g = y().add(&x().mul(&y().pow(2)));
    let (ir, d1a, d1b, d2) = infinity_ir(&x(), &g);
    assert_eq!((ir, d1a, d1b, d2), (0, 0, 0, 0));
}

#[test]
fn cuspidal_critical_image_contributes_at_infinity() {
    // f = x^2 + 2xy, g = x^3 + 3x^2 y: the critical divisor contains
    // {y = 0} mapping to the cuspidal cubic (s^3 = t^2 up to sign), whose
    // closure meets t = inf three-fold at (inf, inf). The boundary adds
    // nothing, so IR_inf = 3.
    let f = x().pow(2).add(&x().mul(&y()).scale(&Q::from_integer(2.into())));
    let g = x().pow(3).add(
        &x().pow(2)
            .mul(&y())
            .scale(&Q::from_integer(3.into())),
    );
    let j = jacobian(&f, &g);
    assert!(!j.is_zero());
    let (ir, d1a, d1b, d2) = infinity_ir(&f, &g);
    assert_eq!(d1a, 3);
    assert_eq!((d1b, d2), (0, 0));
    assert_eq!(ir, 3);
}

#[test]
fn irrational_centers_are_handled_by_the_tower() {
    // g = x^3 + y^3 + 1 forces blow-ups above the three cube roots of -1
    // on the line at infinity (one rational, one quadratic pair).
    let g = x().pow(3).add(&y().pow(3)).add(&MPoly::one());
    let (ir, d1a, d1b, d2) = infinity_ir(&x(), &g);
    assert_eq!(d1a, 6);
    assert_eq!((d1b, d2), (0, 0));
    assert_eq!(ir, 6);
}

#[test]
fn vertical_line_critical_pair() {
    // f = x^2, g = y: the critical image is the vertical line s = 0;
    // nothing at infinity.
    let (ir, ..) = infinity_ir(&x().pow(2), &y());
    assert_eq!(ir, 0);
}

#[test]
fn alternative_resolution_same_total() {
    // extra harmless blow-ups must not change the total IR_inf
    let g = y().add(&x().mul(&y().pow(2)));
    let j = jacobian(&x(), &g);
    let p = pushforward_polynomial(&x(), &g, &j).unwrap();
    let base = irregularity_at_infinity(&x(), &g, &p.r, &ResolveConfig::default()).unwrap();
    for v0 in [1i64, -2, 7] {
        let cfg = ResolveConfig {
            extra_initial_blowups: vec![Q::from_integer(v0.into())],
            ..Default::default()
        };
        let alt = irregularity_at_infinity(&x(), &g, &p.r, &cfg).unwrap();
        assert_eq!(alt.ir, base.ir, "extra blow-up at v={} changed the sum", v0);
        assert!(alt.resolution.blowups > base.resolution.blowups);
    }

    let f2 = x().pow(2).add(&x().mul(&y()).scale(&Q::from_integer(2.into())));
    let g2 = x().pow(3).add(
        &x().pow(2)
            .mul(&y())
            .scale(&Q::from_integer(3.into())),
    );
    let j2 = jacobian(&f2, &g2);
    let p2 = pushforward_polynomial(&f2, &g2, &j2).unwrap();
    let base2 = irregularity_at_infinity(&f2, &g2, &p2.r, &ResolveConfig::default()).unwrap();
    let cfg = ResolveConfig {
        extra_initial_blowups: vec![Q::from_integer(3.into())],
        ..Default::default()
    };
    let alt2 = irregularity_at_infinity(&f2, &g2, &p2.r, &cfg).unwrap();
    assert_eq!(alt2.ir, base2.ir);
}

#[test]
fn chart_transitions_compose_to_identity() {
    // to_affine composed with its inverse is the identity on every chart
    let g = y().add(&x().mul(&y().pow(2)));
    let res = resolve(&x(), &g, &ResolveConfig::default()).unwrap();
    assert!(!res.charts.is_empty());
    // the identity check happens inside the chart construction tests of
    // the library; here we sanity-check the records exist and the tree is
    // connected
    for rec in &res.charts {
        if let Some(p) = rec.parent {
            assert!(res.charts.iter().any(|r| r.id == p) || p <= 1);
        }
        assert!(rec.family_size >= 1);
    }
}
