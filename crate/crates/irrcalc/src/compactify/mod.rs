//! Smooth compactification of the map `(f, g)` by iterated point blow-ups
//! of the projective plane, enumeration of the boundary divisor, and the
//! contributions of boundary components to the irregularity at infinity.
//!
//! Charts carry the lifted map as reduced numerator/denominator pairs in
//! coordinates `(u, v)`. Indeterminacy points on a boundary axis are
//! bundled into one symbolic center (a new tower level whose modulus has
//! those points as roots); blow-up charts then describe the whole
//! conjugate family at once. Chart ownership avoids double-processing:
//! the first chart of a blow-up owns its exceptional axis at finite
//! positions, the second chart owns only its origin.

pub mod germs;
pub mod tower;

pub use germs::{germ_at_infinity, image_cycle, ComponentOutcome, ImageKind};

use crate::algebra::poly::{MPoly, Var};
use crate::Q;
use germs::ComponentSeed;
use num_traits::Zero;
use std::collections::VecDeque;
use tower::{TRes, Tower};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolveError {
    #[error("blow-up budget exceeded ({0} blow-ups)")]
    DepthExceeded(usize),
    #[error("resolution invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone)]
pub struct ResolveConfig {
    pub max_blowups: usize,
    /// Extra non-indeterminate rational centers `(0, v0)` on the line at
    /// infinity in the first chart, blown up before resolution starts.
    /// Used to check independence of the totals from the chosen
    /// compactification.
    pub extra_initial_blowups: Vec<Q>,
}

impl Default for ResolveConfig {
    fn default() -> Self {
        ResolveConfig {
            max_blowups: 64,
            extra_initial_blowups: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Owns every finite position on the boundary axis `{u = 0}`.
    FullAxisU,
    /// Owns only the origin.
    OriginOnly,
}

/// One chart family of the atlas.
#[derive(Debug, Clone)]
pub struct Chart {
    pub id: usize,
    pub parent: Option<usize>,
    pub label: String,
    pub tower: Tower,
    pub f_num: MPoly,
    pub f_den: MPoly,
    pub g_num: MPoly,
    pub g_den: MPoly,
    /// `(x, y)` as rational pairs in the chart coordinates.
    pub x_pair: (MPoly, MPoly),
    pub y_pair: (MPoly, MPoly),
    /// `(u, v)` of this chart as rational pairs in `(x, y)`.
    pub u_inv: (MPoly, MPoly),
    pub v_inv: (MPoly, MPoly),
    pub scope: Scope,
    /// Boundary components visible as coordinate axes: (component id, axis).
    pub boundary: Vec<(usize, Var)>,
    pub depth: usize,
}

/// Summary of one chart for reporting.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ChartRecord {
    pub id: usize,
    pub parent: Option<usize>,
    pub label: String,
    pub moduli: Vec<String>,
    pub x: String,
    pub y: String,
    pub f: String,
    pub g: String,
    pub boundary: Vec<(usize, String)>,
    pub family_size: u64,
}

#[derive(Debug, Clone)]
pub struct Resolution {
    pub charts: Vec<ChartRecord>,
    pub components: Vec<ComponentOutcome>,
    pub blowups: usize,
}

struct Driver {
    tasks: VecDeque<Chart>,
    seeds: Vec<ComponentSeed>,
    records: Vec<ChartRecord>,
    next_chart_id: usize,
    next_comp_id: usize,
    blowups: usize,
    max_blowups: usize,
}

/// Homogenize-and-substitute for the chart `x = 1/u, y = v/u`.
fn pair_chart_b(p: &MPoly) -> (MPoly, MPoly) {
    let d = p.total_degree();
    let mut num = MPoly::zero();
    for (m, c) in p.iter_terms() {
        let i = m[Var::X.index()];
        let j = m[Var::Y.index()];
        let mut mono = crate::algebra::poly::MONO_ONE;
        mono[Var::V.index()] = j;
        mono[Var::U.index()] = d - i - j;
        num.add_term(&mono, c.clone());
    }
    let k = num.ord_at_var(Var::U).min(d);
    (num.shift_down(Var::U, k), MPoly::var_pow(Var::U, d - k))
}

/// Chart `x = u/v, y = 1/v`.
fn pair_chart_c(p: &MPoly) -> (MPoly, MPoly) {
    let d = p.total_degree();
    let mut num = MPoly::zero();
    for (m, c) in p.iter_terms() {
        let i = m[Var::X.index()];
        let j = m[Var::Y.index()];
        let mut mono = crate::algebra::poly::MONO_ONE;
        mono[Var::U.index()] = i;
        mono[Var::V.index()] = d - i - j;
        num.add_term(&mono, c.clone());
    }
    let k = num.ord_at_var(Var::V).min(d);
    (num.shift_down(Var::V, k), MPoly::var_pow(Var::V, d - k))
}

enum Processed {
    Done,
    BlowUps(Vec<(Vec<Chart>, ComponentSeed)>),
}

/// Strip common powers of the chart coordinates from a map pair. The
/// denominators are coordinate monomials throughout the atlas, so after a
/// tower fork the only common factor a branch can expose is a monomial.
pub(crate) fn reduce_monomial_pair(num: &MPoly, den: &MPoly) -> (MPoly, MPoly) {
    let mut n = num.clone();
    let mut d = den.clone();
    for axis in [Var::U, Var::V] {
        if n.is_zero() || d.is_zero() {
            break;
        }
        let k = n.ord_at_var(axis).min(d.ord_at_var(axis));
        if k > 0 {
            n = n.shift_down(axis, k);
            d = d.shift_down(axis, k);
        }
    }
    (n, d)
}

impl Driver {
    fn chart_record(&self, c: &Chart) -> ChartRecord {
        ChartRecord {
            id: c.id,
            parent: c.parent,
            label: c.label.clone(),
            moduli: c.tower.moduli.iter().map(|m| m.to_string()).collect(),
            x: format!("({}) / ({})", c.x_pair.0, c.x_pair.1),
            y: format!("({}) / ({})", c.y_pair.0, c.y_pair.1),
            f: format!("({}) / ({})", c.f_num, c.f_den),
            g: format!("({}) / ({})", c.g_num, c.g_den),
            boundary: c
                .boundary
                .iter()
                .map(|(id, v)| (*id, format!("{} = 0", v.name())))
                .collect(),
            family_size: c.tower.family_size(),
        }
    }

    /// Indeterminacy positions of one coordinate pair on the axis `u = 0`,
    /// as a polynomial in `v` over the tower.
    fn axis_indet(t: &Tower, num: &MPoly, den: &MPoly) -> TRes<MPoly> {
        let a = t.nf(&num.eval(Var::U, &Q::zero()));
        let b = t.nf(&den.eval(Var::U, &Q::zero()));
        assert!(
            !(a.is_zero() && b.is_zero()),
            "whole boundary axis indeterminate: pair not reduced"
        );
        if a.is_zero() {
            return Ok(b);
        }
        if b.is_zero() {
            return Ok(a);
        }
        t.gcd_univ(&a, &b, Var::V)
    }

    fn origin_zero(t: &Tower, p: &MPoly) -> TRes<bool> {
        let e = t.nf(&p.eval(Var::U, &Q::zero()).eval(Var::V, &Q::zero()));
        if e.is_zero() {
            return Ok(true);
        }
        match t.nonzero_somewhere_in_every_branch(&[e])? {
            true => Ok(false),
            false => unreachable!(),
        }
    }

    fn process(&mut self, chart: &Chart) -> TRes<Processed> {
        match chart.scope {
            Scope::FullAxisU => {
                let t = &chart.tower;
                let hf = Self::axis_indet(t, &chart.f_num, &chart.f_den)?;
                let hg = Self::axis_indet(t, &chart.g_num, &chart.g_den)?;
                let h = t.nf(&hf.mul(&hg));
                let deg = t.uniform_degree(&h, Var::V)?.unwrap_or(0);
                if deg == 0 {
                    return Ok(Processed::Done);
                }
                let ord0 = t.uniform_ord(&h, Var::V)?;
                let mut blowups = Vec::new();
                if ord0 > 0 {
                    // center at the origin of the axis
                    blowups.push(self.blow_up(chart, MPoly::zero(), chart.tower.clone()));
                }
                let h_rest = h.shift_down(Var::V, ord0);
                if t.uniform_degree(&h_rest, Var::V)?.unwrap_or(0) > 0 {
                    let extended = t.adjoin_squarefree(&h_rest, Var::V)?;
                    let z = Var::ext(extended.levels() - 1);
                    blowups.push(self.blow_up(chart, MPoly::var(z), extended));
                }
                Ok(Processed::BlowUps(blowups))
            }
            Scope::OriginOnly => {
                let t = &chart.tower;
                let f_indet =
                    Self::origin_zero(t, &chart.f_num)? && Self::origin_zero(t, &chart.f_den)?;
                let g_indet =
                    Self::origin_zero(t, &chart.g_num)? && Self::origin_zero(t, &chart.g_den)?;
                if !(f_indet || g_indet) {
                    return Ok(Processed::Done);
                }
                Ok(Processed::BlowUps(vec![self.blow_up(
                    chart,
                    MPoly::zero(),
                    chart.tower.clone(),
                )]))
            }
        }
    }

    /// Blow up the center `(0, c)` of a chart; returns the two child
    /// charts and the seed of the new exceptional component.
    fn blow_up(
        &mut self,
        chart: &Chart,
        center_v: MPoly,
        tower: Tower,
    ) -> (Vec<Chart>, ComponentSeed) {
        let u = MPoly::var(Var::U);
        let v = MPoly::var(Var::V);
        let comp_id = self.next_comp_id;
        self.next_comp_id += 1;
        let center_is_origin = center_v.is_zero();

        // chart 1: (u, v) <- (u, c + u v); exceptional axis u = 0
        let sub1 = |p: &MPoly| tower.nf(&p.subst(Var::V, &center_v.add(&u.mul(&v))));
        // chart 2: (u, v) <- (u v, c + v); exceptional axis v = 0
        let sub2 = |p: &MPoly| {
            tower.nf(
                &p.subst(Var::V, &center_v.add(&v))
                    .subst(Var::U, &u.mul(&v)),
            )
        };

        // the only common factor of a pulled-back pair is the exceptional
        // equation; branch-dependent extras surface as splits later
        let reduce_pair = |num: &MPoly, den: &MPoly, axis: Var| -> (MPoly, MPoly) {
            let k = num.ord_at_var(axis).min(den.ord_at_var(axis));
            (num.shift_down(axis, k), den.shift_down(axis, k))
        };

        let mut children = Vec::new();
        let mut seed_data = None;
        for which in [1u8, 2u8] {
            let sub: &dyn Fn(&MPoly) -> MPoly = if which == 1 { &sub1 } else { &sub2 };
            let axis = if which == 1 { Var::U } else { Var::V };
            let (f_num, f_den) = reduce_pair(&sub(&chart.f_num), &sub(&chart.f_den), axis);
            let (g_num, g_den) = reduce_pair(&sub(&chart.g_num), &sub(&chart.g_den), axis);
            let x_pair = (sub(&chart.x_pair.0), sub(&chart.x_pair.1));
            let y_pair = (sub(&chart.y_pair.0), sub(&chart.y_pair.1));
            // inverse coordinates of the child in terms of (x, y):
            // chart1: u = u_old, v = (v_old - c)/u_old
            // chart2: v = v_old - c, u = u_old/(v_old - c)
            let (un, ud) = chart.u_inv.clone();
            let (vn, vd) = chart.v_inv.clone();
            let shifted_v = (vn.sub(&center_v.mul(&vd)), vd);
            let (u_inv, v_inv) = if which == 1 {
                (
                    (un.clone(), ud.clone()),
                    (shifted_v.0.mul(&ud), shifted_v.1.mul(&un)),
                )
            } else {
                ((un.mul(&shifted_v.1), ud.mul(&shifted_v.0)), shifted_v)
            };
            let mut boundary = vec![(comp_id, axis)];
            if which == 1 {
                if center_is_origin {
                    for (cid, ax) in &chart.boundary {
                        if *ax == Var::V {
                            boundary.push((*cid, Var::V));
                        }
                    }
                }
            } else {
                for (cid, ax) in &chart.boundary {
                    if *ax == Var::U {
                        boundary.push((*cid, Var::U));
                    }
                }
            }
            let id = self.next_chart_id;
            self.next_chart_id += 1;
            children.push(Chart {
                id,
                parent: Some(chart.id),
                label: format!("{}.{}", chart.label, which),
                tower: tower.clone(),
                f_num: f_num.clone(),
                f_den: f_den.clone(),
                g_num: g_num.clone(),
                g_den: g_den.clone(),
                x_pair,
                y_pair,
                u_inv,
                v_inv,
                scope: if which == 1 {
                    Scope::FullAxisU
                } else {
                    Scope::OriginOnly
                },
                boundary,
                depth: chart.depth + 1,
            });
            if which == 1 {
                seed_data = Some((f_num, f_den, g_num, g_den));
            }
        }
        let (f_num, f_den, g_num, g_den) = seed_data.unwrap();
        let seed = ComponentSeed {
            id: comp_id,
            label: format!("E({})", children[0].label),
            created_in: children[0].id,
            tower,
            f_num,
            f_den,
            g_num,
            g_den,
        };
        (children, seed)
    }
}

/// Resolve the indeterminacies of `(f, g)` on the projective plane and
/// compute every boundary component's germ data.
pub fn resolve(f: &MPoly, g: &MPoly, cfg: &ResolveConfig) -> Result<Resolution, ResolveError> {
    assert!(!f.is_constant() && !g.is_constant());
    let mut driver = Driver {
        tasks: VecDeque::new(),
        seeds: Vec::new(),
        records: Vec::new(),
        next_chart_id: 0,
        next_comp_id: 0,
        blowups: 0,
        max_blowups: cfg.max_blowups,
    };

    let (fb_n, fb_d) = pair_chart_b(f);
    let (gb_n, gb_d) = pair_chart_b(g);
    let (fc_n, fc_d) = pair_chart_c(f);
    let (gc_n, gc_d) = pair_chart_c(g);
    let linf_id = driver.next_comp_id;
    driver.next_comp_id += 1;
    let chart_b = Chart {
        id: 0,
        parent: None,
        label: "B".into(),
        tower: Tower::empty(),
        f_num: fb_n.clone(),
        f_den: fb_d.clone(),
        g_num: gb_n.clone(),
        g_den: gb_d.clone(),
        x_pair: (MPoly::one(), MPoly::var(Var::U)),
        y_pair: (MPoly::var(Var::V), MPoly::var(Var::U)),
        u_inv: (MPoly::one(), MPoly::var(Var::X)),
        v_inv: (MPoly::var(Var::Y), MPoly::var(Var::X)),
        scope: Scope::FullAxisU,
        boundary: vec![(linf_id, Var::U)],
        depth: 0,
    };
    let chart_c = Chart {
        id: 1,
        parent: None,
        label: "C".into(),
        tower: Tower::empty(),
        f_num: fc_n,
        f_den: fc_d,
        g_num: gc_n,
        g_den: gc_d,
        x_pair: (MPoly::var(Var::U), MPoly::var(Var::V)),
        y_pair: (MPoly::one(), MPoly::var(Var::V)),
        u_inv: (MPoly::var(Var::X), MPoly::var(Var::Y)),
        v_inv: (MPoly::one(), MPoly::var(Var::Y)),
        scope: Scope::OriginOnly,
        boundary: vec![(linf_id, Var::V)],
        depth: 0,
    };
    driver.next_chart_id = 2;
    driver.seeds.push(ComponentSeed {
        id: linf_id,
        label: "Linf".into(),
        created_in: 0,
        tower: Tower::empty(),
        f_num: fb_n,
        f_den: fb_d,
        g_num: gb_n,
        g_den: gb_d,
    });

    // optional extra blow-ups at non-indeterminate rational centers
    let mut initial = vec![chart_b, chart_c];
    for v0 in &cfg.extra_initial_blowups {
        let base = initial[0].clone();
        let (children, seed) = driver.blow_up(&base, MPoly::constant(v0.clone()), Tower::empty());
        driver.blowups += 1;
        driver.seeds.push(seed);
        initial.extend(children);
    }
    driver.tasks.extend(initial);

    while let Some(chart) = driver.tasks.pop_front() {
        match driver.process(&chart) {
            Ok(Processed::Done) => {
                let rec = driver.chart_record(&chart);
                driver.records.push(rec);
            }
            Ok(Processed::BlowUps(blowups)) => {
                driver.blowups += blowups.len();
                if driver.blowups > driver.max_blowups {
                    return Err(ResolveError::DepthExceeded(driver.max_blowups));
                }
                let rec = driver.chart_record(&chart);
                driver.records.push(rec);
                for (children, seed) in blowups {
                    driver.seeds.push(seed);
                    driver.tasks.extend(children);
                }
            }
            Err(split) => {
                // fork the chart family along the split and redo both
                let (ta, tb) = chart.tower.fork(&split);
                for t in [ta, tb] {
                    let mut c = chart.clone();
                    let (fnum, fden) = reduce_monomial_pair(&t.nf(&c.f_num), &t.nf(&c.f_den));
                    let (gnum, gden) = reduce_monomial_pair(&t.nf(&c.g_num), &t.nf(&c.g_den));
                    c.f_num = fnum;
                    c.f_den = fden;
                    c.g_num = gnum;
                    c.g_den = gden;
                    c.label = format!("{}'", c.label);
                    c.tower = t;
                    driver.tasks.push_back(c);
                }
            }
        }
    }

    // process every boundary component, forking on splits
    let mut outcomes = Vec::new();
    for seed in &driver.seeds {
        outcomes.extend(germs::run_component(seed).map_err(ResolveError::Internal)?);
    }
    let mut records = driver.records;
    records.sort_by_key(|r| r.id);
    Ok(Resolution {
        charts: records,
        components: outcomes,
        blowups: driver.blowups,
    })
}

/// Breakdown of the irregularity at the place infinity.
#[derive(Debug, Clone)]
pub struct InfinityBreakdown {
    pub delta1_affine: u64,
    pub delta1_boundary: u64,
    pub delta2: u64,
    pub ir: i64,
    pub resolution: Resolution,
}

/// `IR_inf` of an independent pair: the affine discriminant germ at
/// `(inf, inf)` plus the boundary-critical and boundary-image germs.
pub fn irregularity_at_infinity(
    f: &MPoly,
    g: &MPoly,
    pushforward: &MPoly,
    cfg: &ResolveConfig,
) -> Result<InfinityBreakdown, ResolveError> {
    let resolution = resolve(f, g, cfg)?;
    let delta1_affine =
        germ_at_infinity(&crate::discriminant::primitive_part_t(pushforward), 1) as u64;
    let mut delta1_boundary = 0u64;
    let mut delta2 = 0u64;
    for c in &resolution.components {
        delta1_boundary += c.family_size * c.crit_mult as u64 * c.germ_infinity as u64;
        delta2 += c.family_size * c.germ_infinity as u64;
    }
    let ir = (delta1_affine + delta1_boundary + delta2) as i64;
    Ok(InfinityBreakdown {
        delta1_affine,
        delta1_boundary,
        delta2,
        ir,
        resolution,
    })
}
