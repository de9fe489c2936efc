//! Complex polynomial roots by the Aberth-Ehrlich iteration with
//! deterministic initialization.

use num_complex::Complex64 as C;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("root iteration did not converge")]
pub struct NonConvergence;

const MAX_ITER: usize = 400;

/// All roots of `p` given by ascending coefficients. Roots at zero are
/// deflated exactly; the rest come from simultaneous iteration. The result
/// reproduces `p` up to a relative backward error of 1e-8.
pub fn roots(coeffs: &[C]) -> Result<Vec<C>, NonConvergence> {
    let mut c: Vec<C> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    // scale coefficients to unit max magnitude
    let scale = c.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    for z in c.iter_mut() {
        *z /= scale;
    }
    let mut zero_roots = 0;
    while c[0].norm() < f64::EPSILON * 16.0 {
        c.remove(0);
        zero_roots += 1;
        if c.len() <= 1 {
            break;
        }
    }
    let n = c.len() - 1;
    let mut out = vec![C::new(0.0, 0.0); zero_roots];
    if n == 0 {
        return Ok(out);
    }
    // derivative
    let dc: Vec<C> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, z)| z * i as f64)
        .collect();
    // Cauchy-style radius and staggered angles
    let lc = c[n].norm();
    let radius = 1.0
        + c[..n]
            .iter()
            .map(|z| (z.norm() / lc).powf(1.0 / n as f64))
            .fold(0.0f64, f64::max);
    let mut z: Vec<C> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.41;
            C::from_polar(radius * (0.5 + 0.5 * ((k % 3) as f64 + 1.0) / 3.0), angle)
        })
        .collect();
    let eval = |cs: &[C], x: C| -> C {
        let mut acc = C::new(0.0, 0.0);
        for k in cs.iter().rev() {
            acc = acc * x + k;
        }
        acc
    };
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pz = eval(&c, z[i]);
            let dpz = eval(&dc, z[i]);
            let newton = if dpz.norm() > 1e-300 {
                pz / dpz
            } else {
                pz * 1e6
            };
            let mut sum = C::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 1e-300 {
                        sum += C::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = C::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm() > 1e-12 {
                newton / denom
            } else {
                newton
            };
            z[i] -= step;
            let rel = step.norm() / (1.0 + z[i].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(NonConvergence);
    }
    // backward-error check
    let norm1: f64 = c.iter().map(|v| v.norm()).sum();
    for zi in &z {
        let m = zi.norm().max(1.0).powi(n as i32);
        if eval(&c, *zi).norm() > 1e-8 * norm1 * m {
            return Err(NonConvergence);
        }
    }
    out.extend(z);
    Ok(out)
}

/// Greedy clustering of complex values with a relative tolerance; returns
/// (center, count) pairs and the worst intra/inter separation ratio
/// (bigger is better-conditioned).
pub fn cluster(values: &[C], rel_tol: f64) -> (Vec<(C, u32)>, f64) {
    let mut clusters: Vec<Vec<C>> = Vec::new();
    for &v in values {
        let mut placed = false;
        for cl in clusters.iter_mut() {
            let center: C = cl.iter().sum::<C>() / cl.len() as f64;
            if (v - center).norm() <= rel_tol * (1.0 + center.norm().max(v.norm())) {
                cl.push(v);
                placed = true;
                break;
            }
        }
        if !placed {
            clusters.push(vec![v]);
        }
    }
    let centers: Vec<(C, u32)> = clusters
        .iter()
        .map(|cl| {
            (
                cl.iter().sum::<C>() / cl.len() as f64,
                cl.len() as u32,
            )
        })
        .collect();
    let mut max_intra = 0.0f64;
    for (cl, (center, _)) in clusters.iter().zip(&centers) {
        for v in cl {
            max_intra = max_intra.max((v - center).norm());
        }
    }
    let mut min_inter = f64::INFINITY;
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            min_inter = min_inter.min((centers[i].0 - centers[j].0).norm());
        }
    }
    let ratio = if max_intra == 0.0 {
        f64::INFINITY
    } else {
        min_inter / max_intra
    };
    (centers, ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn simple_roots() {
        // s^2 + 1 -> {i, -i}
        let mut r = roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        r.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-9);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-9);
        // 4s + 1 -> {-1/4}
        let r = roots(&[c(1.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert!((r[0] - c(-0.25, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn clustered_triple_root() {
        // (s-1)^3 = s^3 - 3s^2 + 3s - 1
        let r = roots(&[c(-1.0, 0.0), c(3.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]).unwrap();
        let (clusters, _) = cluster(&r, 1e-3);
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].1, 3);
        assert!((clusters[0].0 - c(1.0, 0.0)).norm() < 1e-4);
    }

    #[test]
    fn zero_deflation() {
        // s^2 (s - 2)
        let r = roots(&[c(0.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(r.len(), 3);
        let zeros = r.iter().filter(|z| z.norm() < 1e-12).count();
        assert_eq!(zeros, 2);
    }
}
