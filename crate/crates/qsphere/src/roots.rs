//! All complex roots of a dense univariate polynomial via the
//! Aberth-Ehrlich simultaneous iteration, plus multiplicity recovery.
//!
//! Degrees in this crate stay small (at most ~16), so a fixed iteration
//! budget with a tight convergence test is plenty. For polynomials with
//! exact coefficients, multiplicities come from an exact square-free
//! decomposition so the iteration only ever sees simple roots; clustering
//! with a relative tolerance is the fallback for float-only input.

use crate::poly::{Coeff, ToC64, UniPoly};
use crate::C64;

/// Two roots closer than this relative distance are treated as one multiple
/// root when clustering.
pub const CLUSTER_REL_TOL: f64 = 1e-7;

/// Roots of `sum_k coeffs[k] t^k`. Leading zeros are trimmed; the zero and
/// constant polynomials have no roots. Exact roots at the origin should be
/// stripped by the caller beforehand (their multiplicity is exact there).
pub fn complex_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut c = coeffs.to_vec();
    while c.last().map(|v| v.norm() == 0.0).unwrap_or(false) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let degree = c.len() - 1;
    let lead = c[degree];
    for v in c.iter_mut() {
        *v /= lead;
    }
    let deriv: Vec<C64> = (1..=degree).map(|k| c[k] * k as f64).collect();

    // Cauchy-style bound on root magnitude, spread guesses on that circle.
    let radius = 1.0 + c[..degree].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            radius * 0.8 * C64::new(angle.cos(), angle.sin())
        })
        .collect();

    let eval = |cs: &[C64], t: C64| {
        let mut acc = C64::new(0.0, 0.0);
        for v in cs.iter().rev() {
            acc = acc * t + v;
        }
        acc
    };

    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let p = eval(&c, z[i]);
            let dp = eval(&deriv, z[i]);
            let w = if dp.norm() > 0.0 { p / dp } else { p };
            let mut s = C64::new(0.0, 0.0);
            for j in 0..degree {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += C64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() > 1e-300 { w / denom } else { w };
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

/// Group nearly equal roots into `(representative, multiplicity)` pairs using
/// the relative-distance rule. The representative is the cluster mean, with
/// near-real and conjugate-symmetric clusters snapped onto the real axis.
pub fn cluster_roots(roots: &[C64], rel_tol: f64) -> Vec<(C64, u32)> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![roots[i]];
        // grow the cluster transitively
        let mut grew = true;
        while grew {
            grew = false;
            for (j, r) in roots.iter().enumerate() {
                if used[j] {
                    continue;
                }
                let near = members
                    .iter()
                    .any(|m| (m - r).norm() <= rel_tol * (1.0 + m.norm().max(r.norm())));
                if near {
                    used[j] = true;
                    members.push(*r);
                    grew = true;
                }
            }
        }
        let mut mean = members.iter().sum::<C64>() / members.len() as f64;
        if mean.im.abs() <= rel_tol * (1.0 + mean.norm()) {
            mean.im = 0.0;
        }
        out.push((mean, members.len() as u32));
    }
    out.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

/// Roots with exact multiplicities for a polynomial with exact (rational or
/// Gaussian-rational) coefficients. The root at the origin is read off the
/// trailing zero coefficients; every other multiplicity comes from Yun's
/// square-free decomposition, so the numeric iteration only handles simple
/// roots. Returns an empty list for the zero polynomial.
pub fn exact_root_multiplicities<C: Coeff + ToC64>(p: &UniPoly<C>) -> Vec<(C64, u32)> {
    let mut out = Vec::new();
    let Some(origin_mult) = p.order_at_zero() else {
        return out;
    };
    if origin_mult > 0 {
        out.push((C64::new(0.0, 0.0), origin_mult as u32));
    }
    let rest = p.shift_down(origin_mult);
    for (factor, mult) in rest.square_free_decomposition() {
        let roots = complex_roots(&factor.to_c64_coeffs());
        for (root, k) in cluster_roots(&roots, CLUSTER_REL_TOL) {
            out.push((root, k * mult));
        }
    }
    out.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}
