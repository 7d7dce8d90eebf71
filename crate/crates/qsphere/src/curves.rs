//! Entirely circular plane curves `(x^2+y^2)^n + f_n(x,y) = 0`: exact
//! construction, circularity via divisibility by `x1^2 + x2^2`, polar
//! sampling of the normalized family `rho = sin(n phi)^(1/n)`, and polyline
//! generation for plotting.

use serde_json::{json, Value};
use thiserror::Error;

use crate::analysis::divisibility_multiplicity;
use crate::poly::{HomogeneousForm, PolyError, UniPoly};
use crate::roots::{cluster_roots, complex_roots, CLUSTER_REL_TOL};
use crate::surfaces::harmonic_sin;
use crate::{QForm, QPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("curve index n must be at least {0}")]
    IndexTooSmall(u32),
    #[error("the line form f_n is zero")]
    ZeroForm,
    #[error("form f_n must be binary (arity 2) of degree n, got degree {got}")]
    WrongDegree { got: u32 },
    #[error("x^2 + y^2 divides f_n; the curve would gain circularity or split")]
    DivisibleByPlanarA2,
    #[error("curve polynomial must be a nonzero homogeneous ternary form")]
    BadCurvePolynomial,
    #[error("malformed curve JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A projective plane curve in the variables `(x0, x1, x2)` with its order
/// and computed (never asserted) circularity.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCurve {
    poly: QPoly,
    order: u32,
    circularity: u32,
}

impl PlaneCurve {
    pub fn new(poly: QPoly) -> Result<Self, CurveError> {
        if poly.arity() != 3 || poly.is_zero() || !poly.is_homogeneous() {
            return Err(CurveError::BadCurvePolynomial);
        }
        let order = poly.total_degree().expect("nonzero");
        let decomp = poly.decompose_by_x0(order)?;
        let circularity = divisibility_multiplicity(&decomp, &QPoly::a2_planar());
        Ok(PlaneCurve { poly, order, circularity })
    }

    /// Homogenize an affine curve `f(x, y) = 0` of the given order.
    pub fn from_affine(affine: &QPoly, order: u32) -> Result<Self, CurveError> {
        Self::new(affine.homogenize(order)?)
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn circularity(&self) -> u32 {
        self.circularity
    }

    pub fn is_entirely_circular(&self) -> bool {
        self.order == 2 * self.circularity
    }

    /// The affine equation in the chart `x0 = 1`, variables `(x, y)`.
    pub fn affine(&self) -> QPoly {
        self.poly.dehomogenize().expect("arity 3")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "circularity": self.circularity,
            "poly": self.poly.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, CurveError> {
        let bad = |m: &str| CurveError::Json(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let poly = QPoly::from_json(obj.get("poly").ok_or_else(|| bad("missing 'poly'"))?)?;
        let curve = PlaneCurve::new(poly)?;
        if let Some(n) = obj.get("order").and_then(Value::as_u64) {
            if n as u32 != curve.order {
                return Err(bad("'order' does not match the polynomial degree"));
            }
        }
        Ok(curve)
    }
}

/// Plot-ready polyline, one branch (petal) per value.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarPolyline {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
    pub branch: u32,
}

/// The curve `(x^2 + y^2)^n + f_n(x, y) = 0` with an n-fold point at the
/// origin; entirely circular of order `2n`.
pub fn circular_curve(n: u32, f_n: &QForm) -> Result<PlaneCurve, CurveError> {
    if n < 1 {
        return Err(CurveError::IndexTooSmall(1));
    }
    if f_n.arity() != 2 || f_n.degree() != n {
        return Err(CurveError::WrongDegree { got: f_n.degree() });
    }
    if f_n.is_zero() {
        return Err(CurveError::ZeroForm);
    }
    if f_n
        .poly()
        .divide_exact(&QPoly::a2_planar())
        .expect("nonzero divisor")
        .is_some()
    {
        return Err(CurveError::DivisibleByPlanarA2);
    }
    let affine = &QPoly::a2_planar().pow(n) + f_n.poly();
    PlaneCurve::from_affine(&affine, 2 * n)
}

/// Circularity of a plane curve: the planar analogue of the absolute-conic
/// multiplicity, by repeated exact division of the `x0`-decomposition forms
/// by `x1^2 + x2^2`.
pub fn plane_circularity(curve: &PlaneCurve) -> u32 {
    let decomp = curve
        .poly
        .decompose_by_x0(curve.order)
        .expect("curve polynomial is homogeneous");
    divisibility_multiplicity(&decomp, &QPoly::a2_planar())
}

/// The normalized polar-family curve `(x^2 + y^2)^n = S_n(x, y)`, the
/// Cartesian form of `rho = sin(n phi)^(1/n)`. The equiangular product
/// differs from `-S_n` only by the documented scalar `2^(1-n)` and a sign,
/// so this representative carries the same petal geometry at unit scale.
pub fn polar_curve(n: u32) -> Result<PlaneCurve, CurveError> {
    if n < 2 {
        return Err(CurveError::IndexTooSmall(2));
    }
    let s_n = harmonic_sin(n).expect("n >= 2");
    let f = HomogeneousForm::new(s_n.poly().neg_ref(), n)?;
    circular_curve(n, &f)
}

/// One polar sample of the normalized curve, or `None` where the branch
/// convention emits no point (even `n` with `sin(n phi) < 0`).
pub fn polar_point(n: u32, phi: f64) -> Option<[f64; 2]> {
    let w = (n as f64 * phi).sin();
    let rho = if n % 2 == 1 {
        // odd real root, sign preserved
        w.signum() * w.abs().powf(1.0 / n as f64)
    } else {
        if w < 0.0 {
            return None;
        }
        w.powf(1.0 / n as f64)
    };
    Some([rho * phi.cos(), rho * phi.sin()])
}

/// Sample the normalized polar family over an ascending angle grid. Branches
/// split at the petal boundaries `sin(n phi) = 0` so every polyline stays
/// injective; for even `n` the angles with `sin(n phi) < 0` emit nothing.
pub fn polar_sample(n: u32, phis: &[f64]) -> Result<Vec<PlanarPolyline>, CurveError> {
    if n < 2 {
        return Err(CurveError::IndexTooSmall(2));
    }
    let mut out: Vec<PlanarPolyline> = Vec::new();
    let mut current: Option<(u32, Vec<[f64; 2]>)> = None;
    let flush = |cur: &mut Option<(u32, Vec<[f64; 2]>)>, out: &mut Vec<PlanarPolyline>| {
        if let Some((branch, points)) = cur.take() {
            out.push(PlanarPolyline { points, closed: false, branch });
        }
    };
    for &phi in phis {
        let petal = (n as f64 * phi / std::f64::consts::PI).floor() as i64;
        let petal = petal.rem_euclid(2 * n as i64) as u32;
        match polar_point(n, phi) {
            None => flush(&mut current, &mut out),
            Some(pt) => match &mut current {
                Some((branch, points)) if *branch == petal => points.push(pt),
                _ => {
                    flush(&mut current, &mut out);
                    current = Some((petal, vec![pt]));
                }
            },
        }
    }
    flush(&mut current, &mut out);
    out.retain(|p| p.points.len() >= 2);
    Ok(out)
}

/// Uniform per-petal sampling of the petals that carry the curve once
/// (`sin(n phi) >= 0`), endpoints at the origin included.
pub fn polar_sample_uniform(n: u32, samples_per_petal: usize) -> Result<Vec<PlanarPolyline>, CurveError> {
    if n < 2 {
        return Err(CurveError::IndexTooSmall(2));
    }
    let samples = samples_per_petal.max(2);
    let mut out = Vec::new();
    for k in (0..2 * n).step_by(2) {
        let lo = k as f64 * std::f64::consts::PI / n as f64;
        let hi = (k + 1) as f64 * std::f64::consts::PI / n as f64;
        let mut points = Vec::with_capacity(samples);
        for i in 0..samples {
            let phi = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
            // sin(n phi) vanishes exactly at the petal boundary; snap the
            // float fuzz so the petal closes at the origin
            let w = if i == 0 || i == samples - 1 {
                0.0
            } else {
                (n as f64 * phi).sin().max(0.0)
            };
            let rho = w.powf(1.0 / n as f64);
            points.push([rho * phi.cos(), rho * phi.sin()]);
        }
        out.push(PlanarPolyline { points, closed: false, branch: k / 2 });
    }
    Ok(out)
}

/// Count the real intersections of the full line through the origin at angle
/// `phi` with the curve, origin excluded: distinct real roots of the
/// restricted univariate polynomial after the origin factor is stripped.
pub fn real_ray_intersections(curve: &PlaneCurve, phi: f64) -> u32 {
    let affine = curve.affine().to_f64();
    let args = [
        UniPoly::from_coeffs(vec![0.0, phi.cos()]),
        UniPoly::from_coeffs(vec![0.0, phi.sin()]),
    ];
    let restricted = affine.compose_uni(&args).expect("two substitution arguments");
    let coeffs: Vec<f64> = restricted.coeffs().to_vec();
    if coeffs.is_empty() {
        return 0;
    }
    let max_mag = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let origin_mult = coeffs
        .iter()
        .position(|c| c.abs() > 1e-12 * max_mag)
        .unwrap_or(coeffs.len());
    let reduced: Vec<crate::C64> = coeffs[origin_mult..]
        .iter()
        .map(|c| crate::C64::new(*c, 0.0))
        .collect();
    let roots = complex_roots(&reduced);
    cluster_roots(&roots, CLUSTER_REL_TOL)
        .into_iter()
        .filter(|(r, _)| r.im == 0.0 && r.re.abs() > 1e-9)
        .count() as u32
}
