//! Verification of the multiplicity structure a constructed surface claims:
//! point multiplicities and tangent cones, the multiplicity of the absolute
//! conic, the lines through an n-fold point, the circles cut out by axial
//! planes, and the partition bookkeeping for tangent-cone splitting types.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{
    rat_to_f64, HomogeneousForm, MultiPoly, Multiplicity, PolyError, UniPoly, X0Decomposition,
};
use crate::roots::exact_root_multiplicities;
use crate::surfaces::{Provenance, Surface};
use crate::{C64, CRat, QForm, QPoly, QUniPoly, Rat};

/// Projective point with rational coordinates, not all zero.
pub type ProjPoint = [Rat; 4];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("projective point must have a nonzero coordinate")]
    ZeroProjectivePoint,
    #[error("point does not lie on the surface")]
    PointNotOnSurface,
    #[error("direction vector must be nonzero")]
    ZeroDirection,
    #[error("surface is not of the one-point family A2^n + f_n")]
    NotOnePointFamily,
    #[error("operation requires a surface from the two-point family")]
    NotTwoPointFamily,
    #[error("operation requires an entirely spherical surface (order = 2q)")]
    NotEntirelySpherical,
    #[error("the cone form shares a component with the isotropic cone")]
    ConeSharesIsotropicComponent,
    #[error("computed line directions are not closed under conjugation")]
    ConjugatePairingBroken,
    #[error("axial section does not factor into the expected circles (residual {residual:e})")]
    SectionMismatch { residual: f64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Multiplicity of a surface point together with its tangent cone, expressed
/// in the affine chart that was used (`chart` = index of the coordinate
/// normalized to 1; the cone variables are the remaining coordinates in
/// order).
#[derive(Debug, Clone)]
pub struct MultiplicityReport {
    pub point: ProjPoint,
    pub chart: usize,
    pub multiplicity: u32,
    pub tangent_cone: QForm,
}

/// Multiplicity of a point of the surface: translate the point to the origin
/// of an affine chart and take the lowest-degree nonzero homogeneous part.
/// Points at infinity are handled by chart swap, which is what lets the
/// absolute conic itself be audited.
pub fn point_multiplicity(surface: &Surface, point: &ProjPoint) -> Result<MultiplicityReport, AnalysisError> {
    let chart = point
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(AnalysisError::ZeroProjectivePoint)?;
    let scale = &point[chart];
    let affine_coords: Vec<Rat> = (0..4)
        .filter(|&i| i != chart)
        .map(|i| &point[i] / scale)
        .collect();
    let translated = surface
        .poly()
        .dehomogenize_at(chart)?
        .translate(&affine_coords)?;
    if translated.coefficient(&[0, 0, 0, 0]).is_some() {
        return Err(AnalysisError::PointNotOnSurface);
    }
    let (multiplicity, cone) = translated
        .lowest_part()
        .expect("a nonzero homogeneous surface polynomial cannot vanish on a whole chart");
    Ok(MultiplicityReport {
        point: point.clone(),
        chart,
        multiplicity,
        tangent_cone: HomogeneousForm::new(cone, multiplicity)?,
    })
}

/// Shared divisibility walk: the largest `q` such that `divisor^(q-j)`
/// divides the coefficient form of `x0^j` for every `j < q`. Zero forms are
/// vacuously divisible.
pub(crate) fn divisibility_multiplicity(decomp: &X0Decomposition<Rat>, divisor: &QPoly) -> u32 {
    let n = decomp.order();
    let mults: Vec<Multiplicity> = decomp
        .parts()
        .map(|(_, f)| f.poly().max_power_dividing(divisor).expect("nonzero divisor"))
        .collect();
    let mut q = 0u32;
    'outer: for candidate in 1..=n {
        for j in 0..candidate {
            if !mults[j as usize].at_least(candidate - j) {
                break 'outer;
            }
        }
        q = candidate;
    }
    q
}

/// Multiplicity of the absolute conic on the surface, by repeated exact
/// division of the decomposition forms by `A2`. Zero means the surface
/// misses the conic.
pub fn absolute_multiplicity(surface: &Surface) -> u32 {
    let decomp = surface
        .poly()
        .decompose_by_x0(surface.order())
        .expect("surface polynomial is homogeneous by construction");
    divisibility_multiplicity(&decomp, &QPoly::a2_affine())
}

/// Does the surface contain the absolute conic at least `q` times?
pub fn is_q_spherical(surface: &Surface, q: u32) -> bool {
    absolute_multiplicity(surface) >= q
}

/// Entirely spherical: the order is twice the absolute multiplicity, the
/// largest value the order admits before the surface is forced to split.
pub fn is_entirely_spherical(surface: &Surface) -> bool {
    surface.order() == 2 * absolute_multiplicity(surface)
}

/// Restriction of the surface to the parametrized line `P + t d`.
#[derive(Debug, Clone)]
pub enum LineIntersection {
    /// The substitution vanished identically: the line lies on the surface.
    OnSurface,
    Transversal {
        poly: QUniPoly,
        /// Roots with multiplicities; the root at `t = 0` (when present) is
        /// exact, the others are numeric with exact multiplicities.
        roots: Vec<(C64, u32)>,
    },
}

pub fn line_intersection_polynomial(
    surface: &Surface,
    point: &[Rat; 3],
    direction: &[Rat; 3],
) -> Result<LineIntersection, AnalysisError> {
    if direction.iter().all(|d| d.is_zero()) {
        return Err(AnalysisError::ZeroDirection);
    }
    let args: Vec<QUniPoly> = (0..3)
        .map(|i| UniPoly::from_coeffs(vec![point[i].clone(), direction[i].clone()]))
        .collect();
    let restricted = surface.affine().compose_uni(&args)?;
    if restricted.is_zero() {
        return Ok(LineIntersection::OnSurface);
    }
    let roots = exact_root_multiplicities(&restricted);
    Ok(LineIntersection::Transversal { poly: restricted, roots })
}

/// One projective line direction through the singular point, with the
/// residuals of the two cone equations it must satisfy.
#[derive(Debug, Clone)]
pub struct LineDirection {
    /// Normalized so the first component of nonnegligible modulus equals 1.
    pub direction: [C64; 3],
    pub multiplicity: u32,
    pub residual_isotropic: f64,
    pub residual_cone: f64,
}

/// The lines through the n-fold point of a one-point surface: common
/// directions of the isotropic cone and the tangent cone.
#[derive(Debug, Clone)]
pub struct LineFan {
    pub directions: Vec<LineDirection>,
    /// Total count with multiplicity; equals `2n` by Bezout.
    pub count: u32,
}

impl LineFan {
    pub fn max_residual(&self) -> f64 {
        self.directions
            .iter()
            .map(|d| d.residual_isotropic.max(d.residual_cone))
            .fold(0.0, f64::max)
    }
}

/// Solve `A2(d) = 0, f_n(d) = 0` by parametrizing the isotropic conic with
/// the rational sweep `s -> (1 - s^2, i (1 + s^2), 2 s)` over the Gaussian
/// rationals and rooting the induced polynomial of degree `2n`. The sweep
/// misses the single point `(1, -i, 0)`, which is accounted for exactly by
/// the degree drop; `(1, i, 0)` is the parameter `s = 0`, so its multiplicity
/// is exact as well. Directions are checked to come in conjugate pairs.
pub fn lines_through_origin(surface: &Surface) -> Result<LineFan, AnalysisError> {
    let cone = one_point_cone(surface)?;
    let n = cone.degree();
    if cone
        .poly()
        .divide_exact(&QPoly::a2_affine())
        .expect("nonzero divisor")
        .is_some()
    {
        return Err(AnalysisError::ConeSharesIsotropicComponent);
    }

    let i = CRat::new(Rat::zero(), Rat::one());
    let one = CRat::one();
    let two = CRat::new(Rat::from_integer(2.into()), Rat::zero());
    // (1 - s^2, i (1 + s^2), 2 s)
    let sweep = [
        UniPoly::from_coeffs(vec![one.clone(), CRat::zero(), -one.clone()]),
        UniPoly::from_coeffs(vec![i.clone(), CRat::zero(), i]),
        UniPoly::from_coeffs(vec![CRat::zero(), two]),
    ];
    let restricted = cone
        .poly()
        .map_coeff(|c| CRat::new(c.clone(), Rat::zero()))
        .compose_uni(&sweep)?;
    if restricted.is_zero() {
        return Err(AnalysisError::ConeSharesIsotropicComponent);
    }
    let degree = restricted.degree().unwrap_or(0) as u32;
    let drop = 2 * n - degree;

    let cone_f = cone.poly().to_f64();
    let a2_f = QPoly::a2_affine().to_f64();
    let mut directions = Vec::new();
    let mut push = |raw: [C64; 3], multiplicity: u32| {
        let max_norm = raw.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let lead = raw
            .iter()
            .find(|c| c.norm() > 1e-9 * max_norm)
            .copied()
            .unwrap_or(C64::new(1.0, 0.0));
        let dir = [raw[0] / lead, raw[1] / lead, raw[2] / lead];
        directions.push(LineDirection {
            direction: dir,
            multiplicity,
            residual_isotropic: a2_f.eval_c64(&dir).norm(),
            residual_cone: cone_f.eval_c64(&dir).norm(),
        });
    };
    for (s, mult) in exact_root_multiplicities(&restricted) {
        let s2 = s * s;
        push(
            [
                C64::new(1.0, 0.0) - s2,
                C64::new(0.0, 1.0) * (C64::new(1.0, 0.0) + s2),
                2.0 * s,
            ],
            mult,
        );
    }
    if drop > 0 {
        push([C64::new(1.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 0.0)], drop);
    }

    // conjugate pairing with multiplicity
    for d in &directions {
        let conj = [d.direction[0].conj(), d.direction[1].conj(), d.direction[2].conj()];
        let found = directions.iter().any(|e| {
            e.multiplicity == d.multiplicity
                && e.direction
                    .iter()
                    .zip(conj.iter())
                    .all(|(a, b)| (a - b).norm() < 1e-6 * (1.0 + a.norm()))
        });
        if !found {
            return Err(AnalysisError::ConjugatePairingBroken);
        }
    }

    let count = directions.iter().map(|d| d.multiplicity).sum();
    debug_assert_eq!(count, 2 * n);
    Ok(LineFan { directions, count })
}

/// Extract `f_n` from a surface of the shape `A2^n + f_n` and verify the
/// shape.
fn one_point_cone(surface: &Surface) -> Result<QForm, AnalysisError> {
    let affine = surface.affine();
    let (degree, lowest) = affine.lowest_part().ok_or(AnalysisError::NotOnePointFamily)?;
    let residual = &affine - &lowest;
    if residual != QPoly::a2_affine().pow(degree) {
        return Err(AnalysisError::NotOnePointFamily);
    }
    Ok(HomogeneousForm::new(lowest, degree)?)
}

/// One circle of an axial plane section, in the section coordinates
/// `(rho, z)`. Complex center/radius data encodes the imaginary circles.
#[derive(Debug, Clone)]
pub struct SectionCircle {
    pub center_rho: C64,
    pub center_z: f64,
    pub radius_sq: C64,
    pub is_real: bool,
}

/// The `n` circles cut out of a two-point surface by the plane through the
/// z-axis at angle `phi`.
#[derive(Debug, Clone)]
pub struct CircleSection {
    pub phi: f64,
    pub sin_n_phi: f64,
    pub circles: Vec<SectionCircle>,
    pub real_count: u32,
    /// `sin(n phi) = 0`: all circles coincide with the point-pair circle
    /// through the two singular points.
    pub degenerate: bool,
    /// Max coefficient deviation between the section polynomial and the
    /// product of the circle quadratics.
    pub residual: f64,
}

/// Section of a two-point surface by the axial plane at angle `phi`. The
/// section polynomial `(rho^2 + z^2 - p z)^n - rho^n sin(n phi)` splits into
/// the quadratics `rho^2 - c rho + z^2 - p z` with `c` running over the
/// complex n-th roots of `sin(n phi)`; the factorization is verified
/// coefficientwise against the actual restriction of the surface.
pub fn axial_section(surface: &Surface, phi: f64) -> Result<CircleSection, AnalysisError> {
    let Provenance::TwoPoint { p } = surface.provenance() else {
        return Err(AnalysisError::NotTwoPointFamily);
    };
    let n = surface.order() / 2;
    let p_f = rat_to_f64(p);
    let w = (n as f64 * phi).sin();

    // n-th roots of w, with the real ones forced exactly real
    let mut cs: Vec<C64> = Vec::with_capacity(n as usize);
    if w == 0.0 {
        cs.resize(n as usize, C64::new(0.0, 0.0));
    } else {
        let r = w.abs().powf(1.0 / n as f64);
        for k in 0..n {
            let base = if w > 0.0 { 0.0 } else { std::f64::consts::PI };
            let theta = (base + 2.0 * std::f64::consts::PI * k as f64) / n as f64;
            let real_positive = w > 0.0 && k == 0;
            let real_negative_even = w > 0.0 && n % 2 == 0 && k == n / 2;
            let real_negative_odd = w < 0.0 && n % 2 == 1 && k == (n - 1) / 2;
            let c = if real_positive {
                C64::new(r, 0.0)
            } else if real_negative_even || real_negative_odd {
                C64::new(-r, 0.0)
            } else {
                C64::new(r * theta.cos(), r * theta.sin())
            };
            cs.push(c);
        }
    }

    let circles: Vec<SectionCircle> = cs
        .iter()
        .map(|c| SectionCircle {
            center_rho: c / 2.0,
            center_z: p_f / 2.0,
            radius_sq: c * c / 4.0 + C64::new(p_f * p_f / 4.0, 0.0),
            is_real: c.im == 0.0,
        })
        .collect();
    let real_count = circles.iter().filter(|c| c.is_real).count() as u32;

    // restriction of the surface to the section plane, in (rho, z)
    let rho = MultiPoly::<f64>::var(2, 0);
    let z = MultiPoly::<f64>::var(2, 1);
    let section = surface
        .affine()
        .to_f64()
        .compose(&[rho.scale(&phi.cos()), rho.scale(&phi.sin()), z])?;
    // product of the circle quadratics over complex coefficients
    let mut product = MultiPoly::<C64>::one(2);
    for c in &cs {
        let mut quad = MultiPoly::<C64>::zero(2);
        quad.add_term([2, 0, 0, 0], C64::new(1.0, 0.0));
        quad.add_term([1, 0, 0, 0], -c);
        quad.add_term([0, 2, 0, 0], C64::new(1.0, 0.0));
        quad.add_term([0, 1, 0, 0], C64::new(-p_f, 0.0));
        product = product.try_mul(&quad)?;
    }
    let mut residual = 0.0f64;
    let keys: std::collections::BTreeSet<[u16; 4]> = section
        .terms()
        .map(|(e, _)| *e)
        .chain(product.terms().map(|(e, _)| *e))
        .collect();
    for e in keys {
        let a = section.coefficient(&e).copied().unwrap_or(0.0);
        let b = product.coefficient(&e).copied().unwrap_or_else(|| C64::new(0.0, 0.0));
        residual = residual.max((C64::new(a, 0.0) - b).norm());
    }
    if residual > 1e-9 {
        return Err(AnalysisError::SectionMismatch { residual });
    }

    Ok(CircleSection {
        phi,
        sin_n_phi: w,
        circles,
        real_count,
        degenerate: w == 0.0,
        residual,
    })
}

#[derive(Debug, Clone)]
pub struct AuditEntry {
    pub point: ProjPoint,
    pub on_surface: bool,
    pub multiplicity: u32,
    pub exceeds_bound: bool,
    /// When the bound is exceeded: whether the translated polynomial is
    /// exactly divisible by `A2`, the forced isotropic-cone split.
    pub splits_isotropic_cone: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct MultiplicityAudit {
    /// Maximal admissible multiplicity: half the order.
    pub bound: u32,
    pub entries: Vec<AuditEntry>,
    pub ok: bool,
}

/// Check the singular-point bound on an entirely spherical surface at the
/// supplied candidate points. Points off the surface report multiplicity 0.
/// This is a sampling audit of the bound's consequences, not a search for
/// singular points.
pub fn max_multiplicity_audit(
    surface: &Surface,
    candidates: &[ProjPoint],
) -> Result<MultiplicityAudit, AnalysisError> {
    if !is_entirely_spherical(surface) {
        return Err(AnalysisError::NotEntirelySpherical);
    }
    let bound = surface.order() / 2;
    let mut entries = Vec::with_capacity(candidates.len());
    for point in candidates {
        match point_multiplicity(surface, point) {
            Err(AnalysisError::PointNotOnSurface) => entries.push(AuditEntry {
                point: point.clone(),
                on_surface: false,
                multiplicity: 0,
                exceeds_bound: false,
                splits_isotropic_cone: None,
            }),
            Err(e) => return Err(e),
            Ok(report) => {
                let exceeds = report.multiplicity > bound;
                let splits = if exceeds {
                    let chart = report.chart;
                    let scale = &point[chart];
                    let coords: Vec<Rat> = (0..4)
                        .filter(|&i| i != chart)
                        .map(|i| &point[i] / scale)
                        .collect();
                    let translated = surface.poly().dehomogenize_at(chart)?.translate(&coords)?;
                    Some(
                        translated
                            .divide_exact(&QPoly::a2_affine())
                            .expect("nonzero divisor")
                            .is_some(),
                    )
                } else {
                    None
                };
                entries.push(AuditEntry {
                    point: point.clone(),
                    on_surface: true,
                    multiplicity: report.multiplicity,
                    exceeds_bound: exceeds,
                    splits_isotropic_cone: splits,
                });
            }
        }
    }
    let ok = entries.iter().all(|e| !e.exceeds_bound);
    Ok(MultiplicityAudit { bound, entries, ok })
}

/// Number of integer partitions of `n`, by Euler's pentagonal-number
/// recurrence. This counts the splitting types of degree-n tangent cones
/// into cone factors of smaller degree.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total: i128 = 0;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g1 > m && g2 > m {
                break;
            }
            let sign: i128 = if k % 2 == 0 { -1 } else { 1 };
            if g1 <= m {
                total += sign * p[m - g1] as i128;
            }
            if g2 <= m {
                total += sign * p[m - g2] as i128;
            }
            k += 1;
        }
        p[m] = total as u64;
    }
    p[n]
}

/// Result of scanning a tangent cone for rational linear factors.
#[derive(Debug, Clone)]
pub struct FactorScan {
    /// Extracted linear factors (normalized leading coefficient 1) with
    /// multiplicities.
    pub linear_factors: Vec<(QPoly, u32)>,
    /// What is left after division; degree >= 2 means the scan is partial.
    pub residual: QPoly,
    /// Degrees of the pieces found, ascending: the splitting signature.
    pub signature: Vec<u32>,
    /// True when a residual of degree >= 2 remains unfactored.
    pub partial: bool,
}

/// Best-effort extraction of rational linear factors from a ternary form by
/// candidate search over small-height rationals plus exact division. Full
/// factorization over the reals is out of scope; the signature is partial
/// whenever a nonlinear residual survives.
pub fn tangent_cone_factor_scan(cone: &QForm, height: u32) -> FactorScan {
    let mut residual = cone.poly().clone();
    let mut linear_factors: Vec<(QPoly, u32)> = Vec::new();
    if !residual.is_zero() {
        for candidate in linear_candidates(height) {
            let mut mult = 0u32;
            loop {
                // cheap necessary condition: vanish at two points of the plane
                if !plane_points(&candidate)
                    .iter()
                    .all(|p| residual.eval(p).is_zero())
                {
                    break;
                }
                match residual.divide_exact(&candidate).expect("nonzero candidate") {
                    Some(q) => {
                        residual = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                linear_factors.push((candidate, mult));
            }
            if residual.total_degree().unwrap_or(0) == 0 {
                break;
            }
        }
    }
    let mut signature: Vec<u32> = linear_factors
        .iter()
        .flat_map(|(_, m)| std::iter::repeat(1).take(*m as usize))
        .collect();
    let residual_degree = residual.total_degree().unwrap_or(0);
    if residual_degree >= 1 {
        signature.push(residual_degree);
    }
    signature.sort_unstable();
    FactorScan {
        linear_factors,
        residual,
        partial: residual_degree >= 2,
        signature,
    }
}

/// Normalized linear candidates `x + b y + c z`, `y + c z`, `z` with small
/// rational coefficients, in a deterministic order.
fn linear_candidates(height: u32) -> Vec<QPoly> {
    let rats = small_rationals(height);
    let mut out = Vec::new();
    let x = QPoly::var(3, 0);
    let y = QPoly::var(3, 1);
    let z = QPoly::var(3, 2);
    out.push(z);
    for c in &rats {
        let mut form = y.clone();
        form.add_term([0, 0, 1, 0], c.clone());
        out.push(form);
    }
    for b in &rats {
        for c in &rats {
            let mut form = x.clone();
            form.add_term([0, 1, 0, 0], b.clone());
            form.add_term([0, 0, 1, 0], c.clone());
            out.push(form);
        }
    }
    out
}

/// All reduced rationals with numerator and denominator bounded by `height`,
/// zero included, sorted for determinism.
fn small_rationals(height: u32) -> Vec<Rat> {
    let h = height.max(1) as i64;
    let mut out: Vec<Rat> = Vec::new();
    for den in 1..=h {
        for num in -h..=h {
            let r = Rat::new(num.into(), den.into());
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out.sort();
    out
}

/// Two rational points spanning the plane `l = 0` of a normalized linear
/// form, used as a fast pre-filter before exact division.
fn plane_points(l: &QPoly) -> [[Rat; 3]; 2] {
    let coeff = |e: [u16; 4]| l.coefficient(&e).cloned().unwrap_or_else(Rat::zero);
    let a = coeff([1, 0, 0, 0]);
    let b = coeff([0, 1, 0, 0]);
    let c = coeff([0, 0, 1, 0]);
    if !a.is_zero() {
        [
            [-&b / &a, Rat::one(), Rat::zero()],
            [-&c / &a, Rat::zero(), Rat::one()],
        ]
    } else if !b.is_zero() {
        [
            [Rat::one(), -&c / &b, Rat::one()],
            [Rat::zero(), -&c / &b, Rat::one()],
        ]
    } else {
        [
            [Rat::one(), Rat::zero(), Rat::zero()],
            [Rat::zero(), Rat::one(), Rat::zero()],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HomogeneousForm;
    use crate::surfaces::{general_q_spherical, one_point_surface, two_point_surface, TwoPointParams};

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn unit_sphere() -> Surface {
        let g0 = HomogeneousForm::constant(3, rat(1));
        let f1 = HomogeneousForm::zero(3, 1);
        let f0 = HomogeneousForm::constant(3, -rat(1));
        general_q_spherical(2, 1, &g0, &[], &[f1, f0]).unwrap()
    }

    fn fig2a() -> Surface {
        // f_2 = x^2 + y^2 - z^2
        let f2 = HomogeneousForm::new(
            &QPoly::a2_planar().extend_arity(3).unwrap() - &QPoly::var(3, 2).pow(2),
            2,
        )
        .unwrap();
        one_point_surface(2, &f2).unwrap()
    }

    #[test]
    fn regular_point_on_sphere() {
        let s = unit_sphere();
        let report = point_multiplicity(&s, &[rat(1), rat(1), rat(0), rat(0)]).unwrap();
        assert_eq!(report.multiplicity, 1);
        // tangent cone is the plane x (up to scalar)
        let x = QPoly::var(3, 0);
        assert!(report.tangent_cone.poly().proportionality(&x).is_some());
        assert_eq!(report.chart, 0);
    }

    #[test]
    fn two_point_origin_cone() {
        let s = two_point_surface(&TwoPointParams::new(3, rat(2)).unwrap()).unwrap();
        let report = point_multiplicity(&s, &[rat(1), rat(0), rat(0), rat(0)]).unwrap();
        assert_eq!(report.multiplicity, 3);
        let mut cone = QPoly::zero(3);
        cone.add_term([2, 1, 0, 0], rat(3));
        cone.add_term([0, 3, 0, 0], -rat(1));
        cone.add_term([0, 0, 3, 0], rat(8));
        assert!(report.tangent_cone.poly().proportionality(&cone).is_some());
        // and the mirror point (0, 0, p)
        let report = point_multiplicity(&s, &[rat(1), rat(0), rat(0), rat(2)]).unwrap();
        assert_eq!(report.multiplicity, 3);
    }

    #[test]
    fn one_point_origin_cone_exact() {
        let report = point_multiplicity(&fig2a(), &[rat(1), rat(0), rat(0), rat(0)]).unwrap();
        assert_eq!(report.multiplicity, 2);
        let expect = &QPoly::a2_planar().extend_arity(3).unwrap() - &QPoly::var(3, 2).pow(2);
        assert_eq!(report.tangent_cone.poly(), &expect);
    }

    #[test]
    fn point_at_infinity_chart_swap() {
        // quadric cone x1^2 + x2^2 - x3^2 contains the real ideal point (0,1,0,1)
        let mut cone = QPoly::a2_projective();
        cone.add_term([0, 0, 0, 2], -rat(2));
        let s = Surface::new(cone, None, Provenance::Custom).unwrap();
        let report = point_multiplicity(&s, &[rat(0), rat(1), rat(0), rat(1)]).unwrap();
        assert_eq!(report.chart, 1);
        assert_eq!(report.multiplicity, 1);
        // the vertex (1,0,0,0) is a double point
        let report = point_multiplicity(&s, &[rat(1), rat(0), rat(0), rat(0)]).unwrap();
        assert_eq!(report.multiplicity, 2);
    }

    #[test]
    fn off_surface_point_rejected() {
        let s = unit_sphere();
        assert_eq!(
            point_multiplicity(&s, &[rat(1), rat(2), rat(0), rat(0)]).unwrap_err(),
            AnalysisError::PointNotOnSurface
        );
        assert_eq!(
            point_multiplicity(&s, &[rat(0), rat(0), rat(0), rat(0)]).unwrap_err(),
            AnalysisError::ZeroProjectivePoint
        );
    }

    #[test]
    fn absolute_multiplicities() {
        assert_eq!(absolute_multiplicity(&unit_sphere()), 1);
        let s = two_point_surface(&TwoPointParams::new(4, rat(2)).unwrap()).unwrap();
        assert_eq!(absolute_multiplicity(&s), 4);
        // A2^2 + x0^2 x1 x2
        let mut f = QPoly::a2_projective().pow(2);
        f.add_term([2, 1, 1, 0], rat(1));
        let s = Surface::new(f, None, Provenance::Custom).unwrap();
        assert_eq!(absolute_multiplicity(&s), 2);
    }

    #[test]
    fn sphericity_predicates() {
        let sphere = unit_sphere();
        assert!(is_q_spherical(&sphere, 1));
        assert!(!is_q_spherical(&sphere, 2));
        assert!(is_entirely_spherical(&sphere));
        let s = two_point_surface(&TwoPointParams::new(3, rat(2)).unwrap()).unwrap();
        assert!(is_entirely_spherical(&s));
        // an ellipsoid-like quadric misses the conic: x1^2 + 2 x2^2 + x3^2 - x0^2
        let mut f = QPoly::a2_projective();
        f.add_term([0, 0, 2, 0], rat(1));
        f.add_term([2, 0, 0, 0], -rat(1));
        let s = Surface::new(f, None, Provenance::Custom).unwrap();
        assert_eq!(absolute_multiplicity(&s), 0);
        assert!(!is_entirely_spherical(&s));
    }

    #[test]
    fn line_through_one_point_surface() {
        let s = fig2a();
        let zero3 = [rat(0), rat(0), rat(0)];
        let r = line_intersection_polynomial(&s, &zero3, &[rat(1), rat(0), rat(0)]).unwrap();
        let LineIntersection::Transversal { poly, roots } = r else {
            panic!("line should be transversal")
        };
        // t^4 + t^2
        assert_eq!(poly.coeffs(), &[rat(0), rat(0), rat(1), rat(0), rat(1)]);
        assert_eq!(roots.len(), 3);
        let origin = roots.iter().find(|(r, _)| r.norm() == 0.0).unwrap();
        assert_eq!(origin.1, 2);
        assert!(roots.iter().any(|(r, _)| (r - C64::new(0.0, 1.0)).norm() < 1e-9));
        assert!(roots.iter().any(|(r, _)| (r - C64::new(0.0, -1.0)).norm() < 1e-9));
    }

    #[test]
    fn line_through_sphere_diameter() {
        let s = unit_sphere();
        let r =
            line_intersection_polynomial(&s, &[rat(0), rat(0), -rat(1)], &[rat(0), rat(0), rat(1)])
                .unwrap();
        let LineIntersection::Transversal { roots, .. } = r else { panic!() };
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|(r, m)| r.norm() < 1e-12 && *m == 1));
        assert!(roots.iter().any(|(r, m)| (r - C64::new(2.0, 0.0)).norm() < 1e-9 && *m == 1));
    }

    #[test]
    fn line_through_two_point_axis() {
        for n in [2u32, 3, 5] {
            let s = two_point_surface(&TwoPointParams::new(n, rat(2)).unwrap()).unwrap();
            let r = line_intersection_polynomial(
                &s,
                &[rat(0), rat(0), rat(0)],
                &[rat(0), rat(0), rat(1)],
            )
            .unwrap();
            let LineIntersection::Transversal { roots, .. } = r else { panic!() };
            assert_eq!(roots.len(), 2, "n = {n}");
            assert!(roots.iter().any(|(r, m)| r.norm() == 0.0 && *m == n));
            assert!(roots
                .iter()
                .any(|(r, m)| (r - C64::new(2.0, 0.0)).norm() < 1e-9 && *m == n));
        }
    }

    #[test]
    fn zero_direction_rejected() {
        let s = unit_sphere();
        let zero3 = [rat(0), rat(0), rat(0)];
        assert_eq!(
            line_intersection_polynomial(&s, &zero3, &zero3).unwrap_err(),
            AnalysisError::ZeroDirection
        );
    }

    #[test]
    fn line_on_surface_detected() {
        // the plane x3 = 0 contains the x-axis
        let plane = Surface::new(QPoly::var(4, 3), None, Provenance::Custom).unwrap();
        let r = line_intersection_polynomial(
            &plane,
            &[rat(0), rat(0), rat(0)],
            &[rat(1), rat(0), rat(0)],
        )
        .unwrap();
        assert!(matches!(r, LineIntersection::OnSurface));
    }

    #[test]
    fn lines_on_fig2a_are_tangent_isotropics() {
        let fan = lines_through_origin(&fig2a()).unwrap();
        assert_eq!(fan.count, 4);
        assert!(fan.max_residual() < 1e-9);
        // (1, i, 0) and (1, -i, 0), both double
        assert_eq!(fan.directions.len(), 2);
        for d in &fan.directions {
            assert_eq!(d.multiplicity, 2);
            assert!((d.direction[0] - C64::new(1.0, 0.0)).norm() < 1e-9);
            assert!((d.direction[1].norm() - 1.0).abs() < 1e-9);
            assert!(d.direction[1].re.abs() < 1e-9);
            assert!(d.direction[2].norm() < 1e-9);
        }
    }

    #[test]
    fn lines_on_saddle_cone() {
        // f_2 = xy - 2 z^2: four distinct complex directions
        let mut f2 = QPoly::zero(3);
        f2.add_term([1, 1, 0, 0], rat(1));
        f2.add_term([0, 0, 2, 0], -rat(2));
        let s = one_point_surface(2, &HomogeneousForm::new(f2, 2).unwrap()).unwrap();
        let fan = lines_through_origin(&s).unwrap();
        assert_eq!(fan.count, 4);
        assert_eq!(fan.directions.len(), 4);
        assert!(fan.max_residual() < 1e-9);
        assert!(fan.directions.iter().all(|d| d.multiplicity == 1));
    }

    #[test]
    fn lines_reject_other_families() {
        let s = two_point_surface(&TwoPointParams::new(2, rat(2)).unwrap()).unwrap();
        assert!(matches!(
            lines_through_origin(&s).unwrap_err(),
            AnalysisError::NotOnePointFamily
        ));
    }

    #[test]
    fn axial_section_n3_phi_pi6() {
        let s = two_point_surface(&TwoPointParams::new(3, rat(2)).unwrap()).unwrap();
        let section = axial_section(&s, std::f64::consts::FRAC_PI_6).unwrap();
        assert_eq!(section.real_count, 1);
        assert!(!section.degenerate);
        let real = section.circles.iter().find(|c| c.is_real).unwrap();
        assert_eq!(real.center_rho, C64::new(0.5, 0.0));
        assert_eq!(real.center_z, 1.0);
        assert_eq!(real.radius_sq, C64::new(1.25, 0.0));
        assert!(section.residual < 1e-9);
    }

    #[test]
    fn axial_section_even_counts() {
        let s = two_point_surface(&TwoPointParams::new(2, rat(2)).unwrap()).unwrap();
        // sin(2 phi) = -1 at phi = 3 pi / 4: no real circles
        let section = axial_section(&s, 3.0 * std::f64::consts::FRAC_PI_4).unwrap();
        assert_eq!(section.real_count, 0);
        // sin(2 phi) = 1 at phi = pi / 4: two real circles
        let section = axial_section(&s, std::f64::consts::FRAC_PI_4).unwrap();
        assert_eq!(section.real_count, 2);
    }

    #[test]
    fn axial_section_degenerate_branch() {
        let s = two_point_surface(&TwoPointParams::new(4, rat(2)).unwrap()).unwrap();
        let section = axial_section(&s, 0.0).unwrap();
        assert!(section.degenerate);
        assert!(section.circles.iter().all(|c| c.center_rho.norm() == 0.0));
        // the shared circle passes through (rho, z) = (0, 0) and (0, p)
        assert_eq!(section.circles[0].radius_sq, C64::new(1.0, 0.0));
        assert!(section.residual < 1e-9);
    }

    #[test]
    fn audit_two_point_candidates() {
        let s = two_point_surface(&TwoPointParams::new(3, rat(2)).unwrap()).unwrap();
        let candidates = vec![
            [rat(1), rat(0), rat(0), rat(0)],
            [rat(1), rat(0), rat(0), rat(2)],
            [rat(1), rat(1), rat(1), rat(1)],
        ];
        let audit = max_multiplicity_audit(&s, &candidates).unwrap();
        assert!(audit.ok);
        assert_eq!(audit.bound, 3);
        assert_eq!(audit.entries[0].multiplicity, 3);
        assert_eq!(audit.entries[1].multiplicity, 3);
        assert!(!audit.entries[2].on_surface);
        assert_eq!(audit.entries[2].multiplicity, 0);
    }

    #[test]
    fn audit_requires_entirely_spherical() {
        // order 3 with absolute multiplicity 1 is spherical but not entirely
        let f = &QPoly::a2_projective() * &QPoly::var(4, 1);
        let s = Surface::new(f, None, Provenance::Custom).unwrap();
        assert!(matches!(
            max_multiplicity_audit(&s, &[]).unwrap_err(),
            AnalysisError::NotEntirelySpherical
        ));
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partition_count(0), 1);
        assert_eq!(partition_count(1), 1);
        assert_eq!(partition_count(4), 5);
        assert_eq!(partition_count(6), 11);
        assert_eq!(partition_count(20), 627);
    }

    #[test]
    fn factor_scan_split_cases() {
        let x = QPoly::var(3, 0);
        let y = QPoly::var(3, 1);
        let z = QPoly::var(3, 2);

        let xyz = HomogeneousForm::new(&(&x * &y) * &z, 3).unwrap();
        let scan = tangent_cone_factor_scan(&xyz, 4);
        assert_eq!(scan.signature, vec![1, 1, 1]);
        assert!(!scan.partial);
        assert_eq!(scan.residual.total_degree(), Some(0));

        let quad = HomogeneousForm::new(
            &QPoly::a2_planar().extend_arity(3).unwrap() - &z.pow(2),
            2,
        )
        .unwrap();
        let scan = tangent_cone_factor_scan(&quad, 4);
        assert!(scan.linear_factors.is_empty());
        assert_eq!(scan.signature, vec![2]);
        assert!(scan.partial);

        let mixed = HomogeneousForm::new(&z * quad.poly(), 3).unwrap();
        let scan = tangent_cone_factor_scan(&mixed, 4);
        assert_eq!(scan.signature, vec![1, 2]);
        assert!(scan.partial);
        assert_eq!(scan.linear_factors.len(), 1);
        assert_eq!(scan.linear_factors[0].0, z);

        // repeated factor: x^2 y
        let rep = HomogeneousForm::new(&x.pow(2) * &y, 3).unwrap();
        let scan = tangent_cone_factor_scan(&rep, 2);
        assert_eq!(scan.signature, vec![1, 1, 1]);
        let xm = scan.linear_factors.iter().find(|(f, _)| *f == x).unwrap();
        assert_eq!(xm.1, 2);
    }
}
