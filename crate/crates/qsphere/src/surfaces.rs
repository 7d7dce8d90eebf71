//! Constructors for the spherical surface families.
//!
//! A surface here is a homogeneous quaternary form together with its order
//! and, when the construction guarantees one, the multiplicity of the
//! absolute conic on it. Three families are built exactly:
//!
//! - the general q-spherical form
//!   `A2^q g + sum x0^j A2^(q-j) g_j + sum x0^j f_(n-j)`,
//! - surfaces `A2^n + f_n = 0` with a single n-fold point at the origin,
//! - surfaces swept by circles through two fixed points on the z-axis, whose
//!   affine equation is `(A2 - pz)^n = G_n(x, y)` with `G_n` the harmonic
//!   form `Im(x+iy)^n` obtained through Chebyshev multiple-angle expansion.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use thiserror::Error;

use crate::poly::{parse_rational, HomogeneousForm, PolyError, UniPoly};
use crate::{QForm, QPoly, Rat};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("order n must be at least {min} (got {got})")]
    OrderTooSmall { min: u32, got: u32 },
    #[error("absolute multiplicity q must be at least 1")]
    QZero,
    #[error("theorem hypothesis violated: n >= 2q required (n={n}, q={q})")]
    OrderBelowTwiceQ { n: u32, q: u32 },
    #[error("theorem hypothesis violated: the base form g of degree n-2q is zero")]
    GBaseZero,
    #[error("theorem hypothesis violated: A2 divides the base form g of degree n-2q")]
    GBaseDivisibleByA2,
    #[error("A2 divides every form f_(n-j), j = q..n; the surface would split off the isotropic quadric")]
    FTailAllDivisibleByA2,
    #[error("theorem hypothesis violated: A2 divides the form f of degree n-q")]
    FTopDivisibleByA2,
    #[error("expected {expected} forms for {role}, got {got}")]
    WrongFormCount { role: &'static str, expected: usize, got: usize },
    #[error("form for {role} must have degree {expected}, got {got}")]
    WrongFormDegree { role: &'static str, expected: u32, got: u32 },
    #[error("form must be a ternary form (arity 3), got arity {0}")]
    WrongFormArity(usize),
    #[error("the cone form f_n is zero")]
    ConeFormZero,
    #[error("A2 divides the cone form f_n; the surface would gain sphericity or split")]
    ConeFormDivisibleByA2,
    #[error("distance parameter p must be positive")]
    NonpositiveDistance,
    #[error("harmonic index n must be at least {0}")]
    IndexTooSmall(u32),
    #[error("multiple-angle expansion left a non-polynomial residue at n={0}")]
    NonPolynomialResidue(u32),
    #[error("equiangular product check failed at angle {angle}: |delta| = {delta:e}")]
    EquiangularMismatch { angle: f64, delta: f64 },
    #[error("inconsistent intersection counts: {formula} evaluates to {value}")]
    NegativeCsEntry { formula: &'static str, value: i64 },
    #[error("surface polynomial must be a nonzero homogeneous quaternary form")]
    BadSurfacePolynomial,
    #[error("malformed surface JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which construction produced a surface.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    General,
    OnePoint,
    TwoPoint { p: Rat },
    Custom,
}

impl Provenance {
    fn label(&self) -> &'static str {
        match self {
            Provenance::General => "general",
            Provenance::OnePoint => "one-point",
            Provenance::TwoPoint { .. } => "two-point",
            Provenance::Custom => "custom",
        }
    }
}

/// A projective algebraic surface: homogeneous quaternary form plus cached
/// metadata. `claimed_q` is the absolute-conic multiplicity the construction
/// guarantees; the analysis side recomputes it independently.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    poly: QPoly,
    order: u32,
    claimed_q: Option<u32>,
    provenance: Provenance,
}

impl Surface {
    pub fn new(poly: QPoly, claimed_q: Option<u32>, provenance: Provenance) -> Result<Self, ConstructError> {
        if poly.arity() != 4 || poly.is_zero() || !poly.is_homogeneous() {
            return Err(ConstructError::BadSurfacePolynomial);
        }
        let order = poly.total_degree().expect("nonzero");
        Ok(Surface { poly, order, claimed_q, provenance })
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn claimed_q(&self) -> Option<u32> {
        self.claimed_q
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The affine equation in the chart `x0 = 1`.
    pub fn affine(&self) -> QPoly {
        self.poly.dehomogenize().expect("arity 4")
    }

    pub fn to_json(&self) -> Value {
        let q = match self.claimed_q {
            Some(q) => json!(q),
            None => Value::Null,
        };
        let p = match &self.provenance {
            Provenance::TwoPoint { p } => json!(p.to_string()),
            _ => Value::Null,
        };
        json!({
            "n": self.order,
            "q": q,
            "provenance": self.provenance.label(),
            "p": p,
            "poly": self.poly.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, ConstructError> {
        let bad = |m: &str| ConstructError::Json(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let poly = QPoly::from_json(obj.get("poly").ok_or_else(|| bad("missing 'poly'"))?)?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer 'n'"))? as u32;
        let claimed_q = match obj.get("q") {
            None | Some(Value::Null) => None,
            Some(q) => Some(q.as_u64().ok_or_else(|| bad("'q' must be an integer"))? as u32),
        };
        let provenance = match obj.get("provenance").and_then(Value::as_str) {
            Some("general") => Provenance::General,
            Some("one-point") => Provenance::OnePoint,
            Some("two-point") => {
                let p = obj
                    .get("p")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("two-point surface requires 'p'"))?;
                Provenance::TwoPoint { p: parse_rational(p)? }
            }
            Some("custom") | None => Provenance::Custom,
            Some(other) => return Err(bad(&format!("unknown provenance '{other}'"))),
        };
        let s = Surface::new(poly, claimed_q, provenance)?;
        if s.order != n {
            return Err(bad("'n' does not match the polynomial degree"));
        }
        Ok(s)
    }
}

fn require_ternary(f: &QForm, role: &'static str, degree: u32) -> Result<(), ConstructError> {
    if f.arity() != 3 {
        return Err(ConstructError::WrongFormArity(f.arity()));
    }
    if f.degree() != degree {
        return Err(ConstructError::WrongFormDegree { role, expected: degree, got: f.degree() });
    }
    Ok(())
}

fn a2_divides(f: &QPoly) -> bool {
    f.divide_exact(&QPoly::a2_affine()).expect("nonzero divisor").is_some()
}

/// The general q-spherical surface of order `n`:
/// `A2^q g + sum_{j=1}^{q-1} x0^j A2^(q-j) g_j + sum_{j=q}^{n} x0^j f_(n-j)`.
///
/// `g_mid[j-1]` is the degree `n-2q+j` form attached to `x0^j A2^(q-j)` for
/// `j = 1..q-1`; `f_tail[j-q]` is the degree `n-j` form attached to `x0^j`
/// for `j = q..n`. The conditions on `g` force the absolute multiplicity to
/// be exactly `q`; the conditions on the tail keep the isotropic quadric
/// from splitting off. A zero `f_(n-q)` is accepted when a later tail form
/// carries the non-divisibility (the unit sphere needs this).
pub fn general_q_spherical(
    n: u32,
    q: u32,
    g_base: &QForm,
    g_mid: &[QForm],
    f_tail: &[QForm],
) -> Result<Surface, ConstructError> {
    if q == 0 {
        return Err(ConstructError::QZero);
    }
    if n < 2 * q {
        return Err(ConstructError::OrderBelowTwiceQ { n, q });
    }
    require_ternary(g_base, "g (degree n-2q)", n - 2 * q)?;
    if g_base.is_zero() {
        return Err(ConstructError::GBaseZero);
    }
    if a2_divides(g_base.poly()) {
        return Err(ConstructError::GBaseDivisibleByA2);
    }
    if g_mid.len() != (q - 1) as usize {
        return Err(ConstructError::WrongFormCount {
            role: "g_j, j = 1..q-1",
            expected: (q - 1) as usize,
            got: g_mid.len(),
        });
    }
    for (i, g) in g_mid.iter().enumerate() {
        let j = i as u32 + 1;
        require_ternary(g, "g_j (degree n-2q+j)", n - 2 * q + j)?;
    }
    if f_tail.len() != (n - q + 1) as usize {
        return Err(ConstructError::WrongFormCount {
            role: "f_(n-j), j = q..n",
            expected: (n - q + 1) as usize,
            got: f_tail.len(),
        });
    }
    for (i, f) in f_tail.iter().enumerate() {
        let j = q + i as u32;
        require_ternary(f, "f_(n-j)", n - j)?;
    }
    let f_top = &f_tail[0];
    if !f_top.is_zero() && a2_divides(f_top.poly()) {
        return Err(ConstructError::FTopDivisibleByA2);
    }
    // A zero f_(n-q) is admissible -- the unit sphere has f_1 = 0 -- because
    // A2 not dividing g already caps the absolute multiplicity at q. What
    // must not happen is A2 dividing every tail form: then A2 divides the
    // whole polynomial and the isotropic quadric splits off.
    if f_tail.iter().all(|f| f.is_zero() || a2_divides(f.poly())) {
        return Err(ConstructError::FTailAllDivisibleByA2);
    }

    let a2 = QPoly::a2_projective();
    let x0 = QPoly::var(4, 0);
    let mut acc = &a2.pow(q) * &g_base.poly().prepend_var()?;
    for (i, g) in g_mid.iter().enumerate() {
        let j = i as u32 + 1;
        let term = &(&x0.pow(j) * &a2.pow(q - j)) * &g.poly().prepend_var()?;
        acc = &acc + &term;
    }
    for (i, f) in f_tail.iter().enumerate() {
        let j = q + i as u32;
        let term = &x0.pow(j) * &f.poly().prepend_var()?;
        acc = &acc + &term;
    }
    Surface::new(acc, Some(q), Provenance::General)
}

/// `A2(x,y,z)^n + f_n(x,y,z) = 0`: an entirely spherical surface of order
/// `2n` whose only singular point is an n-fold point at the origin.
pub fn one_point_surface(n: u32, f_n: &QForm) -> Result<Surface, ConstructError> {
    if n < 1 {
        return Err(ConstructError::OrderTooSmall { min: 1, got: n });
    }
    require_ternary(f_n, "f_n", n)?;
    if f_n.is_zero() {
        return Err(ConstructError::ConeFormZero);
    }
    if a2_divides(f_n.poly()) {
        return Err(ConstructError::ConeFormDivisibleByA2);
    }
    let affine = &QPoly::a2_affine().pow(n) + f_n.poly();
    let poly = affine.homogenize(2 * n)?;
    Surface::new(poly, Some(n), Provenance::OnePoint)
}

/// Parameters of the two-point family: the singular points sit at the origin
/// and at `(0, 0, p)`, so the surface is symmetric about the plane `z = p/2`.
/// (The label `CS(k_2n, p/2)` elsewhere uses the half-distance.)
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPointParams {
    pub n: u32,
    pub p: Rat,
}

impl TwoPointParams {
    pub fn new(n: u32, p: Rat) -> Result<Self, ConstructError> {
        if n < 2 {
            return Err(ConstructError::OrderTooSmall { min: 2, got: n });
        }
        if !p.is_positive() {
            return Err(ConstructError::NonpositiveDistance);
        }
        Ok(TwoPointParams { n, p })
    }
}

/// The surface swept by the circles through `(0,0,0)` and `(0,0,p)` that meet
/// the entirely circular curve of index `n` in the plane `z = 0`. Affine
/// equation, assembled with exact binomials:
/// `A2^n + sum_{j=1}^{n-1} C(n,j) (-pz)^j A2^(n-j) - G_n(x,y) + (-pz)^n = 0`.
pub fn two_point_surface(params: &TwoPointParams) -> Result<Surface, ConstructError> {
    let TwoPointParams { n, p } = params;
    let n = *n;
    let a2 = QPoly::a2_affine();
    let minus_pz = QPoly::monomial(3, [0, 0, 1, 0], -p.clone());
    let mut acc = QPoly::zero(3);
    for j in 0..=n {
        let c = Rat::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(j)));
        let term = (&a2.pow(n - j) * &minus_pz.pow(j)).scale(&c);
        acc = &acc + &term;
    }
    let g = g_form(n)?.into_poly().extend_arity(3)?;
    let affine = &acc - &g;
    let poly = affine.homogenize(2 * n)?;
    Surface::new(poly, Some(n), Provenance::TwoPoint { p: p.clone() })
}

/// Tangent cone of the two-point surface at the origin (up to a nonzero
/// scalar): `T_n(x,y,z) = G_n(x,y) - (-pz)^n`.
pub fn tangent_cone_two_point(params: &TwoPointParams) -> Result<QForm, ConstructError> {
    let g = g_form(params.n)?.into_poly().extend_arity(3)?;
    let minus_pz = QPoly::monomial(3, [0, 0, 1, 0], -params.p.clone());
    let cone = &g - &minus_pz.pow(params.n);
    Ok(HomogeneousForm::new(cone, params.n)?)
}

/// The harmonic form `S_n(x, y) = Im (x + iy)^n`, the polynomial carrying
/// `rho^n sin(n phi)` into Cartesian coordinates. Integer coefficients.
pub fn harmonic_sin(n: u32) -> Result<QForm, ConstructError> {
    if n < 1 {
        return Err(ConstructError::IndexTooSmall(1));
    }
    let mut poly = QPoly::zero(2);
    for j in (1..=n).step_by(2) {
        let mut c = Rat::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(j)));
        if (j - 1) / 2 % 2 == 1 {
            c = -c;
        }
        poly.add_term([(n - j) as u16, j as u16, 0, 0], c);
    }
    Ok(HomogeneousForm::new(poly, n)?)
}

/// Chebyshev polynomial of the first kind, by the recurrence
/// `T_0 = 1, T_1 = t, T_(k+1) = 2 t T_k - T_(k-1)`.
pub fn chebyshev_first(n: u32) -> UniPoly<BigInt> {
    chebyshev(n, UniPoly::one(), UniPoly::var())
}

/// Chebyshev polynomial of the second kind (`U_1 = 2t`).
pub fn chebyshev_second(n: u32) -> UniPoly<BigInt> {
    chebyshev(n, UniPoly::one(), UniPoly::var().scale(&BigInt::from(2)))
}

fn chebyshev(n: u32, p0: UniPoly<BigInt>, p1: UniPoly<BigInt>) -> UniPoly<BigInt> {
    match n {
        0 => p0,
        1 => p1,
        _ => {
            let two_t = UniPoly::var().scale(&BigInt::from(2));
            let (mut prev, mut cur) = (p0, p1);
            for _ in 2..=n {
                let next = two_t.mul(&cur).sub(&prev);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// The binary form `G_n` via the Chebyshev multiple-angle route:
/// odd `n` expands `(-1)^((n-1)/2) rho^n T_n(y / rho)`, even `n` expands
/// `(-1)^(n/2-1) x rho^(n-1) U_(n-1)(y / rho)` with `rho^2 = x^2 + y^2`.
/// All half-integer powers of `rho` must cancel; a leftover means the
/// expansion itself is broken, not the input. The result is checked to equal
/// [`harmonic_sin`] by the oracle suite, not in here.
pub fn g_form(n: u32) -> Result<QForm, ConstructError> {
    if n < 2 {
        return Err(ConstructError::IndexTooSmall(2));
    }
    let rho2 = QPoly::a2_planar();
    let y = QPoly::var(2, 1);
    let odd = n % 2 == 1;
    let (source, negate) = if odd {
        (chebyshev_first(n), ((n - 1) / 2) % 2 == 1)
    } else {
        (chebyshev_second(n - 1), (n / 2 - 1) % 2 == 1)
    };
    // each Chebyshev term c t^k becomes c y^k rho^(m-k); m-k must be even
    let m = if odd { n } else { n - 1 };
    let mut acc = QPoly::zero(2);
    for (k, c) in source.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = k as u32;
        if (m - k) % 2 != 0 {
            return Err(ConstructError::NonPolynomialResidue(n));
        }
        let term = (&y.pow(k) * &rho2.pow((m - k) / 2)).scale(&Rat::from_integer(c.clone()));
        acc = &acc + &term;
    }
    if !odd {
        acc = &acc * &QPoly::var(2, 0);
    }
    if negate {
        acc = acc.neg_ref();
    }
    Ok(HomogeneousForm::new(acc, n)?)
}

/// The exact product of `n` equiangular lines through the origin: tangent
/// directions dividing the plane into equal parts. Closed form
/// `sign * 2^(1-n) * S_n(x, y)` with `sign = -1` for even `n` and
/// `(-1)^((n-1)/2)` for odd `n`; the sign and scale follow from
/// `prod_k sin(phi + k pi / n) = 2^(1-n) sin(n phi)`. The zero set is
/// verified numerically against the literal product of line forms.
pub fn equiangular_f(n: u32) -> Result<QForm, ConstructError> {
    if n < 2 {
        return Err(ConstructError::IndexTooSmall(2));
    }
    let odd = n % 2 == 1;
    let negate = if odd { ((n - 1) / 2) % 2 == 1 } else { true };
    let mut scalar = Rat::new(BigInt::one(), BigInt::from(2).pow(n - 1));
    if negate {
        scalar = -scalar;
    }
    let form = harmonic_sin(n)?.into_poly().scale(&scalar);

    // spot-check against the literal product of the n line forms
    let angles: Vec<f64> = (0..n)
        .map(|i| {
            if odd {
                2.0 * std::f64::consts::PI * i as f64 / n as f64
            } else {
                std::f64::consts::PI * i as f64 / n as f64
            }
        })
        .collect();
    let form_f = form.to_f64();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x45_51_41_4e);
    for _ in 0..10 {
        let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let (x, y) = (phi.cos(), phi.sin());
        let product: f64 = angles.iter().map(|t| t.cos() * y - t.sin() * x).product();
        let val = form_f.eval_f64(&[x, y]);
        let delta = (product - val).abs();
        if delta > 1e-12 * product.abs().max(1.0) {
            return Err(ConstructError::EquiangularMismatch { angle: phi, delta });
        }
    }
    Ok(HomogeneousForm::new(form, n)?)
}

/// Order and multiplicity data for the surface generated from a congruence of
/// circles by an order-`m` curve meeting the axis at `z1` points, the
/// absolute conic at `a1` pairs of absolute points, and the two base points
/// with multiplicities `p1` and `p2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CsOrderReport {
    pub m: u32,
    pub z1: u32,
    pub a1: u32,
    pub p1: u32,
    pub p2: u32,
    pub surface_order: u32,
    pub absolute_mult: u32,
    pub axis_mult: u32,
    pub point_mult: u32,
}

pub fn cs_order_report(m: u32, z1: u32, a1: u32, p1: u32, p2: u32) -> Result<CsOrderReport, ConstructError> {
    let (m_, z_, a_, p1_, p2_) = (m as i64, z1 as i64, a1 as i64, p1 as i64, p2 as i64);
    let entries = [
        ("surface order 3m - (z' + 2a' + 2p1' + 2p2')", 3 * m_ - (z_ + 2 * a_ + 2 * p1_ + 2 * p2_)),
        ("absolute multiplicity m - (z' + p1' + p2')", m_ - (z_ + p1_ + p2_)),
        ("axis multiplicity m - 2a' + z'", m_ - 2 * a_ + z_),
        ("point multiplicity 2m - (2a' + p1' + p2')", 2 * m_ - (2 * a_ + p1_ + p2_)),
    ];
    for (formula, value) in entries {
        if value < 0 {
            return Err(ConstructError::NegativeCsEntry { formula, value });
        }
    }
    Ok(CsOrderReport {
        m,
        z1,
        a1,
        p1,
        p2,
        surface_order: entries[0].1 as u32,
        absolute_mult: entries[1].1 as u32,
        axis_mult: entries[2].1 as u32,
        point_mult: entries[3].1 as u32,
    })
}
