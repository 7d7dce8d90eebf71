//! Exact algebraic geometry of spherical surfaces.
//!
//! The crate builds algebraic surfaces that contain the absolute conic of
//! Euclidean space (`x0 = 0`, `x1^2 + x2^2 + x3^2 = 0`) as a multiple curve,
//! verifies their multiplicity structure, and renders them as meshes and
//! curve plots. Everything structural is computed over arbitrary-precision
//! rationals; floating point enters only for root finding and rendering.
//!
//! Module map:
//! - [`poly`]: sparse multivariate polynomials generic over the coefficient
//!   scalar, with the homogeneous decompositions the divisibility tests need;
//! - [`surfaces`]: constructors for the surface families (general q-spherical,
//!   one n-fold point, two n-fold points) and the harmonic/Chebyshev forms;
//! - [`analysis`]: point multiplicities, tangent cones, absolute-conic
//!   multiplicity, lines through singular points, axial circle sections;
//! - [`curves`]: entirely circular plane curves and their polar sampling;
//! - [`mesh`]: implicit-surface polygonizer plus OBJ/SVG export;
//! - [`roots`]: dense univariate complex root finding (Aberth iteration).

pub mod analysis;
pub mod curves;
pub mod mesh;
pub mod poly;
pub mod roots;
pub mod surfaces;

/// Exact scalar used everywhere structure matters.
pub type Rat = num_rational::BigRational;
/// Gaussian rational: exact complex scalar for isotropic-cone work.
pub type CRat = num_complex::Complex<Rat>;
/// Complex double for numeric root finding and rendering.
pub type C64 = num_complex::Complex64;

/// Exact multivariate polynomial, the universal currency of the crate.
pub type QPoly = poly::MultiPoly<Rat>;
/// Homogeneous part of a [`QPoly`] with its degree pinned.
pub type QForm = poly::HomogeneousForm<Rat>;
/// Exact dense univariate polynomial.
pub type QUniPoly = poly::UniPoly<Rat>;
/// Univariate polynomial over the Gaussian rationals.
pub type CUniPoly = poly::UniPoly<CRat>;
