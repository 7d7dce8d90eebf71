//! Sparse multivariate polynomial arithmetic, generic over the coefficient
//! scalar.
//!
//! Supported arities are 2, 3 and 4. Exponent tuples are ordered
//! lexicographically with the first variable most significant, which is the
//! term order every exact-division routine in the crate relies on. The zero
//! polynomial is the empty term map, and no stored term may carry a zero
//! coefficient.

mod form;
mod json;
mod unipoly;

pub use form::{HomogeneousForm, X0Decomposition};
pub use json::parse_rational;
pub use unipoly::UniPoly;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;


use num_traits::{Num, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::{C64, CRat, Rat};

/// Coefficient scalar: any commutative ring with exact equality. Division is
/// only meaningful for field scalars (rationals, Gaussian rationals, floats).
pub trait Coeff: Num + Clone + std::ops::Neg<Output = Self> + fmt::Debug {}
impl<T> Coeff for T where T: Num + Clone + std::ops::Neg<Output = Self> + fmt::Debug {}

/// Lossy conversion into a complex double, for handing exact data to the
/// numeric layer.
pub trait ToC64 {
    fn to_c64(&self) -> C64;
}

impl ToC64 for Rat {
    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(self), 0.0)
    }
}

impl ToC64 for CRat {
    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl ToC64 for f64 {
    fn to_c64(&self) -> C64 {
        C64::new(*self, 0.0)
    }
}

impl ToC64 for C64 {
    fn to_c64(&self) -> C64 {
        *self
    }
}

/// `BigRational -> f64` with a fallback through the integer parts for ratios
/// whose numerator and denominator separately overflow.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exponent tuple. Slots past the polynomial's arity stay zero.
pub type Exps = [u16; 4];

pub const MIN_ARITY: usize = 2;
pub const MAX_ARITY: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variable index {index} out of range for arity {arity}")]
    VarOutOfRange { index: usize, arity: usize },
    #[error("arity {0} outside the supported range 2..=4")]
    ArityOutOfRange(usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("degree {degree} exceeds homogenization target {target}")]
    DegreeExceedsTarget { degree: u32, target: u32 },
    #[error("expected {expected} substitution arguments, got {got}")]
    BadSubstitution { expected: usize, got: usize },
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// How many times one polynomial divides another. `Infinite` is the sentinel
/// for the zero dividend, which is vacuously divisible by every power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Multiplicity::Finite(m) => m >= k,
            Multiplicity::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::Infinite => None,
        }
    }
}

/// Sparse multivariate polynomial with a fixed arity per value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<C> {
    arity: usize,
    terms: BTreeMap<Exps, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(arity: usize) -> Self {
        assert!((MIN_ARITY..=MAX_ARITY).contains(&arity), "arity {arity} out of range");
        MultiPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: C) -> Self {
        let mut p = Self::zero(arity);
        p.add_term([0; 4], c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, C::one())
    }

    /// The variable `x_index` as a polynomial.
    pub fn var(arity: usize, index: usize) -> Self {
        Self::monomial(arity, Self::unit_exps(arity, index), C::one())
    }

    pub fn monomial(arity: usize, exps: Exps, c: C) -> Self {
        let mut p = Self::zero(arity);
        debug_assert!(exps[arity..].iter().all(|&e| e == 0));
        p.add_term(exps, c);
        p
    }

    fn unit_exps(arity: usize, index: usize) -> Exps {
        assert!(index < arity, "variable index {index} out of range for arity {arity}");
        let mut e = [0u16; 4];
        e[index] = 1;
        e
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Exps, C)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `x1^2 + x2^2 + x3^2` in four projective variables: the form cutting out
    /// the absolute conic together with `x0 = 0`.
    pub fn a2_projective() -> Self {
        Self::from_terms(
            4,
            [
                ([0, 2, 0, 0], C::one()),
                ([0, 0, 2, 0], C::one()),
                ([0, 0, 0, 2], C::one()),
            ],
        )
    }

    /// `x^2 + y^2 + z^2` in affine coordinates.
    pub fn a2_affine() -> Self {
        Self::from_terms(
            3,
            [
                ([2, 0, 0, 0], C::one()),
                ([0, 2, 0, 0], C::one()),
                ([0, 0, 2, 0], C::one()),
            ],
        )
    }

    /// `x^2 + y^2`, the planar analogue through the absolute points.
    pub fn a2_planar() -> Self {
        Self::from_terms(2, [([2, 0, 0, 0], C::one()), ([0, 2, 0, 0], C::one())])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &Exps) -> Option<&C> {
        self.terms.get(exps)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| Self::exp_degree(e)).max()
    }

    fn exp_degree(e: &Exps) -> u32 {
        e.iter().map(|&x| x as u32).sum()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Self::exp_degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// The homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.arity,
            self.terms
                .iter()
                .filter(|(e, _)| Self::exp_degree(e) == d)
                .map(|(e, c)| (*e, c.clone())),
        )
    }

    /// The nonzero homogeneous part of lowest total degree, with that degree.
    pub fn lowest_part(&self) -> Option<(u32, Self)> {
        let d = self.terms.keys().map(Self::exp_degree).min()?;
        Some((d, self.homogeneous_part(d)))
    }

    pub fn add_term(&mut self, exps: Exps, c: C) {
        if c.is_zero() {
            return;
        }
        debug_assert!(exps[self.arity..].iter().all(|&e| e == 0), "exponent beyond arity");
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch(self.arity, other.arity));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch(self.arity, other.arity));
        }
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for (i, x) in eb.iter().enumerate() {
                    e[i] += x;
                }
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn neg_ref(&self) -> Self {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, k)| (*e, k.clone() * c.clone())).collect(),
        }
    }

    /// Repeated product; `pow(_, 0)` is the constant 1.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.arity);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base).expect("same arity");
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base).expect("same arity");
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.arity {
            return Err(PolyError::VarOutOfRange { index: var, arity: self.arity });
        }
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[var] = k - 1;
            let mut factor = C::zero();
            for _ in 0..k {
                factor = factor + C::one();
            }
            out.add_term(e2, c.clone() * factor);
        }
        Ok(out)
    }

    /// Evaluate at a point of matching arity.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.arity, "point arity mismatch");
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e[..self.arity].iter().enumerate() {
                for _ in 0..k {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute a polynomial for every variable. All `args` must share one
    /// arity, which becomes the arity of the result.
    pub fn compose(&self, args: &[Self]) -> Result<Self, PolyError> {
        if args.len() != self.arity {
            return Err(PolyError::BadSubstitution { expected: self.arity, got: args.len() });
        }
        let out_arity = args[0].arity;
        for a in args {
            if a.arity != out_arity {
                return Err(PolyError::ArityMismatch(out_arity, a.arity));
            }
        }
        let mut acc = Self::zero(out_arity);
        for (e, c) in &self.terms {
            let mut t = Self::constant(out_arity, c.clone());
            for (i, &k) in e[..self.arity].iter().enumerate() {
                if k > 0 {
                    t = t.try_mul(&args[i].pow(k as u32))?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Substitute a univariate polynomial for every variable.
    pub fn compose_uni(&self, args: &[UniPoly<C>]) -> Result<UniPoly<C>, PolyError> {
        if args.len() != self.arity {
            return Err(PolyError::BadSubstitution { expected: self.arity, got: args.len() });
        }
        let mut acc = UniPoly::zero();
        for (e, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (i, &k) in e[..self.arity].iter().enumerate() {
                if k > 0 {
                    t = t.mul(&args[i].pow(k as u32));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// `f(x + s)`: translate the origin to `-s`.
    pub fn translate(&self, shift: &[C]) -> Result<Self, PolyError> {
        if shift.len() != self.arity {
            return Err(PolyError::BadSubstitution { expected: self.arity, got: shift.len() });
        }
        let args: Vec<Self> = (0..self.arity)
            .map(|i| {
                let mut p = Self::var(self.arity, i);
                p.add_term([0; 4], shift[i].clone());
                p
            })
            .collect();
        self.compose(&args)
    }

    /// Exact quotient, or `None` when the divisor does not divide exactly.
    ///
    /// Correct for any single divisor over a field scalar: one polynomial is a
    /// Groebner basis of the ideal it generates, so the lex remainder is zero
    /// exactly when the division is exact, and the reduction can abort at the
    /// first leading term the divisor's leading term fails to divide.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        if self.arity != divisor.arity {
            return Err(PolyError::ArityMismatch(self.arity, divisor.arity));
        }
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (lead_e, lead_c) = divisor.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.arity);
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            let mut qe = [0u16; 4];
            for i in 0..4 {
                match re[i].checked_sub(lead_e[i]) {
                    Some(d) => qe[i] = d,
                    None => return Ok(None),
                }
            }
            let qc = rc.clone() / lead_c.clone();
            let mono = Self::monomial(self.arity, qe, qc.clone());
            rem = rem.try_sub(&mono.try_mul(divisor)?)?;
            quot.add_term(qe, qc);
        }
        Ok(Some(quot))
    }

    /// Largest `m` with `divisor^m` dividing `self`; the zero polynomial
    /// reports the infinite sentinel.
    pub fn max_power_dividing(&self, divisor: &Self) -> Result<Multiplicity, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Multiplicity::Infinite);
        }
        let mut m = 0u32;
        let mut cur = self.clone();
        while let Some(q) = cur.divide_exact(divisor)? {
            if q.is_zero() {
                // only possible if cur was zero, handled above
                break;
            }
            cur = q;
            m += 1;
        }
        Ok(Multiplicity::Finite(m))
    }

    /// Homogenize to degree `n` by a new first variable: each term of total
    /// degree `d` picks up the factor `x0^(n-d)`.
    pub fn homogenize(&self, n: u32) -> Result<Self, PolyError> {
        if self.arity + 1 > MAX_ARITY {
            return Err(PolyError::ArityOutOfRange(self.arity + 1));
        }
        if let Some(d) = self.total_degree() {
            if d > n {
                return Err(PolyError::DegreeExceedsTarget { degree: d, target: n });
            }
        }
        let mut out = Self::zero(self.arity + 1);
        for (e, c) in &self.terms {
            let d = Self::exp_degree(e);
            let mut e2 = [0u16; 4];
            e2[0] = (n - d) as u16;
            e2[1..=self.arity].copy_from_slice(&e[..self.arity]);
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Set the first variable to 1 and drop it.
    pub fn dehomogenize(&self) -> Result<Self, PolyError> {
        self.dehomogenize_at(0)
    }

    /// Set variable `chart` to 1 and drop it, keeping the remaining variables
    /// in order. This is the affine chart used for multiplicity work at
    /// arbitrary projective points.
    pub fn dehomogenize_at(&self, chart: usize) -> Result<Self, PolyError> {
        if chart >= self.arity {
            return Err(PolyError::VarOutOfRange { index: chart, arity: self.arity });
        }
        if self.arity - 1 < MIN_ARITY {
            return Err(PolyError::ArityOutOfRange(self.arity - 1));
        }
        let mut out = Self::zero(self.arity - 1);
        for (e, c) in &self.terms {
            let mut e2 = [0u16; 4];
            let mut j = 0;
            for i in 0..self.arity {
                if i != chart {
                    e2[j] = e[i];
                    j += 1;
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Reinterpret in a larger arity; the new trailing variables do not occur.
    pub fn extend_arity(&self, arity: usize) -> Result<Self, PolyError> {
        if arity < self.arity || arity > MAX_ARITY {
            return Err(PolyError::ArityOutOfRange(arity));
        }
        Ok(MultiPoly { arity, terms: self.terms.clone() })
    }

    /// Insert a fresh, unused variable in front (index 0).
    pub fn prepend_var(&self) -> Result<Self, PolyError> {
        if self.arity + 1 > MAX_ARITY {
            return Err(PolyError::ArityOutOfRange(self.arity + 1));
        }
        let mut out = Self::zero(self.arity + 1);
        for (e, c) in &self.terms {
            let mut e2 = [0u16; 4];
            e2[1..=self.arity].copy_from_slice(&e[..self.arity]);
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    pub fn map_coeff<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(self.arity);
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }
}

impl<C: Coeff + ToC64> MultiPoly<C> {
    pub fn to_f64(&self) -> MultiPoly<f64> {
        self.map_coeff(|c| c.to_c64().re)
    }

    pub fn eval_c64(&self, point: &[C64]) -> C64 {
        assert_eq!(point.len(), self.arity, "point arity mismatch");
        let mut acc = C64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.to_c64();
            for (i, &k) in e[..self.arity].iter().enumerate() {
                t *= point[i].powu(k as u32);
            }
            acc += t;
        }
        acc
    }
}

impl MultiPoly<f64> {
    /// Fast float evaluation for grid sampling.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (i, &k) in e[..self.arity].iter().enumerate() {
                if k > 0 {
                    t *= point[i].powi(k as i32);
                }
            }
            acc += t;
        }
        acc
    }
}

impl MultiPoly<Rat> {
    /// Divide out the rational content and make the lex-leading coefficient
    /// positive: the canonical representative of the projective class.
    pub fn normalize_content(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = num_bigint::BigInt::from(0);
        let mut den_lcm = num_bigint::BigInt::from(1);
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = Rat::new(num_gcd, den_lcm);
        let mut out = self.scale(&(Rat::one() / content));
        let lead_negative = out
            .terms
            .iter()
            .next_back()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if lead_negative {
            out = out.neg_ref();
        }
        out
    }

    /// The rational `k` with `self = k * other`, when it exists.
    pub fn proportionality(&self, other: &Self) -> Option<Rat> {
        if self.arity != other.arity || self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return Some(Rat::zero());
        }
        let mut ratio: Option<Rat> = None;
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            if ea != eb {
                return None;
            }
            let r = ca / cb;
            match &ratio {
                None => ratio = Some(r),
                Some(prev) if *prev == r => {}
                Some(_) => return None,
            }
        }
        ratio
    }
}

use num_traits::One;

impl<C: Coeff> std::ops::Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.try_add(rhs).expect("arity mismatch in +")
    }
}

impl<C: Coeff> std::ops::Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.try_sub(rhs).expect("arity mismatch in -")
    }
}

impl<C: Coeff> std::ops::Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.try_mul(rhs).expect("arity mismatch in *")
    }
}

impl<C: Coeff> std::ops::Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.neg_ref()
    }
}

const VAR_NAMES: [&[&str]; 3] = [&["x", "y"], &["x", "y", "z"], &["x0", "x1", "x2", "x3"]];

/// Human-readable form, terms in descending lex order: `x^2 y - y^3 + 8 z^3`.
impl<C: Coeff + Signed + fmt::Display> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = VAR_NAMES[self.arity - MIN_ARITY];
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = Self::exp_degree(e) == 0;
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
                if !is_const {
                    write!(f, " ")?;
                }
            }
            let mut first = true;
            for (v, &k) in e[..self.arity].iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                if k == 1 {
                    write!(f, "{}", names[v])?;
                } else {
                    write!(f, "{}^{}", names[v], k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn x() -> MultiPoly<Rat> {
        MultiPoly::var(3, 0)
    }
    fn y() -> MultiPoly<Rat> {
        MultiPoly::var(3, 1)
    }

    #[test]
    fn additive_inverse_cancels() {
        let x2 = x().pow(2);
        assert!((&x2 + &x2.neg_ref()).is_zero());
    }

    #[test]
    fn add_identity() {
        let a2 = MultiPoly::<Rat>::a2_affine();
        assert_eq!(&a2 + &MultiPoly::zero(3), a2);
    }

    #[test]
    fn add_doubles() {
        let xy = &x() * &y();
        let two_xy = xy.scale(&rat(2));
        assert_eq!(&xy + &xy, two_xy);
    }

    #[test]
    fn mul_identity_and_difference_of_squares() {
        let a2 = MultiPoly::<Rat>::a2_affine();
        assert_eq!(&a2 * &MultiPoly::one(3), a2);
        let sum = &x() + &y();
        let diff = &x() - &y();
        let expect = &x().pow(2) - &y().pow(2);
        assert_eq!(&sum * &diff, expect);
    }

    #[test]
    fn pow_matches_mul() {
        let a2 = MultiPoly::<Rat>::a2_affine();
        assert_eq!(a2.pow(2), &a2 * &a2);
        assert_eq!(a2.pow(0), MultiPoly::one(3));
        let sq = (&x() + &y()).pow(2);
        let mut expect = x().pow(2);
        expect.add_term([1, 1, 0, 0], rat(2));
        expect.add_term([0, 2, 0, 0], rat(1));
        assert_eq!(sq, expect);
    }

    #[test]
    fn pow_a2_cubed_term_count() {
        // monomials of (x^2+y^2+z^2)^3: all (i,j,k) with i+j+k=3, C(5,2) = 10
        let brute = (0..=3u16)
            .flat_map(|i| (0..=3u16 - i).map(move |j| (i, j, 3 - i - j)))
            .count();
        assert_eq!(brute, 10);
        assert_eq!(MultiPoly::<Rat>::a2_affine().pow(3).len(), 10);
    }

    #[test]
    fn partial_derivatives() {
        let a2 = MultiPoly::<Rat>::a2_affine();
        assert_eq!(a2.partial(0).unwrap(), x().scale(&rat(2)));
        let a2_proj = MultiPoly::<Rat>::a2_projective();
        assert!(a2_proj.partial(0).unwrap().is_zero());
        // d/dx (A2^2) = 4 x A2
        let d = a2.pow(2).partial(0).unwrap();
        assert_eq!(d, (&x() * &a2).scale(&rat(4)));
    }

    #[test]
    fn eval_points() {
        let a2 = MultiPoly::<Rat>::a2_affine();
        assert_eq!(a2.eval(&[rat(1), rat(0), rat(0)]), rat(1));
        // isotropic direction (1, i, 0)
        let i = C64::new(0.0, 1.0);
        let v = a2.eval_c64(&[C64::new(1.0, 0.0), i, C64::new(0.0, 0.0)]);
        assert!(v.norm() < 1e-15);
        let p = &MultiPoly::<Rat>::var(2, 0).pow(2) - &MultiPoly::var(2, 1).pow(2);
        assert_eq!(p.eval(&[rat(3), rat(2)]), rat(5));
    }

    #[test]
    fn divide_exact_basic() {
        let a2 = MultiPoly::<Rat>::a2_affine();
        let xy = &x() * &y();
        let prod = &a2 * &xy;
        assert_eq!(prod.divide_exact(&a2).unwrap(), Some(xy.clone()));
        assert_eq!(xy.divide_exact(&a2).unwrap(), None);
        assert_eq!(MultiPoly::zero(3).divide_exact(&a2).unwrap(), Some(MultiPoly::zero(3)));
        assert_eq!(
            xy.divide_exact(&MultiPoly::zero(3)),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn max_power() {
        let a2 = MultiPoly::<Rat>::a2_affine();
        let xy = &x() * &y();
        let f = &a2.pow(2) * &xy;
        assert_eq!(f.max_power_dividing(&a2).unwrap(), Multiplicity::Finite(2));
        assert_eq!(xy.max_power_dividing(&a2).unwrap(), Multiplicity::Finite(0));
        assert_eq!(a2.pow(3).max_power_dividing(&a2).unwrap(), Multiplicity::Finite(3));
        assert_eq!(
            MultiPoly::zero(3).max_power_dividing(&a2).unwrap(),
            Multiplicity::Infinite
        );
    }

    #[test]
    fn homogenize_round_trip() {
        // x^2+y^2+z^2-1, degree 2 -> x1^2+x2^2+x3^2-x0^2
        let mut sphere = MultiPoly::<Rat>::a2_affine();
        sphere.add_term([0; 4], -rat(1));
        let h = sphere.homogenize(2).unwrap();
        let mut expect = MultiPoly::<Rat>::a2_projective();
        expect.add_term([2, 0, 0, 0], -rat(1));
        assert_eq!(h, expect);
        assert_eq!(h.dehomogenize().unwrap(), sphere);

        // already homogeneous of the target degree: fixed by the round trip
        let a2 = MultiPoly::<Rat>::a2_affine();
        assert_eq!(a2.homogenize(2).unwrap().dehomogenize().unwrap(), a2);

        // constant 1 with n=2 -> x0^2
        let one = MultiPoly::<Rat>::one(3);
        assert_eq!(
            one.homogenize(2).unwrap(),
            MultiPoly::monomial(4, [2, 0, 0, 0], Rat::one())
        );

        let cubic = x().pow(3);
        assert_eq!(
            cubic.homogenize(2),
            Err(PolyError::DegreeExceedsTarget { degree: 3, target: 2 })
        );
    }

    #[test]
    fn arity_mismatch_reported() {
        let p2 = MultiPoly::<Rat>::a2_planar();
        let p3 = MultiPoly::<Rat>::a2_affine();
        assert_eq!(p2.try_add(&p3), Err(PolyError::ArityMismatch(2, 3)));
        assert_eq!(p3.try_mul(&p2), Err(PolyError::ArityMismatch(3, 2)));
    }

    #[test]
    fn display_matches_caption_style() {
        let mut cone = MultiPoly::<Rat>::zero(3);
        cone.add_term([2, 1, 0, 0], rat(3));
        cone.add_term([0, 3, 0, 0], -rat(1));
        cone.add_term([0, 0, 3, 0], rat(8));
        assert_eq!(cone.to_string(), "3 x^2 y - y^3 + 8 z^3");
    }

    #[test]
    fn normalize_content_and_proportionality() {
        let mut cone = MultiPoly::<Rat>::zero(3);
        cone.add_term([1, 1, 0, 0], rat(2));
        cone.add_term([0, 0, 2, 0], -rat(4));
        let norm = cone.normalize_content();
        let mut expect = MultiPoly::<Rat>::zero(3);
        expect.add_term([1, 1, 0, 0], rat(1));
        expect.add_term([0, 0, 2, 0], -rat(2));
        assert_eq!(norm, expect);
        assert_eq!(cone.proportionality(&expect), Some(rat(2)));
        assert_eq!(expect.proportionality(&cone), Some(Rat::new(1.into(), 2.into())));
        assert_eq!(cone.proportionality(&x()), None);
    }
}
