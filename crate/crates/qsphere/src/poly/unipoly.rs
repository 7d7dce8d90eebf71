//! Dense univariate polynomials, used for Chebyshev recurrences and for the
//! restriction of a surface to a parametrized line.



use super::{Coeff, ToC64};
use crate::C64;

/// Coefficients ascending by power, highest coefficient nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> UniPoly<C> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_coeffs(vec![C::zero(), C::one()])
    }

    /// `c * t^k`.
    pub fn monomial(k: usize, c: C) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|k| k.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, t: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut factor = C::zero();
            for _ in 0..k {
                factor = factor + C::one();
            }
            out.push(c.clone() * factor);
        }
        Self::from_coeffs(out)
    }

    /// Multiplicity of the root at 0: the number of leading zero coefficients.
    /// Exact whenever the coefficients are exact.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divide by `t^k`; only valid when the order at zero is at least `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.order_at_zero().map(|m| m >= k).unwrap_or(true));
        if self.coeffs.len() <= k {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs[k..].to_vec())
    }

    pub fn map_coeff<D: Coeff>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Quotient and remainder; requires a field scalar and a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem[k].clone() / lead.clone();
            if !c.is_zero() {
                quot[k - dd] = c.clone();
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k - dd + i] = rem[k - dd + i].clone() - c.clone() * d.clone();
                }
            }
            rem.pop();
            while rem.last().map(|v| v.is_zero()).unwrap_or(false) {
                rem.pop();
            }
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn make_monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lead) => {
                let inv = C::one() / lead.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor over a field scalar.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }

    /// Yun's square-free decomposition: returns `(p_i, i)` with
    /// `self = lead * prod p_i^i` and each `p_i` monic square-free. Exact
    /// over a field of characteristic zero, which is what makes root
    /// multiplicities of the line-restriction polynomials exact.
    pub fn square_free_decomposition(&self) -> Vec<(Self, u32)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.make_monic();
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut c = f.div_rem(&g).0;
        let mut d = df.div_rem(&g).0.sub(&c.derivative());
        let mut out = Vec::new();
        let max_mult = self.degree().unwrap_or(0) as u32;
        let mut i = 1u32;
        while c.degree().unwrap_or(0) > 0 && i <= max_mult {
            let p = c.gcd(&d);
            if p.degree().unwrap_or(0) > 0 {
                out.push((p.clone(), i));
            }
            c = c.div_rem(&p).0;
            d = d.div_rem(&p).0.sub(&c.derivative());
            i += 1;
        }
        out
    }
}

impl<C: Coeff + ToC64> UniPoly<C> {
    pub fn to_c64_coeffs(&self) -> Vec<C64> {
        self.coeffs.iter().map(|c| c.to_c64()).collect()
    }
}
