//! Homogeneous forms and the decomposition of a quaternary form by powers of
//! the first variable.

use super::{Coeff, MultiPoly, PolyError};

/// A polynomial all of whose terms share one total degree. The zero
/// polynomial is admitted at every degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousForm<C> {
    poly: MultiPoly<C>,
    degree: u32,
}

impl<C: Coeff> HomogeneousForm<C> {
    pub fn new(poly: MultiPoly<C>, degree: u32) -> Result<Self, PolyError> {
        match poly.total_degree() {
            None => Ok(HomogeneousForm { poly, degree }),
            Some(d) if d == degree && poly.is_homogeneous() => Ok(HomogeneousForm { poly, degree }),
            _ => Err(PolyError::NotHomogeneous { expected: degree }),
        }
    }

    pub fn zero(arity: usize, degree: u32) -> Self {
        HomogeneousForm { poly: MultiPoly::zero(arity), degree }
    }

    pub fn constant(arity: usize, c: C) -> Self {
        HomogeneousForm { poly: MultiPoly::constant(arity, c), degree: 0 }
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly<C> {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.poly.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// `F = sum_j x0^j f_{n-j}` for a homogeneous form `F` of degree `n`: the
/// coefficient forms `f_{n-j}` live in the remaining variables. Works for
/// quaternary forms (surfaces) and ternary forms (plane curves).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X0Decomposition<C> {
    order: u32,
    source_arity: usize,
    parts: Vec<HomogeneousForm<C>>,
}

impl<C: Coeff> X0Decomposition<C> {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `f_{n-j}`, the degree `n-j` coefficient of `x0^j`.
    pub fn part(&self, j: u32) -> &HomogeneousForm<C> {
        &self.parts[j as usize]
    }

    pub fn parts(&self) -> impl Iterator<Item = (u32, &HomogeneousForm<C>)> {
        self.parts.iter().enumerate().map(|(j, f)| (j as u32, f))
    }

    /// Rebuild `sum_j x0^j f_{n-j}`; must reproduce the source exactly.
    pub fn reassemble(&self) -> MultiPoly<C> {
        let part_arity = self.source_arity - 1;
        let mut acc = MultiPoly::zero(self.source_arity);
        for (j, f) in self.parts.iter().enumerate() {
            for (e, c) in f.poly().terms() {
                let mut e2 = [0u16; 4];
                e2[0] = j as u16;
                e2[1..=part_arity].copy_from_slice(&e[..part_arity]);
                acc.add_term(e2, c.clone());
            }
        }
        acc
    }
}

impl<C: Coeff> MultiPoly<C> {
    /// Split a homogeneous form of degree `n` by powers of its first variable.
    pub fn decompose_by_x0(&self, n: u32) -> Result<X0Decomposition<C>, PolyError> {
        let part_arity = self.arity() - 1;
        if !(2..=3).contains(&part_arity) {
            return Err(PolyError::ArityOutOfRange(self.arity()));
        }
        if !self.is_homogeneous() || (!self.is_zero() && self.total_degree() != Some(n)) {
            return Err(PolyError::NotHomogeneous { expected: n });
        }
        let mut polys: Vec<MultiPoly<C>> = (0..=n).map(|_| MultiPoly::zero(part_arity)).collect();
        for (e, c) in self.terms() {
            let j = e[0] as usize;
            let mut e2 = [0u16; 4];
            e2[..part_arity].copy_from_slice(&e[1..=part_arity]);
            polys[j].add_term(e2, c.clone());
        }
        let parts = polys
            .into_iter()
            .enumerate()
            .map(|(j, p)| HomogeneousForm::new(p, n - j as u32).expect("degree forced by homogeneity"))
            .collect();
        Ok(X0Decomposition { order: n, source_arity: self.arity(), parts })
    }
}
