//! Shared helpers for the integration suites: seeded random forms and
//! brute-force enumeration oracles.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qsphere::poly::HomogeneousForm;
use qsphere::{QForm, QPoly, Rat};

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Random ternary form of the given degree with single-digit coefficients;
/// never the zero form.
pub fn random_form(rng: &mut ChaCha8Rng, degree: u32) -> QForm {
    loop {
        let mut poly = QPoly::zero(3);
        for a in 0..=degree as u16 {
            for b in 0..=(degree as u16 - a) {
                let c = degree as u16 - a - b;
                if rng.gen_bool(0.4) {
                    let coeff: i64 = rng.gen_range(-5..=5);
                    poly.add_term([a, b, c, 0], rat(coeff));
                }
            }
        }
        if !poly.is_zero() {
            return HomogeneousForm::new(poly, degree).unwrap();
        }
    }
}

/// Random ternary form of the given degree that `A2` does not divide.
pub fn random_form_coprime_a2(rng: &mut ChaCha8Rng, degree: u32) -> QForm {
    loop {
        let form = random_form(rng, degree);
        let divisible = form
            .poly()
            .divide_exact(&QPoly::a2_affine())
            .unwrap()
            .is_some();
        if !divisible {
            return form;
        }
    }
}

/// Partition count by direct enumeration (parts bounded below), the oracle
/// for the recurrence.
pub fn brute_force_partitions(n: u32) -> u64 {
    fn count(remaining: u32, min_part: u32) -> u64 {
        if remaining == 0 {
            return 1;
        }
        (min_part..=remaining).map(|part| count(remaining - part, part)).sum()
    }
    count(n, 1)
}
