//! Property suites for the exact polynomial layer: ring laws, derivative
//! identities, divisibility bookkeeping, and decomposition consistency.

use proptest::prelude::*;

use qsphere::poly::HomogeneousForm;
use qsphere::{QPoly, Rat};

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Random sparse polynomial of the given arity: up to `max_terms` terms with
/// exponents below 4 and single-digit coefficients.
fn arb_poly(arity: usize, max_terms: usize) -> impl Strategy<Value = QPoly> {
    let term = (
        prop::collection::vec(0u16..4, arity),
        -9i64..=9,
    );
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let mut p = QPoly::zero(arity);
        for (exps, c) in terms {
            let mut e = [0u16; 4];
            e[..arity].copy_from_slice(&exps);
            p.add_term(e, rat(c));
        }
        p
    })
}

/// Random homogeneous ternary form of degree `d`.
fn arb_form(d: u16, max_terms: usize) -> impl Strategy<Value = QPoly> {
    let term = ((0u16..=d), (0u16..=d), -9i64..=9);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let mut p = QPoly::zero(3);
        for (a, b, c) in terms {
            if a + b <= d {
                p.add_term([a, b, d - a - b, 0], rat(c));
            }
        }
        p
    })
}

proptest! {
    #[test]
    fn ring_laws(a in arb_poly(3, 5), b in arb_poly(3, 5), c in arb_poly(3, 5)) {
        // commutativity
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        // associativity
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        // distributivity
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn partial_derivatives_commute(f in arb_poly(3, 6)) {
        let dxy = f.partial(0).unwrap().partial(1).unwrap();
        let dyx = f.partial(1).unwrap().partial(0).unwrap();
        prop_assert_eq!(dxy, dyx);
    }

    #[test]
    fn euler_identity((d, f) in (1u16..5).prop_flat_map(|d| (Just(d), arb_form(d, 6)))) {
        prop_assume!(!f.is_zero());
        let form = HomogeneousForm::new(f.clone(), d as u32).unwrap();
        let mut acc = QPoly::zero(3);
        for i in 0..3 {
            let xi = QPoly::var(3, i);
            acc = &acc + &(&xi * &form.poly().partial(i).unwrap());
        }
        prop_assert_eq!(acc, f.scale(&rat(d as i64)));
    }

    #[test]
    fn a2_power_is_additive(g in arb_poly(3, 5), k in 0u32..4) {
        prop_assume!(!g.is_zero());
        let a2 = QPoly::a2_affine();
        let base = g.max_power_dividing(&a2).unwrap().finite().unwrap();
        let boosted = (&a2.pow(k) * &g).max_power_dividing(&a2).unwrap().finite().unwrap();
        prop_assert_eq!(boosted, base + k);
    }

    #[test]
    fn exact_division_round_trip(f in arb_poly(3, 4), g in arb_poly(3, 4)) {
        prop_assume!(!g.is_zero());
        let prod = &f * &g;
        prop_assert_eq!(prod.divide_exact(&g).unwrap(), Some(f));
    }

    #[test]
    fn eval_decompose_consistency(
        d in 1u16..5,
        f in arb_poly(4, 6),
        px in -5i64..=5, py in -5i64..=5, pz in -5i64..=5, pw in -5i64..=5,
        den in 1i64..=3,
    ) {
        // homogenize the random polynomial to a quaternary form of degree d
        let mut form = QPoly::zero(4);
        for (e, c) in f.terms() {
            let total: u16 = e.iter().sum();
            if total <= d {
                let mut e2 = *e;
                e2[0] += d - total;
                form.add_term(e2, c.clone());
            }
        }
        prop_assume!(!form.is_zero());
        let n = d as u32;
        let decomp = form.decompose_by_x0(n).unwrap();
        prop_assert_eq!(decomp.reassemble(), form.clone());

        let p: Vec<Rat> = [px, py, pz, pw].iter().map(|&v| Rat::new(v.into(), den.into())).collect();
        let direct = form.eval(&p);
        let mut assembled = Rat::from_integer(0.into());
        for (j, part) in decomp.parts() {
            let tail = part.poly().eval(&p[1..4]);
            let mut x0j = Rat::from_integer(1.into());
            for _ in 0..j {
                x0j *= &p[0];
            }
            assembled += x0j * tail;
        }
        prop_assert_eq!(direct, assembled);
    }
}

