//! Randomised algebraic laws on linear combinations (not just basis monomials).

use proptest::prelude::*;

use qclifford::algebra::{
    enumerate_basis, from_alt_basis, to_alt_basis, AlgebraContext, Element, Involution, InvolutionKind, Monomial,
};
use qclifford::repr::{rep_matrix, RepLabel};
use qclifford::structure::{central_generator, commutator, component_exponents, gamma, takeuchi_component, TensorElement};
use qclifford::{Scalar, Twist};

fn contexts() -> Vec<AlgebraContext> {
    vec![
        AlgebraContext::psi(1, 1).unwrap(),
        AlgebraContext::psi(2, 1).unwrap(),
        AlgebraContext::psi(1, 2).unwrap(),
        AlgebraContext::psi(2, 2).unwrap(),
        AlgebraContext::phi(2, Twist::from_twice(3)).unwrap(),
    ]
}

/// Small coefficients: integers, q^{±1} and ζ.
fn coefficient(ctx: &AlgebraContext, code: u8) -> Scalar {
    match code % 6 {
        0 => Scalar::from_int(1),
        1 => Scalar::from_int(-2),
        2 => ctx.q().clone(),
        3 => ctx.q_pow(-1),
        4 => ctx.zeta_2k(),
        _ => Scalar::from_ratio(1, 3),
    }
}

fn element(ctx: &AlgebraContext, basis: &[Monomial], picks: &[(usize, u8)]) -> Element {
    Element::from_terms(ctx, picks.iter().map(|&(i, c)| (basis[i % basis.len()].clone(), coefficient(ctx, c)))).unwrap()
}

fn picks() -> impl Strategy<Value = Vec<(usize, u8)>> {
    prop::collection::vec((any::<usize>(), any::<u8>()), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associative_and_distributive(ci in 0usize..5, a in picks(), b in picks(), c in picks()) {
        let ctx = &contexts()[ci];
        let basis = enumerate_basis(ctx);
        let (x, y, z) = (element(ctx, &basis, &a), element(ctx, &basis, &b), element(ctx, &basis, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn z_is_central(ci in 0usize..5, a in picks()) {
        let ctx = &contexts()[ci];
        let x = element(ctx, &enumerate_basis(ctx), &a);
        for i in 1..=ctx.n() {
            prop_assert!(commutator(&central_generator(ctx, i).unwrap(), &x).unwrap().is_zero());
        }
    }

    #[test]
    fn representations_are_multiplicative(ci in 0usize..5, a in picks(), b in picks(), l in any::<usize>()) {
        let ctx = &contexts()[ci];
        let basis = enumerate_basis(ctx);
        let labels = RepLabel::all(ctx);
        let label = &labels[l % labels.len()];
        let (x, y) = (element(ctx, &basis, &a), element(ctx, &basis, &b));
        let lhs = rep_matrix(label, &(&x * &y)).unwrap();
        prop_assert_eq!(lhs, rep_matrix(label, &x).unwrap().checked_mul(&rep_matrix(label, &y).unwrap()).unwrap());
    }

    #[test]
    fn involutions_respect_products(ci in 0usize..4, a in picks(), b in picks()) {
        let ctx = &contexts()[ci];
        let basis = enumerate_basis(ctx);
        let (x, y) = (element(ctx, &basis, &a), element(ctx, &basis, &b));
        for kind in InvolutionKind::ALL {
            let Ok(f) = Involution::new(kind, ctx) else { continue };
            let (fx, fy) = (f.apply(&x).unwrap(), f.apply(&y).unwrap());
            let want = if kind.is_anti() { &fy * &fx } else { &fx * &fy };
            prop_assert_eq!(f.apply(&(&x * &y)).unwrap(), want, "{}", kind);
            prop_assert_eq!(f.apply(&fx).unwrap(), x.clone(), "{}", kind);
        }
    }

    #[test]
    fn gamma_is_multiplicative(ci in 0usize..4, a in picks(), b in picks(), c in picks(), d in picks()) {
        let ctx = &contexts()[ci];
        let basis = enumerate_basis(ctx);
        let s = TensorElement::pure(&[element(ctx, &basis, &a), element(ctx, &basis, &b)]).unwrap();
        let t = TensorElement::pure(&[element(ctx, &basis, &c), element(ctx, &basis, &d)]).unwrap();
        prop_assert_eq!(gamma(&s.checked_mul(&t).unwrap()).unwrap(), &gamma(&s).unwrap() * &gamma(&t).unwrap());
    }

    #[test]
    fn takeuchi_components_are_multiplicative(ci in 0usize..4, a in picks(), b in picks(), e in any::<usize>()) {
        let ctx = &contexts()[ci];
        let basis = enumerate_basis(ctx);
        let exps = component_exponents(ctx);
        let ex = &exps[e % exps.len()];
        let (x, y) = (element(ctx, &basis, &a), element(ctx, &basis, &b));
        let lhs = takeuchi_component(&(&x * &y), ex).unwrap();
        prop_assert_eq!(lhs, &takeuchi_component(&x, ex).unwrap() * &takeuchi_component(&y, ex).unwrap());
    }

    #[test]
    fn records_and_alternative_basis_round_trip(ci in 0usize..4, a in picks()) {
        let ctx = &contexts()[ci];
        let x = element(ctx, &enumerate_basis(ctx), &a);
        prop_assert_eq!(Element::from_records(ctx, &x.to_records()).unwrap(), x.clone());
        prop_assert_eq!(from_alt_basis(&to_alt_basis(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn scalar_field_laws(a in -20i64..20, b in 1i64..20, e in -4i64..5, j in 0i64..8) {
        let zeta = Scalar::cyclotomic_root(8);
        let x = Scalar::from_ratio(a, b).checked_add(&Scalar::t_pow(e)).unwrap();
        let y = zeta.pow(j).unwrap().checked_sub(&Scalar::t()).unwrap();
        if !x.is_zero() {
            prop_assert!(x.checked_mul(&x.inv().unwrap()).unwrap().is_one());
        }
        let lhs = x.checked_add(&y).unwrap().checked_mul(&y).unwrap();
        let rhs = x.checked_mul(&y).unwrap().checked_add(&y.checked_mul(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        for s in [&x, &y] {
            prop_assert_eq!(&Scalar::parse(&s.to_text("q", 8), "q", 8).unwrap(), s);
        }
    }
}
