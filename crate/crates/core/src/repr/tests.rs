use super::*;
use crate::algebra::{enumerate_basis, AlgebraContext, Element, GeneratorKind, Twist};
use crate::structure::{central_generator, volume_element, TensorElement};

fn ctx(n: usize, k: u32) -> AlgebraContext {
    AlgebraContext::psi(n, k).unwrap()
}

fn g(c: &AlgebraContext, kind: GeneratorKind, a: usize) -> Element {
    Element::generator(c, kind, a).unwrap()
}

fn diag(entries: Vec<Scalar>) -> Matrix {
    let mut m = Matrix::zeros(entries.len(), entries.len());
    for (i, e) in entries.into_iter().enumerate() {
        m.set(i, i, e);
    }
    m
}

#[test]
fn action_examples() {
    let c = ctx(1, 1);
    let p0 = RepLabel::zero(&c);
    let v0 = FockVector::basis(1, 0);
    let v1 = FockVector::basis(1, 1);
    assert_eq!(act(&p0, &g(&c, GeneratorKind::Psi, 1), &v0).unwrap(), v1);
    assert!(act(&p0, &g(&c, GeneratorKind::Psid, 1), &v0).unwrap().is_zero());
    let w = g(&c, GeneratorKind::W, 1);
    assert_eq!(act(&p0, &w, &v1).unwrap(), v1);
    assert_eq!(act(&p0, &w, &v0).unwrap(), v0.scale(&c.q_pow(-1)).unwrap());
}

#[test]
fn matrix_examples() {
    let c = ctx(1, 1);
    let p0 = RepLabel::zero(&c);
    let w = g(&c, GeneratorKind::W, 1);
    assert_eq!(rep_matrix(&p0, &w).unwrap(), diag(vec![c.q_pow(-1), Scalar::one()]));
    assert!(rep_matrix(&p0, &central_generator(&c, 1).unwrap()).unwrap().is_identity());
    let (p, d) = (g(&c, GeneratorKind::Psi, 1), g(&c, GeneratorKind::Psid, 1));
    let lhs = &(&p * &d) + &(&(&d * &p) * c.q());
    let m = rep_matrix(&p0, &lhs).unwrap();
    assert_eq!(m, diag(vec![c.q().clone(), Scalar::one()]));
    assert_eq!(m, rep_matrix(&p0, &Element::omega_power(&c, 1, -1).unwrap()).unwrap());
    let f = rep_matrix(&p0, &volume_element(&c, 1).unwrap()).unwrap();
    assert_eq!(f, diag(vec![Scalar::from_int(-1), Scalar::one()]));
    let (pp, pm) = volume_splitting(&c, &p0).unwrap();
    assert_eq!(pp, diag(vec![Scalar::zero(), Scalar::one()]));
    assert_eq!(pm, diag(vec![Scalar::one(), Scalar::zero()]));
}

#[test]
fn braided_and_quantum_operators() {
    let c = ctx(2, 1);
    let e1 = FockVector::basis(2, 0b01);
    let e2 = FockVector::basis(2, 0b10);
    let e12 = FockVector::basis(2, 0b11);
    let mq = c.q_pow(-1).checked_neg();
    assert_eq!(braided_mul(&c, &e2, &e1).unwrap(), e12.scale(&mq).unwrap());
    assert!(braided_mul(&c, &e1, &e1).unwrap().is_zero());
    assert_eq!(braided_mul(&c, &e1, &e2).unwrap(), e12);
    assert_eq!(quantum_inner(&c, 1, &e1).unwrap(), FockVector::basis(2, 0));
    assert_eq!(quantum_exterior(&c, 2, &e1).unwrap(), e12.scale(&mq).unwrap());
    assert_eq!(quantum_inner(&c, 2, &e12).unwrap(), e1.scale(&c.q().checked_neg()).unwrap());
    assert!(quantum_inner(&c, 3, &e1).is_err());
    // ε_j^q is left braided multiplication by v_j.
    for j in 1..=2 {
        let vj = FockVector::basis(2, 1 << (j - 1));
        for l in 0..4 {
            let v = FockVector::basis(2, l);
            assert_eq!(quantum_exterior(&c, j, &v).unwrap(), braided_mul(&c, &vj, &v).unwrap());
        }
    }
}

#[test]
fn reshuffle_examples() {
    let c1 = ctx(1, 1);
    let (v0, v1) = (FockVector::basis(1, 0), FockVector::basis(1, 1));
    assert_eq!(tensor_reshuffle(&[v1.clone(), v0.clone()]).unwrap(), FockVector::basis(2, 0b01));
    assert_eq!(tensor_reshuffle(&[v1.clone(), v1.clone()]).unwrap(), FockVector::basis(2, 0b11));
    assert!(tensor_reshuffle(&[v1.clone(), FockVector::basis(2, 0)]).is_err());
    // t = 1 ⊗ ψ on (v(1), v(0)): both sides give −v(e1 + e2).
    let p0 = RepLabel::zero(&c1);
    let t = TensorElement::pure(&[Element::one(&c1), g(&c1, GeneratorKind::Psi, 1)]).unwrap();
    let big = crate::structure::gamma(&t).unwrap();
    let input = signed_reshuffle(&p0, &[v1.clone(), v0.clone()]).unwrap();
    let lhs = act(&p0.repeated(2), &big, &input).unwrap();
    let expect = FockVector::basis(2, 0b11).scale(&Scalar::from_int(-1)).unwrap();
    assert_eq!(lhs, expect);
    let m = tensor_rep_matrix(&p0, &t).unwrap();
    let mut col = FockVector::zero(2);
    for r in 0..4 {
        col = col.checked_add(&FockVector::basis(2, r).scale(m.get(r as usize, 0b01)).unwrap()).unwrap();
    }
    let parts = [FockVector::basis(1, 1), FockVector::basis(1, 1)];
    let rhs = signed_reshuffle(&p0, &parts).unwrap().scale(&col.amplitude(0b11)).unwrap();
    assert_eq!(rhs, expect);
    assert!(intertwines(&p0, &t).unwrap());
}

#[test]
fn intertwining_on_basis_tensors() {
    for k in [1, 2] {
        let c = ctx(1, k);
        let basis = enumerate_basis(&c);
        for label in RepLabel::all(&c) {
            for (i, x) in basis.iter().enumerate().step_by(3) {
                let y = &basis[(i * 7 + 1) % basis.len()];
                let t = TensorElement::pure(&[
                    Element::from_monomial(&c, x.clone(), Scalar::one()).unwrap(),
                    Element::from_monomial(&c, y.clone(), Scalar::one()).unwrap(),
                ])
                .unwrap();
                assert!(intertwines(&label, &t).unwrap(), "k={k} p={label} {x:?} {y:?}");
            }
        }
    }
}

#[test]
fn module_axiom_relations_and_center() {
    for (n, k) in [(1, 1), (1, 2), (2, 1)] {
        let c = ctx(n, k);
        let basis = enumerate_basis(&c);
        let zeta = c.zeta_2k();
        for label in RepLabel::all(&c) {
            for (id, ok) in relation_kill(&c, &label).unwrap() {
                assert!(ok, "{id} fails under p={label}");
            }
            for a in 1..=n {
                let z = rep_matrix(&label, &central_generator(&c, a).unwrap()).unwrap();
                let s = zeta.pow(label.components()[a - 1] as i64).unwrap();
                assert_eq!(z, Matrix::identity(1 << n).scale(&s).unwrap());
            }
            for (i, x) in basis.iter().enumerate().step_by(7) {
                let y = &basis[(i * 13 + 5) % basis.len()];
                let ex = Element::from_monomial(&c, x.clone(), Scalar::one()).unwrap();
                let ey = Element::from_monomial(&c, y.clone(), Scalar::one()).unwrap();
                let lhs = rep_matrix(&label, &(&ex * &ey)).unwrap();
                let rhs = rep_matrix(&label, &ex).unwrap().checked_mul(&rep_matrix(&label, &ey).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                let dl = rep_matrix_dual(&label, &(&ex * &ey)).unwrap();
                let dr = rep_matrix_dual(&label, &ex).unwrap().checked_mul(&rep_matrix_dual(&label, &ey).unwrap()).unwrap();
                assert_eq!(dl, dr);
                assert_eq!(dualize(&dualize(&lhs)), lhs);
            }
        }
    }
}

#[test]
fn half_twist_relations() {
    for twice in [1, 3] {
        let c = AlgebraContext::phi(2, Twist::from_twice(twice)).unwrap();
        for label in RepLabel::all(&c) {
            assert!(relation_kill(&c, &label).unwrap().iter().all(|(_, ok)| *ok), "2k={twice} p={label}");
        }
    }
}

#[test]
fn semisimple_small() {
    for (n, k, rank) in [(1, 1, 8), (1, 2, 16), (2, 1, 64)] {
        let r = semisimple_certificate(&ctx(n, k)).unwrap();
        assert_eq!(r.rank, rank);
        assert_eq!(r.modular_rank, Some(rank));
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn splitting() {
    let c = ctx(2, 1);
    for label in RepLabel::all(&c) {
        let r = splitting_report(&c, &label).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.rank_plus + r.rank_minus, 4);
        let f = rep_matrix(&label, &volume_element(&c, 2).unwrap()).unwrap();
        assert!(f.checked_mul(&f).unwrap().is_identity());
    }
}

#[test]
fn labels_and_text() {
    let c = ctx(2, 2);
    let l = RepLabel::new(&c, &[5, -1]).unwrap();
    assert_eq!(l.components(), &[1, 3]);
    assert_eq!(l.to_string(), "(1,3)");
    assert_eq!(RepLabel::all(&c).len(), 16);
    assert!(RepLabel::new(&c, &[0]).is_err());
    let v = FockVector::basis(2, 0b01).checked_add(&FockVector::basis(2, 0b11).scale(c.q()).unwrap()).unwrap();
    assert_eq!(v.to_text(&c), "v(10) + q*v(11)");
    assert_eq!(fock_order(2), vec!["00", "10", "01", "11"]);
}
