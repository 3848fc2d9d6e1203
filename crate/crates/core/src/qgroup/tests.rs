use super::*;
use crate::algebra::{AlgebraContext, GeneratorKind};

fn ctx(n: usize, k: u32) -> AlgebraContext {
    AlgebraContext::psi(n, k).unwrap()
}

fn failures(checks: &[RelationCheck]) -> Vec<String> {
    checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.relation_id, c.residual_text)).collect()
}

#[test]
fn cartan_data() {
    let a3 = CartanDatum::new(Family::A, 3).unwrap();
    assert_eq!(a3.a, vec![vec![2, -1], vec![-1, 2]]);
    let d2 = CartanDatum::new(Family::D, 2).unwrap();
    assert_eq!(d2.a, vec![vec![2, 0], vec![0, 2]]);
    let d3 = CartanDatum::new(Family::D, 3).unwrap();
    assert_eq!(d3.a, vec![vec![2, -1, -1], vec![-1, 2, 0], vec![-1, 0, 2]]);
    let b2 = CartanDatum::new(Family::B, 2).unwrap();
    assert_eq!(b2.a, vec![vec![2, -1], vec![-2, 2]]);
    assert_eq!(b2.d, vec![2, 1]);
    assert!(CartanDatum::new(Family::A, 1).is_err());
    assert_eq!("D".parse::<Family>().unwrap(), Family::D);
    assert!("C".parse::<Family>().is_err());
}

#[test]
fn image_examples() {
    let c = ctx(2, 1);
    let g = |k, a| Element::generator(&c, k, a).unwrap();
    let a = theta_image(&c, Family::A).unwrap();
    assert_eq!(a.e[0], &g(GeneratorKind::Psi, 1) * &g(GeneratorKind::Psid, 2));
    let d = theta_image(&c, Family::D).unwrap();
    assert_eq!(d.k[1], &(&g(GeneratorKind::W, 1) * &g(GeneratorKind::W, 2)) * c.q());
    let b = theta_image(&c, Family::B).unwrap();
    assert_eq!(b.e[1].to_text(), "p2");
    assert_eq!(b.k[1].to_text(), "s*w2");
    for img in [&a, &d, &b] {
        for (x, y) in img.k.iter().zip(&img.kinv) {
            assert!(x.checked_mul(y).unwrap().is_one());
        }
    }
}

#[test]
fn relation_suites() {
    for k in [1, 2] {
        for (family, n) in [(Family::A, 2), (Family::A, 3), (Family::D, 2), (Family::D, 3), (Family::B, 2)] {
            let img = theta_image(&ctx(n, k), family).unwrap();
            let checks = check_uqgk_relations(&img).unwrap();
            assert!(failures(&checks).is_empty(), "{family} n={n} k={k}: {:?}", failures(&checks));
            assert!(degree_bookkeeping(&img).iter().all(|d| d.pass));
        }
    }
}

#[test]
fn worked_relations_type_a() {
    let img = theta_image(&ctx(3, 1), Family::A).unwrap();
    let checks = check_uqgk_relations(&img).unwrap();
    let by_id = |id: &str| checks.iter().find(|c| c.relation_id == id).unwrap().pass;
    assert!(by_id("EF[1,1]"));
    assert!(by_id("serreE[1,2]"));
    // The alternative form of the adjacent Serre relation.
    let q = img.ctx.q().clone();
    let inner = bracket(&img.e[0], &img.e[1], &q).unwrap();
    assert!(bracket(&img.e[0], &inner, &img.ctx.q_pow(-1)).unwrap().is_zero());
}

#[test]
fn broken_image_is_reported() {
    let mut img = theta_image(&ctx(2, 1), Family::A).unwrap();
    img.f[0] = img.e[0].clone();
    let checks = check_uqgk_relations(&img).unwrap();
    assert!(!failures(&checks).is_empty());
}

#[test]
fn induced_involutions() {
    let img = theta_image(&ctx(2, 1), Family::A).unwrap();
    let checks = induced_involution_check(&img).unwrap();
    let by_id = |id: &str| checks.iter().find(|c| c.relation_id == id).unwrap();
    assert!(by_id("dagger[1]").pass);
    assert!(checks.iter().filter(|c| c.relation_id == "duality[1]").all(|c| c.pass));
    // The transpose is a plain anti-involution, so E^t = −E for E = ψ_1ψ_2*.
    let t = checks.iter().find(|c| c.lhs_text.starts_with("E^t")).unwrap();
    assert!(!t.pass);
    assert_eq!(t.residual, img.e[0].scale(&Scalar::from_int(-2)).unwrap());
    assert!(checks.iter().find(|c| c.lhs_text.starts_with("K^t")).unwrap().pass);
}

#[test]
fn mixed_identities() {
    for (n, k) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let checks = identity_checks(&ctx(n, k)).unwrap();
        assert!(failures(&checks).is_empty(), "n={n} k={k}: {:?}", failures(&checks));
    }
}
