use atilde::oracle::{enumerate_divisors, WindowConfig};
use atilde::{CoxeterSystem, MonoidElement, Simple};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pool(n: usize) -> (CoxeterSystem, Vec<Simple>) {
    let sys = CoxeterSystem::standard(n).unwrap();
    let cfg = WindowConfig::new(n, 2, n).unwrap();
    let divs = enumerate_divisors(&sys, &cfg).unwrap();
    (sys, divs)
}

fn random_factors(rng: &mut ChaCha8Rng, divs: &[Simple], max: usize) -> Vec<Simple> {
    let k = rng.gen_range(0..=max);
    (0..k).map(|_| divs.choose(rng).unwrap().clone()).collect()
}

#[test]
fn lattice_laws() {
    for n in 2..=3 {
        let (sys, divs) = pool(n);
        for (a, b) in divs.iter().cartesian_product(&divs) {
            let m = sys.meet(a, b).unwrap();
            let j = sys.join(a, b).unwrap();
            assert_eq!(m, sys.meet(b, a).unwrap());
            assert_eq!(j, sys.join(b, a).unwrap());
            assert_eq!(sys.meet(a, &j).unwrap(), *a, "absorption {a} {b}");
            assert_eq!(sys.join(a, &m).unwrap(), *a, "absorption {a} {b}");
        }
        for a in &divs {
            assert_eq!(sys.meet(a, a).unwrap(), *a);
            assert_eq!(sys.join(a, a).unwrap(), *a);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..300 {
            let (a, b, c) = (
                divs.choose(&mut rng).unwrap(),
                divs.choose(&mut rng).unwrap(),
                divs.choose(&mut rng).unwrap(),
            );
            let m1 = sys.meet(&sys.meet(a, b).unwrap(), c).unwrap();
            let m2 = sys.meet(a, &sys.meet(b, c).unwrap()).unwrap();
            assert_eq!(m1, m2);
            let j1 = sys.join(&sys.join(a, b).unwrap(), c).unwrap();
            let j2 = sys.join(a, &sys.join(b, c).unwrap()).unwrap();
            assert_eq!(j1, j2);
        }
    }
}

#[test]
fn complements_and_tau() {
    for n in 2..=4 {
        let (sys, divs) = pool(n);
        for a in &divs {
            let r = sys.right_complement(a);
            assert_eq!(a.perm().compose(r.perm()).unwrap(), *sys.c());
            assert_eq!(a.length() + r.length(), n);
            assert_eq!(sys.right_complement(&r), sys.tau_inverse(a), "{a}");
            assert_eq!(sys.left_complement(&sys.right_complement(a)), *a);
            assert_eq!(sys.tau_inverse(&sys.tau(a)), *a);
        }
    }
}

#[test]
fn tau_is_an_automorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..=4 {
        let (sys, divs) = pool(n);
        let c = sys.element_of(&sys.delta());
        for _ in 0..60 {
            let u = sys.normalize(random_factors(&mut rng, &divs, 4)).unwrap();
            let v = sys.normalize(random_factors(&mut rng, &divs, 4)).unwrap();
            let uv = sys.multiply(&u, &v).unwrap();
            let tu = sys.tau_element(&u, 1);
            let tv = sys.tau_element(&v, 1);
            assert_eq!(sys.tau_element(&uv, 1), sys.multiply(&tu, &tv).unwrap());
            assert_eq!(sys.multiply(&c, &u).unwrap(), sys.multiply(&tu, &c).unwrap());
        }
    }
}

fn is_left_greedy(sys: &CoxeterSystem, u: &MonoidElement) -> bool {
    u.factors().iter().all(|f| !f.is_identity())
        && u.factors()
            .windows(2)
            .all(|w| sys.meet(&sys.right_complement(&w[0]), &w[1]).unwrap().is_identity())
}

#[test]
fn normal_forms_are_unique() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=4 {
        let (sys, divs) = pool(n);
        for _ in 0..80 {
            let fs = random_factors(&mut rng, &divs, 6);
            let whole = sys.normalize(fs.clone()).unwrap();
            assert!(is_left_greedy(&sys, &whole));
            let cut = rng.gen_range(0..=fs.len());
            let left = sys.normalize(fs[..cut].to_vec()).unwrap();
            let right = sys.normalize(fs[cut..].to_vec()).unwrap();
            assert_eq!(sys.multiply(&left, &right).unwrap(), whole);
            let image = fs
                .iter()
                .fold(atilde::PeriodicPermutation::identity(n), |acc, f| acc.compose(f.perm()).unwrap());
            assert_eq!(whole.perm(n).unwrap(), image);
            let length: usize = fs.iter().map(Simple::length).sum();
            assert_eq!(whole.length(), length);
            let right_form = sys.right_normalize(fs.clone()).unwrap();
            let right_image = right_form
                .iter()
                .fold(atilde::PeriodicPermutation::identity(n), |acc, f| acc.compose(f.perm()).unwrap());
            assert_eq!(right_image, image);
            assert_eq!(right_form.len(), whole.len());
        }
    }
}

#[test]
fn cancellation() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (sys, divs) = pool(3);
    for _ in 0..200 {
        let x = sys.normalize(random_factors(&mut rng, &divs, 3)).unwrap();
        let a = sys.normalize(random_factors(&mut rng, &divs, 3)).unwrap();
        let b = sys.normalize(random_factors(&mut rng, &divs, 3)).unwrap();
        let xa = sys.multiply(&x, &a).unwrap();
        let xb = sys.multiply(&x, &b).unwrap();
        assert_eq!(xa == xb, a == b);
        let ax = sys.multiply(&a, &x).unwrap();
        let bx = sys.multiply(&b, &x).unwrap();
        assert_eq!(ax == bx, a == b);
    }
}

#[test]
fn documented_products() {
    let sys = CoxeterSystem::standard(3).unwrap();
    let e = |s: &str| sys.parse_element(s).unwrap();
    let a = e("(2,3)");
    assert_eq!(sys.multiply(&a, &MonoidElement::identity()).unwrap(), a);
    let aa = sys.multiply(&a, &a).unwrap();
    assert_eq!(aa.len(), 2);
    assert_eq!(sys.divides_power_of_c(&aa), 2);
    assert_eq!(sys.divides_power_of_c(&a), 1);
    assert_eq!(sys.divides_power_of_c(&MonoidElement::identity()), 0);
    let whole = sys.multiply(&a, &e("(1)[-1](3)[1]")).unwrap();
    assert_eq!(whole.factors(), &[sys.delta()]);
    let five = CoxeterSystem::standard(5).unwrap();
    let j = five
        .join(&five.parse_simple("(2,3)").unwrap(), &five.parse_simple("(4,5)").unwrap())
        .unwrap();
    assert_eq!(j, five.parse_simple("(2,3)(4,5)").unwrap());
    let m = sys
        .meet(&sys.parse_simple("(2,3)").unwrap(), &sys.parse_simple("(3,5)").unwrap())
        .unwrap();
    assert!(m.is_identity());
    let j = sys
        .join(&sys.parse_simple("(2,3)").unwrap(), &sys.parse_simple("(3,5)").unwrap())
        .unwrap();
    assert_eq!(j, sys.delta());
}
