use atilde::perm::residue;
use atilde::{Cycle, CycleExpr, Error, PeriodicPermutation};
use proptest::prelude::*;

/// Random periodic permutation; `in_w` forces zero shift.
fn perm_strategy(n: usize, in_w: bool) -> impl Strategy<Value = PeriodicPermutation> {
    (
        Just((1..=n as i64).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(-2i64..=2, n),
    )
        .prop_map(move |(order, mut offsets)| {
            if in_w {
                let total: i64 = offsets[..n - 1].iter().sum();
                offsets[n - 1] = -total;
            }
            let window: Vec<i64> = order
                .iter()
                .zip(&offsets)
                .map(|(&r, &k)| r + k * n as i64)
                .collect();
            PeriodicPermutation::from_window(&window).unwrap()
        })
}

fn w_triple() -> impl Strategy<Value = (PeriodicPermutation, PeriodicPermutation, PeriodicPermutation)> {
    (2usize..=6).prop_flat_map(|n| (perm_strategy(n, true), perm_strategy(n, true), perm_strategy(n, true)))
}

fn any_pair() -> impl Strategy<Value = (PeriodicPermutation, PeriodicPermutation)> {
    (2usize..=6).prop_flat_map(|n| (perm_strategy(n, false), perm_strategy(n, false)))
}

proptest! {
    #[test]
    fn periodic_and_bijective((u, _, _) in w_triple()) {
        let n = u.n() as i64;
        for x in 1..=3 * n {
            prop_assert_eq!(u.apply(x + n), u.apply(x) + n);
        }
        let mut res: Vec<i64> = u.window().iter().map(|&v| residue(v, u.n())).collect();
        res.sort_unstable();
        prop_assert_eq!(res, (1..=n).collect::<Vec<_>>());
    }

    #[test]
    fn group_laws((u, v, w) in w_triple()) {
        let uv_w = u.compose(&v).unwrap().compose(&w).unwrap();
        let u_vw = u.compose(&v.compose(&w).unwrap()).unwrap();
        prop_assert_eq!(uv_w, u_vw);
        prop_assert!(u.compose(&u.inverse()).unwrap().is_identity());
        prop_assert!(u.inverse().compose(&u).unwrap().is_identity());
    }

    #[test]
    fn shift_is_a_homomorphism((u, v) in any_pair()) {
        prop_assert_eq!(u.compose(&v).unwrap().shift(), u.shift() + v.shift());
        prop_assert_eq!(u.inverse().shift(), -u.shift());
    }

    #[test]
    fn length_is_conjugation_invariant((u, w, _) in w_triple()) {
        let conj = w.conjugate_by(&u).unwrap();
        prop_assert_eq!(conj.reflection_length().unwrap(), w.reflection_length().unwrap());
    }

    #[test]
    fn length_is_subadditive((v, w, _) in w_triple()) {
        let vw = v.compose(&w).unwrap();
        prop_assert!(
            vw.reflection_length().unwrap() <= v.reflection_length().unwrap() + w.reflection_length().unwrap()
        );
    }

    #[test]
    fn left_and_right_division_agree((v, w, _) in w_triple()) {
        prop_assert_eq!(v.divides(&w).unwrap(), v.right_divides(&w).unwrap());
        let vw = v.compose(&w).unwrap();
        let additive = v.reflection_length().unwrap() + w.reflection_length().unwrap()
            == vw.reflection_length().unwrap();
        prop_assert_eq!(v.divides(&vw).unwrap(), additive);
        prop_assert_eq!(w.right_divides(&vw).unwrap(), additive);
    }

    #[test]
    fn cycle_notation_round_trips((u, _, _) in w_triple()) {
        let text = u.to_string();
        prop_assert_eq!(PeriodicPermutation::parse(u.n(), &text).unwrap(), u);
    }

    /// Length in `W` equals length in the quasi-parabolic subgroup of the
    /// residues the element moves, computed on the compressed element.
    #[test]
    fn restriction_to_support(
        (n, keep, small) in (3usize..=6).prop_flat_map(|n| (Just(n), 2usize..n)).prop_flat_map(|(n, m)| {
            (Just(n), prop::sample::subsequence((1..=n as i64).collect::<Vec<_>>(), m), perm_strategy(m, true))
        })
    ) {
        let m = keep.len() as i64;
        // spread the small element onto the residues in `keep`
        let lift = |x: i64| {
            let q = (x - 1).div_euclid(m);
            let j = (x - 1).rem_euclid(m) as usize;
            keep[j] + q * n as i64
        };
        let mut window: Vec<i64> = (1..=n as i64).collect();
        for (j, &t) in keep.iter().enumerate() {
            window[t as usize - 1] = lift(small.apply(j as i64 + 1));
        }
        let big = PeriodicPermutation::from_window(&window).unwrap();
        prop_assert!(big.is_in_w());
        prop_assert_eq!(big.reflection_length().unwrap(), small.reflection_length().unwrap());
    }
}

/// Both sides of the cycle-times-reflection identity, evaluated pointwise:
/// `(a_1..a_l)[h] (a_1, a_i + kn) = (a_(i+1)..a_l, a_1 + hn)[h+k] (a_2..a_i)[-k]`.
#[test]
fn cycle_times_reflection_identity() {
    fn tuples(n: usize, l: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for a in 1 - n as i64..=2 * n as i64 {
            if cur.iter().all(|&b| residue(b, n) != residue(a, n)) {
                cur.push(a);
                tuples(n, l, cur, out);
                cur.pop();
            }
        }
    }
    let mut checked = 0;
    for n in 2..=6usize {
        for l in 2..=4.min(n) {
            let mut all = Vec::new();
            tuples(n, l, &mut Vec::new(), &mut all);
            // thin out the larger cases while keeping every residue pattern
            let stride = (all.len() / 400).max(1);
            for a in all.iter().step_by(stride) {
                for i in 2..=l {
                    for h in -2..=2i64 {
                        for k in -2..=2i64 {
                            let nn = n as i64;
                            let cyc = |entries: Vec<i64>, shift| Cycle { entries, shift };
                            let lhs_cycle = PeriodicPermutation::from_cycles(
                                n,
                                &CycleExpr { cycles: vec![cyc(a.clone(), h)] },
                            )
                            .unwrap();
                            let refl = PeriodicPermutation::reflection(n, a[0], a[i - 1] + k * nn).unwrap();
                            let lhs = lhs_cycle.compose(&refl).unwrap();
                            let mut first: Vec<i64> = a[i..].to_vec();
                            first.push(a[0] + h * nn);
                            let second: Vec<i64> = a[1..i].to_vec();
                            let rhs = PeriodicPermutation::from_cycles(
                                n,
                                &CycleExpr { cycles: vec![cyc(first, h + k), cyc(second, -k)] },
                            )
                            .unwrap();
                            for x in 1..=2 * nn {
                                assert_eq!(lhs.apply(x), rhs.apply(x), "n={n} a={a:?} i={i} h={h} k={k} x={x}");
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn documented_values() {
    let c = PeriodicPermutation::parse(3, "(2,3)[1](1)[-1]").unwrap();
    assert_eq!(c.window(), &[-2, 3, 5]);
    let s = |a| PeriodicPermutation::reflection(3, a, a + 1).unwrap();
    assert_eq!(s(1).compose(&s(2)).unwrap().compose(&s(3)).unwrap(), c);
    assert_eq!((c.nu(), c.kappa().unwrap(), c.reflection_length().unwrap()), (2, 1, 3));
    let w = PeriodicPermutation::parse(6, "(1)[-1](2)[-1](3)[2](4)[1](5)[1](6)[-2]").unwrap();
    assert_eq!(w.window(), &[-5, -4, 15, 10, 11, -6]);
    let shifts: Vec<i64> = w.orbit_decomposition().orbits.iter().map(|o| o.shift).collect();
    assert_eq!(shifts, vec![-1, -1, 2, 1, 1, -2]);
    assert_eq!((w.nu(), w.kappa().unwrap(), w.reflection_length().unwrap()), (6, 3, 6));
    let r = PeriodicPermutation::parse(3, "(2,3)").unwrap();
    assert!(r.divides(&c).unwrap());
    assert!(!PeriodicPermutation::parse(3, "(2,6)").unwrap().divides(&c).unwrap());
    let off = PeriodicPermutation::from_window(&[2, 4, 3]).unwrap();
    assert!(!off.is_in_w());
    assert!(matches!(off.reflection_length(), Err(Error::NotInW { .. })));
}
