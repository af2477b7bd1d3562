use disq_core::corpus::{self, Example1Params, GSpec};
use disq_core::exactnum::{int, rat, Radical, Rat};
use disq_core::piecewise::PiecewiseFn;
use proptest::prelude::*;

fn rad(q: Rat) -> Radical {
    Radical::from_rat(q)
}

fn root(n: i64) -> Radical {
    Radical::sqrt(&int(n)).unwrap()
}

// Case tables written out directly from the definitions.

fn f1_table(x: &Rat) -> Radical {
    rad(if *x < int(0) { int(0) } else { int(1) })
}

fn f2_table(p: (&Rat, &Rat, &Rat), x: &Rat) -> Radical {
    let (a, big_a, big_b) = p;
    let v = if *x < int(0) {
        a.clone()
    } else if *x < rat(1, 4) {
        big_a.clone()
    } else if *x < rat(1, 2) {
        -big_a.clone()
    } else if *x < rat(3, 4) {
        big_b.clone()
    } else {
        -big_b.clone()
    };
    rad(v)
}

fn g_table(a: &Rat, b: &Rat, x: &Rat) -> Radical {
    let l = (b - a) / int(8);
    let at = |k: i64| a + &l * int(k);
    let v = if x < a || x > b {
        int(0)
    } else if *x < at(1) {
        (x - a) / &l
    } else if *x < at(3) {
        int(1)
    } else if *x < at(5) {
        (-x + at(4)) / &l
    } else if *x < at(7) {
        int(-1)
    } else {
        (x - b) / &l
    };
    rad(v)
}

fn h_table(i: usize, x: &Rat) -> Radical {
    let g = |a: (i64, i64), b: (i64, i64)| g_table(&rat(a.0, a.1), &rat(b.0, b.1), x);
    match i {
        0 => {
            if *x < int(0) {
                Radical::zero()
            } else if *x < rat(1, 16) {
                Radical::sqrt(&(x * int(24))).unwrap()
            } else if *x < rat(1, 8) {
                Radical::sqrt(&(int(2) - x * int(8))).unwrap()
            } else {
                Radical::one()
            }
        }
        1 => {
            if *x < int(0) {
                rad(-x / int(2))
            } else {
                g((0, 1), (1, 1))
            }
        }
        2 => &g((1, 8), (1, 4)) + &(&root(5) * &g((1, 4), (3, 8))),
        3 => &g((5, 8), (3, 4)) + &(&root(5) * &g((3, 4), (7, 8))),
        4 => &g((9, 64), (5, 32)) + &(&root(23) * &g((5, 32), (11, 64))),
        5 => &g((13, 64), (7, 32)) + &(&root(23) * &g((7, 32), (15, 64))),
        6 => &g((41, 64), (21, 32)) + &(&root(23) * &g((21, 32), (43, 64))),
        7 => &g((45, 64), (23, 32)) + &(&root(23) * &g((23, 32), (47, 64))),
        _ => unreachable!(),
    }
}

/// Left endpoint, midpoint and a point just short of the right endpoint of every piece,
/// plus the domain's right end.
fn probes(f: &PiecewiseFn) -> Vec<Rat> {
    let mut out = Vec::new();
    for p in f.pieces() {
        let w = &p.hi - &p.lo;
        out.push(p.lo.clone());
        out.push(&p.lo + &w / int(2));
        out.push(&p.hi - &w / int(1000));
    }
    out.push(f.domain().1.clone());
    out
}

fn check_against(f: &PiecewiseFn, table: impl Fn(&Rat) -> Radical) {
    for x in probes(f) {
        assert_eq!(f.eval(&x).unwrap(), table(&x), "at {x}");
    }
}

#[test]
fn step_functions_match_their_tables() {
    check_against(&corpus::build_f1(), f1_table);
    for (a, big_a, big_b) in [(int(1), int(3), int(2)), (rat(1, 2), int(5), rat(7, 3))] {
        let p = Example1Params::new(a.clone(), big_a.clone(), big_b.clone()).unwrap();
        check_against(&corpus::build_f2(&p), |x| f2_table((&a, &big_a, &big_b), x));
    }
}

#[test]
fn waves_match_their_tables() {
    for (a, b) in [(int(0), int(1)), (rat(1, 8), rat(1, 4)), (int(-1), int(1)), (rat(9, 64), rat(5, 32))] {
        let g = corpus::build_g(&GSpec::new(a.clone(), b.clone()).unwrap()).unwrap();
        check_against(&g, |x| g_table(&a, &b, x));
    }
}

#[test]
fn level_functions_match_their_tables() {
    for i in 0..8 {
        let h = corpus::build_h(i).unwrap();
        check_against(&h, |x| h_table(i, x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn level_functions_match_tables_anywhere(i in 0usize..8, k in -1024i64..=1024) {
        let x = rat(k, 1024);
        prop_assert_eq!(corpus::build_h(i).unwrap().eval(&x).unwrap(), h_table(i, &x));
    }

    #[test]
    fn step_function_norm_formula(a in 1i64..6, big_b in 1i64..6, extra in 1i64..6) {
        // pick A large enough for the strict parameter condition
        let big_a = 2 * a + big_b + extra;
        let p = Example1Params::new(int(a), int(big_a), int(big_b)).unwrap();
        let s = corpus::build_x2(&p);
        let g = s.gram().unwrap().matrix;
        let expect = rat(2 * a * a + big_a * big_a + big_b * big_b, 2);
        prop_assert_eq!(&g[1][1], &rad(expect));
        prop_assert!(g[0][1].is_zero());
        prop_assert_eq!(&g[0][0], &Radical::one());
    }
}

#[test]
fn same_level_supports_are_disjoint() {
    let supp: Vec<_> = (0..8).map(|i| corpus::build_h(i).unwrap().support().unwrap()).collect();
    for level in [&[2usize, 3][..], &[4, 5, 6, 7][..]] {
        for (k, &i) in level.iter().enumerate() {
            for &j in &level[k + 1..] {
                assert!(!supp[i].intersects(&supp[j]), "h{i} and h{j}");
            }
        }
    }
}

#[test]
fn lower_levels_are_constant_on_higher_supports() {
    let h: Vec<_> = (0..8).map(|i| corpus::build_h(i).unwrap()).collect();
    let level = |i: usize| match i {
        0 => 0,
        1 => 1,
        2 | 3 => 2,
        _ => 3,
    };
    for low in 0..4 {
        for high in 2..8 {
            if level(high) <= level(low) {
                continue;
            }
            let s = h[high].support().unwrap();
            assert!(h[low].constant_on(&s).unwrap().is_some(), "h{low} on supp h{high}");
        }
    }
    // h0 is not constant where h1 lives; that pair is outside the level structure
    assert!(h[0].constant_on(&h[1].support().unwrap()).unwrap().is_none());
}

#[test]
fn cross_gram_entries_vanish_except_the_first() {
    let g = corpus::build_x8().gram().unwrap();
    for i in 0..8 {
        for s in i + 1..8 {
            if (i, s) == (0, 1) {
                // 3√6/40 − 43/240
                let expect = &root(6).scale(&rat(3, 40)) - &rad(rat(43, 240));
                assert_eq!(g.matrix[0][1], expect);
                assert!(!g.matrix[0][1].is_zero());
            } else {
                assert!(g.matrix[i][s].is_zero(), "({i},{s})");
            }
        }
    }
    assert_eq!(g.rank, 8);
}

#[test]
fn h0_h1_inner_by_hand() {
    // ∫_0^{1/16} 8x√(24x) + ∫_{1/16}^{1/8} 8x√(2−8x) + ∫_{1/8}^1 g_[0,1]
    // first: 16√6 · (2/5)(1/16)^{5/2}
    let first = root(6).scale(&rat(1, 160));
    // u = 2 − 8x runs over [1, 3/2]; the integrand becomes (2u^{1/2} − u^{3/2})/8
    let anti = |u: Rat| {
        let su = Radical::sqrt(&u).unwrap();
        su.scale(&((int(4) / int(3) * &u - int(2) / int(5) * &u * &u) / int(8)))
    };
    let second = &anti(rat(3, 2)) - &anti(int(1));
    let third = rad(rat(-1, 16));
    let total = &(&first + &second) + &third;
    assert_eq!(corpus::build_x8().gram().unwrap().matrix[0][1], total);
}
