use disq_core::corpus::{self, Example1Params};
use disq_core::exactnum::{int, rat, Radical, Rat};
use disq_core::piecewise::{PieceForm, PiecewiseFn, Poly};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

#[derive(Clone, Copy, Debug)]
enum Roots {
    Never,
    Always,
    Mixed,
}

/// A polynomial of degree at most two, possibly times `√(x + 2)`.
fn form(roots: Roots) -> impl Strategy<Value = PieceForm> {
    (prop::collection::vec(small_rat(), 0..=3), any::<bool>()).prop_map(move |(cs, coin)| {
        let p = Poly::new(cs);
        let root = match roots {
            Roots::Never => false,
            Roots::Always => true,
            Roots::Mixed => coin,
        };
        if root && !p.is_zero() {
            PieceForm::SqrtAffine { poly: p, alpha: int(1), beta: int(2) }.canonical().unwrap()
        } else {
            PieceForm::Poly(p)
        }
    })
}

/// Breakpoints on a 1/16 grid of `[-1, 1]`.
fn function_with(roots: Roots) -> impl Strategy<Value = PiecewiseFn> {
    prop::collection::btree_set(-15i64..=15, 0..4)
        .prop_flat_map(move |inner| {
            let mut breaks = vec![int(-1)];
            breaks.extend(inner.into_iter().map(|k| rat(k, 16)));
            breaks.push(int(1));
            let n = breaks.len() - 1;
            (Just(breaks), prop::collection::vec(form(roots), n))
        })
        .prop_map(|(breaks, forms)| PiecewiseFn::from_breaks(&breaks, forms).unwrap())
}

fn function() -> impl Strategy<Value = PiecewiseFn> {
    function_with(Roots::Mixed)
}

fn point() -> impl Strategy<Value = Rat> {
    (-256i64..=256).prop_map(|k| rat(k, 256))
}

/// Two functions sharing one piece kind, so every combination stays representable.
fn same_kind_pair() -> impl Strategy<Value = (PiecewiseFn, PiecewiseFn)> {
    prop_oneof![Just(Roots::Never), Just(Roots::Always)].prop_flat_map(|r| (function_with(r), function_with(r)))
}

fn corpus_functions() -> Vec<PiecewiseFn> {
    let mut v = vec![corpus::build_f1(), corpus::build_f2(&Example1Params::default())];
    v.extend((0..8).map(|i| corpus::build_h(i).unwrap()));
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn product_evaluates_pointwise(f in function(), g in function(), xs in prop::collection::vec(point(), 5)) {
        let fg = f.mul(&g).unwrap();
        // breakpoints included: the half-open convention is shared
        let mut probes = xs;
        probes.extend(f.breakpoints());
        for x in probes {
            prop_assert_eq!(fg.eval(&x).unwrap(), &f.eval(&x).unwrap() * &g.eval(&x).unwrap());
        }
    }

    #[test]
    fn integral_is_linear((f, g) in same_kind_pair(), c1 in small_rat(), c2 in small_rat()) {
        let r1 = Radical::from_rat(c1);
        let r2 = Radical::from_rat(c2);
        let lhs = PiecewiseFn::scale_add(&r1, &f, &r2, &g).unwrap().integrate().unwrap();
        let rhs = &(&r1 * &f.integrate().unwrap()) + &(&r2 * &g.integrate().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn corpus_products_evaluate_pointwise(i in 0usize..10, j in 0usize..10, x in point()) {
        let fs = corpus_functions();
        let p = fs[i].mul(&fs[j]).unwrap();
        prop_assert_eq!(p.eval(&x).unwrap(), &fs[i].eval(&x).unwrap() * &fs[j].eval(&x).unwrap());
    }

    #[test]
    fn square_integrals_are_nonnegative(f in function()) {
        prop_assert!(!f.inner(&f).unwrap().is_negative());
    }
}

#[test]
fn corpus_square_integrals_are_positive() {
    for f in corpus_functions() {
        assert!(f.inner(&f).unwrap().is_positive());
    }
}

#[test]
fn linearity_with_a_root_bearing_function() {
    // the polynomial function vanishes where h0 carries its root pieces
    let h0 = corpus::build_h(0).unwrap();
    let p = PiecewiseFn::from_breaks(
        &[int(-1), int(0), rat(1, 8), int(1)],
        vec![
            PieceForm::Poly(Poly::new(vec![int(0), int(0), int(1)])),
            PieceForm::zero(),
            PieceForm::Poly(Poly::linear(int(3), int(-1))),
        ],
    )
    .unwrap();
    let (c1, c2) = (Radical::from_rat(rat(-2, 3)), Radical::from_rat(rat(5, 7)));
    let lhs = PiecewiseFn::scale_add(&c1, &h0, &c2, &p).unwrap().integrate().unwrap();
    let rhs = &(&c1 * &h0.integrate().unwrap()) + &(&c2 * &p.integrate().unwrap());
    assert_eq!(lhs, rhs);
}
