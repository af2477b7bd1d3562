//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines always print; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use disq_core::corpus::{self, Example1Params, GSpec};
use disq_core::discretize::*;
use disq_core::exactnum::{int, rat, RadSign, Radical, Rat};
use disq_core::piecewise::PiecewiseFn;
use disq_oracle::brute::{self, PcSpace};
use disq_oracle::ratlin::Q;
use disq_oracle::{hp, quad};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn r(n: i64, d: i64) -> Radical {
    Radical::from_rat(rat(n, d))
}

fn x2() -> Subspace {
    corpus::build_x2(&Example1Params::default())
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn step_function_pipeline() -> Check {
    let s = x2();
    let g = s.gram().map_err(err)?;
    ensure!(g.matrix == vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(15, 2)]], "gram {:?}", g.matrix);
    let rule = corpus::golden_rule("ex1-negative").unwrap().rule;
    let rep = verify_rule(&s, &rule).map_err(err)?;
    ensure!(rep.pass && rep.residuals.iter().all(|p| p.residual.is_zero()), "verify failed: {:?}", rep.failing);
    ensure!(rule.weights()[0] == r(-3, 2), "λ1 = {}", rule.weights()[0]);
    ensure!(rule.weights()[0].sign() == RadSign::Negative, "λ1 not negative");
    Ok("gram [[1,0],[0,15/2]], residuals 0, λ1 = -3/2 < 0".into())
}

/// Region table for X2 at the default parameters, written from the definitions.
fn x2_table() -> PcSpace {
    PcSpace {
        breaks: vec![int(-1), int(0), rat(1, 4), rat(1, 2), rat(3, 4), int(1)],
        values: vec![
            vec![int(0), int(1), int(1), int(1), int(1)],
            vec![int(1), int(3), int(-3), int(2), int(-2)],
        ],
    }
}

fn as_q(v: &Radical) -> Result<Q, String> {
    v.as_rat().ok_or_else(|| format!("irrational certificate entry {v}"))
}

/// Re-checks one infeasibility reason with the oracle's columns and target.
fn reason_holds(table: &PcSpace, cols: &[Vec<Q>], reason: &Infeasibility) -> Result<bool, String> {
    let b = table.target();
    let yt_m = |y: &[Q]| -> Vec<Q> {
        cols.iter().map(|c| c.iter().zip(y).fold(Q::zero(), |a, (u, v)| a + u * v)).collect()
    };
    let yt_b = |y: &[Q]| b.iter().zip(y).fold(Q::zero(), |a, (u, v)| a + u * v);
    Ok(match reason {
        Infeasibility::RankDeficient { nodes, .. } => *nodes == cols.len() && *nodes < table.gram_rank(),
        Infeasibility::Inconsistent { certificate, .. } => {
            let y = certificate.iter().map(as_q).collect::<Result<Vec<_>, _>>()?;
            yt_m(&y).iter().all(Zero::is_zero) && !yt_b(&y).is_zero()
        }
        Infeasibility::PositivityInfeasible { certificate, combination } => {
            let y = certificate.iter().map(as_q).collect::<Result<Vec<_>, _>>()?;
            let w = yt_m(&y);
            w == combination.iter().map(as_q).collect::<Result<Vec<_>, _>>()?
                && w.iter().all(|v| !v.is_negative())
                && w.iter().any(|v| !v.is_zero())
                && !yt_b(&y).is_positive()
        }
    })
}

fn check_certificate(table: &PcSpace, sub: &Subspace, cert: &MinCertificate, positive: bool) -> Result<(), String> {
    ensure!(recheck_min(sub, cert).map_err(err)?.is_empty(), "library recheck found problems");
    ensure!(verify_rule(sub, &cert.witness).map_err(err)?.pass, "witness does not verify");
    for lvl in &cert.exhaustion {
        for rec in &lvl.patterns {
            let cols: Vec<Vec<Q>> = rec
                .pattern
                .iter()
                .map(|&k| table.moment(table.region_of(&cert.classes[k].representative).unwrap()))
                .collect();
            ensure!(!brute::pattern_feasible(&cols, &table.target(), positive), "pattern {:?} is feasible", rec.pattern);
            ensure!(reason_holds(table, &cols, &rec.reason)?, "reason for {:?} does not re-check", rec.pattern);
        }
    }
    Ok(())
}

fn minimality() -> Check {
    let s = x2();
    let table = x2_table();
    let mut notes = Vec::new();
    for (mode, positive) in [(Mode::Signed, false), (Mode::Positive, true)] {
        let cert = decide_min(&s, &MinOptions::new(mode)).map_err(err)?;
        ensure!(cert.m_min == 3, "{mode}: m_min = {}", cert.m_min);
        let counts: Vec<usize> = cert.exhaustion.iter().map(|l| l.count).collect();
        ensure!(counts == vec![5, 15], "{mode}: exhaustion counts {counts:?}");
        ensure!(brute::brute_min(&table, positive).0 == 3, "{mode}: oracle disagrees");
        check_certificate(&table, &s, &cert, positive)?;
        if positive {
            ensure!(cert.witness.all_positive(), "positive witness has a nonpositive weight");
        }
        notes.push(format!("{mode} m=3"));
    }
    Ok(format!("{}, 5 + 15 patterns re-checked by the brute-force oracle", notes.join(", ")))
}

fn no_positive_weights() -> Check {
    let s = x2();
    let nodes = vec![rat(-1, 2), rat(1, 8), rat(3, 8)];
    let WeightSolution::Solved { particular, null_basis } = solve_weights(&s, &nodes).map_err(err)? else {
        return Err("system reported infeasible".into());
    };
    ensure!(null_basis.is_empty(), "solution is not unique");
    ensure!(particular == vec![r(-3, 2), r(1, 2), r(1, 2)], "weights {particular:?}");
    match positive_feasible(&particular, &null_basis) {
        Positivity::NoPositive { combination, .. } => {
            ensure!(check_no_positive(&particular, &null_basis, &combination), "certificate does not re-check");
        }
        Positivity::Witness { .. } => return Err("found positive weights".into()),
    }
    Ok("unique weights (-3/2, 1/2, 1/2), no positive solution".into())
}

fn level_function_constructions() -> Check {
    let g01 = corpus::build_g(&GSpec::new(int(0), int(1)).unwrap()).map_err(err)?;
    ensure!(g01.inner(&g01).map_err(err)? == r(2, 3), "∫g² ≠ 2/3");
    let x8 = corpus::build_x8();
    let g = x8.gram().map_err(err)?;
    for (i, v) in [(0, r(1, 1)), (1, r(3, 4)), (2, r(1, 2)), (4, r(1, 4))] {
        ensure!(g.matrix[i][i] == v, "∫h{i}² = {}", g.matrix[i][i]);
    }
    for i in 0..8 {
        for s in i + 1..8 {
            if (i, s) != (0, 1) {
                ensure!(g.matrix[i][s].is_zero(), "⟨h{i},h{s}⟩ = {}", g.matrix[i][s]);
            }
        }
    }
    let exact = &g.matrix[0][1];
    let numeric = quad::h0_h1_inner(6);
    let diff = hp::abs(&(numeric - hp::radical(exact)));
    ensure!(diff < hp::ten_pow_neg(40), "quadrature differs by {:e}", hp::to_f64(&diff));
    Ok(format!("⟨h0,h1⟩ = {} ≈ {}, quadrature agrees to {:.1e}", exact, exact.float_string(), hp::to_f64(&diff)))
}

fn rule_audit() -> Check {
    let x8 = corpus::build_x8();
    let rule = corpus::golden_rule("ex2-nine").unwrap().rule;
    let rep = verify_rule(&x8, &rule).map_err(err)?;
    for i in 0..8 {
        ensure!(rep.residual((i, i)).unwrap().residual.is_zero(), "diagonal ({i},{i}) fails");
    }
    ensure!(rep.failing.iter().all(|&p| p == (0, 1)), "unexpected failing pairs {:?}", rep.failing);
    let res = &rep.residual((0, 1)).unwrap().residual;
    let inner = &x8.gram().map_err(err)?.matrix[0][1];
    ensure!(*res == -inner, "(h0,h1) residual {res} is not -⟨h0,h1⟩");
    if res.is_zero() {
        Ok("all 36 pair conditions hold; agrees with the exactness claim".into())
    } else {
        Ok(format!(
            "8 diagonal + 27 cross conditions exact; (h0,h1) residual {res} ≠ 0: DISAGREES with the claim that the nine-node rule is exact"
        ))
    }
}

fn lower_bounds() -> Check {
    let x8 = corpus::build_x8();
    let cert = support_lower_bound(&x8, 0, &[4, 5, 6, 7]).map_err(err)?;
    ensure!(cert.bound == 8, "support bound {}", cert.bound);
    match forced_region_contradiction(&x8, &cert, 0, 1).map_err(err)? {
        Refinement::Improved { bound, first, second } => {
            ensure!(bound == 9, "refined bound {bound}");
            ensure!(first.forced_sum == r(1, 1) && second.forced_sum == r(3, 4), "sums {} and {}", first.forced_sum, second.forced_sum);
        }
        Refinement::NotApplicable { reason } => return Err(reason),
    }
    Ok("bound 8, refined to 9 by forced sums 1 vs 3/4".into())
}

fn caratheodory() -> Check {
    let s = x2();
    let out = caratheodory_reduce(&s, &corpus::x2_measure_rule(), Mode::Positive).map_err(err)?;
    ensure!(out.rule.len() <= 3, "{} nodes", out.rule.len());
    ensure!(verify_rule(&s, &out.rule).map_err(err)?.pass, "reduced rule does not verify");
    ensure!(out.rule.all_positive(), "reduced rule has a nonpositive weight");
    Ok(format!("5 -> {} positive nodes", out.rule.len()))
}

// Property suites.

fn small_radical() -> impl Strategy<Value = Radical> {
    prop::collection::vec((1u32..40, -100i64..=100, 1i64..=100), 0..=3).prop_map(|terms| {
        Radical::from_terms(terms.into_iter().map(|(d, n, q)| (d.into(), rat(n, q)))).unwrap()
    })
}

fn pc_space() -> impl Strategy<Value = PcSpace> {
    (1usize..=3, prop::collection::btree_set(1i64..12, 0..=5))
        .prop_flat_map(|(n, inner)| {
            let mut breaks = vec![int(0)];
            breaks.extend(inner.into_iter().map(|k| rat(k, 12)));
            breaks.push(int(1));
            let regions = breaks.len() - 1;
            (Just(breaks), prop::collection::vec(prop::collection::vec((-2i64..=2).prop_map(int), regions), n))
        })
        .prop_map(|(breaks, values)| PcSpace { breaks, values })
        .prop_filter("nonzero", |s| s.values.iter().flatten().any(|v| !v.is_zero()))
}

fn sample<S: Strategy>(s: &S, runner: &mut TestRunner) -> S::Value {
    s.new_tree(runner).expect("strategy yields values").current()
}

fn square_identity_holds(space: &Subspace, rule: &Rule, alpha: &[Rat]) -> Result<bool, String> {
    let (lo, hi) = space.domain();
    let mut f = PiecewiseFn::zero(lo.clone(), hi.clone()).map_err(err)?;
    for (a, nf) in alpha.iter().zip(space.basis()) {
        f = PiecewiseFn::scale_add(&Radical::one(), &f, &Radical::from_rat(a.clone()), &nf.func).map_err(err)?;
    }
    let lhs = f.mul(&f).map_err(err)?.integrate().map_err(err)?;
    let mut rhs = Radical::zero();
    for (x, w) in rule.nodes().iter().zip(rule.weights()) {
        rhs = rhs + w * &f.eval(x).map_err(err)?.square();
    }
    Ok(lhs == rhs)
}

fn property_suites() -> Check {
    let mut runner = TestRunner::deterministic();

    // polarization: 100 combinations per rule
    let s = x2();
    let mut rules: Vec<Rule> = corpus::golden_rules(&Example1Params::default())
        .into_iter()
        .filter(|g| g.subspace == "ex1")
        .map(|g| g.rule)
        .collect();
    rules.push(corpus::x2_measure_rule());
    rules.push(Rule::new(vec![rat(-1, 2), rat(1, 8), rat(3, 8)], vec![r(-3, 2), r(51, 100), r(1, 2)]).unwrap());
    let alpha = prop::collection::vec((-50i64..=50, 1i64..=20).prop_map(|(p, q)| rat(p, q)), 2);
    for (k, rule) in rules.iter().enumerate() {
        let pass = verify_rule(&s, rule).map_err(err)?.pass;
        let mut agree = 0;
        for _ in 0..100 {
            if square_identity_holds(&s, rule, &sample(&alpha, &mut runner))? {
                agree += 1;
            }
        }
        ensure!((agree == 100) == pass, "rule {k}: verify {pass} but {agree}/100 combinations hold");
    }

    // field laws on 200 random values
    let rad = small_radical();
    for _ in 0..200 {
        let (x, y, z) = (sample(&rad, &mut runner), sample(&rad, &mut runner), sample(&rad, &mut runner));
        ensure!(&x + &y == &y + &x && &x * &y == &y * &x, "commutativity fails for {x}, {y}");
        ensure!(&(&x * &y) * &z == &x * &(&y * &z), "associativity fails");
        ensure!(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), "distributivity fails");
        if !x.is_zero() {
            ensure!((&x * &x.inv().map_err(err)?).is_one(), "inverse fails for {x}");
        }
    }

    // minimality against the brute-force oracle
    let spaces = pc_space();
    for k in 0..50 {
        let table = sample(&spaces, &mut runner);
        let sub = table.to_subspace();
        for (mode, positive) in [(Mode::Signed, false), (Mode::Positive, true)] {
            let cert = decide_min(&sub, &MinOptions::new(mode)).map_err(err)?;
            let (m, _, _) = brute::brute_min(&table, positive);
            ensure!(cert.m_min == m, "space {k} {mode}: library {} vs oracle {m}", cert.m_min);
            check_certificate(&table, &sub, &cert, positive).map_err(|e| format!("space {k} {mode}: {e}"))?;
        }
    }

    // determinism across worker counts
    for mode in [Mode::Signed, Mode::Positive] {
        let one = decide_min(&s, &MinOptions { mode, jobs: 1, max_subsets: None }).map_err(err)?;
        let four = decide_min(&s, &MinOptions { mode, jobs: 4, max_subsets: None }).map_err(err)?;
        ensure!(one == four, "{mode}: certificates differ across worker counts");
    }
    for args in [
        &["min", "ex1", "--mode", "positive"][..],
        &["grid", "ex1", "--candidates", "-1/2,1/8,3/8,5/8,7/8", "--m", "3"][..],
        &["verify", "ex2", "ex2-nine"][..],
    ] {
        let run = |jobs: &str| {
            Command::new(env!("CARGO_BIN_EXE_disq"))
                .args(args)
                .args(["--format", "json", "--jobs", jobs])
                .output()
                .map(|o| o.stdout)
                .map_err(err)
        };
        ensure!(run("1")? == run("4")?, "{args:?}: output depends on --jobs");
    }
    Ok("polarization 5×100, field laws 200, oracle agreement 50 spaces × 2 modes, jobs 1 = 4".into())
}

fn main() {
    type Criterion = (&'static str, u64, fn() -> Check);
    let criteria: [Criterion; 8] = [
        ("ex1 exact pipeline", 1, step_function_pipeline),
        ("minimality certificate", 1, minimality),
        ("positivity refutation", 1, no_positive_weights),
        ("ex2 constructions", 5, level_function_constructions),
        ("nine-node rule audit", 5, rule_audit),
        ("lower bounds", 2, lower_bounds),
        ("support reduction", 1, caratheodory),
        ("property suites", 45, property_suites),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let over = took > Duration::from_secs(*limit);
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; exceeded the {limit} s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("[{status}] {}. {name} ({:.2} s, limit {limit} s): {detail}", k + 1, took.as_secs_f64());
    }
    println!("{} of {} criteria passed in {:.2} s", criteria.len() - failed, criteria.len(), total.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
