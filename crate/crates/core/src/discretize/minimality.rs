//! Exhaustive minimal node count for piecewise-constant subspaces.
//!
//! Every moment vector is constant on each region cut out by the union of all
//! breakpoints, so a rule only ever sees finitely many distinct vectors. Nodes
//! sharing a vector can be merged with summed weights without changing any
//! moment sum; searching multisets of distinct vectors by increasing size is
//! therefore exhaustive.

use log::debug;
use rayon::prelude::*;

use super::linalg::{self, LinearSolution};
use super::positivity::{positive_feasible, Positivity};
use super::solve::{check_inconsistency, moment_matrix, solve_moments, WeightSolution};
use super::space::{MomentVec, Rule, Subspace};
use super::verify::verify_rule;
use super::Mode;
use crate::error::{Error, Result};
use crate::exactnum::{midpoint, Radical, Rat};

pub const MERGE_JUSTIFICATION: &str = "moment vectors are constant on each constancy region; nodes with equal \
moment vectors can be merged (weights summed) without changing any moment sum, so enumerating multisets of \
distinct region vectors by increasing size is exhaustive; a rule with every class representative weighted by \
its total measure is always exact and positive, which bounds the search";

/// Regions sharing one moment vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionClass {
    /// Midpoint of the first region of the class.
    pub representative: Rat,
    /// Total length of the class.
    pub measure: Rat,
    /// Half-open `[lo, hi)` cells, the last cell of the domain also holding `hi`.
    pub regions: Vec<(Rat, Rat)>,
    pub moments: MomentVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// Fewer nodes than the Gram rank: a sum of `m` rank-one matrices has rank at most `m`.
    RankDeficient { nodes: usize, gram_rank: usize },
    /// `yᵀM = 0`, `yᵀb ≠ 0`.
    Inconsistent { pair: (usize, usize), certificate: Vec<Radical> },
    /// `w = Mᵀy ≥ 0`, `w ≠ 0`, `yᵀb ≤ 0`: then `Σ w_j λ_j = yᵀb ≤ 0` for every solution.
    PositivityInfeasible { certificate: Vec<Radical>, combination: Vec<Radical> },
}

impl Infeasibility {
    pub fn tag(&self) -> &'static str {
        match self {
            Infeasibility::RankDeficient { .. } => "rank-deficient",
            Infeasibility::Inconsistent { .. } => "inconsistent",
            Infeasibility::PositivityInfeasible { .. } => "positivity-infeasible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternRecord {
    /// Nondecreasing class indices.
    pub pattern: Vec<usize>,
    pub reason: Infeasibility,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustionLevel {
    pub m: usize,
    pub count: usize,
    pub patterns: Vec<PatternRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCertificate {
    pub mode: Mode,
    pub m_min: usize,
    pub witness: Rule,
    pub witness_pattern: Vec<usize>,
    pub classes: Vec<RegionClass>,
    pub gram_rank: usize,
    pub exhaustion: Vec<ExhaustionLevel>,
    pub fallback: Rule,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinOptions {
    pub mode: Mode,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    /// Upper limit on the total number of patterns examined.
    pub max_subsets: Option<u64>,
}

impl MinOptions {
    pub fn new(mode: Mode) -> Self {
        MinOptions { mode, jobs: 1, max_subsets: None }
    }
}

/// Splits the domain at every breakpoint and groups cells by moment vector.
pub fn region_classes(space: &Subspace) -> Result<Vec<RegionClass>> {
    let mut cuts: Vec<Rat> = space.basis().iter().flat_map(|f| f.func.breakpoints()).collect();
    cuts.sort();
    cuts.dedup();
    let mut classes: Vec<RegionClass> = Vec::new();
    for w in cuts.windows(2) {
        let rep = midpoint(&w[0], &w[1]);
        let mv = space.moment_vector(&rep)?;
        let len = &w[1] - &w[0];
        match classes.iter_mut().find(|c| c.moments == mv) {
            Some(c) => {
                c.measure += len;
                c.regions.push((w[0].clone(), w[1].clone()));
            }
            None => classes.push(RegionClass {
                representative: rep,
                measure: len,
                regions: vec![(w[0].clone(), w[1].clone())],
                moments: mv,
            }),
        }
    }
    Ok(classes)
}

/// Nondecreasing index sequences of length `m` over `0..n`, lexicographic.
pub fn multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 || n == 0 {
        return out;
    }
    let mut cur = vec![0usize; m];
    loop {
        out.push(cur.clone());
        let Some(k) = (0..m).rev().find(|&k| cur[k] + 1 < n) else { break };
        let v = cur[k] + 1;
        for slot in &mut cur[k..] {
            *slot = v;
        }
    }
    out
}

/// `C(n + m - 1, m)`, saturating.
pub fn multiset_count(n: usize, m: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for k in 0..m as u128 {
        acc = acc * (n as u128 + k) / (k + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

enum Outcome {
    Feasible(Vec<Radical>),
    Infeasible(Infeasibility),
}

fn evaluate(pattern: &[usize], classes: &[RegionClass], target: &[Radical], gram_rank: usize, mode: Mode) -> Outcome {
    let m = pattern.len();
    if m < gram_rank {
        return Outcome::Infeasible(Infeasibility::RankDeficient { nodes: m, gram_rank });
    }
    let cols: Vec<&MomentVec> = pattern.iter().map(|&k| &classes[k].moments).collect();
    let dim = dim_from_pairs(target.len());
    match solve_moments(dim, &cols, target, &[]) {
        WeightSolution::Infeasible { pair, certificate } => {
            Outcome::Infeasible(Infeasibility::Inconsistent { pair, certificate })
        }
        WeightSolution::Solved { particular, null_basis } => match mode {
            Mode::Signed => Outcome::Feasible(particular),
            Mode::Positive => match positive_feasible(&particular, &null_basis) {
                Positivity::Witness { weights } => Outcome::Feasible(weights),
                Positivity::NoPositive { combination, .. } => {
                    let mt = linalg::transpose(&moment_matrix(&cols));
                    match linalg::solve(&mt, &combination) {
                        LinearSolution::Consistent { particular: y, .. } => {
                            Outcome::Infeasible(Infeasibility::PositivityInfeasible { certificate: y, combination })
                        }
                        LinearSolution::Inconsistent { .. } => {
                            unreachable!("a combination orthogonal to the null space lies in the row space")
                        }
                    }
                }
            },
        },
    }
}

pub(crate) fn dim_from_pairs(p: usize) -> usize {
    (0..).find(|n| n * (n + 1) / 2 >= p).expect("finite")
}

pub(crate) fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))
}

/// Minimal number of nodes over all exact rules (positive mode: all weights > 0).
pub fn decide_min(space: &Subspace, opts: &MinOptions) -> Result<MinCertificate> {
    if let Some(f) = space.basis().iter().find(|f| !f.func.is_piecewise_constant()) {
        return Err(Error::PreconditionFailed(format!(
            "basis function {} is not piecewise constant; use grid search instead",
            f.name
        )));
    }
    let gram = space.gram()?;
    let target = gram.target();
    let classes = region_classes(space)?;
    let fallback = Rule::new(
        classes.iter().map(|c| c.representative.clone()).collect(),
        classes.iter().map(|c| Radical::from_rat(c.measure.clone())).collect(),
    )?;
    let pool = thread_pool(opts.jobs)?;
    let mut examined: u64 = 0;
    let mut exhaustion = Vec::new();
    for m in 1..=classes.len() {
        let count = multiset_count(classes.len(), m);
        examined = examined.saturating_add(count);
        if let Some(cap) = opts.max_subsets {
            if examined > cap {
                return Err(Error::CapExceeded { cap: cap as usize });
            }
        }
        let patterns = multisets(classes.len(), m);
        debug!("m = {m}: {} patterns", patterns.len());
        let outcomes: Vec<Outcome> = pool.install(|| {
            patterns
                .par_iter()
                .map(|p| evaluate(p, &classes, &target, gram.rank, opts.mode))
                .collect()
        });
        let hit = outcomes.iter().position(|o| matches!(o, Outcome::Feasible(_)));
        if let Some(k) = hit {
            let Outcome::Feasible(weights) = &outcomes[k] else { unreachable!() };
            let pattern = patterns[k].clone();
            let witness = Rule::new(
                pattern.iter().map(|&c| classes[c].representative.clone()).collect(),
                weights.clone(),
            )?;
            return Ok(MinCertificate {
                mode: opts.mode,
                m_min: m,
                witness,
                witness_pattern: pattern,
                classes,
                gram_rank: gram.rank,
                exhaustion,
                fallback,
                flags: space.flags().to_vec(),
            });
        }
        let records = patterns
            .into_iter()
            .zip(outcomes)
            .map(|(pattern, o)| match o {
                Outcome::Infeasible(reason) => PatternRecord { pattern, reason },
                Outcome::Feasible(_) => unreachable!(),
            })
            .collect::<Vec<_>>();
        exhaustion.push(ExhaustionLevel { m, count: records.len(), patterns: records });
    }
    unreachable!("the measure rule over all classes is always feasible")
}

/// Independently re-derives classes and Gram data from `space` and checks every
/// claim of the certificate. Returns the list of problems found (empty when valid).
pub fn recheck_min(space: &Subspace, cert: &MinCertificate) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let gram = space.gram()?;
    let target = gram.target();
    let classes = region_classes(space)?;
    if classes != cert.classes {
        problems.push("region classes differ".to_string());
        return Ok(problems);
    }
    if gram.rank != cert.gram_rank {
        problems.push(format!("gram rank {} recorded as {}", gram.rank, cert.gram_rank));
    }
    let report = verify_rule(space, &cert.witness)?;
    if !report.pass {
        problems.push("witness does not verify".to_string());
    }
    if cert.witness.len() != cert.m_min {
        problems.push("witness size differs from m_min".to_string());
    }
    if cert.mode == Mode::Positive && !cert.witness.all_positive() {
        problems.push("witness has a nonpositive weight".to_string());
    }
    if !verify_rule(space, &cert.fallback)?.pass {
        problems.push("fallback rule does not verify".to_string());
    }
    if cert.exhaustion.len() + 1 != cert.m_min {
        problems.push("exhaustion log does not cover every smaller size".to_string());
    }
    for (lvl, level) in cert.exhaustion.iter().enumerate() {
        let expected = multisets(classes.len(), lvl + 1);
        let listed: Vec<Vec<usize>> = level.patterns.iter().map(|p| p.pattern.clone()).collect();
        if level.m != lvl + 1 || level.count != expected.len() || listed != expected {
            problems.push(format!("level {} does not list every pattern in order", lvl + 1));
            continue;
        }
        for rec in &level.patterns {
            if !reason_holds(&rec.pattern, &rec.reason, &classes, &target, gram.rank, cert.mode) {
                problems.push(format!("pattern {:?}: {} does not re-check", rec.pattern, rec.reason.tag()));
            }
        }
    }
    Ok(problems)
}

fn reason_holds(
    pattern: &[usize],
    reason: &Infeasibility,
    classes: &[RegionClass],
    target: &[Radical],
    gram_rank: usize,
    mode: Mode,
) -> bool {
    let cols: Vec<&MomentVec> = pattern.iter().map(|&k| &classes[k].moments).collect();
    match reason {
        Infeasibility::RankDeficient { nodes, gram_rank: r } => *nodes == pattern.len() && *r == gram_rank && nodes < r,
        Infeasibility::Inconsistent { certificate, .. } => check_inconsistency(&cols, target, certificate),
        Infeasibility::PositivityInfeasible { certificate, combination } => {
            let mt = linalg::transpose(&moment_matrix(&cols));
            mode == Mode::Positive
                && linalg::mat_vec(&mt, certificate) == *combination
                && combination.iter().all(|w| !w.is_negative())
                && combination.iter().any(|w| !w.is_zero())
                && !linalg::dot(certificate, target).is_positive()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_enumeration() {
        assert_eq!(multisets(3, 2), vec![
            vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 2]
        ]);
        assert_eq!(multisets(5, 2).len(), 15);
        for n in 1..6 {
            for m in 1..5 {
                assert_eq!(multisets(n, m).len() as u64, multiset_count(n, m));
            }
        }
    }

    #[test]
    fn pair_count_to_dim() {
        assert_eq!(dim_from_pairs(1), 1);
        assert_eq!(dim_from_pairs(3), 2);
        assert_eq!(dim_from_pairs(36), 8);
    }
}
