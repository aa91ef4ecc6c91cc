use std::ops::ControlFlow;
use std::time::Instant;

use super::{check_target, decision_report, prepare};
use crate::error::{Error, Result};
use crate::model::{Candidate, Election, Manipulation, RecountModel};
use crate::report::{Algorithm, Limits, SolveReport};

/// Exhaustive recount search. The witness is the lexicographically
/// smallest recount set (by sorted index sequence) making `target` win.
pub fn rec_decide_brute(
    election: &Election,
    manipulation: &Manipulation,
    budget: usize,
    target: Candidate,
) -> Result<SolveReport> {
    rec_decide_brute_with(election, manipulation, budget, target, &Limits::default())
}

pub fn rec_decide_brute_with(
    election: &Election,
    manipulation: &Manipulation,
    budget: usize,
    target: Candidate,
    limits: &Limits,
) -> Result<SolveReport> {
    let start = Instant::now();
    check_target(election, target)?;
    let rm = prepare(election, manipulation)?;
    check_size(&rm, limits)?;
    let mut hit = None;
    let visited = for_each_recount(&rm, budget, |positions, scores| {
        if election.winner_of(scores) == target {
            hit = Some((target, positions.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let mut report = decision_report(Algorithm::RecBrute, &rm, hit);
    report.stats.states_explored = visited;
    report.stats.elapsed = start.elapsed();
    Ok(report)
}

pub(crate) fn optimize_brute(
    election: &Election,
    rm: &RecountModel,
    budget: usize,
    limits: &Limits,
) -> Result<SolveReport> {
    check_size(rm, limits)?;
    let top = election.defender_ranking()[0];
    let mut best: Option<(Candidate, Vec<usize>)> = None;
    let visited = for_each_recount(rm, budget, |positions, scores| {
        let w = election.winner_of(scores);
        if best.as_ref().is_none_or(|(b, _)| election.defender_prefers(w, *b)) {
            best = Some((w, positions.to_vec()));
        }
        if w == top {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let mut report = decision_report(Algorithm::RecBrute, rm, best);
    report.stats.states_explored = visited;
    Ok(report)
}

fn check_size(rm: &RecountModel, limits: &Limits) -> Result<()> {
    if rm.districts.len() > limits.max_recount_districts {
        return Err(Error::ResourceLimit(format!(
            "{} manipulated districts exceed the enumeration cap of {}",
            rm.districts.len(),
            limits.max_recount_districts
        )));
    }
    Ok(())
}

/// Visits every recount of at most `budget` manipulated districts in
/// lexicographic order of position sequences, starting with the empty one.
/// `visit` receives the positions and the resulting scores. Returns the
/// number of sets visited.
pub(crate) fn for_each_recount<F>(rm: &RecountModel, budget: usize, mut visit: F) -> u64
where
    F: FnMut(&[usize], &[i64]) -> ControlFlow<()>,
{
    let mut chosen = Vec::new();
    let mut scores = rm.distorted.clone();
    let mut count = 0;
    let _ = walk(rm, budget, 0, &mut chosen, &mut scores, &mut count, &mut visit);
    count
}

fn walk<F>(
    rm: &RecountModel,
    budget: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    scores: &mut [i64],
    count: &mut u64,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &[i64]) -> ControlFlow<()>,
{
    *count += 1;
    visit(chosen, scores)?;
    if chosen.len() == budget {
        return ControlFlow::Continue(());
    }
    for j in from..rm.districts.len() {
        shift(scores, &rm.deltas[j], 1);
        chosen.push(j);
        let flow = walk(rm, budget, j + 1, chosen, scores, count, visit);
        chosen.pop();
        shift(scores, &rm.deltas[j], -1);
        flow?;
    }
    ControlFlow::Continue(())
}

fn shift(scores: &mut [i64], delta: &[i64], sign: i64) {
    for (s, d) in scores.iter_mut().zip(delta) {
        *s += sign * d;
    }
}
