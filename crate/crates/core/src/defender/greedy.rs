use std::time::Instant;

use super::prepare;
use crate::error::Result;
use crate::model::{Candidate, Election, Manipulation, RecountSet};
use crate::report::{Algorithm, SolveReport};

/// Greedy recounting against the preferred candidate `p`.
///
/// For every candidate `a` the defender prefers to `p`, recount the
/// `budget` districts whose restoration shifts the most score from `p` to
/// `a` (ties by ascending district index). Each winner so obtained that is
/// preferred to `p` becomes provisional; the best provisional winner is
/// returned with the recount that produced it.
///
/// When the output is `p` the recount is `∅` if that leaves `p` winning.
/// Against a regular manipulation this always holds; otherwise the report
/// carries no recount.
pub fn greedy_recount(
    election: &Election,
    manipulation: &Manipulation,
    budget: usize,
) -> Result<SolveReport> {
    let start = Instant::now();
    let p = election.require_preferred("greedy recounting")?;
    let rm = prepare(election, manipulation)?;
    let take = budget.min(rm.districts.len());

    let mut best: Option<(Candidate, Vec<usize>)> = None;
    let mut rounds = 0;
    for a in election.defender_ranking() {
        if !election.defender_prefers(a, p) {
            break;
        }
        rounds += 1;
        let mut order: Vec<usize> = (0..rm.districts.len()).collect();
        order.sort_by_key(|&j| std::cmp::Reverse(rm.deltas[j][a] - rm.deltas[j][p]));
        order.truncate(take);
        let b = election.winner_of(&rm.scores_for(order.iter().copied()));
        if b != p
            && election.defender_prefers(b, p)
            && best.as_ref().is_none_or(|(cur, _)| election.defender_prefers(b, *cur))
        {
            order.sort_unstable();
            best = Some((b, order));
        }
    }

    let mut report = SolveReport::new(Algorithm::RecGreedy);
    report.decision = true;
    match best {
        Some((b, positions)) => {
            report.winner = Some(b);
            report.recount = Some(rm.recount_set(positions));
        }
        None => {
            report.winner = Some(p);
            if election.winner_of(&rm.distorted) == p {
                report.recount = Some(RecountSet::new());
            }
        }
    }
    report.stats.states_explored = rounds;
    report.stats.greedy_calls = 1;
    report.stats.elapsed = start.elapsed();
    Ok(report)
}
