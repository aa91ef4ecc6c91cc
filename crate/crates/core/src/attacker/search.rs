use std::collections::HashMap;
use std::ops::ControlFlow;
use std::time::Instant;

use super::steal::{district_min_steal, enumerate_distortions};
use crate::defender::{for_each_recount, optimize_brute};
use crate::error::{Error, Result};
use crate::model::{Candidate, Election, Manipulation, RecountModel, Rule};
use crate::report::{Algorithm, Limits, SolveReport};

/// Exhaustive attacker search against an optimal defender.
///
/// Manipulated sets are tried by increasing size, then lexicographically;
/// within a set, distortions follow [`enumerate_distortions`] order with the
/// first district most significant. Under PD each district is reduced to
/// the candidates it can be handed to, using the cheapest distortion from
/// [`district_min_steal`]. The first manipulation that keeps `p` elected
/// after the defender's best recount is returned.
pub fn man_decide_brute(election: &Election, regular: bool) -> Result<SolveReport> {
    man_decide_brute_with(election, regular, &Limits::default())
}

pub fn man_decide_brute_with(election: &Election, regular: bool, limits: &Limits) -> Result<SolveReport> {
    let start = Instant::now();
    let p = election.require_preferred("the attacker search")?;
    let algorithm = if regular { Algorithm::ManBruteRegular } else { Algorithm::ManBrute };
    let options = district_options(election, p, regular);
    let k = election.num_districts();
    let b_d = election.budget_defender();
    let p_wins_truth = election.true_winner() == p;

    let mut report = SolveReport::new(algorithm);
    let mut examined: u64 = 0;
    'sizes: for size in 0..=election.budget_attacker() {
        // The defender can recount every manipulated district and restore
        // the true winner, which is its favourite.
        if size <= b_d && !p_wins_truth {
            continue;
        }
        let mut set: Vec<usize> = (0..size).collect();
        loop {
            if set.iter().all(|&i| !options[i].is_empty()) {
                let mut choice = vec![0usize; size];
                loop {
                    examined += 1;
                    if examined > limits.max_manipulations {
                        return Err(Error::ResourceLimit(format!(
                            "attacker search examined more than {} manipulations",
                            limits.max_manipulations
                        )));
                    }
                    let manipulation: Manipulation = set
                        .iter()
                        .zip(&choice)
                        .map(|(&i, &o)| (i, options[i][o].clone()))
                        .collect();
                    let rm = RecountModel::new(election, &manipulation);
                    if survives(election, &rm, b_d, p, limits)? {
                        let response = optimize_brute(election, &rm, b_d, limits)?;
                        report.decision = true;
                        report.winner = response.winner;
                        report.recount = response.recount;
                        report.manipulation = Some(manipulation);
                        break 'sizes;
                    }
                    if !advance(&mut choice, |j| options[set[j]].len()) {
                        break;
                    }
                }
            }
            if !next_combination(&mut set, k) {
                break;
            }
        }
    }
    report.stats.states_explored = examined;
    report.stats.elapsed = start.elapsed();
    Ok(report)
}

/// Whether `p` is the defender's optimal outcome: no recount elects a
/// candidate preferred to `p`, and some recount elects `p`.
fn survives(election: &Election, rm: &RecountModel, budget: usize, p: Candidate, limits: &Limits) -> Result<bool> {
    if rm.districts.len() > limits.max_recount_districts {
        return Err(Error::ResourceLimit(format!(
            "{} manipulated districts exceed the enumeration cap of {}",
            rm.districts.len(),
            limits.max_recount_districts
        )));
    }
    let mut p_reachable = false;
    let mut beaten = false;
    for_each_recount(rm, budget, |_, scores| {
        let w = election.winner_of(scores);
        if w == p {
            p_reachable = true;
        } else if election.defender_prefers(w, p) {
            beaten = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(p_reachable && !beaten)
}

/// Distorted vectors worth trying per district, excluding the true one.
fn district_options(election: &Election, p: Candidate, regular: bool) -> Vec<Vec<Vec<i64>>> {
    election
        .districts()
        .iter()
        .enumerate()
        .map(|(i, d)| match election.rule() {
            Rule::Pv => enumerate_distortions(d, regular.then_some(p))
                .into_iter()
                .filter(|w| *w != d.votes)
                .collect(),
            Rule::Pd => {
                let truth = election.true_district_winner(i);
                (0..election.num_candidates())
                    .filter(|&c| c != truth && (!regular || c == p))
                    .filter_map(|c| district_min_steal(&d.votes, c, election.ranks()))
                    .filter(|(t, _)| *t <= d.gamma)
                    .map(|(_, w)| w)
                    .collect()
            }
        })
        .collect()
}

/// Odometer step, first position most significant. Returns false after
/// the last tuple.
fn advance(choice: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for j in (0..choice.len()).rev() {
        choice[j] += 1;
        if choice[j] < radix(j) {
            return true;
        }
        choice[j] = 0;
    }
    false
}

/// Next `set.len()`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(set: &mut [usize], n: usize) -> bool {
    let s = set.len();
    for j in (0..s).rev() {
        if set[j] < n - s + j {
            set[j] += 1;
            for l in j + 1..s {
                set[l] = set[l - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exact attacker search for instances without a recount budget.
///
/// With `B_D = 0` the reported profile stands, so the attacker only needs
/// `p` to win it. The search runs over reachable distorted score vectors,
/// keeping the fewest manipulated districts per vector. Under PV the best
/// use of a district moves as many votes as allowed onto `p`, so only the
/// split among the opponents it takes them from varies; such moves are
/// regular, which makes the flag irrelevant there. Under PD a district may
/// be handed to any candidate it can be stolen for (only `p` if regular).
pub fn man_decide_static(election: &Election, regular: bool) -> Result<SolveReport> {
    man_decide_static_with(election, regular, &Limits::default())
}

pub fn man_decide_static_with(election: &Election, regular: bool, limits: &Limits) -> Result<SolveReport> {
    let start = Instant::now();
    let p = election.require_preferred("the attacker search")?;
    if election.budget_defender() != 0 {
        return Err(Error::Unsupported(
            "the static attacker search needs a defender budget of 0".into(),
        ));
    }
    let algorithm = if regular { Algorithm::ManStaticRegular } else { Algorithm::ManStatic };
    let options = static_options(election, p, regular);
    let m = election.num_candidates();
    let budget = election.budget_attacker() as u32;

    let mut truth = vec![0i64; m];
    for i in 0..election.num_districts() {
        election.add_contribution(&mut truth, i, &election.district(i).votes, 1);
    }
    let mut index: HashMap<Vec<i64>, u32> = HashMap::from([(truth.clone(), 0)]);
    let mut flat = truth;
    let mut cost = vec![0u32];
    // Per district: sorted (state, parent, option) for states it set.
    let mut changed: Vec<Vec<(u32, u32, u32)>> = Vec::with_capacity(options.len());

    for opts in &options {
        let before = cost.len();
        let mut pending: HashMap<Vec<i64>, (u32, u32, u32)> = HashMap::new();
        for src in 0..before {
            let c = cost[src];
            if c >= budget {
                continue;
            }
            for (o, delta) in opts.iter().enumerate() {
                let next: Vec<i64> = flat[src * m..(src + 1) * m]
                    .iter()
                    .zip(delta)
                    .map(|(s, d)| s + d)
                    .collect();
                if index.get(&next).is_some_and(|&id| cost[id as usize] <= c + 1) {
                    continue;
                }
                let entry = pending.entry(next).or_insert((c + 1, src as u32, o as u32));
                if c + 1 < entry.0 {
                    *entry = (c + 1, src as u32, o as u32);
                }
            }
        }
        let mut layer = Vec::with_capacity(pending.len());
        let mut fresh: Vec<_> = pending.into_iter().collect();
        fresh.sort_unstable_by_key(|(_, (_, src, o))| (*src, *o));
        if cost.len() + fresh.len() > limits.max_dp_states {
            return Err(Error::ResourceLimit(format!(
                "attacker search exceeds {} reachable score vectors",
                limits.max_dp_states
            )));
        }
        for (v, (c, src, o)) in fresh {
            let id = match index.get(&v) {
                Some(&id) => {
                    cost[id as usize] = c;
                    id
                }
                None => {
                    let id = cost.len() as u32;
                    flat.extend_from_slice(&v);
                    cost.push(c);
                    index.insert(v, id);
                    id
                }
            };
            layer.push((id, src, o));
        }
        layer.sort_unstable();
        changed.push(layer);
    }

    let mut report = SolveReport::new(algorithm);
    report.stats.states_explored = cost.len() as u64;
    let hit = (0..cost.len()).find(|&id| election.winner_of(&flat[id * m..(id + 1) * m]) == p);
    if let Some(mut id) = hit.map(|id| id as u32) {
        let mut manipulation = Manipulation::new();
        for (i, layer) in changed.iter().enumerate().rev() {
            if let Ok(k) = layer.binary_search_by_key(&id, |&(x, _, _)| x) {
                let (_, parent, o) = layer[k];
                manipulation.insert(i, static_distortion(election, i, p, regular, o as usize));
                id = parent;
            }
        }
        report.decision = true;
        report.winner = Some(p);
        report.recount = Some(Default::default());
        report.manipulation = Some(manipulation);
    }
    report.stats.elapsed = start.elapsed();
    Ok(report)
}

/// Score deltas of the useful distortions of each district (see
/// [`static_distortion`] for the matching vectors).
fn static_options(election: &Election, p: Candidate, regular: bool) -> Vec<Vec<Vec<i64>>> {
    (0..election.num_districts())
        .map(|i| {
            let votes = &election.district(i).votes;
            static_distortions(election, i, p, regular)
                .into_iter()
                .map(|w| {
                    let mut delta = vec![0i64; election.num_candidates()];
                    election.add_contribution(&mut delta, i, &w, 1);
                    election.add_contribution(&mut delta, i, votes, -1);
                    delta
                })
                .collect()
        })
        .collect()
}

fn static_distortion(election: &Election, i: usize, p: Candidate, regular: bool, o: usize) -> Vec<i64> {
    static_distortions(election, i, p, regular).swap_remove(o)
}

fn static_distortions(election: &Election, i: usize, p: Candidate, regular: bool) -> Vec<Vec<i64>> {
    let d = election.district(i);
    match election.rule() {
        Rule::Pv => {
            let g = d.gamma.min(d.size() - d.votes[p]);
            if g == 0 {
                return Vec::new();
            }
            let mut out = Vec::new();
            let mut w = d.votes.clone();
            w[p] += g;
            split(&d.votes, p, 0, g, &mut w, &mut out);
            out
        }
        Rule::Pd => {
            let truth = election.true_district_winner(i);
            (0..election.num_candidates())
                .filter(|&c| c != truth && (!regular || c == p))
                .filter_map(|c| district_min_steal(&d.votes, c, election.ranks()))
                .filter(|(t, _)| *t <= d.gamma)
                .map(|(_, w)| w)
                .collect()
        }
    }
}

/// All ways to take `left` votes from the opponents `c..` of `p`.
fn split(votes: &[i64], p: Candidate, c: usize, left: i64, w: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if c == votes.len() {
        if left == 0 {
            out.push(w.clone());
        }
        return;
    }
    if c == p {
        return split(votes, p, c + 1, left, w, out);
    }
    for take in 0..=left.min(votes[c]) {
        w[c] = votes[c] - take;
        split(votes, p, c + 1, left - take, w, out);
    }
    w[c] = votes[c];
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defender::fixtures::*;
    use crate::defender::{rec_optimize, RecBackend};
    use crate::model::{tally, validate, District};

    #[test]
    fn combinations_in_order() {
        let mut set = vec![0, 1];
        let mut all = vec![set.clone()];
        while next_combination(&mut set, 4) {
            all.push(set.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2]);
        assert_eq!(all[5], vec![2, 3]);
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }

    #[test]
    fn squares_outcomes() {
        assert!(!man_decide_brute(&squares(Rule::Pv), false).unwrap().decision);
        let e = squares(Rule::Pd);
        let r = man_decide_brute(&e, false).unwrap();
        assert!(r.decision);
        let m = r.manipulation.unwrap();
        assert_eq!(m.districts().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(r.winner, Some(2));
    }

    #[test]
    fn split_outcomes() {
        let e = split_example();
        assert!(!man_decide_brute(&e, true).unwrap().decision);
        let r = man_decide_brute(&e, false).unwrap();
        assert!(r.decision);
        let m = r.manipulation.unwrap();
        // District 0 is handed to b and district 1 to p.
        assert_eq!(m.districts().collect::<Vec<_>>(), vec![0, 1]);
        assert!(validate(&e, &m, true).is_err());
        let response = rec_optimize(&e, &m, 1, RecBackend::Brute).unwrap();
        assert_eq!(response.winner, Some(2));
        assert_eq!(response.recount, r.recount);
    }

    #[test]
    fn static_search_agrees_with_brute_without_recounts() {
        let e = split_example().with_budgets(2, 0).unwrap();
        for regular in [false, true] {
            let s = man_decide_static(&e, regular).unwrap();
            let b = man_decide_brute(&e, regular).unwrap();
            assert_eq!(s.decision, b.decision);
            let m = s.manipulation.unwrap();
            assert_eq!(tally(&e, Some(&m), None).unwrap().winner, 2);
        }
        let pd = squares(Rule::Pd).with_budgets(1, 0).unwrap();
        assert_eq!(
            man_decide_static(&pd, false).unwrap().decision,
            man_decide_brute(&pd, false).unwrap().decision
        );
    }

    #[test]
    fn static_search_needs_zero_defender_budget() {
        assert!(matches!(man_decide_static(&split_example(), false), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pv_static_splits() {
        let e = Election::new(
            Rule::Pv,
            vec!["a".into(), "b".into(), "p".into()],
            vec![District::new(vec![2, 2, 1], 1, 2)],
        )
        .unwrap();
        let all = static_distortions(&e, 0, 2, false);
        assert_eq!(all, vec![vec![2, 0, 3], vec![1, 1, 3], vec![0, 2, 3]]);
    }

    #[test]
    fn manipulation_cap() {
        let limits = Limits { max_manipulations: 1, ..Limits::default() };
        let err = man_decide_brute_with(&split_example(), false, &limits).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }
}
