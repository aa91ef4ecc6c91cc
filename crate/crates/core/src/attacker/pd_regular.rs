use std::time::Instant;

use super::steal::district_min_steal;
use crate::defender::greedy_recount;
use crate::error::{Error, Result};
use crate::model::{validate, Election, Manipulation, Rule};
use crate::report::{Algorithm, SolveReport};

/// Polynomial search for a winning regular manipulation under PD.
///
/// `S_c` holds the districts truly won by `c ≠ p` that can be handed to `p`
/// within their `gamma`. The attack always manipulates `ℓ = min(B_A, |S|)`
/// districts: a fixed core `Q` topped up with the heaviest remaining
/// districts of `S`. Greedy recounting decides each candidate attack; when
/// it elects some `a`, the heaviest district of `S_a` outside `Q` joins the
/// core. At most `ℓ + 1` attacks are tried.
pub fn man_pd_regular(election: &Election) -> Result<SolveReport> {
    let start = Instant::now();
    if election.rule() != Rule::Pd {
        return Err(Error::Unsupported("the regular PD attacker needs rule PD".into()));
    }
    let p = election.require_preferred("the regular PD attacker")?;
    let k = election.num_districts();

    let mut steal: Vec<Option<Vec<i64>>> = vec![None; k];
    for (i, d) in election.districts().iter().enumerate() {
        if election.true_district_winner(i) == p {
            continue;
        }
        if let Some((t, w)) = district_min_steal(&d.votes, p, election.ranks()) {
            if t <= d.gamma {
                steal[i] = Some(w);
            }
        }
    }
    // Heaviest first, ties by ascending index.
    let mut by_weight: Vec<usize> = (0..k).filter(|&i| steal[i].is_some()).collect();
    by_weight.sort_by_key(|&i| std::cmp::Reverse(election.district(i).weight));
    let ell = election.budget_attacker().min(by_weight.len());

    let mut core = vec![false; k];
    let mut core_size = 0;
    let mut report = SolveReport::new(Algorithm::ManPdRegular);
    loop {
        let mut chosen: Vec<usize> = (0..k).filter(|&i| core[i]).collect();
        chosen.extend(by_weight.iter().copied().filter(|&i| !core[i]).take(ell - core_size));
        let manipulation: Manipulation = chosen
            .iter()
            .map(|&i| (i, steal[i].clone().expect("only stealable districts are chosen")))
            .collect();
        let greedy = greedy_recount(election, &manipulation, election.budget_defender())?;
        report.stats.greedy_calls += 1;
        let a = greedy.winner.expect("greedy always names a winner");
        if a == p {
            report.decision = true;
            report.winner = Some(p);
            report.recount = greedy.recount;
            report.manipulation = Some(manipulation);
            break;
        }
        if core_size == ell {
            break;
        }
        match by_weight.iter().copied().find(|&i| !core[i] && election.true_district_winner(i) == a) {
            Some(i) => {
                core[i] = true;
                core_size += 1;
            }
            None => break,
        }
    }
    report.stats.states_explored = report.stats.greedy_calls;
    report.stats.elapsed = start.elapsed();
    Ok(report)
}

/// Checks a regular manipulation against the defender in polynomial time:
/// the attack wins exactly when greedy recounting still elects `p`.
pub fn verify_regular_attack(election: &Election, manipulation: &Manipulation) -> Result<SolveReport> {
    let start = Instant::now();
    let p = election.require_preferred("attack verification")?;
    if let Err(violations) = validate(election, manipulation, true) {
        let list = violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        return Err(Error::Precondition(format!("manipulation is not a valid regular attack: {list}")));
    }
    let greedy = greedy_recount(election, manipulation, election.budget_defender())?;
    let mut report = SolveReport::new(Algorithm::VerifyRegular);
    report.decision = greedy.winner == Some(p);
    report.winner = greedy.winner;
    report.recount = greedy.recount;
    report.manipulation = Some(manipulation.clone());
    report.stats.greedy_calls = 1;
    report.stats.elapsed = start.elapsed();
    Ok(report)
}

/// Candidates whose stealable districts feed the core, exposed for tests.
#[cfg(test)]
fn stealable(election: &Election, p: crate::model::Candidate) -> Vec<usize> {
    (0..election.num_districts())
        .filter(|&i| election.true_district_winner(i) != p)
        .filter(|&i| {
            district_min_steal(&election.district(i).votes, p, election.ranks())
                .is_some_and(|(t, _)| t <= election.district(i).gamma)
        })
        .collect()
}
