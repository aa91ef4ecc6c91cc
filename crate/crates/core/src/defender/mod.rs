//! Recount solvers: given a manipulation, which districts should the
//! defender recount?
//!
//! The decision solvers answer whether a given target can be made the
//! winner with at most `budget` recounts; [`rec_optimize`] finds the
//! defender's best response (highest-welfare achievable winner).

mod brute;
mod dp;
mod greedy;
mod unweighted;

pub use brute::{rec_decide_brute, rec_decide_brute_with};
pub use dp::{rec_decide_dp, rec_decide_dp_with};
pub use greedy::greedy_recount;
pub use unweighted::rec_pd_unweighted;

pub(crate) use brute::{for_each_recount, optimize_brute};

use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{self, Candidate, Election, Manipulation, RecountModel};
use crate::report::{Algorithm, Limits, SolveReport};

/// Exact backends for [`rec_optimize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecBackend {
    Dp,
    Brute,
}

/// The defender's optimal response: the most preferred achievable winner
/// and the lexicographically smallest recount producing it (brute backend).
pub fn rec_optimize(
    election: &Election,
    manipulation: &Manipulation,
    budget: usize,
    backend: RecBackend,
) -> Result<SolveReport> {
    rec_optimize_with(election, manipulation, budget, backend, &Limits::default())
}

pub fn rec_optimize_with(
    election: &Election,
    manipulation: &Manipulation,
    budget: usize,
    backend: RecBackend,
    limits: &Limits,
) -> Result<SolveReport> {
    let start = Instant::now();
    let rm = prepare(election, manipulation)?;
    let mut report = match backend {
        RecBackend::Brute => optimize_brute(election, &rm, budget, limits)?,
        RecBackend::Dp => dp::optimize(election, &rm, budget, limits)?,
    };
    report.stats.elapsed = start.elapsed();
    Ok(report)
}

/// Validates the manipulation and builds the score bookkeeping.
pub(crate) fn prepare(election: &Election, manipulation: &Manipulation) -> Result<RecountModel> {
    model::validate(election, manipulation, false).map_err(Error::InvalidManipulation)?;
    Ok(RecountModel::new(election, manipulation))
}

pub(crate) fn check_target(election: &Election, target: Candidate) -> Result<()> {
    if target < election.num_candidates() {
        Ok(())
    } else {
        Err(Error::UnknownCandidate(format!("#{target}")))
    }
}

pub(crate) fn decision_report(
    algorithm: Algorithm,
    rm: &RecountModel,
    hit: Option<(Candidate, Vec<usize>)>,
) -> SolveReport {
    let mut report = SolveReport::new(algorithm);
    if let Some((winner, positions)) = hit {
        report.decision = true;
        report.winner = Some(winner);
        report.recount = Some(rm.recount_set(positions));
    }
    report
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::model::{RecountSet, Rule};

    #[test]
    fn squares_pv_defender_picks_b() {
        let e = squares(Rule::Pv);
        for backend in [RecBackend::Brute, RecBackend::Dp] {
            let r = rec_optimize(&e, &squares_attack(), 1, backend).unwrap();
            assert_eq!(r.winner, Some(1));
            assert_eq!(r.recount.unwrap().len(), 1);
        }
    }

    #[test]
    fn split_defender_recounts_first_district() {
        let e = split_example();
        let r = rec_optimize(&e, &split_attack(), 1, RecBackend::Brute).unwrap();
        assert_eq!(r.winner, Some(2));
        assert_eq!(r.recount, Some(RecountSet::from([0])));
    }

    #[test]
    fn unmanipulated_returns_true_winner() {
        let e = squares(Rule::Pd);
        for backend in [RecBackend::Brute, RecBackend::Dp] {
            let r = rec_optimize(&e, &Manipulation::new(), 1, backend).unwrap();
            assert_eq!(r.winner, Some(0));
            assert_eq!(r.recount, Some(RecountSet::new()));
        }
    }

    #[test]
    fn invalid_manipulation_is_rejected() {
        let e = squares(Rule::Pv);
        let bad = Manipulation::new().with(0, vec![0, 0, 6]);
        assert!(matches!(
            rec_optimize(&e, &bad, 1, RecBackend::Dp),
            Err(Error::InvalidManipulation(_))
        ));
    }
}
