//! Solver front end shared by the command line and the C interface. Every
//! witness is replayed through [`tally`] before it is returned.

use clap::ValueEnum;

use crate::attacker::{man_decide_brute, man_decide_static, man_pd_regular, verify_regular_attack};
use crate::defender::{
    greedy_recount, rec_decide_brute, rec_decide_dp, rec_optimize, rec_pd_unweighted, RecBackend,
};
use crate::error::{Error, Result};
use crate::model::{tally, validate, Candidate, Election, Manipulation, Rule, Tally};
use crate::report::SolveReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RecAlgo {
    Dp,
    Brute,
    /// Min-cost flow, PD with unit weights only.
    UnweightedPd,
    /// Response only, takes no target.
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ManAlgo {
    /// `pd-reg` for regular PD, `brute` otherwise.
    Auto,
    Brute,
    PdReg,
    /// Defender budget 0 only.
    Static,
    /// Check the instance's own manipulation as a regular attack.
    Verify,
}

fn need(manipulation: Option<&Manipulation>) -> Result<&Manipulation> {
    manipulation.ok_or_else(|| Error::Parse("the instance has no manipulation".into()))
}

/// Runs a recount solver. Without `target` the defender's best response is
/// computed. The returned tally belongs to the witness recount, if any.
pub fn solve_rec(
    election: &Election,
    manipulation: Option<&Manipulation>,
    target: Option<Candidate>,
    algo: RecAlgo,
    budget: usize,
) -> Result<(SolveReport, Option<Tally>)> {
    let (e, m) = (election, need(manipulation)?);
    let report = match (algo, target) {
        (RecAlgo::Dp, Some(t)) => rec_decide_dp(e, m, budget, t)?,
        (RecAlgo::Brute, Some(t)) => rec_decide_brute(e, m, budget, t)?,
        (RecAlgo::UnweightedPd, Some(t)) => rec_pd_unweighted(e, m, budget, t)?,
        (RecAlgo::Greedy, Some(_)) => {
            return Err(Error::Unsupported("greedy recounting computes a response, it takes no target".into()))
        }
        (RecAlgo::Dp, None) => rec_optimize(e, m, budget, RecBackend::Dp)?,
        (RecAlgo::Brute, None) => rec_optimize(e, m, budget, RecBackend::Brute)?,
        (RecAlgo::UnweightedPd, None) => {
            let mut found = None;
            for c in e.defender_ranking() {
                let r = rec_pd_unweighted(e, m, budget, c)?;
                if r.decision {
                    found = Some(r);
                    break;
                }
            }
            found.ok_or_else(|| Error::Internal("no candidate is reachable".into()))?
        }
        (RecAlgo::Greedy, None) => greedy_recount(e, m, budget)?,
    };
    let replay = replay(e, m, &report, budget)?;
    Ok((report, replay))
}

/// Runs an attacker solver and checks a winning witness against the
/// optimal defender.
pub fn solve_man(
    election: &Election,
    manipulation: Option<&Manipulation>,
    regular: bool,
    algo: ManAlgo,
) -> Result<(SolveReport, Option<Tally>)> {
    let e = election;
    let p = e.require_preferred("the attacker search")?;
    let report = match algo {
        ManAlgo::Auto if regular && e.rule() == Rule::Pd => man_pd_regular(e)?,
        ManAlgo::Auto | ManAlgo::Brute => man_decide_brute(e, regular)?,
        ManAlgo::PdReg if !regular => {
            return Err(Error::Unsupported("pd-reg searches regular manipulations only".into()))
        }
        ManAlgo::PdReg => man_pd_regular(e)?,
        ManAlgo::Static => man_decide_static(e, regular)?,
        ManAlgo::Verify => verify_regular_attack(e, need(manipulation)?)?,
    };
    let (true, Some(m)) = (report.decision, &report.manipulation) else {
        return Ok((report, None));
    };
    if let Err(violations) = validate(e, m, regular || algo == ManAlgo::Verify) {
        return Err(Error::Internal(format!("witness manipulation rejected: {}", violations[0])));
    }
    let best = rec_optimize(e, m, e.budget_defender(), RecBackend::Dp)?;
    if best.winner != Some(p) {
        return Err(Error::Internal("the defender defeats the witness manipulation".into()));
    }
    let replay = replay(e, m, &report, e.budget_defender())?;
    Ok((report, replay))
}

/// Re-derives the reported winner from the witness recount.
fn replay(e: &Election, m: &Manipulation, report: &SolveReport, budget: usize) -> Result<Option<Tally>> {
    let (Some(r), Some(w)) = (&report.recount, report.winner) else {
        return Ok(None);
    };
    r.validate(m, budget).map_err(|err| Error::Internal(format!("witness recount rejected: {err}")))?;
    let t = tally(e, Some(m), Some(r))?;
    if t.winner != w {
        return Err(Error::Internal(format!(
            "witness recount elects `{}`, solver claimed `{}`",
            e.candidate_name(t.winner),
            e.candidate_name(w)
        )));
    }
    Ok(Some(t))
}
