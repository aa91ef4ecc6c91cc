use std::fmt;
use std::time::Duration;

use serde_json::{json, Map, Value};

use crate::model::{Candidate, Election, Manipulation, RecountSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    RecBrute,
    RecDp,
    RecUnweightedPd,
    RecGreedy,
    ManBrute,
    ManBruteRegular,
    ManStatic,
    ManStaticRegular,
    ManPdRegular,
    VerifyRegular,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::RecBrute => "rec-brute",
            Algorithm::RecDp => "rec-dp",
            Algorithm::RecUnweightedPd => "rec-unweighted-pd",
            Algorithm::RecGreedy => "rec-greedy",
            Algorithm::ManBrute => "man-brute",
            Algorithm::ManBruteRegular => "man-brute-regular",
            Algorithm::ManStatic => "man-static",
            Algorithm::ManStaticRegular => "man-static-regular",
            Algorithm::ManPdRegular => "man-pd-regular",
            Algorithm::VerifyRegular => "verify-regular",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Recount sets, DP states or manipulations examined, depending on the solver.
    pub states_explored: u64,
    pub greedy_calls: u64,
    pub elapsed: Duration,
}

/// Outcome of a solver run.
///
/// For recount solvers `decision` answers "can the target win" (or is
/// always true for optimization), `winner` is the winner after the
/// returned recount. For attacker solvers `decision` is "the attacker
/// wins", and `manipulation` / `recount` describe the attack and the
/// defender's best response to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub decision: bool,
    pub winner: Option<Candidate>,
    pub manipulation: Option<Manipulation>,
    pub recount: Option<RecountSet>,
    pub algorithm: Algorithm,
    pub stats: Stats,
}

impl SolveReport {
    pub(crate) fn new(algorithm: Algorithm) -> Self {
        SolveReport {
            decision: false,
            winner: None,
            manipulation: None,
            recount: None,
            algorithm,
            stats: Stats::default(),
        }
    }

    /// JSON view with candidates by name. Timing is left out so equal runs
    /// give equal output.
    pub fn to_json(&self, election: &Election) -> Value {
        json!({
            "algorithm": self.algorithm.as_str(),
            "decision": self.decision,
            "winner": self.winner.map(|c| election.candidate_name(c)),
            "manipulation": self.manipulation.as_ref().map(|m| manipulation_json(election, m)),
            "recount": self.recount.as_ref().map(|r| r.iter().collect::<Vec<_>>()),
            "stats": {
                "greedy_calls": self.stats.greedy_calls,
                "states_explored": self.stats.states_explored,
            },
        })
    }
}

/// Candidate name to value.
pub fn scores_json(election: &Election, scores: &[i64]) -> Value {
    let map: Map<String, Value> =
        scores.iter().enumerate().map(|(c, &s)| (election.candidate_name(c).to_string(), json!(s))).collect();
    Value::Object(map)
}

fn manipulation_json(election: &Election, m: &Manipulation) -> Value {
    m.iter()
        .map(|(i, v)| {
            let votes: Map<String, Value> = v
                .iter()
                .enumerate()
                .filter(|(_, &n)| n != 0)
                .map(|(c, &n)| (election.candidate_name(c).to_string(), json!(n)))
                .collect();
            json!({ "index": i, "votes": votes })
        })
        .collect()
}

/// Caps that turn runaway searches into [`crate::Error::ResourceLimit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `|M|` the brute-force recount enumeration accepts.
    pub max_recount_districts: usize,
    /// Largest number of distinct score vectors the recount DP may hold.
    pub max_dp_states: usize,
    /// Largest number of manipulations the attacker brute force may examine.
    pub max_manipulations: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_recount_districts: 20,
            max_dp_states: 10_000_000,
            max_manipulations: 5_000_000,
        }
    }
}
