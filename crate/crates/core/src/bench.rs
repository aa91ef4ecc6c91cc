//! Seeded benchmark over random instances: how often a sampled attack
//! survives the optimal defender, and how close greedy recounting comes.

use std::time::Instant;

use rayon::prelude::*;

use crate::defender::{greedy_recount, rec_optimize, RecBackend};
use crate::error::Result;
use crate::reductions::{gen_random, random_manipulation, RandomParams};

pub const CSV_HEADER: &str = "seed,trial,rule,k,m,B_A,B_D,regular,attacker_wins,greedy_sw,opt_sw,ratio,runtime_ms";

#[derive(Clone, Copy, Debug)]
pub struct BenchParams {
    pub seed: u64,
    pub trials: usize,
    pub instance: RandomParams,
    pub regular: bool,
    /// Upper bound on manipulated districts per sampled attack.
    pub max_manipulated: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub trial: usize,
    /// The sampled attack keeps `p` elected against the optimal defender.
    pub attacker_wins: bool,
    pub greedy_sw: i64,
    pub opt_sw: i64,
    pub runtime_ms: f64,
}

impl Row {
    /// `greedy_sw / opt_sw`, 1 when both are zero.
    pub fn ratio(&self) -> f64 {
        if self.opt_sw == 0 {
            1.0
        } else {
            self.greedy_sw as f64 / self.opt_sw as f64
        }
    }
}

/// Seeds of trial `t`: instance and attack.
pub fn trial_seeds(seed: u64, trial: usize) -> (u64, u64) {
    let s = seed.wrapping_add(trial as u64);
    (s, s ^ 0x9e37_79b9_7f4a_7c15)
}

fn run_trial(params: &BenchParams, trial: usize) -> Result<Row> {
    let start = Instant::now();
    let (instance_seed, attack_seed) = trial_seeds(params.seed, trial);
    let e = gen_random(&params.instance, instance_seed)?;
    let m = random_manipulation(&e, params.max_manipulated, params.regular, attack_seed)?;
    let p = e.require_preferred("bench")?;
    let b_d = e.budget_defender();
    let opt = rec_optimize(&e, &m, b_d, RecBackend::Dp)?;
    let greedy = greedy_recount(&e, &m, b_d)?;
    let opt_winner = opt.winner.expect("the optimal response names a winner");
    let greedy_winner = greedy.winner.expect("greedy names a winner");
    Ok(Row {
        trial,
        attacker_wins: opt_winner == p,
        greedy_sw: e.welfare()[greedy_winner],
        opt_sw: e.welfare()[opt_winner],
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Runs every trial, in parallel, returning rows in trial order.
pub fn run(params: &BenchParams) -> Result<Vec<Row>> {
    (0..params.trials).into_par_iter().map(|t| run_trial(params, t)).collect()
}

pub fn csv_line(params: &BenchParams, row: &Row) -> String {
    let p = &params.instance;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{:.6},{:.3}",
        params.seed,
        row.trial,
        p.rule,
        p.k,
        p.m,
        p.budget_attacker,
        p.budget_defender,
        params.regular,
        row.attacker_wins,
        row.greedy_sw,
        row.opt_sw,
        row.ratio(),
        row.runtime_ms
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Rule;
    use crate::reductions::GammaMode;

    fn params(regular: bool) -> BenchParams {
        BenchParams {
            seed: 5,
            trials: 40,
            instance: RandomParams {
                rule: Rule::Pd,
                k: 6,
                m: 3,
                n_max: 5,
                w_max: 10,
                gamma: GammaMode::Full,
                budget_attacker: 4,
                budget_defender: 2,
            },
            regular,
            max_manipulated: 4,
        }
    }

    #[test]
    fn rows_are_ordered_and_reproducible() {
        let a = run(&params(true)).unwrap();
        let b = run(&params(true)).unwrap();
        assert_eq!(a.iter().map(|r| r.trial).collect::<Vec<_>>(), (0..40).collect::<Vec<_>>());
        let strip = |rows: &[Row]| rows.iter().map(|r| (r.attacker_wins, r.greedy_sw, r.opt_sw)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
        assert!(a.iter().all(|r| r.ratio() >= 0.5 && r.ratio() <= 1.0));
    }

    #[test]
    fn csv_shape() {
        let p = params(false);
        let rows = run(&BenchParams { trials: 1, ..p }).unwrap();
        let line = csv_line(&p, &rows[0]);
        assert_eq!(line.split(',').count(), CSV_HEADER.split(',').count());
        assert!(line.starts_with("5,0,PD,6,3,4,2,false,"));
    }
}
