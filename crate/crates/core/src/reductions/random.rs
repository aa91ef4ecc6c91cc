//! Seeded random instances.

use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::attacker::district_min_steal;
use crate::error::{Error, Result};
use crate::model::{Election, District, Manipulation, Rule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaMode {
    /// `gamma = n_i`.
    Full,
    Zero,
    /// Uniform in `0..=n_i`.
    Random,
}

impl FromStr for GammaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(GammaMode::Full),
            "zero" => Ok(GammaMode::Zero),
            "random" => Ok(GammaMode::Random),
            _ => Err(Error::Parse(format!("unknown gamma mode `{s}` (expected full, zero or random)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub rule: Rule,
    /// Districts.
    pub k: usize,
    /// Candidates.
    pub m: usize,
    /// District sizes are uniform in `1..=n_max`.
    pub n_max: i64,
    /// Weights are uniform in `1..=w_max`.
    pub w_max: i64,
    pub gamma: GammaMode,
    pub budget_attacker: usize,
    pub budget_defender: usize,
}

impl RandomParams {
    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Precondition(msg));
        if self.k == 0 || self.m == 0 {
            return bad("k and m must be positive".into());
        }
        if self.n_max < 1 || self.w_max < 1 {
            return bad("n_max and w_max must be positive".into());
        }
        if self.budget_attacker < 1 || self.budget_attacker > self.k || self.budget_defender > self.k {
            return bad(format!(
                "budgets B_A = {}, B_D = {} do not fit k = {}",
                self.budget_attacker, self.budget_defender, self.k
            ));
        }
        Ok(())
    }
}

fn names(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("c{i}")).collect()
}

/// A random election. Each voter picks a candidate uniformly; the
/// tie-break order is a random permutation and the preferred candidate is
/// drawn uniformly. Equal seeds give equal instances.
pub fn gen_random(params: &RandomParams, seed: u64) -> Result<Election> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = params.m;
    let districts = (0..params.k)
        .map(|_| {
            let n = rng.random_range(1..=params.n_max);
            let mut votes = vec![0i64; m];
            for _ in 0..n {
                votes[rng.random_range(0..m)] += 1;
            }
            let weight = rng.random_range(1..=params.w_max);
            let gamma = match params.gamma {
                GammaMode::Full => n,
                GammaMode::Zero => 0,
                GammaMode::Random => rng.random_range(0..=n),
            };
            District::new(votes, weight, gamma)
        })
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut rng);
    let preferred = rng.random_range(0..m);
    Election::new(params.rule, names(m), districts)?
        .with_tiebreak(order)?
        .with_preferred(preferred)?
        .with_budgets(params.budget_attacker, params.budget_defender)
}

/// A random valid manipulation of at most `max_size` districts (and at most
/// `B_A`). With `regular`, votes only move to the preferred candidate and
/// under PD every manipulated district is handed to it; districts where
/// that is impossible are skipped.
pub fn random_manipulation(election: &Election, max_size: usize, regular: bool, seed: u64) -> Result<Manipulation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = election.require_preferred("random manipulation")?;
    let k = election.num_districts();
    let size = rng.random_range(0..=max_size.min(election.budget_attacker()).min(k));
    let mut all: Vec<usize> = (0..k).collect();
    all.shuffle(&mut rng);
    let mut out = Manipulation::new();
    for &i in &all[..size] {
        let d = election.district(i);
        let fake = if regular {
            let mut w = match election.rule() {
                Rule::Pv => d.votes.clone(),
                Rule::Pd => match district_min_steal(&d.votes, p, election.ranks()) {
                    Some((t, w)) if t <= d.gamma => w,
                    _ => continue,
                },
            };
            let used = w[p] - d.votes[p];
            let extra = rng.random_range(0..=d.gamma - used);
            for _ in 0..extra {
                let donors: Vec<usize> = (0..w.len()).filter(|&c| c != p && w[c] > 0).collect();
                let Some(&c) = donors.choose(&mut rng) else { break };
                w[c] -= 1;
                w[p] += 1;
            }
            w
        } else {
            let mut w = d.votes.clone();
            let moves = rng.random_range(0..=d.gamma);
            for _ in 0..moves {
                let donors: Vec<usize> = (0..w.len()).filter(|&c| w[c] > 0).collect();
                let Some(&from) = donors.choose(&mut rng) else { break };
                let to = rng.random_range(0..w.len());
                w[from] -= 1;
                w[to] += 1;
            }
            w
        };
        out.insert(i, fake);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;

    fn params(rule: Rule, gamma: GammaMode) -> RandomParams {
        RandomParams { rule, k: 6, m: 4, n_max: 5, w_max: 10, gamma, budget_attacker: 4, budget_defender: 2 }
    }

    #[test]
    fn deterministic() {
        let p = params(Rule::Pd, GammaMode::Random);
        assert_eq!(gen_random(&p, 42).unwrap(), gen_random(&p, 42).unwrap());
        assert_ne!(gen_random(&p, 42).unwrap(), gen_random(&p, 43).unwrap());
    }

    #[test]
    fn gamma_modes() {
        let full = gen_random(&params(Rule::Pv, GammaMode::Full), 7).unwrap();
        assert!(full.districts().iter().all(|d| d.gamma == d.size()));
        let zero = gen_random(&params(Rule::Pv, GammaMode::Zero), 7).unwrap();
        assert!(zero.districts().iter().all(|d| d.gamma == 0));
    }

    #[test]
    fn manipulations_are_valid() {
        for seed in 0..200 {
            for rule in [Rule::Pv, Rule::Pd] {
                let e = gen_random(&params(rule, GammaMode::Random), seed).unwrap();
                for regular in [false, true] {
                    let m = random_manipulation(&e, 5, regular, seed).unwrap();
                    assert!(m.len() <= 4);
                    assert_eq!(validate(&e, &m, regular), Ok(()), "seed {seed} {rule} regular {regular}");
                }
            }
        }
    }

    #[test]
    fn bad_params() {
        let mut p = params(Rule::Pv, GammaMode::Full);
        p.budget_attacker = 0;
        assert!(gen_random(&p, 1).is_err());
        let mut p = params(Rule::Pv, GammaMode::Full);
        p.n_max = 0;
        assert!(gen_random(&p, 1).is_err());
        assert_eq!("zero".parse::<GammaMode>().unwrap(), GammaMode::Zero);
        assert!("half".parse::<GammaMode>().is_err());
    }
}
