//! Instance generators.
//!
//! Each hardness construction maps a small combinatorial problem to a game
//! instance whose answer matches the source answer; [`source`] has
//! brute-force solvers for the source problems. [`random`] builds seeded
//! random instances for benchmarks and property tests.
//!
//! Candidates are declared in the order the constructions list them and
//! that order doubles as the tie-break order. Districts with no voters are
//! left out: they cannot change any tally and would get weight zero where
//! weights equal district sizes.

mod independent_set;
mod partition;
pub mod random;
pub mod source;
mod sss;
mod subset_sum;
mod x3c;

pub use independent_set::{gen_is_pd_rec, Graph};
pub use partition::gen_partition_pv_recreg;
pub use random::{gen_random, random_manipulation, GammaMode, RandomParams};
pub use sss::gen_sss_pd_man;
pub use subset_sum::{gen_subsetsum_pv_man, gen_subsetsum_pv_rec};
pub use x3c::gen_x3c_pv_rec;

use crate::error::Result;
use crate::model::{District, Election, Manipulation, Rule};

/// A district under construction: true votes, reported votes (if
/// manipulated), gamma and an explicit weight if the default does not apply.
struct Spec {
    votes: Vec<i64>,
    fake: Option<Vec<i64>>,
    gamma: i64,
    weight: Option<i64>,
}

impl Spec {
    fn fixed(votes: Vec<i64>) -> Self {
        let gamma = votes.iter().sum();
        Spec { votes, fake: None, gamma, weight: None }
    }

    fn flipped(votes: Vec<i64>, fake: Vec<i64>) -> Self {
        let gamma = votes.iter().sum();
        Spec { votes, fake: Some(fake), gamma, weight: None }
    }

    fn with_gamma(mut self, gamma: i64) -> Self {
        self.gamma = gamma;
        self
    }

    fn with_weight(mut self, weight: i64) -> Self {
        self.weight = Some(weight);
        self
    }
}

enum Weights {
    Unit,
    Size,
}

/// Assembles an election with the given candidate names (declared order is
/// also the tie-break order) and budgets; `B_A = 0` is raised to 1.
fn assemble(
    rule: Rule,
    names: &[String],
    specs: Vec<Spec>,
    weights: Weights,
    preferred: Option<usize>,
    budgets: (usize, usize),
) -> Result<(Election, Manipulation)> {
    let mut districts = Vec::new();
    let mut manipulation = Manipulation::new();
    for spec in specs {
        let size: i64 = spec.votes.iter().sum();
        if size == 0 {
            continue;
        }
        let weight = spec.weight.unwrap_or(match weights {
            Weights::Unit => 1,
            Weights::Size => size,
        });
        if let Some(fake) = spec.fake {
            manipulation.insert(districts.len(), fake);
        }
        districts.push(District::new(spec.votes, weight, spec.gamma));
    }
    let k = districts.len();
    let mut election = Election::new(rule, names.to_vec(), districts)?
        .with_budgets(budgets.0.clamp(1, k), budgets.1.min(k))?;
    if let Some(p) = preferred {
        election = election.with_preferred(p)?;
    }
    Ok((election, manipulation))
}

fn abp() -> Vec<String> {
    vec!["a".into(), "b".into(), "p".into()]
}
