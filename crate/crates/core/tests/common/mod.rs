//! Independent reference implementations used as test oracles. They share
//! no code with the library beyond reading an election's raw fields.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recount::reductions::{gen_random, random_manipulation, GammaMode, RandomParams};
use recount::{Election, Manipulation, Rule};

fn rank(e: &Election, c: usize) -> usize {
    e.tiebreak().iter().position(|&x| x == c).unwrap()
}

/// Highest score, ties to the higher tie-break priority.
fn best(e: &Election, score: &[i64]) -> usize {
    (0..score.len()).max_by(|&a, &b| score[a].cmp(&score[b]).then(rank(e, b).cmp(&rank(e, a)))).unwrap()
}

/// Winner of a profile given as one vote vector per district.
pub fn winner(e: &Election, profile: &[Vec<i64>]) -> usize {
    best(e, &scores(e, profile))
}

pub fn scores(e: &Election, profile: &[Vec<i64>]) -> Vec<i64> {
    let m = e.num_candidates();
    let mut score = vec![0i64; m];
    for (i, votes) in profile.iter().enumerate() {
        match e.rule() {
            Rule::Pv => (0..m).for_each(|c| score[c] += votes[c]),
            Rule::Pd => score[best(e, votes)] += e.district(i).weight,
        }
    }
    score
}

pub fn true_profile(e: &Election) -> Vec<Vec<i64>> {
    e.districts().iter().map(|d| d.votes.clone()).collect()
}

/// Profile after manipulating and then recounting the districts in `recount`.
pub fn profile(e: &Election, m: &Manipulation, recount: &[usize]) -> Vec<Vec<i64>> {
    let mut out = true_profile(e);
    for (i, v) in m.iter() {
        if !recount.contains(&i) {
            out[i] = v.to_vec();
        }
    }
    out
}

/// True score of every candidate.
pub fn welfare(e: &Election) -> Vec<i64> {
    scores(e, &true_profile(e))
}

/// Defender order: true score first, then tie-break priority.
pub fn prefers(e: &Election, a: usize, b: usize) -> bool {
    let w = welfare(e);
    w[a] > w[b] || (w[a] == w[b] && rank(e, a) < rank(e, b))
}

/// Every recount of at most `budget` manipulated districts.
pub fn recounts(m: &Manipulation, budget: usize) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = m.districts().collect();
    (0u64..1 << idx.len())
        .filter(|mask| mask.count_ones() as usize <= budget)
        .map(|mask| (0..idx.len()).filter(|j| mask >> j & 1 == 1).map(|j| idx[j]).collect())
        .collect()
}

/// Winners the defender can reach.
pub fn reachable(e: &Election, m: &Manipulation, budget: usize) -> Vec<usize> {
    let mut out: Vec<usize> = recounts(m, budget).iter().map(|r| winner(e, &profile(e, m, r))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The defender's optimal outcome.
pub fn optimal(e: &Election, m: &Manipulation, budget: usize) -> usize {
    let w = welfare(e);
    reachable(e, m, budget)
        .into_iter()
        .max_by(|&a, &b| w[a].cmp(&w[b]).then(rank(e, b).cmp(&rank(e, a))))
        .unwrap()
}

/// Parameters for a small random instance drawn from `rng`.
pub fn small_params(rng: &mut ChaCha8Rng, rule: Rule, k_max: usize, m_max: usize, w_max: i64) -> RandomParams {
    let k = rng.random_range(1..=k_max);
    let gamma = match rng.random_range(0..3) {
        0 => GammaMode::Full,
        1 => GammaMode::Zero,
        _ => GammaMode::Random,
    };
    RandomParams {
        rule,
        k,
        m: rng.random_range(2..=m_max),
        n_max: 5,
        w_max,
        gamma,
        budget_attacker: rng.random_range(1..=k),
        budget_defender: rng.random_range(0..=k),
    }
}

/// A seeded stream of small elections with a sampled manipulation.
pub fn sample(
    seed: u64,
    rule: Rule,
    k_max: usize,
    w_max: i64,
    regular: bool,
) -> (Election, Manipulation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = small_params(&mut rng, rule, k_max, 4, w_max);
    if regular && params.gamma == GammaMode::Zero {
        params.gamma = GammaMode::Full;
    }
    let e = gen_random(&params, rng.random()).unwrap();
    let m = random_manipulation(&e, 5, regular, rng.random()).unwrap();
    (e, m)
}
