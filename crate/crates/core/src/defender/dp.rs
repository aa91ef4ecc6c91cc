//! Recount DP over reachable score vectors.
//!
//! Starting from the distorted tally, each manipulated district either
//! stays as reported or is recounted, which adds its score delta. The
//! table keeps, for every distinct reachable vector, the fewest recounts
//! needed to reach it. States are interned once; each layer only records
//! the vectors it created or improved, together with the vector they were
//! derived from, which is enough to rebuild a witness.

use std::collections::HashMap;
use std::time::Instant;

use super::{check_target, decision_report, prepare};
use crate::error::{Error, Result};
use crate::model::{Candidate, Election, Manipulation, RecountModel};
use crate::report::{Algorithm, Limits, SolveReport};

pub fn rec_decide_dp(
    election: &Election,
    manipulation: &Manipulation,
    budget: usize,
    target: Candidate,
) -> Result<SolveReport> {
    rec_decide_dp_with(election, manipulation, budget, target, &Limits::default())
}

pub fn rec_decide_dp_with(
    election: &Election,
    manipulation: &Manipulation,
    budget: usize,
    target: Candidate,
    limits: &Limits,
) -> Result<SolveReport> {
    let start = Instant::now();
    check_target(election, target)?;
    let rm = prepare(election, manipulation)?;
    let table = Reachable::build(&rm, budget, limits)?;
    let hit = (0..table.len())
        .find(|&id| election.winner_of(table.vector(id)) == target)
        .map(|id| (target, table.witness(id)));
    let mut report = decision_report(Algorithm::RecDp, &rm, hit);
    report.stats.states_explored = table.len() as u64;
    report.stats.elapsed = start.elapsed();
    Ok(report)
}

pub(super) fn optimize(
    election: &Election,
    rm: &RecountModel,
    budget: usize,
    limits: &Limits,
) -> Result<SolveReport> {
    let table = Reachable::build(rm, budget, limits)?;
    let mut best: Option<(Candidate, usize)> = None;
    for id in 0..table.len() {
        let w = election.winner_of(table.vector(id));
        if best.is_none_or(|(b, _)| election.defender_prefers(w, b)) {
            best = Some((w, id));
        }
    }
    let hit = best.map(|(w, id)| (w, table.witness(id)));
    let mut report = decision_report(Algorithm::RecDp, rm, hit);
    report.stats.states_explored = table.len() as u64;
    Ok(report)
}

struct Reachable {
    width: usize,
    /// Interned vectors, `width` entries each; id 0 is the distorted tally.
    flat: Vec<i64>,
    /// Fewest recounts reaching each vector.
    cost: Vec<u32>,
    /// Per layer, sorted `(id, parent)` for every vector whose cost was set
    /// by recounting that layer's district.
    changed: Vec<Vec<(u32, u32)>>,
}

impl Reachable {
    fn build(rm: &RecountModel, budget: usize, limits: &Limits) -> Result<Self> {
        let width = rm.distorted.len();
        let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
        index.insert(rm.distorted.clone(), 0);
        let mut table = Reachable {
            width,
            flat: rm.distorted.clone(),
            cost: vec![0],
            changed: Vec::with_capacity(rm.deltas.len()),
        };
        let budget = budget.min(rm.deltas.len()) as u32;
        let mut next = vec![0i64; width];
        for delta in &rm.deltas {
            // Sources are the states from before this layer with their
            // pre-layer costs; updates are applied afterwards so a district
            // is never recounted twice on one path.
            let before = table.len();
            let mut improved = Vec::new();
            let mut fresh = Vec::new();
            for src in 0..before {
                let c = table.cost[src];
                if c >= budget {
                    continue;
                }
                for ((n, &s), &d) in next.iter_mut().zip(table.vector(src)).zip(delta) {
                    *n = s + d;
                }
                match index.get(next.as_slice()) {
                    Some(&id) if table.cost[id as usize] <= c + 1 => {}
                    Some(&id) => improved.push((id, src as u32, c + 1)),
                    None => fresh.push((next.clone(), src as u32, c + 1)),
                }
            }
            if before + fresh.len() > limits.max_dp_states {
                return Err(Error::ResourceLimit(format!(
                    "recount DP exceeds {} reachable score vectors",
                    limits.max_dp_states
                )));
            }
            let mut layer = Vec::with_capacity(improved.len() + fresh.len());
            for (id, src, c) in improved {
                table.cost[id as usize] = c;
                layer.push((id, src));
            }
            for (v, src, c) in fresh {
                let id = table.len() as u32;
                table.flat.extend_from_slice(&v);
                table.cost.push(c);
                index.insert(v, id);
                layer.push((id, src));
            }
            layer.sort_unstable();
            table.changed.push(layer);
        }
        Ok(table)
    }

    fn len(&self) -> usize {
        self.cost.len()
    }

    fn vector(&self, id: usize) -> &[i64] {
        &self.flat[id * self.width..(id + 1) * self.width]
    }

    /// Positions of the recounted districts on a cheapest path to `id`.
    fn witness(&self, id: usize) -> Vec<usize> {
        let mut id = id as u32;
        let mut positions = Vec::new();
        for (j, layer) in self.changed.iter().enumerate().rev() {
            if let Ok(k) = layer.binary_search_by_key(&id, |&(x, _)| x) {
                positions.push(j);
                id = layer[k].1;
            }
        }
        debug_assert_eq!(id, 0);
        positions.reverse();
        positions
    }
}
