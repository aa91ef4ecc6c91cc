//! Recounting with unit-weight districts under PD.
//!
//! A recount of district `i` can only move one point from its distorted
//! local winner `y_i` to its true local winner `x_i`, at price one. Fixing
//! the final score `t` of the target turns "can the target win" into a
//! min-cost flow: every point starts at its distorted owner, may travel
//! along recount edges, and must end at a candidate whose final score stays
//! below the target's.

use std::collections::BTreeMap;
use std::time::Instant;

use super::{check_target, prepare};
use crate::error::{Error, Result};
use crate::model::{district_winner, tally, Candidate, Election, Manipulation, RecountSet, Rule};
use crate::report::{Algorithm, SolveReport};

pub fn rec_pd_unweighted(
    election: &Election,
    manipulation: &Manipulation,
    budget: usize,
    target: Candidate,
) -> Result<SolveReport> {
    let start = Instant::now();
    if election.rule() != Rule::Pd || !election.is_unweighted() {
        return Err(Error::Unsupported(
            "the unweighted PD recount solver needs rule PD with all weights equal to 1".into(),
        ));
    }
    check_target(election, target)?;
    let rm = prepare(election, manipulation)?;
    let m = election.num_candidates();
    let k = election.num_districts() as i64;
    let c = target;
    let scores = &rm.distorted;

    // (from, to) -> manipulated districts whose recount moves a point.
    let mut moves: BTreeMap<(Candidate, Candidate), Vec<usize>> = BTreeMap::new();
    for (i, fake) in manipulation.iter() {
        let y = district_winner(fake, election.ranks());
        let x = election.true_district_winner(i);
        if x != y && y != c {
            moves.entry((y, x)).or_default().push(i);
        }
    }
    let gains = moves
        .iter()
        .filter(|((_, x), _)| *x == c)
        .map(|(_, v)| v.len() as i64)
        .sum::<i64>();

    let mut report = SolveReport::new(Algorithm::RecUnweightedPd);
    for t in scores[c]..=scores[c] + gains {
        report.stats.states_explored += 1;
        let caps: Vec<i64> = (0..m)
            .map(|d| if election.favors(c, d) { t } else { t - 1 })
            .collect();
        if (0..m).any(|d| d != c && caps[d] < 0) {
            continue;
        }
        // Nodes: candidates, then source, sink and the collector for
        // points kept by candidates other than the target.
        let (src, sink, rest) = (m, m + 1, m + 2);
        let mut net = FlowNetwork::new(m + 3);
        for d in 0..m {
            net.add_edge(src, d, scores[d], 0);
            if d != c {
                net.add_edge(d, rest, caps[d], 0);
            }
        }
        net.add_edge(rest, sink, k - t, 0);
        net.add_edge(c, sink, k, 0);
        let edges: Vec<((Candidate, Candidate), usize)> = moves
            .iter()
            .map(|(&(y, x), ds)| ((y, x), net.add_edge(y, x, ds.len() as i64, 1)))
            .collect();
        let (flow, cost) = net.min_cost_flow(src, sink);
        if flow != k || cost > budget as i64 {
            continue;
        }
        let recount: RecountSet = edges
            .iter()
            .flat_map(|(key, e)| moves[key].iter().copied().take(net.flow(*e) as usize))
            .collect();
        let check = tally(election, Some(manipulation), Some(&recount))?;
        if check.winner != c || recount.len() > budget {
            return Err(Error::Internal(format!(
                "flow recount {recount:?} does not elect candidate #{c}"
            )));
        }
        report.decision = true;
        report.winner = Some(c);
        report.recount = Some(recount);
        break;
    }
    report.stats.elapsed = start.elapsed();
    Ok(report)
}

struct Edge {
    to: usize,
    cap: i64,
    cost: i64,
}

/// Successive shortest paths with Bellman-Ford; the networks here have a
/// handful of nodes.
struct FlowNetwork {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    original: Vec<i64>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        FlowNetwork { edges: Vec::new(), adj: vec![Vec::new(); n], original: Vec::new() }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.edges.push(Edge { to: from, cap: 0, cost: -cost });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        self.original.push(cap);
        self.original.push(0);
        id
    }

    fn flow(&self, edge: usize) -> i64 {
        self.original[edge] - self.edges[edge].cap
    }

    fn min_cost_flow(&mut self, s: usize, t: usize) -> (i64, i64) {
        let n = self.adj.len();
        let (mut flow, mut cost) = (0, 0);
        loop {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[s] = 0;
            for _ in 0..n {
                let mut relaxed = false;
                for u in 0..n {
                    if dist[u] == i64::MAX {
                        continue;
                    }
                    for &e in &self.adj[u] {
                        let edge = &self.edges[e];
                        if edge.cap > 0 && dist[u] + edge.cost < dist[edge.to] {
                            dist[edge.to] = dist[u] + edge.cost;
                            via[edge.to] = e;
                            relaxed = true;
                        }
                    }
                }
                if !relaxed {
                    break;
                }
            }
            if dist[t] == i64::MAX {
                return (flow, cost);
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.edges[e].cap);
                v = self.edges[e ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.edges[e].cap -= push;
                self.edges[e ^ 1].cap += push;
                v = self.edges[e ^ 1].to;
            }
            flow += push;
            cost += push * dist[t];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defender::rec_decide_brute;
    use crate::model::District;

    /// Three unit districts truly won by `a`; the first two reported for `b`.
    fn three_districts() -> (Election, Manipulation) {
        let e = Election::new(
            Rule::Pd,
            vec!["a".into(), "b".into()],
            vec![District::open(vec![2, 1], 1); 3],
        )
        .and_then(|e| e.with_budgets(2, 1))
        .unwrap();
        let m = Manipulation::new().with(0, vec![1, 2]).with(1, vec![1, 2]);
        (e, m)
    }

    #[test]
    fn one_recount_suffices() {
        let (e, m) = three_districts();
        let r = rec_pd_unweighted(&e, &m, 1, 0).unwrap();
        assert!(r.decision);
        assert_eq!(r.recount.unwrap().len(), 1);
    }

    #[test]
    fn no_budget_no_change() {
        let (e, m) = three_districts();
        let r = rec_pd_unweighted(&e, &m, 0, 0).unwrap();
        assert!(!r.decision);
        assert!(rec_pd_unweighted(&e, &m, 0, 1).unwrap().decision);
    }

    #[test]
    fn weighted_instances_are_unsupported() {
        let (e, m) = three_districts();
        let weighted = Election::new(
            Rule::Pd,
            e.candidates().to_vec(),
            vec![District::open(vec![2, 1], 2); 3],
        )
        .unwrap();
        assert!(matches!(rec_pd_unweighted(&weighted, &Manipulation::new(), 0, 0), Err(Error::Unsupported(_))));
        let pv = Election::new(Rule::Pv, e.candidates().to_vec(), e.districts().to_vec()).unwrap();
        assert!(matches!(rec_pd_unweighted(&pv, &m, 0, 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn chained_moves_through_a_third_candidate() {
        // Truth: p wins 0, a wins 1..3, b wins 3..5, c wins 5.
        // Reported: district 0 for a, district 5 for b.
        // Target c needs its own district back and b held to c's score.
        let names = vec!["a".into(), "b".into(), "c".into(), "p".into()];
        let mut ds = vec![District::open(vec![0, 0, 0, 3], 1)];
        ds.extend(vec![District::open(vec![3, 0, 0, 0], 1); 2]);
        ds.extend(vec![District::open(vec![0, 3, 0, 0], 1); 2]);
        ds.push(District::open(vec![0, 0, 3, 0], 1));
        let e = Election::new(Rule::Pd, names, ds)
            .and_then(|e| e.with_tiebreak(vec![2, 0, 1, 3]))
            .and_then(|e| e.with_budgets(2, 2))
            .unwrap();
        let m = Manipulation::new().with(0, vec![3, 0, 0, 0]).with(5, vec![0, 3, 0, 0]);
        for target in 0..4 {
            for budget in 0..3 {
                let flow = rec_pd_unweighted(&e, &m, budget, target).unwrap();
                let brute = rec_decide_brute(&e, &m, budget, target).unwrap();
                assert_eq!(flow.decision, brute.decision, "target {target} budget {budget}");
            }
        }
    }
}
