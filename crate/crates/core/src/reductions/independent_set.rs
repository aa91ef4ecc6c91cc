use std::collections::BTreeSet;

use super::{assemble, Spec, Weights};
use crate::error::{Error, Result};
use crate::model::{Election, Manipulation, Rule};

/// Simple undirected graph on nodes `0..nodes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= nodes || v >= nodes {
                return Err(Error::Precondition(format!("edge ({u}, {v}) leaves the node range")));
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at node {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Precondition(format!("edge ({u}, {v}) is listed twice")));
            }
        }
        Ok(Graph { nodes, edges })
    }
}

/// Weighted PD recount instance whose target `a` can be restored iff the
/// graph has an independent set of size `ell`.
///
/// With `ν` nodes, `μ ≥ 1` edges and `σ = 2(ν + μ) + 1`, every district has
/// a single voter and gamma 1. Candidates: `a`, `p`, `u0..` for nodes and
/// `e0..` for edges. Manipulated districts, listed as true winner → reported
/// winner (weight):
/// per edge `e = {x, y}`, `e → x` and `e → y` (2σ); per node `u → p` (2μσ);
/// `σ` districts `a → p` (2). Honest districts: `a` with `(2(ν-ℓ)μ + 3)σ`,
/// each edge candidate with `2(ν-ℓ)μσ`, each node candidate with
/// `(2(ν-ℓ)μ - 2μ + 2)σ`. `B_D = ν + μ`.
///
/// Node weights stay positive only for `ℓ < ν`, so larger `ell` is rejected
/// (with an edge present no such set exists anyway).
pub fn gen_is_pd_rec(graph: &Graph, ell: usize) -> Result<(Election, Manipulation)> {
    let nu = graph.nodes;
    let mu = graph.edges.len();
    if mu == 0 {
        return Err(Error::Precondition("the graph needs at least one edge".into()));
    }
    if ell >= nu {
        return Err(Error::Precondition(format!("ell must be below the node count {nu}")));
    }
    let (nu_i, mu_i, ell_i) = (nu as i64, mu as i64, ell as i64);
    let sigma = 2 * (nu_i + mu_i) + 1;
    let m = 2 + nu + mu;
    let (a, p) = (0, 1);
    let node = |u: usize| 2 + u;
    let edge = |e: usize| 2 + nu + e;
    let mut names: Vec<String> = vec!["a".into(), "p".into()];
    names.extend((0..nu).map(|u| format!("u{u}")));
    names.extend((0..mu).map(|e| format!("e{e}")));

    let one = |c: usize| {
        let mut v = vec![0i64; m];
        v[c] = 1;
        v
    };
    let mut specs = Vec::new();
    let mut push = |spec: Spec, w: i64| specs.push(spec.with_gamma(1).with_weight(w));
    for (e, &(x, y)) in graph.edges.iter().enumerate() {
        push(Spec::flipped(one(edge(e)), one(node(x))), 2 * sigma);
        push(Spec::flipped(one(edge(e)), one(node(y))), 2 * sigma);
    }
    for u in 0..nu {
        push(Spec::flipped(one(node(u)), one(p)), 2 * mu_i * sigma);
    }
    for _ in 0..sigma {
        push(Spec::flipped(one(a), one(p)), 2);
    }
    let base = 2 * (nu_i - ell_i) * mu_i;
    push(Spec::fixed(one(a)), (base + 3) * sigma);
    for e in 0..mu {
        push(Spec::fixed(one(edge(e))), base * sigma);
    }
    for u in 0..nu {
        push(Spec::fixed(one(node(u))), (base - 2 * mu_i + 2) * sigma);
    }

    let budgets = (specs.iter().filter(|s| s.fake.is_some()).count(), nu + mu);
    assemble(Rule::Pd, &names, specs, Weights::Unit, Some(p), budgets)
}
