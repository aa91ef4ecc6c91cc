use super::{abp, assemble, Spec, Weights};
use crate::error::{Error, Result};
use crate::model::{Election, Manipulation, Rule};

/// Recount instance whose target `a` can be restored iff some non-empty
/// sub-multiset of `xs` sums to zero.
///
/// Candidates `a, b, p`. Each `x > 0` gives a district `(0, 2x, 0)`
/// reported as `(0, 0, 2x)`; each `x < 0` gives `(0, 0, -2x)` reported as
/// `(0, -2x, 0)`. With `y = Σ 2|x|`, three honest districts `(y + 1, 0, 0)`,
/// `(0, y - Σ⁺ 2x, 0)` and `(0, 0, y + Σ⁻ 2x)` complete the profile.
/// `B_D = |X| - 1`. With `weighted` the rule is PD and every district
/// weighs its size; otherwise PV with unit weights.
///
/// All voters of a district vote alike, so the district sizes listed here
/// are authoritative; the total voter count follows from them.
pub fn gen_subsetsum_pv_rec(xs: &[i64], weighted: bool) -> Result<(Election, Manipulation)> {
    if xs.is_empty() || xs.contains(&0) {
        return Err(Error::Precondition("entries must be non-zero and the multiset non-empty".into()));
    }
    if xs.iter().sum::<i64>() <= 0 {
        return Err(Error::Precondition("entries must have a positive sum".into()));
    }
    let y: i64 = xs.iter().map(|x| 2 * x.abs()).sum();
    let pos: i64 = xs.iter().filter(|&&x| x > 0).map(|x| 2 * x).sum();
    let neg: i64 = xs.iter().filter(|&&x| x < 0).map(|x| 2 * x).sum();
    let mut specs: Vec<Spec> = xs
        .iter()
        .map(|&x| {
            if x > 0 {
                Spec::flipped(vec![0, 2 * x, 0], vec![0, 0, 2 * x])
            } else {
                Spec::flipped(vec![0, 0, -2 * x], vec![0, -2 * x, 0])
            }
        })
        .collect();
    specs.push(Spec::fixed(vec![y + 1, 0, 0]));
    specs.push(Spec::fixed(vec![0, y - pos, 0]));
    specs.push(Spec::fixed(vec![0, 0, y + neg]));
    let (rule, weights) = if weighted { (Rule::Pd, Weights::Size) } else { (Rule::Pv, Weights::Unit) };
    assemble(rule, &abp(), specs, weights, Some(2), (xs.len(), xs.len() - 1))
}

/// Attacker instance (no recounts) that `p` wins iff some non-empty
/// sub-multiset of `xs` sums to zero.
///
/// Candidates `a, b, p`, `y = max 2|x|`, `ℓ = |X|`. Districts: per `x`,
/// `(2y + 4x, 2y - 4x, 0)`; `ℓ - 1` copies of `(2y, 2y, 0)`; per `x`, two
/// copies of `(y - 2x, y + 2x, 0)`; then `(y, y, 0)` twice and `(0, 0, 1)`.
/// `B_A = ℓ`, `B_D = 0`, every gamma equals the district size.
pub fn gen_subsetsum_pv_man(xs: &[i64]) -> Result<Election> {
    if xs.len() < 2 || xs.contains(&0) {
        return Err(Error::Precondition("need at least two entries, all non-zero".into()));
    }
    let ell = xs.len();
    let y = xs.iter().map(|x| 2 * x.abs()).max().unwrap_or(0);
    let mut specs: Vec<Spec> = xs.iter().map(|&x| Spec::fixed(vec![2 * y + 4 * x, 2 * y - 4 * x, 0])).collect();
    specs.extend((1..ell).map(|_| Spec::fixed(vec![2 * y, 2 * y, 0])));
    for &x in xs {
        specs.push(Spec::fixed(vec![y - 2 * x, y + 2 * x, 0]));
        specs.push(Spec::fixed(vec![y - 2 * x, y + 2 * x, 0]));
    }
    specs.push(Spec::fixed(vec![y, y, 0]));
    specs.push(Spec::fixed(vec![y, y, 0]));
    specs.push(Spec::fixed(vec![0, 0, 1]));
    assemble(Rule::Pv, &abp(), specs, Weights::Unit, Some(2), (ell, 0)).map(|(e, _)| e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tally;

    #[test]
    fn rec_tallies() {
        let xs = [-1, -2, 3, 1];
        let (e, m) = gen_subsetsum_pv_rec(&xs, false).unwrap();
        let y = 14;
        assert_eq!(tally(&e, None, None).unwrap().scores, vec![y + 1, y, y]);
        let sum2: i64 = xs.iter().map(|x| 2 * x).sum();
        let distorted = tally(&e, Some(&m), None).unwrap();
        assert_eq!(distorted.scores, vec![y + 1, y - sum2, y + sum2]);
        assert_eq!(distorted.winner, 2);
        assert_eq!(e.budget_defender(), 3);
        assert_eq!(m.len(), 4);
    }

    #[test]
    fn weighted_rec_uses_sizes() {
        let (e, m) = gen_subsetsum_pv_rec(&[1, 2], true).unwrap();
        assert_eq!(e.rule(), Rule::Pd);
        // The (0, y - Σ⁺2x, 0) district is empty here and dropped.
        assert_eq!(e.num_districts(), 4);
        assert!(e.districts().iter().all(|d| d.weight == d.size()));
        assert_eq!(tally(&e, Some(&m), None).unwrap().winner, 2);
    }

    #[test]
    fn man_welfare() {
        let e = gen_subsetsum_pv_man(&[1, -1]).unwrap();
        let y = 2;
        let ell = 2;
        assert_eq!(e.welfare(), &[6 * y * ell, 6 * y * ell, 1]);
        assert_eq!(e.num_districts(), 4 * ell as usize + 2);
        assert_eq!((e.budget_attacker(), e.budget_defender()), (2, 0));
    }

    #[test]
    fn preconditions() {
        assert!(gen_subsetsum_pv_rec(&[1, -1], false).is_err());
        assert!(gen_subsetsum_pv_rec(&[0, 2], false).is_err());
        assert!(gen_subsetsum_pv_rec(&[], false).is_err());
        assert!(gen_subsetsum_pv_man(&[1]).is_err());
        assert!(gen_subsetsum_pv_man(&[1, 0]).is_err());
    }
}
