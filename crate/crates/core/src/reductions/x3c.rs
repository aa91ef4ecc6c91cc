use std::collections::BTreeSet;

use super::{assemble, Spec, Weights};
use crate::error::{Error, Result};
use crate::model::{Election, Manipulation, Rule};

/// Recount instance over `E = {1, ..., 3ℓ}` whose target `a` can be restored
/// iff `ℓ` of the given 3-sets cover `E`.
///
/// Candidates `a, b, j_1, ..., j_3ℓ` (named `j1`, `j2`, ...). Each set `S`
/// gives a district where `a` has 2, `b` 6 and `j_e` 2 votes for `e ∉ S`,
/// reported with `b`'s six votes moved two apiece to the `j_e`, `e ∈ S`.
/// An honest district gives `a` `6ℓs` votes and every `j_e` `6ℓs + 1`.
/// `B_D = ℓ`, `B_A = max(s, 1)`.
///
/// Sets need not cover `E`: an uncovered element keeps `j_e` ahead of `a`,
/// which matches the absence of an exact cover.
pub fn gen_x3c_pv_rec(ell: usize, sets: &[[usize; 3]]) -> Result<(Election, Manipulation)> {
    if ell == 0 {
        return Err(Error::Precondition("the ground set must be non-empty".into()));
    }
    let universe = 3 * ell;
    let mut seen = BTreeSet::new();
    for set in sets {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        if members.len() != 3 {
            return Err(Error::Precondition(format!("set {set:?} does not have three distinct elements")));
        }
        if let Some(e) = members.iter().find(|&&e| e == 0 || e > universe) {
            return Err(Error::Precondition(format!("element {e} is outside 1..={universe}")));
        }
        if !seen.insert(members) {
            return Err(Error::Precondition(format!("set {set:?} is listed twice")));
        }
    }
    let s = sets.len() as i64;
    let m = universe + 2;
    let mut names: Vec<String> = vec!["a".into(), "b".into()];
    names.extend((1..=universe).map(|e| format!("j{e}")));

    let mut specs: Vec<Spec> = sets
        .iter()
        .map(|set| {
            let mut votes = vec![2i64; m];
            votes[1] = 6;
            for &e in set {
                votes[e + 1] = 0;
            }
            let mut fake = vec![2i64; m];
            fake[1] = 0;
            Spec::flipped(votes, fake)
        })
        .collect();
    let mut honest = vec![6 * ell as i64 * s + 1; m];
    honest[0] = 6 * ell as i64 * s;
    honest[1] = 0;
    specs.push(Spec::fixed(honest));
    assemble(Rule::Pv, &names, specs, Weights::Unit, None, (sets.len(), ell))
}
