use std::collections::BTreeSet;

use super::{abp, assemble, Spec, Weights};
use crate::error::{Error, Result};
use crate::model::{Election, Rule};

/// PD attacker instance that `p` wins iff some `ℓ`-subset of `xs` has no
/// non-empty sub-subset summing to zero.
///
/// Candidates `a, b, p`, `y = Σ 3|x|`. Per `x > 0` a district `(0, 3x, 0)`,
/// per `x < 0` a district `(0, 0, -3x)`, one district `(0, y + 3, 0)`, all
/// fully changeable; then three fixed districts (gamma 0) `(2y + 5, 0, 0)`,
/// `(0, y - Σ⁺ 3x, 0)` and `(0, 0, 2y + 4 + Σ⁻ 3x)`. Every district weighs
/// its size. `B_A = ℓ + 1`, `B_D = ℓ`.
pub fn gen_sss_pd_man(xs: &[i64], ell: usize) -> Result<Election> {
    if ell == 0 || xs.len() < ell {
        return Err(Error::Precondition(format!("need 1 <= ell <= |X|, got ell = {ell}")));
    }
    if xs.contains(&0) {
        return Err(Error::Precondition("entries must be non-zero".into()));
    }
    if xs.iter().collect::<BTreeSet<_>>().len() != xs.len() {
        return Err(Error::Precondition("entries must be distinct".into()));
    }
    let y: i64 = xs.iter().map(|x| 3 * x.abs()).sum();
    let pos: i64 = xs.iter().filter(|&&x| x > 0).map(|x| 3 * x).sum();
    let neg: i64 = xs.iter().filter(|&&x| x < 0).map(|x| 3 * x).sum();
    let mut specs: Vec<Spec> = xs
        .iter()
        .map(|&x| if x > 0 { Spec::fixed(vec![0, 3 * x, 0]) } else { Spec::fixed(vec![0, 0, -3 * x]) })
        .collect();
    specs.push(Spec::fixed(vec![0, y + 3, 0]));
    specs.push(Spec::fixed(vec![2 * y + 5, 0, 0]).with_gamma(0));
    specs.push(Spec::fixed(vec![0, y - pos, 0]).with_gamma(0));
    specs.push(Spec::fixed(vec![0, 0, 2 * y + 4 + neg]).with_gamma(0));
    assemble(Rule::Pd, &abp(), specs, Weights::Size, Some(2), (ell + 1, ell)).map(|(e, _)| e)
}
