use super::{abp, assemble, Spec, Weights};
use crate::error::{Error, Result};
use crate::model::{Election, Manipulation, Rule};

/// Regular PV recount instance whose true winner `a` can be restored iff
/// `xs` splits into two halves of equal sum; any other outcome has at most
/// `1/2 + ε` of `a`'s welfare.
///
/// Candidates `a, b, p`, `ℓ = |X|`, `y = Σ x`, `z = ⌈y / ε⌉`. Per `x` a
/// district `(0, 2xℓ, 0)` reported as `(0, 0, 2xℓ)`; `2zℓ` districts
/// `(1, 0, 0)` reported as `(0, 0, 1)`; honest districts
/// `(2zℓ + yℓ + 2ℓ, 0, 0)` and `(0, 2zℓ, 0)`. `B_D = ℓ - 1`. Every change
/// moves votes to `p`, so the manipulation is regular.
pub fn gen_partition_pv_recreg(xs: &[i64], epsilon: f64) -> Result<(Election, Manipulation)> {
    if xs.is_empty() || xs.iter().any(|&x| x <= 0 || x % 4 != 0) {
        return Err(Error::Precondition("entries must be positive multiples of 4".into()));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Precondition(format!("epsilon must be positive, got {epsilon}")));
    }
    let ell = xs.len() as i64;
    let y: i64 = xs.iter().sum();
    let z = (y as f64 / epsilon).ceil();
    if 2.0 * z * ell as f64 > 1e6 {
        return Err(Error::Precondition(format!("epsilon {epsilon} yields over a million districts")));
    }
    let z = z as i64;
    let mut specs: Vec<Spec> = xs
        .iter()
        .map(|&x| Spec::flipped(vec![0, 2 * x * ell, 0], vec![0, 0, 2 * x * ell]))
        .collect();
    specs.extend((0..2 * z * ell).map(|_| Spec::flipped(vec![1, 0, 0], vec![0, 0, 1])));
    specs.push(Spec::fixed(vec![2 * z * ell + y * ell + 2 * ell, 0, 0]));
    specs.push(Spec::fixed(vec![0, 2 * z * ell, 0]));
    let flipped = specs.iter().filter(|s| s.fake.is_some()).count();
    assemble(Rule::Pv, &abp(), specs, Weights::Unit, Some(2), (flipped, xs.len() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{tally, validate};

    #[test]
    fn tallies_and_regularity() {
        let (e, m) = gen_partition_pv_recreg(&[4, 8], 1.0).unwrap();
        let (y, z, ell) = (12, 12, 2);
        assert_eq!(e.welfare(), &[4 * z * ell + y * ell + 2 * ell, 2 * z * ell + 2 * y * ell, 0]);
        let d = tally(&e, Some(&m), None).unwrap();
        assert_eq!(d.scores, vec![2 * z * ell + y * ell + 2 * ell, 2 * z * ell, 2 * z * ell + 2 * y * ell]);
        assert_eq!(d.winner, 2);
        assert!(validate(&e, &m, true).is_ok());
        assert_eq!(e.budget_defender(), 1);
    }

    #[test]
    fn preconditions() {
        assert!(gen_partition_pv_recreg(&[4, 6], 1.0).is_err());
        assert!(gen_partition_pv_recreg(&[], 1.0).is_err());
        assert!(gen_partition_pv_recreg(&[4], 0.0).is_err());
        assert!(gen_partition_pv_recreg(&[4], f64::NAN).is_err());
    }
}
