use crate::model::{district_winner, Candidate, District};

/// Fewest votes that must be moved onto `c` for it to win a district with
/// vote vector `votes`, together with the resulting vector.
///
/// Votes are taken from the strongest opponent first, by count and then
/// by `rank` (tie-break positions, lower is stronger). Returns `None` only
/// for an empty district that `c` does not already win.
pub fn district_min_steal(votes: &[i64], c: Candidate, rank: &[usize]) -> Option<(i64, Vec<i64>)> {
    let total: i64 = votes.iter().sum();
    // Moving t votes lets c reach P = v_c + t, so every opponent d must drop
    // to P (or P - 1 if d beats c on ties). Feasible iff that takes ≤ t votes.
    let need = |t: i64| -> i64 {
        let target = votes[c] + t;
        (0..votes.len())
            .filter(|&d| d != c)
            .map(|d| (votes[d] - (target - i64::from(rank[d] < rank[c]))).max(0))
            .sum()
    };
    let (mut lo, mut hi) = (0, total - votes[c]);
    if need(hi) > hi {
        return None;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if need(mid) <= mid {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let t = lo;

    let target = votes[c] + t;
    let mut out = votes.to_vec();
    let mut moved = 0;
    for d in (0..votes.len()).filter(|&d| d != c) {
        let cap = target - i64::from(rank[d] < rank[c]);
        if out[d] > cap {
            moved += out[d] - cap;
            out[d] = cap;
        }
    }
    while moved < t {
        let d = (0..out.len())
            .filter(|&d| d != c && out[d] > 0)
            .max_by(|&x, &y| out[x].cmp(&out[y]).then(rank[y].cmp(&rank[x])))
            .expect("opponents hold enough votes");
        out[d] -= 1;
        moved += 1;
    }
    out[c] = target;
    debug_assert_eq!(district_winner(&out, rank), c);
    Some((t, out))
}

/// Every feasible distorted vector of `district`, in ascending
/// lexicographic order: non-negative, same size, at most `gamma` votes
/// added. With `regular = Some(p)` only `p` may gain votes.
pub fn enumerate_distortions(district: &District, regular: Option<Candidate>) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(district.votes.len());
    fill(district, regular, &mut current, district.size(), 0, &mut out);
    out
}

fn fill(
    district: &District,
    regular: Option<Candidate>,
    current: &mut Vec<i64>,
    remaining: i64,
    added: i64,
    out: &mut Vec<Vec<i64>>,
) {
    let c = current.len();
    let v = &district.votes;
    let gain = |x: i64| (x - v[c]).max(0);
    if c + 1 == v.len() {
        let last = remaining;
        if added + gain(last) <= district.gamma && regular.is_none_or(|p| p == c || last <= v[c]) {
            current.push(last);
            out.push(current.clone());
            current.pop();
        }
        return;
    }
    let upper = match regular {
        Some(p) if p != c => remaining.min(v[c]),
        _ => remaining.min(v[c] + district.gamma - added),
    };
    for x in 0..=upper {
        current.push(x);
        fill(district, regular, current, remaining - x, added + gain(x), out);
        current.pop();
    }
}
