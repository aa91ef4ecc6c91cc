use recount::attacker::{man_decide_brute, man_decide_static};
use recount::defender::{rec_decide_brute, rec_decide_dp};
use recount::instance;
use recount::reductions::*;
use recount::{tally, validate, Rule};

#[test]
fn subset_sum_recount() {
    let (e, m) = gen_subsetsum_pv_rec(&[-1, -2, 3, 1], false).unwrap();
    assert!(rec_decide_brute(&e, &m, e.budget_defender(), 0).unwrap().decision);
    let (e, m) = gen_subsetsum_pv_rec(&[1], false).unwrap();
    assert!(!rec_decide_brute(&e, &m, e.budget_defender(), 0).unwrap().decision);

    // Distorted tally: a has y + 1, p has y + sum of 2x.
    for xs in [vec![-1, -2, 3, 1], vec![2, -1], vec![3]] {
        let (e, m) = gen_subsetsum_pv_rec(&xs, false).unwrap();
        let y: i64 = xs.iter().map(|x| 2 * x.abs()).sum();
        let s: i64 = xs.iter().map(|x| 2 * x).sum();
        let t = tally(&e, Some(&m), None).unwrap();
        assert_eq!((t.scores[0], t.scores[2]), (y + 1, y + s));
        assert_eq!(e.budget_defender(), xs.len() - 1);
    }

    let (e, m) = gen_subsetsum_pv_rec(&[-1, -2, 3, 1], true).unwrap();
    assert_eq!(e.rule(), Rule::Pd);
    assert!(e.districts().iter().all(|d| d.weight == d.size()));
    assert!(rec_decide_dp(&e, &m, e.budget_defender(), 0).unwrap().decision);
    assert!(gen_subsetsum_pv_rec(&[1, -2], false).is_err());
    assert!(gen_subsetsum_pv_rec(&[0, 2], false).is_err());
}

#[test]
fn exact_cover_recount() {
    let (e, m) = gen_x3c_pv_rec(1, &[[1, 2, 3]]).unwrap();
    assert!(rec_decide_brute(&e, &m, e.budget_defender(), 0).unwrap().decision);
    let (e, m) = gen_x3c_pv_rec(2, &[[1, 2, 3], [1, 2, 4]]).unwrap();
    assert!(!rec_decide_brute(&e, &m, e.budget_defender(), 0).unwrap().decision);

    // True tally: a has 2s + 6ls votes and m = 3l + 2.
    let sets = [[1, 2, 3], [4, 5, 6], [1, 4, 5]];
    let (e, _) = gen_x3c_pv_rec(2, &sets).unwrap();
    let (s, ell) = (3, 2);
    assert_eq!(e.welfare()[0], 2 * s + 6 * ell * s);
    assert_eq!(e.true_winner(), 0);
    assert_eq!(e.num_candidates(), 3 * 2 + 2);
    assert_eq!(e.budget_defender(), 2);
    assert!(gen_x3c_pv_rec(1, &[[1, 1, 2]]).is_err());
    assert!(gen_x3c_pv_rec(1, &[[1, 2, 4]]).is_err());
}

#[test]
fn subset_sum_attacker() {
    let e = gen_subsetsum_pv_man(&[1, -1]).unwrap();
    assert!(man_decide_static(&e, false).unwrap().decision);
    let e = gen_subsetsum_pv_man(&[1, 2]).unwrap();
    assert!(!man_decide_static(&e, false).unwrap().decision);

    // SW(a) = SW(b) = 6yl, SW(p) = 1.
    for xs in [vec![1, -1], vec![1, 2], vec![3, -2, 1]] {
        let e = gen_subsetsum_pv_man(&xs).unwrap();
        let y = xs.iter().map(|x| 2 * x.abs()).max().unwrap();
        let ell = xs.len() as i64;
        assert_eq!(e.welfare(), &[6 * y * ell, 6 * y * ell, 1]);
        assert_eq!((e.budget_attacker(), e.budget_defender()), (xs.len(), 0));
        assert!(e.districts().iter().all(|d| d.gamma == d.size()));
    }
    assert!(gen_subsetsum_pv_man(&[1]).is_err());
}

#[test]
fn small_subset_attacker_matches_brute() {
    // The exhaustive attacker is only feasible on the smallest instance.
    let e = gen_subsetsum_pv_man(&[1, -1]).unwrap();
    let e = e.clone().with_budgets(e.budget_attacker(), 0).unwrap();
    assert_eq!(man_decide_static(&e, false).unwrap().decision, man_decide_brute(&e, false).unwrap().decision);
}

#[test]
fn independent_set_recount() {
    let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
    let (e, m) = gen_is_pd_rec(&path, 2).unwrap();
    assert!(rec_decide_dp(&e, &m, e.budget_defender(), 0).unwrap().decision);
    let triangle = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let (e, m) = gen_is_pd_rec(&triangle, 2).unwrap();
    assert!(!rec_decide_dp(&e, &m, e.budget_defender(), 0).unwrap().decision);

    // Distorted weight of p, unscaled: 2 nu mu + 2.
    let (nu, mu) = (3i64, 3i64);
    let sigma = 2 * (nu + mu) + 1;
    let t = tally(&e, Some(&m), None).unwrap();
    assert_eq!(t.scores[1], (2 * nu * mu + 2) * sigma);
    assert_eq!(e.budget_defender(), 6);
}

#[test]
fn sub_subset_sum_attacker() {
    let e = gen_sss_pd_man(&[1, 2], 2).unwrap();
    assert!(man_decide_brute(&e, false).unwrap().decision);
    let e = gen_sss_pd_man(&[1, -1], 2).unwrap();
    assert!(!man_decide_brute(&e, false).unwrap().decision);

    let e = gen_sss_pd_man(&[1, 2, -3], 1).unwrap();
    let y = 18;
    assert_eq!(e.welfare()[0], 2 * y + 5);
    assert_eq!((e.budget_attacker(), e.budget_defender()), (2, 1));
    let k = e.num_districts();
    assert!(e.districts()[k - 3..].iter().all(|d| d.gamma == 0));
    assert!(e.districts()[..k - 3].iter().all(|d| d.gamma == d.size()));
}

#[test]
fn partition_recount() {
    let (e, m) = gen_partition_pv_recreg(&[4, 4], 1.0).unwrap();
    assert!(validate(&e, &m, true).is_ok());
    assert!(rec_decide_dp(&e, &m, e.budget_defender(), 0).unwrap().decision);
    let (e, m) = gen_partition_pv_recreg(&[4, 8], 1.0).unwrap();
    assert!(!rec_decide_dp(&e, &m, e.budget_defender(), 0).unwrap().decision);

    // a's true votes: 4zl + yl + 2l.
    for (xs, eps) in [(vec![4, 8], 1.0), (vec![4, 4, 12], 0.5)] {
        let (e, _) = gen_partition_pv_recreg(&xs, eps).unwrap();
        let ell = xs.len() as i64;
        let y: i64 = xs.iter().sum();
        let z = (y as f64 / eps).ceil() as i64;
        assert_eq!(e.welfare()[0], 4 * z * ell + y * ell + 2 * ell);
    }
}

#[test]
fn random_is_deterministic_and_valid() {
    let params = RandomParams {
        rule: Rule::Pd,
        k: 8,
        m: 4,
        n_max: 6,
        w_max: 9,
        gamma: GammaMode::Full,
        budget_attacker: 3,
        budget_defender: 2,
    };
    let a = instance::to_string(&gen_random(&params, 42).unwrap(), None);
    let b = instance::to_string(&gen_random(&params, 42).unwrap(), None);
    assert_eq!(a, b);
    let e = gen_random(&params, 42).unwrap();
    assert!(e.districts().iter().all(|d| d.gamma == d.size()));
    assert_eq!(instance::parse(&a).unwrap().election, e);
}
