use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn recount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recount")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn temp(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("recount-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn all_fixtures() -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path().display().to_string())
        .filter(|p| p.ends_with(".json"))
        .collect();
    v.sort();
    v
}

#[test]
fn fixtures_are_canonical() {
    for path in all_fixtures() {
        let text = std::fs::read_to_string(&path).unwrap();
        let inst = recount::instance::parse(&text).unwrap();
        assert_eq!(recount::instance::to_string(&inst.election, inst.manipulation.as_ref()), text, "{path}");
    }
}

#[test]
fn squares_fixture_shape() {
    let inst = recount::instance::parse(&std::fs::read_to_string(fixture("squares_pv.json")).unwrap()).unwrap();
    assert_eq!(inst.election.num_districts(), 5);
    let weights: Vec<i64> = inst.election.districts().iter().map(|d| d.weight).collect();
    assert_eq!(weights, vec![49, 49, 9, 9, 9]);
}

#[test]
fn solve_man_squares() {
    let out = recount(&["solve", "man", &fixture("squares_pv.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["attacker_wins"], false);

    let out = recount(&["solve", "man", "--regular", &fixture("squares_pd.json")]);
    let v = json(&out);
    assert_eq!(v["algorithm"], "man-pd-regular");
    assert_eq!(v["attacker_wins"], true);
    assert_eq!(v["scores"]["p"], 98);
}

#[test]
fn dp_and_brute_agree_on_fixtures() {
    for path in all_fixtures().into_iter().filter(|p| p.contains("attack")) {
        for target in ["a", "b", "p"] {
            let dp = json(&recount(&["solve", "rec", "--target", target, "--algo", "dp", &path]));
            let brute = json(&recount(&["solve", "rec", "--target", target, "--algo", "brute", &path]));
            assert_eq!(dp["decision"], brute["decision"], "{path} {target}");
        }
        let best = json(&recount(&["solve", "rec", &path]));
        let greedy = json(&recount(&["solve", "rec", "--algo", "greedy", &path]));
        assert_eq!(best["decision"], true);
        assert!(greedy["winner"].is_string());
    }
}

#[test]
fn rec_report_replays_witness() {
    let v = json(&recount(&["solve", "rec", "--target", "a", "--algo", "brute", &fixture("squares_pd_attack.json")]));
    // One recount of a 49-weight district cannot beat p's remaining 49 plus priority.
    assert_eq!(v["decision"], false);
    let v = json(&recount(&["solve", "rec", "--target", "a", "--budget", "2", &fixture("squares_pd_attack.json")]));
    assert_eq!(v["decision"], true);
    assert_eq!(v["recount"], serde_json::json!([0, 1]));
    assert_eq!(v["scores"]["a"], 98);
}

#[test]
fn unweighted_solver_rejects_weights() {
    let out = recount(&["solve", "rec", "--target", "a", "--algo", "unweighted-pd", &fixture("squares_pd_attack.json")]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn eval_reports_all_tallies() {
    let v = json(&recount(&["eval", "--recount", "0", &fixture("split_pv_attack.json")]));
    assert_eq!(v["true"]["winner"], "a");
    assert_eq!(v["distorted"]["winner"], "b");
    assert_eq!(v["recounted"]["winner"], "p");
    assert_eq!(v["regular"], false);
}

#[test]
fn gen_random_is_byte_identical() {
    let args = ["gen", "random", "--seed", "7", "--rule", "pv", "--k", "6", "--m", "4", "--manipulation", "4"];
    let a = recount(&args);
    let b = recount(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, recount(&["gen", "random", "--seed", "8", "--rule", "pv", "--k", "6", "--m", "4"]).stdout);
}

#[test]
fn generated_files_solve() {
    let out = recount(&["gen", "subset-sum-rec", "--xs=-1,-2,3,1"]);
    let path = temp("ss.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(json(&recount(&["solve", "rec", "--target", "a", &path]))["decision"], true);

    let out = recount(&["gen", "sss", "--xs=1,-1", "--ell", "2"]);
    let path = temp("sss.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(json(&recount(&["solve", "man", &path]))["attacker_wins"], false);
}

#[test]
fn exit_codes() {
    let bad = temp("bad.json", "{\"rule\": \"PV\"");
    assert_eq!(recount(&["eval", &bad]).status.code(), Some(2));

    let text = std::fs::read_to_string(fixture("squares_pd_attack.json")).unwrap().replace("\"p\": 7", "\"p\": 6");
    let out = recount(&["eval", &temp("sum.json", &text)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("manipulation[0].votes"));

    let out = recount(&["solve", "rec", &fixture("squares_pv.json")]);
    assert_eq!(out.status.code(), Some(2));

    let out = recount(&["gen", "partition", "--xs", "4,8", "--epsilon", "1"]);
    let big = temp("partition.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(recount(&["solve", "rec", "--target", "a", "--algo", "brute", &big]).status.code(), Some(3));
    assert_eq!(json(&recount(&["solve", "rec", "--target", "a", &big]))["decision"], false);

    assert_eq!(recount(&["solve", "man", "--algo", "static", &fixture("squares_pv.json")]).status.code(), Some(4));
    assert_eq!(recount(&["solve", "rec", "--target", "zed", &fixture("squares_pd_attack.json")]).status.code(), Some(2));
}

#[test]
fn bench_csv() {
    let args = ["bench", "--seed", "3", "--trials", "25", "--k", "5", "--regular", "--jobs", "4"];
    let a = recount(&args);
    assert_eq!(a.status.code(), Some(0));
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "seed,trial,rule,k,m,B_A,B_D,regular,attacker_wins,greedy_sw,opt_sw,ratio,runtime_ms");
    assert_eq!(lines.len(), 26);
    for (t, line) in lines[1..].iter().enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[1], t.to_string());
        assert!(cols[11].parse::<f64>().unwrap() >= 0.5);
    }
    // Everything but the timing column is reproducible.
    let strip = |t: &str| t.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
    let b = String::from_utf8(recount(&args).stdout).unwrap();
    assert_eq!(strip(&text), strip(&b));
}

#[test]
fn schema_matches_serializer() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/instance.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(root).unwrap()).unwrap();
    let props: Vec<&String> = schema["properties"].as_object().unwrap().keys().collect();
    let instance: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("squares_pd_attack.json")).unwrap()).unwrap();
    let keys: Vec<&String> = instance.as_object().unwrap().keys().collect();
    assert_eq!(props, keys);
    for key in schema["required"].as_array().unwrap() {
        assert!(instance.get(key.as_str().unwrap()).is_some());
    }
}
