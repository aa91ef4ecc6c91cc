//! JSON instance files.
//!
//! An instance holds an election and optionally a manipulation of it:
//!
//! ```json
//! {
//!   "budget_attacker": 2,
//!   "budget_defender": 1,
//!   "candidates": ["a", "b", "p"],
//!   "districts": [{ "gamma": 7, "votes": { "a": 7 }, "weight": 49 }],
//!   "manipulation": [{ "index": 0, "votes": { "p": 7 } }],
//!   "preferred": "p",
//!   "rule": "PD",
//!   "tiebreak": ["p", "a", "b"]
//! }
//! ```
//!
//! Vote maps may omit candidates with no votes. [`to_string`] writes the
//! canonical form: sorted keys, candidates in declared order, zero counts
//! left out, two-space indentation and a trailing newline.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{District, Election, Manipulation, Rule};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    budget_attacker: usize,
    budget_defender: usize,
    candidates: Vec<String>,
    districts: Vec<RawDistrict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    manipulation: Option<Vec<RawChange>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    preferred: Option<String>,
    rule: Rule,
    tiebreak: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDistrict {
    gamma: i64,
    votes: VoteMap,
    weight: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChange {
    index: usize,
    votes: VoteMap,
}

/// Name → count in file order; duplicate names are rejected.
#[derive(Debug, Default)]
struct VoteMap(Vec<(String, i64)>);

impl Serialize for VoteMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for VoteMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = VoteMap;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from candidate names to vote counts")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<VoteMap, A::Error> {
                let mut out = Vec::new();
                let mut seen = BTreeSet::new();
                while let Some((k, v)) = access.next_entry::<String, i64>()? {
                    if !seen.insert(k.clone()) {
                        return Err(serde::de::Error::custom(format!("candidate `{k}` listed twice")));
                    }
                    out.push((k, v));
                }
                Ok(VoteMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A parsed instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub election: Election,
    pub manipulation: Option<Manipulation>,
}

fn at(path: impl fmt::Display, msg: impl fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

/// Parses and validates an instance. Syntax errors report line and column,
/// semantic errors the offending field path such as `districts[2].votes`.
pub fn parse(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| Error::Parse(format!("syntax: {e}")))?;
    let names = &raw.candidates;
    if names.is_empty() {
        return Err(at("candidates", "at least one candidate is required"));
    }
    for (j, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(at(format_args!("candidates[{j}]"), "empty name"));
        }
        if names[..j].contains(name) {
            return Err(at(format_args!("candidates[{j}]"), format_args!("duplicate candidate `{name}`")));
        }
    }
    let index = |path: &dyn Fn() -> String, name: &str| {
        names.iter().position(|n| n == name).ok_or_else(|| at(path(), format_args!("unknown candidate `{name}`")))
    };
    let votes = |path: &dyn Fn() -> String, map: &VoteMap| -> Result<Vec<i64>> {
        let mut v = vec![0i64; names.len()];
        for (name, count) in &map.0 {
            let c = index(path, name)?;
            if *count < 0 {
                return Err(at(path(), format_args!("negative count for `{name}`")));
            }
            v[c] = *count;
        }
        Ok(v)
    };

    if raw.districts.is_empty() {
        return Err(at("districts", "at least one district is required"));
    }
    let mut districts = Vec::with_capacity(raw.districts.len());
    for (i, d) in raw.districts.iter().enumerate() {
        let v = votes(&|| format!("districts[{i}].votes"), &d.votes)?;
        if d.weight < 1 {
            return Err(at(format_args!("districts[{i}].weight"), format_args!("must be positive, got {}", d.weight)));
        }
        let size = v.iter().try_fold(0i64, |a, &x| a.checked_add(x));
        if let Some(size) = size {
            if d.gamma < 0 || d.gamma > size {
                return Err(at(format_args!("districts[{i}].gamma"), format_args!("{} outside [0, {size}]", d.gamma)));
            }
        }
        districts.push(District::new(v, d.weight, d.gamma));
    }
    let k = districts.len();
    let election = Election::new(raw.rule, names.clone(), districts).map_err(|e| at("districts", inner(e)))?;

    if raw.tiebreak.len() != names.len() {
        return Err(at("tiebreak", format_args!("lists {} candidates, expected {}", raw.tiebreak.len(), names.len())));
    }
    let mut order = Vec::with_capacity(names.len());
    for (j, name) in raw.tiebreak.iter().enumerate() {
        let c = index(&|| format!("tiebreak[{j}]"), name)?;
        if order.contains(&c) {
            return Err(at(format_args!("tiebreak[{j}]"), format_args!("`{name}` listed twice")));
        }
        order.push(c);
    }
    let mut election = election.with_tiebreak(order).map_err(|e| at("tiebreak", inner(e)))?;
    if let Some(name) = &raw.preferred {
        let p = index(&|| "preferred".into(), name)?;
        election = election.with_preferred(p)?;
    }
    if raw.budget_attacker < 1 || raw.budget_attacker > k {
        return Err(at("budget_attacker", format_args!("{} outside [1, {k}]", raw.budget_attacker)));
    }
    if raw.budget_defender > k {
        return Err(at("budget_defender", format_args!("{} outside [0, {k}]", raw.budget_defender)));
    }
    let election = election.with_budgets(raw.budget_attacker, raw.budget_defender)?;

    let manipulation = match &raw.manipulation {
        None => None,
        Some(changes) => {
            let mut m = Manipulation::new();
            for (j, ch) in changes.iter().enumerate() {
                if ch.index >= k {
                    return Err(at(format_args!("manipulation[{j}].index"), format_args!("district {} does not exist", ch.index)));
                }
                if m.contains(ch.index) {
                    return Err(at(format_args!("manipulation[{j}].index"), format_args!("district {} listed twice", ch.index)));
                }
                let v = votes(&|| format!("manipulation[{j}].votes"), &ch.votes)?;
                m.insert(ch.index, v);
            }
            if let Err(violations) = crate::model::validate(&election, &m, false) {
                let v = &violations[0];
                let path = match v.district {
                    Some(i) => match changes.iter().position(|c| c.index == i) {
                        Some(j) => format!("manipulation[{j}].votes"),
                        None => "manipulation".into(),
                    },
                    None => "manipulation".into(),
                };
                return Err(at(path, v));
            }
            Some(m)
        }
    };
    Ok(Instance { election, manipulation })
}

fn inner(e: Error) -> String {
    match e {
        Error::InvalidElection(s) => s,
        other => other.to_string(),
    }
}

fn vote_map(election: &Election, votes: &[i64]) -> VoteMap {
    VoteMap(
        votes
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(c, &v)| (election.candidate_name(c).to_string(), v))
            .collect(),
    )
}

/// Canonical JSON text of an instance.
pub fn to_string(election: &Election, manipulation: Option<&Manipulation>) -> String {
    let name = |c: usize| election.candidate_name(c).to_string();
    let raw = RawInstance {
        budget_attacker: election.budget_attacker(),
        budget_defender: election.budget_defender(),
        candidates: election.candidates().to_vec(),
        districts: election
            .districts()
            .iter()
            .map(|d| RawDistrict { gamma: d.gamma, votes: vote_map(election, &d.votes), weight: d.weight })
            .collect(),
        manipulation: manipulation.map(|m| {
            m.iter().map(|(index, v)| RawChange { index, votes: vote_map(election, v) }).collect()
        }),
        preferred: election.preferred().map(name),
        rule: election.rule(),
        tiebreak: election.tiebreak().iter().map(|&c| name(c)).collect(),
    };
    let mut out = serde_json::to_string_pretty(&raw).expect("instance serialization cannot fail");
    out.push('\n');
    out
}
