//! The recount game model: elections split into districts, attacker
//! manipulations, defender recounts, and winner determination under
//! plurality over voters (PV) and plurality over districts (PD).
//!
//! Candidates are identified by their index in the election's candidate
//! list. All quantities are `i64`; instances whose total vote count or
//! total district weight exceeds [`MAX_TOTAL`] are rejected when built.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result, Violation, ViolationKind};

/// Candidate index into [`Election::candidates`].
pub type Candidate = usize;

/// Upper bound on total votes and on total district weight.
pub const MAX_TOTAL: i64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Plurality over voters: the candidate with the most votes overall wins.
    Pv,
    /// Plurality over districts: each district elects a local winner and the
    /// candidate carrying the most district weight wins.
    Pd,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Pv => "PV",
            Rule::Pd => "PD",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PV" => Ok(Rule::Pv),
            "PD" => Ok(Rule::Pd),
            _ => Err(Error::Parse(format!("unknown rule `{s}` (expected PV or PD)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct District {
    /// Votes per candidate, indexed like the election's candidates.
    pub votes: Vec<i64>,
    pub weight: i64,
    /// Maximum number of votes the attacker may add in this district.
    pub gamma: i64,
}

impl District {
    pub fn new(votes: Vec<i64>, weight: i64, gamma: i64) -> Self {
        District { votes, weight, gamma }
    }

    /// District with `gamma` equal to its size.
    pub fn open(votes: Vec<i64>, weight: i64) -> Self {
        let gamma = votes.iter().sum();
        District { votes, weight, gamma }
    }

    pub fn size(&self) -> i64 {
        self.votes.iter().sum()
    }
}

/// An election instance together with both players' budgets.
///
/// Values are immutable once built; the `with_*` methods consume and
/// re-validate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    rule: Rule,
    candidates: Vec<String>,
    tiebreak: Vec<Candidate>,
    /// Position of each candidate in `tiebreak`; lower is stronger.
    rank: Vec<usize>,
    districts: Vec<District>,
    preferred: Option<Candidate>,
    budget_attacker: usize,
    budget_defender: usize,
    welfare: Vec<i64>,
    true_winners: Vec<Candidate>,
}

impl Election {
    /// Builds an election with the declared candidate order as tie-break
    /// order, no preferred candidate, `B_A = 1` and `B_D = 0`.
    pub fn new(rule: Rule, candidates: Vec<String>, districts: Vec<District>) -> Result<Self> {
        let m = candidates.len();
        if m == 0 {
            return Err(Error::InvalidElection("at least one candidate is required".into()));
        }
        let mut seen = BTreeSet::new();
        for name in &candidates {
            if name.is_empty() {
                return Err(Error::InvalidElection("candidate names must be non-empty".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidElection(format!("duplicate candidate `{name}`")));
            }
        }
        if districts.is_empty() {
            return Err(Error::InvalidElection("at least one district is required".into()));
        }
        let mut total_votes: i64 = 0;
        let mut total_weight: i64 = 0;
        for (i, d) in districts.iter().enumerate() {
            if d.votes.len() != m {
                return Err(Error::InvalidElection(format!(
                    "district {i}: {} vote entries for {m} candidates",
                    d.votes.len()
                )));
            }
            if let Some(c) = d.votes.iter().position(|&v| v < 0) {
                return Err(Error::InvalidElection(format!(
                    "district {i}: negative vote count for `{}`",
                    candidates[c]
                )));
            }
            if d.weight < 1 {
                return Err(Error::InvalidElection(format!(
                    "district {i}: weight must be positive, got {}",
                    d.weight
                )));
            }
            let size = d
                .votes
                .iter()
                .try_fold(0i64, |acc, &v| acc.checked_add(v))
                .filter(|&s| s <= MAX_TOTAL)
                .ok_or_else(|| Error::InvalidElection(format!("district {i}: vote total overflows")))?;
            if d.gamma < 0 || d.gamma > size {
                return Err(Error::InvalidElection(format!(
                    "district {i}: gamma {} outside [0, {size}]",
                    d.gamma
                )));
            }
            total_votes = total_votes
                .checked_add(size)
                .filter(|&s| s <= MAX_TOTAL)
                .ok_or_else(|| Error::InvalidElection("total number of votes exceeds 2^62".into()))?;
            total_weight = total_weight
                .checked_add(d.weight)
                .filter(|&s| s <= MAX_TOTAL)
                .ok_or_else(|| Error::InvalidElection("total district weight exceeds 2^62".into()))?;
        }

        let tiebreak: Vec<Candidate> = (0..m).collect();
        let rank = tiebreak.clone();
        let mut e = Election {
            rule,
            candidates,
            tiebreak,
            rank,
            districts,
            preferred: None,
            budget_attacker: 1,
            budget_defender: 0,
            welfare: Vec::new(),
            true_winners: Vec::new(),
        };
        e.refresh_derived();
        Ok(e)
    }

    /// Replaces the tie-break order; `order[0]` has the highest priority.
    pub fn with_tiebreak(mut self, order: Vec<Candidate>) -> Result<Self> {
        let m = self.num_candidates();
        let mut rank = vec![usize::MAX; m];
        if order.len() != m {
            return Err(Error::InvalidElection(format!(
                "tie-break order lists {} candidates, expected {m}",
                order.len()
            )));
        }
        for (pos, &c) in order.iter().enumerate() {
            if c >= m || rank[c] != usize::MAX {
                return Err(Error::InvalidElection(
                    "tie-break order must be a permutation of the candidates".into(),
                ));
            }
            rank[c] = pos;
        }
        self.tiebreak = order;
        self.rank = rank;
        self.refresh_derived();
        Ok(self)
    }

    pub fn with_preferred(mut self, p: Candidate) -> Result<Self> {
        if p >= self.num_candidates() {
            return Err(Error::InvalidElection(format!("preferred candidate #{p} does not exist")));
        }
        self.preferred = Some(p);
        Ok(self)
    }

    pub fn without_preferred(mut self) -> Self {
        self.preferred = None;
        self
    }

    pub fn with_budgets(mut self, attacker: usize, defender: usize) -> Result<Self> {
        let k = self.num_districts();
        if attacker < 1 || attacker > k {
            return Err(Error::InvalidElection(format!(
                "attacker budget {attacker} outside [1, {k}]"
            )));
        }
        if defender > k {
            return Err(Error::InvalidElection(format!(
                "defender budget {defender} outside [0, {k}]"
            )));
        }
        self.budget_attacker = attacker;
        self.budget_defender = defender;
        Ok(self)
    }

    fn refresh_derived(&mut self) {
        self.true_winners = self
            .districts
            .iter()
            .map(|d| district_winner(&d.votes, &self.rank))
            .collect();
        let mut welfare = vec![0i64; self.num_candidates()];
        for (i, d) in self.districts.iter().enumerate() {
            self.add_contribution(&mut welfare, i, &d.votes, 1);
        }
        self.welfare = welfare;
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn candidate_name(&self, c: Candidate) -> &str {
        &self.candidates[c]
    }

    pub fn candidate_index(&self, name: &str) -> Option<Candidate> {
        self.candidates.iter().position(|c| c == name)
    }

    /// Looks a candidate up by name, failing with [`Error::UnknownCandidate`].
    pub fn resolve(&self, name: &str) -> Result<Candidate> {
        self.candidate_index(name)
            .ok_or_else(|| Error::UnknownCandidate(name.to_string()))
    }

    pub fn tiebreak(&self) -> &[Candidate] {
        &self.tiebreak
    }

    /// Tie-break positions indexed by candidate; lower is stronger.
    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// `a ≻ b` in the tie-break order.
    pub fn favors(&self, a: Candidate, b: Candidate) -> bool {
        self.rank[a] < self.rank[b]
    }

    pub fn districts(&self) -> &[District] {
        &self.districts
    }

    pub fn district(&self, i: usize) -> &District {
        &self.districts[i]
    }

    pub fn num_districts(&self) -> usize {
        self.districts.len()
    }

    pub fn preferred(&self) -> Option<Candidate> {
        self.preferred
    }

    /// The preferred candidate, or a precondition error naming `what`.
    pub fn require_preferred(&self, what: &str) -> Result<Candidate> {
        self.preferred
            .ok_or_else(|| Error::Precondition(format!("{what} needs a preferred candidate")))
    }

    pub fn budget_attacker(&self) -> usize {
        self.budget_attacker
    }

    pub fn budget_defender(&self) -> usize {
        self.budget_defender
    }

    pub fn total_votes(&self) -> i64 {
        self.districts.iter().map(District::size).sum()
    }

    pub fn total_weight(&self) -> i64 {
        self.districts.iter().map(|d| d.weight).sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.districts.iter().all(|d| d.weight == 1)
    }

    /// Winner of district `i` on the true profile.
    pub fn true_district_winner(&self, i: usize) -> Candidate {
        self.true_winners[i]
    }

    /// Social welfare of every candidate (scores on the true profile).
    pub fn welfare(&self) -> &[i64] {
        &self.welfare
    }

    /// Winner of the undistorted election.
    pub fn true_winner(&self) -> Candidate {
        self.winner_of(&self.welfare)
    }

    /// Adds `sign` times the score contribution of district `i` voting
    /// `votes` to `scores`. Under PV that is the vote vector itself, under
    /// PD the district weight credited to the local winner.
    pub fn add_contribution(&self, scores: &mut [i64], i: usize, votes: &[i64], sign: i64) {
        match self.rule {
            Rule::Pv => {
                for (s, &v) in scores.iter_mut().zip(votes) {
                    *s += sign * v;
                }
            }
            Rule::Pd => {
                let w = district_winner(votes, &self.rank);
                scores[w] += sign * self.districts[i].weight;
            }
        }
    }

    /// Lexicographic winner of a score vector: highest score, ties to the
    /// candidate earliest in the tie-break order.
    pub fn winner_of(&self, scores: &[i64]) -> Candidate {
        lex_winner(scores, &self.rank)
    }

    /// Whether `a` beats `b` at the given scores.
    pub fn beats(&self, scores: &[i64], a: Candidate, b: Candidate) -> bool {
        scores[a] > scores[b] || (scores[a] == scores[b] && self.favors(a, b))
    }

    /// Defender's preference between two candidates: higher welfare first,
    /// then the tie-break order. `Greater` means `a` is preferred.
    pub fn defender_cmp(&self, a: Candidate, b: Candidate) -> Ordering {
        self.welfare[a]
            .cmp(&self.welfare[b])
            .then_with(|| self.rank[b].cmp(&self.rank[a]))
    }

    /// Whether the defender strictly prefers `a` to `b`.
    pub fn defender_prefers(&self, a: Candidate, b: Candidate) -> bool {
        self.defender_cmp(a, b) == Ordering::Greater
    }

    /// All candidates, most preferred by the defender first.
    pub fn defender_ranking(&self) -> Vec<Candidate> {
        let mut order: Vec<Candidate> = (0..self.num_candidates()).collect();
        order.sort_by(|&a, &b| self.defender_cmp(b, a));
        order
    }

    fn check_candidate(&self, c: Candidate) -> Result<()> {
        if c < self.num_candidates() {
            Ok(())
        } else {
            Err(Error::UnknownCandidate(format!("#{c}")))
        }
    }
}

/// Plurality winner of one district: most votes, ties by tie-break rank.
pub fn district_winner(votes: &[i64], rank: &[usize]) -> Candidate {
    lex_winner(votes, rank)
}

fn lex_winner(scores: &[i64], rank: &[usize]) -> Candidate {
    let mut best = 0;
    for c in 1..scores.len() {
        if scores[c] > scores[best] || (scores[c] == scores[best] && rank[c] < rank[best]) {
            best = c;
        }
    }
    best
}

/// Attacker strategy: the manipulated districts `M` and their distorted
/// vote vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manipulation {
    entries: BTreeMap<usize, Vec<i64>>,
}

impl Manipulation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, district: usize, votes: Vec<i64>) -> Option<Vec<i64>> {
        self.entries.insert(district, votes)
    }

    pub fn with(mut self, district: usize, votes: Vec<i64>) -> Self {
        self.entries.insert(district, votes);
        self
    }

    /// Infers `M` as the districts whose distorted vector differs from the
    /// true one.
    pub fn from_profiles(election: &Election, distorted: &[Vec<i64>]) -> Result<Self> {
        if distorted.len() != election.num_districts() {
            return Err(Error::InvalidManipulation(vec![Violation {
                district: None,
                kind: ViolationKind::Length {
                    expected: election.num_districts(),
                    found: distorted.len(),
                },
            }]));
        }
        let entries = distorted
            .iter()
            .enumerate()
            .filter(|(i, v)| election.district(*i).votes != **v)
            .map(|(i, v)| (i, v.clone()))
            .collect();
        Ok(Manipulation { entries })
    }

    pub fn get(&self, district: usize) -> Option<&[i64]> {
        self.entries.get(&district).map(Vec::as_slice)
    }

    pub fn contains(&self, district: usize) -> bool {
        self.entries.contains_key(&district)
    }

    /// Manipulated district indices in ascending order.
    pub fn districts(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[i64])> + '_ {
        self.entries.iter().map(|(&i, v)| (i, v.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Votes district `i` reports after the attack.
    pub fn reported<'a>(&'a self, election: &'a Election, i: usize) -> &'a [i64] {
        self.get(i).unwrap_or(&election.district(i).votes)
    }
}

impl FromIterator<(usize, Vec<i64>)> for Manipulation {
    fn from_iter<I: IntoIterator<Item = (usize, Vec<i64>)>>(iter: I) -> Self {
        Manipulation { entries: iter.into_iter().collect() }
    }
}

/// Defender strategy: districts whose true counts are restored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecountSet(BTreeSet<usize>);

impl RecountSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        self.0.insert(i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &RecountSet) -> RecountSet {
        RecountSet(self.0.union(&other.0).copied().collect())
    }

    /// Checks `R ⊆ M` and `|R| ≤ budget`.
    pub fn validate(&self, manipulation: &Manipulation, budget: usize) -> Result<()> {
        self.check_subset(manipulation)?;
        if self.len() > budget {
            return Err(Error::InvalidRecount(format!(
                "{} districts recounted, budget {budget}",
                self.len()
            )));
        }
        Ok(())
    }

    fn check_subset(&self, manipulation: &Manipulation) -> Result<()> {
        match self.iter().find(|&i| !manipulation.contains(i)) {
            Some(i) => Err(Error::InvalidRecount(format!(
                "district {i} is recounted but was not manipulated"
            ))),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for RecountSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        RecountSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for RecountSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

/// Scores and winner of an effective profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    /// PV: votes per candidate. PD: total weight of districts won.
    pub scores: Vec<i64>,
    pub winner: Candidate,
    /// Local winners, PD only.
    pub district_winners: Option<Vec<Candidate>>,
}

/// Tallies the profile left after `manipulation` and then `recount`.
///
/// Districts in the recount (or outside the manipulation) report their true
/// votes; the rest report the distorted ones.
pub fn tally(
    election: &Election,
    manipulation: Option<&Manipulation>,
    recount: Option<&RecountSet>,
) -> Result<Tally> {
    let empty = Manipulation::new();
    let manipulation = manipulation.unwrap_or(&empty);
    validate(election, manipulation, false).map_err(Error::InvalidManipulation)?;
    if let Some(r) = recount {
        r.check_subset(manipulation)?;
    }
    let restored = |i: usize| recount.is_some_and(|r| r.contains(i));

    let mut scores = vec![0i64; election.num_candidates()];
    let mut district_winners = Vec::new();
    for i in 0..election.num_districts() {
        let votes = if restored(i) {
            &election.district(i).votes[..]
        } else {
            manipulation.reported(election, i)
        };
        election.add_contribution(&mut scores, i, votes, 1);
        if election.rule() == Rule::Pd {
            district_winners.push(district_winner(votes, election.ranks()));
        }
    }
    let winner = election.winner_of(&scores);
    Ok(Tally {
        scores,
        winner,
        district_winners: (election.rule() == Rule::Pd).then_some(district_winners),
    })
}

/// Social welfare of `c`: its score on the true profile.
pub fn social_welfare(election: &Election, c: Candidate) -> Result<i64> {
    election.check_candidate(c)?;
    Ok(election.welfare()[c])
}

/// Defender's preference between `a` and `b` (`Greater` = `a` preferred).
pub fn defender_prefers(election: &Election, a: Candidate, b: Candidate) -> Result<Ordering> {
    election.check_candidate(a)?;
    election.check_candidate(b)?;
    Ok(election.defender_cmp(a, b))
}

/// Checks every manipulation constraint and, with `require_regular`, the
/// rule-specific regularity condition. Returns all violations found.
pub fn validate(
    election: &Election,
    manipulation: &Manipulation,
    require_regular: bool,
) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let m = election.num_candidates();
    if manipulation.len() > election.budget_attacker() {
        out.push(Violation {
            district: None,
            kind: ViolationKind::Budget {
                manipulated: manipulation.len(),
                budget: election.budget_attacker(),
            },
        });
    }
    let preferred = election.preferred();
    if require_regular && preferred.is_none() {
        out.push(Violation { district: None, kind: ViolationKind::MissingPreferred });
    }
    for (i, votes) in manipulation.iter() {
        let mut push = |kind| out.push(Violation { district: Some(i), kind });
        if i >= election.num_districts() {
            push(ViolationKind::UnknownDistrict);
            continue;
        }
        if votes.len() != m {
            push(ViolationKind::Length { expected: m, found: votes.len() });
            continue;
        }
        let district = election.district(i);
        for (c, &v) in votes.iter().enumerate() {
            if v < 0 {
                push(ViolationKind::NegativeVotes { candidate: c });
            }
        }
        let found = votes.iter().fold(0i64, |acc, &v| acc.saturating_add(v));
        if found != district.size() {
            push(ViolationKind::Size { expected: district.size(), found });
        }
        let added = votes
            .iter()
            .zip(&district.votes)
            .fold(0i64, |acc, (&new, &old)| acc.saturating_add((new - old).max(0)));
        if added > district.gamma {
            push(ViolationKind::Gamma { added, gamma: district.gamma });
        }
        if let (true, Some(p)) = (require_regular, preferred) {
            match election.rule() {
                Rule::Pv => {
                    for c in (0..m).filter(|&c| c != p && votes[c] > district.votes[c]) {
                        push(ViolationKind::IrregularGain { candidate: c });
                    }
                }
                Rule::Pd => {
                    let winner = district_winner(votes, election.ranks());
                    if winner != p {
                        push(ViolationKind::IrregularWinner { winner });
                    }
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Score bookkeeping for recount searches: the distorted tally plus, for
/// each manipulated district, the score change a recount of it causes.
#[derive(Clone, Debug)]
pub(crate) struct RecountModel {
    /// Manipulated districts, ascending.
    pub districts: Vec<usize>,
    pub distorted: Vec<i64>,
    /// `deltas[j]` = true contribution minus distorted contribution of
    /// `districts[j]`.
    pub deltas: Vec<Vec<i64>>,
}

impl RecountModel {
    pub fn new(election: &Election, manipulation: &Manipulation) -> Self {
        let m = election.num_candidates();
        let mut distorted = vec![0i64; m];
        for i in 0..election.num_districts() {
            election.add_contribution(&mut distorted, i, manipulation.reported(election, i), 1);
        }
        let mut districts = Vec::with_capacity(manipulation.len());
        let mut deltas = Vec::with_capacity(manipulation.len());
        for (i, fake) in manipulation.iter() {
            let mut delta = vec![0i64; m];
            election.add_contribution(&mut delta, i, &election.district(i).votes, 1);
            election.add_contribution(&mut delta, i, fake, -1);
            districts.push(i);
            deltas.push(delta);
        }
        RecountModel { districts, distorted, deltas }
    }

    /// Scores after recounting the manipulated districts at `positions`
    /// (indices into `self.districts`).
    pub fn scores_for(&self, positions: impl IntoIterator<Item = usize>) -> Vec<i64> {
        let mut s = self.distorted.clone();
        for j in positions {
            for (x, d) in s.iter_mut().zip(&self.deltas[j]) {
                *x += d;
            }
        }
        s
    }

    pub fn recount_set(&self, positions: impl IntoIterator<Item = usize>) -> RecountSet {
        positions.into_iter().map(|j| self.districts[j]).collect()
    }
}
