//! Core data types: instances, matchings, blocking pairs, and file I/O.
//!
//! Conventions used throughout the crate: agent indices are 0-based in files
//! and APIs, while ranks are 1-based (the rank of an agent `b` in `a`'s list
//! is the number of agents `a` prefers to `b`, plus one). `Instance` and
//! `Matching` are immutable after construction, so every operation here is a
//! pure function that can be called concurrently.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("rank query needs agents on opposite sides")]
    SameSideRank,
    #[error("instances have different shapes ({0}x{1} vs {2}x{3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("preference list for {side:?} {index} is not a permutation")]
    NotAPermutation { side: Side, index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Man,
    Woman,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Man => Side::Woman,
            Side::Woman => Side::Man,
        }
    }
}

/// One agent, identified by side and 0-based index within that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId {
    pub side: Side,
    pub index: usize,
}

impl AgentId {
    pub fn man(index: usize) -> AgentId {
        AgentId { side: Side::Man, index }
    }

    pub fn woman(index: usize) -> AgentId {
        AgentId { side: Side::Woman, index }
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Man => write!(f, "m{}", self.index),
            Side::Woman => write!(f, "w{}", self.index),
        }
    }
}

/// A man–woman pair, both 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub man: usize,
    pub woman: usize,
}

impl Pair {
    pub fn new(man: usize, woman: usize) -> Pair {
        Pair { man, woman }
    }
}

/// A Stable Marriage instance: complete strict preference lists on both sides
/// plus rank tables for O(1) rank lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    men_prefs: Vec<Vec<usize>>,
    women_prefs: Vec<Vec<usize>>,
    /// men_rank[u][w] = 1-based position of woman w in man u's list.
    men_rank: Vec<Vec<usize>>,
    women_rank: Vec<Vec<usize>>,
}

fn rank_table(prefs: &[Vec<usize>], opposite: usize) -> Option<Vec<Vec<usize>>> {
    let mut table = Vec::with_capacity(prefs.len());
    for list in prefs {
        if list.len() != opposite {
            return None;
        }
        let mut ranks = vec![0usize; opposite];
        for (pos, &b) in list.iter().enumerate() {
            if b >= opposite || ranks[b] != 0 {
                return None;
            }
            ranks[b] = pos + 1;
        }
        table.push(ranks);
    }
    Some(table)
}

impl Instance {
    /// Builds an instance from complete preference lists. Each man's list must
    /// be a permutation of all woman indices and vice versa.
    pub fn new(
        men_prefs: Vec<Vec<usize>>,
        women_prefs: Vec<Vec<usize>>,
    ) -> Result<Instance, ModelError> {
        let n = men_prefs.len();
        let m = women_prefs.len();
        let men_rank = rank_table(&men_prefs, m).ok_or_else(|| {
            let index = men_prefs
                .iter()
                .position(|l| {
                    l.len() != m || {
                        let mut seen = vec![false; m];
                        l.iter().any(|&w| w >= m || std::mem::replace(&mut seen[w], true))
                    }
                })
                .unwrap_or(0);
            ModelError::NotAPermutation { side: Side::Man, index }
        })?;
        let women_rank = rank_table(&women_prefs, n).ok_or_else(|| {
            let index = women_prefs
                .iter()
                .position(|l| {
                    l.len() != n || {
                        let mut seen = vec![false; n];
                        l.iter().any(|&u| u >= n || std::mem::replace(&mut seen[u], true))
                    }
                })
                .unwrap_or(0);
            ModelError::NotAPermutation { side: Side::Woman, index }
        })?;
        Ok(Instance { men_prefs, women_prefs, men_rank, women_rank })
    }

    /// Number of men.
    pub fn n(&self) -> usize {
        self.men_prefs.len()
    }

    /// Number of women.
    pub fn m(&self) -> usize {
        self.women_prefs.len()
    }

    pub fn is_square(&self) -> bool {
        self.n() == self.m()
    }

    pub fn men_prefs(&self) -> &[Vec<usize>] {
        &self.men_prefs
    }

    pub fn women_prefs(&self) -> &[Vec<usize>] {
        &self.women_prefs
    }

    pub fn pref_list(&self, a: AgentId) -> &[usize] {
        match a.side {
            Side::Man => &self.men_prefs[a.index],
            Side::Woman => &self.women_prefs[a.index],
        }
    }

    /// 1-based rank of woman `w` in man `u`'s list.
    #[inline]
    pub fn rank_man(&self, u: usize, w: usize) -> usize {
        self.men_rank[u][w]
    }

    /// 1-based rank of man `u` in woman `w`'s list.
    #[inline]
    pub fn rank_woman(&self, w: usize, u: usize) -> usize {
        self.women_rank[w][u]
    }

    /// 1-based rank of `b` in `a`'s preference list.
    pub fn rank_of(&self, a: AgentId, b: AgentId) -> Result<usize, ModelError> {
        if a.side == b.side {
            return Err(ModelError::SameSideRank);
        }
        Ok(match a.side {
            Side::Man => self.rank_man(a.index, b.index),
            Side::Woman => self.rank_woman(a.index, b.index),
        })
    }

    /// True iff `a` prefers `b` to `c` (all three pairwise opposite/same side
    /// as appropriate; callers pass opposite-side b, c).
    #[inline]
    pub fn prefers(&self, a: AgentId, b: usize, c: usize) -> bool {
        match a.side {
            Side::Man => self.men_rank[a.index][b] < self.men_rank[a.index][c],
            Side::Woman => self.women_rank[a.index][b] < self.women_rank[a.index][c],
        }
    }

    /// Replaces one agent's preference list, revalidating it.
    pub fn with_list(&self, a: AgentId, list: Vec<usize>) -> Result<Instance, ModelError> {
        let mut men = self.men_prefs.clone();
        let mut women = self.women_prefs.clone();
        match a.side {
            Side::Man => men[a.index] = list,
            Side::Woman => women[a.index] = list,
        }
        Instance::new(men, women)
    }

    pub fn agents(&self) -> impl Iterator<Item = AgentId> + '_ {
        (0..self.n()).map(AgentId::man).chain((0..self.m()).map(AgentId::woman))
    }
}

/// A partial one-to-one assignment between men and women.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    man_to_woman: Vec<Option<usize>>,
    woman_to_man: Vec<Option<usize>>,
}

impl Matching {
    pub fn new(n: usize, m: usize, pairs: &[(usize, usize)]) -> Result<Matching, ModelError> {
        let mut man_to_woman = vec![None; n];
        let mut woman_to_man = vec![None; m];
        for &(u, w) in pairs {
            if u >= n || w >= m {
                return Err(ModelError::InvalidMatching(format!(
                    "pair ({u}, {w}) out of range for {n}x{m}"
                )));
            }
            if man_to_woman[u].is_some() || woman_to_man[w].is_some() {
                return Err(ModelError::InvalidMatching(format!(
                    "agent appears in more than one pair at ({u}, {w})"
                )));
            }
            man_to_woman[u] = Some(w);
            woman_to_man[w] = Some(u);
        }
        Ok(Matching { man_to_woman, woman_to_man })
    }

    pub fn empty(n: usize, m: usize) -> Matching {
        Matching { man_to_woman: vec![None; n], woman_to_man: vec![None; m] }
    }

    pub fn from_man_partners(man_to_woman: Vec<Option<usize>>, m: usize) -> Matching {
        let mut woman_to_man = vec![None; m];
        for (u, w) in man_to_woman.iter().enumerate() {
            if let Some(w) = w {
                debug_assert!(woman_to_man[*w].is_none());
                woman_to_man[*w] = Some(u);
            }
        }
        Matching { man_to_woman, woman_to_man }
    }

    pub fn n(&self) -> usize {
        self.man_to_woman.len()
    }

    pub fn m(&self) -> usize {
        self.woman_to_man.len()
    }

    #[inline]
    pub fn partner_of_man(&self, u: usize) -> Option<usize> {
        self.man_to_woman[u]
    }

    #[inline]
    pub fn partner_of_woman(&self, w: usize) -> Option<usize> {
        self.woman_to_man[w]
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.man_to_woman.get(p.man).copied().flatten() == Some(p.woman)
    }

    /// Number of matched pairs.
    pub fn len(&self) -> usize {
        self.man_to_woman.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All pairs in (man, woman) lexicographic order.
    pub fn pairs(&self) -> Vec<Pair> {
        self.man_to_woman
            .iter()
            .enumerate()
            .filter_map(|(u, w)| w.map(|w| Pair::new(u, w)))
            .collect()
    }

    pub fn is_assigned(&self, a: AgentId) -> bool {
        match a.side {
            Side::Man => self.man_to_woman[a.index].is_some(),
            Side::Woman => self.woman_to_man[a.index].is_some(),
        }
    }

    /// Restriction to the survivors of a deletion, reindexed by `remap`.
    pub fn restrict(&self, remap: &AgentRemap) -> Matching {
        let mut pairs = Vec::new();
        for p in self.pairs() {
            if let (Some(u), Some(w)) = (remap.men_old_to_new[p.man], remap.women_old_to_new[p.woman]) {
                pairs.push((u, w));
            }
        }
        Matching::new(remap.men_new_to_old.len(), remap.women_new_to_old.len(), &pairs)
            .expect("restriction of a valid matching is valid")
    }
}

/// Index translation produced by `delete_agents`.
#[derive(Debug, Clone)]
pub struct AgentRemap {
    pub men_old_to_new: Vec<Option<usize>>,
    pub women_old_to_new: Vec<Option<usize>>,
    pub men_new_to_old: Vec<usize>,
    pub women_new_to_old: Vec<usize>,
}

/// True iff `p` blocks `M`: the man prefers the woman to his partner (or is
/// unassigned) and the woman prefers the man to her partner (or is
/// unassigned). Pairs inside `M` never block.
pub fn is_blocking(inst: &Instance, matching: &Matching, p: Pair) -> bool {
    if matching.contains(p) {
        return false;
    }
    let man_side = match matching.partner_of_man(p.man) {
        None => true,
        Some(w) => inst.rank_man(p.man, p.woman) < inst.rank_man(p.man, w),
    };
    if !man_side {
        return false;
    }
    match matching.partner_of_woman(p.woman) {
        None => true,
        Some(u) => inst.rank_woman(p.woman, p.man) < inst.rank_woman(p.woman, u),
    }
}

/// All blocking pairs in (man, woman) lexicographic order; empty iff `M` is stable.
pub fn blocking_pairs(inst: &Instance, matching: &Matching) -> Vec<Pair> {
    let mut out = Vec::new();
    for u in 0..inst.n() {
        for w in 0..inst.m() {
            let p = Pair::new(u, w);
            if is_blocking(inst, matching, p) {
                out.push(p);
            }
        }
    }
    out
}

pub fn is_stable(inst: &Instance, matching: &Matching) -> bool {
    for u in 0..inst.n() {
        for w in 0..inst.m() {
            if is_blocking(inst, matching, Pair::new(u, w)) {
                return false;
            }
        }
    }
    true
}

/// Kendall-tau distance between two permutations of the same set: the number
/// of adjacent transpositions needed to transform `a` into `b`.
pub fn kendall_tau(a: &[usize], b: &[usize]) -> u64 {
    debug_assert_eq!(a.len(), b.len());
    let len = a.len();
    let mut pos_in_a = vec![0usize; len];
    for (i, &x) in a.iter().enumerate() {
        pos_in_a[x] = i;
    }
    let seq: Vec<usize> = b.iter().map(|&x| pos_in_a[x]).collect();
    let mut inv = 0u64;
    for i in 0..len {
        for j in i + 1..len {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Swap distance between two same-shape instances: the sum over agents of the
/// Kendall-tau distance between the corresponding preference lists.
pub fn profile_swap_distance(a: &Instance, b: &Instance) -> Result<u64, ModelError> {
    if a.n() != b.n() || a.m() != b.m() {
        return Err(ModelError::ShapeMismatch(a.n(), a.m(), b.n(), b.m()));
    }
    let mut total = 0u64;
    for u in 0..a.n() {
        total += kendall_tau(&a.men_prefs[u], &b.men_prefs[u]);
    }
    for w in 0..a.m() {
        total += kendall_tau(&a.women_prefs[w], &b.women_prefs[w]);
    }
    Ok(total)
}

/// Deletes `victims` from the agent set and from every surviving preference
/// list, preserving relative order. Returns the reduced instance together
/// with the index remapping.
pub fn delete_agents(inst: &Instance, victims: &BTreeSet<AgentId>) -> (Instance, AgentRemap) {
    let keep_man: Vec<bool> =
        (0..inst.n()).map(|u| !victims.contains(&AgentId::man(u))).collect();
    let keep_woman: Vec<bool> =
        (0..inst.m()).map(|w| !victims.contains(&AgentId::woman(w))).collect();

    let mut men_old_to_new = vec![None; inst.n()];
    let mut men_new_to_old = Vec::new();
    for u in 0..inst.n() {
        if keep_man[u] {
            men_old_to_new[u] = Some(men_new_to_old.len());
            men_new_to_old.push(u);
        }
    }
    let mut women_old_to_new = vec![None; inst.m()];
    let mut women_new_to_old = Vec::new();
    for w in 0..inst.m() {
        if keep_woman[w] {
            women_old_to_new[w] = Some(women_new_to_old.len());
            women_new_to_old.push(w);
        }
    }

    let men_prefs: Vec<Vec<usize>> = men_new_to_old
        .iter()
        .map(|&u| {
            inst.men_prefs[u]
                .iter()
                .filter_map(|&w| women_old_to_new[w])
                .collect()
        })
        .collect();
    let women_prefs: Vec<Vec<usize>> = women_new_to_old
        .iter()
        .map(|&w| {
            inst.women_prefs[w]
                .iter()
                .filter_map(|&u| men_old_to_new[u])
                .collect()
        })
        .collect();

    let reduced = Instance::new(men_prefs, women_prefs)
        .expect("deleting agents preserves the permutation property");
    let remap = AgentRemap { men_old_to_new, women_old_to_new, men_new_to_old, women_new_to_old };
    (reduced, remap)
}

/// Parses the instance text format: a header line `n m`, then the n men's
/// lists and the m women's lists, one per line, space-separated 0-based
/// indices. Lines starting with `#` are ignored.
pub fn parse_instance(text: &str) -> Result<Instance, ModelError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'));

    let (header_no, header) = lines
        .next()
        .ok_or(ModelError::Parse { line: 1, msg: "missing header".into() })?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(ModelError::Parse { line: header_no + 1, msg: "expected header \"n m\"".into() })?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(ModelError::Parse { line: header_no + 1, msg: "expected header \"n m\"".into() })?;
    if parts.next().is_some() {
        return Err(ModelError::Parse {
            line: header_no + 1,
            msg: "expected header \"n m\"".into(),
        });
    }

    let mut read_lists = |count: usize, len: usize, what: &str| -> Result<Vec<Vec<usize>>, ModelError> {
        let mut lists = Vec::with_capacity(count);
        for i in 0..count {
            let (line_no, line) = lines.next().ok_or_else(|| ModelError::Parse {
                line: 0,
                msg: format!("missing list for {what} {i}"),
            })?;
            let mut entries = Vec::with_capacity(len);
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| ModelError::Parse {
                    line: line_no + 1,
                    msg: format!("invalid index {tok:?}"),
                })?;
                entries.push(v);
            }
            if entries.len() != len {
                return Err(ModelError::Parse {
                    line: line_no + 1,
                    msg: format!("expected {len} entries, found {}", entries.len()),
                });
            }
            let mut seen = vec![false; len];
            for &v in &entries {
                if v >= len || std::mem::replace(&mut seen[v], true) {
                    return Err(ModelError::Parse {
                        line: line_no + 1,
                        msg: "not a permutation".into(),
                    });
                }
            }
            lists.push(entries);
        }
        Ok(lists)
    };

    let men_prefs = read_lists(n, m, "man")?;
    let women_prefs = read_lists(m, n, "woman")?;
    Instance::new(men_prefs, women_prefs)
}

/// Canonical text form; `parse_instance(&serialize_instance(i)) == i` and the
/// bytes are reproducible.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", inst.n(), inst.m()));
    for list in &inst.men_prefs {
        out.push_str(&join(list));
        out.push('\n');
    }
    for list in &inst.women_prefs {
        out.push_str(&join(list));
        out.push('\n');
    }
    out
}

fn join(list: &[usize]) -> String {
    list.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses the matching format: one `man woman` pair per line, `#` comments ignored.
pub fn parse_matching(text: &str, n: usize, m: usize) -> Result<Matching, ModelError> {
    let mut pairs = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize, ModelError> {
            tok.and_then(|t| t.parse().ok()).ok_or(ModelError::Parse {
                line: line_no + 1,
                msg: "expected \"man woman\"".into(),
            })
        };
        let u = parse(parts.next())?;
        let w = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(ModelError::Parse {
                line: line_no + 1,
                msg: "expected \"man woman\"".into(),
            });
        }
        pairs.push((u, w));
    }
    Matching::new(n, m, &pairs)
}

pub fn serialize_matching(matching: &Matching) -> String {
    let mut out = String::new();
    for p in matching.pairs() {
        out.push_str(&format!("{} {}\n", p.man, p.woman));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All men share the list 0..m and all women the list 0..n.
    pub(crate) fn identity(n: usize) -> Instance {
        let men = vec![(0..n).collect::<Vec<_>>(); n];
        let women = vec![(0..n).collect::<Vec<_>>(); n];
        Instance::new(men, women).unwrap()
    }

    fn cyclic(n: usize) -> Instance {
        // Agent i ranks opposite-side j at position ((j - i) mod n) + 1.
        let lists: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|k| (i + k) % n).collect()).collect();
        Instance::new(lists.clone(), lists).unwrap()
    }

    #[test]
    fn rank_of_identity() {
        let inst = identity(3);
        assert_eq!(inst.rank_of(AgentId::man(1), AgentId::woman(0)).unwrap(), 1);
        assert_eq!(inst.rank_of(AgentId::man(0), AgentId::woman(2)).unwrap(), 3);
        assert_eq!(
            inst.rank_of(AgentId::man(0), AgentId::man(1)),
            Err(ModelError::SameSideRank)
        );
    }

    #[test]
    fn rank_of_cyclic_50() {
        let inst = cyclic(50);
        for i in 0..50 {
            for j in 0..50 {
                assert_eq!(inst.rank_man(i, j), (j + 50 - i) % 50 + 1);
            }
        }
    }

    #[test]
    fn blocking_basics() {
        let inst = identity(2);
        let crossed = Matching::new(2, 2, &[(0, 1), (1, 0)]).unwrap();
        assert!(is_blocking(&inst, &crossed, Pair::new(0, 0)));
        assert_eq!(blocking_pairs(&inst, &crossed), vec![Pair::new(0, 0)]);

        let straight = Matching::new(2, 2, &[(0, 0), (1, 1)]).unwrap();
        assert!(!is_blocking(&inst, &straight, Pair::new(0, 1)));
        // Matched pairs never block.
        assert!(!is_blocking(&inst, &crossed, Pair::new(0, 1)));
        assert!(blocking_pairs(&inst, &straight).is_empty());
    }

    #[test]
    fn empty_matching_blocks() {
        let inst = identity(1);
        let empty = Matching::empty(1, 1);
        assert_eq!(blocking_pairs(&inst, &empty), vec![Pair::new(0, 0)]);
    }

    #[test]
    fn swap_distance_examples() {
        let a = identity(2);
        assert_eq!(profile_swap_distance(&a, &a).unwrap(), 0);
        let b = a.with_list(AgentId::man(0), vec![1, 0]).unwrap();
        assert_eq!(profile_swap_distance(&a, &b).unwrap(), 1);
        let single = identity(1);
        assert_eq!(profile_swap_distance(&single, &single).unwrap(), 0);
        assert!(profile_swap_distance(&a, &single).is_err());
    }

    #[test]
    fn delete_agents_examples() {
        let inst = identity(2);
        let (same, _) = delete_agents(&inst, &BTreeSet::new());
        assert_eq!(same, inst);

        let mut victims = BTreeSet::new();
        victims.insert(AgentId::woman(1));
        let (reduced, remap) = delete_agents(&inst, &victims);
        assert_eq!(reduced.n(), 2);
        assert_eq!(reduced.m(), 1);
        assert_eq!(reduced.men_prefs(), &[vec![0], vec![0]]);
        assert_eq!(remap.women_old_to_new, vec![Some(0), None]);

        let inst3 = identity(3);
        let mut victims = BTreeSet::new();
        victims.insert(AgentId::man(0));
        let (reduced, _) = delete_agents(&inst3, &victims);
        // Women's lists keep the surviving men in their original order.
        for w in 0..3 {
            assert_eq!(reduced.women_prefs()[w], vec![0, 1]);
        }
    }

    #[test]
    fn matching_restrict() {
        let inst = identity(3);
        let m = Matching::new(3, 3, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        let mut victims = BTreeSet::new();
        victims.insert(AgentId::man(1));
        let (_, remap) = delete_agents(&inst, &victims);
        let restricted = m.restrict(&remap);
        assert_eq!(restricted.pairs(), vec![Pair::new(0, 0), Pair::new(1, 2)]);
    }

    #[test]
    fn parse_and_serialize_round_trip() {
        let text = "2 2\n0 1\n1 0\n0 1\n1 0\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(serialize_instance(&inst), text);
    }

    #[test]
    fn parse_ignores_comments() {
        let text = "# instance\n2 2\n0 1\n# men done\n1 0\n0 1\n1 0\n";
        assert!(parse_instance(text).is_ok());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_instance("2 2\n0 1 1\n1 0\n0 1\n1 0\n").unwrap_err();
        assert_eq!(err, ModelError::Parse { line: 2, msg: "expected 2 entries, found 3".into() });

        let err = parse_instance("2 2\n0 0\n1 0\n0 1\n1 0\n").unwrap_err();
        assert_eq!(err, ModelError::Parse { line: 2, msg: "not a permutation".into() });
    }

    #[test]
    fn matching_round_trip() {
        let m = Matching::new(3, 3, &[(2, 0), (0, 1)]).unwrap();
        let text = serialize_matching(&m);
        assert_eq!(parse_matching(&text, 3, 3).unwrap(), m);
        assert!(Matching::new(2, 2, &[(0, 0), (1, 0)]).is_err());
    }
}
