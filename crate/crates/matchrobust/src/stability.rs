//! Classical stable-matching machinery: Gale–Shapley, the rotation poset,
//! enumeration of all stable matchings, stable pairs and agents, and the two
//! rank-optimized stable matchings.
//!
//! The rotation poset is built for square instances in which every agent is
//! assigned. Non-square instances (or instances with unassigned agents, which
//! by the Rural Hospitals theorem are the same agents in every stable
//! matching) are first reduced to the square sub-instance on the stable
//! agents; results are mapped back to the original indices.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{
    delete_agents, AgentId, AgentRemap, Instance, Matching, Pair, Side,
};

/// Default cap on the number of enumerated stable matchings.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StabilityError {
    #[error("more than {cap} stable matchings; enumeration aborted")]
    CapExceeded { cap: usize },
}

/// Deferred-acceptance with the given proposing side. Returns the stable
/// matching optimal for the proposers; deterministic.
pub fn gale_shapley(inst: &Instance, proposing: Side) -> Matching {
    match proposing {
        Side::Man => {
            let assign = propose(inst.men_prefs(), |w, a, b| inst.prefers(AgentId::woman(w), a, b));
            Matching::from_man_partners(assign, inst.m())
        }
        Side::Woman => {
            let assign = propose(inst.women_prefs(), |u, a, b| inst.prefers(AgentId::man(u), a, b));
            // assign maps women to men; flip it.
            let mut man_to_woman = vec![None; inst.n()];
            for (w, u) in assign.iter().enumerate() {
                if let Some(u) = u {
                    man_to_woman[*u] = Some(w);
                }
            }
            Matching::from_man_partners(man_to_woman, inst.m())
        }
    }
}

fn propose(
    prefs: &[Vec<usize>],
    receiver_prefers: impl Fn(usize, usize, usize) -> bool,
) -> Vec<Option<usize>> {
    let proposers = prefs.len();
    let receivers = if proposers == 0 { 0 } else { prefs[0].len() };
    let mut next = vec![0usize; proposers];
    let mut engaged_to = vec![None::<usize>; receivers];
    let mut partner = vec![None::<usize>; proposers];
    let mut free: Vec<usize> = (0..proposers).rev().collect();
    while let Some(p) = free.pop() {
        while next[p] < prefs[p].len() {
            let r = prefs[p][next[p]];
            next[p] += 1;
            match engaged_to[r] {
                None => {
                    engaged_to[r] = Some(p);
                    partner[p] = Some(r);
                    break;
                }
                Some(q) => {
                    if receiver_prefers(r, p, q) {
                        engaged_to[r] = Some(p);
                        partner[p] = Some(r);
                        partner[q] = None;
                        free.push(q);
                        break;
                    }
                }
            }
        }
    }
    partner
}

/// Agents assigned in some (equivalently, by the Rural Hospitals theorem,
/// every) stable matching.
pub fn stable_agents(inst: &Instance) -> BTreeSet<AgentId> {
    let m0 = gale_shapley(inst, Side::Man);
    let mut out = BTreeSet::new();
    for u in 0..inst.n() {
        if m0.partner_of_man(u).is_some() {
            out.insert(AgentId::man(u));
        }
    }
    for w in 0..inst.m() {
        if m0.partner_of_woman(w).is_some() {
            out.insert(AgentId::woman(w));
        }
    }
    out
}

/// One rotation: a cyclic sequence of matched pairs. Eliminating it moves
/// `cycle[i].man` to `cycle[(i + 1) % len].woman`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    pub index: usize,
    pub cycle: Vec<Pair>,
}

/// The rotation poset of a square instance. Rotations are stored in the order
/// they were eliminated, which is a topological order of the precedence DAG;
/// closed (predecessor-closed) subsets are in bijection with the stable
/// matchings.
#[derive(Debug, Clone)]
pub struct RotationPoset {
    n: usize,
    men_optimal: Matching,
    rotations: Vec<Rotation>,
    preds: Vec<Vec<usize>>,
    /// Per man, the rotations that move him, in elimination order.
    man_chain: Vec<Vec<usize>>,
}

/// Builds the rotation poset. Pre: square instance (every agent is then
/// assigned in every stable matching).
pub fn build_rotation_poset(inst: &Instance) -> RotationPoset {
    assert!(inst.is_square(), "rotation poset requires a square instance");
    let n = inst.n();
    let m0 = gale_shapley(inst, Side::Man);
    let mut current: Vec<usize> = (0..n)
        .map(|u| m0.partner_of_man(u).expect("square complete instance is fully matched"))
        .collect();
    let mut woman_partner = vec![0usize; n];
    for (u, &w) in current.iter().enumerate() {
        woman_partner[w] = u;
    }

    let mut rotations: Vec<Rotation> = Vec::new();
    let mut preds: Vec<Vec<usize>> = Vec::new();
    let mut man_chain: Vec<Vec<usize>> = vec![Vec::new(); n];
    // produced_by[u][w]: rotation whose elimination matched u to w.
    let mut produced_by = vec![vec![None::<usize>; n]; n];
    // eliminated_by[u][w]: rotation whose elimination first gave w a partner
    // she strictly prefers to u.
    let mut eliminated_by = vec![vec![None::<usize>; n]; n];

    loop {
        // successor woman for each man under the current matching: the first
        // woman below his partner in his list who prefers him to her partner.
        let succ: Vec<Option<usize>> = (0..n)
            .map(|u| {
                let list = inst.pref_list(AgentId::man(u));
                let start = inst.rank_man(u, current[u]); // 1-based; list[start..] is below partner
                list[start..]
                    .iter()
                    .copied()
                    .find(|&w| inst.rank_woman(w, u) < inst.rank_woman(w, woman_partner[w]))
            })
            .collect();

        // Find one exposed rotation: a cycle of u -> partner(succ(u)).
        let mut color = vec![0u8; n]; // 0 unvisited, 1 on path, 2 dead
        let mut cycle_men: Option<Vec<usize>> = None;
        'outer: for start in 0..n {
            if color[start] != 0 {
                continue;
            }
            let mut path = Vec::new();
            let mut u = start;
            loop {
                if color[u] == 1 {
                    let at = path.iter().position(|&v| v == u).unwrap();
                    cycle_men = Some(path[at..].to_vec());
                    break 'outer;
                }
                if color[u] == 2 || succ[u].is_none() {
                    for &v in &path {
                        color[v] = 2;
                    }
                    if succ[u].is_none() {
                        color[u] = 2;
                    }
                    break;
                }
                color[u] = 1;
                path.push(u);
                u = woman_partner[succ[u].unwrap()];
            }
        }
        let Some(mut men) = cycle_men else { break };

        // Canonical start: smallest man index first.
        let min_at = men
            .iter()
            .enumerate()
            .min_by_key(|&(_, &u)| u)
            .map(|(i, _)| i)
            .unwrap();
        men.rotate_left(min_at);
        let k = men.len();
        let cycle: Vec<Pair> = men.iter().map(|&u| Pair::new(u, current[u])).collect();

        let index = rotations.len();
        let mut my_preds = BTreeSet::new();
        for i in 0..k {
            let u = cycle[i].man;
            let w_old = cycle[i].woman;
            let w_new = cycle[(i + 1) % k].woman;
            if let Some(r) = produced_by[u][w_old] {
                my_preds.insert(r);
            }
            // Every woman strictly between w_old and w_new in u's list must
            // already have rejected u; the rotations that caused those
            // rejections are predecessors.
            let list = inst.pref_list(AgentId::man(u));
            let lo = inst.rank_man(u, w_old); // exclusive
            let hi = inst.rank_man(u, w_new); // exclusive (1-based)
            for &x in &list[lo..hi - 1] {
                if let Some(r) = eliminated_by[u][x] {
                    my_preds.insert(r);
                }
            }
        }
        // Bookkeeping for later rotations, then apply the rotation.
        for i in 0..k {
            let u = cycle[i].man;
            let w_new = cycle[(i + 1) % k].woman;
            let u_old = cycle[(i + 1) % k].man; // w_new's partner before elimination
            produced_by[u][w_new] = Some(index);
            let better = inst.rank_woman(w_new, u);
            let worse = inst.rank_woman(w_new, u_old);
            let wlist = inst.pref_list(AgentId::woman(w_new));
            for &v in &wlist[better..worse] {
                if eliminated_by[v][w_new].is_none() {
                    eliminated_by[v][w_new] = Some(index);
                }
            }
            man_chain[u].push(index);
        }
        for i in 0..k {
            let u = cycle[i].man;
            let w_new = cycle[(i + 1) % k].woman;
            current[u] = w_new;
            woman_partner[w_new] = u;
        }
        rotations.push(Rotation { index, cycle });
        preds.push(my_preds.into_iter().collect());
    }

    RotationPoset { n, men_optimal: m0, rotations, preds, man_chain }
}

impl RotationPoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn men_optimal(&self) -> &Matching {
        &self.men_optimal
    }

    pub fn rotations(&self) -> &[Rotation] {
        &self.rotations
    }

    pub fn preds(&self) -> &[Vec<usize>] {
        &self.preds
    }

    pub fn man_chain(&self) -> &[Vec<usize>] {
        &self.man_chain
    }

    /// Matching obtained by eliminating the rotations of a closed set,
    /// given as an inclusion mask over rotation indices.
    pub fn apply(&self, included: &[bool]) -> Matching {
        let mut current: Vec<Option<usize>> =
            (0..self.n).map(|u| self.men_optimal.partner_of_man(u)).collect();
        for rot in &self.rotations {
            if included[rot.index] {
                let k = rot.cycle.len();
                for i in 0..k {
                    current[rot.cycle[i].man] = Some(rot.cycle[(i + 1) % k].woman);
                }
            }
        }
        Matching::from_man_partners(current, self.n)
    }

    /// Depth-first enumeration of all closed sets in topological order
    /// (exclude-first, so the men-optimal matching is visited first). The
    /// callback receives the inclusion mask; enumeration stops with
    /// `CapExceeded` after `cap` sets.
    pub fn for_each_closed_set(
        &self,
        cap: usize,
        mut f: impl FnMut(&[bool]),
    ) -> Result<usize, StabilityError> {
        fn rec(
            poset: &RotationPoset,
            idx: usize,
            included: &mut Vec<bool>,
            count: &mut usize,
            cap: usize,
            f: &mut impl FnMut(&[bool]),
        ) -> Result<(), StabilityError> {
            if idx == poset.rotations.len() {
                if *count >= cap {
                    return Err(StabilityError::CapExceeded { cap });
                }
                *count += 1;
                f(included);
                return Ok(());
            }
            rec(poset, idx + 1, included, count, cap, f)?;
            if poset.preds[idx].iter().all(|&p| included[p]) {
                included[idx] = true;
                let r = rec(poset, idx + 1, included, count, cap, f);
                included[idx] = false;
                r?;
            }
            Ok(())
        }
        let mut included = vec![false; self.rotations.len()];
        let mut count = 0;
        rec(self, 0, &mut included, &mut count, cap, &mut f)?;
        Ok(count)
    }
}

/// Reduction of an arbitrary instance to the square sub-instance on its
/// stable agents, with the poset built there.
pub struct StableStructure {
    pub reduced: Instance,
    pub remap: AgentRemap,
    pub poset: RotationPoset,
}

impl StableStructure {
    pub fn new(inst: &Instance) -> StableStructure {
        let stable = stable_agents(inst);
        let victims: BTreeSet<AgentId> =
            inst.agents().filter(|a| !stable.contains(a)).collect();
        let (reduced, remap) = delete_agents(inst, &victims);
        let poset = build_rotation_poset(&reduced);
        StableStructure { reduced, remap, poset }
    }

    /// Translates a matching on the reduced instance back to original indices.
    pub fn lift(&self, matching: &Matching) -> Matching {
        let pairs: Vec<(usize, usize)> = matching
            .pairs()
            .into_iter()
            .map(|p| (self.remap.men_new_to_old[p.man], self.remap.women_new_to_old[p.woman]))
            .collect();
        Matching::new(self.remap.men_old_to_new.len(), self.remap.women_old_to_new.len(), &pairs)
            .expect("lifted matching is valid")
    }
}

/// All stable matchings, in a deterministic order (men-optimal first),
/// without duplicates. Errors with `CapExceeded` if more than `cap` exist.
pub fn enumerate_stable_matchings(
    inst: &Instance,
    cap: usize,
) -> Result<Vec<Matching>, StabilityError> {
    let s = StableStructure::new(inst);
    let mut out = Vec::new();
    s.poset.for_each_closed_set(cap, |mask| {
        out.push(s.lift(&s.poset.apply(mask)));
    })?;
    Ok(out)
}

/// The pairs that appear in at least one stable matching: the men-optimal
/// pairs plus every pair a rotation moves a man from or to.
pub fn stable_pairs(inst: &Instance) -> BTreeSet<Pair> {
    let s = StableStructure::new(inst);
    let mut reduced_pairs: BTreeSet<Pair> = s.poset.men_optimal().pairs().into_iter().collect();
    for rot in s.poset.rotations() {
        let k = rot.cycle.len();
        for i in 0..k {
            reduced_pairs.insert(rot.cycle[i]);
            reduced_pairs.insert(Pair::new(rot.cycle[i].man, rot.cycle[(i + 1) % k].woman));
        }
    }
    reduced_pairs
        .into_iter()
        .map(|p| Pair::new(s.remap.men_new_to_old[p.man], s.remap.women_new_to_old[p.woman]))
        .collect()
}

/// Rank-sum of a matching: sum over assigned agents of the rank of their partner.
pub fn rank_sum(inst: &Instance, matching: &Matching) -> u64 {
    let mut total = 0u64;
    for p in matching.pairs() {
        total += inst.rank_man(p.man, p.woman) as u64;
        total += inst.rank_woman(p.woman, p.man) as u64;
    }
    total
}

/// The stable matching minimizing the rank-sum, computed as a minimum-weight
/// closed subset of the rotation poset (rotation weights are rank-sum deltas),
/// tie-broken to the lexicographically smallest sorted pair list.
pub fn summed_rank_min_matching(inst: &Instance) -> Matching {
    let s = StableStructure::new(inst);
    let poset = &s.poset;
    let r = poset.rotations().len();
    let weights: Vec<i64> = poset
        .rotations()
        .iter()
        .map(|rot| rotation_rank_delta(&s.reduced, rot))
        .collect();

    let mut forced_in = vec![false; r];
    let mut forced_out = vec![false; r];
    let (best_weight, _) = min_weight_closed_set(poset, &weights, &forced_in, &forced_out);

    // Fix the partners man by man, smallest woman index first, keeping the
    // rank-sum optimal; this realizes the lexicographic tie-break.
    for u in 0..poset.n() {
        let chain = &poset.man_chain()[u];
        let mut options: Vec<(usize, usize)> = Vec::new(); // (woman, chain position t)
        let w0 = poset.men_optimal().partner_of_man(u).unwrap();
        options.push((w0, 0));
        for (t, &rot) in chain.iter().enumerate() {
            let rotation = &poset.rotations()[rot];
            let at = rotation.cycle.iter().position(|p| p.man == u).unwrap();
            let w_new = rotation.cycle[(at + 1) % rotation.cycle.len()].woman;
            options.push((w_new, t + 1));
        }
        options.sort();
        for &(_, t) in &options {
            let mut try_in = forced_in.clone();
            let mut try_out = forced_out.clone();
            for &rot in &chain[..t] {
                try_in[rot] = true;
            }
            if t < chain.len() {
                try_out[chain[t]] = true;
            }
            let (weight, _) = min_weight_closed_set(poset, &weights, &try_in, &try_out);
            if weight == best_weight {
                forced_in = try_in;
                forced_out = try_out;
                break;
            }
        }
    }

    let (_, mask) = min_weight_closed_set(poset, &weights, &forced_in, &forced_out);
    s.lift(&poset.apply(&mask))
}

fn rotation_rank_delta(inst: &Instance, rot: &Rotation) -> i64 {
    let k = rot.cycle.len();
    let mut delta = 0i64;
    for i in 0..k {
        let u = rot.cycle[i].man;
        let w_old = rot.cycle[i].woman;
        let w_new = rot.cycle[(i + 1) % k].woman;
        delta += inst.rank_man(u, w_new) as i64 - inst.rank_man(u, w_old) as i64;
        let u_old = rot.cycle[(i + 1) % k].man;
        delta += inst.rank_woman(w_new, u) as i64 - inst.rank_woman(w_new, u_old) as i64;
    }
    delta
}

/// Minimum total weight over closed sets of the poset, honoring forced
/// inclusions/exclusions, via a max-flow min-cut on the closure graph.
/// Returns the achieved weight (of the real weights) and the chosen mask.
fn min_weight_closed_set(
    poset: &RotationPoset,
    weights: &[i64],
    forced_in: &[bool],
    forced_out: &[bool],
) -> (i64, Vec<bool>) {
    const FORCE: i64 = 1 << 40;
    let r = weights.len();
    if r == 0 {
        return (0, Vec::new());
    }
    // Maximize sum of profits p_i = -w_i (+- forcing) over predecessor-closed sets.
    let mut flow = Dinic::new(r + 2);
    let source = r;
    let sink = r + 1;
    for i in 0..r {
        let mut p = -weights[i];
        if forced_in[i] {
            p += FORCE;
        }
        if forced_out[i] {
            p -= FORCE;
        }
        if p > 0 {
            flow.add_edge(source, i, p);
        } else if p < 0 {
            flow.add_edge(i, sink, -p);
        }
    }
    for i in 0..r {
        for &p in &poset.preds()[i] {
            flow.add_edge(i, p, i64::MAX / 4);
        }
    }
    flow.max_flow(source, sink);
    let reach = flow.reachable_from(source);
    let mask: Vec<bool> = (0..r).map(|i| reach[i]).collect();
    debug_assert!((0..r).all(|i| !forced_in[i] || mask[i]));
    debug_assert!((0..r).all(|i| !forced_out[i] || !mask[i]));
    let weight = (0..r).filter(|&i| mask[i]).map(|i| weights[i]).sum();
    (weight, mask)
}

/// Blocking-pair proximity objective without the logarithm:
/// sum over k = 1..=depth of n^(depth-k) * #{pairs outside M at swap cost k}.
pub fn proximity_objective(inst: &Instance, matching: &Matching, depth: usize) -> u128 {
    let n = inst.n() as u128;
    let mut histogram = vec![0u128; depth + 1];
    for u in 0..inst.n() {
        for w in 0..inst.m() {
            let p = Pair::new(u, w);
            if matching.contains(p) {
                continue;
            }
            let cost = crate::worstcase::pair_swap_cost(inst, matching, p);
            if cost >= 1 && cost <= depth as u64 {
                histogram[cost as usize] += 1;
            }
        }
    }
    let mut total = 0u128;
    for k in 1..=depth {
        total += n.pow((depth - k) as u32) * histogram[k];
    }
    total
}

/// The stable matching minimizing the blocking-pair-proximity objective,
/// found by exhaustive search over the closed sets of the rotation poset.
/// Ties go to the lexicographically smallest sorted pair list.
pub fn proximity_robust_matching(
    inst: &Instance,
    depth: usize,
    cap: usize,
) -> Result<Matching, StabilityError> {
    let s = StableStructure::new(inst);
    let mut best: Option<(u128, Vec<Pair>, Matching)> = None;
    s.poset.for_each_closed_set(cap, |mask| {
        let matching = s.poset.apply(mask);
        let obj = proximity_objective(&s.reduced, &matching, depth);
        let pairs = matching.pairs();
        let better = match &best {
            None => true,
            Some((b_obj, b_pairs, _)) => obj < *b_obj || (obj == *b_obj && pairs < *b_pairs),
        };
        if better {
            best = Some((obj, pairs, matching));
        }
    })?;
    let (_, _, matching) = best.expect("at least the men-optimal matching exists");
    Ok(s.lift(&matching))
}

/// Small deterministic Dinic max-flow used for the closure problem.
struct Dinic {
    graph: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Dinic {
        Dinic {
            graph: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64) {
        let e = self.to.len();
        self.graph[from].push(e);
        self.to.push(to);
        self.cap.push(cap);
        self.graph[to].push(e + 1);
        self.to.push(from);
        self.cap.push(0);
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &e in &self.graph[v] {
                if self.cap[e] > 0 && self.level[self.to[e]] < 0 {
                    self.level[self.to[e]] = self.level[v] + 1;
                    queue.push_back(self.to[e]);
                }
            }
        }
        self.level[sink] >= 0
    }

    fn dfs(&mut self, v: usize, sink: usize, f: i64) -> i64 {
        if v == sink {
            return f;
        }
        while self.iter[v] < self.graph[v].len() {
            let e = self.graph[v][self.iter[v]];
            let u = self.to[e];
            if self.cap[e] > 0 && self.level[u] == self.level[v] + 1 {
                let d = self.dfs(u, sink, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(source, sink) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(source, sink, i64::MAX / 2);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    fn reachable_from(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.graph.len()];
        let mut stack = vec![source];
        seen[source] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.graph[v] {
                if self.cap[e] > 0 && !seen[self.to[e]] {
                    seen[self.to[e]] = true;
                    stack.push(self.to[e]);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{blocking_pairs, is_stable};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn identity(n: usize) -> Instance {
        let lists = vec![(0..n).collect::<Vec<_>>(); n];
        Instance::new(lists.clone(), lists).unwrap()
    }

    fn cyclic(n: usize) -> Instance {
        let lists: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|k| (i + k) % n).collect()).collect();
        Instance::new(lists.clone(), lists).unwrap()
    }

    fn mutual_disagreement_2() -> Instance {
        Instance::new(
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap()
    }

    pub(crate) fn random_instance(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Instance {
        let men = (0..n)
            .map(|_| {
                let mut l: Vec<usize> = (0..m).collect();
                l.shuffle(rng);
                l
            })
            .collect();
        let women = (0..m)
            .map(|_| {
                let mut l: Vec<usize> = (0..n).collect();
                l.shuffle(rng);
                l
            })
            .collect();
        Instance::new(men, women).unwrap()
    }

    /// Brute-force stable matchings over all perfect matchings (test oracle).
    fn brute_force_stable(inst: &Instance) -> Vec<Matching> {
        use itertools::Itertools;
        let n = inst.n();
        (0..n)
            .permutations(n)
            .map(|perm| {
                let pairs: Vec<(usize, usize)> =
                    perm.iter().enumerate().map(|(u, &w)| (u, w)).collect();
                Matching::new(n, n, &pairs).unwrap()
            })
            .filter(|m| is_stable(inst, m))
            .collect()
    }

    #[test]
    fn gs_identity() {
        let inst = identity(3);
        let m = gale_shapley(&inst, Side::Man);
        assert_eq!(m.pairs(), vec![Pair::new(0, 0), Pair::new(1, 1), Pair::new(2, 2)]);
        let single = identity(1);
        assert_eq!(gale_shapley(&single, Side::Man).pairs(), vec![Pair::new(0, 0)]);
    }

    #[test]
    fn gs_cyclic_50_is_diagonal() {
        let inst = cyclic(50);
        let m = gale_shapley(&inst, Side::Man);
        for i in 0..50 {
            assert_eq!(m.partner_of_man(i), Some(i));
        }
        assert!(is_stable(&inst, &m));
    }

    #[test]
    fn poset_sizes() {
        assert_eq!(build_rotation_poset(&identity(3)).rotations().len(), 0);
        assert!(build_rotation_poset(&mutual_disagreement_2()).rotations().len() >= 1);
        assert_eq!(build_rotation_poset(&identity(1)).rotations().len(), 0);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_stable_matchings(&identity(3), 100).unwrap().len(), 1);
        assert_eq!(
            enumerate_stable_matchings(&mutual_disagreement_2(), 100).unwrap().len(),
            2
        );
        assert_eq!(enumerate_stable_matchings(&identity(1), 100).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate_stable_matchings(&mutual_disagreement_2(), 1).unwrap_err();
        assert_eq!(err, StabilityError::CapExceeded { cap: 1 });
    }

    #[test]
    fn stable_pairs_examples() {
        let diag: BTreeSet<Pair> = (0..3).map(|i| Pair::new(i, i)).collect();
        assert_eq!(stable_pairs(&identity(3)), diag);
        let all: BTreeSet<Pair> =
            (0..2).flat_map(|u| (0..2).map(move |w| Pair::new(u, w))).collect();
        assert_eq!(stable_pairs(&mutual_disagreement_2()), all);
    }

    #[test]
    fn stable_agents_examples() {
        let inst = identity(3);
        assert_eq!(stable_agents(&inst).len(), 6);
        // Two men, one woman: the woman and exactly one man are stable.
        let skew = Instance::new(vec![vec![0], vec![0]], vec![vec![1, 0]]).unwrap();
        let agents = stable_agents(&skew);
        assert_eq!(agents.len(), 2);
        assert!(agents.contains(&AgentId::woman(0)));
        assert!(agents.contains(&AgentId::man(1)));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=5 {
            for _ in 0..20 {
                let inst = random_instance(n, n, &mut rng);
                let enumerated = enumerate_stable_matchings(&inst, 10_000).unwrap();
                let brute: BTreeSet<Vec<Pair>> =
                    brute_force_stable(&inst).into_iter().map(|m| m.pairs()).collect();
                let ours: BTreeSet<Vec<Pair>> =
                    enumerated.iter().map(|m| m.pairs()).collect();
                assert_eq!(ours, brute, "n={n}");
                assert_eq!(ours.len(), enumerated.len(), "duplicates emitted");
            }
        }
    }

    #[test]
    fn men_optimality_and_rural_hospitals() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let inst = random_instance(4, 4, &mut rng);
            let m0 = gale_shapley(&inst, Side::Man);
            assert!(blocking_pairs(&inst, &m0).is_empty());
            let all = enumerate_stable_matchings(&inst, 10_000).unwrap();
            for m in &all {
                for u in 0..4 {
                    let gs_rank = inst.rank_man(u, m0.partner_of_man(u).unwrap());
                    let other_rank = inst.rank_man(u, m.partner_of_man(u).unwrap());
                    assert!(gs_rank <= other_rank);
                }
                assert_eq!(m.len(), m0.len());
            }
        }
    }

    #[test]
    fn rural_hospitals_nonsquare() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let inst = random_instance(5, 3, &mut rng);
            let all = enumerate_stable_matchings(&inst, 10_000).unwrap();
            let assigned: BTreeSet<Vec<usize>> = all
                .iter()
                .map(|m| (0..5).filter(|&u| m.partner_of_man(u).is_some()).collect())
                .collect();
            assert_eq!(assigned.len(), 1, "assigned sets differ across stable matchings");
            for m in &all {
                assert!(is_stable(&inst, m));
            }
        }
    }

    #[test]
    fn summed_rank_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for n in 2..=6 {
            for _ in 0..15 {
                let inst = random_instance(n, n, &mut rng);
                let ours = summed_rank_min_matching(&inst);
                let all = enumerate_stable_matchings(&inst, 100_000).unwrap();
                let best = all
                    .iter()
                    .map(|m| (rank_sum(&inst, m), m.pairs()))
                    .min()
                    .unwrap();
                assert_eq!((rank_sum(&inst, &ours), ours.pairs()), best);
            }
        }
    }

    #[test]
    fn summed_rank_identity_and_cyclic() {
        let inst = identity(3);
        assert_eq!(
            summed_rank_min_matching(&inst).pairs(),
            vec![Pair::new(0, 0), Pair::new(1, 1), Pair::new(2, 2)]
        );
        let rob = cyclic(50);
        let m = summed_rank_min_matching(&rob);
        assert_eq!(rank_sum(&rob, &m), 100);
    }

    #[test]
    fn proximity_robust_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=6 {
            for _ in 0..10 {
                let inst = random_instance(n, n, &mut rng);
                let ours = proximity_robust_matching(&inst, 5, 100_000).unwrap();
                let all = enumerate_stable_matchings(&inst, 100_000).unwrap();
                let best = all
                    .iter()
                    .map(|m| (proximity_objective(&inst, m, 5), m.pairs()))
                    .min()
                    .unwrap();
                assert_eq!((proximity_objective(&inst, &ours, 5), ours.pairs()), best);
            }
        }
    }

    #[test]
    fn proximity_robust_cyclic_is_diagonal() {
        let rob = cyclic(50);
        let m = proximity_robust_matching(&rob, 5, 100_000).unwrap();
        for i in 0..50 {
            assert_eq!(m.partner_of_man(i), Some(i));
        }
        assert_eq!(proximity_objective(&rob, &m, 5), 0);
    }
}
