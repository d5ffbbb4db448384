//! Exact polynomial worst-case robustness of matchings under swaps and
//! deletions, together with swap-witness plumbing shared by the brute-force
//! solvers.
//!
//! The NP-hard variants (pairs, agents, blocking-pair targets) have no
//! polynomial algorithm here; the `oracle` module serves them exhaustively at
//! small scale.

use std::collections::BTreeSet;

use crate::model::{is_stable, AgentId, Instance, Matching, Pair, Side};

/// One adjacent transposition: swap positions `position` and `position + 1`
/// in `agent`'s preference list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapOp {
    pub agent: AgentId,
    pub position: usize,
}

/// The perturbation achieving a worst-case budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Swaps(Vec<SwapOp>),
    Deletions(BTreeSet<AgentId>),
}

/// Result of a worst-case robustness computation. `budget` is `None` when the
/// object cannot be destabilized at any budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstCaseResult {
    pub budget: Option<u64>,
    pub witness: Option<Witness>,
}

impl WorstCaseResult {
    pub fn impossible() -> WorstCaseResult {
        WorstCaseResult { budget: None, witness: None }
    }
}

/// Applies a swap schedule to an instance.
pub fn apply_swaps(inst: &Instance, swaps: &[SwapOp]) -> Instance {
    let mut men: Vec<Vec<usize>> = inst.men_prefs().to_vec();
    let mut women: Vec<Vec<usize>> = inst.women_prefs().to_vec();
    for op in swaps {
        let list = match op.agent.side {
            Side::Man => &mut men[op.agent.index],
            Side::Woman => &mut women[op.agent.index],
        };
        list.swap(op.position, op.position + 1);
    }
    Instance::new(men, women).expect("swaps preserve the permutation property")
}

/// A minimum-length swap schedule transforming `from` into `to` (both
/// permutations of the same set): repeatedly bubbles the next target element
/// into place, using exactly the Kendall-tau distance many swaps.
pub fn swaps_between(agent: AgentId, from: &[usize], to: &[usize]) -> Vec<SwapOp> {
    let mut work = from.to_vec();
    let mut ops = Vec::new();
    for target_pos in 0..to.len() {
        let cur = work.iter().position(|&x| x == to[target_pos]).unwrap();
        for p in (target_pos..cur).rev() {
            work.swap(p, p + 1);
            ops.push(SwapOp { agent, position: p });
        }
    }
    debug_assert_eq!(work, to);
    ops
}

/// Swaps needed on `a`'s side to make `a` prefer `b` to its current partner:
/// zero if `a` is unassigned or already prefers `b`, otherwise the rank gap.
pub fn agent_swap_cost(inst: &Instance, matching: &Matching, a: AgentId, b: usize) -> u64 {
    let partner = match a.side {
        Side::Man => matching.partner_of_man(a.index),
        Side::Woman => matching.partner_of_woman(a.index),
    };
    match partner {
        None => 0,
        Some(p) => {
            let rank_b = inst.rank_of(a, AgentId { side: a.side.opposite(), index: b }).unwrap();
            let rank_p = inst.rank_of(a, AgentId { side: a.side.opposite(), index: p }).unwrap();
            rank_b.saturating_sub(rank_p) as u64
        }
    }
}

/// Minimum swaps to make the pair `p` (outside `M`) blocking:
/// the man's cost plus the woman's cost.
pub fn pair_swap_cost(inst: &Instance, matching: &Matching, p: Pair) -> u64 {
    agent_swap_cost(inst, matching, AgentId::man(p.man), p.woman)
        + agent_swap_cost(inst, matching, AgentId::woman(p.woman), p.man)
}

/// Schedule realizing `pair_swap_cost`: moves the woman directly above the
/// man's partner in his list, and the man above the woman's partner in hers.
fn pair_swap_witness(inst: &Instance, matching: &Matching, p: Pair) -> Vec<SwapOp> {
    let mut ops = Vec::new();
    let mut up = |agent: AgentId, b: usize| {
        let partner = match agent.side {
            Side::Man => matching.partner_of_man(agent.index),
            Side::Woman => matching.partner_of_woman(agent.index),
        };
        if let Some(partner) = partner {
            let rank_b = inst.rank_of(agent, AgentId { side: agent.side.opposite(), index: b }).unwrap();
            let rank_p =
                inst.rank_of(agent, AgentId { side: agent.side.opposite(), index: partner }).unwrap();
            if rank_b > rank_p {
                // Move b from 0-based position rank_b-1 up to rank_p-1.
                for pos in ((rank_p - 1)..(rank_b - 1)).rev() {
                    ops.push(SwapOp { agent, position: pos });
                }
            }
        }
    };
    up(AgentId::man(p.man), p.woman);
    up(AgentId::woman(p.woman), p.man);
    ops
}

/// Minimum number of swaps after which `M` admits a blocking pair, with the
/// cheapest pair's swap schedule as witness. Returns budget 0 if `M` is
/// already unstable and `None` if no pair outside `M` exists.
pub fn matching_swap_robustness(inst: &Instance, matching: &Matching) -> WorstCaseResult {
    if !is_stable(inst, matching) {
        return WorstCaseResult { budget: Some(0), witness: Some(Witness::Swaps(Vec::new())) };
    }
    let mut best: Option<(u64, Pair)> = None;
    for u in 0..inst.n() {
        for w in 0..inst.m() {
            let p = Pair::new(u, w);
            if matching.contains(p) {
                continue;
            }
            let cost = pair_swap_cost(inst, matching, p);
            if best.map_or(true, |(b, _)| cost < b) {
                best = Some((cost, p));
            }
        }
    }
    match best {
        None => WorstCaseResult::impossible(),
        Some((cost, p)) => WorstCaseResult {
            budget: Some(cost),
            witness: Some(Witness::Swaps(pair_swap_witness(inst, matching, p))),
        },
    }
}

/// Minimum number of agent deletions after which the restriction of `M` to
/// the survivors is unstable in the reduced instance: 0 if `M` is already
/// unstable, 1 if deleting a single assigned agent frees a partner someone
/// else wants, 2 if `M` has two pairs to split, `None` otherwise.
pub fn matching_delete_robustness(inst: &Instance, matching: &Matching) -> WorstCaseResult {
    if !is_stable(inst, matching) {
        return WorstCaseResult {
            budget: Some(0),
            witness: Some(Witness::Deletions(BTreeSet::new())),
        };
    }
    if let Some(victim) = single_deletion_victim(inst, matching) {
        let mut set = BTreeSet::new();
        set.insert(victim);
        return WorstCaseResult { budget: Some(1), witness: Some(Witness::Deletions(set)) };
    }
    let pairs = matching.pairs();
    if pairs.len() >= 2 {
        // Deleting a man and a woman from different pairs leaves their
        // partners unassigned; those partners then block each other.
        let mut set = BTreeSet::new();
        set.insert(AgentId::man(pairs[0].man));
        set.insert(AgentId::woman(pairs[1].woman));
        return WorstCaseResult { budget: Some(2), witness: Some(Witness::Deletions(set)) };
    }
    WorstCaseResult::impossible()
}

/// Deleting `a` frees `M(a)`, who then blocks with any same-side-as-`a` agent
/// that is unassigned or prefers `M(a)` to their own partner.
fn single_deletion_victim(inst: &Instance, matching: &Matching) -> Option<AgentId> {
    for u in 0..inst.n() {
        if let Some(w) = matching.partner_of_man(u) {
            for v in 0..inst.n() {
                if v == u {
                    continue;
                }
                let wants = match matching.partner_of_man(v) {
                    None => true,
                    Some(w_v) => inst.rank_man(v, w) < inst.rank_man(v, w_v),
                };
                if wants {
                    return Some(AgentId::man(u));
                }
            }
        }
    }
    for w in 0..inst.m() {
        if let Some(u) = matching.partner_of_woman(w) {
            for v in 0..inst.m() {
                if v == w {
                    continue;
                }
                let wants = match matching.partner_of_woman(v) {
                    None => true,
                    Some(u_v) => inst.rank_woman(v, u) < inst.rank_woman(v, u_v),
                };
                if wants {
                    return Some(AgentId::woman(w));
                }
            }
        }
    }
    None
}

/// Harness property: the minimum swap budget never exceeds n on square
/// instances with n > 1 in which some agent does not rank its partner last.
pub fn swap_upper_bound_check(inst: &Instance, matching: &Matching) -> bool {
    match matching_swap_robustness(inst, matching).budget {
        Some(b) => b <= inst.n() as u64,
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{blocking_pairs, delete_agents};
    use crate::stability::gale_shapley;

    fn identity(n: usize) -> Instance {
        let lists = vec![(0..n).collect::<Vec<_>>(); n];
        Instance::new(lists.clone(), lists).unwrap()
    }

    fn cyclic(n: usize) -> Instance {
        let lists: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|k| (i + k) % n).collect()).collect();
        Instance::new(lists.clone(), lists).unwrap()
    }

    fn diagonal(n: usize) -> Matching {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        Matching::new(n, n, &pairs).unwrap()
    }

    #[test]
    fn swap_robustness_cyclic_50() {
        let inst = cyclic(50);
        let res = matching_swap_robustness(&inst, &diagonal(50));
        assert_eq!(res.budget, Some(50));
    }

    #[test]
    fn swap_robustness_identity_50() {
        let inst = identity(50);
        let m = gale_shapley(&inst, Side::Man);
        let res = matching_swap_robustness(&inst, &m);
        assert_eq!(res.budget, Some(1));
        // Witness replay: applying the schedule creates a blocking pair.
        let Witness::Swaps(ops) = res.witness.unwrap() else { panic!() };
        assert_eq!(ops.len(), 1);
        let perturbed = apply_swaps(&inst, &ops);
        assert!(!blocking_pairs(&perturbed, &m).is_empty());
    }

    #[test]
    fn swap_robustness_singleton_impossible() {
        let inst = identity(1);
        let res = matching_swap_robustness(&inst, &diagonal(1));
        assert_eq!(res.budget, None);
    }

    #[test]
    fn unstable_matching_is_zero() {
        let inst = identity(2);
        let crossed = Matching::new(2, 2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(matching_swap_robustness(&inst, &crossed).budget, Some(0));
        assert_eq!(matching_delete_robustness(&inst, &crossed).budget, Some(0));
    }

    #[test]
    fn delete_robustness_identity_2() {
        let inst = identity(2);
        let res = matching_delete_robustness(&inst, &diagonal(2));
        assert_eq!(res.budget, Some(1));
        let Witness::Deletions(victims) = res.witness.unwrap() else { panic!() };
        let (reduced, remap) = delete_agents(&inst, &victims);
        let restricted = diagonal(2).restrict(&remap);
        assert!(!blocking_pairs(&reduced, &restricted).is_empty());
    }

    #[test]
    fn delete_robustness_cyclic() {
        // Everyone has their top choice, so no single deletion helps.
        for n in [4usize, 50] {
            let inst = cyclic(n);
            let res = matching_delete_robustness(&inst, &diagonal(n));
            assert_eq!(res.budget, Some(2), "n={n}");
            let Witness::Deletions(victims) = res.witness.unwrap() else { panic!() };
            let (reduced, remap) = delete_agents(&inst, &victims);
            let restricted = diagonal(n).restrict(&remap);
            assert!(!blocking_pairs(&reduced, &restricted).is_empty());
        }
    }

    #[test]
    fn delete_robustness_singleton_impossible() {
        let inst = identity(1);
        assert_eq!(matching_delete_robustness(&inst, &diagonal(1)).budget, None);
    }

    #[test]
    fn upper_bound_examples() {
        let id3 = identity(3);
        assert!(swap_upper_bound_check(&id3, &diagonal(3)));
        let rob = cyclic(50);
        assert!(swap_upper_bound_check(&rob, &diagonal(50)));
    }

    #[test]
    fn swaps_between_is_minimal() {
        let from = vec![0, 1, 2, 3];
        let to = vec![2, 0, 3, 1];
        let ops = swaps_between(AgentId::man(0), &from, &to);
        assert_eq!(ops.len() as u64, crate::model::kendall_tau(&from, &to));
    }
}
