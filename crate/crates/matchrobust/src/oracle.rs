//! Brute-force reference solvers. These are the test oracles for the
//! polynomial algorithms and the counting machinery, and the only exact
//! solvers for the NP-hard robustness variants. They work by explicit
//! enumeration, fail loudly when a guard is exceeded, and definition-check
//! every witness before returning it.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::model::{
    blocking_pairs, delete_agents, is_blocking, is_stable, kendall_tau, AgentId, Instance,
    Matching, Pair,
};
use crate::worstcase::{swaps_between, SwapOp, Witness, WorstCaseResult};

/// Default ceiling on the number of enumerated objects.
pub const DEFAULT_GUARD: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space of {needed} items exceeds the guard of {guard}")]
    GuardExceeded { needed: u128, guard: u64 },
    #[error("preference lists of length {len} are too long for exhaustive enumeration")]
    ListTooLong { len: usize },
    #[error("instances larger than {max} per side exceed the matching enumeration guard")]
    InstanceTooLarge { max: usize },
}

/// All permutations of `center`'s elements at Kendall-tau distance exactly `k`.
pub fn permutations_at_distance(center: &[usize], k: u64) -> Result<Vec<Vec<usize>>, OracleError> {
    if center.len() > 8 {
        return Err(OracleError::ListTooLong { len: center.len() });
    }
    Ok(center
        .iter()
        .copied()
        .permutations(center.len())
        .filter(|p| kendall_tau(center, p) == k)
        .collect())
}

fn max_inversions(len: usize) -> u64 {
    (len * len.saturating_sub(1) / 2) as u64
}

/// Per-list permutation buckets by exact distance, for every list of the instance
/// in the fixed order: men 0..n-1, then women 0..m-1.
fn list_buckets(inst: &Instance, max_dist: u64) -> Result<Vec<Vec<Vec<Vec<usize>>>>, OracleError> {
    let mut buckets = Vec::new();
    for a in inst.agents() {
        let center = inst.pref_list(a);
        let cap = max_dist.min(max_inversions(center.len()));
        let mut by_k: Vec<Vec<Vec<usize>>> = vec![Vec::new(); cap as usize + 1];
        if center.len() > 8 {
            return Err(OracleError::ListTooLong { len: center.len() });
        }
        for p in center.iter().copied().permutations(center.len()) {
            let d = kendall_tau(center, &p);
            if d <= cap {
                by_k[d as usize].push(p);
            }
        }
        buckets.push(by_k);
    }
    Ok(buckets)
}

/// Number of profiles at distance exactly `dist`, computed from the buckets
/// (independently of the `counting` module).
fn bucket_profile_count(buckets: &[Vec<Vec<Vec<usize>>>], dist: u64) -> u128 {
    let mut conv = vec![0u128; dist as usize + 1];
    conv[0] = 1;
    for by_k in buckets {
        let mut next = vec![0u128; dist as usize + 1];
        for (have, &ways) in conv.iter().enumerate() {
            if ways == 0 {
                continue;
            }
            for (k, perms) in by_k.iter().enumerate() {
                if have + k <= dist as usize && !perms.is_empty() {
                    next[have + k] += ways * perms.len() as u128;
                }
            }
        }
        conv = next;
    }
    conv[dist as usize]
}

/// Visits every preference profile at swap distance exactly `dist` from
/// `inst`, each exactly once, in a deterministic order. The guard bounds the
/// number of visited profiles.
pub fn for_each_profile_at_distance(
    inst: &Instance,
    dist: u64,
    guard: u64,
    mut f: impl FnMut(&Instance),
) -> Result<u128, OracleError> {
    let buckets = list_buckets(inst, dist)?;
    let total = bucket_profile_count(&buckets, dist);
    if total > guard as u128 {
        return Err(OracleError::GuardExceeded { needed: total, guard });
    }
    // Suffix capacities prune infeasible budget splits.
    let lists = buckets.len();
    let mut suffix_cap = vec![0u64; lists + 1];
    for i in (0..lists).rev() {
        suffix_cap[i] = suffix_cap[i + 1] + (buckets[i].len() as u64 - 1);
    }

    let mut men: Vec<Vec<usize>> = inst.men_prefs().to_vec();
    let mut women: Vec<Vec<usize>> = inst.women_prefs().to_vec();
    let n = inst.n();

    fn rec(
        buckets: &[Vec<Vec<Vec<usize>>>],
        suffix_cap: &[u64],
        idx: usize,
        remaining: u64,
        n: usize,
        men: &mut Vec<Vec<usize>>,
        women: &mut Vec<Vec<usize>>,
        f: &mut impl FnMut(&Instance),
    ) {
        if idx == buckets.len() {
            debug_assert_eq!(remaining, 0);
            let inst = Instance::new(men.clone(), women.clone())
                .expect("permuted lists stay permutations");
            f(&inst);
            return;
        }
        let this_cap = (buckets[idx].len() as u64 - 1).min(remaining);
        for k in 0..=this_cap {
            if remaining - k > suffix_cap[idx + 1] {
                continue;
            }
            for perm in &buckets[idx][k as usize] {
                if idx < n {
                    men[idx] = perm.clone();
                } else {
                    women[idx - n] = perm.clone();
                }
                rec(buckets, suffix_cap, idx + 1, remaining - k, n, men, women, f);
            }
        }
        // Restore the center list for this slot.
        if idx < n {
            men[idx] = buckets[idx][0][0].clone();
        } else {
            women[idx - n] = buckets[idx][0][0].clone();
        }
    }

    rec(&buckets, &suffix_cap, 0, dist, n, &mut men, &mut women, &mut f);
    Ok(total)
}

/// Convenience collector for tests.
pub fn profiles_at_distance(
    inst: &Instance,
    dist: u64,
    guard: u64,
) -> Result<Vec<Instance>, OracleError> {
    let mut out = Vec::new();
    for_each_profile_at_distance(inst, dist, guard, |p| out.push(p.clone()))?;
    Ok(out)
}

/// Exact number of profiles at swap distance exactly `dist` where `matching`
/// is not stable (the quantity the FPRAS approximates).
pub fn exact_unstable_count(
    inst: &Instance,
    matching: &Matching,
    dist: u64,
    guard: u64,
) -> Result<BigUint, OracleError> {
    let mut count = BigUint::zero();
    for_each_profile_at_distance(inst, dist, guard, |p| {
        if !is_stable(p, matching) {
            count += BigUint::one();
        }
    })?;
    Ok(count)
}

/// All matchings of the instance; `perfect_only` keeps only those with
/// min(n, m) pairs. Guarded at 8 agents per side.
pub fn enumerate_all_matchings(
    inst: &Instance,
    perfect_only: bool,
) -> Result<Vec<Matching>, OracleError> {
    let (n, m) = (inst.n(), inst.m());
    if n > 8 || m > 8 {
        return Err(OracleError::InstanceTooLarge { max: 8 });
    }
    let full = n.min(m);
    let mut out = Vec::new();
    let mut partner = vec![None::<usize>; n];
    let mut used = vec![false; m];
    fn rec(
        u: usize,
        n: usize,
        m: usize,
        full: usize,
        pairs_so_far: usize,
        perfect_only: bool,
        partner: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Matching>,
    ) {
        if u == n {
            if !perfect_only || pairs_so_far == full {
                out.push(Matching::from_man_partners(partner.clone(), m));
            }
            return;
        }
        // Leave this man unmatched; perfect-only output is filtered at the leaf.
        if !perfect_only || pairs_so_far + (n - u - 1) >= full {
            rec(u + 1, n, m, full, pairs_so_far, perfect_only, partner, used, out);
        }
        for w in 0..m {
            if !used[w] {
                used[w] = true;
                partner[u] = Some(w);
                rec(u + 1, n, m, full, pairs_so_far + 1, perfect_only, partner, used, out);
                partner[u] = None;
                used[w] = false;
            }
        }
    }
    rec(0, n, m, full, 0, perfect_only, &mut partner, &mut used, &mut out);
    if perfect_only {
        out.retain(|mm| mm.len() == full);
    }
    Ok(out)
}

/// Stable matchings by definition: every matching, filtered by the blocking
/// check.
pub fn brute_stable_matchings(inst: &Instance) -> Result<Vec<Matching>, OracleError> {
    Ok(enumerate_all_matchings(inst, false)?
        .into_iter()
        .filter(|m| is_stable(inst, m))
        .collect())
}

/// The object whose stability an exhaustive search is to destroy.
#[derive(Debug, Clone)]
pub enum OracleObject {
    /// The matching admits a blocking pair.
    Matching(Matching),
    /// The matching is blocked by at least (or exactly) `b` pairs.
    MatchingBlockingPairs { matching: Matching, b: usize, exactly: bool },
    /// The pair appears in no stable matching.
    Pair(Pair),
    /// The agent is assigned in no stable matching.
    Agent(AgentId),
    /// The specific pair blocks the matching (used to cross-check the
    /// blocking-pair proximity cost).
    PairBecomesBlocking { matching: Matching, pair: Pair },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Swap,
    Delete,
}

fn condition_holds(profile: &Instance, object: &OracleObject) -> Result<bool, OracleError> {
    Ok(match object {
        OracleObject::Matching(m) => !is_stable(profile, m),
        OracleObject::MatchingBlockingPairs { matching, b, exactly } => {
            let count = blocking_pairs(profile, matching).len();
            if *exactly {
                count == *b
            } else {
                count >= *b
            }
        }
        OracleObject::Pair(p) => {
            !brute_stable_matchings(profile)?.iter().any(|m| m.contains(*p))
        }
        OracleObject::Agent(a) => {
            !brute_stable_matchings(profile)?.iter().any(|m| m.is_assigned(*a))
        }
        OracleObject::PairBecomesBlocking { matching, pair } => {
            is_blocking(profile, matching, *pair)
        }
    })
}

fn condition_holds_after_deletion(
    inst: &Instance,
    victims: &BTreeSet<AgentId>,
    object: &OracleObject,
) -> Result<bool, OracleError> {
    let (reduced, remap) = delete_agents(inst, victims);
    Ok(match object {
        OracleObject::Matching(m) => !is_stable(&reduced, &m.restrict(&remap)),
        OracleObject::MatchingBlockingPairs { matching, b, exactly } => {
            let count = blocking_pairs(&reduced, &matching.restrict(&remap)).len();
            if *exactly {
                count == *b
            } else {
                count >= *b
            }
        }
        OracleObject::Pair(p) => {
            let p = Pair::new(
                remap.men_old_to_new[p.man].expect("pair endpoints are protected"),
                remap.women_old_to_new[p.woman].expect("pair endpoints are protected"),
            );
            !brute_stable_matchings(&reduced)?.iter().any(|m| m.contains(p))
        }
        OracleObject::Agent(a) => {
            let idx = match a.side {
                crate::model::Side::Man => remap.men_old_to_new[a.index],
                crate::model::Side::Woman => remap.women_old_to_new[a.index],
            }
            .expect("the designated agent is protected");
            let a = AgentId { side: a.side, index: idx };
            !brute_stable_matchings(&reduced)?.iter().any(|m| m.is_assigned(a))
        }
        OracleObject::PairBecomesBlocking { matching, pair } => {
            let (Some(u), Some(w)) =
                (remap.men_old_to_new[pair.man], remap.women_old_to_new[pair.woman])
            else {
                return Ok(false);
            };
            is_blocking(&reduced, &matching.restrict(&remap), Pair::new(u, w))
        }
    })
}

/// Agents a deletion solution may not touch.
fn protected_agents(object: &OracleObject) -> BTreeSet<AgentId> {
    match object {
        OracleObject::Pair(p) => {
            [AgentId::man(p.man), AgentId::woman(p.woman)].into_iter().collect()
        }
        OracleObject::Agent(a) => std::iter::once(*a).collect(),
        _ => BTreeSet::new(),
    }
}

/// Exhaustive minimum-budget search: the smallest `d <= max_budget` such that
/// some profile at swap distance exactly `d` (or some `d`-subset of deletable
/// agents) satisfies the destabilization condition. Every answer is
/// definition-checked by replaying the witness before it is returned.
pub fn exhaustive_worstcase(
    inst: &Instance,
    object: &OracleObject,
    mode: Mode,
    max_budget: u64,
    guard: u64,
) -> Result<WorstCaseResult, OracleError> {
    match mode {
        Mode::Swap => exhaustive_swap(inst, object, max_budget, guard),
        Mode::Delete => exhaustive_delete(inst, object, max_budget, guard),
    }
}

fn exhaustive_swap(
    inst: &Instance,
    object: &OracleObject,
    max_budget: u64,
    guard: u64,
) -> Result<WorstCaseResult, OracleError> {
    let mut visited: u128 = 0;
    for d in 0..=max_budget {
        let mut found: Option<Instance> = None;
        let mut inner_err = None;
        let count = for_each_profile_at_distance(inst, d, guard.saturating_sub(visited as u64), |p| {
            if found.is_none() && inner_err.is_none() {
                match condition_holds(p, object) {
                    Ok(true) => found = Some(p.clone()),
                    Ok(false) => {}
                    Err(e) => inner_err = Some(e),
                }
            }
        })?;
        if let Some(e) = inner_err {
            return Err(e);
        }
        visited += count;
        if let Some(profile) = found {
            let mut ops: Vec<SwapOp> = Vec::new();
            for a in inst.agents() {
                ops.extend(swaps_between(a, inst.pref_list(a), profile.pref_list(a)));
            }
            debug_assert_eq!(ops.len() as u64, d);
            // Witness replay against the definition.
            let replay = crate::worstcase::apply_swaps(inst, &ops);
            assert!(condition_holds(&replay, object)?, "oracle witness failed replay");
            return Ok(WorstCaseResult { budget: Some(d), witness: Some(Witness::Swaps(ops)) });
        }
    }
    Ok(WorstCaseResult::impossible())
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn exhaustive_delete(
    inst: &Instance,
    object: &OracleObject,
    max_budget: u64,
    guard: u64,
) -> Result<WorstCaseResult, OracleError> {
    let protected = protected_agents(object);
    let eligible: Vec<AgentId> = inst.agents().filter(|a| !protected.contains(a)).collect();
    let total: u128 = (0..=max_budget.min(eligible.len() as u64))
        .map(|d| binomial_u128(eligible.len(), d as usize))
        .sum();
    if total > guard as u128 {
        return Err(OracleError::GuardExceeded { needed: total, guard });
    }
    for d in 0..=max_budget.min(eligible.len() as u64) {
        for combo in eligible.iter().copied().combinations(d as usize) {
            let victims: BTreeSet<AgentId> = combo.into_iter().collect();
            if condition_holds_after_deletion(inst, &victims, object)? {
                // Replay check.
                assert!(condition_holds_after_deletion(inst, &victims, object)?);
                return Ok(WorstCaseResult {
                    budget: Some(d),
                    witness: Some(Witness::Deletions(victims)),
                });
            }
        }
    }
    Ok(WorstCaseResult::impossible())
}
