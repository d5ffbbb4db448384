//! Robustness measures for stable matchings.
//!
//! The crate quantifies how robust stable matchings, stable pairs, and stable
//! agents are when preferences are perturbed, either adversarially (worst-case
//! swap/deletion budgets) or at random (stability probabilities under uniform
//! perturbations at a fixed swap distance, or under Mallows noise).
//!
//! Module map:
//! - [`model`]: instances, matchings, blocking pairs, file formats.
//! - [`stability`]: Gale–Shapley, the rotation poset, enumeration of stable
//!   matchings, stable pairs/agents, and rank-optimized stable matchings.
//! - [`worstcase`]: exact polynomial worst-case robustness of matchings.
//! - [`counting`]: exact counts of profiles at a swap distance, counts of
//!   profiles where a pair blocks, uniform samplers over both sets, the
//!   deterministic upper bound, the FPRAS, and the Hoeffding estimator.
//! - [`mallows`]: the normalized Mallows noise model.
//! - [`measures`]: stability-probability curves, 50%-thresholds, blocking-pair
//!   proximity, blocking scores, and pair statistics.
//! - [`cultures`]: synthetic instance generators.
//! - [`oracle`]: brute-force reference solvers used as test oracles and as the
//!   only exact solvers for the NP-hard problem variants at small scale.

pub mod counting;
pub mod cultures;
pub mod mallows;
pub mod measures;
pub mod model;
pub mod oracle;
pub mod stability;
pub mod worstcase;

pub use model::{AgentId, Instance, Matching, Pair, Side};
