//! Local friendship paradox, sharing bias, weighted local paradox and
//! feedback disparity.
//!
//! Quantities that have no value for a node (isolated node, no sharing
//! neighbor, node not sharing) are reported as [`Undefined`] rather than as
//! zero or NaN. Neighbor lists are visited in ascending order with
//! compensated summation, so every value is bit-reproducible.

use std::ops::Deref;

use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::numeric::NeumaierSum;

/// Reason a per-node quantity has no value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Undefined {
    #[error("node has no neighbors")]
    IsolatedNode,
    #[error("no neighbor is sharing")]
    NoSharingNeighbor,
    #[error("node is not sharing")]
    NotSharing,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RateError {
    #[error("rate for node {node} is {value}; rates must be finite and non-negative")]
    Invalid { node: NodeId, value: f64 },
}

/// Per-node sharing rates (posts per step). Finite and non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct RateVector(Vec<f64>);

impl RateVector {
    pub fn new(rates: Vec<f64>) -> Result<Self, RateError> {
        if let Some((node, &value)) = rates
            .iter()
            .enumerate()
            .find(|(_, r)| !(r.is_finite() && **r >= 0.0))
        {
            return Err(RateError::Invalid { node, value });
        }
        Ok(Self(rates))
    }

    pub fn uniform(n: usize, rate: f64) -> Self {
        Self::new(vec![rate; n]).expect("uniform rate must be finite and non-negative")
    }

    pub(crate) fn from_vec_unchecked(rates: Vec<f64>) -> Self {
        debug_assert!(rates.iter().all(|r| r.is_finite() && *r >= 0.0));
        Self(rates)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for RateVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Constant feedback per friend per post.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngagementModel {
    feedback_per_friend: f64,
}

impl EngagementModel {
    pub fn constant(feedback_per_friend: f64) -> Option<Self> {
        (feedback_per_friend.is_finite() && feedback_per_friend > 0.0)
            .then_some(Self { feedback_per_friend })
    }

    pub fn feedback_per_friend(&self) -> f64 {
        self.feedback_per_friend
    }
}

impl Default for EngagementModel {
    fn default() -> Self {
        Self { feedback_per_friend: 1.0 }
    }
}

/// Local paradox and average friend degree for every node.
#[derive(Debug, Clone, PartialEq)]
pub struct ParadoxProfile {
    pub avg_friend_degree: Vec<Option<f64>>,
    pub local_paradox: Vec<Option<f64>>,
}

impl ParadoxProfile {
    pub fn is_defined(&self, u: NodeId) -> bool {
        self.local_paradox[u].is_some()
    }

    /// `(node, lp)` for every node with a defined local paradox.
    pub fn defined(&self) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.local_paradox
            .iter()
            .enumerate()
            .filter_map(|(u, lp)| lp.map(|v| (u, v)))
    }
}

/// Rate-weighted neighbor sums for one node at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborSums {
    /// Σ_v A_uv r_v
    pub rate: f64,
    /// Σ_v A_uv r_v d_v
    pub rate_degree: f64,
    /// Number of neighbors with r_v > 0.
    pub sharing: usize,
}

impl NeighborSums {
    pub fn compute(g: &Graph, rates: &[f64], u: NodeId) -> Self {
        let mut rate = NeumaierSum::new();
        let mut rate_degree = NeumaierSum::new();
        let mut sharing = 0;
        for &v in g.neighbors(u) {
            let r = rates[v];
            if r > 0.0 {
                sharing += 1;
                rate.add(r);
                rate_degree.add(r * g.degree(v) as f64);
            }
        }
        Self { rate: rate.value(), rate_degree: rate_degree.value(), sharing }
    }

    /// Rate-weighted mean neighbor degree, if any neighbor shares.
    #[inline]
    pub fn weighted_mean_degree(&self) -> Option<f64> {
        (self.sharing > 0).then(|| self.rate_degree / self.rate)
    }

    /// Weighted local paradox for a node of degree `degree`.
    #[inline]
    pub fn weighted_local_paradox(&self, degree: usize) -> Option<f64> {
        self.weighted_mean_degree().map(|m| m / degree as f64)
    }
}

/// Weighted local paradox and sharing-neighbor count of every node for one
/// rate snapshot. This is the single pass the engine and the metrics share.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborField {
    /// Weighted local paradox; `None` for isolated nodes and nodes without a
    /// sharing neighbor.
    pub wlp: Vec<Option<f64>>,
    /// Number of neighbors with a positive rate.
    pub sharing: Vec<usize>,
}

impl NeighborField {
    pub fn compute(g: &Graph, rates: &[f64]) -> Self {
        let (wlp, sharing) = g
            .nodes()
            .map(|u| {
                let sums = NeighborSums::compute(g, rates, u);
                (sums.weighted_local_paradox(g.degree(u)), sums.sharing)
            })
            .unzip();
        Self { wlp, sharing }
    }

    /// Feedback disparity of `u`: its weighted local paradox, defined only
    /// while `u` itself shares.
    #[inline]
    pub fn disparity(&self, rates: &[f64], u: NodeId) -> Option<f64> {
        if rates[u] > 0.0 {
            self.wlp[u]
        } else {
            None
        }
    }
}

fn neighbor_degree_sum(g: &Graph, u: NodeId) -> f64 {
    g.neighbors(u)
        .iter()
        .map(|&v| g.degree(v) as f64)
        .collect::<NeumaierSum>()
        .value()
}

/// Mean degree of `u`'s neighbors.
pub fn avg_friend_degree(g: &Graph, u: NodeId) -> Result<f64, Undefined> {
    let d = g.degree(u);
    if d == 0 {
        return Err(Undefined::IsolatedNode);
    }
    Ok(neighbor_degree_sum(g, u) / d as f64)
}

/// Average friend degree divided by own degree, for every node.
pub fn local_paradox(g: &Graph) -> ParadoxProfile {
    let avg_friend_degree: Vec<Option<f64>> =
        g.nodes().map(|u| avg_friend_degree(g, u).ok()).collect();
    let local_paradox = avg_friend_degree
        .iter()
        .enumerate()
        .map(|(u, afd)| afd.map(|a| a / g.degree(u) as f64))
        .collect();
    ParadoxProfile { avg_friend_degree, local_paradox }
}

fn sharing_sums(g: &Graph, r: &RateVector, u: NodeId) -> Result<NeighborSums, Undefined> {
    if g.degree(u) == 0 {
        return Err(Undefined::IsolatedNode);
    }
    let sums = NeighborSums::compute(g, r, u);
    if sums.sharing == 0 {
        return Err(Undefined::NoSharingNeighbor);
    }
    Ok(sums)
}

/// Rate-weighted mean neighbor degree over the unweighted mean neighbor degree.
pub fn sharing_bias(g: &Graph, r: &RateVector, u: NodeId) -> Result<f64, Undefined> {
    let sums = sharing_sums(g, r, u)?;
    let weighted = sums.rate_degree / sums.rate;
    Ok(weighted / avg_friend_degree(g, u)?)
}

/// Rate-weighted mean neighbor degree over `u`'s own degree.
pub fn weighted_local_paradox(g: &Graph, r: &RateVector, u: NodeId) -> Result<f64, Undefined> {
    let sums = sharing_sums(g, r, u)?;
    Ok(sums.rate_degree / sums.rate / g.degree(u) as f64)
}

/// Average feedback per post that `u` sees its sharing friends receive.
pub fn neighbor_feedback(
    g: &Graph,
    r: &RateVector,
    e: EngagementModel,
    u: NodeId,
) -> Result<f64, Undefined> {
    if g.degree(u) == 0 {
        return Err(Undefined::IsolatedNode);
    }
    let k = e.feedback_per_friend();
    let mut weight = NeumaierSum::new();
    let mut feedback = NeumaierSum::new();
    for &v in g.neighbors(u) {
        let rv = r[v];
        if rv > 0.0 {
            weight.add(rv);
            feedback.add(rv * k * g.degree(v) as f64);
        }
    }
    if weight.value() == 0.0 {
        return Err(Undefined::NoSharingNeighbor);
    }
    Ok(feedback.value() / weight.value())
}

/// Ratio of neighbor feedback to the feedback `u` itself receives per post.
///
/// With constant engagement both sides carry the same factor K, so it is
/// cancelled before dividing and the result is bit-identical for every K.
/// The engagement model is taken for symmetry with [`neighbor_feedback`].
pub fn feedback_disparity(
    g: &Graph,
    r: &RateVector,
    _engagement: EngagementModel,
    u: NodeId,
) -> Result<f64, Undefined> {
    if r[u] <= 0.0 {
        return Err(Undefined::NotSharing);
    }
    let sums = sharing_sums(g, r, u)?;
    Ok(sums.rate_degree / sums.rate / g.degree(u) as f64)
}
