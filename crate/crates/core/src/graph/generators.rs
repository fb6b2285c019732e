use rand::Rng;

use super::{Graph, GraphError, NodeId};
use crate::rng::rng_from_seed;

/// Samples G(n, p): every unordered pair is an edge independently with
/// probability `p`. Pairs are visited in lexicographic order, one uniform draw
/// each, so the output is a pure function of `(n, p, seed)`.
pub fn generate_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = rng_from_seed(seed);
    Ok(Graph::from_adjacency(erdos_renyi_adjacency(n, p, &mut rng)?))
}

fn erdos_renyi_adjacency<R: Rng>(
    n: usize,
    p: f64,
    rng: &mut R,
) -> Result<Vec<Vec<NodeId>>, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut adjacency = vec![Vec::new(); n];
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    Ok(adjacency)
}

/// Preferential attachment with `m` edges per arriving node.
///
/// The seed graph is a star on nodes `0..=m` whose hub is node `m` (i.e. node
/// `m` arrives first and links to all `m` initial nodes). Each later node
/// picks `m` distinct targets with probability proportional to their current
/// degree, by sampling the edge-endpoint pool and rejecting repeats.
pub fn generate_barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    if m < 1 || m >= n {
        return Err(GraphError::InvalidParameter(format!(
            "Barabási–Albert needs 1 <= m < n, got m = {m}, n = {n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    // Each edge contributes both endpoints, so sampling uniformly from the
    // pool is degree-proportional.
    let mut pool: Vec<NodeId> = Vec::with_capacity(2 * m * n);
    for leaf in 0..m {
        adjacency[m].push(leaf);
        adjacency[leaf].push(m);
        pool.push(m);
        pool.push(leaf);
    }

    let mut chosen = vec![false; n];
    let mut targets = Vec::with_capacity(m);
    for v in (m + 1)..n {
        targets.clear();
        while targets.len() < m {
            let t = pool[rng.random_range(0..pool.len())];
            if !chosen[t] {
                chosen[t] = true;
                targets.push(t);
            }
        }
        for &t in &targets {
            chosen[t] = false;
            adjacency[v].push(t);
            adjacency[t].push(v);
            pool.push(v);
            pool.push(t);
        }
    }
    Ok(Graph::from_adjacency(adjacency))
}

/// G(n, p) plus `aux_count` auxiliary nodes `n..n+aux_count`; every original
/// node is linked to exactly one auxiliary node chosen uniformly at random.
pub fn generate_er_with_auxiliary(
    n: usize,
    p: f64,
    aux_count: usize,
    seed: u64,
) -> Result<Graph, GraphError> {
    if aux_count == 0 {
        return Err(GraphError::InvalidParameter(
            "auxiliary node count must be at least 1".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let mut adjacency = erdos_renyi_adjacency(n, p, &mut rng)?;
    adjacency.resize(n + aux_count, Vec::new());
    for u in 0..n {
        let aux = n + rng.random_range(0..aux_count);
        adjacency[u].push(aux);
        adjacency[aux].push(u);
    }
    Ok(Graph::from_adjacency(adjacency))
}
