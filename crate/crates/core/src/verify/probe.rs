use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::planar::local_connectivity;
use crate::universal::{FaceId, GAddress, Root, Side, SliceRef, Truncation, UniversalError, DEFAULT_VERTEX_CAP};

use super::VerifyError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub depth: usize,
    pub vertices: usize,
    /// Minimum vertex cut of each sampled pair, in sampling order.
    pub cuts: Vec<usize>,
    pub min_cut: usize,
    /// Whether every sampled cut reached `n + 3`.
    pub sufficient: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub n: usize,
    pub seed: u64,
    pub face: FaceId,
    pub pairs: Vec<(String, String)>,
    pub depths: Vec<DepthReport>,
    /// Whether no pair's cut ever drops from one depth to the next.
    pub monotone: bool,
}

impl ProbeReport {
    /// The first depth from which every sampled cut is at least `n + 3`.
    pub fn sufficient_from(&self) -> Option<usize> {
        let last_bad = self.depths.iter().rposition(|d| !d.sufficient);
        match last_bad {
            None => self.depths.first().map(|d| d.depth),
            Some(i) => self.depths.get(i + 1).map(|d| d.depth),
        }
    }
}

/// Samples `trials` pairs of non-adjacent vertices of level at most `n + 1`
/// in a random level-`n` slice and measures their local connectivity in the
/// slice materialized to depths `1..=depth`.
pub fn slice_connectivity_probe(n: usize, depth: usize, trials: usize, seed: u64) -> Result<ProbeReport, VerifyError> {
    if depth == 0 {
        return Err(UniversalError::ZeroDepth.into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut face = FaceId::root(if rng.gen() { Root::A } else { Root::B });
    for _ in 0..n {
        let c = rng.gen_range(0..face.boundary_len());
        face = face.child(c);
    }
    let mut t = Truncation::with_cap(DEFAULT_VERTEX_CAP);
    let slice = |d| SliceRef {
        face: face.clone(),
        diameter: None,
        side: Side::Forward,
        depth: d,
    };

    let first = t.slice_subgraph(&slice(1))?;
    let candidates: Vec<usize> = (0..first.addresses.len())
        .filter(|&i| first.addresses[i].level() <= n + 1)
        .collect();
    let mut pairs: Vec<(GAddress, GAddress)> = Vec::new();
    while pairs.len() < trials {
        let a = candidates[rng.gen_range(0..candidates.len())];
        let b = candidates[rng.gen_range(0..candidates.len())];
        if a != b && !first.graph.has_edge(a, b) {
            pairs.push((first.addresses[a].clone(), first.addresses[b].clone()));
        }
    }

    let mut depths: Vec<DepthReport> = Vec::new();
    for d in 1..=depth {
        let view = t.slice_subgraph(&slice(d))?;
        let index: std::collections::HashMap<&GAddress, usize> =
            view.addresses.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let adj: Vec<Vec<usize>> = (0..view.graph.vertex_count()).map(|v| view.graph.neighbors(v).to_vec()).collect();
        let cuts: Vec<usize> = pairs
            .iter()
            .map(|(a, b)| local_connectivity(&adj, index[a], index[b]).map_or(0, |(k, _)| k))
            .collect();
        let min_cut = cuts.iter().copied().min().unwrap_or(0);
        depths.push(DepthReport {
            depth: d,
            vertices: view.addresses.len(),
            min_cut,
            sufficient: cuts.iter().all(|&c| c >= n + 3),
            cuts,
        });
    }
    let monotone = depths
        .windows(2)
        .all(|w| w[0].cuts.iter().zip(&w[1].cuts).all(|(a, b)| a <= b));
    Ok(ProbeReport {
        n,
        seed,
        face,
        pairs: pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        depths,
        monotone,
    })
}
