use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::{
    florentine_families, generate_barabasi_albert, generate_er_with_auxiliary,
    generate_erdos_renyi, read_edge_list, Graph, GraphError,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "path")]
pub enum NetworkFamily {
    ErdosRenyi,
    BarabasiAlbert,
    ErdosRenyiWithAuxiliary,
    Florentine,
    EdgeListFile(PathBuf),
}

/// Everything needed to (re)build one network.
///
/// For the random families `target_avg_degree` sets the density: G(n, p) uses
/// `p = target_avg_degree / (n - 1)` and preferential attachment uses
/// `m = round(target_avg_degree / 2)`. The auxiliary family applies `p` to the
/// `n` base nodes and then appends `aux_count` hubs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub family: NetworkFamily,
    pub n: usize,
    pub target_avg_degree: f64,
    pub seed: u64,
    pub aux_count: usize,
}

impl GraphSpec {
    pub fn erdos_renyi(n: usize, target_avg_degree: f64, seed: u64) -> Self {
        Self { family: NetworkFamily::ErdosRenyi, n, target_avg_degree, seed, aux_count: 0 }
    }

    pub fn barabasi_albert(n: usize, target_avg_degree: f64, seed: u64) -> Self {
        Self { family: NetworkFamily::BarabasiAlbert, n, target_avg_degree, seed, aux_count: 0 }
    }

    pub fn er_with_auxiliary(n: usize, target_avg_degree: f64, aux_count: usize, seed: u64) -> Self {
        Self {
            family: NetworkFamily::ErdosRenyiWithAuxiliary,
            n,
            target_avg_degree,
            seed,
            aux_count,
        }
    }

    pub fn florentine() -> Self {
        Self { family: NetworkFamily::Florentine, n: 15, target_avg_degree: 0.0, seed: 0, aux_count: 0 }
    }

    pub fn edge_list_file(path: impl Into<PathBuf>) -> Self {
        Self {
            family: NetworkFamily::EdgeListFile(path.into()),
            n: 0,
            target_avg_degree: 0.0,
            seed: 0,
            aux_count: 0,
        }
    }

    /// Same spec with a different seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    /// Edge probability used by the G(n, p) based families.
    pub fn edge_probability(&self) -> f64 {
        self.target_avg_degree / (self.n as f64 - 1.0)
    }

    /// Attachment count used by the preferential attachment family.
    pub fn attachment_count(&self) -> usize {
        ((self.target_avg_degree / 2.0).round() as usize).max(1)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        match self.family {
            NetworkFamily::ErdosRenyi
            | NetworkFamily::BarabasiAlbert
            | NetworkFamily::ErdosRenyiWithAuxiliary => {
                let upper = self.n as f64 - 1.0;
                if !(self.target_avg_degree > 0.0 && self.target_avg_degree < upper) {
                    return Err(GraphError::InvalidParameter(format!(
                        "average degree {} must lie in (0, {upper}) for n = {}",
                        self.target_avg_degree, self.n
                    )));
                }
                if self.family == NetworkFamily::ErdosRenyiWithAuxiliary && self.aux_count == 0 {
                    return Err(GraphError::InvalidParameter(
                        "auxiliary node count must be at least 1".into(),
                    ));
                }
                Ok(())
            }
            NetworkFamily::Florentine | NetworkFamily::EdgeListFile(_) => Ok(()),
        }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        self.validate()?;
        match &self.family {
            NetworkFamily::ErdosRenyi => {
                generate_erdos_renyi(self.n, self.edge_probability(), self.seed)
            }
            NetworkFamily::BarabasiAlbert => {
                generate_barabasi_albert(self.n, self.attachment_count(), self.seed)
            }
            NetworkFamily::ErdosRenyiWithAuxiliary => generate_er_with_auxiliary(
                self.n,
                self.edge_probability(),
                self.aux_count,
                self.seed,
            ),
            NetworkFamily::Florentine => Ok(florentine_families()),
            NetworkFamily::EdgeListFile(path) => read_edge_list(path),
        }
    }
}
