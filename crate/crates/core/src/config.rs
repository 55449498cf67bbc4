use serde::{Deserialize, Serialize};

/// Integer matrix-multiplication kernel behind every fast product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    #[default]
    Schoolbook,
    Strassen,
}

/// Single-source shortest path variant used for hitting-set searches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sssp {
    #[default]
    Heap,
    Dense,
}

pub const DEFAULT_OMEGA: f64 = 2.376;
pub const DEFAULT_STRASSEN_CUTOFF: usize = 64;

/// Knobs shared by the algorithms. None of them affects correctness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub omega: f64,
    pub kernel: Kernel,
    /// Strassen recursion falls back to schoolbook below this side length.
    pub strassen_cutoff: usize,
    pub sssp: Sssp,
    pub force_beta: Option<f64>,
    pub force_levels: Option<usize>,
    /// Check general-mode reports against the oracle and retry on mismatch.
    pub verify: bool,
    pub max_attempts: usize,
    /// Largest n for which the verify mode consults the oracle.
    pub verify_limit: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            omega: DEFAULT_OMEGA,
            kernel: Kernel::Schoolbook,
            strassen_cutoff: DEFAULT_STRASSEN_CUTOFF,
            sssp: Sssp::Heap,
            force_beta: None,
            force_levels: None,
            verify: false,
            max_attempts: 8,
            verify_limit: 64,
        }
    }
}

impl Config {
    pub fn with_kernel(mut self, kernel: Kernel) -> Self {
        self.kernel = kernel;
        self
    }

    pub fn with_verify(mut self, verify: bool) -> Self {
        self.verify = verify;
        self
    }
}
