//! Problem files and run manifests.

use std::path::Path;

use serde::{Deserialize, Serialize};

use jcd_core::{ChannelF64, CostSpecF64, ProblemF64};

/// On-disk description of one channel problem. Matrices are row-major:
/// one row per input symbol. Alphabet labels are carried for
/// readability; computation uses index alphabets.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub input_alphabet: Vec<String>,
    pub output_alphabet_z: Vec<String>,
    pub output_alphabet_y: Vec<String>,
    /// Communication channel, |input| x |z|.
    pub comm: Vec<Vec<f64>>,
    /// Null-hypothesis sensing channel, |input| x |y|.
    pub w: Vec<Vec<f64>>,
    /// Alternative-hypothesis sensing channel, |input| x |y|.
    pub v: Vec<Vec<f64>>,
    /// Per-input costs, length |input|.
    pub cost: Vec<f64>,
    /// Average cost budget.
    pub budget: f64,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text)
            .map_err(|e| format!("{}: {e}", path.display()))
    }

    fn check_matrix(&self, name: &str, m: &[Vec<f64>], out_len: usize) -> Result<(), String> {
        if m.len() != self.input_alphabet.len() {
            return Err(format!(
                "field '{name}': {} rows, expected one per input symbol ({})",
                m.len(),
                self.input_alphabet.len()
            ));
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != out_len {
                return Err(format!(
                    "field '{name}', row {i}: {} entries, expected {out_len}",
                    row.len()
                ));
            }
        }
        Ok(())
    }

    /// Validate and convert into a core problem.
    pub fn to_problem(&self) -> Result<ProblemF64, String> {
        self.check_matrix("comm", &self.comm, self.output_alphabet_z.len())?;
        self.check_matrix("w", &self.w, self.output_alphabet_y.len())?;
        self.check_matrix("v", &self.v, self.output_alphabet_y.len())?;
        if self.cost.len() != self.input_alphabet.len() {
            return Err(format!(
                "field 'cost': {} entries, expected one per input symbol ({})",
                self.cost.len(),
                self.input_alphabet.len()
            ));
        }
        let comm = ChannelF64::new(self.comm.clone()).map_err(|e| format!("field 'comm': {e}"))?;
        let w = ChannelF64::new(self.w.clone()).map_err(|e| format!("field 'w': {e}"))?;
        let v = ChannelF64::new(self.v.clone()).map_err(|e| format!("field 'v': {e}"))?;
        let cost = CostSpecF64::new(self.cost.clone(), self.budget)
            .map_err(|e| format!("field 'cost'/'budget': {e}"))?;
        ProblemF64::new(comm, w, v, cost).map_err(|e| e.to_string())
    }

    /// Stable content hash of the parsed problem (FNV-1a over the
    /// canonical serialization), prefixed with the algorithm name.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("problem file serializes");
        let mut h: u64 = 0xcbf29ce484222325;
        for b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("fnv1a64:{h:016x}")
    }
}

/// Everything needed to rerun a command and obtain byte-identical data
/// artifacts (given the same tool version). The timestamp records when
/// the run happened and is the one field that differs between reruns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub problem_hash: String,
    pub timestamp_unix: u64,
}

impl RunManifest {
    pub fn new(
        command: &str,
        parameters: serde_json::Value,
        seed: Option<u64>,
        problem_hash: String,
    ) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            problem_hash,
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}
