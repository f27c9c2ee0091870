//! Report schema shared by the JSON and CSV output modes.
//!
//! JSON shape:
//!
//! ```json
//! {
//!   "command": "primal",
//!   "model": { "vertices": 9, "edges": 18, "topology": "grid:3x3:periodic" },
//!   "tree": { "branch_ids": [...], "chord_ids": [...] },
//!   "result": {
//!     "log_Z": 13.8,
//!     "log_Z_linear": 984018.3,
//!     "std_error_log": 0.003,
//!     "chi_square": 0.9,
//!     "samples": 100000,
//!     "seed": 7,
//!     "wall_time_seconds": 0.02
//!   }
//! }
//! ```
//!
//! `compare` nests two such results under `result.primal` and `result.dual`.
//! CSV mode flattens the same fields, one row per estimate (`compare:primal`
//! and `compare:dual` rows for the compare command); absent fields are empty
//! cells. Everything except `wall_time_seconds` is byte-stable for a fixed
//! command line.

use serde::Serialize;
use treeising::TreePartition;

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub model: ModelInfo,
    pub tree: TreeInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_tree: Option<TreeInfo>,
    pub result: ReportResult,
}

#[derive(Serialize)]
pub struct ModelInfo {
    pub vertices: usize,
    pub edges: usize,
    pub topology: String,
}

#[derive(Serialize, Clone)]
pub struct TreeInfo {
    pub branch_ids: Vec<usize>,
    pub chord_ids: Vec<usize>,
}

impl TreeInfo {
    pub fn from_partition(partition: &TreePartition) -> Self {
        Self {
            branch_ids: partition.branch_ids().to_vec(),
            chord_ids: partition.chord_ids().to_vec(),
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum ReportResult {
    Single(EstimateResult),
    Compare {
        primal: EstimateResult,
        dual: EstimateResult,
    },
}

#[derive(Serialize)]
pub struct EstimateResult {
    #[serde(rename = "log_Z")]
    pub log_z: f64,
    #[serde(rename = "log_Z_linear", skip_serializing_if = "Option::is_none")]
    pub log_z_linear: Option<f64>,
    #[serde(rename = "log_Z_M", skip_serializing_if = "Option::is_none")]
    pub log_z_m: Option<f64>,
    #[serde(rename = "log_Z_d", skip_serializing_if = "Option::is_none")]
    pub log_z_d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error_log: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_square: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub wall_time_seconds: f64,
}

pub const CSV_HEADER: &str = "command,topology,vertices,edges,branch_ids,chord_ids,log_Z,\
log_Z_linear,log_Z_M,log_Z_d,std_error_log,chi_square,samples,seed,wall_time_seconds";

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        match &self.result {
            ReportResult::Single(result) => {
                out.push_str(&self.csv_row(&self.command, &self.tree, result));
            }
            ReportResult::Compare { primal, dual } => {
                let label = format!("{}:primal", self.command);
                out.push_str(&self.csv_row(&label, &self.tree, primal));
                let label = format!("{}:dual", self.command);
                let tree = self.dual_tree.as_ref().unwrap_or(&self.tree);
                out.push_str(&self.csv_row(&label, tree, dual));
            }
        }
        out
    }

    fn csv_row(&self, command: &str, tree: &TreeInfo, result: &EstimateResult) -> String {
        let ids = |ids: &[usize]| {
            ids.iter()
                .map(|id| id.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let opt_f = |v: &Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let opt_u = |v: &Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            command,
            self.model.topology,
            self.model.vertices,
            self.model.edges,
            ids(&tree.branch_ids),
            ids(&tree.chord_ids),
            result.log_z,
            opt_f(&result.log_z_linear),
            opt_f(&result.log_z_m),
            opt_f(&result.log_z_d),
            opt_f(&result.std_error_log),
            opt_f(&result.chi_square),
            opt_u(&result.samples),
            opt_u(&result.seed),
            result.wall_time_seconds,
        )
    }

    /// Name of the first NaN numeric field, if any; used for the numeric
    /// failure exit path.
    pub fn first_nan_field(&self) -> Option<&'static str> {
        let check = |result: &EstimateResult| {
            if result.log_z.is_nan() {
                return Some("log_Z");
            }
            for (value, name) in [
                (result.log_z_m, "log_Z_M"),
                (result.log_z_d, "log_Z_d"),
                (result.std_error_log, "std_error_log"),
                (result.chi_square, "chi_square"),
            ] {
                if value.is_some_and(f64::is_nan) {
                    return Some(name);
                }
            }
            None
        };
        match &self.result {
            ReportResult::Single(result) => check(result),
            ReportResult::Compare { primal, dual } => check(primal).or_else(|| check(dual)),
        }
    }
}
