//! Machine-readable run reports. All numeric payloads are integers or
//! exact `p/q` strings; field ordering is fixed by struct order so the
//! serialized output is byte-deterministic for a given input and version.

use serde::Serialize;

use crate::oracle::CyVerdict;
use crate::orbit::OrbitRelation;

pub const SCHEMA_VERSION: &str = "mesharc/1";

#[derive(Serialize)]
pub struct BuildReport {
    pub schema: &'static str,
    pub input: String,
    pub characteristic: u64,
    pub vertices: usize,
    pub arrows: usize,
    pub dimension: usize,
    pub loewy_length: usize,
    pub cartan_matrix: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dot_path: Option<String>,
}

#[derive(Serialize)]
pub struct OracleReport {
    pub schema: &'static str,
    pub input: String,
    pub verdict: CyVerdict,
}

#[derive(Serialize)]
pub struct ArrowImage {
    pub arrow: String,
    pub image: String,
}

#[derive(Serialize)]
pub struct ResolveReport {
    pub schema: &'static str,
    pub input: String,
    pub characteristic: u64,
    pub dimension: usize,
    pub p0_summands: usize,
    pub p1_summands: usize,
    pub p2_summands: usize,
    pub nakayama_permutation: Vec<usize>,
    pub twist_vertex_permutation: Vec<usize>,
    pub twist_arrow_images: Vec<ArrowImage>,
    /// Minimal d with the 3d-th cosyzygy isomorphic to the dual bimodule,
    /// reported at the bimodule level (tag: direct-computation).
    pub minimal_d: Option<usize>,
    pub d_max: usize,
    pub provenance: &'static str,
    pub witness_available: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inconclusive_at: Option<usize>,
}

#[derive(Serialize)]
pub struct CoverReport {
    pub schema: &'static str,
    pub input: String,
    pub characteristic: u64,
    pub modulus: u64,
    pub base_dimension: usize,
    pub smash_dimension: usize,
    pub quotient_isomorphic: bool,
    pub dual_lift_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nakayama_shift: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simple_syzygy_shifts: Option<Vec<(usize, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega6_shift: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mixed_xi_degrees: Option<Vec<u64>>,
}

#[derive(Serialize)]
pub struct OrbitReport {
    pub schema: &'static str,
    pub input: String,
    pub characteristic: u64,
    pub lattice: (i64, i64),
    pub relations: Vec<OrbitRelation>,
    pub cy_d: Option<u64>,
    pub sigma_period: Option<u64>,
    /// Minimality holds relative to the certified relation set.
    pub upper_bound_certified: bool,
}

#[derive(Serialize)]
pub struct CrosscheckRow {
    pub family: String,
    pub rank: usize,
    pub m: u64,
    pub characteristic: u64,
    pub predicted: String,
    pub computed: String,
    pub matches: bool,
    pub inconclusive: bool,
}

#[derive(Serialize)]
pub struct CrosscheckReport {
    pub schema: &'static str,
    pub rows: Vec<CrosscheckRow>,
    pub mismatches: usize,
    pub inconclusive: usize,
}
