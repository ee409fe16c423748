//! Serialized report shapes. Field order here is the field order on disk.

use indexmap::IndexMap;
use serde::Serialize;

use satotate::equidist::ETBoundReport;
use satotate::BigRational;

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub p: u64,
    pub family: String,
    pub doubled: bool,
    pub v_p: usize,
    pub tilde_v: usize,
    pub skipped: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub exp_sums: ExpSumsOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_cos_sums: Option<Vec<[String; 2]>>,
    pub measures: Vec<MeasureOut>,
    pub et_satisfied: bool,
    /// Extreme Sato–Tate discrepancy over `Ṽ/log Ṽ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_over_v_log_v: Option<f64>,
    /// Extreme Sato–Tate discrepancy over `Ṽ^{3/4}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_over_v_3_4: Option<f64>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub one_param: Option<OneParamOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpSumsOut {
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureOut {
    pub measure: String,
    pub sup_norm: f64,
    pub star: f64,
    pub extreme: f64,
    /// Bound with `|I| = 1` against the extreme discrepancy.
    pub et_extreme: ETBoundReport,
    pub intervals: Vec<IntervalOut>,
    pub et_satisfied: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalOut {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub expected: f64,
    pub discrepancy: f64,
    pub et_bound: f64,
    pub et_satisfied: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OneParamOut {
    pub c_delta: usize,
    pub sym: Vec<SymOut>,
    pub a1: String,
    pub a2: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2_closed_form_match: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymOut {
    pub k: u32,
    pub raw_sum: f64,
    pub normalized: f64,
}

/// One row of the family CSV summary.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyRow {
    pub p: u64,
    pub v_p: usize,
    pub tilde_v: usize,
    pub skipped: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub star_sato_tate: f64,
    pub extreme_sato_tate: f64,
    pub star_serre: f64,
    pub extreme_serre: f64,
    pub et_satisfied: bool,
}

impl From<&FamilyReport> for FamilyRow {
    fn from(r: &FamilyReport) -> Self {
        FamilyRow {
            p: r.p,
            v_p: r.v_p,
            tilde_v: r.tilde_v,
            skipped: r.skipped,
            m: r.m,
            star_sato_tate: r.measures[0].star,
            extreme_sato_tate: r.measures[0].extreme,
            star_serre: r.measures[1].star,
            extreme_serre: r.measures[1].extreme,
            et_satisfied: r.et_satisfied,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentOut {
    pub p: u64,
    #[serde(rename = "R")]
    pub r: u32,
    pub restricted: bool,
    pub empirical: String,
    pub formula: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitiesReport {
    pub lemma_sum: IndexMap<String, String>,
    pub catalan_orthogonality: IndexMap<String, String>,
    pub checks: Vec<CheckOut>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOut {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Largest absolute error for floating-point checks.
    pub max_error: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

pub fn rational_pair(q: &BigRational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}
