//! Self-contained JSON certificates for verdicts and search outcomes.
//!
//! A certificate carrying a coloring also parses as a coloring spec, so it
//! can be fed straight back to the verifier.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::abelian::GroupElement;
use crate::coloring::{ColoringSpec, CountingVector, LinearColoring};
use crate::error::Result;
use crate::polycheck::{Verdict, XRange};
use crate::search::{PlinResult, SearchResult, SearchStatus};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Polychromatic,
    NotPolychromatic,
    NoneExists,
    Undecided,
}

/// What an exhaustive search covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhaustion {
    pub colors: u64,
    pub groups: Vec<Vec<u64>>,
    pub matrices_tested: u64,
    pub matrices_pruned: u64,
    pub vectors_checked: u64,
    pub prune: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub status: CertificateStatus,
    pub ell: usize,
    pub d: usize,
    /// Number of colors; the group order.
    pub colors: u64,
    pub moduli: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<GroupElement>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<CountingVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub missing_colors: Option<Vec<GroupElement>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors_checked: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<XRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhaustion: Option<Exhaustion>,
    pub tool_version: String,
    /// RFC 3339, UTC.
    pub timestamp: String,
    pub runtime_secs: f64,
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

impl Certificate {
    fn base(status: CertificateStatus, ell: usize, d: usize, colors: u64, moduli: Vec<u64>, runtime: Duration) -> Self {
        Certificate {
            schema_version: SCHEMA_VERSION,
            status,
            ell,
            d,
            colors,
            moduli,
            columns: None,
            witness: None,
            missing_colors: None,
            vectors_checked: None,
            range: None,
            exhaustion: None,
            tool_version: TOOL_VERSION.to_string(),
            timestamp: now(),
            runtime_secs: runtime.as_secs_f64(),
        }
    }

    pub fn from_verdict(chi: &LinearColoring, d: usize, verdict: &Verdict, range: XRange, runtime: Duration) -> Self {
        let status = if verdict.polychromatic {
            CertificateStatus::Polychromatic
        } else {
            CertificateStatus::NotPolychromatic
        };
        let mut c = Certificate::base(status, chi.ell(), d, chi.colors(), chi.group().moduli().to_vec(), runtime);
        c.columns = Some(chi.columns().to_vec());
        c.witness = verdict.witness.clone();
        c.missing_colors = verdict.missing_colors.clone();
        c.vectors_checked = Some(verdict.vectors_checked);
        c.range = Some(range);
        c
    }

    pub fn from_search(r: &SearchResult, opts_prune: bool, range: XRange) -> Self {
        let runtime = Duration::from_secs_f64(r.wall_time_secs.max(0.0));
        let status = match r.status {
            SearchStatus::Found => CertificateStatus::Polychromatic,
            SearchStatus::NoneExists => CertificateStatus::NoneExists,
            SearchStatus::Undecided => CertificateStatus::Undecided,
        };
        let moduli = r.found.as_ref().map_or_else(Vec::new, |f| f.moduli.clone());
        let mut c = Certificate::base(status, r.ell, r.d, r.colors, moduli, runtime);
        c.columns = r.found.as_ref().map(|f| f.columns.clone());
        c.vectors_checked = Some(r.vectors_checked);
        c.range = Some(range);
        if r.status != SearchStatus::Found {
            c.exhaustion = Some(Exhaustion {
                colors: r.colors,
                groups: r.groups.clone(),
                matrices_tested: r.matrices_tested,
                matrices_pruned: r.matrices_pruned,
                vectors_checked: r.vectors_checked,
                prune: opts_prune,
            });
        }
        c
    }

    /// The coloring this certificate carries, if any.
    pub fn coloring(&self) -> Result<Option<LinearColoring>> {
        match &self.columns {
            None => Ok(None),
            Some(_) => Ok(Some(self.spec().expect("columns present").to_coloring()?)),
        }
    }

    pub fn spec(&self) -> Option<ColoringSpec> {
        let columns = self.columns.as_ref()?;
        Some(ColoringSpec {
            ell: self.ell,
            moduli: self.moduli.iter().map(|&m| m as i64).collect(),
            columns: Some(columns.iter().map(|c| c.0.iter().map(|&x| x as i64).collect()).collect()),
            matrix: None,
            d: Some(self.d),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

/// Certificates for every step of a `p_lin` computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlinBundle {
    pub schema_version: u32,
    pub result: PlinResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub exhaustion: Vec<Certificate>,
}

impl PlinBundle {
    pub fn new(result: PlinResult, prune: bool, range: XRange) -> Self {
        let certificate = result.certificate.as_ref().map(|found| {
            let colors = result.best_found.unwrap_or(0);
            let mut c = Certificate::base(CertificateStatus::Polychromatic, result.ell, result.d, colors, found.moduli.clone(), Duration::ZERO);
            c.columns = Some(found.columns.clone());
            c.range = Some(range);
            c
        });
        let exhaustion = result.exhaustion.iter().map(|r| Certificate::from_search(r, prune, range)).collect();
        PlinBundle { schema_version: SCHEMA_VERSION, result, certificate, exhaustion }
    }
}
