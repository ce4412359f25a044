//! Named, seeded verification checks with JSON reports and replayable
//! counterexamples.

mod checks;
mod instance;
pub mod oracles;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::frame::{FrameError, FrameFile};
use crate::realfn::RealFnError;
use crate::spatial::SpatialError;
use crate::sublocale::SublocaleError;

pub use checks::competitor_bound;
pub use instance::{meet_density_check, meet_density_family, verify, CodomainKind, Counterexample, Instance, Verdict};

pub const REPORT_VERSION: &str = "1";
pub const DEFAULT_SEEDS: [u64; 3] = [7, 11, 42];
pub const DEFAULT_SAMPLES: usize = 500;
pub const DEFAULT_MAX_SIZE: usize = 8;
/// Largest frame size any check accepts.
pub const MAX_SIZE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("{what}: requested {requested}, limit is {limit}")]
    LimitExceeded {
        what: String,
        requested: usize,
        limit: usize,
    },
    #[error("sampled check {0} needs at least one seed")]
    NoSeeds(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("frame is not subfit: {a} ≰ {b} has no separating element")]
    NotSubfit { a: String, b: String },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Sublocale(#[from] SublocaleError),
    #[error(transparent)]
    RealFn(#[from] RealFnError),
    #[error(transparent)]
    Spatial(#[from] SpatialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Observation,
}

/// One catalogue entry.
#[derive(Debug, Clone, Copy)]
pub struct CheckInfo {
    pub id: &'static str,
    /// What the check establishes, in one line.
    pub anchor: &'static str,
    pub mode: Mode,
    pub observation: bool,
    /// Largest frame size the check runs at, whatever the requested bound.
    pub cap: usize,
}

const fn entry(id: &'static str, anchor: &'static str, mode: Mode, cap: usize) -> CheckInfo {
    CheckInfo {
        id,
        anchor,
        mode,
        observation: false,
        cap,
    }
}

const fn observe(id: &'static str, anchor: &'static str, mode: Mode, cap: usize) -> CheckInfo {
    CheckInfo {
        id,
        anchor,
        mode,
        observation: true,
        cap,
    }
}

use Mode::{Exhaustive, Sampled};

pub const CATALOGUE: &[CheckInfo] = &[
    entry(
        "frame.laws",
        "Heyting adjunction, triple pseudocomplement and distributivity on stored tables",
        Exhaustive,
        8,
    ),
    entry(
        "frame.enumeration-agreement",
        "frames per size agree with brute-force distributive lattices",
        Exhaustive,
        8,
    ),
    entry(
        "frame.predicates",
        "Booleanization is Boolean with a ↦ a** a frame map; Boolean ⇒ completely regular ⇒ subfit",
        Exhaustive,
        8,
    ),
    entry(
        "completion.density",
        "the cut completion of a finite lattice is itself, densely embedded",
        Exhaustive,
        8,
    ),
    entry(
        "sublocale.spatial-bijection",
        "induced sublocales of a finite T0 space form its powerset lattice",
        Exhaustive,
        4,
    ),
    entry(
        "sublocale.facts",
        "closed and open sublocales: complements, joins and meets, a ↦ 𝔠(a) into coS",
        Exhaustive,
        6,
    ),
    entry(
        "sublocale.isbell-density",
        "the regular elements form the least dense sublocale",
        Exhaustive,
        6,
    ),
    entry(
        "lemma.subfit-boolean",
        "L subfit iff every Boolean element of coS(L) is a meet of closed sublocales",
        Exhaustive,
        6,
    ),
    entry(
        "prop.psi-phi-roundtrip",
        "ψ and φ are inverse order isomorphisms onto the unit range",
        Sampled,
        6,
    ),
    entry(
        "hausdorff.local-vs-oracle",
        "cellwise Hausdorff test agrees with the defining inequalities",
        Sampled,
        6,
    ),
    entry(
        "realfn.disjointness-reduction",
        "cellwise disjointness agrees with (r,—) ∧ (—,s) = 0 for s ≤ r",
        Sampled,
        6,
    ),
    entry(
        "lemma.hausdorff-formula",
        "f(r,—) = ⋁_{p>r} f(—,p)* = ⋁_{p>r} f(p,—)** and mirrors",
        Sampled,
        6,
    ),
    entry(
        "prop.hbar-join-meet",
        "Hausdorff joins and meets are Hausdorff bounds, least and greatest where tested",
        Sampled,
        8,
    ),
    entry(
        "prop.gamma-delta-roundtrip",
        "Hausdorff functions into L match extended continuous functions into 𝔅(L)",
        Sampled,
        6,
    ),
    entry(
        "prop.eqextdisc",
        "extended continuous equals Hausdorff iff L is extremally disconnected",
        Exhaustive,
        8,
    ),
    entry(
        "cor.real-valued",
        "real-valued Hausdorff functions: ending values versus density of the joins",
        Sampled,
        8,
    ),
    entry(
        "prop.dedekind-complete",
        "bounded families of real-valued Hausdorff functions have real-valued joins",
        Sampled,
        5,
    ),
    entry(
        "prop.lsc-eq-f-cap-lscbar",
        "lower semicontinuous = real-valued ∩ extended lower semicontinuous",
        Sampled,
        5,
    ),
    entry(
        "prop.meet-density",
        "extended continuous functions into coS(L) are meets of l_{a,q} for subfit L",
        Sampled,
        5,
    ),
    entry(
        "regularization.laws",
        "lower regularization is deflationary, idempotent, monotone, closed-valued",
        Sampled,
        5,
    ),
    entry(
        "spatial.conservativeness",
        "point functions and sublocale-valued functions agree on finite spaces",
        Exhaustive,
        4,
    ),
    entry(
        "prop.diagram",
        "inclusions between function classes, cozero elements, negation",
        Sampled,
        6,
    ),
    observe(
        "obs.leastness-noncr",
        "Hausdorff join leastness outside completely regular frames",
        Sampled,
        6,
    ),
    observe("obs.cos-boolean", "coS(L) is Boolean for finite L", Exhaustive, 6),
    observe(
        "obs.td-equals-t0",
        "finite T0 spaces are T_D; T1 is discrete",
        Exhaustive,
        4,
    ),
    observe(
        "obs.strict-separations",
        "real-valued Hausdorff functions into coS(L) are continuous at finite scale",
        Sampled,
        5,
    ),
];

pub fn catalogue_entry(id: &str) -> Option<&'static CheckInfo> {
    CATALOGUE.iter().find(|c| c.id == id)
}

/// What to run for one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub id: String,
    pub max_size: usize,
    pub samples: usize,
    pub seeds: Vec<u64>,
    pub mode: Mode,
}

impl CheckSpec {
    /// Catalogue defaults for `id`.
    pub fn new(id: &str) -> Result<Self, HarnessError> {
        let info = catalogue_entry(id).ok_or_else(|| HarnessError::UnknownCheck(id.to_string()))?;
        Ok(CheckSpec {
            id: id.to_string(),
            max_size: DEFAULT_MAX_SIZE,
            samples: DEFAULT_SAMPLES,
            seeds: DEFAULT_SEEDS.to_vec(),
            mode: info.mode,
        })
    }

    pub fn with_bounds(mut self, max_size: usize, samples: usize, seeds: &[u64]) -> Self {
        self.max_size = max_size;
        self.samples = samples;
        self.seeds = seeds.to_vec();
        self
    }

    /// Every catalogue check with the same bounds.
    pub fn all(max_size: usize, samples: usize, seeds: &[u64]) -> Vec<CheckSpec> {
        CATALOGUE
            .iter()
            .map(|c| {
                CheckSpec::new(c.id)
                    .expect("catalogue id")
                    .with_bounds(max_size, samples, seeds)
            })
            .collect()
    }

    fn validate(&self) -> Result<&'static CheckInfo, HarnessError> {
        let info = catalogue_entry(&self.id).ok_or_else(|| HarnessError::UnknownCheck(self.id.clone()))?;
        if self.max_size > MAX_SIZE_LIMIT {
            return Err(HarnessError::LimitExceeded {
                what: format!("frame size for {}", self.id),
                requested: self.max_size,
                limit: MAX_SIZE_LIMIT,
            });
        }
        if self.mode == Mode::Sampled && self.seeds.is_empty() {
            return Err(HarnessError::NoSeeds(self.id.clone()));
        }
        Ok(info)
    }

    /// The bound actually used.
    pub fn effective_size(&self) -> usize {
        catalogue_entry(&self.id).map_or(self.max_size, |c| self.max_size.min(c.cap))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub paper_anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub stats: BTreeMap<String, serde_json::Value>,
    pub timing_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub seeds: Vec<u64>,
    pub max_size: usize,
    pub samples: usize,
    pub checks: Vec<CheckReport>,
}

impl Report {
    /// No check has status `fail`.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// The report with every timing field zeroed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.timing_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs every spec; `fixtures` are extra frame files fed to `frame.laws`.
pub fn run_suite(specs: &[CheckSpec], fixtures: &[FrameFile]) -> Result<Report, HarnessError> {
    for s in specs {
        s.validate()?;
    }
    let checks = specs
        .par_iter()
        .map(|s| run_check(s, fixtures))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seeds: Vec<u64> = specs.iter().flat_map(|s| s.seeds.iter().copied()).collect();
    seeds.sort_unstable();
    seeds.dedup();
    Ok(Report {
        version: REPORT_VERSION.to_string(),
        seeds,
        max_size: specs.iter().map(|s| s.max_size).max().unwrap_or(0),
        samples: specs.iter().map(|s| s.samples).max().unwrap_or(0),
        checks,
    })
}

fn run_check(spec: &CheckSpec, fixtures: &[FrameFile]) -> Result<CheckReport, HarnessError> {
    let info = spec.validate()?;
    let start = Instant::now();
    let plan = checks::plan(spec, fixtures)?;
    let verdicts = plan
        .instances
        .par_iter()
        .map(|i| verify(&spec.id, i).map(|v| v.err()))
        .collect::<Result<Vec<_>, _>>()?;
    let failures: Vec<(usize, String)> = verdicts
        .into_iter()
        .enumerate()
        .filter_map(|(k, v)| v.map(|d| (k, d)))
        .collect();
    let mut stats = plan.stats;
    stats.insert("instances".into(), plan.instances.len().into());
    let counterexample = failures
        .first()
        .map(|(k, detail)| plan.instances[*k].to_counterexample(&spec.id, detail.clone()));
    let status = if info.observation {
        stats.insert("deviations".into(), failures.len().into());
        Status::Observation
    } else if failures.is_empty() {
        Status::Pass
    } else {
        stats.insert("failures".into(), failures.len().into());
        Status::Fail
    };
    Ok(CheckReport {
        id: spec.id.clone(),
        paper_anchor: info.anchor.to_string(),
        status,
        counterexample,
        stats,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Every copy of `file` with exactly one stored table entry changed.
///
/// # Panics
/// If `file` carries no tables.
pub fn table_mutations(file: &FrameFile) -> Vec<(String, FrameFile)> {
    let t = file.tables.as_ref().expect("fixture with tables");
    let names = &file.elements;
    let mut out = Vec::new();
    let mut push = |label: String, edit: &dyn Fn(&mut crate::frame::TablesFile)| {
        let mut m = file.clone();
        edit(m.tables.as_mut().expect("present"));
        out.push((label, m));
    };
    let n = names.len();
    for i in 0..n {
        for j in 0..n {
            push(format!("leq[{i}][{j}]"), &|t| t.leq[i][j] = !t.leq[i][j]);
            for v in names {
                for (table, cell) in [
                    ("meet", &t.meet[i][j]),
                    ("join", &t.join[i][j]),
                    ("arrow", &t.arrow[i][j]),
                ] {
                    if cell == v {
                        continue;
                    }
                    push(format!("{table}[{i}][{j}]={v}"), &|t| {
                        let row = match table {
                            "meet" => &mut t.meet,
                            "join" => &mut t.join,
                            _ => &mut t.arrow,
                        };
                        row[i][j] = v.clone();
                    });
                }
            }
        }
        for v in names.iter().filter(|v| **v != t.pstar[i]) {
            push(format!("pstar[{i}]={v}"), &|t| t.pstar[i] = v.clone());
        }
    }
    for v in names {
        if *v != t.bottom {
            push(format!("bottom={v}"), &|t| t.bottom = v.clone());
        }
        if *v != t.top {
            push(format!("top={v}"), &|t| t.top = v.clone());
        }
    }
    out
}

/// Re-runs the single instance stored in a counterexample.
pub fn replay(cx: &Counterexample) -> Result<Verdict, HarnessError> {
    let instance = cx.to_instance()?;
    verify(&cx.check, &instance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_ids_are_unique() {
        let mut ids: Vec<_> = CATALOGUE.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CATALOGUE.len());
    }

    #[test]
    fn oversized_bound_is_rejected() {
        let spec = CheckSpec::new("frame.laws").unwrap().with_bounds(50, 10, &[1]);
        assert!(matches!(
            run_suite(&[spec], &[]),
            Err(HarnessError::LimitExceeded { requested: 50, .. })
        ));
    }

    #[test]
    fn unknown_check_is_rejected() {
        assert!(matches!(
            CheckSpec::new("prop.nope"),
            Err(HarnessError::UnknownCheck(_))
        ));
    }

    #[test]
    fn sampled_needs_seed() {
        let spec = CheckSpec::new("prop.psi-phi-roundtrip")
            .unwrap()
            .with_bounds(3, 10, &[]);
        assert!(matches!(run_suite(&[spec], &[]), Err(HarnessError::NoSeeds(_))));
    }
}
