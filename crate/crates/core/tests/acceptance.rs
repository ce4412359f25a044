//! Runs the full check suite and prints one line per acceptance criterion.

use pfr_core::frame::FrameFile;
use pfr_core::harness::{replay, run_suite, table_mutations, verify, CheckSpec, Instance, Report, Status};
use pfr_core::registry;

const SEEDS: [u64; 2] = [1, 2];
const SAMPLES: usize = 500;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Result<(), String> + 'a>);

fn suite() -> Report {
    let specs: Vec<CheckSpec> = CheckSpec::all(8, SAMPLES, &SEEDS)
        .into_iter()
        .map(|s| {
            if s.id == "hausdorff.local-vs-oracle" {
                s.with_bounds(8, 1000, &SEEDS)
            } else {
                s
            }
        })
        .collect();
    run_suite(&specs, &[]).expect("suite runs")
}

fn passed(report: &Report, ids: &[&str]) -> Result<(), String> {
    for id in ids {
        let c = report.check(id).ok_or_else(|| format!("{id} missing"))?;
        if c.status != Status::Pass {
            return Err(format!(
                "{id}: {:?} {:?}",
                c.status,
                c.counterexample.as_ref().map(|x| &x.detail)
            ));
        }
        if c.stats["instances"].as_u64().unwrap_or(0) == 0 {
            return Err(format!("{id}: no instances"));
        }
    }
    Ok(())
}

fn stat<'a>(report: &'a Report, id: &str, key: &str) -> &'a serde_json::Value {
    &report.check(id).expect("check present").stats[key]
}

fn criterion_1(r: &Report) -> Result<(), String> {
    passed(
        r,
        &[
            "frame.laws",
            "frame.enumeration-agreement",
            "frame.predicates",
            "completion.density",
        ],
    )?;
    let counts = stat(r, "frame.enumeration-agreement", "frames_per_size")
        .as_array()
        .cloned()
        .unwrap_or_default();
    (counts.len() == 8)
        .then_some(())
        .ok_or_else(|| format!("sizes covered: {}", counts.len()))
}

fn criterion_4(r: &Report) -> Result<(), String> {
    passed(r, &["lemma.subfit-boolean"])?;
    let table = stat(r, "lemma.subfit-boolean", "table")
        .as_object()
        .cloned()
        .unwrap_or_default();
    match table
        .iter()
        .find(|(_, row)| row["subfit"] != row["boolean_meets_of_closed"] || row["subfit"].is_null())
    {
        Some((name, row)) => Err(format!("{name}: {row}")),
        None if table.is_empty() => Err("empty table".into()),
        None => Ok(()),
    }
}

fn criterion_7(r: &Report) -> Result<(), String> {
    passed(r, &["prop.hbar-join-meet"])?;
    let tested = stat(r, "prop.hbar-join-meet", "leastness_tested_on")
        .as_array()
        .cloned()
        .unwrap_or_default();
    let cos = tested
        .iter()
        .filter(|t| t.as_str().is_some_and(|s| s.starts_with("Cos:")))
        .count();
    let bounding = stat(r, "prop.hbar-join-meet", "competitors_bounding")
        .as_u64()
        .unwrap_or(0);
    if cos == 0 || bounding == 0 {
        return Err(format!("coS targets {cos}, bounding competitors {bounding}"));
    }
    Ok(())
}

fn criterion_13(r: &Report) -> Result<(), String> {
    let again = suite();
    if again.without_timing() != r.without_timing() || again.without_timing().to_json() != r.without_timing().to_json()
    {
        return Err("reports differ between identical runs".into());
    }
    let mut mutations = 0;
    for name in registry::BUILTIN_NAMES {
        let file = FrameFile::from_frame(&registry::builtin(name).expect("builtin"), true);
        for (label, m) in table_mutations(&file) {
            mutations += 1;
            let instance = Instance::Fixture(m.clone());
            let verdict = verify("frame.laws", &instance).map_err(|e| e.to_string())?;
            if verdict.is_ok() {
                return Err(format!("{name}: mutation {label} not caught"));
            }
            let cx = instance.to_counterexample("frame.laws", label.clone());
            if replay(&cx).map_err(|e| e.to_string())?.is_ok() {
                return Err(format!("{name}: replay of {label} passed"));
            }
        }
    }
    let spec = CheckSpec::new("frame.laws").expect("known").with_bounds(1, 1, &[1]);
    let injected: Vec<FrameFile> = table_mutations(&FrameFile::from_frame(&registry::w5(), true))
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    let n = injected.len();
    let report = run_suite(&[spec], &injected).map_err(|e| e.to_string())?;
    let failures = report.checks[0].stats["failures"].as_u64().unwrap_or(0) as usize;
    if failures != n || mutations == 0 {
        return Err(format!("suite caught {failures} of {n} injected mutations"));
    }
    Ok(())
}

fn main() {
    let report = suite();
    let r = &report;
    let criteria: Vec<Criterion> = vec![
        ("frame laws and enumeration agreement", Box::new(|| criterion_1(r))),
        (
            "sublocale engine",
            Box::new(|| passed(r, &["sublocale.spatial-bijection", "sublocale.facts"])),
        ),
        (
            "least dense sublocale",
            Box::new(|| passed(r, &["sublocale.isbell-density"])),
        ),
        ("subfitness and Boolean sublocales", Box::new(|| criterion_4(r))),
        (
            "psi/phi round trips",
            Box::new(|| passed(r, &["prop.psi-phi-roundtrip"])),
        ),
        (
            "Hausdorff calculus",
            Box::new(|| {
                passed(
                    r,
                    &[
                        "hausdorff.local-vs-oracle",
                        "lemma.hausdorff-formula",
                        "realfn.disjointness-reduction",
                    ],
                )
            }),
        ),
        ("Hausdorff joins and meets", Box::new(|| criterion_7(r))),
        (
            "gamma/delta round trips",
            Box::new(|| passed(r, &["prop.gamma-delta-roundtrip"])),
        ),
        ("extremal disconnectedness", Box::new(|| passed(r, &["prop.eqextdisc"]))),
        (
            "real-valued functions",
            Box::new(|| passed(r, &["cor.real-valued", "prop.dedekind-complete"])),
        ),
        (
            "semicontinuity",
            Box::new(|| {
                passed(
                    r,
                    &["prop.lsc-eq-f-cap-lscbar", "prop.meet-density", "regularization.laws"],
                )
            }),
        ),
        (
            "spatial conservativeness",
            Box::new(|| passed(r, &["spatial.conservativeness"])),
        ),
        ("determinism and replay", Box::new(|| criterion_13(r))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2} {name}: PASS", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({e})", i + 1);
            }
        }
    }
    for c in report.checks.iter().filter(|c| c.status == Status::Observation) {
        println!(
            "observation {}: {}",
            c.id,
            c.stats.get("deviations").map_or("0".into(), |v| v.to_string())
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
