use std::sync::Arc;

use pfr_core::frame::FrameFile;
use pfr_core::harness::{
    competitor_bound, meet_density_check, replay, run_suite, table_mutations, verify, CheckSpec, CodomainKind,
    Counterexample, HarnessError, Instance, Status,
};
use pfr_core::rational::Rational;
use pfr_core::realfn::{sample_fn, Codomain, ExtPartialRealFn, Profile};
use pfr_core::registry;
use pfr_core::sublocale::all_sublocales;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cos(name: &str) -> Codomain {
    Codomain::sublocales(Arc::new(all_sublocales(&registry::builtin(name).unwrap()).unwrap()))
}

#[test]
fn gamma_delta_suite_passes_with_one_seed() {
    let spec = CheckSpec::new("prop.gamma-delta-roundtrip")
        .unwrap()
        .with_bounds(6, 500, &[7]);
    let report = run_suite(&[spec], &[]).unwrap();
    assert!(report.passed());
    assert_eq!(report.seeds, vec![7]);
}

#[test]
fn subfit_table_is_reported() {
    let spec = CheckSpec::new("lemma.subfit-boolean").unwrap().with_bounds(6, 1, &[1]);
    let report = run_suite(&[spec], &[]).unwrap();
    let check = &report.checks[0];
    assert_eq!(check.status, Status::Pass);
    let table = check.stats["table"].as_object().unwrap();
    assert_eq!(table.len(), 13);
    assert!(table
        .values()
        .all(|row| row["subfit"] == row["boolean_meets_of_closed"]));
}

#[test]
fn oversized_bound_is_an_error() {
    let spec = CheckSpec::new("prop.eqextdisc").unwrap().with_bounds(50, 1, &[1]);
    assert!(matches!(
        run_suite(&[spec], &[]),
        Err(HarnessError::LimitExceeded { .. })
    ));
}

#[test]
fn meet_density_examples() {
    let m = cos("D4");
    let base = Codomain::frame(registry::d4());
    let f = ExtPartialRealFn::constant(&base, Rational::from_integer(1))
        .embed_closed(&m)
        .unwrap();
    assert!(meet_density_check(&f).unwrap());
    for seed in 0..200 {
        let g = sample_fn(&m, Profile::ExtContinuous, seed ^ 11);
        assert!(meet_density_check(&g).unwrap(), "seed {seed}");
    }
    let c3 = cos("C3");
    let h = ExtPartialRealFn::constant(&c3, Rational::from_integer(0));
    assert!(matches!(meet_density_check(&h), Err(HarnessError::NotSubfit { .. })));
}

#[test]
fn replay_reproduces_an_injected_failure() {
    let file = FrameFile::from_frame(&registry::w5(), true);
    let (_, mutated) = table_mutations(&file).into_iter().nth(7).unwrap();
    let spec = CheckSpec::new("frame.laws").unwrap().with_bounds(2, 1, &[1]);
    let report = run_suite(&[spec], &[mutated]).unwrap();
    assert!(!report.passed());
    let cx = report.checks[0]
        .counterexample
        .clone()
        .expect("failing checks carry a counterexample");
    let text = cx.to_json();
    let back = Counterexample::parse(&text).unwrap();
    assert_eq!(back, cx);
    assert!(replay(&back).unwrap().is_err());
}

#[test]
fn replay_of_a_passing_instance_passes() {
    let m = Codomain::frame(registry::w5());
    let f = sample_fn(&m, Profile::Hausdorff, 3);
    let instance = Instance::functions(&registry::w5(), CodomainKind::Frame, &m, vec![f]);
    let cx = instance.to_counterexample("prop.gamma-delta-roundtrip", String::new());
    assert_eq!(replay(&Counterexample::parse(&cx.to_json()).unwrap()).unwrap(), Ok(()));
}

#[test]
fn corrupted_rational_is_a_schema_error() {
    let m = Codomain::frame(registry::c3());
    let f = ExtPartialRealFn::constant(&m, Rational::from_integer(1));
    let instance = Instance::functions(&registry::c3(), CodomainKind::Frame, &m, vec![f]);
    let text = instance
        .to_counterexample("prop.psi-phi-roundtrip", String::new())
        .to_json();
    let corrupted = text.replacen("\"1\"", "\"1/0\"", 1);
    assert_ne!(text, corrupted);
    let cx = Counterexample::parse(&corrupted).unwrap();
    assert!(matches!(replay(&cx), Err(HarnessError::Schema(_))));
    assert!(matches!(
        Counterexample::parse("{\"detail\": 3}"),
        Err(HarnessError::Schema(_))
    ));
}

#[test]
fn unknown_check_in_verify() {
    let instance = Instance::Frame(registry::c3());
    assert!(matches!(
        verify("prop.nope", &instance),
        Err(HarnessError::UnknownCheck(_))
    ));
    assert!(matches!(
        verify("prop.meet-density", &instance),
        Err(HarnessError::Schema(_))
    ));
}

#[test]
fn diagram_over_d4_and_cos() {
    let spec = CheckSpec::new("prop.diagram").unwrap().with_bounds(5, 100, &[1, 2]);
    assert!(run_suite(&[spec], &[]).unwrap().passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn competitors_are_hausdorff_bounds(seed in any::<u64>(), which in 0usize..4, upper in any::<bool>()) {
        let m = [Codomain::frame(registry::d4()), Codomain::frame(registry::b8()), cos("C3"), cos("W5")][which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let family: Vec<ExtPartialRealFn> = (0..1 + seed as usize % 3)
            .map(|i| sample_fn(&m, Profile::Hausdorff, seed.wrapping_add(i as u64)))
            .collect();
        let c = competitor_bound(&m, &family, upper, &mut rng);
        prop_assert!(c.is_hausdorff());
        for f in &family {
            let bounded = if upper { f.le(&c).unwrap() } else { c.le(f).unwrap() };
            prop_assert!(bounded);
        }
    }
}
