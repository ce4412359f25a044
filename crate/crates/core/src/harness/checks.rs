//! Instance generation for each catalogue check.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::instance::{subfit_boolean, CodomainKind, Instance};
use super::{CheckSpec, HarnessError};
use crate::frame::{enumerate_frames, FiniteFrame, FrameFile};
use crate::order::Elem;
use crate::rational::Rational;
use crate::realfn::{
    join_hausdorff, meet_hausdorff, merged_cuts, sample_unit_fn, Codomain, ExtPartialRealFn, Profile, SampleConfig,
    Trail, TrailKind,
};
use crate::spatial::{t0_spaces, FiniteSpace, PointFn};
use crate::sublocale::all_sublocales;

pub(super) struct Plan {
    pub instances: Vec<Instance>,
    pub stats: BTreeMap<String, Value>,
}

impl Plan {
    fn new(instances: Vec<Instance>) -> Self {
        Plan {
            instances,
            stats: BTreeMap::new(),
        }
    }

    fn stat(mut self, key: &str, value: Value) -> Self {
        self.stats.insert(key.to_string(), value);
        self
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

fn rng_for(check: &str, label: &str, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(check) ^ fnv1a(label).rotate_left(17))
}

fn frames(n: usize) -> Result<Vec<Arc<FiniteFrame>>, HarnessError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(enumerate_frames(n)?)
}

fn cos_codomain(f: &Arc<FiniteFrame>) -> Result<Codomain, HarnessError> {
    Ok(Codomain::sublocales(Arc::new(all_sublocales(f)?)))
}

/// A codomain to sample functions in.
struct Target {
    frame: Arc<FiniteFrame>,
    kind: CodomainKind,
    codomain: Codomain,
}

impl Target {
    fn frame(f: &Arc<FiniteFrame>) -> Self {
        Target {
            frame: f.clone(),
            kind: CodomainKind::Frame,
            codomain: Codomain::frame(f.clone()),
        }
    }

    fn cos(f: &Arc<FiniteFrame>) -> Result<Self, HarnessError> {
        Ok(Target {
            frame: f.clone(),
            kind: CodomainKind::Cos,
            codomain: cos_codomain(f)?,
        })
    }

    fn booleanization(f: &Arc<FiniteFrame>) -> Self {
        Target {
            frame: f.clone(),
            kind: CodomainKind::Booleanization,
            codomain: Codomain::frame(f.clone()).boolean_codomain(),
        }
    }

    fn label(&self) -> String {
        format!("{:?}:{}", self.kind, self.frame.name())
    }

    fn instance(&self, functions: Vec<ExtPartialRealFn>) -> Instance {
        Instance::functions(&self.frame, self.kind, &self.codomain, functions)
    }
}

/// `samples` instances per seed for every target, generated in parallel and
/// concatenated in (target, seed) order.
fn sampled<F>(spec: &CheckSpec, targets: &[Target], samples: usize, make: F) -> Vec<Instance>
where
    F: Fn(&Target, &mut ChaCha8Rng) -> Vec<ExtPartialRealFn> + Sync,
{
    let jobs: Vec<(&Target, u64)> = targets
        .iter()
        .flat_map(|t| spec.seeds.iter().map(move |&s| (t, s)))
        .collect();
    jobs.par_iter()
        .map(|(t, seed)| {
            let mut rng = rng_for(&spec.id, &t.label(), *seed);
            (0..samples).map(|_| t.instance(make(t, &mut rng))).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn sample(t: &Target, profile: Profile, rng: &mut ChaCha8Rng) -> ExtPartialRealFn {
    SampleConfig::new(profile).sample(&t.codomain, rng)
}

fn sample_real(t: &Target, profile: Profile, rng: &mut ChaCha8Rng) -> ExtPartialRealFn {
    let config = SampleConfig {
        real_bias: 100,
        ..SampleConfig::new(profile)
    };
    config.sample(&t.codomain, rng)
}

fn frame_targets(n: usize) -> Result<Vec<Target>, HarnessError> {
    Ok(frames(n)?.iter().map(Target::frame).collect())
}

fn cos_targets(n: usize) -> Result<Vec<Target>, HarnessError> {
    frames(n)?.iter().map(Target::cos).collect()
}

fn frame_instances(n: usize) -> Result<Vec<Instance>, HarnessError> {
    Ok(frames(n)?.into_iter().map(Instance::Frame).collect())
}

fn names(fs: &[Arc<FiniteFrame>]) -> Value {
    fs.iter().map(|f| f.name().to_string()).collect()
}

pub(super) fn plan(spec: &CheckSpec, fixtures: &[FrameFile]) -> Result<Plan, HarnessError> {
    let n = spec.effective_size();
    let k = spec.samples;
    let plan = match spec.id.as_str() {
        "frame.laws" => {
            let mut files: Vec<FrameFile> = frames(n)?.iter().map(|f| FrameFile::from_frame(f, true)).collect();
            let enumerated = files.len();
            files.extend(
                crate::registry::BUILTIN_NAMES
                    .iter()
                    .map(|b| FrameFile::from_frame(&crate::registry::builtin(b).expect("builtin"), true)),
            );
            files.extend_from_slice(fixtures);
            Plan::new(files.into_iter().map(Instance::Fixture).collect())
                .stat("enumerated", enumerated.into())
                .stat("fixtures", fixtures.len().into())
        }
        "frame.enumeration-agreement" => {
            let counts: Vec<usize> = (1..=n)
                .map(|s| crate::frame::frames_of_size(s).map(|v| v.len()))
                .collect::<Result<_, _>>()?;
            Plan::new((1..=n).map(Instance::Size).collect()).stat("frames_per_size", json!(counts))
        }
        "frame.predicates" | "completion.density" => Plan::new(frame_instances(n)?),
        "sublocale.spatial-bijection" | "obs.td-equals-t0" => {
            let spaces: Vec<Instance> = (1..=n)
                .flat_map(t0_spaces)
                .map(|x| Instance::Space(Arc::new(x)))
                .collect();
            Plan::new(spaces)
        }
        "sublocale.facts" | "sublocale.isbell-density" | "obs.cos-boolean" => Plan::new(frame_instances(n)?),
        "lemma.subfit-boolean" => {
            let fs = frames(n)?;
            let table: BTreeMap<String, Value> = fs
                .iter()
                .map(|f| {
                    let row = match subfit_boolean(f) {
                        Ok((l, r)) => json!({"subfit": l, "boolean_meets_of_closed": r}),
                        Err(e) => json!({"error": e}),
                    };
                    (f.name().to_string(), row)
                })
                .collect();
            Plan::new(fs.into_iter().map(Instance::Frame).collect()).stat("table", json!(table))
        }
        "prop.psi-phi-roundtrip" => {
            let targets = frame_targets(n)?;
            let instances = sampled(spec, &targets, k, |t, rng| {
                let profile = *Profile::ALL[..3].choose(rng).expect("nonempty");
                let f = if rng.random_bool(0.3) {
                    sample_unit_fn(&t.codomain, &SampleConfig::new(profile), rng)
                } else {
                    sample(t, profile, rng)
                };
                vec![f]
            });
            Plan::new(instances)
        }
        "hausdorff.local-vs-oracle" => {
            let targets = frame_targets(n)?;
            Plan::new(sampled(spec, &targets, k, |t, rng| {
                vec![sample(t, Profile::ArbitraryIc, rng), sample(t, Profile::Hausdorff, rng)]
            }))
        }
        "realfn.disjointness-reduction" => {
            let fs = frames(n)?;
            let jobs: Vec<(&Arc<FiniteFrame>, u64)> = fs
                .iter()
                .flat_map(|f| spec.seeds.iter().map(move |&s| (f, s)))
                .collect();
            let instances: Vec<Instance> = jobs
                .par_iter()
                .map(|(f, seed)| {
                    let codomain = Codomain::frame((*f).clone());
                    let mut rng = rng_for(&spec.id, f.name(), *seed);
                    (0..k)
                        .map(|_| {
                            let (lower, upper) = raw_trails(f, &mut rng);
                            Instance::RawTrails {
                                codomain: codomain.clone(),
                                lower,
                                upper,
                            }
                        })
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect();
            Plan::new(instances)
        }
        "lemma.hausdorff-formula" => {
            let targets = frame_targets(n)?;
            Plan::new(sampled(spec, &targets, k, |t, rng| {
                vec![sample(t, Profile::Hausdorff, rng)]
            }))
        }
        "prop.hbar-join-meet" => {
            // Bounds everywhere; leastness only where the competitor is meaningful.
            let mut targets = frame_targets(n.min(6))?;
            let boolean: Vec<Target> = frames(n)?
                .iter()
                .filter(|f| f.is_boolean())
                .map(Target::frame)
                .collect();
            let tested: Vec<String> = boolean.iter().map(Target::label).collect();
            let cos = cos_targets(n.min(5))?;
            let tested: Vec<String> = tested.into_iter().chain(cos.iter().map(Target::label)).collect();
            let strict = boolean.len() + cos.len();
            targets.splice(0..0, boolean.into_iter().chain(cos));
            let instances: Vec<Instance> = targets
                .iter()
                .enumerate()
                .flat_map(|(i, t)| {
                    let competitor = i < strict;
                    sampled(spec, std::slice::from_ref(t), k, move |t, rng| {
                        family_with_competitor(t, competitor, rng)
                    })
                })
                .collect();
            let p = Plan::new(instances);
            let effective = count_effective_competitors(&p.instances);
            p.stat("leastness_tested_on", json!(tested))
                .stat("competitors_bounding", json!(effective))
        }
        "obs.leastness-noncr" => {
            let targets: Vec<Target> = frames(n)?
                .iter()
                .filter(|f| !f.is_completely_regular())
                .map(Target::frame)
                .collect();
            Plan::new(sampled(spec, &targets, k, |t, rng| {
                family_with_competitor(t, true, rng)
            }))
        }
        "prop.gamma-delta-roundtrip" => {
            let fs = frames(n)?;
            let mut targets: Vec<Target> = fs.iter().map(Target::frame).collect();
            for f in &fs {
                targets.push(Target::cos(f)?);
            }
            targets.extend(fs.iter().map(Target::booleanization));
            Plan::new(sampled(spec, &targets, k, |t, rng| match t.kind {
                CodomainKind::Booleanization => vec![sample(t, Profile::ExtContinuous, rng)],
                _ => vec![sample(t, Profile::Hausdorff, rng)],
            }))
        }
        "prop.eqextdisc" => {
            let mut instances = frame_instances(n)?;
            let targets = frame_targets(n.min(6))?;
            instances.extend(sampled(spec, &targets, k, |t, rng| {
                vec![
                    sample(t, Profile::Hausdorff, rng),
                    sample(t, Profile::ExtContinuous, rng),
                ]
            }));
            let fs = frames(n)?;
            let ed: Vec<Arc<FiniteFrame>> = fs.iter().filter(|f| f.is_extremally_disconnected()).cloned().collect();
            Plan::new(instances).stat("extremally_disconnected", names(&ed))
        }
        "cor.real-valued" => {
            let mut instances = frame_instances(n)?;
            let mut targets = frame_targets(n.min(6))?;
            targets.extend(cos_targets(n.min(5))?);
            instances.extend(sampled(spec, &targets, k, |t, rng| {
                vec![
                    sample(t, Profile::Hausdorff, rng),
                    sample_real(t, Profile::Hausdorff, rng),
                ]
            }));
            Plan::new(instances)
        }
        "prop.dedekind-complete" => {
            let targets = cos_targets(n)?;
            Plan::new(sampled(spec, &targets, k, bounded_family))
        }
        "prop.lsc-eq-f-cap-lscbar" => {
            let targets = cos_targets(n)?;
            Plan::new(sampled(spec, &targets, k, |t, rng| {
                vec![
                    sample(t, Profile::Hausdorff, rng),
                    sample(t, Profile::HausdorffClosedLower, rng),
                    sample_real(t, Profile::HausdorffClosedLower, rng),
                    sample(t, Profile::ClosedLower, rng),
                ]
            }))
        }
        "prop.meet-density" => {
            let fs = frames(n)?;
            let mut skipped = BTreeMap::new();
            let mut targets = Vec::new();
            for f in &fs {
                match f.subfit_failure() {
                    Some(fail) => {
                        skipped.insert(
                            f.name().to_string(),
                            json!({"not_subfit": [f.name_of(fail.a), f.name_of(fail.b)]}),
                        );
                    }
                    None => targets.push(Target::cos(f)?),
                }
            }
            let tested: Vec<String> = targets.iter().map(|t| t.frame.name().to_string()).collect();
            Plan::new(sampled(spec, &targets, k.min(200), |t, rng| {
                let mut f = sample(t, Profile::ExtContinuous, rng);
                if rng.random_bool(0.1) {
                    // embedded constants and functions on L
                    let base = Codomain::frame(t.frame.clone());
                    let g = SampleConfig::new(Profile::ExtContinuous).sample(&base, rng);
                    f = g.embed_closed(&t.codomain).expect("parent matches");
                }
                vec![f]
            }))
            .stat("subfit_frames", json!(tested))
            .stat("skipped", json!(skipped))
        }
        "regularization.laws" => {
            let targets = cos_targets(n)?;
            Plan::new(sampled(spec, &targets, k, |t, rng| {
                let profile = *[
                    Profile::ArbitraryIc,
                    Profile::Hausdorff,
                    Profile::ClosedLower,
                    Profile::HausdorffClosedLower,
                ]
                .choose(rng)
                .expect("nonempty");
                let f = if rng.random_bool(0.3) {
                    sample_real(t, profile, rng)
                } else {
                    sample(t, profile, rng)
                };
                if rng.random_bool(0.5) {
                    let h = sample(t, Profile::ArbitraryIc, rng);
                    let g = upper_mix(&f, &h);
                    vec![f, g]
                } else {
                    vec![f]
                }
            }))
        }
        "spatial.conservativeness" => spatial_plan(n)?,
        "prop.diagram" => {
            let mut instances = frame_instances(n)?;
            let mut targets = frame_targets(n)?;
            targets.extend(cos_targets(n.min(5))?);
            instances.extend(sampled(spec, &targets, k, |t, rng| {
                let profile = *Profile::ALL[..3].choose(rng).expect("nonempty");
                let mut out = vec![sample(t, profile, rng), sample_real(t, Profile::ExtContinuous, rng)];
                if t.kind == CodomainKind::Cos {
                    out.push(sample_real(t, Profile::Hausdorff, rng));
                    out.push(sample(t, Profile::HausdorffClosedLower, rng));
                }
                out
            }));
            Plan::new(instances)
        }
        "obs.strict-separations" => {
            let targets = cos_targets(n)?;
            Plan::new(sampled(spec, &targets, k, |t, rng| {
                vec![sample_real(t, Profile::Hausdorff, rng)]
            }))
        }
        other => return Err(HarnessError::UnknownCheck(other.to_string())),
    };
    Ok(plan)
}

/// Random antitone lower and isotone upper trails, disjoint or not.
fn raw_trails(f: &FiniteFrame, rng: &mut ChaCha8Rng) -> (Trail, Trail) {
    let grid: Vec<Rational> = (-4..=4).map(|i| Rational::new(i, 2)).collect();
    let chain = |rng: &mut ChaCha8Rng, len: usize, down: bool| {
        let mut out: Vec<Elem> = Vec::with_capacity(len);
        for _ in 0..len {
            let options: Vec<Elem> = match out.last() {
                None => f.elements().collect(),
                Some(&p) => f
                    .elements()
                    .filter(|&x| if down { f.leq(x, p) } else { f.leq(p, x) })
                    .collect(),
            };
            out.push(*options.choose(rng).expect("nonempty"));
        }
        out
    };
    let trail = |rng: &mut ChaCha8Rng, kind: TrailKind| {
        let k = rng.random_range(0..=3);
        let mut bps: Vec<Rational> = grid.choose_multiple(rng, k).copied().collect();
        bps.sort();
        let vals = chain(rng, k + 1, kind == TrailKind::Lower);
        Trail::raw(kind, bps, vals)
    };
    let lower = trail(rng, TrailKind::Lower);
    let upper = trail(rng, TrailKind::Upper);
    (lower, upper)
}

/// Cellwise `(l_f ∨ l_h, u_f ∧ u_h)`, a function above `f`.
fn upper_mix(f: &ExtPartialRealFn, h: &ExtPartialRealFn) -> ExtPartialRealFn {
    let m = f.frame();
    let cuts = merged_cuts([f.lower(), f.upper(), h.lower(), h.upper()]);
    let (fl, fu) = (f.lower().cells(&cuts), f.upper().cells(&cuts));
    let (hl, hu) = (h.lower().cells(&cuts), h.upper().cells(&cuts));
    let lower: Vec<Elem> = fl.iter().zip(&hl).map(|(&a, &b)| m.join(a, b)).collect();
    let upper: Vec<Elem> = fu.iter().zip(&hu).map(|(&a, &b)| m.meet(a, b)).collect();
    ExtPartialRealFn::from_cells(f.codomain(), &cuts, &lower, &upper)
}

fn random_regular_above(m: &FiniteFrame, x: Elem, rng: &mut ChaCha8Rng) -> Elem {
    let least = m.pstar(m.pstar(x));
    if rng.random_bool(0.5) {
        return least;
    }
    let options: Vec<Elem> = m.regular_elements().into_iter().filter(|&r| m.leq(least, r)).collect();
    *options.choose(rng).expect("the top is regular")
}

/// A Hausdorff upper bound (`upper = true`) or lower bound of a family of
/// Hausdorff functions, built cell by cell from regular values.
pub fn competitor_bound(
    codomain: &Codomain,
    family: &[ExtPartialRealFn],
    upper: bool,
    rng: &mut ChaCha8Rng,
) -> ExtPartialRealFn {
    let m = codomain.get();
    let all: Vec<&Trail> = family.iter().flat_map(|f| [f.lower(), f.upper()]).collect();
    let mut cuts = merged_cuts(all.iter().copied());
    if rng.random_bool(0.5) {
        let extra = Rational::new(rng.random_range(-12..=12), 5);
        if !cuts.contains(&extra) {
            cuts.push(extra);
            cuts.sort();
        }
    }
    let cells = |t: &Trail| t.cells(&cuts);
    let base: Vec<Elem> = (0..=cuts.len())
        .map(|j| {
            m.join_all(
                family
                    .iter()
                    .map(|f| cells(if upper { f.lower() } else { f.upper() })[j]),
            )
        })
        .collect();
    let mut w = vec![m.bottom(); base.len()];
    if upper {
        for j in (0..base.len()).rev() {
            let floor = if j + 1 < base.len() {
                m.join(base[j], w[j + 1])
            } else {
                base[j]
            };
            w[j] = random_regular_above(m, floor, rng);
        }
        let star: Vec<Elem> = w.iter().map(|&v| m.pstar(v)).collect();
        ExtPartialRealFn::from_cells(codomain, &cuts, &w, &star)
    } else {
        for j in 0..base.len() {
            let floor = if j > 0 { m.join(base[j], w[j - 1]) } else { base[j] };
            w[j] = random_regular_above(m, floor, rng);
        }
        let star: Vec<Elem> = w.iter().map(|&v| m.pstar(v)).collect();
        ExtPartialRealFn::from_cells(codomain, &cuts, &star, &w)
    }
}

/// `[f_1, …, f_k, competitor]` with Hausdorff members.
fn family_with_competitor(t: &Target, competitor: bool, rng: &mut ChaCha8Rng) -> Vec<ExtPartialRealFn> {
    let size = rng.random_range(1..=3);
    let mut fs: Vec<ExtPartialRealFn> = (0..size).map(|_| sample(t, Profile::Hausdorff, rng)).collect();
    let c = if competitor {
        let upper = rng.random_bool(0.5);
        competitor_bound(&t.codomain, &fs, upper, rng)
    } else {
        ExtPartialRealFn::plus_infinity(&t.codomain)
    };
    fs.push(c);
    fs
}

fn count_effective_competitors(instances: &[Instance]) -> usize {
    instances
        .iter()
        .filter(|i| match i {
            Instance::Functions {
                codomain, functions, ..
            } => {
                let (c, family) = functions.split_last().expect("nonempty");
                let j = join_hausdorff(codomain, family).ok();
                let m = meet_hausdorff(codomain, family).ok();
                let above = family.iter().all(|f| f.le(c).unwrap_or(false));
                let below = family.iter().all(|f| c.le(f).unwrap_or(false));
                (above && j.is_some_and(|j| j != *c)) || (below && m.is_some_and(|m| m != *c))
            }
            _ => false,
        })
        .count()
}

/// Real-valued Hausdorff members under a real-valued Hausdorff bound.
fn bounded_family(t: &Target, rng: &mut ChaCha8Rng) -> Vec<ExtPartialRealFn> {
    let size = rng.random_range(1..=3);
    let fs: Vec<ExtPartialRealFn> = (0..size).map(|_| sample_real(t, Profile::Hausdorff, rng)).collect();
    if rng.random_bool(0.5) {
        let mut out = fs;
        out.push(ExtPartialRealFn::constant(&t.codomain, Rational::from_integer(3)));
        out
    } else {
        let g = sample_real(t, Profile::Hausdorff, rng);
        let mut out: Vec<ExtPartialRealFn> = fs
            .iter()
            .map(|f| meet_hausdorff(&t.codomain, &[f.clone(), g.clone()]).expect("same codomain"))
            .collect();
        out.push(g);
        out
    }
}

fn sweep_grid() -> Vec<Rational> {
    vec![
        Rational::from_integer(0),
        Rational::new(1, 2),
        Rational::from_integer(1),
    ]
}

fn spatial_plan(n: usize) -> Result<Plan, HarnessError> {
    let mut spaces: Vec<FiniteSpace> = (1..=n.min(3)).flat_map(t0_spaces).collect();
    if n >= 4 {
        spaces.push(FiniteSpace::discrete(4));
    }
    let grid = sweep_grid();
    let mut instances = Vec::new();
    let mut counts = BTreeMap::new();
    for x in spaces {
        let x = Arc::new(x);
        let fns: Vec<PointFn> = x.grid_functions(&grid, true)?;
        counts.insert(
            x.name().to_string(),
            json!({"functions": fns.len(), "pairs": fns.len() * fns.len()}),
        );
        instances.extend(fns.iter().map(|phi| Instance::PointFns {
            space: x.clone(),
            points: vec![phi.clone()],
        }));
        for phi in &fns {
            for psi in &fns {
                instances.push(Instance::PointFns {
                    space: x.clone(),
                    points: vec![phi.clone(), psi.clone()],
                });
            }
        }
    }
    Ok(Plan::new(instances)
        .stat("grid", json!(["0", "1/2", "1", "+inf", "-inf"]))
        .stat("sweeps", json!(counts)))
}
