//! Single check instances, their verdicts, and the counterexample payload
//! that reproduces them.

use std::fmt::Display;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::oracles::{self, RawPair};
use super::HarnessError;
use crate::completion::{is_join_dense, is_meet_dense, macneille};
use crate::frame::{canonical_form, frames_of_size, isomorphic, FiniteFrame, FrameFile, FrameMap};
use crate::order::{Elem, FinitePoset};
use crate::rational::{ExtRational, Rational};
use crate::realfn::{
    delta, gamma, join_hausdorff, lower_regularization, meet_hausdorff, phi, psi, upper_regularization,
    upper_regularization_direct, Codomain, ExtPartialRealFn, FunctionFile, RealFnError, Trail, TrailKind,
};
use crate::spatial::{FiniteSpace, PointFn, SpaceFile};
use crate::sublocale::{
    all_sublocales, all_sublocales_with_limit, closed, join_s, least_dense_check, meet_s, open_, subfit_via_sublocales,
    Sublocale,
};

/// Which codomain a counterexample's functions live in, relative to its frame `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CodomainKind {
    /// `L` itself.
    #[default]
    Frame,
    /// `coS(L)`.
    Cos,
    /// `𝔅(L)`.
    Booleanization,
}

/// Everything needed to re-run one failed instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    #[serde(default)]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameFile>,
    #[serde(default)]
    pub codomain: CodomainKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<FunctionFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceFile>,
    /// Point functions, one value string per point.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
}

/// One unit of work for a check.
#[derive(Debug, Clone)]
pub enum Instance {
    /// A frame file whose stored tables are validated as given.
    Fixture(FrameFile),
    Frame(Arc<FiniteFrame>),
    Size(usize),
    Functions {
        /// The frame `L` the codomain is built from.
        frame: Arc<FiniteFrame>,
        kind: CodomainKind,
        codomain: Codomain,
        functions: Vec<ExtPartialRealFn>,
    },
    RawTrails {
        codomain: Codomain,
        lower: Trail,
        upper: Trail,
    },
    Space(Arc<FiniteSpace>),
    PointFns {
        space: Arc<FiniteSpace>,
        points: Vec<PointFn>,
    },
}

pub type Verdict = Result<(), String>;

fn ok<T, E: Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn schema<E: Display>(e: E) -> HarnessError {
    HarnessError::Schema(e.to_string())
}

impl Instance {
    pub fn functions(
        frame: &Arc<FiniteFrame>,
        kind: CodomainKind,
        codomain: &Codomain,
        functions: Vec<ExtPartialRealFn>,
    ) -> Self {
        Instance::Functions {
            frame: frame.clone(),
            kind,
            codomain: codomain.clone(),
            functions,
        }
    }

    pub fn to_counterexample(&self, check: &str, detail: String) -> Counterexample {
        let mut cx = Counterexample {
            check: check.to_string(),
            detail,
            frame: None,
            codomain: CodomainKind::Frame,
            functions: Vec::new(),
            space: None,
            points: Vec::new(),
            size: None,
        };
        match self {
            Instance::Fixture(file) => cx.frame = Some(file.clone()),
            Instance::Frame(f) => cx.frame = Some(FrameFile::from_frame(f, false)),
            Instance::Size(n) => cx.size = Some(*n),
            Instance::Functions {
                frame, kind, functions, ..
            } => {
                cx.frame = Some(FrameFile::from_frame(frame, false));
                cx.codomain = *kind;
                cx.functions = functions.iter().map(FunctionFile::from_fn).collect();
            }
            Instance::RawTrails { codomain, lower, upper } => {
                cx.frame = Some(FrameFile::from_frame(codomain.get(), false));
                cx.functions = vec![FunctionFile {
                    frame: codomain.name().to_string(),
                    lower: crate::realfn::TrailFile::from_trail(lower, codomain),
                    upper: crate::realfn::TrailFile::from_trail(upper, codomain),
                }];
            }
            Instance::Space(space) => cx.space = Some(space.to_file()),
            Instance::PointFns { space, points } => {
                cx.space = Some(space.to_file());
                cx.points = points.iter().map(PointFn::display).collect();
            }
        }
        cx
    }
}

impl Counterexample {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(text).map_err(schema)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("counterexamples serialize")
    }

    /// Rebuilds the instance; any malformed field is a schema error.
    pub fn to_instance(&self) -> Result<Instance, HarnessError> {
        if self.check == "frame.laws" {
            let file = self.frame.clone().ok_or_else(|| schema("missing frame"))?;
            return Ok(Instance::Fixture(file));
        }
        if let Some(n) = self.size {
            return Ok(Instance::Size(n));
        }
        if let Some(space_file) = &self.space {
            let space = Arc::new(space_file.to_space().map_err(schema)?);
            if self.points.is_empty() {
                return Ok(Instance::Space(space));
            }
            let points = self
                .points
                .iter()
                .map(|vals| {
                    vals.iter()
                        .map(|v| v.parse::<ExtRational>())
                        .collect::<Result<Vec<_>, _>>()
                        .map(PointFn::new)
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(schema)?;
            return Ok(Instance::PointFns { space, points });
        }
        let file = self.frame.as_ref().ok_or_else(|| schema("missing frame"))?;
        let frame = Arc::new(file.to_frame().map_err(schema)?);
        if self.functions.is_empty() {
            return Ok(Instance::Frame(frame));
        }
        let codomain = match self.codomain {
            CodomainKind::Frame => Codomain::frame(frame.clone()),
            CodomainKind::Cos => Codomain::sublocales(Arc::new(all_sublocales_with_limit(&frame, 20).map_err(schema)?)),
            CodomainKind::Booleanization => Codomain::frame(frame.clone()).boolean_codomain(),
        };
        if self.check == "realfn.disjointness-reduction" {
            let (lower, upper) = self.functions[0].to_raw_trails(&codomain).map_err(schema)?;
            return Ok(Instance::RawTrails { codomain, lower, upper });
        }
        let functions = self
            .functions
            .iter()
            .map(|f| f.to_fn(&codomain))
            .collect::<Result<Vec<_>, RealFnError>>()
            .map_err(schema)?;
        Ok(Instance::Functions {
            frame,
            kind: self.codomain,
            codomain,
            functions,
        })
    }
}

fn wrong_shape(check: &str) -> HarnessError {
    HarnessError::Schema(format!("instance does not fit check {check}"))
}

/// Runs the predicate of `check` on one instance.
pub fn verify(check: &str, instance: &Instance) -> Result<Verdict, HarnessError> {
    use Instance as I;
    let verdict = match (check, instance) {
        ("frame.laws", I::Fixture(file)) => file.validate().map(|_| ()).map_err(|e| e.diagnostic().to_string()),
        ("frame.predicates", I::Frame(f)) => frame_predicates(f),
        ("frame.enumeration-agreement", I::Size(n)) => enumeration_agreement(*n)?,
        ("completion.density", I::Frame(f)) => completion_density(f),
        ("sublocale.spatial-bijection", I::Space(x)) => spatial_bijection(x),
        ("sublocale.facts", I::Frame(f)) => sublocale_facts(f),
        ("sublocale.isbell-density", I::Frame(f)) => isbell_density(f),
        ("lemma.subfit-boolean", I::Frame(f)) => subfit_boolean(f).map(|_| ()),
        ("prop.psi-phi-roundtrip", I::Functions { functions, .. }) => each(functions, psi_phi),
        ("hausdorff.local-vs-oracle", I::Functions { functions, .. }) => hausdorff_local(functions),
        ("realfn.disjointness-reduction", I::RawTrails { codomain, lower, upper }) => {
            disjointness_reduction(codomain, lower, upper)
        }
        ("lemma.hausdorff-formula", I::Functions { functions, .. }) => each(functions, |f| {
            ensure!(f.is_hausdorff(), "sample is not Hausdorff");
            oracles::hausdorff_identities(f)
        }),
        (
            "prop.hbar-join-meet" | "obs.leastness-noncr",
            I::Functions {
                codomain, functions, ..
            },
        ) => hbar_bounds(codomain, functions),
        (
            "prop.gamma-delta-roundtrip",
            I::Functions {
                frame, kind, functions, ..
            },
        ) => each(functions, |f| gamma_delta(frame, *kind, f)),
        ("prop.eqextdisc", I::Frame(f)) => eqextdisc_frame(f),
        ("prop.eqextdisc", I::Functions { frame, functions, .. }) => each(functions, |f| {
            ensure!(
                !f.is_extended_continuous() || f.is_hausdorff(),
                "extended continuous but not Hausdorff"
            );
            ensure!(
                !frame.is_extremally_disconnected() || !f.is_hausdorff() || f.is_extended_continuous(),
                "Hausdorff function over an extremally disconnected frame is not extended continuous"
            );
            Ok(())
        }),
        ("cor.real-valued", I::Frame(f)) => real_valued_cases(f),
        ("cor.real-valued", I::Functions { functions, .. }) => each(functions, |f| {
            ensure!(
                !f.is_hausdorff() || f.is_real_valued() == f.is_real_valued_star(),
                "real-valued characterizations disagree"
            );
            Ok(())
        }),
        (
            "prop.dedekind-complete",
            I::Functions {
                codomain, functions, ..
            },
        ) => dedekind(codomain, functions),
        ("prop.lsc-eq-f-cap-lscbar", I::Functions { functions, .. }) => each(functions, lsc_eq),
        (
            "prop.meet-density",
            I::Functions {
                codomain, functions, ..
            },
        ) => each(functions, |f| meet_density_verdict(codomain, f)),
        ("regularization.laws", I::Functions { functions, .. }) => regularization(functions),
        ("spatial.conservativeness", I::PointFns { space, points }) => spatial_points(space, points),
        ("prop.diagram", I::Frame(f)) => diagram_frame(f),
        (
            "prop.diagram",
            I::Functions {
                frame, kind, functions, ..
            },
        ) => each(functions, |f| diagram_fn(frame, *kind, f)),
        ("obs.cos-boolean", I::Frame(f)) => cos_boolean(f),
        ("obs.td-equals-t0", I::Space(x)) => td_equals_t0(x),
        ("obs.strict-separations", I::Functions { functions, .. }) => each(functions, |f| {
            ensure!(
                !(f.is_hausdorff() && f.is_real_valued()) || f.is_continuous(),
                "real-valued Hausdorff function outside C(coS(L))"
            );
            Ok(())
        }),
        _ if super::catalogue_entry(check).is_none() => return Err(HarnessError::UnknownCheck(check.to_string())),
        _ => return Err(wrong_shape(check)),
    };
    Ok(verdict)
}

fn cos_boolean(f: &Arc<FiniteFrame>) -> Verdict {
    let cos = ok(all_sublocales(f))?;
    ensure!(cos.frame().is_boolean(), "coS({}) is not Boolean", f.name());
    Ok(())
}

fn td_equals_t0(x: &FiniteSpace) -> Verdict {
    ensure!(x.is_td(), "finite T0 space is not T_D");
    let discrete = x.opens().len() == 1 << x.len();
    ensure!(x.is_t1() == discrete, "T1 does not coincide with discreteness");
    Ok(())
}

fn each(fs: &[ExtPartialRealFn], v: impl FnMut(&ExtPartialRealFn) -> Verdict) -> Verdict {
    fs.iter().try_for_each(v)
}

fn frame_predicates(f: &Arc<FiniteFrame>) -> Verdict {
    let b = f.booleanization();
    ensure!(b.frame.is_boolean(), "Booleanization of {} is not Boolean", f.name());
    ensure!(
        b.beta.is_hom(),
        "a ↦ a** is not a frame homomorphism: {:?}",
        b.beta.hom_violation()
    );
    ensure!(
        b.embed.len() == f.regular_elements().len(),
        "Booleanization misses regular elements"
    );
    if let Some(fail) = f.subfit_failure() {
        ensure!(!f.leq(fail.a, fail.b), "subfit certificate has a ≤ b");
        let witness = f
            .elements()
            .find(|&c| f.join(fail.a, c) == f.top() && f.join(fail.b, c) != f.top());
        ensure!(witness.is_none(), "subfit certificate is refuted by a witness");
    }
    ensure!(
        !f.is_boolean() || f.is_completely_regular(),
        "Boolean frame is not completely regular"
    );
    ensure!(
        !f.is_completely_regular() || f.is_subfit(),
        "completely regular frame is not subfit"
    );
    ensure!(
        f.is_extremally_disconnected() == f.extremal_disconnection_witness().is_none(),
        "extremal disconnectedness witness disagrees"
    );
    Ok(())
}

/// Frame counts of one size agree with brute force, class by class.
fn enumeration_agreement(n: usize) -> Result<Verdict, HarnessError> {
    let frames = frames_of_size(n)?;
    let brute: Vec<FinitePoset> = oracles::brute_force_lattices(n)
        .into_iter()
        .filter(|l| l.distributive)
        .map(|l| l.to_poset("brute"))
        .collect();
    if frames.len() != brute.len() {
        return Ok(Err(format!(
            "size {n}: {} enumerated frames, {} distributive lattices by brute force",
            frames.len(),
            brute.len()
        )));
    }
    let mut a: Vec<Vec<u64>> = frames.iter().map(|f| canonical_form(f.poset()).code).collect();
    let mut b: Vec<Vec<u64>> = brute.iter().map(|p| canonical_form(p).code).collect();
    a.sort();
    b.sort();
    Ok(if a == b {
        Ok(())
    } else {
        Err(format!("size {n}: isomorphism classes differ"))
    })
}

fn completion_density(f: &Arc<FiniteFrame>) -> Verdict {
    let c = ok(macneille(f.poset()))?;
    ensure!(
        isomorphic(c.lattice.poset(), f.poset()),
        "completion of a finite lattice is not itself"
    );
    ensure!(
        is_join_dense(&c.embed, &c.lattice) && is_meet_dense(&c.embed, &c.lattice),
        "embedding not dense"
    );
    for a in f.elements() {
        for b in f.elements() {
            ensure!(
                f.leq(a, b) == c.lattice.leq(c.embed[a.0], c.embed[b.0]),
                "embedding is not an order embedding"
            );
        }
    }
    // join-irreducibles
    let covers = f.covers();
    let ji: Vec<usize> = f
        .elements()
        .filter(|&x| covers.iter().filter(|(_, hi)| *hi == x).count() == 1)
        .map(|x| x.0)
        .collect();
    if !ji.is_empty() {
        let names = ji.iter().map(|&i| f.names()[i].clone()).collect();
        let p = ok(FinitePoset::from_relation("J", names, |i, j| {
            f.leq(Elem(ji[i]), Elem(ji[j]))
        }))?;
        let cj = ok(macneille(&p))?;
        ensure!(
            is_join_dense(&cj.embed, &cj.lattice) && is_meet_dense(&cj.embed, &cj.lattice),
            "completion of the join-irreducibles is not dense"
        );
    }
    Ok(())
}

fn spatial_bijection(x: &FiniteSpace) -> Verdict {
    let n = x.len();
    let frame = x.open_frame();
    let cos = ok(x.sublocale_frame())?;
    ensure!(cos.len() == 1 << n, "{} sublocales for {} points", cos.len(), n);
    let s: Vec<Sublocale> = (0..1u64 << n).map(|a| x.induced(a)).collect();
    let mut carriers: Vec<u64> = s.iter().map(Sublocale::carrier).collect();
    carriers.sort();
    carriers.dedup();
    ensure!(carriers.len() == 1 << n, "induced sublocales are not pairwise distinct");
    for a in 0..1u64 << n {
        for b in 0..1u64 << n {
            let (sa, sb) = (&s[a as usize], &s[b as usize]);
            let pair = [sa.clone(), sb.clone()];
            ensure!(
                ok(join_s(frame, &pair))? == s[(a | b) as usize],
                "union not sent to join"
            );
            ensure!(
                ok(meet_s(frame, &pair))? == s[(a & b) as usize],
                "intersection not sent to meet"
            );
            ensure!(
                crate::bits::is_subset(a, b) == sa.is_subset(sb),
                "inclusion not reflected"
            );
        }
    }
    let full = crate::bits::full(n);
    for &u in x.opens() {
        let e = x.open_elem(u).expect("listed open");
        ensure!(
            s[u as usize] == open_(frame, e),
            "induced sublocale of an open set is not open"
        );
        ensure!(
            s[(full & !u) as usize] == closed(frame, e),
            "induced sublocale of a closed set is not closed"
        );
    }
    Ok(())
}

fn sublocale_facts(f: &Arc<FiniteFrame>) -> Verdict {
    let cos = ok(all_sublocales(f))?;
    ok(cos.frame().check_laws())?;
    let c = |a| closed(f, a);
    let o = |a| open_(f, a);
    let whole = Sublocale::whole(f.clone());
    let one = Sublocale::top_only(f.clone());
    ensure!(
        c(f.bottom()) == whole && c(f.top()) == one,
        "closed sublocales of 0 and 1"
    );
    ensure!(
        o(f.bottom()) == one && o(f.top()) == whole,
        "open sublocales of 0 and 1"
    );
    let js = |xs: &[Sublocale]| join_s(f, xs).expect("same parent");
    let ms = |xs: &[Sublocale]| meet_s(f, xs).expect("same parent");
    for a in f.elements() {
        ensure!(
            ms(&[c(a), o(a)]) == one && js(&[c(a), o(a)]) == whole,
            "closed and open of {} are not complements",
            f.name_of(a)
        );
        let ca = cos.closed(a);
        let oa = cos.open(a);
        ensure!(
            cos.frame().pstar(oa) == ca && cos.frame().pstar(ca) == oa,
            "complement pair fails in coS"
        );
        for b in f.elements() {
            ensure!(js(&[c(a), c(b)]) == c(f.meet(a, b)), "join of closed sublocales");
            ensure!(ms(&[c(a), c(b)]) == c(f.join(a, b)), "meet of closed sublocales");
            ensure!(ms(&[o(a), o(b)]) == o(f.meet(a, b)), "meet of open sublocales");
            ensure!(js(&[o(a), o(b)]) == o(f.join(a, b)), "join of open sublocales");
            let m = cos.frame();
            ensure!(
                m.join(oa, cos.open(b)) == cos.open(f.meet(a, b)),
                "open sublocales in coS: join"
            );
            ensure!(
                m.meet(oa, cos.open(b)) == cos.open(f.join(a, b)),
                "open sublocales in coS: meet"
            );
        }
    }
    for family in 0..1u64 << f.len() {
        let members: Vec<_> = crate::bits::iter(family).map(crate::order::Elem).collect();
        let cs: Vec<Sublocale> = members.iter().map(|&a| c(a)).collect();
        let os: Vec<Sublocale> = members.iter().map(|&a| o(a)).collect();
        let top = f.join_all(members.iter().copied());
        ensure!(ms(&cs) == c(top), "meet of a family of closed sublocales");
        ensure!(js(&os) == o(top), "join of a family of open sublocales");
    }
    let embedding = ok(FrameMap::new(
        f.clone(),
        cos.frame().clone(),
        f.elements().map(|a| cos.closed(a)).collect(),
    ))?;
    ensure!(
        embedding.is_hom(),
        "a ↦ 𝔠(a) is not a frame homomorphism: {:?}",
        embedding.hom_violation()
    );
    ensure!(embedding.is_injective(), "a ↦ 𝔠(a) is not injective");
    Ok(())
}

fn isbell_density(f: &Arc<FiniteFrame>) -> Verdict {
    ensure!(
        ok(least_dense_check(f))?,
        "regular elements are not the least dense sublocale"
    );
    let cos = ok(all_sublocales(f))?;
    let regular = crate::bits::from_indices(f.regular_elements().into_iter().map(|e| e.0));
    let dense: Vec<Sublocale> = cos.sublocales().filter(Sublocale::contains_bottom).collect();
    ensure!(
        dense.iter().any(|s| s.carrier() == regular),
        "regular elements are not among the dense sublocales"
    );
    ensure!(
        dense.iter().all(|s| crate::bits::is_subset(regular, s.carrier())),
        "a dense sublocale misses a regular element"
    );
    Ok(())
}

/// `(is_subfit, every Boolean element of coS(L) is a meet of closed sublocales)`.
pub(crate) fn subfit_boolean(f: &Arc<FiniteFrame>) -> Result<(bool, bool), String> {
    let cos = ok(all_sublocales(f))?;
    let left = f.is_subfit();
    let right = cos
        .frame()
        .regular_elements()
        .into_iter()
        .all(|s| cos.is_meet_of_closed(s));
    ensure!(
        left == right,
        "subfit = {left}, Boolean elements meets of closed = {right}"
    );
    ensure!(
        subfit_via_sublocales(f) == left,
        "open-as-join-of-closed disagrees with subfitness"
    );
    Ok((left, right))
}

fn psi_phi(f: &ExtPartialRealFn) -> Verdict {
    let m = f.codomain();
    let g = ok(psi(f))?;
    ensure!(ok(phi(&g))? == *f, "phi(psi(f)) differs from f");
    ensure!(g.is_hausdorff() == f.is_hausdorff(), "psi changes Hausdorffness");
    ensure!(
        g.is_extended_continuous() == f.is_extended_continuous(),
        "psi changes extended continuity"
    );
    let lo = ExtPartialRealFn::constant(m, Rational::from_integer(-1));
    let hi = ExtPartialRealFn::constant(m, Rational::from_integer(1));
    ensure!(ok(lo.le(&g))? && ok(g.le(&hi))?, "psi leaves the unit range");
    if ok(lo.le(f))? && ok(f.le(&hi))? {
        ensure!(ok(psi(&ok(phi(f))?))? == *f, "psi(phi(g)) differs from g");
    }
    Ok(())
}

fn hausdorff_local(fs: &[ExtPartialRealFn]) -> Verdict {
    for f in fs {
        ensure!(
            f.is_hausdorff() == oracles::hausdorff_by_definition(f),
            "local test and defining inequalities disagree"
        );
    }
    for f in fs.iter().filter(|f| f.is_hausdorff()) {
        for g in fs.iter().filter(|g| g.is_hausdorff()) {
            ensure!(
                ok(f.le(g))? == ok(f.le_lower_only(g))?,
                "order on Hausdorff functions needs the upper trail"
            );
        }
    }
    Ok(())
}

fn disjointness_reduction(codomain: &Codomain, lower: &Trail, upper: &Trail) -> Verdict {
    let cellwise = match ExtPartialRealFn::new(codomain.clone(), lower.clone(), upper.clone()) {
        Ok(_) => true,
        Err(RealFnError::ViolatesDisjointness(_)) => false,
        Err(e) => return Err(e.to_string()),
    };
    let pair = RawPair {
        frame: codomain.get(),
        lower,
        upper,
    };
    let quantified = pair.disjoint_by_definition(&mut ChaCha8Rng::seed_from_u64(0), 1000);
    ensure!(
        cellwise == quantified,
        "cellwise disjointness {cellwise}, quantified {quantified}"
    );
    Ok(())
}

/// The last function is a competitor bound for the family before it.
fn hbar_bounds(codomain: &Codomain, fs: &[ExtPartialRealFn]) -> Verdict {
    let (competitor, family) = fs.split_last().ok_or("empty instance")?;
    let j = ok(join_hausdorff(codomain, family))?;
    let m = ok(meet_hausdorff(codomain, family))?;
    ensure!(j.is_hausdorff() && m.is_hausdorff(), "join or meet is not Hausdorff");
    for f in family {
        ensure!(ok(f.le(&j))?, "join is not an upper bound");
        ensure!(ok(m.le(f))?, "meet is not a lower bound");
    }
    if let [single] = family {
        ensure!(
            j == *single && m == *single,
            "join or meet of one function differs from it"
        );
    }
    if competitor.is_hausdorff() {
        let above = family.iter().map(|f| f.le(competitor)).collect::<Result<Vec<_>, _>>();
        if ok(above)?.into_iter().all(|b| b) {
            ensure!(ok(j.le(competitor))?, "join is not below a competing upper bound");
        }
        let below = family.iter().map(|f| competitor.le(f)).collect::<Result<Vec<_>, _>>();
        if ok(below)?.into_iter().all(|b| b) {
            ensure!(ok(competitor.le(&m))?, "meet is not above a competing lower bound");
        }
    }
    Ok(())
}

fn gamma_delta(frame: &Arc<FiniteFrame>, kind: CodomainKind, f: &ExtPartialRealFn) -> Verdict {
    match kind {
        CodomainKind::Frame | CodomainKind::Cos => {
            ensure!(f.is_hausdorff(), "sample is not Hausdorff");
            let g = ok(gamma(f))?;
            ensure!(g.is_extended_continuous(), "gamma image is not extended continuous");
            ensure!(ok(delta(&g, f.codomain()))? == *f, "delta(gamma(f)) differs from f");
            if kind == CodomainKind::Cos {
                ensure!(
                    f.is_real_valued() == g.joins_to_top(),
                    "real-valued does not match joining to top after gamma"
                );
            }
        }
        CodomainKind::Booleanization => {
            ensure!(f.is_extended_continuous(), "sample is not extended continuous");
            let parent = Codomain::frame(frame.clone());
            let back = ok(delta(f, &parent))?;
            ensure!(back.is_hausdorff(), "delta image is not Hausdorff");
            ensure!(ok(gamma(&back))? == *f, "gamma(delta(g)) differs from g");
        }
    }
    Ok(())
}

fn eqextdisc_frame(f: &Arc<FiniteFrame>) -> Verdict {
    let m = Codomain::frame(f.clone());
    let bars = f
        .elements()
        .map(|a| ExtPartialRealFn::chi_bar(&m, f.pstar(a), f.pstar(f.pstar(a))))
        .collect::<Result<Vec<_>, _>>();
    let bars = ok(bars)?;
    let decision = bars.iter().all(ExtPartialRealFn::is_extended_continuous);
    ensure!(
        decision == f.is_extremally_disconnected(),
        "characteristic-function decision {decision} disagrees with a* ∨ a** = 1 scan"
    );
    for bar in &bars {
        ensure!(bar.is_hausdorff(), "χ̄ built from a* and a** is not Hausdorff");
    }
    Ok(())
}

fn real_valued_cases(f: &Arc<FiniteFrame>) -> Verdict {
    let m = Codomain::frame(f.clone());
    if f.len() < 2 {
        // 0 = 1: every function is real-valued
        return Ok(());
    }
    for inf in [
        ExtPartialRealFn::plus_infinity(&m),
        ExtPartialRealFn::minus_infinity(&m),
    ] {
        ensure!(
            !inf.is_real_valued() && !inf.is_real_valued_star(),
            "an infinite constant counts as real-valued"
        );
    }
    for r in [
        Rational::from_integer(0),
        Rational::from_integer(1),
        Rational::new(-1, 2),
    ] {
        let c = ExtPartialRealFn::constant(&m, r);
        ensure!(
            c.is_real_valued() && c.is_real_valued_star(),
            "constant {r} is not real-valued"
        );
    }
    for a in f.regular_elements() {
        let bar = ok(ExtPartialRealFn::chi_bar(&m, a, f.pstar(a)))?;
        ensure!(
            !bar.is_real_valued() && !bar.is_real_valued_star(),
            "χ̄ counts as real-valued"
        );
    }
    Ok(())
}

/// The last function is a real-valued upper bound of the others.
fn dedekind(codomain: &Codomain, fs: &[ExtPartialRealFn]) -> Verdict {
    let (bound, family) = fs.split_last().ok_or("empty instance")?;
    for f in fs {
        ensure!(
            f.is_hausdorff() && f.is_real_valued(),
            "family member or bound is not real-valued Hausdorff"
        );
    }
    for f in family {
        ensure!(ok(f.le(bound))?, "bound is not an upper bound");
    }
    let j = ok(join_hausdorff(codomain, family))?;
    ensure!(
        j.is_real_valued(),
        "join of a bounded real-valued family is not real-valued"
    );
    ensure!(ok(j.le(bound))?, "join exceeds the bound");
    Ok(())
}

fn lsc_eq(f: &ExtPartialRealFn) -> Verdict {
    if !f.is_hausdorff() {
        return Ok(());
    }
    let real = f.is_real_valued();
    ensure!(
        ok(f.is_lsc())? == (real && ok(f.is_lsc_extended())?),
        "LSC differs from F ∩ extended LSC"
    );
    ensure!(
        ok(f.is_usc())? == (real && ok(f.is_usc_extended())?),
        "USC differs from F ∩ extended USC"
    );
    Ok(())
}

/// `l_{a,q}` over probes `q` and the limits `χ̄_{𝔠(a),𝔬(a)}`, each above `f`.
pub fn meet_density_family(f: &ExtPartialRealFn) -> Result<Vec<ExtPartialRealFn>, RealFnError> {
    let codomain = f.codomain();
    let cos = codomain.require_cos()?;
    let m = codomain.get();
    let parent = cos.parent();
    let above = |v| {
        let vv = m.pstar(m.pstar(v));
        parent.elements().filter(move |&a| m.leq(vv, cos.closed(a)))
    };
    let mut family = Vec::new();
    for q in oracles::probes(&f.cuts()) {
        for a in above(f.eval(TrailKind::Lower, &q, crate::realfn::Side::At)) {
            family.push(ExtPartialRealFn::l_aq(codomain, a, q)?);
        }
    }
    for a in above(f.lower().first()) {
        family.push(ExtPartialRealFn::l_limit(codomain, a)?);
    }
    Ok(family)
}

/// Reconstructs `f` as a meet of functions from [`meet_density_family`].
pub fn meet_density_check(f: &ExtPartialRealFn) -> Result<bool, HarnessError> {
    let cos = f.codomain().require_cos()?;
    if let Some(fail) = cos.parent().subfit_failure() {
        return Err(HarnessError::NotSubfit {
            a: cos.parent().name_of(fail.a).to_string(),
            b: cos.parent().name_of(fail.b).to_string(),
        });
    }
    let family = meet_density_family(f)?;
    for l in &family {
        if !l.is_lsc_extended()? || !f.le(l)? {
            return Ok(false);
        }
    }
    Ok(meet_hausdorff(f.codomain(), &family)? == *f)
}

fn meet_density_verdict(codomain: &Codomain, f: &ExtPartialRealFn) -> Verdict {
    ensure!(f.codomain().same(codomain), "codomain mismatch");
    ensure!(f.is_extended_continuous(), "sample is not extended continuous");
    ensure!(ok(meet_density_check(f))?, "meet of the l-family differs from f");
    Ok(())
}

/// `[f]` or `[f, g]` with `f ≤ g`.
fn regularization(fs: &[ExtPartialRealFn]) -> Verdict {
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    for f in fs {
        let r = ok(lower_regularization(f))?;
        let fo = &r.function;
        ensure!(ok(fo.le(f))?, "lower regularization is not below f");
        ensure!(
            ok(lower_regularization(fo))?.function == *fo,
            "lower regularization is not idempotent"
        );
        ensure!(ok(fo.is_lsc_extended())?, "lower regularization has non-closed values");
        ensure!(
            r.boundary_holds == (fo.lower().first() == f.frame().top()),
            "boundary flag is wrong"
        );
        if f.is_real_valued() {
            ensure!(
                fo.lower().last() == f.frame().bottom(),
                "lower regularization of a real-valued f does not end at 0"
            );
        }
        if ok(f.is_lsc_extended())? && f.is_hausdorff() {
            ensure!(
                *fo == *f,
                "lower regularization moves an extended lsc Hausdorff function"
            );
        }
        let u = ok(upper_regularization(f))?;
        let fu = &u.function;
        ensure!(ok(f.le(fu))?, "upper regularization is not above f");
        ensure!(
            ok(upper_regularization(fu))?.function == *fu,
            "upper regularization is not idempotent"
        );
        ensure!(ok(fu.is_usc_extended())?, "upper regularization has non-closed values");
        ensure!(
            ok(upper_regularization_direct(f))? == u,
            "two forms of the upper regularization disagree"
        );
        lowers.push(r.function);
        uppers.push(u.function);
    }
    if let [f, g] = fs {
        ensure!(ok(f.le(g))?, "instance pair is not ordered");
        ensure!(ok(lowers[0].le(&lowers[1]))?, "lower regularization is not monotone");
        ensure!(ok(uppers[0].le(&uppers[1]))?, "upper regularization is not monotone");
    }
    Ok(())
}

fn spatial_points(space: &FiniteSpace, points: &[PointFn]) -> Verdict {
    let failed = match points {
        [phi] => ok(space.point_mismatches(phi))?,
        [phi, psi] => ok(space.pair_mismatches(phi, psi))?,
        _ => return Err("expected one or two point functions".into()),
    };
    ensure!(failed.is_empty(), "failed comparisons: {}", failed.join(", "));
    Ok(())
}

fn diagram_frame(f: &Arc<FiniteFrame>) -> Verdict {
    let m = Codomain::frame(f.clone());
    for a in f.elements().filter(|&a| f.is_complemented(a)) {
        let chi = ok(ExtPartialRealFn::chi(&m, a, f.pstar(a)))?;
        ensure!(chi.is_continuous(), "χ of a complemented pair is not continuous");
        ensure!(ok(chi.coz())? == a, "complemented element is not the cozero of its χ");
    }
    Ok(())
}

fn diagram_fn(frame: &Arc<FiniteFrame>, kind: CodomainKind, f: &ExtPartialRealFn) -> Verdict {
    match kind {
        CodomainKind::Frame => {
            if f.is_continuous() {
                ensure!(
                    frame.is_complemented(ok(f.coz())?),
                    "cozero element is not complemented"
                );
                let cos = Codomain::sublocales(Arc::new(ok(all_sublocales(frame))?));
                ensure!(
                    ok(f.embed_closed(&cos))?.is_continuous(),
                    "C(L) does not land in C(coS(L))"
                );
            }
            if frame.is_boolean() && f.is_hausdorff() {
                ensure!(
                    f.is_extended_continuous(),
                    "Hausdorff function over a Boolean frame is not extended continuous"
                );
            }
        }
        CodomainKind::Cos => {
            let cos = ok(f.codomain().require_cos())?;
            if f.is_continuous() {
                ensure!(f.is_hausdorff() && f.is_real_valued(), "C(coS(L)) is not inside F(L)");
                ensure!(
                    f.is_extended_continuous(),
                    "C(coS(L)) is not inside the extended continuous functions"
                );
            }
            if f.is_hausdorff() && ok(f.is_lsc())? {
                ensure!(
                    f.is_real_valued() && ok(f.is_lsc_extended())?,
                    "LSC is not inside F ∩ extended LSC"
                );
            }
            if f.is_hausdorff() && ok(f.is_usc())? {
                ensure!(
                    f.is_real_valued() && ok(f.is_usc_extended())?,
                    "USC is not inside F ∩ extended USC"
                );
            }
            if cos.frame().is_boolean() && f.is_hausdorff() && f.is_real_valued() {
                ensure!(
                    f.is_continuous(),
                    "Boolean coS(L) but a real-valued Hausdorff function is not continuous"
                );
            }
            let n = f.neg();
            ensure!(n.neg() == *f, "negation is not an involution");
            ensure!(
                ok(n.is_lsc_extended())? == ok(f.is_usc_extended())?,
                "negation does not swap extended LSC/USC"
            );
            ensure!(ok(n.is_lsc())? == ok(f.is_usc())?, "negation does not swap LSC/USC");
            ensure!(n.is_hausdorff() == f.is_hausdorff(), "negation moves Hausdorffness");
            ensure!(
                n.is_real_valued() == f.is_real_valued(),
                "negation moves real-valuedness"
            );
        }
        CodomainKind::Booleanization => return Err("unexpected codomain".into()),
    }
    Ok(())
}
