//! Finite topological spaces and the bridge from point functions to
//! functions on the frame of opens.
//!
//! A point function `φ: X → ℚ ∪ {±∞}` becomes a function into `coS(𝒪X)`
//! through induced sublocales: `f(r,—) = 𝔰(φ⁻¹[−∞, r])` and
//! `f(—,s) = 𝔰(φ⁻¹[s, +∞])`.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask};
use crate::frame::{canonical_form, FiniteFrame, FrameError};
use crate::order::{Elem, FinitePoset};
use crate::rational::{ExtRational, Rational};
use crate::realfn::{join_hausdorff, meet_hausdorff, Codomain, ExtPartialRealFn, RealFnError, Trail, TrailKind};
use crate::sublocale::{all_sublocales_with_limit, Sublocale, SublocaleError, SublocaleFrame};

/// Largest number of grid functions a sweep will generate.
pub const GRID_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpatialError {
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("points {a} and {b} are topologically indistinguishable")]
    NotT0 { a: String, b: String },
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("a value of the function is not an induced sublocale")]
    NotInducedValued,
    #[error("grid sweep would produce {count} functions (limit {limit})")]
    GridTooLarge { count: usize, limit: usize },
    #[error("function does not live on this space's sublocale frame")]
    WrongCodomain,
    #[error("point function has {got} values for {expected} points")]
    WrongArity { got: usize, expected: usize },
    #[error(transparent)]
    Sublocale(#[from] SublocaleError),
    #[error(transparent)]
    RealFn(#[from] RealFnError),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// A finite T₀ space.
pub struct FiniteSpace {
    name: String,
    points: Vec<String>,
    opens: Vec<Mask>,
    frame: Arc<FiniteFrame>,
    cos: OnceLock<(Codomain, Vec<Elem>)>,
}

impl std::fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteSpace({}: {} points, {} opens)",
            self.name,
            self.points.len(),
            self.opens.len()
        )
    }
}

fn set_name(points: &[String], mask: Mask) -> String {
    let names: Vec<&str> = bits::iter(mask).map(|i| points[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

impl FiniteSpace {
    pub fn new(name: impl Into<String>, points: Vec<String>, opens: Vec<Mask>) -> Result<Self, SpatialError> {
        let n = points.len();
        if n > 16 {
            return Err(SpatialError::NotATopology("at most 16 points are supported".into()));
        }
        let full = bits::full(n);
        let mut set: BTreeSet<Mask> = opens.into_iter().collect();
        if set.iter().any(|&u| u & !full != 0) {
            return Err(SpatialError::NotATopology("open set mentions unknown points".into()));
        }
        if !set.contains(&0) || !set.contains(&full) {
            return Err(SpatialError::NotATopology("∅ and X must be open".into()));
        }
        for &u in &set {
            for &v in &set {
                if !set.contains(&(u | v)) || !set.contains(&(u & v)) {
                    return Err(SpatialError::NotATopology(format!(
                        "{} and {} lack a union or intersection",
                        set_name(&points, u),
                        set_name(&points, v)
                    )));
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if set.iter().all(|&u| bits::contains(u, a) == bits::contains(u, b)) {
                    return Err(SpatialError::NotT0 {
                        a: points[a].clone(),
                        b: points[b].clone(),
                    });
                }
            }
        }
        let mut opens: Vec<Mask> = std::mem::take(&mut set).into_iter().collect();
        opens.sort_by_key(|&m| (m.count_ones(), m));
        let name = name.into();
        let names = opens.iter().map(|&u| set_name(&points, u)).collect();
        let frame =
            FiniteFrame::from_relation(format!("O({name})"), names, |i, j| bits::is_subset(opens[i], opens[j]))?;
        Ok(FiniteSpace {
            name,
            points,
            opens,
            frame: Arc::new(frame),
            cos: OnceLock::new(),
        })
    }

    /// Points `p` (open) and `q`.
    pub fn sierpinski() -> Self {
        Self::new("Sierpinski", vec!["p".into(), "q".into()], vec![0, 0b01, 0b11]).expect("valid")
    }

    pub fn discrete(n: usize) -> Self {
        let points = (0..n).map(|i| format!("x{i}")).collect();
        Self::new(format!("Discrete{n}"), points, (0..1u64 << n).collect()).expect("valid")
    }

    /// Three points with opens `∅, {p}, {q}, {p,q}, X`.
    pub fn w5_space() -> Self {
        Self::new(
            "W5space",
            vec!["p".into(), "q".into(), "r".into()],
            vec![0, 0b001, 0b010, 0b011, 0b111],
        )
        .expect("valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn opens(&self) -> &[Mask] {
        &self.opens
    }

    pub fn is_open(&self, set: Mask) -> bool {
        self.opens
            .binary_search_by_key(&(set.count_ones(), set), |&m| (m.count_ones(), m))
            .is_ok()
    }

    pub fn is_closed(&self, set: Mask) -> bool {
        self.is_open(bits::full(self.len()) & !set)
    }

    /// The frame `𝒪X`.
    pub fn open_frame(&self) -> &Arc<FiniteFrame> {
        &self.frame
    }

    /// The frame element for an open set.
    pub fn open_elem(&self, set: Mask) -> Option<Elem> {
        self.opens.iter().position(|&u| u == set).map(Elem)
    }

    pub fn point_mask(&self, names: &[&str]) -> Result<Mask, SpatialError> {
        names.iter().try_fold(0, |m, n| {
            let i = self
                .points
                .iter()
                .position(|p| p == n)
                .ok_or_else(|| SpatialError::UnknownPoint(n.to_string()))?;
            Ok(m | 1 << i)
        })
    }

    /// Every point has an open neighbourhood `U` with `U ∖ {x}` open.
    pub fn is_td(&self) -> bool {
        (0..self.len()).all(|x| {
            self.opens
                .iter()
                .any(|&u| bits::contains(u, x) && self.is_open(u & !(1 << x)))
        })
    }

    pub fn is_t1(&self) -> bool {
        (0..self.len()).all(|x| self.is_closed(1 << x))
    }

    /// `𝔰(A)`: the opens `U` with `U = ⋃{V open : V ∩ A = U ∩ A}`.
    pub fn induced(&self, set: Mask) -> Sublocale {
        let carrier = self
            .opens
            .iter()
            .enumerate()
            .filter(|&(_, &u)| {
                let union = self
                    .opens
                    .iter()
                    .filter(|&&v| v & set == u & set)
                    .fold(0, |acc, &v| acc | v);
                union == u
            })
            .fold(0, |m, (i, _)| m | 1 << i);
        Sublocale::new(self.frame.clone(), carrier).expect("induced subsets are sublocales")
    }

    /// `coS(𝒪X)` together with `A ↦ 𝔰(A)` for every point set `A`.
    pub fn sublocale_codomain(&self) -> Result<(&Codomain, &[Elem]), SpatialError> {
        if self.cos.get().is_none() {
            let cos = Arc::new(all_sublocales_with_limit(&self.frame, 20)?);
            let induced = (0..1u64 << self.len())
                .map(|a| cos.element_of(&self.induced(a)))
                .collect::<Result<Vec<_>, _>>()?;
            let _ = self.cos.set((Codomain::sublocales(cos), induced));
        }
        let (c, i) = self.cos.get().expect("initialized above");
        Ok((c, i))
    }

    pub fn sublocale_frame(&self) -> Result<&Arc<SublocaleFrame>, SpatialError> {
        Ok(self.sublocale_codomain()?.0.cos().expect("built from sublocales"))
    }

    fn check_arity(&self, phi: &PointFn) -> Result<(), SpatialError> {
        if phi.values.len() != self.len() {
            return Err(SpatialError::WrongArity {
                got: phi.values.len(),
                expected: self.len(),
            });
        }
        Ok(())
    }

    /// `φ⁻¹(r, +∞]` is open for every rational `r`.
    pub fn is_lsc_point(&self, phi: &PointFn) -> bool {
        phi.strict_upper_sets().into_iter().all(|s| self.is_open(s))
    }

    /// `φ⁻¹[−∞, s)` is open for every rational `s`.
    pub fn is_usc_point(&self, phi: &PointFn) -> bool {
        phi.negate().strict_upper_sets().into_iter().all(|s| self.is_open(s))
    }

    pub fn omega(&self, phi: &PointFn) -> Result<ExtPartialRealFn, SpatialError> {
        self.check_arity(phi)?;
        let (codomain, induced) = self.sublocale_codomain()?;
        let cuts = phi.finite_values();
        let below = |pred: &dyn Fn(&ExtRational) -> bool| -> Elem { induced[phi.mask(pred) as usize] };
        let mut lower = vec![below(&|v| *v == ExtRational::NegInf)];
        let mut upper = vec![below(&|v| *v != ExtRational::NegInf)];
        for c in &cuts {
            let c = ExtRational::Finite(*c);
            lower.push(below(&|v| *v <= c));
            upper.push(below(&|v| *v > c));
        }
        Ok(ExtPartialRealFn::new(
            codomain.clone(),
            Trail::from_cells(TrailKind::Lower, &cuts, &lower),
            Trail::from_cells(TrailKind::Upper, &cuts, &upper),
        )?)
    }

    /// `φ(x)`: the least breakpoint from which `x` lies in the set inducing `f(r,—)`.
    pub fn omega_inverse(&self, f: &ExtPartialRealFn) -> Result<PointFn, SpatialError> {
        let (codomain, induced) = self.sublocale_codomain()?;
        if !f.codomain().same(codomain) {
            return Err(SpatialError::WrongCodomain);
        }
        let set_of = |e: Elem| -> Result<Mask, SpatialError> {
            induced
                .iter()
                .position(|&i| i == e)
                .map(|a| a as Mask)
                .ok_or(SpatialError::NotInducedValued)
        };
        let sets = f
            .lower()
            .values()
            .iter()
            .map(|&v| set_of(v))
            .collect::<Result<Vec<_>, _>>()?;
        let values = (0..self.len())
            .map(|x| match sets.iter().position(|&s| bits::contains(s, x)) {
                Some(0) => ExtRational::NegInf,
                Some(j) => ExtRational::Finite(f.lower().breakpoints()[j - 1]),
                None => ExtRational::PosInf,
            })
            .collect();
        Ok(PointFn { values })
    }

    /// All point functions with values drawn from `grid` (and optionally ±∞).
    pub fn grid_functions(&self, grid: &[Rational], allow_infinities: bool) -> Result<Vec<PointFn>, SpatialError> {
        let mut values: Vec<ExtRational> = grid.iter().map(|&r| ExtRational::Finite(r)).collect();
        if allow_infinities {
            values.insert(0, ExtRational::NegInf);
            values.push(ExtRational::PosInf);
        }
        values.sort();
        values.dedup();
        let count = values
            .len()
            .checked_pow(self.len() as u32)
            .filter(|&c| c <= GRID_LIMIT)
            .ok_or(SpatialError::GridTooLarge {
                count: values.len().saturating_pow(self.len() as u32),
                limit: GRID_LIMIT,
            })?;
        Ok((0..count)
            .map(|mut code| PointFn {
                values: (0..self.len())
                    .map(|_| {
                        let v = values[code % values.len()].clone();
                        code /= values.len();
                        v
                    })
                    .collect(),
            })
            .collect())
    }

    /// Exhaustive comparison of point-side and frame-side notions over a grid.
    pub fn sweep(&self, grid: &[Rational], allow_infinities: bool) -> Result<SweepReport, SpatialError> {
        let phis = self.grid_functions(grid, allow_infinities)?;
        let images = phis.iter().map(|phi| self.omega(phi)).collect::<Result<Vec<_>, _>>()?;
        let mut mismatches = Vec::new();
        for (phi, f) in phis.iter().zip(&images) {
            for check in self.point_mismatches_with(phi, f)? {
                mismatches.push(Mismatch::new(check, phi, None));
            }
        }
        let pairs: Vec<Vec<Mismatch>> = (0..phis.len())
            .into_par_iter()
            .map(|i| -> Result<Vec<Mismatch>, SpatialError> {
                let mut out = Vec::new();
                for j in i..phis.len() {
                    for check in self.pair_mismatches_with((&phis[i], &images[i]), (&phis[j], &images[j]))? {
                        out.push(Mismatch::new(check, &phis[i], Some(&phis[j])));
                    }
                }
                Ok(out)
            })
            .collect::<Result<_, _>>()?;
        mismatches.extend(pairs.into_iter().flatten());
        Ok(SweepReport {
            space: self.name.clone(),
            functions: phis.len(),
            pairs: phis.len() * (phis.len() + 1) / 2,
            mismatches,
        })
    }

    /// Names of the single-function comparisons that fail for `φ`.
    pub fn point_mismatches(&self, phi: &PointFn) -> Result<Vec<&'static str>, SpatialError> {
        self.point_mismatches_with(phi, &self.omega(phi)?)
    }

    /// Names of the two-function comparisons that fail for `(φ, ψ)`.
    pub fn pair_mismatches(&self, phi: &PointFn, psi: &PointFn) -> Result<Vec<&'static str>, SpatialError> {
        self.pair_mismatches_with((phi, &self.omega(phi)?), (psi, &self.omega(psi)?))
    }

    fn point_mismatches_with(&self, phi: &PointFn, f: &ExtPartialRealFn) -> Result<Vec<&'static str>, SpatialError> {
        let cos = self.sublocale_frame()?;
        let mut out = Vec::new();
        let back = self.omega_inverse(f)?;
        if back != *phi {
            out.push("omega-inverse-after-omega");
        } else if self.omega(&back)? != *f {
            out.push("omega-after-omega-inverse");
        }
        if !f.is_hausdorff() {
            out.push("omega-hausdorff");
        }
        let (lsc, usc) = (self.is_lsc_point(phi), self.is_usc_point(phi));
        if lsc != f.is_lsc_extended()? {
            out.push("lsc-extended");
        }
        if usc != f.is_usc_extended()? {
            out.push("usc-extended");
        }
        if (lsc && phi.is_finite()) != f.is_lsc()? {
            out.push("lsc");
        }
        if (usc && phi.is_finite()) != f.is_usc()? {
            out.push("usc");
        }
        if phi.is_finite() != f.is_real_valued() {
            out.push("real-valued");
        }
        if lsc && !self.lsc_values_match_open_preimages(phi, f, cos) {
            out.push("lsc-open-preimages");
        }
        if self.is_t1() && self.omega_point_witnesses(phi)? != *f {
            out.push("point-witness-meet");
        }
        Ok(out)
    }

    fn pair_mismatches_with(
        &self,
        (phi, f): (&PointFn, &ExtPartialRealFn),
        (psi, g): (&PointFn, &ExtPartialRealFn),
    ) -> Result<Vec<&'static str>, SpatialError> {
        let mut out = Vec::new();
        if phi.le(psi) != f.le(g)? || psi.le(phi) != g.le(f)? {
            out.push("order-embedding");
        }
        let joined = join_hausdorff(f.codomain(), &[f.clone(), g.clone()])?;
        if self.omega(&phi.max(psi))? != joined {
            out.push("join-transfer");
        }
        let met = meet_hausdorff(f.codomain(), &[f.clone(), g.clone()])?;
        if self.omega(&phi.min(psi))? != met {
            out.push("meet-transfer");
        }
        Ok(out)
    }

    /// `⋀ₓ Ω(g_x)` where `g_x` is `φ(x)` at `x` and `+∞` elsewhere.
    fn omega_point_witnesses(&self, phi: &PointFn) -> Result<ExtPartialRealFn, SpatialError> {
        let witnesses = (0..self.len())
            .map(|x| {
                let mut g = PointFn::constant(self.len(), ExtRational::PosInf);
                g.values[x] = phi.values[x].clone();
                self.omega(&g)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (codomain, _) = self.sublocale_codomain()?;
        Ok(meet_hausdorff(codomain, &witnesses)?)
    }

    /// For lsc `φ`, each `f(r,—)` is the closed sublocale of `φ⁻¹(r, +∞]`.
    fn lsc_values_match_open_preimages(&self, phi: &PointFn, f: &ExtPartialRealFn, cos: &SublocaleFrame) -> bool {
        let mut probes: Vec<Rational> = phi.finite_values();
        let first = probes.first().copied().unwrap_or_default() - Rational::from_integer(1);
        probes.push(first);
        probes.into_iter().all(|r| {
            let up = phi.mask(&|v| *v > ExtRational::Finite(r));
            match self.open_elem(up) {
                Some(u) => f.lower().eval(&r, crate::realfn::Side::At) == cos.closed(u),
                None => false,
            }
        })
    }

    pub fn to_file(&self) -> SpaceFile {
        SpaceFile {
            name: Some(self.name.clone()),
            points: self.points.clone(),
            opens: self
                .opens
                .iter()
                .map(|&u| bits::iter(u).map(|i| self.points[i].clone()).collect())
                .collect(),
        }
    }
}

/// `{"points": [...], "opens": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

impl SpaceFile {
    pub fn parse(text: &str) -> Result<Self, SpatialError> {
        serde_json::from_str(text).map_err(|e| SpatialError::NotATopology(e.to_string()))
    }

    pub fn to_space(&self) -> Result<FiniteSpace, SpatialError> {
        let opens = self
            .opens
            .iter()
            .map(|u| {
                u.iter().try_fold(0, |m, p| {
                    let i = self
                        .points
                        .iter()
                        .position(|q| q == p)
                        .ok_or_else(|| SpatialError::UnknownPoint(p.clone()))?;
                    Ok(m | 1 << i)
                })
            })
            .collect::<Result<Vec<Mask>, SpatialError>>()?;
        FiniteSpace::new(
            self.name.clone().unwrap_or_else(|| "X".into()),
            self.points.clone(),
            opens,
        )
    }
}

/// A function from points to `ℚ ∪ {±∞}`, indexed like the space's points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointFn {
    pub values: Vec<ExtRational>,
}

impl PointFn {
    pub fn new(values: Vec<ExtRational>) -> Self {
        PointFn { values }
    }

    pub fn constant(n: usize, v: ExtRational) -> Self {
        PointFn { values: vec![v; n] }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(ExtRational::is_finite)
    }

    pub fn le(&self, other: &PointFn) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn max(&self, other: &PointFn) -> PointFn {
        PointFn {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        }
    }

    pub fn min(&self, other: &PointFn) -> PointFn {
        PointFn {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        }
    }

    pub fn negate(&self) -> PointFn {
        PointFn {
            values: self.values.iter().map(ExtRational::neg).collect(),
        }
    }

    fn mask(&self, pred: &dyn Fn(&ExtRational) -> bool) -> Mask {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| pred(v))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    fn finite_values(&self) -> Vec<Rational> {
        let mut vs: Vec<Rational> = self.values.iter().filter_map(|v| v.as_finite().copied()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Every distinct set `φ⁻¹(r, +∞]` with `r ∈ ℚ`.
    fn strict_upper_sets(&self) -> Vec<Mask> {
        let mut sets = vec![
            self.mask(&|v| *v != ExtRational::NegInf),
            self.mask(&|v| *v == ExtRational::PosInf),
        ];
        for c in self.finite_values() {
            sets.push(self.mask(&|v| *v > ExtRational::Finite(c)));
        }
        sets
    }

    pub fn display(&self) -> Vec<String> {
        self.values.iter().map(ToString::to_string).collect()
    }
}

/// Grid sweep settings: `{"values": ["p/q", ...], "allow_infinities": bool}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub values: Vec<String>,
    #[serde(default)]
    pub allow_infinities: bool,
}

impl SweepConfig {
    pub fn grid(&self) -> Result<Vec<Rational>, crate::rational::RationalError> {
        self.values.iter().map(|s| crate::rational::parse_rational(s)).collect()
    }
}

/// One failed comparison in a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: String,
    pub phi: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<String>>,
}

impl Mismatch {
    fn new(check: &str, phi: &PointFn, psi: Option<&PointFn>) -> Self {
        Mismatch {
            check: check.to_string(),
            phi: phi.display(),
            psi: psi.map(PointFn::display),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub space: String,
    pub functions: usize,
    pub pairs: usize,
    pub mismatches: Vec<Mismatch>,
}

/// All T₀ topologies on `n ≤ 4` points, one per homeomorphism class.
pub fn t0_spaces(n: usize) -> Vec<FiniteSpace> {
    assert!(n <= 4, "exhaustive topology enumeration is limited to 4 points");
    let full = bits::full(n);
    let middle: Vec<Mask> = (1..full).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for choice in 0..1u64 << middle.len() {
        let mut opens: Vec<Mask> = vec![0, full];
        opens.extend(bits::iter(choice).map(|i| middle[i]));
        let set: BTreeSet<Mask> = opens.iter().copied().collect();
        let closed = set
            .iter()
            .all(|&u| set.iter().all(|&v| set.contains(&(u | v)) && set.contains(&(u & v))));
        if !closed {
            continue;
        }
        let points: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let Ok(space) = FiniteSpace::new(format!("T0_{n}"), points, opens) else {
            continue;
        };
        if seen.insert(canonical_form(&specialization_order(&space)).code) {
            out.push(space);
        }
    }
    for (i, s) in out.iter_mut().enumerate() {
        s.name = format!("T0_{n}_{i}");
    }
    out
}

/// `x ≤ y` iff every open set containing `x` contains `y`.
pub fn specialization_order(space: &FiniteSpace) -> FinitePoset {
    FinitePoset::from_relation(space.name.clone(), space.points.clone(), |x, y| {
        space
            .opens
            .iter()
            .all(|&u| !bits::contains(u, x) || bits::contains(u, y))
    })
    .expect("T0 spaces have a partial specialization order")
}
