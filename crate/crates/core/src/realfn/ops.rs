//! Constructors, lattice operations and the isomorphisms between classes.

use super::{Codomain, ExtPartialRealFn, RealFnError, Side, Trail, TrailKind};
use crate::order::Elem;
use crate::rational::{squash, unsquash, Rational};

fn one() -> Rational {
    Rational::from_integer(1)
}

impl ExtPartialRealFn {
    /// The constant `r`: `f(p,—) = 1` iff `p < r`, `f(—,q) = 1` iff `q > r`.
    pub fn constant(codomain: &Codomain, r: Rational) -> Self {
        let m = codomain.get();
        ExtPartialRealFn {
            codomain: codomain.clone(),
            lower: Trail::raw(TrailKind::Lower, vec![r], vec![m.top(), m.bottom()]),
            upper: Trail::raw(TrailKind::Upper, vec![r], vec![m.bottom(), m.top()]),
        }
        .canonical()
    }

    pub fn plus_infinity(codomain: &Codomain) -> Self {
        let m = codomain.get();
        Self::constant_trails(codomain, m.top(), m.bottom())
    }

    pub fn minus_infinity(codomain: &Codomain) -> Self {
        let m = codomain.get();
        Self::constant_trails(codomain, m.bottom(), m.top())
    }

    fn constant_trails(codomain: &Codomain, lower: Elem, upper: Elem) -> Self {
        ExtPartialRealFn {
            codomain: codomain.clone(),
            lower: Trail::constant(TrailKind::Lower, lower),
            upper: Trail::constant(TrailKind::Upper, upper),
        }
    }

    fn canonical(self) -> Self {
        ExtPartialRealFn {
            lower: self.lower.normalized(),
            upper: self.upper.normalized(),
            codomain: self.codomain,
        }
    }

    fn require_disjoint(codomain: &Codomain, a: Elem, b: Elem) -> Result<(), RealFnError> {
        let m = codomain.get();
        if m.meet(a, b) != m.bottom() {
            return Err(RealFnError::NotDisjoint {
                a: m.name_of(a).to_string(),
                b: m.name_of(b).to_string(),
            });
        }
        Ok(())
    }

    /// `χ_{a,b}`: `a` on `[0,1)` below, `b` on `(0,1]` above, 1 outside.
    pub fn chi(codomain: &Codomain, a: Elem, b: Elem) -> Result<Self, RealFnError> {
        Self::require_disjoint(codomain, a, b)?;
        let m = codomain.get();
        let bps = vec![Rational::from_integer(0), one()];
        Self::new(
            codomain.clone(),
            Trail::raw(TrailKind::Lower, bps.clone(), vec![m.top(), a, m.bottom()]),
            Trail::raw(TrailKind::Upper, bps, vec![m.bottom(), b, m.top()]),
        )
    }

    /// `χ̄_{a,b}`: lower trail constantly `a`, upper constantly `b`.
    pub fn chi_bar(codomain: &Codomain, a: Elem, b: Elem) -> Result<Self, RealFnError> {
        Self::require_disjoint(codomain, a, b)?;
        Ok(Self::constant_trails(codomain, a, b))
    }

    /// `l_{a,q}`: lower `1` before `q` and `𝔠(a)` from `q`; upper `0` up to
    /// `q` and `𝔬(a)` after it.
    pub fn l_aq(codomain: &Codomain, a: Elem, q: Rational) -> Result<Self, RealFnError> {
        let cos = codomain.require_cos()?;
        if a.0 >= cos.parent().len() {
            return Err(crate::frame::FrameError::UnknownElement(a.to_string()).into());
        }
        let m = codomain.get();
        Ok(ExtPartialRealFn {
            codomain: codomain.clone(),
            lower: Trail::raw(TrailKind::Lower, vec![q], vec![m.top(), cos.closed(a)]),
            upper: Trail::raw(TrailKind::Upper, vec![q], vec![m.bottom(), cos.open(a)]),
        }
        .canonical())
    }

    /// The limit of `l_{a,q}` as `q → −∞`: `χ̄_{𝔠(a),𝔬(a)}`.
    pub fn l_limit(codomain: &Codomain, a: Elem) -> Result<Self, RealFnError> {
        let cos = codomain.require_cos()?;
        Self::chi_bar(codomain, cos.closed(a), cos.open(a))
    }

    /// Pushes a function on `L` into `coS(L)` along `a ↦ 𝔠(a)`.
    pub fn embed_closed(&self, target: &Codomain) -> Result<Self, RealFnError> {
        let cos = target.require_cos()?;
        if **cos.parent() != **self.frame() {
            return Err(RealFnError::MixedCodomains);
        }
        Ok(ExtPartialRealFn {
            codomain: target.clone(),
            lower: self.lower.map_values(|v| cos.closed(v)),
            upper: self.upper.map_values(|v| cos.closed(v)),
        })
    }

    /// `(−f)(r,—) = f(—,−r)` and `(−f)(—,s) = f(−s,—)`.
    pub fn neg(&self) -> Self {
        let flip = |t: &Trail| {
            let bps = t.breakpoints().iter().rev().map(|b| -b).collect();
            let vals = t.values().iter().rev().copied().collect();
            Trail::raw(t.kind().flip(), bps, vals)
        };
        ExtPartialRealFn {
            codomain: self.codomain.clone(),
            lower: flip(&self.upper),
            upper: flip(&self.lower),
        }
    }

    /// Applies `op` to corresponding cells of two functions.
    fn cellwise(&self, other: &ExtPartialRealFn, op: impl Fn(Elem, Elem, Elem, Elem) -> (Elem, Elem)) -> Self {
        let cuts = super::merged_cuts([&self.lower, &self.upper, &other.lower, &other.upper]);
        let (fl, fu) = (self.lower.cells(&cuts), self.upper.cells(&cuts));
        let (gl, gu) = (other.lower.cells(&cuts), other.upper.cells(&cuts));
        let (lower, upper): (Vec<Elem>, Vec<Elem>) = (0..fl.len()).map(|j| op(fl[j], fu[j], gl[j], gu[j])).unzip();
        Self::from_cells(&self.codomain, &cuts, &lower, &upper)
    }
}

fn require_cbar(fs: &[&ExtPartialRealFn]) -> Result<(), RealFnError> {
    for f in fs {
        if !f.is_extended_continuous() {
            return Err(RealFnError::NotInCbar);
        }
    }
    fs[0].check_same(fs[1])
}

/// Join in `C̄(M)`: lower values joined, upper values met.
pub fn join_pointwise(f: &ExtPartialRealFn, g: &ExtPartialRealFn) -> Result<ExtPartialRealFn, RealFnError> {
    require_cbar(&[f, g])?;
    let m = f.frame().clone();
    Ok(f.cellwise(g, |fl, fu, gl, gu| (m.join(fl, gl), m.meet(fu, gu))))
}

/// Meet in `C̄(M)`.
pub fn meet_pointwise(f: &ExtPartialRealFn, g: &ExtPartialRealFn) -> Result<ExtPartialRealFn, RealFnError> {
    require_cbar(&[f, g])?;
    let m = f.frame().clone();
    Ok(f.cellwise(g, |fl, fu, gl, gu| (m.meet(fl, gl), m.join(fu, gu))))
}

fn require_hausdorff(codomain: &Codomain, fs: &[ExtPartialRealFn]) -> Result<(), RealFnError> {
    for f in fs {
        if !f.codomain.same(codomain) {
            return Err(RealFnError::MixedCodomains);
        }
        if !f.is_hausdorff() {
            return Err(RealFnError::NotHausdorff);
        }
    }
    Ok(())
}

/// Join of Hausdorff functions: with `h` the cellwise join of the lower
/// trails, the result has lower values `h**` and upper values `h*`.
///
/// The empty join is `−∞`.
pub fn join_hausdorff(codomain: &Codomain, fs: &[ExtPartialRealFn]) -> Result<ExtPartialRealFn, RealFnError> {
    require_hausdorff(codomain, fs)?;
    let m = codomain.get();
    let cuts = super::merged_cuts(fs.iter().map(|f| &f.lower));
    let h: Vec<Elem> = (0..=cuts.len())
        .map(|j| m.join_all(fs.iter().map(|f| f.lower.cells(&cuts)[j])))
        .collect();
    let lower: Vec<Elem> = h.iter().map(|&x| m.pstar(m.pstar(x))).collect();
    let upper: Vec<Elem> = h.iter().map(|&x| m.pstar(x)).collect();
    Ok(ExtPartialRealFn::from_cells(codomain, &cuts, &lower, &upper))
}

/// Meet of Hausdorff functions, dual to [`join_hausdorff`]; the empty meet is `+∞`.
pub fn meet_hausdorff(codomain: &Codomain, fs: &[ExtPartialRealFn]) -> Result<ExtPartialRealFn, RealFnError> {
    require_hausdorff(codomain, fs)?;
    let m = codomain.get();
    let cuts = super::merged_cuts(fs.iter().map(|f| &f.upper));
    let k: Vec<Elem> = (0..=cuts.len())
        .map(|j| m.join_all(fs.iter().map(|f| f.upper.cells(&cuts)[j])))
        .collect();
    let lower: Vec<Elem> = k.iter().map(|&x| m.pstar(x)).collect();
    let upper: Vec<Elem> = k.iter().map(|&x| m.pstar(m.pstar(x))).collect();
    Ok(ExtPartialRealFn::from_cells(codomain, &cuts, &lower, &upper))
}

/// Squeezes an extended function into `[−1, 1]` via `r ↦ r/(1+|r|)`.
pub fn psi(f: &ExtPartialRealFn) -> Result<ExtPartialRealFn, RealFnError> {
    let m = f.frame();
    let splice = |t: &Trail, outer: (Elem, Elem)| -> Result<Trail, RealFnError> {
        let mut bps = vec![-one()];
        for b in t.breakpoints() {
            bps.push(squash(b)?);
        }
        bps.push(one());
        let mut vals = vec![outer.0];
        vals.extend_from_slice(t.values());
        vals.push(outer.1);
        Ok(Trail::raw(t.kind(), bps, vals))
    };
    Ok(ExtPartialRealFn {
        codomain: f.codomain.clone(),
        lower: splice(&f.lower, (m.top(), m.bottom()))?,
        upper: splice(&f.upper, (m.bottom(), m.top()))?,
    }
    .canonical())
}

/// Inverse of [`psi`] on functions between the constants `−1` and `1`.
pub fn phi(g: &ExtPartialRealFn) -> Result<ExtPartialRealFn, RealFnError> {
    let lo = ExtPartialRealFn::constant(&g.codomain, -one());
    let hi = ExtPartialRealFn::constant(&g.codomain, one());
    if !(lo.le(g)? && g.le(&hi)?) {
        return Err(RealFnError::OutOfUnitRange);
    }
    let unsplice = |t: &Trail| -> Result<Trail, RealFnError> {
        let mut bps = Vec::new();
        let mut vals = vec![t.eval(&-one(), Side::RightLimit)];
        for b in t.breakpoints().iter().filter(|b| -one() < **b && **b < one()) {
            bps.push(unsquash(b)?);
            vals.push(t.eval(b, Side::RightLimit));
        }
        Ok(Trail::raw(t.kind(), bps, vals))
    };
    Ok(ExtPartialRealFn {
        codomain: g.codomain.clone(),
        lower: unsplice(&g.lower)?,
        upper: unsplice(&g.upper)?,
    }
    .canonical())
}

/// `β ∘ f` for Hausdorff `f`: a function into `𝔅(M)`.
pub fn gamma(f: &ExtPartialRealFn) -> Result<ExtPartialRealFn, RealFnError> {
    if !f.is_hausdorff() {
        return Err(RealFnError::NotHausdorff);
    }
    let b = f.codomain.booleanization();
    let target = f.codomain.boolean_codomain();
    Ok(ExtPartialRealFn {
        codomain: target,
        lower: f.lower.map_values(|v| b.beta.apply(v)),
        upper: f.upper.map_values(|v| b.beta.apply(v)),
    })
}

/// Inverse of [`gamma`]: reads an extended continuous function into `𝔅(M)`
/// as a function into `M` through the inclusion `𝔅(M) ⊆ M`.
pub fn delta(g: &ExtPartialRealFn, target: &Codomain) -> Result<ExtPartialRealFn, RealFnError> {
    let b = target.booleanization();
    if *b.frame != **g.frame() {
        return Err(RealFnError::NotBooleanizationOf(g.codomain.name().to_string()));
    }
    if !g.is_extended_continuous() {
        return Err(RealFnError::NotExtContinuous);
    }
    Ok(ExtPartialRealFn {
        codomain: target.clone(),
        lower: g.lower.map_values(|v| b.to_parent(v)),
        upper: g.upper.map_values(|v| b.to_parent(v)),
    })
}

/// A regularized function and whether its boundary condition holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularized {
    pub function: ExtPartialRealFn,
    /// Lower: the first lower value is 1. Upper: the last upper value is 1.
    pub boundary_holds: bool,
}

/// `f°`: lower values replaced by their closures, upper values by the
/// pseudocomplements of those closures.
pub fn lower_regularization(f: &ExtPartialRealFn) -> Result<Regularized, RealFnError> {
    let cos = f.codomain.require_cos()?.clone();
    let m = f.frame().clone();
    let closed = f.lower.map_values(|v| cos.closure(v));
    let bps = closed.breakpoints().to_vec();
    let upper: Vec<Elem> = closed.values().iter().map(|&v| m.pstar(v)).collect();
    let boundary_holds = closed.first() == m.top();
    let function = ExtPartialRealFn {
        codomain: f.codomain.clone(),
        upper: Trail::raw(TrailKind::Upper, bps, upper).normalized(),
        lower: closed,
    };
    Ok(Regularized {
        function,
        boundary_holds,
    })
}

/// `f⁻ = −(−f)°`.
pub fn upper_regularization(f: &ExtPartialRealFn) -> Result<Regularized, RealFnError> {
    let r = lower_regularization(&f.neg())?;
    Ok(Regularized {
        function: r.function.neg(),
        boundary_holds: r.boundary_holds,
    })
}

/// `f⁻` computed directly: upper values closed, lower values their pseudocomplements.
pub fn upper_regularization_direct(f: &ExtPartialRealFn) -> Result<Regularized, RealFnError> {
    let cos = f.codomain.require_cos()?.clone();
    let m = f.frame().clone();
    let closed = f.upper.map_values(|v| cos.closure(v));
    let bps = closed.breakpoints().to_vec();
    let lower: Vec<Elem> = closed.values().iter().map(|&v| m.pstar(v)).collect();
    let boundary_holds = closed.last() == m.top();
    let function = ExtPartialRealFn {
        codomain: f.codomain.clone(),
        lower: Trail::raw(TrailKind::Lower, bps, lower).normalized(),
        upper: closed,
    };
    Ok(Regularized {
        function,
        boundary_holds,
    })
}
