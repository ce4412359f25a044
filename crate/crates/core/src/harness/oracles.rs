//! Slow, independent reference procedures used to cross-check the engine.

use itertools::Itertools;
use rand::Rng;

use crate::order::{Elem, FinitePoset};
use crate::rational::Rational;
use crate::realfn::{ExtPartialRealFn, Side, TrailKind};

/// A labelled bounded lattice found by brute force: `leq[i * n + j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteLattice {
    pub n: usize,
    pub leq: Vec<bool>,
    pub distributive: bool,
}

impl BruteLattice {
    pub fn to_poset(&self, name: &str) -> FinitePoset {
        let names = (0..self.n).map(|i| format!("e{i}")).collect();
        FinitePoset::from_relation(name, names, |i, j| self.leq[i * self.n + j])
            .expect("brute-force orders are partial orders")
    }
}

fn least_upper_bound(leq: &[bool], n: usize, a: usize, b: usize) -> Option<usize> {
    let ubs: Vec<usize> = (0..n).filter(|&u| leq[a * n + u] && leq[b * n + u]).collect();
    ubs.iter().copied().find(|&u| ubs.iter().all(|&v| leq[u * n + v]))
}

fn greatest_lower_bound(leq: &[bool], n: usize, a: usize, b: usize) -> Option<usize> {
    let lbs: Vec<usize> = (0..n).filter(|&l| leq[l * n + a] && leq[l * n + b]).collect();
    lbs.iter().copied().find(|&l| lbs.iter().all(|&v| leq[v * n + l]))
}

/// Smallest relation code over all relabellings of the interior points.
fn brute_canonical(leq: &[bool], n: usize) -> Vec<bool> {
    let interior: Vec<usize> = (1..n.saturating_sub(1)).collect();
    let mut best: Option<Vec<bool>> = None;
    for perm in interior.iter().copied().permutations(interior.len()) {
        let map = |i: usize| if i == 0 || i == n - 1 { i } else { perm[i - 1] };
        let code: Vec<bool> = (0..n * n).map(|k| leq[map(k / n) * n + map(k % n)]).collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    best.unwrap_or_default()
}

/// One representative per isomorphism class of lattices with `n` elements
/// (distributive or not), found by filtering naturally labelled orders.
pub fn brute_force_lattices(n: usize) -> Vec<BruteLattice> {
    assert!(
        (1..=8).contains(&n),
        "brute-force lattice search is limited to 8 elements"
    );
    if n == 1 {
        return vec![BruteLattice {
            n: 1,
            leq: vec![true],
            distributive: true,
        }];
    }
    let pairs: Vec<(usize, usize)> = (1..n - 1).tuple_combinations().collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for choice in 0..1u64 << pairs.len() {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
            leq[i * n + n - 1] = true;
            leq[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if choice >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| !leq[a * n + b] || (0..n).all(|c| !leq[b * n + c] || leq[a * n + c])));
        if !transitive {
            continue;
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        let mut lattice = true;
        'pairs: for a in 0..n {
            for b in 0..n {
                match (least_upper_bound(&leq, n, a, b), greatest_lower_bound(&leq, n, a, b)) {
                    (Some(j), Some(m)) => {
                        join[a * n + b] = j;
                        meet[a * n + b] = m;
                    }
                    _ => {
                        lattice = false;
                        break 'pairs;
                    }
                }
            }
        }
        if !lattice || !seen.insert(brute_canonical(&leq, n)) {
            continue;
        }
        let distributive = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| meet[a * n + join[b * n + c]] == join[meet[a * n + b] * n + meet[a * n + c]]))
        });
        out.push(BruteLattice { n, leq, distributive });
    }
    out
}

/// Probe points: every breakpoint plus two points inside each open cell.
pub fn probes(cuts: &[Rational]) -> Vec<Rational> {
    let one = Rational::from_integer(1);
    let third = Rational::new(1, 3);
    let mut out = Vec::new();
    match (cuts.first(), cuts.last()) {
        (Some(&first), Some(&last)) => {
            out.extend([first - one - one, first - one]);
            for w in cuts.windows(2) {
                let gap = w[1] - w[0];
                out.extend([w[0] + gap * third, w[0] + gap * third * 2]);
            }
            out.extend([last + one, last + one + one]);
            out.extend_from_slice(cuts);
        }
        _ => out.extend([Rational::from_integer(0), one]),
    }
    out.sort();
    out.dedup();
    out
}

fn all_cuts(f: &ExtPartialRealFn) -> Vec<Rational> {
    f.cuts()
}

/// `f(r,—)* ≤ f(—,s)` and `f(—,s)* ≤ f(r,—)` for every ordered pair of probes `r < s`.
pub fn hausdorff_by_definition(f: &ExtPartialRealFn) -> bool {
    let m = f.frame();
    let ps = probes(&all_cuts(f));
    ps.iter().enumerate().all(|(i, r)| {
        ps[i + 1..].iter().all(|s| {
            let lo = f.eval(TrailKind::Lower, r, Side::At);
            let up = f.eval(TrailKind::Upper, s, Side::At);
            m.leq(m.pstar(lo), up) && m.leq(m.pstar(up), lo)
        })
    })
}

/// Points strictly above `r` reaching every cell to its right.
fn points_above(ps: &[Rational], r: &Rational) -> Vec<Rational> {
    let mut above: Vec<Rational> = ps.iter().filter(|p| *p > r).copied().collect();
    let next = above.first().copied().unwrap_or(*r + Rational::from_integer(2));
    above.push((*r + next) / Rational::from_integer(2));
    above
}

fn points_below(ps: &[Rational], s: &Rational) -> Vec<Rational> {
    let mut below: Vec<Rational> = ps.iter().filter(|p| *p < s).copied().collect();
    let prev = below.last().copied().unwrap_or(*s - Rational::from_integer(2));
    below.push((*s + prev) / Rational::from_integer(2));
    below
}

/// `f(r,—) = ⋁_{p>r} f(—,p)*` and `f(—,s) = ⋁_{p<s} f(p,—)*` at every probe,
/// plus `f(r,—) = ⋁_{p>r} f(p,—)**` and its upper mirror.
pub fn hausdorff_identities(f: &ExtPartialRealFn) -> Result<(), String> {
    let m = f.frame();
    let ps = probes(&all_cuts(f));
    for r in &ps {
        let lower = f.eval(TrailKind::Lower, r, Side::At);
        let above = points_above(&ps, r);
        let from_upper = m.join_all(above.iter().map(|p| m.pstar(f.eval(TrailKind::Upper, p, Side::At))));
        if from_upper != lower {
            return Err(format!(
                "lower value at {r} differs from the join of pseudocomplemented upper values above"
            ));
        }
        let regular = m.join_all(
            above
                .iter()
                .map(|p| m.pstar(m.pstar(f.eval(TrailKind::Lower, p, Side::At)))),
        );
        if regular != lower {
            return Err(format!(
                "lower value at {r} differs from the join of regularized lower values above"
            ));
        }
        let upper = f.eval(TrailKind::Upper, r, Side::At);
        let below = points_below(&ps, r);
        let from_lower = m.join_all(below.iter().map(|p| m.pstar(f.eval(TrailKind::Lower, p, Side::At))));
        if from_lower != upper {
            return Err(format!(
                "upper value at {r} differs from the join of pseudocomplemented lower values below"
            ));
        }
        let regular = m.join_all(
            below
                .iter()
                .map(|p| m.pstar(m.pstar(f.eval(TrailKind::Upper, p, Side::At)))),
        );
        if regular != upper {
            return Err(format!(
                "upper value at {r} differs from the join of regularized upper values below"
            ));
        }
    }
    Ok(())
}

/// Lower and upper trail values on raw trails, without any validation.
pub struct RawPair<'a> {
    pub frame: &'a crate::frame::FiniteFrame,
    pub lower: &'a crate::realfn::Trail,
    pub upper: &'a crate::realfn::Trail,
}

impl RawPair<'_> {
    fn disjoint_at(&self, r: &Rational, s: &Rational) -> bool {
        let m = self.frame;
        m.meet(self.lower.eval(r, Side::At), self.upper.eval(s, Side::At)) == m.bottom()
    }

    /// `(r,—) ∧ (—,s) = 0` for all probe pairs `r ≥ s` and `samples` random pairs.
    pub fn disjoint_by_definition<R: Rng>(&self, rng: &mut R, samples: usize) -> bool {
        let cuts = crate::realfn::merged_cuts([self.lower, self.upper]);
        let ps = probes(&cuts);
        let exhaustive = ps
            .iter()
            .enumerate()
            .all(|(i, r)| ps[..=i].iter().all(|s| self.disjoint_at(r, s)));
        let random = (0..samples).all(|_| {
            let r = ps[rng.random_range(0..ps.len())];
            let s = if rng.random_bool(0.5) {
                r
            } else {
                r - Rational::new(rng.random_range(0..8), rng.random_range(1..4))
            };
            self.disjoint_at(&r, &s)
        });
        exhaustive && random
    }
}

/// Cellwise join of lower values (`upper = false`) or upper values.
pub fn cellwise_join(fs: &[ExtPartialRealFn], upper: bool) -> (Vec<Rational>, Vec<Elem>) {
    let trails = fs.iter().map(|f| if upper { f.upper() } else { f.lower() });
    let cuts = crate::realfn::merged_cuts(trails.clone());
    let m = fs[0].frame();
    let cells: Vec<Vec<Elem>> = trails.map(|t| t.cells(&cuts)).collect();
    let joined = (0..=cuts.len())
        .map(|j| m.join_all(cells.iter().map(|c| c[j])))
        .collect();
    (cuts, joined)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts_match_known_sequences() {
        let all: Vec<usize> = (1..=7).map(|n| brute_force_lattices(n).len()).collect();
        assert_eq!(all, vec![1, 1, 1, 2, 5, 15, 53]);
        let distributive: Vec<usize> = (1..=7)
            .map(|n| brute_force_lattices(n).iter().filter(|l| l.distributive).count())
            .collect();
        assert_eq!(distributive, vec![1, 1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn probes_cover_cells() {
        let cuts = [Rational::from_integer(0), Rational::from_integer(1)];
        let ps = probes(&cuts);
        assert_eq!(ps.len(), 2 + 2 + 2 + 2);
        assert!(ps.contains(&Rational::new(1, 3)) && ps.contains(&Rational::new(2, 3)));
    }
}
