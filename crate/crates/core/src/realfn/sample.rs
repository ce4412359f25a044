//! Deterministic random functions for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Codomain, ExtPartialRealFn, Trail, TrailKind};
use crate::order::Elem;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Regular antitone lower trail, upper trail its pseudocomplement.
    Hausdorff,
    /// Complemented antitone lower trail, upper trail its complement.
    ExtContinuous,
    /// Any antitone lower trail; upper values drawn between the previous
    /// upper value and the pseudocomplement of the lower value.
    ArbitraryIc,
    /// Closed lower values (needs a `coS(L)` codomain); upper as `ArbitraryIc`.
    ClosedLower,
    /// Closed lower values with upper trail their pseudocomplement.
    HausdorffClosedLower,
}

impl Profile {
    pub const ALL: [Profile; 5] = [
        Profile::Hausdorff,
        Profile::ExtContinuous,
        Profile::ArbitraryIc,
        Profile::ClosedLower,
        Profile::HausdorffClosedLower,
    ];

    fn needs_cos(self) -> bool {
        matches!(self, Profile::ClosedLower | Profile::HausdorffClosedLower)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub profile: Profile,
    pub max_breakpoints: usize,
    /// Probability (in percent) of forcing the outer values that make the
    /// sample real-valued.
    pub real_bias: u32,
}

impl SampleConfig {
    pub fn new(profile: Profile) -> Self {
        SampleConfig {
            profile,
            max_breakpoints: 4,
            real_bias: 50,
        }
    }
}

/// One sample from a fresh generator seeded with `seed`.
///
/// # Panics
/// If the profile needs a sublocale codomain and `codomain` is not one.
pub fn sample_fn(codomain: &Codomain, profile: Profile, seed: u64) -> ExtPartialRealFn {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SampleConfig::new(profile).sample(codomain, &mut rng)
}

/// A sample between the constants `−1` and `1` whose lower and upper values join to 1.
pub fn sample_unit_fn<R: Rng>(codomain: &Codomain, config: &SampleConfig, rng: &mut R) -> ExtPartialRealFn {
    let inner = config.sample_with_grid(codomain, rng, &unit_grid());
    let m = codomain.get();
    let one = Rational::from_integer(1);
    let splice = |t: &Trail, outer: (Elem, Elem)| {
        let mut bps = vec![-one];
        bps.extend_from_slice(t.breakpoints());
        bps.push(one);
        let mut vals = vec![outer.0];
        vals.extend_from_slice(t.values());
        vals.push(outer.1);
        Trail::raw(t.kind(), bps, vals)
    };
    ExtPartialRealFn::new(
        codomain.clone(),
        splice(inner.lower(), (m.top(), m.bottom())),
        splice(inner.upper(), (m.bottom(), m.top())),
    )
    .expect("splicing keeps the trail invariants")
}

fn wide_grid() -> Vec<Rational> {
    let mut g: Vec<Rational> = (1..=4)
        .flat_map(|d| (-2 * d..=2 * d).map(move |n| Rational::new(n, d)))
        .collect();
    g.sort();
    g.dedup();
    g
}

fn unit_grid() -> Vec<Rational> {
    let mut g: Vec<Rational> = (2..=6)
        .flat_map(|d| (-d + 1..d).map(move |n| Rational::new(n, d)))
        .collect();
    g.sort();
    g.dedup();
    g
}

fn pick<R: Rng>(rng: &mut R, xs: &[Elem]) -> Elem {
    xs[rng.random_range(0..xs.len())]
}

impl SampleConfig {
    pub fn sample<R: Rng>(&self, codomain: &Codomain, rng: &mut R) -> ExtPartialRealFn {
        self.sample_with_grid(codomain, rng, &wide_grid())
    }

    fn sample_with_grid<R: Rng>(&self, codomain: &Codomain, rng: &mut R, grid: &[Rational]) -> ExtPartialRealFn {
        let m = codomain.get().clone();
        let cos = if self.profile.needs_cos() {
            Some(
                codomain
                    .require_cos()
                    .expect("profile needs a sublocale codomain")
                    .clone(),
            )
        } else {
            None
        };
        let candidates: Vec<Elem> = match self.profile {
            Profile::Hausdorff => m.regular_elements(),
            Profile::ExtContinuous => m.elements().filter(|&a| m.is_complemented(a)).collect(),
            Profile::ArbitraryIc => m.elements().collect(),
            Profile::ClosedLower | Profile::HausdorffClosedLower => {
                let cos = cos.as_ref().expect("checked above");
                let mut c: Vec<Elem> = cos.parent().elements().map(|a| cos.closed(a)).collect();
                c.sort();
                c.dedup();
                c
            }
        };

        let mut k = rng.random_range(0..=self.max_breakpoints.min(grid.len()));
        let force_real = rng.random_range(0..100) < self.real_bias;
        if force_real {
            // a real-valued trail must move from 1 to 0 somewhere
            k = k.max(1);
        }
        let mut bps: Vec<Rational> = rand::seq::index::sample(rng, grid.len(), k)
            .into_iter()
            .map(|i| grid[i])
            .collect();
        bps.sort();

        let mut lower = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let v = if j == 0 && force_real {
                m.top()
            } else if j == k && force_real {
                m.bottom()
            } else if let Some(&prev) = lower.last() {
                if rng.random_bool(0.3) {
                    prev
                } else {
                    let below: Vec<Elem> = candidates.iter().copied().filter(|&c| m.leq(c, prev)).collect();
                    pick(rng, &below)
                }
            } else {
                pick(rng, &candidates)
            };
            lower.push(v);
        }

        let upper: Vec<Elem> = match self.profile {
            Profile::Hausdorff | Profile::ExtContinuous | Profile::HausdorffClosedLower => {
                lower.iter().map(|&v| m.pstar(v)).collect()
            }
            Profile::ArbitraryIc | Profile::ClosedLower => {
                let mut out: Vec<Elem> = Vec::with_capacity(k + 1);
                for &l in &lower {
                    let floor = out.last().copied().unwrap_or(m.bottom());
                    let ceiling = m.pstar(l);
                    let options: Vec<Elem> = m.elements().filter(|&x| m.leq(floor, x) && m.leq(x, ceiling)).collect();
                    out.push(pick(rng, &options));
                }
                out
            }
        };
        ExtPartialRealFn::new(
            codomain.clone(),
            Trail::raw(TrailKind::Lower, bps.clone(), lower),
            Trail::raw(TrailKind::Upper, bps, upper),
        )
        .expect("sampled trails satisfy the invariants")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;
    use crate::sublocale::all_sublocales;
    use std::sync::Arc;

    #[test]
    fn deterministic() {
        let m = Codomain::frame(registry::w5());
        assert_eq!(
            sample_fn(&m, Profile::Hausdorff, 42),
            sample_fn(&m, Profile::Hausdorff, 42)
        );
    }

    #[test]
    fn profiles_are_sound() {
        let m = Codomain::frame(registry::w5());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            assert!(SampleConfig::new(Profile::Hausdorff)
                .sample(&m, &mut rng)
                .is_hausdorff());
            assert!(SampleConfig::new(Profile::ExtContinuous)
                .sample(&m, &mut rng)
                .is_extended_continuous());
            SampleConfig::new(Profile::ArbitraryIc).sample(&m, &mut rng);
        }
        let cos = Codomain::sublocales(Arc::new(all_sublocales(&registry::c3()).unwrap()));
        for _ in 0..200 {
            let f = SampleConfig::new(Profile::ClosedLower).sample(&cos, &mut rng);
            assert!(f.is_lsc_extended().unwrap());
            let g = SampleConfig::new(Profile::HausdorffClosedLower).sample(&cos, &mut rng);
            assert!(g.is_lsc_extended().unwrap() && g.is_hausdorff());
        }
    }

    #[test]
    fn unit_samples_stay_in_range() {
        let m = Codomain::frame(registry::c3());
        let lo = ExtPartialRealFn::constant(&m, Rational::from_integer(-1));
        let hi = ExtPartialRealFn::constant(&m, Rational::from_integer(1));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let g = sample_unit_fn(&m, &SampleConfig::new(Profile::ArbitraryIc), &mut rng);
            assert!(lo.le(&g).unwrap() && g.le(&hi).unwrap());
            assert!(g.joins_to_top());
        }
    }
}
