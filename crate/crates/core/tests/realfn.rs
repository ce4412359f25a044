use std::sync::Arc;

use pfr_core::frame::enumerate_frames;
use pfr_core::harness::oracles::{hausdorff_by_definition, hausdorff_identities};
use pfr_core::rational::Rational;
use pfr_core::realfn::{
    delta, gamma, join_hausdorff, join_pointwise, lower_regularization, meet_hausdorff, phi, psi, sample_fn, Codomain,
    ExtPartialRealFn, Profile, RealFnError, Side, Trail, TrailKind,
};
use pfr_core::sublocale::all_sublocales;
use pfr_core::{registry, Elem, FiniteFrame};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn frames6() -> Vec<Arc<FiniteFrame>> {
    enumerate_frames(6).unwrap()
}

fn cos(f: &Arc<FiniteFrame>) -> Codomain {
    Codomain::sublocales(Arc::new(all_sublocales(f).unwrap()))
}

/// Every Hausdorff function whose breakpoints lie in `{0, 1}`.
fn hausdorff_on_two_cuts(m: &Codomain) -> Vec<ExtPartialRealFn> {
    let frame = m.get();
    let cuts = [q(0), q(1)];
    let regular = frame.regular_elements();
    let mut out = Vec::new();
    for &a in &regular {
        for &b in regular.iter().filter(|&&b| frame.leq(b, a)) {
            for &c in regular.iter().filter(|&&c| frame.leq(c, b)) {
                let lower = [a, b, c];
                let upper: Vec<Elem> = lower.iter().map(|&v| frame.pstar(v)).collect();
                let f = ExtPartialRealFn::new(
                    m.clone(),
                    Trail::from_cells(TrailKind::Lower, &cuts, &lower),
                    Trail::from_cells(TrailKind::Upper, &cuts, &upper),
                )
                .unwrap();
                out.push(f);
            }
        }
    }
    out
}

/// Join and meet are least and greatest among all Hausdorff bounds with the
/// same cuts, on completely regular codomains.
#[test]
fn hausdorff_join_is_least_by_exhaustion() {
    let codomains = [
        Codomain::frame(registry::d4()),
        Codomain::frame(registry::b8()),
        cos(&registry::c3()),
        cos(&registry::w5()),
    ];
    for m in &codomains {
        let all = hausdorff_on_two_cuts(m);
        for f in &all {
            for g in &all {
                let pair = [f.clone(), g.clone()];
                let j = join_hausdorff(m, &pair).unwrap();
                let w = meet_hausdorff(m, &pair).unwrap();
                for h in &all {
                    if f.le(h).unwrap() && g.le(h).unwrap() {
                        assert!(j.le(h).unwrap(), "{m:?} join not least", m = m.name());
                    }
                    if h.le(f).unwrap() && h.le(g).unwrap() {
                        assert!(h.le(&w).unwrap(), "meet not greatest");
                    }
                }
            }
        }
    }
}

#[test]
fn hausdorff_join_differs_from_pointwise_join() {
    let w5 = registry::w5();
    let m = Codomain::frame(w5.clone());
    let (x, y) = (w5.elem("x").unwrap(), w5.elem("y").unwrap());
    let a = ExtPartialRealFn::chi_bar(&m, x, y).unwrap();
    let b = ExtPartialRealFn::chi_bar(&m, y, x).unwrap();
    assert_eq!(
        join_hausdorff(&m, &[a.clone(), b.clone()]).unwrap(),
        ExtPartialRealFn::plus_infinity(&m)
    );
    // the cellwise join x ∨ y is not 1
    assert_ne!(w5.join(x, y), w5.top());
    assert_eq!(join_pointwise(&a, &b), Err(RealFnError::NotInCbar));
    assert!(!a.le(&b).unwrap() && !b.le(&a).unwrap());
}

#[test]
fn join_over_d4_of_swapped_characteristic_functions() {
    let d4 = registry::d4();
    let m = Codomain::frame(d4.clone());
    let (u, w) = (d4.elem("u").unwrap(), d4.elem("w").unwrap());
    let a = ExtPartialRealFn::chi(&m, u, w).unwrap();
    let b = ExtPartialRealFn::chi(&m, w, u).unwrap();
    let j = join_hausdorff(&m, &[a.clone(), b.clone()]).unwrap();
    assert_eq!(j.eval(TrailKind::Lower, &Rational::new(1, 2), Side::At), d4.top());
    // least among all exhaustively listed upper bounds
    for h in hausdorff_on_two_cuts(&m) {
        if a.le(&h).unwrap() && b.le(&h).unwrap() {
            assert!(j.le(&h).unwrap());
        }
    }
}

#[test]
fn constants_order_and_negation() {
    let m = Codomain::frame(registry::two());
    for r in -3..=3 {
        for s in -3..=3 {
            let (a, b) = (
                ExtPartialRealFn::constant(&m, q(r)),
                ExtPartialRealFn::constant(&m, q(s)),
            );
            assert_eq!(a.le(&b).unwrap(), r <= s);
        }
        assert_eq!(
            ExtPartialRealFn::constant(&m, q(r)).neg(),
            ExtPartialRealFn::constant(&m, q(-r))
        );
    }
    assert_eq!(
        ExtPartialRealFn::plus_infinity(&m).neg(),
        ExtPartialRealFn::minus_infinity(&m)
    );
    let zero = ExtPartialRealFn::constant(&m, q(0));
    assert_eq!(zero.eval(TrailKind::Lower, &q(0), Side::At), m.get().bottom());
    assert_eq!(zero.eval(TrailKind::Lower, &q(-1), Side::At), m.get().top());
    assert_eq!(zero.eval(TrailKind::Upper, &q(0), Side::At), m.get().bottom());
    assert_eq!(zero.eval(TrailKind::Upper, &q(1), Side::At), m.get().top());
}

#[test]
fn l_functions_over_cos_c3() {
    let c3 = registry::c3();
    let m = cos(&c3);
    let a = c3.elem("a").unwrap();
    for r in -2..=2 {
        let l = ExtPartialRealFn::l_aq(&m, a, q(r)).unwrap();
        assert!(l.is_lsc_extended().unwrap() && l.is_hausdorff() && l.is_extended_continuous());
        assert!(!l.is_lsc().unwrap());
        assert!(l.neg().is_usc_extended().unwrap());
    }
    // 𝔠(0) is the bottom of coS: l_{0,q} is the constant q
    assert_eq!(
        ExtPartialRealFn::l_aq(&m, c3.bottom(), q(1)).unwrap(),
        ExtPartialRealFn::constant(&m, q(1))
    );
    let cosf = m.cos().unwrap();
    let bar = ExtPartialRealFn::chi_bar(&m, cosf.open(a), cosf.closed(a)).unwrap();
    assert!(!bar.is_lsc_extended().unwrap());
    let f = ExtPartialRealFn::new(
        m.clone(),
        Trail::from_cells(
            TrailKind::Lower,
            &[q(0), q(1)],
            &[m.get().top(), cosf.open(a), m.get().bottom()],
        ),
        Trail::from_cells(
            TrailKind::Upper,
            &[q(0), q(1)],
            &[m.get().bottom(), m.get().bottom(), m.get().top()],
        ),
    )
    .unwrap();
    let r = lower_regularization(&f).unwrap().function;
    assert_eq!(
        r.eval(TrailKind::Lower, &Rational::new(1, 2), Side::At),
        m.get().bottom()
    );
}

#[test]
fn mixed_codomains_are_rejected() {
    let a = ExtPartialRealFn::constant(&Codomain::frame(registry::c3()), q(0));
    let b = ExtPartialRealFn::constant(&Codomain::frame(registry::w5()), q(0));
    assert_eq!(a.le(&b), Err(RealFnError::MixedCodomains));
    assert!(join_hausdorff(a.codomain(), &[a.clone(), b]).is_err());
}

fn target() -> impl Strategy<Value = (Codomain, u64)> {
    let frames = frames6();
    (0..frames.len() * 2, any::<u64>()).prop_map(move |(i, seed)| {
        let f = &frames[i / 2];
        let m = if i % 2 == 0 || f.len() > 5 {
            Codomain::frame(f.clone())
        } else {
            cos(f)
        };
        (m, seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn psi_phi_are_inverse((m, seed) in target(), profile in 0usize..3) {
        let f = sample_fn(&m, Profile::ALL[profile], seed);
        let g = psi(&f).unwrap();
        prop_assert_eq!(phi(&g).unwrap(), f.clone());
        prop_assert_eq!(g.is_hausdorff(), f.is_hausdorff());
        prop_assert_eq!(g.is_extended_continuous(), f.is_extended_continuous());
    }

    #[test]
    fn gamma_delta_are_inverse((m, seed) in target()) {
        let f = sample_fn(&m, Profile::Hausdorff, seed);
        let g = gamma(&f).unwrap();
        prop_assert!(g.is_extended_continuous());
        prop_assert_eq!(delta(&g, &m).unwrap(), f);
        let h = sample_fn(&m.boolean_codomain(), Profile::ExtContinuous, seed);
        let back = delta(&h, &m).unwrap();
        prop_assert!(back.is_hausdorff());
        prop_assert_eq!(gamma(&back).unwrap(), h);
    }

    #[test]
    fn local_hausdorff_test_matches_definition((m, seed) in target()) {
        let f = sample_fn(&m, Profile::ArbitraryIc, seed);
        prop_assert_eq!(f.is_hausdorff(), hausdorff_by_definition(&f));
        let h = sample_fn(&m, Profile::Hausdorff, seed);
        prop_assert!(hausdorff_by_definition(&h));
        prop_assert!(hausdorff_identities(&h).is_ok());
    }

    #[test]
    fn order_is_a_partial_order((m, seed) in target()) {
        let f = sample_fn(&m, Profile::ArbitraryIc, seed);
        let g = sample_fn(&m, Profile::ArbitraryIc, seed.wrapping_add(1));
        let h = sample_fn(&m, Profile::ArbitraryIc, seed.wrapping_add(2));
        prop_assert!(f.le(&f).unwrap());
        prop_assert!(f.le(&ExtPartialRealFn::plus_infinity(&m)).unwrap());
        if f.le(&g).unwrap() && g.le(&f).unwrap() {
            prop_assert_eq!(&f, &g);
        }
        if f.le(&g).unwrap() && g.le(&h).unwrap() {
            prop_assert!(f.le(&h).unwrap());
        }
        prop_assert_eq!(f.le(&g).unwrap(), g.neg().le(&f.neg()).unwrap());
        prop_assert_eq!(f.neg().neg(), f);
    }

    #[test]
    fn hausdorff_lattice_identities((m, seed) in target()) {
        let f = sample_fn(&m, Profile::Hausdorff, seed);
        let g = sample_fn(&m, Profile::Hausdorff, seed ^ 0x55);
        prop_assert_eq!(join_hausdorff(&m, std::slice::from_ref(&f)).unwrap(), f.clone());
        prop_assert_eq!(join_hausdorff(&m, &[ExtPartialRealFn::minus_infinity(&m), f.clone()]).unwrap(), f.clone());
        let j = join_hausdorff(&m, &[f.clone(), g.clone()]).unwrap();
        prop_assert_eq!(&j, &join_hausdorff(&m, &[g.clone(), f.clone()]).unwrap());
        prop_assert!(f.le(&j).unwrap() && g.le(&j).unwrap() && j.is_hausdorff());
        if f.is_hausdorff() && g.is_hausdorff() {
            prop_assert_eq!(f.le(&g).unwrap(), f.le_lower_only(&g).unwrap());
        }
    }
}
