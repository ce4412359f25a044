use std::collections::BTreeSet;

use itertools::Itertools;
use pfr_core::rational::{ExtRational, Rational};
use pfr_core::realfn::{Codomain, ExtPartialRealFn};
use pfr_core::spatial::{t0_spaces, FiniteSpace, PointFn, SpatialError};
use pfr_core::{bits, registry};

fn grid(vals: &[(i64, i64)]) -> Vec<Rational> {
    vals.iter().map(|&(n, d)| Rational::new(n, d)).collect()
}

/// Brute force: T0 topologies on `n` labelled points, counted up to relabelling.
fn t0_classes(n: usize) -> usize {
    let subsets: Vec<u64> = (0..1u64 << n).collect();
    let full = bits::full(n);
    let mut classes = BTreeSet::new();
    // each topology contains ∅ and X; choose the rest
    let middle: Vec<u64> = subsets.iter().copied().filter(|&s| s != 0 && s != full).collect();
    for choice in 0..1u64 << middle.len() {
        let mut opens: Vec<u64> = vec![0, full];
        opens.extend(bits::iter(choice).map(|i| middle[i]));
        let closed = opens.iter().all(|&a| {
            opens
                .iter()
                .all(|&b| opens.contains(&(a | b)) && opens.contains(&(a & b)))
        });
        if !closed {
            continue;
        }
        let t0 = (0..n)
            .tuple_combinations()
            .all(|(x, y)| opens.iter().any(|&u| bits::contains(u, x) != bits::contains(u, y)));
        if !t0 {
            continue;
        }
        let code = (0..n)
            .permutations(n)
            .map(|p| {
                let mut relabelled: Vec<u64> = opens
                    .iter()
                    .map(|&u| bits::from_indices(bits::iter(u).map(|i| p[i])))
                    .collect();
                relabelled.sort();
                relabelled
            })
            .min()
            .expect("at least one permutation");
        classes.insert(code);
    }
    classes.len()
}

#[test]
fn t0_spaces_match_brute_force() {
    for n in 1..=4 {
        assert_eq!(t0_spaces(n).len(), t0_classes(n), "{n} points");
    }
}

#[test]
fn open_frames_of_small_spaces() {
    assert!(pfr_core::frame::isomorphic(
        FiniteSpace::sierpinski().open_frame().poset(),
        registry::c3().poset()
    ));
    assert!(pfr_core::frame::isomorphic(
        FiniteSpace::discrete(2).open_frame().poset(),
        registry::d4().poset()
    ));
    assert!(pfr_core::frame::isomorphic(
        FiniteSpace::w5_space().open_frame().poset(),
        registry::w5().poset()
    ));
}

#[test]
fn indiscrete_space_is_rejected() {
    let err = FiniteSpace::new("I2", vec!["a".into(), "b".into()], vec![0, 0b11]).unwrap_err();
    assert!(matches!(err, SpatialError::NotT0 { .. }));
}

/// Lower semicontinuity by definition: `{x : φ(x) > r}` open for each `r`.
fn lsc_by_definition(x: &FiniteSpace, phi: &PointFn) -> bool {
    let mut levels: Vec<ExtRational> = phi.values.clone();
    levels.push(ExtRational::NegInf);
    levels.into_iter().all(|r| {
        let set = bits::from_indices((0..x.len()).filter(|&i| phi.values[i] > r));
        x.is_open(set)
    })
}

#[test]
fn semicontinuity_agrees_with_definition() {
    let g = grid(&[(0, 1), (1, 2), (1, 1)]);
    for n in 1..=3 {
        for x in t0_spaces(n) {
            for phi in x.grid_functions(&g, true).unwrap() {
                let by_def = lsc_by_definition(&x, &phi);
                assert_eq!(x.is_lsc_point(&phi), by_def);
                let f = x.omega(&phi).unwrap();
                assert_eq!(f.is_lsc_extended().unwrap(), by_def, "{} {:?}", x.name(), phi.display());
                assert_eq!(f.is_lsc().unwrap(), by_def && phi.is_finite());
                assert_eq!(x.omega_inverse(&f).unwrap(), phi);
            }
        }
    }
}

#[test]
fn documented_sweeps() {
    let s = FiniteSpace::sierpinski()
        .sweep(&grid(&[(0, 1), (1, 1)]), false)
        .unwrap();
    assert_eq!((s.functions, s.mismatches.len()), (4, 0));
    let w = FiniteSpace::w5_space()
        .sweep(&grid(&[(0, 1), (1, 2), (1, 1)]), false)
        .unwrap();
    assert_eq!((w.functions, w.mismatches.len()), (27, 0));
    let one = FiniteSpace::discrete(1).sweep(&grid(&[(0, 1)]), true).unwrap();
    assert!(one.mismatches.is_empty());
}

#[test]
fn four_point_round_trips() {
    let g = grid(&[(0, 1), (1, 2), (1, 1)]);
    for x in t0_spaces(4).into_iter().chain([FiniteSpace::discrete(4)]) {
        let fns = x.grid_functions(&g, false).unwrap();
        assert_eq!(fns.len(), 81);
        for phi in fns {
            assert_eq!(x.omega_inverse(&x.omega(&phi).unwrap()).unwrap(), phi);
        }
    }
}

#[test]
fn grid_limit_is_enforced() {
    let g: Vec<Rational> = (0..40).map(Rational::from_integer).collect();
    assert!(matches!(
        FiniteSpace::discrete(4).grid_functions(&g, true),
        Err(SpatialError::GridTooLarge { .. })
    ));
}

#[test]
fn l_function_is_finite_on_its_closed_set() {
    let x = FiniteSpace::sierpinski();
    let (codomain, _) = x.sublocale_codomain().unwrap();
    let codomain: Codomain = codomain.clone();
    let p = x.point_mask(&["p"]).unwrap();
    let a = x.open_elem(p).unwrap();
    let l = ExtPartialRealFn::l_aq(&codomain, a, Rational::from_integer(2)).unwrap();
    let phi = x.omega_inverse(&l).unwrap();
    let q_idx = x.points().iter().position(|n| n == "q").unwrap();
    let p_idx = x.points().iter().position(|n| n == "p").unwrap();
    assert_eq!(phi.values[q_idx], ExtRational::Finite(Rational::from_integer(2)));
    assert_eq!(phi.values[p_idx], ExtRational::PosInf);
}
