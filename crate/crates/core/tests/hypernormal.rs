use std::collections::BTreeSet;

use nfc_algebra::{GaussRat, RatFn};
use nfc_core::{
    bracket, infinite_level, normalize, orbital_infinite, parametric_infinite, parametric_s_plus_1, symmetry_generators, BasisElem, Display,
    Key, LVec, LevelTag, Mode, Truncation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn elems(n: u32) -> impl Iterator<Item = BasisElem> {
    (1..=n).flat_map(|d| (0..=d).flat_map(move |j| [BasisElem::E(d - j, j), BasisElem::Theta1(d - j, j), BasisElem::Theta2(d - j, j)]))
}

fn linear(nvars: usize) -> LVec {
    LVec::from_terms(nvars, [(BasisElem::Theta1(0, 0), RatFn::from_int(nvars, 2)), (BasisElem::Theta2(0, 0), RatFn::from_int(nvars, 3))])
}

fn random_field(n: u32, seed: u64, zero: &[BasisElem]) -> LVec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = linear(0);
    for e in elems(n).filter(|e| !zero.contains(e)) {
        v.add_term(e, &RatFn::from_int(0, rng.gen_range(1..9)));
    }
    v
}

fn random_param_field(n: u32, seed: u64, zero: &[BasisElem]) -> LVec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu = RatFn::var(1, 0);
    let mut v = linear(1);
    for e in std::iter::once(BasisElem::E(0, 0)).chain(elems(n)) {
        let c0 = if e.index_sum() == 0 || zero.contains(&e) { 0 } else { rng.gen_range(1..9) };
        let c = RatFn::from_int(1, c0)
            .add(&mu.mul(&RatFn::from_int(1, rng.gen_range(1..9))))
            .add(&mu.pow(2).mul(&RatFn::from_int(1, rng.gen_range(1..9))));
        v.add_term(e, &c);
    }
    v
}

#[test]
fn generic_state_survivors_are_the_family() {
    for seed in [3, 7] {
        let res = infinite_level(&random_field(4, seed, &[]), 4).unwrap();
        assert_eq!(res.display, Some(Display::GenericB10));
        assert_eq!(res.survivor_elems(), Display::GenericB10.family(4));
        assert!(res.support_holds());
    }
}

#[test]
fn runs_are_deterministic() {
    let v = random_field(4, 11, &[]);
    assert_eq!(infinite_level(&v, 4).unwrap(), infinite_level(&v, 4).unwrap());
    assert_eq!(orbital_infinite(&v, 4).unwrap(), orbital_infinite(&v, 4).unwrap());
}

#[test]
fn orbital_removes_at_least_the_state_terms() {
    for zero in [vec![], vec![BasisElem::E(1, 0)]] {
        let v = random_field(4, 5, &zero);
        let state = infinite_level(&v, 4).unwrap().survivor_elems();
        let orbital = orbital_infinite(&v, 4).unwrap().survivor_elems();
        assert!(orbital.len() <= state.len(), "orbital {orbital:?} state {state:?}");
    }
}

#[test]
fn degenerate_state_family_carries_the_quadratic_band() {
    let res = infinite_level(&random_field(4, 7, &[BasisElem::E(1, 0)]), 4).unwrap();
    assert_eq!(res.display, Some(Display::GenericB01));
    let mut corrected = Display::GenericB01.family(4);
    corrected.extend([BasisElem::E(2, 0), BasisElem::E(1, 1), BasisElem::E(0, 2)]);
    assert_eq!(res.survivor_elems(), corrected);
}

#[test]
fn symmetries_commute_with_the_normal_form() {
    let eulerian = LVec::from_terms(0, [(BasisElem::E(2, 0), RatFn::from_int(0, 1)), (BasisElem::E(1, 1), RatFn::from_int(0, 4))]);
    let rotational = LVec::from_terms(0, [(BasisElem::Theta1(1, 0), RatFn::from_int(0, 5)), (BasisElem::Theta2(0, 2), RatFn::from_int(0, -1))]);
    for v in [linear(0).add(&eulerian), linear(0).add(&rotational)] {
        let res = infinite_level(&v, 4).unwrap();
        let gens = symmetry_generators(&res);
        assert!(!gens.is_empty(), "{:?}", res.display);
        for g in gens {
            assert!(bracket(&g, &res.field).truncate(4).is_zero());
        }
    }
}

#[test]
fn s_plus_one_support_in_every_mode() {
    let v = random_field(4, 13, &[]);
    for mode in [Mode::State, Mode::Orbital] {
        let res = normalize(mode, LevelTag::SPlus1, &v, Truncation::new(4)).unwrap();
        assert!(res.support_holds(), "{mode:?}: {:?}", res.support_violations);
    }
    let w = random_param_field(3, 13, &[]);
    let res = parametric_s_plus_1(&w, Truncation::parametric(3, 2, vec![0])).unwrap();
    assert!(res.support_holds(), "{:?}", res.support_violations);
}

#[test]
fn parametric_pivot_is_parameter_free() {
    let w = random_param_field(3, 17, &[]);
    let res = parametric_s_plus_1(&w, Truncation::parametric(3, 2, vec![0])).unwrap();
    let (s, p) = (res.classification.s.finite().unwrap(), res.classification.p.finite().unwrap());
    let pivot = BasisElem::E(s - p, p);
    assert!(!res.terms.coeff(&Key::new(pivot, vec![0])).is_zero());
    assert!(res.terms.keys().all(|k| k.elem != pivot || k.mu_degree() == 0));
}

#[test]
fn parametric_slice_at_zero_is_orbital() {
    let w = random_param_field(3, 19, &[]);
    let trunc = Truncation::parametric(3, 1, vec![0]);
    let param = parametric_infinite(&w, trunc.clone()).unwrap();
    let at_zero = w.map_coeffs(|c| c.substitute(&[Some(GaussRat::zero())]).unwrap());
    let orbital = orbital_infinite(&at_zero, 3).unwrap();
    assert_eq!(param.terms.slice(&trunc.zero_mu()), orbital.field);
}

#[test]
fn linear_input_stays_linear() {
    let res = infinite_level(&linear(0), 4).unwrap();
    assert_eq!(res.display, Some(Display::LinearPart));
    assert_eq!(res.survivor_elems(), BTreeSet::from([BasisElem::Theta1(0, 0), BasisElem::Theta2(0, 0)]));
}
