use nfc_algebra::{GaussRat, RatFn};
use nfc_core::phase::is_resonant;
use nfc_core::{first_level, first_level_complex, parametric_first_level, BasisElem, Frequencies, PhaseExps, PhasePoly};
use proptest::prelude::*;

const N: u32 = 2;

fn freq(nvars: usize) -> Frequencies {
    Frequencies::new(RatFn::from_int(nvars, 1), RatFn::from_frac(nvars, 7, 19))
}

fn arb_exps() -> impl Strategy<Value = PhaseExps> {
    prop::array::uniform4(0u32..3).prop_filter("degree 1..=4", |e| (1..=4).contains(&e.iter().sum::<u32>()))
}

fn arb_real(nvars: usize) -> impl Strategy<Value = PhasePoly> {
    prop::collection::vec((arb_exps(), -5i64..=5, 1i64..=3), 1..6)
        .prop_map(move |terms| PhasePoly::from_terms(nvars, terms.into_iter().map(|(e, p, q)| (e, RatFn::from_frac(nvars, p, q)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn real_input_gives_real_coefficients(f in arb_real(0)) {
        let out = first_level(&f, N, &freq(0)).unwrap();
        for (e, c) in out.normal_form.iter() {
            prop_assert!(c.is_real(), "{} not real", e.label());
        }
    }

    #[test]
    fn low_degrees_are_resonant(f in arb_real(0)) {
        let out = first_level(&f, N, &freq(0)).unwrap();
        prop_assert!(out.field.iter().all(|(e, _)| e.iter().sum::<u32>() >= 2 * N || is_resonant(e)));
        prop_assert_eq!(out.generators.len() as u32, 2 * N - 1);
    }

    #[test]
    fn normalizing_twice_changes_nothing(f in arb_real(0)) {
        let once = first_level(&f, N, &freq(0)).unwrap();
        let twice = first_level_complex(&once.field, N, &freq(0)).unwrap();
        prop_assert!(twice.generators.iter().all(PhasePoly::is_zero));
        prop_assert_eq!(twice.normal_form, once.normal_form);
    }

    #[test]
    fn parametric_reduces_to_plain_at_zero(f in arb_real(1), g in arb_real(1)) {
        let mu = PhasePoly::constant(RatFn::var(1, 0));
        let with_mu = f.add(&g.mul(&mu));
        let param = parametric_first_level(&with_mu, N, &[0], 2, &freq(1)).unwrap();
        let plain = first_level(&f, N, &freq(1)).unwrap();
        let at_zero = param.normal_form.map_coeffs(|c| c.substitute(&[Some(GaussRat::zero())]).unwrap());
        prop_assert_eq!(at_zero, plain.normal_form);
    }
}

#[test]
fn radial_square_lands_on_e_one_zero() {
    let f = PhasePoly::from_terms(0, [([2, 0, 0, 0], RatFn::from_int(0, 1)), ([0, 2, 0, 0], RatFn::from_int(0, 1))]);
    let out = first_level(&f, N, &freq(0)).unwrap();
    assert_eq!(out.normal_form.coeff(&BasisElem::E(1, 0)), RatFn::from_int(0, 1));
    assert!(out.normal_form.coeff(&BasisElem::E(0, 1)).is_zero());
}
