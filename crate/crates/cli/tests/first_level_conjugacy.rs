use nfc_algebra::{GaussRat, RatFn};
use nfc_cli::oracle::{exp_action, VectorField};
use nfc_core::{generator_h, pushforward, real_to_complex, Frequencies, PhasePoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: u32 = 2;

/// `E_g`: the Euler field scaled by `g`.
fn euler(g: &PhasePoly) -> VectorField {
    VectorField { comps: std::array::from_fn(|k| g.mul(&PhasePoly::coordinate(0, k))) }
}

fn linear(freq: &Frequencies) -> VectorField {
    let rot = |k: usize, w: &RatFn, sign: i64| PhasePoly::coordinate(0, k).scale(w).scale_gauss(&GaussRat::i()).scale(&RatFn::from_int(0, sign));
    VectorField { comps: [rot(0, &freq.w1, 1), rot(1, &freq.w1, -1), rot(2, &freq.w2, 1), rot(3, &freq.w2, -1)] }
}

fn random_real(rng: &mut ChaCha8Rng) -> PhasePoly {
    let mut f = PhasePoly::zero(0);
    for _ in 0..rng.gen_range(2..7) {
        let mut e = [0u32; 4];
        for _ in 0..rng.gen_range(1..=3) {
            e[rng.gen_range(0..4)] += 1;
        }
        f.add_term(e, &RatFn::from_frac(0, rng.gen_range(-6..=6), rng.gen_range(1..=3)));
    }
    f
}

#[test]
fn generator_flow_matches_the_pushforward() {
    let degree = 2 * N;
    for seed in 0..12u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xf1_0000 + seed);
        let freq = Frequencies::new(RatFn::from_int(0, 1), RatFn::from_frac(0, rng.gen_range(5..30), 31));
        let v0 = linear(&freq);
        let mut f = real_to_complex(&random_real(&mut rng), degree);
        let mut opposite_differs = false;
        for k in 1..degree {
            let h = generator_h(&f, k, &freq).unwrap();
            let next = pushforward(&f, &h, k, degree, &freq);
            let v = v0.add(&euler(&f));
            let zero = PhasePoly::zero(0);
            let flowed = exp_action(&euler(&h), &zero, &v, degree + 1);
            assert_eq!(flowed, v0.add(&euler(&next)).truncate(degree + 1), "seed {seed}, k {k}");
            if !h.is_zero() {
                let back = exp_action(&euler(&h.neg()), &zero, &v, degree + 1);
                opposite_differs |= back != flowed;
            }
            f = next;
        }
        assert!(opposite_differs, "seed {seed}: every generator vanished");
    }
}
