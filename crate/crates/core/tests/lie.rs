use nfc_algebra::RatFn;
use nfc_core::{bracket, grade_of, graded_part, project_radical, rescale_action, BasisElem, Grading, LVec, TimeGen};
use proptest::prelude::*;

fn arb_elem(max_index: u32) -> impl Strategy<Value = BasisElem> {
    (0..=max_index, 0..=max_index, 0..3u8).prop_map(|(m, n, f)| match f {
        0 => BasisElem::E(m, n),
        1 => BasisElem::Theta1(m, n),
        _ => BasisElem::Theta2(m, n),
    })
}

fn arb_coeff() -> impl Strategy<Value = RatFn> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| RatFn::from_frac(0, p, q))
}

fn arb_lvec() -> impl Strategy<Value = LVec> {
    prop::collection::vec((arb_elem(3), arb_coeff()), 1..4).prop_map(|terms| LVec::from_terms(0, terms))
}

fn arb_time() -> impl Strategy<Value = TimeGen> {
    prop::collection::vec((0..3u32, 0..3u32, arb_coeff()), 1..3).prop_map(|terms| {
        let mut t = TimeGen::zero(0);
        for (m, n, c) in terms {
            t.add_term(m, n, &c);
        }
        t
    })
}

/// Random element homogeneous of grade `k` under `g`.
fn homogeneous(k: u32, g: Grading, picks: &[(u8, u32, RatFn)]) -> LVec {
    let mut v = LVec::zero(0);
    for (f, j, c) in picks {
        let elem = match f % 3 {
            0 => (k >= *j).then(|| BasisElem::E(k - j, *j)),
            fam => (k >= g.theta_offset + j).then(|| {
                let d = k - g.theta_offset;
                if fam == 1 { BasisElem::Theta1(d - j, *j) } else { BasisElem::Theta2(d - j, *j) }
            }),
        };
        if let Some(e) = elem {
            v.add_term(e, c);
        }
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn antisymmetry(u in arb_lvec(), w in arb_lvec()) {
        prop_assert_eq!(bracket(&u, &w), bracket(&w, &u).neg());
    }

    #[test]
    fn graded_compatibility(
        k in 0u32..5, l in 0u32..5, offset in 0u32..3,
        a in prop::collection::vec((0u8..3, 0u32..3, arb_coeff()), 1..4),
        b in prop::collection::vec((0u8..3, 0u32..3, arb_coeff()), 1..4),
    ) {
        let g = Grading::new(offset, 0);
        let (u, w) = (homogeneous(k, g, &a), homogeneous(l, g, &b));
        let br = bracket(&u, &w);
        prop_assert_eq!(graded_part(&br, k + l, g), br.clone());
        for e in br.support() {
            prop_assert_eq!(grade_of(e, g, 0), k + l);
        }
    }

    #[test]
    fn rescaling_is_a_ring_action(t1 in arb_time(), t2 in arb_time(), u in arb_lvec(), w in arb_lvec()) {
        prop_assert_eq!(rescale_action(&t1.mul(&t2), &u), rescale_action(&t1, &rescale_action(&t2, &u)));
        prop_assert_eq!(rescale_action(&t1, &u.add(&w)), rescale_action(&t1, &u).add(&rescale_action(&t1, &w)));
    }

    #[test]
    fn radical_is_an_ideal(u in arb_lvec(), w in arb_lvec()) {
        let br = bracket(&project_radical(&u), &w);
        prop_assert!(br.support().iter().all(|e| e.is_rotational()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobi(u in arb_lvec(), v in arb_lvec(), w in arb_lvec()) {
        let j = bracket(&u, &bracket(&v, &w)).add(&bracket(&v, &bracket(&w, &u))).add(&bracket(&w, &bracket(&u, &v)));
        prop_assert!(j.is_zero());
    }
}

#[test]
fn rotational_elements_commute_with_the_linear_part() {
    let v0 = LVec::linear_part(&RatFn::from_int(0, 2), &RatFn::from_int(0, 3));
    for e in [BasisElem::E(2, 1), BasisElem::Theta1(0, 3), BasisElem::Theta2(1, 1)] {
        assert!(bracket(&v0, &LVec::single(0, e, RatFn::one(0))).is_zero());
    }
}
