use nfc_algebra::{rf_rank, RatFn};
use nfc_core::{
    alpha_rank, assemble_block, assemble_d_rs, bracket, conv_matrix, display_d_rs, partition, rank_predict, recipe_for, u_for_level,
    BasisElem, LVec,
};
use proptest::prelude::*;

fn arb_band(len: usize) -> impl Strategy<Value = Vec<RatFn>> {
    prop::collection::vec(prop_oneof![Just(0i64), -4i64..=4], len)
        .prop_filter("nonzero", |v| v.iter().any(|x| *x != 0))
        .prop_map(|v| v.into_iter().map(|x| RatFn::from_int(0, x)).collect())
}

/// `(s, r, b_s, b_r)` with `1 <= s < r <= 6`.
fn arb_pair() -> impl Strategy<Value = (u32, u32, Vec<RatFn>, Vec<RatFn>)> {
    (1u32..=5).prop_flat_map(|s| (Just(s), s + 1..=6)).prop_flat_map(|(s, r)| (Just(s), Just(r), arb_band(s as usize + 1), arb_band(r as usize + 1)))
}

/// `(s, p, r, q, b_s, b_r)` with the leading pivots `b[s-p,p]`, `b[r-q,q]` nonzero.
fn arb_pivoted() -> impl Strategy<Value = (u32, u32, u32, u32, Vec<RatFn>, Vec<RatFn>)> {
    arb_pair().prop_filter_map("pivots", |(s, r, b_s, b_r)| {
        let p = b_s.iter().position(|c| !c.is_zero())? as u32;
        let q = b_r.iter().position(|c| !c.is_zero())? as u32;
        Some((s, p, r, q, b_s, b_r))
    })
}

fn grade_vec(d: u32, coeffs: &[RatFn]) -> LVec {
    LVec::from_terms(0, coeffs.iter().enumerate().map(|(j, c)| (BasisElem::E(d - j as u32, j as u32), c.clone())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn conv_columns_are_brackets(s in 1u32..=4, l in 0u32..=4, seed in arb_band(5)) {
        let b_s = &seed[..=s as usize];
        let m = conv_matrix(b_s, l as usize + 1, 0);
        let factor = RatFn::from_int(0, 2 * (s as i64 - l as i64));
        for j in 0..=l {
            let br = bracket(&grade_vec(s, b_s), &LVec::single(0, BasisElem::E(l - j, j), RatFn::one(0)));
            for i in 0..m.rows() {
                let elem = BasisElem::E(s + l - i as u32, i as u32);
                prop_assert_eq!(br.coeff(&elem), m.get(i, j as usize).mul(&factor));
            }
        }
    }

    #[test]
    fn rank_law((s, r, b_s, b_r) in arb_pair(), l in 0u32..=10) {
        let alpha = alpha_rank(&b_s, &b_r, 0);
        let m = conv_matrix(&b_r, l as usize + 1, 0).hstack(&conv_matrix(&b_s, (l + r - s) as usize + 1, 0)).unwrap();
        prop_assert_eq!(rf_rank(&m), rank_predict(l, alpha, r, s));
    }

    #[test]
    fn alpha_is_bounded((s, r, b_s, b_r) in arb_pair()) {
        let alpha = alpha_rank(&b_s, &b_r, 0);
        prop_assert!(alpha <= (r + s + 1) as usize && alpha >= (r + 1) as usize);
        prop_assert_eq!(rf_rank(&assemble_d_rs(&b_s, &b_r, 0)), alpha);
        prop_assert_eq!(rf_rank(&display_d_rs(&b_s, &b_r, 0)), alpha);
    }

    #[test]
    fn schur_rank_matches_direct_rank((s, p, r, q, b_s, b_r) in arb_pivoted(), l in 0u32..=6) {
        prop_assume!(l + r >= s);
        let u = u_for_level(&b_s, &b_r, p, q, l, 0).unwrap();
        let recipe = recipe_for(p, q);
        if p > q && l < p - q {
            prop_assert_eq!(u, 0);
            return Ok(());
        }
        let part = partition(recipe, s, p, r, q, l);
        let rows: Vec<usize> = part.b_rows.iter().chain(&part.c_rows).copied().collect();
        let cols: Vec<usize> = part.a_cols.iter().chain(&part.b_cols).copied().collect();
        let sub = assemble_block(&b_s, &b_r, l, 0).select(&rows, &cols);
        prop_assert_eq!(u, rf_rank(&sub) - part.b_cols.len());
    }

    #[test]
    fn u_is_scale_invariant((s, p, r, q, b_s, b_r) in arb_pivoted(), l in 0u32..=6, a in 1i64..=5, b in -5i64..=-1) {
        prop_assume!(l + r >= s);
        let scale = |v: &[RatFn], k: i64| v.iter().map(|c| c.mul(&RatFn::from_int(0, k))).collect::<Vec<_>>();
        let u = u_for_level(&b_s, &b_r, p, q, l, 0).unwrap();
        prop_assert_eq!(u_for_level(&scale(&b_s, a), &scale(&b_r, b), p, q, l, 0).unwrap(), u);
        let part = partition(recipe_for(p, q), s, p, r, q, l);
        prop_assert!(u <= part.a_cols.len().min(part.c_rows.len()));
    }
}
