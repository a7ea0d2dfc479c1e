//! Property tests over randomly solved arrays, through the public API.

use crate::algebra::{poly_apply, Field, Matrix, Scalar};
use crate::parameter_array::{d4_apply, solve_splits, validate_pa, D4Element, ParameterArray, Solution};
use crate::realization::{compute_p_u_polys, realize};
use crate::recognizer::{recognize, BidiagonalPair, Verdict};
use crate::suite::io::{array_json, parse_array};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(10007)), Just(Field::Prime(101))]
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-9i64..=-1, 1i64..=9]
}

/// Affine eigenvalue sequences solved from a random seed; `None` when the
/// seed happens to give an invalid array.
fn affine_array(field: Field, d: usize, c: [i64; 4], seed: i64) -> Option<ParameterArray> {
    let seq = |a: i64, b: i64| (0..=d).map(|i| field.from_i64(a + b * i as i64)).collect::<Vec<Scalar>>();
    match solve_splits(&seq(c[0], c[1]), &seq(c[2], c[3]), &field.from_i64(seed)).ok()? {
        Solution::Valid(arr) => Some(arr),
        Solution::Inconsistent(..) => None,
    }
}

fn arrays() -> impl Strategy<Value = ParameterArray> {
    (field_strategy(), 1usize..=5, [nonzero(), nonzero(), nonzero(), nonzero()], nonzero())
        .prop_filter_map("invalid draw", |(f, d, c, seed)| affine_array(f, d, c, seed))
}

#[test]
fn crate_example() {
    let f = Field::Rational;
    let theta: Vec<_> = [2, 0, -2].iter().map(|&k| f.from_i64(k)).collect();
    let Solution::Valid(arr) = solve_splits(&theta, &theta, &f.from_i64(4)).unwrap() else {
        panic!("expected a valid array");
    };
    let real = realize(&arr).unwrap();
    let a2 = &(real.a() * real.a()) - &Matrix::identity(f, 3).scale(&f.from_i64(2));
    assert_eq!(real.s(), &a2.scale(&f.ratio(1, 2).unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn switching_element_is_invertible_and_polynomial(arr in arrays()) {
        let r = realize(&arr).unwrap();
        let n = r.d() + 1;
        prop_assert_eq!(&(r.s() * r.s_inv()), &Matrix::identity(arr.field(), n));
        prop_assert_eq!(&(r.s_star() * r.s_star_inv()), &Matrix::identity(arr.field(), n));
        let pu = compute_p_u_polys(&r).unwrap();
        prop_assert_eq!(&poly_apply(&pu.u[r.d()], r.a()), r.s());
        // S commutes with A, S* with A*.
        prop_assert_eq!(&(r.s() * r.a()), &(r.a() * r.s()));
        prop_assert_eq!(&(r.s_star() * r.a_star()), &(r.a_star() * r.s_star()));
    }

    #[test]
    fn dihedral_images_stay_valid(arr in arrays()) {
        for g in D4Element::all() {
            let img = d4_apply(g, &arr).unwrap();
            prop_assert!(validate_pa(&img).is_valid(), "{} breaks validity", g);
        }
        for w in ["star,star", "down,down", "Down,Down", "star,down,star,Down"] {
            let g = D4Element::parse_word(w).unwrap();
            prop_assert_eq!(&d4_apply(g, &arr).unwrap(), &arr, "{}", w);
        }
    }

    #[test]
    fn recognizer_round_trip(arr in arrays()) {
        let r = realize(&arr).unwrap();
        let pair = BidiagonalPair::new(r.a().clone(), r.a_star().clone()).unwrap();
        match recognize(&pair).unwrap() {
            Verdict::Accept { array, s } => {
                prop_assert_eq!(&array, &arr);
                prop_assert_eq!(&s, r.s());
            }
            Verdict::Reject { reason } => prop_assert!(false, "rejected: {reason}"),
        }
    }

    #[test]
    fn array_json_round_trip(arr in arrays()) {
        let text = array_json(&arr);
        prop_assert_eq!(parse_array(&text, None).unwrap(), arr);
    }

    #[test]
    fn rational_strings_round_trip(n in any::<i64>(), m in 1i64..=i64::MAX, k in 0u32..6) {
        let q = Field::Rational;
        let x = q.ratio(n, m).unwrap().pow(k);
        prop_assert_eq!(q.parse(&x.to_string()).unwrap(), x.clone());
        let y = &x * &x;
        prop_assert_eq!(&(&y - &x) + &x, y);
    }
}
