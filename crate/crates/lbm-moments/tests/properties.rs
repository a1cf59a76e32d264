use lbm_moments::SchemeMatrices;
use lbm_poly::{int, rat, RatMatrix, Rational};
use lbm_scheme::{builtin, builtin_names};
use proptest::prelude::*;

fn scheme_and_state() -> impl Strategy<Value = (usize, Vec<(i64, i64)>)> {
    (0usize..12).prop_flat_map(|i| {
        let q = builtin(builtin_names().nth(i).unwrap()).unwrap().q();
        (Just(i), prop::collection::vec((-9i64..=9, 1i64..=5), q))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Advecting moments equals taking moments of advected populations.
    #[test]
    fn lambda_intertwines_streaming((idx, f) in scheme_and_state()) {
        let s = builtin(builtin_names().nth(idx).unwrap()).unwrap();
        let m = SchemeMatrices::build(&s).unwrap();
        let q = s.q();
        let col = |v: Vec<Rational>| RatMatrix::from_rows(v.into_iter().map(|x| vec![x]).collect()).unwrap();
        let f: Vec<Rational> = f.into_iter().map(|(n, d)| rat(n, d)).collect();
        let moments = m.moments.core().mul(&col(f.clone())).unwrap();
        for dir in 0..s.dim() {
            let lhs = m.lambda().coeffs(dir).mul(&moments).unwrap();
            let shifted: Vec<Rational> = (0..q).map(|j| &f[j] * int(s.velocities()[j][dir] as i64)).collect();
            let rhs = m.moments.core().mul(&col(shifted)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn directional_operators_commute() {
    for name in builtin_names() {
        let s = builtin(name).unwrap();
        let m = SchemeMatrices::build(&s).unwrap();
        for a in 0..s.dim() {
            for b in a + 1..s.dim() {
                let (la, lb) = (m.lambda().coeffs(a), m.lambda().coeffs(b));
                assert_eq!(la.mul(lb).unwrap(), lb.mul(la).unwrap(), "{name}");
            }
        }
    }
}
