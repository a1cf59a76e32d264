use lbm_poly::{int, Rational};
use lbm_scheme::{builtin, builtin_names, dump, parse_scheme, validate_scheme, Vel};
use proptest::prelude::*;

fn names() -> Vec<&'static str> {
    builtin_names().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn validation_ignores_velocity_order((idx, perm) in (0usize..12).prop_flat_map(|i| {
        let q = builtin(names()[i]).unwrap().q();
        (Just(i), Just((0..q).collect::<Vec<_>>()).prop_shuffle())
    })) {
        let s = builtin(names()[idx]).unwrap();
        let text = dump(&s);
        let mut lines: Vec<&str> = text.lines().collect();
        let start = lines.iter().position(|l| *l == "[velocities]").unwrap() + 1;
        let original: Vec<&str> = lines[start..start + s.q()].to_vec();
        for (slot, &j) in perm.iter().enumerate() {
            lines[start + slot] = original[j];
        }
        let shuffled = parse_scheme(&(lines.join("\n") + "\n")).unwrap();
        prop_assert_eq!(validate_scheme(&shuffled), validate_scheme(&s));
    }

    #[test]
    fn rows_scale_with_their_degree(idx in 0usize..12, k in 1i64..5, c in prop::array::uniform3(-3i64..=3)) {
        let s = builtin(names()[idx]).unwrap();
        let at = |f: i64| -> Vec<(Vel, Rational)> {
            vec![(Vel::Vx, int(f * c[0])), (Vel::Vy, int(f * c[1])), (Vel::Vz, int(f * c[2])), (Vel::Lambda, int(f))]
        };
        for m in s.moments() {
            let base = m.poly.eval(&at(1)).unwrap();
            let scaled = m.poly.eval(&at(k)).unwrap();
            prop_assert_eq!(scaled, base * int(k.pow(m.degree as u32)));
        }
    }
}
