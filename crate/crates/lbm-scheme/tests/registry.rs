use lbm_scheme::{builtin, builtin_names, builtin_variant, dump, parse_scheme, validate_scheme, Group, Model, SchemeError};

// (name, q, conserved, family1, family2, family3)
const SIZES: [(&str, usize, usize, usize, usize, usize); 12] = [
    ("d2q9-iso", 9, 3, 3, 2, 1),
    ("d2q13-iso", 13, 3, 3, 4, 3),
    ("d3q19-iso", 19, 4, 6, 6, 3),
    ("d3q27-iso", 27, 4, 6, 7, 10),
    ("d3q33-iso", 33, 4, 6, 13, 10),
    ("d3q27-2-iso", 27, 4, 6, 10, 7),
    ("d2q13-th", 13, 4, 4, 4, 1),
    ("d2q17-th", 17, 4, 4, 7, 2),
    ("d2v17-th", 17, 4, 4, 7, 2),
    ("d2w17-th", 17, 4, 4, 7, 2),
    ("d3q33-th", 33, 5, 8, 16, 4),
    ("d3q27-2-th", 27, 5, 8, 13, 1),
];

#[test]
fn registry_lists_twelve_schemes() {
    let names: Vec<_> = builtin_names().collect();
    assert_eq!(names.len(), 12);
    for (n, ..) in SIZES {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn sizes_and_families() {
    for (name, q, n, f1, f2, f3) in SIZES {
        let s = builtin(name).unwrap();
        assert_eq!(s.q(), q, "{name}");
        assert_eq!(s.n_conserved(), n, "{name}");
        assert_eq!(s.group_size(Group::Family1), f1, "{name}");
        assert_eq!(s.group_size(Group::Family2), f2, "{name}");
        assert_eq!(s.group_size(Group::Family3), f3, "{name}");
        let thermal = name.ends_with("-th");
        assert_eq!(s.model() == Model::Thermal, thermal);
        assert_eq!(s.energy().is_some(), thermal);
    }
}

#[test]
fn d2q9_velocity_order() {
    let s = builtin("d2q9-iso").unwrap();
    let expect = [[0, 0], [1, 0], [0, 1], [-1, 0], [0, -1], [1, 1], [-1, 1], [-1, -1], [1, -1]];
    let got: Vec<[i32; 2]> = s.velocities().iter().map(|c| [c[0], c[1]]).collect();
    assert_eq!(got, expect);
}

#[test]
fn d2w17_uses_knight_moves() {
    let s = builtin("d2w17-th").unwrap();
    assert!(s.velocities().contains(&[2, 1, 0]));
    assert!(!s.velocities().contains(&[2, 0, 0]));
}

#[test]
fn every_builtin_validates() {
    for name in builtin_names() {
        let r = validate_scheme(&builtin(name).unwrap());
        assert!(r.ok(), "{name}: {r:?}");
    }
}

#[test]
fn verbatim_rows_break_orthogonality() {
    for (name, rows) in [("d2q17-th", ["tx", "h4"]), ("d2v17-th", ["tx", "h4"]), ("d2w17-th", ["qx", "h"])] {
        let s = builtin_variant(name, Some("verbatim")).unwrap();
        assert_eq!(s.variant(), Some("verbatim"));
        let r = validate_scheme(&s);
        assert!(r.homogeneous, "{name}");
        assert!(!r.orthogonal, "{name}");
        for row in rows {
            assert!(
                r.non_orthogonal.iter().any(|(a, b)| a == row || b == row),
                "{name}: {row} not flagged in {:?}",
                r.non_orthogonal
            );
        }
        assert!(!s.deviations().is_empty());
    }
}

#[test]
fn missing_variant_falls_back_to_default() {
    let s = builtin_variant("d2q9-iso", Some("verbatim")).unwrap();
    assert_eq!(s, builtin("d2q9-iso").unwrap());
    assert!(matches!(
        builtin("d2q9-iso").unwrap().with_variant("verbatim"),
        Err(SchemeError::UnknownVariant(..))
    ));
}

#[test]
fn unknown_scheme() {
    assert_eq!(builtin("d2q10-iso"), Err(SchemeError::UnknownScheme("d2q10-iso".into())));
}

#[test]
fn dump_round_trips_and_is_stable() {
    for name in builtin_names() {
        let base = builtin(name).unwrap();
        let mut all = vec![base.clone()];
        all.extend(base.variant_names().map(|v| base.with_variant(v).unwrap()));
        for s in all {
            let text = dump(&s);
            let back = parse_scheme(&text).unwrap();
            assert_eq!(back, s, "{name}");
            assert_eq!(dump(&back), text, "{name}");
        }
    }
}

const D2Q9_BY_HAND: &str = "
# nine velocities, rest first
name = d2q9-iso
dimension = 2
model = isothermal

[velocities]
0 0
1 0
0 1
-1 0
0 -1
1 1
-1 1
-1 -1
1 -1

[moments]
rho = 1
jx = vx
jy = vy
eps = 3*vx^2 + 3*vy^2 - 4*lambda^2
xx = vx^2 - vy^2
xy = vx*vy
qx = 3*vx^3 + 3*vx*vy^2 - 5*lambda^2*vx
qy = 3*vx^2*vy + 3*vy^3 - 5*lambda^2*vy
h = 9/2*vx^4 + 9*vx^2*vy^2 + 9/2*vy^4 - 21/2*lambda^2*vx^2 - 21/2*lambda^2*vy^2 + 4*lambda^4

[groups]
conserved = rho jx jy
family1 = eps xx xy
family2 = qx qy
family3 = h

[sigma]
sigma_e = eps
sigma_x = xx xy
sigma_q = qx qy
sigma_h = h
";

#[test]
fn hand_written_d2q9_matches_builtin() {
    assert_eq!(parse_scheme(D2Q9_BY_HAND).unwrap(), builtin("d2q9-iso").unwrap());
}

fn invalid(text: &str) -> String {
    match parse_scheme(text) {
        Err(SchemeError::Invalid(m)) => m,
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn duplicate_velocity_rejected() {
    let text = D2Q9_BY_HAND.replacen("0 1\n", "1 0\n", 1);
    assert!(invalid(&text).contains("duplicate velocity (1, 0)"));
}

#[test]
fn degree_mix_rejected() {
    let text = D2Q9_BY_HAND.replace("- 4*lambda^2\n", "- 4*lambda\n");
    assert!(invalid(&text).contains("`eps` is not lambda-homogeneous"));
}

#[test]
fn bad_groups_rejected() {
    let text = D2Q9_BY_HAND.replace("family3 = h", "family3 = h xy");
    assert!(invalid(&text).contains("bad group"));
    let text = D2Q9_BY_HAND.replace("family3 = h", "family3 = h h9");
    assert!(invalid(&text).contains("bad group"));
    let text = D2Q9_BY_HAND.replace("conserved = rho jx jy", "conserved = rho jx");
    assert!(invalid(&text).contains("bad group"));
}

#[test]
fn missing_sigma_rejected() {
    let text = D2Q9_BY_HAND.replace("sigma_h = h\n", "");
    assert!(invalid(&text).contains("`h` has no relaxation symbol"));
}

#[test]
fn parse_errors_are_positioned() {
    let text = D2Q9_BY_HAND.replace("xy = vx*vy", "xy = vx*vq");
    match parse_scheme(&text) {
        Err(SchemeError::Parse { line, column, msg }) => {
            assert_eq!(line, 24);
            assert_eq!(column, 9);
            assert!(msg.contains("vq"));
        }
        other => panic!("{other:?}"),
    }
    let text = D2Q9_BY_HAND.replace("-1 -1", "-1 x");
    assert!(matches!(parse_scheme(&text), Err(SchemeError::Parse { line: 15, column: 4, .. })));
}

#[test]
fn repeated_row_is_singular() {
    let s = builtin("d3q33-iso").unwrap();
    let text = dump(&s);
    let h3 = s.moment("h3").unwrap().1.poly.to_string();
    let h4_line = text.lines().find(|l| l.starts_with("h4 = ")).unwrap();
    let text = text.replace(h4_line, &format!("h4 = {h3}"));
    let r = validate_scheme(&parse_scheme(&text).unwrap());
    assert!(r.homogeneous);
    assert!(!r.invertible);
    assert_eq!(r.rank, 32);
}
