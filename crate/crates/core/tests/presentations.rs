mod common;

use heiscusp::family::{build_presentation, parse_relators, FamilyId, FamilyParams};

fn params(k: i64, p: i64, k1: i64, k2: i64, family: u8) -> FamilyParams {
    let mut out = FamilyParams::k(k);
    match family {
        5 => out = out.with_p(p),
        6 => out = out.with_k1(k1).with_k2(k2),
        7 => out = out.with_k1(k1),
        _ => {}
    }
    out
}

fn tokens(family: u8, fp: FamilyParams) -> Vec<String> {
    let pres = build_presentation(FamilyId::from_index(family).unwrap(), fp).unwrap();
    pres.relators.iter().map(|r| r.word.to_tokens()).collect()
}

/// The first five valid parameter points per family, from the oracle rule.
fn five_points(family: u8) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for k in 1..=30 {
        for p in [1, 3] {
            for k1 in 0..=5 {
                for k2 in 1..=2 {
                    let relevant = match family {
                        5 => k1 == 0 && k2 == 1,
                        6 => p == 1,
                        7 => p == 1 && k2 == 1,
                        _ => p == 1 && k1 == 0 && k2 == 1,
                    };
                    if relevant && common::valid(family, k, p, k1, k2) && out.len() < 5 {
                        out.push((k, p, k1, k2));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn hand_transcribed_fixtures_match() {
    let cases: [(&str, u8, FamilyParams); 7] = [
        ("family1_k2.txt", 1, FamilyParams::k(2)),
        ("family2_k2.txt", 2, FamilyParams::k(2)),
        ("family3_k1.txt", 3, FamilyParams::k(1)),
        ("family4_k2.txt", 4, FamilyParams::k(2)),
        ("family5_k4_p3.txt", 5, FamilyParams::k(4).with_p(3)),
        ("family6_k3_k1_0_k2_2.txt", 6, FamilyParams::k(3).with_k1(0).with_k2(2)),
        ("family7_k4_k1_1.txt", 7, FamilyParams::k(4).with_k1(1)),
    ];
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/presentations/");
    for (file, family, fp) in cases {
        let text = std::fs::read_to_string(format!("{dir}{file}")).unwrap();
        let want = parse_relators(&text).unwrap();
        let pres = build_presentation(FamilyId::from_index(family).unwrap(), fp).unwrap();
        let got: Vec<_> = pres.relators.iter().map(|r| r.word.clone()).collect();
        assert_eq!(got, want, "{file}");
    }
}

#[test]
fn relators_match_expanded_relations_on_five_points_per_family() {
    for family in 1..=7u8 {
        let points = five_points(family);
        assert_eq!(points.len(), 5, "family {family}");
        for (k, p, k1, k2) in points {
            let want: Vec<String> = common::relations(family, k, p, k1, k2)
                .iter()
                .map(|r| common::relator_tokens(r))
                .collect();
            assert_eq!(tokens(family, params(k, p, k1, k2, family)), want, "family {family} k={k}");
        }
    }
}

#[test]
fn parameter_rule_matches_restatement() {
    for family in 1..=7u8 {
        let id = FamilyId::from_index(family).unwrap();
        for k in -2..=24 {
            for p in [1, 2, 3] {
                for k1 in 0..=5 {
                    for k2 in 0..=3 {
                        let fp = params(k, p, k1, k2, family);
                        let used_p = if family == 5 { p } else { 1 };
                        let used_k1 = if matches!(family, 6 | 7) { k1 } else { 0 };
                        let used_k2 = if family == 6 { k2 } else { 1 };
                        if (family != 5 && p != 1) || (!matches!(family, 6 | 7) && k1 != 0) {
                            continue;
                        }
                        if family != 6 && k2 != 1 {
                            continue;
                        }
                        assert_eq!(
                            fp.validate(id).is_ok(),
                            common::valid(family, k, used_p, used_k1, used_k2),
                            "family {family} {fp}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn text_form_reads_back() {
    for family in FamilyId::ALL {
        for fp in FamilyParams::valid_up_to(family, 12) {
            let pres = build_presentation(family, fp).unwrap();
            let words = parse_relators(&pres.to_text()).unwrap();
            let want: Vec<_> = pres.relators.iter().map(|r| r.word.clone()).collect();
            assert_eq!(words, want);
        }
    }
}

#[test]
fn bad_tokens_name_their_line() {
    let err = parse_relators("# header\nb a B A\nb q\n").unwrap_err();
    assert!(err.to_string().contains("line 3"), "{err}");
}
