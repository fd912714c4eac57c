mod common;

use std::collections::BTreeMap;

use galois_census::census::{build_irreducible_table, run_census, CensusRequest, Strategy};
use galois_census::{classify_quartic, GaloisClass, MonicQuartic};

use common::cubic_class_oracle;

fn counts(req: &CensusRequest) -> BTreeMap<GaloisClass, u64> {
    run_census(req).unwrap().counts
}

#[test]
fn cubic_census_matches_brute_force_oracle() {
    for h in [1i128, 2, 3, 5, 8] {
        let mut want: BTreeMap<&str, u64> = BTreeMap::new();
        for a in -h..=h {
            for b in -h..=h {
                for c in -h..=h {
                    *want.entry(cubic_class_oracle(a, b, c)).or_default() += 1;
                }
            }
        }
        let got = counts(&CensusRequest::new(3, h as u32));
        for class in GaloisClass::CUBIC {
            assert_eq!(got[&class], want.get(class.name()).copied().unwrap_or(0), "H = {h} {class}");
        }
    }
}

#[test]
fn quartic_census_matches_per_polynomial_classifier() {
    for h in [1i128, 2, 4] {
        let mut want: BTreeMap<GaloisClass, u64> = GaloisClass::QUARTIC.iter().map(|&c| (c, 0)).collect();
        for a in -h..=h {
            for b in -h..=h {
                for c in -h..=h {
                    for d in -h..=h {
                        *want.get_mut(&classify_quartic(&MonicQuartic::new(a, b, c, d)).unwrap().into()).unwrap() += 1;
                    }
                }
            }
        }
        assert_eq!(counts(&CensusRequest::new(4, h as u32)), want, "H = {h}");
    }
}

#[test]
fn hand_enumerated_small_boxes() {
    let c = counts(&CensusRequest::new(3, 1));
    assert_eq!((c[&GaloisClass::Reducible], c[&GaloisClass::S3], c[&GaloisClass::A3]), (15, 12, 0));
}

#[test]
fn strategies_agree() {
    for h in 1..=8 {
        let req = CensusRequest::new(4, h);
        assert_eq!(counts(&req), counts(&req.clone().with_strategy(Strategy::Table)), "quartic H = {h}");
    }
    for h in [1, 7, 19, 40] {
        let req = CensusRequest::new(3, h);
        assert_eq!(counts(&req), counts(&req.clone().with_strategy(Strategy::Table)), "cubic H = {h}");
    }
}

#[test]
fn worker_count_does_not_change_counts() {
    let base = counts(&CensusRequest::new(4, 6).with_workers(1));
    for w in [2, 3, 0] {
        assert_eq!(counts(&CensusRequest::new(4, 6).with_workers(w)), base);
    }
}

#[test]
fn counts_are_monotone_in_height() {
    for degree in [3, 4] {
        let hmax = if degree == 3 { 30 } else { 6 };
        let mut prev: Option<BTreeMap<GaloisClass, u64>> = None;
        for h in 1..=hmax {
            let r = run_census(&CensusRequest::new(degree, h)).unwrap();
            assert_eq!(r.total, (2 * h as u64 + 1).pow(degree));
            assert_eq!(r.counts.values().sum::<u64>(), r.total);
            if let Some(p) = &prev {
                for (class, n) in &r.counts {
                    assert!(*n >= p[class], "degree {degree} H = {h} {class}");
                }
            }
            prev = Some(r.counts);
        }
    }
}

#[test]
fn journal_resumes_to_same_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.jsonl");
    let fresh = counts(&CensusRequest::new(4, 5));

    let first = counts(&CensusRequest::new(4, 5).with_journal(&path));
    assert_eq!(first, fresh);

    // drop the last two stripes and tear the final line
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let kept = lines[..lines.len() - 2].join("\n");
    std::fs::write(&path, format!("{kept}\n{{\"a\":")).unwrap();

    let resumed = counts(&CensusRequest::new(4, 5).with_journal(&path));
    assert_eq!(resumed, fresh);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), lines.len());
}

#[test]
fn journal_for_other_parameters_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.jsonl");
    run_census(&CensusRequest::new(4, 3).with_journal(&path)).unwrap();
    assert!(run_census(&CensusRequest::new(4, 4).with_journal(&path)).is_err());
}

#[test]
fn table_popcount_matches_census() {
    let t = build_irreducible_table(4, 2, 1 << 20).unwrap();
    let c = counts(&CensusRequest::new(4, 2));
    assert_eq!(t.count_irreducible(), 625 - c[&GaloisClass::Reducible]);
    let t = build_irreducible_table(3, 9, 1 << 20).unwrap();
    let c = counts(&CensusRequest::new(3, 9));
    assert_eq!(t.count_irreducible(), 19u64.pow(3) - c[&GaloisClass::Reducible]);
}

#[test]
fn table_cap_is_enforced() {
    assert!(run_census(&{
        let mut r = CensusRequest::new(4, 20).with_strategy(Strategy::Table);
        r.table_cap_bytes = 1024;
        r
    })
    .is_err());
}

#[test]
fn unsupported_requests_fail() {
    assert!(run_census(&CensusRequest::new(5, 3)).is_err());
}

#[test]
fn height_zero_is_the_single_monomial() {
    let r = run_census(&CensusRequest::new(4, 0)).unwrap();
    assert_eq!(r.total, 1);
    assert_eq!(r.count(GaloisClass::Reducible), 1);
}
