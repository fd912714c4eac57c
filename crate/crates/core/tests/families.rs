use std::collections::BTreeSet;

use galois_census::asymptotics::{fit_reducible, lattice_count_l, region_volume_k};
use galois_census::census::{run_census, CensusRequest};
use galois_census::constructions::{
    classify_members, cross_validate, family_dump, gen_a3_family, gen_a4_family, gen_d4vc_family,
    gen_v4_biquadratic, Family,
};
use galois_census::GaloisClass;
use num_rational::Ratio;

#[test]
fn lattice_count_matches_enumeration() {
    for n in 1..=4u32 {
        for big_n in 0..=4i64 {
            let mut tally = std::collections::HashMap::new();
            let mut v = vec![-big_n; n as usize];
            loop {
                *tally.entry(v.iter().sum::<i64>()).or_insert(0u128) += 1;
                let Some(k) = v.iter().position(|&x| x < big_n) else { break };
                v[k] += 1;
                v[..k].fill(-big_n);
            }
            for h in -(n as i64 * big_n + 1)..=(n as i64 * big_n + 1) {
                let want = tally.get(&h).copied().unwrap_or(0);
                assert_eq!(lattice_count_l(n, big_n as u64, h).unwrap(), want, "n={n} N={big_n} h={h}");
            }
        }
    }
    assert_eq!(lattice_count_l(3, 100, 0).unwrap(), 30301);
}

#[test]
fn region_volumes_small_cases() {
    assert_eq!(region_volume_k(2).unwrap().ratio(), Ratio::new(2, 1));
    assert_eq!(region_volume_k(3).unwrap().ratio(), Ratio::new(3, 1));
    assert_eq!(region_volume_k(4).unwrap().ratio(), Ratio::new(16, 3));
}

#[test]
fn fit_from_census_reports() {
    let reports: Vec<_> = [10, 20].iter().map(|&h| run_census(&CensusRequest::new(3, h)).unwrap()).collect();
    let fit = fit_reducible(&reports).unwrap();
    assert_eq!(fit.entries.len(), 2);
    assert!(fit.entries.iter().all(|e| e.ratio > 0.5 && e.ratio < 2.0));
    let mixed = vec![reports[0].clone(), run_census(&CensusRequest::new(4, 2)).unwrap()];
    assert!(fit_reducible(&mixed).is_err());
}

#[test]
fn families_cross_validate() {
    for members in [gen_v4_biquadratic(120), gen_a3_family(-60, 60), gen_a4_family(8)] {
        let report = cross_validate(&members).unwrap();
        assert_eq!(report.mismatch_count, 0, "{:?}", report.mismatches);
        assert_eq!(report.members as usize, members.len());
    }
}

#[test]
fn a3_family_is_all_cyclic() {
    let report = cross_validate(&gen_a3_family(-30, 30)).unwrap();
    assert_eq!(report.class_counts.keys().copied().collect::<Vec<_>>(), vec![GaloisClass::A3]);
}

#[test]
fn d4vc_members_are_distinct_and_in_family() {
    let members = gen_d4vc_family(200_000, Ratio::new(1, 5)).unwrap();
    assert!(!members.is_empty());
    let distinct: BTreeSet<Vec<i128>> = members.iter().map(|m| m.polynomial.coeffs()).collect();
    assert_eq!(distinct.len(), members.len());
    for (m, class) in members.iter().zip(classify_members(&members).unwrap()) {
        assert!(matches!(class, GaloisClass::D4 | GaloisClass::V4 | GaloisClass::C4));
        assert!(m.polynomial.coeffs().iter().all(|c| c.abs() <= 200_000));
    }
}

#[test]
fn dump_lines_parse() {
    let members = gen_v4_biquadratic(30);
    let classes = classify_members(&members).unwrap();
    let dump = family_dump(&members, &classes).unwrap();
    assert_eq!(dump.lines().count(), members.len());
    for line in dump.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["family"], Family::V4Biquadratic.name());
        assert_eq!(v["coeffs"].as_array().unwrap().len(), 4);
    }
}
