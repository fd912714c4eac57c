//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Runs every criterion, including the large censuses. On one core the
//! whole target takes a few minutes in the test profile.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use galois_census::asymptotics::{chela_constant_c, fit_reducible_counts, lattice_count_l};
use galois_census::census::{run_census, CensusRequest, Strategy};
use galois_census::constructions::{
    cross_validate, gen_a3_family, gen_a4_family, gen_d4vc_family, gen_v4_biquadratic, FamilyPoly,
};
use galois_census::eisenstein::parametrize_cubic_witness;
use galois_census::galois::{frobenius_cycle_type, invariants_cubic, invariants_quartic};
use galois_census::identities::{verify_disc_f, verify_star, verify_symmetry};
use galois_census::{classify_cubic, classify_quartic, CubicClass, GaloisClass, MonicCubic, MonicQuartic};

use common::{cubic_disc_big, quartic_disc_big};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn census_counts(degree: u32, height: u32) -> Vec<(GaloisClass, u64)> {
    let r = run_census(&CensusRequest::new(degree, height)).expect("census");
    r.counts.into_iter().collect()
}

fn criterion_cubic_500() -> Check {
    let counts = census_counts(3, 500);
    let a3 = counts.iter().find(|(c, _)| *c == GaloisClass::A3).unwrap().1;
    ensure(a3 == 52420, format!("A3 = {a3}"))
}

fn criterion_quartic_150() -> Check {
    let want = [
        (GaloisClass::Reducible, 75_327_434u64),
        (GaloisClass::S4, 8_128_593_894),
        (GaloisClass::A4, 60_954),
        (GaloisClass::D4, 4_501_148),
        (GaloisClass::V4, 45_953),
        (GaloisClass::C4, 11_818),
    ];
    let counts = census_counts(4, 150);
    let total: u64 = counts.iter().map(|(_, n)| n).sum();
    let ok = want.iter().all(|w| counts.contains(w)) && total == 301u64.pow(4);
    ensure(ok, format!("{counts:?}"))
}

fn criterion_cubic_2000() -> Check {
    let counts = census_counts(3, 2000);
    let a3 = counts.iter().find(|(c, _)| *c == GaloisClass::A3).unwrap().1;
    ensure(a3 == 355_334, format!("A3 = {a3}"))
}

fn criterion_strategy_equivalence() -> Check {
    let cases = (1..=12).map(|h| (4, h)).chain((1..=40).map(|h| (3, h)));
    let mut checked = 0;
    for (degree, h) in cases {
        let direct = run_census(&CensusRequest::new(degree, h)).map_err(|e| e.to_string())?;
        let table =
            run_census(&CensusRequest::new(degree, h).with_strategy(Strategy::Table)).map_err(|e| e.to_string())?;
        if direct.counts != table.counts {
            return Err(format!("degree {degree} H = {h}: {:?} vs {:?}", direct.counts, table.counts));
        }
        checked += 1;
    }
    Ok(format!("{checked} (degree, H) pairs identical"))
}

fn criterion_invariants() -> Check {
    let mut cases = 0u64;
    let mut failures = Vec::new();
    let h = 5i128;
    for a in -h..=h {
        for b in -h..=h {
            for c in -h..=h {
                let inv = invariants_cubic(&MonicCubic::new(a, b, c)).map_err(|e| e.to_string())?;
                let lhs = 27 * cubic_disc_big(a, b, c);
                let rhs = 4 * BigInt::from(inv.i).pow(3) - BigInt::from(inv.j).pow(2);
                if lhs != rhs {
                    failures.push(format!("cubic {a},{b},{c}"));
                }
                cases += 1;
            }
        }
    }
    let h = 3i128;
    for a in -h..=h {
        for b in -h..=h {
            for c in -h..=h {
                for d in -h..=h {
                    let inv = invariants_quartic(&MonicQuartic::new(a, b, c, d)).map_err(|e| e.to_string())?;
                    let lhs = 27 * quartic_disc_big(a, b, c, d);
                    let rhs = 4 * BigInt::from(inv.i).pow(3) - BigInt::from(inv.j).pow(2);
                    if lhs != rhs {
                        failures.push(format!("quartic {a},{b},{c},{d}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    ensure(failures.is_empty(), format!("{cases} cases, failures {failures:?}"))
}

fn criterion_symmetry() -> Check {
    let r = verify_symmetry(6);
    ensure(r.passed(), format!("{} resolvent roots, {} failures", r.cases_checked, r.failures.len()))
}

fn criterion_star() -> Check {
    let r = verify_star(6, 0, 0);
    // 13^5 points, two signs
    let full = r.cases_checked >= 2 * 13u64.pow(5);
    ensure(r.passed() && full, format!("{} cases, {} failures", r.cases_checked, r.failures.len()))
}

fn criterion_disc_f() -> Check {
    let r = verify_disc_f(50);
    let mut oracle_failures = 0;
    for q in -50i128..=50 {
        for r in (-50i128..=50).filter(|&r| r != 0) {
            let disc = common::general_cubic_disc_big(r, 3 * q, -9 * r, -3 * q);
            let want = BigInt::from(18 * (q * q + 3 * r * r)).pow(2);
            if disc != want {
                oracle_failures += 1;
            }
        }
    }
    ensure(
        r.passed() && oracle_failures == 0,
        format!("{} cases, {} failures, oracle failures {oracle_failures}", r.cases_checked, r.failures.len()),
    )
}

fn criterion_param_witness() -> Check {
    let h = 30i128;
    let (mut cyclic, mut failures) = (0u64, Vec::new());
    for a in -h..=h {
        for b in -h..=h {
            for c in -h..=h {
                let f = MonicCubic::new(a, b, c);
                if classify_cubic(&f).map_err(|e| e.to_string())? != CubicClass::A3 {
                    continue;
                }
                cyclic += 1;
                let ok = parametrize_cubic_witness(&f).map_err(|e| e.to_string()).and_then(|w| {
                    w.check().map_err(|e| e.to_string())?;
                    let b = |x: i128| BigInt::from(x);
                    let lhs = 2 * (b(w.x).pow(2) + 3 * b(w.y).pow(2));
                    let rhs = b(w.u) * b(w.z).pow(3);
                    let lhs2: BigInt = b(w.u) * (b(w.z) * b(8)).pow(3);
                    let rhs2 = 4 * (b(w.q).pow(2) + 3 * b(w.r).pow(2)) * (b(w.s).pow(2) + b(w.t).pow(2) * b(3)).pow(3);
                    if lhs != rhs || lhs2 != rhs2 {
                        return Err("norm relations".into());
                    }
                    Ok(())
                });
                if let Err(e) = ok {
                    failures.push(format!("{f}: {e}"));
                }
            }
        }
    }
    ensure(cyclic > 0 && failures.is_empty(), format!("{cyclic} A3 cubics, failures {failures:?}"))
}

fn criterion_frobenius() -> Check {
    let primes: Vec<u64> = (2..=50u64).filter(|&p| (2..p).all(|d| p % d != 0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut sampled, mut observations, mut violations) = (0, 0u64, Vec::new());
    while sampled < 10_000 {
        let mut c = || rng.gen_range(-50i128..=50);
        let f = MonicQuartic::new(c(), c(), c(), c());
        let class: GaloisClass = classify_quartic(&f).map_err(|e| e.to_string())?.into();
        if class == GaloisClass::Reducible {
            continue;
        }
        sampled += 1;
        let disc = quartic_disc_big(f.a, f.b, f.c, f.d);
        for &p in &primes {
            if (&disc % BigInt::from(p)) == BigInt::from(0) {
                continue;
            }
            let ct = frobenius_cycle_type(&f, p).map_err(|e| e.to_string())?;
            observations += 1;
            if !class.cycle_types().contains(&ct.as_slice()) {
                violations.push(format!("{f} ({class}) mod {p}: {ct:?}"));
            }
        }
    }
    ensure(
        violations.is_empty(),
        format!("{sampled} quartics, {observations} cycle types, violations {violations:?}"),
    )
}

fn criterion_constructions() -> Check {
    let v4 = cross_validate(&gen_v4_biquadratic(500)).map_err(|e| e.to_string())?;
    let a3 = cross_validate(&gen_a3_family(-200, 200)).map_err(|e| e.to_string())?;

    let a4 = gen_a4_family(20);
    let mut a4_bad = 0;
    for m in &a4 {
        let FamilyPoly::Quartic(f) = m.polynomial else { return Err("a4 member is not a quartic".into()) };
        let (u, v) = (BigInt::from(m.params["u"]), BigInt::from(m.params["v"]));
        let want: BigInt = ((&u * v.pow(4) * BigInt::from(27) + u.pow(3)) * BigInt::from(16)).pow(2);
        if quartic_disc_big(f.a, f.b, f.c, f.d) != want {
            a4_bad += 1;
        }
    }

    let d4 = gen_d4vc_family(1_000_000, Ratio::new(1, 5)).map_err(|e| e.to_string())?;
    let mut d4_bad = Vec::new();
    for m in &d4 {
        let FamilyPoly::Quartic(f) = m.polynomial else { return Err("d4vc member is not a quartic".into()) };
        let x = m.params["x"];
        let h = 1_000_000i128;
        let coeffs = [f.a, f.b, f.c, f.d];
        let eisenstein = coeffs.iter().all(|c| c % 3 == 0) && f.d % 9 != 0;
        let bounded = coeffs.iter().all(|c| c.abs() <= h);
        let ranges = [4 * f.d, 4 * (f.b - x), 2 * f.c].iter().all(|&v| 0 < v && v < h);
        // x is a root of the cubic resolvent
        let (xb, a, b, c, d) = (BigInt::from(x), BigInt::from(f.a), BigInt::from(f.b), BigInt::from(f.c), BigInt::from(f.d));
        let resolvent_zero = (&xb * &xb - 4 * &d) * (&a * &a - 4 * (&b - &xb)) == (&xb * &a - &c * BigInt::from(2)).pow(2);
        let class: GaloisClass = classify_quartic(&f).map_err(|e| e.to_string())?.into();
        let in_family = matches!(class, GaloisClass::D4 | GaloisClass::V4 | GaloisClass::C4);
        if !(eisenstein && bounded && ranges && resolvent_zero && in_family) {
            d4_bad.push(format!("{f} ({class})"));
        }
    }

    let ok = v4.members > 0
        && v4.mismatch_count == 0
        && a3.members == 401
        && a3.mismatch_count == 0
        && a4.len() == 400
        && a4_bad == 0
        && !d4.is_empty()
        && d4_bad.is_empty();
    ensure(
        ok,
        format!(
            "v4 {} members {} mismatches; a3 {} members {} mismatches; a4 {} members {a4_bad} disc failures; d4vc {} members, failures {:?}",
            v4.members,
            v4.mismatch_count,
            a3.members,
            a3.mismatch_count,
            a4.len(),
            d4.len(),
            &d4_bad[..d4_bad.len().min(5)]
        ),
    )
}

fn criterion_asymptotics() -> Check {
    let zeta3 = 1.202_056_903_159_594_2_f64;
    let c3 = chela_constant_c(3, 1e-13).map_err(|e| e.to_string())?;
    let c4 = chela_constant_c(4, 1e-13).map_err(|e| e.to_string())?;
    let want3 = 8.0 * (std::f64::consts::PI.powi(2) / 6.0 + 0.25);
    let want4 = 16.0 * (zeta3 + 1.0 / 6.0);
    let d3 = (c3.series_form - want3).abs();
    let d4 = (c4.series_form - want4).abs();
    let k_ok = c3.k_n.ratio() == Ratio::from_integer(3) && c4.k_n.ratio() == Ratio::new(16, 3);
    let fit = fit_reducible_counts(4, &[(150, 75_327_434)]).map_err(|e| e.to_string())?;
    let ratio = fit.entries[0].ratio;
    let l = lattice_count_l(3, 100, 0).map_err(|e| e.to_string())?;
    let ok = d3 < 1e-12 && d4 < 1e-12 && k_ok && (ratio - 1.019).abs() <= 1e-3 && l == 30301;
    ensure(ok, format!("|c3 err| = {d3:.1e}, |c4 err| = {d4:.1e}, k exact {k_ok}, ratio {ratio:.6}, L(3,100,0) = {l}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("cubic census H=500: A3 = 52420", criterion_cubic_500),
        ("quartic census H=150: six counts", criterion_quartic_150),
        ("cubic census H=2000: A3 = 355334", criterion_cubic_2000),
        ("direct and table strategies agree", criterion_strategy_equivalence),
        ("invariant identity 27 disc = 4I^3 - J^2", criterion_invariants),
        ("symmetry identity at resolvent roots, height <= 6", criterion_symmetry),
        ("star identity on [-6,6]^5, both signs", criterion_star),
        ("disc F identity on [-50,50]^2", criterion_disc_f),
        ("parametrization witnesses, A3 cubics of height <= 30", criterion_param_witness),
        ("Frobenius cycle types, 10^4 quartics", criterion_frobenius),
        ("family constructions", criterion_constructions),
        ("asymptotic constants and fit", criterion_asymptotics),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.1} s]: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.1} s]: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
