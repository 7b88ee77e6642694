//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.
//!
//! Run with `cargo test -p nearmiss-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use nearmiss_core::exactmath::{is_canonical, isqrt, Integer, QuadElem, Rational};
use nearmiss_core::format::{render_all, OutputFormat};
use nearmiss_core::identities::{
    expand_lhs, expand_rhs, run_suite, tables_equal, verify_five_identities, verify_root_identities, SLOTS,
};
use nearmiss_core::search::{scan, SearchConfig, SearchHit};
use nearmiss_core::sequences::{
    closed_form_trace, closed_form_xy, closed_form_z, gen_recurrence, ClosedFormConstants,
};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRunner};

const BIN: &str = env!("CARGO_BIN_EXE_nearmiss");
const FIXTURE: &str = include_str!("fixtures/search_max60_t50.tsv");

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_secs, || {
        format!("took {:.3} s, limit {limit_secs} s", elapsed.as_secs_f64())
    })
}

fn run_bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().expect("spawn nearmiss");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ac1_table_reproduction() -> Outcome {
    let t = Instant::now();
    let (code, out, _) = run_bin(&["gen", "--count", "4", "--format", "tsv"]);
    let elapsed = t.elapsed();
    let expected = "0\t22\t23\t717\n\
                    1\t1058\t1103\t1653213\n\
                    2\t50806\t52967\t3812308653\n\
                    3\t2439746\t2543519\t8791182100413\n";
    ensure(code == 0, || format!("exit code {code}"))?;
    ensure(out == expected, || format!("output differs:\n{out}"))?;
    within(elapsed, 0.1)?;
    Ok(format!("4 rows byte-exact in {:.3} s", elapsed.as_secs_f64()))
}

fn ac2_residual_at_depth() -> Outcome {
    let t = Instant::now();
    let family = gen_recurrence(200).map_err(|e| e.to_string())?;
    for tr in &family {
        ensure(tr.residual().is_zero(), || format!("residual nonzero at n = {}", tr.n))?;
        ensure(tr.is_solution(), || format!("non-positive entry at n = {}", tr.n))?;
    }
    let elapsed = t.elapsed();
    let last = family.last().unwrap();
    let digits = last.z.to_string().len();
    ensure(digits > 300, || format!("z_199 has only {digits} digits"))?;
    within(elapsed, 5.0)?;
    Ok(format!("n < 200 exact, z_199 has {digits} digits, {:.3} s", elapsed.as_secs_f64()))
}

fn ac3_closed_form_equivalence() -> Outcome {
    let t = Instant::now();
    let k = ClosedFormConstants::standard();
    let family = gen_recurrence(50).map_err(|e| e.to_string())?;
    for tr in &family {
        let (x, y) = closed_form_xy(tr.n, &k).map_err(|e| e.to_string())?;
        let z = closed_form_z(tr.n, &k).map_err(|e| e.to_string())?;
        ensure((&x, &y, &z) == (&tr.x, &tr.y, &tr.z), || format!("mismatch at n = {}", tr.n))?;
        // the individual terms are irrational; only their sums are integers
        let trace = closed_form_trace(tr.n, &k).map_err(|e| e.to_string())?;
        for (u, v) in [(&trace.a_term, &trace.b_term), (&trace.c_term, &trace.d_term), (&trace.e_term, &trace.f_term)] {
            ensure(!u.is_rational(), || format!("term unexpectedly rational at n = {}", tr.n))?;
            ensure(u.irrational_part() + v.irrational_part() == Rational::zero(), || {
                format!("sqrt(577) parts do not cancel at n = {}", tr.n)
            })?;
        }
    }
    let elapsed = t.elapsed();
    within(elapsed, 5.0)?;
    Ok(format!("x, y, z agree for n < 50, {:.3} s", elapsed.as_secs_f64()))
}

fn ac4_identity_suite() -> Outcome {
    let t = Instant::now();
    let k = ClosedFormConstants::standard();
    let report = run_suite(&k);
    ensure(report.all_passed, || format!("{report:?}"))?;
    ensure(report.five_identities.checks.len() == 5 && report.root_identities.checks.len() == 3, || {
        "wrong number of checks".into()
    })?;

    // Which constants each check mentions; perturbing one must break exactly these.
    let five_uses: [&[&str]; 5] = [
        &["e", "a", "c"],
        &["f", "b", "d"],
        &["e", "g", "a", "b", "c", "d"],
        &["f", "g", "a", "b", "c", "d"],
        &["e", "f", "g", "a", "b", "c", "d"],
    ];
    let root_uses: [&[&str]; 3] = [&["lambda1", "lambda2"], &["mu1", "lambda1"], &["mu1", "mu2"]];
    let one = Rational::one();
    let names = ["a", "b", "c", "d", "e", "f", "g", "lambda1", "lambda2", "mu1", "mu2"];
    for name in names {
        let mut p = k.clone();
        match name {
            "a" => p.a = p.a.add_rational(&one),
            "b" => p.b = p.b.add_rational(&one),
            "c" => p.c = p.c.add_rational(&one),
            "d" => p.d = p.d.add_rational(&one),
            "e" => p.e = p.e.add_rational(&one),
            "f" => p.f = p.f.add_rational(&one),
            "g" => p.g = &p.g + &one,
            "lambda1" => p.lambda1 = p.lambda1.add_rational(&one),
            "lambda2" => p.lambda2 = p.lambda2.add_rational(&one),
            "mu1" => p.mu1 = p.mu1.add_rational(&one),
            _ => p.mu2 = p.mu2.add_rational(&one),
        }
        let five = verify_five_identities(&p).flags();
        let want: Vec<bool> = five_uses.iter().map(|u| !u.contains(&name)).collect();
        ensure(five == want, || format!("{name}+1: five identities {five:?}, expected {want:?}"))?;
        let roots = verify_root_identities(&p).flags();
        let want: Vec<bool> = root_uses.iter().map(|u| !u.contains(&name)).collect();
        ensure(roots == want, || format!("{name}+1: root identities {roots:?}, expected {want:?}"))?;
        let tables = tables_equal(&expand_lhs(&p), &expand_rhs(&p)).map_err(|e| e.to_string())?;
        ensure(tables == five.iter().all(|b| *b), || {
            format!("{name}+1: table comparison {tables} disagrees with the five identities")
        })?;
    }
    for slot in SLOTS {
        let mut rhs = expand_rhs(&k);
        let term = rhs.get_mut(slot).unwrap();
        term.coeff = term.coeff.add_rational(&one);
        ensure(!tables_equal(&expand_lhs(&k), &rhs).unwrap(), || format!("slot {slot}+1 still equal"))?;
    }
    let elapsed = t.elapsed();
    within(elapsed, 1.0)?;
    Ok(format!("9/9 hold, {} perturbations flip as expected, {:.3} s", names.len() + SLOTS.len(), elapsed.as_secs_f64()))
}

fn ac5_search_reproduction() -> Outcome {
    let t = Instant::now();
    let (code, out, _) = run_bin(&["search", "--min-x", "2", "--max-x", "1200", "--exact-residual", "8", "--quiet"]);
    let elapsed = t.elapsed();
    ensure(code == 0, || format!("exit code {code}"))?;
    let rows: BTreeSet<&str> = out.lines().collect();
    for want in ["22\t23\t717\t8", "1058\t1103\t1653213\t8"] {
        ensure(rows.contains(want), || format!("missing row {want:?}"))?;
    }
    within(elapsed, 10.0)?;
    Ok(format!("{} hits incl. both family members, {:.3} s", rows.len(), elapsed.as_secs_f64()))
}

/// Every z, not just the ones next to isqrt(s).
fn naive(min_x: u64, max_x: u64, threshold: i128) -> Vec<SearchHit> {
    let mut hits = Vec::new();
    for x in min_x..=max_x {
        for y in x..=max_x {
            let s = (x as i128).pow(4) + (y as i128).pow(4);
            let mut z: i128 = 1;
            while z * z <= s + threshold {
                let delta = s - z * z;
                if delta.abs() <= threshold {
                    hits.push(SearchHit::new(x, y, z, delta));
                }
                z += 1;
            }
        }
    }
    hits.sort_by(|a, b| (&a.y, &a.x, &a.z).cmp(&(&b.y, &b.x, &b.z)));
    hits
}

fn ac6_oracle_equivalence() -> Outcome {
    let (code, out, _) = run_bin(&["search", "--max-x", "60", "--threshold", "50", "--quiet"]);
    ensure(code == 0, || format!("exit code {code}"))?;
    ensure(out == FIXTURE, || "output differs from the committed oracle fixture".into())?;
    let mut cases = 1;
    for max_x in [1u64, 2, 7, 23, 41, 60] {
        for min_x in [1u64, 3, 20] {
            if min_x > max_x {
                continue;
            }
            for threshold in [0u64, 1, 8, 17, 50] {
                let got = scan(&SearchConfig::threshold(min_x, max_x, threshold)).map_err(|e| e.to_string())?;
                ensure(got == naive(min_x, max_x, threshold as i128), || {
                    format!("scan differs from naive oracle at min_x {min_x}, max_x {max_x}, threshold {threshold}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("fixture byte-identical ({} rows) and {cases} grids match the naive loop", FIXTURE.lines().count()))
}

fn ac7_no_exact_solutions() -> Outcome {
    let full = scan(&SearchConfig::threshold(1, 2000, 0)).map_err(|e| e.to_string())?;
    ensure(full.is_empty(), || format!("delta = 0 hit: {:?}", full.first()))?;

    let mut runner = TestRunner::new(Config { cases: 64, failure_persistence: None, ..Config::default() });
    let ranges = (1u64..=2000, 0u64..=150, 0u64..=200).prop_map(|(lo, width, t)| (lo, (lo + width).min(2000), t));
    runner
        .run(&ranges, |(lo, hi, t)| {
            let hits = scan(&SearchConfig::threshold(lo, hi, t)).unwrap();
            prop_assert!(hits.iter().all(|h| !h.delta.is_zero()), "delta = 0 in [{lo}, {hi}] threshold {t}");
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("1 <= x <= y <= 2000 exhaustive plus 64 random sub-ranges: no delta = 0".into())
}

fn ac8_determinism() -> Outcome {
    let base = SearchConfig::threshold(1, 5000, 100);
    let mut outputs = Vec::new();
    for workers in [1usize, 2, 8] {
        let hits = scan(&base.clone().with_workers(workers)).map_err(|e| e.to_string())?;
        outputs.push((workers, render_all(&hits, OutputFormat::Tsv)));
    }
    let reference = &outputs[0].1;
    for (w, o) in &outputs[1..] {
        ensure(o == reference, || format!("workers = {w} output differs from workers = 1"))?;
    }
    Ok(format!("workers 1, 2, 8 byte-identical ({} rows)", reference.lines().count()))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..=1_000_000, 1i64..=10_000).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn quad() -> impl Strategy<Value = QuadElem> {
    (small_rational(), small_rational()).prop_map(|(p, q)| QuadElem::new(p, q, 577).unwrap())
}

fn big_nonneg() -> impl Strategy<Value = Integer> {
    proptest::collection::vec(any::<u32>(), 1..16).prop_map(|digits| BigInt::from_slice(Sign::Plus, &digits))
}

fn run<T: std::fmt::Debug>(name: &str, r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

fn ac9_exactmath_properties() -> Outcome {
    const CASES: u32 = 10_000;
    let cfg = || Config { cases: CASES, failure_persistence: None, ..Config::default() };

    run(
        "field axioms",
        TestRunner::new(cfg()).run(&(quad(), quad(), quad()), |(u, v, w)| {
            prop_assert_eq!(&(&u + &v) + &w, &u + &(&v + &w));
            prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
            prop_assert_eq!(&u + &v, &v + &u);
            prop_assert_eq!(&u * &v, &v * &u);
            prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
            prop_assert!((&u + &(-&u)).is_zero());
            if !u.is_zero() {
                prop_assert_eq!(&u * &u.inv().unwrap(), QuadElem::one(577).unwrap());
            }
            Ok(())
        }),
    )?;

    run(
        "conjugation homomorphism",
        TestRunner::new(cfg()).run(&(quad(), quad()), |(u, v)| {
            prop_assert_eq!((&u * &v).conj(), &u.conj() * &v.conj());
            prop_assert_eq!((&u + &v).conj(), &u.conj() + &v.conj());
            prop_assert_eq!(u.conj().conj(), u.clone());
            Ok(())
        }),
    )?;

    run(
        "norm multiplicativity",
        TestRunner::new(cfg()).run(&(quad(), quad()), |(u, v)| {
            prop_assert_eq!((&u * &v).norm(), u.norm() * v.norm());
            let product = &u * &u.conj();
            prop_assert_eq!(product.rational_part(), &u.norm());
            Ok(())
        }),
    )?;

    run(
        "power additivity",
        TestRunner::new(cfg()).run(&(quad(), -20i64..=20, -20i64..=20), |(u, m, n)| {
            prop_assume!(!u.is_zero());
            prop_assert_eq!(u.pow(m + n).unwrap(), &u.pow(m).unwrap() * &u.pow(n).unwrap());
            Ok(())
        }),
    )?;

    run(
        "rational canonical form",
        TestRunner::new(cfg()).run(&(small_rational(), small_rational()), |(a, b)| {
            for r in [&a + &b, &a - &b, &a * &b] {
                prop_assert!(is_canonical(&r));
            }
            if !b.is_zero() {
                prop_assert!(is_canonical(&(&a / &b)));
            }
            Ok(())
        }),
    )?;

    for s in 0u64..=1_000_000 {
        let s = Integer::from(s);
        let r = isqrt(&s).unwrap();
        ensure(&r * &r <= s && s < (&r + 1u32) * (&r + 1u32), || format!("isqrt({s}) = {r}"))?;
    }
    run(
        "isqrt post-condition",
        TestRunner::new(cfg()).run(&big_nonneg(), |s| {
            let r = isqrt(&s).unwrap();
            prop_assert!(!r.is_negative());
            prop_assert!(&r * &r <= s);
            prop_assert!(s < (&r + 1u32) * (&r + 1u32));
            Ok(())
        }),
    )?;
    Ok(format!("6 properties x {CASES} cases, isqrt exhaustive on [0, 10^6]"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 table reproduction", ac1_table_reproduction),
        ("2 residual zero for n < 200", ac2_residual_at_depth),
        ("3 closed-form equivalence n < 50", ac3_closed_form_equivalence),
        ("4 identity suite and perturbations", ac4_identity_suite),
        ("5 search reproduces table columns 0, 1", ac5_search_reproduction),
        ("6 oracle equivalence", ac6_oracle_equivalence),
        ("7 no delta = 0 hits", ac7_no_exact_solutions),
        ("8 worker determinism", ac8_determinism),
        ("9 exactmath properties", ac9_exactmath_properties),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
