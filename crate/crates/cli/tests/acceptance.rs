//! One PASS/FAIL line per acceptance criterion, with wall-clock budgets.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stairgf::exactnum::rat;
use stairgf::polygons::{enumerate_punctured, enumerate_staircase, enumerate_three_choice, Convention};
use stairgf::special::Builder;
use stairgf::{CheckReport, CountTable, FixtureSet, LaurentSeries, Rational, Verifier};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stairgf"))
}

fn budget(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("took {:.1}s, budget {:.0}s", t.as_secs_f64(), limit.as_secs_f64()))
    } else {
        Ok(())
    }
}

fn fixture(name: &str) -> LaurentSeries {
    FixtureSet::embedded().get(name).unwrap().series().unwrap()
}

fn all_pass(v: &Verifier, ids: &[&str], order: i64) -> Result<Vec<CheckReport>, String> {
    let mut out = Vec::new();
    for id in ids {
        let r = v.run_check(id, order).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{r}"));
        }
        out.push(r);
    }
    Ok(out)
}

fn series_reproduction() -> Outcome {
    let start = Instant::now();
    let b = Builder::default();
    let cases = [
        ("P_T", "P_T_series", 7),
        ("P_I", "P_I_series", 7),
        ("P_P", "P_P_series", 7),
        ("Sol2_toplog", "Sol2_series", 9),
        ("Sol3_toplog", "Sol3_series", 8),
        ("Sol2_closed", "SolN2_series", 12),
        ("SolV2_plusU", "SolV2_series", 10),
        ("F18_plusU", "F18_plusU_series", 8),
        ("F18_minusU", "F18_minusU_series", 8),
    ];
    for (name, data, terms) in cases {
        let s = b.get(name, 60).map_err(|e| format!("{name}: {e}"))?;
        let f = fixture(data);
        let nonzero = f.coeffs().iter().filter(|c| !c.is_zero()).count();
        if nonzero < terms {
            return Err(format!("{data} holds {nonzero} terms, expected {terms}"));
        }
        if let Some(m) = s.first_mismatch(&f, Some(f.trunc())) {
            return Err(format!("{name} at x^{}: expected {} got {}", m.exponent, m.expected, m.got));
        }
    }
    budget(start, Duration::from_secs(10))?;
    let out = bin().args(["series", "P_P", "--order", "12"]).output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    if !out.status.success() || !text.contains("x^8 + 12*x^9 + 94*x^10 + 604*x^11 + O(x^12)") {
        return Err(format!("series P_P printed {text:?}"));
    }
    Ok(format!("9 series at order 60 in {:.1}s", start.elapsed().as_secs_f64()))
}

fn relations() -> Outcome {
    let start = Instant::now();
    let v = Verifier::default();
    all_pass(&v, &["R1", "R2", "R3", "R4"], 40)?;
    // the right side of R4 is x^3/(1-4x) coefficient for coefficient: 4^(n-3)
    let b = Builder::default();
    let get = |name| b.get(name, 40).map_err(|e| e.to_string());
    let (pi, pt, pp) = (get("P_I")?, get("P_T")?, get("P_P")?);
    for n in 3..40 {
        let c = pp.coeff(n) + rat(1, 4) * pt.coeff(n - 1) + pi.coeff(n) - rat(1, 2) * pi.coeff(n - 1);
        if c != Rational::from_integer(BigInt::from(4).pow(n as u32 - 3)) {
            return Err(format!("R4 right side at x^{n}: got {c}"));
        }
    }
    budget(start, Duration::from_secs(5))?;
    Ok(format!("R1-R4 to x^40 in {:.1}s", start.elapsed().as_secs_f64()))
}

fn operators() -> Outcome {
    let start = Instant::now();
    let v = Verifier::default();
    let ids = ["O1", "O2", "O3", "O4", "O5", "O6", "O7", "O8", "O9"];
    let reports = all_pass(&v, &ids, 40)?;
    let o7 = &reports[6];
    if !o7.exact {
        return Err("O7 was not decided exactly".into());
    }
    if reports[1].order_checked != 40 {
        return Err(format!("O2 checked to {}", reports[1].order_checked));
    }
    budget(start, Duration::from_secs(60))?;
    Ok(format!("O1-O9 in {:.1}s", start.elapsed().as_secs_f64()))
}

fn integrality() -> Outcome {
    let start = Instant::now();
    let r = all_pass(&Verifier::default(), &["O10"], 40)?;
    if r[0].order_checked != 40 {
        return Err(format!("O10 checked to {}", r[0].order_checked));
    }
    Ok(format!("P_I integral to x^40 in {:.1}s", start.elapsed().as_secs_f64()))
}

fn modular() -> Outcome {
    let start = Instant::now();
    let v = Verifier::default();
    let ids = ["M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8", "H1", "H2", "E1", "F1"];
    let reports = all_pass(&v, &ids, 40)?;
    for r in &reports {
        if (r.id == "M1" || r.id == "M4") && !r.exact {
            return Err(format!("{} not exact", r.id));
        }
        if r.id == "F1" && r.order_checked < 29 {
            return Err(format!("F1 checked only {} X-terms", r.order_checked));
        }
    }
    budget(start, Duration::from_secs(120))?;
    Ok(format!("modular suite in {:.1}s", start.elapsed().as_secs_f64()))
}

fn count(t: &CountTable, n: u32) -> Option<u64> {
    t.as_u64().into_iter().find(|(m, _)| *m == n).map(|(_, c)| c)
}

fn enumeration() -> Outcome {
    let catalan = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
    let start = Instant::now();
    let t = enumerate_staircase(10).map_err(|e| e.to_string())?;
    for n in 2..=10u32 {
        if count(&t, n) != Some(catalan[n as usize - 1]) {
            return Err(format!("staircase n={n}: {:?}", count(&t, n)));
        }
    }
    budget(start, Duration::from_secs(1))?;
    let t1 = start.elapsed();

    let start = Instant::now();
    let t = enumerate_punctured(12).map_err(|e| e.to_string())?;
    let want = [1u64, 12, 94, 604, 3463];
    for (n, w) in (8..=12).zip(want) {
        if count(&t, n) != Some(w) {
            return Err(format!("punctured n={n}: {:?}", count(&t, n)));
        }
    }
    budget(start, Duration::from_secs(120))?;
    let t2 = start.elapsed();

    let start = Instant::now();
    let t = enumerate_three_choice(8, Convention::default()).map_err(|e| e.to_string())?;
    let want = [4u64, 12, 42, 152, 562, 2108, 7986];
    for (n, w) in (2..=8).zip(want) {
        if count(&t, n) != Some(w) {
            return Err(format!("three-choice n={n}: {:?}", count(&t, n)));
        }
    }
    budget(start, Duration::from_secs(300))?;
    Ok(format!(
        "staircase {:.2}s, punctured {:.1}s, three-choice {:.1}s",
        t1.as_secs_f64(),
        t2.as_secs_f64(),
        start.elapsed().as_secs_f64()
    ))
}

fn random_unit_series(rng: &mut ChaCha8Rng, w: i64) -> LaurentSeries {
    let mut cs = vec![rat(1, 1)];
    cs.extend((1..6).map(|_| rat(rng.gen_range(-7..=7), rng.gen_range(1..=5))));
    LaurentSeries::new(0, cs, w)
}

fn properties() -> Outcome {
    let start = Instant::now();
    all_pass(&Verifier::default(), &["H1"], 20)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let w = 16;
    for draw in 0..50 {
        let s = random_unit_series(&mut rng, w);
        let k = rng.gen_range(2..=5);
        let root = s.pow(&rat(1, k)).map_err(|e| e.to_string())?;
        let back = root.pow_int(k).map_err(|e| e.to_string())?;
        if let Some(m) = back.first_mismatch(&s, Some(w)) {
            return Err(format!("draw {draw}: root/power round trip fails at x^{}", m.exponent));
        }
        let a = random_unit_series(&mut rng, w);
        let b = random_unit_series(&mut rng, w).shift(1).truncate(w);
        let c = random_unit_series(&mut rng, w).shift(1).truncate(w);
        let left = a.compose(&b.compose(&c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let right = a.compose(&b).map_err(|e| e.to_string())?.compose(&c).map_err(|e| e.to_string())?;
        if let Some(m) = left.first_mismatch(&right, Some(w)) {
            return Err(format!("draw {draw}: composition not associative at x^{}", m.exponent));
        }
    }
    budget(start, Duration::from_secs(30))?;
    Ok(format!("Pfaff on 20 draws, 50 series draws in {:.1}s", start.elapsed().as_secs_f64()))
}

fn full_suite() -> Outcome {
    let start = Instant::now();
    let out = bin().args(["check", "all", "--order", "40"]).output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let passes = text.lines().filter(|l| l.split_whitespace().nth(1) == Some("pass")).count();
    if out.status.code() != Some(0) {
        return Err(format!("exit {:?}\n{text}", out.status.code()));
    }
    if passes < 25 {
        return Err(format!("only {passes} pass lines"));
    }
    budget(start, Duration::from_secs(600))?;
    Ok(format!("{passes} checks pass in {:.1}s", start.elapsed().as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("series reproduction", series_reproduction),
        ("relations R1-R4", relations),
        ("operator suite", operators),
        ("O10 integrality", integrality),
        ("modular suite", modular),
        ("enumeration oracles", enumeration),
        ("property suites", properties),
        ("check all --order 40", full_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
