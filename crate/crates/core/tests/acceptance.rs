//! Acceptance runner: one line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use betanum::confluent::{
    confluent_base, expected_d_beta_one, expected_d_minus_beta_ell, finiteness_counterexample, pi_projection,
    ConfluentParams,
};
use betanum::integersets::{delta_neg, delta_pos, delta_table_neg, enumerate_z_minus_beta};
use betanum::spectrum::{normalize_confluent, theorem1_report, x_minus_beta_window, ReportSettings};
use betanum::words::{
    antimorphism_neg_constructive, canonical_morphism_pos, conjugacy_test, fixed_point_biword,
    language_equal_upto, project_and_induce, AntimorphismFixedPoint, Conjugacy, MorphismFixedPoint,
};
use betanum::{Base, Digit};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn grid() -> Vec<(ConfluentParams, Base)> {
    ConfluentParams::grid(5, 3).into_iter().map(|p| (p, confluent_base(p).unwrap())).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expansion_fixtures() -> Outcome {
    let g = grid();
    for (p, base) in &g {
        let one = base.d_beta_one().map_err(|e| format!("{p}: {e}"))?;
        ensure(one.periodic() == Some(&expected_d_beta_one(*p)), || format!("{p}: d_β(1) = {one}"))?;
        let ell = base.d_minus_beta_ell().map_err(|e| format!("{p}: {e}"))?;
        ensure(ell.periodic() == Some(&expected_d_minus_beta_ell(*p)), || format!("{p}: d_-β(ℓ) = {ell}"))?;
    }
    Ok(format!("{} bases", g.len()))
}

fn expected_witness(p: &ConfluentParams) -> Vec<usize> {
    if p.d == 1 {
        return Vec::new();
    }
    let block: Vec<usize> = std::iter::repeat(0).take(p.m as usize).chain([1]).collect();
    block.repeat(p.m as usize)
}

fn consistency_sweep() -> Outcome {
    let g = grid();
    let mut failures = Vec::new();
    for (p, base) in &g {
        let m = p.m as usize;
        let settings = ReportSettings { radius: 10, factor_length: 8, w_cap: Some(m * (m + 1) + 4) };
        let report = theorem1_report(base, &settings).map_err(|e| format!("{p}: {e}"))?;
        let v = report.verdicts();
        let want = p.in_class();
        if v != [want; 3] {
            failures.push(format!("{p} gave {v:?}"));
            continue;
        }
        if want {
            let w = report.to_json()["condition2"]["witness"].clone();
            let got: Vec<usize> = serde_json::from_value(w).map_err(|e| format!("{p}: {e}"))?;
            if got != expected_witness(p) {
                failures.push(format!("{p} witness {got:?}"));
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} bases", g.len()))
}

fn gap_identities() -> Outcome {
    let g = grid();
    for (p, base) in &g {
        let d = p.d;
        for i in 0..d {
            let (dp, dn) = (delta_pos(base, i).map_err(|e| e.to_string())?, delta_neg(base, i).map_err(|e| e.to_string())?);
            let expected = if !p.in_class() && i == d - 1 { dp.add_int(1) } else { dp };
            ensure(dn == expected, || format!("{p}: Δ'_{i} = {dn}"))?;
        }
    }
    Ok(format!("{} bases", g.len()))
}

fn spectrum_gaps() -> Outcome {
    let polys: [&[i64]; 10] = [
        &[-1, -1, 1],
        &[-1, -1, -1, 1],
        &[-1, -2, -2, 1],
        &[-1, -2, 1],
        &[-1, -1, -1, -1, 1],
        &[-1, -2, -2, -2, -2, 1],
        &[1, -3, 1],
        &[-1, 1, -2, 1],
        &[2, -4, 1],
        &[-1, 1, -3, 1],
    ];
    let mut points = 0;
    for c in polys {
        let base = Base::from_coeffs(c).map_err(|e| format!("{c:?}: {e}"))?;
        let f = base.field();
        let w = x_minus_beta_window(&base, &f.from_int(-10), &f.from_int(10)).map_err(|e| format!("{c:?}: {e}"))?;
        for gap in w.points.gaps() {
            ensure(gap.compare(&f.one()).is_le(), || format!("{c:?}: gap {gap}"))?;
        }
        points += w.points.len();
    }
    Ok(format!("10 bases, {points} points"))
}

fn normalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let g = grid();
    let mut steps = 0usize;
    for (p, base) in &g {
        let top = betanum::spectrum::confluent_digit_max(p.d, p.m, p.n);
        for _ in 0..1000 {
            let len = rng.gen_range(0..=12);
            let w: Vec<Digit> = (0..len).map(|_| rng.gen_range(0..=top)).collect();
            let (out, trace) = normalize_confluent(p.d, p.m, p.n, &w).map_err(|e| format!("{p} {w:?}: {e}"))?;
            for s in &trace.steps {
                let sum = |x: &[Digit]| x.iter().sum::<Digit>();
                ensure(sum(&s.after) < sum(&s.before), || format!("{p} {w:?}: digit sum at {}", s.position))?;
                ensure(base.gamma_pos(&s.before) == base.gamma_pos(&s.after), || format!("{p} {w:?}: value at {}", s.position))?;
            }
            ensure(base.gamma_pos(&out) == base.gamma_pos(&w), || format!("{p} {w:?}: value changed"))?;
            ensure(base.is_admissible_pos_digits(&out).unwrap(), || format!("{p} {w:?}: {out:?} not admissible"))?;
            steps += trace.steps.len();
        }
    }
    Ok(format!("{} strings, {steps} rewrites", 1000 * g.len()))
}

fn finiteness() -> Outcome {
    let cases = [
        ((4, 1, 1), "110 • 0111(0110)^ω"),
        ((3, 2, 1), "0 • 02212^ω"),
        ((5, 2, 1), "0 • 000220(0121)^ω"),
    ];
    for ((d, m, n), text) in cases {
        let p = ConfluentParams::new(d, m, n).unwrap();
        let base = confluent_base(p).unwrap();
        let c = finiteness_counterexample(&base, p).map_err(|e| e.to_string())?;
        ensure(c.expansion.to_string() == text, || format!("{p}: fixture {}", c.expansion))?;
        let got = base.expand_real_neg(&c.value, 256).map_err(|e| format!("{p}: {e}"))?;
        ensure(got == c.expansion, || format!("{p}: computed {got}"))?;
    }
    Ok("3 expansions".into())
}

fn sources(p: ConfluentParams) -> Result<(MorphismFixedPoint, AntimorphismFixedPoint, Base), String> {
    let base = confluent_base(p).unwrap();
    let phi = canonical_morphism_pos(&base.classify().0).map_err(|e| e.to_string())?;
    let letters = phi.alphabet() + 2;
    let psi = antimorphism_neg_constructive(&base, letters).map_err(|e| e.to_string())?.substitution;
    Ok((
        MorphismFixedPoint { morphism: phi, seed: 0 },
        AntimorphismFixedPoint { antimorphism: psi, seed: None, projection: None },
        base,
    ))
}

fn languages() -> Outcome {
    for (d, m, n, equal) in [(3, 1, 1, true), (3, 2, 1, true), (2, 2, 1, false)] {
        let p = ConfluentParams::new(d, m, n).unwrap();
        let (u, v, _) = sources(p)?;
        let cmp = language_equal_upto(&u, &v, 8).map_err(|e| format!("{p}: {e}"))?;
        ensure(cmp.equal == equal, || format!("{p}: equal = {}", cmp.equal))?;
    }
    let p = ConfluentParams::new(2, 2, 1).unwrap();
    let (u, mut v, _) = sources(p)?;
    let pi = pi_projection(2).map_err(|e| e.to_string())?;
    v.projection = Some(pi.clone());
    let cmp = language_equal_upto(&u, &v, 8).map_err(|e| e.to_string())?;
    ensure(cmp.equal, || format!("projected languages differ: {:?} / {:?}", cmp.only_first, cmp.only_second))?;
    let induced = project_and_induce(&pi, &v.antimorphism.square()).ok_or("no induced morphism")?;
    let phi2 = u.morphism.square();
    match conjugacy_test(&phi2, &induced, 16).map_err(|e| e.to_string())? {
        Conjugacy::Witness { word, .. } => Ok(format!("π-projected witness {}", betanum::words::word_string(&word))),
        other => Err(format!("no conjugacy: {other:?}")),
    }
}

const RADIUS: usize = 100;

fn cross_oracle() -> Outcome {
    let start = Instant::now();
    let yes: Vec<_> = grid().into_iter().filter(|(p, _)| p.in_class() && p.d >= 2).collect();
    for (p, base) in &yes {
        let f = base.field();
        let (lo, hi) = (f.from_int(-(RADIUS as i64) - 10), f.from_int(RADIUS as i64 + 10));
        let phi_letters = p.d + 2;
        let c = antimorphism_neg_constructive(base, phi_letters).map_err(|e| format!("{p}: {e}"))?;
        let table = delta_table_neg(base, 64).map_err(|e| format!("{p}: {e}"))?;
        // Δ' index to the constructive alphabet, through the smallest index with the same value.
        let code = |k: usize| -> Result<usize, String> {
            let v = table.values.get(k).ok_or_else(|| format!("{p}: letter {k} beyond table"))?;
            let j = table.values.iter().position(|u| u == v).expect("present");
            c.letter_of(j).ok_or_else(|| format!("{p}: letter {j} outside alphabet"))
        };

        let z = enumerate_z_minus_beta(base, &lo, &hi).map_err(|e| format!("{p}: {e}"))?;
        let (zl, zr) = z.letters_around_origin(RADIUS).ok_or("origin missing")?;
        let direct = (
            zl.iter().map(|&k| code(k)).collect::<Result<Vec<_>, _>>()?,
            zr.iter().map(|&k| code(k)).collect::<Result<Vec<_>, _>>()?,
        );
        ensure(direct.0.len() == RADIUS && direct.1.len() == RADIUS, || format!("{p}: window too short"))?;

        let fixed = fixed_point_biword(&c.substitution, None, RADIUS).map_err(|e| format!("{p}: {e}"))?;
        let fixed = (fixed.left, fixed.right);

        let x = x_minus_beta_window(base, &lo, &hi).map_err(|e| format!("{p}: {e}"))?;
        let o = x.points.origin_index.ok_or("origin missing")?;
        let gaps = x.points.gaps();
        let letter = |g: &betanum::FieldElement| -> Result<usize, String> {
            let k = table.values.iter().position(|v| v == g).ok_or_else(|| format!("{p}: gap {g} not a Δ'"))?;
            code(k)
        };
        let spectral = (
            gaps[o - RADIUS..o].iter().map(letter).collect::<Result<Vec<_>, _>>()?,
            gaps[o..o + RADIUS].iter().map(letter).collect::<Result<Vec<_>, _>>()?,
        );
        ensure(direct == fixed, || format!("{p}: enumeration and fixed point differ"))?;
        ensure(direct == spectral, || format!("{p}: enumeration and spectrum differ"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} bases, radius {RADIUS}, {secs:.1}s", yes.len()))
}

fn property_suites() -> Outcome {
    fn run<S: Strategy>(name: &str, cases: u32, s: S, f: impl Fn(S::Value) -> common::Check) -> Result<u32, String> {
        let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
        runner.run(&s, f).map_err(|e| format!("{name}: {e}"))?;
        Ok(cases)
    }
    let mut total = 0;
    total += run("orbit containment", 2000, common::raw(), common::orbit_containment)?;
    total += run("order correspondence", 2000, common::raw_pair(), common::order_correspondence)?;
    total += run("admissibility", 2000, common::digit_seed(), common::admissibility_consistency)?;
    total += run("round trip", 2000, common::raw(), common::round_trip)?;
    total += run("arithmetic", 2000, common::raw_pair(), common::field_arithmetic)?;
    Ok(format!("{total} inputs over {} bases", common::bases().len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("confluent expansion fixtures", expansion_fixtures),
        ("three-way consistency sweep", consistency_sweep),
        ("gap identities", gap_identities),
        ("spectrum gap bound", spectrum_gaps),
        ("normalization soundness", normalization),
        ("finiteness counterexamples", finiteness),
        ("language equality", languages),
        ("cross-oracle gap words", cross_oracle),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
