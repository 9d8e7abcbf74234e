//! Acceptance suite. Each criterion prints one `[PASS]` or `[FAIL]` line.

use std::io::Write;
use std::time::Instant;

use csd_bench::{generate_inputs, run_bench, BenchConfig};
use csd_core::converters::{bin2naf, garner_rule};
use csd_core::oracle::{
    count_naf_reps, cross_check, enumerate_sd_reps, min_weight, CheckDomain, CrossCheckReport,
};
use csd_core::strsub::{
    fsm_step, fsm_step_closed_form, substitute_wblock, wblock_sequence, FsmState,
};
use csd_core::{
    bit_length, carry_recurrence_oracle, convert, get_carry, traced, BinaryWord, ConverterId,
    MAX_WORDLENGTH,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Writes to the real stdout so the lines survive test output capture.
fn report_line(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_domain(domain: CheckDomain) -> Result<CrossCheckReport, String> {
    cross_check(&domain).map_err(|e| e.to_string())
}

fn domains() -> [CheckDomain; 2] {
    [
        CheckDomain::Range {
            start: 0,
            end: 1 << 20,
        },
        CheckDomain::Random {
            count: 1_000_000,
            bits: MAX_WORDLENGTH,
            seed: 1,
        },
    ]
}

fn cross_equivalence() -> Outcome {
    let mut inputs = 0;
    for domain in domains() {
        let report = run_domain(domain)?;
        inputs += report.inputs;
        for r in &report.results {
            ensure(r.mismatches == 0, || {
                format!(
                    "{} has {} mismatches on {}, first at {:?}",
                    r.converter, r.mismatches, report.domain, r.first_failure
                )
            })?;
        }
        ensure(report.results.len() == ConverterId::ALL.len(), || {
            "not every converter was checked".into()
        })?;
    }
    Ok(format!("{inputs} inputs, 11 converters, 0 mismatches"))
}

fn validity() -> Outcome {
    let mut inputs = 0;
    for domain in domains() {
        let report = run_domain(domain)?;
        inputs += report.inputs;
        for r in &report.results {
            ensure(r.invalid == 0, || {
                format!(
                    "{} produced {} invalid outputs, first at {:?}",
                    r.converter, r.invalid, r.first_failure
                )
            })?;
        }
    }
    Ok(format!("{inputs} inputs, value and non-adjacency hold"))
}

fn minimality() -> Outcome {
    for v in 0..(1u64 << 12) {
        let x = BinaryWord::from_value(v).unwrap();
        let best = min_weight(v, bit_length(v) + 1).map_err(|e| e.to_string())?;
        let got = bin2naf(x).weight();
        ensure(got == best, || {
            format!("x={v}: weight {got}, minimum {best}")
        })?;
    }
    Ok("x < 4096, weight equals oracle minimum".into())
}

fn uniqueness() -> Outcome {
    for v in 0..(1u64 << 10) {
        let len = bit_length(v) + 1;
        let count = count_naf_reps(v, len).map_err(|e| e.to_string())?;
        ensure(count == 1, || format!("x={v}: {count} non-adjacent forms"))?;
        let naf = enumerate_sd_reps(v, len)
            .map_err(|e| e.to_string())?
            .into_iter()
            .find(|c| c.is_non_adjacent())
            .unwrap();
        let rep = bin2naf(BinaryWord::from_value(v).unwrap());
        ensure(naf.digits == rep.digits(), || {
            format!(
                "x={v}: enumerated {:?}, converter {:?}",
                naf.digits,
                rep.digits()
            )
        })?;
    }
    Ok("x < 1024, one non-adjacent form each, equal to the converter".into())
}

fn worked_examples() -> Outcome {
    let twelve_digit = [
        (56, "0 0 0 0 0 1 0 0 -1 0 0 0"),
        (696, "0 1 0 -1 0 -1 0 0 -1 0 0 0"),
        (569, "0 0 1 0 0 1 0 0 -1 0 0 1"),
        (571, "0 0 1 0 0 1 0 0 0 -1 0 -1"),
        (48, "0 0 0 0 0 1 0 -1 0 0 0 0"),
    ];
    for (v, want) in twelve_digit {
        let x = BinaryWord::new(v, 11).unwrap();
        for id in ConverterId::ALL {
            let got = convert(id, x).to_digit_list();
            ensure(got == want, || {
                format!("{id}({v}) = {got}, expected {want}")
            })?;
        }
    }

    for (block, want) in [
        (7, "0 1 0 0 -1"),
        (3, "0 1 0 -1"),
        (87, "0 1 0 -1 0 -1 0 0 -1"),
        (59, "0 1 0 0 0 -1 0 -1"),
    ] {
        let got = substitute_wblock(block)
            .map_err(|e| e.to_string())?
            .to_digit_list();
        ensure(got == want, || {
            format!("w-block {block} -> {got}, expected {want}")
        })?;
    }

    let forms: Vec<Vec<i8>> = enumerate_sd_reps(7, 5)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|c| c.digits.iter().rev().copied().collect())
        .collect();
    for want in [
        vec![0, 1, -1, 1, 1],
        vec![0, 1, 0, -1, 1],
        vec![0, 1, 0, 0, -1],
    ] {
        ensure(forms.contains(&want), || {
            format!("form {want:?} of 7 not enumerated")
        })?;
    }
    let seven = bin2naf(BinaryWord::new(7, 4).unwrap());
    ensure(
        seven.to_digit_list() == "0 1 0 0 -1" && seven.weight() == 2,
        || format!("converter picked {} for 7", seven.to_digit_list()),
    )?;

    let r4 = garner_rule(0, 1, 1);
    ensure((r4.plus, r4.minus, r4.next_carry) == (0, 1, 1), || {
        format!("carry rule (0,1,1): {r4:?}")
    })?;
    let r5 = garner_rule(1, 0, 0);
    ensure((r5.plus, r5.minus, r5.next_carry) == (1, 0, 0), || {
        format!("carry rule (1,0,0): {r5:?}")
    })?;

    for (state, digit, next) in [
        (FsmState::new(false, true, true), -1, true),
        (FsmState::new(true, false, false), 1, false),
    ] {
        for out in [fsm_step(state), fsm_step_closed_form(state)] {
            ensure(out.digit == digit && out.next_flag == next, || {
                format!("scanner rule {state:?}: {out:?}")
            })?;
        }
    }
    Ok("5 substitutions, 4 blocks, 3 forms of 7, 4 rule rows".into())
}

const WBLOCK_TERMS: [u64; 88] = [
    3, 7, 11, 15, 23, 27, 31, 43, 47, 55, 59, 63, 87, 91, 95, 107, 111, 119, 123, 127, 171, 175,
    183, 187, 191, 215, 219, 223, 235, 239, 247, 251, 255, 343, 347, 351, 363, 367, 375, 379, 383,
    427, 431, 439, 443, 447, 471, 475, 479, 491, 495, 503, 507, 511, 683, 687, 695, 699, 703, 727,
    731, 735, 747, 751, 759, 763, 767, 855, 859, 863, 875, 879, 887, 891, 895, 939, 943, 951, 955,
    959, 983, 987, 991, 1003, 1007, 1015, 1019, 1023,
];

fn wblock_terms() -> Outcome {
    let got = wblock_sequence(88);
    for (i, (g, w)) in got.iter().zip(WBLOCK_TERMS.iter()).enumerate() {
        ensure(g == w, || format!("term {}: {g}, expected {w}", i + 1))?;
    }
    ensure(got.len() == 88, || format!("{} terms", got.len()))?;
    Ok("88 terms match".into())
}

fn carry_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let limit = 1u64 << 63;
    for _ in 0..100_000 {
        let a = rng.random_range(0..limit);
        let b = rng.random_range(0..limit);
        ensure(get_carry(a, b) == carry_recurrence_oracle(a, b), || {
            format!("a={a} b={b}")
        })?;
    }
    for a in 0..64 {
        for b in 0..64 {
            ensure(get_carry(a, b) == carry_recurrence_oracle(a, b), || {
                format!("a={a} b={b}")
            })?;
        }
    }
    Ok("100000 random pairs and all pairs below 64".into())
}

fn structural_identities() -> Outcome {
    for v in 0..(1u64 << 16) {
        let x = BinaryWord::from_value(v).unwrap();
        let digits = (1u64 << (x.wordlength() + 1)) - 1;

        let (_, t) = traced(ConverterId::Reitwiesner, x);
        let g = t.g.ok_or("reitwiesner trace has no g")?;
        let c = get_carry(v, 2 * v).mask();
        ensure(g == ((c >> 1) ^ v) & digits, || {
            format!("g identity fails at {v}")
        })?;

        let (_, s) = traced(ConverterId::String0, x);
        let f = s.f.ok_or("string_0 trace has no f")?;
        let c = get_carry(v, v >> 1).mask();
        ensure(f == c & digits, || format!("f identity fails at {v}"))?;
    }
    Ok("g and f identities hold for x < 65536".into())
}

fn bench_harness() -> Outcome {
    let config = BenchConfig::default();
    let report = run_bench(&config).map_err(|e| e.to_string())?;
    ensure(report.rows.len() == ConverterId::ALL.len(), || {
        format!("{} rows", report.rows.len())
    })?;
    for id in ConverterId::ALL {
        ensure(report.row(id).is_some(), || format!("no row for {id}"))?;
    }
    ensure(
        report
            .rows
            .windows(2)
            .all(|w| w[0].stats.mean <= w[1].stats.mean),
        || "rows not sorted by mean".into(),
    )?;
    for r in &report.rows {
        let s = &r.stats;
        ensure(s.min <= s.median && s.median <= s.max, || {
            format!(
                "{}: min {} median {} max {}",
                r.converter, s.min, s.median, s.max
            )
        })?;
        ensure(r.input_checksum == report.input_checksum, || {
            format!("{} saw different inputs", r.converter)
        })?;
    }
    let table = report.to_table();
    for header in ["Minimum", "Maximum", "Median", "Mean", "Std dev"] {
        ensure(table.contains(header), || format!("table lacks {header}"))?;
    }
    ensure(generate_inputs(&config) == generate_inputs(&config), || {
        "same seed gave different inputs".into()
    })?;
    let again = run_bench(&config).map_err(|e| e.to_string())?;
    ensure(again.input_checksum == report.input_checksum, || {
        "repeated run used different inputs".into()
    })?;

    report_line(&table);
    let grouping = report.grouping();
    let verdict = match grouping.holds {
        Some(true) => "mask-based faster than loop-based",
        Some(false) => "mask-based NOT uniformly faster than loop-based",
        None => "grouping not evaluated",
    };
    Ok(format!(
        "11 rows sorted by mean; informational: {verdict} (slowest mask {:?}, fastest loop {:?})",
        grouping.slowest_mask_based, grouping.fastest_loop_based
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("cross-equivalence of all converters", cross_equivalence),
        ("value preservation and non-adjacency", validity),
        ("minimal weight", minimality),
        ("uniqueness of the non-adjacent form", uniqueness),
        ("worked examples and rule rows", worked_examples),
        ("w-block sequence", wblock_terms),
        ("carry identity", carry_identity),
        ("structural identities", structural_identities),
        ("benchmark harness", bench_harness),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => report_line(&format!(
                "[PASS] criterion {}: {name} ({detail}) [{secs:.1}s]",
                i + 1
            )),
            Err(why) => {
                report_line(&format!(
                    "[FAIL] criterion {}: {name} ({why}) [{secs:.1}s]",
                    i + 1
                ));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
