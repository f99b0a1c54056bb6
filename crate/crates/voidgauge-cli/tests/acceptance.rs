//! Acceptance suite: one test per release criterion. Each test ends by
//! printing an `ACCEPTANCE <n> PASS` line (visible with `--nocapture`); the
//! per-test ok/FAILED lines double as the criterion checklist.

use std::collections::HashSet;
use std::process::{Command, Output};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;

use voidgauge::indicators::{compute_report, AnalysisOptions};
use voidgauge::model::{
    AdaptFrequency, ExamPolicy, IntellectView, ItemDraft, ItemScales, Lang, PromptSharing,
    Response, RespondentId, ToolDifference, YesNoUnsure,
};
use voidgauge::recode::derive_signals;
use voidgauge::rubric::{classify_claim, Claim, Purpose, Strength, Verdict};
use voidgauge::stats::{
    exact_or_ci, fisher_exact_two_sided, inverse_normal_cdf, wilson_ci, CrossTab2x2, OddsRatio,
};
use voidgauge::synth::{generate_fixture, CountSpec};
use voidgauge_testkit::noncentral::{conditional_mle, Weights};
use voidgauge_testkit::{cases, fisher, naive};

const BIN: &str = env!("CARGO_BIN_EXE_voidgauge");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "`voidgauge {}` failed:\n{}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn rel_diff(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

// --- 1: pilot prevalence panel ---------------------------------------------

#[test]
fn criterion_1_pilot_prevalence_panel() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = dir.path().join("pilot.csv");
    let fixture = fixture.to_str().unwrap();
    run_ok(&["synth", "--out", fixture]);

    let started = Instant::now();
    let out = run_ok(&["compute", "--input", fixture, "--out", "json"]);
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "compute took {elapsed:?} on n=214"
    );

    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // (id, k, n, integer %, published interval bounds; bounds may differ by
    // one point from ours because of rounding conventions)
    let expected: [(&str, i64, i64, i64, i64, i64); 5] = [
        ("a1", 32, 58, 55, 43, 67),
        ("a2a", 43, 195, 22, 17, 28),
        ("a2b", 35, 43, 81, 67, 90),
        ("a3a", 44, 119, 37, 29, 46),
        ("a3b", 41, 44, 93, 82, 98),
    ];
    let indicators = doc["indicators"].as_array().unwrap();
    assert_eq!(indicators.len(), 5);
    for (ind, (id, k, n, pct, lo, hi)) in indicators.iter().zip(expected) {
        assert_eq!(ind["id"], id);
        assert_eq!(ind["k"].as_i64().unwrap(), k, "{id}: k");
        assert_eq!(ind["n"].as_i64().unwrap(), n, "{id}: n");
        assert_eq!(ind["pct"].as_i64().unwrap(), pct, "{id}: integer share");
        let got_lo = ind["pct_low"].as_i64().unwrap();
        let got_hi = ind["pct_high"].as_i64().unwrap();
        assert!(
            (got_lo - lo).abs() <= 1,
            "{id}: low bound {got_lo} vs published {lo}"
        );
        assert!(
            (got_hi - hi).abs() <= 1,
            "{id}: high bound {got_hi} vs published {hi}"
        );
    }
    println!(
        "ACCEPTANCE 1 PASS: pilot fixture reproduces all five k/n pairs and integer shares, \
         interval bounds within one point of the published panel ({elapsed:?} for n=214)"
    );
}

// --- 2: stance association -------------------------------------------------

#[test]
fn criterion_2_stance_association() {
    let ds = generate_fixture(&CountSpec::pilot(), 7).unwrap();
    let report = compute_report(&ds, &AnalysisOptions::default()).unwrap();

    let t = &report.crosstab;
    assert_eq!((t.a, t.b, t.c, t.d), (41, 3, 22, 53));

    match report.association.sample_or {
        OddsRatio::Finite {
            numerator,
            denominator,
            value,
        } => {
            assert_eq!((numerator, denominator), (2173, 66));
            assert!(rel_diff(value, 2173.0 / 66.0) <= 1e-9);
        }
        ref other => panic!("expected a finite sample OR, got {other:?}"),
    }

    let p = report.association.p_two_sided;
    assert!(p < 1e-4, "p = {p}");
    let oracle = fisher::two_sided_p(41, 3, 22, 53).unwrap();
    assert!(
        rel_diff(p, oracle) <= 1e-12,
        "p = {p} vs enumeration oracle {oracle}"
    );
    println!(
        "ACCEPTANCE 2 PASS: crosstab (41, 3, 22, 53), sample OR 2173/66, \
         Fisher p {p:.4e} matches exact enumeration to 1e-12 relative"
    );
}

// --- 3: Wilson sweep --------------------------------------------------------

#[test]
fn criterion_3_wilson_sweep() {
    let z = inverse_normal_cdf(0.975);
    let zz = z * z;
    let mut points = 0u64;
    for n in 1u64..=200 {
        for k in 0..=n {
            let ci = wilson_ci(k, n, 0.95).unwrap();
            let p_hat = k as f64 / n as f64;
            for p in [ci.ci_low, ci.ci_high] {
                assert!((0.0..=1.0).contains(&p), "({k}, {n}): endpoint {p}");
                let residual = (p_hat - p).powi(2) - zz * p * (1.0 - p) / n as f64;
                assert!(
                    residual.abs() <= 1e-10,
                    "({k}, {n}): endpoint {p} leaves residual {residual:e}"
                );
            }
            let mirror = wilson_ci(n - k, n, 0.95).unwrap();
            assert!(
                (ci.ci_low - (1.0 - mirror.ci_high)).abs() <= 1e-12
                    && (ci.ci_high - (1.0 - mirror.ci_low)).abs() <= 1e-12,
                "({k}, {n}): mirror symmetry broken"
            );
            points += 1;
        }
    }
    println!(
        "ACCEPTANCE 3 PASS: {points} (k, n) pairs up to n=200 satisfy the score \
         quadratic to 1e-10, stay in [0, 1], and mirror to 1e-12"
    );
}

// --- 4: Fisher vs exhaustive enumeration ------------------------------------

#[test]
fn criterion_4_fisher_enumeration_equivalence() {
    let mut checked = 0u64;
    for n in 1u64..=40 {
        for r1 in 0..=n {
            let r2 = n - r1;
            for c1 in 0..=n {
                let Some(oracle) = fisher::two_sided_by_margins(r1, r2, c1) else {
                    continue;
                };
                let lo = c1.saturating_sub(r2);
                for (i, want) in oracle.iter().enumerate() {
                    let a = lo + i as u64;
                    let (b, c) = (r1 - a, c1 - a);
                    let d = r2 - c;
                    let t =
                        CrossTab2x2::new(a as u32, b as u32, c as u32, d as u32).unwrap();
                    let got = fisher_exact_two_sided(&t).unwrap();
                    assert!(
                        rel_diff(got, *want) <= 1e-12,
                        "table ({a}, {b}, {c}, {d}): {got} vs oracle {want}"
                    );
                    checked += 1;
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 4 PASS: two-sided p matches full enumeration on all \
         {checked} non-degenerate tables with N <= 40 (1e-12 relative)"
    );
}

// --- 5: odds-ratio interval inversion ----------------------------------------

#[test]
fn criterion_5_or_interval_inversion() {
    let mut rng = StdRng::seed_from_u64(20_260_819);
    for round in 0..100 {
        let (a, b, c, d) = cases::random_table(&mut rng, 60);
        let t = CrossTab2x2::new(a as u32, b as u32, c as u32, d as u32).unwrap();
        let (lo, hi) = exact_or_ci(&t, 0.95).unwrap();
        assert!(lo > 0.0 && hi.is_finite(), "cells are all positive");

        let w = Weights::of(a, b, c, d).unwrap();
        let upper_at_lo = w.upper_tail(lo, a);
        let lower_at_hi = w.lower_tail(hi, a);
        assert!(
            (upper_at_lo - 0.025).abs() <= 1e-6,
            "round {round} ({a}, {b}, {c}, {d}): P_lo(X >= a) = {upper_at_lo}"
        );
        assert!(
            (lower_at_hi - 0.025).abs() <= 1e-6,
            "round {round} ({a}, {b}, {c}, {d}): P_hi(X <= a) = {lower_at_hi}"
        );

        let mle = conditional_mle(a, b, c, d).expect("interior cell");
        assert!(
            lo <= mle && mle <= hi,
            "round {round} ({a}, {b}, {c}, {d}): CI ({lo}, {hi}) misses cMLE {mle}"
        );
    }
    println!(
        "ACCEPTANCE 5 PASS: on 100 random tables (N <= 60) both endpoints invert \
         their conditional tail to 0.025 within 1e-6 and the interval contains the cMLE"
    );
}

// --- 6: recode boundaries ----------------------------------------------------

fn base_draft() -> ItemDraft {
    ItemDraft {
        item1a: 0,
        item1b: AdaptFrequency::Sometimes,
        item1c: Some(0),
        item2: YesNoUnsure::No,
        item3: ExamPolicy::Forbid,
        item4: YesNoUnsure::No,
        item5: YesNoUnsure::No,
        item6: YesNoUnsure::No,
        item7: ToolDifference::OnlyDegree,
        item8: PromptSharing::No,
        item9: IntellectView::Material,
        item10: None,
    }
}

fn signals_for(draft: ItemDraft) -> voidgauge::recode::Signals {
    let (scales, warnings) = ItemScales::from_draft(draft).expect("coherent draft");
    assert!(warnings.is_empty());
    derive_signals(&Response::new(RespondentId::new("b"), Lang::En, scales))
}

#[test]
fn criterion_6_recode_boundaries() {
    // Skill screen is strict: 5 is out, 6 is in.
    assert!(!signals_for(ItemDraft { item1a: 5, ..base_draft() }).ai_skilled);
    assert!(signals_for(ItemDraft { item1a: 6, ..base_draft() }).ai_skilled);

    // Contribution screen is inclusive: 65 is out, 66 is in.
    let c65 = ItemDraft { item1c: Some(65), ..base_draft() };
    let c66 = ItemDraft { item1c: Some(66), ..base_draft() };
    assert_eq!(signals_for(c65).high_contribution, Some(false));
    assert_eq!(signals_for(c66).high_contribution, Some(true));

    // Reflection gate counts trimmed Unicode scalars and is inclusive at 20;
    // item8 stays non-affirmative so the text alone must decide.
    let s19 = ItemDraft { item10: Some("い".repeat(19)), ..base_draft() };
    let s20 = ItemDraft { item10: Some("い".repeat(20)), ..base_draft() };
    let (s19, s20) = (signals_for(s19), signals_for(s20));
    assert_eq!((s19.reflection_len, s19.metacognition), (19, false));
    assert_eq!((s20.reflection_len, s20.metacognition), (20, true));

    // Control screen: Sometimes is out, Frequently is in.
    let sometimes = base_draft();
    let frequently = ItemDraft { item1b: AdaptFrequency::Frequently, ..base_draft() };
    assert!(!signals_for(sometimes).high_control);
    assert!(signals_for(frequently).high_control);

    println!(
        "ACCEPTANCE 6 PASS: every dichotomization flips exactly at its cut \
         (skill 5/6, contribution 65/66, reflection 19/20 scalars, control Sometimes/Frequently)"
    );
}

// --- 7: pipeline vs naive recount ---------------------------------------------

#[test]
fn criterion_7_pipeline_matches_naive_recount() {
    let mut rng = StdRng::seed_from_u64(7);
    for round in 0..50u64 {
        let spec = cases::random_feasible_spec(&mut rng, 214);
        let ds = generate_fixture(&spec, round).unwrap();
        let counts = naive::recount(&ds.responses);
        let report = compute_report(&ds, &AnalysisOptions::default())
            .expect("feasible profiles have positive denominators");

        let got = [
            (report.a1.proportion.k, report.a1.proportion.n),
            (report.a2a.proportion.k, report.a2a.proportion.n),
            (report.a2b.proportion.k, report.a2b.proportion.n),
            (report.a3a.proportion.k, report.a3a.proportion.n),
            (report.a3b.proportion.k, report.a3b.proportion.n),
        ];
        let want = [counts.a1, counts.a2a, counts.a2b, counts.a3a, counts.a3b];
        assert_eq!(got, want, "round {round}: indicator counts diverge");
        let t = &report.crosstab;
        assert_eq!((t.a, t.b, t.c, t.d), counts.crosstab, "round {round}");

        // Nesting: numerators live inside their denominators, and each
        // follow-on indicator's denominator is the previous numerator.
        for ind in report.indicators() {
            let denom: HashSet<_> = ind.denominator_ids.iter().collect();
            assert_eq!(denom.len(), ind.denominator_ids.len(), "{}: dup ids", ind.id);
            assert!(
                ind.numerator_ids.iter().all(|id| denom.contains(id)),
                "round {round}: {} numerator escapes its denominator",
                ind.id
            );
        }
        assert_eq!(report.a2b.denominator_ids, report.a2a.numerator_ids);
        assert_eq!(report.a3b.denominator_ids, report.a3a.numerator_ids);
        assert_eq!(report.crosstab.total(), report.a3a.proportion.n);
    }
    println!(
        "ACCEPTANCE 7 PASS: on 50 random synthetic datasets every indicator equals \
         the naive field-level recount and the membership nesting never breaks"
    );
}

// --- 8: rubric truth table -----------------------------------------------------

#[test]
fn criterion_8_rubric_truth_table() {
    use IntellectView::*;
    use Purpose::*;
    use Strength::*;
    use Verdict::*;
    let table = [
        (Material, Exploration, Need, DowngradedToWant),
        (Material, Exploration, Want, CoherentAsStated),
        (Material, Scale, Need, CoherentAsStated),
        (Material, Scale, Want, CoherentAsStated),
        (Immaterial, Exploration, Need, CoherentAsStated),
        (Immaterial, Exploration, Want, CoherentAsStated),
        (Immaterial, Scale, Need, CoherentAsStated),
        (Immaterial, Scale, Want, CoherentAsStated),
        (Unsure, Exploration, Need, NotAssessable),
        (Unsure, Exploration, Want, NotAssessable),
        (Unsure, Scale, Need, NotAssessable),
        (Unsure, Scale, Want, NotAssessable),
    ];
    for (stance, purpose, strength, want) in table {
        let got = classify_claim(&Claim { stance, purpose, strength });
        assert_eq!(
            got.verdict, want,
            "({stance:?}, {purpose:?}, {strength:?})"
        );
    }

    // The same table through the binary, spot-checking the one downgrade.
    let out = run_ok(&[
        "claim-check",
        "--stance",
        "material",
        "--purpose",
        "exploration",
        "--strength",
        "need",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: downgraded to want"), "{text}");

    println!("ACCEPTANCE 8 PASS: all 12 (stance, purpose, strength) combinations classify as specified");
}

// --- 9: determinism -------------------------------------------------------------

#[test]
fn criterion_9_byte_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    run_ok(&["synth", "--seed", "11", "--out", a.to_str().unwrap()]);
    run_ok(&["synth", "--seed", "11", "--out", b.to_str().unwrap()]);
    let bytes_a = std::fs::read(&a).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, std::fs::read(&b).unwrap(), "fixture files differ");

    let input = a.to_str().unwrap();
    for format in ["markdown", "json", "plain"] {
        let first = run_ok(&["compute", "--input", input, "--out", format]);
        let second = run_ok(&["compute", "--input", input, "--out", format]);
        assert_eq!(
            first.stdout, second.stdout,
            "{format} report differs between runs"
        );
    }
    println!(
        "ACCEPTANCE 9 PASS: same seed gives byte-identical fixtures; repeated \
         default reports are byte-identical in every format"
    );
}
