//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every tolerance is exact (boolean or integer equality) except the
//! per-fixture wall-clock limit in criterion 1. Randomized criteria use pinned
//! seeds. Criterion 1 is expected to fail: the published 9-color `Q_4`
//! formula is not 6-polychromatic. The process exits non-zero only if the set
//! of failing criteria differs from that expectation.
//!
//! Set `POLYCHROME_FULL_D6=1` to also run the complete d = 6 exhaustions.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polychrome::abelian::groups_of_order;
use polychrome::adversary::{construct_witness, AdversaryInput, Case};
use polychrome::bounds::{chen_lower, p1_exact, p_bas, upper_os};
use polychrome::oracle::{check_subcube, embed_witness, explicit_check, sample_cross_validation};
use polychrome::polycheck::facet_colors;
use polychrome::search::{compute_plin, find_coloring, PlinResult, SearchOptions, SearchStatus};
use polychrome::{is_polychromatic, FactoredAbelianGroup, GroupElement};

const FIXTURE_TIME_LIMIT: Duration = Duration::from_secs(60);
const CROSSVAL_SEED: u64 = 20_250_501;
const CROSSVAL_SAMPLES: usize = 500;
const ADVERSARY_SEED: u64 = 7_000_007;
const ADVERSARY_SAMPLES: usize = 10_000;
const M17_BUDGET: u64 = 50_000_000;
const EXPECTED_FAILURES: [u32; 1] = [1];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn single_thread() -> SearchOptions {
    SearchOptions { threads: Some(1), ..Default::default() }
}

fn criterion_1() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_polychrome");
    let mut parts = Vec::new();
    let mut all = true;
    for name in ["chi26", "chi36a", "chi36b", "chi46"] {
        let started = Instant::now();
        let out = Command::new(bin).args(["verify", "--fixture", name, "--d", "6"]).output().expect("cli runs");
        let took = started.elapsed();
        let ok = out.status.code() == Some(0) && took < FIXTURE_TIME_LIMIT;
        all &= ok;
        parts.push(format!("{name}:{}({:.2}s)", if ok { "ok" } else { "fail" }, took.as_secs_f64()));
    }
    let corrected = Command::new(bin).args(["verify", "--fixture", "chi46c", "--d", "6"]).output().expect("cli runs");
    parts.push(format!("chi46c:{}", if corrected.status.code() == Some(0) { "ok" } else { "fail" }));
    let note = if all { "" } else { "; the published chi46 misses color (0,2) on *****1*, chi46c is the p-for-q reading" };
    outcome(all, format!("{}{note}", parts.join(" ")))
}

fn exhaustion_range(r: &PlinResult) -> Vec<u64> {
    r.exhaustion
        .iter()
        .filter(|s| s.status == SearchStatus::NoneExists && s.found.is_none())
        .map(|s| s.colors)
        .collect()
}

fn certificate_ok(r: &PlinResult) -> bool {
    r.certificate.as_ref().is_some_and(|c| {
        let chi = c.to_coloring(r.ell).unwrap();
        chi.colors() == r.value.unwrap_or(0) && is_polychromatic(&chi, r.d).unwrap().polychromatic
    })
}

fn plin_matches(ell: usize, d: usize, value: u64, opts: &SearchOptions) -> (bool, String) {
    let started = Instant::now();
    let r = compute_plin(ell, d, opts).unwrap();
    let range = exhaustion_range(&r);
    let want: Vec<u64> = (value + 1..=r.upper_bound).collect();
    let ok = r.value == Some(value) && range == want && certificate_ok(&r);
    let detail = format!(
        "p_lin^{ell}({d})={:?} none_exists for M={}..{} ({:.2}s)",
        r.value,
        range.first().copied().unwrap_or(0),
        range.last().copied().unwrap_or(0),
        started.elapsed().as_secs_f64()
    );
    (ok, detail)
}

fn criterion_2() -> Outcome {
    let (ok, detail) = plin_matches(2, 4, 6, &single_thread());
    outcome(ok && upper_os(2, 4).unwrap() == 10, detail)
}

fn criterion_3() -> Outcome {
    let (a, da) = plin_matches(2, 5, 9, &single_thread());
    let (b, db) = plin_matches(3, 5, 6, &single_thread());

    // resuming from a checkpoint under a small budget reaches the same answer
    let dir = tempfile::tempdir().unwrap();
    let opts = SearchOptions {
        threads: Some(1),
        budget: Some(20_000),
        checkpoint: Some(dir.path().join("plin25.json")),
        ..Default::default()
    };
    let mut rounds = 0;
    let resumed = loop {
        rounds += 1;
        let r = compute_plin(2, 5, &opts).unwrap();
        if r.undecided.is_none() || rounds > 10_000 {
            break r;
        }
    };
    let c = resumed.value == Some(9) && exhaustion_range(&resumed) == (10..=20).collect::<Vec<_>>();
    outcome(a && b && c, format!("{da}; {db}; checkpointed run agreed after {rounds} rounds"))
}

fn verified_witness(inp: &AdversaryInput) -> bool {
    let w = construct_witness(inp).unwrap();
    let chi = inp.coloring();
    if inp.h.iter().all(|h| h.is_zero()) {
        return w.cases() == vec![Case::Monochromatic];
    }
    let missing = &w.missing_color;
    let by_vectors = !facet_colors(&chi, &w.x).unwrap().contains(missing);
    let by_subcube = check_subcube(&chi, &embed_witness(&w.x)).unwrap().contains(missing);
    by_vectors && by_subcube && w.cases().iter().all(|c| *c != Case::Monochromatic)
}

fn criterion_4() -> Outcome {
    let mut searches = 0;
    let mut absent = true;
    for d in 3..=4 {
        for m in 3..=6 {
            searches += 1;
            absent &= find_coloring(d - 1, d, m, &single_thread()).unwrap().status == SearchStatus::NoneExists;
        }
    }

    let mut exhaustive = 0usize;
    let mut exhaustive_ok = true;
    for m in 3..=6 {
        for g in groups_of_order(m).unwrap() {
            let elems: Vec<GroupElement> = g.elements().collect();
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        let inp = AdversaryInput::new(3, g.clone(), vec![a.clone(), b.clone(), c.clone()]).unwrap();
                        if inp.h.iter().any(|h| !h.is_zero()) {
                            exhaustive += 1;
                            exhaustive_ok &= verified_witness(&inp);
                        }
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(ADVERSARY_SEED);
    let mut random_ok = true;
    for _ in 0..ADVERSARY_SAMPLES {
        let d = rng.random_range(4..=6);
        let order = rng.random_range(3..=8u64);
        let groups = groups_of_order(order).unwrap();
        let g: FactoredAbelianGroup = groups[rng.random_range(0..groups.len())].clone();
        let h: Vec<GroupElement> = (0..d).map(|_| g.element_at(rng.random_range(0..order as usize))).collect();
        random_ok &= verified_witness(&AdversaryInput::new(d, g, h).unwrap());
    }
    outcome(
        absent && exhaustive_ok && random_ok,
        format!(
            "{searches} searches absent={absent}; d=3 exhaustive {exhaustive} colorings ok={exhaustive_ok}; \
             {ADVERSARY_SAMPLES} random h (seed {ADVERSARY_SEED}) ok={random_ok}"
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CROSSVAL_SEED);
    let s = sample_cross_validation(&mut rng, CROSSVAL_SAMPLES, 3, 4, 6, 2).unwrap();
    outcome(
        s.samples >= 500 && s.oracle_disagreements == 0 && s.range_disagreements == 0,
        format!(
            "{} samples (seed {CROSSVAL_SEED}), {} polychromatic, oracle disagreements {}, range disagreements {}",
            s.samples, s.polychromatic, s.oracle_disagreements, s.range_disagreements
        ),
    )
}

fn criterion_6() -> Outcome {
    let edge = (1..=50).all(|d| p_bas(1, d).unwrap() == p1_exact(d));
    let small = p_bas(2, 3).unwrap() == 2 && p_bas(2, 4).unwrap() == 4;
    let chen: Vec<u64> = (4..=6).map(|d| chen_lower(d).unwrap()).collect();
    let os = upper_os(2, 4).unwrap();
    outcome(
        edge && small && chen == [6, 9, 15] && os == 10,
        format!("p_bas^1 = floor((d+1)^2/4) for d<=50: {edge}; p_bas^2(3,4) ok: {small}; chen_lower(4..6)={chen:?}; upper_os(2,4)={os}"),
    )
}

fn criterion_7() -> Outcome {
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for ell in 1..=2 {
        for d in ell..=4 {
            for m in 1..=6 {
                cases += 1;
                let a = find_coloring(ell, d, m, &single_thread()).unwrap().status;
                let b = find_coloring(ell, d, m, &SearchOptions { threads: Some(1), ..SearchOptions::unpruned() }).unwrap().status;
                if a != b {
                    mismatches.push((ell, d, m));
                }
            }
        }
    }
    outcome(mismatches.is_empty(), format!("{cases} instances, mismatches {mismatches:?}"))
}

fn criterion_8() -> Outcome {
    let r16 = find_coloring(2, 6, 16, &single_thread()).unwrap();
    let cert_ok = r16.found.as_ref().is_some_and(|f| {
        let chi = f.to_coloring(2).unwrap();
        is_polychromatic(&chi, 6).unwrap().polychromatic && explicit_check(&chi, 7, 6).unwrap().success()
    });
    let r17 = find_coloring(2, 6, 17, &SearchOptions { budget: Some(M17_BUDGET), ..single_thread() }).unwrap();
    let status = format!("{:?}", r17.status);
    let mut detail = format!("M=16 certificate ok={cert_ok}; M=17 within {M17_BUDGET} vectors: {status}");
    let mut pass = cert_ok && r17.status == SearchStatus::NoneExists;
    if std::env::var_os("POLYCHROME_FULL_D6").is_some() {
        for (ell, value) in [(2, 16), (3, 12), (4, 9)] {
            let (ok, d) = plin_matches(ell, 6, value, &SearchOptions::default());
            pass &= ok;
            detail.push_str(&format!("; {d}"));
        }
    } else {
        detail.push_str("; full d=6 exhaustion skipped (set POLYCHROME_FULL_D6=1)");
    }
    outcome(pass, detail)
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "published 6-polychromatic fixtures verify via the CLI, < 60 s each", criterion_1),
        (2, "p_lin^2(4) = 6", criterion_2),
        (3, "p_lin^2(5) = 9 and p_lin^3(5) = 6, checkpointable", criterion_3),
        (4, "Q_(d-1) impossibility at desk scale", criterion_4),
        (5, "oracle equivalence on random colorings", criterion_5),
        (6, "bounds table values", criterion_6),
        (7, "pruning safety", criterion_7),
        (8, "d = 6: M=16 certificate, M=17 exhausted within budget", criterion_8),
    ];
    let mut failed = BTreeSet::new();
    for (id, title, run) in criteria {
        let started = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{id}] {title} | {} | {:.2}s", o.detail, started.elapsed().as_secs_f64());
        if !o.pass {
            failed.insert(id);
        }
    }
    let expected: BTreeSet<u32> = EXPECTED_FAILURES.into_iter().collect();
    if failed != expected {
        eprintln!("unexpected acceptance outcome: failing {failed:?}, expected {expected:?}");
        std::process::exit(1);
    }
    println!("acceptance: {} of 8 criteria pass; expected failures {expected:?}", 8 - failed.len());
}
