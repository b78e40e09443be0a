//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the verdict lines are always visible; exits non-zero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gammasr::algebra::{parse_gamma_semiring, validate_gamma_semiring, GammaSemiring};
use gammasr::cli;
use gammasr::correspondence::{
    bijection_kinds, preservation_samples, verify_bijection_with, verify_monotonicity, verify_preservation,
    ClaimRecord, ClaimStatus, TheoremReport, TransferContext,
};
use gammasr::enumeration::{
    all_fuzzy_subsets, candidate_count, enumerate_fuzzy_ideals, DEFAULT_ENUMERATION_CAP,
};
use gammasr::fuzzy::{Carrier, FuzzySubset, IdealKind};
use gammasr::operator::{brute_force_operator_semiring, FiniteSemiring, Side};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

struct Entry {
    path: PathBuf,
    g: GammaSemiring,
    ctx: TransferContext,
}

fn load_corpus() -> Vec<Entry> {
    let root = corpus_dir();
    let mut paths: Vec<PathBuf> = ["trivial.gsr", "B.gsr", "Z2.gsr"]
        .iter()
        .map(|f| root.join(f))
        .collect();
    for sub in ["catalog", "exhaustive"] {
        let mut files: Vec<PathBuf> = std::fs::read_dir(root.join(sub))
            .expect("corpus directory")
            .map(|e| e.expect("dir entry").path())
            .filter(|p| p.extension().is_some_and(|e| e == "gsr"))
            .collect();
        files.sort();
        paths.extend(files);
    }
    paths
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path).expect("readable corpus file");
            let g = parse_gamma_semiring(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let ctx = TransferContext::new(g.clone()).expect("operator semirings fit the default cap");
            Entry { path, g, ctx }
        })
        .collect()
}

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn from_failures(failures: Vec<String>, summary: String) -> Self {
        match failures.first() {
            None => Verdict {
                passed: true,
                detail: summary,
            },
            Some(first) => Verdict {
                passed: false,
                detail: format!("{} failure(s), first: {first}", failures.len()),
            },
        }
    }
}

fn within(elapsed: Duration, limit: Duration, failures: &mut Vec<String>) {
    if elapsed > limit {
        failures.push(format!("took {elapsed:?}, limit {limit:?}"));
    }
}

fn report_failures(report: &TheoremReport, label: &str, failures: &mut Vec<String>) {
    for r in report.failures() {
        failures.push(format!("{label}: {}", r.id));
    }
}

// Axiom oracle written straight from the definitions, independent of the
// validator's own tuple walker.
fn axioms_hold(g: &GammaSemiring) -> bool {
    let (s, m) = (g.s_size(), g.g_size());
    let p = |a, al, b| g.ternary_product(a, al, b);
    for a in 0..s {
        for b in 0..s {
            if g.add_s(a, b) != g.add_s(b, a) {
                return false;
            }
            for c in 0..s {
                if g.add_s(g.add_s(a, b), c) != g.add_s(a, g.add_s(b, c)) {
                    return false;
                }
            }
        }
    }
    for x in 0..m {
        for y in 0..m {
            if g.add_g(x, y) != g.add_g(y, x) {
                return false;
            }
            for z in 0..m {
                if g.add_g(g.add_g(x, y), z) != g.add_g(x, g.add_g(y, z)) {
                    return false;
                }
            }
        }
    }
    for a in 0..s {
        for b in 0..s {
            for c in 0..s {
                for al in 0..m {
                    if p(a, al, g.add_s(b, c)) != g.add_s(p(a, al, b), p(a, al, c)) {
                        return false;
                    }
                    if p(g.add_s(a, b), al, c) != g.add_s(p(a, al, c), p(b, al, c)) {
                        return false;
                    }
                    for be in 0..m {
                        if p(a, g.add_g(al, be), c) != g.add_s(p(a, al, c), p(a, be, c)) {
                            return false;
                        }
                        for d in 0..s {
                            if p(a, al, p(b, be, d)) != p(p(a, al, b), be, d) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

fn criterion_1(corpus: &[Entry]) -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    let catalog = corpus
        .iter()
        .filter(|e| e.path.parent().is_some_and(|p| p.ends_with("catalog")))
        .count();
    if catalog < 20 {
        failures.push(format!("only {catalog} catalog structures"));
    }
    for e in corpus {
        if e.g.s_size() > 4 || !validate_gamma_semiring(&e.g).ok() || !axioms_hold(&e.g) {
            failures.push(format!("{} rejected", e.path.display()));
        }
    }
    let mut mutants = 0;
    for e in corpus.iter().filter(|e| matches!(e.g.name(), Some("B" | "Z2"))) {
        let g = &e.g;
        for alpha in 0..g.g_size() {
            for a in 0..g.s_size() {
                for b in 0..g.s_size() {
                    for v in (0..g.s_size()).filter(|&v| v != g.ternary_product(a, alpha, b)) {
                        let m = g.with_product(a, alpha, b, v).expect("value in range");
                        mutants += 1;
                        let flagged = !validate_gamma_semiring(&m).ok();
                        if flagged != !axioms_hold(&m) {
                            failures.push(format!(
                                "{} mutant {a}{alpha}{b}->{v} flagged={flagged}",
                                g.name().unwrap()
                            ));
                        }
                        if validate_gamma_semiring(&m) != validate_gamma_semiring(&m) {
                            failures.push("mutation report not deterministic".into());
                        }
                    }
                }
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(1), &mut failures);
    Verdict::from_failures(
        failures,
        format!(
            "{} structures valid ({catalog} catalog), {mutants} mutants agree with oracle, {:?}",
            corpus.len(),
            start.elapsed()
        ),
    )
}

fn criterion_2(corpus: &[Entry]) -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for e in corpus.iter().filter(|e| e.g.s_size() <= 3 && e.g.g_size() <= 2) {
        for side in [Side::Left, Side::Right] {
            let closure: BTreeSet<_> = e.ctx.operator(side).elements().iter().cloned().collect();
            match brute_force_operator_semiring(&e.g, side, closure.len() + 1) {
                Ok(brute) if brute == closure => checked += 1,
                Ok(brute) => failures.push(format!(
                    "{} {side}: closure {} vs brute {}",
                    e.path.display(),
                    closure.len(),
                    brute.len()
                )),
                Err(err) => failures.push(format!("{} {side}: {err}", e.path.display())),
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(10), &mut failures);
    Verdict::from_failures(
        failures,
        format!(
            "{checked} operator semirings match brute force, {:?}",
            start.elapsed()
        ),
    )
}

fn is_identity(sr: &FiniteSemiring, u: usize) -> bool {
    (0..sr.size()).all(|x| sr.mul(u, x) == x && sr.mul(x, u) == x)
}

fn criterion_3(corpus: &[Entry]) -> Verdict {
    let mut failures = Vec::new();
    let mut found = 0;
    for e in corpus {
        for (side, unity) in [(Side::Left, &e.ctx.left_unity), (Side::Right, &e.ctx.right_unity)] {
            if let Some(u) = unity {
                found += 1;
                if !is_identity(e.ctx.operator(side), u.element) {
                    failures.push(format!("{} {side} unity {}", e.path.display(), u.formal_sum));
                }
            }
        }
    }
    Verdict::from_failures(failures, format!("{found} unities are two-sided identities"))
}

fn criterion_4(corpus: &[Entry]) -> Verdict {
    let mut failures = Vec::new();
    let mut tested = 0;
    for e in corpus {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let samples: Vec<FuzzySubset> = [Carrier::S, Carrier::L, Carrier::R]
            .into_iter()
            .flat_map(|c| preservation_samples(&e.ctx, c, 2, 200, DEFAULT_ENUMERATION_CAP, &mut rng))
            .collect();
        let report = verify_preservation(&e.ctx, &samples);
        tested += report.records().map(|r| r.tested).sum::<usize>();
        report_failures(&report, &e.path.display().to_string(), &mut failures);
    }
    Verdict::from_failures(failures, format!("{tested} implications checked over C2"))
}

fn bijection_reports(corpus: &[Entry], chain_k: u64) -> Vec<(String, TheoremReport)> {
    corpus
        .iter()
        .filter(|e| e.ctx.has_both_unities())
        .map(|e| {
            let report = verify_bijection_with(&e.ctx, chain_k, DEFAULT_ENUMERATION_CAP, false)
                .unwrap_or_else(|err| panic!("{}: {err}", e.path.display()));
            (e.path.display().to_string(), report)
        })
        .collect()
}

fn select(reports: &[(String, TheoremReport)], keep: impl Fn(&str) -> bool) -> Vec<(&str, &ClaimRecord)> {
    let mut out = Vec::new();
    for (name, report) in reports {
        out.extend(
            report
                .records()
                .filter(|c| keep(&c.id))
                .map(|c| (name.as_str(), c)),
        );
    }
    out
}

fn plain_kind(id: &str) -> bool {
    [":right:", ":left:", ":two_sided:"]
        .iter()
        .any(|k| id.contains(k))
}

fn criterion_5(c2: &[(String, TheoremReport)], c3: &[(String, TheoremReport)], start: Instant) -> Verdict {
    let mut failures = Vec::new();
    let mut tested = 0;
    for reports in [c2, c3] {
        for (name, claim) in select(reports, |id| plain_kind(id) && id.contains(":roundtrip-")) {
            tested += claim.tested;
            if claim.status() != ClaimStatus::Pass {
                failures.push(format!("{name}: {}", claim.id));
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60), &mut failures);
    Verdict::from_failures(
        failures,
        format!(
            "{tested} round-trips exact over C2 and C3 on {} structures, {:?}",
            c2.len(),
            start.elapsed()
        ),
    )
}

// Two-sided ideal test written from the definition, for the B count.
fn oracle_two_sided_gamma(g: &GammaSemiring, f: &FuzzySubset) -> bool {
    let s = g.s_size();
    (0..s).all(|a| {
        (0..s).all(|b| {
            f.get(g.add_s(a, b)) >= f.get(a).min(f.get(b))
                && (0..g.g_size()).all(|al| f.get(g.ternary_product(a, al, b)) >= f.get(a).max(f.get(b)))
        })
    })
}

fn oracle_two_sided_semiring(sr: &FiniteSemiring, f: &FuzzySubset) -> bool {
    let n = sr.size();
    (0..n).all(|a| {
        (0..n).all(|b| {
            f.get(sr.add(a, b)) >= f.get(a).min(f.get(b)) && f.get(sr.mul(a, b)) >= f.get(a).max(f.get(b))
        })
    })
}

fn criterion_6(corpus: &[Entry], c2: &[(String, TheoremReport)]) -> Verdict {
    let mut failures = Vec::new();
    let b = corpus
        .iter()
        .find(|e| e.g.name() == Some("B"))
        .expect("B in corpus");
    let brute_s = all_fuzzy_subsets(Carrier::S, 2, 2, 9)
        .expect("9 candidates")
        .filter(|f| oracle_two_sided_gamma(&b.g, f))
        .count();
    let brute_l = all_fuzzy_subsets(Carrier::L, b.ctx.l.size(), 2, 9)
        .expect("9 candidates")
        .filter(|f| oracle_two_sided_semiring(&b.ctx.l, f))
        .count();
    let s = enumerate_fuzzy_ideals(b.ctx.checker(Carrier::S), 2, IdealKind::TwoSided).expect("small");
    let l = enumerate_fuzzy_ideals(b.ctx.checker(Carrier::L), 2, IdealKind::TwoSided).expect("small");
    if (brute_s, brute_l, s.len(), l.len()) != (6, 6, 6, 6) {
        failures.push(format!(
            "B counts: oracle S={brute_s} L={brute_l}, enumerated S={} L={}",
            s.len(),
            l.len()
        ));
    }
    let mut structures = 0;
    for e in corpus.iter().filter(|e| e.ctx.has_both_unities()) {
        let largest = [Carrier::S, Carrier::L, Carrier::R]
            .iter()
            .map(|&c| e.ctx.carrier_size(c))
            .max()
            .unwrap();
        if candidate_count(largest, 2) > 10_000 {
            continue;
        }
        structures += 1;
        let name = e.path.display().to_string();
        let report = &c2.iter().find(|(n, _)| *n == name).expect("bijection report").1;
        for claim in report
            .records()
            .filter(|c| c.id.ends_with(":onto") || c.id.ends_with(":cardinality"))
        {
            if plain_kind(&claim.id) && claim.status() != ClaimStatus::Pass {
                failures.push(format!("{name}: {}", claim.id));
            }
        }
    }
    Verdict::from_failures(
        failures,
        format!("B: 6 = 6 two-sided ideals (oracle agrees); counts and onto hold on {structures} structures"),
    )
}

fn criterion_7(c2: &[(String, TheoremReport)]) -> Verdict {
    let mut failures = Vec::new();
    let mut tested = 0;
    let kh = |id: &str| {
        bijection_kinds(Side::Left)
            .iter()
            .chain(bijection_kinds(Side::Right).iter())
            .filter(|k| k.closure().is_some())
            .any(|k| id.contains(&format!(":{}:", k.as_str())))
    };
    for (name, claim) in select(c2, kh) {
        tested += claim.tested;
        if claim.status() != ClaimStatus::Pass {
            failures.push(format!("{name}: {}", claim.id));
        }
    }
    Verdict::from_failures(
        failures,
        format!("{tested} k/h checks over C2 (round-trip, order, onto, counts)"),
    )
}

fn criterion_8(corpus: &[Entry]) -> Verdict {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for e in corpus {
        let report = verify_monotonicity(&e.ctx, 2, 1000, 8);
        pairs += report.records().map(|r| r.tested).sum::<usize>();
        report_failures(&report, &e.path.display().to_string(), &mut failures);
    }
    Verdict::from_failures(
        failures,
        format!("{pairs} ordered pairs preserved by all four maps"),
    )
}

fn criterion_9() -> Verdict {
    let mut failures = Vec::new();
    let root = corpus_dir();
    let path = |p: &str| root.join(p).display().to_string();
    let run = |args: &[String]| cli::run(std::iter::once("gammasr".to_string()).chain(args.iter().cloned()));
    let suite: Vec<String> = vec![
        "suite".into(),
        path("B.gsr"),
        "--chain".into(),
        "2".into(),
        "--samples".into(),
        "50".into(),
        "--seed".into(),
        "7".into(),
    ];
    let (first, second) = (run(&suite), run(&suite));
    if first != second || first.stdout.is_empty() {
        failures.push("suite output differs between runs".into());
    }
    if first.exit_code != 0 {
        failures.push(format!("suite exit {}", first.exit_code));
    }
    let cases: &[(&[&str], i32, &str)] = &[
        (&["validate", "B.gsr"], 0, "OK: axioms (1)-(4) hold"),
        (
            &["validate", "fixtures/not_gamma_semiring.gsr"],
            1,
            "left-distributive",
        ),
        (&["validate", "fixtures/bad_dimensions.gsr"], 2, "line 6"),
        (&["validate", "fixtures/out_of_range.gsr"], 2, "out of range"),
        (&["validate", "nosuch.gsr"], 2, ""),
        (&["validate", "B.gsr", "--bogus"], 2, "Usage"),
        (
            &[
                "check",
                "B.gsr",
                "fixtures/sigma_bad.fz",
                "--kind",
                "left",
                "--on",
                "S",
            ],
            1,
            "a=0 alpha=0 b=1",
        ),
        (
            &["check", "B.gsr", "fixtures/sigma_good.fz", "--kind", "two_sided"],
            0,
            "OK",
        ),
        (
            &["check", "B.gsr", "fixtures/bad_value.fz", "--kind", "left"],
            2,
            "",
        ),
        (&["check", "B.gsr", "fixtures/short.fz", "--kind", "left"], 2, ""),
        (
            &[
                "check",
                "fixtures/not_gamma_semiring.gsr",
                "fixtures/sigma_good.fz",
                "--kind",
                "left",
            ],
            2,
            "",
        ),
        (
            &["roundtrip", "B.gsr", "fixtures/sigma_good.fz", "--side", "left"],
            0,
            "roundtrip OK",
        ),
        (
            &[
                "enumerate",
                "B.gsr",
                "--chain",
                "2",
                "--kind",
                "two_sided",
                "--count-only",
            ],
            0,
            "count 6",
        ),
        (
            &[
                "enumerate",
                "catalog/maxmin4-G3.gsr",
                "--chain",
                "20",
                "--kind",
                "left",
            ],
            3,
            "",
        ),
        (&["build-operators", "B.gsr", "--max-elements", "1"], 3, ""),
        (
            &["suite", "catalog/maxmin3-G0.gsr", "--samples", "10"],
            0,
            "GATED",
        ),
    ];
    for (args, code, needle) in cases {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".gsr") || a.ends_with(".fz") {
                    path(a)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let out = run(&args);
        let text = format!("{}{}", out.stdout, out.stderr);
        if out.exit_code != *code || !text.contains(needle) {
            failures.push(format!(
                "`{}` exit {} (want {code})",
                args.join(" "),
                out.exit_code
            ));
        }
    }
    Verdict::from_failures(
        failures,
        format!(
            "suite report byte-identical ({} bytes); {} exit-code fixtures",
            first.stdout.len(),
            cases.len()
        ),
    )
}

fn main() -> ExitCode {
    let corpus = load_corpus();
    let mut verdicts = vec![
        ("1 axiom validator and mutation oracle", criterion_1(&corpus)),
        ("2 operator semirings equal brute force", criterion_2(&corpus)),
        ("3 unities are identities", criterion_3(&corpus)),
        ("4 preservation", criterion_4(&corpus)),
    ];
    let start = Instant::now();
    let c2 = bijection_reports(&corpus, 2);
    let c3 = bijection_reports(&corpus, 3);
    verdicts.push(("5 bijection round-trips", criterion_5(&c2, &c3, start)));
    verdicts.push(("6 bijection cardinality and onto", criterion_6(&corpus, &c2)));
    verdicts.push(("7 k- and h-ideal bijections", criterion_7(&c2)));
    verdicts.push(("8 monotonicity", criterion_8(&corpus)));
    verdicts.push(("9 CLI determinism and exit codes", criterion_9()));

    let mut all = true;
    for (label, v) in &verdicts {
        println!(
            "criterion {label}: {} ({})",
            if v.passed { "PASS" } else { "FAIL" },
            v.detail
        );
        all &= v.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
