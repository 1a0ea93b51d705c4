//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use ocn_core::analysis::{
    abc_decomposition, analyze, c_coefficient_bw, c_coefficient_same, monotonicity_counterexamples,
    IdentityStatus, LineClass, SameColorCap,
};
use ocn_core::drawing::{
    crossing_number, crossing_number_by_quadruples, Color, ColoredDrawing, GraphSpec,
};
use ocn_core::generators::{convex_alternating, random_generic, GridSpec};
use ocn_core::geometry::{validate_generic, Configuration, Point};
use ocn_core::search::{
    search, AnnealParams, Certificate, GraphFamily, Objective, SearchTask, Strategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random drawings per `n` for criteria 3 and 5.
const CORPUS_PER_N: u64 = 500;
const CORPUS_SIZES: [usize; 4] = [2, 3, 4, 5];
const CORPUS_RANGE: i64 = 60;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn n_choose_3(n: u64) -> u64 {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

fn side(p: Point, q: Point, r: Point) -> i128 {
    let (px, py) = (p.x as i128, p.y as i128);
    ((q.x as i128 - px) * (r.y as i128 - py) - (q.y as i128 - py) * (r.x as i128 - px)).signum()
}

/// Separated black-white pairs per line class, straight from the definition.
fn per_line_oracle(d: &ColoredDrawing) -> (u64, u64, u64) {
    let pts = d.points();
    let m = pts.len();
    let (mut a, mut b, mut c) = (0, 0, 0);
    for i in 0..m {
        for j in i + 1..m {
            let mut sep = 0;
            for u in 0..m {
                for v in u + 1..m {
                    if u == i || u == j || v == i || v == j || d.color(u) == d.color(v) {
                        continue;
                    }
                    if side(pts[i], pts[j], pts[u]) * side(pts[i], pts[j], pts[v]) < 0 {
                        sep += 1;
                    }
                }
            }
            match (d.color(i), d.color(j)) {
                (Color::White, Color::White) => b += sep,
                (Color::Black, Color::Black) => c += sep,
                _ => a += sep,
            }
        }
    }
    (a, b, c)
}

/// Crossing number straight from the definition.
fn naive_crossings(d: &ColoredDrawing) -> u64 {
    let pts = d.points();
    let m = pts.len();
    let mut total = 0;
    for &(a, b) in d.graph().edges() {
        for i in 0..m {
            for j in i + 1..m {
                if [i, j].iter().any(|k| *k == a || *k == b) {
                    continue;
                }
                if side(pts[i], pts[j], pts[a]) * side(pts[i], pts[j], pts[b]) < 0 {
                    total += 1;
                }
            }
        }
    }
    total
}

fn corpus() -> impl Iterator<Item = (usize, u64, ColoredDrawing)> {
    CORPUS_SIZES.into_iter().flat_map(|n| {
        (0..CORPUS_PER_N).map(move |seed| {
            let d = random_generic(n, n, CORPUS_RANGE, seed).expect("random drawing");
            (n, seed, d)
        })
    })
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let expected = [0u64, 0, 12, 64, 200, 480, 980, 1792];
    let got: Vec<u64> = (1..=8)
        .map(|n| crossing_number(&convex_alternating(n).unwrap()))
        .collect();
    let elapsed = start.elapsed();
    verdict(
        got == expected && elapsed < Duration::from_secs(10),
        format!("values {got:?} in {elapsed:.2?}"),
    )
}

fn criterion_2() -> Verdict {
    for n in 1..=8u64 {
        let d = convex_alternating(n as usize).unwrap();
        let dec = abc_decomposition(&d).unwrap();
        let want = (2 * n * n_choose_3(n), n * n_choose_3(n), n * n_choose_3(n));
        let oracle = per_line_oracle(&d);
        if (dec.a, dec.b, dec.c) != want || oracle != want {
            return verdict(
                false,
                format!(
                    "n={n}: got {:?}, oracle {oracle:?}, want {want:?}",
                    (dec.a, dec.b, dec.c)
                ),
            );
        }
    }
    verdict(true, "A = 2n C(n,3), B = C = n C(n,3) for n = 1..8")
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let mut violations = [0u64; 4];
    let mut first: [Option<String>; 4] = Default::default();
    let mut drawings = 0;
    for (n, seed, d) in corpus() {
        drawings += 1;
        let dec = abc_decomposition(&d).unwrap();
        let k = n as u64;
        let bound = n_choose_3(k) * k;
        let checks = [
            (dec.a >= 2 * bound, "A", dec.a, 2 * bound),
            (dec.b >= bound, "B", dec.b, bound),
            (dec.c >= bound, "C", dec.c, bound),
            (dec.total >= 4 * bound, "total", dec.total, 4 * bound),
        ];
        for (slot, (ok, name, value, want)) in checks.into_iter().enumerate() {
            if !ok {
                violations[slot] += 1;
                first[slot]
                    .get_or_insert_with(|| format!("n={n} seed={seed}: {name} = {value} < {want}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let names = ["A", "B", "C", "total"];
    let mut detail = format!("{drawings} drawings in {elapsed:.2?}; violations");
    for (name, count) in names.iter().zip(violations) {
        detail += &format!(" {name}:{count}");
    }
    for example in first.iter().flatten() {
        detail += &format!("; e.g. {example}");
    }
    verdict(
        violations.iter().all(|&v| v == 0) && elapsed < Duration::from_secs(120),
        detail,
    )
}

fn random_mixed_drawing(rng: &mut ChaCha8Rng) -> ColoredDrawing {
    loop {
        let m = rng.gen_range(1..=9);
        let range = rng.gen_range(3..=40);
        let points: Vec<Point> = (0..m)
            .map(|_| Point::new(rng.gen_range(0..=range), rng.gen_range(0..=range)))
            .collect();
        let config = Configuration::new(points).unwrap();
        if !validate_generic(&config).is_empty() {
            continue;
        }
        let colors: Vec<Color> = (0..m)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Color::Black
                } else {
                    Color::White
                }
            })
            .collect();
        let density = rng.gen_range(0.0..=1.0);
        let graph = match rng.gen_range(0..3) {
            0 => GraphSpec::complete_bipartite(&colors),
            1 => GraphSpec::complete(m),
            _ => {
                let mut edges = Vec::new();
                for a in 0..m {
                    for b in a + 1..m {
                        if rng.gen_bool(density) {
                            edges.push((a, b));
                        }
                    }
                }
                GraphSpec::from_edges(m, edges).unwrap()
            }
        };
        return ColoredDrawing::new(config, colors, graph).unwrap();
    }
}

fn criterion_4() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut non_bipartite = 0;
    let total = 1500;
    for k in 0..total {
        let d = random_mixed_drawing(&mut rng);
        if d.graph()
            .edges()
            .iter()
            .any(|&(a, b)| d.color(a) == d.color(b))
        {
            non_bipartite += 1;
        }
        let (fast, quads, naive) = (
            crossing_number(&d),
            crossing_number_by_quadruples(&d),
            naive_crossings(&d),
        );
        if fast != quads || fast != naive {
            return verdict(
                false,
                format!("drawing {k}: edges {fast}, 4-subsets {quads}, definition {naive}"),
            );
        }
    }
    verdict(
        non_bipartite > 0,
        format!("{total} drawings ({non_bipartite} with same-color edges) agree exactly"),
    )
}

const IDENTITY_NAMES: [&str; 7] = [
    "endvertex_total",
    "y_from_x",
    "profile_total",
    "y_from_profiles",
    "sequence_length",
    "z_at_least_two",
    "z_max_type_parity",
];

fn criterion_5() -> Verdict {
    let mut checked = 0u64;
    let mut drawings = 0;
    for (n, seed, d) in corpus() {
        drawings += 1;
        let report = analyze(&d).unwrap().identities;
        for class in LineClass::ALL {
            for name in IDENTITY_NAMES {
                let Some(check) = report.get(name, Some(class)) else {
                    return verdict(false, format!("check {name} [{}] missing", class.name()));
                };
                match check.status {
                    IdentityStatus::Pass => checked += 1,
                    IdentityStatus::Vacuous => {}
                    IdentityStatus::Fail => {
                        return verdict(
                            false,
                            format!(
                                "n={n} seed={seed}: {name} [{}] {}",
                                class.name(),
                                check.witness.as_deref().unwrap_or("")
                            ),
                        )
                    }
                }
            }
        }
    }
    verdict(
        checked > 0,
        format!("{checked} identity checks passed over {drawings} drawings, none failed"),
    )
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let mut count = 0u64;
    for n in 1..=200u64 {
        for s in 0..=(n - 1) / 2 {
            let c = c_coefficient_bw(s, n).unwrap();
            if c < 0 {
                return verdict(false, format!("bw coefficient s={s} n={n} is {c}"));
            }
            count += 1;
        }
        for s in 1..=(n - 1) / 2 {
            let c = c_coefficient_same(s, n, SameColorCap::SameColorTypes).unwrap();
            if c < 0 {
                return verdict(false, format!("same-color coefficient s={s} n={n} is {c}"));
            }
            count += 1;
        }
        if let Some(&(a, b)) = monotonicity_counterexamples(n).first() {
            return verdict(false, format!("n={n}: a={a}, b={b} breaks a(n-a) < b(n-b)"));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        elapsed < Duration::from_secs(5),
        format!("{count} coefficients nonnegative, monotonicity holds, in {elapsed:.2?}"),
    )
}

fn criterion_7() -> Verdict {
    let exact = search(&SearchTask {
        family: GraphFamily::CompleteBipartite { n: 2 },
        objective: Objective::Minimize,
        strategy: Strategy::Exhaustive {
            grid: GridSpec::new(4, 4).unwrap(),
        },
        seed: 0,
        budget: 1_000_000,
    })
    .unwrap();
    let family = GraphFamily::CompleteBipartite { n: 3 };
    let anneal = search(&SearchTask {
        family: family.clone(),
        objective: Objective::Minimize,
        strategy: Strategy::Anneal(AnnealParams::for_family(&family)),
        seed: 7,
        budget: 200_000,
    })
    .unwrap();
    let never_below = anneal.trace.iter().all(|t| t.value >= 12);
    verdict(
        exact.best_value == 0
            && exact.certificate == Certificate::ExhaustiveProof
            && anneal.best_value == 12
            && never_below,
        format!(
            "K_2,2 on 4x4: {} ({:?}); K_3,3 anneal seed 7: {} after {} evaluations",
            exact.best_value, exact.certificate, anneal.best_value, anneal.evaluations
        ),
    )
}

fn criterion_8() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_ocn");
    let dir = std::env::temp_dir().join(format!("ocn-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let doc = dir.join("k44.json");
    let status = Command::new(bin)
        .args([
            "gen", "--random", "--black", "4", "--white", "4", "--seed", "42", "--output",
        ])
        .arg(&doc)
        .status()
        .unwrap();
    if !status.success() {
        return verdict(false, "gen failed");
    }
    let doc = doc.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "gen", "--random", "--black", "5", "--white", "3", "--seed", "9",
        ],
        vec!["gen", "--convex-alternating", "6"],
        vec!["eval", "--json", "--input", doc],
        vec!["decompose", "--json", "--input", doc],
        vec!["verify", "--max-n", "6", "--json"],
        vec!["formula", "--max-n", "30", "--coefficients", "--json"],
        vec![
            "search",
            "--knn",
            "2",
            "--exhaustive",
            "--grid",
            "4x4",
            "--maximize",
            "--json",
        ],
        vec![
            "search",
            "--knn",
            "3",
            "--anneal",
            "--seed",
            "7",
            "--budget",
            "200000",
            "--minimize",
            "--json",
        ],
        vec![
            "search",
            "--complete",
            "5",
            "--anneal",
            "--seed",
            "3",
            "--budget",
            "20000",
            "--maximize",
            "--json",
        ],
    ];
    for args in &commands {
        let runs: Vec<_> = (0..2)
            .map(|_| Command::new(bin).args(args).output().unwrap())
            .collect();
        if runs[0].stdout.is_empty()
            || runs[0].stdout != runs[1].stdout
            || runs[0].status != runs[1].status
        {
            return verdict(
                false,
                format!("`ocn {}` differs between runs", args.join(" ")),
            );
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    verdict(
        true,
        format!(
            "{} seeded commands byte-identical across runs",
            commands.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("closed form on convex drawings, n = 1..8", criterion_1),
        ("tightness of A, B, C on convex drawings", criterion_2),
        ("lower bounds on random drawings", criterion_3),
        ("evaluator equivalence", criterion_4),
        ("identity suite on the random corpus", criterion_5),
        ("coefficient nonnegativity, n <= 200", criterion_6),
        ("exhaustive and annealing search", criterion_7),
        ("deterministic --json output", criterion_8),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let v = run();
        if !v.pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {}: {title}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            k + 1,
            v.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
