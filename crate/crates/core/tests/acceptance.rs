//! End-to-end acceptance criteria. Runs without the libtest harness so the
//! per-criterion PASS/FAIL lines are always printed; exits nonzero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use mixedcake::cake::{agent_envy, counterexample_agents, divide_two_agents, Agent, ValueDensity};
use mixedcake::lab::{
    appendix_fixture_check, check_degree_lemma, check_prime, check_sperner_degree,
    check_sumreplace, check_three_agent_residues, conjecture_search,
};
use mixedcake::rational::{format, int, ratio};
use mixedcake::solver::{brute_force_envy_free, solve, SolveOptions, TriangulationKind};
use mixedcake::svg;
use mixedcake::triangulation::{
    barycentric_triangulation, equilateral_friendly_n3, EquilateralOutcome, Triangulation,
    DEFAULT_CELL_CAP,
};
use mixedcake::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )
}

fn degree_fuzzing() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for (n, depth, trials) in [(3, 1, 67), (3, 2, 67), (3, 3, 66), (4, 1, 100)] {
        let report =
            check_degree_lemma(n, depth, trials, 1000 + depth as u64).map_err(|e| e.to_string())?;
        ensure(
            report.summary.passed == trials,
            format!("n={n} depth={depth}: {}/{trials}", report.summary.passed),
        )?;
        total += trials;
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{total}/{total} labelings, interior = boundary degree, {:.2?}",
        start.elapsed()
    ))
}

fn sperner_case() -> Outcome {
    let mut total = 0;
    for (n, depth) in [(3, 2), (4, 1)] {
        let report = check_sperner_degree(n, depth, 100, 11).map_err(|e| e.to_string())?;
        ensure(
            report.passed() && report.summary.passed == 100,
            format!("n={n}: {:?}", report.summary),
        )?;
        total += 100;
    }
    Ok(format!(
        "{total}/{total} labelings with bdeg = 1 and odd fully-labeled count"
    ))
}

fn three_agent_residues() -> Outcome {
    let report = check_three_agent_residues(2, 100, 23).map_err(|e| e.to_string())?;
    let (mut pos, mut neg) = (0, 0);
    for r in &report.records {
        ensure(
            r.pass == Some(true),
            format!("trial {} failed: {}", r.trial, r.data),
        )?;
        match r.data["residue"].as_u64() {
            Some(1) => pos += 1,
            Some(2) => neg += 1,
            other => return Err(format!("unexpected residue {other:?}")),
        }
    }
    ensure(
        pos == 100 && neg == 100,
        format!("positive {pos}, negative {neg}"),
    )?;
    Ok("100 positive (≡ 1 mod 3) + 100 negative (Σ₈ ≡ 2 mod 3), witness exhibited in each".into())
}

fn combinatorial_counts() -> Outcome {
    let factorial = |n: usize| (1..=n).product::<usize>();
    for n in [3, 4] {
        let (tri, _) =
            barycentric_triangulation(n, 1, DEFAULT_CELL_CAP).map_err(|e| e.to_string())?;
        ensure(
            tri.cells().len() == factorial(n),
            format!("n={n}: {} cells", tri.cells().len()),
        )?;
    }
    let initial = Triangulation::trivial(3)
        .map_err(|e| e.to_string())?
        .max_diameter_squared();
    let shrink: Rational = ratio(3, 4) * ratio(3, 4);
    let mut bound = initial.clone();
    let mut seen = Vec::new();
    for k in 1..=3 {
        bound *= &shrink;
        let (tri, _) =
            barycentric_triangulation(3, k, DEFAULT_CELL_CAP).map_err(|e| e.to_string())?;
        let d2 = tri.max_diameter_squared();
        ensure(
            d2 <= bound,
            format!("k={k}: diameter² {} > {}", format(&d2), format(&bound)),
        )?;
        seen.push(format(&d2));
    }
    Ok(format!(
        "cells 6, 24; diameter² by depth {} (initial {})",
        seen.join(", "),
        format(&initial)
    ))
}

fn end_to_end_mixed_solve() -> Outcome {
    let start = Instant::now();
    let densities = counterexample_agents();
    let agents: Vec<Agent> = densities.iter().cloned().map(Agent::from).collect();
    let lipschitz = int(3)
        * densities
            .iter()
            .map(ValueDensity::max_abs_density)
            .max()
            .unwrap();
    ensure(lipschitz == int(72), format!("L = {}", format(&lipschitz)))?;
    let mut envies = Vec::new();
    for exp in [4u32, 6, 8] {
        let delta = ratio(1, 1 << exp);
        let mut options = SolveOptions::new(delta.clone());
        options.triangulation = TriangulationKind::Equilateral;
        let report = solve(&agents, &options).map_err(|e| format!("δ=2^-{exp}: {e}"))?;
        let envy = report.measured_envy.clone().ok_or("no measured envy")?;
        let bound = &lipschitz * &delta;
        ensure(
            envy <= bound,
            format!("δ=2^-{exp}: envy {} > {}", format(&envy), format(&bound)),
        )?;
        envies.push(envy);
    }
    ensure(
        envies.windows(2).all(|w| w[1] <= w[0]),
        format!(
            "envy not monotone: {:?}",
            envies.iter().map(format).collect::<Vec<_>>()
        ),
    )?;
    let (_, brute) = brute_force_envy_free(&densities, 128, DEFAULT_CELL_CAP * 100)
        .map_err(|e| e.to_string())?;
    let finest = envies.last().unwrap();
    ensure(
        brute <= finest + ratio(1, 64),
        format!(
            "brute force {} vs solver {}",
            format(&brute),
            format(finest)
        ),
    )?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "envy {} (bound 72δ), brute force grid 128 envy {}, {:.1?}",
        envies.iter().map(format).collect::<Vec<_>>().join(" ≥ "),
        format(&brute),
        start.elapsed()
    ))
}

fn random_mixed_density(rng: &mut ChaCha8Rng) -> ValueDensity {
    let pieces = rng.gen_range(1..=6);
    let den = 64;
    let mut cuts: Vec<i64> = (0..pieces - 1).map(|_| rng.gen_range(1..den)).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut breakpoints = vec![int(0)];
    breakpoints.extend(cuts.iter().map(|&c| ratio(c, den)));
    breakpoints.push(int(1));
    let values = (1..breakpoints.len())
        .map(|_| int(rng.gen_range(-9..=9)))
        .collect();
    ValueDensity::new(breakpoints, values).expect("valid density")
}

fn cut_and_choose() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let tol = ratio(1, 1000);
    for trial in 0..20 {
        let agents = [
            random_mixed_density(&mut rng),
            random_mixed_density(&mut rng),
        ];
        let division =
            divide_two_agents(&agents[0], &agents[1], &tol).map_err(|e| e.to_string())?;
        let cutter = agent_envy(&division, &agents, 0);
        let chooser = agent_envy(&division, &agents, 1);
        ensure(
            cutter <= tol && chooser <= int(0),
            format!(
                "trial {trial}: cutter {} chooser {}",
                format(&cutter),
                format(&chooser)
            ),
        )?;
    }
    Ok("20/20 random mixed pairs: cutter envy ≤ 1/1000, chooser envy ≤ 0".into())
}

fn ownership_invariants() -> Outcome {
    for n in [3, 4] {
        for depth in 1..=3 {
            let (tri, own) =
                barycentric_triangulation(n, depth, DEFAULT_CELL_CAP).map_err(|e| e.to_string())?;
            own.check_diverse(&tri)
                .map_err(|v| format!("n={n} depth={depth}: {v:?}"))?;
            own.check_friendly(&tri)
                .map_err(|v| format!("n={n} depth={depth}: {v:?}"))?;
        }
    }
    let mut summary = Vec::new();
    for d in [1, 2, 4, 8] {
        match equilateral_friendly_n3(d, DEFAULT_CELL_CAP).map_err(|e| e.to_string())? {
            EquilateralOutcome::Feasible {
                triangulation,
                ownership,
                ..
            } => {
                ownership
                    .check_diverse(&triangulation)
                    .map_err(|v| format!("D={d}: {v:?}"))?;
                ownership
                    .check_friendly(&triangulation)
                    .map_err(|v| format!("D={d}: {v:?}"))?;
                summary.push(format!("D={d} feasible"));
            }
            EquilateralOutcome::Infeasible { rejections } => {
                ensure(
                    !rejections.is_empty(),
                    format!("D={d}: infeasible without reasons"),
                )?;
                summary.push(format!("D={d} infeasible ({} proofs)", rejections.len()));
            }
        }
    }
    Ok(format!(
        "barycentric n=3,4 depths 1-3 diverse+friendly; {}",
        summary.join(", ")
    ))
}

fn label_replacement_identity() -> Outcome {
    for (n, multi) in [(3, 3), (4, 2)] {
        let report = check_sumreplace(n, 1, 50, 88, multi).map_err(|e| e.to_string())?;
        ensure(
            report.summary.passed == 50,
            format!("n={n}: {:?}", report.summary),
        )?;
    }
    Ok(
        "50/50 multiset labelings each for n=3 and n=4: sums integral on boundary and every facet"
            .into(),
    )
}

fn prime_case() -> Outcome {
    let report = check_prime(5, 1, 20, 5).map_err(|e| e.to_string())?;
    ensure(report.summary.passed == 20, format!("{:?}", report.summary))?;
    let control = conjecture_search(4, 1, 20, 5).map_err(|e| e.to_string())?;
    Ok(format!(
        "n=5: 20/20 nonzero residue with witness; n=4 control residues {} (recorded only)",
        control.summary.extra["residue_histogram"]
    ))
}

fn appendix_fixture() -> Outcome {
    let start = Instant::now();
    let report = appendix_fixture_check().map_err(|e| e.to_string())?;
    ensure(report.passed(), report.to_json_lines())?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "totals {}, marks {}, 3 envy claims confirmed",
        report.records[0].data["totals"], report.records[0].data["marks"]
    ))
}

fn determinism() -> Outcome {
    let agents: Vec<Agent> = counterexample_agents()
        .into_iter()
        .map(Agent::from)
        .collect();
    let run = || -> Result<(String, String, String), String> {
        let check = check_sumreplace(3, 2, 10, 42, 2)
            .map_err(|e| e.to_string())?
            .to_json_lines();
        let mut options = SolveOptions::new(ratio(1, 16));
        options.triangulation = TriangulationKind::Equilateral;
        let report = solve(&agents, &options).map_err(|e| e.to_string())?;
        let solve_json = serde_json::to_string(&report).map_err(|e| e.to_string())?;
        let (tri, own) =
            barycentric_triangulation(3, 2, DEFAULT_CELL_CAP).map_err(|e| e.to_string())?;
        let labels =
            mixedcake::labeling::random_sperner_labeling(&tri, &mut ChaCha8Rng::seed_from_u64(42));
        let picture = svg::render(&tri, Some(&labels), Some(&own)).map_err(|e| e.to_string())?;
        Ok((check, solve_json, picture))
    };
    let first = run()?;
    let second = run()?;
    ensure(first.0 == second.0, "check JSON differs")?;
    ensure(first.1 == second.1, "solve JSON differs")?;
    ensure(first.2 == second.2, "SVG differs")?;
    Ok(format!(
        "check {} B, solve {} B, SVG {} B identical across runs",
        first.0.len(),
        first.1.len(),
        first.2.len()
    ))
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("degree lemma fuzzing", degree_fuzzing),
        ("sperner boundary condition", sperner_case),
        ("three-agent residues", three_agent_residues),
        ("combinatorial counts", combinatorial_counts),
        ("end-to-end mixed solve", end_to_end_mixed_solve),
        ("cut and choose", cut_and_choose),
        ("ownership invariants", ownership_invariants),
        ("label replacement identity", label_replacement_identity),
        ("prime case", prime_case),
        ("appendix fixture", appendix_fixture),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
