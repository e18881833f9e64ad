//! Executable checks of the degree identities on random instances, plus
//! observational experiments where no theorem is available.
//!
//! Every check is deterministic in `(parameters, seed)`: trial `t` draws
//! from a ChaCha stream selected by `t`. Reports are JSON lines, one per
//! trial, followed by a summary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cake::{counterexample_agents, Interval, ValueDensity};
use crate::degree::{
    all_faces_degree_sum, boundary_degree, boundary_numerator, facet_degree, induced_bdeg_sum,
    interior_degree, is_integer, FaceRestriction, Region,
};
use crate::error::{invalid, Result};
use crate::labeling::{
    generate_consistent_labeling, induced_labelings, random_multiset_labeling,
    random_single_labeling, random_sperner_labeling, reduce_consistently, replace_label,
    GeneratorOptions, Labeling, Sign, DEFAULT_INDUCED_CAP,
};
use crate::rational::{self, int, ratio, Rational};
use crate::solver::find_fully_labeled_scan;
use crate::triangulation::{barycentric_triangulation, Triangulation, DEFAULT_CELL_CAP};

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub check: &'static str,
    pub trial: usize,
    /// `None` for observational trials that assert nothing.
    pub pass: Option<bool>,
    pub data: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub check: &'static str,
    pub summary: bool,
    pub params: Value,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub observational: usize,
    pub pass: bool,
    pub extra: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub records: Vec<TrialRecord>,
    pub summary: CheckSummary,
}

impl CheckReport {
    fn new(check: &'static str, params: Value, records: Vec<TrialRecord>, extra: Value) -> Self {
        let passed = records.iter().filter(|r| r.pass == Some(true)).count();
        let failed = records.iter().filter(|r| r.pass == Some(false)).count();
        let observational = records.iter().filter(|r| r.pass.is_none()).count();
        let summary = CheckSummary {
            check,
            summary: true,
            params,
            trials: records.len(),
            passed,
            failed,
            observational,
            pass: failed == 0,
            extra,
        };
        Self { records, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.pass
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("summary serializes"));
        out.push('\n');
        out
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn fmt(r: &Rational) -> String {
    rational::format(r)
}

fn residue_of(r: &Rational, n: usize) -> Option<usize> {
    rational::residue(r, n)
}

fn run_trials<F>(trials: usize, f: F) -> Vec<TrialRecord>
where
    F: Fn(usize) -> TrialRecord + Sync + Send,
{
    (0..trials).into_par_iter().map(f).collect()
}

/// Interior degree equals boundary degree, and summing face contributions
/// over every face (interior faces cancel) gives the same value.
pub fn check_degree_lemma(n: usize, depth: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let (tri, _) = barycentric_triangulation(n, depth, DEFAULT_CELL_CAP)?;
    let records = run_trials(trials, |t| {
        let ell = random_single_labeling(&tri, &mut trial_rng(seed, t));
        degree_record("degree", t, &tri, &ell)
    });
    Ok(CheckReport::new(
        "degree",
        json!({"n": n, "depth": depth, "trials": trials, "seed": seed}),
        records,
        json!({"cells": tri.cells().len()}),
    ))
}

/// One Degree Lemma comparison; the labeling is included only on failure.
pub fn degree_record(
    check: &'static str,
    trial: usize,
    tri: &Triangulation,
    ell: &[usize],
) -> TrialRecord {
    let ideg = interior_degree(tri, ell);
    let bdeg = boundary_degree(tri, ell);
    let faces = all_faces_degree_sum(tri, ell);
    let pass = Rational::from_integer(ideg.into()) == bdeg && faces == bdeg;
    let mut data = json!({"ideg": ideg, "bdeg": fmt(&bdeg), "all_faces": fmt(&faces)});
    if !pass {
        data["labeling"] = json!(ell);
    }
    TrialRecord {
        check,
        trial,
        pass: Some(pass),
        data,
    }
}

/// First induced labeling whose boundary degree is not divisible by `n`.
fn exhibit_nonzero_residue(
    tri: &Triangulation,
    reduced: &Labeling,
    cap: u64,
) -> Result<Option<(u64, i64)>> {
    let n = tri.n() as i64;
    let induced = induced_labelings(reduced, cap)?;
    for i in 0..induced.len() {
        let num = boundary_numerator(tri, &induced.get(i));
        // bdeg = num / n is an integer (Degree Lemma)
        let bdeg = num / n;
        if bdeg.rem_euclid(n) != 0 {
            return Ok(Some((i, bdeg)));
        }
    }
    Ok(None)
}

/// Sum over induced labelings of a reduced consistent labeling, checked
/// against `n ×` its `F_{−1}` part, with a witness of nonzero residue.
struct ResidueProbe {
    induced: u64,
    sum: Rational,
    facet_identity: bool,
    residue: Option<usize>,
    witness: Option<(u64, i64)>,
}

fn probe(tri: &Triangulation, labeling: &Labeling, cap: u64) -> Result<ResidueProbe> {
    let n = tri.n();
    let reduced = reduce_consistently(labeling, tri)?;
    let sum = induced_bdeg_sum(tri, &reduced, Region::All);
    let f1 = induced_bdeg_sum(tri, &reduced, Region::Facet(1));
    Ok(ResidueProbe {
        induced: reduced.induced_count() as u64,
        facet_identity: sum == Rational::from_integer(n.into()) * f1,
        residue: residue_of(&sum, n),
        witness: exhibit_nonzero_residue(tri, &reduced, cap)?,
        sum,
    })
}

/// Three agents: positive main vertices give `bdeg ≡ 1 (mod 3)`; negative
/// main vertices give a sum over the eight induced labelings `≡ 2 (mod 3)`.
/// Either way an induced labeling with nonzero residue is exhibited.
pub fn check_three_agent_residues(depth: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let (tri, _) = barycentric_triangulation(3, depth, DEFAULT_CELL_CAP)?;
    let cases = [(Sign::Positive, 1usize, 1u64), (Sign::Negative, 2, 8)];
    let records = run_trials(2 * trials, |t| {
        let (sign, want_residue, want_count) = cases[t % 2];
        let opts = GeneratorOptions {
            main_vertices: Some(sign),
            extra_label_probability: 0.3,
            ..Default::default()
        };
        let gen_seed = trial_rng(seed, t).gen::<u64>();
        let outcome = generate_consistent_labeling(&tri, 3, gen_seed, &opts)
            .and_then(|l| probe(&tri, &l, 64));
        match outcome {
            Ok(p) => {
                let pass = p.induced == want_count
                    && p.residue == Some(want_residue)
                    && p.facet_identity
                    && p.witness.is_some();
                TrialRecord {
                    check: "residues",
                    trial: t,
                    pass: Some(pass),
                    data: json!({
                        "case": sign,
                        "generator_seed": gen_seed,
                        "induced": p.induced,
                        "sum": fmt(&p.sum),
                        "residue": p.residue,
                        "facet_identity": p.facet_identity,
                        "witness": p.witness.map(|(i, b)| json!({"index": i, "bdeg": b})),
                    }),
                }
            }
            Err(e) => error_record("residues", t, e),
        }
    });
    Ok(CheckReport::new(
        "residues",
        json!({"n": 3, "depth": depth, "trials": trials, "seed": seed}),
        records,
        json!({}),
    ))
}

fn error_record(check: &'static str, trial: usize, e: crate::Error) -> TrialRecord {
    TrialRecord {
        check,
        trial,
        pass: Some(false),
        data: json!({"error": e.to_string()}),
    }
}

/// Sperner boundary condition forces `bdeg = 1` and an odd number of
/// fully-labeled cells.
pub fn check_sperner_degree(
    n: usize,
    depth: usize,
    trials: usize,
    seed: u64,
) -> Result<CheckReport> {
    let (tri, _) = barycentric_triangulation(n, depth, DEFAULT_CELL_CAP)?;
    let records = run_trials(trials, |t| {
        let ell = random_sperner_labeling(&tri, &mut trial_rng(seed, t));
        let bdeg = boundary_degree(&tri, &ell);
        let count = find_fully_labeled_scan(&tri, &ell).len();
        let pass = bdeg == int(1) && count % 2 == 1;
        TrialRecord {
            check: "sperner",
            trial: t,
            pass: Some(pass),
            data: json!({"bdeg": fmt(&bdeg), "fully_labeled": count}),
        }
    });
    Ok(CheckReport::new(
        "sperner",
        json!({"n": n, "depth": depth, "trials": trials, "seed": seed}),
        records,
        json!({"cells": tri.cells().len()}),
    ))
}

/// `Σ_{ℓ∼L} bdeg(ℓ) + Σ_{j<n} Σ_{ℓ∼L} bdeg(ℓ_{n→j})` is an integer, over the
/// whole boundary and over each single facet.
pub fn sumreplace_total(
    tri: &Triangulation,
    labeling: &Labeling,
    region: Region,
) -> Result<Rational> {
    let n = tri.n();
    let mut total = induced_bdeg_sum(tri, labeling, region);
    for j in 1..n {
        total += induced_bdeg_sum(tri, &replace_label(labeling, j)?, region);
    }
    Ok(total)
}

/// On `F_{−n}`, for each `j < n`: `n × Σ bdeg(ℓ_{n→j}[F_{−n}])` equals the
/// facet's own interior and boundary degree sums.
fn facet_identity(
    tri: &Triangulation,
    face: &FaceRestriction,
    labeling: &Labeling,
) -> Result<Value> {
    let n = tri.n();
    let mut rows = Vec::new();
    let mut ok = true;
    for j in 1..n {
        let replaced = replace_label(labeling, j)?;
        let induced = induced_labelings(&replaced, DEFAULT_INDUCED_CAP)?;
        let mut scaled = Rational::from_integer(0.into());
        let mut inner = 0i64;
        let mut outer = Rational::from_integer(0.into());
        for ell in induced.iter() {
            scaled += Rational::from_integer(n.into()) * facet_degree(tri, &ell, n);
            inner += face.interior_degree(&ell);
            outer += face.boundary_degree(&ell);
        }
        let holds = scaled == Rational::from_integer(inner.into()) && outer == scaled;
        ok &= holds;
        rows.push(json!({"j": j, "n_times_facet": fmt(&scaled), "facet_ideg": inner, "facet_bdeg": fmt(&outer)}));
    }
    Ok(json!({"holds": ok, "rows": rows}))
}

pub fn check_sumreplace(
    n: usize,
    depth: usize,
    trials: usize,
    seed: u64,
    multi: usize,
) -> Result<CheckReport> {
    if n < 3 {
        return Err(invalid("label replacement checks need n >= 3"));
    }
    let (tri, _) = barycentric_triangulation(n, depth, DEFAULT_CELL_CAP)?;
    let face = FaceRestriction::new(&tri, n)?;
    let records = run_trials(trials, |t| {
        let run = || -> Result<TrialRecord> {
            let labeling = random_multiset_labeling(&tri, multi, &mut trial_rng(seed, t))?;
            let whole = sumreplace_total(&tri, &labeling, Region::All)?;
            let mut pass = is_integer(&whole);
            let mut facets = Vec::new();
            for k in 1..=n {
                let part = sumreplace_total(&tri, &labeling, Region::Facet(k))?;
                pass &= is_integer(&part);
                facets.push(fmt(&part));
            }
            let identity = facet_identity(&tri, &face, &labeling)?;
            pass &= identity["holds"] == json!(true);
            Ok(TrialRecord {
                check: "sumreplace",
                trial: t,
                pass: Some(pass),
                data: json!({
                    "induced": labeling.induced_count() as u64,
                    "whole": fmt(&whole),
                    "facets": facets,
                    "facet_identity": identity,
                }),
            })
        };
        run().unwrap_or_else(|e| error_record("sumreplace", t, e))
    });
    Ok(CheckReport::new(
        "sumreplace",
        json!({"n": n, "depth": depth, "trials": trials, "seed": seed, "multi": multi}),
        records,
        json!({}),
    ))
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Default bound on induced labelings for generated labelings in the
/// prime and conjecture experiments.
pub const PRIME_INDUCED_CAP: u64 = 1 << 12;

/// Prime `n`: the sum over induced labelings of a consistent labeling is
/// not divisible by `n`, and an induced labeling with nonzero residue exists.
pub fn check_prime(n: usize, depth: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    if !is_prime(n) {
        return Err(invalid(format!("{n} is not prime")));
    }
    let (tri, _) = barycentric_triangulation(n, depth, DEFAULT_CELL_CAP)?;
    let records = run_trials(trials, |t| {
        let opts = GeneratorOptions {
            max_induced: PRIME_INDUCED_CAP,
            ..Default::default()
        };
        let gen_seed = trial_rng(seed, t).gen::<u64>();
        match generate_consistent_labeling(&tri, n, gen_seed, &opts)
            .and_then(|l| probe(&tri, &l, PRIME_INDUCED_CAP))
        {
            Ok(p) => {
                let pass = matches!(p.residue, Some(r) if r != 0)
                    && p.witness.is_some()
                    && p.facet_identity;
                TrialRecord {
                    check: "prime",
                    trial: t,
                    pass: Some(pass),
                    data: json!({
                        "generator_seed": gen_seed,
                        "induced": p.induced,
                        "sum": fmt(&p.sum),
                        // the residue is the observed constant K
                        "residue": p.residue,
                        "facet_identity": p.facet_identity,
                        "witness": p.witness.map(|(i, b)| json!({"index": i, "bdeg": b})),
                    }),
                }
            }
            Err(e) => error_record("prime", t, e),
        }
    });
    Ok(CheckReport::new(
        "prime",
        json!({"n": n, "depth": depth, "trials": trials, "seed": seed}),
        records,
        json!({}),
    ))
}

/// Composite `n`: searches random consistent labelings for one where no
/// induced labeling has a nonzero residue (recorded, never asserted). A
/// second batch keeps every vertex with two or more empty pieces positive;
/// there the single induced labeling must have `bdeg ≡ 1 (mod n)`, which is
/// asserted.
pub fn conjecture_search(n: usize, depth: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    if n < 4 || is_prime(n) {
        return Err(invalid(format!(
            "the conjecture search needs a composite n >= 4, got {n}"
        )));
    }
    let (tri, _) = barycentric_triangulation(n, depth, DEFAULT_CELL_CAP)?;
    let records = run_trials(2 * trials, |t| {
        let restricted = t % 2 == 1;
        let opts = GeneratorOptions {
            max_induced: PRIME_INDUCED_CAP,
            max_negative_zeros: if restricted { 1 } else { usize::MAX },
            ..Default::default()
        };
        let gen_seed = trial_rng(seed, t).gen::<u64>();
        let run = || -> Result<TrialRecord> {
            let labeling = generate_consistent_labeling(&tri, n, gen_seed, &opts)?;
            let p = probe(&tri, &labeling, PRIME_INDUCED_CAP)?;
            let mut data = json!({
                "batch": if restricted { "sperner_small_faces" } else { "search" },
                "generator_seed": gen_seed,
                "induced": p.induced,
                "sum": fmt(&p.sum),
                "residue": p.residue,
                "facet_identity": p.facet_identity,
                "witness": p.witness.map(|(i, b)| json!({"index": i, "bdeg": b})),
            });
            let pass = if restricted {
                Some(
                    p.induced == 1
                        && p.witness.map(|(_, b)| b.rem_euclid(n as i64)) == Some(1)
                        && p.facet_identity,
                )
            } else {
                if p.witness.is_none() {
                    data["candidate_counterexample"] = json!(labeling.dump());
                }
                None
            };
            Ok(TrialRecord {
                check: "conjecture",
                trial: t,
                pass,
                data,
            })
        };
        run().unwrap_or_else(|e| error_record("conjecture", t, e))
    });
    let mut histogram = vec![0usize; n];
    let mut without_witness = 0usize;
    for r in records.iter().filter(|r| r.pass.is_none()) {
        if let Some(k) = r.data["residue"].as_u64() {
            histogram[k as usize] += 1;
        }
        if r.data["witness"].is_null() {
            without_witness += 1;
        }
    }
    Ok(CheckReport::new(
        "conjecture",
        json!({"n": n, "depth": depth, "trials": trials, "seed": seed}),
        records,
        json!({"residue_histogram": histogram, "search_trials_without_witness": without_witness}),
    ))
}

/// The four-slice, three-agent mixed cake: whole-cake values, the points
/// where each prefix first reaches a third of the total, and the three envy
/// claims against giving the marked prefix away and halving the rest.
pub fn appendix_fixture_check() -> Result<CheckReport> {
    let agents = counterexample_agents();
    let names = ["alice", "bob", "carl"];
    let totals: Vec<Rational> = agents.iter().map(ValueDensity::total).collect();
    let third = ratio(-1, 1);
    let marks: Vec<Option<Rational>> = agents
        .iter()
        .map(|a| a.first_point_with_prefix(&third))
        .collect();

    // (holder of the prefix, envious agent)
    let claims = [(0usize, 1usize), (1, 2), (2, 0)];
    let mut claim_rows = Vec::new();
    let mut claims_hold = true;
    for &(holder, envious) in &claims {
        let Some(mark) = marks[holder].clone() else {
            claims_hold = false;
            continue;
        };
        let prefix = Interval::new(int(0), mark.clone());
        let rest = Interval::new(mark, int(1));
        let prefix_value = agents[envious].interval_value(&prefix);
        let half_rest = agents[envious].interval_value(&rest) / int(2);
        let envy = prefix_value > half_rest;
        claims_hold &= envy;
        claim_rows.push(json!({
            "prefix_holder": names[holder],
            "envious": names[envious],
            "value_of_prefix": fmt(&prefix_value),
            "half_of_remainder": fmt(&half_rest),
            "envy": envy,
        }));
    }
    let expected_marks = [ratio(1, 4), ratio(1, 2), ratio(3, 4)];
    let totals_ok = totals.iter().all(|t| *t == int(-3));
    let marks_ok = marks
        .iter()
        .zip(&expected_marks)
        .all(|(m, e)| m.as_ref() == Some(e));
    let record = TrialRecord {
        check: "appendix",
        trial: 0,
        pass: Some(totals_ok && marks_ok && claims_hold),
        data: json!({
            "totals": totals.iter().map(fmt).collect::<Vec<_>>(),
            "marks": marks.iter().map(|m| m.as_ref().map(fmt)).collect::<Vec<_>>(),
            "claims": claim_rows,
        }),
    };
    Ok(CheckReport::new(
        "appendix",
        json!({}),
        vec![record],
        json!({}),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass_and_are_deterministic() {
        let a = check_degree_lemma(3, 1, 20, 7).unwrap();
        assert!(a.passed());
        assert_eq!(
            a.to_json_lines(),
            check_degree_lemma(3, 1, 20, 7).unwrap().to_json_lines()
        );
        assert!(check_sperner_degree(3, 1, 10, 1).unwrap().passed());
        assert!(check_three_agent_residues(1, 10, 2).unwrap().passed());
        assert!(check_sumreplace(3, 1, 5, 3, 3).unwrap().passed());
        assert!(check_prime(3, 1, 5, 4).unwrap().passed());
        assert!(appendix_fixture_check().unwrap().passed());
    }

    #[test]
    fn constant_labeling_passes_degree_comparison() {
        let (tri, _) = barycentric_triangulation(3, 2, DEFAULT_CELL_CAP).unwrap();
        let r = degree_record("degree", 0, &tri, &vec![1; tri.vertices().len()]);
        assert_eq!(r.pass, Some(true));
        assert_eq!(r.data["ideg"], json!(0));
    }

    #[test]
    fn argument_validation() {
        assert!(check_prime(4, 1, 1, 0).is_err());
        assert!(conjecture_search(3, 1, 1, 0).is_err());
        assert!(conjecture_search(5, 1, 1, 0).is_err());
        assert!(check_sumreplace(2, 1, 1, 0, 1).is_err());
        assert!(is_prime(5) && !is_prime(9) && !is_prime(1));
    }
}
