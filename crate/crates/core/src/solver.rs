//! Fully-labeled and envy-free simplex search, and the end-to-end solver
//! producing approximately envy-free connected divisions.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::cake::{max_envy, Agent, Division, Interval, ValueDensity};
use crate::degree::{boundary_numerator, cell_degree, region_numerator};
use crate::error::{invalid, Error, Result};
use crate::labeling::{
    check_consistent, combine, induced_labelings, owner_labeling, reduce_consistently,
    truncated_induced_labelings, Labeling, DEFAULT_INDUCED_CAP,
};
use crate::rational::{self, int, Rational};
use crate::triangulation::{
    barycentric_triangulation, equilateral_friendly_n3, permutations, EquilateralOutcome,
    Ownership, Triangulation, DEFAULT_CELL_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Exhaustive pass over every cell.
    Scan,
    /// Repeated halving, keeping a half with nonzero boundary degree.
    Bisect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangulationKind {
    Barycentric,
    /// `n = 3` only: a refined grid with `D` segments per side.
    Equilateral,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scan" => Ok(Self::Scan),
            "bisect" => Ok(Self::Bisect),
            _ => Err(invalid(format!(
                "unknown method {s:?} (expected scan or bisect)"
            ))),
        }
    }
}

impl FromStr for TriangulationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "barycentric" => Ok(Self::Barycentric),
            "equilateral" => Ok(Self::Equilateral),
            _ => Err(invalid(format!(
                "unknown triangulation {s:?} (expected barycentric or equilateral)"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Scan => "scan",
            Self::Bisect => "bisect",
        })
    }
}

impl fmt::Display for TriangulationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Barycentric => "barycentric",
            Self::Equilateral => "equilateral",
        })
    }
}

/// Every fully-labeled cell with its degree sign, in cell order.
pub fn find_fully_labeled_scan(tri: &Triangulation, ell: &[usize]) -> Vec<(usize, i32)> {
    (0..tri.cells().len())
        .into_par_iter()
        .filter_map(|c| {
            let d = cell_degree(tri, c, ell);
            (d != 0).then_some((c, d))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BisectOutcome {
    pub cell: usize,
    pub levels: usize,
    /// Cells whose faces were examined across all halving steps.
    pub cells_examined: u64,
}

/// Halves the current cell set by sorting barycenters along alternating
/// axes, keeping a half with nonzero boundary degree, until one cell is left.
/// Works on any triangulation; degree additivity guarantees the kept half
/// never loses its nonzero degree.
pub fn find_fully_labeled_bisect(tri: &Triangulation, ell: &[usize]) -> Result<BisectOutcome> {
    let n = tri.n();
    let mut num = boundary_numerator(tri, ell);
    if num == 0 {
        return Err(Error::Precondition(
            "boundary degree is zero; bisection needs a nonzero degree (use scan)".into(),
        ));
    }
    let keys: Vec<Vec<f64>> = (0..tri.cells().len())
        .into_par_iter()
        .map(|c| {
            let b = tri.cell_barycenter(c);
            b.lengths()[..n - 1].iter().map(rational::to_f64).collect()
        })
        .collect();
    let mut mark = vec![usize::MAX; tri.cells().len()];
    let mut region: Vec<usize> = (0..tri.cells().len()).collect();
    let mut levels = 0usize;
    let mut examined = tri.cells().len() as u64;
    while region.len() > 1 {
        let axis = levels % (n - 1);
        region.sort_by(|&a, &b| keys[a][axis].total_cmp(&keys[b][axis]).then(a.cmp(&b)));
        let half = region.len() / 2;
        for &c in &region[..half] {
            mark[c] = levels;
        }
        let stamp = levels;
        let first = region_numerator(tri, ell, &region[..half], |c| mark[c] == stamp);
        examined += half as u64;
        region = if first != 0 {
            num = first;
            region[..half].to_vec()
        } else {
            region[half..].to_vec()
        };
        levels += 1;
    }
    debug_assert_eq!(cell_degree(tri, region[0], ell) as i64 * n as i64, num);
    Ok(BisectOutcome {
        cell: region[0],
        levels,
        cells_examined: examined,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessVertex {
    pub vertex: usize,
    #[serde(with = "rational::serde_str::vec")]
    pub point: Vec<Rational>,
    /// 0-based agent index.
    pub owner: usize,
    /// 1-based piece chosen at this vertex.
    pub label: usize,
}

/// An envy-free simplex: distinct owners, distinct chosen labels, and each
/// label preferred by its owner at that vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub cell: usize,
    pub vertices: Vec<WitnessVertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvyFreeSimplex {
    pub witness: Witness,
    #[serde(with = "rational::serde_str")]
    pub boundary_degree: Rational,
    /// Induced labelings examined before one with nonzero degree was found.
    pub induced_tried: u64,
    pub cells_scanned: u64,
    #[serde(skip)]
    pub selected: Vec<usize>,
}

/// Picks `ℓ ∼ L` with nonzero boundary degree after dropping every label
/// consistency allows. Returns the labeling, `n·bdeg`, and candidates tried.
/// For `n > 3` at most `cap` candidates are examined before giving up with
/// [`Error::ConjectureGap`].
pub fn select_induced_labeling(
    tri: &Triangulation,
    labeling: &Labeling,
    cap: u64,
) -> Result<(Vec<usize>, i64, u64)> {
    let report = check_consistent(labeling, tri);
    if let Some(v) = report.violations.first() {
        return Err(Error::Inconsistent(format!("{v:?}")));
    }
    let reduced = reduce_consistently(labeling, tri)?;
    // For n = 3 a hit is guaranteed, so an oversized family is a resource
    // problem; beyond that the search is a best effort over the first `cap`.
    let induced = if tri.n() > 3 {
        truncated_induced_labelings(&reduced, cap)
    } else {
        induced_labelings(&reduced, cap)?
    };
    for i in 0..induced.len() {
        let ell = induced.get(i);
        let num = boundary_numerator(tri, &ell);
        if num != 0 {
            return Ok((ell, num, i + 1));
        }
    }
    if tri.n() > 3 {
        Err(Error::ConjectureGap {
            n: tri.n(),
            searched: induced.len(),
        })
    } else {
        Err(Error::Inconsistent(
            "every induced labeling has zero boundary degree, which a consistent labeling cannot produce for n <= 3".into(),
        ))
    }
}

fn witness_for(tri: &Triangulation, ownership: &Ownership, ell: &[usize], cell: usize) -> Witness {
    let vertices = tri
        .cell(cell)
        .iter()
        .map(|&v| WitnessVertex {
            vertex: v,
            point: tri.vertex(v).lengths().to_vec(),
            owner: ownership.owner(v),
            label: ell[v],
        })
        .collect();
    Witness { cell, vertices }
}

/// Cut at the barycenter of the witness cell; each owner gets its label.
fn division_for(tri: &Triangulation, witness: &Witness) -> Result<Division> {
    let x = tri.cell_barycenter(witness.cell);
    let mut assignment = vec![0; tri.n()];
    for w in &witness.vertices {
        assignment[w.owner] = w.label;
    }
    Division::from_point(&x, assignment)
}

/// Envy-free simplex for a combined labeling `L^W`.
pub fn envy_free_simplex_from_combined(
    tri: &Triangulation,
    ownership: &Ownership,
    combined: &Labeling,
    method: Method,
    induced_cap: u64,
) -> Result<EnvyFreeSimplex> {
    let (ell, num, tried) = select_induced_labeling(tri, combined, induced_cap)?;
    let (cell, scanned) = match method {
        Method::Scan => {
            let found = find_fully_labeled_scan(tri, &ell);
            let (cell, _) = *found.first().ok_or_else(|| {
                Error::Triangulation("nonzero degree but no fully-labeled cell".into())
            })?;
            (cell, tri.cells().len() as u64)
        }
        Method::Bisect => {
            let out = find_fully_labeled_bisect(tri, &ell)?;
            (out.cell, out.cells_examined)
        }
    };
    Ok(EnvyFreeSimplex {
        witness: witness_for(tri, ownership, &ell, cell),
        boundary_degree: Rational::new(num.into(), tri.n().into()),
        induced_tried: tried,
        cells_scanned: scanned,
        selected: ell,
    })
}

/// Combines the agents' labelings through `W` and finds an envy-free simplex.
pub fn find_envy_free_simplex(
    tri: &Triangulation,
    ownership: &Ownership,
    labelings: &[Labeling],
    method: Method,
) -> Result<EnvyFreeSimplex> {
    let combined = combine(tri, ownership, labelings)?;
    envy_free_simplex_from_combined(tri, ownership, &combined, method, DEFAULT_INDUCED_CAP)
}

/// Which fully-labeled cell a scan reports when several exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRule {
    /// Lowest cell index.
    First,
    /// Smallest measured envy at the cell barycenter (additive agents;
    /// otherwise the same as `First`), lowest index on ties.
    LeastEnvy,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub delta: Rational,
    pub method: Method,
    pub triangulation: TriangulationKind,
    pub witness_rule: WitnessRule,
    pub cell_cap: u64,
    pub induced_cap: u64,
}

impl SolveOptions {
    pub fn new(delta: Rational) -> Self {
        Self {
            delta,
            method: Method::Scan,
            triangulation: TriangulationKind::Barycentric,
            witness_rule: WitnessRule::LeastEnvy,
            cell_cap: DEFAULT_CELL_CAP,
            induced_cap: DEFAULT_INDUCED_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub n: usize,
    pub method: Method,
    pub triangulation: TriangulationKind,
    pub witness_rule: WitnessRule,
    pub construction: String,
    /// Subdivision depth (barycentric) or segments per side (equilateral).
    pub refinement: usize,
    pub cells: usize,
    pub vertices: usize,
    #[serde(with = "rational::serde_str")]
    pub delta_target: Rational,
    /// Squared euclidean diameter bound over all cells.
    #[serde(with = "rational::serde_str")]
    pub max_diameter_squared: Rational,
    #[serde(with = "rational::serde_str")]
    pub witness_diameter_squared: Rational,
    #[serde(with = "rational::serde_str::vec")]
    pub cuts: Vec<Rational>,
    /// 1-based piece of each agent.
    pub assignment: Vec<usize>,
    #[serde(with = "rational::serde_str::option")]
    pub measured_envy: Option<Rational>,
    #[serde(with = "rational::serde_str")]
    pub boundary_degree: Rational,
    pub induced_tried: u64,
    pub oracle_calls: u64,
    pub cells_scanned: u64,
    pub witness: Witness,
    #[serde(skip)]
    pub division: Division,
}

fn cell_diameter_squared(tri: &Triangulation, c: usize) -> Rational {
    let pts = tri.cell_points(c);
    let mut best = Rational::from_integer(0.into());
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = pts[i].dist2(pts[j]);
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// Smallest refinement of the requested kind whose cells all have diameter
/// at most `delta`.
pub fn build_triangulation(
    n: usize,
    kind: TriangulationKind,
    delta: &Rational,
    cell_cap: u64,
) -> Result<(Triangulation, Ownership, &'static str, usize)> {
    let delta2 = delta * delta;
    match kind {
        TriangulationKind::Barycentric => {
            let mut depth = 1;
            loop {
                let (tri, own) = barycentric_triangulation(n, depth, cell_cap)?;
                if tri.max_diameter_squared() <= delta2 {
                    return Ok((tri, own, "barycentric", depth));
                }
                depth += 1;
            }
        }
        TriangulationKind::Equilateral => {
            if n != 3 {
                return Err(invalid(
                    "the equilateral triangulation exists for n = 3 only",
                ));
            }
            // refined barycentric cells have squared diameter (2/3)/m²
            let two_thirds = Rational::new(2.into(), 3.into());
            let mut m: usize = 1;
            while two_thirds > &delta2 * int((m * m) as i64) || m.is_multiple_of(3) {
                m += 1;
            }
            match equilateral_friendly_n3(2 * m, cell_cap)? {
                EquilateralOutcome::Feasible {
                    triangulation,
                    ownership,
                    construction,
                } => Ok((triangulation, ownership, construction, 2 * m)),
                EquilateralOutcome::Infeasible { rejections } => {
                    Err(Error::Triangulation(format!(
                        "no friendly diverse ownership for D = {}: {rejections:?}",
                        2 * m
                    )))
                }
            }
        }
    }
}

/// End to end: triangulate finely enough, label through the ownership,
/// select an induced labeling with nonzero degree, locate a fully-labeled
/// cell and cut at its barycenter.
pub fn solve(agents: &[Agent], options: &SolveOptions) -> Result<SolveReport> {
    let n = agents.len();
    if n < 2 {
        return Err(invalid("at least two agents are required"));
    }
    if !options.delta.is_positive() {
        return Err(invalid("delta must be positive"));
    }
    let (tri, ownership, construction, refinement) =
        build_triangulation(n, options.triangulation, &options.delta, options.cell_cap)?;
    let (combined, oracle_calls) = owner_labeling(&tri, &ownership, agents)?;
    let mut found = envy_free_simplex_from_combined(
        &tri,
        &ownership,
        &combined,
        options.method,
        options.induced_cap,
    )?;
    let densities: Option<Vec<ValueDensity>> = agents
        .iter()
        .map(|a| match a {
            Agent::Additive(d) => Some(d.clone()),
            Agent::Selective(_) => None,
        })
        .collect();

    let mut division = division_for(&tri, &found.witness)?;
    if let (Some(ds), Method::Scan, WitnessRule::LeastEnvy) =
        (&densities, options.method, options.witness_rule)
    {
        let mut best = max_envy(&division, ds)?;
        for (cell, _) in find_fully_labeled_scan(&tri, &found.selected) {
            let witness = witness_for(&tri, &ownership, &found.selected, cell);
            let candidate = division_for(&tri, &witness)?;
            let envy = max_envy(&candidate, ds)?;
            if envy < best {
                best = envy;
                division = candidate;
                found.witness = witness;
            }
        }
    }
    let cell = found.witness.cell;
    let assignment = division.assignment().to_vec();
    let measured_envy = densities.map(|d| max_envy(&division, &d)).transpose()?;
    Ok(SolveReport {
        n,
        method: options.method,
        triangulation: options.triangulation,
        witness_rule: options.witness_rule,
        construction: construction.to_string(),
        refinement,
        cells: tri.cells().len(),
        vertices: tri.vertices().len(),
        delta_target: options.delta.clone(),
        max_diameter_squared: tri.max_diameter_squared(),
        witness_diameter_squared: cell_diameter_squared(&tri, cell),
        cuts: division.cuts().to_vec(),
        assignment,
        measured_envy,
        boundary_degree: found.boundary_degree,
        induced_tried: found.induced_tried,
        oracle_calls,
        cells_scanned: found.cells_scanned,
        witness: found.witness,
        division,
    })
}

/// Exhaustive grid search: every cut vector on the grid `{0, 1/g, …, 1}`
/// and every assignment; returns the division with the smallest max envy
/// (first found on ties) together with that envy.
pub fn brute_force_envy_free(
    agents: &[ValueDensity],
    grid: usize,
    cap: u64,
) -> Result<(Division, Rational)> {
    let n = agents.len();
    if n < 2 || grid == 0 {
        return Err(invalid("need at least two agents and a positive grid"));
    }
    let needed = (grid as u128 + 1)
        .checked_pow(n as u32 - 1)
        .unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(Error::ResourceCap {
            what: "brute-force grid points",
            needed: needed.to_string(),
            cap: cap.to_string(),
        });
    }
    let perms = permutations(n);
    let g = grid as i64;
    let mut best: Option<(Vec<usize>, Vec<usize>, Rational)> = None;
    let mut idx = vec![0usize; n - 1];
    loop {
        let mut bounds = vec![int(0)];
        bounds.extend(idx.iter().map(|&i| rational::ratio(i as i64, g)));
        bounds.push(int(1));
        let pieces: Vec<Interval> = bounds
            .windows(2)
            .map(|w| Interval::new(w[0].clone(), w[1].clone()))
            .collect();
        let values: Vec<Vec<Rational>> = agents
            .iter()
            .map(|a| pieces.iter().map(|p| a.interval_value(p)).collect())
            .collect();
        for perm in &perms {
            // agent i receives piece perm[i]
            let envy = (0..n)
                .map(|i| {
                    let own = &values[i][perm[i]];
                    (0..n)
                        .filter(|&j| j != perm[i])
                        .map(|j| &values[i][j] - own)
                        .max()
                        .expect("n >= 2")
                })
                .max()
                .expect("n >= 2");
            if best.as_ref().is_none_or(|(_, _, e)| envy < *e) {
                best = Some((idx.clone(), perm.clone(), envy));
            }
        }
        // next nondecreasing index vector
        let mut k = n - 1;
        loop {
            if k == 0 {
                let (cuts, perm, envy) = best.expect("at least one candidate");
                let cuts = cuts.iter().map(|&i| rational::ratio(i as i64, g)).collect();
                let assignment = perm.iter().map(|p| p + 1).collect();
                return Ok((Division::new(cuts, assignment)?, envy));
            }
            k -= 1;
            if idx[k] < grid {
                idx[k] += 1;
                for j in k + 1..n - 1 {
                    idx[j] = idx[k];
                }
                break;
            }
        }
    }
}

/// `true` if the division's cuts agree with `other` up to `tol` each.
pub fn cuts_within(a: &Division, b: &Division, tol: &Rational) -> bool {
    a.cuts().len() == b.cuts().len()
        && a.cuts()
            .iter()
            .zip(b.cuts())
            .all(|(x, y)| (x - y).abs() <= *tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cake::{counterexample_agents, divide_two_agents, PartitionPoint};
    use crate::labeling::{agent_labeling, random_single_labeling, random_sperner_labeling};
    use crate::rational::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn additive(ds: Vec<ValueDensity>) -> Vec<Agent> {
        ds.into_iter().map(Agent::from).collect()
    }

    #[test]
    fn scan_finds_odd_count_for_sperner() {
        let (t, _) = barycentric_triangulation(3, 1, DEFAULT_CELL_CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let ell = random_sperner_labeling(&t, &mut rng);
            let found = find_fully_labeled_scan(&t, &ell);
            assert_eq!(found.len() % 2, 1);
            assert_eq!(found.iter().map(|(_, s)| *s as i64).sum::<i64>(), 1);
        }
        assert!(find_fully_labeled_scan(&t, &vec![1; t.vertices().len()]).is_empty());
    }

    #[test]
    fn bisect_agrees_with_scan() {
        let tri = match equilateral_friendly_n3(8, DEFAULT_CELL_CAP).unwrap() {
            EquilateralOutcome::Feasible { triangulation, .. } => triangulation,
            _ => unreachable!(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut hits = 0;
        for _ in 0..40 {
            let ell = random_single_labeling(&tri, &mut rng);
            match find_fully_labeled_bisect(&tri, &ell) {
                Ok(out) => {
                    hits += 1;
                    let scan = find_fully_labeled_scan(&tri, &ell);
                    assert!(scan.iter().any(|(c, _)| *c == out.cell));
                }
                Err(e) => assert!(matches!(e, Error::Precondition(_))),
            }
        }
        assert!(hits > 0);
        let t = Triangulation::trivial(3).unwrap();
        let ell: Vec<usize> = (0..3)
            .map(|v| {
                (1..=3)
                    .find(|&j| *t.vertex(v) == PartitionPoint::main_vertex(3, j))
                    .unwrap()
            })
            .collect();
        assert_eq!(find_fully_labeled_bisect(&t, &ell).unwrap().cell, 0);
        assert!(find_fully_labeled_bisect(&t, &[1, 1, 1]).is_err());
    }

    #[test]
    fn envy_free_simplex_witness_is_valid() {
        let (t, w) = barycentric_triangulation(3, 2, DEFAULT_CELL_CAP).unwrap();
        let agents = additive(counterexample_agents());
        let ls: Vec<Labeling> = agents
            .iter()
            .map(|a| agent_labeling(&t, a).unwrap())
            .collect();
        for method in [Method::Scan, Method::Bisect] {
            let found = find_envy_free_simplex(&t, &w, &ls, method).unwrap();
            let mut owners: Vec<usize> = found.witness.vertices.iter().map(|v| v.owner).collect();
            let mut labels: Vec<usize> = found.witness.vertices.iter().map(|v| v.label).collect();
            owners.sort();
            labels.sort();
            assert_eq!(owners, vec![0, 1, 2]);
            assert_eq!(labels, vec![1, 2, 3]);
            for v in &found.witness.vertices {
                assert!(ls[v.owner].get(v.vertex).contains(&v.label));
            }
        }
    }

    #[test]
    fn uniform_agents_converge_to_thirds() {
        let agents = additive(vec![ValueDensity::uniform(int(1)); 3]);
        let report = solve(&agents, &SolveOptions::new(ratio(1, 16))).unwrap();
        let bound = int(3) * ratio(1, 16);
        assert!(report.measured_envy.clone().unwrap() <= bound);
        let thirds = Division::new(vec![ratio(1, 3), ratio(2, 3)], vec![1, 2, 3]).unwrap();
        assert!(cuts_within(&report.division, &thirds, &ratio(1, 8)));
    }

    #[test]
    fn two_agents_agree_with_cut_and_choose() {
        let ds = counterexample_agents();
        let agents = additive(ds[..2].to_vec());
        let report = solve(&agents, &SolveOptions::new(ratio(1, 64))).unwrap();
        let e = report.measured_envy.unwrap();
        assert!(e <= int(2) * int(24) * ratio(1, 64), "envy {e}");
        let exact = divide_two_agents(&ds[0], &ds[1], &ratio(1, 1 << 20)).unwrap();
        assert!(max_envy(&exact, &ds[..2]).unwrap() <= int(0));
    }

    #[test]
    fn brute_force_small_cases() {
        let two = vec![ValueDensity::uniform(int(1)); 2];
        let (d, e) = brute_force_envy_free(&two, 4, 1000).unwrap();
        assert_eq!(e, int(0));
        assert_eq!(d.cuts(), &[ratio(1, 2)]);
        let three = vec![ValueDensity::uniform(int(1)); 3];
        let (_, e6) = brute_force_envy_free(&three, 6, 1000).unwrap();
        assert_eq!(e6, int(0));
        let (_, e7) = brute_force_envy_free(&three, 7, 1000).unwrap();
        assert!(e7 > int(0) && e7 <= ratio(1, 7));
        assert!(brute_force_envy_free(&three, 100, 1000).is_err());
    }

    #[test]
    fn solve_rejects_bad_options() {
        let agents = additive(vec![ValueDensity::uniform(int(1)); 4]);
        let mut opts = SolveOptions::new(ratio(1, 4));
        opts.triangulation = TriangulationKind::Equilateral;
        assert!(solve(&agents, &opts).is_err());
        assert!(solve(&agents[..1], &SolveOptions::new(ratio(1, 4))).is_err());
        assert!(solve(&agents, &SolveOptions::new(int(0))).is_err());
    }
}
