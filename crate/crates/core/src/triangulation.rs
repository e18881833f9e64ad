//! Friendly triangulations of the partition simplex with friendly and
//! diverse ownership assignments.
//!
//! Orientation is measured in the chart that drops the last barycentric
//! coordinate and is normalised so that the simplex itself, with its main
//! vertices in order `F_1..F_n`, is positive for every `n`. Cells are stored
//! positively oriented.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cake::PartitionPoint;
use crate::error::{invalid, Error, Result};
use crate::rational::{self, int, Rational};
use crate::simplex::{friend_orbit, zero_face};

/// Default guard on the number of cells a construction may produce.
pub const DEFAULT_CELL_CAP: u64 = 1_000_000;

/// An `(n−2)`-face of the triangulation lying on the boundary of the simplex.
#[derive(Debug, Clone)]
pub struct BoundaryFace {
    /// Face vertices, in the order they appear in the containing cell.
    pub vertices: Vec<usize>,
    pub cell: usize,
    /// Position (within the cell) of the vertex opposite this face.
    pub opposite: usize,
    /// The facet `F_{-k}` this face lies on (1-based `k`).
    pub facet: usize,
    /// Barycenter of the containing cell; fixes the inward orientation.
    pub inward: PartitionPoint,
}

#[derive(Debug, Clone)]
pub struct Triangulation {
    n: usize,
    vertices: Vec<PartitionPoint>,
    cells: Vec<Vec<usize>>,
    neighbors: Vec<Vec<Option<usize>>>,
    boundary: Vec<BoundaryFace>,
    index: HashMap<PartitionPoint, usize>,
    /// `f64` copies of the coordinates, used only as filters.
    approx: Vec<Vec<f64>>,
}

/// Sign of `det[p_2−p_1, …, p_n−p_1]` in the drop-last chart, without normalisation.
fn raw_orientation(points: &[&PartitionPoint]) -> i32 {
    let d = points.len() - 1;
    let base = points[0].lengths();
    let rows = points[1..]
        .iter()
        .map(|p| (0..d).map(|c| &p.lengths()[c] - &base[c]).collect())
        .collect();
    rational::sign(&rational::determinant(rows))
}

fn reference_sign(n: usize) -> i32 {
    let mains: Vec<PartitionPoint> = (1..=n).map(|j| PartitionPoint::main_vertex(n, j)).collect();
    let refs: Vec<&PartitionPoint> = mains.iter().collect();
    raw_orientation(&refs)
}

/// Orientation of `n` points of `Δ^{n−1}` relative to `(F_1, …, F_n)`:
/// `+1` same, `−1` reflected, `0` degenerate.
pub fn orientation(points: &[&PartitionPoint]) -> i32 {
    let n = points.len();
    if n == 1 {
        return 1;
    }
    raw_orientation(points) * reference_sign(n)
}

/// Orientation with a floating-point filter: the sign of a Leibniz
/// expansion over `f64` coordinates is accepted when it clears a rigorous
/// error bound, otherwise the exact determinant decides.
struct Orienter {
    reference: i32,
}

/// Sign of `det` over `f64` rows, or `None` when rounding could flip it.
/// Inputs are within `4ε` of exact values bounded by 1 in magnitude.
fn filtered_sign(rows: &[Vec<f64>]) -> Option<i32> {
    let d = rows.len();
    let perms = permutations(d);
    let m = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(0f64, |acc, x| acc.max(x.abs()))
        + 4.0 * f64::EPSILON;
    let mut det = 0f64;
    for p in &perms {
        let sign = if crate::simplex::permutation_sign(p) > 0 {
            1.0
        } else {
            -1.0
        };
        det += sign * (0..d).map(|i| rows[i][p[i]]).product::<f64>();
    }
    let terms = perms.len() as f64;
    let bound = 2.0
        * terms
        * (d as f64 * m.powi(d as i32 - 1) * 8.0 * f64::EPSILON
            + (d as f64 + terms) * f64::EPSILON * m.powi(d as i32));
    if det > bound {
        Some(1)
    } else if det < -bound {
        Some(-1)
    } else {
        None
    }
}

impl Orienter {
    fn new(n: usize) -> Self {
        Self {
            reference: if n == 1 { 1 } else { reference_sign(n) },
        }
    }

    fn sign(&self, points: &[&PartitionPoint], approx: &[&[f64]]) -> i32 {
        if points.len() == 1 {
            return 1;
        }
        let d = points.len() - 1;
        let rows: Vec<Vec<f64>> = approx[1..]
            .iter()
            .map(|p| (0..d).map(|c| p[c] - approx[0][c]).collect())
            .collect();
        filtered_sign(&rows).unwrap_or_else(|| raw_orientation(points)) * self.reference
    }
}

impl Triangulation {
    /// Builds and validates a triangulation from explicit cells. Cells are
    /// reoriented to positive; degenerate cells, faces shared by more than
    /// two cells, and boundary faces off the simplex boundary are rejected.
    pub fn from_cells(
        n: usize,
        vertices: Vec<PartitionPoint>,
        cells: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(invalid("triangulations need n >= 2"));
        }
        if let Some(v) = vertices.iter().find(|v| v.dim() != n) {
            return Err(invalid(format!("vertex {v} does not have {n} coordinates")));
        }
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Triangulation(format!("duplicate vertex {v}")));
            }
        }
        let approx: Vec<Vec<f64>> = vertices
            .par_iter()
            .map(|v| v.lengths().iter().map(rational::to_f64).collect())
            .collect();
        let orienter = Orienter::new(n);
        let mut cells = cells;
        if let Some(c) = cells
            .iter()
            .position(|cell| cell.len() != n || cell.iter().any(|&v| v >= vertices.len()))
        {
            return Err(Error::Triangulation(format!("cell {c} is malformed")));
        }
        let signs: Vec<i32> = cells
            .par_iter()
            .map(|cell| {
                let pts: Vec<&PartitionPoint> = cell.iter().map(|&v| &vertices[v]).collect();
                let apx: Vec<&[f64]> = cell.iter().map(|&v| approx[v].as_slice()).collect();
                orienter.sign(&pts, &apx)
            })
            .collect();
        for (c, (cell, sign)) in cells.iter_mut().zip(signs).enumerate() {
            match sign {
                0 => return Err(Error::Triangulation(format!("cell {c} is degenerate"))),
                -1 => cell.swap(0, 1),
                _ => {}
            }
        }

        let mut faces: HashMap<Vec<usize>, Vec<(usize, usize)>> =
            HashMap::with_capacity(cells.len() * 2);
        for (c, cell) in cells.iter().enumerate() {
            for i in 0..n {
                let mut key: Vec<usize> = cell
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, &v)| v)
                    .collect();
                key.sort_unstable();
                faces.entry(key).or_default().push((c, i));
            }
        }
        let mut neighbors = vec![vec![None; n]; cells.len()];
        let mut boundary = Vec::new();
        for (key, owners) in &faces {
            match owners.as_slice() {
                [(a, i), (b, j)] => {
                    neighbors[*a][*i] = Some(*b);
                    neighbors[*b][*j] = Some(*a);
                }
                [(c, i)] => {
                    let common = (1..=n)
                        .find(|&k| key.iter().all(|&v| vertices[v].lengths()[k - 1].is_zero()));
                    let Some(facet) = common else {
                        return Err(Error::Triangulation(format!(
                            "face {key:?} of cell {c} has no neighbour but is not on the boundary"
                        )));
                    };
                    let cell = &cells[*c];
                    let pts: Vec<&PartitionPoint> = cell.iter().map(|&v| &vertices[v]).collect();
                    boundary.push(BoundaryFace {
                        vertices: cell
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| j != i)
                            .map(|(_, &v)| v)
                            .collect(),
                        cell: *c,
                        opposite: *i,
                        facet,
                        inward: PartitionPoint::barycenter(&pts),
                    });
                }
                _ => {
                    return Err(Error::Triangulation(format!(
                        "face {key:?} is shared by {} cells",
                        owners.len()
                    )))
                }
            }
        }
        boundary.sort_by_key(|a| (a.cell, a.opposite));
        Ok(Self {
            n,
            vertices,
            cells,
            neighbors,
            boundary,
            index,
            approx,
        })
    }

    /// The single-cell triangulation of `Δ^{n−1}`.
    pub fn trivial(n: usize) -> Result<Self> {
        let vertices = (1..=n).map(|j| PartitionPoint::main_vertex(n, j)).collect();
        Self::from_cells(n, vertices, vec![(0..n).collect()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[PartitionPoint] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &PartitionPoint {
        &self.vertices[v]
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell(&self, c: usize) -> &[usize] {
        &self.cells[c]
    }

    /// Cell across the face opposite local vertex `i` of cell `c`.
    pub fn neighbor(&self, c: usize, i: usize) -> Option<usize> {
        self.neighbors[c][i]
    }

    pub fn boundary_faces(&self) -> &[BoundaryFace] {
        &self.boundary
    }

    pub fn find_vertex(&self, p: &PartitionPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn cell_points(&self, c: usize) -> Vec<&PartitionPoint> {
        self.cells[c].iter().map(|&v| &self.vertices[v]).collect()
    }

    pub fn cell_barycenter(&self, c: usize) -> PartitionPoint {
        PartitionPoint::barycenter(&self.cell_points(c))
    }

    /// Stored orientation of a cell (always `+1` once constructed).
    pub fn orientation(&self, c: usize) -> i32 {
        orientation(&self.cell_points(c))
    }

    /// Largest squared euclidean distance between two vertices of one cell.
    /// Candidates are shortlisted in `f64` and compared exactly.
    pub fn max_diameter_squared(&self) -> Rational {
        let approx_d2 = |a: usize, b: usize| -> f64 {
            self.approx[a]
                .iter()
                .zip(&self.approx[b])
                .map(|(x, y)| (x - y) * (x - y))
                .sum()
        };
        let pairs = |cell: &[usize]| -> Vec<(usize, usize)> {
            let mut out = Vec::new();
            for i in 0..cell.len() {
                for j in i + 1..cell.len() {
                    out.push((cell[i], cell[j]));
                }
            }
            out
        };
        let best = self
            .cells
            .par_iter()
            .flat_map_iter(|cell| pairs(cell).into_iter().map(|(a, b)| approx_d2(a, b)))
            .reduce(|| 0f64, f64::max);
        let slack = 1e-9;
        self.cells
            .par_iter()
            .flat_map_iter(|cell| pairs(cell))
            .filter(|&(a, b)| approx_d2(a, b) >= best - slack)
            .map(|(a, b)| self.vertices[a].dist2(&self.vertices[b]))
            .max()
            .unwrap_or_default()
    }

    /// Sum of the absolute chart volumes (times `(n−1)!`) of all cells.
    pub fn total_volume(&self) -> Rational {
        (0..self.cells.len())
            .map(|c| {
                let pts = self.cell_points(c);
                let base = pts[0].lengths();
                let rows = pts[1..]
                    .iter()
                    .map(|p| {
                        (0..self.n - 1)
                            .map(|k| &p.lengths()[k] - &base[k])
                            .collect()
                    })
                    .collect();
                rational::determinant(rows).abs()
            })
            .sum()
    }

    /// Every friend of every vertex is a vertex. Returns the first offender.
    pub fn check_friendly(&self) -> std::result::Result<(), (usize, PartitionPoint)> {
        for (v, p) in self.vertices.iter().enumerate() {
            if zero_face(p).is_empty() {
                continue;
            }
            for f in friend_orbit(p) {
                if !self.index.contains_key(&f) {
                    return Err((v, f));
                }
            }
        }
        Ok(())
    }

    /// Vertex indices of the friends of `v` (including `v`).
    pub fn friends_of(&self, v: usize) -> Vec<usize> {
        friend_orbit(&self.vertices[v])
            .iter()
            .filter_map(|f| self.find_vertex(f))
            .collect()
    }

    /// Line-oriented dump: a header, one vertex per line as `n` rationals,
    /// then one cell per line as `n` vertex indices.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n {} vertices {} cells {}",
            self.n,
            self.vertices.len(),
            self.cells.len()
        );
        for v in &self.vertices {
            let parts: Vec<String> = v.lengths().iter().map(rational::format).collect();
            let _ = writeln!(out, "{}", parts.join(" "));
        }
        for c in &self.cells {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", parts.join(" "));
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| invalid("empty dump"))?
            .split_whitespace()
            .collect();
        let num = |i: usize| -> Result<usize> {
            header
                .get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| invalid("malformed dump header"))
        };
        let (n, nv, nc) = (num(1)?, num(3)?, num(5)?);
        let mut vertices = Vec::with_capacity(nv);
        for _ in 0..nv {
            let line = lines.next().ok_or_else(|| invalid("dump ended early"))?;
            let coords = line
                .split_whitespace()
                .map(rational::parse)
                .collect::<Result<Vec<_>>>()?;
            vertices.push(PartitionPoint::new(coords)?);
        }
        let mut cells = Vec::with_capacity(nc);
        for _ in 0..nc {
            let line = lines.next().ok_or_else(|| invalid("dump ended early"))?;
            let cell = line
                .split_whitespace()
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| invalid(format!("bad vertex index {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            cells.push(cell);
        }
        Self::from_cells(n, vertices, cells)
    }
}

/// Which agent owns each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ownership {
    /// 0-based agent index per vertex.
    pub owner: Vec<usize>,
    /// Level in the final subdivision step (1-based); `owner = level − 1`
    /// for barycentric triangulations.
    pub level: Vec<usize>,
}

/// A diversity or friendliness violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OwnershipViolation {
    /// Two vertices of one cell share an owner.
    NotDiverse { cell: usize, a: usize, b: usize },
    /// Two friends have different owners.
    NotFriendly { a: usize, b: usize },
}

impl Ownership {
    pub fn owner(&self, v: usize) -> usize {
        self.owner[v]
    }

    pub fn check_diverse(
        &self,
        tri: &Triangulation,
    ) -> std::result::Result<(), OwnershipViolation> {
        for (c, cell) in tri.cells().iter().enumerate() {
            for i in 0..cell.len() {
                for j in i + 1..cell.len() {
                    if self.owner[cell[i]] == self.owner[cell[j]] {
                        return Err(OwnershipViolation::NotDiverse {
                            cell: c,
                            a: cell[i],
                            b: cell[j],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_friendly(
        &self,
        tri: &Triangulation,
    ) -> std::result::Result<(), OwnershipViolation> {
        for v in 0..tri.vertices().len() {
            if zero_face(tri.vertex(v)).is_empty() {
                continue;
            }
            for w in tri.friends_of(v) {
                if self.owner[w] != self.owner[v] {
                    return Err(OwnershipViolation::NotFriendly { a: v, b: w });
                }
            }
        }
        Ok(())
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lattice_point(nums: &[u128], den: u128) -> PartitionPoint {
    let den = BigInt::from(den);
    PartitionPoint::new_unchecked(
        nums.iter()
            .map(|&x| Rational::new(BigInt::from(x), den.clone()))
            .collect(),
    )
}

fn check_cap(what: &'static str, needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        return Err(Error::ResourceCap {
            what,
            needed: needed.to_string(),
            cap: cap.to_string(),
        });
    }
    Ok(())
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Fails with [`Error::ResourceCap`] when `(n!)^depth` exceeds `cell_cap`.
pub fn check_barycentric_cap(n: usize, depth: usize, cell_cap: u64) -> Result<()> {
    let fact: u128 = (1..=n as u128).product();
    let needed = (0..depth)
        .try_fold(1u128, |acc, _| acc.checked_mul(fact))
        .unwrap_or(u128::MAX);
    check_cap("barycentric cells", needed, cell_cap)
}

/// Iterated barycentric subdivision of `Δ^{n−1}` (`(n!)^depth` cells) with
/// the ownership "a vertex of level `i` in the last step belongs to agent
/// `A_i`", which is friendly and diverse.
pub fn barycentric_triangulation(
    n: usize,
    depth: usize,
    cell_cap: u64,
) -> Result<(Triangulation, Ownership)> {
    if n < 2 {
        return Err(invalid("barycentric triangulation needs n >= 2"));
    }
    if depth == 0 {
        return Err(invalid("depth must be at least 1"));
    }
    check_barycentric_cap(n, depth, cell_cap)?;

    // Coordinates are kept as integer numerators over a shared denominator
    // that grows by lcm(1..=n) per step; rationals are built once at the end.
    let lcm = (1..=n as u128).fold(1u128, |acc, s| acc / gcd(acc, s) * s);
    let perms = permutations(n);
    let mut den: u128 = 1;
    let mut vertices: Vec<Vec<u128>> = (0..n)
        .map(|j| (0..n).map(|i| u128::from(i == j)).collect())
        .collect();
    let mut cells: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut levels = vec![1; n];
    for _ in 0..depth {
        den = den.checked_mul(lcm).ok_or(Error::ResourceCap {
            what: "barycentric coordinate denominator",
            needed: "more than 128 bits".into(),
            cap: "128 bits".into(),
        })?;
        let mut index: HashMap<Vec<u128>, usize> = HashMap::new();
        let mut next_vertices = Vec::new();
        let mut next_levels = Vec::new();
        let mut next_cells = Vec::with_capacity(cells.len() * perms.len());
        for cell in &cells {
            // barycenter of every nonempty subset of the cell's vertices, by bitmask
            let mut subset_vertex = vec![usize::MAX; 1 << n];
            for mask in 1usize..(1 << n) {
                let members: Vec<usize> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| cell[i])
                    .collect();
                let level = members.len();
                let scale = lcm / level as u128;
                let b: Vec<u128> = (0..n)
                    .map(|k| members.iter().map(|&v| vertices[v][k]).sum::<u128>() * scale)
                    .collect();
                let id = *index.entry(b).or_insert_with_key(|b| {
                    next_vertices.push(b.clone());
                    next_levels.push(level);
                    next_vertices.len() - 1
                });
                debug_assert_eq!(next_levels[id], level);
                subset_vertex[mask] = id;
            }
            for perm in &perms {
                let mut mask = 0usize;
                let sub: Vec<usize> = perm
                    .iter()
                    .map(|&i| {
                        mask |= 1 << i;
                        subset_vertex[mask]
                    })
                    .collect();
                next_cells.push(sub);
            }
        }
        vertices = next_vertices;
        levels = next_levels;
        cells = next_cells;
    }
    let vertices = vertices.iter().map(|v| lattice_point(v, den)).collect();
    let tri = Triangulation::from_cells(n, vertices, cells)?;
    let owner = levels.iter().map(|l| l - 1).collect();
    Ok((
        tri,
        Ownership {
            owner,
            level: levels,
        },
    ))
}

/// Outcome of the n = 3 equilateral-style construction.
#[derive(Debug, Clone)]
pub enum EquilateralOutcome {
    Feasible {
        triangulation: Triangulation,
        ownership: Ownership,
        construction: &'static str,
    },
    /// Every candidate triangulation for this `D` was refuted.
    Infeasible { rejections: Vec<CandidateRejection> },
}

/// Why one candidate admits no friendly and diverse ownership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRejection {
    pub construction: &'static str,
    pub reason: String,
}

fn plain_grid(d: usize) -> Result<Triangulation> {
    let mut ids = HashMap::new();
    let mut vertices = Vec::new();
    let den = d as i64;
    for j in 0..=d {
        for i in 0..=d - j {
            ids.insert((i, j), vertices.len());
            let (a, b) = (i as i64, j as i64);
            vertices.push(PartitionPoint::new_unchecked(vec![
                rational::ratio(a, den),
                rational::ratio(b, den),
                rational::ratio(den - a - b, den),
            ]));
        }
    }
    let mut cells = Vec::new();
    for j in 0..d {
        for i in 0..d - j {
            cells.push(vec![ids[&(i, j)], ids[&(i + 1, j)], ids[&(i, j + 1)]]);
            if i + j + 2 <= d {
                cells.push(vec![
                    ids[&(i + 1, j)],
                    ids[&(i + 1, j + 1)],
                    ids[&(i, j + 1)],
                ]);
            }
        }
    }
    Triangulation::from_cells(3, vertices, cells)
}

/// Depth-1 barycentric subdivision with each of its six cells regularly
/// refined into `m²` triangles, so every side of `Δ²` carries `2m` segments.
fn refined_barycentric(m: usize) -> Result<Triangulation> {
    let (coarse, _) = barycentric_triangulation(3, 1, DEFAULT_CELL_CAP)?;
    // coarse coordinates are multiples of 1/6; refined ones of 1/(6m)
    let sixths = |v: usize| -> Vec<u128> {
        coarse
            .vertex(v)
            .lengths()
            .iter()
            .map(|x| {
                u128::try_from((x * int(6)).to_integer()).expect("coarse coordinates are sixths")
            })
            .collect()
    };
    let mm = m as u128;
    let mut index: HashMap<Vec<u128>, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut cells = Vec::with_capacity(6 * m * m);
    for cell in coarse.cells() {
        let (a, b, c) = (sixths(cell[0]), sixths(cell[1]), sixths(cell[2]));
        let mut local = vec![vec![usize::MAX; m + 1]; m + 1];
        for p in 0..=m {
            for q in 0..=m - p {
                let (p, q) = (p as u128, q as u128);
                // a + (p/m)(b − a) + (q/m)(c − a), as (m−p−q)a + pb + qc over 6m
                let nums: Vec<u128> = (0..3)
                    .map(|k| (mm - p - q) * a[k] + p * b[k] + q * c[k])
                    .collect();
                let id = *index.entry(nums).or_insert_with_key(|nums| {
                    vertices.push(nums.clone());
                    vertices.len() - 1
                });
                local[p as usize][q as usize] = id;
            }
        }
        for p in 0..m {
            for q in 0..m - p {
                cells.push(vec![local[p][q], local[p + 1][q], local[p][q + 1]]);
                if p + q + 2 <= m {
                    cells.push(vec![local[p + 1][q], local[p + 1][q + 1], local[p][q + 1]]);
                }
            }
        }
    }
    let vertices = vertices.iter().map(|v| lattice_point(v, 6 * mm)).collect();
    Triangulation::from_cells(3, vertices, cells)
}

/// Propagates a proper 3-colouring across shared edges. Colourings of a
/// triangulated disc are unique up to permuting colours, so a conflict
/// here refutes every diverse ownership of this triangulation.
fn propagate_colouring(tri: &Triangulation) -> std::result::Result<Vec<usize>, String> {
    let mut colour = vec![usize::MAX; tri.vertices().len()];
    let mut seen = vec![false; tri.cells().len()];
    let mut stack = vec![0usize];
    for (i, &v) in tri.cell(0).iter().enumerate() {
        colour[v] = i;
    }
    seen[0] = true;
    while let Some(c) = stack.pop() {
        let cell = tri.cell(c);
        let used: Vec<usize> = cell.iter().map(|&v| colour[v]).collect();
        if used.contains(&usize::MAX) {
            let known: Vec<usize> = used.iter().copied().filter(|&x| x != usize::MAX).collect();
            if known.len() != 2 || known[0] == known[1] {
                return Err(format!("cell {c} cannot be coloured from its neighbours"));
            }
            let missing = 3 - known[0] - known[1];
            for &v in cell {
                if colour[v] == usize::MAX {
                    colour[v] = missing;
                }
            }
        }
        let used: Vec<usize> = cell.iter().map(|&v| colour[v]).collect();
        if used[0] == used[1] || used[1] == used[2] || used[0] == used[2] {
            return Err(format!("cell {c} {:?} forces a repeated owner", cell));
        }
        for i in 0..3 {
            if let Some(nb) = tri.neighbor(c, i) {
                if !seen[nb] {
                    seen[nb] = true;
                    stack.push(nb);
                }
            }
        }
    }
    Ok(colour)
}

fn colouring_outcome(tri: &Triangulation) -> std::result::Result<Ownership, String> {
    let colour = propagate_colouring(tri)?;
    for v in 0..tri.vertices().len() {
        if zero_face(tri.vertex(v)).is_empty() {
            continue;
        }
        for w in tri.friends_of(v) {
            if colour[w] != colour[v] {
                return Err(format!(
                    "friends {} and {} receive different owners in the unique colouring",
                    tri.vertex(v),
                    tri.vertex(w)
                ));
            }
        }
    }
    // canonical names: the corner orbit is agent 0, then first appearance
    let corner = tri
        .find_vertex(&PartitionPoint::main_vertex(3, 1))
        .expect("corners are vertices");
    let mut rename = [usize::MAX; 3];
    rename[colour[corner]] = 0;
    let mut next = 1;
    for &c in &colour {
        if rename[c] == usize::MAX {
            rename[c] = next;
            next += 1;
        }
    }
    let owner: Vec<usize> = colour.iter().map(|&c| rename[c]).collect();
    let level = owner.iter().map(|o| o + 1).collect();
    Ok(Ownership { owner, level })
}

type Candidate = Box<dyn Fn() -> Result<Triangulation>>;

/// Equilateral-style triangulation of `Δ²` with each side split into `d`
/// segments, together with a friendly and diverse ownership when one exists.
///
/// Two candidates are tried: the plain triangular grid, and (for even `d`)
/// the depth-1 barycentric subdivision refined `d/2` times per side. For
/// each, the ownership is the unique proper 3-colouring up to renaming, so
/// a failed candidate is refuted exhaustively.
pub fn equilateral_friendly_n3(d: usize, cell_cap: u64) -> Result<EquilateralOutcome> {
    if d == 0 {
        return Err(invalid("D must be at least 1"));
    }
    check_cap(
        "equilateral cells",
        (d as u128) * (d as u128) * 3 / 2,
        cell_cap,
    )?;
    let mut rejections = Vec::new();
    let mut candidates: Vec<(&'static str, Candidate)> = Vec::new();
    if d.is_multiple_of(2) {
        candidates.push((
            "refined_barycentric",
            Box::new(move || refined_barycentric(d / 2)),
        ));
    }
    candidates.push(("plain_grid", Box::new(move || plain_grid(d))));
    for (name, build) in candidates {
        let tri = build()?;
        match colouring_outcome(&tri) {
            Ok(ownership) => {
                debug_assert!(ownership.check_diverse(&tri).is_ok());
                return Ok(EquilateralOutcome::Feasible {
                    triangulation: tri,
                    ownership,
                    construction: name,
                });
            }
            Err(reason) => rejections.push(CandidateRejection {
                construction: name,
                reason,
            }),
        }
    }
    Ok(EquilateralOutcome::Infeasible { rejections })
}

/// Exhaustive search over owner assignments of friend orbits (small
/// triangulations only): returns one friendly and diverse ownership, or
/// `None` after trying all `n^orbits` options.
pub fn search_ownership_exhaustive(
    tri: &Triangulation,
    max_orbits: usize,
) -> Result<Option<Ownership>> {
    let nv = tri.vertices().len();
    let mut orbit_of = vec![usize::MAX; nv];
    let mut orbits = 0usize;
    for v in 0..nv {
        if orbit_of[v] != usize::MAX {
            continue;
        }
        for w in tri.friends_of(v) {
            orbit_of[w] = orbits;
        }
        orbit_of[v] = orbits;
        orbits += 1;
    }
    if orbits > max_orbits {
        return Err(Error::ResourceCap {
            what: "ownership search orbits",
            needed: orbits.to_string(),
            cap: max_orbits.to_string(),
        });
    }
    let n = tri.n();
    let mut choice = vec![0usize; orbits];
    loop {
        let owner: Vec<usize> = orbit_of.iter().map(|&o| choice[o]).collect();
        let w = Ownership {
            level: owner.iter().map(|o| o + 1).collect(),
            owner,
        };
        if w.check_diverse(tri).is_ok() {
            return Ok(Some(w));
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == orbits {
                return Ok(None);
            }
            choice[i] += 1;
            if choice[i] < n {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
