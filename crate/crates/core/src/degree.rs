//! Interior and boundary degrees of single-valued labelings.
//!
//! The reference simplex is `Δ^{n−1}` itself. A fully-labeled cell
//! contributes the sign of the affine map sending its vertices onto the
//! main vertices named by their labels; a boundary face contributes `±1/n`
//! for the one reference facet whose labels it carries.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cake::PartitionPoint;
use crate::error::{invalid, Result};
use crate::labeling::Labeling;
use crate::rational::{self, Rational};
use crate::simplex::permutation_sign;
use crate::triangulation::{orientation, Triangulation};

/// Labels form a permutation of `1..=n`.
fn is_full(labels: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n + 1];
    labels
        .iter()
        .all(|&l| (1..=n).contains(&l) && !std::mem::replace(&mut seen[l], true))
        && labels.len() == n
}

/// The label missing from `n−1` distinct labels in `1..=n`, if any.
fn missing_label(labels: &[usize], n: usize) -> Option<usize> {
    let mut seen = vec![false; n + 1];
    for &l in labels {
        if !(1..=n).contains(&l) || std::mem::replace(&mut seen[l], true) {
            return None;
        }
    }
    (1..=n).find(|&l| !seen[l])
}

/// `+1`, `−1` or `0` for cell `c` under `ℓ`.
pub fn cell_degree(tri: &Triangulation, c: usize, ell: &[usize]) -> i32 {
    let labels: Vec<usize> = tri.cell(c).iter().map(|&v| ell[v]).collect();
    if !is_full(&labels, tri.n()) {
        return 0;
    }
    // stored cells are positively oriented
    permutation_sign(&labels)
}

pub fn interior_degree(tri: &Triangulation, ell: &[usize]) -> i64 {
    (0..tri.cells().len())
        .into_par_iter()
        .map(|c| cell_degree(tri, c, ell) as i64)
        .sum()
}

/// `n ×` the contribution of the face of cell `c` opposite local vertex
/// `i`, oriented with the cell on its inner side.
pub(crate) fn face_numerator(tri: &Triangulation, c: usize, i: usize, ell: &[usize]) -> i32 {
    let n = tri.n();
    let cell = tri.cell(c);
    let face: Vec<usize> = cell
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, &v)| ell[v])
        .collect();
    let Some(m) = missing_label(&face, n) else {
        return 0;
    };
    // moving vertex i to the end of a positive cell costs n−1−i transpositions
    let orient = if (n - 1 - i).is_multiple_of(2) { 1 } else { -1 };
    let mut seq = face;
    seq.push(m);
    orient * permutation_sign(&seq)
}

/// Degree of an oriented boundary face given explicitly: the face vertices
/// followed by the inward point are compared with the matching reference
/// facet followed by its opposite main vertex. Returns a value in `{−1/n, 0, 1/n}`.
pub fn face_degree(
    face: &[&PartitionPoint],
    inward: &PartitionPoint,
    labels: &[usize],
) -> Rational {
    let n = inward.dim();
    let Some(m) = missing_label(labels, n) else {
        return Rational::zero();
    };
    let mut pts: Vec<&PartitionPoint> = face.to_vec();
    pts.push(inward);
    let mut seq = labels.to_vec();
    seq.push(m);
    Rational::from_integer(BigInt::from(orientation(&pts) * permutation_sign(&seq)))
        / BigInt::from(n)
}

/// Degree of boundary face number `f` of `tri`.
pub fn boundary_face_degree(tri: &Triangulation, f: usize, ell: &[usize]) -> Rational {
    let face = &tri.boundary_faces()[f];
    ratio_over_n(
        face_numerator(tri, face.cell, face.opposite, ell) as i64,
        tri.n(),
    )
}

fn ratio_over_n(num: i64, n: usize) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(n))
}

/// `n × bdeg(ℓ)`, as an integer.
pub(crate) fn boundary_numerator(tri: &Triangulation, ell: &[usize]) -> i64 {
    tri.boundary_faces()
        .iter()
        .map(|f| face_numerator(tri, f.cell, f.opposite, ell) as i64)
        .sum()
}

pub fn boundary_degree(tri: &Triangulation, ell: &[usize]) -> Rational {
    ratio_over_n(boundary_numerator(tri, ell), tri.n())
}

/// The part of `bdeg(ℓ)` carried by faces on `F_{−k}`, i.e. `bdeg(ℓ[F_{−k}])`.
pub fn facet_degree(tri: &Triangulation, ell: &[usize], k: usize) -> Rational {
    let num: i64 = tri
        .boundary_faces()
        .iter()
        .filter(|f| f.facet == k)
        .map(|f| face_numerator(tri, f.cell, f.opposite, ell) as i64)
        .sum();
    ratio_over_n(num, tri.n())
}

/// Sum of per-cell face contributions over every `(n−2)`-face, interior
/// ones included. Interior faces are seen from both sides and cancel.
pub fn all_faces_degree_sum(tri: &Triangulation, ell: &[usize]) -> Rational {
    let n = tri.n();
    let num: i64 = (0..tri.cells().len())
        .into_par_iter()
        .map(|c| {
            (0..n)
                .map(|i| face_numerator(tri, c, i, ell) as i64)
                .sum::<i64>()
        })
        .sum();
    ratio_over_n(num, n)
}

/// `n ×` the boundary degree of a set of cells: faces whose neighbour lies
/// outside the set, seen from inside.
pub(crate) fn region_numerator(
    tri: &Triangulation,
    ell: &[usize],
    cells: &[usize],
    inside: impl Fn(usize) -> bool,
) -> i64 {
    let n = tri.n();
    cells
        .iter()
        .map(|&c| {
            (0..n)
                .filter(|&i| tri.neighbor(c, i).is_none_or(|nb| !inside(nb)))
                .map(|i| face_numerator(tri, c, i, ell) as i64)
                .sum::<i64>()
        })
        .sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct CellDegree {
    pub cell: usize,
    pub degree: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceDegree {
    pub cell: usize,
    pub facet: usize,
    pub vertices: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub degree: Rational,
}

/// Both degrees with their nonzero terms.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub interior: i64,
    #[serde(with = "rational::serde_str")]
    pub boundary: Rational,
    pub per_cell: Vec<CellDegree>,
    pub per_boundary_face: Vec<FaceDegree>,
}

pub fn degree_report(tri: &Triangulation, ell: &[usize]) -> DegreeReport {
    let per_cell: Vec<CellDegree> = (0..tri.cells().len())
        .filter_map(|c| {
            let degree = cell_degree(tri, c, ell);
            (degree != 0).then_some(CellDegree { cell: c, degree })
        })
        .collect();
    let per_boundary_face: Vec<FaceDegree> = tri
        .boundary_faces()
        .iter()
        .enumerate()
        .filter_map(|(f, face)| {
            let degree = boundary_face_degree(tri, f, ell);
            (!degree.is_zero()).then(|| FaceDegree {
                cell: face.cell,
                facet: face.facet,
                vertices: face.vertices.clone(),
                degree,
            })
        })
        .collect();
    DegreeReport {
        n: tri.n(),
        interior: per_cell.iter().map(|c| c.degree as i64).sum(),
        boundary: per_boundary_face.iter().map(|f| &f.degree).sum(),
        per_cell,
        per_boundary_face,
    }
}

/// The facet `F_{−k}` as an `(n−2)`-simplex in its own right: coordinate `k`
/// is deleted and labels `[n]∖{k}` are renamed in order onto `1..=n−1`.
#[derive(Debug, Clone)]
pub struct FaceRestriction {
    k: usize,
    n: usize,
    sub: Triangulation,
    /// Sub-triangulation vertex → vertex of the full triangulation.
    origin: Vec<usize>,
}

impl FaceRestriction {
    pub fn new(tri: &Triangulation, k: usize) -> Result<Self> {
        let n = tri.n();
        if n < 3 {
            return Err(invalid("facet restriction needs n >= 3"));
        }
        if k == 0 || k > n {
            return Err(invalid(format!("facet index {k} outside 1..={n}")));
        }
        let mut origin = Vec::new();
        let mut local = std::collections::HashMap::new();
        let mut cells = Vec::new();
        for face in tri.boundary_faces().iter().filter(|f| f.facet == k) {
            let cell = face
                .vertices
                .iter()
                .map(|&v| {
                    *local.entry(v).or_insert_with(|| {
                        origin.push(v);
                        origin.len() - 1
                    })
                })
                .collect();
            cells.push(cell);
        }
        let vertices = origin
            .iter()
            .map(|&v| {
                let mut coords = tri.vertex(v).lengths().to_vec();
                coords.remove(k - 1);
                PartitionPoint::new_unchecked(coords)
            })
            .collect();
        let sub = Triangulation::from_cells(n - 1, vertices, cells)?;
        Ok(Self { k, n, sub, origin })
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.sub
    }

    /// Labels on the facet, renamed; the label `k` itself maps to `0`,
    /// which never completes a cell.
    pub fn restrict(&self, ell: &[usize]) -> Vec<usize> {
        self.origin
            .iter()
            .map(|&v| match ell[v] {
                l if l == self.k => 0,
                l if l > self.k => l - 1,
                l => l,
            })
            .collect()
    }

    /// `bdeg_{n−1}` of the restriction.
    pub fn boundary_degree(&self, ell: &[usize]) -> Rational {
        debug_assert_eq!(self.sub.n(), self.n - 1);
        boundary_degree(&self.sub, &self.restrict(ell))
    }

    pub fn interior_degree(&self, ell: &[usize]) -> i64 {
        interior_degree(&self.sub, &self.restrict(ell))
    }
}

/// `bdeg_{n−1}(ℓ[F_{−k}])`.
pub fn face_boundary_degree(tri: &Triangulation, ell: &[usize], k: usize) -> Result<Rational> {
    Ok(FaceRestriction::new(tri, k)?.boundary_degree(ell))
}

/// Which boundary faces a degree sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    All,
    Facet(usize),
}

/// `Σ_{ℓ∼L} bdeg(ℓ)` (restricted to `region`), counting multiset
/// multiplicity. Computed face by face: a face's choices are enumerated
/// and weighted by the number of completions elsewhere.
pub fn induced_bdeg_sum(tri: &Triangulation, labeling: &Labeling, region: Region) -> Rational {
    let n = tri.n();
    let sizes: Vec<BigInt> = labeling
        .labels()
        .iter()
        .map(|s| BigInt::from(s.len()))
        .collect();
    let total: BigInt = sizes.iter().product();
    let mut num = BigInt::zero();
    let mut ell: Vec<usize> = labeling.labels().iter().map(|s| s[0]).collect();
    for face in tri.boundary_faces() {
        if let Region::Facet(k) = region {
            if face.facet != k {
                continue;
            }
        }
        let face_size: BigInt = face.vertices.iter().map(|&v| &sizes[v]).product();
        let mut face_sum = 0i64;
        let mut digits = vec![0usize; face.vertices.len()];
        loop {
            for (d, &v) in digits.iter().zip(&face.vertices) {
                ell[v] = labeling.get(v)[*d];
            }
            face_sum += face_numerator(tri, face.cell, face.opposite, &ell) as i64;
            let mut i = 0;
            loop {
                if i == digits.len() {
                    break;
                }
                digits[i] += 1;
                if digits[i] < labeling.get(face.vertices[i]).len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
        if face_sum != 0 {
            num += BigInt::from(face_sum) * (&total / &face_size);
        }
    }
    Rational::new(num, BigInt::from(n))
}

/// `true` when the rational is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
