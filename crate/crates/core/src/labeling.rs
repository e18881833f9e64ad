//! Multi-valued labelings of triangulation vertices: agent labelings, the
//! combined labeling of an ownership assignment, consistency across friends,
//! induced single-valued labelings and label replacement.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cake::{preferred_pieces, Agent, PartitionPoint};
use crate::error::{invalid, Error, Result};
use crate::simplex::{apply_perm, canonical_friend, friend_to_f1, zero_face};
use crate::triangulation::{Ownership, Triangulation};

/// Default cap on the number of induced single-valued labelings enumerated.
pub const DEFAULT_INDUCED_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelMode {
    /// Label sets: no repeated labels at a vertex.
    Set,
    /// Label multisets, as produced by label replacement.
    Multiset,
}

/// Vertex index → nonempty label set or multiset over `1..=n`, each kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    n: usize,
    mode: LabelMode,
    labels: Vec<Vec<usize>>,
}

impl Labeling {
    pub fn new(n: usize, mode: LabelMode, labels: Vec<Vec<usize>>) -> Result<Self> {
        let mut labels = labels;
        for (v, set) in labels.iter_mut().enumerate() {
            if set.is_empty() {
                return Err(invalid(format!("vertex {v} has no label")));
            }
            if let Some(l) = set.iter().find(|&&l| l == 0 || l > n) {
                return Err(invalid(format!("vertex {v}: label {l} outside 1..={n}")));
            }
            set.sort_unstable();
            if mode == LabelMode::Set && set.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("vertex {v}: repeated label in set mode")));
            }
        }
        Ok(Self { n, mode, labels })
    }

    /// A single-valued labeling viewed as singleton sets.
    pub fn from_single(n: usize, labels: &[usize]) -> Result<Self> {
        Self::new(n, LabelMode::Set, labels.iter().map(|&l| vec![l]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> LabelMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, v: usize) -> &[usize] {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn as_single(&self) -> Option<Vec<usize>> {
        self.labels
            .iter()
            .map(|s| (s.len() == 1).then(|| s[0]))
            .collect()
    }

    pub fn to_multiset(&self) -> Self {
        Self {
            mode: LabelMode::Multiset,
            ..self.clone()
        }
    }

    /// Product of per-vertex cardinalities (saturating).
    pub fn induced_count(&self) -> u128 {
        self.labels
            .iter()
            .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128))
            .unwrap_or(u128::MAX)
    }

    /// One line per vertex: `index: l1,l2,…`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (v, set) in self.labels.iter().enumerate() {
            let parts: Vec<String> = set.iter().map(|l| l.to_string()).collect();
            let _ = writeln!(out, "{v}: {}", parts.join(","));
        }
        out
    }

    pub fn parse_dump(n: usize, mode: LabelMode, text: &str) -> Result<Self> {
        let mut labels = Vec::new();
        for (line_no, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let (idx, rest) = line
                .split_once(':')
                .ok_or_else(|| invalid(format!("line {line_no}: missing ':'")))?;
            if idx.trim().parse::<usize>().ok() != Some(line_no) {
                return Err(invalid(format!(
                    "line {line_no}: vertices must be listed in order"
                )));
            }
            let set = rest
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| invalid(format!("bad label {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            labels.push(set);
        }
        Self::new(n, mode, labels)
    }
}

/// `L_i(x)` = the pieces `agent` prefers at every vertex.
pub fn agent_labeling(tri: &Triangulation, agent: &Agent) -> Result<Labeling> {
    let labels = tri
        .vertices()
        .par_iter()
        .map(|x| preferred_pieces(agent, x))
        .collect::<Result<Vec<_>>>()?;
    Labeling::new(tri.n(), LabelMode::Set, labels)
}

/// `L^W(x) = L_{W(x)}(x)`.
pub fn combine(
    tri: &Triangulation,
    ownership: &Ownership,
    labelings: &[Labeling],
) -> Result<Labeling> {
    if labelings.len() != tri.n() {
        return Err(invalid(format!(
            "need {} labelings, got {}",
            tri.n(),
            labelings.len()
        )));
    }
    if labelings.iter().any(|l| l.len() != tri.vertices().len()) {
        return Err(invalid("labeling size does not match the triangulation"));
    }
    let labels = (0..tri.vertices().len())
        .map(|v| labelings[ownership.owner(v)].get(v).to_vec())
        .collect();
    Labeling::new(tri.n(), labelings[0].mode(), labels)
}

/// The combined labeling, querying only each vertex's owner. Returns the
/// labeling and the number of oracle calls made.
pub fn owner_labeling(
    tri: &Triangulation,
    ownership: &Ownership,
    agents: &[Agent],
) -> Result<(Labeling, u64)> {
    if agents.len() != tri.n() {
        return Err(invalid(format!(
            "need {} agents, got {}",
            tri.n(),
            agents.len()
        )));
    }
    let labels = tri
        .vertices()
        .par_iter()
        .enumerate()
        .map(|(v, x)| preferred_pieces(&agents[ownership.owner(v)], x))
        .collect::<Result<Vec<_>>>()?;
    let calls = labels.len() as u64;
    Ok((Labeling::new(tri.n(), LabelMode::Set, labels)?, calls))
}

/// A failed consistency requirement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `f_k(x)` is not a vertex: the triangulation is not friendly.
    MissingFriend { vertex: usize, k: usize },
    /// `L(x) ≠ π_{−k}(L(f_k(x)))`.
    Mismatch {
        vertex: usize,
        friend: usize,
        k: usize,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    /// `L(x) ∩ J` is neither empty nor all of `J`.
    PartialZeros {
        vertex: usize,
        zeros: Vec<usize>,
        labels: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub violations: Vec<Violation>,
}

/// Checks `L(x) = π_{−k}(L(f_k(x)))` for every boundary vertex and every
/// zero coordinate `k`, and the all-or-nothing rule on zero coordinates.
pub fn check_consistent(labeling: &Labeling, tri: &Triangulation) -> ConsistencyReport {
    let n = tri.n();
    let mut violations = Vec::new();
    for (v, x) in tri.vertices().iter().enumerate() {
        let zeros = zero_face(x);
        if zeros.is_empty() {
            continue;
        }
        let labels = labeling.get(v);
        for &k in &zeros {
            let friend = friend_to_f1(x, k).expect("k is a zero coordinate");
            let Some(w) = tri.find_vertex(&friend) else {
                violations.push(Violation::MissingFriend { vertex: v, k });
                continue;
            };
            let expected = apply_perm(n, k, labeling.get(w)).expect("labels are validated");
            if expected != labels {
                violations.push(Violation::Mismatch {
                    vertex: v,
                    friend: w,
                    k,
                    expected,
                    found: labels.to_vec(),
                });
            }
        }
        if zeros.len() >= 2 {
            let hit = zeros.iter().filter(|z| labels.contains(z)).count();
            if hit != 0 && hit != zeros.len() {
                violations.push(Violation::PartialZeros {
                    vertex: v,
                    zeros,
                    labels: labels.to_vec(),
                });
            }
        }
    }
    ConsistencyReport {
        consistent: violations.is_empty(),
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    /// No zero coordinate.
    Interior,
    /// Avoids every empty piece.
    Positive,
    /// Contains every empty piece.
    Negative,
}

pub fn classify_vertex(labeling: &Labeling, tri: &Triangulation, v: usize) -> Result<VertexClass> {
    let zeros = zero_face(tri.vertex(v));
    if zeros.is_empty() {
        return Ok(VertexClass::Interior);
    }
    let labels = labeling.get(v);
    let hit = zeros.iter().filter(|z| labels.contains(z)).count();
    if hit == 0 {
        Ok(VertexClass::Positive)
    } else if hit == zeros.len() {
        Ok(VertexClass::Negative)
    } else {
        Err(Error::Inconsistent(format!(
            "vertex {v} has labels {labels:?} covering only part of its empty pieces {zeros:?}"
        )))
    }
}

/// Drops as many labels as consistency allows: positive and interior
/// vertices keep their smallest label, negative vertices keep exactly their
/// empty pieces. The result stays consistent when the input is.
pub fn reduce_consistently(labeling: &Labeling, tri: &Triangulation) -> Result<Labeling> {
    let labels = (0..tri.vertices().len())
        .map(|v| {
            Ok(match classify_vertex(labeling, tri, v)? {
                VertexClass::Interior | VertexClass::Positive => vec![labeling.get(v)[0]],
                VertexClass::Negative => zero_face(tri.vertex(v)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Labeling::new(labeling.n(), labeling.mode(), labels)
}

/// Stateless index → choice bijection over all `ℓ ∼ L`, counting multiset
/// multiplicity; disjoint index ranges can be processed independently.
#[derive(Debug, Clone)]
pub struct InducedLabelings<'a> {
    labeling: &'a Labeling,
    /// Vertices with more than one entry.
    multi: Vec<usize>,
    count: u64,
    total: u128,
}

pub fn induced_labelings(labeling: &Labeling, cap: u64) -> Result<InducedLabelings<'_>> {
    let count = labeling.induced_count();
    if count > cap as u128 {
        return Err(Error::ResourceCap {
            what: "induced labelings",
            needed: if count == u128::MAX {
                "overflow".into()
            } else {
                count.to_string()
            },
            cap: cap.to_string(),
        });
    }
    Ok(truncated_induced_labelings(labeling, cap))
}

/// The first `limit` induced labelings in enumeration order (all of them
/// when there are fewer); [`InducedLabelings::total`] keeps the full count.
pub fn truncated_induced_labelings(labeling: &Labeling, limit: u64) -> InducedLabelings<'_> {
    let total = labeling.induced_count();
    let multi = (0..labeling.len())
        .filter(|&v| labeling.get(v).len() > 1)
        .collect();
    InducedLabelings {
        labeling,
        multi,
        count: total.min(limit as u128) as u64,
        total,
    }
}

impl InducedLabelings<'_> {
    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Size of the untruncated family (saturating).
    pub fn total(&self) -> u128 {
        self.total
    }

    /// The `index`-th induced labeling (mixed radix over the multi-valued vertices).
    pub fn get(&self, index: u64) -> Vec<usize> {
        assert!(index < self.count, "induced labeling index out of range");
        let mut out: Vec<usize> = self.labeling.labels().iter().map(|s| s[0]).collect();
        let mut rest = index;
        for &v in &self.multi {
            let set = self.labeling.get(v);
            let r = set.len() as u64;
            out[v] = set[(rest % r) as usize];
            rest /= r;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.count).map(move |i| self.get(i))
    }
}

/// `L_{n→j}`: every occurrence of `n` becomes `j`, multiplicities kept.
pub fn replace_label(labeling: &Labeling, j: usize) -> Result<Labeling> {
    if labeling.mode() != LabelMode::Multiset {
        return Err(invalid("label replacement requires a multiset labeling"));
    }
    let n = labeling.n();
    if j == 0 || j > n {
        return Err(invalid(format!("replacement label {j} outside 1..={n}")));
    }
    let labels = labeling
        .labels()
        .iter()
        .map(|s| s.iter().map(|&l| if l == n { j } else { l }).collect())
        .collect();
    Labeling::new(n, LabelMode::Multiset, labels)
}

/// `ℓ_{n→j}` for a single-valued labeling.
pub fn replace_single(labels: &[usize], n: usize, j: usize) -> Vec<usize> {
    labels.iter().map(|&l| if l == n { j } else { l }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

/// Knobs for [`generate_consistent_labeling`].
#[derive(Debug, Clone, Copy)]
pub struct GeneratorOptions {
    /// Force the class of the main-vertex orbit.
    pub main_vertices: Option<Sign>,
    /// Chance that a boundary orbit is negative.
    pub negative_probability: f64,
    /// Chance that a representative gets one extra label.
    pub extra_label_probability: f64,
    /// Orbits with more empty pieces than this are always positive.
    pub max_negative_zeros: usize,
    /// Bound on the product of label-set sizes; orbits fall back to single
    /// positive labels when a choice would exceed it.
    pub max_induced: u64,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        Self {
            main_vertices: None,
            negative_probability: 0.5,
            extra_label_probability: 0.0,
            max_negative_zeros: usize::MAX,
            max_induced: DEFAULT_INDUCED_CAP,
        }
    }
}

/// Places canonical labels on a friend `x`: a label `l ≤ z` names an empty
/// piece (the canonical friend has its `z` zeros first), any other label the
/// `(l−z)`-th nonempty piece. Piece order is preserved among friends.
fn transport_physical(x: &PartitionPoint, z: usize, canonical: &[usize]) -> Vec<usize> {
    let zeros = zero_face(x);
    let nonzero: Vec<usize> = (1..=x.dim()).filter(|i| !zeros.contains(i)).collect();
    let mut out: Vec<usize> = Vec::new();
    if canonical.iter().any(|&l| l <= z) {
        out.extend(&zeros);
    }
    out.extend(
        canonical
            .iter()
            .filter(|&&l| l > z)
            .map(|&l| nonzero[l - z - 1]),
    );
    out.sort_unstable();
    out
}

/// Random consistent labeling: interior vertices get a uniform label, one
/// representative per friend orbit gets a random label set obeying the
/// all-or-nothing rule on empty pieces, and the orbit inherits it.
pub fn generate_consistent_labeling(
    tri: &Triangulation,
    n: usize,
    seed: u64,
    options: &GeneratorOptions,
) -> Result<Labeling> {
    if n != tri.n() {
        return Err(invalid(format!(
            "n = {n} but the triangulation has dimension {}",
            tri.n()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut canonical: HashMap<PartitionPoint, (usize, Vec<usize>)> = HashMap::new();
    let mut budget: u128 = 1;
    let mut labels = Vec::with_capacity(tri.vertices().len());
    for (v, x) in tri.vertices().iter().enumerate() {
        let zeros = zero_face(x);
        if zeros.is_empty() {
            labels.push(vec![rng.gen_range(1..=n)]);
            continue;
        }
        let canon = canonical_friend(x);
        if !canonical.contains_key(&canon) {
            let z = zeros.len();
            let orbit = tri.friends_of(v).len() as u32;
            let nonempty: Vec<usize> = (z + 1..=n).collect();
            let is_main = z == n - 1;
            let negative = match (is_main, options.main_vertices) {
                (true, Some(sign)) => sign == Sign::Negative,
                _ => rng.gen_bool(options.negative_probability) && z <= options.max_negative_zeros,
            };
            let extra = rng.gen_bool(options.extra_label_probability);
            let mut set: Vec<usize> = if negative {
                let mut s: Vec<usize> = (1..=z).collect();
                if extra {
                    s.push(*nonempty.choose(&mut rng).expect("some piece is nonempty"));
                }
                s
            } else {
                let mut pool = nonempty.clone();
                pool.shuffle(&mut rng);
                pool.truncate(if extra { 2 } else { 1 });
                pool
            };
            let fits = |s: &[usize], budget: u128| {
                (s.len() as u128)
                    .checked_pow(orbit)
                    .and_then(|f| f.checked_mul(budget))
                    .is_some_and(|p| p <= options.max_induced as u128)
            };
            if !fits(&set, budget) {
                let forced_negative = is_main && options.main_vertices == Some(Sign::Negative);
                set = if forced_negative {
                    (1..=z).collect()
                } else {
                    vec![nonempty[0]]
                };
                if !fits(&set, budget) {
                    return Err(Error::ResourceCap {
                        what: "induced labelings of the generated labeling",
                        needed: format!("> {}", options.max_induced),
                        cap: options.max_induced.to_string(),
                    });
                }
            }
            set.sort_unstable();
            budget *= (set.len() as u128).pow(orbit);
            canonical.insert(canon.clone(), (z, set));
        }
        let (z, set) = &canonical[&canon];
        labels.push(transport_physical(x, *z, set));
    }
    Labeling::new(n, LabelMode::Set, labels)
}

/// Uniform random single-valued labeling.
pub fn random_single_labeling<R: Rng>(tri: &Triangulation, rng: &mut R) -> Vec<usize> {
    (0..tri.vertices().len())
        .map(|_| rng.gen_range(1..=tri.n()))
        .collect()
}

/// Random labeling obeying the Sperner boundary condition: each vertex is
/// labeled by one of its nonzero coordinates.
pub fn random_sperner_labeling<R: Rng>(tri: &Triangulation, rng: &mut R) -> Vec<usize> {
    tri.vertices()
        .iter()
        .map(|x| {
            let zeros = zero_face(x);
            let support: Vec<usize> = (1..=x.dim()).filter(|i| !zeros.contains(i)).collect();
            *support
                .choose(rng)
                .expect("points have a nonzero coordinate")
        })
        .collect()
}

/// Random multiset labeling: singletons everywhere except `multi` distinct
/// vertices which get two (possibly equal) labels.
pub fn random_multiset_labeling<R: Rng>(
    tri: &Triangulation,
    multi: usize,
    rng: &mut R,
) -> Result<Labeling> {
    let n = tri.n();
    let nv = tri.vertices().len();
    let mut labels: Vec<Vec<usize>> = (0..nv).map(|_| vec![rng.gen_range(1..=n)]).collect();
    let picks = rand::seq::index::sample(rng, nv, multi.min(nv));
    for v in picks.iter() {
        labels[v].push(rng.gen_range(1..=n));
    }
    Labeling::new(n, LabelMode::Multiset, labels)
}
