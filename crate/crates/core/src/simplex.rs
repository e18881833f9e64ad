//! Faces of the partition simplex, the friend relation, the friend maps
//! `f_k` and the label permutations `π_{-k}`.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::cake::PartitionPoint;
use crate::error::{invalid, Result};
use crate::rational::Rational;

/// A face `F_J` of the simplex: the convex hull of the main vertices in `J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceIndex {
    n: usize,
    members: BTreeSet<usize>,
}

impl FaceIndex {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(invalid("a face needs at least one main vertex"));
        }
        if members.iter().any(|&j| j == 0 || j > n) {
            return Err(invalid(format!("face indices must lie in 1..={n}")));
        }
        Ok(Self { n, members })
    }

    /// `F_{-j}`, the facet where piece `j` is empty.
    pub fn opposite(n: usize, j: usize) -> Result<Self> {
        Self::new(n, (1..=n).filter(|&i| i != j))
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    /// True when every coordinate outside `J` is zero.
    pub fn contains(&self, x: &PartitionPoint) -> bool {
        x.lengths()
            .iter()
            .enumerate()
            .all(|(i, l)| self.members.contains(&(i + 1)) || l.is_zero())
    }
}

/// Indices (1-based) of the zero coordinates of `x`; `x` lies on `F_{[n]\J}`.
pub fn zero_face(x: &PartitionPoint) -> Vec<usize> {
    x.lengths()
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_zero())
        .map(|(i, _)| i + 1)
        .collect()
}

fn nonzero_sequence(x: &PartitionPoint) -> impl Iterator<Item = &Rational> {
    x.lengths().iter().filter(|l| !l.is_zero())
}

/// Two points are friends when their ordered nonzero coordinates agree,
/// i.e. they describe the same physical partition.
pub fn are_friends(x: &PartitionPoint, y: &PartitionPoint) -> bool {
    x.dim() == y.dim() && nonzero_sequence(x).eq(nonzero_sequence(y))
}

/// `f_k`: moves the (zero) k-th coordinate to the front, shifting
/// coordinates `1..k-1` one step right. The result lies on `F_{-1}`.
pub fn friend_to_f1(x: &PartitionPoint, k: usize) -> Result<PartitionPoint> {
    if k == 0 || k > x.dim() {
        return Err(invalid(format!("face index {k} outside 1..={}", x.dim())));
    }
    if !x.lengths()[k - 1].is_zero() {
        return Err(invalid(format!("coordinate {k} of {x} is not zero")));
    }
    let mut lengths = x.lengths().to_vec();
    lengths[..k].rotate_right(1);
    Ok(PartitionPoint::new_unchecked(lengths))
}

/// Inverse of [`friend_to_f1`]: moves the (zero) first coordinate to position `k`.
pub fn friend_from_f1(y: &PartitionPoint, k: usize) -> Result<PartitionPoint> {
    if k == 0 || k > y.dim() {
        return Err(invalid(format!("face index {k} outside 1..={}", y.dim())));
    }
    if !y.lengths()[0].is_zero() {
        return Err(invalid(format!("{y} is not on F_-1")));
    }
    let mut lengths = y.lengths().to_vec();
    lengths[..k].rotate_left(1);
    Ok(PartitionPoint::new_unchecked(lengths))
}

/// Composes `f_{i_1}, …, f_{i_z}` over the zero indices in ascending order,
/// yielding the friend whose zeros all sit in front.
pub fn canonical_friend(x: &PartitionPoint) -> PartitionPoint {
    zero_face(x).into_iter().fold(x.clone(), |y, k| {
        friend_to_f1(&y, k).expect("ascending zero indices stay zero")
    })
}

/// Every friend of `x` (including `x`), in lexicographic coordinate order.
pub fn friend_orbit(x: &PartitionPoint) -> Vec<PartitionPoint> {
    let n = x.dim();
    let seq: Vec<&Rational> = nonzero_sequence(x).collect();
    let mut out = Vec::new();
    let mut slots = Vec::with_capacity(seq.len());
    fn place(
        n: usize,
        seq: &[&Rational],
        start: usize,
        slots: &mut Vec<usize>,
        out: &mut Vec<PartitionPoint>,
    ) {
        if slots.len() == seq.len() {
            let mut lengths = vec![Rational::zero(); n];
            for (s, v) in slots.iter().zip(seq) {
                lengths[*s] = (*v).clone();
            }
            out.push(PartitionPoint::new_unchecked(lengths));
            return;
        }
        let remaining = seq.len() - slots.len();
        for pos in start..=n - remaining {
            slots.push(pos);
            place(n, seq, pos + 1, slots, out);
            slots.pop();
        }
    }
    place(n, &seq, 0, &mut slots, &mut out);
    out.sort();
    out
}

/// The label permutation `π_{-k}` on `[n]`:
/// `1 ↦ k` (the empty piece), `l ↦ l−1` for `1 < l ≤ k`, `l ↦ l` above `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelPermutation {
    n: usize,
    k: usize,
}

impl LabelPermutation {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(invalid(format!("permutation index {k} outside 1..={n}")));
        }
        Ok(Self { n, k })
    }

    pub fn apply(&self, l: usize) -> usize {
        debug_assert!((1..=self.n).contains(&l));
        if l == 1 {
            self.k
        } else if l <= self.k {
            l - 1
        } else {
            l
        }
    }

    pub fn invert(&self, l: usize) -> usize {
        if l == self.k {
            1
        } else if l < self.k {
            l + 1
        } else {
            l
        }
    }

    /// `+1` iff `k−1` is even: `π_{-k}` is a `k`-cycle.
    pub fn sign(&self) -> i32 {
        if (self.k - 1).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

fn check_labels(n: usize, labels: &[usize]) -> Result<()> {
    if labels.is_empty() {
        return Err(invalid("label set must be nonempty"));
    }
    if let Some(l) = labels.iter().find(|&&l| l == 0 || l > n) {
        return Err(invalid(format!("label {l} outside 1..={n}")));
    }
    Ok(())
}

/// Elementwise image of a label set or multiset under `π_{-k}` (sorted;
/// multiplicities kept).
pub fn apply_perm(n: usize, k: usize, labels: &[usize]) -> Result<Vec<usize>> {
    check_labels(n, labels)?;
    let p = LabelPermutation::new(n, k)?;
    let mut out: Vec<usize> = labels.iter().map(|&l| p.apply(l)).collect();
    out.sort_unstable();
    Ok(out)
}

pub fn apply_inverse_perm(n: usize, k: usize, labels: &[usize]) -> Result<Vec<usize>> {
    check_labels(n, labels)?;
    let p = LabelPermutation::new(n, k)?;
    let mut out: Vec<usize> = labels.iter().map(|&l| p.invert(l)).collect();
    out.sort_unstable();
    Ok(out)
}

/// Carries the labels of `canonical_friend(x)` back to `x` through
/// `π_{-i_1} ∘ … ∘ π_{-i_z}` over the zero indices of `x`.
pub fn transport_from_canonical(
    x: &PartitionPoint,
    canonical_labels: &[usize],
) -> Result<Vec<usize>> {
    let n = x.dim();
    zero_face(x)
        .into_iter()
        .rev()
        .try_fold(canonical_labels.to_vec(), |labels, k| {
            apply_perm(n, k, &labels)
        })
}

/// Sign of a permutation given as a sequence of distinct values.
pub fn permutation_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
