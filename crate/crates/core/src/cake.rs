//! The cake `[0,1]`, additive and selective agents, partitions and envy.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Deserialize;

use crate::error::{invalid, Error, Result};
use crate::rational::{self, int, Rational};

/// Sorted, duplicate-free set of 1-based piece labels.
pub type LabelSet = Vec<usize>;

/// Piecewise-constant signed value density on `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueDensity {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
    /// Antiderivative at each breakpoint.
    prefix: Vec<Rational>,
}

impl ValueDensity {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(invalid("a density needs at least the breakpoints 0 and 1"));
        }
        if !breakpoints[0].is_zero() || breakpoints[breakpoints.len() - 1] != int(1) {
            return Err(invalid("breakpoints must start at 0 and end at 1"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("breakpoints must be strictly ascending"));
        }
        if values.len() != breakpoints.len() - 1 {
            return Err(invalid(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                values.len()
            )));
        }
        let mut prefix = Vec::with_capacity(breakpoints.len());
        prefix.push(Rational::zero());
        for (w, v) in breakpoints.windows(2).zip(&values) {
            let last = prefix.last().unwrap().clone();
            prefix.push(last + (&w[1] - &w[0]) * v);
        }
        Ok(Self {
            breakpoints,
            values,
            prefix,
        })
    }

    /// Builds a density from per-slice totals: each value is the worth of the
    /// whole slice, so the stored density is `value / width`.
    pub fn from_slice_values(
        breakpoints: Vec<Rational>,
        slice_values: Vec<Rational>,
    ) -> Result<Self> {
        if slice_values.len() + 1 != breakpoints.len() {
            return Err(invalid(
                "slice values must number one less than breakpoints",
            ));
        }
        let densities = breakpoints
            .windows(2)
            .zip(&slice_values)
            .map(|(w, v)| {
                let width = &w[1] - &w[0];
                if width.is_zero() {
                    Err(invalid("zero-width slice"))
                } else {
                    Ok(v / width)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(breakpoints, densities)
    }

    /// Constant density `value` on the whole cake.
    pub fn uniform(value: Rational) -> Self {
        Self::new(vec![int(0), int(1)], vec![value]).expect("uniform density is valid")
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `∫_0^x v`, for `x` in `[0,1]`.
    pub fn antiderivative(&self, x: &Rational) -> Rational {
        // index of the last breakpoint <= x
        let idx = self
            .breakpoints
            .partition_point(|b| b <= x)
            .saturating_sub(1);
        if idx >= self.values.len() {
            return self.prefix[self.prefix.len() - 1].clone();
        }
        &self.prefix[idx] + (x - &self.breakpoints[idx]) * &self.values[idx]
    }

    pub fn total(&self) -> Rational {
        self.prefix[self.prefix.len() - 1].clone()
    }

    pub fn max_abs_density(&self) -> Rational {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_default()
    }

    /// Exact value of the interval `[a,b]`.
    pub fn value_of(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        if a > b || a.is_negative() || *b > int(1) {
            return Err(invalid(format!(
                "interval [{}, {}] is not inside [0,1]",
                rational::format(a),
                rational::format(b)
            )));
        }
        Ok(self.antiderivative(b) - self.antiderivative(a))
    }

    pub fn interval_value(&self, piece: &Interval) -> Rational {
        self.antiderivative(&piece.end) - self.antiderivative(&piece.start)
    }

    /// Leftmost `z` with `∫_0^z v = target`, if one exists.
    pub fn first_point_with_prefix(&self, target: &Rational) -> Option<Rational> {
        if self.prefix[0] == *target {
            return Some(Rational::zero());
        }
        for i in 0..self.values.len() {
            let (lo, hi) = (&self.prefix[i], &self.prefix[i + 1]);
            let crosses = (lo <= target && target <= hi) || (hi <= target && target <= lo);
            if crosses && lo != hi {
                return Some(&self.breakpoints[i] + (target - lo) / &self.values[i]);
            }
            if crosses && lo == target {
                return Some(self.breakpoints[i].clone());
            }
        }
        None
    }
}

/// A closed interval `[start, end]`; `start == end` is an empty piece.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub start: Rational,
    pub end: Rational,
}

impl Interval {
    pub fn new(start: Rational, end: Rational) -> Self {
        Self { start, end }
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn length(&self) -> Rational {
        &self.end - &self.start
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            rational::format(&self.start),
            rational::format(&self.end)
        )
    }
}

/// A point of the simplex of partitions: piece lengths `l_1..l_n`, summing to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionPoint {
    lengths: Vec<Rational>,
}

impl PartitionPoint {
    pub fn new(lengths: Vec<Rational>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(invalid("a partition needs at least one piece"));
        }
        if lengths.iter().any(|l| l.is_negative()) {
            return Err(invalid("piece lengths must be nonnegative"));
        }
        let sum: Rational = lengths.iter().sum();
        if sum != int(1) {
            return Err(invalid(format!(
                "piece lengths sum to {}, not 1",
                rational::format(&sum)
            )));
        }
        Ok(Self { lengths })
    }

    /// Skips validation; callers guarantee the simplex invariant.
    pub(crate) fn new_unchecked(lengths: Vec<Rational>) -> Self {
        Self { lengths }
    }

    /// Main vertex `F_j` (1-based).
    pub fn main_vertex(n: usize, j: usize) -> Self {
        let mut lengths = vec![Rational::zero(); n];
        lengths[j - 1] = int(1);
        Self { lengths }
    }

    pub fn barycenter(points: &[&PartitionPoint]) -> Self {
        let n = points[0].dim();
        let k = int(points.len() as i64);
        let lengths = (0..n)
            .map(|j| points.iter().map(|p| &p.lengths[j]).sum::<Rational>() / &k)
            .collect();
        Self { lengths }
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn into_lengths(self) -> Vec<Rational> {
        self.lengths
    }

    /// Squared euclidean distance in barycentric coordinates.
    pub fn dist2(&self, other: &PartitionPoint) -> Rational {
        self.lengths
            .iter()
            .zip(&other.lengths)
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .sum()
    }
}

impl fmt::Display for PartitionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(rational::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Interval `j` is `[l_1+…+l_{j-1}, l_1+…+l_j]`.
pub fn partition_from_point(x: &PartitionPoint) -> Vec<Interval> {
    let mut start = Rational::zero();
    x.lengths
        .iter()
        .map(|l| {
            let end = &start + l;
            let piece = Interval::new(start.clone(), end.clone());
            start = end;
            piece
        })
        .collect()
}

/// A selective agent: given the ordered pieces of a partition, returns the
/// nonempty set of preferred piece labels (1-based).
///
/// Implementations must answer from the intervals alone and are assumed to
/// be continuous: a piece preferred along a convergent sequence of
/// partitions is preferred at the limit. That assumption cannot be verified
/// from finitely many calls; [`closed_preference_check`] only probes it.
pub trait PreferenceOracle: Send + Sync {
    fn preferred(&self, pieces: &[Interval]) -> Vec<usize>;
}

impl<F> PreferenceOracle for F
where
    F: Fn(&[Interval]) -> Vec<usize> + Send + Sync,
{
    fn preferred(&self, pieces: &[Interval]) -> Vec<usize> {
        self(pieces)
    }
}

#[derive(Clone)]
pub enum Agent {
    Additive(ValueDensity),
    Selective(Arc<dyn PreferenceOracle>),
}

impl fmt::Debug for Agent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Agent::Additive(v) => f.debug_tuple("Additive").field(v).finish(),
            Agent::Selective(_) => f.write_str("Selective(..)"),
        }
    }
}

impl From<ValueDensity> for Agent {
    fn from(v: ValueDensity) -> Self {
        Agent::Additive(v)
    }
}

/// Labels of the pieces an additive agent values most, ties kept.
pub fn argmax_pieces(density: &ValueDensity, pieces: &[Interval]) -> LabelSet {
    let values: Vec<Rational> = pieces.iter().map(|p| density.interval_value(p)).collect();
    let best = values.iter().max().expect("at least one piece").clone();
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == best)
        .map(|(j, _)| j + 1)
        .collect()
}

/// The set of pieces `agent` prefers in the partition `x`.
pub fn preferred_pieces(agent: &Agent, x: &PartitionPoint) -> Result<LabelSet> {
    let pieces = partition_from_point(x);
    match agent {
        Agent::Additive(d) => Ok(argmax_pieces(d, &pieces)),
        Agent::Selective(oracle) => {
            let mut labels = oracle.preferred(&pieces);
            labels.sort_unstable();
            labels.dedup();
            if labels.is_empty() {
                return Err(Error::OracleContract(format!(
                    "empty preference at partition {x}"
                )));
            }
            if let Some(bad) = labels.iter().find(|&&l| l == 0 || l > pieces.len()) {
                return Err(Error::OracleContract(format!(
                    "label {bad} outside 1..={} at partition {x}",
                    pieces.len()
                )));
            }
            Ok(labels)
        }
    }
}

/// Probes the closed-graph continuity contract: every label preferred at all
/// points of `approach` must also be preferred at `limit`.
pub fn closed_preference_check(
    agent: &Agent,
    limit: &PartitionPoint,
    approach: &[PartitionPoint],
) -> Result<bool> {
    let at_limit = preferred_pieces(agent, limit)?;
    let mut persistent: Option<LabelSet> = None;
    for p in approach {
        let here = preferred_pieces(agent, p)?;
        persistent = Some(match persistent {
            None => here,
            Some(prev) => prev.into_iter().filter(|l| here.contains(l)).collect(),
        });
    }
    Ok(persistent
        .unwrap_or_default()
        .iter()
        .all(|l| at_limit.contains(l)))
}

/// Cut positions plus the piece each agent receives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    cuts: Vec<Rational>,
    /// `assignment[i]` is the 1-based piece label of agent `i`.
    assignment: Vec<usize>,
}

impl Division {
    pub fn new(cuts: Vec<Rational>, assignment: Vec<usize>) -> Result<Self> {
        let n = assignment.len();
        if cuts.len() + 1 != n {
            return Err(invalid(format!(
                "{n} agents need {} cuts, got {}",
                n.saturating_sub(1),
                cuts.len()
            )));
        }
        if cuts.windows(2).any(|w| w[0] > w[1])
            || cuts.iter().any(|c| c.is_negative() || *c > int(1))
        {
            return Err(invalid("cuts must be ascending inside [0,1]"));
        }
        let mut seen = vec![false; n];
        for &p in &assignment {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(invalid("assignment must be a permutation of 1..=n"));
            }
        }
        Ok(Self { cuts, assignment })
    }

    pub fn from_point(x: &PartitionPoint, assignment: Vec<usize>) -> Result<Self> {
        let pieces = partition_from_point(x);
        let cuts = pieces[..pieces.len() - 1]
            .iter()
            .map(|p| p.end.clone())
            .collect();
        Self::new(cuts, assignment)
    }

    pub fn cuts(&self) -> &[Rational] {
        &self.cuts
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn pieces(&self) -> Vec<Interval> {
        let mut bounds = Vec::with_capacity(self.cuts.len() + 2);
        bounds.push(Rational::zero());
        bounds.extend(self.cuts.iter().cloned());
        bounds.push(int(1));
        bounds
            .windows(2)
            .map(|w| Interval::new(w[0].clone(), w[1].clone()))
            .collect()
    }

    pub fn piece_of(&self, agent: usize) -> Interval {
        self.pieces()[self.assignment[agent] - 1].clone()
    }
}

/// `max_j V_i(X_j) − V_i(X_i)` over the other pieces; 0 when alone.
pub fn agent_envy(d: &Division, agents: &[ValueDensity], i: usize) -> Rational {
    let pieces = d.pieces();
    let own = agents[i].interval_value(&pieces[d.assignment[i] - 1]);
    pieces
        .iter()
        .enumerate()
        .filter(|(j, _)| j + 1 != d.assignment[i])
        .map(|(_, p)| agents[i].interval_value(p) - &own)
        .max()
        .unwrap_or_default()
}

/// Largest envy any agent feels toward any other piece; the division is
/// envy-free iff this is `<= 0`.
pub fn max_envy(d: &Division, agents: &[ValueDensity]) -> Result<Rational> {
    if agents.len() != d.assignment.len() {
        return Err(invalid(format!(
            "division has {} pieces but {} agents were given",
            d.assignment.len(),
            agents.len()
        )));
    }
    Ok((0..agents.len())
        .map(|i| agent_envy(d, agents, i))
        .max()
        .unwrap_or_default())
}

/// Cut-and-choose: agent 1 cuts where both sides are equal in its eyes,
/// agent 2 picks. The cut is the exact root of the piecewise-linear
/// function `2·∫_0^z v_1 − V_1(cake)`, located by bisection over the
/// breakpoints and solved exactly on the final segment.
pub fn divide_two_agents(
    cutter: &ValueDensity,
    chooser: &ValueDensity,
    tol: &Rational,
) -> Result<Division> {
    if !tol.is_positive() {
        return Err(invalid("tolerance must be positive"));
    }
    let total = cutter.total();
    let g = |x: &Rational| int(2) * cutter.antiderivative(x) - &total;
    let bps = cutter.breakpoints();
    // g(bps[lo]) and g(bps[hi]) have opposite (weak) signs throughout.
    let (mut lo, mut hi) = (0usize, bps.len() - 1);
    let lo_sign = rational::sign(&g(&bps[lo]));
    let cut = if lo_sign == 0 {
        bps[0].clone()
    } else {
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let s = rational::sign(&g(&bps[mid]));
            if s == 0 {
                lo = mid;
                hi = mid;
                break;
            }
            if s == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if lo == hi {
            bps[lo].clone()
        } else {
            // g is linear on [bps[lo], bps[hi]] with slope 2·values[lo].
            let g_lo = g(&bps[lo]);
            let slope = int(2) * &cutter.values()[lo];
            &bps[lo] - g_lo / slope
        }
    };
    let residual = g(&cut);
    debug_assert!(residual.abs() <= *tol);
    let left = Interval::new(int(0), cut.clone());
    let right = Interval::new(cut.clone(), int(1));
    let assignment = if chooser.interval_value(&left) >= chooser.interval_value(&right) {
        vec![2, 1]
    } else {
        vec![1, 2]
    };
    Division::new(vec![cut], assignment)
}

#[derive(Debug, Deserialize)]
struct ProfileDoc {
    agents: Vec<AgentDoc>,
    #[serde(default)]
    encoding: Option<String>,
}

#[derive(Debug, Deserialize)]
struct AgentDoc {
    #[serde(rename = "type")]
    kind: String,
    breakpoints: Vec<String>,
    values: Vec<String>,
    #[serde(default)]
    encoding: Option<String>,
}

/// Parses an agent profile document:
/// `{"agents":[{"type":"piecewise_constant","breakpoints":[..],"values":[..]}]}`.
/// Values are densities unless `"encoding":"slice_values"` is given (per
/// agent or at the top level), in which case they are per-slice totals.
pub fn load_profile(json: &str) -> Result<Vec<ValueDensity>> {
    let doc: ProfileDoc = serde_json::from_str(json).map_err(|e| Error::Profile(e.to_string()))?;
    if doc.agents.is_empty() {
        return Err(Error::Profile("no agents listed".into()));
    }
    doc.agents
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if a.kind != "piecewise_constant" {
                return Err(Error::Profile(format!(
                    "agent {i}: unsupported type {:?}",
                    a.kind
                )));
            }
            let parse_all = |v: &[String]| -> Result<Vec<Rational>> {
                v.iter()
                    .map(|s| {
                        rational::parse(s).map_err(|e| Error::Profile(format!("agent {i}: {e}")))
                    })
                    .collect()
            };
            let bps = parse_all(&a.breakpoints)?;
            let vals = parse_all(&a.values)?;
            let encoding = a
                .encoding
                .as_deref()
                .or(doc.encoding.as_deref())
                .unwrap_or("density");
            let built = match encoding {
                "density" => ValueDensity::new(bps, vals),
                "slice_values" => ValueDensity::from_slice_values(bps, vals),
                other => {
                    return Err(Error::Profile(format!(
                        "agent {i}: unknown encoding {other:?}"
                    )))
                }
            };
            built.map_err(|e| Error::Profile(format!("agent {i}: {e}")))
        })
        .collect()
}

/// The three agents of the four-slice counterexample table (slice values
/// −1,2,2,−6 / 1,−2,2,−4 / 3,−2,−2,−2), each worth −3 in total.
pub fn counterexample_agents() -> Vec<ValueDensity> {
    let quarters: Vec<Rational> = (0..=4).map(|k| rational::ratio(k, 4)).collect();
    [[-1, 2, 2, -6], [1, -2, 2, -4], [3, -2, -2, -2]]
        .iter()
        .map(|row| {
            ValueDensity::from_slice_values(quarters.clone(), row.iter().map(|&v| int(v)).collect())
                .expect("fixture is well formed")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn pt(v: &[(i64, i64)]) -> PartitionPoint {
        PartitionPoint::new(v.iter().map(|&(a, b)| ratio(a, b)).collect()).unwrap()
    }

    #[test]
    fn value_of_counterexample_rows() {
        let [alice, bob, _carl]: [ValueDensity; 3] = counterexample_agents().try_into().unwrap();
        assert_eq!(alice.value_of(&int(0), &int(1)).unwrap(), int(-3));
        assert_eq!(bob.value_of(&int(0), &ratio(1, 2)).unwrap(), int(-1));
        assert_eq!(alice.value_of(&ratio(1, 3), &ratio(1, 3)).unwrap(), int(0));
    }

    #[test]
    fn value_of_rejects_bad_intervals() {
        let d = ValueDensity::uniform(int(1));
        assert!(d.value_of(&ratio(1, 2), &ratio(1, 4)).is_err());
        assert!(d.value_of(&int(-1), &ratio(1, 4)).is_err());
        assert!(d.value_of(&int(0), &ratio(5, 4)).is_err());
    }

    #[test]
    fn density_validation() {
        assert!(ValueDensity::new(vec![int(0), ratio(1, 2)], vec![int(1)]).is_err());
        assert!(ValueDensity::new(
            vec![int(0), ratio(1, 2), ratio(1, 2), int(1)],
            vec![int(1); 3]
        )
        .is_err());
        assert!(ValueDensity::new(vec![int(0), int(1)], vec![int(1), int(2)]).is_err());
    }

    #[test]
    fn partitions_from_points() {
        let p = partition_from_point(&pt(&[(1, 3), (1, 3), (1, 3)]));
        assert_eq!(p[1], Interval::new(ratio(1, 3), ratio(2, 3)));
        let p = partition_from_point(&pt(&[(0, 1), (0, 1), (1, 1)]));
        assert!(p[0].is_empty() && p[1].is_empty());
        assert_eq!(p[2], Interval::new(int(0), int(1)));
        let p = partition_from_point(&pt(&[(1, 5), (4, 5), (0, 1)]));
        assert_eq!(p[2], Interval::new(int(1), int(1)));
        assert!(PartitionPoint::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(PartitionPoint::new(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
    }

    #[test]
    fn preferred_pieces_examples() {
        let alice = Agent::from(counterexample_agents().remove(0));
        assert_eq!(
            preferred_pieces(&alice, &PartitionPoint::main_vertex(3, 1)).unwrap(),
            vec![2, 3]
        );
        let good = Agent::from(ValueDensity::uniform(int(1)));
        assert_eq!(
            preferred_pieces(&good, &PartitionPoint::main_vertex(3, 1)).unwrap(),
            vec![1]
        );
        assert_eq!(
            preferred_pieces(&good, &pt(&[(1, 2), (1, 2), (0, 1)])).unwrap(),
            vec![1, 2]
        );
    }

    #[test]
    fn oracle_contract_violations() {
        let empty: Arc<dyn PreferenceOracle> = Arc::new(|_: &[Interval]| Vec::new());
        let err = preferred_pieces(&Agent::Selective(empty), &PartitionPoint::main_vertex(3, 1));
        assert!(matches!(err, Err(Error::OracleContract(_))));
        let out_of_range: Arc<dyn PreferenceOracle> = Arc::new(|_: &[Interval]| vec![4]);
        let err = preferred_pieces(
            &Agent::Selective(out_of_range),
            &PartitionPoint::main_vertex(3, 1),
        );
        assert!(matches!(err, Err(Error::OracleContract(_))));
    }

    #[test]
    fn oracle_longest_piece_is_closed() {
        // prefers the longest pieces; closed under limits
        let longest: Arc<dyn PreferenceOracle> = Arc::new(|p: &[Interval]| {
            let best = p.iter().map(|i| i.length()).max().unwrap();
            (1..=p.len())
                .filter(|&j| p[j - 1].length() == best)
                .collect()
        });
        let agent = Agent::Selective(longest);
        let limit = pt(&[(1, 2), (1, 2), (0, 1)]);
        let approach: Vec<_> = (3..8)
            .map(|k| {
                let e = ratio(1, 1 << k);
                PartitionPoint::new(vec![ratio(1, 2) + &e, ratio(1, 2) - &e, int(0)]).unwrap()
            })
            .collect();
        assert!(closed_preference_check(&agent, &limit, &approach).unwrap());
    }

    #[test]
    fn max_envy_examples() {
        let uniform = vec![ValueDensity::uniform(int(1)); 2];
        let d = Division::new(vec![ratio(1, 2)], vec![1, 2]).unwrap();
        assert_eq!(max_envy(&d, &uniform).unwrap(), int(0));

        let agents = counterexample_agents();
        let d = Division::new(vec![ratio(1, 4), ratio(5, 8)], vec![1, 2, 3]).unwrap();
        assert_eq!(agent_envy(&d, &agents, 1), int(2));
        assert!(max_envy(&d, &agents).unwrap() >= int(2));

        let single = vec![ValueDensity::uniform(int(-1))];
        let d = Division::new(vec![], vec![1]).unwrap();
        assert_eq!(max_envy(&d, &single).unwrap(), int(0));
    }

    #[test]
    fn division_validation() {
        assert!(Division::new(vec![ratio(1, 2)], vec![1, 1]).is_err());
        assert!(Division::new(vec![ratio(3, 4), ratio(1, 4)], vec![1, 2, 3]).is_err());
        assert!(Division::new(vec![], vec![1, 2]).is_err());
    }

    #[test]
    fn cut_and_choose_symmetric_cases() {
        let tol = ratio(1, 1000);
        for v in [1, -1] {
            let d = divide_two_agents(
                &ValueDensity::uniform(int(v)),
                &counterexample_agents()[1],
                &tol,
            )
            .unwrap();
            assert_eq!(d.cuts(), &[ratio(1, 2)]);
        }
        assert!(divide_two_agents(
            &ValueDensity::uniform(int(1)),
            &ValueDensity::uniform(int(1)),
            &int(0)
        )
        .is_err());
    }

    #[test]
    fn cut_and_choose_counterexample_matches_scan() {
        let agents = counterexample_agents();
        let (alice, bob) = (&agents[0], &agents[1]);
        let half = ratio(-3, 2);
        assert_eq!(alice.first_point_with_prefix(&half), Some(ratio(15, 16)));
        let d = divide_two_agents(alice, bob, &ratio(1, 1 << 20)).unwrap();
        assert_eq!(d.cuts()[0], ratio(15, 16));
        assert_eq!(alice.antiderivative(&d.cuts()[0]), half);
        assert_eq!(agent_envy(&d, &agents[..2], 0), int(0));
        assert!(agent_envy(&d, &agents[..2], 1) <= int(0));
    }

    #[test]
    fn profile_parsing() {
        let json = r#"{"agents":[
            {"type":"piecewise_constant","breakpoints":["0","1/4","1/2","3/4","1"],"values":["-1","2","2","-6"],"encoding":"slice_values"},
            {"type":"piecewise_constant","breakpoints":["0","1"],"values":["-2/3"]}
        ]}"#;
        let agents = load_profile(json).unwrap();
        assert_eq!(agents[0], counterexample_agents()[0]);
        assert_eq!(agents[1].total(), ratio(-2, 3));
        assert!(load_profile(r#"{"agents":[]}"#).is_err());
        assert!(load_profile(
            r#"{"agents":[{"type":"step","breakpoints":["0","1"],"values":["1"]}]}"#
        )
        .is_err());
        assert!(load_profile("not json").is_err());
    }
}
