//! Degree sequences, their associated pair, and the arithmetic feasibility
//! predicates for k-connected and necessarily k-connected sequences.
//!
//! The predicates here are evaluated literally. They are not corrected
//! against exhaustive truth; that comparison lives in [`crate::oracle`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("degree sequence is empty")]
    EmptySequence,
    #[error("degree sequence term {value} at position {index} is not positive")]
    NonPositiveTerm { index: usize, value: i64 },
}

/// A non-empty, non-increasing sequence of positive degrees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn terms(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_term(&self) -> usize {
        self.0[0]
    }

    pub fn min_term(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Builds a sequence from terms already known to be positive. Sorts.
    pub(crate) fn from_positive(mut terms: Vec<usize>) -> Self {
        debug_assert!(!terms.is_empty() && terms.iter().all(|&d| d >= 1));
        terms.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(terms)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

impl TryFrom<Vec<i64>> for DegreeSequence {
    type Error = SequenceError;

    fn try_from(raw: Vec<i64>) -> Result<Self, Self::Error> {
        normalize(&raw)
    }
}

/// Sorts `raw` into a non-increasing [`DegreeSequence`].
pub fn normalize(raw: &[i64]) -> Result<DegreeSequence, SequenceError> {
    if raw.is_empty() {
        return Err(SequenceError::EmptySequence);
    }
    if let Some((index, &value)) = raw.iter().enumerate().find(|(_, &v)| v <= 0) {
        return Err(SequenceError::NonPositiveTerm { index, value });
    }
    Ok(DegreeSequence::from_positive(
        raw.iter().map(|&v| v as usize).collect(),
    ))
}

/// An exact value of the form `twice / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: u64,
}

impl HalfInteger {
    pub const fn from_twice(twice: u64) -> Self {
        HalfInteger { twice }
    }

    pub const fn from_integer(value: u64) -> Self {
        HalfInteger { twice: 2 * value }
    }

    /// The numerator over a fixed denominator of 2.
    pub const fn twice(self) -> u64 {
        self.twice
    }

    pub const fn is_integral(self) -> bool {
        self.twice.is_multiple_of(2)
    }

    pub fn to_integer(self) -> Option<u64> {
        self.is_integral().then_some(self.twice / 2)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// Exact JSON form: `{"numerator": 2ε, "denominator": 2, "integral": bool}`.
impl Serialize for HalfInteger {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("HalfInteger", 3)?;
        st.serialize_field("numerator", &self.twice)?;
        st.serialize_field("denominator", &2u8)?;
        st.serialize_field("integral", &self.is_integral())?;
        st.end()
    }
}

/// `(φ, ε)`: vertex count and exact half-sum of the terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AssociatedPair {
    pub phi: usize,
    pub epsilon: HalfInteger,
}

pub fn associated_pair(s: &DegreeSequence) -> AssociatedPair {
    AssociatedPair {
        phi: s.len(),
        epsilon: HalfInteger::from_twice(s.sum()),
    }
}

/// `C(m, 2)`, taken as zero for `m < 2`.
pub fn choose2(m: i64) -> u64 {
    if m < 2 {
        0
    } else {
        (m * (m - 1) / 2) as u64
    }
}

/// `C(φ−2, 2) + 2k − 1`: the largest edge count the forcing condition
/// still allows for a sequence that is not necessarily k-connected.
pub fn forcing_bound(phi: usize, k: usize) -> u64 {
    choose2(phi as i64 - 2) + 2 * k as u64 - 1
}

/// `(n² − 5n + 6 + 4k) / 2`, the edge count above which every simple graph
/// on `n` vertices is claimed k-connected.
pub fn corollary_threshold(n: usize, k: usize) -> u64 {
    assert!(n >= 2 && k >= 1, "corollary_threshold needs n >= 2, k >= 1");
    let (n, k) = (n as i64, k as i64);
    let numer = n * n - 5 * n + 6 + 4 * k;
    debug_assert!(numer > 0 && numer % 2 == 0);
    (numer / 2) as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    KConnected,
    NecessarilyKConnected,
}

/// Thresholds a report was evaluated against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derived {
    pub pair: AssociatedPair,
    pub k: usize,
    /// `kφ/2`.
    pub epsilon_lower: HalfInteger,
    /// `C(φ, 2)`.
    pub epsilon_upper: u64,
    /// `C(φ−2, 2) + 2k − 1`; present on necessarily-k-connected reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forcing_bound: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub theorem: Theorem,
    pub verdict: bool,
    pub checks: Vec<Check>,
    pub derived: Derived,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sub_reports: Vec<ConditionReport>,
}

impl ConditionReport {
    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// The four conditions for `s` to be the degree sequence of some
/// k-connected simple graph, each evaluated independently.
pub fn theorem1_check(s: &DegreeSequence, k: usize) -> ConditionReport {
    let pair = associated_pair(s);
    let phi = pair.phi;
    let eps = pair.epsilon;
    let lower = HalfInteger::from_twice((k * phi) as u64);
    let upper = choose2(phi as i64);
    let first = s.max_term();
    let last = s.min_term();

    let integral = eps.is_integral();
    let max_ok = first < phi;
    let min_ok = last >= k;
    let range_ok = lower <= eps && eps <= HalfInteger::from_integer(upper);

    let checks = vec![
        Check {
            name: "epsilon_integral",
            passed: integral,
            reason: if integral {
                format!("ε={eps} is a natural number")
            } else {
                format!("ε={eps} is not an integer (odd degree sum)")
            },
        },
        Check {
            name: "max_degree_below_phi",
            passed: max_ok,
            reason: format!(
                "s_1={first} {} φ−1={}",
                if max_ok { "≤" } else { ">" },
                phi as i64 - 1
            ),
        },
        Check {
            name: "min_degree_at_least_k",
            passed: min_ok,
            reason: format!("s_n={last} {} k={k}", if min_ok { "≥" } else { "<" }),
        },
        Check {
            name: "epsilon_in_range",
            passed: range_ok,
            reason: format!(
                "kφ/2={lower} {} ε={eps} {} C(φ,2)={upper}",
                if lower <= eps { "≤" } else { ">" },
                if eps <= HalfInteger::from_integer(upper) {
                    "≤"
                } else {
                    ">"
                },
            ),
        },
    ];

    ConditionReport {
        theorem: Theorem::KConnected,
        verdict: checks.iter().all(|c| c.passed),
        checks,
        derived: Derived {
            pair,
            k,
            epsilon_lower: lower,
            epsilon_upper: upper,
            forcing_bound: None,
        },
        sub_reports: Vec::new(),
    }
}

/// The k-connected conditions plus `ε > C(φ−2, 2) + 2k − 1`.
pub fn theorem2_check(s: &DegreeSequence, k: usize) -> ConditionReport {
    let base = theorem1_check(s, k);
    let pair = base.derived.pair;
    let bound = forcing_bound(pair.phi, k);
    let above = pair.epsilon > HalfInteger::from_integer(bound);

    let checks = vec![
        Check {
            name: "k_connected",
            passed: base.verdict,
            reason: if base.verdict {
                "all four k-connected conditions hold".to_string()
            } else {
                let failed: Vec<_> = base.failing().map(|c| c.name).collect();
                format!("k-connected conditions fail: {}", failed.join(", "))
            },
        },
        Check {
            name: "epsilon_above_forcing_bound",
            passed: above,
            reason: format!(
                "ε={} {} {bound} = C({},2)+2·{k}−1",
                pair.epsilon,
                if above { ">" } else { "≤" },
                pair.phi as i64 - 2,
            ),
        },
    ];

    let mut derived = base.derived.clone();
    derived.forcing_bound = Some(bound);
    ConditionReport {
        theorem: Theorem::NecessarilyKConnected,
        verdict: checks.iter().all(|c| c.passed),
        checks,
        derived,
        sub_reports: vec![base],
    }
}

/// Erdős–Gallai: `Σ s` even and, for every r,
/// `Σ_{i≤r} s_i ≤ r(r−1) + Σ_{i>r} min(s_i, r)`.
pub fn erdos_gallai_graphic(s: &DegreeSequence) -> bool {
    let d = s.terms();
    if !s.sum().is_multiple_of(2) {
        return false;
    }
    let mut prefix = 0u64;
    for r in 1..=d.len() {
        prefix += d[r - 1] as u64;
        let tail: u64 = d[r..].iter().map(|&x| x.min(r) as u64).sum();
        if prefix > (r * (r - 1)) as u64 + tail {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(v: &[i64]) -> DegreeSequence {
        normalize(v).unwrap()
    }

    #[test]
    fn normalize_sorts_and_rejects() {
        assert_eq!(seq(&[1, 3, 2]).terms(), &[3, 2, 1]);
        assert_eq!(seq(&[2, 2, 2]).terms(), &[2, 2, 2]);
        assert_eq!(
            normalize(&[3, 0, 1]),
            Err(SequenceError::NonPositiveTerm { index: 1, value: 0 })
        );
        assert_eq!(normalize(&[]), Err(SequenceError::EmptySequence));
        assert!(matches!(
            normalize(&[2, -1]),
            Err(SequenceError::NonPositiveTerm { .. })
        ));
    }

    #[test]
    fn pair_examples() {
        let p = associated_pair(&seq(&[3, 3, 3, 3]));
        assert_eq!((p.phi, p.epsilon.to_integer()), (4, Some(6)));
        let p = associated_pair(&seq(&[6, 4, 4, 4, 4, 2, 2]));
        assert_eq!((p.phi, p.epsilon.to_integer()), (7, Some(13)));
        let p = associated_pair(&seq(&[4, 1, 1, 1]));
        assert_eq!(p.phi, 4);
        assert!(!p.epsilon.is_integral());
        assert_eq!(p.epsilon.twice(), 7);
        assert_eq!(p.epsilon.to_string(), "7/2");
    }

    #[test]
    fn k_connected_check_examples() {
        let r = theorem1_check(&seq(&[2, 2, 2]), 1);
        assert!(r.verdict);
        assert_eq!(r.checks.len(), 4);

        let r = theorem1_check(&seq(&[2, 2, 2, 2]), 3);
        assert!(!r.verdict);
        let failed: Vec<_> = r.failing().map(|c| c.name).collect();
        assert_eq!(failed, vec!["min_degree_at_least_k", "epsilon_in_range"]);

        // Arithmetic passes even though no simple graph has this sequence.
        let r = theorem1_check(&seq(&[3, 3, 1, 1]), 1);
        assert!(r.verdict);
    }

    #[test]
    fn k_connected_check_order_and_odd_sum() {
        let r = theorem1_check(&seq(&[4, 1, 1, 1]), 1);
        let names: Vec<_> = r.checks.iter().map(|c| c.name).collect();
        assert_eq!(
            names,
            [
                "epsilon_integral",
                "max_degree_below_phi",
                "min_degree_at_least_k",
                "epsilon_in_range"
            ]
        );
        assert!(!r.checks[0].passed);
        assert!(!r.checks[1].passed);
    }

    #[test]
    fn k_beyond_phi_fails_on_degree_checks() {
        let r = theorem1_check(&seq(&[3, 3, 3]), 3);
        assert!(!r.checks[1].passed || !r.checks[2].passed);
        assert!(!r.verdict);
        let r = theorem1_check(&seq(&[2, 2, 2]), 3);
        assert!(!r.checks[2].passed);
    }

    #[test]
    fn necessarily_check_examples() {
        let r = theorem2_check(&seq(&[3, 3, 3, 3]), 1);
        assert!(r.verdict);
        assert_eq!(r.derived.forcing_bound, Some(2));

        let r = theorem2_check(&seq(&[6, 4, 4, 4, 4, 2, 2]), 2);
        assert!(!r.verdict);
        assert!(r.checks[0].passed);
        assert!(!r.checks[1].passed);
        assert!(r.checks[1].reason.starts_with("ε=13 ≤ 13"));

        let r = theorem2_check(&seq(&[2, 2, 2, 2, 2]), 2);
        assert!(!r.verdict);
        assert_eq!(r.derived.forcing_bound, Some(6));
        assert_eq!(r.sub_reports.len(), 1);
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(corollary_threshold(7, 2), 14);
        assert_eq!(corollary_threshold(5, 1), 5);
        for n in 3..=50 {
            for k in 1..=10 {
                assert_eq!(
                    corollary_threshold(n, k),
                    choose2(n as i64 - 2) + 2 * k as u64 - 1 + 1
                );
                assert_eq!(corollary_threshold(n, k), forcing_bound(n, k) + 1);
            }
        }
    }

    #[test]
    fn erdos_gallai_examples() {
        assert!(erdos_gallai_graphic(&seq(&[3, 3, 3, 3])));
        assert!(erdos_gallai_graphic(&seq(&[1, 1])));
        assert!(!erdos_gallai_graphic(&seq(&[3, 3, 1, 1])));
        assert!(!erdos_gallai_graphic(&seq(&[4, 1, 1, 1])));
        assert!(!erdos_gallai_graphic(&seq(&[1])));
        assert!(erdos_gallai_graphic(&seq(&[6, 4, 4, 4, 4, 2, 2])));
    }

    fn raw_terms() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(1i64..12, 1..12)
    }

    proptest! {
        #[test]
        fn normalize_idempotent(raw in raw_terms()) {
            let once = normalize(&raw).unwrap();
            let again: Vec<i64> = once.terms().iter().map(|&d| d as i64).collect();
            prop_assert_eq!(normalize(&again).unwrap(), once);
        }

        #[test]
        fn necessarily_implies_k_connected(raw in raw_terms(), k in 1usize..6) {
            let s = normalize(&raw).unwrap();
            if theorem2_check(&s, k).verdict {
                prop_assert!(theorem1_check(&s, k).verdict);
            }
        }

        #[test]
        fn k_only_moves_degree_and_lower_bound(raw in raw_terms(), k in 1usize..6) {
            // Checks (1) and (2) and the upper half of (4) do not depend on k.
            let s = normalize(&raw).unwrap();
            let at_one = theorem1_check(&s, 1);
            let at_k = theorem1_check(&s, k);
            prop_assert_eq!(at_one.checks[0].passed, at_k.checks[0].passed);
            prop_assert_eq!(at_one.checks[1].passed, at_k.checks[1].passed);
            prop_assert_eq!(at_one.derived.epsilon_upper, at_k.derived.epsilon_upper);
            if at_k.verdict {
                prop_assert!(at_one.verdict);
            }
        }

        #[test]
        fn verdict_is_conjunction(raw in raw_terms(), k in 1usize..6) {
            let s = normalize(&raw).unwrap();
            for r in [theorem1_check(&s, k), theorem2_check(&s, k)] {
                prop_assert_eq!(r.verdict, r.checks.iter().all(|c| c.passed));
            }
        }
    }
}
