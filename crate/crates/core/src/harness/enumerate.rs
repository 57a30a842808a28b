//! Topologies on `n` labelled points.

use super::HarnessError;
use crate::topology::{default_labels, FiniteSpace};

/// Largest point count [`enumerate_spaces`] accepts.
pub const MAX_ENUM_POINTS: usize = 4;

/// Every topology on the points `a, b, ...` (`n` of them), each built through the
/// validating constructor.
///
/// A finite topology is fixed by its specialisation preorder, so the search
/// runs over reflexive transitive relations and takes unions of the resulting
/// minimal neighbourhoods. Order: by the relation's bit pattern.
pub fn enumerate_spaces(n: usize) -> Result<Vec<FiniteSpace>, HarnessError> {
    if n > MAX_ENUM_POINTS {
        return Err(HarnessError::BudgetExceeded(format!("enumerate_spaces({n}): at most {MAX_ENUM_POINTS} points")));
    }
    let off_diagonal: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for pattern in 0u64..1 << off_diagonal.len() {
        // nbhd[i] = points j with i ≤ j, i.e. the minimal open around i.
        let mut nbhd: Vec<u64> = (0..n).map(|i| 1 << i).collect();
        for (k, &(i, j)) in off_diagonal.iter().enumerate() {
            if pattern >> k & 1 == 1 {
                nbhd[i] |= 1 << j;
            }
        }
        let transitive = (0..n).all(|i| (0..n).filter(|&j| nbhd[i] >> j & 1 == 1).all(|j| nbhd[j] & !nbhd[i] == 0));
        if !transitive {
            continue;
        }
        let mut opens = Vec::with_capacity(1 << n);
        for sel in 0u64..1 << n {
            opens.push((0..n).filter(|&i| sel >> i & 1 == 1).fold(0, |acc, i| acc | nbhd[i]));
        }
        opens.sort_unstable();
        opens.dedup();
        out.push(FiniteSpace::from_masks(default_labels(n), opens).map_err(|e| HarnessError::Invalid(e.to_string()))?);
    }
    Ok(out)
}

/// Counts topologies on `n` points by testing every family of subsets that
/// contains `∅` and the whole set for closure under `∪` and `∩`.
pub fn brute_force_count(n: usize) -> Result<usize, HarnessError> {
    if n > MAX_ENUM_POINTS {
        return Err(HarnessError::BudgetExceeded(format!("brute_force_count({n})")));
    }
    let full = (1u64 << n) - 1;
    // Subsets other than ∅ and the full set are optional members.
    let optional: Vec<u64> = (1..full).collect();
    let mut count = 0;
    for choice in 0u64..1 << optional.len() {
        let mut member = vec![false; 1 << n];
        member[0] = true;
        member[full as usize] = true;
        for (k, s) in optional.iter().enumerate() {
            if choice >> k & 1 == 1 {
                member[*s as usize] = true;
            }
        }
        let sets: Vec<usize> = (0..member.len()).filter(|&s| member[s]).collect();
        if sets.iter().all(|&a| sets.iter().all(|&b| member[a | b] && member[a & b])) {
            count += 1;
        }
    }
    Ok(count)
}

/// A stable textual identifier: point labels and opens.
pub fn space_id(space: &FiniteSpace) -> String {
    let opens: Vec<String> = space.opens().iter().map(|o| space.show(*o).replace(' ', "")).collect();
    format!("{{{}}}:{}", space.labels().join(","), opens.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_brute_force() {
        for n in 1..=3 {
            assert_eq!(enumerate_spaces(n).unwrap().len(), brute_force_count(n).unwrap(), "n = {n}");
        }
        assert_eq!(brute_force_count(1).unwrap(), 1);
        assert_eq!(brute_force_count(2).unwrap(), 4);
    }

    #[test]
    fn enumeration_is_distinct_and_deterministic() {
        let a = enumerate_spaces(3).unwrap();
        let b = enumerate_spaces(3).unwrap();
        assert_eq!(a, b);
        let ids: std::collections::BTreeSet<String> = a.iter().map(space_id).collect();
        assert_eq!(ids.len(), a.len());
    }

    #[test]
    fn five_points_is_over_budget() {
        assert!(matches!(enumerate_spaces(5), Err(HarnessError::BudgetExceeded(_))));
    }

    #[test]
    fn id_format() {
        assert_eq!(space_id(&FiniteSpace::sierpinski()), "{r,s}:{},{r,s},{s}");
    }
}
