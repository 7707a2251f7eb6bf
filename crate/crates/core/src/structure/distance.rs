//! Minimum insertion steps between two orderings of the same elements.
//!
//! One step removes an element and reinserts it at any position. The minimum
//! number of steps equals `n` minus the longest increasing subsequence of the
//! produced order mapped through the truth order: everything on a longest
//! increasing subsequence can stay put while the rest are reinserted.

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrderError {
    #[error("orders are not permutations of the same element set")]
    SetMismatch,
    #[error("duplicate element in order")]
    DuplicateElement,
}

/// Length of the longest strictly increasing subsequence (patience sorting).
pub fn longest_increasing_subsequence_len(values: &[usize]) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for &v in values {
        match tails.binary_search(&v) {
            // Strict increase: a repeated value replaces its own slot.
            Ok(pos) | Err(pos) => {
                if pos == tails.len() {
                    tails.push(v);
                } else {
                    tails[pos] = v;
                }
            }
        }
    }
    tails.len()
}

/// Minimum move-to-anywhere insertions turning `produced` into `truth`.
pub fn insertion_distance<T: Eq + Hash>(produced: &[T], truth: &[T]) -> Result<usize, OrderError> {
    if produced.len() != truth.len() {
        return Err(OrderError::SetMismatch);
    }
    let mut position: HashMap<&T, usize> = HashMap::with_capacity(truth.len());
    for (i, item) in truth.iter().enumerate() {
        if position.insert(item, i).is_some() {
            return Err(OrderError::DuplicateElement);
        }
    }
    let mut used = vec![false; truth.len()];
    let mapped: Vec<usize> = produced
        .iter()
        .map(|item| position.get(item).copied().ok_or(OrderError::SetMismatch))
        .collect::<Result<_, _>>()?;
    for &p in &mapped {
        if std::mem::replace(&mut used[p], true) {
            return Err(OrderError::SetMismatch);
        }
    }
    Ok(produced.len() - longest_increasing_subsequence_len(&mapped))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_orders_cost_nothing() {
        assert_eq!(insertion_distance(&[1, 2, 3], &[1, 2, 3]).unwrap(), 0);
    }

    #[test]
    fn one_swap_costs_one() {
        assert_eq!(insertion_distance(&[2, 1], &[1, 2]).unwrap(), 1);
    }

    #[test]
    fn five_element_case_costs_two() {
        // Keep the increasing run 1,2,4 in place; move 3 and 5.
        assert_eq!(
            insertion_distance(&[3, 1, 2, 5, 4], &[1, 2, 3, 4, 5]).unwrap(),
            2
        );
    }

    #[test]
    fn mismatched_sets_are_rejected() {
        assert_eq!(
            insertion_distance(&[1, 2], &[1, 3]),
            Err(OrderError::SetMismatch)
        );
        assert_eq!(
            insertion_distance(&[1], &[1, 2]),
            Err(OrderError::SetMismatch)
        );
        assert_eq!(
            insertion_distance(&[1, 1], &[1, 2]),
            Err(OrderError::SetMismatch)
        );
    }

    #[test]
    fn lis_handles_empty_and_sorted_input() {
        assert_eq!(longest_increasing_subsequence_len(&[]), 0);
        assert_eq!(longest_increasing_subsequence_len(&[0, 1, 2, 3]), 4);
        assert_eq!(longest_increasing_subsequence_len(&[3, 2, 1, 0]), 1);
    }
}
