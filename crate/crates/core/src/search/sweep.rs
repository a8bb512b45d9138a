//! Exhaustive subset sweeps over the two-qubit elementary catalog.

use super::{SearchError, TripletCatalog};
use crate::rank::{integer_row, IncrementalRank};
use crate::triplet::PauliTriplet;
use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Certificate of the exhaustive five-subset sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationReport {
    /// True when every 5-subset has rank at most 14.
    pub refuted: bool,
    /// Largest traceless span rank over all 5-subsets.
    pub max_rank: usize,
    /// Catalog indices of one subset attaining `max_rank`.
    pub witness: Vec<usize>,
    pub subsets_checked: u64,
}

fn catalog_rows(catalog: &TripletCatalog) -> Vec<[Vec<BigInt>; 3]> {
    catalog
        .triplets()
        .iter()
        .map(|t| t.traceless_rows().map(|r| integer_row(&r)))
        .collect()
}

fn subset_rank(rows: &[[Vec<BigInt>; 3]], subset: &[usize]) -> usize {
    let mut inc = IncrementalRank::new();
    for &i in subset {
        for row in &rows[i] {
            inc.insert(row.clone());
        }
    }
    inc.rank()
}

/// Sweep every 5-subset of the complete two-qubit catalog and certify that
/// none reaches the full traceless rank 15.
pub fn refute_five_elementary(catalog: &TripletCatalog) -> Result<RefutationReport, SearchError> {
    require_two_qubits(catalog)?;
    let rows = catalog_rows(catalog);
    let mut max_rank = 0;
    let mut witness = Vec::new();
    let mut subsets_checked = 0u64;
    for subset in (0..catalog.len()).combinations(5) {
        let rank = subset_rank(&rows, &subset);
        subsets_checked += 1;
        if rank > max_rank {
            max_rank = rank;
            witness = subset;
        }
    }
    Ok(RefutationReport {
        refuted: max_rank <= 14,
        max_rank,
        witness,
        subsets_checked,
    })
}

/// First 6-subset of the catalog, in canonical order, whose traceless span
/// rank is 15.
pub fn find_spanning_six(catalog: &TripletCatalog) -> Result<Vec<PauliTriplet>, SearchError> {
    require_two_qubits(catalog)?;
    let rows = catalog_rows(catalog);
    for subset in (0..catalog.len()).combinations(6) {
        if subset_rank(&rows, &subset) == 15 {
            return Ok(subset.into_iter().map(|i| catalog.get(i).clone()).collect());
        }
    }
    unreachable!("the two-qubit catalog contains spanning 6-subsets")
}

/// Number of 6-subsets of the catalog that span, by full sweep.
pub fn count_spanning_six(catalog: &TripletCatalog) -> Result<u64, SearchError> {
    require_two_qubits(catalog)?;
    let rows = catalog_rows(catalog);
    let mut count = 0u64;
    for subset in (0..catalog.len()).combinations(6) {
        if subset_rank(&rows, &subset) == 15 {
            count += 1;
        }
    }
    Ok(count)
}

fn require_two_qubits(catalog: &TripletCatalog) -> Result<(), SearchError> {
    if catalog.n_qubits() != 2 {
        return Err(SearchError::QubitsOutOfRange {
            n: catalog.n_qubits(),
            max: 2,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::search::enumerate_elementary_triplets;
    use crate::triplet::triplet_span_rank;

    fn catalog() -> TripletCatalog {
        enumerate_elementary_triplets(2).unwrap()
    }

    #[test]
    fn every_five_subset_stays_below_full_rank() {
        let report = refute_five_elementary(&catalog()).unwrap();
        assert!(report.refuted);
        assert!(report.max_rank <= 14);
        assert_eq!(report.subsets_checked, 15_504); // C(20, 5)
        assert_eq!(report.witness.len(), 5);
        // the witness subset indeed attains the reported rank
        let family: Vec<PauliTriplet> = report
            .witness
            .iter()
            .map(|&i| catalog().get(i).clone())
            .collect();
        assert_eq!(triplet_span_rank(&family).unwrap(), report.max_rank);
    }

    #[test]
    fn four_subsets_cannot_exceed_twelve() {
        let cat = catalog();
        // 12 rows bound the rank by 12; spot-check a few subsets exactly
        for subset in [[0usize, 1, 2, 3], [4, 7, 11, 19], [2, 9, 13, 17]] {
            let family: Vec<PauliTriplet> =
                subset.iter().map(|&i| cat.get(i).clone()).collect();
            assert!(triplet_span_rank(&family).unwrap() <= 12);
        }
    }

    #[test]
    fn first_five_of_the_six_family_reach_rank_thirteen() {
        // triplets 1-5 of the six-triplet family share two supports, so 15
        // operators span only 13 directions
        let five: Vec<PauliTriplet> = families::six_elementary()[..5].to_vec();
        assert_eq!(triplet_span_rank(&five).unwrap(), 13);
    }

    #[test]
    fn finds_a_spanning_six_subset() {
        let family = find_spanning_six(&catalog()).unwrap();
        assert_eq!(family.len(), 6);
        assert_eq!(triplet_span_rank(&family).unwrap(), 15);
        // 18 rows, rank 15
        let rows: usize = family.iter().map(|_| 3).sum();
        assert_eq!(rows, 18);
    }

    #[test]
    fn the_reference_six_family_is_among_the_valid_answers() {
        let cat = catalog();
        let six = families::six_elementary();
        assert_eq!(triplet_span_rank(&six).unwrap(), 15);
        for t in &six {
            assert!(cat.contains_key(t.unsigned_word_key().unwrap()));
        }
    }

    #[test]
    fn spanning_six_count_matches_independent_oracle() {
        // oracle: for elementary triplets the span rank equals the number of
        // distinct unsigned words, so count 6-subsets covering 15 words
        let cat = catalog();
        let keys: Vec<[usize; 3]> = (0..cat.len()).map(|i| cat.key(i)).collect();
        let mut oracle = 0u64;
        for subset in (0..cat.len()).combinations(6) {
            let mut words = std::collections::BTreeSet::new();
            for &i in &subset {
                words.extend(keys[i]);
            }
            if words.len() == 15 {
                oracle += 1;
            }
        }
        assert_eq!(count_spanning_six(&cat).unwrap(), oracle);
        // regression anchor frozen from the first oracle sweep
        assert_eq!(oracle, 30);
    }

    #[test]
    fn wrong_catalog_dimension_is_rejected() {
        let cat1 = enumerate_elementary_triplets(1).unwrap();
        assert!(refute_five_elementary(&cat1).is_err());
        assert!(count_spanning_six(&cat1).is_err());
    }
}
