//! The complete catalog of elementary-tensor Pauli triplets on `n` qubits.

use super::SearchError;
use crate::pauli::{anticommutes, string_product, PauliString};
use crate::triplet::PauliTriplet;
use std::collections::BTreeMap;

/// Largest supported qubit count; the catalog grows as `(4^n - 1) 4^n / 12`.
pub const MAX_QUBITS: usize = 4;

/// Deduplicated elementary triplets in canonical order (sorted unsigned
/// word keys), with a pair-lookup index.
#[derive(Debug, Clone)]
pub struct TripletCatalog {
    n: usize,
    triplets: Vec<PauliTriplet>,
    keys: Vec<[usize; 3]>,
    // sorted unsigned word pair -> catalog index
    pair_index: BTreeMap<(usize, usize), usize>,
}

impl TripletCatalog {
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triplets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triplets.is_empty()
    }

    pub fn triplets(&self) -> &[PauliTriplet] {
        &self.triplets
    }

    pub fn get(&self, i: usize) -> &PauliTriplet {
        &self.triplets[i]
    }

    /// Sorted unsigned word indices of member `i`.
    pub fn key(&self, i: usize) -> [usize; 3] {
        self.keys[i]
    }

    /// Index of the unique triplet containing both unsigned words, if they
    /// anticommute.
    pub fn triplet_for_pair(&self, w1: usize, w2: usize) -> Option<usize> {
        let pair = (w1.min(w2), w1.max(w2));
        self.pair_index.get(&pair).copied()
    }

    /// True if some member has exactly this unsigned support.
    pub fn contains_key(&self, key: [usize; 3]) -> bool {
        self.keys.binary_search(&key).is_ok()
    }
}

/// Enumerate all elementary triplets on `n` qubits, up to signs and
/// ordering: every unordered anticommuting pair of nonidentity words closes
/// to a unique triplet, and each triplet arises from its three pairs.
pub fn enumerate_elementary_triplets(n: usize) -> Result<TripletCatalog, SearchError> {
    if n == 0 || n > MAX_QUBITS {
        return Err(SearchError::QubitsOutOfRange { n, max: MAX_QUBITS });
    }
    let words = 4usize.pow(n as u32);
    let mut by_key: BTreeMap<[usize; 3], (usize, usize)> = BTreeMap::new();
    for a in 1..words {
        let wa = PauliString::from_word_index(n, a);
        for b in (a + 1)..words {
            let wb = PauliString::from_word_index(n, b);
            if !anticommutes(&wa, &wb).expect("equal lengths") {
                continue;
            }
            let c = string_product(&wa, &wb).expect("equal lengths").word.word_index();
            let mut key = [a, b, c];
            key.sort_unstable();
            by_key.entry(key).or_insert((key[0], key[1]));
        }
    }
    let mut triplets = Vec::with_capacity(by_key.len());
    let mut keys = Vec::with_capacity(by_key.len());
    let mut pair_index = BTreeMap::new();
    for (idx, (key, (a, b))) in by_key.into_iter().enumerate() {
        let t = PauliTriplet::complete_words(
            PauliString::from_word_index(n, a),
            PauliString::from_word_index(n, b),
        )?;
        debug_assert_eq!(t.unsigned_word_key(), Some(key));
        for i in 0..3 {
            for j in (i + 1)..3 {
                pair_index.insert((key[i], key[j]), idx);
            }
        }
        triplets.push(t);
        keys.push(key);
    }
    Ok(TripletCatalog {
        n,
        triplets,
        keys,
        pair_index,
    })
}

/// Number of operators whose realized matrix is purely imaginary (odd number
/// of Y factors); for an elementary triplet this is 1 or 3.
pub fn imaginary_count(t: &PauliTriplet) -> Result<usize, SearchError> {
    let words = t.words().ok_or(SearchError::NonElementary)?;
    Ok(words.iter().filter(|w| w.y_count() % 2 == 1).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::triplet::verify_triplet;

    #[test]
    fn single_qubit_catalog_is_the_pauli_triplet() {
        let cat = enumerate_elementary_triplets(1).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat.key(0), [1, 2, 3]); // {X, Y, Z}
    }

    #[test]
    fn two_qubit_count_matches_brute_force_oracle() {
        // independent oracle: iterate unordered pairs of the 15 nonidentity
        // words, decide anticommutation and close under the product with
        // exact matrices only
        let realized: Vec<_> = (0..16)
            .map(|i| PauliString::from_word_index(2, i).realize())
            .collect();
        let mut keys = std::collections::BTreeSet::new();
        for a in 1..16 {
            for b in (a + 1)..16 {
                let ab = realized[a].mul(&realized[b]).unwrap();
                let ba = realized[b].mul(&realized[a]).unwrap();
                if ab != ba.neg() {
                    continue;
                }
                // find the unsigned word of -i*ab by matrix scan
                let prod = ab.times_i().neg();
                let c = (1..16)
                    .find(|&c| prod == realized[c] || prod == realized[c].neg())
                    .expect("product of words is a word");
                let mut key = [a, b, c];
                key.sort_unstable();
                keys.insert(key);
            }
        }
        assert_eq!(keys.len(), 20, "oracle count");

        let cat = enumerate_elementary_triplets(2).unwrap();
        assert_eq!(cat.len(), 20);
        for i in 0..cat.len() {
            assert!(keys.contains(&cat.key(i)));
        }
    }

    #[test]
    fn catalog_members_verify_and_are_deduplicated() {
        let cat = enumerate_elementary_triplets(2).unwrap();
        for i in 0..cat.len() {
            let t = cat.get(i);
            let r = verify_triplet(t.operator(0), t.operator(1), t.operator(2)).unwrap();
            assert!(r.pass());
            for j in (i + 1)..cat.len() {
                assert!(!t.same_unsigned_set(cat.get(j)));
            }
        }
        // canonical order
        let mut sorted = cat.keys.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, cat.keys);
    }

    #[test]
    fn catalog_contains_reference_families() {
        let cat = enumerate_elementary_triplets(2).unwrap();
        for t in families::four_off_diagonal()
            .iter()
            .chain(families::six_elementary().iter())
        {
            let key = t.unsigned_word_key().unwrap();
            assert!(cat.contains_key(key), "missing support {key:?}");
        }
    }

    #[test]
    fn pair_lookup_finds_the_closing_triplet() {
        let cat = enumerate_elementary_triplets(2).unwrap();
        // σ3⊗σ1 (13) and σ1⊗σ1 (5) close to σ2⊗σ0 (8)
        let zx = "ZX".parse::<PauliString>().unwrap().word_index();
        let xx = "XX".parse::<PauliString>().unwrap().word_index();
        let idx = cat.triplet_for_pair(zx, xx).unwrap();
        let mut key = cat.key(idx);
        key.sort_unstable();
        assert!(key.contains(&"YI".parse::<PauliString>().unwrap().word_index()));
        // commuting pair has no triplet
        let ix = "IX".parse::<PauliString>().unwrap().word_index();
        let xi = "XI".parse::<PauliString>().unwrap().word_index();
        assert_eq!(cat.triplet_for_pair(ix, xi), None);
    }

    #[test]
    fn three_qubit_catalog_size() {
        // (4^n - 1) 4^n / 12 triplets: each of the (4^n-1)(4^n/2)/2
        // anticommuting pairs closes to a triplet counted three times
        let cat = enumerate_elementary_triplets(3).unwrap();
        assert_eq!(cat.len(), 336);
    }

    #[test]
    fn qubit_range_is_enforced() {
        assert!(matches!(
            enumerate_elementary_triplets(0),
            Err(SearchError::QubitsOutOfRange { .. })
        ));
        assert!(matches!(
            enumerate_elementary_triplets(5),
            Err(SearchError::QubitsOutOfRange { .. })
        ));
    }

    #[test]
    fn imaginary_count_examples() {
        // {σ1⊗σ1, σ1⊗σ2, σ0⊗σ3}: only σ1⊗σ2 is imaginary
        let six = families::six_elementary();
        assert_eq!(imaginary_count(&six[0]).unwrap(), 1);
        // {σ0⊗σ2, σ2⊗σ3, σ2⊗σ1}: all three imaginary
        let four = families::four_off_diagonal();
        assert_eq!(imaginary_count(&four[3]).unwrap(), 3);
        // non-elementary input is rejected
        assert!(matches!(
            imaginary_count(&families::hadamard_fifth()),
            Err(SearchError::NonElementary)
        ));
    }

    #[test]
    fn imaginary_count_parity_over_the_catalog() {
        // never 0 or 2: the product structure forces odd imaginary counts
        let cat = enumerate_elementary_triplets(2).unwrap();
        for t in cat.triplets() {
            let c = imaginary_count(t).unwrap();
            assert!(c == 1 || c == 3, "count {c}");
        }
    }
}
