//! The JSON files under `data/` ship the reference constructions so CLI
//! checks run out of the box; these tests keep them in sync with the
//! library.

use pauli_span::io::{FamilyFile, StateFile, TripletFile};
use pauli_span::triplet::triplet_span_rank;
use pauli_span::{families, DensityMatrix};
use std::path::PathBuf;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("data")
}

/// Regenerates every bundled file. Run manually after changing formats:
/// `cargo test -p pauli-span --test bundled_data -- --ignored regenerate`
#[test]
#[ignore]
fn regenerate() {
    let dir = data_dir();
    std::fs::create_dir_all(&dir).unwrap();

    let five = FamilyFile::from_triplets("triplet_", &families::five_reduction_family());
    pauli_span::io::write_json(dir.join("prop1_family.json"), &five).unwrap();

    let four = FamilyFile::from_triplets("triplet_", &families::four_off_diagonal());
    pauli_span::io::write_json(dir.join("four_elementary.json"), &four).unwrap();

    let six = FamilyFile::from_triplets("triplet_", &families::six_elementary());
    pauli_span::io::write_json(dir.join("eq3_family.json"), &six).unwrap();

    let hadamard = TripletFile::from_triplet("hadamard_fifth", &families::hadamard_fifth());
    pauli_span::io::write_json(dir.join("hadamard_triplet.json"), &hadamard).unwrap();

    let bell = StateFile::from_density(&DensityMatrix::bell_phi_plus());
    pauli_span::io::write_json(dir.join("bell_state.json"), &bell).unwrap();
}

#[test]
fn bundled_families_match_the_reference_constructions() {
    let five: FamilyFile = pauli_span::io::read_json(data_dir().join("prop1_family.json")).unwrap();
    let five = five.to_triplets().unwrap();
    assert_eq!(five.len(), 5);
    for (a, b) in five.iter().zip(families::five_reduction_family().iter()) {
        assert_eq!(a.operators(), b.operators());
    }
    assert_eq!(triplet_span_rank(&five).unwrap(), 15);

    let four: FamilyFile =
        pauli_span::io::read_json(data_dir().join("four_elementary.json")).unwrap();
    assert_eq!(triplet_span_rank(&four.to_triplets().unwrap()).unwrap(), 12);

    let six: FamilyFile = pauli_span::io::read_json(data_dir().join("eq3_family.json")).unwrap();
    let six = six.to_triplets().unwrap();
    assert_eq!(six.len(), 6);
    assert_eq!(triplet_span_rank(&six).unwrap(), 15);
    for (a, b) in six.iter().zip(families::six_elementary().iter()) {
        assert_eq!(a.operators(), b.operators());
    }
}

#[test]
fn bundled_hadamard_triplet_verifies() {
    let tf: TripletFile = pauli_span::io::read_json(data_dir().join("hadamard_triplet.json")).unwrap();
    let t = tf.to_triplet().unwrap();
    assert_eq!(t.operators(), families::hadamard_fifth().operators());
}

#[test]
fn bundled_bell_state_loads() {
    let sf: StateFile = pauli_span::io::read_json(data_dir().join("bell_state.json")).unwrap();
    let rho = sf.to_density().unwrap();
    assert!(rho.frobenius_distance(&DensityMatrix::bell_phi_plus()) < 1e-15);
}
