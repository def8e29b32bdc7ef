//! Lossless CSV interchange for count and probability tables.

use biphoton::io::{
    load_counts, load_distribution, read_counts, read_distribution, save_counts, save_distribution,
    write_counts, write_distribution,
};
use biphoton::{sample_counts, DwellModel, JointDistribution};
use ndarray::Array2;
use proptest::prelude::*;

#[test]
fn counts_survive_a_disk_round_trip() {
    let mut probs = Array2::zeros((3, 3));
    probs[[0, 2]] = 0.4;
    probs[[1, 1]] = 0.35;
    probs[[2, 0]] = 0.25;
    let dist = JointDistribution::new(probs, 0.0).unwrap();
    let table = sample_counts(&dist, DwellModel::Multinomial { total: 5_000 }, 99).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.csv");
    save_counts(&path, &table).unwrap();
    let loaded = load_counts(&path).unwrap();
    assert_eq!(loaded.counts(), table.counts());
    assert_eq!(loaded.total(), 5_000);
    assert_eq!(loaded.model(), DwellModel::Multinomial { total: 5_000 });
}

#[test]
fn distributions_survive_a_disk_round_trip_bit_for_bit() {
    // Escape-carrying distribution with awkward mantissas.
    let mut probs = Array2::zeros((2, 2));
    probs[[0, 0]] = 0.1 + 0.2; // 0.30000000000000004
    probs[[0, 1]] = 1.0 / 3.0;
    probs[[1, 0]] = 0.05;
    probs[[1, 1]] = 0.1;
    let dist = JointDistribution::from_probs(probs).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dist.csv");
    save_distribution(&path, &dist).unwrap();
    let loaded = load_distribution(&path).unwrap();
    for (a, b) in dist.probs().iter().zip(loaded.probs()) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
    assert_eq!(dist.escape_mass().to_bits(), loaded.escape_mass().to_bits());
}

proptest! {
    /// Any valid probability table round-trips bit-exactly through the CSV
    /// text form, including the recomputed escape mass.
    #[test]
    fn random_distributions_round_trip(
        dim in 1usize..=6,
        unit in proptest::collection::vec(0.0f64..1.0, 36),
        scale in 0.0f64..=1.0,
    ) {
        let cells = &unit[..dim * dim];
        let total: f64 = cells.iter().sum();
        let probs = if total > 0.0 {
            Array2::from_shape_fn((dim, dim), |(m, n)| {
                cells[m * dim + n] / total * scale
            })
        } else {
            Array2::zeros((dim, dim))
        };
        let dist = JointDistribution::from_probs(probs).unwrap();

        let mut buffer = Vec::new();
        write_distribution(&mut buffer, &dist).unwrap();
        let loaded = read_distribution(buffer.as_slice()).unwrap();
        prop_assert_eq!(loaded.dim(), dim);
        for (a, b) in dist.probs().iter().zip(loaded.probs()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        prop_assert_eq!(dist.escape_mass().to_bits(), loaded.escape_mass().to_bits());
    }

    /// Any count table round-trips exactly through CSV text.
    #[test]
    fn random_counts_round_trip(
        dim in 1usize..=6,
        cells in proptest::collection::vec(0u64..1_000_000, 36),
    ) {
        let counts = Array2::from_shape_fn((dim, dim), |(m, n)| cells[m * dim + n]);
        let total: u64 = counts.iter().sum();
        let table = biphoton::CountsTable::new(
            counts,
            DwellModel::Multinomial { total },
        ).unwrap();
        let mut buffer = Vec::new();
        write_counts(&mut buffer, &table).unwrap();
        let loaded = read_counts(buffer.as_slice()).unwrap();
        prop_assert_eq!(loaded.counts(), table.counts());
    }
}

#[test]
fn malformed_tables_are_rejected() {
    // Ragged row.
    assert!(read_counts("s0,s1\n1,2\n3\n".as_bytes()).is_err());
    // Non-numeric cell.
    assert!(read_counts("s0,s1\n1,x\n3,4\n".as_bytes()).is_err());
    // Negative count.
    assert!(read_counts("s0,s1\n1,-2\n3,4\n".as_bytes()).is_err());
    // Not square.
    assert!(read_distribution("s0,s1,s2\n0.1,0.1,0.1\n0.1,0.1,0.1\n".as_bytes()).is_err());
    // Probability above unit total.
    assert!(read_distribution("s0\n1.5\n".as_bytes()).is_err());
}
