//! Property tests for the parameter-vector codec.
//!
//! The optimizer only ever sees flat vectors; everything downstream (the
//! cascade assembler, the solution registry, the CLI) sees structured
//! configurations. These tests pin the invariant that the two views are
//! interchangeable: encode is the exact inverse of decode on every in-range
//! vector, in both search modes.

use dft_synth::{Coordinate, SearchSpace, SynthError};
use proptest::prelude::*;

/// A space plus a parameter vector lying inside its box/torus.
fn space_and_vector() -> impl Strategy<Value = (SearchSpace, Vec<f64>)> {
    (1usize..=6, 0usize..=14, 1usize..=4, any::<bool>())
        .prop_map(|(dim, extra, harmonics, symmetric)| {
            SearchSpace::new(dim, dim + extra, harmonics, symmetric).unwrap()
        })
        .prop_flat_map(|space| {
            let unit = proptest::collection::vec(0.0f64..1.0, space.dof());
            (Just(space), unit)
        })
        .prop_map(|(space, unit)| {
            let params: Vec<f64> = space
                .coordinates()
                .iter()
                .zip(unit)
                .map(|(coordinate, u)| match coordinate {
                    Coordinate::Periodic => u * std::f64::consts::TAU,
                    Coordinate::Bounded { lo, hi } => lo + u * (hi - lo),
                })
                .collect();
            (space, params)
        })
}

proptest! {
    /// decode → encode reproduces the vector bit for bit. The codec must
    /// not canonicalize, wrap, or re-derive anything, or optimizer restarts
    /// from stored solutions would drift.
    #[test]
    fn encode_inverts_decode_exactly((space, params) in space_and_vector()) {
        let config = space.decode(&params).unwrap();
        let recovered = space.encode(&config).unwrap();
        prop_assert_eq!(params.len(), recovered.len());
        for (index, (original, echoed)) in params.iter().zip(&recovered).enumerate() {
            prop_assert_eq!(
                original.to_bits(),
                echoed.to_bits(),
                "entry {} changed: {} -> {}",
                index,
                original,
                echoed
            );
        }
    }

    /// Decoded geometry must match the space that produced it.
    #[test]
    fn decoded_configs_carry_the_space_geometry((space, params) in space_and_vector()) {
        let config = space.decode(&params).unwrap();
        prop_assert_eq!(config.lattice().comp_dim(), space.dim());
        prop_assert_eq!(config.shaper().phases().len(), space.bandwidth());
        prop_assert_eq!(config.drive_a().tone_count(), space.harmonics());
        prop_assert_eq!(config.drive_b().tone_count(), space.harmonics());
        if space.symmetric() {
            // The output drive is the time-reversed input drive by
            // construction — identical tone amplitudes.
            for (a, b) in config
                .drive_a()
                .harmonics()
                .iter()
                .zip(config.drive_b().harmonics())
            {
                prop_assert_eq!(a.amplitude.to_bits(), b.amplitude.to_bits());
            }
        }
    }
}

/// Configurations from a differently shaped space must be rejected by
/// encode, not silently reinterpreted.
#[test]
fn encode_rejects_mismatched_geometry() {
    let narrow = SearchSpace::new(2, 8, 1, false).unwrap();
    let wide = SearchSpace::new(2, 12, 1, false).unwrap();
    let config = narrow.decode(&vec![0.5; narrow.dof()]).unwrap();
    assert!(matches!(
        wide.encode(&config),
        Err(SynthError::InvalidSpace(_))
    ));

    let other_dim = SearchSpace::new(3, 8, 1, false).unwrap();
    assert!(matches!(
        other_dim.encode(&config),
        Err(SynthError::InvalidSpace(_))
    ));
}

/// A general-mode configuration with unrelated drives does not fit a
/// symmetric space.
#[test]
fn encode_rejects_asymmetric_drives_in_symmetric_space() {
    let general = SearchSpace::new(2, 8, 1, false).unwrap();
    let symmetric = SearchSpace::new(2, 8, 1, true).unwrap();
    let mut params = vec![0.0; general.dof()];
    params[8] = 1.0; // input tone amplitude
    params[9] = 0.4; // input tone phase
    params[10] = 2.0; // output tone amplitude differs: not time-reversed
    params[11] = 0.4;
    let config = general.decode(&params).unwrap();
    assert!(matches!(
        symmetric.encode(&config),
        Err(SynthError::InvalidSpace(_))
    ));
}
