mod common;

use common::{random_chromosome, rng};
use oracle_forge::codec::{codon_bits, decode_codon};
use oracle_forge::{Chromosome, Encoding, GateSet};
use proptest::prelude::*;

fn preimages(n: usize) -> (usize, Vec<usize>) {
    let k = codon_bits(n);
    let mut counts = vec![0usize; n];
    for s in 0..(1u64 << k) {
        counts[decode_codon(s, n, k)] += 1;
    }
    (k, counts)
}

#[test]
fn preimages_are_balanced_for_small_case_counts() {
    for n in 1..=64usize {
        let (k, counts) = preimages(n);
        let total = 1usize << k;
        let (lo, hi) = (total / n, total.div_ceil(n));
        assert!(counts.iter().all(|&c| c == lo || c == hi), "N={n}: {counts:?}");
        assert_eq!(counts.iter().sum::<usize>(), total);
    }
}

#[test]
fn codon_width_is_minimal() {
    assert_eq!(codon_bits(9), 4);
    assert_eq!(codon_bits(16), 4);
    assert_eq!(codon_bits(17), 5);
    assert_eq!(codon_bits(1), 0);
}

proptest! {
    #[test]
    fn decode_codon_is_monotone(n in 2usize..200, s in any::<u64>()) {
        let k = codon_bits(n);
        let max = (1u64 << k) - 1;
        let s = s % max;
        prop_assert!(decode_codon(s, n, k) <= decode_codon(s + 1, n, k));
        prop_assert!(decode_codon(s + 1, n, k) < n);
    }

    #[test]
    fn every_chromosome_decodes(m in 1usize..5, g in 1usize..10, seed in any::<u64>()) {
        let enc = Encoding::new(m, GateSet::default(), g).unwrap();
        let c = random_chromosome(enc.chromosome_len(), &mut rng(seed));
        let circuit = enc.decode(&c).unwrap();
        prop_assert_eq!(circuit.placements.len(), g);
        prop_assert_eq!(circuit.qubits, m);
    }

    #[test]
    fn zero_chromosome_is_all_wire(m in 1usize..5, g in 1usize..10) {
        let enc = Encoding::new(m, GateSet::default(), g).unwrap();
        let circuit = enc.decode(&Chromosome::zeros(enc.chromosome_len())).unwrap();
        prop_assert!(circuit.placements.iter().all(|p| p.is_wire()));
    }
}

#[test]
fn codons_are_read_big_endian() {
    let enc = Encoding::new(2, GateSet::default(), 2).unwrap();
    // 0001 -> s=1 -> case 0; 1111 -> s=15 -> case 8.
    let c = Chromosome::parse("0001 1111").unwrap();
    assert_eq!(enc.decode_indices(&c).unwrap(), vec![0, 8]);
    let c = Chromosome::parse("0100 1000").unwrap();
    assert_eq!(enc.decode_indices(&c).unwrap(), vec![2, 4]);
}

#[test]
fn wrong_length_is_rejected() {
    let enc = Encoding::new(2, GateSet::default(), 2).unwrap();
    assert!(enc.decode(&Chromosome::zeros(7)).is_err());
}

#[test]
fn circuit_json_round_trips() {
    let gs = GateSet::default();
    let enc = Encoding::new(3, gs.clone(), 8).unwrap();
    let mut r = rng(5);
    for _ in 0..50 {
        let c = enc.decode(&random_chromosome(enc.chromosome_len(), &mut r)).unwrap();
        let json = c.to_json(&Default::default());
        assert_eq!(oracle_forge::Circuit::from_json(&json, &gs).unwrap(), c);
    }
}
