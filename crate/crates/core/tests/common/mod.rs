#![allow(dead_code)]

use oracle_forge::gates::enumerate_cases;
use oracle_forge::linalg::{Complex, Matrix};
use oracle_forge::{Chromosome, Circuit, GateSet};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut impl Rng) -> Complex {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix(dim: usize, rng: &mut impl Rng) -> Matrix {
    let data = (0..dim * dim).map(|_| random_complex(rng)).collect();
    Matrix::from_vec(dim, data).unwrap()
}

/// Gram-Schmidt on the columns of a random complex matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> Matrix {
    let mut cols: Vec<Vec<Complex>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex> = (0..dim).map(|_| random_complex(rng)).collect();
        for u in &cols {
            let dot: Complex = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        cols.push(v.into_iter().map(|x| x / norm).collect());
    }
    let mut data = vec![Complex::new(0.0, 0.0); dim * dim];
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            data[r * dim + c] = *x;
        }
    }
    Matrix::from_vec(dim, data).unwrap()
}

pub fn random_chromosome(len: usize, rng: &mut impl Rng) -> Chromosome {
    Chromosome::new((0..len).map(|_| rng.random::<bool>()).collect())
}

/// Uniform over placements, wires included.
pub fn random_circuit(m: usize, gates: usize, rng: &mut impl Rng) -> Circuit {
    let cases = enumerate_cases(m, &GateSet::default());
    let placements = (0..gates)
        .map(|_| cases[rng.random_range(0..cases.len())].clone())
        .collect();
    Circuit::new(m, placements).unwrap()
}
