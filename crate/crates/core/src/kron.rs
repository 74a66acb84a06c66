//! Multiplication by `1_m ⊗ A_n ⊗ 1_k` without materializing the Kronecker
//! product.
//!
//! The operand `B` (dimension `mnk`) is viewed as an `m × m` grid of blocks of
//! size `nk`. The operator is block-diagonal on that grid, so block `(i, j)` of
//! the result is `(A ⊗ 1_k) × B(i, j)`. Each of those is again an `n × n` grid
//! of `k × k` sub-blocks, and sub-block `(p, q)` is
//!
//! ```text
//! D(p, q) = Σ_l a[p][l] · B(i, j)(l, q)
//! ```
//!
//! i.e. a sum of scalar-times-block products. Counting each scalar-by-block
//! product as `k²` multiplications gives exactly `m² n³ k²` for the whole
//! product, against `(mnk)³` for the schoolbook route.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::linalg::{kron_with_limit, mat_mul_naive, Complex, Matrix, MulCounter, DEFAULT_MAX_DIM};

/// `1_m ⊗ gate ⊗ 1_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredOperator {
    m: usize,
    gate: Matrix,
    k: usize,
}

impl StructuredOperator {
    pub fn new(m: usize, gate: Matrix, k: usize) -> Result<Self> {
        for d in [m, gate.dim(), k] {
            if !d.is_power_of_two() {
                return Err(Error::NotPowerOfTwo(d));
            }
        }
        Ok(Self { m, gate, k })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.gate.dim()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn gate(&self) -> &Matrix {
        &self.gate
    }

    pub fn dim(&self) -> usize {
        self.m * self.n() * self.k
    }
}

/// Computes `op × b`. Every scalar-by-block product is counted as `k²`
/// multiplications; zero gate entries are still multiplied.
pub fn apply_structured(
    op: &StructuredOperator,
    b: &Matrix,
    counter: &mut MulCounter,
) -> Result<Matrix> {
    apply_structured_with(op, b, counter, false)
}

/// As [`apply_structured`], optionally skipping zero gate entries. Skipped
/// products are not counted, so exact-count checks must pass `false`.
pub fn apply_structured_with(
    op: &StructuredOperator,
    b: &Matrix,
    counter: &mut MulCounter,
    skip_zeros: bool,
) -> Result<Matrix> {
    let dim = op.dim();
    if b.dim() != dim {
        return Err(Error::DimensionMismatch(dim, b.dim()));
    }
    let (m, n, k) = (op.m, op.n(), op.k);
    let nk = n * k;
    let a = op.gate.as_slice();
    let src = b.as_slice();
    let mut out = vec![Complex::new(0.0, 0.0); dim * dim];
    let k2 = (k * k) as u64;

    for i in 0..m {
        for j in 0..m {
            // top-left corner of block (i, j)
            let row0 = i * nk;
            let col0 = j * nk;
            for p in 0..n {
                for q in 0..n {
                    for l in 0..n {
                        let a_pl = a[p * n + l];
                        if skip_zeros && a_pl == Complex::new(0.0, 0.0) {
                            continue;
                        }
                        counter.add(k2);
                        for r in 0..k {
                            let dst = (row0 + p * k + r) * dim + col0 + q * k;
                            let from = (row0 + l * k + r) * dim + col0 + q * k;
                            for c in 0..k {
                                out[dst + c] += a_pl * src[from + c];
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Matrix::from_raw(dim, out))
}

/// Dense realization `1_m ⊗ gate ⊗ 1_k`.
pub fn embed_dense(op: &StructuredOperator) -> Result<Matrix> {
    embed_dense_with_limit(op, DEFAULT_MAX_DIM)
}

pub fn embed_dense_with_limit(op: &StructuredOperator, max_dim: usize) -> Result<Matrix> {
    let inner = kron_with_limit(&op.gate, &Matrix::identity(op.k), max_dim)?;
    kron_with_limit(&Matrix::identity(op.m), &inner, max_dim)
}

/// Whether the structured kernel beats an `O(d^2.376)` general multiply:
/// `log2 m + log2 k > 1.66 log2 n`.
pub fn speedup_predicted(m: usize, n: usize, k: usize) -> bool {
    let lg = |x: usize| x.trailing_zeros() as f64;
    lg(m) + lg(k) > 1.66 * lg(n)
}

/// Closed-form count of the structured kernel.
pub fn structured_mul_count(m: usize, n: usize, k: usize) -> u64 {
    let (m, n, k) = (m as u64, n as u64, k as u64);
    m * m * n * n * n * k * k
}

/// Closed-form count of the schoolbook product on the embedded operator.
pub fn naive_mul_count(m: usize, n: usize, k: usize) -> u64 {
    ((m * n * k) as u64).pow(3)
}

/// One row of the kernel benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub structured_count: u64,
    pub naive_count: u64,
    pub predicted_speedup: bool,
    pub wall_ns_structured: u128,
    pub wall_ns_naive: u128,
}

impl BenchRow {
    pub const CSV_HEADER: &'static str =
        "m,n,k,structured_count,naive_count,predicted_speedup,wall_ns_structured,wall_ns_naive";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.m,
            self.n,
            self.k,
            self.structured_count,
            self.naive_count,
            self.predicted_speedup,
            self.wall_ns_structured,
            self.wall_ns_naive
        )
    }
}

/// Runs both kernels on `(1_m ⊗ gate ⊗ 1_k) × b` and records instrumented
/// counts plus wall-clock time. Returns an error if the two results disagree
/// by more than `1e-12`.
pub fn bench_case(gate: &Matrix, m: usize, k: usize, b: &Matrix) -> Result<BenchRow> {
    let op = StructuredOperator::new(m, gate.clone(), k)?;
    let dense = embed_dense(&op)?;

    let mut structured = MulCounter::new();
    let t0 = Instant::now();
    let fast = apply_structured(&op, b, &mut structured)?;
    let wall_ns_structured = t0.elapsed().as_nanos();

    let mut naive = MulCounter::new();
    let t1 = Instant::now();
    let slow = mat_mul_naive(&dense, b, &mut naive)?;
    let wall_ns_naive = t1.elapsed().as_nanos();

    let err = fast.max_abs_diff(&slow)?;
    if err > 1e-12 {
        return Err(Error::InvalidMatrix(format!(
            "structured and dense products disagree by {err:e}"
        )));
    }
    Ok(BenchRow {
        m,
        n: gate.dim(),
        k,
        structured_count: structured.count(),
        naive_count: naive.count(),
        predicted_speedup: speedup_predicted(m, gate.dim(), k),
        wall_ns_structured,
        wall_ns_naive,
    })
}
