//! fibnorm-core: exact Fibonacci sequences, vectors and matrices, entrywise
//! p-norms and p-distances, closed-form identity verification against
//! brute-force oracles, and the threshold-exponent bound.

pub mod bench;
pub mod distances;
pub mod error;
pub mod fib;
pub mod identities;
pub mod norm;
pub mod real;
pub mod structs;
pub mod threshold;

pub use bench::{run_bench, BenchCase, BenchQuantity, BenchReport, Strategy};
pub use distances::{
    d2_power_sum_closed, d3_power_sum_closed, golden_approx, parallelogram_check,
    sum_diff_one_norm, GoldenApproxReport, ParallelogramReport, ShiftedPair, SumDiffReport,
};
pub use error::{Error, Result};
pub use fib::{binet_approx, fib, fib_fast_doubling, kfib, GoldenConstants, KFibSequence};
pub use identities::{
    hankel_norm_closed, lower_tri_norm_closed, sum_closed, sum_cubes_closed,
    sum_squares_closed, window_norm_closed, ClosedKind, IdentityReport, RangeOverrides,
    Registry, Status,
};
pub use norm::{
    matrix_pnorm, pdistance, pnorm, vec_rowmajor, ExactMatrix, ExactVector, NormOrder,
    PNormResult,
};
pub use real::{Precision, Real};
pub use structs::{fib_vector, fib_window, FibMatrix, FibMatrixKind, MultiplicityPattern};
pub use threshold::{
    minimal_exponent, norm_gap, threshold_exponent, verify_theorem, TheoremReport,
    ThresholdQuery,
};
