//! Splitting types on P¹: matrices of binary forms, kernels and cokernels
//! of their graded pieces, and the jumping-line test for sheaves on P².

mod binary;
mod jumping;
mod line;
mod splitting;

pub use binary::{restrict_form, BinaryForm};
pub use jumping::{jumping_test, jumping_test_windowed, JumpVerdict};
pub use line::LineP2;
pub use splitting::{coker_h0, coker_profile, kernel_dim, kernel_splitting, GradedMatrixP1, SplittingType};
