//! Six-dimensional spinor algebra over the complex numbers.
//!
//! The core identifies antisymmetric pairs of four-spinors with six-vectors
//! through a fixed set of connecting operators, and builds on that: the
//! SL(4,C) → SO(6,C) double cover, real slices, curvature spin-tensors,
//! bivector geometry, and an eight-dimensional extension carrying an
//! octonion multiplication.

#![no_std]
#![cfg_attr(docsrs, feature(doc_cfg))]
#![allow(clippy::needless_range_loop, clippy::many_single_char_names)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod bivgeo;
pub mod cover;
pub mod curvature;
pub mod linalg;
pub mod norden;
pub mod octo;
pub mod realforms;
pub mod report;
pub mod sample;
pub mod tensors;

pub use report::Check;
pub use tensors::{ComplexTensor, Epsilon4, Tolerance, C64};
