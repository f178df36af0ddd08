//! Iterative point cloud filtering on the CPU.
//!
//! The crate implements the full pipeline for training and running an
//! iterative displacement-based point cloud denoiser:
//!
//! - [`geometry`] — point clouds, triangle meshes, normalization, kd-tree
//!   nearest-neighbor queries, farthest point sampling and mesh sampling.
//! - [`noisegen`] — seeded synthetic noise models (isotropic/anisotropic
//!   Gaussian, discrete, Laplace, uniform-in-sphere).
//! - [`graph`] — patch extraction and directed kNN graph construction.
//! - [`nn`] — a small reverse-mode autodiff engine with the tensor ops the
//!   network needs, plus Adam and parameter checkpoints.
//! - [`filter`] — the stacked iteration-module network, its noise schedule,
//!   training losses and the training loop.
//! - [`stitch`] — Gaussian-weighted patch stitching over a full cloud.
//! - [`metrics`] — Chamfer distance, point-to-mesh distance and distance
//!   histograms.
//!
//! Everything is deterministic given the seeds carried in configs; see
//! [`rng`] for the pinned generator.

pub mod error;
pub mod filter;
pub mod geometry;
pub mod graph;
pub mod metrics;
pub mod nn;
pub mod noisegen;
pub mod rng;
pub mod shapes;
pub mod stitch;

pub use error::{Error, Result};
