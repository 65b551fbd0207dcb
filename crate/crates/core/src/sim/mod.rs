//! Seeded generators and the recovery / Gaussianness experiments.

mod draws;
mod experiments;
mod key;
mod report;
mod rng;

pub use draws::{exponential_draws, normal_draws, normal_field};
pub use experiments::{
    experiment_1d, experiment_2d, experiment_gaussianness, experiment_key, GaussiannessParams,
    KeyParams, OneDParams, TwoDParams,
};
pub use key::{key_image, KEY_COLS, KEY_EDGE_PIXEL, KEY_ROWS};
pub use report::{ExperimentReport, Table};
pub use rng::Rng;
