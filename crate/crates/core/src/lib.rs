//! Granular-ball generation and ball-level clustering.
//!
//! A granular ball summarizes a subset of instances by its mean center, its
//! average radius and its maximum radius. This crate generates ball sets with
//! three strategies ([`generation`]), clusters the balls by density peaks or
//! spectral embedding ([`cluster`]), and scores the result against ground
//! truth ([`metrics`]).
//!
//! ```
//! use granball::{dataio, generation, cluster, metrics, QualityParams};
//!
//! let data = dataio::synth(&dataio::SynthSpec::new(dataio::Shape::Blobs, 300, 0.05, 7)).unwrap();
//! let balls = generation::generate_pojg(&data, &QualityParams::new(1.0, 0.3).unwrap()).unwrap();
//! let assignment = cluster::gbdpc(&balls, 3, 0.3).unwrap();
//! let acc = metrics::clustering_accuracy(&assignment.instance_labels, data.labels().unwrap()).unwrap();
//! assert!(acc > 0.99);
//! ```

pub mod cli;
pub mod cluster;
pub mod dataio;
pub mod division;
pub mod error;
pub mod generation;
pub mod metrics;
pub mod model;
pub mod quality;

pub use error::{Error, Result};
pub use model::{euclidean, make_ball, validate_partition, Dataset, GBSet, GranularBall};
pub use quality::QualityParams;
