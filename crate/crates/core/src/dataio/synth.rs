use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Normal};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::model::Dataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Isotropic Gaussian clusters centered on the unit circle.
    Blobs,
    /// Two concentric circles of radius 1 and 2.
    Rings,
    /// Two interleaved half circles.
    Moons,
    /// Two interleaved Archimedean spiral arms.
    Spirals,
}

impl std::str::FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blobs" => Ok(Shape::Blobs),
            "rings" => Ok(Shape::Rings),
            "moons" => Ok(Shape::Moons),
            "spirals" => Ok(Shape::Spirals),
            other => Err(Error::UnknownShape(other.to_string())),
        }
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Shape::Blobs => "blobs",
            Shape::Rings => "rings",
            Shape::Moons => "moons",
            Shape::Spirals => "spirals",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub shape: Shape,
    pub n: usize,
    /// Cluster count; only blobs honor values other than 2.
    pub classes: usize,
    /// Standard deviation of the Gaussian noise added to each coordinate.
    pub noise: f64,
    pub seed: u64,
}

impl SynthSpec {
    pub fn new(shape: Shape, n: usize, noise: f64, seed: u64) -> Self {
        Self {
            shape,
            n,
            classes: if shape == Shape::Blobs { 3 } else { 2 },
            noise,
            seed,
        }
    }

    pub fn with_classes(mut self, classes: usize) -> Self {
        self.classes = classes;
        self
    }

    fn class_count(&self) -> usize {
        match self.shape {
            Shape::Blobs => self.classes,
            _ => 2,
        }
    }
}

/// Generates a labeled 2-D dataset. Rows are grouped by class; class sizes
/// differ by at most one.
pub fn synth(spec: &SynthSpec) -> Result<Dataset> {
    let classes = spec.class_count();
    if classes == 0 || spec.n < classes {
        return Err(Error::InvalidParam(format!(
            "need n >= {classes} classes, got n = {}",
            spec.n
        )));
    }
    if !(spec.noise.is_finite() && spec.noise >= 0.0) {
        return Err(Error::InvalidParam(format!("noise must be >= 0, got {}", spec.noise)));
    }
    let mut rng = SplitMix64::seed_from_u64(spec.seed);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut rows = Vec::with_capacity(spec.n);
    let mut labels = Vec::with_capacity(spec.n);
    for class in 0..classes {
        let size = spec.n / classes + usize::from(class < spec.n % classes);
        for i in 0..size {
            // fraction along the class's curve, evenly spaced
            let u = if size > 1 { i as f64 / (size - 1) as f64 } else { 0.0 };
            let (x, y) = match spec.shape {
                Shape::Blobs => {
                    let a = 2.0 * PI * class as f64 / classes as f64;
                    (a.cos(), a.sin())
                }
                Shape::Rings => {
                    let r = (class + 1) as f64;
                    let t = 2.0 * PI * rng.random::<f64>();
                    (r * t.cos(), r * t.sin())
                }
                Shape::Moons => {
                    let t = PI * u;
                    if class == 0 {
                        (t.cos(), t.sin())
                    } else {
                        (1.0 - t.cos(), 0.5 - t.sin())
                    }
                }
                Shape::Spirals => {
                    let t = 0.5 * PI + 3.0 * PI * u;
                    let r = t / (3.5 * PI);
                    let phase = PI * class as f64;
                    (r * (t + phase).cos(), r * (t + phase).sin())
                }
            };
            let (nx, ny) = if spec.noise > 0.0 {
                (
                    spec.noise * normal.sample(&mut rng),
                    spec.noise * normal.sample(&mut rng),
                )
            } else {
                (0.0, 0.0)
            };
            rows.push(vec![x + nx, y + ny]);
            labels.push(class);
        }
    }
    Dataset::from_rows(spec.shape.to_string(), &rows, Some(labels))
}
