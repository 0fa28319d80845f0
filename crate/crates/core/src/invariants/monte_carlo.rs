use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{random_direction, CurveSystem, PolygonalCurve};
use crate::error::{Error, Result};
use crate::invariants::projection::{perturb, Projector};

/// Directions drawn per independent RNG stream.
pub const CHUNK: usize = 4096;
const MAX_RETRIES: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
    /// Draws that were degenerate and replaced by a perturbed direction.
    pub perturbed: usize,
}

/// One row of a running Monte Carlo trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub samples: usize,
    pub estimate: f64,
    pub stderr: f64,
}

fn chunk_values(system: &CurveSystem, seed: u64, chunk: usize, len: usize) -> Result<(Vec<i32>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    let mut projector = Projector::new(system);
    let mut out = Vec::with_capacity(len);
    let mut perturbed = 0;
    for _ in 0..len {
        let nu = random_direction(&mut rng);
        let mut value = projector.count(nu);
        let mut tries = 0;
        while let Err(Error::DegenerateDirection { .. }) = value {
            tries += 1;
            if tries > MAX_RETRIES {
                return Err(Error::DegenerateDirection {
                    direction: nu,
                    feature: "no generic perturbation found".into(),
                });
            }
            value = projector.count(perturb(nu, &mut rng, tries as u32 - 1));
        }
        if tries > 0 {
            perturbed += 1;
        }
        out.push(value? as i32);
    }
    Ok((out, perturbed))
}

/// Directional writhe ω_ν for `samples` seeded uniform directions, in draw order.
pub fn directional_writhe_samples(curve: &PolygonalCurve, samples: usize, seed: u64) -> Result<(Vec<i32>, usize)> {
    let system = CurveSystem::single(curve.clone());
    let chunks: Vec<(usize, usize)> = (0..samples.div_ceil(CHUNK))
        .map(|c| (c, CHUNK.min(samples - c * CHUNK)))
        .collect();
    let parts = chunks
        .par_iter()
        .map(|&(c, len)| chunk_values(&system, seed, c, len))
        .collect::<Result<Vec<_>>>()?;
    let perturbed = parts.iter().map(|p| p.1).sum();
    Ok((parts.into_iter().flat_map(|p| p.0).collect(), perturbed))
}

fn stats(sum: i128, sum_sq: i128, n: usize) -> (f64, f64) {
    let nf = n as f64;
    let mean = sum as f64 / nf;
    if n < 2 {
        return (mean, f64::INFINITY);
    }
    // exact integer numerator of the sample variance
    let num = sum_sq * n as i128 - sum * sum;
    let var = num as f64 / (nf * (nf - 1.0));
    (mean, (var / nf).sqrt())
}

/// Writhe as the mean of the directional writhe over random directions, with
/// its standard error.
pub fn writhe_monte_carlo(curve: &PolygonalCurve, samples: usize, seed: u64) -> Result<MonteCarloEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let (values, perturbed) = directional_writhe_samples(curve, samples, seed)?;
    let sum: i128 = values.iter().map(|&v| v as i128).sum();
    let sum_sq: i128 = values.iter().map(|&v| (v as i128) * (v as i128)).sum();
    let (estimate, stderr) = stats(sum, sum_sq, samples);
    Ok(MonteCarloEstimate {
        estimate,
        stderr,
        samples,
        perturbed,
    })
}

/// Running estimate after each power-of-two sample count up to `samples`
/// (and at `samples` itself).
pub fn writhe_monte_carlo_trace(curve: &PolygonalCurve, samples: usize, seed: u64) -> Result<Vec<TracePoint>> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let (values, _) = directional_writhe_samples(curve, samples, seed)?;
    let mut out = Vec::new();
    let (mut sum, mut sum_sq) = (0i128, 0i128);
    let mut next = 1;
    for (k, &v) in values.iter().enumerate() {
        sum += v as i128;
        sum_sq += (v as i128) * (v as i128);
        let n = k + 1;
        if n == next || n == samples {
            let (estimate, stderr) = stats(sum, sum_sq, n);
            out.push(TracePoint { samples: n, estimate, stderr });
            while next <= n {
                next *= 2;
            }
        }
    }
    Ok(out)
}
