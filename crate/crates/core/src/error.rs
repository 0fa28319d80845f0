use thiserror::Error;

use crate::geom::Vec3;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate edge {edge}: consecutive vertices coincide")]
    DegenerateEdge { edge: usize },

    #[error("geometric degeneracy: {0}")]
    GeometricDegeneracy(String),

    #[error("components {a} and {b} are not disjoint (minimum distance {distance:e})")]
    DisjointnessViolation { a: usize, b: usize, distance: f64 },

    #[error("degenerate projection direction ({:.6}, {:.6}, {:.6}): {feature}", .direction.x, .direction.y, .direction.z)]
    DegenerateDirection { direction: Vec3, feature: String },

    #[error("parallel transport undefined at vertex {vertex}: consecutive tangents are anti-parallel")]
    IllDefinedTransport { vertex: usize },

    #[error("ambiguous twist increment of half a turn on edge {edge}; refine the framing")]
    AmbiguousTwist { edge: usize },

    #[error("random polygon generation failed after {attempts} attempts")]
    GenerationFailure { attempts: usize },

    #[error("pushoff intersects the centerline even at epsilon {epsilon:e}")]
    PushoffDegenerate { epsilon: f64 },

    #[error("edges are not anti-parallel and of equal length: {0}")]
    NotAntiParallel(String),

    #[error("translation sweep of B collides with A at step {step} (distance {distance:e})")]
    PathObstruction { step: usize, distance: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("edges {edge_a} and {edge_b} are not juxtaposed within tolerance (gap {gap:e})")]
    NotJuxtaposed { edge_a: usize, edge_b: usize, gap: f64 },

    #[error("self-reconnection leaves a component with {vertices} vertices")]
    DegenerateSplit { vertices: usize },

    #[error("flux tubes have unequal flux ({a} vs {b})")]
    UnequalFlux { a: f64, b: f64 },

    #[error("invalid framing: {0}")]
    InvalidFraming(String),

    #[error("curve file: {0}")]
    Format(String),
}
