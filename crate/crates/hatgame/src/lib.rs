//! Solver for Ebert's hat game with three players, three colors, and
//! asymmetric color probabilities.
//!
//! N players each receive a hat in one of Q colors, drawn independently from
//! a (possibly non-uniform) color distribution. Every player sees all hats
//! but their own and must simultaneously guess their own color or pass. The
//! team wins when at least one player guesses and no guess is wrong.
//!
//! Team strategies are characterized by *adequate sets*: sets of hat
//! configurations (the strategy's loss cases) in which every configuration
//! has some player whose observation line already contains Q-1 set elements.
//! This crate enumerates adequate sets exhaustively, groups them by digit
//! signature into patterns, decides pattern dominance over the sorted
//! probability simplex, evaluates the closed-form optimal winning
//! probabilities of the 3-player 3-color game, and synthesizes the concrete
//! per-player decision matrices that realize them.
//!
//! All probability arithmetic is generic over [`Scalar`], so every quantity
//! can be computed either in `f64` or exactly in arbitrary-precision
//! rationals ([`Rational`]).

pub mod adequate;
pub mod complexity;
pub mod error;
pub mod game;
pub mod patterns;
pub mod probability;
pub mod regions;
pub mod scalar;
pub mod strategy;

pub use adequate::{
    enumerate_adequate_sets, enumerate_adequate_sets_with_workers, find_min_das,
    find_min_das_with_workers, is_adequate, is_adequate_weak, phi, weak_only_sets,
    weak_only_sets_with_workers, AdequateSet,
};
pub use complexity::{complexity_report, format_scientific_6, ComplexityReport};
pub use error::{Error, Result};
pub use game::{
    decode_config, encode_config, line, permute_colors, permute_players, score, Code, GameShape,
    HatConfig, ScoreLineTable,
};
pub use patterns::{
    dominant_patterns, dominates, pattern_census, pattern_of, phi_of_pattern, phi_value_classes,
    signature_slots, DominanceAnalysis, DominanceResult, MonomialOrder, Pattern,
};
pub use probability::ProbabilityVector;
pub use regions::{
    alpha, classify, psi, region_boundaries, BoundaryRecord, Classification, Region, RegionLabel,
    SortedProbs,
};
pub use scalar::Scalar;
pub use strategy::{
    build_decision_matrix, evaluate_exact, representative_set, simulate, solve, solve_with_workers,
    Action, DecisionMatrix, OptimalStrategy, SimulationResult, Solution, SolveMode, StrategyReport,
};

/// Exact rational scalar; products and sums of fraction-valued
/// probabilities never round.
pub type Rational = num::BigRational;

/// Probability vector in floating point.
pub type FloatProbs = ProbabilityVector<f64>;

/// Probability vector in exact rationals.
pub type ExactProbs = ProbabilityVector<Rational>;
