//! Exact population model for gaps across stages of Eratosthenes sieve.
//!
//! At stage p the surviving candidates are the units of Z mod p#, and the
//! differences between consecutive units form the cycle of gaps G(p#). This
//! crate constructs those cycles, takes exact censuses of gaps and their
//! driving terms (runs of consecutive gaps with a given sum), propagates the
//! populations to later stages through the banded transfer recurrence with
//! its Pascal eigenstructure, and aggregates gaps into last-digit residue
//! classes for any base, the statistic in which the bias between classes of
//! consecutive primes shows up.
//!
//! Modules:
//! - [`cycle`]: two independent constructors for G(p#)
//! - [`census`]: exact driving-term counts and their text format
//! - [`dynamics`]: exact and normalized stage-to-stage propagation
//! - [`eigen`]: Pascal eigensystem, closed-form expansion, polynomial model
//! - [`mertens`]: the decay parameter lambda, its bounds and inversion
//! - [`residue`]: digit-pair classes, asymptotic ratios, class aggregates
//! - [`primes`], [`pairs`]: segmented prime enumeration and observed
//!   last-digit pair counts

pub mod census;
pub mod cycle;
pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod mertens;
pub mod model;
pub mod pairs;
pub mod primes;
pub mod residue;

pub use census::{census_driving_terms, census_of_cycle, Census, CensusBuilder, DEFAULT_J_MAX};
pub use cycle::{enumerate_gap_cycle, fuse_cycle, materialize_cycle, GapCycle, GapStream};
pub use dynamics::{
    find_population_crossover, propagate_exact, propagate_normalized,
    propagate_normalized_capped, transfer_step,
    NormalizedCensus, PopulationVector, RatioVector, TransferMatrix, DEFAULT_EXACT_STEP_LIMIT,
};
pub use eigen::{
    closed_form_w1, eigen_basis, eigenvalue_products, poly_model, rational_to_f64, EigenSystem,
    PolynomialModel,
};
pub use error::{Error, Result};
pub use model::{
    build_class_model, build_curve_evaluator, class_curves, ClassModel, CurvePoint,
    CurveEvaluator,
};
pub use mertens::{
    lambda_bounds, lambda_exact, lambda_invert, mertens_c0, LambdaBounds, LambdaExact, Magnitude,
    EULER_MASCHERONI,
};
pub use pairs::{observed_class_ratios, pair_census, pair_census_skipping, PairCensus};
pub use primes::{first_n_primes, is_prime, primes_in, primorial, phi_primorial, PrimeStream};
pub use residue::{
    class_mean_asymptotic, class_ratios, class_ratios_exact, digit_pair_classes, w_infinity,
    w_infinity_table, ClassAggregate, ResidueScheme,
};
