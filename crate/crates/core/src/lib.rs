//! Certified computation of π and of S_k = Σ_{n≥1} 1/((kn)² − 1).
//!
//! S_k = [1 − (π/k)·cot(π/k)]/2, which makes S_k computable by direct
//! summation, by a ζ(2m) series, or in closed form, and turns around into
//! π = k·tan(π/k)·(1 − 2·S_k). With k = 6·2^j the tangent comes from
//! half-angle formulae seeded by √3, so π follows without knowing π.
//!
//! Every non-exact quantity is a [`Fixed`] interval whose radius is a proven
//! bound, and printed digits are only those the interval certifies.

pub mod error;
pub mod gregory;
pub mod numeric;
pub mod pi_engine;
pub mod rational;
pub mod series;
pub mod trig;

pub use error::{Error, Result};
pub use numeric::Fixed;
pub use pi_engine::{pi_from_sk, pi_iterative_refine, pi_reference_digits, PiResult, PiRoute};
pub use rational::Rational;
pub use series::{sk_closed_form, sk_direct, sk_zeta_series, SeriesResult, SkMethod};
pub use trig::{tan_ladder, LadderRung};
