//! Exact symbolic computation for Cartier operators over prime-field
//! polynomial rings F_p[x_1..x_n]: Frobenius bracket powers, colon ideals,
//! the operator kappa^e and its composition law, maximum-norm gauges, and
//! growth analysis (complexity sequences, gauge-growth indicators, and the
//! consistency check tying bounded gauges to the complexity cap p^n).
//!
//! All arithmetic is exact; every summary statistic is windowed and labeled
//! with its window. The `parallel` feature (default) runs the per-level
//! scans on rayon with output identical to the sequential build.

pub mod algebra;
pub mod analysis;
pub mod cartier;
pub mod error;
pub mod exponent;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod monomial_ideal;
pub mod order;
pub mod parallel;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;
pub mod template;

pub use algebra::{AlgebraFamily, CartierAlgebraSpec, SubalgebraViolation, ValidationReport};
pub use analysis::{
    complexity_sequence, gauge_growth, lemma_fit, monomial_count_bound, new_generator_count,
    product_piece, theorem_consistency_check, ComplexityReport, ComplexityRow, ConsistencyReport,
    GaugeReport, GaugeRow, GaugeVerdict, LemmaFit, Trend,
};
pub use cartier::{gauge, gauge_excess, kappa_eval, CartierOperator, Exactness, GaugeValue};
pub use error::{Error, Result};
pub use exponent::{Degree, ExponentVector};
pub use groebner::GroebnerConfig;
pub use ideal::{ColonStrategy, Ideal, MinimalGenerators};
pub use order::{MonomialOrder, OrderKind};
pub use parse::{parse_ideal_list, parse_poly, parse_template, parse_template_list};
pub use poly::Polynomial;
pub use ring::{FpScalar, RingContext};
