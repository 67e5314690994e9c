//! Exact symbolic engine for differential calculi on kappa-Minkowski space.
//!
//! The ambient arena is a Weyl super-algebra over truncated power series in
//! the deformation scale `a0` with Gaussian-rational coefficients:
//! coordinates `x[mu]`, derivatives `del[mu]`, one-forms `dx[mu]` and their
//! duals `q[mu]`, normally ordered. On top of it the crate
//!
//! * builds operator realizations of the deformed coordinate algebra
//!   `[xhat[0], xhat[j]] = i a0 xhat[j]`, of exterior derivatives and their
//!   one-forms (the five-dimensional bicovariant calculus and two
//!   shift-parameter families), and of the Lorentz generators;
//! * verifies every defining commutation relation, closure property and
//!   Jacobi identity exactly, order by order in `a0`;
//! * implements the module action of the Lorentz generators on noncommutative
//!   polynomials (normal ordering, vacuum symbols, coproduct legs).
//!
//! Nothing here is numerical: every check is an identity of truncated series
//! with exact rational arithmetic.

pub mod action;
pub mod coeff;
pub mod context;
pub mod element;
pub mod error;
mod linsolve;
pub mod monomial;
pub mod ncexpr;
pub mod realization;
pub mod scalar;
pub mod series;
pub mod verifier;

pub use action::{ActionEngine, Leg, DEFAULT_MAX_DEGREE};
pub use coeff::Coefficient;
pub use context::{Context, GenFamily, GeneratorRef};
pub use element::Element;
pub use error::{AlgebraError, Result};
pub use monomial::Monomial;
pub use ncexpr::{NCAtom, NCExpression, NCWord, PbwRules};
pub use realization::{Family, Realization, SymKey};
pub use scalar::GaussRat;
pub use series::{
    series_exp, series_inverse, series_log, series_pow, series_sqrt_one_plus, shift_generator,
    shift_power, ScalarSeries,
};
pub use verifier::{
    all_required_pass, closure_detect, closure_table_text, default_c_values, run_suite,
    sensitivity_reports, Category, CheckParams, CheckReport, CheckStatus, ClosureReport, Suite,
    SuiteConfig, DEFAULT_SAMPLES, DEFAULT_SEED,
};
