//! Exact q-expansions of modular forms on SL2(Z), Gamma_0(2) and Gamma_0(3),
//! congruence surveys of their constant terms, Siegel-type vanishing and gap
//! checks, and theta series of even lattices.

pub mod arith;
pub mod congruence;
pub mod defaults;
pub mod error;
pub mod forms;
pub mod quadratic;
pub mod series;
pub mod siegel;

pub use arith::{Integer, POrder, Rational};
pub use congruence::{ClauseVerdict, SurveyConfig, SurveyRecord, SurveyReport, Verdict};
pub use defaults::Scale;
pub use error::{Error, Result};
pub use forms::{parse_expr, Catalog, FormExpr, Generator};
pub use quadratic::{GramMatrix, ThetaSeries};
pub use series::QSeries;
pub use siegel::GapCheckResult;
