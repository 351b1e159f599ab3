//! Constant-term congruence rules, surveys over families of forms, and
//! coefficientwise comparisons of `j`, `Delta` and their reciprocals.

pub mod rules;
pub mod coefficients;
pub mod survey;

pub use rules::{classify_conductor1, classify_conductor2, classify_conductor3, deviation_rules, ClauseVerdict, Verdict};
pub use coefficients::{delta_pn_compare, lehner_check, reciprocal_compare};
pub use survey::{run_survey, SurveyConfig, SurveyRecord, SurveyReport};
