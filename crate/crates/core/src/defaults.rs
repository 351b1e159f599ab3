//! Default ranges. `DESK` keeps every suite within minutes; `FULL` restores the
//! ranges of the original surveys and can take hours.

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Scale {
    /// Coefficients compared by the identity suite.
    pub identity_terms: usize,
    /// Largest level-two weight in the Satz and gap suites.
    pub h_max_level2: i64,
    /// Largest level-one weight in the Satz suite.
    pub h_max_level1: i64,
    /// Random combinations per weight in the gap suite.
    pub gap_random: usize,
    /// Seed for the gap suite combinations.
    pub gap_seed: u64,
    /// Largest `n` in the coefficientwise comparisons of `j`, `1/Delta`.
    pub coefficient_n_max: usize,
    /// Largest `n` in the `Delta` versus `1/j` comparison.
    pub reciprocal_n_max: usize,
    /// Largest `s` in the `Delta^{-s}` theorem check.
    pub delta_power_s_max: u64,
    /// Largest exponent in `E_{inf,4}^{-2^x}`.
    pub einf4_power_s_max: u64,
    /// Largest level-one weight searched for `r(1,h) = 2^x` instances.
    pub power_of_two_h_max: i64,
    /// Coefficients in the theta suite.
    pub theta_terms: usize,
}

pub const DESK: Scale = Scale {
    identity_terms: 200,
    h_max_level2: 40,
    h_max_level1: 36,
    gap_random: 20,
    gap_seed: 0x5eed_2024,
    coefficient_n_max: 512,
    reciprocal_n_max: 512,
    delta_power_s_max: 80,
    einf4_power_s_max: 64,
    power_of_two_h_max: 200,
    theta_terms: 50,
};

pub const FULL: Scale = Scale {
    identity_terms: 1000,
    h_max_level2: 100,
    h_max_level1: 100,
    gap_random: 50,
    gap_seed: 0x5eed_2024,
    coefficient_n_max: 2470,
    reciprocal_n_max: 4096,
    delta_power_s_max: 320,
    einf4_power_s_max: 256,
    power_of_two_h_max: 400,
    theta_terms: 200,
};

pub fn scale(full: bool) -> Scale {
    if full {
        FULL
    } else {
        DESK
    }
}
