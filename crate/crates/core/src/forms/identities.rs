//! Series identities between the level-two generators, checked coefficientwise.

use serde::Serialize;

use super::expansions::{e04, e_gamma2, e_inf4, eisenstein_g, j2, m2};
use crate::error::Result;
use crate::series::{product_expand, QSeries};

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// Number of coefficients compared.
    pub terms: usize,
    /// Exponent of the first disagreeing coefficient, if any.
    pub first_mismatch: Option<i64>,
    pub pass: bool,
}

fn compare(name: &'static str, lhs: &QSeries, rhs: &QSeries, terms: usize) -> IdentityCheck {
    let start = lhs.valuation().min(rhs.valuation());
    let reach = lhs.reach().min(rhs.reach());
    let mut first_mismatch = None;
    // Both sides must be known on the full window.
    let enough = reach - start >= terms as i64;
    for n in start..reach {
        if lhs.coeff(n).ok() != rhs.coeff(n).ok() {
            first_mismatch = Some(n);
            break;
        }
    }
    IdentityCheck { name, terms, first_mismatch, pass: enough && first_mismatch.is_none() }
}

/// `q prod (1-q^{2n})^8 prod_{n odd} (1-q^n)^{-8}` with `prec` coefficients.
pub fn einf4_product(prec: usize) -> Result<QSeries> {
    Ok(product_expand(|n| if n % 2 == 0 { 8 } else { -8 }, prec)?.shift(1))
}

/// Runs every identity with `terms` coefficients per side.
pub fn identity_suite(terms: usize) -> Result<Vec<IdentityCheck>> {
    let g4 = eisenstein_g(4, terms)?;
    let eg = e_gamma2(terms)?;
    let e0 = e04(terms)?;
    let ei = e_inf4(terms)?;
    let ei_inv = ei.invert()?;
    let jj = j2(terms)?;
    let c = |x: i64| crate::arith::rat(x);

    let sum = |k: i64| e0.add(&ei.scale(&c(k)));

    let m2_quotient = e0.mul(&ei_inv);
    let d_rhs = eg.mul(&e0).mul(&ei_inv).scale(&c(-1));
    let sixty_four = QSeries::monomial(0, c(64), terms - 1);

    Ok(vec![
        compare("G4 = E04 + 256 Einf4", &g4, &sum(256), terms),
        compare("Egamma2^2 = E04 + 64 Einf4", &eg.pow_int(2)?, &sum(64), terms),
        compare("Einf4 product expansion", &ei, &einf4_product(terms)?, terms),
        compare("D(j2) = -Egamma2 E04 / Einf4", &jj.derivative_d(), &d_rhs, terms),
        compare("m2 = E04 / Einf4", &m2(terms)?, &m2_quotient, terms),
        compare("j2 = m2 + 64", &jj, &m2_quotient.add(&sixty_four), terms),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Integer};
    use crate::series::{neg_power_einf4, neg_power_einf4_coeffs};
    use num_traits::Signed;
    use proptest::prelude::*;

    #[test]
    fn suite_passes_to_200_terms() {
        for check in identity_suite(200).unwrap() {
            assert!(check.pass, "{check:?}");
        }
    }

    #[test]
    fn corrupted_identity_is_detected() {
        let ei = e_inf4(20).unwrap();
        let bumped = ei.add(&QSeries::monomial(7, crate::arith::rat(1), 13));
        let check = compare("bumped", &ei, &bumped, 20);
        assert!(!check.pass);
        assert_eq!(check.first_mismatch, Some(7));
    }

    #[test]
    fn short_operands_do_not_pass() {
        let ei = e_inf4(5).unwrap();
        assert!(!compare("short", &ei, &ei, 10).pass);
    }

    #[test]
    fn neg_power_sign_alternation() {
        for s in 1..=64u64 {
            let r = neg_power_einf4_coeffs(s, 201);
            assert_eq!(r[0], int(1));
            for (n, x) in r.iter().enumerate() {
                assert!(x != &Integer::from(0), "R({n}) = 0 at s={s}");
                assert_eq!(x.is_negative(), n % 2 == 1, "sign of R({n}) at s={s}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            cases: 256,
            rng_seed: proptest::test_runner::RngSeed::Fixed(0xe14f),
            ..ProptestConfig::default()
        })]

        #[test]
        fn neg_power_matches_generic_power(s in 1u64..=8, prec in 1usize..=60) {
            let generic = e_inf4(prec).unwrap().pow_int(-(s as i64)).unwrap();
            prop_assert_eq!(neg_power_einf4(s, prec).unwrap(), generic);
        }
    }
}
