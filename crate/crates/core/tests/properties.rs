//! Randomised exact checks over six bases.

mod common;

use common::*;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(2000))]

    #[test]
    fn orbits_stay_in_domain(input in raw()) {
        orbit_containment(input)?;
    }

    #[test]
    fn digit_order_follows_real_order(input in raw_pair()) {
        order_correspondence(input)?;
    }

    #[test]
    fn admissibility_matches_digit_map(input in digit_seed()) {
        admissibility_consistency(input)?;
    }

    #[test]
    fn expansions_round_trip(input in raw()) {
        round_trip(input)?;
    }

    #[test]
    fn exact_arithmetic(input in raw_pair()) {
        field_arithmetic(input)?;
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn antimorphism_square_is_morphism(
        input in (substitution_images(), prop::collection::vec(0usize..2, 0..6), prop::collection::vec(0usize..2, 0..6))
    ) {
        antimorphism_square(input)?;
    }

    #[test]
    fn fixed_point_windows_extend(radius in 4usize..40) {
        fixed_point_extension(radius)?;
    }
}
