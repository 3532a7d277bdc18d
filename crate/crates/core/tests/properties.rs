mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smith_form_matches_determinantal_divisors(rows in small_matrix()) {
        check_determinantal(&rows)?;
    }

    #[test]
    fn fox_identity_on_random_words(w in word(3, 14), imgs in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 3)) {
        check_fox(&w, &imgs)?;
    }

    #[test]
    fn fox_identity_on_fox_matrix(w in word(3, 12)) {
        check_fox_matrix(&w)?;
    }

    #[test]
    fn gcd_divides_exactly(p in laurent2(), q in laurent2(), r in laurent2()) {
        check_gcd(&p, &q, &r)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pachner_walks_preserve_homology_and_pairings(moves in prop::collection::vec((any::<bool>(), any::<usize>()), 1..8)) {
        check_pachner(whitehead(), &moves)?;
    }

    #[test]
    fn pachner_walks_on_figure_eight(moves in prop::collection::vec((any::<bool>(), any::<usize>()), 1..8)) {
        check_pachner(figure8(), &moves)?;
    }

    #[test]
    fn shortcut_euler_matches_cells(a in -3i64..=3, b in -3i64..=3) {
        check_shortcut(whitehead(), &[a, b])?;
    }

    #[test]
    fn certificates_replay(a in -2i64..=2, b in -2i64..=2, seed in 0u64..1000) {
        check_replay(&[a, b], seed)?;
    }
}
