//! Cohomology dimensions worked out by hand from the Euler sequence and
//! Serre duality, checked against both the closed form and the oracle.

use cone_hodge::catalog::bott_dimension;
use cone_hodge::oracle::{oracle_hodge_dimension, OracleBudget};

/// (n, p, q, m, dim H^q(P^n, Ω^p(m)))
const FROZEN: &[(usize, usize, usize, i64, u64)] = &[
    (1, 0, 0, 3, 4),
    (1, 0, 1, -2, 1),
    (1, 0, 1, -5, 4),
    (1, 1, 0, 2, 1),
    (1, 1, 0, 4, 3),
    (1, 1, 1, 0, 1),
    (1, 1, 1, -3, 4),
    (2, 0, 0, 2, 6),
    (2, 0, 2, -3, 1),
    (2, 0, 2, -5, 6),
    (2, 1, 0, 1, 0),
    (2, 1, 0, 2, 3),
    (2, 1, 0, 3, 8),
    (2, 1, 1, 0, 1),
    (2, 1, 1, 1, 0),
    (2, 1, 2, -3, 8),
    (2, 2, 0, 4, 3),
    (2, 2, 2, 0, 1),
    (2, 2, 2, -4, 15),
    (3, 1, 0, 2, 6),
    (3, 2, 0, 3, 4),
    (3, 1, 1, 0, 1),
    (3, 2, 2, 0, 1),
    (3, 3, 3, -1, 4),
];

#[test]
fn closed_form_matches_hand_values() {
    for &(n, p, q, m, dim) in FROZEN {
        assert_eq!(bott_dimension(n, p, q, m).unwrap(), dim, "H^{q}(P^{n}, Ω^{p}({m}))");
    }
}

#[test]
fn oracle_matches_hand_values() {
    for &(n, p, q, m, dim) in FROZEN {
        let h = oracle_hodge_dimension(n, p, m, OracleBudget::default()).unwrap();
        assert_eq!(h[q], dim, "H^{q}(P^{n}, Ω^{p}({m}))");
    }
}

#[test]
fn hodge_diamond_of_p3_is_diagonal() {
    for p in 0..=3 {
        for q in 0..=3 {
            assert_eq!(bott_dimension(3, p, q, 0).unwrap(), u64::from(p == q));
        }
    }
}
