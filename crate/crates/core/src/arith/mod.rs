//! Arithmetic of the congruence tower: Frobenius traces of a CM curve, the
//! prime set, cover degrees, face-count and genus bounds.

pub mod curve;
pub mod primes;
pub mod tower;

pub use curve::EllipticCurve;
pub use primes::{first_special_primes, is_prime, is_special, legendre, primes_below, special_density, special_primes};
pub use tower::{
    betti_lower_bound, face_bound, genus_from_primes, genus_gamma0, tower_degree, tower_report, whitehead_faces, BettiBound, FaceBound, TowerReport,
    TowerRow,
};

use rayon::prelude::*;

/// Good primes below `limit` where the traces disagree with the residue
/// symbol test `a_p = 0 ⟺ (−7/p) = −1`; empty when they agree.
pub fn deuring_mismatches(limit: u64) -> Vec<u64> {
    let e = EllipticCurve::cm49();
    primes_below(limit)
        .into_par_iter()
        .filter(|&p| p != 7 && p != 2)
        .filter(|&p| {
            let zero = e.ap(p).expect("good prime") == 0;
            let inert = legendre(-7, p as i64).expect("odd prime") == -1;
            zero != inert
        })
        .collect()
}

/// `special_primes` with every emitted prime checked to have `a_p = 0`.
pub fn special_primes_checked(limit: u64) -> Vec<u64> {
    let e = EllipticCurve::cm49();
    let ps = special_primes(limit);
    ps.par_iter().for_each(|&p| assert_eq!(e.ap(p).expect("good prime"), 0, "a_{p} is nonzero"));
    ps
}
