use std::collections::BTreeSet;

use etale::catalogue;
use etale::modular_data::{brute_force_conformal, canonical_orbits, count_mfcs, enumerate_conformal};

fn matches_reference(slug: &str) {
    let ring = catalogue::ring(slug).unwrap();
    let reference = catalogue::reference(slug).unwrap();
    let chars = catalogue::characters(&ring).unwrap();
    for (c, d) in chars.iter().enumerate() {
        let hs = enumerate_conformal(&ring, d, reference.denom_bound).unwrap();
        let found: BTreeSet<_> = canonical_orbits(&ring, d, &hs).unwrap().into_iter().collect();
        let listed = reference.conformal_for(c).unwrap();
        let expected: BTreeSet<_> = canonical_orbits(&ring, d, &listed).unwrap().into_iter().collect();
        assert_eq!(expected.len(), listed.len(), "{slug}: listed vectors share an orbit");
        assert_eq!(found, expected, "{slug} character {}", c + 1);
    }
}

fn matches_brute_force(slug: &str) {
    let ring = catalogue::ring(slug).unwrap();
    let l = catalogue::reference(slug).unwrap().denom_bound;
    for d in catalogue::characters(&ring).unwrap() {
        assert_eq!(enumerate_conformal(&ring, &d, l).unwrap(), brute_force_conformal(&ring, &d, l).unwrap(), "{slug}");
    }
}

#[test]
fn vec_z6_reference() {
    matches_reference("vec_z6");
}

#[test]
fn z2_ising_reference() {
    matches_reference("z2_ising");
}

#[test]
fn su3_2_reference() {
    matches_reference("su3_2");
}

#[test]
fn tricrit_ising_reference() {
    matches_reference("tricrit_ising");
}

#[test]
fn su2_5_reference() {
    matches_reference("su2_5");
}

#[test]
fn so5_2_reference() {
    matches_reference("so5_2");
}

#[test]
fn fib_psu2_5_reference() {
    matches_reference("fib_psu2_5");
}

#[test]
fn psu2_11_reference() {
    matches_reference("psu2_11");
}

#[test]
fn brute_force_agrees_on_small_bounds() {
    for slug in ["vec_z6", "su3_2", "z2_ising", "so5_2"] {
        matches_brute_force(slug);
    }
}

#[test]
fn counts_and_factorizations() {
    for slug in ["vec_z6", "z2_ising", "su3_2", "so5_2", "psu2_11"] {
        let ring = catalogue::ring(slug).unwrap();
        let reference = catalogue::reference(slug).unwrap();
        let chars = catalogue::characters(&ring).unwrap();
        let count = count_mfcs(&ring, &chars, reference.denom_bound).unwrap();
        assert_eq!(count.total, reference.mfc_count, "{slug}");
        assert_eq!(count.factorization(), reference.factorization, "{slug}");
    }
}
