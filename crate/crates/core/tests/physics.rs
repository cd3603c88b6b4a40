use etale::catalogue;
use etale::condensation::{find_nimreps, NimRep, DEFAULT_BUDGET};
use etale::etale_classifier::parse_algebra;
use etale::physics::{catalogue_pool, gapped_phase_report, match_realization, parse_realization};
use num_rational::BigRational;

const M7_15_DIMS: &str = include_str!("../data/match/m7_15_phi51.dims");
const M7_15_H: &str = include_str!("../data/match/m7_15_phi51.h");
const M7_13_DIMS: &str = include_str!("../data/match/m7_13_phi12.dims");
const M7_13_H: &str = include_str!("../data/match/m7_13_phi12.h");

#[test]
fn regular_nimreps_break_every_nonunit_object() {
    for ring in catalogue::rings() {
        let report = gapped_phase_report(&ring, &NimRep::regular(&ring));
        assert_eq!(report.gsd, 6);
        assert!(report.ssb);
        assert_eq!(report.broken, (1..6).collect::<Vec<_>>(), "{}", ring.name());
        // Each witness column really differs from the identity column.
        for &(c, a) in &report.witnesses {
            let col: Vec<u32> = (0..6).map(|b| ring.n(c, a, b)).collect();
            assert_ne!(col, (0..6).map(|b| u32::from(a == b)).collect::<Vec<_>>());
        }
    }
}

#[test]
fn so5_phase_has_six_vacua_and_breaks_symmetry() {
    let ring = catalogue::ring("so5_2").unwrap();
    let a = parse_algebra(&ring, "1+X").unwrap();
    for rep in find_nimreps(&ring, &a, None, DEFAULT_BUDGET).unwrap() {
        let report = gapped_phase_report(&ring, &rep);
        assert_eq!(report.gsd, 6);
        assert!(report.ssb);
        // X acts trivially on A-modules.
        assert!(!report.broken.contains(&1));
    }
}

#[test]
fn su2_5_realization() {
    let (labels, d, h) = parse_realization(M7_15_DIMS, M7_15_H).unwrap();
    let pool = catalogue_pool().unwrap();
    let m = match_realization(&labels, &d, &h, &pool).unwrap().unwrap();
    assert_eq!((m.source.as_str(), m.character, m.conformal), ("su(2)_5", 5, 2));
    let pairs: Vec<(&str, &str)> = m.mapping.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    assert_eq!(pairs, [("1", "L11"), ("X", "L16"), ("Y", "L15"), ("Z", "L12"), ("V", "L13"), ("W", "L14")]);
}

#[test]
fn psu2_11_realization() {
    let (labels, d, h) = parse_realization(M7_13_DIMS, M7_13_H).unwrap();
    let pool = catalogue_pool().unwrap();
    let m = match_realization(&labels, &d, &h, &pool).unwrap().unwrap();
    assert_eq!((m.source.as_str(), m.character, m.conformal), ("psu(2)_11", 1, 1));
}

#[test]
fn perturbed_conformal_dimensions_do_not_match() {
    let pool = catalogue_pool().unwrap();
    let shift = BigRational::new(1.into(), 100.into());
    for (dims, hs) in [(M7_15_DIMS, M7_15_H), (M7_13_DIMS, M7_13_H)] {
        let (labels, d, h) = parse_realization(dims, hs).unwrap();
        for i in 0..h.len() {
            let mut moved = h.clone();
            moved[i] += &shift;
            assert_eq!(match_realization(&labels, &d, &moved, &pool).unwrap(), None);
        }
    }
}
