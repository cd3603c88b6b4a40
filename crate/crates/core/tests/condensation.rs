use etale::catalogue;
use etale::condensation::{condense, find_nimreps, module_fusion, NimRep, DEFAULT_BUDGET};
use etale::etale_classifier::parse_algebra;
use etale::exactnum::{parse_cyclo, Cyclo};
use etale::modular_data::build;

fn reference_nimrep() -> NimRep {
    let id: Vec<Vec<u32>> = (0..6).map(|a| (0..6).map(|b| u32::from(a == b)).collect()).collect();
    let n_y = vec![
        vec![0, 0, 0, 1, 1, 0],
        vec![0, 0, 1, 0, 1, 0],
        vec![0, 1, 0, 1, 0, 0],
        vec![1, 0, 1, 0, 0, 0],
        vec![1, 1, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 2],
    ];
    let n_z = vec![
        vec![0, 1, 1, 0, 0, 0],
        vec![1, 0, 0, 1, 0, 0],
        vec![1, 0, 0, 0, 1, 0],
        vec![0, 1, 0, 0, 1, 0],
        vec![0, 0, 1, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 2],
    ];
    let n_v: Vec<Vec<u32>> =
        (0..6).map(|a| (0..6).map(|b| u32::from((a == 5) != (b == 5))).collect()).collect();
    NimRep { n: vec![id.clone(), id, n_y, n_z, n_v.clone(), n_v] }
}

#[test]
fn so5_nimrep_matches_reference_matrices() {
    let ring = catalogue::ring("so5_2").unwrap();
    let a = parse_algebra(&ring, "1+X").unwrap();
    let expected = reference_nimrep();
    assert!(expected.is_valid_for(&ring));
    let found = find_nimreps(&ring, &a, Some(6), DEFAULT_BUDGET).unwrap();
    assert_eq!(found, vec![expected.canonical()]);
    assert!(find_nimreps(&ring, &a, Some(4), DEFAULT_BUDGET).unwrap().is_empty());
}

#[test]
fn so5_free_images_give_reference_identifications() {
    let ring = catalogue::ring("so5_2").unwrap();
    let rep = reference_nimrep();
    let tensor = module_fusion(&ring, &rep, DEFAULT_BUDGET).unwrap();
    assert_eq!(tensor.len(), 1);
    // U(m) for every module: transpose of the free images.
    let w = rep.free_images();
    let lifts: Vec<String> = (0..6)
        .map(|b| {
            (0..6)
                .filter(|&j| w[j][b] > 0)
                .map(|j| ring.label(j))
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    assert_eq!(lifts, ["1+X", "Z", "Z", "Y", "Y", "V+W"]);
}

#[test]
fn so5_condensation_for_both_signs() {
    let ring = catalogue::ring("so5_2").unwrap();
    let reference = catalogue::reference("so5_2").unwrap();
    let a = parse_algebra(&ring, "1+X").unwrap();
    let chars = reference.characters_exact().unwrap();
    let mut seen_signs = Vec::new();
    for (c, d) in chars.iter().enumerate() {
        for h in reference.conformal_for(c).unwrap() {
            let md = build(&ring, d, &h).unwrap();
            let Ok(res) = condense(&ring, &md, &a) else { continue };
            assert_eq!(res.module_rank(), 6);
            assert_eq!(res.unconfined.len(), 5);
            assert_eq!(res.fpdim_ba0, Cyclo::from_int(5));
            assert_eq!(res.fpdim_ba, Cyclo::from_int(10));
            assert_eq!(res.ba.as_deref(), Some("TY(Z/5Z)"));
            assert_eq!(res.ba0.as_deref(), Some("Vec^1_{Z/5Z}"));
            let mut dims = res.module_dims.clone();
            let big = dims.iter().position(|x| !x.is_one()).unwrap();
            let sqrt5 = dims.remove(big);
            assert!(dims.iter().all(|x| x.is_one()));
            assert!(sqrt5 == parse_cyclo("sqrt(5)").unwrap() || sqrt5 == parse_cyclo("-sqrt(5)").unwrap());
            seen_signs.push(sqrt5);
        }
    }
    assert!(!seen_signs.is_empty());
}

#[test]
fn trivial_algebra_recovers_regular_representation_everywhere() {
    for ring in catalogue::rings() {
        let a = parse_algebra(&ring, "1").unwrap();
        let found = find_nimreps(&ring, &a, Some(ring.rank()), DEFAULT_BUDGET).unwrap();
        assert_eq!(found, vec![NimRep::regular(&ring).canonical()], "{}", ring.name());
        assert!(find_nimreps(&ring, &a, None, DEFAULT_BUDGET).unwrap().len() == 1);
    }
}
