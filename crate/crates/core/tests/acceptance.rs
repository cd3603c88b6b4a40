//! Acceptance run: one pass/fail line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use etale::catalogue;
use etale::condensation::{condense, find_nimreps, NimRep, DEFAULT_BUDGET};
use etale::etale_classifier::{enumerate_candidates, parse_algebra};
use etale::exactnum::{embed, parse_cyclo, Cyclo};
use etale::fusion_ring::{automorphisms, fpdim, validate_ring, FusionRing};
use etale::modular_data::{build, count_mfcs, frac};
use etale::physics::{catalogue_pool, gapped_phase_report, match_realization, parse_realization};
use etale::report::classify_listed;
use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn criterion_1() -> Check {
    for slug in catalogue::slugs() {
        let ring = catalogue::ring(slug).map_err(|e| e.to_string())?;
        let report = validate_ring(&ring);
        ensure!(report.is_pass(), "{slug}: invariant failure");
        let total = fpdim(&ring).map_err(|e| e.to_string())?.total;
        let expected = catalogue::reference(slug).unwrap().fpdim_total_exact().map_err(|e| e.to_string())?;
        ensure!(total == expected, "{slug}: FPdim {total} != {expected}");
    }
    Ok("8 rings valid, FPdim totals exact".into())
}

fn criterion_2() -> Check {
    let mut counts = Vec::new();
    for slug in catalogue::slugs() {
        let ring = catalogue::ring(slug).unwrap();
        let found = catalogue::characters(&ring).map_err(|e| e.to_string())?;
        let listed = catalogue::reference(slug).unwrap().characters_exact().map_err(|e| e.to_string())?;
        ensure!(found.len() == listed.len(), "{slug}: {} characters", found.len());
        ensure!(listed.iter().all(|c| found.contains(c)), "{slug}: listed character missing");
        counts.push(found.len());
    }
    ensure!(counts == [2, 4, 2, 4, 6, 2, 6, 6], "counts {counts:?}");
    Ok(format!("counts {counts:?}"))
}

fn criterion_3() -> Check {
    let mut verified = 0;
    let mut mutations = 0;
    for slug in catalogue::slugs() {
        let ring = catalogue::ring(slug).unwrap();
        let l = catalogue::reference(slug).unwrap().denom_bound;
        for x in catalogue::listed_modular_data(slug).map_err(|e| e.to_string())? {
            verified += 1;
            for obj in 1..ring.rank() {
                let mut d = x.md.d.clone();
                d[obj] = -&d[obj];
                ensure!(build(&ring, &d, &x.md.h).is_err(), "{slug}: negated d[{obj}] verifies");
                let mut h = x.md.h.clone();
                h[obj] = frac(&(&h[obj] + BigRational::new(1.into(), l.into())));
                ensure!(build(&ring, &x.md.d, &h).is_err(), "{slug}: shifted h[{obj}] verifies");
                mutations += 2;
            }
        }
    }
    Ok(format!("{verified} listed data verify, {mutations} single-entry mutations rejected"))
}

fn criterion_4() -> Check {
    let expected = [16, 96, 16, 128, 48, 16, 48, 24];
    let mut counts = Vec::new();
    for slug in catalogue::slugs() {
        let ring = catalogue::ring(slug).unwrap();
        let reference = catalogue::reference(slug).unwrap();
        let chars = catalogue::characters(&ring).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let count = count_mfcs(&ring, &chars, reference.denom_bound).map_err(|e| e.to_string())?;
        let secs = start.elapsed().as_secs_f64();
        ensure!(count.factorization() == reference.factorization, "{slug}: {}", count.factorization());
        if slug == "vec_z6" || slug == "so5_2" {
            ensure!(secs < 60.0, "{slug}: enumeration took {secs:.1}s");
        }
        counts.push(count.total);
    }
    ensure!(counts == expected, "counts {counts:?}");
    Ok(format!("counts {counts:?}, factorizations match"))
}

/// Candidates by floating-point testing over `n_j ≤ 6`.
fn brute_force_candidates(ring: &FusionRing) -> BTreeSet<Vec<u32>> {
    let r = ring.rank();
    let dims: Vec<f64> = (0..r)
        .map(|i| {
            let m = DMatrix::from_fn(r, r, |j, k| ring.n(i, j, k) as f64);
            m.complex_eigenvalues().iter().map(|z| z.re).fold(f64::MIN, f64::max)
        })
        .collect();
    let total: f64 = dims.iter().map(|d| d * d).sum();
    let mut out = BTreeSet::new();
    for code in 0..7u32.pow(r as u32 - 1) {
        let mut n = vec![1u32];
        let mut x = code;
        for _ in 1..r {
            n.push(x % 7);
            x /= 7;
        }
        let s: f64 = n.iter().zip(&dims).map(|(&k, d)| k as f64 * d).sum();
        if s * s < total {
            out.insert(n);
        }
    }
    out
}

fn criterion_5() -> Check {
    let mut printed = Vec::new();
    let mut notes = Vec::new();
    for slug in catalogue::slugs() {
        let ring = catalogue::ring(slug).unwrap();
        let reference = catalogue::reference(slug).unwrap();
        let found: BTreeSet<Vec<u32>> =
            enumerate_candidates(&ring).map_err(|e| e.to_string())?.into_iter().map(|c| c.n).collect();
        ensure!(found == brute_force_candidates(&ring), "{slug}: oracle disagrees");
        ensure!(found.len() == reference.expected_candidate_count(), "{slug}: {} candidates", found.len());
        if found.len() != reference.candidate_count {
            notes.push(format!("{slug} prints {} derives {}", reference.candidate_count, found.len()));
        }
        if let Some(listed) = reference.candidates {
            let listed: BTreeSet<Vec<u32>> = listed.into_iter().map(|v| std::iter::once(1).chain(v).collect()).collect();
            for v in listed.difference(&found) {
                let replaced = found.difference(&listed).map(|w| format!("{:?}", &w[1..])).collect::<Vec<_>>();
                notes.push(format!("{slug} lists {:?}, derived {}", &v[1..], replaced.join(" ")));
            }
        }
        printed.push(reference.candidate_count);
    }
    ensure!(printed == [6, 6, 9, 10, 12, 12, 94, 14], "printed counts {printed:?}");
    Ok(format!("counts {printed:?}; {}", notes.join("; ")))
}

fn criterion_6() -> Check {
    for slug in catalogue::slugs() {
        let c = classify_listed(slug).map_err(|e| e.to_string())?;
        let nontrivial: Vec<&str> = c.etale.iter().filter(|e| e.algebra != "1").map(|e| e.algebra.as_str()).collect();
        ensure!(c.etale.iter().all(|e| !e.lagrangian), "{slug}: Lagrangian algebra");
        if slug == "so5_2" {
            ensure!(nontrivial == ["1+X"] && c.anisotropic == Some(false), "{slug}: {nontrivial:?}");
        } else {
            ensure!(nontrivial.is_empty() && c.anisotropic == Some(true), "{slug}: {nontrivial:?}");
        }
    }
    Ok("only so(5)_2 has 1+X, no Lagrangian algebra".into())
}

fn so5_reference_nimrep() -> NimRep {
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
    let n_v: Vec<Vec<u32>> = (0..6).map(|a| (0..6).map(|b| u32::from((a == 5) != (b == 5))).collect()).collect();
    NimRep { n: vec![id.clone(), id, n_y, n_z, n_v.clone(), n_v] }
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let ring = catalogue::ring("so5_2").unwrap();
    let a = parse_algebra(&ring, "1+X").unwrap();
    let data = catalogue::listed_modular_data("so5_2").map_err(|e| e.to_string())?;
    let res = condense(&ring, &data[0].md, &a).map_err(|e| e.to_string())?;
    let label = |v: &[usize]| v.iter().map(|&j| ring.label(j).to_string()).collect::<Vec<_>>();
    // 1 and X both restrict to the vacuum; V and W are the only other identification.
    let identified: Vec<Vec<String>> = res.identified.iter().map(|c| label(c)).collect();
    ensure!(identified.len() == 2 && identified.contains(&vec!["V".into(), "W".into()]), "identified {identified:?}");
    ensure!(label(&res.split) == ["Y", "Z"], "split {:?}", res.split);
    ensure!(res.module_rank() == 6 && res.unconfined.len() == 5, "ranks {} {}", res.module_rank(), res.unconfined.len());
    ensure!(res.fpdim_ba0 == Cyclo::from_int(5), "FPdim(B0_A) = {}", res.fpdim_ba0);
    ensure!(res.ba.as_deref() == Some("TY(Z/5Z)"), "B_A {:?}", res.ba);
    ensure!(res.ba0.as_deref() == Some("Vec^1_{Z/5Z}"), "B0_A {:?}", res.ba0);
    ensure!(res.nimrep == so5_reference_nimrep().canonical(), "NIM-rep differs from reference matrices");
    let root5 = parse_cyclo("sqrt(5)").unwrap();
    let mut dims = res.module_dims.clone();
    dims.retain(|x| !x.is_one());
    ensure!(dims.len() == 1 && (dims[0] == root5 || dims[0] == -&root5), "module dims {:?}", res.module_dims);
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "took {secs:.1}s");
    Ok(format!("TY(Z/5Z), Vec^1_{{Z/5Z}}, module dims 1^5 and {} in {secs:.1}s", dims[0]))
}

fn criterion_8() -> Check {
    let mut phases = 0;
    for slug in catalogue::slugs() {
        let ring = catalogue::ring(slug).unwrap();
        let c = classify_listed(slug).map_err(|e| e.to_string())?;
        for entry in &c.etale {
            let a = parse_algebra(&ring, &entry.algebra).map_err(|e| e.to_string())?;
            for rep in find_nimreps(&ring, &a, None, DEFAULT_BUDGET).map_err(|e| e.to_string())? {
                let report = gapped_phase_report(&ring, &rep);
                ensure!(report.gsd == 6, "{slug} {}: GSD {}", entry.algebra, report.gsd);
                ensure!(report.ssb && !report.witnesses.is_empty(), "{slug} {}: no witness", entry.algebra);
                phases += 1;
            }
        }
    }
    Ok(format!("{phases} phases, GSD 6 and broken symmetry with witnesses"))
}

fn criterion_9() -> Check {
    let pool = catalogue_pool().map_err(|e| e.to_string())?;
    let cases = [
        (
            include_str!("../data/match/m7_15_phi51.dims"),
            include_str!("../data/match/m7_15_phi51.h"),
            ("su(2)_5", 5, 2),
            Some(["L11", "L16", "L15", "L12", "L13", "L14"]),
        ),
        (include_str!("../data/match/m7_13_phi12.dims"), include_str!("../data/match/m7_13_phi12.h"), ("psu(2)_11", 1, 1), None),
    ];
    let mut found = Vec::new();
    for (dims, hs, expected, mapping) in cases {
        let (labels, d, h) = parse_realization(dims, hs).map_err(|e| e.to_string())?;
        let m = match_realization(&labels, &d, &h, &pool).map_err(|e| e.to_string())?.ok_or("no match")?;
        ensure!((m.source.as_str(), m.character, m.conformal) == expected, "got {} {} {}", m.source, m.character, m.conformal);
        if let Some(mapping) = mapping {
            let got: Vec<&str> = m.mapping.iter().map(|(_, b)| b.as_str()).collect();
            ensure!(got == mapping, "mapping {got:?}");
        }
        found.push(format!("{} ({}, {})", m.source, m.character, m.conformal));
    }
    Ok(found.join(", "))
}

fn small_cyclo() -> impl Strategy<Value = Cyclo> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 7, 8, 12, 15]), prop::collection::vec((0i64..15, -6i64..7, 1i64..4), 1..4))
        .prop_map(|(n, terms)| {
            terms.into_iter().map(|(k, p, q)| Cyclo::root_of_unity(k, n).scale(&BigRational::new(p.into(), q.into()))).sum()
        })
}

fn criterion_10() -> Check {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&(small_cyclo(), small_cyclo(), small_cyclo()), |(a, b, c)| {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            Ok(())
        })
        .map_err(|e| format!("field axioms: {e}"))?;
    let mut runner = TestRunner::new(Config { cases: 256, failure_persistence: None, ..Config::default() });
    runner
        .run(&(small_cyclo(), 8u32..40), |(x, p)| {
            let v = x.to_c64().re;
            let e = embed(&x, p);
            let slack = 1e-9 * (1.0 + v.abs());
            prop_assert!(e.re.lo.to_f64().unwrap() - slack <= v && v <= e.re.hi.to_f64().unwrap() + slack);
            prop_assert!(e.re.encloses(&embed(&x, p + 8).re));
            Ok(())
        })
        .map_err(|e| format!("embedding: {e}"))?;
    for ring in catalogue::rings() {
        let group = automorphisms(&ring).map_err(|e| e.to_string())?;
        for g in &group {
            ensure!(group.iter().all(|h| group.contains(&g.compose(h))), "{}: group not closed", ring.name());
        }
        let a = parse_algebra(&ring, "1").unwrap();
        let found = find_nimreps(&ring, &a, Some(ring.rank()), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure!(found == vec![NimRep::regular(&ring).canonical()], "{}: regular NIM-rep not recovered", ring.name());
    }
    Ok("field axioms (1000), embedding soundness, automorphism closure, regular NIM-reps".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("catalogue validation", criterion_1),
        ("character counts", criterion_2),
        ("modular data verification", criterion_3),
        ("MFC counts", criterion_4),
        ("candidate counts", criterion_5),
        ("classification", criterion_6),
        ("so(5)_2 condensation", criterion_7),
        ("gapped phases", criterion_8),
        ("minimal-model matching", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} pass  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
