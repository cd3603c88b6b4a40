use std::path::Path;

use etale::catalogue::{self, ListedModularData};
use etale::condensation::{condense, find_nimreps, Matrix};
use etale::etale_classifier::{classify, parse_algebra, Verdict};
use etale::fusion_ring::{fpdim, validate_ring, FusionRing};
use etale::modular_data::{build, canonical_orbits, count_mfcs, enumerate_conformal, format_rational};
use etale::physics::{catalogue_pool, gapped_phase_report, match_realization, parse_realization};
use etale::report::{self, Mismatch};

use crate::output::{render, scalar, Table};
use crate::{Cli, Command, Failure, MfcsAction, RingsAction};

type Outcome = Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let f = cli.format;
    match &cli.command {
        Command::Rings { action } => match action {
            RingsAction::List => emit(&[rings_list()?], f),
            RingsAction::Show { ring } => emit(&rings_show(&load_ring(ring)?)?, f),
            RingsAction::Export { ring, output } => {
                let text = load_ring(ring)?.to_json();
                match output {
                    Some(path) => std::fs::write(path, text + "\n")?,
                    None => println!("{text}"),
                }
                Ok(())
            }
        },
        Command::Mfcs { action: MfcsAction::Count { ring, denom_bound } } => {
            let r = load_ring(ring)?;
            emit(&mfcs_count(ring, &r, *denom_bound)?, f)
        }
        Command::Characters { ring } => emit(&[characters(&load_ring(ring)?)?], f),
        Command::Conformal { ring, character, denom_bound } => {
            let r = load_ring(ring)?;
            emit(&[conformal(ring, &r, *character, *denom_bound)?], f)
        }
        Command::Classify { ring, md, check } => classify_cmd(cli, ring, md.md, md.all, *check),
        Command::Condense { ring, algebra, md } => {
            let r = load_ring(ring)?;
            emit(&condense_cmd(ring, &r, algebra, *md)?, f)
        }
        Command::Nimrep { ring, algebra, rank } => {
            let r = load_ring(ring)?;
            let a = parse_algebra(&r, algebra)?;
            if *rank == Some(0) {
                return Err(Failure::Usage("--rank must be positive".into()));
            }
            let reps = find_nimreps(&r, &a, *rank, cli.budget)?;
            let mut tables = Vec::new();
            for (k, rep) in reps.iter().enumerate() {
                let mut t = Table::new(format!("NIM-rep {} (rank {})", k + 1, rep.rank()), &["object", "matrix"]);
                for (i, m) in rep.n.iter().enumerate() {
                    t.row([r.label(i).to_string(), matrix(m)]);
                }
                tables.push(t);
            }
            if tables.is_empty() {
                let mut t = Table::new(format!("NIM-reps of {} over {}", a.display(&r), r.name()), &["count"]);
                t.row(["0"]);
                tables.push(t);
            }
            emit(&tables, f)
        }
        Command::Gsd { ring, algebra } => {
            let r = load_ring(ring)?;
            let a = parse_algebra(&r, algebra)?;
            let reps = find_nimreps(&r, &a, None, cli.budget)?;
            let mut t = Table::new(
                format!("gapped phases of {} condensing {}", r.name(), a.display(&r)),
                &["nimrep", "GSD", "ssb", "broken", "witnesses"],
            );
            for (k, rep) in reps.iter().enumerate() {
                let g = gapped_phase_report(&r, rep);
                let broken: Vec<&str> = g.broken.iter().map(|&c| r.label(c)).collect();
                let witnesses: Vec<String> =
                    g.witnesses.iter().map(|&(c, m)| format!("{}|m{}", r.label(c), m + 1)).collect();
                t.row([(k + 1).to_string(), g.gsd.to_string(), g.ssb.to_string(), broken.join(" "), witnesses.join(" ")]);
            }
            emit(&[t], f)
        }
        Command::Match { dims, h } => {
            let (labels, d, hs) = parse_realization(&std::fs::read_to_string(dims)?, &std::fs::read_to_string(h)?)?;
            let found = match_realization(&labels, &d, &hs, &catalogue_pool()?)?;
            let mut t = Table::new("realization", &["field", "value"]);
            match found {
                Some(m) => {
                    t.row(["source".to_string(), m.source]);
                    t.row(["character".to_string(), m.character.to_string()]);
                    t.row(["conformal".to_string(), m.conformal.to_string()]);
                    for (obj, label) in m.mapping {
                        t.row([format!("object {obj}"), label]);
                    }
                }
                None => t.row(["source", "no match"]),
            }
            emit(&[t], f)
        }
        Command::Summary { check } => summary(cli, *check),
    }
}

fn emit(tables: &[Table], format: crate::output::Format) -> Outcome {
    render(tables, format)?;
    Ok(())
}

/// A bundled ring by name or slug, or a ring file on disk.
fn load_ring(arg: &str) -> Result<FusionRing, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let ring = FusionRing::from_json(&std::fs::read_to_string(path)?)?;
        let report = validate_ring(&ring);
        if !report.is_pass() {
            let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            return Err(Failure::Usage(format!("invalid ring: {}", msgs.join("; "))));
        }
        return Ok(ring);
    }
    Ok(catalogue::ring(arg)?)
}

fn matrix(m: &Matrix) -> String {
    m.iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

fn rings_list() -> Result<Table, Failure> {
    let mut t = Table::new("bundled rings", &["slug", "name", "rank", "FPdim"]);
    for slug in catalogue::slugs() {
        let r = catalogue::ring(slug)?;
        t.row([slug.to_string(), r.name().to_string(), r.rank().to_string(), scalar(&fpdim(&r)?.total)]);
    }
    Ok(t)
}

fn rings_show(r: &FusionRing) -> Result<Vec<Table>, Failure> {
    let fp = fpdim(r)?;
    let mut objects = Table::new(format!("{} (FPdim {})", r.name(), scalar(&fp.total)), &["object", "dual", "FPdim"]);
    for i in 0..r.rank() {
        objects.row([r.label(i).to_string(), r.label(r.dual(i)).to_string(), scalar(&fp.per_object[i])]);
    }
    let mut products = Table::new("fusion rules", &["product", "result"]);
    for i in 1..r.rank() {
        for j in i..r.rank() {
            products.row([format!("{}*{}", r.label(i), r.label(j)), r.format_sum(&r.product(i, j))]);
        }
    }
    Ok(vec![objects, products])
}

fn headers_with<'a>(first: &'a str, r: &'a FusionRing, last: &[&'a str]) -> Vec<&'a str> {
    std::iter::once(first).chain(r.labels().iter().map(String::as_str)).chain(last.iter().copied()).collect()
}

fn characters(r: &FusionRing) -> Result<Table, Failure> {
    let chars = catalogue::characters(r)?;
    let mut t = Table::new(format!("real characters of {}", r.name()), &headers_with("#", r, &[]));
    for (k, c) in chars.iter().enumerate() {
        t.row(std::iter::once((k + 1).to_string()).chain(c.iter().map(scalar)));
    }
    Ok(t)
}

fn denom_bound(arg: &str, given: Option<u32>) -> Result<u32, Failure> {
    match given {
        Some(0) => Err(Failure::Usage("--denom-bound must be positive".into())),
        Some(n) => Ok(n),
        None => catalogue::reference(arg)
            .map(|r| r.denom_bound)
            .map_err(|_| Failure::Usage("--denom-bound is required for rings outside the catalogue".into())),
    }
}

fn mfcs_count(arg: &str, r: &FusionRing, bound: Option<u32>) -> Result<Vec<Table>, Failure> {
    let bound = denom_bound(arg, bound)?;
    let chars = catalogue::characters(r)?;
    let count = count_mfcs(r, &chars, bound)?;
    let mut per = Table::new(format!("{} (denominators dividing {bound})", r.name()), &["character", "orbits", "MFCs"]);
    for (k, &o) in count.orbits.iter().enumerate() {
        per.row([(k + 1).to_string(), o.to_string(), (2 * o).to_string()]);
    }
    let mut total = Table::new("total", &["MFCs", "factorization"]);
    total.row([count.total.to_string(), count.factorization()]);
    Ok(vec![per, total])
}

fn conformal(arg: &str, r: &FusionRing, character: usize, bound: Option<u32>) -> Result<Table, Failure> {
    let bound = denom_bound(arg, bound)?;
    let chars = catalogue::characters(r)?;
    let d = character
        .checked_sub(1)
        .and_then(|k| chars.get(k))
        .ok_or_else(|| Failure::Usage(format!("character index must be in 1..={}", chars.len())))?;
    let hs = canonical_orbits(r, d, &enumerate_conformal(r, d, bound)?)?;
    let mut t = Table::new(
        format!("conformal dimensions of {} for character {character}, up to automorphisms fixing d", r.name()),
        &headers_with("#", r, &["c mod 8"]),
    );
    for (k, h) in hs.iter().enumerate() {
        let md = build(r, d, h)?;
        t.row(
            std::iter::once((k + 1).to_string())
                .chain(h.iter().map(format_rational))
                .chain(std::iter::once(format_rational(&md.central_charge))),
        );
    }
    Ok(t)
}

/// Listed modular data for bundled rings.
fn listed(arg: &str) -> Result<Vec<ListedModularData>, Failure> {
    catalogue::slug_of(arg).map_err(|_| Failure::Usage(format!("`{arg}` has no bundled modular data")))?;
    Ok(catalogue::listed_modular_data(arg)?)
}

fn pick_md(mds: &[ListedModularData], index: usize) -> Result<&ListedModularData, Failure> {
    index
        .checked_sub(1)
        .and_then(|k| mds.get(k))
        .ok_or_else(|| Failure::Usage(format!("modular data index must be in 1..={}", mds.len())))
}

fn verdict_table(r: &FusionRing, index: usize, listed: &ListedModularData, verdicts: &[Verdict]) -> Table {
    let mut t = Table::new(
        format!(
            "md {index}: character {}, conformal vector {}, c = {}",
            listed.character,
            listed.conformal,
            format_rational(&listed.md.central_charge)
        ),
        &["algebra", "FPdim(A)", "status", "reason"],
    );
    for v in verdicts {
        let reasons: Vec<String> = v.failures.iter().map(|x| x.describe(r)).collect();
        t.row([v.candidate.display(r), scalar(&v.candidate.fpdim), v.status.to_string(), reasons.join("; ")]);
    }
    t
}

fn etale_table(name: &str, c: &[report::EtaleEntry], anisotropic: Option<bool>) -> Table {
    let mut t = Table::new(
        format!(
            "connected étale algebras of {name} (completely anisotropic: {})",
            anisotropic.map_or("undetermined".into(), |a| if a { "yes".to_string() } else { "no".to_string() })
        ),
        &["algebra", "B_A", "rank", "lagrangian"],
    );
    for e in c {
        t.row([e.algebra.clone(), e.category.clone(), e.rank.to_string(), e.lagrangian.to_string()]);
    }
    t
}

fn mismatch_table(mismatches: &[Mismatch]) -> Table {
    let mut t = Table::new("reference mismatches", &["ring", "field", "expected", "actual"]);
    for m in mismatches {
        t.row([m.ring.clone(), m.field.clone(), m.expected.clone(), m.actual.clone()]);
    }
    t
}

fn classify_cmd(cli: &Cli, arg: &str, md: Option<usize>, all: bool, check: bool) -> Outcome {
    let r = load_ring(arg)?;
    let mds = listed(arg)?;
    let mut tables = Vec::new();
    if all || check {
        let c = report::classify_listed(arg)?;
        if all {
            for (k, (l, v)) in c.per_md.iter().enumerate() {
                tables.push(verdict_table(&r, k + 1, l, v));
            }
        } else {
            let k = md.unwrap_or(1);
            let l = pick_md(&mds, k)?;
            tables.push(verdict_table(&r, k, l, &classify(&r, &l.md)?));
        }
        tables.push(etale_table(r.name(), &c.etale, c.anisotropic));
        if check {
            let mismatches = report::compare_etale(r.name(), &c.etale, c.anisotropic, &catalogue::reference(arg)?);
            if !mismatches.is_empty() {
                tables.push(mismatch_table(&mismatches));
                emit(&tables, cli.format)?;
                return Err(Failure::Mismatch);
            }
        }
    } else {
        let k = md.unwrap_or(1);
        let l = pick_md(&mds, k)?;
        tables.push(verdict_table(&r, k, l, &classify(&r, &l.md)?));
    }
    emit(&tables, cli.format)
}

fn condense_cmd(arg: &str, r: &FusionRing, algebra: &str, md: usize) -> Result<Vec<Table>, Failure> {
    let mds = listed(arg)?;
    let l = pick_md(&mds, md)?;
    let a = parse_algebra(r, algebra)?;
    let res = condense(r, &l.md, &a)?;
    let m = res.module_rank();
    let sector = |b: usize| format!("m{}", b + 1);
    let mut branching = Table::new(format!("restriction of {} by A = {}", r.name(), a.display(r)), &["object", "image"]);
    for j in 0..r.rank() {
        let terms: Vec<String> = (0..m)
            .filter(|&b| res.branching[j][b] > 0)
            .map(|b| if res.branching[j][b] == 1 { sector(b) } else { format!("{}{}", res.branching[j][b], sector(b)) })
            .collect();
        branching.row([r.label(j).to_string(), terms.join("+")]);
    }
    let mut nim = Table::new("NIM-rep", &["object", "matrix"]);
    for (i, n) in res.nimrep.n.iter().enumerate() {
        nim.row([r.label(i).to_string(), matrix(n)]);
    }
    let mut sectors = Table::new("sectors", &["sector", "d", "lifts", "h", "phase"]);
    for b in 0..m {
        let lifts: Vec<&str> = (0..r.rank()).filter(|&j| res.branching[j][b] > 0).map(|j| r.label(j)).collect();
        sectors.row([
            sector(b),
            scalar(&res.module_dims[b]),
            lifts.join("+"),
            res.sector_h[b].as_ref().map_or("-".into(), format_rational),
            if res.unconfined.contains(&b) { "unconfined".into() } else { "confined".to_string() },
        ]);
    }
    let mut summary = Table::new("result", &["quantity", "value"]);
    let labels = |v: &[usize]| v.iter().map(|&j| r.label(j)).collect::<Vec<_>>().join(" ");
    summary.row(["rank(B_A)".to_string(), m.to_string()]);
    summary.row(["rank(B0_A)".to_string(), res.unconfined.len().to_string()]);
    summary.row(["FPdim(B_A)".to_string(), scalar(&res.fpdim_ba)]);
    summary.row(["FPdim(B0_A)".to_string(), scalar(&res.fpdim_ba0)]);
    summary.row(["identified".to_string(), res.identified.iter().map(|c| labels(c).replace(' ', "=")).collect::<Vec<_>>().join(" ")]);
    summary.row(["split".to_string(), labels(&res.split)]);
    summary.row(["B_A".to_string(), res.ba.clone().unwrap_or_else(|| "unrecognized".into())]);
    summary.row(["B0_A".to_string(), res.ba0.clone().unwrap_or_else(|| "unrecognized".into())]);
    Ok(vec![branching, nim, sectors, summary])
}

fn summary(cli: &Cli, check: bool) -> Outcome {
    let mut t = Table::new(
        "catalogue overview",
        &["ring", "rank", "FPdim", "characters", "MFCs", "factorization", "candidates", "etale", "anisotropic"],
    );
    let mut mismatches = Vec::new();
    for slug in catalogue::slugs() {
        let s = report::ring_summary(slug)?;
        let reference = catalogue::reference(slug)?;
        let candidates = match reference.candidate_count_derived {
            Some(_) => format!("{} (printed {})", s.candidates, reference.candidate_count),
            None => s.candidates.to_string(),
        };
        let etale: Vec<String> = s.etale.iter().map(|e| e.algebra.clone()).collect();
        t.row([
            s.name.clone(),
            s.rank.to_string(),
            scalar(&s.fpdim_total),
            s.characters.to_string(),
            s.mfcs.total.to_string(),
            s.factorization.clone(),
            candidates,
            etale.join(", "),
            s.anisotropic.map_or("undetermined".into(), |a| if a { "yes".into() } else { "no".to_string() }),
        ]);
        if check {
            mismatches.extend(report::compare_summary(&s, &reference)?);
        }
    }
    let mut tables = vec![t];
    if !mismatches.is_empty() {
        tables.push(mismatch_table(&mismatches));
        emit(&tables, cli.format)?;
        return Err(Failure::Mismatch);
    }
    emit(&tables, cli.format)
}
