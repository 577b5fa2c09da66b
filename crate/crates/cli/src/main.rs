use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use tricensus::balls::enumerate_balls;
use tricensus::canon::automorphism_group;
use tricensus::census::{fvector_histogram, read_census, write_census, CensusRecord, Header};
use tricensus::decomp::{check_shelling, constructibility_certificate, find_shelling, is_vertex_decomposable, Constructibility, Shape};
use tricensus::enum2::{build_link_catalog, LinkCatalog};
use tricensus::enum3::{enumerate_3manifolds, EnumOptions};
use tricensus::topo::{classify, reduce, ReduceConfig};
use tricensus::{expected, Complex, Error, TopoType};

/// Default file name of the link catalog.
const CATALOG_FILE: &str = "links.census";

#[derive(Parser)]
#[command(name = "tricensus", version, about = "Census of small triangulated 3-manifolds and 3-balls")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the catalog of triangulated 2-spheres with 4 to 9 vertices.
    Enum2 {
        #[arg(long, default_value = CATALOG_FILE)]
        out: PathBuf,
    },
    /// Enumerate the triangulated closed 3-manifolds on exactly n vertices.
    Enum3 {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Directory for resumable progress.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Link catalog written by `enum2`; generated when absent.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Derive the 3-balls with m vertices from the census of (m+1)-vertex manifolds.
    Balls {
        #[arg(long)]
        vertices: usize,
        /// Census of manifolds with one more vertex.
        #[arg(long)]
        spheres: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Annotate f-vectors and topological types.
    Classify(Pass),
    /// Annotate automorphism group orders and vertex-transitivity.
    Autgroup(Pass),
    /// Annotate shellability; every found shelling is replayed.
    Shell(Pass),
    /// Annotate vertex-decomposability.
    Vd(Pass),
    /// Look for constructibility certificates of 3-balls.
    Constructible {
        #[arg(long)]
        input: PathBuf,
    },
    /// Reduce with bistellar flips and report which inputs reach the boundary of the 4-simplex.
    Bistellar {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = ReduceConfig::default().budget)]
        budget: usize,
    },
    /// Compare annotated census files against the published tables.
    Verify {
        #[arg(long, value_parser = ["paper"])]
        tables: String,
        /// Directory holding `manifolds<n>.census` and `balls<m>.census`.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(clap::Args)]
struct Pass {
    #[arg(long)]
    input: PathBuf,
    /// Output file; defaults to rewriting the input.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CheckpointMismatch(_) => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, msg: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn invariant(msg: String) -> Failure {
    Failure { code: 3, msg }
}

fn read_records(path: &Path) -> CliResult<(Header, Vec<CensusRecord>)> {
    let f = File::open(path).map_err(|e| Failure { code: 1, msg: format!("{}: {e}", path.display()) })?;
    read_census(BufReader::new(f)).map_err(|e| Failure { code: 1, msg: format!("{}: {e}", path.display()) })
}

fn write_records(path: &Path, dim: usize, n: usize, records: &[CensusRecord]) -> CliResult<()> {
    write_census(BufWriter::new(File::create(path)?), dim, n, records)?;
    Ok(())
}

fn load_catalog(path: Option<&Path>) -> CliResult<LinkCatalog> {
    match path {
        None => Ok(build_link_catalog()),
        Some(p) => {
            let (_, records) = read_records(p)?;
            Ok(LinkCatalog::from_spheres(records.into_iter().map(|r| r.form).collect())?)
        }
    }
}

fn type_index(t: Option<TopoType>) -> usize {
    TopoType::ALL.iter().position(|&x| Some(x) == t).unwrap_or(3)
}

fn type_summary(records: &[CensusRecord]) -> String {
    let mut counts = [0usize; 4];
    for r in records {
        counts[type_index(r.topo_type)] += 1;
    }
    TopoType::ALL
        .iter()
        .zip(counts)
        .filter(|&(_, c)| c > 0)
        .map(|(t, c)| format!("{c} {t}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_fvector_table(records: &[CensusRecord]) {
    println!("{:<16} {:>8} {:>8} {:>8} {:>10}", "f-vector", "All", "S3", "S2xS1", "S2twistS1");
    let cell = |c: usize| if c == 0 { "--".to_string() } else { c.to_string() };
    let mut totals = [0usize; 4];
    for (fv, row) in fvector_histogram(records) {
        for i in 0..4 {
            totals[i] += row[i];
        }
        println!("{:<16} {:>8} {:>8} {:>8} {:>10}", fv.to_string(), row.iter().sum::<usize>(), cell(row[0]), cell(row[1]), cell(row[2]));
    }
    println!("{:<16} {:>8} {:>8} {:>8} {:>10}", "Total:", totals.iter().sum::<usize>(), totals[0], cell(totals[1]), cell(totals[2]));
}

fn shape(k: &Complex) -> Shape {
    if k.ridge_degrees().iter().all(|&(_, c)| c == 2) {
        Shape::Sphere
    } else {
        Shape::Ball
    }
}

fn run_pass(pass: &Pass, f: impl Fn(&mut CensusRecord) -> CliResult<()> + Sync) -> CliResult<(Header, Vec<CensusRecord>)> {
    let (header, mut records) = read_records(&pass.input)?;
    records.par_iter_mut().map(&f).collect::<CliResult<()>>()?;
    write_records(pass.out.as_deref().unwrap_or(&pass.input), header.dim, header.n, &records)?;
    Ok((header, records))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Enum2 { out } => {
            let cat = build_link_catalog();
            let records: Vec<CensusRecord> = cat.spheres().iter().cloned().map(CensusRecord::new).collect();
            write_records(&out, 2, 9, &records)?;
            let sizes: Vec<String> =
                (4..=9).map(|n| format!("{n}: {}", cat.spheres().iter().filter(|s| s.n() == n).count())).collect();
            println!("{} triangulated 2-spheres ({})", records.len(), sizes.join(", "));
        }
        Command::Enum3 { vertices, out, jobs, checkpoint, catalog } => {
            let cat = load_catalog(catalog.as_deref())?;
            let opts = EnumOptions { jobs, checkpoint, max_units: None };
            let records = enumerate_3manifolds(vertices, &cat, &opts)?.expect("no unit limit");
            write_records(&out, 3, vertices, &records)?;
            print_fvector_table(&records);
            println!("{} manifolds: {}", records.len(), type_summary(&records));
        }
        Command::Balls { vertices, spheres, out } => {
            let (_, census) = read_records(&spheres)?;
            let forms = enumerate_balls(vertices, &census)?;
            let records: Vec<CensusRecord> = forms.into_iter().map(CensusRecord::new).collect();
            write_records(&out, 3, vertices, &records)?;
            println!("{} balls with {vertices} vertices", records.len());
        }
        Command::Classify(pass) => {
            let (_, records) = run_pass(&pass, |r| {
                let k = r.complex();
                let t = classify(&k)?;
                if !r.f_vector.satisfies_closed3_relations() {
                    return Err(invariant(format!("f-vector {} violates the closed 3-manifold relations", r.f_vector)));
                }
                if !tricensus::topo::walkup_check(&k, t) {
                    return Err(invariant(format!("{} violates the edge bound for {t}", r.form)));
                }
                r.topo_type = Some(t);
                Ok(())
            })?;
            print_fvector_table(&records);
            println!("{} manifolds: {}", records.len(), type_summary(&records));
        }
        Command::Autgroup(pass) => {
            let (_, records) = run_pass(&pass, |r| {
                let g = automorphism_group(&r.complex());
                r.group_order = Some(g.order);
                r.transitive = Some(g.transitive);
                Ok(())
            })?;
            let mut hist: BTreeMap<(Option<TopoType>, usize), (usize, usize)> = BTreeMap::new();
            for r in &records {
                let e = hist.entry((r.topo_type, r.group_order.unwrap())).or_default();
                e.0 += 1;
                e.1 += usize::from(r.transitive == Some(true));
            }
            println!("{:<10} {:>6} {:>8} {:>11}", "Manifold", "|G|", "Types", "transitive");
            for ((t, order), (count, trans)) in hist {
                let name = t.map_or("-", TopoType::as_str);
                println!("{name:<10} {order:>6} {count:>8} {trans:>11}");
            }
            let nontrivial = records.iter().filter(|r| r.group_order != Some(1)).count();
            println!("{nontrivial} of {} with a nontrivial group", records.len());
        }
        Command::Shell(pass) => {
            let (_, records) = run_pass(&pass, |r| {
                let k = r.complex();
                let s = find_shelling(&k, shape(&k))?;
                if let Some(s) = &s {
                    if !check_shelling(&k, s) {
                        return Err(invariant(format!("shelling of {} does not replay", r.form)));
                    }
                }
                r.shellable = Some(s.is_some());
                Ok(())
            })?;
            let bad = records.iter().filter(|r| r.shellable == Some(false)).count();
            println!("{} complexes, {bad} not shellable", records.len());
        }
        Command::Vd(pass) => {
            let (_, records) = run_pass(&pass, |r| {
                r.vd = Some(is_vertex_decomposable(&r.complex()));
                Ok(())
            })?;
            let bad = records.iter().filter(|r| r.vd == Some(false)).count();
            println!("{} complexes, {bad} not vertex-decomposable", records.len());
        }
        Command::Constructible { input } => {
            let (_, records) = read_records(&input)?;
            let certs: Vec<Option<Constructibility>> =
                records.par_iter().map(|r| constructibility_certificate(&r.complex())).collect::<tricensus::Result<_>>()?;
            let mut shellable = 0;
            let mut missing = 0;
            for (r, c) in records.iter().zip(&certs) {
                match c {
                    Some(Constructibility::Shellable(_)) => shellable += 1,
                    Some(Constructibility::Split { first, second, interface }) => {
                        println!("{}\tsplit {} + {} facets\tinterface {}", r.form, first.facets().len(), second.facets().len(), interface);
                    }
                    None => {
                        missing += 1;
                        println!("{}\tno certificate found", r.form);
                    }
                }
            }
            println!("{} balls: {shellable} shellable, {} split, {missing} without certificate", records.len(), records.len() - shellable - missing);
        }
        Command::Bistellar { input, seed, budget } => {
            let (_, records) = read_records(&input)?;
            let cfg = ReduceConfig { budget, ..ReduceConfig::default() };
            let results: Vec<_> = records
                .par_iter()
                .enumerate()
                .map(|(i, r)| reduce(&r.complex(), &cfg, seed.wrapping_add(i as u64)))
                .collect::<tricensus::Result<_>>()?;
            let mut certified = 0;
            for (r, red) in records.iter().zip(&results) {
                if red.certified_sphere {
                    certified += 1;
                } else {
                    println!("{}\treduced to {} in {} moves", r.form, red.complex.f_vector(), red.moves);
                }
                if let Some(t) = r.topo_type.filter(|&t| red.certified_sphere && t != TopoType::S3) {
                    return Err(invariant(format!("{} is typed {t} but reduces to the boundary of the 4-simplex", r.form)));
                }
            }
            println!("{certified} of {} reduced to the boundary of the 4-simplex", records.len());
        }
        Command::Verify { tables: _, dir } => {
            if !verify(&dir)? {
                return Err(invariant("census differs from the published tables".into()));
            }
        }
    }
    Ok(())
}

fn verify(dir: &Path) -> CliResult<bool> {
    let mut all_ok = true;
    let mut report = |name: String, ok: Option<bool>, detail: String| {
        let tag = match ok {
            Some(true) => "PASS",
            Some(false) => {
                all_ok = false;
                "FAIL"
            }
            None => "MISSING",
        };
        println!("{tag} {name}: {detail}");
    };
    let load = |name: String| -> CliResult<Option<Vec<CensusRecord>>> {
        let p = dir.join(name);
        if p.exists() {
            Ok(Some(read_records(&p)?.1))
        } else {
            Ok(None)
        }
    };
    for (n, all, s3, ss, tw) in expected::MANIFOLDS {
        let Some(records) = load(format!("manifolds{n}.census"))? else {
            report(format!("manifolds n={n}"), None, format!("manifolds{n}.census not found"));
            continue;
        };
        let mut c = [0usize; 4];
        for r in &records {
            c[type_index(r.topo_type)] += 1;
        }
        let ok = records.len() == all && c[..3] == [s3, ss, tw];
        report(format!("manifolds n={n}"), Some(ok), format!("{} ({})", records.len(), type_summary(&records)));
        if n == 10 {
            let hist = fvector_histogram(&records);
            for (fv, all, s3, ss, tw) in expected::TEN_VERTEX_ROWS {
                let got = hist.iter().find(|(k, _)| k.as_slice() == fv).map(|(_, v)| *v).unwrap_or_default();
                let ok = got.iter().sum::<usize>() == all && got[..3] == [s3, ss, tw];
                report(format!("n=10 f-vector {fv:?}"), Some(ok), format!("{got:?}"));
            }
        }
        if records.iter().all(|r| r.group_order.is_some()) {
            for t in TopoType::ALL {
                let want = expected::group_order_histogram(n, t);
                let mut got: BTreeMap<usize, usize> = BTreeMap::new();
                for r in records.iter().filter(|r| r.topo_type == Some(t)) {
                    *got.entry(r.group_order.unwrap()).or_default() += 1;
                }
                if !want.is_empty() || !got.is_empty() {
                    report(format!("groups n={n} {t}"), Some(got == want), format!("{got:?}"));
                }
            }
        }
    }
    for (m, all, nonshellable, not_vd) in expected::BALLS {
        let Some(records) = load(format!("balls{m}.census"))? else {
            report(format!("balls m={m}"), None, format!("balls{m}.census not found"));
            continue;
        };
        report(format!("balls m={m}"), Some(records.len() == all), format!("{}", records.len()));
        if records.iter().all(|r| r.shellable.is_some()) {
            let c = records.iter().filter(|r| r.shellable == Some(false)).count();
            report(format!("non-shellable balls m={m}"), Some(c == nonshellable), format!("{c}"));
        }
        if records.iter().all(|r| r.vd.is_some()) {
            let c = records.iter().filter(|r| r.vd == Some(false)).count();
            report(format!("not vertex-decomposable balls m={m}"), Some(c == not_vd), format!("{c}"));
        }
    }
    Ok(all_ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
