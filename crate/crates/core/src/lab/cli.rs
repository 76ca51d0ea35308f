//! Command-line front end.
//!
//! Every subcommand also accepts `--config <path>`: a file of `key = value`
//! lines, each read as the flag `--key value`. Flags given on the command line
//! win over the file. `key = true` stands for a bare switch.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::cover::{essential_girth, MultiGraph, VoltageGraph};
use super::experiments::{cheeger_trend, elek_experiment, luck_experiment, mayer_vietoris_check};
use super::report::{ExpectedLimit, ExperimentReport, Value};
use crate::error::{Error, Result};
use crate::mmspace::{cheeger_radius_r, parse_space, related_measures, CheegerMode, CheegerOptions, FiniteMMSpace};
use crate::mmspace::PointedMeasurePair;
use crate::nerve::{net_to_nerve, NerveParams};
use crate::numeric::{format_decimal, parse_rational, Rational};
use crate::sampling::{forest_sample, thin, Automorphism, ForestParams, ThinningParams};
use crate::simplicial::{
    betti_numbers, generators, glue_weighted, local_profile, profile_distance, SimplicialComplex, WeightedFamily,
};

#[derive(Parser, Debug)]
#[command(name = "nervelab", version, about = "Betti numbers, nerves and experiments on complexes and finite spaces")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers of a complex file.
    Betti {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        up_to: usize,
    },
    /// Radius-r local profile of a complex, optionally compared with another.
    Profile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        radius: usize,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Glue weighted copies of complexes; `--member path=weight`, repeated.
    Glue {
        #[arg(long = "member", required = true)]
        members: Vec<String>,
        #[arg(long, default_value_t = 1)]
        multiplier: i64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Staged thinning of a space into a separated net.
    Thin {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Net, random radii, nerve and its Betti numbers.
    Nerve {
        #[command(flatten)]
        net: NetArgs,
        /// Spacing of a greedy witness subsample; all points when absent.
        #[arg(long)]
        witness_density: Option<f64>,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        /// Build the full nerve instead of the reduced core.
        #[arg(long)]
        no_collapse: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Normalised Betti numbers along cyclic covers of a wedge of loops.
    Luck {
        #[arg(long, default_value_t = 2)]
        wedge: usize,
        /// Cover degrees, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        cyclic: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long)]
        expected_limit: Option<String>,
        #[arg(long, default_value = "user supplied")]
        provenance: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Normalised Betti numbers and profile distances along a family.
    Elek {
        /// Complex files, in family order.
        #[arg(long)]
        input: Vec<PathBuf>,
        /// Side lengths of triangulated torus grids, used when no input is given.
        #[arg(long, value_delimiter = ',')]
        torus: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long = "radius", value_delimiter = ',', default_value = "2")]
        radii: Vec<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Radius-r Cheeger constant of a space, or its trend over circles.
    Cheeger {
        #[arg(long)]
        space: Option<PathBuf>,
        /// Circle circumferences, used when no space is given.
        #[arg(long, value_delimiter = ',')]
        circle: Vec<String>,
        #[arg(long, default_value = "1/2")]
        step: String,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = 24)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Mayer-Vietoris inequality for two full subcomplexes.
    Mvcheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        u: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        v: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Random forest on a window of the free-by-cyclic group.
    Forest {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        cutoff: usize,
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 8)]
        hi: i64,
        #[arg(long, default_value_t = 4)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tabulate same-component frequencies over this many seeds.
        #[arg(long)]
        draws: Option<u64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Decide whether two pointed measures on a space are related.
    Relate {
        #[arg(long)]
        space: PathBuf,
        /// Point weights, comma separated rationals.
        #[arg(long, value_delimiter = ',', required = true)]
        mu1: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        mu2: Vec<String>,
        #[arg(long)]
        p1: usize,
        #[arg(long)]
        p2: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        radius: f64,
    },
    /// Shortest cycle of the 1-skeleton of a complex.
    Girth {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct OutArg {
    /// Output path; reports also get a `.json` mirror. Standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct NetArgs {
    #[arg(long)]
    space: PathBuf,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 5)]
    stages: u32,
    /// Candidate intensity per unit volume; `4 / eps` when absent.
    #[arg(long)]
    intensity: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Heuristic,
}

/// Runs the command line `argv` (program name first) and returns the exit status.
pub fn run_cli(argv: &[String]) -> i32 {
    let argv = match expand_config(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Splices `--config` files in right after the subcommand name, so later
/// command-line flags override them.
fn expand_config(argv: &[String]) -> Result<Vec<String>> {
    let mut rest = Vec::new();
    let mut from_file = Vec::new();
    let mut i = 0;
    while i < argv.len() {
        let a = &argv[i];
        let path = if a == "--config" {
            i += 1;
            Some(argv.get(i).ok_or_else(|| Error::contract("--config needs a path"))?.clone())
        } else {
            a.strip_prefix("--config=").map(str::to_string)
        };
        match path {
            Some(p) => from_file.extend(config_args(&std::fs::read_to_string(&p)?)?),
            None => rest.push(a.clone()),
        }
        i += 1;
    }
    let at = rest.len().min(2);
    rest.splice(at..at, from_file);
    Ok(rest)
}

fn config_args(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::parse(i + 1, "expected `key = value`"))?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        if key.is_empty() {
            return Err(Error::parse(i + 1, "empty key"));
        }
        match value {
            "true" => out.push(format!("--{key}")),
            "false" => {}
            _ => {
                out.push(format!("--{key}"));
                out.push(value.to_string());
            }
        }
    }
    Ok(out)
}

fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    SimplicialComplex::parse(&std::fs::read_to_string(path)?)
}

fn read_space(path: &Path) -> Result<FiniteMMSpace> {
    parse_space(&std::fs::read_to_string(path)?)
}

fn rational(text: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| Error::Malformed(format!("not a rational number: {text:?}")))
}

fn emit_text(out: &OutArg, text: String) -> Result<String> {
    match &out.out {
        Some(p) => {
            std::fs::write(p, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn emit_report(out: &OutArg, report: &ExperimentReport) -> Result<String> {
    match &out.out {
        Some(p) => {
            report.write(p)?;
            Ok(String::new())
        }
        None => Ok(report.to_csv()),
    }
}

fn thinning(net: &NetArgs) -> Result<ThinningParams> {
    let intensity = match &net.intensity {
        Some(s) => rational(s)?,
        None => NerveParams::new(net.eps, net.seed).intensity,
    };
    Ok(ThinningParams { eps: net.eps, stages: net.stages, intensity, seed: net.seed })
}

/// Greedy subsample in index order with pairwise distances at least `spacing`.
fn greedy_witnesses(space: &FiniteMMSpace, spacing: f64) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut blocked = vec![false; space.len()];
    for x in 0..space.len() {
        if blocked[x] {
            continue;
        }
        chosen.push(x);
        for y in space.ball(x, spacing, false) {
            blocked[y] = true;
        }
    }
    chosen
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn dispatch(command: Command) -> Result<String> {
    match command {
        Command::Betti { input, up_to } => {
            let k = read_complex(&input)?;
            let k = if up_to + 1 > k.max_dim() { k.with_max_dim(up_to + 1) } else { k };
            Ok(format!("{}\n", join(&betti_numbers(&k, up_to)?)))
        }
        Command::Profile { input, radius, against } => {
            let p = local_profile(&read_complex(&input)?, radius)?;
            let mut text = String::new();
            let _ = writeln!(text, "classes {}", p.class_count());
            for (code, mass) in p.masses() {
                let hex: String = code.iter().map(|b| format!("{b:02x}")).collect();
                let _ = writeln!(text, "{} {hex}", format_decimal(mass));
            }
            if let Some(q) = against {
                let q = local_profile(&read_complex(&q)?, radius)?;
                let _ = writeln!(text, "distance {}", format_decimal(&profile_distance(&p, &q)?));
            }
            Ok(text)
        }
        Command::Glue { members, multiplier, out } => {
            let mut family = Vec::new();
            for m in &members {
                let (path, w) = m.split_once('=').ok_or_else(|| Error::contract(format!("member {m:?} is not path=weight")))?;
                family.push((read_complex(Path::new(path))?, rational(w)?));
            }
            let glued = glue_weighted(&WeightedFamily::new(family, multiplier)?);
            emit_text(&out, glued.to_text())
        }
        Command::Thin { net, out } => {
            let space = read_space(&net.space)?;
            let config = thin(&space, &thinning(&net)?)?;
            emit_text(&out, config.to_text())
        }
        Command::Nerve { net, witness_density, max_dim, no_collapse, out } => {
            let space = read_space(&net.space)?;
            let t = thinning(&net)?;
            let params = NerveParams {
                eps: net.eps,
                intensity: t.intensity,
                stages: t.stages,
                seed: t.seed,
                max_dim,
                witnesses: witness_density.map(|w| greedy_witnesses(&space, w)),
                collapse: !no_collapse,
            };
            let run = net_to_nerve(&space, &params)?;
            let d = &run.diagnostics;
            let mut text = String::new();
            let _ = writeln!(text, "betti {}", join(&run.betti));
            let _ = writeln!(text, "net_size {}", d.net_size);
            let _ = writeln!(text, "separated {}", d.separated);
            let _ = writeln!(text, "covering_radius {:?}", d.covering_radius);
            let _ = writeln!(text, "max_degree {}", d.max_degree);
            let _ = writeln!(text, "v0 {}", format_decimal(&d.v0));
            let _ = writeln!(text, "v1 {}", format_decimal(&d.v1));
            let _ = writeln!(text, "degree_bound_holds {}", d.degree_bound_holds);
            let _ = writeln!(text, "core_vertices {}", d.core_vertices);
            emit_text(&out, text)
        }
        Command::Luck { wedge, cyclic, degree, expected_limit, provenance, out } => {
            let chain = cyclic.iter().map(|&n| VoltageGraph::cyclic_wedge(wedge, n)).collect::<Result<Vec<_>>>()?;
            let limit = match expected_limit {
                Some(s) => Some(ExpectedLimit { value: rational(&s)?, provenance }),
                None => None,
            };
            let mut report = luck_experiment(&chain, degree, limit)?;
            report.param("wedge", wedge);
            emit_report(&out, &report)
        }
        Command::Elek { input, torus, degree, radii, out } => {
            let family = if input.is_empty() {
                if torus.iter().any(|&n| n < 3) {
                    return Err(Error::contract("torus grids need side at least 3"));
                }
                torus.iter().map(|&n| generators::triangulated_torus(n)).collect()
            } else {
                input.iter().map(|p| read_complex(p)).collect::<Result<Vec<_>>>()?
            };
            emit_report(&out, &elek_experiment(&family, degree, &radii)?)
        }
        Command::Cheeger { space, circle, step, radius, mode, cap, seed, out } => {
            let options = CheegerOptions {
                mode: match mode {
                    Mode::Exact => CheegerMode::Exact,
                    Mode::Heuristic => CheegerMode::Heuristic,
                },
                exhaustive_cap: cap,
                seed,
                anneal_steps: 0,
            };
            match space {
                Some(p) => {
                    let res = cheeger_radius_r(&read_space(&p)?, radius, options)?;
                    emit_text(&out, format!("h_r {}\nwitness {}\n", format_decimal(&res.value), join(&res.witness)))
                }
                None => {
                    if circle.is_empty() {
                        return Err(Error::contract("give --space or --circle"));
                    }
                    let lengths = circle.iter().map(|s| rational(s)).collect::<Result<Vec<_>>>()?;
                    emit_report(&out, &cheeger_trend(&lengths, rational(&step)?, radius, options)?)
                }
            }
        }
        Command::Mvcheck { input, u, v, degree } => {
            let mv = mayer_vietoris_check(&read_complex(&input)?, &u, &v, degree)?;
            Ok(format!("{} <= {} + {} {}\n", mv.b_u, mv.b_k, mv.b_intersection, if mv.holds { "holds" } else { "fails" }))
        }
        Command::Forest { rank, cutoff, lo, hi, p, seed, draws, out } => {
            let theta = Automorphism::identity(rank);
            let params = ForestParams { word_cutoff: cutoff, levels: (lo, hi), p, seed };
            match draws {
                None => {
                    let f = forest_sample(&theta, &params)?;
                    let mut text = String::new();
                    let _ = writeln!(text, "offset {}", f.offset);
                    let _ = writeln!(text, "elements {}", f.elements.len());
                    let _ = writeln!(text, "edges {}", f.edges.len());
                    let _ = writeln!(text, "acyclic {}", f.is_acyclic());
                    emit_text(&out, text)
                }
                Some(n) => emit_report(&out, &forest_frequencies(&theta, &params, n)?),
            }
        }
        Command::Relate { space, mu1, mu2, p1, p2, eps, radius } => {
            let space = read_space(&space)?;
            let parse = |v: &[String]| v.iter().map(|s| rational(s)).collect::<Result<Vec<_>>>();
            let pair = PointedMeasurePair::new(&space, parse(&mu1)?, parse(&mu2)?, p1, p2)?;
            Ok(format!("{}\n", related_measures(&pair, eps, radius)))
        }
        Command::Girth { input } => {
            let g = essential_girth(&MultiGraph::from_complex(&read_complex(&input)?));
            Ok(format!("{}\n", g.map_or_else(|| "inf".to_string(), |x| x.to_string())))
        }
    }
}

/// Over seeds `params.seed .. params.seed + draws`, how often `(1, lo)` and
/// `(1, lo + delta)` share a tree, for `delta` in `1..=hi - lo`.
pub fn forest_frequencies(theta: &Automorphism, params: &ForestParams, draws: u64) -> Result<ExperimentReport> {
    let (lo, hi) = params.levels;
    let span = (hi - lo) as usize;
    let mut hits = vec![0u64; span + 1];
    let mut acyclic = 0u64;
    for k in 0..draws {
        let f = forest_sample(theta, &ForestParams { seed: params.seed.wrapping_add(k), ..params.clone() })?;
        acyclic += f.is_acyclic() as u64;
        let at = |m: i64| f.index_of(&crate::sampling::SemidirectElement { word: Vec::new(), level: m });
        let base = at(lo).expect("window contains its bottom level");
        for (delta, h) in hits.iter_mut().enumerate().skip(1) {
            let other = at(lo + delta as i64).expect("window level");
            *h += f.same_component(base, other) as u64;
        }
    }
    let mut report = ExperimentReport::new("forest", params.seed, &["delta", "frequency", "expected"]);
    report.param("p", params.p);
    report.param("draws", draws);
    report.param("acyclic", acyclic);
    let p = params.p as i64;
    for (delta, &h) in hits.iter().enumerate().skip(1) {
        let expected = Rational::new((p - delta as i64).max(0), p);
        let freq = Rational::new(h as i64, draws.max(1) as i64);
        report.push(vec![Value::from(delta), freq.into(), expected.into()])?;
    }
    Ok(report)
}
