use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use graphon::experiments::{
    parse_config, run_degree_probe, run_density_probe, run_equivalence_probe, run_speed_census,
    run_twoclique_limit_probe, ExperimentReport, GraphonSpec,
};
use graphon::geometry::{check_general_position, intersection_graph, normalize, normalize_outer, Representation};
use graphon::graph::{make_basic, make_special_graph};
use graphon::graphon::{
    cut_distance_bounds, density_fingerprint, edge_density, entropy, parse_rational, t_ind_exact, t_ind_mc, StepGraphon,
};
use graphon::recognizers::{
    classify_outerstring, classify_string, is_comparability, is_incomparability, is_two_clique, ClassifyOptions,
};
use graphon::sampling::{is_constructible, sample_w_random};
use graphon::{Error, Graph, Result, SeedSpec};

#[derive(Parser)]
#[command(
    name = "graphon",
    version,
    about = "Step graphons, W-random graphs and string graph evidence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy of a step graphon in bits.
    Entropy {
        #[arg(long)]
        graphon: PathBuf,
    },
    /// Exact edge density of a step graphon.
    Density {
        #[arg(long)]
        graphon: PathBuf,
    },
    /// Induced density of a graph in a step graphon.
    Tind {
        #[arg(long)]
        graphon: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Estimate by Monte Carlo with this many trials instead.
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Induced densities of every graph class up to a size.
    Fingerprint {
        #[arg(long)]
        graphon: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Lower and upper bounds on the cut distance of two step graphons.
    Cutdist {
        #[arg(long)]
        graphon: PathBuf,
        #[arg(long)]
        other: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Sample G(n, W).
    Sample {
        #[arg(long)]
        graphon: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        blocks_out: Option<PathBuf>,
    },
    /// Search for a block assignment with positive probability.
    Constructible {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        graphon: PathBuf,
    },
    /// Evidence for membership of a graph in a class.
    Classify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        class: ClassName,
        /// Give up with an unknown verdict after this many seconds.
        #[arg(long)]
        timeout: Option<u64>,
    },
    /// Write a named graph in the graph text format.
    Make {
        /// G, B or H for the special graphs; complete, cycle, path,
        /// complete_minus_edge, prism or empty otherwise.
        kind: String,
        n: usize,
    },
    /// Seeded experiments writing a CSV report.
    Probe(ProbeArgs),
    /// Intersection graph and general position report of a representation.
    Geometry {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Put a representation into general position without changing its
    /// intersection graph.
    Normalize {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep every set touching the boundary of the representation's disk.
        #[arg(long)]
        outer: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassName {
    String,
    Outerstring,
    Comparability,
    Incomparability,
    Twoclique,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeKind {
    Density,
    Degrees,
    Speed,
    Twoclique,
    Equiv,
}

/// Every flag also has a `key=value` form in the config file, with `-`
/// written as `_`. Flags win over the file.
#[derive(Args)]
struct ProbeArgs {
    #[arg(value_enum)]
    kind: ProbeKind,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Graphon spec: wka:K:A, wstar:K:S, const:C or file:PATH.
    #[arg(long)]
    graphon: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    bin_width: Option<String>,
    /// incomparability, twoclique or C(t,s).
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    n_max: Option<String>,
    /// labeled or unlabeled.
    #[arg(long)]
    ensemble: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    m: Option<String>,
    /// Add the emission time as a final row.
    #[arg(long)]
    timestamp: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

/// A graphon spec such as `wka:4:1/2`, or else a path to a graphon file.
fn read_graphon(arg: &Path) -> Result<StepGraphon> {
    match arg.to_string_lossy().parse::<GraphonSpec>() {
        Ok(spec) => spec.build(),
        Err(_) => StepGraphon::parse_text(&read(arg)?),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse_text(&read(path)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct ProbeParams(BTreeMap<String, String>);

impl ProbeParams {
    fn get<T>(&self, key: &str, default: Option<T>) -> Result<T>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        match self.0.get(key) {
            Some(v) => v
                .parse()
                .map_err(|e| Error::InvalidParameter(format!("{key} = {v:?}: {e}"))),
            None => default.ok_or_else(|| Error::InvalidParameter(format!("missing parameter {key}"))),
        }
    }

    fn rational(&self, key: &str) -> Result<graphon::Rational> {
        let v = self.get::<String>(key, None)?;
        parse_rational(&v).ok_or_else(|| Error::InvalidParameter(format!("{key} = {v:?} is not a rational")))
    }
}

fn run_probe(args: &ProbeArgs) -> Result<ExperimentReport> {
    let mut params = match &args.config {
        Some(p) => parse_config(&read(p)?)?,
        None => BTreeMap::new(),
    };
    let flags = [
        ("graphon", &args.graphon),
        ("n", &args.n),
        ("trials", &args.trials),
        ("seed", &args.seed),
        ("bin_width", &args.bin_width),
        ("class", &args.class),
        ("n_max", &args.n_max),
        ("ensemble", &args.ensemble),
        ("k", &args.k),
        ("a", &args.a),
        ("b", &args.b),
        ("m", &args.m),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            params.insert(key.to_string(), v.clone());
        }
    }
    let p = ProbeParams(params);
    let seed = SeedSpec::new(p.get("seed", Some(0))?);
    match args.kind {
        ProbeKind::Density => run_density_probe(
            &p.get("graphon", None)?,
            p.get("n", None)?,
            p.get("trials", Some(1))?,
            seed,
        ),
        ProbeKind::Degrees => run_degree_probe(
            &p.get("graphon", None)?,
            p.get("n", None)?,
            p.get("trials", Some(1))?,
            seed,
            p.get("bin_width", Some(0.05))?,
        ),
        ProbeKind::Speed => run_speed_census(p.get("class", None)?, p.get("n_max", Some(6))?),
        ProbeKind::Twoclique => run_twoclique_limit_probe(
            p.get("n", None)?,
            p.get("trials", Some(1))?,
            seed,
            p.get("ensemble", None)?,
        ),
        ProbeKind::Equiv => run_equivalence_probe(
            p.get("k", None)?,
            &p.rational("a")?,
            &p.rational("b")?,
            p.get("m", Some(3))?,
        ),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Entropy { graphon } => println!("{}", entropy(&read_graphon(&graphon)?)),
        Command::Density { graphon } => println!("{}", edge_density(&read_graphon(&graphon)?)),
        Command::Tind {
            graphon,
            graph,
            mc,
            seed,
        } => {
            let (w, g) = (read_graphon(&graphon)?, read_graph(&graph)?);
            match mc {
                Some(trials) => {
                    let e = t_ind_mc(&g, &w, trials, SeedSpec::new(seed))?;
                    println!("{} {}", e.mean, e.stderr);
                }
                None => println!("{}", t_ind_exact(&g, &w)?),
            }
        }
        Command::Fingerprint { graphon, max_size } => {
            for e in density_fingerprint(&read_graphon(&graphon)?, max_size)?.entries {
                println!("{} {} {} {}", e.vertices, e.code, e.labeled_count, e.density);
            }
        }
        Command::Cutdist {
            graphon,
            other,
            max_size,
        } => {
            let b = cut_distance_bounds(&read_graphon(&graphon)?, &read_graphon(&other)?, max_size)?;
            println!("lower {}\nupper {}\nall-orders {}", b.lower, b.upper, b.all_orders);
        }
        Command::Sample {
            graphon,
            n,
            seed,
            out,
            blocks_out,
        } => {
            let (g, blocks) = sample_w_random(&read_graphon(&graphon)?, n, SeedSpec::new(seed));
            emit(&g.to_text(), out.as_deref())?;
            if let Some(p) = blocks_out {
                std::fs::write(p, blocks.to_text())?;
            }
        }
        Command::Constructible { graph, graphon } => {
            match is_constructible(&read_graph(&graph)?, &read_graphon(&graphon)?)? {
                Some(a) => print!("constructible\n{}", a.to_text()),
                None => println!("not constructible"),
            }
        }
        Command::Classify { graph, class, timeout } => {
            let g = read_graph(&graph)?;
            let mut opts = ClassifyOptions::default();
            if let Some(secs) = timeout {
                let deadline = Instant::now() + Duration::from_secs(secs);
                opts.deadline = Some(deadline);
                opts.cover.deadline = Some(deadline);
            }
            let evidence = match class {
                ClassName::String => classify_string(&g, &opts),
                ClassName::Outerstring => classify_outerstring(&g, &opts),
                ClassName::Comparability => is_comparability(&g),
                ClassName::Incomparability => is_incomparability(&g),
                ClassName::Twoclique => is_two_clique(&g),
            };
            print!("{evidence}");
        }
        Command::Make { kind, n } => {
            let g = match kind.parse() {
                Ok(special) => make_special_graph(special, n)?,
                Err(_) => make_basic(kind.parse()?, n)?,
            };
            print!("{}", g.to_text());
        }
        Command::Probe(args) => {
            let report = run_probe(&args)?;
            emit(&report.to_csv(args.timestamp), args.out.as_deref())?;
            if let Some(p) = &args.svg {
                let hist = report.histogram.as_ref().ok_or_else(|| {
                    Error::InvalidParameter(format!("the {} probe has no histogram", report.experiment))
                })?;
                std::fs::write(p, hist.to_svg(&report.experiment))?;
            }
        }
        Command::Geometry { rep, svg } => {
            let rep = Representation::parse_text(&read(&rep)?)?;
            print!("{}", intersection_graph(&rep).to_text());
            let r = check_general_position(&rep);
            println!(
                "intersection-points {}\ntriple-points {}\nimproper-crossings {}\ncoincident-directions {}\ngeneral-position {}",
                r.intersection_points, r.triple_points, r.improper_crossings, r.coincident_directions, r.pass
            );
            if let Some(p) = svg {
                std::fs::write(p, rep.to_svg())?;
            }
        }
        Command::Normalize {
            rep,
            seed,
            outer,
            out,
            svg,
        } => {
            let rep = Representation::parse_text(&read(&rep)?)?;
            let seed = SeedSpec::new(seed);
            let result = if outer {
                let disk = rep.disk().cloned().ok_or_else(|| {
                    Error::InvalidParameter("--outer needs a `disk` line in the representation".into())
                })?;
                normalize_outer(&rep, &disk, seed)?
            } else {
                normalize(&rep, seed)?
            };
            emit(&result.to_text(), out.as_deref())?;
            if let Some(p) = svg {
                std::fs::write(p, result.to_svg())?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
