use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use universal_minor::ears::{ear_decomposition, EarDecomposition, EdgeOrder};
use universal_minor::embed::{embed, embed_any, EmbedOptions, MinorModel};
use universal_minor::io::{read_graph, to_dot, truncation_json, GraphJson, LabeledGraph};
use universal_minor::reduce::reduce;
use universal_minor::universal::{census, Truncation, DEFAULT_VERTEX_CAP};
use universal_minor::verify::{check_inflated_copy, slice_connectivity_probe, AddressHost};

/// Truncations of the minor-universal planar graph and minor models inside them.
#[derive(Parser)]
#[command(name = "umg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Builds the level-N truncation.
    Generate {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Prints vertex, edge and face counts of the level-N truncation.
    Census {
        #[arg(short)]
        n: usize,
    },
    /// Reduces a plane graph to a 2-connected sub-cubic one.
    Reduce { input: PathBuf },
    /// Prints an ear decomposition.
    Ears {
        input: PathBuf,
        /// Shuffles the edge order with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Embeds a 2-connected sub-cubic plane graph.
    Embed {
        input: PathBuf,
        #[arg(long, default_value_t = EmbedOptions::default().max_extra_depth)]
        max_extra_depth: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Embeds any plane graph.
    EmbedAny {
        input: PathBuf,
        #[arg(long, default_value_t = EmbedOptions::default().max_extra_depth)]
        max_extra_depth: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Checks a model file; exits 1 if a condition fails.
    Verify { model: PathBuf },
    /// Samples local connectivity inside a level-N slice.
    ProbeSlice {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Face-length histogram and count table up to level N.
    Stats {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
    },
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: &PathBuf, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        if !text.ends_with('\n') {
            out.write_all(b"\n")?;
        }
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

fn options(max_extra_depth: usize, seed: Option<u64>) -> EmbedOptions {
    EmbedOptions {
        max_extra_depth,
        edge_order: seed.map_or(EdgeOrder::Lexicographic, EdgeOrder::Shuffled),
        ..EmbedOptions::default()
    }
}

fn relabel_ears(d: EarDecomposition, lg: &LabeledGraph) -> EarDecomposition {
    let l = |vs: Vec<usize>| vs.into_iter().map(|v| lg.labels[v]).collect();
    EarDecomposition {
        base_cycle: l(d.base_cycle),
        ears: d
            .ears
            .into_iter()
            .map(|mut e| {
                e.path = l(e.path);
                e.face = l(e.face);
                e
            })
            .collect(),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { n, format, cap, out } => {
            let t = Truncation::generate(n, cap)?;
            let text = match format {
                Format::Json => serde_json::to_string(&truncation_json(&t))?,
                Format::Dot => {
                    let names: Vec<String> = t.addresses().iter().map(ToString::to_string).collect();
                    to_dot(&t.graph(), Some(&names))
                }
            };
            write_output(&out, &text)?;
        }
        Command::Census { n } => {
            let c = census(n);
            println!("{} {} {}", c.vertices, c.edges, c.faces);
        }
        Command::Reduce { input } => {
            let lg = read_graph(&read_input(&input)?)?;
            let (g, witness) = reduce(&lg.graph)?;
            let out = serde_json::json!({
                "labels": lg.labels,
                "graph": GraphJson::from_plane(&g),
                "witness": witness,
            });
            write_output(&"-".into(), &serde_json::to_string_pretty(&out)?)?;
        }
        Command::Ears { input, seed } => {
            let lg = read_graph(&read_input(&input)?)?;
            let order = seed.map_or(EdgeOrder::Lexicographic, EdgeOrder::Shuffled);
            let d = relabel_ears(ear_decomposition(&lg.graph, order)?, &lg);
            write_output(&"-".into(), &serde_json::to_string_pretty(&d)?)?;
        }
        Command::Embed { input, max_extra_depth, seed, out } => {
            let lg = read_graph(&read_input(&input)?)?;
            let e = embed(&lg.graph, options(max_extra_depth, seed))?;
            write_output(&out, &e.model.relabel(&lg).to_json())?;
        }
        Command::EmbedAny { input, max_extra_depth, seed, out } => {
            let lg = read_graph(&read_input(&input)?)?;
            let e = embed_any(&lg.graph, options(max_extra_depth, seed))?;
            write_output(&out, &e.model.relabel(&lg).to_json())?;
        }
        Command::Verify { model } => {
            let m: MinorModel = serde_json::from_str(&read_input(&model)?).context("parsing model")?;
            let host = AddressHost::from_level_map(&m.host_level_map)?;
            let report = check_inflated_copy(&m, &m.input, &host)?;
            write_output(&"-".into(), &report.to_json())?;
            if !report.passed() {
                eprint!("{report}");
                return Ok(ExitCode::from(1));
            }
        }
        Command::ProbeSlice { n, d, trials, seed } => {
            if trials == 0 {
                bail!("--trials must be positive");
            }
            let r = slice_connectivity_probe(n, d, trials, seed)?;
            write_output(&"-".into(), &serde_json::to_string_pretty(&r)?)?;
        }
        Command::Stats { n, cap } => {
            println!("level vertices edges faces");
            for k in 0..=n {
                let c = census(k);
                println!("{k} {} {} {}", c.vertices, c.edges, c.faces);
            }
            let t = Truncation::generate(n, cap)?;
            let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
            for f in t.graph().trace_faces() {
                *hist.entry(f.darts.len()).or_default() += 1;
            }
            println!();
            println!("face_length count");
            for (len, count) in hist {
                println!("{len} {count}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
