use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rp3color::format::{coloring_lines, parse_instance, serialize_instance};
use rp3color::hardness::{build_hardness_graph, parse_nae};
use rp3color::oracle::{solve_exact, solve_exact_frugal};
use rp3color::pipeline::{solve, SolveOptions, Verdict};
use rp3color::random::random_2p3_free;
use rp3color::Instance;

const COLORABLE: u8 = 0;
const NOT_COLORABLE: u8 = 1;
const NOT_FREE: u8 = 2;
const ABORTED: u8 = 3;
const USAGE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "rp3color",
    version,
    about = "List-5-coloring of rP3-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide colorability with the reduction pipeline.
    Solve {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        r: u64,
        /// Skip the rP3-freeness check.
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Give up after this many leaves.
        #[arg(long)]
        budget: Option<u64>,
        /// Log every leaf.
        #[arg(long)]
        trace: bool,
        file: PathBuf,
    },
    /// Brute-force list coloring.
    Oracle {
        #[arg(long)]
        frugal: bool,
        file: PathBuf,
    },
    /// Look for r pairwise anticomplete induced paths on t vertices.
    CheckFree {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        file: PathBuf,
    },
    /// Turn a monotone NAE3SAT file into a 5-coloring instance.
    GenHard { file: PathBuf },
    /// Solve seeded random 2P3-free instances and report timings.
    Bench {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        size: usize,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<Instance> {
    let text = read(path)?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_verdict(verdict: &Verdict) -> u8 {
    match verdict {
        Verdict::Colorable(phi) => {
            println!("s COLORABLE");
            print!("{}", coloring_lines(phi));
            COLORABLE
        }
        Verdict::NotColorable => {
            println!("s NOT_COLORABLE");
            NOT_COLORABLE
        }
        Verdict::NotRP3Free(packing) => {
            println!("s NOT_RP3FREE");
            for path in packing {
                let ids: Vec<String> = path.iter().map(|v| (v + 1).to_string()).collect();
                println!("w {}", ids.join(" "));
            }
            NOT_FREE
        }
        Verdict::ScaleAbort(stats) => {
            println!("s ABORTED");
            println!(
                "# {} profile elements, {} leaves",
                stats.profile_elements, stats.leaves
            );
            ABORTED
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Solve {
            r,
            force,
            jobs,
            budget,
            trace,
            file,
        } => {
            let inst = load(&file)?;
            if force {
                eprintln!("caveat: NOT_COLORABLE is only reliable if the input is {r}P3-free");
            }
            let opts = SolveOptions {
                r,
                force,
                jobs,
                budget,
                trace,
            };
            Ok(print_verdict(&solve(&inst, &opts)?))
        }
        Command::Oracle { frugal, file } => {
            let inst = load(&file)?;
            let found = if frugal {
                solve_exact_frugal(&inst)
            } else {
                solve_exact(&inst)
            };
            Ok(match found {
                Some(phi) => print_verdict(&Verdict::Colorable(phi)),
                None => print_verdict(&Verdict::NotColorable),
            })
        }
        Command::CheckFree { r, t, file } => {
            let inst = load(&file)?;
            match inst.graph().anticomplete_packing(r, t) {
                Some(packing) => {
                    println!("s NOT_FREE");
                    for path in packing {
                        let ids: Vec<String> = path.iter().map(|v| (v + 1).to_string()).collect();
                        println!("w {}", ids.join(" "));
                    }
                    Ok(NOT_FREE)
                }
                None => {
                    println!("s FREE");
                    Ok(COLORABLE)
                }
            }
        }
        Command::GenHard { file } => {
            let text = read(&file)?;
            let nae = parse_nae(&text).with_context(|| format!("parsing {}", file.display()))?;
            print!("{}", serialize_instance(&build_hardness_graph(&nae)));
            Ok(COLORABLE)
        }
        Command::Bench { seed, count, size } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let opts = SolveOptions::default();
            let total = Instant::now();
            let mut colorable = 0;
            for i in 0..count {
                let inst = random_2p3_free(&mut rng, size, 2..=4);
                let start = Instant::now();
                let verdict = solve(&inst, &opts)?;
                let ms = start.elapsed().as_secs_f64() * 1e3;
                let tag = match verdict {
                    Verdict::Colorable(_) => {
                        colorable += 1;
                        "colorable"
                    }
                    Verdict::NotColorable => "not colorable",
                    Verdict::NotRP3Free(_) => "not free",
                    Verdict::ScaleAbort(_) => "aborted",
                };
                println!("{i} {tag} {ms:.1} ms");
            }
            println!(
                "# {colorable}/{count} colorable, {:.2} s total",
                total.elapsed().as_secs_f64()
            );
            Ok(COLORABLE)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
