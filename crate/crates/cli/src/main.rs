use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lcsupport_cli::{parse_problem, run_command, CliError, Flags};

#[derive(Parser)]
#[command(name = "lcsupport", version, about = "Supports of F-finite F-modules over F_p[x1..xn]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Cap on Frobenius root iterations.
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Cutoff for the injectivity and surjectivity chains.
    #[arg(long, global = true)]
    jmax: Option<usize>,
    #[arg(long, global = true)]
    gb_max_size: Option<usize>,
    #[arg(long, global = true)]
    gb_max_deg: Option<u32>,
    /// Consecutive equalities needed to accept a chain as stable.
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Default)]
struct RingArgs {
    /// Problem file.
    file: Option<PathBuf>,
    #[arg(long)]
    p: Option<u64>,
    /// Comma-separated variable names.
    #[arg(long)]
    vars: Option<String>,
    #[arg(long)]
    order: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Defining ideal of the support of the F-module given by A and U.
    Support(RingArgs),
    /// Whether the F-module given by A and U is zero.
    Vanishes(RingArgs),
    /// Support of H^j_I(R).
    Lc {
        #[command(flatten)]
        ring: RingArgs,
        /// Comma-separated generators.
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        j: usize,
        /// `ext` (free resolution) or `koszul` (Koszul cohomology).
        #[arg(long, default_value = "ext")]
        via: String,
    },
    /// Support of iterated local cohomology; layers innermost first.
    Iterated {
        #[command(flatten)]
        ring: RingArgs,
        /// IDEAL:INDEX, e.g. `x,y:2`; repeat or separate with `;`.
        #[arg(long = "layer", required = true)]
        layers: Vec<String>,
    },
    /// Injectivity and surjectivity loci of multiplication by g.
    Hyperloci {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        g: String,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Degree diagnostics for H^j_J over several primes.
    Bounds {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        j: usize,
        /// Comma-separated primes.
        #[arg(long, default_value = "2,3,5,7")]
        primes: String,
    },
    /// Random instances timed end to end, written as CSV.
    Bench {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        beta: usize,
        #[arg(long, default_value_t = 4)]
        deg: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Draw A at random instead of leaving it empty.
        #[arg(long)]
        random_a: bool,
        /// Force U = 0.
        #[arg(long)]
        zero_u: bool,
    },
}

fn apply_ring(flags: &mut Flags, r: RingArgs) -> Option<PathBuf> {
    flags.p = r.p;
    flags.vars = r.vars;
    flags.order = r.order;
    r.file
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mut flags = Flags {
        max_iter: cli.common.max_iter,
        jmax: cli.common.jmax,
        gb_max_size: cli.common.gb_max_size,
        gb_max_deg: cli.common.gb_max_deg,
        window: cli.common.window,
        ..Flags::default()
    };
    let (name, file) = match cli.command {
        Command::Support(r) => ("support", apply_ring(&mut flags, r)),
        Command::Vanishes(r) => ("vanishes", apply_ring(&mut flags, r)),
        Command::Lc { ring, ideal, j, via } => {
            flags.ideal = ideal;
            flags.via = Some(via);
            flags.j = Some(j);
            ("lc", apply_ring(&mut flags, ring))
        }
        Command::Iterated { ring, layers } => {
            flags.layers = layers;
            ("iterated", apply_ring(&mut flags, ring))
        }
        Command::Hyperloci { ring, g, i, ideal } => {
            flags.g = Some(g);
            flags.i = i;
            flags.ideal = ideal;
            ("hyperloci", apply_ring(&mut flags, ring))
        }
        Command::Bounds { ring, ideal, j, primes } => {
            flags.ideal = ideal;
            flags.j = Some(j);
            flags.primes = Some(primes);
            ("bounds", apply_ring(&mut flags, ring))
        }
        Command::Bench {
            count,
            p,
            n,
            beta,
            deg,
            seed,
            csv,
            random_a,
            zero_u,
        } => {
            flags.count = Some(count);
            flags.p = Some(p);
            flags.n = Some(n);
            flags.beta = Some(beta);
            flags.deg = Some(deg);
            flags.seed = Some(seed);
            flags.csv = csv;
            flags.random_a = random_a;
            flags.zero_u = zero_u;
            ("bench", None)
        }
    };
    let problem = match file {
        Some(path) => Some(parse_problem(&std::fs::read_to_string(&path)?)?),
        None => None,
    };
    let report = run_command(name, problem.as_ref(), &flags)?;
    Ok(if cli.common.json {
        format!("{}\n", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"))
    } else {
        report.text
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
