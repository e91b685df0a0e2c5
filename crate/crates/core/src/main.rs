use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use symcube::cli::{self, Format};

#[derive(Parser)]
#[command(name = "symcube", version, about = "Construct and verify symmetric (2,1)-latin cubes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a symmetric latin cube of the given order.
    Construct {
        #[arg(long)]
        order: usize,
        /// Nonzero seeds shuffle split order before each stage.
        #[arg(long, env = "SYMCUBE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Grid)]
        format: Format,
        /// Output file; stdout when absent or `-`.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check that a cube file is latin and symmetric.
    Verify {
        /// Grid or JSON file, `-` for stdin.
        input: String,
        /// Also check the partition round trip and, for order <= 4, the
        /// exhaustive oracle.
        #[arg(long)]
        deep: bool,
    },
    /// Print the class-size triples `a b c`, one per line.
    SolveSystem {
        #[arg(long)]
        order: usize,
    },
    /// Report whether an order is feasible.
    Info {
        #[arg(long)]
        order: usize,
    },
}

fn main() {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { cli::EXIT_IO } else { cli::EXIT_OK };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = match args.command {
        Command::Construct { order, seed, format, output } => {
            cli::cmd_construct(order, seed, format, output.as_deref(), &mut out, &mut err)
        }
        Command::Verify { input, deep } => cli::cmd_verify(&input, deep, &mut out, &mut err),
        Command::SolveSystem { order } => cli::cmd_solve_system(order, &mut out, &mut err),
        Command::Info { order } => cli::cmd_info(order, &mut out, &mut err),
    };
    let _ = out.flush();
    std::process::exit(code);
}
