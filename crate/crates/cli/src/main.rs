use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hyperwedge::hpf::FormSpec;
use hyperwedge::variety::{DEFAULT_SEED, DEFAULT_TRIALS};
use hyperwedge::Window;
use hyperwedge_cli::{
    cmd_contract, cmd_demo, cmd_eval, cmd_ideal, cmd_list_demos, cmd_member, cmd_star, cmd_wedge, parse_index_set, CliResult,
    Outcome, VarietyArg,
};

/// Exact computations with hyper-Pfaffian forms on finite wedge windows.
#[derive(Parser)]
#[command(name = "hyperwedge", version)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate hpf^{(m,l)}_{A|J} at a multivector.
    Eval {
        #[arg(long, num_args = 2, value_names = ["M", "L"], required = true)]
        form: Vec<usize>,
        /// The set A, e.g. -2,-1,1,2.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        /// Optional tail J appended to every coordinate.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        tail: String,
        /// Multivector file, or - for stdin.
        input: PathBuf,
    },
    /// Emit the equations of a component of ∧^p V_{n,p}.
    Ideal {
        #[arg(long, num_args = 2, value_names = ["N", "P"], required = true)]
        window: Vec<usize>,
        #[arg(long, num_args = 2, value_names = ["M", "L"])]
        form: Option<Vec<usize>>,
        /// Also (or only) the star-side HPf^{(r,s)} equations.
        #[arg(long, num_args = 2, value_names = ["R", "S"])]
        dual: Option<Vec<usize>>,
    },
    /// Test membership: gr, pf:L, hpf:M,L, dual:R,S, two-sided:M,L,R,S or contraction:M,L.
    Member {
        #[arg(long)]
        variety: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        input: PathBuf,
    },
    /// Wedge product of the inputs, left to right.
    Wedge {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Hodge star.
    Star { input: PathBuf },
    /// Right contraction of a multivector by a covector.
    Contract { covector: PathBuf, input: PathBuf },
    /// Run a named worked example.
    Demo { name: String },
    /// List the worked examples.
    ListDemos,
}

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn pair(v: &[usize]) -> (usize, usize) {
    (v[0], v[1])
}

fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Eval { form, set, tail, input } => {
            let spec = FormSpec::relative(form[0], form[1], parse_index_set(&set)?, parse_index_set(&tail)?)?;
            cmd_eval(&spec, &read_input(&input)?)
        }
        Command::Ideal { window, form, dual } => {
            let (n, p) = pair(&window);
            cmd_ideal(form.as_deref().map(pair), dual.as_deref().map(pair), Window::new(n, p))
        }
        Command::Member { variety, trials, seed, input } => {
            let VarietyArg(spec) = variety.parse()?;
            println!("seed: {seed}");
            cmd_member(spec, &read_input(&input)?, trials, seed)
        }
        Command::Wedge { inputs } => cmd_wedge(&inputs.iter().map(|p| read_input(p)).collect::<CliResult<Vec<_>>>()?),
        Command::Star { input } => cmd_star(&read_input(&input)?),
        Command::Contract { covector, input } => cmd_contract(&read_input(&covector)?, &read_input(&input)?),
        Command::Demo { name } => cmd_demo(&name),
        Command::ListDemos => Ok(cmd_list_demos()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = run(cli).and_then(|outcome| {
        match &out {
            Some(path) => fs::write(path, format!("{}\n", outcome.text))?,
            None => println!("{}", outcome.text),
        }
        Ok(outcome.code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
