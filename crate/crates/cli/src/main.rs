use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "eaqcc", version, about = "Entanglement-assisted quantum block and convolutional codes")]
struct Cli {
    /// Output format; json wraps every artifact as {"version", "kind", "data"}.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ebits needed by a check matrix.
    Ebits(EbitsArgs),
    /// Symplectic Gram-Schmidt, block or polynomial.
    Gramschmidt {
        file: PathBuf,
        /// Treat the input as a convolutional check matrix.
        #[arg(long)]
        conv: bool,
        #[arg(long, default_value_t = eaqcc::conv_core::DEFAULT_L_MAX)]
        l_max: usize,
    },
    /// Expand a convolutional check matrix by a factor.
    Expand {
        #[arg(long)]
        factor: usize,
        file: PathBuf,
    },
    /// Code and circuits from two classical convolutional check matrices.
    CssConstruct {
        h1: PathBuf,
        /// Defaults to H1.
        h2: Option<PathBuf>,
    },
    /// Code and circuits for an arbitrary convolutional check matrix.
    Construct {
        file: PathBuf,
        #[arg(long, default_value_t = eaqcc::conv_core::DEFAULT_L_MAX)]
        l_max: usize,
    },
    /// Code whose ebits are part of the stabilizer.
    FreeConstruct { file: PathBuf },
    /// Augment generators for entanglement distillation.
    Distill {
        #[arg(long, value_enum)]
        mode: DistillMode,
        #[arg(long, value_enum, default_value_t = Form::Upper)]
        form: Form,
        file: PathBuf,
    },
    /// Syndrome table of a mixed code as CSV.
    GrandfatherTable {
        /// JSON bundle with n, k, l, r, c and an encoder gate list; the built-in example if absent.
        bundle: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        weight: usize,
        #[arg(long, default_value_t = 2)]
        window: usize,
        /// Print the built-in example bundle and exit.
        #[arg(long)]
        example_bundle: bool,
    },
    /// Monte-Carlo or exhaustive correction with a syndrome-table decoder.
    Simulate(SimArgs),
    /// Replay a code's encoder and decoder (JSON from a construct command).
    Verify { file: PathBuf },
}

#[derive(Args, Debug)]
struct EbitsArgs {
    /// Block check matrix, or H1 H2 with --css.
    #[arg(required = true, num_args = 1..=2)]
    files: Vec<PathBuf>,
    /// Two classical binary matrices.
    #[arg(long, group = "kind")]
    css: bool,
    /// Quaternary block matrix.
    #[arg(long, group = "kind")]
    gf4: bool,
    /// Convolutional check matrix.
    #[arg(long, group = "kind")]
    conv: bool,
    /// Quaternary convolutional matrix.
    #[arg(long, group = "kind")]
    gf4_conv: bool,
}

#[derive(Args, Debug)]
struct SimArgs {
    /// Convolutional stabilizer; with --grandfather, an optional bundle.
    file: Option<PathBuf>,
    #[arg(long)]
    grandfather: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 20)]
    frames: usize,
    /// Depolarizing probability per noisy qubit and frame.
    #[arg(long, default_value_t = 0.01)]
    p: f64,
    #[arg(long, default_value_t = 32)]
    truncate_depth: usize,
    /// Table decoder error weight.
    #[arg(long, default_value_t = 1)]
    weight: usize,
    #[arg(long, value_enum, default_value_t = InjectionKind::Channel)]
    injection: InjectionKind,
    /// Defaults to aligned for --injection alternate, sliding otherwise.
    #[arg(long, value_enum)]
    decoder: Option<DecoderKind>,
    /// Enumerate all single errors on aligned frames instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    /// Report as a CSV row with a header.
    #[arg(long)]
    csv: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DistillMode {
    Single,
    Multi,
    Css,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Form {
    Upper,
    Lower,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DecoderKind {
    /// Table lookup at any frame, earliest unexplained syndrome first.
    Sliding,
    /// Table lookup only on frames that are multiples of the window.
    Aligned,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InjectionKind {
    /// Depolarizing channel with probability --p.
    Channel,
    /// One uniformly random single-qubit error on each aligned frame.
    Alternate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.format) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::output::CliError;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn css_flag_takes_two_files() {
        let cli = Cli::try_parse_from(["eaqcc", "ebits", "--css", "a", "b"]).unwrap();
        let Command::Ebits(a) = cli.command else { panic!() };
        assert!(a.css);
        assert_eq!(a.files.len(), 2);
        assert!(Cli::try_parse_from(["eaqcc", "ebits", "--css", "--gf4", "a"]).is_err());
    }

    #[test]
    fn error_status() {
        assert_eq!(CliError::from(eaqcc::Error::Parse("x".into())).status(), 2);
        assert_eq!(CliError::from(eaqcc::Error::DependentRows).status(), 1);
    }
}
