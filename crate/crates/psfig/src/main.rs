use clap::Parser;
use psfig::cli::{run, CliConfig, OutputFormat};
use std::path::PathBuf;
use std::process::ExitCode;

/// Render PSTricks-subset figures as SVG.
#[derive(Parser)]
#[command(name = "psfig", version)]
struct Args {
    /// Input .tex file
    input: PathBuf,

    /// Directory for output files (defaults to the input's directory)
    #[arg(long = "out-dir", value_name = "PATH")]
    out_dir: Option<PathBuf>,

    /// Comma-separated outputs to write: svg, json
    #[arg(long, value_delimiter = ',', default_value = "svg", value_parser = parse_format)]
    formats: Vec<OutputFormat>,

    /// Closed-curve tightness in [0, 1); 0 is the plain interpolating spline
    #[arg(long, default_value_t = 0.0, value_parser = parse_tension)]
    tension: f64,

    /// Decimal places for SVG coordinates
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=12))]
    precision: u8,

    /// Extra viewport margin around the bounding box, in units
    #[arg(long, default_value_t = 0.0, value_parser = parse_margin)]
    margin: f64,

    /// Skip unknown commands with a warning instead of failing
    #[arg(long)]
    lenient: bool,

    /// Print the parsed tree before rendering
    #[arg(long = "dump-ast")]
    dump_ast: bool,
}

fn parse_format(raw: &str) -> Result<OutputFormat, String> {
    match raw {
        "svg" => Ok(OutputFormat::Svg),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format '{}' (expected svg or json)", other)),
    }
}

fn parse_tension(raw: &str) -> Result<f64, String> {
    let value: f64 = raw.parse().map_err(|e| format!("{}", e))?;
    if (0.0..1.0).contains(&value) {
        Ok(value)
    } else {
        Err("tension must be in [0, 1)".to_string())
    }
}

fn parse_margin(raw: &str) -> Result<f64, String> {
    let value: f64 = raw.parse().map_err(|e| format!("{}", e))?;
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err("margin must be a finite non-negative number".to_string())
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let status = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(status);
        }
    };
    let config = CliConfig {
        input_path: args.input,
        out_dir: args.out_dir,
        formats: args.formats,
        tension: args.tension,
        precision: args.precision as usize,
        margin_units: args.margin,
        strict: !args.lenient,
        dump_ast: args.dump_ast,
    };
    ExitCode::from(run(&config) as u8)
}
