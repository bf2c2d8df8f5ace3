//! Command-line pipeline: parse, resolve, fit curves, emit files.
//!
//! Exit statuses: 0 ok, 1 parse/input error, 2 resolve error, 3 output
//! error. Warnings alone never change the status. Output files are staged
//! as temporaries and renamed into place, so a failing run never leaves a
//! partially written file behind.

use crate::parser::ParseMode;
use crate::svg::{emit_resolved_json, emit_svg, SvgConfig, DEFAULT_PX_PER_CM};
use crate::{process_document, Error, ProcessedDocument};
use std::io::Write as _;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Svg,
    Json,
}

#[derive(Clone, Debug)]
pub struct CliConfig {
    pub input_path: PathBuf,
    /// Defaults to the input file's directory.
    pub out_dir: Option<PathBuf>,
    /// Nonempty set of outputs to write.
    pub formats: Vec<OutputFormat>,
    pub tension: f64,
    pub precision: usize,
    pub margin_units: f64,
    pub strict: bool,
    pub dump_ast: bool,
}

impl CliConfig {
    pub fn new(input_path: impl Into<PathBuf>) -> Self {
        CliConfig {
            input_path: input_path.into(),
            out_dir: None,
            formats: vec![OutputFormat::Svg],
            tension: 0.0,
            precision: 4,
            margin_units: 0.0,
            strict: true,
            dump_ast: false,
        }
    }
}

pub mod exit_status {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 1;
    pub const RESOLVE: i32 = 2;
    pub const OUTPUT: i32 = 3;
}

/// Runs the whole pipeline for one input file, printing summaries to
/// stdout and errors to stderr. Returns the process exit status.
pub fn run(config: &CliConfig) -> i32 {
    assert!(!config.formats.is_empty());
    assert!((0.0..1.0).contains(&config.tension));

    let source = match std::fs::read_to_string(&config.input_path) {
        Ok(source) => source,
        Err(e) => {
            eprintln!("error: cannot read {}: {}", config.input_path.display(), e);
            return exit_status::PARSE;
        }
    };
    let mode = if config.strict { ParseMode::Strict } else { ParseMode::Lenient };
    let document = match process_document(&source, mode, config.tension) {
        Ok(document) => document,
        Err(Error::Parse(e)) => {
            eprintln!("error: {}:{}: {}", e.line, e.column, e.message);
            if !e.snippet.is_empty() {
                eprintln!("  {}", e.snippet);
            }
            return exit_status::PARSE;
        }
        Err(e) => {
            eprintln!("error: {}", e);
            return exit_status::RESOLVE;
        }
    };

    if config.dump_ast {
        println!("{:#?}", document.tree);
    }
    for warning in &document.warnings {
        println!("warning: line {}: {}", warning.line, warning.message);
    }
    if document.pictures.is_empty() {
        println!("0 pictures");
    }
    for (index, picture) in document.pictures.iter().enumerate() {
        println!(
            "picture {}: {} elements / {} nodes",
            index + 1,
            picture.resolved.elements.len(),
            picture.env.len(),
        );
        for warning in &picture.env.warnings {
            println!("warning: {}", warning);
        }
    }

    match write_outputs(config, &document) {
        Ok(paths) => {
            for path in paths {
                println!("wrote {}", path.display());
            }
            exit_status::OK
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_status::OUTPUT
        }
    }
}

fn write_outputs(
    config: &CliConfig,
    document: &ProcessedDocument,
) -> std::io::Result<Vec<PathBuf>> {
    let out_dir = match &config.out_dir {
        Some(dir) => dir.clone(),
        None => config
            .input_path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .unwrap_or(Path::new("."))
            .to_path_buf(),
    };
    std::fs::create_dir_all(&out_dir)?;
    let stem = config
        .input_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".to_string());

    let mut formats = config.formats.clone();
    formats.dedup();
    let svg_config = SvgConfig {
        precision: config.precision,
        margin_units: config.margin_units,
        px_per_cm: DEFAULT_PX_PER_CM,
    };

    let mut outputs: Vec<(PathBuf, String)> = Vec::new();
    for format in formats {
        match format {
            OutputFormat::Svg => {
                for (index, picture) in document.pictures.iter().enumerate() {
                    let path = out_dir.join(format!("{}-{}.svg", stem, index + 1));
                    outputs.push((path, emit_svg(&picture.resolved, &picture.chains, &svg_config)));
                }
            }
            OutputFormat::Json => {
                let items: Vec<_> = document
                    .pictures
                    .iter()
                    .map(|p| (&p.resolved, p.chains.as_slice()))
                    .collect();
                let path = out_dir.join(format!("{}.resolved.json", stem));
                outputs.push((path, emit_resolved_json(document.unit_cm, &items)));
            }
        }
    }

    // Stage everything first, then rename into place.
    let mut staged = Vec::with_capacity(outputs.len());
    for (path, content) in outputs {
        let mut tmp = tempfile::NamedTempFile::new_in(&out_dir)?;
        tmp.write_all(content.as_bytes())?;
        staged.push((tmp, path));
    }
    let mut written = Vec::with_capacity(staged.len());
    for (tmp, path) in staged {
        tmp.persist(&path).map_err(|e| e.error)?;
        written.push(path);
    }
    Ok(written)
}
