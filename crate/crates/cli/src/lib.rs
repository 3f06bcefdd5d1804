//! Pipeline driver behind the `rdb2owl` binary.
//!
//! Stages run in order — parse, extract, validate, CDM, ontology, data
//! load, conversion, serialization — and the first stage that reports
//! errors stops the run after all of its own errors are collected.

mod config;

use std::io::Write;
use std::path::Path;

use rdb2owl_core::cdm::{build_cdm, dump_cdm};
use rdb2owl_core::convert::{convert_recordsets, ConvertOptions};
use rdb2owl_core::ingest::{load_csv_dir, parse_ddl, parse_inserts, Recordset, SchemaAst};
use rdb2owl_core::mtrdb::{dump_mtrdb, extract_mtrdb, validate_mtrdb, ExtractOptions};
use rdb2owl_core::owl::{build_ontology, serialize_rdfxml, serialize_turtle, BuildOptions, OwlDocument};
use rdb2owl_core::{Code, Diagnostic, Diagnostics, Location};

pub use config::{
    config_file_args, parse_args, split_data_path, Args, ArgsError, DataSource, DiagFormat, Format, RunConfig,
    DEFAULT_BASE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug)]
pub struct Report {
    pub exit_code: i32,
    pub diagnostics: Diagnostics,
}

impl Report {
    pub fn render(&self, format: DiagFormat) -> String {
        let mut s = String::new();
        for d in self.diagnostics.iter() {
            match format {
                DiagFormat::Text => s.push_str(&d.to_string()),
                DiagFormat::JsonLines => s.push_str(&serde_json::to_string(d).expect("diagnostics serialize")),
            }
            s.push('\n');
        }
        s
    }
}

/// Everything a successful translation produces, before anything is
/// written.
#[derive(Debug)]
pub struct Translation {
    pub document: OwlDocument,
    pub mtrdb_dump: String,
    pub cdm_dump: String,
}

/// Why a translation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Failure {
    Input,
    Internal,
}

impl Failure {
    fn exit_code(self) -> i32 {
        match self {
            Failure::Input => EXIT_INPUT,
            Failure::Internal => EXIT_INTERNAL,
        }
    }
}

fn label(p: &Path) -> String {
    p.display().to_string()
}

fn read(path: &Path, diags: &mut Diagnostics) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| {
        diags.push(Diagnostic::error(
            Code::Io,
            Location::file(label(path)),
            format!("cannot read `{}`: {e}", label(path)),
        ));
        Failure::Input
    })
}

/// Attach `file` to the source locations of diagnostics pushed since `mark`.
fn tag_file(diags: &mut Diagnostics, mark: usize, file: &Path) {
    let all = std::mem::take(diags).into_vec();
    let name = label(file);
    for (i, d) in all.into_iter().enumerate() {
        diags.push(if i >= mark { d.in_file(&name) } else { d });
    }
}

fn load_data(cfg: &RunConfig, schema: &SchemaAst, diags: &mut Diagnostics) -> Result<Vec<Recordset>, Failure> {
    match &cfg.data_source {
        DataSource::None => Ok(Vec::new()),
        DataSource::CsvDir(dir) => load_csv_dir(dir, schema, diags).map_err(|_| Failure::Input),
        DataSource::InsertFile(path) => {
            let text = read(path, diags)?;
            let mark = diags.len();
            let r = parse_inserts(&text, schema, diags);
            tag_file(diags, mark, path);
            r.map_err(|_| Failure::Input)
        }
        DataSource::Missing(path) => {
            diags.push(Diagnostic::error(
                Code::Io,
                Location::file(label(path)),
                format!("data path `{}` does not exist", label(path)),
            ));
            Err(Failure::Input)
        }
    }
}

/// Run every stage up to (not including) serialization.
pub fn translate(cfg: &RunConfig, diags: &mut Diagnostics) -> Result<Translation, Failure> {
    let ddl = read(&cfg.ddl_path, diags)?;
    let mark = diags.len();
    let schema = parse_ddl(&ddl, diags);
    tag_file(diags, mark, &cfg.ddl_path);
    let schema = schema.map_err(|_| Failure::Input)?;

    let opts = ExtractOptions {
        strict_keys: cfg.strict_keys,
    };
    let mtrdb = extract_mtrdb(&schema, opts, diags).map_err(|_| Failure::Input)?;
    let problems = validate_mtrdb(&mtrdb);
    if !problems.is_empty() {
        diags.extend(problems);
        return Err(Failure::Internal);
    }

    let cdm = build_cdm(&mtrdb, diags).map_err(|_| Failure::Input)?;
    let build = BuildOptions {
        profile: cfg.profile,
        attr_restrictions: cfg.attr_restrictions,
        emit_length: cfg.emit_length,
    };
    let doc = build_ontology(&cdm, &cfg.base_iri, build, diags).map_err(|_| Failure::Input)?;
    let data = load_data(cfg, &schema, diags)?;
    let convert = ConvertOptions { strict_ri: cfg.strict_ri };
    let document = convert_recordsets(&data, &cdm, doc, convert, diags).map_err(|_| Failure::Input)?;
    Ok(Translation {
        document,
        mtrdb_dump: dump_mtrdb(&mtrdb),
        cdm_dump: dump_cdm(&cdm),
    })
}

pub fn serialize(doc: &OwlDocument, format: Format) -> Result<String, Diagnostic> {
    match format {
        Format::Rdfxml => serialize_rdfxml(doc),
        Format::Turtle => Ok(serialize_turtle(doc)),
    }
}

fn write_file(path: &Path, text: &str, diags: &mut Diagnostics) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| {
        diags.push(Diagnostic::error(
            Code::Io,
            Location::file(label(path)),
            format!("cannot write `{}`: {e}", label(path)),
        ));
        Failure::Input
    })
}

fn emit(cfg: &RunConfig, t: Translation, stdout: &mut dyn Write, diags: &mut Diagnostics) -> Result<(), Failure> {
    let mut console = String::new();
    if cfg.dump_mtrdb {
        console.push_str(&t.mtrdb_dump);
    }
    if cfg.dump_cdm {
        console.push_str(&t.cdm_dump);
    }
    let internal = |d: Diagnostic, diags: &mut Diagnostics| {
        diags.push(d);
        Failure::Internal
    };
    if !cfg.dump_only() {
        match &cfg.output_path {
            Some(out) if cfg.split_data => {
                let (schema, data) = t.document.split();
                let schema_text = serialize(&schema, cfg.format).map_err(|d| internal(d, diags))?;
                let data_text = serialize(&data, cfg.format).map_err(|d| internal(d, diags))?;
                write_file(out, &schema_text, diags)?;
                write_file(&split_data_path(out, cfg.format), &data_text, diags)?;
            }
            Some(out) => {
                let text = serialize(&t.document, cfg.format).map_err(|d| internal(d, diags))?;
                write_file(out, &text, diags)?;
            }
            None => {
                let text = serialize(&t.document, cfg.format).map_err(|d| internal(d, diags))?;
                console.push_str(&text);
            }
        }
    }
    stdout.write_all(console.as_bytes()).map_err(|e| {
        diags.push(Diagnostic::error(Code::Io, Location::None, format!("cannot write to standard output: {e}")));
        Failure::Input
    })
}

/// Translate and write outputs. Diagnostics are returned, not printed.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> Report {
    let mut diags = Diagnostics::new();
    let result = translate(cfg, &mut diags).and_then(|t| emit(cfg, t, stdout, &mut diags));
    let exit_code = match result {
        Ok(()) => EXIT_OK,
        Err(f) => f.exit_code(),
    };
    Report {
        exit_code,
        diagnostics: diags,
    }
}

/// The whole command: argument parsing, the run, and diagnostic output.
pub fn main_with_args<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(cfg) => cfg,
        Err(ArgsError::Info(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            return EXIT_OK;
        }
        Err(ArgsError::Usage(text)) => {
            let _ = stderr.write_all(text.as_bytes());
            return EXIT_INPUT;
        }
        Err(ArgsError::Config(msg)) => {
            let d = Diagnostic::error(Code::Config, Location::None, msg);
            let _ = writeln!(stderr, "{d}");
            return EXIT_INPUT;
        }
    };
    let report = run(&cfg, stdout);
    let _ = stderr.write_all(report.render(cfg.diag_format).as_bytes());
    report.exit_code
}
