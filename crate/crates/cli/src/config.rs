use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rdb2owl_core::owl::{Iri, Profile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Rdfxml,
    Turtle,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Rdfxml => "owl",
            Format::Turtle => "ttl",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Owl1,
    Owl2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum DiagFormat {
    #[default]
    Text,
    JsonLines,
}

pub const DEFAULT_BASE: &str = "http://example.org/ontology#";

/// Translate a relational database (SQL DDL plus optional CSV or INSERT
/// data) into an OWL ontology.
#[derive(Debug, Parser)]
#[command(name = "rdb2owl", version, args_override_self = true)]
pub struct Args {
    /// Read `key = value` lines as if they were flags; the command line wins.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// SQL file with CREATE TABLE statements.
    #[arg(long, value_name = "PATH")]
    pub ddl: Option<PathBuf>,

    /// Directory of `<Table>.csv` files, or a file of INSERT statements.
    #[arg(long, value_name = "DIR|FILE")]
    pub data: Option<PathBuf>,

    /// Namespace for minted IRIs; must end in `#` or `/`.
    #[arg(long, value_name = "IRI")]
    pub base: Option<String>,

    /// Output file. Without it the ontology goes to standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Defaults to turtle for a `.ttl` output path, rdfxml otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    #[arg(long, value_enum, default_value = "owl1")]
    pub profile: ProfileArg,

    /// Cardinality restrictions on datatype properties.
    #[arg(long, value_enum, num_args = 0..=1, require_equals = true, default_value = "on", default_missing_value = "on")]
    pub attr_restrictions: Switch,

    /// Record column lengths as `maxLength` annotations.
    #[arg(long)]
    pub emit_length: bool,

    /// Treat dangling foreign key values as errors.
    #[arg(long)]
    pub strict_ri: bool,

    /// Reject tables without a primary key.
    #[arg(long)]
    pub strict_keys: bool,

    /// Write individuals to `<stem>-data.<ext>` next to the output file.
    #[arg(long)]
    pub split_data: bool,

    /// Print the extracted metadata model to standard output.
    #[arg(long)]
    pub dump_mtrdb: bool,

    /// Print the canonical data model to standard output.
    #[arg(long)]
    pub dump_cdm: bool,

    #[arg(long, value_enum, default_value = "text")]
    pub diag_format: DiagFormat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSource {
    None,
    CsvDir(PathBuf),
    InsertFile(PathBuf),
    /// The path does not exist; reported when data is loaded.
    Missing(PathBuf),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ddl_path: PathBuf,
    pub data_source: DataSource,
    pub base_iri: Iri,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub profile: Profile,
    pub attr_restrictions: bool,
    pub emit_length: bool,
    pub strict_ri: bool,
    pub strict_keys: bool,
    pub split_data: bool,
    pub dump_mtrdb: bool,
    pub dump_cdm: bool,
    pub diag_format: DiagFormat,
}

impl RunConfig {
    pub fn new(ddl_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            ddl_path: ddl_path.into(),
            data_source: DataSource::None,
            base_iri: Iri::parse_base(DEFAULT_BASE).unwrap(),
            output_path: None,
            format: Format::Rdfxml,
            profile: Profile::Owl1,
            attr_restrictions: true,
            emit_length: false,
            strict_ri: false,
            strict_keys: false,
            split_data: false,
            dump_mtrdb: false,
            dump_cdm: false,
            diag_format: DiagFormat::Text,
        }
    }

    pub fn with_data(mut self, path: impl Into<PathBuf>) -> Self {
        self.data_source = DataSource::from_path(path.into());
        self
    }

    /// Only dumps were asked for and nothing names an output file.
    pub fn dump_only(&self) -> bool {
        (self.dump_mtrdb || self.dump_cdm) && self.output_path.is_none()
    }
}

impl DataSource {
    pub fn from_path(p: PathBuf) -> Self {
        if p.is_dir() {
            DataSource::CsvDir(p)
        } else if p.is_file() {
            DataSource::InsertFile(p)
        } else {
            DataSource::Missing(p)
        }
    }
}

#[derive(Debug)]
pub enum ArgsError {
    /// Help or version output; not a failure.
    Info(String),
    Usage(String),
    Config(String),
}

const PATH_KEYS: [&str; 3] = ["ddl", "data", "out"];
const BOOL_KEYS: [&str; 6] = ["emit-length", "strict-ri", "strict-keys", "split-data", "dump-mtrdb", "dump-cdm"];
const VALUE_KEYS: [&str; 5] = ["base", "format", "profile", "attr-restrictions", "diag-format"];

/// Turn a config file into flags. Relative paths are resolved against the
/// file's directory.
pub fn config_file_args(path: &Path) -> Result<Vec<OsString>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config `{}`: {e}", path.display()))?;
    let dir = path.parent().unwrap_or(Path::new(""));
    let mut args = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = format!("{}:{}", path.display(), i + 1);
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{at}: expected `key = value`"))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if PATH_KEYS.contains(&key.as_str()) {
            args.push(OsString::from(format!("--{key}")));
            args.push(dir.join(value).into_os_string());
        } else if BOOL_KEYS.contains(&key.as_str()) {
            match value.to_ascii_lowercase().as_str() {
                "true" | "on" | "yes" | "1" => args.push(format!("--{key}").into()),
                "false" | "off" | "no" | "0" => {}
                _ => return Err(format!("{at}: `{key}` expects true or false, got `{value}`")),
            }
        } else if VALUE_KEYS.contains(&key.as_str()) {
            args.push(format!("--{key}={value}").into());
        } else {
            return Err(format!("{at}: unknown key `{key}`"));
        }
    }
    Ok(args)
}

/// Parse the command line (including `argv[0]`), merging any `--config`.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, ArgsError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let first = Args::try_parse_from(&argv).map_err(clap_error)?;
    let args = match &first.config {
        Some(path) => {
            let mut merged = vec![argv.first().cloned().unwrap_or_else(|| "rdb2owl".into())];
            merged.extend(config_file_args(path).map_err(ArgsError::Config)?);
            merged.extend(argv.iter().skip(1).cloned());
            Args::try_parse_from(merged).map_err(clap_error)?
        }
        None => first,
    };
    resolve(args)
}

fn clap_error(e: clap::Error) -> ArgsError {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ArgsError::Info(e.to_string()),
        _ => ArgsError::Usage(e.to_string()),
    }
}

fn resolve(args: Args) -> Result<RunConfig, ArgsError> {
    let ddl_path = args
        .ddl
        .ok_or_else(|| ArgsError::Usage("error: the `--ddl <PATH>` argument is required".into()))?;
    let base_iri = Iri::parse_base(args.base.as_deref().unwrap_or(DEFAULT_BASE)).map_err(ArgsError::Config)?;
    let format = args.format.unwrap_or_else(|| match &args.out {
        Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("ttl")) => Format::Turtle,
        _ => Format::Rdfxml,
    });
    if args.split_data && args.out.is_none() {
        return Err(ArgsError::Config("--split-data needs --out to name the schema file".into()));
    }
    Ok(RunConfig {
        ddl_path,
        data_source: args.data.map_or(DataSource::None, DataSource::from_path),
        base_iri,
        output_path: args.out,
        format,
        profile: match args.profile {
            ProfileArg::Owl1 => Profile::Owl1,
            ProfileArg::Owl2 => Profile::Owl2,
        },
        attr_restrictions: args.attr_restrictions == Switch::On,
        emit_length: args.emit_length,
        strict_ri: args.strict_ri,
        strict_keys: args.strict_keys,
        split_data: args.split_data,
        dump_mtrdb: args.dump_mtrdb,
        dump_cdm: args.dump_cdm,
        diag_format: args.diag_format,
    })
}

/// `<dir>/<stem>-data.<ext>` for a schema output path.
pub fn split_data_path(out: &Path, format: Format) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}-data.{}", format.extension()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, ArgsError> {
        parse_args(std::iter::once("rdb2owl").chain(args.iter().copied()))
    }

    #[test]
    fn defaults() {
        let c = parse(&["--ddl", "s.sql"]).unwrap();
        assert_eq!(c.format, Format::Rdfxml);
        assert!(c.attr_restrictions);
        assert_eq!(c.base_iri.as_str(), DEFAULT_BASE);
        assert_eq!(c.data_source, DataSource::None);
    }

    #[test]
    fn attr_restrictions_switch() {
        assert!(parse(&["--ddl", "s", "--attr-restrictions"]).unwrap().attr_restrictions);
        assert!(!parse(&["--ddl", "s", "--attr-restrictions=off"]).unwrap().attr_restrictions);
    }

    #[test]
    fn format_follows_extension() {
        assert_eq!(parse(&["--ddl", "s", "--out", "o.ttl"]).unwrap().format, Format::Turtle);
        assert_eq!(
            parse(&["--ddl", "s", "--out", "o.ttl", "--format", "rdfxml"]).unwrap().format,
            Format::Rdfxml
        );
    }

    #[test]
    fn bad_base_is_config_error() {
        assert!(matches!(parse(&["--ddl", "s", "--base", "nope"]), Err(ArgsError::Config(_))));
        assert!(matches!(parse(&["--ddl", "s", "--bogus"]), Err(ArgsError::Usage(_))));
        assert!(matches!(parse(&["--help"]), Err(ArgsError::Info(_))));
    }

    #[test]
    fn split_path() {
        assert_eq!(split_data_path(Path::new("out/db.owl"), Format::Rdfxml), Path::new("out/db-data.owl"));
    }
}
