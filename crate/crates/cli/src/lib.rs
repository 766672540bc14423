//! Command-line front end for `blockade-core`.
//!
//! Every invocation prints one JSON [`Report`] (or a text table with
//! `--pretty`). Exit codes: 0 success, 1 domain or input-file error,
//! 2 usage error.

mod args;
mod commands;
mod pretty;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use blockade_core::repthy::set_cache_limit;
use blockade_core::twistblocks::{EvalModuleDescriptor, OrbitSpace, SpectralCharacter};
use blockade_core::{RootSystem, Strategy};
use clap::Parser;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub use args::parse_weight;

pub const SCHEMA: &str = "blockade.report/v1";
pub const CACHE_LIMIT_VAR: &str = "BLOCKADE_CACHE_LIMIT";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: Vec<String>,
    pub inputs_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] blockade_core::Error),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }

    fn report(&self) -> ErrorReport {
        let (kind, path, message) = match self {
            CliError::Domain(e) => ("domain", None, e.to_string()),
            CliError::Input { path, message } => ("input", Some(path.clone()), message.clone()),
            CliError::Config(m) => ("config", None, m.clone()),
        };
        ErrorReport {
            kind: kind.into(),
            message,
            path,
        }
    }
}

/// Input files read during a command, folded into the report digest.
#[derive(Default)]
pub(crate) struct Inputs {
    files: Vec<(String, Vec<u8>)>,
}

impl Inputs {
    pub(crate) fn load<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T, CliError> {
        let shown = path.display().to_string();
        let bytes = std::fs::read(path).map_err(|e| CliError::Input {
            path: shown.clone(),
            message: e.to_string(),
        })?;
        let value = serde_json::from_slice(&bytes).map_err(|e| CliError::Input {
            path: shown.clone(),
            message: format!("malformed JSON: {e}"),
        })?;
        self.files.push((shown, bytes));
        Ok(value)
    }

    fn digest(&self, argv: &[String]) -> String {
        let mut h = Sha256::new();
        for a in argv {
            h.update(a.as_bytes());
            h.update([0]);
        }
        for (path, bytes) in &self.files {
            h.update([0xff]);
            h.update(path.as_bytes());
            h.update([0]);
            h.update(bytes);
        }
        hex::encode(h.finalize())
    }
}

pub(crate) struct Outcome {
    pub result: Value,
    pub table: String,
}

/// Modules grouped by spectral character. Groups are listed in order of
/// their first member; members are input indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockGroup {
    pub character: SpectralCharacter,
    pub members: Vec<usize>,
}

pub fn blocks_report(
    rs: &RootSystem,
    ospace: &OrbitSpace,
    modules: &[EvalModuleDescriptor],
    strategy: Strategy,
) -> blockade_core::Result<Vec<BlockGroup>> {
    let characters = blockade_core::sweep::spectral_characters(rs, ospace, modules, strategy)?;
    let mut groups: Vec<BlockGroup> = Vec::new();
    for (i, chi) in characters.into_iter().enumerate() {
        match groups.iter_mut().find(|g| g.character == chi) {
            Some(g) => g.members.push(i),
            None => groups.push(BlockGroup {
                character: chi,
                members: vec![i],
            }),
        }
    }
    Ok(groups)
}

/// Run one command, writing the report to `out`. `argv[0]` is the program
/// name.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match args::Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();

    let mut inputs = Inputs::default();
    let outcome = configure_cache().and_then(|()| commands::execute(&cli, &mut inputs));
    let digest = inputs.digest(&echo);

    let (report, table, code) = match outcome {
        Ok(o) => (
            Report {
                schema: SCHEMA.into(),
                command: echo,
                inputs_digest: digest,
                result: Some(o.result),
                error: None,
            },
            o.table,
            0,
        ),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let mut table = String::new();
            let _ = writeln!(table, "error: {e}");
            (
                Report {
                    schema: SCHEMA.into(),
                    command: echo,
                    inputs_digest: digest,
                    result: None,
                    error: Some(e.report()),
                },
                table,
                e.exit_code(),
            )
        }
    };

    let text = if cli.pretty {
        table
    } else {
        let mut s = serde_json::to_string(&report).expect("report serializes");
        s.push('\n');
        s
    };
    let _ = out.write_all(text.as_bytes());
    code
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn configure_cache() -> Result<(), CliError> {
    match std::env::var(CACHE_LIMIT_VAR) {
        Ok(v) => {
            let n = v.trim().parse::<usize>().map_err(|_| {
                CliError::Config(format!("{CACHE_LIMIT_VAR} must be a non-negative integer, got `{v}`"))
            })?;
            set_cache_limit(n);
            Ok(())
        }
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(CliError::Config(format!("{CACHE_LIMIT_VAR}: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use blockade_core::{TypeLetter, Weight};

    fn at(p: &str, m: i64) -> EvalModuleDescriptor {
        EvalModuleDescriptor::new([(p, Weight::new(vec![m]))])
    }

    #[test]
    fn blocks_report_examples() {
        let a1 = RootSystem::new(TypeLetter::A, 1).unwrap();
        let os = OrbitSpace::loop_points(&["M", "N"]).unwrap();

        let groups = blocks_report(&a1, &os, &[at("M", 2), at("M", 4), at("M", 1)], Strategy::Sequential).unwrap();
        let members: Vec<_> = groups.iter().map(|g| g.members.clone()).collect();
        assert_eq!(members, vec![vec![0, 1], vec![2]]);
        assert!(groups[0].character.is_trivial());

        assert!(blocks_report(&a1, &os, &[], Strategy::Sequential).unwrap().is_empty());

        let groups = blocks_report(&a1, &os, &[at("M", 1), at("N", 1)], Strategy::Sequential).unwrap();
        assert_eq!(groups.len(), 2);
    }

    #[test]
    fn report_round_trips() {
        let r = Report {
            schema: SCHEMA.into(),
            command: vec!["prv".into(), "A".into()],
            inputs_digest: "00".into(),
            result: Some(serde_json::json!({"c": 1})),
            error: None,
        };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&s).unwrap(), r);
    }
}
