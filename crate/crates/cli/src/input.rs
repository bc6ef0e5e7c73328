use std::fmt;
use std::path::Path;

use gasnet::dom::Scenario;
use gasnet::fixtures;
use gasnet::format::{FormatError, NetworkFile};
use gasnet::model::{EdgeId, Network};
use gasnet::preprocess::Nom;

/// Failure classified by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, unreadable or invalid input. Exit code 1.
    Input(String),
    /// Solver or propagation breakdown. Exit code 2.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "error: {m}"),
            Failure::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<gasnet::Error> for Failure {
    fn from(e: gasnet::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Model(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

pub struct Loaded {
    pub name: String,
    pub network: Network<f64>,
    pub nom: Nom<f64>,
}

/// Reads a network file, or a built-in network when no such file exists.
pub fn read_file(source: &str) -> CliResult<(String, NetworkFile)> {
    let path = Path::new(source);
    let text = if path.exists() {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {source}: {e}")))?
    } else if let Some(text) = fixtures::builtin(source) {
        text.to_string()
    } else {
        return Err(Failure::Input(format!(
            "{source}: no such file and not a built-in network (example_original, example_extended)"
        )));
    };
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| source.to_string());
    let file = NetworkFile::parse(&text).map_err(|e| Failure::Input(format!("{source}: {e}")))?;
    Ok((name, file))
}

pub fn load(source: &str) -> CliResult<Loaded> {
    let (name, file) = read_file(source)?;
    let raw = file.to_raw::<f64>()?;
    let scale = raw
        .nodes
        .iter()
        .flat_map(|n| [n.max_inlet, n.reservoir_capacity, n.nominal_consumption])
        .chain(raw.edges.iter().map(|e| e.capacity))
        .fold(1.0f64, f64::max);
    let (network, nom) = file.load::<f64>(1e-9 * scale)?;
    Ok(Loaded { name, network, nom })
}

/// Scenario for a 1-based edge id as written in the file.
pub fn edge_scenario(net: &Network<f64>, file_id: usize, fraction: f64) -> CliResult<Scenario<f64>> {
    if file_id == 0 || file_id > net.edge_count() {
        return Err(Failure::Input(format!(
            "edge {file_id} does not exist; edges are numbered 1 to {}",
            net.edge_count()
        )));
    }
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Failure::Input(format!("--fraction {fraction} is outside [0, 1]")));
    }
    Ok(Scenario::partial_failure(net, EdgeId(file_id - 1), fraction))
}
