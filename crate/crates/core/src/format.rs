//! Versioned JSON network file.
//!
//! Nodes and edges carry 1-based ids equal to their position in the file;
//! edges refer to nodes by name. Volumes are decimal strings so that a
//! load/save cycle reproduces every value bit for bit. In memory, ids are
//! 0-based (`NodeId(id - 1)`).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::model::{EdgeId, EdgeParams, Mode, Network, NodeId, NodeParams, OperationState};
use crate::preprocess::{check_nom, strip_flow_cycles, topological_order_of, Nom, TopoOrder};
use crate::scalar::Scalar;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("{field}: cannot read volume {value:?}")]
    Volume { field: String, value: String },
    #[error("{what} at position {position} has id {id}; ids must be 1, 2, 3, ... in file order")]
    IdOutOfOrder {
        what: &'static str,
        position: usize,
        id: usize,
    },
    #[error("duplicate node name {0:?}")]
    DuplicateName(String),
    #[error("edge {edge} refers to unknown node {name:?}")]
    UnknownNodeName { edge: usize, name: String },
    #[error("nom.{field} has {found} entries, expected {expected}")]
    NomLength {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("flows contain a directed cycle through {0:?}; run `strip-cycles` first")]
    Cyclic(Vec<String>),
    #[error("baseline state is invalid: {}", .0.join("; "))]
    InvalidNom(Vec<String>),
    #[error(transparent)]
    Model(#[from] Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub format_version: u32,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
    pub nom: NomRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRecord {
    pub id: usize,
    pub name: String,
    pub max_inlet: String,
    pub reservoir_capacity: String,
    pub nominal_consumption: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: usize,
    pub from: String,
    pub to: String,
    pub capacity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure_probability: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transfer_cost: Option<String>,
}

/// Baseline per-node inlet and consumption, per-edge flow, in file order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NomRecord {
    pub inlet: Vec<String>,
    pub consumption: Vec<String>,
    pub flow: Vec<String>,
}

/// Parsed file contents before graph validation.
#[derive(Clone, Debug, PartialEq)]
pub struct RawNetwork<T> {
    pub nodes: Vec<NodeParams<T>>,
    pub edges: Vec<EdgeParams<T>>,
    pub nom: OperationState<T>,
}

impl<T: Scalar> RawNetwork<T> {
    pub fn arcs(&self) -> Vec<(NodeId, NodeId)> {
        self.edges.iter().map(|e| (e.from, e.to)).collect()
    }
}

/// Outcome of [`NetworkFile::strip_cycles`].
#[derive(Clone, Debug, PartialEq)]
pub struct StripSummary {
    /// File ids (before renumbering) of zero-flow edges dropped to break
    /// cycles in the graph itself.
    pub removed_edges: Vec<usize>,
    /// File ids of edges whose flow was reduced.
    pub reduced_edges: Vec<usize>,
}

fn volume<T: Scalar>(field: impl FnOnce() -> String, text: &str) -> Result<T, FormatError> {
    T::parse_volume(text).ok_or_else(|| FormatError::Volume {
        field: field(),
        value: text.to_string(),
    })
}

impl NetworkFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: NetworkFile = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if file.format_version != FORMAT_VERSION {
            return Err(FormatError::Version(file.format_version));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("network file serializes");
        text.push('\n');
        text
    }

    /// Reads every record into typed parameters without checking the graph.
    pub fn to_raw<T: Scalar>(&self) -> Result<RawNetwork<T>, FormatError> {
        let mut by_name = HashMap::new();
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (pos, rec) in self.nodes.iter().enumerate() {
            if rec.id != pos + 1 {
                return Err(FormatError::IdOutOfOrder {
                    what: "node",
                    position: pos + 1,
                    id: rec.id,
                });
            }
            if by_name.insert(rec.name.clone(), NodeId(pos)).is_some() {
                return Err(FormatError::DuplicateName(rec.name.clone()));
            }
            let field = |f: &str| format!("node {} {f}", rec.name);
            nodes.push(NodeParams {
                id: NodeId(pos),
                name: rec.name.clone(),
                max_inlet: volume(|| field("max_inlet"), &rec.max_inlet)?,
                reservoir_capacity: volume(|| field("reservoir_capacity"), &rec.reservoir_capacity)?,
                nominal_consumption: volume(|| field("nominal_consumption"), &rec.nominal_consumption)?,
            });
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (pos, rec) in self.edges.iter().enumerate() {
            if rec.id != pos + 1 {
                return Err(FormatError::IdOutOfOrder {
                    what: "edge",
                    position: pos + 1,
                    id: rec.id,
                });
            }
            let lookup = |name: &String| {
                by_name.get(name).copied().ok_or_else(|| FormatError::UnknownNodeName {
                    edge: rec.id,
                    name: name.clone(),
                })
            };
            let field = |f: &str| format!("edge {} {f}", rec.id);
            edges.push(EdgeParams {
                id: EdgeId(pos),
                from: lookup(&rec.from)?,
                to: lookup(&rec.to)?,
                capacity: volume(|| field("capacity"), &rec.capacity)?,
                failure_probability: rec
                    .failure_probability
                    .as_deref()
                    .map(|t| volume(|| field("failure_probability"), t))
                    .transpose()?,
                transfer_cost: rec
                    .transfer_cost
                    .as_deref()
                    .map(|t| volume(|| field("transfer_cost"), t))
                    .transpose()?,
            });
        }
        let n = nodes.len();
        let m = edges.len();
        let column = |field: &'static str, values: &[String], expected: usize| {
            if values.len() != expected {
                return Err(FormatError::NomLength {
                    field,
                    expected,
                    found: values.len(),
                });
            }
            values
                .iter()
                .enumerate()
                .map(|(i, v)| volume(|| format!("nom.{field}[{i}]"), v))
                .collect::<Result<Vec<T>, _>>()
        };
        let nom = OperationState {
            mode: Mode::Nom,
            inlet: column("inlet", &self.nom.inlet, n)?,
            reservoir_inlet: vec![T::zero(); n],
            consumption: column("consumption", &self.nom.consumption, n)?,
            flow: column("flow", &self.nom.flow, m)?,
        };
        Ok(RawNetwork { nodes, edges, nom })
    }

    /// Parses, builds the network and validates the baseline at `eps`.
    pub fn load<T: Scalar>(&self, eps: T) -> Result<(Network<T>, Nom<T>), FormatError> {
        let raw = self.to_raw::<T>()?;
        let names: Vec<String> = raw.nodes.iter().map(|n| n.name.clone()).collect();
        let network = match Network::new(raw.nodes, raw.edges) {
            Ok(net) => net,
            Err(Error::Cyclic(witness)) => {
                return Err(FormatError::Cyclic(
                    witness.iter().map(|j| names[j.0].clone()).collect(),
                ))
            }
            Err(e) => return Err(e.into()),
        };
        let nom = check_nom(&network, raw.nom, eps).map_err(|violations| {
            FormatError::InvalidNom(
                violations
                    .iter()
                    .map(|v| describe_violation(&network, v))
                    .collect(),
            )
        })?;
        Ok((network, nom))
    }

    pub fn from_model<T: Scalar>(network: &Network<T>, nom: &OperationState<T>) -> Self {
        let name = |j: NodeId| network.nodes()[j.0].name.clone();
        NetworkFile {
            format_version: FORMAT_VERSION,
            nodes: network
                .nodes()
                .iter()
                .map(|n| NodeRecord {
                    id: n.id.0 + 1,
                    name: n.name.clone(),
                    max_inlet: n.max_inlet.format_volume(),
                    reservoir_capacity: n.reservoir_capacity.format_volume(),
                    nominal_consumption: n.nominal_consumption.format_volume(),
                })
                .collect(),
            edges: network
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id.0 + 1,
                    from: name(e.from),
                    to: name(e.to),
                    capacity: e.capacity.format_volume(),
                    failure_probability: e.failure_probability.map(|p| p.format_volume()),
                    transfer_cost: e.transfer_cost.map(|c| c.format_volume()),
                })
                .collect(),
            nom: NomRecord {
                inlet: nom.inlet.iter().map(Scalar::format_volume).collect(),
                consumption: nom.consumption.iter().map(Scalar::format_volume).collect(),
                flow: nom.flow.iter().map(Scalar::format_volume).collect(),
            },
        }
    }

    /// Cancels circulating baseline flow and, if the graph itself is still
    /// cyclic, drops zero-flow edges until it is not. On each remaining
    /// graph cycle the zero-flow edge with the highest id is removed.
    /// Surviving edges are renumbered in their original order.
    pub fn strip_cycles<T: Scalar>(&self, eps: T) -> Result<(NetworkFile, StripSummary), FormatError> {
        let raw = self.to_raw::<T>()?;
        let n = raw.nodes.len();
        let arcs = raw.arcs();
        let stripped = strip_flow_cycles(n, &arcs, &raw.nom.flow, eps)?;
        let reduced_edges = stripped
            .iter()
            .zip(&raw.nom.flow)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i + 1)
            .collect();

        let mut keep = vec![true; arcs.len()];
        loop {
            let live: Vec<usize> = (0..arcs.len()).filter(|&i| keep[i]).collect();
            let live_arcs: Vec<_> = live.iter().map(|&i| arcs[i]).collect();
            let TopoOrder::Cycle(cycle) = topological_order_of(n, &live_arcs) else {
                break;
            };
            let on_cycle = |i: usize| {
                let (a, b) = arcs[i];
                cycle.iter().zip(cycle.iter().cycle().skip(1)).any(|(&x, &y)| x == a && y == b)
            };
            let victim = live
                .iter()
                .copied()
                .filter(|&i| on_cycle(i) && stripped[i] <= eps)
                .max()
                .ok_or_else(|| {
                    Error::Internal("flow cycle survived cancellation".to_string())
                })?;
            keep[victim] = false;
        }

        let mut out = self.clone();
        out.edges.clear();
        out.nom.flow.clear();
        let mut removed_edges = Vec::new();
        for (i, rec) in self.edges.iter().enumerate() {
            if !keep[i] {
                removed_edges.push(rec.id);
                continue;
            }
            let mut rec = rec.clone();
            rec.id = out.edges.len() + 1;
            out.edges.push(rec);
            out.nom.flow.push(stripped[i].format_volume());
        }
        Ok((
            out,
            StripSummary {
                removed_edges,
                reduced_edges,
            },
        ))
    }
}

fn describe_violation<T: Scalar>(network: &Network<T>, v: &crate::model::Violation<T>) -> String {
    use crate::model::Subject;
    match v.subject {
        Subject::Node(j) => format!("node {}: {} ({})", network.nodes()[j.0].name, v.kind, v.magnitude),
        Subject::Edge(e) => format!("edge {}: {} ({})", e.0 + 1, v.kind, v.magnitude),
        Subject::State => format!("{} ({})", v.kind, v.magnitude),
    }
}
