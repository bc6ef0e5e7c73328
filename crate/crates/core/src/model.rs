//! Network graph, node and edge parameters, and operation-mode states.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::{topological_order_of, TopoOrder};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Static parameters of a node. All volumes are monthly, in mcm.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeParams<T> {
    pub id: NodeId,
    pub name: String,
    /// Upper bound on non-reservoir inlet (production, LNG, imports).
    pub max_inlet: T,
    /// Volume that can be withdrawn from storage at this node.
    pub reservoir_capacity: T,
    /// Demand under normal operation; also the upper bound on consumption.
    pub nominal_consumption: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeParams<T> {
    pub id: EdgeId,
    pub from: NodeId,
    pub to: NodeId,
    pub capacity: T,
    pub failure_probability: Option<T>,
    pub transfer_cost: Option<T>,
}

/// Immutable directed acyclic pipeline graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Network<T> {
    nodes: Vec<NodeParams<T>>,
    edges: Vec<EdgeParams<T>>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    topo: Vec<NodeId>,
}

impl<T: Scalar> Network<T> {
    /// Builds and validates a network. Ids must equal list positions.
    pub fn new(nodes: Vec<NodeParams<T>>, edges: Vec<EdgeParams<T>>) -> Result<Self> {
        let n = nodes.len();
        for (pos, node) in nodes.iter().enumerate() {
            if node.id.0 != pos {
                return Err(Error::invalid(
                    "node id",
                    format!("node at position {pos} has id {}", node.id),
                ));
            }
            for (what, v) in [
                ("max_inlet", node.max_inlet),
                ("reservoir_capacity", node.reservoir_capacity),
                ("nominal_consumption", node.nominal_consumption),
            ] {
                if v < T::zero() {
                    return Err(Error::invalid(
                        what,
                        format!("node {} ({}) has negative value {v}", node.id, node.name),
                    ));
                }
            }
        }
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        let mut seen = BTreeMap::new();
        for (pos, edge) in edges.iter().enumerate() {
            if edge.id.0 != pos {
                return Err(Error::invalid(
                    "edge id",
                    format!("edge at position {pos} has id {}", edge.id),
                ));
            }
            if edge.from.0 >= n {
                return Err(Error::UnknownNode(edge.from.0));
            }
            if edge.to.0 >= n {
                return Err(Error::UnknownNode(edge.to.0));
            }
            if edge.from == edge.to {
                return Err(Error::SelfLoop(edge.id));
            }
            if seen.insert((edge.from, edge.to), edge.id).is_some() {
                return Err(Error::ParallelEdge {
                    from: edge.from,
                    to: edge.to,
                });
            }
            if edge.capacity < T::zero() {
                return Err(Error::invalid(
                    "capacity",
                    format!("edge {} has negative capacity {}", edge.id, edge.capacity),
                ));
            }
            if let Some(p) = edge.failure_probability {
                if p < T::zero() || p > T::one() {
                    return Err(Error::invalid(
                        "failure_probability",
                        format!("edge {} has probability {p} outside [0, 1]", edge.id),
                    ));
                }
            }
            if let Some(c) = edge.transfer_cost {
                if c < T::zero() {
                    return Err(Error::invalid(
                        "transfer_cost",
                        format!("edge {} has negative cost {c}", edge.id),
                    ));
                }
            }
            out_edges[edge.from.0].push(edge.id);
            in_edges[edge.to.0].push(edge.id);
        }
        let arcs: Vec<_> = edges.iter().map(|e| (e.from, e.to)).collect();
        let topo = match topological_order_of(n, &arcs) {
            TopoOrder::Order(order) => order,
            TopoOrder::Cycle(witness) => return Err(Error::Cyclic(witness)),
        };
        Ok(Network {
            nodes,
            edges,
            out_edges,
            in_edges,
            topo,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[NodeParams<T>] {
        &self.nodes
    }

    pub fn edges(&self) -> &[EdgeParams<T>] {
        &self.edges
    }

    pub fn node(&self, id: NodeId) -> Result<&NodeParams<T>> {
        self.nodes.get(id.0).ok_or(Error::UnknownNode(id.0))
    }

    pub fn edge(&self, id: EdgeId) -> Result<&EdgeParams<T>> {
        self.edges.get(id.0).ok_or(Error::UnknownEdge(id.0))
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().find(|n| n.name == name).map(|n| n.id)
    }

    pub fn edge_between(&self, from: NodeId, to: NodeId) -> Option<EdgeId> {
        self.out_edges
            .get(from.0)?
            .iter()
            .copied()
            .find(|&e| self.edges[e.0].to == to)
    }

    pub fn out_edges(&self, node: NodeId) -> &[EdgeId] {
        &self.out_edges[node.0]
    }

    pub fn in_edges(&self, node: NodeId) -> &[EdgeId] {
        &self.in_edges[node.0]
    }

    /// Topological order; ties broken by ascending node id.
    pub fn topological_order(&self) -> &[NodeId] {
        &self.topo
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    /// Largest parameter volume in the network, or one if all are zero.
    /// Used to make solver tolerances scale-invariant.
    pub fn volume_scale(&self) -> T {
        let nodes = self.nodes.iter().flat_map(|n| {
            [n.max_inlet, n.reservoir_capacity, n.nominal_consumption]
        });
        let scale = self
            .edges
            .iter()
            .map(|e| e.capacity)
            .chain(nodes)
            .fold(T::zero(), T::max_of);
        if scale > T::zero() {
            scale
        } else {
            T::one()
        }
    }

    /// Nodes with a positive withdrawable reservoir volume.
    pub fn reservoir_nodes(&self) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|n| n.reservoir_capacity > T::zero())
            .map(|n| n.id)
            .collect()
    }

    pub fn total_nominal_consumption(&self) -> T {
        self.nodes
            .iter()
            .fold(T::zero(), |acc, n| acc + n.nominal_consumption)
    }

    pub fn effective_capacity(&self, edge: EdgeId, overrides: &CapacityOverrides<T>) -> T {
        overrides
            .get(edge)
            .unwrap_or_else(|| self.edges[edge.0].capacity)
    }

    /// Converts every volume into another scalar type.
    pub fn map_scalar<U: Scalar>(&self, mut f: impl FnMut(T) -> U) -> Network<U> {
        let nodes = self
            .nodes
            .iter()
            .map(|n| NodeParams {
                id: n.id,
                name: n.name.clone(),
                max_inlet: f(n.max_inlet),
                reservoir_capacity: f(n.reservoir_capacity),
                nominal_consumption: f(n.nominal_consumption),
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| EdgeParams {
                id: e.id,
                from: e.from,
                to: e.to,
                capacity: f(e.capacity),
                failure_probability: e.failure_probability.map(&mut f),
                transfer_cost: e.transfer_cost.map(&mut f),
            })
            .collect();
        Network {
            nodes,
            edges,
            out_edges: self.out_edges.clone(),
            in_edges: self.in_edges.clone(),
            topo: self.topo.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    /// Normal operation: the given baseline.
    Nom,
    /// Disrupted operation after a line failure has propagated.
    Dom,
    /// Disrupted state plus re-routing of spare inlet capacity.
    Rrom,
    /// Re-routed state plus reservoir withdrawal.
    Raom,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Nom => "NOM",
            Mode::Dom => "DOM",
            Mode::Rrom => "RROM",
            Mode::Raom => "RAOM",
        })
    }
}

/// Complete state of one operation mode.
#[derive(Clone, Debug, PartialEq)]
pub struct OperationState<T> {
    pub mode: Mode,
    pub inlet: Vec<T>,
    pub reservoir_inlet: Vec<T>,
    pub consumption: Vec<T>,
    pub flow: Vec<T>,
}

impl<T: Scalar> OperationState<T> {
    pub fn zeros(network: &Network<T>, mode: Mode) -> Self {
        let n = network.node_count();
        OperationState {
            mode,
            inlet: vec![T::zero(); n],
            reservoir_inlet: vec![T::zero(); n],
            consumption: vec![T::zero(); n],
            flow: vec![T::zero(); network.edge_count()],
        }
    }

    pub fn total_consumption(&self) -> T {
        self.consumption.iter().fold(T::zero(), |a, &c| a + c)
    }

    pub fn total_inlet(&self) -> T {
        self.inlet.iter().fold(T::zero(), |a, &c| a + c)
    }

    pub fn total_reservoir_inlet(&self) -> T {
        self.reservoir_inlet.iter().fold(T::zero(), |a, &c| a + c)
    }

    pub fn total_flow(&self) -> T {
        self.flow.iter().fold(T::zero(), |a, &c| a + c)
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn map_scalar<U: Scalar>(&self, mut f: impl FnMut(T) -> U) -> OperationState<U> {
        let mut conv = |v: &[T]| v.iter().map(|&x| f(x)).collect::<Vec<U>>();
        OperationState {
            mode: self.mode,
            inlet: conv(&self.inlet),
            reservoir_inlet: conv(&self.reservoir_inlet),
            consumption: conv(&self.consumption),
            flow: conv(&self.flow),
        }
    }

    pub(crate) fn check_dimensions(&self, network: &Network<T>) -> Result<()> {
        let n = network.node_count();
        for (what, len) in [
            ("inlet", self.inlet.len()),
            ("reservoir_inlet", self.reservoir_inlet.len()),
            ("consumption", self.consumption.len()),
        ] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    what,
                    expected: n,
                    found: len,
                });
            }
        }
        if self.flow.len() != network.edge_count() {
            return Err(Error::DimensionMismatch {
                what: "flow",
                expected: network.edge_count(),
                found: self.flow.len(),
            });
        }
        Ok(())
    }
}

/// Scenario-specific edge capacities that replace the network's own.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CapacityOverrides<T> {
    capacities: BTreeMap<EdgeId, T>,
}

impl<T: Scalar> CapacityOverrides<T> {
    pub fn new() -> Self {
        CapacityOverrides {
            capacities: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, edge: EdgeId, capacity: T) {
        self.capacities.insert(edge, capacity);
    }

    pub fn get(&self, edge: EdgeId) -> Option<T> {
        self.capacities.get(&edge).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.capacities.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, T)> + '_ {
        self.capacities.iter().map(|(&e, &c)| (e, c))
    }
}

/// Inflow plus inlets minus consumption and outflow. Positive means surplus.
pub fn node_balance_residual<T: Scalar>(
    network: &Network<T>,
    state: &OperationState<T>,
    node: NodeId,
) -> Result<T> {
    if node.0 >= network.node_count() {
        return Err(Error::UnknownNode(node.0));
    }
    state.check_dimensions(network)?;
    Ok(residual_unchecked(network, state, node))
}

pub(crate) fn residual_unchecked<T: Scalar>(
    network: &Network<T>,
    state: &OperationState<T>,
    node: NodeId,
) -> T {
    let j = node.0;
    let inflow = network
        .in_edges(node)
        .iter()
        .fold(T::zero(), |a, e| a + state.flow[e.0]);
    let outflow = network
        .out_edges(node)
        .iter()
        .fold(T::zero(), |a, e| a + state.flow[e.0]);
    inflow + state.inlet[j] + state.reservoir_inlet[j] - state.consumption[j] - outflow
}

pub fn is_balanced<T: Scalar>(network: &Network<T>, state: &OperationState<T>, eps: T) -> bool {
    state.check_dimensions(network).is_ok()
        && network
            .node_ids()
            .all(|j| residual_unchecked(network, state, j).abs() <= eps)
}

/// Effective capacity minus current flow, per edge.
pub fn free_capacity<T: Scalar>(
    network: &Network<T>,
    state: &OperationState<T>,
    overrides: &CapacityOverrides<T>,
) -> Result<Vec<T>> {
    state.check_dimensions(network)?;
    network
        .edge_ids()
        .map(|e| {
            let cap = network.effective_capacity(e, overrides);
            let flow = state.flow[e.0];
            if flow > cap {
                Err(Error::FlowExceedsCapacity {
                    edge: e,
                    flow: flow.to_f64_lossy(),
                    capacity: cap.to_f64_lossy(),
                })
            } else {
                Ok(cap - flow)
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Node(NodeId),
    Edge(EdgeId),
    State,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    DimensionMismatch,
    WrongMode,
    NegativeValue,
    InletExceedsMax,
    ReservoirExceedsCapacity,
    ConsumptionExceedsNominal,
    FlowExceedsCapacity,
    ReservoirActiveOutsideRaom,
    Imbalance,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::DimensionMismatch => "dimension mismatch",
            ViolationKind::WrongMode => "unexpected operation mode",
            ViolationKind::NegativeValue => "negative value",
            ViolationKind::InletExceedsMax => "inlet exceeds maximum",
            ViolationKind::ReservoirExceedsCapacity => "reservoir inlet exceeds capacity",
            ViolationKind::ConsumptionExceedsNominal => "consumption exceeds nominal",
            ViolationKind::FlowExceedsCapacity => "flow exceeds capacity",
            ViolationKind::ReservoirActiveOutsideRaom => "reservoir active outside RAOM",
            ViolationKind::Imbalance => "node imbalance",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation<T> {
    pub subject: Subject,
    pub kind: ViolationKind,
    /// Amount by which the bound is exceeded (or the signed residual).
    pub magnitude: T,
}

impl<T: Scalar> fmt::Display for Violation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.subject {
            Subject::Node(id) => write!(f, "node {id}: ")?,
            Subject::Edge(id) => write!(f, "edge {id}: ")?,
            Subject::State => {}
        }
        write!(f, "{} ({})", self.kind, self.magnitude)
    }
}

/// Checks every state invariant; the result is empty iff the state is valid.
pub fn validate_state<T: Scalar>(
    network: &Network<T>,
    state: &OperationState<T>,
    overrides: &CapacityOverrides<T>,
    eps: T,
) -> Vec<Violation<T>> {
    let mut out = Vec::new();
    if state.check_dimensions(network).is_err() {
        out.push(Violation {
            subject: Subject::State,
            kind: ViolationKind::DimensionMismatch,
            magnitude: T::zero(),
        });
        return out;
    }
    let bounded = |subject, value: T, upper: T, kind, out: &mut Vec<Violation<T>>| {
        if value < -eps {
            out.push(Violation {
                subject,
                kind: ViolationKind::NegativeValue,
                magnitude: -value,
            });
        } else if value - upper > eps {
            out.push(Violation {
                subject,
                kind,
                magnitude: value - upper,
            });
        }
    };
    for node in network.nodes() {
        let j = node.id.0;
        let subject = Subject::Node(node.id);
        bounded(subject, state.inlet[j], node.max_inlet, ViolationKind::InletExceedsMax, &mut out);
        bounded(
            subject,
            state.reservoir_inlet[j],
            node.reservoir_capacity,
            ViolationKind::ReservoirExceedsCapacity,
            &mut out,
        );
        bounded(
            subject,
            state.consumption[j],
            node.nominal_consumption,
            ViolationKind::ConsumptionExceedsNominal,
            &mut out,
        );
        if state.mode != Mode::Raom && state.reservoir_inlet[j].abs() > eps {
            out.push(Violation {
                subject,
                kind: ViolationKind::ReservoirActiveOutsideRaom,
                magnitude: state.reservoir_inlet[j],
            });
        }
    }
    for edge in network.edge_ids() {
        let cap = network.effective_capacity(edge, overrides);
        bounded(
            Subject::Edge(edge),
            state.flow[edge.0],
            cap,
            ViolationKind::FlowExceedsCapacity,
            &mut out,
        );
    }
    for j in network.node_ids() {
        let r = residual_unchecked(network, state, j);
        if r.abs() > eps {
            out.push(Violation {
                subject: Subject::Node(j),
                kind: ViolationKind::Imbalance,
                magnitude: r,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const EPS: f64 = 1e-6;

    fn node_c(net: &Network<f64>) -> NodeId {
        net.node_by_name("C").unwrap()
    }

    #[test]
    fn nominal_node_c_is_balanced() {
        let (net, nom) = fixtures::original_state::<f64>();
        assert_eq!(node_balance_residual(&net, &nom, node_c(&net)).unwrap(), 0.0);
        assert!(is_balanced(&net, &nom, EPS));
    }

    #[test]
    fn zeroing_feed_of_b_leaves_deficiency_of_sixty() {
        let (net, mut nom) = fixtures::original_state::<f64>();
        let a = net.node_by_name("A").unwrap();
        let b = net.node_by_name("B").unwrap();
        let ab = net.edge_between(a, b).unwrap();
        nom.flow[ab.0] = 0.0;
        assert_eq!(node_balance_residual(&net, &nom, b).unwrap(), -60.0);
    }

    #[test]
    fn isolated_node_and_empty_network() {
        let node = NodeParams {
            id: NodeId(0),
            name: "X".into(),
            max_inlet: 0.0,
            reservoir_capacity: 0.0,
            nominal_consumption: 0.0,
        };
        let net = Network::new(vec![node], vec![]).unwrap();
        let s = OperationState::zeros(&net, Mode::Nom);
        assert_eq!(node_balance_residual(&net, &s, NodeId(0)).unwrap(), 0.0);
        assert_eq!(
            node_balance_residual(&net, &s, NodeId(3)),
            Err(Error::UnknownNode(3))
        );
        let empty = Network::<f64>::new(vec![], vec![]).unwrap();
        assert!(is_balanced(&empty, &OperationState::zeros(&empty, Mode::Nom), EPS));
    }

    #[test]
    fn perturbed_flow_is_unbalanced() {
        let (net, mut nom) = fixtures::original_state::<f64>();
        nom.flow[3] += 1.0;
        assert!(!is_balanced(&net, &nom, EPS));
    }

    #[test]
    fn free_capacity_matches_capacity_minus_flow() {
        let (net, mut state) = fixtures::original_state::<f64>();
        let c = node_c(&net);
        let d = net.node_by_name("D").unwrap();
        let cd = net.edge_between(c, d).unwrap();
        state.flow[cd.0] = 72.0;
        let free = free_capacity(&net, &state, &CapacityOverrides::new()).unwrap();
        assert_eq!(free[cd.0], 13.0);
        // A->C runs at capacity in the baseline.
        let ac = net.edge_between(net.node_by_name("A").unwrap(), c).unwrap();
        assert_eq!(free[ac.0], 0.0);

        let (ext, _) = fixtures::extended::<f64>();
        let free = free_capacity(&ext, &state, &CapacityOverrides::new()).unwrap();
        assert_eq!(free[cd.0], 28.0);
    }

    #[test]
    fn free_capacity_rejects_overfull_edge() {
        let (net, nom) = fixtures::original_state::<f64>();
        let mut overrides = CapacityOverrides::new();
        overrides.set(EdgeId(0), 10.0);
        assert!(matches!(
            free_capacity(&net, &nom, &overrides),
            Err(Error::FlowExceedsCapacity { .. })
        ));
    }

    #[test]
    fn validate_state_reports_each_broken_rule() {
        let (net, nom) = fixtures::original_state::<f64>();
        let none = CapacityOverrides::new();
        assert!(validate_state(&net, &nom, &none, EPS).is_empty());

        // Reservoir and inlet move together so the balance still holds.
        let c = node_c(&net);
        let mut s = nom.clone();
        s.reservoir_inlet[c.0] = 5.0;
        s.inlet[c.0] -= 5.0;
        let v = validate_state(&net, &s, &none, EPS);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::ReservoirActiveOutsideRaom);

        let mut s = nom.clone();
        s.consumption[c.0] = 45.0;
        s.inlet[c.0] += 5.0;
        let v = validate_state(&net, &s, &none, EPS);
        let kinds: Vec<_> = v.iter().map(|v| v.kind).collect();
        assert_eq!(kinds, vec![ViolationKind::InletExceedsMax, ViolationKind::ConsumptionExceedsNominal]);
        assert_eq!(v[1].magnitude, 5.0);
    }

    #[test]
    fn residual_perturbation_touches_exactly_two_nodes() {
        let (net, nom) = fixtures::original_state::<f64>();
        for e in net.edge_ids() {
            let mut s = nom.clone();
            s.flow[e.0] += 0.25;
            let edge = net.edge(e).unwrap();
            for j in net.node_ids() {
                let r = node_balance_residual(&net, &s, j).unwrap();
                let expected = if j == edge.to {
                    0.25
                } else if j == edge.from {
                    -0.25
                } else {
                    0.0
                };
                assert_eq!(r, expected);
            }
        }
    }

    #[test]
    fn construction_rejects_bad_topology() {
        let (net, _) = fixtures::original_state::<f64>();
        let nodes = net.nodes().to_vec();
        let mut edges = net.edges().to_vec();
        edges[0].to = edges[0].from;
        assert_eq!(Network::new(nodes.clone(), edges), Err(Error::SelfLoop(EdgeId(0))));

        let mut edges = net.edges().to_vec();
        edges[1].to = edges[0].to;
        assert!(matches!(Network::new(nodes.clone(), edges), Err(Error::ParallelEdge { .. })));

        let mut edges = net.edges().to_vec();
        edges[0].to = NodeId(17);
        assert_eq!(Network::new(nodes.clone(), edges), Err(Error::UnknownNode(17)));

        let mut edges = net.edges().to_vec();
        // E->F becomes F->A, closing A -> ... -> F -> A.
        edges[9].from = edges[9].to;
        edges[9].to = NodeId(0);
        assert!(matches!(Network::new(nodes, edges), Err(Error::Cyclic(_))));
    }
}
