//! Disrupted operation mode.
//!
//! A line failure lowers one or more edge capacities. Flows that no longer
//! fit are cut, which leaves the tail of the edge with surplus and its head
//! with a deficiency. Imbalances are then resolved node by node:
//!
//! * surplus: inlet and all inflows shrink by one common factor, pushing
//!   surplus further upstream;
//! * deficiency: the node keeps as much of its own consumption as the
//!   available gas allows and splits the rest over its outflows in their
//!   current proportions, pushing deficiency downstream.
//!
//! Deficiencies are swept in topological order and surpluses in reverse
//! topological order until no node is out of balance.

use crate::error::{Error, Result};
use crate::model::{residual_unchecked, CapacityOverrides, EdgeId, Mode, Network, NodeId, OperationState};
use crate::preprocess::Nom;
use crate::scalar::Scalar;

/// A set of simultaneous line failures.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario<T> {
    pub label: String,
    /// Failed edges with the fraction of capacity that remains (0 = cut).
    pub failed_edges: Vec<(EdgeId, T)>,
}

impl<T: Scalar> Scenario<T> {
    pub fn edge_failure(network: &Network<T>, edge: EdgeId) -> Self {
        Self::partial_failure(network, edge, T::zero())
    }

    pub fn partial_failure(network: &Network<T>, edge: EdgeId, residual_fraction: T) -> Self {
        let label = match network.edge(edge) {
            Ok(e) => {
                let names = network.nodes();
                format!("{}->{}", names[e.from.0].name, names[e.to.0].name)
            }
            Err(_) => format!("edge {edge}"),
        };
        Scenario {
            label,
            failed_edges: vec![(edge, residual_fraction)],
        }
    }

    /// Full failure of every edge touching `node`.
    pub fn node_failure(network: &Network<T>, node: NodeId) -> Result<Self> {
        let params = network.node(node)?;
        let mut edges: Vec<EdgeId> = network
            .in_edges(node)
            .iter()
            .chain(network.out_edges(node))
            .copied()
            .collect();
        edges.sort();
        Ok(Scenario {
            label: format!("node {}", params.name),
            failed_edges: edges.into_iter().map(|e| (e, T::zero())).collect(),
        })
    }

    /// One full single-edge failure per edge, in edge order.
    pub fn n_minus_one(network: &Network<T>) -> Vec<Self> {
        network
            .edge_ids()
            .map(|e| Self::edge_failure(network, e))
            .collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.failed_edges.iter().map(|&(e, _)| e)
    }
}

/// Disrupted state together with the scenario's capacity overrides.
#[derive(Clone, Debug, PartialEq)]
pub struct Disrupted<T> {
    pub state: OperationState<T>,
    pub overrides: CapacityOverrides<T>,
}

/// Lowers failed capacities and cuts flows to fit. The result is usually
/// out of balance at the failed edges' endpoints.
pub fn apply_disruption<T: Scalar>(
    network: &Network<T>,
    nom: &Nom<T>,
    scenario: &Scenario<T>,
) -> Result<Disrupted<T>> {
    nom.check_dimensions(network)?;
    let mut overrides = CapacityOverrides::new();
    let mut state = nom.state().clone().with_mode(Mode::Dom);
    for &(edge, fraction) in &scenario.failed_edges {
        let params = network.edge(edge)?;
        if fraction < T::zero() || fraction > T::one() {
            return Err(Error::invalid(
                "residual fraction",
                format!("{fraction} for edge {edge} is outside [0, 1]"),
            ));
        }
        let capacity = fraction * params.capacity;
        overrides.set(edge, capacity);
        state.flow[edge.0] = state.flow[edge.0].min_of(capacity);
    }
    Ok(Disrupted { state, overrides })
}

/// Scales `values` so they sum to `target`. Zero total with zero target is
/// a no-op; zero total with a positive target cannot be met.
fn scale_to<T: Scalar>(values: &mut [&mut T], target: T) -> Result<()> {
    let total = values.iter().fold(T::zero(), |a, v| a + **v);
    if total == T::zero() {
        if target == T::zero() {
            return Ok(());
        }
        return Err(Error::Internal(format!(
            "cannot scale zero quantities up to {target}"
        )));
    }
    let factor = target / total;
    for v in values.iter_mut() {
        **v = **v * factor;
    }
    Ok(())
}

/// Restores balance at a node with surplus by shrinking its inlet and
/// inflows by a common factor. Does nothing if the node is not in surplus.
pub fn resolve_surplus<T: Scalar>(
    network: &Network<T>,
    state: &mut OperationState<T>,
    node: NodeId,
) -> Result<()> {
    network.node(node)?;
    state.check_dimensions(network)?;
    if residual_unchecked(network, state, node) <= T::zero() {
        return Ok(());
    }
    let j = node.0;
    let outflow = network
        .out_edges(node)
        .iter()
        .fold(T::zero(), |a, e| a + state.flow[e.0]);
    let needed = state.consumption[j] + outflow - state.reservoir_inlet[j];
    let OperationState { inlet, flow, .. } = state;
    let mut parts: Vec<&mut T> = vec![&mut inlet[j]];
    let in_edges = network.in_edges(node);
    parts.extend(
        flow.iter_mut()
            .enumerate()
            .filter(|(i, _)| in_edges.contains(&EdgeId(*i)))
            .map(|(_, f)| f),
    );
    scale_to(&mut parts, needed.max_of(T::zero()))
}

/// Restores balance at a node with a deficiency: consumption is served
/// first, then outflows share what is left in their current proportions.
/// Does nothing if the node is not in deficiency.
pub fn resolve_deficiency<T: Scalar>(
    network: &Network<T>,
    state: &mut OperationState<T>,
    node: NodeId,
) -> Result<()> {
    network.node(node)?;
    state.check_dimensions(network)?;
    if residual_unchecked(network, state, node) >= T::zero() {
        return Ok(());
    }
    let j = node.0;
    let inflow = network
        .in_edges(node)
        .iter()
        .fold(T::zero(), |a, e| a + state.flow[e.0]);
    let available = state.inlet[j] + state.reservoir_inlet[j] + inflow;
    state.consumption[j] = state.consumption[j].min_of(available);
    let remaining = (available - state.consumption[j]).max_of(T::zero());
    let out_edges = network.out_edges(node);
    let mut parts: Vec<&mut T> = state
        .flow
        .iter_mut()
        .enumerate()
        .filter(|(i, _)| out_edges.contains(&EdgeId(*i)))
        .map(|(_, f)| f)
        .collect();
    scale_to(&mut parts, remaining)
}

/// Propagates a scenario from the baseline until every node balances.
pub fn compute_dom<T: Scalar>(
    network: &Network<T>,
    nom: &Nom<T>,
    scenario: &Scenario<T>,
) -> Result<Disrupted<T>> {
    let mut disrupted = apply_disruption(network, nom, scenario)?;
    settle(network, &mut disrupted.state)?;
    Ok(disrupted)
}

/// Imbalance threshold: relative tolerance times the network's volume scale.
pub(crate) fn balance_threshold<T: Scalar>(network: &Network<T>) -> T {
    T::tolerance() * network.volume_scale()
}

fn settle<T: Scalar>(network: &Network<T>, state: &mut OperationState<T>) -> Result<()> {
    let eps = balance_threshold(network);
    let order = network.topological_order();
    let cap = 10 * network.node_count().max(1) * network.edge_count().max(1);
    let mut resolutions = 0usize;
    loop {
        let mut changed = false;
        for &j in order {
            if residual_unchecked(network, state, j) < -eps {
                resolve_deficiency(network, state, j)?;
                resolutions += 1;
                changed = true;
            }
        }
        for &j in order.iter().rev() {
            if residual_unchecked(network, state, j) > eps {
                resolve_surplus(network, state, j)?;
                resolutions += 1;
                changed = true;
            }
        }
        if !changed {
            return Ok(());
        }
        if resolutions > cap {
            let open: Vec<String> = network
                .node_ids()
                .map(|j| (j, residual_unchecked(network, state, j)))
                .filter(|(_, r)| r.abs() > eps)
                .map(|(j, r)| format!("{}: {r}", network.nodes()[j.0].name))
                .collect();
            return Err(Error::Internal(format!(
                "disruption did not settle after {resolutions} node resolutions; still open: {}",
                open.join(", ")
            )));
        }
    }
}
