//! Input preparation: topological ordering, flow-cycle removal and
//! baseline validation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::model::{validate_state, CapacityOverrides, Mode, Network, NodeId, OperationState, Violation};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopoOrder {
    /// Every arc goes from an earlier to a later node.
    Order(Vec<NodeId>),
    /// Nodes of one directed cycle, starting at its smallest id.
    Cycle(Vec<NodeId>),
}

/// Kahn's algorithm with a min-heap, so ready nodes leave in ascending id.
pub fn topological_order_of(node_count: usize, arcs: &[(NodeId, NodeId)]) -> TopoOrder {
    let mut indegree = vec![0usize; node_count];
    let mut succ = vec![Vec::new(); node_count];
    let mut pred = vec![Vec::new(); node_count];
    for &(from, to) in arcs {
        indegree[to.0] += 1;
        succ[from.0].push(to.0);
        pred[to.0].push(from.0);
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..node_count)
        .filter(|&j| indegree[j] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(node_count);
    while let Some(Reverse(j)) = ready.pop() {
        order.push(NodeId(j));
        for &k in &succ[j] {
            indegree[k] -= 1;
            if indegree[k] == 0 {
                ready.push(Reverse(k));
            }
        }
    }
    if order.len() == node_count {
        return TopoOrder::Order(order);
    }

    // Every leftover node still has a leftover predecessor, so walking
    // predecessors from any of them must revisit a node.
    let start = (0..node_count).find(|&j| indegree[j] > 0).unwrap();
    let mut visited_at = vec![usize::MAX; node_count];
    let mut walk = Vec::new();
    let mut cur = start;
    while visited_at[cur] == usize::MAX {
        visited_at[cur] = walk.len();
        walk.push(cur);
        cur = pred[cur]
            .iter()
            .copied()
            .filter(|&p| indegree[p] > 0)
            .min()
            .expect("leftover node has a leftover predecessor");
    }
    let mut cycle: Vec<NodeId> = walk[visited_at[cur]..].iter().rev().map(|&j| NodeId(j)).collect();
    let first = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, n)| n.0)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(first);
    TopoOrder::Cycle(cycle)
}

pub fn topological_order<T: Scalar>(network: &Network<T>) -> TopoOrder {
    let arcs: Vec<_> = network.edges().iter().map(|e| (e.from, e.to)).collect();
    topological_order_of(network.node_count(), &arcs)
}

/// Removes circulations from a flow vector.
///
/// Repeatedly finds a directed cycle among arcs carrying more than `eps`
/// and subtracts the cycle's smallest flow from each of its arcs. Node net
/// balances are unchanged and no arc flow grows. Arcs at or below `eps` are
/// left as they are.
pub fn strip_flow_cycles<T: Scalar>(
    node_count: usize,
    arcs: &[(NodeId, NodeId)],
    flow: &[T],
    eps: T,
) -> Result<Vec<T>> {
    if flow.len() != arcs.len() {
        return Err(Error::DimensionMismatch {
            what: "flow",
            expected: arcs.len(),
            found: flow.len(),
        });
    }
    if let Some((i, f)) = flow.iter().enumerate().find(|(_, f)| **f < T::zero()) {
        return Err(Error::invalid("flow", format!("arc {i} has negative flow {f}")));
    }
    if let Some(&(from, to)) = arcs
        .iter()
        .find(|(from, to)| from.0 >= node_count || to.0 >= node_count)
    {
        return Err(Error::UnknownNode(from.0.max(to.0)));
    }
    let mut out_arcs = vec![Vec::new(); node_count];
    for (i, &(from, _)) in arcs.iter().enumerate() {
        out_arcs[from.0].push(i);
    }
    let mut flow = flow.to_vec();
    while let Some(cycle) = find_positive_cycle(node_count, arcs, &out_arcs, &flow, eps) {
        let (min_pos, min_flow) = cycle
            .iter()
            .enumerate()
            .map(|(pos, &a)| (pos, flow[a]))
            .fold((0, flow[cycle[0]]), |best, cur| if cur.1 < best.1 { cur } else { best });
        for (pos, &a) in cycle.iter().enumerate() {
            flow[a] = if pos == min_pos {
                T::zero()
            } else {
                (flow[a] - min_flow).max_of(T::zero())
            };
        }
    }
    Ok(flow)
}

/// Depth-first search from ascending node ids over positive arcs; returns
/// the arc indices of the first cycle closed.
fn find_positive_cycle<T: Scalar>(
    node_count: usize,
    arcs: &[(NodeId, NodeId)],
    out_arcs: &[Vec<usize>],
    flow: &[T],
    eps: T,
) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color = vec![Color::White; node_count];
    for root in 0..node_count {
        if color[root] != Color::White {
            continue;
        }
        // Stack of (node, next out-arc position, arc used to enter node).
        let mut stack: Vec<(usize, usize, Option<usize>)> = vec![(root, 0, None)];
        color[root] = Color::Gray;
        while let Some(top) = stack.last_mut() {
            let (node, pos) = (top.0, top.1);
            if pos == out_arcs[node].len() {
                color[node] = Color::Black;
                stack.pop();
                continue;
            }
            top.1 += 1;
            let arc = out_arcs[node][pos];
            if flow[arc] <= eps {
                continue;
            }
            let head = arcs[arc].1 .0;
            match color[head] {
                Color::White => {
                    color[head] = Color::Gray;
                    stack.push((head, 0, Some(arc)));
                }
                Color::Gray => {
                    let start = stack.iter().position(|s| s.0 == head).unwrap();
                    let mut cycle: Vec<usize> =
                        stack[start + 1..].iter().filter_map(|s| s.2).collect();
                    cycle.push(arc);
                    return Some(cycle);
                }
                Color::Black => {}
            }
        }
    }
    None
}

/// A baseline state that passed validation.
#[derive(Clone, Debug, PartialEq)]
pub struct Nom<T>(OperationState<T>);

impl<T> Nom<T> {
    pub fn state(&self) -> &OperationState<T> {
        &self.0
    }

    pub fn into_state(self) -> OperationState<T> {
        self.0
    }
}

impl<T> Deref for Nom<T> {
    type Target = OperationState<T>;

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

/// Accepts a normal-operation state if every invariant holds at `eps`.
pub fn check_nom<T: Scalar>(
    network: &Network<T>,
    state: OperationState<T>,
    eps: T,
) -> std::result::Result<Nom<T>, Vec<Violation<T>>> {
    let mut violations = validate_state(network, &state, &CapacityOverrides::new(), eps);
    if state.mode != Mode::Nom {
        violations.insert(
            0,
            Violation {
                subject: crate::model::Subject::State,
                kind: crate::model::ViolationKind::WrongMode,
                magnitude: T::zero(),
            },
        );
    }
    if violations.is_empty() {
        Ok(Nom(state))
    } else {
        Err(violations)
    }
}
