//! Re-routing (RROM) and reserve activation (RAOM).
//!
//! Both modes add an increment on top of a balanced base state. The
//! increment carries gas from sources (spare inlet capacity, or reservoir
//! withdrawal) over free line capacity to nodes with an outage, and is
//! chosen in three stages:
//!
//! 1. maximize the total restored consumption;
//! 2. keeping that total, make the restored volumes of the reachable
//!    outage nodes as even as possible (chained squared differences in
//!    ascending node order);
//! 3. keeping that consumption vector, minimize the total extra flow, or
//!    the cost-weighted extra flow if requested.

use std::collections::VecDeque;

use crate::dom::{balance_threshold, Disrupted};
use crate::error::{Error, Result};
use crate::lexopt::{
    solve_lp, solve_qp, Bounds, LinearProgram, LpOutcome, QpOutcome, QuadraticProgram, Sense,
};
use crate::model::{CapacityOverrides, Mode, Network, NodeId, OperationState};
use crate::preprocess::Nom;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceKind {
    /// Unused inlet capacity; yields RROM.
    SpareInlets,
    /// Reservoir withdrawal; yields RAOM.
    Reservoirs,
}

impl SourceKind {
    pub fn mode(self) -> Mode {
        match self {
            SourceKind::SpareInlets => Mode::Rrom,
            SourceKind::Reservoirs => Mode::Raom,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RestorationOptions {
    /// Weight stage-three flows by edge transfer costs (missing costs
    /// count as one).
    pub use_costs: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestorationProblem<T> {
    pub source_kind: SourceKind,
    /// Upper bound on the extra source volume per node.
    pub source_bounds: Vec<T>,
    /// Upper bound on the restored consumption per node (its outage).
    pub outage_bounds: Vec<T>,
    /// Upper bound on the extra flow per edge (its free capacity).
    pub edge_bounds: Vec<T>,
    /// Outage nodes reachable from a source over edges with free capacity,
    /// ascending.
    pub reachable_set: Vec<NodeId>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestorationSolution<T> {
    pub source_inlet: Vec<T>,
    pub restored_consumption: Vec<T>,
    pub incremental_flow: Vec<T>,
    /// Optimal total of stage one.
    pub stage1_total: T,
    /// Consumption vector fixed by stage two.
    pub stage2_vector: Vec<T>,
    /// Total extra flow of the stage-two solution, before stage three.
    pub stage2_flow_total: T,
}

impl<T: Scalar> RestorationSolution<T> {
    fn zero(n: usize, m: usize) -> Self {
        RestorationSolution {
            source_inlet: vec![T::zero(); n],
            restored_consumption: vec![T::zero(); n],
            incremental_flow: vec![T::zero(); m],
            stage1_total: T::zero(),
            stage2_vector: vec![T::zero(); n],
            stage2_flow_total: T::zero(),
        }
    }

    pub fn total_restored(&self) -> T {
        self.restored_consumption
            .iter()
            .fold(T::zero(), |a, &c| a + c)
    }
}

/// Nominal minus current consumption, per node, never negative.
pub fn outage_vector<T: Scalar>(nom: &OperationState<T>, current: &OperationState<T>) -> Result<Vec<T>> {
    if nom.consumption.len() != current.consumption.len() {
        return Err(Error::DimensionMismatch {
            what: "consumption",
            expected: nom.consumption.len(),
            found: current.consumption.len(),
        });
    }
    Ok(nom
        .consumption
        .iter()
        .zip(&current.consumption)
        .map(|(&n, &c)| (n - c).max_of(T::zero()))
        .collect())
}

/// Capacity left on each edge in `state`. Overshoot within `eps` counts as
/// zero.
fn residual_capacity<T: Scalar>(
    network: &Network<T>,
    state: &OperationState<T>,
    overrides: &CapacityOverrides<T>,
    eps: T,
) -> Result<Vec<T>> {
    state.check_dimensions(network)?;
    network
        .edge_ids()
        .map(|e| {
            let cap = network.effective_capacity(e, overrides);
            let flow = state.flow[e.0];
            if flow > cap + eps {
                Err(Error::FlowExceedsCapacity {
                    edge: e,
                    flow: flow.to_f64_lossy(),
                    capacity: cap.to_f64_lossy(),
                })
            } else {
                Ok((cap - flow).max_of(T::zero()))
            }
        })
        .collect()
}

/// Outage nodes reachable from `sources` along edges whose free capacity
/// exceeds `eps`, ascending.
pub fn reachable_outage_nodes<T: Scalar>(
    network: &Network<T>,
    base: &OperationState<T>,
    overrides: &CapacityOverrides<T>,
    sources: &[NodeId],
    outages: &[T],
    eps: T,
) -> Result<Vec<NodeId>> {
    if outages.len() != network.node_count() {
        return Err(Error::DimensionMismatch {
            what: "outages",
            expected: network.node_count(),
            found: outages.len(),
        });
    }
    let free = residual_capacity(network, base, overrides, eps)?;
    let mut seen = vec![false; network.node_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        network.node(s)?;
        if !seen[s.0] {
            seen[s.0] = true;
            queue.push_back(s);
        }
    }
    while let Some(j) = queue.pop_front() {
        for &e in network.out_edges(j) {
            let to = network.edges()[e.0].to;
            if free[e.0] > eps && !seen[to.0] {
                seen[to.0] = true;
                queue.push_back(to);
            }
        }
    }
    Ok(network
        .node_ids()
        .filter(|j| seen[j.0] && outages[j.0] > eps)
        .collect())
}

/// Assembles the bounds of one restoration step on top of `base`.
///
/// With [`SourceKind::Reservoirs`] only the reservoirs in `reservoir_filter`
/// may withdraw (all reservoirs when `None`).
pub fn build_restoration_problem<T: Scalar>(
    network: &Network<T>,
    base: &OperationState<T>,
    nom: &OperationState<T>,
    source_kind: SourceKind,
    reservoir_filter: Option<&[NodeId]>,
    overrides: &CapacityOverrides<T>,
) -> Result<RestorationProblem<T>> {
    base.check_dimensions(network)?;
    nom.check_dimensions(network)?;
    if let Some(filter) = reservoir_filter {
        for &r in filter {
            network.node(r)?;
        }
    }
    let eps = balance_threshold(network);
    let source_bounds: Vec<T> = network
        .nodes()
        .iter()
        .map(|p| match source_kind {
            SourceKind::SpareInlets => (p.max_inlet - base.inlet[p.id.0]).max_of(T::zero()),
            SourceKind::Reservoirs => {
                let allowed = reservoir_filter.is_none_or(|f| f.contains(&p.id));
                if allowed {
                    (p.reservoir_capacity - base.reservoir_inlet[p.id.0]).max_of(T::zero())
                } else {
                    T::zero()
                }
            }
        })
        .collect();
    let outages = outage_vector(nom, base)?;
    let mut edge_bounds = residual_capacity(network, base, overrides, eps)?;
    for b in edge_bounds.iter_mut() {
        if *b <= eps {
            *b = T::zero();
        }
    }
    let sources: Vec<NodeId> = network
        .node_ids()
        .filter(|j| source_bounds[j.0] > eps)
        .collect();
    let reachable_set = reachable_outage_nodes(network, base, overrides, &sources, &outages, eps)?;
    let outage_bounds = network
        .node_ids()
        .map(|j| {
            if reachable_set.contains(&j) {
                outages[j.0]
            } else {
                T::zero()
            }
        })
        .collect();
    Ok(RestorationProblem {
        source_kind,
        source_bounds,
        outage_bounds,
        edge_bounds,
        reachable_set,
    })
}

/// Column layout of the increment vector: sources, consumptions, flows.
struct Layout {
    n: usize,
    m: usize,
}

impl Layout {
    fn source(&self, j: usize) -> usize {
        j
    }
    fn consumption(&self, j: usize) -> usize {
        self.n + j
    }
    fn flow(&self, e: usize) -> usize {
        2 * self.n + e
    }
}

fn check_problem<T: Scalar>(network: &Network<T>, problem: &RestorationProblem<T>) -> Result<()> {
    let n = network.node_count();
    let m = network.edge_count();
    for (what, len, expected) in [
        ("source_bounds", problem.source_bounds.len(), n),
        ("outage_bounds", problem.outage_bounds.len(), n),
        ("edge_bounds", problem.edge_bounds.len(), m),
    ] {
        if len != expected {
            return Err(Error::DimensionMismatch {
                what,
                expected,
                found: len,
            });
        }
    }
    let negative = problem
        .source_bounds
        .iter()
        .chain(&problem.outage_bounds)
        .chain(&problem.edge_bounds)
        .any(|&b| b < T::zero());
    if negative {
        return Err(Error::invalid("restoration bounds", "negative bound"));
    }
    for &j in &problem.reachable_set {
        network.node(j)?;
    }
    Ok(())
}

/// Bounds and conservation rows in units of the network's volume scale.
fn feasible_set<T: Scalar>(
    network: &Network<T>,
    problem: &RestorationProblem<T>,
    scale: T,
    sense: Sense,
) -> LinearProgram<T> {
    let lay = Layout {
        n: network.node_count(),
        m: network.edge_count(),
    };
    let mut lp = LinearProgram::new(sense);
    for &b in &problem.source_bounds {
        lp.add_var(T::zero(), Bounds::new(T::zero(), b / scale));
    }
    for &b in &problem.outage_bounds {
        lp.add_var(T::zero(), Bounds::new(T::zero(), b / scale));
    }
    for &b in &problem.edge_bounds {
        lp.add_var(T::zero(), Bounds::new(T::zero(), b / scale));
    }
    for j in network.node_ids() {
        let mut row = vec![
            (lay.source(j.0), T::one()),
            (lay.consumption(j.0), -T::one()),
        ];
        row.extend(network.in_edges(j).iter().map(|e| (lay.flow(e.0), T::one())));
        row.extend(network.out_edges(j).iter().map(|e| (lay.flow(e.0), -T::one())));
        lp.add_equality(row, T::zero());
    }
    debug_assert_eq!(lp.num_vars(), 2 * lay.n + lay.m);
    lp
}

fn stage_failure(stage: u8, what: &str) -> Error {
    Error::Internal(format!("restoration stage {stage} is {what}"))
}

/// Runs the three stages and returns the increment in network units.
pub fn solve_restoration<T: Scalar>(
    network: &Network<T>,
    problem: &RestorationProblem<T>,
    options: RestorationOptions,
) -> Result<RestorationSolution<T>> {
    check_problem(network, problem)?;
    let n = network.node_count();
    let m = network.edge_count();
    let lay = Layout { n, m };
    let has_source = problem.source_bounds.iter().any(|&b| b > T::zero());
    if problem.reachable_set.is_empty() || !has_source {
        return Ok(RestorationSolution::zero(n, m));
    }
    let scale = network.volume_scale();
    let tol = T::tolerance();

    let mut lp = feasible_set(network, problem, scale, Sense::Maximize);
    for j in 0..n {
        lp.objective[lay.consumption(j)] = T::one();
    }
    let stage1 = match solve_lp(&lp, tol)? {
        LpOutcome::Optimal(s) => s,
        LpOutcome::Infeasible => return Err(stage_failure(1, "infeasible")),
        LpOutcome::Unbounded => return Err(stage_failure(1, "unbounded")),
    };
    let total = (0..n).fold(T::zero(), |a, j| a + stage1.x[lay.consumption(j)]);
    if total <= tol {
        return Ok(RestorationSolution::zero(n, m));
    }

    let mut qp = QuadraticProgram::over_feasible_set_of(&lp);
    qp.equalities.push(crate::lexopt::Equality {
        coeffs: (0..n).map(|j| (lay.consumption(j), T::one())).collect(),
        rhs: total,
    });
    for pair in problem.reachable_set.windows(2) {
        qp.add_squared_difference(lay.consumption(pair[0].0), lay.consumption(pair[1].0));
    }
    let stage2 = match solve_qp(&qp, tol)? {
        QpOutcome::Optimal(s) => s,
        QpOutcome::Infeasible => return Err(stage_failure(2, "infeasible")),
        QpOutcome::Unbounded => return Err(stage_failure(2, "unbounded")),
    };
    let consumption: Vec<T> = (0..n)
        .map(|j| {
            let hi = problem.outage_bounds[j] / scale;
            stage2.x[lay.consumption(j)].clamp_to(T::zero(), hi)
        })
        .collect();
    let stage2_flow = (0..m).fold(T::zero(), |a, e| a + stage2.x[lay.flow(e)]);

    let mut lp3 = feasible_set(network, problem, scale, Sense::Minimize);
    for (j, &c) in consumption.iter().enumerate() {
        lp3.bounds[lay.consumption(j)] = Bounds::fixed(c);
    }
    let weights: Vec<T> = network
        .edges()
        .iter()
        .map(|e| match (options.use_costs, e.transfer_cost) {
            (true, Some(c)) => c,
            _ => T::one(),
        })
        .collect();
    let max_weight = weights.iter().fold(T::zero(), |a, &w| a.max_of(w));
    for (e, &w) in weights.iter().enumerate() {
        lp3.objective[lay.flow(e)] = if max_weight > T::zero() { w / max_weight } else { w };
    }
    let stage3 = match solve_lp(&lp3, tol)? {
        LpOutcome::Optimal(s) => s,
        LpOutcome::Infeasible => return Err(stage_failure(3, "infeasible")),
        LpOutcome::Unbounded => return Err(stage_failure(3, "unbounded")),
    };

    let denorm = |idx: usize, hi: T| stage3.x[idx].clamp_to(T::zero(), hi / scale) * scale;
    Ok(RestorationSolution {
        source_inlet: (0..n)
            .map(|j| denorm(lay.source(j), problem.source_bounds[j]))
            .collect(),
        restored_consumption: consumption.iter().map(|&c| c * scale).collect(),
        incremental_flow: (0..m)
            .map(|e| denorm(lay.flow(e), problem.edge_bounds[e]))
            .collect(),
        stage1_total: total * scale,
        stage2_vector: consumption.iter().map(|&c| c * scale).collect(),
        stage2_flow_total: stage2_flow * scale,
    })
}

/// Adds a solved increment to its base state.
pub fn apply_restoration<T: Scalar>(
    base: &OperationState<T>,
    problem: &RestorationProblem<T>,
    solution: &RestorationSolution<T>,
) -> OperationState<T> {
    let mut state = base.clone().with_mode(problem.source_kind.mode());
    let sources = match problem.source_kind {
        SourceKind::SpareInlets => &mut state.inlet,
        SourceKind::Reservoirs => &mut state.reservoir_inlet,
    };
    for (s, &d) in sources.iter_mut().zip(&solution.source_inlet) {
        *s = *s + d;
    }
    for (c, &d) in state.consumption.iter_mut().zip(&solution.restored_consumption) {
        *c = *c + d;
    }
    for (f, &d) in state.flow.iter_mut().zip(&solution.incremental_flow) {
        *f = *f + d;
    }
    state
}

/// Disrupted state plus re-routing of spare inlet capacity.
pub fn compute_rrom<T: Scalar>(
    network: &Network<T>,
    nom: &Nom<T>,
    dom: &Disrupted<T>,
    options: RestorationOptions,
) -> Result<OperationState<T>> {
    let problem = build_restoration_problem(
        network,
        &dom.state,
        nom.state(),
        SourceKind::SpareInlets,
        None,
        &dom.overrides,
    )?;
    let solution = solve_restoration(network, &problem, options)?;
    Ok(apply_restoration(&dom.state, &problem, &solution))
}

/// Re-routed state plus withdrawal from the reservoirs in
/// `reservoir_filter` (all reservoirs when `None`).
pub fn compute_raom<T: Scalar>(
    network: &Network<T>,
    nom: &Nom<T>,
    rrom: &OperationState<T>,
    overrides: &CapacityOverrides<T>,
    reservoir_filter: Option<&[NodeId]>,
    options: RestorationOptions,
) -> Result<OperationState<T>> {
    let problem = build_restoration_problem(
        network,
        rrom,
        nom.state(),
        SourceKind::Reservoirs,
        reservoir_filter,
        overrides,
    )?;
    let solution = solve_restoration(network, &problem, options)?;
    Ok(apply_restoration(rrom, &problem, &solution))
}
