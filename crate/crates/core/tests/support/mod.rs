//! Random instance generators and property checks shared by the core
//! test suites and the acceptance run.

#![allow(dead_code)]

use gasnet::dom::{compute_dom, Scenario};
use gasnet::lexopt::{
    solve_lp, solve_qp, Bounds, LinearProgram, LpOutcome, QpOutcome, QuadraticProgram, Sense,
    SquaredForm,
};
use gasnet::model::{
    validate_state, CapacityOverrides, EdgeId, EdgeParams, Mode, Network, NodeId, NodeParams,
    OperationState,
};
use gasnet::preprocess::{check_nom, strip_flow_cycles, topological_order_of, Nom, TopoOrder};
use gasnet::restoration::{
    build_restoration_problem, compute_raom, compute_rrom, solve_restoration, RestorationOptions,
    SourceKind,
};
use gasnet::significance::{scenario_sweep, SweepOptions};
use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Case {
    pub net: Network<f64>,
    pub nom: Nom<f64>,
}

fn volume(rng: &mut ChaCha8Rng) -> f64 {
    // Quarter units keep some ties and exact cancellations in play.
    f64::from(rng.gen_range(1..=80)) * 0.25
}

/// Random DAG on at most `max_nodes` nodes whose ids are a shuffled
/// topological order, with a balanced baseline built from random paths.
pub fn random_case(seed: u64, max_nodes: usize, max_edges: usize) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_nodes);
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(&mut rng);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rank[a] < rank[b] && rng.gen_bool(0.45) {
                pairs.push((a, b));
            }
        }
    }
    pairs.shuffle(&mut rng);
    pairs.truncate(max_edges);
    if pairs.is_empty() {
        let a = (0..n).find(|&j| rank[j] == 0).unwrap();
        let b = (0..n).find(|&j| rank[j] == 1).unwrap();
        pairs.push((a, b));
    }
    let m = pairs.len();
    let out: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..m).filter(|&e| pairs[e].0 == j).collect())
        .collect();

    let mut inlet = vec![0.0; n];
    let mut consumption = vec![0.0; n];
    let mut flow = vec![0.0; m];
    for _ in 0..rng.gen_range(1..=6) {
        let mut at = rng.gen_range(0..n);
        let v = volume(&mut rng);
        inlet[at] += v;
        while !out[at].is_empty() && rng.gen_bool(0.75) {
            let e = *out[at].choose(&mut rng).unwrap();
            flow[e] += v;
            at = pairs[e].1;
        }
        consumption[at] += v;
    }

    let nodes = (0..n)
        .map(|j| NodeParams {
            id: NodeId(j),
            name: format!("N{j}"),
            max_inlet: if inlet[j] > 0.0 || rng.gen_bool(0.2) {
                inlet[j] + if rng.gen_bool(0.6) { volume(&mut rng) } else { 0.0 }
            } else {
                0.0
            },
            reservoir_capacity: if rng.gen_bool(0.3) { volume(&mut rng) } else { 0.0 },
            nominal_consumption: consumption[j],
        })
        .collect();
    let edges = (0..m)
        .map(|e| EdgeParams {
            id: EdgeId(e),
            from: NodeId(pairs[e].0),
            to: NodeId(pairs[e].1),
            capacity: flow[e] + if rng.gen_bool(0.6) { volume(&mut rng) } else { 0.0 },
            failure_probability: Some(f64::from(rng.gen_range(1..=9)) / 100.0),
            transfer_cost: Some(f64::from(rng.gen_range(1..=5))),
        })
        .collect();
    let net = Network::new(nodes, edges).unwrap();
    let state = OperationState {
        mode: Mode::Nom,
        inlet,
        reservoir_inlet: vec![0.0; n],
        consumption,
        flow,
    };
    let nom = check_nom(&net, state, 1e-9).unwrap();
    Case { net, nom }
}

pub fn random_scenario(net: &Network<f64>, rng: &mut ChaCha8Rng) -> Scenario<f64> {
    let e = EdgeId(rng.gen_range(0..net.edge_count()));
    match rng.gen_range(0..4) {
        0 => Scenario::partial_failure(net, e, f64::from(rng.gen_range(1..=3)) * 0.25),
        1 => Scenario::node_failure(net, NodeId(rng.gen_range(0..net.node_count()))).unwrap(),
        _ => Scenario::edge_failure(net, e),
    }
}

pub struct Chain {
    dom: OperationState<f64>,
    rrom: OperationState<f64>,
    raom: OperationState<f64>,
    overrides: CapacityOverrides<f64>,
}

pub fn chain(net: &Network<f64>, nom: &Nom<f64>, scenario: &Scenario<f64>) -> Chain {
    let opts = RestorationOptions::default();
    let d = compute_dom(net, nom, scenario).unwrap();
    let rrom = compute_rrom(net, nom, &d, opts).unwrap();
    let raom = compute_raom(net, nom, &rrom, &d.overrides, None, opts).unwrap();
    Chain {
        dom: d.state,
        rrom,
        raom,
        overrides: d.overrides,
    }
}

fn all_le(a: &[f64], b: &[f64], slack: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| *x <= *y + slack)
}

fn scaled(case: &Case, lambda: f64) -> Case {
    let net = case.net.map_scalar(|v| v * lambda);
    // Probabilities and costs are not volumes.
    let nodes = net.nodes().to_vec();
    let mut edges = net.edges().to_vec();
    for (e, orig) in edges.iter_mut().zip(case.net.edges()) {
        e.failure_probability = orig.failure_probability;
        e.transfer_cost = orig.transfer_cost;
    }
    let net = Network::new(nodes, edges).unwrap();
    let state = case.nom.state().map_scalar(|v| v * lambda);
    let nom = check_nom(&net, state, 1e-9 * lambda).unwrap();
    Case { net, nom }
}

/// Maximum restorable volume by enumerating every source-side node set.
fn min_cut(net: &Network<f64>, src: &[f64], out: &[f64], cap: &[f64]) -> f64 {
    let n = net.node_count();
    (0u32..1 << n)
        .map(|set| {
            let inside = |j: usize| set >> j & 1 == 1;
            let nodes: f64 = (0..n)
                .map(|j| if inside(j) { out[j] } else { src[j] })
                .sum();
            let edges: f64 = net
                .edges()
                .iter()
                .filter(|e| inside(e.from.0) && !inside(e.to.0))
                .map(|e| cap[e.id.0])
                .sum();
            nodes + edges
        })
        .fold(f64::INFINITY, f64::min)
}


macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

/// Balance, bounds, monotonicity and outage bounds along the mode chain.
pub fn check_chain_invariants(cases: u64) -> Result<(), String> {
    let eps = 1e-6;
    for seed in 0..cases {
        let Case { net, nom } = random_case(seed, 10, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let scenario = random_scenario(&net, &mut rng);
        let c = chain(&net, &nom, &scenario);
        let nom = nom.state();
        for s in [&c.dom, &c.rrom, &c.raom] {
            let v = validate_state(&net, s, &c.overrides, eps);
            ensure!(v.is_empty(), "seed {seed} {}: {v:?}", s.mode);
        }
        ensure!(all_le(&c.dom.inlet, &nom.inlet, 1e-9), "seed {seed}: DOM inlet above NOM");
        ensure!(all_le(&c.dom.consumption, &nom.consumption, 1e-9), "seed {seed}: DOM consumption above NOM");
        ensure!(all_le(&c.dom.flow, &nom.flow, 1e-9), "seed {seed}: DOM flow above NOM");
        for (lo, hi) in [(&c.dom, &c.rrom), (&c.rrom, &c.raom)] {
            let grows = all_le(&lo.inlet, &hi.inlet, 1e-9)
                && all_le(&lo.reservoir_inlet, &hi.reservoir_inlet, 1e-9)
                && all_le(&lo.consumption, &hi.consumption, 1e-9)
                && all_le(&lo.flow, &hi.flow, 1e-9);
            ensure!(grows, "seed {seed}: {} reduces a component of {}", hi.mode, lo.mode);
        }
        ensure!(
            all_le(&c.raom.consumption, &nom.consumption, 1e-9),
            "seed {seed}: restoration exceeds outage"
        );
        let totals = [
            nom.total_consumption(),
            c.raom.total_consumption(),
            c.rrom.total_consumption(),
            c.dom.total_consumption(),
        ];
        ensure!(totals.windows(2).all(|w| w[0] >= w[1] - 1e-9), "seed {seed}: totals {totals:?}");
    }
    Ok(())
}

/// Stage two keeps stage one's total, stage three keeps stage two's vector
/// and does not add flow, and unreachable nodes get nothing.
pub fn check_lexicographic_stages(cases: u64) -> Result<(), String> {
    for seed in 0..cases {
        let Case { net, nom } = random_case(seed + 10_000, 10, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = compute_dom(&net, &nom, &random_scenario(&net, &mut rng)).map_err(|e| e.to_string())?;
        let p = build_restoration_problem(
            &net,
            &d.state,
            nom.state(),
            SourceKind::SpareInlets,
            None,
            &d.overrides,
        )
        .map_err(|e| e.to_string())?;
        let s = solve_restoration(&net, &p, RestorationOptions::default()).map_err(|e| e.to_string())?;
        let total: f64 = s.restored_consumption.iter().sum();
        let tol = 1e-9 * net.volume_scale();
        ensure!((total - s.stage1_total).abs() <= tol, "seed {seed}: {total} vs {}", s.stage1_total);
        ensure!(s.restored_consumption == s.stage2_vector, "seed {seed}: stage three moved consumption");
        let flow: f64 = s.incremental_flow.iter().sum();
        ensure!(flow <= s.stage2_flow_total + tol, "seed {seed}: stage three added flow");
        for j in net.node_ids() {
            if !p.reachable_set.contains(&j) {
                ensure!(s.restored_consumption[j.0] == 0.0, "seed {seed}: unreachable node restored");
            }
        }
    }
    Ok(())
}

/// Every volume of the chain scales with the network.
pub fn check_scaling(cases: u64) -> Result<(), String> {
    for seed in 0..cases {
        let case = random_case(seed + 20_000, 10, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = [0.001, 0.37, 3.0, 1234.5][rng.gen_range(0..4)];
        let scenario = random_scenario(&case.net, &mut rng);
        let big = scaled(&case, lambda);
        let a = chain(&case.net, &case.nom, &scenario);
        let b = chain(&big.net, &big.nom, &scenario);
        let tol = 1e-9 * lambda * case.net.volume_scale();
        for (x, y) in [(&a.dom, &b.dom), (&a.rrom, &b.rrom), (&a.raom, &b.raom)] {
            for (u, v) in [
                (&x.inlet, &y.inlet),
                (&x.reservoir_inlet, &y.reservoir_inlet),
                (&x.consumption, &y.consumption),
                (&x.flow, &y.flow),
            ] {
                for (p, q) in u.iter().zip(v) {
                    ensure!((p * lambda - q).abs() <= tol, "seed {seed} λ {lambda}: {p} vs {q}");
                }
            }
        }
    }
    Ok(())
}

/// Stage-one optimum against the minimum cut, for both source kinds.
pub fn check_stage_one_min_cut(cases: u64) -> Result<(), String> {
    for seed in 0..cases {
        let Case { net, nom } = random_case(seed + 30_000, 8, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = compute_dom(&net, &nom, &random_scenario(&net, &mut rng)).map_err(|e| e.to_string())?;
        for kind in [SourceKind::SpareInlets, SourceKind::Reservoirs] {
            let p = build_restoration_problem(&net, &d.state, nom.state(), kind, None, &d.overrides)
                .map_err(|e| e.to_string())?;
            let s = solve_restoration(&net, &p, RestorationOptions::default()).map_err(|e| e.to_string())?;
            let cut = min_cut(&net, &p.source_bounds, &p.outage_bounds, &p.edge_bounds);
            ensure!((s.stage1_total - cut).abs() <= 1e-6, "seed {seed}: {} vs {cut}", s.stage1_total);
        }
    }
    Ok(())
}

/// Acyclic support, preserved balances, no growth, idempotence.
pub fn check_cycle_stripping(cases: u64) -> Result<(), String> {
    for seed in 0..cases {
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 40_000);
        let n = rng.gen_range(2..=8);
        let mut arcs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && rng.gen_bool(0.35) {
                    arcs.push((NodeId(a), NodeId(b)));
                }
            }
        }
        // At least one cycle.
        let k = rng.gen_range(2..=n);
        for i in 0..k {
            let pair = (NodeId(i), NodeId((i + 1) % k));
            if !arcs.contains(&pair) {
                arcs.push(pair);
            }
        }
        let flow: Vec<f64> = arcs
            .iter()
            .map(|_| if rng.gen_bool(0.85) { rng.gen_range(0.0..50.0) } else { 0.0 })
            .collect();
        let eps = 1e-12;
        let stripped = strip_flow_cycles(n, &arcs, &flow, eps).map_err(|e| e.to_string())?;
        let support: Vec<_> = arcs
            .iter()
            .zip(&stripped)
            .filter(|(_, f)| **f > eps)
            .map(|(a, _)| *a)
            .collect();
        ensure!(
            matches!(topological_order_of(n, &support), TopoOrder::Order(_)),
            "seed {seed}: support still cyclic"
        );
        ensure!(
            stripped.iter().zip(&flow).all(|(s, f)| *s <= *f && *s >= 0.0),
            "seed {seed}: flow increased or went negative"
        );
        let balance = |fl: &[f64]| {
            let mut b = vec![0.0; n];
            for (&(u, v), &f) in arcs.iter().zip(fl) {
                b[u.0] -= f;
                b[v.0] += f;
            }
            b
        };
        for (x, y) in balance(&flow).iter().zip(balance(&stripped)) {
            ensure!((x - y).abs() <= 1e-9, "seed {seed}: balance moved by {}", x - y);
        }
        let again = strip_flow_cycles(n, &arcs, &stripped, eps).map_err(|e| e.to_string())?;
        ensure!(again == stripped, "seed {seed}: not idempotent");
    }
    Ok(())
}

/// Repeated and differently parallel sweeps agree exactly.
pub fn check_sweep_determinism(cases: u64) -> Result<(), String> {
    for seed in 0..cases {
        let Case { net, nom } = random_case(seed + 50_000, 10, 20);
        let one = SweepOptions { jobs: 1, joint: true, ..Default::default() };
        let many = SweepOptions { jobs: 8, ..one.clone() };
        let run = |o: &SweepOptions| scenario_sweep(&net, &nom, None, o).map_err(|e| e.to_string());
        let a = run(&one)?;
        ensure!(a == run(&one)?, "seed {seed}: repeated sweep differs");
        ensure!(a == run(&many)?, "seed {seed}: parallel sweep differs");
    }
    Ok(())
}

#[derive(Clone, Debug)]
struct Instance {
    n: usize,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    cost: Vec<f64>,
}

fn small_int(rng: &mut ChaCha8Rng) -> f64 {
    f64::from(rng.gen_range(-4i32..=4))
}

/// Box-bounded instance with up to five variables and two equalities,
/// feasible by construction.
fn instance(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(2usize..=5);
    let m = rng.gen_range(0usize..=2);
    let a: Vec<Vec<f64>> = (0..m).map(|_| (0..n).map(|_| small_int(rng)).collect()).collect();
    let boxes: Vec<(i32, i32, f64)> = (0..n)
        .map(|_| (rng.gen_range(0..=3), rng.gen_range(1..=4), rng.gen_range(0.0..1.0)))
        .collect();
    let cost = (0..n).map(|_| small_int(rng)).collect();
    let lower: Vec<f64> = boxes.iter().map(|&(l, _, _)| f64::from(l)).collect();
    let upper: Vec<f64> = boxes.iter().map(|&(l, w, _)| f64::from(l + w)).collect();
    // Right-hand side from an interior point keeps the problem feasible.
    let x0: Vec<f64> = boxes
        .iter()
        .map(|&(l, w, t)| f64::from(l) + t * f64::from(w))
        .collect();
    let b = a
        .iter()
        .map(|row| row.iter().zip(&x0).map(|(c, x)| c * x).sum())
        .collect();
    Instance { n, a, b, lower, upper, cost }
}

fn build_lp(inst: &Instance) -> LinearProgram<f64> {
    let mut lp = LinearProgram::new(Sense::Minimize);
    for j in 0..inst.n {
        lp.add_var(inst.cost[j], Bounds::new(inst.lower[j], inst.upper[j]));
    }
    for (row, &rhs) in inst.a.iter().zip(&inst.b) {
        lp.add_equality(row.iter().copied().enumerate().collect(), rhs);
    }
    lp
}

fn feasible(inst: &Instance, x: &[f64], tol: f64) -> bool {
    let boxed = x
        .iter()
        .enumerate()
        .all(|(j, &v)| v >= inst.lower[j] - tol && v <= inst.upper[j] + tol);
    let rows = inst.a.iter().zip(&inst.b).all(|(row, &rhs)| {
        (row.iter().zip(x).map(|(c, v)| c * v).sum::<f64>() - rhs).abs() <= tol
    });
    boxed && rows
}

/// Each variable is at its lower bound, its upper bound, or free; the free
/// variables solve the remaining equalities (least squares) and the
/// candidate is kept when feasible.
/// Full-pivot LU when nonsingular, minimum-norm least squares otherwise.
fn solve_dense(m: DMatrix<f64>, r: &DVector<f64>) -> Option<DVector<f64>> {
    if let Some(x) = m.is_square().then(|| m.clone().full_piv_lu().solve(r)).flatten() {
        return Some(x);
    }
    m.svd(true, true).solve(r, 1e-12).ok()
}

fn enumerate_faces(inst: &Instance, mut visit: impl FnMut(&[usize], Vec<f64>)) {
    let n = inst.n;
    let m = inst.a.len();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut state = vec![0usize; n];
        let mut c = code;
        for s in state.iter_mut() {
            *s = c % 3;
            c /= 3;
        }
        let free: Vec<usize> = (0..n).filter(|&j| state[j] == 2).collect();
        let mut x: Vec<f64> = (0..n)
            .map(|j| match state[j] {
                0 => inst.lower[j],
                1 => inst.upper[j],
                _ => 0.0,
            })
            .collect();
        visit(&free, {
            if !free.is_empty() && m > 0 {
                let af = DMatrix::from_fn(m, free.len(), |i, k| inst.a[i][free[k]]);
                let r = DVector::from_fn(m, |i, _| {
                    inst.b[i]
                        - (0..n)
                            .filter(|j| state[*j] != 2)
                            .map(|j| inst.a[i][j] * x[j])
                            .sum::<f64>()
                });
                if let Some(sol) = solve_dense(af, &r) {
                    for (k, &j) in free.iter().enumerate() {
                        x[j] = sol[k];
                    }
                }
            }
            x
        });
    }
}

fn lp_oracle(inst: &Instance) -> Option<f64> {
    let mut best: Option<f64> = None;
    enumerate_faces(inst, |free, x| {
        if free.len() <= inst.a.len() && feasible(inst, &x, 1e-9) {
            let v: f64 = inst.cost.iter().zip(&x).map(|(c, v)| c * v).sum();
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    });
    best
}

fn build_qp(inst: &Instance, forms: &[Vec<f64>]) -> QuadraticProgram<f64> {
    let mut qp = QuadraticProgram::over_feasible_set_of(&build_lp(inst));
    qp.linear = inst.cost.clone();
    for f in forms {
        qp.squares.push(SquaredForm {
            weight: 1.0,
            coeffs: f.iter().copied().enumerate().collect(),
        });
    }
    for j in 0..inst.n {
        qp.squares.push(SquaredForm {
            weight: 0.5,
            coeffs: vec![(j, 1.0)],
        });
    }
    qp
}

/// Minimum over every face of the stationary point of the objective
/// restricted to that face.
fn qp_oracle(inst: &Instance, qp: &QuadraticProgram<f64>) -> f64 {
    let n = inst.n;
    let m = inst.a.len();
    let mut h = DMatrix::<f64>::zeros(n, n);
    for sq in &qp.squares {
        for &(i, ci) in &sq.coeffs {
            for &(j, cj) in &sq.coeffs {
                h[(i, j)] += 2.0 * sq.weight * ci * cj;
            }
        }
    }
    let mut best = f64::INFINITY;
    enumerate_faces(inst, |free, mut x| {
        let k = free.len();
        if k > 0 {
            let mut kkt = DMatrix::<f64>::zeros(k + m, k + m);
            let mut rhs = DVector::<f64>::zeros(k + m);
            for (p, &i) in free.iter().enumerate() {
                for (q, &j) in free.iter().enumerate() {
                    kkt[(p, q)] = h[(i, j)];
                }
                let fixed_grad: f64 = (0..n)
                    .filter(|j| !free.contains(j))
                    .map(|j| h[(i, j)] * x[j])
                    .sum();
                rhs[p] = -(inst.cost[i] + fixed_grad);
                for r in 0..m {
                    kkt[(p, k + r)] = inst.a[r][i];
                    kkt[(k + r, p)] = inst.a[r][i];
                }
            }
            for r in 0..m {
                rhs[k + r] = inst.b[r]
                    - (0..n)
                        .filter(|j| !free.contains(j))
                        .map(|j| inst.a[r][j] * x[j])
                        .sum::<f64>();
            }
            let Some(sol) = solve_dense(kkt, &rhs) else {
                return;
            };
            for (p, &j) in free.iter().enumerate() {
                x[j] = sol[p];
            }
        }
        if feasible(inst, &x, 1e-9) {
            best = best.min(qp.objective_value(&x));
        }
    });
    best
}


fn agrees(got: f64, expected: f64) -> bool {
    (got - expected).abs() <= 1e-6 * (1.0 + expected.abs())
}

/// LP optimum against enumeration of basic solutions.
pub fn check_lp_brute_force(cases: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(60_000);
    for case in 0..cases {
        let inst = instance(&mut rng);
        let expected = lp_oracle(&inst).ok_or_else(|| format!("case {case}: oracle found no vertex"))?;
        match solve_lp(&build_lp(&inst), 1e-9).map_err(|e| e.to_string())? {
            LpOutcome::Optimal(sol) => {
                ensure!(feasible(&inst, &sol.x, 1e-7), "case {case}: infeasible {:?}", sol.x);
                ensure!(agrees(sol.objective, expected), "case {case}: {} vs {expected}", sol.objective);
            }
            other => return Err(format!("case {case}: {other:?}")),
        }
    }
    Ok(())
}

/// Convex QP optimum against stationary points of every face.
pub fn check_qp_brute_force(cases: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(70_000);
    for case in 0..cases {
        let inst = instance(&mut rng);
        let forms: Vec<Vec<f64>> = (0..rng.gen_range(0..3))
            .map(|_| (0..inst.n).map(|_| small_int(&mut rng)).collect())
            .collect();
        let qp = build_qp(&inst, &forms);
        let expected = qp_oracle(&inst, &qp);
        match solve_qp(&qp, 1e-9).map_err(|e| e.to_string())? {
            QpOutcome::Optimal(sol) => {
                ensure!(feasible(&inst, &sol.x, 1e-7), "case {case}: infeasible {:?}", sol.x);
                ensure!(agrees(sol.objective, expected), "case {case}: {} vs {expected}", sol.objective);
            }
            other => return Err(format!("case {case}: {other:?}")),
        }
    }
    Ok(())
}
