//! Reservoir significance over a set of failure scenarios.
//!
//! For each scenario the chain DOM, RROM, RAOM is computed, once per
//! reservoir with only that reservoir active, and optionally once with all
//! reservoirs together. A reservoir's compensation ratio is the share of
//! the outage left after re-routing that its withdrawal restores; its
//! significance is the mean ratio over the scenarios where an outage is
//! left at all.

use rayon::prelude::*;

use crate::dom::{balance_threshold, compute_dom, Scenario};
use crate::error::{Error, Result};
use crate::model::{Network, NodeId, OperationState};
use crate::preprocess::Nom;
use crate::restoration::{compute_raom, compute_rrom, RestorationOptions};
use crate::scalar::Scalar;

/// Share of the post-re-routing outage restored by reservoir withdrawal.
/// `None` when no outage is left (denominator at most `eps`).
pub fn compensation_ratio<T: Scalar>(
    nom: &OperationState<T>,
    rrom: &OperationState<T>,
    raom: &OperationState<T>,
    eps: T,
) -> Option<T> {
    let outage = nom.total_consumption() - rrom.total_consumption();
    if outage <= eps {
        return None;
    }
    let restored = raom.total_consumption() - rrom.total_consumption();
    Some((restored / outage).clamp_to(T::zero(), T::one()))
}

/// Outcome of activating one set of reservoirs in one scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Activation<T> {
    pub raom: OperationState<T>,
    pub compensated: T,
    pub ratio: Option<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioResult<T> {
    pub dom: OperationState<T>,
    pub rrom: OperationState<T>,
    pub outage_after_rrom: T,
    /// One entry per reservoir, each active on its own, ascending node id.
    pub per_reservoir: Vec<(NodeId, Activation<T>)>,
    /// All reservoirs active together, when requested.
    pub joint: Option<Activation<T>>,
}

impl<T> ScenarioResult<T> {
    pub fn activation(&self, reservoir: NodeId) -> Option<&Activation<T>> {
        self.per_reservoir
            .iter()
            .find(|(r, _)| *r == reservoir)
            .map(|(_, a)| a)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioOutcome<T> {
    pub scenario: Scenario<T>,
    pub result: Result<ScenarioResult<T>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    pub restoration: RestorationOptions,
    /// Also evaluate all reservoirs active at once.
    pub joint: bool,
    /// Worker threads; zero picks the machine default. Results do not
    /// depend on it.
    pub jobs: usize,
}

fn activate<T: Scalar>(
    network: &Network<T>,
    nom: &Nom<T>,
    rrom: &OperationState<T>,
    overrides: &crate::model::CapacityOverrides<T>,
    filter: Option<&[NodeId]>,
    options: RestorationOptions,
    eps: T,
) -> Result<Activation<T>> {
    let raom = compute_raom(network, nom, rrom, overrides, filter, options)?;
    let compensated = (raom.total_consumption() - rrom.total_consumption()).max_of(T::zero());
    let ratio = compensation_ratio(nom.state(), rrom, &raom, eps);
    Ok(Activation {
        raom,
        compensated,
        ratio,
    })
}

/// Runs the full chain for one scenario.
pub fn evaluate_scenario<T: Scalar>(
    network: &Network<T>,
    nom: &Nom<T>,
    scenario: &Scenario<T>,
    options: &SweepOptions,
) -> Result<ScenarioResult<T>> {
    let eps = balance_threshold(network);
    let disrupted = compute_dom(network, nom, scenario)?;
    let rrom = compute_rrom(network, nom, &disrupted, options.restoration)?;
    let outage_after_rrom =
        (nom.state().total_consumption() - rrom.total_consumption()).max_of(T::zero());
    let per_reservoir = network
        .reservoir_nodes()
        .into_iter()
        .map(|r| {
            let act = activate(
                network,
                nom,
                &rrom,
                &disrupted.overrides,
                Some(&[r]),
                options.restoration,
                eps,
            )?;
            Ok((r, act))
        })
        .collect::<Result<Vec<_>>>()?;
    let joint = if options.joint {
        Some(activate(
            network,
            nom,
            &rrom,
            &disrupted.overrides,
            None,
            options.restoration,
            eps,
        )?)
    } else {
        None
    };
    Ok(ScenarioResult {
        dom: disrupted.state,
        rrom,
        outage_after_rrom,
        per_reservoir,
        joint,
    })
}

/// Evaluates every scenario (the N-1 set when `scenarios` is `None`).
/// Results keep the scenario order; a failing scenario is reported in its
/// slot without stopping the others.
pub fn scenario_sweep<T: Scalar>(
    network: &Network<T>,
    nom: &Nom<T>,
    scenarios: Option<Vec<Scenario<T>>>,
    options: &SweepOptions,
) -> Result<Vec<ScenarioOutcome<T>>> {
    let scenarios = scenarios.unwrap_or_else(|| Scenario::n_minus_one(network));
    let run = |scenario: Scenario<T>| {
        let result = evaluate_scenario(network, nom, &scenario, options);
        ScenarioOutcome { scenario, result }
    };
    if options.jobs == 1 {
        return Ok(scenarios.into_iter().map(run).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| scenarios.into_par_iter().map(run).collect()))
}

/// How scenarios without any outage after re-routing enter the average.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ZeroOutagePolicy {
    /// Leave them out and count them as excluded.
    #[default]
    Exclude,
    /// Count them with ratio zero.
    Zero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReservoirSignificance<T> {
    /// `None` for the joint activation of all reservoirs.
    pub reservoir: Option<NodeId>,
    /// Mean ratio; `None` when no scenario was included.
    pub mean: Option<T>,
    /// Mean weighted by scenario failure probability; `None` when no
    /// scenario was included or some included scenario has no probability.
    pub weighted_mean: Option<T>,
    pub included: usize,
    /// Scenarios left out, including failed ones.
    pub excluded: usize,
    /// Scenarios whose computation failed.
    pub failed: usize,
}

impl<T> ReservoirSignificance<T> {
    pub fn computable(&self) -> bool {
        self.mean.is_some()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignificanceReport<T> {
    pub per_reservoir: Vec<ReservoirSignificance<T>>,
    pub joint: Option<ReservoirSignificance<T>>,
    pub scenario_count: usize,
}

/// Probability of a scenario: product over its failed edges. `None` if
/// any edge has no probability.
pub fn scenario_weight<T: Scalar>(network: &Network<T>, scenario: &Scenario<T>) -> Option<T> {
    scenario.edges().try_fold(T::one(), |acc, e| {
        network
            .edges()
            .get(e.0)
            .and_then(|p| p.failure_probability)
            .map(|p| acc * p)
    })
}

fn aggregate<T: Scalar>(
    network: &Network<T>,
    outcomes: &[ScenarioOutcome<T>],
    reservoir: Option<NodeId>,
    policy: ZeroOutagePolicy,
) -> ReservoirSignificance<T> {
    let mut sum = T::zero();
    let mut weighted_sum = T::zero();
    let mut weight_total = T::zero();
    let mut weights_known = true;
    let mut included = 0usize;
    let mut excluded = 0usize;
    let mut failed = 0usize;
    for outcome in outcomes {
        let activation = match &outcome.result {
            Ok(r) => match reservoir {
                Some(id) => r.activation(id),
                None => r.joint.as_ref(),
            },
            Err(_) => None,
        };
        let Some(activation) = activation else {
            failed += 1;
            excluded += 1;
            continue;
        };
        let ratio = match (activation.ratio, policy) {
            (Some(r), _) => r,
            (None, ZeroOutagePolicy::Zero) => T::zero(),
            (None, ZeroOutagePolicy::Exclude) => {
                excluded += 1;
                continue;
            }
        };
        included += 1;
        sum = sum + ratio;
        match scenario_weight(network, &outcome.scenario) {
            Some(w) => {
                weighted_sum = weighted_sum + w * ratio;
                weight_total = weight_total + w;
            }
            None => weights_known = false,
        }
    }
    let mean = (included > 0).then(|| sum / T::from_count(included));
    let weighted_mean = (included > 0 && weights_known && weight_total > T::zero())
        .then(|| (weighted_sum / weight_total).clamp_to(T::zero(), T::one()));
    ReservoirSignificance {
        reservoir,
        mean,
        weighted_mean,
        included,
        excluded,
        failed,
    }
}

/// Averages the per-scenario ratios of one sweep, per reservoir and for the
/// joint activation when it was evaluated.
pub fn significance_measure<T: Scalar>(
    network: &Network<T>,
    outcomes: &[ScenarioOutcome<T>],
    policy: ZeroOutagePolicy,
) -> SignificanceReport<T> {
    let per_reservoir = network
        .reservoir_nodes()
        .into_iter()
        .map(|r| aggregate(network, outcomes, Some(r), policy))
        .collect();
    let any_joint = outcomes
        .iter()
        .any(|o| matches!(&o.result, Ok(r) if r.joint.is_some()));
    let joint = any_joint.then(|| aggregate(network, outcomes, None, policy));
    SignificanceReport {
        per_reservoir,
        joint,
        scenario_count: outcomes.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::EdgeId;

    fn ab(net: &Network<f64>) -> Scenario<f64> {
        let a = net.node_by_name("A").unwrap();
        let b = net.node_by_name("B").unwrap();
        Scenario::edge_failure(net, net.edge_between(a, b).unwrap())
    }

    #[test]
    fn ratio_for_worked_examples() {
        let opts = SweepOptions::default();
        let (net, nom) = fixtures::original::<f64>();
        let r = evaluate_scenario(&net, &nom, &ab(&net), &opts).unwrap();
        let c = net.node_by_name("C").unwrap();
        let act = r.activation(c).unwrap();
        assert!((r.outage_after_rrom - 60.0).abs() < 1e-9);
        assert!((act.compensated - 20.0).abs() < 1e-9);
        assert!((act.ratio.unwrap() - 1.0 / 3.0).abs() < 1e-12);

        let (net, nom) = fixtures::extended::<f64>();
        let r = evaluate_scenario(&net, &nom, &ab(&net), &opts).unwrap();
        assert!((r.activation(c).unwrap().ratio.unwrap() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn zero_outage_ratio_is_undefined() {
        let (_net, nom) = fixtures::original::<f64>();
        assert_eq!(compensation_ratio(nom.state(), nom.state(), nom.state(), 1e-9), None);
    }

    #[test]
    fn single_scenario_measure() {
        let (net, nom) = fixtures::original::<f64>();
        let outcomes = scenario_sweep(&net, &nom, Some(vec![ab(&net)]), &SweepOptions::default()).unwrap();
        assert_eq!(outcomes.len(), 1);
        let report = significance_measure(&net, &outcomes, ZeroOutagePolicy::Exclude);
        let c = &report.per_reservoir[0];
        assert!((c.mean.unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!((c.included, c.excluded), (1, 0));
    }

    #[test]
    fn n_minus_one_sweep_counts() {
        let (net, nom) = fixtures::original::<f64>();
        let outcomes = scenario_sweep(&net, &nom, None, &SweepOptions::default()).unwrap();
        assert_eq!(outcomes.len(), 10);
        let exclude = significance_measure(&net, &outcomes, ZeroOutagePolicy::Exclude);
        let c = &exclude.per_reservoir[0];
        assert_eq!(c.included + c.excluded, 10);
        assert_eq!(c.failed, 0);
        let zero = significance_measure(&net, &outcomes, ZeroOutagePolicy::Zero);
        assert_eq!(zero.per_reservoir[0].included, 10);
        assert!(zero.per_reservoir[0].mean.unwrap() <= c.mean.unwrap());
    }

    #[test]
    fn empty_scenario_list() {
        let (net, nom) = fixtures::original::<f64>();
        let outcomes = scenario_sweep(&net, &nom, Some(vec![]), &SweepOptions::default()).unwrap();
        assert!(outcomes.is_empty());
        let report = significance_measure(&net, &outcomes, ZeroOutagePolicy::Exclude);
        assert!(!report.per_reservoir[0].computable());
    }

    #[test]
    fn failing_scenario_is_reported_in_place() {
        let (net, nom) = fixtures::original::<f64>();
        let bad = Scenario::partial_failure(&net, EdgeId(0), 2.0);
        let outcomes =
            scenario_sweep(&net, &nom, Some(vec![bad, ab(&net)]), &SweepOptions::default()).unwrap();
        assert!(outcomes[0].result.is_err());
        assert!(outcomes[1].result.is_ok());
        let report = significance_measure(&net, &outcomes, ZeroOutagePolicy::Exclude);
        assert_eq!(report.per_reservoir[0].failed, 1);
        assert_eq!(report.per_reservoir[0].included, 1);
    }

    #[test]
    fn joint_dominates_single_reservoir() {
        let (net, nom) = fixtures::original::<f64>();
        let opts = SweepOptions {
            joint: true,
            ..SweepOptions::default()
        };
        let outcomes = scenario_sweep(&net, &nom, None, &opts).unwrap();
        for o in &outcomes {
            let r = o.result.as_ref().unwrap();
            let joint = r.joint.as_ref().unwrap().compensated;
            for (_, a) in &r.per_reservoir {
                assert!(joint >= a.compensated - 1e-9);
            }
        }
        assert!(significance_measure(&net, &outcomes, ZeroOutagePolicy::Exclude)
            .joint
            .is_some());
    }

    #[test]
    fn weights_need_every_probability() {
        let (net, nom) = fixtures::original::<f64>();
        let outcomes = scenario_sweep(&net, &nom, None, &SweepOptions::default()).unwrap();
        let report = significance_measure(&net, &outcomes, ZeroOutagePolicy::Exclude);
        let has_all = net.edges().iter().all(|e| e.failure_probability.is_some());
        assert_eq!(report.per_reservoir[0].weighted_mean.is_some(), has_all);
    }
}
