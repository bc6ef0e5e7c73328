//! Report documents and their table, JSON and CSV renderings.

use serde::Serialize;

use gasnet::dom::Scenario;
use gasnet::model::{Network, NodeId, OperationState};
use gasnet::significance::{ReservoirSignificance, ScenarioOutcome, SignificanceReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Serialize)]
pub struct FailedEdge {
    pub edge: usize,
    pub from: String,
    pub to: String,
    pub residual_fraction: f64,
}

fn failed_edges(net: &Network<f64>, scenario: &Scenario<f64>) -> Vec<FailedEdge> {
    scenario
        .failed_edges
        .iter()
        .map(|&(e, fraction)| {
            let p = &net.edges()[e.0];
            FailedEdge {
                edge: e.0 + 1,
                from: net.nodes()[p.from.0].name.clone(),
                to: net.nodes()[p.to.0].name.clone(),
                residual_fraction: fraction,
            }
        })
        .collect()
}

#[derive(Serialize)]
pub struct NodeChange {
    pub node: String,
    pub nominal_consumption: f64,
    pub before: f64,
    pub after: f64,
    pub change: f64,
    pub outage: f64,
    pub supply_change: f64,
}

#[derive(Serialize)]
pub struct EdgeChange {
    pub edge: usize,
    pub from: String,
    pub to: String,
    pub capacity: f64,
    pub before: f64,
    pub after: f64,
    pub change: f64,
}

/// Before/after comparison of two states, used by `dom` and `restore`.
#[derive(Serialize)]
pub struct TransitionReport {
    pub network: String,
    pub scenario: String,
    pub failed_edges: Vec<FailedEdge>,
    pub from_mode: String,
    pub to_mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub active_reservoirs: Option<Vec<String>>,
    pub nodes: Vec<NodeChange>,
    pub edges: Vec<EdgeChange>,
    pub total_consumption_before: f64,
    pub total_consumption_after: f64,
    pub total_outage_after: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compensation_ratio: Option<Option<f64>>,
}

pub struct Transition<'a> {
    pub name: &'a str,
    pub net: &'a Network<f64>,
    pub scenario: &'a Scenario<f64>,
    pub nom: &'a OperationState<f64>,
    pub before: &'a OperationState<f64>,
    pub after: &'a OperationState<f64>,
    pub overrides: &'a gasnet::CapacityOverrides<f64>,
}

pub fn transition(t: Transition<'_>) -> TransitionReport {
    let net = t.net;
    let nodes = net
        .nodes()
        .iter()
        .map(|p| {
            let j = p.id.0;
            let supply_change = (t.after.inlet[j] + t.after.reservoir_inlet[j])
                - (t.before.inlet[j] + t.before.reservoir_inlet[j]);
            NodeChange {
                node: p.name.clone(),
                nominal_consumption: t.nom.consumption[j],
                before: t.before.consumption[j],
                after: t.after.consumption[j],
                change: t.after.consumption[j] - t.before.consumption[j],
                outage: (t.nom.consumption[j] - t.after.consumption[j]).max(0.0),
                supply_change,
            }
        })
        .collect();
    let edges = net
        .edges()
        .iter()
        .map(|p| EdgeChange {
            edge: p.id.0 + 1,
            from: net.nodes()[p.from.0].name.clone(),
            to: net.nodes()[p.to.0].name.clone(),
            capacity: net.effective_capacity(p.id, t.overrides),
            before: t.before.flow[p.id.0],
            after: t.after.flow[p.id.0],
            change: t.after.flow[p.id.0] - t.before.flow[p.id.0],
        })
        .collect();
    TransitionReport {
        network: t.name.to_string(),
        scenario: t.scenario.label.clone(),
        failed_edges: failed_edges(net, t.scenario),
        from_mode: t.before.mode.to_string(),
        to_mode: t.after.mode.to_string(),
        active_reservoirs: None,
        nodes,
        edges,
        total_consumption_before: t.before.total_consumption(),
        total_consumption_after: t.after.total_consumption(),
        total_outage_after: (t.nom.total_consumption() - t.after.total_consumption()).max(0.0),
        compensation_ratio: None,
    }
}

#[derive(Serialize)]
pub struct Compensation {
    pub reservoir: String,
    pub compensated: f64,
    pub ratio: Option<f64>,
}

#[derive(Serialize)]
pub struct ScenarioRow {
    pub edges: Vec<usize>,
    pub scenario: String,
    pub nominal_consumption: Option<f64>,
    pub dom_consumption: Option<f64>,
    pub rrom_consumption: Option<f64>,
    pub outage_after_rrom: Option<f64>,
    pub reservoirs: Vec<Compensation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub joint: Option<Compensation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct SummaryRow {
    pub reservoir: String,
    pub mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weighted_mean: Option<Option<f64>>,
    pub included: usize,
    pub excluded: usize,
    pub failed: usize,
}

#[derive(Serialize)]
pub struct SignificanceDoc {
    pub network: String,
    pub zero_outage: String,
    pub scenario_count: usize,
    pub scenarios: Vec<ScenarioRow>,
    pub summary: Vec<SummaryRow>,
}

const JOINT: &str = "all (joint)";

pub fn significance_doc(
    name: &str,
    net: &Network<f64>,
    nom: &OperationState<f64>,
    outcomes: &[ScenarioOutcome<f64>],
    report: &SignificanceReport<f64>,
    zero_outage: &str,
    weighted: bool,
) -> SignificanceDoc {
    let node_name = |j: NodeId| net.nodes()[j.0].name.clone();
    let scenarios = outcomes
        .iter()
        .map(|o| {
            let edges = o.scenario.edges().map(|e| e.0 + 1).collect();
            match &o.result {
                Ok(r) => ScenarioRow {
                    edges,
                    scenario: o.scenario.label.clone(),
                    nominal_consumption: Some(nom.total_consumption()),
                    dom_consumption: Some(r.dom.total_consumption()),
                    rrom_consumption: Some(r.rrom.total_consumption()),
                    outage_after_rrom: Some(r.outage_after_rrom),
                    reservoirs: r
                        .per_reservoir
                        .iter()
                        .map(|(id, a)| Compensation {
                            reservoir: node_name(*id),
                            compensated: a.compensated,
                            ratio: a.ratio,
                        })
                        .collect(),
                    joint: r.joint.as_ref().map(|a| Compensation {
                        reservoir: JOINT.to_string(),
                        compensated: a.compensated,
                        ratio: a.ratio,
                    }),
                    error: None,
                },
                Err(e) => ScenarioRow {
                    edges,
                    scenario: o.scenario.label.clone(),
                    nominal_consumption: None,
                    dom_consumption: None,
                    rrom_consumption: None,
                    outage_after_rrom: None,
                    reservoirs: Vec::new(),
                    joint: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let summary_row = |s: &ReservoirSignificance<f64>| SummaryRow {
        reservoir: s.reservoir.map_or_else(|| JOINT.to_string(), node_name),
        mean: s.mean,
        weighted_mean: weighted.then_some(s.weighted_mean),
        included: s.included,
        excluded: s.excluded,
        failed: s.failed,
    };
    SignificanceDoc {
        network: name.to_string(),
        zero_outage: zero_outage.to_string(),
        scenario_count: report.scenario_count,
        scenarios,
        summary: report
            .per_reservoir
            .iter()
            .chain(report.joint.as_ref())
            .map(summary_row)
            .collect(),
    }
}

fn vol(x: f64) -> String {
    let s = format!("{x:.4}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".to_string()
    } else {
        s
    }
}

fn ratio(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), vol)
}

/// Plain text table with right-aligned numeric columns.
struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, out: &mut String) {
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|c| {
                self.rows
                    .iter()
                    .map(|r| r[c].len())
                    .chain([self.headers[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String], out: &mut String| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (s, &w))| if c == 0 { format!("{s:<w$}") } else { format!("{s:>w$}") })
                .collect();
            out.push_str(parts.join("  ").trim_end());
            out.push('\n');
        };
        line(&self.headers, out);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(&rule, out);
        for r in &self.rows {
            line(r, out);
        }
    }
}

pub fn transition_table(r: &TransitionReport) -> String {
    let mut out = String::new();
    let failed: Vec<String> = r
        .failed_edges
        .iter()
        .map(|f| {
            if f.residual_fraction == 0.0 {
                format!("edge {} ({}->{})", f.edge, f.from, f.to)
            } else {
                format!(
                    "edge {} ({}->{}) at {} of capacity",
                    f.edge, f.from, f.to, f.residual_fraction
                )
            }
        })
        .collect();
    out.push_str(&format!("network {}: {} -> {} after failure of {}\n", r.network, r.from_mode, r.to_mode, failed.join(", ")));
    if let Some(active) = &r.active_reservoirs {
        out.push_str(&format!("active reservoirs: {}\n", active.join(", ")));
    }
    out.push('\n');
    let mut nodes = Table::new(&["node", "nominal", &r.from_mode, &r.to_mode, "change", "outage", "supply change"]);
    for n in &r.nodes {
        nodes.push(vec![
            n.node.clone(),
            vol(n.nominal_consumption),
            vol(n.before),
            vol(n.after),
            vol(n.change),
            vol(n.outage),
            vol(n.supply_change),
        ]);
    }
    nodes.render(&mut out);
    out.push('\n');
    let mut edges = Table::new(&["edge", "from", "to", "capacity", &r.from_mode, &r.to_mode, "change"]);
    for e in &r.edges {
        edges.push(vec![
            e.edge.to_string(),
            e.from.clone(),
            e.to.clone(),
            vol(e.capacity),
            vol(e.before),
            vol(e.after),
            vol(e.change),
        ]);
    }
    edges.render(&mut out);
    out.push('\n');
    out.push_str(&format!(
        "total consumption {} -> {}, remaining outage {}\n",
        vol(r.total_consumption_before),
        vol(r.total_consumption_after),
        vol(r.total_outage_after)
    ));
    if let Some(c) = r.compensation_ratio {
        out.push_str(&format!("compensation ratio {}\n", ratio(c)));
    }
    out
}

pub fn significance_table(d: &SignificanceDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "network {}: {} scenarios, zero-outage scenarios {}\n\n",
        d.network,
        d.scenario_count,
        if d.zero_outage == "zero" { "count as ratio 0" } else { "excluded" }
    ));
    let names: Vec<String> = d
        .summary
        .iter()
        .map(|s| s.reservoir.clone())
        .collect();
    let mut headers = vec!["edge".to_string(), "scenario".to_string(), "outage".to_string()];
    for n in &names {
        headers.push(format!("{n} restored"));
        headers.push(format!("{n} ratio"));
    }
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    let mut t = Table::new(&header_refs);
    for s in &d.scenarios {
        let edges: Vec<String> = s.edges.iter().map(|e| e.to_string()).collect();
        let mut row = vec![edges.join("+"), s.scenario.clone()];
        match &s.error {
            Some(e) => {
                row.push(format!("failed: {e}"));
                row.resize(headers.len(), String::new());
            }
            None => {
                row.push(vol(s.outage_after_rrom.unwrap_or(0.0)));
                for c in s.reservoirs.iter().chain(s.joint.as_ref()) {
                    row.push(vol(c.compensated));
                    row.push(ratio(c.ratio));
                }
            }
        }
        t.push(row);
    }
    t.render(&mut out);
    out.push('\n');
    let weighted = d.summary.iter().any(|s| s.weighted_mean.is_some());
    let mut headers = vec!["reservoir", "significance"];
    if weighted {
        headers.push("weighted");
    }
    headers.extend(["included", "excluded", "failed"]);
    let mut t = Table::new(&headers);
    for s in &d.summary {
        let mut row = vec![s.reservoir.clone(), ratio(s.mean)];
        if weighted {
            row.push(ratio(s.weighted_mean.flatten()));
        }
        row.extend([s.included.to_string(), s.excluded.to_string(), s.failed.to_string()]);
        t.push(row);
    }
    t.render(&mut out);
    out
}

pub fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report documents serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct TransitionCsvRow<'a> {
    kind: &'a str,
    id: String,
    from: &'a str,
    to: &'a str,
    nominal: Option<f64>,
    capacity: Option<f64>,
    before: f64,
    after: f64,
    change: f64,
    outage: Option<f64>,
    supply_change: Option<f64>,
}

fn csv_string<R: Serialize>(rows: impl IntoIterator<Item = R>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}

pub fn transition_csv(r: &TransitionReport) -> String {
    let nodes = r.nodes.iter().map(|n| TransitionCsvRow {
        kind: "node",
        id: n.node.clone(),
        from: "",
        to: "",
        nominal: Some(n.nominal_consumption),
        capacity: None,
        before: n.before,
        after: n.after,
        change: n.change,
        outage: Some(n.outage),
        supply_change: Some(n.supply_change),
    });
    let edges = r.edges.iter().map(|e| TransitionCsvRow {
        kind: "edge",
        id: e.edge.to_string(),
        from: &e.from,
        to: &e.to,
        nominal: None,
        capacity: Some(e.capacity),
        before: e.before,
        after: e.after,
        change: e.change,
        outage: None,
        supply_change: None,
    });
    csv_string(nodes.chain(edges))
}

#[derive(Serialize)]
struct SignificanceCsvRow<'a> {
    record: &'a str,
    edges: String,
    scenario: &'a str,
    reservoir: &'a str,
    outage_after_rrom: Option<f64>,
    compensated: Option<f64>,
    ratio: Option<f64>,
    included: Option<usize>,
    excluded: Option<usize>,
    error: Option<&'a str>,
}

pub fn significance_csv(d: &SignificanceDoc) -> String {
    let mut rows = Vec::new();
    for s in &d.scenarios {
        let edges: Vec<String> = s.edges.iter().map(|e| e.to_string()).collect();
        let edges = edges.join("+");
        if let Some(e) = &s.error {
            rows.push(SignificanceCsvRow {
                record: "scenario",
                edges,
                scenario: &s.scenario,
                reservoir: "",
                outage_after_rrom: None,
                compensated: None,
                ratio: None,
                included: None,
                excluded: None,
                error: Some(e),
            });
            continue;
        }
        for c in s.reservoirs.iter().chain(s.joint.as_ref()) {
            rows.push(SignificanceCsvRow {
                record: "scenario",
                edges: edges.clone(),
                scenario: &s.scenario,
                reservoir: &c.reservoir,
                outage_after_rrom: s.outage_after_rrom,
                compensated: Some(c.compensated),
                ratio: c.ratio,
                included: None,
                excluded: None,
                error: None,
            });
        }
    }
    for s in &d.summary {
        let mut push = |record, value| {
            rows.push(SignificanceCsvRow {
                record,
                edges: String::new(),
                scenario: "",
                reservoir: &s.reservoir,
                outage_after_rrom: None,
                compensated: None,
                ratio: value,
                included: Some(s.included),
                excluded: Some(s.excluded),
                error: None,
            })
        };
        push("mean", s.mean);
        if let Some(w) = s.weighted_mean {
            push("weighted_mean", w);
        }
    }
    csv_string(rows)
}
