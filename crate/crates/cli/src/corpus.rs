//! Manifest-driven batch runs over generated instances.

use std::fmt::Write;
use std::path::Path;

use quasimedian::cubulation::{cubulate_graph, DEFAULT_ORIENTATION_CAP};
use quasimedian::gates::is_gated_with;
use quasimedian::generators::{prism, random_quasi_median};
use quasimedian::{is_median, is_quasi_median, Distances, Graph, HyperplaneDecomposition, Status};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::commands::read_json;
use crate::{CliError, Output};

/// Failures listed per check; the counts cover all of them.
const LISTED_FAILURES: usize = 5;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    entries: Vec<Entry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    name: String,
    generator: Generator,
    checks: Vec<Check>,
}

fn default_max_prism() -> usize {
    3
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum Generator {
    Random {
        seed: u64,
        steps: usize,
        #[serde(default = "default_max_prism")]
        max_prism: usize,
    },
    RandomBatch {
        #[serde(default)]
        first_seed: u64,
        count: u64,
        steps: usize,
        #[serde(default = "default_max_prism")]
        max_prism: usize,
    },
    Prism(Vec<usize>),
    /// Every size vector in `[min, max]^factors`.
    PrismFamily {
        min: usize,
        max: usize,
        factors: usize,
    },
    Graph(Graph),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Check {
    QuasiMedian,
    Median,
    DistanceTheorem,
    HyperplaneCount,
    Gatedness,
    Carrier,
    Cubulation,
}

struct Instance {
    label: String,
    graph: Graph,
    /// Factor count, known for prisms only.
    factors: Option<usize>,
}

#[derive(Serialize)]
struct Failure {
    instance: String,
    detail: String,
}

#[derive(Serialize)]
struct CheckReport {
    check: Check,
    passed: usize,
    failed: usize,
    failures: Vec<Failure>,
}

#[derive(Serialize)]
struct EntryReport {
    name: String,
    instances: usize,
    checks: Vec<CheckReport>,
}

fn prism_instance(sizes: Vec<usize>) -> Result<Instance, String> {
    let graph = prism(&sizes).map_err(|e| e.to_string())?;
    Ok(Instance { label: format!("{sizes:?}"), factors: Some(sizes.len()), graph })
}

fn instances(g: &Generator) -> Result<Vec<Instance>, String> {
    let random = |seed: u64, steps, max_prism| {
        random_quasi_median(seed, steps, max_prism)
            .map(|graph| Instance { label: format!("seed {seed}"), graph, factors: None })
            .map_err(|e| e.to_string())
    };
    match g {
        Generator::Random { seed, steps, max_prism } => Ok(vec![random(*seed, *steps, *max_prism)?]),
        Generator::RandomBatch { first_seed, count, steps, max_prism } => {
            (*first_seed..first_seed + count).map(|s| random(s, *steps, *max_prism)).collect()
        }
        Generator::Prism(sizes) => Ok(vec![prism_instance(sizes.clone())?]),
        Generator::PrismFamily { min, max, factors } => {
            if min > max || *min < 1 || *factors < 1 {
                return Err(format!("empty prism family {min}..={max} ^ {factors}"));
            }
            let mut all = vec![Vec::new()];
            for _ in 0..*factors {
                all = all
                    .into_iter()
                    .flat_map(|s: Vec<usize>| {
                        (*min..=*max).map(move |k| {
                            let mut s = s.clone();
                            s.push(k);
                            s
                        })
                    })
                    .collect();
            }
            all.into_iter().map(prism_instance).collect()
        }
        Generator::Graph(graph) => Ok(vec![Instance { label: "graph".into(), graph: graph.clone(), factors: None }]),
    }
}

fn run_check(check: Check, inst: &Instance) -> Result<(), String> {
    let g = &inst.graph;
    let domain = |e: quasimedian::Error| e.to_string();
    match check {
        Check::QuasiMedian | Check::Median => {
            let v = if check == Check::Median { is_median(g) } else { is_quasi_median(g) };
            if v.status.is_positive() {
                Ok(())
            } else {
                Err(format!("{:?}", v.status))
            }
        }
        Check::DistanceTheorem => {
            if !g.is_connected() {
                return Err("graph is not connected".into());
            }
            let d = Distances::new(g);
            let h = HyperplaneDecomposition::new(g);
            for x in g.vertices() {
                for y in x + 1..g.vertex_count() {
                    let sep = h.separating_hyperplanes(x, y).map_err(domain)?.len();
                    if sep != d.raw(x, y) as usize {
                        return Err(format!("d({x}, {y}) = {} but {sep} hyperplanes separate", d.raw(x, y)));
                    }
                }
            }
            Ok(())
        }
        Check::HyperplaneCount => {
            let expected = inst.factors.expect("validated before running");
            let found = HyperplaneDecomposition::new(g).hyperplane_count();
            if found == expected {
                Ok(())
            } else {
                Err(format!("{found} hyperplanes, expected {expected}"))
            }
        }
        Check::Gatedness => {
            let d = Distances::new(g);
            let h = HyperplaneDecomposition::new(g);
            for j in 0..h.hyperplane_count() {
                let sets = h.sectors(j).map_err(domain)?.into_iter().map(|s| ("sector", s));
                let sets = sets.chain(h.fibers(j).map_err(domain)?.into_iter().map(|s| ("fiber", s)));
                let sets = sets.chain(std::iter::once(("carrier", h.carrier(j).map_err(domain)?)));
                for (kind, s) in sets {
                    if !is_gated_with(&d, &s).map_err(domain)? {
                        return Err(format!("{kind} {:?} of hyperplane {j} is not gated", s.as_slice()));
                    }
                }
            }
            Ok(())
        }
        Check::Carrier => {
            let h = HyperplaneDecomposition::new(g);
            for j in 0..h.hyperplane_count() {
                let r = h.verify_carrier_decomposition(j).map_err(domain)?;
                if !r.is_product {
                    return Err(format!("carrier of hyperplane {j}: {}", r.failure.unwrap_or_default()));
                }
            }
            Ok(())
        }
        Check::Cubulation => {
            let (_, c) = cubulate_graph(g, DEFAULT_ORIENTATION_CAP).map_err(domain)?;
            match is_median(&c.graph).status {
                Status::Median => Ok(()),
                s => Err(format!("cube complex is {s:?}")),
            }
        }
    }
}

fn table(reports: &[EntryReport], all_passed: bool) -> String {
    let name_w = reports.iter().map(|r| r.name.len()).max().unwrap_or(0).max(5);
    let mut out = String::new();
    let _ = writeln!(out, "{:<name_w$}  {:<16}  {:>6}  {:>6}  first failure", "entry", "check", "passed", "failed");
    for r in reports {
        for c in &r.checks {
            let check = serde_json::to_value(c.check).expect("check names serialize");
            let first = c.failures.first().map(|f| format!("{}: {}", f.instance, f.detail)).unwrap_or_default();
            let line = format!(
                "{:<name_w$}  {:<16}  {:>6}  {:>6}  {first}",
                r.name,
                check.as_str().unwrap_or_default(),
                c.passed,
                c.failed
            );
            let _ = writeln!(out, "{}", line.trim_end());
        }
    }
    let _ = writeln!(out, "overall: {}", if all_passed { "PASS" } else { "FAIL" });
    out
}

pub fn run(path: &Path, pretty: bool) -> Result<Output, CliError> {
    let manifest: Manifest = read_json(path)?;
    // Generate and validate everything before running any check.
    let mut prepared = Vec::new();
    for e in &manifest.entries {
        let insts = instances(&e.generator).map_err(|m| CliError::Malformed(format!("entry {:?}: {m}", e.name)))?;
        if e.checks.contains(&Check::HyperplaneCount) && insts.iter().any(|i| i.factors.is_none()) {
            return Err(CliError::Malformed(format!(
                "entry {:?}: hyperplane_count needs a prism or prism_family generator",
                e.name
            )));
        }
        prepared.push(insts);
    }
    let mut reports = Vec::new();
    for (e, insts) in manifest.entries.iter().zip(&prepared) {
        let mut checks = Vec::new();
        for &check in &e.checks {
            let mut report = CheckReport { check, passed: 0, failed: 0, failures: Vec::new() };
            for inst in insts {
                match run_check(check, inst) {
                    Ok(()) => report.passed += 1,
                    Err(detail) => {
                        report.failed += 1;
                        if report.failures.len() < LISTED_FAILURES {
                            report.failures.push(Failure { instance: inst.label.clone(), detail });
                        }
                    }
                }
            }
            log::info!("{} / {:?}: {} passed, {} failed", e.name, check, report.passed, report.failed);
            checks.push(report);
        }
        reports.push(EntryReport { name: e.name.clone(), instances: insts.len(), checks });
    }
    let all_passed = reports.iter().flat_map(|r| &r.checks).all(|c| c.failed == 0);
    let out = if pretty {
        Output::Text(table(&reports, all_passed))
    } else {
        Output::Json(json!({ "entries": reports, "all_passed": all_passed }))
    };
    Ok(if all_passed { out } else { Output::Failing(Box::new(out)) })
}
