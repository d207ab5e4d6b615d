use std::io::Read;
use std::path::Path;

use quasimedian::cubulation::{cubulate_graph, quasi_isometry_report};
use quasimedian::generators::{prism, random_quasi_median};
use quasimedian::groups::{FiniteGroup, GroupSpec};
use quasimedian::relhyp::{JOptions, LabelledGamma};
use quasimedian::wreath::{WreathConfig, WreathSpace};
use quasimedian::{is_median, is_quasi_median, Graph, GraphProduct, HyperplaneDecomposition, VertexSet};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{dot, CliError, Output, WreathArgs};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

pub fn check(path: &Path, median: bool) -> Result<Output, CliError> {
    let g: Graph = read_json(path)?;
    let verdict = if median { is_median(&g) } else { is_quasi_median(&g) };
    Ok(Output::Json(to_json(&verdict)))
}

pub fn hyperplanes(path: &Path, as_dot: bool) -> Result<Output, CliError> {
    let g: Graph = read_json(path)?;
    let h = HyperplaneDecomposition::new(&g);
    if as_dot {
        return Ok(Output::Text(dot::hyperplanes(&g, &h)));
    }
    let mut v = to_json(&h.summary());
    v["count"] = json!(h.hyperplane_count());
    Ok(Output::Json(v))
}

pub fn gen_prism(sizes: &[usize]) -> Result<Output, CliError> {
    Ok(Output::Json(to_json(&prism(sizes)?)))
}

pub fn gen_random(seed: u64, steps: usize, max_prism: usize) -> Result<Output, CliError> {
    Ok(Output::Json(to_json(&random_quasi_median(seed, steps, max_prism)?)))
}

pub fn gp_reduce(path: &Path, word: &str) -> Result<Output, CliError> {
    let p: GraphProduct = read_json(path)?;
    let parsed = p.parse_word(word).map_err(|e| match e {
        quasimedian::Error::InvalidWord(_) => CliError::Malformed(e.to_string()),
        e => CliError::Domain(e),
    })?;
    let reduced = p.reduce_word(&parsed)?;
    Ok(Output::Json(json!({
        "word": p.format_word(reduced.syllables()),
        "syllables": reduced,
        "syllable_length": reduced.len(),
    })))
}

pub fn gp_cayley(path: &Path, radius: Option<usize>, cap: usize) -> Result<Output, CliError> {
    let p: GraphProduct = read_json(path)?;
    let words =
        |ws: &[quasimedian::SyllableWord]| -> Vec<String> { ws.iter().map(|w| p.format_word(w.syllables())).collect() };
    Ok(Output::Json(match radius {
        None => {
            let c = p.full_cayley_graph()?;
            if c.graph.vertex_count() > cap {
                return Err(quasimedian::Error::CapExceeded { what: "Cayley graph size", cap }.into());
            }
            json!({
                "graph": c.graph,
                "words": words(&c.words),
                "verdict": is_quasi_median(&c.graph),
            })
        }
        Some(r) => {
            let b = p.cayley_ball(r, cap)?;
            json!({
                "graph": b.graph,
                "words": words(&b.words),
                "radius": b.radius,
                "interior": b.interior,
            })
        }
    }))
}

pub fn relhyp(path: &Path, maximal_joins: bool, vertex_cap: usize) -> Result<Output, CliError> {
    let lg: LabelledGamma = read_json(path)?;
    let literal = lg.classify(&JOptions { vertex_cap, maximal_joins: false })?;
    let mut v = to_json(&literal);
    if !maximal_joins {
        return Ok(Output::Json(v));
    }
    let maximal = lg.classify(&JOptions { vertex_cap, maximal_joins: true })?;
    let agree = literal.verdict == maximal.verdict
        && literal.peripherals == maximal.peripherals
        && literal.degenerate == maximal.degenerate;
    v["maximal_joins_agree"] = json!(agree);
    if agree {
        Ok(Output::Json(v))
    } else {
        v["maximal_joins"] = to_json(&maximal);
        Ok(Output::Failing(Box::new(Output::Json(v))))
    }
}

pub fn cubulate(path: &Path, as_dot: bool, cap: usize) -> Result<Output, CliError> {
    let g: Graph = read_json(path)?;
    let (walls, c) = cubulate_graph(&g, cap)?;
    if as_dot {
        return Ok(Output::Text(dot::cubulation(&g, &c)));
    }
    let report = quasi_isometry_report(&g, &c)?;
    Ok(Output::Json(json!({
        "cx": c.graph,
        "map": c.vertex_map,
        "walls": walls.wall_count(),
        "report": report,
    })))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OmegaJson {
    Keyword(String),
    List(Vec<usize>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WreathConfigJson {
    host: Graph,
    #[serde(default = "all_omega")]
    omega: OmegaJson,
    group: GroupSpec,
}

fn all_omega() -> OmegaJson {
    OmegaJson::Keyword("all".into())
}

fn omega_set(host: &Graph, omega: OmegaJson) -> Result<VertexSet, CliError> {
    match omega {
        OmegaJson::Keyword(k) if k == "all" => Ok(host.vertices().collect()),
        OmegaJson::Keyword(k) => Err(CliError::Malformed(format!("omega must be \"all\" or a vertex list, got {k:?}"))),
        OmegaJson::List(l) => Ok(VertexSet::new(l)),
    }
}

fn parse_omega(text: &str) -> Result<OmegaJson, CliError> {
    if text == "all" {
        return Ok(all_omega());
    }
    text.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map(OmegaJson::List)
        .map_err(|e| CliError::Malformed(format!("omega {text:?}: {e}")))
}

fn parse_group(text: &str) -> Result<GroupSpec, CliError> {
    let n = text
        .strip_prefix("cyclic:")
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| CliError::Malformed(format!("group must look like cyclic:N, got {text:?}")))?;
    Ok(GroupSpec::Finite(FiniteGroup::cyclic(n)?))
}

pub fn wreath(args: &WreathArgs) -> Result<Output, CliError> {
    let cfg = match (&args.config, &args.host) {
        (Some(path), _) => {
            let j: WreathConfigJson = read_json(path)?;
            WreathConfig { omega: omega_set(&j.host, j.omega)?, host: j.host, group: j.group }
        }
        (None, Some(host)) => {
            let host: Graph = read_json(host)?;
            let omega = omega_set(&host, parse_omega(&args.omega)?)?;
            WreathConfig { host, omega, group: parse_group(&args.group)? }
        }
        (None, None) => return Err(CliError::Malformed("wreath needs a config file or --host".into())),
    };
    let space = WreathSpace::new(&cfg)?;
    let w = space.build(args.convex_cap, args.cap)?;
    let wreaths: Vec<_> = w.graph.vertices().map(|v| space.wreath(&w, v)).collect();
    Ok(Output::Json(json!({
        "graph": w.graph,
        "wreaths": wreaths,
        "convex_sets": w.supports.len(),
        "colorings_per_support": w.colorings_per_support,
        "incidence_disagreements": w.incidence_disagreements,
        "verdict": is_quasi_median(&w.graph),
    })))
}
