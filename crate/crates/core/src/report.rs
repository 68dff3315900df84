//! Machine-readable reports (JSON, CSV) and plain-text renderings.
//!
//! Every JSON document has the shape
//! `{"schemaVersion": 1, "command": "...", "result": {...}}` and validates
//! against `schema/report.schema.json`.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::canonical::{CanonicalSize, ObstructionReport};
use crate::embed::{CoverageReport, Embedding};
use crate::extremal::ExtremalResult;
use crate::graph::{ColouredHost, Graph, PatternColouring};
use crate::patterns::PatternClass;
use crate::verify::VerifyReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!("unknown output format {other:?}")),
        }
    }
}

pub struct Report {
    pub command: &'static str,
    pub result: Value,
    text: String,
    csv: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        let doc = json!({
            "schemaVersion": SCHEMA_VERSION,
            "command": self.command,
            "result": self.result,
        });
        serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.csv.clone(),
            OutputFormat::Text => self.text.clone(),
        }
    }
}

fn coloured_edges(p: &PatternColouring) -> Value {
    p.coloured_edges()
        .map(|(u, v, c)| json!([u, v, c.token().to_string()]))
        .collect()
}

fn host_edges(h: &ColouredHost) -> Value {
    coloured_edges(&h.to_pattern())
}

fn edges_text(p: &PatternColouring) -> String {
    p.coloured_edges()
        .map(|(u, v, c)| format!("{u}-{v}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn map_text(e: &Embedding) -> String {
    e.map().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn canonical_sizes(limit: u64, sizes: &[CanonicalSize]) -> Report {
    let rows: Vec<Value> = sizes
        .iter()
        .map(|s| {
            json!({
                "n": s.n,
                "r": s.r,
                "x": s.x().to_string(),
                "y": s.y().to_string(),
                "edgesPerColour": s.edges_per_colour().to_string(),
            })
        })
        .collect();
    let mut text = format!("{:>8} {:>8} {:>16}\n", "n", "r", "|R| = |B|");
    let mut csv = String::from("n,r,x,y,edges_per_colour\n");
    for s in sizes {
        writeln!(text, "{:>8} {:>8} {:>16}", s.n, s.r, s.edges_per_colour()).unwrap();
        writeln!(csv, "{},{},{},{},{}", s.n, s.r, s.x(), s.y(), s.edges_per_colour()).unwrap();
    }
    Report {
        command: "canonical sizes",
        result: json!({ "limit": limit, "sizes": rows }),
        text,
        csv,
    }
}

pub fn canonical_host(size: CanonicalSize, host: &ColouredHost) -> Report {
    let body = crate::format::write_host(host);
    Report {
        command: "canonical host",
        result: json!({
            "n": size.n,
            "r": size.r,
            "redCount": host.red_count(),
            "blueCount": host.blue_count(),
            "edges": host_edges(host),
        }),
        text: body.clone(),
        csv: host_csv(host),
    }
}

fn host_csv(host: &ColouredHost) -> String {
    let mut csv = String::from("u,v,colour\n");
    for (u, v, c) in host.to_pattern().coloured_edges() {
        writeln!(csv, "{u},{v},{c}").unwrap();
    }
    csv
}

pub fn obstructions(host: &ColouredHost, rep: &ObstructionReport) -> Report {
    Report {
        command: "canonical check",
        result: json!({
            "n": host.order(),
            "redCount": host.red_count(),
            "blueCount": host.blue_count(),
            "rbrP4Found": rep.rbr_p4_found(),
            "k3TwoOneFound": rep.k3_two_one_found(),
            "rbrP4": rep.rbr_p4,
            "k3TwoOne": rep.k3_two_one,
        }),
        text: format!(
            "n = {}, |R| = {}, |B| = {}\nr-b-r P4: {}\n(2,1) K3: {}\n",
            host.order(),
            host.red_count(),
            host.blue_count(),
            rep.rbr_p4.map_or("none".into(), |p| format!("{p:?}")),
            rep.k3_two_one.map_or("none".into(), |t| format!("{t:?}")),
        ),
        csv: format!(
            "n,red,blue,rbr_p4_found,k3_two_one_found\n{},{},{},{},{}\n",
            host.order(),
            host.red_count(),
            host.blue_count(),
            rep.rbr_p4_found(),
            rep.k3_two_one_found()
        ),
    }
}

pub fn pattern_classes(g: &Graph, classes: &[PatternClass], automorphisms: usize, burnside: u64) -> Report {
    let rows: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "tone": { "red": c.tone.red, "blue": c.tone.blue },
                "orbitSize": c.orbit_size,
                "edges": coloured_edges(&c.representative),
            })
        })
        .collect();
    let mut text = format!(
        "{} vertices, {} edges, |Aut| = {automorphisms}, {} classes (Burnside {burnside})\n",
        g.order(),
        g.edge_count(),
        classes.len()
    );
    let mut csv = String::from("id,red,blue,orbit_size,representative\n");
    for c in classes {
        writeln!(
            text,
            "#{:<3} {} orbit {:>4}  {}",
            c.id,
            c.tone,
            c.orbit_size,
            edges_text(&c.representative)
        )
        .unwrap();
        writeln!(
            csv,
            "{},{},{},{},{}",
            c.id,
            c.tone.red,
            c.tone.blue,
            c.orbit_size,
            edges_text(&c.representative)
        )
        .unwrap();
    }
    Report {
        command: "patterns classes",
        result: json!({
            "vertices": g.order(),
            "edges": g.edge_count(),
            "automorphisms": automorphisms,
            "burnsideCount": burnside,
            "classes": rows,
        }),
        text,
        csv,
    }
}

pub fn witness(g: &Graph, starforest: bool, w: Option<&PatternColouring>) -> Report {
    let text = match w {
        None => "star forest: no witness pattern\n".to_string(),
        Some(p) => format!("witness {}: {}\n", p.tone(), edges_text(p)),
    };
    let csv = match w {
        None => "u,v,colour\n".to_string(),
        Some(p) => {
            let mut s = String::from("u,v,colour\n");
            for (u, v, c) in p.coloured_edges() {
                writeln!(s, "{u},{v},{c}").unwrap();
            }
            s
        }
    };
    Report {
        command: "patterns witness",
        result: json!({
            "vertices": g.order(),
            "starForest": starforest,
            "witness": w.map(|p| json!({
                "tone": { "red": p.tone().red, "blue": p.tone().blue },
                "edges": coloured_edges(p),
            })),
        }),
        text,
        csv,
    }
}

pub fn equivalent(eq: bool) -> Report {
    Report {
        command: "patterns equivalent",
        result: json!({ "equivalent": eq }),
        text: format!("{}\n", if eq { "equivalent" } else { "not equivalent" }),
        csv: format!("equivalent\n{eq}\n"),
    }
}

pub fn embedding(command: &'static str, e: Option<&Embedding>) -> Report {
    Report {
        command,
        result: json!({ "found": e.is_some(), "map": e.map(|e| e.map()) }),
        text: match e {
            Some(e) => format!("found: pattern vertex i -> host vertex map[i]\nmap: {}\n", map_text(e)),
            None => "no copy\n".into(),
        },
        csv: match e {
            Some(e) => {
                let mut s = String::from("pattern_vertex,host_vertex\n");
                for (i, v) in e.map().iter().enumerate() {
                    writeln!(s, "{i},{v}").unwrap();
                }
                s
            }
            None => "pattern_vertex,host_vertex\n".into(),
        },
    }
}

pub fn coverage(rep: &CoverageReport) -> Report {
    let entries: Vec<Value> = rep
        .entries
        .iter()
        .map(|e| {
            json!({
                "tone": { "red": e.tone.red, "blue": e.tone.blue },
                "classId": e.class_id,
                "found": e.found(),
                "map": e.embedding.as_ref().map(|m| m.map()),
            })
        })
        .collect();
    let mut text = format!(
        "{} coverage: {}\n",
        match rep.level {
            crate::embed::CoverageLevel::Tone => "tone",
            crate::embed::CoverageLevel::Class => "class",
        },
        if rep.is_complete() { "complete" } else { "incomplete" }
    );
    let mut csv = String::from("red,blue,class_id,found,map\n");
    for e in &rep.entries {
        let class = e.class_id.map_or(String::new(), |c| c.to_string());
        let map = e.embedding.as_ref().map_or(String::new(), map_text);
        writeln!(
            text,
            "{:<8} class {:<4} {}",
            e.tone.to_string(),
            if class.is_empty() { "-" } else { &class },
            if e.found() {
                format!("found at {map}")
            } else {
                "MISSING".into()
            }
        )
        .unwrap();
        writeln!(csv, "{},{},{},{},{}", e.tone.red, e.tone.blue, class, e.found(), map).unwrap();
    }
    Report {
        command: "embed coverage",
        result: json!({
            "level": rep.level,
            "complete": rep.is_complete(),
            "entries": entries,
        }),
        text,
        csv,
    }
}

pub fn extremal(command: &'static str, r: &ExtremalResult) -> Report {
    let max_possible = r.n * r.n.saturating_sub(1) / 4;
    Report {
        command,
        result: json!({
            "n": r.n,
            "level": r.level,
            "value": r.value,
            "saturated": r.saturated,
            "maxPossible": max_possible,
            "witnessIndex": r.witness_index,
            "colourings": r.colourings,
            "coverageChecks": r.coverage_checks,
            "witness": host_edges(&r.witness),
        }),
        text: format!(
            "n = {}: value = {} (max possible {max_possible}), saturated = {}\n\
             {} colourings enumerated, {} coverage checks\nwitness:\n{}",
            r.n,
            r.value,
            r.saturated,
            r.colourings,
            r.coverage_checks,
            crate::format::write_host(&r.witness)
        ),
        csv: format!(
            "n,level,value,saturated,witness_index\n{},{},{},{},{}\n",
            r.n,
            match r.level {
                crate::embed::CoverageLevel::Tone => "tone",
                crate::embed::CoverageLevel::Class => "class",
            },
            r.value,
            r.saturated,
            r.witness_index
        ),
    }
}

pub fn formula(n: u64, k: u64, value: u64) -> Report {
    Report {
        command: "extremal formula",
        result: json!({ "n": n, "k": k, "value": value }),
        text: format!("{value}\n"),
        csv: format!("n,k,value\n{n},{k},{value}\n"),
    }
}

pub fn bound(n: u64, parts: &[u64], value: u64) -> Report {
    let joined = parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
    Report {
        command: "extremal bound",
        result: json!({ "n": n, "parts": parts, "value": value }),
        text: format!("{value}\n"),
        csv: format!("n,parts,value\n{n},{joined},{value}\n"),
    }
}

pub fn verify(rep: &VerifyReport) -> Report {
    let mut text = String::new();
    let mut csv = String::from("id,status,evidence\n");
    for c in &rep.claims {
        let status = serde_json::to_value(c.status).expect("status");
        let status = status.as_str().expect("string");
        writeln!(
            text,
            "[{:<10}] {}: {}\n             {}",
            status.to_uppercase(),
            c.id,
            c.claim,
            c.evidence
        )
        .unwrap();
        writeln!(csv, "{},{},\"{}\"", c.id, status, c.evidence.replace('"', "'")).unwrap();
    }
    writeln!(
        text,
        "{}",
        if !rep.complete {
            "INCOMPLETE"
        } else if rep.passed {
            "ALL CLAIMS PASS"
        } else {
            "SOME CLAIMS FAIL"
        }
    )
    .unwrap();
    Report {
        command: "verify",
        result: serde_json::to_value(rep).expect("verify report serializes"),
        text,
        csv,
    }
}
