//! Deterministic artifact writers: convergence CSV, layout SVG and batch
//! summary JSON.
//!
//! All numeric output goes through Rust's shortest-roundtrip float
//! formatting (or fixed decimals for SVG coordinates), so identical inputs
//! produce byte-identical files on every platform and thread count.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::catalog::{ComponentKind, LayoutInstance};
use crate::evolution::{GenerationRecord, RunResult};
use crate::experiments::RunStats;
use crate::geometry::{ContainerDisk, PlacedShape};
use crate::Scalar;

/// CSV header of the convergence curve.
pub const CONVERGENCE_HEADER: &str = "generation,best_objective,median_objective,h1_median,h2_median,h3_median,g1_median,g3_median,feasible_count,distinct_configurations";

fn fmt_f<F: Scalar>(v: F) -> String {
    format!("{}", v.as_f64())
}

/// Writes one run's per-generation history as CSV; one row per generation,
/// generation 0 first.
pub fn write_convergence_csv<F: Scalar, W: Write>(
    mut w: W,
    history: &[GenerationRecord<F>],
) -> io::Result<()> {
    writeln!(w, "{CONVERGENCE_HEADER}")?;
    for rec in history {
        let v = &rec.median_violations;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            rec.generation,
            fmt_f(rec.best_objective),
            fmt_f(rec.median_objective),
            fmt_f(v.overlap),
            fmt_f(v.exclusion),
            fmt_f(v.containment),
            fmt_f(v.centroid),
            fmt_f(v.functional),
            rec.feasible_count,
            rec.distinct_configurations
        )?;
    }
    Ok(())
}

const FUEL_COLOR: &str = "#2e8b57";
const ENERGY_COLOR: &str = "#f5c518";
const DIVERSE_COLOR: &str = "#4169e1";
const EXCLUSION_COLOR: &str = "#ffc0cb";

fn kind_color(kind: ComponentKind) -> &'static str {
    match kind {
        ComponentKind::Fuel => FUEL_COLOR,
        ComponentKind::Energy => ENERGY_COLOR,
        ComponentKind::Diverse => DIVERSE_COLOR,
    }
}

fn svg_shape<F: Scalar>(shape: &PlacedShape<F>, fill: &str, extra: &str) -> String {
    match *shape {
        PlacedShape::Disk { center, radius } => format!(
            r##"  <circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="{fill}" fill-opacity="0.85" stroke="#222" stroke-width="1"{extra}/>"##,
            center.x.as_f64(),
            center.y.as_f64(),
            radius.as_f64()
        ),
        PlacedShape::Rect {
            center,
            half_extents,
            orientation,
        } => format!(
            r##"  <rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" transform="translate({:.3} {:.3}) rotate({:.3})" fill="{fill}" fill-opacity="0.85" stroke="#222" stroke-width="1"{extra}/>"##,
            -half_extents.x.as_f64(),
            -half_extents.y.as_f64(),
            2.0 * half_extents.x.as_f64(),
            2.0 * half_extents.y.as_f64(),
            center.x.as_f64(),
            center.y.as_f64(),
            orientation.as_f64().to_degrees()
        ),
    }
}

/// Renders a layout into a standalone SVG: the container rim, exclusion
/// zones in pink, fuel parts in green, energy in yellow and the rest in
/// blue. Mathematical y-up coordinates are preserved by a flip transform.
pub fn write_layout_svg<F: Scalar, W: Write>(
    mut w: W,
    layout: &LayoutInstance<F>,
    container: &ContainerDisk<F>,
    exclusion_zones: &[PlacedShape<F>],
) -> io::Result<()> {
    let r = container.radius.as_f64();
    let (cx, cy) = (container.center.x.as_f64(), container.center.y.as_f64());
    let pad = 0.04 * r;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.3} {:.3} {:.3} {:.3}">"#,
        cx - r - pad,
        cy - r - pad,
        2.0 * (r + pad),
        2.0 * (r + pad)
    )?;
    writeln!(w, r#"<g transform="scale(1,-1)">"#)?;
    writeln!(
        w,
        r##"  <circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#fcfcfc" stroke="#444" stroke-width="2"/>"##,
        cx, -cy, r
    )?;
    for zone in exclusion_zones {
        writeln!(w, "{}", svg_shape(zone, EXCLUSION_COLOR, ""))?;
    }
    for item in &layout.items {
        let extra = format!(r#" data-component="{}" data-part="{}""#, item.component, item.part);
        writeln!(w, "{}", svg_shape(&item.shape, kind_color(item.kind), &extra))?;
    }
    writeln!(w, "</g>")?;
    writeln!(w, "</svg>")
}

/// Per-run entry of the batch summary.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    pub best_objective: f64,
    pub best_feasible_objective: Option<f64>,
    pub feasible: bool,
    pub first_feasible_generation: Option<usize>,
    pub explored_configurations: usize,
    pub explored_feasible_configurations: usize,
    pub evaluations: usize,
}

/// Aggregate block of the batch summary.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AggregateSummary {
    pub run_count: usize,
    pub success_count: usize,
    pub mean_first_feasible: Option<f64>,
    pub best_final_objective: Option<f64>,
    pub median_final_objective: f64,
}

/// Serializable summary of a batch of runs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummaryDoc {
    pub problem: String,
    pub method: String,
    pub population_size: usize,
    pub generations: usize,
    pub occupation_rate: Option<f64>,
    pub seeds: Vec<u64>,
    pub runs: Vec<RunSummary>,
    pub aggregate: AggregateSummary,
}

/// Builds the summary document from batch output.
pub fn summary_doc<F: Scalar>(
    problem: &str,
    method: &str,
    population_size: usize,
    generations: usize,
    occupation_rate: Option<f64>,
    runs: &[RunResult<F>],
    stats: &RunStats<F>,
) -> SummaryDoc {
    SummaryDoc {
        problem: problem.to_string(),
        method: method.to_string(),
        population_size,
        generations,
        occupation_rate,
        seeds: runs.iter().map(|r| r.seed).collect(),
        runs: runs
            .iter()
            .map(|r| RunSummary {
                seed: r.seed,
                best_objective: r.best.evaluation.objective.as_f64(),
                best_feasible_objective: r
                    .history
                    .last()
                    .and_then(|rec| rec.best_feasible_objective)
                    .map(|v| v.as_f64()),
                feasible: r.best.evaluation.is_feasible(),
                first_feasible_generation: r.first_feasible_generation,
                explored_configurations: r.explored_configurations,
                explored_feasible_configurations: r.explored_feasible_configurations,
                evaluations: r.evaluations,
            })
            .collect(),
        aggregate: AggregateSummary {
            run_count: stats.run_count,
            success_count: stats.success_count,
            mean_first_feasible: stats.mean_first_feasible.map(|v| v.as_f64()),
            best_final_objective: stats.best_final_objective.map(|v| v.as_f64()),
            median_final_objective: stats.median_final_objective.as_f64(),
        },
    }
}

/// Writes the summary as pretty-printed JSON with a trailing newline.
pub fn write_summary_json<W: Write>(mut w: W, doc: &SummaryDoc) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, doc)?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::Violations;
    use crate::evolution::GenerationRecord;
    use crate::geometry::Vec2;

    fn record(generation: usize) -> GenerationRecord<f64> {
        GenerationRecord {
            generation,
            best_objective: 123.456,
            best_feasible_objective: Some(123.456),
            median_objective: 200.0,
            median_violations: Violations {
                overlap: 1.5,
                exclusion: 0.0,
                containment: 2.25,
                centroid: 0.5,
                functional: 0.0,
                total: 0.001,
            },
            feasible_count: 3,
            distinct_configurations: 2,
        }
    }

    #[test]
    fn csv_has_header_and_one_row_per_generation() {
        let mut buf = Vec::new();
        write_convergence_csv(&mut buf, &[record(0), record(1)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CONVERGENCE_HEADER);
        assert_eq!(lines[1], "0,123.456,200,1.5,0,2.25,0.5,0,3,2");
    }

    #[test]
    fn csv_is_deterministic() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_convergence_csv(&mut a, &[record(0)]).unwrap();
        write_convergence_csv(&mut b, &[record(0)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn svg_colors_follow_the_component_kinds() {
        use crate::catalog::PlacedItem;
        let layout = LayoutInstance {
            items: vec![
                PlacedItem {
                    shape: PlacedShape::disk(Vec2::new(0.0, 0.0), 10.0),
                    mass: 1.0,
                    kind: ComponentKind::Fuel,
                    component: 0,
                    part: 0,
                },
                PlacedItem {
                    shape: PlacedShape::rect(Vec2::new(30.0, 0.0), Vec2::new(5.0, 4.0), 0.3),
                    mass: 1.0,
                    kind: ComponentKind::Energy,
                    component: 1,
                    part: 0,
                },
                PlacedItem {
                    shape: PlacedShape::rect(Vec2::new(-30.0, 0.0), Vec2::new(5.0, 4.0), 0.0),
                    mass: 1.0,
                    kind: ComponentKind::Diverse,
                    component: 2,
                    part: 0,
                },
            ],
        };
        let container = ContainerDisk::centered(100.0);
        let zone = PlacedShape::rect(Vec2::new(50.0, 0.0), Vec2::new(10.0, 10.0), 0.0);
        let mut buf = Vec::new();
        write_layout_svg(&mut buf, &layout, &container, &[zone]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains(FUEL_COLOR));
        assert!(text.contains(ENERGY_COLOR));
        assert!(text.contains(DIVERSE_COLOR));
        assert!(text.contains(EXCLUSION_COLOR));
        assert!(text.starts_with("<svg"));
    }

    #[test]
    fn summary_roundtrips_through_json() {
        let doc = SummaryDoc {
            problem: "toy".into(),
            method: "tags".into(),
            population_size: 50,
            generations: 60,
            occupation_rate: None,
            seeds: vec![1, 2],
            runs: vec![],
            aggregate: AggregateSummary {
                run_count: 2,
                success_count: 2,
                mean_first_feasible: Some(3.5),
                best_final_objective: Some(1.0e5),
                median_final_objective: 1.1e5,
            },
        };
        let mut buf = Vec::new();
        write_summary_json(&mut buf, &doc).unwrap();
        let parsed: SummaryDoc = serde_json::from_slice(&buf).unwrap();
        assert_eq!(parsed.problem, "toy");
        assert_eq!(parsed.aggregate.success_count, 2);
    }
}
