use super::json::round6;
use crate::analyzer::Report;
use crate::geometry::JunctionKind;

const BLOCK_HEADER: [&str; 8] = [
    "block",
    "source_line",
    "rapid",
    "length_mm",
    "programmed_feed_mm_s",
    "min_length_mm",
    "feed_cap_mm_s",
    "length_class",
];

const JUNCTION_HEADER: [&str; 14] = [
    "junction",
    "source_line",
    "kind",
    "turn_angle_rad",
    "radius_before_mm",
    "radius_after_mm",
    "predicted_feed_mm_s",
    "programmed_feed_mm_s",
    "reduction_pct",
    "severity",
    "binding",
    "x_mm",
    "y_mm",
    "z_mm",
];

/// Finite numbers at 6 decimals; unbounded values are empty cells.
fn num(x: f64) -> String {
    if x.is_finite() {
        round6(x).to_string()
    } else {
        String::new()
    }
}

fn table<const N: usize>(header: [&str; N], rows: Vec<[String; N]>) -> String {
    let mut w = ::csv::WriterBuilder::new().terminator(::csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(header).expect("writes to memory never fail");
    for row in rows {
        w.write_record(&row).expect("writes to memory never fail");
    }
    String::from_utf8(w.into_inner().expect("flush to memory never fails")).expect("cells are UTF-8")
}

/// Blocks table, one empty line, junctions table. RFC 4180 quoting.
pub fn emit_csv(report: &Report) -> String {
    let blocks = report
        .blocks
        .iter()
        .map(|b| {
            [
                b.index.to_string(),
                b.source_line.to_string(),
                b.rapid.to_string(),
                num(b.length),
                num(b.programmed_feed),
                num(b.min_length),
                num(b.feed_cap),
                b.length_class.name().to_string(),
            ]
        })
        .collect();
    let junctions = report
        .junctions
        .iter()
        .map(|j| {
            let (turn, r1, r2) = match j.kind {
                JunctionKind::Smooth => (String::new(), String::new(), String::new()),
                JunctionKind::Tangential { turn_angle } => (num(turn_angle), String::new(), String::new()),
                JunctionKind::Curvature { r_before, r_after, .. } => (String::new(), num(r_before), num(r_after)),
            };
            [
                j.index.to_string(),
                j.source_line.to_string(),
                j.kind.name().to_string(),
                turn,
                r1,
                r2,
                num(j.predicted_feed),
                num(j.programmed_feed),
                num(j.reduction_pct),
                j.severity.name().to_string(),
                j.binding.name().to_string(),
                num(j.location.x),
                num(j.location.y),
                num(j.location.z),
            ]
        })
        .collect();
    let mut out = table(BLOCK_HEADER, blocks);
    out.push_str("\r\n");
    out.push_str(&table(JUNCTION_HEADER, junctions));
    out
}
