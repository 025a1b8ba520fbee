mod common;

use kerf::analyzer::{analyze, AnalyzeOptions, Report, SeverityClass};
use kerf::emit::{emit_csv, emit_json, emit_svg, parse_json, EmitError, SvgStyle, SvgView};
use kerf::gcode::parse_program;
use kerf::geometry::{Point3, ToolPath};
use serde_json::Value;

fn analyzed(text: &str) -> (ToolPath, Report) {
    let (path, diags) = parse_program(text, Point3::ORIGIN);
    assert!(diags.is_empty(), "{diags:?}");
    let report = analyze(&path, &common::machine(), &AnalyzeOptions::default()).unwrap();
    (path, report)
}

fn numbers(v: &Value, out: &mut Vec<f64>) {
    match v {
        Value::Number(n) => out.push(n.as_f64().unwrap()),
        Value::Array(a) => a.iter().for_each(|x| numbers(x, out)),
        Value::Object(m) => m.values().for_each(|x| numbers(x, out)),
        _ => {}
    }
}

fn near(a: f64, b: f64) -> bool {
    (a.is_infinite() && a == b) || (a - b).abs() <= 5e-7 * a.abs().max(1.0)
}

#[test]
fn json_for_collinear_path_has_empty_junctions() {
    let (_, r) = analyzed("G1 X10 F600\nX20");
    let v: Value = serde_json::from_slice(&emit_json(&r)).unwrap();
    assert_eq!(v["schema"], "kerf-report/1");
    assert_eq!(v["junctions"], Value::Array(vec![]));
    for class in ["None", "Moderate", "High", "Severe"] {
        assert_eq!(v["histograms"]["severity"][class], 0);
    }
}

#[test]
fn json_field_order_is_stable() {
    let (_, r) = analyzed(&common::data("hexagon.nc"));
    let v: Value = serde_json::from_slice(&emit_json(&r)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["schema", "path", "machine", "options", "blocks", "junctions", "histograms", "estimated_cycle_time", "notes"]
    );
    assert_eq!(v["junctions"].as_array().unwrap().len(), 6);
    let classes: Vec<&Value> = v["junctions"].as_array().unwrap().iter().map(|j| &j["severity"]).collect();
    assert!(classes.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn json_numbers_carry_at_most_six_decimals() {
    for name in ["hexagon.nc", "spiral.nc", "staircase.nc"] {
        let (_, r) = analyzed(&common::data(name));
        let v: Value = serde_json::from_slice(&emit_json(&r)).unwrap();
        let mut all = Vec::new();
        numbers(&v, &mut all);
        for x in all {
            assert_eq!((x * 1e6).round() / 1e6, x, "{name}: {x}");
        }
    }
}

#[test]
fn json_round_trip() {
    for text in common::corpus(10, 5).iter().map(String::as_str).chain([common::data("spiral.nc").as_str()]) {
        let (path, diags) = parse_program(text, Point3::ORIGIN);
        assert!(diags.iter().all(|d| d.severity != kerf::gcode::Severity::Error));
        let r = analyze(&path, &common::machine(), &AnalyzeOptions::default()).unwrap();
        let bytes = emit_json(&r);
        let back = parse_json(&bytes).unwrap();
        assert_eq!(emit_json(&back), bytes);
        assert_eq!(back.schema, r.schema);
        assert_eq!(back.histograms, r.histograms);
        assert_eq!(back.notes, r.notes);
        assert_eq!(back.options, r.options);
        assert_eq!(back.blocks.len(), r.blocks.len());
        for (a, b) in back.blocks.iter().zip(&r.blocks) {
            assert_eq!((a.index, a.source_line, a.rapid, a.length_class), (b.index, b.source_line, b.rapid, b.length_class));
            assert!(near(a.length, b.length) && near(a.feed_cap, b.feed_cap) && near(a.min_length, b.min_length));
        }
        assert_eq!(back.junctions.len(), r.junctions.len());
        for (a, b) in back.junctions.iter().zip(&r.junctions) {
            assert_eq!((a.index, a.severity, a.binding, a.kind.name()), (b.index, b.severity, b.binding, b.kind.name()));
            assert!(near(a.predicted_feed, b.predicted_feed) && near(a.reduction_pct, b.reduction_pct));
            assert!(a.location.distance(b.location) < 1e-6);
        }
        assert!(near(back.estimated_cycle_time, r.estimated_cycle_time));
    }
}

fn csv_tables(text: &str) -> Vec<Vec<csv::StringRecord>> {
    text.split("\r\n\r\n")
        .map(|table| {
            csv::ReaderBuilder::new()
                .has_headers(false)
                .from_reader(table.as_bytes())
                .records()
                .map(Result::unwrap)
                .collect()
        })
        .collect()
}

#[test]
fn csv_headers_and_shape() {
    let (_, r) = analyzed("G1 X10 F600\nX20");
    let tables = csv_tables(&emit_csv(&r));
    assert_eq!(tables.len(), 2);
    assert_eq!(tables[0].len(), 3);
    assert_eq!(tables[1].len(), 1, "junction table is header only");
    assert_eq!(&tables[0][0][3], "length_mm");
    assert_eq!(&tables[1][0][6], "predicted_feed_mm_s");
}

#[test]
fn csv_severe_row_and_constant_width() {
    let (_, r) = analyzed(&common::data("hexagon.nc"));
    assert!(r.junctions.iter().all(|j| j.reduction_pct > 90.0));
    let tables = csv_tables(&emit_csv(&r));
    for t in &tables {
        let width = t[0].len();
        assert!(t.iter().all(|row| row.len() == width));
    }
    let severity_col = tables[1][0].iter().position(|h| h == "severity").unwrap();
    assert_eq!(tables[1].len(), 7);
    assert!(tables[1][1..].iter().all(|row| &row[severity_col] == "Severe"));
}

fn count(hay: &str, needle: &str) -> usize {
    hay.matches(needle).count()
}

#[test]
fn svg_staircase_all_critical() {
    let (path, r) = analyzed(&common::data("staircase.nc"));
    let style = SvgStyle::default();
    let svg = emit_svg(&r, &path, &style, SvgView::Ncu).unwrap();
    assert_eq!(count(&svg, "<path "), 40);
    assert_eq!(count(&svg, &format!("stroke=\"{}\"", style.length.critical)), 40);
    assert_eq!(count(&svg, "<circle "), r.junctions.len());
}

#[test]
fn svg_collinear_has_no_markers() {
    let (path, r) = analyzed("G1 X10 F600\nX20");
    let svg = emit_svg(&r, &path, &SvgStyle::default(), SvgView::Discontinuity).unwrap();
    assert_eq!(count(&svg, "<circle "), 0);
    assert_eq!(count(&svg, "<path "), 2);
}

#[test]
fn svg_hexagon_markers_share_a_colour() {
    let (path, r) = analyzed(&common::data("hexagon.nc"));
    let style = SvgStyle::default();
    let svg = emit_svg(&r, &path, &style, SvgView::Discontinuity).unwrap();
    assert_eq!(count(&svg, "<circle "), 6);
    let fill = format!("fill=\"{}\"><title>junction", style.severity.get(SeverityClass::Severe));
    assert_eq!(count(&svg, &fill), 6);
    assert_eq!(count(&svg, &format!("stroke=\"{}\"", style.neutral)), 7);
}

#[test]
fn svg_arcs_are_arc_commands() {
    let (path, r) = analyzed("G1 X10 F600\nG2 X20 I5 J0\nG3 X20 Y0 I-5 J0");
    let svg = emit_svg(&r, &path, &SvgStyle::default(), SvgView::Ncu).unwrap();
    // the semicircle and the full circle are each drawn as two half arcs
    assert_eq!(count(&svg, " A 5 5 0 0 "), 4);
    assert_eq!(count(&svg, " A 5 5 0 0 1 "), 2, "clockwise in the drawing");
}

#[test]
fn svg_out_of_plane_and_degenerate_views() {
    let (path, r) = analyzed("G1 Z5 F600");
    let svg = emit_svg(&r, &path, &SvgStyle::default(), SvgView::Ncu).unwrap();
    assert!(svg.contains("viewBox=\"-0.5 -0.5 1 1\""));

    let (path, r) = analyzed("G18 G1 X10 F600\nG2 X20 I5 K0");
    let side = SvgStyle { plane: kerf::geometry::Plane::Xy, ..SvgStyle::default() };
    let svg = emit_svg(&r, &path, &side, SvgView::Ncu).unwrap();
    assert_eq!(count(&svg, " A "), 0);
    let front = SvgStyle { plane: kerf::geometry::Plane::Xz, ..SvgStyle::default() };
    let svg = emit_svg(&r, &path, &front, SvgView::Ncu).unwrap();
    assert_eq!(count(&svg, " A "), 2);
}

#[test]
fn svg_requires_matching_path() {
    let (_, r) = analyzed("G1 X10 F600\nX20");
    let (other, _) = analyzed("G1 X10 F600");
    assert!(matches!(
        emit_svg(&r, &other, &SvgStyle::default(), SvgView::Ncu),
        Err(EmitError::PathMismatch { report: 2, path: 1 })
    ));
}

#[test]
fn emission_does_not_alter_the_report() {
    let (path, r) = analyzed(&common::data("spiral.nc"));
    let before = r.clone();
    let _ = emit_json(&r);
    let _ = emit_csv(&r);
    let _ = emit_svg(&r, &path, &SvgStyle::default(), SvgView::Discontinuity).unwrap();
    assert_eq!(r, before);
}
