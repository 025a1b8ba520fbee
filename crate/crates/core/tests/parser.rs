mod common;

use kerf::gcode::{emit_canonical, parse_program, Severity};
use kerf::geometry::{JunctionKind, Point3};

#[test]
fn corpus_round_trips_through_canonical_form() {
    for (k, text) in common::corpus(50, 7).iter().enumerate() {
        let (first, diags) = parse_program(text, Point3::ORIGIN);
        assert!(diags.iter().all(|d| d.severity != Severity::Error), "program {k}: {diags:?}\n{text}");
        assert!(!first.is_empty());
        let canonical = emit_canonical(&first);
        let (second, diags) = parse_program(&canonical, first.blocks()[0].start());
        assert!(diags.is_empty(), "program {k}: {diags:?}");
        common::same_path(&first, &second, 1e-9).unwrap_or_else(|e| panic!("program {k}: {e}"));
        assert_eq!(emit_canonical(&second), canonical, "program {k}");
    }
}

#[test]
fn sample_programs_parse_cleanly() {
    for name in ["hexagon.nc", "spiral.nc", "staircase.nc"] {
        let (path, diags) = parse_program(&common::data(name), Point3::ORIGIN);
        assert!(diags.is_empty(), "{name}: {diags:?}");
        assert!(!path.is_empty());
    }
}

#[test]
fn hexagon_has_six_equal_corners() {
    let (path, _) = parse_program(&common::data("hexagon.nc"), Point3::ORIGIN);
    assert_eq!(path.len(), 8);
    let cutting = &path.blocks()[1..];
    for w in cutting.windows(2) {
        match kerf::geometry::classify_junction(&w[0], &w[1], 1e-4, 1e-6).unwrap() {
            JunctionKind::Tangential { turn_angle } => {
                assert!((turn_angle - std::f64::consts::FRAC_PI_3).abs() < 1e-12)
            }
            k => panic!("{k:?}"),
        }
    }
}

#[test]
fn unsupported_word_reports_its_line() {
    let (path, diags) = parse_program("G1 X1 F600\nG5 X2\nX3", Point3::ORIGIN);
    assert_eq!(path.len(), 2);
    assert_eq!(diags.len(), 1);
    assert_eq!(diags[0].line, 2);
    assert_eq!(diags[0].severity, Severity::Error);
    assert!(diags[0].to_string().starts_with("line 2: error:"));
}
