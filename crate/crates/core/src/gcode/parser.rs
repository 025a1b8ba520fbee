use serde::{Deserialize, Serialize};

use super::arc::{ijk_radius_mismatch, resolve_arc_center, ArcDesignation, IJK_MISMATCH_LIMIT};
use crate::geometry::{Block, Motion, Plane, Point3, ToolPath, ARC_RADIUS_TOL, MIN_EXTENT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub severity: Severity,
    pub message: String,
    /// The word or line fragment that triggered the diagnostic.
    pub text: String,
}

impl std::fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "line {}: {sev}: {} [{}]", self.line, self.message, self.text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotionMode {
    Rapid,
    Linear,
    ClockwiseArc,
    CounterClockwiseArc,
}

/// Modal state carried from one line to the next.
#[derive(Debug, Clone, PartialEq)]
pub struct ParserState {
    pub position: Point3,
    pub motion: Option<MotionMode>,
    pub plane: Plane,
    /// Modal feed, mm/min as programmed.
    pub feed_mm_min: Option<f64>,
    pub line: usize,
}

impl ParserState {
    pub fn new(start: Point3) -> Self {
        ParserState { position: start, motion: None, plane: Plane::Xy, feed_mm_min: None, line: 0 }
    }
}

struct Word<'a> {
    letter: char,
    value: f64,
    text: &'a str,
}

type LineError = (String, String);

fn strip_comments(line: &str) -> Result<String, LineError> {
    let line = line.split(';').next().unwrap_or("");
    let mut out = String::with_capacity(line.len());
    let mut depth = 0usize;
    for ch in line.chars() {
        match ch {
            '(' => depth += 1,
            ')' if depth > 0 => depth -= 1,
            ')' => return Err(("unbalanced ')'".into(), line.trim().into())),
            _ if depth == 0 => out.push(ch),
            _ => {}
        }
    }
    if depth > 0 {
        return Err(("unterminated comment".into(), line.trim().into()));
    }
    Ok(out)
}

fn tokenize(code: &str) -> Result<Vec<Word<'_>>, LineError> {
    let bytes = code.as_bytes();
    let mut words = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if !c.is_ascii_alphabetic() {
            let bad = code[i..].chars().next().unwrap_or('?');
            return Err((format!("unexpected character '{bad}'"), bad.to_string()));
        }
        let start = i;
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let num_start = i;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            i += 1;
        }
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
            i += 1;
        }
        let text = &code[start..i];
        let value = code[num_start..i]
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| (format!("malformed word '{}'", text.trim()), text.trim().to_string()))?;
        words.push(Word { letter: (c as char).to_ascii_uppercase(), value, text });
    }
    Ok(words)
}

#[derive(Default)]
struct LineWords {
    motion: Option<MotionMode>,
    plane: Option<Plane>,
    axes: [Option<f64>; 3],
    offsets: [Option<f64>; 3],
    radius: Option<f64>,
    feed: Option<f64>,
}

fn collect(words: &[Word<'_>], warnings: &mut Vec<(String, String)>) -> Result<LineWords, LineError> {
    let mut lw = LineWords::default();
    let set = |slot: &mut Option<f64>, w: &Word<'_>| -> Result<(), LineError> {
        if slot.replace(w.value).is_some() {
            return Err((format!("duplicate word {}", w.letter), w.text.trim().to_string()));
        }
        Ok(())
    };
    for w in words {
        let text = w.text.trim();
        let unsupported = || (format!("unsupported word {text}"), text.to_string());
        match w.letter {
            'N' => {}
            'G' => {
                if w.value.fract() != 0.0 {
                    return Err(unsupported());
                }
                let motion = match w.value as i64 {
                    0 => Some(MotionMode::Rapid),
                    1 => Some(MotionMode::Linear),
                    2 => Some(MotionMode::ClockwiseArc),
                    3 => Some(MotionMode::CounterClockwiseArc),
                    17 => {
                        lw.plane = Some(Plane::Xy);
                        None
                    }
                    18 => {
                        lw.plane = Some(Plane::Xz);
                        None
                    }
                    19 => {
                        lw.plane = Some(Plane::Yz);
                        None
                    }
                    21 | 90 => None,
                    20 => return Err(("inch units (G20) are not supported".into(), text.into())),
                    91 => {
                        return Err(("incremental distance mode (G91) is not supported".into(), text.into()))
                    }
                    _ => return Err(unsupported()),
                };
                if let Some(m) = motion {
                    if lw.motion.replace(m).is_some() {
                        return Err(("more than one motion code on the line".into(), text.into()));
                    }
                }
            }
            'X' => set(&mut lw.axes[0], w)?,
            'Y' => set(&mut lw.axes[1], w)?,
            'Z' => set(&mut lw.axes[2], w)?,
            'I' => set(&mut lw.offsets[0], w)?,
            'J' => set(&mut lw.offsets[1], w)?,
            'K' => set(&mut lw.offsets[2], w)?,
            'R' => set(&mut lw.radius, w)?,
            'F' => set(&mut lw.feed, w)?,
            'M' | 'S' | 'T' => warnings.push((format!("ignored machine word {text}"), text.into())),
            _ => return Err(unsupported()),
        }
    }
    Ok(lw)
}

/// Applies one line to `state`, returning the block it produces (if any).
fn apply_line(
    state: &mut ParserState,
    code: &str,
    warnings: &mut Vec<(String, String)>,
) -> Result<Option<Block>, LineError> {
    let words = tokenize(code)?;
    let lw = collect(&words, warnings)?;
    let whole = code.trim().to_string();

    let feed = match lw.feed {
        Some(f) if f <= 0.0 => return Err((format!("feed must be positive, got {f}"), whole)),
        Some(f) => Some(f),
        None => state.feed_mm_min,
    };
    let plane = lw.plane.unwrap_or(state.plane);
    let motion = lw.motion.or(state.motion);

    let has_axes = lw.axes.iter().any(Option::is_some);
    let has_arc_words = lw.offsets.iter().any(Option::is_some) || lw.radius.is_some();

    let commit = |state: &mut ParserState, position: Point3| {
        state.position = position;
        state.plane = plane;
        state.motion = motion;
        state.feed_mm_min = feed;
    };

    if !has_axes && !has_arc_words {
        commit(state, state.position);
        return Ok(None);
    }
    let Some(mode) = motion else {
        return Err(("coordinates given without an active motion mode".into(), whole));
    };
    let cur = state.position;
    let target = Point3::new(
        lw.axes[0].unwrap_or(cur.x),
        lw.axes[1].unwrap_or(cur.y),
        lw.axes[2].unwrap_or(cur.z),
    );
    let line = state.line;

    let block = match mode {
        MotionMode::Rapid | MotionMode::Linear => {
            if has_arc_words {
                return Err(("arc words (I/J/K/R) outside G2/G3".into(), whole));
            }
            let rapid = mode == MotionMode::Rapid;
            let feed_mm_s = if rapid {
                0.0
            } else {
                feed.ok_or_else(|| ("missing feed (F) before cutting move".to_string(), whole.clone()))? / 60.0
            };
            if cur.distance(target) <= MIN_EXTENT {
                warnings.push(("zero-length move ignored".into(), whole.clone()));
                commit(state, cur);
                return Ok(None);
            }
            Block::new(Motion::Linear { start: cur, end: target }, feed_mm_s, rapid, line)
        }
        MotionMode::ClockwiseArc | MotionMode::CounterClockwiseArc => {
            let clockwise = mode == MotionMode::ClockwiseArc;
            let feed = feed.ok_or_else(|| ("missing feed (F) before cutting move".to_string(), whole.clone()))?;
            if (target - cur).dot(plane.normal()).abs() > ARC_RADIUS_TOL {
                return Err(("helical arcs are not supported".into(), whole));
            }
            let designation = if let Some(r) = lw.radius {
                if lw.offsets.iter().any(Option::is_some) {
                    return Err(("arc has both R and I/J/K".into(), whole));
                }
                ArcDesignation::Radius(r)
            } else if lw.offsets.iter().any(Option::is_some) {
                let [i, j, k] = lw.offsets.map(|o| o.unwrap_or(0.0));
                let offset = Point3::new(i, j, k);
                let mismatch = ijk_radius_mismatch(cur, target, offset, plane);
                if mismatch > ARC_RADIUS_TOL && mismatch <= IJK_MISMATCH_LIMIT {
                    warnings.push((
                        format!("arc radii differ by {mismatch:.6} mm; centre re-projected"),
                        whole.clone(),
                    ));
                }
                ArcDesignation::Offset(offset)
            } else {
                return Err(("arc with neither I/J/K nor R".into(), whole));
            };
            let center = resolve_arc_center(cur, target, designation, plane, clockwise)
                .map_err(|e| (e.to_string(), whole.clone()))?;
            Block::new(
                Motion::Arc { start: cur, end: target, center, plane, clockwise },
                feed / 60.0,
                false,
                line,
            )
        }
    }
    .map_err(|e| (e.to_string(), whole))?;

    commit(state, target);
    Ok(Some(block))
}

/// Parses a G-code program into a tool path starting at `start`.
///
/// Parsing never fails as a whole: a line either produces a block, updates
/// modal state, or is rejected with exactly one error diagnostic and leaves
/// the state untouched.
pub fn parse_program(text: &str, start: Point3) -> (ToolPath, Vec<ParseDiagnostic>) {
    let mut state = ParserState::new(start);
    let mut blocks = Vec::new();
    let mut diagnostics = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        state.line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed == "%" {
            continue;
        }
        let mut warnings = Vec::new();
        let result = strip_comments(raw).and_then(|code| apply_line(&mut state, &code, &mut warnings));
        match result {
            Ok(block) => {
                diagnostics.extend(warnings.into_iter().map(|(message, text)| ParseDiagnostic {
                    line: state.line,
                    severity: Severity::Warning,
                    message,
                    text,
                }));
                blocks.extend(block);
            }
            Err((message, text)) => diagnostics.push(ParseDiagnostic {
                line: state.line,
                severity: Severity::Error,
                message,
                text,
            }),
        }
    }

    let path = ToolPath::new(blocks).expect("parser emits connected, validated blocks");
    (path, diagnostics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::block_length;

    fn parse(text: &str) -> (ToolPath, Vec<ParseDiagnostic>) {
        parse_program(text, Point3::ORIGIN)
    }

    fn errors(d: &[ParseDiagnostic]) -> usize {
        d.iter().filter(|d| d.severity == Severity::Error).count()
    }

    #[test]
    fn linear_move_converts_feed() {
        let (path, diags) = parse("G1 X10 F600");
        assert!(diags.is_empty());
        let b = path.blocks()[0];
        assert_eq!(b.motion, Motion::Linear { start: Point3::ORIGIN, end: Point3::new(10.0, 0.0, 0.0) });
        assert_eq!(b.feed, 10.0);
        assert_eq!(b.source_line, 1);
    }

    #[test]
    fn clockwise_semicircle() {
        let (path, diags) = parse("G2 X20 Y0 I10 J0 F600");
        assert!(diags.is_empty(), "{diags:?}");
        let b = path.blocks()[0];
        match b.motion {
            Motion::Arc { center, clockwise, .. } => {
                assert_eq!(center, Point3::new(10.0, 0.0, 0.0));
                assert!(clockwise);
            }
            _ => panic!(),
        }
        let mid = b.point_at(0.5);
        assert!(mid.distance(Point3::new(10.0, 10.0, 0.0)) < 1e-9);
    }

    #[test]
    fn unsupported_word() {
        let (path, diags) = parse("G5 X1");
        assert!(path.is_empty());
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].severity, Severity::Error);
        assert_eq!(diags[0].message, "unsupported word G5");
        assert_eq!(diags[0].line, 1);
    }

    #[test]
    fn rejected_modes() {
        for src in ["G91 X1", "G20", "G41 X1", "G81 X1 Y1 Z-1 R1", "G17.1"] {
            let (_, diags) = parse(src);
            assert_eq!(errors(&diags), 1, "{src}");
        }
    }

    #[test]
    fn missing_feed() {
        let (path, diags) = parse("G1 X10");
        assert!(path.is_empty());
        assert!(diags[0].message.contains("missing feed"));
        // a rapid needs no feed
        let (path, diags) = parse("G0 X10");
        assert!(diags.is_empty());
        assert!(path.blocks()[0].rapid);
    }

    #[test]
    fn arc_without_centre() {
        let (_, diags) = parse("G2 X10 F100");
        assert!(diags[0].message.contains("neither"));
    }

    #[test]
    fn ijk_mismatch_warns_or_errors() {
        let (path, diags) = parse("G2 X20 I10.0002 F100");
        assert_eq!(path.len(), 1);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].severity, Severity::Warning);
        let (path, diags) = parse("G2 X20 I10.5 F100");
        assert!(path.is_empty());
        assert_eq!(errors(&diags), 1);
    }

    #[test]
    fn modal_state_and_comments() {
        let src = "%\n(program header)\nN10 G21 G90 G17\nN20 G1 X10 F1200 ; feed move\nY10\nG2 X20 Y0 R10 (short arc)\nG0 Z5\nM30\n%";
        let (path, diags) = parse(src);
        assert_eq!(errors(&diags), 0, "{diags:?}");
        assert_eq!(path.len(), 4);
        assert_eq!(path.blocks()[1].feed, 20.0);
        assert_eq!(path.blocks()[1].end(), Point3::new(10.0, 10.0, 0.0));
        assert!(path.blocks()[3].rapid);
        assert_eq!(path.blocks()[3].source_line, 7);
        // M30 is ignored with a warning
        assert_eq!(diags.len(), 1);
    }

    #[test]
    fn rejected_line_leaves_state() {
        let (path, diags) = parse("G1 X10 F600\nG1 X20 G91\nX30");
        assert_eq!(errors(&diags), 1);
        assert_eq!(path.len(), 2);
        assert_eq!(path.blocks()[1].start(), Point3::new(10.0, 0.0, 0.0));
    }

    #[test]
    fn compact_words_and_lowercase() {
        let (path, diags) = parse("g1x3y4f60");
        assert!(diags.is_empty(), "{diags:?}");
        assert_eq!(block_length(&path.blocks()[0]), 5.0);
    }

    #[test]
    fn helical_arcs_rejected() {
        let (path, diags) = parse("G2 X20 Z-1 I10 F100");
        assert!(path.is_empty());
        assert!(diags[0].message.contains("helical"));
    }

    #[test]
    fn plane_selection() {
        let (path, diags) = parse("G18 G2 X20 I10 K0 F100");
        assert!(diags.is_empty(), "{diags:?}");
        match path.blocks()[0].motion {
            Motion::Arc { plane, .. } => assert_eq!(plane, Plane::Xz),
            _ => panic!(),
        }
    }
}
