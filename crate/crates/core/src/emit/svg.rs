use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::EmitError;
use crate::analyzer::{LengthClass, Report, SeverityClass};
use crate::geometry::{sample_block, Block, Motion, Plane, Point3, ToolPath, MIN_EXTENT};

/// Which indicator the drawing encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SvgView {
    /// Blocks coloured by length class against the minimal block length.
    #[default]
    Ncu,
    /// Neutral blocks; junction markers carry the severity colours.
    Discontinuity,
}

impl FromStr for SvgView {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ncu" => Ok(SvgView::Ncu),
            "discontinuity" => Ok(SvgView::Discontinuity),
            _ => Err(format!("unknown view `{s}`, expected `ncu` or `discontinuity`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeverityColors {
    pub none: String,
    pub moderate: String,
    pub high: String,
    pub severe: String,
}

impl SeverityColors {
    pub fn get(&self, class: SeverityClass) -> &str {
        match class {
            SeverityClass::None => &self.none,
            SeverityClass::Moderate => &self.moderate,
            SeverityClass::High => &self.high,
            SeverityClass::Severe => &self.severe,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthColors {
    pub critical: String,
    pub marginal: String,
    pub ok: String,
}

impl LengthColors {
    pub fn get(&self, class: LengthClass) -> &str {
        match class {
            LengthClass::Critical => &self.critical,
            LengthClass::Marginal => &self.marginal,
            LengthClass::Ok => &self.ok,
        }
    }
}

/// Sizes are in output pixels and stay constant whatever the path extent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvgStyle {
    pub severity: SeverityColors,
    pub length: LengthColors,
    /// Block colour in the discontinuity view.
    pub neutral: String,
    pub rapid: String,
    pub block_stroke_px: f64,
    pub rapid_stroke_px: f64,
    pub marker_radius_px: f64,
    /// Width of the longer side of the drawing.
    pub size_px: f64,
    /// Margin around the bounding box, as a fraction of its larger side.
    pub padding: f64,
    pub plane: Plane,
    pub legend: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            severity: SeverityColors {
                none: "#2e7d32".into(),
                moderate: "#f9a825".into(),
                high: "#ef6c00".into(),
                severe: "#c62828".into(),
            },
            length: LengthColors { critical: "#c62828".into(), marginal: "#f9a825".into(), ok: "#2e7d32".into() },
            neutral: "#546e7a".into(),
            rapid: "#b0bec5".into(),
            block_stroke_px: 2.0,
            rapid_stroke_px: 1.0,
            marker_radius_px: 5.0,
            size_px: 800.0,
            padding: 0.05,
            plane: Plane::Xy,
            legend: true,
        }
    }
}

fn is_hex_color(s: &str) -> bool {
    s.strip_prefix('#')
        .is_some_and(|h| (h.len() == 3 || h.len() == 6) && h.chars().all(|c| c.is_ascii_hexdigit()))
}

impl SvgStyle {
    pub fn validate(&self) -> Result<(), EmitError> {
        let sev = [&self.severity.none, &self.severity.moderate, &self.severity.high, &self.severity.severe];
        let all = sev
            .iter()
            .copied()
            .chain([&self.length.critical, &self.length.marginal, &self.length.ok, &self.neutral, &self.rapid]);
        for c in all {
            if !is_hex_color(c) {
                return Err(EmitError::Style(format!("colour `{c}` is not a hex string")));
            }
        }
        for (i, a) in sev.iter().enumerate() {
            if sev[i + 1..].iter().any(|b| a.eq_ignore_ascii_case(b)) {
                return Err(EmitError::Style(format!("severity colour {a} is used twice")));
            }
        }
        let sizes = [
            ("block_stroke_px", self.block_stroke_px),
            ("rapid_stroke_px", self.rapid_stroke_px),
            ("marker_radius_px", self.marker_radius_px),
            ("size_px", self.size_px),
        ];
        for (name, v) in sizes {
            if !(v.is_finite() && v > 0.0) {
                return Err(EmitError::Style(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.padding.is_finite() && self.padding >= 0.0) {
            return Err(EmitError::Style(format!("padding must be non-negative, got {}", self.padding)));
        }
        Ok(())
    }
}

/// Drawing-plane coordinates (u, v) with v up, and the view normal u × v.
fn axes(plane: Plane) -> (usize, usize, Point3) {
    match plane {
        Plane::Xy => (0, 1, Point3::new(0.0, 0.0, 1.0)),
        Plane::Xz => (0, 2, Point3::new(0.0, -1.0, 0.0)),
        Plane::Yz => (1, 2, Point3::new(1.0, 0.0, 0.0)),
    }
}

/// Fixed-point with trailing zeros removed; never prints `-0`.
fn n(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Projection {
    u: usize,
    v: usize,
    normal: Point3,
}

impl Projection {
    /// SVG user coordinates: y grows downward.
    fn xy(&self, p: Point3) -> (f64, f64) {
        let y = -p.axis(self.v);
        (p.axis(self.u), if y == 0.0 { 0.0 } else { y })
    }

    fn path_data(&self, block: &Block) -> String {
        let (sx, sy) = self.xy(block.start());
        let mut d = format!("M {} {}", n(sx), n(sy));
        match block.motion {
            Motion::Linear { end, .. } => {
                let (x, y) = self.xy(end);
                let _ = write!(d, " L {} {}", n(x), n(y));
            }
            Motion::Arc { plane, clockwise, .. } => {
                let facing = plane.normal().dot(self.normal);
                if facing.abs() < 0.5 {
                    // edge-on: the arc projects onto a line
                    for p in sample_block(block, 1e-3).into_iter().skip(1) {
                        let (x, y) = self.xy(p);
                        let _ = write!(d, " L {} {}", n(x), n(y));
                    }
                } else {
                    let ccw_in_view = (facing > 0.0) != clockwise;
                    // SVG sweep-flag 1 turns clockwise on screen
                    let flag = if ccw_in_view { 0 } else { 1 };
                    let r = n(block.radius().unwrap_or(0.0));
                    let sweep = block.sweep().unwrap_or(0.0);
                    let mut ends = Vec::new();
                    if sweep >= std::f64::consts::PI {
                        ends.push(block.point_at(0.5));
                    }
                    ends.push(block.end());
                    for p in ends {
                        let (x, y) = self.xy(p);
                        let _ = write!(d, " A {r} {r} 0 0 {flag} {} {}", n(x), n(y));
                    }
                }
            }
        }
        d
    }
}

/// Bounding box of the projected path, including arc extremes.
fn bounds(proj: &Projection, path: &ToolPath) -> Option<(f64, f64, f64, f64)> {
    let mut b: Option<(f64, f64, f64, f64)> = None;
    for block in path {
        for p in sample_block(block, 1e-4) {
            let (x, y) = proj.xy(p);
            b = Some(match b {
                None => (x, y, x, y),
                Some((x0, y0, x1, y1)) => (x0.min(x), y0.min(y), x1.max(x), y1.max(y)),
            });
        }
    }
    b
}

/// Renders the path in `style.plane` with one `<path>` per block and one
/// `<circle>` per junction record.
pub fn emit_svg(report: &Report, path: &ToolPath, style: &SvgStyle, view: SvgView) -> Result<String, EmitError> {
    style.validate()?;
    if report.blocks.len() != path.len() {
        return Err(EmitError::PathMismatch { report: report.blocks.len(), path: path.len() });
    }
    let (u, v, normal) = axes(style.plane);
    let proj = Projection { u, v, normal };

    let (x0, y0, x1, y1) = bounds(&proj, path).unwrap_or((0.0, 0.0, 0.0, 0.0));
    let extent = (x1 - x0).max(y1 - y0);
    let (vx, vy, vw, vh, px) = if extent < MIN_EXTENT {
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        (cx - 0.5, cy - 0.5, 1.0, 1.0, 1.0 / style.size_px)
    } else {
        let px = extent / style.size_px;
        let pad = style.padding * extent + 2.0 * style.marker_radius_px * px;
        let legend = if style.legend { 90.0 * px } else { 0.0 };
        (x0 - pad, y0 - pad - legend, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad + legend, px)
    };
    let (width, height) = (vw / px, vh / px);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        n(width.round()),
        n(height.round()),
        n(vx),
        n(vy),
        n(vw),
        n(vh)
    );
    let title = match view {
        SvgView::Ncu => "Block length against the minimal block length",
        SvgView::Discontinuity => "Feed reduction at path discontinuities",
    };
    let _ = writeln!(s, "<title>{title}</title>");

    let _ = writeln!(s, r#"<g id="blocks" fill="none" stroke-linecap="round" stroke-linejoin="round">"#);
    for (block, rec) in path.blocks().iter().zip(&report.blocks) {
        let (colour, width_px, label) = if block.rapid {
            (style.rapid.as_str(), style.rapid_stroke_px, "rapid".to_string())
        } else {
            let colour = match view {
                SvgView::Ncu => style.length.get(rec.length_class),
                SvgView::Discontinuity => style.neutral.as_str(),
            };
            let label = format!(
                "{}, length {} mm, L {} mm",
                rec.length_class.name(),
                n(rec.length),
                n(rec.min_length)
            );
            (colour, style.block_stroke_px, label)
        };
        let dash = if block.rapid { format!(r#" stroke-dasharray="{}""#, n(4.0 * px)) } else { String::new() };
        let _ = writeln!(
            s,
            r#"<path d="{}" stroke="{colour}" stroke-width="{}"{dash}><title>block {} line {}: {}</title></path>"#,
            proj.path_data(block),
            n(width_px * px),
            rec.index,
            rec.source_line,
            escape(&label)
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g id="junctions" stroke="#000000" stroke-width="{}">"##, n(0.5 * px));
    for j in &report.junctions {
        let (cx, cy) = proj.xy(j.location);
        let feed = if j.predicted_feed.is_finite() { format!("{} mm/s", n(j.predicted_feed)) } else { "unbounded".into() };
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{}"><title>junction {} line {}: {} {}, predicted {feed}, {}% reduction</title></circle>"#,
            n(cx),
            n(cy),
            n(style.marker_radius_px * px),
            style.severity.get(j.severity),
            j.index,
            j.source_line,
            j.severity.name(),
            j.kind.name(),
            n((j.reduction_pct * 10.0).round() / 10.0)
        );
    }
    let _ = writeln!(s, "</g>");

    if style.legend && extent >= MIN_EXTENT {
        legend(&mut s, report, style, view, vx, vy, px);
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

fn legend(s: &mut String, report: &Report, style: &SvgStyle, view: SvgView, vx: f64, vy: f64, px: f64) {
    let entries: Vec<(String, &str)> = match view {
        SvgView::Ncu => [LengthClass::Critical, LengthClass::Marginal, LengthClass::Ok]
            .into_iter()
            .map(|c| {
                let count = match c {
                    LengthClass::Critical => report.histograms.length.critical,
                    LengthClass::Marginal => report.histograms.length.marginal,
                    LengthClass::Ok => report.histograms.length.ok,
                };
                (format!("{} blocks: {count}", c.name()), style.length.get(c))
            })
            .collect(),
        SvgView::Discontinuity => SeverityClass::ALL
            .into_iter()
            .map(|c| (format!("{}: {}", c.name(), report.histograms.severity.get(c)), style.severity.get(c)))
            .collect(),
    };
    let _ = writeln!(s, r#"<g id="legend" font-family="sans-serif" font-size="{}">"#, n(12.0 * px));
    for (i, (text, colour)) in entries.iter().enumerate() {
        let y = vy + (10.0 + 18.0 * i as f64) * px;
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{colour}"/><text x="{}" y="{}">{}</text>"#,
            n(vx + 10.0 * px),
            n(y),
            n(12.0 * px),
            n(12.0 * px),
            n(vx + 28.0 * px),
            n(y + 10.0 * px),
            escape(text)
        );
    }
    let _ = writeln!(s, "</g>");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(n(1.5), "1.5");
        assert_eq!(n(-0.0000001), "0");
        assert_eq!(n(10.0), "10");
        assert_eq!(n(-2.25), "-2.25");
    }

    #[test]
    fn default_style_is_valid() {
        SvgStyle::default().validate().unwrap();
    }

    #[test]
    fn duplicate_severity_colour_rejected() {
        let mut st = SvgStyle::default();
        st.severity.high = st.severity.severe.to_uppercase();
        assert!(st.validate().is_err());
        let st = SvgStyle { neutral: "grey".into(), ..SvgStyle::default() };
        assert!(st.validate().is_err());
    }

    #[test]
    fn view_parse() {
        assert_eq!("NCU".parse::<SvgView>().unwrap(), SvgView::Ncu);
        assert!("other".parse::<SvgView>().is_err());
    }
}
