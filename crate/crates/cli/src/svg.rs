//! SVG rendering of a drawing.

use std::fmt::Write;

use totres::graph::{Graph, Layout};
use totres::metrics::{to_degrees_rounded, ResolutionReport};

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    /// Width of the image in pixels; the height follows the aspect ratio.
    pub width_px: f64,
    /// Node radius as a fraction of the drawing's larger side.
    pub node_radius: f64,
    pub edge_color: String,
    pub node_color: String,
    /// Print the resolution line under the drawing.
    pub annotate: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            width_px: 800.0,
            node_radius: 0.008,
            edge_color: "#3b4b5c".into(),
            node_color: "#c0392b".into(),
            annotate: true,
        }
    }
}

fn num(v: f64) -> String {
    // Fixed precision keeps the output stable and free of exponents.
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn deg_text(v: Option<f64>) -> String {
    match v {
        Some(r) => format!("{}°", to_degrees_rounded(r)),
        None => "none".into(),
    }
}

/// Caption in the style "angular resolution 30° and crossing resolution 60°".
pub fn caption(report: &ResolutionReport) -> String {
    format!(
        "angular resolution {} and crossing resolution {} (total {})",
        deg_text(report.angular),
        deg_text(report.crossing),
        deg_text(report.total)
    )
}

/// Render `l` as an SVG document. Edges become `line` elements, nodes
/// `circle` elements; the y axis points up.
pub fn render_svg(g: &Graph, l: &Layout, report: &ResolutionReport, style: &SvgStyle) -> String {
    let mut out = String::new();
    let Some((lo, hi)) = l.bounding_box() else {
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1" width="{}" height="{}"></svg>"#,
            num(style.width_px),
            num(style.width_px)
        );
        return out;
    };
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let span = if w.max(h) > 0.0 { w.max(h) } else { 1.0 };
    let margin = 0.05 * span;
    let band = if style.annotate { 0.06 * span } else { 0.0 };
    let vb_x = lo.x - margin;
    let vb_y = -hi.y - margin;
    let vb_w = w + 2.0 * margin;
    let vb_h = h + 2.0 * margin + band;
    let height_px = style.width_px * vb_h / vb_w;

    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        num(vb_x),
        num(vb_y),
        num(vb_w),
        num(vb_h),
        num(style.width_px),
        num(height_px)
    );
    let _ = writeln!(
        out,
        r#"<g stroke="{}" stroke-width="1" vector-effect="non-scaling-stroke">"#,
        style.edge_color
    );
    for &(u, v) in g.edges() {
        let (a, b) = (l.positions[u], l.positions[v]);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" vector-effect="non-scaling-stroke"/>"#,
            num(a.x),
            num(-a.y),
            num(b.x),
            num(-b.y)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="{}">"#, style.node_color);
    let r = style.node_radius * span;
    for (i, p) in l.positions.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}"><title>{}</title></circle>"#,
            num(p.x),
            num(-p.y),
            num(r),
            escape(g.id(i))
        );
    }
    let _ = writeln!(out, "</g>");
    if style.annotate {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="{}" font-family="sans-serif">{}</text>"#,
            num(vb_x + 0.5 * margin),
            num(vb_y + vb_h - 0.3 * band),
            num(0.4 * band),
            escape(&caption(report))
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use totres::metrics::total_resolution;
    use totres::Point2;

    #[test]
    fn single_edge_has_one_line_two_circles() {
        let g = Graph::from_indexed_edges(2, [(0, 1)]).unwrap();
        let l = Layout::new(vec![Point2::new(0.0, 0.0), Point2::new(3.0, 1.0)]);
        let svg = render_svg(&g, &l, &total_resolution(&g, &l), &SvgStyle::default());
        assert_eq!(svg.matches("<line ").count(), 1);
        assert_eq!(svg.matches("<circle ").count(), 2);
        assert!(svg.contains("angular resolution none"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_graph_is_an_empty_document() {
        let g = Graph::from_indexed_edges(0, []).unwrap();
        let l = Layout::new(vec![]);
        let svg = render_svg(&g, &l, &total_resolution(&g, &l), &SvgStyle::default());
        assert!(svg.starts_with("<svg "));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("<line") && !svg.contains("<circle"));
    }

    #[test]
    fn y_axis_is_flipped() {
        let g = Graph::from_indexed_edges(2, [(0, 1)]).unwrap();
        let l = Layout::new(vec![Point2::new(0.0, 0.0), Point2::new(0.0, 2.0)]);
        let svg = render_svg(&g, &l, &total_resolution(&g, &l), &SvgStyle::default());
        assert!(svg.contains(r#"y2="-2.000000""#));
        assert!(svg.contains(r#"viewBox="-0.100000 -2.100000 0.200000 2.320000""#));
    }
}
