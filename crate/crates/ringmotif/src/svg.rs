//! Deterministic SVG output: matrix view, Ring Motif view and precision bar.

use std::fmt::Write as _;

use ringmotif_core::geom::Vec2;
use ringmotif_core::layout::{boundary_map, palette_color, Glyph, GlyphShape, Layout};
use ringmotif_core::patterns::{Pattern, PatternKind};
use ringmotif_core::select::PrecisionCounts;
use ringmotif_core::AdjacencyMatrix;

use crate::error::{Error, Result};

pub const LIGHT_GRAY: &str = "#D3D3D3";
pub const DARK_GRAY: &str = "#555555";
pub const RED: &str = "#D62728";
pub const LINK_GRAY: &str = "#888888";
const OUTLINE: &str = "#333333";
const GRID: &str = "#E6E6E6";

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    /// Pixels per matrix cell.
    pub cell_px: f64,
    /// Pixels per layout unit in the motif view.
    pub scale: f64,
    pub show_labels: bool,
    pub link_opacity: f64,
    /// Fill opacity of pattern rectangles in the matrix view.
    pub overlay_opacity: f64,
    pub stroke_px: f64,
    pub attachment_stroke_px: f64,
    pub font_px: f64,
    pub bar_width: f64,
    pub bar_height: f64,
    pub margin: f64,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            cell_px: 10.0,
            scale: 12.0,
            show_labels: true,
            link_opacity: 0.5,
            overlay_opacity: 0.3,
            stroke_px: 1.0,
            attachment_stroke_px: 3.0,
            font_px: 9.0,
            bar_width: 24.0,
            bar_height: 240.0,
            margin: 12.0,
        }
    }
}

impl RenderConfig {
    pub fn validate(self) -> Result<Self> {
        let sizes = [
            self.cell_px,
            self.scale,
            self.stroke_px,
            self.attachment_stroke_px,
            self.font_px,
            self.bar_width,
            self.bar_height,
        ];
        if sizes.iter().any(|x| !(x.is_finite() && *x > 0.0)) || self.margin.is_nan() || self.margin < 0.0 {
            return Err(Error::Config("render sizes must be positive".into()));
        }
        for o in [self.link_opacity, self.overlay_opacity] {
            if !(o > 0.0 && o <= 1.0) {
                return Err(Error::Config("opacity must lie in (0, 1]".into()));
            }
        }
        Ok(self)
    }
}

/// Fixed six-decimal formatting; negative zero prints as zero.
pub fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// An SVG body with its pixel size, embeddable in a composite.
#[derive(Debug, Clone, PartialEq)]
pub struct Svg {
    pub width: f64,
    pub height: f64,
    pub body: String,
    /// Extra attributes on the root element.
    pub root_attrs: String,
}

impl Svg {
    pub fn document(&self) -> String {
        let (w, h) = (num(self.width), num(self.height));
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\"{}>\n{}</svg>\n",
            self.root_attrs, self.body
        )
    }
}

fn label_margin(labels: &[String], font_px: f64) -> f64 {
    let longest = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    longest as f64 * font_px * 0.6 + 4.0
}

/// Matrix cells with pattern rectangles. `labels[i]` names row and column
/// `i`; bicliques and stars are drawn together with their mirror.
pub fn render_matrix(m: &AdjacencyMatrix, labels: &[String], patterns: &[Pattern], cfg: &RenderConfig) -> Svg {
    let n = m.n();
    let c = cfg.cell_px;
    let font = (c * 0.8).max(1.0);
    let off = cfg.margin + if cfg.show_labels { label_margin(labels, font) } else { 0.0 };
    let side = n as f64 * c;
    let size = off + side + cfg.margin;
    let mut b = String::new();
    let _ = writeln!(b, "<rect class=\"background\" x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"#FFFFFF\"/>", num(size));
    let mut grid = String::new();
    for k in 0..=n {
        let t = num(off + k as f64 * c);
        let _ = write!(grid, "M{} {}H{}M{} {}V{}", num(off), t, num(off + side), t, num(off), num(off + side));
    }
    let _ = writeln!(b, "<path class=\"grid\" d=\"{grid}\" fill=\"none\" stroke=\"{GRID}\" stroke-width=\"{}\"/>", num(cfg.stroke_px * 0.5));
    b.push_str("<g class=\"cells\" fill=\"#000000\">\n");
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j) {
                let _ = writeln!(
                    b,
                    "<rect x=\"{}\" y=\"{}\" width=\"{2}\" height=\"{2}\"/>",
                    num(off + j as f64 * c),
                    num(off + i as f64 * c),
                    num(c)
                );
            }
        }
    }
    b.push_str("</g>\n<g class=\"patterns\">\n");
    for (k, p) in patterns.iter().enumerate() {
        let color = palette_color(k);
        let mut rect = |rows: (usize, usize), cols: (usize, usize)| {
            let _ = writeln!(
                b,
                "<rect class=\"pattern\" data-pattern=\"{k}\" data-kind=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" \
                 fill=\"{color}\" fill-opacity=\"{}\" stroke=\"{color}\" stroke-width=\"{}\"/>",
                p.kind(),
                num(off + cols.0 as f64 * c),
                num(off + rows.0 as f64 * c),
                num((cols.1 - cols.0 + 1) as f64 * c),
                num((rows.1 - rows.0 + 1) as f64 * c),
                num(cfg.overlay_opacity),
                num(cfg.stroke_px * 1.5)
            );
        };
        let (r, cs) = (p.rows(), p.cols());
        rect((r.start, r.end), (cs.start, cs.end));
        if p.kind() != PatternKind::Clique {
            rect((cs.start, cs.end), (r.start, r.end));
        }
    }
    b.push_str("</g>\n");
    if cfg.show_labels && n > 0 {
        let _ = writeln!(b, "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"{}\" fill=\"#000000\">", num(font));
        for (i, l) in labels.iter().enumerate().take(n) {
            let mid = num(off + (i as f64 + 0.5) * c);
            let _ = writeln!(
                b,
                "<text x=\"{}\" y=\"{mid}\" text-anchor=\"end\" dominant-baseline=\"central\">{}</text>",
                num(off - 2.0),
                escape(l)
            );
            let _ = writeln!(
                b,
                "<text transform=\"translate({mid} {}) rotate(-90)\" text-anchor=\"start\" dominant-baseline=\"central\">{}</text>",
                num(off - 2.0),
                escape(l)
            );
        }
        b.push_str("</g>\n");
    }
    Svg { width: size, height: size, body: b, root_attrs: String::new() }
}

/// Segment heights top to bottom: white outside, white inside (noise),
/// black inside (explained) and black outside (unexplained).
pub fn precision_bar_heights(p: &PrecisionCounts, height: f64) -> [f64; 4] {
    let total = p.total() as f64;
    [p.white_out, p.white_in, p.black_in, p.black_out].map(|c| if total > 0.0 { c as f64 / total * height } else { 0.0 })
}

/// Stacked four-segment bar with its top-left corner at the origin. Empty
/// when there are no cells to classify.
pub fn render_precision_bar(p: &PrecisionCounts, cfg: &RenderConfig) -> String {
    if p.total() == 0 {
        return String::new();
    }
    let heights = precision_bar_heights(p, cfg.bar_height);
    let counts = [p.white_out, p.white_in, p.black_in, p.black_out];
    let names = ["white-out", "white-in", "black-in", "black-out"];
    let colors = ["#FFFFFF", LIGHT_GRAY, DARK_GRAY, RED];
    let mut b = String::from("<g class=\"precision-bar\">\n");
    let mut y = 0.0;
    for k in 0..4 {
        let _ = writeln!(
            b,
            "<rect class=\"bar-segment\" data-segment=\"{}\" data-count=\"{}\" x=\"0.000000\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
            names[k],
            counts[k],
            num(y),
            num(cfg.bar_width),
            num(heights[k]),
            colors[k]
        );
        y += heights[k];
    }
    let _ = writeln!(
        b,
        "<rect class=\"bar-frame\" x=\"0.000000\" y=\"0.000000\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"{DARK_GRAY}\" stroke-width=\"{}\"/>",
        num(cfg.bar_width),
        num(cfg.bar_height),
        num(cfg.stroke_px)
    );
    b.push_str("</g>\n");
    b
}

/// The bar as a standalone document.
pub fn render_precision_bar_svg(p: &PrecisionCounts, cfg: &RenderConfig) -> Svg {
    let fragment = render_precision_bar(p, cfg);
    let m = cfg.margin;
    let body = if fragment.is_empty() {
        String::new()
    } else {
        format!("<g transform=\"translate({0} {0})\">\n{fragment}</g>\n", num(m))
    };
    Svg { width: cfg.bar_width + 2.0 * m, height: cfg.bar_height + 2.0 * m, body, root_attrs: String::new() }
}

struct View {
    min: Vec2,
    scale: f64,
    pad: f64,
}

impl View {
    fn px(&self, p: Vec2) -> (f64, f64) {
        ((p.x - self.min.x) * self.scale + self.pad, (p.y - self.min.y) * self.scale + self.pad)
    }

    fn pt(&self, p: Vec2) -> String {
        let (x, y) = self.px(p);
        format!("{} {}", num(x), num(y))
    }
}

fn circle_contour(v: &View, c: Vec2, r: f64) -> String {
    let rp = num(r * v.scale);
    let right = v.pt(c + Vec2::new(r, 0.0));
    let left = v.pt(c - Vec2::new(r, 0.0));
    format!("M{right}A{rp} {rp} 0 1 0 {left}A{rp} {rp} 0 1 0 {right}Z")
}

fn polygon_contour(v: &View, pts: &[Vec2]) -> String {
    let mut d = String::new();
    for (k, p) in pts.iter().enumerate() {
        d.push(if k == 0 { 'M' } else { 'L' });
        d.push_str(&v.pt(*p));
    }
    d.push('Z');
    d
}

/// Even-odd path of the glyph's coloured region; a full shape has no hole
/// contour.
fn glyph_path(v: &View, g: &Glyph) -> String {
    match g.shape {
        GlyphShape::Annulus { outer_r, inner_r } => {
            let mut d = circle_contour(v, g.center, outer_r);
            if inner_r > 0.0 {
                d.push_str(&circle_contour(v, g.center, inner_r));
            }
            d
        }
        GlyphShape::DiamondAnnulus { inner_side, .. } => {
            let mut d = polygon_contour(v, &g.diamond_corners(false));
            if inner_side > 0.0 {
                d.push_str(&polygon_contour(v, &g.diamond_corners(true)));
            }
            d
        }
    }
}

fn attachment_path(v: &View, g: &Glyph, (u0, u1): (f64, f64)) -> String {
    match g.shape {
        GlyphShape::Annulus { outer_r, .. } if u1 - u0 >= 1.0 - 1e-12 => circle_contour(v, g.center, outer_r),
        GlyphShape::Annulus { outer_r, .. } => {
            let rp = num(outer_r * v.scale);
            let large = if u1 - u0 > 0.5 { 1 } else { 0 };
            format!(
                "M{}A{rp} {rp} 0 {large} 1 {}",
                v.pt(g.boundary_point(u0)),
                v.pt(g.boundary_point(u1))
            )
        }
        GlyphShape::DiamondAnnulus { .. } => {
            let mut d = String::new();
            for (k, p) in g.boundary_polyline(u0, u1, 0).into_iter().enumerate() {
                d.push(if k == 0 { 'M' } else { 'L' });
                d.push_str(&v.pt(p));
            }
            d
        }
    }
}

/// Ring Motif view of a laid-out decomposition. Links are drawn first so
/// glyphs cover them; `labels[i]` names matrix position `i`.
pub fn render_motifs(layout: &Layout, labels: &[String], cfg: &RenderConfig) -> Svg {
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut extend = |p: Vec2, r: f64| {
        lo = Vec2::new(lo.x.min(p.x - r), lo.y.min(p.y - r));
        hi = Vec2::new(hi.x.max(p.x + r), hi.y.max(p.y + r));
    };
    for g in &layout.glyphs {
        extend(g.center, g.radius());
    }
    for l in &layout.links {
        for p in l.polygon(&layout.glyphs) {
            extend(p, 0.0);
        }
    }
    if layout.glyphs.is_empty() {
        lo = Vec2::ZERO;
        hi = Vec2::ZERO;
    }
    let pad = cfg.margin + if cfg.show_labels { label_margin(labels, cfg.font_px) } else { 0.0 };
    let v = View { min: lo, scale: cfg.scale, pad };
    let width = (hi.x - lo.x) * cfg.scale + 2.0 * pad;
    let height = (hi.y - lo.y) * cfg.scale + 2.0 * pad;

    let mut b = String::new();
    let _ = writeln!(
        b,
        "<rect class=\"background\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#FFFFFF\"/>",
        num(width),
        num(height)
    );
    b.push_str("<g class=\"links\">\n");
    for l in &layout.links {
        let _ = writeln!(
            b,
            "<path class=\"link\" data-clique=\"{}\" data-rect=\"{}\" d=\"{}\" fill=\"{LINK_GRAY}\" fill-opacity=\"{}\"/>",
            l.clique,
            l.rect,
            polygon_contour(&v, &l.polygon(&layout.glyphs)),
            num(cfg.link_opacity)
        );
    }
    b.push_str("</g>\n<g class=\"glyphs\">\n");
    for (k, g) in layout.glyphs.iter().enumerate() {
        let _ = writeln!(
            b,
            "<path class=\"glyph\" data-pattern=\"{k}\" data-kind=\"{}\" d=\"{}\" fill=\"{}\" fill-rule=\"evenodd\" stroke=\"{OUTLINE}\" stroke-width=\"{}\"/>",
            g.kind(),
            glyph_path(&v, g),
            g.color,
            num(cfg.stroke_px)
        );
    }
    b.push_str("</g>\n<g class=\"attachments\" fill=\"none\">\n");
    for l in &layout.links {
        for (gi, range) in [(l.clique, l.clique_range), (l.rect, l.rect_range)] {
            let _ = writeln!(
                b,
                "<path class=\"attachment\" data-pattern=\"{gi}\" d=\"{}\" stroke=\"{OUTLINE}\" stroke-width=\"{}\"/>",
                attachment_path(&v, &layout.glyphs[gi], range),
                num(cfg.attachment_stroke_px)
            );
        }
    }
    b.push_str("</g>\n");
    if cfg.show_labels && !layout.glyphs.is_empty() {
        let _ = writeln!(
            b,
            "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"{}\" fill=\"#000000\">",
            num(cfg.font_px)
        );
        for g in &layout.glyphs {
            for s in boundary_map(g) {
                let p = g.boundary_point((s.start + s.end) / 2.0);
                let dir = p - g.center;
                let len = dir.length();
                let (x, y) = v.px(p);
                let push = cfg.font_px * 0.8;
                let (x, y) = if len > 0.0 { (x + dir.x / len * push, y + dir.y / len * push) } else { (x, y) };
                let name = labels.get(s.vertex).map(String::as_str).unwrap_or("");
                let _ = writeln!(
                    b,
                    "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\">{}</text>",
                    num(x),
                    num(y),
                    escape(name)
                );
            }
        }
        b.push_str("</g>\n");
    }
    let root_attrs = format!(" data-scale=\"{}\"", num(cfg.scale));
    Svg { width, height, body: b, root_attrs }
}

/// Side-by-side panels: input matrix, reordered matrix with overlays and
/// precision bar, motif view.
pub fn composite(input: &Svg, reordered: &Svg, bar: &str, motifs: &Svg, cfg: &RenderConfig) -> Svg {
    let gap = cfg.margin.max(1.0) * 2.0;
    let mut b = String::new();
    let mut x = 0.0;
    let mut height: f64 = 0.0;
    let mut panel = |b: &mut String, x: &mut f64, y: f64, w: f64, h: f64, name: &str, body: &str| {
        let _ = writeln!(b, "<g class=\"panel\" data-panel=\"{name}\" transform=\"translate({} {})\">", num(*x), num(y));
        b.push_str(body);
        b.push_str("</g>\n");
        *x += w + gap;
        height = height.max(y + h);
    };
    panel(&mut b, &mut x, 0.0, input.width, input.height, "input", &input.body);
    panel(&mut b, &mut x, 0.0, reordered.width, reordered.height, "reordered", &reordered.body);
    if !bar.is_empty() {
        x -= gap / 2.0;
        panel(&mut b, &mut x, cfg.margin, cfg.bar_width, cfg.bar_height, "precision", bar);
    }
    panel(&mut b, &mut x, 0.0, motifs.width, motifs.height, "motifs", &motifs.body);
    let width = x - gap;
    let mut body = format!(
        "<rect class=\"background\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#FFFFFF\"/>\n",
        num(width),
        num(height)
    );
    body.push_str(&b);
    Svg { width, height, body, root_attrs: String::new() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ringmotif_core::patterns::{PrefixTables, Shape, Span};
    use ringmotif_core::{materialize, Graph, Ordering};

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1.000000");
        assert_eq!(num(-1e-9), "0.000000");
        assert_eq!(num(2.0 / 3.0), "0.666667");
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b&\"c\""), "a&lt;b&amp;&quot;c&quot;");
    }

    #[test]
    fn matrix_pattern_rect_counts() {
        let g = Graph::with_numeric_labels(8, [(0, 1), (0, 2), (1, 2), (3, 5), (3, 6), (4, 5), (4, 6)]).unwrap();
        let m = materialize(&g, &Ordering::identity(8)).unwrap();
        let t = PrefixTables::new(&m);
        let clique = Pattern::measure(&t, Shape::clique(0, 2));
        let bic = Pattern::measure(&t, Shape::biclique(Span::new(3, 4), Span::new(5, 6)));
        let count = |ps: &[Pattern]| render_matrix(&m, &labels(8), ps, &RenderConfig::default()).body.matches("class=\"pattern\"").count();
        assert_eq!(count(&[clique]), 1);
        assert_eq!(count(&[bic]), 2);
        assert_eq!(count(&[clique, bic]), 3);
        let cells = render_matrix(&m, &labels(8), &[], &RenderConfig::default()).body;
        assert_eq!(cells.matches("<rect x=").count(), 14);
    }

    #[test]
    fn bar_segments_in_fixed_order() {
        let p = PrecisionCounts { white_out: 10, white_in: 2, black_in: 6, black_out: 2 };
        let frag = render_precision_bar(&p, &RenderConfig::default());
        let order: Vec<usize> = ["white-out", "white-in", "black-in", "black-out"]
            .iter()
            .map(|s| frag.find(s).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        let h = precision_bar_heights(&p, 200.0);
        assert_eq!(h, [100.0, 20.0, 60.0, 20.0]);
        assert!(render_precision_bar(&PrecisionCounts::default(), &RenderConfig::default()).is_empty());
    }

    #[test]
    fn solid_disk_has_one_contour() {
        let g = Graph::with_numeric_labels(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let m = materialize(&g, &Ordering::identity(4)).unwrap();
        let p = Pattern::measure(&PrefixTables::new(&m), Shape::clique(0, 3));
        let layout = Layout::new(&[p]);
        let svg = render_motifs(&layout, &labels(4), &RenderConfig::default());
        let glyph = svg.body.lines().find(|l| l.contains("class=\"glyph\"")).unwrap();
        assert_eq!(glyph.matches('M').count(), 1);
    }

    #[test]
    fn config_validation() {
        assert!(RenderConfig::default().validate().is_ok());
        assert!(RenderConfig { link_opacity: 1.5, ..Default::default() }.validate().is_err());
        assert!(RenderConfig { cell_px: 0.0, ..Default::default() }.validate().is_err());
    }
}
