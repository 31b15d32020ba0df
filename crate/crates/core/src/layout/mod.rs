//! Ring Motif glyphs, their vertex boundaries, links between them, and the
//! force-based layout that places them.
//!
//! Coordinates are matrix units: one unit per matrix cell, `x` along
//! columns and `y` along rows (pointing down, as in the rendered matrix).

mod forces;

pub use forces::{
    attraction_force, gravity_pull, repulsion_force, rotational_force, ForceParams, RunReport,
    StopReason,
};

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::geom::Vec2;
use crate::patterns::{Pattern, PatternKind};

/// Categorical colours assigned to patterns in selection order.
pub const PALETTE: [&str; 12] = [
    "#1F77B4", "#FF7F0E", "#2CA02C", "#9467BD", "#8C564B", "#E377C2",
    "#17BECF", "#BCBD22", "#AEC7E8", "#FFBB78", "#98DF8A", "#C5B0D5",
];

pub fn palette_color(index: usize) -> &'static str {
    PALETTE[index % PALETTE.len()]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GlyphShape {
    /// Disk with a centred circular hole.
    Annulus { outer_r: f64, inner_r: f64 },
    /// Square rotated to stand on a corner, with a centred square hole.
    DiamondAnnulus { outer_side: f64, inner_side: f64 },
}

impl GlyphShape {
    pub fn for_pattern(p: &Pattern) -> Self {
        let (total, white) = (p.cells_total as f64, p.cells_white() as f64);
        match p.kind() {
            PatternKind::Clique => GlyphShape::Annulus {
                outer_r: libm::sqrt(total / PI),
                inner_r: libm::sqrt(white / PI),
            },
            _ => GlyphShape::DiamondAnnulus {
                outer_side: libm::sqrt(total),
                inner_side: libm::sqrt(white),
            },
        }
    }

    /// Radius used for repulsion and force scaling: the outer radius of an
    /// annulus, the circumradius of a diamond.
    pub fn radius(&self) -> f64 {
        match *self {
            GlyphShape::Annulus { outer_r, .. } => outer_r,
            GlyphShape::DiamondAnnulus { outer_side, .. } => outer_side / core::f64::consts::SQRT_2,
        }
    }

    pub fn outer_area(&self) -> f64 {
        match *self {
            GlyphShape::Annulus { outer_r, .. } => PI * outer_r * outer_r,
            GlyphShape::DiamondAnnulus { outer_side, .. } => outer_side * outer_side,
        }
    }

    pub fn hole_area(&self) -> f64 {
        match *self {
            GlyphShape::Annulus { inner_r, .. } => PI * inner_r * inner_r,
            GlyphShape::DiamondAnnulus { inner_side, .. } => inner_side * inner_side,
        }
    }

    pub fn colored_area(&self) -> f64 {
        self.outer_area() - self.hole_area()
    }
}

/// A vertex's share of a glyph boundary, as fractions of one trip around
/// the boundary starting at the glyph's rotation angle. `end` may exceed 1
/// when the segment wraps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySegment {
    pub vertex: usize,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Glyph {
    pub pattern: Pattern,
    pub shape: GlyphShape,
    pub center: Vec2,
    pub rotation: f64,
    pub start: Vec2,
    pub color: &'static str,
}

impl Glyph {
    pub fn new(pattern: Pattern, color: &'static str) -> Self {
        let (r, c) = (pattern.rows(), pattern.cols());
        let start = Vec2::new(
            (c.start + c.end + 1) as f64 / 2.0,
            (r.start + r.end + 1) as f64 / 2.0,
        );
        Glyph {
            pattern,
            shape: GlyphShape::for_pattern(&pattern),
            center: start,
            rotation: 0.0,
            start,
            color,
        }
    }

    pub fn kind(&self) -> PatternKind {
        self.pattern.kind()
    }

    pub fn is_clique(&self) -> bool {
        self.kind() == PatternKind::Clique
    }

    pub fn radius(&self) -> f64 {
        self.shape.radius()
    }

    /// Corners of the outer diamond (or of the hole, with `inner`), at
    /// angles `rotation + q * pi / 2`.
    pub fn diamond_corners(&self, inner: bool) -> [Vec2; 4] {
        let side = match self.shape {
            GlyphShape::DiamondAnnulus { outer_side, inner_side } => {
                if inner { inner_side } else { outer_side }
            }
            GlyphShape::Annulus { outer_r, inner_r } => {
                let r = if inner { inner_r } else { outer_r };
                r * core::f64::consts::SQRT_2
            }
        };
        let rho = side / core::f64::consts::SQRT_2;
        core::array::from_fn(|q| self.center + Vec2::from_angle(self.rotation + q as f64 * PI / 2.0) * rho)
    }

    /// Point at boundary fraction `u` (taken modulo 1).
    pub fn boundary_point(&self, u: f64) -> Vec2 {
        let u = u.rem_euclid(1.0);
        match self.shape {
            GlyphShape::Annulus { outer_r, .. } => {
                self.center + Vec2::from_angle(self.rotation + TAU * u) * outer_r
            }
            GlyphShape::DiamondAnnulus { .. } => {
                let corners = self.diamond_corners(false);
                let t = u * 4.0;
                let q = (libm::floor(t) as usize).min(3);
                let f = t - q as f64;
                corners[q] * (1.0 - f) + corners[(q + 1) % 4] * f
            }
        }
    }

    /// Boundary from fraction `u0` to `u1 >= u0` as a polyline. Diamond
    /// corners inside the range are included; arcs are sampled with
    /// `per_turn` points per full circle.
    pub fn boundary_polyline(&self, u0: f64, u1: f64, per_turn: usize) -> Vec<Vec2> {
        let mut params = alloc::vec![u0];
        match self.shape {
            GlyphShape::Annulus { .. } => {
                let steps = libm::ceil((u1 - u0) * per_turn as f64).max(1.0) as usize;
                params.extend((1..steps).map(|s| u0 + (u1 - u0) * s as f64 / steps as f64));
            }
            GlyphShape::DiamondAnnulus { .. } => {
                let mut corner = libm::floor(u0 * 4.0) + 1.0;
                while corner / 4.0 < u1 {
                    params.push(corner / 4.0);
                    corner += 1.0;
                }
            }
        }
        params.push(u1);
        params.into_iter().map(|u| self.boundary_point(u)).collect()
    }

    /// Angle the boundary range `u0..=u1` spans around the centre.
    pub fn central_angle(&self, u0: f64, u1: f64) -> f64 {
        let span = u1 - u0;
        if span >= 1.0 - 1e-12 {
            return TAU;
        }
        match self.shape {
            GlyphShape::Annulus { .. } => TAU * span,
            GlyphShape::DiamondAnnulus { .. } => {
                let a = (self.boundary_point(u0) - self.center).angle();
                let b = (self.boundary_point(u1) - self.center).angle();
                (b - a).rem_euclid(TAU)
            }
        }
    }
}

/// Vertex segments of a glyph. A clique's vertices split the circle into
/// equal arcs; a biclique's rows share one half of the diamond (two sides)
/// and its columns the opposite half, each in index order.
pub fn boundary_map(g: &Glyph) -> Vec<BoundarySegment> {
    let (rows, cols) = (g.pattern.rows(), g.pattern.cols());
    let spread = |vertices: core::ops::RangeInclusive<usize>, from: f64, width: f64| {
        let k = vertices.clone().count() as f64;
        vertices.enumerate().map(move |(t, vertex)| BoundarySegment {
            vertex,
            start: from + width * t as f64 / k,
            end: from + width * (t + 1) as f64 / k,
        })
    };
    if g.is_clique() {
        spread(rows.iter(), 0.0, 1.0).collect()
    } else {
        spread(rows.iter(), 0.25, 0.5).chain(spread(cols.iter(), 0.75, 0.5)).collect()
    }
}

/// Shared vertices between a clique glyph and a biclique or star glyph.
#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub clique: usize,
    pub rect: usize,
    pub shared: Vec<usize>,
    /// Boundary range covered by the shared vertices on the clique glyph.
    pub clique_range: (f64, f64),
    /// Same on the biclique or star glyph.
    pub rect_range: (f64, f64),
}

fn attachment(segments: &[BoundarySegment], shared: &[usize]) -> (f64, f64) {
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    for s in segments.iter().filter(|s| shared.binary_search(&s.vertex).is_ok()) {
        range.0 = range.0.min(s.start);
        range.1 = range.1.max(s.end);
    }
    range
}

/// One link per clique and biclique/star pair sharing at least one vertex.
/// Bicliques and stars are never linked to each other.
pub fn build_links(glyphs: &[Glyph]) -> Vec<Link> {
    let maps: Vec<Vec<BoundarySegment>> = glyphs.iter().map(boundary_map).collect();
    let mut links = Vec::new();
    for (ci, c) in glyphs.iter().enumerate().filter(|(_, g)| g.is_clique()) {
        for (ri, r) in glyphs.iter().enumerate().filter(|(_, g)| !g.is_clique()) {
            let clique_span = c.pattern.rows();
            let mut shared: Vec<usize> = r
                .pattern
                .shape
                .vertices()
                .into_iter()
                .filter(|&v| clique_span.contains(v))
                .collect();
            if shared.is_empty() {
                continue;
            }
            shared.sort_unstable();
            links.push(Link {
                clique: ci,
                rect: ri,
                clique_range: attachment(&maps[ci], &shared),
                rect_range: attachment(&maps[ri], &shared),
                shared,
            });
        }
    }
    links
}

fn segments_cross(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> bool {
    let d1 = (p2 - p1).cross(q1 - p1);
    let d2 = (p2 - p1).cross(q2 - p1);
    let d3 = (q2 - q1).cross(p1 - q1);
    let d4 = (q2 - q1).cross(p2 - q1);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

impl Link {
    /// Quadrilateral spanned by the two attachment ranges' endpoints, in an
    /// order that does not self-intersect.
    pub fn polygon(&self, glyphs: &[Glyph]) -> [Vec2; 4] {
        let (c, r) = (&glyphs[self.clique], &glyphs[self.rect]);
        let a1 = c.boundary_point(self.clique_range.0);
        let b1 = c.boundary_point(self.clique_range.1);
        let a2 = r.boundary_point(self.rect_range.0);
        let b2 = r.boundary_point(self.rect_range.1);
        if segments_cross(b1, b2, a2, a1) {
            [a1, b1, a2, b2]
        } else {
            [a1, b1, b2, a2]
        }
    }

    pub fn centroid(&self, glyphs: &[Glyph]) -> Vec2 {
        let [a, b, c, d] = self.polygon(glyphs);
        (a + b + c + d) / 4.0
    }
}

/// Glyphs, links and the link-connected components used by gravity.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub glyphs: Vec<Glyph>,
    pub links: Vec<Link>,
    /// Component id per glyph, connecting glyphs through links.
    pub components: Vec<usize>,
}

impl Layout {
    /// Glyphs at their starting positions, coloured in pattern order.
    pub fn new(patterns: &[Pattern]) -> Self {
        let glyphs: Vec<Glyph> = patterns
            .iter()
            .enumerate()
            .map(|(i, p)| Glyph::new(*p, palette_color(i)))
            .collect();
        let links = build_links(&glyphs);
        let components = components(glyphs.len(), &links);
        Layout { glyphs, links, components }
    }

    pub fn is_linked(&self, glyph: usize) -> bool {
        self.links.iter().any(|l| l.clique == glyph || l.rect == glyph)
    }
}

fn components(n: usize, links: &[Link]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for l in links {
        let (a, b) = (find(&mut parent, l.clique), find(&mut parent, l.rect));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}
