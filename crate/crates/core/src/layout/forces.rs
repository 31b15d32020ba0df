//! The four layout forces and the synchronous update loop.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use super::{Glyph, Layout};
use crate::error::{Error, Result};
use crate::geom::{signed_angle, Vec2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceParams {
    /// Rotational force.
    pub c_o: f64,
    /// Link attraction.
    pub c_a: f64,
    /// Glyph repulsion.
    pub c_r: f64,
    /// Pattern gravity.
    pub c_g: f64,
    /// Margin promoted between glyphs.
    pub mu: f64,
    /// Longest translation a glyph may make in one step. The cubic
    /// repulsion is unbounded for nearly coincident glyphs; without a cap
    /// they are flung far apart and take thousands of steps to return.
    pub max_step: f64,
    pub max_iters: usize,
    /// Converged once no glyph moves (or turns, measured along its
    /// boundary) further than this in one step.
    pub eps: f64,
}

impl Default for ForceParams {
    fn default() -> Self {
        ForceParams { c_o: 0.8, c_a: 1.0, c_r: 1.0, c_g: 1.0, mu: 3.0, max_step: 1.0, max_iters: 5000, eps: 1e-3 }
    }
}

impl ForceParams {
    pub fn validate(self) -> Result<Self> {
        let all = [self.c_o, self.c_a, self.c_r, self.c_g, self.mu, self.max_step, self.eps];
        if all.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::InvalidParameter("force parameters must be positive"));
        }
        Ok(self)
    }
}

/// Vectors shorter than this have no direction.
const TINY: f64 = 1e-9;

/// Torque a link applies to glyph `g` through its attachment `u0..=u1`:
/// `c_o * angle(m -> m*) * beta / 2pi`, where `m` points from the centre to
/// the middle of the attachment and `m*` to the link centroid.
pub fn rotational_force(g: &Glyph, range: (f64, f64), link_centroid: Vec2, c_o: f64) -> f64 {
    let beta = g.central_angle(range.0, range.1);
    if beta >= TAU - 1e-12 {
        // the attachment covers the whole boundary; no rotation helps
        return 0.0;
    }
    let m = g.boundary_point((range.0 + range.1) / 2.0) - g.center;
    let m_star = link_centroid - g.center;
    if m.length() < TINY || m_star.length() < TINY {
        return 0.0;
    }
    c_o * signed_angle(m, m_star) * beta / TAU
}

/// Unit pull of glyph `g` towards a link centroid, scaled by `c_a`.
pub fn attraction_force(g: &Glyph, link_centroid: Vec2, c_a: f64) -> Vec2 {
    let m = link_centroid - g.center;
    let len = m.length();
    if len < TINY {
        return Vec2::default();
    }
    m * (c_a / len)
}

/// Push of glyph `j` onto glyph `i`: `c_r * m/|m| * ((r_i + r_j + mu) / |m|)^3`
/// with `m = c_i - c_j`. Coincident centres get a push of size `c_r` in a
/// direction derived from the glyph indices, opposite for the two glyphs.
pub fn repulsion_force(gi: &Glyph, gj: &Glyph, i: usize, j: usize, c_r: f64, mu: f64) -> Vec2 {
    let m = gi.center - gj.center;
    let len = m.length();
    if len < TINY {
        let dir = Vec2::from_angle(pair_angle(i.min(j), i.max(j)));
        return if i < j { dir * c_r } else { dir * -c_r };
    }
    let ratio = (gi.radius() + gj.radius() + mu) / len;
    m * (c_r / len * ratio * ratio * ratio)
}

fn pair_angle(a: usize, b: usize) -> f64 {
    // splitmix64 finaliser
    let mut z = ((a as u64) << 32 ^ b as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64 * TAU
}

/// Gravity along `m`, saturating: full strength `c_g` once `|m| >= 1`,
/// proportional to `|m|` closer in. A constant-magnitude pull would make
/// glyphs overshoot their target forever instead of settling.
pub fn gravity_pull(m: Vec2, c_g: f64) -> Vec2 {
    let len = m.length();
    if len < TINY {
        return Vec2::default();
    }
    m * (c_g / len.max(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Converged,
    MaxIterations,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunReport {
    pub iterations: usize,
    pub stop: StopReason,
    /// Largest step of the last iteration.
    pub displacement: f64,
}

impl Layout {
    /// Net torque and translation force on every glyph in the current state.
    pub fn forces(&self, params: &ForceParams) -> Vec<(f64, Vec2)> {
        let n = self.glyphs.len();
        let mut out = vec![(0.0, Vec2::default()); n];

        for l in &self.links {
            let centroid = l.centroid(&self.glyphs);
            for (g, range) in [(l.clique, l.clique_range), (l.rect, l.rect_range)] {
                let glyph = &self.glyphs[g];
                out[g].0 += rotational_force(glyph, range, centroid, params.c_o);
                out[g].1 += attraction_force(glyph, centroid, params.c_a);
            }
        }

        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out[i].1 += repulsion_force(&self.glyphs[i], &self.glyphs[j], i, j, params.c_r, params.mu);
                }
            }
        }

        // per component: (sum of starts, sum of centres, count) over cliques
        let mut pulls = vec![(Vec2::default(), Vec2::default(), 0usize); n];
        for (g, glyph) in self.glyphs.iter().enumerate().filter(|(_, g)| g.is_clique()) {
            let slot = &mut pulls[self.components[g]];
            slot.0 += glyph.start;
            slot.1 += glyph.center;
            slot.2 += 1;
        }
        for (g, glyph) in self.glyphs.iter().enumerate() {
            let own = glyph.start - glyph.center;
            out[g].1 += if !self.is_linked(g) {
                gravity_pull(own, params.c_g)
            } else if glyph.is_clique() {
                let (s, c, k) = pulls[self.components[g]];
                gravity_pull((s - c) / k as f64, params.c_g)
            } else {
                gravity_pull(own, params.c_g) / 5.0
            };
        }
        out
    }

    /// One synchronous update; returns the largest step taken.
    pub fn step(&mut self, params: &ForceParams) -> f64 {
        let forces = self.forces(params);
        let mut largest: f64 = 0.0;
        for (g, (torque, force)) in self.glyphs.iter_mut().zip(forces) {
            let r = g.radius();
            let mut shift = force / r;
            let len = shift.length();
            if len > params.max_step {
                shift = shift * (params.max_step / len);
            }
            g.rotation += torque / r;
            g.center += shift;
            // rotation measured as distance travelled along the boundary
            largest = largest.max(shift.length()).max(libm::fabs(torque));
        }
        largest
    }

    /// Steps until converged or `params.max_iters` is reached.
    pub fn run(&mut self, params: &ForceParams) -> RunReport {
        let mut report = RunReport { iterations: 0, stop: StopReason::Converged, displacement: 0.0 };
        if self.glyphs.is_empty() {
            return report;
        }
        while report.iterations < params.max_iters {
            report.displacement = self.step(params);
            report.iterations += 1;
            if report.displacement < params.eps {
                return report;
            }
        }
        report.stop = StopReason::MaxIterations;
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{build_links, palette_color};
    use crate::patterns::{Pattern, Shape, Span};
    use core::f64::consts::PI;

    fn pattern(shape: Shape) -> Pattern {
        Pattern { shape, weight: 1, cells_total: shape.cells_total(), cells_black: shape.cells_total() }
    }

    fn glyph_at(shape: Shape, at: Vec2) -> Glyph {
        let mut g = Glyph::new(pattern(shape), palette_color(0));
        g.center = at;
        g
    }

    #[test]
    fn rotational_examples() {
        // clique of 4 at the origin; attachment is the first half of the circle
        let g = glyph_at(Shape::clique(0, 3), Vec2::default());
        let range = (0.0, 0.5);
        // middle of the attachment points along +y (angle pi/2)
        let along = Vec2::new(0.0, 5.0);
        assert!(rotational_force(&g, range, along, 0.8).abs() < 1e-12);
        let quarter = Vec2::new(-5.0, 0.0);
        let f = rotational_force(&g, range, quarter, 0.8);
        assert!((f - 0.2 * PI).abs() < 1e-12);
        let flipped = Vec2::new(5.0, 0.0);
        assert!((rotational_force(&g, range, flipped, 0.8) + f).abs() < 1e-12);
        // turning by the force moves the attachment towards the centroid
        let mut turned = g.clone();
        turned.rotation += f / g.radius();
        let before = signed_angle(g.boundary_point(0.25), quarter).abs();
        let after = signed_angle(turned.boundary_point(0.25), quarter).abs();
        assert!(after < before);
    }

    #[test]
    fn attraction_is_unit() {
        let g = glyph_at(Shape::clique(0, 3), Vec2::new(1.0, 1.0));
        let near = attraction_force(&g, Vec2::new(2.0, 1.0), 1.0);
        let far = attraction_force(&g, Vec2::new(101.0, 1.0), 1.0);
        assert_eq!(near, far);
        assert_eq!(near, Vec2::new(1.0, 0.0));
        assert_eq!(attraction_force(&g, g.center, 1.0), Vec2::default());
    }

    #[test]
    fn repulsion_examples() {
        // glyphs of radius 1: a pure clique of k cells has r = sqrt(k(k-1)/pi)
        let mut gi = glyph_at(Shape::clique(0, 2), Vec2::new(5.0, 0.0));
        let mut gj = glyph_at(Shape::clique(0, 2), Vec2::default());
        let r = gi.radius();
        let mu = 5.0 - 2.0 * r;
        let f = repulsion_force(&gi, &gj, 0, 1, 1.0, mu);
        assert!((f.length() - 1.0).abs() < 1e-12);
        gi.center = Vec2::new(10.0, 0.0);
        let f = repulsion_force(&gi, &gj, 0, 1, 1.0, mu);
        assert!((f.length() - 0.125).abs() < 1e-12);
        assert_eq!(f, -repulsion_force(&gj, &gi, 1, 0, 1.0, mu));
        gj.center = gi.center;
        let a = repulsion_force(&gi, &gj, 0, 1, 1.0, 3.0);
        let b = repulsion_force(&gj, &gi, 1, 0, 1.0, 3.0);
        assert!((a.length() - 1.0).abs() < 1e-12);
        assert_eq!(a, -b);
    }

    #[test]
    fn gravity_examples() {
        assert_eq!(gravity_pull(Vec2::default(), 1.0), Vec2::default());
        assert!(gravity_pull(Vec2::new(3.0, 4.0), 1.0).distance(Vec2::new(0.6, 0.8)) < 1e-15);
        assert_eq!(gravity_pull(Vec2::new(0.5, 0.0), 1.0), Vec2::new(0.5, 0.0));

        // two linked cliques displaced by opposite offsets: component pull is zero
        let patterns = [
            pattern(Shape::clique(0, 3)),
            pattern(Shape::biclique(Span::new(2, 3), Span::new(10, 11))),
            pattern(Shape::clique(10, 12)),
        ];
        let mut layout = Layout::new(&patterns);
        assert_eq!(layout.links.len(), 2);
        layout.glyphs[0].center += Vec2::new(2.0, 0.0);
        layout.glyphs[2].center += Vec2::new(-2.0, 0.0);
        let p = ForceParams { c_o: 1e-30, c_a: 1e-30, c_r: 1e-30, ..ForceParams::default() };
        let forces = layout.forces(&p);
        assert!(forces[0].1.length() < 1e-20 && forces[2].1.length() < 1e-20);

        // linked biclique at unit displacement
        layout.glyphs[1].center += Vec2::new(0.0, 1.0);
        let forces = layout.forces(&p);
        assert!((forces[1].1.length() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn repulsion_sums_to_zero() {
        let patterns: Vec<Pattern> = (0..6).map(|k| pattern(Shape::clique(4 * k, 4 * k + 2 + k % 2))).collect();
        let mut layout = Layout::new(&patterns);
        for (k, g) in layout.glyphs.iter_mut().enumerate() {
            g.center = Vec2::new((k % 3) as f64, (k / 3) as f64 * 0.7);
        }
        let mut total = Vec2::default();
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    total += repulsion_force(&layout.glyphs[i], &layout.glyphs[j], i, j, 1.0, 3.0);
                }
            }
        }
        assert!(total.length() < 1e-9);
    }

    #[test]
    fn single_glyph_is_fixed_point() {
        let mut layout = Layout::new(&[pattern(Shape::clique(0, 4))]);
        let report = layout.run(&ForceParams::default());
        assert_eq!((report.iterations, report.stop), (1, StopReason::Converged));
        assert_eq!(layout.glyphs[0].center, layout.glyphs[0].start);

        let mut empty = Layout::new(&[]);
        assert_eq!(empty.run(&ForceParams::default()).iterations, 0);
    }

    #[test]
    fn coincident_glyphs_separate() {
        let p = pattern(Shape::clique(0, 4));
        let mut layout = Layout::new(&[p, p]);
        let params = ForceParams::default();
        let mut gap = 0.0;
        for _ in 0..200 {
            layout.step(&params);
            let now = layout.glyphs[0].center.distance(layout.glyphs[1].center);
            assert!(now >= gap - 1e-12);
            gap = now;
        }
        let report = layout.run(&params);
        assert_eq!(report.stop, StopReason::Converged);
        // repulsion balances saturated gravity where the ratio is 1
        let balance = 2.0 * layout.glyphs[0].radius() + params.mu;
        assert!((layout.glyphs[0].center.distance(layout.glyphs[1].center) - balance).abs() < 0.05);
    }

    #[test]
    fn larger_glyphs_move_less() {
        let small = glyph_at(Shape::clique(0, 2), Vec2::default());
        let big = glyph_at(Shape::clique(0, 9), Vec2::default());
        let f = Vec2::new(1.0, 0.0);
        assert!((f / big.radius()).length() < (f / small.radius()).length());
    }

    fn mixed_layout() -> Layout {
        let patterns = [
            pattern(Shape::clique(0, 5)),
            pattern(Shape::clique(6, 9)),
            pattern(Shape::clique(14, 18)),
            pattern(Shape::biclique(Span::new(2, 4), Span::new(10, 13))),
            pattern(Shape::biclique(Span::new(7, 8), Span::new(19, 22))),
            pattern(Shape::star(Span::new(15, 15), Span::new(23, 28))),
        ];
        Layout::new(&patterns)
    }

    #[test]
    fn mixed_layout_converges_without_overlap() {
        let mut layout = mixed_layout();
        assert!(!build_links(&layout.glyphs).is_empty());
        let report = layout.run(&ForceParams::default());
        assert_eq!(report.stop, StopReason::Converged, "{report:?}");
        for (i, a) in layout.glyphs.iter().enumerate() {
            for b in &layout.glyphs[i + 1..] {
                assert!(a.center.distance(b.center) > a.radius() + b.radius());
            }
        }
    }

    #[test]
    fn deterministic_and_translation_equivariant() {
        let params = ForceParams::default();
        let mut a = mixed_layout();
        let mut b = mixed_layout();
        a.run(&params);
        b.run(&params);
        assert_eq!(a, b);

        let shift = Vec2::new(37.0, -12.5);
        let mut c = mixed_layout();
        for g in &mut c.glyphs {
            g.start += shift;
            g.center += shift;
        }
        c.run(&params);
        for (x, y) in a.glyphs.iter().zip(&c.glyphs) {
            assert!((x.center + shift).distance(y.center) < 1e-6);
            assert!((x.rotation - y.rotation).abs() < 1e-6);
        }
    }
}
