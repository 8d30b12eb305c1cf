//! Deterministic SVG cross-sections of wall sets.
//!
//! All geometry is computed exactly; coordinates are rounded to one decimal
//! place only when written out.

use std::cmp::Ordering;
use std::fmt::Write;

use num_traits::{Signed, Zero};

use super::cone::Cone;
use super::fixture::{Fixture, LabeledRay, Section};
use super::walls::WallSet;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot, fmt_one_decimal, q, Q};

const CANVAS: i64 = 600;
const MARGIN: i64 = 50;

#[derive(Debug, Clone, Default)]
pub struct PlotOptions {
    pub section: Option<Section>,
    pub shaded: Option<Cone>,
    pub points: Vec<LabeledRay>,
    pub title: Option<String>,
}

type Pt = (Q, Q);

fn cross(o: &Pt, a: &Pt, b: &Pt) -> Q {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Convex hull, counterclockwise, collinear points dropped.
fn hull(mut pts: Vec<Pt>) -> Vec<Pt> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Pt> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn line_value(c: &[Q; 3], p: &Pt) -> Q {
    &c[0] * &p.0 + &c[1] * &p.1 + &c[2]
}

fn crossing(a: &Pt, b: &Pt, sa: &Q, sb: &Q) -> Pt {
    let t = sa / (sa - sb);
    (&a.0 + &t * (&b.0 - &a.0), &a.1 + &t * (&b.1 - &a.1))
}

/// Split a convex polygon by the line `c = 0`. A polygon not crossed by the
/// line comes back unchanged.
fn split(poly: &[Pt], c: &[Q; 3]) -> Vec<Vec<Pt>> {
    let s: Vec<Q> = poly.iter().map(|p| line_value(c, p)).collect();
    if !(s.iter().any(Signed::is_positive) && s.iter().any(Signed::is_negative)) {
        return vec![poly.to_vec()];
    }
    let side = |keep: fn(&Q) -> bool| {
        let mut out = Vec::new();
        for i in 0..poly.len() {
            let j = (i + 1) % poly.len();
            if keep(&s[i]) {
                out.push(poly[i].clone());
            }
            if (s[i].is_positive() && s[j].is_negative()) || (s[i].is_negative() && s[j].is_positive()) {
                out.push(crossing(&poly[i], &poly[j], &s[i], &s[j]));
            }
        }
        out
    };
    vec![side(|x| !x.is_negative()), side(|x| !x.is_positive())]
}

/// Where the line `c = 0` meets a convex polygon.
fn chord(poly: &[Pt], c: &[Q; 3]) -> Option<(Pt, Pt)> {
    let s: Vec<Q> = poly.iter().map(|p| line_value(c, p)).collect();
    let mut hits: Vec<Pt> = Vec::new();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        if s[i].is_zero() {
            hits.push(poly[i].clone());
        } else if (s[i].is_positive() && s[j].is_negative()) || (s[i].is_negative() && s[j].is_positive()) {
            hits.push(crossing(&poly[i], &poly[j], &s[i], &s[j]));
        }
    }
    hits.sort();
    hits.dedup();
    match hits.len() {
        0 => None,
        1 => Some((hits[0].clone(), hits[0].clone())),
        _ => Some((hits[0].clone(), hits[hits.len() - 1].clone())),
    }
}

struct Canvas {
    min_x: Q,
    max_y: Q,
    scale: Q,
    off_x: Q,
    off_y: Q,
}

impl Canvas {
    fn fit(pts: &[Pt]) -> Canvas {
        let min_x = pts.iter().map(|p| p.0.clone()).min().unwrap_or_else(Q::zero);
        let max_x = pts.iter().map(|p| p.0.clone()).max().unwrap_or_else(Q::zero);
        let min_y = pts.iter().map(|p| p.1.clone()).min().unwrap_or_else(Q::zero);
        let max_y = pts.iter().map(|p| p.1.clone()).max().unwrap_or_else(Q::zero);
        let (w, h) = (&max_x - &min_x, &max_y - &min_y);
        let span = if w > h { w.clone() } else { h.clone() };
        let inner = q(CANVAS - 2 * MARGIN);
        let scale = if span.is_zero() { q(1) } else { &inner / &span };
        let off_x = q(MARGIN) + (&inner - &w * &scale) / q(2);
        let off_y = q(MARGIN) + (&inner - &h * &scale) / q(2);
        Canvas { min_x, max_y, scale, off_x, off_y }
    }

    fn map(&self, p: &Pt) -> (String, String) {
        let x = &self.off_x + (&p.0 - &self.min_x) * &self.scale;
        let y = &self.off_y + (&self.max_y - &p.1) * &self.scale;
        (fmt_one_decimal(&x), fmt_one_decimal(&y))
    }

    fn points_attr(&self, poly: &[Pt]) -> String {
        poly.iter()
            .map(|p| {
                let (x, y) = self.map(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Everything the writer needs, already in plane coordinates.
struct Scene {
    boundary: Vec<Pt>,
    shaded: Vec<Pt>,
    chambers: Vec<Vec<Pt>>,
    walls: Vec<(String, Pt, Pt)>,
    labels: Vec<(String, Pt)>,
    /// Rank 2 draws from the origin.
    origin: bool,
}

fn axis(section: Option<&Section>, k: usize, pick: fn(&Section) -> &Vec<Q>, default: usize) -> Result<Vec<Q>> {
    match section {
        Some(s) if !pick(s).is_empty() => {
            if pick(s).len() != k {
                return Err(Error::Render(format!("section axis has length {}, expected {k}", pick(s).len())));
            }
            Ok(pick(s).clone())
        }
        _ => {
            let mut v = vec![Q::zero(); k];
            v[default] = q(1);
            Ok(v)
        }
    }
}

fn check_pointed(c: &Cone, what: &str) -> Result<()> {
    if c.is_pointed() {
        Ok(())
    } else {
        Err(Error::Render(format!("{what} contains a line")))
    }
}

fn scene_rank3(ws: &WallSet, opts: &PlotOptions) -> Result<Scene> {
    let sec = opts.section.as_ref();
    let ell = match sec {
        Some(s) if !s.functional.is_empty() => {
            if s.functional.len() != 3 {
                return Err(Error::Render("section functional must have length 3".into()));
            }
            s.functional.clone()
        }
        _ => vec![q(1); 3],
    };
    let x = axis(sec, 3, |s| &s.x, 0)?;
    let y = axis(sec, 3, |s| &s.y, 1)?;
    let m = vec![x.clone(), y.clone(), ell.clone()];
    let minv = linalg::inverse(&m).ok_or_else(|| Error::Render("section axes and plane are degenerate".into()))?;
    let project = |v: &[Q], what: &str| -> Result<Pt> {
        let l = dot(&ell, v);
        if !l.is_positive() {
            return Err(Error::Render(format!("{what} does not meet the section plane")));
        }
        Ok((dot(&x, v) / &l, dot(&y, v) / &l))
    };
    check_pointed(&ws.bounding_cone, "bounding cone")?;
    let boundary = hull(ws.bounding_cone.rays().iter().map(|r| project(r, "bounding ray")).collect::<Result<_>>()?);
    let shaded = match &opts.shaded {
        Some(c) => {
            check_pointed(c, "shaded cone")?;
            hull(c.rays().iter().map(|r| project(r, "shaded ray")).collect::<Result<_>>()?)
        }
        None => Vec::new(),
    };
    let mut chambers = vec![boundary.clone()];
    let mut walls = Vec::new();
    for w in &ws.walls {
        let c: Vec<Q> = (0..3).map(|j| (0..3).map(|i| &w.functional[i] * &minv[i][j]).sum()).collect();
        let c = [c[0].clone(), c[1].clone(), c[2].clone()];
        if boundary.len() >= 3 {
            chambers = chambers.iter().flat_map(|p| split(p, &c)).collect();
        }
        if let Some((a, b)) = chord(&boundary, &c) {
            walls.push((w.label.clone(), a, b));
        }
    }
    let labels = opts.points.iter().map(|p| Ok((p.label.clone(), project(&p.ray, &format!("point {:?}", p.label))?))).collect::<Result<_>>()?;
    if ws.walls.is_empty() {
        chambers.clear();
    }
    Ok(Scene { boundary, shaded, chambers, walls, labels, origin: false })
}

fn scene_rank2(ws: &WallSet, opts: &PlotOptions) -> Result<Scene> {
    let sec = opts.section.as_ref();
    let x = axis(sec, 2, |s| &s.x, 0)?;
    let y = axis(sec, 2, |s| &s.y, 1)?;
    if (&x[0] * &y[1] - &x[1] * &y[0]).is_zero() {
        return Err(Error::Render("plot axes are degenerate".into()));
    }
    let project = |v: &[Q]| -> Pt {
        let (px, py) = (dot(&x, v), dot(&y, v));
        let m = if px.abs() > py.abs() { px.abs() } else { py.abs() };
        (px / &m, py / &m)
    };
    let o: Pt = (Q::zero(), Q::zero());
    let by_angle = |a: &Pt, b: &Pt| {
        let c = cross(&o, a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    };
    let fan = |c: &Cone| -> Result<Vec<Pt>> {
        check_pointed(c, "cone")?;
        let mut p: Vec<Pt> = c.rays().iter().map(|r| project(r)).collect();
        p.sort_by(by_angle);
        Ok(p)
    };
    let rays = fan(&ws.bounding_cone)?;
    let shaded = match &opts.shaded {
        Some(c) => {
            let mut s = vec![o.clone()];
            s.extend(fan(c)?);
            s
        }
        None => Vec::new(),
    };
    let mut walls = Vec::new();
    let mut dirs = rays.clone();
    for w in &ws.walls {
        let d = vec![-w.functional[1].clone(), w.functional[0].clone()];
        let neg: Vec<Q> = d.iter().map(|t| -t).collect();
        for v in [d, neg] {
            if ws.bounding_cone.contains(&v)? {
                let p = project(&v);
                walls.push((w.label.clone(), o.clone(), p.clone()));
                dirs.push(p);
            }
        }
    }
    dirs.sort_by(by_angle);
    dirs.dedup();
    let mut boundary = vec![o.clone()];
    boundary.extend(dirs.iter().cloned());
    let chambers = if ws.walls.is_empty() {
        Vec::new()
    } else {
        dirs.windows(2).map(|w| vec![o.clone(), w[0].clone(), w[1].clone()]).collect()
    };
    let labels = opts.points.iter().map(|p| (p.label.clone(), project(&p.ray))).collect();
    Ok(Scene { boundary, shaded, chambers, walls, labels, origin: true })
}

/// SVG picture of a rank-2 or rank-3 wall set: the bounding cone, its
/// chambers, wall segments, an optional shaded cone and labeled points.
pub fn cross_section_svg(ws: &WallSet, opts: &PlotOptions) -> Result<String> {
    let scene = match ws.rank() {
        2 => scene_rank2(ws, opts)?,
        3 => scene_rank3(ws, opts)?,
        k => return Err(Error::Render(format!("only rank 2 or 3 can be drawn, got rank {k}"))),
    };
    let mut all: Vec<Pt> = scene.boundary.clone();
    all.extend(scene.shaded.iter().cloned());
    all.extend(scene.labels.iter().map(|(_, p)| p.clone()));
    if scene.origin {
        all.push((Q::zero(), Q::zero()));
    }
    let cv = Canvas::fit(&all);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">"
    );
    let title = opts.title.clone().unwrap_or_else(|| format!("{} n={}", ws.surface, ws.n));
    let _ = writeln!(s, "<title>{}</title>", escape(&title));
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"#ffffff\"/>");
    if !scene.shaded.is_empty() {
        let _ = writeln!(s, "<g id=\"shaded\">\n<polygon points=\"{}\" fill=\"#d9d9d9\" stroke=\"none\"/>\n</g>", cv.points_attr(&scene.shaded));
    }
    if !scene.chambers.is_empty() {
        s.push_str("<g id=\"chambers\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.5\">\n");
        for (i, c) in scene.chambers.iter().enumerate() {
            let _ = writeln!(s, "<polygon id=\"chamber-{i}\" points=\"{}\"/>", cv.points_attr(c));
        }
        s.push_str("</g>\n");
    }
    if !scene.walls.is_empty() {
        s.push_str("<g id=\"walls\" stroke=\"#000000\" stroke-width=\"1\">\n");
        for (label, a, b) in &scene.walls {
            let ((x1, y1), (x2, y2)) = (cv.map(a), cv.map(b));
            let _ = writeln!(s, "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"><title>{}</title></line>", escape(label));
        }
        s.push_str("</g>\n");
    }
    if !scene.boundary.is_empty() {
        let _ = writeln!(
            s,
            "<g id=\"boundary\">\n<polygon points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n</g>",
            cv.points_attr(&scene.boundary)
        );
    }
    if !scene.labels.is_empty() {
        s.push_str("<g id=\"labels\" font-family=\"serif\" font-size=\"14\">\n");
        for (label, p) in &scene.labels {
            let (x, y) = cv.map(p);
            let _ = writeln!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"2.5\" fill=\"#000000\"/>");
            let _ = writeln!(s, "<text x=\"{x}\" y=\"{y}\" dx=\"5\" dy=\"-5\">{}</text>", escape(label));
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Render a fixture with its own section, shading, points and title.
pub fn fixture_svg(f: &Fixture) -> Result<String> {
    let opts = PlotOptions { section: f.section.clone(), shaded: f.shaded_cone()?, points: f.points.clone(), title: f.title.clone() };
    cross_section_svg(&f.wall_set()?, &opts)
}
