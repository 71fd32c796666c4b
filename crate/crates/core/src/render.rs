//! SVG drawings.
//!
//! Every drawn element carries a class so the output can be inspected
//! programmatically:
//!
//! | object     | classes                                                   |
//! |------------|-----------------------------------------------------------|
//! | diagram    | `boundary` (1), `point` (nk), `leg` (nk), `center` (n)     |
//! | tree       | `edge` (nk), `internal` (n), `leaf` (n(k-1)+1)            |
//! | dissection | `outline` (1), `vertex` (N), `diagonal` (n-1)             |
//!
//! With labels enabled each point, non-root node or vertex also gets a
//! `label` text element.

use std::f64::consts::TAU;
use std::fmt::Write;

use crate::diagrams::Diagram;
use crate::dissections::Dissection;
use crate::error::{Error, Result};
use crate::io::{Kind, Object};
use crate::trees::{word_table, FullKAryTree};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub width: f64,
    pub height: f64,
    pub labels: bool,
    /// When set, [`render`] refuses objects of any other kind.
    pub kind: Option<Kind>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 400.0,
            height: 400.0,
            labels: true,
            kind: None,
        }
    }
}

struct Svg {
    out: String,
}

impl Svg {
    fn new(opts: &RenderOptions) -> Result<Svg> {
        if !(opts.width.is_finite() && opts.height.is_finite() && opts.width > 0.0 && opts.height > 0.0) {
            return Err(Error::Domain(format!("bad canvas size {}x{}", opts.width, opts.height)));
        }
        let mut out = String::new();
        let (w, h) = (opts.width, opts.height);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        out.push_str("<rect class=\"background\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        Ok(Svg { out })
    }

    fn line(&mut self, class: &str, (x1, y1): (f64, f64), (x2, y2): (f64, f64)) {
        let _ = writeln!(
            self.out,
            r#"<line class="{class}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black"/>"#
        );
    }

    fn dot(&mut self, class: &str, (x, y): (f64, f64), r: f64, fill: &str) {
        let _ = writeln!(
            self.out,
            r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}"/>"#
        );
    }

    fn text(&mut self, (x, y): (f64, f64), s: &str) {
        let _ = writeln!(
            self.out,
            r#"<text class="label" x="{x:.2}" y="{y:.2}" font-size="10" text-anchor="middle">{s}</text>"#
        );
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

/// Point `i` of `count` on a circle, counterclockwise from the east.
fn on_circle(center: (f64, f64), r: f64, i: u32, count: u32) -> (f64, f64) {
    let a = TAU * i as f64 / count as f64;
    (center.0 + r * a.cos(), center.1 - r * a.sin())
}

pub fn render_diagram(d: &Diagram, opts: &RenderOptions) -> Result<String> {
    let mut svg = Svg::new(opts)?;
    let c = (opts.width / 2.0, opts.height / 2.0);
    let r = 0.4 * opts.width.min(opts.height);
    let nk = d.nk();
    let pos = |label: u32| on_circle(c, r, label - 1, nk);
    let _ = writeln!(
        svg.out,
        r#"<circle class="boundary" cx="{:.2}" cy="{:.2}" r="{r:.2}" fill="none" stroke="gray"/>"#,
        c.0, c.1
    );
    for star in d.stars() {
        let pts: Vec<_> = star.iter().map(|&l| pos(l)).collect();
        let m = pts.len() as f64;
        let centroid = (
            pts.iter().map(|p| p.0).sum::<f64>() / m,
            pts.iter().map(|p| p.1).sum::<f64>() / m,
        );
        for &p in &pts {
            svg.line("leg", centroid, p);
        }
        svg.dot("center", centroid, 2.5, "gray");
    }
    for label in 1..=nk {
        svg.dot("point", pos(label), 3.0, "black");
        if opts.labels {
            svg.text(on_circle(c, r + 12.0, label - 1, nk), &label.to_string());
        }
    }
    Ok(svg.finish())
}

pub fn render_tree(t: &FullKAryTree, opts: &RenderOptions) -> Result<String> {
    let mut svg = Svg::new(opts)?;
    let kids = t.children_lists();
    let count = kids.len();
    let mut depth = vec![0usize; count];
    for v in 0..count {
        for &c in &kids[v] {
            depth[c] = depth[v] + 1;
        }
    }
    // Leaves get consecutive columns; a parent sits over the mean of its children.
    let mut x = vec![0.0f64; count];
    let mut column = 0.0;
    for v in 0..count {
        if kids[v].is_empty() {
            x[v] = column;
            column += 1.0;
        }
    }
    for v in (0..count).rev() {
        if !kids[v].is_empty() {
            x[v] = kids[v].iter().map(|&c| x[c]).sum::<f64>() / kids[v].len() as f64;
        }
    }
    let max_depth = depth.iter().copied().max().unwrap_or(0).max(1) as f64;
    let margin = 20.0;
    let sx = (opts.width - 2.0 * margin) / (column - 1.0).max(1.0);
    let sy = (opts.height - 2.0 * margin) / max_depth;
    let at = |v: usize| (margin + x[v] * sx, margin + depth[v] as f64 * sy);
    for (v, ch) in kids.iter().enumerate() {
        for &c in ch {
            svg.line("edge", at(v), at(c));
        }
    }
    for (v, ch) in kids.iter().enumerate() {
        if ch.is_empty() {
            svg.dot("leaf", at(v), 3.0, "white");
        } else {
            svg.dot("internal", at(v), 4.0, "black");
        }
    }
    if opts.labels {
        for (word, node) in word_table(t) {
            let (px, py) = at(node as usize);
            svg.text((px + 8.0, py - 6.0), &word.to_string());
        }
    }
    Ok(svg.finish())
}

pub fn render_dissection(p: &Dissection, opts: &RenderOptions) -> Result<String> {
    let mut svg = Svg::new(opts)?;
    let c = (opts.width / 2.0, opts.height / 2.0);
    let r = 0.4 * opts.width.min(opts.height);
    let sides = p.sides();
    // Vertex 1 and vertex N straddle the bottom so the base edge is horizontal.
    let pos = |v: u32| {
        let a = TAU * (v as f64 - 0.5) / sides as f64 - TAU / 4.0;
        (c.0 + r * a.cos(), c.1 - r * a.sin())
    };
    let mut points = String::new();
    for v in 1..=sides {
        let (x, y) = pos(v);
        let _ = write!(points, "{}{x:.2},{y:.2}", if v > 1 { " " } else { "" });
    }
    let _ = writeln!(
        svg.out,
        r#"<polygon class="outline" points="{points}" fill="none" stroke="black"/>"#
    );
    for (a, b) in p.diagonals() {
        svg.line("diagonal", pos(a), pos(b));
    }
    for v in 1..=sides {
        svg.dot("vertex", pos(v), 3.0, "black");
        if opts.labels {
            let a = TAU * (v as f64 - 0.5) / sides as f64 - TAU / 4.0;
            svg.text(
                (c.0 + (r + 12.0) * a.cos(), c.1 - (r + 12.0) * a.sin() + 3.0),
                &v.to_string(),
            );
        }
    }
    Ok(svg.finish())
}

pub fn render(obj: &Object, opts: &RenderOptions) -> Result<String> {
    if let Some(kind) = opts.kind.filter(|&k| k != obj.kind()) {
        return Err(Error::Domain(format!("asked to render a {kind}, got a {}", obj.kind())));
    }
    match obj {
        Object::Diagram(d) => render_diagram(d, opts),
        Object::Tree(t) => render_tree(t, opts),
        Object::Dissection(p) => render_dissection(p, opts),
    }
}
