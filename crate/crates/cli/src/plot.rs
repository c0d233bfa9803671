//! Scene files rendered to SVG.
//!
//! Walls are drawn at a fixed height `t` (default 0, the `xy`-restriction)
//! by marching squares over an exact rational grid with linear
//! interpolation along cell edges. Lines are clipped exactly. Listed points
//! carry a `data-on` attribute naming every curve that passes through them
//! exactly, independent of the sampling density.

use std::fmt::Write;

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;

use delpezzo::lattice::{rational_from_json, AmpleClass, SurfaceKind};
use delpezzo::notation::parse_class;
use delpezzo::regions::heart_form;
use delpezzo::symkernel::{int, Bindings, Rational, SymPoly, Var};
use delpezzo::walls::{wall_quadric, BoundWall};

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct Viewport {
    xmin: Rational,
    xmax: Rational,
    ymin: Rational,
    ymax: Rational,
}

struct Frame {
    vp: Viewport,
    width: f64,
    height: f64,
}

impl Frame {
    fn px(&self, x: &Rational, y: &Rational) -> (f64, f64) {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        let sx = self.width / f(&(&self.vp.xmax - &self.vp.xmin));
        let px = (f(x) - f(&self.vp.xmin)) * sx;
        let py = (f(&self.vp.ymax) - f(y)) * sx;
        (px, py)
    }
}

fn num(v: f64) -> String {
    // Avoid "-0.000".
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn rat_field(v: &Value, key: &str, default: Rational) -> Result<Rational, String> {
    match v.get(key) {
        None => Ok(default),
        Some(x) => rational_from_json(x).map_err(|e| format!("{key}: {e}")),
    }
}

enum Curve {
    Wall { label: String, bound: BoundWall },
    Line { label: String, cx: Rational, cy: Rational, c0: Rational },
}

impl Curve {
    fn label(&self) -> &str {
        match self {
            Curve::Wall { label, .. } | Curve::Line { label, .. } => label,
        }
    }

    fn value(&self, x: &Rational, y: &Rational, t: &Rational) -> Rational {
        match self {
            Curve::Wall { bound, .. } => bound.value(x, y, t),
            Curve::Line { cx, cy, c0, .. } => cx * x + cy * y + c0,
        }
    }
}

fn linear_coefficients(p: &SymPoly, h: &AmpleClass) -> Result<(Rational, Rational, Rational), String> {
    let b = Bindings::new().with(Var::A, h.a.clone()).with(Var::B, h.b.clone());
    let p = p.substitute(&b);
    if p.total_degree() > 1 || p.involves(Var::T) {
        return Err(format!("`{p}` is not a linear form in x, y"));
    }
    let co = |e: [u32; 2]| p.coefficient(&[Var::X, Var::Y], &e).as_constant().unwrap_or_else(Rational::zero);
    Ok((co([1, 0]), co([0, 1]), co([0, 0])))
}

/// Renders a scene; errors describe what failed to parse.
pub fn render(text: &str, samples: usize) -> Result<String, String> {
    let scene: Value = serde_json::from_str(text).map_err(|e| format!("scene: {e}"))?;
    if !scene.is_object() {
        return Err("scene must be a JSON object".into());
    }
    let surface: SurfaceKind = match scene.get("surface").and_then(Value::as_str) {
        Some(s) => s.parse().map_err(|e: delpezzo::Error| e.to_string())?,
        None => SurfaceKind::P1xP1,
    };
    let h = match scene.get("H").and_then(Value::as_array) {
        Some(ab) if ab.len() == 2 => AmpleClass::new(
            surface,
            rational_from_json(&ab[0]).map_err(|e| e.to_string())?,
            rational_from_json(&ab[1]).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?,
        Some(_) => return Err("H must be a pair".into()),
        None => {
            let r = surface.reference_ample();
            AmpleClass::new(surface, r.0[0].clone(), r.0[1].clone()).map_err(|e| e.to_string())?
        }
    };
    let empty = Value::Object(Default::default());
    let vpv = scene.get("viewport").unwrap_or(&empty);
    let vp = Viewport {
        xmin: rat_field(vpv, "xmin", int(-3))?,
        xmax: rat_field(vpv, "xmax", int(3))?,
        ymin: rat_field(vpv, "ymin", int(-3))?,
        ymax: rat_field(vpv, "ymax", int(3))?,
    };
    if vp.xmin >= vp.xmax || vp.ymin >= vp.ymax {
        return Err("viewport is degenerate".into());
    }
    if samples == 0 {
        return Err("samples must be positive".into());
    }
    let t = rat_field(&scene, "t", int(0))?;
    if t.is_negative() {
        return Err("t must be nonnegative".into());
    }
    let width = scene.get("width").and_then(Value::as_f64).unwrap_or(400.0);
    let aspect = ((&vp.ymax - &vp.ymin) / (&vp.xmax - &vp.xmin)).to_f64().unwrap_or(1.0);
    let frame = Frame { vp, width, height: width * aspect };

    let mut curves = Vec::new();
    let mut strokes = Vec::new();
    for (i, w) in scene.get("walls").and_then(Value::as_array).into_iter().flatten().enumerate() {
        let field = |k: &str| w.get(k).and_then(Value::as_str).ok_or_else(|| format!("walls[{i}]: missing `{k}`"));
        let (v, u) = (field("v")?, field("w")?);
        let cv = parse_class(v, surface).map_err(|e| e.to_string())?;
        let cw = parse_class(u, surface).map_err(|e| e.to_string())?;
        let wall = wall_quadric(&cv, &cw).map_err(|e| format!("W({v}, {u}): {e}"))?;
        let bound = wall.bind(&h).map_err(|e| e.to_string())?;
        strokes.push(w.get("stroke").and_then(Value::as_str).map(str::to_string));
        curves.push(Curve::Wall { label: format!("W({v}, {u})"), bound });
    }
    for (i, l) in scene.get("lines").and_then(Value::as_array).into_iter().flatten().enumerate() {
        let (label, form) = if let Some(obj) = l.get("heart").and_then(Value::as_str) {
            let c = parse_class(obj, surface).map_err(|e| e.to_string())?;
            (format!("heart({obj})"), heart_form(&c))
        } else if let Some(f) = l.get("form").and_then(Value::as_str) {
            (f.to_string(), f.parse::<SymPoly>().map_err(|e| e.to_string())?)
        } else {
            return Err(format!("lines[{i}]: need `heart` or `form`"));
        };
        let (cx, cy, c0) = linear_coefficients(&form, &h)?;
        if cx.is_zero() && cy.is_zero() {
            return Err(format!("lines[{i}]: constant form"));
        }
        strokes.push(l.get("stroke").and_then(Value::as_str).map(str::to_string));
        curves.push(Curve::Line { label, cx, cy, c0 });
    }
    let mut points = Vec::new();
    for (i, p) in scene.get("points").and_then(Value::as_array).into_iter().flatten().enumerate() {
        let pair = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| format!("points[{i}]: expected [x, y]"))?;
        let x = rational_from_json(&pair[0]).map_err(|e| e.to_string())?;
        let y = rational_from_json(&pair[1]).map_err(|e| e.to_string())?;
        points.push((x, y));
    }

    let mut out = String::new();
    let (w, hgt) = (num(frame.width), num(frame.height));
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{hgt}" viewBox="0 0 {w} {hgt}">"#).unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{hgt}" fill="white" stroke="black"/>"#).unwrap();
    for (i, c) in curves.iter().enumerate() {
        let stroke = strokes[i].clone().unwrap_or_else(|| PALETTE[i % PALETTE.len()].to_string());
        match c {
            Curve::Wall { .. } => {
                let d = contour(c, &frame, &t, samples);
                writeln!(out, r#"<path data-label="{}" fill="none" stroke="{stroke}" d="{d}"/>"#, escape(c.label())).unwrap();
            }
            Curve::Line { cx, cy, c0, .. } => {
                if let Some(((x1, y1), (x2, y2))) = clip_line(cx, cy, c0, &frame.vp) {
                    let (a, b) = frame.px(&x1, &y1);
                    let (c2, d) = frame.px(&x2, &y2);
                    writeln!(
                        out,
                        r#"<line data-label="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-dasharray="4 3"/>"#,
                        escape(c.label()),
                        num(a),
                        num(b),
                        num(c2),
                        num(d)
                    )
                    .unwrap();
                }
            }
        }
    }
    for (x, y) in &points {
        let on: Vec<&str> = curves.iter().filter(|c| c.value(x, y, &t).is_zero()).map(Curve::label).collect();
        let (px, py) = frame.px(x, y);
        writeln!(
            out,
            r#"<circle data-x="{x}" data-y="{y}" data-on="{}" cx="{}" cy="{}" r="3" fill="black"/>"#,
            escape(&on.join("; ")),
            num(px),
            num(py)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Path data for the zero set of a curve at height `t`.
fn contour(c: &Curve, frame: &Frame, t: &Rational, n: usize) -> String {
    let vp = &frame.vp;
    let dx = (&vp.xmax - &vp.xmin) / int(n as i64);
    let dy = (&vp.ymax - &vp.ymin) / int(n as i64);
    let xs: Vec<Rational> = (0..=n).map(|i| &vp.xmin + &dx * int(i as i64)).collect();
    let ys: Vec<Rational> = (0..=n).map(|j| &vp.ymin + &dy * int(j as i64)).collect();
    let vals: Vec<Vec<Rational>> = ys.iter().map(|y| xs.iter().map(|x| c.value(x, y, t)).collect()).collect();
    let mut d = String::new();
    for j in 0..n {
        for i in 0..n {
            // Corners counterclockwise from the lower left.
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let v: Vec<&Rational> = corners.iter().map(|&(a, b)| &vals[b][a]).collect();
            let neg: Vec<bool> = v.iter().map(|r| r.is_negative()).collect();
            let crossing = |e: usize| -> (Rational, Rational) {
                let (p, q) = (corners[e], corners[(e + 1) % 4]);
                let (va, vb) = (v[e], v[(e + 1) % 4]);
                let s = va / (va - vb);
                let x = &xs[p.0] + (&xs[q.0] - &xs[p.0]) * &s;
                let y = &ys[p.1] + (&ys[q.1] - &ys[p.1]) * &s;
                (x, y)
            };
            let edges: Vec<usize> = (0..4).filter(|&e| neg[e] != neg[(e + 1) % 4]).collect();
            let pairs: Vec<(usize, usize)> = match edges.len() {
                2 => vec![(edges[0], edges[1])],
                4 => {
                    // Saddle: the cell center decides which corners connect.
                    let center: Rational = v.iter().map(|r| (*r).clone()).sum::<Rational>() / int(4);
                    if center.is_negative() == neg[0] {
                        vec![(0, 1), (2, 3)]
                    } else {
                        vec![(3, 0), (1, 2)]
                    }
                }
                _ => vec![],
            };
            for (e1, e2) in pairs {
                let (x1, y1) = crossing(e1);
                let (x2, y2) = crossing(e2);
                let (a, b) = frame.px(&x1, &y1);
                let (c2, e) = frame.px(&x2, &y2);
                write!(d, "M{} {}L{} {}", num(a), num(b), num(c2), num(e)).unwrap();
            }
        }
    }
    d
}

/// The segment of `cx·x + cy·y + c0 = 0` inside the viewport.
fn clip_line(cx: &Rational, cy: &Rational, c0: &Rational, vp: &Viewport) -> Option<((Rational, Rational), (Rational, Rational))> {
    let mut pts: Vec<(Rational, Rational)> = Vec::new();
    let mut push = |p: (Rational, Rational)| {
        if p.0 >= vp.xmin && p.0 <= vp.xmax && p.1 >= vp.ymin && p.1 <= vp.ymax && !pts.contains(&p) {
            pts.push(p);
        }
    };
    if !cy.is_zero() {
        for x in [&vp.xmin, &vp.xmax] {
            push((x.clone(), -(cx * x + c0) / cy));
        }
    }
    if !cx.is_zero() {
        for y in [&vp.ymin, &vp.ymax] {
            push((-(cy * y + c0) / cx, y.clone()));
        }
    }
    if pts.len() < 2 {
        return None;
    }
    pts.sort();
    Some((pts[0].clone(), pts[pts.len() - 1].clone()))
}
