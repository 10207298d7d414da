//! SVG pictures of bisector fields. Exact values are converted to f64 only
//! here, at emission time.

use std::f64::consts::PI;
use std::fmt::Write;

use bisector::boundary::{boundary, boundary_of_quadrilateral, moving_bisector};
use bisector::plane::mid_pair;
use bisector::standard::standardize;
use bisector::{
    BoundaryCurve, FieldElement, FieldPolynomials, Line, P1Point, PlanePoint, Quadrilateral,
    Result, StandardFormField,
};

const SIZE: f64 = 600.0;
const GRID: usize = 300;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

impl Window {
    pub fn parse(s: &str) -> std::result::Result<Window, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("bad window {s:?}"))
            })
            .collect::<std::result::Result<_, _>>()?;
        match v.as_slice() {
            &[x0, y0, x1, y1] if x0 < x1 && y0 < y1 && v.iter().all(|c| c.is_finite()) => {
                Ok(Window { x0, y0, x1, y1 })
            }
            _ => Err(format!(
                "window must be x0,y0,x1,y1 with x0 < x1 and y0 < y1, got {s:?}"
            )),
        }
    }

    fn sx(&self, x: f64) -> f64 {
        (x - self.x0) / (self.x1 - self.x0) * SIZE
    }

    fn sy(&self, y: f64) -> f64 {
        (self.y1 - y) / (self.y1 - self.y0) * SIZE
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        (self.x0..=self.x1).contains(&x) && (self.y0..=self.y1).contains(&y)
    }

    /// Part of `a x + b y + c = 0` inside the window.
    fn clip(&self, a: f64, b: f64, c: f64) -> Option<((f64, f64), (f64, f64))> {
        let mut pts: Vec<(f64, f64)> = Vec::new();
        if b.abs() > 1e-12 {
            for x in [self.x0, self.x1] {
                pts.push((x, -(a * x + c) / b));
            }
        }
        if a.abs() > 1e-12 {
            for y in [self.y0, self.y1] {
                pts.push((-(b * y + c) / a, y));
            }
        }
        let eps = 1e-9 * (self.x1 - self.x0 + self.y1 - self.y0);
        pts.retain(|&(x, y)| {
            x >= self.x0 - eps && x <= self.x1 + eps && y >= self.y0 - eps && y <= self.y1 + eps
        });
        let (&p, rest) = pts.split_first()?;
        let q = rest
            .iter()
            .copied()
            .max_by(|u, v| dist2(p, *u).total_cmp(&dist2(p, *v)))?;
        (dist2(p, q) > eps * eps).then_some((p, q))
    }
}

fn dist2(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)
}

fn float(x: &FieldElement) -> f64 {
    let s = x.to_string();
    match s.split_once('/') {
        Some((n, d)) => n.parse::<f64>().unwrap_or(f64::NAN) / d.parse::<f64>().unwrap_or(f64::NAN),
        None => s.parse().unwrap_or(f64::NAN),
    }
}

/// Line `tX − uY + v = 0` as f64 coefficients of `aX + bY + c`.
fn line_coeffs(l: &Line) -> (f64, f64, f64) {
    (float(l.t()), -float(l.u()), float(l.v()))
}

struct Svg {
    w: Window,
    body: String,
}

impl Svg {
    fn new(w: Window) -> Svg {
        Svg {
            w,
            body: String::new(),
        }
    }

    fn group(&mut self, id: &str, attrs: &str, items: &[String]) {
        if items.is_empty() {
            return;
        }
        let _ = writeln!(self.body, "<g id=\"{id}\" {attrs}>");
        for i in items {
            let _ = writeln!(self.body, "  {i}");
        }
        let _ = writeln!(self.body, "</g>");
    }

    fn segment(&self, (a, b, c): (f64, f64, f64)) -> Option<String> {
        let ((x0, y0), (x1, y1)) = self.w.clip(a, b, c)?;
        Some(format!(
            "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>",
            self.w.sx(x0),
            self.w.sy(y0),
            self.w.sx(x1),
            self.w.sy(y1)
        ))
    }

    fn dot(&self, x: f64, y: f64, r: f64) -> Option<String> {
        self.w.contains(x, y).then(|| {
            format!(
                "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{r}\"/>",
                self.w.sx(x),
                self.w.sy(y)
            )
        })
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

/// Slopes from directions `(1 − m², 2m)` with `m` a rational approximation
/// of tan(θ/2), so every sampled slope is exact.
fn sample_slopes(fp: &FieldPolynomials, n: usize) -> Vec<P1Point> {
    let field = fp.field();
    (0..n)
        .filter_map(|i| {
            let theta = PI * (i as f64 + 0.5) / n as f64;
            let m = ((theta / 2.0).tan() * 1000.0).round() as i64;
            let d = 1000i64;
            P1Point::new(field.int(2 * m * d), field.int(d * d - m * m)).ok()
        })
        .collect()
}

/// Directions `(u, t)` of the parallel pencils, from the common factor of Φ and Ψ.
fn pencil_directions(fp: &FieldPolynomials) -> Vec<(f64, f64)> {
    let c: Vec<f64> = fp.common().coeffs().iter().map(float).collect();
    let mut slopes: Vec<(f64, f64)> = Vec::new();
    match c.as_slice() {
        [a, b] => slopes.push((-b, *a)),
        [a, b, cc] => {
            if a.abs() < 1e-12 {
                slopes.push((1.0, 0.0));
                if b.abs() > 1e-12 {
                    slopes.push((-cc, *b));
                }
            } else {
                let disc = b * b - 4.0 * a * cc;
                if disc >= 0.0 {
                    for sgn in [1.0, -1.0] {
                        slopes.push(((-b + sgn * disc.sqrt()) / (2.0 * a), 1.0));
                    }
                }
            }
        }
        _ => {}
    }
    slopes.into_iter().map(|(t, u)| (u, t)).collect()
}

/// Roots of Δ on vertical and horizontal grid lines, joined between
/// neighbouring grid lines when close.
fn boundary_path(delta: &bisector::MPoly, w: Window) -> String {
    let terms: Vec<(f64, i32, i32)> = delta
        .terms()
        .map(|(e, c)| (float(c), e[0] as i32, e[1] as i32))
        .collect();
    let eval = |x: f64, y: f64| {
        terms
            .iter()
            .map(|&(c, i, j)| c * x.powi(i) * y.powi(j))
            .sum::<f64>()
    };
    let roots = |g: &dyn Fn(f64) -> f64, lo: f64, hi: f64| -> Vec<f64> {
        let step = (hi - lo) / GRID as f64;
        let mut out = Vec::new();
        let mut a = lo;
        let mut fa = g(a);
        for r in 1..=GRID {
            let b = lo + step * r as f64;
            let fb = g(b);
            if fa == 0.0 {
                out.push(a);
            } else if fa.signum() != fb.signum() && fb != 0.0 {
                let (mut l, mut h, mut fl) = (a, b, fa);
                for _ in 0..50 {
                    let m = 0.5 * (l + h);
                    let fm = g(m);
                    if fm.signum() == fl.signum() {
                        l = m;
                        fl = fm;
                    } else {
                        h = m;
                    }
                }
                out.push(0.5 * (l + h));
            }
            a = b;
            fa = fb;
        }
        out
    };
    let mut d = String::new();
    let mut join = |cols: &[(f64, Vec<f64>)], vertical: bool, tol: f64| {
        for pair in cols.windows(2) {
            let ((c0, r0), (c1, r1)) = (&pair[0], &pair[1]);
            for &a in r0 {
                let Some(&b) = r1
                    .iter()
                    .min_by(|p, q| (*p - a).abs().total_cmp(&(*q - a).abs()))
                else {
                    continue;
                };
                if (b - a).abs() > tol {
                    continue;
                }
                let ((xa, ya), (xb, yb)) = if vertical {
                    ((*c0, a), (*c1, b))
                } else {
                    ((a, *c0), (b, *c1))
                };
                let _ = write!(
                    d,
                    "M{:.3} {:.3}L{:.3} {:.3}",
                    w.sx(xa),
                    w.sy(ya),
                    w.sx(xb),
                    w.sy(yb)
                );
            }
        }
    };
    let (dx, dy) = ((w.x1 - w.x0) / GRID as f64, (w.y1 - w.y0) / GRID as f64);
    let cols: Vec<(f64, Vec<f64>)> = (0..=GRID)
        .map(|i| {
            let x = w.x0 + dx * i as f64;
            (x, roots(&|y| eval(x, y), w.y0, w.y1))
        })
        .collect();
    join(&cols, true, 4.0 * dy);
    let rows: Vec<(f64, Vec<f64>)> = (0..=GRID)
        .map(|i| {
            let y = w.y0 + dy * i as f64;
            (y, roots(&|x| eval(x, y), w.x0, w.x1))
        })
        .collect();
    join(&rows, false, 4.0 * dx);
    format!(
        "<path id=\"boundary\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.6\" d=\"{d}\"/>\n"
    )
}

fn draw(
    fp: &FieldPolynomials,
    curve: &BoundaryCurve,
    center: (f64, f64),
    quad: Option<&Quadrilateral>,
    show_sides: bool,
    samples: usize,
    w: Window,
) -> String {
    let mut svg = Svg::new(w);
    if let (true, Some(q)) = (show_sides, quad) {
        let sides: Vec<String> = q
            .sides()
            .iter()
            .filter_map(|l| svg.segment(line_coeffs(l)))
            .collect();
        svg.group("sides", "stroke=\"black\" stroke-width=\"2\"", &sides);
    }
    let bisectors: Vec<Line> = sample_slopes(fp, samples)
        .iter()
        .filter_map(|s| moving_bisector(fp, s))
        .collect();
    let lines: Vec<String> = bisectors
        .iter()
        .filter_map(|l| svg.segment(line_coeffs(l)))
        .collect();
    svg.group(
        "bisectors",
        "stroke=\"#4a7ab5\" stroke-width=\"0.8\"",
        &lines,
    );

    let span = (w.x1 - w.x0).max(w.y1 - w.y0);
    let mut pencil = Vec::new();
    for (du, dt) in pencil_directions(fp) {
        let norm = (du * du + dt * dt).sqrt();
        let (nx, ny) = (dt / norm, -du / norm);
        for j in -6..=6 {
            let off = span * j as f64 / 12.0;
            let (px, py) = (center.0 + off * nx, center.1 + off * ny);
            if let Some(s) = svg.segment((dt, -du, du * py - dt * px)) {
                pencil.push(s);
            }
        }
    }
    svg.group(
        "pencils",
        "stroke=\"#27ae60\" stroke-width=\"0.8\" stroke-dasharray=\"6 4\"",
        &pencil,
    );

    if let Some(p) = curve.polynomial() {
        let path = boundary_path(p, w);
        svg.body.push_str(&path);
    }

    if let Some(q) = quad {
        let mids: Vec<String> = bisectors
            .iter()
            .filter_map(|l| match mid_pair(q.a(), q.a1(), l)? {
                PlanePoint::Finite(x, y) => svg.dot(float(&x), float(&y), 2.0),
                PlanePoint::Infinity(_) => None,
            })
            .collect();
        svg.group("midpoints", "fill=\"#2c3e50\"", &mids);
    }
    let c: Vec<String> = svg.dot(center.0, center.1, 4.0).into_iter().collect();
    svg.group("center", "fill=\"#8e44ad\"", &c);
    svg.finish()
}

pub fn render_triple(f: &StandardFormField, samples: usize, w: Window) -> Result<String> {
    let fp = f.polynomials();
    let curve = boundary(f)?;
    let quad = f.materialize();
    Ok(draw(
        &fp,
        &curve,
        (float(f.h()), float(f.k())),
        quad.as_ref(),
        false,
        samples,
        w,
    ))
}

pub fn render_quadrilateral(q: &Quadrilateral, samples: usize, w: Window) -> Result<String> {
    let fp = FieldPolynomials::from_quadrilateral(q)?;
    let (m, f) = standardize(q)?;
    let (cx, cy) = m.inverse().apply(f.h(), f.k());
    let curve = boundary_of_quadrilateral(q)?;
    Ok(draw(
        &fp,
        &curve,
        (float(&cx), float(&cy)),
        Some(q),
        true,
        samples,
        w,
    ))
}
