//! Walls `W(v, w) = {β(v) = β(w)}` as quadrics in `(x, y, t)` with
//! coefficients polynomial in `(a, b)`.
//!
//! Every wall has the shape `K t² + q(x, y)` with `K` independent of `x, y`
//! and `q` of degree at most two; no mixed `t` terms ever appear. Most of the
//! geometry below leans on that.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::charge::{central_charge_numeric, central_charge_symbolic, StabilityPoint};
use crate::error::{Error, Result};
use crate::lattice::{twist_by_line_bundle, AmpleClass, ChernCharacter, NsClass, SurfaceKind};
use crate::symkernel::{int, rat, Bindings, Rational, SymPoly, Var};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum WallSide {
    /// `β(v) > β(w)`.
    Inside,
    On,
    /// `β(v) < β(w)`.
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallQuadric {
    pub surface: SurfaceKind,
    pub v: ChernCharacter,
    pub w: ChernCharacter,
    raw: SymPoly,
    equation: SymPoly,
    inside_sign: i8,
}

/// `(Re Z_v · Im Z_w − Re Z_w · Im Z_v) / t`.
fn raw_wall(v: &ChernCharacter, w: &ChernCharacter) -> SymPoly {
    let zv = central_charge_symbolic(v);
    let zw = central_charge_symbolic(w);
    let cross = &zv.re * &zw.im - &zw.re * &zv.im;
    cross
        .div_exact(&SymPoly::t())
        .expect("imaginary parts carry a factor t")
}

pub fn wall_quadric(v: &ChernCharacter, w: &ChernCharacter) -> Result<WallQuadric> {
    if v.surface != w.surface {
        return Err(Error::SurfaceMismatch(v.surface, w.surface));
    }
    let raw = raw_wall(v, w);
    if raw.is_zero() {
        return Err(Error::ProportionalClasses);
    }
    let lambda = raw.primitive_factor()?;
    let equation = raw.scale(&lambda);
    // raw < 0 exactly when Im(conj Z_w · Z_v) > 0, i.e. β(v) > β(w).
    let inside_sign = if lambda.is_positive() { -1 } else { 1 };
    Ok(WallQuadric {
        surface: v.surface,
        v: v.clone(),
        w: w.clone(),
        raw,
        equation,
        inside_sign,
    })
}

impl WallQuadric {
    /// The normalized primitive equation.
    pub fn equation(&self) -> &SymPoly {
        &self.equation
    }

    /// The un-normalized cross product divided by `t`.
    pub fn raw(&self) -> &SymPoly {
        &self.raw
    }

    /// The raw form scaled to integer coefficients on fixture classes: the
    /// blow-up charge carries a `1/2 (x² − t²a²)` term, so its raw walls are
    /// doubled. Discriminants are reported on this form.
    pub fn integral_form(&self) -> SymPoly {
        let k = match self.surface {
            SurfaceKind::P1xP1 => 1,
            SurfaceKind::BlpP2 => 2,
        };
        self.raw.scale(&int(k))
    }

    /// The equation signed so that it is positive exactly on the inside.
    pub fn oriented(&self) -> SymPoly {
        self.equation.scale(&int(self.inside_sign as i64))
    }

    pub fn inside_sign(&self) -> i8 {
        self.inside_sign
    }

    /// The wall of `(v ⊗ L, w ⊗ L)`.
    pub fn twisted(&self, l: &NsClass) -> Result<WallQuadric> {
        wall_quadric(
            &twist_by_line_bundle(&self.v, l)?,
            &twist_by_line_bundle(&self.w, l)?,
        )
    }

    pub fn bind(&self, h: &AmpleClass) -> Result<BoundWall> {
        if h.surface != self.surface {
            return Err(Error::SurfaceMismatch(self.surface, h.surface));
        }
        BoundWall::from_poly(&self.oriented(), h)
    }

    pub fn to_json(&self) -> Value {
        let class = classify_fixed_t_conic(self)
            .map(|c| c.kind.name().to_string())
            .unwrap_or_else(|_| "degenerate".into());
        json!({
            "v": self.v.to_json(),
            "w": self.w.to_json(),
            "equation": self.equation.to_string(),
            "class": class,
        })
    }
}

/// A wall with `H` substituted, stored as the coefficients of
/// `k t² + xx x² + xy xy + yy y² + x1 x + y1 y + c`, oriented positive inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundWall {
    pub k: Rational,
    pub xx: Rational,
    pub xy: Rational,
    pub yy: Rational,
    pub x1: Rational,
    pub y1: Rational,
    pub c: Rational,
}

impl BoundWall {
    fn from_poly(p: &SymPoly, h: &AmpleClass) -> Result<BoundWall> {
        let p = p.substitute(&Bindings::new().with(Var::A, h.a.clone()).with(Var::B, h.b.clone()));
        let co = |exps: [u32; 3]| -> Rational {
            p.coefficient(&[Var::X, Var::Y, Var::T], &exps)
                .as_constant()
                .unwrap_or_else(Rational::zero)
        };
        let bw = BoundWall {
            k: co([0, 0, 2]),
            xx: co([2, 0, 0]),
            xy: co([1, 1, 0]),
            yy: co([0, 2, 0]),
            x1: co([1, 0, 0]),
            y1: co([0, 1, 0]),
            c: co([0, 0, 0]),
        };
        if bw.to_poly() != p {
            return Err(Error::Internal(format!("wall {p} is not of the form K t² + q(x, y)")));
        }
        Ok(bw)
    }

    fn to_poly(&self) -> SymPoly {
        let (x, y, t) = (SymPoly::x(), SymPoly::y(), SymPoly::t());
        (&t * &t).scale(&self.k)
            + (&x * &x).scale(&self.xx)
            + (&x * &y).scale(&self.xy)
            + (&y * &y).scale(&self.yy)
            + x.scale(&self.x1)
            + y.scale(&self.y1)
            + SymPoly::constant(self.c.clone())
    }

    pub fn value(&self, x: &Rational, y: &Rational, t: &Rational) -> Rational {
        &self.k * t * t
            + &self.xx * x * x
            + &self.xy * x * y
            + &self.yy * y * y
            + &self.x1 * x
            + &self.y1 * y
            + &self.c
    }

    /// The value with `t = 0`; the open region is nonempty above `(x, y)`
    /// for small `t` iff this is positive.
    pub fn value_xy(&self, x: &Rational, y: &Rational) -> Rational {
        self.value(x, y, &Rational::zero())
    }

    pub fn side(&self, x: &Rational, y: &Rational, t: &Rational) -> WallSide {
        match self.value(x, y, t).cmp(&Rational::zero()) {
            Ordering::Greater => WallSide::Inside,
            Ordering::Equal => WallSide::On,
            Ordering::Less => WallSide::Outside,
        }
    }

    /// The same wall moved by `(p, q)`: `x ↦ x − p`, `y ↦ y − q`.
    pub fn translated(&self, p: &Rational, q: &Rational) -> BoundWall {
        let x1 = &self.x1 - &self.xx * p * int(2) - &self.xy * q;
        let y1 = &self.y1 - &self.yy * q * int(2) - &self.xy * p;
        let c = &self.xx * p * p + &self.xy * p * q + &self.yy * q * q - &self.x1 * p - &self.y1 * q
            + &self.c;
        BoundWall {
            k: self.k.clone(),
            xx: self.xx.clone(),
            xy: self.xy.clone(),
            yy: self.yy.clone(),
            x1,
            y1,
            c,
        }
    }
}

pub fn point_side(wall: &WallQuadric, sigma: &StabilityPoint) -> Result<WallSide> {
    for cls in [&wall.v, &wall.w] {
        if central_charge_numeric(cls, sigma)?.is_zero() {
            return Err(Error::VanishingCharge);
        }
    }
    let bw = wall.bind(&sigma.h)?;
    Ok(bw.side(&sigma.x, &sigma.y, &sigma.t))
}

/// `equation` with `t = 0`.
pub fn xy_restriction(wall: &WallQuadric) -> SymPoly {
    wall.equation
        .substitute(&Bindings::new().with(Var::T, Rational::zero()))
}

// ---------------------------------------------------------------------------
// Signs under the ample constraints

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    Indefinite,
}

impl Sign {
    fn of(r: &Rational) -> Sign {
        match r.cmp(&Rational::zero()) {
            Ordering::Greater => Sign::Positive,
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
        }
    }

    fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            s => s,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Positive => "> 0",
            Sign::Negative => "< 0",
            Sign::Zero => "= 0",
            Sign::Indefinite => "of indefinite sign",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignCertificate {
    /// `p = constant · Π factors`, each factor of known sign.
    Factored {
        constant: Rational,
        factors: Vec<&'static str>,
    },
    /// Sampled on a fixed grid of admissible `(a, b)`; not a proof.
    Sampled { samples: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignDecision {
    pub sign: Sign,
    pub certificate: SignCertificate,
}

impl SignDecision {
    pub fn is_certified(&self) -> bool {
        matches!(self.certificate, SignCertificate::Factored { .. })
    }
}

const FACTOR_TABLE: [(&str, i64, i64); 8] = [
    ("a", 1, 0),
    ("b", 0, 1),
    ("b-a", -1, 1),
    ("2b-a", -1, 2),
    ("a-2b", 1, -2),
    ("a+b", 1, 1),
    ("a+2b", 1, 2),
    ("2a+b", 2, 1),
];

/// Sign of a table factor on the whole ample cone, if constant there.
fn factor_sign(surface: SurfaceKind, name: &str) -> Option<Sign> {
    match (surface, name) {
        (_, "a" | "b" | "a+b" | "a+2b" | "2a+b") => Some(Sign::Positive),
        (SurfaceKind::BlpP2, "b-a" | "2b-a") => Some(Sign::Positive),
        (SurfaceKind::BlpP2, "a-2b") => Some(Sign::Negative),
        _ => None,
    }
}

pub fn constraint_text(surface: SurfaceKind) -> &'static str {
    match surface {
        SurfaceKind::P1xP1 => "a>0, b>0",
        SurfaceKind::BlpP2 => "b>a>0",
    }
}

/// Decides the sign of a polynomial in `a, b` on the ample cone.
pub fn sign_under_constraints(p: &SymPoly, surface: SurfaceKind) -> Result<SignDecision> {
    if [Var::X, Var::Y, Var::T].iter().any(|v| p.involves(*v)) {
        return Err(Error::InvalidArgument(format!("{p} involves more than a, b")));
    }
    let mut rest = p.clone();
    let mut factors = Vec::new();
    let mut sign = Sign::Positive;
    'outer: loop {
        if rest.as_constant().is_some() {
            break;
        }
        for (name, ca, cb) in FACTOR_TABLE {
            let Some(s) = factor_sign(surface, name) else { continue };
            let f = SymPoly::a().scale(&int(ca)) + SymPoly::b().scale(&int(cb));
            if let Some(q) = rest.div_exact(&f) {
                rest = q;
                factors.push(name);
                if s == Sign::Negative {
                    sign = sign.flip();
                }
                continue 'outer;
            }
        }
        break;
    }
    if let Some(c) = rest.as_constant() {
        let sign = match Sign::of(&c) {
            Sign::Zero => Sign::Zero,
            Sign::Negative => sign.flip(),
            _ => sign,
        };
        return Ok(SignDecision {
            sign,
            certificate: SignCertificate::Factored { constant: c, factors },
        });
    }
    let grid = [rat(1, 4), rat(1, 2), int(1), rat(3, 2), int(2), int(3), int(5), int(8)];
    let mut seen: Option<Sign> = None;
    let mut samples = 0;
    for a in &grid {
        for b in &grid {
            if !surface.is_ample(a, b) {
                continue;
            }
            samples += 1;
            let s = Sign::of(&p.eval(&Bindings::new().with(Var::A, a.clone()).with(Var::B, b.clone()))?);
            seen = match seen {
                None => Some(s),
                Some(prev) if prev == s => Some(prev),
                Some(_) => Some(Sign::Indefinite),
            };
        }
    }
    Ok(SignDecision {
        sign: seen.unwrap_or(Sign::Indefinite),
        certificate: SignCertificate::Sampled { samples },
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
    ParabolaOrDegenerate,
}

impl ConicKind {
    pub fn name(self) -> &'static str {
        match self {
            ConicKind::Ellipse => "ellipse",
            ConicKind::Hyperbola => "hyperbola",
            ConicKind::ParabolaOrDegenerate => "parabola-or-degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicClass {
    pub kind: ConicKind,
    pub surface: SurfaceKind,
    /// `B² − 4AC` of the `xy`-part of the integral form.
    pub discriminant: SymPoly,
    pub decision: SignDecision,
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; discriminant = ", self.kind.name())?;
        match &self.decision.certificate {
            SignCertificate::Factored { constant, factors } if !factors.is_empty() => {
                write!(f, "{constant}")?;
                for name in factors {
                    if name.len() == 1 {
                        write!(f, "*{name}")?;
                    } else {
                        write!(f, "*({name})")?;
                    }
                }
            }
            _ => write!(f, "{}", self.discriminant)?,
        }
        write!(
            f,
            " {} under {}",
            self.decision.sign.symbol(),
            constraint_text(self.surface)
        )?;
        if !self.decision.is_certified() {
            f.write_str(" (sampled, not certified)")?;
        }
        Ok(())
    }
}

/// Classifies the horizontal slices `t = const` of a wall.
pub fn classify_fixed_t_conic(wall: &WallQuadric) -> Result<ConicClass> {
    let form = wall.integral_form();
    let xy = [Var::X, Var::Y];
    let quad = |ex: u32, ey: u32| form.coefficient(&xy, &[ex, ey]);
    let (a, b, c) = (quad(2, 0), quad(1, 1), quad(0, 2));
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::Degenerate(format!(
            "wall {} has no quadratic xy-part",
            wall.equation
        )));
    }
    let disc = &b * &b - (&a * &c).scale(&int(4));
    let decision = sign_under_constraints(&disc, wall.surface)?;
    let kind = match decision.sign {
        Sign::Negative => ConicKind::Ellipse,
        Sign::Positive => ConicKind::Hyperbola,
        Sign::Zero | Sign::Indefinite => ConicKind::ParabolaOrDegenerate,
    };
    Ok(ConicClass {
        kind,
        surface: wall.surface,
        discriminant: disc,
        decision,
    })
}

// ---------------------------------------------------------------------------
// Tangency

fn gradient_at(curve: &SymPoly, point: (&Rational, &Rational)) -> (SymPoly, SymPoly) {
    let at = Bindings::new()
        .with(Var::X, point.0.clone())
        .with(Var::Y, point.1.clone());
    (
        curve.derivative(Var::X).substitute(&at),
        curve.derivative(Var::Y).substitute(&at),
    )
}

fn check_on(curve: &SymPoly, point: (&Rational, &Rational), what: &str) -> Result<()> {
    let at = Bindings::new()
        .with(Var::X, point.0.clone())
        .with(Var::Y, point.1.clone());
    if !curve.substitute(&at).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "point ({}, {}) is not on the {what} {curve}",
            point.0, point.1
        )));
    }
    Ok(())
}

/// The tangent line `∇f(p)·((x, y) − p)` of a curve `f = 0` at `p`.
pub fn tangent_line(curve: &SymPoly, point: (&Rational, &Rational)) -> Result<SymPoly> {
    check_on(curve, point, "curve")?;
    let (gx, gy) = gradient_at(curve, point);
    if gx.is_zero() && gy.is_zero() {
        return Err(Error::Degenerate("singular point has no tangent line".into()));
    }
    let dx = SymPoly::x() - SymPoly::constant(point.0.clone());
    let dy = SymPoly::y() - SymPoly::constant(point.1.clone());
    Ok(&gx * &dx + &gy * &dy)
}

/// Whether `line` is tangent to `conic` at `point`, identically in `a, b`.
pub fn tangency_check(conic: &SymPoly, line: &SymPoly, point: (&Rational, &Rational)) -> Result<bool> {
    if line.degree_in(Var::X) > 1 || line.degree_in(Var::Y) > 1 || line.derivative(Var::X).involves(Var::Y) {
        return Err(Error::InvalidArgument(format!("{line} is not linear in x, y")));
    }
    curves_tangent_at(conic, line, point)
}

/// Whether two curves pass through `point` with proportional non-zero
/// gradients there, identically in `a, b`.
pub fn curves_tangent_at(f: &SymPoly, g: &SymPoly, point: (&Rational, &Rational)) -> Result<bool> {
    check_on(f, point, "curve")?;
    check_on(g, point, "curve")?;
    let (fx, fy) = gradient_at(f, point);
    let (gx, gy) = gradient_at(g, point);
    if (fx.is_zero() && fy.is_zero()) || (gx.is_zero() && gy.is_zero()) {
        return Err(Error::Degenerate("singular point".into()));
    }
    Ok((&fx * &gy - &fy * &gx).is_zero())
}

// ---------------------------------------------------------------------------
// Vertical planes

/// The vertical plane over the line `base + s·dir` of the `xy`-plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalPlane {
    pub base: [Rational; 2],
    pub dir: [Rational; 2],
}

impl VerticalPlane {
    pub fn new(base: [Rational; 2], dir: [Rational; 2]) -> Result<Self> {
        if dir[0].is_zero() && dir[1].is_zero() {
            return Err(Error::Degenerate("plane direction is zero".into()));
        }
        Ok(VerticalPlane { base, dir })
    }

    /// The plane over `αx + βy + γ = 0`, with direction `(−β, α)`.
    pub fn from_linear(l: &SymPoly) -> Result<Self> {
        if [Var::T, Var::A, Var::B].iter().any(|v| l.involves(*v)) || l.total_degree() > 1 {
            return Err(Error::InvalidArgument(format!("{l} is not a linear form in x, y")));
        }
        let coeff = |m: [u32; 2]| {
            l.coefficient(&[Var::X, Var::Y], &m)
                .as_constant()
                .unwrap_or_else(Rational::zero)
        };
        let (al, be, ga) = (coeff([1, 0]), coeff([0, 1]), coeff([0, 0]));
        let base = if !be.is_zero() {
            [Rational::zero(), -&ga / &be]
        } else if !al.is_zero() {
            [-&ga / &al, Rational::zero()]
        } else {
            return Err(Error::Degenerate(format!("{l} defines no line")));
        };
        Self::new(base, [-be, al])
    }

    /// The plane through `(x0, y0)` in the direction of `H` itself, on which
    /// walls restrict to semicircles.
    pub fn along_h(x0: Rational, y0: Rational, h: &AmpleClass) -> Self {
        VerticalPlane {
            base: [x0, y0],
            dir: [h.a.clone(), h.b.clone()],
        }
    }

    /// The plane `D·H = μ H²`.
    pub fn slope_plane(mu: &Rational, h: &AmpleClass) -> Self {
        let s = h.surface;
        let hc = h.class();
        let m = s.intersection_matrix();
        let lin = [
            &hc.0[0] * int(m[0][0]) + &hc.0[1] * int(m[1][0]),
            &hc.0[0] * int(m[0][1]) + &hc.0[1] * int(m[1][1]),
        ];
        VerticalPlane {
            base: [mu * &hc.0[0], mu * &hc.0[1]],
            dir: [lin[1].clone(), -&lin[0]],
        }
    }

    pub fn point_at(&self, s: &Rational) -> (Rational, Rational) {
        (&self.base[0] + s * &self.dir[0], &self.base[1] + s * &self.dir[1])
    }
}

/// The restriction `k t² + q s² + l s + c` of a bound wall to a plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneRestriction {
    pub k: Rational,
    pub q: Rational,
    pub l: Rational,
    pub c: Rational,
}

impl PlaneRestriction {
    pub fn new(bw: &BoundWall, plane: &VerticalPlane) -> PlaneRestriction {
        let [x0, y0] = &plane.base;
        let [dx, dy] = &plane.dir;
        let q = &bw.xx * dx * dx + &bw.xy * dx * dy + &bw.yy * dy * dy;
        let l = &bw.xx * x0 * dx * int(2)
            + &bw.xy * (x0 * dy + y0 * dx)
            + &bw.yy * y0 * dy * int(2)
            + &bw.x1 * dx
            + &bw.y1 * dy;
        let c = bw.value_xy(x0, y0);
        PlaneRestriction { k: bw.k.clone(), q, l, c }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneSection {
    /// `t² + aspect·(s − center)² = radius2` with `t > 0`.
    Semicircle {
        center: Rational,
        aspect: Rational,
        radius2: Rational,
    },
    VerticalLine { s: Rational },
    Empty,
    /// Not a semicircle, e.g. a hyperbola in the plane.
    Other(PlaneRestriction),
}

pub fn section_of(r: &PlaneRestriction) -> Result<PlaneSection> {
    let PlaneRestriction { k, q, l, c } = r;
    if k.is_zero() && q.is_zero() {
        if l.is_zero() {
            return if c.is_zero() {
                Err(Error::Degenerate("wall contains the whole plane".into()))
            } else {
                Ok(PlaneSection::Empty)
            };
        }
        return Ok(PlaneSection::VerticalLine { s: -c / l });
    }
    if k.is_zero() || q.is_zero() || (q / k).is_negative() {
        return Ok(PlaneSection::Other(r.clone()));
    }
    let center = -l / (q * int(2));
    let big_r = q * &center * &center - c;
    let radius2 = big_r / k;
    if !radius2.is_positive() {
        return Ok(PlaneSection::Empty);
    }
    Ok(PlaneSection::Semicircle {
        center,
        aspect: q / k,
        radius2,
    })
}

pub fn wall_in_vertical_plane(
    wall: &WallQuadric,
    plane: &VerticalPlane,
    h: &AmpleClass,
) -> Result<PlaneSection> {
    let bw = wall.bind(h)?;
    section_of(&PlaneRestriction::new(&bw, plane))
}

/// Whether two plane sections meet at some point with `t > 0`. Coincident
/// curves do not count as crossing.
pub fn sections_cross(u: &PlaneSection, v: &PlaneSection) -> Result<bool> {
    use PlaneSection::*;
    match (u, v) {
        (Empty, _) | (_, Empty) => Ok(false),
        (VerticalLine { .. }, VerticalLine { .. }) => Ok(false),
        (
            Semicircle { center, aspect, radius2 },
            VerticalLine { s },
        )
        | (
            VerticalLine { s },
            Semicircle { center, aspect, radius2 },
        ) => {
            let d = s - center;
            Ok(aspect * &d * &d < *radius2)
        }
        (
            Semicircle { center: c1, aspect: k1, radius2: r1 },
            Semicircle { center: c2, aspect: k2, radius2: r2 },
        ) => {
            if k1 != k2 {
                return Err(Error::UnsupportedShape("semicircles of different aspect".into()));
            }
            if c1 == c2 {
                return Ok(false);
            }
            // k[(s−c1)² − (s−c2)²] = r1 − r2 is linear in s.
            let s = (c1 * c1 - c2 * c2 - (r1 - r2) / k1) / ((c1 - c2) * int(2));
            let d = &s - c1;
            Ok(k1 * &d * &d < *r1)
        }
        _ => Err(Error::UnsupportedShape("crossing test needs semicircles or lines".into())),
    }
}

/// Whether the wall meets the plane `D·H/H² = μ` somewhere with `t > 0`.
pub fn wall_crosses_slope_plane(wall: &WallQuadric, mu: &Rational, h: &AmpleClass) -> Result<bool> {
    let bw = wall.bind(h)?;
    let r = PlaneRestriction::new(&bw, &VerticalPlane::slope_plane(mu, h));
    let PlaneRestriction { k, q, l, c } = &r;
    if k.is_zero() {
        // Any t works as soon as the xy-line meets the wall's trace.
        return Ok(if q.is_zero() {
            !l.is_zero() || c.is_zero()
        } else {
            l * l - q * c * int(4) >= Rational::zero()
        });
    }
    // Need s with sign(k)·(q s² + l s + c) < 0.
    let (q, l, c) = if k.is_positive() {
        (q.clone(), l.clone(), c.clone())
    } else {
        (-q, -l, -c)
    };
    Ok(if q.is_negative() {
        true
    } else if q.is_zero() {
        !l.is_zero() || c.is_negative()
    } else {
        &l * &l - &q * &c * int(4) > Rational::zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::poly;
    use SurfaceKind::*;

    fn lb(s: SurfaceKind, p: i64, q: i64) -> ChernCharacter {
        ChernCharacter::line_bundle_ints(s, p, q)
    }

    fn ample(s: SurfaceKind, a: i64, b: i64) -> AmpleClass {
        AmpleClass::new(s, int(a), int(b)).unwrap()
    }

    fn sigma(s: SurfaceKind, x: Rational, y: Rational, t: Rational, a: i64, b: i64) -> StabilityPoint {
        StabilityPoint::new(ample(s, a, b), x, y, t).unwrap()
    }

    #[test]
    fn p1p1_ellipsoid_equations() {
        let o = lb(P1xP1, 0, 0);
        let w = wall_quadric(&o, &-lb(P1xP1, -2, -1)).unwrap();
        let display = poly("t^2*a*b*(a + 2*b) + 2*a*(y^2 + y) + b*(x^2 + 2*x)");
        assert_eq!(w.equation(), &display.normalize_primitive().unwrap());
        assert_eq!(w.raw(), &display);
        assert_eq!(xy_restriction(&w), poly("2*a*(y^2 + y) + b*(x^2 + 2*x)"));
    }

    #[test]
    fn proportional_classes_are_rejected() {
        let o = lb(P1xP1, 0, 0);
        assert_eq!(wall_quadric(&o, &o).unwrap_err(), Error::ProportionalClasses);
        assert_eq!(wall_quadric(&o, &-o.scale(&3.into())).unwrap_err(), Error::ProportionalClasses);
    }

    #[test]
    fn point_side_examples() {
        let w = wall_quadric(&lb(P1xP1, 0, 0), &-lb(P1xP1, -2, -1)).unwrap();
        let inside = sigma(P1xP1, int(-1), rat(-1, 2), rat(1, 10), 2, 1);
        assert_eq!(point_side(&w, &inside).unwrap(), WallSide::Inside);
        let far = sigma(P1xP1, int(10), int(10), int(1), 2, 1);
        assert_eq!(point_side(&w, &far).unwrap(), WallSide::Outside);

        // 8t² + 4(y² + y) + (x² + 2x) vanishes at (−1, −1/2, 1/2).
        let on = sigma(P1xP1, int(-1), rat(-1, 2), rat(1, 2), 2, 1);
        assert_eq!(point_side(&w, &on).unwrap(), WallSide::On);
    }

    #[test]
    fn orientation_matches_slope_comparison() {
        use crate::charge::compare_slopes;
        let pairs = [
            (lb(P1xP1, 0, 0), -lb(P1xP1, -2, -1)),
            (lb(BlpP2, 0, 0), ChernCharacter::exceptional_torsion()),
            (lb(BlpP2, -1, 0), lb(BlpP2, 0, 0)),
        ];
        for (v, w) in pairs {
            let wall = wall_quadric(&v, &w).unwrap();
            let s = v.surface;
            let (a, b) = if s == P1xP1 { (2, 1) } else { (1, 2) };
            for (x, y, t) in [(-1, -1, 1), (1, -3, 2), (-3, 1, 1), (0, -1, 3)] {
                let sg = sigma(s, rat(x, 2), rat(y, 3), rat(t, 5), a, b);
                let zv = central_charge_numeric(&v, &sg).unwrap();
                let zw = central_charge_numeric(&w, &sg).unwrap();
                if !zv.in_upper_half_plane() || !zw.in_upper_half_plane() {
                    continue;
                }
                let expected = match compare_slopes(&zv, &zw).unwrap() {
                    Ordering::Greater => WallSide::Inside,
                    Ordering::Equal => WallSide::On,
                    Ordering::Less => WallSide::Outside,
                };
                assert_eq!(point_side(&wall, &sg).unwrap(), expected);
            }
        }
    }

    #[test]
    fn bound_wall_translation_matches_twist() {
        let w = wall_quadric(&lb(BlpP2, 0, 0), &-lb(BlpP2, -1, -2)).unwrap();
        let h = ample(BlpP2, 1, 3);
        let moved = w.twisted(&NsClass::ints(2, -1)).unwrap().bind(&h).unwrap();
        let bw = w.bind(&h).unwrap().translated(&int(2), &int(-1));
        // Twisting may flip the normalization sign; compare up to that.
        for (x, y, t) in [(0, 0, 1), (1, 2, 3), (-2, 5, 1)] {
            let (x, y, t) = (rat(x, 3), rat(y, 2), rat(t, 4));
            assert_eq!(bw.side(&x, &y, &t), moved.side(&x, &y, &t));
            let r = bw.value(&x, &y, &t);
            let m = moved.value(&x, &y, &t);
            assert!(r.is_zero() == m.is_zero());
        }
    }

    #[test]
    fn sign_table_examples() {
        let d = poly("12*a^2 - 24*a*b");
        let dec = sign_under_constraints(&d, BlpP2).unwrap();
        assert_eq!(dec.sign, Sign::Negative);
        assert!(dec.is_certified());
        let dec = sign_under_constraints(&poly("-8*a*b"), P1xP1).unwrap();
        assert_eq!(dec.sign, Sign::Negative);
        // b − a has no fixed sign on P1xP1.
        let dec = sign_under_constraints(&poly("b - a"), P1xP1).unwrap();
        assert_eq!(dec.sign, Sign::Indefinite);
        assert!(!dec.is_certified());
        // Does not factor over the table but is positive.
        let dec = sign_under_constraints(&poly("a^2 + b^2"), P1xP1).unwrap();
        assert_eq!(dec.sign, Sign::Positive);
        assert!(!dec.is_certified());
        assert_eq!(sign_under_constraints(&SymPoly::zero(), P1xP1).unwrap().sign, Sign::Zero);
    }

    #[test]
    fn classification_display() {
        let w = wall_quadric(&lb(BlpP2, 0, 0), &-lb(BlpP2, -1, -2)).unwrap();
        let c = classify_fixed_t_conic(&w).unwrap();
        assert_eq!(c.kind, ConicKind::Ellipse);
        assert_eq!(c.to_string(), "ellipse; discriminant = -12*a*(2b-a) < 0 under b>a>0");
    }

    #[test]
    fn tangency_examples() {
        let conic = poly("x^2 + y^2 - 1");
        assert!(tangency_check(&conic, &poly("y - 1"), (&int(0), &int(1))).unwrap());
        let e = poly("2*a*(y^2 + y) + b*(x^2 + 2*x)");
        assert!(tangency_check(&e, &poly("a*y + b*x"), (&int(0), &int(0))).unwrap());
        assert!(tangency_check(&e, &poly("a*(y + 1) + b*(x + 2)"), (&int(-2), &int(-1))).unwrap());
        assert!(!tangency_check(&e, &poly("a*y - b*x"), (&int(0), &int(0))).unwrap());
        assert!(tangency_check(&e, &poly("y"), (&int(1), &int(1))).is_err());
        let tl = tangent_line(&e, (&int(0), &int(0))).unwrap();
        assert_eq!(tl.normalize_primitive().unwrap(), poly("a*y + b*x").normalize_primitive().unwrap());
    }

    #[test]
    fn vertical_plane_sections() {
        let w = wall_quadric(&lb(P1xP1, 0, 0), &-lb(P1xP1, -2, -1)).unwrap();
        let h = ample(P1xP1, 1, 1);
        let diag = VerticalPlane::from_linear(&poly("x - y")).unwrap();
        match wall_in_vertical_plane(&w, &diag, &h).unwrap() {
            PlaneSection::Semicircle { aspect, radius2, .. } => {
                assert_eq!(aspect, int(1));
                assert!(radius2.is_positive());
            }
            other => panic!("expected a semicircle, got {other:?}"),
        }
        let far = VerticalPlane::from_linear(&poly("x + y - 10")).unwrap();
        assert_eq!(wall_in_vertical_plane(&w, &far, &h).unwrap(), PlaneSection::Empty);

        // Equal μ_H on a plane along H gives a vertical line.
        let v = lb(P1xP1, 1, -1);
        let w2 = wall_quadric(&lb(P1xP1, 0, 0), &v).unwrap();
        let plane = VerticalPlane::along_h(int(0), int(1), &h);
        assert!(matches!(
            wall_in_vertical_plane(&w2, &plane, &h).unwrap(),
            PlaneSection::VerticalLine { .. }
        ));
    }

    #[test]
    fn crossing_of_sections() {
        let c = |center: i64, r2: i64| PlaneSection::Semicircle {
            center: int(center),
            aspect: int(1),
            radius2: int(r2),
        };
        assert!(sections_cross(&c(0, 4), &c(2, 4)).unwrap());
        assert!(!sections_cross(&c(0, 1), &c(0, 4)).unwrap());
        assert!(!sections_cross(&c(0, 1), &c(5, 1)).unwrap());
        // Nested with different centers.
        assert!(!sections_cross(&c(0, 16), &c(1, 1)).unwrap());
        // Tangent at t = 0 only.
        assert!(!sections_cross(&c(0, 1), &c(2, 1)).unwrap());
        // Unequal radii: they meet at s = 2/3.
        assert!(sections_cross(&c(0, 4), &c(3, 9)).unwrap());
        assert!(sections_cross(&c(3, 9), &c(0, 4)).unwrap());
        let far = |center: Rational, r2: Rational| PlaneSection::Semicircle { center, aspect: int(1), radius2: r2 };
        assert!(!sections_cross(&far(rat(5, 2), rat(21, 4)), &far(rat(-9, 5), rat(56, 25))).unwrap());
        let line = PlaneSection::VerticalLine { s: int(1) };
        assert!(sections_cross(&c(0, 4), &line).unwrap());
        assert!(!sections_cross(&c(0, 1), &line).unwrap());
    }

    #[test]
    fn slope_plane_crossing() {
        let h = ample(BlpP2, 1, 2);
        // W(O(−E), O_E(E)) against the plane of μ_H(O(−E)).
        let sub = lb(BlpP2, -1, 0);
        let w = wall_quadric(&sub, &ChernCharacter::exceptional_torsion()).unwrap();
        let hh = BlpP2.intersect(&h.class(), &h.class());
        let mu = BlpP2.intersect(&sub.c1, &h.class()) / &hh;
        // On its own slope plane Im Z(O(−E)) vanishes, so the wall can only
        // meet it where Z(O(−E)) = 0, which for a line bundle forces t = 0.
        assert_eq!(mu, rat(-1, 3));
        assert!(!wall_crosses_slope_plane(&w, &mu, &h).unwrap());
        // The hyperboloid does reach the planes further out.
        assert!(wall_crosses_slope_plane(&w, &int(-1), &h).unwrap());
        assert!(wall_crosses_slope_plane(&w, &int(1), &h).unwrap());
        assert!(!wall_crosses_slope_plane(&w, &int(0), &h).unwrap());

        let ell = wall_quadric(&lb(P1xP1, 0, 0), &-lb(P1xP1, -2, -1)).unwrap();
        assert!(!wall_crosses_slope_plane(&ell, &int(1000), &ample(P1xP1, 2, 1)).unwrap());
        // The tangent plane bx + ay = 0 touches the ellipse only at t = 0.
        assert!(!wall_crosses_slope_plane(&ell, &int(0), &ample(P1xP1, 2, 1)).unwrap());
        assert!(wall_crosses_slope_plane(&ell, &rat(-1, 4), &ample(P1xP1, 2, 1)).unwrap());
    }
}
