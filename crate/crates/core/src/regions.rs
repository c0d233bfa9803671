//! Quiver regions as explicit conjunctions of exact sign conditions, the
//! generic rotatability test they are checked against, coverage of the
//! `xy`-plane by translated regions, and the bridge to King stability.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::charge::{
    central_charge_numeric, compare_slopes, heart_side, slope_cross, ChargeValue, HeartSide,
    StabilityPoint,
};
use crate::error::{Error, Result};
use crate::helix::{dual_collection, ExcCollection, ExcObject};
use crate::lattice::{rational_json, AmpleClass, ChernCharacter, NsClass, SurfaceKind};
use crate::linalg;
use crate::notation::with_shift;
use crate::symkernel::{int, rat, Bindings, Rational, SymPoly, Var};
use crate::walls::{wall_quadric, BoundWall, WallQuadric, WallSide};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionKind {
    /// `F′` on `P1×P1`.
    P1p1,
    /// `F′` on the blow-up.
    BlpPrime,
    /// `F″` on the blow-up.
    BlpDoublePrime,
}

impl RegionKind {
    pub fn name(self) -> &'static str {
        match self {
            RegionKind::P1p1 => "F'",
            RegionKind::BlpPrime => "F'",
            RegionKind::BlpDoublePrime => "F''",
        }
    }

    pub fn surface(self) -> SurfaceKind {
        match self {
            RegionKind::P1p1 => SurfaceKind::P1xP1,
            _ => SurfaceKind::BlpP2,
        }
    }

    pub fn families(surface: SurfaceKind) -> &'static [RegionKind] {
        match surface {
            SurfaceKind::P1xP1 => &[RegionKind::P1p1],
            SurfaceKind::BlpP2 => &[RegionKind::BlpPrime, RegionKind::BlpDoublePrime],
        }
    }

    /// The collection `E` whose dual cuts out this region.
    pub fn collection(self) -> ExcCollection {
        use SurfaceKind::*;
        let lb = ExcObject::line_bundle;
        let (s, objects) = match self {
            RegionKind::P1p1 => {
                let g = ChernCharacter::new(P1xP1, 3, NsClass::ints(1, 1), int(-1));
                (P1xP1, vec![lb(P1xP1, 0, 0), ExcObject::new("G", g, 0).unwrap(), lb(P1xP1, 1, 0), lb(P1xP1, 0, 1)])
            }
            RegionKind::BlpPrime => {
                let g = ChernCharacter::new(BlpP2, 2, NsClass::ints(1, 1), rat(-1, 2));
                (BlpP2, vec![lb(BlpP2, 0, 0), ExcObject::new("G1", g, 0).unwrap(), lb(BlpP2, 0, 1), lb(BlpP2, 1, 1)])
            }
            RegionKind::BlpDoublePrime => {
                let g = ChernCharacter::new(BlpP2, 2, NsClass::ints(1, 1), rat(-1, 2));
                (BlpP2, vec![lb(BlpP2, 0, 0), lb(BlpP2, 1, 0), ExcObject::new("G2", g, 0).unwrap(), lb(BlpP2, 1, 1)])
            }
        };
        ExcCollection::new(s, objects).expect("fixture collections are independent")
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `c1(L)·H − D·H`, positive exactly when `L` itself lies in the heart.
pub fn heart_form(l: &ChernCharacter) -> SymPoly {
    let s = l.surface;
    let m = s.intersection_matrix();
    let d = [SymPoly::x(), SymPoly::y()];
    let h = [SymPoly::a(), SymPoly::b()];
    let c = [SymPoly::constant(l.c1.0[0].clone()), SymPoly::constant(l.c1.0[1].clone())];
    let mut out = SymPoly::zero();
    for i in 0..2 {
        for j in 0..2 {
            if m[i][j] != 0 {
                let k = int(m[i][j]);
                out += &(&c[i] * &h[j]).scale(&k);
                out += &(&d[i] * &h[j]).scale(&-k);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `form > 0` (strict) or `form ≥ 0`.
    HeartLine {
        label: String,
        form: SymPoly,
        strict: bool,
    },
    /// Strictly on `side` of `wall`.
    WallSide { wall: WallQuadric, side: WallSide },
}

impl Constraint {
    fn translated(&self, p: i64, q: i64) -> Result<Constraint> {
        Ok(match self {
            Constraint::HeartLine { label, form, strict } => Constraint::HeartLine {
                label: label.clone(),
                form: form.translate(&[(Var::X, int(-p)), (Var::Y, int(-q))]),
                strict: *strict,
            },
            Constraint::WallSide { wall, side } => Constraint::WallSide {
                wall: wall.twisted(&NsClass::ints(p, q))?,
                side: *side,
            },
        })
    }

    pub fn describe(&self) -> String {
        match self {
            Constraint::HeartLine { label, form, strict } => {
                format!("{label}: {form} {} 0", if *strict { ">" } else { ">=" })
            }
            Constraint::WallSide { wall, side } => {
                let rel = match side {
                    WallSide::Inside => ">",
                    WallSide::Outside => "<",
                    WallSide::On => "=",
                };
                format!("beta({}) {rel} beta({})", wall.v, wall.w)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSpec {
    pub kind: RegionKind,
    pub twist: (i64, i64),
    /// The dual collection, in the order `(F_n, …, F_1)`.
    pub dual: ExcCollection,
    pub constraints: Vec<Constraint>,
}

fn inside(v: &ChernCharacter, w: &ChernCharacter) -> Constraint {
    Constraint::WallSide {
        wall: wall_quadric(v, w).expect("fixture classes are not proportional"),
        side: WallSide::Inside,
    }
}

fn base_region(kind: RegionKind) -> RegionSpec {
    use SurfaceKind::*;
    let dual = dual_collection(&kind.collection()).expect("fixture duals");
    let constraints = match kind {
        RegionKind::P1p1 => {
            let o = ChernCharacter::structure_sheaf(P1xP1);
            vec![
                inside(&o, &-ChernCharacter::line_bundle_ints(P1xP1, -2, -1)),
                inside(&o, &-ChernCharacter::line_bundle_ints(P1xP1, -1, -2)),
            ]
        }
        RegionKind::BlpPrime => {
            let o = ChernCharacter::structure_sheaf(BlpP2);
            vec![
                inside(&o, &ChernCharacter::exceptional_torsion()),
                inside(&o, &-ChernCharacter::line_bundle_ints(BlpP2, -1, -2)),
            ]
        }
        RegionKind::BlpDoublePrime => {
            let o = ChernCharacter::structure_sheaf(BlpP2);
            let bottom = -ChernCharacter::line_bundle_ints(BlpP2, -1, -2);
            vec![
                inside(&o, &bottom),
                inside(&ChernCharacter::exceptional_torsion(), &bottom),
                Constraint::HeartLine {
                    label: "O in heart".into(),
                    form: heart_form(&o),
                    strict: true,
                },
                Constraint::HeartLine {
                    label: "O(-E-2F)[1] in heart".into(),
                    form: -heart_form(&ChernCharacter::line_bundle_ints(BlpP2, -1, -2)),
                    strict: false,
                },
            ]
        }
    };
    RegionSpec { kind, twist: (0, 0), dual, constraints }
}

/// `R_{F ⊗ O(p, q)}`: the same conditions with `(x, y)` moved by `(p, q)`.
pub fn region(kind: RegionKind, twist: (i64, i64)) -> Result<RegionSpec> {
    let base = base_region(kind);
    if twist == (0, 0) {
        return Ok(base);
    }
    let (p, q) = twist;
    let constraints = base
        .constraints
        .iter()
        .map(|c| c.translated(p, q))
        .collect::<Result<Vec<_>>>()?;
    let dual = crate::helix::twist_collection(&base.dual, &NsClass::ints(p, q))?;
    Ok(RegionSpec { kind, twist, dual, constraints })
}

pub fn region_p1p1(twist: (i64, i64)) -> Result<RegionSpec> {
    region(RegionKind::P1p1, twist)
}

pub fn region_blp2_fprime(twist: (i64, i64)) -> Result<RegionSpec> {
    region(RegionKind::BlpPrime, twist)
}

pub fn region_blp2_fdoubleprime(twist: (i64, i64)) -> Result<RegionSpec> {
    region(RegionKind::BlpDoublePrime, twist)
}

impl RegionSpec {
    pub fn surface(&self) -> SurfaceKind {
        self.kind.surface()
    }

    pub fn bind(&self, h: &AmpleClass) -> Result<BoundRegion> {
        if h.surface != self.surface() {
            return Err(Error::SurfaceMismatch(self.surface(), h.surface));
        }
        let b = Bindings::new().with(Var::A, h.a.clone()).with(Var::B, h.b.clone());
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                Ok(match c {
                    Constraint::HeartLine { form, strict, .. } => {
                        let f = form.substitute(&b);
                        let co = |e: [u32; 2]| {
                            f.coefficient(&[Var::X, Var::Y], &e)
                                .as_constant()
                                .unwrap_or_else(Rational::zero)
                        };
                        BoundConstraint::Line {
                            cx: co([1, 0]),
                            cy: co([0, 1]),
                            c0: co([0, 0]),
                            strict: *strict,
                        }
                    }
                    Constraint::WallSide { wall, side } => BoundConstraint::Wall {
                        wall: wall.bind(h)?,
                        side: *side,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundRegion { constraints })
    }

    pub fn contains(&self, sigma: &StabilityPoint) -> Result<bool> {
        Ok(self.bind(&sigma.h)?.contains(&sigma.x, &sigma.y, &sigma.t))
    }

    /// Names of the constraints that fail at `sigma`.
    pub fn failed_constraints(&self, sigma: &StabilityPoint) -> Result<Vec<String>> {
        let bound = self.bind(&sigma.h)?;
        Ok(self
            .constraints
            .iter()
            .zip(&bound.constraints)
            .filter(|(_, b)| !b.holds(&sigma.x, &sigma.y, &sigma.t))
            .map(|(c, _)| c.describe())
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundConstraint {
    Line {
        cx: Rational,
        cy: Rational,
        c0: Rational,
        strict: bool,
    },
    Wall { wall: BoundWall, side: WallSide },
}

impl BoundConstraint {
    pub fn holds(&self, x: &Rational, y: &Rational, t: &Rational) -> bool {
        match self {
            BoundConstraint::Line { cx, cy, c0, strict } => {
                let v = cx * x + cy * y + c0;
                if *strict {
                    v.is_positive()
                } else {
                    !v.is_negative()
                }
            }
            BoundConstraint::Wall { wall, side } => wall.side(x, y, t) == *side,
        }
    }

    fn translated(&self, p: &Rational, q: &Rational) -> BoundConstraint {
        match self {
            BoundConstraint::Line { cx, cy, c0, strict } => BoundConstraint::Line {
                cx: cx.clone(),
                cy: cy.clone(),
                c0: c0 - cx * p - cy * q,
                strict: *strict,
            },
            BoundConstraint::Wall { wall, side } => BoundConstraint::Wall {
                wall: wall.translated(p, q),
                side: *side,
            },
        }
    }
}

/// A region with `H` substituted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRegion {
    pub constraints: Vec<BoundConstraint>,
}

impl BoundRegion {
    pub fn contains(&self, x: &Rational, y: &Rational, t: &Rational) -> bool {
        self.constraints.iter().all(|c| c.holds(x, y, t))
    }

    pub fn translated(&self, p: &Rational, q: &Rational) -> BoundRegion {
        BoundRegion {
            constraints: self.constraints.iter().map(|c| c.translated(p, q)).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Rotatability

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotatabilityReport {
    pub satisfied: bool,
    pub failures: Vec<String>,
}

/// Whether some rotation `σ[φ]`, `0 < φ < 1`, has every object of the dual
/// collection in its heart.
///
/// Each object `F = cls[k]` has exactly one shift `A` of `cls` in the heart.
/// `F` is reached iff `A = F` and `A` survives the rotation, or `A[1] = F`
/// and `A` is shifted by it. A common `φ` exists iff every survivor has
/// strictly larger slope than every shifted object.
pub fn rotatability_conditions(dual: &ExcCollection, sigma: &StabilityPoint) -> Result<RotatabilityReport> {
    let mut failures = Vec::new();
    let mut stay: Vec<(String, ChargeValue)> = Vec::new();
    let mut moved: Vec<(String, ChargeValue)> = Vec::new();
    for f in &dual.objects {
        let side = heart_side(&f.cls, sigma)?;
        let heart_shift = match side {
            HeartSide::Sheaf => 0,
            HeartSide::Shifted => 1,
        };
        let name = with_shift(&f.label, heart_shift);
        let mut z = central_charge_numeric(&f.cls, sigma)?;
        if heart_shift == 1 {
            z = -&z;
        }
        if !z.in_upper_half_plane() {
            return Err(Error::Internal(format!("{name} has charge {z} outside the upper half plane")));
        }
        match f.shift - heart_shift {
            0 => stay.push((name, z)),
            1 => moved.push((name, z)),
            _ => failures.push(format!("heart: {} needs {name} one step below it", f)),
        }
    }
    for (sn, sz) in &stay {
        for (mn, mz) in &moved {
            if compare_slopes(sz, mz)? != std::cmp::Ordering::Greater {
                failures.push(format!("slope: beta({sn}) > beta({mn}) fails"));
            }
        }
    }
    if stay.is_empty() {
        for (mn, mz) in &moved {
            if mz.im.is_zero() {
                failures.push(format!("phase: {mn} has phase 1 and cannot be rotated"));
            }
        }
    }
    Ok(RotatabilityReport { satisfied: failures.is_empty(), failures })
}

// ---------------------------------------------------------------------------
// Line bundle stability on the blow-up

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum LineBundleScreen {
    Stable,
    /// On the destabilizing wall: semistable, not stable.
    Semistable,
    Destabilized,
}

/// `L` can only be destabilized by `L(−E) ⊂ L`; `L[1]` only by
/// `L[1] ↠ L(E)[1]`.
pub fn line_bundle_stability_screen_blp2(l: &NsClass, sigma: &StabilityPoint) -> Result<LineBundleScreen> {
    use std::cmp::Ordering::*;
    let s = SurfaceKind::BlpP2;
    if sigma.surface() != s {
        return Err(Error::SurfaceMismatch(s, sigma.surface()));
    }
    let lb = ChernCharacter::line_bundle(s, l.clone());
    let e = NsClass::ints(1, 0);
    let z = central_charge_numeric(&lb, sigma)?;
    Ok(match heart_side(&lb, sigma)? {
        HeartSide::Sheaf => {
            let sub = ChernCharacter::line_bundle(s, l - &e);
            if heart_side(&sub, sigma)? != HeartSide::Sheaf {
                return Ok(LineBundleScreen::Stable);
            }
            match compare_slopes(&central_charge_numeric(&sub, sigma)?, &z)? {
                Greater => LineBundleScreen::Destabilized,
                Equal => LineBundleScreen::Semistable,
                Less => LineBundleScreen::Stable,
            }
        }
        HeartSide::Shifted => {
            let quot = ChernCharacter::line_bundle(s, l + &e);
            if heart_side(&quot, sigma)? != HeartSide::Shifted {
                return Ok(LineBundleScreen::Stable);
            }
            let zq = -&central_charge_numeric(&quot, sigma)?;
            match compare_slopes(&zq, &-&z)? {
                Less => LineBundleScreen::Destabilized,
                Equal => LineBundleScreen::Semistable,
                Greater => LineBundleScreen::Stable,
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Coverage

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageBox {
    pub xmin: Rational,
    pub xmax: Rational,
    pub ymin: Rational,
    pub ymax: Rational,
}

impl CoverageBox {
    pub fn square(r: i64) -> Self {
        CoverageBox { xmin: int(-r), xmax: int(r), ymin: int(-r), ymax: int(r) }
    }

    fn points(&self, step: &Rational) -> Vec<(Rational, Rational)> {
        let mut out = Vec::new();
        let mut y = self.ymin.clone();
        while y <= self.ymax {
            let mut x = self.xmin.clone();
            while x <= self.xmax {
                out.push((x.clone(), y.clone()));
                x += step;
            }
            y += step;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageConfig {
    pub t_schedule: Vec<Rational>,
    /// Only try the untranslated regions.
    pub origin_only: bool,
    /// Restrict to these region families; `None` uses all of the surface's.
    pub families: Option<Vec<RegionKind>>,
}

impl Default for CoverageConfig {
    fn default() -> Self {
        CoverageConfig {
            t_schedule: (1..=5).map(|k| rat(1, 1 << k)).collect(),
            origin_only: false,
            families: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: Rational,
    pub y: Rational,
    pub p: i64,
    pub q: i64,
    pub region: RegionKind,
    pub t: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub surface: SurfaceKind,
    pub h: AmpleClass,
    pub bbox: CoverageBox,
    pub step: Rational,
    pub results: Vec<Witness>,
    pub uncovered: Vec<(Rational, Rational)>,
}

impl CoverageReport {
    pub fn covered(&self) -> bool {
        self.uncovered.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "surface": self.surface.name(),
            "grid": {
                "xmin": rational_json(&self.bbox.xmin),
                "xmax": rational_json(&self.bbox.xmax),
                "ymin": rational_json(&self.bbox.ymin),
                "ymax": rational_json(&self.bbox.ymax),
            },
            "step": rational_json(&self.step),
            "H": [rational_json(&self.h.a), rational_json(&self.h.b)],
            "covered": self.covered(),
            "results": self.results.iter().map(|w| json!({
                "x": rational_json(&w.x),
                "y": rational_json(&w.y),
                "p": w.p,
                "q": w.q,
                "region": w.region.name(),
                "t": rational_json(&w.t),
            })).collect::<Vec<_>>(),
            "uncovered": self.uncovered.iter().map(|(x, y)| json!([rational_json(x), rational_json(y)])).collect::<Vec<_>>(),
        })
    }
}

fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().unwrap_or(0)
}

/// Finds, for each grid point, a translate and a `t` that put it inside a
/// quiver region.
pub fn coverage_check_with(
    h: &AmpleClass,
    bbox: &CoverageBox,
    step: &Rational,
    config: &CoverageConfig,
) -> Result<CoverageReport> {
    if !step.is_positive() {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    let surface = h.surface;
    let families = match &config.families {
        Some(f) if f.iter().any(|k| k.surface() != surface) => {
            return Err(Error::InvalidArgument("region family is for another surface".into()))
        }
        Some(f) => f.as_slice(),
        None => RegionKind::families(surface),
    };
    let bases = families
        .iter()
        .map(|k| Ok((*k, region(*k, (0, 0))?.bind(h)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut cache: HashMap<(i64, i64, usize), BoundRegion> = HashMap::new();
    let mut results = Vec::new();
    let mut uncovered = Vec::new();
    for (x, y) in bbox.points(step) {
        let translates: Vec<(i64, i64)> = if config.origin_only {
            vec![(0, 0)]
        } else {
            let (fx, fy) = (floor_i64(&x), floor_i64(&y));
            let mut v = Vec::new();
            for p in fx - 1..=fx + 2 {
                for q in fy - 1..=fy + 3 {
                    v.push((p, q));
                }
            }
            v
        };
        let mut found = None;
        'search: for t in &config.t_schedule {
            for &(p, q) in &translates {
                for (fi, (kind, base)) in bases.iter().enumerate() {
                    let reg = cache
                        .entry((p, q, fi))
                        .or_insert_with(|| base.translated(&int(p), &int(q)));
                    if reg.contains(&x, &y, t) {
                        found = Some(Witness { x: x.clone(), y: y.clone(), p, q, region: *kind, t: t.clone() });
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(w) => results.push(w),
            None => uncovered.push((x, y)),
        }
    }
    Ok(CoverageReport { surface, h: h.clone(), bbox: bbox.clone(), step: step.clone(), results, uncovered })
}

pub fn coverage_check(h: &AmpleClass, bbox: &CoverageBox, step: &Rational) -> Result<CoverageReport> {
    coverage_check_with(h, bbox, step, &CoverageConfig::default())
}

// ---------------------------------------------------------------------------
// King stability

/// Coordinates of a class in the basis `[F_1], …, [F_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionVector(pub Vec<i64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaWeights(pub Vec<Rational>);

impl ThetaWeights {
    pub fn pair(&self, d: &[i64]) -> Rational {
        self.0.iter().zip(d).map(|(t, di)| t * int(*di)).sum()
    }
}

/// The classes `[F_1], …, [F_n]` of a dual collection given as `(F_n, …, F_1)`.
pub fn vertex_classes(dual: &ExcCollection) -> Vec<ChernCharacter> {
    dual.objects.iter().rev().map(ExcObject::k_class).collect()
}

pub fn dimension_vector(v: &ChernCharacter, dual: &ExcCollection) -> Result<DimensionVector> {
    if dual.len() != 4 {
        return Err(Error::InvalidArgument("need a full collection of four objects".into()));
    }
    if v.surface != dual.surface {
        return Err(Error::SurfaceMismatch(v.surface, dual.surface));
    }
    let basis = vertex_classes(dual);
    // Columns are the basis vectors.
    let a: Vec<Vec<Rational>> = (0..4)
        .map(|row| basis.iter().map(|b| b.coords()[row].clone()).collect())
        .collect();
    let sol = linalg::solve(&a, &v.coords())
        .ok_or_else(|| Error::InvalidArgument("collection classes are not a basis".into()))?;
    let d = sol
        .iter()
        .map(|r| if r.is_integer() { r.to_integer().to_i64() } else { None })
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::NotIntegral)?;
    Ok(DimensionVector(d))
}

/// `θ_i = Im(conj Z(v) · Z([F_i]))`.
pub fn king_weights(v: &ChernCharacter, dual: &ExcCollection, sigma: &StabilityPoint) -> Result<ThetaWeights> {
    let zv = central_charge_numeric(v, sigma)?;
    if zv.is_zero() {
        return Err(Error::VanishingCharge);
    }
    vertex_classes(dual)
        .iter()
        .map(|f| Ok(slope_cross(&central_charge_numeric(f, sigma)?, &zv)))
        .collect::<Result<Vec<_>>>()
        .map(ThetaWeights)
}

/// Sub-dimension vectors `0 < d′ < d` with `θ·d′ > 0`. Only a necessary
/// condition for semistability: actual subrepresentations realize a subset
/// of these `d′`.
pub fn king_screen(theta: &ThetaWeights, d: &DimensionVector) -> Result<Vec<Vec<i64>>> {
    if d.0.iter().any(|x| *x < 0) {
        return Err(Error::InvalidArgument(format!("{:?} is not a dimension vector", d.0)));
    }
    let size: u128 = d.0.iter().map(|x| *x as u128 + 1).product();
    if size > 2_000_000 {
        return Err(Error::InvalidArgument("sub-vector box too large to enumerate".into()));
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; d.0.len()];
    loop {
        let proper = cur.iter().any(|c| *c != 0) && cur != d.0;
        if proper && theta.pair(&cur).is_positive() {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == cur.len() {
                return Ok(out);
            }
            if cur[i] < d.0[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}
