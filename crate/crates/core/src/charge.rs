//! Central charges `Z_{D,tH}` on the slice `S_H`, Bridgeland slopes, heart
//! membership of line bundles and torsion classes, and rotation.
//!
//! Slope comparisons are never done by division: for two charges in the
//! closed upper half plane (minus the non-negative reals) the sign of
//! `Im(conj(Z(v))·Z(u))` orders their phases, and hence their slopes.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{AmpleClass, ChernCharacter, NsClass, SurfaceKind};
use crate::symkernel::{int, rat, Bindings, Rational, SymPoly, Var};

/// A point `(x, y, t)` of the slice `S_H`, with `H` bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityPoint {
    pub h: AmpleClass,
    pub x: Rational,
    pub y: Rational,
    pub t: Rational,
}

impl StabilityPoint {
    pub fn new(h: AmpleClass, x: Rational, y: Rational, t: Rational) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
        }
        Ok(StabilityPoint { h, x, y, t })
    }

    pub fn surface(&self) -> SurfaceKind {
        self.h.surface
    }

    pub fn divisor(&self) -> NsClass {
        NsClass::new(self.x.clone(), self.y.clone())
    }

    pub fn bindings(&self) -> Bindings {
        Bindings::new()
            .with(Var::X, self.x.clone())
            .with(Var::Y, self.y.clone())
            .with(Var::T, self.t.clone())
            .with(Var::A, self.h.a.clone())
            .with(Var::B, self.h.b.clone())
    }

    /// Same `H` and `t`, divisor moved by `(dx, dy)`.
    pub fn translated(&self, dx: &Rational, dy: &Rational) -> StabilityPoint {
        StabilityPoint {
            h: self.h.clone(),
            x: &self.x + dx,
            y: &self.y + dy,
            t: self.t.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeValue {
    pub re: Rational,
    pub im: Rational,
}

impl ChargeValue {
    pub fn new(re: Rational, im: Rational) -> Self {
        ChargeValue { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `Im z > 0`, or `z` on the negative real axis.
    pub fn in_upper_half_plane(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }
}

impl std::ops::Add for &ChargeValue {
    type Output = ChargeValue;
    fn add(self, o: &ChargeValue) -> ChargeValue {
        ChargeValue::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl std::ops::Neg for &ChargeValue {
    type Output = ChargeValue;
    fn neg(self) -> ChargeValue {
        ChargeValue::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for ChargeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicCharge {
    pub re: SymPoly,
    pub im: SymPoly,
}

impl SymbolicCharge {
    pub fn eval(&self, sigma: &StabilityPoint) -> ChargeValue {
        let b = sigma.bindings();
        ChargeValue::new(
            self.re.eval(&b).expect("charge involves only x, y, t, a, b"),
            self.im.eval(&b).expect("charge involves only x, y, t, a, b"),
        )
    }

    pub fn substitute(&self, b: &Bindings) -> SymbolicCharge {
        SymbolicCharge {
            re: self.re.substitute(b),
            im: self.im.substitute(b),
        }
    }
}

impl std::ops::Add for &SymbolicCharge {
    type Output = SymbolicCharge;
    fn add(self, o: &SymbolicCharge) -> SymbolicCharge {
        SymbolicCharge {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

fn sym_intersect(s: SurfaceKind, u: &[SymPoly; 2], v: &[SymPoly; 2]) -> SymPoly {
    let m = s.intersection_matrix();
    let mut acc = SymPoly::zero();
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            if m[i][j] != 0 {
                acc += &(ui * vj).scale(&int(m[i][j]));
            }
        }
    }
    acc
}

/// `Z(v) = (−ch2 + c1·D − r/2 (D² − t²H²)) + i t (c1·H − r D·H)` with
/// `D = (x, y)` and `H = (a, b)` kept symbolic.
pub fn central_charge_symbolic(v: &ChernCharacter) -> SymbolicCharge {
    let s = v.surface;
    let d = [SymPoly::x(), SymPoly::y()];
    let h = [SymPoly::a(), SymPoly::b()];
    let c1 = [
        SymPoly::constant(v.c1.0[0].clone()),
        SymPoly::constant(v.c1.0[1].clone()),
    ];
    let r = SymPoly::constant(v.rank_q());
    let t2 = SymPoly::t().pow(2);
    let half = SymPoly::constant(rat(1, 2));

    let dd = sym_intersect(s, &d, &d);
    let hh = sym_intersect(s, &h, &h);
    let re = -SymPoly::constant(v.ch2.clone()) + sym_intersect(s, &c1, &d)
        - &(&r * &half) * &(dd - &t2 * &hh);
    let im = &SymPoly::t() * &(sym_intersect(s, &c1, &h) - &r * &sym_intersect(s, &d, &h));
    SymbolicCharge { re, im }
}

pub fn central_charge_numeric(v: &ChernCharacter, sigma: &StabilityPoint) -> Result<ChargeValue> {
    let s = v.surface;
    if s != sigma.surface() {
        return Err(Error::SurfaceMismatch(s, sigma.surface()));
    }
    let d = sigma.divisor();
    let h = sigma.h.class();
    let r = v.rank_q();
    let t2 = &sigma.t * &sigma.t;
    let re = -&v.ch2 + s.intersect(&v.c1, &d)
        - &r * rat(1, 2) * (s.intersect(&d, &d) - &t2 * s.intersect(&h, &h));
    let im = &sigma.t * (s.intersect(&v.c1, &h) - &r * s.intersect(&d, &h));
    Ok(ChargeValue::new(re, im))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinite => f.write_str("+inf"),
        }
    }
}

/// `β = −Re Z / Im Z`, `+∞` when `Im Z = 0`.
pub fn slope_of_charge(z: &ChargeValue) -> Result<Slope> {
    if z.is_zero() {
        return Err(Error::VanishingCharge);
    }
    if z.im.is_zero() {
        return Ok(Slope::Infinite);
    }
    Ok(Slope::Finite(-&z.re / &z.im))
}

pub fn bridgeland_slope(v: &ChernCharacter, sigma: &StabilityPoint) -> Result<Slope> {
    slope_of_charge(&central_charge_numeric(v, sigma)?)
}

/// `Im(conj(Z(v))·Z(u))`; positive exactly when `β(u) > β(v)` for charges in
/// the upper half plane.
pub fn slope_cross(u: &ChargeValue, v: &ChargeValue) -> Rational {
    &v.re * &u.im - &v.im * &u.re
}

/// Orders `β(u)` against `β(v)`. Both charges must lie in the upper half
/// plane (including the negative real axis), as charges of heart objects do.
pub fn compare_slopes(u: &ChargeValue, v: &ChargeValue) -> Result<Ordering> {
    for z in [u, v] {
        if z.is_zero() {
            return Err(Error::VanishingCharge);
        }
        if !z.in_upper_half_plane() {
            return Err(Error::InvalidArgument(format!(
                "charge {z} is not in the upper half plane"
            )));
        }
    }
    Ok(slope_cross(u, v).cmp(&Rational::zero()))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum HeartSide {
    /// The sheaf itself lies in the heart.
    Sheaf,
    /// Its shift `[1]` lies in the heart.
    Shifted,
}

/// Heart side of a rank-one or rank-zero class, using the un-normalized
/// comparison `c1·H − r·(D·H)`.
pub fn heart_side(v: &ChernCharacter, sigma: &StabilityPoint) -> Result<HeartSide> {
    if v.surface != sigma.surface() {
        return Err(Error::SurfaceMismatch(v.surface, sigma.surface()));
    }
    if v.rank.is_zero() {
        return Ok(HeartSide::Sheaf);
    }
    if v.rank != 1.into() {
        return Err(Error::UnsupportedShape(format!(
            "heart side is only decided for line bundles and torsion classes, got rank {}",
            v.rank
        )));
    }
    let s = v.surface;
    let h = sigma.h.class();
    let cut = s.intersect(&v.c1, &h) - s.intersect(&sigma.divisor(), &h);
    Ok(if cut.is_positive() {
        HeartSide::Sheaf
    } else {
        HeartSide::Shifted
    })
}

pub fn heart_side_line_bundle(l: &NsClass, sigma: &StabilityPoint) -> HeartSide {
    let v = ChernCharacter::line_bundle(sigma.surface(), l.clone());
    heart_side(&v, sigma).expect("line bundles have rank one")
}

/// A rotation angle `φ ∈ (0, 1)` given by a direction `(c, s)` on the ray
/// `e^{iπφ}`, `s > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationAngle {
    dir: ChargeValue,
}

impl RotationAngle {
    pub fn from_direction(c: Rational, s: Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::InvalidArgument("rotation direction needs s > 0".into()));
        }
        Ok(RotationAngle {
            dir: ChargeValue::new(c, s),
        })
    }

    /// Exact for the three rational phases with rational `tan(πφ)`.
    pub fn from_phase(phi: &Rational) -> Result<Self> {
        if !phi.is_positive() || *phi >= int(1) {
            return Err(Error::InvalidArgument(format!("phase {phi} outside (0, 1)")));
        }
        let (c, s) = if *phi == rat(1, 2) {
            (0, 1)
        } else if *phi == rat(1, 4) {
            (1, 1)
        } else if *phi == rat(3, 4) {
            (-1, 1)
        } else {
            return Err(Error::InvalidArgument(format!(
                "phase {phi} has irrational tangent; pass a direction instead"
            )));
        };
        Self::from_direction(int(c), int(s))
    }

    /// `arg Z/π > φ`: the object stays unshifted in the rotated heart.
    pub fn survives(&self, z: &ChargeValue) -> Result<bool> {
        if !z.in_upper_half_plane() {
            return Err(Error::InvalidArgument(format!(
                "charge {z} is not in the upper half plane"
            )));
        }
        Ok(slope_cross(z, &self.dir).is_positive())
    }
}

/// `Z[φ] = e^{−iπφ} Z`, exact only for `φ = 1/2`.
pub fn rotate_charge(z: &ChargeValue, phi: &Rational) -> Result<ChargeValue> {
    if !phi.is_positive() || *phi >= int(1) {
        return Err(Error::InvalidArgument(format!("phase {phi} outside (0, 1)")));
    }
    if *phi != rat(1, 2) {
        return Err(Error::InvalidArgument(format!(
            "rotation by {phi} is not exactly representable"
        )));
    }
    Ok(ChargeValue::new(z.im.clone(), -&z.re))
}

pub fn rotate_symbolic(z: &SymbolicCharge) -> SymbolicCharge {
    SymbolicCharge {
        re: z.im.clone(),
        im: -&z.re,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::poly;
    use proptest::prelude::*;
    use SurfaceKind::*;

    fn point(s: SurfaceKind, x: Rational, y: Rational, t: Rational, a: i64, b: i64) -> StabilityPoint {
        StabilityPoint::new(AmpleClass::new(s, int(a), int(b)).unwrap(), x, y, t).unwrap()
    }

    #[test]
    fn symbolic_charge_matches_closed_forms() {
        // Per-surface formulas written out independently of the intersection form.
        let v = ChernCharacter::new(P1xP1, 3, NsClass::ints(2, -1), rat(5, 2));
        let z = central_charge_symbolic(&v);
        let (r, d1, d2, c) = ("3", "2", "(-1)", "5/2");
        let re: SymPoly = format!("-{c} + {d2}*x + {d1}*y + {r}*(t^2*a*b - x*y)").parse().unwrap();
        let im: SymPoly = format!("t*({d2}*a + {d1}*b - {r}*(b*x + a*y))").parse().unwrap();
        assert_eq!(z.re, re);
        assert_eq!(z.im, im);

        let v = ChernCharacter::new(BlpP2, 2, NsClass::ints(-1, 3), rat(-1, 2));
        let z = central_charge_symbolic(&v);
        let (r, de, df, c) = ("2", "(-1)", "3", "(-1/2)");
        let re: SymPoly = format!(
            "-{c} + {df}*x + {de}*y - {de}*x + {r}*(t^2*a*b - x*y) + {r}/2*(x^2 - t^2*a^2)"
        )
        .parse()
        .unwrap();
        let im: SymPoly = format!("t*({df}*a + {de}*b - {de}*a - {r}*(b*x + a*y - a*x))")
            .parse()
            .unwrap();
        assert_eq!(z.re, re);
        assert_eq!(z.im, im);
    }

    #[test]
    fn symbolic_charge_examples() {
        let z = central_charge_symbolic(&ChernCharacter::exceptional_torsion());
        assert_eq!(z.re, poly("1/2 + y - x"));
        assert_eq!(z.im, poly("t*(b - a)"));

        let z = central_charge_symbolic(&ChernCharacter::structure_sheaf(P1xP1));
        assert_eq!(z.re, poly("t^2*a*b - x*y"));
        assert_eq!(z.im, poly("-t*(b*x + a*y)"));

        let z = central_charge_symbolic(&ChernCharacter::zero(BlpP2));
        assert!(z.re.is_zero() && z.im.is_zero());
    }

    #[test]
    fn shifted_line_bundle_charge() {
        let shifted = -ChernCharacter::line_bundle_ints(P1xP1, -2, -1);
        let z = central_charge_symbolic(&shifted);
        assert_eq!(z.re, poly("2 + x + 2*y - (t^2*a*b - x*y)"));
        assert_eq!(z.im, poly("t*(a + 2*b + b*x + a*y)"));
    }

    #[test]
    fn numeric_charge_example() {
        let o = ChernCharacter::structure_sheaf(P1xP1);
        let sigma = point(P1xP1, rat(-1, 2), rat(-1, 2), rat(1, 2), 2, 1);
        let z = central_charge_numeric(&o, &sigma).unwrap();
        assert_eq!(z, ChargeValue::new(rat(1, 4), rat(3, 4)));
        let zero = central_charge_numeric(&ChernCharacter::zero(P1xP1), &sigma).unwrap();
        assert!(zero.is_zero());
        let other = ChernCharacter::structure_sheaf(BlpP2);
        assert!(central_charge_numeric(&other, &sigma).is_err());
    }

    #[test]
    fn slope_examples() {
        assert_eq!(slope_of_charge(&ChargeValue::new(int(-1), int(0))).unwrap(), Slope::Infinite);
        assert_eq!(slope_of_charge(&ChargeValue::new(int(0), int(1))).unwrap(), Slope::Finite(int(0)));
        assert_eq!(slope_of_charge(&ChargeValue::new(int(1), int(1))).unwrap(), Slope::Finite(int(-1)));
        assert_eq!(
            slope_of_charge(&ChargeValue::new(int(0), int(0))).unwrap_err(),
            Error::VanishingCharge
        );
    }

    #[test]
    fn compare_handles_infinite_slopes() {
        let inf = ChargeValue::new(int(-1), int(0));
        let zero = ChargeValue::new(int(0), int(1));
        assert_eq!(compare_slopes(&inf, &zero).unwrap(), Ordering::Greater);
        assert_eq!(compare_slopes(&zero, &inf).unwrap(), Ordering::Less);
        assert_eq!(compare_slopes(&inf, &inf).unwrap(), Ordering::Equal);
        assert!(compare_slopes(&ChargeValue::new(int(1), int(0)), &zero).is_err());
    }

    #[test]
    fn heart_side_examples() {
        let sigma = point(P1xP1, rat(-1, 2), rat(-1, 2), rat(1, 3), 2, 1);
        assert_eq!(heart_side_line_bundle(&NsClass::zero(), &sigma), HeartSide::Sheaf);
        // On the line bx + ay = 0 the structure sheaf is shifted.
        let sigma = point(P1xP1, int(-2), int(1), rat(1, 3), 2, 1);
        assert_eq!(heart_side_line_bundle(&NsClass::zero(), &sigma), HeartSide::Shifted);
        let sigma = point(BlpP2, int(7), int(7), int(1), 1, 2);
        assert_eq!(
            heart_side(&ChernCharacter::exceptional_torsion(), &sigma).unwrap(),
            HeartSide::Sheaf
        );
        let g = ChernCharacter::new(BlpP2, 2, NsClass::ints(1, 1), rat(-1, 2));
        assert!(heart_side(&g, &sigma).is_err());
    }

    #[test]
    fn rotation_examples() {
        let half = rat(1, 2);
        let i = ChargeValue::new(int(0), int(1));
        assert_eq!(rotate_charge(&i, &half).unwrap(), ChargeValue::new(int(1), int(0)));
        let m1 = ChargeValue::new(int(-1), int(0));
        assert_eq!(rotate_charge(&m1, &half).unwrap(), i);
        assert!(rotate_charge(&i, &int(1)).is_err());
        assert!(rotate_charge(&i, &rat(1, 3)).is_err());

        let angle = RotationAngle::from_phase(&half).unwrap();
        assert!(angle.survives(&ChargeValue::new(int(-1), int(1))).unwrap());
        assert!(!angle.survives(&ChargeValue::new(int(1), int(1))).unwrap());
        assert!(!angle.survives(&i).unwrap());
        assert!(RotationAngle::from_phase(&rat(1, 3)).is_err());
    }

    #[test]
    fn symbolic_rotation_agrees_with_numeric() {
        let v = ChernCharacter::line_bundle_ints(BlpP2, 1, -2);
        let sigma = point(BlpP2, rat(1, 3), rat(-2, 5), rat(3, 7), 1, 3);
        let z = central_charge_numeric(&v, &sigma).unwrap();
        let rotated = rotate_symbolic(&central_charge_symbolic(&v)).eval(&sigma);
        assert_eq!(rotated, rotate_charge(&z, &rat(1, 2)).unwrap());
    }

    fn surface() -> impl Strategy<Value = SurfaceKind> {
        prop_oneof![Just(P1xP1), Just(BlpP2)]
    }

    fn class_on(s: SurfaceKind) -> impl Strategy<Value = ChernCharacter> {
        (-3i64..4, -4i64..5, -4i64..5, -9i64..10)
            .prop_map(move |(r, p, q, c)| ChernCharacter::new(s, r, NsClass::ints(p, q), rat(c, 2)))
    }

    fn point_on(s: SurfaceKind) -> impl Strategy<Value = StabilityPoint> {
        (-12i64..13, -12i64..13, 1i64..9, 1i64..5, 1i64..5).prop_map(move |(x, y, t, a, extra)| {
            let (a, b) = match s {
                P1xP1 => (a, extra),
                BlpP2 => (a, a + extra),
            };
            point(s, rat(x, 4), rat(y, 4), rat(t, 4), a, b)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn symbolic_and_numeric_agree(
            (v, sigma) in surface().prop_flat_map(|s| (class_on(s), point_on(s)))
        ) {
            let z = central_charge_numeric(&v, &sigma).unwrap();
            prop_assert_eq!(central_charge_symbolic(&v).eval(&sigma), z);
        }

        #[test]
        fn charge_is_linear((u, v) in surface().prop_flat_map(|s| (class_on(s), class_on(s)))) {
            let lhs = central_charge_symbolic(&(&u + &v));
            let rhs = &central_charge_symbolic(&u) + &central_charge_symbolic(&v);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn slope_is_scale_invariant(
            (v, sigma) in surface().prop_flat_map(|s| (class_on(s), point_on(s))),
            n in 1i64..6,
        ) {
            let z = central_charge_numeric(&v, &sigma).unwrap();
            prop_assume!(!z.is_zero());
            let scaled = v.scale(&n.into());
            prop_assert_eq!(bridgeland_slope(&scaled, &sigma).unwrap(), bridgeland_slope(&v, &sigma).unwrap());
        }

        #[test]
        fn heart_objects_have_positive_charge(
            (p, q, sigma) in surface().prop_flat_map(|s| (-5i64..6, -5i64..6, point_on(s)))
        ) {
            let s = sigma.surface();
            let l = ChernCharacter::line_bundle_ints(s, p, q);
            let z = central_charge_numeric(&l, &sigma).unwrap();
            match heart_side(&l, &sigma).unwrap() {
                HeartSide::Sheaf => prop_assert!(z.im.is_positive()),
                HeartSide::Shifted => {
                    let shifted = -&z;
                    prop_assert!(!shifted.im.is_negative());
                }
            }
        }
    }

    #[test]
    fn boundary_positivity_for_line_bundles() {
        // On the line c1·H = D·H the shifted line bundle has Im Z = 0 and Re Z < 0.
        for s in [P1xP1, BlpP2] {
            let (a, b) = match s {
                P1xP1 => (2, 1),
                BlpP2 => (1, 2),
            };
            let h = AmpleClass::new(s, int(a), int(b)).unwrap();
            for (p, q) in [(0, 0), (-2, -1), (1, 3)] {
                let l = NsClass::ints(p, q);
                let lh = s.intersect(&l, &h.class());
                // Points D with D·H = L·H: D = L + k·w for w ⟂ H.
                let w = match s {
                    P1xP1 => NsClass::ints(a, -b),
                    BlpP2 => NsClass::ints(a, a - b),
                };
                assert!(s.intersect(&w, &h.class()).is_zero());
                for k in [rat(-3, 2), int(0), rat(5, 7)] {
                    let d = &l + &w.scale(&k);
                    assert_eq!(s.intersect(&d, &h.class()), lh);
                    for t in [rat(1, 10), int(1), int(3)] {
                        let sigma = StabilityPoint::new(h.clone(), d.0[0].clone(), d.0[1].clone(), t).unwrap();
                        let lb = ChernCharacter::line_bundle(s, l.clone());
                        assert_eq!(heart_side(&lb, &sigma).unwrap(), HeartSide::Shifted);
                        let z = -&central_charge_numeric(&lb, &sigma).unwrap();
                        assert!(z.im.is_zero());
                        assert!(z.re.is_negative(), "Re Z(L[1]) = {} at {:?}", z.re, (s, p, q));
                    }
                }
            }
        }
    }
}
