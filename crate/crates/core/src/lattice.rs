//! Numerical Grothendieck lattices of P1xP1 and Bl_p P2.
//!
//! A class is stored as `(rank, c1, ch2)` with `c1` written in the
//! Néron–Severi basis of the surface: `(D1, D2)` for P1xP1 and `(E, F)` for
//! the blow-up.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::symkernel::{int, parse_rational, rat, Rational};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceKind {
    #[serde(rename = "p1xp1")]
    P1xP1,
    #[serde(rename = "blp2")]
    BlpP2,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::P1xP1 => "p1xp1",
            SurfaceKind::BlpP2 => "blp2",
        }
    }

    pub fn basis_names(self) -> [&'static str; 2] {
        match self {
            SurfaceKind::P1xP1 => ["D1", "D2"],
            SurfaceKind::BlpP2 => ["E", "F"],
        }
    }

    /// Gram matrix of the intersection form on the NS basis.
    pub fn intersection_matrix(self) -> [[i64; 2]; 2] {
        match self {
            SurfaceKind::P1xP1 => [[0, 1], [1, 0]],
            SurfaceKind::BlpP2 => [[-1, 1], [1, 0]],
        }
    }

    pub fn canonical_class(self) -> NsClass {
        match self {
            SurfaceKind::P1xP1 => NsClass::ints(-2, -2),
            SurfaceKind::BlpP2 => NsClass::ints(-2, -3),
        }
    }

    /// Fixed ample class used to orient rank-zero classes.
    pub fn reference_ample(self) -> NsClass {
        match self {
            SurfaceKind::P1xP1 => NsClass::ints(1, 1),
            SurfaceKind::BlpP2 => NsClass::ints(1, 2),
        }
    }

    /// Nakai–Moishezon for `H = a·e1 + b·e2`.
    pub fn is_ample(self, a: &Rational, b: &Rational) -> bool {
        match self {
            SurfaceKind::P1xP1 => a.is_positive() && b.is_positive(),
            SurfaceKind::BlpP2 => a.is_positive() && b > a,
        }
    }

    pub fn intersect(self, u: &NsClass, v: &NsClass) -> Rational {
        let m = self.intersection_matrix();
        let mut acc = Rational::zero();
        for i in 0..2 {
            for j in 0..2 {
                if m[i][j] != 0 {
                    acc += &u.0[i] * &v.0[j] * int(m[i][j]);
                }
            }
        }
        acc
    }

    /// Degree functional `d = -K_S · c1`.
    pub fn degree(self, c1: &NsClass) -> Rational {
        -self.intersect(&self.canonical_class(), c1)
    }
}

impl std::str::FromStr for SurfaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p1xp1" | "p1p1" => Ok(SurfaceKind::P1xP1),
            "blp2" | "blpp2" => Ok(SurfaceKind::BlpP2),
            _ => Err(Error::Parse(format!("unknown surface `{s}`"))),
        }
    }
}

/// A divisor class `c0·e1 + c1·e2` in the NS basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NsClass(pub [Rational; 2]);

impl NsClass {
    pub fn new(p: Rational, q: Rational) -> Self {
        NsClass([p, q])
    }

    pub fn ints(p: i64, q: i64) -> Self {
        NsClass([int(p), int(q)])
    }

    pub fn zero() -> Self {
        Self::ints(0, 0)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, k: &Rational) -> NsClass {
        NsClass([&self.0[0] * k, &self.0[1] * k])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Add for &NsClass {
    type Output = NsClass;
    fn add(self, o: &NsClass) -> NsClass {
        NsClass([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1]])
    }
}

impl Sub for &NsClass {
    type Output = NsClass;
    fn sub(self, o: &NsClass) -> NsClass {
        NsClass([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1]])
    }
}

impl Neg for &NsClass {
    type Output = NsClass;
    fn neg(self) -> NsClass {
        NsClass([-&self.0[0], -&self.0[1]])
    }
}

/// Ample class `H = a·e1 + b·e2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleClass {
    pub surface: SurfaceKind,
    pub a: Rational,
    pub b: Rational,
}

impl AmpleClass {
    pub fn new(surface: SurfaceKind, a: Rational, b: Rational) -> Result<Self> {
        if !surface.is_ample(&a, &b) {
            let cond = match surface {
                SurfaceKind::P1xP1 => "a, b > 0",
                SurfaceKind::BlpP2 => "b > a > 0",
            };
            return Err(Error::NotAmple(format!("H = ({a}, {b}) needs {cond}")));
        }
        Ok(AmpleClass { surface, a, b })
    }

    pub fn class(&self) -> NsClass {
        NsClass::new(self.a.clone(), self.b.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernCharacter {
    pub surface: SurfaceKind,
    pub rank: BigInt,
    pub c1: NsClass,
    pub ch2: Rational,
}

impl ChernCharacter {
    pub fn new(surface: SurfaceKind, rank: i64, c1: NsClass, ch2: Rational) -> Self {
        ChernCharacter {
            surface,
            rank: BigInt::from(rank),
            c1,
            ch2,
        }
    }

    pub fn zero(surface: SurfaceKind) -> Self {
        Self::new(surface, 0, NsClass::zero(), Rational::zero())
    }

    /// `ch(O(L)) = (1, L, L²/2)`.
    pub fn line_bundle(surface: SurfaceKind, l: NsClass) -> Self {
        let ch2 = surface.intersect(&l, &l) * rat(1, 2);
        ChernCharacter {
            surface,
            rank: BigInt::one(),
            c1: l,
            ch2,
        }
    }

    pub fn line_bundle_ints(surface: SurfaceKind, p: i64, q: i64) -> Self {
        Self::line_bundle(surface, NsClass::ints(p, q))
    }

    pub fn structure_sheaf(surface: SurfaceKind) -> Self {
        Self::line_bundle_ints(surface, 0, 0)
    }

    /// `ch(O_E(E)) = (0, E, -1/2)` on the blow-up.
    pub fn exceptional_torsion() -> Self {
        Self::new(SurfaceKind::BlpP2, 0, NsClass::ints(1, 0), rat(-1, 2))
    }

    pub fn rank_q(&self) -> Rational {
        Rational::from_integer(self.rank.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.rank.is_zero() && self.c1.is_zero() && self.ch2.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> ChernCharacter {
        let kq = Rational::from_integer(k.clone());
        ChernCharacter {
            surface: self.surface,
            rank: &self.rank * k,
            c1: self.c1.scale(&kq),
            ch2: &self.ch2 * &kq,
        }
    }

    pub fn degree(&self) -> Rational {
        self.surface.degree(&self.c1)
    }

    /// Coordinates `(rank, c1_0, c1_1, ch2)` in the K-lattice.
    pub fn coords(&self) -> [Rational; 4] {
        [
            self.rank_q(),
            self.c1.0[0].clone(),
            self.c1.0[1].clone(),
            self.ch2.clone(),
        ]
    }

    pub fn from_coords(surface: SurfaceKind, c: &[Rational; 4]) -> Result<Self> {
        if !c[0].is_integer() {
            return Err(Error::InvalidArgument(format!("rank {} is not an integer", c[0])));
        }
        Ok(ChernCharacter {
            surface,
            rank: c[0].to_integer(),
            c1: NsClass::new(c[1].clone(), c[2].clone()),
            ch2: c[3].clone(),
        })
    }

    /// Integrality expected of genuine objects: `c1 ∈ Z²`, `ch2 ∈ ½Z`.
    pub fn is_geometric_lattice_point(&self) -> bool {
        self.c1.is_integral() && (&self.ch2 * int(2)).is_integer()
    }

    fn check_same(&self, other: &ChernCharacter) -> Result<()> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch(self.surface, other.surface));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &ChernCharacter) -> Result<ChernCharacter> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "surface": self.surface.name(),
            "rank": bigint_json(&self.rank),
            "c1": [rational_json(&self.c1.0[0]), rational_json(&self.c1.0[1])],
            "ch2": self.ch2.to_string(),
        })
    }

    /// Reads `{"surface", "rank", "c1", "ch2"}`; `surface` may be omitted when
    /// a default is supplied.
    pub fn from_json(v: &Value, default_surface: Option<SurfaceKind>) -> Result<Self> {
        let surface = match v.get("surface") {
            Some(s) => s
                .as_str()
                .ok_or_else(|| Error::Parse("surface must be a string".into()))?
                .parse()?,
            None => default_surface.ok_or_else(|| Error::Parse("missing surface".into()))?,
        };
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing `{k}`")));
        let rank = rational_from_json(field("rank")?)?;
        let c1 = field("c1")?
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse("c1 must be a pair".into()))?;
        let c1 = NsClass::new(rational_from_json(&c1[0])?, rational_from_json(&c1[1])?);
        let ch2 = rational_from_json(field("ch2")?)?;
        if !rank.is_integer() {
            return Err(Error::Parse("rank must be an integer".into()));
        }
        Ok(ChernCharacter {
            surface,
            rank: rank.to_integer(),
            c1,
            ch2,
        })
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, ({}, {}), {})",
            self.rank, self.c1.0[0], self.c1.0[1], self.ch2
        )
    }
}

impl Add for &ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, o: &ChernCharacter) -> ChernCharacter {
        debug_assert_eq!(self.surface, o.surface);
        ChernCharacter {
            surface: self.surface,
            rank: &self.rank + &o.rank,
            c1: &self.c1 + &o.c1,
            ch2: &self.ch2 + &o.ch2,
        }
    }
}

impl Sub for &ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, o: &ChernCharacter) -> ChernCharacter {
        self + &(-o)
    }
}

impl Neg for &ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        ChernCharacter {
            surface: self.surface,
            rank: -&self.rank,
            c1: -&self.c1,
            ch2: -&self.ch2,
        }
    }
}

impl Neg for ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        -&self
    }
}

pub fn intersect(surface: SurfaceKind, u: &NsClass, v: &NsClass) -> Rational {
    surface.intersect(u, v)
}

/// `χ(A, B) = r_A r_B + ½(r_A d_B − r_B d_A) + r_B ch2(A) + r_A ch2(B) − c1(A)·c1(B)`.
pub fn euler_pairing(a: &ChernCharacter, b: &ChernCharacter) -> Result<Rational> {
    a.check_same(b)?;
    let s = a.surface;
    let (ra, rb) = (a.rank_q(), b.rank_q());
    Ok(&ra * &rb + (&ra * b.degree() - &rb * a.degree()) * rat(1, 2) + &rb * &a.ch2
        + &ra * &b.ch2
        - s.intersect(&a.c1, &b.c1))
}

/// Multiplication by `exp(L)`.
pub fn twist_by_line_bundle(v: &ChernCharacter, l: &NsClass) -> Result<ChernCharacter> {
    if !l.is_integral() {
        return Err(Error::InvalidArgument(format!(
            "twist needs integer coordinates, got ({}, {})",
            l.0[0], l.0[1]
        )));
    }
    let s = v.surface;
    let r = v.rank_q();
    Ok(ChernCharacter {
        surface: s,
        rank: v.rank.clone(),
        c1: &v.c1 + &l.scale(&r),
        ch2: &v.ch2 + s.intersect(&v.c1, l) + r * s.intersect(l, l) * rat(1, 2),
    })
}

pub fn serre_twist(v: &ChernCharacter) -> ChernCharacter {
    twist_by_line_bundle(v, &v.surface.canonical_class()).expect("K_S is integral")
}

/// `Δ(v) = c1² − 2·rank·ch2`.
pub fn bogomolov_discriminant(v: &ChernCharacter) -> Rational {
    v.surface.intersect(&v.c1, &v.c1) - v.rank_q() * &v.ch2 * int(2)
}

pub fn is_exceptional(v: &ChernCharacter) -> bool {
    euler_pairing(v, v).map(|c| c == int(1)).unwrap_or(false)
}

pub fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        if let Some(n) = r.to_integer().to_i64() {
            return json!(n);
        }
    }
    json!(r.to_string())
}

fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(k) => json!(k),
        None => json!(n.to_string()),
    }
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(int)
            .ok_or_else(|| Error::Parse(format!("non-integer JSON number {n}; use a \"p/q\" string"))),
        Value::String(s) => parse_rational(s),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SurfaceKind::*;

    fn lb(s: SurfaceKind, p: i64, q: i64) -> ChernCharacter {
        ChernCharacter::line_bundle_ints(s, p, q)
    }

    #[test]
    fn intersections() {
        let h = NsClass::ints(1, 1);
        assert_eq!(P1xP1.intersect(&h, &h), int(2));
        let e = NsClass::ints(1, 0);
        assert_eq!(BlpP2.intersect(&e, &e), int(-1));
        assert_eq!(BlpP2.intersect(&NsClass::ints(1, 1), &NsClass::ints(1, 2)), int(2));
    }

    #[test]
    fn degree_functional_matches_closed_forms() {
        // d = 2(a1 + a2) on P1xP1, d = a_E + 2 a_F on the blow-up.
        for (p, q) in [(0, 0), (1, 0), (3, -2), (-1, 5)] {
            let c = NsClass::ints(p, q);
            assert_eq!(P1xP1.degree(&c), int(2 * (p + q)));
            assert_eq!(BlpP2.degree(&c), int(p + 2 * q));
        }
    }

    #[test]
    fn euler_pairing_examples() {
        let chi = |a: &ChernCharacter, b: &ChernCharacter| euler_pairing(a, b).unwrap();
        assert_eq!(chi(&lb(P1xP1, 0, 1), &lb(P1xP1, 1, 1)), int(2));
        assert_eq!(chi(&lb(P1xP1, 1, 0), &lb(P1xP1, -1, 1)), int(-2));
        for s in [P1xP1, BlpP2] {
            let o = ChernCharacter::structure_sheaf(s);
            assert_eq!(chi(&o, &o), int(1));
        }
        assert_eq!(chi(&lb(BlpP2, 1, 1), &lb(BlpP2, 1, 2)), int(2));
        let g1 = ChernCharacter::new(BlpP2, 2, NsClass::ints(1, 1), rat(-1, 2));
        assert_eq!(chi(&ChernCharacter::structure_sheaf(BlpP2), &g1), int(3));
    }

    #[test]
    fn euler_pairing_rejects_mixed_surfaces() {
        let err = euler_pairing(&lb(P1xP1, 0, 0), &lb(BlpP2, 0, 0)).unwrap_err();
        assert_eq!(err, Error::SurfaceMismatch(P1xP1, BlpP2));
    }

    #[test]
    fn twist_examples() {
        let o = ChernCharacter::structure_sheaf(P1xP1);
        let t = twist_by_line_bundle(&o, &NsClass::ints(1, 1)).unwrap();
        assert_eq!(t, ChernCharacter::new(P1xP1, 1, NsClass::ints(1, 1), int(1)));

        let o = ChernCharacter::structure_sheaf(BlpP2);
        let oe = twist_by_line_bundle(&o, &NsClass::ints(1, 0)).unwrap();
        assert_eq!(oe, ChernCharacter::new(BlpP2, 1, NsClass::ints(1, 0), rat(-1, 2)));
        assert_eq!(euler_pairing(&o, &oe).unwrap(), int(1));

        assert_eq!(twist_by_line_bundle(&oe, &NsClass::zero()).unwrap(), oe);
        assert!(twist_by_line_bundle(&oe, &NsClass::new(rat(1, 2), int(0))).is_err());
    }

    #[test]
    fn serre_twist_examples() {
        assert_eq!(serre_twist(&lb(P1xP1, 0, 1)), lb(P1xP1, -2, -1));
        assert_eq!(serre_twist(&lb(BlpP2, 1, 1)), lb(BlpP2, -1, -2));
        let g = ChernCharacter::new(P1xP1, 3, NsClass::ints(1, 1), int(-1));
        let k = P1xP1.canonical_class();
        assert_eq!(twist_by_line_bundle(&serre_twist(&g), &-&k).unwrap(), g);
    }

    #[test]
    fn bogomolov_examples() {
        assert_eq!(bogomolov_discriminant(&lb(BlpP2, 3, -7)), int(0));
        assert_eq!(bogomolov_discriminant(&lb(P1xP1, 2, 5)), int(0));
        let g = ChernCharacter::new(P1xP1, 3, NsClass::ints(1, 1), int(-1));
        assert_eq!(bogomolov_discriminant(&g), int(8));
        let ideal = ChernCharacter::new(P1xP1, 1, NsClass::zero(), int(-1));
        assert_eq!(bogomolov_discriminant(&ideal), int(2));
    }

    #[test]
    fn named_fixtures_are_exceptional() {
        let fixtures = [
            ChernCharacter::new(P1xP1, 3, NsClass::ints(1, 1), int(-1)),
            ChernCharacter::new(BlpP2, 2, NsClass::ints(1, 1), rat(-1, 2)),
            ChernCharacter::exceptional_torsion(),
            lb(P1xP1, -2, -1),
            lb(P1xP1, -1, -2),
            lb(P1xP1, -1, -1),
            lb(BlpP2, -1, -2),
            lb(BlpP2, -1, -1),
            lb(BlpP2, 0, -1),
            lb(BlpP2, 2, 3),
        ];
        for f in &fixtures {
            assert!(is_exceptional(f), "{f} is not exceptional");
            assert!(f.is_geometric_lattice_point());
        }
    }

    #[test]
    fn json_roundtrip() {
        let g = ChernCharacter::new(BlpP2, 2, NsClass::ints(1, 1), rat(-1, 2));
        let v = g.to_json();
        assert_eq!(v["ch2"], "-1/2");
        assert_eq!(v["c1"], json!([1, 1]));
        assert_eq!(ChernCharacter::from_json(&v, None).unwrap(), g);
    }

    #[test]
    fn ample_conditions() {
        assert!(AmpleClass::new(P1xP1, int(2), int(1)).is_ok());
        assert!(AmpleClass::new(BlpP2, int(2), int(1)).is_err());
        assert!(AmpleClass::new(BlpP2, int(1), int(2)).is_ok());
        assert!(AmpleClass::new(P1xP1, int(0), int(1)).is_err());
    }

    fn surface() -> impl Strategy<Value = SurfaceKind> {
        prop_oneof![Just(P1xP1), Just(BlpP2)]
    }

    fn class_on(s: SurfaceKind) -> impl Strategy<Value = ChernCharacter> {
        (-4i64..5, -5i64..6, -5i64..6, -12i64..13)
            .prop_map(move |(r, p, q, c)| ChernCharacter::new(s, r, NsClass::ints(p, q), rat(c, 2)))
    }

    proptest! {
        #[test]
        fn pairing_is_twist_invariant(
            (a, b) in surface().prop_flat_map(|s| (class_on(s), class_on(s))),
            p in -4i64..5, q in -4i64..5,
        ) {
            let l = NsClass::ints(p, q);
            let lhs = euler_pairing(&twist_by_line_bundle(&a, &l).unwrap(), &twist_by_line_bundle(&b, &l).unwrap()).unwrap();
            prop_assert_eq!(lhs, euler_pairing(&a, &b).unwrap());
        }

        #[test]
        fn numerical_serre_duality((a, b) in surface().prop_flat_map(|s| (class_on(s), class_on(s)))) {
            prop_assert_eq!(euler_pairing(&a, &b).unwrap(), euler_pairing(&b, &serre_twist(&a)).unwrap());
        }

        #[test]
        fn discriminant_is_twist_invariant(v in surface().prop_flat_map(class_on), p in -4i64..5, q in -4i64..5) {
            let l = NsClass::ints(p, q);
            prop_assert_eq!(bogomolov_discriminant(&twist_by_line_bundle(&v, &l).unwrap()), bogomolov_discriminant(&v));
        }

        #[test]
        fn line_bundles_are_exceptional(s in surface(), p in -6i64..7, q in -6i64..7) {
            prop_assert!(is_exceptional(&lb(s, p, q)));
        }
    }
}
