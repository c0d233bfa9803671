//! Exceptional collections at the level of K-theory: left mutation, dual
//! collections, quiver arrow counts, helices, and the left tilt.
//!
//! An object is a class together with a shift; its K-class is
//! `(−1)^shift · cls`. Mutations act on K-classes and recover a shift from
//! the normalization rule in [`normalize_class`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{
    euler_pairing, is_exceptional, rational_from_json, rational_json, serre_twist,
    twist_by_line_bundle, ChernCharacter, NsClass, SurfaceKind,
};
use crate::linalg;
use crate::notation::{class_name, line_bundle_label, with_shift};
use crate::symkernel::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcObject {
    pub label: String,
    /// The normalized sheaf-like representative.
    pub cls: ChernCharacter,
    pub shift: i64,
}

/// Splits a nonzero K-class into its normalized representative and the
/// parity of the shift: positive rank; else `c1·H0 > 0`; else `ch2 > 0`.
pub fn normalize_class(k: &ChernCharacter) -> Result<(ChernCharacter, i64)> {
    if k.is_zero() {
        return Err(Error::Internal("zero class has no representative".into()));
    }
    let h0 = k.surface.reference_ample();
    let key = if !k.rank.is_zero() {
        Rational::from(k.rank.clone())
    } else {
        let d = k.surface.intersect(&k.c1, &h0);
        if !d.is_zero() {
            d
        } else if !k.ch2.is_zero() {
            k.ch2.clone()
        } else {
            // c1 ⟂ H0 with c1 ≠ 0: fall back to the first nonzero coordinate.
            k.c1.0.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Rational::zero)
        }
    };
    Ok(if key.is_positive() { (k.clone(), 0) } else { (-k, 1) })
}

impl ExcObject {
    pub fn new(label: impl Into<String>, cls: ChernCharacter, shift: i64) -> Result<Self> {
        let (norm, parity) = normalize_class(&cls)?;
        if parity != 0 {
            return Err(Error::InvalidArgument(format!(
                "{cls} is not a normalized representative; use {norm} with an odd shift"
            )));
        }
        if !is_exceptional(&cls) {
            return Err(Error::InvalidArgument(format!("{cls} has χ(v, v) ≠ 1")));
        }
        Ok(ExcObject { label: label.into(), cls, shift })
    }

    pub fn line_bundle(surface: SurfaceKind, p: i64, q: i64) -> Self {
        let c1 = NsClass::ints(p, q);
        ExcObject {
            label: line_bundle_label(surface, &c1),
            cls: ChernCharacter::line_bundle(surface, c1),
            shift: 0,
        }
    }

    /// Builds the object whose K-class is `k`, choosing the smallest shift
    /// `≥ at_least` of the right parity.
    pub fn from_k_class(fallback_label: impl Into<String>, k: &ChernCharacter, at_least: i64) -> Result<Self> {
        let (cls, parity) = normalize_class(k)?;
        let shift = at_least + (parity - at_least).rem_euclid(2);
        let label = class_name(&cls).unwrap_or_else(|| fallback_label.into());
        Ok(ExcObject { label, cls, shift })
    }

    pub fn surface(&self) -> SurfaceKind {
        self.cls.surface
    }

    pub fn k_class(&self) -> ChernCharacter {
        if self.shift.rem_euclid(2) == 0 {
            self.cls.clone()
        } else {
            -&self.cls
        }
    }

    pub fn shifted(&self, by: i64) -> ExcObject {
        ExcObject {
            label: self.label.clone(),
            cls: self.cls.clone(),
            shift: self.shift + by,
        }
    }

    pub fn twisted(&self, l: &NsClass) -> Result<ExcObject> {
        let cls = twist_by_line_bundle(&self.cls, l)?;
        let label = class_name(&cls).unwrap_or_else(|| {
            if l.is_zero() {
                self.label.clone()
            } else {
                format!("{}⊗{}", self.label, line_bundle_label(self.surface(), l))
            }
        });
        Ok(ExcObject { label, cls, shift: self.shift })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "rank": self.cls.rank.to_string().parse::<i64>().unwrap_or(0),
            "c1": [rational_json(&self.cls.c1.0[0]), rational_json(&self.cls.c1.0[1])],
            "ch2": rational_json(&self.cls.ch2),
            "shift": self.shift,
        })
    }

    pub fn from_json(v: &Value, surface: SurfaceKind) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("collection entry: {what}"));
        let rank = v.get("rank").and_then(Value::as_i64).ok_or_else(|| bad("missing integer rank"))?;
        let c1 = v.get("c1").and_then(Value::as_array).ok_or_else(|| bad("missing c1"))?;
        if c1.len() != 2 {
            return Err(bad("c1 needs two entries"));
        }
        let ch2 = rational_from_json(v.get("ch2").ok_or_else(|| bad("missing ch2"))?)?;
        let shift = v.get("shift").and_then(Value::as_i64).unwrap_or(0);
        let cls = ChernCharacter::new(
            surface,
            rank,
            NsClass::new(rational_from_json(&c1[0])?, rational_from_json(&c1[1])?),
            ch2,
        );
        let label = match v.get("label").and_then(Value::as_str) {
            Some(l) => l.to_string(),
            None => class_name(&cls).unwrap_or_else(|| cls.to_string()),
        };
        ExcObject::new(label, cls, shift)
    }
}

impl fmt::Display for ExcObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&with_shift(&self.label, self.shift))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcCollection {
    pub surface: SurfaceKind,
    pub objects: Vec<ExcObject>,
}

impl ExcCollection {
    pub fn new(surface: SurfaceKind, objects: Vec<ExcObject>) -> Result<Self> {
        if let Some(o) = objects.iter().find(|o| o.surface() != surface) {
            return Err(Error::SurfaceMismatch(surface, o.surface()));
        }
        if objects.len() > 4 {
            return Err(Error::InvalidArgument("at most four objects fit in K(S)".into()));
        }
        let rows: Vec<Vec<Rational>> = objects.iter().map(|o| o.cls.coords().to_vec()).collect();
        if linalg::rank(&rows) < objects.len() {
            return Err(Error::InvalidArgument("K-classes are linearly dependent".into()));
        }
        Ok(ExcCollection { surface, objects })
    }

    pub fn line_bundles(surface: SurfaceKind, c1s: &[(i64, i64)]) -> Self {
        let objects = c1s.iter().map(|&(p, q)| ExcObject::line_bundle(surface, p, q)).collect();
        ExcCollection::new(surface, objects).expect("line bundles with independent classes")
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// `χ(E_j, E_i) = 0` for all `j > i`.
    pub fn is_numerically_exceptional(&self) -> bool {
        let k: Vec<ChernCharacter> = self.objects.iter().map(ExcObject::k_class).collect();
        (0..k.len()).all(|i| {
            (i + 1..k.len()).all(|j| euler_pairing(&k[j], &k[i]).map(|c| c.is_zero()).unwrap_or(false))
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.objects.iter().map(ExcObject::to_json).collect())
    }

    pub fn from_json(v: &Value, surface: SurfaceKind) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse("collection must be a JSON list".into()))?;
        let objects = items
            .iter()
            .map(|o| ExcObject::from_json(o, surface))
            .collect::<Result<Vec<_>>>()?;
        ExcCollection::new(surface, objects)
    }
}

impl fmt::Display for ExcCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, o) in self.objects.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{o}")?;
        }
        f.write_str(")")
    }
}

/// `[L_A B] = [B] − χ(A, B)·[A]`.
pub fn left_mutation(a: &ExcObject, b: &ExcObject) -> Result<ExcObject> {
    if a.surface() != b.surface() {
        return Err(Error::SurfaceMismatch(a.surface(), b.surface()));
    }
    let (ka, kb) = (a.k_class(), b.k_class());
    let chi = euler_pairing(&ka, &kb)?;
    if chi.is_zero() {
        return Ok(b.clone());
    }
    let chi = chi
        .to_integer()
        .to_i64()
        .filter(|_| chi.is_integer())
        .ok_or_else(|| Error::Internal(format!("non-integral χ({a}, {b}) = {chi}")))?;
    let k = &kb - &ka.scale(&BigInt::from(chi));
    if k.is_zero() {
        return Err(Error::Internal(format!("L_{a}({b}) has zero class")));
    }
    let out = ExcObject::from_k_class(format!("L_{{{a}}}({b})"), &k, b.shift)?;
    if !is_exceptional(&out.cls) {
        return Err(Error::Internal(format!("L_{a}({b}) is not exceptional")));
    }
    Ok(out)
}

/// `L_{A_1} ⋯ L_{A_k} B`.
pub fn left_mutation_through(through: &[ExcObject], b: &ExcObject) -> Result<ExcObject> {
    through.iter().rev().try_fold(b.clone(), |acc, a| left_mutation(a, &acc))
}

/// `F_i = L_{E_1} ⋯ L_{E_{i−1}} E_i`, returned in the order `(F_n, …, F_1)`.
pub fn dual_collection(e: &ExcCollection) -> Result<ExcCollection> {
    let objs = &e.objects;
    let mut f = Vec::with_capacity(objs.len());
    for i in 0..objs.len() {
        f.push(left_mutation_through(&objs[..i], &objs[i])?);
    }
    if let (Some(last), Some(en)) = (f.last(), objs.last()) {
        if objs.len() == 4 {
            // F_n = E_n ⊗ ω_S [2].
            if last.k_class() != serre_twist(&en.k_class()) || last.shift != en.shift + 2 {
                return Err(Error::Internal(format!(
                    "dual collection check failed: F_n = {last}, E_n ⊗ ω[2] = {}",
                    with_shift(&class_name(&serre_twist(&en.cls)).unwrap_or_default(), en.shift + 2)
                )));
            }
        }
    }
    f.reverse();
    ExcCollection::new(e.surface, f)
}

pub fn twist_collection(e: &ExcCollection, l: &NsClass) -> Result<ExcCollection> {
    let objects = e.objects.iter().map(|o| o.twisted(l)).collect::<Result<Vec<_>>>()?;
    ExcCollection::new(e.surface, objects)
}

/// How `Hom•(F_j, F_i)` is assumed to be concentrated.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Concentration {
    /// Only degree one: `n_ij = −χ(F_j, F_i)`, negative counts are errors.
    DegreeOne,
    /// A single degree in `{1, 2}`: `χ < 0` counts arrows, `χ > 0` counts
    /// relations.
    ExtOneOrTwo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverData {
    pub labels: Vec<String>,
    /// `arrows[i][j]` arrows from vertex `i` to vertex `j`, zero for `i ≥ j`.
    pub arrows: Vec<Vec<u64>>,
    /// Relation counts from vertex `i` to `j` (only under [`Concentration::ExtOneOrTwo`]).
    pub relations: Vec<Vec<u64>>,
}

impl QuiverData {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn to_json(&self) -> Value {
        json!({ "labels": self.labels, "arrows": self.arrows, "relations": self.relations })
    }
}

/// Arrow counts of the quiver of a dual collection given as `(F_n, …, F_1)`.
/// Vertex `i` (0-based) is `F_{i+1}`.
pub fn quiver_arrows(dual: &ExcCollection, mode: Concentration) -> Result<QuiverData> {
    let n = dual.len();
    let f: Vec<&ExcObject> = dual.objects.iter().rev().collect();
    let mut arrows = vec![vec![0u64; n]; n];
    let mut relations = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let chi = euler_pairing(&f[j].k_class(), &f[i].k_class())?;
            if !chi.is_integer() {
                return Err(Error::Internal(format!("non-integral χ = {chi}")));
            }
            let c = chi.to_integer().to_i64().ok_or_else(|| Error::Internal("χ overflow".into()))?;
            match (mode, c) {
                (_, c) if c <= 0 => arrows[i][j] = (-c) as u64,
                (Concentration::DegreeOne, _) => return Err(Error::Concentration(i + 1, j + 1)),
                (Concentration::ExtOneOrTwo, c) => relations[i][j] = c as u64,
            }
        }
    }
    Ok(QuiverData {
        labels: f.iter().map(|o| o.to_string()).collect(),
        arrows,
        relations,
    })
}

/// A helix `E_{r + qn} = E_r ⊗ ω_S^{−q}` generated by a base thread.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Helix {
    pub base: ExcCollection,
}

impl Helix {
    pub fn new(base: ExcCollection) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::InvalidArgument("helix needs a nonempty base".into()));
        }
        Ok(Helix { base })
    }

    pub fn period(&self) -> usize {
        self.base.len()
    }

    /// `E_k` for any integer `k`, with `E_0, …, E_{n−1}` the base.
    pub fn object(&self, k: i64) -> Result<ExcObject> {
        let n = self.period() as i64;
        let (q, r) = (k.div_euclid(n), k.rem_euclid(n));
        let k_s = self.base.surface.canonical_class();
        self.base.objects[r as usize].twisted(&k_s.scale(&int(-q)))
    }

    /// `(E_start, …, E_{start+n−1})`.
    pub fn thread(&self, start: i64) -> Result<ExcCollection> {
        let objects = (start..start + self.period() as i64)
            .map(|k| self.object(k))
            .collect::<Result<Vec<_>>>()?;
        ExcCollection::new(self.base.surface, objects)
    }
}

/// The left tilt at `E_star`: in the thread ending at `E_star`, the sources
/// of arrows into its vertex form `A`; `E_star` is replaced by
/// `L_A(E_star)[−1]`, placed just left of the first object of `A`.
pub fn left_tilt(h: &Helix, star: i64) -> Result<Helix> {
    let n = h.period() as i64;
    let thread = h.thread(star - n + 1)?;
    let dual = dual_collection(&thread)?;
    let q = quiver_arrows(&dual, Concentration::ExtOneOrTwo)?;
    let last = thread.len() - 1;
    let sources: Vec<usize> = (0..last).filter(|&i| q.arrows[i][last] > 0).collect();
    let Some(&first) = sources.first() else {
        return Err(Error::NoIncomingArrows);
    };
    let through: Vec<ExcObject> = sources.iter().map(|&i| thread.objects[i].clone()).collect();
    let star_obj = &thread.objects[last];
    let names: Vec<String> = through.iter().map(|o| o.to_string()).collect();
    let mutated = left_mutation_through(&through, star_obj)?;
    let mutated = ExcObject {
        label: class_name(&mutated.cls)
            .unwrap_or_else(|| format!("L_{{{}}}({star_obj})", names.join(","))),
        ..mutated.shifted(-1)
    };
    let mut objects = thread.objects[..last].to_vec();
    objects.insert(first, mutated);
    Helix::new(ExcCollection::new(h.base.surface, objects)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::rat;
    use SurfaceKind::*;

    fn obj(s: SurfaceKind, r: i64, p: i64, q: i64, ch2: Rational, shift: i64) -> ExcObject {
        ExcObject::new("X", ChernCharacter::new(s, r, NsClass::ints(p, q), ch2), shift).unwrap()
    }

    #[test]
    fn normalization_rule() {
        let t = ChernCharacter::exceptional_torsion();
        assert_eq!(normalize_class(&t).unwrap(), (t.clone(), 0));
        assert_eq!(normalize_class(&-&t).unwrap(), (t, 1));
        let lb = ChernCharacter::line_bundle_ints(P1xP1, -1, 1);
        assert_eq!(normalize_class(&-&lb).unwrap(), (lb, 1));
        let pt = ChernCharacter::new(P1xP1, 0, NsClass::zero(), int(1));
        assert_eq!(normalize_class(&-&pt).unwrap(), (pt, 1));
        assert!(normalize_class(&ChernCharacter::zero(P1xP1)).is_err());
    }

    #[test]
    fn mutation_examples() {
        let l = |p, q| ExcObject::line_bundle(P1xP1, p, q);
        let m = left_mutation(&l(0, 1), &l(1, 1)).unwrap();
        assert_eq!(m.cls, ChernCharacter::line_bundle_ints(P1xP1, -1, 1));
        assert_eq!(m.shift, 1);
        assert_eq!(m.label, "O(-1,1)");
        let g = left_mutation(&l(1, 0), &m).unwrap();
        assert_eq!(g.cls, ChernCharacter::new(P1xP1, 3, NsClass::ints(1, 1), int(-1)));
        assert_eq!(g.shift, 1);

        let b = |p, q| ExcObject::line_bundle(BlpP2, p, q);
        let g2 = left_mutation(&b(1, 1), &b(2, 2)).unwrap();
        assert_eq!(g2.cls, ChernCharacter::new(BlpP2, 2, NsClass::ints(1, 1), rat(-1, 2)));
        assert_eq!(g2.shift, 1);

        // χ(O(1,0), O(0,1)) = χ(O(0,1), O(1,0)) = 0.
        assert_eq!(left_mutation(&l(1, 0), &l(0, 1)).unwrap(), l(0, 1));
    }

    #[test]
    fn dual_of_p1p1_collection() {
        let g = obj(P1xP1, 3, 1, 1, int(-1), 0);
        let e = ExcCollection::new(
            P1xP1,
            vec![ExcObject::line_bundle(P1xP1, 0, 0), g, ExcObject::line_bundle(P1xP1, 1, 0), ExcObject::line_bundle(P1xP1, 0, 1)],
        )
        .unwrap();
        let f = dual_collection(&e).unwrap();
        let shown: Vec<String> = f.objects.iter().map(|o| o.to_string()).collect();
        assert_eq!(shown, ["O(-2,-1)[2]", "O(-1,-2)[2]", "O(-1,-1)[1]", "O"]);
        assert!(f.is_numerically_exceptional());
        assert!(e.is_numerically_exceptional());
    }

    #[test]
    fn single_object_dual() {
        let e = ExcCollection::line_bundles(BlpP2, &[(1, 1)]);
        assert_eq!(dual_collection(&e).unwrap(), e);
    }

    #[test]
    fn quiver_modes() {
        let g = obj(P1xP1, 3, 1, 1, int(-1), 0);
        let e = ExcCollection::new(
            P1xP1,
            vec![ExcObject::line_bundle(P1xP1, 0, 0), g, ExcObject::line_bundle(P1xP1, 1, 0), ExcObject::line_bundle(P1xP1, 0, 1)],
        )
        .unwrap();
        let f = dual_collection(&e).unwrap();
        // χ(F_3, F_1) = 6 > 0: relations, not arrows.
        assert_eq!(quiver_arrows(&f, Concentration::DegreeOne).unwrap_err(), Error::Concentration(1, 3));
        let q = quiver_arrows(&f, Concentration::ExtOneOrTwo).unwrap();
        assert_eq!(q.arrows[0][1], 4);
        assert_eq!(q.relations[0][2], 6);
    }

    #[test]
    fn helix_threads() {
        let h = Helix::new(ExcCollection::line_bundles(BlpP2, &[(0, 0), (0, 1), (1, 1), (1, 2)])).unwrap();
        assert_eq!(h.thread(1).unwrap(), ExcCollection::line_bundles(BlpP2, &[(0, 1), (1, 1), (1, 2), (2, 3)]));
        assert_eq!(h.thread(0).unwrap(), h.base);
        assert_eq!(
            h.thread(-4).unwrap(),
            twist_collection(&h.base, &BlpP2.canonical_class()).unwrap()
        );
    }

    #[test]
    fn tilt_requires_incoming_arrows() {
        // Mutually orthogonal pair: no arrows.
        let h = Helix::new(ExcCollection::line_bundles(P1xP1, &[(1, 0), (0, 1)])).unwrap();
        assert_eq!(left_tilt(&h, 1).unwrap_err(), Error::NoIncomingArrows);
    }

    #[test]
    fn collection_json_round_trip() {
        let e = ExcCollection::new(
            BlpP2,
            vec![ExcObject::line_bundle(BlpP2, 0, 0), obj(BlpP2, 0, 1, 0, rat(-1, 2), 1)],
        )
        .unwrap();
        let back = ExcCollection::from_json(&e.to_json(), BlpP2).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn rejects_non_exceptional_objects() {
        let bad = ChernCharacter::new(P1xP1, 2, NsClass::zero(), int(0));
        assert!(ExcObject::new("X", bad, 0).is_err());
        let neg = -ChernCharacter::line_bundle_ints(P1xP1, 0, 0);
        assert!(ExcObject::new("X", neg, 0).is_err());
    }
}
