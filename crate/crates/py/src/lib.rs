//! Python bindings.
//!
//! Rationals cross the boundary as `fractions.Fraction`; inputs may be
//! `int`, `Fraction` or strings such as `"-3/4"`. Floats are rejected so that
//! nothing silently loses exactness.

use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyFloat;

use delpezzo::charge::{bridgeland_slope, central_charge_numeric, Slope, StabilityPoint as CoreSigma};
use delpezzo::fixtures::fixture;
use delpezzo::helix::{dual_collection, left_tilt, quiver_arrows, Concentration, ExcCollection, Helix};
use delpezzo::lattice::{
    bogomolov_discriminant, euler_pairing as core_chi, twist_by_line_bundle, AmpleClass, ChernCharacter as CoreCh,
    NsClass, SurfaceKind,
};
use delpezzo::notation::parse_class;
use delpezzo::regions::{
    coverage_check, dimension_vector as core_dimvec, king_screen as core_screen, king_weights as core_theta, region,
    rotatability_conditions, CoverageBox, RegionKind,
};
use delpezzo::symkernel::Rational;
use delpezzo::walls::{classify_fixed_t_conic, point_side, wall_quadric, WallQuadric, WallSide};

fn err(e: delpezzo::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if obj.is_instance_of::<PyFloat>() {
        return Err(PyTypeError::new_err("floats are not exact; pass an int, Fraction or string"));
    }
    let s = obj.str()?;
    let text = s.to_cow()?;
    text.trim()
        .parse::<Rational>()
        .map_err(|_| PyValueError::new_err(format!("not a rational number: {text}")))
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn surface(name: &str) -> PyResult<SurfaceKind> {
    name.parse().map_err(err)
}

fn json_value<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.getattr("loads")?.call1((v.to_string(),))
}

/// A numerical class `(rank, c1, ch2)` on one of the two surfaces.
#[pyclass(name = "ChernCharacter", module = "delpezzo", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct ChernCharacter {
    inner: CoreCh,
}

#[pymethods]
impl ChernCharacter {
    #[new]
    #[pyo3(signature = (surface, rank, c1, ch2))]
    fn new(surface: &str, rank: i64, c1: (Bound<'_, PyAny>, Bound<'_, PyAny>), ch2: Bound<'_, PyAny>) -> PyResult<Self> {
        let s = self::surface(surface)?;
        let c1 = NsClass::new(rational(&c1.0)?, rational(&c1.1)?);
        Ok(Self { inner: CoreCh::new(s, rank, c1, rational(&ch2)?) })
    }

    /// Parses a literal such as `O(1,-1)[1]`, `O_E(E)` or `(2, (0,1), -1)`.
    #[staticmethod]
    #[pyo3(signature = (text, surface = "p1xp1"))]
    fn parse(text: &str, surface: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_class(text, self::surface(surface)?).map_err(err)? })
    }

    #[getter]
    fn surface(&self) -> &'static str {
        self.inner.surface.name()
    }

    #[getter]
    fn rank(&self) -> PyResult<i64> {
        self.inner.rank.to_string().parse().map_err(|_| PyValueError::new_err("rank out of range"))
    }

    #[getter]
    fn c1<'py>(&self, py: Python<'py>) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        Ok((fraction(py, &self.inner.c1.0[0])?, fraction(py, &self.inner.c1.0[1])?))
    }

    #[getter]
    fn ch2<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.ch2)
    }

    /// Tensor with `O(p, q)`.
    fn twist(&self, p: i64, q: i64) -> PyResult<Self> {
        Ok(Self { inner: twist_by_line_bundle(&self.inner, &NsClass::ints(p, q)).map_err(err)? })
    }

    fn discriminant<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &bogomolov_discriminant(&self.inner))
    }

    fn __add__(&self, o: PyRef<'_, ChernCharacter>) -> PyResult<Self> {
        Ok(Self { inner: self.inner.checked_add(&o.inner).map_err(err)? })
    }

    fn __neg__(&self) -> Self {
        Self { inner: -&self.inner }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ChernCharacter({}, {})", self.inner.surface.name(), self.inner)
    }
}

/// χ(A, B).
#[pyfunction]
fn euler_pairing<'py>(py: Python<'py>, a: PyRef<'_, ChernCharacter>, b: PyRef<'_, ChernCharacter>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &core_chi(&a.inner, &b.inner).map_err(err)?)
}

/// A point σ = (H, D = x·e1 + y·e2, t) of the stability space.
#[pyclass(name = "StabilityPoint", module = "delpezzo", frozen, skip_from_py_object)]
#[derive(Clone)]
struct StabilityPoint {
    inner: CoreSigma,
}

#[pymethods]
impl StabilityPoint {
    #[new]
    #[pyo3(signature = (surface, a, b, x, y, t))]
    fn new(
        surface: &str,
        a: Bound<'_, PyAny>,
        b: Bound<'_, PyAny>,
        x: Bound<'_, PyAny>,
        y: Bound<'_, PyAny>,
        t: Bound<'_, PyAny>,
    ) -> PyResult<Self> {
        let h = AmpleClass::new(self::surface(surface)?, rational(&a)?, rational(&b)?).map_err(err)?;
        Ok(Self { inner: CoreSigma::new(h, rational(&x)?, rational(&y)?, rational(&t)?).map_err(err)? })
    }

    /// The central charge `(Re Z, Im Z)` of a class.
    fn charge<'py>(&self, py: Python<'py>, v: PyRef<'_, ChernCharacter>) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let z = central_charge_numeric(&v.inner, &self.inner).map_err(err)?;
        Ok((fraction(py, &z.re)?, fraction(py, &z.im)?))
    }

    /// `−Re Z / Im Z`, or `None` when `Im Z = 0`.
    fn slope<'py>(&self, py: Python<'py>, v: PyRef<'_, ChernCharacter>) -> PyResult<Option<Bound<'py, PyAny>>> {
        match bridgeland_slope(&v.inner, &self.inner).map_err(err)? {
            Slope::Finite(r) => Ok(Some(fraction(py, &r)?)),
            Slope::Infinite => Ok(None),
        }
    }

    fn translated(&self, dx: Bound<'_, PyAny>, dy: Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self { inner: self.inner.translated(&rational(&dx)?, &rational(&dy)?) })
    }

    fn __repr__(&self) -> String {
        let s = &self.inner;
        format!("StabilityPoint(H=({}, {}), x={}, y={}, t={})", s.h.a, s.h.b, s.x, s.y, s.t)
    }
}

/// The potential wall `W(v, w)`: where `Z(v)` and `Z(w)` are aligned.
#[pyclass(name = "Wall", module = "delpezzo", frozen)]
struct Wall {
    inner: WallQuadric,
}

#[pymethods]
impl Wall {
    #[new]
    fn new(v: PyRef<'_, ChernCharacter>, w: PyRef<'_, ChernCharacter>) -> PyResult<Self> {
        Ok(Self { inner: wall_quadric(&v.inner, &w.inner).map_err(err)? })
    }

    /// The normalized equation in `x, y, t, a, b`.
    #[getter]
    fn equation(&self) -> String {
        self.inner.equation().to_string()
    }

    /// Conic type of the fixed-`t` section, certified for every ample `H`.
    fn classify(&self) -> PyResult<String> {
        Ok(classify_fixed_t_conic(&self.inner).map_err(err)?.kind.name().to_string())
    }

    /// `"inside"`, `"outside"` or `"on"`.
    fn side(&self, sigma: PyRef<'_, StabilityPoint>) -> PyResult<&'static str> {
        Ok(match point_side(&self.inner, &sigma.inner).map_err(err)? {
            WallSide::Inside => "inside",
            WallSide::Outside => "outside",
            WallSide::On => "on",
        })
    }

    fn __str__(&self) -> String {
        self.equation()
    }
}

/// A full exceptional collection, possibly with shifted objects.
#[pyclass(name = "Collection", module = "delpezzo", frozen)]
struct Collection {
    inner: ExcCollection,
}

#[pymethods]
impl Collection {
    /// A named collection: `E`, `E'`, `F'` on either surface; `Ehat`, `E''`,
    /// `F''` on the blow-up.
    #[staticmethod]
    #[pyo3(signature = (name, surface = "p1xp1"))]
    fn fixture(name: &str, surface: &str) -> PyResult<Self> {
        Ok(Self { inner: fixture(self::surface(surface)?, name).map_err(err)? })
    }

    /// Line bundles `O(p, q)` in the given order.
    #[staticmethod]
    #[pyo3(signature = (c1s, surface = "p1xp1"))]
    fn line_bundles(c1s: Vec<(i64, i64)>, surface: &str) -> PyResult<Self> {
        let s = self::surface(surface)?;
        let c = ExcCollection::line_bundles(s, &c1s);
        if !c.is_numerically_exceptional() {
            return Err(PyValueError::new_err("not numerically exceptional"));
        }
        Ok(Self { inner: c })
    }

    fn dual(&self) -> PyResult<Self> {
        Ok(Self { inner: dual_collection(&self.inner).map_err(err)? })
    }

    /// Left tilt at the `at`-th object, counted from 1.
    fn tilt(&self, at: i64) -> PyResult<Self> {
        if at < 1 || at as usize > self.inner.len() {
            return Err(PyValueError::new_err(format!("at must lie in 1..={}", self.inner.len())));
        }
        let h = Helix::new(self.inner.clone()).map_err(err)?;
        Ok(Self { inner: left_tilt(&h, at - 1).map_err(err)?.base })
    }

    /// Classes of the objects, in order.
    fn classes(&self) -> Vec<ChernCharacter> {
        self.inner.objects.iter().map(|o| ChernCharacter { inner: o.k_class() }).collect()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.objects.iter().map(|o| o.to_string()).collect()
    }

    /// `(arrows, relations)` of the quiver of this collection read as a dual.
    fn quiver(&self) -> PyResult<(Vec<Vec<u64>>, Vec<Vec<u64>>)> {
        let q = quiver_arrows(&self.inner, Concentration::ExtOneOrTwo).map_err(err)?;
        Ok((q.arrows, q.relations))
    }

    /// Whether σ satisfies the rotatability conditions for this dual
    /// collection, with the failed conditions.
    fn rotatable(&self, sigma: PyRef<'_, StabilityPoint>) -> PyResult<(bool, Vec<String>)> {
        let r = rotatability_conditions(&self.inner, &sigma.inner).map_err(err)?;
        Ok((r.satisfied, r.failures))
    }

    fn dimension_vector(&self, v: PyRef<'_, ChernCharacter>) -> PyResult<Vec<i64>> {
        Ok(core_dimvec(&v.inner, &self.inner).map_err(err)?.0)
    }

    /// King weights `θ_i` of `v` at σ.
    fn king_weights<'py>(
        &self,
        py: Python<'py>,
        v: PyRef<'_, ChernCharacter>,
        sigma: PyRef<'_, StabilityPoint>,
    ) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let th = core_theta(&v.inner, &self.inner, &sigma.inner).map_err(err)?;
        th.0.iter().map(|r| fraction(py, r)).collect()
    }

    /// Sub-dimension vectors `d′ ≤ d` with `θ·d′ > 0`; a necessary
    /// condition for semistability only.
    fn king_screen(&self, v: PyRef<'_, ChernCharacter>, sigma: PyRef<'_, StabilityPoint>) -> PyResult<Vec<Vec<i64>>> {
        let th = core_theta(&v.inner, &self.inner, &sigma.inner).map_err(err)?;
        let d = core_dimvec(&v.inner, &self.inner).map_err(err)?;
        core_screen(&th, &d).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Collection{}", self.inner)
    }
}

fn region_kind(name: &str, s: SurfaceKind) -> PyResult<RegionKind> {
    match (name, s) {
        ("F'", SurfaceKind::P1xP1) => Ok(RegionKind::P1p1),
        ("F'", SurfaceKind::BlpP2) => Ok(RegionKind::BlpPrime),
        ("F''", SurfaceKind::BlpP2) => Ok(RegionKind::BlpDoublePrime),
        _ => Err(PyValueError::new_err(format!("no region `{name}` on {}", s.name()))),
    }
}

/// Whether σ lies in the quiver region `name` twisted by `O(p, q)`.
#[pyfunction]
#[pyo3(signature = (name, sigma, twist = (0, 0)))]
fn in_region(name: &str, sigma: PyRef<'_, StabilityPoint>, twist: (i64, i64)) -> PyResult<bool> {
    let kind = region_kind(name, sigma.inner.surface())?;
    region(kind, twist).map_err(err)?.contains(&sigma.inner).map_err(err)
}

/// Covers the grid `box = (xmin, xmax, ymin, ymax)` by translated regions;
/// returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (surface, a, b, bbox, step))]
fn cover<'py>(
    py: Python<'py>,
    surface: &str,
    a: Bound<'py, PyAny>,
    b: Bound<'py, PyAny>,
    bbox: (Bound<'py, PyAny>, Bound<'py, PyAny>, Bound<'py, PyAny>, Bound<'py, PyAny>),
    step: Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let h = AmpleClass::new(self::surface(surface)?, rational(&a)?, rational(&b)?).map_err(err)?;
    let bx = CoverageBox {
        xmin: rational(&bbox.0)?,
        xmax: rational(&bbox.1)?,
        ymin: rational(&bbox.2)?,
        ymax: rational(&bbox.3)?,
    };
    let rep = coverage_check(&h, &bx, &rational(&step)?).map_err(err)?;
    json_value(py, &rep.to_json())
}

#[pymodule]
#[pyo3(name = "delpezzo")]
fn delpezzo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<ChernCharacter>()?;
    m.add_class::<StabilityPoint>()?;
    m.add_class::<Wall>()?;
    m.add_class::<Collection>()?;
    m.add_function(wrap_pyfunction!(euler_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(in_region, m)?)?;
    m.add_function(wrap_pyfunction!(cover, m)?)?;
    Ok(())
}
