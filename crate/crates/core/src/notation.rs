//! A small grammar for naming classes and objects:
//!
//! ```text
//! O            structure sheaf
//! O(p,q)       line bundle with c1 = (p, q) in the surface's NS basis
//! O(-E-2F)     blow-up sugar; any signed combination of E and F
//! T, O_E(E)    the torsion sheaf O_E(E) on the blow-up
//! G, G1, G2    the rank 2 and 3 bundles met in the mutations
//! (r,(p,q),c)  raw Chern character, entries rational
//! X[k]         shift suffix
//! ```

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{ChernCharacter, NsClass, SurfaceKind};
use crate::symkernel::{int, parse_rational, rat, Rational};

/// An unshifted class and its shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedClass {
    pub cls: ChernCharacter,
    pub shift: i64,
}

impl ShiftedClass {
    /// `(−1)^shift · cls`.
    pub fn k_class(&self) -> ChernCharacter {
        if self.shift.rem_euclid(2) == 0 {
            self.cls.clone()
        } else {
            -&self.cls
        }
    }
}

fn err(s: &str, why: &str) -> Error {
    Error::Parse(format!("`{s}`: {why}"))
}

pub fn parse_object(s: &str, surface: SurfaceKind) -> Result<ShiftedClass> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let text = text.replace('\u{2212}', "-");
    let (body, shift) = match text.strip_suffix(']') {
        Some(head) => {
            let open = head.rfind('[').ok_or_else(|| err(s, "unbalanced shift"))?;
            let k: i64 = head[open + 1..]
                .parse()
                .map_err(|_| err(s, "shift must be an integer"))?;
            (head[..open].to_string(), k)
        }
        None => (text, 0),
    };
    let cls = parse_body(&body, surface).map_err(|e| match e {
        Error::Parse(m) => err(s, &m),
        other => other,
    })?;
    Ok(ShiftedClass { cls, shift })
}

/// The signed K-class named by `s`.
pub fn parse_class(s: &str, surface: SurfaceKind) -> Result<ChernCharacter> {
    Ok(parse_object(s, surface)?.k_class())
}

fn parse_body(b: &str, surface: SurfaceKind) -> Result<ChernCharacter> {
    let blowup_only = |c: ChernCharacter| {
        if surface == SurfaceKind::BlpP2 {
            Ok(c)
        } else {
            Err(Error::Parse("only defined on the blow-up".into()))
        }
    };
    match b {
        "O" => return Ok(ChernCharacter::structure_sheaf(surface)),
        "T" | "O_E(E)" => return blowup_only(ChernCharacter::exceptional_torsion()),
        "G" if surface == SurfaceKind::P1xP1 => {
            return Ok(ChernCharacter::new(surface, 3, NsClass::ints(1, 1), int(-1)))
        }
        "G1" | "G2" => {
            return blowup_only(ChernCharacter::new(surface, 2, NsClass::ints(1, 1), rat(-1, 2)))
        }
        _ => {}
    }
    if let Some(inner) = b.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
        let c1 = if inner.contains(',') {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::Parse("expected O(p,q)".into()));
            }
            NsClass::new(parse_rational(parts[0])?, parse_rational(parts[1])?)
        } else {
            if surface != SurfaceKind::BlpP2 {
                return Err(Error::Parse("E/F notation is only defined on the blow-up".into()));
            }
            parse_ef(inner)?
        };
        if !c1.is_integral() {
            return Err(Error::Parse("line bundle needs integral c1".into()));
        }
        return Ok(ChernCharacter::line_bundle(surface, c1));
    }
    if let Some(inner) = b.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        // r,(p,q),c
        let open = inner.find('(').ok_or_else(|| Error::Parse("expected (r,(p,q),ch2)".into()))?;
        let close = inner.find(')').ok_or_else(|| Error::Parse("expected (r,(p,q),ch2)".into()))?;
        let rank = inner[..open]
            .strip_suffix(',')
            .ok_or_else(|| Error::Parse("expected (r,(p,q),ch2)".into()))?;
        let rank: i64 = rank.parse().map_err(|_| Error::Parse("rank must be an integer".into()))?;
        let c1: Vec<&str> = inner[open + 1..close].split(',').collect();
        if c1.len() != 2 {
            return Err(Error::Parse("c1 needs two coordinates".into()));
        }
        let ch2 = inner[close + 1..]
            .strip_prefix(',')
            .ok_or_else(|| Error::Parse("expected (r,(p,q),ch2)".into()))?;
        return Ok(ChernCharacter::new(
            surface,
            rank,
            NsClass::new(parse_rational(c1[0])?, parse_rational(c1[1])?),
            parse_rational(ch2)?,
        ));
    }
    Err(Error::Parse("unrecognized class literal".into()))
}

/// `mE + nF` with optional signs and integer coefficients.
fn parse_ef(s: &str) -> Result<NsClass> {
    let mut e = Rational::zero();
    let mut f = Rational::zero();
    let mut rest = s;
    if rest.is_empty() {
        return Err(Error::Parse("empty divisor".into()));
    }
    while !rest.is_empty() {
        let (sign, tail) = match rest.as_bytes()[0] {
            b'+' => (Rational::one(), &rest[1..]),
            b'-' => (-Rational::one(), &rest[1..]),
            _ if rest.len() == s.len() => (Rational::one(), rest),
            _ => return Err(Error::Parse("expected + or -".into())),
        };
        let end = tail
            .find(|c: char| c == 'E' || c == 'F')
            .ok_or_else(|| Error::Parse("expected E or F".into()))?;
        let coeff = if end == 0 { Rational::one() } else { parse_rational(&tail[..end])? };
        let target = if tail.as_bytes()[end] == b'E' { &mut e } else { &mut f };
        *target += sign * coeff;
        rest = &tail[end + 1..];
    }
    Ok(NsClass::new(e, f))
}

fn ef_text(p: &Rational, q: &Rational) -> String {
    let mut out = String::new();
    for (c, sym) in [(p, "E"), (q, "F")] {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Rational::zero();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = if neg { -c } else { c.clone() };
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(sym);
    }
    out
}

/// The literal for a line bundle.
pub fn line_bundle_label(surface: SurfaceKind, c1: &NsClass) -> String {
    if c1.is_zero() {
        return "O".into();
    }
    match surface {
        SurfaceKind::P1xP1 => format!("O({},{})", c1.0[0], c1.0[1]),
        SurfaceKind::BlpP2 => format!("O({})", ef_text(&c1.0[0], &c1.0[1])),
    }
}

/// A familiar name for an unshifted class, if it is a line bundle or `O_E(E)`.
pub fn class_name(cls: &ChernCharacter) -> Option<String> {
    if cls.rank == 1.into()
        && cls.c1.is_integral()
        && cls.ch2 == cls.surface.intersect(&cls.c1, &cls.c1) / int(2)
    {
        return Some(line_bundle_label(cls.surface, &cls.c1));
    }
    if *cls == ChernCharacter::exceptional_torsion() {
        return Some("O_E(E)".into());
    }
    None
}

/// A literal that parses back to the same class.
pub fn class_literal(cls: &ChernCharacter) -> String {
    class_name(cls).unwrap_or_else(|| {
        format!("({},({},{}),{})", cls.rank, cls.c1.0[0], cls.c1.0[1], cls.ch2)
    })
}

pub fn with_shift(name: &str, shift: i64) -> String {
    if shift == 0 {
        name.to_string()
    } else {
        format!("{name}[{shift}]")
    }
}
