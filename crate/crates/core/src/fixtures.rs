//! Named collections: the line bundle collections, their tilts and the
//! duals whose quiver regions are studied.

use crate::error::{Error, Result};
use crate::helix::{dual_collection, left_tilt, ExcCollection, Helix};
use crate::lattice::SurfaceKind;

pub const NAMES: [(SurfaceKind, &str); 9] = [
    (SurfaceKind::P1xP1, "E"),
    (SurfaceKind::P1xP1, "E'"),
    (SurfaceKind::P1xP1, "F'"),
    (SurfaceKind::BlpP2, "E"),
    (SurfaceKind::BlpP2, "E'"),
    (SurfaceKind::BlpP2, "F'"),
    (SurfaceKind::BlpP2, "Ehat"),
    (SurfaceKind::BlpP2, "E''"),
    (SurfaceKind::BlpP2, "F''"),
];

fn tilt_last(e: ExcCollection) -> Result<ExcCollection> {
    let star = e.len() as i64 - 1;
    Ok(left_tilt(&Helix::new(e)?, star)?.base)
}

pub fn fixture(surface: SurfaceKind, name: &str) -> Result<ExcCollection> {
    use SurfaceKind::*;
    let lb = ExcCollection::line_bundles;
    match (surface, name) {
        (P1xP1, "E") => Ok(lb(P1xP1, &[(0, 0), (1, 0), (0, 1), (1, 1)])),
        (P1xP1, "E'") => tilt_last(fixture(P1xP1, "E")?),
        (BlpP2, "E") => Ok(lb(BlpP2, &[(0, 0), (0, 1), (1, 1), (1, 2)])),
        (BlpP2, "E'") => tilt_last(fixture(BlpP2, "E")?),
        (BlpP2, "Ehat") => Ok(lb(BlpP2, &[(0, 0), (1, 0), (1, 1), (2, 2)])),
        (BlpP2, "E''") => tilt_last(fixture(BlpP2, "Ehat")?),
        (_, "F'") => dual_collection(&fixture(surface, "E'")?),
        (BlpP2, "F''") => dual_collection(&fixture(BlpP2, "E''")?),
        _ => {
            let known: Vec<&str> = NAMES.iter().filter(|(s, _)| *s == surface).map(|(_, n)| *n).collect();
            Err(Error::InvalidArgument(format!(
                "no fixture `{name}` on {}; known: {}",
                surface.name(),
                known.join(", ")
            )))
        }
    }
}
