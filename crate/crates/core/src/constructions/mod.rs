//! Generators for the lower-bound families and the checks of every
//! property claimed for them.

mod planar;
mod simplex;

pub use planar::{
    generate_planar, place_triangles, planar_lower_bounds, PlanarAudit, PlanarConstruction, PlanarLowerBounds,
    TrianglePlacement,
};
pub use simplex::{
    generate_simplex_family, max_simplex_facets_crossed, relint_check, relint_sweep, simplex_lower_bounds,
    verify_relint_property, FacetCrossingReport, FacetGroupSeparation, RelintCertificate, RelintReport,
    SimplexConstruction, SimplexLowerBounds,
};

use crate::error::{Error, Result};
use crate::geometry::{intersect_refs, Hyperplane, Polyhedron};
use crate::helly::ColoredFamily;
use crate::linalg::unit;
use crate::rational::q;

/// `d` classes of `n` parallel hyperplanes `x_i = 0, ..., n-1`, one class
/// per axis, plus the class `{R^d}`.
pub fn generate_figure1(d: usize, n: usize) -> Result<ColoredFamily> {
    if d < 2 || n == 0 {
        return Err(Error::InvalidInput("need d >= 2 and at least one hyperplane per class".into()));
    }
    let mut classes: Vec<Vec<Polyhedron>> = (0..d)
        .map(|i| {
            (0..n)
                .map(|c| Hyperplane::new(unit(d, i), q(c as i64)).map(|h| h.as_polyhedron()))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    classes.push(vec![Polyhedron::universe(d)]);
    ColoredFamily::new(d, classes)
}

/// The first triple (in lexicographic order) of sets with a common point.
pub(crate) fn no_three_meet(sets: &[Polyhedron]) -> Result<Option<[usize; 3]>> {
    let n = sets.len();
    for i in 0..n {
        for j in i + 1..n {
            if intersect_refs(&[&sets[i], &sets[j]])?.is_empty() {
                continue;
            }
            for k in j + 1..n {
                if !intersect_refs(&[&sets[i], &sets[j], &sets[k]])?.is_empty() {
                    return Ok(Some([i, j, k]));
                }
            }
        }
    }
    Ok(None)
}
