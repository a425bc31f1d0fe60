//! Finding point sets that claims then quote verbatim.

use crate::atlas::groups::build_group;
use crate::atlas::spec::GroupSpec;
use crate::error::{Error, Result};
use crate::permcore::backtrack::set_stabilizer;
use crate::permcore::orbit::orbits;
use crate::permcore::Group;

/// Pointwise stabilizer of `pts` (0-based).
fn fixer(g: &Group, pts: &[u32]) -> Group {
    let mut h = g.clone();
    for &p in pts {
        h = set_stabilizer(&h, &[p]);
    }
    h
}

/// A heptad of `M23`: the 7-set left when the added point is removed from
/// an octad through it. Its stabilizer is `2^4:A7`, of index 253.
///
/// The 4 points `0..4` together with the added point lie in one octad, and
/// the pointwise stabilizer of those 5 points has an orbit of length 3 on
/// the rest of that octad. Returned 1-based and sorted.
pub fn heptad() -> Result<Vec<u64>> {
    let m23 = build_group(&GroupSpec::parse("M23")?)?;
    let base = [0u32, 1, 2, 3];
    let h = fixer(&m23, &base);
    let three: Vec<_> = orbits(m23.degree(), h.gens()).into_iter().filter(|o| o.len() == 3).collect();
    if three.len() != 1 {
        return Err(Error::SearchFailed(format!("expected one orbit of length 3, got {}", three.len())));
    }
    let mut set: Vec<u32> = base.to_vec();
    set.extend(&three[0]);
    set.sort_unstable();
    let stab = set_stabilizer(&m23, &set);
    if stab.order() != 40_320 {
        return Err(Error::SearchFailed(format!("7-set stabilizer has order {}", stab.order())));
    }
    Ok(set.into_iter().map(|p| p as u64 + 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heptad_stabilizer() {
        let h = heptad().unwrap();
        assert_eq!(h.len(), 7);
        assert_eq!(&h[..4], &[1, 2, 3, 4]);
    }
}
