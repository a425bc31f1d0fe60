use super::perm::Perm;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// An orbit with its Schreier tree: every point remembers the point it was
/// reached from and the generator used.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<u32>,
    parent: Vec<(u32, u32)>,
    pos: Vec<u32>,
}

impl Orbit {
    pub fn contains(&self, x: u32) -> bool {
        self.pos.get(x as usize).is_some_and(|&p| p != NONE)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Generator indices `w` with `root^(g_w0 g_w1 ..) = x`.
    pub fn word(&self, x: u32) -> Option<Vec<usize>> {
        let mut i = *self.pos.get(x as usize)?;
        if i == NONE {
            return None;
        }
        let mut w = Vec::new();
        while self.parent[i as usize].0 != NONE {
            let (p, g) = self.parent[i as usize];
            w.push(g as usize);
            i = p;
        }
        w.reverse();
        Some(w)
    }

    pub fn rep(&self, gens: &[Perm], x: u32) -> Option<Perm> {
        let n = gens.first().map_or(self.pos.len(), |g| g.degree());
        let w = self.word(x)?;
        let mut u = Perm::identity(n);
        for g in w {
            u.mul_assign(&gens[g]);
        }
        Some(u)
    }
}

pub fn orbit(n: usize, gens: &[Perm], p: u32) -> Result<Orbit> {
    if p as usize >= n {
        return Err(Error::PointOutOfRange { point: p as usize, degree: n });
    }
    let mut pos = vec![NONE; n];
    let mut points = vec![p];
    let mut parent = vec![(NONE, NONE)];
    pos[p as usize] = 0;
    let mut i = 0;
    while i < points.len() {
        let x = points[i];
        for (gi, g) in gens.iter().enumerate() {
            let y = g.apply(x);
            if pos[y as usize] == NONE {
                pos[y as usize] = points.len() as u32;
                points.push(y);
                parent.push((i as u32, gi as u32));
            }
        }
        i += 1;
    }
    Ok(Orbit { points, parent, pos })
}

/// All orbits, each sorted, ordered by smallest point.
pub fn orbits(n: usize, gens: &[Perm]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orb = vec![s as u32];
        seen[s] = true;
        let mut i = 0;
        while i < orb.len() {
            let x = orb[i];
            for g in gens {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orb.push(y);
                }
            }
            i += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

pub fn is_transitive(n: usize, gens: &[Perm]) -> bool {
    n <= 1 || orbit(n, gens, 0).map(|o| o.len() == n).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym4_transitive() {
        let g = vec![Perm::parse("(1,2)", 4).unwrap(), Perm::parse("(1,2,3,4)", 4).unwrap()];
        let o = orbit(4, &g, 0).unwrap();
        assert_eq!(o.len(), 4);
        for x in 0..4 {
            let u = o.rep(&g, x).unwrap();
            assert_eq!(u.apply(0), x);
        }
    }

    #[test]
    fn fixed_point_of_11_cycle() {
        let c = Perm::parse("(1,2,3,4,5,6,7,8,9,10,11)", 12).unwrap();
        let o = orbit(12, &[c], 11).unwrap();
        assert_eq!(o.points, vec![11]);
        assert!(orbit(12, &[], 12).is_err());
    }
}
