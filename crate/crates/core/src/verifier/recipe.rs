//! Subgroup recipes, evaluated against a built ambient group.
//!
//! Points are 1-based in recipe text. A recipe yields a stream of
//! candidate subgroups: one for the deterministic heads, every hit for
//! `search`. Claims accept a row if any candidate meets the expectations.

use std::fmt;

use crate::atlas::groups::{coordinate_perm, top_perm, Built};
use crate::error::{Error, Result};
use crate::permcore::backtrack::set_stabilizer;
use crate::permcore::subgroups::{normalizer, sylow_subgroup, DEFAULT_ORBIT_CAP};
use crate::permcore::{Chain, ChainBuilder, Group, Perm};
use crate::structure::expr::{parse_struct, StructExpr};
use crate::structure::metacyclic::{sweep, SweepFilter};
use crate::structure::profile::profile;
use crate::structure::twogen::{pair_profile, two_generated};
use crate::syntax::{cycles_text, Parser, Tok};

/// Largest subgroup whose elements are walked to intersect with another.
pub const INTERSECTION_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SearchSpec {
    pub order: u128,
    pub transitive: bool,
    pub metacyclic: bool,
    pub structure: Option<StructExpr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    Sylow(u64),
    SylowNormalizer(u64),
    /// 1-based point
    PointStab(u64),
    /// 1-based points
    SetStab(Vec<u64>),
    /// 0-based cycles, as parsed
    Gens(Vec<Vec<Vec<u32>>>),
    Search(SearchSpec),
    /// normalizer of the first candidate
    Normalizer(Box<Recipe>),
    /// intersection with the ambient group's designated normal subgroup
    SocleMeet(Box<Recipe>),
    /// the second recipe evaluated inside the first candidate of the first
    Within(Box<Recipe>, Box<Recipe>),
    /// one factor-level recipe per coordinate of a wreath product
    Base(Vec<Recipe>),
    /// a factor-level recipe on the first coordinate, with the top group
    BaseWr(Box<Recipe>),
}

impl Recipe {
    /// True when evaluation yields exactly one subgroup.
    pub fn is_single(&self) -> bool {
        match self {
            Recipe::Search(_) => false,
            Recipe::Normalizer(r) | Recipe::SocleMeet(r) | Recipe::BaseWr(r) => r.is_single(),
            Recipe::Within(a, b) => a.is_single() && b.is_single(),
            Recipe::Base(rs) => rs.iter().all(Recipe::is_single),
            _ => true,
        }
    }

    pub fn parse(text: &str) -> Result<Recipe> {
        let mut p = Parser::new(text)?;
        let r = parse_recipe_at(&mut p)?;
        p.finish()?;
        Ok(r)
    }
}

fn one_num(p: &mut Parser) -> Result<u64> {
    p.expect_sym('(')?;
    let v = p.num()?;
    p.expect_sym(')')?;
    Ok(v)
}

fn sub(p: &mut Parser) -> Result<Box<Recipe>> {
    Ok(Box::new(parse_recipe_at(p)?))
}

pub fn parse_recipe_at(p: &mut Parser) -> Result<Recipe> {
    let head = match p.peek() {
        Tok::Ident(s) => s.clone(),
        _ => return p.error("expected a recipe"),
    };
    let r = match head.as_str() {
        "sylow" => {
            p.next();
            Recipe::Sylow(one_num(p)?)
        }
        "sylow_normalizer" => {
            p.next();
            Recipe::SylowNormalizer(one_num(p)?)
        }
        "point_stab" => {
            p.next();
            let i = one_num(p)?;
            if i == 0 {
                return p.error("points are numbered from 1");
            }
            Recipe::PointStab(i)
        }
        "set_stab" => {
            p.next();
            p.expect_sym('(')?;
            p.expect_sym('[')?;
            let mut pts = Vec::new();
            loop {
                let x = p.num()?;
                if x == 0 {
                    return p.error("points are numbered from 1");
                }
                pts.push(x);
                if !p.eat_sym(',') {
                    break;
                }
            }
            p.expect_sym(']')?;
            p.expect_sym(')')?;
            Recipe::SetStab(pts)
        }
        "gens" => {
            p.next();
            p.expect_sym('(')?;
            p.expect_sym('[')?;
            let mut gens = Vec::new();
            if !p.is_sym(']') {
                loop {
                    gens.push(p.cycles()?);
                    if !p.eat_sym(',') {
                        break;
                    }
                }
            }
            p.expect_sym(']')?;
            p.expect_sym(')')?;
            Recipe::Gens(gens)
        }
        "search" => {
            p.next();
            p.expect_sym('(')?;
            let mut s = SearchSpec { order: 0, transitive: false, metacyclic: false, structure: None };
            let mut have_order = false;
            loop {
                let key = p.ident()?;
                match key.as_str() {
                    "order" => {
                        p.expect_sym('=')?;
                        s.order = p.num()? as u128;
                        have_order = true;
                    }
                    "transitive" => s.transitive = true,
                    "metacyclic" => s.metacyclic = true,
                    "structure" => {
                        p.expect_sym('=')?;
                        s.structure = Some(parse_struct(p)?);
                    }
                    _ => return p.error(format!("unknown search option `{key}`")),
                }
                if !p.eat_sym(',') {
                    break;
                }
            }
            if !have_order {
                return p.error("search needs `order=`");
            }
            p.expect_sym(')')?;
            Recipe::Search(s)
        }
        "socle_meet" | "base_wr" | "normalizer" => {
            p.next();
            p.expect_sym('(')?;
            let r = sub(p)?;
            p.expect_sym(')')?;
            match head.as_str() {
                "socle_meet" => Recipe::SocleMeet(r),
                "normalizer" => Recipe::Normalizer(r),
                _ => Recipe::BaseWr(r),
            }
        }
        "within" => {
            p.next();
            p.expect_sym('(')?;
            let a = sub(p)?;
            p.expect_sym(',')?;
            let b = sub(p)?;
            p.expect_sym(')')?;
            Recipe::Within(a, b)
        }
        "base" => {
            p.next();
            p.expect_sym('(')?;
            let mut rs = vec![parse_recipe_at(p)?];
            while p.eat_sym(',') {
                rs.push(parse_recipe_at(p)?);
            }
            p.expect_sym(')')?;
            Recipe::Base(rs)
        }
        _ => return p.error(format!("unknown recipe `{head}`")),
    };
    Ok(r)
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Recipe::Sylow(p) => write!(f, "sylow({p})"),
            Recipe::SylowNormalizer(p) => write!(f, "sylow_normalizer({p})"),
            Recipe::PointStab(i) => write!(f, "point_stab({i})"),
            Recipe::SetStab(s) => write!(f, "set_stab([{}])", join(s)),
            Recipe::Gens(g) => {
                let v: Vec<String> = g.iter().map(|c| cycles_text(c)).collect();
                write!(f, "gens([{}])", v.join(", "))
            }
            Recipe::Search(s) => {
                write!(f, "search(order={}", s.order)?;
                if s.transitive {
                    write!(f, ", transitive")?;
                }
                if s.metacyclic {
                    write!(f, ", metacyclic")?;
                }
                if let Some(e) = &s.structure {
                    write!(f, ", structure={e}")?;
                }
                write!(f, ")")
            }
            Recipe::Normalizer(r) => write!(f, "normalizer({r})"),
            Recipe::SocleMeet(r) => write!(f, "socle_meet({r})"),
            Recipe::Within(a, b) => write!(f, "within({a}, {b})"),
            Recipe::Base(rs) => {
                let v: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
                write!(f, "base({})", v.join(", "))
            }
            Recipe::BaseWr(r) => write!(f, "base_wr({r})"),
        }
    }
}

/// `h` intersected with `s`, walking the elements of the smaller one.
pub fn intersection(h: &Group, s: &Group) -> Result<Group> {
    let (small, big) = if h.order() <= s.order() { (h, s) } else { (s, h) };
    if small.order() > INTERSECTION_CAP {
        return Err(Error::CapExceeded { what: "intersection", size: small.order(), cap: INTERSECTION_CAP });
    }
    let mut c = Chain::trivial(h.degree());
    small.chain().for_each_element(|x| {
        if !c.contains(x) && big.contains(x) {
            c.add_gen(x);
        }
        true
    });
    Ok(Group::from_chain(c))
}

fn point_stabilizer(g: &Group, x: u32) -> Group {
    let c = ChainBuilder::new(g.degree()).gens(g.gens()).base_prefix(&[x]).known_order(g.order()).build();
    Group::from_chain(c.stabilizer_chain(1))
}

fn wreath_factor(b: &Built) -> Result<(&Built, usize)> {
    match &b.factor {
        Some((h, k)) => Ok((h, *k)),
        None => Err(Error::InvalidArgument("base recipes need a wreath product".into())),
    }
}

/// The first candidate of `r`.
pub fn first(b: &Built, r: &Recipe, seed: u64) -> Result<Group> {
    let mut out = None;
    candidates(b, r, seed, &mut |h| {
        out = Some(h);
        false
    })?;
    out.ok_or_else(|| Error::SearchFailed(format!("`{r}` produced no subgroup")))
}

/// Feed the candidates of `r` to `visit` until it returns `false`.
pub fn candidates(b: &Built, r: &Recipe, seed: u64, visit: &mut dyn FnMut(Group) -> bool) -> Result<()> {
    let g = &b.group;
    let n = g.degree();
    let single = |h: Group, visit: &mut dyn FnMut(Group) -> bool| {
        visit(h);
        Ok(())
    };
    match r {
        Recipe::Sylow(p) => single(sylow_subgroup(g, *p, DEFAULT_ORBIT_CAP)?.group, visit),
        Recipe::SylowNormalizer(p) => {
            let s = sylow_subgroup(g, *p, DEFAULT_ORBIT_CAP)?;
            single(normalizer(g, &s, DEFAULT_ORBIT_CAP)?, visit)
        }
        Recipe::PointStab(i) => {
            if *i as usize > n {
                return Err(Error::PointOutOfRange { point: *i as usize, degree: n });
            }
            single(point_stabilizer(g, *i as u32 - 1), visit)
        }
        Recipe::SetStab(pts) => {
            if let Some(&x) = pts.iter().find(|&&x| x as usize > n) {
                return Err(Error::PointOutOfRange { point: x as usize, degree: n });
            }
            let s: Vec<u32> = pts.iter().map(|&x| x as u32 - 1).collect();
            single(set_stabilizer(g, &s), visit)
        }
        Recipe::Gens(cs) => {
            let gens = cs.iter().map(|c| Perm::from_cycles(n, c)).collect::<Result<Vec<_>>>()?;
            if !gens.iter().all(|x| g.contains(x)) {
                return Err(Error::NotInGroup);
            }
            single(Group::new(n, gens)?, visit)
        }
        Recipe::Search(s) => search(g, s, seed, visit),
        Recipe::Normalizer(inner) => {
            let h = first(b, inner, seed)?;
            single(normalizer(g, &h, DEFAULT_ORBIT_CAP)?, visit)
        }
        Recipe::SocleMeet(inner) => {
            let soc = b.socle.clone().ok_or_else(|| Error::InvalidArgument(format!("{} has no designated normal subgroup", g.label())))?;
            let mut err = None;
            candidates(b, inner, seed, &mut |h| match intersection(&h, &soc) {
                Ok(x) => visit(x),
                Err(e) => {
                    err = Some(e);
                    false
                }
            })?;
            err.map_or(Ok(()), Err)
        }
        Recipe::Within(outer, inner) => {
            let h = first(b, outer, seed)?;
            let hb = Built { group: h, socle: None, factor: None };
            candidates(&hb, inner, seed, visit)
        }
        Recipe::Base(rs) => {
            let (h, k) = wreath_factor(b)?;
            if rs.len() != k {
                return Err(Error::InvalidArgument(format!("base() needs {k} recipes, got {}", rs.len())));
            }
            let d = h.group.degree();
            let mut gens = Vec::new();
            for (c, ri) in rs.iter().enumerate() {
                let x = first(h, ri, seed)?;
                gens.extend(x.gens().iter().map(|s| coordinate_perm(d, k, c, s)));
            }
            single(Group::new(n, gens)?, visit)
        }
        Recipe::BaseWr(ri) => {
            let (h, k) = wreath_factor(b)?;
            let d = h.group.degree();
            let x = first(h, ri, seed)?;
            let mut gens: Vec<Perm> = x.gens().iter().map(|s| coordinate_perm(d, k, 0, s)).collect();
            let mut t: Vec<usize> = (0..k).collect();
            t.swap(0, 1);
            gens.push(top_perm(d, k, &t));
            if k > 2 {
                gens.push(top_perm(d, k, &(0..k).map(|i| (i + 1) % k).collect::<Vec<_>>()));
            }
            single(Group::new(n, gens)?, visit)
        }
    }
}

fn search(g: &Group, s: &SearchSpec, seed: u64, visit: &mut dyn FnMut(Group) -> bool) -> Result<()> {
    let mut err = None;
    let mut accept = |h: Group, visit: &mut dyn FnMut(Group) -> bool| -> bool {
        if s.transitive && !profile(&h).transitive {
            return true;
        }
        if let Some(e) = &s.structure {
            match e.matches(&h) {
                Ok(true) => {}
                Ok(false) => return true,
                Err(x) => {
                    err = Some(x);
                    return false;
                }
            }
        }
        visit(h)
    };
    if s.metacyclic {
        let filter = SweepFilter { order: Some(s.order), transitive: s.transitive };
        sweep(g, seed, &filter, &mut |f| accept(f.group, visit))?;
    } else {
        let model = match &s.structure {
            Some(e) => e.model()?,
            None => None,
        };
        let prof = model.as_ref().and_then(pair_profile);
        two_generated(g, s.order, prof.as_ref(), &mut |h| accept(h, visit))?;
    }
    err.map_or(Ok(()), Err)
}
