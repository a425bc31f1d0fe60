//! Group specifications: the constructor expressions naming every group the
//! claim files use, e.g. `PSL(2,11)@11` or `wreath(M11, 2)`.

use std::fmt;

use crate::error::Result;
use crate::syntax::{cycles_text, Parser, Tok};
use crate::verifier::recipe::{parse_recipe_at, Recipe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classical {
    PSL,
    PGL,
    PSigmaL,
    PGammaL,
    PSp,
    PSU,
    PGammaU,
    AGL,
    AGammaL,
}

impl Classical {
    const ALL: [Classical; 9] = [
        Classical::PSL,
        Classical::PGL,
        Classical::PSigmaL,
        Classical::PGammaL,
        Classical::PSp,
        Classical::PSU,
        Classical::PGammaU,
        Classical::AGL,
        Classical::AGammaL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Classical::PSL => "PSL",
            Classical::PGL => "PGL",
            Classical::PSigmaL => "PSigmaL",
            Classical::PGammaL => "PGammaL",
            Classical::PSp => "PSp",
            Classical::PSU => "PSU",
            Classical::PGammaU => "PGammaU",
            Classical::AGL => "AGL",
            Classical::AGammaL => "AGammaL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Sym(u64),
    Alt(u64),
    Cyclic(u64),
    /// `D(2n)`, stored by its order
    Dihedral(u64),
    /// generalized quaternion, stored by its order
    Quaternion(u64),
    /// `Z_p:Z_d` on `p` points
    Frobenius { p: u64, d: u64 },
    /// `Z_m:Z_d` with `b^-1 a b = a^r`, regular on `m d` points
    Split { m: u64, d: u64, r: u64 },
    Classical { kind: Classical, n: u64, q: u64 },
    /// `ext` selects `M12:2` or `M22:2`
    Mathieu { n: u64, ext: bool },
    /// extension by the inverse-transpose map, on points and hyperplanes
    Graph(Box<GroupSpec>),
    Wreath { base: Box<GroupSpec>, k: u64 },
    Hol(Box<GroupSpec>),
    Diag { t: Box<GroupSpec>, outer: bool },
    Coset { group: Box<GroupSpec>, sub: Box<Recipe> },
    /// explicit generators on `degree` points (0-based cycles)
    Perms { degree: u64, gens: Vec<Vec<Vec<u32>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    /// requested degree of the action
    pub at: Option<u64>,
}

impl GroupSpec {
    pub fn new(family: Family) -> GroupSpec {
        GroupSpec { family, at: None }
    }

    pub fn parse(text: &str) -> Result<GroupSpec> {
        let mut p = Parser::new(text)?;
        let s = parse_spec(&mut p)?;
        p.finish()?;
        Ok(s)
    }
}

fn args1(p: &mut Parser) -> Result<u64> {
    p.expect_sym('(')?;
    let a = p.num()?;
    p.expect_sym(')')?;
    Ok(a)
}

fn args2(p: &mut Parser) -> Result<(u64, u64)> {
    p.expect_sym('(')?;
    let a = p.num()?;
    p.expect_sym(',')?;
    let b = p.num()?;
    p.expect_sym(')')?;
    Ok((a, b))
}

fn inner(p: &mut Parser) -> Result<Box<GroupSpec>> {
    p.expect_sym('(')?;
    let s = parse_spec(p)?;
    Ok(Box::new(s))
}

/// Parse one spec at the cursor.
pub fn parse_spec(p: &mut Parser) -> Result<GroupSpec> {
    let name = match p.peek() {
        Tok::Ident(s) => s.clone(),
        _ => return p.error("expected a group"),
    };
    let family = match name.as_str() {
        "Sym" | "Alt" | "C" | "D" | "Q" => {
            p.next();
            let a = args1(p)?;
            match name.as_str() {
                "Sym" => Family::Sym(a),
                "Alt" => Family::Alt(a),
                "C" => Family::Cyclic(a),
                "D" => Family::Dihedral(a),
                _ => Family::Quaternion(a),
            }
        }
        "Q8" => {
            p.next();
            Family::Quaternion(8)
        }
        "F" => {
            p.next();
            let (p_, d) = args2(p)?;
            Family::Frobenius { p: p_, d }
        }
        "SD" => {
            p.next();
            p.expect_sym('(')?;
            let m = p.num()?;
            p.expect_sym(',')?;
            let d = p.num()?;
            p.expect_sym(',')?;
            let r = p.num()?;
            p.expect_sym(')')?;
            Family::Split { m, d, r }
        }
        "M9" | "M10" | "M11" | "M12" | "M22" | "M23" | "M24" => {
            p.next();
            let n: u64 = name[1..].parse().expect("digits");
            let mut ext = false;
            if p.is_sym(':') {
                if n != 12 && n != 22 {
                    return p.error("only M12 and M22 take `:2`");
                }
                p.next();
                if p.num()? != 2 {
                    return p.error("expected `:2`");
                }
                ext = true;
            }
            Family::Mathieu { n, ext }
        }
        "graph" | "hol" => {
            p.next();
            let s = inner(p)?;
            p.expect_sym(')')?;
            if name == "graph" {
                Family::Graph(s)
            } else {
                Family::Hol(s)
            }
        }
        "wreath" => {
            p.next();
            let base = inner(p)?;
            p.expect_sym(',')?;
            let k = p.num()?;
            p.expect_sym(')')?;
            Family::Wreath { base, k }
        }
        "diag" => {
            p.next();
            let t = inner(p)?;
            let mut outer = false;
            if p.eat_sym(',') {
                if !p.is_ident("outer") {
                    return p.error("expected `outer`");
                }
                p.next();
                outer = true;
            }
            p.expect_sym(')')?;
            Family::Diag { t, outer }
        }
        "coset" => {
            p.next();
            let group = inner(p)?;
            p.expect_sym(',')?;
            let sub = Box::new(parse_recipe_at(p)?);
            p.expect_sym(')')?;
            Family::Coset { group, sub }
        }
        "Perms" => {
            p.next();
            p.expect_sym('(')?;
            let degree = p.num()?;
            let mut gens = Vec::new();
            while p.eat_sym(',') {
                gens.push(p.cycles()?);
            }
            p.expect_sym(')')?;
            Family::Perms { degree, gens }
        }
        _ => match Classical::ALL.iter().find(|c| c.name() == name) {
            Some(&kind) => {
                p.next();
                let (n, q) = args2(p)?;
                Family::Classical { kind, n, q }
            }
            None => return p.error(format!("unknown group family `{name}`")),
        },
    };
    let at = if p.eat_sym('@') { Some(p.num()?) } else { None };
    Ok(GroupSpec { family, at })
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Sym(n) => write!(f, "Sym({n})")?,
            Family::Alt(n) => write!(f, "Alt({n})")?,
            Family::Cyclic(n) => write!(f, "C({n})")?,
            Family::Dihedral(n) => write!(f, "D({n})")?,
            Family::Quaternion(n) => write!(f, "Q({n})")?,
            Family::Frobenius { p, d } => write!(f, "F({p},{d})")?,
            Family::Split { m, d, r } => write!(f, "SD({m},{d},{r})")?,
            Family::Classical { kind, n, q } => write!(f, "{}({n},{q})", kind.name())?,
            Family::Mathieu { n, ext } => write!(f, "M{n}{}", if *ext { ":2" } else { "" })?,
            Family::Graph(s) => write!(f, "graph({s})")?,
            Family::Wreath { base, k } => write!(f, "wreath({base}, {k})")?,
            Family::Hol(s) => write!(f, "hol({s})")?,
            Family::Diag { t, outer } => write!(f, "diag({t}{})", if *outer { ", outer" } else { "" })?,
            Family::Coset { group, sub } => write!(f, "coset({group}, {sub})")?,
            Family::Perms { degree, gens } => {
                write!(f, "Perms({degree}")?;
                for g in gens {
                    write!(f, ", {}", cycles_text(g))?;
                }
                write!(f, ")")?;
            }
        }
        if let Some(d) = self.at {
            write!(f, "@{d}")?;
        }
        Ok(())
    }
}
