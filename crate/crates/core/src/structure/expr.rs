//! Expected-structure expressions.
//!
//! ```text
//! expr := conj ('&' conj)*
//! conj := '~'? prod
//! prod := atom ('*' atom)*
//! atom := '(' expr ')' | 'M(' m ',' d ')' | 'sig{' field,.. '}' | group spec
//! ```
//!
//! A group spec matches when its signature equals the candidate's; `*` is
//! the external direct product of group specs. `M(m,d)` asks for a cyclic
//! normal subgroup of order `m` with cyclic quotient of order `d`.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;

use super::metacyclic::metacyclic_witness_where;
use super::signature::{signature, Signature};
use crate::atlas::groups::build_group;
use crate::atlas::spec::{parse_spec, GroupSpec};
use crate::error::{Error, Result};
use crate::permcore::{Group, Perm};
use crate::syntax::{Parser, Tok};

/// A partial signature; absent fields match anything.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SigPattern {
    pub order: Option<u128>,
    pub orders: Option<BTreeMap<u64, u64>>,
    pub abelian: Option<Vec<u64>>,
    /// `Some(None)` is `derived=none`
    pub derived: Option<Option<u32>>,
}

impl SigPattern {
    pub fn matches(&self, s: &Signature) -> bool {
        self.order.is_none_or(|o| o == s.order)
            && self.orders.as_ref().is_none_or(|o| *o == s.element_orders)
            && self.abelian.as_ref().is_none_or(|a| *a == s.abelian_invariants)
            && self.derived.is_none_or(|d| d == s.derived_length)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StructExpr {
    And(Vec<StructExpr>),
    Not(Box<StructExpr>),
    Product(Vec<StructExpr>),
    Group(GroupSpec),
    Meta { m: u64, d: u64 },
    Sig(SigPattern),
}

impl StructExpr {
    pub fn parse(text: &str) -> Result<StructExpr> {
        let mut p = Parser::new(text)?;
        let e = parse_struct(&mut p)?;
        p.finish()?;
        Ok(e)
    }

    /// A concrete group with this structure, when the expression names one.
    pub fn model(&self) -> Result<Option<Group>> {
        match self {
            StructExpr::Group(s) => Ok(Some(build_group(s)?)),
            StructExpr::Product(xs) => {
                let mut parts = Vec::new();
                for x in xs {
                    match x.model()? {
                        Some(g) => parts.push(g),
                        None => return Ok(None),
                    }
                }
                Ok(Some(direct_product(&parts)?))
            }
            StructExpr::And(xs) => {
                for x in xs {
                    if let Some(g) = x.model()? {
                        return Ok(Some(g));
                    }
                }
                Ok(None)
            }
            _ => Ok(None),
        }
    }

    /// Expected order, when the expression pins one.
    pub fn order(&self) -> Result<Option<u128>> {
        Ok(match self {
            StructExpr::Meta { m, d } => Some(*m as u128 * *d as u128),
            StructExpr::Sig(p) => p.order,
            StructExpr::And(xs) => {
                for x in xs {
                    if let Some(o) = x.order()? {
                        return Ok(Some(o));
                    }
                }
                None
            }
            StructExpr::Not(_) => None,
            _ => self.model()?.map(|g| g.order()),
        })
    }

    pub fn matches(&self, h: &Group) -> Result<bool> {
        let sig = OnceCell::new();
        self.eval(h, &sig)
    }

    fn eval(&self, h: &Group, sig: &OnceCell<Signature>) -> Result<bool> {
        let own = || -> Result<&Signature> {
            if let Some(s) = sig.get() {
                return Ok(s);
            }
            let s = signature(h)?;
            Ok(sig.get_or_init(|| s))
        };
        match self {
            StructExpr::And(xs) => {
                for x in xs {
                    if !x.eval(h, sig)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            StructExpr::Not(x) => Ok(!x.eval(h, sig)?),
            StructExpr::Meta { m, d } => {
                if h.order() != *m as u128 * *d as u128 {
                    return Ok(false);
                }
                Ok(metacyclic_witness_where(h, |c, q| c == *m && q == *d)?.is_some())
            }
            StructExpr::Sig(p) => {
                if p.order.is_some_and(|o| o != h.order()) {
                    return Ok(false);
                }
                Ok(p.matches(own()?))
            }
            StructExpr::Group(_) | StructExpr::Product(_) => {
                let model = self.model()?.ok_or_else(|| Error::InvalidArgument(format!("`{self}` names no group")))?;
                if model.order() != h.order() {
                    return Ok(false);
                }
                Ok(signature(&model)? == *own()?)
            }
        }
    }
}

/// External direct product, acting on the disjoint union of the factors'
/// point sets.
pub fn direct_product(parts: &[Group]) -> Result<Group> {
    let n: usize = parts.iter().map(|g| g.degree()).sum();
    let mut gens = Vec::new();
    let mut off = 0;
    for g in parts {
        for s in g.gens() {
            let img: Vec<u32> = (0..n as u32)
                .map(|x| {
                    let x_ = x as usize;
                    if x_ >= off && x_ < off + g.degree() {
                        s.apply(x - off as u32) + off as u32
                    } else {
                        x
                    }
                })
                .collect();
            gens.push(Perm::from_images(img)?);
        }
        off += g.degree();
    }
    Group::new(n, gens)
}

pub fn parse_struct(p: &mut Parser) -> Result<StructExpr> {
    let mut xs = vec![conj(p)?];
    while p.eat_sym('&') {
        xs.push(conj(p)?);
    }
    Ok(if xs.len() == 1 { xs.pop().unwrap() } else { StructExpr::And(xs) })
}

fn conj(p: &mut Parser) -> Result<StructExpr> {
    if p.eat_sym('~') {
        return Ok(StructExpr::Not(Box::new(prod(p)?)));
    }
    prod(p)
}

fn prod(p: &mut Parser) -> Result<StructExpr> {
    let mut xs = vec![atom(p)?];
    while p.eat_sym('*') {
        xs.push(atom(p)?);
    }
    Ok(if xs.len() == 1 { xs.pop().unwrap() } else { StructExpr::Product(xs) })
}

fn atom(p: &mut Parser) -> Result<StructExpr> {
    if p.eat_sym('(') {
        let e = parse_struct(p)?;
        p.expect_sym(')')?;
        return Ok(e);
    }
    if p.is_ident("M") && *p.peek_at(1) == Tok::Sym('(') {
        p.next();
        p.next();
        let m = p.num()?;
        p.expect_sym(',')?;
        let d = p.num()?;
        p.expect_sym(')')?;
        return Ok(StructExpr::Meta { m, d });
    }
    if p.is_ident("sig") {
        p.next();
        return Ok(StructExpr::Sig(sig_pattern(p)?));
    }
    Ok(StructExpr::Group(parse_spec(p)?))
}

fn sig_pattern(p: &mut Parser) -> Result<SigPattern> {
    let mut pat = SigPattern::default();
    p.expect_sym('{')?;
    loop {
        let key = p.ident()?;
        p.expect_sym('=')?;
        match key.as_str() {
            "order" => pat.order = Some(p.num()? as u128),
            "orders" => {
                let mut m = BTreeMap::new();
                p.expect_sym('{')?;
                if !p.is_sym('}') {
                    loop {
                        let k = p.num()?;
                        p.expect_sym(':')?;
                        m.insert(k, p.num()?);
                        if !p.eat_sym(',') {
                            break;
                        }
                    }
                }
                p.expect_sym('}')?;
                pat.orders = Some(m);
            }
            "abelian" => {
                let mut v = Vec::new();
                p.expect_sym('[')?;
                if !p.is_sym(']') {
                    loop {
                        v.push(p.num()?);
                        if !p.eat_sym(',') {
                            break;
                        }
                    }
                }
                p.expect_sym(']')?;
                pat.abelian = Some(v);
            }
            "derived" => {
                if p.is_ident("none") {
                    p.next();
                    pat.derived = Some(None);
                } else {
                    pat.derived = Some(Some(p.num()? as u32));
                }
            }
            _ => return p.error(format!("unknown signature field `{key}`")),
        }
        if !p.eat_sym(',') {
            break;
        }
    }
    p.expect_sym('}')?;
    Ok(pat)
}

impl fmt::Display for SigPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(o) = self.order {
            parts.push(format!("order={o}"));
        }
        if let Some(m) = &self.orders {
            let v: Vec<String> = m.iter().map(|(k, c)| format!("{k}:{c}")).collect();
            parts.push(format!("orders={{{}}}", v.join(",")));
        }
        if let Some(a) = &self.abelian {
            let v: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            parts.push(format!("abelian=[{}]", v.join(",")));
        }
        match self.derived {
            Some(Some(d)) => parts.push(format!("derived={d}")),
            Some(None) => parts.push("derived=none".into()),
            None => {}
        }
        write!(f, "sig{{{}}}", parts.join(","))
    }
}

impl fmt::Display for StructExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // operands that bind looser than their context get parentheses
        fn operand(e: &StructExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                StructExpr::And(_) | StructExpr::Not(_) | StructExpr::Product(_) => write!(f, "({e})"),
                _ => write!(f, "{e}"),
            }
        }
        match self {
            StructExpr::And(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    match x {
                        StructExpr::And(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            StructExpr::Not(x) => {
                write!(f, "~")?;
                match **x {
                    StructExpr::Product(_) => write!(f, "{x}"),
                    _ => operand(x, f),
                }
            }
            StructExpr::Product(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    operand(x, f)?;
                }
                Ok(())
            }
            StructExpr::Group(s) => write!(f, "{s}"),
            StructExpr::Meta { m, d } => write!(f, "M({m},{d})"),
            StructExpr::Sig(p) => write!(f, "{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(n: usize, gens: &[&str]) -> Group {
        Group::new(n, gens.iter().map(|s| Perm::parse(s, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn round_trip() {
        for text in [
            "Sym(4)",
            "Sym(3)*C(2)",
            "M(12,2) & ~D(24)",
            "M(8,2) & ~Q(16) & ~(C(8)*C(2))",
            "~C(8)*C(2)",
            "sig{order=27,orders={1:1,3:26},abelian=[3,3],derived=2}",
            "sig{derived=none}",
        ] {
            let e = StructExpr::parse(text).unwrap();
            assert_eq!(StructExpr::parse(&e.to_string()).unwrap(), e, "{text}");
        }
        assert_eq!(StructExpr::parse("Q8").unwrap(), StructExpr::parse("Q(8)").unwrap());
    }

    #[test]
    fn negation_binds_the_whole_product() {
        let e = StructExpr::parse("~C(8)*C(2)").unwrap();
        assert!(matches!(e, StructExpr::Not(ref x) if matches!(**x, StructExpr::Product(_))));
    }

    #[test]
    fn matching() {
        let s4 = gp(4, &["(1,2)", "(1,2,3,4)"]);
        assert!(StructExpr::parse("Sym(4)").unwrap().matches(&s4).unwrap());
        assert!(!StructExpr::parse("Alt(4)*C(2)").unwrap().matches(&s4).unwrap());
        let d12 = gp(6, &["(1,2,3,4,5,6)", "(2,6)(3,5)"]);
        assert!(StructExpr::parse("Sym(3)*C(2)").unwrap().matches(&d12).unwrap());
        assert!(StructExpr::parse("M(6,2) & D(12)").unwrap().matches(&d12).unwrap());
        assert!(!StructExpr::parse("M(6,2) & ~D(12)").unwrap().matches(&d12).unwrap());
        assert!(StructExpr::parse("sig{order=12,derived=2}").unwrap().matches(&d12).unwrap());
    }

    #[test]
    fn orders() {
        assert_eq!(StructExpr::parse("Sym(3)*C(2)").unwrap().order().unwrap(), Some(12));
        assert_eq!(StructExpr::parse("M(15,4)").unwrap().order().unwrap(), Some(60));
        assert_eq!(StructExpr::parse("~C(4)").unwrap().order().unwrap(), None);
    }
}
