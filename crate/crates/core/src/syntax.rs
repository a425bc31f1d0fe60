//! Tokenizer and cursor shared by the group-spec, recipe and structure
//! grammars. Errors carry 1-based line and column.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<u64>().map_err(|_| Error::Syntax { line: l0, col: c0, msg: format!("number `{s}` is too large") })?;
            out.push(Token { tok: Tok::Num(v), line: l0, col: c0 });
        } else if "()[]{},@=:~&*".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
            i += 1;
        } else {
            return Err(Error::Syntax { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
        }
        col += i - start;
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(text: &str) -> Result<Parser> {
        Ok(Parser { toks: tokenize(text)?, pos: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    pub fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    pub fn num(&mut self) -> Result<u64> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.next();
                Ok(v)
            }
            _ => self.error("expected a number"),
        }
    }

    pub fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => self.error("expected a name"),
        }
    }

    pub fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    pub fn at_end(&self) -> bool {
        *self.peek() == Tok::End
    }

    pub fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }

    /// A permutation in cycle notation, `()` for the identity; 1-based
    /// points. Returns the cycles converted to 0-based points.
    pub fn cycles(&mut self) -> Result<Vec<Vec<u32>>> {
        if !self.is_sym('(') {
            return self.error("expected a permutation in cycle notation");
        }
        let mut cycles = Vec::new();
        while self.eat_sym('(') {
            if self.eat_sym(')') {
                continue;
            }
            let mut c = Vec::new();
            loop {
                let p = self.num()?;
                if p == 0 {
                    return self.error("points are numbered from 1");
                }
                c.push((p - 1) as u32);
                if self.eat_sym(')') {
                    break;
                }
                self.expect_sym(',')?;
            }
            cycles.push(c);
        }
        Ok(cycles)
    }
}

/// Cycles back to 1-based cycle notation.
pub fn cycles_text(cycles: &[Vec<u32>]) -> String {
    if cycles.is_empty() {
        return "()".into();
    }
    cycles
        .iter()
        .map(|c| format!("({})", c.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let t = tokenize("PSL(2,\n  11)").unwrap();
        assert_eq!((t[0].line, t[0].col), (1, 1));
        let eleven = t.iter().find(|t| t.tok == Tok::Num(11)).unwrap();
        assert_eq!((eleven.line, eleven.col), (2, 3));
    }

    #[test]
    fn cycle_literals() {
        let mut p = Parser::new("(1,2,3)(4,5), ()").unwrap();
        assert_eq!(p.cycles().unwrap(), vec![vec![0, 1, 2], vec![3, 4]]);
        p.expect_sym(',').unwrap();
        assert_eq!(p.cycles().unwrap(), Vec::<Vec<u32>>::new());
        assert!(p.at_end());
        assert_eq!(cycles_text(&[vec![0, 1], vec![2, 3, 4]]), "(1,2)(3,4,5)");
    }

    #[test]
    fn bad_character() {
        assert!(matches!(tokenize("PSL#"), Err(Error::Syntax { line: 1, col: 4, .. })));
    }
}
