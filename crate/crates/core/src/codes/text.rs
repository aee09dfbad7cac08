//! Canonical s-expression syntax for codes.
//!
//! ```text
//! atom   := "(rat " int " " posint ")" | "(tag " bit " " atom ")" | "(word " bits ")"
//! aseq   := "(cyc" {" " atom}+ ")" | "(pairmerge " zcode ")"
//! binseq := "(cw " bits ")" | "(pull " aseq " (set" {" " atom}* "))"
//! yseq   := "(ylist" {" " binseq}+ ")"
//! zcode  := "(zlist" {" " "(cyc" {" " atom}+ ")"}+ ")"
//! ppoint := "(p " aseq " " yseq ")"
//! ```
//!
//! Whitespace between tokens is free. Parsing canonicalizes, and printing a
//! canonical value then parsing it back is the identity.

use std::fmt;
use std::str::FromStr;

use super::atom::Atom;
use super::binseq::{BinSeqCode, YSeqCode};
use super::seq::{AtomCycle, AtomSeqCode, AtomSet, CyclicList, ZCode};
use super::word::CyclicWord;
use crate::error::{Error, Result};
use crate::relations::{p_membership, PPoint};

impl fmt::Display for CyclicList<Atom> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(cyc")?;
        for a in self.iter() {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for CyclicList<AtomCycle> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(zlist")?;
        for row in self.iter() {
            write!(f, " {row}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for CyclicList<BinSeqCode> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(ylist")?;
        for b in self.iter() {
            write!(f, " {b}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for AtomSeqCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomSeqCode::Cyclic(c) => write!(f, "{c}"),
            AtomSeqCode::PairMerge(z) => write!(f, "(pairmerge {z})"),
        }
    }
}

impl fmt::Display for BinSeqCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinSeqCode::CycW(w) => write!(f, "(cw {w})"),
            BinSeqCode::Pullback(p) => write!(f, "(pull (pairmerge {}) {})", p.base(), p.set()),
        }
    }
}

/// Any value the textual syntax can denote.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Code {
    Atom(Atom),
    AtomSeq(AtomSeqCode),
    BinSeq(BinSeqCode),
    YSeq(YSeqCode),
    Z(ZCode),
    Point(PPoint),
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Code::Atom(a) => a.fmt(f),
            Code::AtomSeq(x) => x.fmt(f),
            Code::BinSeq(b) => b.fmt(f),
            Code::YSeq(y) => y.fmt(f),
            Code::Z(z) => z.fmt(f),
            Code::Point(p) => p.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Open,
    Close,
    Sym(&'a str),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    idx: usize,
    end: usize,
}

fn tokenize(src: &str) -> Vec<(usize, Tok<'_>)> {
    let mut toks = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            '(' => {
                toks.push((pos, Tok::Open));
                chars.next();
            }
            ')' => {
                toks.push((pos, Tok::Close));
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut end = pos;
                while let Some(&(p, c)) = chars.peek() {
                    if c == '(' || c == ')' || c.is_whitespace() {
                        break;
                    }
                    end = p + c.len_utf8();
                    chars.next();
                }
                toks.push((pos, Tok::Sym(&src[pos..end])));
            }
        }
    }
    toks
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            toks: tokenize(src),
            idx: 0,
            end: src.len(),
        }
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.idx).map(|t| &t.1)
    }

    fn open(&mut self) -> Result<()> {
        match self.peek() {
            Some(Tok::Open) => {
                self.idx += 1;
                Ok(())
            }
            _ => self.err("expected '('"),
        }
    }

    fn close(&mut self) -> Result<()> {
        match self.peek() {
            Some(Tok::Close) => {
                self.idx += 1;
                Ok(())
            }
            _ => self.err("expected ')'"),
        }
    }

    fn sym(&mut self, what: &str) -> Result<&'a str> {
        match self.peek() {
            Some(&Tok::Sym(s)) => {
                self.idx += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    /// Keyword following an opening parenthesis, without consuming anything.
    fn peek_head(&self) -> Option<&'a str> {
        match (self.toks.get(self.idx), self.toks.get(self.idx + 1)) {
            (Some((_, Tok::Open)), Some((_, Tok::Sym(s)))) => Some(s),
            _ => None,
        }
    }

    fn head(&mut self, expected: &[&str]) -> Result<&'a str> {
        self.open()?;
        let at = self.pos();
        let kw = self.sym("keyword")?;
        if expected.contains(&kw) {
            Ok(kw)
        } else {
            Err(Error::Parse {
                pos: at,
                msg: format!("expected one of {expected:?}, found {kw:?}"),
            })
        }
    }

    fn at_close(&self) -> bool {
        matches!(self.peek(), Some(Tok::Close))
    }

    fn int<T: FromStr>(&mut self, what: &str) -> Result<T> {
        let at = self.pos();
        let s = self.sym(what)?;
        s.parse().map_err(|_| Error::Parse {
            pos: at,
            msg: format!("expected {what}, found {s:?}"),
        })
    }

    fn bits(&mut self) -> Result<CyclicWord> {
        let at = self.pos();
        let s = self.sym("bits")?;
        CyclicWord::from_bits(s).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: at + pos, msg },
            other => other,
        })
    }

    fn atom(&mut self) -> Result<Atom> {
        let at = self.pos();
        let atom = match self.head(&["rat", "tag", "word"])? {
            "rat" => {
                let num: i64 = self.int("integer")?;
                let den_at = self.pos();
                let den: i64 = self.int("positive integer")?;
                if den <= 0 {
                    return Err(Error::Parse {
                        pos: den_at,
                        msg: "denominator must be positive".into(),
                    });
                }
                Atom::rational(num, den).map_err(|e| Error::Parse {
                    pos: at,
                    msg: e.to_string(),
                })?
            }
            "tag" => {
                let bit_at = self.pos();
                let bit = match self.sym("bit")? {
                    "0" => false,
                    "1" => true,
                    other => {
                        return Err(Error::Parse {
                            pos: bit_at,
                            msg: format!("expected bit, found {other:?}"),
                        })
                    }
                };
                Atom::tag(bit, self.atom()?)
            }
            _ => Atom::word(self.bits()?),
        };
        self.close()?;
        Ok(atom)
    }

    fn atoms_until_close(&mut self) -> Result<Vec<Atom>> {
        let mut out = Vec::new();
        while !self.at_close() {
            out.push(self.atom()?);
        }
        Ok(out)
    }

    fn nonempty<T>(&self, items: Vec<T>, what: &str) -> Result<CyclicList<T>> {
        if items.is_empty() {
            return self.err(format!("{what} needs at least one entry"));
        }
        CyclicList::new(items)
    }

    fn cycle(&mut self) -> Result<AtomCycle> {
        self.head(&["cyc"])?;
        let atoms = self.atoms_until_close()?;
        let c = self.nonempty(atoms, "cyc")?;
        self.close()?;
        Ok(c)
    }

    fn zcode(&mut self) -> Result<ZCode> {
        self.head(&["zlist"])?;
        let mut rows = Vec::new();
        while !self.at_close() {
            rows.push(self.cycle()?);
        }
        let z = self.nonempty(rows, "zlist")?;
        self.close()?;
        Ok(z)
    }

    fn aseq(&mut self) -> Result<AtomSeqCode> {
        match self.peek_head() {
            Some("cyc") => self.cycle().map(AtomSeqCode::Cyclic),
            Some("pairmerge") => {
                self.head(&["pairmerge"])?;
                let z = self.zcode()?;
                self.close()?;
                Ok(AtomSeqCode::PairMerge(z))
            }
            _ => self.err("expected (cyc ...) or (pairmerge ...)"),
        }
    }

    fn binseq(&mut self) -> Result<BinSeqCode> {
        let b = match self.head(&["cw", "pull"])? {
            "cw" => BinSeqCode::word(self.bits()?),
            _ => {
                let base = self.aseq()?;
                self.head(&["set"])?;
                let set: AtomSet = self.atoms_until_close()?.into_iter().collect();
                self.close()?;
                BinSeqCode::pullback(&base, &set)
            }
        };
        self.close()?;
        Ok(b)
    }

    fn yseq(&mut self) -> Result<YSeqCode> {
        self.head(&["ylist"])?;
        let mut entries = Vec::new();
        while !self.at_close() {
            entries.push(self.binseq()?);
        }
        let y = self.nonempty(entries, "ylist")?;
        self.close()?;
        Ok(y)
    }

    fn ppoint(&mut self) -> Result<PPoint> {
        let at = self.pos();
        self.head(&["p"])?;
        let x = self.aseq()?;
        let y = self.yseq()?;
        self.close()?;
        p_membership(x, y).map_err(|e| Error::Parse {
            pos: at,
            msg: e.to_string(),
        })
    }

    fn any(&mut self) -> Result<Code> {
        match self.peek_head() {
            Some("rat" | "tag" | "word") => self.atom().map(Code::Atom),
            Some("cyc" | "pairmerge") => self.aseq().map(Code::AtomSeq),
            Some("cw" | "pull") => self.binseq().map(Code::BinSeq),
            Some("ylist") => self.yseq().map(Code::YSeq),
            Some("zlist") => self.zcode().map(Code::Z),
            Some("p") => self.ppoint().map(Code::Point),
            _ => self.err("expected a code"),
        }
    }

    fn finish<T>(&mut self, value: T) -> Result<T> {
        if self.idx < self.toks.len() {
            return self.err("trailing input");
        }
        Ok(value)
    }
}

fn parse_with<'a, T>(src: &'a str, f: impl FnOnce(&mut Parser<'a>) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(src);
    let v = f(&mut p)?;
    p.finish(v)
}

pub fn parse_atom(src: &str) -> Result<Atom> {
    parse_with(src, Parser::atom)
}

pub fn parse_aseq(src: &str) -> Result<AtomSeqCode> {
    parse_with(src, Parser::aseq)
}

pub fn parse_binseq(src: &str) -> Result<BinSeqCode> {
    parse_with(src, Parser::binseq)
}

pub fn parse_yseq(src: &str) -> Result<YSeqCode> {
    parse_with(src, Parser::yseq)
}

pub fn parse_zcode(src: &str) -> Result<ZCode> {
    parse_with(src, Parser::zcode)
}

pub fn parse_ppoint(src: &str) -> Result<PPoint> {
    parse_with(src, Parser::ppoint)
}

/// Parses any code, dispatching on its leading keyword.
pub fn parse_code(src: &str) -> Result<Code> {
    parse_with(src, Parser::any)
}

impl FromStr for Atom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_atom(s)
    }
}

impl FromStr for AtomSeqCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_aseq(s)
    }
}

impl FromStr for BinSeqCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_binseq(s)
    }
}

impl FromStr for Code {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_code(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn echo(s: &str) -> String {
        parse_code(s).unwrap().to_string()
    }

    #[test]
    fn canonicalizes() {
        assert_eq!(echo("(cw 1010)"), "(cw 10)");
        assert_eq!(echo("(cyc (rat 1 2))"), "(cyc (rat 1 2))");
        assert_eq!(echo("( rat  2\n 4 )"), "(rat 1 2)");
        assert_eq!(echo("(word 0101)"), "(word 01)");
        assert_eq!(
            echo("(pull (cyc (rat 1 1) (rat 2 1)) (set (rat 2 1)))"),
            "(cw 01)"
        );
        assert_eq!(
            echo("(pull (pairmerge (zlist (cyc (rat 1 1)) (cyc (rat 1 1) (rat 2 1)))) (set (rat 2 1) (rat 9 1)))"),
            "(pull (pairmerge (zlist (cyc (rat 1 1)) (cyc (rat 1 1) (rat 2 1)))) (set (rat 2 1)))"
        );
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("(cw )", 4),
            ("(cyc)", 4),
            ("(rat 1 0)", 7),
            ("(rat 1 -2)", 7),
            ("(tag 2 (rat 1 1))", 5),
            ("(zlist)", 6),
            ("(cw 10) x", 8),
            ("(cw 12)", 5),
            ("(ylist (cw 1)", 13),
        ];
        for (src, pos) in cases {
            match parse_code(src) {
                Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn ppoint_is_validated() {
        let ok = "(p (cyc (rat 1 1) (rat 2 1)) (ylist (cw 10) (cw 01)))";
        assert_eq!(echo(ok), ok);
        assert!(parse_code("(p (cyc (rat 1 1) (rat 1 1)) (ylist (cw 10)))").is_err());
    }
}
