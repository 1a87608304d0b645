//! Concrete syntax: `C4`, `Q8`, `A x B`, `sd(4,4,3)`, `wr(C2,2)`,
//! `L(2,3)`, `file:path.tbl`, with parentheses for grouping.
//!
//! Whitespace is ignored except that a `file:` path runs to the next
//! whitespace, comma or closing parenthesis. `x` is left-associative.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::catalog::is_catalog_name;
use super::GroupExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub len: usize,
    pub message: String,
    pub input: String,
}

impl ParseError {
    /// Input line with a caret under the offending span.
    pub fn diagnostic(&self) -> String {
        let pad: String = self.input.chars().take(self.pos).map(|_| ' ').collect();
        let carets = "^".repeat(self.len.max(1));
        format!("{}\n  {}\n  {}{}", self.message, self.input, pad, carets)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn err(&self, pos: usize, len: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            pos,
            len,
            message: message.into(),
            input: self.src.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        match self.peek() {
            Some(b) if b == c => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(self.err(self.pos, 1, format!("expected `{}`", c as char))),
            None => Err(self.err(self.pos, 1, format!("expected `{}`, found end of input", c as char))),
        }
    }

    fn expr(&mut self) -> PResult<GroupExpr> {
        let mut left = self.atom()?;
        while self.peek() == Some(b'x') {
            self.pos += 1;
            let right = self.atom()?;
            left = GroupExpr::product(left, right);
        }
        Ok(left)
    }

    fn integer(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err(start, (self.pos - start).max(1), "expected an integer"))
    }

    fn unsigned(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        let v = self.integer()?;
        u64::try_from(v).map_err(|_| self.err(start, self.pos - start, "expected a non-negative integer"))
    }

    fn small(&mut self) -> PResult<u32> {
        self.skip_ws();
        let start = self.pos;
        let v = self.unsigned()?;
        u32::try_from(v).map_err(|_| self.err(start, self.pos - start, "integer too large"))
    }

    fn name(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_alphanumeric() && b != b'x' {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> PResult<GroupExpr> {
        let start = match self.peek() {
            None => return Err(self.err(self.pos, 1, "expected a group, found end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                return Ok(e);
            }
            Some(b) if b.is_ascii_alphabetic() && b != b'x' => self.pos,
            Some(_) => return Err(self.err(self.pos, 1, "expected a group")),
        };
        let name = self.name();
        if name == "file" && self.bytes.get(self.pos) == Some(&b':') {
            self.pos += 1;
            let pstart = self.pos;
            while self.pos < self.bytes.len() {
                let b = self.bytes[self.pos];
                if b.is_ascii_whitespace() || b == b')' || b == b',' {
                    break;
                }
                self.pos += 1;
            }
            if self.pos == pstart {
                return Err(self.err(pstart, 1, "expected a path after `file:`"));
            }
            return Ok(GroupExpr::TableFile(PathBuf::from(&self.src[pstart..self.pos])));
        }
        let call = self.peek() == Some(b'(');
        match (name, call) {
            ("sd", true) => {
                self.expect(b'(')?;
                let n = self.unsigned()?;
                self.expect(b',')?;
                let m = self.unsigned()?;
                self.expect(b',')?;
                let k = self.integer()?;
                self.expect(b')')?;
                if n == 0 || m == 0 {
                    return Err(self.err(start, self.pos - start, "cyclic factors must be nontrivial orders"));
                }
                Ok(GroupExpr::CyclicSemidirect { n, m, k })
            }
            ("wr", true) => {
                self.expect(b'(')?;
                let base = self.expr()?;
                self.expect(b',')?;
                let p = self.small()?;
                self.expect(b')')?;
                Ok(GroupExpr::wreath(base, p))
            }
            ("L", true) => {
                self.expect(b'(')?;
                let p = self.small()?;
                self.expect(b',')?;
                let i = self.small()?;
                self.expect(b')')?;
                Ok(GroupExpr::IteratedWreath { p, i })
            }
            _ => {
                if !is_catalog_name(name) {
                    return Err(self.err(start, name.len().max(1), format!("unknown group `{name}`")));
                }
                match name.strip_prefix('C') {
                    Some(d) if d.bytes().all(|b| b.is_ascii_digit()) => {
                        Ok(GroupExpr::Cyclic(d.parse().expect("checked digits")))
                    }
                    _ => Ok(GroupExpr::Catalog(name.to_string())),
                }
            }
        }
    }
}

pub fn parse_expr(src: &str) -> Result<GroupExpr, ParseError> {
    let mut p = Parser {
        src,
        bytes: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        let rest = src.len() - p.pos;
        return Err(p.err(p.pos, rest, "unexpected trailing input"));
    }
    Ok(e)
}

impl FromStr for GroupExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::DirectProduct(l, r) => match **r {
                GroupExpr::DirectProduct(..) => write!(f, "{l} x ({r})"),
                _ => write!(f, "{l} x {r}"),
            },
            GroupExpr::CyclicSemidirect { n, m, k } => write!(f, "sd({n},{m},{k})"),
            GroupExpr::WreathCyclic { base, p } => write!(f, "wr({base},{p})"),
            GroupExpr::IteratedWreath { p, i } => write!(f, "L({p},{i})"),
            GroupExpr::Catalog(name) => f.write_str(name),
            GroupExpr::TableFile(path) => write!(f, "file:{}", path.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_every_form() {
        let cases = [
            ("C4", GroupExpr::Cyclic(4)),
            ("Q8", GroupExpr::Catalog("Q8".into())),
            (
                " sd( 4 , 4 ,3 ) ",
                GroupExpr::CyclicSemidirect { n: 4, m: 4, k: 3 },
            ),
            ("sd(8,2,-1)", GroupExpr::CyclicSemidirect { n: 8, m: 2, k: -1 }),
            ("wr(C2,2)", GroupExpr::wreath(GroupExpr::Cyclic(2), 2)),
            ("L(2,3)", GroupExpr::IteratedWreath { p: 2, i: 3 }),
            ("file:a/b.tbl", GroupExpr::TableFile("a/b.tbl".into())),
        ];
        for (src, want) in cases {
            assert_eq!(parse_expr(src).unwrap(), want, "{src}");
        }
    }

    #[test]
    fn product_is_left_associative() {
        let e = parse_expr("C2xC4 x Heis3").unwrap();
        let want = GroupExpr::product(
            GroupExpr::product(GroupExpr::Cyclic(2), GroupExpr::Cyclic(4)),
            GroupExpr::Catalog("Heis3".into()),
        );
        assert_eq!(e, want);
        assert_eq!(e.to_string(), "C2 x C4 x Heis3");
        let r = parse_expr("C2 x (C4 x C2)").unwrap();
        assert_eq!(r.to_string(), "C2 x (C4 x C2)");
    }

    #[test]
    fn diagnostics_point_at_the_token() {
        let err = parse_expr("C4 x Q9").unwrap_err();
        assert_eq!(err.pos, 5);
        assert_eq!(err.len, 2);
        assert!(err.diagnostic().ends_with("\n       ^^"), "{}", err.diagnostic());
        let err = parse_expr("sd(4,4)").unwrap_err();
        assert_eq!(err.pos, 6);
        assert!(parse_expr("C4 C2").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("C6").is_err());
    }

    fn arb_expr() -> impl Strategy<Value = GroupExpr> {
        let leaf = prop_oneof![
            (1u32..5).prop_map(|e| GroupExpr::Cyclic(2u64.pow(e))),
            prop::sample::select(vec!["Q8", "D8", "M16", "Heis3"])
                .prop_map(|s| GroupExpr::Catalog(s.to_string())),
            Just(GroupExpr::CyclicSemidirect { n: 4, m: 4, k: 3 }),
            (1u32..3).prop_map(|i| GroupExpr::IteratedWreath { p: 2, i }),
        ];
        leaf.prop_recursive(3, 8, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| GroupExpr::product(l, r)),
                inner.prop_map(|b| GroupExpr::wreath(b, 2)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_reparses(e in arb_expr()) {
            let shown = e.to_string();
            prop_assert_eq!(parse_expr(&shown).unwrap(), e);
        }
    }
}
