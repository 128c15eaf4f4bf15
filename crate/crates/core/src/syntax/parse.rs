//! Recursive-descent readers for types, configurations, terms and sequents.

use crate::error::ParseError;
use crate::syntax::{HyperConfig, Signature, Token, Type};
use crate::term::StructTerm;

pub fn parse_type(src: &str, sig: &Signature) -> Result<Type, ParseError> {
    let mut p = Parser::new(src, sig);
    let t = p.ty()?;
    p.end()?;
    Ok(t)
}

/// Reads a configuration in either tree notation (`{ A : g1 ; g2 }`) or flat
/// notation (`0:A, [], 1:A`); the two may be mixed.
pub fn parse_config(src: &str, sig: &Signature) -> Result<HyperConfig, ParseError> {
    let mut p = Parser::new(src, sig);
    let c = p.config_top()?;
    p.end()?;
    Ok(c)
}

pub fn parse_term(src: &str, sig: &Signature) -> Result<StructTerm, ParseError> {
    let mut p = Parser::new(src, sig);
    let t = p.term()?;
    p.end()?;
    Ok(t)
}

/// Reads `<config> => <type>`, checking that the sorts agree.
pub fn parse_hsequent(src: &str, sig: &Signature) -> Result<(HyperConfig, Type), ParseError> {
    let mut p = Parser::new(src, sig);
    let c = p.config_top()?;
    p.expect("=>")?;
    let pos = p.pos;
    let t = p.ty()?;
    p.end()?;
    if c.sort() != t.sort() {
        return Err(ParseError::new(
            pos,
            format!("antecedent has sort {} but succedent has sort {}", c.sort(), t.sort()),
        ));
    }
    Ok((c, t))
}

/// Reads `<term> -> <type>`, checking that the sorts agree.
pub fn parse_msequent(src: &str, sig: &Signature) -> Result<(StructTerm, Type), ParseError> {
    let mut p = Parser::new(src, sig);
    let x = p.term()?;
    p.expect("->")?;
    let pos = p.pos;
    let t = p.ty()?;
    p.end()?;
    if x.sort() != t.sort() {
        return Err(ParseError::new(
            pos,
            format!("antecedent has sort {} but succedent has sort {}", x.sort(), t.sort()),
        ));
    }
    Ok((x, t))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, sig: &'a Signature) -> Parser<'a> {
        Parser { src, pos: 0, sig }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos, msg))
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            let found = self.rest().chars().next().map_or("end of input".to_string(), |c| format!("`{c}`"));
            self.err(format!("expected `{s}`, found {found}"))
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(n, _)| n);
        &rest[..len]
    }

    /// Digits immediately at the cursor, without skipping whitespace.
    fn index_here(&mut self) -> Result<Option<usize>, ParseError> {
        let rest = self.rest();
        let len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Ok(None);
        }
        let n = rest[..len].parse().map_err(|_| ParseError::new(self.pos, "index too large"))?;
        self.pos += len;
        Ok(Some(n))
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        match self.index_here()? {
            Some(n) => Ok(n),
            None => self.err("expected a decimal index"),
        }
    }

    fn ty(&mut self) -> Result<Type, ParseError> {
        let start = self.pos;
        let left = self.operand()?;
        self.skip_ws();
        let op = match self.rest().chars().next() {
            Some(c @ ('\\' | '/' | '.' | '@' | '!' | '^')) => c,
            _ => return Ok(left),
        };
        self.pos += 1;
        let k = if matches!(op, '@' | '!' | '^') { Some(self.index()?) } else { None };
        let right = self.operand()?;
        let built = match (op, k) {
            ('\\', _) => Type::under(left, right),
            ('/', _) => Type::over(left, right),
            ('.', _) => Ok(Type::prod(left, right)),
            ('@', Some(k)) => Type::dprod(k, left, right),
            ('!', Some(k)) => Type::ddown(k, left, right),
            ('^', Some(k)) => Type::dup(k, left, right),
            _ => unreachable!("operator table"),
        };
        let t = built.map_err(|e| ParseError::new(start, e.to_string()))?;
        self.skip_ws();
        if let Some(c @ ('\\' | '/' | '.' | '@' | '!' | '^')) = self.rest().chars().next() {
            return self.err(format!("ambiguous `{c}`: parenthesize the operands"));
        }
        Ok(t)
    }

    fn operand(&mut self) -> Result<Type, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.ty()?;
                self.expect(")")?;
                Ok(t)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let w = self.word();
                match w {
                    "I" => {
                        self.pos += 1;
                        Ok(Type::unit_i())
                    }
                    "J" => {
                        self.pos += 1;
                        Ok(Type::unit_j())
                    }
                    _ if c.is_ascii_lowercase() => match self.sig.atom(w) {
                        Some(t) => {
                            self.pos += w.len();
                            Ok(t)
                        }
                        None => Err(ParseError::new(start, format!("undeclared atom `{w}`"))),
                    },
                    _ => self.err(format!("unexpected `{w}`")),
                }
            }
            Some(c) => self.err(format!("expected a type, found `{c}`")),
            None => self.err("expected a type, found end of input"),
        }
    }

    fn config_top(&mut self) -> Result<HyperConfig, ParseError> {
        let start = self.pos;
        let mut tokens = Vec::new();
        self.config_tokens(&mut tokens)?;
        HyperConfig::parse_flat(&tokens).map_err(|e| ParseError::new(start, e.to_string()))
    }

    /// Reads a comma-separated item list into flat tokens.
    fn config_tokens(&mut self, out: &mut Vec<Token>) -> Result<(), ParseError> {
        if self.word() == "Lambda" {
            self.pos += "Lambda".len();
            return Ok(());
        }
        if matches!(self.peek(), None | Some(';' | '}' | '=')) {
            return Ok(());
        }
        loop {
            self.config_item(out)?;
            if !self.eat(",") {
                return Ok(());
            }
        }
    }

    fn config_item(&mut self, out: &mut Vec<Token>) -> Result<(), ParseError> {
        let start = self.pos;
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                self.expect("]")?;
                out.push(Token::Sep);
            }
            Some('{') => {
                self.pos += 1;
                let t = self.ty()?;
                if t.sort() == 0 {
                    return Err(ParseError::new(start, format!("`{t}` has sort 0 and has no gaps")));
                }
                self.expect(":")?;
                out.push(Token::Seg(t.clone(), 0));
                for n in 1..=t.sort() {
                    self.config_tokens(out)?;
                    if n < t.sort() {
                        self.expect(";")?;
                    }
                    out.push(Token::Seg(t.clone(), n));
                }
                self.expect("}")?;
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.index()?;
                self.expect(":")?;
                let t = self.ty()?;
                if t.sort() == 0 || k > t.sort() {
                    return Err(ParseError::new(start, format!("`{t}` has no segment {k}")));
                }
                out.push(Token::Seg(t, k));
            }
            _ => {
                let t = self.ty()?;
                if t.sort() != 0 {
                    return Err(ParseError::new(
                        start,
                        format!("`{t}` has sort {}; write its segments or `{{ {t} : ... }}`", t.sort()),
                    ));
                }
                out.push(Token::Leaf(t));
            }
        }
        Ok(())
    }

    fn term(&mut self) -> Result<StructTerm, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                let save = self.pos;
                if let Ok(t) = self.ty() {
                    if matches!(self.peek(), None | Some(')' | '+' | '-')) {
                        return Ok(StructTerm::Leaf(t));
                    }
                }
                self.pos = save;
                self.pos += 1;
                let left = self.term()?;
                self.expect("+")?;
                let i = self.index_here()?;
                let right = self.term()?;
                self.expect(")")?;
                match i {
                    None => Ok(StructTerm::cat(left, right)),
                    Some(i) => StructTerm::wrap(i, left, right)
                        .map_err(|e| ParseError::new(start, e.to_string())),
                }
            }
            _ => match self.word() {
                "II" => {
                    self.pos += 2;
                    Ok(StructTerm::I)
                }
                "JJ" => {
                    self.pos += 2;
                    Ok(StructTerm::J)
                }
                _ => Ok(StructTerm::Leaf(self.ty()?)),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::display_tokens;

    fn sig() -> Signature {
        Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1)]).unwrap()
    }

    #[test]
    fn types_round_trip() {
        let s = sig();
        for src in ["a", "I", "J", "b^2a", "((b@1d)@3e)^3c", "c\\a", "(a/c).I", "e!1(e.a)"] {
            let t = parse_type(src, &s).unwrap();
            assert_eq!(t.to_string(), src);
        }
    }

    #[test]
    fn type_errors() {
        let s = sig();
        assert!(parse_type("a\\b\\c", &s).is_err());
        assert!(parse_type("z", &s).is_err());
        assert!(parse_type("a@1c", &s).is_err());
        assert!(parse_type("(a", &s).is_err());
        assert!(parse_type("a b", &s).is_err());
    }

    #[test]
    fn configs_in_both_notations() {
        let s = sig();
        let flat = parse_config("0:b^2a, 0:d, [], 1:d, 2:d, 1:b^2a, [], 2:b^2a, 3:b^2a", &s).unwrap();
        let tree = parse_config("{ b^2a : {d : [] ; Lambda} ; [] ; Lambda }", &s).unwrap();
        assert_eq!(flat, tree);
        assert_eq!(flat.sort(), 2);
        assert_eq!(parse_config("Lambda", &s).unwrap(), HyperConfig::empty());
        assert_eq!(parse_config("", &s).unwrap(), HyperConfig::empty());
        let back = parse_config(&display_tokens(&flat.flatten()), &s).unwrap();
        assert_eq!(back, flat);
        let back = parse_config(&flat.to_string(), &s).unwrap();
        assert_eq!(back, flat);
    }

    #[test]
    fn config_errors() {
        let s = sig();
        assert!(parse_config("e", &s).is_err());
        assert!(parse_config("0:e, 0:e", &s).is_err());
        assert!(parse_config("{ a : [] }", &s).is_err());
        assert!(parse_config("{ e : [] ; [] }", &s).is_err());
        assert!(parse_config("2:e", &s).is_err());
    }

    #[test]
    fn terms() {
        let s = sig();
        let src = "(((b^2a +1 d) +4 e) +3 (JJ + c\\a))";
        let t = parse_term(src, &s).unwrap();
        assert_eq!(t.sort(), 4);
        assert_eq!(t.to_string(), src);
        assert_eq!(parse_term("((a) + II)", &s).unwrap().to_string(), "(a + II)");
        assert_eq!(parse_term("(c\\a)", &s).unwrap().to_string(), "c\\a");
        assert!(parse_term("(a +1 c)", &s).is_err());
        assert!(parse_term("(a + c", &s).is_err());
    }

    #[test]
    fn sequents() {
        let s = sig();
        let (c, t) = parse_hsequent("0:e, [], 1:e => e", &s).unwrap();
        assert_eq!(c.sort(), 1);
        assert_eq!(t.to_string(), "e");
        assert!(parse_hsequent("a => e", &s).is_err());
        let (x, t) = parse_msequent("(JJ +1 a) -> a", &s).unwrap();
        assert_eq!(x.sort(), 0);
        assert_eq!(t.sort(), 0);
    }
}
