use super::{fresh_var, Arg, Formula, FormulaError, Node, ParamEnv, Var};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Dot,
    And,
    Or,
    Imp,
    Iff,
    Not,
    Eq,
    In,
    Sub,
    Bot,
    Forall,
    Exists,
    Ident(String),
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, FormulaError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let rest = &text[pos..];
        let fixed: &[(&str, Tok)] = &[
            ("<->", Tok::Iff),
            ("->", Tok::Imp),
            ("/\\", Tok::And),
            ("\\/", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            (".", Tok::Dot),
            ("~", Tok::Not),
            ("=", Tok::Eq),
            ("&", Tok::And),
            ("|", Tok::Or),
            ("\u{2227}", Tok::And),
            ("\u{2228}", Tok::Or),
            ("\u{2192}", Tok::Imp),
            ("\u{2194}", Tok::Iff),
            ("\u{00AC}", Tok::Not),
            ("\u{2208}", Tok::In),
            ("\u{2286}", Tok::Sub),
            ("\u{22A5}", Tok::Bot),
            ("\u{2200}", Tok::Forall),
            ("\u{2203}", Tok::Exists),
        ];
        if let Some((s, tok)) = fixed.iter().find(|(s, _)| rest.starts_with(s)) {
            out.push((pos, tok.clone()));
            for _ in 0..s.chars().count() {
                it.next();
            }
            continue;
        }
        if c.is_alphanumeric() || c == '_' {
            let mut end = pos;
            while let Some(&(p, ch)) = it.peek() {
                if ch.is_alphanumeric() || ch == '_' || ch == '\'' {
                    end = p + ch.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            let word = &text[pos..end];
            let tok = match word {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "in" => Tok::In,
                "sub" => Tok::Sub,
                "bot" => Tok::Bot,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((pos, tok));
            continue;
        }
        return Err(FormulaError::SyntaxError { position: pos, message: format!("unexpected character `{c}`") });
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    env: &'a ParamEnv,
    /// Source name -> internal name for binders in scope.
    scope: Vec<(String, Var)>,
}

/// Parses the concrete syntax. Identifiers resolve to the innermost binder of
/// that name, otherwise to a parameter in `env`. A binder that shadows an
/// enclosing one is renamed `x_1`, `x_2`, ...
pub fn parse(text: &str, env: &ParamEnv) -> Result<Formula, FormulaError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, env, scope: Vec::new() };
    let f = p.iff()?;
    p.expect(Tok::End, "end of input")?;
    Ok(f)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, FormulaError> {
        Err(FormulaError::SyntaxError { position: self.pos(), message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), FormulaError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn iff(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => self.quantifier(),
            _ => self.primary(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula, FormulaError> {
        let universal = self.bump() == Tok::Forall;
        let Tok::Ident(name) = self.peek().clone() else {
            return self.error("expected a variable after quantifier");
        };
        self.bump();
        let bound = if *self.peek() == Tok::In {
            self.bump();
            Some(self.arg()?)
        } else {
            None
        };
        self.expect(Tok::Dot, "`.`")?;
        let var = {
            let scope = &self.scope;
            let env = self.env;
            fresh_var(&name, |v| scope.iter().any(|(_, w)| w == v) || env.contains_key(v.name()))
        };
        self.scope.push((name, var.clone()));
        let body = self.iff();
        self.scope.pop();
        let body = body?;
        Ok(Formula::from_node(match (universal, bound) {
            (true, None) => Node::Forall(var, body),
            (false, None) => Node::Exists(var, body),
            (true, Some(b)) => Node::ForallIn(var, b, body),
            (false, Some(b)) => Node::ExistsIn(var, b, body),
        }))
    }

    fn primary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek() {
            Tok::Bot => {
                self.bump();
                Ok(Formula::bot())
            }
            Tok::LParen => {
                self.bump();
                let f = self.iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(_) => {
                let a = self.arg()?;
                let op = self.peek().clone();
                if !matches!(op, Tok::Eq | Tok::In | Tok::Sub) {
                    return self.error("expected `=`, `in` or `sub`");
                }
                self.bump();
                let b = self.arg()?;
                Ok(match op {
                    Tok::Eq => Formula::eq(a, b),
                    Tok::In => Formula::mem(a, b),
                    _ => Formula::sub(a, b),
                })
            }
            _ => self.error("expected a formula"),
        }
    }

    fn arg(&mut self) -> Result<Arg, FormulaError> {
        let Tok::Ident(name) = self.peek().clone() else {
            return self.error("expected a variable or parameter");
        };
        self.bump();
        if let Some((_, v)) = self.scope.iter().rev().find(|(n, _)| *n == name) {
            return Ok(Arg::Var(v.clone()));
        }
        match self.env.get(&name) {
            Some(t) => Ok(Arg::Param(t.clone())),
            None => Err(FormulaError::UnknownParameter(name)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::print;
    use crate::ground::HFSet;
    use crate::terms::hat;
    use crate::topology::FiniteSpace;

    fn env() -> ParamEnv {
        let t = FiniteSpace::sierpinski();
        let mut e = ParamEnv::new();
        e.insert("s".into(), hat(&t, &HFSet::nat(0)));
        e.insert("t".into(), hat(&t, &HFSet::nat(1)));
        e
    }

    #[test]
    fn precedence_and_associativity() {
        let e = env();
        let f = parse("s in t /\\ s = s \\/ bot -> bot -> s = t", &e).unwrap();
        let Node::Imp(l, r) = f.node() else { panic!() };
        assert!(matches!(l.node(), Node::Or(..)));
        assert!(matches!(r.node(), Node::Imp(..)));
        let g = parse("s = s <-> bot -> bot", &e).unwrap();
        assert!(matches!(g.node(), Node::Iff(_, r) if matches!(r.node(), Node::Imp(..))));
    }

    #[test]
    fn quantifier_scope_is_maximal() {
        let e = env();
        let f = parse("forall x. x in t -> x = s", &e).unwrap();
        let Node::Forall(_, body) = f.node() else { panic!() };
        assert!(matches!(body.node(), Node::Imp(..)));
    }

    #[test]
    fn shadowing_binders_are_renamed() {
        let e = env();
        let f = parse("forall x. exists x. x in s", &e).unwrap();
        assert_eq!(print(&f, &e), "forall x. exists x_1. x_1 in s");
        let sibling = parse("(forall x. x = x) /\\ (forall x. x = x)", &e).unwrap();
        assert!(sibling.is_closed());
    }

    #[test]
    fn errors() {
        let e = env();
        assert!(matches!(parse("s in", &e), Err(FormulaError::SyntaxError { position: 4, .. })));
        assert!(matches!(parse("s ? t", &e), Err(FormulaError::SyntaxError { position: 2, .. })));
        assert!(matches!(parse("s in q", &e), Err(FormulaError::UnknownParameter(n)) if n == "q"));
        assert!(matches!(parse("(s = t", &e), Err(FormulaError::SyntaxError { .. })));
    }

    #[test]
    fn unicode_alternatives() {
        let e = env();
        let a = parse("\u{2200}x. (x \u{2208} s \u{2192} \u{00AC}x = t)", &e).unwrap();
        let b = parse("forall x. (x in s -> ~x = t)", &e).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn example_one_roundtrip() {
        let e = env();
        let text = "forall x. forall y. (~(x = y) \\/ ~~(x = y))";
        let f = parse(text, &e).unwrap();
        assert_eq!(print(&f, &e), text);
    }
}
