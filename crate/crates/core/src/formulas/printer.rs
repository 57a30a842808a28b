use std::collections::HashMap;

use super::{Arg, Formula, Node, ParamEnv};
use crate::terms::Term;

/// Renders in the concrete syntax accepted by [`parse`](super::parse).
/// Parameters print as their name in `env` (the first, if several names share
/// a term); unnamed parameters print as `[term]`, which does not parse back.
pub fn print(f: &Formula, env: &ParamEnv) -> String {
    let mut names: HashMap<&Term, &str> = HashMap::new();
    for (name, t) in env.iter().rev() {
        names.insert(t, name);
    }
    let mut out = String::new();
    write(f, 0, &names, &mut out);
    out
}

fn prec(f: &Formula) -> u8 {
    match f.node() {
        Node::Iff(..) => 0,
        Node::Forall(..) | Node::Exists(..) | Node::ForallIn(..) | Node::ExistsIn(..) => 0,
        Node::Imp(..) => 1,
        Node::Or(..) => 2,
        Node::And(..) => 3,
        _ => 4,
    }
}

fn is_atom(f: &Formula) -> bool {
    matches!(f.node(), Node::Eq(..) | Node::Mem(..) | Node::Sub(..))
}

fn arg(a: &Arg, names: &HashMap<&Term, &str>, out: &mut String) {
    match a {
        Arg::Var(v) => out.push_str(v.name()),
        Arg::Param(t) => match names.get(t) {
            Some(n) => out.push_str(n),
            None => {
                out.push('[');
                out.push_str(&t.to_string());
                out.push(']');
            }
        },
    }
}

fn write(f: &Formula, ctx: u8, names: &HashMap<&Term, &str>, out: &mut String) {
    let wrap = prec(f) < ctx;
    if wrap {
        out.push('(');
    }
    match f.node() {
        Node::Bot => out.push_str("bot"),
        Node::Eq(a, b) | Node::Mem(a, b) | Node::Sub(a, b) => {
            arg(a, names, out);
            out.push_str(match f.node() {
                Node::Eq(..) => " = ",
                Node::Mem(..) => " in ",
                _ => " sub ",
            });
            arg(b, names, out);
        }
        Node::Iff(p, q) => binary(p, " <-> ", q, (1, 1), names, out),
        Node::Imp(p, q) => binary(p, " -> ", q, (2, 1), names, out),
        Node::Or(p, q) => binary(p, " \\/ ", q, (2, 3), names, out),
        Node::And(p, q) => binary(p, " /\\ ", q, (3, 4), names, out),
        Node::Not(p) => {
            out.push('~');
            if is_atom(p) {
                out.push('(');
                write(p, 0, names, out);
                out.push(')');
            } else {
                write(p, 4, names, out);
            }
        }
        Node::Forall(v, p) | Node::Exists(v, p) => {
            out.push_str(if matches!(f.node(), Node::Forall(..)) { "forall " } else { "exists " });
            out.push_str(v.name());
            out.push_str(". ");
            body(p, names, out);
        }
        Node::ForallIn(v, b, p) | Node::ExistsIn(v, b, p) => {
            out.push_str(if matches!(f.node(), Node::ForallIn(..)) { "forall " } else { "exists " });
            out.push_str(v.name());
            out.push_str(" in ");
            arg(b, names, out);
            out.push_str(". ");
            body(p, names, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

fn binary(p: &Formula, op: &str, q: &Formula, ctx: (u8, u8), names: &HashMap<&Term, &str>, out: &mut String) {
    write(p, ctx.0, names, out);
    out.push_str(op);
    write(q, ctx.1, names, out);
}

/// Quantifier bodies that are binary connectives get explicit parentheses.
fn body(p: &Formula, names: &HashMap<&Term, &str>, out: &mut String) {
    let binary = matches!(p.node(), Node::And(..) | Node::Or(..) | Node::Imp(..) | Node::Iff(..));
    write(p, if binary { 5 } else { 0 }, names, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::parse;
    use crate::ground::HFSet;
    use crate::terms::hat;
    use crate::topology::FiniteSpace;

    #[test]
    fn canonical_forms() {
        let t = FiniteSpace::sierpinski();
        let mut env = ParamEnv::new();
        env.insert("a".into(), hat(&t, &HFSet::nat(0)));
        env.insert("b".into(), hat(&t, &HFSet::nat(1)));
        for text in [
            "a in b",
            "~(a = b)",
            "~bot",
            "a = a /\\ (a in b \\/ bot)",
            "(a = a -> bot) -> a = b",
            "a = a -> bot -> a = b",
            "(a = a <-> a = b) <-> bot",
            "forall x in b. exists y in x. (y = a /\\ x sub b)",
            "~(forall x. x = a) /\\ (exists y. y in a)",
            "~(a = a /\\ a = b)",
        ] {
            let f = parse(text, &env).unwrap();
            assert_eq!(print(&f, &env), text);
        }
    }

    #[test]
    fn unnamed_parameters_are_bracketed() {
        let t = FiniteSpace::sierpinski();
        let f = Formula::eq(hat(&t, &HFSet::nat(0)), hat(&t, &HFSet::nat(0)));
        assert!(print(&f, &ParamEnv::new()).starts_with('['));
    }
}
