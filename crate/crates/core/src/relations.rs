//! Relators written as s-expressions and evaluated in a forest model.
//!
//! Grammar: an expression is a generator (`x`, `y`, `c`, `g`, `l`, `id`)
//! or a list `(op args...)` with `op` one of
//!
//! * `+`, `-` (left fold; unary `-` negates),
//! * `oK` for the partial composition at input `K`,
//! * `perm` with a cycle, e.g. `(perm (2 3) e)`,
//! * `*` with an integer, e.g. `(* -1 e)`.

use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::forest::Family;
use crate::lincomb::LinComb;
use crate::operad::{act, compose_lin, compose_reduced, gens, Perm};
use crate::Signs;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

pub fn parse_sexpr(s: &str) -> Result<SExpr> {
    let spaced = s.replace('(', " ( ").replace(')', " ) ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut pos = 0;
    let e = parse_tokens(s, &tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(sexpr_error(s, "trailing tokens"));
    }
    Ok(e)
}

fn sexpr_error(s: &str, msg: &str) -> Error {
    Error::Parse {
        input: s.to_string(),
        pos: 0,
        msg: msg.to_string(),
    }
}

fn parse_tokens(s: &str, tokens: &[&str], pos: &mut usize) -> Result<SExpr> {
    let tok = *tokens.get(*pos).ok_or_else(|| sexpr_error(s, "unexpected end"))?;
    *pos += 1;
    match tok {
        "(" => {
            let mut items = Vec::new();
            while tokens.get(*pos) != Some(&")") {
                if *pos >= tokens.len() {
                    return Err(sexpr_error(s, "unbalanced `(`"));
                }
                items.push(parse_tokens(s, tokens, pos)?);
            }
            *pos += 1;
            Ok(SExpr::List(items))
        }
        ")" => Err(sexpr_error(s, "unexpected `)`")),
        a => Ok(SExpr::Atom(a.to_string())),
    }
}

/// Where relators are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Model {
    pub family: Family,
    /// Compose in the reduced operad.
    pub reduced: bool,
}

fn arity_of(v: &LinComb) -> usize {
    v.forests().next().map_or(0, |f| f.arity())
}

pub fn eval(e: &SExpr, model: Model) -> Result<LinComb> {
    let bad = |msg: String| Error::InvalidStructure(msg);
    match e {
        SExpr::Atom(a) => gens::by_name(a).ok_or_else(|| bad(format!("unknown generator `{a}`"))),
        SExpr::List(items) => {
            let (head, args) = match items.split_first() {
                Some((SExpr::Atom(h), rest)) => (h.as_str(), rest),
                _ => return Err(bad("expected an operator".into())),
            };
            match head {
                "+" | "-" => {
                    let vals = args.iter().map(|a| eval(a, model)).collect::<Result<Vec<_>>>()?;
                    let Some((first, rest)) = vals.split_first() else {
                        return Err(bad("empty sum".into()));
                    };
                    if head == "-" && rest.is_empty() {
                        return Ok(-first);
                    }
                    Ok(rest.iter().fold(first.clone(), |acc, v| if head == "+" { &acc + v } else { &acc - v }))
                }
                "*" => match args {
                    [SExpr::Atom(k), e] => {
                        let k: i64 = k.parse().map_err(|_| bad(format!("bad scalar `{k}`")))?;
                        Ok(eval(e, model)?.scale(&BigRational::from_integer(BigInt::from(k))))
                    }
                    _ => Err(bad("`*` takes a scalar and an expression".into())),
                },
                "perm" => match args {
                    [SExpr::List(cycle), e] => {
                        let cycle = cycle
                            .iter()
                            .map(|c| match c {
                                SExpr::Atom(a) => a.parse::<u32>().map_err(|_| bad(format!("bad cycle entry `{a}`"))),
                                _ => Err(bad("nested cycle".into())),
                            })
                            .collect::<Result<Vec<u32>>>()?;
                        let v = eval(e, model)?;
                        let n = arity_of(&v);
                        if cycle.iter().any(|&a| a == 0 || a as usize > n) && !v.is_zero() {
                            return Err(bad(format!("cycle {cycle:?} out of range for arity {n}")));
                        }
                        Ok(act(&Perm::cycle(n, &cycle), &v, Signs::Ignore))
                    }
                    _ => Err(bad("`perm` takes a cycle and an expression".into())),
                },
                op if op.starts_with('o') => {
                    let i: u32 = op[1..].parse().map_err(|_| bad(format!("unknown operator `{op}`")))?;
                    let [a, b] = args else {
                        return Err(bad(format!("`{op}` takes two arguments")));
                    };
                    let (a, b) = (eval(a, model)?, eval(b, model)?);
                    if model.reduced {
                        compose_reduced(&a, i, &b, Signs::Ignore)
                    } else {
                        compose_lin(&a, i, &b, Signs::Ignore)
                    }
                }
                op => Err(bad(format!("unknown operator `{op}`"))),
            }
        }
    }
}

pub fn eval_str(s: &str, model: Model) -> Result<LinComb> {
    eval(&parse_sexpr(s)?, model)
}

const PRE_LIE: &str = "(- (- (o1 x x) (o2 x x)) (perm (2 3) (- (o1 x x) (o2 x x))))";
const GREG: &str = "(- (- (o1 x g) (perm (2 3) (o1 g x)) (o2 g x)) \
                      (perm (2 3) (- (o1 x g) (perm (2 3) (o1 g x)) (o2 g x))))";
const DERIVATION: &str = "(- (o1 x c) (perm (2 3) (o1 c x)) (o2 c x))";
const ASSOCIATIVITY: &str = "(- (o1 c c) (o2 c c))";
const REDUCTION: &str = "(- (o1 g c) (o2 c g) (perm (2 3) (o1 c g)))";
const JACOBI: &str = "(- (o1 l l) (o2 l l) (perm (2 3) (o1 l l)))";
const HERTLING_MANIN: &str = "(+ (o3 (o1 l c) c)
    (* -1 (o1 (o1 c l) c))
    (* -1 (perm (3 4) (o1 (o1 c l) c)))
    (* -1 (o3 (o2 c l) c))
    (* -1 (perm (1 2) (o3 (o2 c l) c)))
    (perm (2 3) (o3 (o1 c c) l))
    (perm (1 3) (o3 (o1 c c) l))
    (* -1 (perm (1 4) (o3 (o1 c c) l)))
    (* -1 (perm (2 4) (o3 (o1 c c) l))))";
/// The same relation as the Leibniz rule in the first input of the defect
/// `LR = l ∘_2 c - c ∘_1 l - (c ∘_1 l).(2 3)`.
const LEIBNIZ_DEFECT: &str = "(- (o1 LR c) (o2 c LR) (perm (2 4) (o1 c LR)))";
const LR: &str = "(- (o2 l c) (o1 c l) (perm (2 3) (o1 c l)))";

pub struct Presentation {
    pub id: &'static str,
    pub model: Model,
    pub relators: Vec<(&'static str, &'static str)>,
}

pub const PRESENTATION_IDS: [&str; 6] = ["PreLie", "Greg", "ComPreLie", "ComGreg", "RedComGreg", "FMan"];

pub fn presentation(id: &str) -> Result<Presentation> {
    let model = |family, reduced| Model { family, reduced };
    let (id, model, relators): (&'static str, Model, Vec<(&'static str, &'static str)>) = match id {
        "PreLie" => ("PreLie", model(Family::RT, false), vec![("pre-Lie", PRE_LIE)]),
        "Greg" => (
            "Greg",
            model(Family::Greg, false),
            vec![("pre-Lie", PRE_LIE), ("x-g", GREG)],
        ),
        "ComPreLie" => (
            "ComPreLie",
            model(Family::FH, false),
            vec![("pre-Lie", PRE_LIE), ("derivation", DERIVATION), ("associativity", ASSOCIATIVITY)],
        ),
        "ComGreg" => (
            "ComGreg",
            model(Family::FG, false),
            vec![
                ("pre-Lie", PRE_LIE),
                ("derivation", DERIVATION),
                ("associativity", ASSOCIATIVITY),
                ("x-g", GREG),
            ],
        ),
        "RedComGreg" => (
            "RedComGreg",
            model(Family::FRG, true),
            vec![
                ("pre-Lie", PRE_LIE),
                ("derivation", DERIVATION),
                ("associativity", ASSOCIATIVITY),
                ("x-g", GREG),
                ("reduction", REDUCTION),
            ],
        ),
        "FMan" => (
            "FMan",
            model(Family::FH, false),
            vec![
                ("Jacobi", JACOBI),
                ("associativity", ASSOCIATIVITY),
                ("Hertling-Manin", HERTLING_MANIN),
                ("Hertling-Manin (Leibniz form)", LEIBNIZ_DEFECT),
            ],
        ),
        other => return Err(Error::UnknownPresentation(other.to_string())),
    };
    Ok(Presentation { id, model, relators })
}

/// Evaluates every relator of a presentation.
pub fn evaluate_relators(id: &str) -> Result<Vec<(String, LinComb)>> {
    let p = presentation(id)?;
    p.relators
        .iter()
        .map(|(name, src)| Ok((name.to_string(), eval_str(&src.replace("LR", LR), p.model)?)))
        .collect()
}

/// Whether every relator of the presentation vanishes.
pub fn check_relations(id: &str) -> Result<bool> {
    Ok(evaluate_relators(id)?.iter().all(|(_, v)| v.is_zero()))
}
