//! Term languages and the translation between them.
//!
//! Continuous terms are built from variables, zero, truncated addition,
//! negation and kappa; lattice-group terms from variables, the distinguished
//! unit variable `y`, zero, addition, meet, join, minus and star. Both come
//! with parsers for a fully parenthesized ASCII grammar, pretty printers
//! that invert them, formation sequences, and evaluators. The hat
//! translation maps the first language into the second so that evaluating
//! over a group's unit interval agrees with evaluating the translated term
//! over the whole group.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::algebra::{Algebra, AlgebraError, Elem};
use crate::group::{GroupElem, GroupError, LuGroup};
use crate::parse::{Cursor, SyntaxError};

/// A continuous term. Variable indices are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContTerm {
    Zero,
    Var(u32),
    Plus(Box<ContTerm>, Box<ContTerm>),
    Neg(Box<ContTerm>),
    Kappa(Box<ContTerm>),
}

impl ContTerm {
    pub fn plus(l: ContTerm, r: ContTerm) -> Self {
        ContTerm::Plus(Box::new(l), Box::new(r))
    }

    pub fn neg(t: ContTerm) -> Self {
        ContTerm::Neg(Box::new(t))
    }

    pub fn kappa(t: ContTerm) -> Self {
        ContTerm::Kappa(Box::new(t))
    }

    /// Sorted set of variable indices occurring in the term.
    pub fn variables(&self) -> Vec<u32> {
        let mut vars = std::collections::BTreeSet::new();
        self.collect_vars(&mut vars);
        vars.into_iter().collect()
    }

    fn collect_vars(&self, out: &mut std::collections::BTreeSet<u32>) {
        match self {
            ContTerm::Zero => {}
            ContTerm::Var(i) => {
                out.insert(*i);
            }
            ContTerm::Plus(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            ContTerm::Neg(t) | ContTerm::Kappa(t) => t.collect_vars(out),
        }
    }

    /// Number of plus nodes in the tree.
    pub fn plus_count(&self) -> usize {
        match self {
            ContTerm::Zero | ContTerm::Var(_) => 0,
            ContTerm::Plus(l, r) => 1 + l.plus_count() + r.plus_count(),
            ContTerm::Neg(t) | ContTerm::Kappa(t) => t.plus_count(),
        }
    }
}

impl fmt::Display for ContTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContTerm::Zero => write!(f, "0"),
            ContTerm::Var(i) => write!(f, "x{i}"),
            ContTerm::Plus(l, r) => write!(f, "({l} + {r})"),
            ContTerm::Neg(t) => write!(f, "!{t}"),
            ContTerm::Kappa(t) => write!(f, "#{t}"),
        }
    }
}

impl fmt::Debug for ContTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A lattice-group term over the alphabet extended with the distinguished
/// unit variable `y`. The unit variable is its own node kind so that
/// translations can never collide with source variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LuTerm {
    Zero,
    Var(u32),
    UnitVar,
    Add(Box<LuTerm>, Box<LuTerm>),
    Meet(Box<LuTerm>, Box<LuTerm>),
    Join(Box<LuTerm>, Box<LuTerm>),
    Minus(Box<LuTerm>),
    Star(Box<LuTerm>),
}

impl LuTerm {
    pub fn add(l: LuTerm, r: LuTerm) -> Self {
        LuTerm::Add(Box::new(l), Box::new(r))
    }

    pub fn meet(l: LuTerm, r: LuTerm) -> Self {
        LuTerm::Meet(Box::new(l), Box::new(r))
    }

    pub fn join(l: LuTerm, r: LuTerm) -> Self {
        LuTerm::Join(Box::new(l), Box::new(r))
    }

    pub fn minus(t: LuTerm) -> Self {
        LuTerm::Minus(Box::new(t))
    }

    pub fn star(t: LuTerm) -> Self {
        LuTerm::Star(Box::new(t))
    }
}

impl fmt::Display for LuTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LuTerm::Zero => write!(f, "0"),
            LuTerm::Var(i) => write!(f, "x{i}"),
            LuTerm::UnitVar => write!(f, "y"),
            LuTerm::Add(l, r) => write!(f, "({l} + {r})"),
            LuTerm::Meet(l, r) => write!(f, "({l} /\\ {r})"),
            LuTerm::Join(l, r) => write!(f, "({l} \\/ {r})"),
            LuTerm::Minus(t) => write!(f, "-{t}"),
            LuTerm::Star(t) => write!(f, "*{t}"),
        }
    }
}

impl fmt::Debug for LuTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Grammar: `t ::= "0" | "x"NAT | "(" t " + " t ")" | "!"t | "#"t`.
pub fn parse_cont_term(text: &str) -> Result<ContTerm, SyntaxError> {
    let mut c = Cursor::new(text);
    let t = cont_term(&mut c)?;
    c.finish()?;
    Ok(t)
}

fn cont_term(c: &mut Cursor) -> Result<ContTerm, SyntaxError> {
    c.skip_ws();
    match c.peek() {
        Some('0') => {
            c.bump();
            Ok(ContTerm::Zero)
        }
        Some('x') => {
            c.bump();
            let i = c.nat()?;
            if i == 0 {
                return Err(c.error("a variable index >= 1"));
            }
            Ok(ContTerm::Var(i))
        }
        Some('!') => {
            c.bump();
            Ok(ContTerm::neg(cont_term(c)?))
        }
        Some('#') => {
            c.bump();
            Ok(ContTerm::kappa(cont_term(c)?))
        }
        Some('(') => {
            c.bump();
            let l = cont_term(c)?;
            c.expect("+")?;
            let r = cont_term(c)?;
            c.expect(")")?;
            Ok(ContTerm::plus(l, r))
        }
        _ => Err(c.error("a term: \"0\", \"x<n>\", \"(\", \"!\" or \"#\"")),
    }
}

/// Grammar: `g ::= "0" | "x"NAT | "y" | "(" g " + " g ")" | "(" g " /\ " g ")"
/// | "(" g " \/ " g ")" | "-"g | "*"g`.
pub fn parse_lu_term(text: &str) -> Result<LuTerm, SyntaxError> {
    let mut c = Cursor::new(text);
    let t = lu_term(&mut c)?;
    c.finish()?;
    Ok(t)
}

fn lu_term(c: &mut Cursor) -> Result<LuTerm, SyntaxError> {
    c.skip_ws();
    match c.peek() {
        Some('0') => {
            c.bump();
            Ok(LuTerm::Zero)
        }
        Some('x') => {
            c.bump();
            let i = c.nat()?;
            if i == 0 {
                return Err(c.error("a variable index >= 1"));
            }
            Ok(LuTerm::Var(i))
        }
        Some('y') => {
            c.bump();
            Ok(LuTerm::UnitVar)
        }
        Some('-') => {
            c.bump();
            Ok(LuTerm::minus(lu_term(c)?))
        }
        Some('*') => {
            c.bump();
            Ok(LuTerm::star(lu_term(c)?))
        }
        Some('(') => {
            c.bump();
            let l = lu_term(c)?;
            c.skip_ws();
            let node: fn(LuTerm, LuTerm) -> LuTerm = if c.eat("+") {
                LuTerm::add
            } else if c.eat("/\\") {
                LuTerm::meet
            } else if c.eat("\\/") {
                LuTerm::join
            } else {
                return Err(c.error("\"+\", \"/\\\" or \"\\/\""));
            };
            let r = lu_term(c)?;
            c.expect(")")?;
            Ok(node(l, r))
        }
        _ => Err(c.error("a term: \"0\", \"x<n>\", \"y\", \"(\", \"-\" or \"*\"")),
    }
}

/// Formation rule applied at an entry of a continuous-term formation
/// sequence; child references are 0-based indices into the sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContRule {
    /// S1: a variable.
    S1(u32),
    /// S2: the constant zero.
    S2,
    /// S3: truncated sum of two earlier entries.
    S3(usize, usize),
    /// S4: negation of an earlier entry.
    S4(usize),
    /// S5: kappa of an earlier entry.
    S5(usize),
}

impl fmt::Display for ContRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContRule::S1(_) => write!(f, "S1"),
            ContRule::S2 => write!(f, "S2"),
            ContRule::S3(i, j) => write!(f, "S3 {} {}", i + 1, j + 1),
            ContRule::S4(i) => write!(f, "S4 {}", i + 1),
            ContRule::S5(i) => write!(f, "S5 {}", i + 1),
        }
    }
}

/// Formation rule for lattice-group terms; T1 covers both source variables
/// and the unit variable (`None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LuRule {
    T1(Option<u32>),
    T2,
    T3(usize, usize),
    T4(usize, usize),
    T5(usize, usize),
    T6(usize),
    T7(usize),
}

impl fmt::Display for LuRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LuRule::T1(_) => write!(f, "T1"),
            LuRule::T2 => write!(f, "T2"),
            LuRule::T3(i, j) => write!(f, "T3 {} {}", i + 1, j + 1),
            LuRule::T4(i, j) => write!(f, "T4 {} {}", i + 1, j + 1),
            LuRule::T5(i, j) => write!(f, "T5 {} {}", i + 1, j + 1),
            LuRule::T6(i) => write!(f, "T6 {}", i + 1),
            LuRule::T7(i) => write!(f, "T7 {}", i + 1),
        }
    }
}

/// A formation sequence: one entry per tree node in post order, each tagged
/// with the rule that forms it and the indices of its children. The last
/// entry is the whole term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormationSequence<T, R> {
    pub entries: Vec<(T, R)>,
}

impl<T: fmt::Display, R: fmt::Display> fmt::Display for FormationSequence<T, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, r)) in self.entries.iter().enumerate() {
            writeln!(f, "{}. {} [{}]", i + 1, t, r)?;
        }
        Ok(())
    }
}

/// Post-order formation sequence of a continuous term.
pub fn formation_sequence(t: &ContTerm) -> FormationSequence<ContTerm, ContRule> {
    fn walk(t: &ContTerm, out: &mut Vec<(ContTerm, ContRule)>) -> usize {
        let rule = match t {
            ContTerm::Var(i) => ContRule::S1(*i),
            ContTerm::Zero => ContRule::S2,
            ContTerm::Plus(l, r) => {
                let li = walk(l, out);
                let ri = walk(r, out);
                ContRule::S3(li, ri)
            }
            ContTerm::Neg(c) => ContRule::S4(walk(c, out)),
            ContTerm::Kappa(c) => ContRule::S5(walk(c, out)),
        };
        out.push((t.clone(), rule));
        out.len() - 1
    }
    let mut entries = Vec::new();
    walk(t, &mut entries);
    FormationSequence { entries }
}

/// Post-order formation sequence of a lattice-group term.
pub fn lu_formation_sequence(t: &LuTerm) -> FormationSequence<LuTerm, LuRule> {
    fn walk(t: &LuTerm, out: &mut Vec<(LuTerm, LuRule)>) -> usize {
        let rule = match t {
            LuTerm::Var(i) => LuRule::T1(Some(*i)),
            LuTerm::UnitVar => LuRule::T1(None),
            LuTerm::Zero => LuRule::T2,
            LuTerm::Add(l, r) => {
                let li = walk(l, out);
                let ri = walk(r, out);
                LuRule::T3(li, ri)
            }
            LuTerm::Meet(l, r) => {
                let li = walk(l, out);
                let ri = walk(r, out);
                LuRule::T4(li, ri)
            }
            LuTerm::Join(l, r) => {
                let li = walk(l, out);
                let ri = walk(r, out);
                LuRule::T5(li, ri)
            }
            LuTerm::Minus(c) => LuRule::T6(walk(c, out)),
            LuTerm::Star(c) => LuRule::T7(walk(c, out)),
        };
        out.push((t.clone(), rule));
        out.len() - 1
    }
    let mut entries = Vec::new();
    walk(t, &mut entries);
    FormationSequence { entries }
}

/// Replays a formation sequence, rebuilding the term it forms.
pub fn replay_formation(seq: &FormationSequence<ContTerm, ContRule>) -> Option<ContTerm> {
    let mut built: Vec<ContTerm> = Vec::with_capacity(seq.entries.len());
    for (i, (_, rule)) in seq.entries.iter().enumerate() {
        let t = match rule {
            ContRule::S1(v) => ContTerm::Var(*v),
            ContRule::S2 => ContTerm::Zero,
            ContRule::S3(l, r) if *l < i && *r < i => {
                ContTerm::plus(built[*l].clone(), built[*r].clone())
            }
            ContRule::S4(c) if *c < i => ContTerm::neg(built[*c].clone()),
            ContRule::S5(c) if *c < i => ContTerm::kappa(built[*c].clone()),
            _ => return None,
        };
        built.push(t);
    }
    built.pop()
}

/// The hat translation into the language with the unit variable:
/// zero and variables map to themselves, `(s + t)` to `(y /\ (s' + t'))`,
/// `!t` to `(y + -t')`, and `#t` to `*(y + t')`.
pub fn hat_translate(t: &ContTerm) -> LuTerm {
    match t {
        ContTerm::Zero => LuTerm::Zero,
        ContTerm::Var(i) => LuTerm::Var(*i),
        ContTerm::Plus(l, r) => LuTerm::meet(
            LuTerm::UnitVar,
            LuTerm::add(hat_translate(l), hat_translate(r)),
        ),
        ContTerm::Neg(c) => LuTerm::add(LuTerm::UnitVar, LuTerm::minus(hat_translate(c))),
        ContTerm::Kappa(c) => LuTerm::star(LuTerm::add(LuTerm::UnitVar, hat_translate(c))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("variable x{0} is unbound")]
    UnboundVariable(u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Bottom-up evaluation of a continuous term in an algebra. Every variable
/// of the term must be assigned and every assigned value must lie in the
/// algebra's carrier.
pub fn eval_cont_term(
    t: &ContTerm,
    alg: &Algebra,
    assignment: &BTreeMap<u32, Elem>,
) -> Result<Elem, EvalError> {
    match t {
        ContTerm::Zero => Ok(alg.zero()),
        ContTerm::Var(i) => {
            let v = assignment
                .get(i)
                .ok_or(EvalError::UnboundVariable(*i))?;
            if !alg.contains(v) {
                return Err(AlgebraError::CarrierViolation(v.to_string()).into());
            }
            Ok(v.clone())
        }
        ContTerm::Plus(l, r) => {
            let lv = eval_cont_term(l, alg, assignment)?;
            let rv = eval_cont_term(r, alg, assignment)?;
            Ok(alg.oplus(&lv, &rv)?)
        }
        ContTerm::Neg(c) => Ok(alg.neg(&eval_cont_term(c, alg, assignment)?)?),
        ContTerm::Kappa(c) => Ok(alg.kappa(&eval_cont_term(c, alg, assignment)?)?),
    }
}

/// Bottom-up evaluation of a lattice-group term. The unit variable `y`
/// evaluates to `unit_binding`; `Star` is the halving automorphism inverse,
/// so the translated pattern `*(y + t)` evaluates to `halve(u + t)`.
pub fn eval_lu_term(
    t: &LuTerm,
    group: &LuGroup,
    assignment: &BTreeMap<u32, GroupElem>,
    unit_binding: &GroupElem,
) -> Result<GroupElem, EvalError> {
    let rank_ok = |g: &GroupElem| -> Result<(), EvalError> {
        if g.rank() == group.rank() {
            Ok(())
        } else {
            Err(GroupError::RankMismatch { left: g.rank(), right: group.rank() }.into())
        }
    };
    match t {
        LuTerm::Zero => Ok(group.identity()),
        LuTerm::Var(i) => {
            let v = assignment
                .get(i)
                .ok_or(EvalError::UnboundVariable(*i))?;
            rank_ok(v)?;
            Ok(v.clone())
        }
        LuTerm::UnitVar => {
            rank_ok(unit_binding)?;
            Ok(unit_binding.clone())
        }
        LuTerm::Add(l, r) => {
            let lv = eval_lu_term(l, group, assignment, unit_binding)?;
            let rv = eval_lu_term(r, group, assignment, unit_binding)?;
            Ok(lv.add(&rv)?)
        }
        LuTerm::Meet(l, r) => {
            let lv = eval_lu_term(l, group, assignment, unit_binding)?;
            let rv = eval_lu_term(r, group, assignment, unit_binding)?;
            Ok(lv.meet(&rv)?)
        }
        LuTerm::Join(l, r) => {
            let lv = eval_lu_term(l, group, assignment, unit_binding)?;
            let rv = eval_lu_term(r, group, assignment, unit_binding)?;
            Ok(lv.join(&rv)?)
        }
        LuTerm::Minus(c) => Ok(eval_lu_term(c, group, assignment, unit_binding)?.neg()),
        LuTerm::Star(c) => Ok(eval_lu_term(c, group, assignment, unit_binding)?.halve()),
    }
}

/// Draws a random continuous term with variables among `x1..x{max_var}` and
/// depth at most `depth`.
pub fn random_cont_term(rng: &mut impl Rng, max_var: u32, depth: u32) -> ContTerm {
    if depth == 0 {
        return if max_var > 0 && rng.gen_bool(0.8) {
            ContTerm::Var(rng.gen_range(1..=max_var))
        } else {
            ContTerm::Zero
        };
    }
    match rng.gen_range(0..100) {
        0..=24 => {
            if max_var > 0 {
                ContTerm::Var(rng.gen_range(1..=max_var))
            } else {
                ContTerm::Zero
            }
        }
        25..=34 => ContTerm::Zero,
        35..=59 => ContTerm::plus(
            random_cont_term(rng, max_var, depth - 1),
            random_cont_term(rng, max_var, depth - 1),
        ),
        60..=79 => ContTerm::neg(random_cont_term(rng, max_var, depth - 1)),
        _ => ContTerm::kappa(random_cont_term(rng, max_var, depth - 1)),
    }
}

/// Draws a random lattice-group term (including the unit variable).
pub fn random_lu_term(rng: &mut impl Rng, max_var: u32, depth: u32) -> LuTerm {
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 if max_var > 0 => LuTerm::Var(rng.gen_range(1..=max_var)),
            1 => LuTerm::UnitVar,
            _ => LuTerm::Zero,
        };
    }
    match rng.gen_range(0..100) {
        0..=14 => {
            if max_var > 0 {
                LuTerm::Var(rng.gen_range(1..=max_var))
            } else {
                LuTerm::Zero
            }
        }
        15..=21 => LuTerm::UnitVar,
        22..=28 => LuTerm::Zero,
        29..=46 => LuTerm::add(
            random_lu_term(rng, max_var, depth - 1),
            random_lu_term(rng, max_var, depth - 1),
        ),
        47..=60 => LuTerm::meet(
            random_lu_term(rng, max_var, depth - 1),
            random_lu_term(rng, max_var, depth - 1),
        ),
        61..=74 => LuTerm::join(
            random_lu_term(rng, max_var, depth - 1),
            random_lu_term(rng, max_var, depth - 1),
        ),
        75..=87 => LuTerm::minus(random_lu_term(rng, max_var, depth - 1)),
        _ => LuTerm::star(random_lu_term(rng, max_var, depth - 1)),
    }
}
