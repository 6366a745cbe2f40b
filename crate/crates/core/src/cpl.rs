//! The propositional logic layer: formulas over monus, negation and halving,
//! valuations into the dyadic unit interval (0 means absolutely true),
//! the six axiom schemata, Hilbert-style proof objects with a syntactic
//! checker, and the bridge into continuous terms that reduces tautology
//! checking to the equational decision kernel.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::arith::{Dyadic, Rational, UnitDyadic};
use crate::decide::{self, DecideError, DecideOptions, Verdict};
use crate::parse::{Cursor, SyntaxError};
use crate::term::ContTerm;

/// A formula. Propositions are 1-based; there is no constant symbol.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Prop(u32),
    Monus(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
    Half(Box<Formula>),
}

impl Formula {
    pub fn monus(l: Formula, r: Formula) -> Self {
        Formula::Monus(Box::new(l), Box::new(r))
    }

    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn half(f: Formula) -> Self {
        Formula::Half(Box::new(f))
    }

    /// Sorted set of proposition indices.
    pub fn propositions(&self) -> Vec<u32> {
        let mut out = std::collections::BTreeSet::new();
        self.collect(&mut out);
        out.into_iter().collect()
    }

    fn collect(&self, out: &mut std::collections::BTreeSet<u32>) {
        match self {
            Formula::Prop(i) => {
                out.insert(*i);
            }
            Formula::Monus(l, r) => {
                l.collect(out);
                r.collect(out);
            }
            Formula::Neg(c) | Formula::Half(c) => c.collect(out),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Prop(i) => write!(f, "P{i}"),
            Formula::Monus(l, r) => write!(f, "({l} -. {r})"),
            Formula::Neg(c) => write!(f, "!{c}"),
            Formula::Half(c) => write!(f, "%{c}"),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Grammar: `f ::= "P"NAT | "(" f " -. " f ")" | "!"f | "%"f`.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut c = Cursor::new(text);
    let f = formula(&mut c)?;
    c.finish()?;
    Ok(f)
}

fn formula(c: &mut Cursor) -> Result<Formula, SyntaxError> {
    c.skip_ws();
    match c.peek() {
        Some('P') => {
            c.bump();
            let i = c.nat()?;
            if i == 0 {
                return Err(c.error("a proposition index >= 1"));
            }
            Ok(Formula::Prop(i))
        }
        Some('!') => {
            c.bump();
            Ok(Formula::neg(formula(c)?))
        }
        Some('%') => {
            c.bump();
            Ok(Formula::half(formula(c)?))
        }
        Some('(') => {
            c.bump();
            let l = formula(c)?;
            c.expect("-.")?;
            let r = formula(c)?;
            c.expect(")")?;
            Ok(Formula::monus(l, r))
        }
        _ => Err(c.error("a formula: \"P<n>\", \"(\", \"!\" or \"%\"")),
    }
}

/// A valuation of propositions in `[0, 1]`; value 0 is absolute truth.
pub type Valuation = BTreeMap<u32, UnitDyadic>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CplError {
    #[error("proposition P{0} is unbound")]
    UnboundProposition(u32),
    #[error("substitution is missing letter {0}")]
    MissingLetter(Letter),
}

/// Recursive evaluation: monus is truncated difference, negation reflects,
/// half halves.
pub fn eval_formula(f: &Formula, v: &Valuation) -> Result<UnitDyadic, CplError> {
    fn go(f: &Formula, v: &Valuation) -> Result<Dyadic, CplError> {
        Ok(match f {
            Formula::Prop(i) => v
                .get(i)
                .ok_or(CplError::UnboundProposition(*i))?
                .get()
                .clone(),
            Formula::Monus(l, r) => {
                let d = &go(l, v)? - &go(r, v)?;
                d.max(Dyadic::zero())
            }
            Formula::Neg(c) => &Dyadic::one() - &go(c, v)?,
            Formula::Half(c) => go(c, v)?.halve(),
        })
    }
    Ok(UnitDyadic::new(go(f, v)?).expect("connectives preserve [0, 1]"))
}

/// A schema letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Alpha,
    Beta,
    Gamma,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Alpha => write!(f, "a"),
            Letter::Beta => write!(f, "b"),
            Letter::Gamma => write!(f, "c"),
        }
    }
}

/// The six axiom schemata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemaId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
}

impl SchemaId {
    pub const ALL: [SchemaId; 6] = [
        SchemaId::A1,
        SchemaId::A2,
        SchemaId::A3,
        SchemaId::A4,
        SchemaId::A5,
        SchemaId::A6,
    ];
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

// Schema template tree over letters.
enum Pattern {
    L(Letter),
    Monus(Box<Pattern>, Box<Pattern>),
    Neg(Box<Pattern>),
    Half(Box<Pattern>),
}

impl Pattern {
    fn monus(l: Pattern, r: Pattern) -> Pattern {
        Pattern::Monus(Box::new(l), Box::new(r))
    }

    fn neg(p: Pattern) -> Pattern {
        Pattern::Neg(Box::new(p))
    }

    fn half(p: Pattern) -> Pattern {
        Pattern::Half(Box::new(p))
    }
}

fn schema_pattern(id: SchemaId) -> Pattern {
    use Letter::{Alpha as A, Beta as B, Gamma as G};
    use Pattern::L;
    match id {
        // (a -. b) -. a
        SchemaId::A1 => Pattern::monus(Pattern::monus(L(A), L(B)), L(A)),
        // ((a -. b) -. (a -. c)) -. (c -. b)
        SchemaId::A2 => Pattern::monus(
            Pattern::monus(Pattern::monus(L(A), L(B)), Pattern::monus(L(A), L(G))),
            Pattern::monus(L(G), L(B)),
        ),
        // (a -. (a -. b)) -. (b -. (b -. a))
        SchemaId::A3 => Pattern::monus(
            Pattern::monus(L(A), Pattern::monus(L(A), L(B))),
            Pattern::monus(L(B), Pattern::monus(L(B), L(A))),
        ),
        // (a -. b) -. (!b -. !a)
        SchemaId::A4 => Pattern::monus(
            Pattern::monus(L(A), L(B)),
            Pattern::monus(Pattern::neg(L(B)), Pattern::neg(L(A))),
        ),
        // %a -. (a -. %a)
        SchemaId::A5 => Pattern::monus(
            Pattern::half(L(A)),
            Pattern::monus(L(A), Pattern::half(L(A))),
        ),
        // (a -. %a) -. %a
        SchemaId::A6 => Pattern::monus(
            Pattern::monus(L(A), Pattern::half(L(A))),
            Pattern::half(L(A)),
        ),
    }
}

/// Builds the instance of a schema under a letter substitution.
pub fn instantiate_schema(
    id: SchemaId,
    subst: &BTreeMap<Letter, Formula>,
) -> Result<Formula, CplError> {
    fn walk(p: &Pattern, subst: &BTreeMap<Letter, Formula>) -> Result<Formula, CplError> {
        Ok(match p {
            Pattern::L(l) => subst.get(l).ok_or(CplError::MissingLetter(*l))?.clone(),
            Pattern::Monus(a, b) => Formula::monus(walk(a, subst)?, walk(b, subst)?),
            Pattern::Neg(c) => Formula::neg(walk(c, subst)?),
            Pattern::Half(c) => Formula::half(walk(c, subst)?),
        })
    }
    walk(&schema_pattern(id), subst)
}

/// Convenience matcher: recovers the substitution that makes `f` an instance
/// of `id`, if one exists.
pub fn match_schema(id: SchemaId, f: &Formula) -> Option<BTreeMap<Letter, Formula>> {
    fn walk(p: &Pattern, f: &Formula, subst: &mut BTreeMap<Letter, Formula>) -> bool {
        match (p, f) {
            (Pattern::L(l), _) => match subst.get(l) {
                Some(bound) => bound == f,
                None => {
                    subst.insert(*l, f.clone());
                    true
                }
            },
            (Pattern::Monus(a, b), Formula::Monus(x, y)) => {
                walk(a, x, subst) && walk(b, y, subst)
            }
            (Pattern::Neg(a), Formula::Neg(x)) => walk(a, x, subst),
            (Pattern::Half(a), Formula::Half(x)) => walk(a, x, subst),
            _ => false,
        }
    }
    let mut subst = BTreeMap::new();
    walk(&schema_pattern(id), f, &mut subst).then_some(subst)
}

/// Simultaneous outermost-first replacement: every subtree equal to a target
/// pattern is replaced and the inserted replacement is not re-scanned.
/// Target patterns must be pairwise distinct.
pub fn substitute(f: &Formula, targets: &[(Formula, Formula)]) -> Formula {
    if let Some((_, replacement)) = targets.iter().find(|(pat, _)| pat == f) {
        return replacement.clone();
    }
    match f {
        Formula::Prop(_) => f.clone(),
        Formula::Monus(l, r) => {
            Formula::monus(substitute(l, targets), substitute(r, targets))
        }
        Formula::Neg(c) => Formula::neg(substitute(c, targets)),
        Formula::Half(c) => Formula::half(substitute(c, targets)),
    }
}

/// Justification of one proof step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// A literal instance of a schema. When the substitution is given the
    /// checker verifies by instantiation; otherwise it falls back to the
    /// matcher, and a failed match rejects the step.
    Axiom { schema: SchemaId, subst: Option<BTreeMap<Letter, Formula>> },
    /// The m-th hypothesis.
    Hypothesis(usize),
    /// Detachment: step `implication` must read `this -. steps[minor]`.
    Mp { implication: usize, minor: usize },
}

/// A formal deduction: an ordered list of steps.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub steps: Vec<(Formula, Justification)>,
}

/// Checker outcome; rejection carries the 0-based step index and a reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofOutcome {
    Accepted,
    Rejected { step: usize, reason: String },
}

impl ProofOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ProofOutcome::Accepted)
    }
}

/// Verifies a deduction from the hypotheses. Every step must be a literal
/// schema instance, syntactically equal to a hypothesis, or follow by
/// detachment from two earlier steps; equality is tree equality throughout.
pub fn check_proof(proof: &Proof, hypotheses: &[Formula]) -> ProofOutcome {
    let reject = |step: usize, reason: &str| ProofOutcome::Rejected {
        step,
        reason: reason.to_string(),
    };
    for (i, (formula, just)) in proof.steps.iter().enumerate() {
        match just {
            Justification::Axiom { schema, subst } => {
                let ok = match subst {
                    Some(map) => match instantiate_schema(*schema, map) {
                        Ok(inst) => inst == *formula,
                        Err(_) => return reject(i, "substitution is missing a letter"),
                    },
                    None => match_schema(*schema, formula).is_some(),
                };
                if !ok {
                    return reject(i, &format!("not an instance of {schema}"));
                }
            }
            Justification::Hypothesis(m) => {
                if *m >= hypotheses.len() {
                    return reject(i, "hypothesis index out of range");
                }
                if hypotheses[*m] != *formula {
                    return reject(i, "hypothesis mismatch");
                }
            }
            Justification::Mp { implication, minor } => {
                if *implication >= i || *minor >= i {
                    return reject(i, "mp must reference earlier steps");
                }
                let expected = Formula::monus(
                    formula.clone(),
                    proof.steps[*minor].0.clone(),
                );
                if proof.steps[*implication].0 != expected {
                    return reject(i, "mp shape mismatch");
                }
            }
        }
    }
    ProofOutcome::Accepted
}

/// The formula-to-term bridge: propositions become variables, monus becomes
/// plus-negation, negation and halving map to their term forms.
pub fn to_cont_term(f: &Formula) -> ContTerm {
    match f {
        Formula::Prop(i) => ContTerm::Var(*i),
        Formula::Monus(l, r) => {
            ContTerm::plus(to_cont_term(l), ContTerm::neg(to_cont_term(r)))
        }
        Formula::Neg(c) => ContTerm::neg(to_cont_term(c)),
        Formula::Half(c) => ContTerm::kappa(to_cont_term(c)),
    }
}

/// Tautology verdict: valid means value zero under every valuation; the
/// counterexample carries an exact valuation and the formula's nonzero
/// value there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TautVerdict {
    Valid,
    CounterExample { valuation: BTreeMap<u32, Rational>, value: Rational },
}

impl TautVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, TautVerdict::Valid)
    }
}

impl fmt::Display for TautVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TautVerdict::Valid => write!(f, "VALID"),
            TautVerdict::CounterExample { valuation, value } => {
                for (i, v) in valuation {
                    write!(f, "P{i}={v} ")?;
                }
                write!(f, "→ value={value}")
            }
        }
    }
}

/// Decides whether a formula is a tautology (value zero at every real
/// valuation) by deciding the equation `bridge(f) = !0` and pulling the
/// witness back through the reflection `v(P_i) = 1 - x_i`.
pub fn decide_taut(f: &Formula) -> Result<TautVerdict, DecideError> {
    decide_taut_with(f, DecideOptions::default())
}

pub fn decide_taut_with(
    f: &Formula,
    opts: DecideOptions,
) -> Result<TautVerdict, DecideError> {
    let term = to_cont_term(f);
    let one = ContTerm::neg(ContTerm::Zero);
    match decide::decide_equation_with(&term, &one, opts)? {
        Verdict::Valid => Ok(TautVerdict::Valid),
        Verdict::CounterExample(ce) => {
            let valuation: BTreeMap<u32, Rational> = ce
                .assignment
                .iter()
                .map(|(i, x)| (*i, Rational::from_integer(1.into()) - x))
                .collect();
            let value = Rational::from_integer(1.into()) - &ce.lhs_value;
            Ok(TautVerdict::CounterExample { valuation, value })
        }
    }
}

/// Provable equivalence, decided semantically: both monus directions must be
/// tautologies.
pub fn lindenbaum_equiv(a: &Formula, b: &Formula) -> Result<bool, DecideError> {
    lindenbaum_equiv_with(a, b, DecideOptions::default())
}

pub fn lindenbaum_equiv_with(
    a: &Formula,
    b: &Formula,
    opts: DecideOptions,
) -> Result<bool, DecideError> {
    Ok(
        decide_taut_with(&Formula::monus(a.clone(), b.clone()), opts)?.is_valid()
            && decide_taut_with(&Formula::monus(b.clone(), a.clone()), opts)?.is_valid(),
    )
}

/// The nine derived schemata that follow from the axioms; all decide valid.
pub fn derived_schema(n: usize, a: &Formula, b: &Formula, g: &Formula) -> Formula {
    let m = Formula::monus;
    let neg = Formula::neg;
    let (a, b, g) = (a.clone(), b.clone(), g.clone());
    match n {
        // ((a -. b) -. c) -. ((a -. c) -. b)
        1 => m(m(m(a.clone(), b.clone()), g.clone()), m(m(a, g), b)),
        // a -. a
        2 => m(a.clone(), a),
        // ((a -. b) -. (c -. b)) -. (a -. c)
        3 => m(m(m(a.clone(), b.clone()), m(g.clone(), b)), m(a, g)),
        // (a -. b) -. !!a
        4 => m(m(a.clone(), b), neg(neg(a))),
        // a -. !!a
        5 => m(a.clone(), neg(neg(a))),
        // (!a -. b) -. (!b -. a)
        6 => m(m(neg(a.clone()), b.clone()), m(neg(b), a)),
        // (!a -. !b) -. (!!b -. a)
        7 => m(m(neg(a.clone()), neg(b.clone())), m(neg(neg(b)), a)),
        // !!a -. a
        8 => m(neg(neg(a.clone())), a),
        // (!a -. !b) -. (b -. a)
        9 => m(m(neg(a.clone()), neg(b.clone())), m(b, a)),
        _ => panic!("derived schemata are numbered 1..=9"),
    }
}

/// Draws a random formula with propositions among `P1..P{max_prop}` and
/// depth at most `depth`.
pub fn random_formula(rng: &mut impl Rng, max_prop: u32, depth: u32) -> Formula {
    debug_assert!(max_prop >= 1);
    if depth == 0 {
        return Formula::Prop(rng.gen_range(1..=max_prop));
    }
    match rng.gen_range(0..100) {
        0..=34 => Formula::Prop(rng.gen_range(1..=max_prop)),
        35..=59 => Formula::monus(
            random_formula(rng, max_prop, depth - 1),
            random_formula(rng, max_prop, depth - 1),
        ),
        60..=79 => Formula::neg(random_formula(rng, max_prop, depth - 1)),
        _ => Formula::half(random_formula(rng, max_prop, depth - 1)),
    }
}

/// Generates a valid deduction from no hypotheses: random schema instances
/// chained with constructed detachment steps. Used as a soundness corpus.
pub fn random_proof(rng: &mut impl Rng, len: usize) -> Proof {
    let mut steps: Vec<(Formula, Justification)> = Vec::new();
    while steps.len() < len {
        let make_mp = !steps.is_empty() && rng.gen_bool(0.4) && steps.len() + 2 <= len;
        if make_mp {
            // From a proven F build the A1 instance ((F -. B) -. F), then
            // detach to get (F -. B).
            let minor = rng.gen_range(0..steps.len());
            let f = steps[minor].0.clone();
            let b = random_formula(rng, 3, 2);
            let subst: BTreeMap<Letter, Formula> =
                [(Letter::Alpha, f.clone()), (Letter::Beta, b.clone())]
                    .into_iter()
                    .collect();
            let inst = instantiate_schema(SchemaId::A1, &subst).expect("letters bound");
            steps.push((
                inst,
                Justification::Axiom { schema: SchemaId::A1, subst: Some(subst) },
            ));
            let implication = steps.len() - 1;
            steps.push((
                Formula::monus(f, b),
                Justification::Mp { implication, minor },
            ));
        } else {
            let schema = SchemaId::ALL[rng.gen_range(0..SchemaId::ALL.len())];
            let mut subst = BTreeMap::new();
            for letter in [Letter::Alpha, Letter::Beta, Letter::Gamma] {
                subst.insert(letter, random_formula(rng, 3, 2));
            }
            let inst = instantiate_schema(schema, &subst).expect("letters bound");
            steps.push((
                inst,
                Justification::Axiom { schema, subst: Some(subst) },
            ));
        }
    }
    Proof { steps }
}

/// Corrupts one step of a proof so that the step's own justification no
/// longer matches; returns the mutated proof and the corrupted index.
pub fn corrupt_step(proof: &Proof, rng: &mut impl Rng) -> (Proof, usize) {
    let mut mutated = proof.clone();
    let idx = rng.gen_range(0..mutated.steps.len());
    let old = mutated.steps[idx].0.clone();
    mutated.steps[idx].0 = Formula::monus(old.clone(), old);
    (mutated, idx)
}

/// Errors from the line-oriented proof file format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Parses the line-oriented proof format:
///
/// ```text
/// hyp 0: (P1 -. P2)
/// hyp 1: P2
/// 1. (P1 -. P2) ; hyp 0
/// 2. P2 ; hyp 1
/// 3. P1 ; mp 1 2
/// ```
///
/// Axiom steps name the schema and the letter bindings, e.g.
/// `4. ((P1 -. P2) -. P1) ; axiom A1 a=P1 b=P2`; the bindings may be
/// omitted, in which case the checker infers them. Blank lines and lines
/// starting with `#` are ignored. Step numbers must run 1, 2, 3, ...
pub fn parse_proof_file(text: &str) -> Result<(Vec<Formula>, Proof), ProofFileError> {
    let mut hypotheses: Vec<Formula> = Vec::new();
    let mut steps: Vec<(Formula, Justification)> = Vec::new();
    let err = |line: usize, message: &str| ProofFileError::Syntax {
        line,
        message: message.to_string(),
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("hyp") {
            if !steps.is_empty() {
                return Err(err(line, "hypotheses must precede the steps"));
            }
            let (idx_text, formula_text) = rest
                .split_once(':')
                .ok_or_else(|| err(line, "expected \"hyp <m>: <formula>\""))?;
            let m: usize = idx_text
                .trim()
                .parse()
                .map_err(|_| err(line, "bad hypothesis index"))?;
            if m != hypotheses.len() {
                return Err(err(line, "hypothesis indices must run 0, 1, 2, ..."));
            }
            let f = parse_formula(formula_text)
                .map_err(|e| err(line, &e.to_string()))?;
            hypotheses.push(f);
            continue;
        }
        // "<n>. <formula> ; <justification>"
        let (num_text, rest) = trimmed
            .split_once('.')
            .ok_or_else(|| err(line, "expected \"<n>. <formula> ; <justification>\""))?;
        let n: usize = num_text
            .trim()
            .parse()
            .map_err(|_| err(line, "bad step number"))?;
        if n != steps.len() + 1 {
            return Err(err(line, "step numbers must run 1, 2, 3, ..."));
        }
        let (formula_text, just_text) = rest
            .split_once(';')
            .ok_or_else(|| err(line, "missing \";\" before the justification"))?;
        let f = parse_formula(formula_text).map_err(|e| err(line, &e.to_string()))?;
        let just = parse_justification(just_text, line)?;
        steps.push((f, just));
    }
    Ok((hypotheses, Proof { steps }))
}

fn parse_justification(text: &str, line: usize) -> Result<Justification, ProofFileError> {
    let err = |message: &str| ProofFileError::Syntax { line, message: message.to_string() };
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("hyp") {
        let m: usize = rest.trim().parse().map_err(|_| err("bad hypothesis index"))?;
        return Ok(Justification::Hypothesis(m));
    }
    if let Some(rest) = t.strip_prefix("mp") {
        let mut parts = rest.split_whitespace();
        let j: usize = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| err("expected \"mp <j> <k>\""))?;
        let k: usize = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| err("expected \"mp <j> <k>\""))?;
        if parts.next().is_some() {
            return Err(err("trailing input after \"mp <j> <k>\""));
        }
        if j == 0 || k == 0 {
            return Err(err("mp step numbers are 1-based"));
        }
        return Ok(Justification::Mp { implication: j - 1, minor: k - 1 });
    }
    if let Some(rest) = t.strip_prefix("axiom") {
        let mut c = Cursor::new(rest);
        c.expect("A").map_err(|_| err("expected \"axiom A<k>\""))?;
        let k = c.nat().map_err(|_| err("expected \"axiom A<k>\""))?;
        let schema = match k {
            1 => SchemaId::A1,
            2 => SchemaId::A2,
            3 => SchemaId::A3,
            4 => SchemaId::A4,
            5 => SchemaId::A5,
            6 => SchemaId::A6,
            _ => return Err(err("schemata are A1..A6")),
        };
        let mut subst: BTreeMap<Letter, Formula> = BTreeMap::new();
        loop {
            c.skip_ws();
            let letter = match c.peek() {
                None => break,
                Some('a') => Letter::Alpha,
                Some('b') => Letter::Beta,
                Some('c') => Letter::Gamma,
                Some(_) => return Err(err("expected a letter binding \"a=\", \"b=\" or \"c=\"")),
            };
            c.bump();
            c.expect("=").map_err(|e| err(&e.to_string()))?;
            let f = formula(&mut c).map_err(|e| err(&e.to_string()))?;
            subst.insert(letter, f);
        }
        let subst = if subst.is_empty() { None } else { Some(subst) };
        return Ok(Justification::Axiom { schema, subst });
    }
    Err(err("unknown justification; expected \"axiom\", \"hyp\" or \"mp\""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    fn pf(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn ud(s: &str) -> UnitDyadic {
        s.parse().unwrap()
    }

    #[test]
    fn parses_the_grammar() {
        assert_eq!(pf("(P1 -. P2)"), Formula::monus(Formula::Prop(1), Formula::Prop(2)));
        assert_eq!(pf("%P1"), Formula::half(Formula::Prop(1)));
        // no constant symbol in the language
        assert!(parse_formula("!%0").is_err());
        assert!(parse_formula("P0").is_err());
    }

    #[test]
    fn evaluates_connectives() {
        let mut v = Valuation::new();
        v.insert(1, ud("3/4"));
        v.insert(2, ud("1/4"));
        assert_eq!(eval_formula(&pf("(P1 -. P2)"), &v).unwrap(), ud("1/2"));
        let mut v = Valuation::new();
        v.insert(1, ud("1/2"));
        assert_eq!(eval_formula(&pf("%P1"), &v).unwrap(), ud("1/4"));
        // A5 instance at 3/4
        let mut v = Valuation::new();
        v.insert(1, ud("3/4"));
        assert_eq!(
            eval_formula(&pf("(%P1 -. (P1 -. %P1))"), &v).unwrap(),
            ud("0")
        );
        assert_eq!(
            eval_formula(&pf("P9"), &Valuation::new()),
            Err(CplError::UnboundProposition(9))
        );
    }

    #[test]
    fn instantiates_schemata() {
        let mut s = BTreeMap::new();
        s.insert(Letter::Alpha, pf("P1"));
        s.insert(Letter::Beta, pf("P2"));
        assert_eq!(
            instantiate_schema(SchemaId::A1, &s).unwrap(),
            pf("((P1 -. P2) -. P1)")
        );
        let mut s = BTreeMap::new();
        s.insert(Letter::Alpha, pf("P1"));
        s.insert(Letter::Beta, pf("P1"));
        assert_eq!(
            instantiate_schema(SchemaId::A4, &s).unwrap(),
            pf("((P1 -. P1) -. (!P1 -. !P1))")
        );
        let mut s = BTreeMap::new();
        s.insert(Letter::Alpha, pf("%P1"));
        assert_eq!(
            instantiate_schema(SchemaId::A6, &s).unwrap(),
            pf("((%P1 -. %%P1) -. %%P1)")
        );
        assert_eq!(
            instantiate_schema(SchemaId::A2, &s),
            Err(CplError::MissingLetter(Letter::Beta))
        );
    }

    #[test]
    fn matcher_inverts_instantiation() {
        let mut rng = sampling::rng(23);
        for _ in 0..200 {
            let schema = SchemaId::ALL[rng.gen_range(0..6)];
            let mut subst = BTreeMap::new();
            for l in [Letter::Alpha, Letter::Beta, Letter::Gamma] {
                subst.insert(l, random_formula(&mut rng, 3, 3));
            }
            let inst = instantiate_schema(schema, &subst).unwrap();
            let found = match_schema(schema, &inst).expect("instance must match");
            assert_eq!(instantiate_schema(schema, &found).unwrap(), inst);
        }
        assert!(match_schema(SchemaId::A1, &pf("P1")).is_none());
    }

    #[test]
    fn substitution_is_outermost_first() {
        let out = substitute(
            &pf("(P3 -. P4)"),
            &[(pf("P3"), pf("%P1")), (pf("P4"), pf("%P2"))],
        );
        assert_eq!(out, pf("(%P1 -. %P2)"));
        assert_eq!(substitute(&pf("(P1 -. P2)"), &[]), pf("(P1 -. P2)"));
        let out = substitute(
            &pf("%P1"),
            &[(pf("%P1"), pf("P2")), (pf("P1"), pf("P3"))],
        );
        assert_eq!(out, pf("P2"));
    }

    #[test]
    fn checks_simple_proofs() {
        // hypothesis + detachment
        let hyps = vec![pf("(P1 -. P2)"), pf("P2")];
        let proof = Proof {
            steps: vec![
                (pf("(P1 -. P2)"), Justification::Hypothesis(0)),
                (pf("P2"), Justification::Hypothesis(1)),
                (pf("P1"), Justification::Mp { implication: 0, minor: 1 }),
            ],
        };
        assert!(check_proof(&proof, &hyps).is_accepted());

        // single axiom instance
        let mut subst = BTreeMap::new();
        subst.insert(Letter::Alpha, pf("P1"));
        subst.insert(Letter::Beta, pf("P2"));
        let inst = instantiate_schema(SchemaId::A1, &subst).unwrap();
        let proof = Proof {
            steps: vec![(
                inst,
                Justification::Axiom { schema: SchemaId::A1, subst: Some(subst) },
            )],
        };
        assert!(check_proof(&proof, &[]).is_accepted());

        // mp citing a step with the wrong shape
        let proof = Proof {
            steps: vec![
                (pf("(P1 -. P2)"), Justification::Hypothesis(0)),
                (pf("P2"), Justification::Hypothesis(1)),
                (pf("P3"), Justification::Mp { implication: 0, minor: 1 }),
            ],
        };
        match check_proof(&proof, &hyps) {
            ProofOutcome::Rejected { step, reason } => {
                assert_eq!(step, 2);
                assert!(reason.contains("mp shape mismatch"));
            }
            ProofOutcome::Accepted => panic!("must reject"),
        }
    }

    #[test]
    fn bridges_formulas_to_terms() {
        use crate::term::parse_cont_term;
        assert_eq!(
            to_cont_term(&pf("(P1 -. P2)")),
            parse_cont_term("(x1 + !x2)").unwrap()
        );
        assert_eq!(to_cont_term(&pf("%P1")), parse_cont_term("#x1").unwrap());
        assert_eq!(to_cont_term(&pf("!P1")), parse_cont_term("!x1").unwrap());
    }

    #[test]
    fn decides_tautologies() {
        assert!(decide_taut(&pf("(P1 -. P1)")).unwrap().is_valid());
        // any A2 instance; the normalized term repeats both sides, so give
        // the region budget headroom
        let mut s = BTreeMap::new();
        s.insert(Letter::Alpha, pf("%P1"));
        s.insert(Letter::Beta, pf("(P2 -. P1)"));
        s.insert(Letter::Gamma, pf("!P3"));
        let inst = instantiate_schema(SchemaId::A2, &s).unwrap();
        let opts = DecideOptions { budget: 64, ..DecideOptions::default() };
        assert!(decide_taut_with(&inst, opts).unwrap().is_valid());
        // P1 alone is refuted by v(P1) = 1
        match decide_taut(&pf("P1")).unwrap() {
            TautVerdict::CounterExample { valuation, value } => {
                assert_eq!(valuation[&1], Rational::from_integer(1.into()));
                assert_eq!(value, Rational::from_integer(1.into()));
            }
            TautVerdict::Valid => panic!("P1 is not a tautology"),
        }
    }

    #[test]
    fn taut_counterexamples_reevaluate() {
        // every counter-valuation must reproduce a nonzero value exactly
        let f = pf("(%P1 -. P2)");
        match decide_taut(&f).unwrap() {
            TautVerdict::CounterExample { valuation, value } => {
                assert!(!value.is_integer() || value != Rational::from_integer(0.into()));
                // re-evaluate through the rational bridge: v(f) = 1 - t(1 - v)
                let assignment: BTreeMap<u32, Rational> = valuation
                    .iter()
                    .map(|(i, v)| (*i, Rational::from_integer(1.into()) - v))
                    .collect();
                let tv = crate::decide::eval_cont_term_rational(
                    &to_cont_term(&f),
                    &assignment,
                )
                .unwrap();
                assert_eq!(Rational::from_integer(1.into()) - tv, value);
            }
            TautVerdict::Valid => panic!("refutable"),
        }
    }

    #[test]
    fn equivalence_examples() {
        assert!(lindenbaum_equiv(&pf("P1"), &pf("!!P1")).unwrap());
        assert!(!lindenbaum_equiv(&pf("P1"), &pf("P2")).unwrap());
        assert!(lindenbaum_equiv(&pf("(P1 -. P1)"), &pf("(P2 -. P2)")).unwrap());
    }

    #[test]
    fn generated_proofs_check_and_corruptions_fail() {
        let mut rng = sampling::rng(31);
        for _ in 0..20 {
            let proof = random_proof(&mut rng, 6);
            assert!(check_proof(&proof, &[]).is_accepted());
            let (bad, idx) = corrupt_step(&proof, &mut rng);
            match check_proof(&bad, &[]) {
                ProofOutcome::Rejected { step, .. } => assert_eq!(step, idx),
                ProofOutcome::Accepted => panic!("corruption must be caught"),
            }
        }
    }

    #[test]
    fn proof_file_round_trip() {
        let text = "\
# detachment example
hyp 0: (P1 -. P2)
hyp 1: P2

1. (P1 -. P2) ; hyp 0
2. P2 ; hyp 1
3. P1 ; mp 1 2
4. ((P1 -. P2) -. P1) ; axiom A1 a=P1 b=P2
";
        let (hyps, proof) = parse_proof_file(text).unwrap();
        assert_eq!(hyps.len(), 2);
        assert_eq!(proof.steps.len(), 4);
        assert!(check_proof(&proof, &hyps).is_accepted());

        assert!(parse_proof_file("2. P1 ; hyp 0").is_err());
        assert!(parse_proof_file("1. P1 ; because").is_err());
    }
}
