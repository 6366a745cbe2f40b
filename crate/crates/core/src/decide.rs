//! Exact decision of equational validity over the standard algebra, with
//! counterexample extraction.
//!
//! Every equation `s = t` is routed through the distance term
//! `(!(!s + t) + !(!t + s))`, which is identically zero exactly when the
//! equation is valid. The distance term is a piecewise affine function of
//! its variables: each plus node either truncates or not, so splitting on
//! those cases cuts the unit box into polytopes on which the term is a
//! single affine form. The kernel enumerates the feasible cases (identical
//! subterms share one case split, and infeasible prefixes are pruned with an
//! exact LP), then maximizes and minimizes the affine value over each
//! region. Validity over the reals and over the dyadics coincide here, and
//! an independent dyadic grid oracle cross-checks refutations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::lp;
use crate::term::ContTerm;

/// An affine function `constant + sum coeff_i * x_i` with exact rational
/// data; absent indices have coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    constant: Rational,
    coeffs: BTreeMap<u32, Rational>,
}

impl AffineForm {
    pub fn constant(c: Rational) -> Self {
        AffineForm { constant: c, coeffs: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(i: u32) -> Self {
        AffineForm {
            constant: Rational::zero(),
            coeffs: [(i, Rational::one())].into_iter().collect(),
        }
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn coeff(&self, i: u32) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn variables(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (i, c) in &other.coeffs {
            let e = out.coeffs.entry(*i).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.coeffs.remove(i);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        AffineForm {
            constant: -&self.constant,
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn halve(&self) -> Self {
        let two = Rational::from_integer(2.into());
        AffineForm {
            constant: &self.constant / &two,
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, c / &two)).collect(),
        }
    }

    pub fn eval(&self, point: &BTreeMap<u32, Rational>) -> Rational {
        let mut acc = self.constant.clone();
        for (i, c) in &self.coeffs {
            if let Some(v) = point.get(i) {
                acc += c * v;
            }
        }
        acc
    }

    /// Upper bound of the form over the unit box; used as a cheap
    /// infeasibility filter before the exact LP runs.
    fn max_over_unit_box(&self) -> Rational {
        let mut acc = self.constant.clone();
        for c in self.coeffs.values() {
            if c.is_positive() {
                acc += c;
            }
        }
        acc
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (i, c) in &self.coeffs {
            write!(f, " + {c}*x{i}")?;
        }
        Ok(())
    }
}

/// Truncation state of one plus node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    Untruncated,
    Truncated,
}

/// One affine piece of a term: the case choice per (structurally distinct)
/// plus subterm, the defining inequalities (`form >= 0`, unit-box bounds
/// included), and the term's value on the piece.
#[derive(Clone, Debug)]
pub struct FlagRegion {
    pub flags: BTreeMap<usize, Flag>,
    pub constraints: Vec<AffineForm>,
    pub value: AffineForm,
}

impl FlagRegion {
    /// Whether a point satisfies every constraint.
    pub fn contains(&self, point: &BTreeMap<u32, Rational>) -> bool {
        self.constraints.iter().all(|c| !c.eval(point).is_negative())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error("term has {0} plus nodes, over the region budget")]
    BudgetExceeded(usize),
    #[error("grid of {0} points exceeds the cap")]
    CapExceeded(u128),
    #[error("variable x{0} is unbound")]
    UnboundVariable(u32),
}

/// A decision outcome: valid, or an exact witness. Witness values are the
/// two sides of the original equation re-evaluated at the assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    CounterExample(CounterExample),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterExample {
    pub assignment: BTreeMap<u32, Rational>,
    pub lhs_value: Rational,
    pub rhs_value: Rational,
}

impl fmt::Display for CounterExample {
    /// `x1=1/2 x2=0 → lhs=1 rhs=1/2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in &self.assignment {
            write!(f, "x{i}={v} ")?;
        }
        write!(f, "→ lhs={} rhs={}", self.lhs_value, self.rhs_value)
    }
}

/// Options for the decision kernel.
#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// Maximum number of plus nodes in the normalized term.
    pub budget: usize,
    /// Maximum number of grid points the oracle may visit.
    pub grid_cap: u128,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { budget: 16, grid_cap: 5_000_000 }
    }
}

/// The distance term `(!(!lhs + rhs) + !(!rhs + lhs))`; the equation
/// `lhs = rhs` is valid iff this term is identically zero.
pub fn normalize_equation(lhs: &ContTerm, rhs: &ContTerm) -> ContTerm {
    ContTerm::plus(
        ContTerm::neg(ContTerm::plus(ContTerm::neg(lhs.clone()), rhs.clone())),
        ContTerm::neg(ContTerm::plus(ContTerm::neg(rhs.clone()), lhs.clone())),
    )
}

/// Direct evaluation of a term over the rationals; the independent path used
/// to re-check every counterexample the region kernel produces.
pub fn eval_cont_term_rational(
    t: &ContTerm,
    assignment: &BTreeMap<u32, Rational>,
) -> Result<Rational, DecideError> {
    Ok(match t {
        ContTerm::Zero => Rational::zero(),
        ContTerm::Var(i) => assignment
            .get(i)
            .ok_or(DecideError::UnboundVariable(*i))?
            .clone(),
        ContTerm::Plus(l, r) => {
            let s = eval_cont_term_rational(l, assignment)?
                + eval_cont_term_rational(r, assignment)?;
            if s > Rational::one() {
                Rational::one()
            } else {
                s
            }
        }
        ContTerm::Neg(c) => Rational::one() - eval_cont_term_rational(c, assignment)?,
        ContTerm::Kappa(c) => {
            (eval_cont_term_rational(c, assignment)? + Rational::one())
                / Rational::from_integer(2.into())
        }
    })
}

// Arena of structurally distinct subterms; children precede parents.
#[derive(Clone, PartialEq, Eq, Hash)]
enum NodeKind {
    Zero,
    Var(u32),
    Plus(usize, usize),
    Neg(usize),
    Kappa(usize),
}

struct Arena {
    nodes: Vec<NodeKind>,
    memo: HashMap<NodeKind, usize>,
    root: usize,
}

impl Arena {
    fn build(t: &ContTerm) -> Arena {
        let mut arena = Arena { nodes: Vec::new(), memo: HashMap::new(), root: 0 };
        arena.root = arena.intern(t);
        arena
    }

    fn intern(&mut self, t: &ContTerm) -> usize {
        let kind = match t {
            ContTerm::Zero => NodeKind::Zero,
            ContTerm::Var(i) => NodeKind::Var(*i),
            ContTerm::Plus(l, r) => {
                let li = self.intern(l);
                let ri = self.intern(r);
                NodeKind::Plus(li, ri)
            }
            ContTerm::Neg(c) => {
                let ci = self.intern(c);
                NodeKind::Neg(ci)
            }
            ContTerm::Kappa(c) => {
                let ci = self.intern(c);
                NodeKind::Kappa(ci)
            }
        };
        if let Some(&id) = self.memo.get(&kind) {
            return id;
        }
        self.nodes.push(kind.clone());
        let id = self.nodes.len() - 1;
        self.memo.insert(kind, id);
        id
    }
}

/// Splits a term into its affine pieces. Structurally identical plus
/// subterms always truncate together, so they share one flag; flag
/// assignments whose constraints are already infeasible are pruned during
/// the search, which keeps the enumeration near the true number of pieces
/// rather than `2^(plus nodes)`.
pub fn compile_regions(t: &ContTerm, budget: usize) -> Result<Vec<FlagRegion>, DecideError> {
    let plus_nodes = t.plus_count();
    if plus_nodes > budget {
        return Err(DecideError::BudgetExceeded(plus_nodes));
    }
    let arena = Arena::build(t);
    let bounds: Vec<AffineForm> = t
        .variables()
        .into_iter()
        .flat_map(|i| {
            [
                AffineForm::var(i),                          // x_i >= 0
                AffineForm::one().sub(&AffineForm::var(i)),  // 1 - x_i >= 0
            ]
        })
        .collect();
    let plus_ids: Vec<usize> = (0..arena.nodes.len())
        .filter(|&i| matches!(arena.nodes[i], NodeKind::Plus(_, _)))
        .collect();

    let mut regions = Vec::new();
    let mut vals: Vec<Option<AffineForm>> = vec![None; arena.nodes.len()];
    let mut constraints = bounds.clone();
    let mut flags = BTreeMap::new();
    fill_values(&arena, &mut vals, &flags);
    split(
        &arena,
        &plus_ids,
        0,
        &mut vals,
        &mut constraints,
        &mut flags,
        &mut regions,
    );
    Ok(regions)
}

/// Computes affine values for every node whose plus descendants are all
/// flagged.
fn fill_values(arena: &Arena, vals: &mut [Option<AffineForm>], flags: &BTreeMap<usize, Flag>) {
    for id in 0..arena.nodes.len() {
        if vals[id].is_some() {
            continue;
        }
        vals[id] = match &arena.nodes[id] {
            NodeKind::Zero => Some(AffineForm::zero()),
            NodeKind::Var(i) => Some(AffineForm::var(*i)),
            NodeKind::Plus(l, r) => match (flags.get(&id), &vals[*l], &vals[*r]) {
                (Some(Flag::Untruncated), Some(lv), Some(rv)) => Some(lv.add(rv)),
                (Some(Flag::Truncated), Some(_), Some(_)) => Some(AffineForm::one()),
                _ => None,
            },
            NodeKind::Neg(c) => vals[*c].as_ref().map(|v| AffineForm::one().sub(v)),
            NodeKind::Kappa(c) => {
                vals[*c].as_ref().map(|v| v.add(&AffineForm::one()).halve())
            }
        };
    }
}

fn split(
    arena: &Arena,
    plus_ids: &[usize],
    next: usize,
    vals: &mut Vec<Option<AffineForm>>,
    constraints: &mut Vec<AffineForm>,
    flags: &mut BTreeMap<usize, Flag>,
    regions: &mut Vec<FlagRegion>,
) {
    if next == plus_ids.len() {
        regions.push(FlagRegion {
            flags: flags.clone(),
            constraints: constraints.clone(),
            value: vals[arena.root].clone().expect("all plus nodes flagged"),
        });
        return;
    }
    let id = plus_ids[next];
    let NodeKind::Plus(l, r) = arena.nodes[id] else { unreachable!() };
    let sum = {
        let lv = vals[l].as_ref().expect("children precede parents");
        let rv = vals[r].as_ref().expect("children precede parents");
        lv.add(rv)
    };
    for flag in [Flag::Untruncated, Flag::Truncated] {
        // Untruncated: 1 - (l + r) >= 0; truncated: (l + r) - 1 >= 0.
        let constraint = match flag {
            Flag::Untruncated => AffineForm::one().sub(&sum),
            Flag::Truncated => sum.sub(&AffineForm::one()),
        };
        if constraint.max_over_unit_box().is_negative() {
            continue;
        }
        constraints.push(constraint);
        if feasible(constraints) {
            let saved_vals = vals.clone();
            flags.insert(id, flag);
            fill_values(arena, vals, flags);
            split(arena, plus_ids, next + 1, vals, constraints, flags, regions);
            flags.remove(&id);
            *vals = saved_vals;
        }
        constraints.pop();
    }
}

/// Direction of optimization for [`lp_solve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

/// Result of an exact linear program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Optimum { value: Rational, point: BTreeMap<u32, Rational> },
}

/// Optimizes an affine objective subject to `constraints[i] >= 0`, exactly.
/// Every variable must be bounded (the region compiler always includes the
/// unit-box rows); the optimum is attained at a vertex and the returned
/// point satisfies every constraint exactly.
pub fn lp_solve(
    constraints: &[AffineForm],
    objective: &AffineForm,
    direction: Direction,
) -> LpResult {
    let mut vars: Vec<u32> = constraints
        .iter()
        .flat_map(|c| c.variables().collect::<Vec<_>>())
        .chain(objective.variables())
        .collect();
    vars.sort_unstable();
    vars.dedup();
    let col = |i: u32| vars.binary_search(&i).expect("collected above");

    // c0 + a.x >= 0 becomes (-a).x <= c0 over nonnegative variables.
    let rows: Vec<lp::Row> = constraints
        .iter()
        .map(|c| {
            let mut coeffs = vec![Rational::zero(); vars.len()];
            for v in c.variables() {
                coeffs[col(v)] = -c.coeff(v);
            }
            lp::Row { coeffs, rhs: c.constant_part().clone() }
        })
        .collect();
    let mut obj = vec![Rational::zero(); vars.len()];
    for v in objective.variables() {
        obj[col(v)] = match direction {
            Direction::Max => objective.coeff(v),
            Direction::Min => -objective.coeff(v),
        };
    }
    match lp::maximize(vars.len(), &rows, &obj) {
        lp::Outcome::Infeasible => LpResult::Infeasible,
        lp::Outcome::Optimum(p) => {
            let point: BTreeMap<u32, Rational> =
                vars.iter().copied().zip(p).collect();
            let value = objective.eval(&point);
            LpResult::Optimum { value, point }
        }
    }
}

fn feasible(constraints: &[AffineForm]) -> bool {
    !matches!(
        lp_solve(constraints, &AffineForm::zero(), Direction::Max),
        LpResult::Infeasible
    )
}

/// Decides `lhs = rhs` over the standard algebra. Sound and complete for
/// real-valued assignments: the distance term's pieces are polytopes, its
/// extrema sit at vertices, and all arithmetic is exact. The verdict is
/// `Valid` iff on every feasible region both the maximum and the minimum of
/// the region value are zero; otherwise the witness comes from the
/// deterministically first violating region's maximizing vertex.
pub fn decide_equation(lhs: &ContTerm, rhs: &ContTerm) -> Result<Verdict, DecideError> {
    decide_equation_with(lhs, rhs, DecideOptions::default())
}

pub fn decide_equation_with(
    lhs: &ContTerm,
    rhs: &ContTerm,
    opts: DecideOptions,
) -> Result<Verdict, DecideError> {
    let d = normalize_equation(lhs, rhs);
    let vars = d.variables();
    if vars.is_empty() {
        // Constant equation: compare exactly, no LP involved.
        let empty = BTreeMap::new();
        let dv = eval_cont_term_rational(&d, &empty)?;
        if dv.is_zero() {
            return Ok(Verdict::Valid);
        }
        return Ok(Verdict::CounterExample(witness(lhs, rhs, empty)?));
    }
    let regions = compile_regions(&d, opts.budget)?;
    for region in &regions {
        let max = lp_solve(&region.constraints, &region.value, Direction::Max);
        let LpResult::Optimum { value: vmax, point } = max else {
            // Pruned during compilation; regions here are feasible.
            continue;
        };
        if vmax.is_positive() {
            return Ok(Verdict::CounterExample(witness(lhs, rhs, point)?));
        }
        debug_assert!(!vmax.is_negative(), "distance term went negative");
        let min = lp_solve(&region.constraints, &region.value, Direction::Min);
        if let LpResult::Optimum { value: vmin, .. } = min {
            debug_assert!(vmin.is_zero(), "min of a nonnegative piece with max 0");
        }
    }
    Ok(Verdict::Valid)
}

fn witness(
    lhs: &ContTerm,
    rhs: &ContTerm,
    assignment: BTreeMap<u32, Rational>,
) -> Result<CounterExample, DecideError> {
    let lhs_value = eval_cont_term_rational(lhs, &assignment)?;
    let rhs_value = eval_cont_term_rational(rhs, &assignment)?;
    debug_assert_ne!(lhs_value, rhs_value, "witness must separate the sides");
    Ok(CounterExample { assignment, lhs_value, rhs_value })
}

// Fixed-width dyadic used by the grid oracle: value = num / 2^exp with
// 0 <= num <= 2^exp. Exponents stay small because they grow only at kappa
// nodes; on overflow the oracle falls back to exact rational evaluation.
#[derive(Clone, Copy)]
struct SmallDy {
    num: i128,
    exp: u32,
}

impl SmallDy {
    const MAX_EXP: u32 = 100;

    fn eval(t: &ContTerm, point: &[(u32, SmallDy)]) -> Option<SmallDy> {
        Some(match t {
            ContTerm::Zero => SmallDy { num: 0, exp: 0 },
            ContTerm::Var(i) => point.iter().find(|(v, _)| v == i)?.1,
            ContTerm::Plus(l, r) => {
                let a = Self::eval(l, point)?;
                let b = Self::eval(r, point)?;
                let exp = a.exp.max(b.exp);
                if exp >= Self::MAX_EXP {
                    return None;
                }
                let num =
                    (a.num << (exp - a.exp)) + (b.num << (exp - b.exp));
                let unit = 1i128 << exp;
                SmallDy { num: num.min(unit), exp }
            }
            ContTerm::Neg(c) => {
                let a = Self::eval(c, point)?;
                SmallDy { num: (1i128 << a.exp) - a.num, exp: a.exp }
            }
            ContTerm::Kappa(c) => {
                let a = Self::eval(c, point)?;
                if a.exp + 1 >= Self::MAX_EXP {
                    return None;
                }
                SmallDy { num: a.num + (1i128 << a.exp), exp: a.exp + 1 }
            }
        })
    }

    fn to_rational(self) -> Rational {
        Rational::new(self.num.into(), num_bigint::BigInt::one() << self.exp as usize)
    }

    fn eq(self, other: SmallDy) -> bool {
        let exp = self.exp.max(other.exp);
        (self.num << (exp - self.exp)) == (other.num << (exp - other.exp))
    }
}

/// Independent refutation oracle: evaluates both sides exactly at every
/// dyadic grid point with denominator `2^k` and returns the first
/// (lexicographically smallest) violating assignment. Sound for refutation,
/// incomplete for validity.
pub fn grid_search(
    lhs: &ContTerm,
    rhs: &ContTerm,
    k: u32,
    cap: u128,
) -> Result<Option<CounterExample>, DecideError> {
    let mut vars: Vec<u32> = lhs.variables();
    for v in rhs.variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort_unstable();
    let steps = 1u128 << k;
    let points = (steps + 1)
        .checked_pow(vars.len() as u32)
        .ok_or(DecideError::CapExceeded(u128::MAX))?;
    if points > cap {
        return Err(DecideError::CapExceeded(points));
    }
    let mut digits = vec![0u64; vars.len()];
    loop {
        let point: Vec<(u32, SmallDy)> = vars
            .iter()
            .zip(&digits)
            .map(|(&v, &d)| (v, SmallDy { num: d as i128, exp: k }))
            .collect();
        let violation = match (SmallDy::eval(lhs, &point), SmallDy::eval(rhs, &point)) {
            (Some(a), Some(b)) => {
                if a.eq(b) {
                    None
                } else {
                    Some((a.to_rational(), b.to_rational()))
                }
            }
            _ => {
                // Exponent overflow: fall back to exact rationals.
                let assignment: BTreeMap<u32, Rational> = point
                    .iter()
                    .map(|(v, d)| (*v, d.to_rational()))
                    .collect();
                let a = eval_cont_term_rational(lhs, &assignment)?;
                let b = eval_cont_term_rational(rhs, &assignment)?;
                if a == b {
                    None
                } else {
                    Some((a, b))
                }
            }
        };
        if let Some((lhs_value, rhs_value)) = violation {
            let assignment = point.iter().map(|(v, d)| (*v, d.to_rational())).collect();
            return Ok(Some(CounterExample { assignment, lhs_value, rhs_value }));
        }
        // Advance the odometer with the LAST variable fastest so that the
        // first hit is lexicographically smallest in (x_1, x_2, ...).
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] <= steps as u64 {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_cont_term;

    fn ct(s: &str) -> ContTerm {
        parse_cont_term(s).unwrap()
    }

    fn q(s: &str) -> Rational {
        crate::arith::parse_rational(s).unwrap()
    }

    #[test]
    fn normalization_builds_the_distance_term() {
        let d = normalize_equation(&ct("x1"), &ct("0"));
        // d(x, 0) = x on [0, 1]
        for v in ["0", "1/4", "1/2", "1"] {
            let mut p = BTreeMap::new();
            p.insert(1, q(v));
            assert_eq!(eval_cont_term_rational(&d, &p).unwrap(), q(v));
        }
        // d(t, t) = 0 at sampled points
        let t = ct("#(x1 + !x2)");
        let d = normalize_equation(&t, &t);
        let mut p = BTreeMap::new();
        p.insert(1, q("1/3"));
        p.insert(2, q("5/7"));
        assert!(eval_cont_term_rational(&d, &p).unwrap().is_zero());
        // syntactically identical sides
        let d = normalize_equation(&ct("#0"), &parse_cont_term("#0").unwrap());
        let ContTerm::Plus(l, r) = &d else { panic!() };
        let (ContTerm::Neg(li), ContTerm::Neg(ri)) = (l.as_ref(), r.as_ref()) else {
            panic!()
        };
        assert_eq!(li, ri);
    }

    #[test]
    fn region_compilation_cases() {
        let rs = compile_regions(&ct("(x1 + x2)"), 16).unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[0].value, AffineForm::var(1).add(&AffineForm::var(2)));
        assert_eq!(rs[1].value, AffineForm::one());

        let rs = compile_regions(&ct("#x1"), 16).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].value, AffineForm::var(1).add(&AffineForm::one()).halve());

        let rs = compile_regions(&ct("!0"), 16).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].value, AffineForm::one());

        assert!(matches!(
            compile_regions(&ct("((x1 + x1) + (x1 + x1))"), 2),
            Err(DecideError::BudgetExceeded(3))
        ));
    }

    #[test]
    fn shared_subterms_share_flags() {
        // (x1 + x1) appears twice; the split count stays small.
        let t = ct("((x1 + x1) + (x1 + x1))");
        let rs = compile_regions(&t, 16).unwrap();
        assert!(rs.len() <= 4, "got {}", rs.len());
    }

    #[test]
    fn lp_examples() {
        // max x1 st x1 <= 1/2
        let cs = vec![
            AffineForm::var(1),
            AffineForm::one().sub(&AffineForm::var(1)),
            AffineForm::constant(q("1/2")).sub(&AffineForm::var(1)),
        ];
        let r = lp_solve(&cs, &AffineForm::var(1), Direction::Max);
        let LpResult::Optimum { value, point } = r else { panic!("feasible") };
        assert_eq!(value, q("1/2"));
        assert_eq!(point[&1], q("1/2"));

        // x1 >= 3/4 and x1 <= 1/4: infeasible
        let cs = vec![
            AffineForm::var(1).sub(&AffineForm::constant(q("3/4"))),
            AffineForm::constant(q("1/4")).sub(&AffineForm::var(1)),
            AffineForm::var(1),
            AffineForm::one().sub(&AffineForm::var(1)),
        ];
        assert_eq!(
            lp_solve(&cs, &AffineForm::var(1), Direction::Max),
            LpResult::Infeasible
        );

        // max x1 + x2 over the triangle
        let cs = vec![
            AffineForm::var(1),
            AffineForm::var(2),
            AffineForm::one().sub(&AffineForm::var(1)),
            AffineForm::one().sub(&AffineForm::var(2)),
            AffineForm::one().sub(&AffineForm::var(1).add(&AffineForm::var(2))),
        ];
        let obj = AffineForm::var(1).add(&AffineForm::var(2));
        let LpResult::Optimum { value, .. } = lp_solve(&cs, &obj, Direction::Max) else {
            panic!("feasible")
        };
        assert_eq!(value, q("1"));
    }

    #[test]
    fn decides_the_basic_laws() {
        // x + !x = !0   (property p1, stated as !(x1 + !x1) = 0)
        let v = decide_equation(&ct("!(x1 + !x1)"), &ct("0")).unwrap();
        assert!(v.is_valid());
        // C7: #x1 = (x1 + !#x1)
        let v = decide_equation(&ct("#x1"), &ct("(x1 + !#x1)")).unwrap();
        assert!(v.is_valid());
        // x1 + x1 = x1 fails at 1/2
        let v = decide_equation(&ct("(x1 + x1)"), &ct("x1")).unwrap();
        let Verdict::CounterExample(ce) = v else { panic!("invalid equation") };
        assert_eq!(ce.assignment[&1], q("1/2"));
        assert_eq!(ce.lhs_value, q("1"));
        assert_eq!(ce.rhs_value, q("1/2"));
        assert_eq!(ce.to_string(), "x1=1/2 → lhs=1 rhs=1/2");
    }

    #[test]
    fn constant_equations_bypass_the_lp() {
        assert!(decide_equation(&ct("#0"), &ct("#0")).unwrap().is_valid());
        let v = decide_equation(&ct("#0"), &ct("0")).unwrap();
        let Verdict::CounterExample(ce) = v else { panic!() };
        assert!(ce.assignment.is_empty());
        assert_eq!(ce.lhs_value, q("1/2"));
        assert_eq!(ce.rhs_value, q("0"));
    }

    #[test]
    fn grid_oracle_examples() {
        let ce = grid_search(&ct("(x1 + x1)"), &ct("x1"), 1, 1 << 20)
            .unwrap()
            .unwrap();
        assert_eq!(ce.assignment[&1], q("1/2"));
        // C8 instance: (!#x1 + #x2) + !(!x1 + x2) = !0
        let lhs = ct("((!#x1 + #x2) + !(!x1 + x2))");
        assert_eq!(grid_search(&lhs, &ct("!0"), 3, 1 << 20).unwrap(), None);
        assert_eq!(grid_search(&ct("x1"), &ct("x1"), 2, 1 << 20).unwrap(), None);
        assert!(matches!(
            grid_search(&ct("(x1 + x2)"), &ct("x3"), 20, 100),
            Err(DecideError::CapExceeded(_))
        ));
    }

    #[test]
    fn grid_returns_the_lexicographically_smallest_witness() {
        // x1 = x2 first fails at (0, 1/2) when scanning x1-major.
        let ce = grid_search(&ct("x1"), &ct("x2"), 1, 1 << 20)
            .unwrap()
            .unwrap();
        assert_eq!(ce.assignment[&1], q("0"));
        assert_eq!(ce.assignment[&2], q("1/2"));
    }

    #[test]
    fn counterexamples_reevaluate_exactly() {
        let lhs = ct("(#x1 + !x2)");
        let rhs = ct("#(x1 + x2)");
        if let Verdict::CounterExample(ce) = decide_equation(&lhs, &rhs).unwrap() {
            assert_eq!(
                eval_cont_term_rational(&lhs, &ce.assignment).unwrap(),
                ce.lhs_value
            );
            assert_eq!(
                eval_cont_term_rational(&rhs, &ce.assignment).unwrap(),
                ce.rhs_value
            );
            assert_ne!(ce.lhs_value, ce.rhs_value);
        } else {
            panic!("not a valid equation");
        }
    }
}
