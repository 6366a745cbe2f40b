//! Continuous-algebra instances and constructions.
//!
//! An algebra carries a truncated addition, an involutive negation, a
//! distinguished zero and a halving operator kappa subject to the axioms
//! C1-C8 (C1-C6 are the MV axioms, C7 pins kappa pointwise, C8 ties it to
//! the order). Available instances: the standard dyadic unit interval, the
//! dual of any instance, finite operation tables, finite products,
//! coordinate-kernel quotients of products, and unit intervals of
//! lattice-ordered groups.

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;

use crate::arith::{Dyadic, UnitDyadic};
use crate::group::{ChainChangGroup, GroupElem, GroupError, LuGroup};
use crate::sampling;

/// An element of some algebra's carrier. Which variants are meaningful
/// depends on the algebra: dyadics for the standard interval and its dual,
/// indices for finite tables, tuples for products and quotients, group
/// elements for gamma images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Dy(Dyadic),
    Idx(usize),
    Tuple(Vec<Elem>),
    Grp(GroupElem),
}

impl Elem {
    pub fn dy(d: Dyadic) -> Self {
        Elem::Dy(d)
    }

    pub fn unit(u: &UnitDyadic) -> Self {
        Elem::Dy(u.get().clone())
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Dy(d) => write!(f, "{d}"),
            Elem::Idx(i) => write!(f, "#{i}"),
            Elem::Tuple(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Elem::Grp(g) => write!(f, "{g}"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("value {0} is not in the algebra's carrier")]
    CarrierViolation(String),
    #[error("the algebra has no kappa operation")]
    MissingKappa,
    #[error("bad ideal: {0}")]
    BadIdeal(String),
    #[error("not an MV algebra: axiom {axiom} fails at {witness}")]
    InvalidMVTable { axiom: AxiomId, witness: String },
    #[error("bad operation table: {0}")]
    BadTable(String),
    #[error("operation requires a product algebra")]
    NotProduct,
    #[error("search space of {0} candidate maps exceeds the cap")]
    SearchSpaceTooLarge(u64),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The eight axioms of a continuous algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
}

impl AxiomId {
    pub const ALL: [AxiomId; 8] = [
        AxiomId::C1,
        AxiomId::C2,
        AxiomId::C3,
        AxiomId::C4,
        AxiomId::C5,
        AxiomId::C6,
        AxiomId::C7,
        AxiomId::C8,
    ];

    /// Number of quantified variables in the axiom.
    pub fn arity(self) -> usize {
        match self {
            AxiomId::C1 => 3,
            AxiomId::C2 | AxiomId::C6 | AxiomId::C8 => 2,
            AxiomId::C3 | AxiomId::C4 | AxiomId::C5 | AxiomId::C7 => 1,
        }
    }

    /// Whether the axiom mentions kappa.
    pub fn needs_kappa(self) -> bool {
        matches!(self, AxiomId::C7 | AxiomId::C8)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A finite algebra given by explicit operation tables. `plus` is row-major
/// over the element order; symmetry of `plus` (axiom C2) is checked at load.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    elements: Vec<String>,
    zero: usize,
    plus: Vec<Vec<usize>>,
    neg: Vec<usize>,
    kappa: Option<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawTable {
    elements: Vec<String>,
    zero: String,
    plus: Vec<Vec<String>>,
    neg: std::collections::BTreeMap<String, String>,
    #[serde(default)]
    kappa: Option<std::collections::BTreeMap<String, String>>,
}

impl FiniteTable {
    pub fn new(
        elements: Vec<String>,
        zero: usize,
        plus: Vec<Vec<usize>>,
        neg: Vec<usize>,
        kappa: Option<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        let n = elements.len();
        let bad = |msg: &str| Err(AlgebraError::BadTable(msg.to_string()));
        if n == 0 {
            return bad("no elements");
        }
        if zero >= n || neg.len() != n || plus.len() != n {
            return bad("tables must be total over the element list");
        }
        if plus.iter().any(|row| row.len() != n) {
            return bad("plus table is not square");
        }
        if plus.iter().flatten().any(|&v| v >= n) || neg.iter().any(|&v| v >= n) {
            return bad("table entry out of range");
        }
        if let Some(k) = &kappa {
            if k.len() != n || k.iter().any(|&v| v >= n) {
                return bad("kappa table must be total");
            }
        }
        for i in 0..n {
            for j in 0..i {
                if plus[i][j] != plus[j][i] {
                    return Err(AlgebraError::BadTable(format!(
                        "plus is not symmetric at ({}, {})",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        Ok(FiniteTable { elements, zero, plus, neg, kappa })
    }

    /// Loads the JSON format consumed by the CLI `audit` and `kappa-search`
    /// commands.
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let raw: RawTable = serde_json::from_str(text)
            .map_err(|e| AlgebraError::BadTable(e.to_string()))?;
        let idx = |name: &str| -> Result<usize, AlgebraError> {
            raw.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| AlgebraError::BadTable(format!("unknown element {name:?}")))
        };
        let zero = idx(&raw.zero)?;
        if raw.plus.len() != raw.elements.len() {
            return Err(AlgebraError::BadTable("plus table is not total".into()));
        }
        let plus = raw
            .plus
            .iter()
            .map(|row| row.iter().map(|v| idx(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let lookup = |map: &std::collections::BTreeMap<String, String>| {
            raw.elements
                .iter()
                .map(|e| {
                    map.get(e)
                        .ok_or_else(|| {
                            AlgebraError::BadTable(format!("missing entry for {e:?}"))
                        })
                        .and_then(|v| idx(v))
                })
                .collect::<Result<Vec<_>, _>>()
        };
        let neg = lookup(&raw.neg)?;
        let kappa = raw.kappa.as_ref().map(lookup).transpose()?;
        FiniteTable::new(raw.elements, zero, plus, neg, kappa)
    }

    /// The (n+1)-element chain `{0, 1/n, ..., 1}` with truncated addition,
    /// without a kappa table.
    pub fn lukasiewicz(n: u32) -> Self {
        assert!(n >= 1);
        let n = n as usize;
        let name = |i: usize| {
            if i == 0 {
                "0".to_string()
            } else if i == n {
                "1".to_string()
            } else {
                let g = gcd(i, n);
                format!("{}/{}", i / g, n / g)
            }
        };
        let elements: Vec<String> = (0..=n).map(name).collect();
        let plus = (0..=n)
            .map(|i| (0..=n).map(|j| (i + j).min(n)).collect())
            .collect();
        let neg = (0..=n).map(|i| n - i).collect();
        FiniteTable::new(elements, 0, plus, neg, None).expect("valid chain")
    }

    /// The two-element Boolean algebra `{0, 1}` with join as plus.
    pub fn boolean() -> Self {
        FiniteTable::new(
            vec!["0".into(), "1".into()],
            0,
            vec![vec![0, 1], vec![1, 1]],
            vec![1, 0],
            None,
        )
        .expect("valid table")
    }

    /// The one-element trivial algebra.
    pub fn trivial() -> Self {
        FiniteTable::new(vec!["0".into()], 0, vec![vec![0]], vec![0], None)
            .expect("valid table")
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element_name(&self, idx: usize) -> &str {
        &self.elements[idx]
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn has_kappa(&self) -> bool {
        self.kappa.is_some()
    }

    pub fn with_kappa(&self, kappa: Vec<usize>) -> Result<Self, AlgebraError> {
        FiniteTable::new(
            self.elements.clone(),
            self.zero,
            self.plus.clone(),
            self.neg.clone(),
            Some(kappa),
        )
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A continuous ideal specification.
///
/// For product algebras the ideal is a coordinate kernel: the set of tuples
/// vanishing outside `S`, where `S` is the (1-based) set of killed
/// coordinates. For finite tables the ideal is an explicit element subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    CoordinateKernel(BTreeSet<usize>),
    FiniteSubset(BTreeSet<usize>),
}

impl IdealSpec {
    pub fn kernel(coords: impl IntoIterator<Item = usize>) -> Self {
        IdealSpec::CoordinateKernel(coords.into_iter().collect())
    }

    /// Checks the ideal axioms against the algebra: contains zero, closed
    /// under plus, downward closed. Coordinate kernels satisfy them by
    /// construction; explicit subsets are checked exhaustively.
    pub fn validate(&self, alg: &Algebra) -> Result<(), AlgebraError> {
        match (self, alg) {
            (IdealSpec::CoordinateKernel(s), Algebra::Product(parts)) => {
                if s.iter().any(|&i| i == 0 || i > parts.len()) {
                    return Err(AlgebraError::BadIdeal(format!(
                        "coordinates must lie in 1..={}",
                        parts.len()
                    )));
                }
                Ok(())
            }
            (IdealSpec::CoordinateKernel(_), _) => Err(AlgebraError::NotProduct),
            (IdealSpec::FiniteSubset(s), Algebra::Finite(t)) => {
                if s.iter().any(|&i| i >= t.size()) {
                    return Err(AlgebraError::BadIdeal("element index out of range".into()));
                }
                if !s.contains(&t.zero) {
                    return Err(AlgebraError::BadIdeal("ideal must contain zero".into()));
                }
                for &x in s {
                    for &y in s {
                        if !s.contains(&t.plus[x][y]) {
                            return Err(AlgebraError::BadIdeal(format!(
                                "not closed under plus at ({}, {})",
                                t.element_name(x),
                                t.element_name(y)
                            )));
                        }
                    }
                    for y in 0..t.size() {
                        // y <= x iff neg(x) + y = 1
                        let one = t.neg[t.zero];
                        if t.plus[t.neg[y]][x] == one && !s.contains(&y) {
                            return Err(AlgebraError::BadIdeal(format!(
                                "not downward closed: {} <= {}",
                                t.element_name(y),
                                t.element_name(x)
                            )));
                        }
                    }
                }
                Ok(())
            }
            (IdealSpec::FiniteSubset(_), _) => {
                Err(AlgebraError::BadIdeal("element subsets apply to finite tables".into()))
            }
        }
    }

    /// Ideal membership.
    pub fn contains(&self, alg: &Algebra, e: &Elem) -> Result<bool, AlgebraError> {
        match (self, alg) {
            (IdealSpec::CoordinateKernel(s), Algebra::Product(parts)) => {
                let Elem::Tuple(xs) = e else {
                    return Err(AlgebraError::CarrierViolation(e.to_string()));
                };
                if xs.len() != parts.len() {
                    return Err(AlgebraError::CarrierViolation(e.to_string()));
                }
                for (i, (part, x)) in parts.iter().zip(xs).enumerate() {
                    if !s.contains(&(i + 1)) && *x != part.zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (IdealSpec::FiniteSubset(s), Algebra::Finite(_)) => {
                let Elem::Idx(i) = e else {
                    return Err(AlgebraError::CarrierViolation(e.to_string()));
                };
                Ok(s.contains(i))
            }
            _ => Err(AlgebraError::BadIdeal("ideal does not match algebra".into())),
        }
    }

    /// Whether the ideal is proper (not the whole carrier).
    fn is_proper(&self, alg: &Algebra) -> bool {
        match (self, alg) {
            (IdealSpec::CoordinateKernel(s), Algebra::Product(parts)) => s.len() < parts.len(),
            (IdealSpec::FiniteSubset(s), Algebra::Finite(t)) => s.len() < t.size(),
            _ => false,
        }
    }
}

/// A continuous-algebra instance.
#[derive(Clone, Debug)]
pub enum Algebra {
    /// Dyadic `[0, 1]` with truncated addition, `1 - x`, and `(x + 1)/2`.
    Standard,
    /// The dual of an instance: `x (*) y = !(!x + !y)`, zero `1`, halving
    /// `!k!x`.
    Dual(Box<Algebra>),
    Finite(FiniteTable),
    Product(Vec<Algebra>),
    Quotient { base: Box<Algebra>, ideal: IdealSpec },
    /// The unit interval `[id, u]` of a 2-divisible lattice group, with
    /// `x + y = u /\ (x + y)`, `!x = u - x`, `kx = x*`.
    Gamma(LuGroup),
}

impl Algebra {
    pub fn standard() -> Self {
        Algebra::Standard
    }

    /// The dual `[1, 0]` of the standard algebra.
    pub fn standard_dual() -> Self {
        Algebra::Standard.dualize()
    }

    pub fn dualize(&self) -> Self {
        Algebra::Dual(Box::new(self.clone()))
    }

    pub fn finite(table: FiniteTable) -> Self {
        Algebra::Finite(table)
    }

    pub fn product(parts: Vec<Algebra>) -> Self {
        assert!(!parts.is_empty(), "products need at least one factor");
        Algebra::Product(parts)
    }

    /// Quotient of a product by a coordinate-kernel ideal; classes are
    /// realized by the representative that zeroes the killed coordinates.
    pub fn quotient(base: Algebra, ideal: IdealSpec) -> Result<Self, AlgebraError> {
        match (&base, &ideal) {
            (Algebra::Product(_), IdealSpec::CoordinateKernel(_)) => {
                ideal.validate(&base)?;
                Ok(Algebra::Quotient { base: Box::new(base), ideal })
            }
            _ => Err(AlgebraError::BadIdeal(
                "quotients take a product algebra and a coordinate kernel".into(),
            )),
        }
    }

    pub fn gamma(group: LuGroup) -> Self {
        Algebra::Gamma(group)
    }

    pub fn zero(&self) -> Elem {
        match self {
            Algebra::Standard => Elem::Dy(Dyadic::zero()),
            Algebra::Dual(inner) => inner.one(),
            Algebra::Finite(t) => Elem::Idx(t.zero),
            Algebra::Product(parts) => Elem::Tuple(parts.iter().map(Algebra::zero).collect()),
            Algebra::Quotient { base, .. } => base.zero(),
            Algebra::Gamma(g) => Elem::Grp(g.identity()),
        }
    }

    /// The top element `!0`.
    pub fn one(&self) -> Elem {
        match self {
            Algebra::Dual(inner) => inner.zero(),
            _ => self.neg(&self.zero()).expect("zero is in the carrier"),
        }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (self, e) {
            (Algebra::Standard, Elem::Dy(d)) => {
                !d.is_negative() && *d <= Dyadic::one()
            }
            (Algebra::Dual(inner), _) => inner.contains(e),
            (Algebra::Finite(t), Elem::Idx(i)) => *i < t.size(),
            (Algebra::Product(parts), Elem::Tuple(xs)) => {
                xs.len() == parts.len()
                    && parts.iter().zip(xs).all(|(p, x)| p.contains(x))
            }
            (Algebra::Quotient { base, .. }, _) => base.contains(e),
            (Algebra::Gamma(g), Elem::Grp(x)) => g.in_interval(x),
            _ => false,
        }
    }

    fn check(&self, e: &Elem) -> Result<(), AlgebraError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(AlgebraError::CarrierViolation(e.to_string()))
        }
    }

    /// The canonical representative of an element's class; the identity on
    /// every instance except quotients, which zero the killed coordinates.
    pub fn canonical(&self, e: &Elem) -> Result<Elem, AlgebraError> {
        self.check(e)?;
        match self {
            Algebra::Quotient { base, ideal } => {
                let (Algebra::Product(parts), IdealSpec::CoordinateKernel(s)) =
                    (base.as_ref(), ideal)
                else {
                    unreachable!("validated at construction");
                };
                let Elem::Tuple(xs) = base.canonical(e)? else {
                    return Err(AlgebraError::CarrierViolation(e.to_string()));
                };
                Ok(Elem::Tuple(
                    xs.into_iter()
                        .enumerate()
                        .map(|(i, x)| {
                            if s.contains(&(i + 1)) {
                                parts[i].zero()
                            } else {
                                x
                            }
                        })
                        .collect(),
                ))
            }
            Algebra::Dual(inner) => inner.canonical(e),
            Algebra::Product(parts) => {
                let Elem::Tuple(xs) = e else {
                    return Err(AlgebraError::CarrierViolation(e.to_string()));
                };
                Ok(Elem::Tuple(
                    parts
                        .iter()
                        .zip(xs)
                        .map(|(p, x)| p.canonical(x))
                        .collect::<Result<_, _>>()?,
                ))
            }
            _ => Ok(e.clone()),
        }
    }

    pub fn oplus(&self, a: &Elem, b: &Elem) -> Result<Elem, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        self.oplus_unchecked(a, b)
    }

    fn oplus_unchecked(&self, a: &Elem, b: &Elem) -> Result<Elem, AlgebraError> {
        match (self, a, b) {
            (Algebra::Standard, Elem::Dy(x), Elem::Dy(y)) => {
                Ok(Elem::Dy((x + y).min(Dyadic::one())))
            }
            (Algebra::Dual(inner), _, _) => {
                // x (*) y = !(!x + !y)
                let nx = inner.neg(a)?;
                let ny = inner.neg(b)?;
                inner.neg(&inner.oplus(&nx, &ny)?)
            }
            (Algebra::Finite(t), Elem::Idx(i), Elem::Idx(j)) => Ok(Elem::Idx(t.plus[*i][*j])),
            (Algebra::Product(parts), Elem::Tuple(xs), Elem::Tuple(ys)) => Ok(Elem::Tuple(
                parts
                    .iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(p, (x, y))| p.oplus(x, y))
                    .collect::<Result<_, _>>()?,
            )),
            (Algebra::Quotient { base, .. }, _, _) => self.canonical(&base.oplus(a, b)?),
            (Algebra::Gamma(g), Elem::Grp(x), Elem::Grp(y)) => {
                Ok(Elem::Grp(g.unit().meet(&x.add(y)?)?))
            }
            _ => Err(AlgebraError::CarrierViolation(format!("{a} + {b}"))),
        }
    }

    pub fn neg(&self, a: &Elem) -> Result<Elem, AlgebraError> {
        self.check(a)?;
        self.neg_unchecked(a)
    }

    fn neg_unchecked(&self, a: &Elem) -> Result<Elem, AlgebraError> {
        match (self, a) {
            (Algebra::Standard, Elem::Dy(x)) => Ok(Elem::Dy(&Dyadic::one() - x)),
            (Algebra::Dual(inner), _) => inner.neg(a),
            (Algebra::Finite(t), Elem::Idx(i)) => Ok(Elem::Idx(t.neg[*i])),
            (Algebra::Product(parts), Elem::Tuple(xs)) => Ok(Elem::Tuple(
                parts
                    .iter()
                    .zip(xs)
                    .map(|(p, x)| p.neg(x))
                    .collect::<Result<_, _>>()?,
            )),
            (Algebra::Quotient { base, .. }, _) => self.canonical(&base.neg(a)?),
            (Algebra::Gamma(g), Elem::Grp(x)) => Ok(Elem::Grp(g.unit().sub(x)?)),
            _ => Err(AlgebraError::CarrierViolation(a.to_string())),
        }
    }

    pub fn has_kappa(&self) -> bool {
        match self {
            Algebra::Standard | Algebra::Gamma(_) => true,
            Algebra::Dual(inner) => inner.has_kappa(),
            Algebra::Finite(t) => t.has_kappa(),
            Algebra::Product(parts) => parts.iter().all(Algebra::has_kappa),
            Algebra::Quotient { base, .. } => base.has_kappa(),
        }
    }

    pub fn kappa(&self, a: &Elem) -> Result<Elem, AlgebraError> {
        self.check(a)?;
        self.kappa_unchecked(a)
    }

    fn kappa_unchecked(&self, a: &Elem) -> Result<Elem, AlgebraError> {
        match (self, a) {
            (Algebra::Standard, Elem::Dy(x)) => Ok(Elem::Dy((x + &Dyadic::one()).halve())),
            (Algebra::Dual(inner), _) => {
                // k'x = !k!x
                inner.neg(&inner.kappa(&inner.neg(a)?)?)
            }
            (Algebra::Finite(t), Elem::Idx(i)) => match &t.kappa {
                Some(k) => Ok(Elem::Idx(k[*i])),
                None => Err(AlgebraError::MissingKappa),
            },
            (Algebra::Product(parts), Elem::Tuple(xs)) => Ok(Elem::Tuple(
                parts
                    .iter()
                    .zip(xs)
                    .map(|(p, x)| p.kappa(x))
                    .collect::<Result<_, _>>()?,
            )),
            (Algebra::Quotient { base, .. }, _) => self.canonical(&base.kappa(a)?),
            (Algebra::Gamma(g), Elem::Grp(x)) => Ok(Elem::Grp(g.star(x)?)),
            _ => Err(AlgebraError::CarrierViolation(a.to_string())),
        }
    }

    /// The induced order: `x <= y` iff `!x + y = !0`.
    pub fn leq(&self, a: &Elem, b: &Elem) -> Result<bool, AlgebraError> {
        let nx = self.neg(a)?;
        let s = self.oplus(&nx, b)?;
        Ok(self.canonical(&s)? == self.canonical(&self.one())?)
    }

    /// Structural equality of classes (canonical representatives).
    pub fn elem_eq(&self, a: &Elem, b: &Elem) -> Result<bool, AlgebraError> {
        Ok(self.canonical(a)? == self.canonical(b)?)
    }

    /// Draws a carrier element.
    pub fn sample(&self, rng: &mut impl rand::Rng) -> Elem {
        match self {
            Algebra::Standard => Elem::unit(&sampling::unit_dyadic(rng, sampling::DEFAULT_MAX_EXP)),
            Algebra::Dual(inner) => inner.sample(rng),
            Algebra::Finite(t) => Elem::Idx(rng.gen_range(0..t.size())),
            Algebra::Product(parts) => {
                Elem::Tuple(parts.iter().map(|p| p.sample(rng)).collect())
            }
            Algebra::Quotient { base, .. } => self
                .canonical(&base.sample(rng))
                .expect("base samples are in the carrier"),
            Algebra::Gamma(g) => Elem::Grp(sampling::group_elem_in_interval(
                rng,
                g,
                sampling::DEFAULT_MAX_EXP,
            )),
        }
    }

    /// All carrier elements, for finite tables only.
    fn enumerate(&self) -> Option<Vec<Elem>> {
        match self {
            Algebra::Finite(t) => Some((0..t.size()).map(Elem::Idx).collect()),
            _ => None,
        }
    }

    /// Human-readable element rendering (resolves finite-table names).
    pub fn format_elem(&self, e: &Elem) -> String {
        match (self, e) {
            (Algebra::Finite(t), Elem::Idx(i)) if *i < t.size() => {
                t.element_name(*i).to_string()
            }
            (Algebra::Dual(inner), _) => inner.format_elem(e),
            (Algebra::Product(parts), Elem::Tuple(xs)) if parts.len() == xs.len() => {
                let inner: Vec<String> = parts
                    .iter()
                    .zip(xs)
                    .map(|(p, x)| p.format_elem(x))
                    .collect();
                format!("({})", inner.join(", "))
            }
            (Algebra::Quotient { base, .. }, _) => base.format_elem(e),
            _ => e.to_string(),
        }
    }
}

/// How many tuples an audit draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Samples {
    Count { n: u64, seed: u64 },
    Exhaustive,
}

/// Outcome of checking a single axiom.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: AxiomId,
    pub checked: u64,
    pub witness: Option<Vec<String>>,
    pub skipped: bool,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Per-axiom audit results.
#[derive(Clone, Debug)]
pub struct AuditReport {
    pub checks: Vec<AxiomCheck>,
    pub kappa_present: bool,
}

impl AuditReport {
    /// No axiom produced a witness (skipped kappa axioms do not fail).
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn witness_count(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.skipped {
                writeln!(f, "{}: skipped (no kappa)", c.axiom)?;
            } else if let Some(w) = &c.witness {
                writeln!(f, "{}: FAIL at [{}]", c.axiom, w.join(", "))?;
            } else {
                writeln!(f, "{}: pass ({} tuples)", c.axiom, c.checked)?;
            }
        }
        Ok(())
    }
}

/// Evaluates one axiom at a tuple of elements; `elems.len()` must equal the
/// axiom's arity.
pub fn axiom_holds_at(
    alg: &Algebra,
    axiom: AxiomId,
    elems: &[Elem],
) -> Result<bool, AlgebraError> {
    let eq = |a: &Elem, b: &Elem| alg.elem_eq(a, b);
    match axiom {
        AxiomId::C1 => {
            let (x, y, z) = (&elems[0], &elems[1], &elems[2]);
            eq(
                &alg.oplus(x, &alg.oplus(y, z)?)?,
                &alg.oplus(&alg.oplus(x, y)?, z)?,
            )
        }
        AxiomId::C2 => {
            let (x, y) = (&elems[0], &elems[1]);
            eq(&alg.oplus(x, y)?, &alg.oplus(y, x)?)
        }
        AxiomId::C3 => {
            let x = &elems[0];
            eq(&alg.oplus(x, &alg.zero())?, x)
        }
        AxiomId::C4 => {
            let x = &elems[0];
            eq(&alg.neg(&alg.neg(x)?)?, x)
        }
        AxiomId::C5 => {
            let x = &elems[0];
            eq(&alg.oplus(x, &alg.one())?, &alg.one())
        }
        AxiomId::C6 => {
            let (x, y) = (&elems[0], &elems[1]);
            let lhs = alg.oplus(&alg.neg(&alg.oplus(&alg.neg(x)?, y)?)?, y)?;
            let rhs = alg.oplus(&alg.neg(&alg.oplus(&alg.neg(y)?, x)?)?, x)?;
            eq(&lhs, &rhs)
        }
        AxiomId::C7 => {
            let x = &elems[0];
            let kx = alg.kappa(x)?;
            eq(&kx, &alg.oplus(x, &alg.neg(&kx)?)?)
        }
        AxiomId::C8 => {
            let (x, y) = (&elems[0], &elems[1]);
            let lhs = alg.oplus(
                &alg.oplus(&alg.neg(&alg.kappa(x)?)?, &alg.kappa(y)?)?,
                &alg.neg(&alg.oplus(&alg.neg(x)?, y)?)?,
            )?;
            eq(&lhs, &alg.one())
        }
    }
}

/// Checks C1-C8 on sampled (or, for finite tables, all) tuples. Kappa axioms
/// are skipped with a flag when the algebra has no kappa. Failures are data:
/// the report carries the witness tuple.
pub fn audit_axioms(alg: &Algebra, samples: Samples) -> Result<AuditReport, AlgebraError> {
    let kappa_present = alg.has_kappa();
    let mut checks = Vec::new();
    for axiom in AxiomId::ALL {
        if axiom.needs_kappa() && !kappa_present {
            checks.push(AxiomCheck { axiom, checked: 0, witness: None, skipped: true });
            continue;
        }
        let mut checked = 0;
        let mut witness = None;
        match samples {
            Samples::Exhaustive => {
                let elems = alg.enumerate().ok_or_else(|| {
                    AlgebraError::BadTable("exhaustive audits need a finite table".into())
                })?;
                for_each_tuple(elems.len(), axiom.arity(), |idx| {
                    let tuple: Vec<Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
                    checked += 1;
                    if axiom_holds_at(alg, axiom, &tuple)? {
                        Ok(true)
                    } else {
                        witness =
                            Some(tuple.iter().map(|e| alg.format_elem(e)).collect());
                        Ok(false)
                    }
                })?;
            }
            Samples::Count { n, seed } => {
                let mut rng = sampling::rng(seed ^ (axiom as u64).wrapping_mul(0x9e37_79b9)) ;
                for _ in 0..n {
                    let tuple: Vec<Elem> =
                        (0..axiom.arity()).map(|_| alg.sample(&mut rng)).collect();
                    checked += 1;
                    if !axiom_holds_at(alg, axiom, &tuple)? {
                        witness = Some(tuple.iter().map(|e| alg.format_elem(e)).collect());
                        break;
                    }
                }
            }
        }
        checks.push(AxiomCheck { axiom, checked, witness, skipped: false });
    }
    Ok(AuditReport { checks, kappa_present })
}

/// Primality report for an ideal; `samples` is `None` when the check was
/// exhaustive.
#[derive(Clone, Debug)]
pub struct PrimenessReport {
    pub prime: bool,
    pub witness: Option<(String, String)>,
    pub samples: Option<u64>,
}

/// Tests whether an ideal is prime: for all x, y, one of the truncated
/// differences `!(!x + y)`, `!(!y + x)` lies in the ideal. Exhaustive for
/// finite tables, sampled otherwise (a sampled pass means "no counterexample
/// found in N samples").
pub fn is_prime_ideal(
    alg: &Algebra,
    ideal: &IdealSpec,
    samples: Samples,
) -> Result<PrimenessReport, AlgebraError> {
    ideal.validate(alg)?;
    if !ideal.is_proper(alg) {
        return Ok(PrimenessReport { prime: false, witness: None, samples: None });
    }
    let diff_in = |x: &Elem, y: &Elem| -> Result<bool, AlgebraError> {
        let d = alg.neg(&alg.oplus(&alg.neg(x)?, y)?)?;
        ideal.contains(alg, &d)
    };
    let check_pair = |x: &Elem, y: &Elem| -> Result<bool, AlgebraError> {
        Ok(diff_in(x, y)? || diff_in(y, x)?)
    };
    match (samples, alg.enumerate()) {
        (Samples::Exhaustive, Some(elems)) => {
            for x in &elems {
                for y in &elems {
                    if !check_pair(x, y)? {
                        return Ok(PrimenessReport {
                            prime: false,
                            witness: Some((alg.format_elem(x), alg.format_elem(y))),
                            samples: None,
                        });
                    }
                }
            }
            Ok(PrimenessReport { prime: true, witness: None, samples: None })
        }
        (Samples::Exhaustive, None) => {
            Err(AlgebraError::BadTable("exhaustive primality needs a finite table".into()))
        }
        (Samples::Count { n, seed }, _) => {
            let mut rng = sampling::rng(seed);
            for _ in 0..n {
                let x = alg.sample(&mut rng);
                let y = alg.sample(&mut rng);
                if !check_pair(&x, &y)? {
                    return Ok(PrimenessReport {
                        prime: false,
                        witness: Some((alg.format_elem(&x), alg.format_elem(&y))),
                        samples: Some(n),
                    });
                }
            }
            Ok(PrimenessReport { prime: true, witness: None, samples: Some(n) })
        }
    }
}

/// Structural subdirect-representation check for a product algebra: the
/// kernel intersection is trivial iff the complements of the killed
/// coordinate sets cover every coordinate.
pub fn subdirect_check(alg: &Algebra, kernels: &[IdealSpec]) -> Result<bool, AlgebraError> {
    let Algebra::Product(parts) = alg else {
        return Err(AlgebraError::NotProduct);
    };
    let mut covered = BTreeSet::new();
    for k in kernels {
        k.validate(alg)?;
        let IdealSpec::CoordinateKernel(s) = k else {
            return Err(AlgebraError::BadIdeal("kernels must be coordinate kernels".into()));
        };
        for i in 1..=parts.len() {
            if !s.contains(&i) {
                covered.insert(i);
            }
        }
    }
    Ok(covered.len() == parts.len())
}

/// Closure of a seed set under the standard operations, restricted to
/// dyadics whose canonical exponent stays within the budget. Monotone in
/// both the seed and the budget.
pub fn generate_subalgebra(seed: &[UnitDyadic], budget: u32) -> BTreeSet<UnitDyadic> {
    let mut set: BTreeSet<UnitDyadic> = seed
        .iter()
        .filter(|d| d.get().exponent() <= budget)
        .cloned()
        .collect();
    let keep = |d: &Dyadic| d.exponent() <= budget;
    loop {
        let mut fresh: Vec<UnitDyadic> = Vec::new();
        {
            let members: Vec<&UnitDyadic> = set.iter().collect();
            let mut push = |d: Dyadic| {
                if keep(&d) {
                    let u = UnitDyadic::new(d).expect("ops preserve [0,1]");
                    if !set.contains(&u) {
                        fresh.push(u);
                    }
                }
            };
            for &a in &members {
                push(&Dyadic::one() - a.get());
                push((a.get() + &Dyadic::one()).halve());
                for &b in &members {
                    push((a.get() + b.get()).min(Dyadic::one()));
                }
            }
        }
        if fresh.is_empty() {
            return set;
        }
        set.extend(fresh);
    }
}

/// Searches for a kappa table satisfying C7 and C8 on a finite MV algebra.
///
/// For each element the C7 equation `kx = x + !kx` pins the candidate set
/// pointwise; the search then backtracks over candidates verifying C8
/// incrementally. Returns `None` when no kappa exists. Fails with
/// `InvalidMVTable` if the table violates C1-C6.
pub fn find_kappa(table: &FiniteTable) -> Result<Option<Vec<usize>>, AlgebraError> {
    validate_mv(table)?;
    let n = table.size();
    let one = table.neg[table.zero];
    // C7 candidates: c with c = x + neg(c).
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&c| table.plus[x][table.neg[c]] == c).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    // C8 at (x, y): (neg(kx) + ky) + neg(neg(x) + y) = 1.
    let c8 = |kx: usize, ky: usize, x: usize, y: usize| {
        table.plus[table.plus[table.neg[kx]][ky]][table.neg[table.plus[table.neg[x]][y]]] == one
    };
    fn dfs(
        assigned: &mut Vec<usize>,
        candidates: &[Vec<usize>],
        c8: &impl Fn(usize, usize, usize, usize) -> bool,
    ) -> bool {
        let x = assigned.len();
        if x == candidates.len() {
            return true;
        }
        'cand: for &c in &candidates[x] {
            for (y, &ky) in assigned.iter().enumerate() {
                if !c8(c, ky, x, y) || !c8(ky, c, y, x) {
                    continue 'cand;
                }
            }
            if !c8(c, c, x, x) {
                continue 'cand;
            }
            assigned.push(c);
            if dfs(assigned, candidates, c8) {
                return true;
            }
            assigned.pop();
        }
        false
    }
    let mut assigned = Vec::with_capacity(n);
    if dfs(&mut assigned, &candidates, &c8) {
        Ok(Some(assigned))
    } else {
        Ok(None)
    }
}

/// Brute-force oracle for [`find_kappa`]: enumerates all `n^n` candidate
/// maps and checks C7 and C8 directly. Intended for small tables.
pub fn find_kappa_exhaustive(
    table: &FiniteTable,
    max_maps: u64,
) -> Result<Option<Vec<usize>>, AlgebraError> {
    validate_mv(table)?;
    let n = table.size();
    let total = (n as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > max_maps {
        return Err(AlgebraError::SearchSpaceTooLarge(total));
    }
    let one = table.neg[table.zero];
    let mut map = vec![0usize; n];
    loop {
        let c7 = (0..n).all(|x| table.plus[x][table.neg[map[x]]] == map[x]);
        if c7 {
            let c8 = (0..n).all(|x| {
                (0..n).all(|y| {
                    table.plus[table.plus[table.neg[map[x]]][map[y]]]
                        [table.neg[table.plus[table.neg[x]][y]]]
                        == one
                })
            });
            if c8 {
                return Ok(Some(map));
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(None);
            }
            map[pos] += 1;
            if map[pos] < n {
                break;
            }
            map[pos] = 0;
            pos += 1;
        }
    }
}

/// Exhaustively verifies the MV axioms C1-C6 on a finite table.
pub fn validate_mv(table: &FiniteTable) -> Result<(), AlgebraError> {
    let alg = Algebra::Finite(FiniteTable { kappa: None, ..table.clone() });
    let elems: Vec<Elem> = (0..table.size()).map(Elem::Idx).collect();
    for axiom in AxiomId::ALL.into_iter().filter(|a| !a.needs_kappa()) {
        let mut failure = None;
        for_each_tuple(elems.len(), axiom.arity(), |idx| {
            let tuple: Vec<Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
            if axiom_holds_at(&alg, axiom, &tuple)? {
                Ok(true)
            } else {
                failure = Some(tuple);
                Ok(false)
            }
        })?;
        if let Some(tuple) = failure {
            return Err(AlgebraError::InvalidMVTable {
                axiom,
                witness: tuple
                    .iter()
                    .map(|e| alg.format_elem(e))
                    .collect::<Vec<_>>()
                    .join(", "),
            });
        }
    }
    Ok(())
}

/// Calls `f` on every index tuple in `{0..size}^arity` (odometer order)
/// until `f` returns `false` or the space is exhausted.
fn for_each_tuple(
    size: usize,
    arity: usize,
    mut f: impl FnMut(&[usize]) -> Result<bool, AlgebraError>,
) -> Result<(), AlgebraError> {
    let mut idx = vec![0usize; arity];
    loop {
        if !f(&idx)? {
            return Ok(());
        }
        let mut pos = 0;
        loop {
            if pos == arity {
                return Ok(());
            }
            idx[pos] += 1;
            if idx[pos] < size {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// The group canonically attached to a dyadic chain algebra. Only the
/// standard handle is a chain over the dyadic unit interval.
pub fn chang_group_of_chain(alg: &Algebra) -> Result<ChainChangGroup, GroupError> {
    match alg {
        Algebra::Standard => Ok(ChainChangGroup::new()),
        _ => Err(GroupError::NotAChain),
    }
}

/// Convenience: the gamma image of the rank-1 dyadic group with unit 1,
/// operation-for-operation the standard algebra over embedded elements.
pub fn gamma_rank1() -> Algebra {
    Algebra::Gamma(LuGroup::rank1_unit())
}
