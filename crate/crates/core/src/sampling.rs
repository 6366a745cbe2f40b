//! Seeded deterministic generators used by the randomized audits and the
//! test corpus. Every randomized check in the crate routes its randomness
//! through [`rng`] so that failures are reproducible from a seed.

use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{Dyadic, UnitDyadic};
use crate::group::{GroupElem, LuGroup};

/// Default exponent bound for randomly drawn dyadics.
pub const DEFAULT_MAX_EXP: u32 = 8;

/// Integer half-width of the box used for unconstrained group coordinates.
const FREE_SPAN: i64 = 2;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A dyadic in `[0, 1]` with exponent at most `max_exp`.
pub fn unit_dyadic(rng: &mut impl Rng, max_exp: u32) -> UnitDyadic {
    let e = rng.gen_range(0..=max_exp);
    let m = rng.gen_range(0..=(1u64 << e));
    UnitDyadic::new(Dyadic::new(m, e)).expect("m <= 2^e")
}

/// A dyadic in the closed interval `[lo, hi]` of integers.
pub fn dyadic_between_ints(rng: &mut impl Rng, lo: i64, hi: i64, max_exp: u32) -> Dyadic {
    debug_assert!(lo <= hi);
    let e = rng.gen_range(0..=max_exp);
    let steps = ((hi - lo) as u64) << e;
    let k = rng.gen_range(0..=steps);
    &Dyadic::from_int(lo) + &Dyadic::new(k, e)
}

/// A dyadic in the closed interval `[lo, hi]`; `extra_exp` controls how much
/// finer than the endpoints the sample may be.
pub fn dyadic_in(rng: &mut impl Rng, lo: &Dyadic, hi: &Dyadic, extra_exp: u32) -> Dyadic {
    debug_assert!(lo <= hi);
    let diff = hi - lo;
    if diff.is_zero() {
        return lo.clone();
    }
    let e = diff.exponent() + rng.gen_range(0..=extra_exp);
    let steps = (diff.mantissa() << (e - diff.exponent()) as usize)
        .to_u64()
        .expect("interval too wide for sampling");
    let k = rng.gen_range(0..=steps);
    lo + &Dyadic::new(k, e)
}

/// An element of the lexicographic interval `[id, u]` of `group`.
pub fn group_elem_in_interval(
    rng: &mut impl Rng,
    group: &LuGroup,
    max_exp: u32,
) -> GroupElem {
    let lo = group.identity();
    let coords = sample_between(rng, lo.coords(), group.unit().coords(), max_exp);
    GroupElem::new(coords)
}

/// An arbitrary element with every coordinate in `[-span, span]`.
pub fn group_elem_in_box(rng: &mut impl Rng, rank: usize, span: i64, max_exp: u32) -> GroupElem {
    GroupElem::new(
        (0..rank)
            .map(|_| dyadic_between_ints(rng, -span, span, max_exp))
            .collect(),
    )
}

fn free_coord(rng: &mut impl Rng, max_exp: u32) -> Dyadic {
    dyadic_between_ints(rng, -FREE_SPAN, FREE_SPAN, max_exp)
}

/// Samples lexicographically between `lo` and `hi` (inclusive); `lo <=lex hi`
/// is required.
fn sample_between(rng: &mut impl Rng, lo: &[Dyadic], hi: &[Dyadic], max_exp: u32) -> Vec<Dyadic> {
    if lo.is_empty() {
        return vec![];
    }
    if lo[0] == hi[0] {
        let mut out = vec![lo[0].clone()];
        out.extend(sample_between(rng, &lo[1..], &hi[1..], max_exp));
        return out;
    }
    let c = dyadic_in(rng, &lo[0], &hi[0], max_exp);
    let mut out = vec![c.clone()];
    if c == lo[0] {
        out.extend(sample_above(rng, &lo[1..], max_exp));
    } else if c == hi[0] {
        out.extend(sample_below(rng, &hi[1..], max_exp));
    } else {
        out.extend((0..lo.len() - 1).map(|_| free_coord(rng, max_exp)));
    }
    out
}

/// Samples a suffix lexicographically `>=` the given bound.
fn sample_above(rng: &mut impl Rng, lo: &[Dyadic], max_exp: u32) -> Vec<Dyadic> {
    if lo.is_empty() {
        return vec![];
    }
    let hi = &lo[0] + &Dyadic::from_int(FREE_SPAN);
    let c = dyadic_in(rng, &lo[0], &hi, max_exp);
    let mut out = vec![c.clone()];
    if c == lo[0] {
        out.extend(sample_above(rng, &lo[1..], max_exp));
    } else {
        out.extend((0..lo.len() - 1).map(|_| free_coord(rng, max_exp)));
    }
    out
}

/// Samples a suffix lexicographically `<=` the given bound.
fn sample_below(rng: &mut impl Rng, hi: &[Dyadic], max_exp: u32) -> Vec<Dyadic> {
    if hi.is_empty() {
        return vec![];
    }
    let lo = &hi[0] - &Dyadic::from_int(FREE_SPAN);
    let c = dyadic_in(rng, &lo, &hi[0], max_exp);
    let mut out = vec![c.clone()];
    if c == hi[0] {
        out.extend(sample_below(rng, &hi[1..], max_exp));
    } else {
        out.extend((0..hi.len() - 1).map(|_| free_coord(rng, max_exp)));
    }
    out
}
