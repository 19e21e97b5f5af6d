//! Independent oracles and generators shared by the integration tests.
//!
//! The oracles work on raw rationals and bitmasks and never call the
//! library's `#`, `∘`, `solve_mul` or formula evaluation.

#![allow(dead_code)]

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use quasimeasure::proplang::{enumerate_worlds, Formula};
use quasimeasure::valuation::{Cumulative, Mass, Rank};
use quasimeasure::{Algebra, QuasiMeasure, RankGroup, Value, WorldSpace};
use rand::Rng;

pub const CZ: Algebra = Algebra::Cumulative(RankGroup::Integer);

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

/// `(rank, mass)` of a cumulative value, `None` for `n`.
pub fn parts(v: &Value) -> Option<(BigRational, BigRational)> {
    let c = v.as_cumulative().expect("cumulative value");
    c.rank()
        .number()
        .map(|g| (g.clone(), c.mass().get().clone()))
}

pub fn from_parts(p: Option<(BigRational, BigRational)>) -> Value {
    match p {
        None => Value::Cumulative(Cumulative::impossible()),
        Some((g, m)) => Value::Cumulative(
            Cumulative::new(Rank::new(g).unwrap(), Mass::new(m).unwrap()).unwrap(),
        ),
    }
}

/// Cumulative value of the worlds in `mask`: the least rank number present
/// and the total mass carried at that rank.
pub fn oracle_measure(table: &[Value], mask: u64) -> Option<(BigRational, BigRational)> {
    let members: Vec<(BigRational, BigRational)> = (0..table.len())
        .filter(|w| mask >> w & 1 == 1)
        .filter_map(|w| parts(&table[w]))
        .collect();
    let best = members.iter().map(|(g, _)| g.clone()).min()?;
    let mass = members
        .iter()
        .filter(|(g, _)| *g == best)
        .fold(BigRational::zero(), |acc, (_, m)| acc + m);
    Some((best, mass))
}

/// Conditional of `a` given `b`: rank difference and mass ratio, `n` when
/// either side is impossible.
pub fn oracle_conditional(table: &[Value], a: u64, b: u64) -> Option<(BigRational, BigRational)> {
    let given = oracle_measure(table, b)?;
    let joint = oracle_measure(table, a & b)?;
    Some((joint.0 - given.0, joint.1 / given.1))
}

pub fn probability(p: &[BigRational], mask: u64) -> BigRational {
    (0..p.len())
        .filter(|w| mask >> w & 1 == 1)
        .fold(BigRational::zero(), |acc, w| acc + &p[w])
}

pub fn conditional_probability(p: &[BigRational], a: u64, b: u64) -> BigRational {
    let pb = probability(p, b);
    if pb.is_zero() {
        BigRational::zero()
    } else {
        probability(p, a & b) / pb
    }
}

/// Rank-0 cumulative value carrying a probability, `n` for zero.
pub fn embed(p: &BigRational) -> Value {
    if p.is_zero() {
        from_parts(None)
    } else {
        from_parts(Some((BigRational::zero(), p.clone())))
    }
}

/// A random probability table over `worlds` worlds with small denominators
/// and some zero entries.
pub fn random_distribution<R: Rng>(worlds: usize, rng: &mut R) -> Vec<BigRational> {
    loop {
        let weights: Vec<i64> = (0..worlds)
            .map(|_| {
                if rng.gen_ratio(1, 5) {
                    0
                } else {
                    rng.gen_range(1..=9)
                }
            })
            .collect();
        let total: i64 = weights.iter().sum();
        if total > 0 {
            return weights.iter().map(|&w| q(w, total)).collect();
        }
    }
}

pub fn atom_names(k: usize) -> Vec<String> {
    ["p", "q", "r", "s", "t", "u"][..k]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

pub fn atom_space(k: usize) -> Arc<WorldSpace> {
    Arc::new(enumerate_worlds(&atom_names(k)).unwrap())
}

pub fn opaque_space(k: usize) -> Arc<WorldSpace> {
    Arc::new(WorldSpace::new((0..k).map(|i| format!("w{i}"))).unwrap())
}

pub fn random_measure<R: Rng>(alg: Algebra, space: Arc<WorldSpace>, rng: &mut R) -> QuasiMeasure {
    let raw = quasimeasure::sampling::random_table(alg, space.len(), rng);
    QuasiMeasure::normalize(alg, space, raw).unwrap()
}

/// The worked example: pq:(0,3/5) p!q:(0,2/5) !pq:(1,1) !p!q:(2,1/2).
pub const RUNNING_EXAMPLE: &str = "\
algebra cumulative z
atoms p q
pq   0:0.6
p!q  0:0.4
!pq  1:1
!p!q 2:1/2
";

/// Every formula over `p`, `q` whose connective nesting is at most `depth`
/// (negation counts as a level), paired with its truth table: bit `w` is
/// world `w` of `enumerate_worlds(["p", "q"])`.
pub fn formulas_up_to(depth: usize) -> Vec<(Formula, u8)> {
    // World w assigns p = bit 1 of w, q = bit 0 of w.
    let mut levels: Vec<(Formula, u8)> =
        vec![(Formula::atom("p"), 0b1100), (Formula::atom("q"), 0b1010)];
    for _ in 0..depth {
        let prev = levels.clone();
        let mut next = prev.clone();
        for (f, t) in &prev {
            next.push((Formula::not(f.clone()), !t & 0xF));
        }
        for (f, tf) in &prev {
            for (g, tg) in &prev {
                next.push((Formula::and(f.clone(), g.clone()), tf & tg));
                next.push((Formula::or(f.clone(), g.clone()), tf | tg));
                next.push((Formula::implies(f.clone(), g.clone()), (!tf | tg) & 0xF));
                next.push((Formula::iff(f.clone(), g.clone()), !(tf ^ tg) & 0xF));
            }
        }
        levels = next;
    }
    levels
}

/// Truth table of a formula over `p`, `q`, computed from the two-atom tables.
pub fn truth_table(f: &Formula) -> u8 {
    match f {
        Formula::Top => 0xF,
        Formula::Bottom => 0,
        Formula::Atom(a) if a == "p" => 0b1100,
        Formula::Atom(a) if a == "q" => 0b1010,
        Formula::Atom(a) => panic!("unexpected atom {a}"),
        Formula::Not(g) => !truth_table(g) & 0xF,
        Formula::And(g, h) => truth_table(g) & truth_table(h),
        Formula::Or(g, h) => truth_table(g) | truth_table(h),
        Formula::Implies(g, h) => (!truth_table(g) | truth_table(h)) & 0xF,
        Formula::Iff(g, h) => !(truth_table(g) ^ truth_table(h)) & 0xF,
    }
}

/// A random formula tree of depth at most `depth`.
pub fn random_formula<R: Rng>(depth: usize, rng: &mut R) -> Formula {
    const ATOMS: [&str; 5] = ["p", "q", "r", "x1", "long_name"];
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..7) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            i => Formula::atom(ATOMS[i - 2]),
        };
    }
    let sub = |rng: &mut R| random_formula(depth - 1, rng);
    match rng.gen_range(0..5) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::iff(sub(rng), sub(rng)),
    }
}

/// Random formula over the first `k` atoms of [`atom_names`].
pub fn random_formula_over<R: Rng>(k: usize, depth: usize, rng: &mut R) -> Formula {
    let names = atom_names(k);
    if depth == 0 || rng.gen_ratio(1, 3) {
        return match rng.gen_range(0..(k + 2)) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            i => Formula::Atom(names[i - 2].clone()),
        };
    }
    let sub = |rng: &mut R| random_formula_over(k, depth - 1, rng);
    match rng.gen_range(0..4) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        _ => Formula::implies(sub(rng), sub(rng)),
    }
}

/// Proptest strategy over the values of `alg`, `n` about one time in eight.
pub fn value_strategy(alg: Algebra) -> proptest::strategy::BoxedStrategy<Value> {
    use proptest::prelude::*;
    let denominators = match alg.rank_group() {
        Some(RankGroup::Rational) => 3i64,
        _ => 1,
    };
    (0u8..8, 0i64..=4, 1i64..=denominators, 1i64..=12, 1i64..=6)
        .prop_map(move |(imp, g, gd, p, d)| {
            if imp == 0 {
                return alg.zero();
            }
            let rank = Rank::new(q(g, gd)).unwrap();
            match alg {
                Algebra::Real => Value::Mass(Mass::ratio(p, d)),
                Algebra::Ranking(_) => Value::Rank(rank),
                Algebra::Cumulative(_) => {
                    Value::Cumulative(Cumulative::new(rank, Mass::ratio(p, d)).unwrap())
                }
            }
        })
        .boxed()
}

pub fn algebra_strategy() -> proptest::strategy::BoxedStrategy<Algebra> {
    use proptest::prelude::*;
    proptest::sample::select(Algebra::ALL.to_vec()).boxed()
}

/// All set partitions of `0..n`, each as a list of world masks, via
/// restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<u64>> {
    fn grow(i: usize, n: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<u64>>) {
        if i == n {
            let blocks = labels.iter().max().map_or(0, |m| m + 1);
            let mut masks = vec![0u64; blocks];
            for (w, &b) in labels.iter().enumerate() {
                masks[b] |= 1 << w;
            }
            out.push(masks);
            return;
        }
        let limit = labels.iter().max().map_or(0, |m| m + 1);
        for b in 0..=limit {
            labels.push(b);
            grow(i + 1, n, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    grow(0, n, &mut Vec::new(), &mut out);
    out
}

/// Ranks as integers, `None` for impossible. Lower is more plausible.
pub type IntRank = Option<u32>;

/// Most plausible rank among the worlds of `mask`.
pub fn rank_of(table: &[IntRank], mask: u64) -> IntRank {
    (0..table.len())
        .filter(|w| mask >> w & 1 == 1)
        .filter_map(|w| table[w])
        .min()
}

/// Every world table over ranks `{imp, 0, ..., max_rank}` whose value on
/// each block equals the given block rank.
pub fn ranking_extensions(
    worlds: usize,
    blocks: &[u64],
    values: &[IntRank],
    max_rank: u32,
) -> Vec<Vec<IntRank>> {
    let choices: Vec<IntRank> = std::iter::once(None)
        .chain((0..=max_rank).map(Some))
        .collect();
    let mut out = Vec::new();
    let mut table = vec![None; worlds];
    let total = choices.len().pow(worlds as u32);
    for mut code in 0..total {
        for slot in table.iter_mut() {
            *slot = choices[code % choices.len()];
            code /= choices.len();
        }
        if blocks
            .iter()
            .zip(values)
            .all(|(&b, &v)| rank_of(&table, b) == v)
        {
            out.push(table.clone());
        }
    }
    out
}

pub fn rank_value(r: IntRank) -> Value {
    match r {
        None => Value::Rank(Rank::Impossible),
        Some(g) => Value::rank(g as i64),
    }
}

/// A formula over the first `k` atoms whose models are exactly the worlds in
/// `mask`, as a disjunction of full conjunctions. World `w` makes atom `j`
/// true iff bit `k - 1 - j` of `w` is set.
pub fn formula_of_mask(k: usize, mask: u64) -> Formula {
    let names = atom_names(k);
    let mut disjuncts = (0..(1usize << k)).filter(|w| mask >> w & 1 == 1).map(|w| {
        names
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let atom = Formula::Atom(a.clone());
                if w >> (k - 1 - j) & 1 == 1 {
                    atom
                } else {
                    Formula::not(atom)
                }
            })
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    });
    match disjuncts.next() {
        None => Formula::Bottom,
        Some(first) => disjuncts.fold(first, Formula::or),
    }
}

/// [`oracle_measure`] for every event mask at once, built up one world at a
/// time from the lowest set bit.
pub fn oracle_all(table: &[Value]) -> Vec<Option<(BigRational, BigRational)>> {
    let mut out: Vec<Option<(BigRational, BigRational)>> = vec![None; 1 << table.len()];
    for mask in 1usize..out.len() {
        let low = mask.trailing_zeros() as usize;
        let rest = out[mask & (mask - 1)].clone();
        out[mask] = match (rest, parts(&table[low])) {
            (None, w) => w,
            (r, None) => r,
            (Some((g1, m1)), Some((g2, m2))) => Some(if g1 == g2 {
                (g1, m1 + m2)
            } else if g1 < g2 {
                (g1, m1)
            } else {
                (g2, m2)
            }),
        };
    }
    out
}

/// Streams every formula of [`formulas_up_to`]`(depth)` with its truth
/// table, building only the last level on the fly. Subtrees are moved into
/// each new node and taken back out, so nothing is cloned. Returns the count.
pub fn for_each_formula<F: FnMut(&Formula, u8)>(depth: usize, mut visit: F) -> usize {
    if depth == 0 {
        let base = formulas_up_to(0);
        base.iter().for_each(|(f, t)| visit(f, *t));
        return base.len();
    }
    let mut prev: Vec<(Box<Formula>, u8)> = formulas_up_to(depth - 1)
        .into_iter()
        .map(|(f, t)| (Box::new(f), t))
        .collect();
    let mut count = 0;
    for (f, t) in prev.iter_mut() {
        visit(f, *t);
        let node = Formula::Not(std::mem::replace(f, Box::new(Formula::Top)));
        visit(&node, !*t & 0xF);
        let Formula::Not(inner) = node else {
            unreachable!()
        };
        *f = inner;
        count += 2;
    }
    let placeholder = || Box::new(Formula::Top);
    for i in 0..prev.len() {
        for j in 0..prev.len() {
            let (tf, tg) = (prev[i].1, prev[j].1);
            let mut f = std::mem::replace(&mut prev[i].0, placeholder());
            let mut g = if i == j {
                f.clone()
            } else {
                std::mem::replace(&mut prev[j].0, placeholder())
            };
            for op in 0..4 {
                let (node, table) = match op {
                    0 => (Formula::And(f, g), tf & tg),
                    1 => (Formula::Or(f, g), tf | tg),
                    2 => (Formula::Implies(f, g), (!tf | tg) & 0xF),
                    _ => (Formula::Iff(f, g), !(tf ^ tg) & 0xF),
                };
                visit(&node, table);
                (f, g) = match node {
                    Formula::And(a, b)
                    | Formula::Or(a, b)
                    | Formula::Implies(a, b)
                    | Formula::Iff(a, b) => (a, b),
                    _ => unreachable!(),
                };
                count += 1;
            }
            prev[i].0 = f;
            if i != j {
                prev[j].0 = g;
            }
        }
    }
    count
}
