//! Random generators for values and measures, used by validation and by
//! the property and acceptance tests.
//!
//! Ranks and masses are drawn from small ranges so that equal ranks and
//! equal masses collide often; those collisions are where the cumulative
//! `#` changes behaviour.

use rand::Rng;

use crate::valuation::{Algebra, Cumulative, Mass, Rank, RankGroup, Rational, Value};

fn random_rank<R: Rng + ?Sized>(group: RankGroup, rng: &mut R) -> Rank {
    let numer: i64 = rng.gen_range(0..=4);
    let denom: i64 = match group {
        RankGroup::Integer => 1,
        RankGroup::Rational => rng.gen_range(1..=3),
    };
    Rank::new(Rational::new(numer.into(), denom.into())).expect("nonnegative")
}

fn random_positive_mass<R: Rng + ?Sized>(rng: &mut R) -> Mass {
    let numer: i64 = rng.gen_range(1..=12);
    let denom: i64 = rng.gen_range(1..=6);
    Mass::ratio(numer, denom)
}

/// A random element of `alg`; `n` appears with probability 1/8.
pub fn random_value<R: Rng + ?Sized>(alg: Algebra, rng: &mut R) -> Value {
    if rng.gen_ratio(1, 8) {
        return alg.zero();
    }
    match alg {
        Algebra::Real => Value::Mass(random_positive_mass(rng)),
        Algebra::Ranking(g) => Value::Rank(random_rank(g, rng)),
        Algebra::Cumulative(g) => Value::Cumulative(
            Cumulative::new(random_rank(g, rng), random_positive_mass(rng)).expect("valid pair"),
        ),
    }
}

pub fn random_values<R: Rng + ?Sized>(alg: Algebra, count: usize, rng: &mut R) -> Vec<Value> {
    (0..count).map(|_| random_value(alg, rng)).collect()
}

pub fn random_triples<R: Rng + ?Sized>(
    alg: Algebra,
    count: usize,
    rng: &mut R,
) -> Vec<(Value, Value, Value)> {
    (0..count)
        .map(|_| {
            (
                random_value(alg, rng),
                random_value(alg, rng),
                random_value(alg, rng),
            )
        })
        .collect()
}

/// A random table of `worlds` values, not necessarily normalized, with at
/// least one entry different from `n`.
pub fn random_table<R: Rng + ?Sized>(alg: Algebra, worlds: usize, rng: &mut R) -> Vec<Value> {
    loop {
        let table = random_values(alg, worlds, rng);
        if table.iter().any(|v| !alg.is_zero(v)) {
            return table;
        }
    }
}

/// Fixed values strictly between `n` and `e`, deep and shallow, used to
/// search for negligible elements.
pub fn probes(alg: Algebra) -> Vec<Value> {
    match alg {
        Algebra::Real => vec![Value::mass(1, 2), Value::mass(1, 10), Value::mass(1, 1000)],
        Algebra::Ranking(g) => {
            let mut out = vec![Value::rank(1), Value::rank(5)];
            if g == RankGroup::Rational {
                out.push(Value::Rank(
                    Rank::new(Rational::new(1.into(), 3.into())).expect("nonnegative"),
                ));
            }
            out
        }
        Algebra::Cumulative(g) => {
            let mut out = vec![
                Value::cumulative(0, 1, 2),
                Value::cumulative(1, 1, 1),
                Value::cumulative(1, 1000, 1),
                Value::cumulative(4, 1, 3),
            ];
            if g == RankGroup::Rational {
                out.push(Value::Cumulative(
                    Cumulative::new(
                        Rank::new(Rational::new(1.into(), 2.into())).expect("nonnegative"),
                        Mass::ratio(5, 1),
                    )
                    .expect("valid pair"),
                ));
            }
            out
        }
    }
}
