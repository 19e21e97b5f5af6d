mod common;

use std::cmp::Ordering;

use common::{algebra_strategy, embed, q, value_strategy, CZ};
use proptest::prelude::*;
use quasimeasure::sampling::probes;
use quasimeasure::valuation::{
    check_axioms, check_axioms_with, check_magnitude_order, check_modular, classify, trichotomy_at,
    Cumulative, Mass, Principle, Rank, ValuationOps,
};
use quasimeasure::{Algebra, RankGroup, Value};

fn alg_and_values(k: usize) -> impl Strategy<Value = (Algebra, Vec<Value>)> {
    algebra_strategy()
        .prop_flat_map(move |alg| (Just(alg), proptest::collection::vec(value_strategy(alg), k)))
}

fn le(alg: Algebra, v: &Value, w: &Value) -> bool {
    alg.cmp(v, w).unwrap() != Ordering::Greater
}

proptest! {
    #[test]
    fn add_and_mul_are_commutative_and_associative((alg, v) in alg_and_values(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(alg.add(a, b).unwrap(), alg.add(b, a).unwrap());
        prop_assert_eq!(alg.mul(a, b).unwrap(), alg.mul(b, a).unwrap());
        prop_assert_eq!(
            alg.add(&alg.add(a, b).unwrap(), c).unwrap(),
            alg.add(a, &alg.add(b, c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            alg.mul(&alg.mul(a, b).unwrap(), c).unwrap(),
            alg.mul(a, &alg.mul(b, c).unwrap()).unwrap()
        );
    }

    #[test]
    fn mul_distributes_over_add((alg, v) in alg_and_values(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        let left = alg.mul(c, &alg.add(a, b).unwrap()).unwrap();
        let right = alg.add(&alg.mul(c, a).unwrap(), &alg.mul(c, b).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn solve_mul_round_trips_and_is_unique((alg, v) in alg_and_values(3)) {
        let (lo, hi) = if le(alg, &v[0], &v[1]) { (&v[0], &v[1]) } else { (&v[1], &v[0]) };
        let w = alg.solve_mul(hi, lo).unwrap();
        prop_assert_eq!(&alg.mul(hi, &w).unwrap(), lo);
        prop_assert!(le(alg, &w, &alg.one()));
        let other = &v[2];
        if !alg.is_zero(hi) && le(alg, other, &alg.one()) && alg.mul(hi, other).unwrap() == *lo {
            prop_assert_eq!(other, &w);
        }
    }

    #[test]
    fn solve_add_round_trips((alg, v) in alg_and_values(2)) {
        let (lo, hi) = if le(alg, &v[0], &v[1]) { (&v[0], &v[1]) } else { (&v[1], &v[0]) };
        let w = alg.solve_add(lo, hi).unwrap();
        prop_assert_eq!(&alg.add(lo, &w).unwrap(), hi);
        prop_assert_eq!(alg.solve_add(hi, hi).unwrap(), alg.zero());
    }

    #[test]
    fn solve_preconditions_are_enforced((alg, v) in alg_and_values(2)) {
        if alg.cmp(&v[0], &v[1]).unwrap() == Ordering::Less {
            prop_assert!(alg.solve_add(&v[1], &v[0]).is_err());
            prop_assert!(alg.solve_mul(&v[0], &v[1]).is_err());
        }
    }

    #[test]
    fn negligibility_laws((alg, v) in alg_and_values(3)) {
        let rel = |a: &Value, b: &Value| alg.negligible(a, b).unwrap();
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert!(rel(&alg.zero(), a));
        if rel(a, b) && rel(b, c) {
            prop_assert!(rel(a, c));
        }
        if rel(a, b) && rel(b, a) {
            prop_assert_eq!(a, b);
        }
        if rel(a, b) {
            prop_assert!(le(alg, a, b));
            prop_assert!(rel(c, b) || rel(a, c));
        }
    }

    #[test]
    fn elementary_consequences((alg, v) in alg_and_values(2)) {
        let (a, b) = (&v[0], &v[1]);
        let n = alg.zero();
        let e = alg.one();
        prop_assert!(le(alg, &n, a));
        if alg.mul(a, b).unwrap() == n {
            prop_assert!(*a == n || *b == n);
        }
        if le(alg, a, &e) {
            let c = alg.solve_add(a, &e).unwrap();
            prop_assert!(le(alg, &c, &e));
            prop_assert_eq!(alg.add(a, &c).unwrap(), e.clone());
        }
        if *a != n && *b != n && le(alg, a, &e) && le(alg, b, &e) {
            let p = alg.mul(a, b).unwrap();
            prop_assert!(p != n && le(alg, &p, &e));
        }
    }

    #[test]
    fn check_axioms_accepts_samples((alg, v) in alg_and_values(12)) {
        let report = check_axioms(alg, &v);
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn magnitude_order_checks_pass((alg, v) in alg_and_values(9)) {
        let triples: Vec<_> = v.chunks(3).map(|c| (c[0].clone(), c[1].clone(), c[2].clone())).collect();
        let modular = check_modular(alg, &triples);
        prop_assert!(modular.passed(), "{}", modular);
        let order = check_magnitude_order(alg, &triples);
        prop_assert!(order.passed(), "{}", order);
    }

    #[test]
    fn trichotomy_transfers_to_every_nonzero_element((alg, v) in alg_and_values(20)) {
        for x in v.iter().filter(|x| !alg.is_zero(x)) {
            prop_assert_eq!(trichotomy_at(alg, x, &probes(alg)).unwrap(), classify(alg));
        }
    }

    #[test]
    fn rank_zero_embedding_is_a_homomorphism(a in 0i64..20, b in 0i64..20, d in 1i64..7) {
        let (x, y) = (q(a, d), q(b, d));
        let real = Algebra::Real;
        let rx = Value::Mass(Mass::new(x.clone()).unwrap());
        let ry = Value::Mass(Mass::new(y.clone()).unwrap());
        let (ex, ey) = (embed(&x), embed(&y));
        prop_assert_eq!(CZ.add(&ex, &ey).unwrap(), embed(&(x.clone() + &y)));
        prop_assert_eq!(CZ.mul(&ex, &ey).unwrap(), embed(&(x.clone() * &y)));
        prop_assert_eq!(CZ.cmp(&ex, &ey).unwrap(), real.cmp(&rx, &ry).unwrap());
        if y <= x && x > q(0, 1) {
            prop_assert_eq!(CZ.solve_mul(&ex, &ey).unwrap(), embed(&(y.clone() / &x)));
        }
    }

    #[test]
    fn value_text_round_trips((alg, v) in alg_and_values(1)) {
        let text = v[0].to_string();
        prop_assert_eq!(alg.parse_value(&text).unwrap(), v[0].clone());
    }
}

#[test]
fn classification_by_kind() {
    assert_eq!(classify(Algebra::Real), Principle::Sp);
    for g in [RankGroup::Integer, RankGroup::Rational] {
        assert_eq!(classify(Algebra::Ranking(g)), Principle::Sr);
        assert_eq!(classify(Algebra::Cumulative(g)), Principle::Sh);
    }
}

/// Cumulative arithmetic with one deliberate defect.
struct Mutant {
    defect: Defect,
}

#[derive(Clone, Copy)]
enum Defect {
    /// Equal-rank sums gain one extra unit of mass.
    ExtraMass,
    /// `#` keeps the less plausible operand on unequal ranks.
    KeepsLowerRank,
    /// `≪` compares masses before ranks.
    MassFirstOrder,
}

impl ValuationOps for Mutant {
    type Elem = Value;

    fn zero(&self) -> Value {
        CZ.zero()
    }
    fn one(&self) -> Value {
        CZ.one()
    }
    fn add(&self, v: &Value, w: &Value) -> Value {
        let (a, b) = (v.as_cumulative().unwrap(), w.as_cumulative().unwrap());
        match self.defect {
            Defect::ExtraMass if a.rank() == b.rank() && !a.is_impossible() => {
                let mass = a.mass().get() + b.mass().get() + q(1, 1);
                Value::Cumulative(
                    Cumulative::new(a.rank().clone(), Mass::new(mass).unwrap()).unwrap(),
                )
            }
            Defect::KeepsLowerRank if a.rank() != b.rank() => {
                if a.rank() < b.rank() {
                    v.clone()
                } else {
                    w.clone()
                }
            }
            _ => CZ.add(v, w).unwrap(),
        }
    }
    fn mul(&self, v: &Value, w: &Value) -> Value {
        CZ.mul(v, w).unwrap()
    }
    fn cmp(&self, v: &Value, w: &Value) -> Ordering {
        match self.defect {
            Defect::MassFirstOrder => {
                let (a, b) = (v.as_cumulative().unwrap(), w.as_cumulative().unwrap());
                a.mass().cmp(b.mass()).then(a.rank().cmp(b.rank()))
            }
            _ => CZ.cmp(v, w).unwrap(),
        }
    }
    fn solve_add(&self, v: &Value, target: &Value) -> Value {
        CZ.solve_add(v, target).unwrap_or_else(|_| CZ.zero())
    }
    fn solve_mul(&self, divisor: &Value, target: &Value) -> Value {
        CZ.solve_mul(divisor, target).unwrap_or_else(|_| CZ.zero())
    }
}

fn mutant_samples() -> Vec<Value> {
    let mut out = vec![
        Value::cumulative(0, 1, 2),
        Value::cumulative(0, 1, 3),
        Value::cumulative(1, 2, 1),
        Value::cumulative(0, 1, 1),
        Value::cumulative(2, 1, 4),
        CZ.zero(),
        Value::cumulative(1, 1, 2),
        Value::cumulative(0, 3, 1),
    ];
    out.extend(out.clone().into_iter().rev());
    out
}

#[test]
fn check_axioms_rejects_extra_mass() {
    let report = check_axioms_with(
        &Mutant {
            defect: Defect::ExtraMass,
        },
        &mutant_samples(),
    );
    assert!(!report.passed());
    assert!(
        report.get("distributivity").unwrap().failures > 0,
        "{report}"
    );
}

#[test]
fn check_axioms_rejects_lower_rank_sums() {
    let report = check_axioms_with(
        &Mutant {
            defect: Defect::KeepsLowerRank,
        },
        &mutant_samples(),
    );
    assert!(
        report.get("n is the # identity").unwrap().failures > 0,
        "{report}"
    );
    assert!(
        report.get("additive accessibility").unwrap().failures > 0,
        "{report}"
    );
}

#[test]
fn check_axioms_rejects_mass_first_order() {
    let report = check_axioms_with(
        &Mutant {
            defect: Defect::MassFirstOrder,
        },
        &mutant_samples(),
    );
    assert!(
        report.get("additive monotony").unwrap().failures > 0,
        "{report}"
    );
    assert!(
        report
            .get("order is divisibility by [n, e]")
            .unwrap()
            .failures
            > 0
    );
}

#[test]
fn check_axioms_flags_foreign_values() {
    let samples = vec![Value::rank(1), Value::cumulative(0, 1, 1)];
    let report = check_axioms(Algebra::Real, &samples);
    assert!(report.get("values belong to the algebra").unwrap().failures == 2);
}

#[test]
fn fractional_ranks_need_the_rational_group() {
    let half = Rank::new(q(1, 2)).unwrap();
    let v = Value::Rank(half);
    assert!(Algebra::Ranking(RankGroup::Rational).contains(&v));
    assert!(!Algebra::Ranking(RankGroup::Integer).contains(&v));
}
