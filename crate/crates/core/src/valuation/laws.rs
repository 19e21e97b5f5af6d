//! Executable forms of the valuation-algebra postulates and their
//! consequences, the additive magnitude order `≪≪`, and the SP/SH/SR
//! trichotomy.

use std::cmp::Ordering;
use std::fmt;

use super::{Algebra, ValuationError, ValuationOps, Value};
use crate::report::Report;

/// Which values are negligible beside `e`: only `n` (SP), some but not all
/// smaller values (SH), or all of them (SR).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Principle {
    Sp,
    Sh,
    Sr,
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Principle::Sp => "SP",
            Principle::Sh => "SH",
            Principle::Sr => "SR",
        })
    }
}

/// Analytic classification: real algebras satisfy SP, ranking algebras SR
/// (`#` is idempotent) and cumulative algebras over a nontrivial rank
/// group SH.
pub fn classify(alg: Algebra) -> Principle {
    match alg {
        Algebra::Real => Principle::Sp,
        Algebra::Ranking(_) => Principle::Sr,
        Algebra::Cumulative(_) => Principle::Sh,
    }
}

/// Decides which of the three cases holds at `x ≠ n` by direct evaluation.
///
/// `S(x)` is an initial segment, so `[n, x] ⊆ S(x)` iff `x ≪≪ x`. Otherwise
/// the case is SH iff some `y` with `n ≪ y ≪ x` is negligible beside `x`;
/// the candidates are `x ∘ p` for each probe `p` strictly between `n` and `e`.
pub fn trichotomy_at(
    alg: Algebra,
    x: &Value,
    probes: &[Value],
) -> Result<Principle, ValuationError> {
    if alg.is_zero(x) {
        return Err(ValuationError::Precondition(
            "the trichotomy is only defined at x ≠ n".into(),
        ));
    }
    if alg.negligible(x, x)? {
        return Ok(Principle::Sr);
    }
    for p in probes {
        if alg.is_zero(p) || alg.cmp(p, &alg.one())? != Ordering::Less {
            continue;
        }
        let y = alg.mul(x, p)?;
        if alg.negligible(&y, x)? {
            return Ok(Principle::Sh);
        }
    }
    Ok(Principle::Sp)
}

fn at_most<O: ValuationOps>(ops: &O, v: &O::Elem, w: &O::Elem) -> bool {
    ops.cmp(v, w) != Ordering::Greater
}

fn in_unit_interval<O: ValuationOps>(ops: &O, v: &O::Elem) -> bool {
    at_most(ops, v, &ops.one())
}

fn tuple<E: fmt::Display>(items: &[&E]) -> String {
    let parts: Vec<String> = items.iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Checks the valuation postulates, the elementary consequences `n ≤ v`,
/// unique quotients, absence of zero-divisors, the `∘`-characterization of
/// `≤`, closure of `(n, e]` under `∘`, the `[n, e]` bounds of complementary
/// pairs, and cancellation on `[n, e]`.
///
/// Samples are taken as cyclic triples `(s[i], s[i+1], s[i+2])`; order
/// dependent laws are instantiated with the pair sorted so that their
/// hypotheses hold.
pub fn check_axioms_with<O: ValuationOps>(ops: &O, samples: &[O::Elem]) -> Report {
    let mut report = Report::new();
    let n = ops.zero();
    let e = ops.one();
    let len = samples.len();
    for i in 0..len {
        let a = &samples[i];
        let b = &samples[(i + 1) % len];
        let c = &samples[(i + 2) % len];
        let (lo, hi) = if at_most(ops, a, b) { (a, b) } else { (b, a) };

        report.record("# commutative", ops.add(a, b) == ops.add(b, a), || {
            tuple(&[a, b])
        });
        report.record(
            "# associative",
            ops.add(&ops.add(a, b), c) == ops.add(a, &ops.add(b, c)),
            || tuple(&[a, b, c]),
        );
        report.record("n is the # identity", ops.add(a, &n) == *a, || tuple(&[a]));

        report.record("∘ commutative", ops.mul(a, b) == ops.mul(b, a), || {
            tuple(&[a, b])
        });
        report.record(
            "∘ associative",
            ops.mul(&ops.mul(a, b), c) == ops.mul(a, &ops.mul(b, c)),
            || tuple(&[a, b, c]),
        );
        report.record("e is the ∘ identity", ops.mul(a, &e) == *a, || {
            tuple(&[a])
        });
        report.record("n absorbs ∘", ops.mul(a, &n) == n, || tuple(&[a]));

        report.record(
            "distributivity",
            ops.mul(c, &ops.add(a, b)) == ops.add(&ops.mul(c, a), &ops.mul(c, b)),
            || tuple(&[c, a, b]),
        );

        let ab = ops.cmp(a, b);
        let linear = ab == ops.cmp(b, a).reverse()
            && ((ab == Ordering::Equal) == (a == b))
            && ops.cmp(a, a) == Ordering::Equal;
        let transitive = !(at_most(ops, a, b) && at_most(ops, b, c)) || at_most(ops, a, c);
        report.record("linear order", linear && transitive, || tuple(&[a, b, c]));

        report.record(
            "additive monotony",
            at_most(ops, &ops.add(lo, c), &ops.add(hi, c)),
            || tuple(&[lo, hi, c]),
        );

        if ops.cmp(lo, hi) == Ordering::Less && *c != n {
            report.record(
                "multiplicative monotony",
                ops.cmp(&ops.mul(lo, c), &ops.mul(hi, c)) == Ordering::Less,
                || tuple(&[lo, hi, c]),
            );
        } else {
            report.declare("multiplicative monotony");
        }

        let w = ops.solve_add(lo, hi);
        report.record("additive accessibility", ops.add(lo, &w) == *hi, || {
            format!("{} with witness {w}", tuple(&[lo, hi]))
        });

        let q = ops.solve_mul(hi, lo);
        report.record(
            "multiplicative accessibility",
            ops.mul(hi, &q) == *lo,
            || format!("{} with witness {q}", tuple(&[lo, hi])),
        );

        report.record("n is minimal", at_most(ops, &n, a), || tuple(&[a]));

        if *hi != n {
            let mut ok = in_unit_interval(ops, &q) && ops.mul(hi, &q) == *lo;
            for other in [a, b, c] {
                if other != &q && in_unit_interval(ops, other) && ops.mul(hi, other) == *lo {
                    ok = false;
                }
            }
            report.record("unique quotient in [n, e]", ok, || {
                format!("{} with quotient {q}", tuple(&[lo, hi, c]))
            });
        } else {
            report.declare("unique quotient in [n, e]");
        }

        let ok = !(ops.mul(a, b) == n && *b != n) || *a == n;
        report.record("no zero-divisors", ok, || tuple(&[a, b]));

        // v ≤ v' ⇒ v' ∘ w = v for some w ≤ e, and every w ≤ e keeps v' ∘ w ≤ v'.
        let mut ok = in_unit_interval(ops, &q) && ops.mul(hi, &q) == *lo;
        for x in [a, b] {
            for w in [a, b, c] {
                if in_unit_interval(ops, w) && !at_most(ops, &ops.mul(x, w), x) {
                    ok = false;
                }
            }
        }
        report.record("order is divisibility by [n, e]", ok, || tuple(&[a, b, c]));

        if *a != n && *b != n && in_unit_interval(ops, a) && in_unit_interval(ops, b) {
            let p = ops.mul(a, b);
            report.record(
                "(n, e] closed under ∘",
                p != n && in_unit_interval(ops, &p),
                || tuple(&[a, b]),
            );
        } else {
            report.declare("(n, e] closed under ∘");
        }

        if in_unit_interval(ops, a) {
            let complement = ops.solve_add(a, &e);
            let ok = ops.add(a, &complement) == e
                && at_most(ops, &n, a)
                && in_unit_interval(ops, &complement)
                && at_most(ops, &n, &complement);
            report.record("complementary values lie in [n, e]", ok, || {
                format!("{} with complement {complement}", tuple(&[a]))
            });
        } else {
            report.declare("complementary values lie in [n, e]");
        }

        if *a != n && in_unit_interval(ops, b) && in_unit_interval(ops, c) {
            let ab = ops.mul(a, b);
            let ok = ops.solve_mul(a, &ab) == *b && (ops.mul(a, c) != ab || b == c);
            report.record("cancellation on [n, e]", ok, || tuple(&[a, b, c]));
        } else {
            report.declare("cancellation on [n, e]");
        }
    }
    report
}

fn membership(alg: Algebra, values: &[&Value], report: &mut Report) -> bool {
    let mut all = true;
    for v in values {
        let ok = alg.contains(v);
        all &= ok;
        report.record("values belong to the algebra", ok, || {
            format!("{v} ∉ {alg}")
        });
    }
    all
}

/// [`check_axioms_with`] for a concrete algebra. Samples outside the
/// algebra are reported as failures and excluded from the law checks.
pub fn check_axioms(alg: Algebra, samples: &[Value]) -> Report {
    let mut report = Report::new();
    let refs: Vec<&Value> = samples.iter().collect();
    membership(alg, &refs, &mut report);
    let valid: Vec<Value> = samples
        .iter()
        .filter(|v| alg.contains(v))
        .cloned()
        .collect();
    report.merge(check_axioms_with(&alg, &valid));
    report
}

fn permutations<E>(t: &(E, E, E)) -> [(&E, &E, &E); 6] {
    let (a, b, c) = (&t.0, &t.1, &t.2);
    [
        (a, b, c),
        (a, c, b),
        (b, a, c),
        (b, c, a),
        (c, a, b),
        (c, b, a),
    ]
}

/// Searches for a violation of modularity: `v R v'` but neither `w R v'`
/// nor `v R w`. Every permutation of every triple is tried; the witness is
/// returned as `(w, v, v')`.
pub fn check_modular_with<E, R>(relation: R, triples: &[(E, E, E)]) -> Option<(E, E, E)>
where
    E: Clone,
    R: Fn(&E, &E) -> bool,
{
    for t in triples {
        for (w, v, v2) in permutations(t) {
            if relation(v, v2) && !(relation(w, v2) || relation(v, w)) {
                return Some((w.clone(), v.clone(), v2.clone()));
            }
        }
    }
    None
}

fn magnitude(alg: Algebra) -> impl Fn(&Value, &Value) -> bool {
    move |v, w| {
        alg.negligible(v, w)
            .expect("values checked against the algebra")
    }
}

/// Modularity of `≪≪` over the given triples.
pub fn check_modular(alg: Algebra, triples: &[(Value, Value, Value)]) -> Report {
    let mut report = Report::new();
    let (valid, _) = split_valid(alg, triples, &mut report);
    let witness = check_modular_with(magnitude(alg), &valid);
    report.record("≪≪ is modular", witness.is_none(), || {
        let (w, v, v2) = witness.clone().expect("failure has a witness");
        format!("w={w}, v={v}, v'={v2}: v ≪≪ v' but neither w ≪≪ v' nor v ≪≪ w")
    });
    report
}

fn split_valid(
    alg: Algebra,
    triples: &[(Value, Value, Value)],
    report: &mut Report,
) -> (Vec<(Value, Value, Value)>, usize) {
    let mut valid = Vec::with_capacity(triples.len());
    let mut rejected = 0;
    for t in triples {
        if membership(alg, &[&t.0, &t.1, &t.2], report) {
            valid.push(t.clone());
        } else {
            rejected += 1;
        }
    }
    (valid, rejected)
}

/// Transitivity, anti-symmetry, `≪≪ ⊆ ≤` and `≪`-extendibility of an
/// arbitrary relation standing in for `≪≪`, together with the order `cmp`.
///
/// Extendibility is checked in its weak form: `v ≤ x`, `x ≪≪ x'` and
/// `x' ≤ v'` imply `v ≪≪ v'`, over all 4-tuples drawn from each triple.
pub fn check_magnitude_order_with<E, R, C>(relation: R, cmp: C, triples: &[(E, E, E)]) -> Report
where
    E: PartialEq + fmt::Display,
    R: Fn(&E, &E) -> bool,
    C: Fn(&E, &E) -> Ordering,
{
    let mut report = Report::new();
    for t in triples {
        let items = [&t.0, &t.1, &t.2];
        for (a, b, c) in permutations(t) {
            let ok = !(relation(a, b) && relation(b, c)) || relation(a, c);
            report.record("≪≪ transitive", ok, || tuple(&[a, b, c]));
        }
        for a in items {
            for b in items {
                let ok = !(relation(a, b) && relation(b, a)) || a == b;
                report.record("≪≪ anti-symmetric", ok, || tuple(&[a, b]));
                let ok = !relation(a, b) || cmp(a, b) != Ordering::Greater;
                report.record("≪≪ refines ≤", ok, || tuple(&[a, b]));
            }
        }
        for v in items {
            for x in items {
                if cmp(v, x) == Ordering::Greater {
                    continue;
                }
                for x2 in items {
                    if !relation(x, x2) {
                        continue;
                    }
                    for v2 in items {
                        if cmp(x2, v2) == Ordering::Greater {
                            continue;
                        }
                        report.record("≪≪ is ≪-extendible", relation(v, v2), || {
                            format!("v={v}, x={x}, x'={x2}, v'={v2}")
                        });
                    }
                }
            }
        }
    }
    report.declare("≪≪ transitive");
    report.declare("≪≪ anti-symmetric");
    report.declare("≪≪ refines ≤");
    report.declare("≪≪ is ≪-extendible");
    report
}

/// [`check_magnitude_order_with`] instantiated with the algebra's own `≪≪`.
pub fn check_magnitude_order(alg: Algebra, triples: &[(Value, Value, Value)]) -> Report {
    let mut report = Report::new();
    let (valid, _) = split_valid(alg, triples, &mut report);
    report.merge(check_magnitude_order_with(
        magnitude(alg),
        |v, w| alg.cmp(v, w).expect("values checked against the algebra"),
        &valid,
    ));
    report
}
