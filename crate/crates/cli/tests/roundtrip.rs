//! Problem files survive print -> parse unchanged.

use heightforge::polynomial::MultiPoly;
use heightforge::{Rational, VectorQ};
use heightforge_cli::{parse_problem, Directive, ProblemFile, SubspaceKind, Task};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn poly(n: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), rational()), 0..5)
        .prop_map(move |terms| MultiPoly::from_terms(n, terms))
}

fn problem() -> impl Strategy<Value = ProblemFile> {
    (1usize..5).prop_flat_map(|n| {
        (
            prop::sample::select(Task::ALL.to_vec()),
            prop::collection::vec(poly(n), 0..3),
            prop::option::of(poly(n)),
            prop::option::of((any::<bool>(), prop::collection::vec(prop::collection::vec(rational(), n), 1..3))),
            prop::option::of(1..=n),
        )
            .prop_map(move |(task, polys, avoid, sub, lin)| {
                let mut d = vec![Directive::Task(task), Directive::Vars(n)];
                for (i, p) in polys.into_iter().enumerate() {
                    d.push(Directive::Poly { name: format!("F{}", i + 1), poly: p });
                }
                if let Some(j) = lin {
                    d.push(Directive::LinearVar(j));
                    d.push(Directive::IndexSet(vec![j]));
                }
                if let Some(p) = avoid {
                    d.push(Directive::Avoid(p));
                }
                if let Some((kernel, rows)) = sub {
                    let kind = if kernel { SubspaceKind::Kernel } else { SubspaceKind::Rows };
                    d.push(Directive::Subspace { kind, rows: rows.into_iter().map(VectorQ).collect() });
                }
                let lines = (1..=d.len()).collect();
                ProblemFile { directives: d, lines }
            })
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(p in problem()) {
        let text = p.to_string();
        let back = parse_problem(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, p);
    }
}
