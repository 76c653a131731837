//! Galois classification against a frozen list of every irreducible
//! non-`S5` monic quintic with coefficients in `[-3, 3]`, computed
//! independently with a computer algebra system.

use std::collections::BTreeMap;

use sievekit::instances::{
    degenerate_count_exact, galois_class, galois_class_by_census, galois_class_by_resolvent,
    CoefficientBox, GaloisClass, QuinticPoly,
};

const NON_S5: &[([i64; 5], GaloisClass)] = &[
    ([-3, -3, -1, 0, -3], GaloisClass::Alternating),
    ([-3, -2, 3, 1, -1], GaloisClass::SolvableEven),
    ([-3, -1, 2, 1, -1], GaloisClass::SolvableEven),
    ([-3, -1, 2, 2, -2], GaloisClass::Alternating),
    ([-3, 0, 1, 1, -1], GaloisClass::SolvableEven),
    ([-3, 1, -2, -3, -1], GaloisClass::Alternating),
    ([-3, 1, 0, -1, -1], GaloisClass::Frobenius20),
    ([-3, 1, 0, 1, -1], GaloisClass::SolvableEven),
    ([-3, 1, 2, -1, -2], GaloisClass::Alternating),
    ([-3, 2, -1, 1, -1], GaloisClass::SolvableEven),
    ([-3, 2, 1, 3, 1], GaloisClass::Alternating),
    ([-3, 3, -3, 3, 3], GaloisClass::Frobenius20),
    ([-3, 3, -2, 1, -1], GaloisClass::SolvableEven),
    ([-3, 3, -1, 2, 1], GaloisClass::SolvableEven),
    ([-3, 3, 1, 0, -3], GaloisClass::SolvableEven),
    ([-3, 3, 3, -1, 1], GaloisClass::SolvableEven),
    ([-2, -3, 0, 0, -1], GaloisClass::SolvableEven),
    ([-2, -2, 0, -1, -2], GaloisClass::Frobenius20),
    ([-2, -1, -3, -3, -1], GaloisClass::SolvableEven),
    ([-2, -1, -3, 2, -3], GaloisClass::Alternating),
    ([-2, -1, -2, -2, -3], GaloisClass::SolvableEven),
    ([-2, -1, 3, -1, 2], GaloisClass::Alternating),
    ([-2, 0, 3, -2, 1], GaloisClass::SolvableEven),
    ([-2, 1, 0, 2, -3], GaloisClass::SolvableEven),
    ([-2, 1, 1, -1, 1], GaloisClass::SolvableEven),
    ([-2, 1, 3, 0, 3], GaloisClass::Alternating),
    ([-2, 2, -1, 0, 1], GaloisClass::SolvableEven),
    ([-2, 3, -3, 1, 1], GaloisClass::SolvableEven),
    ([-2, 3, 0, -2, 1], GaloisClass::SolvableEven),
    ([-2, 3, 1, -1, -1], GaloisClass::SolvableEven),
    ([-1, -3, -3, -2, -1], GaloisClass::SolvableEven),
    ([-1, -3, 2, 3, -1], GaloisClass::SolvableEven),
    ([-1, -2, -1, 1, -1], GaloisClass::Alternating),
    ([-1, -2, 1, 2, -3], GaloisClass::Frobenius20),
    ([-1, -2, 1, 3, -1], GaloisClass::SolvableEven),
    ([-1, -1, 0, 3, -1], GaloisClass::SolvableEven),
    ([-1, -1, 3, 2, 1], GaloisClass::SolvableEven),
    ([-1, 0, -1, 3, -1], GaloisClass::SolvableEven),
    ([-1, 0, 1, 3, 1], GaloisClass::Frobenius20),
    ([-1, 0, 2, -2, 2], GaloisClass::Alternating),
    ([-1, 0, 3, -1, 2], GaloisClass::SolvableEven),
    ([-1, 1, -2, 3, -1], GaloisClass::SolvableEven),
    ([-1, 1, 1, -2, 1], GaloisClass::SolvableEven),
    ([-1, 1, 2, 1, -1], GaloisClass::Alternating),
    ([-1, 1, 3, 2, 3], GaloisClass::SolvableEven),
    ([-1, 2, -3, 3, -1], GaloisClass::SolvableEven),
    ([-1, 2, -1, 1, 2], GaloisClass::SolvableEven),
    ([-1, 3, -3, 2, 2], GaloisClass::SolvableEven),
    ([-1, 3, 2, -1, 3], GaloisClass::SolvableEven),
    ([-1, 3, 3, -3, 1], GaloisClass::SolvableEven),
    ([0, -3, -1, 1, -3], GaloisClass::Alternating),
    ([0, -3, 1, 1, 3], GaloisClass::Alternating),
    ([0, -2, -2, 3, 2], GaloisClass::Alternating),
    ([0, -2, 2, 3, -2], GaloisClass::Alternating),
    ([0, -1, -2, -2, -1], GaloisClass::SolvableEven),
    ([0, -1, 2, -2, 1], GaloisClass::SolvableEven),
    ([0, 0, -3, 2, 1], GaloisClass::SolvableEven),
    ([0, 0, -1, -2, -3], GaloisClass::Alternating),
    ([0, 0, 0, 0, -3], GaloisClass::Frobenius20),
    ([0, 0, 0, 0, -2], GaloisClass::Frobenius20),
    ([0, 0, 0, 0, 2], GaloisClass::Frobenius20),
    ([0, 0, 0, 0, 3], GaloisClass::Frobenius20),
    ([0, 0, 1, -2, 3], GaloisClass::Alternating),
    ([0, 0, 3, 2, -1], GaloisClass::SolvableEven),
    ([0, 1, -3, 0, 3], GaloisClass::Alternating),
    ([0, 1, -3, 1, -3], GaloisClass::SolvableEven),
    ([0, 1, 3, 0, -3], GaloisClass::Alternating),
    ([0, 1, 3, 1, 3], GaloisClass::SolvableEven),
    ([0, 2, -2, -1, 2], GaloisClass::Alternating),
    ([0, 2, -1, 2, -3], GaloisClass::SolvableEven),
    ([0, 2, 1, 2, 3], GaloisClass::SolvableEven),
    ([0, 2, 2, -1, -2], GaloisClass::Alternating),
    ([0, 3, -1, 3, 3], GaloisClass::SolvableEven),
    ([0, 3, 1, 3, -3], GaloisClass::SolvableEven),
    ([1, -3, -2, 3, 1], GaloisClass::SolvableEven),
    ([1, -3, 3, -2, 1], GaloisClass::SolvableEven),
    ([1, -2, -1, 2, 3], GaloisClass::Frobenius20),
    ([1, -2, -1, 3, 1], GaloisClass::SolvableEven),
    ([1, -2, 1, 1, 1], GaloisClass::Alternating),
    ([1, -1, -3, 2, -1], GaloisClass::SolvableEven),
    ([1, -1, 0, 3, 1], GaloisClass::SolvableEven),
    ([1, 0, -3, -1, -2], GaloisClass::SolvableEven),
    ([1, 0, -2, -2, -2], GaloisClass::Alternating),
    ([1, 0, -1, 3, -1], GaloisClass::Frobenius20),
    ([1, 0, 1, 3, 1], GaloisClass::SolvableEven),
    ([1, 1, -3, 2, -3], GaloisClass::SolvableEven),
    ([1, 1, -2, 1, 1], GaloisClass::Alternating),
    ([1, 1, -1, -2, -1], GaloisClass::SolvableEven),
    ([1, 1, 2, 3, 1], GaloisClass::SolvableEven),
    ([1, 2, 1, 1, -2], GaloisClass::SolvableEven),
    ([1, 2, 3, 3, 1], GaloisClass::SolvableEven),
    ([1, 3, -3, -3, -1], GaloisClass::SolvableEven),
    ([1, 3, -2, -1, -3], GaloisClass::SolvableEven),
    ([1, 3, 3, 2, -2], GaloisClass::SolvableEven),
    ([2, -3, 0, 0, 1], GaloisClass::SolvableEven),
    ([2, -2, 0, -1, 2], GaloisClass::Frobenius20),
    ([2, -1, -3, -1, -2], GaloisClass::Alternating),
    ([2, -1, 2, -2, 3], GaloisClass::SolvableEven),
    ([2, -1, 3, -3, 1], GaloisClass::SolvableEven),
    ([2, -1, 3, 2, 3], GaloisClass::Alternating),
    ([2, 0, -3, -2, -1], GaloisClass::SolvableEven),
    ([2, 1, -3, 0, -3], GaloisClass::Alternating),
    ([2, 1, -1, -1, -1], GaloisClass::SolvableEven),
    ([2, 1, 0, 2, 3], GaloisClass::SolvableEven),
    ([2, 2, 1, 0, -1], GaloisClass::SolvableEven),
    ([2, 3, -1, -1, 1], GaloisClass::SolvableEven),
    ([2, 3, 0, -2, -1], GaloisClass::SolvableEven),
    ([2, 3, 3, 1, -1], GaloisClass::SolvableEven),
    ([3, -3, 1, 0, 3], GaloisClass::Alternating),
    ([3, -2, -3, 1, 1], GaloisClass::SolvableEven),
    ([3, -1, -2, 1, 1], GaloisClass::SolvableEven),
    ([3, -1, -2, 2, 2], GaloisClass::Alternating),
    ([3, 0, -1, 1, 1], GaloisClass::SolvableEven),
    ([3, 1, -2, -1, 2], GaloisClass::Alternating),
    ([3, 1, 0, -1, 1], GaloisClass::Frobenius20),
    ([3, 1, 0, 1, 1], GaloisClass::SolvableEven),
    ([3, 1, 2, -3, 1], GaloisClass::Alternating),
    ([3, 2, -1, 3, -1], GaloisClass::Alternating),
    ([3, 2, 1, 1, 1], GaloisClass::SolvableEven),
    ([3, 3, -3, -1, -1], GaloisClass::SolvableEven),
    ([3, 3, -1, 0, 3], GaloisClass::SolvableEven),
    ([3, 3, 1, 2, -1], GaloisClass::SolvableEven),
    ([3, 3, 2, 1, 1], GaloisClass::SolvableEven),
    ([3, 3, 3, 3, -3], GaloisClass::Frobenius20),
];

fn in_cube(c: &[i64; 5], r: i64) -> bool {
    c.iter().all(|x| x.abs() <= r)
}

#[test]
fn census_of_small_box() {
    let bx = CoefficientBox::cube(-2, 2).unwrap();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut exceptional = Vec::new();
    for f in bx.iter() {
        let class = galois_class(&f);
        let key = match class {
            GaloisClass::ZeroDiscriminant => "disc0",
            GaloisClass::Reducible => "reducible",
            GaloisClass::Symmetric => "s5",
            _ => {
                exceptional.push((f.coeffs, class));
                "other"
            }
        };
        *counts.entry(key).or_default() += 1;
    }
    assert_eq!(counts["disc0"], 173);
    assert_eq!(counts["reducible"], 1140);
    assert_eq!(counts["other"], 22);
    let expected: Vec<_> = NON_S5
        .iter()
        .filter(|(c, _)| in_cube(c, 2))
        .cloned()
        .collect();
    assert_eq!(exceptional, expected);
}

#[test]
fn resolvent_route_matches_census_route() {
    let bx = CoefficientBox::cube(-2, 2).unwrap();
    for f in bx.iter() {
        let by_resolvent = galois_class_by_resolvent(&f);
        assert_eq!(by_resolvent, galois_class(&f), "{f}");
        if let Some(c) = galois_class_by_census(&f, 200) {
            assert_eq!(c, by_resolvent, "{f}");
        }
    }
}

#[test]
fn non_s5_list_of_larger_box() {
    let bx = CoefficientBox::cube(-3, 3).unwrap();
    let found: Vec<([i64; 5], GaloisClass)> = bx
        .iter()
        .filter_map(|f| {
            let c = galois_class(&f);
            matches!(
                c,
                GaloisClass::Alternating | GaloisClass::SolvableEven | GaloisClass::Frobenius20
            )
            .then_some((f.coeffs, c))
        })
        .collect();
    assert_eq!(found, NON_S5);
    assert_eq!(degenerate_count_exact(&bx, 1 << 20).unwrap(), 5483);
}

#[test]
fn listed_classes_by_resolvent_alone() {
    for (c, class) in NON_S5 {
        assert_eq!(
            galois_class_by_resolvent(&QuinticPoly::new(*c)),
            *class,
            "{c:?}"
        );
    }
}
