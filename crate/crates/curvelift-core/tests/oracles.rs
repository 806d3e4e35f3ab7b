//! Counting cross-checks: the streamed enumeration, the census tallies, and
//! the dimension estimator are compared against independent brute-force
//! scans of the raw coefficient space, written here from scratch on plain
//! `u64` arithmetic (divisibility decided by enumerating candidate
//! quotients, never by the library's own division or gcd routines).

use std::collections::BTreeSet;

use curvelift_core::{
    census_strata, count_morphisms, enumerate_morphisms, estimate_dimension, stratum_dimension,
    CensusParams, DimensionKind, FieldSpec, ProjectivePoint, StratumLabel,
};

// --------------------------------------------------------------------------
// Test-local polynomial arithmetic: coefficient vectors over F_q, u-degree
// descending, entry j holding the coefficient of u^(deg−j) v^j.
// --------------------------------------------------------------------------

fn convolve(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    out
}

/// Steps a base-q odometer; false once the vector wraps back to all zeros.
fn step(digits: &mut [u64], q: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// Does h divide f? Decided by trying every possible quotient.
fn divides(h: &[u64], f: &[u64], q: u64) -> bool {
    if f.len() < h.len() {
        return false;
    }
    let mut g = vec![0u64; f.len() - h.len() + 1];
    loop {
        if convolve(h, &g, q) == f {
            return true;
        }
        if !step(&mut g, q) {
            return false;
        }
    }
}

/// All monic divisors of degree ≥ 1 (first nonzero coefficient 1).
fn monic_divisors(f: &[u64], q: u64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    for len in 2..=f.len() {
        let mut h = vec![0u64; len];
        loop {
            let monic = h
                .iter()
                .position(|&c| c != 0)
                .is_some_and(|pos| h[pos] == 1);
            if monic && divides(&h, f, q) {
                out.insert(h.clone());
            }
            if !step(&mut h, q) {
                break;
            }
        }
    }
    out
}

/// A coefficient tuple has degree exactly d when it is not identically zero
/// and its nonzero forms share no divisor of positive degree.
fn tuple_is_degree_exact(forms: &[Vec<u64>], q: u64) -> bool {
    let nonzero: Vec<&Vec<u64>> = forms
        .iter()
        .filter(|f| f.iter().any(|&c| c != 0))
        .collect();
    if nonzero.is_empty() {
        return false;
    }
    let mut common: Option<BTreeSet<Vec<u64>>> = None;
    for f in nonzero {
        let divs = monic_divisors(f, q);
        let next = match common {
            None => divs,
            Some(c) => c.intersection(&divs).cloned().collect(),
        };
        if next.is_empty() {
            return true;
        }
        common = Some(next);
    }
    false
}

/// Counts degree-exactly-d coefficient tuples by scanning all q^((n+1)(d+1))
/// raw tuples.
fn raw_degree_exact_count(n: usize, d: usize, q: u64) -> u64 {
    let len = (n + 1) * (d + 1);
    let mut digits = vec![0u64; len];
    let mut count = 0u64;
    loop {
        let forms: Vec<Vec<u64>> = digits.chunks(d + 1).map(<[u64]>::to_vec).collect();
        if tuple_is_degree_exact(&forms, q) {
            count += 1;
        }
        if !step(&mut digits, q) {
            break;
        }
    }
    count
}

fn fq_point(q: u64, coords: &[i64]) -> ProjectivePoint {
    ProjectivePoint::from_ints(FieldSpec::prime(q).unwrap(), coords).unwrap()
}

// --------------------------------------------------------------------------
// Cross-checks
// --------------------------------------------------------------------------

#[test]
fn raw_scans_agree_with_streamed_enumeration() {
    // Every morphism corresponds to exactly q−1 raw tuples (the scalar
    // rescalings of its canonical tuple).
    for &(n, d, q) in &[(1, 1, 2), (1, 2, 2), (1, 3, 2), (2, 1, 2), (2, 1, 3), (2, 2, 2)] {
        let raw = raw_degree_exact_count(n, d, q);
        let streamed = enumerate_morphisms(n, d, q, 1 << 30).unwrap().count() as u64;
        let counted = count_morphisms(n, d, q, 1 << 30).unwrap();
        assert_eq!(raw, (q - 1) * streamed, "raw scan at (n,d,q)=({n},{d},{q})");
        assert_eq!(streamed, counted, "parallel count at (n,d,q)=({n},{d},{q})");
    }
    // Closed forms where they are known: self-maps of P¹ of degree d number
    // q^(2d+1) − q^(2d−1); degree-1 maps to P² number (q³−1)(q³−q)/(q−1).
    for d in 1..=3usize {
        let expected = 2u64.pow(2 * d as u32 + 1) - 2u64.pow(2 * d as u32 - 1);
        assert_eq!(count_morphisms(1, d, 2, 1 << 30).unwrap(), expected);
    }
    assert_eq!(count_morphisms(2, 1, 2, 1 << 30).unwrap(), 42);
    assert_eq!(count_morphisms(2, 1, 3, 1 << 30).unwrap(), 312);
}

#[test]
fn canonical_tuples_split_into_morphisms_and_degenerations() {
    // Over F_2 the canonical tuples are exactly the nonzero raw tuples:
    // (2⁶−1)/(2−1) = 63 of them for (n,d) = (2,1), splitting as 42 honest
    // degree-1 morphisms plus 21 tuples with a common factor.
    let enumeration = enumerate_morphisms(2, 1, 2, 1 << 30).unwrap();
    assert_eq!(enumeration.canonical_tuple_count(), 63);
    assert_eq!(enumeration.count(), 42);
    assert_eq!(raw_degree_exact_count(2, 1, 2), 42);
    // 63 − 42 = 21 degenerate tuples, confirmed by the raw scan.
    let len = 6;
    let mut digits = vec![0u64; len];
    let mut degenerate = 0u64;
    loop {
        let forms: Vec<Vec<u64>> = digits.chunks(2).map(<[u64]>::to_vec).collect();
        let nonzero = digits.iter().any(|&c| c != 0);
        if nonzero && !tuple_is_degree_exact(&forms, 2) {
            degenerate += 1;
        }
        if !step(&mut digits, 2) {
            break;
        }
    }
    assert_eq!(degenerate, 21);
}

#[test]
fn conic_census_passes_all_verdicts() {
    // Degree-2 maps to P² over F_2 with one blown-up point: every verdict
    // must hold and the total must match the independent count.
    let params = CensusParams::new(2, 2, 2, vec![fq_point(2, &[1, 0, 0])]);
    let report = census_strata(&params).unwrap();
    assert!(report.verdicts.all_true(), "{:?}", report.counterexample);
    assert_eq!(report.total, count_morphisms(2, 2, 2, 1 << 30).unwrap());
    let sum: u64 = report.strata.values().sum();
    assert_eq!(sum, report.total);
    for label in report.strata.keys() {
        match label {
            StratumLabel::Interior { d, m } => {
                assert_eq!(*d, 2);
                assert!(m.iter().all(|&mi| mi <= 2));
            }
            other => panic!("unexpected label {other}"),
        }
    }
}

#[test]
fn two_point_degree_two_census_is_symmetric() {
    let e0 = fq_point(2, &[1, 0, 0]);
    let e1 = fq_point(2, &[0, 1, 0]);
    let forward = census_strata(&CensusParams::new(2, 2, 2, vec![e0.clone(), e1.clone()]))
        .unwrap();
    let reversed = census_strata(&CensusParams::new(2, 2, 2, vec![e1, e0])).unwrap();
    assert!(forward.verdicts.all_true(), "{:?}", forward.counterexample);
    assert!(reversed.verdicts.all_true(), "{:?}", reversed.counterexample);
    assert_eq!(forward.total, reversed.total);
    // Swapping the marked points permutes the multiplicity vectors.
    for (label, count) in &forward.strata {
        let StratumLabel::Interior { d, m } = label else {
            panic!("unexpected label {label}");
        };
        let swapped = StratumLabel::Interior {
            d: *d,
            m: vec![m[1], m[0]],
        };
        assert_eq!(reversed.strata.get(&swapped), Some(count), "{label}");
    }
}

#[test]
fn estimator_reproduces_stratum_dimensions_from_censuses() {
    // Count the same strata at q = 2 and q = 3 and feed the growth rates to
    // the estimator; it should land on the dimension formulas exactly.
    let mut missing = std::collections::BTreeMap::new();
    let mut through = std::collections::BTreeMap::new();
    for q in [2u64, 3] {
        let params = CensusParams::new(2, 1, q, vec![fq_point(q, &[1, 0, 0])]);
        let report = census_strata(&params).unwrap();
        let get = |m: Vec<usize>| {
            report
                .strata
                .get(&StratumLabel::Interior { d: 1, m })
                .copied()
                .unwrap()
        };
        missing.insert(q, get(vec![0]));
        through.insert(q, get(vec![1]));
    }
    assert_eq!(missing[&2], 24);
    assert_eq!(missing[&3], 216);
    assert_eq!(through[&2], 18);
    assert_eq!(through[&3], 96);

    let open = stratum_dimension(&StratumLabel::Interior { d: 1, m: vec![0] }, 2).unwrap();
    assert_eq!(open.kind, DimensionKind::Exact);
    assert_eq!(estimate_dimension(&missing).unwrap(), open.value as i64);

    let incident = stratum_dimension(&StratumLabel::Interior { d: 1, m: vec![1] }, 2).unwrap();
    assert_eq!(incident.kind, DimensionKind::UpperBound);
    assert_eq!(estimate_dimension(&through).unwrap(), incident.value as i64);
}
