//! End-to-end acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line
//! naming what it established; a `[FAIL]` line is followed by the explicit
//! counterexamples and the test panics. Tolerances are pinned in the
//! assertions themselves (everything is exact arithmetic except the
//! dimension estimator, which is allowed ±1).

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curvelift_cli::parse;
use curvelift_core::{
    census_strata, count_morphisms, enumerate_morphisms, estimate_dimension, stratum_dimension,
    BinaryForm, BlowupConfig, CensusParams, CensusReport, DimensionKind, FieldSpec, MorphismP1,
    ProjLinearMap, ProjectivePoint, Scalar, StratumLabel,
};

// ---------------------------------------------------------------------------
// Shared machinery
// ---------------------------------------------------------------------------

fn conclude(name: &str, violations: Vec<String>) {
    if violations.is_empty() {
        println!("[PASS] {name}");
    } else {
        println!("[FAIL] {name}: {} violation(s)", violations.len());
        for v in &violations {
            println!("  - {v}");
        }
        panic!(
            "{name}: {} violation(s):\n  {}",
            violations.len(),
            violations.join("\n  ")
        );
    }
}

/// The desk-scale verification grid: n = 2, d ∈ {1,2}, q ∈ {2,3}, blown up
/// at the first r ∈ {1,2} standard coordinate points.
struct DeskRuns {
    reports: Vec<CensusReport>,
    elapsed: Duration,
}

static DESK_RUNS: OnceLock<DeskRuns> = OnceLock::new();

fn desk_runs() -> &'static DeskRuns {
    DESK_RUNS.get_or_init(|| {
        let start = Instant::now();
        let mut reports = Vec::new();
        for d in [1usize, 2] {
            for q in [2u64, 3] {
                let field = FieldSpec::prime(q).unwrap();
                let e0 = ProjectivePoint::from_ints(field, &[1, 0, 0]).unwrap();
                let e1 = ProjectivePoint::from_ints(field, &[0, 1, 0]).unwrap();
                for r in [1usize, 2] {
                    let points = if r == 1 {
                        vec![e0.clone()]
                    } else {
                        vec![e0.clone(), e1.clone()]
                    };
                    let params = CensusParams::new(2, d, q, points);
                    reports.push(census_strata(&params).expect("desk census"));
                }
            }
        }
        DeskRuns {
            reports,
            elapsed: start.elapsed(),
        }
    })
}

fn run_tag(report: &CensusReport) -> String {
    format!(
        "(n=2, d={}, q={}, r={})",
        report.params.d,
        report.params.q,
        report.params.points.len()
    )
}

fn random_scalar(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    field.integer(rng.gen_range(-9i64..=9))
}

/// A random morphism of exact degree d to Pⁿ (resamples until the random
/// coefficients survive normalization with full degree).
fn random_morphism(field: FieldSpec, n: usize, d: usize, rng: &mut ChaCha8Rng) -> MorphismP1 {
    loop {
        let forms: Vec<BinaryForm> = (0..=n)
            .map(|_| {
                let coeffs: Vec<Scalar> = (0..=d).map(|_| random_scalar(field, rng)).collect();
                BinaryForm::from_coeffs(field, coeffs).unwrap()
            })
            .collect();
        if let Ok(f) = MorphismP1::new(field, forms) {
            if f.degree() == d {
                return f;
            }
        }
    }
}

fn random_point(field: FieldSpec, dim: usize, rng: &mut ChaCha8Rng) -> ProjectivePoint {
    loop {
        let coords: Vec<i64> = (0..=dim).map(|_| rng.gen_range(-9i64..=9)).collect();
        if let Ok(p) = ProjectivePoint::from_ints(field, &coords) {
            return p;
        }
    }
}

fn random_matrix(field: FieldSpec, dim: usize, rng: &mut ChaCha8Rng) -> ProjLinearMap {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..=dim)
            .map(|_| (0..=dim).map(|_| random_scalar(field, rng)).collect())
            .collect();
        if let Ok(a) = ProjLinearMap::new(field, rows) {
            return a;
        }
    }
}

/// A random degree-1 self-map of P¹ (a Möbius reparametrization).
fn random_mobius(field: FieldSpec, rng: &mut ChaCha8Rng) -> MorphismP1 {
    loop {
        let rows: Vec<Vec<i64>> = (0..2)
            .map(|_| (0..2).map(|_| rng.gen_range(-9i64..=9)).collect())
            .collect();
        let forms: Vec<BinaryForm> = rows
            .iter()
            .map(|r| {
                let coeffs: Vec<Scalar> = r.iter().map(|&k| field.integer(k)).collect();
                BinaryForm::from_coeffs(field, coeffs).unwrap()
            })
            .collect();
        if let Ok(g) = MorphismP1::new(field, forms) {
            if g.degree() == 1 {
                return g;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 1. Every morphism in exactly one stratum; totals add up; multiplicity sums
//    stay within the degree.
// ---------------------------------------------------------------------------

#[test]
fn partition_census_covers_every_morphism_exactly_once() {
    let runs = desk_runs();
    let mut violations = Vec::new();
    if runs.elapsed > Duration::from_secs(60) {
        violations.push(format!(
            "desk-scale grid took {:?}, budget is 60 s",
            runs.elapsed
        ));
    }
    for report in &runs.reports {
        let tag = run_tag(report);
        if !report.verdicts.disjoint {
            violations.push(format!(
                "{tag}: a morphism failed unique classification: {:?}",
                report.counterexample
            ));
        }
        if !report.verdicts.exhaustive {
            violations.push(format!(
                "{tag}: strata counts do not sum to the total: {:?}",
                report.counterexample
            ));
        }
        let expected =
            count_morphisms(report.params.n, report.params.d, report.params.q, u64::MAX >> 1)
                .unwrap();
        if report.total != expected {
            violations.push(format!(
                "{tag}: census total {} but independent count {expected}",
                report.total
            ));
        }
        for (label, count) in &report.strata {
            let StratumLabel::Interior { d, m } = label else {
                violations.push(format!("{tag}: unexpected stratum {label}"));
                continue;
            };
            let sum: usize = m.iter().sum();
            if sum > *d {
                violations.push(format!(
                    "{tag}: stratum {label} holds {count} morphisms with multiplicity sum {sum} > degree {d}"
                ));
            }
        }
    }
    conclude(
        "partition: unique classification, exact totals, multiplicity sums within degree",
        violations,
    );
}

// ---------------------------------------------------------------------------
// 2. Lifting is a bijection: always defined off constants, undone by
//    projection, injective.
// ---------------------------------------------------------------------------

#[test]
fn lifting_is_a_bijection_on_enumerated_morphisms() {
    let runs = desk_runs();
    let mut violations = Vec::new();
    for report in &runs.reports {
        let tag = run_tag(report);
        if !report.verdicts.exhaustive {
            violations.push(format!("{tag}: some morphism failed to lift"));
        }
        if !report.verdicts.round_trip {
            violations.push(format!(
                "{tag}: projecting a lift did not return the original morphism: {:?}",
                report.counterexample
            ));
        }
        if !report.verdicts.lift_unique {
            violations.push(format!(
                "{tag}: two distinct morphisms shared a lift: {:?}",
                report.counterexample
            ));
        }
    }
    conclude(
        "lift bijection: defined everywhere, projection-inverse, injective",
        violations,
    );
}

// ---------------------------------------------------------------------------
// 3. Component degrees complement multiplicities: deg G⁽ⁱ⁾ = d − m_i on a
//    full independent re-enumeration of every desk-scale configuration.
// ---------------------------------------------------------------------------

#[test]
fn component_degrees_complement_multiplicities() {
    let mut violations = Vec::new();
    let mut checked = 0u64;
    let mut expected_checks = 0u64;
    for d in [1usize, 2] {
        for q in [2u64, 3] {
            let field = FieldSpec::prime(q).unwrap();
            let e0 = ProjectivePoint::from_ints(field, &[1, 0, 0]).unwrap();
            let e1 = ProjectivePoint::from_ints(field, &[0, 1, 0]).unwrap();
            for r in [1usize, 2] {
                let points: Vec<ProjectivePoint> = [e0.clone(), e1.clone()][..r].to_vec();
                let config = BlowupConfig::new(field, 2, points.clone()).unwrap();
                expected_checks +=
                    count_morphisms(2, d, q, u64::MAX >> 1).unwrap() * r as u64;
                for f in enumerate_morphisms(2, d, q, u64::MAX >> 1).unwrap() {
                    let lifted = config.lift(&f).expect("lift of a non-constant morphism");
                    for (idx, point) in points.iter().enumerate() {
                        let m = f.parametric_multiplicity(point).unwrap();
                        let deg_g = lifted.component_degree(idx);
                        if deg_g != d - m {
                            violations.push(format!(
                                "(d={d}, q={q}, r={r}) {f}: at {point} component degree {deg_g} ≠ {d} − {m}"
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_eq!(
        checked, expected_checks,
        "the sweep must visit every enumerated morphism at every blown-up point"
    );
    conclude(
        "degree law: component degree equals morphism degree minus multiplicity on every lift",
        violations,
    );
}

// ---------------------------------------------------------------------------
// 4. Counting oracles: closed-form morphism counts and the line census.
// ---------------------------------------------------------------------------

#[test]
fn enumeration_and_census_match_counting_oracles() {
    let mut violations = Vec::new();
    let self_maps = enumerate_morphisms(1, 1, 2, 1 << 30).unwrap().count();
    if self_maps != 6 {
        violations.push(format!("degree-1 self-maps of P¹ over F₂: {self_maps} ≠ 6"));
    }
    let lines = enumerate_morphisms(2, 1, 2, 1 << 30).unwrap().count();
    if lines != 42 {
        violations.push(format!(
            "degree-1 morphisms to P² over F₂: {lines} ≠ 42 = (q³−1)(q³−q)/(q−1)"
        ));
    }
    let field = FieldSpec::prime(2).unwrap();
    let e0 = ProjectivePoint::from_ints(field, &[1, 0, 0]).unwrap();
    let report = census_strata(&CensusParams::new(2, 1, 2, vec![e0])).unwrap();
    let mut expected = BTreeMap::new();
    expected.insert(StratumLabel::Interior { d: 1, m: vec![0] }, 24u64);
    expected.insert(StratumLabel::Interior { d: 1, m: vec![1] }, 18u64);
    if report.strata != expected {
        violations.push(format!(
            "line census at one point: {:?} ≠ {{m=(0): 24, m=(1): 18}}",
            report.strata
        ));
    }
    conclude(
        "counting oracles: 6 and 42 enumerated morphisms, 24/18 line census",
        violations,
    );
}

// ---------------------------------------------------------------------------
// 5. Dimension formulas, the point-count estimator, and strict count drop on
//    incidence.
// ---------------------------------------------------------------------------

#[test]
fn dimension_formulas_estimator_and_count_monotonicity() {
    let mut violations = Vec::new();

    let full = |d: usize| StratumLabel::Interior { d, m: vec![0] };
    let conic_dim = stratum_dimension(&full(2), 2).unwrap();
    if conic_dim.kind != DimensionKind::Exact || conic_dim.value != 8 {
        violations.push(format!("open conic stratum dimension: {:?} ≠ exact 8", conic_dim));
    }
    let line_dim = stratum_dimension(&full(1), 2).unwrap();
    if line_dim.kind != DimensionKind::Exact || line_dim.value != 5 {
        violations.push(format!("open line stratum dimension: {:?} ≠ exact 5", line_dim));
    }

    let counts: BTreeMap<u64, u64> = [(2u64, 24u64), (3, 216)].into();
    let estimate = estimate_dimension(&counts).unwrap();
    if (estimate - 5).abs() > 1 {
        violations.push(format!(
            "estimator on counts 24@q=2, 216@q=3: {estimate} outside 5 ± 1"
        ));
    }

    // Strict drop: wherever the open stratum is non-empty, every stratum
    // with a nonzero multiplicity vector must be strictly smaller.
    for report in &desk_runs().reports {
        let tag = run_tag(report);
        let d = report.params.d;
        let r = report.params.points.len();
        let open = report
            .strata
            .get(&StratumLabel::Interior { d, m: vec![0; r] })
            .copied()
            .unwrap_or(0);
        if open == 0 {
            continue;
        }
        for (label, &count) in &report.strata {
            let StratumLabel::Interior { m, .. } = label else {
                continue;
            };
            if m.iter().all(|&mi| mi == 0) {
                continue;
            }
            if open <= count {
                violations.push(format!(
                    "{tag}: open stratum has {open} points but {label} has {count} — no strict drop"
                ));
            }
        }
    }
    conclude(
        "dimensions: formula values 8 and 5, estimator within ±1, strict count drop on incidence",
        violations,
    );
}

// ---------------------------------------------------------------------------
// 6. Multiplicity and degree double under the squaring reparametrization.
// ---------------------------------------------------------------------------

#[test]
fn multiplicity_doubles_under_the_squaring_cover() {
    let start = Instant::now();
    let field = FieldSpec::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let one = field.one();
    let squaring = MorphismP1::new(
        field,
        vec![
            BinaryForm::monomial(field, 2, 0, one.clone()).unwrap(),
            BinaryForm::monomial(field, 2, 2, one).unwrap(),
        ],
    )
    .unwrap();
    let mut violations = Vec::new();
    for trial in 0..200 {
        let n = rng.gen_range(1usize..=3);
        let d = rng.gen_range(1usize..=3);
        let f = random_morphism(field, n, d, &mut rng);
        let pulled = f.reparametrize(&squaring).unwrap();
        if pulled.degree() != 2 * f.degree() {
            violations.push(format!(
                "trial {trial}: degree of {f} went to {} ≠ 2·{}",
                pulled.degree(),
                f.degree()
            ));
        }
        // Probe points: guaranteed image points plus a random one.
        let mut probes = Vec::new();
        for coords in [[1i64, 0], [0, 1], [1, 1]] {
            let a = ProjectivePoint::from_ints(field, &coords).unwrap();
            probes.push(f.eval(&a).unwrap());
        }
        probes.push(random_point(field, n, &mut rng));
        for p in probes {
            let base = f.parametric_multiplicity(&p).unwrap();
            let doubled = pulled.parametric_multiplicity(&p).unwrap();
            if doubled != 2 * base {
                violations.push(format!(
                    "trial {trial}: multiplicity of {f} at {p} went {base} → {doubled} ≠ 2·{base}"
                ));
            }
        }
        if violations.len() > 8 {
            break;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(5) {
        violations.push(format!("200 trials took {elapsed:?}, budget is 5 s"));
    }
    conclude(
        "multiplicativity: squaring cover doubles degree and every parametric multiplicity",
        violations,
    );
}

// ---------------------------------------------------------------------------
// 7. Multiplicity is blind to source reparametrization and equivariant under
//    target changes of coordinates.
// ---------------------------------------------------------------------------

#[test]
fn multiplicity_survives_source_and_target_changes() {
    let mut violations = Vec::new();
    for (field, seed) in [
        (FieldSpec::Rationals, 0x5eed_0007u64),
        (FieldSpec::prime(5).unwrap(), 0x5eed_0057u64),
    ] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..500 {
            let d = rng.gen_range(1usize..=2);
            let f = random_morphism(field, 2, d, &mut rng);
            // Half the probes sit on the image so nonzero multiplicities
            // are exercised; half are generic.
            let p = if rng.gen_bool(0.5) {
                let a = random_point(field, 1, &mut rng);
                f.eval(&a).unwrap()
            } else {
                random_point(field, 2, &mut rng)
            };
            let m = f.parametric_multiplicity(&p).unwrap();

            let mobius = random_mobius(field, &mut rng);
            let re = f.reparametrize(&mobius).unwrap();
            let m_re = re.parametric_multiplicity(&p).unwrap();
            if m_re != m {
                violations.push(format!(
                    "{field} trial {trial}: reparametrizing {f} by {mobius} moved m from {m} to {m_re}"
                ));
            }

            let a = random_matrix(field, 2, &mut rng);
            let moved = f.transform(&a).unwrap();
            let m_moved = moved.parametric_multiplicity(&a.apply(&p).unwrap()).unwrap();
            if m_moved != m {
                violations.push(format!(
                    "{field} trial {trial}: target change moved m at {p} from {m} to {m_moved}"
                ));
            }
            if violations.len() > 8 {
                break;
            }
        }
    }
    conclude(
        "invariance: multiplicity unchanged by Möbius reparametrization and target coordinates",
        violations,
    );
}

// ---------------------------------------------------------------------------
// 8. GCD agrees with exhaustive divisor search on every small form pair.
// ---------------------------------------------------------------------------

mod divisor_search {
    /// Steps a base-q odometer; false once it wraps to all zeros.
    pub fn step(digits: &mut [u64], q: u64) -> bool {
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q {
                return true;
            }
            *d = 0;
        }
        false
    }

    fn convolve(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % q;
            }
        }
        out
    }

    /// Does h divide f over F_q? Tries every candidate quotient.
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

    /// All monic divisors of degree ≥ 1 of a nonzero coefficient vector.
    pub fn monic_divisors(f: &[u64], q: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for len in 2..=f.len() {
            let mut h = vec![0u64; len];
            loop {
                let monic = h
                    .iter()
                    .position(|&c| c != 0)
                    .is_some_and(|pos| h[pos] == 1);
                if monic && divides(&h, f, q) {
                    out.push(h.clone());
                }
                if !step(&mut h, q) {
                    break;
                }
            }
        }
        out
    }
}

#[test]
fn gcd_matches_exhaustive_divisor_search() {
    let start = Instant::now();
    let mut violations = Vec::new();
    for (q, max_degree) in [(2u64, 4usize), (3, 3)] {
        let field = FieldSpec::prime(q).unwrap();
        // Every nonzero coefficient vector of each degree, with its
        // brute-force divisor list.
        let mut forms: Vec<(Vec<u64>, BinaryForm, Vec<Vec<u64>>)> = Vec::new();
        for degree in 0..=max_degree {
            let mut digits = vec![0u64; degree + 1];
            loop {
                if digits.iter().any(|&c| c != 0) {
                    let coeffs: Vec<Scalar> =
                        digits.iter().map(|&c| field.integer(c as i64)).collect();
                    let form = BinaryForm::from_coeffs(field, coeffs).unwrap();
                    let divisors = divisor_search::monic_divisors(&digits, q);
                    forms.push((digits.clone(), form, divisors));
                }
                if !divisor_search::step(&mut digits, q) {
                    break;
                }
            }
        }
        for (da, fa, divs_a) in &forms {
            for (db, fb, divs_b) in &forms {
                // Brute-force gcd: the unique maximal-degree common monic
                // divisor, or the constant 1 when the lists are disjoint.
                let common: Vec<&Vec<u64>> =
                    divs_a.iter().filter(|h| divs_b.contains(h)).collect();
                let brute: Option<&Vec<u64>> =
                    common.iter().max_by_key(|h| h.len()).copied();
                if let Some(best) = brute {
                    let at_max: Vec<&&Vec<u64>> =
                        common.iter().filter(|h| h.len() == best.len()).collect();
                    if at_max.len() != 1 {
                        violations.push(format!(
                            "F{q}: {da:?} vs {db:?}: {} maximal common divisors",
                            at_max.len()
                        ));
                        continue;
                    }
                }
                let library = fa.gcd(fb).unwrap();
                let expected = match brute {
                    Some(h) => {
                        let coeffs: Vec<Scalar> =
                            h.iter().map(|&c| field.integer(c as i64)).collect();
                        BinaryForm::from_coeffs(field, coeffs).unwrap()
                    }
                    None => BinaryForm::constant(field.one()),
                };
                if library != expected {
                    violations.push(format!(
                        "F{q}: gcd({fa}, {fb}) = {library} but divisor search says {expected}"
                    ));
                }
                if violations.len() > 8 {
                    break;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        violations.push(format!("divisor sweep took {elapsed:?}, budget is 10 s"));
    }
    conclude(
        "gcd oracle: library gcd equals exhaustive divisor search on all small pairs",
        violations,
    );
}

// ---------------------------------------------------------------------------
// 9. Text round-trips and the pinned command-line invocations.
// ---------------------------------------------------------------------------

fn random_form_text(field: FieldSpec, rng: &mut ChaCha8Rng) -> BinaryForm {
    let degree = rng.gen_range(0usize..=4);
    loop {
        let coeffs: Vec<Scalar> = (0..=degree)
            .map(|_| {
                let numerator = field.integer(rng.gen_range(-9i64..=9));
                if field == FieldSpec::Rationals && rng.gen_bool(0.3) {
                    let denominator = field.integer(rng.gen_range(2i64..=4));
                    numerator.div(&denominator).unwrap()
                } else {
                    numerator
                }
            })
            .collect();
        let form = BinaryForm::from_coeffs(field, coeffs).unwrap();
        // The zero form renders as "0" and parses back; keep some.
        if !form.is_zero() || rng.gen_bool(0.05) {
            return form;
        }
    }
}

#[test]
fn text_io_round_trips_on_generated_values() {
    let mut violations = Vec::new();
    for (field, seed) in [
        (FieldSpec::Rationals, 0x5eed_0009u64),
        (FieldSpec::prime(2).unwrap(), 0x5eed_0029u64),
        (FieldSpec::prime(5).unwrap(), 0x5eed_0059u64),
    ] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..1000 {
            let form = random_form_text(field, &mut rng);
            match parse::parse_form(field, &form.to_string()) {
                Ok(back) if back == form => {}
                Ok(back) => violations.push(format!(
                    "{field} trial {trial}: form '{form}' reparsed as '{back}'"
                )),
                Err(e) => violations.push(format!(
                    "{field} trial {trial}: form '{form}' failed to reparse: {e}"
                )),
            }

            let point = random_point(field, rng.gen_range(1usize..=3), &mut rng);
            match parse::parse_point(field, &point.to_string()) {
                Ok(back) if back == point => {}
                Ok(back) => violations.push(format!(
                    "{field} trial {trial}: point '{point}' reparsed as '{back}'"
                )),
                Err(e) => violations.push(format!(
                    "{field} trial {trial}: point '{point}' failed to reparse: {e}"
                )),
            }

            let n = rng.gen_range(1usize..=3);
            let d = rng.gen_range(1usize..=2);
            let f = random_morphism(field, n, d, &mut rng);
            match parse::parse_morphism(field, &f.to_string()) {
                Ok((back, None)) if back == f => {}
                Ok((back, factor)) => violations.push(format!(
                    "{field} trial {trial}: morphism '{f}' reparsed as '{back}' (factor {factor:?})"
                )),
                Err(e) => violations.push(format!(
                    "{field} trial {trial}: morphism '{f}' failed to reparse: {e}"
                )),
            }
            if violations.len() > 8 {
                break;
            }
        }
    }
    conclude(
        "text io: render∘parse identity on 1000 forms, points, morphisms per field",
        violations,
    );
}

#[test]
fn pinned_invocations_are_byte_exact() {
    let bin = env!("CARGO_BIN_EXE_curvelift");
    let mut violations = Vec::new();

    let classify = Command::new(bin)
        .args([
            "classify",
            "--field",
            "Q",
            "--map",
            "(u^2:u*v:v^2)",
            "--points",
            "(1:0:0)",
            "--output",
            "json",
        ])
        .output()
        .expect("run classify");
    let expected_classify =
        b"{\"stratum\":{\"kind\":\"interior\",\"d\":2,\"m\":[1]},\"components\":[[\"u\",\"v\"]]}\n";
    if classify.stdout != expected_classify {
        violations.push(format!(
            "classify stdout: {:?}",
            String::from_utf8_lossy(&classify.stdout)
        ));
    }
    if classify.status.code() != Some(0) {
        violations.push(format!("classify exit: {:?}", classify.status.code()));
    }

    let census_args = [
        "census", "--field", "F2", "--n", "2", "--d", "1", "--points", "(1:0:0)", "--output",
        "json",
    ];
    let census = Command::new(bin)
        .args(census_args)
        .output()
        .expect("run census");
    let expected_census = concat!(
        "{\"params\":{\"field\":\"F2\",\"n\":2,\"d\":1,\"points\":[\"(1:0:0)\"],",
        "\"max_exceptional_degree\":3,\"budget\":1000000000,\"shards\":0},",
        "\"total\":42,",
        "\"strata\":[{\"d\":1,\"m\":[0],\"count\":24},{\"d\":1,\"m\":[1],\"count\":18}],",
        "\"exceptional\":[{\"i\":1,\"e\":1,\"count\":6},{\"i\":1,\"e\":2,\"count\":24},",
        "{\"i\":1,\"e\":3,\"count\":96}],",
        "\"verdicts\":{\"disjoint\":true,\"exhaustive\":true,\"lift_unique\":true,",
        "\"round_trip\":true}}\n"
    );
    if census.stdout != expected_census.as_bytes() {
        violations.push(format!(
            "census stdout: {:?}",
            String::from_utf8_lossy(&census.stdout)
        ));
    }
    if census.status.code() != Some(0) {
        violations.push(format!("census exit: {:?}", census.status.code()));
    }
    // Determinism: an identical rerun produces identical bytes.
    let rerun = Command::new(bin)
        .args(census_args)
        .output()
        .expect("rerun census");
    if rerun.stdout != census.stdout {
        violations.push("census rerun produced different bytes".into());
    }

    let lift = Command::new(bin)
        .args([
            "lift", "--field", "Q", "--map", "(1:0:0)", "--points", "(1:0:0)",
        ])
        .output()
        .expect("run lift");
    let expected_lift_stderr = concat!(
        "error: lift: constant curve at blown-up point (1:0:0) has no unique lift ",
        "(every exceptional-fiber point is a valid choice)\n"
    );
    if lift.status.code() != Some(1) {
        violations.push(format!("lift exit: {:?}", lift.status.code()));
    }
    if !lift.stdout.is_empty() {
        violations.push(format!(
            "lift stdout not empty: {:?}",
            String::from_utf8_lossy(&lift.stdout)
        ));
    }
    if lift.stderr != expected_lift_stderr.as_bytes() {
        violations.push(format!(
            "lift stderr: {:?}",
            String::from_utf8_lossy(&lift.stderr)
        ));
    }

    conclude(
        "pinned invocations: classify, census, and lift produce the stated bytes and exit codes",
        violations,
    );
}
