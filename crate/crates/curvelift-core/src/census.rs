//! Exhaustive enumeration of morphisms over small prime fields, per-stratum
//! counts, and machine verification of the stratification.
//!
//! A degree-d morphism P¹ → Pⁿ over F_q is a canonical coefficient tuple:
//! (n+1)(d+1) residues whose first nonzero entry is 1 (killing the scalar
//! ambiguity) and whose forms share no nonconstant factor (killing the
//! lower-degree degenerations). Enumeration walks exactly these tuples,
//! streaming — nothing is stored per item — and shards cleanly: fixing the
//! pivot position and the first free digit splits the space into independent
//! blocks whose tallies merge by addition.
//!
//! A census lifts every enumerated morphism to a configured blow-up,
//! classifies it, tallies the strata, and checks four verdicts:
//!
//! * `disjoint` — every morphism gets exactly one valid interior label: the
//!   labeled degree is d, every multiplicity is within [0, d] and agrees
//!   with an independent recomputation, and component degrees satisfy
//!   deg G⁽ⁱ⁾ = d − m_i;
//! * `exhaustive` — every morphism classified, stratum counts summing to
//!   the total;
//! * `lift_unique` — distinct morphisms produce structurally distinct lifts;
//! * `round_trip` — projecting each lift returns the original morphism and
//!   the forms satisfy the blow-up compatibility F'_j·G_k = F'_k·G_j.
//!
//! The first failure (by enumeration order, independent of sharding) is
//! kept as a counterexample.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::blowup::{BlowupConfig, LiftedMorphism, StratumLabel};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::form::BinaryForm;
use crate::morphism::{collective_gcd, MorphismP1};
use crate::projective::ProjectivePoint;

/// Parameters of a census run.
#[derive(Clone, Debug)]
pub struct CensusParams {
    /// Target dimension n ≥ 1.
    pub n: usize,
    /// Morphism degree d ≥ 1.
    pub d: usize,
    /// Field size (prime).
    pub q: u64,
    /// Blown-up points, defined over F_q.
    pub points: Vec<ProjectivePoint>,
    /// Cap on the degree of enumerated exceptional curves.
    pub max_exceptional_degree: usize,
    /// Maximum raw coefficient tuples q^{(n+1)(d+1)} before refusing to run.
    pub budget: u64,
    /// Worker threads for the sharded enumeration; 0 uses the global pool.
    pub shards: usize,
}

impl CensusParams {
    pub fn new(n: usize, d: usize, q: u64, points: Vec<ProjectivePoint>) -> CensusParams {
        CensusParams {
            n,
            d,
            q,
            points,
            max_exceptional_degree: 3,
            budget: 1_000_000_000,
            shards: 0,
        }
    }
}

/// The four census checks. All must hold for a verified partition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Verdicts {
    pub disjoint: bool,
    pub exhaustive: bool,
    pub lift_unique: bool,
    pub round_trip: bool,
}

impl Verdicts {
    pub fn all_true(&self) -> bool {
        self.disjoint && self.exhaustive && self.lift_unique && self.round_trip
    }
}

/// First failing morphism of a census run, by enumeration order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    /// Position in the canonical enumeration order.
    pub index: u128,
    /// Rendering of the offending morphism.
    pub morphism: String,
    /// Which check failed and how.
    pub detail: String,
}

/// Outcome of a census: totals, per-stratum counts, verdicts, and timing.
#[derive(Clone, Debug)]
pub struct CensusReport {
    pub params: CensusParams,
    /// Number of degree-exactly-d morphisms over F_q.
    pub total: u64,
    /// Interior stratum counts (labels carry d and the multiplicity vector).
    pub strata: BTreeMap<StratumLabel, u64>,
    /// Exceptional-curve counts per divisor and degree (n ≥ 2 only).
    pub exceptional: BTreeMap<StratumLabel, u64>,
    pub verdicts: Verdicts,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

// ===========================================================================
// Canonical tuple enumeration
// ===========================================================================

/// q^exp, saturating at u128::MAX.
fn pow_saturating(q: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(q);
    }
    acc
}

/// Number of canonical tuples of the given length: (q^len − 1)/(q − 1).
fn canonical_count(q: u64, len: usize) -> u128 {
    let mut acc: u128 = 0;
    for k in 0..len {
        acc += pow_saturating(q as u128, len - 1 - k);
    }
    acc
}

/// Checks the raw tuple space against the budget and returns its size.
fn check_budget(q: u64, len: usize, budget: u64) -> Result<u128> {
    let raw = pow_saturating(q as u128, len);
    if raw > budget as u128 {
        return Err(Error::BudgetExceeded { raw_tuples: raw, budget });
    }
    Ok(raw)
}

/// An independent block of the canonical tuple space: digits before `pivot`
/// are zero, the pivot digit is 1, the digit after the pivot is fixed to
/// `second` when present, and the remaining digits run freely. `base` is the
/// enumeration index of the block's first tuple.
#[derive(Clone, Copy, Debug)]
struct WorkUnit {
    pivot: usize,
    second: Option<u64>,
    base: u128,
}

/// Splits the canonical tuple space of the given length into work units.
fn work_units(q: u64, len: usize) -> Vec<WorkUnit> {
    let mut units = Vec::new();
    let mut base: u128 = 0;
    for pivot in 0..len {
        let free = len - 1 - pivot;
        if free == 0 {
            units.push(WorkUnit { pivot, second: None, base });
            base += 1;
        } else {
            let block = pow_saturating(q as u128, free - 1);
            for a in 0..q {
                units.push(WorkUnit { pivot, second: Some(a), base });
                base += block;
            }
        }
    }
    units
}

/// Visits every tuple of a work unit in enumeration order. The digit buffer
/// is reused; the callback sees (global index, digits).
fn scan_unit(q: u64, len: usize, unit: WorkUnit, mut visit: impl FnMut(u128, &[u64])) {
    let mut digits = vec![0u64; len];
    digits[unit.pivot] = 1;
    let free_start = match unit.second {
        Some(a) => {
            digits[unit.pivot + 1] = a;
            unit.pivot + 2
        }
        None => unit.pivot + 1,
    };
    let mut index = unit.base;
    'tuples: loop {
        visit(index, &digits);
        index += 1;
        // Odometer on the free suffix, rightmost digit fastest; the unit is
        // exhausted once every free digit has wrapped.
        let mut pos = len;
        loop {
            if pos == free_start {
                break 'tuples;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Builds the n+1 forms encoded by a digit tuple ((d+1) digits per form).
fn forms_from_digits(field: FieldSpec, n: usize, d: usize, digits: &[u64]) -> Vec<BinaryForm> {
    let width = d + 1;
    (0..=n)
        .map(|i| {
            let chunk = &digits[i * width..(i + 1) * width];
            let coeffs: Vec<Scalar> = chunk.iter().map(|&v| field.residue(v)).collect();
            BinaryForm::from_coeffs(field, coeffs).expect("residues share the field")
        })
        .collect()
}

/// Degree-exactly-d test: the tuple's forms share no nonconstant factor.
/// (For d ≥ 1 this also excludes rank-1 tuples, whose gcd is a full form.)
fn is_degree_exact(forms: &[BinaryForm]) -> bool {
    match collective_gcd(forms) {
        Ok(Some(g)) => g.degree() == Some(0),
        _ => false,
    }
}

/// Streaming iterator over all degree-exactly-d morphisms P¹ → Pⁿ over F_q
/// in canonical enumeration order. For d = 0 it yields the constant
/// morphisms, one per point of Pⁿ(F_q).
#[derive(Debug)]
pub struct MorphismEnumeration {
    field: FieldSpec,
    n: usize,
    d: usize,
    q: u64,
    len: usize,
    digits: Vec<u64>,
    pivot: usize,
    started: bool,
    done: bool,
}

impl MorphismEnumeration {
    /// Total canonical tuples (enumerated morphisms are a subset).
    pub fn canonical_tuple_count(&self) -> u128 {
        canonical_count(self.q, self.len)
    }

    /// Advances to the next canonical digit tuple; false when exhausted.
    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            self.pivot = 0;
            self.digits = vec![0; self.len];
            self.digits[0] = 1;
            return true;
        }
        // Odometer on the suffix after the pivot.
        let mut pos = self.len;
        while pos > self.pivot + 1 {
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < self.q {
                return true;
            }
            self.digits[pos] = 0;
        }
        // Suffix wrapped: move the pivot right.
        self.digits[self.pivot] = 0;
        self.pivot += 1;
        if self.pivot == self.len {
            self.done = true;
            return false;
        }
        self.digits[self.pivot] = 1;
        true
    }
}

impl Iterator for MorphismEnumeration {
    type Item = MorphismP1;

    fn next(&mut self) -> Option<MorphismP1> {
        while self.advance() {
            let forms = forms_from_digits(self.field, self.n, self.d, &self.digits);
            if self.d == 0 || is_degree_exact(&forms) {
                return Some(MorphismP1::from_normalized_parts(self.field, self.d, forms));
            }
        }
        None
    }
}

/// Streams every degree-exactly-d morphism P¹ → Pⁿ over F_q exactly once,
/// in canonical form. d = 0 streams the constants instead.
pub fn enumerate_morphisms(
    n: usize,
    d: usize,
    q: u64,
    budget: u64,
) -> Result<MorphismEnumeration> {
    let field = FieldSpec::prime(q)?;
    let len = (n + 1) * (d + 1);
    check_budget(q, len, budget)?;
    Ok(MorphismEnumeration {
        field,
        n,
        d,
        q,
        len,
        digits: Vec::new(),
        pivot: 0,
        started: false,
        done: false,
    })
}

/// The constant morphisms P¹ → Pⁿ over F_q, one per point of Pⁿ(F_q).
pub fn enumerate_constant_morphisms(n: usize, q: u64) -> Result<MorphismEnumeration> {
    enumerate_morphisms(n, 0, q, u64::MAX)
}

/// Count of degree-exactly-d morphisms, computed by sharded enumeration.
pub fn count_morphisms(n: usize, d: usize, q: u64, budget: u64) -> Result<u64> {
    let field = FieldSpec::prime(q)?;
    let len = (n + 1) * (d + 1);
    check_budget(q, len, budget)?;
    if d == 0 {
        return Ok(canonical_count(q, len) as u64);
    }
    let total = work_units(q, len)
        .into_par_iter()
        .map(|unit| {
            let mut count = 0u64;
            scan_unit(q, len, unit, |_, digits| {
                let forms = forms_from_digits(field, n, d, digits);
                if is_degree_exact(&forms) {
                    count += 1;
                }
            });
            count
        })
        .sum();
    Ok(total)
}

// ===========================================================================
// Census
// ===========================================================================

/// Per-shard accumulator; merged associatively across shards.
struct ShardTally {
    total: u64,
    strata: BTreeMap<StratumLabel, u64>,
    /// Structural lift key → smallest enumeration index that produced it.
    lift_keys: HashMap<Vec<u64>, u128>,
    disjoint: bool,
    exhaustive: bool,
    lift_unique: bool,
    round_trip: bool,
    counterexample: Option<Counterexample>,
}

impl ShardTally {
    fn new() -> ShardTally {
        ShardTally {
            total: 0,
            strata: BTreeMap::new(),
            lift_keys: HashMap::new(),
            disjoint: true,
            exhaustive: true,
            lift_unique: true,
            round_trip: true,
            counterexample: None,
        }
    }

    fn note(&mut self, index: u128, morphism: &MorphismP1, detail: String) {
        if self.counterexample.as_ref().is_none_or(|c| index < c.index) {
            self.counterexample = Some(Counterexample {
                index,
                morphism: morphism.to_string(),
                detail,
            });
        }
    }

    fn merge(mut self, other: ShardTally) -> ShardTally {
        self.total += other.total;
        for (label, count) in other.strata {
            *self.strata.entry(label).or_insert(0) += count;
        }
        for (key, index) in other.lift_keys {
            if let Some(&existing) = self.lift_keys.get(&key) {
                self.lift_unique = false;
                let first = existing.min(index);
                if self.counterexample.as_ref().is_none_or(|c| first < c.index) {
                    self.counterexample = Some(Counterexample {
                        index: first,
                        morphism: String::from("(see index)"),
                        detail: String::from(
                            "two distinct morphisms produced structurally identical lifts",
                        ),
                    });
                }
            } else {
                self.lift_keys.insert(key, index);
            }
        }
        self.disjoint &= other.disjoint;
        self.exhaustive &= other.exhaustive;
        self.lift_unique &= other.lift_unique;
        self.round_trip &= other.round_trip;
        self.counterexample = match (self.counterexample.take(), other.counterexample) {
            (Some(a), Some(b)) => Some(if a.index <= b.index { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Structural identity of a lift: the coefficient digits of the base forms
/// and of every component tuple, with separators.
fn lift_key(lifted: &LiftedMorphism) -> Vec<u64> {
    let mut key = Vec::new();
    let push_form = |key: &mut Vec<u64>, form: &BinaryForm| {
        key.push(u64::MAX); // separator; residues are < q ≤ u64::MAX
        for c in form.coeffs() {
            match c {
                Scalar::Residue { value, .. } => key.push(*value),
                Scalar::Rational(_) => unreachable!("census runs over prime fields"),
            }
        }
    };
    let (base, exceptional) = lifted.project_lenient();
    key.push(u64::from(exceptional));
    for form in base.forms() {
        push_form(&mut key, form);
    }
    for tuple in lifted.components() {
        key.push(u64::MAX - 1);
        for form in tuple {
            push_form(&mut key, form);
        }
    }
    key
}

/// Classifies one enumerated morphism, updating tallies and verdicts.
fn classify_into(
    tally: &mut ShardTally,
    config: &BlowupConfig,
    d: usize,
    index: u128,
    f: &MorphismP1,
) {
    tally.total += 1;
    let lifted = match config.lift(f) {
        Ok(l) => l,
        Err(e) => {
            tally.exhaustive = false;
            tally.note(index, f, format!("lift failed: {e}"));
            return;
        }
    };

    // --- disjoint: exactly one valid interior label ------------------------
    let label = lifted.stratum();
    let valid = match &label {
        StratumLabel::Interior { d: ld, m } => {
            let mut ok = *ld == d && m.iter().all(|&mi| mi <= d);
            if ok {
                for (idx, &mi) in m.iter().enumerate() {
                    // Independent recomputation from the definition, plus the
                    // degree law deg G = d − m on the stored component.
                    let recomputed = f
                        .parametric_multiplicity(&config.points()[idx])
                        .unwrap_or(usize::MAX);
                    let comp_deg = lifted.component_degree(idx);
                    if recomputed != mi || comp_deg != d - mi {
                        tally.note(
                            index,
                            f,
                            format!(
                                "label m_{}={} disagrees with recomputed {} or component \
                                 degree {}",
                                idx + 1,
                                mi,
                                recomputed,
                                comp_deg
                            ),
                        );
                        ok = false;
                        break;
                    }
                }
            } else {
                tally.note(index, f, format!("invalid interior label {label}"));
            }
            ok
        }
        other => {
            tally.note(index, f, format!("non-interior label {other} for a curve"));
            false
        }
    };
    if !valid {
        tally.disjoint = false;
    }

    // --- round trip: projection identity and form-level compatibility ------
    match lifted.project() {
        Ok(back) if &back == f => {}
        Ok(back) => {
            tally.round_trip = false;
            tally.note(index, f, format!("projected lift differs: {back}"));
        }
        Err(e) => {
            tally.round_trip = false;
            tally.note(index, f, format!("projection failed: {e}"));
        }
    }
    if let Err(detail) = compatibility_holds(config, f, &lifted) {
        tally.round_trip = false;
        tally.note(index, f, detail);
    }

    // --- lift uniqueness ----------------------------------------------------
    let key = lift_key(&lifted);
    if let Some(&existing) = tally.lift_keys.get(&key) {
        tally.lift_unique = false;
        tally.note(
            index,
            f,
            format!("lift collides with the morphism at index {existing}"),
        );
    } else {
        tally.lift_keys.insert(key, index);
    }

    *tally.strata.entry(label).or_insert(0) += 1;
}

/// Form-level blow-up compatibility at every blown-up point:
/// F'_j·G_k = F'_k·G_j for the moved base forms and stored components.
fn compatibility_holds(
    config: &BlowupConfig,
    f: &MorphismP1,
    lifted: &LiftedMorphism,
) -> std::result::Result<(), String> {
    for (idx, tuple) in lifted.components().iter().enumerate() {
        let moved = f
            .transform(&config.moves()[idx])
            .map_err(|e| format!("transform failed: {e}"))?;
        let tail = &moved.forms()[1..];
        for j in 0..tail.len() {
            for k in j + 1..tail.len() {
                let lhs = tail[j].mul(&tuple[k]).map_err(|e| e.to_string())?;
                let rhs = tail[k].mul(&tuple[j]).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!(
                        "compatibility F'_{}·G_{} = F'_{}·G_{} fails at point {}",
                        j + 1,
                        k + 1,
                        k + 1,
                        j + 1,
                        config.points()[idx]
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Runs the full census: enumerate, lift, classify, tally, verify.
pub fn census_strata(params: &CensusParams) -> Result<CensusReport> {
    let start = Instant::now();
    let field = FieldSpec::prime(params.q)?;
    if params.d == 0 {
        return Err(Error::ConstantMorphism { op: "census" });
    }
    let len = (params.n + 1) * (params.d + 1);
    check_budget(params.q, len, params.budget)?;
    let config = BlowupConfig::new(field, params.n, params.points.clone())?;

    let run = || {
        work_units(params.q, len)
            .into_par_iter()
            .map(|unit| {
                let mut tally = ShardTally::new();
                scan_unit(params.q, len, unit, |index, digits| {
                    let forms = forms_from_digits(field, params.n, params.d, digits);
                    if !is_degree_exact(&forms) {
                        return;
                    }
                    let f = MorphismP1::from_normalized_parts(field, params.d, forms);
                    classify_into(&mut tally, &config, params.d, index, &f);
                });
                tally
            })
            .reduce(ShardTally::new, ShardTally::merge)
    };
    let mut tally = if params.shards > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(params.shards)
            .build()
            .expect("worker pool construction")
            .install(run)
    } else {
        run()
    };

    // Exhaustiveness includes the count-sum identity.
    let stratum_sum: u64 = tally.strata.values().sum();
    if stratum_sum != tally.total {
        tally.exhaustive = false;
    }

    // Exceptional curves over the same field: each divisor E_i ≅ Pⁿ⁻¹
    // carries |Mor_e(P¹, Pⁿ⁻¹)(F_q)| curves of degree e (none when n = 1).
    let mut exceptional = BTreeMap::new();
    if params.n >= 2 {
        for e in 1..=params.max_exceptional_degree {
            let count = count_morphisms(params.n - 1, e, params.q, params.budget)?;
            for i in 1..=params.points.len() {
                exceptional.insert(StratumLabel::Exceptional { i, e }, count);
            }
        }
    }

    Ok(CensusReport {
        params: params.clone(),
        total: tally.total,
        strata: tally.strata,
        exceptional,
        verdicts: Verdicts {
            disjoint: tally.disjoint,
            exhaustive: tally.exhaustive,
            lift_unique: tally.lift_unique,
            round_trip: tally.round_trip,
        },
        counterexample: tally.counterexample,
        elapsed: start.elapsed(),
    })
}

/// Census driver focused on the verdicts; same evidence as `census_strata`.
pub fn verify_partition(params: &CensusParams) -> Result<CensusReport> {
    census_strata(params)
}

// ===========================================================================
// Dimension estimation and export
// ===========================================================================

/// Estimates a stratum's dimension from point counts at two or more primes:
/// counts growing like c·q^dim give dim ≈ ln(N₂/N₁)/ln(q₂/q₁). Uses the two
/// largest primes and rounds to the nearest integer; a soft ±1 diagnostic,
/// not an exact computation.
pub fn estimate_dimension(counts: &BTreeMap<u64, u64>) -> Result<i64> {
    if counts.len() < 2 {
        return Err(Error::InsufficientData);
    }
    for (&q, &count) in counts {
        FieldSpec::prime(q)?;
        if count == 0 {
            return Err(Error::ZeroCount { q });
        }
    }
    let mut iter = counts.iter().rev();
    let (&q2, &n2) = iter.next().expect("two or more entries");
    let (&q1, &n1) = iter.next().expect("two or more entries");
    let ratio = ((n2 as f64) / (n1 as f64)).ln() / ((q2 as f64) / (q1 as f64)).ln();
    Ok(ratio.round() as i64)
}

/// CSV rendering of the interior strata table: columns d, m_1..m_r, count.
pub fn strata_csv(report: &CensusReport) -> String {
    let r = report.params.points.len();
    let mut out = String::from("d");
    for i in 1..=r {
        out.push_str(&format!(",m_{i}"));
    }
    out.push_str(",count\n");
    for (label, count) in &report.strata {
        if let StratumLabel::Interior { d, m } = label {
            out.push_str(&d.to_string());
            for mi in m {
                out.push_str(&format!(",{mi}"));
            }
            out.push_str(&format!(",{count}\n"));
        }
    }
    out
}
