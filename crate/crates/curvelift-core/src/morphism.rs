//! Morphisms P¹ → Pⁿ as normalized tuples of binary forms.
//!
//! A morphism is written (F_0 : … : F_n) with the F_i homogeneous of one
//! common degree d and sharing no nonconstant factor; the constructor
//! enforces both by stripping the collective GCD and rescaling so the first
//! nonzero coefficient of the first nonzero form is 1. Equality of values is
//! then equality of morphisms. Degree-0 tuples are constants — admitted as
//! values, rejected by the multiplicity-style operations that need a curve.
//!
//! The central quantity is the parametric multiplicity of a target point p:
//! after the deterministic coordinate change sending p to (1:0:…:0), it is
//! the degree of gcd(F'_1, …, F'_n) — the number of parameters (with
//! multiplicity) that f sends to p.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::form::BinaryForm;
use crate::projective::{move_to_e0, ProjLinearMap, ProjectivePoint};

/// A normalized morphism P¹ → Pⁿ (or a constant point of Pⁿ when d = 0).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MorphismP1 {
    field: FieldSpec,
    degree: usize,
    forms: Vec<BinaryForm>,
}

/// Factorization of the map degree: deg f = deg_g · deg_image, where deg_g
/// is the degree of f onto its image and deg_image the degree of the image
/// curve.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GeometricDegree {
    /// Generic fiber size of f onto its image.
    pub deg_g: usize,
    /// Degree of the image curve in Pⁿ.
    pub deg_image: usize,
}

impl MorphismP1 {
    /// Normalizes a tuple of forms into a morphism: strips the collective
    /// GCD and rescales canonically. Idempotent.
    pub fn new(field: FieldSpec, raw: Vec<BinaryForm>) -> Result<MorphismP1> {
        MorphismP1::new_with_factor(field, raw).map(|(m, _)| m)
    }

    /// Like `new`, additionally reporting the monic common factor that was
    /// stripped (None when the input already had constant GCD).
    pub fn new_with_factor(
        field: FieldSpec,
        raw: Vec<BinaryForm>,
    ) -> Result<(MorphismP1, Option<BinaryForm>)> {
        if raw.len() < 2 {
            return Err(Error::DimensionMismatch {
                op: "morphism",
                expected: 2,
                found: raw.len(),
            });
        }
        for f in &raw {
            if f.field() != field {
                return Err(Error::FieldMismatch { op: "morphism" });
            }
        }
        let mut shared_degree: Option<usize> = None;
        for f in &raw {
            if let Some(d) = f.degree() {
                match shared_degree {
                    None => shared_degree = Some(d),
                    Some(e) if e != d => {
                        return Err(Error::DegreeMismatch { op: "morphism", left: e, right: d })
                    }
                    Some(_) => {}
                }
            }
        }
        if shared_degree.is_none() {
            return Err(Error::AllZero { op: "morphism" });
        }

        let mut forms = raw;
        let common = collective_gcd(&forms)?.expect("not all forms are zero");
        let mut stripped = None;
        if common.degree().unwrap_or(0) > 0 {
            for f in &mut forms {
                *f = f.div_exact(&common)?;
            }
            stripped = Some(common);
        }

        // Canonical scaling: leading coefficient of the first nonzero form
        // becomes 1.
        let lead = leading_coefficient(&forms).expect("not all forms are zero");
        if !lead.is_one() {
            let inv = lead.inv()?;
            for f in &mut forms {
                *f = f.scale(&inv)?;
            }
        }

        let degree = forms
            .iter()
            .find_map(BinaryForm::degree)
            .expect("not all forms are zero");
        Ok((MorphismP1 { field, degree, forms }, stripped))
    }

    /// Fast path for enumeration loops that have already established the
    /// invariants: canonical scaling, constant collective gcd, and common
    /// degree `degree` of the nonzero forms.
    pub(crate) fn from_normalized_parts(
        field: FieldSpec,
        degree: usize,
        forms: Vec<BinaryForm>,
    ) -> MorphismP1 {
        debug_assert!(
            forms
                .iter()
                .find(|f| !f.is_zero())
                .and_then(|f| f.coeffs().iter().find(|c| !c.is_zero()))
                .is_some_and(Scalar::is_one),
            "enumerated tuples are canonically scaled"
        );
        MorphismP1 { field, degree, forms }
    }

    /// Convenience constructor from integer coefficient rows (u-descending);
    /// an all-zero row is the zero form.
    pub fn from_ints(field: FieldSpec, rows: &[&[i64]]) -> Result<MorphismP1> {
        let forms = rows
            .iter()
            .map(|row| {
                BinaryForm::from_coeffs(field, row.iter().map(|&k| field.integer(k)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        MorphismP1::new(field, forms)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// The common degree d of the normalized forms; 0 exactly for constants.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Target dimension n.
    pub fn target_dim(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn forms(&self) -> &[BinaryForm] {
        &self.forms
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    /// The image point of a constant morphism; None for curves.
    pub fn constant_value(&self) -> Option<ProjectivePoint> {
        if self.degree > 0 {
            return None;
        }
        let coords = self
            .forms
            .iter()
            .map(|f| {
                if f.is_zero() {
                    self.field.zero()
                } else {
                    f.coeff(0).clone()
                }
            })
            .collect();
        Some(ProjectivePoint::new(self.field, coords).expect("constants are nonzero tuples"))
    }

    /// (F_0(a) : … : F_n(a)) in canonical form.
    pub fn eval(&self, a: &ProjectivePoint) -> Result<ProjectivePoint> {
        if a.field() != self.field {
            return Err(Error::FieldMismatch { op: "morphism evaluation" });
        }
        if a.dim() != 1 {
            return Err(Error::DimensionMismatch {
                op: "morphism evaluation",
                expected: 1,
                found: a.dim(),
            });
        }
        let (u0, v0) = (&a.coords()[0], &a.coords()[1]);
        let values = self
            .forms
            .iter()
            .map(|f| f.eval(u0, v0))
            .collect::<Result<Vec<_>>>()?;
        if values.iter().all(Scalar::is_zero) {
            // A common root of all forms would force a nonconstant common
            // factor, which normalization removed.
            return Err(Error::IndeterminateAtPoint);
        }
        ProjectivePoint::new(self.field, values)
    }

    /// Rewrites the morphism through a target coordinate change: each new
    /// form is the corresponding row combination of the old ones.
    pub fn transform(&self, a: &ProjLinearMap) -> Result<MorphismP1> {
        if a.field() != self.field {
            return Err(Error::FieldMismatch { op: "transform" });
        }
        if a.dim() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                op: "transform",
                expected: self.target_dim(),
                found: a.dim(),
            });
        }
        let mut new_forms = Vec::with_capacity(self.forms.len());
        for row in a.matrix() {
            let mut acc = BinaryForm::zero(self.field);
            for (c, f) in row.iter().zip(&self.forms) {
                if c.is_zero() || f.is_zero() {
                    continue;
                }
                acc = acc.add(&f.scale(c)?)?;
            }
            new_forms.push(acc);
        }
        // Invertibility keeps the collective gcd constant, so normalization
        // only rescales here; the degree is preserved.
        MorphismP1::new(self.field, new_forms)
    }

    /// Number of parameters (counted with multiplicity) mapping to p: move
    /// p to (1:0:…:0) and take deg gcd of the remaining coordinates' forms.
    pub fn parametric_multiplicity(&self, p: &ProjectivePoint) -> Result<usize> {
        if self.degree == 0 {
            return Err(Error::ConstantMorphism { op: "parametric multiplicity" });
        }
        if p.field() != self.field {
            return Err(Error::FieldMismatch { op: "parametric multiplicity" });
        }
        if p.dim() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                op: "parametric multiplicity",
                expected: self.target_dim(),
                found: p.dim(),
            });
        }
        let moved = self.transform(&move_to_e0(p))?;
        let h = collective_gcd(&moved.forms()[1..])?
            .expect("a nonconstant morphism is not identically (1:0:...:0)");
        Ok(h.degree().unwrap_or(0))
    }

    /// Whether p lies on the image curve (after base change to the closure:
    /// a positive multiplicity certifies a closure point mapping to p).
    pub fn image_contains(&self, p: &ProjectivePoint) -> Result<bool> {
        Ok(self.parametric_multiplicity(p)? >= 1)
    }

    /// f ∘ g for a self-map g = (G_0 : G_1) of P¹; degrees multiply.
    pub fn reparametrize(&self, g: &MorphismP1) -> Result<MorphismP1> {
        if g.field() != self.field {
            return Err(Error::FieldMismatch { op: "reparametrize" });
        }
        if g.target_dim() != 1 {
            return Err(Error::DimensionMismatch {
                op: "reparametrize",
                expected: 1,
                found: g.target_dim(),
            });
        }
        if g.degree == 0 {
            return Err(Error::ConstantReparametrization);
        }
        let (g0, g1) = (&g.forms[0], &g.forms[1]);
        let forms = self
            .forms
            .iter()
            .map(|f| f.compose(g0, g1))
            .collect::<Result<Vec<_>>>()?;
        MorphismP1::new(self.field, forms)
    }

    /// Scheme length of the fiber f⁻¹(q): with j the pivot coordinate of q,
    /// the degree of gcd over i ≠ j of q_j·F_i − q_i·F_j (0 when q misses
    /// the image).
    pub fn fiber_degree(&self, q: &ProjectivePoint) -> Result<usize> {
        if self.degree == 0 {
            return Err(Error::ConstantMorphism { op: "fiber degree" });
        }
        if q.field() != self.field {
            return Err(Error::FieldMismatch { op: "fiber degree" });
        }
        if q.dim() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                op: "fiber degree",
                expected: self.target_dim(),
                found: q.dim(),
            });
        }
        let j = q.pivot();
        let qc = q.coords();
        let mut combos = Vec::with_capacity(self.forms.len() - 1);
        for (i, fi) in self.forms.iter().enumerate() {
            if i == j {
                continue;
            }
            let left = fi.scale(&qc[j])?;
            let right = self.forms[j].scale(&qc[i])?;
            combos.push(left.sub(&right)?);
        }
        let h = collective_gcd(&combos)?
            // All combinations vanishing would make every form proportional
            // to F_j, i.e. the morphism constant — excluded above.
            .expect("a nonconstant morphism has a nonzero fiber combination");
        Ok(h.degree().unwrap_or(0))
    }

    /// Factor the map degree as deg_g · deg_image by sampling fibers over
    /// image points: the minimum sampled fiber degree equals deg_g as soon
    /// as one sample hits a smooth image point. Over ℚ, 2d² + 1 samples
    /// always suffice (at most (d−1)(d−2) parameters can hit singular image
    /// points); over F_q all q + 1 parameters are sampled, and the result is
    /// flagged inconclusive if the field is too small for that guarantee —
    /// unless the minimum is 1, which is always exact since sampled fiber
    /// degrees never undershoot deg_g.
    pub fn geometric_degree(&self) -> Result<GeometricDegree> {
        if self.degree == 0 {
            return Err(Error::ConstantMorphism { op: "geometric degree" });
        }
        let d = self.degree;
        let samples = self.parameter_samples(2 * d * d);
        let mut min_fiber = usize::MAX;
        for a in samples {
            let image = self.eval(&a)?;
            min_fiber = min_fiber.min(self.fiber_degree(&image)?);
        }
        if d % min_fiber != 0 {
            return Err(Error::InconclusiveOverSmallField {
                detail: format!(
                    "minimum sampled fiber degree {min_fiber} does not divide the map degree {d}"
                ),
            });
        }
        if min_fiber > 1 {
            if let Some(q) = self.field.order() {
                let bad_bound = (d - 1) * (d - 2);
                if q + 1 <= bad_bound as u64 {
                    return Err(Error::InconclusiveOverSmallField {
                        detail: format!(
                            "only {} parameters exist over F_{q} but up to {bad_bound} of them \
                             may hit singular image points, so no sample is guaranteed smooth",
                            q + 1
                        ),
                    });
                }
            }
        }
        Ok(GeometricDegree { deg_g: min_fiber, deg_image: d / min_fiber })
    }

    /// Multiplicity of p on the image curve: parametric multiplicity divided
    /// by deg_g. A non-integral ratio would contradict the degree
    /// factorization and is reported as an internal-consistency error.
    pub fn image_multiplicity(&self, p: &ProjectivePoint) -> Result<usize> {
        let m = self.parametric_multiplicity(p)?;
        if m == 0 {
            return Ok(0);
        }
        let gd = self.geometric_degree()?;
        if m % gd.deg_g != 0 {
            return Err(Error::NonIntegralRatio { multiplicity: m, deg_g: gd.deg_g });
        }
        Ok(m / gd.deg_g)
    }

    /// Distinct parameter points: all of P¹(F_q) over a finite field, or
    /// (0:1) plus (1:t) for t = 0..count over ℚ.
    fn parameter_samples(&self, count: usize) -> Vec<ProjectivePoint> {
        let field = self.field;
        let ts: Vec<Scalar> = match field.order() {
            Some(q) => (0..q).map(|t| field.from_bigint(&t.into())).collect(),
            None => (0..count as i64).map(|t| field.integer(t)).collect(),
        };
        let mut samples = vec![
            ProjectivePoint::new(field, vec![field.zero(), field.one()])
                .expect("(0:1) is a point"),
        ];
        for t in ts {
            samples.push(
                ProjectivePoint::new(field, vec![field.one(), t]).expect("(1:t) is a point"),
            );
        }
        samples
    }
}

/// Monic gcd of a slice of forms, ignoring zero entries; None when all are
/// zero. (A single nonzero form gives its monic multiple.)
pub(crate) fn collective_gcd(forms: &[BinaryForm]) -> Result<Option<BinaryForm>> {
    let mut acc: Option<BinaryForm> = None;
    for f in forms.iter().filter(|f| !f.is_zero()) {
        acc = Some(match acc {
            None => f.monic()?,
            Some(g) => g.gcd(f)?,
        });
    }
    Ok(acc)
}

/// First nonzero coefficient of the first nonzero form.
fn leading_coefficient(forms: &[BinaryForm]) -> Option<Scalar> {
    forms
        .iter()
        .find(|f| !f.is_zero())
        .and_then(|f| f.coeffs().iter().find(|c| !c.is_zero()).cloned())
}

impl fmt::Display for MorphismP1 {
    /// `(F_0 : F_1 : …)` with canonical form rendering.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, form) in self.forms.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{form}")?;
        }
        write!(f, ")")
    }
}
