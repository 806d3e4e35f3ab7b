//! The blow-up of Pⁿ at finitely many points: lifting curves to their
//! strict transforms, exceptional curves, and stratum classification.
//!
//! A curve f : P¹ → Pⁿ missing none of the blown-up points lifts uniquely to
//! the blow-up. Concretely, per blown-up point p_i the configuration fixes a
//! coordinate change A_i with A_i·p_i = (1:0:…:0); writing (F'_0:…:F'_n) for
//! the moved curve and H_i = gcd(F'_1,…,F'_n), the exceptional-direction
//! data is the tuple G^{(i)} = (F'_1/H_i : … : F'_n/H_i). The lifted curve
//! stores the base morphism plus all r component tuples (each in its own
//! moved coordinates). Curves inside an exceptional divisor E_i ≅ Pⁿ⁻¹ are
//! represented directly by their component tuple at i; their base is the
//! constant p_i and every other component is a forced tuple of constants.
//!
//! Classification reads off the stratum: interior curves carry their degree
//! and the multiplicity vector (m_1,…,m_r) with m_i = d − deg G^{(i)};
//! exceptional curves carry their divisor index and degree; constants fall
//! outside the partition and are labeled as such.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::form::BinaryForm;
use crate::morphism::{collective_gcd, MorphismP1};
use crate::projective::{move_to_e0, ProjLinearMap, ProjectivePoint};

/// A blow-up center: r distinct points of Pⁿ together with the fixed
/// coordinate changes standardizing each of them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlowupConfig {
    field: FieldSpec,
    n: usize,
    points: Vec<ProjectivePoint>,
    moves: Vec<ProjLinearMap>,
}

impl BlowupConfig {
    /// Builds a configuration, rejecting repeated or mis-sized points.
    pub fn new(field: FieldSpec, n: usize, points: Vec<ProjectivePoint>) -> Result<BlowupConfig> {
        if n == 0 {
            return Err(Error::DimensionMismatch { op: "blow-up", expected: 1, found: 0 });
        }
        for p in &points {
            if p.field() != field {
                return Err(Error::FieldMismatch { op: "blow-up" });
            }
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    op: "blow-up",
                    expected: n,
                    found: p.dim(),
                });
            }
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::DuplicatePoint { rendered: p.to_string() });
            }
        }
        let moves = points.iter().map(move_to_e0).collect();
        Ok(BlowupConfig { field, n, points, moves })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Ambient dimension n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blown-up points r.
    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// The coordinate change sending points()[idx] to (1:0:…:0).
    pub fn moves(&self) -> &[ProjLinearMap] {
        &self.moves
    }

    /// Lifts a morphism to the blow-up: unique for non-constant curves and
    /// for constants away from every blown-up point. A constant at a
    /// blown-up point has a whole Pⁿ⁻¹ of lifts and is refused rather than
    /// silently completed.
    pub fn lift(&self, f: &MorphismP1) -> Result<LiftedMorphism> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch { op: "lift" });
        }
        if f.target_dim() != self.n {
            return Err(Error::DimensionMismatch {
                op: "lift",
                expected: self.n,
                found: f.target_dim(),
            });
        }
        let mut components = Vec::with_capacity(self.points.len());
        for idx in 0..self.points.len() {
            components.push(self.component_of(f, idx)?);
        }
        Ok(LiftedMorphism {
            config: self.clone(),
            base: LiftBase::Curve(f.clone()),
            components,
        })
    }

    /// The component tuple of f at blown-up point index `idx` (0-based):
    /// move coordinates, strip the gcd of the non-leading forms, rescale.
    fn component_of(&self, f: &MorphismP1, idx: usize) -> Result<Vec<BinaryForm>> {
        let moved = f.transform(&self.moves[idx])?;
        let tail = &moved.forms()[1..];
        let Some(h) = collective_gcd(tail)? else {
            // All non-leading moved forms vanish: f is constant at this
            // blown-up point, and every point of the exceptional fiber is a
            // valid lift.
            return Err(Error::AmbiguousLift { point: self.points[idx].to_string() });
        };
        let quotients = tail
            .iter()
            .map(|t| t.div_exact(&h))
            .collect::<Result<Vec<_>>>()?;
        canonicalize_tuple(quotients)
    }

    /// Builds the lifted curve lying inside the exceptional divisor E_i
    /// (1-based i) traced out by the non-constant tuple `g` in A_i-moved
    /// coordinates.
    pub fn exceptional_lift(&self, i: usize, g: Vec<BinaryForm>) -> Result<LiftedMorphism> {
        if self.n == 1 {
            // E_i is a single point; it carries no non-constant curves.
            return Err(Error::NoExceptionalCurves);
        }
        if i == 0 || i > self.points.len() {
            return Err(Error::DimensionMismatch {
                op: "exceptional lift",
                expected: self.points.len(),
                found: i,
            });
        }
        // n ≥ 2 forms: normalize through the morphism machinery (target
        // Pⁿ⁻¹) to strip common factors and rescale.
        let normalized = MorphismP1::new(self.field, g)?;
        if normalized.is_constant() {
            return Err(Error::ConstantExceptional);
        }
        let idx = i - 1;
        let constant_at_pi = constant_morphism(&self.points[idx]);
        let mut components = Vec::with_capacity(self.points.len());
        for j in 0..self.points.len() {
            if j == idx {
                components.push(normalized.forms().to_vec());
            } else {
                // Forced constants: the moved coordinates of p_i under A_j.
                components.push(self.component_of(&constant_at_pi, j)?);
            }
        }
        Ok(LiftedMorphism {
            config: self.clone(),
            base: LiftBase::Exceptional(i),
            components,
        })
    }
}

/// What a lifted curve projects to downstairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LiftBase {
    /// An honest morphism to Pⁿ (possibly constant, away from the center).
    Curve(MorphismP1),
    /// A curve inside the exceptional divisor over points()[i − 1]
    /// (1-based index, matching stratum labels).
    Exceptional(usize),
}

/// A morphism to the blow-up: base morphism plus one component tuple per
/// blown-up point, each expressed in that point's moved coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftedMorphism {
    config: BlowupConfig,
    base: LiftBase,
    components: Vec<Vec<BinaryForm>>,
}

/// Result of evaluating a lifted curve at a parameter: the image point
/// downstairs and the exceptional-direction point over each blown-up point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftedEvaluation {
    pub base_point: ProjectivePoint,
    /// One point of Pⁿ⁻¹ per blown-up point, in moved coordinates.
    pub fiber_points: Vec<ProjectivePoint>,
}

impl LiftedMorphism {
    pub fn config(&self) -> &BlowupConfig {
        &self.config
    }

    pub fn base(&self) -> &LiftBase {
        &self.base
    }

    /// Component tuples aligned with config().points().
    pub fn components(&self) -> &[Vec<BinaryForm>] {
        &self.components
    }

    /// Common degree of the (nonzero entries of the) component tuple at
    /// 0-based index `idx`.
    pub fn component_degree(&self, idx: usize) -> usize {
        tuple_degree(&self.components[idx])
    }

    /// The morphism downstairs; curves inside an exceptional divisor have
    /// no non-constant projection and are reported as errors.
    pub fn project(&self) -> Result<MorphismP1> {
        match &self.base {
            LiftBase::Curve(f) => Ok(f.clone()),
            LiftBase::Exceptional(i) => Err(Error::ExceptionalCurve {
                point: self.config.points()[i - 1].to_string(),
            }),
        }
    }

    /// Like `project`, but an exceptional curve is returned as the constant
    /// morphism at its center together with a flag.
    pub fn project_lenient(&self) -> (MorphismP1, bool) {
        match &self.base {
            LiftBase::Curve(f) => (f.clone(), false),
            LiftBase::Exceptional(i) => (constant_morphism(&self.config.points()[i - 1]), true),
        }
    }

    /// The stratum this curve belongs to: interior curves by degree and
    /// multiplicity vector, exceptional curves by divisor index and degree,
    /// constants outside the partition.
    pub fn stratum(&self) -> StratumLabel {
        match &self.base {
            LiftBase::Exceptional(i) => StratumLabel::Exceptional {
                i: *i,
                e: self.component_degree(*i - 1),
            },
            LiftBase::Curve(f) => {
                let d = f.degree();
                if d == 0 {
                    return StratumLabel::Constant;
                }
                // deg G^{(i)} = d − m_i by construction (the component is
                // the moved tail divided by its gcd of degree m_i).
                let m = (0..self.components.len())
                    .map(|idx| d - self.component_degree(idx))
                    .collect();
                StratumLabel::Interior { d, m }
            }
        }
    }

    /// Evaluates base and components at a parameter and checks the blow-up
    /// incidence relation F'_j(a)·G_k(a) = F'_k(a)·G_j(a) in each point's
    /// moved coordinates.
    pub fn evaluate(&self, a: &ProjectivePoint) -> Result<LiftedEvaluation> {
        let field = self.config.field();
        let (downstairs, _) = self.project_lenient();
        let base_point = downstairs.eval(a)?;
        let (u0, v0) = (&a.coords()[0], &a.coords()[1]);
        let mut fiber_points = Vec::with_capacity(self.components.len());
        for (idx, tuple) in self.components.iter().enumerate() {
            let g_vals = tuple
                .iter()
                .map(|g| g.eval(u0, v0))
                .collect::<Result<Vec<_>>>()?;
            // Incidence against the moved base curve.
            let moved = downstairs.transform(&self.config.moves()[idx])?;
            let f_vals = moved
                .forms()[1..]
                .iter()
                .map(|f| f.eval(u0, v0))
                .collect::<Result<Vec<_>>>()?;
            for j in 0..f_vals.len() {
                for k in j + 1..f_vals.len() {
                    let lhs = f_vals[j].mul(&g_vals[k])?;
                    let rhs = f_vals[k].mul(&g_vals[j])?;
                    assert_eq!(
                        lhs, rhs,
                        "blow-up incidence must hold for every lifted curve"
                    );
                }
            }
            fiber_points.push(ProjectivePoint::new(field, g_vals)?);
        }
        Ok(LiftedEvaluation { base_point, fiber_points })
    }
}

/// Where a lifted curve sits in the stratification of the space of curves
/// on the blow-up.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StratumLabel {
    /// Non-constant curves meeting no exceptional divisor in their entirety:
    /// degree d downstairs, multiplicity m_i at the i-th blown-up point.
    Interior { d: usize, m: Vec<usize> },
    /// Non-constant curves inside the exceptional divisor over the i-th
    /// point (1-based), of degree e as curves in Pⁿ⁻¹.
    Exceptional { i: usize, e: usize },
    /// Constant curves; outside the degree partition.
    Constant,
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumLabel::Interior { d, m } => {
                let ms: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                write!(f, "interior(d={d}, m=({}))", ms.join(","))
            }
            StratumLabel::Exceptional { i, e } => write!(f, "exceptional(i={i}, e={e})"),
            StratumLabel::Constant => write!(f, "constant"),
        }
    }
}

/// Whether a stratum dimension is exact or only an upper bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DimensionKind {
    Exact,
    UpperBound,
}

/// A dimension statement about a stratum.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StratumDimension {
    pub kind: DimensionKind,
    pub value: usize,
}

/// Dimension of a stratum inside the space of curves on the blow-up of Pⁿ:
/// the unobstructed stratum (m = 0) has the full moduli dimension
/// (n+1)(d+1)−1; strata with some m_i > 0 drop by at least one, so the
/// formula minus one is reported as an upper bound; exceptional strata are
/// full moduli of degree-e curves in Pⁿ⁻¹, of exact dimension n(e+1)−1.
pub fn stratum_dimension(label: &StratumLabel, n: usize) -> Result<StratumDimension> {
    match label {
        StratumLabel::Constant => Err(Error::ConstantLabel),
        StratumLabel::Exceptional { e, .. } => Ok(StratumDimension {
            kind: DimensionKind::Exact,
            value: n * (e + 1) - 1,
        }),
        StratumLabel::Interior { d, m } => {
            let full = (n + 1) * (d + 1) - 1;
            if m.iter().all(|&mi| mi == 0) {
                Ok(StratumDimension { kind: DimensionKind::Exact, value: full })
            } else {
                Ok(StratumDimension { kind: DimensionKind::UpperBound, value: full - 1 })
            }
        }
    }
}

/// The constant morphism with the given value.
pub(crate) fn constant_morphism(p: &ProjectivePoint) -> MorphismP1 {
    let field = p.field();
    let forms = p
        .coords()
        .iter()
        .map(|c| BinaryForm::constant(c.clone()))
        .collect();
    MorphismP1::new(field, forms).expect("a point is a nonzero constant tuple")
}

/// Rescales a not-all-zero tuple so the first nonzero coefficient of its
/// first nonzero form is 1.
fn canonicalize_tuple(mut forms: Vec<BinaryForm>) -> Result<Vec<BinaryForm>> {
    let lead = forms
        .iter()
        .find(|f| !f.is_zero())
        .and_then(|f| f.coeffs().iter().find(|c| !c.is_zero()).cloned())
        .expect("component tuples are nonzero");
    if !lead.is_one() {
        let inv = lead.inv()?;
        for f in &mut forms {
            *f = f.scale(&inv)?;
        }
    }
    Ok(forms)
}

/// Common degree of the nonzero entries of a component tuple.
fn tuple_degree(forms: &[BinaryForm]) -> usize {
    forms
        .iter()
        .find_map(BinaryForm::degree)
        .expect("component tuples are nonzero")
}
