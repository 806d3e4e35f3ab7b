//! Homogeneous binary forms F(u, v) with exact coefficients.
//!
//! Representation: a nonzero form of degree d stores d + 1 coefficients in
//! u-descending order — index j holds the coefficient of u^(d−j) v^j — so the
//! leading entry is the pure-u coefficient and the last entry the pure-v one.
//! The zero form is a distinguished value with an empty coefficient vector
//! and no degree; every nonzero form keeps its full length-(d+1) vector even
//! when outer coefficients vanish (v^2 is a degree-2 form with coefficients
//! (0, 0, 1)), because a homogeneous form's degree is part of its identity.
//!
//! GCDs are returned monic (first nonzero coefficient 1) so equality of
//! divisors is plain structural equality.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{render_abs, renders_negative, FieldSpec, Scalar};

/// A homogeneous polynomial in k[u, v], or the zero form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryForm {
    field: FieldSpec,
    /// Empty for the zero form; otherwise degree + 1 entries, u-descending.
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    /// The zero form over `field`.
    pub fn zero(field: FieldSpec) -> BinaryForm {
        BinaryForm { field, coeffs: Vec::new() }
    }

    /// A form of degree `coeffs.len() - 1` from u-descending coefficients.
    /// An all-zero vector collapses to the distinguished zero form.
    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<Scalar>) -> Result<BinaryForm> {
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch { op: "form construction" });
            }
        }
        if coeffs.iter().all(Scalar::is_zero) {
            return Ok(BinaryForm::zero(field));
        }
        Ok(BinaryForm { field, coeffs })
    }

    /// The degree-0 form with value `c` (zero collapses to the zero form).
    pub fn constant(c: Scalar) -> BinaryForm {
        let field = c.field();
        if c.is_zero() {
            BinaryForm::zero(field)
        } else {
            BinaryForm { field, coeffs: vec![c] }
        }
    }

    /// The monomial c · u^(d−j) v^j.
    pub fn monomial(field: FieldSpec, d: usize, j: usize, c: Scalar) -> Result<BinaryForm> {
        assert!(j <= d, "monomial index within degree");
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[j] = c;
        BinaryForm::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `None` for the zero form.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == Some(0)
    }

    /// Coefficient of u^(d−j) v^j; zero form has no coefficients.
    pub fn coeff(&self, j: usize) -> &Scalar {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Largest a with u^a dividing the form (zero form: 0 by convention).
    pub fn u_valuation(&self) -> usize {
        match self.coeffs.iter().rposition(|c| !c.is_zero()) {
            Some(last) => self.coeffs.len() - 1 - last,
            None => 0,
        }
    }

    /// Largest b with v^b dividing the form (zero form: 0 by convention).
    pub fn v_valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.add_signed(other, true)
    }

    fn add_signed(&self, other: &BinaryForm, negate: bool) -> Result<BinaryForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { op: "form add" });
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(if negate { other.neg() } else { other.clone() });
        }
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::DegreeMismatch {
                op: "form add",
                left: self.coeffs.len() - 1,
                right: other.coeffs.len() - 1,
            });
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            out.push(if negate { a.sub(b)? } else { a.add(b)? });
        }
        BinaryForm::from_coeffs(self.field, out)
    }

    pub fn neg(&self) -> BinaryForm {
        BinaryForm {
            field: self.field,
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    /// Multiplication by a scalar (zero scalar gives the zero form).
    pub fn scale(&self, c: &Scalar) -> Result<BinaryForm> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch { op: "form scale" });
        }
        if c.is_zero() || self.is_zero() {
            return Ok(BinaryForm::zero(self.field));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<Vec<_>>>()?;
        BinaryForm::from_coeffs(self.field, coeffs)
    }

    /// Product of forms; degrees add.
    pub fn mul(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { op: "form mul" });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(BinaryForm::zero(self.field));
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        BinaryForm::from_coeffs(self.field, out)
    }

    /// Exact quotient `self / divisor`; errors unless the remainder is zero.
    pub fn div_exact(&self, divisor: &BinaryForm) -> Result<BinaryForm> {
        if self.field != divisor.field {
            return Err(Error::FieldMismatch { op: "form divide" });
        }
        if divisor.is_zero() {
            return Err(Error::DivisionByZero { op: "form divide" });
        }
        if self.is_zero() {
            return Ok(BinaryForm::zero(self.field));
        }
        let (deg_f, deg_g) = (self.coeffs.len() - 1, divisor.coeffs.len() - 1);
        if deg_f < deg_g {
            return Err(Error::NotDivisible);
        }
        // Pure powers of u and v divide out by index shifts; what remains has
        // a nonzero leading coefficient, so ordinary long division applies.
        let a = divisor.u_valuation();
        let b = divisor.v_valuation();
        if self.u_valuation() < a || self.v_valuation() < b {
            return Err(Error::NotDivisible);
        }
        let shifted: Vec<Scalar> = self.coeffs[b..=deg_f - a].to_vec();
        let core: Vec<Scalar> = divisor.coeffs[b..=deg_g - a].to_vec();
        let quotient = poly_div_exact(self.field, shifted, &core)?;
        BinaryForm::from_coeffs(self.field, quotient)
    }

    /// Monic greatest common divisor. Algorithm: strip each form's pure
    /// powers of u and v, run the univariate Euclidean algorithm on the
    /// dehomogenizations at v = 1 (valid since the stripped forms vanish at
    /// neither (1:0) nor (0:1)), rehomogenize, restore the shared pure
    /// powers, and normalize monic.
    pub fn gcd(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { op: "gcd" });
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(Error::BothZero),
            (false, true) => return self.monic(),
            (true, false) => return other.monic(),
            (false, false) => {}
        }
        let a = self.u_valuation().min(other.u_valuation());
        let b = self.v_valuation().min(other.v_valuation());
        let f = self.stripped();
        let g = other.stripped();
        // The stripped coefficient vectors are exactly the dehomogenized
        // univariate polynomials in u, leading coefficient first.
        let core = poly_gcd(f, g)?;
        let mut coeffs = vec![self.field.zero(); b];
        coeffs.extend(core);
        coeffs.extend(std::iter::repeat(self.field.zero()).take(a));
        BinaryForm::from_coeffs(self.field, coeffs)?.monic()
    }

    /// Coefficients with pure u/v powers divided out (nonzero forms only).
    fn stripped(&self) -> Vec<Scalar> {
        let lo = self.v_valuation();
        let hi = self.coeffs.len() - 1 - self.u_valuation();
        self.coeffs[lo..=hi].to_vec()
    }

    /// F(u₀, v₀) by Horner in the dominant variable.
    pub fn eval(&self, u0: &Scalar, v0: &Scalar) -> Result<Scalar> {
        if u0.field() != self.field || v0.field() != self.field {
            return Err(Error::FieldMismatch { op: "form evaluate" });
        }
        if u0.is_zero() && v0.is_zero() {
            return Err(Error::ZeroPoint);
        }
        if self.is_zero() {
            return Ok(self.field.zero());
        }
        let d = self.coeffs.len() - 1;
        if u0.is_zero() {
            // Only the pure-v term survives.
            return self.coeffs[d].mul(&v0.pow(d));
        }
        // Horner in u: (((c₀·u + c₁v)·u + c₂v²)·u + ...) with v-powers
        // accumulated alongside.
        let mut acc = self.coeffs[0].clone();
        let mut vpow = self.field.one();
        for c in &self.coeffs[1..] {
            vpow = vpow.mul(v0)?;
            acc = acc.mul(u0)?.add(&c.mul(&vpow)?)?;
        }
        Ok(acc)
    }

    /// The scalar multiple whose first nonzero coefficient is 1.
    pub fn monic(&self) -> Result<BinaryForm> {
        let lead = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroForm)?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        self.scale(&lead.inv()?)
    }

    /// F(G₀, G₁): substitute forms for the variables. The result is
    /// homogeneous of degree deg F · deg G when G₀, G₁ share degree deg G.
    pub fn compose(&self, g0: &BinaryForm, g1: &BinaryForm) -> Result<BinaryForm> {
        if self.is_zero() {
            return Ok(BinaryForm::zero(self.field));
        }
        let d = self.coeffs.len() - 1;
        // Power tables g0^k, g1^k for k = 0..=d.
        let one = BinaryForm::constant(self.field.one());
        let mut p0 = vec![one.clone()];
        let mut p1 = vec![one];
        for k in 1..=d {
            p0.push(p0[k - 1].mul(g0)?);
            p1.push(p1[k - 1].mul(g1)?);
        }
        let mut acc = BinaryForm::zero(self.field);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = p0[d - j].mul(&p1[j])?.scale(c)?;
            acc = add_any_degree(&acc, &term)?;
        }
        Ok(acc)
    }
}

/// Addition that tolerates a zero accumulator of unknown degree; the
/// composition loop starts from zero and every later term shares a degree.
fn add_any_degree(a: &BinaryForm, b: &BinaryForm) -> Result<BinaryForm> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    a.add(b)
}

/// Exact univariate division of dense leading-first coefficient vectors;
/// the divisor's leading entry is nonzero.
fn poly_div_exact(field: FieldSpec, mut num: Vec<Scalar>, den: &[Scalar]) -> Result<Vec<Scalar>> {
    if num.len() < den.len() {
        return Err(Error::NotDivisible);
    }
    let quo_len = num.len() - den.len() + 1;
    let lead_inv = den[0].inv()?;
    let mut quo = vec![field.zero(); quo_len];
    for k in 0..quo_len {
        let q = num[k].mul(&lead_inv)?;
        if !q.is_zero() {
            for (i, dcoef) in den.iter().enumerate() {
                num[k + i] = num[k + i].sub(&q.mul(dcoef)?)?;
            }
        }
        quo[k] = q;
    }
    if num.iter().any(|c| !c.is_zero()) {
        return Err(Error::NotDivisible);
    }
    Ok(quo)
}

/// Remainder of univariate division (leading-first vectors, divisor leading
/// entry nonzero); returned trimmed of leading zeros (empty = zero).
fn poly_rem(num: &[Scalar], den: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut num = num.to_vec();
    let lead_inv = den[0].inv()?;
    let mut k = 0;
    while num.len() - k >= den.len() {
        let q = num[k].mul(&lead_inv)?;
        if !q.is_zero() {
            for (i, dcoef) in den.iter().enumerate() {
                num[k + i] = num[k + i].sub(&q.mul(dcoef)?)?;
            }
        }
        k += 1;
    }
    let start = num.iter().position(|c| !c.is_zero()).unwrap_or(num.len());
    Ok(num[start..].to_vec())
}

/// Euclidean gcd of univariate polynomials given as leading-first vectors
/// with nonzero leading entries; result has nonzero leading entry.
fn poly_gcd(mut a: Vec<Scalar>, mut b: Vec<Scalar>) -> Result<Vec<Scalar>> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = poly_rem(&a, &b)?;
        a = b;
        b = r;
    }
    Ok(a)
}

impl fmt::Display for BinaryForm {
    /// Canonical rendering: terms in u-descending order, `*` between factors,
    /// exponents with `^`, unit coefficients elided, e.g.
    /// `u^2 - 2*u*v + v^2`. The zero form renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.coeffs.len() - 1;
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = renders_negative(c);
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = monomial_text(d - j, j);
            let mag = render_abs(c);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn monomial_text(u_exp: usize, v_exp: usize) -> String {
    let mut parts = Vec::new();
    match u_exp {
        0 => {}
        1 => parts.push("u".to_string()),
        e => parts.push(format!("u^{e}")),
    }
    match v_exp {
        0 => {}
        1 => parts.push("v".to_string()),
        e => parts.push(format!("v^{e}")),
    }
    parts.join("*")
}
