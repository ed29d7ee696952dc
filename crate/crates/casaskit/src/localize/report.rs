//! Report types shared by the identity and inequality checkers.
//!
//! Serialized shape (one JSON object per report): `{id, backend, residual,
//! holds, hypothesis_ok, inputs}` with `lhs`/`mid`/`rhs` for interval and
//! sandwich verdicts. Exact rationals travel as strings, floats as doubles.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::polycore::GaussianRational;

/// Identity tags (wire ids are fixed interface strings).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityId {
    /// Centroid shift identity ("eq15").
    CentroidShift,
    /// Gap-variance identity ("eq16").
    GapVariance,
    /// Pairwise square-sum identity ("eq17").
    GapPairSum,
    /// Shared-root balance identity ("eq21").
    SharedRootBalance,
}

impl IdentityId {
    pub fn wire_id(&self) -> &'static str {
        match self {
            IdentityId::CentroidShift => "eq15",
            IdentityId::GapVariance => "eq16",
            IdentityId::GapPairSum => "eq17",
            IdentityId::SharedRootBalance => "eq21",
        }
    }
}

/// Inequality tags (wire ids are fixed interface strings).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundId {
    SmallDerivativeGap,      // eq26
    LargeDerivativeGap,      // eq27
    GapSandwich,             // eq28
    MultiRootInterval,       // eq29
    RootInterval,            // eq30 (order-zero specialization of eq29)
    DerivativeRootInterval,  // eq31
    CommonRootInterval,      // eq32
    SharedDerivativeBound,   // eq33
    MaxDistanceByGap,        // eq36
    MaxDistanceBySpan,       // eq37
    SpanLowerBound,          // eq38
    DerivativeMaxDistance,   // eq39
    DerivativeMaxDistanceAtCentroid, // eq40
    DerivativeSpanSandwich,  // eq41
    DerivativeSpanSandwichAtCentroid, // eq42
}

impl BoundId {
    pub fn wire_id(&self) -> &'static str {
        match self {
            BoundId::SmallDerivativeGap => "eq26",
            BoundId::LargeDerivativeGap => "eq27",
            BoundId::GapSandwich => "eq28",
            BoundId::MultiRootInterval => "eq29",
            BoundId::RootInterval => "eq30",
            BoundId::DerivativeRootInterval => "eq31",
            BoundId::CommonRootInterval => "eq32",
            BoundId::SharedDerivativeBound => "eq33",
            BoundId::MaxDistanceByGap => "eq36",
            BoundId::MaxDistanceBySpan => "eq37",
            BoundId::SpanLowerBound => "eq38",
            BoundId::DerivativeMaxDistance => "eq39",
            BoundId::DerivativeMaxDistanceAtCentroid => "eq40",
            BoundId::DerivativeSpanSandwich => "eq41",
            BoundId::DerivativeSpanSandwichAtCentroid => "eq42",
        }
    }
}

/// Which arithmetic produced a residual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Numeric,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Numeric => "numeric",
        }
    }
}

/// Residual of an identity: an exact Gaussian rational or a float magnitude.
#[derive(Clone, Debug)]
pub enum ResidualValue {
    Exact(GaussianRational),
    Numeric(f64),
}

impl ResidualValue {
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, ResidualValue::Exact(z) if z.is_zero())
    }

    /// Magnitude for tolerance comparisons.
    pub fn magnitude(&self) -> f64 {
        match self {
            ResidualValue::Exact(z) => z.abs_upper(),
            ResidualValue::Numeric(x) => x.abs(),
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        match self {
            ResidualValue::Exact(z) => z.is_zero(),
            ResidualValue::Numeric(x) => x.abs() <= tol,
        }
    }
}

impl Serialize for ResidualValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ResidualValue::Exact(z) => serializer.serialize_str(&z.to_text()),
            ResidualValue::Numeric(x) => serializer.serialize_f64(*x),
        }
    }
}

/// Echo of the parameters a report was computed from.
#[derive(Clone, Debug, Default, Serialize)]
pub struct InputsEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shared_root: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centroid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centroid_multiplicity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shared_multiplicity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_multiplicity: Option<usize>,
}

/// Residual verdict for one identity.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub backend: Backend,
    /// `None` when the hypothesis gate failed and nothing was evaluated.
    pub residual: Option<ResidualValue>,
    pub hypothesis_ok: bool,
    pub inputs: InputsEcho,
}

impl IdentityReport {
    pub fn gated(id: IdentityId, backend: Backend, inputs: InputsEcho) -> Self {
        IdentityReport { id, backend, residual: None, hypothesis_ok: false, inputs }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.hypothesis_ok
            && self.residual.as_ref().map(|r| r.passes(tol)).unwrap_or(false)
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("IdentityReport", 5)?;
        s.serialize_field("id", self.id.wire_id())?;
        s.serialize_field("backend", self.backend.name())?;
        s.serialize_field("residual", &self.residual)?;
        s.serialize_field("hypothesis_ok", &self.hypothesis_ok)?;
        s.serialize_field("inputs", &self.inputs)?;
        s.end()
    }
}

/// Verdict for one inequality: `lhs <= rhs`, or `lhs <= mid <= rhs` when
/// `mid` is present. `holds` is only meaningful when `hypothesis_ok`.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub id: BoundId,
    pub lhs: f64,
    pub mid: Option<f64>,
    pub rhs: f64,
    pub holds: bool,
    pub hypothesis_ok: bool,
    pub note: Option<String>,
    pub inputs: InputsEcho,
}

impl BoundReport {
    pub fn gated(id: BoundId, reason: &str, inputs: InputsEcho) -> Self {
        BoundReport {
            id,
            lhs: f64::NAN,
            mid: None,
            rhs: f64::NAN,
            holds: false,
            hypothesis_ok: false,
            note: Some(reason.to_string()),
            inputs,
        }
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BoundReport", 9)?;
        s.serialize_field("id", self.id.wire_id())?;
        s.serialize_field("backend", Backend::Numeric.name())?;
        s.serialize_field("lhs", &nan_to_null(self.lhs))?;
        s.serialize_field("mid", &self.mid.map(nan_to_null))?;
        s.serialize_field("rhs", &nan_to_null(self.rhs))?;
        s.serialize_field("holds", &self.holds)?;
        s.serialize_field("hypothesis_ok", &self.hypothesis_ok)?;
        s.serialize_field("note", &self.note)?;
        s.serialize_field("inputs", &self.inputs)?;
        s.end()
    }
}

fn nan_to_null(x: f64) -> Option<f64> {
    if x.is_nan() {
        None
    } else {
        Some(x)
    }
}
