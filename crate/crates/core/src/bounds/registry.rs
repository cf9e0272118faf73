//! The fourteen inequalities: labels, directions, equality and tightness
//! claims, and the parameter domain each is asserted on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityId {
    Besi11,
    Fcp100,
    Besi22,
    Pron,
    Besi33,
    Besi44,
    Besi55,
    Bi1,
    Bi2,
    Bi3,
    Bi4,
    Bi5,
    CorLower,
    CorUpper,
}

impl InequalityId {
    pub const ALL: [InequalityId; 14] = [
        InequalityId::Besi11,
        InequalityId::Fcp100,
        InequalityId::Besi22,
        InequalityId::Pron,
        InequalityId::Besi33,
        InequalityId::Besi44,
        InequalityId::Besi55,
        InequalityId::Bi1,
        InequalityId::Bi2,
        InequalityId::Bi3,
        InequalityId::Bi4,
        InequalityId::Bi5,
        InequalityId::CorLower,
        InequalityId::CorUpper,
    ];

    pub fn label(self) -> &'static str {
        use InequalityId::*;
        match self {
            Besi11 => "besi11",
            Fcp100 => "fcp100",
            Besi22 => "besi22",
            Pron => "pron",
            Besi33 => "besi33",
            Besi44 => "besi44",
            Besi55 => "besi55",
            Bi1 => "bi1",
            Bi2 => "bi2",
            Bi3 => "bi3",
            Bi4 => "bi4",
            Bi5 => "bi5",
            CorLower => "cor_lower",
            CorUpper => "cor_upper",
        }
    }

    pub(crate) fn index(self) -> usize {
        Self::ALL.iter().position(|&id| id == self).expect("registered id")
    }

    pub fn descriptor(self) -> InequalityDescriptor {
        use Direction::*;
        use InequalityId::*;
        let (direction, strict) = match self {
            Besi11 | Bi1 | Bi2 | Bi4 | Bi5 => (LowerBoundOnIntegral, true),
            Besi44 => (LowerBoundOnIntegral, false),
            Fcp100 | Besi22 | Besi33 | Bi3 => (UpperBoundOnIntegral, true),
            Pron | Besi55 => (UpperBoundOnIntegral, false),
            CorLower => (LowerBoundOnF, true),
            CorUpper => (UpperBoundOnF, true),
        };
        let equality = match self {
            Pron | Besi44 | Besi55 => EqualityCondition::IffBetaZero,
            Bi2 | Bi3 => EqualityCondition::IfTwoNuPlusNIsMinusOne,
            _ => EqualityCondition::None,
        };
        let tight_at_infinity = match self {
            Besi11 => TightAtInfinity::IfBetaZero,
            CorLower | CorUpper => TightAtInfinity::NotClaimed,
            _ => TightAtInfinity::Yes,
        };
        let tight_at_zero = matches!(self, Besi22 | Besi44 | Bi3);
        let beta = match self {
            Besi11 | Besi44 => BetaRange::NonNegative,
            Pron | Besi33 | Besi55 => BetaRange::HalfOpenUnit,
            Bi4 | Bi5 => BetaRange::OpenUnit,
            Fcp100 | Besi22 | Bi1 | Bi2 | Bi3 | CorLower | CorUpper => BetaRange::Unused,
        };
        InequalityDescriptor {
            id: self,
            direction,
            strict,
            equality,
            tight_at_infinity,
            tight_at_zero,
            beta,
            uses_n: matches!(self, Besi11 | Besi22 | Bi2 | Bi3),
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.label() == key)
            .ok_or_else(|| Error::domain(format!("unknown inequality id '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    LowerBoundOnIntegral,
    UpperBoundOnIntegral,
    LowerBoundOnF,
    UpperBoundOnF,
}

impl Direction {
    pub fn is_lower(self) -> bool {
        matches!(self, Direction::LowerBoundOnIntegral | Direction::LowerBoundOnF)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityCondition {
    None,
    IffBetaZero,
    IfTwoNuPlusNIsMinusOne,
}

impl EqualityCondition {
    pub fn describe(self) -> &'static str {
        match self {
            EqualityCondition::None => "never",
            EqualityCondition::IffBetaZero => "if and only if beta = 0",
            EqualityCondition::IfTwoNuPlusNIsMinusOne => "if 2 nu + n = -1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TightAtInfinity {
    Yes,
    IfBetaZero,
    NotClaimed,
}

/// Admissible β for one inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaRange {
    /// The integral carries no exponential weight; β is ignored.
    Unused,
    /// β ≥ 0
    NonNegative,
    /// 0 ≤ β < 1
    HalfOpenUnit,
    /// 0 < β < 1
    OpenUnit,
}

impl BetaRange {
    fn contains(self, beta: f64) -> bool {
        match self {
            BetaRange::Unused => true,
            BetaRange::NonNegative => beta >= 0.0 && beta.is_finite(),
            BetaRange::HalfOpenUnit => (0.0..1.0).contains(&beta),
            BetaRange::OpenUnit => beta > 0.0 && beta < 1.0,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            BetaRange::Unused => "any beta",
            BetaRange::NonNegative => "beta >= 0",
            BetaRange::HalfOpenUnit => "0 <= beta < 1",
            BetaRange::OpenUnit => "0 < beta < 1",
        }
    }
}

/// One end of an interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Endpoint {
    pub value: f64,
    pub inclusive: bool,
}

impl Endpoint {
    const fn open(value: f64) -> Self {
        Endpoint { value, inclusive: false }
    }
    const fn closed(value: f64) -> Self {
        Endpoint { value, inclusive: true }
    }
}

/// Orders and parameters of one check: the inequality is stated for
/// t̃_{μ+n,ν+n} (ids with a shift), weight e^{−βu}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub mu: f64,
    pub nu: f64,
    pub n: f64,
    pub beta: f64,
}

impl BoundParams {
    pub fn new(mu: f64, nu: f64, n: f64, beta: f64) -> Self {
        BoundParams { mu, nu, n, beta }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityDescriptor {
    pub id: InequalityId,
    pub direction: Direction,
    pub strict: bool,
    pub equality: EqualityCondition,
    pub tight_at_infinity: TightAtInfinity,
    pub tight_at_zero: bool,
    pub beta: BetaRange,
    pub uses_n: bool,
}

impl InequalityDescriptor {
    /// Exclusive lower bound on μ.
    pub fn mu_lower(&self, n: f64) -> f64 {
        use InequalityId::*;
        match self.id {
            Besi11 => -0.5 * (n + 5.0),
            Fcp100 | Pron | Besi33 => -0.5,
            Besi22 | Bi2 | Bi3 => -0.5 * (n + 3.0),
            Besi44 => -3.0,
            Besi55 | Bi1 | Bi4 | Bi5 | CorLower | CorUpper => -1.5,
        }
    }

    /// Admissible ν for a given μ and n.
    pub fn nu_range(&self, mu: f64, n: f64) -> (Endpoint, Endpoint) {
        use InequalityId::*;
        match self.id {
            Besi11 => (Endpoint::open(-n - mu - 2.0), Endpoint::closed(mu + 3.0)),
            Fcp100 | Pron | Besi33 => (Endpoint::closed(0.5), Endpoint::open(mu + 1.0)),
            Besi22 => (Endpoint::open(-0.5 * (n + 1.0)), Endpoint::open(mu + 1.0)),
            // closed at 2ν + n = −1, where equality is asserted
            Bi2 | Bi3 => (Endpoint::closed(-0.5 * (n + 1.0)), Endpoint::open(mu + 1.0)),
            Besi44 => (Endpoint::open(-(mu + 3.0)), Endpoint::open(mu + 3.0)),
            Besi55 | Bi1 | Bi4 | Bi5 => (Endpoint::closed(-0.5), Endpoint::open(mu + 1.0)),
            CorLower | CorUpper => (Endpoint::open(-0.5), Endpoint::open(mu + 1.0)),
        }
    }

    fn rules(&self) -> (&'static str, &'static str) {
        use InequalityId::*;
        match self.id {
            Besi11 => ("mu > -(n+5)/2", "-n-mu-2 < nu <= mu+3"),
            Fcp100 | Pron | Besi33 => ("mu > -1/2", "1/2 <= nu < mu+1"),
            Besi22 => ("mu > -(n+3)/2", "-(n+1)/2 < nu < mu+1"),
            Bi2 | Bi3 => ("mu > -(n+3)/2", "-(n+1)/2 <= nu < mu+1"),
            Besi44 => ("mu > -3", "|nu| < mu+3"),
            Besi55 | Bi1 | Bi4 | Bi5 => ("mu > -3/2", "-1/2 <= nu < mu+1"),
            CorLower | CorUpper => ("mu > -3/2", "-1/2 < nu < mu+1"),
        }
    }

    /// Replace parameters the inequality does not involve by zero.
    pub fn effective(&self, p: BoundParams) -> BoundParams {
        BoundParams {
            n: if self.uses_n { p.n } else { 0.0 },
            beta: if self.beta == BetaRange::Unused { 0.0 } else { p.beta },
            ..p
        }
    }

    /// Check `p` against the stated constraints, naming the first one violated.
    pub fn check_domain(&self, p: &BoundParams) -> Result<()> {
        let id = self.id.label();
        let (mu_rule, nu_rule) = self.rules();
        if ![p.mu, p.nu, p.n, p.beta].iter().all(|v| v.is_finite()) {
            return Err(Error::domain(format!("{id}: parameters must be finite")));
        }
        if self.uses_n && !(p.n > -1.0) {
            return Err(Error::domain(format!("{id} requires n > -1 (got n = {})", p.n)));
        }
        if !self.beta.contains(p.beta) {
            return Err(Error::domain(format!("{id} requires {} (got beta = {})", self.beta.describe(), p.beta)));
        }
        if !(p.mu > self.mu_lower(p.n)) {
            return Err(Error::domain(format!("{id} requires {mu_rule} (got mu = {}, n = {})", p.mu, p.n)));
        }
        let (lo, hi) = self.nu_range(p.mu, p.n);
        let above = if lo.inclusive { p.nu >= lo.value } else { p.nu > lo.value };
        let below = if hi.inclusive { p.nu <= hi.value } else { p.nu < hi.value };
        if !(above && below) {
            return Err(Error::domain(format!(
                "{id} requires {nu_rule} (got mu = {}, nu = {}, n = {})",
                p.mu, p.nu, p.n
            )));
        }
        Ok(())
    }
}
