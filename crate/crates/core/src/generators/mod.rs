//! Sequence families and the declarative specs that name them.

pub mod certify;
mod families;
mod kv;

use std::fmt;
use std::path::PathBuf;

use rug::Integer;

pub use families::{
    gen_arithmetic, gen_double_exp_union, gen_geometric, gen_interleave, gen_nonsquare_squares,
    gen_polynomial, gen_power, gen_product, gen_real_power, gen_sqrt_exp,
};
pub use kv::{parse_family_file, parse_kv_line, KvMap};

use crate::error::{Error, Result};
use crate::sequence::{self, SequencePrefix, DEFAULT_PRECISION};

/// Knobs shared by every generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub precision_bits: u32,
    /// Exact families whose terms outgrow this many bits switch to log domain.
    pub exact_bit_budget: u32,
    /// Consecutive repeated floors after which a convergent product is
    /// declared finite.
    pub stall_window: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            precision_bits: DEFAULT_PRECISION,
            exact_bit_budget: 128,
            stall_window: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyKind {
    /// `floor(n^(1/a))`, `a` in (0, 1]
    Power { a: f64 },
    /// `round(alpha * b^n)`
    GeometricLike { alpha: f64, b: f64 },
    /// `k + l n`
    Arithmetic { k: u64, l: u64 },
    /// `c_0 + c_1 n + c_2 n^2 + ...`
    Polynomial { coeffs: Vec<u64> },
    /// `floor(t n^d)`
    RealPower { t: f64, d: f64 },
    /// `{2^n} ∪ {2^(2^m) + 1}`
    DoubleExpUnion,
    /// `floor((1 + n^(-1/2))^n)`
    SqrtExp,
    /// `m^2` for non-square `m`
    NonSquareSquares,
    /// `floor(c * prod_{i<=n} (1 + i^(-alpha)))`
    Product { c: f64, alpha: f64 },
    FromFile { path: PathBuf, dedup: bool },
    /// Alternating blocks drawn from two families (experimental).
    Interleave {
        first: Box<FamilySpec>,
        second: Box<FamilySpec>,
        schedule: Vec<usize>,
    },
}

impl FamilyKind {
    pub fn quadratic(k: u64, l: u64, t: u64) -> Self {
        FamilyKind::Polynomial {
            coeffs: vec![k, l, t],
        }
    }

    /// Short machine-friendly name, as used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Power { .. } => "power",
            FamilyKind::GeometricLike { .. } => "geometric",
            FamilyKind::Arithmetic { .. } => "arithmetic",
            FamilyKind::Polynomial { coeffs } if coeffs.len() == 3 => "quadratic",
            FamilyKind::Polynomial { .. } => "polynomial",
            FamilyKind::RealPower { .. } => "real-power",
            FamilyKind::DoubleExpUnion => "double-exp-union",
            FamilyKind::SqrtExp => "sqrt-exp",
            FamilyKind::NonSquareSquares => "nonsquare-squares",
            FamilyKind::Product { .. } => "product",
            FamilyKind::FromFile { .. } => "file",
            FamilyKind::Interleave { .. } => "interleave",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Power { a } => write!(f, "power(a={a})"),
            FamilyKind::GeometricLike { alpha, b } => write!(f, "geometric(alpha={alpha},b={b})"),
            FamilyKind::Arithmetic { k, l } => write!(f, "arithmetic(k={k},l={l})"),
            FamilyKind::Polynomial { coeffs } if coeffs.len() == 3 => write!(
                f,
                "quadratic(k={},l={},t={})",
                coeffs[0], coeffs[1], coeffs[2]
            ),
            FamilyKind::Polynomial { coeffs } => {
                let c: Vec<String> = coeffs.iter().map(u64::to_string).collect();
                write!(f, "polynomial({})", c.join(","))
            }
            FamilyKind::RealPower { t, d } => write!(f, "real-power(t={t},d={d})"),
            FamilyKind::DoubleExpUnion => write!(f, "double-exp-union"),
            FamilyKind::SqrtExp => write!(f, "sqrt-exp"),
            FamilyKind::NonSquareSquares => write!(f, "nonsquare-squares"),
            FamilyKind::Product { c, alpha } => write!(f, "product(c={c},alpha={alpha})"),
            FamilyKind::FromFile { path, .. } => write!(f, "file({})", path.display()),
            FamilyKind::Interleave {
                first,
                second,
                schedule,
            } => write!(
                f,
                "interleave({},{},blocks={})",
                first.kind,
                second.kind,
                schedule.len()
            ),
        }
    }
}

/// A family together with the prefix length and precision to generate.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub length: usize,
    pub config: GenConfig,
}

/// Distinct values of a family that turned out to be finite.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSetReport {
    pub family_tag: String,
    pub values: Vec<Integer>,
    /// Product terms evaluated before the stall was declared.
    pub terms_evaluated: usize,
    pub stall_window: usize,
}

#[derive(Clone, Debug)]
pub enum Generated {
    Prefix(SequencePrefix),
    Finite(FiniteSetReport),
}

impl Generated {
    pub fn into_prefix(self) -> Result<SequencePrefix> {
        match self {
            Generated::Prefix(p) => Ok(p),
            Generated::Finite(r) => Err(Error::param(format!(
                "{} is finite ({} distinct values)",
                r.family_tag,
                r.values.len()
            ))),
        }
    }
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, length: usize) -> Self {
        FamilySpec {
            kind,
            length,
            config: GenConfig::default(),
        }
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.config.precision_bits = bits;
        self
    }

    pub fn with_length(mut self, length: usize) -> Self {
        self.length = length;
        self
    }

    pub fn label(&self) -> String {
        self.kind.to_string()
    }

    /// Checks parameter ranges without generating anything.
    pub fn validate(&self) -> Result<()> {
        sequence::check_precision(self.config.precision_bits)?;
        if self.length == 0 {
            return Err(Error::param("n must be at least 1"));
        }
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::param(format!("{name} must be positive")))
            }
        };
        match &self.kind {
            FamilyKind::Power { a } => {
                if !(a.is_finite() && *a > 0.0 && *a <= 1.0) {
                    return Err(Error::param("a must lie in (0,1]"));
                }
            }
            FamilyKind::GeometricLike { alpha, b } => {
                positive("alpha", *alpha)?;
                if !(b.is_finite() && *b > 1.0) {
                    return Err(Error::param("b must be greater than 1"));
                }
            }
            FamilyKind::Arithmetic { l, .. } => {
                if *l == 0 {
                    return Err(Error::param("l must be at least 1"));
                }
            }
            FamilyKind::Polynomial { coeffs } => {
                if coeffs.iter().skip(1).all(|&c| c == 0) {
                    return Err(Error::param(
                        "polynomial needs a positive non-constant coefficient",
                    ));
                }
            }
            FamilyKind::RealPower { t, d } => {
                positive("t", *t)?;
                if !(d.is_finite() && *d >= 1.0) {
                    return Err(Error::param("d must be at least 1"));
                }
            }
            FamilyKind::Product { c, alpha } => {
                positive("c", *c)?;
                positive("alpha", *alpha)?;
            }
            FamilyKind::Interleave {
                first,
                second,
                schedule,
            } => {
                if schedule.is_empty() || schedule.iter().any(|&b| b == 0) {
                    return Err(Error::param("schedule needs positive block lengths"));
                }
                first.validate()?;
                second.validate()?;
            }
            FamilyKind::DoubleExpUnion
            | FamilyKind::SqrtExp
            | FamilyKind::NonSquareSquares
            | FamilyKind::FromFile { .. } => {}
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Generated> {
        self.validate()?;
        let n = self.length;
        let cfg = &self.config;
        let prefix = match &self.kind {
            FamilyKind::Power { a } => gen_power(*a, n)?,
            FamilyKind::GeometricLike { alpha, b } => gen_geometric(*alpha, *b, n, cfg)?,
            FamilyKind::Arithmetic { k, l } => gen_arithmetic(*k, *l, n)?,
            FamilyKind::Polynomial { coeffs } => gen_polynomial(coeffs, n)?,
            FamilyKind::RealPower { t, d } => gen_real_power(*t, *d, n)?,
            FamilyKind::DoubleExpUnion => gen_double_exp_union(n)?,
            FamilyKind::SqrtExp => gen_sqrt_exp(n, cfg.precision_bits)?,
            FamilyKind::NonSquareSquares => gen_nonsquare_squares(n)?,
            FamilyKind::Product { c, alpha } => return gen_product(*c, *alpha, n, cfg),
            FamilyKind::FromFile { path, dedup } => {
                crate::textfmt::read_sequence_file(path, *dedup)?
            }
            FamilyKind::Interleave {
                first,
                second,
                schedule,
            } => gen_interleave(first, second, schedule, n)?,
        };
        let prefix = if prefix.is_exact() {
            prefix.with_precision(cfg.precision_bits)?
        } else {
            prefix
        };
        Ok(Generated::Prefix(prefix))
    }

    pub fn generate_prefix(&self) -> Result<SequencePrefix> {
        self.generate()?.into_prefix()
    }
}

/// The ten catalog families used by the table, the verifier manifest and the
/// acceptance suite, each at prefix length `n`.
///
/// The double-exponential union is kept at `n` as given; callers that want
/// the exact-mode N = 60 row pass that separately.
pub fn catalog(n: usize) -> Vec<FamilySpec> {
    vec![
        FamilySpec::new(FamilyKind::Power { a: 0.5 }, n),
        FamilySpec::new(FamilyKind::Power { a: 1.0 / 3.0 }, n),
        FamilySpec::new(FamilyKind::DoubleExpUnion, n),
        FamilySpec::new(FamilyKind::NonSquareSquares, n),
        FamilySpec::new(FamilyKind::GeometricLike { alpha: 3.0, b: 1.5 }, n),
        FamilySpec::new(FamilyKind::Arithmetic { k: 3, l: 5 }, n),
        FamilySpec::new(FamilyKind::quadratic(1, 2, 3), n),
        FamilySpec::new(FamilyKind::RealPower { t: 1.0, d: 2.5 }, n),
        FamilySpec::new(FamilyKind::SqrtExp, n),
        FamilySpec::new(FamilyKind::Product { c: 1.0, alpha: 0.5 }, n),
    ]
}
