//! Seeded, reproducible instance generation.

use std::str::FromStr;

use greenpack_core::numeric::{format_exact, parse_rational};
use greenpack_core::{Instance, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::InstanceFile;
use crate::{CliError, Result};

/// Sizes in `uniform` are multiples of this.
pub const UNIFORM_RESOLUTION: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SizeDist {
    /// Uniform over the multiples of `1/1000` in `[lo, hi]`.
    Uniform { lo: Rational, hi: Rational },
    /// Denominator uniform in `1..=max_den`, then numerator uniform in `1..=den`.
    Grid { max_den: u32 },
}

impl FromStr for SizeDist {
    type Err = CliError;

    /// `uniform:LO,HI` or `grid:D`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || CliError::Invalid(format!("bad size distribution {s:?}; use uniform:LO,HI or grid:D"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "uniform" => {
                let (lo, hi) = args.split_once(',').ok_or_else(bad)?;
                let lo = parse_rational(lo.trim()).map_err(|_| bad())?;
                let hi = parse_rational(hi.trim()).map_err(|_| bad())?;
                Ok(SizeDist::Uniform { lo, hi })
            }
            "grid" => Ok(SizeDist::Grid { max_den: args.trim().parse().map_err(|_| bad())? }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum BudgetMode {
    #[default]
    None,
    /// `U` equals the singleton-packing energy, the least feasible budget.
    Tight,
    /// `U` is the singleton-packing energy times the factor.
    Slack(Rational),
}

impl FromStr for BudgetMode {
    type Err = CliError;

    /// `none`, `tight` or `slack:R`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || CliError::Invalid(format!("bad budget mode {s:?}; use none, tight or slack:R"));
        match s.split_once(':') {
            None if s == "none" => Ok(BudgetMode::None),
            None if s == "tight" => Ok(BudgetMode::Tight),
            Some(("slack", r)) => Ok(BudgetMode::Slack(parse_rational(r.trim()).map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub seed: u64,
    pub dist: SizeDist,
    pub beta: Rational,
    pub green: Rational,
    pub budget: BudgetMode,
    pub name: Option<String>,
}

fn sample(rng: &mut ChaCha8Rng, dist: &SizeDist) -> Result<Rational> {
    match dist {
        SizeDist::Uniform { lo, hi } => {
            let res = Rational::from_integer(UNIFORM_RESOLUTION.into());
            let one = Rational::from_integer(1.into());
            if *lo > *hi || *hi > one || *hi <= Rational::from_integer(0.into()) {
                return Err(CliError::Invalid(format!("uniform bounds must satisfy 0 < lo <= hi <= 1, got {lo}, {hi}")));
            }
            let first = (lo * &res).ceil().to_integer().max(1.into());
            let last = (hi * &res).floor().to_integer();
            if first > last {
                return Err(CliError::Invalid(format!("no multiple of 1/{UNIFORM_RESOLUTION} in [{lo}, {hi}]")));
            }
            let (first, last): (i64, i64) = (
                first.try_into().expect("bounded by resolution"),
                last.try_into().expect("bounded by resolution"),
            );
            Ok(Rational::new(rng.gen_range(first..=last).into(), UNIFORM_RESOLUTION.into()))
        }
        SizeDist::Grid { max_den } => {
            if *max_den == 0 {
                return Err(CliError::Invalid("grid denominator bound must be positive".into()));
            }
            let den = rng.gen_range(1..=*max_den);
            let num = rng.gen_range(1..=den);
            Ok(Rational::new(num.into(), den.into()))
        }
    }
}

/// Draws an instance. The same parameters always give the same file.
pub fn generate(params: &GenParams) -> Result<InstanceFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let sizes = (0..params.n).map(|_| sample(&mut rng, &params.dist)).collect::<Result<Vec<_>>>()?;
    let inst = Instance::gbp(sizes, params.beta.clone(), params.green.clone())?;
    let budget = match &params.budget {
        BudgetMode::None => None,
        BudgetMode::Tight => Some(inst.singleton_energy()),
        BudgetMode::Slack(r) => Some(inst.singleton_energy() * r),
    };
    let inst = inst.with_budget(budget)?;
    let mut file = InstanceFile::from_instance(&inst, params.name.clone());
    // keep the drawn spelling of the parameters
    file.beta = format_exact(&params.beta);
    file.green = format_exact(&params.green);
    Ok(file)
}
