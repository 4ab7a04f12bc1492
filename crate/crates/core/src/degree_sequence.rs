//! Node degree lists: sampling from normal and power-law distributions,
//! validation, and summary statistics.
//!
//! A node degree list (ndl) is the per-node degree prescription in
//! node-label order. Unlike a degree sequence it is not sorted: values keep
//! the order in which the generator produced them.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, NdlCondition, Result};

/// Redraws allowed for a single value before sampling gives up.
const VALUE_RETRIES: usize = 10_000;
/// Redraws of the chosen element during parity repair.
const PARITY_RETRIES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeList(Vec<usize>);

impl DegreeList {
    pub fn new(degrees: Vec<usize>) -> DegreeList {
        DegreeList(degrees)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// The edge count M implied by the list, i.e. half the degree sum.
    pub fn edge_count(&self) -> usize {
        self.sum() / 2
    }
}

impl std::ops::Index<usize> for DegreeList {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl From<Vec<usize>> for DegreeList {
    fn from(v: Vec<usize>) -> Self {
        DegreeList(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeDistribution {
    Normal { mean: f64, stddev: f64 },
    PowerLaw { gamma: f64, xmin: usize },
}

impl DegreeDistribution {
    /// Parses `normal:<mean>,<stddev>` or `powerlaw:<gamma>[,<xmin>]`.
    /// A missing `xmin` defaults to `deg_min`.
    pub fn parse(s: &str, deg_min: usize) -> Result<DegreeDistribution> {
        let bad = || Error::InvalidSpec(format!("cannot parse distribution {s:?}"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        match (kind.trim(), args.as_slice()) {
            ("normal", [mean, sd]) => Ok(DegreeDistribution::Normal {
                mean: mean.parse().map_err(|_| bad())?,
                stddev: sd.parse().map_err(|_| bad())?,
            }),
            ("powerlaw", [gamma]) => {
                Ok(DegreeDistribution::PowerLaw { gamma: gamma.parse().map_err(|_| bad())?, xmin: deg_min })
            }
            ("powerlaw", [gamma, xmin]) => Ok(DegreeDistribution::PowerLaw {
                gamma: gamma.parse().map_err(|_| bad())?,
                xmin: xmin.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for DegreeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeDistribution::Normal { mean, stddev } => write!(f, "normal:{mean},{stddev}"),
            DegreeDistribution::PowerLaw { gamma, xmin } => write!(f, "powerlaw:{gamma},{xmin}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeSpec {
    pub distribution: DegreeDistribution,
    pub deg_min: usize,
    pub deg_max_cap: usize,
}

impl DegreeSpec {
    /// Spec with the default cap `floor(n / 3)`.
    pub fn new(distribution: DegreeDistribution, deg_min: usize, n: usize) -> DegreeSpec {
        DegreeSpec { distribution, deg_min, deg_max_cap: default_cap(n) }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("need at least 2 nodes, got {n}")));
        }
        if self.deg_min == 0 {
            return Err(Error::InvalidSpec("deg_min must be positive".into()));
        }
        match self.distribution {
            DegreeDistribution::Normal { mean, stddev } => {
                if !(stddev > 0.0 && stddev.is_finite() && mean.is_finite()) {
                    return Err(Error::InvalidSpec(format!("bad normal parameters {mean}, {stddev}")));
                }
            }
            DegreeDistribution::PowerLaw { gamma, xmin } => {
                if !(gamma > 1.0 && gamma.is_finite()) {
                    return Err(Error::InvalidSpec(format!("power-law gamma must exceed 1, got {gamma}")));
                }
                if xmin < self.deg_min {
                    return Err(Error::InvalidSpec(format!("xmin {xmin} below deg_min {}", self.deg_min)));
                }
            }
        }
        if self.deg_min > self.deg_max_cap || self.deg_max_cap >= n {
            return Err(Error::SamplingFailure(format!(
                "no admissible degree: deg_min {} cap {} n {n}",
                self.deg_min, self.deg_max_cap
            )));
        }
        Ok(())
    }

    /// One admissible degree value.
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        match self.distribution {
            DegreeDistribution::Normal { mean, stddev } => {
                let normal = Normal::new(mean, stddev).map_err(|e| Error::InvalidSpec(e.to_string()))?;
                let x = normal.sample(rng).round();
                Ok((x.max(0.0) as usize).clamp(self.deg_min, self.deg_max_cap))
            }
            DegreeDistribution::PowerLaw { gamma, xmin } => {
                for _ in 0..VALUE_RETRIES {
                    let k = sample_powerlaw_value(gamma, xmin, rng)?;
                    if (self.deg_min..=self.deg_max_cap).contains(&k) {
                        return Ok(k);
                    }
                }
                Err(Error::SamplingFailure(format!(
                    "no power-law draw within [{}, {}] after {VALUE_RETRIES} tries",
                    self.deg_min, self.deg_max_cap
                )))
            }
        }
    }
}

/// The default degree cap for `n` nodes.
pub fn default_cap(n: usize) -> usize {
    n / 3
}

/// Continuous power-law inverse transform `xmin * (1 - r)^(-1 / (gamma - 1))`.
pub fn powerlaw_inverse(gamma: f64, xmin: usize, r: f64) -> f64 {
    xmin as f64 * (1.0 - r).powf(-1.0 / (gamma - 1.0))
}

/// Draws a continuous power-law value and rounds it to the nearest integer.
pub fn sample_powerlaw_value<R: Rng + ?Sized>(gamma: f64, xmin: usize, rng: &mut R) -> Result<usize> {
    if gamma.is_nan() || gamma <= 1.0 || xmin == 0 {
        return Err(Error::InvalidSpec(format!("power law needs gamma > 1 and xmin >= 1, got {gamma}, {xmin}")));
    }
    let r: f64 = rng.random();
    Ok(powerlaw_inverse(gamma, xmin, r).round() as usize)
}

/// Samples an `n`-node degree list. Values stay in generator order.
pub fn sample_ndl<R: Rng + ?Sized>(spec: &DegreeSpec, n: usize, rng: &mut R) -> Result<DegreeList> {
    spec.check(n)?;
    let mut degrees = (0..n).map(|_| spec.draw(rng)).collect::<Result<Vec<_>>>()?;
    fix_parity(&mut degrees, spec, rng)?;
    let ndl = DegreeList(degrees);
    validate_ndl(&ndl, n, spec)?;
    Ok(ndl)
}

/// Makes the degree sum even by touching exactly one element: first redraw
/// one random element until its parity flips, and failing that, bump a
/// random element by one.
pub(crate) fn fix_parity<R: Rng + ?Sized>(degrees: &mut [usize], spec: &DegreeSpec, rng: &mut R) -> Result<()> {
    if degrees.iter().sum::<usize>() % 2 == 0 {
        return Ok(());
    }
    let i = rng.random_range(0..degrees.len());
    for _ in 0..PARITY_RETRIES {
        let v = spec.draw(rng)?;
        if v % 2 != degrees[i] % 2 {
            degrees[i] = v;
            return Ok(());
        }
    }
    let raisable: Vec<usize> = (0..degrees.len()).filter(|&j| degrees[j] < spec.deg_max_cap).collect();
    if !raisable.is_empty() {
        degrees[raisable[rng.random_range(0..raisable.len())]] += 1;
        return Ok(());
    }
    let lowerable: Vec<usize> = (0..degrees.len()).filter(|&j| degrees[j] > spec.deg_min).collect();
    if !lowerable.is_empty() {
        degrees[lowerable[rng.random_range(0..lowerable.len())]] -= 1;
        return Ok(());
    }
    Err(Error::SamplingFailure("cannot make the degree sum even within [deg_min, cap]".into()))
}

/// Checks the three well-formedness conditions, reporting the first failure.
pub fn validate_ndl(ndl: &DegreeList, n: usize, spec: &DegreeSpec) -> Result<()> {
    let violation = |condition, node| Err(Error::NdlViolation { condition, node });
    if ndl.len() != n {
        return violation(NdlCondition::Length, None);
    }
    if !ndl.sum().is_multiple_of(2) {
        return violation(NdlCondition::EvenSum, None);
    }
    if let Some(i) = ndl.0.iter().position(|&d| d < spec.deg_min.max(1)) {
        return violation(NdlCondition::MinDegree, Some(i));
    }
    if let Some(i) = ndl.0.iter().position(|&d| d > spec.deg_max_cap || d >= n) {
        return violation(NdlCondition::MaxDegree, Some(i));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct NdlStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator).
    pub stddev: f64,
    /// Most frequent value, smallest on ties.
    pub mode: usize,
    pub median: f64,
    /// Implied edge count, half the degree sum.
    pub edge_count: usize,
}

/// Summary statistics of a non-empty list. Returns `None` for an empty one.
pub fn ndl_stats(ndl: &DegreeList) -> Option<NdlStats> {
    let d = ndl.as_slice();
    if d.is_empty() {
        return None;
    }
    let n = d.len() as f64;
    let mean = ndl.sum() as f64 / n;
    let ss: f64 = d.iter().map(|&x| (x as f64 - mean).powi(2)).sum();
    let stddev = if d.len() > 1 { (ss / (n - 1.0)).sqrt() } else { 0.0 };

    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in d {
        *counts.entry(x).or_default() += 1;
    }
    let mode = counts.iter().fold((0, 0), |best, (&k, &c)| if c > best.1 { (k, c) } else { best }).0;

    let mut sorted = d.to_vec();
    sorted.sort_unstable();
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 1 { sorted[mid] as f64 } else { (sorted[mid - 1] + sorted[mid]) as f64 / 2.0 };

    Some(NdlStats {
        min: sorted[0],
        max: *sorted.last().unwrap(),
        mean,
        stddev,
        mode,
        median,
        edge_count: ndl.edge_count(),
    })
}
