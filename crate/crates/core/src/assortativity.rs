//! Rich-club conditioning: steering degree assortativity by seeding
//! protected links among the top-degree nodes, or forbidding them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;

use crate::construction::ConstraintSet;
use crate::degree_sequence::DegreeList;
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::pipeline::{run_pipeline, PipelineConfig, PipelineOutput};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RichClubMode {
    /// Each pair in R becomes a protected edge with this probability.
    LinkProb(f64),
    /// No edge may join two members of R.
    Forbid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RichClubSelection {
    TopDegree,
    UniformRandom,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RichClubSpec {
    pub size: usize,
    pub mode: RichClubMode,
    pub selection: RichClubSelection,
}

impl RichClubSpec {
    fn check(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::InvalidSpec("rich club size must be positive".into()));
        }
        if let RichClubMode::LinkProb(p) = self.mode {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidSpec(format!("link probability {p} outside [0, 1]")));
            }
        }
        Ok(())
    }

    /// Parses `top<k>:<p>`, `random<k>:<p>` or `<...>:forbid`. A probability
    /// of exactly zero means "forbid", matching the `top10:0.00` label.
    /// `none` parses to `Ok(None)`.
    pub fn parse(s: &str) -> Result<Option<RichClubSpec>> {
        let s = s.trim();
        if s == "none" {
            return Ok(None);
        }
        let bad = || Error::InvalidSpec(format!("cannot parse rich-club condition {s:?}"));
        let (who, what) = s.split_once(':').ok_or_else(bad)?;
        let (selection, size) = if let Some(k) = who.strip_prefix("top") {
            (RichClubSelection::TopDegree, k)
        } else if let Some(k) = who.strip_prefix("random") {
            (RichClubSelection::UniformRandom, k)
        } else {
            return Err(bad());
        };
        let size: usize = size.parse().map_err(|_| bad())?;
        let mode = if what == "forbid" {
            RichClubMode::Forbid
        } else {
            let p: f64 = what.parse().map_err(|_| bad())?;
            if p == 0.0 {
                RichClubMode::Forbid
            } else {
                RichClubMode::LinkProb(p)
            }
        };
        let spec = RichClubSpec { size, mode, selection };
        spec.check()?;
        Ok(Some(spec))
    }
}

impl fmt::Display for RichClubSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let who = match self.selection {
            RichClubSelection::TopDegree => "top",
            RichClubSelection::UniformRandom => "random",
        };
        match self.mode {
            RichClubMode::Forbid => write!(f, "{who}{}:0.00", self.size),
            RichClubMode::LinkProb(p) => write!(f, "{who}{}:{p:.2}", self.size),
        }
    }
}

impl FromStr for RichClubSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RichClubSpec::parse(s)?.ok_or_else(|| Error::InvalidSpec("`none` is not a rich-club spec".into()))
    }
}

/// The rich-club node set R, ascending by label.
///
/// Top-degree selection sorts by descending degree with ties broken by
/// ascending label, and keeps the first `size`.
pub fn select_rich_club<R: Rng + ?Sized>(ndl: &DegreeList, spec: &RichClubSpec, rng: &mut R) -> Result<Vec<usize>> {
    spec.check()?;
    let n = ndl.len();
    if spec.size > n {
        return Err(Error::InvalidSpec(format!("rich club of {} from {n} nodes", spec.size)));
    }
    let mut members = match spec.selection {
        RichClubSelection::TopDegree => {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| (std::cmp::Reverse(ndl[i]), i));
            order.truncate(spec.size);
            order
        }
        RichClubSelection::UniformRandom => index::sample(rng, n, spec.size).into_vec(),
    };
    members.sort_unstable();
    Ok(members)
}

/// Protected or forbidden pairs over `members` according to the mode.
pub fn build_constraints<R: Rng + ?Sized>(
    members: &[usize],
    spec: &RichClubSpec,
    rng: &mut R,
) -> Result<ConstraintSet> {
    spec.check()?;
    let pairs =
        members.iter().enumerate().flat_map(|(i, &a)| members[i + 1..].iter().filter_map(move |&b| Edge::new(a, b)));
    match spec.mode {
        RichClubMode::LinkProb(p) => {
            let protected: BTreeSet<Edge> = pairs.filter(|_| rng.random_bool(p)).collect();
            ConstraintSet::new(protected, BTreeSet::new())
        }
        RichClubMode::Forbid => ConstraintSet::new(BTreeSet::new(), pairs.collect()),
    }
}

/// Runs the full pipeline with the rich-club condition `spec` in force.
pub fn run_conditioned_pipeline(
    ndl: &DegreeList,
    cfg: &PipelineConfig,
    spec: &RichClubSpec,
    seed: u64,
) -> Result<PipelineOutput> {
    let cfg = PipelineConfig { rich_club: Some(*spec), ..cfg.clone() };
    run_pipeline(ndl, &cfg, seed)
}
