use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Inclusive range of strand counts, written `a..b` (or `a..=b`, or a single `a`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct NRange {
    pub start: usize,
    pub end: usize,
}

impl NRange {
    pub fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    pub fn iter(&self) -> RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("invalid strand count {x:?}"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let a = parse(s)?;
                (a, a)
            }
        };
        if b < a {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self::new(a, b))
    }
}

impl From<NRange> for String {
    fn from(r: NRange) -> Self {
        r.to_string()
    }
}

impl TryFrom<String> for NRange {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Rank,
    Altsum,
    Matrix,
    Closed,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Rank, Route::Altsum, Route::Matrix, Route::Closed];

    pub fn name(self) -> &'static str {
        match self {
            Route::Rank => "rank",
            Route::Altsum => "altsum",
            Route::Matrix => "matrix",
            Route::Closed => "closed",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
}

pub const DEFAULT_MAX_RANK_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub level: u32,
    pub n: NRange,
    pub routes: Vec<Route>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub max_rank_n: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(mut self) -> Result<Self, CliError> {
        if self.level < 3 {
            return Err(CliError::Usage(format!("--level must be at least 3, got {}", self.level)));
        }
        if self.routes.is_empty() {
            return Err(CliError::Usage("select at least one route".into()));
        }
        self.routes.sort();
        self.routes.dedup();
        Ok(self)
    }

    pub fn uses(&self, r: Route) -> bool {
        self.routes.contains(&r)
    }

    /// Rank routes are capped; fails before any work is done.
    pub fn check_rank_cap(&self) -> Result<(), CliError> {
        if self.uses(Route::Rank) && self.n.end > self.max_rank_n {
            return Err(CliError::ResourceCap(format!(
                "rank route requested up to n = {} but --max-rank-n is {}",
                self.n.end, self.max_rank_n
            )));
        }
        Ok(())
    }
}
