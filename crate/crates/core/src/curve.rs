//! Time grids and sampled solutions shared by the closed-form evaluators and
//! the oracles.

use crate::error::{ensure, Error, Result};
use crate::series::{SeriesControl, Status};

/// Uniform grid `t_i = i·h`, `h = t_max / m`, `i = 0..=m`.
///
/// Node 0 is the lower limit of every integral; reported curves start at
/// node 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    m: usize,
}

impl TimeGrid {
    /// `m` must be a power of two.
    pub fn new(t_max: f64, m: usize) -> Result<Self> {
        ensure(t_max > 0.0 && t_max.is_finite(), "t_max must be positive", t_max)?;
        ensure(m.is_power_of_two(), "grid steps m must be a power of two", m as f64)?;
        Ok(Self { t_max, m })
    }

    /// Grid with step exactly `2^-log2_inv_h` covering `[0, t_max]`.
    pub fn with_step(t_max: f64, log2_inv_h: u32) -> Result<Self> {
        let m = t_max * f64::from(log2_inv_h).exp2();
        ensure(
            m >= 1.0 && m == m.round() && (m as usize).is_power_of_two(),
            "t_max / h must be a power of two",
            m,
        )?;
        Self::new(t_max, m as usize)
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn steps(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> f64 {
        self.t_max / self.m as f64
    }

    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        if i == self.m {
            self.t_max
        } else {
            i as f64 * self.h()
        }
    }

    /// Reported nodes t_1 < … < t_m.
    pub fn nodes(&self) -> Vec<f64> {
        (1..=self.m).map(|i| self.node(i)).collect()
    }
}

/// Values on every node of a [`TimeGrid`], node 0 included.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
}

impl GridSamples {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.steps() + 1 {
            return Err(Error::Invalid(format!(
                "grid has {} nodes but {} values were given",
                grid.steps() + 1,
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..=grid.steps()).map(|i| f(grid.node(i))).collect();
        Self { grid, values }
    }

    /// Value at the node nearest to `t` (exact when `t` is a node).
    pub fn at(&self, t: f64) -> Option<f64> {
        let i = (t / self.grid.h()).round();
        if i < 0.0 || i as usize > self.grid.steps() {
            return None;
        }
        Some(self.values[i as usize])
    }

    /// Drop node 0 and attach metadata.
    pub fn into_curve(self, description: impl Into<String>) -> SolutionCurve {
        let grid = self.grid.nodes();
        let values = self.values[1..].to_vec();
        let statuses = vec![Status::Converged; grid.len()];
        SolutionCurve {
            grid,
            values,
            statuses,
            meta: CurveMeta {
                description: description.into(),
                ctrl: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveMeta {
    pub description: String,
    /// Truncation policy of the evaluator that produced the curve, if any.
    pub ctrl: Option<SeriesControl>,
}

/// Sampled solution `N(t_i)` on a strictly increasing positive grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionCurve {
    grid: Vec<f64>,
    values: Vec<f64>,
    statuses: Vec<Status>,
    pub meta: CurveMeta,
}

impl SolutionCurve {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, statuses: Vec<Status>, meta: CurveMeta) -> Result<Self> {
        if grid.len() != values.len() || grid.len() != statuses.len() {
            return Err(Error::Invalid(
                "grid, values and statuses must have equal length".into(),
            ));
        }
        if grid.is_empty() {
            return Err(Error::Invalid("a curve needs at least one point".into()));
        }
        ensure(grid[0] > 0.0, "curve grid must start after t = 0", grid[0])?;
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invalid("curve grid must be strictly increasing".into()));
        }
        Ok(Self {
            grid,
            values,
            statuses,
            meta,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn statuses(&self) -> &[Status] {
        &self.statuses
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Most severe per-point status.
    pub fn worst_status(&self) -> Status {
        self.statuses.iter().fold(Status::Converged, |a, &s| a.worst(s))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, Status)> + '_ {
        self.grid
            .iter()
            .zip(&self.values)
            .zip(&self.statuses)
            .map(|((&t, &v), &s)| (t, v, s))
    }
}
