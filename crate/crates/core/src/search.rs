//! Optimizing the crossing number over drawings of a fixed graph.
//!
//! Two strategies:
//!
//! * **Exhaustive** visits every generic placement on a small integer grid.
//!   Its certificate proves optimality over that grid only; for `K_{n,n}` the
//!   closed form `4n C(n,3)` is what closes the gap to the unrestricted
//!   minimum.
//! * **Anneal** runs independent seeded simulated-annealing restarts inside a
//!   coordinate box and reports the best drawing seen.
//!
//! Results are deterministic given the task, including the seed. Restarts run
//! on the rayon pool and are merged in restart order.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::formula_ocn_knn;
use crate::drawing::{
    crossing_number, crossing_number_by_quadruples, Color, ColoredDrawing, DrawingError, GraphSpec,
};
use crate::generators::{
    enumerate_colored_configs, generic_point_sets, random_generic_points, GenerateError, GridSpec,
};
use crate::geometry::{Configuration, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration size {size} exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Generate(GenerateError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

impl From<GenerateError> for SearchError {
    fn from(e: GenerateError) -> Self {
        match e {
            GenerateError::BudgetExceeded { size, budget } => {
                SearchError::BudgetExceeded { size, budget }
            }
            GenerateError::InvalidParameter(msg) => SearchError::InvalidParameter(msg),
            other => SearchError::Generate(other),
        }
    }
}

/// The graph whose drawings are searched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFamily {
    /// `K_{n,n}`, first `n` vertices black.
    CompleteBipartite { n: usize },
    /// `K_m`, all vertices black.
    Complete { m: usize },
    /// A fixed colored graph.
    Explicit {
        colors: Vec<Color>,
        graph: GraphSpec,
    },
}

impl GraphFamily {
    pub fn vertex_count(&self) -> usize {
        match self {
            GraphFamily::CompleteBipartite { n } => 2 * n,
            GraphFamily::Complete { m } => *m,
            GraphFamily::Explicit { colors, .. } => colors.len(),
        }
    }

    pub fn colors(&self) -> Vec<Color> {
        match self {
            GraphFamily::CompleteBipartite { n } => std::iter::repeat_n(Color::Black, *n)
                .chain(std::iter::repeat_n(Color::White, *n))
                .collect(),
            GraphFamily::Complete { m } => vec![Color::Black; *m],
            GraphFamily::Explicit { colors, .. } => colors.clone(),
        }
    }

    pub fn graph(&self) -> GraphSpec {
        match self {
            GraphFamily::CompleteBipartite { .. } => GraphSpec::complete_bipartite(&self.colors()),
            GraphFamily::Complete { m } => GraphSpec::complete(*m),
            GraphFamily::Explicit { graph, .. } => graph.clone(),
        }
    }

    /// `4n C(n,3)` for `K_{n,n}`.
    pub fn known_optimum(&self) -> Option<u64> {
        match self {
            GraphFamily::CompleteBipartite { n } => formula_ocn_knn(*n as u64).ok(),
            _ => None,
        }
    }

    fn drawing(&self, points: Vec<Point>) -> Result<ColoredDrawing, SearchError> {
        Ok(ColoredDrawing::new(
            Configuration::new(points).map_err(DrawingError::from)?,
            self.colors(),
            self.graph(),
        )?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Minimize,
    Maximize,
}

impl Objective {
    /// True when `candidate` is strictly better than `incumbent`.
    pub fn improves(self, candidate: u64, incumbent: u64) -> bool {
        match self {
            Objective::Minimize => candidate < incumbent,
            Objective::Maximize => candidate > incumbent,
        }
    }

    /// Signed worsening of moving from `from` to `to` (negative is better).
    fn worsening(self, from: u64, to: u64) -> f64 {
        let delta = to as f64 - from as f64;
        match self {
            Objective::Minimize => delta,
            Objective::Maximize => -delta,
        }
    }
}

/// Simulated-annealing knobs.
///
/// Defaults from [`AnnealParams::for_family`]: initial temperature
/// `(T + 1) / 4` where `T` is `4n C(n,3)` for `K_{n,n}` and the edge count
/// otherwise; cooling 0.995 per step; perturbation radius 3; coordinate box
/// `[0, 5m]` for `m` vertices (`[0, 10n]` for `K_{n,n}`); 8 restarts; 64
/// proposal retries per step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealParams {
    pub initial_temperature: f64,
    pub cooling: f64,
    pub radius: i64,
    pub box_size: i64,
    pub restarts: u32,
    pub max_retries: u32,
}

impl AnnealParams {
    pub fn for_family(family: &GraphFamily) -> Self {
        let scale = family
            .known_optimum()
            .unwrap_or_else(|| family.graph().edges().len() as u64);
        AnnealParams {
            initial_temperature: (scale as f64 + 1.0) / 4.0,
            cooling: 0.995,
            radius: 3,
            box_size: 5 * family.vertex_count().max(1) as i64,
            restarts: 8,
            max_retries: 64,
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        let bad = |msg: String| Err(SearchError::InvalidParameter(msg));
        if !(self.initial_temperature.is_finite() && self.initial_temperature >= 0.0) {
            return bad(format!(
                "initial temperature {} must be finite and >= 0",
                self.initial_temperature
            ));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return bad(format!(
                "cooling factor {} must lie in (0, 1)",
                self.cooling
            ));
        }
        if self.radius < 0 {
            return bad(format!("perturbation radius {} must be >= 0", self.radius));
        }
        if self.box_size < 1 || self.box_size > crate::geometry::MAX_COORD {
            return bad(format!("coordinate box {} out of range", self.box_size));
        }
        if self.restarts == 0 {
            return bad("at least one restart is required".into());
        }
        if self.max_retries == 0 {
            return bad("at least one proposal retry is required".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Strategy {
    Exhaustive { grid: GridSpec },
    Anneal(AnnealParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchTask {
    pub family: GraphFamily,
    pub objective: Objective,
    pub strategy: Strategy,
    pub seed: u64,
    /// Exhaustive: cap on the enumeration size. Anneal: cap on crossing
    /// number evaluations across all restarts.
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Optimal over every generic placement on the grid.
    ExhaustiveProof,
    /// Best value seen; no optimality claim.
    HeuristicBest,
}

/// One improvement of the best value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePoint {
    pub evaluation: u64,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best: ColoredDrawing,
    pub best_value: u64,
    pub evaluations: u64,
    pub certificate: Certificate,
    /// Improvements of the winning restart (exhaustive: of the single scan).
    pub trace: Vec<TracePoint>,
    /// Restart that produced `best`; 0 for exhaustive runs.
    pub best_restart: u32,
}

pub fn search(task: &SearchTask) -> Result<SearchResult, SearchError> {
    if task.budget == 0 {
        return Err(SearchError::InvalidParameter(
            "budget must be positive".into(),
        ));
    }
    validate_family(&task.family)?;
    let result = match &task.strategy {
        Strategy::Exhaustive { grid } => exhaustive(task, *grid)?,
        Strategy::Anneal(params) => anneal(task, params)?,
    };
    certify(task, result)
}

fn validate_family(family: &GraphFamily) -> Result<(), SearchError> {
    match family {
        GraphFamily::CompleteBipartite { n: 0 } | GraphFamily::Complete { m: 0 } => Err(
            SearchError::InvalidParameter("the graph must have at least one vertex".into()),
        ),
        GraphFamily::Explicit { colors, graph } if colors.len() != graph.vertex_count() => {
            Err(SearchError::InvalidParameter(format!(
                "{} colors for a graph on {} vertices",
                colors.len(),
                graph.vertex_count()
            )))
        }
        GraphFamily::Explicit { colors, .. } if colors.is_empty() => Err(
            SearchError::InvalidParameter("the graph must have at least one vertex".into()),
        ),
        _ => Ok(()),
    }
}

/// Re-evaluate the winner by 4-subsets and hold `K_{n,n}` minima to the
/// closed-form lower bound.
fn certify(task: &SearchTask, result: SearchResult) -> Result<SearchResult, SearchError> {
    let check = crossing_number_by_quadruples(&result.best);
    if check != result.best_value {
        return Err(SearchError::InvariantViolation(format!(
            "best value {} but the drawing re-evaluates to {check}",
            result.best_value
        )));
    }
    if let (Objective::Minimize, Some(bound)) = (task.objective, task.family.known_optimum()) {
        if result.best_value < bound {
            return Err(SearchError::InvariantViolation(format!(
                "found {} below the proven minimum {bound}",
                result.best_value
            )));
        }
    }
    Ok(result)
}

struct Tracker {
    objective: Objective,
    best: Option<(ColoredDrawing, u64)>,
    evaluations: u64,
    trace: Vec<TracePoint>,
}

impl Tracker {
    fn new(objective: Objective) -> Self {
        Tracker {
            objective,
            best: None,
            evaluations: 0,
            trace: Vec::new(),
        }
    }

    fn offer(&mut self, d: &ColoredDrawing, value: u64) {
        let better = match &self.best {
            None => true,
            Some((_, v)) => self.objective.improves(value, *v),
        };
        if better {
            self.best = Some((d.clone(), value));
            self.trace.push(TracePoint {
                evaluation: self.evaluations,
                value,
            });
        }
    }
}

fn exhaustive(task: &SearchTask, grid: GridSpec) -> Result<SearchResult, SearchError> {
    let budget = u128::from(task.budget);
    let mut tracker = Tracker::new(task.objective);
    let mut visit = |d: ColoredDrawing| {
        tracker.evaluations += 1;
        let v = crossing_number(&d);
        tracker.offer(&d, v);
    };
    match &task.family {
        GraphFamily::CompleteBipartite { n } => {
            enumerate_colored_configs(grid, *n, budget)?.for_each(&mut visit);
        }
        family => {
            let m = family.vertex_count();
            if grid.cell_count() < m as u64 {
                return Err(SearchError::InvalidParameter(format!(
                    "grid {grid} has fewer than {m} points"
                )));
            }
            let sets = crate::counting::binomial(grid.cell_count(), m as u64);
            let labelings: u128 = match family {
                GraphFamily::Complete { .. } => 1,
                _ => (1..=m as u128).product(),
            };
            let size = sets
                .and_then(|s| s.checked_mul(labelings))
                .unwrap_or(u128::MAX);
            if size > budget {
                return Err(SearchError::BudgetExceeded { size, budget });
            }
            let colors = family.colors();
            let graph = family.graph();
            for config in generic_point_sets(grid, m) {
                if let GraphFamily::Complete { .. } = family {
                    visit(ColoredDrawing::new(config, colors.clone(), graph.clone())?);
                    continue;
                }
                for perm in (0..m).permutations(m) {
                    let points = perm.iter().map(|&k| config.points()[k]).collect();
                    visit(family.drawing(points)?);
                }
            }
        }
    }
    let Tracker {
        best,
        evaluations,
        trace,
        ..
    } = tracker;
    let (best, best_value) = best.ok_or_else(|| {
        SearchError::InvalidParameter(format!("grid {grid} admits no generic placement"))
    })?;
    Ok(SearchResult {
        best,
        best_value,
        evaluations,
        certificate: Certificate::ExhaustiveProof,
        trace,
        best_restart: 0,
    })
}

/// Outcome of one annealing step.
#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    /// The candidate replaced the current drawing.
    Accepted { drawing: ColoredDrawing, value: u64 },
    /// A candidate was evaluated and turned down.
    Rejected { value: u64 },
    /// No valid candidate within the retry budget; nothing was evaluated.
    NullMove,
}

/// Propose moving one uniformly chosen vertex by an integer offset in
/// `[-radius, radius]^2`, staying inside `[0, box_size]^2` and keeping the
/// configuration generic, then accept by the Metropolis rule: improvements
/// and ties always, a worsening of `delta` with probability
/// `exp(-delta / temperature)` (never at temperature 0).
///
/// A zero offset counts as a coincident proposal and is retried.
pub fn anneal_step<R: Rng>(
    current: &ColoredDrawing,
    current_value: u64,
    temperature: f64,
    objective: Objective,
    params: &AnnealParams,
    rng: &mut R,
) -> StepOutcome {
    let m = current.vertex_count();
    if m == 0 {
        return StepOutcome::NullMove;
    }
    for _ in 0..params.max_retries {
        let v = rng.gen_range(0..m);
        let dx = rng.gen_range(-params.radius..=params.radius);
        let dy = rng.gen_range(-params.radius..=params.radius);
        if dx == 0 && dy == 0 {
            continue;
        }
        let old = current.points()[v];
        let to = Point::new(old.x + dx, old.y + dy);
        if !(0..=params.box_size).contains(&to.x) || !(0..=params.box_size).contains(&to.y) {
            continue;
        }
        let Ok(candidate) = current.with_moved_vertex(v, to) else {
            continue;
        };
        let value = crossing_number(&candidate);
        let worsening = objective.worsening(current_value, value);
        let accept = worsening <= 0.0
            || (temperature > 0.0 && rng.gen::<f64>() < (-worsening / temperature).exp());
        return if accept {
            StepOutcome::Accepted {
                drawing: candidate,
                value,
            }
        } else {
            StepOutcome::Rejected { value }
        };
    }
    StepOutcome::NullMove
}

struct RestartOutcome {
    best: ColoredDrawing,
    best_value: u64,
    evaluations: u64,
    trace: Vec<TracePoint>,
}

fn restart_rng(seed: u64, restart: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(restart));
    rng
}

fn anneal(task: &SearchTask, params: &AnnealParams) -> Result<SearchResult, SearchError> {
    params.validate()?;
    let restarts = params.restarts;
    if task.budget < u64::from(restarts) {
        return Err(SearchError::InvalidParameter(format!(
            "budget {} is smaller than the {restarts} restarts",
            task.budget
        )));
    }
    let m = task.family.vertex_count();
    if (params.box_size as u64 + 1) < m as u64 {
        return Err(SearchError::InvalidParameter(format!(
            "coordinate box {} too small for {m} vertices",
            params.box_size
        )));
    }
    let share = task.budget / u64::from(restarts);
    let extra = task.budget % u64::from(restarts);

    let outcomes = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let budget = share + u64::from(u64::from(r) < extra);
            run_restart(task, params, r, budget)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut best_idx = 0;
    for (k, o) in outcomes.iter().enumerate().skip(1) {
        if task
            .objective
            .improves(o.best_value, outcomes[best_idx].best_value)
        {
            best_idx = k;
        }
    }
    let evaluations = outcomes.iter().map(|o| o.evaluations).sum();
    let winner = outcomes
        .into_iter()
        .nth(best_idx)
        .expect("at least one restart");
    Ok(SearchResult {
        best: winner.best,
        best_value: winner.best_value,
        evaluations,
        certificate: Certificate::HeuristicBest,
        trace: winner.trace,
        best_restart: best_idx as u32,
    })
}

fn run_restart(
    task: &SearchTask,
    params: &AnnealParams,
    restart: u32,
    budget: u64,
) -> Result<RestartOutcome, SearchError> {
    let mut rng = restart_rng(task.seed, restart);
    let points = random_generic_points(task.family.vertex_count(), params.box_size, &mut rng)?;
    let mut current = task.family.drawing(points)?;
    let mut current_value = crossing_number(&current);
    let mut evaluations = 1;
    let mut best = current.clone();
    let mut best_value = current_value;
    let mut trace = vec![TracePoint {
        evaluation: 1,
        value: current_value,
    }];
    let mut temperature = params.initial_temperature;
    // Each step consumes one unit of budget whether or not it evaluates, so
    // degenerate parameters (radius 0) still terminate.
    for _ in 1..budget {
        match anneal_step(
            &current,
            current_value,
            temperature,
            task.objective,
            params,
            &mut rng,
        ) {
            StepOutcome::Accepted { drawing, value } => {
                evaluations += 1;
                current = drawing;
                current_value = value;
                if task.objective.improves(value, best_value) {
                    best = current.clone();
                    best_value = value;
                    trace.push(TracePoint {
                        evaluation: evaluations,
                        value,
                    });
                }
            }
            StepOutcome::Rejected { .. } => evaluations += 1,
            StepOutcome::NullMove => {}
        }
        temperature *= params.cooling;
    }
    Ok(RestartOutcome {
        best,
        best_value,
        evaluations,
        trace,
    })
}
