//! Decision-matrix synthesis from adequate sets, exact strategy
//! evaluation, seeded simulation, and the end-to-end solver.
//!
//! A strategy is an N x Q^(N-1) table: what each player does (pass or
//! guess a color) upon each observable score. Built from an adequate set
//! `A`, the table makes the team win on exactly the complement of `A`:
//! for every outside configuration some player's line carries Q-1 set
//! elements, which pins that player's hat color given the score, and no
//! two outside configurations can disagree about the same cell.

use crate::adequate::{enumerate_adequate_sets_with_workers, is_adequate, AdequateSet};
use crate::error::{Error, Result};
use crate::game::{decode_config, line, score, Code, GameShape};
use crate::probability::ProbabilityVector;
use crate::regions::{classify, Classification, Region};
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A player's move upon one observed score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Pass,
    Guess(u8),
}

impl Action {
    /// The conventional numeric encoding: -1 for pass, else the color.
    pub fn as_i8(&self) -> i8 {
        match self {
            Action::Pass => -1,
            Action::Guess(c) => *c as i8,
        }
    }

    pub fn from_i8(value: i8, colors: usize) -> Result<Action> {
        match value {
            -1 => Ok(Action::Pass),
            c if c >= 0 && (c as usize) < colors => Ok(Action::Guess(c as u8)),
            _ => Err(Error::InvalidCodeSet {
                reason: format!("action {value} is not -1 or a color below {colors}"),
            }),
        }
    }
}

/// Per-player, per-score action table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionMatrix {
    shape: GameShape,
    cells: Vec<Action>,
}

impl DecisionMatrix {
    pub fn all_pass(shape: GameShape) -> Self {
        let cells = vec![Action::Pass; shape.players() * shape.num_scores() as usize];
        DecisionMatrix { shape, cells }
    }

    pub fn from_rows(shape: GameShape, rows: &[Vec<i8>]) -> Result<Self> {
        if rows.len() != shape.players() {
            return Err(Error::InvalidCodeSet {
                reason: format!(
                    "decision matrix needs {} rows, got {}",
                    shape.players(),
                    rows.len()
                ),
            });
        }
        let mut matrix = DecisionMatrix::all_pass(shape);
        for (player, row) in rows.iter().enumerate() {
            if row.len() != shape.num_scores() as usize {
                return Err(Error::InvalidCodeSet {
                    reason: format!(
                        "decision matrix rows need {} cells, got {}",
                        shape.num_scores(),
                        row.len()
                    ),
                });
            }
            for (sc, &v) in row.iter().enumerate() {
                matrix.cells[player * shape.num_scores() as usize + sc] =
                    Action::from_i8(v, shape.colors())?;
            }
        }
        Ok(matrix)
    }

    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    pub fn action(&self, player: usize, score: u32) -> Action {
        self.cells[player * self.shape.num_scores() as usize + score as usize]
    }

    fn set_action(&mut self, player: usize, score: u32, action: Action) -> Result<()> {
        let cell = &mut self.cells[player * self.shape.num_scores() as usize + score as usize];
        match *cell {
            Action::Pass => {
                *cell = action;
                Ok(())
            }
            existing if existing == action => Ok(()),
            existing => Err(Error::Internal(format!(
                "conflicting assignments to player {} score {}: {:?} vs {:?}",
                player + 1,
                score,
                existing,
                action
            ))),
        }
    }

    pub fn rows_i8(&self) -> Vec<Vec<i8>> {
        (0..self.shape.players())
            .map(|p| {
                (0..self.shape.num_scores())
                    .map(|s| self.action(p, s).as_i8())
                    .collect()
            })
            .collect()
    }

    /// Tab-separated grid: header of scores as N-1 base-Q digits, one row
    /// per player (1-based), blank cells for pass.
    pub fn render_grid(&self) -> String {
        let n = self.shape.players();
        let q = self.shape.colors() as u32;
        let width = n - 1;
        let mut lines = Vec::with_capacity(n + 1);
        let header: Vec<String> = (0..self.shape.num_scores())
            .map(|s| score_label(s, q, width))
            .collect();
        lines.push(format!("\t{}", header.join("\t")));
        for player in 0..n {
            let cells: Vec<String> = (0..self.shape.num_scores())
                .map(|s| match self.action(player, s) {
                    Action::Pass => String::new(),
                    Action::Guess(c) => c.to_string(),
                })
                .collect();
            lines.push(format!("{}\t{}", player + 1, cells.join("\t")));
        }
        lines.join("\n")
    }
}

fn score_label(score: u32, colors: u32, width: usize) -> String {
    let mut digits = vec![0u32; width];
    let mut rest = score;
    for pos in (0..width).rev() {
        digits[pos] = rest % colors;
        rest /= colors;
    }
    digits.iter().map(|d| d.to_string()).collect()
}

/// Builds the decision matrix realizing `set` as the exact loss set.
///
/// Every cell starts as pass. For each code outside the set, every player
/// whose line through it carries at least Q-1 set elements guesses the
/// digit that code assigns them. Conflicting assignments are impossible
/// for adequate sets and reported as an internal invariant violation, as
/// is any deviation of the resulting loss set from `set` itself; that
/// identity is what makes the winning probability the complement of the
/// set's mass.
pub fn build_decision_matrix(set: &AdequateSet) -> Result<DecisionMatrix> {
    let shape = *set.shape();
    if !is_adequate(&shape, set.codes())? {
        return Err(Error::NotAdequate);
    }
    let mut matrix = DecisionMatrix::all_pass(shape);
    let threshold = shape.colors() - 1;
    for code in 0..shape.num_codes() {
        if set.contains(code) {
            continue;
        }
        let digits = decode_config(&shape, code)?;
        for (player, &digit) in digits.iter().enumerate() {
            let hits = line(&shape, player, code)?
                .into_iter()
                .filter(|&c| set.contains(c))
                .count();
            if hits >= threshold {
                let sc = score(&shape, player, code)?;
                matrix.set_action(player, sc, Action::Guess(digit))?;
            }
        }
    }
    for code in 0..shape.num_codes() {
        if play_config(&matrix, code).win == set.contains(code) {
            return Err(Error::Internal(format!(
                "loss set of the built matrix deviates from the input set at code {code}"
            )));
        }
    }
    Ok(matrix)
}

/// One player's guess in a played configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerGuess {
    /// 0-based player index.
    pub player: usize,
    pub color: u8,
    pub correct: bool,
}

/// Outcome of one configuration under a fixed matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigTrace {
    pub code: Code,
    pub guesses: Vec<PlayerGuess>,
    pub win: bool,
}

/// Exact evaluation result: value, win/loss split, per-config traces.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyReport<T: Scalar> {
    pub win_probability: T,
    pub winning: Vec<Code>,
    pub losing: Vec<Code>,
    pub traces: Vec<ConfigTrace>,
}

fn play_config(matrix: &DecisionMatrix, code: Code) -> ConfigTrace {
    let shape = matrix.shape();
    let digits = decode_config(shape, code).expect("code in range");
    let mut guesses = Vec::new();
    for (player, &digit) in digits.iter().enumerate() {
        let sc = score(shape, player, code).expect("valid player and code");
        if let Action::Guess(color) = matrix.action(player, sc) {
            guesses.push(PlayerGuess {
                player,
                color,
                correct: digit == color,
            });
        }
    }
    let win = !guesses.is_empty() && guesses.iter().all(|g| g.correct);
    ConfigTrace { code, guesses, win }
}

/// Plays every configuration and accumulates the exact win probability.
pub fn evaluate_exact<T: Scalar>(
    matrix: &DecisionMatrix,
    probs: &ProbabilityVector<T>,
) -> Result<StrategyReport<T>> {
    let shape = matrix.shape();
    probs.check_colors(shape.colors())?;
    let mut winning = Vec::new();
    let mut losing = Vec::new();
    let mut traces = Vec::with_capacity(shape.num_codes() as usize);
    let mut win_probability = T::zero();
    for code in 0..shape.num_codes() {
        let trace = play_config(matrix, code);
        if trace.win {
            winning.push(code);
            win_probability = win_probability + crate::adequate::phi(shape, &[code], probs)?;
        } else {
            losing.push(code);
        }
        traces.push(trace);
    }
    Ok(StrategyReport {
        win_probability,
        winning,
        losing,
        traces,
    })
}

/// Result of a seeded Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationResult {
    pub estimate: f64,
    pub std_error: f64,
    pub wins: u64,
    pub trials: u64,
    pub seed: u64,
}

/// Draws `trials` configurations i.i.d. from `probs`, plays the matrix,
/// and returns the win frequency with its binomial standard error.
/// Identical inputs reproduce identical outputs on one build.
pub fn simulate(
    matrix: &DecisionMatrix,
    probs: &ProbabilityVector<f64>,
    trials: u64,
    seed: u64,
) -> Result<SimulationResult> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let shape = matrix.shape();
    probs.check_colors(shape.colors())?;
    let win_table: Vec<bool> = (0..shape.num_codes())
        .map(|code| play_config(matrix, code).win)
        .collect();
    let mut cumulative = Vec::with_capacity(shape.colors());
    let mut acc = 0.0;
    for c in 0..shape.colors() {
        acc += probs.get(c);
        cumulative.push(acc);
    }
    let q = shape.colors() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut wins = 0u64;
    for _ in 0..trials {
        let mut code: u32 = 0;
        for _ in 0..shape.players() {
            let u: f64 = rng.gen();
            let color = cumulative
                .iter()
                .position(|&edge| u < edge)
                .unwrap_or(shape.colors() - 1) as u32;
            code = code * q + color;
        }
        if win_table[code as usize] {
            wins += 1;
        }
    }
    let estimate = wins as f64 / trials as f64;
    let std_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(SimulationResult {
        estimate,
        std_error,
        wins,
        trials,
        seed,
    })
}

/// How [`solve`] finds the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    /// Enumerate every size-12 adequate set and keep the minimal-mass ones.
    Exhaustive,
    /// Classify the point and instantiate the region's representative set.
    ClosedForm,
}

/// One optimal strategy: its loss set, loss mass, and decision matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalStrategy<T: Scalar> {
    pub set: AdequateSet,
    pub phi: T,
    pub matrix: DecisionMatrix,
}

/// Solver output: the optimal value and the strategies achieving it.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T: Scalar> {
    pub mode: SolveMode,
    pub value: T,
    pub optimal: Vec<OptimalStrategy<T>>,
    /// Region information; present in closed-form mode.
    pub classification: Option<Classification<T>>,
}

/// Representative optimal loss set of a region, expressed for colors
/// sorted by descending probability.
pub fn representative_set(region: Region) -> [Code; 12] {
    match region {
        Region::A => [4, 5, 7, 8, 9, 13, 14, 16, 17, 18, 20, 24],
        Region::B => [4, 5, 7, 8, 9, 11, 15, 18, 22, 23, 25, 26],
        Region::C => [0, 2, 6, 13, 14, 16, 17, 18, 22, 23, 25, 26],
    }
}

/// Solves the 3-player 3-color game for the given color distribution.
pub fn solve<T: Scalar>(probs: &ProbabilityVector<T>, mode: SolveMode) -> Result<Solution<T>> {
    solve_with_workers(probs, mode, 0)
}

pub fn solve_with_workers<T: Scalar>(
    probs: &ProbabilityVector<T>,
    mode: SolveMode,
    workers: usize,
) -> Result<Solution<T>> {
    let shape = GameShape::new(3, 3)?;
    probs.check_colors(3)?;
    match mode {
        SolveMode::Exhaustive => {
            let sets = enumerate_adequate_sets_with_workers(&shape, 12, workers)?;
            let masses: Vec<T> = sets.iter().map(|s| s.phi(probs)).collect::<Result<_>>()?;
            let min_phi = masses
                .iter()
                .cloned()
                .min_by(|a, b| a.partial_cmp(b).expect("comparable masses"))
                .ok_or_else(|| Error::Internal("no adequate sets enumerated".into()))?;
            let mut optimal = Vec::new();
            for (set, phi) in sets.into_iter().zip(masses) {
                if (phi.clone() - min_phi.clone()).abs() <= T::tie_tolerance() {
                    let matrix = build_decision_matrix(&set)?;
                    optimal.push(OptimalStrategy { set, phi, matrix });
                }
            }
            Ok(Solution {
                mode,
                value: T::one() - min_phi,
                optimal,
                classification: None,
            })
        }
        SolveMode::ClosedForm => {
            let classification = classify(probs)?;
            // the representative set lives in sorted color space; relabel
            // its digits back to the input colors
            let mut inverse = [0u8; 3];
            for (input, &pos) in classification.sorted.permutation.iter().enumerate() {
                inverse[pos] = input as u8;
            }
            let sorted_space = representative_set(classification.label.region);
            let codes: Vec<Code> = sorted_space
                .iter()
                .map(|&c| crate::game::permute_colors(&shape, c, &inverse))
                .collect::<Result<_>>()?;
            let set = AdequateSet::new(shape, codes)?;
            let phi = set.phi(probs)?;
            let value = classification.value.clone();
            if (T::one() - phi.clone() - value.clone()).abs() > T::tie_tolerance() {
                return Err(Error::Internal(format!(
                    "representative set mass {phi} disagrees with closed form {value}"
                )));
            }
            let matrix = build_decision_matrix(&set)?;
            Ok(Solution {
                mode,
                value,
                optimal: vec![OptimalStrategy { set, phi, matrix }],
                classification: Some(classification),
            })
        }
    }
}
