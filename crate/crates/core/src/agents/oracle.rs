use std::collections::VecDeque;

use rand::{Rng, RngCore};

use super::Policy;
use crate::gridworld::{Action, CellCode, Observation, MAP_SIZE, VIEW};

type Pos = (usize, usize);

const HALF: usize = VIEW / 2;

/// Shortest-path policy with a memory of the map seen during the episode.
///
/// The agent's position can be read off the wall bands in the window, so
/// every observation is merged into one map. The oracle heads for the
/// nearest known object that fulfils the sub-task in the observation,
/// walking around other objects; ties go to the first action in
/// `Up, Down, Left, Right` order. With no such object known it walks to the
/// nearest cell that uncovers unseen interior cells. Only when neither is
/// possible does it walk through other objects, and failing that it acts
/// uniformly at random.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyOracle {
    known: [[Option<CellCode>; MAP_SIZE]; MAP_SIZE],
}

impl Default for GreedyOracle {
    fn default() -> Self {
        GreedyOracle {
            known: [[None; MAP_SIZE]; MAP_SIZE],
        }
    }
}

impl GreedyOracle {
    pub fn new() -> Self {
        GreedyOracle::default()
    }

    fn remember(&mut self, obs: &Observation, (ar, ac): Pos) {
        for r in 0..VIEW {
            for c in 0..VIEW {
                let (Some(mr), Some(mc)) = ((ar + r).checked_sub(HALF), (ac + c).checked_sub(HALF))
                else {
                    continue;
                };
                if mr < MAP_SIZE && mc < MAP_SIZE {
                    let code = match obs.get(r, c) {
                        CellCode::Agent => CellCode::Empty,
                        code => code,
                    };
                    self.known[mr][mc] = Some(code);
                }
            }
        }
    }

    /// First action of the cheapest route to a fulfilling object. Free cells
    /// cost one step; with `cross`, other objects may be walked through at a
    /// cost above any route without them.
    fn route(&self, start: Pos, fulfils: &dyn Fn(CellCode) -> bool, cross: bool) -> Option<Action> {
        const CROSS: usize = MAP_SIZE * MAP_SIZE;
        let mut dist = [[usize::MAX; MAP_SIZE]; MAP_SIZE];
        let mut first = [[None::<Action>; MAP_SIZE]; MAP_SIZE];
        dist[start.0][start.1] = 0;
        let mut best: Option<(usize, Action)> = None;
        let mut frontier: Vec<(usize, Pos)> = vec![(0, start)];
        while let Some((d, cell)) = pop_min(&mut frontier) {
            if d > dist[cell.0][cell.1] {
                continue;
            }
            for a in Action::ALL {
                let Some(next) = neighbour(cell, a) else {
                    continue;
                };
                let Some(code) = self.known[next.0][next.1] else {
                    continue;
                };
                let step_first = first[cell.0][cell.1].unwrap_or(a);
                if fulfils(code) {
                    if best.is_none_or(|(b, _)| d + 1 < b) {
                        best = Some((d + 1, step_first));
                    }
                    continue;
                }
                let cost = match code {
                    CellCode::Empty => 1,
                    CellCode::Object(_) if cross => CROSS + 1,
                    _ => continue,
                };
                if d + cost < dist[next.0][next.1] {
                    dist[next.0][next.1] = d + cost;
                    first[next.0][next.1] = Some(step_first);
                    frontier.push((d + cost, next));
                }
            }
        }
        best.map(|(_, a)| a)
    }

    /// First action towards the nearest free cell from which unseen interior
    /// cells come into view, preferring cells that uncover more.
    fn explore(&self, start: Pos) -> Option<Action> {
        let gain = |(r, c): Pos| {
            let mut n = 0;
            for mr in 1..MAP_SIZE - 1 {
                for mc in 1..MAP_SIZE - 1 {
                    if self.known[mr][mc].is_none()
                        && mr.abs_diff(r) <= HALF
                        && mc.abs_diff(c) <= HALF
                    {
                        n += 1;
                    }
                }
            }
            n
        };
        let mut first = [[None::<Action>; MAP_SIZE]; MAP_SIZE];
        let mut seen = [[false; MAP_SIZE]; MAP_SIZE];
        seen[start.0][start.1] = true;
        let mut queue = VecDeque::from([(start, 0usize)]);
        let mut best: Option<(usize, usize, Action)> = None;
        while let Some((cell, d)) = queue.pop_front() {
            if let Some(a) = first[cell.0][cell.1] {
                let g = gain(cell);
                let better = match best {
                    None => g > 0,
                    Some((bd, bg, _)) => d == bd && g > bg,
                };
                if better {
                    best = Some((d, g, a));
                }
                if best.is_some_and(|(bd, _, _)| d > bd) {
                    break;
                }
            }
            for a in Action::ALL {
                let Some(next) = neighbour(cell, a) else {
                    continue;
                };
                if seen[next.0][next.1] || self.known[next.0][next.1] != Some(CellCode::Empty) {
                    continue;
                }
                seen[next.0][next.1] = true;
                first[next.0][next.1] = Some(first[cell.0][cell.1].unwrap_or(a));
                queue.push_back((next, d + 1));
            }
        }
        best.map(|(_, _, a)| a)
    }
}

impl Policy for GreedyOracle {
    fn act(&mut self, obs: &Observation, rng: &mut dyn RngCore) -> Action {
        let here = locate(obs);
        self.remember(obs, here);
        let Some(task) = obs.decode_task() else {
            return random_action(rng);
        };
        let fulfils = |code: CellCode| match code {
            CellCode::Object(o) => task.fulfilled_by(&o.atom()),
            _ => false,
        };
        self.route(here, &fulfils, false)
            .or_else(|| self.explore(here))
            .or_else(|| self.route(here, &fulfils, true))
            .unwrap_or_else(|| random_action(rng))
    }

    fn reset(&mut self) {
        *self = GreedyOracle::default();
    }
}

fn random_action(rng: &mut dyn RngCore) -> Action {
    Action::ALL[rng.random_range(0..Action::ALL.len())]
}

fn neighbour((r, c): Pos, a: Action) -> Option<Pos> {
    let (dr, dc) = a.delta();
    let r = r.checked_add_signed(dr)?;
    let c = c.checked_add_signed(dc)?;
    (r < MAP_SIZE && c < MAP_SIZE).then_some((r, c))
}

// Removes the entry with the smallest cost, earliest inserted on ties.
fn pop_min(frontier: &mut Vec<(usize, Pos)>) -> Option<(usize, Pos)> {
    let idx = frontier
        .iter()
        .enumerate()
        .min_by_key(|(i, (d, _))| (*d, *i))
        .map(|(i, _)| i)?;
    Some(frontier.remove(idx))
}

/// Agent position on the map, read off the wall bands in the window.
fn locate(obs: &Observation) -> Pos {
    let wall_row = |r: usize| (0..VIEW).all(|c| obs.get(r, c) == CellCode::Wall);
    let wall_col = |c: usize| (0..VIEW).all(|r| obs.get(r, c) == CellCode::Wall);
    let top = (0..HALF).take_while(|&r| wall_row(r)).count();
    let bottom = (HALF + 1..VIEW).rev().take_while(|&r| wall_row(r)).count();
    let left = (0..HALF).take_while(|&c| wall_col(c)).count();
    let right = (HALF + 1..VIEW).rev().take_while(|&c| wall_col(c)).count();
    let mid = MAP_SIZE / 2;
    (mid + bottom - top, mid + right - left)
}
