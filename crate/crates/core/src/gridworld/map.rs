use std::fmt;
use std::str::FromStr;

use super::{GridError, ObjectId};
use crate::ttl::{AtomName, LabelSet};

pub const MAP_SIZE: usize = 7;

/// Row/column coordinate on the 7×7 map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn is_interior(self) -> bool {
        (1..MAP_SIZE - 1).contains(&self.row) && (1..MAP_SIZE - 1).contains(&self.col)
    }

    /// Neighbour in direction `a`, or `None` when it would leave the map.
    pub fn moved(self, a: Action) -> Option<Cell> {
        let (dr, dc) = a.delta();
        let row = self.row.checked_add_signed(dr)?;
        let col = self.col.checked_add_signed(dc)?;
        (row < MAP_SIZE && col < MAP_SIZE).then_some(Cell { row, col })
    }

    pub fn interior() -> impl Iterator<Item = Cell> {
        (1..MAP_SIZE - 1).flat_map(|row| (1..MAP_SIZE - 1).map(move |col| Cell { row, col }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Up,
    Down,
    Left,
    Right,
}

impl Action {
    /// Fixed order, also used to break ties.
    pub const ALL: [Action; 4] = [Action::Up, Action::Down, Action::Left, Action::Right];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Action> {
        Action::ALL.get(i).copied()
    }

    pub fn delta(self) -> (isize, isize) {
        match self {
            Action::Up => (-1, 0),
            Action::Down => (1, 0),
            Action::Left => (0, -1),
            Action::Right => (0, 1),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Up => "up",
            Action::Down => "down",
            Action::Left => "left",
            Action::Right => "right",
        })
    }
}

impl FromStr for Action {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "up" => Ok(Action::Up),
            "down" => Ok(Action::Down),
            "left" => Ok(Action::Left),
            "right" => Ok(Action::Right),
            other => Err(format!("unknown action {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tile {
    Wall,
    Empty,
    Object(ObjectId),
}

/// A 7×7 map: a wall border around a 5×5 interior.
///
/// The agent's own cell is always empty: objects are consumed when touched.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridMap {
    tiles: [[Tile; MAP_SIZE]; MAP_SIZE],
    agent: Cell,
}

impl GridMap {
    /// An empty walled map with the agent at `agent`.
    pub fn empty(agent: Cell) -> Result<Self, GridError> {
        if !agent.is_interior() {
            return Err(GridError::AgentNotInterior(agent));
        }
        let mut tiles = [[Tile::Empty; MAP_SIZE]; MAP_SIZE];
        for (r, row) in tiles.iter_mut().enumerate() {
            for (c, tile) in row.iter_mut().enumerate() {
                if !Cell::new(r, c).is_interior() {
                    *tile = Tile::Wall;
                }
            }
        }
        Ok(GridMap { tiles, agent })
    }

    pub fn agent(&self) -> Cell {
        self.agent
    }

    pub fn tile(&self, cell: Cell) -> Tile {
        self.tiles[cell.row][cell.col]
    }

    /// Tile at signed coordinates; anything off the map reads as wall.
    pub fn tile_at(&self, row: isize, col: isize) -> Tile {
        if row < 0 || col < 0 || row >= MAP_SIZE as isize || col >= MAP_SIZE as isize {
            Tile::Wall
        } else {
            self.tiles[row as usize][col as usize]
        }
    }

    pub fn place(&mut self, cell: Cell, object: ObjectId) -> Result<(), GridError> {
        if !cell.is_interior() || cell == self.agent {
            return Err(GridError::BadPlacement(cell));
        }
        if self.tile(cell) != Tile::Empty {
            return Err(GridError::BadPlacement(cell));
        }
        self.tiles[cell.row][cell.col] = Tile::Object(object);
        Ok(())
    }

    pub fn objects(&self) -> Vec<(Cell, ObjectId)> {
        Cell::interior()
            .filter_map(|cell| match self.tile(cell) {
                Tile::Object(o) => Some((cell, o)),
                _ => None,
            })
            .collect()
    }

    pub fn object_count(&self) -> usize {
        self.objects().len()
    }

    pub fn count_of(&self, object: ObjectId) -> usize {
        self.objects().iter().filter(|(_, o)| *o == object).count()
    }

    /// Moves the agent; touching an object consumes it. See [`GridMap::step_with`].
    pub fn step(&mut self, action: Action) -> LabelSet {
        self.step_with(action, |_| true)
    }

    /// Moves the agent one cell. Walls block the move. Moving onto an object
    /// labels the step with its name; the object is consumed and the agent
    /// enters the cell when `consume` says so, otherwise the agent stays put
    /// and the object remains.
    pub fn step_with(
        &mut self,
        action: Action,
        consume: impl FnOnce(&AtomName) -> bool,
    ) -> LabelSet {
        let Some(target) = self.agent.moved(action) else {
            return LabelSet::empty();
        };
        match self.tile(target) {
            Tile::Wall => LabelSet::empty(),
            Tile::Empty => {
                self.agent = target;
                LabelSet::empty()
            }
            Tile::Object(o) => {
                let atom = o.atom();
                if consume(&atom) {
                    self.tiles[target.row][target.col] = Tile::Empty;
                    self.agent = target;
                }
                LabelSet::singleton(atom)
            }
        }
    }

    pub(crate) fn tiles_mut(&mut self) -> &mut [[Tile; MAP_SIZE]; MAP_SIZE] {
        &mut self.tiles
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(name: &str) -> ObjectId {
        ObjectId::from_name(name).unwrap()
    }

    #[test]
    fn wall_bump_is_a_no_op() {
        let mut map = GridMap::empty(Cell::new(1, 1)).unwrap();
        assert!(map.step(Action::Up).is_empty());
        assert_eq!(map.agent(), Cell::new(1, 1));
        assert!(map.step(Action::Left).is_empty());
        assert_eq!(map.agent(), Cell::new(1, 1));
    }

    #[test]
    fn touching_consumes() {
        let mut map = GridMap::empty(Cell::new(3, 3)).unwrap();
        map.place(Cell::new(3, 4), id("wood")).unwrap();
        let labels = map.step(Action::Right);
        assert_eq!(labels, LabelSet::singleton(AtomName::new("wood").unwrap()));
        assert_eq!(map.agent(), Cell::new(3, 4));
        assert_eq!(map.tile(Cell::new(3, 4)), Tile::Empty);
        assert_eq!(map.object_count(), 0);
    }

    #[test]
    fn touch_without_consuming() {
        let mut map = GridMap::empty(Cell::new(3, 3)).unwrap();
        map.place(Cell::new(2, 3), id("iron")).unwrap();
        let labels = map.step_with(Action::Up, |_| false);
        assert_eq!(labels.len(), 1);
        assert_eq!(map.agent(), Cell::new(3, 3));
        assert_eq!(map.tile(Cell::new(2, 3)), Tile::Object(id("iron")));
    }

    #[test]
    fn placement_rules() {
        let mut map = GridMap::empty(Cell::new(3, 3)).unwrap();
        assert!(map.place(Cell::new(0, 3), id("wood")).is_err());
        assert!(map.place(Cell::new(3, 3), id("wood")).is_err());
        map.place(Cell::new(2, 2), id("wood")).unwrap();
        assert!(map.place(Cell::new(2, 2), id("iron")).is_err());
        assert!(GridMap::empty(Cell::new(0, 0)).is_err());
    }
}
