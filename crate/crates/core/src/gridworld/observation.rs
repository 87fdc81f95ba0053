use super::{GridError, GridMap, ObjectId, Tile, OBJECT_COUNT};
use crate::symbolic::SubTask;

pub const VIEW: usize = 5;
/// View rows plus the sub-task row.
pub const OBS_ROWS: usize = VIEW + 1;
pub const OBS_COLS: usize = VIEW;
/// Number of distinct cell codes.
pub const VOCABULARY: usize = 5 + OBJECT_COUNT;

/// Symbolic content of one observation cell.
///
/// | code    | meaning                      |
/// |---------|------------------------------|
/// | 0       | empty                        |
/// | 1       | wall                         |
/// | 2       | agent                        |
/// | 3       | negation operator `~`        |
/// | 4       | choice operator `|`          |
/// | 10..=35 | objects, in catalog order    |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellCode {
    Empty,
    Wall,
    Agent,
    OpNeg,
    OpChoice,
    Object(ObjectId),
}

impl CellCode {
    pub fn code(self) -> u8 {
        match self {
            CellCode::Empty => 0,
            CellCode::Wall => 1,
            CellCode::Agent => 2,
            CellCode::OpNeg => 3,
            CellCode::OpChoice => 4,
            CellCode::Object(o) => 10 + o.index() as u8,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Some(match code {
            0 => CellCode::Empty,
            1 => CellCode::Wall,
            2 => CellCode::Agent,
            3 => CellCode::OpNeg,
            4 => CellCode::OpChoice,
            c if c >= 10 => CellCode::Object(ObjectId::new(c as usize - 10)?),
            _ => return None,
        })
    }

    /// Dense index in `0..VOCABULARY`, for one-hot encodings.
    pub fn vocab_index(self) -> usize {
        match self {
            CellCode::Empty => 0,
            CellCode::Wall => 1,
            CellCode::Agent => 2,
            CellCode::OpNeg => 3,
            CellCode::OpChoice => 4,
            CellCode::Object(o) => 5 + o.index(),
        }
    }
}

/// Egocentric 5×5 window around the agent, plus a row spelling the current
/// sub-task.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Observation {
    cells: [[CellCode; OBS_COLS]; OBS_ROWS],
}

impl Observation {
    pub fn cells(&self) -> &[[CellCode; OBS_COLS]; OBS_ROWS] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> CellCode {
        self.cells[row][col]
    }

    pub fn task_row(&self) -> &[CellCode; OBS_COLS] {
        &self.cells[VIEW]
    }

    pub fn from_cells(cells: [[CellCode; OBS_COLS]; OBS_ROWS]) -> Self {
        Observation { cells }
    }

    pub fn codes(&self) -> [[u8; OBS_COLS]; OBS_ROWS] {
        self.cells.map(|row| row.map(CellCode::code))
    }

    /// Reads the sub-task back from the last row.
    pub fn decode_task(&self) -> Option<SubTask> {
        match *self.task_row() {
            [CellCode::Object(a), CellCode::OpNeg, ..] => Some(SubTask::Neg(a.atom())),
            [CellCode::Object(a), CellCode::OpChoice, CellCode::Object(b), ..] => {
                Some(SubTask::PosChoice(a.atom(), b.atom()))
            }
            [CellCode::Object(a), CellCode::Empty, ..] => Some(SubTask::Pos(a.atom())),
            _ => None,
        }
    }
}

/// Encodes a sub-task as the extra observation row.
pub fn encode_task(task: Option<&SubTask>) -> Result<[CellCode; OBS_COLS], GridError> {
    let mut row = [CellCode::Empty; OBS_COLS];
    match task {
        None => {}
        Some(SubTask::Pos(a)) => row[0] = CellCode::Object(ObjectId::from_atom(a)?),
        Some(SubTask::Neg(a)) => {
            row[0] = CellCode::Object(ObjectId::from_atom(a)?);
            row[1] = CellCode::OpNeg;
        }
        Some(SubTask::PosChoice(a, b)) => {
            row[0] = CellCode::Object(ObjectId::from_atom(a)?);
            row[1] = CellCode::OpChoice;
            row[2] = CellCode::Object(ObjectId::from_atom(b)?);
        }
    }
    Ok(row)
}

/// Window cell `(r, c)` shows map cell `(agent.row + r - 2, agent.col + c - 2)`;
/// off-map cells read as wall and the centre shows the agent.
pub fn observe(map: &GridMap, current: Option<&SubTask>) -> Result<Observation, GridError> {
    let agent = map.agent();
    let half = (VIEW / 2) as isize;
    let mut cells = [[CellCode::Empty; OBS_COLS]; OBS_ROWS];
    for (r, row) in cells.iter_mut().take(VIEW).enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let mr = agent.row as isize + r as isize - half;
            let mc = agent.col as isize + c as isize - half;
            *cell = match map.tile_at(mr, mc) {
                Tile::Wall => CellCode::Wall,
                Tile::Empty => CellCode::Empty,
                Tile::Object(o) => CellCode::Object(o),
            };
        }
    }
    cells[VIEW / 2][VIEW / 2] = CellCode::Agent;
    cells[VIEW] = encode_task(current)?;
    Ok(Observation { cells })
}

pub const GLYPH: usize = 9;

/// Expands every cell into a 9×9 block; 54×45 pixels in total.
///
/// Each code gets a distinct glyph: a filled block of intensity `7·code`
/// with a cross for operators and the agent. Only meant for inspection.
pub fn render_pixels(obs: &Observation) -> Vec<Vec<u8>> {
    let mut pixels = vec![vec![0u8; OBS_COLS * GLYPH]; OBS_ROWS * GLYPH];
    for (r, row) in obs.cells().iter().enumerate() {
        for (c, code) in row.iter().enumerate() {
            let value = code.code().saturating_mul(7);
            let cross = matches!(code, CellCode::Agent | CellCode::OpNeg | CellCode::OpChoice);
            for y in 0..GLYPH {
                for x in 0..GLYPH {
                    let on = !cross || x == GLYPH / 2 || y == GLYPH / 2;
                    pixels[r * GLYPH + y][c * GLYPH + x] = if on { value } else { 0 };
                }
            }
        }
    }
    pixels
}
