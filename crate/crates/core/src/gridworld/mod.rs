//! The 7×7 crafting gridworld: maps, movement, observations, generators and
//! map files.

mod catalog;
mod generate;
mod map;
mod mapfile;
mod observation;

use thiserror::Error;

use crate::ttl::AtomName;

pub use catalog::{ObjectCatalog, ObjectId, SplitPreset, OBJECT_COUNT};
pub use generate::{
    all_objects_reachable, generate_bcm, generate_choice_map, generate_map, ChoiceVariant,
    Requirements, MAX_OBJECTS, MIN_OBJECTS,
};
pub use map::{Action, Cell, GridMap, Tile, MAP_SIZE};
pub use mapfile::{legend_line, load_map, save_map, HEADER};
pub use observation::{
    encode_task, observe, render_pixels, CellCode, Observation, GLYPH, OBS_COLS, OBS_ROWS, VIEW,
    VOCABULARY,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("{0} is not a catalog object")]
    UnknownObject(AtomName),
    #[error("training split of {0} objects is not possible with 26 objects")]
    InvalidSplit(usize),
    #[error("agent cell ({}, {}) is not a free interior cell", .0.row, .0.col)]
    AgentNotInterior(Cell),
    #[error("cannot place an object at ({}, {})", .0.row, .0.col)]
    BadPlacement(Cell),
    #[error("map line {line}, column {column}: {message}")]
    MapFormat {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("infeasible map request: {0}")]
    Infeasible(String),
}
