//! Line-based map files.
//!
//! ```text
//! ttl-map v1
//! legend: 0=empty 1=wall @=agent w=wood i=iron ...
//! row: 1 1 1 1 1 1 1
//! row: 1 0 w 0 0 0 1
//! ...            (7 rows)
//! ```

use std::collections::HashMap;

use super::{Cell, GridError, GridMap, ObjectId, Tile, MAP_SIZE};

pub const HEADER: &str = "ttl-map v1";

pub fn legend_line() -> String {
    let mut line = String::from("legend: 0=empty 1=wall @=agent");
    for id in ObjectId::all() {
        line.push(' ');
        line.push(id.glyph());
        line.push('=');
        line.push_str(id.name());
    }
    line
}

pub fn save_map(map: &GridMap) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&legend_line());
    out.push('\n');
    for r in 0..MAP_SIZE {
        out.push_str("row:");
        for c in 0..MAP_SIZE {
            let cell = Cell::new(r, c);
            let glyph = if cell == map.agent() {
                '@'
            } else {
                match map.tile(cell) {
                    Tile::Wall => '1',
                    Tile::Empty => '0',
                    Tile::Object(o) => o.glyph(),
                }
            };
            out.push(' ');
            out.push(glyph);
        }
        out.push('\n');
    }
    out
}

fn format_err(line: usize, column: usize, message: impl Into<String>) -> GridError {
    GridError::MapFormat {
        line,
        column,
        message: message.into(),
    }
}

pub fn load_map(text: &str) -> Result<GridMap, GridError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    match lines.next() {
        Some((_, l)) if l.trim_end() == HEADER => {}
        Some((n, _)) => return Err(format_err(n, 1, format!("expected header `{HEADER}`"))),
        None => return Err(format_err(1, 1, "empty map file")),
    }

    let legend = match lines.next() {
        Some((n, l)) => parse_legend(n, l)?,
        None => return Err(format_err(2, 1, "missing legend line")),
    };

    let mut tiles = [[Tile::Empty; MAP_SIZE]; MAP_SIZE];
    let mut agent = None;
    for (r, row) in tiles.iter_mut().enumerate() {
        let Some((n, line)) = lines.next() else {
            return Err(format_err(
                3 + r,
                1,
                format!("missing row {} of {MAP_SIZE}", r + 1),
            ));
        };
        let Some(body) = line.strip_prefix("row:") else {
            return Err(format_err(n, 1, "expected `row:`"));
        };
        let mut column = 5;
        let mut count = 0;
        for token in body.split(' ') {
            if token.is_empty() {
                column += 1;
                continue;
            }
            if count == MAP_SIZE {
                return Err(format_err(n, column, format!("more than {MAP_SIZE} cells")));
            }
            let mut chars = token.chars();
            let (Some(glyph), None) = (chars.next(), chars.next()) else {
                return Err(format_err(
                    n,
                    column,
                    format!("cell {token:?} is not a single glyph"),
                ));
            };
            let cell = Cell::new(r, count);
            let tile = match glyph {
                '1' => Tile::Wall,
                '0' => Tile::Empty,
                '@' => {
                    if agent.replace(cell).is_some() {
                        return Err(format_err(n, column, "second agent"));
                    }
                    Tile::Empty
                }
                g => match legend.get(&g) {
                    Some(id) => Tile::Object(*id),
                    None => {
                        return Err(format_err(n, column, format!("glyph {g:?} not in legend")))
                    }
                },
            };
            let is_wall = tile == Tile::Wall;
            if cell.is_interior() == is_wall {
                let what = if is_wall {
                    "wall inside the map"
                } else {
                    "border cell must be wall"
                };
                return Err(format_err(n, column, what));
            }
            row[count] = tile;
            count += 1;
            column += token.chars().count() + 1;
        }
        if count < MAP_SIZE {
            return Err(format_err(
                n,
                column,
                format!("row has {count} cells, expected {MAP_SIZE}"),
            ));
        }
    }
    if let Some((n, l)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(format_err(
            n,
            1,
            format!("unexpected content {l:?} after the last row"),
        ));
    }
    let agent = agent.ok_or_else(|| format_err(3, 1, "no agent `@` on the map"))?;
    let mut map = GridMap::empty(agent)?;
    *map.tiles_mut() = tiles;
    Ok(map)
}

fn parse_legend(n: usize, line: &str) -> Result<HashMap<char, ObjectId>, GridError> {
    let Some(body) = line.strip_prefix("legend:") else {
        return Err(format_err(n, 1, "expected `legend:`"));
    };
    let mut out = HashMap::new();
    for entry in body.split_whitespace() {
        let Some((glyph, name)) = entry.split_once('=') else {
            return Err(format_err(n, 1, format!("bad legend entry {entry:?}")));
        };
        let mut chars = glyph.chars();
        let (Some(g), None) = (chars.next(), chars.next()) else {
            return Err(format_err(n, 1, format!("bad legend glyph {glyph:?}")));
        };
        match (g, name) {
            ('0', "empty") | ('1', "wall") | ('@', "agent") => {}
            ('0' | '1' | '@', _) => {
                return Err(format_err(n, 1, format!("reserved glyph {g:?} redefined")));
            }
            _ => {
                let id = ObjectId::from_name(name)
                    .ok_or_else(|| format_err(n, 1, format!("unknown object {name:?}")))?;
                out.insert(g, id);
            }
        }
    }
    Ok(out)
}
