use super::{HarnessError, ResultRow};

pub const CSV_HEADER: &str =
    "experiment,agent,instruction,maps,mean_reward,std,mean_steps,success_rate,raw_mean_reward,offset";

/// CSV with a header line; offsets are already applied to `mean_reward`.
pub fn to_csv(rows: &[ResultRow]) -> Result<String, HarnessError> {
    if rows.is_empty() {
        return Err(HarnessError::NoRows);
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| HarnessError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Parses CSV written by [`to_csv`].
pub fn read_csv(text: &str) -> Result<Vec<ResultRow>, HarnessError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows = reader
        .deserialize()
        .collect::<Result<Vec<ResultRow>, _>>()?;
    Ok(rows)
}

/// Aligned text table, one line per row.
pub fn render_table(rows: &[ResultRow]) -> String {
    let header = [
        "experiment",
        "agent",
        "instruction",
        "maps",
        "reward",
        "std",
        "steps",
        "success",
    ];
    let mut cells: Vec<[String; 8]> = vec![header.map(String::from)];
    for r in rows {
        cells.push([
            r.experiment.clone(),
            r.agent.clone(),
            r.instruction.clone(),
            r.maps.to_string(),
            format!("{:.2}", r.mean_reward),
            format!("{:.2}", r.std),
            format!("{:.1}", r.mean_steps),
            format!("{:.3}", r.success_rate),
        ]);
    }
    let mut widths = [0usize; 8];
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (c, w))| {
                if i >= 3 {
                    format!("{c:>w$}")
                } else {
                    format!("{c:<w$}")
                }
            })
            .collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    out
}
