//! Gnuplot-style data files and a static SVG chart.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{io_err, LabError, Result};
use crate::record::ResultRecord;
use crate::table::{Cell, Table};

/// Column that splits a table into several series when present.
pub const SERIES_COLUMN: &str = "metric";

fn token(cell: &Cell) -> String {
    match cell {
        // Debug keeps a decimal point, so floats parse back as floats.
        Cell::Float(v) => format!("{v:?}"),
        Cell::Empty => "-".to_string(),
        other => other.render(),
    }
}

fn parse_token(s: &str) -> Cell {
    if s == "-" {
        return Cell::Empty;
    }
    if let Ok(v) = s.parse::<i64>() {
        return Cell::Int(v);
    }
    if let Ok(v) = s.parse::<f64>() {
        return Cell::Float(v);
    }
    match s {
        "true" => Cell::Bool(true),
        "false" => Cell::Bool(false),
        _ => Cell::Text(s.to_string()),
    }
}

fn series(table: &Table) -> Vec<(Option<String>, Table)> {
    let Some(col) = table.column(SERIES_COLUMN) else {
        return vec![(None, table.clone())];
    };
    let mut out: Vec<(Option<String>, Table)> = Vec::new();
    for row in &table.rows {
        let name = row[col].render();
        let slot = match out
            .iter()
            .position(|(n, _)| n.as_deref() == Some(name.as_str()))
        {
            Some(i) => i,
            None => {
                out.push((
                    Some(name),
                    Table {
                        columns: table.columns.clone(),
                        rows: Vec::new(),
                    },
                ));
                out.len() - 1
            }
        };
        out[slot].1.rows.push(row.clone());
    }
    if out.is_empty() {
        out.push((None, table.clone()));
    }
    out
}

pub fn plotdata_text(table: &Table) -> String {
    let mut s = format!("# {}\n", table.columns.join(" "));
    for row in &table.rows {
        let line: Vec<String> = row.iter().map(token).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

/// Writes one `.dat` file per series plus `<stem>.svg`, returning every
/// path written. The data files begin with a `#` line naming the columns.
pub fn emit_plotdata(record: &ResultRecord, dir: &Path, stem: &str) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::new();
    let parts = series(&record.table);
    for (name, table) in &parts {
        let file = match name {
            Some(n) => dir.join(format!("{stem}.{n}.dat")),
            None => dir.join(format!("{stem}.dat")),
        };
        std::fs::write(&file, plotdata_text(table)).map_err(io_err(&file))?;
        written.push(file);
    }
    let svg = dir.join(format!("{stem}.svg"));
    std::fs::write(&svg, svg_chart(&parts, &record.schema)).map_err(io_err(&svg))?;
    written.push(svg);
    Ok(written)
}

pub fn parse_plotdata(path: &Path) -> Result<Table> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .and_then(|l| l.strip_prefix('#'))
        .ok_or_else(|| LabError::Parse {
            path: path.to_path_buf(),
            reason: "missing column header".into(),
        })?;
    let columns: Vec<String> = header.split_whitespace().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Vec<Cell> = line.split_whitespace().map(parse_token).collect();
        if row.len() != columns.len() {
            return Err(LabError::Parse {
                path: path.to_path_buf(),
                reason: format!(
                    "line {} has {} fields, expected {}",
                    i + 2,
                    row.len(),
                    columns.len()
                ),
            });
        }
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// First numeric column against `mean` (or the second numeric column).
fn axes(table: &Table) -> Option<(usize, usize)> {
    let numeric: Vec<usize> = (0..table.columns.len())
        .filter(|&c| {
            table
                .rows
                .iter()
                .all(|r| r[c].as_f64().is_some() && !matches!(r[c], Cell::Bool(_)))
        })
        .collect();
    let x = *numeric.first()?;
    let y = table
        .column("mean")
        .filter(|c| numeric.contains(c))
        .or_else(|| numeric.iter().copied().find(|&c| c != x))?;
    Some((x, y))
}

fn svg_chart(parts: &[(Option<String>, Table)], title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{title}</text>"#
    );
    let points: Vec<(usize, Vec<(f64, f64)>)> = parts
        .iter()
        .enumerate()
        .filter_map(|(i, (_, t))| {
            let (x, y) = axes(t)?;
            let pts: Vec<(f64, f64)> = t
                .rows
                .iter()
                .filter_map(|r| Some((r[x].as_f64()?, r[y].as_f64()?)))
                .filter(|(a, b)| a.is_finite() && b.is_finite())
                .collect();
            (!pts.is_empty()).then_some((i, pts))
        })
        .collect();
    let all = points.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    if !points.is_empty() {
        let sx =
            |x: f64| MARGIN + (x - x0) / (x1 - x0).max(f64::MIN_POSITIVE) * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| {
            HEIGHT - MARGIN - (y - y0) / (y1 - y0).max(f64::MIN_POSITIVE) * (HEIGHT - 2.0 * MARGIN)
        };
        for (i, pts) in &points {
            let path: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let color = COLORS[i % COLORS.len()];
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                path.join(" ")
            );
            if let Some(name) = &parts[*i].0 {
                let _ = writeln!(
                    s,
                    r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{color}">{name}</text>"#,
                    WIDTH - MARGIN + 4.0,
                    MARGIN + 14.0 * (*i as f64 + 1.0)
                );
            }
        }
        let label = |v: f64| format!("{v:.4}");
        let _ = writeln!(
            s,
            r#"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="11">{}</text>"#,
            HEIGHT - MARGIN + 16.0,
            label(x0)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            WIDTH - MARGIN,
            HEIGHT - MARGIN + 16.0,
            label(x1)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            MARGIN - 4.0,
            HEIGHT - MARGIN,
            label(y0)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            MARGIN - 4.0,
            MARGIN + 10.0,
            label(y1)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        for c in [
            Cell::Int(-3),
            Cell::Float(1.0),
            Cell::Float(1e-300),
            Cell::Float(0.1 + 0.2),
            Cell::Bool(true),
            Cell::Text("hamming".into()),
            Cell::Empty,
        ] {
            assert_eq!(parse_token(&token(&c)), c);
        }
    }

    #[test]
    fn split_by_metric() {
        let mut t = Table::new(&["n", "metric", "std"]);
        t.push(vec![10usize.into(), "a".into(), 0.5.into()]);
        t.push(vec![10usize.into(), "b".into(), 0.4.into()]);
        t.push(vec![20usize.into(), "a".into(), 0.3.into()]);
        let parts = series(&t);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].1.rows.len(), 2);
        assert_eq!(axes(&parts[0].1), Some((0, 2)));
    }
}
