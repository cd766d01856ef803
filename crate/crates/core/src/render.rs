//! Text and SVG barcode rendering.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::persistence::{Bar, PersistencePair};

const CELL: usize = 4;

/// Renders a persistence pair as `"text"` or `"svg"`.
pub fn render_barcode(pp: &PersistencePair, format: &str) -> Result<String> {
    match format {
        "text" => Ok(render_text(pp)),
        "svg" => Ok(render_svg(pp)),
        other => Err(Error::UnknownFormat(other.into())),
    }
}

fn interval(b: &Bar) -> String {
    match b.death {
        Some(d) => format!("[{},{})", b.birth, d),
        None => format!("[{},inf)", b.birth),
    }
}

fn dims(pp: &PersistencePair) -> Vec<usize> {
    let mut d: Vec<usize> = pp.bars.iter().map(|b| b.dim).collect();
    d.dedup();
    d
}

pub fn render_text(pp: &PersistencePair) -> String {
    let m = pp.stages;
    let width = (m + 2) * CELL;
    let mut s = String::from("     ");
    for i in 0..=m {
        let _ = write!(s, "{:<CELL$}", i);
    }
    s.push_str("inf\n");
    for dim in dims(pp) {
        let _ = writeln!(s, "H{dim}");
        for b in pp.bars.iter().filter(|b| b.dim == dim) {
            let end = b.death.unwrap_or(m + 1);
            let mut line = vec![' '; width];
            for c in line.iter_mut().take(end * CELL).skip(b.birth * CELL) {
                *c = '=';
            }
            let bar: String = line.into_iter().collect();
            let _ = writeln!(s, "     {bar} {} x{}", interval(b), b.mult);
        }
    }
    s.push_str("stillborn\n");
    for (p, row) in pp.stillborn.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "  H{p}: {}", cells.join(" "));
    }
    s
}

pub fn render_svg(pp: &PersistencePair) -> String {
    const LEFT: usize = 50;
    const STEP: usize = 60;
    const ROW: usize = 16;
    const TOP: usize = 30;
    let m = pp.stages;
    let x = |stage: usize| LEFT + stage * STEP;
    let plot_right = x(m + 1);
    let rows: usize = dims(pp).len() + pp.bars.len();
    let axis_y = TOP + rows * ROW + 10;
    let footer_y = axis_y + 40;
    let height = footer_y + (pp.stillborn.len() + 1) * ROW + 10;
    let width = plot_right + 60;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let mut y = TOP;
    for dim in dims(pp) {
        let _ = writeln!(s, r#"<text x="8" y="{}" font-weight="bold">H{dim}</text>"#, y + 10);
        y += ROW;
        for b in pp.bars.iter().filter(|b| b.dim == dim) {
            let x0 = x(b.birth);
            let x1 = b.death.map_or(plot_right, x);
            let _ = writeln!(
                s,
                r##"<rect x="{x0}" y="{}" width="{}" height="8" fill="#3b6fd4"><title>H{dim} {} x{}</title></rect>"##,
                y + 2,
                x1 - x0,
                interval(b),
                b.mult
            );
            let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, x1 + 4, y + 10, b.mult);
            y += ROW;
        }
    }
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{axis_y}" x2="{plot_right}" y2="{axis_y}" stroke="black"/>"#
    );
    for i in 0..=m {
        let _ = writeln!(
            s,
            r#"<line x1="{0}" y1="{axis_y}" x2="{0}" y2="{1}" stroke="black"/><text x="{0}" y="{2}" text-anchor="middle">{i}</text>"#,
            x(i),
            axis_y + 5,
            axis_y + 18
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{plot_right}" y="{}" text-anchor="middle">inf</text>"#,
        axis_y + 18
    );
    let _ = writeln!(s, r#"<text x="8" y="{footer_y}">stillborn</text>"#);
    for (p, row) in pp.stillborn.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            s,
            r#"<text x="8" y="{}">H{p}: {}</text>"#,
            footer_y + (p + 1) * ROW,
            cells.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}
