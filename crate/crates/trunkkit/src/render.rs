//! Level diagrams of Morse words, drawn top to bottom with the highest event
//! first. Strands are vertical tracks; each regular level is annotated with
//! its strand count.

use std::fmt::Write;

use trunkkit_core::morse::{EventKind, MorseDiagram};

/// Horizontal spacing of strand tracks in the ASCII diagram.
const COL: usize = 4;

/// SVG units per strand track.
pub const SVG_TRACK: usize = 40;
/// SVG units per event row.
pub const SVG_LEVEL: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
}

/// Annotates the level above every critical event but the last.
pub fn render(diagram: &MorseDiagram, format: Format) -> String {
    render_marked(diagram, &diagram.critical_indices(), format)
}

/// Annotates only the levels above the events in `marks` (all but the
/// last), such as the companion levels of a cable.
pub fn render_marked(diagram: &MorseDiagram, marks: &[usize], format: Format) -> String {
    let notes = annotations(diagram, marks);
    match format {
        Format::Ascii => ascii(diagram, &notes),
        Format::Svg => svg(diagram, &notes),
    }
}

/// `Some(w)` at each annotated event index.
fn annotations(diagram: &MorseDiagram, marks: &[usize]) -> Vec<Option<usize>> {
    let counts = diagram.strand_counts();
    let mut notes = vec![None; counts.len()];
    for &i in &marks[..marks.len().saturating_sub(1)] {
        notes[i] = Some(counts[i]);
    }
    notes
}

fn footer(notes: &[Option<usize>]) -> String {
    let levels = notes.iter().flatten();
    format!(
        "trunk={} width={}",
        levels.clone().max().copied().unwrap_or(0),
        levels.sum::<usize>()
    )
}

fn tracks(row: &mut [u8], strands: usize) {
    for j in 0..strands {
        row[COL * j] = b'|';
    }
}

fn finish(row: Vec<u8>, label: Option<String>, label_col: usize) -> String {
    let mut line = String::from_utf8(row).expect("ascii");
    if let Some(label) = label {
        while line.len() < label_col {
            line.push(' ');
        }
        line.push_str(&label);
    }
    line.trim_end().to_string()
}

fn ascii(diagram: &MorseDiagram, notes: &[Option<usize>]) -> String {
    let counts = diagram.strand_counts();
    let trunk = diagram.trunk();
    let cols = COL * (trunk.max(1) - 1) + 1;
    let label_col = cols + 2;
    let events = diagram.events();
    let mut lines = Vec::new();
    for k in (0..events.len()).rev() {
        let e = events[k];
        let below = if k == 0 { 0 } else { counts[k - 1] };
        let above = counts[k];
        let i = e.position;
        let blank = || vec![b' '; cols];
        match e.kind {
            EventKind::Cup => {
                let mut row = blank();
                tracks(&mut row, above);
                row[COL * i] = b'\\';
                row[COL * i + 1..COL * (i + 1)].fill(b'_');
                row[COL * (i + 1)] = b'/';
                lines.push(finish(row, None, label_col));
            }
            EventKind::Cap => {
                let mut row = blank();
                tracks(&mut row, below);
                row[COL * i] = b'/';
                row[COL * i + 1..COL * (i + 1)].fill(b'-');
                row[COL * (i + 1)] = b'\\';
                lines.push(finish(row, None, label_col));
            }
            EventKind::CrossPos | EventKind::CrossNeg => {
                let mid = COL * i + COL / 2;
                let mut top = blank();
                tracks(&mut top, above);
                top[COL * i] = b' ';
                top[COL * (i + 1)] = b' ';
                top[mid - 1] = b'\\';
                top[mid + 1] = b'/';
                let mut centre = blank();
                tracks(&mut centre, above);
                centre[COL * i] = b' ';
                centre[COL * (i + 1)] = b' ';
                // the strand climbing to the right is drawn `/`
                centre[mid] = if e.kind == EventKind::CrossPos { b'/' } else { b'\\' };
                let mut bottom = blank();
                tracks(&mut bottom, above);
                bottom[COL * i] = b' ';
                bottom[COL * (i + 1)] = b' ';
                bottom[mid - 1] = b'/';
                bottom[mid + 1] = b'\\';
                for row in [top, centre, bottom] {
                    lines.push(finish(row, None, label_col));
                }
            }
        }
        if below > 0 {
            let mut row = blank();
            tracks(&mut row, below);
            let label = (k > 0).then(|| notes[k - 1]).flatten().map(|w| format!("w={w}"));
            lines.push(finish(row, label, label_col));
        }
    }
    lines.push(footer(notes));
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

fn svg(diagram: &MorseDiagram, notes: &[Option<usize>]) -> String {
    let counts = diagram.strand_counts();
    let events = diagram.events();
    let trunk = diagram.trunk();
    let (t, l) = (SVG_TRACK, SVG_LEVEL);
    let width = t * (trunk + 1) + 2 * t;
    let height = l * (events.len() + 2);
    // y of the level below event k (k = events.len() is the top)
    let y = |k: usize| l * (events.len() + 1 - k);
    let x = |j: usize| t * (j + 1);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    out.push_str(r#"<g fill="none" stroke="black" stroke-width="2">"#);
    out.push('\n');
    for (k, e) in events.iter().enumerate() {
        let below = if k == 0 { 0 } else { counts[k - 1] };
        let (y0, y1) = (y(k), y(k + 1));
        let i = e.position;
        match e.kind {
            EventKind::Cup => {
                for j in 0..below {
                    let up = if j < i { j } else { j + 2 };
                    line(&mut out, (x(j), y0), (x(up), y1));
                }
                let _ = writeln!(
                    out,
                    r#"<path d="M {} {y1} Q {} {y0} {} {y1}"/>"#,
                    x(i),
                    x(i) + t / 2,
                    x(i + 1)
                );
            }
            EventKind::Cap => {
                for j in (0..below).filter(|&j| j != i && j != i + 1) {
                    let up = if j < i { j } else { j - 2 };
                    line(&mut out, (x(j), y0), (x(up), y1));
                }
                let _ = writeln!(
                    out,
                    r#"<path d="M {} {y0} Q {} {y1} {} {y0}"/>"#,
                    x(i),
                    x(i) + t / 2,
                    x(i + 1)
                );
            }
            kind => {
                for j in (0..below).filter(|&j| j != i && j != i + 1) {
                    line(&mut out, (x(j), y0), (x(j), y1));
                }
                // rising strand: x(i) -> x(i+1); falling strand: x(i+1) -> x(i)
                let rising = ((x(i), y0), (x(i + 1), y1));
                let falling = ((x(i + 1), y0), (x(i), y1));
                let (over, under) = if kind == EventKind::CrossPos {
                    (rising, falling)
                } else {
                    (falling, rising)
                };
                line(&mut out, over.0, over.1);
                // the under strand stops a third of the way short of the centre
                let mid = ((under.0 .0 + under.1 .0) / 2, (under.0 .1 + under.1 .1) / 2);
                let toward = |p: (usize, usize)| (toward_third(p.0, mid.0), toward_third(p.1, mid.1));
                line(&mut out, under.0, toward(under.0));
                line(&mut out, toward(under.1), under.1);
            }
        }
    }
    out.push_str("</g>\n");
    out.push_str(r#"<g font-family="monospace" font-size="12" fill="black">"#);
    out.push('\n');
    let label_x = x(trunk) + t / 2;
    for (k, note) in notes.iter().enumerate() {
        if let Some(w) = note {
            let _ = writeln!(out, r#"<text x="{label_x}" y="{}">w={w}</text>"#, y(k + 1) + 4);
        }
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, t / 2, height - l / 3, footer(notes));
    out.push_str("</g>\n</svg>\n");
    out
}

fn line(out: &mut String, a: (usize, usize), b: (usize, usize)) {
    let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, a.0, a.1, b.0, b.1);
}

/// Two thirds of the way from `from` to `to`.
fn toward_third(from: usize, to: usize) -> usize {
    if from > to {
        to + (from - to) / 3
    } else {
        to - (to - from) / 3
    }
}
