use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{EventKind, MorseDiagram, MorseError, MorseEvent, MorsePresentation};

/// Parses the `.morse` word format: one event per line (`cup i`, `cap i`,
/// `x+ i`, `x- i`), `#` comments to end of line, blank lines ignored.
pub fn parse_morse(text: &str) -> Result<MorsePresentation, MorseError> {
    let lines = parse_event_lines(text, 1)?;
    let events: Vec<MorseEvent> = lines.iter().map(|&(_, e)| e).collect();
    MorseDiagram::new(events)
        .map_err(|err| attach_line(err, &lines))?
        .into_knot()
}

pub(crate) fn attach_line(err: MorseError, lines: &[(usize, MorseEvent)]) -> MorseError {
    match err {
        MorseError::StrandCount {
            event,
            kind,
            position,
            strands,
            ..
        } => MorseError::StrandCount {
            event,
            line: lines.get(event).map(|&(l, _)| l),
            kind,
            position,
            strands,
        },
        other => other,
    }
}

/// Tokenizes event lines starting at line number `first_line`; returns each
/// event with its 1-based source line.
pub(crate) fn parse_event_lines(
    text: &str,
    first_line: usize,
) -> Result<Vec<(usize, MorseEvent)>, MorseError> {
    let mut out = Vec::new();
    for (offset, raw) in text.lines().enumerate() {
        let line = first_line + offset;
        if let Some(event) = parse_event_line(raw, line)? {
            out.push((line, event));
        }
    }
    Ok(out)
}

pub(crate) fn parse_event_line(raw: &str, line: usize) -> Result<Option<MorseEvent>, MorseError> {
    let content = raw.split('#').next().unwrap_or("");
    let mut tokens = tokens_with_columns(content);
    let Some((col, keyword)) = tokens.next() else {
        return Ok(None);
    };
    let kind = match keyword {
        "cup" => EventKind::Cup,
        "cap" => EventKind::Cap,
        "x+" => EventKind::CrossPos,
        "x-" => EventKind::CrossNeg,
        other => {
            return Err(MorseError::Syntax {
                line,
                column: col,
                message: format!("unknown event `{other}`"),
            })
        }
    };
    let Some((col, number)) = tokens.next() else {
        return Err(MorseError::Syntax {
            line,
            column: content.trim_end().len() + 1,
            message: "missing strand index".to_string(),
        });
    };
    let position = number.parse::<usize>().map_err(|_| MorseError::Syntax {
        line,
        column: col,
        message: format!("invalid strand index `{number}`"),
    })?;
    if let Some((col, extra)) = tokens.next() {
        return Err(MorseError::Syntax {
            line,
            column: col,
            message: format!("unexpected token `{extra}`"),
        });
    }
    Ok(Some(MorseEvent::new(kind, position)))
}

/// Whitespace-separated tokens with 1-based byte columns.
pub(crate) fn tokens_with_columns(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = s;
    let mut consumed = 0;
    core::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        consumed += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let column = consumed + 1;
        let token = &trimmed[..end];
        consumed += end;
        rest = &trimmed[end..];
        Some((column, token))
    })
}
