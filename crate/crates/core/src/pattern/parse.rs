use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{CylinderTangle, PatternError, Sign};
use crate::morse::parse::{attach_line, parse_event_line, tokens_with_columns};
use crate::morse::{check_strands, MorseError, MorseEvent};

/// Parses the `.tangle` format: a header `through <n> signs <+/- string>`
/// followed by event lines in the `.morse` word format.
pub fn parse_tangle(text: &str) -> Result<CylinderTangle, PatternError> {
    let mut header: Option<(usize, Vec<Sign>)> = None;
    let mut lines: Vec<(usize, MorseEvent)> = Vec::new();
    for (offset, raw) in text.lines().enumerate() {
        let line = offset + 1;
        if header.is_none() {
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            header = Some(parse_header(content, line)?);
            continue;
        }
        if let Some(event) = parse_event_line(raw, line)? {
            lines.push((line, event));
        }
    }
    let Some((through, signs)) = header else {
        return Err(syntax(1, 1, "missing `through <n> signs <...>` header"));
    };
    if signs.len() != through {
        return Err(PatternError::SignCount {
            through,
            signs: signs.len(),
        });
    }
    let events: Vec<MorseEvent> = lines.iter().map(|&(_, e)| e).collect();
    check_strands(&events, through).map_err(|e| PatternError::Morse(attach_line(e, &lines)))?;
    CylinderTangle::new(signs, events)
}

fn syntax(line: usize, column: usize, message: &str) -> PatternError {
    PatternError::Morse(MorseError::Syntax {
        line,
        column,
        message: message.to_string(),
    })
}

fn parse_header(content: &str, line: usize) -> Result<(usize, Vec<Sign>), PatternError> {
    let tokens: Vec<(usize, &str)> = tokens_with_columns(content).collect();
    let expect = |i: usize, word: &str| -> Result<usize, PatternError> {
        match tokens.get(i) {
            Some(&(_, t)) if t == word => Ok(i),
            Some(&(col, t)) => Err(syntax(line, col, &format!("expected `{word}`, found `{t}`"))),
            None => Err(syntax(line, content.trim_end().len() + 1, &format!("expected `{word}`"))),
        }
    };
    expect(0, "through")?;
    let (col, n) = *tokens
        .get(1)
        .ok_or_else(|| syntax(line, content.trim_end().len() + 1, "missing strand count"))?;
    let through = n
        .parse::<usize>()
        .map_err(|_| syntax(line, col, &format!("invalid strand count `{n}`")))?;
    expect(2, "signs")?;
    let (col, s) = *tokens
        .get(3)
        .ok_or_else(|| syntax(line, content.trim_end().len() + 1, "missing sign string"))?;
    let signs = s
        .chars()
        .enumerate()
        .map(|(k, c)| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(syntax(line, col + k, &format!("invalid sign `{c}`"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(&(col, t)) = tokens.get(4) {
        return Err(syntax(line, col, &format!("unexpected token `{t}`")));
    }
    Ok((through, signs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::whitehead_tangle;

    #[test]
    fn parses_whitehead() {
        let text = "# clasp\nthrough 2 signs +-\ncup 1\nx+ 0\nx+ 2\ncap 1\n";
        let t = parse_tangle(text).unwrap();
        assert_eq!(t, whitehead_tangle());
        assert_eq!(parse_tangle(&t.to_dsl()).unwrap(), t);
    }

    #[test]
    fn header_errors() {
        assert!(matches!(
            parse_tangle("through 2 signs +\n"),
            Err(PatternError::SignCount { through: 2, signs: 1 })
        ));
        match parse_tangle("through 2 sign ++\n") {
            Err(PatternError::Morse(MorseError::Syntax { line, column, .. })) => {
                assert_eq!((line, column), (1, 11))
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_tangle("through 2 signs +x\n") {
            Err(PatternError::Morse(MorseError::Syntax { column, .. })) => assert_eq!(column, 18),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_tangle("").is_err());
    }

    #[test]
    fn strand_error_line() {
        match parse_tangle("through 1 signs +\ncap 0\n") {
            Err(PatternError::Morse(MorseError::StrandCount { line, .. })) => assert_eq!(line, Some(2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
