use crate::error::{Error, Result};
use crate::words::Letter;

/// Splits a word into `(generator, exponent)` pairs.
///
/// Tokens are whitespace separated. A token is a generator name, optionally
/// followed by `^n`; an uppercase name stands for the inverse. The token `1`
/// is the empty word. `lookup` resolves lowercase names.
pub(crate) fn parse_powers(
    text: &str,
    line: usize,
    lookup: impl Fn(&str) -> Option<usize>,
) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for token in text.split_whitespace() {
        let start = offset + text[offset..].find(token).unwrap_or(0);
        offset = start + token.len();
        let column = text[..start].chars().count() + 1;
        if token == "1" {
            continue;
        }
        let (name, exponent) = match token.split_once('^') {
            Some((name, e)) => {
                let e: i64 = e.parse().map_err(|_| {
                    Error::parse(line, column + name.len() + 1, format!("bad exponent `{e}`"))
                })?;
                (name, e)
            }
            None => (token, 1),
        };
        let first = name
            .chars()
            .next()
            .ok_or_else(|| Error::parse(line, column, "missing generator name"))?;
        let inverse = first.is_ascii_uppercase();
        let lower = name.to_ascii_lowercase();
        let index = lookup(&lower)
            .ok_or_else(|| Error::parse(line, column, format!("unknown generator `{name}`")))?;
        let exponent = if inverse { -exponent } else { exponent };
        if exponent != 0 {
            out.push((index, exponent));
        }
    }
    Ok(out)
}

/// Renders letters, grouping runs: `a1^2 B1 f`.
pub(crate) fn render_letters<'a>(letters: &[Letter], name: impl Fn(usize) -> &'a str) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let run = letters[i..].iter().take_while(|&&m| m == l).count();
        let base = if l.is_inverse() {
            name(l.generator()).to_ascii_uppercase()
        } else {
            name(l.generator()).to_string()
        };
        if run > 1 {
            parts.push(format!("{base}^{run}"));
        } else {
            parts.push(base);
        }
        i += run;
    }
    parts.join(" ")
}
