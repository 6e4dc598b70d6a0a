//! Signed Gauss code import.
//!
//! One component per line (or separated by `/`). Each token is `O<label><s>`
//! or `U<label><s>` with `s` in `{+, -}`, e.g. `O1+ U2- O3+`. Tokens may be
//! separated by whitespace or commas. An empty line is a component without
//! crossings; lines starting with `#` are comments. A single trailing newline
//! does not start a new component.

use std::collections::HashMap;

use super::{ArcRef, LinkError, Sign, UnderpassCode, UnderpassEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Over,
    Under,
}

#[derive(Debug, Clone)]
struct Event {
    role: Role,
    label: String,
    sign: Sign,
}

fn parse_token(token: &str, component: usize) -> Result<Event, LinkError> {
    let syntax = || {
        LinkError::Syntax(format!(
            "component {component}: bad Gauss token {token:?}, expected e.g. O3+ or U12-"
        ))
    };
    let mut chars = token.chars();
    let role = match chars.next() {
        Some('O' | 'o') => Role::Over,
        Some('U' | 'u') => Role::Under,
        _ => return Err(syntax()),
    };
    let rest = chars.as_str();
    let sign = match rest.chars().last() {
        Some('+') => Sign::Plus,
        Some('-') => Sign::Minus,
        _ => return Err(syntax()),
    };
    let label = &rest[..rest.len() - 1];
    if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(syntax());
    }
    Ok(Event { role, label: label.to_string(), sign })
}

/// Converts a signed Gauss code into an underpass code.
///
/// Arcs of component `k` are numbered by walking from the start of its line
/// and incrementing at each under event; events after the last under event
/// lie on arc 1 again. Each under event becomes an entry whose over-arc is
/// the arc holding the matching over event.
pub fn import_gauss(name: &str, text: &str) -> Result<UnderpassCode, LinkError> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let lines: Vec<&str> = text
        .split(['\n', '/'])
        .map(str::trim)
        .filter(|l| !l.starts_with('#'))
        .collect();

    let mut components: Vec<Vec<Event>> = Vec::with_capacity(lines.len());
    for (ci, line) in lines.iter().enumerate() {
        let events = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| parse_token(t, ci + 1))
            .collect::<Result<Vec<_>, _>>()?;
        components.push(events);
    }

    // label -> (over arc, sign) and label -> under sign
    let mut over_at: HashMap<&str, (ArcRef, Sign)> = HashMap::new();
    let mut under_at: HashMap<&str, Sign> = HashMap::new();
    for (ci, events) in components.iter().enumerate() {
        let unders = events.iter().filter(|e| e.role == Role::Under).count();
        let mut seen_unders = 0usize;
        for (pi, e) in events.iter().enumerate() {
            let dup = || LinkError::Invalid {
                component: ci + 1,
                position: Some(pi + 1),
                reason: format!("crossing label {:?} repeats an event", e.label),
            };
            match e.role {
                Role::Over => {
                    let arc = seen_unders % unders.max(1) + 1;
                    if over_at
                        .insert(e.label.as_str(), (ArcRef::new(ci + 1, arc), e.sign))
                        .is_some()
                    {
                        return Err(dup());
                    }
                }
                Role::Under => {
                    seen_unders += 1;
                    if under_at.insert(e.label.as_str(), e.sign).is_some() {
                        return Err(dup());
                    }
                }
            }
        }
    }

    for (ci, events) in components.iter().enumerate() {
        for (pi, e) in events.iter().enumerate() {
            if e.role == Role::Over && !under_at.contains_key(e.label.as_str()) {
                return Err(LinkError::Invalid {
                    component: ci + 1,
                    position: Some(pi + 1),
                    reason: format!("dangling crossing label {:?}: no under event", e.label),
                });
            }
        }
    }

    let mut out = Vec::with_capacity(components.len());
    for (ci, events) in components.iter().enumerate() {
        let mut entries = Vec::new();
        for (pi, e) in events.iter().enumerate().filter(|(_, e)| e.role == Role::Under) {
            let invalid = |reason: String| LinkError::Invalid {
                component: ci + 1,
                position: Some(pi + 1),
                reason,
            };
            let &(over, over_sign) = over_at.get(e.label.as_str()).ok_or_else(|| {
                invalid(format!("dangling crossing label {:?}: no over event", e.label))
            })?;
            if over_sign != e.sign {
                return Err(invalid(format!(
                    "crossing {:?} has different signs on its over and under events",
                    e.label
                )));
            }
            entries.push(UnderpassEntry { over, sign: e.sign });
        }
        out.push(entries);
    }
    UnderpassCode::new(name, out)
}
