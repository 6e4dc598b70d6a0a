use serde::{Deserialize, Serialize};

use super::{ArcRef, LinkError, Sign, UnderpassCode, UnderpassEntry};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkDoc {
    #[serde(default)]
    name: String,
    /// Optional on input; when present it must equal the component count.
    #[serde(default, skip_serializing)]
    m: Option<usize>,
    components: Vec<Vec<EntryDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    over: Vec<i64>,
    sign: i64,
}

/// Parses the JSON link format
/// `{ "name": ..., "components": [ [ { "over": [k, l], "sign": ±1 }, ... ], ... ] }`.
pub fn parse_link_file(text: &str) -> Result<UnderpassCode, LinkError> {
    let doc: LinkDoc =
        serde_json::from_str(text).map_err(|e| LinkError::Syntax(e.to_string()))?;
    if let Some(m) = doc.m {
        if m != doc.components.len() {
            return Err(LinkError::Invalid {
                component: 0,
                position: None,
                reason: format!("m = {m} but {} component list(s) given", doc.components.len()),
            });
        }
    }
    let mut components = Vec::with_capacity(doc.components.len());
    for (ci, comp) in doc.components.into_iter().enumerate() {
        let mut entries = Vec::with_capacity(comp.len());
        for (pi, e) in comp.into_iter().enumerate() {
            let invalid = |reason: String| LinkError::Invalid {
                component: ci + 1,
                position: Some(pi + 1),
                reason,
            };
            let sign = Sign::from_value(e.sign)
                .ok_or_else(|| invalid(format!("sign must be 1 or -1, got {}", e.sign)))?;
            let [k, l] = e.over[..] else {
                return Err(invalid(format!(
                    "\"over\" must be a [component, arc] pair, got {} number(s)",
                    e.over.len()
                )));
            };
            if k < 1 || l < 1 {
                return Err(invalid(format!("arc reference ({k}:{l}) must be 1-based")));
            }
            entries.push(UnderpassEntry { over: ArcRef::new(k as usize, l as usize), sign });
        }
        components.push(entries);
    }
    UnderpassCode::new(doc.name, components)
}

/// Serializes in the same format, keys in the order `name`, `components`,
/// `over`, `sign`.
pub fn to_json(code: &UnderpassCode) -> String {
    let doc = LinkDoc {
        name: code.name().to_string(),
        m: None,
        components: code
            .components()
            .iter()
            .map(|c| {
                c.iter()
                    .map(|e| EntryDoc {
                        over: vec![e.over.component as i64, e.over.arc as i64],
                        sign: e.sign.value(),
                    })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("link documents always serialize")
}
