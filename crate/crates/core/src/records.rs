//! Export and import of memoized tables as plain JSON records.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::orbitalgebra::{Engine, MExpansion};
use crate::poly::TauPolynomial;
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RecordKind {
    #[serde(rename = "decomp")]
    Decomp,
    #[serde(rename = "m2tau")]
    M2Tau,
    #[serde(rename = "coeffA")]
    CoeffA,
    #[serde(rename = "coeffC")]
    CoeffC,
    #[serde(rename = "hint")]
    Hint,
}

impl RecordKind {
    pub const ALL: [RecordKind; 5] = [
        RecordKind::Decomp,
        RecordKind::M2Tau,
        RecordKind::CoeffA,
        RecordKind::CoeffC,
        RecordKind::Hint,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RecordKind::Decomp => "decomp",
            RecordKind::M2Tau => "m2tau",
            RecordKind::CoeffA => "coeffA",
            RecordKind::CoeffC => "coeffC",
            RecordKind::Hint => "hint",
        }
    }
}

/// One memoized table entry. Indices in keys are 0-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub kind: RecordKind,
    pub key: Value,
    pub value: Value,
}

fn parse_err(kind: RecordKind, what: &str) -> Error {
    Error::Parse(format!("malformed {} record: {what}", kind.tag()))
}

fn key_weight(r: &Record, field: &str, rank: usize) -> Result<Weight> {
    let w: Weight = serde_json::from_value(r.key[field].clone()).map_err(|_| parse_err(r.kind, field))?;
    if w.rank() != rank {
        return Err(Error::DimensionMismatch {
            expected: rank,
            got: w.rank(),
        });
    }
    Ok(w)
}

fn key_index(r: &Record, field: &str, rank: usize) -> Result<usize> {
    let a = r.key[field].as_u64().ok_or_else(|| parse_err(r.kind, field))? as usize;
    if a >= rank {
        return Err(Error::IndexOutOfRange { index: a, rank });
    }
    Ok(a)
}

fn insert_checked<K: std::hash::Hash + Eq, V: PartialEq>(
    map: &mut rustc_hash::FxHashMap<K, Arc<V>>,
    key: K,
    value: V,
    kind: RecordKind,
) -> Result<()> {
    match map.get(&key) {
        Some(old) if **old != value => Err(Error::Parse(format!(
            "conflicting {} record for an already known entry",
            kind.tag()
        ))),
        Some(_) => Ok(()),
        None => {
            map.insert(key, Arc::new(value));
            Ok(())
        }
    }
}

impl Engine {
    /// All memoized entries, in a deterministic order.
    pub fn export_records(&self) -> Vec<Record> {
        let m = self.memo.read().unwrap();
        let mut out = Vec::new();
        let mut decomp: Vec<_> = m.decomp.iter().collect();
        decomp.sort_by(|a, b| a.0.cmp(b.0));
        for ((j, a), e) in decomp {
            out.push(Record {
                kind: RecordKind::Decomp,
                key: json!({"j": j.coords(), "a": a}),
                value: e.to_json(),
            });
        }
        let mut m2tau: Vec<_> = m.m2tau.iter().collect();
        m2tau.sort_by(|a, b| a.0.cmp(b.0));
        for (n, p) in m2tau {
            out.push(Record {
                kind: RecordKind::M2Tau,
                key: json!({"n": n.coords()}),
                value: p.to_json(),
            });
        }
        let mut ca: Vec<_> = m.coeff_a.iter().collect();
        ca.sort_by(|a, b| a.0.cmp(b.0));
        for ((a, b), p) in ca {
            out.push(Record {
                kind: RecordKind::CoeffA,
                key: json!({"a": a, "b": b}),
                value: p.to_json(),
            });
        }
        let mut cc: Vec<_> = m.coeff_c.iter().collect();
        cc.sort_by(|a, b| a.0.cmp(b.0));
        for (a, p) in cc {
            out.push(Record {
                kind: RecordKind::CoeffC,
                key: json!({"a": a}),
                value: p.to_json(),
            });
        }
        let mut hint: Vec<_> = m.hint.iter().collect();
        hint.sort_by(|a, b| a.0.cmp(b.0));
        for (n, e) in hint {
            out.push(Record {
                kind: RecordKind::Hint,
                key: json!({"n": n.coords()}),
                value: e.to_json(),
            });
        }
        out
    }

    /// Load records into the memo. A record that disagrees with an entry
    /// already present is an error.
    pub fn import_records(&self, records: &[Record]) -> Result<usize> {
        let rank = self.rank();
        let mut m = self.memo.write().unwrap();
        for r in records {
            match r.kind {
                RecordKind::Decomp => {
                    let j = key_weight(r, "j", rank)?;
                    let a = key_index(r, "a", rank)?;
                    let v = MExpansion::from_json(rank, &r.value)?;
                    insert_checked(&mut m.decomp, (j, a), v, r.kind)?;
                }
                RecordKind::M2Tau => {
                    let n = key_weight(r, "n", rank)?;
                    let v = TauPolynomial::from_json(rank, &r.value)?;
                    insert_checked(&mut m.m2tau, n, v, r.kind)?;
                }
                RecordKind::CoeffA => {
                    let a = key_index(r, "a", rank)?;
                    let b = key_index(r, "b", rank)?;
                    if a > b {
                        return Err(parse_err(r.kind, "a > b"));
                    }
                    let v = TauPolynomial::from_json(rank, &r.value)?;
                    insert_checked(&mut m.coeff_a, (a, b), v, r.kind)?;
                }
                RecordKind::CoeffC => {
                    let a = key_index(r, "a", rank)?;
                    let v = TauPolynomial::from_json(rank, &r.value)?;
                    insert_checked(&mut m.coeff_c, a, v, r.kind)?;
                }
                RecordKind::Hint => {
                    let n = key_weight(r, "n", rank)?;
                    let v = MExpansion::from_json(rank, &r.value)?;
                    insert_checked(&mut m.hint, n, v, r.kind)?;
                }
            }
        }
        Ok(records.len())
    }

    /// Number of memoized entries of each kind.
    pub fn memo_counts(&self) -> Vec<(RecordKind, usize)> {
        let m = self.memo.read().unwrap();
        vec![
            (RecordKind::Decomp, m.decomp.len()),
            (RecordKind::M2Tau, m.m2tau.len()),
            (RecordKind::CoeffA, m.coeff_a.len()),
            (RecordKind::CoeffC, m.coeff_c.len()),
            (RecordKind::Hint, m.hint.len()),
        ]
    }
}
