//! JSON form of [`PeriodicWallspace`]:
//! `{"rank": p, "classes": [{"direction": [..], "period": "a/b", "reps": ["a/b", ..],
//! "crossing": {"(j,j')": {"kind": "empty|finite|atleast|atmost|all", "lo": .., "hi": ..}}}]}`.

use std::collections::BTreeMap;

use serde::de::Deserializer;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::{format_rational, CrossingInterval, FlatError, ParallelClass, PeriodicWallspace, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicWallspaceJson {
    pub rank: usize,
    pub classes: Vec<ClassJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub direction: Vec<i64>,
    pub period: String,
    pub reps: Vec<String>,
    #[serde(default)]
    pub crossing: CrossingTableJson,
}

/// Crossing entries keyed by `(j, j')`, serialized in numeric key order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossingTableJson(pub Vec<((usize, usize), IntervalJson)>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<i64>,
}

impl Serialize for CrossingTableJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut entries: Vec<&((usize, usize), IntervalJson)> = self.0.iter().collect();
        entries.sort_by_key(|e| e.0);
        let mut map = s.serialize_map(Some(entries.len()))?;
        for ((j, k), v) in entries {
            map.serialize_entry(&format!("({j},{k})"), v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for CrossingTableJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, IntervalJson>::deserialize(d)?;
        let mut out = Vec::with_capacity(raw.len());
        for (key, v) in raw {
            let pair = parse_key(&key).ok_or_else(|| {
                serde::de::Error::custom(format!("crossing key {key:?} is not of the form \"(j,j')\""))
            })?;
            out.push((pair, v));
        }
        out.sort_by_key(|e| e.0);
        Ok(CrossingTableJson(out))
    }
}

fn parse_key(key: &str) -> Option<(usize, usize)> {
    let inner = key.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Parses `"a/b"` or `"a"`.
pub(crate) fn parse_rational(s: &str) -> Result<Rational, FlatError> {
    let bad = || FlatError::Schema(format!("{s:?} is not a rational \"a/b\""));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl IntervalJson {
    pub fn from_interval(c: &CrossingInterval) -> Self {
        let (kind, lo, hi) = match *c {
            CrossingInterval::Empty => ("empty", None, None),
            CrossingInterval::Finite { lo, hi } => ("finite", Some(lo), Some(hi)),
            CrossingInterval::AtLeast { lo } => ("atleast", Some(lo), None),
            CrossingInterval::AtMost { hi } => ("atmost", None, Some(hi)),
            CrossingInterval::All => ("all", None, None),
        };
        IntervalJson {
            kind: kind.to_string(),
            lo,
            hi,
        }
    }

    pub fn to_interval(&self) -> Result<CrossingInterval, FlatError> {
        let need = |v: Option<i64>, name: &str| {
            v.ok_or_else(|| FlatError::Schema(format!("interval kind {:?} needs {name:?}", self.kind)))
        };
        Ok(match self.kind.as_str() {
            "empty" => CrossingInterval::Empty,
            "all" => CrossingInterval::All,
            "atleast" => CrossingInterval::AtLeast { lo: need(self.lo, "lo")? },
            "atmost" => CrossingInterval::AtMost { hi: need(self.hi, "hi")? },
            "finite" => {
                let (lo, hi) = (need(self.lo, "lo")?, need(self.hi, "hi")?);
                if lo > hi {
                    return Err(FlatError::Schema(format!("finite interval [{lo}, {hi}] is empty; use kind \"empty\"")));
                }
                CrossingInterval::Finite { lo, hi }
            }
            other => return Err(FlatError::Schema(format!("unknown interval kind {other:?}"))),
        })
    }
}

impl PeriodicWallspace {
    /// Converts the JSON form. A missing off-diagonal entry is derived from
    /// its transpose; a missing diagonal entry means no self-crossing.
    pub fn from_json(j: &PeriodicWallspaceJson) -> Result<Self, FlatError> {
        let mut classes = Vec::with_capacity(j.classes.len());
        for (i, c) in j.classes.iter().enumerate() {
            let period = parse_rational(&c.period)?;
            let reps = c
                .reps
                .iter()
                .map(|r| parse_rational(r))
                .collect::<Result<Vec<_>, _>>()?;
            let r = reps.len();
            let mut table: Vec<Vec<Option<CrossingInterval>>> = vec![vec![None; r]; r];
            for ((a, b), v) in &c.crossing.0 {
                if *a >= r || *b >= r {
                    return Err(FlatError::Schema(format!(
                        "class {i}: crossing key ({a},{b}) names a representative beyond {r}"
                    )));
                }
                table[*a][*b] = Some(v.to_interval()?);
            }
            let mut crossing = vec![vec![CrossingInterval::Empty; r]; r];
            for a in 0..r {
                for b in 0..r {
                    crossing[a][b] = match (table[a][b], table[b][a]) {
                        (Some(x), _) => x,
                        (None, Some(y)) => y.negate(),
                        (None, None) if a == b => CrossingInterval::Empty,
                        (None, None) => {
                            return Err(FlatError::Schema(format!(
                                "class {i}: no crossing entry for ({a},{b}) or ({b},{a})"
                            )))
                        }
                    };
                }
            }
            classes.push(ParallelClass {
                direction: c.direction.clone(),
                period,
                reps,
                crossing,
            });
        }
        Ok(PeriodicWallspace { rank: j.rank, classes })
    }

    pub fn to_json(&self) -> PeriodicWallspaceJson {
        PeriodicWallspaceJson {
            rank: self.rank,
            classes: self
                .classes
                .iter()
                .map(|c| {
                    let r = c.reps.len();
                    let mut entries = Vec::with_capacity(r * r);
                    for a in 0..r {
                        for b in 0..r {
                            entries.push(((a, b), IntervalJson::from_interval(&c.crossing[a][b])));
                        }
                    }
                    ClassJson {
                        direction: c.direction.clone(),
                        period: format_rational(&c.period),
                        reps: c.reps.iter().map(format_rational).collect(),
                        crossing: CrossingTableJson(entries),
                    }
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FlatError> {
        let j: PeriodicWallspaceJson =
            serde_json::from_str(text).map_err(|e| FlatError::Schema(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HALFPLANE: &str = r#"{"rank":1,"classes":[{"direction":[1],"period":"1/1","reps":["0/1","1/2"],
        "crossing":{"(0,1)":{"kind":"atleast","lo":1}}}]}"#;

    #[test]
    fn fills_missing_entries() {
        let pw = PeriodicWallspace::parse(HALFPLANE).unwrap();
        let c = &pw.classes[0];
        assert_eq!(c.interval(1, 0), CrossingInterval::AtMost { hi: -1 });
        assert_eq!(c.interval(0, 0), CrossingInterval::Empty);
        assert_eq!(c.reps[1], Rational::new(1, 2));
    }

    #[test]
    fn serializes_in_key_order_with_exact_rationals() {
        let pw = PeriodicWallspace::parse(HALFPLANE).unwrap();
        let text = serde_json::to_string(&pw.to_json()).unwrap();
        assert!(text.contains(r#""period":"1/1""#));
        let i00 = text.find("(0,0)").unwrap();
        let i01 = text.find("(0,1)").unwrap();
        let i10 = text.find("(1,0)").unwrap();
        assert!(i00 < i01 && i01 < i10);
        assert_eq!(PeriodicWallspace::parse(&text).unwrap(), pw);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let missing = r#"{"rank":1,"classes":[{"direction":[1],"period":"1","reps":["0","1/2"],"crossing":{}}]}"#;
        assert!(matches!(PeriodicWallspace::parse(missing), Err(FlatError::Schema(_))));
        let bad_kind = HALFPLANE.replace("atleast", "sometimes");
        assert!(PeriodicWallspace::parse(&bad_kind).is_err());
        let bad_key = HALFPLANE.replace("(0,1)", "0-1");
        assert!(PeriodicWallspace::parse(&bad_key).is_err());
    }
}
