use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{match_leaf, Branch, BranchStatus};
use crate::exactalg::Rational;
use crate::families::Family;
use crate::forms::BinaryQuadraticForm;
use crate::multfn::ValueState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafStatus {
    Consistent,
    Stuck,
}

/// Value of one prime power in a leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeafValue {
    Determined(Rational),
    /// Never constrained.
    Free,
    /// Fixed in terms of free values, e.g. `f(11)^2`.
    Derived(String),
}

impl Serialize for LeafValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LeafValue::Determined(v) if v.is_integer() => match v.to_integer().to_i64() {
                Some(i) => s.serialize_i64(i),
                None => s.collect_str(v),
            },
            LeafValue::Determined(v) => s.collect_str(v),
            LeafValue::Free => s.serialize_str("free"),
            LeafValue::Derived(e) => s.serialize_str(e),
        }
    }
}

impl<'de> Deserialize<'de> for LeafValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = LeafValue;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer, a rational string, \"free\" or an expression")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<LeafValue, E> {
                Ok(LeafValue::Determined(Rational::from_integer(BigInt::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<LeafValue, E> {
                Ok(LeafValue::Determined(Rational::from_integer(BigInt::from(v))))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<LeafValue, E> {
                if v == "free" {
                    return Ok(LeafValue::Free);
                }
                match v.parse::<Rational>() {
                    Ok(r) => Ok(LeafValue::Determined(r)),
                    Err(_) => Ok(LeafValue::Derived(v.to_string())),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Prime-power values of a leaf, ascending; serialized as `{"f(8)": value, ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LeafValues(pub Vec<(u64, LeafValue)>);

impl LeafValues {
    pub fn get(&self, prime_power: u64) -> Option<&LeafValue> {
        self.0.iter().find(|(n, _)| *n == prime_power).map(|(_, v)| v)
    }

    pub fn determined(&self, prime_power: u64) -> Option<&Rational> {
        match self.get(prime_power) {
            Some(LeafValue::Determined(v)) => Some(v),
            _ => None,
        }
    }
}

impl Serialize for LeafValues {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (n, v) in &self.0 {
            map.serialize_entry(&format!("f({n})"), v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LeafValues {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LeafValues;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from \"f(n)\" to values")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<LeafValues, A::Error> {
                let mut out = Vec::new();
                while let Some((key, value)) = map.next_entry::<String, LeafValue>()? {
                    let n = key
                        .strip_prefix("f(")
                        .and_then(|k| k.strip_suffix(')'))
                        .and_then(|k| k.parse::<u64>().ok())
                        .ok_or_else(|| de::Error::custom(format!("bad key {key:?}")))?;
                    out.push((n, value));
                }
                Ok(LeafValues(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafSummary {
    pub id: String,
    pub status: LeafStatus,
    pub values: LeafValues,
    /// Families agreeing with every determined value (identity, const1, fp:p).
    pub families: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pending: Vec<String>,
}

impl LeafSummary {
    pub(crate) fn from_branch(branch: &Branch, families: &[Family]) -> Self {
        let status = match branch.status {
            BranchStatus::Consistent => LeafStatus::Consistent,
            BranchStatus::Stuck => LeafStatus::Stuck,
            other => unreachable!("leaf with status {other:?}"),
        };
        let mut values: Vec<(u64, LeafValue)> = branch
            .fn_state
            .entries()
            .map(|(pp, state)| {
                let v = match state {
                    ValueState::Determined(v) => LeafValue::Determined(v.clone()),
                    ValueState::Variable(var) => match branch.bindings.iter().find(|(b, _)| b == var) {
                        Some((_, expr)) => LeafValue::Derived(expr.to_string()),
                        None => LeafValue::Free,
                    },
                };
                (pp.value(), v)
            })
            .collect();
        values.sort_by_key(|(n, _)| *n);
        let families = if status == LeafStatus::Consistent {
            families
                .iter()
                .filter(|f| match_leaf(&branch.fn_state, f))
                .map(Family::to_string)
                .collect()
        } else {
            Vec::new()
        };
        let mut pending: Vec<String> = branch.constraints.iter().map(|c| format!("{} = 0", c.polynomial)).collect();
        if status == LeafStatus::Stuck && pending.is_empty() {
            pending.extend(branch.reason.clone());
        }
        LeafSummary {
            id: branch.id(),
            status,
            values: LeafValues(values),
            families,
            pending,
        }
    }

    pub fn is_explained(&self) -> bool {
        self.status == LeafStatus::Consistent && !self.families.is_empty()
    }
}

/// Outcome of a search; leaves are in tree order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub form: BinaryQuadraticForm,
    pub limit: u64,
    pub incomplete: bool,
    pub leaves: Vec<LeafSummary>,
    pub contradictions: usize,
}

impl SearchReport {
    pub fn consistent(&self) -> impl Iterator<Item = &LeafSummary> {
        self.leaves.iter().filter(|l| l.status == LeafStatus::Consistent)
    }

    pub fn stuck(&self) -> impl Iterator<Item = &LeafSummary> {
        self.leaves.iter().filter(|l| l.status == LeafStatus::Stuck)
    }

    /// Consistent leaves that match no known family.
    pub fn unexplained(&self) -> impl Iterator<Item = &LeafSummary> {
        self.consistent().filter(|l| l.families.is_empty())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "form {}  limit {}", self.form, self.limit);
        let _ = writeln!(
            out,
            "{} consistent, {} stuck, {} contradictions{}",
            self.consistent().count(),
            self.stuck().count(),
            self.contradictions,
            if self.incomplete { " (INCOMPLETE: cap exhausted)" } else { "" }
        );
        for leaf in &self.leaves {
            let _ = writeln!(out, "\n[{:?}] {}", leaf.status, leaf.id);
            let shown: Vec<String> = leaf
                .values
                .0
                .iter()
                .filter(|(_, v)| *v != LeafValue::Free)
                .map(|(n, v)| match v {
                    LeafValue::Determined(r) => format!("f({n})={r}"),
                    LeafValue::Derived(e) => format!("f({n})={e}"),
                    LeafValue::Free => unreachable!(),
                })
                .collect();
            let _ = writeln!(out, "  values: {}", shown.join(" "));
            if leaf.status == LeafStatus::Consistent {
                let fams = if leaf.families.is_empty() {
                    "NONE".to_string()
                } else {
                    leaf.families.join(", ")
                };
                let _ = writeln!(out, "  families: {fams}");
            }
            for p in &leaf.pending {
                let _ = writeln!(out, "  pending: {p}");
            }
        }
        out
    }
}
