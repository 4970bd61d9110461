//! Group specs and their JSON form.
//!
//! ```json
//! {"kind":"vilenkin","orders":[2,3,2],"normalization":"probability"}
//! {"kind":"padic","p":3,"d":2}
//! {"kind":"rt","q":2,"n":3,"normalization":"counting"}
//! {"kind":"custom","factor_orders":[4,2],"chain_generators":[[[2,0],[0,1]],[[2,0]]]}
//! {"kind":"selfdual","inner":{"kind":"padic","p":2,"d":2}}
//! {"kind":"windowed","inner":{"kind":"rt","q":3,"n":2},"base_index":1}
//! ```
//!
//! Validation errors carry a JSON pointer to the offending value.

use crate::error::{Error, Result};
use serde_json::{json, Map, Value};

/// Haar measure normalization of a compact group spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Normalization {
    /// `μ(X) = 1`.
    #[default]
    Probability,
    /// `μ({0}) = 1`.
    Counting,
}

/// Shape of the group and its chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// `Z_{m_1} × … × Z_{m_d}`, chain "first `j` coordinates zero".
    Vilenkin { orders: Vec<u64> },
    /// `Z_{p^d}` with chain `p^j Z`.
    Padic { p: u64, d: u32 },
    /// `Z_q^n`, chain "first `r` coordinates zero".
    Rt { q: u64, n: u32 },
    /// Arbitrary generator-defined chain inside `∏ Z_{m_k}`.
    ///
    /// `chain_generators[k]` generates level `k+1`; level `0` is the whole
    /// group and a trailing trivial level is appended when missing.
    Custom {
        factor_orders: Vec<u64>,
        chain_generators: Vec<Vec<Vec<i64>>>,
    },
    /// `X_0 × X̂_0` with the doubly infinite chain cut to a finite window.
    SelfDual { inner: Box<GroupSpec> },
    /// The chain of `inner` with `μ(G_base) = 1`.
    Windowed {
        inner: Box<GroupSpec>,
        base_index: usize,
    },
}

/// A complete group spec.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    /// Group and chain shape.
    pub kind: GroupKind,
    /// Measure normalization for compact kinds.
    pub normalization: Normalization,
}

impl GroupSpec {
    fn of(kind: GroupKind) -> GroupSpec {
        GroupSpec {
            kind,
            normalization: Normalization::Probability,
        }
    }

    /// Vilenkin product of cyclic groups.
    pub fn vilenkin(orders: &[u64]) -> GroupSpec {
        Self::of(GroupKind::Vilenkin {
            orders: orders.to_vec(),
        })
    }

    /// Truncated `p`-adic integers `Z_{p^d}`.
    pub fn padic(p: u64, d: u32) -> GroupSpec {
        Self::of(GroupKind::Padic { p, d })
    }

    /// `Z_q^n` with the string chain.
    pub fn rt(q: u64, n: u32) -> GroupSpec {
        Self::of(GroupKind::Rt { q, n })
    }

    /// Custom chain.
    pub fn custom(factor_orders: &[u64], chain_generators: Vec<Vec<Vec<i64>>>) -> GroupSpec {
        Self::of(GroupKind::Custom {
            factor_orders: factor_orders.to_vec(),
            chain_generators,
        })
    }

    /// Self-dual product `X_0 × X̂_0`.
    pub fn selfdual(inner: GroupSpec) -> GroupSpec {
        Self::of(GroupKind::SelfDual {
            inner: Box::new(inner),
        })
    }

    /// Finite window with `μ(G_base) = 1`.
    pub fn windowed(inner: GroupSpec, base_index: usize) -> GroupSpec {
        Self::of(GroupKind::Windowed {
            inner: Box::new(inner),
            base_index,
        })
    }

    /// Same spec under counting normalization.
    pub fn counting(mut self) -> GroupSpec {
        self.normalization = Normalization::Counting;
        self
    }

    /// Same spec with the given normalization.
    pub fn with_normalization(mut self, n: Normalization) -> GroupSpec {
        self.normalization = n;
        self
    }

    /// True for kinds whose measure is fixed by a window base.
    pub fn is_windowed(&self) -> bool {
        matches!(
            self.kind,
            GroupKind::SelfDual { .. } | GroupKind::Windowed { .. }
        )
    }

    /// Short human-readable name, e.g. `padic(3,2)`.
    pub fn label(&self) -> String {
        let base = match &self.kind {
            GroupKind::Vilenkin { orders } => format!("vilenkin{orders:?}"),
            GroupKind::Padic { p, d } => format!("padic({p},{d})"),
            GroupKind::Rt { q, n } => format!("rt({q},{n})"),
            GroupKind::Custom { factor_orders, .. } => format!("custom{factor_orders:?}"),
            GroupKind::SelfDual { inner } => format!("selfdual({})", inner.label()),
            GroupKind::Windowed { inner, base_index } => {
                format!("windowed({},{base_index})", inner.label())
            }
        };
        match (self.is_windowed(), self.normalization) {
            (false, Normalization::Counting) => format!("{base}/counting"),
            _ => base,
        }
    }

    /// JSON form accepted by [`GroupSpec::from_json`].
    pub fn to_json(&self) -> Value {
        let mut v = match &self.kind {
            GroupKind::Vilenkin { orders } => json!({"kind":"vilenkin","orders":orders}),
            GroupKind::Padic { p, d } => json!({"kind":"padic","p":p,"d":d}),
            GroupKind::Rt { q, n } => json!({"kind":"rt","q":q,"n":n}),
            GroupKind::Custom {
                factor_orders,
                chain_generators,
            } => json!({"kind":"custom","factor_orders":factor_orders,
                        "chain_generators":chain_generators}),
            GroupKind::SelfDual { inner } => json!({"kind":"selfdual","inner":inner.to_json()}),
            GroupKind::Windowed { inner, base_index } => {
                json!({"kind":"windowed","inner":inner.to_json(),"base_index":base_index})
            }
        };
        let n = match self.normalization {
            Normalization::Probability => "probability",
            Normalization::Counting => "counting",
        };
        v["normalization"] = json!(n);
        v
    }

    /// Parses and validates a JSON document.
    pub fn from_json_str(s: &str) -> Result<GroupSpec> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_json(&v)
    }

    /// Validates a parsed JSON value.
    pub fn from_json(v: &Value) -> Result<GroupSpec> {
        parse_spec(v, "")
    }
}

fn err(path: &str, message: impl Into<String>) -> Error {
    Error::Spec {
        path: if path.is_empty() { "/".into() } else { path.into() },
        message: message.into(),
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| err(path, "expected an object"))
}

fn field<'a>(o: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    o.get(key)
        .ok_or_else(|| err(path, format!("missing field \"{key}\"")))
}

fn uint_at(v: &Value, path: &str, min: u64) -> Result<u64> {
    let n = v
        .as_u64()
        .ok_or_else(|| err(path, "expected a nonnegative integer"))?;
    if n < min {
        return Err(err(path, format!("must be at least {min}")));
    }
    Ok(n)
}

fn order_list(v: &Value, path: &str, what: &str) -> Result<Vec<u64>> {
    let a = v
        .as_array()
        .ok_or_else(|| err(path, format!("{what} must be an array")))?;
    if a.is_empty() {
        return Err(err(path, format!("{what} must be nonempty")));
    }
    a.iter()
        .enumerate()
        .map(|(i, x)| uint_at(x, &format!("{path}/{i}"), 2))
        .collect()
}

fn check_keys(o: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<()> {
    for k in o.keys() {
        if k != "kind" && k != "normalization" && !allowed.contains(&k.as_str()) {
            return Err(err(&format!("{path}/{k}"), "unknown field"));
        }
    }
    Ok(())
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

fn parse_spec(v: &Value, path: &str) -> Result<GroupSpec> {
    let o = object(v, path)?;
    let kpath = format!("{path}/kind");
    let kind = field(o, path, "kind")?
        .as_str()
        .ok_or_else(|| err(&kpath, "expected a string"))?;
    let normalization = match o.get("normalization") {
        None => Normalization::Probability,
        Some(n) => match n.as_str() {
            Some("probability") => Normalization::Probability,
            Some("counting") => Normalization::Counting,
            _ => {
                return Err(err(
                    &format!("{path}/normalization"),
                    "expected \"probability\" or \"counting\"",
                ))
            }
        },
    };
    let kind = match kind {
        "vilenkin" => {
            check_keys(o, path, &["orders"])?;
            let p = format!("{path}/orders");
            GroupKind::Vilenkin {
                orders: order_list(field(o, path, "orders")?, &p, "orders")?,
            }
        }
        "padic" => {
            check_keys(o, path, &["p", "d"])?;
            let pp = format!("{path}/p");
            let p = uint_at(field(o, path, "p")?, &pp, 2)?;
            if !is_prime(p) {
                return Err(err(&pp, format!("{p} is not prime")));
            }
            let d = uint_at(field(o, path, "d")?, &format!("{path}/d"), 1)?;
            GroupKind::Padic { p, d: d as u32 }
        }
        "rt" => {
            check_keys(o, path, &["q", "n"])?;
            let q = uint_at(field(o, path, "q")?, &format!("{path}/q"), 2)?;
            let n = uint_at(field(o, path, "n")?, &format!("{path}/n"), 1)?;
            GroupKind::Rt { q, n: n as u32 }
        }
        "custom" => {
            check_keys(o, path, &["factor_orders", "chain_generators"])?;
            let fp = format!("{path}/factor_orders");
            let factor_orders = order_list(field(o, path, "factor_orders")?, &fp, "factor_orders")?;
            let cp = format!("{path}/chain_generators");
            let levels = field(o, path, "chain_generators")?
                .as_array()
                .ok_or_else(|| err(&cp, "expected an array of generator lists"))?;
            if levels.is_empty() {
                return Err(err(&cp, "chain must have at least one level"));
            }
            let mut chain = Vec::new();
            for (li, level) in levels.iter().enumerate() {
                let lp = format!("{cp}/{li}");
                let gens = level
                    .as_array()
                    .ok_or_else(|| err(&lp, "expected an array of generators"))?;
                let mut out = Vec::new();
                for (gi, g) in gens.iter().enumerate() {
                    let gp = format!("{lp}/{gi}");
                    let res = g
                        .as_array()
                        .ok_or_else(|| err(&gp, "expected a residue vector"))?;
                    if res.len() != factor_orders.len() {
                        return Err(err(
                            &gp,
                            format!(
                                "expected {} residues, got {}",
                                factor_orders.len(),
                                res.len()
                            ),
                        ));
                    }
                    let r = res
                        .iter()
                        .enumerate()
                        .map(|(k, x)| {
                            x.as_i64()
                                .ok_or_else(|| err(&format!("{gp}/{k}"), "expected an integer"))
                        })
                        .collect::<Result<Vec<i64>>>()?;
                    out.push(r);
                }
                chain.push(out);
            }
            GroupKind::Custom {
                factor_orders,
                chain_generators: chain,
            }
        }
        "selfdual" => {
            check_keys(o, path, &["inner"])?;
            let inner = parse_spec(field(o, path, "inner")?, &format!("{path}/inner"))?;
            GroupKind::SelfDual {
                inner: Box::new(inner),
            }
        }
        "windowed" => {
            check_keys(o, path, &["inner", "base_index"])?;
            let inner = parse_spec(field(o, path, "inner")?, &format!("{path}/inner"))?;
            let base_index =
                uint_at(field(o, path, "base_index")?, &format!("{path}/base_index"), 0)? as usize;
            GroupKind::Windowed {
                inner: Box::new(inner),
                base_index,
            }
        }
        other => {
            return Err(err(
                &kpath,
                format!(
                    "unknown kind \"{other}\" (expected vilenkin, padic, rt, custom, selfdual or windowed)"
                ),
            ))
        }
    };
    Ok(GroupSpec {
        kind,
        normalization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_all_kinds() {
        let specs = [
            GroupSpec::vilenkin(&[2, 3, 2]),
            GroupSpec::padic(3, 2).counting(),
            GroupSpec::rt(2, 3),
            GroupSpec::custom(&[4, 2], vec![vec![vec![2, 0], vec![0, 1]], vec![vec![2, 0]]]),
            GroupSpec::selfdual(GroupSpec::padic(2, 2)),
            GroupSpec::windowed(GroupSpec::rt(3, 2), 1),
        ];
        for s in specs {
            assert_eq!(GroupSpec::from_json(&s.to_json()).unwrap(), s);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = GroupSpec::from_json_str(r#"{"kind":"vilenkin","orders":[2,1,3]}"#).unwrap_err();
        assert_eq!(
            e,
            Error::Spec {
                path: "/orders/1".into(),
                message: "must be at least 2".into()
            }
        );
        let e = GroupSpec::from_json_str(r#"{"kind":"windowed","inner":{"kind":"padic","p":4,"d":2},"base_index":0}"#)
            .unwrap_err();
        assert!(matches!(e, Error::Spec { ref path, .. } if path == "/inner/p"));
        let e = GroupSpec::from_json_str("{\"kind\":\n\"rt\",").unwrap_err();
        assert!(matches!(e, Error::Json { line: 2, .. }));
        let e = GroupSpec::from_json_str(r#"{"kind":"custom","factor_orders":[4],"chain_generators":[]}"#)
            .unwrap_err();
        assert!(matches!(e, Error::Spec { ref path, .. } if path == "/chain_generators"));
        let e = GroupSpec::from_json_str(r#"{"kind":"rt","q":2,"n":2,"extra":1}"#).unwrap_err();
        assert!(matches!(e, Error::Spec { ref path, .. } if path == "/extra"));
    }
}
