//! The constants bounding a decomposition of a virtually free group, as
//! functions of the input size.
//!
//! For a grammar the values are doubly exponential in the number of
//! productions, so all arithmetic is done on big integers. A value whose
//! binary length would exceed [`MAX_EXACT_BITS`] is kept as a formula.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::lang::{Grammar, LangError};
use crate::vfpres::VfPresentation;

/// Values with more bits than this are reported symbolically.
pub const MAX_EXACT_BITS: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Exact(BigUint),
    Symbolic(String),
}

impl Value {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Value::Exact(v) => Some(v),
            Value::Symbolic(_) => None,
        }
    }

    fn from_u64(v: u64) -> Self {
        Value::Exact(BigUint::from(v))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(v) => {
                let s = v.to_string();
                if s.len() > 60 {
                    write!(
                        f,
                        "{}…{} ({} digits)",
                        &s[..20],
                        &s[s.len() - 20..],
                        s.len()
                    )
                } else {
                    f.write_str(&s)
                }
            }
            Value::Symbolic(s) => f.write_str(s),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Exact(v) => s.serialize_str(&v.to_string()),
            Value::Symbolic(v) => s.serialize_str(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Grammar,
    Presentation,
}

/// All constants for one input. `xi_sharp` and `theta_sharp` are the
/// sharper subgroup-order and edge-count bounds available for
/// presentations (`|S|` and `‖𝒱‖`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSet {
    pub source: Source,
    pub n: Value,
    pub d: Value,
    pub k: Value,
    #[serde(rename = "K")]
    pub big_k: Value,
    #[serde(rename = "R")]
    pub r: Value,
    pub xi: Value,
    pub theta: Value,
    pub lambda: Value,
    pub phi_len: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_sharp: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_sharp: Option<Value>,
}

impl BoundSet {
    pub fn rows(&self) -> Vec<(&'static str, &'static str, String)> {
        let mut rows = vec![
            ("N", "size of the input", self.n.to_string()),
            ("d", "degree of the Cayley graph", self.d.to_string()),
            ("k", "triangulation constant", self.k.to_string()),
            (
                "K",
                "maximal weight of a minimal cut",
                self.big_k.to_string(),
            ),
            (
                "R",
                "maximal boundary diameter of a minimal cut",
                self.r.to_string(),
            ),
            (
                "Xi",
                "maximal order of a finite subgroup",
                self.xi.to_string(),
            ),
            (
                "Theta",
                "maximal edge count of a reduced graph of groups",
                self.theta.to_string(),
            ),
            (
                "Lambda",
                "ball radius 2(R+1)(Theta+1)Theta Xi + Theta",
                self.lambda.to_string(),
            ),
            (
                "phi_len",
                "image length 4(R+1)(Theta+1)^2 Xi",
                self.phi_len.to_string(),
            ),
        ];
        if let Some(x) = &self.xi_sharp {
            rows.push(("Xi'", "sharper subgroup bound |S|", x.to_string()));
        }
        if let Some(t) = &self.theta_sharp {
            rows.push(("Theta'", "sharper edge bound", t.to_string()));
        }
        rows
    }
}

impl fmt::Display for BoundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let src = match self.source {
            Source::Grammar => "grammar",
            Source::Presentation => "presentation",
        };
        writeln!(f, "bounds for a {src}")?;
        for (name, what, v) in self.rows() {
            writeln!(f, "  {name:<8} {v:<24} {what}")?;
        }
        Ok(())
    }
}

/// `base^exp`, or `None` when the result would be too large.
fn pow(base: u64, exp: &BigUint) -> Option<BigUint> {
    if base <= 1 {
        return Some(BigUint::from(base));
    }
    let e = exp.to_u64()?;
    let bits = e.checked_mul(64 - u64::from(base.leading_zeros()))?;
    if bits > MAX_EXACT_BITS {
        return None;
    }
    Some(BigUint::from(base).pow(e as u32))
}

/// `⌈a / 2⌉`
fn half_up(a: &BigUint) -> BigUint {
    (a + 1u32) >> 1
}

/// `Λ = 2(R+1)(Θ+1)ΘΞ + Θ`
pub fn lambda(r: &Value, xi: &Value, theta: &Value) -> Value {
    match (r, xi, theta) {
        (Value::Exact(r), Value::Exact(xi), Value::Exact(th)) => {
            Value::Exact(BigUint::from(2u32) * (r + 1u32) * (th + 1u32) * th * xi + th)
        }
        _ => Value::Symbolic("2(R+1)(Θ+1)ΘΞ + Θ".into()),
    }
}

/// `4(R+1)(Θ+1)²Ξ`, the bound on the length of a generator image.
pub fn phi_length_bound(b: &BoundSet) -> Value {
    phi_len(&b.r, &b.xi, &b.theta)
}

fn phi_len(r: &Value, xi: &Value, theta: &Value) -> Value {
    match (r, xi, theta) {
        (Value::Exact(r), Value::Exact(xi), Value::Exact(th)) => {
            let t1 = th + 1u32;
            Value::Exact(BigUint::from(4u32) * (r + 1u32) * &t1 * &t1 * xi)
        }
        _ => Value::Symbolic("4(R+1)(Θ+1)²Ξ".into()),
    }
}

/// Grammar constants from the number of productions `p`, the alphabet size
/// `d` and the grammar size `n`: `k = 2^p`, `K = d^{3k+3}`,
/// `R = ⌈3kK/2⌉`, `Ξ = d^{12k+10}`, `Θ = d^{12k+11}`.
pub fn grammar_bounds(p: usize, d: usize, n: usize) -> BoundSet {
    let d64 = d as u64;
    let k = if p < MAX_EXACT_BITS as usize {
        Some(BigUint::one() << p)
    } else {
        None
    };
    let sym = |s: &str| Value::Symbolic(s.to_string());
    let (kv, big_k, r, xi, theta) = match k {
        None => (
            sym("2^|P|"),
            sym("d^(3k+3)"),
            sym("⌈3kK/2⌉"),
            sym("d^(12k+10)"),
            sym("d^(12k+11)"),
        ),
        Some(k) => {
            let big_k = pow(d64, &(&k * 3u32 + 3u32));
            let r = big_k.as_ref().map(|kk| half_up(&(&k * 3u32 * kk)));
            let xi = pow(d64, &(&k * 12u32 + 10u32));
            let theta = pow(d64, &(&k * 12u32 + 11u32));
            let or = |v: Option<BigUint>, s: &str| v.map(Value::Exact).unwrap_or_else(|| sym(s));
            (
                Value::Exact(k),
                or(big_k, "d^(3k+3)"),
                or(r, "⌈3kK/2⌉"),
                or(xi, "d^(12k+10)"),
                or(theta, "d^(12k+11)"),
            )
        }
    };
    let lambda = lambda(&r, &xi, &theta);
    let phi = phi_len(&r, &xi, &theta);
    BoundSet {
        source: Source::Grammar,
        n: Value::from_u64(n as u64),
        d: Value::from_u64(d64),
        k: kv,
        big_k,
        r,
        xi,
        theta,
        lambda,
        phi_len: phi,
        xi_sharp: None,
        theta_sharp: None,
    }
}

pub fn bounds_for_grammar(g: &Grammar) -> Result<BoundSet, LangError> {
    if !g.is_cnf() {
        return Err(LangError::NotCnf);
    }
    Ok(grammar_bounds(g.prods.len(), g.terminals.len(), g.size()))
}

/// Presentation constants from `N = ‖𝒱‖`: `k = 2N+2`, `K = N²`,
/// `R = 3(N+1)N²`, `Ξ = Θ = N`.
pub fn presentation_bounds(n: u64, d: u64, reps: u64) -> BoundSet {
    let nb = BigUint::from(n);
    let k = BigUint::from(2u32) * &nb + 2u32;
    let big_k = &nb * &nb;
    let r = half_up(&(&k * 3u32 * &big_k));
    let xi = Value::Exact(nb.clone());
    let theta = Value::Exact(nb.clone());
    let r = Value::Exact(r);
    BoundSet {
        source: Source::Presentation,
        n: Value::Exact(nb.clone()),
        d: Value::from_u64(d),
        k: Value::Exact(k),
        big_k: Value::Exact(big_k),
        lambda: lambda(&r, &xi, &theta),
        phi_len: phi_len(&r, &xi, &theta),
        r,
        xi,
        theta,
        xi_sharp: Some(Value::from_u64(reps)),
        theta_sharp: Some(Value::Exact(nb)),
    }
}

pub fn bounds_for_presentation(p: &VfPresentation) -> BoundSet {
    presentation_bounds(
        p.size(),
        p.sigma().len() as u64,
        p.representatives().len() as u64,
    )
}
