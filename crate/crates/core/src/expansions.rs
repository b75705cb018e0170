//! Cohen-Ramanujan expansions `f(n) = Σ_q a_q c_q^{(s)}(n^s)` for arithmetical
//! functions given by a finitely supported Möbius transform `f' = μ * f`.
//!
//! With `f'(k) = 0` for `k > K`, the coefficients
//! `a_q = Σ_m f'(mq) / (mq)^s` vanish for `q > K`, so every series below is a
//! finite sum and every identity is checked with exact rationals.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith_core::factor::{divisors_of, factorize};
use crate::arith_core::{generalized_gcd, mobius_transform, omega, Natural, Rational};
use crate::cr_sum::{crs, CrsQuery};
use crate::error::{Error, Result};
use crate::identities::{divisor_abs_sum, grytczuk_value};

/// An arithmetical function described by its Möbius transform on `1..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusSpec {
    label: String,
    fprime: Vec<BigInt>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::SpecParse {
        line,
        message: message.into(),
    }
}

impl MobiusSpec {
    /// `fprime[k - 1]` is `f'(k)`; the support bound is `fprime.len()`.
    pub fn new(label: impl Into<String>, fprime: Vec<BigInt>) -> Result<Self> {
        let label = label.into();
        if fprime.is_empty() {
            return Err(parse_error(0, "support bound K must be at least 1"));
        }
        if label.contains('\n') {
            return Err(parse_error(0, "label must be a single line"));
        }
        Ok(MobiusSpec { label, fprime })
    }

    /// Builds a spec from sparse `(k, f'(k))` pairs; unlisted values are 0.
    pub fn from_pairs<V: Into<BigInt>>(
        label: impl Into<String>,
        support_bound: usize,
        pairs: impl IntoIterator<Item = (usize, V)>,
    ) -> Result<Self> {
        let mut fprime = vec![BigInt::zero(); support_bound];
        for (k, v) in pairs {
            if k == 0 || k > support_bound {
                return Err(parse_error(0, format!("k = {k} outside 1..={support_bound}")));
            }
            fprime[k - 1] = v.into();
        }
        Self::new(label, fprime)
    }

    /// Tabulates `f` on `1..=support_bound` and stores its Möbius transform.
    pub fn from_function(
        label: impl Into<String>,
        support_bound: usize,
        f: impl Fn(usize) -> BigInt,
    ) -> Result<Self> {
        let table: Vec<BigInt> = (1..=support_bound).map(f).collect();
        let fprime = (1..=support_bound)
            .map(|k| mobius_transform(&table, k))
            .collect::<Result<_>>()?;
        Self::new(label, fprime)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn support_bound(&self) -> usize {
        self.fprime.len()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.fprime
    }

    /// `f'(k)`, zero outside `1..=K`.
    pub fn value(&self, k: usize) -> BigInt {
        k.checked_sub(1)
            .and_then(|i| self.fprime.get(i))
            .cloned()
            .unwrap_or_default()
    }

    /// Parses the `K=` / `label=` / `k=value` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut support: Option<usize> = None;
        let mut label = String::new();
        let mut entries: BTreeMap<usize, (usize, BigInt)> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_error(line_no, format!("expected `key=value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "K" => {
                    if support.is_some() {
                        return Err(parse_error(line_no, "duplicate K header"));
                    }
                    let k: usize = value
                        .parse()
                        .map_err(|_| parse_error(line_no, format!("bad support bound `{value}`")))?;
                    support = Some(k);
                }
                "label" => label = value.to_string(),
                _ => {
                    let k: usize = key
                        .parse()
                        .map_err(|_| parse_error(line_no, format!("bad key `{key}`")))?;
                    if k == 0 {
                        return Err(parse_error(line_no, "k must be positive"));
                    }
                    let v: BigInt = value
                        .parse()
                        .map_err(|_| parse_error(line_no, format!("bad integer `{value}`")))?;
                    if entries.insert(k, (line_no, v)).is_some() {
                        return Err(parse_error(line_no, format!("duplicate entry for k = {k}")));
                    }
                }
            }
        }
        let support = support.ok_or_else(|| parse_error(0, "missing `K=` header"))?;
        if support == 0 {
            return Err(parse_error(0, "support bound K must be at least 1"));
        }
        let mut fprime = vec![BigInt::zero(); support];
        for (k, (line_no, v)) in entries {
            if k > support {
                return Err(parse_error(line_no, format!("k = {k} exceeds K = {support}")));
            }
            fprime[k - 1] = v;
        }
        Self::new(label, fprime)
    }

    /// Canonical text form: headers, then the non-zero entries in order.
    pub fn to_text(&self) -> String {
        let mut out = format!("K={}\nlabel={}\n", self.support_bound(), self.label);
        for (i, v) in self.fprime.iter().enumerate() {
            if !v.is_zero() {
                let _ = writeln!(out, "{}={}", i + 1, v);
            }
        }
        out
    }
}

impl FromStr for MobiusSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MobiusSpec::parse(s)
    }
}

impl Add for &MobiusSpec {
    type Output = MobiusSpec;

    fn add(self, rhs: &MobiusSpec) -> MobiusSpec {
        let len = self.support_bound().max(rhs.support_bound());
        let fprime = (1..=len).map(|k| self.value(k) + rhs.value(k)).collect();
        MobiusSpec {
            label: format!("{} + {}", self.label, rhs.label),
            fprime,
        }
    }
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

/// `f(n) = Σ_{d|n} f'(d)`.
pub fn f_from_spec(spec: &MobiusSpec, n: &Natural) -> Result<BigInt> {
    let support = Natural::from(spec.support_bound());
    let mut total = BigInt::zero();
    for d in divisors_of(&factorize(n)?) {
        if d > support {
            break;
        }
        total += spec.value(d.to_u64().expect("d <= K") as usize);
    }
    Ok(total)
}

/// `a_q = Σ_{m >= 1, mq <= K} f'(mq) / (mq)^s`.
pub fn coefficient(spec: &MobiusSpec, q: usize, s: u32) -> Result<Rational> {
    if q == 0 {
        return Err(Error::ZeroArgument { name: "q" });
    }
    if s == 0 {
        return Err(Error::ZeroArgument { name: "s" });
    }
    let mut total = Rational::zero();
    for k in (q..=spec.support_bound()).step_by(q) {
        let v = spec.value(k);
        if !v.is_zero() {
            total += ratio(v, BigInt::from(k).pow(s));
        }
    }
    Ok(total)
}

/// `Σ_{k<=K} 2^{ω(k)} |f'(k)| / k^s`.
pub fn delange_condition_sum(spec: &MobiusSpec, s: u32) -> Result<Rational> {
    if s == 0 {
        return Err(Error::ZeroArgument { name: "s" });
    }
    let mut total = Rational::zero();
    for (i, v) in spec.values().iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let k = i + 1;
        let weight = BigInt::from(2u8).pow(omega(&Natural::from(k))?);
        total += ratio(weight * v.abs(), BigInt::from(k).pow(s));
    }
    Ok(total)
}

/// Truncated expansion of one `f(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub s: u32,
    pub n: Natural,
    pub q_max: usize,
    /// `a_q` for `q <= min(q_max, K)`; every later coefficient is zero.
    pub coefficients: BTreeMap<usize, Rational>,
    pub partial_sum: Rational,
    pub target: Rational,
    pub residual: Rational,
    pub condition_sum: Rational,
}

#[derive(Serialize)]
struct ExpansionJson {
    label: String,
    n: String,
    s: u32,
    q_max: usize,
    support_bound: usize,
    coefficients: BTreeMap<usize, String>,
    partial_sum: String,
    target: String,
    residual: String,
    condition_sum: String,
}

impl ExpansionReport {
    /// JSON with every rational as a `"num/den"` string.
    pub fn to_json(&self, spec: &MobiusSpec) -> serde_json::Value {
        let doc = ExpansionJson {
            label: spec.label().to_string(),
            n: self.n.to_string(),
            s: self.s,
            q_max: self.q_max,
            support_bound: spec.support_bound(),
            coefficients: self
                .coefficients
                .iter()
                .map(|(q, a)| (*q, a.to_string()))
                .collect(),
            partial_sum: self.partial_sum.to_string(),
            target: self.target.to_string(),
            residual: self.residual.to_string(),
            condition_sum: self.condition_sum.to_string(),
        };
        serde_json::to_value(doc).expect("plain data")
    }
}

/// `Σ_{q <= q_max} a_q c_q^{(s)}(n^s)` compared against `f(n)`.
pub fn partial_expansion(
    spec: &MobiusSpec,
    n: &Natural,
    s: u32,
    q_max: usize,
) -> Result<ExpansionReport> {
    n.positive("n")?;
    if q_max == 0 {
        return Err(Error::ZeroArgument { name: "q_max" });
    }
    let ns = n.pow(s);
    let mut coefficients = BTreeMap::new();
    let mut partial_sum = Rational::zero();
    for q in 1..=q_max.min(spec.support_bound()) {
        let a = coefficient(spec, q, s)?;
        if !a.is_zero() {
            let c = crs(&CrsQuery::new(q, ns.clone(), s)?).value;
            partial_sum += &a * Rational::from_integer(c);
        }
        coefficients.insert(q, a);
    }
    let target = Rational::from_integer(f_from_spec(spec, n)?);
    Ok(ExpansionReport {
        s,
        n: n.clone(),
        q_max,
        coefficients,
        residual: &partial_sum - &target,
        partial_sum,
        target,
        condition_sum: delange_condition_sum(spec, s)?,
    })
}

/// The absolute double series evaluated three ways, plus the inequalities
/// linking it to the condition sum.
#[derive(Clone, Debug, PartialEq)]
pub struct RearrangementReport {
    /// `Σ_q Σ_m |f'(mq)| / (mq)^s · |c_q^{(s)}(n^s)|` by enumerating pairs.
    pub double_sum: Rational,
    /// `Σ_k |f'(k)| / k^s · Σ_{q|k} |c_q^{(s)}(n^s)|`.
    pub grouped_divisor_sum: Rational,
    /// `Σ_k |f'(k)| / k^s · 2^{ω(k^s/g)} g` with `g = (k^s, n^s)_s`.
    pub grouped_closed_form: Rational,
    /// `Σ_k |f'(k)| / k^s · 2^{ω(k)}`.
    pub lower_bound_sum: Rational,
    /// `n^s` times [`Self::lower_bound_sum`].
    pub upper_bound_sum: Rational,
    /// `2^{ω(k^s/g)} >= 2^{ω(k^s)} / 2^{ω(g)} >= 2^{ω(k)} / g` for every k in the support.
    pub termwise_chain_holds: bool,
}

impl RearrangementReport {
    pub fn holds(&self) -> bool {
        self.double_sum == self.grouped_divisor_sum
            && self.grouped_divisor_sum == self.grouped_closed_form
            && self.termwise_chain_holds
            && self.lower_bound_sum <= self.grouped_closed_form
            && self.grouped_closed_form <= self.upper_bound_sum
    }
}

pub fn rearrangement(spec: &MobiusSpec, n: &Natural, s: u32) -> Result<RearrangementReport> {
    n.positive("n")?;
    if s == 0 {
        return Err(Error::ZeroArgument { name: "s" });
    }
    let ns = n.pow(s);
    let support = spec.support_bound();
    let weight = |k: usize| ratio(spec.value(k).abs(), BigInt::from(k).pow(s));

    let mut double_sum = Rational::zero();
    for q in 1..=support {
        let c = crs(&CrsQuery::new(q, ns.clone(), s)?).value.abs();
        for k in (q..=support).step_by(q) {
            if !spec.value(k).is_zero() {
                double_sum += weight(k) * Rational::from_integer(c.clone());
            }
        }
    }

    let mut grouped_divisor_sum = Rational::zero();
    let mut grouped_closed_form = Rational::zero();
    let mut lower_bound_sum = Rational::zero();
    let mut termwise_chain_holds = true;
    for k in (1..=support).filter(|&k| !spec.value(k).is_zero()) {
        let k_nat = Natural::from(k);
        let w = weight(k);
        let h = divisor_abs_sum(&k_nat, &ns, s)?;
        let closed = grytczuk_value(&k_nat, &ns, s)?;
        grouped_divisor_sum += &w * Rational::from_integer(h.to_bigint());
        grouped_closed_form += &w * Rational::from_integer(closed.to_bigint());

        let ks = k_nat.pow(s);
        let g = generalized_gcd(&ks, &ns, s)?;
        let omega_quot = omega(&(&ks / &g))?;
        let omega_ks = omega(&ks)?;
        let omega_g = omega(&g)?;
        let omega_k = omega(&k_nat)?;
        // 2^a >= 2^b / 2^c  <=>  a + c >= b, and 2^{ω(g)} <= g.
        termwise_chain_holds &= omega_quot + omega_g >= omega_ks
            && Natural::from(2u8).pow(omega_g) <= g
            && omega_ks == omega_k;

        lower_bound_sum += w * Rational::from_integer(BigInt::from(2u8).pow(omega_k));
    }
    let upper_bound_sum = &lower_bound_sum * Rational::from_integer(ns.to_bigint());
    Ok(RearrangementReport {
        double_sum,
        grouped_divisor_sum,
        grouped_closed_form,
        lower_bound_sum,
        upper_bound_sum,
        termwise_chain_holds,
    })
}

/// True when all three evaluations of the double series coincide and the
/// bounding chain holds.
pub fn rearrangement_check(spec: &MobiusSpec, n: &Natural, s: u32) -> Result<bool> {
    Ok(rearrangement(spec, n, s)?.holds())
}
