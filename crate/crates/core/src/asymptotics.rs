//! Closed-form quantities for G(n,p): the threshold `a_p(n)`, the window
//! endpoints built from it, first-moment expectations of self dominating
//! pairs, and the tail bounds on those expectations.
//!
//! `a_p(n)` is evaluated in binary64. Every window endpoint is then built
//! exactly from the integer `⌊t · a_p(n)⌋`. When `t · a_p(n)` lies within
//! [`FLOAT_SENSITIVITY`] of an integer that floor is decided by rounding,
//! and predictions carry `float_sensitive = true`.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sdf::{fmt_rational, serialize_rational, serialize_rationals, Rational};

pub const FLOAT_SENSITIVITY: f64 = 1e-9;

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("probability {p} is not in (0, 1)")))
    }
}

fn check_t(t: u32) -> Result<()> {
    if t == 0 {
        Err(Error::param("t must be a positive integer"))
    } else {
        Ok(())
    }
}

/// `log_{1/(1-p)} x`.
pub fn log_base(p: f64, x: f64) -> f64 {
    x.ln() / (1.0 / (1.0 - p)).ln()
}

/// `a_p(n) = L(n / (L(n) ln n))` with `L = log_{1/(1-p)}`.
pub fn a_p(n: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    if n < 2 {
        return Err(Error::param(format!("a_p(n) needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    Ok(log_base(p, nf / (log_base(p, nf) * nf.ln())))
}

/// `⌊a⌋_t`: the largest `m1 + m2/t` (integers) not above `a`, i.e. `⌊t a⌋ / t`.
pub fn floor_t(a: f64, t: u32) -> Rational {
    assert!(t >= 1, "floor_t needs t >= 1");
    assert!(a.is_finite(), "floor_t needs a finite argument");
    let k = (t as f64 * a).floor() as i64;
    Rational::new(k, t as i64)
}

/// True when `⌊t a⌋` is decided by binary64 rounding.
pub fn float_sensitive(a: f64, t: u32) -> bool {
    let x = t as f64 * a;
    (x - x.round()).abs() < FLOAT_SENSITIVITY
}

/// `⌊⌊a⌋_t + 1/t⌋ + 1` for a given `a`.
pub fn b_from_a(a: f64, t: u32) -> i64 {
    let lower = floor_t(a, t) + Rational::new(1, t as i64);
    lower.floor().to_integer() + 1
}

/// `b_{p,t}(n) = ⌊⌊a_p(n)⌋_t + 1/t⌋ + 1`.
pub fn b_pt(n: u64, p: f64, t: u32) -> Result<i64> {
    check_t(t)?;
    Ok(b_from_a(a_p(n, p)?, t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Window for `γ^{s/t}`, `2 <= s <= t-1`, with the excluded values removed.
    Main,
    /// Window for `γ^{s/t}`, `1 <= s <= t-1`, nothing excluded.
    Weak,
    /// `γ^c` for `c >= 1`: `[⌊a⌋ + 1, ⌊a⌋ + 2]`.
    Classical,
    /// `γ_R ∈ {2⌊a⌋_2 + i : 1 <= i <= 3}`.
    Roman,
    /// `∂ ∈ {n - 2⌊a⌋_2 - i : 1 <= i <= 3}`.
    Differential,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "main" => Ok(Variant::Main),
            "weak" => Ok(Variant::Weak),
            "classical" => Ok(Variant::Classical),
            "roman" => Ok(Variant::Roman),
            "differential" => Ok(Variant::Differential),
            other => Err(Error::param(format!("unknown variant {other:?}"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Main => "main",
            Variant::Weak => "weak",
            Variant::Classical => "classical",
            Variant::Roman => "roman",
            Variant::Differential => "differential",
        })
    }
}

/// Predicted concentration window for one invariant of G(n,p).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowPrediction {
    pub variant: Variant,
    /// Invariant the window speaks about, e.g. `"gamma^{2/3}"`.
    pub invariant: String,
    pub n: u64,
    pub p: f64,
    /// `p` as its IEEE-754 bit pattern, `0x...`.
    pub p_bits: String,
    pub s: u32,
    pub t: u32,
    pub a_p: f64,
    #[serde(serialize_with = "serialize_rational")]
    pub lower: Rational,
    /// Largest value of the window; equals `b` for `main` and `weak`.
    #[serde(serialize_with = "serialize_rational")]
    pub upper: Rational,
    /// `b_{p,t}(n)` for the variant's `t`.
    pub b: i64,
    /// Every candidate value in `[lower, upper]` not excluded, ascending.
    #[serde(serialize_with = "serialize_rationals")]
    pub admissible: Vec<Rational>,
    /// Values inside `[lower, upper]` ruled out by the refinement (`main` only).
    #[serde(serialize_with = "serialize_rationals")]
    pub excluded: Vec<Rational>,
    pub float_sensitive: bool,
}

impl WindowPrediction {
    pub fn contains(&self, v: Rational) -> bool {
        self.lower <= v && v <= self.upper && !self.excluded.contains(&v)
    }
}

fn grid_between(lo: Rational, hi: Rational, t: u32) -> Vec<Rational> {
    let t = t as i64;
    let first = (lo * t).ceil().to_integer();
    let last = (hi * t).floor().to_integer();
    (first..=last).map(|k| Rational::new(k, t)).collect()
}

/// Window for the chosen variant.
///
/// `main` needs `2 <= s <= t-1`, `weak` needs `1 <= s <= t-1`, `classical`
/// needs `s/t >= 1` and uses integer steps; `roman` and `differential`
/// ignore `(s, t)` and work with `t = 2`.
pub fn predict_window(n: u64, p: f64, s: u32, t: u32, variant: Variant) -> Result<WindowPrediction> {
    let a = a_p(n, p)?;
    let one = Rational::from_integer(1);
    let (s, t) = match variant {
        Variant::Main if !(2 <= s && s < t) => {
            return Err(Error::param(format!("main window needs 2 <= s <= t-1, got s={s}, t={t}")))
        }
        Variant::Weak if !(1 <= s && s < t) => {
            return Err(Error::param(format!("weak window needs 1 <= s <= t-1, got s={s}, t={t}")))
        }
        Variant::Classical if t == 0 || s < t => {
            return Err(Error::param(format!("classical window needs c = s/t >= 1, got s={s}, t={t}")))
        }
        Variant::Roman | Variant::Differential => (1, 2),
        _ => (s, t),
    };

    let base = WindowPrediction {
        variant,
        invariant: String::new(),
        n,
        p,
        p_bits: format!("{:#018x}", p.to_bits()),
        s,
        t,
        a_p: a,
        lower: one,
        upper: one,
        b: 0,
        admissible: Vec::new(),
        excluded: Vec::new(),
        float_sensitive: false,
    };

    Ok(match variant {
        Variant::Main | Variant::Weak => {
            let lower = floor_t(a, t) + Rational::new(1, t as i64);
            let b = b_from_a(a, t);
            let upper = Rational::from_integer(b);
            let excluded: Vec<Rational> = if variant == Variant::Main {
                (t - s + 1..=t - 1)
                    .rev()
                    .map(|i| upper - Rational::new(i as i64, t as i64))
                    .filter(|v| *v >= lower)
                    .collect()
            } else {
                Vec::new()
            };
            let admissible = grid_between(lower, upper, t)
                .into_iter()
                .filter(|v| !excluded.contains(v))
                .collect();
            WindowPrediction {
                invariant: format!("gamma^{{{}}}", fmt_rational(&Rational::new(s as i64, t as i64))),
                lower,
                upper,
                b,
                admissible,
                excluded,
                float_sensitive: float_sensitive(a, t),
                ..base
            }
        }
        Variant::Classical => {
            let fl = Rational::from_integer(a.floor() as i64);
            let lower = fl + 1;
            let upper = fl + 2;
            WindowPrediction {
                invariant: format!("gamma^{{{}}}", fmt_rational(&Rational::new(s as i64, t as i64))),
                lower,
                upper,
                b: b_from_a(a, 1),
                admissible: grid_between(lower, upper, 1),
                float_sensitive: float_sensitive(a, 1),
                ..base
            }
        }
        Variant::Roman | Variant::Differential => {
            let twice = floor_t(a, 2) * 2;
            let values: Vec<Rational> = if variant == Variant::Roman {
                (1..=3).map(|i| twice + i).collect()
            } else {
                (1..=3).rev().map(|i| Rational::from_integer(n as i64) - twice - i).collect()
            };
            WindowPrediction {
                invariant: if variant == Variant::Roman { "gamma_R" } else { "differential" }.into(),
                lower: values[0],
                upper: values[2],
                b: b_from_a(a, 2),
                admissible: values,
                float_sensitive: float_sensitive(a, 2),
                ..base
            }
        }
    })
}

/// Counting query for `X_{m1,m2}`, the number of self dominating pairs
/// `(S1, S2)` with `|S1| = m1`, `|S2| = m2` in G(n,p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentQuery {
    pub n: u64,
    pub p: f64,
    pub m1: u64,
    pub m2: u64,
}

impl MomentQuery {
    pub fn new(n: u64, p: f64, m1: u64, m2: u64) -> Result<Self> {
        check_p(p)?;
        if n < 2 {
            return Err(Error::param(format!("moment queries need n >= 2, got {n}")));
        }
        if m1 + m2 > n {
            return Err(Error::param(format!("m1 + m2 = {} exceeds n = {n}", m1 + m2)));
        }
        Ok(MomentQuery { n, p, m1, m2 })
    }
}

/// Exact multinomial `n! / ((n-m1-m2)! m1! m2!)` as a float for `n <= 170`.
fn multinomial_exact(n: u64, m1: u64, m2: u64) -> f64 {
    use num_bigint::BigUint;
    let binom = |n: u64, k: u64| -> BigUint {
        let k = k.min(n - k);
        (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
    };
    (binom(n, m1) * binom(n - m1, m2)).to_f64().unwrap_or(f64::INFINITY)
}

fn ln_multinomial(n: u64, m1: u64, m2: u64) -> f64 {
    use statrs::function::factorial::ln_factorial;
    ln_factorial(n) - ln_factorial(n - m1 - m2) - ln_factorial(m1) - ln_factorial(m2)
}

/// `E(X_{m1,m2}) = n!/((n-m1-m2)! m1! m2!) · (1 - (1-p)^{m1})^{n-m1-m2}`,
/// with `0^0 = 1`.
pub fn expected_count(q: &MomentQuery) -> f64 {
    let rest = q.n - q.m1 - q.m2;
    let hit = 1.0 - (1.0 - q.p).powi(q.m1 as i32);
    if q.m1 == 0 {
        // hit = 0: only the labeling that gives every vertex C survives.
        return if rest == 0 { 1.0 } else { 0.0 };
    }
    if q.n <= 170 {
        multinomial_exact(q.n, q.m1, q.m2) * hit.powi(rest as i32)
    } else {
        (ln_multinomial(q.n, q.m1, q.m2) + rest as f64 * hit.ln()).exp()
    }
}

/// Realized value of `X_{m1,m2}` on one graph: the number of disjoint
/// `(S1, S2)` with `|S1| = m1`, `|S2| = m2` such that every vertex outside
/// both sets has a neighbor in `S1`. Limited to 24 vertices.
pub fn count_self_dominating_pairs(g: &Graph, m1: usize, m2: usize) -> Result<u64> {
    let n = g.order();
    crate::solver::guard("pair counting", n, 24)?;
    if m1 + m2 > n {
        return Ok(0);
    }
    let closed: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    let binom = |a: u64, b: u64| -> u64 {
        if b > a {
            return 0;
        }
        (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
    };
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut total = 0;
    for s1 in 0..=full {
        if s1.count_ones() as usize != m1 {
            continue;
        }
        let covered = (0..n).filter(|&v| s1 >> v & 1 == 1).fold(0u32, |m, v| m | closed[v]);
        let uncovered = (full & !s1 & !covered).count_ones() as u64;
        let free = (n - m1) as u64 - uncovered;
        if m2 as u64 >= uncovered {
            total += binom(free, m2 as u64 - uncovered);
        }
    }
    Ok(total)
}

/// `M(a) = {(m1, m2) : m1 + m2/t = a}` over non-negative integers, ascending `m1`.
pub fn weight_partitions(a: Rational, t: u32) -> Vec<(u64, u64)> {
    assert!(t >= 1, "weight_partitions needs t >= 1");
    let scaled = a * t as i64;
    if !scaled.is_integer() || scaled < Rational::from_integer(0) {
        return Vec::new();
    }
    let k = scaled.to_integer() as u64;
    let t = t as u64;
    (0..=k / t).map(|m1| (m1, k - m1 * t)).collect()
}

/// `E(X_a) = Σ_{(m1,m2) ∈ M(a)} E(X_{m1,m2})`; pairs with `m1 + m2 > n` add 0.
pub fn expected_count_at_weight(n: u64, p: f64, a: Rational, t: u32) -> Result<f64> {
    check_t(t)?;
    let mut total = 0.0;
    for (m1, m2) in weight_partitions(a, t) {
        if m1 + m2 <= n {
            total += expected_count(&MomentQuery::new(n, p, m1, m2)?);
        }
    }
    Ok(total)
}

/// Smallest positive `h` with `(1/(1-p))^h > t`.
pub fn h0(p: f64, t: u32) -> Result<u64> {
    check_p(p)?;
    check_t(t)?;
    let q = 1.0 / (1.0 - p);
    let mut h = 1u64;
    let mut pow = q;
    while pow <= t as f64 {
        h += 1;
        pow *= q;
    }
    Ok(h)
}

fn check_first_regime(n: u64, p: f64, t: u32, m1: u64, m2: u64) -> Result<f64> {
    check_t(t)?;
    let a = a_p(n, p)?;
    let w = m1 as f64 + m2 as f64 / t as f64;
    if m1 + m2 == 0 {
        return Err(Error::param("bounds need m1 + m2 >= 1"));
    }
    if !(a - 1.0 < w && w <= a) {
        return Err(Error::param(format!(
            "m1 + m2/t = {w} lies outside (a_p(n) - 1, a_p(n)] = ({}, {a}]",
            a - 1.0
        )));
    }
    Ok(a)
}

/// `exp[(m1+m2)(ln n + 2) - L(n) ln n / (1-p)^{a_p(n) - m1}]`, an upper bound
/// on `E(X_{m1,m2})` when `a_p(n) - 1 < m1 + m2/t <= a_p(n)`.
pub fn bound_first(n: u64, p: f64, t: u32, m1: u64, m2: u64) -> Result<f64> {
    let a = check_first_regime(n, p, t, m1, m2)?;
    let nf = n as f64;
    let ln_n = nf.ln();
    let exponent = (m1 + m2) as f64 * (ln_n + 2.0)
        - log_base(p, nf) * ln_n / (1.0 - p).powf(a - m1 as f64);
    Ok(exponent.exp())
}

/// `exp[t(2 L(n) - L(L(n) ln n) ln n)]`, which additionally needs
/// `m1 <= a_p(n) - h0`. The value does not depend on `(m1, m2)`.
pub fn bound_second(n: u64, p: f64, t: u32, m1: u64, m2: u64) -> Result<f64> {
    let a = check_first_regime(n, p, t, m1, m2)?;
    let h = h0(p, t)?;
    if m1 as f64 > a - h as f64 {
        return Err(Error::param(format!(
            "m1 = {m1} exceeds a_p(n) - h0 = {}",
            a - h as f64
        )));
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let l = log_base(p, nf);
    Ok((t as f64 * (2.0 * l - log_base(p, l * ln_n) * ln_n)).exp())
}

/// Every `(m1, m2)` with `m1 + m2 >= 1` and `a_p(n) - 1 < m1 + m2/t <= a_p(n)`.
pub fn first_bound_regime(n: u64, p: f64, t: u32) -> Result<Vec<(u64, u64)>> {
    check_t(t)?;
    let a = a_p(n, p)?;
    let mut out = Vec::new();
    if a <= 0.0 {
        return Ok(out);
    }
    let tf = t as f64;
    for m1 in 0..=a.floor() as u64 {
        for m2 in 0..=((a - m1 as f64) * tf).floor() as u64 {
            let w = m1 as f64 + m2 as f64 / tf;
            if m1 + m2 >= 1 && a - 1.0 < w && w <= a && m1 + m2 <= n {
                out.push((m1, m2));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn log_base_examples() {
        assert_relative_eq!(log_base(0.5, 8.0), 3.0, epsilon = 1e-12);
        assert_eq!(log_base(0.5, 1.0), 0.0);
        assert_relative_eq!(log_base(0.75, 16.0), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn a_p_matches_high_precision_values() {
        // 50-digit evaluations of log_{1/(1-p)}(n / (log_{1/(1-p)} n · ln n)).
        let cases = [
            (16, 0.5, 0.528_766_372_944_897_6),
            (100, 0.5, 1.708_580_871_430_383_6),
            (30, 0.5, 0.846_038_757_892_186_5),
            (60, 0.5, 1.310_859_185_849_276_4),
            (200, 0.5, 2.304_021_290_822_142),
            (1000, 0.3, 5.639_687_934_840_787),
        ];
        for (n, p, want) in cases {
            assert_relative_eq!(a_p(n, p).unwrap(), want, epsilon = 1e-12);
        }
        assert!(a_p(1, 0.5).is_err());
        assert!(a_p(10, 1.0).is_err());
    }

    #[test]
    fn floor_t_examples() {
        assert_eq!(floor_t(2.7, 2), q(5, 2));
        assert_eq!(floor_t(2.0, 3), q(2, 1));
        assert_eq!(floor_t(-0.3, 4), q(-1, 2));
        assert_eq!(floor_t(-0.3, 1), q(-1, 1));
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_from_a(2.3, 2), 3);
        assert_eq!(b_from_a(2.6, 2), 4);
        let a = a_p(100, 0.5).unwrap();
        assert_eq!((a + 1.0 / 6.0).ceil() as i64, 2);
        assert_eq!(b_pt(100, 0.5, 3).unwrap(), 3);
        assert!(b_pt(100, 0.5, 0).is_err());
    }

    #[test]
    fn main_window_at_100() {
        let w = predict_window(100, 0.5, 2, 3, Variant::Main).unwrap();
        assert_eq!(w.lower, q(2, 1));
        assert_eq!(w.b, 3);
        assert_eq!(w.upper, q(3, 1));
        assert_eq!(w.excluded, vec![q(7, 3)]);
        assert_eq!(w.admissible, vec![q(2, 1), q(8, 3), q(3, 1)]);
        assert!(!w.float_sensitive);
        assert_eq!(w.p_bits, "0x3fe0000000000000");
    }

    #[test]
    fn roman_and_differential_at_100() {
        let r = predict_window(100, 0.5, 0, 0, Variant::Roman).unwrap();
        assert_eq!(r.admissible, vec![q(4, 1), q(5, 1), q(6, 1)]);
        let d = predict_window(100, 0.5, 0, 0, Variant::Differential).unwrap();
        assert_eq!(d.admissible, vec![q(94, 1), q(95, 1), q(96, 1)]);
        assert_eq!((d.lower, d.upper), (q(94, 1), q(96, 1)));
    }

    #[test]
    fn weak_and_classical_windows() {
        // a_p(60) ≈ 1.3109: ⌊a⌋_3 = 1, lower 4/3, b = 2.
        let w = predict_window(60, 0.5, 1, 3, Variant::Weak).unwrap();
        assert_eq!(w.admissible, vec![q(4, 3), q(5, 3), q(2, 1)]);
        assert!(w.excluded.is_empty());
        let m = predict_window(60, 0.5, 2, 3, Variant::Main).unwrap();
        assert_eq!(m.excluded, vec![q(4, 3)]);
        assert_eq!(m.admissible, vec![q(5, 3), q(2, 1)]);
        let c = predict_window(60, 0.5, 1, 1, Variant::Classical).unwrap();
        assert_eq!(c.admissible, vec![q(2, 1), q(3, 1)]);
        assert!(c.contains(q(5, 2)));
    }

    #[test]
    fn excluded_values_below_lower_are_dropped() {
        // a_p(200) ≈ 2.304, s/t = 4/5: lower = 12/5 and b = 3, so the
        // candidate 3 - 4/5 = 11/5 falls below the window and is clipped.
        let w = predict_window(200, 0.5, 4, 5, Variant::Main).unwrap();
        assert_eq!(w.lower, q(12, 5));
        assert_eq!(w.upper, q(3, 1));
        assert_eq!(w.excluded, vec![q(12, 5), q(13, 5)]);
        assert_eq!(w.admissible, vec![q(14, 5), q(3, 1)]);
        for v in &w.excluded {
            assert!(*v >= w.lower && *v <= w.upper);
        }
    }

    #[test]
    fn regime_violations() {
        assert!(predict_window(100, 0.5, 3, 3, Variant::Main).is_err());
        assert!(predict_window(100, 0.5, 1, 3, Variant::Main).is_err());
        assert!(predict_window(100, 0.5, 0, 3, Variant::Weak).is_err());
        assert!(predict_window(100, 0.5, 1, 2, Variant::Classical).is_err());
        assert!(predict_window(1, 0.5, 2, 3, Variant::Main).is_err());
        assert!("sideways".parse::<Variant>().is_err());
    }

    #[test]
    fn expected_count_examples() {
        let e = expected_count(&MomentQuery::new(5, 0.5, 1, 1).unwrap());
        assert_relative_eq!(e, 2.5, epsilon = 1e-12);
        assert_eq!(expected_count(&MomentQuery::new(7, 0.3, 0, 7).unwrap()), 1.0);
        assert_eq!(expected_count(&MomentQuery::new(7, 0.3, 0, 4).unwrap()), 0.0);
        assert!(MomentQuery::new(5, 0.5, 3, 3).is_err());
    }

    #[test]
    fn expected_count_log_space_agrees_near_the_switch() {
        // Same query through the exact path at 170 and log-space path at 171
        // should differ only by the ratio of the two formulas.
        let exact = expected_count(&MomentQuery::new(170, 0.5, 3, 2).unwrap());
        let via_logs = (ln_multinomial(170, 3, 2) + 165.0 * (1.0f64 - 0.125).ln()).exp();
        assert_relative_eq!(exact, via_logs, max_relative = 1e-9);
        let big = expected_count(&MomentQuery::new(1000, 0.5, 4, 3).unwrap());
        assert!(big.is_finite() && big > 0.0);
    }

    #[test]
    fn partitions() {
        assert_eq!(weight_partitions(q(1, 1), 2), vec![(0, 2), (1, 0)]);
        assert_eq!(weight_partitions(q(1, 2), 2), vec![(0, 1)]);
        assert!(weight_partitions(q(1, 3), 2).is_empty());
        assert!(weight_partitions(q(-1, 1), 2).is_empty());
    }

    #[test]
    fn expected_count_at_weight_examples() {
        assert_relative_eq!(
            expected_count_at_weight(5, 0.5, q(1, 1), 2).unwrap(),
            0.3125,
            epsilon = 1e-12
        );
        assert_eq!(expected_count_at_weight(5, 0.5, q(1, 3), 2).unwrap(), 0.0);
        // a = n with t = 2 leaves only the all-ONE pair (4, 0).
        assert_eq!(expected_count_at_weight(4, 0.5, q(4, 1), 2).unwrap(), 1.0);
        // With t = 1 every split of a = n fills all vertices: Σ C(n, m1) = 2^n.
        assert_relative_eq!(expected_count_at_weight(5, 0.5, q(5, 1), 1).unwrap(), 32.0);
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0(0.5, 3).unwrap(), 2);
        assert_eq!(h0(0.5, 1).unwrap(), 1);
        assert_eq!(h0(0.9, 8).unwrap(), 1);
        assert_eq!(h0(0.5, 4).unwrap(), 3);
    }

    #[test]
    fn bounds_and_regimes() {
        for n in [50u64, 100, 200] {
            let regime = first_bound_regime(n, 0.5, 3).unwrap();
            assert!(!regime.is_empty());
            for &(m1, m2) in &regime {
                let e = expected_count(&MomentQuery::new(n, 0.5, m1, m2).unwrap());
                assert!(e < bound_first(n, 0.5, 3, m1, m2).unwrap());
            }
        }
        // Outside (a - 1, a]: a_p(100) ≈ 1.709.
        assert!(bound_first(100, 0.5, 3, 2, 0).is_err());
        assert!(bound_first(100, 0.5, 3, 0, 0).is_err());
        assert!(bound_first(100, 0.5, 3, 0, 2).is_err());
        // h0(0.5, 3) = 2 and a_p(200) ≈ 2.30, so only m1 = 0 qualifies.
        let seconds: Vec<f64> = first_bound_regime(200, 0.5, 3)
            .unwrap()
            .into_iter()
            .filter_map(|(m1, m2)| bound_second(200, 0.5, 3, m1, m2).ok())
            .collect();
        assert!(!seconds.is_empty());
        assert!(seconds.windows(2).all(|w| w[0] == w[1]));
        assert!(bound_second(200, 0.5, 3, 1, 4).is_err());
    }

    #[test]
    fn expected_count_is_the_exact_average_over_all_graphs() {
        // Sum X_{m1,m2}(G) P(G) over all 64 labeled graphs on four vertices.
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        for p in [0.3f64, 0.5] {
            for m1 in 0..=4usize {
                for m2 in 0..=4 - m1 {
                    let mut mean = 0.0;
                    for mask in 0u32..64 {
                        let edges: Vec<_> =
                            pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| *e).collect();
                        let e = edges.len() as i32;
                        let g = Graph::from_edges(4, edges).unwrap();
                        let prob = p.powi(e) * (1.0 - p).powi(6 - e);
                        mean += prob * count_self_dominating_pairs(&g, m1, m2).unwrap() as f64;
                    }
                    let q = MomentQuery::new(4, p, m1 as u64, m2 as u64).unwrap();
                    assert_relative_eq!(expected_count(&q), mean, epsilon = 1e-12, max_relative = 1e-12);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn floor_t_with_unit_denominator_is_floor(a in -1e6f64..1e6) {
            prop_assert_eq!(floor_t(a, 1), Rational::from_integer(a.floor() as i64));
        }

        #[test]
        fn floor_t_brackets_its_argument(a in -1e4f64..1e4, t in 1u32..12) {
            prop_assume!(!float_sensitive(a, t));
            let f = floor_t(a, t).to_f64().unwrap();
            prop_assert!(f <= a && a < f + 1.0 / t as f64);
        }

        #[test]
        fn lower_endpoint_exceeds_a(n in 2u64..1_000_000, p in 0.05f64..0.95, t in 1u32..8) {
            let a = a_p(n, p).unwrap();
            prop_assume!(!float_sensitive(a, t));
            let lower = floor_t(a, t) + Rational::new(1, t as i64);
            prop_assert!(lower.to_f64().unwrap() > a);
        }
    }
}
