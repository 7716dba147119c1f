//! Self-dominating functions over the label set `{0, 1, c}`.
//!
//! A labeling `f` is a c-SDF of `G` when every vertex either carries a value
//! of at least `c` or has a neighbor whose value is at least 1. Restricting
//! labels to `{0, 1, c}` loses nothing: any real-valued c-SDF can be replaced
//! by one on this set without increasing the weight.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Exact rationals used for weights and window endpoints.
pub type Rational = num_rational::Ratio<i64>;

/// Formats a rational as `"num/den"`, or just `"num"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"a"`, `"a/b"` or a finite decimal such as `"0.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::param(format!("cannot read {text:?} as a rational"));
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let scale = 10i64.pow(frac.len() as u32);
        let frac: i64 = frac.parse().map_err(|_| bad())?;
        let mag = int.abs().checked_mul(scale).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?;
        return Ok(Rational::new(if neg { -mag } else { mag }, scale));
    }
    Ok(Rational::from_integer(text.parse().map_err(|_| bad())?))
}

pub(crate) fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

pub(crate) fn serialize_rationals<S: Serializer>(
    rs: &[Rational],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(fmt_rational))
}

/// The self-domination parameter: a positive rational `s/t` or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CParam {
    /// Stored reduced: `gcd(s, t) = 1`.
    Finite { s: u32, t: u32 },
    Infinity,
}

impl CParam {
    pub fn ratio(s: u32, t: u32) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::param(format!("c = {s}/{t} must be a positive rational")));
        }
        let g = s.gcd(&t);
        Ok(CParam::Finite { s: s / g, t: t / g })
    }

    pub fn one() -> Self {
        CParam::Finite { s: 1, t: 1 }
    }

    pub fn value(&self) -> Option<Rational> {
        match *self {
            CParam::Finite { s, t } => Some(Rational::new(s as i64, t as i64)),
            CParam::Infinity => None,
        }
    }

    /// Denominator of weights under this parameter: `t` for `s/t`, 1 for infinity.
    pub fn denominator(&self) -> u32 {
        match *self {
            CParam::Finite { t, .. } => t,
            CParam::Infinity => 1,
        }
    }

    /// Does a vertex labeled ONE satisfy its own condition (`1 >= c`)?
    pub fn one_is_self_sufficient(&self) -> bool {
        matches!(*self, CParam::Finite { s, t } if s <= t)
    }

    /// Does a C-labeled vertex dominate its neighbors (`c >= 1`)?
    pub fn c_dominates(&self) -> bool {
        matches!(*self, CParam::Finite { s, t } if s >= t)
    }
}

impl PartialOrd for CParam {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CParam {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.value(), other.value()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        }
    }
}

impl fmt::Display for CParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CParam::Finite { s, t: 1 } => write!(f, "{s}"),
            CParam::Finite { s, t } => write!(f, "{s}/{t}"),
            CParam::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for CParam {
    type Err = Error;

    /// Accepts `"s/t"`, a positive integer, or `"inf"`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if matches!(text, "inf" | "infinity" | "∞") {
            return Ok(CParam::Infinity);
        }
        let bad = || Error::param(format!("cannot read c from {text:?}; use s/t or inf"));
        let (s, t) = match text.split_once('/') {
            Some((s, t)) => (s.trim(), t.trim()),
            None => (text, "1"),
        };
        let s: u32 = s.parse().map_err(|_| bad())?;
        let t: u32 = t.parse().map_err(|_| bad())?;
        CParam::ratio(s, t)
    }
}

impl Serialize for CParam {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Zero,
    One,
    C,
}

/// A labeling `V -> {0, 1, c}`, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SdfAssignment(pub Vec<Label>);

impl SdfAssignment {
    pub fn all(n: usize, label: Label) -> Self {
        SdfAssignment(vec![label; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn count(&self, label: Label) -> usize {
        self.0.iter().filter(|&&l| l == label).count()
    }

    /// Builds a labeling from ONE and C vertex masks (bit `i` = vertex `i`).
    pub fn from_masks(n: usize, ones: u128, cs: u128) -> Self {
        SdfAssignment(
            (0..n)
                .map(|i| {
                    if ones >> i & 1 == 1 {
                        Label::One
                    } else if cs >> i & 1 == 1 {
                        Label::C
                    } else {
                        Label::Zero
                    }
                })
                .collect(),
        )
    }
}

impl fmt::Display for SdfAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|l| match l {
                Label::Zero => "0",
                Label::One => "1",
                Label::C => "c",
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for SdfAssignment {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.split_whitespace()
            .map(|tok| match tok {
                "0" => Ok(Label::Zero),
                "1" => Ok(Label::One),
                "c" | "C" => Ok(Label::C),
                other => Err(Error::param(format!("unknown label {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SdfAssignment)
    }
}

/// Weight of a labeling: an exact rational, or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    Finite(Rational),
    Infinite,
}

impl Weight {
    pub fn integer(v: i64) -> Self {
        Weight::Finite(Rational::from_integer(v))
    }

    pub fn finite(&self) -> Option<Rational> {
        match *self {
            Weight::Finite(r) => Some(r),
            Weight::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Weight::Finite(_))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Weight::Finite(a), Weight::Finite(b)) => a.cmp(b),
            (Weight::Finite(_), Weight::Infinite) => Ordering::Less,
            (Weight::Infinite, Weight::Finite(_)) => Ordering::Greater,
            (Weight::Infinite, Weight::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(r) => f.write_str(&fmt_rational(r)),
            Weight::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `#ONE + #C * c` as a reduced rational.
pub fn weight(f: &SdfAssignment, c: CParam) -> Result<Weight> {
    let ones = f.count(Label::One) as i64;
    let cs = f.count(Label::C) as i64;
    match c {
        CParam::Finite { s, t } => Ok(Weight::Finite(
            Rational::from_integer(ones) + Rational::new(cs * s as i64, t as i64),
        )),
        CParam::Infinity if cs == 0 => Ok(Weight::integer(ones)),
        CParam::Infinity => Err(Error::InvalidAssignment(
            "label C carries an infinite value when c = inf".into(),
        )),
    }
}

/// Checks the c-SDF condition at every vertex.
///
/// Returns `false` when the labeling length differs from the graph order,
/// and for any labeling using C under `c = inf`.
pub fn is_valid_sdf(g: &Graph, f: &SdfAssignment, c: CParam) -> bool {
    if f.len() != g.order() {
        return false;
    }
    if c == CParam::Infinity && f.count(Label::C) > 0 {
        return false;
    }
    let self_ok = |l: Label| match l {
        Label::Zero => false,
        Label::One => c.one_is_self_sufficient(),
        Label::C => true,
    };
    let strong = |l: Label| match l {
        Label::Zero => false,
        Label::One => true,
        Label::C => c.c_dominates(),
    };
    (0..g.order()).all(|u| {
        self_ok(f.0[u]) || g.neighbors(u).into_iter().any(|v| strong(f.0[v]))
    })
}

/// Raises a light c-SDF until its weight lands in `(a - 1, a]`.
///
/// While the weight is at most `a - 1`, the lowest-id vertex labeled 0 or C
/// is promoted to ONE. Each promotion adds at most 1, so the result never
/// overshoots `a`. Requires `c < 1`, a valid input of weight at most `a`,
/// and a graph of order at least `a`.
pub fn pad_to_window(g: &Graph, f: &SdfAssignment, c: CParam, a: Rational) -> Result<SdfAssignment> {
    let CParam::Finite { s, t } = c else {
        return Err(Error::contract("padding needs a finite c < 1"));
    };
    if s >= t {
        return Err(Error::contract(format!("padding needs c < 1, got {c}")));
    }
    if !is_valid_sdf(g, f, c) {
        return Err(Error::contract("input labeling is not a valid c-SDF"));
    }
    if Rational::from_integer(g.order() as i64) < a {
        return Err(Error::contract(format!(
            "graph order {} is below the target weight {}",
            g.order(),
            fmt_rational(&a)
        )));
    }
    let mut w = weight(f, c)?.finite().expect("finite c gives finite weight");
    if w > a {
        return Err(Error::contract(format!(
            "input weight {} already exceeds {}",
            fmt_rational(&w),
            fmt_rational(&a)
        )));
    }
    let c_val = Rational::new(s as i64, t as i64);
    let mut out = f.clone();
    while w <= a - Rational::one() {
        let u = out
            .0
            .iter()
            .position(|&l| l != Label::One)
            .expect("weight below n - 1 leaves a non-ONE vertex");
        w += match out.0[u] {
            Label::Zero => Rational::one(),
            _ => Rational::one() - c_val,
        };
        out.0[u] = Label::One;
    }
    debug_assert!(is_valid_sdf(g, &out, c));
    Ok(out)
}

/// Lowers every C label from `s/t` to `1/t`.
///
/// With labels drawn from `{0, 1, c}`, the labels themselves are unchanged;
/// the returned labeling is read under `c = 1/t` and weighs
/// `w(f) - |U|(s - 1)/t` where `U` is the set of C-labeled vertices.
pub fn project_to_unit(g: &Graph, f: &SdfAssignment, s: u32, t: u32) -> Result<SdfAssignment> {
    if !(2 <= s && s < t) {
        return Err(Error::contract(format!(
            "projection needs 2 <= s <= t - 1, got s = {s}, t = {t}"
        )));
    }
    if s.gcd(&t) != 1 {
        return Err(Error::contract(format!("s/t = {s}/{t} is not in lowest terms")));
    }
    let from = CParam::Finite { s, t };
    if !is_valid_sdf(g, f, from) {
        return Err(Error::contract(format!("input labeling is not a valid {from}-SDF")));
    }
    let out = f.clone();
    debug_assert!(is_valid_sdf(g, &out, CParam::Finite { s: 1, t }));
    Ok(out)
}

/// `w(f) - |U|(s - 1)/t`, the weight the projection must produce.
pub fn projected_weight(f: &SdfAssignment, s: u32, t: u32) -> Rational {
    let ones = f.count(Label::One) as i64;
    let cs = f.count(Label::C) as i64;
    let before = Rational::from_integer(ones) + Rational::new(cs * s as i64, t as i64);
    before - Rational::new(cs * (s as i64 - 1), t as i64)
}
