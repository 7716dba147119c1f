//! Reduced property suites for a quick health check of an installed build.

use std::fmt;

use num_traits::ToPrimitive;

use crate::asymptotics::{
    a_p, b_pt, count_self_dominating_pairs, expected_count, float_sensitive, floor_t,
    predict_window, MomentQuery, Variant,
};
use crate::corpus::{catalog, random_graphs};
use crate::exec::Execution;
use crate::graph::{generate_gnp, Graph};
use crate::rng::{derive_seed, Seed, SplitMix64};
use crate::sdf::{is_valid_sdf, pad_to_window, project_to_unit, projected_weight, weight, CParam, Rational, Weight};
use crate::solver::{
    differential_by_subsets, roman_brute, roman_domination_number, solve_brute_with,
    solve_structural_with, SolverConfig,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteVerdict {
    pub name: &'static str,
    pub checks: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SuiteVerdict {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: pass ({} checks)", self.name, self.checks)
        } else {
            write!(
                f,
                "{}: FAIL ({} of {} checks; first: {})",
                self.name,
                self.failures,
                self.checks,
                self.first_failure.as_deref().unwrap_or("?")
            )
        }
    }
}

struct Tally {
    name: &'static str,
    checks: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checks: 0, failures: 0, first: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn merge(&mut self, outcomes: Vec<Vec<(bool, String)>>) {
        for (ok, what) in outcomes.into_iter().flatten() {
            self.check(ok, || what);
        }
    }

    fn finish(self) -> SuiteVerdict {
        SuiteVerdict { name: self.name, checks: self.checks, failures: self.failures, first_failure: self.first }
    }
}

const C_VALUES: [&str; 7] = ["1/3", "1/2", "2/5", "2/3", "1", "3/2", "inf"];

fn corpus() -> Vec<Graph> {
    let mut graphs = catalog(5);
    graphs.extend(random_graphs(150, &[5, 6, 7, 8], &[0.2, 0.5, 0.8], Seed(0x5e1f)));
    graphs
}

fn c_values() -> Vec<CParam> {
    let mut cs: Vec<CParam> = C_VALUES.iter().map(|s| s.parse().expect("fixed c values parse")).collect();
    cs.sort();
    cs
}

/// Validity, padding and projection on a small corpus.
pub fn sdf_suite(cfg: &SolverConfig) -> SuiteVerdict {
    let mut tally = Tally::new("sdf-core");
    let graphs = corpus();
    let outcomes = Execution::default().map_slice(&graphs, |g| {
        let mut out = Vec::new();
        let n = g.order();
        for c in c_values() {
            let Ok(r) = solve_brute_with(g, c, cfg) else { continue };
            let Some(f) = r.witness else { continue };
            out.push((is_valid_sdf(g, &f, c), format!("witness {f} invalid for c={c} on {}", g.render())));
            let Some(opt) = r.optimum.finite() else { continue };
            if matches!(c, CParam::Finite { s, t } if s < t) {
                for a2 in 2..=2 * n as i64 {
                    let a = Rational::new(a2, 2);
                    if opt > a {
                        continue;
                    }
                    let padded = pad_to_window(g, &f, c, a);
                    let ok = padded.as_ref().is_ok_and(|p| {
                        let w = weight(p, c).ok().and_then(|w| w.finite());
                        is_valid_sdf(g, p, c) && w.is_some_and(|w| a - 1 < w && w <= a)
                    });
                    out.push((ok, format!("padding {f} to {a} under c={c} on {}", g.render())));
                }
            }
            if let CParam::Finite { s, t } = c {
                if 2 <= s && s < t {
                    let ok = project_to_unit(g, &f, s, t).is_ok_and(|p| {
                        let unit = CParam::Finite { s: 1, t };
                        is_valid_sdf(g, &p, unit)
                            && weight(&p, unit).ok() == Some(Weight::Finite(projected_weight(&f, s, t)))
                    });
                    out.push((ok, format!("projecting {f} from c={c} on {}", g.render())));
                }
            }
        }
        out
    });
    tally.merge(outcomes);
    tally.finish()
}

/// Oracle equivalence, monotonicity in c, and the Roman and differential
/// identities.
pub fn solver_suite(cfg: &SolverConfig) -> SuiteVerdict {
    let mut tally = Tally::new("solver");
    let graphs = corpus();
    let outcomes = Execution::default().map_slice(&graphs, |g| {
        let mut out = Vec::new();
        let mut previous: Option<Weight> = None;
        for c in c_values() {
            let brute = solve_brute_with(g, c, cfg);
            let structural = solve_structural_with(g, c, cfg);
            let (Ok(b), Ok(s)) = (brute, structural) else {
                out.push((false, format!("solver error for c={c} on {}", g.render())));
                continue;
            };
            out.push((
                b.optimum == s.optimum,
                format!("c={c}: brute {} vs structural {} on {}", b.optimum, s.optimum, g.render()),
            ));
            let witness_ok = match &s.witness {
                Some(w) => is_valid_sdf(g, w, c) && weight(w, c).ok() == Some(s.optimum),
                None => s.optimum == Weight::Infinite,
            };
            out.push((witness_ok, format!("structural witness for c={c} on {}", g.render())));
            if let Some(prev) = previous {
                out.push((prev <= b.optimum, format!("monotonicity at c={c} on {}", g.render())));
            }
            previous = Some(b.optimum);
        }
        if let (Ok(fast), Ok(slow)) = (roman_domination_number(g), roman_brute(g, cfg)) {
            out.push((fast == slow, format!("roman {fast} vs {slow} on {}", g.render())));
            if let Ok(d) = differential_by_subsets(g, cfg) {
                let identity = g.order() as i64 - fast as i64;
                out.push((identity == d, format!("differential {identity} vs {d} on {}", g.render())));
            }
        }
        out
    });
    tally.merge(outcomes);
    tally.finish()
}

/// Floors, window invariants, the bound on `b`, and expected counts
/// against exhaustive averages.
pub fn asymptotics_suite() -> SuiteVerdict {
    let mut tally = Tally::new("asymptotics");
    let mut rng = SplitMix64::new(Seed(0xa5));
    for _ in 0..2000 {
        let a = (rng.next_f64() - 0.5) * 2e4;
        tally.check(floor_t(a, 1) == Rational::from_integer(a.floor() as i64), || format!("floor_t({a}, 1)"));
    }
    for _ in 0..400 {
        let n = (2f64 * (5e5f64).powf(rng.next_f64())).round() as u64;
        for p10 in 1..=9 {
            let p = p10 as f64 / 10.0;
            let Ok(a) = a_p(n, p) else { continue };
            for t in 2..=6u32 {
                if float_sensitive(a, t) || float_sensitive(a + 0.5 / t as f64, 1) {
                    continue;
                }
                let b = b_pt(n, p, t).expect("valid parameters");
                let ceil = (a + 0.5 / t as f64).ceil() as i64;
                tally.check(ceil <= b, || format!("ceil(a + 1/2t) <= b at n={n}, p={p}, t={t}"));
                let cap = floor_t(a, t) + Rational::new(t as i64 + 1, t as i64);
                tally.check(Rational::from_integer(b) <= cap, || format!("b bound at n={n}, p={p}, t={t}"));
                for s in 2..t {
                    let Ok(w) = predict_window(n, p, s, t, Variant::Main) else { continue };
                    let ok = w.lower.to_f64().is_some_and(|l| l > a)
                        && w.excluded.iter().all(|e| w.lower <= *e && *e <= w.upper && !w.admissible.contains(e));
                    tally.check(ok, || format!("window invariants at n={n}, p={p}, s={s}, t={t}"));
                }
            }
        }
    }
    // X_{m1,m2} averaged over sampled G(5, p) against the closed form.
    for p in [0.3, 0.5] {
        let samples: Vec<Graph> =
            (0..4000).map(|k| generate_gnp(5, p, derive_seed(Seed(0xe1), k)).expect("valid")).collect();
        for m1 in 1..=5usize {
            for m2 in 0..=5 - m1 {
                let counts: Vec<f64> = samples
                    .iter()
                    .map(|g| count_self_dominating_pairs(g, m1, m2).expect("small graph") as f64)
                    .collect();
                let mean = counts.iter().sum::<f64>() / counts.len() as f64;
                let var = counts.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (counts.len() - 1) as f64;
                let se = (var / counts.len() as f64).sqrt();
                let q = MomentQuery::new(5, p, m1 as u64, m2 as u64).expect("valid query");
                let e = expected_count(&q);
                tally.check((mean - e).abs() <= 5.0 * se + 1e-9, || {
                    format!("E X_{{{m1},{m2}}} at p={p}: formula {e}, sample mean {mean}")
                });
            }
        }
    }
    tally.finish()
}

/// Every suite, in a fixed order.
pub fn run_all(cfg: &SolverConfig) -> Vec<SuiteVerdict> {
    vec![sdf_suite(cfg), solver_suite(cfg), asymptotics_suite()]
}
