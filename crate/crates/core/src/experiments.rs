//! Monte Carlo concentration experiments on G(n,p).
//!
//! Each trial samples a graph from its own derived seed, solves the variant's
//! invariant exactly and classifies the value against the predicted window.
//! Records depend only on the configuration, never on scheduling.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::asymptotics::{predict_window, Variant, WindowPrediction};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::generate_gnp;
use crate::rng::{derive_seed, Seed};
use crate::sdf::{fmt_rational, CParam, Rational, Weight};
use crate::solver::{guard, solve_structural_with, SolverConfig};

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: f64,
    pub s: u32,
    pub t: u32,
    pub variant: Variant,
    pub trials: u64,
    pub master_seed: Seed,
    pub solver: SolverConfig,
    /// Per-trial wall-clock budget; exceeded trials become timeout rows.
    pub time_budget: Option<Duration>,
    /// Write measured solve times into records. Off by default so that
    /// output is reproducible byte for byte.
    pub record_timing: bool,
    pub execution: Execution,
}

impl ExperimentConfig {
    pub fn new(n: usize, p: f64, s: u32, t: u32, variant: Variant) -> Self {
        ExperimentConfig {
            n,
            p,
            s,
            t,
            variant,
            trials: 200,
            master_seed: Seed(0),
            solver: SolverConfig::default(),
            time_budget: None,
            record_timing: false,
            execution: Execution::default(),
        }
    }

    /// Window the trials are classified against.
    pub fn prediction(&self) -> Result<WindowPrediction> {
        predict_window(self.n as u64, self.p, self.s, self.t, self.variant)
    }

    /// Parameter that is solved for in each trial.
    pub fn c_param(&self) -> Result<CParam> {
        match self.variant {
            Variant::Main | Variant::Weak | Variant::Classical => CParam::ratio(self.s, self.t),
            Variant::Roman | Variant::Differential => CParam::ratio(1, 2),
        }
    }

    fn validate(&self) -> Result<WindowPrediction> {
        let prediction = self.prediction()?;
        guard("structural solver", self.n, self.solver.structural_max_n)?;
        Ok(prediction)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    InWindow,
    HitExcluded,
    BelowLower,
    AboveUpper,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub seed: Seed,
    /// Value of the variant's invariant; absent for timeouts.
    pub gamma: Option<Rational>,
    pub outcome: Outcome,
    pub nodes: u64,
    pub millis: u64,
}

impl TrialRecord {
    pub fn in_window(&self) -> bool {
        self.outcome == Outcome::InWindow
    }

    pub fn hit_excluded(&self) -> bool {
        self.outcome == Outcome::HitExcluded
    }

    pub fn below_lower(&self) -> bool {
        self.outcome == Outcome::BelowLower
    }

    pub fn above_b(&self) -> bool {
        self.outcome == Outcome::AboveUpper
    }
}

pub fn classify(value: Rational, w: &WindowPrediction) -> Outcome {
    if value < w.lower {
        Outcome::BelowLower
    } else if value > w.upper {
        Outcome::AboveUpper
    } else if w.excluded.contains(&value) {
        Outcome::HitExcluded
    } else {
        Outcome::InWindow
    }
}

/// Run every trial of `cfg`, ordered by trial index.
///
/// Configuration problems, including a graph order beyond the solver guard,
/// are reported before any trial runs.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    let prediction = cfg.validate()?;
    let c = cfg.c_param()?;
    let results = cfg
        .execution
        .map_indexed(cfg.trials as usize, |k| run_one(cfg, c, &prediction, k as u64));
    results.into_iter().collect()
}

fn run_one(cfg: &ExperimentConfig, c: CParam, w: &WindowPrediction, k: u64) -> Result<TrialRecord> {
    let seed = derive_seed(cfg.master_seed, k);
    let g = generate_gnp(cfg.n, cfg.p, seed)?;
    let mut solver = cfg.solver.clone();
    let start = Instant::now();
    if let Some(budget) = cfg.time_budget {
        solver.deadline = Some(start + budget);
    }
    let solved = solve_structural_with(&g, c, &solver);
    let millis = if cfg.record_timing { start.elapsed().as_millis() as u64 } else { 0 };
    let r = match solved {
        Ok(r) => r,
        Err(Error::Timeout) => {
            return Ok(TrialRecord {
                trial_index: k,
                seed,
                gamma: None,
                outcome: Outcome::Timeout,
                nodes: 0,
                millis,
            })
        }
        Err(e) => return Err(e),
    };
    let Weight::Finite(gamma_c) = r.optimum else {
        return Err(Error::contract("finite c produced an infinite optimum"));
    };
    debug_assert!(c.denominator() as i64 % gamma_c.denom() == 0);
    let value = match cfg.variant {
        Variant::Roman => gamma_c * 2,
        Variant::Differential => Rational::from_integer(cfg.n as i64) - gamma_c * 2,
        _ => gamma_c,
    };
    Ok(TrialRecord {
        trial_index: k,
        seed,
        gamma: Some(value),
        outcome: classify(value, w),
        nodes: r.nodes_explored,
        millis,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub trials: u64,
    /// Trials that finished within budget; the rates are over these.
    pub classified: u64,
    pub timeouts: u64,
    pub hit_rate: Option<f64>,
    pub excluded_rate: Option<f64>,
    pub below_rate: Option<f64>,
    pub above_rate: Option<f64>,
    #[serde(serialize_with = "serialize_histogram")]
    pub histogram: BTreeMap<Rational, u64>,
    pub prediction: WindowPrediction,
}

fn serialize_histogram<S: Serializer>(h: &BTreeMap<Rational, u64>, ser: S) -> Result<S::Ok, S::Error> {
    let mut map = ser.serialize_map(Some(h.len()))?;
    for (k, v) in h {
        map.serialize_entry(&fmt_rational(k), v)?;
    }
    map.end()
}

impl Summary {
    /// Summary of zero trials: every rate is absent.
    pub fn empty(prediction: &WindowPrediction) -> Self {
        Summary {
            trials: 0,
            classified: 0,
            timeouts: 0,
            hit_rate: None,
            excluded_rate: None,
            below_rate: None,
            above_rate: None,
            histogram: BTreeMap::new(),
            prediction: prediction.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

pub fn summarize(records: &[TrialRecord], prediction: &WindowPrediction) -> Result<Summary> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no trial records to summarize"));
    }
    let mut counts: BTreeMap<Outcome, u64> = BTreeMap::new();
    let mut histogram = BTreeMap::new();
    for r in records {
        *counts.entry(r.outcome).or_default() += 1;
        if let Some(g) = r.gamma {
            *histogram.entry(g).or_default() += 1;
        }
    }
    let timeouts = counts.get(&Outcome::Timeout).copied().unwrap_or(0);
    let classified = records.len() as u64 - timeouts;
    let rate = |o: Outcome| {
        (classified > 0).then(|| counts.get(&o).copied().unwrap_or(0) as f64 / classified as f64)
    };
    Ok(Summary {
        trials: records.len() as u64,
        classified,
        timeouts,
        hit_rate: rate(Outcome::InWindow),
        excluded_rate: rate(Outcome::HitExcluded),
        below_rate: rate(Outcome::BelowLower),
        above_rate: rate(Outcome::AboveUpper),
        histogram,
        prediction: prediction.clone(),
    })
}

impl PartialOrd for Outcome {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Outcome {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}

pub const CSV_HEADER: [&str; 14] = [
    "trial_index",
    "seed",
    "n",
    "p",
    "s",
    "t",
    "gamma_num",
    "gamma_den",
    "in_window",
    "hit_excluded",
    "below_lower",
    "above_b",
    "nodes",
    "millis",
];

/// Write records as CSV. Timeout rows leave `gamma_num` and `gamma_den`
/// empty and carry 0 in every flag column.
pub fn write_csv<W: Write>(records: &[TrialRecord], cfg: &ExperimentConfig, out: W) -> Result<()> {
    let (s, t) = match cfg.variant {
        Variant::Roman | Variant::Differential => (1, 2),
        _ => (cfg.s, cfg.t),
    };
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    let flag = |b: bool| if b { "1" } else { "0" };
    for r in records {
        let (num, den) = match r.gamma {
            Some(g) => (g.numer().to_string(), g.denom().to_string()),
            None => (String::new(), String::new()),
        };
        w.write_record([
            r.trial_index.to_string().as_str(),
            &r.seed.0.to_string(),
            &cfg.n.to_string(),
            &cfg.p.to_string(),
            &s.to_string(),
            &t.to_string(),
            &num,
            &den,
            flag(r.in_window()),
            flag(r.hit_excluded()),
            flag(r.below_lower()),
            flag(r.above_b()),
            &r.nodes.to_string(),
            &r.millis.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(records: &[TrialRecord], cfg: &ExperimentConfig) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, cfg, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is ascii"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{domination_number, solve_structural, total_domination_number};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn small(variant: Variant) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(20, 0.5, 2, 3, variant);
        cfg.trials = 12;
        cfg.master_seed = Seed(7);
        cfg
    }

    fn record(gamma: Rational, w: &WindowPrediction) -> TrialRecord {
        TrialRecord {
            trial_index: 0,
            seed: Seed(0),
            gamma: Some(gamma),
            outcome: classify(gamma, w),
            nodes: 0,
            millis: 0,
        }
    }

    #[test]
    fn rejects_bad_configs_before_running() {
        let cfg = ExperimentConfig::new(1, 0.5, 2, 3, Variant::Main);
        assert!(matches!(run_trials(&cfg), Err(Error::InvalidParameter(_))));
        let cfg = ExperimentConfig::new(200, 0.5, 2, 3, Variant::Main);
        assert!(matches!(run_trials(&cfg), Err(Error::Guard { .. })));
        let cfg = ExperimentConfig::new(20, 0.5, 3, 3, Variant::Main);
        assert!(run_trials(&cfg).is_err());
    }

    #[test]
    fn zero_trials_give_no_records_and_absent_rates() {
        let mut cfg = small(Variant::Main);
        cfg.trials = 0;
        assert!(run_trials(&cfg).unwrap().is_empty());
        let w = cfg.prediction().unwrap();
        assert!(summarize(&[], &w).is_err());
        let s = Summary::empty(&w);
        assert_eq!(s.hit_rate, None);
        assert!(s.to_json().contains("\"hit_rate\": null"));
    }

    #[test]
    fn records_do_not_depend_on_execution() {
        let mut cfg = small(Variant::Main);
        cfg.execution = Execution::Sequential;
        let a = run_trials(&cfg).unwrap();
        cfg.execution = Execution::Parallel;
        let b = run_trials(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(csv_string(&a, &cfg).unwrap(), csv_string(&b, &cfg).unwrap());
        for (k, r) in a.iter().enumerate() {
            assert_eq!(r.trial_index, k as u64);
            assert_eq!(r.seed, derive_seed(cfg.master_seed, k as u64));
        }
    }

    #[test]
    fn trials_solve_the_variant_invariant() {
        for variant in [Variant::Main, Variant::Classical, Variant::Roman, Variant::Differential] {
            let mut cfg = small(variant);
            if variant == Variant::Classical {
                cfg.s = 1;
                cfg.t = 1;
            }
            let records = run_trials(&cfg).unwrap();
            for r in &records {
                let g = generate_gnp(cfg.n, cfg.p, r.seed).unwrap();
                let gamma_half = solve_structural(&g, CParam::ratio(1, 2).unwrap()).unwrap();
                let gamma_half = gamma_half.optimum.finite().unwrap();
                let expected = match variant {
                    Variant::Main => solve_structural(&g, CParam::ratio(2, 3).unwrap())
                        .unwrap()
                        .optimum
                        .finite()
                        .unwrap(),
                    Variant::Classical => Rational::from_integer(domination_number(&g).unwrap() as i64),
                    Variant::Roman => gamma_half * 2,
                    _ => Rational::from_integer(20) - gamma_half * 2,
                };
                assert_eq!(r.gamma, Some(expected));
            }
        }
    }

    #[test]
    fn values_are_monotone_across_parameters() {
        // γ^{1/t} <= γ^{s/t} <= γ <= γ_t on the same sample.
        for k in 0..10 {
            let g = generate_gnp(18, 0.5, derive_seed(Seed(3), k)).unwrap();
            let v = |c: CParam| solve_structural(&g, c).unwrap().optimum;
            let third = v(CParam::ratio(1, 3).unwrap());
            let two_thirds = v(CParam::ratio(2, 3).unwrap());
            let gamma = Weight::integer(domination_number(&g).unwrap() as i64);
            assert!(third <= two_thirds && two_thirds <= gamma);
            if let Some(gt) = total_domination_number(&g).unwrap() {
                assert!(gamma <= Weight::integer(gt as i64));
            }
        }
    }

    #[test]
    fn classification_covers_every_case() {
        let w = predict_window(100, 0.5, 2, 3, Variant::Main).unwrap();
        assert_eq!(classify(q(5, 3), &w), Outcome::BelowLower);
        assert_eq!(classify(q(2, 1), &w), Outcome::InWindow);
        assert_eq!(classify(q(7, 3), &w), Outcome::HitExcluded);
        assert_eq!(classify(q(3, 1), &w), Outcome::InWindow);
        assert_eq!(classify(q(10, 3), &w), Outcome::AboveUpper);
    }

    #[test]
    fn summary_rates() {
        let w = predict_window(100, 0.5, 2, 3, Variant::Main).unwrap();
        let all_lower: Vec<_> = (0..5).map(|_| record(w.lower, &w)).collect();
        assert_eq!(summarize(&all_lower, &w).unwrap().hit_rate, Some(1.0));

        let mut mixed = vec![
            record(q(7, 3), &w),
            record(q(2, 1), &w),
            record(q(1, 1), &w),
            record(q(4, 1), &w),
            record(q(8, 3), &w),
        ];
        mixed.push(TrialRecord { gamma: None, outcome: Outcome::Timeout, ..mixed[0].clone() });
        let s = summarize(&mixed, &w).unwrap();
        assert_eq!((s.trials, s.classified, s.timeouts), (6, 5, 1));
        assert_eq!(s.excluded_rate, Some(0.2));
        let total: f64 = [s.hit_rate, s.excluded_rate, s.below_rate, s.above_rate]
            .iter()
            .map(|r| r.unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        let keys: Vec<_> = s.histogram.keys().copied().collect();
        assert_eq!(keys, vec![q(1, 1), q(2, 1), q(7, 3), q(8, 3), q(4, 1)]);
        let json = s.to_json();
        let order: Vec<usize> = ["\"1\"", "\"2\"", "\"7/3\"", "\"8/3\"", "\"4\""]
            .iter()
            .map(|k| json.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn csv_layout() {
        let cfg = small(Variant::Main);
        let w = cfg.prediction().unwrap();
        let records = vec![
            record(q(8, 3), &w),
            TrialRecord { trial_index: 1, gamma: None, outcome: Outcome::Timeout, ..record(q(2, 1), &w) },
        ];
        let text = csv_string(&records, &cfg).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert!(lines[1].starts_with("0,0,20,0.5,2,3,8,3,"));
        assert_eq!(lines[2], "1,0,20,0.5,2,3,,,0,0,0,0,0,0");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn timeouts_become_rows() {
        let mut cfg = small(Variant::Main);
        cfg.n = 90;
        cfg.trials = 2;
        cfg.time_budget = Some(Duration::ZERO);
        let records = run_trials(&cfg).unwrap();
        assert!(records.iter().all(|r| r.outcome == Outcome::Timeout && r.gamma.is_none()));
    }
}
