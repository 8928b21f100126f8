//! Report aggregation and text formatting.

use qsdc_core::stats::mean_std;
use qsdc_core::{RunReport, Verdict};
use serde::Serialize;

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-4, 1e12)`.
pub fn fmt_g12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_g12).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
    pub count: usize,
}

impl Summary {
    fn of(xs: &[f64]) -> Option<Self> {
        mean_std(xs).map(|(mean, std)| Summary {
            mean,
            std,
            count: xs.len(),
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub accept: usize,
    pub abort_first_check: usize,
    pub abort_second_check: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub trial: u64,
    #[serde(flatten)]
    pub report: RunReport,
}

/// Aggregate of `trials` independent runs, written by `qsdc run`.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub base_seed: u64,
    pub trials: usize,
    pub attack: String,
    pub accept_fraction: f64,
    pub verdicts: VerdictCounts,
    pub first_check_error_rate: Summary,
    pub second_check_error_rate: Option<Summary>,
    pub eve_harvest_accuracy: Option<Summary>,
    pub min_delay_s: f64,
    pub runs: Vec<TrialReport>,
}

impl RunSummary {
    /// `runs` must be ordered by trial index and non-empty.
    pub fn new(base_seed: u64, runs: Vec<TrialReport>) -> Self {
        let reports: Vec<&RunReport> = runs.iter().map(|t| &t.report).collect();
        let mut verdicts = VerdictCounts::default();
        for r in &reports {
            match r.verdict {
                Verdict::Accept => verdicts.accept += 1,
                Verdict::AbortFirstCheck => verdicts.abort_first_check += 1,
                Verdict::AbortSecondCheck => verdicts.abort_second_check += 1,
            }
        }
        let collect = |f: fn(&RunReport) -> Option<f64>| -> Vec<f64> {
            reports.iter().filter_map(|r| f(r)).collect()
        };
        let first = collect(|r| Some(r.first_check_error_rate));
        RunSummary {
            base_seed,
            trials: runs.len(),
            attack: reports[0].attack.clone(),
            accept_fraction: verdicts.accept as f64 / runs.len() as f64,
            verdicts,
            first_check_error_rate: Summary::of(&first).expect("at least one trial"),
            second_check_error_rate: Summary::of(&collect(|r| r.second_check_error_rate)),
            eve_harvest_accuracy: Summary::of(&collect(|r| r.eve_harvest_accuracy)),
            min_delay_s: reports[0].min_delay_s,
            runs,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "trial,seed,attack,verdict,first_check_pairs,first_check_error_rate,\
             second_check_pairs,second_check_error_rate,eve_harvest_accuracy,\
             message_pairs,pairs_lost,min_delay_s\n",
        );
        for t in &self.runs {
            let r = &t.report;
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                t.trial,
                r.seed,
                r.attack,
                verdict_name(r.verdict),
                r.first_check_pairs,
                fmt_g12(r.first_check_error_rate),
                r.second_check_pairs,
                fmt_opt(r.second_check_error_rate),
                fmt_opt(r.eve_harvest_accuracy),
                r.message_pairs,
                r.pairs_lost,
                fmt_g12(r.min_delay_s),
            ));
        }
        out
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Accept => "accept",
        Verdict::AbortFirstCheck => "abort_first_check",
        Verdict::AbortSecondCheck => "abort_second_check",
    }
}

/// One attack-table row.
#[derive(Debug, Clone, Serialize)]
pub struct AttackRow {
    pub attack: String,
    pub trials: usize,
    pub first_check_error_rate: f64,
    pub second_check_error_rate: Option<f64>,
    pub detection_probability: f64,
    pub eve_harvest_accuracy: Option<f64>,
}

impl AttackRow {
    pub fn from_summary(s: &RunSummary) -> Self {
        AttackRow {
            attack: s.attack.clone(),
            trials: s.trials,
            first_check_error_rate: s.first_check_error_rate.mean,
            second_check_error_rate: s.second_check_error_rate.map(|x| x.mean),
            detection_probability: 1.0 - s.accept_fraction,
            eve_harvest_accuracy: s.eve_harvest_accuracy.map(|x| x.mean),
        }
    }
}

pub fn attack_table_csv(rows: &[AttackRow]) -> String {
    let na = |x: Option<f64>| x.map(fmt_g12).unwrap_or_else(|| "n/a".into());
    let mut out = String::from(
        "attack,trials,first_check_error_rate,second_check_error_rate,\
         detection_probability,eve_harvest_accuracy\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.attack,
            r.trials,
            fmt_g12(r.first_check_error_rate),
            na(r.second_check_error_rate),
            fmt_g12(r.detection_probability),
            na(r.eve_harvest_accuracy),
        ));
    }
    out
}

pub const SWEEP_HEADER: &str = "eps,p0,p1,p2,p3,lambda0,lambda1,lambda2,lambda3,I0_bits";

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub eps: f64,
    pub p: [f64; 4],
    pub lambda: [f64; 4],
    pub i0_bits: f64,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in rows {
        let cells: Vec<String> = std::iter::once(r.eps)
            .chain(r.p)
            .chain(r.lambda)
            .chain([r.i0_bits])
            .map(fmt_g12)
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
