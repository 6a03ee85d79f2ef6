//! One function per subcommand. Each returns the text for stdout plus an
//! optional note for stderr, so output is identical for identical input.

use core_fibres::ehrhart::{
    exact_length_quasipoly, fibre_quasipolynomial, relative_volume, verify_quasipoly,
    volume_report,
};
use core_fibres::fibre::{count, count_brute, divisor_quasipoly};
use core_fibres::multiset::multichoose;
use core_fibres::partition::enumerate_cores;
use core_fibres::{FibreProblem, Partition, Quasipolynomial, TransportationSpec};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::format::{FibreProblemJson, QuasipolynomialJson};
use crate::CliError;

/// What a command prints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub note: Option<String>,
}

impl Output {
    fn text(s: impl Into<String>) -> Self {
        let mut stdout = s.into();
        if !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        Output { stdout, note: None }
    }

    fn json(v: &impl Serialize) -> Result<Self, CliError> {
        Ok(Output::text(serde_json::to_string_pretty(v)?))
    }

    fn with_note(mut self, note: Option<String>) -> Self {
        self.note = note;
        self
    }
}

/// Shared settings.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub json: bool,
    /// Largest number of multisets a listing may visit.
    pub cap: u128,
}

const MISMATCH: &str = "d-core mismatch";

fn mismatch_note(p: &FibreProblem) -> Option<String> {
    (!p.is_compatible()).then(|| {
        format!(
            "note: the {}-cores of {} and {} differ, so every fibre is empty",
            p.d(),
            p.sigma(),
            p.tau()
        )
    })
}

pub fn core(lambda: &Partition, t: usize, cfg: Settings) -> Result<Output, CliError> {
    if t == 0 {
        return Err(CliError::Usage("t must be positive".into()));
    }
    let c = lambda.core(t);
    if cfg.json {
        Output::json(&json!({"partition": lambda.to_string(), "t": t, "core": c.to_string()}))
    } else {
        Ok(Output::text(c.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// List every m-core and compute its s- and t-cores.
    Brute,
    /// Count contingency tables; exact for every k.
    Symbolic,
    /// Symbolic, cross-checked by listing when the listing is within the cap.
    Auto,
}

pub fn count_fibre(p: &FibreProblem, k: usize, method: Method, cfg: Settings) -> Result<Output, CliError> {
    let n: BigUint = match method {
        Method::Brute => count_brute(p, k, cfg.cap)?,
        Method::Symbolic => count(p, k, cfg.cap)?,
        Method::Auto => {
            let fast = count(p, k, cfg.cap)?;
            if multichoose(p.m() as u64, k as u64) <= BigUint::from(cfg.cap) {
                let slow = count_brute(p, k, cfg.cap)?;
                if slow != fast {
                    return Err(CliError::Compute(format!(
                        "engines disagree at k = {k}: listing {slow}, tables {fast}"
                    )));
                }
            }
            fast
        }
    };
    let note = mismatch_note(p);
    let out = if cfg.json {
        let mut v = json!({
            "problem": FibreProblemJson::from(p),
            "k": k,
            "count": n.to_string(),
        });
        if note.is_some() {
            v["reason"] = json!(MISMATCH);
        }
        Output::json(&v)?
    } else {
        Output::text(n.to_string())
    };
    Ok(out.with_note(note))
}

fn render_quasipolynomial(q: &Quasipolynomial, reason: Option<&str>, cfg: Settings) -> Result<Output, CliError> {
    if cfg.json {
        let mut j = QuasipolynomialJson::from(q);
        j.reason = reason.map(str::to_string);
        return Output::json(&j);
    }
    let mut s = q.table();
    s.push_str(&format!("valid for n >= {}", q.threshold));
    if let Some((lo, hi)) = q.certified {
        s.push_str(&format!(", checked on [{lo},{hi}]"));
    }
    s.push('\n');
    if let Some(r) = reason {
        s.push_str(&format!("zero: {r}\n"));
    }
    Ok(Output::text(s))
}

/// The fibre quasipolynomial of `p`; with `exact_length`, the count of
/// elements of length exactly `n` instead.
pub fn quasipoly(p: &FibreProblem, exact_length: bool, cfg: Settings) -> Result<Output, CliError> {
    let q = if exact_length {
        exact_length_quasipoly(p)?
    } else {
        fibre_quasipolynomial(p)?
    };
    let reason = (!p.is_compatible()).then_some(MISMATCH);
    Ok(render_quasipolynomial(&q, reason, cfg)?.with_note(mismatch_note(p)))
}

/// `a`-cores with `b`-core `σ`, counted by length.
pub fn divisor_quasipolynomial(a: usize, b: usize, sigma: &Partition, cfg: Settings) -> Result<Output, CliError> {
    let q = divisor_quasipoly(a, b, sigma)?;
    render_quasipolynomial(&q, None, cfg)
}

pub fn volume(s: usize, t: usize, cfg: Settings) -> Result<Output, CliError> {
    if s == 0 || t == 0 {
        return Err(CliError::Usage("s and t must be positive".into()));
    }
    let r = volume_report(s, t)?;
    if cfg.json {
        Output::json(&json!({"s": s, "t": t, "volume": r.volume.to_string(), "dimension": r.dimension}))
    } else {
        Ok(Output::text(r.volume.to_string()))
    }
}

/// Relative volume of the transportation polytope with the given margins.
pub fn volume_of_margins(rows: Vec<u64>, cols: Vec<u64>, cfg: Settings) -> Result<Output, CliError> {
    let spec = TransportationSpec::new(rows.clone(), cols.clone())?;
    let v = relative_volume(&spec)?;
    if cfg.json {
        Output::json(&json!({"rows": rows, "cols": cols, "volume": v.to_string()}))
    } else {
        Ok(Output::text(v.to_string()))
    }
}

/// Compares the fibre quasipolynomial with a listing of cores on
/// `[min_k, max_k]`; `min_k` defaults to the threshold.
pub fn verify(p: &FibreProblem, min_k: Option<usize>, max_k: usize, cfg: Settings) -> Result<Output, CliError> {
    let q = fibre_quasipolynomial(p)?;
    let lo = min_k.unwrap_or(q.threshold);
    let report = verify_quasipoly(&q, |n| count_brute(p, n, cfg.cap), lo..=max_k)?;
    match report.first_disagreement {
        None => {
            if cfg.json {
                Output::json(&json!({"ok": true, "range": [lo, max_k], "threshold": q.threshold}))
            } else {
                Ok(Output::text(format!("OK [{lo},{max_k}]")))
            }
        }
        Some(bad) => Err(CliError::Compute(format!(
            "FAIL at n = {}: quasipolynomial {}, listing {} (checked from {lo}, threshold {})",
            bad.n, bad.expected, bad.found, q.threshold
        ))),
    }
}

/// Every `t`-core of length at most `k`, one per line.
pub fn enumerate(t: usize, k: usize, cfg: Settings) -> Result<Output, CliError> {
    let size = multichoose(t as u64, k as u64);
    if size > BigUint::from(cfg.cap) {
        return Err(CliError::Compute(format!("{size} cores exceeds the cap of {}", cfg.cap)));
    }
    let cores = enumerate_cores(t, k)?;
    if cfg.json {
        let v: Vec<String> = cores.iter().map(ToString::to_string).collect();
        return Output::json(&v);
    }
    let mut s = String::new();
    for c in &cores {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    Ok(Output { stdout: s, note: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_fibres::fibre::DEFAULT_CAP;

    const PLAIN: Settings = Settings { json: false, cap: DEFAULT_CAP };
    const JSON: Settings = Settings { json: true, cap: DEFAULT_CAP };

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn problem(s: usize, t: usize, sigma: &str, tau: &str) -> FibreProblem {
        FibreProblem::new(s, t, part(sigma), part(tau)).unwrap()
    }

    #[test]
    fn cores() {
        assert_eq!(core(&part("5,4,3,1"), 6, PLAIN).unwrap().stdout, "1\n");
        assert_eq!(core(&part("-"), 3, PLAIN).unwrap().stdout, "-\n");
        assert_eq!(core(&part("5,4,3,1"), 2, PLAIN).unwrap().stdout, "1\n");
        assert_eq!(core(&part("1"), 0, PLAIN).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn counts() {
        let p = problem(2, 3, "-", "-");
        for m in [Method::Brute, Method::Symbolic, Method::Auto] {
            assert_eq!(count_fibre(&p, 6, m, PLAIN).unwrap().stdout, "7\n");
            assert_eq!(count_fibre(&p, 0, m, PLAIN).unwrap().stdout, "1\n");
        }
        let p = problem(4, 6, "3,1,1", "3,2");
        assert_eq!(count_fibre(&p, 12, Method::Auto, PLAIN).unwrap().stdout, "35\n");

        let tight = Settings { json: false, cap: 10 };
        assert_eq!(count_fibre(&p, 12, Method::Brute, tight).unwrap_err().exit_code(), 3);
        // Auto skips the listing when it would exceed the cap.
        assert_eq!(count_fibre(&p, 12, Method::Auto, tight).unwrap().stdout, "35\n");
    }

    #[test]
    fn incompatible_counts_carry_a_note() {
        let p = problem(2, 4, "-", "1");
        let out = count_fibre(&p, 5, Method::Auto, PLAIN).unwrap();
        assert_eq!(out.stdout, "0\n");
        assert!(out.note.unwrap().contains("2-cores"));
        let out = quasipoly(&p, false, JSON).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["reason"], "d-core mismatch");
        assert!(v["branches"].as_array().unwrap().iter().all(|b| b["coeffs"] == json!([])));
    }

    #[test]
    fn quasipolynomials() {
        let p = problem(2, 3, "-", "-");
        let text = quasipoly(&p, false, PLAIN).unwrap().stdout;
        assert!(text.starts_with("n = 6k + 0: 3k^2 + 3k + 1\n"), "{text}");
        assert!(text.contains("valid for n >= 0"));
        let v: serde_json::Value =
            serde_json::from_str(&quasipoly(&p, false, JSON).unwrap().stdout).unwrap();
        assert_eq!(v["branches"][3]["coeffs"], json!(["3", "6", "3"]));
        assert_eq!(v["threshold"], 0);

        let v: serde_json::Value =
            serde_json::from_str(&divisor_quasipolynomial(6, 2, &part("4,3,2,1"), JSON).unwrap().stdout)
                .unwrap();
        assert_eq!(v["branches"][0]["coeffs"], json!(["15", "28", "65/4", "7/2", "1/4"]));
        assert_eq!(v["branches"][1]["coeffs"], json!(["21", "38", "83/4", "4", "1/4"]));
    }

    #[test]
    fn volumes_and_verification() {
        assert_eq!(volume(2, 3, PLAIN).unwrap().stdout, "3\n");
        assert_eq!(volume_of_margins(vec![2, 2, 2], vec![3, 3], PLAIN).unwrap().stdout, "3\n");
        assert_eq!(volume_of_margins(vec![2], vec![3], PLAIN).unwrap_err().exit_code(), 2);
        let p = problem(2, 3, "-", "-");
        assert_eq!(verify(&p, None, 30, PLAIN).unwrap().stdout, "OK [0,30]\n");
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate(2, 2, PLAIN).unwrap().stdout.lines().count(), 3);
        let tight = Settings { json: false, cap: 2 };
        assert_eq!(enumerate(2, 2, tight).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn deterministic_output() {
        let p = problem(3, 4, "1", "2");
        let a = quasipoly(&p, false, JSON).unwrap();
        let b = quasipoly(&p, false, JSON).unwrap();
        assert_eq!(a, b);
    }
}
