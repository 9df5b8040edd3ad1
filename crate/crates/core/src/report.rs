//! Per-point comparison records and their JSON/CSV forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const SCHEMA_VERSION: u32 = 1;

/// Fixed CSV header.
pub const CSV_COLUMNS: [&str; 6] = ["theorem", "params", "brute", "formula", "verdict", "witnesses"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Failed below the smallest `n` from which the series passes.
    SmallNException,
    HypothesisUnmet,
    Rejected,
}

impl Verdict {
    pub fn from_eq(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Counts as success for the exit status.
    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::SmallNException)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::SmallNException => "small-n-exception",
            Verdict::HypothesisUnmet => "hypothesis-unmet",
            Verdict::Rejected => "rejected",
        }
    }
}

pub type Params = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub params: Params,
    pub brute: Option<u64>,
    pub formula: Option<u64>,
    pub verdict: Verdict,
    /// Extremal graphs found by exhaustive search.
    pub witnesses: Vec<Graph>,
    /// Graphs the closed form predicts as extremal, when it predicts any.
    pub predicted: Vec<Graph>,
    pub uniqueness: Option<Verdict>,
    pub notes: Vec<String>,
}

impl PointRecord {
    pub fn new(params: Params) -> Self {
        PointRecord {
            params,
            brute: None,
            formula: None,
            verdict: Verdict::Fail,
            witnesses: Vec::new(),
            predicted: Vec::new(),
            uniqueness: None,
            notes: Vec::new(),
        }
    }

    /// A point that is not evaluated, with the reason.
    pub fn skipped(params: Params, verdict: Verdict, why: impl Into<String>) -> Self {
        let mut p = PointRecord::new(params);
        p.verdict = verdict;
        p.notes.push(why.into());
        p
    }

    /// Sets `brute`, `formula` and the value verdict.
    pub fn compare(&mut self, brute: Option<u64>, formula: Option<u64>) {
        self.brute = brute;
        self.formula = formula;
        self.verdict = Verdict::from_eq(brute.is_some() && brute == formula);
    }

    /// The integer parameter `key`, usually `n`.
    pub fn size(&self, key: &str) -> Option<usize> {
        self.params.get(key).and_then(Value::as_u64).map(|n| n as usize)
    }

    pub fn is_ok(&self) -> bool {
        self.verdict.is_ok() && self.uniqueness.is_none_or(Verdict::is_ok)
    }

    /// `k=v;k=v` in key order.
    pub fn params_text(&self) -> String {
        params_text(&self.params)
    }
}

pub fn params_text(params: &Params) -> String {
    params
        .iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// A check that is not tied to one grid point, such as a hypothesis gate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::from_eq(ok),
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub points: usize,
    pub pass: usize,
    pub fail: usize,
    pub small_n_exception: usize,
    pub hypothesis_unmet: usize,
    pub rejected: usize,
    pub uniqueness_fail: usize,
    /// Smallest `n` from which every value comparison passes, per series.
    pub equality_from_n: BTreeMap<String, usize>,
    /// Smallest `n` from which every uniqueness check passes, per series.
    pub uniqueness_from_n: BTreeMap<String, usize>,
    /// Parameter strings of every point or check that is not ok.
    pub failures: Vec<String>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub schema: u32,
    pub theorem: String,
    /// Parameter the small-n rule runs along.
    pub size_param: String,
    pub grid: Value,
    pub checks: Vec<Check>,
    pub points: Vec<PointRecord>,
    pub summary: Summary,
}

impl TheoremReport {
    pub fn new(theorem: impl Into<String>, grid: Value) -> Self {
        TheoremReport {
            schema: SCHEMA_VERSION,
            theorem: theorem.into(),
            size_param: "n".into(),
            grid,
            checks: Vec::new(),
            points: Vec::new(),
            summary: Summary::default(),
        }
    }

    /// Relabels failures below a passing top segment of each series as
    /// small-n exceptions. Series are the points sharing every parameter
    /// except the size parameter.
    pub fn settle_small_n(&mut self) {
        let key = self.size_param.clone();
        for (_, idx) in self.series() {
            let from = passing_suffix(&self.points, &idx, &key, |p| p.verdict == Verdict::Pass);
            if let Some(from) = from {
                for &i in &idx {
                    let p = &mut self.points[i];
                    if p.verdict == Verdict::Fail && p.size(&key).is_some_and(|n| n < from) {
                        p.verdict = Verdict::SmallNException;
                    }
                }
            }
            let from = passing_suffix(&self.points, &idx, &key, |p| p.uniqueness == Some(Verdict::Pass));
            if let Some(from) = from {
                for &i in &idx {
                    let p = &mut self.points[i];
                    if p.uniqueness == Some(Verdict::Fail) && p.size(&key).is_some_and(|n| n < from) {
                        p.uniqueness = Some(Verdict::SmallNException);
                    }
                }
            }
        }
    }

    fn series(&self) -> BTreeMap<String, Vec<usize>> {
        let mut out: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if p.size(&self.size_param).is_none() {
                continue;
            }
            let mut key = p.params.clone();
            key.remove(&self.size_param);
            out.entry(params_text(&key)).or_default().push(i);
        }
        out
    }

    /// Fills `summary` from the points and checks.
    pub fn finish(&mut self) {
        let mut s = Summary {
            points: self.points.len(),
            ..Summary::default()
        };
        for p in &self.points {
            match p.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::SmallNException => s.small_n_exception += 1,
                Verdict::HypothesisUnmet => s.hypothesis_unmet += 1,
                Verdict::Rejected => s.rejected += 1,
            }
            if p.uniqueness == Some(Verdict::Fail) {
                s.uniqueness_fail += 1;
            }
            if !p.is_ok() {
                s.failures.push(p.params_text());
            }
        }
        for c in &self.checks {
            if !c.verdict.is_ok() {
                s.failures.push(format!("check={}", c.name));
            }
        }
        for (key, idx) in self.series() {
            let eq = passing_suffix(&self.points, &idx, &self.size_param, |p| {
                p.brute.is_some() && p.brute == p.formula
            });
            if let Some(n) = eq {
                s.equality_from_n.insert(key.clone(), n);
            }
            if idx.iter().any(|&i| self.points[i].uniqueness.is_some()) {
                let un = passing_suffix(&self.points, &idx, &self.size_param, |p| {
                    p.uniqueness == Some(Verdict::Pass)
                });
                if let Some(n) = un {
                    s.uniqueness_from_n.insert(key, n);
                }
            }
        }
        s.all_pass = s.failures.is_empty();
        self.summary = s;
    }

    pub fn all_pass(&self) -> bool {
        self.summary.all_pass
    }

    /// Pretty JSON with a trailing newline. Keys are sorted wherever they come
    /// from maps, so equal reports give equal bytes.
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self).map_err(|e| Error::Serialization(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        write_csv(std::slice::from_ref(self))
    }
}

/// Smallest size such that every point of the series at that size or above
/// satisfies `ok`; `None` if the largest does not.
fn passing_suffix(
    points: &[PointRecord],
    idx: &[usize],
    key: &str,
    ok: impl Fn(&PointRecord) -> bool,
) -> Option<usize> {
    let mut by_n: Vec<(usize, bool)> = idx
        .iter()
        .filter_map(|&i| points[i].size(key).map(|n| (n, ok(&points[i]))))
        .collect();
    by_n.sort();
    let mut from = None;
    for &(n, good) in by_n.iter().rev() {
        if !good {
            break;
        }
        from = Some(n);
    }
    // several points can share an n; all of them must pass
    from.filter(|&f| by_n.iter().all(|&(n, good)| n < f || good))
}

/// One CSV table for several reports.
pub fn write_csv(reports: &[TheoremReport]) -> Result<String> {
    let err = |e: csv::Error| Error::Serialization(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).map_err(err)?;
    for r in reports {
        for p in &r.points {
            let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
            let witnesses: Vec<String> = p.witnesses.iter().map(Graph::to_graph6).collect();
            w.write_record([
                r.theorem.as_str(),
                &p.params_text(),
                &opt(p.brute),
                &opt(p.formula),
                p.verdict.as_str(),
                &witnesses.join(" "),
            ])
            .map_err(err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

#[doc(hidden)]
pub fn param_value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("parameters serialize")
}

/// Builds a parameter map from `(key, value)` pairs.
#[macro_export]
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = $crate::report::Params::new();
        $( m.insert($k.to_string(), $crate::report::param_value(&$v)); )*
        m
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(n: usize, s: usize, brute: u64, formula: u64) -> PointRecord {
        let mut p = PointRecord::new(crate::params!("n" => n, "s" => s));
        p.compare(Some(brute), Some(formula));
        p
    }

    #[test]
    fn small_n_only_below_a_passing_top() {
        let mut r = TheoremReport::new("t", Value::Null);
        r.points = vec![
            point(5, 1, 1, 2),
            point(6, 1, 3, 3),
            point(7, 1, 4, 4),
            point(5, 2, 1, 1),
            point(6, 2, 1, 2),
        ];
        r.settle_small_n();
        r.finish();
        let v: Vec<Verdict> = r.points.iter().map(|p| p.verdict).collect();
        assert_eq!(
            v,
            vec![
                Verdict::SmallNException,
                Verdict::Pass,
                Verdict::Pass,
                Verdict::Pass,
                Verdict::Fail
            ]
        );
        assert_eq!(r.summary.equality_from_n.get("s=1"), Some(&6));
        assert_eq!(r.summary.equality_from_n.get("s=2"), None);
        assert_eq!(r.summary.failures, vec!["n=6;s=2".to_string()]);
        assert!(!r.all_pass());
    }

    #[test]
    fn uniqueness_counts_toward_success() {
        let mut r = TheoremReport::new("t", Value::Null);
        let mut p = point(6, 2, 3, 3);
        p.uniqueness = Some(Verdict::Fail);
        r.points.push(p);
        r.finish();
        assert_eq!(r.summary.uniqueness_fail, 1);
        assert!(!r.all_pass());
        r.points[0].uniqueness = Some(Verdict::Pass);
        r.finish();
        assert!(r.all_pass());
    }

    #[test]
    fn json_and_csv() {
        let mut r = TheoremReport::new("demo", serde_json::json!({"n": [5, 6]}));
        let mut p = point(5, 2, 10, 10);
        p.witnesses.push(Graph::complete(5).unwrap());
        r.points.push(p);
        r.checks.push(Check::new("gate", true, "ok"));
        r.finish();
        let text = r.to_json().unwrap();
        assert!(text.contains("\"schema\": 1"));
        assert_eq!(TheoremReport::from_json(&text).unwrap(), r);
        assert_eq!(text, r.clone().to_json().unwrap());
        let csv = r.to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "theorem,params,brute,formula,verdict,witnesses");
        assert_eq!(lines[1], "demo,n=5;s=2,10,10,pass,D~{");
    }
}
