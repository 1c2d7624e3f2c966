use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    PassWithConjecturalExceptions,
    Inconclusive,
    Fail,
}

impl Status {
    /// 0 pass, 1 some hard failure, 3 inconclusive without failures.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::PassWithConjecturalExceptions => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::PassWithConjecturalExceptions => "pass-with-conjectural-exceptions",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RunOutcome {
    pub name: String,
    pub verdict: Verdict,
    pub conjectural: bool,
}

impl RunOutcome {
    pub fn new(name: impl Into<String>, verdict: Verdict, conjectural: bool) -> Self {
        RunOutcome { name: name.into(), verdict, conjectural }
    }
}

impl From<&super::DecayRun> for RunOutcome {
    fn from(r: &super::DecayRun) -> Self {
        RunOutcome::new(&r.entry, r.verdict, r.conjectural)
    }
}

impl From<&super::LocalizedRun> for RunOutcome {
    fn from(r: &super::LocalizedRun) -> Self {
        RunOutcome::new(format!("{}@localized", r.entry), r.verdict, false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct VerdictSummary {
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    /// Conjectural runs that did not pass; they never decide the status.
    pub conjectural_exceptions: Vec<String>,
}

impl VerdictSummary {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

pub fn verdict_report(runs: &[RunOutcome]) -> VerdictSummary {
    let mut s = VerdictSummary {
        status: Status::Pass,
        passed: 0,
        failed: 0,
        inconclusive: 0,
        conjectural_exceptions: Vec::new(),
    };
    for r in runs {
        match r.verdict {
            Verdict::Pass => s.passed += 1,
            Verdict::Fail => s.failed += 1,
            Verdict::Inconclusive => s.inconclusive += 1,
        }
        if r.conjectural && r.verdict != Verdict::Pass {
            s.conjectural_exceptions.push(r.name.clone());
        }
    }
    let hard = |v: Verdict| runs.iter().any(|r| !r.conjectural && r.verdict == v);
    s.status = if hard(Verdict::Fail) {
        Status::Fail
    } else if hard(Verdict::Inconclusive) {
        Status::Inconclusive
    } else if !s.conjectural_exceptions.is_empty() {
        Status::PassWithConjecturalExceptions
    } else {
        Status::Pass
    };
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(v: Verdict, c: bool) -> RunOutcome {
        RunOutcome::new("r", v, c)
    }

    #[test]
    fn policy() {
        assert_eq!(verdict_report(&[o(Verdict::Pass, false), o(Verdict::Pass, true)]).status, Status::Pass);
        assert_eq!(verdict_report(&[]).status, Status::Pass);
        let s = verdict_report(&[o(Verdict::Pass, false), o(Verdict::Fail, true)]);
        assert_eq!(s.status, Status::PassWithConjecturalExceptions);
        assert_eq!(s.exit_code(), 0);
        let s = verdict_report(&[o(Verdict::Inconclusive, false), o(Verdict::Pass, false)]);
        assert_eq!(s.status, Status::Inconclusive);
        assert_eq!(s.exit_code(), 3);
        let s = verdict_report(&[o(Verdict::Inconclusive, false), o(Verdict::Fail, false)]);
        assert_eq!(s.status, Status::Fail);
        assert_eq!(s.exit_code(), 1);
    }
}
