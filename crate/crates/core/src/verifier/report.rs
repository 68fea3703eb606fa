use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The hypothesis of the checked statement does not hold for the input.
    Vacuous,
    /// Passed, but at least one leg rests on a divergence diagnostic.
    HeuristicPass,
}

impl CheckStatus {
    pub fn name(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Vacuous => "vacuous",
            CheckStatus::HeuristicPass => "heuristic-pass",
        }
    }

    pub fn is_fail(self) -> bool {
        self == CheckStatus::Fail
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pass" => Some(CheckStatus::Pass),
            "fail" => Some(CheckStatus::Fail),
            "vacuous" => Some(CheckStatus::Vacuous),
            "heuristic-pass" => Some(CheckStatus::HeuristicPass),
            _ => None,
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub index: usize,
    pub values: Vec<(String, f64)>,
}

impl Witness {
    pub fn new(index: usize, values: &[(&str, f64)]) -> Self {
        Witness {
            index,
            values: values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check_id: String,
    /// Family or input the check ran on.
    pub subject: String,
    pub status: CheckStatus,
    pub witnesses: Vec<Witness>,
    pub tolerance: f64,
    pub measurements: Vec<(String, f64)>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check_id: &str, subject: &str, tolerance: f64) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            subject: subject.to_string(),
            status: CheckStatus::Pass,
            witnesses: Vec::new(),
            tolerance,
            measurements: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn measure(&mut self, name: &str, value: f64) {
        self.measurements.push((name.to_string(), value));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn measurement(&self, name: &str) -> Option<f64> {
        self.measurements
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
    }

    /// Marks the report failed with `witness`.
    pub fn fail(&mut self, witness: Witness) {
        self.status = CheckStatus::Fail;
        self.witnesses.push(witness);
    }
}
