use serde::Serialize;

const MAX_WITNESSES: usize = 5;

/// Pass/fail record for one law checked over many instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub passed: bool,
    pub instances: usize,
    pub failures: usize,
    /// The first few counterexamples.
    pub witnesses: Vec<String>,
}

impl Default for LawCheck {
    fn default() -> Self {
        LawCheck {
            passed: true,
            instances: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }
}

impl LawCheck {
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.passed = false;
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    /// Records a failure whose witness is an error value.
    pub fn record_result<T, E: std::fmt::Display>(
        &mut self,
        result: &Result<T, E>,
        context: impl FnOnce() -> String,
    ) {
        match result {
            Ok(_) => self.record(true, String::new),
            Err(e) => self.record(false, || format!("{}: {e}", context())),
        }
    }
}
