use serde::Serialize;

/// One named check with the number of instances it covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckItem {
    pub fn pass(name: impl Into<String>, checked: usize) -> CheckItem {
        CheckItem {
            name: name.into(),
            passed: true,
            checked,
            detail: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> CheckItem {
        CheckItem {
            name: name.into(),
            passed: false,
            checked: 0,
            detail: Some(detail.into()),
        }
    }

    /// Passes when every outcome is `Ok`; keeps the first failure message.
    pub fn tally(name: impl Into<String>, outcomes: Vec<Result<(), String>>) -> CheckItem {
        let checked = outcomes.len();
        let detail = outcomes.into_iter().find_map(Result::err);
        CheckItem {
            name: name.into(),
            passed: detail.is_none(),
            checked,
            detail,
        }
    }

    /// Informational entry that never fails.
    pub fn note(name: impl Into<String>, note: impl Into<String>) -> CheckItem {
        CheckItem {
            name: name.into(),
            passed: true,
            checked: 0,
            detail: Some(note.into()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.items.extend(other.items);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}
