use crate::wide::subcat::Mask;

/// Whenever a subcategory contains `premise`, it must contain `conclusion`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub premise: Mask,
    pub conclusion: Mask,
}

impl Rule {
    pub fn new(premise: Mask, conclusion: Mask) -> Rule {
        Rule {
            premise,
            conclusion: conclusion & !premise,
        }
    }

    fn is_trivial(&self) -> bool {
        self.conclusion == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleTable {
    rules: Vec<Rule>,
}

impl RuleTable {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> RuleTable {
        let mut rules: Vec<Rule> = rules.into_iter().filter(|r| !r.is_trivial()).collect();
        rules.sort_unstable();
        rules.dedup();
        RuleTable { rules }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn union(tables: &[&RuleTable]) -> RuleTable {
        RuleTable::new(tables.iter().flat_map(|t| t.rules.iter().copied()))
    }

    /// No rule fires from inside `set` to outside it.
    pub fn admits(&self, set: Mask) -> bool {
        self.rules
            .iter()
            .all(|r| r.premise & !set != 0 || r.conclusion & !set == 0)
    }

    /// Smallest superset of `set` that the table admits.
    pub fn closure(&self, set: Mask) -> Mask {
        let mut current = set;
        loop {
            let next = self
                .rules
                .iter()
                .filter(|r| r.premise & !current == 0)
                .fold(current, |acc, r| acc | r.conclusion);
            if next == current {
                return current;
            }
            current = next;
        }
    }
}
