//! Named verifier suites, selectable by the numbers users know them by.

use serde::Serialize;

use crate::error::Result;
use crate::report::{CheckItem, CheckReport};
use crate::wide::ReductionChecker;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Suite {
    /// Adjunctions, full faithfulness, `Im i_* = Ker j^*`, exactness.
    Recollement,
    /// Composites with the identity and the two four-term sequences.
    Gluing,
    /// `j_*j^*` and `j_!j^*` keep wide subcategories containing the `i_*`-image.
    Lifts,
    /// `C ↦ j^*C` against `W ↦ {M : j^*M ∈ W}`.
    Bijection,
    /// Wideness of `i^*`- and `i^!`-images when `C` is stable under them.
    QuotientImages,
    /// The recollement axioms inside each wide subcategory containing the `i_*`-image.
    Glued,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Recollement,
        Suite::Gluing,
        Suite::Lifts,
        Suite::Bijection,
        Suite::QuotientImages,
        Suite::Glued,
    ];

    /// The suites a random battery instance must pass.
    pub const BATTERY: [Suite; 4] = [
        Suite::Lifts,
        Suite::Bijection,
        Suite::QuotientImages,
        Suite::Glued,
    ];

    pub fn number(self) -> &'static str {
        match self {
            Suite::Recollement => "2.4",
            Suite::Gluing => "2.5",
            Suite::Lifts => "3.1",
            Suite::Bijection => "3.4",
            Suite::QuotientImages => "3.5",
            Suite::Glued => "3.8",
        }
    }

    pub fn from_number(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|t| t.number() == s)
    }

    pub fn run(self, checker: &ReductionChecker) -> Result<CheckReport> {
        let ctx = checker.ctx();
        let big = ctx.big_catalog();
        let mut report = CheckReport::default();
        match self {
            Suite::Recollement => report.extend(ctx.check_recollement()),
            Suite::Gluing => report.extend(ctx.check_gluing()),
            Suite::Lifts => {
                let outcomes = checker
                    .containing_base()?
                    .iter()
                    .map(|s| match checker.lifts_stay_inside(s) {
                        Ok(true) => Ok(()),
                        Ok(false) => Err(format!(
                            "{} is not stable under j_*j^* and j_!j^*",
                            s.describe(big)
                        )),
                        Err(e) => Err(e.to_string()),
                    })
                    .collect();
                report.push(CheckItem::tally(
                    "lifts of restrictions stay inside",
                    outcomes,
                ));
            }
            Suite::Bijection => {
                let b = checker.bijection()?;
                let n = b.rows.len();
                report.push(verdict("C -> j^*C is wide and reversible", b.forward_ok, n));
                report.push(verdict(
                    "W -> preimage is wide, contains the base, and restricts back",
                    b.backward_ok,
                    b.local_wide.len(),
                ));
                report.push(if n == b.local_wide.len() {
                    CheckItem::pass("both sides have the same size", n)
                } else {
                    CheckItem::fail(
                        "both sides have the same size",
                        format!("{n} vs {}", b.local_wide.len()),
                    )
                });
            }
            Suite::QuotientImages => {
                let wide = checker.big().enumerate_wide()?;
                let mut outcomes = Vec::with_capacity(wide.len());
                let (mut upper, mut shriek) = (0, 0);
                for s in &wide {
                    let images = checker.quotient_images(s)?;
                    upper += images.upper.is_some() as usize;
                    shriek += images.shriek.is_some() as usize;
                    outcomes.push(if images.passed() {
                        Ok(())
                    } else {
                        Err(format!("an image of {} is not wide", s.describe(big)))
                    });
                }
                report.push(CheckItem::tally(
                    "stable quotient images are wide",
                    outcomes,
                ));
                report.push(CheckItem::note(
                    "hypothesis met",
                    format!(
                        "stable under i_*i^* for {upper} and under i_*i^! for {shriek} of {} wide subcategories",
                        wide.len()
                    ),
                ));
            }
            Suite::Glued => {
                let outcomes = checker
                    .containing_base()?
                    .iter()
                    .map(|s| {
                        let sub = checker.glued_recollement(s);
                        let failed: Vec<String> = sub
                            .failures()
                            .map(|i| {
                                format!("{}: {}", i.name, i.detail.clone().unwrap_or_default())
                            })
                            .collect();
                        if failed.is_empty() {
                            Ok(())
                        } else {
                            Err(format!("{}: {}", s.describe(big), failed.join("; ")))
                        }
                    })
                    .collect();
                report.push(CheckItem::tally(
                    "glued recollement on each subcategory",
                    outcomes,
                ));
            }
        }
        Ok(report)
    }
}

fn verdict(name: &str, ok: bool, checked: usize) -> CheckItem {
    if ok {
        CheckItem::pass(name, checked)
    } else {
        CheckItem::fail(name, "round trip broken")
    }
}
