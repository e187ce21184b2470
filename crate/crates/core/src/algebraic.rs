//! Tensor-power closure probe.
//!
//! Starting from the summands of a seed module, repeatedly tensor every new
//! class with the seed, decompose, and register unseen isomorphism classes.
//! A round that adds nothing proves the closure is finite. Running out of
//! budget only produces evidence.

use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{decompose_with, indecomposables_isomorphic, DecomposeOptions, IdTag, Invariants};
use crate::klein::{signature_of, Signature};
use crate::module::Rep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_dim: usize,
    pub max_classes: usize,
    pub max_rounds: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_dim: 256, max_classes: 64, max_rounds: 8 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub dim: usize,
    pub tag: IdTag,
    pub signature: Option<Signature>,
    /// Round in which the class first appeared; 0 for seed summands.
    pub round: usize,
    #[serde(skip)]
    pub rep: Rep,
}

/// What one round contributed.
#[derive(Clone, Debug, Serialize)]
pub struct RoundTrace {
    pub round: usize,
    pub products: usize,
    pub new_classes: usize,
    pub new_dims: Vec<usize>,
    pub new_signatures: Vec<Signature>,
    /// Largest `|r|` or `|s|` among new signatures.
    pub max_signature: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Closed,
    BudgetExceeded { reason: String },
    /// A decomposition could not be certified.
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub budget: Budget,
    pub seed: u64,
    pub verdict: Verdict,
    pub rounds: usize,
    pub classes: Vec<ClassEntry>,
    pub trace: Vec<RoundTrace>,
    /// Outcome of tensoring every pair of classes, for closed probes.
    pub verified: Option<bool>,
}

impl ProbeReport {
    pub fn is_closed(&self) -> bool {
        self.verdict == Verdict::Closed
    }

    /// Whether `max_signature` increases strictly from round to round,
    /// over at least `rounds` rounds.
    pub fn signatures_grow(&self, rounds: usize) -> bool {
        let vals: Vec<i64> = self.trace.iter().filter_map(|t| t.max_signature).collect();
        vals.len() >= rounds && vals.windows(2).all(|w| w[0] < w[1])
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ProbeOptions {
    pub budget: Budget,
    pub seed: u64,
    /// Process each round's frontier in reverse order.
    pub reverse: bool,
    /// Tensor every pair of classes once closed.
    pub verify: bool,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { budget: Budget::default(), seed: 0, reverse: false, verify: true }
    }
}

struct Registry {
    classes: Vec<ClassEntry>,
    invariants: Vec<Invariants>,
}

impl Registry {
    fn find(&self, m: &Rep, inv: &Invariants) -> Option<usize> {
        self.classes.iter().zip(&self.invariants).position(|(c, i)| {
            i == inv && indecomposables_isomorphic(&c.rep, m).unwrap_or(false)
        })
    }

    fn insert(&mut self, rep: Rep, tag: IdTag, round: usize) -> bool {
        let inv = Invariants::of(&rep);
        if self.find(&rep, &inv).is_some() {
            return false;
        }
        self.classes.push(ClassEntry {
            dim: rep.dim(),
            tag,
            signature: signature_of(&rep).ok().map(|(s, _)| s),
            round,
            rep,
        });
        self.invariants.push(inv);
        true
    }
}

type Summands = Vec<(Rep, IdTag)>;

fn split(m: &Rep, seed: u64) -> Result<Summands, String> {
    let rep = decompose_with(m, DecomposeOptions { seed, ..DecomposeOptions::default() });
    if !rep.all_certified() || !rep.reassembled {
        return Err(format!("decomposition of a {}-dimensional product not certified", m.dim()));
    }
    Ok(rep.summands.into_iter().map(|s| (s.rep, s.tag)).collect())
}

fn tensor_all(pairs: &[(&Rep, &Rep)], seed: u64) -> Result<Vec<Summands>, String> {
    pairs
        .par_iter()
        .map(|(a, b)| split(&Rep::tensor(a, b).map_err(|e| e.to_string())?, seed))
        .collect()
}

/// Runs the closure probe on `seed_module`.
pub fn tensor_closure_probe(seed_module: &Rep, opts: ProbeOptions) -> ProbeReport {
    let budget = opts.budget;
    let mut reg = Registry { classes: Vec::new(), invariants: Vec::new() };
    let mut report = ProbeReport {
        budget,
        seed: opts.seed,
        verdict: Verdict::Closed,
        rounds: 0,
        classes: Vec::new(),
        trace: Vec::new(),
        verified: None,
    };
    let finish = |mut report: ProbeReport, reg: Registry, verdict: Verdict| {
        report.verdict = verdict;
        report.classes = reg.classes;
        report
    };
    match split(seed_module, opts.seed) {
        Ok(parts) => {
            for (r, t) in parts {
                reg.insert(r, t, 0);
            }
        }
        Err(reason) => return finish(report, reg, Verdict::Inconclusive { reason }),
    }
    let mut frontier: Vec<usize> = (0..reg.classes.len()).collect();
    for round in 1..=budget.max_rounds {
        if opts.reverse {
            frontier.reverse();
        }
        if let Some(&big) = frontier
            .iter()
            .find(|&&i| reg.classes[i].dim * seed_module.dim() > budget.max_dim)
        {
            let reason = format!(
                "product of dimension {} exceeds max_dim {}",
                reg.classes[big].dim * seed_module.dim(),
                budget.max_dim
            );
            return finish(report, reg, Verdict::BudgetExceeded { reason });
        }
        let pairs: Vec<(&Rep, &Rep)> =
            frontier.iter().map(|&i| (&reg.classes[i].rep, seed_module)).collect();
        let results = match tensor_all(&pairs, opts.seed) {
            Ok(r) => r,
            Err(reason) => return finish(report, reg, Verdict::Inconclusive { reason }),
        };
        let products = pairs.len();
        report.rounds = round;
        let before = reg.classes.len();
        for (r, t) in results.into_iter().flatten() {
            reg.insert(r, t, round);
        }
        let fresh = &reg.classes[before..];
        let new_signatures: Vec<Signature> = fresh.iter().filter_map(|c| c.signature).collect();
        report.trace.push(RoundTrace {
            round,
            products,
            new_classes: fresh.len(),
            new_dims: fresh.iter().map(|c| c.dim).collect(),
            max_signature: new_signatures.iter().map(|s| s.0[0].abs().max(s.0[1].abs())).max(),
            new_signatures,
        });
        if fresh.is_empty() {
            if opts.verify {
                report.verified = Some(verify_closed(&reg, budget, opts.seed));
            }
            return finish(report, reg, Verdict::Closed);
        }
        if reg.classes.len() > budget.max_classes {
            let reason = format!("{} classes exceed max_classes {}", reg.classes.len(), budget.max_classes);
            return finish(report, reg, Verdict::BudgetExceeded { reason });
        }
        frontier = (before..reg.classes.len()).collect();
    }
    let reason = format!("no fixed point after {} rounds", budget.max_rounds);
    finish(report, reg, Verdict::BudgetExceeded { reason })
}

/// Every product of two classes decomposes into known classes. Products
/// above `max_dim` are skipped.
fn verify_closed(reg: &Registry, budget: Budget, seed: u64) -> bool {
    let n = reg.classes.len();
    let pairs: Vec<(&Rep, &Rep)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| (&reg.classes[i].rep, &reg.classes[j].rep))
        .filter(|(a, b)| a.dim() * b.dim() <= budget.max_dim)
        .collect();
    match tensor_all(&pairs, seed) {
        Ok(all) => all
            .iter()
            .flatten()
            .all(|(r, _)| reg.find(r, &Invariants::of(r)).is_some()),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::trivial;
    use crate::word::QParam;

    #[test]
    fn trivial_module_closes_at_once() {
        let r = tensor_closure_probe(&trivial(QParam::new(2).unwrap()), ProbeOptions::default());
        assert!(r.is_closed());
        assert_eq!(r.rounds, 1);
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.verified, Some(true));
    }

    #[test]
    fn tiny_budget_is_reported() {
        let q = QParam::new(2).unwrap();
        let m = crate::module::string_module(&"a b- a".parse().unwrap(), q).unwrap();
        let opts = ProbeOptions { budget: Budget { max_dim: 8, ..Budget::default() }, ..Default::default() };
        let r = tensor_closure_probe(&m, opts);
        assert!(matches!(r.verdict, Verdict::BudgetExceeded { .. }));
    }
}
